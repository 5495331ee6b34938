//! Graphs, digraphs, group actions on them, locally-`L(p,χ)` pair validation
//! and a small automorphism solver.

pub mod autgroup;
pub mod graph;
pub mod pair;

pub use autgroup::{automorphism_generators, automorphism_group, isomorphism};
pub use graph::{complete_graph, cycle_graph, Digraph, Graph};
pub use pair::{arc_orbit_labels, half_arc_orientation, local_action, make_pair, make_pair_natural, transitivity, PairContext, SharedAction, Transitivity};
