//! Group actions on graphs and validated locally-`L(p,χ)` pairs.

use std::sync::Arc;

use num_bigint::BigUint;

use super::{Digraph, Graph};
use crate::arith::is_prime;
use crate::constructions::l_group;
use crate::error::{Error, Rejection, Result};
use crate::perm::Permutation;
use crate::permgroup::action::{induced_permutations, kernel_of_action, stabiliser_in_action, Action, FnAction, Natural};
use crate::permgroup::pgroup::index_two_kernel;
use crate::permgroup::{block_systems, permutation_isomorphic, PermGroup};

/// An action shared between a pair and its derived objects.
pub type SharedAction = Arc<dyn Action + Send>;

/// Union-find over `0..n`.
pub(crate) struct Dsu {
    parent: Vec<u32>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu { parent: (0..n as u32).collect() }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] as usize != r {
            r = self.parent[r] as usize;
        }
        let mut y = x;
        while self.parent[y] as usize != r {
            let next = self.parent[y] as usize;
            self.parent[y] = r as u32;
            y = next;
        }
        r
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo as u32;
        }
    }

    pub(crate) fn classes(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}

/// Orbit counts of a group on vertices, edges and arcs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Transitivity {
    pub vertex_orbits: usize,
    pub edge_orbits: usize,
    pub arc_orbits: usize,
}

impl Transitivity {
    pub fn vertex(&self) -> bool {
        self.vertex_orbits == 1
    }
    pub fn edge(&self) -> bool {
        self.edge_orbits == 1
    }
    pub fn arc(&self) -> bool {
        self.arc_orbits == 1
    }
}

fn arc_index(g: &Graph, off: &[usize], u: usize, v: usize) -> usize {
    off[u] + g.neighbours(u).binary_search(&(v as u32)).expect("arc present")
}

/// Arc orbit label per arc (indexed as in [`Graph::arc_offsets`]); labels are
/// the least arc index of the orbit. `vertex_gens` must be automorphisms.
pub fn arc_orbit_labels(g: &Graph, vertex_gens: &[Permutation]) -> Vec<usize> {
    let off = g.arc_offsets();
    let mut dsu = Dsu::new(*off.last().unwrap());
    for s in vertex_gens {
        for u in 0..g.vertex_count() {
            for &v in g.neighbours(u) {
                let a = arc_index(g, &off, u, v as usize);
                let b = arc_index(g, &off, s.apply(u), s.apply(v as usize));
                dsu.union(a, b);
            }
        }
    }
    (0..*off.last().unwrap()).map(|a| dsu.find(a)).collect()
}

/// Vertex, edge and arc orbit counts for automorphisms given on the vertex set.
pub fn transitivity(g: &Graph, vertex_gens: &[Permutation]) -> Transitivity {
    let n = g.vertex_count();
    let mut vd = Dsu::new(n);
    for s in vertex_gens {
        for u in 0..n {
            vd.union(u, s.apply(u));
        }
    }
    let labels = arc_orbit_labels(g, vertex_gens);
    let off = g.arc_offsets();
    let mut ad = Dsu::new(labels.len());
    for (a, &l) in labels.iter().enumerate() {
        ad.union(a, l);
    }
    let arc_orbits = ad.classes();
    for u in 0..n {
        for &v in g.neighbours(u) {
            ad.union(arc_index(g, &off, u, v as usize), arc_index(g, &off, v as usize, u));
        }
    }
    Transitivity { vertex_orbits: vd.classes(), edge_orbits: ad.classes(), arc_orbits }
}

/// Every generator, acting through `action`, is an automorphism of `g`.
pub fn is_automorphism_in(g: &Graph, s: &Permutation, action: &dyn Action) -> bool {
    induced_permutations(std::slice::from_ref(s), action).map(|v| g.is_automorphism(&v[0])).unwrap_or(false)
}

/// Local action of `G_v` on `Γ(v)` (neighbours in ascending order) and the kernel `G_v^{[1]}`.
pub fn local_action(g: &Graph, gv: &PermGroup, action: &dyn Action, v: usize) -> Result<(PermGroup, PermGroup)> {
    let nbrs: Vec<usize> = g.neighbours(v).iter().map(|&x| x as usize).collect();
    let local = restrict_to_neighbours(gv, action, g, v)?;
    let index_of = |x: usize| nbrs.binary_search(&x).unwrap_or(usize::MAX);
    let local_act = FnAction { degree: nbrs.len(), f: |h: &Permutation, i: usize| index_of(action.image(h, nbrs[i])) };
    let kernel = kernel_of_action(gv, &local_act)?;
    Ok((local, kernel))
}

fn restrict_to_neighbours(gv: &PermGroup, action: &dyn Action, g: &Graph, v: usize) -> Result<PermGroup> {
    let nbrs = g.neighbours(v);
    let gens: Vec<Permutation> = gv
        .generators()
        .iter()
        .map(|h| {
            let imgs: Vec<u32> = nbrs
                .iter()
                .map(|&x| {
                    nbrs.binary_search(&(action.image(h, x as usize) as u32)).map(|i| i as u32).map_err(|_| Error::Precondition("stabiliser does not fix the neighbourhood".into()))
                })
                .collect::<Result<_>>()?;
            Permutation::from_images(imgs)
        })
        .collect::<Result<_>>()?;
    PermGroup::new(nbrs.len(), gens)
}

/// A validated locally-`L(p,χ)` edge-transitive pair with base vertex `0`.
#[derive(Clone)]
pub struct PairContext {
    graph: Graph,
    group: PermGroup,
    action: SharedAction,
    p: u64,
    chi: u32,
    vertex_gens: Vec<Permutation>,
    gv: PermGroup,
    gv_star: PermGroup,
    local: PermGroup,
    local_kernel: PermGroup,
    local_witness: Vec<usize>,
}

impl std::fmt::Debug for PairContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PairContext")
            .field("vertices", &self.graph.vertex_count())
            .field("group_order", self.group.order())
            .field("p", &self.p)
            .field("chi", &self.chi)
            .field("gv_order", self.gv.order())
            .finish()
    }
}

fn reject<T>(r: Rejection) -> Result<T> {
    Err(Error::Rejected(r))
}

/// Validates `(Γ, G)` with `G` acting on the vertices through `action`.
///
/// Checks, in order: `p` prime and `χ ∈ {1,2}`, matching degree, valency
/// `2p`, automorphisms, faithfulness, connectivity, vertex- and
/// edge-transitivity, local action `≅ L(p,χ)`, and `G_v*`.
pub fn make_pair(graph: Graph, group: PermGroup, action: SharedAction, p: u64, chi: u32) -> Result<PairContext> {
    if !is_prime(p) {
        return reject(Rejection::NotPrime { p });
    }
    if chi != 1 && chi != 2 {
        return reject(Rejection::BadChi { chi });
    }
    let n = graph.vertex_count();
    if action.degree() != n {
        return reject(Rejection::DegreeMismatch { graph: n, action: action.degree() });
    }
    let k = 2 * p as usize;
    if let Some(v) = (0..n).find(|&v| graph.valency(v) != k) {
        return reject(Rejection::WrongValency { vertex: v, valency: graph.valency(v), expected: k });
    }
    let vertex_gens = induced_permutations(group.generators(), action.as_ref())?;
    if let Some(i) = vertex_gens.iter().position(|s| !graph.is_automorphism(s)) {
        return reject(Rejection::NotAutomorphism { generator: i });
    }
    if !kernel_of_action(&group, action.as_ref())?.is_trivial() {
        return reject(Rejection::NotFaithful);
    }
    if !graph.is_connected() {
        return reject(Rejection::Disconnected);
    }
    let tr = transitivity(&graph, &vertex_gens);
    if !tr.vertex() {
        return reject(Rejection::NotVertexTransitive);
    }
    if !tr.edge() {
        return reject(Rejection::NotEdgeTransitive);
    }
    let gv = stabiliser_in_action(&group, action.as_ref(), 0)?;
    let (local, local_kernel) = local_action(&graph, &gv, action.as_ref(), 0)?;
    let model = l_group(p, chi)?;
    let Some(local_witness) = permutation_isomorphic(&local, &model) else {
        return reject(Rejection::LocalActionMismatch);
    };
    let gv_star = find_gv_star(&graph, &gv, &local, action.as_ref(), p, chi)?;
    Ok(PairContext { graph, group, action, p, chi, vertex_gens, gv, gv_star, local, local_kernel, local_witness })
}

/// Validates a pair where `G` acts naturally on the vertex set.
pub fn make_pair_natural(graph: Graph, group: PermGroup, p: u64, chi: u32) -> Result<PairContext> {
    let n = group.degree();
    make_pair(graph, group, Arc::new(Natural(n)), p, chi)
}

/// `G_v* = G_v` for `χ = 1`; for `χ = 2` the set-wise stabiliser of one
/// size-`p` block of the local action, which must be a `p`-group of index 2.
fn find_gv_star(graph: &Graph, gv: &PermGroup, local: &PermGroup, action: &dyn Action, p: u64, chi: u32) -> Result<PermGroup> {
    let star = if chi == 1 {
        gv.clone()
    } else {
        let system = block_systems(local).into_iter().find(|s| s.cells.len() == 2 && s.cell_size() == p as usize);
        let Some(system) = system else { return reject(Rejection::GvStarMissing) };
        let nbrs = graph.neighbours(0);
        let first = &system.cells[0];
        let parity = |h: &Permutation| {
            let img = action.image(h, nbrs[first[0]] as usize);
            let i = nbrs.binary_search(&(img as u32)).expect("stabiliser fixes the neighbourhood");
            !first.contains(&i)
        };
        index_two_kernel(gv, parity)?
    };
    let index = gv.order() / star.order();
    if !star.is_p_group(p) || index != BigUint::from(chi) {
        return reject(Rejection::GvStarMissing);
    }
    let local_star = restrict_to_neighbours(&star, action, graph, 0)?;
    let mut orbit_sizes: Vec<usize> = local_star.orbits().iter().map(Vec::len).collect();
    orbit_sizes.sort_unstable();
    if orbit_sizes != vec![p as usize, p as usize] {
        return reject(Rejection::GvStarMissing);
    }
    Ok(star)
}

impl PairContext {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }
    /// `G` in its own (small) representation.
    pub fn group(&self) -> &PermGroup {
        &self.group
    }
    pub fn action(&self) -> &dyn Action {
        self.action.as_ref()
    }
    pub fn shared_action(&self) -> SharedAction {
        self.action.clone()
    }
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn chi(&self) -> u32 {
        self.chi
    }
    pub fn base_vertex(&self) -> usize {
        0
    }
    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }
    /// Generators of `G` as permutations of the vertex set.
    pub fn vertex_generators(&self) -> &[Permutation] {
        &self.vertex_gens
    }
    pub fn gv(&self) -> &PermGroup {
        &self.gv
    }
    pub fn gv_star(&self) -> &PermGroup {
        &self.gv_star
    }
    /// `G_v^{Γ(v)}` on the neighbours of `0` in ascending order.
    pub fn local_action(&self) -> &PermGroup {
        &self.local
    }
    /// `G_v^{[1]}`.
    pub fn local_kernel(&self) -> &PermGroup {
        &self.local_kernel
    }
    /// Bijection from local points to the points of the model `L(p,χ)`.
    pub fn local_witness(&self) -> &[usize] {
        &self.local_witness
    }
    /// `t` with `|G_v*| = p^t`.
    pub fn t(&self) -> u32 {
        crate::permgroup::structure::p_exponent(self.gv_star.order(), self.p).expect("G_v* is a p-group")
    }
    pub fn transitivity(&self) -> Transitivity {
        transitivity(&self.graph, &self.vertex_gens)
    }
    /// Image of `x` in the vertex action.
    pub fn vertex_image(&self, g: &Permutation, x: usize) -> usize {
        self.action.image(g, x)
    }
}

/// For `χ = 1`: the `G`-orbit of arcs containing `(0, min Γ(0))`.
pub fn half_arc_orientation(ctx: &PairContext) -> Result<Digraph> {
    if ctx.chi() != 1 {
        return Err(Error::Precondition("half-arc orientation needs chi = 1".into()));
    }
    let g = ctx.graph();
    let labels = arc_orbit_labels(g, ctx.vertex_generators());
    let off = g.arc_offsets();
    let target = labels[0];
    let mut arcs = Vec::new();
    for u in 0..g.vertex_count() {
        for (i, &v) in g.neighbours(u).iter().enumerate() {
            if labels[off[u] + i] == target {
                arcs.push((u, v as usize));
            }
        }
    }
    Digraph::from_arcs(g.vertex_count(), &arcs)
}
