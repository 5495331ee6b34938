//! Normal quotients `Γ/N`, kernels on orbits and regular-cover detection.

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphcore::pair::Dsu;
use crate::graphcore::{Digraph, Graph, PairContext};
use crate::perm::Permutation;
use crate::permgroup::action::{image_group, induced_permutations, kernel_of_action, stabiliser_in_action, Action, FnAction};
use crate::permgroup::pgroup::index_two_kernel;
use crate::permgroup::structure::is_normal;
use crate::permgroup::{permutation_isomorphic, PermGroup};

/// Facts that hold when `Γ` is a regular cover of `Γ/N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverFacts {
    pub equal_valency: bool,
    pub n_semiregular: bool,
    pub n_equals_kernel: bool,
    pub stabiliser_orders_agree: bool,
    pub local_actions_isomorphic: bool,
}

impl CoverFacts {
    pub fn all(&self) -> bool {
        self.equal_valency && self.n_semiregular && self.n_equals_kernel && self.stabiliser_orders_agree && self.local_actions_isomorphic
    }
}

#[derive(Debug, Clone)]
pub struct QuotientResult {
    /// `N`-orbits, each sorted, ordered by least vertex.
    pub orbits: Vec<Vec<usize>>,
    pub orbit_of: Vec<usize>,
    pub graph: Graph,
    /// Kernel of `G` on the orbits, in the representation of `G`.
    pub kernel: PermGroup,
    /// `G/K` acting on orbit indices.
    pub induced: PermGroup,
    /// Common valency of `Γ/N`, if regular.
    pub valency: Option<usize>,
    /// `Γ(v)` maps injectively onto `(Γ/N)(v^N)` for every `v`.
    pub is_regular_cover: bool,
    pub cover_facts: Option<CoverFacts>,
}

impl QuotientResult {
    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    /// `Some(m)` when `Γ/N` is a cycle of length `m ≥ 3`.
    pub fn cycle_length(&self) -> Option<usize> {
        (self.orbits.len() >= 3 && self.valency == Some(2) && self.graph.is_connected()).then_some(self.orbits.len())
    }

    pub fn report(&self) -> QuotientReport {
        QuotientReport {
            orbit_count: self.orbit_count(),
            m: self.cycle_length(),
            cover: self.is_regular_cover,
            kernel_order: self.kernel.order().to_string(),
            quotient_graph: self.graph.to_text(),
        }
    }
}

/// JSON form of a quotient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientReport {
    pub orbit_count: usize,
    pub m: Option<usize>,
    pub cover: bool,
    pub kernel_order: String,
    pub quotient_graph: String,
}

/// Orbits of generators given on the vertex set, ordered by least element.
pub fn vertex_orbits(n: usize, vertex_gens: &[Permutation]) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut dsu = Dsu::new(n);
    for s in vertex_gens {
        for u in 0..n {
            dsu.union(u, s.apply(u));
        }
    }
    let mut index = vec![usize::MAX; n];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut orbit_of = vec![0; n];
    for (u, slot) in orbit_of.iter_mut().enumerate() {
        let r = dsu.find(u);
        if index[r] == usize::MAX {
            index[r] = orbits.len();
            orbits.push(Vec::new());
        }
        *slot = index[r];
        orbits[index[r]].push(u);
    }
    (orbits, orbit_of)
}

/// `Γ/N` for `N ⊴ G`, with `G` acting on the vertices through `action`.
pub fn quotient(graph: &Graph, g: &PermGroup, action: &dyn Action, n: &PermGroup) -> Result<QuotientResult> {
    if !g.contains_group(n) {
        return Err(Error::NotMember);
    }
    if !is_normal(g, n) {
        return Err(Error::NotNormal);
    }
    let nv = graph.vertex_count();
    let n_gens = induced_permutations(n.generators(), action)?;
    let (orbits, orbit_of) = vertex_orbits(nv, &n_gens);
    let qgraph = Graph::from_neighbour_fn(orbits.len(), |b| {
        let mut out: Vec<usize> = orbits[b].iter().flat_map(|&u| graph.neighbours(u).iter().map(|&w| orbit_of[w as usize])).filter(|&c| c != b).collect();
        out.sort_unstable();
        out.dedup();
        out
    })?;
    let orbit_action = FnAction { degree: orbits.len(), f: |h: &Permutation, b: usize| orbit_of[action.image(h, orbits[b][0])] };
    let kernel = kernel_of_action(g, &orbit_action)?;
    let induced = image_group(g, &orbit_action)?;
    let valency = qgraph.regular_valency();
    let is_regular_cover = (0..nv).all(|u| {
        let mut imgs: Vec<usize> = graph.neighbours(u).iter().map(|&w| orbit_of[w as usize]).collect();
        imgs.sort_unstable();
        imgs.dedup();
        imgs.len() == graph.valency(u) && !imgs.contains(&orbit_of[u])
    }) && valency.is_some_and(|k| nv > 0 && k == graph.valency(0));
    let cover_facts = if is_regular_cover { Some(cover_facts(graph, g, action, n, &orbits, &orbit_of, &qgraph, &kernel, &induced)?) } else { None };
    Ok(QuotientResult { orbits, orbit_of, graph: qgraph, kernel, induced, valency, is_regular_cover, cover_facts })
}

#[allow(clippy::too_many_arguments)]
fn cover_facts(
    graph: &Graph,
    g: &PermGroup,
    action: &dyn Action,
    n: &PermGroup,
    orbits: &[Vec<usize>],
    orbit_of: &[usize],
    qgraph: &Graph,
    kernel: &PermGroup,
    induced: &PermGroup,
) -> Result<CoverFacts> {
    let equal_valency = qgraph.regular_valency() == graph.regular_valency();
    let n_semiregular = orbits.iter().all(|o| &BigUint::from(o.len()) == n.order());
    let n_equals_kernel = n.same_group(kernel);
    let gv = stabiliser_in_action(g, action, 0)?;
    let qv = induced.stabiliser(orbit_of[0])?;
    let stabiliser_orders_agree = gv.order() == qv.order();
    let (local, _) = crate::graphcore::local_action(graph, &gv, action, 0)?;
    let (qlocal, _) = crate::graphcore::local_action(qgraph, &qv, &crate::permgroup::action::Natural(qgraph.vertex_count()), orbit_of[0])?;
    let local_actions_isomorphic = local.degree() == qlocal.degree() && permutation_isomorphic(&local, &qlocal).is_some();
    Ok(CoverFacts { equal_valency, n_semiregular, n_equals_kernel, stabiliser_orders_agree, local_actions_isomorphic })
}

/// Quotient of a validated pair.
pub fn quotient_of_pair(ctx: &PairContext, n: &PermGroup) -> Result<QuotientResult> {
    quotient(ctx.graph(), ctx.group(), ctx.action(), n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum Trichotomy {
    AtMostTwoOrbits { orbits: usize },
    Cycle { m: usize },
    RegularCover,
}

/// Case split on the quotient valency: at most 1, exactly 2, or `2p`.
pub fn easy_trichotomy(ctx: &PairContext, n: &PermGroup) -> Result<Trichotomy> {
    let q = quotient_of_pair(ctx, n)?;
    trichotomy_of(ctx, &q)
}

pub fn trichotomy_of(ctx: &PairContext, q: &QuotientResult) -> Result<Trichotomy> {
    if q.orbit_count() <= 2 {
        return Ok(Trichotomy::AtMostTwoOrbits { orbits: q.orbit_count() });
    }
    match q.valency {
        Some(2) => Ok(Trichotomy::Cycle { m: q.orbit_count() }),
        Some(k) if k == 2 * ctx.p() as usize && q.is_regular_cover => Ok(Trichotomy::RegularCover),
        other => Err(Error::Contradiction(format!("quotient valency {other:?} is none of 1, 2, 2p"))),
    }
}

/// Number of orbits of `K_v` on `Γ(v)`, an upper bound for the quotient valency.
pub fn kernel_local_orbit_count(ctx: &PairContext, q: &QuotientResult) -> Result<usize> {
    let kv = stabiliser_in_action(&q.kernel, ctx.action(), 0)?;
    let nbrs = ctx.graph().neighbours(0);
    let mut dsu = Dsu::new(nbrs.len());
    for h in kv.generators() {
        for (i, &x) in nbrs.iter().enumerate() {
            let j = nbrs.binary_search(&(ctx.vertex_image(h, x as usize) as u32)).expect("K_v fixes Γ(v)");
            dsu.union(i, j);
        }
    }
    Ok(dsu.classes())
}

#[derive(Debug, Clone)]
pub struct CycleAnalysis {
    pub m: usize,
    pub kernel: PermGroup,
    pub kv: PermGroup,
    pub kv_equals_gv_star: bool,
    pub g_plus_v_equals_gv_star: bool,
    pub kv_elementary_abelian: bool,
    /// `|K_v| ≤ p^m`.
    pub kv_bound_ok: bool,
    /// Arcs from each orbit to the next along the cycle.
    pub orientation: Digraph,
    pub g_plus: PermGroup,
    /// `G⁺/K` is cyclic of order `m`.
    pub g_plus_mod_k_cyclic: bool,
}

impl CycleAnalysis {
    pub fn all_ok(&self) -> bool {
        self.kv_equals_gv_star && self.g_plus_v_equals_gv_star && self.kv_elementary_abelian && self.kv_bound_ok && self.g_plus_mod_k_cyclic
    }
}

/// Structure of `K_v` and the orientation when `Γ/N` is a cycle.
pub fn cycle_quotient_analysis(ctx: &PairContext, n: &PermGroup) -> Result<CycleAnalysis> {
    let q = quotient_of_pair(ctx, n)?;
    let Some(m) = q.cycle_length() else {
        return Err(Error::Precondition("quotient is not a cycle of length at least 3".into()));
    };
    // cyclic order of orbits starting at orbit 0 towards its smaller neighbour
    let mut order = vec![0usize];
    let mut position = vec![usize::MAX; m];
    position[0] = 0;
    while order.len() < m {
        let cur = *order.last().unwrap();
        let next = q.graph.neighbours(cur).iter().map(|&b| b as usize).find(|&b| position[b] == usize::MAX).expect("cycle");
        position[next] = order.len();
        order.push(next);
    }
    let succ = |b: usize| order[(position[b] + 1) % m];
    let g = ctx.graph();
    let mut arcs = Vec::new();
    for u in 0..g.vertex_count() {
        for &w in g.neighbours(u) {
            if q.orbit_of[w as usize] == succ(q.orbit_of[u]) {
                arcs.push((u, w as usize));
            }
        }
    }
    let orientation = Digraph::from_arcs(g.vertex_count(), &arcs)?;
    let reverses = |h: &Permutation| {
        let a = q.orbit_of[ctx.vertex_image(h, q.orbits[order[0]][0])];
        let b = q.orbit_of[ctx.vertex_image(h, q.orbits[order[1]][0])];
        succ(a) != b
    };
    let g_plus = index_two_kernel(ctx.group(), reverses)?;
    let kv = stabiliser_in_action(&q.kernel, ctx.action(), 0)?;
    let g_plus_v = stabiliser_in_action(&g_plus, ctx.action(), 0)?;
    let orbit_action = FnAction { degree: m, f: |h: &Permutation, b: usize| q.orbit_of[ctx.vertex_image(h, q.orbits[b][0])] };
    let g_plus_image = image_group(&g_plus, &orbit_action)?;
    let g_plus_mod_k_cyclic = g_plus_image.is_abelian() && g_plus_image.order() == &BigUint::from(m) && &(g_plus.order() / q.kernel.order()) == g_plus_image.order();
    let p = ctx.p();
    Ok(CycleAnalysis {
        m,
        kv_equals_gv_star: kv.same_group(ctx.gv_star()),
        g_plus_v_equals_gv_star: g_plus_v.same_group(ctx.gv_star()),
        kv_elementary_abelian: kv.is_elementary_abelian(p),
        kv_bound_ok: kv.order() <= &BigUint::from(p).pow(m as u32),
        kernel: q.kernel,
        kv,
        orientation,
        g_plus,
        g_plus_mod_k_cyclic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::structure::normal_closure;
    use crate::px::{px_pair, PxParams};

    #[test]
    fn px_quotient_by_e() {
        for (p, r, s) in [(2, 4, 1), (2, 4, 2), (3, 5, 2)] {
            let ctx = px_pair(PxParams::new(p, r, s).unwrap()).unwrap();
            let e = normal_closure(ctx.group(), ctx.gv_star().generators()).unwrap();
            assert!(e.is_elementary_abelian(p));
            assert_eq!(easy_trichotomy(&ctx, &e).unwrap(), Trichotomy::Cycle { m: r });
            let a = cycle_quotient_analysis(&ctx, &e).unwrap();
            assert!(a.all_ok(), "PX({p},{r},{s})");
            assert!(a.orientation.is_asymmetric());
        }
    }

    #[test]
    fn trivial_and_transitive() {
        let ctx = px_pair(PxParams::new(2, 4, 2).unwrap()).unwrap();
        let one = PermGroup::trivial(ctx.group().degree());
        let q = quotient_of_pair(&ctx, &one).unwrap();
        assert!(q.is_regular_cover && q.cover_facts.as_ref().unwrap().all());
        assert_eq!(easy_trichotomy(&ctx, &one).unwrap(), Trichotomy::RegularCover);
        let q = quotient_of_pair(&ctx, ctx.group()).unwrap();
        assert_eq!(q.orbit_count(), 1);
        assert!(kernel_local_orbit_count(&ctx, &q).unwrap() >= q.valency.unwrap_or(0));
    }
}
