//! Praeger–Xu graphs `PX(p,r,s)`, their orientations and the groups
//! `Sym(p) ≀ D_r ≥ C_p ≀ D_r` acting on them.
//!
//! Vertex `(i; a_0, …, a_{s−1})` is the path `(a_0, i), (a_1, i+1), …` through
//! the columns of `C_r[pK_1]`; its index is `i·p^s + Σ a_j p^j`. Point `(a, i)`
//! of the degree-`rp` representation has index `i·p + a`.

use std::sync::Arc;

use serde::Serialize;

use crate::arith::is_prime;
use crate::constructions::{cyclic, dihedral, symmetric, wreath};
use crate::error::{Error, Result};
use crate::graphcore::{isomorphism, Digraph, Graph, PairContext};
use crate::perm::Permutation;
use crate::permgroup::action::Action;
use crate::permgroup::structure::{conjugacy_classes_filtered, normal_closure};
use crate::permgroup::PermGroup;
use crate::Budget;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PxParams {
    pub p: u64,
    pub r: usize,
    pub s: usize,
}

impl PxParams {
    pub fn new(p: u64, r: usize, s: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParams(format!("p = {p} is not prime")));
        }
        if r < 3 {
            return Err(Error::InvalidParams(format!("r = {r} must be at least 3")));
        }
        if s < 1 || s > r - 1 {
            return Err(Error::InvalidParams(format!("s = {s} must lie in 1..={}", r - 1)));
        }
        Ok(PxParams { p, r, s })
    }

    /// `r·p^s`.
    pub fn vertex_count(&self) -> usize {
        self.r * (self.p as usize).pow(self.s as u32)
    }

    fn word_count(&self) -> usize {
        (self.p as usize).pow(self.s as u32)
    }

    pub fn encode(&self, i: usize, word: &[usize]) -> usize {
        let p = self.p as usize;
        let w = word.iter().rev().fold(0, |acc, &a| acc * p + a);
        (i % self.r) * self.word_count() + w
    }

    /// `(i, [a_0, …, a_{s−1}])`.
    pub fn decode(&self, v: usize) -> (usize, Vec<usize>) {
        let p = self.p as usize;
        let (i, mut w) = (v / self.word_count(), v % self.word_count());
        let word = (0..self.s)
            .map(|_| {
                let a = w % p;
                w /= p;
                a
            })
            .collect();
        (i, word)
    }

    /// Out-neighbours `(i+1; a_1, …, a_{s−1}, b)`.
    fn successors(&self, v: usize) -> Vec<usize> {
        let (i, word) = self.decode(v);
        let mut next: Vec<usize> = word[1..].to_vec();
        next.push(0);
        (0..self.p as usize)
            .map(|b| {
                *next.last_mut().unwrap() = b;
                self.encode(i + 1, &next)
            })
            .collect()
    }
}

impl std::fmt::Display for PxParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PX({},{},{})", self.p, self.r, self.s)
    }
}

pub fn vpx_digraph(params: PxParams) -> Digraph {
    let n = params.vertex_count();
    let arcs: Vec<(usize, usize)> = (0..n).flat_map(|v| params.successors(v).into_iter().map(move |w| (v, w))).collect();
    Digraph::from_arcs(n, &arcs).expect("vPX is a simple digraph")
}

pub fn px_graph(params: PxParams) -> Graph {
    vpx_digraph(params).underlying()
}

/// `X = Sym(p) ≀ D_r` and `H = C_p ≀ D_r` on the `rp` points `(a, i)`.
pub fn px_groups(params: PxParams) -> Result<(PermGroup, PermGroup)> {
    let p = params.p as usize;
    let d = dihedral(params.r)?;
    Ok((wreath(&symmetric(p)?, &d)?, wreath(&cyclic(p)?, &d)?))
}

/// Action of the degree-`rp` groups on the vertices of `PX(p,r,s)`.
#[derive(Debug, Clone, Copy)]
pub struct PxAction {
    pub params: PxParams,
}

impl Action for PxAction {
    fn degree(&self) -> usize {
        self.params.vertex_count()
    }

    fn image(&self, g: &Permutation, v: usize) -> usize {
        let pr = &self.params;
        let p = pr.p as usize;
        let (i, word) = pr.decode(v);
        let mut cols = Vec::with_capacity(pr.s);
        let mut letters = Vec::with_capacity(pr.s);
        for (j, &a) in word.iter().enumerate() {
            let x = g.apply(((i + j) % pr.r) * p + a);
            cols.push(x / p);
            letters.push(x % p);
        }
        let reversed = pr.s >= 2 && (cols[1] + pr.r - cols[0]) % pr.r != 1;
        if reversed {
            letters.reverse();
            pr.encode(cols[pr.s - 1], &letters)
        } else {
            pr.encode(cols[0], &letters)
        }
    }
}

/// The pair `(PX(p,r,s), H)` with `χ = 2`.
pub fn px_pair(params: PxParams) -> Result<PairContext> {
    let (_, h) = px_groups(params)?;
    crate::graphcore::make_pair(px_graph(params), h, Arc::new(PxAction { params }), params.p, 2)
}

/// Parameter identities of `PX(p,r,s)` and its pair with `H = C_p ≀ D_r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PxReport {
    pub p: u64,
    pub r: usize,
    pub s: usize,
    pub vertices: usize,
    pub edges: usize,
    pub valency: Option<usize>,
    pub connected: bool,
    pub h_order: String,
    /// `|H_v|`, when the pair validates.
    pub hv_order: Option<String>,
    /// `2p^{r−s}` for `s ≤ r−2`.
    pub hv_expected: Option<String>,
    /// The local action is `L(p,2)`.
    pub local_action_ok: bool,
    pub rejection: Option<String>,
}

pub fn px_report(params: PxParams) -> Result<PxReport> {
    let graph = px_graph(params);
    let (_, h) = px_groups(params)?;
    let hv_expected = (params.s + 2 <= params.r).then(|| (crate::arith::big_pow(params.p, (params.r - params.s) as u32) * 2u32).to_string());
    let (hv_order, rejection) = match px_pair(params) {
        Ok(ctx) => (Some(ctx.gv().order().to_string()), None),
        Err(Error::Rejected(r)) => (None, Some(r.to_string())),
        Err(e) => return Err(e),
    };
    Ok(PxReport {
        p: params.p,
        r: params.r,
        s: params.s,
        vertices: graph.vertex_count(),
        edges: graph.edge_count(),
        valency: graph.regular_valency(),
        connected: graph.is_connected(),
        h_order: h.order().to_string(),
        local_action_ok: hv_order.is_some(),
        hv_order,
        hv_expected,
        rejection,
    })
}

/// A recognised Praeger–Xu pair.
#[derive(Debug, Clone)]
pub struct PxRecognition {
    pub params: PxParams,
    /// An abelian normal `p`-subgroup that is not semiregular.
    pub normal_subgroup: PermGroup,
}

/// Finds an abelian normal `p`-subgroup of `G` that is not semiregular on
/// vertices and confirms `Γ ≅ PX(p,r,s)` for some `r·p^s = |V|`.
///
/// Such a subgroup exists iff some element of order `p` in `G_v` has an
/// abelian normal closure; classes of `G_v` are scanned in order.
pub fn recognize_px(ctx: &PairContext, budget: &Budget) -> Result<Option<PxRecognition>> {
    let p = ctx.p();
    let reps = conjugacy_classes_filtered(ctx.gv(), budget.enumeration, |x| x.order() == p)?;
    let mut found = None;
    for (x, _) in reps {
        let n = normal_closure(ctx.group(), std::slice::from_ref(&x))?;
        if n.is_abelian() {
            found = Some(n);
            break;
        }
    }
    let Some(normal_subgroup) = found else { return Ok(None) };
    match identify_px(ctx.graph(), p, budget)? {
        Some(params) => Ok(Some(PxRecognition { params, normal_subgroup })),
        None => Err(Error::Contradiction("abelian normal p-subgroup is not semiregular but the graph is not a PX graph".into())),
    }
}

/// Tries every `PX(p,r,s)` with `r·p^s = |V|` by isomorphism testing.
pub fn identify_px(graph: &Graph, p: u64, budget: &Budget) -> Result<Option<PxParams>> {
    let n = graph.vertex_count();
    if n > budget.automorphism_vertices {
        return Err(Error::budget("PX isomorphism confirmation", n, budget.automorphism_vertices as u64));
    }
    if graph.regular_valency() != Some(2 * p as usize) {
        return Ok(None);
    }
    let mut s = 1;
    while (p as usize).pow(s as u32) <= n {
        let ps = (p as usize).pow(s as u32);
        if n.is_multiple_of(ps) && n / ps >= 3 && s < n / ps {
            let params = PxParams::new(p, n / ps, s)?;
            if isomorphism(&px_graph(params), graph, budget.automorphism_vertices)?.is_some() {
                return Ok(Some(params));
            }
        }
        s += 1;
    }
    Ok(None)
}
