//! Classification of locally-`L(p,χ)` pairs: the vertex bound, the structure
//! battery for `G_v*`, the cycle case and the recursive case dispatch.

use std::ops::ControlFlow;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::arith::{self, big_pow, bound_rhs, ord};
use crate::error::{Error, Result};
use crate::graphcore::{make_pair_natural, PairContext};
use crate::permgroup::action::stabiliser_in_action;
use crate::permgroup::pgroup::{p_rank, sylow_subgroup};
use crate::permgroup::structure::{centre, exponent, is_normal, is_soluble, minimal_normal_subgroups, nilpotency_class, p_exponent};
use crate::permgroup::PermGroup;
use crate::px::{identify_px, recognize_px};
use crate::quotients::{quotient_of_pair, trichotomy_of, vertex_orbits, QuotientReport, QuotientResult, Trichotomy};
use crate::Budget;

fn ser_big<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    match u64::try_from(x) {
        Ok(v) => s.serialize_u64(v),
        Err(_) => s.serialize_str(&x.to_string()),
    }
}

/// `|V| ≥ 2t·p^{t+1}` where `|G_v*| = p^t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub lhs: u64,
    #[serde(serialize_with = "ser_big")]
    pub rhs: BigUint,
    pub met: bool,
    pub t: u32,
}

pub fn bound_check(ctx: &PairContext) -> BoundCheck {
    let t = ctx.t();
    let lhs = ctx.vertex_count() as u64;
    let rhs = bound_rhs(ctx.p(), t);
    BoundCheck { lhs, met: BigUint::from(lhs) >= rhs, rhs, t }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructuralReport {
    pub order: u64,
    pub class: usize,
    pub class_ok: bool,
    pub centre_order: u64,
    /// `|Z(G_v*)|³ ≥ |G_v*|`.
    pub centre_cube_ok: bool,
    pub exponent: u64,
    pub exponent_ok: bool,
    pub elem_abelian_rank: u32,
    /// An elementary abelian subgroup of order at least `|G_v*|^{2/3}`.
    pub elem_abelian_23_ok: bool,
}

impl StructuralReport {
    pub fn all_ok(&self) -> bool {
        self.class_ok && self.centre_cube_ok && self.exponent_ok && self.elem_abelian_23_ok
    }
}

/// Structure of `G_v*` without judging it.
pub fn gv_star_structure(ctx: &PairContext, budget: &Budget) -> Result<StructuralReport> {
    p_group_structure(ctx.gv_star(), ctx.p(), budget)
}

/// The battery quantities for a `p`-group `s` of order `p^t`.
pub fn p_group_structure(s: &PermGroup, p: u64, budget: &Budget) -> Result<StructuralReport> {
    let t = p_exponent(s.order(), p).ok_or_else(|| Error::Precondition(format!("not a {p}-group")))?;
    let order = s.check_budget(budget.enumeration, "G_v* battery")?;
    let class = nilpotency_class(s).ok_or_else(|| Error::Contradiction("G_v* is not nilpotent".into()))?;
    let centre_order = centre(s, budget.enumeration)?.order_u64().expect("subgroup of an enumerable group");
    let exponent = exponent(s, budget.enumeration)?;
    let elem_abelian_rank = p_rank(s, p, budget.enumeration)?;
    Ok(StructuralReport {
        order,
        class,
        class_ok: class <= 3,
        centre_order,
        centre_cube_ok: BigUint::from(centre_order).pow(3) >= BigUint::from(order),
        exponent,
        exponent_ok: exponent <= p * p,
        elem_abelian_rank,
        elem_abelian_23_ok: 3 * elem_abelian_rank >= 2 * t,
    })
}

/// [`gv_star_structure`], failing when any constraint is violated.
pub fn gv_star_battery(ctx: &PairContext, budget: &Budget) -> Result<StructuralReport> {
    let r = gv_star_structure(ctx, budget)?;
    if r.all_ok() {
        Ok(r)
    } else {
        Err(Error::Contradiction(format!("G_v* battery failed: {r:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleCaseReport {
    pub m: usize,
    pub q: u64,
    pub t: u32,
    /// Set when the pair is recognised as PX; the remaining checks are then skipped.
    pub px: Option<String>,
    pub t_le_m: bool,
    pub p_ne_q: bool,
    pub kv_elementary_abelian: bool,
    pub kv_faithful_on_n: bool,
    pub ord_p_q: Option<u64>,
    #[serde(serialize_with = "ser_big")]
    pub vertex_lower_bound: BigUint,
    pub vertex_bound_ok: bool,
}

impl CycleCaseReport {
    pub fn holds(&self) -> bool {
        self.px.is_some() || (self.t_le_m && self.p_ne_q && self.kv_elementary_abelian && self.kv_faithful_on_n && self.vertex_bound_ok)
    }
}

fn prime_of(order: &BigUint) -> Option<u64> {
    arith::prime_divisors_big(order).into_iter().next().filter(|&q| p_exponent(order, q).is_some())
}

/// Checks the cycle-quotient conclusions for a semiregular abelian minimal
/// normal `q`-subgroup `N` with `Γ/N` a cycle.
pub fn cycle_case_check(ctx: &PairContext, n: &PermGroup, budget: &Budget) -> Result<CycleCaseReport> {
    let q = quotient_of_pair(ctx, n)?;
    cycle_case_from_quotient(ctx, n, &q, budget)
}

fn cycle_case_from_quotient(ctx: &PairContext, n: &PermGroup, quot: &QuotientResult, budget: &Budget) -> Result<CycleCaseReport> {
    let m = quot.cycle_length().ok_or_else(|| Error::Precondition("Γ/N is not a cycle of length at least 3".into()))?;
    let qp = prime_of(n.order()).ok_or_else(|| Error::Precondition("N is not a non-trivial prime-power group".into()))?;
    if !n.is_elementary_abelian(qp) {
        return Err(Error::Precondition("N is not elementary abelian".into()));
    }
    if !semiregular_on_vertices(ctx, n)? {
        return Err(Error::Precondition("N is not semiregular".into()));
    }
    let (p, t) = (ctx.p(), ctx.t());
    let px = match recognize_px(ctx, budget) {
        Ok(r) => r.map(|r| r.params.to_string()),
        Err(Error::Budget { .. }) => None,
        Err(e) => return Err(e),
    };
    let kv = stabiliser_in_action(&quot.kernel, ctx.action(), 0)?;
    let mut centralising = 0u64;
    kv.for_each_element(budget.enumeration, |x| {
        if n.generators().iter().all(|y| x.commutes_with(y)) {
            centralising += 1;
        }
        ControlFlow::Continue(())
    })?;
    let ord_p_q = if p != qp { Some(ord(p, qp)?) } else { None };
    let vertex_lower_bound = match ord_p_q {
        Some(o) => BigUint::from(m) * big_pow(qp, t * o as u32),
        None => BigUint::from(0u32),
    };
    Ok(CycleCaseReport {
        m,
        q: qp,
        t,
        px,
        t_le_m: t as usize <= m,
        p_ne_q: p != qp,
        kv_elementary_abelian: kv.is_elementary_abelian(p),
        kv_faithful_on_n: centralising == 1,
        ord_p_q,
        vertex_bound_ok: ord_p_q.is_some() && BigUint::from(ctx.vertex_count()) >= vertex_lower_bound,
        vertex_lower_bound,
    })
}

/// `N ⊴ G` is semiregular iff `N_v = 1` for one vertex.
pub fn semiregular_on_vertices(ctx: &PairContext, n: &PermGroup) -> Result<bool> {
    Ok(stabiliser_in_action(n, ctx.action(), ctx.base_vertex())?.is_trivial())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Px { p: u64, r: usize, s: usize },
    BoundMet,
    BasicTwoOrbits { orbits: usize },
    BasicCycle { m: usize, check: CycleCaseReport },
    BasicSemisimple,
    Reduced { sub: Box<ClassificationReport> },
}

impl Outcome {
    pub fn kind(&self) -> &'static str {
        match self {
            Outcome::Px { .. } => "px",
            Outcome::BoundMet => "bound_met",
            Outcome::BasicTwoOrbits { .. } => "basic_two_orbits",
            Outcome::BasicCycle { .. } => "basic_cycle",
            Outcome::BasicSemisimple => "basic_semisimple",
            Outcome::Reduced { .. } => "reduced",
        }
    }
}

/// A normal subgroup cited by a report, re-verified at finalisation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalWitness {
    pub role: String,
    pub order: String,
    pub generators: Vec<String>,
    pub normal: bool,
    pub abelian: bool,
    pub soluble: bool,
    pub semiregular: bool,
    pub orbit_count: usize,
}

impl NormalWitness {
    fn new(ctx: &PairContext, role: &str, n: &PermGroup) -> Result<Self> {
        let vertex_gens = crate::permgroup::action::induced_permutations(n.generators(), ctx.action())?;
        Ok(NormalWitness {
            role: role.into(),
            order: n.order().to_string(),
            generators: n.generators().iter().map(|g| g.to_string()).collect(),
            normal: is_normal(ctx.group(), n),
            abelian: n.is_abelian(),
            soluble: is_soluble(n),
            semiregular: semiregular_on_vertices(ctx, n)?,
            orbit_count: vertex_orbits(ctx.vertex_count(), &vertex_gens).0.len(),
        })
    }
}

/// Another minimal normal subgroup that was not chosen.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Alternative {
    pub order: String,
    pub abelian: bool,
    pub semiregular: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainLink {
    pub vertices: usize,
    pub normal_order: Option<String>,
    pub outcome: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub p: u64,
    pub chi: u32,
    pub vertices: usize,
    pub group_order: String,
    pub gv_order: String,
    pub outcome: Outcome,
    pub witnesses: Vec<NormalWitness>,
    pub quotient: Option<QuotientReport>,
    pub bounds: BoundCheck,
    pub structural: StructuralReport,
    pub alternatives: Vec<Alternative>,
    pub reduction_chain: Vec<ChainLink>,
}

impl ClassificationReport {
    /// Outcome at the bottom of the reduction chain.
    pub fn terminal(&self) -> &Outcome {
        match &self.outcome {
            Outcome::Reduced { sub } => sub.terminal(),
            o => o,
        }
    }
}

struct Partial {
    outcome: Outcome,
    witnesses: Vec<NormalWitness>,
    quotient: Option<QuotientReport>,
    alternatives: Vec<Alternative>,
}

impl Partial {
    fn bare(outcome: Outcome) -> Self {
        Partial { outcome, witnesses: Vec::new(), quotient: None, alternatives: Vec::new() }
    }
}

/// Determines which alternative of the structure theorem holds for `ctx`.
pub fn dispatch(ctx: &PairContext, budget: &Budget) -> Result<ClassificationReport> {
    let bounds = bound_check(ctx);
    let structural = gv_star_battery(ctx, budget)?;
    let part = decide(ctx, &bounds, budget)?;
    let mut reduction_chain = vec![ChainLink { vertices: ctx.vertex_count(), normal_order: part.witnesses.first().map(|w| w.order.clone()), outcome: part.outcome.kind().into() }];
    if let Outcome::Reduced { sub } = &part.outcome {
        reduction_chain.extend(sub.reduction_chain.iter().cloned());
    }
    Ok(ClassificationReport {
        p: ctx.p(),
        chi: ctx.chi(),
        vertices: ctx.vertex_count(),
        group_order: ctx.group().order().to_string(),
        gv_order: ctx.gv().order().to_string(),
        outcome: part.outcome,
        witnesses: part.witnesses,
        quotient: part.quotient,
        bounds,
        structural,
        alternatives: part.alternatives,
        reduction_chain,
    })
}

fn decide(ctx: &PairContext, bounds: &BoundCheck, budget: &Budget) -> Result<Partial> {
    if let Some(rec) = recognize_px(ctx, budget)? {
        let mut part = Partial::bare(px_outcome(rec.params));
        part.witnesses.push(NormalWitness::new(ctx, "abelian_normal_p_subgroup", &rec.normal_subgroup)?);
        return Ok(part);
    }
    if bounds.met {
        return Ok(Partial::bare(Outcome::BoundMet));
    }
    let mins = minimal_normal_subgroups(ctx.group(), budget.enumeration)?;
    if mins.is_empty() {
        return Err(Error::Contradiction("a transitive group has no minimal normal subgroup".into()));
    }
    let alternatives_except = |chosen: usize| -> Result<Vec<Alternative>> {
        let mut out = Vec::new();
        for (i, m) in mins.iter().enumerate() {
            if i != chosen {
                out.push(Alternative { order: m.order().to_string(), abelian: m.is_abelian(), semiregular: semiregular_on_vertices(ctx, m)? });
            }
        }
        Ok(out)
    };

    if let Some(ui) = mins.iter().position(|m| !m.is_abelian()) {
        if mins.len() == 1 {
            let mut part = Partial::bare(Outcome::BasicSemisimple);
            part.witnesses.push(NormalWitness::new(ctx, "unique_minimal_normal", &mins[ui])?);
            return Ok(part);
        }
        let vi = (0..mins.len()).find(|&i| i != ui).expect("at least two");
        let quot = quotient_of_pair(ctx, &mins[vi])?;
        if trichotomy_of(ctx, &quot)? != Trichotomy::RegularCover {
            return Err(Error::Contradiction("second minimal normal subgroup does not give a regular cover".into()));
        }
        return reduce(ctx, &mins[vi], quot, bounds, alternatives_except(vi)?, budget);
    }

    let ni = mins.iter().position(|m| m.is_p_group(ctx.p())).unwrap_or(0);
    let n = &mins[ni];
    let alternatives = alternatives_except(ni)?;
    if !semiregular_on_vertices(ctx, n)? {
        return Err(Error::Contradiction("abelian minimal normal subgroup is not semiregular but PX recognition failed".into()));
    }
    let quot = quotient_of_pair(ctx, n)?;
    match trichotomy_of(ctx, &quot)? {
        Trichotomy::AtMostTwoOrbits { orbits } => {
            let p2 = BigUint::from(ctx.chi()) * BigUint::from(ctx.p()).pow(2);
            if ctx.gv().order() != &p2 || !ctx.local_kernel().is_trivial() {
                return Err(Error::Contradiction("two-orbit case without a faithful local action of order χp²".into()));
            }
            let mut part = Partial::bare(Outcome::BasicTwoOrbits { orbits });
            part.witnesses.push(NormalWitness::new(ctx, "minimal_normal", n)?);
            part.quotient = Some(quot.report());
            part.alternatives = alternatives;
            Ok(part)
        }
        Trichotomy::Cycle { m } => {
            let check = cycle_case_from_quotient(ctx, n, &quot, budget)?;
            if !check.holds() {
                return Err(Error::Contradiction(format!("cycle case constraints fail: {check:?}")));
            }
            let mut part = Partial::bare(Outcome::BasicCycle { m, check });
            part.witnesses.push(NormalWitness::new(ctx, "minimal_normal", n)?);
            part.quotient = Some(quot.report());
            part.alternatives = alternatives;
            Ok(part)
        }
        Trichotomy::RegularCover => reduce(ctx, n, quot, bounds, alternatives, budget),
    }
}

fn px_outcome(x: crate::px::PxParams) -> Outcome {
    Outcome::Px { p: x.p, r: x.r, s: x.s }
}

/// Recurses on `(Γ/N, G/K)` after re-validating it as a pair.
fn reduce(ctx: &PairContext, n: &PermGroup, quot: QuotientResult, bounds: &BoundCheck, alternatives: Vec<Alternative>, budget: &Budget) -> Result<Partial> {
    let sub_ctx = make_pair_natural(quot.graph.clone(), quot.induced.clone(), ctx.p(), ctx.chi()).map_err(|e| match e {
        Error::Rejected(r) => Error::Contradiction(format!("quotient pair rejected: {r}")),
        other => other,
    })?;
    let sub = dispatch(&sub_ctx, budget)?;
    match &sub.outcome {
        Outcome::Px { .. } | Outcome::BoundMet => {
            // the cover is then PX or meets the bound itself
            if bounds.met {
                return Ok(Partial::bare(Outcome::BoundMet));
            }
            match identify_px(ctx.graph(), ctx.p(), budget)? {
                Some(params) => Ok(Partial::bare(px_outcome(params))),
                None => Err(Error::Contradiction(format!("quotient outcome {} does not lift", sub.outcome.kind()))),
            }
        }
        _ => Ok(Partial {
            witnesses: vec![NormalWitness::new(ctx, "cover_kernel", n)?],
            quotient: Some(quot.report()),
            alternatives,
            outcome: Outcome::Reduced { sub: Box::new(sub) },
        }),
    }
}

/// Outcome of the exhaustive arithmetic checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArithmeticReport {
    pub power_inequality_cases: u64,
    pub power_inequality_ok: bool,
    pub lifting_exponent_cases: u64,
    pub lifting_exponent_ok: bool,
    pub sylow_cases: u64,
    pub sylow_ok: bool,
    pub root_sequence_ok: bool,
    pub c2_exact: bool,
}

impl ArithmeticReport {
    pub fn all_ok(&self) -> bool {
        self.power_inequality_ok && self.lifting_exponent_ok && self.sylow_ok && self.root_sequence_ok && self.c2_exact
    }
}

/// Power inequality for `p, t ≤ 50`, lifting exponents for primes `r, p ≤ 13`
/// with `f ≤ 60`, Sylow bounds in `Sym(n)` for `n ≤ 12`.
pub fn arithmetic_lemma_suite() -> Result<ArithmeticReport> {
    let mut power_inequality_cases = 0;
    let mut power_inequality_ok = true;
    for p in arith::primes_up_to(50) {
        for t in 1..=50 {
            power_inequality_cases += 1;
            power_inequality_ok &= arith::lemma_power_inequality(p, t);
        }
    }
    let small = arith::primes_up_to(13);
    let mut lifting_exponent_cases = 0;
    let mut lifting_exponent_ok = true;
    for &r in &small {
        for &p in small.iter().filter(|&&p| p != 2 && p != r) {
            match arith::lemma_lifting_exponent(r, p, 60) {
                Ok(k) => lifting_exponent_cases += k,
                Err(_) => lifting_exponent_ok = false,
            }
        }
    }
    let mut sylow_cases = 0;
    let mut sylow_ok = true;
    for n in 2..=12usize {
        let sym = crate::constructions::symmetric(n)?;
        for p in arith::primes_up_to(n as u64) {
            let s = sylow_subgroup(&sym, p, 1_000_000)?;
            sylow_cases += 1;
            sylow_ok &= s.is_p_group(p) && s.order() == &crate::permgroup::pgroup::p_part(sym.order(), p) && arith::sylow_bound_holds(s.order(), p, n as u32);
        }
    }
    Ok(ArithmeticReport {
        power_inequality_cases,
        power_inequality_ok,
        lifting_exponent_cases,
        lifting_exponent_ok,
        sylow_cases,
        sylow_ok,
        root_sequence_ok: arith::root_sequence_decreasing(&arith::primes_up_to(200)[1..]),
        c2_exact: arith::constants(2)?.c_exact == Some(8100),
    })
}
