//! Normal structure: closures, commutator series, centre, exponent,
//! conjugacy classes and minimal normal subgroups.

use std::collections::HashSet;
use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_traits::One;

use super::chain::Chain;
use super::PermGroup;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// `N ⊴ G`, checked on generators only.
pub fn is_normal(g: &PermGroup, n: &PermGroup) -> bool {
    g.contains_group(n) && n.generators().iter().all(|x| g.generators().iter().all(|s| n.contains(&x.conjugate_by(s))))
}

/// Smallest normal subgroup of `g` containing `elems`.
pub fn normal_closure(g: &PermGroup, elems: &[Permutation]) -> Result<PermGroup> {
    if elems.iter().any(|x| !g.contains(x)) {
        return Err(Error::NotMember);
    }
    Ok(normal_closure_unchecked(g.degree(), g.generators(), elems))
}

/// Normal closure under conjugation by `conj` (members are not checked).
pub(crate) fn normal_closure_unchecked(degree: usize, conj: &[Permutation], elems: &[Permutation]) -> PermGroup {
    let mut gens: Vec<Permutation> = elems.iter().filter(|x| !x.is_identity()).cloned().collect();
    gens.dedup();
    let mut chain = Chain::build(degree, &gens, &[], None);
    let mut i = 0;
    while i < gens.len() {
        for s in conj {
            let c = gens[i].conjugate_by(s);
            if !chain.contains_from(&c, 0) {
                chain.extend(std::slice::from_ref(&c));
                gens.push(c);
            }
        }
        i += 1;
    }
    let order = chain.order_from(0);
    PermGroup::build(degree, gens, &[], Some(&order)).expect("degrees agree")
}

/// `[A, B]` for `A, B ⊴ G`: normal closure of generator commutators.
pub fn commutator_subgroup(g: &PermGroup, a: &PermGroup, b: &PermGroup) -> PermGroup {
    let mut comms = Vec::new();
    for x in a.generators() {
        for y in b.generators() {
            let c = x.commutator(y);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    normal_closure_unchecked(g.degree(), g.generators(), &comms)
}

pub fn derived_subgroup(g: &PermGroup) -> PermGroup {
    commutator_subgroup(g, g, g)
}

pub fn is_soluble(g: &PermGroup) -> bool {
    let mut cur = g.clone();
    loop {
        if cur.is_trivial() {
            return true;
        }
        let next = derived_subgroup(&cur);
        if next.order() == cur.order() {
            return false;
        }
        cur = next;
    }
}

/// `γ_1 = G, γ_{i+1} = [γ_i, G]`, up to the first repeat or the trivial group.
pub fn lower_central_series(g: &PermGroup) -> Vec<PermGroup> {
    let mut series = vec![g.clone()];
    loop {
        let last = series.last().expect("non-empty");
        if last.is_trivial() {
            return series;
        }
        let next = commutator_subgroup(g, last, g);
        if next.order() == last.order() {
            return series;
        }
        series.push(next);
    }
}

/// Nilpotency class, or `None` when not nilpotent. The trivial group has class 0.
pub fn nilpotency_class(g: &PermGroup) -> Option<usize> {
    let series = lower_central_series(g);
    series.last().expect("non-empty").is_trivial().then(|| series.len() - 1)
}

/// Centre. Uses enumeration within `budget`, the chain-based search otherwise.
pub fn centre(g: &PermGroup, budget: u64) -> Result<PermGroup> {
    if g.check_budget(budget, "centre").is_ok() {
        centre_by_enumeration(g, budget)
    } else {
        centre_by_chain(g, budget)
    }
}

pub fn centre_by_enumeration(g: &PermGroup, budget: u64) -> Result<PermGroup> {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut z = PermGroup::trivial(g.degree());
    g.for_each_element(budget, |x| {
        if !z.contains(x) && g.generators().iter().all(|s| x.commutes_with(s)) {
            gens.push(x.clone());
            z = PermGroup::new(g.degree(), gens.clone()).expect("degrees agree");
        }
        ControlFlow::Continue(())
    })?;
    Ok(z)
}

/// Centre via orbit candidates: a central `z` is fixed by its action on one
/// point per orbit, and that image must be fixed by the point stabiliser.
/// The number of candidate combinations is bounded by `budget`.
pub fn centre_by_chain(g: &PermGroup, budget: u64) -> Result<PermGroup> {
    let n = g.degree();
    // (orbit points, candidate images of orbit[0], transversal aligned with orbit points)
    let mut per_orbit: Vec<(Vec<usize>, Vec<usize>, Vec<Permutation>)> = Vec::new();
    let mut combos: u128 = 1;
    for o in g.orbits().into_iter().filter(|o| o.len() > 1) {
        let r = o[0];
        let stab = g.stabiliser(r)?;
        let cands: Vec<usize> = o.iter().copied().filter(|&y| stab.generators().iter().all(|h| h.apply(y) == y)).collect();
        let (pts, reps) = super::action::orbit_transversal(g, &super::action::Natural(n), r);
        let mut rep_for = vec![None; n];
        for (p, u) in pts.into_iter().zip(reps) {
            rep_for[p] = Some(u);
        }
        let aligned: Vec<Permutation> = o.iter().map(|&y| rep_for[y].take().expect("in orbit")).collect();
        combos = combos.saturating_mul(cands.len() as u128);
        per_orbit.push((o, cands, aligned));
    }
    if combos > budget as u128 {
        return Err(Error::budget("centre (chain path)", combos, budget));
    }
    let mut found: Vec<Permutation> = Vec::new();
    let mut choice = vec![0usize; per_orbit.len()];
    loop {
        let mut images: Vec<u32> = (0..n as u32).collect();
        for (k, (orbit, cands, reps)) in per_orbit.iter().enumerate() {
            let image_of_rep = cands[choice[k]];
            for (y, u) in orbit.iter().zip(reps) {
                images[*y] = u.apply(image_of_rep) as u32;
            }
        }
        if let Ok(z) = Permutation::from_images(images) {
            if g.contains(&z) && g.generators().iter().all(|s| z.commutes_with(s)) {
                found.push(z);
            }
        }
        let mut k = 0;
        loop {
            if k == choice.len() {
                return PermGroup::new(n, found);
            }
            choice[k] += 1;
            if choice[k] < per_orbit[k].1.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Least common multiple of element orders.
pub fn exponent(g: &PermGroup, budget: u64) -> Result<u64> {
    let mut e = 1u64;
    g.for_each_element(budget, |x| {
        e = num_integer::lcm(e, x.order());
        ControlFlow::Continue(())
    })?;
    Ok(e)
}

/// One representative per conjugacy class (first in enumeration order), with class sizes.
pub fn conjugacy_classes(g: &PermGroup, budget: u64) -> Result<Vec<(Permutation, u64)>> {
    conjugacy_classes_filtered(g, budget, |_| true)
}

/// Classes of elements satisfying `keep` (a class function).
pub fn conjugacy_classes_filtered<F: Fn(&Permutation) -> bool>(g: &PermGroup, budget: u64, keep: F) -> Result<Vec<(Permutation, u64)>> {
    let total = g.check_budget(budget, "conjugacy classes")? as usize;
    let mut seen = vec![false; total];
    let mut out = Vec::new();
    let mut idx = 0usize;
    let mut err = None;
    g.for_each_element(budget, |x| {
        let i = idx;
        idx += 1;
        if seen[i] || !keep(x) {
            return ControlFlow::Continue(());
        }
        seen[i] = true;
        let mut class = vec![x.clone()];
        let mut k = 0;
        while k < class.len() {
            for s in g.generators() {
                let c = class[k].conjugate_by(s);
                match g.element_index(&c) {
                    Some(j) => {
                        if !seen[j as usize] {
                            seen[j as usize] = true;
                            class.push(c);
                        }
                    }
                    None => {
                        err = Some(Error::NotMember);
                        return ControlFlow::Break(());
                    }
                }
            }
            k += 1;
        }
        out.push((x.clone(), class.len() as u64));
        ControlFlow::Continue(())
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

fn is_prime_order(x: &Permutation) -> bool {
    let o = x.order();
    o > 1 && crate::arith::is_prime(o)
}

/// Inclusion-minimal non-trivial normal subgroups, as normal closures of
/// prime-order class representatives. Sorted by order, then generators.
pub fn minimal_normal_subgroups(g: &PermGroup, budget: u64) -> Result<Vec<PermGroup>> {
    if g.is_trivial() {
        return Ok(Vec::new());
    }
    let reps = conjugacy_classes_filtered(g, budget, is_prime_order)?;
    let mut closures: Vec<PermGroup> = Vec::new();
    for (x, _) in reps {
        let c = normal_closure_unchecked(g.degree(), g.generators(), std::slice::from_ref(&x));
        if !closures.iter().any(|d| d.same_group(&c)) {
            closures.push(c);
        }
    }
    let mut minimal: Vec<PermGroup> = closures.iter().filter(|c| !closures.iter().any(|d| d.order() < c.order() && c.contains_group(d))).cloned().collect();
    minimal.sort_by(|a, b| a.order().cmp(b.order()).then_with(|| a.generators().cmp(b.generators())));
    Ok(minimal)
}

/// Intersection of two subgroups; the first must be enumerable within `budget`.
pub fn intersection(a: &PermGroup, b: &PermGroup, budget: u64) -> Result<PermGroup> {
    let mut gens = Vec::new();
    let mut cur = PermGroup::trivial(a.degree());
    a.for_each_element(budget, |x| {
        if b.contains(x) && !cur.contains(x) {
            gens.push(x.clone());
            cur = PermGroup::new(a.degree(), gens.clone()).expect("degrees agree");
        }
        ControlFlow::Continue(())
    })?;
    Ok(cur)
}

/// Core of `h` in `g`: the largest normal subgroup of `g` inside `h`.
pub fn core(g: &PermGroup, h: &PermGroup, budget: u64) -> Result<PermGroup> {
    let mut c = h.clone();
    loop {
        let mut changed = false;
        for s in g.generators() {
            let conj = c.conjugate(s);
            if !conj.same_group(&c) {
                c = intersection(&c, &conj, budget)?;
                changed = true;
            }
        }
        if !changed {
            return Ok(c);
        }
    }
}

/// `N_G(H)` by enumeration of `g`.
pub fn normaliser(g: &PermGroup, h: &PermGroup, budget: u64) -> Result<PermGroup> {
    let mut gens: Vec<Permutation> = h.generators().to_vec();
    let mut cur = h.clone();
    g.for_each_element(budget, |x| {
        if !cur.contains(x) && h.generators().iter().all(|y| h.contains(&y.conjugate_by(x))) {
            gens.push(x.clone());
            cur = PermGroup::new(g.degree(), gens.clone()).expect("degrees agree");
        }
        ControlFlow::Continue(())
    })?;
    Ok(cur)
}

/// All elements of a small group as a set, for oracle comparisons.
pub fn element_set(g: &PermGroup, budget: u64) -> Result<HashSet<Permutation>> {
    Ok(g.elements(budget)?.into_iter().collect())
}

/// Exact exponent `t` with `|G| = p^t`, if `G` is a `p`-group.
pub fn p_exponent(order: &BigUint, p: u64) -> Option<u32> {
    let mut o = order.clone();
    let bp = BigUint::from(p);
    let mut t = 0;
    while o > BigUint::one() {
        if (&o % &bp) != BigUint::from(0u32) {
            return None;
        }
        o /= &bp;
        t += 1;
    }
    Some(t)
}
