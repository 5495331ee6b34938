//! Sylow subgroups and p-ranks.

use std::collections::HashSet;
use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_traits::One;

use super::table::{GroupTable, Subset};
use super::{factorial, PermGroup};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// `p`-part of an integer.
pub fn p_part(n: &BigUint, p: u64) -> BigUint {
    let bp = BigUint::from(p);
    let mut n = n.clone();
    let mut out = BigUint::one();
    while (&n % &bp) == BigUint::from(0u32) {
        n /= &bp;
        out *= &bp;
    }
    out
}

/// A Sylow `p`-subgroup.
///
/// Strategy, in order: the group itself if it is a `p`-group; a point
/// stabiliser when some orbit length is prime to `p`; the iterated wreath
/// product when `G` is the full symmetric or alternating group on its
/// support; otherwise growth inside normalisers by element enumeration.
pub fn sylow_subgroup(g: &PermGroup, p: u64, budget: u64) -> Result<PermGroup> {
    if !crate::arith::is_prime(p) {
        return Err(Error::InvalidParams(format!("{p} is not prime")));
    }
    let target = p_part(g.order(), p);
    if target.is_one() {
        return Ok(PermGroup::trivial(g.degree()));
    }
    if &target == g.order() {
        return Ok(g.clone());
    }
    for o in g.orbits() {
        if o.len() > 1 && !(o.len() as u64).is_multiple_of(p) {
            let x = o[0];
            return sylow_subgroup(&g.stabiliser(x)?, p, budget);
        }
    }
    let support: Vec<usize> = (0..g.degree()).filter(|&x| g.generators().iter().any(|s| s.apply(x) != x)).collect();
    let full = factorial(support.len());
    if g.order() == &full {
        return Ok(symmetric_sylow(g.degree(), &support, p));
    }
    if g.order() * BigUint::from(2u32) == full && p != 2 {
        return Ok(symmetric_sylow(g.degree(), &support, p));
    }
    if g.order() * BigUint::from(2u32) == full {
        let sym = symmetric_sylow(g.degree(), &support, 2);
        let even = index_two_kernel(&sym, is_odd)?;
        return Ok(even);
    }
    grow_sylow(g, p, &target, budget)
}

fn is_odd(x: &Permutation) -> bool {
    x.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 1
}

/// Kernel of a homomorphism to `C_2`, given by a parity function on elements.
pub fn index_two_kernel<F: Fn(&Permutation) -> bool>(g: &PermGroup, parity: F) -> Result<PermGroup> {
    let t = g.generators().iter().find(|x| parity(x)).cloned();
    let Some(t) = t else { return Ok(g.clone()) };
    let t_inv = t.inverse();
    let mut gens = Vec::new();
    for w in g.generators() {
        if parity(w) {
            gens.push(w.mul(&t_inv));
            gens.push(t.mul(w));
        } else {
            gens.push(w.clone());
            gens.push(t.mul(w).mul(&t_inv));
        }
    }
    let order = g.order() / BigUint::from(2u32);
    PermGroup::build(g.degree(), gens, &[], Some(&order))
}

/// Sylow `p`-subgroup of `Sym(support)`: one iterated wreath product per
/// base-`p` digit block.
pub fn symmetric_sylow(degree: usize, support: &[usize], p: u64) -> PermGroup {
    let p = p as usize;
    let mut gens = Vec::new();
    let mut offset = 0;
    let mut n = support.len();
    let mut digits = Vec::new();
    while n > 0 {
        digits.push(n % p);
        n /= p;
    }
    for m in (0..digits.len()).rev() {
        let size = p.pow(m as u32);
        for _ in 0..digits[m] {
            let block = &support[offset..offset + size];
            // s_j increments digit j of the local index when all higher digits vanish
            for j in 0..m {
                let mut images: Vec<u32> = (0..degree as u32).collect();
                let pj = p.pow(j as u32);
                let span = pj * p;
                for local in 0..span {
                    let dj = (local / pj) % p;
                    let target = local - dj * pj + ((dj + 1) % p) * pj;
                    images[block[local]] = block[target] as u32;
                }
                gens.push(Permutation::from_images(images).expect("block permutation"));
            }
            offset += size;
        }
    }
    PermGroup::new(degree, gens).expect("degrees agree")
}

/// Grows a `p`-subgroup one normalising element at a time.
fn grow_sylow(g: &PermGroup, p: u64, target: &BigUint, budget: u64) -> Result<PermGroup> {
    g.check_budget(budget, "Sylow subgroup by enumeration")?;
    let mut gens: Vec<Permutation> = Vec::new();
    let mut cur = PermGroup::trivial(g.degree());
    while cur.order() < target {
        let mut found = None;
        g.for_each_element(budget, |x| {
            if x.is_identity() || cur.contains(x) {
                return ControlFlow::Continue(());
            }
            if cur.contains(&x.pow(p)) && cur.generators().iter().all(|y| cur.contains(&y.conjugate_by(x))) {
                found = Some(x.clone());
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        })?;
        let x = found.ok_or_else(|| Error::Contradiction("no normalising p-element outside a non-Sylow p-subgroup".into()))?;
        gens.push(x);
        cur = PermGroup::new(g.degree(), gens.clone())?;
    }
    Ok(cur)
}

/// Sylow subgroup of a normal subgroup `g` of some group, given a Sylow
/// subgroup `overgroup_sylow` of that group: their intersection.
pub fn sylow_in_normal_subgroup(g: &PermGroup, overgroup_sylow: &PermGroup, budget: u64) -> Result<PermGroup> {
    super::structure::intersection(overgroup_sylow, g, budget)
}

/// Largest elementary abelian `p`-subgroups of a `p`-group table, as subsets.
/// Returns the maximum rank and one witness.
pub fn max_elementary_abelian(table: &GroupTable, top: &Subset, p: u64) -> (u32, Subset) {
    let order_p: Vec<u32> = top.iter().filter(|&x| x != table.identity() && table.pow(x, p) == table.identity()).collect();
    let start = table.closure(&[]);
    let mut best = (0u32, start.clone());
    let mut seen: HashSet<Subset> = HashSet::new();
    // (subgroup, its generators, rank)
    let mut stack = vec![(start, Vec::<u32>::new())];
    while let Some((e, gens)) = stack.pop() {
        let rank = gens.len() as u32;
        if rank > best.0 {
            best = (rank, e.clone());
        }
        // every extension lives in E together with the commuting order-p elements
        let cent: Vec<u32> = order_p.iter().copied().filter(|&x| !e.contains(x) && gens.iter().all(|&g| table.mul(x, g) == table.mul(g, x))).collect();
        if cent.is_empty() {
            continue;
        }
        let cap = (cent.len() + e.len()) as u64;
        let (mut bound, mut q) = (0u32, 1u64);
        while q * p <= cap {
            q *= p;
            bound += 1;
        }
        if bound <= best.0 {
            continue;
        }
        for &x in &cent {
            let mut ng = gens.clone();
            ng.push(x);
            let ne = table.close_from(e.clone(), &ng);
            if seen.insert(ne.clone()) {
                stack.push((ne, ng));
            }
        }
    }
    best
}

/// `p`-rank: rank of a largest elementary abelian `p`-subgroup.
pub fn p_rank(g: &PermGroup, p: u64, budget: u64) -> Result<u32> {
    let s = sylow_subgroup(g, p, budget)?;
    if s.is_trivial() {
        return Ok(0);
    }
    let table = GroupTable::new(&s)?;
    let top = table.whole();
    Ok(max_elementary_abelian(&table, &top, p).0)
}
