//! Permutation groups backed by a stabiliser chain.

pub mod action;
pub mod blocks;
pub(crate) mod chain;
pub mod iso;
pub mod pgroup;
pub mod structure;
pub mod table;

use std::collections::VecDeque;
use std::ops::ControlFlow;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use chain::Chain;

pub use blocks::{block_systems, BlockSystem};
pub use iso::permutation_isomorphic;

/// A permutation group with a base and strong generating set.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Permutation>,
    chain: Arc<Chain>,
    start: usize,
    order: BigUint,
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PermGroup(degree {}, order {}, gens [", self.degree, self.order)?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "])")
    }
}

impl PermGroup {
    /// Schreier–Sims on the given generators (identity generators are dropped).
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        Self::build(degree, gens, &[], None)
    }

    /// Like [`PermGroup::new`], with a forced base prefix and an optional known order
    /// used to stop the Schreier–Sims completion early.
    pub fn build(degree: usize, gens: Vec<Permutation>, prefix: &[usize], known_order: Option<&BigUint>) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { left: degree, right: g.degree() });
            }
        }
        for &x in prefix {
            if x >= degree {
                return Err(Error::PointOutOfRange { point: x, degree });
            }
        }
        let gens: Vec<Permutation> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        let chain = Chain::build(degree, &gens, prefix, known_order);
        let order = chain.order_from(0);
        Ok(PermGroup { degree, gens, chain: Arc::new(chain), start: 0, order })
    }

    /// Generated group of a non-empty list of equal-degree permutations.
    pub fn from_generators(gens: Vec<Permutation>) -> Result<Self> {
        let degree = gens.first().map(|g| g.degree()).ok_or_else(|| Error::InvalidParams("empty generator list".into()))?;
        Self::new(degree, gens)
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// Order as `u64` when it fits.
    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    pub(crate) fn levels(&self) -> &[chain::Level] {
        &self.chain.levels[self.start..]
    }

    /// Base points of the chain (including redundant prefix points).
    pub fn base(&self) -> Vec<usize> {
        self.levels().iter().map(|l| l.base as usize).collect()
    }

    /// Basic orbit lengths along the chain.
    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels().iter().map(|l| l.orbit.len()).collect()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains_from(g, self.start)
    }

    /// All elements of `other` lie in `self`.
    pub fn contains_group(&self, other: &PermGroup) -> bool {
        other.degree == self.degree && other.gens.iter().all(|g| self.contains(g))
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order == other.order && self.contains_group(other)
    }

    /// Subgroup generated by elements of `self`.
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<PermGroup> {
        if gens.iter().any(|g| !self.contains(g)) {
            return Err(Error::NotMember);
        }
        PermGroup::new(self.degree, gens)
    }

    /// Same group with its chain rebuilt on a base starting with `prefix`.
    pub fn rebase(&self, prefix: &[usize]) -> Result<PermGroup> {
        PermGroup::build(self.degree, self.gens.clone(), prefix, Some(&self.order))
    }

    pub fn orbit(&self, x: usize) -> Result<Vec<usize>> {
        if x >= self.degree {
            return Err(Error::PointOutOfRange { point: x, degree: self.degree });
        }
        Ok(orbit_under(&self.gens, self.degree, x))
    }

    /// Orbits sorted by least element; each orbit sorted.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_under(&self.gens, self.degree)
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || orbit_under(&self.gens, self.degree, 0).len() == self.degree
    }

    /// `G_x`, sharing the chain when `x` is the first base point.
    pub fn stabiliser(&self, x: usize) -> Result<PermGroup> {
        self.pointwise_stabiliser(&[x])
    }

    /// Pointwise stabiliser of a point list.
    pub fn pointwise_stabiliser(&self, pts: &[usize]) -> Result<PermGroup> {
        for &x in pts {
            if x >= self.degree {
                return Err(Error::PointOutOfRange { point: x, degree: self.degree });
            }
        }
        let mut distinct: Vec<usize> = Vec::new();
        for &x in pts {
            if !distinct.contains(&x) {
                distinct.push(x);
            }
        }
        let base = self.base();
        let shares = distinct.len() <= base.len() && distinct.iter().zip(&base).all(|(a, b)| a == b);
        let (chain, start) = if shares {
            (self.chain.clone(), self.start + distinct.len())
        } else {
            let c = Chain::build(self.degree, &self.gens, &distinct, Some(&self.order));
            (Arc::new(c), distinct.len())
        };
        Ok(PermGroup::from_chain(self.degree, chain, start))
    }

    fn from_chain(degree: usize, chain: Arc<Chain>, start: usize) -> PermGroup {
        let start = start.min(chain.levels.len());
        let gens = if start < chain.levels.len() { chain.levels[start].gens.clone() } else { Vec::new() };
        let order = chain.order_from(start);
        PermGroup { degree, gens, chain, start, order }
    }

    /// Strong generators: the union of the generator lists along the chain.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for l in self.levels() {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    pub(crate) fn check_budget(&self, budget: u64, op: &str) -> Result<u64> {
        match self.order.to_u64() {
            Some(o) if o <= budget => Ok(o),
            _ => Err(Error::budget(op, &self.order, budget)),
        }
    }

    /// Visits every element (order fixed by the chain); fails if `|G|` exceeds `budget`.
    pub fn for_each_element<F>(&self, budget: u64, mut f: F) -> Result<()>
    where
        F: FnMut(&Permutation) -> ControlFlow<()>,
    {
        self.check_budget(budget, "element enumeration")?;
        let reps: Vec<Vec<Permutation>> = self.levels().iter().map(|l| l.explicit_reps()).collect();
        let id = Permutation::identity(self.degree);
        if reps.is_empty() {
            let _ = f(&id);
            return Ok(());
        }
        fn rec<F: FnMut(&Permutation) -> ControlFlow<()>>(reps: &[Vec<Permutation>], acc: &Permutation, f: &mut F) -> ControlFlow<()> {
            let (last, rest) = reps.split_last().expect("non-empty");
            for u in last {
                let next = acc.mul(u);
                if rest.is_empty() {
                    f(&next)?;
                } else {
                    rec(rest, &next, f)?;
                }
            }
            ControlFlow::Continue(())
        }
        let _ = rec(&reps, &id, &mut f);
        Ok(())
    }

    /// All elements, in chain order (index `i` corresponds to [`PermGroup::element_index`]).
    pub fn elements(&self, budget: u64) -> Result<Vec<Permutation>> {
        let mut out = Vec::new();
        self.for_each_element(budget, |g| {
            out.push(g.clone());
            ControlFlow::Continue(())
        })?;
        Ok(out)
    }

    /// Mixed-radix index of `g` in the enumeration order, or `None` if `g ∉ G`.
    pub fn element_index(&self, g: &Permutation) -> Option<u64> {
        if g.degree() != self.degree {
            return None;
        }
        let mut h = g.clone();
        let mut idx: u64 = 0;
        let mut radix: u64 = 1;
        for l in self.levels() {
            let x = h.apply(l.base as usize);
            let pos = l.position(x)?;
            idx += pos as u64 * radix;
            radix = radix.checked_mul(l.orbit.len() as u64)?;
            h = h.mul(&l.rep_inv(x));
        }
        h.is_identity().then_some(idx)
    }

    /// Conjugate subgroup `G^x`.
    pub fn conjugate(&self, x: &Permutation) -> PermGroup {
        let gens: Vec<Permutation> = self.gens.iter().map(|g| g.conjugate_by(x)).collect();
        PermGroup::build(self.degree, gens, &[], Some(&self.order)).expect("degrees agree")
    }

    pub fn is_abelian(&self) -> bool {
        self.gens.iter().enumerate().all(|(i, a)| self.gens[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// Every point stabiliser is trivial.
    pub fn is_semiregular(&self) -> bool {
        let ord = &self.order;
        self.orbits().iter().all(|o| &BigUint::from(o.len()) == ord)
    }

    /// Abelian, and every generator has order 1 or `p`.
    pub fn is_elementary_abelian(&self, p: u64) -> bool {
        self.is_abelian() && self.gens.iter().all(|g| g.pow(p).is_identity())
    }

    /// `|G|` is a power of `p` (trivial group included).
    pub fn is_p_group(&self, p: u64) -> bool {
        let mut o = self.order.clone();
        let bp = BigUint::from(p);
        while o > BigUint::one() {
            if (&o % &bp) != BigUint::from(0u32) {
                return false;
            }
            o /= &bp;
        }
        true
    }

    /// Restriction to an invariant set of points, relabelled in the given order.
    pub fn restrict_to(&self, points: &[usize]) -> Result<PermGroup> {
        let mut index = vec![usize::MAX; self.degree];
        for (i, &x) in points.iter().enumerate() {
            index[x] = i;
        }
        let mut gens = Vec::new();
        for g in &self.gens {
            let mut img = Vec::with_capacity(points.len());
            for &x in points {
                let y = index[g.apply(x)];
                if y == usize::MAX {
                    return Err(Error::Precondition("point set is not invariant".into()));
                }
                img.push(y as u32);
            }
            gens.push(Permutation::from_images(img)?);
        }
        PermGroup::new(points.len(), gens)
    }
}

/// Orbit of `x` under `gens`, sorted.
pub fn orbit_under(gens: &[Permutation], degree: usize, x: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    seen[x] = true;
    let mut queue = VecDeque::from([x]);
    let mut out = vec![x];
    while let Some(y) = queue.pop_front() {
        for g in gens {
            let z = g.apply(y);
            if !seen[z] {
                seen[z] = true;
                out.push(z);
                queue.push_back(z);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Orbits of `gens` sorted by least element.
pub fn orbits_under(gens: &[Permutation], degree: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for x in 0..degree {
        if !seen[x] {
            let o = orbit_under(gens, degree, x);
            for &y in &o {
                seen[y] = true;
            }
            out.push(o);
        }
    }
    out
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> PermGroup {
        let a = Permutation::from_cycles(n, &[&(0..n).collect::<Vec<_>>()]).unwrap();
        let b = Permutation::from_cycles(n, &[&[0, 1]]).unwrap();
        PermGroup::new(n, vec![a, b]).unwrap()
    }

    #[test]
    fn symmetric_orders() {
        for n in 2..=8 {
            assert_eq!(sym(n).order(), &factorial(n));
        }
    }

    #[test]
    fn stabiliser_shares_and_rebuilds() {
        let g = sym(5);
        let s0 = g.stabiliser(0).unwrap();
        assert_eq!(s0.order_u64(), Some(24));
        let s3 = g.stabiliser(3).unwrap();
        assert_eq!(s3.order_u64(), Some(24));
        assert!(s3.generators().iter().all(|h| h.apply(3) == 3));
        let s = g.pointwise_stabiliser(&[4, 2]).unwrap();
        assert_eq!(s.order_u64(), Some(6));
    }

    #[test]
    fn element_index_matches_enumeration() {
        let g = sym(4);
        let els = g.elements(1000).unwrap();
        assert_eq!(els.len(), 24);
        for (i, e) in els.iter().enumerate() {
            assert_eq!(g.element_index(e), Some(i as u64));
        }
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(sym(6).elements(100), Err(Error::Budget { .. })));
    }

    #[test]
    fn known_order_stops_early_and_stays_correct() {
        let g = sym(7);
        let h = PermGroup::build(7, g.generators().to_vec(), &[], Some(&factorial(7))).unwrap();
        assert_eq!(h.order(), &factorial(7));
        let odd = Permutation::from_cycles(7, &[&[0, 1]]).unwrap();
        assert!(h.contains(&odd));
    }
}
