//! Cayley tables for small groups, with subgroups as element bitsets.
//!
//! Used for p-group work: Frattini subgroups, maximal subgroups,
//! subgroup descent and elementary abelian subgroup search.

use std::collections::{BTreeSet, HashMap};

use super::PermGroup;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Largest group accepted by [`GroupTable::new`].
pub const TABLE_LIMIT: u64 = 4096;

/// Set of element indices of a [`GroupTable`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    bits: Vec<u64>,
}

impl Subset {
    pub fn empty(n: usize) -> Self {
        Subset { bits: vec![0; n.div_ceil(64)] }
    }
    #[inline]
    pub fn contains(&self, i: u32) -> bool {
        self.bits[(i / 64) as usize] >> (i % 64) & 1 == 1
    }
    #[inline]
    pub fn insert(&mut self, i: u32) -> bool {
        let w = &mut self.bits[(i / 64) as usize];
        let m = 1u64 << (i % 64);
        let fresh = *w & m == 0;
        *w |= m;
        fresh
    }
    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.bits.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros();
                w &= w - 1;
                Some(k as u32 * 64 + t)
            })
        })
    }
    pub fn is_subset(&self, other: &Subset) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }
}

/// Multiplication table of a small permutation group.
pub struct GroupTable {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    identity: u32,
}

impl GroupTable {
    pub fn new(g: &PermGroup) -> Result<Self> {
        let n = g.check_budget(TABLE_LIMIT, "group table")? as usize;
        let elements = g.elements(TABLE_LIMIT)?;
        let index: HashMap<Permutation, u32> = elements.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
        let mut mul = vec![0u32; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                mul[i * n + j] = index[&a.mul(b)];
            }
        }
        let mut inv = vec![0u32; n];
        for (i, a) in elements.iter().enumerate() {
            inv[i] = index[&a.inverse()];
        }
        let identity = index[&Permutation::identity(g.degree())];
        Ok(GroupTable { elements, index, mul, inv, identity })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
    pub fn identity(&self) -> u32 {
        self.identity
    }
    pub fn element(&self, i: u32) -> &Permutation {
        &self.elements[i as usize]
    }
    pub fn index_of(&self, g: &Permutation) -> Option<u32> {
        self.index.get(g).copied()
    }
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.elements.len() + b as usize]
    }
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }
    /// `x⁻¹ a x`.
    pub fn conj(&self, a: u32, x: u32) -> u32 {
        self.mul(self.mul(self.inv(x), a), x)
    }
    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }
    pub fn pow(&self, a: u32, e: u64) -> u32 {
        let mut acc = self.identity;
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }
    pub fn elem_order(&self, a: u32) -> u64 {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn whole(&self) -> Subset {
        let mut s = Subset::empty(self.len());
        for i in 0..self.len() as u32 {
            s.insert(i);
        }
        s
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[u32]) -> Subset {
        let mut s = Subset::empty(self.len());
        s.insert(self.identity);
        self.close_from(s, gens)
    }

    /// Closes a set containing a subgroup under right multiplication by `gens`.
    pub fn close_from(&self, mut s: Subset, gens: &[u32]) -> Subset {
        let mut queue: Vec<u32> = s.iter().collect();
        let mut k = 0;
        while k < queue.len() {
            let x = queue[k];
            for &g in gens {
                let y = self.mul(x, g);
                if s.insert(y) {
                    queue.push(y);
                }
            }
            k += 1;
        }
        s
    }

    /// Normal closure of `elems` inside the subgroup generated by `ambient`.
    pub fn normal_closure(&self, ambient: &[u32], elems: &[u32]) -> Subset {
        let mut gens: Vec<u32> = elems.to_vec();
        let mut s = self.closure(&gens);
        let mut k = 0;
        while k < gens.len() {
            for &a in ambient {
                let c = self.conj(gens[k], a);
                if !s.contains(c) {
                    gens.push(c);
                    s = self.close_from(s, &gens);
                }
            }
            k += 1;
        }
        s
    }

    /// A generating set of a subgroup (greedy, in index order).
    pub fn generators_of(&self, h: &Subset) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut cur = self.closure(&[]);
        for x in h.iter() {
            if !cur.contains(x) {
                gens.push(x);
                cur = self.close_from(cur, &gens);
            }
        }
        gens
    }

    /// Subset as a permutation group.
    pub fn to_group(&self, h: &Subset) -> Result<PermGroup> {
        let degree = self.elements[0].degree();
        let gens: Vec<Permutation> = self.generators_of(h).into_iter().map(|i| self.elements[i as usize].clone()).collect();
        let order = num_bigint::BigUint::from(h.len());
        PermGroup::build(degree, gens, &[], Some(&order))
    }

    /// Subset of the elements of a subgroup given as a permutation group.
    pub fn subset_of(&self, h: &PermGroup) -> Result<Subset> {
        let gens: Vec<u32> = h.generators().iter().map(|g| self.index_of(g).ok_or(Error::NotMember)).collect::<Result<_>>()?;
        Ok(self.closure(&gens))
    }

    pub fn is_abelian(&self, gens: &[u32]) -> bool {
        gens.iter().enumerate().all(|(i, &a)| gens[i + 1..].iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Frattini subgroup of a `p`-subgroup given by generators.
    pub fn frattini(&self, gens: &[u32], p: u64) -> Subset {
        let mut els: Vec<u32> = gens.iter().map(|&g| self.pow(g, p)).collect();
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i + 1..] {
                els.push(self.commutator(a, b));
            }
        }
        self.normal_closure(gens, &els)
    }

    /// Maximal subgroups of a `p`-subgroup `h`, via hyperplanes of `h/Φ(h)`.
    pub fn maximal_subgroups_of_p_group(&self, h: &Subset, p: u64) -> Vec<Subset> {
        let gens = self.generators_of(h);
        let phi = self.frattini(&gens, p);
        let phi_gens = self.generators_of(&phi);
        // Burnside basis
        let mut basis: Vec<u32> = Vec::new();
        let mut cur = phi.clone();
        for &g in &gens {
            if !cur.contains(g) {
                basis.push(g);
                let mut all = phi_gens.clone();
                all.extend(&basis);
                cur = self.close_from(cur, &all);
            }
        }
        let d = basis.len();
        let mut out = Vec::new();
        // functionals with first non-zero coordinate 1
        let total = (p as usize).pow(d as u32);
        for code in 1..total {
            let mut f = vec![0u64; d];
            let mut c = code;
            for fi in f.iter_mut() {
                *fi = (c % p as usize) as u64;
                c /= p as usize;
            }
            let j = f.iter().position(|&x| x != 0).expect("non-zero");
            if f[j] != 1 {
                continue;
            }
            let mut extra: Vec<u32> = phi_gens.clone();
            for i in 0..d {
                if i == j {
                    continue;
                }
                let k = (p - f[i] % p) % p;
                extra.push(self.mul(basis[i], self.pow(basis[j], k)));
            }
            out.push(self.close_from(phi.clone(), &extra));
        }
        out
    }

    /// Permutation of element indices induced by conjugation with `x`.
    pub fn conjugation_map(&self, x: u32) -> Vec<u32> {
        (0..self.len() as u32).map(|a| self.conj(a, x)).collect()
    }

    pub fn map_subset(&self, s: &Subset, map: &[u32]) -> Subset {
        let mut out = Subset::empty(self.len());
        for i in s.iter() {
            out.insert(map[i as usize]);
        }
        out
    }

    /// Representatives (least in `Ord`) of the orbits of `maps` on a set of subsets.
    pub fn orbit_representatives(&self, subsets: BTreeSet<Subset>, maps: &[Vec<u32>]) -> Vec<Subset> {
        let mut remaining = subsets;
        let mut reps = Vec::new();
        while let Some(first) = remaining.iter().next().cloned() {
            remaining.remove(&first);
            let mut queue = vec![first.clone()];
            while let Some(s) = queue.pop() {
                for m in maps {
                    let t = self.map_subset(&s, m);
                    if remaining.remove(&t) {
                        queue.push(t);
                    }
                }
            }
            reps.push(first);
        }
        reps
    }

    /// Subgroups of order `target` of the `p`-group `top`, up to conjugacy under `conj_by`.
    pub fn p_subgroups_of_order(&self, top: &Subset, p: u64, target: usize, conj_by: &[u32]) -> Vec<Subset> {
        let maps: Vec<Vec<u32>> = conj_by.iter().map(|&x| self.conjugation_map(x)).collect();
        let mut level = vec![top.clone()];
        while level.first().is_some_and(|s| s.len() > target) {
            let mut next = BTreeSet::new();
            for h in &level {
                for m in self.maximal_subgroups_of_p_group(h, p) {
                    next.insert(m);
                }
            }
            level = self.orbit_representatives(next, &maps);
        }
        level.into_iter().filter(|s| s.len() == target).collect()
    }
}
