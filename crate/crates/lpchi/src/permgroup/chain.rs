//! Deterministic Schreier–Sims with Schreier-tree transversals.

use num_bigint::BigUint;
use num_traits::One;

use crate::perm::Permutation;

const NONE: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;
/// Explicit transversals are kept while `degree * orbit_len` stays below this.
const EXPLICIT_LIMIT: usize = 1 << 21;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base: u32,
    pub gens: Vec<Permutation>,
    pub inv_gens: Vec<Permutation>,
    pub orbit: Vec<u32>,
    /// Per point: `NONE`, `ROOT`, or the index `j` of the generator with `x = parent^{gens[j]}`.
    label: Vec<u32>,
    /// Per point: position in `orbit` or `NONE`.
    pos: Vec<u32>,
    /// Explicit `(u_x, u_x⁻¹)` aligned with `orbit`, while small enough.
    explicit: Option<(Vec<Permutation>, Vec<Permutation>)>,
    /// Number of generators already checked for each orbit position.
    checked: Vec<u32>,
}

impl Level {
    fn new(degree: usize, base: usize) -> Self {
        let mut label = vec![NONE; degree];
        let mut pos = vec![NONE; degree];
        label[base] = ROOT;
        pos[base] = 0;
        Level {
            base: base as u32,
            gens: Vec::new(),
            inv_gens: Vec::new(),
            orbit: vec![base as u32],
            label,
            pos,
            explicit: Some((vec![Permutation::identity(degree)], vec![Permutation::identity(degree)])),
            checked: vec![0],
        }
    }

    fn degree(&self) -> usize {
        self.label.len()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.pos[x] != NONE
    }

    #[inline]
    pub fn position(&self, x: usize) -> Option<usize> {
        let p = self.pos[x];
        (p != NONE).then_some(p as usize)
    }

    fn push_gen(&mut self, g: Permutation) {
        self.inv_gens.push(g.inverse());
        self.gens.push(g);
        self.extend_orbit();
    }

    fn extend_orbit(&mut self) {
        let n = self.degree();
        let mut idx = 0;
        while idx < self.orbit.len() {
            let x = self.orbit[idx] as usize;
            for j in 0..self.gens.len() {
                let y = self.gens[j].apply(x);
                if self.pos[y] == NONE {
                    self.label[y] = j as u32;
                    self.pos[y] = self.orbit.len() as u32;
                    self.orbit.push(y as u32);
                    self.checked.push(0);
                    if n * self.orbit.len() > EXPLICIT_LIMIT {
                        self.explicit = None;
                    }
                    if let Some((reps, invs)) = self.explicit.as_mut() {
                        let r = reps[idx].mul(&self.gens[j]);
                        let ri = self.inv_gens[j].mul(&invs[idx]);
                        reps.push(r);
                        invs.push(ri);
                    }
                }
            }
            idx += 1;
        }
    }

    /// `u_x` with `base^{u_x} = x`.
    pub fn rep(&self, x: usize) -> Permutation {
        if let Some((reps, _)) = &self.explicit {
            return reps[self.pos[x] as usize].clone();
        }
        self.rep_inv(x).inverse()
    }

    /// `u_x⁻¹`.
    pub fn rep_inv(&self, x: usize) -> Permutation {
        if let Some((_, invs)) = &self.explicit {
            return invs[self.pos[x] as usize].clone();
        }
        let mut acc = Permutation::identity(self.degree());
        let mut y = x;
        while self.label[y] != ROOT {
            let j = self.label[y] as usize;
            acc = acc.mul(&self.inv_gens[j]);
            y = self.inv_gens[j].apply(y);
        }
        acc
    }

    /// `g · u_x⁻¹`, where `x = base^g`.
    fn strip(&self, g: &Permutation, x: usize) -> Permutation {
        if let Some((_, invs)) = &self.explicit {
            return g.mul(&invs[self.pos[x] as usize]);
        }
        let mut acc = g.clone();
        let mut y = x;
        while self.label[y] != ROOT {
            let j = self.label[y] as usize;
            acc = acc.mul(&self.inv_gens[j]);
            y = self.inv_gens[j].apply(y);
        }
        acc
    }

    pub fn explicit_reps(&self) -> Vec<Permutation> {
        match &self.explicit {
            Some((reps, _)) => reps.clone(),
            None => self.orbit.iter().map(|&x| self.rep(x as usize)).collect(),
        }
    }
}

/// A base and strong generating set with transversals.
#[derive(Clone, Debug)]
pub(crate) struct Chain {
    pub degree: usize,
    pub levels: Vec<Level>,
}

impl Chain {
    /// Runs Schreier–Sims. `prefix` forces the first base points; `known_order`
    /// permits stopping once the orbit-length product reaches it.
    pub fn build(degree: usize, gens: &[Permutation], prefix: &[usize], known_order: Option<&BigUint>) -> Chain {
        let mut b = Builder { chain: Chain { degree, levels: Vec::new() }, target: known_order.cloned() };
        for &x in prefix {
            if !b.chain.levels.iter().any(|l| l.base as usize == x) {
                b.chain.levels.push(Level::new(degree, x));
            }
        }
        for g in gens {
            b.add_generator(g.clone());
        }
        b.complete();
        b.chain
    }

    /// Adds generators to an already complete chain and completes it again.
    pub fn extend(&mut self, gens: &[Permutation]) {
        let chain = std::mem::replace(self, Chain { degree: self.degree, levels: Vec::new() });
        let mut b = Builder { chain, target: None };
        for g in gens {
            if !b.chain.contains_from(g, 0) {
                b.add_generator(g.clone());
            }
        }
        b.complete();
        *self = b.chain;
    }

    pub fn order_from(&self, start: usize) -> BigUint {
        let mut o = BigUint::one();
        for l in &self.levels[start..] {
            o *= BigUint::from(l.orbit.len());
        }
        o
    }

    /// Sifts `g` from level `start`; returns the residue and the level where it stopped.
    pub fn sift(&self, g: &Permutation, start: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let x = h.apply(level.base as usize);
            if !level.contains(x) {
                return (h, i);
            }
            h = level.strip(&h, x);
        }
        (h, self.levels.len())
    }

    pub fn contains_from(&self, g: &Permutation, start: usize) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, i) = self.sift(g, start);
        i == self.levels.len() && h.is_identity()
    }
}

struct Builder {
    chain: Chain,
    target: Option<BigUint>,
}

impl Builder {
    fn reached_target(&self) -> bool {
        match &self.target {
            Some(t) => &self.chain.order_from(0) == t,
            None => false,
        }
    }

    fn new_base_point(&mut self, h: &Permutation) {
        let used: Vec<usize> = self.chain.levels.iter().map(|l| l.base as usize).collect();
        let x = h.support().find(|x| !used.contains(x)).expect("non-identity residue moves a new point");
        self.chain.levels.push(Level::new(self.chain.degree, x));
    }

    /// Adds `h` to every level whose prefix it fixes, creating a level if needed.
    /// Returns the deepest level touched.
    fn insert(&mut self, h: Permutation, from: usize) -> usize {
        let mut depth = from;
        while depth < self.chain.levels.len() && h.apply(self.chain.levels[depth].base as usize) == self.chain.levels[depth].base as usize {
            depth += 1;
        }
        if depth == self.chain.levels.len() {
            self.new_base_point(&h);
        }
        for l in from..=depth {
            self.chain.levels[l].push_gen(h.clone());
        }
        depth
    }

    fn add_generator(&mut self, g: Permutation) {
        if g.is_identity() {
            return;
        }
        if self.chain.levels.is_empty() {
            self.new_base_point(&g);
        }
        self.insert(g, 0);
    }

    fn complete(&mut self) {
        if self.chain.levels.is_empty() {
            return;
        }
        let mut i = self.chain.levels.len() - 1;
        loop {
            if self.reached_target() {
                return;
            }
            match self.next_failure(i) {
                Some((h, _)) => {
                    let depth = self.insert(h, i + 1);
                    i = depth;
                }
                None => {
                    if i == 0 {
                        return;
                    }
                    i -= 1;
                }
            }
        }
    }

    /// Checks unchecked Schreier generators at level `i`; returns the first non-trivial residue.
    fn next_failure(&mut self, i: usize) -> Option<(Permutation, usize)> {
        let mut k = 0;
        while k < self.chain.levels[i].orbit.len() {
            loop {
                let level = &self.chain.levels[i];
                let s = level.checked[k] as usize;
                if s >= level.gens.len() {
                    break;
                }
                let beta = level.orbit[k] as usize;
                let y = level.gens[s].apply(beta);
                // u_y = u_beta · s exactly when y was labelled through this edge.
                let tree_edge = level.label[y] == s as u32;
                self.chain.levels[i].checked[k] += 1;
                if tree_edge {
                    continue;
                }
                let level = &self.chain.levels[i];
                let h = level.rep(beta).mul(&level.gens[s]);
                let h = level.strip(&h, y);
                if h.is_identity() {
                    continue;
                }
                let (r, stop) = self.chain.sift(&h, i + 1);
                if !(stop == self.chain.levels.len() && r.is_identity()) {
                    return Some((r, stop));
                }
            }
            k += 1;
        }
        None
    }
}
