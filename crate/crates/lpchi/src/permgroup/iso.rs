//! Permutation isomorphism of small groups by constrained backtracking.

use super::PermGroup;
use crate::perm::Permutation;

/// Enumeration cap for the target group in [`permutation_isomorphic`].
const ISO_ENUM_LIMIT: u64 = 200_000;

fn signature(g: &PermGroup) -> Vec<(usize, u64)> {
    let n = g.degree();
    let orbits = g.orbits();
    let mut orbit_len = vec![0; n];
    for o in &orbits {
        for &x in o {
            orbit_len[x] = o.len();
        }
    }
    let order = g.order_u64().unwrap_or(u64::MAX);
    (0..n).map(|x| (orbit_len[x], order / orbit_len[x] as u64)).collect()
}

/// A bijection `β` (as `β[x]`) such that conjugating `A` by `β` gives `B`,
/// i.e. `x ↦ β(a(β⁻¹(x)))` lies in `B` for every `a ∈ A`, or `None`.
///
/// Points are assigned in the order (orbit size, stabiliser order, index),
/// followed along generator edges; each generator of `A` keeps the list of
/// elements of `B` still consistent with the partial map.
pub fn permutation_isomorphic(a: &PermGroup, b: &PermGroup) -> Option<Vec<usize>> {
    let n = a.degree();
    if b.degree() != n || a.order() != b.order() {
        return None;
    }
    let sig_a = signature(a);
    let sig_b = signature(b);
    let mut sa = sig_a.clone();
    let mut sb = sig_b.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }
    let b_elems = b.elements(ISO_ENUM_LIMIT).ok()?;
    let gens: Vec<Permutation> = a.generators().to_vec();

    // assignment order: seed by signature, then close along generators
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let mut seeds: Vec<usize> = (0..n).collect();
    seeds.sort_by_key(|&x| (sig_a[x], x));
    for &s in &seeds {
        if placed[s] {
            continue;
        }
        placed[s] = true;
        order.push(s);
        let mut k = order.len() - 1;
        while k < order.len() {
            let x = order[k];
            for g in gens.iter().chain(gens.iter()) {
                let y = g.apply(x);
                if !placed[y] {
                    placed[y] = true;
                    order.push(y);
                }
            }
            k += 1;
        }
    }

    let mut beta = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let filters: Vec<Vec<usize>> = gens.iter().map(|_| (0..b_elems.len()).collect()).collect();
    let mut search = Search { a_gens: &gens, b_elems: &b_elems, b, sig_a: &sig_a, sig_b: &sig_b, order: &order };
    if search.rec(0, &mut beta, &mut used, filters) {
        Some(beta)
    } else {
        None
    }
}

struct Search<'a> {
    a_gens: &'a [Permutation],
    b_elems: &'a [Permutation],
    b: &'a PermGroup,
    sig_a: &'a [(usize, u64)],
    sig_b: &'a [(usize, u64)],
    order: &'a [usize],
}

impl Search<'_> {
    fn rec(&mut self, depth: usize, beta: &mut Vec<usize>, used: &mut Vec<bool>, filters: Vec<Vec<usize>>) -> bool {
        let n = beta.len();
        if depth == n {
            return self.verify(beta);
        }
        let x = self.order[depth];
        // candidate images forced by an assigned preimage under some generator
        let mut candidates: Option<Vec<usize>> = None;
        for (gi, g) in self.a_gens.iter().enumerate() {
            let pre = g.inverse().apply(x);
            if beta[pre] != usize::MAX {
                let mut c: Vec<usize> = filters[gi].iter().map(|&bi| self.b_elems[bi].apply(beta[pre])).collect();
                c.sort_unstable();
                c.dedup();
                candidates = Some(match candidates {
                    None => c,
                    Some(prev) => prev.into_iter().filter(|y| c.binary_search(y).is_ok()).collect(),
                });
            }
        }
        let candidates = candidates.unwrap_or_else(|| (0..n).collect());
        for y in candidates {
            if used[y] || self.sig_b[y] != self.sig_a[x] {
                continue;
            }
            beta[x] = y;
            used[y] = true;
            let mut next = Vec::with_capacity(filters.len());
            let mut ok = true;
            for (gi, g) in self.a_gens.iter().enumerate() {
                let f: Vec<usize> = filters[gi].iter().copied().filter(|&bi| self.consistent(&self.b_elems[bi], g, beta, used)).collect();
                if f.is_empty() {
                    ok = false;
                    break;
                }
                next.push(f);
            }
            if ok && self.rec(depth + 1, beta, used, next) {
                return true;
            }
            beta[x] = usize::MAX;
            used[y] = false;
        }
        false
    }

    /// `bel` agrees with `β⁻¹ g β` on the assigned points.
    fn consistent(&self, bel: &Permutation, g: &Permutation, beta: &[usize], used: &[bool]) -> bool {
        for (x, &bx) in beta.iter().enumerate() {
            if bx == usize::MAX {
                continue;
            }
            let gx = g.apply(x);
            let img = bel.apply(bx);
            if beta[gx] != usize::MAX {
                if beta[gx] != img {
                    return false;
                }
            } else if used[img] {
                return false;
            }
        }
        true
    }

    fn verify(&self, beta: &[usize]) -> bool {
        let n = beta.len();
        let mut inv = vec![0usize; n];
        for (x, &y) in beta.iter().enumerate() {
            inv[y] = x;
        }
        self.a_gens.iter().all(|g| {
            let imgs: Vec<u32> = (0..n).map(|x| beta[g.apply(inv[x])] as u32).collect();
            Permutation::from_images(imgs).map(|c| self.b.contains(&c)).unwrap_or(false)
        })
    }
}

/// Applies a point bijection: `x ↦ β(g(β⁻¹(x)))`.
pub fn conjugate_by_bijection(g: &Permutation, beta: &[usize]) -> Permutation {
    let n = beta.len();
    let mut inv = vec![0usize; n];
    for (x, &y) in beta.iter().enumerate() {
        inv[y] = x;
    }
    let imgs: Vec<u32> = (0..n).map(|x| beta[g.apply(inv[x])] as u32).collect();
    Permutation::from_images(imgs).expect("bijection")
}
