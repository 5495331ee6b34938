//! Independent brute-force oracles on raw image vectors.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use lpchi::graphcore::Graph;
use lpchi::{PermGroup, Permutation};

pub type Elem = Vec<u32>;

pub fn images(g: &Permutation) -> Elem {
    g.images().to_vec()
}

/// `a` then `b`.
pub fn compose(a: &[u32], b: &[u32]) -> Elem {
    a.iter().map(|&x| b[x as usize]).collect()
}

pub fn invert(a: &[u32]) -> Elem {
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x as usize] = i as u32;
    }
    out
}

pub fn identity(n: usize) -> Elem {
    (0..n as u32).collect()
}

/// All elements generated by `gens`, by breadth-first closure.
pub fn closure(degree: usize, gens: &[Elem]) -> HashSet<Elem> {
    let mut seen = HashSet::from([identity(degree)]);
    let mut queue = VecDeque::from([identity(degree)]);
    while let Some(x) = queue.pop_front() {
        for s in gens {
            let y = compose(&x, s);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

pub fn elements(g: &PermGroup) -> HashSet<Elem> {
    closure(g.degree(), &g.generators().iter().map(images).collect::<Vec<_>>())
}

pub fn to_perm(e: &[u32]) -> Permutation {
    Permutation::from_images(e.to_vec()).unwrap()
}

pub fn sorted(set: &HashSet<Elem>) -> BTreeSet<Elem> {
    set.iter().cloned().collect()
}

/// Conjugacy class of `x` in the element set `elems`.
pub fn class_of(elems: &HashSet<Elem>, x: &[u32]) -> HashSet<Elem> {
    elems.iter().map(|g| compose(&compose(&invert(g), x), g)).collect()
}

/// Smallest normal subgroup of the group `elems` containing `x`.
pub fn normal_closure_set(elems: &HashSet<Elem>, x: &[u32]) -> HashSet<Elem> {
    closure(x.len(), &class_of(elems, x).into_iter().collect::<Vec<_>>())
}

/// Minimal normal subgroups as element sets: the inclusion-minimal normal
/// closures of single non-identity elements.
pub fn minimal_normal_sets(g: &PermGroup) -> BTreeSet<BTreeSet<Elem>> {
    let elems = elements(g);
    let id = identity(g.degree());
    let mut closures: Vec<HashSet<Elem>> = Vec::new();
    let mut covered: HashSet<Elem> = HashSet::new();
    let mut order: Vec<&Elem> = elems.iter().collect();
    order.sort();
    for x in order {
        if *x == id || covered.contains(x) {
            continue;
        }
        let class = class_of(&elems, x);
        let n = closure(g.degree(), &class.iter().cloned().collect::<Vec<_>>());
        covered.extend(class);
        if !closures.iter().any(|c| c == &n) {
            closures.push(n);
        }
    }
    closures.iter().filter(|n| !closures.iter().any(|m| m.len() < n.len() && m.is_subset(n))).map(sorted).collect()
}

/// Every bijection of `0..n` in lexicographic order.
pub fn all_bijections(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let n = used.len();
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                go(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// `β⁻¹ x β` on images: point `β(i)` goes to `β(x(i))`.
pub fn relabel(x: &[u32], beta: &[usize]) -> Elem {
    let mut out = vec![0; x.len()];
    for (i, &y) in x.iter().enumerate() {
        out[beta[i]] = beta[y as usize] as u32;
    }
    out
}

/// Exhaustive search for `β` with `β⁻¹ A β = B`.
pub fn brute_permutation_isomorphic(a: &PermGroup, b: &PermGroup) -> bool {
    if a.degree() != b.degree() || a.order() != b.order() {
        return false;
    }
    let b_elems = elements(b);
    let a_gens: Vec<Elem> = a.generators().iter().map(images).collect();
    all_bijections(a.degree()).iter().any(|beta| a_gens.iter().all(|x| b_elems.contains(&relabel(x, beta))))
}

pub fn is_automorphism(g: &Graph, beta: &[usize]) -> bool {
    g.edges().iter().all(|&(u, v)| g.is_adjacent(beta[u], beta[v]))
}

/// `|Aut(Γ)|` by testing every bijection.
pub fn brute_automorphism_count(g: &Graph) -> usize {
    all_bijections(g.vertex_count()).iter().filter(|b| is_automorphism(g, b)).count()
}

/// Largest rank of an elementary abelian `p`-subgroup, by growing every
/// such subgroup one commuting order-`p` element at a time.
pub fn brute_p_rank(g: &PermGroup, p: u64) -> u32 {
    let elems = elements(g);
    let id = identity(g.degree());
    let power = |x: &Elem, k: u64| (0..k).fold(id.clone(), |acc, _| compose(&acc, x));
    let order_p: Vec<Elem> = elems.iter().filter(|x| **x != id && power(x, p) == id).cloned().collect();
    let mut level: BTreeSet<BTreeSet<Elem>> = BTreeSet::from([BTreeSet::from([id.clone()])]);
    let mut rank = 0;
    loop {
        let mut next = BTreeSet::new();
        for span in &level {
            for x in order_p.iter().filter(|x| !span.contains(*x)) {
                if span.iter().all(|y| compose(x, y) == compose(y, x)) {
                    let grown: BTreeSet<Elem> = (0..p)
                        .flat_map(|k| {
                            let xk = power(x, k);
                            span.iter().map(move |y| compose(y, &xk))
                        })
                        .collect();
                    next.insert(grown);
                }
            }
        }
        if next.is_empty() {
            return rank;
        }
        rank += 1;
        level = next;
    }
}
