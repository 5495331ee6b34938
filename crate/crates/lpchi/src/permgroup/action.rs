//! Groups acting on a second point set through an arbitrary action.
//!
//! Many graphs here have far more vertices than the degree of the group
//! acting on them. The group keeps its small faithful representation and
//! vertex images are computed by an [`Action`].

use std::collections::VecDeque;

use num_bigint::BigUint;

use super::chain::Chain;
use super::PermGroup;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A right action of permutations of one degree on `{0, …, degree()-1}`.
pub trait Action: Sync {
    fn degree(&self) -> usize;
    fn image(&self, g: &Permutation, x: usize) -> usize;
    /// The action is the group's own action on its points.
    fn is_natural(&self) -> bool {
        false
    }
}

/// The natural action on points.
#[derive(Debug, Clone, Copy)]
pub struct Natural(pub usize);

impl Action for Natural {
    fn degree(&self) -> usize {
        self.0
    }
    fn image(&self, g: &Permutation, x: usize) -> usize {
        g.apply(x)
    }
    fn is_natural(&self) -> bool {
        true
    }
}

/// An action given by a closure.
pub struct FnAction<F: Fn(&Permutation, usize) -> usize + Sync> {
    pub degree: usize,
    pub f: F,
}

impl<F: Fn(&Permutation, usize) -> usize + Sync> Action for FnAction<F> {
    fn degree(&self) -> usize {
        self.degree
    }
    fn image(&self, g: &Permutation, x: usize) -> usize {
        (self.f)(g, x)
    }
}

/// Images of the generators as permutations of the acted-on set.
pub fn induced_permutations(gens: &[Permutation], action: &dyn Action) -> Result<Vec<Permutation>> {
    gens.iter().map(|g| induced_permutation(g, action)).collect()
}

pub fn induced_permutation(g: &Permutation, action: &dyn Action) -> Result<Permutation> {
    let imgs: Vec<u32> = (0..action.degree()).map(|x| action.image(g, x) as u32).collect();
    Permutation::from_images(imgs)
}

/// Orbit of `x` with a transversal: `reps[i]` maps `x` to `orbit[i]` in the action.
pub fn orbit_transversal(group: &PermGroup, action: &dyn Action, x: usize) -> (Vec<usize>, Vec<Permutation>) {
    let n = action.degree();
    let mut pos = vec![u32::MAX; n];
    pos[x] = 0;
    let mut orbit = vec![x];
    let mut reps = vec![Permutation::identity(group.degree())];
    let mut idx = 0;
    while idx < orbit.len() {
        let y = orbit[idx];
        for s in group.generators() {
            let z = action.image(s, y);
            if pos[z] == u32::MAX {
                pos[z] = orbit.len() as u32;
                orbit.push(z);
                reps.push(reps[idx].mul(s));
            }
        }
        idx += 1;
    }
    (orbit, reps)
}

/// Orbit of `x` in the action, in BFS order.
pub fn orbit_in_action(group: &PermGroup, action: &dyn Action, x: usize) -> Vec<usize> {
    let n = action.degree();
    let mut seen = vec![false; n];
    seen[x] = true;
    let mut out = vec![x];
    let mut queue = VecDeque::from([x]);
    while let Some(y) = queue.pop_front() {
        for s in group.generators() {
            let z = action.image(s, y);
            if !seen[z] {
                seen[z] = true;
                out.push(z);
                queue.push_back(z);
            }
        }
    }
    out
}

/// Stabiliser of `x` in the action, as a subgroup of `group` in its own representation.
///
/// Schreier generators are sifted into an incremental chain until the
/// orbit-stabiliser order `|G| / |x^G|` is reached.
pub fn stabiliser_in_action(group: &PermGroup, action: &dyn Action, x: usize) -> Result<PermGroup> {
    if x >= action.degree() {
        return Err(Error::PointOutOfRange { point: x, degree: action.degree() });
    }
    if action.is_natural() {
        return group.stabiliser(x);
    }
    let n = action.degree();
    let (orbit, reps) = orbit_transversal(group, action, x);
    let target = group.order() / BigUint::from(orbit.len());
    let mut pos = vec![u32::MAX; n];
    for (i, &y) in orbit.iter().enumerate() {
        pos[y] = i as u32;
    }
    let deg = group.degree();
    let mut chain = Chain::build(deg, &[], &[], None);
    let mut gens: Vec<Permutation> = Vec::new();
    if chain.order_from(0) == target {
        return PermGroup::build(deg, gens, &[], Some(&target));
    }
    let inv_reps: Vec<Permutation> = reps.iter().map(|r| r.inverse()).collect();
    'outer: for (i, &y) in orbit.iter().enumerate() {
        for s in group.generators() {
            let z = action.image(s, y);
            let h = reps[i].mul(s).mul(&inv_reps[pos[z] as usize]);
            if h.is_identity() || chain.contains_from(&h, 0) {
                continue;
            }
            chain.extend(std::slice::from_ref(&h));
            gens.push(h);
            if chain.order_from(0) == target {
                break 'outer;
            }
        }
    }
    PermGroup::build(deg, gens, &[], Some(&target))
}

/// Pointwise stabiliser of several points in the action.
pub fn pointwise_stabiliser_in_action(group: &PermGroup, action: &dyn Action, pts: &[usize]) -> Result<PermGroup> {
    let mut k = group.clone();
    for &x in pts {
        if k.generators().iter().all(|g| action.image(g, x) == x) {
            continue;
        }
        k = stabiliser_in_action(&k, action, x)?;
    }
    Ok(k)
}

/// Kernel of the action.
pub fn kernel_of_action(group: &PermGroup, action: &dyn Action) -> Result<PermGroup> {
    if action.is_natural() {
        return Ok(PermGroup::trivial(group.degree()));
    }
    let mut k = group.clone();
    loop {
        let moved = k.generators().iter().find_map(|g| (0..action.degree()).find(|&x| action.image(g, x) != x));
        match moved {
            None => return Ok(k),
            Some(x) => k = stabiliser_in_action(&k, action, x)?,
        }
    }
}

/// Image of the group in the action, as a permutation group of the action's degree.
pub fn image_group(group: &PermGroup, action: &dyn Action) -> Result<PermGroup> {
    let kernel = kernel_of_action(group, action)?;
    let order = group.order() / kernel.order();
    let gens = induced_permutations(group.generators(), action)?;
    PermGroup::build(action.degree(), gens, &[], Some(&order))
}
