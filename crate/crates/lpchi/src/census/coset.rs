//! Right-coset actions, suborbits and coset graphs.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphcore::pair::Dsu;
use crate::graphcore::{make_pair, Graph, PairContext};
use crate::perm::Permutation;
use crate::permgroup::action::{induced_permutations, kernel_of_action, Action};
use crate::permgroup::PermGroup;

/// An ambient group and a subgroup, both in the same representation.
#[derive(Debug, Clone)]
pub struct CosetSpec {
    pub group: PermGroup,
    pub subgroup: PermGroup,
}

impl CosetSpec {
    pub fn new(group: PermGroup, subgroup: PermGroup) -> Result<Self> {
        if subgroup.degree() != group.degree() {
            return Err(Error::DegreeMismatch { left: group.degree(), right: subgroup.degree() });
        }
        if !group.contains_group(&subgroup) {
            return Err(Error::NotMember);
        }
        Ok(CosetSpec { group, subgroup })
    }

    pub fn index(&self) -> num_bigint::BigUint {
        self.group.order() / self.subgroup.order()
    }
}

/// The action of `G` on the right cosets `Hx`. Coset `0` is `H`.
pub struct CosetSpace {
    group: PermGroup,
    /// `H` with a base starting with the base of `G`.
    subgroup: PermGroup,
    group_base: Vec<usize>,
    reps: Vec<Permutation>,
    lookup: HashMap<Vec<u32>, u32>,
}

impl std::fmt::Debug for CosetSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CosetSpace").field("degree", &self.reps.len()).field("subgroup_order", self.subgroup.order()).finish()
    }
}

impl CosetSpace {
    /// Enumerates the cosets breadth-first from `H`; fails if the index exceeds `max_degree`.
    pub fn new(spec: &CosetSpec, max_degree: usize) -> Result<Self> {
        let index = spec.index();
        if index > num_bigint::BigUint::from(max_degree) {
            return Err(Error::budget("coset action", &index, max_degree as u64));
        }
        let group_base = spec.group.base();
        let subgroup = spec.subgroup.rebase(&group_base)?;
        let mut space = CosetSpace { group: spec.group.clone(), subgroup, group_base, reps: Vec::new(), lookup: HashMap::new() };
        let id = Permutation::identity(spec.group.degree());
        space.lookup.insert(space.key(&id), 0);
        space.reps.push(id);
        let mut i = 0;
        while i < space.reps.len() {
            for s in spec.group.generators() {
                let x = space.reps[i].mul(s);
                let k = space.key(&x);
                if !space.lookup.contains_key(&k) {
                    space.lookup.insert(k, space.reps.len() as u32);
                    space.reps.push(x);
                }
            }
            i += 1;
        }
        debug_assert_eq!(num_bigint::BigUint::from(space.reps.len()), index);
        Ok(space)
    }

    /// Base images of the element of `Hx` whose images of the base of `H` are least.
    fn key(&self, x: &Permutation) -> Vec<u32> {
        let mut c = x.clone();
        for level in self.subgroup.levels() {
            let best = level.orbit.iter().copied().min_by_key(|&y| c.apply(y as usize)).expect("non-empty orbit");
            if best != level.base {
                c = level.rep(best as usize).mul(&c);
            }
        }
        self.group_base.iter().map(|&b| c.apply(b) as u32).collect()
    }

    pub fn degree(&self) -> usize {
        self.reps.len()
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn subgroup(&self) -> &PermGroup {
        &self.subgroup
    }

    /// A representative `x` of coset `v = Hx`.
    pub fn representative(&self, v: usize) -> &Permutation {
        &self.reps[v]
    }

    /// Index of the coset `Hx`.
    pub fn coset_of(&self, x: &Permutation) -> usize {
        self.lookup[&self.key(x)] as usize
    }
}

impl Action for CosetSpace {
    fn degree(&self) -> usize {
        self.reps.len()
    }

    fn image(&self, g: &Permutation, v: usize) -> usize {
        self.coset_of(&self.reps[v].mul(g))
    }
}

/// Degree, core and point-stabiliser data of a coset action.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetActionReport {
    pub degree: usize,
    pub transitive: bool,
    pub core_order: String,
    pub stabiliser_order: String,
}

/// Builds the coset action and reports its kernel, the core of `H`.
pub fn coset_action(spec: &CosetSpec, max_degree: usize) -> Result<(Arc<CosetSpace>, CosetActionReport)> {
    let space = Arc::new(CosetSpace::new(spec, max_degree)?);
    let gens = induced_permutations(spec.group.generators(), space.as_ref())?;
    let transitive = crate::permgroup::orbit_under(&gens, space.degree(), 0).len() == space.degree();
    let core = kernel_of_action(&spec.group, space.as_ref())?;
    let report =
        CosetActionReport { degree: space.degree(), transitive, stabiliser_order: (spec.subgroup.order() / core.order()).to_string(), core_order: core.order().to_string() };
    Ok((space, report))
}

/// An orbit of `H` on the cosets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Suborbit {
    pub length: usize,
    /// Least coset in the suborbit.
    pub representative: usize,
    pub self_paired: bool,
    /// Index of the paired suborbit.
    pub paired_with: usize,
    #[serde(skip)]
    pub members: Vec<usize>,
}

/// Suborbits ordered by least member; suborbit `0` is `{H}`.
pub fn suborbits(space: &CosetSpace) -> Result<Vec<Suborbit>> {
    let n = space.degree();
    let hgens = induced_permutations(space.subgroup().generators(), space)?;
    let mut dsu = Dsu::new(n);
    for g in &hgens {
        for v in 0..n {
            dsu.union(v, g.apply(v));
        }
    }
    let mut class_of = vec![usize::MAX; n];
    let mut label = vec![0usize; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for (v, slot) in label.iter_mut().enumerate() {
        let r = dsu.find(v);
        if class_of[r] == usize::MAX {
            class_of[r] = members.len();
            members.push(Vec::new());
        }
        *slot = class_of[r];
        members[class_of[r]].push(v);
    }
    let mut out = Vec::with_capacity(members.len());
    for (i, m) in members.iter().enumerate() {
        let rep = m[0];
        let back = space.coset_of(&space.representative(rep).inverse());
        let j = label[back];
        out.push(Suborbit { length: m.len(), representative: rep, self_paired: i == j, paired_with: j, members: m.clone() });
    }
    Ok(out)
}

/// Which suborbits form the neighbourhood of `H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SuborbitChoice {
    /// A self-paired suborbit of length `2p`.
    SelfPaired { index: usize },
    /// A suborbit of length `p` together with its (distinct) pair.
    Paired { index: usize },
}

/// Orbital graph of the chosen suborbits, validated as a pair.
pub fn build_pair_from_suborbit(space: Arc<CosetSpace>, subs: &[Suborbit], choice: SuborbitChoice, p: u64) -> Result<PairContext> {
    let (index, chi, want) = match choice {
        SuborbitChoice::SelfPaired { index } => (index, 2, 2 * p as usize),
        SuborbitChoice::Paired { index } => (index, 1, p as usize),
    };
    let s = subs.get(index).ok_or_else(|| Error::Precondition(format!("no suborbit {index}")))?;
    if s.length != want {
        return Err(Error::Precondition(format!("suborbit {index} has length {}, expected {want}", s.length)));
    }
    if (chi == 2) != s.self_paired {
        let expected = if chi == 2 { "self-paired" } else { "not self-paired" };
        return Err(Error::Precondition(format!("suborbit {index} must be {expected}")));
    }
    let out_reps: Vec<&Permutation> = s.members.iter().map(|&w| space.representative(w)).collect();
    let n = space.degree();
    let mut edges = Vec::with_capacity(n * out_reps.len());
    for v in 0..n {
        let rv = space.representative(v);
        for r in &out_reps {
            let u = space.coset_of(&r.mul(rv));
            edges.push((v.min(u), v.max(u)));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    if edges.iter().any(|&(a, b)| a == b) {
        return Err(Error::Precondition("suborbit contains H itself".into()));
    }
    let graph = Graph::from_edges(n, &edges)?;
    let group = space.group().clone();
    make_pair(graph, group, space, p, chi)
}

/// All admissible suborbit choices for `(p, χ)`.
pub fn admissible_choices(subs: &[Suborbit], p: u64, chi: u32) -> Vec<SuborbitChoice> {
    subs.iter()
        .enumerate()
        .filter_map(|(i, s)| match chi {
            2 if s.self_paired && s.length == 2 * p as usize => Some(SuborbitChoice::SelfPaired { index: i }),
            1 if !s.self_paired && s.length == p as usize && i < s.paired_with => Some(SuborbitChoice::Paired { index: i }),
            _ => None,
        })
        .collect()
}
