//! Bounded search for vertex stabilisers `H` whose coset graphs are
//! locally-`L(p,χ)` pairs.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigUint;

use super::coset::{admissible_choices, build_pair_from_suborbit, suborbits, CosetSpace, CosetSpec, Suborbit, SuborbitChoice};
use crate::classify::p_group_structure;
use crate::error::{Error, Result};
use crate::graphcore::PairContext;
use crate::perm::Permutation;
use crate::permgroup::action::{stabiliser_in_action, Action};
use crate::permgroup::pgroup::{sylow_in_normal_subgroup, sylow_subgroup};
use crate::permgroup::structure::{conjugacy_classes_filtered, core, p_exponent};
use crate::permgroup::table::GroupTable;
use crate::permgroup::PermGroup;
use crate::Budget;

/// An ambient group with an optional `p`-subgroup of an overgroup in which
/// it is normal, used to find Sylow subgroups of groups too large to enumerate.
#[derive(Debug, Clone)]
pub struct Ambient {
    pub label: String,
    pub group: PermGroup,
    pub sylow_hint: Option<PermGroup>,
}

impl Ambient {
    pub fn new(label: impl Into<String>, group: PermGroup) -> Self {
        Ambient { label: label.into(), group, sylow_hint: None }
    }

    pub fn with_hint(mut self, hint: PermGroup) -> Self {
        self.sylow_hint = Some(hint);
        self
    }

    pub fn sylow(&self, p: u64, budget: &Budget) -> Result<PermGroup> {
        match &self.sylow_hint {
            Some(h) if h.is_p_group(p) => sylow_in_normal_subgroup(&self.group, h, budget.enumeration),
            _ => sylow_subgroup(&self.group, p, budget.enumeration),
        }
    }
}

/// Subgroups of order `order` of a Sylow `p`-subgroup, up to conjugacy in it.
pub fn p_subgroups(ambient: &Ambient, p: u64, order: u64, budget: &Budget) -> Result<Vec<PermGroup>> {
    let syl = ambient.sylow(p, budget)?;
    if syl.order() < &BigUint::from(order) {
        return Ok(Vec::new());
    }
    let table = GroupTable::new(&syl)?;
    let conj: Vec<u32> = syl.generators().iter().map(|x| table.index_of(x).expect("generator in table")).collect();
    table.p_subgroups_of_order(&table.whole(), p, order as usize, &conj).iter().map(|s| table.to_group(s)).collect()
}

/// Conjugates of a subgroup, each keyed by its sorted element list.
struct ConjugateSpace {
    keys: Vec<Vec<Permutation>>,
    lookup: HashMap<Vec<Permutation>, usize>,
}

impl ConjugateSpace {
    fn new(g: &PermGroup, q: &PermGroup, max: usize, budget: u64) -> Result<Self> {
        let mut first = q.elements(budget)?;
        first.sort();
        let mut space = ConjugateSpace { keys: vec![first.clone()], lookup: HashMap::from([(first, 0)]) };
        let mut i = 0;
        while i < space.keys.len() {
            for s in g.generators() {
                let k = space.conjugate_key(i, s);
                if !space.lookup.contains_key(&k) {
                    if space.keys.len() >= max {
                        return Err(Error::budget("conjugates of a subgroup", format!("more than {max}"), max as u64));
                    }
                    space.lookup.insert(k.clone(), space.keys.len());
                    space.keys.push(k);
                }
            }
            i += 1;
        }
        Ok(space)
    }

    fn conjugate_key(&self, i: usize, g: &Permutation) -> Vec<Permutation> {
        let mut k: Vec<Permutation> = self.keys[i].iter().map(|x| x.conjugate_by(g)).collect();
        k.sort();
        k
    }
}

impl Action for ConjugateSpace {
    fn degree(&self) -> usize {
        self.keys.len()
    }
    fn image(&self, g: &Permutation, x: usize) -> usize {
        self.lookup[&self.conjugate_key(x, g)]
    }
}

/// `N_G(Q)` as the stabiliser of `Q` in the conjugation action on its conjugates.
pub fn conjugation_normaliser(g: &PermGroup, q: &PermGroup, budget: &Budget) -> Result<PermGroup> {
    let space = ConjugateSpace::new(g, q, budget.coset_degree, budget.enumeration)?;
    stabiliser_in_action(g, &space, 0)
}

/// Candidate vertex stabilisers of order `gv_order`.
///
/// A `p`-power order gives the `p`-subgroups of a Sylow subgroup. For
/// `χ = 2` and odd `p`, order `2p^k` gives `Q⋊⟨t⟩` with `Q` of order `p^k`
/// and `t` an involution class representative of `N_G(Q)`.
pub fn candidate_stabilisers(ambient: &Ambient, p: u64, chi: u32, gv_order: u64, budget: &Budget) -> Result<Vec<PermGroup>> {
    if p_exponent(&BigUint::from(gv_order), p).is_some() {
        return p_subgroups(ambient, p, gv_order, budget);
    }
    if chi != 2 || p == 2 || !gv_order.is_multiple_of(2) || p_exponent(&BigUint::from(gv_order / 2), p).is_none() {
        return Err(Error::Precondition(format!("no search strategy for |G_v| = {gv_order}, p = {p}, chi = {chi}")));
    }
    let g = &ambient.group;
    let mut out: Vec<PermGroup> = Vec::new();
    for q in p_subgroups(ambient, p, gv_order / 2, budget)? {
        let n = conjugation_normaliser(g, &q, budget)?;
        for (t, _) in conjugacy_classes_filtered(&n, budget.enumeration, |x| x.order() == 2)? {
            let mut gens = q.generators().to_vec();
            gens.push(t);
            let h = PermGroup::build(g.degree(), gens, &[], Some(&BigUint::from(gv_order)))?;
            if !out.iter().any(|k| k.same_group(&h)) {
                out.push(h);
            }
        }
    }
    Ok(out)
}

/// A validated coset-graph pair together with the data that rebuilds it.
#[derive(Debug, Clone)]
pub struct Witness {
    pub subgroup: PermGroup,
    pub space: Arc<CosetSpace>,
    pub suborbits: Vec<Suborbit>,
    pub choice: SuborbitChoice,
    pub pair: PairContext,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    /// Candidates produced by [`candidate_stabilisers`].
    pub candidates: usize,
    /// Candidates passing the core and structure filters.
    pub examined: usize,
    pub witness: Option<Witness>,
}

/// First candidate `H` (in search order) with trivial core whose coset
/// action has an admissible suborbit choice validating as a pair.
///
/// For `χ = 1`, `H = G_v*` must also pass the structure battery.
pub fn search_witness(ambient: &Ambient, p: u64, chi: u32, gv_order: u64, budget: &Budget) -> Result<SearchOutcome> {
    let g = &ambient.group;
    let cands = candidate_stabilisers(ambient, p, chi, gv_order, budget)?;
    let mut outcome = SearchOutcome { candidates: cands.len(), examined: 0, witness: None };
    for h in cands {
        if !core(g, &h, budget.enumeration)?.is_trivial() {
            continue;
        }
        if chi == 1 && !p_group_structure(&h, p, budget)?.all_ok() {
            continue;
        }
        outcome.examined += 1;
        if let Some(w) = witness_for(g, &h, p, chi, budget)? {
            outcome.witness = Some(w);
            break;
        }
    }
    Ok(outcome)
}

/// Tries every admissible suborbit choice of the coset action on `G/H`.
pub fn witness_for(g: &PermGroup, h: &PermGroup, p: u64, chi: u32, budget: &Budget) -> Result<Option<Witness>> {
    let spec = CosetSpec::new(g.clone(), h.clone())?;
    let space = Arc::new(CosetSpace::new(&spec, budget.coset_degree)?);
    let subs = suborbits(&space)?;
    for choice in admissible_choices(&subs, p, chi) {
        match build_pair_from_suborbit(space.clone(), &subs, choice, p) {
            Ok(pair) => return Ok(Some(Witness { subgroup: h.clone(), space, suborbits: subs, choice, pair })),
            Err(Error::Rejected(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{projective_group, symmetric, ProjectiveFamily};

    #[test]
    fn sym5_order_four_witness() {
        let amb = Ambient::new("sym5", symmetric(5).unwrap());
        let out = search_witness(&amb, 2, 1, 4, &Budget::default()).unwrap();
        let w = out.witness.expect("AG(Pet)-type witness");
        assert_eq!(w.pair.vertex_count(), 30);
        assert_eq!(w.pair.gv().order_u64(), Some(4));
    }

    #[test]
    fn normaliser_matches_enumeration() {
        let g = projective_group(ProjectiveFamily::Psl2, 7).unwrap();
        let amb = Ambient::new("psl2(7)", g.clone());
        let q = p_subgroups(&amb, 7, 7, &Budget::default()).unwrap().remove(0);
        let a = conjugation_normaliser(&g, &q, &Budget::default()).unwrap();
        let b = crate::permgroup::structure::normaliser(&g, &q, 10_000).unwrap();
        assert!(a.same_group(&b));
        assert_eq!(a.order_u64(), Some(21));
    }
}
