mod common;

use std::collections::{BTreeSet, HashSet};
use std::path::Path;
use std::sync::Arc;

use proptest::prelude::*;

use common::{closure, compose, elements, images, invert, sorted, Elem};
use lpchi::census::{golden_json, rows, run_census, suborbits, CosetSpace, CosetSpec, RowSet};
use lpchi::constructions::{alternating, dihedral, projective_group, symmetric, ProjectiveFamily};
use lpchi::{Budget, PermGroup, Permutation};

fn golden_dir() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../golden/v1")
}

#[test]
fn golden_files_replay_byte_for_byte() {
    let budget = Budget::census();
    let mut skips = Vec::new();
    for set in [RowSet::Table5, RowSet::Table1Small] {
        let report = run_census(&rows(set), set.name(), &budget);
        skips.extend(report.skips());
        let golden = std::fs::read_to_string(golden_dir().join(format!("{}.json", set.name()))).unwrap();
        assert!(golden == golden_json(&report), "{} differs from the golden file", set.name());
    }
    let golden = std::fs::read_to_string(golden_dir().join("skips.json")).unwrap();
    assert_eq!(golden, golden_json(&skips));
}

/// Right cosets `Hx` as element sets.
fn brute_cosets(g: &HashSet<Elem>, h: &HashSet<Elem>) -> BTreeSet<BTreeSet<Elem>> {
    g.iter().map(|x| h.iter().map(|y| compose(y, x)).collect()).collect()
}

/// Double cosets `HxH` and whether each is closed under inversion.
fn brute_double_cosets(g: &HashSet<Elem>, h: &HashSet<Elem>) -> Vec<(usize, bool)> {
    let mut seen: BTreeSet<BTreeSet<Elem>> = BTreeSet::new();
    let mut out = Vec::new();
    for x in sorted(g) {
        let d: BTreeSet<Elem> = h
            .iter()
            .flat_map(|a| {
                let ax = compose(a, &x);
                h.iter().map(move |b| compose(&ax, b))
            })
            .collect();
        if seen.insert(d.clone()) {
            let self_paired = d.contains(&invert(&x));
            out.push((d.len() / h.len(), self_paired));
        }
    }
    out.sort();
    out
}

fn ambient_groups() -> Vec<PermGroup> {
    vec![symmetric(4).unwrap(), symmetric(5).unwrap(), alternating(5).unwrap(), dihedral(6).unwrap(), projective_group(ProjectiveFamily::Psl2, 7).unwrap()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn suborbits_match_double_cosets(gi in 0usize..5, picks in prop::collection::vec(any::<prop::sample::Index>(), 0..=2)) {
        let g = ambient_groups().swap_remove(gi);
        let elems: Vec<Elem> = sorted(&elements(&g)).into_iter().collect();
        let gens: Vec<Elem> = picks.iter().map(|i| i.get(&elems).clone()).collect();
        let h_set = closure(g.degree(), &gens);
        let hgens: Vec<Permutation> = gens.iter().map(|e| Permutation::from_images(e.clone()).unwrap()).collect();
        let h = PermGroup::new(g.degree(), hgens).unwrap();
        let g_set = elements(&g);
        let space = Arc::new(CosetSpace::new(&CosetSpec::new(g.clone(), h).unwrap(), 10_000).unwrap());
        let index = g_set.len() / h_set.len();
        prop_assert_eq!(space.degree(), index);
        prop_assert_eq!(brute_cosets(&g_set, &h_set).len(), index);

        let subs = suborbits(&space).unwrap();
        prop_assert_eq!(subs.iter().map(|s| s.length).sum::<usize>(), index);
        prop_assert_eq!(subs[0].length, 1);
        prop_assert!(subs[0].self_paired);
        for (i, s) in subs.iter().enumerate() {
            prop_assert_eq!(subs[s.paired_with].paired_with, i);
            prop_assert_eq!(subs[s.paired_with].length, s.length);
            prop_assert_eq!(s.self_paired, s.paired_with == i);
            prop_assert_eq!(h_set.len() % s.length, 0);
        }
        let mut got: Vec<(usize, bool)> = subs.iter().map(|s| (s.length, s.self_paired)).collect();
        got.sort();
        prop_assert_eq!(got, brute_double_cosets(&g_set, &h_set));

        for v in 0..space.degree() {
            let rep = space.representative(v);
            prop_assert_eq!(space.coset_of(rep), v);
            prop_assert!(g.contains(rep));
            prop_assert!(h_set.contains(&images(&rep.mul(&space.representative(v).inverse()))));
        }
    }
}
