mod common;

use std::collections::BTreeSet;

use num_bigint::BigUint;
use proptest::prelude::*;

use common::*;
use lpchi::census::groups;
use lpchi::constructions::{alternating, cyclic, dihedral, direct_product, elementary_abelian, l_group, projective_group, symmetric, wreath, ProjectiveFamily};
use lpchi::permgroup::iso::conjugate_by_bijection;
use lpchi::permgroup::structure::{is_normal, minimal_normal_subgroups, normal_closure};
use lpchi::permgroup::{factorial, permutation_isomorphic};
use lpchi::{PermGroup, Permutation};

fn catalogue() -> Vec<(String, PermGroup)> {
    let mut out: Vec<(String, PermGroup)> = Vec::new();
    for n in 2..=8 {
        out.push((format!("sym({n})"), symmetric(n).unwrap()));
    }
    for n in 3..=8 {
        out.push((format!("alt({n})"), alternating(n).unwrap()));
    }
    for n in [3, 4, 6, 10, 12] {
        out.push((format!("dihedral({n})"), dihedral(n).unwrap()));
        out.push((format!("cyclic({n})"), cyclic(n).unwrap()));
    }
    out.push(("elemab(2,4)".into(), elementary_abelian(2, 4).unwrap()));
    out.push(("elemab(3,3)".into(), elementary_abelian(3, 3).unwrap()));
    for (p, chi) in [(2, 1), (2, 2), (3, 1), (3, 2), (5, 2)] {
        out.push((format!("L({p},{chi})"), l_group(p, chi).unwrap()));
    }
    out.push(("sym(3) wr sym(3)".into(), wreath(&symmetric(3).unwrap(), &symmetric(3).unwrap()).unwrap()));
    out.push(("sym(2) wr sym(4)".into(), wreath(&symmetric(2).unwrap(), &symmetric(4).unwrap()).unwrap()));
    out.push(("sym(4) x cyclic(3)".into(), direct_product(&symmetric(4).unwrap(), &cyclic(3).unwrap()).unwrap()));
    for q in [4, 5, 7, 9, 11, 13] {
        out.push((format!("psl2({q})"), projective_group(ProjectiveFamily::Psl2, q).unwrap()));
        out.push((format!("pgl2({q})"), projective_group(ProjectiveFamily::Pgl2, q).unwrap()));
    }
    for fam in [ProjectiveFamily::PSigmaL2, ProjectiveFamily::PGammaL2, ProjectiveFamily::M10] {
        out.push((format!("{fam}(9)"), projective_group(fam, 9).unwrap()));
    }
    out.push(("sym3 wr sym2".into(), groups::sym3_wr_sym2().unwrap()));
    out.push(("signed affine".into(), groups::signed_affine_333().unwrap()));
    out.push(("pgl2(7) x c2".into(), groups::pgl27_times_c2().unwrap()));
    out.push(("sym6 : c4".into(), groups::sym6_by_c4().unwrap()));
    out.push(("psl2(7) : c4".into(), groups::psl27_by_c4().unwrap()));
    out
}

#[test]
fn chain_order_matches_enumeration() {
    for (name, g) in catalogue() {
        let n = elements(&g).len() as u64;
        assert!(n <= 100_000, "{name} too large for the oracle");
        assert_eq!(g.order_u64(), Some(n), "{name}");
    }
}

#[test]
fn chain_invariants() {
    for (name, g) in catalogue() {
        let product: BigUint = g.basic_orbit_lengths().iter().map(|&l| BigUint::from(l)).product();
        assert_eq!(&product, g.order(), "{name}: transversal product");
        assert!(g.generators().iter().all(|s| g.contains(s)), "{name}: generators are members");
        assert_eq!(factorial(g.degree()) % g.order(), BigUint::from(0u32), "{name}: order divides n!");
        for x in 0..g.degree() {
            let orbit = g.orbit(x).unwrap().len();
            let stab = g.stabiliser(x).unwrap();
            assert_eq!(stab.order() * BigUint::from(orbit), *g.order(), "{name}: orbit-stabiliser at {x}");
        }
    }
}

#[test]
fn minimal_normal_subgroups_match_enumeration() {
    for (name, g) in catalogue() {
        if g.order_u64().unwrap() > 5000 {
            continue;
        }
        let expected = minimal_normal_sets(&g);
        let got: BTreeSet<BTreeSet<Elem>> = minimal_normal_subgroups(&g, 100_000).unwrap().iter().map(|n| sorted(&elements(n))).collect();
        assert_eq!(got, expected, "{name}");
    }
}

#[test]
fn normal_closure_matches_enumeration() {
    for (name, g) in catalogue() {
        if g.order_u64().unwrap() > 10_000 {
            continue;
        }
        let elems = elements(&g);
        for s in g.generators() {
            let n = normal_closure(&g, std::slice::from_ref(s)).unwrap();
            assert!(is_normal(&g, &n) && n.contains(s), "{name}");
            assert_eq!(sorted(&elements(&n)), sorted(&normal_closure_set(&elems, &images(s))), "{name}: closure of {s}");
        }
    }
}

fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
    Permutation::from_cycles(n, cycles).unwrap()
}

fn group(n: usize, gens: Vec<Permutation>) -> PermGroup {
    PermGroup::new(n, gens).unwrap()
}

#[test]
fn permutation_isomorphism_matches_exhaustive_search() {
    let cases: Vec<(&str, PermGroup, PermGroup)> = vec![
        ("L(2,1) vs L(2,2)", l_group(2, 1).unwrap(), l_group(2, 2).unwrap()),
        ("C4 vs V4 regular", cyclic(4).unwrap(), group(4, vec![perm(4, &[&[0, 1], &[2, 3]]), perm(4, &[&[0, 2], &[1, 3]])])),
        ("V4 regular vs V4 intransitive", group(4, vec![perm(4, &[&[0, 1], &[2, 3]]), perm(4, &[&[0, 2], &[1, 3]])]), group(4, vec![perm(4, &[&[0, 1]]), perm(4, &[&[2, 3]])])),
        (
            "S3 regular vs S3 on 3+3",
            group(6, vec![perm(6, &[&[0, 1, 2], &[3, 5, 4]]), perm(6, &[&[0, 3], &[1, 4], &[2, 5]])]),
            group(6, vec![perm(6, &[&[0, 1, 2], &[3, 4, 5]]), perm(6, &[&[0, 1], &[3, 4]])]),
        ),
        ("L(3,1) relabelled", l_group(3, 1).unwrap(), group(6, vec![perm(6, &[&[0, 2, 4]]), perm(6, &[&[1, 3, 5]])])),
        ("L(3,2) vs L(3,1)", l_group(3, 2).unwrap(), l_group(3, 1).unwrap()),
        ("D4 on 4 vs D4 on 8", dihedral(4).unwrap(), dihedral(4).unwrap()),
        ("C2 wr C2 vs D4", l_group(2, 2).unwrap(), dihedral(4).unwrap()),
        (
            "AGL(1,8)-like vs PSL2(7) point stabiliser",
            projective_group(ProjectiveFamily::Psl2, 7).unwrap().stabiliser(0).unwrap(),
            projective_group(ProjectiveFamily::Psl2, 7).unwrap().stabiliser(1).unwrap(),
        ),
        ("PSL2(7) vs PGL2(7)", projective_group(ProjectiveFamily::Psl2, 7).unwrap(), projective_group(ProjectiveFamily::Pgl2, 7).unwrap()),
        ("C2^3 regular vs C2^3 intransitive", elementary_abelian(2, 3).unwrap(), group(8, vec![perm(8, &[&[0, 1], &[2, 3]]), perm(8, &[&[2, 3], &[4, 5]]), perm(8, &[&[6, 7]])])),
        ("C8 vs C2 x C4", cyclic(8).unwrap(), group(8, vec![perm(8, &[&[0, 1, 2, 3], &[4, 5, 6, 7]]), perm(8, &[&[0, 4], &[1, 5], &[2, 6], &[3, 7]])])),
    ];
    for (name, a, b) in cases {
        let found = permutation_isomorphic(&a, &b);
        assert_eq!(found.is_some(), brute_permutation_isomorphic(&a, &b), "{name}");
        if let Some(beta) = found {
            assert!(a.generators().iter().all(|x| b.contains(&conjugate_by_bijection(x, &beta))), "{name}: witness");
        }
    }
}

fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<u32>>()).prop_shuffle().prop_map(|v| Permutation::from_images(v).unwrap())
}

fn arb_group() -> impl Strategy<Value = PermGroup> {
    (2usize..=7).prop_flat_map(|n| prop::collection::vec(arb_perm(n), 1..=3).prop_map(move |gens| PermGroup::new(n, gens).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_groups_agree_with_enumeration(g in arb_group()) {
        let elems = elements(&g);
        prop_assert_eq!(g.order_u64(), Some(elems.len() as u64));
        let lib: BTreeSet<Elem> = g.elements(10_000).unwrap().iter().map(images).collect();
        prop_assert_eq!(lib, sorted(&elems));
        for x in 0..g.degree() {
            prop_assert_eq!(g.stabiliser(x).unwrap().order() * BigUint::from(g.orbit(x).unwrap().len()), g.order().clone());
        }
    }

    #[test]
    fn membership_agrees_with_enumeration(g in arb_group(), k in 0usize..5040) {
        let n = g.degree();
        let elems = elements(&g);
        let all = all_bijections(n);
        let candidate: Vec<u32> = all[k % all.len()].iter().map(|&x| x as u32).collect();
        prop_assert_eq!(g.contains(&to_perm(&candidate)), elems.contains(&candidate));
    }

    #[test]
    fn conjugate_groups_are_permutation_isomorphic(g in arb_group(), seed in any::<u64>()) {
        let n = g.degree();
        let all = all_bijections(n);
        let beta = &all[(seed % all.len() as u64) as usize];
        let h = PermGroup::new(n, g.generators().iter().map(|x| conjugate_by_bijection(x, beta)).collect()).unwrap();
        let found = permutation_isomorphic(&g, &h).expect("conjugate groups are isomorphic");
        prop_assert!(g.generators().iter().all(|x| h.contains(&conjugate_by_bijection(x, &found))));
    }

    #[test]
    fn normal_closure_is_least_normal_overgroup(g in arb_group(), k in 0usize..64) {
        let elems: Vec<Elem> = sorted(&elements(&g)).into_iter().collect();
        let x = &elems[k % elems.len()];
        let n = normal_closure(&g, &[to_perm(x)]).unwrap();
        prop_assert!(is_normal(&g, &n));
        prop_assert_eq!(sorted(&elements(&n)), sorted(&normal_closure_set(&elems.iter().cloned().collect(), x)));
    }
}
