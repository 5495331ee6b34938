mod common;

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;

use common::*;
use lpchi::constructions::{make, Field, GroupSpec, ProjectiveFamily};
use lpchi::permgroup::block_systems;
use lpchi::permgroup::{factorial, permutation_isomorphic};
use lpchi::PermGroup;

#[test]
fn field_axioms() {
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let f = Field::new(q).unwrap();
        let els: Vec<u32> = f.elements().collect();
        assert_eq!(els.len() as u64, q);
        for &a in &els {
            assert_eq!(f.add(a, f.zero()), a);
            assert_eq!(f.mul(a, f.one()), a);
            assert_eq!(f.add(a, f.neg(a)), f.zero());
            if a != f.zero() {
                assert_eq!(f.mul(a, f.inv(a).expect("non-zero invertible")), f.one(), "q={q}, a={a}");
            }
            for &b in &els {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for &c in &els {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
        assert!(f.inv(f.zero()).is_none());
        let w = f.primitive_element();
        let powers: HashSet<u32> = (0..q - 1).map(|e| f.pow(w, e)).collect();
        assert_eq!(powers.len() as u64, q - 1, "primitive element of GF({q})");
    }
}

fn family_order(spec: &GroupSpec) -> BigUint {
    let big = |x: u64| BigUint::from(x);
    match spec {
        GroupSpec::Cyclic(n) => big(*n as u64),
        GroupSpec::Dihedral(n) => big(2 * *n as u64),
        GroupSpec::Symmetric(n) => factorial(*n),
        GroupSpec::Alternating(n) => factorial(*n) / 2u32,
        GroupSpec::ElemAbelian(p, k) => big(*p).pow(*k),
        GroupSpec::Wreath(h, k) => {
            let deg_k = make(k).unwrap().degree() as u32;
            family_order(h).pow(deg_k) * family_order(k)
        }
        GroupSpec::Direct(h, k) => family_order(h) * family_order(k),
        GroupSpec::Projective(fam, q) => {
            let f = Field::new(*q).unwrap();
            let (d, e) = (if q % 2 == 1 { 2 } else { 1 }, f.degree() as u64);
            let psl = q * (q * q - 1) / d;
            big(match fam {
                ProjectiveFamily::Psl2 => psl,
                ProjectiveFamily::Pgl2 => psl * d,
                ProjectiveFamily::PSigmaL2 => psl * e,
                ProjectiveFamily::PGammaL2 => psl * d * e,
                ProjectiveFamily::M10 => psl * 2,
            })
        }
        GroupSpec::L(p, chi) => big(p * p * *chi as u64),
    }
}

#[test]
fn factories_match_family_formulas() {
    let specs = [
        "cyclic(7)",
        "dihedral(5)",
        "sym(6)",
        "alt(7)",
        "elemab(3,4)",
        "wreath(sym(3),sym(2))",
        "wreath(cyclic(5),dihedral(4))",
        "direct(sym(4),cyclic(3))",
        "psl2(7)",
        "pgl2(7)",
        "psl2(8)",
        "psl2(9)",
        "pgl2(9)",
        "psigmal2(9)",
        "pgammal2(9)",
        "m10",
        "psl2(25)",
        "pgammal2(27)",
        "L(2,1)",
        "L(3,2)",
        "L(7,2)",
    ];
    for s in specs {
        let spec = GroupSpec::parse(s).unwrap();
        let g = make(&spec).unwrap();
        assert_eq!(g.order(), &family_order(&spec), "{s}");
        assert!(g.generators().iter().all(|x| g.contains(x)), "{s}");
        assert_eq!(GroupSpec::parse(&spec.to_string()).unwrap(), spec, "{s} round trip");
        let transitive = !matches!(spec, GroupSpec::Direct(..) | GroupSpec::L(_, 1));
        assert_eq!(g.is_transitive(), transitive, "{s}");
    }
    let l1 = make(&GroupSpec::L(5, 1)).unwrap();
    let orbit_sizes: Vec<usize> = l1.orbits().iter().map(Vec::len).collect();
    assert_eq!(orbit_sizes, vec![5, 5]);
}

#[test]
fn bad_specs_are_rejected() {
    for s in ["sym(", "wreath(sym(3))", "psl2(6)", "L(4,1)", "L(3,3)", "m10(9)x", "frob(3)", "elemab(2)"] {
        assert!(GroupSpec::parse(s).and_then(|g| make(&g)).is_err(), "{s}");
    }
}

/// Subgroups of order `target`, as element sets, generated by at most two elements.
fn subgroups_of_order(g: &PermGroup, target: usize) -> BTreeSet<BTreeSet<Elem>> {
    let elems: Vec<Elem> = sorted(&elements(g)).into_iter().collect();
    let mut out = BTreeSet::new();
    for (i, a) in elems.iter().enumerate() {
        for b in &elems[i..] {
            let h = closure(g.degree(), &[a.clone(), b.clone()]);
            if h.len() == target {
                out.insert(sorted(&h));
            }
        }
    }
    out
}

fn orbit_count(degree: usize, elems: &BTreeSet<Elem>) -> usize {
    let gens: Vec<Elem> = elems.iter().cloned().collect();
    let mut seen = vec![false; degree];
    let mut count = 0;
    for x in 0..degree {
        if seen[x] {
            continue;
        }
        count += 1;
        for g in &gens {
            seen[g[x] as usize] = true;
        }
    }
    count
}

#[test]
fn l_p1_is_the_unique_intransitive_index_chi_subgroup() {
    for p in [2u64, 3, 5] {
        let l2 = make(&GroupSpec::L(p, 2)).unwrap();
        let l1 = make(&GroupSpec::L(p, 1)).unwrap();
        let half = (p * p) as usize;
        let intransitive: Vec<BTreeSet<Elem>> = subgroups_of_order(&l2, half).into_iter().filter(|h| orbit_count(2 * p as usize, h) > 1).collect();
        assert_eq!(intransitive.len(), 1, "p={p}");
        let h = PermGroup::new(2 * p as usize, intransitive[0].iter().map(|e| to_perm(e)).collect()).unwrap();
        assert!(permutation_isomorphic(&h, &l1).is_some(), "p={p}");
        let whole: BTreeSet<BTreeSet<Elem>> = subgroups_of_order(&l1, half).into_iter().collect();
        assert_eq!(whole.len(), 1);
    }
}

/// All non-trivial blocks of `g` containing a point, by testing every subset.
fn brute_blocks(g: &PermGroup) -> BTreeSet<BTreeSet<usize>> {
    let n = g.degree();
    let elems = elements(g);
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << n) - 1 {
        let b: BTreeSet<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if b.len() < 2 {
            continue;
        }
        let is_block = elems.iter().all(|x| {
            let img: BTreeSet<usize> = b.iter().map(|&i| x[i] as usize).collect();
            img == b || img.is_disjoint(&b)
        });
        if is_block {
            out.insert(b);
        }
    }
    out
}

#[test]
fn only_blocks_are_the_l_p1_orbits() {
    for p in [2u64, 3, 5] {
        let orbits: BTreeSet<BTreeSet<usize>> = make(&GroupSpec::L(p, 1)).unwrap().orbits().into_iter().map(|o| o.into_iter().collect()).collect();
        for chi in [1, 2] {
            let g = make(&GroupSpec::L(p, chi)).unwrap();
            assert_eq!(brute_blocks(&g), orbits, "L({p},{chi})");
        }
        let systems = block_systems(&make(&GroupSpec::L(p, 2)).unwrap());
        assert_eq!(systems.len(), 1, "p={p}");
        let cells: BTreeSet<BTreeSet<usize>> = systems[0].cells.iter().map(|c| c.iter().copied().collect()).collect();
        assert_eq!(cells, orbits);
    }
}

#[test]
fn projective_groups_are_two_transitive() {
    for (fam, q) in [(ProjectiveFamily::Psl2, 7), (ProjectiveFamily::Pgl2, 9), (ProjectiveFamily::PGammaL2, 9), (ProjectiveFamily::Psl2, 8)] {
        let g = make(&GroupSpec::Projective(fam, q)).unwrap();
        assert!(g.is_transitive());
        let stab = g.stabiliser(0).unwrap();
        assert_eq!(stab.orbits().len(), 2, "{fam}({q})");
    }
}
