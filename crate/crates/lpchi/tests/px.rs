mod common;

use std::collections::HashMap;

use num_bigint::BigUint;

use lpchi::constructions::l_group;
use lpchi::graphcore::{automorphism_group, transitivity};
use lpchi::permgroup::action::{induced_permutations, stabiliser_in_action};
use lpchi::permgroup::permutation_isomorphic;
use lpchi::permgroup::structure::normal_closure;
use lpchi::px::{identify_px, px_graph, px_groups, px_pair, px_report, recognize_px, vpx_digraph, PxAction, PxParams};
use lpchi::quotients::{cycle_quotient_analysis, quotient_of_pair};
use lpchi::{Budget, PermGroup};

fn grid() -> impl Iterator<Item = PxParams> {
    [2u64, 3, 5].into_iter().flat_map(|p| (3..=7).flat_map(move |r| (1..r).map(move |s| PxParams::new(p, r, s).unwrap())))
}

fn pow(p: u64, e: usize) -> BigUint {
    BigUint::from(p).pow(e as u32)
}

#[test]
fn parameter_identities_on_the_grid() {
    for params in grid() {
        let PxParams { p, r, s } = params;
        let rep = px_report(params).unwrap();
        assert_eq!(rep.vertices, r * (p as usize).pow(s as u32), "{params:?}");
        assert_eq!(rep.valency, Some(2 * p as usize), "{params:?}");
        assert_eq!(rep.edges, rep.vertices * p as usize, "{params:?}");
        assert!(rep.connected, "{params:?}");
        assert_eq!(rep.h_order, (pow(p, r) * BigUint::from(2 * r)).to_string());
        if s + 2 <= r {
            let expected = (pow(p, r - s) * 2u32).to_string();
            assert_eq!(rep.hv_order.as_deref(), Some(expected.as_str()), "{params:?}");
            assert!(rep.local_action_ok, "{params:?}");
        }
    }
}

#[test]
fn local_action_is_l_p2() {
    for params in grid().filter(|x| x.s + 2 <= x.r && x.vertex_count() <= 5000) {
        let ctx = px_pair(params).unwrap();
        assert!(permutation_isomorphic(ctx.local_action(), &l_group(params.p, 2).unwrap()).is_some(), "{params:?}");
        assert_eq!(ctx.gv().order(), &(pow(params.p, params.r - params.s) * 2u32));
    }
}

#[test]
fn orientation_is_asymmetric_with_out_valency_p() {
    for params in grid().filter(|x| x.vertex_count() <= 5000) {
        let d = vpx_digraph(params);
        assert!(d.is_asymmetric(), "{params:?}");
        assert_eq!(d.regular_valency(), Some(params.p as usize), "{params:?}");
        assert!(d.in_valencies().iter().all(|&k| k == params.p as usize));
    }
}

#[test]
fn vertex_encoding_is_bijective() {
    for params in grid().filter(|x| x.vertex_count() <= 5000) {
        for v in 0..params.vertex_count() {
            let (i, word) = params.decode(v);
            assert_eq!(params.encode(i, &word), v);
        }
    }
}

#[test]
fn automorphism_group_orders() {
    let budget = Budget::default().automorphism_vertices;
    for ((p, r, s), expected) in [((2, 4, 1), 1152u64), ((2, 4, 2), 384), ((2, 4, 3), 256), ((2, 5, 2), 320), ((3, 3, 1), 1296)] {
        let params = PxParams::new(p, r, s).unwrap();
        let aut = automorphism_group(&px_graph(params), budget).unwrap();
        assert_eq!(aut.order_u64(), Some(expected), "PX({p},{r},{s})");
    }
}

#[test]
fn automorphism_group_contains_the_wreath_action() {
    for (p, r, s) in [(2, 4, 1), (2, 5, 2), (3, 3, 1), (3, 4, 2)] {
        let params = PxParams::new(p, r, s).unwrap();
        let g = px_graph(params);
        let (x, _) = px_groups(params).unwrap();
        let gens = induced_permutations(x.generators(), &PxAction { params }).unwrap();
        let aut = automorphism_group(&g, 200).unwrap();
        assert!(gens.iter().all(|y| g.is_automorphism(y) && aut.contains(y)), "PX({p},{r},{s})");
    }
}

#[test]
fn normal_closure_of_gv_star_gives_a_cycle_quotient() {
    let budget = Budget::default();
    for params in grid().filter(|x| x.s + 2 <= x.r) {
        let ctx = px_pair(params).unwrap();
        let e = normal_closure(ctx.group(), ctx.gv_star().generators()).unwrap();
        assert!(e.is_elementary_abelian(params.p), "{params:?}");
        let q = quotient_of_pair(&ctx, &e).unwrap();
        assert_eq!(q.cycle_length(), Some(params.r), "{params:?}");
        let ev = stabiliser_in_action(&e, ctx.action(), 0).unwrap();
        assert!(ev.same_group(ctx.gv_star()), "{params:?}");
        if params.vertex_count() <= budget.automorphism_vertices {
            let found = recognize_px(&ctx, &budget).unwrap().expect("recognised");
            assert_eq!(found.params, params);
            assert!(found.normal_subgroup.is_abelian());
        }
        let analysis = cycle_quotient_analysis(&ctx, &e).unwrap();
        assert!(analysis.all_ok(), "{params:?}");
        assert!(analysis.kv.order() <= &pow(params.p, params.r));
    }
}

#[test]
fn identification_recovers_parameters() {
    let budget = Budget::default();
    for (p, r, s) in [(2, 3, 1), (2, 4, 2), (2, 6, 3), (3, 3, 1), (3, 4, 2), (5, 3, 1)] {
        let params = PxParams::new(p, r, s).unwrap();
        assert_eq!(identify_px(&px_graph(params), p, &budget).unwrap(), Some(params));
    }
}

#[test]
fn invalid_parameters() {
    assert!(PxParams::new(4, 4, 2).is_err());
    assert!(PxParams::new(2, 2, 1).is_err());
    assert!(PxParams::new(2, 4, 0).is_err());
    assert!(PxParams::new(2, 4, 4).is_err());
}

/// Kernels of the homomorphisms `G → C₂` that are non-trivial, as element lists.
fn index_two_subgroups(g: &PermGroup) -> Vec<Vec<common::Elem>> {
    let gens: Vec<common::Elem> = g.generators().iter().map(common::images).collect();
    let mut out = Vec::new();
    for mask in 1u32..(1 << gens.len()) {
        let mut value: HashMap<common::Elem, bool> = HashMap::from([(common::identity(g.degree()), false)]);
        let mut queue = vec![common::identity(g.degree())];
        let mut consistent = true;
        while let Some(x) = queue.pop() {
            for (i, s) in gens.iter().enumerate() {
                let y = common::compose(&x, s);
                let v = value[&x] ^ (mask >> i & 1 == 1);
                match value.get(&y) {
                    Some(&w) if w != v => consistent = false,
                    Some(_) => {}
                    None => {
                        value.insert(y.clone(), v);
                        queue.push(y);
                    }
                }
            }
        }
        if consistent {
            out.push(value.into_iter().filter(|(_, v)| !v).map(|(x, _)| x).collect());
        }
    }
    out
}

#[test]
fn px_2_4_3_has_one_half_arc_transitive_index_two_subgroup() {
    let g = px_graph(PxParams::new(2, 4, 3).unwrap());
    let aut = automorphism_group(&g, 200).unwrap();
    assert_eq!(aut.order_u64(), Some(256));
    let subgroups = index_two_subgroups(&aut);
    assert!(subgroups.iter().all(|k| k.len() == 128));
    let half_arc: Vec<_> = subgroups
        .iter()
        .filter(|k| {
            let gens: Vec<lpchi::Permutation> = k.iter().map(|x| common::to_perm(x)).collect();
            let t = transitivity(&g, &gens);
            t.vertex() && t.edge() && !t.arc()
        })
        .collect();
    assert_eq!(half_arc.len(), 1, "{} index-two subgroups", subgroups.len());
}
