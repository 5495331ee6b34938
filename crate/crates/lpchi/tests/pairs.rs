mod common;

use num_bigint::BigUint;
use proptest::prelude::*;

use common::{brute_automorphism_count, is_automorphism};
use lpchi::census::search::{search_witness, Ambient};
use lpchi::constructions::symmetric;
use lpchi::graphcore::{arc_orbit_labels, automorphism_group, make_pair_natural, Graph, PairContext};
use lpchi::permgroup::structure::minimal_normal_subgroups;
use lpchi::px::{px_pair, PxParams};
use lpchi::quotients::{kernel_local_orbit_count, quotient, quotient_of_pair};
use lpchi::{Budget, PermGroup, Permutation};

fn pairs() -> Vec<(String, PairContext)> {
    let budget = Budget::default();
    let mut out: Vec<(String, PairContext)> = [(2, 3, 1), (2, 4, 1), (2, 4, 2), (2, 5, 2), (3, 3, 1), (3, 4, 2)]
        .into_iter()
        .map(|(p, r, s)| (format!("PX({p},{r},{s})"), px_pair(PxParams::new(p, r, s).unwrap()).unwrap()))
        .collect();
    let w = search_witness(&Ambient::new("sym(5)", symmetric(5).unwrap()), 2, 1, 4, &budget).unwrap().witness.expect("sym(5) witness");
    out.push(("sym(5) on 30".into(), w.pair));
    out
}

/// `G` as a permutation group of the vertex set.
fn on_vertices(ctx: &PairContext) -> PermGroup {
    PermGroup::new(ctx.vertex_count(), ctx.vertex_generators().to_vec()).unwrap()
}

#[test]
fn pair_invariants() {
    for (name, ctx) in pairs() {
        let (p, chi) = (ctx.p(), ctx.chi());
        assert_eq!(ctx.gv().order() * BigUint::from(ctx.vertex_count()), *ctx.group().order(), "{name}");
        assert!(ctx.gv_star().is_p_group(p), "{name}");
        assert_eq!(ctx.gv().order() / ctx.gv_star().order(), BigUint::from(chi), "{name}");
        assert!(ctx.gv_star().generators().iter().all(|x| ctx.vertex_image(x, 0) == 0), "{name}");
        let nbrs = ctx.graph().neighbours(0).to_vec();
        let star_local: Vec<Permutation> = ctx
            .gv_star()
            .generators()
            .iter()
            .map(|x| Permutation::from_images(nbrs.iter().map(|&w| nbrs.binary_search(&(ctx.vertex_image(x, w as usize) as u32)).unwrap() as u32).collect()).unwrap())
            .collect();
        let star_local = PermGroup::new(nbrs.len(), star_local).unwrap();
        let mut sizes: Vec<usize> = star_local.orbits().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![p as usize, p as usize], "{name}");

        let labels = arc_orbit_labels(ctx.graph(), ctx.vertex_generators());
        let offsets = ctx.graph().arc_offsets();
        let orbit_count = labels.iter().copied().max().unwrap() + 1;
        assert_eq!(orbit_count, if chi == 1 { 2 } else { 1 }, "{name}");
        let tr = ctx.transitivity();
        assert!(tr.vertex() && tr.edge(), "{name}");
        assert_eq!(tr.arc(), chi == 2, "{name}");
        if chi == 1 {
            let g = ctx.graph();
            for u in 0..g.vertex_count() {
                for (i, &w) in g.neighbours(u).iter().enumerate() {
                    let back = g.neighbours(w as usize).binary_search(&(u as u32)).unwrap();
                    assert_ne!(labels[offsets[u] + i], labels[offsets[w as usize] + back], "{name}: reverse arc in the same orbit");
                }
            }
        }
    }
}

#[test]
fn quotient_valency_is_bounded_by_kernel_orbits() {
    for (name, ctx) in pairs() {
        for n in minimal_normal_subgroups(ctx.group(), 1_000_000).unwrap() {
            let q = quotient_of_pair(&ctx, &n).unwrap();
            let bound = kernel_local_orbit_count(&ctx, &q).unwrap();
            if let Some(k) = q.valency {
                assert!(k <= bound, "{name}: valency {k} > {bound}");
            }
            let sizes: Vec<usize> = q.orbits.iter().map(Vec::len).collect();
            assert!(sizes.iter().all(|&s| s == sizes[0]), "{name}: orbits of a normal subgroup have equal size");
            assert!(q.kernel.contains_group(&n), "{name}");
        }
    }
}

/// `Γ × K₂` with `G × C₂` acting on `2n` vertices; `(v, i)` is `v + i·n`.
fn double_cover(ctx: &PairContext) -> (Graph, PermGroup, Permutation) {
    let n = ctx.vertex_count();
    let edges: Vec<(usize, usize)> = ctx.graph().edges().into_iter().flat_map(|(u, w)| [(u, w + n), (w, u + n)]).collect();
    let graph = Graph::from_edges(2 * n, &edges).unwrap();
    let mut gens: Vec<Permutation> =
        ctx.vertex_generators().iter().map(|s| Permutation::from_images((0..2 * n).map(|x| (s.apply(x % n) + n * (x / n)) as u32).collect()).unwrap()).collect();
    let swap = Permutation::from_images((0..2 * n).map(|x| ((x + n) % (2 * n)) as u32).collect()).unwrap();
    gens.push(swap.clone());
    (graph, PermGroup::new(2 * n, gens).unwrap(), swap)
}

#[test]
fn canonical_double_covers() {
    let mut connected = 0;
    for (name, ctx) in pairs() {
        let (graph, group, swap) = double_cover(&ctx);
        assert_eq!(group.order(), &(ctx.group().order() * 2u32), "{name}");
        if !graph.is_connected() {
            continue;
        }
        connected += 1;
        let cover = make_pair_natural(graph, group.clone(), ctx.p(), ctx.chi()).unwrap_or_else(|e| panic!("{name}: {e}"));
        let n = group.subgroup(vec![swap]).unwrap();
        let q = quotient_of_pair(&cover, &n).unwrap();
        assert!(q.is_regular_cover, "{name}");
        assert!(q.cover_facts.as_ref().is_some_and(|f| f.all()), "{name}: {:?}", q.cover_facts);
        assert_eq!(q.orbit_count(), ctx.vertex_count());

        // the quotient with the induced group is again a pair with the same parameters
        let base = make_pair_natural(q.graph.clone(), q.induced.clone(), ctx.p(), ctx.chi()).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(base.gv().order(), ctx.gv().order(), "{name}");
        assert!(lpchi::graphcore::isomorphism(base.graph(), ctx.graph(), 200).unwrap().is_some(), "{name}");
    }
    assert!(connected >= 3, "too few non-bipartite examples: {connected}");
}

#[test]
fn regular_cover_quotients_are_pairs() {
    let mut seen = 0;
    for (name, ctx) in pairs() {
        let g = on_vertices(&ctx);
        for n in minimal_normal_subgroups(ctx.group(), 1_000_000).unwrap() {
            let q = quotient_of_pair(&ctx, &n).unwrap();
            if !q.is_regular_cover || q.orbit_count() < 3 {
                continue;
            }
            seen += 1;
            assert!(q.cover_facts.as_ref().unwrap().all(), "{name}");
            make_pair_natural(q.graph.clone(), q.induced.clone(), ctx.p(), ctx.chi()).unwrap_or_else(|e| panic!("{name}: {e}"));
            let natural = quotient(
                ctx.graph(),
                &g,
                &lpchi::permgroup::action::Natural(g.degree()),
                &PermGroup::new(g.degree(), lpchi::permgroup::action::induced_permutations(n.generators(), ctx.action()).unwrap()).unwrap(),
            )
            .unwrap();
            assert_eq!(natural.orbits, q.orbits, "{name}: quotient independent of representation");
        }
    }
    assert!(seen > 0);
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    (2usize..=7).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |w| (u, w))).collect();
        let m = pairs.len();
        prop::collection::vec(any::<bool>(), m).prop_map(move |mask| {
            let edges: Vec<(usize, usize)> = pairs.iter().zip(&mask).filter(|(_, &b)| b).map(|(&e, _)| e).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn automorphism_group_matches_brute_force(g in arb_graph()) {
        let aut = automorphism_group(&g, 200).unwrap();
        prop_assert_eq!(aut.order_u64(), Some(brute_automorphism_count(&g) as u64));
        for s in aut.generators() {
            let beta: Vec<usize> = (0..g.vertex_count()).map(|x| s.apply(x)).collect();
            prop_assert!(is_automorphism(&g, &beta));
        }
    }

    #[test]
    fn isomorphism_of_relabelled_graphs(g in arb_graph(), seed in any::<u64>()) {
        let n = g.vertex_count();
        let all = common::all_bijections(n);
        let beta = &all[(seed % all.len() as u64) as usize];
        let h = Graph::from_edges(n, &g.edges().iter().map(|&(u, w)| (beta[u], beta[w])).collect::<Vec<_>>()).unwrap();
        let found = lpchi::graphcore::isomorphism(&g, &h, 200).unwrap().expect("relabelled graphs are isomorphic");
        prop_assert!(g.edges().iter().all(|&(u, w)| h.is_adjacent(found.apply(u), found.apply(w))));
    }
}
