mod common;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use common::brute_p_rank;
use lpchi::arith::{constants, e_constant, primes_up_to};
use lpchi::census::search::{search_witness, Ambient};
use lpchi::classify::{arithmetic_lemma_suite, bound_check, dispatch, gv_star_battery, Outcome};
use lpchi::constructions::{cyclic, projective_group, symmetric, wreath, ProjectiveFamily};
use lpchi::permgroup::pgroup::{p_rank, sylow_subgroup};
use lpchi::permgroup::structure::{derived_subgroup, is_normal};
use lpchi::px::{px_pair, PxParams};
use lpchi::{Budget, PermGroup};

fn pow(b: u64, e: u64) -> BigUint {
    BigUint::from(b).pow(e as u32)
}

/// `v_p(n!)` by Legendre's formula.
fn legendre(n: u64, p: u64) -> u64 {
    let mut out = 0;
    let mut q = p;
    while q <= n {
        out += n / q;
        q *= p;
    }
    out
}

fn multiplicative_order(r: u64, p: u64) -> u64 {
    (1..p).find(|&l| pow(r, l).modpow(&BigUint::one(), &BigUint::from(p)) == BigUint::one()).unwrap()
}

#[test]
fn arithmetic_suite_reports_success() {
    let r = arithmetic_lemma_suite().unwrap();
    assert!(r.all_ok(), "{r:?}");
    assert_eq!(r.power_inequality_cases, 15 * 50);
    assert_eq!(r.sylow_cases, (2..=12).map(|n| primes_up_to(n).len() as u64).sum::<u64>());
    assert!(r.lifting_exponent_cases > 0);
}

#[test]
fn power_inequality_directly() {
    for p in primes_up_to(50) {
        for t in 1..=50u64 {
            assert!(pow(p + 1, t + 1) > BigUint::from(p + t + 1) * pow(p, t), "p={p} t={t}");
        }
    }
}

#[test]
fn sylow_bound_directly() {
    for n in 2..=12u64 {
        for p in primes_up_to(n) {
            let order = pow(p, legendre(n, p));
            assert!(order.pow((p - 1) as u32) <= pow(p, n - 1), "n={n} p={p}");
            let s = sylow_subgroup(&symmetric(n as usize).unwrap(), p, 1_000_000).unwrap();
            assert_eq!(s.order(), &order, "n={n} p={p}");
        }
    }
}

#[test]
fn lifting_exponent_directly() {
    let small = primes_up_to(13);
    for &r in &small {
        for &p in small.iter().filter(|&&p| p != r && p != 2) {
            let t = multiplicative_order(r, p);
            let mut e = 0;
            let mut m = pow(r, t) - 1u32;
            while (&m % p).is_zero() {
                m /= p;
                e += 1;
            }
            for f in 1..=60u64 {
                let value = pow(r, f) - 1u32;
                for g in 0..6u64 {
                    let divides = (&value % pow(p, e + g)).is_zero();
                    assert_eq!(divides, f % (p.pow(g as u32) * t) == 0, "r={r} p={p} f={f} g={g}");
                }
            }
        }
    }
}

#[test]
fn constants_match_formulas() {
    assert_eq!(constants(2).unwrap().c_exact, Some(8100));
    let e3 = 6f64.ln() / (4f64 / 3.0).ln();
    assert!((constants(3).unwrap().e - e3).abs() < 1e-6);
    assert!((e_constant(3) - 6.22826).abs() < 1e-5);
    assert!(constants(4).is_err());
}

#[test]
fn wreath_p_rank_formula() {
    let tops = [("C2", cyclic(2).unwrap()), ("Sym(3)", symmetric(3).unwrap())];
    let bases = [("C2", cyclic(2).unwrap()), ("C3", cyclic(3).unwrap()), ("Sym(3)", symmetric(3).unwrap())];
    for (hn, h) in &bases {
        for (kn, k) in &tops {
            let w = wreath(h, k).unwrap();
            for p in [2u64, 3] {
                let expected = if (h.order() % p).is_zero() { k.degree() as u32 * brute_p_rank(h, p) } else { brute_p_rank(k, p) };
                assert_eq!(p_rank(&w, p, 1_000_000).unwrap(), expected, "{hn} wr {kn}, p={p}");
                assert_eq!(brute_p_rank(&w, p), expected, "{hn} wr {kn}, p={p} (oracle)");
            }
        }
    }
}

fn aut_alt(n: usize) -> PermGroup {
    if n == 6 {
        projective_group(ProjectiveFamily::PGammaL2, 9).unwrap()
    } else {
        symmetric(n).unwrap()
    }
}

#[test]
fn p_rank_of_aut_alt() {
    let pgaml = aut_alt(6);
    assert_eq!(pgaml.order_u64(), Some(1440));
    let soc = derived_subgroup(&derived_subgroup(&pgaml));
    assert_eq!(soc.order_u64(), Some(360));
    assert!(is_normal(&pgaml, &soc));
    for n in [5usize, 6, 7] {
        let g = aut_alt(n);
        for p in [2u64, 3, 5] {
            let expected = (n as u64 / p) as u32;
            assert_eq!(p_rank(&g, p, 1_000_000).unwrap(), expected, "n={n} p={p}");
            if n < 7 || p > 2 {
                assert_eq!(brute_p_rank(&g, p), expected, "n={n} p={p} (oracle)");
            }
        }
    }
}

#[test]
fn p_rank_agrees_with_oracle_on_small_groups() {
    for (name, g, p) in [
        ("pgl2(5)", projective_group(ProjectiveFamily::Pgl2, 5).unwrap(), 2u64),
        ("psl2(7)", projective_group(ProjectiveFamily::Psl2, 7).unwrap(), 2),
        ("psl2(8)", projective_group(ProjectiveFamily::Psl2, 8).unwrap(), 2),
        ("sym(4)", symmetric(4).unwrap(), 2),
        ("sym(6)", symmetric(6).unwrap(), 3),
    ] {
        assert_eq!(p_rank(&g, p, 1_000_000).unwrap(), brute_p_rank(&g, p), "{name}");
    }
}

#[test]
fn dispatch_outcomes_and_determinism() {
    let budget = Budget::default();
    for (p, r, s) in [(2, 4, 2), (3, 4, 1), (2, 6, 3)] {
        let ctx = px_pair(PxParams::new(p, r, s).unwrap()).unwrap();
        let a = dispatch(&ctx, &budget).unwrap();
        assert_eq!(a.outcome, Outcome::Px { p, r, s });
        assert_eq!(dispatch(&ctx, &budget).unwrap(), a);
    }
    let w = search_witness(&Ambient::new("sym(5)", symmetric(5).unwrap()), 2, 1, 4, &budget).unwrap().witness.unwrap();
    let rep = dispatch(&w.pair, &budget).unwrap();
    assert_eq!(rep.terminal().kind(), "basic_semisimple");
    assert!(!rep.bounds.met);
    assert_eq!(rep.bounds, bound_check(&w.pair));
    assert!(gv_star_battery(&w.pair, &budget).unwrap().all_ok());
    assert_eq!(rep.vertices, 30);
}
