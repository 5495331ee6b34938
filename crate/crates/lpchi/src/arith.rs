//! Exact integer helpers and the stabiliser-bound constants.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime(k)).collect()
}

/// Prime factors with multiplicity collapsed, ascending.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn prime_divisors_big(n: &BigUint) -> Vec<u64> {
    let mut out = Vec::new();
    let mut m = n.clone();
    let mut d: u64 = 2;
    while BigUint::from(d) * BigUint::from(d) <= m {
        if (&m % d).is_zero() {
            out.push(d);
            while (&m % d).is_zero() {
                m /= d;
            }
        }
        d += 1;
    }
    if m > BigUint::one() {
        out.push(u64::try_from(m).expect("prime factor fits"));
    }
    out
}

/// Smallest `ℓ ≥ 1` with `q^ℓ ≡ 1 (mod p)`.
pub fn ord(p: u64, q: u64) -> Result<u64> {
    if p == q {
        return Err(Error::InvalidParams(format!("ord requires distinct primes, got p = q = {p}")));
    }
    if !is_prime(p) || !is_prime(q) {
        return Err(Error::InvalidParams(format!("ord requires primes, got p = {p}, q = {q}")));
    }
    let r = q % p;
    let mut x = r;
    let mut l = 1;
    while x != 1 {
        x = x * r % p;
        l += 1;
    }
    Ok(l)
}

/// `e(p) = ln(2p) / ln(1 + 1/p)`.
pub fn e_constant(p: u64) -> f64 {
    let p = p as f64;
    (2.0 * p).ln() / (1.0 + 1.0 / p).ln()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Constants {
    pub p: u64,
    pub e: f64,
    /// Exact for `p = 2`.
    pub c_exact: Option<u64>,
    pub c: f64,
    /// `c` to four significant digits.
    pub c_display: String,
}

/// `e(p)` and the vertex-count cutoff `c(p)`.
pub fn constants(p: u64) -> Result<Constants> {
    if !is_prime(p) {
        return Err(Error::InvalidParams(format!("{p} is not prime")));
    }
    let e = e_constant(p);
    let (c_exact, c) = if p == 2 { (Some(8100), 8100.0) } else { (None, 2.0 * e * (p as f64).powf(e + 1.0)) };
    Ok(Constants { p, e, c_exact, c, c_display: four_sig(c) })
}

fn four_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let s = format!("{:.3e}", x);
    let (mant, exp) = s.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (0..6).contains(&exp) {
        let digits = (3 - exp).max(0) as usize;
        format!("{:.*}", digits, x)
    } else {
        format!("{mant}e{exp}")
    }
}

/// `rhs = 2 t p^{t+1}` of the vertex bound for `|G_v*| = p^t`.
pub fn bound_rhs(p: u64, t: u32) -> BigUint {
    BigUint::from(2u32) * BigUint::from(t) * BigUint::from(p).pow(t + 1)
}

pub fn big_pow(b: u64, e: u32) -> BigUint {
    BigUint::from(b).pow(e)
}

/// `(p+1)^{t+1} > (p+t+1) p^t`.
pub fn lemma_power_inequality(p: u64, t: u32) -> bool {
    big_pow(p + 1, t + 1) > BigUint::from(p + t as u64 + 1) * big_pow(p, t)
}

/// For distinct primes `r`, odd `p`: with `t = ord_p(r)` and `p^e ∥ r^t − 1`,
/// checks `p^{e+g} | r^f − 1 ⇔ p^g t | f` for `f ≤ f_max` and every `g`
/// with `p^{e+g} ≤ r^{f_max}`. Returns the number of checked instances.
pub fn lemma_lifting_exponent(r: u64, p: u64, f_max: u32) -> Result<u64> {
    let t = ord(p, r)?;
    let rt1 = big_pow(r, t as u32) - BigUint::one();
    let mut e = 0u32;
    let mut m = rt1.clone();
    while (&m % p).is_zero() {
        m /= p;
        e += 1;
    }
    let limit = big_pow(r, f_max);
    let mut checked = 0;
    let mut g = 0u32;
    while big_pow(p, e + g) <= limit {
        let modulus = big_pow(p, e + g);
        let step = big_pow(p, g) * BigUint::from(t);
        for f in 1..=f_max {
            let lhs = ((big_pow(r, f) - BigUint::one()) % &modulus).is_zero();
            let rhs = (BigUint::from(f) % &step).is_zero();
            if lhs != rhs {
                return Err(Error::Contradiction(format!("lifting exponent fails at r={r}, p={p}, g={g}, f={f}")));
            }
            checked += 1;
        }
        g += 1;
    }
    Ok(checked)
}

/// `p^{p-1}`-free comparison `|P|^{p-1} ≤ p^{n-1}` for a Sylow order `|P|`.
pub fn sylow_bound_holds(order: &BigUint, p: u64, n: u32) -> bool {
    order.pow((p - 1) as u32) <= big_pow(p, n.saturating_sub(1))
}

/// `p ↦ p^{1/(p−1)}` strictly decreasing on consecutive entries of `primes`,
/// compared exactly as `p^{q−1} > q^{p−1}` for `p < q`.
pub fn root_sequence_decreasing(primes: &[u64]) -> bool {
    primes.windows(2).all(|w| {
        let (p, q) = (w[0], w[1]);
        big_pow(p, (q - 1) as u32) > big_pow(q, (p - 1) as u32)
    })
}
