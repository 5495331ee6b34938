//! Finite fields GF(r^k), `k ≤ 3`, on element indices `c0 + r·c1 + r²·c2`.

use crate::arith::is_prime;
use crate::error::{Error, Result};

/// Largest characteristic accepted for prime fields.
const MAX_PRIME: u64 = 211;
/// Largest characteristic accepted for quadratic extensions.
const MAX_QUADRATIC_CHAR: u64 = 13;
/// Largest characteristic accepted for cubic extensions.
const MAX_CUBIC_CHAR: u64 = 5;

/// GF(q) with `q = r^k`, `k ≤ 3`. Elements are indices in `0..q`.
///
/// The quadratic extension is `GF(r)[x]/(x² + x + 1)` for `r = 2` and
/// `GF(r)[x]/(x² + c)` otherwise, with `c ≥ 1` minimal such that `−c` is a
/// non-square mod `r`. The cubic extension uses the root-free monic cubic
/// of least coefficient index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    q: u64,
    r: u64,
    k: u32,
    /// `x^k = Σ s[i]·x^i`.
    s: Vec<u64>,
}

impl Field {
    pub fn new(q: u64) -> Result<Self> {
        if is_prime(q) {
            if q > MAX_PRIME {
                return Err(Error::UnsupportedField(q));
            }
            return Ok(Field { q, r: q, k: 1, s: vec![0] });
        }
        let (r, k) = [2u32, 3]
            .iter()
            .find_map(|&k| {
                let r = (q as f64).powf(1.0 / k as f64).round() as u64;
                (r.pow(k) == q && is_prime(r)).then_some((r, k))
            })
            .ok_or(Error::UnsupportedField(q))?;
        match k {
            2 if r <= MAX_QUADRATIC_CHAR => {
                let s = if r == 2 {
                    vec![1, 1]
                } else {
                    let squares: Vec<u64> = (1..r).map(|a| a * a % r).collect();
                    let c = (1..r).find(|&c| !squares.contains(&(r - c))).expect("non-square exists");
                    vec![(r - c) % r, 0]
                };
                Ok(Field { q, r, k, s })
            }
            3 if r <= MAX_CUBIC_CHAR => {
                let s = (r..r * r * r)
                    .map(|i| vec![(r - i % r) % r, (r - i / r % r) % r, (r - i / (r * r)) % r])
                    .find(|s| (0..r).all(|x| (x * x * x + r * r * r - (s[0] + s[1] * x + s[2] * x * x) % r) % r != 0))
                    .expect("irreducible cubic exists");
                Ok(Field { q, r, k, s })
            }
            _ => Err(Error::UnsupportedField(q)),
        }
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.r
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    /// The defining polynomial as human-readable text.
    pub fn modulus(&self) -> String {
        if self.k == 1 {
            return format!("GF({})", self.r);
        }
        let mut terms = vec![format!("x^{}", self.k)];
        for i in (0..self.k as usize).rev() {
            let c = (self.r - self.s[i]) % self.r;
            match (c, i) {
                (0, _) => {}
                (c, 0) => terms.push(c.to_string()),
                (1, 1) => terms.push("x".into()),
                (c, 1) => terms.push(format!("{c}x")),
                (1, i) => terms.push(format!("x^{i}")),
                (c, i) => terms.push(format!("{c}x^{i}")),
            }
        }
        terms.join("+")
    }

    fn split(&self, a: u32) -> Vec<u64> {
        let mut a = a as u64;
        (0..self.k)
            .map(|_| {
                let c = a % self.r;
                a /= self.r;
                c
            })
            .collect()
    }

    fn join(&self, cs: &[u64]) -> u32 {
        cs.iter().rev().fold(0, |acc, &c| acc * self.r + c) as u32
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (a, b) = (self.split(a), self.split(b));
        let c: Vec<u64> = a.iter().zip(&b).map(|(x, y)| (x + y) % self.r).collect();
        self.join(&c)
    }

    pub fn neg(&self, a: u32) -> u32 {
        let c: Vec<u64> = self.split(a).iter().map(|x| (self.r - x) % self.r).collect();
        self.join(&c)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let (r, k) = (self.r, self.k as usize);
        let (a, b) = (self.split(a), self.split(b));
        let mut prod = vec![0u64; 2 * k - 1];
        for i in 0..k {
            for j in 0..k {
                prod[i + j] = (prod[i + j] + a[i] * b[j]) % r;
            }
        }
        // reduce with x^k = Σ s_i x^i, from the top
        for d in (k..prod.len()).rev() {
            let top = prod[d];
            for i in 0..k {
                prod[d - k + i] = (prod[d - k + i] + top * self.s[i]) % r;
            }
        }
        self.join(&prod[..k])
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.pow(a, self.q - 2))
    }

    /// `a ↦ a^r`.
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.r)
    }

    /// Least-index generator of the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        let n = self.q - 1;
        let factors = crate::arith::prime_divisors(n);
        (1..self.q as u32).find(|&a| factors.iter().all(|&f| self.pow(a, n / f) != 1)).expect("cyclic multiplicative group")
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q as u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axioms_small_fields() {
        for q in [2, 3, 4, 5, 7, 8, 9, 27] {
            let f = Field::new(q).unwrap();
            let els: Vec<u32> = f.elements().collect();
            for &a in &els {
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                assert_eq!(f.add(a, f.neg(a)), 0);
                for &b in &els {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn moduli() {
        assert_eq!(Field::new(9).unwrap().modulus(), "x^2+1");
        assert_eq!(Field::new(25).unwrap().modulus(), "x^2+2");
        assert_eq!(Field::new(49).unwrap().modulus(), "x^2+1");
        assert_eq!(Field::new(4).unwrap().modulus(), "x^2+x+1");
        assert_eq!(Field::new(8).unwrap().modulus(), "x^3+x+1");
        assert_eq!(Field::new(27).unwrap().modulus(), "x^3+2x+1");
        assert_eq!(Field::new(343), Err(Error::UnsupportedField(343)));
        assert_eq!(Field::new(6), Err(Error::UnsupportedField(6)));
    }

    #[test]
    fn primitive_and_frobenius() {
        for q in [4, 8, 9, 25, 27, 49, 11] {
            let f = Field::new(q).unwrap();
            let w = f.primitive_element();
            let mut seen = std::collections::HashSet::new();
            for e in 0..q - 1 {
                seen.insert(f.pow(w, e));
            }
            assert_eq!(seen.len() as u64, q - 1);
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
                }
            }
        }
    }
}
