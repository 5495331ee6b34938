//! Projective groups acting on the projective line `∞, 0, 1, …` of GF(q).

use std::fmt;

use super::field::Field;
use crate::error::Result;
use crate::perm::Permutation;
use crate::permgroup::PermGroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProjectiveFamily {
    Psl2,
    Pgl2,
    /// PSL₂(q) extended by the field automorphisms.
    PSigmaL2,
    PGammaL2,
    /// PSL₂(9) extended by a diagonal-times-Frobenius map; only for square q.
    M10,
}

impl fmt::Display for ProjectiveFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProjectiveFamily::Psl2 => "psl2",
            ProjectiveFamily::Pgl2 => "pgl2",
            ProjectiveFamily::PSigmaL2 => "psigmal2",
            ProjectiveFamily::PGammaL2 => "pgammal2",
            ProjectiveFamily::M10 => "m10",
        })
    }
}

/// Point index of a field element; `∞` is point 0.
pub fn point_of(z: u32) -> usize {
    z as usize + 1
}

/// `None` stands for `∞`.
fn element_of(x: usize) -> Option<u32> {
    (x > 0).then(|| x as u32 - 1)
}

/// The permutation of the projective line induced by `z ↦ (a·σ(z) + b) / (c·σ(z) + d)`
/// where `σ` is the `j`-th power of the Frobenius map.
pub fn mobius(f: &Field, a: u32, b: u32, c: u32, d: u32, frob: u32) -> Permutation {
    let n = f.order() as usize + 1;
    let sigma = |z: u32| (0..frob).fold(z, |acc, _| f.frobenius(acc));
    let images: Vec<u32> = (0..n)
        .map(|x| {
            let img = match element_of(x) {
                None => {
                    if c == 0 {
                        None
                    } else {
                        Some(f.mul(a, f.inv(c).expect("c non-zero")))
                    }
                }
                Some(z) => {
                    let z = sigma(z);
                    let num = f.add(f.mul(a, z), b);
                    let den = f.add(f.mul(c, z), d);
                    f.inv(den).map(|di| f.mul(num, di))
                }
            };
            img.map_or(0, point_of) as u32
        })
        .collect();
    Permutation::from_images(images).expect("invertible Möbius map")
}

/// Generators: `z+1`, `−1/z`, and `z ↦ ω²z` when `q` is not prime (`ω` primitive);
/// PGL adds `z ↦ ωz`; field-automorphism families add `z ↦ z^r`; M10 adds `z ↦ ω z^r`.
pub fn projective_generators(family: ProjectiveFamily, f: &Field) -> Vec<Permutation> {
    let (zero, one) = (f.zero(), f.one());
    let w = f.primitive_element();
    let mut gens = vec![mobius(f, one, one, zero, one, 0), mobius(f, zero, f.neg(one), one, zero, 0)];
    if f.degree() > 1 {
        gens.push(mobius(f, f.mul(w, w), zero, zero, one, 0));
    }
    match family {
        ProjectiveFamily::Psl2 => {}
        ProjectiveFamily::Pgl2 => gens.push(mobius(f, w, zero, zero, one, 0)),
        ProjectiveFamily::PSigmaL2 => gens.push(mobius(f, one, zero, zero, one, 1)),
        ProjectiveFamily::PGammaL2 => {
            gens.push(mobius(f, w, zero, zero, one, 0));
            gens.push(mobius(f, one, zero, zero, one, 1));
        }
        ProjectiveFamily::M10 => gens.push(mobius(f, w, zero, zero, one, 1)),
    }
    gens.retain(|g| !g.is_identity());
    gens
}

/// `|PSL₂(q)| = q(q²−1)/gcd(2,q−1)` and the index of each family over it.
pub fn projective_order(family: ProjectiveFamily, f: &Field) -> u64 {
    let q = f.order();
    let d = if q % 2 == 1 { 2 } else { 1 };
    let psl = q * (q * q - 1) / d;
    let k = f.degree() as u64;
    match family {
        ProjectiveFamily::Psl2 => psl,
        ProjectiveFamily::Pgl2 => psl * d,
        ProjectiveFamily::PSigmaL2 => psl * k,
        ProjectiveFamily::PGammaL2 => psl * d * k,
        ProjectiveFamily::M10 => psl * 2,
    }
}

pub fn projective_group(family: ProjectiveFamily, q: u64) -> Result<PermGroup> {
    let f = Field::new(q)?;
    if family == ProjectiveFamily::M10 && (f.degree() != 2 || q.is_multiple_of(2)) {
        return Err(crate::Error::InvalidParams(format!("m10 needs an odd square field order, got {q}")));
    }
    PermGroup::new(q as usize + 1, projective_generators(family, &f))
}
