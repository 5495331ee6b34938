//! Named permutation groups: cyclic, dihedral, symmetric, alternating,
//! elementary abelian, `L(p,χ)`, imprimitive wreath and direct products, and
//! the projective groups over GF(q).

pub mod field;
pub mod projective;
pub mod spec;

use num_bigint::BigUint;

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::permgroup::{factorial, PermGroup};

pub use field::Field;
pub use projective::{projective_group, ProjectiveFamily};
pub use spec::GroupSpec;

fn perm(images: Vec<usize>) -> Permutation {
    Permutation::from_usize_images(&images).expect("constructed bijection")
}

/// Regular cyclic group `C_n` on `n` points.
pub fn cyclic(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::InvalidParams("cyclic(0)".into()));
    }
    PermGroup::new(n, vec![perm((0..n).map(|x| (x + 1) % n).collect())])
}

/// Dihedral group of order `2r` on the `r` vertices of a polygon.
pub fn dihedral(r: usize) -> Result<PermGroup> {
    if r < 3 {
        return Err(Error::InvalidParams(format!("dihedral({r}) needs r >= 3")));
    }
    let rot = perm((0..r).map(|x| (x + 1) % r).collect());
    let refl = perm((0..r).map(|x| (r - x) % r).collect());
    PermGroup::new(r, vec![rot, refl])
}

pub fn symmetric(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::InvalidParams("sym(0)".into()));
    }
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(perm((0..n).map(|x| (x + 1) % n).collect()));
        let mut t: Vec<usize> = (0..n).collect();
        t.swap(0, 1);
        gens.push(perm(t));
    }
    PermGroup::build(n, gens, &[], Some(&factorial(n)))
}

pub fn alternating(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::InvalidParams("alt(0)".into()));
    }
    let gens: Vec<Permutation> = (2..n)
        .map(|k| {
            let mut t: Vec<usize> = (0..n).collect();
            t[0] = 1;
            t[1] = k;
            t[k] = 0;
            perm(t)
        })
        .collect();
    let order = if n >= 2 { factorial(n) / 2u32 } else { BigUint::from(1u32) };
    PermGroup::build(n, gens, &[], Some(&order))
}

/// Regular elementary abelian group of order `p^k` (translations of `Z_p^k`).
pub fn elementary_abelian(p: u64, k: u32) -> Result<PermGroup> {
    if !is_prime(p) {
        return Err(Error::InvalidParams(format!("{p} is not prime")));
    }
    let p = p as usize;
    let n = p.pow(k);
    let gens = (0..k)
        .map(|j| {
            let stride = p.pow(j);
            perm(
                (0..n)
                    .map(|x| {
                        let digit = x / stride % p;
                        x - digit * stride + (digit + 1) % p * stride
                    })
                    .collect(),
            )
        })
        .collect();
    PermGroup::new(n, gens)
}

/// `L(p,1) = C_p × C_p` on `{0..p−1} ∪ {p..2p−1}` and `L(p,2) = C_p ≀ C_2`.
pub fn l_group(p: u64, chi: u32) -> Result<PermGroup> {
    if !is_prime(p) {
        return Err(Error::InvalidParams(format!("{p} is not prime")));
    }
    match chi {
        1 => {
            let c = cyclic(p as usize)?;
            direct_product(&c, &c)
        }
        2 => wreath(&cyclic(p as usize)?, &symmetric(2)?),
        _ => Err(Error::InvalidParams(format!("chi must be 1 or 2, got {chi}"))),
    }
}

/// Imprimitive wreath product `H ≀ K` on `Δ × Λ`; point `(δ, λ)` has index `λ·|Δ| + δ`.
pub fn wreath(h: &PermGroup, k: &PermGroup) -> Result<PermGroup> {
    let (dh, dk) = (h.degree(), k.degree());
    if dh == 0 || dk == 0 {
        return Err(Error::InvalidParams("wreath factors need positive degree".into()));
    }
    let n = dh * dk;
    let mut gens = Vec::new();
    for orbit in k.orbits() {
        let lam = orbit[0];
        for s in h.generators() {
            gens.push(perm(
                (0..n)
                    .map(|x| {
                        let (d, l) = (x % dh, x / dh);
                        if l == lam {
                            l * dh + s.apply(d)
                        } else {
                            x
                        }
                    })
                    .collect(),
            ));
        }
    }
    for t in k.generators() {
        gens.push(perm((0..n).map(|x| t.apply(x / dh) * dh + x % dh).collect()));
    }
    let order = h.order().pow(dk as u32) * k.order();
    PermGroup::build(n, gens, &[], Some(&order))
}

/// Base components `h_λ` and top permutation `k` of `w = (h_0, …, h_{m−1}; k)`
/// in the wreath coordinates of [`wreath`]: `(δ, λ)^w = (δ^{h_λ}, λ^k)`.
pub fn wreath_coordinates(w: &Permutation, dh: usize, dk: usize) -> Result<(Vec<Permutation>, Permutation)> {
    if w.degree() != dh * dk {
        return Err(Error::DegreeMismatch { left: dh * dk, right: w.degree() });
    }
    let top: Vec<usize> = (0..dk).map(|l| w.apply(l * dh) / dh).collect();
    let mut base = Vec::with_capacity(dk);
    for (l, &t) in top.iter().enumerate() {
        let mut imgs = Vec::with_capacity(dh);
        for d in 0..dh {
            let y = w.apply(l * dh + d);
            if y / dh != t {
                return Err(Error::InvalidParams("element does not preserve the block system".into()));
            }
            imgs.push(y % dh);
        }
        base.push(Permutation::from_usize_images(&imgs)?);
    }
    Ok((base, Permutation::from_usize_images(&top)?))
}

/// `H × K` on the disjoint union, `H` on the first `deg H` points.
pub fn direct_product(h: &PermGroup, k: &PermGroup) -> Result<PermGroup> {
    let (dh, dk) = (h.degree(), k.degree());
    let n = dh + dk;
    let mut gens: Vec<Permutation> = h.generators().iter().map(|g| g.extend(n)).collect();
    gens.extend(k.generators().iter().map(|g| g.shifted(dh, n)));
    let order = h.order() * k.order();
    PermGroup::build(n, gens, &[], Some(&order))
}

/// Builds the group described by `spec`.
pub fn make(spec: &GroupSpec) -> Result<PermGroup> {
    match spec {
        GroupSpec::Cyclic(n) => cyclic(*n),
        GroupSpec::Dihedral(r) => dihedral(*r),
        GroupSpec::Symmetric(n) => symmetric(*n),
        GroupSpec::Alternating(n) => alternating(*n),
        GroupSpec::ElemAbelian(p, k) => elementary_abelian(*p, *k),
        GroupSpec::Wreath(h, k) => wreath(&make(h)?, &make(k)?),
        GroupSpec::Direct(h, k) => direct_product(&make(h)?, &make(k)?),
        GroupSpec::Projective(fam, q) => projective_group(*fam, *q),
        GroupSpec::L(p, chi) => l_group(*p, *chi),
    }
}
