//! Ambient groups of the census rows.

use num_bigint::BigUint;

use crate::constructions::projective::mobius;
use crate::constructions::{cyclic, direct_product, projective_group, symmetric, wreath, wreath_coordinates, Field, ProjectiveFamily};
use crate::error::Result;
use crate::perm::Permutation;
use crate::permgroup::pgroup::index_two_kernel;
use crate::permgroup::PermGroup;

/// A named ambient group.
pub type Named = (String, PermGroup);

fn named(label: &str, g: PermGroup) -> Named {
    (label.to_string(), g)
}

/// `Sym(3) ≀ Sym(2)`, of order 72.
pub fn sym3_wr_sym2() -> Result<PermGroup> {
    wreath(&symmetric(3)?, &symmetric(2)?)
}

/// Affine group on `F_3^3` generated by translations, coordinate sign
/// changes and the cyclic shift of coordinates. Order 648.
pub fn signed_affine_333() -> Result<PermGroup> {
    let pt = |v: [usize; 3]| v[0] + 3 * v[1] + 9 * v[2];
    let map = |f: &dyn Fn([usize; 3]) -> [usize; 3]| {
        let imgs: Vec<usize> = (0..27).map(|x| pt(f([x % 3, (x / 3) % 3, x / 9]))).collect();
        Permutation::from_usize_images(&imgs)
    };
    let gens = vec![map(&|v| [(v[0] + 1) % 3, v[1], v[2]])?, map(&|v| [(3 - v[0]) % 3, v[1], v[2]])?, map(&|v| [v[1], v[2], v[0]])?];
    PermGroup::build(27, gens, &[], Some(&BigUint::from(648u32)))
}

/// `PGL₂(7) × C₂` on `8 + 2` points.
pub fn pgl27_times_c2() -> Result<PermGroup> {
    direct_product(&projective_group(ProjectiveFamily::Pgl2, 7)?, &cyclic(2)?)
}

/// `⟨(s, 1), (t, c)⟩` on `deg N + 4` points: `N` extended by an involution
/// `t` normalising it, twisted by a 4-cycle `c`. Order `4·|N|` when `t ∉ N`.
pub fn twisted_by_c4(n: &PermGroup, t: &Permutation) -> Result<PermGroup> {
    let d = n.degree() + 4;
    let mut gens: Vec<Permutation> = n.generators().iter().map(|g| g.extend(d)).collect();
    let c = Permutation::from_cycles(4, &[&[0, 1, 2, 3]])?;
    gens.push(t.extend(d).mul(&c.shifted(n.degree(), d)));
    let order = n.order() * BigUint::from(4u32);
    PermGroup::build(d, gens, &[], Some(&order))
}

/// `Sym(6) ⋊ C₄`: `PΣL₂(9)` twisted by `t: z ↦ ω/z`, which lies in `PGL₂(9)`
/// outside `PSL₂(9)`.
pub fn sym6_by_c4() -> Result<PermGroup> {
    let f = Field::new(9)?;
    let t = mobius(&f, f.zero(), f.primitive_element(), f.one(), f.zero(), 0);
    twisted_by_c4(&projective_group(ProjectiveFamily::PSigmaL2, 9)?, &t)
}

/// `PSL₂(7) ⋊ C₄`: `PSL₂(7)` twisted by `t: z ↦ 1/z`, in `PGL₂(7)` outside `PSL₂(7)`.
pub fn psl27_by_c4() -> Result<PermGroup> {
    let f = Field::new(7)?;
    let t = mobius(&f, f.zero(), f.one(), f.one(), f.zero(), 0);
    twisted_by_c4(&projective_group(ProjectiveFamily::Psl2, 7)?, &t)
}

/// The index-two subgroups of `H ≀ Sym(2)` given by `f(h₀) + f(h₁) + b·[swap]`,
/// one functional `f` per listed index-two subgroup `K` of `H` (`f = [h ∉ K]`),
/// plus the base group.
pub fn wreath_index_two(h_label: &str, h: &PermGroup, kernels: &[Named]) -> Result<Vec<Named>> {
    let w = wreath(h, &symmetric(2)?)?;
    let dh = h.degree();
    let swaps = |x: &Permutation| -> bool {
        let (_, top) = wreath_coordinates(x, dh, 2).expect("element of the wreath product");
        !top.is_identity()
    };
    let mut out = vec![(format!("{h_label}^2"), index_two_kernel(&w, swaps)?)];
    for (k_label, k) in kernels {
        for b in [false, true] {
            let parity = |x: &Permutation| -> bool {
                let (base, top) = wreath_coordinates(x, dh, 2).expect("element of the wreath product");
                let s = base.iter().filter(|y| !k.contains(y)).count() % 2 == 1;
                s ^ (b && !top.is_identity())
            };
            let label = if b { format!("ker({k_label}+{k_label}+swap)") } else { format!("ker({k_label}+{k_label})") };
            out.push((label, index_two_kernel(&w, parity)?));
        }
    }
    Ok(out)
}

/// `PΓL₂(9) ≀ Sym(2)` and its seven index-two subgroups.
pub fn pgammal29_wreath() -> Result<PermGroup> {
    wreath(&projective_group(ProjectiveFamily::PGammaL2, 9)?, &symmetric(2)?)
}

pub fn pgammal29_wreath_index_two() -> Result<Vec<Named>> {
    let h = projective_group(ProjectiveFamily::PGammaL2, 9)?;
    let kernels = vec![
        named("pgl2(9)", projective_group(ProjectiveFamily::Pgl2, 9)?),
        named("psigmal2(9)", projective_group(ProjectiveFamily::PSigmaL2, 9)?),
        named("m10", projective_group(ProjectiveFamily::M10, 9)?),
    ];
    wreath_index_two("pgammal2(9)", &h, &kernels)
}

/// `PGL₂(7) ≀ Sym(2)` index-two subgroups.
pub fn pgl27_wreath_index_two() -> Result<Vec<Named>> {
    let h = projective_group(ProjectiveFamily::Pgl2, 7)?;
    let kernels = vec![named("psl2(7)", projective_group(ProjectiveFamily::Psl2, 7)?)];
    wreath_index_two("pgl2(7)", &h, &kernels)
}

/// `PSL₂(q) ≀ Sym(2)`.
pub fn psl2_wreath(q: u64) -> Result<PermGroup> {
    wreath(&projective_group(ProjectiveFamily::Psl2, q)?, &symmetric(2)?)
}

/// The index-at-most-two subgroups of `PΓL₂(9)` containing `PSL₂(9)`.
pub fn pgammal29_and_index_two() -> Result<Vec<Named>> {
    Ok(vec![
        named("pgammal2(9)", projective_group(ProjectiveFamily::PGammaL2, 9)?),
        named("pgl2(9)", projective_group(ProjectiveFamily::Pgl2, 9)?),
        named("m10", projective_group(ProjectiveFamily::M10, 9)?),
        named("psigmal2(9)", projective_group(ProjectiveFamily::PSigmaL2, 9)?),
    ])
}
