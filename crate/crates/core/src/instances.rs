//! The built-in instance set: small normal ads, crossed squares and
//! surjections on which the verification batteries run.

use crate::error::Result;
use crate::group::catalog::{cyclic, dihedral, quaternion, symmetric};
use crate::group::{closure, normal_closure, quotient, Elem, GroupHom, NormalAd};

/// `(Q8; ⟨i⟩, ⟨j⟩)`.
pub fn q8_ij() -> Result<NormalAd> {
    let q = quaternion();
    let g = q.generators();
    NormalAd::new(&q, vec![closure(&q, &[g[0].clone()])?, closure(&q, &[g[1].clone()])?])
}

/// `(Q8; {±1})`.
pub fn q8_centre() -> Result<NormalAd> {
    let q = quaternion();
    let g = q.generators();
    let minus = q.mul(&g[0], &g[0]);
    NormalAd::new(&q, vec![closure(&q, &[minus])?])
}

/// `(D4; ⟨r⟩, ⟨r², s⟩)` for the symmetries `r`, `s` of a square.
pub fn d4_square() -> Result<NormalAd> {
    let d = dihedral(4);
    let g = d.generators();
    let r2 = d.mul(&g[0], &g[0]);
    NormalAd::new(&d, vec![closure(&d, &[g[0].clone()])?, closure(&d, &[r2, g[1].clone()])?])
}

/// `(S3; A3)`.
pub fn s3_a3() -> Result<NormalAd> {
    let s = symmetric(3);
    NormalAd::new(&s, vec![normal_closure(&s, &[Elem::from_slice(&[1, 2, 0])])?])
}

/// `(S4; A4, V4)`.
pub fn s4_a4_v4() -> Result<NormalAd> {
    let s = symmetric(4);
    let a4 = normal_closure(&s, &[Elem::from_slice(&[1, 2, 0, 3])])?;
    let v4 = closure(&s, &[Elem::from_slice(&[1, 0, 3, 2]), Elem::from_slice(&[2, 3, 0, 1])])?;
    NormalAd::new(&s, vec![a4, v4])
}

/// `(Q8; ⟨i⟩, {±1}, ⟨j⟩)`.
pub fn q8_three() -> Result<NormalAd> {
    let q = quaternion();
    let g = q.generators();
    let minus = q.mul(&g[0], &g[0]);
    NormalAd::new(
        &q,
        vec![closure(&q, &[g[0].clone()])?, closure(&q, &[minus])?, closure(&q, &[g[1].clone()])?],
    )
}

/// Normal ads with one or two terms used by the crossed and Hopf batteries.
pub fn small_ads() -> Result<Vec<(&'static str, NormalAd)>> {
    Ok(vec![
        ("(S3; A3)", s3_a3()?),
        ("(Q8; {±1})", q8_centre()?),
        ("(Q8; <i>, <j>)", q8_ij()?),
        ("(D4; <r>, <r^2,s>)", d4_square()?),
        ("(S4; A4, V4)", s4_a4_v4()?),
    ])
}

/// The two inclusion squares of the multinerve batteries.
pub fn square_ads() -> Result<Vec<(&'static str, NormalAd)>> {
    Ok(vec![("(Q8; <i>, <j>)", q8_ij()?), ("(D4; <r>, <r^2,s>)", d4_square()?)])
}

/// `Q8 ↠ V4`, the quotient by the centre.
pub fn q8_onto_v4() -> Result<GroupHom> {
    let ad = q8_centre()?;
    Ok(quotient(ad.ambient(), ad.part(1))?.projection)
}

/// `Z/4 ↠ Z/2`.
pub fn z4_onto_z2() -> Result<GroupHom> {
    let z = cyclic(4);
    let two = closure(&z, &[Elem::scalar(2)])?;
    Ok(quotient(&z, &two)?.projection)
}

/// `D4 ↠ V4`, the quotient by `⟨r²⟩`.
pub fn d4_onto_v4() -> Result<GroupHom> {
    let d = dihedral(4);
    let g = d.generators();
    let centre = closure(&d, &[d.mul(&g[0], &g[0])])?;
    Ok(quotient(&d, &centre)?.projection)
}

/// The surjections of the Čech batteries.
pub fn surjections() -> Result<Vec<(&'static str, GroupHom)>> {
    Ok(vec![("Z/4 -> Z/2", z4_onto_z2()?), ("Q8 -> V4", q8_onto_v4()?), ("D4 -> V4", d4_onto_v4()?)])
}
