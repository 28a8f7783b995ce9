//! Closed-form generators and one-parameter subgroups.
//!
//! `Ãᵢ¹(a)` acts on slot `i` by a boost (`i = 2, 3`) or rotation (`i = 1`)
//! mixing `ξᵢ₊₁, ξᵢ₊₂` and `xᵢ`, while permuting the other two slots via
//! left/right multiplication by `a`. The nilpotent generators `𝒢₁(x)`,
//! `𝒢₂(p)` are given on the splitting `CoordView` of `𝒥¹`.

use serde::{Deserialize, Serialize};

use super::{matrix_from_fn, AlgebraElement, GroupElement};
use crate::error::{Error, Result};
use crate::jordan::{CoordView, JordanElement};
use crate::octonion::Octonion;

/// Unit-norm tolerance for directions of `Ãᵢ¹(a)`.
const UNIT_TOL: f64 = 1e-12;
/// Tolerance for the real part of the `𝒢±₂` parameter.
const IMAG_TOL: f64 = 1e-12;

/// Root level of a nilpotent generator: `𝒢₁, 𝒢₂, 𝒢₋₁, 𝒢₋₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GLevel {
    P1,
    P2,
    M1,
    M2,
}

impl GLevel {
    /// Eigenvalue of `ad Ã₃¹(1)` on this root space.
    pub fn weight(self) -> i32 {
        match self {
            GLevel::P1 => 1,
            GLevel::P2 => 2,
            GLevel::M1 => -1,
            GLevel::M2 => -2,
        }
    }

    pub fn from_weight(w: i32) -> Option<GLevel> {
        match w {
            1 => Some(GLevel::P1),
            2 => Some(GLevel::P2),
            -1 => Some(GLevel::M1),
            -2 => Some(GLevel::M2),
            _ => None,
        }
    }
}

/// `N⁺` or `N⁻`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NLevel {
    Plus,
    Minus,
}

fn check_slot(i: usize) -> Result<usize> {
    if (1..=3).contains(&i) {
        Ok(i - 1)
    } else {
        Err(Error::invalid(format!("slot index must be 1, 2 or 3, got {i}")))
    }
}

fn check_imaginary(p: &Octonion) -> Result<()> {
    if p.re().abs() > IMAG_TOL * p.norm().max(1.0) {
        return Err(Error::invalid(format!("parameter must be imaginary, re = {}", p.re())));
    }
    Ok(())
}

/// Sign of the slot-mixing terms of the boosts `Ãᵢ¹(a)`, `i = 2, 3`.
///
/// With the cross product fixed as in [`JordanElement::cross_square`], the
/// two boosts differ: for `i = 3` the mixing terms enter with `+`, for
/// `i = 2` with `−`. Any other choice fails the automorphism check.
fn slot_mix_sign(k: usize) -> f64 {
    if k == 1 {
        -1.0
    } else {
        1.0
    }
}

/// Action of `Ãᵢ¹(a)` on `X` (linear in `a`).
fn a_tilde_apply(k: usize, a: Octonion, x: &JordanElement) -> JordanElement {
    let k1 = (k + 1) % 3;
    let k2 = (k + 2) % 3;
    let xi = x.xi;
    let xs = x.x;
    let mut out = JordanElement::ZERO;
    let ax = a.inner(&xs[k]);
    out.x[k] = a * -(xi[k1] - xi[k2]);
    if k == 0 {
        out.xi[k1] = 2.0 * ax;
        out.xi[k2] = -2.0 * ax;
        out.x[k1] = -(xs[k2] * a).conj();
        out.x[k2] = (a * xs[k1]).conj();
    } else {
        let mix = slot_mix_sign(k);
        out.xi[k1] = -2.0 * ax;
        out.xi[k2] = 2.0 * ax;
        out.x[k1] = (xs[k2] * a).conj() * mix;
        out.x[k2] = (a * xs[k1]).conj() * mix;
    }
    out
}

/// `Ãᵢ¹(a)` for `i ∈ 1..=3`, `a ≠ 0`.
pub fn gen_a(i: usize, a: Octonion) -> Result<AlgebraElement> {
    let k = check_slot(i)?;
    if a.norm_sq() == 0.0 {
        return Err(Error::invalid("Ã direction must be nonzero"));
    }
    Ok(AlgebraElement::from_fn(|x| a_tilde_apply(k, a, x)))
}

/// `Ãᵢ¹(a)` allowing `a = 0`; internal building block for sums.
pub(crate) fn gen_a_any(i: usize, a: Octonion) -> AlgebraElement {
    AlgebraElement::from_fn(|x| a_tilde_apply(i - 1, a, x))
}

/// Action of `𝒢₁(x)` on `X` in the splitting coordinates.
fn g1_apply(x: Octonion, el: &JordanElement) -> JordanElement {
    let c = el.coords();
    let y = c.y;
    let xy = x.inner(&y);
    c.r * JordanElement::q_minus(-x)
        + c.v * JordanElement::q_plus(x)
        + JordanElement::q_plus(-(c.p * x))
        + (2.0 * x.inner(&c.x)) * JordanElement::p_minus()
        + (2.0 * xy) * (JordanElement::unit() - 3.0 * JordanElement::e(3))
        + JordanElement::f(3, (x * y.conj()).im() * 2.0)
}

/// Action of `𝒢₂(p)` on `X` in the splitting coordinates.
fn g2_apply(p: Octonion, el: &JordanElement) -> JordanElement {
    let c = el.coords();
    JordanElement::f(3, p * (-2.0 * c.r))
        + (-2.0 * p.inner(&c.p)) * JordanElement::p_minus()
        + JordanElement::q_plus(-(p * c.y) * 2.0)
}

/// `𝒢_level(param)`. Levels `±2` require an imaginary parameter. The
/// negative levels are the conjugates `σ𝒢₊σ`.
pub fn gen_g(level: GLevel, param: Octonion) -> Result<AlgebraElement> {
    if matches!(level, GLevel::P2 | GLevel::M2) {
        check_imaginary(&param)?;
    }
    let plus = match level {
        GLevel::P1 | GLevel::M1 => AlgebraElement::from_fn(|x| g1_apply(param, x)),
        GLevel::P2 | GLevel::M2 => AlgebraElement::from_fn(|x| g2_apply(param, x)),
    };
    Ok(match level {
        GLevel::P1 | GLevel::P2 => plus,
        GLevel::M1 | GLevel::M2 => {
            let s = sigma(1);
            AlgebraElement::new(s.mat * plus.mat * s.mat)
        }
    })
}

/// Closed form of `exp(tÃᵢ¹(a))X` for unit `a`.
fn exp_a_apply(k: usize, t: f64, a: Octonion, x: &JordanElement) -> JordanElement {
    let k1 = (k + 1) % 3;
    let k2 = (k + 2) % 3;
    let xi = x.xi;
    let xs = x.x;
    let ax = a.inner(&xs[k]);
    let sum = xi[k1] + xi[k2];
    let diff = xi[k1] - xi[k2];
    let mut out = *x;
    if k == 0 {
        let (s2, c2) = (2.0 * t).sin_cos();
        let (s, c) = t.sin_cos();
        out.xi[k1] = 0.5 * (sum + diff * c2) + ax * s2;
        out.xi[k2] = 0.5 * (sum - diff * c2) - ax * s2;
        out.x[k] = xs[k] - a * (0.5 * diff * s2) - a * (2.0 * ax * s * s);
        out.x[k1] = xs[k1] * c - (xs[k2] * a).conj() * s;
        out.x[k2] = xs[k2] * c + (a * xs[k1]).conj() * s;
    } else {
        let (s2, c2) = ((2.0 * t).sinh(), (2.0 * t).cosh());
        let (s, c) = (t.sinh(), t.cosh());
        out.xi[k1] = 0.5 * (sum + diff * c2) - ax * s2;
        out.xi[k2] = 0.5 * (sum - diff * c2) + ax * s2;
        out.x[k] = xs[k] - a * (0.5 * diff * s2) + a * (2.0 * ax * s * s);
        let mix = slot_mix_sign(k);
        out.x[k1] = xs[k1] * c + (xs[k2] * a).conj() * (mix * s);
        out.x[k2] = xs[k2] * c + (a * xs[k1]).conj() * (mix * s);
    }
    out
}

/// `exp(tÃᵢ¹(a))` for a unit octonion `a`.
pub fn exp_a(i: usize, t: f64, a: Octonion) -> Result<GroupElement> {
    let k = check_slot(i)?;
    if (a.norm_sq() - 1.0).abs() > UNIT_TOL {
        return Err(Error::invalid(format!("Ã direction must be a unit octonion, |a|² = {}", a.norm_sq())));
    }
    if !t.is_finite() {
        return Err(Error::invalid("parameter t must be finite"));
    }
    GroupElement::new(matrix_from_fn(|x| exp_a_apply(k, t, a, x)))
}

/// Closed form of `exp𝒢₁(x)X`.
pub fn exp_g1(x: Octonion, el: &JordanElement) -> JordanElement {
    let c: CoordView = el.coords();
    let xx = x.norm_sq();
    let pm = JordanElement::p_minus();
    let e_3e3 = JordanElement::unit() - 3.0 * JordanElement::e(3);
    let e12 = JordanElement::e(2) - JordanElement::e(1);
    let y = c.y;
    let xy = x.inner(&y);
    let im_xy = (x * y.conj()).im();

    let r_img = e12 + JordanElement::q_minus(-x) - xx * e_3e3
        + JordanElement::q_plus(x * xx)
        + (0.5 * xx * xx) * pm;
    let v_img = JordanElement::e(3) + JordanElement::q_plus(x) + xx * pm;
    let p_img = JordanElement::f(3, c.p) + JordanElement::q_plus(-(c.p * x));
    let qp_img = JordanElement::q_plus(c.x) + (2.0 * x.inner(&c.x)) * pm;
    let qm_img = JordanElement::q_minus(y)
        + (2.0 * xy) * e_3e3
        + JordanElement::f(3, im_xy * 2.0)
        + JordanElement::q_plus(x * (-3.0 * xy) - im_xy * x)
        - (2.0 * xy * xx) * pm;

    c.r * r_img + c.s * pm + c.u * JordanElement::unit() + c.v * v_img + p_img + qp_img + qm_img
}

/// Closed form of `exp𝒢₂(p)X` for imaginary `p`.
pub fn exp_g2(p: Octonion, el: &JordanElement) -> JordanElement {
    let c = el.coords();
    let pm = JordanElement::p_minus();
    let e12 = JordanElement::e(2) - JordanElement::e(1);
    let r_img = e12 + JordanElement::f(3, p * -2.0) + (2.0 * p.norm_sq()) * pm;
    let f_img = JordanElement::f(3, c.p) - (2.0 * p.inner(&c.p)) * pm;
    let qm_img = JordanElement::q_minus(c.y) + JordanElement::q_plus(-(p * c.y) * 2.0);
    c.r * r_img
        + c.s * pm
        + c.u * JordanElement::unit()
        + c.v * JordanElement::e(3)
        + f_img
        + JordanElement::q_plus(c.x)
        + qm_img
}

/// `exp(𝒢±₁(x) + 𝒢±₂(p)) = exp𝒢±₂(p)·exp𝒢±₁(x)`.
pub fn exp_n(level: NLevel, x: Octonion, p: Octonion) -> Result<GroupElement> {
    check_imaginary(&p)?;
    if x.0.iter().chain(p.0.iter()).any(|v| !v.is_finite()) {
        return Err(Error::invalid("N parameters must be finite"));
    }
    let plus = matrix_from_fn(|el| exp_g2(p, &exp_g1(x, el)));
    let mat = match level {
        NLevel::Plus => plus,
        NLevel::Minus => {
            let s = sigma(1);
            s.mat * plus * s.mat
        }
    };
    GroupElement::new(mat)
}

/// `σᵢ`: flips the sign of the two off-diagonal slots other than `i`.
///
/// Panics if `i` is not in `1..=3`.
pub fn sigma(i: usize) -> GroupElement {
    let k = check_slot(i).expect("sigma index in 1..=3");
    let mut m = crate::linalg::Mat27::identity();
    for slot in 0..3 {
        if slot != k {
            for j in 0..8 {
                let d = 3 + 8 * slot + j;
                m[(d, d)] = -1.0;
            }
        }
    }
    GroupElement::trusted(m, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liegroup::expm;
    use crate::octonion::{ONE, ZERO};

    type J = JordanElement;

    fn e(i: usize) -> Octonion {
        Octonion::basis(i)
    }

    fn sample() -> J {
        J::h(
            0.3,
            -1.2,
            0.7,
            "0.2+e1-0.4e5".parse().unwrap(),
            "1-0.3e2+0.5e7".parse().unwrap(),
            "-0.6+0.8e3+0.1e4".parse().unwrap(),
        )
    }

    #[test]
    fn gen_a_examples() {
        let a3 = gen_a(3, ONE).unwrap();
        assert!(a3.apply(&J::p_minus()).max_abs_diff(&(2.0 * J::p_minus())) < 1e-15);
        assert_eq!(gen_a(1, ONE).unwrap().apply(&J::e(1)), J::ZERO);
        assert!(gen_a(2, e(5)).unwrap().derivation_residual() < 1e-10);
        assert!(gen_a(1, ZERO).is_err());
        assert!(gen_a(4, ONE).is_err());
    }

    #[test]
    fn every_generator_is_a_derivation() {
        let a: Octonion = "0.3-0.2e1+0.5e4+e6".parse().unwrap();
        for i in 1..=3 {
            assert!(gen_a(i, a).unwrap().derivation_residual() < 1e-10, "A{i}");
        }
        let p: Octonion = "0.7e2-0.1e5+0.4e7".parse().unwrap();
        for level in [GLevel::P1, GLevel::M1] {
            assert!(gen_g(level, a).unwrap().derivation_residual() < 1e-10);
        }
        for level in [GLevel::P2, GLevel::M2] {
            assert!(gen_g(level, p).unwrap().derivation_residual() < 1e-10);
        }
    }

    #[test]
    fn gen_g_examples() {
        let p = e(3);
        assert_eq!(gen_g(GLevel::P2, p).unwrap().apply(&J::p_minus()), J::ZERO);
        let x: Octonion = "1+2e3".parse().unwrap();
        let img = gen_g(GLevel::P1, x).unwrap().apply(&J::e(3));
        assert!(img.max_abs_diff(&J::q_plus(x)) < 1e-15);
        assert!(gen_g(GLevel::P2, ONE).is_err());
    }

    #[test]
    fn g1_is_sum_of_a_tildes() {
        let x: Octonion = "0.3-0.2e1+0.5e4+e6".parse().unwrap();
        let plus = gen_a_any(1, x).add(&gen_a_any(2, -x.conj()));
        let minus = gen_a_any(1, x).add(&gen_a_any(2, x.conj()));
        assert!((gen_g(GLevel::P1, x).unwrap().mat - plus.mat).amax() < 1e-14);
        assert!((gen_g(GLevel::M1, x).unwrap().mat - minus.mat).amax() < 1e-14);
    }

    #[test]
    fn exp_a_examples() {
        let x = sample();
        let g = exp_a(1, std::f64::consts::FRAC_PI_2, ONE).unwrap();
        let want = J::h(x.xi[0], x.xi[2], x.xi[1], -x.x[0].conj(), -x.x[2].conj(), x.x[1].conj());
        assert!(g.apply(&x).max_abs_diff(&want) < 1e-14);
        assert!(exp_a(3, 0.0, ONE).unwrap().distance(&GroupElement::identity()) < 1e-15);
        let t = 0.37;
        let moved = exp_a(3, t, ONE).unwrap().apply(&J::p_minus());
        assert!(moved.max_abs_diff(&((2.0 * t).exp() * J::p_minus())) < 1e-14);
        assert!(exp_a(2, 0.1, ONE * 2.0).is_err());
    }

    #[test]
    fn exp_a_matches_expm() {
        let a = "0.5e1-0.5e2+0.5e4+0.5".parse::<Octonion>().unwrap();
        for i in 1..=3 {
            for t in [-0.8, 0.3, 1.1] {
                let closed = exp_a(i, t, a).unwrap();
                let series = expm(&gen_a(i, a).unwrap().scale(t)).unwrap();
                assert!(closed.distance(&series) < 1e-10, "i={i} t={t}");
            }
        }
    }

    #[test]
    fn exp_n_examples() {
        assert!(exp_n(NLevel::Plus, ZERO, ZERO).unwrap().distance(&GroupElement::identity()) < 1e-15);
        let x: Octonion = "0.4-e2+0.3e7".parse().unwrap();
        let p: Octonion = "0.2e1-0.6e5".parse().unwrap();
        let g = exp_n(NLevel::Plus, x, p).unwrap();
        assert!(g.apply(&J::p_minus()).max_abs_diff(&J::p_minus()) < 1e-14);
        let g = exp_n(NLevel::Plus, x, ZERO).unwrap();
        let want = J::e(3) + J::q_plus(x) + x.norm_sq() * J::p_minus();
        assert!(g.apply(&J::e(3)).max_abs_diff(&want) < 1e-14);
        assert!(exp_n(NLevel::Plus, x, ONE).is_err());
    }

    #[test]
    fn exp_n_matches_expm() {
        let x: Octonion = "0.4-e2+0.3e7".parse().unwrap();
        let p: Octonion = "0.2e1-0.6e5".parse().unwrap();
        for (lvl, g1, g2) in [
            (NLevel::Plus, GLevel::P1, GLevel::P2),
            (NLevel::Minus, GLevel::M1, GLevel::M2),
        ] {
            let closed = exp_n(lvl, x, p).unwrap();
            let phi = gen_g(g1, x).unwrap().add(&gen_g(g2, p).unwrap());
            let series = expm(&phi).unwrap();
            assert!(closed.distance(&series) < 1e-10);
        }
    }

    #[test]
    fn sigma_examples() {
        let s = sigma(1);
        assert_eq!(s.apply(&J::p_minus()), J::sigma_p_minus());
        assert_eq!(s.apply(&J::e(2)), J::e(2));
        assert_eq!(s.mat * s.mat, crate::linalg::Mat27::identity());
    }
}
