//! Harmonic analysis on the rank-one space `F₄₍₋₂₀₎/Spin(9)`: the
//! Iwasawa projection on `N̄`, the Harish-Chandra c-function and the
//! spherical functions along `A`.
//!
//! Spectral parameters are given by `λ_α = 2⟨λ,α⟩/⟨α,α⟩`, so `ρ_α = 22`
//! (root multiplicities 8 and 7).

mod gamma;
mod quadrature;

use std::sync::OnceLock;

use nalgebra::{DMatrix, SMatrix};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liegroup::{basis52, gen_a, gen_g, sigma, AlgebraElement, GLevel};
use crate::octonion::{Octonion, ONE};

pub use gamma::{gamma_real, ln_gamma};
pub use quadrature::{geometric_breaks, integrate, QuadResult};

pub const M_ALPHA: u32 = 8;
pub const M_2ALPHA: u32 = 7;
/// `ρ_α = m_α + 2m_{2α}`.
pub const RHO_ALPHA: f64 = 22.0;

/// `λ ∈ 𝔞*_ℂ` in the coordinate `λ_α`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralParam {
    pub re: f64,
    pub im: f64,
}

impl SpectralParam {
    pub fn new(re: f64, im: f64) -> Self {
        SpectralParam { re, im }
    }

    pub fn real(re: f64) -> Self {
        SpectralParam { re, im: 0.0 }
    }

    pub fn rho() -> Self {
        SpectralParam::real(RHO_ALPHA)
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

impl From<f64> for SpectralParam {
    fn from(re: f64) -> Self {
        SpectralParam::real(re)
    }
}

impl From<Complex64> for SpectralParam {
    fn from(z: Complex64) -> Self {
        SpectralParam::new(z.re, z.im)
    }
}

/// Controls for the radial quadratures.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Relative accuracy requested from each integral.
    pub rel_tol: f64,
    /// Panel budget of one adaptive integration.
    pub max_panels: usize,
    /// The truncated tail is bounded by `tail_fraction·rel_tol` times the
    /// size of the integral.
    pub tail_fraction: f64,
    /// Overrides the automatic truncation radius.
    pub radius: Option<f64>,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { rel_tol: 1e-6, max_panels: 4000, tail_fraction: 1e-3, radius: None }
    }
}

impl QuadratureSpec {
    /// The same spec with the tolerance divided by `factor`.
    pub fn refined(&self, factor: f64) -> Self {
        QuadratureSpec { rel_tol: self.rel_tol / factor, max_panels: self.max_panels * 2, ..*self }
    }

    fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) || self.max_panels == 0 {
            return Err(Error::invalid("quadrature tolerance must lie in (0, 1)"));
        }
        if !(self.tail_fraction > 0.0 && self.tail_fraction <= 1.0) {
            return Err(Error::invalid("tail fraction must lie in (0, 1]"));
        }
        if let Some(r) = self.radius {
            if !(r.is_finite() && r > 0.0) {
                return Err(Error::invalid("truncation radius must be positive"));
            }
        }
        Ok(())
    }
}

/// `H(z)` for `z = exp𝒢₋₁(x)exp𝒢₋₂(p)`, shifted by `a_t`: the coefficient of
/// `Ã₃¹(1)` in the `𝔞`-projection of `a_t z`,
/// `½log(e^{−2t}((e^{2t} + |x|²)² + 4|p|²))`.
pub fn h_nbar(x: &Octonion, p: &Octonion, t: f64) -> f64 {
    let e = (2.0 * t).exp();
    let r = e + x.norm_sq();
    0.5 * ((r * r + 4.0 * p.norm_sq()).ln() - 2.0 * t)
}

/// `⟨α, α⟩` for the form dual to the Killing form, with `α(Ã₃¹(1)) = 1`.
pub fn alpha_norm() -> Result<f64> {
    static CACHE: OnceLock<Result<f64>> = OnceLock::new();
    CACHE
        .get_or_init(|| {
            let h = gen_a(3, ONE)?;
            let b = crate::liegroup::killing(&h, &h)?;
            Ok(1.0 / b)
        })
        .clone()
}

fn sigma_conj(phi: &AlgebraElement) -> AlgebraElement {
    let s = sigma(1);
    AlgebraElement::new(s.mat() * phi.mat * s.mat())
}

/// `Q(φ) = −⟨α,α⟩B(φ, σ̃φ)`, positive definite on `𝔫̄`.
pub fn q_form(phi: &AlgebraElement) -> Result<f64> {
    Ok(-alpha_norm()? * crate::liegroup::killing(phi, &sigma_conj(phi))?)
}

struct QGrams {
    level1: SMatrix<f64, 8, 8>,
    level2: SMatrix<f64, 7, 7>,
}

/// Gram matrices of `Q` on `𝔤₋α` and `𝔤₋₂α` in the octonion coordinates,
/// assembled from the Killing form once.
fn q_grams() -> Result<&'static QGrams> {
    static CACHE: OnceLock<Result<QGrams>> = OnceLock::new();
    CACHE
        .get_or_init(|| {
            let b = basis52()?;
            let scale = -alpha_norm()?;
            let gram = |level: GLevel, params: &[Octonion]| -> Result<DMatrix<f64>> {
                let ad: Vec<DMatrix<f64>> = params
                    .iter()
                    .map(|&a| gen_g(level, a).map(|g| b.ad(&g)))
                    .collect::<Result<_>>()?;
                let ads: Vec<DMatrix<f64>> = params
                    .iter()
                    .map(|&a| gen_g(level, a).map(|g| b.ad(&sigma_conj(&g))))
                    .collect::<Result<_>>()?;
                let n = params.len();
                Ok(DMatrix::from_fn(n, n, |i, j| {
                    0.5 * scale * ((&ad[i] * &ads[j]).trace() + (&ad[j] * &ads[i]).trace())
                }))
            };
            let e: Vec<Octonion> = (0..8).map(Octonion::basis).collect();
            let g1 = gram(GLevel::M1, &e)?;
            let g2 = gram(GLevel::M2, &e[1..])?;
            Ok(QGrams {
                level1: SMatrix::from_fn(|i, j| g1[(i, j)]),
                level2: SMatrix::from_fn(|i, j| g2[(i, j)]),
            })
        })
        .as_ref()
        .map_err(Clone::clone)
}

/// `(Q(𝒢₋₁(x)), Q(𝒢₋₂(p)))` through the cached Gram matrices.
pub fn q_levels(x: &Octonion, p: &Octonion) -> Result<(f64, f64)> {
    if !p.is_imaginary(1e-12) {
        return Err(Error::invalid("p must be imaginary"));
    }
    let g = q_grams()?;
    let xv = nalgebra::SVector::<f64, 8>::from_row_slice(&x.0);
    let pv = nalgebra::SVector::<f64, 7>::from_row_slice(&p.imag_coords());
    Ok((xv.dot(&(g.level1 * xv)), pv.dot(&(g.level2 * pv))))
}

/// `e^{λ(H)}` for `n̄ = exp(X + Y)`, `X = 𝒢₋₁(x)`, `Y = 𝒢₋₂(p)`:
/// `((1 + Q(X)/2)² + 2Q(Y))^{λ_α/4}` with `Q` evaluated from the Killing form.
pub fn exp_lambda_h(x: &Octonion, p: &Octonion, lambda: SpectralParam) -> Result<Complex64> {
    let (qx, qy) = q_levels(x, p)?;
    let base = (1.0 + 0.5 * qx).powi(2) + 2.0 * qy;
    Ok((lambda.value() * (0.25 * base.ln())).exp())
}

fn pole_check(z: Complex64, what: &str) -> Result<()> {
    if gamma::is_pole(z, 1e-12) {
        return Err(Error::Pole(format!("{what} = {z}")));
    }
    Ok(())
}

/// `Γ(λ/2)Γ((λ+8)/4) / (Γ((λ+8)/2)Γ((λ+22)/4))` without normalization.
fn c_gamma_raw(l: Complex64) -> Result<Complex64> {
    let num = [l / 2.0, (l + 8.0) / 4.0];
    let den = [(l + 8.0) / 2.0, (l + 22.0) / 4.0];
    pole_check(num[0], "lambda/2")?;
    pole_check(num[1], "(lambda+8)/4")?;
    if den.iter().any(|z| gamma::is_pole(*z, 1e-12)) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok((ln_gamma(num[0]) + ln_gamma(num[1]) - ln_gamma(den[0]) - ln_gamma(den[1])).exp())
}

/// Closed form of the c-function, normalized by `c(ρ) = 1`. Meromorphic;
/// poles of the numerator raise [`Error::Pole`].
pub fn c_gamma(lambda: impl Into<SpectralParam>) -> Result<Complex64> {
    let l = lambda.into().value();
    if !(l.re.is_finite() && l.im.is_finite()) {
        return Err(Error::invalid("spectral parameter must be finite"));
    }
    Ok(c_gamma_raw(l)? / c_gamma_raw(Complex64::new(RHO_ALPHA, 0.0))?)
}

/// `∫₀^∞ u^m (1+u²)^{−β} du = ½B((m+1)/2, β − (m+1)/2)` for real `β`.
fn radial_beta(m: f64, beta: f64) -> f64 {
    let a = 0.5 * (m + 1.0);
    0.5 * gamma_real(a) * gamma_real(beta - a) / gamma_real(beta)
}

/// Radius beyond which `∫ u^m |(1+u²)^{−β}| du < target`, from the bound
/// `u^{m−2Re β}`.
fn tail_radius(m: f64, beta_re: f64, target: f64) -> f64 {
    let k = 2.0 * beta_re - m - 1.0;
    (1.0 / (target * k)).powf(1.0 / k).max(4.0)
}

fn radial_integral(m: f64, beta: Complex64, spec: &QuadratureSpec) -> Result<QuadResult> {
    let f = move |u: f64| {
        if u == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        (Complex64::new(m * u.ln(), 0.0) - beta * (u * u).ln_1p()).exp()
    };
    let head = integrate(&f, &[0.0, 1.0], spec.rel_tol, 0.0, spec.max_panels)?;
    let target = spec.tail_fraction * spec.rel_tol * head.value.norm().max(f64::MIN_POSITIVE);
    let radius = spec.radius.unwrap_or_else(|| tail_radius(m, beta.re, target));
    let mut r = integrate(&f, &geometric_breaks(radius), spec.rel_tol, 0.0, spec.max_panels)?;
    r.error += target;
    Ok(r)
}

/// The c-function by quadrature of its polar reduction
/// `∫u⁶(1+u²)^{−(λ+22)/4}du · ∫t⁷(1+t²)^{−(λ+8)/2}dt`, normalized by the
/// closed-form value of the same integrals at `ρ`. Requires `Re λ > 0`.
pub fn c_quadrature(lambda: impl Into<SpectralParam>, spec: &QuadratureSpec) -> Result<QuadResult> {
    spec.validate()?;
    let l = lambda.into().value();
    if !(l.re > 0.0) || !l.im.is_finite() {
        return Err(Error::invalid(format!("c-function integral needs Re lambda > 0, got {l}")));
    }
    let i1 = radial_integral(6.0, (l + 22.0) / 4.0, spec)?;
    let i2 = radial_integral(7.0, (l + 8.0) / 2.0, spec)?;
    let norm = radial_beta(6.0, 11.0) * radial_beta(7.0, 15.0);
    let value = i1.value * i2.value / norm;
    let rel = i1.error / i1.value.norm() + i2.error / i2.value.norm();
    Ok(QuadResult { value, error: rel * value.norm() })
}

/// `1/C₀ = ∫∫ r⁷s⁶((1+r²)² + 4s²)^{−11} dr ds` in closed form.
fn spherical_norm() -> f64 {
    2f64.powi(-7) * radial_beta(6.0, 11.0) * radial_beta(7.0, 15.0)
}

/// `φ_λ(a_t) = C₀∫_{N̄} e^{(λ−ρ)H(a_t n̄)}e^{−(λ+ρ)H(n̄)} dn̄`, reduced to
/// the radii `r = |x|`, `s = |p|`. Requires `Re λ ≥ 0`.
pub fn spherical(lambda: impl Into<SpectralParam>, t: f64, spec: &QuadratureSpec) -> Result<QuadResult> {
    spec.validate()?;
    let l = lambda.into().value();
    if !(l.re >= 0.0) || !l.im.is_finite() || !t.is_finite() {
        return Err(Error::invalid(format!("spherical function needs Re lambda >= 0 and finite t, got {l}, {t}")));
    }
    let a = (l + RHO_ALPHA) / 4.0;
    let b = (RHO_ALPHA - l) / 4.0;
    let e2t = (2.0 * t).exp();
    let norm = spherical_norm();

    // |integrand| ≤ K r⁷s⁶((1+r²)² + 4s²)^{−11} with the ratio of the two
    // bases confined to [min(1, e^{4t}), max(1, e^{4t})]; then
    // (A + w)^{−11} ≤ 2¹¹A^{−6}(1 + w)^{−5} splits the bound.
    let k = (2.0 * b.re * t).exp() * (4.0 * t.abs() * b.re.abs()).exp() * 2f64.powi(11);
    let target = spec.tail_fraction * spec.rel_tol * norm / (2.0 * k);
    // ∫_R^∞ r⁷(1+r²)^{−6} ≤ R^{−4}/4 against ∫s⁶(1+4s²)^{−5} < 5e−4;
    // ∫_S^∞ s⁶(4s²)^{−5} = 4^{−5}S^{−3}/3 against ∫r⁷(1+r²)^{−6} = 1/40.
    let r_max = spec.radius.unwrap_or_else(|| (5e-4 / (4.0 * target)).powf(0.25).max(4.0));
    let s_max = spec.radius.unwrap_or_else(|| (1.0 / (40.0 * 1024.0 * 3.0 * target)).powf(1.0 / 3.0).max(4.0));
    let s_breaks = geometric_breaks(s_max);
    let inner_tol = 0.1 * spec.rel_tol;

    let failure = std::cell::Cell::new(None);
    let outer = |r: f64| -> Complex64 {
        if r == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let r2 = r * r;
        let at = (e2t + r2).powi(2);
        let a0 = (1.0 + r2).powi(2);
        let f = |s: f64| {
            if s == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            let w = 4.0 * s * s;
            let log = 7.0 * r.ln() + 6.0 * s.ln();
            (b * (2.0 * t - (at + w).ln()) - a * (a0 + w).ln() + log).exp()
        };
        match integrate(&f, &s_breaks, inner_tol, 0.0, spec.max_panels) {
            Ok(q) => q.value,
            Err(e) => {
                failure.set(Some(e));
                Complex64::new(0.0, 0.0)
            }
        }
    };
    let q = integrate(&outer, &geometric_breaks(r_max), spec.rel_tol, 0.0, spec.max_panels);
    if let Some(e) = failure.take() {
        return Err(e);
    }
    let q = q?;
    Ok(QuadResult { value: q.value / norm, error: q.error / norm + 2.0 * target / norm + inner_tol * q.value.norm() / norm })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_norm_is_reciprocal_killing() {
        assert!((alpha_norm().unwrap() - 1.0 / 72.0).abs() < 1e-12);
    }

    #[test]
    fn q_on_root_spaces() {
        let x = Octonion::new([0.3, -1.0, 0.2, 0.0, 0.5, 0.0, -0.7, 0.1]);
        let p = Octonion::new([0.0, 0.4, 0.0, -0.3, 0.2, 0.0, 0.0, 0.6]);
        let (qx, qp) = q_levels(&x, &p).unwrap();
        assert!((qx - 2.0 * x.norm_sq()).abs() < 1e-9, "{qx}");
        assert!((qp - 2.0 * p.norm_sq()).abs() < 1e-9, "{qp}");
        let direct = q_form(&gen_g(GLevel::M1, x).unwrap()).unwrap();
        assert!((direct - qx).abs() < 1e-9);
    }

    #[test]
    fn h_nbar_matches_exp_lambda_h() {
        let x = Octonion::new([0.3, -1.0, 0.2, 0.0, 0.5, 0.0, -0.7, 0.1]);
        let p = Octonion::new([0.0, 0.4, 0.0, -0.3, 0.2, 0.0, 0.0, 0.6]);
        let v = exp_lambda_h(&x, &p, SpectralParam::real(2.0)).unwrap();
        assert!((v.re - h_nbar(&x, &p, 0.0).exp()).abs() < 1e-9);
    }

    #[test]
    fn c_gamma_poles_and_normalization() {
        assert!((c_gamma(22.0).unwrap().re - 1.0).abs() < 1e-13);
        assert!(matches!(c_gamma(0.0), Err(Error::Pole(_))));
        assert!(matches!(c_gamma(-8.0), Err(Error::Pole(_))));
    }

    #[test]
    fn c_quadrature_matches_gamma() {
        let spec = QuadratureSpec::default();
        for l in [2.0, 4.0, 6.0, 10.0, 22.0] {
            let q = c_quadrature(l, &spec).unwrap().value;
            let g = c_gamma(l).unwrap();
            assert!(((q - g) / g).norm() < 1e-6, "{l}: {q} vs {g}");
        }
    }

    #[test]
    fn spherical_at_origin_and_rho() {
        let spec = QuadratureSpec { rel_tol: 1e-7, ..Default::default() };
        assert!((spherical(6.0, 0.0, &spec).unwrap().value - 1.0).norm() < 1e-5);
        assert!((spherical(22.0, 0.7, &spec).unwrap().value - 1.0).norm() < 1e-5);
    }
}
