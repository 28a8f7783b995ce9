//! Structure constants of `𝔣₄(₋₂₀)`: a 52-element basis, the adjoint
//! representation in that basis, the Killing form and the restricted-root
//! grading by `ad Ã₃¹(1)`.

use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::generators::{gen_a_any, gen_g, sigma, GLevel};
use super::AlgebraElement;
use crate::error::{Error, Result};
use crate::linalg::DIM;
use crate::octonion::{Octonion, ONE};

/// Relative singular-value cutoff for numerical rank decisions.
const RANK_TOL: f64 = 1e-9;

/// The spanning set `{Ãᵢ¹(e_j)} ∪ {[Ã₁¹(e_a), Ã₁¹(e_b)] : a < b}` with the
/// data needed to expand arbitrary operators in it.
pub struct Basis52 {
    pub elems: Vec<AlgebraElement>,
    flat: DMatrix<f64>,
    gram_inv: DMatrix<f64>,
}

impl Basis52 {
    fn build() -> Result<Basis52> {
        let mut elems = Vec::with_capacity(52);
        for i in 1..=3 {
            for j in 0..8 {
                elems.push(gen_a_any(i, Octonion::basis(j)));
            }
        }
        for a in 0..8 {
            for b in (a + 1)..8 {
                elems.push(gen_a_any(1, Octonion::basis(a)).bracket(&gen_a_any(1, Octonion::basis(b))));
            }
        }
        let n = elems.len();
        let mut flat = DMatrix::zeros(n, DIM * DIM);
        for (k, e) in elems.iter().enumerate() {
            for (l, v) in e.mat.iter().enumerate() {
                flat[(k, l)] = *v;
            }
        }
        let sv = flat.clone().svd(false, false).singular_values;
        let top = sv.max();
        let rank = sv.iter().filter(|s| **s > RANK_TOL * top).count();
        if rank != 52 {
            return Err(Error::RankDeficient { expected: 52, found: rank });
        }
        let gram = &flat * flat.transpose();
        let gram_inv = gram
            .try_inverse()
            .ok_or(Error::RankDeficient { expected: 52, found: rank })?;
        Ok(Basis52 { elems, flat, gram_inv })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Numerical rank of the flattened basis.
    pub fn rank(&self) -> usize {
        let sv = self.flat.clone().svd(false, false).singular_values;
        let top = sv.max();
        sv.iter().filter(|s| **s > RANK_TOL * top).count()
    }

    /// Least-squares coordinates of `φ` in the basis.
    pub fn coords(&self, phi: &AlgebraElement) -> DVector<f64> {
        let v = DVector::from_iterator(DIM * DIM, phi.mat.iter().copied());
        &self.gram_inv * (&self.flat * v)
    }

    pub fn combine(&self, c: &DVector<f64>) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (k, e) in self.elems.iter().enumerate() {
            out.mat += e.mat * c[k];
        }
        out
    }

    /// Max-entry distance from `φ` to the span of the basis.
    pub fn span_residual(&self, phi: &AlgebraElement) -> f64 {
        (phi.mat - self.combine(&self.coords(phi)).mat).amax()
    }

    /// Matrix of `ad φ` in the basis.
    pub fn ad(&self, phi: &AlgebraElement) -> DMatrix<f64> {
        let n = self.len();
        let mut m = DMatrix::zeros(n, n);
        for (k, b) in self.elems.iter().enumerate() {
            m.set_column(k, &self.coords(&phi.bracket(b)));
        }
        m
    }
}

/// The shared basis; errors if the numerical rank is not 52.
pub fn basis52() -> Result<&'static Basis52> {
    static BASIS: OnceLock<Result<Basis52>> = OnceLock::new();
    BASIS.get_or_init(Basis52::build).as_ref().map_err(Clone::clone)
}

/// `B(φ, ψ) = tr(ad φ · ad ψ)`.
pub fn killing(phi: &AlgebraElement, psi: &AlgebraElement) -> Result<f64> {
    let b = basis52()?;
    Ok((b.ad(phi) * b.ad(psi)).trace())
}

fn nullity(m: &DMatrix<f64>) -> usize {
    let sv = m.clone().svd(false, false).singular_values;
    let scale = sv.max().max(1.0);
    sv.iter().filter(|s| **s <= RANK_TOL * scale).count()
}

/// Dimensions of the eigenspaces of `ad Ã₃¹(1)` for eigenvalues
/// `−2, −1, 0, 1, 2`, in that order.
pub fn grading_multiplicities() -> Result<Vec<(i32, usize)>> {
    let b = basis52()?;
    let ad = b.ad(&gen_a_any(3, ONE));
    let id = DMatrix::<f64>::identity(b.len(), b.len());
    Ok((-2..=2).map(|l| (l, nullity(&(&ad - &id * f64::from(l))))).collect())
}

/// Maximum deviations found when comparing `dσ̃₂` with `±dσ̃` (`σ = σ₁`).
#[derive(Clone, Debug, Serialize)]
pub struct ThetaEpsReport {
    /// `|dσ̃₂φ + dσ̃φ|` over `𝔤_{±α}`.
    pub alpha: f64,
    /// `|dσ̃₂φ − dσ̃φ|` over `𝔤_{±2α}`.
    pub two_alpha: f64,
    /// `|dσ̃₂φ − dσ̃φ|` over `𝔪 ⊕ 𝔞`.
    pub zero: f64,
    /// `|σÃ₃¹(1)σ + Ã₃¹(1)|`.
    pub weyl: f64,
}

impl ThetaEpsReport {
    pub fn max(&self) -> f64 {
        self.alpha.max(self.two_alpha).max(self.zero).max(self.weyl)
    }
}

/// Checks `θ_ε = dσ̃₂` against `θ = dσ̃` on each restricted root space.
pub fn theta_eps_check() -> Result<ThetaEpsReport> {
    let s1 = sigma(1);
    let s2 = sigma(2);
    let conj = |s: &super::GroupElement, phi: &AlgebraElement| s.mat * phi.mat * s.mat;
    let dev = |phi: &AlgebraElement, eps: f64| (conj(&s2, phi) - conj(&s1, phi) * eps).amax();

    let mut alpha = 0.0f64;
    let mut two_alpha = 0.0f64;
    for j in 0..8 {
        let e = Octonion::basis(j);
        for lvl in [GLevel::P1, GLevel::M1] {
            alpha = alpha.max(dev(&gen_g(lvl, e)?, -1.0));
        }
        if j > 0 {
            for lvl in [GLevel::P2, GLevel::M2] {
                two_alpha = two_alpha.max(dev(&gen_g(lvl, e)?, 1.0));
            }
        }
    }

    let b = basis52()?;
    let h = gen_a_any(3, ONE);
    let svd = b.ad(&h).svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let scale = svd.singular_values.max().max(1.0);
    let mut zero = 0.0f64;
    for (k, s) in svd.singular_values.iter().enumerate() {
        if *s <= RANK_TOL * scale {
            let c = v_t.row(k).transpose();
            zero = zero.max(dev(&b.combine(&c), 1.0));
        }
    }

    let weyl = (conj(&s1, &h) + h.mat).amax();
    Ok(ThetaEpsReport { alpha, two_alpha, zero, weyl })
}
