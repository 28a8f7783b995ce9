//! `𝔣₄(₋₂₀)` and `F₄(₋₂₀)` as operators on the 27 coordinates of `𝒥¹`.
//!
//! A [`GroupElement`] is only ever produced after its automorphism
//! residual has been checked, so holding one is proof (to tolerance) that
//! the matrix preserves the Jordan product.

mod d4;
mod generators;
mod structure;

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jordan::JordanElement;
use crate::linalg::{from_row_major, max_abs, to_row_major, Mat27, Vec27, DIM};

pub use d4::{d4_rotate, slot_rotation_generator};
pub use generators::{exp_a, exp_g1, exp_g2, exp_n, gen_a, gen_g, sigma, GLevel, NLevel};
pub use structure::{
    basis52, grading_multiplicities, killing, theta_eps_check, Basis52, ThetaEpsReport,
};

/// Default acceptance threshold for automorphism residuals.
pub const VERIFY_TOL: f64 = 1e-8;

const EXPM_SERIES_TOL: f64 = 1e-13;
const EXPM_SQUARING_THRESHOLD: f64 = 0.5;

/// An element of `𝔣₄(₋₂₀)`: a derivation of the Jordan product.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement {
    pub mat: Mat27,
}

impl AlgebraElement {
    pub fn new(mat: Mat27) -> Self {
        AlgebraElement { mat }
    }

    pub fn zero() -> Self {
        AlgebraElement { mat: Mat27::zeros() }
    }

    /// Builds the matrix of a linear map given by its action on elements.
    pub fn from_fn(f: impl Fn(&JordanElement) -> JordanElement) -> Self {
        AlgebraElement { mat: matrix_from_fn(f) }
    }

    pub fn apply(&self, x: &JordanElement) -> JordanElement {
        JordanElement::from_vec(&(self.mat * x.to_vec()))
    }

    pub fn bracket(&self, other: &AlgebraElement) -> AlgebraElement {
        AlgebraElement { mat: self.mat * other.mat - other.mat * self.mat }
    }

    pub fn scale(&self, s: f64) -> AlgebraElement {
        AlgebraElement { mat: self.mat * s }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        AlgebraElement { mat: self.mat + other.mat }
    }

    /// Max over basis pairs of `|φ(bᵢ∘bⱼ) − φbᵢ∘bⱼ − bᵢ∘φbⱼ|`.
    pub fn derivation_residual(&self) -> f64 {
        let table = basis_products();
        let mut worst = 0.0f64;
        let images: Vec<JordanElement> =
            (0..DIM).map(|i| JordanElement::from_vec(&self.mat.column(i).into_owned())).collect();
        let basis: Vec<JordanElement> = (0..DIM).map(JordanElement::basis).collect();
        for i in 0..DIM {
            for j in i..DIM {
                let lhs = self.mat * table[pair_index(i, j)];
                let rhs = images[i].jordan_mul(&basis[j]) + basis[i].jordan_mul(&images[j]);
                worst = worst.max((lhs - rhs.to_vec()).amax());
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.mat)
    }
}

impl Serialize for AlgebraElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            mat: Vec<f64>,
        }
        Repr { mat: to_row_major(&self.mat) }.serialize(s)
    }
}

/// A verified element of `F₄(₋₂₀)` together with its automorphism residual.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    mat: Mat27,
    residual: f64,
}

#[derive(Serialize, Deserialize)]
struct GroupRepr {
    mat: Vec<f64>,
    residual: f64,
}

impl Serialize for GroupElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GroupRepr { mat: to_row_major(&self.mat), residual: self.residual }.serialize(s)
    }
}

impl GroupElement {
    /// Verifies `mat` with the default threshold [`VERIFY_TOL`].
    pub fn new(mat: Mat27) -> Result<Self> {
        Self::with_tol(mat, VERIFY_TOL)
    }

    pub fn with_tol(mat: Mat27, tol: f64) -> Result<Self> {
        let residual = verify(&mat);
        if !(residual < tol) {
            return Err(Error::NotAutomorphism { residual });
        }
        Ok(GroupElement { mat, residual })
    }

    pub fn identity() -> Self {
        GroupElement { mat: Mat27::identity(), residual: 0.0 }
    }

    /// Parses the `{"mat": [729 reals], ...}` encoding and re-verifies; any
    /// stored residual is ignored.
    pub fn from_json(value: &serde_json::Value, tol: f64) -> Result<Self> {
        let mat = value
            .get("mat")
            .and_then(|m| serde_json::from_value::<Vec<f64>>(m.clone()).ok())
            .and_then(|v| from_row_major(&v))
            .ok_or_else(|| Error::invalid(format!("expected {{\"mat\": [{} reals]}}", DIM * DIM)))?;
        Self::with_tol(mat, tol)
    }

    pub fn mat(&self) -> &Mat27 {
        &self.mat
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn apply(&self, x: &JordanElement) -> JordanElement {
        JordanElement::from_vec(&(self.mat * x.to_vec()))
    }

    /// The product `self·other`, re-verified.
    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement> {
        GroupElement::new(self.mat * other.mat)
    }

    /// Like [`compose`](Self::compose) with an explicit threshold.
    pub fn compose_tol(&self, other: &GroupElement, tol: f64) -> Result<GroupElement> {
        GroupElement::with_tol(self.mat * other.mat, tol)
    }

    /// `g⁻¹ = G⁻¹gᵀG`, where `G` is the Gram matrix of `(·|·)`; exact for
    /// any matrix preserving the inner product.
    pub fn inverse(&self) -> GroupElement {
        let g = gram_diag();
        let mut inv = self.mat.transpose();
        for r in 0..DIM {
            for c in 0..DIM {
                inv[(r, c)] *= g[c] / g[r];
            }
        }
        let residual = verify(&inv);
        GroupElement { mat: inv, residual }
    }

    /// `g^n` for any integer `n`.
    pub fn pow(&self, n: i64) -> Result<GroupElement> {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Mat27::identity();
        for _ in 0..n.unsigned_abs() {
            out = base.mat * out;
        }
        GroupElement::new(out)
    }

    /// Maximum entry of `|self − other|`.
    pub fn distance(&self, other: &GroupElement) -> f64 {
        max_abs(&(self.mat - other.mat))
    }

    /// `max |A − B| / max(1, |B|)` with `|·|` the max-entry norm.
    pub fn relative_distance(&self, other: &GroupElement) -> f64 {
        self.distance(other) / max_abs(&other.mat).max(1.0)
    }

    /// True iff `g` fixes every target within `tol` (scale-relative).
    pub fn fixes(&self, targets: &[JordanElement], tol: f64) -> bool {
        self.fix_residual(targets) <= tol
    }

    pub fn fix_residual(&self, targets: &[JordanElement]) -> f64 {
        targets
            .iter()
            .map(|t| self.apply(t).max_abs_diff(t) / t.norm().max(1.0))
            .fold(0.0, f64::max)
    }

    pub(crate) fn trusted(mat: Mat27, residual: f64) -> GroupElement {
        GroupElement { mat, residual }
    }
}

/// `stabilizer_check(g, targets)` at the default tolerance.
pub fn stabilizer_check(g: &GroupElement, targets: &[JordanElement]) -> bool {
    g.fixes(targets, VERIFY_TOL)
}

/// Targets whose common stabilizer is `K = Spin(9)`.
pub fn k_targets() -> Vec<JordanElement> {
    vec![JordanElement::e(1)]
}

/// Targets whose common stabilizer is `K_ε = Spin⁰(8,1)`.
pub fn keps_targets() -> Vec<JordanElement> {
    vec![JordanElement::e(2)]
}

/// Targets whose common stabilizer is `M = Spin(7)`.
pub fn m_targets() -> Vec<JordanElement> {
    vec![
        JordanElement::e(1),
        JordanElement::e(2),
        JordanElement::e(3),
        JordanElement::f(3, crate::octonion::ONE),
    ]
}

/// Targets whose common stabilizer is `D₄ = Spin(8)`.
pub fn d4_targets() -> Vec<JordanElement> {
    vec![JordanElement::e(1), JordanElement::e(2), JordanElement::e(3)]
}

/// Automorphism residual of a 27×27 matrix.
///
/// The product defect over the 378 symmetric basis pairs is divided by
/// `max(1, |g|²)` (max-entry norm), since both sides are quadratic in the
/// entries and rounding grows accordingly; the unit defect `|gE − E|` is
/// taken absolutely. The result is the larger of the two.
pub fn verify(mat: &Mat27) -> f64 {
    let table = basis_products();
    let images: Vec<JordanElement> =
        (0..DIM).map(|i| JordanElement::from_vec(&mat.column(i).into_owned())).collect();
    let mut worst = 0.0f64;
    for i in 0..DIM {
        for j in i..DIM {
            let lhs = mat * table[pair_index(i, j)];
            let rhs = images[i].jordan_mul(&images[j]).to_vec();
            worst = worst.max((lhs - rhs).amax());
        }
    }
    let scale = max_abs(mat).max(1.0);
    let unit = JordanElement::unit().to_vec();
    let unit_defect = (mat * unit - unit).amax();
    if !worst.is_finite() || !unit_defect.is_finite() {
        return f64::INFINITY;
    }
    (worst / (scale * scale)).max(unit_defect)
}

/// Matrix exponential by scaling and squaring of a Taylor series.
pub fn expm_mat(a: &Mat27) -> Mat27 {
    let norm = a.row_iter().map(|r| r.iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max);
    let mut squarings = 0u32;
    if norm > EXPM_SQUARING_THRESHOLD {
        squarings = (norm / EXPM_SQUARING_THRESHOLD).log2().ceil() as u32;
    }
    let scaled = a / f64::from(2u32.pow(squarings));
    let mut sum = Mat27::identity();
    let mut term = Mat27::identity();
    for k in 1..60 {
        term = term * scaled / k as f64;
        sum += term;
        if max_abs(&term) < EXPM_SERIES_TOL * max_abs(&sum) {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum * sum;
    }
    sum
}

/// `exp(φ)` as a verified group element.
pub fn expm(phi: &AlgebraElement) -> Result<GroupElement> {
    GroupElement::new(expm_mat(&phi.mat))
}

pub(crate) fn matrix_from_fn(f: impl Fn(&JordanElement) -> JordanElement) -> Mat27 {
    let mut m = Mat27::zeros();
    for i in 0..DIM {
        let col = f(&JordanElement::basis(i)).to_vec();
        m.set_column(i, &col);
    }
    m
}

/// Diagonal of the Gram matrix of `(·|·)` in the coordinate basis.
fn gram_diag() -> [f64; DIM] {
    let mut g = [0.0; DIM];
    for (i, v) in g.iter_mut().enumerate() {
        *v = match i {
            0..=2 => 1.0,
            3..=10 => 2.0,
            _ => -2.0,
        };
    }
    g
}

fn pair_index(i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * DIM + j
}

fn basis_products() -> &'static Vec<Vec27> {
    static TABLE: OnceLock<Vec<Vec27>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = vec![Vec27::zeros(); DIM * DIM];
        for i in 0..DIM {
            for j in i..DIM {
                out[pair_index(i, j)] =
                    JordanElement::basis(i).jordan_mul(&JordanElement::basis(j)).to_vec();
            }
        }
        out
    })
}
