//! The exceptional Jordan algebra `𝒥¹` of signature-twisted Hermitian
//! octonionic 3×3 matrices `h¹(ξ₁,ξ₂,ξ₃; x₁,x₂,x₃)`.
//!
//! Elements are stored by their 27 real coordinates; the `√−1` entries of
//! the matrix picture are never materialized. All structure comes from the
//! trace, the indefinite inner product and the quadratic cross product
//! `X^{×2}`; the Jordan product is recovered from the cross product by
//! polarization.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Vec27;
use crate::octonion::{Octonion, ONE, ZERO};

/// Degree-matched membership tolerance: a polynomial predicate `P(X) = 0`
/// holds when `|P(X)| ≤ MEMBERSHIP_TOL · max(1, ‖X‖^deg)`.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

/// `h¹(ξ₁,ξ₂,ξ₃; x₁,x₂,x₃) = Σ ξᵢEᵢ + Fᵢ¹(xᵢ)`. Slot indices are 0-based in
/// code: `x[0]` is the `F₁¹` parameter.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "JordanJson", into = "JordanJson")]
pub struct JordanElement {
    pub xi: [f64; 3],
    pub x: [Octonion; 3],
}

#[derive(Serialize, Deserialize)]
struct JordanJson {
    xi: [f64; 3],
    x1: Octonion,
    x2: Octonion,
    x3: Octonion,
}

impl From<JordanJson> for JordanElement {
    fn from(j: JordanJson) -> Self {
        JordanElement { xi: j.xi, x: [j.x1, j.x2, j.x3] }
    }
}

impl From<JordanElement> for JordanJson {
    fn from(j: JordanElement) -> Self {
        JordanJson { xi: j.xi, x1: j.x[0], x2: j.x[1], x3: j.x[2] }
    }
}

impl JordanElement {
    pub const ZERO: JordanElement = JordanElement { xi: [0.0; 3], x: [ZERO; 3] };

    pub fn new(xi: [f64; 3], x: [Octonion; 3]) -> Self {
        JordanElement { xi, x }
    }

    /// `h¹(ξ₁,ξ₂,ξ₃; x₁,x₂,x₃)`
    pub fn h(xi1: f64, xi2: f64, xi3: f64, x1: Octonion, x2: Octonion, x3: Octonion) -> Self {
        JordanElement { xi: [xi1, xi2, xi3], x: [x1, x2, x3] }
    }

    /// The identity `E`.
    pub fn unit() -> Self {
        Self::h(1.0, 1.0, 1.0, ZERO, ZERO, ZERO)
    }

    /// `E_i` for `i ∈ 1..=3`.
    pub fn e(i: usize) -> Self {
        let mut xi = [0.0; 3];
        xi[i - 1] = 1.0;
        JordanElement { xi, x: [ZERO; 3] }
    }

    /// `F_i¹(a)` for `i ∈ 1..=3`.
    pub fn f(i: usize, a: Octonion) -> Self {
        let mut x = [ZERO; 3];
        x[i - 1] = a;
        JordanElement { xi: [0.0; 3], x }
    }

    pub fn p_minus() -> Self {
        Self::h(-1.0, 1.0, 0.0, ZERO, ZERO, ONE)
    }

    pub fn p_plus() -> Self {
        Self::h(1.0, -1.0, 0.0, ZERO, ZERO, ONE)
    }

    /// `σP⁻ = −P⁺ = h¹(−1,1,0;0,0,−1)`.
    pub fn sigma_p_minus() -> Self {
        Self::h(-1.0, 1.0, 0.0, ZERO, ZERO, -ONE)
    }

    /// `P₁₂⁻ = P⁻`.
    pub fn p12_minus() -> Self {
        Self::p_minus()
    }

    /// `P₁₃⁻ = h¹(−1,0,1;0,1,0)`.
    pub fn p13_minus() -> Self {
        Self::h(-1.0, 0.0, 1.0, ZERO, ONE, ZERO)
    }

    /// `Q⁺(x) = h¹(0,0,0; x, x̄, 0)`
    pub fn q_plus(x: Octonion) -> Self {
        Self::h(0.0, 0.0, 0.0, x, x.conj(), ZERO)
    }

    /// `Q⁻(x) = h¹(0,0,0; x, −x̄, 0)`
    pub fn q_minus(x: Octonion) -> Self {
        Self::h(0.0, 0.0, 0.0, x, -x.conj(), ZERO)
    }

    pub fn to_vec(&self) -> Vec27 {
        let mut v = Vec27::zeros();
        for i in 0..3 {
            v[i] = self.xi[i];
        }
        for (k, x) in self.x.iter().enumerate() {
            for j in 0..8 {
                v[3 + 8 * k + j] = x[j];
            }
        }
        v
    }

    pub fn from_vec(v: &Vec27) -> Self {
        let mut out = JordanElement::ZERO;
        for i in 0..3 {
            out.xi[i] = v[i];
        }
        for k in 0..3 {
            for j in 0..8 {
                out.x[k][j] = v[3 + 8 * k + j];
            }
        }
        out
    }

    /// The `i`-th coordinate basis vector (`0..27`), in the order
    /// `E₁,E₂,E₃, F₁¹(e₀..e₇), F₂¹(e₀..e₇), F₃¹(e₀..e₇)`.
    pub fn basis(i: usize) -> Self {
        let mut v = Vec27::zeros();
        v[i] = 1.0;
        Self::from_vec(&v)
    }

    pub fn scale(&self, s: f64) -> Self {
        JordanElement {
            xi: [self.xi[0] * s, self.xi[1] * s, self.xi[2] * s],
            x: [self.x[0] * s, self.x[1] * s, self.x[2] * s],
        }
    }

    /// Euclidean norm of the coordinate vector (not the algebra's
    /// indefinite form).
    pub fn norm(&self) -> f64 {
        self.to_vec().norm()
    }

    pub fn trace(&self) -> f64 {
        self.xi.iter().sum()
    }

    /// `(X|Y) = Σ ξᵢηᵢ + 2(x₁|y₁) − 2(x₂|y₂) − 2(x₃|y₃)`
    pub fn inner(&self, y: &JordanElement) -> f64 {
        let d: f64 = (0..3).map(|i| self.xi[i] * y.xi[i]).sum();
        d + 2.0 * self.x[0].inner(&y.x[0]) - 2.0 * self.x[1].inner(&y.x[1]) - 2.0 * self.x[2].inner(&y.x[2])
    }

    pub fn cross_square(&self) -> JordanElement {
        let [xi1, xi2, xi3] = self.xi;
        let [x1, x2, x3] = self.x;
        JordanElement {
            xi: [
                xi2 * xi3 - x1.norm_sq(),
                xi3 * xi1 + x2.norm_sq(),
                xi1 * xi2 + x3.norm_sq(),
            ],
            x: [
                -(x2 * x3).conj() - x1 * xi1,
                (x3 * x1).conj() - x2 * xi2,
                (x1 * x2).conj() - x3 * xi3,
            ],
        }
    }

    /// Freudenthal cross product, the symmetric bilinear form whose
    /// diagonal is [`cross_square`](Self::cross_square).
    pub fn cross(&self, y: &JordanElement) -> JordanElement {
        let [a1, a2, a3] = self.xi;
        let [b1, b2, b3] = y.xi;
        let [x1, x2, x3] = self.x;
        let [y1, y2, y3] = y.x;
        JordanElement {
            xi: [
                0.5 * (a2 * b3 + a3 * b2) - x1.inner(&y1),
                0.5 * (a3 * b1 + a1 * b3) + x2.inner(&y2),
                0.5 * (a1 * b2 + a2 * b1) + x3.inner(&y3),
            ],
            x: [
                ((x2 * y3).conj() + (y2 * x3).conj() + y1 * a1 + x1 * b1) * -0.5,
                ((x3 * y1).conj() + (y3 * x1).conj() - y2 * a2 - x2 * b2) * 0.5,
                ((x1 * y2).conj() + (y1 * x2).conj() - y3 * a3 - x3 * b3) * 0.5,
            ],
        }
    }

    /// `det(X) = (X|X^{×2})/3`.
    pub fn det(&self) -> f64 {
        self.inner(&self.cross_square()) / 3.0
    }

    /// The explicit cubic `ξ₁ξ₂ξ₃ − 2(1|(x₁x₂)x₃) − ξ₁(x₁|x₁) + ξ₂(x₂|x₂) + ξ₃(x₃|x₃)`.
    pub fn det_explicit(&self) -> f64 {
        let [xi1, xi2, xi3] = self.xi;
        let [x1, x2, x3] = self.x;
        xi1 * xi2 * xi3 - 2.0 * ((x1 * x2) * x3).re() - xi1 * x1.norm_sq()
            + xi2 * x2.norm_sq()
            + xi3 * x3.norm_sq()
    }

    /// `X∘Y = X×Y + ½(tr(X)Y + tr(Y)X − (tr(X)tr(Y) − (X|Y))E)`.
    pub fn jordan_mul(&self, y: &JordanElement) -> JordanElement {
        let tx = self.trace();
        let ty = y.trace();
        let c = tx * ty - self.inner(y);
        let mut out = self.cross(y) + (y.scale(tx) + self.scale(ty)).scale(0.5);
        for v in out.xi.iter_mut() {
            *v -= 0.5 * c;
        }
        out
    }

    /// Coefficients of the decomposition
    /// `X = r(−E₁+E₂) + sP⁻ + uE + vE₃ + F₃¹(p) + Q⁺(x) + Q⁻(y)`.
    pub fn coords(&self) -> CoordView {
        let [xi1, xi2, xi3] = self.xi;
        let [x1, x2, x3] = self.x;
        let s = x3.re();
        let u = 0.5 * (xi1 + xi2);
        CoordView {
            r: 0.5 * (xi2 - xi1) - s,
            s,
            u,
            v: xi3 - u,
            p: x3.im(),
            x: (x1 + x2.conj()) * 0.5,
            y: (x1 - x2.conj()) * 0.5,
        }
    }

    /// Membership in the rank-one set and the four orbit sets.
    pub fn classify(&self) -> Membership {
        let n = self.norm();
        let lin = MEMBERSHIP_TOL * n.max(1.0);
        let quad = MEMBERSHIP_TOL * (n * n).max(1.0);
        let in_r1 = self.cross_square().norm() <= quad && n > MEMBERSHIP_TOL;
        let tr = self.trace();
        let e1 = self.xi[0];
        Membership {
            in_r1,
            in_h: in_r1 && (tr - 1.0).abs() <= lin && e1 >= 1.0 - lin,
            in_hp: in_r1 && (tr - 1.0).abs() <= lin && e1 <= lin,
            in_n1p: in_r1 && tr.abs() <= lin && e1 > lin,
            in_n1m: in_r1 && tr.abs() <= lin && e1 < -lin,
        }
    }

    /// Canonical representative of the ray `[X]`: the positive multiple
    /// with `(X|E₁) = −1`. Requires `(X|E₁) < 0`.
    pub fn ray_normalized(&self) -> Result<JordanElement> {
        let e1 = self.xi[0];
        if e1 >= -MEMBERSHIP_TOL * self.norm().max(1.0) {
            return Err(Error::invalid("ray representative needs (X|E1) < 0"));
        }
        Ok(self.scale(-1.0 / e1))
    }

    /// `f(x,y) = h¹(−1, (y|y), (x|x); \overline{xy}, x, y)` on the unit sphere
    /// `(x|x) + (y|y) = 1`.
    pub fn s15_from(x: Octonion, y: Octonion) -> Result<JordanElement> {
        let q = x.norm_sq() + y.norm_sq();
        if (q - 1.0).abs() > MEMBERSHIP_TOL {
            return Err(Error::invalid(format!("s15_from needs (x|x)+(y|y) = 1, got {q}")));
        }
        Ok(Self::h(-1.0, y.norm_sq(), x.norm_sq(), (x * y).conj(), x, y))
    }

    /// `g([X]) = (−ξ₁⁻¹x₂, −ξ₁⁻¹x₃)` for `X ∈ 𝒩₁⁻`.
    pub fn s15_to(&self) -> Result<(Octonion, Octonion)> {
        if !self.classify().in_n1m {
            return Err(Error::invalid("s15_to needs an element of the negative null cone"));
        }
        let s = -1.0 / self.xi[0];
        Ok((self.x[1] * s, self.x[2] * s))
    }

    pub fn max_abs_diff(&self, other: &JordanElement) -> f64 {
        (self.to_vec() - other.to_vec()).amax()
    }
}

impl Add for JordanElement {
    type Output = JordanElement;
    fn add(mut self, rhs: JordanElement) -> JordanElement {
        self += rhs;
        self
    }
}

impl AddAssign for JordanElement {
    fn add_assign(&mut self, rhs: JordanElement) {
        for i in 0..3 {
            self.xi[i] += rhs.xi[i];
            self.x[i] += rhs.x[i];
        }
    }
}

impl Sub for JordanElement {
    type Output = JordanElement;
    fn sub(self, rhs: JordanElement) -> JordanElement {
        self + (-rhs)
    }
}

impl Neg for JordanElement {
    type Output = JordanElement;
    fn neg(self) -> JordanElement {
        self.scale(-1.0)
    }
}

impl Mul<JordanElement> for f64 {
    type Output = JordanElement;
    fn mul(self, rhs: JordanElement) -> JordanElement {
        rhs.scale(self)
    }
}

/// Coefficients of `X` in
/// `𝒥¹ = ℝ(−E₁+E₂) ⊕ ℝP⁻ ⊕ ℝE ⊕ ℝE₃ ⊕ F₃¹(Im𝐎) ⊕ Q⁺(𝐎) ⊕ Q⁻(𝐎)`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CoordView {
    pub r: f64,
    pub s: f64,
    pub u: f64,
    pub v: f64,
    /// Imaginary octonion.
    pub p: Octonion,
    pub x: Octonion,
    pub y: Octonion,
}

impl CoordView {
    pub fn reconstruct(&self) -> JordanElement {
        let e12 = JordanElement::e(2) - JordanElement::e(1);
        self.r * e12
            + self.s * JordanElement::p_minus()
            + self.u * JordanElement::unit()
            + self.v * JordanElement::e(3)
            + JordanElement::f(3, self.p)
            + JordanElement::q_plus(self.x)
            + JordanElement::q_minus(self.y)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Membership {
    /// Rank one: `X^{×2} = 0`, `X ≠ 0`.
    pub in_r1: bool,
    /// Hyperbolic plane `ℋ`: trace 1, `(E₁|X) ≥ 1`.
    pub in_h: bool,
    /// `ℋ′`: trace 1, `(E₁|X) ≤ 0`.
    pub in_hp: bool,
    /// `𝒩₁⁺`: trace 0, `(E₁|X) > 0`.
    pub in_n1p: bool,
    /// `𝒩₁⁻`: trace 0, `(E₁|X) < 0`.
    pub in_n1m: bool,
}
