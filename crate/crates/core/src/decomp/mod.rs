//! Explicit Iwasawa, K_ε-Iwasawa, Matsuki and Gauss factorizations, driven
//! by the three pairings `(gP⁻|E₁)`, `(gP⁻|E₂)` and `(gP⁻|σP⁻)`.

mod flag;
mod precise;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::jordan::JordanElement;
use crate::liegroup::{d4_rotate, exp_a, exp_n, k_targets, keps_targets, m_targets, GroupElement, NLevel};
use crate::octonion::{Octonion, ONE};
use crate::linalg::{mul_accurate, solve_right, Mat27};
use crate::tolerance::Tolerance;

pub use flag::{
    n_pair, n_x, nx_closed_form, s15_transport_check, FlagWitness, KEpsOrbit, NMinusOrbit,
};

/// Parameters of `exp(𝒢±₁(x) + 𝒢±₂(p))`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct NParams {
    pub x: Octonion,
    /// Imaginary octonion.
    pub p: Octonion,
}

impl NParams {
    pub fn new(x: Octonion, p: Octonion) -> Self {
        NParams { x, p }
    }

    pub fn element(&self, level: NLevel) -> Result<GroupElement> {
        exp_n(level, self.x, self.p)
    }

    pub fn max_abs_diff(&self, other: &NParams) -> f64 {
        (self.x - other.x).max_abs().max((self.p - other.p).max_abs())
    }
}

impl Serialize for NParams {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        json!({"x": self.x.0, "p": self.p.imag_coords()}).serialize(s)
    }
}

/// Which of the two double cosets an element lies in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Cell {
    Open,
    Closed,
}

/// `g = k·a_t·n` with `k ∈ K`.
#[derive(Clone, Debug, Serialize)]
pub struct IwasawaFactors {
    pub k: GroupElement,
    pub t: f64,
    pub n: NParams,
    pub residual: f64,
}

/// `g = k_ε·a_t·n` with `k_ε ∈ K_ε`.
#[derive(Clone, Debug, Serialize)]
pub struct KEpsFactors {
    pub k: GroupElement,
    pub t: f64,
    pub n: NParams,
    pub residual: f64,
}

/// `g = k_ε·(g₀)·m·a_t·n`, with `g₀ = exp(−½πÃ₁¹(1))` present exactly on
/// the closed cell.
#[derive(Clone, Debug, Serialize)]
pub struct MatsukiFactors {
    pub cell: Cell,
    pub k_eps: GroupElement,
    pub w: bool,
    pub m: GroupElement,
    pub t: f64,
    pub n: NParams,
    pub residual: f64,
}

/// `g = n⁻·m·a_t·n⁺`.
#[derive(Clone, Debug, Serialize)]
pub struct GaussFactors {
    pub z: NParams,
    pub m: GroupElement,
    pub t: f64,
    pub n: NParams,
    pub residual: f64,
}

impl IwasawaFactors {
    pub fn reconstruct(&self) -> Result<GroupElement> {
        product(&[self.k.clone(), a_t(self.t)?, self.n.element(NLevel::Plus)?])
    }

    pub fn to_json(&self) -> Value {
        json!({"kind": "iwasawa", "k": self.k, "t": self.t, "n": self.n, "residual": self.residual})
    }
}

impl KEpsFactors {
    pub fn reconstruct(&self) -> Result<GroupElement> {
        product(&[self.k.clone(), a_t(self.t)?, self.n.element(NLevel::Plus)?])
    }

    pub fn to_json(&self) -> Value {
        json!({"kind": "keps", "cell": Cell::Open, "k": self.k, "t": self.t, "n": self.n, "residual": self.residual})
    }
}

impl MatsukiFactors {
    pub fn reconstruct(&self) -> Result<GroupElement> {
        let mut fs = vec![self.k_eps.clone()];
        if self.w {
            fs.push(g0()?);
        }
        fs.extend([self.m.clone(), a_t(self.t)?, self.n.element(NLevel::Plus)?]);
        product(&fs)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": "matsuki", "cell": self.cell, "k": self.k_eps, "w": self.w,
            "m": self.m, "t": self.t, "n": self.n, "residual": self.residual,
        })
    }
}

impl GaussFactors {
    /// Evaluated in double-double: near the closed cell `z` and `a_t·n` are
    /// large and a plain product would be dominated by its own rounding.
    pub fn reconstruct(&self) -> Result<GroupElement> {
        let mat = precise::gauss_product(&self.z, self.m.mat(), self.t, &self.n);
        if mat.iter().any(|v| !v.is_finite()) {
            return Err(Error::FactorCheck("non-finite factor product".into()));
        }
        let residual = crate::liegroup::verify(&mat);
        Ok(GroupElement::trusted(mat, residual))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": "gauss", "cell": Cell::Open, "z": self.z, "m": self.m,
            "t": self.t, "n": self.n, "residual": self.residual,
        })
    }
}

/// `a_t = exp(tÃ₃¹(1))`.
pub fn a_t(t: f64) -> Result<GroupElement> {
    exp_a(3, t, ONE)
}

/// The closed Matsuki cell representative `g₀ = exp(−½πÃ₁¹(1))`.
pub fn g0() -> Result<GroupElement> {
    exp_a(1, -std::f64::consts::FRAC_PI_2, ONE)
}

/// Product of verified factors, accumulated right to left with compensated
/// dot products. The result is checked only for finiteness: each factor is
/// already verified, and the caller compares the product with a reference
/// element.
fn product(fs: &[GroupElement]) -> Result<GroupElement> {
    let mut mat = Mat27::identity();
    for f in fs.iter().rev() {
        mat = mul_accurate(f.mat(), &mat);
    }
    if mat.iter().any(|v| !v.is_finite()) {
        return Err(Error::FactorCheck("non-finite factor product".into()));
    }
    let residual = crate::liegroup::verify(&mat);
    Ok(GroupElement::trusted(mat, residual))
}

/// `|A − g|_max / max(1, |g|_max)`.
pub fn reconstruction_residual(product: &GroupElement, g: &GroupElement) -> f64 {
    product.relative_distance(g)
}

/// All factorizations at a fixed [`Tolerance`].
#[derive(Clone, Copy, Debug, Default)]
pub struct Decomposer {
    pub tol: Tolerance,
}

impl Decomposer {
    pub fn new(tol: Tolerance) -> Self {
        Decomposer { tol }
    }

    /// `|(gP⁻|target)|` is degenerate when below `cell·|gP⁻|`.
    fn cell_threshold(&self, gp: &JordanElement) -> f64 {
        self.tol.cell * gp.norm()
    }

    /// The `N⁺` parameters of `h ∈ KAN⁺`, normalized against `target`.
    fn n_params(h: &Mat27, target: &JordanElement, denom: f64) -> NParams {
        let act = |x: JordanElement| JordanElement::from_vec(&(h * x.to_vec()));
        let mut x = Octonion::default();
        let mut p = Octonion::default();
        for i in 0..8 {
            let e = Octonion::basis(i);
            x[i] = 0.5 * act(JordanElement::q_plus(e)).inner(target) / denom;
            if i > 0 {
                p[i] = -0.5 * act(JordanElement::f(3, e)).inner(target) / denom;
            }
        }
        NParams { x, p }
    }

    /// `h·(a_t·n)⁻¹` by a triangular solve rather than explicit inverses,
    /// which keeps `h ≈ result·a_t·n` accurate when `n` is large.
    fn strip_an(&self, h: &Mat27, n: &NParams, t: f64) -> Result<GroupElement> {
        let an = product(&[a_t(t)?, n.element(NLevel::Plus)?])?;
        let an = an.mat();
        let mat = solve_right(h, an).ok_or_else(|| Error::FactorCheck("singular AN factor".into()))?;
        GroupElement::with_tol(mat, self.tol.verify)
    }

    fn check_reconstruction(&self, recon: &GroupElement, g: &GroupElement, what: &str) -> Result<f64> {
        let residual = reconstruction_residual(recon, g);
        if !(residual < self.tol.verify) {
            return Err(Error::FactorCheck(format!("{what} reconstruction residual {residual:e}")));
        }
        Ok(residual)
    }

    fn check_fixes(&self, k: &GroupElement, targets: &[JordanElement], what: &str) -> Result<()> {
        let r = k.fix_residual(targets);
        if !(r <= self.tol.verify) {
            return Err(Error::FactorCheck(format!("{what} misses its stabilizer by {r:e}")));
        }
        Ok(())
    }

    /// `k = g·(a_t·n)⁻¹`, verified.
    fn k_factor(&self, g: &GroupElement, n: &NParams, t: f64) -> Result<GroupElement> {
        self.strip_an(g.mat(), n, t)
    }

    pub fn iwasawa(&self, g: &GroupElement) -> Result<IwasawaFactors> {
        let gp = g.apply(&JordanElement::p_minus());
        let e1 = JordanElement::e(1);
        let d = gp.inner(&e1);
        if !(d < 0.0) {
            return Err(Error::DegeneratePairing { what: "(gP-|E1)", value: d });
        }
        let t = 0.5 * (-d).ln();
        let n = Self::n_params(g.mat(), &e1, d);
        let k = self.k_factor(g, &n, t)?;
        self.check_fixes(&k, &k_targets(), "Iwasawa K-factor")?;
        let mut out = IwasawaFactors { k, t, n, residual: 0.0 };
        out.residual = self.check_reconstruction(&out.reconstruct()?, g, "Iwasawa")?;
        Ok(out)
    }

    pub fn keps_pairing(&self, g: &GroupElement) -> (f64, f64) {
        let gp = g.apply(&JordanElement::p_minus());
        (gp.inner(&JordanElement::e(2)), self.cell_threshold(&gp))
    }

    pub fn keps_iwasawa(&self, g: &GroupElement) -> Result<KEpsFactors> {
        let (d, thr) = self.keps_pairing(g);
        if d.abs() <= thr {
            return Err(Error::DegenerateCell { what: "(gP-|E2)", value: d });
        }
        if d < 0.0 {
            return Err(Error::FactorCheck(format!("(gP-|E2) = {d:e} is negative beyond tolerance")));
        }
        let e2 = JordanElement::e(2);
        let t = 0.5 * d.ln();
        let n = Self::n_params(g.mat(), &e2, d);
        let k = self.k_factor(g, &n, t)?;
        self.check_fixes(&k, &keps_targets(), "K_eps factor")?;
        let mut out = KEpsFactors { k, t, n, residual: 0.0 };
        out.residual = self.check_reconstruction(&out.reconstruct()?, g, "K_eps-Iwasawa")?;
        Ok(out)
    }

    pub fn matsuki_cell(&self, g: &GroupElement) -> Cell {
        let (d, thr) = self.keps_pairing(g);
        if d.abs() <= thr {
            Cell::Closed
        } else {
            Cell::Open
        }
    }

    pub fn matsuki(&self, g: &GroupElement) -> Result<MatsukiFactors> {
        if self.matsuki_cell(g) == Cell::Open {
            let f = self.keps_iwasawa(g)?;
            return Ok(MatsukiFactors {
                cell: Cell::Open,
                k_eps: f.k,
                w: false,
                m: GroupElement::identity(),
                t: f.t,
                n: f.n,
                residual: f.residual,
            });
        }
        let x = g.apply(&JordanElement::p_minus());
        let (k_prime, _) = self.p13_rotation(&x)?;
        let h_mat = g0()?.inverse().mat() * k_prime.mat() * g.mat();
        let h = GroupElement::with_tol(h_mat, self.tol.verify)?;
        let iw = self.iwasawa(&h)?;
        self.check_fixes(&iw.k, &m_targets(), "Matsuki M-factor")?;
        let mut out = MatsukiFactors {
            cell: Cell::Closed,
            k_eps: k_prime.inverse(),
            w: true,
            m: iw.k,
            t: iw.t,
            n: iw.n,
            residual: 0.0,
        };
        out.residual = self.check_reconstruction(&out.reconstruct()?, g, "Matsuki")?;
        Ok(out)
    }

    /// For `X ∈ 𝒩₁⁻` with `(X|E₂) = 0`: checks the forced shape
    /// `r·h¹(−1,0,1;0,u,0)` with `|u| = 1`, hard-zeroes the vanishing
    /// entries, and returns `k ∈ D₄` with `kX = rP₁₃⁻` together with `r`.
    pub(crate) fn p13_rotation(&self, x: &JordanElement) -> Result<(GroupElement, f64)> {
        let r = -x.xi[0];
        if !(r > 0.0) {
            return Err(Error::ShapeViolation(format!("(X|E1) = {} is not negative", x.xi[0])));
        }
        let y = x.scale(1.0 / r);
        let dev = [
            y.xi[1].abs(),
            (y.xi[2] - 1.0).abs(),
            y.x[0].max_abs(),
            y.x[2].max_abs(),
            (y.x[1].norm() - 1.0).abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max);
        if dev > self.tol.verify {
            return Err(Error::ShapeViolation(format!(
                "closed-cell element deviates from h(-r,0,r;0,x2,0) by {dev:e}"
            )));
        }
        let u = y.x[1].normalized().expect("unit slot checked above");
        Ok((d4_rotate(2, u, ONE)?, r))
    }

    pub fn bruhat_pairing(&self, g: &GroupElement) -> (f64, f64) {
        let gp = g.apply(&JordanElement::p_minus());
        (gp.inner(&JordanElement::sigma_p_minus()), self.cell_threshold(&gp))
    }

    pub fn bruhat_classify(&self, g: &GroupElement) -> Cell {
        let (c, thr) = self.bruhat_pairing(g);
        if c.abs() <= thr {
            Cell::Closed
        } else {
            Cell::Open
        }
    }

    pub fn gauss(&self, g: &GroupElement) -> Result<GaussFactors> {
        let (c, thr) = self.bruhat_pairing(g);
        if c.abs() <= thr {
            return Err(Error::DegenerateCell { what: "(gP-|sigma P-)", value: c });
        }
        if c < 0.0 {
            return Err(Error::FactorCheck(format!("(gP-|sigma P-) = {c:e} is negative beyond tolerance")));
        }
        let (z, m, t, n) = precise::gauss_factors(g.mat())?;
        let m = GroupElement::with_tol(m, self.tol.verify)?;
        self.check_fixes(&m, &m_targets(), "Gauss M-factor")?;
        let mut out = GaussFactors { z, m, t, n, residual: 0.0 };
        out.residual = self.check_reconstruction(&out.reconstruct()?, g, "Gauss")?;
        Ok(out)
    }

    /// True iff `gP⁻` is a positive multiple of `P⁻`.
    pub fn stabilizer_flag(&self, g: &GroupElement) -> bool {
        let y = g.apply(&JordanElement::p_minus());
        let s = 0.25 * y.inner(&JordanElement::sigma_p_minus());
        s > 0.0 && y.max_abs_diff(&JordanElement::p_minus().scale(s)) <= self.tol.verify * y.norm()
    }
}

pub fn iwasawa(g: &GroupElement) -> Result<IwasawaFactors> {
    Decomposer::default().iwasawa(g)
}

pub fn keps_iwasawa(g: &GroupElement) -> Result<KEpsFactors> {
    Decomposer::default().keps_iwasawa(g)
}

pub fn matsuki(g: &GroupElement) -> Result<MatsukiFactors> {
    Decomposer::default().matsuki(g)
}

pub fn gauss(g: &GroupElement) -> Result<GaussFactors> {
    Decomposer::default().gauss(g)
}

pub fn bruhat_classify(g: &GroupElement) -> Cell {
    Decomposer::default().bruhat_classify(g)
}

pub fn stabilizer_flag(g: &GroupElement) -> bool {
    Decomposer::default().stabilizer_flag(g)
}
