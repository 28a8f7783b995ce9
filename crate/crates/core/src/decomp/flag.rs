//! Reduction maps on `𝒥¹` and the orbit classifications of the flag space
//! `ℱ = 𝒩₁⁻/ℝ₊`.

use serde::Serialize;

use super::{Decomposer, NParams};
use crate::error::{Error, Result};
use crate::jordan::JordanElement;
use crate::liegroup::{d4_rotate, exp_a, exp_n, sigma, GroupElement, NLevel};
use crate::octonion::{Octonion, ONE};

/// `(n₁, n₂)` parameters: `n₁ = exp𝒢₁({X}_{Q⁻}/{X}_{−E₁+E₂})` and
/// `n₂ = exp𝒢₂({X}_{ImF₃¹}/(P⁻|X))`.
pub fn n_pair(x: &JordanElement, cell_tol: f64) -> Result<(Octonion, Octonion)> {
    let d = JordanElement::p_minus().inner(x);
    if d.abs() <= cell_tol * x.norm() {
        return Err(Error::DegeneratePairing { what: "(P-|X)", value: d });
    }
    let c = x.coords();
    let r = 0.5 * d;
    Ok((c.y / r, c.p / d))
}

/// `n_X = n₁n₂ ∈ N⁺`.
pub fn n_x(x: &JordanElement, cell_tol: f64) -> Result<GroupElement> {
    let (a, b) = n_pair(x, cell_tol)?;
    exp_n(NLevel::Plus, a, b)
}

/// `n_X X = ½(P⁻|X)(−E₁+E₂) + ¼((P⁻|X)⁻¹tr(X)² − (P⁻|X))P⁻ + ½tr(X)(E − E₃)`.
pub fn nx_closed_form(x: &JordanElement, cell_tol: f64) -> Result<JordanElement> {
    let d = JordanElement::p_minus().inner(x);
    if d.abs() <= cell_tol * x.norm() {
        return Err(Error::DegeneratePairing { what: "(P-|X)", value: d });
    }
    let tr = x.trace();
    let e12 = JordanElement::e(2) - JordanElement::e(1);
    Ok((0.5 * d) * e12
        + (0.25 * (tr * tr / d - d)) * JordanElement::p_minus()
        + (0.5 * tr) * (JordanElement::unit() - JordanElement::e(3)))
}

/// `k ∈ K_ε` with `kX = scale·P_{1i}⁻`.
#[derive(Clone, Debug, Serialize)]
pub struct FlagWitness {
    pub k: GroupElement,
    pub scale: f64,
}

/// The two `K_ε`-orbits on `ℱ`.
#[derive(Clone, Debug, Serialize)]
pub enum KEpsOrbit {
    P12(FlagWitness),
    P13(FlagWitness),
}

impl KEpsOrbit {
    pub fn label(&self) -> &'static str {
        match self {
            KEpsOrbit::P12(_) => "P12",
            KEpsOrbit::P13(_) => "P13",
        }
    }

    pub fn witness(&self) -> &FlagWitness {
        match self {
            KEpsOrbit::P12(w) | KEpsOrbit::P13(w) => w,
        }
    }
}

/// The two `N⁻`-orbits on `ℱ`; the open one carries `z_X`.
#[derive(Clone, Debug, Serialize)]
pub enum NMinusOrbit {
    P(NParams),
    SigmaP,
}

impl NMinusOrbit {
    pub fn label(&self) -> &'static str {
        match self {
            NMinusOrbit::P(_) => "P",
            NMinusOrbit::SigmaP => "sigmaP",
        }
    }
}

impl Decomposer {
    fn require_null_cone(&self, x: &JordanElement) -> Result<()> {
        if !x.classify().in_n1m {
            return Err(Error::invalid("element is not in the negative null cone"));
        }
        Ok(())
    }

    /// `z_X = σ̃(n_{σX})`, so that `z_X X = ¼(X|σP⁻)P⁻`.
    pub fn z_of_x(&self, x: &JordanElement) -> Result<NParams> {
        let sx = sigma(1).apply(x);
        let (a, b) = n_pair(&sx, self.tol.cell)?;
        Ok(NParams::new(a, b))
    }

    pub fn flag_classify_nminus(&self, x: &JordanElement) -> Result<NMinusOrbit> {
        self.require_null_cone(x)?;
        let c = x.inner(&JordanElement::sigma_p_minus());
        if c.abs() <= self.tol.cell * x.norm() {
            return Ok(NMinusOrbit::SigmaP);
        }
        if c < 0.0 {
            return Err(Error::FactorCheck(format!("(X|sigma P-) = {c:e} is negative beyond tolerance")));
        }
        Ok(NMinusOrbit::P(self.z_of_x(x)?))
    }

    /// Classifies `[X]` by the sign of `(X|E₂)` and builds the witness.
    pub fn flag_classify_keps(&self, x: &JordanElement) -> Result<KEpsOrbit> {
        self.require_null_cone(x)?;
        let xi2 = x.xi[1];
        if xi2.abs() <= self.tol.cell * x.norm() {
            let (k, scale) = self.p13_rotation(x)?;
            return Ok(KEpsOrbit::P13(FlagWitness { k, scale }));
        }
        if xi2 < 0.0 {
            return Err(Error::FactorCheck(format!("(X|E2) = {xi2:e} is negative beyond tolerance")));
        }
        // Boost along slot 2 until x₂ vanishes; rank one then forces
        // ξ₃ = 0 and x₁ = 0, leaving ξ₂(−E₁+E₂) + F₃¹(x₃).
        let y = x.scale(1.0 / xi2);
        let boost = match y.x[1].normalized() {
            Some(a) => {
                let ratio = 2.0 * y.x[1].norm() / (y.xi[2] - y.xi[0]);
                exp_a(2, 0.5 * ratio.atanh(), a)?
            }
            None => GroupElement::identity(),
        };
        let z = boost.apply(&y);
        let s = z.xi[1];
        let dev = [z.x[0].max_abs(), z.x[1].max_abs(), z.xi[2].abs(), (z.xi[0] + s).abs()]
            .into_iter()
            .fold(0.0, f64::max);
        if !(s > 0.0) || dev > self.tol.verify * s.max(1.0) {
            return Err(Error::ShapeViolation(format!("boosted element off the P12 shape by {dev:e}")));
        }
        let u = z.x[2].normalized().ok_or_else(|| Error::ShapeViolation("vanishing F3 slot".into()))?;
        let rot = d4_rotate(3, u, ONE)?;
        let k = rot.compose_tol(&boost, self.tol.verify)?;
        Ok(KEpsOrbit::P12(FlagWitness { k, scale: xi2 * s }))
    }
}

/// Transport of the `S¹⁵` chart along `g`: the point `(x, y)` goes to
/// `s15_to(g·s15_from(x, y))`. Returns the ray distance between
/// `g·s15_from(x, y)` and `s15_from` of the image point.
pub fn s15_transport_check(g: &GroupElement, x: Octonion, y: Octonion) -> Result<f64> {
    let moved = g.apply(&JordanElement::s15_from(x, y)?);
    let (u, v) = moved.s15_to()?;
    let back = JordanElement::s15_from(u, v)?;
    Ok(moved.ray_normalized()?.max_abs_diff(&back))
}
