//! Constructive elements of `D₄ = Spin(8)`, the pointwise stabilizer of
//! `E₁, E₂, E₃`.
//!
//! The commutator `[Ãⱼ¹(e₀), Ãⱼ¹(e_a)]` kills every `Eᵢ` and acts on slot `j`
//! as an infinitesimal rotation of the `(e₀, e_a)` plane. A chain of seven
//! such rotations carries any `u` in slot `j` to `|u|·1`; composing the chain
//! for `u` with the inverse chain for `v` gives the rotation `u ↦ v`.

use super::generators::gen_a_any;
use super::{expm_mat, AlgebraElement, GroupElement, VERIFY_TOL};
use crate::error::{Error, Result};
use crate::jordan::JordanElement;
use crate::linalg::Mat27;
use crate::octonion::Octonion;

const NORM_TOL: f64 = 1e-12;
const ANGLE_TOL: f64 = 1e-15;
const MAX_POLISH: usize = 8;

/// `[Ãⱼ¹(e_a), Ãⱼ¹(e_b)]`.
pub fn slot_rotation_generator(j: usize, a: usize, b: usize) -> AlgebraElement {
    gen_a_any(j, Octonion::basis(a)).bracket(&gen_a_any(j, Octonion::basis(b)))
}

fn slot_of(m: &Mat27, j: usize, w: &Octonion) -> Octonion {
    let img = JordanElement::from_vec(&(m * JordanElement::f(j, *w).to_vec()));
    img.x[j - 1]
}

/// Returns `R ∈ D₄` with `R·Fⱼ¹(w) = Fⱼ¹(|w|·1)`.
fn reduce_to_real(j: usize, w: Octonion) -> Result<Mat27> {
    let mut total = Mat27::identity();
    let mut cur = w;
    let off = 3 + 8 * (j - 1);
    for a in 1..8usize {
        let gen = slot_rotation_generator(j, 0, a);
        let block = gen.mat.fixed_view::<8, 8>(off, off).into_owned();
        let omega = (0.5 * block.norm_squared()).sqrt();
        if omega == 0.0 {
            return Err(Error::RankDeficient { expected: 2, found: 0 });
        }
        let q = block.column(0) / omega;
        let alpha = cur[0];
        let beta: f64 = (0..8).map(|i| q[i] * cur[i]).sum();
        // A negative real multiple of 1 still needs a half turn.
        let negative_real = alpha < 0.0 && cur.im().norm() <= ANGLE_TOL * cur.norm();
        if beta.abs() <= ANGLE_TOL * cur.norm() && !negative_real {
            continue;
        }
        let bound = std::f64::consts::PI / omega;
        let mut theta = (-beta).atan2(alpha) / omega;
        let radius = alpha.hypot(beta);
        let mut step = Mat27::identity();
        let mut converged = false;
        for _ in 0..MAX_POLISH {
            step = expm_mat(&(gen.mat * theta));
            let moved = slot_of(&step, j, &cur);
            let resid: f64 = (0..8).map(|i| q[i] * moved[i]).sum();
            if resid.abs() <= 1e-12 * radius && moved[0] > 0.0 {
                converged = true;
                break;
            }
            theta = (theta - resid / (omega * radius)).clamp(-bound, bound);
        }
        if !converged {
            return Err(Error::Convergence(format!(
                "slot-{j} rotation in plane (e0, e{a}) did not reach the target"
            )));
        }
        cur = slot_of(&step, j, &cur);
        total = step * total;
    }
    Ok(total)
}

/// An element `k ∈ D₄` with `k·Fⱼ¹(u) = Fⱼ¹(v)`; requires `|u| = |v| > 0`.
pub fn d4_rotate(j: usize, u: Octonion, v: Octonion) -> Result<GroupElement> {
    if !(1..=3).contains(&j) {
        return Err(Error::invalid(format!("slot index must be 1, 2 or 3, got {j}")));
    }
    let (nu, nv) = (u.norm_sq(), v.norm_sq());
    if nu == 0.0 || (nu - nv).abs() > NORM_TOL * nu.max(nv) {
        return Err(Error::invalid(format!("d4_rotate needs |u| = |v| > 0, got |u|² = {nu}, |v|² = {nv}")));
    }
    let ru = GroupElement::new(reduce_to_real(j, u)?)?;
    let rv = GroupElement::new(reduce_to_real(j, v)?)?;
    let k = rv.inverse().compose(&ru)?;
    let fu = JordanElement::f(j, u);
    let fv = JordanElement::f(j, v);
    let miss = k.apply(&fu).max_abs_diff(&fv) / fv.norm();
    if miss > VERIFY_TOL || !k.fixes(&super::d4_targets(), VERIFY_TOL) {
        return Err(Error::Convergence(format!("d4_rotate postcondition missed by {miss:e}")));
    }
    Ok(k)
}
