//! Gauss factors in double-double arithmetic.
//!
//! Near the closed Bruhat cell the factors `z` and `a_t·n` are large and
//! cancel down to `g = O(1)`. Every ingredient here is a polynomial in the
//! parameters (the nilpotent exponentials terminate, `a_t` is a sum of
//! weight projectors), so carrying 106 bits keeps the cancellation exact
//! to `f64` accuracy. The one limit left is the input itself: an `f64`
//! matrix sits about `ε` off the group, and the factorization magnifies
//! that by `1/c²`, `c = (gP⁻|σP⁻)`.

use std::sync::OnceLock;

use twofloat::TwoFloat;

use super::NParams;
use crate::error::{Error, Result};
use crate::jordan::JordanElement;
use crate::linalg::Mat27;
use crate::liegroup::{gen_a, gen_g, sigma, GLevel};
use crate::octonion::{Octonion, ONE};

const N: usize = 27;
/// Eigenvalues of `Ã₃¹(1)` on `𝒥¹`.
const WEIGHTS: [f64; 5] = [-2.0, -1.0, 0.0, 1.0, 2.0];

#[derive(Clone)]
struct DdMat(Vec<TwoFloat>);

impl DdMat {
    fn zero() -> Self {
        DdMat(vec![TwoFloat::from(0.0); N * N])
    }

    fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            m.0[i * N + i] = TwoFloat::from(1.0);
        }
        m
    }

    fn from_f64(a: &Mat27) -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            for j in 0..N {
                m.0[i * N + j] = TwoFloat::from(a[(i, j)]);
            }
        }
        m
    }

    fn to_f64(&self) -> Mat27 {
        Mat27::from_fn(|i, j| self.0[i * N + j].hi() + self.0[i * N + j].lo())
    }

    fn mul(&self, other: &DdMat) -> DdMat {
        let mut out = Self::zero();
        for i in 0..N {
            for k in 0..N {
                let a = self.0[i * N + k];
                if a == 0.0 {
                    continue;
                }
                for j in 0..N {
                    let b = other.0[k * N + j];
                    if b != 0.0 {
                        out.0[i * N + j] += a * b;
                    }
                }
            }
        }
        out
    }

    fn axpy(&mut self, s: TwoFloat, x: &DdMat) {
        for (y, v) in self.0.iter_mut().zip(&x.0) {
            if *v != 0.0 {
                *y += s * *v;
            }
        }
    }

    fn row_dot(&self, i: usize, v: &[f64]) -> TwoFloat {
        let mut acc = TwoFloat::from(0.0);
        for (j, vj) in v.iter().enumerate() {
            if *vj != 0.0 {
                acc += self.0[i * N + j] * *vj;
            }
        }
        acc
    }
}

struct Basis {
    g1: Vec<DdMat>,
    g2: Vec<DdMat>,
    projectors: Vec<DdMat>,
    sigma: Vec<f64>,
}

fn basis() -> &'static Basis {
    static B: OnceLock<Basis> = OnceLock::new();
    B.get_or_init(|| {
        let g1 = (0..8)
            .map(|i| DdMat::from_f64(&gen_g(GLevel::P1, Octonion::basis(i)).expect("basis octonion").mat))
            .collect();
        let g2 = (1..8)
            .map(|i| DdMat::from_f64(&gen_g(GLevel::P2, Octonion::basis(i)).expect("imaginary basis").mat))
            .collect();
        let h = DdMat::from_f64(&gen_a(3, ONE).expect("unit direction").mat);
        let projectors = WEIGHTS
            .iter()
            .map(|&w| {
                let mut p = DdMat::identity();
                for &v in WEIGHTS.iter().filter(|&&v| v != w) {
                    let mut f = h.clone();
                    f.axpy(TwoFloat::from(-v), &DdMat::identity());
                    p = p.mul(&f);
                    for e in p.0.iter_mut() {
                        *e /= w - v;
                    }
                }
                p
            })
            .collect();
        let s = sigma(1);
        let sigma = (0..N).map(|i| s.mat()[(i, i)]).collect();
        Basis { g1, g2, projectors, sigma }
    })
}

/// `exp(𝒢₁(x) + 𝒢₂(p))` for double-double parameters; the series stops at
/// the fourth power because the generator raises weight by at least one.
fn exp_plus(x: &[TwoFloat; 8], p: &[TwoFloat; 8]) -> DdMat {
    let b = basis();
    let mut gen = DdMat::zero();
    for (xi, g) in x.iter().zip(&b.g1) {
        gen.axpy(*xi, g);
    }
    for (pi, g) in p[1..].iter().zip(&b.g2) {
        gen.axpy(*pi, g);
    }
    let mut out = DdMat::identity();
    let mut term = DdMat::identity();
    for k in 1..=4 {
        term = term.mul(&gen);
        let fact = [1.0, 1.0, 2.0, 6.0, 24.0][k];
        out.axpy(TwoFloat::from(1.0) / fact, &term);
    }
    out
}

type Params = ([TwoFloat; 8], [TwoFloat; 8]);

fn round(v: TwoFloat) -> f64 {
    v.hi() + v.lo()
}

fn to_nparams((x, p): &Params) -> NParams {
    NParams::new(Octonion(std::array::from_fn(|i| round(x[i]))), Octonion(std::array::from_fn(|i| round(p[i]))))
}

fn from_nparams(n: &NParams) -> Params {
    (std::array::from_fn(|i| TwoFloat::from(n.x[i])), std::array::from_fn(|i| TwoFloat::from(n.p[i])))
}

fn negate((x, p): &Params) -> Params {
    (x.map(|v| -v), p.map(|v| -v))
}

/// Weights of the trace form `(X|Y)` in the coordinates of `𝒥¹`.
fn form_weight(k: usize) -> f64 {
    match k {
        0..=2 => 1.0,
        3..=10 => 2.0,
        _ => -2.0,
    }
}

/// `g⁻¹ = W⁻¹gᵀW`, exact for elements preserving the trace form.
fn form_inverse(g: &DdMat) -> DdMat {
    let mut out = DdMat::zero();
    for i in 0..N {
        for j in 0..N {
            out.0[i * N + j] = g.0[j * N + i] * (form_weight(j) / form_weight(i));
        }
    }
    out
}

/// `exp_N(−, x, p) = σ₁·exp_N(+, x, p)·σ₁`.
fn exp_minus(params: &Params) -> DdMat {
    let b = basis();
    let mut z = exp_plus(&params.0, &params.1);
    for i in 0..N {
        for j in 0..N {
            z.0[i * N + j] *= b.sigma[i] * b.sigma[j];
        }
    }
    z
}

/// `(hP⁻|E₁)` and the `N⁺` parameters of `h ∈ KAN⁺`, read off its first row.
fn an_params(h: &DdMat) -> Result<(TwoFloat, Params)> {
    let d = h.row_dot(0, JordanElement::p_minus().to_vec().as_slice());
    if !(d < 0.0) {
        return Err(Error::FactorCheck(format!("(hP-|E1) = {} is not negative", d.hi())));
    }
    let mut x = [TwoFloat::from(0.0); 8];
    let mut p = [TwoFloat::from(0.0); 8];
    for i in 0..8 {
        let e = Octonion::basis(i);
        x[i] = 0.5 * h.row_dot(0, JordanElement::q_plus(e).to_vec().as_slice()) / d;
        if i > 0 {
            p[i] = -0.5 * h.row_dot(0, JordanElement::f(3, e).to_vec().as_slice()) / d;
        }
    }
    Ok((d, (x, p)))
}

/// `a_t` with `e^t = s`, as a sum over the weight projectors.
fn a_of_exp(s: TwoFloat) -> DdMat {
    let mut a = DdMat::zero();
    for (w, proj) in WEIGHTS.iter().zip(&basis().projectors) {
        let mut c = TwoFloat::from(1.0);
        for _ in 0..(w.abs() as usize) {
            c = if *w > 0.0 { c * s } else { c / s };
        }
        a.axpy(c, proj);
    }
    a
}

/// Iwasawa factors `h = k·a_t·n` with `e^{2t} = −d`.
struct DdIwasawa {
    k: DdMat,
    d: TwoFloat,
    n: Params,
}

fn iwasawa_dd(h: &DdMat) -> Result<DdIwasawa> {
    let (d, n) = an_params(h)?;
    let n_inv = exp_plus(&negate(&n).0, &negate(&n).1);
    let k = h.mul(&n_inv).mul(&a_of_exp((-d).sqrt().recip()));
    Ok(DdIwasawa { k, d, n })
}

/// `e^t` in double-double: Taylor series at `t/2¹⁰`, then ten squarings.
fn dd_exp(t: TwoFloat) -> TwoFloat {
    let r = t / 1024.0;
    let mut term = TwoFloat::from(1.0);
    let mut sum = term;
    for k in 1..=24 {
        term = term * r / f64::from(k);
        sum += term;
    }
    for _ in 0..10 {
        sum = sum * sum;
    }
    sum
}

/// Gauss factors `g = z·m·a_t·n` in double-double arithmetic, treating the
/// entries of `g` as exact.
///
/// Stripping `z` and `a_t·n` from `g` directly amplifies rounding by
/// `|z⁻¹|·|(a_t n)⁻¹|`, which blows up near the closed cell. Instead the
/// factors come from the Iwasawa decompositions `g = k_g·a_g·n_g` and
/// `z = k_z·a_z·n_z`: `m = k_z⁻¹·k_g` and
/// `a_t·n = (m⁻¹n_z m)⁻¹·a_g·n_g` with `t = t_g − t_z`.
pub(crate) fn gauss_factors(g: &Mat27) -> Result<(NParams, Mat27, f64, NParams)> {
    let (_, z) = gauss_z_params(g);
    let zmat = exp_minus(&from_nparams(&z));
    let iz = iwasawa_dd(&zmat)?;
    let ig = iwasawa_dd(&DdMat::from_f64(g))?;
    let m = form_inverse(&iz.k).mul(&ig.k);
    // e^{2t} = d_g / d_z.
    let ratio = ig.d / iz.d;
    let conj = form_inverse(&m).mul(&exp_plus(&negate(&iz.n).0, &negate(&iz.n).1)).mul(&m);
    let (_, (cx, cp)) = an_params(&conj)?;
    // a_{−t}·n(x, p)·a_t = n(e^{−t}x, e^{−2t}p).
    let s = ratio.sqrt().recip();
    let shifted = exp_plus(&cx.map(|v| v * s), &cp.map(|v| v * s * s));
    let (_, n) = an_params(&shifted.mul(&exp_plus(&ig.n.0, &ig.n.1)))?;
    Ok((z, m.to_f64(), 0.5 * round(ratio).ln(), to_nparams(&n)))
}

/// `z·m·a_t·n` evaluated in double-double from the factor parameters, so
/// the only error left is that of the parameters themselves.
pub(crate) fn gauss_product(z: &NParams, m: &Mat27, t: f64, n: &NParams) -> Mat27 {
    let np = from_nparams(n);
    let s = dd_exp(TwoFloat::from(t));
    exp_minus(&from_nparams(z))
        .mul(&DdMat::from_f64(m))
        .mul(&a_of_exp(s))
        .mul(&exp_plus(&np.0, &np.1))
        .to_f64()
}

/// `(v|w)` for a double-double `v` and an exact `w`.
fn inner_dd(v: &[TwoFloat; N], w: &JordanElement) -> TwoFloat {
    let w = w.to_vec();
    let mut acc = TwoFloat::from(0.0);
    for (k, vk) in v.iter().enumerate() {
        if w[k] != 0.0 {
            acc += *vk * (form_weight(k) * w[k]);
        }
    }
    acc
}

/// The Gauss `N⁻` parameters and the pairing `c = (gP⁻|σP⁻)`, treating the
/// entries of `g` as exact. The parameters are ratios over `c`, so near the
/// closed cell plain `f64` evaluation loses `log₁₀(1/c)` digits.
pub(crate) fn gauss_z_params(g: &Mat27) -> (f64, NParams) {
    let pm = JordanElement::p_minus().to_vec();
    let gp: [TwoFloat; N] = std::array::from_fn(|i| {
        let mut acc = TwoFloat::from(0.0);
        for (j, pj) in pm.iter().enumerate() {
            if *pj != 0.0 {
                acc += TwoFloat::new_mul(g[(i, j)], *pj);
            }
        }
        acc
    });
    let c = inner_dd(&gp, &JordanElement::sigma_p_minus());
    let mut x = Octonion::default();
    let mut p = Octonion::default();
    for i in 0..8 {
        let e = Octonion::basis(i);
        x[i] = round(-0.5 * inner_dd(&gp, &JordanElement::q_minus(e)) / c);
        if i > 0 {
            p[i] = round(-0.5 * inner_dd(&gp, &JordanElement::f(3, e)) / c);
        }
    }
    (round(c), NParams::new(x, p))
}
