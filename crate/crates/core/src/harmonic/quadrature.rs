//! Globally adaptive 15-point Gauss–Kronrod quadrature for complex-valued
//! integrands on a union of panels.

use num_complex::Complex64;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Clone, Copy, Debug)]
pub struct QuadResult {
    pub value: Complex64,
    pub error: f64,
}

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

fn gk15(f: &dyn Fn(f64) -> Complex64, a: f64, b: f64) -> Panel {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        kron += s * WGK[j];
        if j % 2 == 1 {
            gauss += s * WG[j / 2];
        }
    }
    Panel { a, b, value: kron * h, error: ((kron - gauss) * h).norm() }
}

/// Integrates `f` over the union of consecutive `breaks` intervals, always
/// bisecting the panel with the largest error estimate, until the summed
/// estimate is below `max(abs_tol, rel_tol·|value|)`.
pub fn integrate(
    f: &dyn Fn(f64) -> Complex64,
    breaks: &[f64],
    rel_tol: f64,
    abs_tol: f64,
    max_panels: usize,
) -> Result<QuadResult> {
    let mut panels: Vec<Panel> = breaks.windows(2).map(|w| gk15(f, w[0], w[1])).collect();
    loop {
        let value: Complex64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        let target = abs_tol.max(rel_tol * value.norm());
        if !value.re.is_finite() || !value.im.is_finite() {
            return Err(Error::NonConvergent { estimate: f64::INFINITY, target });
        }
        if error <= target {
            return Ok(QuadResult { value, error });
        }
        if panels.len() >= max_panels {
            return Err(Error::NonConvergent { estimate: error, target });
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("at least one panel");
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        panels.push(gk15(f, p.a, mid));
        panels.push(gk15(f, mid, p.b));
    }
}

/// Breakpoints `0, 1, 2, 4, …, radius` for integrands on `[0, ∞)`.
pub fn geometric_breaks(radius: f64) -> Vec<f64> {
    let mut out = vec![0.0, 1.0f64.min(radius)];
    let mut x = 1.0;
    while x < radius {
        x = (2.0 * x).min(radius);
        out.push(x);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_and_gaussian() {
        let r = integrate(&|x| Complex64::new(x * x, 0.0), &[0.0, 3.0], 1e-12, 0.0, 100).unwrap();
        assert!((r.value.re - 9.0).abs() < 1e-12);
        let f = |x: f64| Complex64::new((-x * x).exp(), 0.0);
        let r = integrate(&f, &geometric_breaks(40.0), 1e-12, 0.0, 1000).unwrap();
        assert!((r.value.re - 0.5 * std::f64::consts::PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn refuses_when_panel_budget_exhausted() {
        let f = |x: f64| Complex64::new(1.0 / x.sqrt(), 0.0);
        assert!(integrate(&f, &[0.0, 1.0], 1e-15, 0.0, 3).is_err());
    }
}
