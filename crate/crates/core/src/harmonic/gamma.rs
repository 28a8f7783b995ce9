//! Complex log-Gamma by the Lanczos approximation (g = 7, 9 terms) with
//! reflection for `Re z < ½`.

use num_complex::Complex64;

const G: f64 = 7.0;
const COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// True when `z` is within `tol` of a non-positive integer.
pub fn is_pole(z: Complex64, tol: f64) -> bool {
    z.im.abs() <= tol && z.re <= tol && (z.re - z.re.round()).abs() <= tol
}

/// `log Γ(z)` on the principal branch of the Lanczos sum; only
/// differences and exponentials of this value are used, so the branch of
/// the imaginary part is immaterial.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let pi = std::f64::consts::PI;
        let s = (z * pi).sin();
        return Complex64::new(pi.ln(), 0.0) - s.ln() - ln_gamma(Complex64::new(1.0, 0.0) - z);
    }
    let z = z - 1.0;
    let mut x = Complex64::new(COEF[0], 0.0);
    for (i, c) in COEF.iter().enumerate().skip(1) {
        x += *c / (z + i as f64);
    }
    let t = z + G + 0.5;
    Complex64::new((2.0 * std::f64::consts::PI).sqrt().ln(), 0.0) + (z + 0.5) * t.ln() - t + x.ln()
}

/// `Γ(z)` for real `z > 0`.
pub fn gamma_real(x: f64) -> f64 {
    ln_gamma(Complex64::new(x, 0.0)).re.exp()
}
