//! Real division octonions.
//!
//! The product is the Cayley–Dickson double of the quaternions
//! `span{1, e1, e2, e3}` with doubling unit `e4`:
//! `(a, b)(c, d) = (ac - d̄b, da + bc̄)`, so that `e1e2 = e3`, `e1e4 = e5`,
//! `e2e4 = e6` and `e3e4 = e7`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Index, IndexMut, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// An octonion `c0 + c1 e1 + ... + c7 e7`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Octonion(pub [f64; 8]);

pub const ZERO: Octonion = Octonion([0.0; 8]);
pub const ONE: Octonion = Octonion([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);

type Quat = [f64; 4];

#[inline]
fn qmul(a: &Quat, b: &Quat) -> Quat {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

#[inline]
fn qconj(a: &Quat) -> Quat {
    [a[0], -a[1], -a[2], -a[3]]
}

impl Octonion {
    pub const fn new(c: [f64; 8]) -> Self {
        Octonion(c)
    }

    /// The unit basis vector `e_i` (`e_0 = 1`).
    pub fn basis(i: usize) -> Self {
        let mut c = [0.0; 8];
        c[i] = 1.0;
        Octonion(c)
    }

    pub fn real(r: f64) -> Self {
        let mut c = [0.0; 8];
        c[0] = r;
        Octonion(c)
    }

    /// Builds a purely imaginary octonion from its seven vector coordinates.
    pub fn from_imag(v: [f64; 7]) -> Self {
        let mut c = [0.0; 8];
        c[1..].copy_from_slice(&v);
        Octonion(c)
    }

    pub fn imag_coords(&self) -> [f64; 7] {
        let mut v = [0.0; 7];
        v.copy_from_slice(&self.0[1..]);
        v
    }

    pub fn conj(&self) -> Self {
        let c = &self.0;
        Octonion([c[0], -c[1], -c[2], -c[3], -c[4], -c[5], -c[6], -c[7]])
    }

    /// `(x|1)`
    pub fn re(&self) -> f64 {
        self.0[0]
    }

    /// `x - (x|1)1`
    pub fn im(&self) -> Self {
        let mut c = self.0;
        c[0] = 0.0;
        Octonion(c)
    }

    pub fn inner(&self, other: &Octonion) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.inner(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn is_imaginary(&self, tol: f64) -> bool {
        self.0[0].abs() <= tol
    }

    pub fn mul(&self, other: &Octonion) -> Octonion {
        let (a, b) = self.halves();
        let (c, d) = other.halves();
        let lo = qmul(&a, &c);
        let lo2 = qmul(&qconj(&d), &b);
        let hi = qmul(&d, &a);
        let hi2 = qmul(&b, &qconj(&c));
        Octonion([
            lo[0] - lo2[0],
            lo[1] - lo2[1],
            lo[2] - lo2[2],
            lo[3] - lo2[3],
            hi[0] + hi2[0],
            hi[1] + hi2[1],
            hi[2] + hi2[2],
            hi[3] + hi2[3],
        ])
    }

    #[inline]
    fn halves(&self) -> (Quat, Quat) {
        let c = &self.0;
        ([c[0], c[1], c[2], c[3]], [c[4], c[5], c[6], c[7]])
    }

    pub fn scale(&self, s: f64) -> Octonion {
        let mut c = self.0;
        c.iter_mut().for_each(|v| *v *= s);
        Octonion(c)
    }

    /// Unit octonion in the direction of `self`, or `None` for zero.
    pub fn normalized(&self) -> Option<Octonion> {
        let n = self.norm();
        (n > 0.0).then(|| self.scale(1.0 / n))
    }
}

impl Index<usize> for Octonion {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for Octonion {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

impl Add for Octonion {
    type Output = Octonion;
    fn add(mut self, rhs: Octonion) -> Octonion {
        self += rhs;
        self
    }
}

impl AddAssign for Octonion {
    fn add_assign(&mut self, rhs: Octonion) {
        for (a, b) in self.0.iter_mut().zip(rhs.0.iter()) {
            *a += b;
        }
    }
}

impl Sub for Octonion {
    type Output = Octonion;
    fn sub(mut self, rhs: Octonion) -> Octonion {
        self -= rhs;
        self
    }
}

impl SubAssign for Octonion {
    fn sub_assign(&mut self, rhs: Octonion) {
        for (a, b) in self.0.iter_mut().zip(rhs.0.iter()) {
            *a -= b;
        }
    }
}

impl Neg for Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        self.scale(-1.0)
    }
}

impl Mul for Octonion {
    type Output = Octonion;
    fn mul(self, rhs: Octonion) -> Octonion {
        Octonion::mul(&self, &rhs)
    }
}

impl Mul<f64> for Octonion {
    type Output = Octonion;
    fn mul(self, rhs: f64) -> Octonion {
        self.scale(rhs)
    }
}

impl Mul<Octonion> for f64 {
    type Output = Octonion;
    fn mul(self, rhs: Octonion) -> Octonion {
        rhs.scale(self)
    }
}

impl Div<f64> for Octonion {
    type Output = Octonion;
    fn div(self, rhs: f64) -> Octonion {
        self.scale(1.0 / rhs)
    }
}

/// Literal syntax: a signed sum of terms `c`, `c eK` or `eK` with `K` in
/// `1..=7`, e.g. `1+2e3-0.5e7`. Coefficients are plain decimals (no
/// exponent notation, since `e` introduces a basis token).
impl fmt::Display for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            if wrote && c > 0.0 {
                write!(f, "+")?;
            }
            if i == 0 {
                write!(f, "{c}")?;
            } else if c == 1.0 {
                write!(f, "e{i}")?;
            } else if c == -1.0 {
                write!(f, "-e{i}")?;
            } else {
                write!(f, "{c}e{i}")?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl FromStr for Octonion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let src: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (oct, used) = parse_octonion_chars(&src, 0)?;
        if used != src.len() {
            return Err(Error::syntax(used, "trailing characters in octonion literal"));
        }
        Ok(oct)
    }
}

/// Parses an octonion literal starting at `pos`; returns the value and the
/// position just past it. Stops at the first character that cannot extend
/// the literal. Whitespace must already be removed.
pub(crate) fn parse_octonion_chars(src: &[char], start: usize) -> Result<(Octonion, usize), Error> {
    let mut pos = start;
    let mut out = ZERO;
    let mut terms = 0;
    loop {
        let term_start = pos;
        let mut sign = 1.0;
        match src.get(pos) {
            Some('+') => pos += 1,
            Some('-') => {
                sign = -1.0;
                pos += 1;
            }
            _ if terms > 0 => break,
            _ => {}
        }
        let num_start = pos;
        while pos < src.len() && (src[pos].is_ascii_digit() || src[pos] == '.') {
            pos += 1;
        }
        let coeff = if pos > num_start {
            let text: String = src[num_start..pos].iter().collect();
            text.parse::<f64>()
                .map_err(|_| Error::syntax(num_start, format!("bad number `{text}`")))?
        } else {
            1.0
        };
        let mut index = 0usize;
        let has_basis = src.get(pos) == Some(&'e');
        if has_basis {
            match src.get(pos + 1).and_then(|c| c.to_digit(10)) {
                Some(d) if (1..=7).contains(&d) => {
                    index = d as usize;
                    pos += 2;
                }
                _ => return Err(Error::syntax(pos, "expected basis token e1..e7")),
            }
        }
        if pos == num_start {
            if terms == 0 && pos == term_start {
                return Err(Error::syntax(pos, "expected octonion literal"));
            }
            return Err(Error::syntax(pos, "dangling sign in octonion literal"));
        }
        out[index] += sign * coeff;
        terms += 1;
    }
    Ok((out, pos))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize) -> Octonion {
        Octonion::basis(i)
    }

    #[test]
    fn unit_and_imaginary_squares() {
        assert_eq!(ONE * e(5), e(5));
        for i in 1..8 {
            assert_eq!(e(i) * e(i), -ONE);
        }
    }

    #[test]
    fn doubling_table() {
        assert_eq!(e(1) * e(2), e(3));
        assert_eq!(e(1) * e(4), e(5));
        assert_eq!(e(2) * e(4), e(6));
        assert_eq!(e(3) * e(4), e(7));
        assert_eq!(e(2) * e(1), -e(3));
    }

    #[test]
    fn conj_inner_norm() {
        assert_eq!(e(1).conj(), -e(1));
        assert_eq!(e(2).inner(&e(2)), 1.0);
        assert_eq!(e(2).inner(&e(3)), 0.0);
        let x: Octonion = "1+2e3".parse().unwrap();
        assert_eq!(x.norm_sq(), 5.0);
        assert_eq!(x.re(), 1.0);
        assert_eq!(x.im(), 2.0 * e(3));
    }

    #[test]
    fn literal_round_trip() {
        let x: Octonion = "1+2e3-0.5e7".parse().unwrap();
        assert_eq!(x.0, [1.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, -0.5]);
        assert_eq!(x.to_string().parse::<Octonion>().unwrap(), x);
        assert_eq!("-e2".parse::<Octonion>().unwrap(), -e(2));
        assert_eq!("0".parse::<Octonion>().unwrap(), ZERO);
        assert_eq!(ZERO.to_string(), "0");
        assert!("e8".parse::<Octonion>().is_err());
        assert!("1+".parse::<Octonion>().is_err());
        assert!("".parse::<Octonion>().is_err());
    }
}
