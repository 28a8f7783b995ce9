//! Fixed-size matrix aliases for operators on the 27-dimensional algebra.

use nalgebra::{SMatrix, SVector};

pub const DIM: usize = 27;

pub type Vec27 = SVector<f64, DIM>;
pub type Mat27 = SMatrix<f64, DIM, DIM>;

pub fn max_abs(m: &Mat27) -> f64 {
    m.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
}

pub fn max_abs_vec(v: &Vec27) -> f64 {
    v.iter().fold(0.0f64, |acc, x| acc.max(x.abs()))
}

/// Row-major flattening, the order used by the JSON encoding.
pub fn to_row_major(m: &Mat27) -> Vec<f64> {
    let mut out = Vec::with_capacity(DIM * DIM);
    for r in 0..DIM {
        for c in 0..DIM {
            out.push(m[(r, c)]);
        }
    }
    out
}

pub fn from_row_major(data: &[f64]) -> Option<Mat27> {
    (data.len() == DIM * DIM).then(|| Mat27::from_row_slice(data))
}

/// `a⁻¹b` by LU with partial pivoting; `None` if `a` is singular.
pub fn solve_left(a: &Mat27, b: &Mat27) -> Option<Mat27> {
    a.lu().solve(b)
}

/// `b·a⁻¹` by LU with partial pivoting; `None` if `a` is singular.
pub fn solve_right(b: &Mat27, a: &Mat27) -> Option<Mat27> {
    a.transpose().lu().solve(&b.transpose()).map(|x| x.transpose())
}

/// `a·b` with every entry accumulated in twice the working precision
/// (error-free product and sum transformations), then rounded once.
pub fn mul_accurate(a: &Mat27, b: &Mat27) -> Mat27 {
    Mat27::from_fn(|i, j| {
        let (mut s, mut c) = (0.0f64, 0.0f64);
        for k in 0..DIM {
            let x = a[(i, k)];
            let y = b[(k, j)];
            let p = x * y;
            let pe = x.mul_add(y, -p);
            let t = s + p;
            let z = t - s;
            let se = (s - (t - z)) + (p - z);
            s = t;
            c += se + pe;
        }
        s + c
    })
}
