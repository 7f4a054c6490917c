//! Thin bridges between [`Tensor`] matrices and nalgebra's dense factorizations.

use nalgebra::DMatrix;

use crate::tensor::Tensor;
use crate::Scalar;

pub fn to_matrix(t: &Tensor) -> DMatrix<Scalar> {
    assert_eq!(t.rank(), 2, "expected a matrix");
    let (r, c) = (t.shape()[0], t.shape()[1]);
    DMatrix::from_row_slice(r, c, t.data())
}

pub fn from_matrix(m: &DMatrix<Scalar>) -> Tensor {
    let (r, c) = m.shape();
    Tensor::from_fn(&[r, c], |i| m[(i[0], i[1])])
}

pub fn singular_values(m: &DMatrix<Scalar>) -> Vec<f64> {
    let mut s: Vec<f64> = m.clone().singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.partial_cmp(a).unwrap());
    s
}

/// Numerical rank: singular values above `tol` times the largest one.
pub fn rank(m: &DMatrix<Scalar>, tol: f64) -> usize {
    let s = singular_values(m);
    match s.first() {
        Some(&top) if top > 0.0 => s.iter().filter(|&&v| v > tol * top).count(),
        _ => 0,
    }
}

/// LU inverse, refused when the matrix is singular relative to `tol`.
pub fn inverse(t: &Tensor, tol: f64) -> Option<Tensor> {
    let m = to_matrix(t);
    if m.nrows() != m.ncols() {
        return None;
    }
    let s = singular_values(&m);
    let top = *s.first()?;
    if top == 0.0 || *s.last()? <= tol * top {
        return None;
    }
    m.lu().try_inverse().map(|inv| from_matrix(&inv))
}

/// Matrix product of two rank-2 tensors.
pub fn mat_mul(a: &Tensor, b: &Tensor) -> Tensor {
    a.contract(&[1], b, &[0])
}

pub fn transpose(a: &Tensor) -> Tensor {
    a.permute(&[1, 0])
}

/// Apply a d×d matrix (out, in) to a coordinate vector.
pub fn apply(m: &Tensor, v: &[Scalar]) -> Vec<Scalar> {
    let (r, c) = (m.shape()[0], m.shape()[1]);
    assert_eq!(c, v.len());
    (0..r).map(|i| (0..c).map(|j| m.get(&[i, j]) * v[j]).sum()).collect()
}
