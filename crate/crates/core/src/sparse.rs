//! Column-sparse views of the structure tensors, used where dense contractions would
//! need d⁵ or d⁶ storage.

use std::collections::HashMap;

use crate::algebra::AlgebraData;
use crate::tensor::Tensor;
use crate::Scalar;

fn nz(v: Scalar) -> bool {
    v.re != 0.0 || v.im != 0.0
}

/// λ by input pair: `cols[j*d + l]` lists `(o, p, λ^{op}_{jl})`.
#[derive(Clone, Debug)]
pub(crate) struct SparseCross {
    pub d: usize,
    pub cols: Vec<Vec<(usize, usize, Scalar)>>,
}

impl SparseCross {
    pub fn new(l: &Tensor) -> Self {
        let d = l.shape()[0];
        let mut cols = vec![Vec::new(); d * d];
        let data = l.data();
        for o in 0..d {
            for p in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        let v = data[((o * d + p) * d + j) * d + k];
                        if nz(v) {
                            cols[j * d + k].push((o, p, v));
                        }
                    }
                }
            }
        }
        SparseCross { d, cols }
    }

    pub fn col(&self, j: usize, l: usize) -> &[(usize, usize, Scalar)] {
        &self.cols[j * self.d + l]
    }
}

/// Multiplication by input pair: `cols[a*d + b]` lists `(c, C_ab^c)`.
#[derive(Clone, Debug)]
pub(crate) struct SparseMult {
    pub d: usize,
    pub cols: Vec<Vec<(usize, Scalar)>>,
}

impl SparseMult {
    pub fn new(alg: &AlgebraData) -> Self {
        let d = alg.dim();
        let m = alg.mult().data();
        let cols = (0..d * d)
            .map(|ab| (0..d).filter(|&c| nz(m[ab * d + c])).map(|c| (c, m[ab * d + c])).collect())
            .collect();
        SparseMult { d, cols }
    }

    pub fn col(&self, a: usize, b: usize) -> &[(usize, Scalar)] {
        &self.cols[a * self.d + b]
    }
}

/// Nonzero entries of a matrix.
pub(crate) fn entries(t: &Tensor) -> Vec<(usize, usize, Scalar)> {
    let c = t.shape()[1];
    t.data()
        .iter()
        .enumerate()
        .filter(|(_, v)| nz(**v))
        .map(|(i, v)| (i / c, i % c, *v))
        .collect()
}

/// Running max-norm residual of a comparison done piece by piece.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Resid {
    diff: f64,
    lhs: f64,
    rhs: f64,
}

impl Resid {
    pub fn push(&mut self, l: Scalar, r: Scalar) {
        self.diff = self.diff.max((l - r).norm());
        self.lhs = self.lhs.max(l.norm());
        self.rhs = self.rhs.max(r.norm());
    }

    /// Relative residual, or `None` when both sides vanish identically.
    pub fn value(&self) -> Option<f64> {
        let scale = self.lhs.max(self.rhs);
        (scale > 0.0).then(|| self.diff / scale)
    }
}

/// Dense accumulator that remembers which slots were written, so clearing is cheap.
pub(crate) struct Acc {
    vals: Vec<Scalar>,
    touched: Vec<usize>,
    mark: Vec<bool>,
}

impl Acc {
    pub fn new(n: usize) -> Self {
        Acc { vals: vec![Scalar::new(0.0, 0.0); n], touched: Vec::new(), mark: vec![false; n] }
    }

    pub fn add(&mut self, i: usize, v: Scalar) {
        if !self.mark[i] {
            self.mark[i] = true;
            self.touched.push(i);
        }
        self.vals[i] += v;
    }

    fn clear(&mut self) {
        for &i in &self.touched {
            self.vals[i] = Scalar::new(0.0, 0.0);
            self.mark[i] = false;
        }
        self.touched.clear();
    }
}

/// Compare two accumulators over the union of their supports, then clear both.
pub(crate) fn compare(lhs: &mut Acc, rhs: &mut Acc, res: &mut Resid) {
    for &i in &lhs.touched {
        res.push(lhs.vals[i], rhs.vals[i]);
    }
    for &i in &rhs.touched {
        if !lhs.mark[i] {
            res.push(lhs.vals[i], rhs.vals[i]);
        }
    }
    lhs.clear();
    rhs.clear();
}

/// Sparse vector over multi-indices packed into a `u64`.
pub(crate) type SparseVec = HashMap<u64, Scalar>;

pub(crate) fn compare_maps(l: &SparseVec, r: &SparseVec, res: &mut Resid) {
    let zero = Scalar::new(0.0, 0.0);
    for (k, v) in l {
        res.push(*v, *r.get(k).unwrap_or(&zero));
    }
    for (k, v) in r {
        if !l.contains_key(k) {
            res.push(zero, *v);
        }
    }
}
