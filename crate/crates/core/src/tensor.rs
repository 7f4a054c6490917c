//! Dense row-major complex tensors and the contraction kernels everything else is built on.

use serde::{Deserialize, Serialize};

use crate::Scalar;

/// Serialized as `{"shape": [...], "data": [[re, im], ...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTensor")]
pub struct Tensor {
    shape: Vec<usize>,
    data: Vec<Scalar>,
}

#[derive(Deserialize)]
struct RawTensor {
    shape: Vec<usize>,
    data: Vec<Scalar>,
}

impl TryFrom<RawTensor> for Tensor {
    type Error = String;

    fn try_from(raw: RawTensor) -> Result<Self, String> {
        let n: usize = raw.shape.iter().product();
        if n != raw.data.len() {
            return Err(format!("shape {:?} needs {n} entries, got {}", raw.shape, raw.data.len()));
        }
        Ok(Tensor { shape: raw.shape, data: raw.data })
    }
}

fn strides_of(shape: &[usize]) -> Vec<usize> {
    let mut s = vec![1; shape.len()];
    for k in (0..shape.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * shape[k + 1];
    }
    s
}

impl Tensor {
    pub fn zeros(shape: &[usize]) -> Self {
        let n = shape.iter().product();
        Tensor { shape: shape.to_vec(), data: vec![Scalar::new(0.0, 0.0); n] }
    }

    pub fn scalar(v: Scalar) -> Self {
        Tensor { shape: vec![], data: vec![v] }
    }

    /// Panics if `data.len()` does not match the shape.
    pub fn from_vec(shape: &[usize], data: Vec<Scalar>) -> Self {
        assert_eq!(shape.iter().product::<usize>(), data.len(), "tensor data/shape mismatch");
        Tensor { shape: shape.to_vec(), data }
    }

    pub fn from_fn(shape: &[usize], mut f: impl FnMut(&[usize]) -> Scalar) -> Self {
        let mut t = Tensor::zeros(shape);
        let mut idx = vec![0; shape.len()];
        for v in t.data.iter_mut() {
            *v = f(&idx);
            for k in (0..idx.len()).rev() {
                idx[k] += 1;
                if idx[k] < shape[k] {
                    break;
                }
                idx[k] = 0;
            }
        }
        t
    }

    pub fn identity(d: usize) -> Self {
        Tensor::from_fn(&[d, d], |i| if i[0] == i[1] { Scalar::new(1.0, 0.0) } else { Scalar::new(0.0, 0.0) })
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn rank(&self) -> usize {
        self.shape.len()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Scalar] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<Scalar> {
        self.data
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.shape.len());
        let mut off = 0;
        for (k, &i) in idx.iter().enumerate() {
            debug_assert!(i < self.shape[k]);
            off = off * self.shape[k] + i;
        }
        off
    }

    pub fn get(&self, idx: &[usize]) -> Scalar {
        self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: Scalar) {
        let o = self.offset(idx);
        self.data[o] = v;
    }

    pub fn reshape(mut self, shape: &[usize]) -> Self {
        assert_eq!(shape.iter().product::<usize>(), self.data.len(), "reshape changes size");
        self.shape = shape.to_vec();
        self
    }

    /// Axis `k` of the result is axis `perm[k]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.rank());
        if perm.iter().enumerate().all(|(k, &p)| k == p) {
            return self.clone();
        }
        let new_shape: Vec<usize> = perm.iter().map(|&p| self.shape[p]).collect();
        let old_strides = strides_of(&self.shape);
        let src_strides: Vec<usize> = perm.iter().map(|&p| old_strides[p]).collect();
        let mut out = Vec::with_capacity(self.data.len());
        let r = new_shape.len();
        let mut idx = vec![0usize; r];
        let mut src = 0usize;
        for _ in 0..self.data.len() {
            out.push(self.data[src]);
            for k in (0..r).rev() {
                idx[k] += 1;
                src += src_strides[k];
                if idx[k] < new_shape[k] {
                    break;
                }
                src -= src_strides[k] * new_shape[k];
                idx[k] = 0;
            }
        }
        Tensor { shape: new_shape, data: out }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn scale(&self, s: Scalar) -> Self {
        Tensor { shape: self.shape.clone(), data: self.data.iter().map(|&z| z * s).collect() }
    }

    pub fn add(&self, other: &Tensor) -> Self {
        assert_eq!(self.shape, other.shape, "shape mismatch in add");
        Tensor {
            shape: self.shape.clone(),
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Tensor) -> Self {
        assert_eq!(self.shape, other.shape, "shape mismatch in sub");
        Tensor {
            shape: self.shape.clone(),
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &Tensor) -> f64 {
        assert_eq!(self.shape, other.shape, "shape mismatch in comparison");
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Contract axes `ax_a` of `self` against `ax_b` of `other` pairwise.
    /// The result carries the free axes of `self` followed by the free axes of `other`.
    pub fn contract(&self, ax_a: &[usize], other: &Tensor, ax_b: &[usize]) -> Tensor {
        assert_eq!(ax_a.len(), ax_b.len());
        for (&i, &j) in ax_a.iter().zip(ax_b) {
            assert_eq!(self.shape[i], other.shape[j], "contracted extents differ");
        }
        let free_a: Vec<usize> = (0..self.rank()).filter(|k| !ax_a.contains(k)).collect();
        let free_b: Vec<usize> = (0..other.rank()).filter(|k| !ax_b.contains(k)).collect();
        let pa: Vec<usize> = free_a.iter().chain(ax_a).copied().collect();
        let pb: Vec<usize> = ax_b.iter().chain(&free_b).copied().collect();
        let a = self.permute(&pa);
        let b = other.permute(&pb);
        let m: usize = free_a.iter().map(|&k| self.shape[k]).product();
        let inner: usize = ax_a.iter().map(|&k| self.shape[k]).product();
        let n: usize = free_b.iter().map(|&k| other.shape[k]).product();
        let data = matmul(&a.data, &b.data, m, inner, n);
        let shape: Vec<usize> = free_a
            .iter()
            .map(|&k| self.shape[k])
            .chain(free_b.iter().map(|&k| other.shape[k]))
            .collect();
        Tensor { shape, data }
    }

    /// Sum over the listed axes.
    pub fn sum_axes(&self, axes: &[usize]) -> Tensor {
        if axes.is_empty() {
            return self.clone();
        }
        let keep: Vec<usize> = (0..self.rank()).filter(|k| !axes.contains(k)).collect();
        let perm: Vec<usize> = keep.iter().chain(axes).copied().collect();
        let p = self.permute(&perm);
        let outer: usize = keep.iter().map(|&k| self.shape[k]).product();
        let inner: usize = axes.iter().map(|&k| self.shape[k]).product();
        let data = (0..outer)
            .map(|i| p.data[i * inner..(i + 1) * inner].iter().sum())
            .collect();
        Tensor { shape: keep.iter().map(|&k| self.shape[k]).collect(), data }
    }
}

/// Row-major (m×k)·(k×n).
pub fn matmul(a: &[Scalar], b: &[Scalar], m: usize, k: usize, n: usize) -> Vec<Scalar> {
    let mut c = vec![Scalar::new(0.0, 0.0); m * n];
    for i in 0..m {
        let crow = &mut c[i * n..(i + 1) * n];
        for (p, &aip) in a[i * k..(i + 1) * k].iter().enumerate() {
            if aip.re == 0.0 && aip.im == 0.0 {
                continue;
            }
            let brow = &b[p * n..(p + 1) * n];
            for (cv, &bv) in crow.iter_mut().zip(brow) {
                *cv += aip * bv;
            }
        }
    }
    c
}

/// Label-based contraction in the style of `einsum`, e.g. `einsum("ab,bc->ac", &[&x, &y])`.
///
/// Operands are folded left to right. A label is summed as soon as no later operand
/// and not the output needs it; labels shared by two operands and still needed later
/// (batch labels) are not supported.
pub fn einsum(spec: &str, ops: &[&Tensor]) -> Tensor {
    let (lhs, out) = spec.split_once("->").expect("einsum spec needs '->'");
    let ins: Vec<Vec<char>> = lhs.split(',').map(|s| s.trim().chars().collect()).collect();
    let out: Vec<char> = out.trim().chars().collect();
    assert_eq!(ins.len(), ops.len(), "einsum operand count");
    for (labels, t) in ins.iter().zip(ops) {
        assert_eq!(labels.len(), t.rank(), "einsum rank mismatch for {:?}", labels);
    }

    let mut acc = ops[0].clone();
    let mut acc_labels = ins[0].clone();
    for step in 1..ops.len() {
        let needed_later: Vec<char> =
            ins[step + 1..].iter().flatten().chain(out.iter()).copied().collect();
        // Labels only on the accumulator and not needed anywhere else get summed right away.
        let lone: Vec<usize> = (0..acc_labels.len())
            .filter(|&k| {
                let c = acc_labels[k];
                !ins[step].contains(&c) && !needed_later.contains(&c)
            })
            .collect();
        if !lone.is_empty() {
            acc = acc.sum_axes(&lone);
            acc_labels = acc_labels
                .iter()
                .enumerate()
                .filter(|(k, _)| !lone.contains(k))
                .map(|(_, &c)| c)
                .collect();
        }
        let rhs = ops[step];
        let rhs_labels = &ins[step];
        let mut ax_a = Vec::new();
        let mut ax_b = Vec::new();
        for (ka, &c) in acc_labels.iter().enumerate() {
            if let Some(kb) = rhs_labels.iter().position(|&x| x == c) {
                assert!(
                    !needed_later.contains(&c),
                    "einsum batch label '{c}' is not supported"
                );
                ax_a.push(ka);
                ax_b.push(kb);
            }
        }
        acc = acc.contract(&ax_a, rhs, &ax_b);
        let mut labels: Vec<char> =
            acc_labels.iter().enumerate().filter(|(k, _)| !ax_a.contains(k)).map(|(_, &c)| c).collect();
        labels.extend(rhs_labels.iter().enumerate().filter(|(k, _)| !ax_b.contains(k)).map(|(_, &c)| c));
        acc_labels = labels;
    }
    let extra: Vec<usize> = (0..acc_labels.len()).filter(|&k| !out.contains(&acc_labels[k])).collect();
    if !extra.is_empty() {
        acc = acc.sum_axes(&extra);
        acc_labels = acc_labels
            .iter()
            .enumerate()
            .filter(|(k, _)| !extra.contains(k))
            .map(|(_, &c)| c)
            .collect();
    }
    let perm: Vec<usize> = out
        .iter()
        .map(|c| acc_labels.iter().position(|x| x == c).expect("output label missing from inputs"))
        .collect();
    acc.permute(&perm)
}

/// Relative distance between two tensors: max-abs difference over the larger max-norm.
/// Returns `None` when both sides vanish identically, so the caller decides what a
/// vacuous comparison means.
pub fn rel_residual(lhs: &Tensor, rhs: &Tensor) -> Option<f64> {
    let scale = lhs.max_abs().max(rhs.max_abs());
    if scale == 0.0 {
        return None;
    }
    Some(lhs.max_abs_diff(rhs) / scale)
}
