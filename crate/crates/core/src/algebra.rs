//! State sum data (C, B, R), the maps derived from it, and the axiom validators.
//!
//! Conventions: `C[a,b,c] = C_abc`, `B[a,b] = B^{ab}` (the copairing drawn as a cup),
//! `binv[a,b] = B_ab` (its inverse, the cap), `mult[a,b,c] = C_ab^c` so that
//! `e_a·e_b = Σ_c mult[a,b,c] e_c`. Linear maps A→A are stored as (out, in) matrices.

use serde::{Deserialize, Serialize};

use crate::constructors::Grading;
use crate::error::{Error, Result};
use crate::linalg;
use crate::tensor::{einsum, rel_residual, Tensor};
use crate::{Scalar, DEFAULT_TOL};

#[derive(Clone, Debug)]
pub struct AlgebraData {
    dim: usize,
    c: Tensor,
    b: Tensor,
    r: Scalar,
    labels: Vec<String>,
    grading: Option<Grading>,
    binv: Tensor,
    mult: Tensor,
    beta: Vec<Scalar>,
    unit: Vec<Scalar>,
    counit: Vec<Scalar>,
    nakayama: Tensor,
}

fn zero() -> Scalar {
    Scalar::new(0.0, 0.0)
}

/// Build the algebra and its derived maps. No axiom is assumed; see [`validate`].
pub fn build_algebra(c: Tensor, b: Tensor, r: Scalar) -> Result<AlgebraData> {
    let d = b.shape().first().copied().unwrap_or(0);
    if d == 0 {
        return Err(Error::Invalid("dimension must be at least 1".into()));
    }
    if b.shape() != [d, d] {
        return Err(Error::Invalid(format!("B must be {d}x{d}, got shape {:?}", b.shape())));
    }
    if c.shape() != [d, d, d] {
        return Err(Error::DimensionMismatch { expected: d * d * d, got: c.len() });
    }
    if !c.is_finite() {
        return Err(Error::NonFinite("C"));
    }
    if !b.is_finite() {
        return Err(Error::NonFinite("B"));
    }
    if !(r.re.is_finite() && r.im.is_finite()) {
        return Err(Error::NonFinite("R"));
    }
    if r.norm() == 0.0 {
        return Err(Error::Invalid("R must be nonzero".into()));
    }
    let binv = linalg::inverse(&b, DEFAULT_TOL).ok_or(Error::SingularPairing { tol: DEFAULT_TOL })?;
    let mult = einsum("abd,dc->abc", &[&c, &b]);
    let beta_t = einsum("ab,abc->c", &[&b, &mult]);
    let beta = beta_t.data().to_vec();
    let unit: Vec<Scalar> = beta.iter().map(|&x| x * r).collect();
    let counit = linalg::apply(&binv, &unit);
    // σ(e_b) = Σ_{a,d} B_ab B^{ad} e_d, i.e. the (out, in) matrix Bᵀ·Binv.
    let nakayama = linalg::mat_mul(&linalg::transpose(&b), &binv);
    let labels = (0..d).map(|k| format!("e{k}")).collect();
    Ok(AlgebraData { dim: d, c, b, r, labels, grading: None, binv, mult, beta, unit, counit, nakayama })
}

impl AlgebraData {
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn c(&self) -> &Tensor {
        &self.c
    }
    /// The copairing B^{ab}.
    pub fn b(&self) -> &Tensor {
        &self.b
    }
    /// The pairing B_ab = ε(e_a·e_b).
    pub fn binv(&self) -> &Tensor {
        &self.binv
    }
    pub fn r(&self) -> Scalar {
        self.r
    }
    pub fn mult(&self) -> &Tensor {
        &self.mult
    }
    /// β = m(B).
    pub fn beta(&self) -> &[Scalar] {
        &self.beta
    }
    /// R·β, the unit whenever the algebra is special.
    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }
    pub fn counit(&self) -> &[Scalar] {
        &self.counit
    }
    /// σ as an (out, in) matrix.
    pub fn nakayama_matrix(&self) -> &Tensor {
        &self.nakayama
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn grading(&self) -> Option<&Grading> {
        self.grading.as_ref()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: labels.len() });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn with_grading(mut self, grading: Grading) -> Result<Self> {
        if grading.block_of_basis.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: grading.block_of_basis.len() });
        }
        self.grading = Some(grading);
        Ok(self)
    }

    pub fn basis(&self, a: usize) -> Vec<Scalar> {
        let mut v = vec![zero(); self.dim];
        v[a] = Scalar::new(1.0, 0.0);
        v
    }

    fn check_len(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: v.len() });
        }
        Ok(())
    }

    pub fn multiply(&self, a: &[Scalar], b: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_len(a)?;
        self.check_len(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub(crate) fn mul_unchecked(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim;
        let m = self.mult.data();
        let mut out = vec![zero(); d];
        for (i, &ai) in a.iter().enumerate() {
            if ai == zero() {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                let w = ai * bj;
                if w == zero() {
                    continue;
                }
                let row = &m[(i * d + j) * d..(i * d + j + 1) * d];
                for (o, &x) in out.iter_mut().zip(row) {
                    *o += w * x;
                }
            }
        }
        out
    }

    /// ε(a) = B_ab applied to (a, 1).
    pub fn frobenius_form(&self, a: &[Scalar]) -> Result<Scalar> {
        self.check_len(a)?;
        Ok(self.eps(a))
    }

    pub(crate) fn eps(&self, a: &[Scalar]) -> Scalar {
        a.iter().zip(&self.counit).map(|(x, y)| x * y).sum()
    }

    pub fn nakayama(&self, a: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_len(a)?;
        Ok(linalg::apply(&self.nakayama, a))
    }

    /// Matrix of left multiplication by `x`, as an (out, in) matrix.
    pub fn left_mult_matrix(&self, x: &[Scalar]) -> Tensor {
        let xt = Tensor::from_vec(&[self.dim], x.to_vec());
        einsum("a,abc->cb", &[&xt, &self.mult])
    }

    pub fn right_mult_matrix(&self, x: &[Scalar]) -> Tensor {
        let xt = Tensor::from_vec(&[self.dim], x.to_vec());
        einsum("b,abc->ca", &[&xt, &self.mult])
    }

    /// `x^k` by repeated multiplication, `x^0 = R·β`.
    pub fn power(&self, x: &[Scalar], k: usize) -> Vec<Scalar> {
        let mut acc = self.unit.clone();
        for _ in 0..k {
            acc = self.mul_unchecked(&acc, x);
        }
        acc
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct AlgebraResiduals {
    pub snake: f64,
    pub nondegenerate_c_min_singular: f64,
    pub compatibility: f64,
    pub associativity: f64,
    pub special: f64,
    pub symmetry: f64,
    pub spherical: f64,
    pub separability: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub nondegenerate_b: bool,
    pub nondegenerate_c: bool,
    pub compatible: bool,
    pub associative: bool,
    pub special: bool,
    pub symmetric: bool,
    pub spherical: bool,
    pub separable_witness_ok: bool,
    pub max_residual: f64,
    pub residuals: AlgebraResiduals,
}

impl ValidationReport {
    /// The conditions of a planar state sum model: special Frobenius data.
    pub fn is_planar_model(&self) -> bool {
        self.nondegenerate_b
            && self.nondegenerate_c
            && self.compatible
            && self.associative
            && self.special
            && self.separable_witness_ok
    }
}

fn resid(lhs: &Tensor, rhs: &Tensor) -> f64 {
    rel_residual(lhs, rhs).unwrap_or(0.0)
}

/// Distance of `x` from being a two-sided identity for the multiplication.
pub(crate) fn identity_defect(alg: &AlgebraData, x: &[Scalar]) -> f64 {
    let id = Tensor::identity(alg.dim);
    resid(&alg.left_mult_matrix(x), &id).max(resid(&alg.right_mult_matrix(x), &id))
}

pub fn validate(alg: &AlgebraData, tol: f64) -> ValidationReport {
    let d = alg.dim;
    let id = Tensor::identity(d);

    let snake = resid(&linalg::mat_mul(&alg.b, &alg.binv), &id)
        .max(resid(&linalg::mat_mul(&alg.binv, &alg.b), &id));

    // C(·,·,a) = 0 ⇒ a = 0: the d × d² flattening on the last slot has full row rank.
    let flat = alg.c.permute(&[2, 0, 1]).reshape(&[d, d * d]);
    let sv = linalg::singular_values(&linalg::to_matrix(&flat));
    let top = sv.first().copied().unwrap_or(0.0);
    let smallest = if top > 0.0 { sv.get(d - 1).copied().unwrap_or(0.0) / top } else { 0.0 };
    let nondegenerate_c = smallest > tol;

    let compat_l = einsum("abc,cd->abd", &[&alg.c, &alg.b]);
    let compat_r = einsum("de,eab->abd", &[&alg.b, &alg.c]);
    let compatibility = resid(&compat_l, &compat_r);

    let left = einsum("abx,xcy->abcy", &[&alg.mult, &alg.mult]);
    let right = einsum("bcx,axy->abcy", &[&alg.mult, &alg.mult]);
    let associativity = resid(&left, &right);

    let special = identity_defect(alg, &alg.unit);

    let symmetry = resid(&alg.binv, &linalg::transpose(&alg.binv));
    let spherical = resid(&linalg::mat_mul(&alg.nakayama, &alg.nakayama), &id);

    // t = R·B: x ▷ t = t ◁ x for every basis x, and m(t) is the identity.
    let t = alg.b.scale(alg.r);
    let xt = einsum("xyc,yz->xcz", &[&alg.mult, &t]);
    let tx = einsum("yz,zxc->xyc", &[&t, &alg.mult]);
    let mt = einsum("yz,yzc->c", &[&t, &alg.mult]);
    let separability = resid(&xt, &tx).max(identity_defect(alg, mt.data()));

    let residuals = AlgebraResiduals {
        snake,
        nondegenerate_c_min_singular: smallest,
        compatibility,
        associativity,
        special,
        symmetry,
        spherical,
        separability,
    };
    let max_residual = [snake, compatibility, associativity, special, symmetry, spherical, separability]
        .into_iter()
        .fold(0.0, f64::max);
    ValidationReport {
        nondegenerate_b: snake <= tol,
        nondegenerate_c,
        compatible: compatibility <= tol,
        associative: associativity <= tol,
        special: special <= tol,
        symmetric: symmetry <= tol,
        spherical: spherical <= tol,
        separable_witness_ok: separability <= tol,
        max_residual,
        residuals,
    }
}

/// Whether the multiplication is commutative, up to `tol`.
pub fn is_commutative(alg: &AlgebraData, tol: f64) -> bool {
    resid(alg.mult(), &alg.mult().permute(&[1, 0, 2])) <= tol
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Scalar {
        Scalar::new(x, 0.0)
    }

    #[test]
    fn one_dimensional_identity_case() {
        let alg = build_algebra(
            Tensor::from_vec(&[1, 1, 1], vec![c(1.0)]),
            Tensor::from_vec(&[1, 1], vec![c(1.0)]),
            c(1.0),
        )
        .unwrap();
        assert_eq!(alg.unit(), &[c(1.0)]);
        assert_eq!(alg.counit(), &[c(1.0)]);
        assert_eq!(alg.nakayama_matrix(), &Tensor::identity(1));
        let rep = validate(&alg, DEFAULT_TOL);
        assert!(rep.is_planar_model() && rep.symmetric && rep.spherical);
    }

    #[test]
    fn singular_pairing_rejected() {
        let err = build_algebra(Tensor::zeros(&[2, 2, 2]), Tensor::zeros(&[2, 2]), c(1.0)).unwrap_err();
        assert!(matches!(err, Error::SingularPairing { .. }));
    }

    #[test]
    fn non_finite_rejected() {
        let mut cc = Tensor::zeros(&[1, 1, 1]);
        cc.set(&[0, 0, 0], c(f64::NAN));
        let err = build_algebra(cc, Tensor::identity(1), c(1.0)).unwrap_err();
        assert_eq!(err, Error::NonFinite("C"));
    }

    #[test]
    fn unequal_weights_are_not_special() {
        // ⊕²ℂ with ε(u1) = R, ε(u2) = 2R.
        let r = 1.0;
        let mut cc = Tensor::zeros(&[2, 2, 2]);
        cc.set(&[0, 0, 0], c(r));
        cc.set(&[1, 1, 1], c(2.0 * r));
        let mut b = Tensor::zeros(&[2, 2]);
        b.set(&[0, 0], c(1.0 / r));
        b.set(&[1, 1], c(1.0 / (2.0 * r)));
        let alg = build_algebra(cc, b, c(r)).unwrap();
        assert!((alg.beta()[0] - c(1.0 / r)).norm() < 1e-15);
        assert!((alg.beta()[1] - c(0.5 / r)).norm() < 1e-15);
        let rep = validate(&alg, DEFAULT_TOL);
        assert!(!rep.special);
        assert!(rep.associative && rep.compatible && rep.symmetric);
    }
}
