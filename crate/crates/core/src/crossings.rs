//! Crossing maps λ: A⊗A → A⊗A, the curl map φ they induce, and the crossing axioms.
//!
//! `lambda[o,p,j,l]` is the coefficient of e_o⊗e_p in λ(e_j⊗e_l).
//!
//! Index diagrams of the checks, inputs on the right of each arrow:
//!
//! ```text
//! axiom 1 (B)      B_io λ^{op}_{jk}        = λ^{op}_{ij} B_pk          (i,j,k) -> p | o
//! axiom 1 rotated  λ^{op}_{ay} B^{yz}      = B^{yz} λ^{op}_{za}        a -> (o,p,z) | (y,o,p)
//! axiom 2 (C)      λ(m(i⊗j)⊗k)             = (id⊗m)(λ⊗id)(i⊗λ(j⊗k))
//! axiom 2 mirror   λ(i⊗m(j⊗k))             = (m⊗id)(id⊗λ)(λ(i⊗j)⊗k)
//! axiom 3 (RII)    λ∘λ                     = id on A⊗A
//! axiom 4 (RIII)   λ₁λ₂λ₁ = λ₂λ₁λ₂         λ₁ = λ⊗id, λ₂ = id⊗λ on A⊗A⊗A
//! axiom 5 ribbon   φ_R = φ_L
//! φ_R(a) = Σ B^{yz} λ^{op}_{ay} B_pz e_o      φ_L(a) = Σ B^{yz} λ^{op}_{za} B_yo e_p
//! ```

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraData;
use crate::constructors::{Bicharacter, Grading};
use crate::error::{Error, Result};
use crate::linalg;
use crate::sparse::{compare, compare_maps, entries, Acc, Resid, SparseCross, SparseMult, SparseVec};
use crate::tensor::Tensor;
use crate::Scalar;

/// Serialized as its tensor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Tensor", into = "Tensor")]
pub struct CrossingMap {
    lambda: Tensor,
}

impl TryFrom<Tensor> for CrossingMap {
    type Error = Error;

    fn try_from(t: Tensor) -> Result<Self> {
        CrossingMap::new(t)
    }
}

impl From<CrossingMap> for Tensor {
    fn from(c: CrossingMap) -> Tensor {
        c.lambda
    }
}

impl CrossingMap {
    pub fn new(lambda: Tensor) -> Result<Self> {
        let d = lambda.shape().first().copied().unwrap_or(0);
        if d == 0 || lambda.shape() != [d, d, d, d] {
            return Err(Error::Invalid(format!("crossing must be a d×d×d×d tensor, got {:?}", lambda.shape())));
        }
        if !lambda.is_finite() {
            return Err(Error::NonFinite("lambda"));
        }
        Ok(CrossingMap { lambda })
    }

    /// The swap a⊗b ↦ b⊗a.
    pub fn canonical(d: usize) -> Self {
        assert!(d >= 1);
        let mut t = Tensor::zeros(&[d, d, d, d]);
        for j in 0..d {
            for l in 0..d {
                t.set(&[l, j, j, l], Scalar::new(1.0, 0.0));
            }
        }
        CrossingMap { lambda: t }
    }

    /// λ(a_h⊗b_j) = λ̃(h,j) b_j⊗a_h.
    pub fn from_bicharacter(grading: &Grading, bichar: &Bicharacter) -> Result<Self> {
        if grading.group != bichar.group {
            return Err(Error::Invalid("bicharacter and grading use different groups".into()));
        }
        let order = grading.group.order();
        if let Some(a) = grading.block_of_basis.iter().position(|&g| g >= order) {
            return Err(Error::UngradedIndex(a));
        }
        let d = grading.block_of_basis.len();
        if d == 0 {
            return Err(Error::Invalid("empty grading".into()));
        }
        let g = &grading.block_of_basis;
        let mut t = Tensor::zeros(&[d, d, d, d]);
        for j in 0..d {
            for l in 0..d {
                t.set(&[l, j, j, l], bichar.value(g[j], g[l]));
            }
        }
        Ok(CrossingMap { lambda: t })
    }

    pub fn dim(&self) -> usize {
        self.lambda.shape()[0]
    }

    pub fn tensor(&self) -> &Tensor {
        &self.lambda
    }

    /// λ as a d²×d² matrix, rows (o,p), columns (j,l).
    pub fn matrix(&self) -> Tensor {
        let d = self.dim();
        self.lambda.clone().reshape(&[d * d, d * d])
    }

    /// λ(a⊗b) as a d×d coefficient matrix.
    pub fn apply(&self, a: &[Scalar], b: &[Scalar]) -> Tensor {
        let d = self.dim();
        assert!(a.len() == d && b.len() == d);
        let mut out = Tensor::zeros(&[d, d]);
        let data = self.lambda.data();
        for o in 0..d {
            for p in 0..d {
                let mut s = Scalar::new(0.0, 0.0);
                for j in 0..d {
                    if a[j] == Scalar::new(0.0, 0.0) {
                        continue;
                    }
                    for l in 0..d {
                        s += data[((o * d + p) * d + j) * d + l] * a[j] * b[l];
                    }
                }
                out.set(&[o, p], s);
            }
        }
        out
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct AxiomResiduals {
    pub compat_b: f64,
    pub compat_b_rotated: f64,
    pub compat_c: f64,
    pub compat_c_mirror: f64,
    pub r_ii: f64,
    pub r_iii: f64,
    pub ribbon: f64,
    pub r_i: f64,
    pub phi_squared: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub compat_b: bool,
    pub compat_c: bool,
    pub r_ii: bool,
    pub r_iii: bool,
    pub ribbon: bool,
    /// Curl-free: φ = id.
    pub r_i: bool,
    pub phi_squared_id: bool,
    /// Largest residual among axioms 1–5. Comparisons that vanish on both sides count as
    /// infinite for axioms 1 and 2.
    pub max_residual: f64,
    pub residuals: AxiomResiduals,
}

impl AxiomReport {
    /// Axioms 1–5, the requirements for a spin state sum model.
    pub fn is_spin_model(&self) -> bool {
        self.compat_b && self.compat_c && self.r_ii && self.r_iii && self.ribbon
    }

    fn whitney(&self) -> bool {
        self.compat_b && self.compat_c && self.r_ii
    }
}

fn nonvacuous(r: Option<f64>) -> f64 {
    r.unwrap_or(f64::INFINITY)
}

struct Ctx<'a> {
    d: usize,
    alg: &'a AlgebraData,
    l: SparseCross,
    m: SparseMult,
    b: Vec<(usize, usize, Scalar)>,
}

impl<'a> Ctx<'a> {
    fn new(alg: &'a AlgebraData, cr: &CrossingMap) -> Self {
        Ctx { d: alg.dim(), alg, l: SparseCross::new(cr.tensor()), m: SparseMult::new(alg), b: entries(alg.b()) }
    }

    fn binv(&self, a: usize, b: usize) -> Scalar {
        self.alg.binv().data()[a * self.d + b]
    }

    fn axiom1(&self) -> Option<f64> {
        let d = self.d;
        let mut res = Resid::default();
        let (mut lhs, mut rhs) = (Acc::new(d), Acc::new(d));
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for &(o, p, v) in self.l.col(j, k) {
                        lhs.add(p, v * self.binv(i, o));
                    }
                    for &(o, p, v) in self.l.col(i, j) {
                        rhs.add(o, v * self.binv(p, k));
                    }
                    compare(&mut lhs, &mut rhs, &mut res);
                }
            }
        }
        res.value()
    }

    fn axiom1_rotated(&self) -> Option<f64> {
        let d = self.d;
        let mut res = Resid::default();
        let (mut lhs, mut rhs) = (Acc::new(d * d * d), Acc::new(d * d * d));
        for a in 0..d {
            for &(y, z, bv) in &self.b {
                for &(o, p, v) in self.l.col(a, y) {
                    lhs.add((o * d + p) * d + z, bv * v);
                }
                for &(o, p, v) in self.l.col(z, a) {
                    rhs.add((y * d + o) * d + p, bv * v);
                }
            }
            compare(&mut lhs, &mut rhs, &mut res);
        }
        res.value()
    }

    fn axiom2(&self, mirror: bool) -> Option<f64> {
        let d = self.d;
        let mut res = Resid::default();
        let (mut lhs, mut rhs) = (Acc::new(d * d), Acc::new(d * d));
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    if !mirror {
                        for &(c, mv) in self.m.col(i, j) {
                            for &(o, p, v) in self.l.col(c, k) {
                                lhs.add(o * d + p, mv * v);
                            }
                        }
                        for &(a, b, v1) in self.l.col(j, k) {
                            for &(c, dd, v2) in self.l.col(i, a) {
                                for &(f, mv) in self.m.col(dd, b) {
                                    rhs.add(c * d + f, v1 * v2 * mv);
                                }
                            }
                        }
                    } else {
                        for &(c, mv) in self.m.col(j, k) {
                            for &(o, p, v) in self.l.col(i, c) {
                                lhs.add(o * d + p, mv * v);
                            }
                        }
                        for &(a, b, v1) in self.l.col(i, j) {
                            for &(c, dd, v2) in self.l.col(b, k) {
                                for &(f, mv) in self.m.col(a, c) {
                                    rhs.add(f * d + dd, v1 * v2 * mv);
                                }
                            }
                        }
                    }
                    compare(&mut lhs, &mut rhs, &mut res);
                }
            }
        }
        res.value()
    }

    fn r_ii(&self) -> f64 {
        let d = self.d;
        let mut res = Resid::default();
        let (mut lhs, mut rhs) = (Acc::new(d * d), Acc::new(d * d));
        for j in 0..d {
            for l in 0..d {
                for &(a, b, v1) in self.l.col(j, l) {
                    for &(o, p, v2) in self.l.col(a, b) {
                        lhs.add(o * d + p, v1 * v2);
                    }
                }
                rhs.add(j * d + l, Scalar::new(1.0, 0.0));
                compare(&mut lhs, &mut rhs, &mut res);
            }
        }
        res.value().unwrap_or(0.0)
    }

    /// Apply λ to strands (s, s+1) of a sparse vector on A⊗A⊗A.
    fn lambda_on(&self, v: &SparseVec, s: usize) -> SparseVec {
        let d = self.d as u64;
        let mut out = SparseVec::with_capacity(v.len());
        for (&key, &x) in v {
            let idx = [key / (d * d), (key / d) % d, key % d];
            for &(o, p, w) in self.l.col(idx[s] as usize, idx[s + 1] as usize) {
                let mut n = idx;
                n[s] = o as u64;
                n[s + 1] = p as u64;
                *out.entry((n[0] * d + n[1]) * d + n[2]).or_default() += x * w;
            }
        }
        out
    }

    fn r_iii(&self) -> f64 {
        let d = self.d as u64;
        let mut res = Resid::default();
        for key in 0..d * d * d {
            let e: SparseVec = [(key, Scalar::new(1.0, 0.0))].into_iter().collect();
            let lhs = self.lambda_on(&self.lambda_on(&self.lambda_on(&e, 0), 1), 0);
            let rhs = self.lambda_on(&self.lambda_on(&self.lambda_on(&e, 1), 0), 1);
            compare_maps(&lhs, &rhs, &mut res);
        }
        res.value().unwrap_or(0.0)
    }

    fn curls(&self) -> (Tensor, Tensor) {
        let d = self.d;
        let mut right = Tensor::zeros(&[d, d]);
        let mut left = Tensor::zeros(&[d, d]);
        for a in 0..d {
            for &(y, z, bv) in &self.b {
                for &(o, p, v) in self.l.col(a, y) {
                    let x = right.get(&[o, a]) + bv * v * self.binv(p, z);
                    right.set(&[o, a], x);
                }
                for &(o, p, v) in self.l.col(z, a) {
                    let x = left.get(&[p, a]) + bv * v * self.binv(y, o);
                    left.set(&[p, a], x);
                }
            }
        }
        (right, left)
    }
}

fn matrix_resid(a: &Tensor, b: &Tensor) -> f64 {
    crate::tensor::rel_residual(a, b).unwrap_or(0.0)
}

/// The right- and left-handed curls (φ_R, φ_L) as (out, in) matrices, without any
/// precondition.
pub fn curl_maps(alg: &AlgebraData, cr: &CrossingMap) -> (Tensor, Tensor) {
    Ctx::new(alg, cr).curls()
}

pub fn check_axioms(alg: &AlgebraData, cr: &CrossingMap, tol: f64) -> AxiomReport {
    assert_eq!(alg.dim(), cr.dim(), "crossing and algebra dimensions differ");
    let ctx = Ctx::new(alg, cr);
    let d = alg.dim();
    let id = Tensor::identity(d);
    let (phi_r, phi_l) = ctx.curls();
    let phi2 = linalg::mat_mul(&phi_r, &phi_r);
    let residuals = AxiomResiduals {
        compat_b: nonvacuous(ctx.axiom1()),
        compat_b_rotated: nonvacuous(ctx.axiom1_rotated()),
        compat_c: nonvacuous(ctx.axiom2(false)),
        compat_c_mirror: nonvacuous(ctx.axiom2(true)),
        r_ii: ctx.r_ii(),
        r_iii: ctx.r_iii(),
        ribbon: matrix_resid(&phi_r, &phi_l),
        r_i: matrix_resid(&phi_r, &id),
        phi_squared: matrix_resid(&phi2, &id),
    };
    let r = &residuals;
    let b = r.compat_b.max(r.compat_b_rotated);
    let c = r.compat_c.max(r.compat_c_mirror);
    AxiomReport {
        compat_b: b <= tol,
        compat_c: c <= tol,
        r_ii: r.r_ii <= tol,
        r_iii: r.r_iii <= tol,
        ribbon: r.ribbon <= tol,
        r_i: r.r_i <= tol,
        phi_squared_id: r.phi_squared <= tol,
        max_residual: b.max(c).max(r.r_ii).max(r.r_iii).max(r.ribbon),
        residuals,
    }
}

/// φ = φ_R, defined once axioms 1–3 hold.
pub fn curl_map(alg: &AlgebraData, cr: &CrossingMap, tol: f64) -> Result<Tensor> {
    let rep = check_axioms(alg, cr, tol);
    if !rep.whitney() {
        return Err(Error::AxiomPrereqFailed(format!(
            "axioms 1-3 need to hold for the curl map (residual {:e})",
            rep.residuals.compat_b.max(rep.residuals.compat_c).max(rep.residuals.r_ii)
        )));
    }
    Ok(curl_maps(alg, cr).0)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GradedReport {
    /// For every (h, j): A_h ⊥ A_j, or λ̃(h,l) = λ̃(l,j) for all l.
    pub condition1: bool,
    /// σ² = id.
    pub condition2: bool,
    /// Pairs (h, j) violating condition 1.
    pub violations: Vec<(usize, usize)>,
    pub axioms: AxiomReport,
}

impl GradedReport {
    /// Whether the conditions agree with the direct axiom check on the induced crossing.
    pub fn consistent(&self) -> bool {
        (self.condition1 && self.condition2) == self.axioms.is_spin_model()
    }
}

pub fn check_graded_conditions(alg: &AlgebraData, grading: &Grading, bichar: &Bicharacter, tol: f64) -> Result<GradedReport> {
    let cr = CrossingMap::from_bicharacter(grading, bichar)?;
    if cr.dim() != alg.dim() {
        return Err(Error::DimensionMismatch { expected: alg.dim(), got: cr.dim() });
    }
    let n = grading.group.order();
    let g = &grading.block_of_basis;
    let d = alg.dim();
    let scale = alg.binv().max_abs();
    let mut pairing = vec![0.0f64; n * n];
    for a in 0..d {
        for b in 0..d {
            let x = &mut pairing[g[a] * n + g[b]];
            *x = x.max(alg.binv().get(&[a, b]).norm());
        }
    }
    let mut violations = Vec::new();
    for h in 0..n {
        for j in 0..n {
            if pairing[h * n + j] <= tol * scale {
                continue;
            }
            if (0..n).any(|l| (bichar.value(h, l) - bichar.value(l, j)).norm() > tol) {
                violations.push((h, j));
            }
        }
    }
    let sigma = alg.nakayama_matrix();
    let sigma2 = linalg::mat_mul(sigma, sigma);
    let condition2 = matrix_resid(&sigma2, &Tensor::identity(d)) <= tol;
    Ok(GradedReport { condition1: violations.is_empty(), condition2, violations, axioms: check_axioms(alg, &cr, tol) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_algebra;
    use crate::constructors::{change_basis, group_algebra_cyclic, matrix_algebra, AbelianGroup, Ring, Weight};
    use crate::tensor::einsum;

    fn c(x: f64) -> Scalar {
        Scalar::new(x, 0.0)
    }

    /// The dense formulas, used as an oracle for the column-wise checks.
    fn dense_residuals(alg: &AlgebraData, l: &Tensor) -> [f64; 6] {
        let d = alg.dim();
        let (b, bi, m) = (alg.b(), alg.binv(), alg.mult());
        let r = |x: &Tensor, y: &Tensor| crate::tensor::rel_residual(x, y).unwrap_or(f64::INFINITY);
        let a1 = r(&einsum("opjk,io->pijk", &[l, bi]), &einsum("opij,pk->oijk", &[l, bi]));
        let a1r = r(&einsum("opay,yz->opza", &[l, b]), &einsum("yz,opza->yopa", &[b, l]));
        let a2 = r(&einsum("ijc,opck->opijk", &[m, l]), &einsum("abjk,cdia,dbf->cfijk", &[l, l, m]));
        let a2b = r(&einsum("jkc,opic->opijk", &[m, l]), &einsum("abij,cdbk,acf->fdijk", &[l, l, m]));
        let ll = l.clone().reshape(&[d * d, d * d]);
        let rii = r(&linalg::mat_mul(&ll, &ll), &Tensor::identity(d * d));
        let phir = einsum("yz,opay,pz->oa", &[b, l, bi]);
        let phil = einsum("yz,opza,yo->pa", &[b, l, bi]);
        [a1, a1r, a2, a2b, rii, r(&phir, &phil)]
    }

    fn c3_nontrivial_crossing() -> Tensor {
        let mut l = Tensor::zeros(&[3, 3, 3, 3]);
        let mut setm = |j: usize, k: usize, m: [[f64; 3]; 3]| {
            for o in 0..3 {
                for p in 0..3 {
                    l.set(&[o, p, j, k], c(m[o][p]));
                }
            }
        };
        for j in 0..3 {
            let mut m = [[0.0; 3]; 3];
            m[j][0] = 1.0;
            setm(0, j, m);
            let mut m = [[0.0; 3]; 3];
            m[0][j] = 1.0;
            setm(j, 0, m);
        }
        setm(1, 1, [[0.0, 0.0, 0.0], [0.0, 0.5, 0.5], [0.0, 0.5, -0.5]]);
        setm(1, 2, [[0.0, 0.0, 0.0], [0.0, 0.5, -0.5], [0.0, 0.5, 0.5]]);
        setm(2, 1, [[0.0, 0.0, 0.0], [0.0, 0.5, 0.5], [0.0, -0.5, 0.5]]);
        setm(2, 2, [[0.0, 0.0, 0.0], [0.0, -0.5, 0.5], [0.0, 0.5, 0.5]]);
        l
    }

    #[test]
    fn canonical_swaps() {
        let cr = CrossingMap::canonical(2);
        let out = cr.apply(&[c(1.0), c(0.0)], &[c(0.0), c(1.0)]);
        assert_eq!(out.get(&[1, 0]), c(1.0));
        assert_eq!(out.max_abs(), 1.0);
    }

    #[test]
    fn fhk_canonical_passes_everything() {
        let alg = matrix_algebra(2, Ring::C, &Weight::Fhk, None).unwrap();
        let rep = check_axioms(&alg, &CrossingMap::canonical(4), 1e-9);
        assert!(rep.is_spin_model() && rep.r_i && rep.phi_squared_id, "{rep:?}");
    }

    #[test]
    fn c3_crossing_is_spin_but_not_curl_free() {
        let (alg, _) = group_algebra_cyclic(3, c(1.0)).unwrap();
        let cr = CrossingMap::new(c3_nontrivial_crossing()).unwrap();
        let rep = check_axioms(&alg, &cr, 1e-9);
        assert!(rep.is_spin_model(), "{rep:?}");
        assert!(!rep.r_i);
        assert!(rep.phi_squared_id);
    }

    #[test]
    fn zero_tensor_fails_compatibility() {
        let (alg, _) = group_algebra_cyclic(2, c(1.0)).unwrap();
        let rep = check_axioms(&alg, &CrossingMap::new(Tensor::zeros(&[2, 2, 2, 2])).unwrap(), 1e-9);
        assert!(!rep.compat_b);
        assert!(!rep.r_ii);
    }

    #[test]
    fn sparse_checks_match_dense_formulas() {
        let (alg, _) = group_algebra_cyclic(3, c(0.5)).unwrap();
        let mut l = c3_nontrivial_crossing();
        // A perturbed crossing gives nonzero residuals to compare.
        l.set(&[1, 2, 2, 1], c(0.3));
        l.set(&[0, 0, 1, 1], Scalar::new(0.1, -0.2));
        let cr = CrossingMap::new(l.clone()).unwrap();
        let rep = check_axioms(&alg, &cr, 1e-9);
        let dense = dense_residuals(&alg, &l);
        let r = &rep.residuals;
        let ours = [r.compat_b, r.compat_b_rotated, r.compat_c, r.compat_c_mirror, r.r_ii, r.ribbon];
        for (a, b) in ours.iter().zip(dense) {
            assert!((a - b).abs() < 1e-12, "{ours:?} vs {dense:?}");
        }
        assert!(r.r_ii > 1e-3 && r.compat_c > 1e-3);
    }

    #[test]
    fn curl_of_canonical_is_nakayama() {
        let alg = matrix_algebra(3, Ring::C, &Weight::Signature { p: 2, q: 1 }, None).unwrap();
        let phi = curl_map(&alg, &CrossingMap::canonical(9), 1e-9).unwrap();
        assert!(phi.max_abs_diff(alg.nakayama_matrix()) < 1e-12);
        let rep = check_axioms(&alg, &CrossingMap::canonical(9), 1e-9);
        assert!(rep.is_spin_model() && !rep.r_i);
    }

    #[test]
    fn curl_map_needs_axioms() {
        let (alg, _) = group_algebra_cyclic(2, c(1.0)).unwrap();
        let err = curl_map(&alg, &CrossingMap::new(Tensor::zeros(&[2, 2, 2, 2])).unwrap(), 1e-9).unwrap_err();
        assert!(matches!(err, Error::AxiomPrereqFailed(_)));
    }

    #[test]
    fn nonorthogonal_blocks_break_condition_one() {
        // ⊕²ℂ with ε(u1) = 1, ε(u2) = 2 in the basis (u1+u2, u1−u2), graded by ℤ₂. The
        // blocks pair nontrivially since ε(u1−u2) ≠ 0, so the sign bicharacter must fail.
        let mut cten = Tensor::zeros(&[2, 2, 2]);
        cten.set(&[0, 0, 0], c(1.0));
        cten.set(&[1, 1, 1], c(2.0));
        let mut b = Tensor::zeros(&[2, 2]);
        b.set(&[0, 0], c(1.0));
        b.set(&[1, 1], c(0.5));
        let idem = build_algebra(cten, b, c(1.0)).unwrap();
        let p = Tensor::from_vec(&[2, 2], vec![c(1.0), c(1.0), c(1.0), c(-1.0)]);
        let alg = change_basis(&idem, &p, vec!["1".into(), "g".into()]).unwrap();
        let grading = Grading { group: AbelianGroup::new(vec![2]), block_of_basis: vec![0, 1] };
        assert!(grading.is_multiplicative(&alg, 1e-12));
        let one = c(1.0);
        let sign = Bicharacter { group: AbelianGroup::new(vec![2]), table: vec![vec![one, one], vec![one, -one]] };
        let rep = check_graded_conditions(&alg, &grading, &sign, 1e-9).unwrap();
        assert!(!rep.condition1);
        assert_eq!(rep.violations, vec![(0, 1), (1, 0)]);
        assert!(!rep.axioms.compat_b);
        let cr = CrossingMap::from_bicharacter(&grading, &sign).unwrap();
        assert!(dense_residuals(&alg, cr.tensor())[0] > 1e-3);
        let trivial = Bicharacter::trivial(AbelianGroup::new(vec![2]));
        assert!(check_graded_conditions(&alg, &grading, &trivial, 1e-9).unwrap().condition1);
    }
}
