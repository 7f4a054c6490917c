//! Concrete algebras: matrix algebras over ℂ and the real division rings, direct sums,
//! cyclic group algebras, and their standard gradings with bicharacters.
//!
//! Basis orders: elementary matrices e_lm row-major. For the real rings the basis is
//! `w·e_lm` with index `(l·n + m)·|D| + w` and `w` running over (1), (1, î) or (1, î, ĵ, k̂).

mod grading;
mod quaternion;

pub use grading::{AbelianGroup, Bicharacter, Grading};
pub use quaternion::Quaternion;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::algebra::{build_algebra, AlgebraData};
use crate::error::{Error, Result};
use crate::linalg;
use crate::tensor::{einsum, Tensor};
use crate::{Scalar, DEFAULT_TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ring {
    /// M_n(ℂ) as a complex algebra.
    C,
    /// M_n(ℝ).
    R,
    /// M_n(ℂ) regarded as a real algebra.
    #[serde(rename = "C_R")]
    CR,
    /// M_n(ℍ) as a real algebra.
    #[serde(rename = "H_R")]
    HR,
}

impl Ring {
    /// Real dimension |D| of the division ring for the real cases, 1 for the complex algebra.
    pub fn size(self) -> usize {
        match self {
            Ring::C | Ring::R => 1,
            Ring::CR => 2,
            Ring::HR => 4,
        }
    }

    fn units(self) -> &'static [Quaternion] {
        const ONE: [Quaternion; 1] = [Quaternion::ONE];
        const CPLX: [Quaternion; 2] = [Quaternion::ONE, Quaternion::I];
        const QUAT: [Quaternion; 4] = [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K];
        match self {
            Ring::C | Ring::R => &ONE,
            Ring::CR => &CPLX,
            Ring::HR => &QUAT,
        }
    }

    fn unit_names(self) -> &'static [&'static str] {
        match self {
            Ring::C | Ring::R => &[""],
            Ring::CR => &["", "i."],
            Ring::HR => &["", "i.", "j.", "k."],
        }
    }
}

/// The weight x in ε(a) = Tr(x·a) (ring ℂ) or ε(a) = Real Tr(x·a) (real rings).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Weight {
    /// x = |D|·R·n·1, the symmetric form.
    Fhk,
    /// x = |D|·R·(p−q)·u with u = diag(+1 ×p, −1 ×q), p ≠ q.
    Signature { p: usize, q: usize },
    /// Explicit n×n row-major matrix. For ring ℂ an entry t + x·î stands for the complex
    /// number t + x·i.
    Matrix { entries: Vec<Quaternion> },
}

type QMat = Vec<Quaternion>;

fn qmat_mul(n: usize, a: &[Quaternion], b: &[Quaternion]) -> QMat {
    let mut c = vec![Quaternion::ZERO; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == Quaternion::ZERO {
                continue;
            }
            for j in 0..n {
                c[i * n + j] = c[i * n + j] + aik * b[k * n + j];
            }
        }
    }
    c
}

fn qtrace(n: usize, a: &[Quaternion]) -> Quaternion {
    (0..n).fold(Quaternion::ZERO, |acc, i| acc + a[i * n + i])
}

fn left_rep(q: Quaternion) -> [[f64; 4]; 4] {
    let (a, b, c, d) = (q.t, q.x, q.y, q.z);
    [[a, -b, -c, -d], [b, a, -d, c], [c, d, a, -b], [d, -c, b, a]]
}

/// Inverse of a quaternion matrix through its real 4n×4n left-regular representation.
fn qmat_inverse(n: usize, x: &[Quaternion]) -> Option<QMat> {
    let mut m = DMatrix::<f64>::zeros(4 * n, 4 * n);
    for i in 0..n {
        for j in 0..n {
            let l = left_rep(x[i * n + j]);
            for r in 0..4 {
                for c in 0..4 {
                    m[(4 * i + r, 4 * j + c)] = l[r][c];
                }
            }
        }
    }
    let sv = m.clone().singular_values();
    let top = sv.max();
    if top == 0.0 || sv.min() <= DEFAULT_TOL * top {
        return None;
    }
    let inv = m.try_inverse()?;
    let mut out = vec![Quaternion::ZERO; n * n];
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = Quaternion::new(
                inv[(4 * i, 4 * j)],
                inv[(4 * i + 1, 4 * j)],
                inv[(4 * i + 2, 4 * j)],
                inv[(4 * i + 3, 4 * j)],
            );
        }
    }
    Some(out)
}

fn weight_matrix(n: usize, ring: Ring, weight: &Weight, r: Scalar) -> Result<QMat> {
    let k = ring.size() as f64;
    let diag = |vals: Vec<f64>| -> QMat {
        let mut m = vec![Quaternion::ZERO; n * n];
        for (i, v) in vals.into_iter().enumerate() {
            m[i * n + i] = Quaternion::real(v);
        }
        m
    };
    // For the complex ring a complex R rides along as t + x·î.
    let rq = Quaternion::new(r.re, r.im, 0.0, 0.0);
    match weight {
        Weight::Fhk => Ok(diag(vec![1.0; n]).into_iter().map(|q| q * rq.scale(k * n as f64)).collect()),
        Weight::Signature { p, q } => {
            if p + q != n {
                return Err(Error::Invalid(format!("signature ({p},{q}) does not add up to n = {n}")));
            }
            if p == q {
                return Err(Error::Invalid("signature needs p ≠ q".into()));
            }
            let s = k * (*p as f64 - *q as f64);
            let u: Vec<f64> = (0..n).map(|i| if i < *p { 1.0 } else { -1.0 }).collect();
            Ok(diag(u).into_iter().map(|e| e * rq.scale(s)).collect())
        }
        Weight::Matrix { entries } => {
            if entries.len() != n * n {
                return Err(Error::DimensionMismatch { expected: n * n, got: entries.len() });
            }
            let allowed = |q: &Quaternion| match ring {
                Ring::R => q.x == 0.0 && q.y == 0.0 && q.z == 0.0,
                Ring::C | Ring::CR => q.y == 0.0 && q.z == 0.0,
                Ring::HR => true,
            };
            if !entries.iter().all(allowed) {
                return Err(Error::Invalid("weight matrix has entries outside the ring".into()));
            }
            Ok(entries.clone())
        }
    }
}

/// The scalar R required by the special condition: R·|D|·Tr(x⁻¹) = 1 (real part for ℍ).
fn required_r(ring: Ring, n: usize, xinv: &[Quaternion]) -> Result<Scalar> {
    let tr = qtrace(n, xinv);
    let k = ring.size() as f64;
    let t = match ring {
        Ring::C => Scalar::new(tr.t, tr.x),
        Ring::R | Ring::CR => {
            if tr.x.abs() > DEFAULT_TOL * tr.t.abs().max(1.0) {
                return Err(Error::InconsistentR {
                    r: "any real value".into(),
                    expected: format!("Tr(x^-1) real, got {} + {}i", tr.t, tr.x),
                });
            }
            Scalar::new(tr.t, 0.0)
        }
        Ring::HR => Scalar::new(tr.t, 0.0),
    };
    if t.norm() == 0.0 {
        return Err(Error::InconsistentR { r: "any value".into(), expected: "Tr(x^-1) ≠ 0".into() });
    }
    Ok(Scalar::new(1.0, 0.0) / (t * k))
}

pub fn matrix_algebra(n: usize, ring: Ring, weight: &Weight, r: Option<Scalar>) -> Result<AlgebraData> {
    if n == 0 {
        return Err(Error::Invalid("matrix size must be positive".into()));
    }
    if ring != Ring::C {
        if let Some(rv) = r {
            if rv.im != 0.0 {
                return Err(Error::Invalid("a real algebra needs a real R".into()));
            }
        }
    }
    let shorthand_r = r.unwrap_or(Scalar::new(1.0, 0.0));
    let x = weight_matrix(n, ring, weight, shorthand_r)?;
    let xinv = qmat_inverse(n, &x).ok_or(Error::SingularX)?;
    let expected = required_r(ring, n, &xinv)?;
    let r = match (weight, r) {
        (Weight::Matrix { .. }, None) => expected,
        (_, None) => shorthand_r,
        (_, Some(rv)) => rv,
    };
    if (r - expected).norm() > 1e-9 * expected.norm() {
        return Err(Error::InconsistentR { r: format!("{r}"), expected: format!("{expected}") });
    }

    let units = ring.units();
    let du = units.len();
    let d = n * n * du;
    let basis: Vec<QMat> = (0..d)
        .map(|a| {
            let (lm, w) = (a / du, a % du);
            let mut m = vec![Quaternion::ZERO; n * n];
            m[lm] = units[w];
            m
        })
        .collect();
    let eps = |a: &[Quaternion]| -> Scalar {
        let t = qtrace(n, &qmat_mul(n, &x, a));
        match ring {
            Ring::C => Scalar::new(t.t, t.x),
            _ => Scalar::new(t.real_part(), 0.0),
        }
    };
    let mut c = Tensor::zeros(&[d, d, d]);
    let mut binv = Tensor::zeros(&[d, d]);
    for a in 0..d {
        for b in 0..d {
            let ab = qmat_mul(n, &basis[a], &basis[b]);
            if ab.iter().all(|q| *q == Quaternion::ZERO) {
                continue;
            }
            binv.set(&[a, b], eps(&ab));
            for cc in 0..d {
                let v = eps(&qmat_mul(n, &ab, &basis[cc]));
                if v != Scalar::new(0.0, 0.0) {
                    c.set(&[a, b, cc], v);
                }
            }
        }
    }
    let b = linalg::inverse(&binv, DEFAULT_TOL).ok_or(Error::SingularPairing { tol: DEFAULT_TOL })?;
    let names = ring.unit_names();
    let labels = (0..d)
        .map(|a| {
            let (lm, w) = (a / du, a % du);
            format!("{}e{}{}", names[w], lm / n + 1, lm % n + 1)
        })
        .collect();
    build_algebra(c, b, r)?.with_labels(labels)
}

/// ℂC_m in the group basis {e, h, …, h^{m−1}} with ε(f) = R·m·f(e), graded by C_m.
pub fn group_algebra_cyclic(m: usize, r: Scalar) -> Result<(AlgebraData, Grading)> {
    if m == 0 {
        return Err(Error::Invalid("group order must be positive".into()));
    }
    let rm = r * m as f64;
    let c = Tensor::from_fn(&[m, m, m], |i| {
        if (i[0] + i[1] + i[2]) % m == 0 {
            rm
        } else {
            Scalar::new(0.0, 0.0)
        }
    });
    let b = Tensor::from_fn(&[m, m], |i| {
        if (i[0] + i[1]) % m == 0 {
            Scalar::new(1.0, 0.0) / rm
        } else {
            Scalar::new(0.0, 0.0)
        }
    });
    let labels = (0..m)
        .map(|k| match k {
            0 => "e".to_string(),
            1 => "h".to_string(),
            _ => format!("h^{k}"),
        })
        .collect();
    let grading = Grading { group: AbelianGroup::new(vec![m]), block_of_basis: (0..m).collect() };
    let alg = build_algebra(c, b, r)?.with_labels(labels)?.with_grading(grading.clone())?;
    Ok((alg, grading))
}

pub fn direct_sum(parts: &[AlgebraData]) -> Result<AlgebraData> {
    let first = parts.first().ok_or_else(|| Error::Invalid("empty direct sum".into()))?;
    let r = first.r();
    if parts.iter().any(|p| (p.r() - r).norm() > DEFAULT_TOL * r.norm()) {
        return Err(Error::MismatchedR);
    }
    if parts.len() == 1 {
        return Ok(first.clone());
    }
    let d: usize = parts.iter().map(|p| p.dim()).sum();
    let mut c = Tensor::zeros(&[d, d, d]);
    let mut b = Tensor::zeros(&[d, d]);
    let mut labels = Vec::with_capacity(d);
    let mut off = 0;
    for (k, p) in parts.iter().enumerate() {
        let dp = p.dim();
        for i in 0..dp {
            for j in 0..dp {
                b.set(&[off + i, off + j], p.b().get(&[i, j]));
                for l in 0..dp {
                    c.set(&[off + i, off + j, off + l], p.c().get(&[i, j, l]));
                }
            }
            labels.push(format!("s{}.{}", k + 1, p.labels()[i]));
        }
        off += dp;
    }
    build_algebra(c, b, r)?.with_labels(labels)
}

/// Re-express the algebra in the basis whose k-th vector has old coordinates `p[:, k]`.
pub fn change_basis(alg: &AlgebraData, p: &Tensor, labels: Vec<String>) -> Result<AlgebraData> {
    let d = alg.dim();
    if p.shape() != [d, d] {
        return Err(Error::DimensionMismatch { expected: d * d, got: p.len() });
    }
    let pinv = linalg::inverse(p, DEFAULT_TOL).ok_or_else(|| Error::Invalid("basis change is singular".into()))?;
    let c = einsum("ijk,ia,jb,kc->abc", &[alg.c(), p, p, p]);
    let b = einsum("ai,ij,bj->ab", &[&pinv, alg.b(), &pinv]);
    build_algebra(c, b, alg.r())?.with_labels(labels)
}

/// Standard gradings of the matrix algebras.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GradingKind {
    /// Block-diagonal (grade 0) against block-anti-diagonal (grade 1) on M_{p+q}.
    Z2Matrix { p: usize, q: usize, ring: Ring },
    /// M_n(ℂ_ℝ) = M_n(ℝ) ⊕ î·M_n(ℝ).
    Z2Complex { n: usize },
    /// M_n(ℍ_ℝ) graded by {1, î, ĵ, k̂} modulo sign, the Klein group.
    KleinQuaternionic { n: usize },
    /// M_n(ℂ) in the basis X^i Y^j graded by ℤ_n × ℤ_n.
    GammaN { n: usize },
}

#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    pub algebra: AlgebraData,
    pub grading: Grading,
    /// Index 0 is always the trivial bicharacter.
    pub bicharacters: Vec<Bicharacter>,
}

fn z2_pair() -> Vec<Bicharacter> {
    let g = AbelianGroup::new(vec![2]);
    let one = Scalar::new(1.0, 0.0);
    let sign = Bicharacter { group: g.clone(), table: vec![vec![one, one], vec![one, -one]] };
    vec![Bicharacter::trivial(g), sign]
}

/// Group element of the Klein grading carried by the unit w ∈ {1, î, ĵ, k̂}.
pub fn klein_element(w: usize) -> usize {
    // (î ↦ (1,0), ĵ ↦ (0,1), k̂ ↦ (1,1)) in the mixed radix of [2, 2].
    [0, 2, 1, 3][w]
}

/// The Klein bicharacter with λ̃(î,ĵ)=α, λ̃(î,k̂)=β, λ̃(ĵ,k̂)=γ, symmetric, and
/// λ̃(î,î)=αβ, λ̃(ĵ,ĵ)=αγ, λ̃(k̂,k̂)=βγ.
pub fn klein_bicharacter(alpha: i8, beta: i8, gamma: i8) -> Bicharacter {
    let (a, b, g) = (alpha as f64, beta as f64, gamma as f64);
    let by_unit = [
        [1.0, 1.0, 1.0, 1.0],
        [1.0, a * b, a, b],
        [1.0, a, a * g, g],
        [1.0, b, g, b * g],
    ];
    let mut table = vec![vec![Scalar::new(1.0, 0.0); 4]; 4];
    for w in 0..4 {
        for t in 0..4 {
            table[klein_element(w)][klein_element(t)] = Scalar::new(by_unit[w][t], 0.0);
        }
    }
    Bicharacter { group: AbelianGroup::new(vec![2, 2]), table }
}

/// All eight Klein bicharacters, (α, β, γ) in lexicographic order from (+,+,+).
pub fn klein_sign_triples() -> Vec<(i8, i8, i8)> {
    let s = [1i8, -1];
    let mut out = Vec::new();
    for &a in &s {
        for &b in &s {
            for &g in &s {
                out.push((a, b, g));
            }
        }
    }
    out
}

fn gamma_basis(n: usize) -> (Tensor, Vec<String>) {
    let xi = Scalar::from_polar(1.0, 2.0 * std::f64::consts::PI / n as f64);
    let zero = Scalar::new(0.0, 0.0);
    let one = Scalar::new(1.0, 0.0);
    let mut x = DMatrix::<Scalar>::zeros(n, n);
    for k in 0..n {
        x[(k, k)] = xi.powu((n - 1 - k) as u32);
    }
    let mut y = DMatrix::<Scalar>::from_element(n, n, zero);
    y[(n - 1, 0)] = one;
    for m in 0..n.saturating_sub(1) {
        y[(m, m + 1)] = one;
    }
    let mut p = Tensor::zeros(&[n * n, n * n]);
    let mut labels = Vec::with_capacity(n * n);
    let mut xi_pow = DMatrix::<Scalar>::identity(n, n);
    for i in 0..n {
        let mut m = xi_pow.clone();
        for j in 0..n {
            let col = i * n + j;
            for l in 0..n {
                for mm in 0..n {
                    p.set(&[l * n + mm, col], m[(l, mm)]);
                }
            }
            labels.push(format!("X^{i}Y^{j}"));
            m = &m * &y;
        }
        xi_pow = &xi_pow * &x;
    }
    (p, labels)
}

fn gamma_bicharacter(n: usize) -> Bicharacter {
    let g = AbelianGroup::new(vec![n, n]);
    let xi = Scalar::from_polar(1.0, 2.0 * std::f64::consts::PI / n as f64);
    let size = n * n;
    let mut table = vec![vec![Scalar::new(1.0, 0.0); size]; size];
    for h in 0..size {
        for j in 0..size {
            let (a, b) = (g.digits(h), g.digits(j));
            let e = (a[0] * b[1] + n * n - (b[0] * a[1]) % n) % n;
            table[h][j] = xi.powu(e as u32);
        }
    }
    Bicharacter { group: g, table }
}

/// Attach one of the standard gradings to `alg`, rebasing it when the grading needs a
/// different basis. The algebra must have the layout produced by [`matrix_algebra`].
pub fn standard_grading(alg: &AlgebraData, kind: &GradingKind) -> Result<GradedAlgebra> {
    let (expected_dim, ring) = match *kind {
        GradingKind::Z2Matrix { p, q, ring } => ((p + q) * (p + q) * ring.size(), ring),
        GradingKind::Z2Complex { n } => (2 * n * n, Ring::CR),
        GradingKind::KleinQuaternionic { n } => (4 * n * n, Ring::HR),
        GradingKind::GammaN { n } => (n * n, Ring::C),
    };
    if alg.dim() != expected_dim {
        return Err(Error::ShapeMismatch(format!(
            "{kind:?} needs dimension {expected_dim}, the algebra has {}",
            alg.dim()
        )));
    }
    let du = ring.size();
    let (algebra, grading, bicharacters) = match *kind {
        GradingKind::Z2Matrix { p, q, .. } => {
            let n = p + q;
            let blocks = (0..expected_dim)
                .map(|a| {
                    let lm = a / du;
                    usize::from((lm / n < p) != (lm % n < p))
                })
                .collect();
            (alg.clone(), Grading { group: AbelianGroup::new(vec![2]), block_of_basis: blocks }, z2_pair())
        }
        GradingKind::Z2Complex { .. } => {
            let blocks = (0..expected_dim).map(|a| a % 2).collect();
            (alg.clone(), Grading { group: AbelianGroup::new(vec![2]), block_of_basis: blocks }, z2_pair())
        }
        GradingKind::KleinQuaternionic { .. } => {
            let blocks = (0..expected_dim).map(|a| klein_element(a % 4)).collect();
            let bichars = klein_sign_triples().into_iter().map(|(a, b, g)| klein_bicharacter(a, b, g)).collect();
            (alg.clone(), Grading { group: AbelianGroup::new(vec![2, 2]), block_of_basis: blocks }, bichars)
        }
        GradingKind::GammaN { n } => {
            let (p, labels) = gamma_basis(n);
            let rebased = change_basis(alg, &p, labels)?;
            let group = AbelianGroup::new(vec![n, n]);
            let blocks = (0..n * n).collect();
            let bichars = vec![Bicharacter::trivial(group.clone()), gamma_bicharacter(n)];
            (rebased, Grading { group, block_of_basis: blocks }, bichars)
        }
    };
    if !grading.is_multiplicative(&algebra, 1e-9) {
        return Err(Error::ShapeMismatch(format!(
            "products leave their blocks (violation {:e})",
            grading.violation(&algebra)
        )));
    }
    let algebra = algebra.with_grading(grading.clone())?;
    Ok(GradedAlgebra { algebra, grading, bicharacters })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::validate;

    fn c(x: f64) -> Scalar {
        Scalar::new(x, 0.0)
    }

    #[test]
    fn elementary_products_in_m2c() {
        let alg = matrix_algebra(2, Ring::C, &Weight::Fhk, None).unwrap();
        // e11 = 0, e12 = 1, e21 = 2, e22 = 3
        assert_eq!(alg.multiply(&alg.basis(0), &alg.basis(1)).unwrap(), alg.basis(1));
        assert!(alg.multiply(&alg.basis(1), &alg.basis(0)).unwrap().iter().all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn quaternion_units_multiply() {
        let alg = matrix_algebra(1, Ring::HR, &Weight::Fhk, None).unwrap();
        let ij = alg.multiply(&alg.basis(1), &alg.basis(2)).unwrap();
        for (k, z) in ij.iter().enumerate() {
            let want = if k == 3 { 1.0 } else { 0.0 };
            assert!((z - c(want)).norm() < 1e-14, "i*j coordinate {k} = {z}");
        }
        assert!((alg.frobenius_form(alg.unit()).unwrap() - c(4.0)).norm() < 1e-12);
    }

    #[test]
    fn cyclic_group_law() {
        let (alg, _) = group_algebra_cyclic(3, c(1.0)).unwrap();
        let p = alg.multiply(&alg.basis(1), &alg.basis(2)).unwrap();
        assert!((p[0] - c(1.0)).norm() < 1e-14 && p[1].norm() < 1e-14 && p[2].norm() < 1e-14);
    }

    #[test]
    fn inconsistent_r_is_rejected() {
        let x = vec![Quaternion::real(2.0), Quaternion::ZERO, Quaternion::ZERO, Quaternion::real(2.0)];
        // Tr(x⁻¹) = 1 so R must be 1.
        let err = matrix_algebra(2, Ring::C, &Weight::Matrix { entries: x.clone() }, Some(c(0.5))).unwrap_err();
        assert!(matches!(err, Error::InconsistentR { .. }));
        let ok = matrix_algebra(2, Ring::C, &Weight::Matrix { entries: x }, None).unwrap();
        assert!((ok.r() - c(1.0)).norm() < 1e-12);
    }

    #[test]
    fn singular_weight_is_rejected() {
        let x = vec![Quaternion::real(1.0), Quaternion::real(1.0), Quaternion::real(1.0), Quaternion::real(1.0)];
        assert_eq!(matrix_algebra(2, Ring::R, &Weight::Matrix { entries: x }, None).unwrap_err(), Error::SingularX);
    }

    #[test]
    fn direct_sum_rules() {
        let a = matrix_algebra(1, Ring::C, &Weight::Fhk, None).unwrap();
        let b = matrix_algebra(1, Ring::C, &Weight::Fhk, Some(c(0.5))).unwrap();
        assert_eq!(direct_sum(&[a.clone(), b]).unwrap_err(), Error::MismatchedR);
        let single = direct_sum(std::slice::from_ref(&a)).unwrap();
        assert_eq!(single.c(), a.c());
        assert_eq!(single.b(), a.b());
    }

    #[test]
    fn gamma_two_basis_matches_example() {
        let alg = matrix_algebra(2, Ring::C, &Weight::Fhk, None).unwrap();
        let (p, _) = gamma_basis(2);
        // X = diag(-1, 1) is basis vector (1, 0); Y = e12 + e21 is (0, 1).
        let col = |k: usize| (0..4).map(|r| p.get(&[r, k])).collect::<Vec<_>>();
        let x = col(2);
        let y = col(1);
        let close = |v: &[Scalar], w: [f64; 4]| v.iter().zip(w).all(|(a, b)| (a - c(b)).norm() < 1e-12);
        assert!(close(&x, [-1.0, 0.0, 0.0, 1.0]));
        assert!(close(&y, [0.0, 1.0, 1.0, 0.0]));
        let g = standard_grading(&alg, &GradingKind::GammaN { n: 2 }).unwrap();
        assert!(validate(&g.algebra, 1e-9).is_planar_model());
    }

    #[test]
    fn klein_table_rows() {
        let t = klein_bicharacter(-1, 1, -1);
        let (i, j, k) = (klein_element(1), klein_element(2), klein_element(3));
        assert_eq!(t.value(i, j), c(-1.0));
        assert_eq!(t.value(i, k), c(1.0));
        assert_eq!(t.value(j, k), c(-1.0));
        assert_eq!(t.value(i, i), c(-1.0));
        assert_eq!(t.value(j, j), c(1.0));
        assert_eq!(t.value(k, k), c(-1.0));
        assert_eq!(t.defect(), 0.0);
    }
}
