//! Handle elements η, χ, the cylinder maps and the closed-surface partition functions.

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraData;
use crate::crossings::{check_axioms, curl_maps, AxiomReport, CrossingMap};
use crate::error::{Error, Result};
use crate::linalg;
use crate::sparse::{entries, SparseCross, SparseMult};
use crate::surfaces::SpinStructure;
use crate::tensor::{rel_residual, Tensor};
use crate::{Scalar, DEFAULT_TOL};

use super::diagram::{eval_diagram, Diagram};

fn zero() -> Scalar {
    Scalar::new(0.0, 0.0)
}

/// Multiply a chain of basis elements, left to right.
fn chain(m: &SparseMult, d: usize, idx: &[usize]) -> Vec<Scalar> {
    let mut x = vec![zero(); d];
    x[idx[0]] = Scalar::new(1.0, 0.0);
    for &b in &idx[1..] {
        let mut y = vec![zero(); d];
        for (a, &xa) in x.iter().enumerate() {
            if xa == zero() {
                continue;
            }
            for &(c, v) in m.col(a, b) {
                y[c] += xa * v;
            }
        }
        x = y;
    }
    x
}

/// Σ B1^{ab} B2^{cd} λ^{op}_{bc} e_a·e_o·e_p·e_d.
fn handle_from_pairings(alg: &AlgebraData, l: &SparseCross, m: &SparseMult, b1: &Tensor, b2: &Tensor) -> Vec<Scalar> {
    let d = alg.dim();
    let mut out = vec![zero(); d];
    let e2 = entries(b2);
    for (a, b, v1) in entries(b1) {
        for &(c, dd, v2) in &e2 {
            for &(o, p, v3) in l.col(b, c) {
                let w = v1 * v2 * v3;
                for (k, x) in chain(m, d, &[a, o, p, dd]).into_iter().enumerate() {
                    out[k] += w * x;
                }
            }
        }
    }
    out
}

/// The three cylinder maps as (out, in) matrices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RingMaps {
    pub p: Tensor,
    pub n1: Tensor,
    pub n2: Tensor,
}

/// An algebra with a crossing that satisfies axioms 1–5, with its handle elements.
#[derive(Clone, Debug)]
pub struct SpinModel<'a> {
    alg: &'a AlgebraData,
    cr: &'a CrossingMap,
    report: AxiomReport,
    phi: Tensor,
    eta: Vec<Scalar>,
    chi: Vec<Scalar>,
}

impl<'a> SpinModel<'a> {
    pub fn new(alg: &'a AlgebraData, cr: &'a CrossingMap, tol: f64) -> Result<Self> {
        if alg.dim() != cr.dim() {
            return Err(Error::DimensionMismatch { expected: alg.dim(), got: cr.dim() });
        }
        let report = check_axioms(alg, cr, tol);
        if !report.is_spin_model() {
            return Err(Error::AxiomPrereqFailed(format!(
                "crossing axioms 1-5 fail (max residual {:e})",
                report.max_residual
            )));
        }
        let phi = curl_maps(alg, cr).0;
        let l = SparseCross::new(cr.tensor());
        let m = SparseMult::new(alg);
        let b_phi = linalg::mat_mul(&phi, alg.b());
        let eta = handle_from_pairings(alg, &l, &m, alg.b(), alg.b());
        let chi = handle_from_pairings(alg, &l, &m, &b_phi, &b_phi);
        Ok(SpinModel { alg, cr, report, phi, eta, chi })
    }

    pub fn algebra(&self) -> &AlgebraData {
        self.alg
    }

    pub fn crossing(&self) -> &CrossingMap {
        self.cr
    }

    pub fn report(&self) -> &AxiomReport {
        &self.report
    }

    pub fn phi(&self) -> &Tensor {
        &self.phi
    }

    /// The even handle.
    pub fn eta(&self) -> &[Scalar] {
        &self.eta
    }

    /// The odd handle, one curl on each loop.
    pub fn chi(&self) -> &[Scalar] {
        &self.chi
    }

    /// Handle element with the given curl counts, evaluated as a diagram.
    pub fn handle_element(&self, curls_a: usize, curls_b: usize) -> Result<Vec<Scalar>> {
        Ok(eval_diagram(self.alg, Some(self.cr), &Diagram::handle(curls_a, curls_b))?.into_data())
    }

    pub fn ring_maps(&self) -> Result<RingMaps> {
        let d = self.alg.dim();
        let eval = |dg: Diagram| -> Result<Tensor> { Ok(eval_diagram(self.alg, Some(self.cr), &dg)?.reshape(&[d, d])) };
        Ok(RingMaps { p: eval(Diagram::cylinder(0, false))?, n1: eval(Diagram::cylinder(1, false))?, n2: eval(Diagram::cylinder(1, true))? })
    }

    /// R·ε(η^g) for even parity, R·ε(χ·η^{g−1}) for odd.
    pub fn partition(&self, genus: usize, parity: i8) -> Result<Scalar> {
        let alg = self.alg;
        let x = match (parity, genus) {
            (1, _) => alg.power(&self.eta, genus),
            (-1, 0) => return Err(Error::InvalidParity { genus }),
            (-1, g) => alg.mul_unchecked(&self.chi, &alg.power(&self.eta, g - 1)),
            (p, _) => return Err(Error::Invalid(format!("parity must be ±1, got {p}"))),
        };
        Ok(alg.r() * alg.eps(&x))
    }

    /// R times the closed surface diagram with one curl on each cycle where q = 1.
    pub fn partition_direct(&self, spin: &SpinStructure) -> Result<Scalar> {
        self.partition_with_curls(&spin.curls())
    }

    /// R times the closed surface diagram with arbitrary curl counts per handle cycle.
    pub fn partition_with_curls(&self, curls: &[(usize, usize)]) -> Result<Scalar> {
        let z = eval_diagram(self.alg, Some(self.cr), &Diagram::surface(curls))?;
        Ok(self.alg.r() * z.data()[0])
    }
}

pub fn eta(alg: &AlgebraData, cr: &CrossingMap) -> Result<Vec<Scalar>> {
    Ok(SpinModel::new(alg, cr, DEFAULT_TOL)?.eta)
}

pub fn chi(alg: &AlgebraData, cr: &CrossingMap) -> Result<Vec<Scalar>> {
    Ok(SpinModel::new(alg, cr, DEFAULT_TOL)?.chi)
}

pub fn ring_maps(alg: &AlgebraData, cr: &CrossingMap) -> Result<RingMaps> {
    SpinModel::new(alg, cr, DEFAULT_TOL)?.ring_maps()
}

pub fn spin_partition(alg: &AlgebraData, cr: &CrossingMap, genus: usize, parity: i8) -> Result<Scalar> {
    SpinModel::new(alg, cr, DEFAULT_TOL)?.partition(genus, parity)
}

pub fn spin_partition_direct(alg: &AlgebraData, cr: &CrossingMap, spin: &SpinStructure) -> Result<Scalar> {
    SpinModel::new(alg, cr, DEFAULT_TOL)?.partition_direct(spin)
}

/// z = Σ B^{ac} B^{bd} e_a·e_b·e_c·e_d.
pub fn fhk_z(alg: &AlgebraData) -> Result<Vec<Scalar>> {
    let sym = rel_residual(alg.binv(), &linalg::transpose(alg.binv())).unwrap_or(0.0);
    if sym > DEFAULT_TOL {
        return Err(Error::NotSymmetric(sym));
    }
    let d = alg.dim();
    let m = SparseMult::new(alg);
    let b = entries(alg.b());
    let mut z = vec![zero(); d];
    for &(a, c, v1) in &b {
        for &(bb, dd, v2) in &b {
            for (k, x) in chain(&m, d, &[a, bb, c, dd]).into_iter().enumerate() {
                z[k] += v1 * v2 * x;
            }
        }
    }
    Ok(z)
}

/// R·ε(z^g) for a symmetric algebra.
pub fn fhk_partition(alg: &AlgebraData, genus: usize) -> Result<Scalar> {
    let z = fhk_z(alg)?;
    Ok(alg.r() * alg.eps(&alg.power(&z, genus)))
}

/// R·ε(1), the sphere.
pub fn sphere_partition(alg: &AlgebraData) -> Scalar {
    alg.r() * alg.eps(alg.unit())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{matrix_algebra, standard_grading, GradingKind, Ring, Weight};

    fn c(x: f64) -> Scalar {
        Scalar::new(x, 0.0)
    }

    fn close(a: &[Scalar], b: &[Scalar], tol: f64) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol)
    }

    #[test]
    fn fhk_eta_is_scaled_unit() {
        let r = c(0.5);
        let alg = matrix_algebra(2, Ring::C, &Weight::Fhk, Some(r)).unwrap();
        let cr = CrossingMap::canonical(4);
        let model = SpinModel::new(&alg, &cr, 1e-9).unwrap();
        let want: Vec<Scalar> = alg.unit().iter().map(|u| u / (r * r * 4.0)).collect();
        assert!(close(model.eta(), &want, 1e-12));
        assert!(close(model.chi(), &want, 1e-12));
        assert!(close(&fhk_z(&alg).unwrap(), &want, 1e-12));
        assert!(close(&model.handle_element(0, 0).unwrap(), &want, 1e-12));
    }

    #[test]
    fn complex_real_sign_crossing() {
        let n = 2;
        let r = c(1.0);
        let alg = matrix_algebra(n, Ring::CR, &Weight::Fhk, Some(r)).unwrap();
        let g = standard_grading(&alg, &GradingKind::Z2Complex { n }).unwrap();
        let cr = CrossingMap::from_bicharacter(&g.grading, &g.bicharacters[1]).unwrap();
        let model = SpinModel::new(&g.algebra, &cr, 1e-9).unwrap();
        let k = 2.0 / (2.0 * n as f64).powi(2);
        let want: Vec<Scalar> = alg.unit().iter().map(|u| u * k).collect();
        assert!(close(model.eta(), &want, 1e-12));
        let neg: Vec<Scalar> = want.iter().map(|x| -x).collect();
        assert!(close(model.chi(), &neg, 1e-12));
        assert!(close(&model.handle_element(1, 1).unwrap(), model.chi(), 1e-12));
        assert!(close(&model.handle_element(1, 0).unwrap(), model.eta(), 1e-12));
        let odd = SpinStructure::with_parity(2, -1).unwrap();
        let z = model.partition_direct(&odd).unwrap();
        assert!((z - model.partition(2, -1).unwrap()).norm() < 1e-12);
        assert!((z - c(-0.5 / 4.0)).norm() < 1e-12);
    }

    #[test]
    fn prerequisites_are_enforced() {
        let alg = matrix_algebra(1, Ring::C, &Weight::Fhk, None).unwrap();
        let zero = CrossingMap::new(Tensor::zeros(&[1, 1, 1, 1])).unwrap();
        assert!(matches!(eta(&alg, &zero).unwrap_err(), Error::AxiomPrereqFailed(_)));
        let cr = CrossingMap::canonical(1);
        assert_eq!(spin_partition(&alg, &cr, 0, -1).unwrap_err(), Error::InvalidParity { genus: 0 });
        let ns = matrix_algebra(3, Ring::C, &Weight::Signature { p: 2, q: 1 }, None).unwrap();
        assert!(matches!(fhk_partition(&ns, 1).unwrap_err(), Error::NotSymmetric(_)));
    }
}
