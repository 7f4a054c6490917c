//! Known closed forms of Z(Σ_g, s) for the constructor families, as sums of terms
//! c · P(s)^{0|1} · 2^{a−b·g} · (R·k)^{2−2g}.

use serde::{Deserialize, Serialize};

use crate::constructors::{klein_sign_triples, GradingKind, Ring, Weight};
use crate::io::{AlgebraSpec, CrossingSpec};
use crate::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coef: f64,
    /// Multiply by the parity P(s).
    pub parity: bool,
    pub two_const: i32,
    pub two_slope: i32,
    /// k in (R·k)^{2−2g}.
    pub size: f64,
}

impl Term {
    fn new(coef: f64, size: f64) -> Self {
        Term { coef, parity: false, two_const: 0, two_slope: 0, size }
    }

    fn pow2(mut self, a: i32, b: i32) -> Self {
        self.two_const = a;
        self.two_slope = b;
        self
    }

    fn signed(mut self) -> Self {
        self.parity = true;
        self
    }

    fn eval(&self, genus: usize, parity: i8, r: Scalar) -> Scalar {
        let g = genus as i32;
        let p = if self.parity { parity as f64 } else { 1.0 };
        (r * self.size).powi(2 - 2 * g) * (self.coef * p * 2f64.powi(self.two_const - self.two_slope * g))
    }

    fn render(&self) -> String {
        let mut parts = Vec::new();
        if self.coef != 1.0 {
            parts.push(format!("{}", self.coef));
        }
        if self.parity {
            parts.push("P(s)".to_string());
        }
        match (self.two_const, self.two_slope) {
            (0, 0) => {}
            (a, 0) => parts.push(format!("2^{a}")),
            (a, 1) => parts.push(format!("2^({a}−g)")),
            (a, b) => parts.push(format!("2^({a}−{b}g)")),
        }
        if self.size == 1.0 {
            parts.push("R^(2−2g)".to_string());
        } else {
            parts.push(format!("({}R)^(2−2g)", self.size));
        }
        parts.join("·")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Formula {
    pub terms: Vec<Term>,
}

impl Formula {
    pub fn eval(&self, genus: usize, parity: i8, r: Scalar) -> Scalar {
        self.terms.iter().map(|t| t.eval(genus, parity, r)).sum()
    }

    pub fn render(&self) -> String {
        self.terms.iter().map(Term::render).collect::<Vec<_>>().join(" + ")
    }

    fn single(t: Term) -> Self {
        Formula { terms: vec![t] }
    }
}

/// |k| with k = n for the symmetric form and p − q for the signature form.
fn effective_size(n: usize, weight: &Weight) -> Option<f64> {
    match weight {
        Weight::Fhk => Some(n as f64),
        Weight::Signature { p, q } => Some((*p as f64 - *q as f64).abs()),
        Weight::Matrix { .. } => None,
    }
}

/// The spin-independent invariant of an algebra with the swap crossing.
fn topological(spec: &AlgebraSpec) -> Option<Formula> {
    match spec {
        AlgebraSpec::Matrix { n, ring, weight: Weight::Fhk, .. } => {
            let k = *n as f64;
            let t = match ring {
                Ring::C | Ring::R => Term::new(1.0, k),
                Ring::CR => Term::new(2.0, k),
                Ring::HR => Term::new(1.0, k).pow2(2, 2),
            };
            Some(Formula::single(t))
        }
        AlgebraSpec::GroupCyclic { m, .. } => Some(Formula::single(Term::new(*m as f64, 1.0))),
        AlgebraSpec::DirectSum { parts } => {
            let mut terms = Vec::new();
            for p in parts {
                terms.extend(topological(p)?.terms);
            }
            Some(Formula { terms })
        }
        _ => None,
    }
}

/// Invariants of ℂC_m, m ≤ 4, with η given in the group basis and R the algebra's R.
fn cyclic_family(m: usize, r: Scalar, eta: &[Scalar]) -> Option<Formula> {
    let s = 1.0 / (r * r);
    let e = |k: usize| -> Vec<Scalar> { (0..m).map(|i| if i == k { s } else { Scalar::new(0.0, 0.0) }).collect() };
    let comb = |cs: &[(usize, f64)]| -> Vec<Scalar> {
        let mut v = vec![Scalar::new(0.0, 0.0); m];
        for &(k, c) in cs {
            v[k] += s * c;
        }
        v
    };
    let close = |v: &[Scalar]| v.iter().zip(eta).all(|(a, b)| (a - b).norm() <= 1e-8 * s.norm().max(1.0));
    let top = Formula::single(Term::new(m as f64, 1.0));
    if close(&e(0)) {
        return Some(top);
    }
    let mixed = |a: f64| Formula { terms: vec![Term::new(a, 1.0), Term::new(1.0, 1.0).pow2(1, 1).signed()] };
    match m {
        2 if close(&comb(&[(0, 0.5)])) => Some(Formula::single(Term::new(1.0, 1.0).pow2(1, 1).signed())),
        3 if close(&comb(&[(0, 2.0 / 3.0), (1, 1.0 / 6.0), (2, 1.0 / 6.0)])) => Some(mixed(1.0)),
        4 if close(&comb(&[(0, 0.25)])) => Some(Formula::single(Term::new(1.0, 1.0).pow2(2, 2))),
        4 if close(&comb(&[(0, 0.5)])) => Some(Formula::single(Term::new(1.0, 1.0).pow2(2, 1).signed())),
        4 if close(&comb(&[(0, 0.75), (2, 0.25)])) || close(&comb(&[(0, 0.75), (2, -0.25)])) => Some(mixed(2.0)),
        _ => None,
    }
}

/// Closed form for a model built from constructor shorthands, when one is known.
/// `eta` (group-basis coordinates) identifies the family for cyclic group algebras with a
/// non-swap crossing.
pub fn closed_form(
    spec: &AlgebraSpec,
    grading: Option<&GradingKind>,
    crossing: Option<&CrossingSpec>,
    r: Scalar,
    eta: Option<&[Scalar]>,
) -> Option<Formula> {
    let name = match crossing {
        None => None,
        Some(CrossingSpec::Named(s)) => Some(s.as_str()),
        Some(CrossingSpec::Explicit(_)) => Some(""),
    };
    // The trivial bicharacter gives the swap.
    if matches!(name, None | Some("canonical") | Some("bichar:0")) {
        if let Some(f) = topological(spec) {
            return Some(f);
        }
    }
    if let (AlgebraSpec::GroupCyclic { m, .. }, Some(eta)) = (spec, eta) {
        return cyclic_family(*m, r, eta);
    }
    let name = name?;
    let key = name.strip_prefix("bichar:")?;
    let AlgebraSpec::Matrix { n, ring, weight, .. } = spec else { return None };
    let k = effective_size(*n, weight)?;
    match grading? {
        GradingKind::Z2Complex { .. } if matches!(key, "1" | "sign") => {
            Some(Formula::single(Term::new(1.0, k).pow2(1, 1).signed()))
        }
        GradingKind::Z2Matrix { p, q, ring: Ring::C } if *ring == Ring::C && matches!(key, "1" | "sign") => {
            Some(Formula::single(Term::new(1.0, (*p as f64 - *q as f64).abs())))
        }
        GradingKind::KleinQuaternionic { .. } => {
            let triples = klein_sign_triples();
            let idx = if let Ok(i) = key.parse::<usize>() {
                i
            } else {
                let signs: Vec<i8> = key.chars().map(|c| if c == '+' { 1 } else { -1 }).collect();
                triples.iter().position(|&(a, b, g)| [a, b, g] == signs[..])?
            };
            let (a, b, g) = *triples.get(idx)?;
            let t = match a + b + g {
                -3 => Term::new(4.0, k),
                -1 => Term::new(1.0, k).pow2(2, 1).signed(),
                _ => Term::new(1.0, k).pow2(2, 2),
            };
            Some(Formula::single(t))
        }
        GradingKind::GammaN { n: gn } if key == "1" => Some(Formula::single(Term::new((gn * gn) as f64, 1.0))),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering_and_values() {
        let f = Formula { terms: vec![Term::new(1.0, 1.0), Term::new(1.0, 1.0).pow2(1, 1).signed()] };
        assert_eq!(f.render(), "R^(2−2g) + P(s)·2^(1−g)·R^(2−2g)");
        let r = Scalar::new(0.5, 0.0);
        // (1 + P·2^{1−g}) R^{2−2g} at g = 2, odd.
        assert!((f.eval(2, -1, r) - Scalar::new(0.5 * 4.0, 0.0)).norm() < 1e-12);
        let q = Formula::single(Term::new(1.0, 2.0).pow2(2, 2));
        assert_eq!(q.render(), "2^(2−2g)·(2R)^(2−2g)");
    }
}
