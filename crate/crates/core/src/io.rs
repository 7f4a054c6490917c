//! JSON formats: algebras, constructor specs, crossings and whole model files.
//!
//! Tensors are nested row-major arrays whose leaves are `[re, im]` pairs; a bare number
//! is accepted as a real leaf on input.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{build_algebra, AlgebraData, ValidationReport};
use crate::constructors::{
    direct_sum, group_algebra_cyclic, matrix_algebra, standard_grading, GradedAlgebra, Grading, GradingKind, Ring, Weight,
};
use crate::crossings::CrossingMap;
use crate::error::{Error, Result};
use crate::tensor::Tensor;
use crate::Scalar;

pub fn scalar_json(z: Scalar) -> Value {
    json!([z.re, z.im])
}

fn leaf(v: &Value) -> Result<Scalar> {
    match v {
        Value::Number(n) => Ok(Scalar::new(n.as_f64().unwrap_or(f64::NAN), 0.0)),
        Value::Array(a) if a.len() == 2 && a.iter().all(Value::is_number) => {
            Ok(Scalar::new(a[0].as_f64().unwrap_or(f64::NAN), a[1].as_f64().unwrap_or(f64::NAN)))
        }
        _ => Err(Error::Json(format!("expected a number or [re, im], got {v}"))),
    }
}

/// A tensor as nested arrays of `[re, im]`.
pub fn nested(t: &Tensor) -> Value {
    fn rec(shape: &[usize], data: &[Scalar]) -> Value {
        if shape.is_empty() {
            return scalar_json(data[0]);
        }
        let step = data.len() / shape[0].max(1);
        Value::Array((0..shape[0]).map(|i| rec(&shape[1..], &data[i * step..(i + 1) * step])).collect())
    }
    rec(t.shape(), t.data())
}

/// Inverse of [`nested`] for a tensor of the given rank with all axes of length `d`.
pub fn from_nested(v: &Value, rank: usize, d: usize) -> Result<Tensor> {
    fn rec(v: &Value, rank: usize, d: usize, out: &mut Vec<Scalar>) -> Result<()> {
        if rank == 0 {
            out.push(leaf(v)?);
            return Ok(());
        }
        let a = v.as_array().ok_or_else(|| Error::Json(format!("expected an array, got {v}")))?;
        if a.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: a.len() });
        }
        a.iter().try_for_each(|x| rec(x, rank - 1, d, out))
    }
    let mut data = Vec::with_capacity(d.pow(rank as u32));
    rec(v, rank, d, &mut data)?;
    if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite("json tensor"));
    }
    Ok(Tensor::from_vec(&vec![d; rank], data))
}

/// A scalar given as a number or as `[re, im]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarSpec {
    Real(f64),
    Complex([f64; 2]),
}

impl ScalarSpec {
    pub fn value(self) -> Scalar {
        match self {
            ScalarSpec::Real(x) => Scalar::new(x, 0.0),
            ScalarSpec::Complex([re, im]) => Scalar::new(re, im),
        }
    }
}

/// The algebra exchange format.
pub fn algebra_to_json(alg: &AlgebraData) -> Value {
    let mut v = json!({
        "dim": alg.dim(),
        "C": nested(alg.c()),
        "B": nested(alg.b()),
        "R": scalar_json(alg.r()),
        "labels": alg.labels(),
    });
    if let Some(g) = alg.grading() {
        v["grading"] = json!({ "group": g.group.orders, "block_of_basis": g.block_of_basis });
    }
    v
}

pub fn algebra_from_json(v: &Value) -> Result<AlgebraData> {
    let d = v["dim"].as_u64().ok_or_else(|| Error::Json("missing integer \"dim\"".into()))? as usize;
    let c = from_nested(&v["C"], 3, d)?;
    let b = from_nested(&v["B"], 2, d)?;
    let r = leaf(&v["R"])?;
    let mut alg = build_algebra(c, b, r)?;
    if let Some(labels) = v.get("labels") {
        alg = alg.with_labels(serde_json::from_value(labels.clone())?)?;
    }
    if let Some(g) = v.get("grading") {
        let orders: Vec<usize> = serde_json::from_value(g["group"].clone())?;
        let blocks: Vec<usize> = serde_json::from_value(g["block_of_basis"].clone())?;
        let group = crate::constructors::AbelianGroup::new(orders);
        alg = alg.with_grading(Grading { group, block_of_basis: blocks })?;
    }
    Ok(alg)
}

pub fn crossing_to_json(cr: &CrossingMap) -> Value {
    json!({ "dim": cr.dim(), "lambda": nested(cr.tensor()) })
}

pub fn crossing_from_json(v: &Value) -> Result<CrossingMap> {
    let d = v["dim"].as_u64().ok_or_else(|| Error::Json("missing integer \"dim\"".into()))? as usize;
    CrossingMap::new(from_nested(&v["lambda"], 4, d)?)
}

/// A constructor call, or explicit data in the exchange format.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlgebraSpec {
    Matrix {
        n: usize,
        ring: Ring,
        #[serde(default = "fhk")]
        weight: Weight,
        #[serde(rename = "R", default, skip_serializing_if = "Option::is_none")]
        r: Option<ScalarSpec>,
    },
    GroupCyclic {
        m: usize,
        #[serde(rename = "R", default, skip_serializing_if = "Option::is_none")]
        r: Option<ScalarSpec>,
    },
    DirectSum {
        parts: Vec<AlgebraSpec>,
    },
    Explicit {
        #[serde(flatten)]
        data: Value,
    },
}

fn fhk() -> Weight {
    Weight::Fhk
}

impl AlgebraSpec {
    pub fn build(&self) -> Result<AlgebraData> {
        match self {
            AlgebraSpec::Matrix { n, ring, weight, r } => matrix_algebra(*n, *ring, weight, r.map(ScalarSpec::value)),
            AlgebraSpec::GroupCyclic { m, r } => {
                Ok(group_algebra_cyclic(*m, r.map_or(Scalar::new(1.0, 0.0), ScalarSpec::value))?.0)
            }
            AlgebraSpec::DirectSum { parts } => direct_sum(&parts.iter().map(AlgebraSpec::build).collect::<Result<Vec<_>>>()?),
            AlgebraSpec::Explicit { data } => algebra_from_json(data),
        }
    }

    /// The grading a cyclic group algebra comes with.
    pub fn natural_grading(&self) -> Result<Option<Grading>> {
        match self {
            AlgebraSpec::GroupCyclic { m, r } => {
                Ok(Some(group_algebra_cyclic(*m, r.map_or(Scalar::new(1.0, 0.0), ScalarSpec::value))?.1))
            }
            _ => Ok(None),
        }
    }
}

/// A requested validation flag: `true`/`"required"` or `false`/`"forbidden"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Want {
    Bool(bool),
    Word(WantWord),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WantWord {
    Required,
    Forbidden,
}

impl Want {
    pub fn expected(self) -> bool {
        matches!(self, Want::Bool(true) | Want::Word(WantWord::Required))
    }
}

/// How the crossing is chosen: `"canonical"`, `"bichar:<index or name>"`, or explicit data.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CrossingSpec {
    Named(String),
    Explicit(Value),
}

/// A model file: an algebra, optionally a standard grading, a crossing and flag requirements.
/// A bare algebra spec is accepted too.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub algebra: AlgebraSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<GradingKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub crossing: Option<CrossingSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub require: BTreeMap<String, Want>,
}

impl ModelSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text)?;
        if v.get("algebra").is_some() {
            Ok(serde_json::from_value(v)?)
        } else {
            Ok(ModelSpec { algebra: serde_json::from_value(v)?, grading: None, crossing: None, require: BTreeMap::new() })
        }
    }
}

/// An algebra together with the gradings and bicharacters available for named crossings.
#[derive(Clone, Debug)]
pub struct Model {
    pub algebra: AlgebraData,
    pub graded: Option<GradedAlgebra>,
}

impl Model {
    pub fn build(spec: &AlgebraSpec, grading: Option<&GradingKind>) -> Result<Self> {
        let alg = spec.build()?;
        if let Some(kind) = grading {
            let graded = standard_grading(&alg, kind)?;
            return Ok(Model { algebra: graded.algebra.clone(), graded: Some(graded) });
        }
        if let Some(g) = spec.natural_grading()? {
            let group = g.group.clone();
            let bicharacters = crate::solver::enumerate_bicharacters(&group);
            let algebra = alg.with_grading(g.clone())?;
            return Ok(Model { algebra: algebra.clone(), graded: Some(GradedAlgebra { algebra, grading: g, bicharacters }) });
        }
        Ok(Model { algebra: alg, graded: None })
    }

    /// Resolve `canonical`, `bichar:<k>` (index into the bicharacter list), `bichar:sign`
    /// (the ℤ₂ sign), `bichar:<αβγ>` with signs like `+-+` (Klein) or an explicit crossing.
    pub fn crossing(&self, spec: &CrossingSpec) -> Result<CrossingMap> {
        let name = match spec {
            CrossingSpec::Explicit(v) => return crossing_from_json(v),
            CrossingSpec::Named(s) => s.as_str(),
        };
        if name == "canonical" {
            return Ok(CrossingMap::canonical(self.algebra.dim()));
        }
        let Some(key) = name.strip_prefix("bichar:") else {
            return Err(Error::Invalid(format!("unknown crossing {name:?}")));
        };
        let graded = self.graded.as_ref().ok_or_else(|| Error::Invalid("bicharacter crossings need a grading".into()))?;
        let index = if let Ok(k) = key.parse::<usize>() {
            k
        } else if key == "sign" && graded.grading.group.orders == [2] {
            1
        } else if key.len() == 3 && key.chars().all(|c| c == '+' || c == '-') && graded.grading.group.orders == [2, 2] {
            let signs: Vec<i8> = key.chars().map(|c| if c == '+' { 1 } else { -1 }).collect();
            crate::constructors::klein_sign_triples()
                .iter()
                .position(|&(a, b, g)| [a, b, g] == signs[..])
                .expect("all sign triples are listed")
        } else {
            return Err(Error::Invalid(format!("unknown bicharacter {key:?}")));
        };
        let bichar = graded
            .bicharacters
            .get(index)
            .ok_or_else(|| Error::Invalid(format!("bicharacter {index} out of range ({} available)", graded.bicharacters.len())))?;
        CrossingMap::from_bicharacter(&graded.grading, bichar)
    }
}

/// Flags of a validation report by name, in a fixed order.
pub fn validation_flags(r: &ValidationReport) -> Vec<(&'static str, bool)> {
    vec![
        ("nondegenerate_B", r.nondegenerate_b),
        ("nondegenerate_C", r.nondegenerate_c),
        ("compatible", r.compatible),
        ("associative", r.associative),
        ("special", r.special),
        ("symmetric", r.symmetric),
        ("spherical", r.spherical),
        ("separable_witness_ok", r.separable_witness_ok),
    ]
}
