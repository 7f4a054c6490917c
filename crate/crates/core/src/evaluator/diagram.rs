//! Slice programs of string-diagram generators and their evaluation.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraData;
use crate::crossings::{curl_maps, CrossingMap};
use crate::error::{Error, Result};
use crate::sparse::{entries, SparseCross, SparseMult};
use crate::tensor::Tensor;
use crate::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gen {
    Id,
    /// 0 → 2, emits B.
    CupB,
    /// 2 → 0, applies B⁻¹.
    CapBinv,
    /// 2 → 1.
    Mult,
    /// 0 → 1.
    Unit,
    /// 1 → 0.
    Counit,
    /// 2 → 2, applies λ.
    Cross,
    /// 1 → 1, applies the right-handed curl φ.
    CurlR,
}

impl Gen {
    pub fn arity(self) -> (usize, usize) {
        match self {
            Gen::Id | Gen::CurlR => (1, 1),
            Gen::CupB => (0, 2),
            Gen::CapBinv => (2, 0),
            Gen::Mult => (2, 1),
            Gen::Unit => (0, 1),
            Gen::Counit => (1, 0),
            Gen::Cross => (2, 2),
        }
    }

    fn needs_crossing(self) -> bool {
        matches!(self, Gen::Cross | Gen::CurlR)
    }
}

/// A generator whose inputs start at strand `at` of the row's input. Zero-input generators
/// are inserted before strand `at` (or at the right end when `at` equals the width).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Placed {
    pub gen: Gen,
    pub at: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagram {
    /// Number of input strands of the first slice.
    #[serde(default)]
    pub inputs: usize,
    pub slices: Vec<Vec<Placed>>,
}

fn p(gen: Gen, at: usize) -> Placed {
    Placed { gen, at }
}

impl Diagram {
    pub fn new(inputs: usize) -> Self {
        Diagram { inputs, slices: Vec::new() }
    }

    pub fn then(mut self, row: &[(Gen, usize)]) -> Self {
        self.slices.push(row.iter().map(|&(g, at)| p(g, at)).collect());
        self
    }

    /// Output width of each slice, checking that every row fits its input.
    pub fn widths(&self) -> Result<Vec<usize>> {
        let mut w = self.inputs;
        let mut out = vec![w];
        for (k, row) in self.slices.iter().enumerate() {
            w = row_output_width(row, w).map_err(|m| Error::ArityMismatch(format!("slice {k}: {m}")))?;
            out.push(w);
        }
        Ok(out)
    }

    /// The handle element with the given number of curls on each of its two loops,
    /// as a 0 → 1 diagram.
    pub fn handle(curls_a: usize, curls_b: usize) -> Self {
        let mut d = Diagram::new(0).then(&[(Gen::CupB, 0), (Gen::CupB, 0)]);
        for _ in 0..curls_a {
            d = d.then(&[(Gen::CurlR, 0)]);
        }
        for _ in 0..curls_b {
            d = d.then(&[(Gen::CurlR, 2)]);
        }
        d.then(&[(Gen::Cross, 1)]).then(&[(Gen::Mult, 2)]).then(&[(Gen::Mult, 1)]).then(&[(Gen::Mult, 0)])
    }

    /// The closed genus-g surface diagram: a unit strand to which each handle is
    /// multiplied in turn, closed by the counit. `curls[i]` are the curl counts of handle i.
    pub fn surface(curls: &[(usize, usize)]) -> Self {
        let mut d = Diagram::new(0).then(&[(Gen::Unit, 0)]);
        for &(a, b) in curls {
            d = d.then(&[(Gen::CupB, 1), (Gen::CupB, 1)]);
            for _ in 0..a {
                d = d.then(&[(Gen::CurlR, 1)]);
            }
            for _ in 0..b {
                d = d.then(&[(Gen::CurlR, 3)]);
            }
            d = d
                .then(&[(Gen::Cross, 2)])
                .then(&[(Gen::Mult, 3)])
                .then(&[(Gen::Mult, 2)])
                .then(&[(Gen::Mult, 1)])
                .then(&[(Gen::Mult, 0)]);
        }
        d.then(&[(Gen::Counit, 0)])
    }

    /// The cylinder maps: p with no curl on the loop, n₁ with one, n₂ = φ∘n₁.
    pub fn cylinder(loop_curls: usize, curl_after: bool) -> Self {
        let mut d = Diagram::new(1).then(&[(Gen::CupB, 1)]);
        for _ in 0..loop_curls {
            d = d.then(&[(Gen::CurlR, 1)]);
        }
        d = d.then(&[(Gen::Cross, 0)]).then(&[(Gen::Mult, 0)]).then(&[(Gen::Mult, 0)]);
        if curl_after {
            d = d.then(&[(Gen::CurlR, 0)]);
        }
        d
    }
}

fn row_output_width(row: &[Placed], width: usize) -> std::result::Result<usize, String> {
    let mut next = 0;
    let mut out = width;
    for pl in row {
        let (i, o) = pl.gen.arity();
        if pl.at < next {
            return Err(format!("{:?} at {} overlaps an earlier generator", pl.gen, pl.at));
        }
        if pl.at + i > width {
            return Err(format!("{:?} at {} needs {} inputs but the width is {}", pl.gen, pl.at, i, width));
        }
        next = pl.at + i;
        out = out + o - i;
    }
    Ok(out)
}

/// One generator's action, indexed by its packed inputs.
struct Table {
    arity_in: usize,
    cols: Vec<Vec<(Vec<usize>, Scalar)>>,
}

struct Tables {
    d: usize,
    by_gen: HashMap<Gen, Table>,
}

impl Tables {
    fn new(alg: &AlgebraData, cr: Option<&CrossingMap>, gens: &[Gen]) -> Result<Self> {
        let d = alg.dim();
        let mut by_gen = HashMap::new();
        for &g in gens {
            if by_gen.contains_key(&g) {
                continue;
            }
            let table = match g {
                Gen::Id => Table { arity_in: 1, cols: (0..d).map(|a| vec![(vec![a], Scalar::new(1.0, 0.0))]).collect() },
                Gen::CupB => Table {
                    arity_in: 0,
                    cols: vec![entries(alg.b()).into_iter().map(|(a, b, v)| (vec![a, b], v)).collect()],
                },
                Gen::CapBinv => Table {
                    arity_in: 2,
                    cols: alg.binv().data().iter().map(|&v| if v.norm() != 0.0 { vec![(vec![], v)] } else { vec![] }).collect(),
                },
                Gen::Mult => Table {
                    arity_in: 2,
                    cols: SparseMult::new(alg).cols.into_iter().map(|c| c.into_iter().map(|(k, v)| (vec![k], v)).collect()).collect(),
                },
                Gen::Unit => Table {
                    arity_in: 0,
                    cols: vec![alg.unit().iter().enumerate().filter(|(_, v)| v.norm() != 0.0).map(|(k, &v)| (vec![k], v)).collect()],
                },
                Gen::Counit => Table {
                    arity_in: 1,
                    cols: alg.counit().iter().map(|&v| if v.norm() != 0.0 { vec![(vec![], v)] } else { vec![] }).collect(),
                },
                Gen::Cross | Gen::CurlR => {
                    let cr = cr.ok_or_else(|| Error::Invalid(format!("{g:?} needs a crossing map")))?;
                    if cr.dim() != d {
                        return Err(Error::DimensionMismatch { expected: d, got: cr.dim() });
                    }
                    if g == Gen::Cross {
                        let sc = SparseCross::new(cr.tensor());
                        Table { arity_in: 2, cols: sc.cols.into_iter().map(|c| c.into_iter().map(|(o, p, v)| (vec![o, p], v)).collect()).collect() }
                    } else {
                        let phi = curl_maps(alg, cr).0;
                        let cols = (0..d)
                            .map(|a| (0..d).filter_map(|o| {
                                let v = phi.get(&[o, a]);
                                (v.norm() != 0.0).then(|| (vec![o], v))
                            }).collect())
                            .collect();
                        Table { arity_in: 1, cols }
                    }
                }
            };
            by_gen.insert(g, table);
        }
        Ok(Tables { d, by_gen })
    }

    fn col(&self, g: Gen, inputs: &[usize]) -> &[(Vec<usize>, Scalar)] {
        let t = &self.by_gen[&g];
        let idx = inputs.iter().fold(0, |acc, &i| acc * self.d + i);
        debug_assert_eq!(inputs.len(), t.arity_in);
        &t.cols[idx]
    }
}

type State = HashMap<Vec<usize>, Scalar>;

fn apply_row(tables: &Tables, row: &[Placed], width: usize, state: &State) -> State {
    let mut out = State::with_capacity(state.len());
    // The row as a sequence of (generator, input range), identities filling the gaps.
    let mut items: Vec<(Gen, usize)> = Vec::new();
    let mut pos = 0;
    for pl in row {
        while pos < pl.at {
            items.push((Gen::Id, pos));
            pos += 1;
        }
        items.push((pl.gen, pl.at));
        pos = pl.at + pl.gen.arity().0;
    }
    while pos < width {
        items.push((Gen::Id, pos));
        pos += 1;
    }
    for (key, &val) in state {
        let mut partial: Vec<(Vec<usize>, Scalar)> = vec![(Vec::with_capacity(key.len() + 2), val)];
        for &(g, at) in &items {
            let n = g.arity().0;
            let col = tables.col(g, &key[at..at + n]);
            let mut next = Vec::with_capacity(partial.len() * col.len().max(1));
            for (prefix, v) in &partial {
                for (outs, w) in col {
                    let mut k = prefix.clone();
                    k.extend_from_slice(outs);
                    next.push((k, v * w));
                }
            }
            partial = next;
            if partial.is_empty() {
                break;
            }
        }
        for (k, v) in partial {
            *out.entry(k).or_default() += v;
        }
    }
    out
}

/// Evaluate a diagram to the tensor of its linear map, axes (outputs…, inputs…).
/// No powers of R are attached.
pub fn eval_diagram(alg: &AlgebraData, cr: Option<&CrossingMap>, diagram: &Diagram) -> Result<Tensor> {
    let widths = diagram.widths()?;
    let d = alg.dim();
    let gens: Vec<Gen> = std::iter::once(Gen::Id).chain(diagram.slices.iter().flatten().map(|p| p.gen)).collect();
    if cr.is_none() {
        if let Some(g) = gens.iter().find(|g| g.needs_crossing()) {
            return Err(Error::Invalid(format!("{g:?} needs a crossing map")));
        }
    }
    let tables = Tables::new(alg, cr, &gens)?;
    let n_in = diagram.inputs;
    let n_out = *widths.last().unwrap();
    let mut result = Tensor::zeros(&vec![d; n_out + n_in]);
    let columns = d.pow(n_in as u32);
    for col in 0..columns {
        let mut input = vec![0; n_in];
        let mut rest = col;
        for k in (0..n_in).rev() {
            input[k] = rest % d;
            rest /= d;
        }
        let mut state: State = [(input.clone(), Scalar::new(1.0, 0.0))].into_iter().collect();
        for (row, &w) in diagram.slices.iter().zip(&widths) {
            state = apply_row(&tables, row, w, &state);
        }
        for (k, v) in state {
            let mut idx = k;
            idx.extend_from_slice(&input);
            let cur = result.get(&idx);
            result.set(&idx, cur + v);
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{matrix_algebra, Ring, Weight};

    #[test]
    fn snake_is_identity() {
        let alg = matrix_algebra(3, Ring::C, &Weight::Signature { p: 2, q: 1 }, None).unwrap();
        let d = Diagram::new(1).then(&[(Gen::CupB, 1)]).then(&[(Gen::CapBinv, 0)]);
        let t = eval_diagram(&alg, None, &d).unwrap();
        assert!(t.max_abs_diff(&Tensor::identity(9)) < 1e-12);
    }

    #[test]
    fn unit_then_counit() {
        let alg = matrix_algebra(2, Ring::R, &Weight::Fhk, Some(Scalar::new(0.5, 0.0))).unwrap();
        let d = Diagram::new(0).then(&[(Gen::Unit, 0)]).then(&[(Gen::Counit, 0)]);
        let t = eval_diagram(&alg, None, &d).unwrap();
        assert!((t.data()[0] - alg.frobenius_form(alg.unit()).unwrap()).norm() < 1e-12);
    }

    #[test]
    fn double_crossing_is_identity() {
        let alg = matrix_algebra(1, Ring::HR, &Weight::Fhk, None).unwrap();
        let cr = CrossingMap::canonical(4);
        let d = Diagram::new(2).then(&[(Gen::Cross, 0)]).then(&[(Gen::Cross, 0)]);
        let t = eval_diagram(&alg, Some(&cr), &d).unwrap();
        let id = Tensor::identity(16).reshape(&[4, 4, 4, 4]);
        assert!(t.max_abs_diff(&id) < 1e-12);
    }

    #[test]
    fn arity_errors() {
        let alg = matrix_algebra(1, Ring::C, &Weight::Fhk, None).unwrap();
        let d = Diagram::new(1).then(&[(Gen::Mult, 0)]);
        assert!(matches!(eval_diagram(&alg, None, &d).unwrap_err(), Error::ArityMismatch(_)));
        let d = Diagram::new(0).then(&[(Gen::Cross, 0)]);
        assert!(eval_diagram(&alg, None, &d).is_err());
    }
}
