//! Sparse tensor networks and the naive state sum over a triangulation.

use std::collections::HashMap;

use crate::algebra::AlgebraData;
use crate::error::{Error, Result};
use crate::surfaces::Triangulation;
use crate::tensor::Tensor;
use crate::Scalar;

/// Sparse tensor whose axes carry bond labels; keys pack indices in base `d`.
#[derive(Clone, Debug)]
struct Node {
    legs: Vec<usize>,
    entries: HashMap<u128, Scalar>,
}

fn pack(idx: impl Iterator<Item = usize>, d: usize) -> u128 {
    idx.fold(0u128, |acc, i| acc * d as u128 + i as u128)
}

fn unpack(mut key: u128, rank: usize, d: usize) -> Vec<usize> {
    let mut out = vec![0; rank];
    for k in (0..rank).rev() {
        out[k] = (key % d as u128) as usize;
        key /= d as u128;
    }
    out
}

impl Node {
    fn from_dense(t: &Tensor, legs: Vec<usize>) -> Self {
        let entries = t
            .data()
            .iter()
            .enumerate()
            .filter(|(_, v)| v.re != 0.0 || v.im != 0.0)
            .map(|(i, v)| (i as u128, *v))
            .collect();
        Node { legs, entries }
    }

    fn shared(&self, other: &Node) -> Vec<usize> {
        self.legs.iter().copied().filter(|l| other.legs.contains(l)).collect()
    }

    fn contract(&self, other: &Node, d: usize) -> Node {
        let shared = self.shared(other);
        let pos = |legs: &[usize], l: usize| legs.iter().position(|&x| x == l).unwrap();
        let sa: Vec<usize> = shared.iter().map(|&l| pos(&self.legs, l)).collect();
        let sb: Vec<usize> = shared.iter().map(|&l| pos(&other.legs, l)).collect();
        let fa: Vec<usize> = (0..self.legs.len()).filter(|i| !sa.contains(i)).collect();
        let fb: Vec<usize> = (0..other.legs.len()).filter(|i| !sb.contains(i)).collect();
        let mut by_shared: HashMap<u128, Vec<(u128, Scalar)>> = HashMap::new();
        for (&k, &v) in &other.entries {
            let idx = unpack(k, other.legs.len(), d);
            let s = pack(sb.iter().map(|&i| idx[i]), d);
            let f = pack(fb.iter().map(|&i| idx[i]), d);
            by_shared.entry(s).or_default().push((f, v));
        }
        let scale_b = (d as u128).pow(fb.len() as u32);
        let mut entries: HashMap<u128, Scalar> = HashMap::new();
        for (&k, &v) in &self.entries {
            let idx = unpack(k, self.legs.len(), d);
            let s = pack(sa.iter().map(|&i| idx[i]), d);
            if let Some(list) = by_shared.get(&s) {
                let f = pack(fa.iter().map(|&i| idx[i]), d) * scale_b;
                for &(fbk, w) in list {
                    *entries.entry(f + fbk).or_default() += v * w;
                }
            }
        }
        let legs = fa.iter().map(|&i| self.legs[i]).chain(fb.iter().map(|&i| other.legs[i])).collect();
        Node { legs, entries }
    }
}

/// Contract all nodes. Greedy: always merge the connected pair whose result has the
/// fewest legs, breaking ties by the product of stored entries, then by position.
fn contract_all(mut nodes: Vec<Node>, d: usize) -> Node {
    while nodes.len() > 1 {
        let mut best: Option<(usize, usize, (usize, usize))> = None;
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                let s = nodes[i].shared(&nodes[j]).len();
                if s == 0 {
                    continue;
                }
                let rank = nodes[i].legs.len() + nodes[j].legs.len() - 2 * s;
                let work = nodes[i].entries.len().saturating_mul(nodes[j].entries.len());
                let score = (rank, work);
                if best.is_none_or(|(_, _, b)| score < b) {
                    best = Some((i, j, score));
                }
            }
        }
        // Disconnected pieces: take an outer product of the first two.
        let (i, j) = best.map_or((0, 1), |(i, j, _)| (i, j));
        let b = nodes.remove(j);
        let a = nodes.remove(i);
        nodes.insert(i, a.contract(&b, d));
    }
    nodes.pop().expect("nonempty network")
}

/// R^V Σ Π_t C Π_e B over the triangulation, V the number of interior vertices.
///
/// With `boundary_states` the boundary edges are fixed to those basis states (in the order
/// of [`Triangulation::boundary`]) and a scalar is returned; without them the result has
/// one axis per boundary edge.
pub fn naive_partition(alg: &AlgebraData, tri: &Triangulation, boundary_states: Option<&[usize]>) -> Result<Tensor> {
    let d = alg.dim();
    let nb = tri.boundary().len();
    if let Some(states) = boundary_states {
        if states.len() != nb {
            return Err(Error::LengthMismatch { expected: nb, got: states.len() });
        }
        if let Some(&s) = states.iter().find(|&&s| s >= d) {
            return Err(Error::StateOutOfRange { state: s, dim: d });
        }
    }
    let bond = |t: usize, k: usize| 3 * t + k;
    let mut nodes = Vec::new();
    for t in 0..tri.num_triangles() {
        nodes.push(Node::from_dense(alg.c(), (0..3).map(|k| bond(t, k)).collect()));
    }
    for g in tri.gluings() {
        let [(t1, k1), (t2, k2)] = g.incidences;
        nodes.push(Node::from_dense(alg.b(), vec![bond(t1, k1), bond(t2, k2)]));
    }
    // Boundary legs: either pinned by a one-hot node or left open.
    let open: Vec<usize> = tri
        .boundary()
        .iter()
        .map(|&e| {
            let (t, k) = tri.incidences(e).expect("boundary edge is present")[0];
            bond(t, k)
        })
        .collect();
    if let Some(states) = boundary_states {
        for (&leg, &s) in open.iter().zip(states) {
            let entries = [(s as u128, Scalar::new(1.0, 0.0))].into_iter().collect();
            nodes.push(Node { legs: vec![leg], entries });
        }
    }
    let total = contract_all(nodes, d);
    let rv = alg.r().powu(tri.interior_vertices() as u32);
    if boundary_states.is_some() || nb == 0 {
        let z = total.entries.values().copied().sum::<Scalar>();
        return Ok(Tensor::scalar(z * rv));
    }
    let perm: Vec<usize> = open.iter().map(|l| total.legs.iter().position(|x| x == l).unwrap()).collect();
    let shape = vec![d; nb];
    let mut out = Tensor::zeros(&shape);
    for (&k, &v) in &total.entries {
        let idx = unpack(k, total.legs.len(), d);
        let target: Vec<usize> = perm.iter().map(|&p| idx[p]).collect();
        out.set(&target, v * rv);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{matrix_algebra, Ring, Weight};
    use crate::tensor::einsum;

    fn c(x: f64) -> Scalar {
        Scalar::new(x, 0.0)
    }

    #[test]
    fn disk_amplitude_matches_direct_sum() {
        let alg = matrix_algebra(2, Ring::C, &Weight::Fhk, Some(c(0.5))).unwrap();
        let z = naive_partition(&alg, &Triangulation::disk(), None).unwrap();
        let (cc, b) = (alg.c(), alg.b());
        // R C_{e'dc} C_{af'e} C_{fbd'} B^{dd'} B^{ee'} B^{ff'} with boundary (a, b, c).
        let direct = einsum("xdc,aFe,fby,dy,ex,fF->abc", &[cc, cc, cc, b, b, b]).scale(alg.r());
        assert!(z.max_abs_diff(&direct) < 1e-12);
        let pinned = naive_partition(&alg, &Triangulation::disk(), Some(&[1, 2, 0])).unwrap();
        assert!((pinned.data()[0] - direct.get(&[1, 2, 0])).norm() < 1e-12);
    }

    #[test]
    fn sphere_and_torus_values() {
        let r = c(0.5);
        let alg = matrix_algebra(2, Ring::C, &Weight::Fhk, Some(r)).unwrap();
        let s = naive_partition(&alg, &Triangulation::sphere(), None).unwrap().data()[0];
        assert!((s - r * alg.frobenius_form(alg.unit()).unwrap()).norm() < 1e-12);
        let t = naive_partition(&alg, &Triangulation::two_triangle_torus(), None).unwrap().data()[0];
        assert!((t - c(1.0)).norm() < 1e-12);
    }

    #[test]
    fn bad_boundary_states() {
        let alg = matrix_algebra(1, Ring::C, &Weight::Fhk, None).unwrap();
        let err = naive_partition(&alg, &Triangulation::disk(), Some(&[0, 1, 0])).unwrap_err();
        assert_eq!(err, Error::StateOutOfRange { state: 1, dim: 1 });
    }
}
