use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Triangles are edge-id triples. With `orient = +1` the edges are listed counterclockwise;
/// `-1` lists them clockwise. Edge k of a counterclockwise triple runs from corner k to
/// corner k+1. An edge id used by two triangles glues them, identifying the two traversals
/// in opposite directions, which keeps the orientation coherent. Edge ids used once are
/// boundary edges and must be listed, in order, in `boundary`.
///
/// The pairing B^{ab} on a glued edge takes `a` from the incidence that comes first in
/// (triangle, slot) order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TriangulationJson", into = "TriangulationJson")]
pub struct Triangulation {
    triangles: Vec<[usize; 3]>,
    orient: Vec<i8>,
    boundary: Vec<usize>,
    incidences: BTreeMap<usize, Vec<(usize, usize)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gluing {
    pub edge: usize,
    /// The two (triangle, slot) incidences, first one carrying the left index of B.
    pub incidences: [(usize, usize); 2],
}

#[derive(Serialize, Deserialize)]
struct TriangulationJson {
    triangles: Vec<[usize; 3]>,
    #[serde(default)]
    orient: Option<Vec<i8>>,
    #[serde(default)]
    gluings: Option<Vec<Gluing>>,
    #[serde(default)]
    boundary: Vec<usize>,
}

impl TryFrom<TriangulationJson> for Triangulation {
    type Error = Error;
    fn try_from(j: TriangulationJson) -> Result<Self> {
        let n = j.triangles.len();
        let t = Triangulation::new(j.triangles, j.orient.unwrap_or_else(|| vec![1; n]), j.boundary)?;
        if let Some(g) = j.gluings {
            if g != t.gluings() {
                return Err(Error::BadTriangulation("gluings disagree with the triangle list".into()));
            }
        }
        Ok(t)
    }
}

impl From<Triangulation> for TriangulationJson {
    fn from(t: Triangulation) -> Self {
        TriangulationJson {
            gluings: Some(t.gluings()),
            triangles: t.triangles,
            orient: Some(t.orient),
            boundary: t.boundary,
        }
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl Triangulation {
    pub fn new(triangles: Vec<[usize; 3]>, orient: Vec<i8>, boundary: Vec<usize>) -> Result<Self> {
        if triangles.is_empty() {
            return Err(Error::BadTriangulation("no triangles".into()));
        }
        if orient.len() != triangles.len() || orient.iter().any(|&o| o != 1 && o != -1) {
            return Err(Error::BadTriangulation("orient needs one ±1 per triangle".into()));
        }
        let mut t = Triangulation { triangles, orient, boundary, incidences: BTreeMap::new() };
        for i in 0..t.triangles.len() {
            for (k, e) in t.ccw(i).into_iter().enumerate() {
                t.incidences.entry(e).or_default().push((i, k));
            }
        }
        let mut open: Vec<usize> = Vec::new();
        for (&e, inc) in &t.incidences {
            match inc.len() {
                1 => open.push(e),
                2 => {}
                n => return Err(Error::BadTriangulation(format!("edge {e} has {n} incidences"))),
            }
        }
        let mut listed = t.boundary.clone();
        listed.sort_unstable();
        if listed != open {
            return Err(Error::BadTriangulation(format!(
                "boundary list {:?} does not match the unglued edges {open:?}",
                t.boundary
            )));
        }
        Ok(t)
    }

    fn closed(triangles: Vec<[usize; 3]>) -> Self {
        let n = triangles.len();
        Triangulation::new(triangles, vec![1; n], vec![]).expect("generated triangulation is valid")
    }

    /// Genus-g surface from the 4g-gon a₁b₁a₁⁻¹b₁⁻¹⋯, fanned from vertex 0. Genus 0 uses
    /// the square with word a b b⁻¹ a⁻¹.
    pub fn polygon(g: usize) -> Self {
        if g == 0 {
            return Self::sphere();
        }
        let n = 4 * g;
        let side = |k: usize| 2 * (k / 4) + (k % 4) % 2;
        let diag = |m: usize| 2 * g + m - 1;
        let triangles = (0..n - 2)
            .map(|k| {
                let left = if k == 0 { side(0) } else { diag(k) };
                let right = if k == n - 3 { side(n - 1) } else { diag(k + 1) };
                [left, side(k + 1), right]
            })
            .collect();
        Self::closed(triangles)
    }

    /// Two triangles glued along all three edges into a torus with one vertex.
    pub fn two_triangle_torus() -> Self {
        Self::closed(vec![[0, 1, 2], [0, 1, 2]])
    }

    /// A square with one diagonal, sides glued as E0↔E3 and E1↔E2.
    pub fn sphere() -> Self {
        Self::closed(vec![[0, 1, 2], [2, 1, 0]])
    }

    /// Three triangles around one interior vertex. Edge ids: a=0, b=1, c=2 on the boundary,
    /// interior edges d=3, e=4, f=5; triangles (e,d,c), (a,f,e), (f,b,d).
    pub fn disk() -> Self {
        Triangulation::new(vec![[4, 3, 2], [0, 5, 4], [5, 1, 3]], vec![1; 3], vec![0, 1, 2]).expect("valid disk")
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn orient(&self) -> &[i8] {
        &self.orient
    }

    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    /// Edges of triangle `t` in counterclockwise order.
    pub fn ccw(&self, t: usize) -> [usize; 3] {
        let [a, b, c] = self.triangles[t];
        if self.orient[t] == 1 {
            [a, b, c]
        } else {
            [c, b, a]
        }
    }

    pub fn num_triangles(&self) -> usize {
        self.triangles.len()
    }

    pub fn num_edges(&self) -> usize {
        self.incidences.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.incidences.keys().copied()
    }

    pub fn incidences(&self, e: usize) -> Option<&[(usize, usize)]> {
        self.incidences.get(&e).map(|v| v.as_slice())
    }

    pub fn gluings(&self) -> Vec<Gluing> {
        self.incidences
            .iter()
            .filter(|(_, inc)| inc.len() == 2)
            .map(|(&edge, inc)| Gluing { edge, incidences: [inc[0], inc[1]] })
            .collect()
    }

    pub fn interior_edges(&self) -> Vec<usize> {
        self.gluings().into_iter().map(|g| g.edge).collect()
    }

    /// Vertex classes of the corners `3t + k`, and whether each class touches the boundary.
    fn vertex_classes(&self) -> (Vec<usize>, Vec<bool>) {
        let n = 3 * self.triangles.len();
        let mut uf = UnionFind((0..n).collect());
        let corner = |t: usize, k: usize| 3 * t + k % 3;
        for inc in self.incidences.values() {
            if let [(t1, k1), (t2, k2)] = inc[..] {
                uf.union(corner(t1, k1), corner(t2, k2 + 1));
                uf.union(corner(t1, k1 + 1), corner(t2, k2));
            }
        }
        let mut roots: Vec<usize> = (0..n).map(|c| uf.find(c)).collect();
        let mut ids = BTreeMap::new();
        for r in roots.iter_mut() {
            let next = ids.len();
            *r = *ids.entry(*r).or_insert(next);
        }
        let mut on_boundary = vec![false; ids.len()];
        for &e in &self.boundary {
            let (t, k) = self.incidences[&e][0];
            on_boundary[roots[corner(t, k)]] = true;
            on_boundary[roots[corner(t, k + 1)]] = true;
        }
        (roots, on_boundary)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_classes().1.len()
    }

    pub fn interior_vertices(&self) -> usize {
        self.vertex_classes().1.iter().filter(|b| !**b).count()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.num_triangles() as i64
    }

    fn next_edge_id(&self) -> usize {
        self.incidences.keys().next_back().map_or(0, |e| e + 1)
    }

    fn rotated(&self, t: usize, slot: usize) -> [usize; 3] {
        let e = self.ccw(t);
        [e[slot], e[(slot + 1) % 3], e[(slot + 2) % 3]]
    }

    /// Flip interior edge `e` = AB shared by (e,x1,y1) and (e,x2,y2) to the other diagonal,
    /// giving (y2,x1,e) and (y1,x2,e). The new diagonal keeps the id `e`.
    pub fn pachner_22(&self, e: usize) -> Result<Self> {
        let inc = self.incidences.get(&e).ok_or(Error::UnknownEdge(e))?;
        let [(t1, k1), (t2, k2)] = match inc[..] {
            [a, b] => [a, b],
            _ => return Err(Error::BoundaryEdge(e)),
        };
        if t1 == t2 {
            return Err(Error::BadTriangulation(format!("edge {e} is glued to its own triangle")));
        }
        let [_, x1, y1] = self.rotated(t1, k1);
        let [_, x2, y2] = self.rotated(t2, k2);
        let mut triangles = self.triangles.clone();
        let mut orient = self.orient.clone();
        triangles[t1] = [y2, x1, e];
        triangles[t2] = [y1, x2, e];
        orient[t1] = 1;
        orient[t2] = 1;
        Triangulation::new(triangles, orient, self.boundary.clone())
    }

    /// Insert a vertex in triangle `t` = (x,y,z): (x,q,p), (y,s,q), (z,p,s).
    pub fn pachner_13(&self, t: usize) -> Result<Self> {
        if t >= self.triangles.len() {
            return Err(Error::UnknownTriangle(t));
        }
        let [x, y, z] = self.ccw(t);
        let n = self.next_edge_id();
        let (p, q, s) = (n, n + 1, n + 2);
        let mut triangles = self.triangles.clone();
        let mut orient = self.orient.clone();
        triangles[t] = [x, q, p];
        orient[t] = 1;
        triangles.push([y, s, q]);
        triangles.push([z, p, s]);
        orient.extend([1, 1]);
        Triangulation::new(triangles, orient, self.boundary.clone())
    }

    /// Apply `moves` random Pachner moves, 2-2 flips and 1-3 insertions with equal odds.
    /// Flips that would glue a triangle to itself are skipped in favour of another pick.
    pub fn random_moves<R: Rng>(&self, moves: usize, rng: &mut R) -> Self {
        let mut t = self.clone();
        let mut done = 0;
        while done < moves {
            let next = if rng.gen_bool(0.5) {
                let interior = t.interior_edges();
                if interior.is_empty() {
                    continue;
                }
                t.pachner_22(interior[rng.gen_range(0..interior.len())])
            } else {
                t.pachner_13(rng.gen_range(0..t.num_triangles()))
            };
            if let Ok(n) = next {
                t = n;
                done += 1;
            }
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn standard_surfaces_have_expected_cells() {
        let t = Triangulation::two_triangle_torus();
        assert_eq!((t.num_triangles(), t.num_edges(), t.num_vertices()), (2, 3, 1));
        let p1 = Triangulation::polygon(1);
        assert_eq!((p1.num_triangles(), p1.euler_characteristic()), (2, 0));
        let p2 = Triangulation::polygon(2);
        assert_eq!((p2.num_triangles(), p2.euler_characteristic()), (6, -2));
        assert_eq!(Triangulation::polygon(3).euler_characteristic(), -4);
        let s = Triangulation::sphere();
        assert_eq!((s.num_vertices(), s.euler_characteristic()), (3, 2));
        let d = Triangulation::disk();
        assert_eq!((d.euler_characteristic(), d.interior_vertices()), (1, 1));
    }

    #[test]
    fn moves_change_cells_as_expected() {
        let t = Triangulation::two_triangle_torus();
        let u = t.pachner_13(0).unwrap();
        assert_eq!((u.num_triangles(), u.num_vertices()), (4, 2));
        let f = t.pachner_22(0).unwrap();
        assert_eq!(f.euler_characteristic(), 0);
        assert_eq!(Triangulation::disk().pachner_22(0).unwrap_err(), Error::BoundaryEdge(0));
        assert_eq!(t.pachner_22(9).unwrap_err(), Error::UnknownEdge(9));
        assert_eq!(t.pachner_13(5).unwrap_err(), Error::UnknownTriangle(5));
    }

    #[test]
    fn random_moves_keep_euler_characteristic() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let t = Triangulation::two_triangle_torus().random_moves(10, &mut rng);
        assert_eq!(t.euler_characteristic(), 0);
        let d = Triangulation::disk().random_moves(10, &mut rng);
        assert_eq!(d.euler_characteristic(), 1);
        assert_eq!(d.boundary(), &[0, 1, 2]);
    }

    #[test]
    fn json_round_trip_checks_gluings() {
        let t = Triangulation::polygon(2);
        let s = serde_json::to_string(&t).unwrap();
        let back: Triangulation = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
        let bad = r#"{"triangles": [[0,1,2],[0,1,3]]}"#;
        assert!(serde_json::from_str::<Triangulation>(bad).is_err());
    }
}
