//! Bicharacter enumeration and a multi-start numerical solver for the crossing axioms on
//! small algebras.
//!
//! The linear axioms (compatibility with B, the ribbon condition and the unit conditions
//! λ(1⊗a) = a⊗1, λ(a⊗1) = 1⊗a) are solved exactly first; the remaining quadratic axioms
//! (compatibility with C in both forms, Reidemeister II) are solved over the resulting affine
//! subspace by damped Gauss–Newton from random starts. Reidemeister III is not imposed during
//! the search; every candidate is re-verified against all five axioms at the end.

use nalgebra::{ComplexField, DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{is_commutative, AlgebraData};
use crate::constructors::{AbelianGroup, Bicharacter};
use crate::crossings::{check_axioms, CrossingMap};
use crate::error::{Error, Result};
use crate::evaluator::SpinModel;
use crate::tensor::Tensor;
use crate::Scalar;

/// Environment variable capping the number of solver worker threads.
pub const THREADS_ENV: &str = "SPIN_TQFT_THREADS";

/// exp(2πi k/n), exact at multiples of quarter turns.
fn root_of_unity(k: usize, n: usize) -> Scalar {
    let k = k % n;
    if (4 * k).is_multiple_of(n) {
        return match 4 * k / n {
            0 => Scalar::new(1.0, 0.0),
            1 => Scalar::new(0.0, 1.0),
            2 => Scalar::new(-1.0, 0.0),
            _ => Scalar::new(0.0, -1.0),
        };
    }
    Scalar::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Every bicharacter of the group, in lexicographic order of the generator data.
///
/// A bicharacter is fixed by its values on pairs of cyclic generators: λ̃(g_i, g_j) for
/// i < j is any gcd(n_i, n_j)-th root of unity (and λ̃(g_j, g_i) its inverse), while
/// λ̃(g_i, g_i) squares to one, so it is ±1 for even n_i and 1 otherwise.
pub fn enumerate_bicharacters(group: &AbelianGroup) -> Vec<Bicharacter> {
    let r = group.orders.len();
    // Each free parameter: (i, j, modulus) with value exp(2πi k/modulus).
    let mut params = Vec::new();
    for i in 0..r {
        for j in i..r {
            let m = if i == j { gcd(group.orders[i], 2) } else { gcd(group.orders[i], group.orders[j]) };
            params.push((i, j, m));
        }
    }
    let total: usize = params.iter().map(|p| p.2).product();
    let n = group.order();
    let mut out = Vec::with_capacity(total);
    for code in 0..total {
        // Mixed radix decode, first parameter most significant.
        let mut ks = vec![0; params.len()];
        let mut rest = code;
        for (slot, p) in params.iter().enumerate().rev() {
            ks[slot] = rest % p.2;
            rest /= p.2;
        }
        // Exponents of λ̃(g_i, g_j) as fractions e/order(G) of a full turn.
        let mut gen = vec![vec![0usize; r]; r];
        for (&(i, j, m), &k) in params.iter().zip(&ks) {
            let e = k * n / m;
            gen[i][j] = e;
            if i != j {
                gen[j][i] = (n - e) % n;
            }
        }
        let table = (0..n)
            .map(|h| {
                let hd = group.digits(h);
                (0..n)
                    .map(|j| {
                        let jd = group.digits(j);
                        let mut e = 0usize;
                        for a in 0..r {
                            for b in 0..r {
                                e = (e + hd[a] * jd[b] * gen[a][b]) % n;
                            }
                        }
                        root_of_unity(e, n)
                    })
                    .collect()
            })
            .collect();
        out.push(Bicharacter { group: group.clone(), table });
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Field {
    /// Crossings with real entries in the given basis.
    Real,
    Complex,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveOptions {
    pub tol: f64,
    pub max_solutions: usize,
    pub starts: usize,
    pub dedup_radius: f64,
    pub seed: u64,
    pub field: Field,
    /// Standard deviation of the random starting coordinates.
    pub scale: f64,
    pub max_iterations: usize,
    /// Worker threads; `None` reads the environment cap, else uses all cores.
    pub threads: Option<usize>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            tol: 1e-9,
            max_solutions: 64,
            starts: 400,
            dedup_radius: 1e-5,
            seed: 0,
            field: Field::Real,
            scale: 1.0,
            max_iterations: 200,
            threads: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub solutions: Vec<CrossingMap>,
    pub seed: u64,
    pub starts: usize,
    /// Starts whose search converged to some solution.
    pub converged: usize,
    /// Index of the start that produced the last new solution.
    pub last_new_start: Option<usize>,
    /// Dimension of the affine space cut out by the linear axioms.
    pub free_parameters: usize,
    /// False when `max_solutions` was reached before all starts ran.
    pub complete: bool,
}

impl SolveResult {
    pub fn count(&self) -> usize {
        self.solutions.len()
    }

    pub fn require_complete(self) -> Result<Self> {
        if self.complete {
            Ok(self)
        } else {
            Err(Error::BudgetExhausted { found: self.solutions.len() })
        }
    }
}

fn one() -> Scalar {
    Scalar::new(1.0, 0.0)
}

/// Affine system `rows · L = rhs` of the linear axioms.
fn linear_system(alg: &AlgebraData) -> (Vec<Vec<(usize, Scalar)>>, Vec<Scalar>) {
    let d = alg.dim();
    let idx = |o: usize, p: usize, j: usize, l: usize| ((o * d + p) * d + j) * d + l;
    let (b, bi, u) = (alg.b(), alg.binv(), alg.unit());
    let bb = |i: usize, j: usize| b.get(&[i, j]);
    let bv = |i: usize, j: usize| bi.get(&[i, j]);
    let nz = |v: Scalar| v.norm() != 0.0;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let zero = Scalar::new(0.0, 0.0);
    let mut push = |row: Vec<(usize, Scalar)>, v: Scalar| {
        if !row.is_empty() || nz(v) {
            rows.push(row);
            rhs.push(v);
        }
    };
    // Axiom 1: B_io λ^{ox}_{jk} = λ^{xp}_{ij} B_pk.
    for x in 0..d {
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let mut row = Vec::new();
                    for o in 0..d {
                        if nz(bv(i, o)) {
                            row.push((idx(o, x, j, k), bv(i, o)));
                        }
                    }
                    for p in 0..d {
                        if nz(bv(p, k)) {
                            row.push((idx(x, p, i, j), -bv(p, k)));
                        }
                    }
                    push(row, zero);
                }
            }
        }
    }
    // Axiom 1 rotated: λ^{x1 x2}_{a y} B^{y x3} = B^{x1 z} λ^{x2 x3}_{z a}.
    for x1 in 0..d {
        for x2 in 0..d {
            for x3 in 0..d {
                for a in 0..d {
                    let mut row = Vec::new();
                    for y in 0..d {
                        if nz(bb(y, x3)) {
                            row.push((idx(x1, x2, a, y), bb(y, x3)));
                        }
                    }
                    for z in 0..d {
                        if nz(bb(x1, z)) {
                            row.push((idx(x2, x3, z, a), -bb(x1, z)));
                        }
                    }
                    push(row, zero);
                }
            }
        }
    }
    // Ribbon: φ_R = φ_L.
    for o in 0..d {
        for a in 0..d {
            let mut row = Vec::new();
            for y in 0..d {
                for z in 0..d {
                    let byz = bb(y, z);
                    if !nz(byz) {
                        continue;
                    }
                    for p in 0..d {
                        if nz(bv(p, z)) {
                            row.push((idx(o, p, a, y), byz * bv(p, z)));
                        }
                        if nz(bv(y, p)) {
                            row.push((idx(p, o, z, a), -byz * bv(y, p)));
                        }
                    }
                }
            }
            push(row, zero);
        }
    }
    // Unit: λ(1⊗e_j) = e_j⊗1 and λ(e_j⊗1) = 1⊗e_j.
    for o in 0..d {
        for p in 0..d {
            for j in 0..d {
                let left = (0..d).filter(|&i| nz(u[i])).map(|i| (idx(o, p, i, j), u[i])).collect();
                push(left, if o == j { u[p] } else { zero });
                let right = (0..d).filter(|&i| nz(u[i])).map(|i| (idx(o, p, j, i), u[i])).collect();
                push(right, if p == j { u[o] } else { zero });
            }
        }
    }
    (rows, rhs)
}

/// Least-squares particular solution and an orthonormal null-space basis (as columns).
fn affine_solution<T: ComplexField<RealField = f64> + Copy>(
    a: DMatrix<T>,
    rhs: DVector<T>,
    tol: f64,
) -> Result<(DVector<T>, DMatrix<T>)> {
    let n = a.ncols();
    let svd = a.svd(true, true);
    let top = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let cut = tol * top.max(1.0);
    let x0 = svd.solve(&rhs, cut).map_err(|e| Error::Invalid(e.to_string()))?;
    let vt = svd.v_t.as_ref().expect("requested V");
    let mut sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    sv.resize(vt.nrows(), 0.0);
    let null: Vec<usize> = (0..vt.nrows()).filter(|&r| sv[r] <= cut).collect();
    let mut basis = DMatrix::zeros(n, null.len());
    for (c, &r) in null.iter().enumerate() {
        for k in 0..n {
            basis[(k, c)] = vt[(r, k)].conjugate();
        }
    }
    Ok((x0, basis))
}

/// The quadratic axioms as F(L) = lin(L) − Q(L, L) − const.
struct Quadratic {
    d: usize,
    /// m[a*d+b] = [(c, v)]
    m: Vec<Vec<(usize, Scalar)>>,
}

impl Quadratic {
    fn new(alg: &AlgebraData) -> Self {
        let d = alg.dim();
        let mult = alg.mult();
        let m = (0..d * d)
            .map(|ab| {
                (0..d)
                    .filter_map(|c| {
                        let v = mult.get(&[ab / d, ab % d, c]);
                        (v.norm() != 0.0).then_some((c, v))
                    })
                    .collect()
            })
            .collect();
        Quadratic { d, m }
    }

    fn len(&self) -> usize {
        let d = self.d;
        2 * d.pow(5) + d.pow(4)
    }

    /// Writes lin(L1) − Q(L1, L2) − Q(L2, L1) when `derivative`, else lin(L1) − Q(L1, L1) − const.
    fn eval(&self, l1: &[Scalar], l2: &[Scalar], derivative: bool, out: &mut [Scalar]) {
        let d = self.d;
        let d2 = d * d;
        let d4 = d2 * d2;
        let d5 = d4 * d;
        let at = |l: &[Scalar], o: usize, p: usize, j: usize, k: usize| l[((o * d + p) * d + j) * d + k];
        out.iter_mut().for_each(|x| *x = Scalar::new(0.0, 0.0));
        let (a2, rest) = out.split_at_mut(d5);
        let (a2b, r2) = rest.split_at_mut(d5);
        let e5 = |o: usize, p: usize, i: usize, j: usize, k: usize| (((o * d + p) * d + i) * d + j) * d + k;
        // Linear parts: λ(m(i⊗j)⊗k) and λ(i⊗m(j⊗k)).
        for i in 0..d {
            for j in 0..d {
                for &(c, v) in &self.m[i * d + j] {
                    for o in 0..d {
                        for p in 0..d {
                            for k in 0..d {
                                a2[e5(o, p, i, j, k)] += v * at(l1, o, p, c, k);
                            }
                        }
                    }
                }
            }
        }
        for j in 0..d {
            for k in 0..d {
                for &(c, v) in &self.m[j * d + k] {
                    for o in 0..d {
                        for p in 0..d {
                            for i in 0..d {
                                a2b[e5(o, p, i, j, k)] += v * at(l1, o, p, i, c);
                            }
                        }
                    }
                }
            }
        }
        let pairs: Vec<(&[Scalar], &[Scalar], Scalar)> = if derivative {
            vec![(l1, l2, -one()), (l2, l1, -one())]
        } else {
            vec![(l1, l1, -one())]
        };
        let mut t = vec![Scalar::new(0.0, 0.0); d4 * d2];
        for &(x, y, s) in &pairs {
            // (id⊗m)(λ⊗id)(i⊗λ(j⊗k)): T[c,dd,i,b,j,k] = Σ_a y[c,dd,i,a] x[a,b,j,k].
            t.iter_mut().for_each(|v| *v = Scalar::new(0.0, 0.0));
            for c in 0..d {
                for dd in 0..d {
                    for i in 0..d {
                        for a in 0..d {
                            let ya = at(y, c, dd, i, a);
                            if ya.norm() == 0.0 {
                                continue;
                            }
                            for b in 0..d {
                                for jk in 0..d2 {
                                    t[(((c * d + dd) * d + i) * d + b) * d2 + jk] += ya * x[((a * d + b) * d2) + jk];
                                }
                            }
                        }
                    }
                }
            }
            for c in 0..d {
                for dd in 0..d {
                    for b in 0..d {
                        for &(f, v) in &self.m[dd * d + b] {
                            let w = s * v;
                            for i in 0..d {
                                let src = (((c * d + dd) * d + i) * d + b) * d2;
                                let dst = e5(c, f, i, 0, 0);
                                for jk in 0..d2 {
                                    a2[dst + jk] += w * t[src + jk];
                                }
                            }
                        }
                    }
                }
            }
            // (m⊗id)(id⊗λ)(λ(i⊗j)⊗k): U[a,b,i,j] x, then y[c,dd,b,k], then m(a,c)=f.
            for i in 0..d {
                for j in 0..d {
                    for a in 0..d {
                        for b in 0..d {
                            let xa = at(x, a, b, i, j);
                            if xa.norm() == 0.0 {
                                continue;
                            }
                            for c in 0..d {
                                for &(f, v) in &self.m[a * d + c] {
                                    let w = s * v * xa;
                                    for dd in 0..d {
                                        for k in 0..d {
                                            a2b[e5(f, dd, i, j, k)] += w * at(y, c, dd, b, k);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
            // Reidemeister II: Σ λ^{op}_{xy} λ^{xy}_{jl}, with the sign flipped back.
            for op in 0..d2 {
                for xy in 0..d2 {
                    let xv = x[op * d2 + xy];
                    if xv.norm() == 0.0 {
                        continue;
                    }
                    for jl in 0..d2 {
                        r2[op * d2 + jl] -= s * xv * y[xy * d2 + jl];
                    }
                }
            }
        }
        if !derivative {
            for k in 0..d2 {
                r2[k * d2 + k] -= one();
            }
        }
    }
}

struct Problem {
    x0: Vec<Scalar>,
    /// Null-space basis, column-major: basis[c] is a full tensor.
    basis: Vec<Vec<Scalar>>,
    quad: Quadratic,
    real: bool,
}

impl Problem {
    fn tensor(&self, t: &[Scalar]) -> Vec<Scalar> {
        let mut l = self.x0.clone();
        for (c, &tc) in t.iter().enumerate() {
            if tc.norm() == 0.0 {
                continue;
            }
            for (li, &bi) in l.iter_mut().zip(&self.basis[c]) {
                *li += tc * bi;
            }
        }
        l
    }

    fn residual(&self, l: &[Scalar]) -> Vec<Scalar> {
        let mut f = vec![Scalar::new(0.0, 0.0); self.quad.len()];
        self.quad.eval(l, l, false, &mut f);
        f
    }

    fn jacobian(&self, l: &[Scalar]) -> DMatrix<Scalar> {
        let m = self.quad.len();
        let k = self.basis.len();
        let mut j = DMatrix::zeros(m, k);
        let mut col = vec![Scalar::new(0.0, 0.0); m];
        for c in 0..k {
            self.quad.eval(&self.basis[c], l, true, &mut col);
            j.column_mut(c).copy_from_slice(&col);
        }
        j
    }

    /// Damped Gauss–Newton from `t`. Returns the tensor when the residual vanishes.
    fn search(&self, mut t: Vec<Scalar>, max_iter: usize) -> Option<Vec<Scalar>> {
        let norm = |f: &[Scalar]| f.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        let mut l = self.tensor(&t);
        let mut f = self.residual(&l);
        let mut fn0 = norm(&f);
        let mut mu = 1e-3;
        let mut history = Vec::with_capacity(max_iter);
        for it in 0..max_iter {
            if fn0 < 1e-13 {
                break;
            }
            // Give up on starts that have stalled far from a root.
            if it >= 20 && fn0 > 1e-6 && fn0 > 0.99 * history[it - 10] {
                break;
            }
            history.push(fn0);
            let j = self.jacobian(&l);
            let jh = j.adjoint();
            let g = &jh * DVector::from_column_slice(&f);
            let h = &jh * &j;
            let mut improved = false;
            for _ in 0..12 {
                let mut hm = h.clone();
                for i in 0..hm.nrows() {
                    let hii = hm[(i, i)];
                    hm[(i, i)] = hii + Scalar::new(mu * (1.0 + hii.re), 0.0);
                }
                let Some(step) = hm.lu().solve(&g) else {
                    mu *= 10.0;
                    continue;
                };
                let trial: Vec<Scalar> = t
                    .iter()
                    .zip(step.iter())
                    .map(|(a, s)| {
                        let v = a - s;
                        if self.real {
                            Scalar::new(v.re, 0.0)
                        } else {
                            v
                        }
                    })
                    .collect();
                let lt = self.tensor(&trial);
                let ft = self.residual(&lt);
                let nt = norm(&ft);
                if nt.is_finite() && nt < fn0 {
                    t = trial;
                    l = lt;
                    f = ft;
                    fn0 = nt;
                    mu = (mu / 3.0).max(1e-15);
                    improved = true;
                    break;
                }
                mu *= 4.0;
            }
            if !improved || fn0 > 1e8 {
                break;
            }
        }
        (fn0 < 1e-10).then_some(l)
    }
}

fn worker_count(opts: &SolveOptions) -> usize {
    let env = std::env::var(THREADS_ENV).ok().and_then(|s| s.parse::<usize>().ok()).filter(|&n| n > 0);
    let cores = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    opts.threads.or(env).unwrap_or(cores).max(1)
}

/// Lexicographic key on entries rounded to the dedup scale, for a stable output order.
fn sort_key(l: &Tensor, radius: f64) -> Vec<i64> {
    l.data().iter().flat_map(|v| [(v.re / radius).round() as i64, (v.im / radius).round() as i64]).collect()
}

/// All crossings on a commutative algebra reachable from `opts.starts` random starts,
/// deduplicated and re-verified against axioms 1–5. The swap comes first when present.
pub fn solve_crossings(alg: &AlgebraData, opts: &SolveOptions) -> Result<SolveResult> {
    if !(opts.tol > 0.0) || !(opts.dedup_radius > opts.tol) {
        return Err(Error::Invalid("need tol > 0 and dedup_radius > tol".into()));
    }
    let d = alg.dim();
    if d > 6 {
        return Err(Error::Invalid(format!("solver handles dimension ≤ 6, got {d}")));
    }
    if !is_commutative(alg, opts.tol) {
        return Err(Error::Invalid("solver needs a commutative algebra".into()));
    }
    let real = opts.field == Field::Real;
    let (rows, rhs) = linear_system(alg);
    let n = d.pow(4);
    let mut a = DMatrix::<Scalar>::zeros(rows.len(), n);
    for (r, row) in rows.iter().enumerate() {
        for &(c, v) in row {
            a[(r, c)] += v;
        }
    }
    let rhs = DVector::from_vec(rhs);
    let (x0, basis) = if real {
        let imag = a.iter().chain(rhs.iter()).map(|v| v.im.abs()).fold(0.0, f64::max);
        if imag > opts.tol {
            return Err(Error::Invalid("real solving needs real structure constants".into()));
        }
        let (x0, nb) = affine_solution(a.map(|v| v.re), rhs.map(|v| v.re), 1e-10)?;
        (x0.map(|v| Scalar::new(v, 0.0)), nb.map(|v| Scalar::new(v, 0.0)))
    } else {
        affine_solution(a, rhs, 1e-10)?
    };
    let problem = Problem {
        x0: x0.iter().copied().collect(),
        basis: (0..basis.ncols()).map(|c| basis.column(c).iter().copied().collect()).collect(),
        quad: Quadratic::new(alg),
        real,
    };
    let k = problem.basis.len();
    let run = |s: usize| -> Option<Vec<Scalar>> {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(s as u64);
        let t: Vec<Scalar> = (0..k)
            .map(|_| {
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                if real {
                    Scalar::new(re * opts.scale, 0.0)
                } else {
                    Scalar::new(re, im) * opts.scale
                }
            })
            .collect();
        problem.search(t, opts.max_iterations)
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(worker_count(opts))
        .build()
        .map_err(|e| Error::Invalid(e.to_string()))?;
    // Run in chunks so `max_solutions` can stop the search early; merging happens in
    // start order, which keeps the result independent of the thread count.
    let mut found: Vec<Tensor> = Vec::new();
    let mut converged = 0;
    let mut last_new = None;
    let mut complete = true;
    let chunk = 64;
    let mut next = 0;
    'outer: while next < opts.starts {
        let end = (next + chunk).min(opts.starts);
        let batch: Vec<Option<Vec<Scalar>>> = pool.install(|| (next..end).into_par_iter().map(run).collect());
        for (offset, cand) in batch.into_iter().enumerate() {
            let Some(l) = cand else { continue };
            converged += 1;
            let t = Tensor::from_vec(&[d, d, d, d], l);
            if found.iter().any(|f| f.max_abs_diff(&t) <= opts.dedup_radius) {
                continue;
            }
            let cr = CrossingMap::new(t.clone())?;
            if !check_axioms(alg, &cr, opts.tol).is_spin_model() {
                continue;
            }
            found.push(t);
            last_new = Some(next + offset);
            if found.len() >= opts.max_solutions {
                complete = next + offset + 1 >= opts.starts;
                break 'outer;
            }
        }
        next = end;
    }
    let canonical = CrossingMap::canonical(d);
    found.sort_by_cached_key(|t| {
        let is_swap = t.max_abs_diff(canonical.tensor()) <= opts.dedup_radius;
        (!is_swap, sort_key(t, opts.dedup_radius))
    });
    let solutions = found.into_iter().map(CrossingMap::new).collect::<Result<Vec<_>>>()?;
    Ok(SolveResult { solutions, seed: opts.seed, starts: opts.starts, converged, last_new_start: last_new, free_parameters: k, complete })
}

/// Largest deviation from λ(1⊗e_j) = e_j⊗1 and λ(e_l⊗e_j) = τλ(e_j⊗e_l)τ, taking basis
/// vector 0 as the unit.
pub fn group_basis_defect(cr: &CrossingMap) -> f64 {
    let d = cr.dim();
    let l = cr.tensor();
    let mut worst: f64 = 0.0;
    for o in 0..d {
        for p in 0..d {
            for j in 0..d {
                let want = if o == j && p == 0 { 1.0 } else { 0.0 };
                worst = worst.max((l.get(&[o, p, 0, j]) - want).norm());
                for q in 0..d {
                    worst = worst.max((l.get(&[o, p, q, j]) - l.get(&[p, o, j, q])).norm());
                }
            }
        }
    }
    worst
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// η = χ: the invariant ignores the spin structure.
    Equal,
    /// η = −χ: the invariant is the parity times a topological one.
    Opposite,
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub eta: Vec<Scalar>,
    pub chi: Vec<Scalar>,
    pub relation: Relation,
    /// Closed form of Z(Σ_g, s) in g, the parity P(s) and R, when one of the standard
    /// shapes fits for g = 1..4.
    pub family: Option<String>,
}

fn pow2_term(u: i32, v: i32) -> String {
    match v {
        0 => format!("{}", 1i64 << u),
        1 => format!("2^{{{u}−g}}"),
        _ => format!("2^{{{u}−{v}g}}"),
    }
}

/// Candidate shapes, in a fixed search order, as (tag, Z(g, P)/R^{2−2g}).
#[allow(clippy::type_complexity)]
fn family_templates() -> Vec<(String, Box<dyn Fn(i32, f64) -> f64>)> {
    let mut out: Vec<(String, Box<dyn Fn(i32, f64) -> f64>)> = Vec::new();
    for m in 1..=64 {
        out.push((format!("{m}R^{{2−2g}}"), Box::new(move |_, _| m as f64)));
    }
    for u in 0..=6 {
        for v in 1..=3 {
            out.push((format!("{}R^{{2−2g}}", pow2_term(u, v)), Box::new(move |g, _| 2f64.powi(u - v * g))));
            out.push((format!("P(s){}R^{{2−2g}}", pow2_term(u, v)), Box::new(move |g, p| p * 2f64.powi(u - v * g))));
        }
    }
    for a in 1..=8 {
        for u in 0..=6 {
            for v in 1..=3 {
                out.push((
                    format!("({a}+P(s){})R^{{2−2g}}", pow2_term(u, v)),
                    Box::new(move |g, p| a as f64 + p * 2f64.powi(u - v * g)),
                ));
            }
        }
    }
    out
}

/// η, χ, how they relate, and the closed form of the resulting invariant.
pub fn classify_solution(alg: &AlgebraData, cr: &CrossingMap, tol: f64) -> Result<Classification> {
    let model = SpinModel::new(alg, cr, tol)?;
    let (eta, chi) = (model.eta().to_vec(), model.chi().to_vec());
    let scale = eta.iter().chain(&chi).map(|v| v.norm()).fold(1.0, f64::max);
    let close = |s: f64| eta.iter().zip(&chi).all(|(a, b)| (a - b * s).norm() <= tol * scale);
    let relation = if close(1.0) {
        Relation::Equal
    } else if close(-1.0) {
        Relation::Opposite
    } else {
        Relation::Mixed
    };
    let r = alg.r();
    let mut values = Vec::new();
    for g in 1..=4usize {
        for p in [1i8, -1] {
            let z = model.partition(g, p)? / r.powi(2 - 2 * g as i32);
            values.push((g as i32, p as f64, z));
        }
    }
    let family = family_templates()
        .into_iter()
        .find(|(_, f)| values.iter().all(|&(g, p, z)| (z - f(g, p)).norm() <= 1e-7 * z.norm().max(1.0)))
        .map(|(tag, _)| tag);
    Ok(Classification { eta, chi, relation, family })
}
