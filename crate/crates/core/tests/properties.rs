use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use spin_tqft::constructors::{group_algebra_cyclic, matrix_algebra, standard_grading, AbelianGroup, GradingKind, Ring, Weight};
use spin_tqft::crossings::CrossingMap;
use spin_tqft::evaluator::{naive_partition, SpinModel};
use spin_tqft::io::{algebra_from_json, algebra_to_json, crossing_from_json, crossing_to_json};
use spin_tqft::linalg::mat_mul;
use spin_tqft::solver::enumerate_bicharacters;
use spin_tqft::surfaces::{SpinStructure, Triangulation};
use spin_tqft::{AlgebraData, Scalar, Tensor};

const TOL: f64 = 1e-9;

fn c(x: f64) -> Scalar {
    Scalar::new(x, 0.0)
}

fn ring() -> impl Strategy<Value = Ring> {
    prop_oneof![Just(Ring::R), Just(Ring::C), Just(Ring::CR), Just(Ring::HR)]
}

fn r_value() -> impl Strategy<Value = f64> {
    prop_oneof![Just(1.0), Just(0.5), 0.3f64..3.0]
}

fn z(alg: &AlgebraData, tri: &Triangulation) -> Scalar {
    naive_partition(alg, tri, None).unwrap().data()[0]
}

fn close(a: Scalar, b: Scalar) -> bool {
    (a - b).norm() <= TOL * b.norm().max(1e-300)
}

/// A spin model from one of the graded families, chosen by index.
fn spin_model(family: usize, n: usize, index: usize, r: f64) -> (AlgebraData, CrossingMap) {
    let (base, kind) = match family {
        0 => (matrix_algebra(n, Ring::CR, &Weight::Fhk, Some(c(r))).unwrap(), GradingKind::Z2Complex { n }),
        1 => (matrix_algebra(n, Ring::HR, &Weight::Fhk, Some(c(r))).unwrap(), GradingKind::KleinQuaternionic { n }),
        _ => {
            let (p, q) = (n + 1, 1);
            (
                matrix_algebra(p + q, Ring::C, &Weight::Signature { p, q }, Some(c(r))).unwrap(),
                GradingKind::Z2Matrix { p, q, ring: Ring::C },
            )
        }
    };
    let graded = standard_grading(&base, &kind).unwrap();
    let b = &graded.bicharacters[index % graded.bicharacters.len()];
    let cr = CrossingMap::from_bicharacter(&graded.grading, b).unwrap();
    (graded.algebra, cr)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn state_sum_ignores_pachner_moves(ring in ring(), n in 1usize..=2, r in r_value(), genus in 0usize..=2, moves in 1usize..8, seed in any::<u64>()) {
        let alg = matrix_algebra(n, ring, &Weight::Fhk, Some(c(r))).unwrap();
        let base = Triangulation::polygon(genus);
        let moved = base.random_moves(moves, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert!(close(z(&alg, &moved), z(&alg, &base)));
    }

    #[test]
    fn moves_keep_the_euler_characteristic(genus in 0usize..=3, moves in 0usize..20, seed in any::<u64>()) {
        let base = Triangulation::polygon(genus);
        let moved = base.random_moves(moves, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(moved.euler_characteristic(), 2 - 2 * genus as i64);
        prop_assert_eq!(moved.num_triangles() % 2, 0);
    }

    #[test]
    fn vertex_insertion_adds_one_vertex_three_edges_two_triangles(genus in 0usize..=2, moves in 0usize..6, seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let t = Triangulation::polygon(genus).random_moves(moves, &mut ChaCha8Rng::seed_from_u64(seed));
        let after = t.pachner_13(pick.index(t.num_triangles())).unwrap();
        prop_assert_eq!(after.num_vertices(), t.num_vertices() + 1);
        prop_assert_eq!(after.num_edges(), t.num_edges() + 3);
        prop_assert_eq!(after.num_triangles(), t.num_triangles() + 2);
    }

    #[test]
    fn handles_are_central_with_equal_squares(family in 0usize..3, n in 1usize..=2, index in 0usize..8, r in r_value()) {
        let (alg, cr) = spin_model(family, n, index, r);
        let m = SpinModel::new(&alg, &cr, TOL).unwrap();
        let d = alg.dim();
        let diff = |a: &[Scalar], b: &[Scalar]| a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        let scale = m.eta().iter().map(|x| x.norm()).fold(1e-300, f64::max);
        for a in 0..d {
            let e = alg.basis(a);
            for h in [m.eta(), m.chi()] {
                prop_assert!(diff(&alg.multiply(h, &e).unwrap(), &alg.multiply(&e, h).unwrap()) <= TOL * scale);
            }
        }
        let e2 = alg.multiply(m.eta(), m.eta()).unwrap();
        let c2 = alg.multiply(m.chi(), m.chi()).unwrap();
        prop_assert!(diff(&e2, &c2) <= TOL * scale * scale.max(1.0));
    }

    #[test]
    fn curl_is_an_involution_and_cylinders_are_projections(family in 0usize..3, n in 1usize..=2, index in 0usize..8, r in r_value()) {
        let (alg, cr) = spin_model(family, n, index, r);
        let m = SpinModel::new(&alg, &cr, TOL).unwrap();
        let id = Tensor::identity(alg.dim());
        prop_assert!(mat_mul(m.phi(), m.phi()).max_abs_diff(&id) <= TOL);
        let maps = m.ring_maps().unwrap();
        for t in [&maps.p, &maps.n1] {
            let x = t.scale(alg.r());
            prop_assert!(mat_mul(&x, &x).max_abs_diff(&x) <= TOL * x.max_abs().max(1.0));
        }
    }

    #[test]
    fn partition_depends_only_on_parity(family in 0usize..3, index in 0usize..8, genus in 1usize..=3, bits in any::<u64>()) {
        let (alg, cr) = spin_model(family, 1, index, 1.0);
        let m = SpinModel::new(&alg, &cr, TOL).unwrap();
        let q = (0..2 * genus).map(|k| ((bits >> k) & 1) as u8).collect();
        let s = SpinStructure::new(genus, q).unwrap();
        let direct = m.partition_direct(&s).unwrap();
        prop_assert!(close(direct, m.partition(genus, s.parity()).unwrap()));
    }

    #[test]
    fn enumerated_bicharacters_are_bicharacters(orders in prop::collection::vec(1usize..=4, 1..=2)) {
        let group = AbelianGroup::new(orders.clone());
        let found = enumerate_bicharacters(&group);
        let gcd = |mut a: usize, mut b: usize| { while b != 0 { (a, b) = (b, a % b); } a };
        // ±1 on the diagonal of each even cyclic factor, a gcd-th root for each pair of factors.
        let mut want: usize = orders.iter().map(|&n| gcd(n, 2)).product();
        for i in 0..orders.len() {
            for j in i + 1..orders.len() {
                want *= gcd(orders[i], orders[j]);
            }
        }
        prop_assert_eq!(found.len(), want);
        let size = group.order();
        for b in &found {
            prop_assert!(b.defect() <= 1e-12);
            for h in 0..size {
                for j in 0..size {
                    prop_assert!((b.value(h, j) * b.value(j, h) - c(1.0)).norm() <= 1e-12);
                    for k in 0..size {
                        let lhs = b.value(group.add(h, k), j);
                        prop_assert!((lhs - b.value(h, j) * b.value(k, j)).norm() <= 1e-12);
                    }
                }
            }
        }
        for (i, a) in found.iter().enumerate() {
            for b in &found[i + 1..] {
                prop_assert!(a.table != b.table);
            }
        }
    }

    #[test]
    fn json_round_trips(ring in ring(), n in 1usize..=2, r in r_value(), m in 2usize..=4) {
        let alg = matrix_algebra(n, ring, &Weight::Fhk, Some(c(r))).unwrap();
        let back = algebra_from_json(&algebra_to_json(&alg)).unwrap();
        prop_assert!(back.c().max_abs_diff(alg.c()) == 0.0);
        prop_assert!(back.b().max_abs_diff(alg.b()) == 0.0);
        prop_assert_eq!(back.r(), alg.r());
        let (_, g) = group_algebra_cyclic(m, c(r)).unwrap();
        let cyc = group_algebra_cyclic(m, c(r)).unwrap().0.with_grading(g).unwrap();
        let back = algebra_from_json(&algebra_to_json(&cyc)).unwrap();
        prop_assert_eq!(back.grading(), cyc.grading());
        let cr = CrossingMap::canonical(alg.dim());
        prop_assert_eq!(crossing_from_json(&crossing_to_json(&cr)).unwrap(), cr);
    }
}

#[test]
fn spin_structure_counts() {
    for g in 0..=4usize {
        let all = SpinStructure::enumerate(g);
        assert_eq!(all.len(), 1 << (2 * g));
        let even = all.iter().filter(|s| s.parity() == 1).count();
        let odd = all.len() - even;
        // 2^{g−1}(2^g ± 1) structures of each parity.
        if g == 0 {
            assert_eq!((even, odd), (1, 0));
        } else {
            assert_eq!(even, (1 << (g - 1)) * ((1 << g) + 1));
            assert_eq!(odd, (1 << (g - 1)) * ((1 << g) - 1));
        }
        for p in [1i8, -1] {
            if g > 0 || p == 1 {
                assert_eq!(SpinStructure::with_parity(g, p).unwrap().parity(), p);
            }
        }
    }
}
