use spin_tqft::constructors::group_algebra_cyclic;
use spin_tqft::crossings::{check_axioms, CrossingMap};
use spin_tqft::solver::{classify_solution, group_basis_defect, solve_crossings, Field, Relation, SolveOptions, SolveResult};
use spin_tqft::{Error, Scalar};

fn cyclic(m: usize) -> spin_tqft::AlgebraData {
    group_algebra_cyclic(m, Scalar::new(1.0, 0.0)).unwrap().0
}

fn solve(m: usize, opts: SolveOptions) -> SolveResult {
    solve_crossings(&cyclic(m), &opts).unwrap()
}

fn distance(a: &CrossingMap, b: &CrossingMap) -> f64 {
    a.tensor().max_abs_diff(b.tensor())
}

#[test]
fn solutions_pass_the_axioms_and_have_group_basis_shape() {
    for m in 2..=3 {
        let alg = cyclic(m);
        let res = solve(m, SolveOptions::default());
        assert_eq!(res.count(), 2, "m = {m}");
        assert!(res.complete);
        for cr in &res.solutions {
            assert!(check_axioms(&alg, cr, 1e-9).is_spin_model());
            assert!(group_basis_defect(cr) <= 1e-9);
        }
        assert!(distance(&res.solutions[0], &CrossingMap::canonical(m)) <= 1e-9);
    }
}

#[test]
fn doubling_the_starts_finds_nothing_new() {
    let base = solve(3, SolveOptions::default());
    let more = solve(3, SolveOptions { starts: 800, seed: 11, ..SolveOptions::default() });
    for cr in &more.solutions {
        let nearest = base.solutions.iter().map(|b| distance(b, cr)).fold(f64::INFINITY, f64::min);
        assert!(nearest <= 1e-5, "new crossing at distance {nearest}");
    }
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let one = solve(3, SolveOptions { starts: 150, threads: Some(1), ..SolveOptions::default() });
    let many = solve(3, SolveOptions { starts: 150, threads: Some(4), ..SolveOptions::default() });
    assert_eq!(one, many);
}

#[test]
fn cyclic_families() {
    let alg = cyclic(3);
    let res = solve(3, SolveOptions::default());
    let classes: Vec<_> = res.solutions.iter().map(|cr| classify_solution(&alg, cr, 1e-9).unwrap()).collect();
    assert_eq!(classes[0].relation, Relation::Equal);
    assert_eq!(classes[1].relation, Relation::Mixed);
    assert_eq!(classes[1].family.as_deref(), Some("(1+P(s)2^{1−g})R^{2−2g}"));

    let alg2 = cyclic(2);
    let res = solve(2, SolveOptions::default());
    let sign = classify_solution(&alg2, &res.solutions[1], 1e-9).unwrap();
    assert_eq!(sign.relation, Relation::Opposite);
    assert_eq!(sign.family.as_deref(), Some("P(s)2^{1−g}R^{2−2g}"));
}

#[test]
fn complex_search_contains_the_real_solutions() {
    let real = solve(3, SolveOptions::default());
    let complex = solve(3, SolveOptions { field: Field::Complex, ..SolveOptions::default() });
    assert!(complex.count() >= real.count());
    for cr in &real.solutions {
        assert!(complex.solutions.iter().any(|c| distance(c, cr) <= 1e-6));
    }
}

#[test]
fn budget_and_option_errors() {
    let res = solve(3, SolveOptions { max_solutions: 1, ..SolveOptions::default() });
    assert!(!res.complete);
    assert!(matches!(res.require_complete(), Err(Error::BudgetExhausted { found: 1 })));
    let bad = SolveOptions { dedup_radius: 1e-12, ..SolveOptions::default() };
    assert!(solve_crossings(&cyclic(2), &bad).is_err());
}
