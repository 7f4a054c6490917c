use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use spin_tqft::closed_forms::{closed_form, Formula};
use spin_tqft::crossings::{check_axioms, AxiomReport, CrossingMap};
use spin_tqft::evaluator::{naive_partition, sphere_partition, SpinModel};
use spin_tqft::io::{crossing_to_json, scalar_json, validation_flags, CrossingSpec, Model, ModelSpec};
use spin_tqft::solver::{classify_solution, solve_crossings, SolveOptions, SolveResult};
use spin_tqft::surfaces::{SpinStructure, Triangulation};
use spin_tqft::{validate, Error, Result, Scalar};

use crate::report::{fmt_scalar, sha256_hex, RunReport};
use crate::{Cli, Command, Spin};

/// Text and JSON produced by one subcommand.
struct Outcome {
    text: String,
    passed: bool,
    results: Value,
    residuals: Value,
}

/// Inline JSON when the argument starts with `{`, otherwise a file path.
fn read_input(arg: &str) -> Result<String> {
    if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        std::fs::read_to_string(arg).map_err(|e| Error::Invalid(format!("cannot read {arg}: {e}")))
    }
}

fn rel_diff(a: Scalar, b: Scalar) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

pub fn run(cli: &Cli, command: Vec<String>) -> Result<ExitCode> {
    if !(cli.tol > 0.0) {
        return Err(Error::Invalid("--tol must be positive".into()));
    }
    let start = Instant::now();
    let mut inputs = String::new();
    let outcome = match &cli.command {
        Command::Validate { spec } => {
            let text = read_input(spec)?;
            inputs.push_str(&text);
            validate_cmd(cli, &ModelSpec::parse(&text)?)?
        }
        Command::Partition { spec, genus, spin, crossing } => {
            let text = read_input(spec)?;
            inputs.push_str(&text);
            let ctx = Ctx::load(cli, &text, crossing.as_deref(), &mut inputs)?;
            partition_cmd(cli, &ctx, *genus, *spin)?
        }
        Command::Table { spec, constructor, genus_range, crossing } => {
            let arg = spec
                .as_ref()
                .or(constructor.as_ref())
                .ok_or_else(|| Error::Invalid("table needs a spec or --constructor".into()))?;
            let text = read_input(arg)?;
            inputs.push_str(&text);
            let ctx = Ctx::load(cli, &text, crossing.as_deref(), &mut inputs)?;
            table_cmd(cli, &ctx, parse_range(genus_range)?)?
        }
        Command::Solve { spec, starts, max_solutions, dedup_radius, field, expect } => {
            let text = read_input(spec)?;
            inputs.push_str(&text);
            let model_spec = ModelSpec::parse(&text)?;
            let model = Model::build(&model_spec.algebra, model_spec.grading.as_ref())?;
            let opts = SolveOptions {
                tol: cli.tol,
                starts: *starts,
                max_solutions: *max_solutions,
                dedup_radius: *dedup_radius,
                seed: cli.seed,
                field: (*field).into(),
                ..SolveOptions::default()
            };
            solve_cmd(cli, &model, &opts, *expect)?
        }
        Command::PachnerCheck { spec, genus, moves, trials } => {
            let text = read_input(spec)?;
            inputs.push_str(&text);
            let model_spec = ModelSpec::parse(&text)?;
            let model = Model::build(&model_spec.algebra, model_spec.grading.as_ref())?;
            pachner_cmd(cli, &model, *genus, *moves, *trials)?
        }
    };
    let wall = cli.timing.then(|| start.elapsed().as_secs_f64());
    let report = RunReport {
        command,
        inputs_sha256: sha256_hex(inputs.as_bytes()),
        seed: cli.seed,
        tol: cli.tol,
        passed: outcome.passed,
        results: outcome.results,
        residuals: outcome.residuals,
        wall_time_s: wall,
    };
    let json = serde_json::to_string_pretty(&report).expect("reports serialize") + "\n";
    match cli.json.as_deref() {
        Some(p) if p.as_os_str() == "-" => print!("{json}"),
        other => {
            print!("{}", outcome.text);
            if let Some(w) = wall {
                println!("wall time: {w:.3} s");
            }
            if let Some(path) = other {
                std::fs::write(path, json).map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))?;
            }
        }
    }
    Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn parse_range(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::Invalid(format!("genus range {s:?} should look like a..b"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn axiom_flags(r: &AxiomReport) -> Vec<(&'static str, bool)> {
    vec![
        ("compat_B", r.compat_b),
        ("compat_C", r.compat_c),
        ("RII", r.r_ii),
        ("RIII", r.r_iii),
        ("ribbon", r.ribbon),
        ("curl_free", r.r_i),
        ("phi_squared_id", r.phi_squared_id),
    ]
}

fn validate_cmd(cli: &Cli, spec: &ModelSpec) -> Result<Outcome> {
    let model = Model::build(&spec.algebra, spec.grading.as_ref())?;
    let report = validate(&model.algebra, cli.tol);
    let mut flags: BTreeMap<&str, bool> = validation_flags(&report).into_iter().collect();
    let mut wanted: BTreeMap<String, bool> = ["nondegenerate_B", "nondegenerate_C", "compatible", "associative", "special", "separable_witness_ok"]
        .iter()
        .map(|k| (k.to_string(), true))
        .collect();
    let mut residuals = json!({ "algebra": report.residuals });
    if let Some(cs) = &spec.crossing {
        let cr = model.crossing(cs)?;
        let ax = check_axioms(&model.algebra, &cr, cli.tol);
        for (k, v) in axiom_flags(&ax) {
            flags.insert(k, v);
        }
        for k in ["compat_B", "compat_C", "RII", "RIII", "ribbon"] {
            wanted.insert(k.to_string(), true);
        }
        residuals["crossing"] = serde_json::to_value(&ax.residuals)?;
    }
    for (k, w) in &spec.require {
        if !flags.contains_key(k.as_str()) {
            return Err(Error::Invalid(format!("unknown flag {k:?} in require")));
        }
        wanted.insert(k.clone(), w.expected());
    }
    let mut text = String::new();
    let mut passed = true;
    let mut checks = Vec::new();
    for (k, v) in &flags {
        let expected = wanted.get(*k).copied();
        let ok = expected.is_none_or(|e| e == *v);
        passed &= ok;
        let mark = match expected {
            None => "",
            Some(_) if ok => "  ok",
            Some(_) => "  FAILED",
        };
        let _ = writeln!(text, "{k:<22} {v}{mark}");
        if let Some(e) = expected {
            checks.push(json!({ "flag": k, "expected": e, "actual": v, "ok": ok }));
        }
    }
    let _ = writeln!(text, "{}", if passed { "all requested flags pass" } else { "some requested flags fail" });
    Ok(Outcome { text, passed, results: json!({ "flags": flags, "checks": checks }), residuals })
}

/// A loaded model with its optional crossing.
struct Ctx {
    spec: ModelSpec,
    model: Model,
    crossing: Option<(CrossingSpec, CrossingMap)>,
}

impl Ctx {
    fn load(cli: &Cli, text: &str, crossing_arg: Option<&str>, inputs: &mut String) -> Result<Self> {
        let spec = ModelSpec::parse(text)?;
        let model = Model::build(&spec.algebra, spec.grading.as_ref())?;
        let cs = match crossing_arg {
            None => spec.crossing.clone(),
            Some(a) if a == "canonical" || a.starts_with("bichar:") || a.starts_with("solved:") => {
                Some(CrossingSpec::Named(a.to_string()))
            }
            Some(path) => {
                let t = read_input(path)?;
                inputs.push_str(&t);
                Some(CrossingSpec::Explicit(serde_json::from_str(&t)?))
            }
        };
        let crossing = match cs {
            None => None,
            Some(CrossingSpec::Named(n)) if n.starts_with("solved:") => {
                let k: usize = n["solved:".len()..].parse().map_err(|_| Error::Invalid(format!("bad crossing {n:?}")))?;
                let opts = SolveOptions { tol: cli.tol, seed: cli.seed, ..SolveOptions::default() };
                let res = solve_crossings(&model.algebra, &opts)?;
                let count = res.count();
                let cr = res
                    .solutions
                    .into_iter()
                    .nth(k)
                    .ok_or_else(|| Error::Invalid(format!("solved:{k} out of range ({count} crossings found)")))?;
                Some((CrossingSpec::Named(n), cr))
            }
            Some(c) => {
                let cr = model.crossing(&c)?;
                Some((c, cr))
            }
        };
        Ok(Ctx { spec, model, crossing })
    }

    fn spin_model(&self, tol: f64) -> Result<SpinModel<'_>> {
        let (_, cr) = self.crossing.as_ref().ok_or_else(|| Error::Invalid("--spin needs a crossing".into()))?;
        SpinModel::new(&self.model.algebra, cr, tol)
    }

    fn formula(&self, eta: Option<&[Scalar]>) -> Option<Formula> {
        closed_form(
            &self.spec.algebra,
            self.spec.grading.as_ref(),
            self.crossing.as_ref().map(|(c, _)| c),
            self.model.algebra.r(),
            eta,
        )
    }
}

/// Z on the 4g-gon (the square for g = 0) by direct state sum.
fn state_sum(ctx: &Ctx, genus: usize) -> Result<Scalar> {
    Ok(naive_partition(&ctx.model.algebra, &Triangulation::polygon(genus), None)?.data()[0])
}

fn compare(text: &mut String, z: Scalar, closed: Option<(&Formula, Scalar)>, tol: f64) -> (bool, Value) {
    match closed {
        Some((f, c)) => {
            let diff = rel_diff(z, c);
            let ok = diff <= tol;
            let _ = writeln!(text, "closed form {} = {}  difference {diff:.3e}{}", f.render(), fmt_scalar(c), if ok { "" } else { "  MISMATCH" });
            (ok, json!({ "formula": f.render(), "value": scalar_json(c), "difference": diff }))
        }
        None => {
            let _ = writeln!(text, "no closed form known");
            (true, Value::Null)
        }
    }
}

fn partition_cmd(cli: &Cli, ctx: &Ctx, genus: usize, spin: Option<Spin>) -> Result<Outcome> {
    let mut text = String::new();
    let mut residuals = serde_json::Map::new();
    let mut passed = true;
    let (z, parity, formula) = match spin {
        None => {
            if ctx.crossing.is_some() {
                return Err(Error::Invalid("a crossing only makes sense with --spin".into()));
            }
            let z = state_sum(ctx, genus)?;
            if genus == 0 {
                let s = sphere_partition(&ctx.model.algebra);
                let d = rel_diff(z, s);
                passed &= d <= cli.tol;
                residuals.insert("sphere".into(), json!(d));
            }
            (z, None, ctx.formula(None))
        }
        Some(s) => {
            let parity: i8 = if s == Spin::Even { 1 } else { -1 };
            let model = ctx.spin_model(cli.tol)?;
            let z = model.partition(genus, parity)?;
            let direct = model.partition_direct(&SpinStructure::with_parity(genus, parity)?)?;
            let d = rel_diff(z, direct);
            passed &= d <= cli.tol;
            residuals.insert("direct".into(), json!(d));
            residuals.insert("axioms".into(), json!(model.report().max_residual));
            (z, Some(parity), ctx.formula(Some(model.eta())))
        }
    };
    let _ = writeln!(
        text,
        "Z(genus {genus}{}) = {}",
        parity.map_or(String::new(), |p| format!(", {}", if p > 0 { "even" } else { "odd" })),
        fmt_scalar(z)
    );
    let closed_value = formula.as_ref().map(|f| (f, f.eval(genus, parity.unwrap_or(1), ctx.model.algebra.r())));
    let (ok, closed) = compare(&mut text, z, closed_value, cli.tol);
    passed &= ok;
    if let Some(d) = residuals.get("direct") {
        let _ = writeln!(text, "direct diagram route difference {:.3e}", d.as_f64().unwrap_or(f64::NAN));
    }
    let results = json!({ "Z": scalar_json(z), "genus": genus, "parity": parity, "closed_form": closed });
    Ok(Outcome { text, passed, results, residuals: Value::Object(residuals) })
}

fn table_cmd(cli: &Cli, ctx: &Ctx, (a, b): (usize, usize)) -> Result<Outcome> {
    let mut text = String::new();
    let mut passed = true;
    let mut rows = Vec::new();
    let mut worst = 0.0f64;
    let r = ctx.model.algebra.r();
    let spin = ctx.crossing.as_ref().map(|_| ctx.spin_model(cli.tol)).transpose()?;
    let formula = ctx.formula(spin.as_ref().map(|m| m.eta()));
    match &spin {
        None => {
            let _ = writeln!(text, "{:>5}  {:>24}  {:>24}", "genus", "Z", "closed form");
        }
        Some(_) => {
            let _ = writeln!(text, "{:>5}  {:>24}  {:>24}  {:>24}", "genus", "Z even", "Z odd", "closed form (even, odd)");
        }
    }
    for g in a..=b {
        match &spin {
            None => {
                let z = state_sum(ctx, g)?;
                let c = formula.as_ref().map(|f| f.eval(g, 1, r));
                if let Some(c) = c {
                    worst = worst.max(rel_diff(z, c));
                }
                let _ = writeln!(text, "{g:>5}  {:>24}  {:>24}", fmt_scalar(z), c.map_or("-".into(), fmt_scalar));
                rows.push(json!({ "genus": g, "Z": scalar_json(z), "closed_form": c.map(scalar_json) }));
            }
            Some(m) => {
                let even = m.partition(g, 1)?;
                let odd = if g == 0 { None } else { Some(m.partition(g, -1)?) };
                let ce = formula.as_ref().map(|f| f.eval(g, 1, r));
                let co = formula.as_ref().filter(|_| g > 0).map(|f| f.eval(g, -1, r));
                for (z, c) in [(Some(even), ce), (odd, co)] {
                    if let (Some(z), Some(c)) = (z, c) {
                        worst = worst.max(rel_diff(z, c));
                    }
                }
                let closed = match (ce, co) {
                    (Some(e), Some(o)) => format!("{}, {}", fmt_scalar(e), fmt_scalar(o)),
                    (Some(e), None) => fmt_scalar(e),
                    _ => "-".into(),
                };
                let _ = writeln!(text, "{g:>5}  {:>24}  {:>24}  {closed:>24}", fmt_scalar(even), odd.map_or("-".into(), fmt_scalar));
                rows.push(json!({
                    "genus": g,
                    "even": scalar_json(even),
                    "odd": odd.map(scalar_json),
                    "closed_form": { "even": ce.map(scalar_json), "odd": co.map(scalar_json) },
                }));
            }
        }
    }
    passed &= worst <= cli.tol;
    match &formula {
        Some(f) => {
            let _ = writeln!(text, "closed form {}  max difference {worst:.3e}{}", f.render(), if passed { "" } else { "  MISMATCH" });
        }
        None => {
            let _ = writeln!(text, "no closed form known");
        }
    }
    let results = json!({ "rows": rows, "formula": formula.as_ref().map(Formula::render) });
    Ok(Outcome { text, passed, results, residuals: json!({ "closed_form": worst }) })
}

fn solve_cmd(cli: &Cli, model: &Model, opts: &SolveOptions, expect: Option<usize>) -> Result<Outcome> {
    let res: SolveResult = solve_crossings(&model.algebra, opts)?;
    let mut text = String::new();
    let mut families = Vec::new();
    let mut worst = 0.0f64;
    let _ = writeln!(
        text,
        "{} crossings ({} free parameters, {} of {} starts converged, last new at start {})",
        res.count(),
        res.free_parameters,
        res.converged,
        res.starts,
        res.last_new_start.map_or("-".into(), |s| s.to_string())
    );
    for (i, cr) in res.solutions.iter().enumerate() {
        let c = classify_solution(&model.algebra, cr, cli.tol)?;
        worst = worst.max(check_axioms(&model.algebra, cr, cli.tol).max_residual);
        let eta: Vec<String> = c.eta.iter().map(|z| fmt_scalar(*z)).collect();
        let _ = writeln!(text, "{i:>3}  {:?}  η = [{}]  {}", c.relation, eta.join(", "), c.family.as_deref().unwrap_or("?"));
        families.push(serde_json::to_value(&c)?);
    }
    if !res.complete {
        let _ = writeln!(text, "stopped at --max-solutions; the list may be incomplete");
    }
    let passed = match expect {
        Some(n) => {
            let ok = n == res.count() && res.complete;
            let _ = writeln!(text, "expected {n}: {}", if ok { "ok" } else { "FAILED" });
            ok
        }
        None => true,
    };
    let results = json!({
        "count": res.count(),
        "solutions": res.solutions.iter().map(crossing_to_json).collect::<Vec<_>>(),
        "families": families,
        "seed": res.seed,
        "starts": res.starts,
        "converged": res.converged,
        "last_new_start": res.last_new_start,
        "free_parameters": res.free_parameters,
        "complete": res.complete,
        "field": opts.field,
        "expected": expect,
    });
    Ok(Outcome { text, passed, results, residuals: json!({ "axioms": worst }) })
}

fn pachner_cmd(cli: &Cli, model: &Model, genus: usize, moves: usize, trials: usize) -> Result<Outcome> {
    let alg = &model.algebra;
    let base = Triangulation::polygon(genus);
    let z0 = naive_partition(alg, &base, None)?.data()[0];
    let mut text = String::new();
    let _ = writeln!(text, "genus {genus}: {} triangles, Z = {}", base.num_triangles(), fmt_scalar(z0));
    let mut trial_json = Vec::new();
    let mut worst = 0.0f64;
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(cli.seed.wrapping_add(t as u64));
        let tri = base.random_moves(moves, &mut rng);
        let z = naive_partition(alg, &tri, None)?.data()[0];
        let d = rel_diff(z, z0);
        worst = worst.max(d);
        let chi = tri.euler_characteristic();
        let _ = writeln!(text, "trial {t}: {} triangles, χ = {chi}, Z = {}, difference {d:.3e}", tri.num_triangles(), fmt_scalar(z));
        trial_json.push(json!({ "triangles": tri.num_triangles(), "euler_characteristic": chi, "Z": scalar_json(z), "difference": d }));
    }
    let passed = worst <= cli.tol;
    let _ = writeln!(text, "{}", if passed { "invariant under the moves" } else { "NOT invariant" });
    let results = json!({ "genus": genus, "Z": scalar_json(z0), "moves": moves, "trials": trial_json });
    Ok(Outcome { text, passed, results, residuals: json!({ "pachner": worst }) })
}
