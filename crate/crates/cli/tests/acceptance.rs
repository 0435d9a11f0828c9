//! Acceptance run: one PASS/FAIL line per criterion, with timings.
//!
//! Runs as a plain binary (`harness = false`) so the table prints in order and
//! the process fails if any criterion fails.

use std::process::ExitCode;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use cocert_cli::{run, Report};
use cocert_core::cohom::{
    abelianization, coboundary_class, h1, h1_sp_structured, two_cocycle_check, CohomologyClass, ConjugateComparison,
    ExpCocycle, PresentationAction,
};
use cocert_core::dynamics::{aut_atomic, finite_action_rigidity, AtomicSpace, SymbolicGroup};
use cocert_core::groups::ambient::symplectic_form;
use cocert_core::groups::{AmbientGroupSpec, Family, Registry};
use cocert_core::numfield::{
    discriminant, intermediate_field_free, is_cyclotomic_product, resolvent_cubic, GaloisAction, NumberField,
    NumberFieldElement,
};
use cocert_core::{cohom::verify_steinberg_commutator, CertifiedClaim, IntMatrix, IntPolynomial};
use num_rational::BigRational;
use serde_json::{json, Value};

type Outcome = Result<String, String>;

/// Every report produced during the run, for the citation audit.
static REPORTS: Mutex<Vec<Report>> = Mutex::new(Vec::new());

fn cli(args: &str) -> Result<Report, String> {
    let argv = std::iter::once("cocert").chain(args.split_whitespace());
    let out = run(argv);
    let report = out.report.ok_or_else(|| format!("`{args}` produced no report: {}", out.stderr.trim()))?;
    REPORTS.lock().unwrap().push(report.clone());
    Ok(report)
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    ensure(
        start.elapsed() < limit,
        format!("took {:.2}s, limit {:.0}s", start.elapsed().as_secs_f64(), limit.as_secs_f64()),
    )
}

fn matrix_json(rows: &[[i64; 3]]) -> Value {
    json!(rows)
}

fn registry_fidelity() -> Outcome {
    let start = Instant::now();
    let r = cli("build gl4-x4px1")?;
    let expected = json!([[0, 0, -1, -1], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]);
    ensure(r.claim.data["generator"] == expected, format!("gl4-x4px1 generator {}", r.claim.data["generator"]))?;

    let r = cli("build sp6-pair")?;
    let units = r.claim.data["units"].as_array().cloned().unwrap_or_default();
    let unit = |name: &str| units.iter().find(|u| u["unit"] == name).map(|u| u["matrix"].clone());
    ensure(
        unit("x") == Some(matrix_json(&[[-1, 1, 1], [1, 1, 0], [1, 0, 0]])),
        "pi(x) differs",
    )?;
    ensure(
        unit("x - 1") == Some(matrix_json(&[[-2, 1, 1], [1, 0, 0], [1, 0, -1]])),
        "pi(x - 1) differs",
    )?;
    ensure(unit("-1") == Some(matrix_json(&[[-1, 0, 0], [0, -1, 0], [0, 0, -1]])), "pi(-1) differs")?;
    let order3 = matrix_json(&[[-1, 1, -1], [-1, 0, 1], [0, 0, 1]]);
    let galois = r.claim.data["galois"].as_array().cloned().unwrap_or_default();
    ensure(
        galois.iter().any(|g| g["matrix"] == order3 && g["order"] == 3),
        "order-3 Galois matrix missing",
    )?;

    // oracle: a 2x2 matrix has char poly x^2 - tr x + det
    let pair = Registry::bundled().build_example("gl2-golden").map_err(|e| e.to_string())?;
    let a = pair.cyclic_generator().ok_or("gl2-golden is not cyclic")?;
    let cp = a.char_poly().map_err(|e| e.to_string())?;
    let tr = a.trace().map_err(|e| e.to_string())?;
    let det = a.det().map_err(|e| e.to_string())?;
    ensure(cp == IntPolynomial::new(vec![det, -tr, 1.into()]), "char_poly disagrees with trace/det")?;
    ensure(cp == IntPolynomial::from_i64(&[1, -5, 1]), format!("gl2-golden char_poly {cp}"))?;
    within(start, Duration::from_secs(1))?;
    Ok("matrices and x^2 - 5x + 1 reproduced".into())
}

fn scan(args: &str) -> Result<(u64, f64, String), String> {
    let r = cli(args)?;
    let s = &r.claim.data["summary"];
    let refutations = s["fallback_infinite"].as_u64().unwrap_or(u64::MAX);
    let exact = r.claim.data["exact_fraction"].as_f64().unwrap_or(0.0);
    let witnesses: Vec<String> = r
        .claim
        .children
        .iter()
        .filter(|c| c.status.is_refuted())
        .filter_map(|c| c.data.get("word").map(|w| w.to_string()))
        .collect();
    Ok((refutations, exact, witnesses.join(" ")))
}

fn malnormality_scans() -> Outcome {
    let mut notes = Vec::new();
    let mut failures = Vec::new();
    for (id, args) in [
        ("gl2-golden", "verify malnormal gl2-golden --radius 4 --exp-bound 20"),
        ("gl4-x4px1", "verify malnormal gl4-x4px1 --radius 3"),
    ] {
        let start = Instant::now();
        let (refutations, exact, witnesses) = scan(args)?;
        let t = start.elapsed().as_secs_f64();
        notes.push(format!("{id}: {refutations} refutations, {:.1}% eigenline, {t:.2}s", 100.0 * exact));
        if refutations != 0 {
            failures.push(format!("{id} has {refutations} infinite intersections (words {witnesses})"));
        }
        if exact < 0.95 {
            failures.push(format!("{id} eigenline fraction {exact:.3} < 0.95"));
        }
        if start.elapsed() > Duration::from_secs(300) {
            failures.push(format!("{id} took {t:.0}s"));
        }
    }
    if failures.is_empty() {
        Ok(notes.join("; "))
    } else {
        Err(format!("{} [{}]", failures.join("; "), notes.join("; ")))
    }
}

fn cohomology() -> Outcome {
    let start = Instant::now();
    let reg = Registry::bundled();
    for id in ["sl2z-std", "sl3z-steinberg"] {
        let r = cli(&format!("cohomology h1 {id}"))?;
        ensure(r.claim.data["vanishes"] == json!(true), format!("H^1 of {id} is {}", r.claim.data["h1"]))?;
        ensure(!r.claim.any_refuted(), format!("{id} report has a refutation"))?;
        // solver run directly, outside the report layer
        let pres = reg.presentation(id).map_err(|e| e.to_string())?;
        let pa = PresentationAction::from_presentation(&pres).map_err(|e| e.to_string())?;
        ensure(h1(&pa).map_err(|e| e.to_string())?.is_zero(), format!("direct H^1 of {id} nonzero"))?;
    }
    for n in [2, 3] {
        let c = h1_sp_structured(n).map_err(|e| e.to_string())?;
        let solver = c.children.first().ok_or("no solver child")?;
        ensure(solver.status.is_computed() && !c.any_refuted(), format!("Sp({}) solver: {}", 2 * n, solver.status.label()))?;
    }
    let mut checked = 0;
    for n in [3usize, 4, 5] {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if i == j || j == k || i == k {
                        continue;
                    }
                    for m in -10..=10 {
                        ensure(
                            verify_steinberg_commutator(n, i, j, k, m).map_err(|e| e.to_string())?,
                            format!("commutator identity fails at n={n} ({i},{j},{k}) m={m}"),
                        )?;
                        checked += 1;
                    }
                }
            }
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("H^1 = 0 for SL(2), SL(3), Sp(4), Sp(6); {checked} commutator identities"))
}

fn characters() -> Outcome {
    let reg = Registry::bundled();
    let r = cli("cohomology char sl3z-steinberg")?;
    ensure(r.claim.data["order"] == json!("1"), format!("SL(3,Z) abelianization {}", r.claim.data["abelianization"]))?;
    let r = cli("cohomology char gl2z")?;
    ensure(r.claim.data["order"] == json!("4"), format!("GL(2,Z) abelianization {}", r.claim.data["abelianization"]))?;
    let ab = abelianization(&reg.presentation("gl2z").map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(ab.order() == Some(4.into()), "direct GL(2,Z) abelianization order")?;
    Ok(format!("SL(3,Z)^ab = 1, GL(2,Z)^ab = {}", ab.describe()))
}

fn two_cocycles() -> Outcome {
    let start = Instant::now();
    let pair = Registry::bundled().build_example("sp6-pair").map_err(|e| e.to_string())?;
    let j = symplectic_form(3);
    let gens: Vec<IntMatrix> = pair.ambient.generators.iter().map(|g| g.linear().clone()).collect();
    for g in &gens {
        let lhs = g.transpose().try_mul(&j).and_then(|m| m.try_mul(g)).map_err(|e| e.to_string())?;
        ensure(lhs == j, format!("g^t J g != J for {g}"))?;
    }
    let angle = |p: i64, q: i64| BigRational::new(p.into(), q.into());
    let class = |p, q| ExpCocycle::new(j.clone(), angle(p, q)).map(|c| coboundary_class(&c)).map_err(|e| e.to_string());
    let pi = class(1, 1)?;
    ensure(pi.class == CohomologyClass::TrivialClass, "α = π is not trivial")?;
    let third = class(1, 3)?;
    ensure(
        third.class == CohomologyClass::Nontrivial && third.conjugate == ConjugateComparison::Different,
        format!("α = π/3 gives {:?}", third),
    )?;
    let half = class(1, 2)?;
    ensure(
        half.class == CohomologyClass::Nontrivial && half.conjugate == ConjugateComparison::SameClass,
        format!("α = π/2 gives {:?}", half),
    )?;
    let c = ExpCocycle::new(j.clone(), angle(1, 3)).map_err(|e| e.to_string())?;
    let check = two_cocycle_check(&c, &gens, 100, cocert_cli::DEFAULT_SEED).map_err(|e| e.to_string())?;
    ensure(check.status.is_computed() && !check.any_refuted(), "cocycle check failed")?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("{} generators preserve J; classes as expected", gens.len()))
}

fn number_theory() -> Outcome {
    let start = Instant::now();
    let quartic = IntPolynomial::from_i64(&[1, 1, 0, 0, 1]);
    // oracle: disc(x^4 + p x + q) = -27 p^4 + 256 q^3
    let oracle = -27i64 + 256;
    ensure(discriminant(&quartic) == oracle.into(), format!("disc = {}", discriminant(&quartic)))?;
    ensure(oracle == 229, "oracle arithmetic")?;
    let res = resolvent_cubic(&quartic).map_err(|e| e.to_string())?;
    ensure(res == IntPolynomial::from_i64(&[-1, -4, 0, 1]), format!("resolvent {}", res.display_var("y")))?;
    // oracle: a monic integer cubic is irreducible iff it has no root among the divisors of its constant term
    let eval = |y: i64| y * y * y - 4 * y - 1;
    ensure(eval(1) != 0 && eval(-1) != 0, "resolvent has a rational root")?;
    let field = NumberField::new(quartic.clone()).map_err(|e| e.to_string())?;
    let free = intermediate_field_free(&field).map_err(|e| e.to_string())?;
    ensure(free.status.is_computed(), format!("intermediate_field_free is {}", free.status.label()))?;
    ensure(!is_cyclotomic_product(&quartic).map_err(|e| e.to_string())?, "x^4 + x + 1 reported cyclotomic")?;

    let cubic = NumberField::new(IntPolynomial::from_i64(&[1, -3, 0, 1])).map_err(|e| e.to_string())?;
    let sigma = GaloisAction::new(NumberFieldElement::from_i64(&cubic, &[-2, 0, 1])).map_err(|e| e.to_string())?;
    ensure(sigma.order() == 3, format!("σ has order {}", sigma.order()))?;
    // oracle: the roots are 2cos(2πk/9) for k = 1, 2, 4 and r^2 - 2 permutes them
    let roots: Vec<f64> = [1.0, 2.0, 4.0].iter().map(|k| 2.0 * (2.0 * std::f64::consts::PI * k / 9.0).cos()).collect();
    for r in &roots {
        ensure((r.powi(3) - 3.0 * r + 1.0).abs() < 1e-12, "numeric root check")?;
        let image = r * r - 2.0;
        ensure(roots.iter().any(|s| (s - image).abs() < 1e-12), "σ does not permute the real roots")?;
    }
    within(start, Duration::from_secs(1))?;
    Ok("disc 229, resolvent irreducible, σ(x) = x^2 - 2 has order 3".into())
}

fn finite_rigidity() -> Outcome {
    let start = Instant::now();
    let r = cli("dynamics finite-rigidity --n 3")?;
    ensure(r.claim.fully_computed(), format!("tree is {}", r.claim.status.label()))?;
    let direct = finite_action_rigidity(3).map_err(|e| e.to_string())?;
    ensure(direct == r.claim, "CLI and library trees differ")?;
    ensure(direct.children.len() >= 3, "missing clause nodes")?;
    ensure(
        direct.children.iter().all(|c| c.status.is_computed()),
        "a clause is not computed",
    )?;
    within(start, Duration::from_secs(10))?;
    Ok("both clauses verified over F_2^3 and GL(3,F_2)".into())
}

fn group_of(r: &Report) -> Result<SymbolicGroup, String> {
    serde_json::from_value(r.claim.data["group"].clone()).map_err(|e| format!("group: {e}"))
}

fn out_evaluators() -> Outcome {
    let start = Instant::now();
    let r = cli("out factor z4-sl4 --weights 1/2,1/3,1/6")?;
    ensure(!r.claim.any_refuted(), "z4-sl4 tree has a refutation")?;
    ensure(group_of(&r)?.is_trivial(), format!("z4-sl4 gives {}", group_of(&r)?))?;
    ensure(r.claim.count_status("AXIOM") > 0, "no AXIOM leaves")?;
    ensure(r.claim.axioms_cited(), "uncited AXIOM leaf")?;

    let weights = "1/4,1/4,1/2";
    let r = cli(&format!("out relation zn-gln --weights {weights}"))?;
    let expected = aut_atomic(&AtomicSpace::parse(weights).map_err(|e| e.to_string())?);
    ensure(group_of(&r)? == expected, format!("trivial K gives {}, expected {expected}", group_of(&r)?))?;

    let r = cli("out relation zn-gln --weights 1/3,1/3,1/3 --compact-group Z/3")?;
    let g = group_of(&r)?;
    ensure(g == SymbolicGroup::Cyclic { n: 2 }, format!("K = Z/3 gives {g}"))?;
    let star = find(&r.claim, |c| c.statement.starts_with("Aut*(K")).ok_or("no normalizer node")?;
    ensure(star.data["normalizer_order"] == json!(6), "normalizer is not S_3")?;
    within(start, Duration::from_secs(30))?;
    Ok(format!("trivial; Aut(X0) = {expected}; Z/3 -> Z/2"))
}

fn find(c: &CertifiedClaim, pred: impl Fn(&CertifiedClaim) -> bool + Copy) -> Option<&CertifiedClaim> {
    if pred(c) {
        return Some(c);
    }
    c.children.iter().find_map(|k| find(k, pred))
}

fn property_suites() -> Outcome {
    let reports = REPORTS.lock().unwrap().clone();
    let mut axioms = 0;
    for r in &reports {
        ensure(r.claim.axioms_cited(), format!("uncited AXIOM in `{}`", r.command.join(" ")))?;
        axioms += r.claim.count_status("AXIOM");
    }
    let commands = [
        "build sp6-pair",
        "verify condition-b zn-gln",
        "cocycle2 check --alpha 1/3 --dim 4",
        "dynamics weak-mixing zn-gln --set-a 1,2 --set-b 3",
        "out factor z4-sl4 --weights 1/2,1/3,1/6",
    ];
    for args in commands {
        let a = run(std::iter::once("cocert").chain(args.split_whitespace()));
        let b = run(std::iter::once("cocert").chain(args.split_whitespace()));
        ensure(a.stdout == b.stdout, format!("`{args}` is not byte-reproducible"))?;
        let par = format!("{args} --jobs 4");
        let c = run(std::iter::once("cocert").chain(par.split_whitespace()));
        let (ra, rc) = (a.report.ok_or("no report")?, c.report.ok_or("no report")?);
        ensure(ra.claim == rc.claim, format!("`{args}` depends on --jobs"))?;
    }
    // no registry pair claimed almost malnormal has an infinite conjugate intersection in a small ball
    let mut refuted = Vec::new();
    for args in [
        "verify malnormal gl2-golden --radius 4",
        "verify malnormal gl3-x3px1 --radius 3",
        "verify malnormal gl4-x4px1 --radius 3",
        "verify malnormal z4-sl4 --radius 2",
        "verify malnormal sp6-pair --radius 2",
    ] {
        if cli(args)?.claim.any_refuted() {
            refuted.push(args.split_whitespace().nth(2).unwrap_or(args));
        }
    }
    ensure(refuted.is_empty(), format!("malnormality scan REFUTED for {}", refuted.join(", ")))?;
    // seeded sampling agrees across runs and finds no defect
    let form = symplectic_form(2);
    let gens: Vec<IntMatrix> = AmbientGroupSpec::standard(Family::Sp, 2)
        .map_err(|e| e.to_string())?
        .generators
        .iter()
        .map(|g| g.linear().clone())
        .collect();
    let c = ExpCocycle::new(form, BigRational::new(2.into(), 7.into())).map_err(|e| e.to_string())?;
    let x = two_cocycle_check(&c, &gens, 500, 11).map_err(|e| e.to_string())?;
    let y = two_cocycle_check(&c, &gens, 500, 11).map_err(|e| e.to_string())?;
    ensure(x == y && !x.any_refuted(), "seeded cocycle sampling unstable")?;
    Ok(format!("{} reports, {axioms} AXIOM nodes all cited; {} commands reproducible", reports.len(), commands.len()))
}

fn discrepancy() -> Outcome {
    let reg = Registry::bundled();
    let r = cli("build gl3-x3px1")?;
    let pair = reg.build_example("gl3-x3px1").map_err(|e| e.to_string())?;
    let a = pair.cyclic_generator().ok_or("gl3-x3px1 is not cyclic")?;
    // oracle: cofactor expansion of the 3x3 matrix
    let e = |i: usize, j: usize| a.get(i, j).clone();
    let det = &e(0, 0) * (&e(1, 1) * &e(2, 2) - &e(1, 2) * &e(2, 1))
        - &e(0, 1) * (&e(1, 0) * &e(2, 2) - &e(1, 2) * &e(2, 0))
        + &e(0, 2) * (&e(1, 0) * &e(2, 1) - &e(1, 1) * &e(2, 0));
    ensure(det == a.det().map_err(|e| e.to_string())?, "Bareiss and cofactor determinants differ")?;
    ensure(det == (-1).into(), format!("det A = {det}"))?;
    ensure(pair.ambient.family == Family::Gl, "ambient is not GL(3,Z)")?;
    let sl3 = AmbientGroupSpec::standard(Family::Sl, 3).map_err(|e| e.to_string())?;
    ensure(!sl3.contains(&cocert_core::GroupElement::matrix(a.clone())), "A accepted into SL(3,Z)")?;
    ensure(
        pair.provenance.iter().any(|p| p.contains("determinant -1")),
        "provenance does not record the determinant",
    )?;
    let mut sl_claims = 0;
    r.claim.walk(&mut |c| {
        if c.statement.contains("SL(3") {
            sl_claims += 1;
        }
    });
    ensure(sl_claims == 0, "report mentions SL(3,Z)")?;
    Ok("det A = -1, recorded in GL(3,Z)".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("registry fidelity", registry_fidelity),
        ("malnormality scans", malnormality_scans),
        ("cohomology", cohomology),
        ("characters", characters),
        ("2-cocycles", two_cocycles),
        ("number theory", number_theory),
        ("finite rigidity", finite_rigidity),
        ("out evaluators", out_evaluators),
        ("property suites", property_suites),
        ("discrepancy handling", discrepancy),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let t = start.elapsed().as_secs_f64();
        match outcome {
            Ok(note) => println!("criterion {:>2} {name:<22} PASS {t:>7.2}s  {note}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name:<22} FAIL {t:>7.2}s  {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
