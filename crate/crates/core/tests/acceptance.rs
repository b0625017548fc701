//! Acceptance criteria, one line each. Every criterion is an exact check plus
//! a wall-clock budget; both must hold for a PASS. The process exits with a
//! nonzero status if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use qphase::calculus::VectorField;
use qphase::cli::{parse_in, print};
use qphase::hopf::{Bundle, Comodule};
use qphase::ncpoly::{check_associativity, check_local_confluence, AssocMode};
use qphase::report::DEFAULT_SEED;
use qphase::spaces::SpaceCatalog;
use qphase::symplectic::{level0_residuals, level2_residuals, Contraction, Symplectic};
use qphase::{Element, Scalar};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn failures(what: &str, (cases, fails): (usize, Vec<String>)) -> Result<usize, String> {
    if fails.is_empty() {
        Ok(cases)
    } else {
        Err(format!("{what}: {} of {cases} failed, first {}", fails.len(), fails[0]))
    }
}

fn bracket_table() -> Outcome {
    let spaces = SpaceCatalog::build().map_err(|e| e.to_string())?;
    let s = Symplectic::build(&spaces).map_err(|e| e.to_string())?;
    let names = ["x", "y", "px", "py"];
    let q = Scalar::q();
    let q2 = Scalar::q_pow(2);
    let expected = |a: &str, b: &str| match (a, b) {
        ("x", "px") | ("y", "py") => -q.clone(),
        ("px", "x") | ("py", "y") => q2.clone(),
        _ => Scalar::zero(),
    };
    for a in names {
        for b in names {
            let f = spaces.q.gen_by_name(a).map_err(|e| e.to_string())?;
            let g = spaces.q.gen_by_name(b).map_err(|e| e.to_string())?;
            let got = s.poisson(&f, &g);
            let want = Element::constant(expected(a, b));
            ensure(got == want, || format!("{{{a}, {b}}} = {}, expected {}", print::element(&spaces.q, &got), print::element(&spaces.q, &want)))?;
        }
    }
    Ok("16 generator pairs; {x,px} = {y,py} = -q, {px,x} = {py,y} = q², rest 0".into())
}

fn hamiltonian_fields() -> Outcome {
    let spaces = SpaceCatalog::build().map_err(|e| e.to_string())?;
    let q = Scalar::q();
    let expected = [
        ("x", VectorField::basis(2, Scalar::q_pow(2))),
        ("y", VectorField::basis(3, Scalar::q_pow(2))),
        ("px", VectorField::basis(0, -q.clone())),
        ("py", VectorField::basis(1, -q)),
    ];
    let mut matching = Vec::new();
    for c in [Contraction::Literal, Contraction::Transposed] {
        let s = Symplectic::with_contraction(&spaces, c).map_err(|e| e.to_string())?;
        let ok = expected.iter().all(|(z, want)| s.hamiltonian_vf(&spaces.q.gen_by_name(z).expect("coordinate")) == *want);
        if ok {
            matching.push(c);
        }
    }
    ensure(!matching.is_empty(), || "no contraction of ω with A_Sp reproduces the coordinate fields".into())?;
    Ok(format!("X_dz for x, y, px, py via K⁻¹∇z from ω·A_Sp; matching contraction orders: {matching:?}"))
}

fn covariance() -> Outcome {
    let spaces = SpaceCatalog::build().map_err(|e| e.to_string())?;
    let s = Symplectic::build(&spaces).map_err(|e| e.to_string())?;
    let r0 = level0_residuals(&spaces, &s.hat);
    let r2 = level2_residuals(&spaces, &s.hat);
    ensure(r0.len() == 16 && r0.iter().all(Element::is_zero), || "(R̂ - q)(x ⊗ x) has nonzero components".into())?;
    ensure(r2.len() == 16 && r2.iter().all(Element::is_zero), || "(R̂² - R̂ + 1)(ξ ⊗ ξ) has nonzero components".into())?;
    Ok(format!("16 + 16 components vanish; Sp convention {:?}", s.convention))
}

fn poincare_series() -> Outcome {
    let spaces = SpaceCatalog::build().map_err(|e| e.to_string())?;
    let dims = spaces.omega_q.graded_dims().map_err(|e| e.to_string())?;
    ensure(dims == [81, 324, 486, 324, 81], || format!("graded dims {dims:?}"))?;
    Ok(format!("graded dims {dims:?}"))
}

fn calculus() -> Outcome {
    let spaces = SpaceCatalog::build().map_err(|e| e.to_string())?;
    let c = qphase::calculus::Calculus::new(&spaces);
    let n = failures("D²", c.d_squared_failures())?;
    ensure(n == 1296, || format!("D² checked on {n} monomials"))?;
    let mut pairs = 0;
    for (gu, gv) in [(0, 0), (0, 1), (1, 0)] {
        pairs += failures(&format!("Leibniz ({gu},{gv})"), c.leibniz_failures(gu, gv))?;
    }
    Ok(format!("D² = 0 on {n} monomials; Leibniz on {pairs} basis pairs"))
}

fn action() -> Outcome {
    let bundle = Bundle::build().map_err(|e| e.to_string())?;
    let table = bundle.table_failures();
    ensure(table.is_empty(), || format!("r-form action differs from the table: {table:?}"))?;
    let n = failures("module algebra", bundle.module_algebra_failures(Comodule::M, false))?;
    Ok(format!("8 generator pairs; module-algebra law on {n} triples; leg order {:?}", bundle.hopf.leg_order()))
}

fn hopf_galois() -> Outcome {
    let bundle = Bundle::build().map_err(|e| e.to_string())?;
    let hopf = bundle.hopf_report();
    ensure(hopf.passed(), || format!("Hopf axioms: {hopf}"))?;
    let co = bundle.coinvariants().len();
    ensure(co == 9, || format!("coinvariants have dimension {co}"))?;
    let bad = bundle.translation_failures();
    ensure(bad.is_empty(), || format!("translation identity fails for {} basis elements", bad.len()))?;
    let cot = bundle.cotensor_basis().dim();
    ensure(cot == 81, || format!("cotensor dimension {cot}"))?;
    let report = bundle.cotensor_report();
    ensure(report.passed(), || format!("cotensor: {report}"))?;
    Ok(format!("Hopf axioms ({} cases); coinvariants 9; translation on 27; cotensor 81 with Q products", hopf.cases()))
}

fn bracket_consistency() -> Outcome {
    let spaces = SpaceCatalog::build().map_err(|e| e.to_string())?;
    let s = Symplectic::build(&spaces).map_err(|e| e.to_string())?;
    let n = failures("ω(X_df, X_dg) = ⟨df, X_dg⟩ = X_dg(f)", s.bracket_consistency_failures(DEFAULT_SEED, 500, false))?;
    let v = failures("{f(x,y), g(x,y)} = 0", s.vanishing_failures(DEFAULT_SEED, 50))?;
    Ok(format!("{n} pairs (16 generator + 500 random); {v} plane pairs vanish; seed {DEFAULT_SEED:#x}"))
}

fn rewrite_soundness() -> Outcome {
    let spaces = SpaceCatalog::build().map_err(|e| e.to_string())?;
    let mut checked = Vec::new();
    for p in [&spaces.m, &spaces.q] {
        let r = check_associativity(p, AssocMode::Exhaustive);
        ensure(r.passed(), || format!("associativity in {}: {:?}", p.name(), r.first_failure))?;
        checked.push(format!("{} {} triples", p.name(), r.triples_checked));
    }
    let mut overlaps = 0;
    for p in spaces.all() {
        let r = check_local_confluence(p);
        ensure(r.passed(), || format!("confluence in {}: {:?}", p.name(), r.failures.first()))?;
        overlaps += r.overlaps_checked;
    }
    Ok(format!("associativity on {}; {overlaps} overlaps resolve in six presentations", checked.join(", ")))
}

fn run_qps(args: &[&str]) -> Result<(i32, String, Duration), String> {
    let t = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_qps")).args(args).output().map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    Ok((out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned(), elapsed))
}

fn cli_contract() -> Outcome {
    let mut slowest = Duration::ZERO;
    let (code, out, t) = run_qps(&["bracket", "x", "px"])?;
    slowest = slowest.max(t);
    ensure(code == 0 && out.trim() == "-q", || format!("`bracket x px` gave exit {code}, output {out:?}"))?;

    let spaces = SpaceCatalog::build().map_err(|e| e.to_string())?;
    let basis = spaces.q.basis(None).map_err(|e| e.to_string())?;
    for m in &basis {
        let printed = print::element(&spaces.q, &Element::monomial(*m));
        let back = parse_in(&spaces.q, &printed).map_err(|e| e.to_string())?;
        ensure(print::element(&spaces.q, &back) == printed, || format!("round trip changed `{printed}`"))?;
    }
    // the same property through the binary on a few monomials
    for m in basis.iter().step_by(20) {
        let printed = print::element(&spaces.q, &Element::monomial(*m));
        let (code, out, t) = run_qps(&["normalize", "Q", &printed])?;
        slowest = slowest.max(t);
        ensure(code == 0 && out.trim() == printed, || format!("`normalize Q {printed}` gave {out:?}"))?;
    }

    let (code, out, t) = run_qps(&["check", "all"])?;
    slowest = slowest.max(t);
    ensure(code == 0, || format!("`check all` exited {code}: {}", out.lines().last().unwrap_or("")))?;
    ensure(slowest < Duration::from_secs(1), || format!("slowest command took {:.2} s", slowest.as_secs_f64()))?;
    Ok(format!(
        "bracket x px = -q; round trip on {} monomials; check all exit 0; slowest command {:.2} s",
        basis.len(),
        slowest.as_secs_f64()
    ))
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "Poisson bracket table", budget: secs(1), run: bracket_table },
        Criterion { id: 2, name: "Hamiltonian fields of the coordinates", budget: secs(1), run: hamiltonian_fields },
        Criterion { id: 3, name: "covariance identities", budget: secs(5), run: covariance },
        Criterion { id: 4, name: "Poincaré series of the phase-space forms", budget: secs(10), run: poincare_series },
        Criterion { id: 5, name: "D² = 0 and graded Leibniz", budget: secs(60), run: calculus },
        Criterion { id: 6, name: "action consistency", budget: secs(30), run: action },
        Criterion { id: 7, name: "Hopf and Galois certificates", budget: secs(120), run: hopf_galois },
        Criterion { id: 8, name: "bracket consistency", budget: secs(60), run: bracket_consistency },
        Criterion { id: 9, name: "rewrite-system soundness", budget: secs(600), run: rewrite_soundness },
        Criterion { id: 10, name: "CLI contract", budget: secs(60), run: cli_contract },
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    let mut ran = 0;
    for c in &criteria {
        if !filter.is_empty() && !filter.iter().any(|f| c.name.contains(f.as_str()) || c.id.to_string() == *f) {
            continue;
        }
        ran += 1;
        let t = Instant::now();
        let outcome = (c.run)();
        let elapsed = t.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed < c.budget => (true, d),
            Ok(d) => (false, format!("{d}; over budget")),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "[{}] {:>2}. {} ({:.2} s, budget {} s): {detail}",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            c.budget.as_secs()
        );
    }
    println!("acceptance: {} of {ran} criteria passed", ran - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
