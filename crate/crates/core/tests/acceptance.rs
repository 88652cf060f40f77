//! Acceptance gate: one line per criterion, non-zero exit on any failure.

mod common;

use std::time::{Duration, Instant};

use fockcalc::kernel::{KernelPoly, Peel};
use fockcalc::model::{check_lemma_3_2, check_origin_values, check_theorem_3_3, f1, TermCatalog};
use fockcalc::oracle::{build_generators, expression_vs_kernel, quadrature_gram, CMat};
use fockcalc::regression::rules;
use fockcalc::suite::{run_check, SuiteConfig};
use fockcalc::{FockNF, Idx, VarKind};
use proptest::test_runner::{Config, TestCaseError, TestRunner};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);

fn maxabs(m: &CMat) -> f64 {
    m.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

fn seeds() -> Vec<u64> {
    (0..5).collect()
}

fn spectral() -> Outcome {
    let four_pi = 4.0 * std::f64::consts::PI;
    let (mut eig_err, mut proj_err) = (0.0f64, 0.0f64);
    for (n, d) in [(1, 10), (2, 8)] {
        let g = build_generators(n, d).map_err(|e| e.to_string())?;
        let eig = g.laplacian().symmetric_eigenvalues();
        let mut got: Vec<f64> = eig.iter().copied().collect();
        got.sort_by(f64::total_cmp);
        let mut want: Vec<f64> = (0..g.basis.len()).map(|s| four_pi * g.basis.level(s) as f64).collect();
        want.sort_by(f64::total_cmp);
        for (x, y) in got.iter().zip(&want) {
            eig_err = eig_err.max((x - y).abs());
        }
        proj_err = proj_err.max(maxabs(&(&g.p * &g.p - &g.p))).max(maxabs(&(g.p.adjoint() - &g.p)));
    }
    let gram = quadrature_gram(4);
    let ortho = maxabs(&(&gram - CMat::identity(gram.nrows(), gram.ncols())));
    let msg = format!(
        "eigenvalues {eig_err:.1e} (tol 1e-8), projector {proj_err:.1e}, orthonormality {ortho:.1e} (tol 1e-10)"
    );
    if eig_err <= 1e-8 && proj_err <= 1e-10 && ortho <= 1e-10 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn reduction() -> Outcome {
    let table = rules();
    for r in &table {
        let d = r.discrepancy().map_err(|e| e.to_string())?;
        if d.iter().any(|p| !p.is_zero()) {
            return Err(format!("{} {} differs", r.tag, r.label));
        }
    }
    Ok(format!("{} rules reproduced exactly", table.len()))
}

fn first_order() -> Outcome {
    let k = f1().eval().map_err(|e| e.to_string())?;
    for kind in [VarKind::Z, VarKind::Zb, VarKind::Zp, VarKind::Zbp] {
        if !k.first_derivative_at_origin(kind, Idx::ch('r')).is_zero() {
            return Err(format!("symbolic first derivative in {kind:?} is non-zero"));
        }
    }
    let v = check_lemma_3_2(&[1, 2, 3], &seeds(), 1e-10).map_err(|e| e.to_string())?;
    let msg = format!("symbolic residual empty, numeric {:.1e} (tol 1e-10, n=1..3, 5 seeds)", v.residual);
    if v.passed {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn second_order() -> Outcome {
    let v = check_theorem_3_3(&[1, 2, 3], &seeds(), 1e-9).map_err(|e| e.to_string())?;
    let msg = format!("residual {:.1e} (tol 1e-9, n=1..3, 5 seeds)", v.residual);
    match (v.passed, v.first_divergence) {
        (true, _) => Ok(msg),
        (false, tag) => Err(format!("{msg}; first divergence at {}", tag.unwrap_or_else(|| "?".into()))),
    }
}

fn diagonal() -> Outcome {
    if !f1().eval().map_err(|e| e.to_string())?.eval_origin().is_zero() {
        return Err("F1(0,0) is not exactly zero".into());
    }
    let v = check_origin_values(&[1, 2, 3], &seeds(), 1e-9).map_err(|e| e.to_string())?;
    let msg = format!("F1(0,0) = 0 exactly, F2(0,0) - b1 residual {:.1e} (tol 1e-9)", v.residual);
    if v.passed {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn oracle() -> Outcome {
    let cat = TermCatalog::build();
    let mut worst = (0.0f64, String::new());
    let names = ["F1", "I1", "I2", "I3", "I4", "I5", "I6", "I21", "I22", "I23", "I24", "I25", "I26", "I27"];
    for n in [1, 2] {
        for name in names {
            let c = expression_vs_kernel(cat.get(name).unwrap(), n, None, 42).map_err(|e| e.to_string())?;
            if c.residual > worst.0 || worst.1.is_empty() {
                worst = (c.residual, format!("{name} n={n} D={}", c.d));
            }
        }
    }
    let msg = format!("{} kernels, worst {:.1e} at {} (tol 1e-9)", 2 * names.len(), worst.0, worst.1);
    if worst.0 <= 1e-9 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn property(name: &str, cases: u32, f: impl Fn(&mut TestRunner) -> Result<(), String>) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    f(&mut runner).map_err(|e| format!("{name}: {e}"))
}

fn check(ok: bool, what: &str) -> Result<(), TestCaseError> {
    if ok {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

fn structural() -> Outcome {
    const CASES: u32 = 128;
    let k4 = || common::kernel(2, 4);
    property("involution", CASES, |r| {
        r.run(&k4(), |k| check(k.adjoint().adjoint() == k, "adjoint twice")).map_err(|e| e.to_string())
    })?;
    property("anti-homomorphism", CASES, |r| {
        r.run(&(k4(), k4()), |(a, b)| {
            check(a.compose(&b).adjoint() == b.adjoint().compose(&a.adjoint()), "(AB)* = B*A*")
        })
        .map_err(|e| e.to_string())
    })?;
    property("idempotence", CASES, |r| {
        r.run(&k4(), |k| {
            let (p, o) = (k.project_ker(), k.offdiag());
            check(p.project_ker() == p && o.offdiag() == o && p.add(&o) == k, "projections")
        })
        .map_err(|e| e.to_string())
    })?;
    property("associativity", CASES, |r| {
        r.run(&(k4(), k4(), k4()), |(a, b, c)| {
            check(a.compose(&b).compose(&c) == a.compose(&b.compose(&c)), "(AB)C = A(BC)")
        })
        .map_err(|e| e.to_string())
    })?;
    property("normal form", CASES, |r| {
        r.run(&k4(), |k| {
            let first = FockNF::of(&k, Peel::First);
            check(first == FockNF::of(&k, Peel::Last) && first.expand() == k, "confluence and roundtrip")
        })
        .map_err(|e| e.to_string())
    })?;
    check_unit().map_err(|e| format!("projector: {e}"))?;
    let cfg = SuiteConfig { ns: vec![1, 2, 3], seed: 0, trunc: None, tol: 1e-12 };
    for name in ["structure", "adjoint-routes"] {
        let rec = run_check(name, &cfg).map_err(|e| e.to_string())?;
        if !rec.passed() {
            return Err(format!("{name}: {}", rec.detail.join("; ")));
        }
    }
    Ok(format!("5 properties x {CASES} cases, parity, self-adjointness, potential independence: 0 failures"))
}

fn check_unit() -> Result<(), String> {
    let p = KernelPoly::p();
    if p.compose(&p) != p || p.adjoint() != p {
        return Err("P is not an orthogonal projection".into());
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 spectral facts", Some(Duration::from_secs(5)), spectral),
        ("2 reduction rules", Some(Duration::from_secs(10)), reduction),
        ("3 first-order vanishing", Some(Duration::from_secs(10)), first_order),
        ("4 second-order identity", Some(Duration::from_secs(60)), second_order),
        ("5 diagonal values", None, diagonal),
        ("6 oracle equivalence", Some(Duration::from_secs(120)), oracle),
        ("7 structural properties", None, structural),
    ];
    let mut failed = 0;
    for (name, limit, f) in criteria {
        let t = Instant::now();
        let out = f();
        let took = t.elapsed();
        let slow = limit.is_some_and(|l| took > l);
        let (ok, msg) = match out {
            Ok(m) if slow => (false, format!("{m}; took longer than {:?}", limit.unwrap())),
            Ok(m) => (true, m),
            Err(m) => (false, m),
        };
        if !ok {
            failed += 1;
        }
        println!("{} criterion {name}: {msg} [{:.2}s]", if ok { "PASS" } else { "FAIL" }, took.as_secs_f64());
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
