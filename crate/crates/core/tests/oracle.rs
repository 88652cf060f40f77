mod common;

use std::collections::HashMap;
use std::f64::consts::PI;

use fockcalc::expr::OpExpr;
use fockcalc::kernel::Peel;
use fockcalc::model::TermCatalog;
use fockcalc::oracle::{build_generators, compare, expression_vs_kernel, FockBasis, Oracle};
use fockcalc::regression::{rules, Relation, Target};
use fockcalc::{ExactScalar, FockNF, Idx, NumericAssignment, VarKind};
use proptest::prelude::*;

fn spectrum_ok(n: usize, d: usize) {
    let g = build_generators(n, d).unwrap();
    let eig = g.laplacian().symmetric_eigenvalues();
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for &e in eig.iter() {
        let k = (e / (4.0 * PI)).round();
        assert!((e - 4.0 * PI * k).abs() < 1e-8, "eigenvalue {e}");
        *counts.entry(k as usize).or_default() += 1;
    }
    for (level, count) in counts {
        let want = (0..g.basis.len()).filter(|&s| g.basis.level(s) == level).count();
        assert_eq!(count, want, "multiplicity of 4π·{level}");
    }
}

#[test]
fn laplacian_spectrum() {
    spectrum_ok(1, 10);
    spectrum_ok(2, 8);
}

#[test]
fn projector_is_orthogonal() {
    let g = build_generators(2, 6).unwrap();
    let p = &g.p;
    assert!((p * p - p).norm() < 1e-12);
    assert!((p.adjoint() - p).norm() < 1e-12);
    // the projector's range is the kernel of every b⁺_j
    for bp in &g.bplus {
        assert!((bp * p).norm() < 1e-12);
    }
}

fn maxabs(m: &fockcalc::oracle::CMat) -> f64 {
    m.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

fn l(c: char) -> Idx {
    Idx::ch(c)
}

#[test]
fn projector_idempotent_as_expression() {
    let basis = FockBasis::new(2, 5);
    let a = NumericAssignment::sample_admissible(2, 1).unwrap();
    let o = Oracle::new(&basis, &a).unwrap();
    let none = HashMap::new();
    let pp = OpExpr::Compose(vec![OpExpr::P, OpExpr::P]);
    assert!(
        compare(&o.matrix_of(&OpExpr::P, &none).unwrap(), &o.matrix_of(&pp, &none).unwrap()).unwrap().residual < 1e-14
    );
}

#[test]
fn origin_value_of_quartic_projection() {
    let basis = FockBasis::new(1, 6);
    let a = NumericAssignment::sample_admissible(1, 0).unwrap();
    let o = Oracle::new(&basis, &a).unwrap();
    let one = Idx::Fixed(1);
    let x = OpExpr::project(OpExpr::mul(
        VarKind::Zb,
        one,
        OpExpr::mul(VarKind::Zb, one, OpExpr::mul(VarKind::Z, one, OpExpr::mul(VarKind::Z, one, OpExpr::P))),
    ));
    let m = o.matrix_of(&x, &HashMap::new()).unwrap();
    assert!((m.mat[(0, 0)].re - 2.0 / (PI * PI)).abs() < 1e-12 && m.mat[(0, 0)].im.abs() < 1e-12);
}

#[test]
fn inverse_on_single_ladder() {
    let basis = FockBasis::new(1, 6);
    let a = NumericAssignment::sample_admissible(1, 0).unwrap();
    let o = Oracle::new(&basis, &a).unwrap();
    let one = Idx::Fixed(1);
    let bz = OpExpr::b(one, OpExpr::mul(VarKind::Z, one, OpExpr::P));
    let none = HashMap::new();
    let lhs = o.matrix_of(&OpExpr::inv(1, bz.clone()), &none).unwrap();
    let rhs = o.matrix_of(&OpExpr::scalar(ExactScalar::rational(1, 4) * ExactScalar::pi_pow(-1), bz), &none).unwrap();
    assert!(compare(&lhs, &rhs).unwrap().residual < 1e-12);
}

const PIPELINE: &[&str] = &["F1", "I1", "I2", "I3", "I4", "I5", "I6", "I21", "I22", "I23", "I24", "I25", "I26", "I27"];

#[test]
fn pipeline_kernels_match_their_definitions() {
    let cat = TermCatalog::build();
    for n in [1, 2] {
        for name in PIPELINE {
            let x = cat.get(name).unwrap();
            let c = expression_vs_kernel(x, n, None, 7).unwrap();
            assert!(c.residual <= 1e-9, "{name} n={n}: {c:?}");
            assert!(c.block > 1);
        }
    }
}

#[test]
fn enlarging_truncation_does_not_leak() {
    let cat = TermCatalog::build();
    let x = cat.get("I5").unwrap();
    let a = NumericAssignment::sample_admissible(2, 3).unwrap();
    let none = HashMap::new();
    let (small, large) = (FockBasis::new(2, 5), FockBasis::new(2, 7));
    let ms = Oracle::new(&small, &a).unwrap().matrix_of(x, &none).unwrap();
    let ml = Oracle::new(&large, &a).unwrap().matrix_of(x, &none).unwrap();
    let m = ms.exact;
    let diff = maxabs(&(ms.mat.view((0, 0), (m, m)) - ml.mat.view((0, 0), (m, m))));
    assert!(diff <= 1e-12 * maxabs(&ms.mat).max(1.0), "{diff}");
}

#[test]
fn rules_hold_numerically() {
    let a = NumericAssignment::sample_admissible(2, 5).unwrap();
    let basis = FockBasis::new(2, 6);
    let o = Oracle::new(&basis, &a).unwrap();
    let labels = ['i', 'j', 'k', 's', 't', 'a', 'c'];
    for (case, r) in rules().into_iter().enumerate() {
        let Target::Kernel(rhs, Relation::Exact) = &r.target else { continue };
        let bind: HashMap<Idx, usize> = labels.iter().enumerate().map(|(k, &c)| (l(c), (case + k) % 2)).collect();
        let c = compare(&o.matrix_of(&r.lhs, &bind).unwrap(), &o.matrix_of(rhs, &bind).unwrap()).unwrap();
        assert!(c.residual < 1e-10, "{} {}: {c:?}", r.tag, r.label);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn adjoint_is_conjugate_transpose(k in common::kernel(2, 4)) {
        let a = NumericAssignment::sample_admissible(2, 0).unwrap();
        let basis = FockBasis::new(2, 5);
        let o = Oracle::new(&basis, &a).unwrap();
        let none = HashMap::new();
        let m = o.matrix_of_kernel(&k, &none).unwrap();
        let madj = o.matrix_of_kernel(&k.adjoint(), &none).unwrap();
        let e = m.exact.min(madj.exact);
        let lhs = madj.mat.view((0, 0), (e, e)).into_owned();
        let rhs = m.mat.view((0, 0), (e, e)).adjoint();
        prop_assert!(maxabs(&(lhs - rhs)) <= 1e-10 * maxabs(&m.mat).max(1.0));
    }

    #[test]
    fn normal_form_roundtrip_matches(k in common::kernel(2, 4)) {
        let a = NumericAssignment::sample_admissible(2, 0).unwrap();
        let basis = FockBasis::new(2, 5);
        let o = Oracle::new(&basis, &a).unwrap();
        let none = HashMap::new();
        let back = FockNF::of(&k, Peel::First).expand();
        let c = compare(&o.matrix_of_kernel(&k, &none).unwrap(), &o.matrix_of_kernel(&back, &none).unwrap()).unwrap();
        prop_assert!(c.residual <= 1e-10);
    }
}
