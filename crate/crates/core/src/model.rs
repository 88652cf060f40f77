//! The concrete operators of the second-order expansion and the checks run
//! against them.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::expr::OpExpr;
use crate::kernel::{swap_labels, KernelPoly, TensorPoly, TwoForm};
use crate::numeric::{eval_array, NumericAssignment};
use crate::scalar::ExactScalar;
use crate::tensor::sym::*;
use crate::tensor::{Idx, IndexedPoly, Monomial, VarKind};

use VarKind::{Zb, Z};

fn c(x: char) -> Idx {
    Idx::ch(x)
}

fn pi(k: i32) -> ExactScalar {
    ExactScalar::pi_pow(k)
}

fn q(num: i64, den: i64) -> ExactScalar {
    ExactScalar::rational(num, den)
}

fn poly(terms: Vec<(ExactScalar, Monomial)>) -> IndexedPoly {
    let mut p = IndexedPoly::zero();
    for (s, m) in terms {
        p.add_term(m, s);
    }
    p
}

fn leaf(terms: Vec<(ExactScalar, Monomial)>) -> OpExpr {
    OpExpr::Kernel(KernelPoly::from_poly(poly(terms)).expect("no ladder symbols"))
}

fn zv(vars: &[(VarKind, char)]) -> Monomial {
    prod(&vars.iter().map(|&(k, x)| z(k, c(x))).collect::<Vec<_>>())
}

fn neg(x: OpExpr) -> OpExpr {
    OpExpr::scalar(q(-1, 1), x)
}

/// `O₁` as a bare operator:
/// `(4π√−1/3)[z_a z_b J_{abi} b_i⁺ − b_i z̄_a z̄_b J̄_{abi}]`.
pub fn o1() -> OpExpr {
    let (a, b, i) = (c('a'), c('b'), c('i'));
    let k = ExactScalar::i() * q(4, 3) * pi(1);
    let up = OpExpr::mul(Z, a, OpExpr::mul(Z, b, OpExpr::bplus(i, OpExpr::Id)));
    let down = OpExpr::b(i, OpExpr::mul(Zb, a, OpExpr::mul(Zb, b, OpExpr::Id)));
    OpExpr::bind(
        vec![a, b, i],
        OpExpr::Sum(vec![
            OpExpr::scale(IndexedPoly::term(j(a, b, i), k.clone()), up),
            OpExpr::scale(IndexedPoly::term(jb(a, b, i), -k), down),
        ]),
    )
}

/// `L⁻¹P^⊥O₁P`.
pub fn a_term() -> OpExpr {
    OpExpr::inv(1, OpExpr::Compose(vec![o1(), OpExpr::P]))
}

/// `P^⊥O₁P`.
pub fn a_prime() -> OpExpr {
    OpExpr::offdiag(OpExpr::Compose(vec![o1(), OpExpr::P]))
}

pub fn f1() -> OpExpr {
    neg(OpExpr::Sum(vec![a_term(), OpExpr::adjoint(a_term())]))
}

/// Quadratic curvature contraction `⟨R(𝓡, ∂_{x₂})𝓡, ∂_{x₄}⟩` with slot types
/// given by `mid` (second slot) and `last` (fourth slot).
fn r_quad(mid: char, last: char, i: Idx, jj: Idx) -> Vec<(ExactScalar, Monomial)> {
    let (s, t) = (c('s'), c('t'));
    let mut out = Vec::new();
    for (b1, k1) in [('u', Z), ('b', Zb)] {
        for (b3, k3) in [('u', Z), ('b', Zb)] {
            let pat: String = [b1, mid, b3, last].iter().collect();
            out.push((q(1, 1), prod(&[curv(&pat, [s, i, t, jj]), z(k1, s), z(k3, t)])));
        }
    }
    out
}

/// `(1/3) b_i b_j ⟨R(𝓡,∂z̄_i)𝓡,∂z̄_j⟩ P`.
fn o2_ladder2() -> OpExpr {
    let (i, jj) = (c('i'), c('j'));
    OpExpr::bind(vec![i, jj], OpExpr::scalar(q(1, 3), OpExpr::b(i, OpExpr::b(jj, leaf(r_quad('b', 'b', i, jj))))))
}

/// The cubic `Σ (∂^αR^L)(𝓡,∂z̄_i)Z^α/α!` with the second derivative of `J`
/// rewritten through its commutation and cyclic rules; only the all-barred
/// part stays symbolic.
pub fn rl_cubic(i: Idx) -> Vec<(ExactScalar, Monomial)> {
    let (jj, k, m, s, t) = (c('j'), c('k'), c('m'), c('s'), c('t'));
    let (a, b, e) = (c('a'), c('b'), c('e'));
    vec![
        (-q(3, 1) * pi(1), prod(&[j(jj, k, m), jb(s, i, m), zv(&[(Z, 'j'), (Z, 'k'), (Zb, 's')])])),
        (pi(1), prod(&[j(jj, k, m), jb(i, s, m), zv(&[(Z, 'j'), (Z, 'k'), (Zb, 's')])])),
        (-q(2, 3) * pi(1), prod(&[curv("ubub", [jj, s, k, i]), zv(&[(Z, 'j'), (Z, 'k'), (Zb, 's')])])),
        (-q(8, 3) * pi(1), prod(&[curv("ubbb", [jj, s, t, i]), zv(&[(Z, 'j'), (Zb, 's'), (Zb, 't')])])),
        (-ExactScalar::i() * pi(1), prod(&[ddjb(a, b, e, i), zv(&[(Zb, 'a'), (Zb, 'b'), (Zb, 'e')])])),
    ]
}

fn o2_ladder1() -> OpExpr {
    let i = c('i');
    OpExpr::bind(vec![i], OpExpr::scalar(q(1, 2), OpExpr::b(i, leaf(rl_cubic(i)))))
}

/// `⟨R(∂z_i,∂z̄_i)𝓡 − R(𝓡,∂z_i)∂z̄_i, ∂z̄_j⟩`.
fn r_lin(jj: Idx) -> Vec<(ExactScalar, Monomial)> {
    let (i, s) = (c('i'), c('s'));
    vec![
        (q(1, 1), prod(&[curv("ubub", [i, i, s, jj]), z(Z, s)])),
        (q(1, 1), prod(&[curv("ubbb", [i, i, s, jj]), z(Zb, s)])),
        (q(-1, 1), prod(&[curv("uubb", [s, i, i, jj]), z(Z, s)])),
        (q(-1, 1), prod(&[curv("bubb", [s, i, i, jj]), z(Zb, s)])),
    ]
}

fn o2_linear() -> OpExpr {
    let jj = c('j');
    OpExpr::bind(vec![jj], OpExpr::scalar(q(4, 3), OpExpr::b(jj, leaf(r_lin(jj)))))
}

/// The mixed second derivative of `J`, reduced to `−4π z_s z̄_t J_{sik}J̄_{tik}`.
fn nabla_nabla_j() -> Vec<(ExactScalar, Monomial)> {
    let (s, t, i, k) = (c('s'), c('t'), c('i'), c('k'));
    vec![(-q(4, 1) * pi(1), prod(&[j(s, i, k), jb(t, i, k), z(Z, s), z(Zb, t)]))]
}

fn o2_constant() -> Vec<(ExactScalar, Monomial)> {
    let (i, jj) = (c('i'), c('j'));
    vec![(q(4, 1), curv("ubbb", [i, jj, i, jj]))]
}

/// `⟨R(𝓡,∂z_i)𝓡,∂z̄_i⟩`.
fn r_trace() -> Vec<(ExactScalar, Monomial)> {
    r_quad('u', 'b', c('i'), c('i'))
}

/// `𝓛 = Σ_k b_k b_k⁺` applied to the body.
fn model_op(x: OpExpr) -> OpExpr {
    let k = c('k');
    OpExpr::bind(vec![k], OpExpr::b(k, OpExpr::bplus(k, x)))
}

/// `|(∇_𝓡J)𝓡|² = 4 z_a z_b z̄_c z̄_d J_{abk}J̄_{cdk}`.
fn nabla_j_sq() -> Vec<(ExactScalar, Monomial)> {
    let (a, b, d, e, k) = (c('a'), c('b'), c('d'), c('e'), c('k'));
    vec![(q(4, 1), prod(&[j(a, b, k), jb(d, e, k), zv(&[(Z, 'a'), (Z, 'b'), (Zb, 'd'), (Zb, 'e')])]))]
}

fn scaled(s: ExactScalar, terms: Vec<(ExactScalar, Monomial)>) -> Vec<(ExactScalar, Monomial)> {
    terms.into_iter().map(|(t, m)| (t * s.clone(), m)).collect()
}

/// `O₂P`.
pub fn o2p() -> OpExpr {
    OpExpr::Sum(vec![
        o2_ladder2(),
        o2_ladder1(),
        o2_linear(),
        leaf(nabla_nabla_j()),
        leaf(o2_constant()),
        OpExpr::scalar(q(-1, 3), model_op(leaf(r_trace()))),
        leaf(scaled(q(4, 9) * pi(2), nabla_j_sq())),
        leaf(vec![(q(1, 1), phi())]),
    ])
}

/// The sub-terms `I₂₁ … I₂₇`; index 0 holds `I₂₁`.
pub fn i2_parts() -> Vec<OpExpr> {
    let (i, jj, s, t) = (c('i'), c('j'), c('s'), c('t'));
    let i27 = OpExpr::bind(
        vec![i, jj],
        OpExpr::inv(
            1,
            OpExpr::b(
                i,
                OpExpr::b(jj, leaf(vec![(q(1, 1), prod(&[curv("bbbb", [s, i, t, jj]), z(Zb, s), z(Zb, t)]))])),
            ),
        ),
    );
    vec![
        OpExpr::inv(1, o2_ladder2()),
        OpExpr::inv(1, o2_ladder1()),
        OpExpr::inv(1, o2_linear()),
        OpExpr::inv(1, leaf(nabla_nabla_j())),
        OpExpr::scalar(q(-1, 3), OpExpr::inv(1, model_op(leaf(r_trace())))),
        OpExpr::inv(1, leaf(scaled(q(4, 9) * pi(2), nabla_j_sq()))),
        i27,
    ]
}

pub fn i_term(k: usize) -> OpExpr {
    let inv = |x| OpExpr::inv(1, x);
    match k {
        1 => inv(OpExpr::Compose(vec![o1(), a_term()])),
        2 => neg(inv(o2p())),
        3 => OpExpr::adjoint(i_term(1)),
        4 => OpExpr::adjoint(i_term(2)),
        5 => OpExpr::Compose(vec![a_term(), OpExpr::adjoint(a_term())]),
        6 => neg(OpExpr::Compose(vec![OpExpr::adjoint(a_prime()), OpExpr::inv(2, a_prime())])),
        _ => panic!("I-terms are numbered 1 to 6"),
    }
}

/// `P O₁ L⁻¹P^⊥ O₁ L⁻¹P^⊥`, composed directly.
pub fn i3_direct() -> OpExpr {
    let inv_id = || OpExpr::inv(1, OpExpr::Id);
    OpExpr::Compose(vec![OpExpr::P, o1(), inv_id(), o1(), inv_id()])
}

/// `−(P O₂) L⁻¹P^⊥`, composed directly.
pub fn i4_direct() -> OpExpr {
    neg(OpExpr::Compose(vec![OpExpr::adjoint(o2p()), OpExpr::inv(1, OpExpr::Id)]))
}

pub fn f2() -> OpExpr {
    OpExpr::Sum((1..=6).map(i_term).collect())
}

/// Named operator expressions of the expansion.
pub struct TermCatalog {
    pub exprs: BTreeMap<String, OpExpr>,
}

impl TermCatalog {
    pub fn build() -> TermCatalog {
        let mut exprs = BTreeMap::new();
        exprs.insert("O1".to_string(), o1());
        exprs.insert("A".to_string(), a_term());
        exprs.insert("O2P".to_string(), o2p());
        exprs.insert("F1".to_string(), f1());
        exprs.insert("F2".to_string(), f2());
        for k in 1..=6 {
            exprs.insert(format!("I{k}"), i_term(k));
        }
        exprs.insert("I3direct".to_string(), i3_direct());
        exprs.insert("I4direct".to_string(), i4_direct());
        for (k, x) in i2_parts().into_iter().enumerate() {
            exprs.insert(format!("I2{}", k + 1), x);
        }
        TermCatalog { exprs }
    }

    pub fn get(&self, name: &str) -> Option<&OpExpr> {
        self.exprs.get(name)
    }

    pub fn eval(&self, name: &str) -> Result<KernelPoly> {
        self.exprs[name].eval()
    }
}

/// Outcome of a named check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub check: String,
    pub passed: bool,
    /// Largest residual seen, relative where a reference value exists.
    pub residual: f64,
    pub tol: f64,
    /// Tag of the first comparison that failed.
    pub first_divergence: Option<String>,
    pub detail: Vec<String>,
}

impl Verdict {
    pub fn new(check: &str, tol: f64) -> Verdict {
        Verdict { check: check.into(), passed: true, residual: 0.0, tol, first_divergence: None, detail: Vec::new() }
    }

    pub fn record(&mut self, tag: &str, residual: f64) {
        self.residual = self.residual.max(residual);
        if residual > self.tol && self.passed {
            self.passed = false;
            self.first_divergence = Some(tag.into());
        }
        if residual > self.tol {
            self.detail.push(format!("{tag}: residual {residual:e}"));
        }
    }

    pub fn fail(&mut self, tag: &str, why: String) {
        if self.passed {
            self.passed = false;
            self.first_divergence = Some(tag.into());
        }
        self.detail.push(format!("{tag}: {why}"));
    }
}

/// `J_{jir}(J̄_{ijq} + J̄_{jiq})`, the recurring torsion table.
pub fn torsion_table() -> TensorPoly {
    let (i, jj, r, qq) = (c('i'), c('j'), TwoForm::r(), TwoForm::q());
    poly(vec![(q(1, 1), prod(&[j(jj, i, r), jb(i, jj, qq)])), (q(1, 1), prod(&[j(jj, i, r), jb(jj, i, qq)]))])
}

/// `⟨R(∂z_j,∂z̄_i)∂z_i,∂z̄_j⟩`.
pub fn mixed_trace() -> TensorPoly {
    let (i, jj) = (c('i'), c('j'));
    poly(vec![(q(1, 1), curv("ubub", [jj, i, i, jj]))])
}

/// `b₁ = (1/π)⟨R(∂z_j,∂z̄_i)∂z_i,∂z̄_j⟩`.
pub fn b1() -> TensorPoly {
    mixed_trace().scale(&pi(-1))
}

fn zzb_form(t: TensorPoly) -> TwoForm {
    TwoForm { zzb: t, ..Default::default() }
}

/// Expected diagonal two-forms of the six I-terms, with their tags.
pub fn i_term_tables() -> Vec<(&'static str, usize, TwoForm)> {
    let t = torsion_table();
    let i2 = TwoForm::omega().scale_tensor(&mixed_trace()).scale(&-ExactScalar::i()).add(&zzb_form(t.scale(&q(1, 3))));
    vec![
        ("(4.12)", 1, zzb_form(t.scale(&q(-2, 9)))),
        ("(4.13)", 3, zzb_form(t.scale(&q(-2, 9)))),
        ("(4.17)", 5, zzb_form(t.scale(&q(-1, 9)))),
        ("(4.19)", 6, zzb_form(t.scale(&q(-1, 9)))),
        ("(4.81)", 2, i2.clone()),
        ("(4.82)", 4, i2),
    ]
}

fn max_abs(v: &[num_complex::Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Relative numeric distance between two coefficient tables in `r, q`.
pub fn table_residual(got: &TensorPoly, want: &TensorPoly, a: &NumericAssignment) -> Result<f64> {
    let free = [TwoForm::r(), TwoForm::q()];
    let g = eval_array(got, a, &free)?;
    let w = eval_array(want, a, &free)?;
    let diff: Vec<_> = g.iter().zip(&w).map(|(x, y)| x - y).collect();
    Ok(max_abs(&diff) / max_abs(&w).max(1.0))
}

pub fn form_residual(got: &TwoForm, want: &TwoForm, a: &NumericAssignment) -> Result<f64> {
    Ok(table_residual(&got.zzb, &want.zzb, a)?
        .max(table_residual(&got.zz, &want.zz, a)?)
        .max(table_residual(&got.zbzb, &want.zbzb, a)?))
}

/// Vanishing of `F₁` and its first derivatives at the origin, symbolically
/// and under `seeds` for each `n`.
pub fn check_lemma_3_2(ns: &[usize], seeds: &[u64], tol: f64) -> Result<Verdict> {
    let mut v = Verdict::new("lemma-3.2", tol);
    let f = f1().eval()?;
    let r = TwoForm::r();
    let mut coeffs = vec![("(2.12)", f.eval_origin())];
    for kind in [Z, Zb, VarKind::Zp, VarKind::Zbp] {
        coeffs.push(("Lemma 3.2", f.first_derivative_at_origin(kind, r)));
    }
    for (tag, p) in &coeffs {
        if !p.is_zero() {
            v.fail(tag, format!("symbolic residual {p}"));
        }
    }
    for &n in ns {
        for &seed in seeds {
            let a = NumericAssignment::sample_admissible(n, seed)?;
            for (tag, p) in &coeffs {
                let free: Vec<Idx> = p.free_labels();
                v.record(tag, max_abs(&eval_array(p, &a, &free)?));
            }
        }
    }
    Ok(v)
}

/// The second-order identity at the origin: per-term tables first, then the
/// total against `b₁ω`.
pub fn check_theorem_3_3(ns: &[usize], seeds: &[u64], tol: f64) -> Result<Verdict> {
    let mut v = Verdict::new("theorem-3.3", tol);
    let forms: Vec<TwoForm> = (1..=6).map(|k| Ok(i_term(k).eval()?.diagonal_two_form())).collect::<Result<_>>()?;
    let lhs = f2().eval()?.diagonal_two_form().scale(&(ExactScalar::i() * q(1, 2) * pi(-1)));
    let want = TwoForm::omega().scale_tensor(&b1());
    for &n in ns {
        for &seed in seeds {
            let a = NumericAssignment::sample_admissible(n, seed)?;
            for (tag, k, table) in &i_term_tables() {
                v.record(tag, form_residual(&forms[k - 1], table, &a)?);
            }
            v.record("(4.83)", form_residual(&lhs, &want, &a)?);
        }
    }
    Ok(v)
}

/// `F₂(0,0) = b₁` and `F₁(0,0) = 0`.
pub fn check_origin_values(ns: &[usize], seeds: &[u64], tol: f64) -> Result<Verdict> {
    let mut v = Verdict::new("origin-values", tol);
    let f1_0 = f1().eval()?.eval_origin();
    if !f1_0.is_zero() {
        v.fail("(2.12)", format!("F1(0,0) = {f1_0}"));
    }
    let diff = f2().eval()?.eval_origin().sub(&b1());
    for &n in ns {
        for &seed in seeds {
            let a = NumericAssignment::sample_admissible(n, seed)?;
            let d = eval_array(&diff, &a, &[])?[0].norm();
            let scale = eval_array(&b1(), &a, &[])?[0].norm().max(1.0);
            v.record("(4.84)", d / scale);
        }
    }
    Ok(v)
}

fn t1(s: ExactScalar, m: Monomial) -> TensorPoly {
    IndexedPoly::term(m, s)
}

/// `J_{abk} J̄_{cdk}` written as `ab;cd` over single-letter labels.
fn jj(spec: &str) -> Monomial {
    let l: Vec<Idx> = spec.chars().filter(|x| x.is_ascii_alphabetic()).map(c).collect();
    let k = c('k');
    prod(&[j(l[0], l[1], k), jb(l[2], l[3], k)])
}

/// `J_{abc} J̄_{def}` over single-letter labels.
fn j3(spec: &str) -> Monomial {
    let l: Vec<Idx> = spec.chars().filter(|x| x.is_ascii_alphabetic()).map(c).collect();
    prod(&[j(l[0], l[1], l[2]), jb(l[3], l[4], l[5])])
}

fn cv(pattern: &str, labels: &str) -> Monomial {
    let l: Vec<Idx> = labels.chars().map(c).collect();
    curv(pattern, [l[0], l[1], l[2], l[3]])
}

/// `|∇J|² = 16 J_{ijk}J̄_{ijk}`.
pub fn nabla_j_norm() -> TensorPoly {
    t1(q(16, 1), jj("ij;ij"))
}

fn omega_times(t: TensorPoly) -> TwoForm {
    TwoForm::omega().scale_tensor(&t)
}

/// A `dz̄_r ∧ dz̄_q` coefficient table, stored antisymmetrised.
fn zbzb_form(t: TensorPoly) -> TwoForm {
    let anti = t.sub(&swap_labels(&t, TwoForm::r(), TwoForm::q())).scale(&q(1, 2));
    TwoForm { zbzb: anti, ..Default::default() }
}

fn sum(ts: Vec<(ExactScalar, Monomial)>) -> TensorPoly {
    poly(ts)
}

/// Expected diagonal two-forms of the `O₂` sub-terms, by catalog name.
pub fn i2_part_tables() -> Vec<(&'static str, &'static str, TwoForm)> {
    let i = ExactScalar::i();
    let one = || q(1, 1);
    let rm = mixed_trace();
    let norm = nabla_j_norm();

    let i21 = omega_times(sum(vec![(q(2, 1), cv("ubub", "jiij")), (q(-1, 1), cv("uubb", "jiij"))]))
        .scale(&(-i.clone() * q(1, 3)))
        .add(&zzb_form(sum(vec![(q(2, 3), cv("ubub", "rjjq")), (q(1, 3), cv("uubb", "jrjq"))])))
        .add(&zbzb_form(sum(vec![(q(1, 3), cv("ubbb", "jrjq")), (q(1, 3), cv("ubbb", "jjrq"))])));

    let nabla_pair_omega = sum(vec![(q(2, 1), jj("ji;ji")), (q(2, 1), jj("ji;ij"))]);
    let nabla_pair_rq =
        sum(vec![(q(2, 1), jj("jr;jq")), (q(2, 1), jj("jr;qj")), (q(2, 1), jj("rj;jq")), (q(2, 1), jj("rj;qj"))]);
    let i22_raw = omega_times(
        nabla_pair_omega
            .scale(&(q(1, 8) * pi(-1)))
            .add(&sum(vec![(q(1, 12) * pi(-1), cv("ubub", "iijj")), (q(1, 12) * pi(-1), cv("ubub", "jiij"))])),
    )
    .scale(&(-q(2, 1) * pi(1) * i.clone()))
    .add(&zzb_form(nabla_pair_rq.scale(&q(1, 8))))
    .add(&zzb_form(sum(vec![(q(1, 6), cv("ubub", "jjrq")), (q(1, 6), cv("ubub", "rjjq"))])))
    .add(&zbzb_form(sum(vec![(q(1, 3), cv("ubbb", "jjrq")), (q(1, 3), cv("ubbb", "jrjq"))])));

    let i22 = omega_times(norm.scale(&q(5, 96)).add(&rm.scale(&q(1, 3))))
        .scale(&-i.clone())
        .add(&zzb_form(sum(vec![(q(5, 4), j3("jir;jiq")), (q(-1, 1), j3("jir;ijq"))])))
        .add(&zzb_form(sum(vec![(q(1, 6), cv("uubb", "jrjq")), (q(1, 3), cv("ubub", "rjjq"))])))
        .add(&zbzb_form(sum(vec![(q(1, 3), cv("ubbb", "jjrq")), (q(1, 3), cv("ubbb", "jrjq"))])));

    let i23 = omega_times(sum(vec![(one(), cv("ubub", "jiij")), (q(-2, 1), cv("uubb", "jiij"))]))
        .scale(&(i.clone() * q(4, 3)))
        .add(&zzb_form(sum(vec![(q(-2, 3), cv("ubub", "riiq")), (q(-4, 3), cv("uubb", "iriq"))])))
        .add(&zbzb_form(sum(vec![(q(-2, 3), cv("ubbb", "iirq")), (q(-2, 3), cv("ubbb", "iriq"))])));

    let i24_raw = omega_times(t1(q(2, 1), jj("ji;ji"))).scale(&-i.clone()).add(&zzb_form(t1(one(), jj("ri;qi"))));
    let i24 = omega_times(norm.scale(&q(-1, 8)))
        .scale(&i)
        .add(&zzb_form(sum(vec![(q(2, 1), j3("ijr;ijq")), (q(-2, 1), j3("ijr;jiq"))])));

    let i25 = omega_times(norm.scale(&q(-1, 96)).add(&t1(q(1, 3), cv("ubub", "ijji"))))
        .scale(&(i.clone() * q(2, 1)))
        .add(&zzb_form(sum(vec![(q(1, 3), cv("uubb", "iriq")), (q(-1, 3), cv("ubub", "riiq"))])));

    let i26 = omega_times(norm.scale(&q(1, 8)))
        .scale(&i)
        .add(&zzb_form(sum(vec![(q(-10, 3), j3("ijr;ijq")), (q(8, 3), j3("ijr;jiq"))])));

    let minus_i2 = omega_times(rm.clone()).scale(&i).add(&zzb_form(sum(vec![
        (q(-1, 2), cv("uubb", "jrjq")),
        (q(-1, 12), j3("jir;jiq")),
        (q(-1, 3), j3("jir;ijq")),
    ])));

    vec![
        ("(4.33)", "I21", i21),
        ("(4.73)", "I22", i22_raw),
        ("(4.75)", "I22", i22),
        ("(4.38)", "I23", i23),
        ("(4.78)", "I24", i24_raw),
        ("(4.78)", "I24", i24),
        ("(4.43)", "I25", i25),
        ("(4.56)", "I26", i26),
        ("(4.79)", "-I2", minus_i2),
    ]
}
