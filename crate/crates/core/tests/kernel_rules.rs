use fockcalc::kernel::{FockNF, Gen, KernelPoly, Peel, TwoForm};
use fockcalc::tensor::sym::*;
use fockcalc::{ExactScalar, Idx, IndexedPoly, Monomial, VarKind};

use VarKind::{Zb, Zbp, Zp, B, Z};

fn c(x: char) -> Idx {
    Idx::ch(x)
}

fn pi(k: i32) -> ExactScalar {
    ExactScalar::pi_pow(k)
}

fn q(num: i64, den: i64) -> ExactScalar {
    ExactScalar::rational(num, den)
}

fn kernel(terms: Vec<(ExactScalar, Monomial)>) -> KernelPoly {
    let mut p = IndexedPoly::zero();
    for (s, m) in terms {
        p.add_term(m, s);
    }
    KernelPoly::from_poly(p).unwrap()
}

fn zs(vars: &[(VarKind, char)]) -> Monomial {
    prod(&vars.iter().map(|&(k, x)| z(k, c(x))).collect::<Vec<_>>())
}

#[test]
fn ladder_on_projector() {
    let p = KernelPoly::p();
    assert!(p.apply(Gen::Bplus(c('j'))).is_zero());
    let expect = kernel(vec![(q(2, 1) * pi(1), zs(&[(Zb, 'j')])), (q(-2, 1) * pi(1), zs(&[(Zbp, 'j')]))]);
    assert_eq!(p.apply(Gen::B(c('j'))), expect);
}

#[test]
fn lowering_on_linear_kernel() {
    let k = kernel(vec![(q(1, 1), zs(&[(Z, 's')]))]);
    let expect = kernel(vec![
        (q(-2, 1), delta(c('j'), c('s'))),
        (q(2, 1) * pi(1), zs(&[(Z, 's'), (Zb, 'j')])),
        (q(-2, 1) * pi(1), zs(&[(Z, 's'), (Zbp, 'j')])),
    ]);
    assert_eq!(k.apply(Gen::B(c('j'))), expect);
}

#[test]
fn normal_form_of_mixed_quadratic() {
    let k = kernel(vec![(q(1, 1), zs(&[(Z, 's'), (Zb, 't')]))]);
    let mut expect = IndexedPoly::zero();
    expect.add_term(zs(&[(B, 't'), (Z, 's')]), q(1, 2) * pi(-1));
    expect.add_term(delta(c('s'), c('t')), pi(-1));
    expect.add_term(zs(&[(Z, 's'), (Zbp, 't')]), q(1, 1));
    assert_eq!(k.fock_normal_form(), FockNF(expect));
    assert_eq!(k.fock_normal_form().expand(), k);
}

#[test]
fn normal_form_of_quartic() {
    // z̄_s z̄_t z_j z_k P: leading part (1/4π²) b_s b_t z_j z_k P
    let k = kernel(vec![(q(1, 1), zs(&[(Zb, 's'), (Zb, 't'), (Z, 'j'), (Z, 'k')]))]);
    let nf = k.fock_normal_form();
    let top = nf.0.filter(|m| m.b_len() == 2);
    assert_eq!(top, IndexedPoly::term(zs(&[(B, 's'), (B, 't'), (Z, 'j'), (Z, 'k')]), q(1, 4) * pi(-2)));
    assert_eq!(nf.expand(), k);
    assert_eq!(FockNF::of(&k, Peel::Last), nf);
}

#[test]
fn projection_keeps_empty_words() {
    let zszt = kernel(vec![(q(1, 1), zs(&[(Z, 's'), (Z, 't')]))]);
    assert_eq!(zszt.project_ker(), zszt);
    let raised = kernel(vec![(q(1, 1), zs(&[(Z, 's')]))]).apply(Gen::B(c('j')));
    assert!(raised.project_ker().is_zero());
}

#[test]
fn inverse_on_first_excited_states() {
    let bz = kernel(vec![(q(1, 1), zs(&[(Z, 's')]))]).apply(Gen::B(c('j')));
    assert_eq!(bz.apply_inv_offdiag(1), bz.scale(&(q(1, 4) * pi(-1))));

    let bzb = kernel(vec![(q(1, 1), zs(&[(Zb, 's')]))]).apply(Gen::B(c('j')));
    // ¼(z̄_j−z̄′_j)(z̄_s−z̄′_s) + ½ z̄′_s(z̄_j−z̄′_j)
    let expect = kernel(vec![
        (q(1, 4), zs(&[(Zb, 'j'), (Zb, 's')])),
        (q(-1, 4), zs(&[(Zb, 'j'), (Zbp, 's')])),
        (q(-1, 4), zs(&[(Zbp, 'j'), (Zb, 's')])),
        (q(1, 4), zs(&[(Zbp, 'j'), (Zbp, 's')])),
        (q(1, 2), zs(&[(Zbp, 's'), (Zb, 'j')])),
        (q(-1, 2), zs(&[(Zbp, 's'), (Zbp, 'j')])),
    ]);
    assert_eq!(bzb.apply_inv_offdiag(1), expect);
}

#[test]
fn adjoint_basics() {
    assert_eq!(KernelPoly::p().adjoint(), KernelPoly::p());
    let k = kernel(vec![(
        ExactScalar::i() * q(2, 3),
        prod(&[j(c('a'), c('b'), c('e')), zs(&[(Z, 'a'), (Zbp, 'b'), (Zb, 'e')])]),
    )]);
    assert_eq!(k.adjoint().adjoint(), k);
}

#[test]
fn composition_with_projector() {
    let p = KernelPoly::p();
    assert_eq!(p.compose(&p), p);
    let k = kernel(vec![(q(1, 1), zs(&[(Zb, 's'), (Zb, 't'), (Z, 'j'), (Z, 'k')]))]);
    let expect = IndexedPoly::term(prod(&[delta(c('j'), c('t')), delta(c('k'), c('s'))]), pi(-2))
        .add(&IndexedPoly::term(prod(&[delta(c('j'), c('s')), delta(c('k'), c('t'))]), pi(-2)));
    assert_eq!(p.compose(&k).eval_origin(), expect);
}

#[test]
fn off_diagonal_part_of_mixed_quadratic() {
    let k = kernel(vec![(q(1, 1), zs(&[(Z, 'j'), (Zb, 'k')]))]);
    let expect = kernel(vec![
        (-pi(-1), delta(c('j'), c('k'))),
        (q(1, 1), zs(&[(Z, 'j'), (Zb, 'k')])),
        (q(-1, 1), zs(&[(Z, 'j'), (Zbp, 'k')])),
    ]);
    assert_eq!(k.offdiag(), expect);
}

#[test]
fn origin_values() {
    assert_eq!(KernelPoly::p().eval_origin(), IndexedPoly::one());
    assert!(kernel(vec![(q(1, 1), zs(&[(Z, 's'), (Zbp, 't')]))]).eval_origin().is_zero());
}

#[test]
fn two_forms() {
    let omega = KernelPoly::p().diagonal_two_form().scale(&(ExactScalar::i() * q(1, 2) * pi(-1)));
    assert_eq!(omega, TwoForm::omega());

    let bb = KernelPoly::p().apply(Gen::B(c('j'))).apply(Gen::B(c('i')));
    assert!(bb.diagonal_two_form().is_zero());

    let bzb = kernel(vec![(q(1, 1), zs(&[(Zb, 's')]))]).apply(Gen::B(c('j'))).apply_inv_offdiag(1);
    let (r, qq) = (TwoForm::r(), TwoForm::q());
    let table = IndexedPoly::term(prod(&[delta(c('j'), r), delta(c('s'), qq)]), q(1, 4))
        .add(&IndexedPoly::term(prod(&[delta(c('j'), qq), delta(c('s'), r)]), q(-1, 4)));
    let tf = bzb.diagonal_two_form();
    assert_eq!(tf.zbzb, table);
    assert!(tf.zz.is_zero());
    assert!(tf.zzb.is_zero());
}

#[test]
fn right_actions_match_adjoint_route() {
    let k = kernel(vec![(q(1, 1), zs(&[(Z, 'a'), (Zbp, 'b')]))]);
    // K ∘ z_j multiplies by z′_j
    assert_eq!(k.apply_right(Gen::Mul(Z, c('j'))), kernel(vec![(q(1, 1), zs(&[(Z, 'a'), (Zbp, 'b'), (Zp, 'j')]))]));
    // P ∘ b_j⁺ = (b_j P)^*
    let lhs = KernelPoly::p().apply_right(Gen::Bplus(c('j')));
    assert_eq!(lhs, KernelPoly::p().apply(Gen::B(c('j'))).adjoint());
}
