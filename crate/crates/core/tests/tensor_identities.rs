use std::collections::HashMap;

use fockcalc::numeric::{eval_array, eval_tensor, expand_term};
use fockcalc::tensor::sym::*;
use fockcalc::{ExactScalar, Idx, IndexedPoly, Monomial, NumericAssignment};
use num_complex::Complex64;
use proptest::prelude::*;

fn c(x: char) -> Idx {
    Idx::ch(x)
}

fn poly(terms: &[(i64, i64, Monomial)]) -> IndexedPoly {
    let mut p = IndexedPoly::zero();
    for (num, den, m) in terms {
        p.add_term(m.clone(), ExactScalar::rational(*num, *den));
    }
    p
}

fn max_abs(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn assert_vanishes(p: &IndexedPoly, free: &[Idx]) {
    for n in [2, 3] {
        for seed in 0..5 {
            let a = NumericAssignment::sample_admissible(n, seed).unwrap();
            let v = eval_array(p, &a, free).unwrap();
            assert!(max_abs(&v) < 1e-10, "n={n} seed={seed}: {}", max_abs(&v));
        }
    }
}

#[test]
fn cyclic_sum_vanishes() {
    let (j0, i, r) = (c('j'), c('i'), c('r'));
    let p = poly(&[(1, 1, j(j0, i, r)), (1, 1, j(i, r, j0)), (1, 1, j(r, j0, i))]);
    assert!(!p.is_zero(), "the cyclic relation is not a sign symmetry");
    assert_vanishes(&p, &[j0, i, r]);
}

#[test]
fn mixed_pairing_rewrites() {
    let (i, j0, k, r, q) = (c('i'), c('j'), c('k'), c('r'), c('q'));
    // ⟨(∇_i J)∂z_r, (∇_q̄ J)∂z̄_i⟩ = 2 J_irk J̄_qik
    let lhs = poly(&[(2, 1, prod(&[j(i, r, k), jb(q, i, k)]))]);
    let rhs = poly(&[(2, 1, prod(&[j(i, j0, r), jb(i, j0, q)])), (-2, 1, prod(&[j(i, j0, r), jb(j0, i, q)]))]);
    assert_vanishes(&lhs.sub(&rhs), &[r, q]);
}

#[test]
fn traced_pairing_is_sixteenth_of_norm() {
    let (i, q, k) = (c('i'), c('q'), c('k'));
    // |∇J|² = 8 · 2 Σ J_ijk J̄_ijk
    let lhs = poly(&[(2, 1, prod(&[j(i, q, k), jb(q, i, k)]))]);
    let norm = poly(&[(16, 1, prod(&[j(i, q, k), jb(i, q, k)]))]);
    assert_vanishes(&lhs.sub(&norm.scale(&ExactScalar::rational(1, 16))), &[]);
}

#[test]
fn symmetrised_pairing() {
    let (i, j0, k, r, q) = (c('i'), c('j'), c('k'), c('r'), c('q'));
    let lhs = poly(&[(2, 1, prod(&[j(i, r, k), jb(i, q, k)])), (2, 1, prod(&[j(i, r, k), jb(q, i, k)]))]);
    let rhs = poly(&[(4, 1, prod(&[j(i, j0, r), jb(i, j0, q)])), (-2, 1, prod(&[j(i, j0, r), jb(j0, i, q)]))]);
    assert_vanishes(&lhs.sub(&rhs), &[r, q]);
}

#[test]
fn swapped_slot_pairing() {
    let (i, j0, k, r, q) = (c('i'), c('j'), c('k'), c('r'), c('q'));
    let lhs = poly(&[(2, 1, prod(&[j(r, i, k), jb(q, i, k)]))]);
    let rhs = poly(&[(4, 1, prod(&[j(i, j0, r), jb(i, j0, q)])), (-4, 1, prod(&[j(i, j0, r), jb(j0, i, q)]))]);
    assert_vanishes(&lhs.sub(&rhs), &[r, q]);
}

#[test]
fn conjugate_pairing() {
    let (i, j0, k, r, q) = (c('i'), c('j'), c('k'), c('r'), c('q'));
    let lhs = poly(&[(2, 1, prod(&[j(r, i, k), jb(i, q, k)]))]);
    let rhs = poly(&[(2, 1, prod(&[j(i, j0, r), jb(i, j0, q)])), (-2, 1, prod(&[j(i, j0, r), jb(j0, i, q)]))]);
    assert_vanishes(&lhs.sub(&rhs), &[r, q]);
}

#[test]
fn contracted_pure_curvature() {
    let (j0, r, q, i) = (c('j'), c('r'), c('q'), c('i'));
    let lhs = poly(&[(1, 1, curv("uubb", [j0, r, j0, q]))]);
    let rhs = poly(&[(1, 2, prod(&[j(j0, r, i), jb(j0, q, i)]))]);
    assert_vanishes(&lhs.sub(&rhs), &[r, q]);
    // full trace: 1/32 of the norm
    let t = poly(&[(1, 1, curv("uubb", [i, j0, i, j0]))]);
    let norm = poly(&[(16, 1, prod(&[j(i, j0, r), jb(i, j0, r)]))]);
    assert_vanishes(&t.sub(&norm.scale(&ExactScalar::rational(1, 32))), &[]);
}

#[test]
fn mixed_curvature_trace_is_real() {
    let (i, j0) = (c('i'), c('j'));
    let p = poly(&[(1, 1, curv("ubub", [j0, i, i, j0]))]);
    for seed in 0..5 {
        let a = NumericAssignment::sample_admissible(3, seed).unwrap();
        let v = eval_tensor(&p, &a, &HashMap::new()).unwrap();
        assert!(v.im.abs() < 1e-12);
    }
}

fn arb_label() -> impl Strategy<Value = Idx> {
    prop::sample::select(vec![c('a'), c('b'), c('d'), c('e'), Idx::Fixed(1), Idx::Fixed(2)])
}

fn arb_factor() -> impl Strategy<Value = Monomial> {
    (0usize..5, prop::collection::vec(arb_label(), 4), 0u8..16).prop_map(|(kind, l, bars)| match kind {
        0 => j(l[0], l[1], l[2]),
        1 => jb(l[0], l[1], l[2]),
        2 => curv(
            &(0..4).map(|k| if bars >> k & 1 == 1 { 'b' } else { 'u' }).collect::<String>(),
            [l[0], l[1], l[2], l[3]],
        ),
        3 => ddjb(l[0], l[1], l[2], l[3]),
        _ => delta(l[0], l[1]),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_preserves_value(fs in prop::collection::vec(arb_factor(), 1..4), seed in 0u64..4) {
        let m = prod(&fs);
        prop_assume!(m.validate().is_ok());
        let a = NumericAssignment::sample_admissible(2, seed).unwrap();
        let free = m.free_labels();
        let canon = IndexedPoly::monomial(m.clone());
        let total = 2usize.pow(free.len() as u32);
        for flat in 0..total {
            let bind: HashMap<Idx, usize> = free.iter().enumerate().map(|(k, &l)| (l, (flat >> k) & 1)).collect();
            let mut raw = Complex64::new(0.0, 0.0);
            expand_term(&m, &ExactScalar::one(), &a, &bind, |_, v| raw += v).unwrap();
            let got = eval_tensor(&canon, &a, &bind).unwrap();
            prop_assert!((raw - got).norm() <= 1e-12 * (1.0 + raw.norm()), "{m}: {raw} vs {got}");
        }
    }

    #[test]
    fn canonicalize_is_idempotent(fs in prop::collection::vec(arb_factor(), 1..4)) {
        let m = prod(&fs);
        prop_assume!(m.validate().is_ok());
        let p = IndexedPoly::monomial(m);
        let mut again = IndexedPoly::zero();
        for (t, s) in p.terms() {
            again.add_term(t.clone(), s.clone());
        }
        prop_assert_eq!(again, p);
    }

    #[test]
    fn conj_is_involution(fs in prop::collection::vec(arb_factor(), 1..4)) {
        let m = prod(&fs);
        prop_assume!(m.validate().is_ok());
        let p = IndexedPoly::term(m, ExactScalar::i() + ExactScalar::rational(1, 3));
        prop_assert_eq!(p.conj().conj(), p);
    }
}
