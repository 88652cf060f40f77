#![allow(dead_code)]

use fockcalc::kernel::KernelPoly;
use fockcalc::tensor::sym::{j, jb, prod, z};
use fockcalc::{ExactScalar, Idx, IndexedPoly, Monomial, VarKind};
use proptest::prelude::*;

fn kind(k: u8) -> VarKind {
    [VarKind::Z, VarKind::Zb, VarKind::Zp, VarKind::Zbp][k as usize % 4]
}

fn fixed(v: u8) -> Idx {
    Idx::Fixed(v)
}

/// A monomial with fixed labels in `1..=n`, optionally carrying one torsion factor.
fn monomial(n: u8, max_deg: usize) -> impl Strategy<Value = Monomial> {
    (prop::collection::vec((0u8..4, 1..=n), 0..=max_deg), prop::option::of((any::<bool>(), 1..=n, 1..=n, 1..=n)))
        .prop_map(|(vars, tensor)| {
            let mut parts: Vec<Monomial> = vars.into_iter().map(|(k, i)| z(kind(k), fixed(i))).collect();
            if let Some((bar, a, b, c)) = tensor {
                let f = if bar { jb(fixed(a), fixed(b), fixed(c)) } else { j(fixed(a), fixed(b), fixed(c)) };
                parts.push(f);
            }
            prod(&parts)
        })
}

/// Random kernels `Q(Z, Z') P` of degree at most `max_deg` with small Gaussian-rational coefficients.
pub fn kernel(n: u8, max_deg: usize) -> impl Strategy<Value = KernelPoly> {
    prop::collection::vec((monomial(n, max_deg), -3i64..=3, -3i64..=3, 1i64..=3), 1..=4).prop_map(|terms| {
        let mut p = IndexedPoly::zero();
        for (m, re, im, den) in terms {
            let s = ExactScalar::rational(re, den) + ExactScalar::i() * ExactScalar::rational(im, den);
            p.add_term(m, s);
        }
        KernelPoly::from_poly(p).unwrap()
    })
}
