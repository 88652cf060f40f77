mod common;

use fockcalc::kernel::{Gen, KernelPoly, Peel};
use fockcalc::{FockNF, Idx, VarKind};
use proptest::prelude::*;

fn cfg() -> ProptestConfig {
    ProptestConfig::with_cases(128)
}

fn gen_strategy() -> impl Strategy<Value = Gen> {
    (0u8..4, 1u8..=2).prop_map(|(k, j)| {
        let j = Idx::Fixed(j);
        match k {
            0 => Gen::B(j),
            1 => Gen::Bplus(j),
            2 => Gen::Mul(VarKind::Z, j),
            _ => Gen::Mul(VarKind::Zb, j),
        }
    })
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn adjoint_is_an_involution(k in common::kernel(2, 4)) {
        prop_assert_eq!(k.adjoint().adjoint(), k);
    }

    #[test]
    fn adjoint_reverses_composition(a in common::kernel(2, 4), b in common::kernel(2, 4)) {
        prop_assert_eq!(a.compose(&b).adjoint(), b.adjoint().compose(&a.adjoint()));
    }

    #[test]
    fn generator_adjoints_move_sides(k in common::kernel(2, 4), g in gen_strategy()) {
        // (g ∘ K)* = K* ∘ g*
        prop_assert_eq!(k.apply(g).adjoint(), k.adjoint().apply_right(g.adjoint().0));
    }

    #[test]
    fn projections_are_idempotent(k in common::kernel(2, 4)) {
        let p = k.project_ker();
        prop_assert_eq!(p.project_ker(), p.clone());
        let o = k.offdiag();
        prop_assert_eq!(o.offdiag(), o.clone());
        prop_assert!(o.project_ker().is_zero());
        prop_assert_eq!(p.add(&o), k);
    }

    #[test]
    fn composition_is_associative(a in common::kernel(2, 3), b in common::kernel(2, 3), c in common::kernel(2, 3)) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }

    #[test]
    fn projector_is_a_unit(k in common::kernel(2, 4)) {
        let p = KernelPoly::p();
        prop_assert_eq!(p.compose(&k), k.project_ker());
        prop_assert_eq!(k.compose(&p), k.adjoint().project_ker().adjoint());
    }

    #[test]
    fn inverse_undoes_the_laplacian_off_the_kernel(k in common::kernel(2, 4)) {
        // L = Σ b_j b_j⁺ and L · L⁻¹P^⊥ = P^⊥
        let inv = k.apply_inv_offdiag(1);
        let back = (1..=2u8).fold(KernelPoly::zero(), |acc, j| {
            let j = Idx::Fixed(j);
            acc.add(&inv.apply(Gen::Bplus(j)).apply(Gen::B(j)))
        });
        prop_assert_eq!(back, k.offdiag());
    }

    #[test]
    fn normal_form_is_confluent(k in common::kernel(2, 4)) {
        let first = FockNF::of(&k, Peel::First);
        let last = FockNF::of(&k, Peel::Last);
        prop_assert_eq!(&first, &last);
        prop_assert_eq!(first.expand(), k);
    }
}
