//! Kernels `Q(Z,Z′)·P(Z,Z′)` with polynomial `Q`, and the operator calculus
//! acting on them.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::ExactScalar;
use crate::tensor::{Idx, IndexedPoly, Monomial, Var, VarKind};

/// Coefficient polynomial without variables.
pub type TensorPoly = IndexedPoly;

/// `Q·P` with `Q` a polynomial in `z, z̄, z′, z̄′` with tensor coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct KernelPoly(IndexedPoly);

/// A first-order generator acting from the left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    B(Idx),
    Bplus(Idx),
    /// Multiplication by `z_j` (`VarKind::Z`) or `z̄_j` (`VarKind::Zb`).
    Mul(VarKind, Idx),
    Dz(Idx),
    Dzb(Idx),
}

impl Gen {
    /// Formal adjoint.
    pub fn adjoint(self) -> (Gen, ExactScalar) {
        match self {
            Gen::B(j) => (Gen::Bplus(j), ExactScalar::one()),
            Gen::Bplus(j) => (Gen::B(j), ExactScalar::one()),
            Gen::Mul(k, j) => (Gen::Mul(k.conj(), j), ExactScalar::one()),
            Gen::Dz(j) => (Gen::Dzb(j), ExactScalar::int(-1)),
            Gen::Dzb(j) => (Gen::Dz(j), ExactScalar::int(-1)),
        }
    }
}

fn pi(k: i32) -> ExactScalar {
    ExactScalar::pi_pow(k)
}

/// `∂/∂(kind)_j` of the polynomial part only.
pub fn diff(p: &IndexedPoly, kind: VarKind, j: Idx) -> IndexedPoly {
    p.flat_map(|m, s| {
        let mut out = Vec::new();
        for (k, v) in m.vars.iter().enumerate() {
            if v.kind == kind {
                let mut m2 = m.clone();
                m2.vars.remove(k);
                m2.deltas.push((v.idx, j));
                out.push((m2, s.clone()));
            }
        }
        out
    })
}

fn times_var(p: &IndexedPoly, kind: VarKind, j: Idx) -> IndexedPoly {
    p.flat_map(|m, s| {
        let mut m2 = m.clone();
        m2.vars.push(Var::new(kind, j));
        vec![(m2, s.clone())]
    })
}

impl KernelPoly {
    /// The projector kernel `P` itself.
    pub fn p() -> Self {
        KernelPoly(IndexedPoly::one())
    }

    pub fn zero() -> Self {
        KernelPoly(IndexedPoly::zero())
    }

    pub fn from_poly(p: IndexedPoly) -> Result<Self> {
        if p.terms().any(|(m, _)| m.b_len() > 0) {
            return Err(Error::NotKernel("ladder symbols in a kernel polynomial".into()));
        }
        Ok(KernelPoly(p))
    }

    pub fn monomial(m: Monomial, s: ExactScalar) -> Self {
        KernelPoly::from_poly(IndexedPoly::term(m, s)).expect("monomial without ladder symbols")
    }

    pub fn poly(&self) -> &IndexedPoly {
        &self.0
    }

    pub fn into_poly(self) -> IndexedPoly {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, o: &KernelPoly) -> KernelPoly {
        KernelPoly(self.0.add(&o.0))
    }

    pub fn sub(&self, o: &KernelPoly) -> KernelPoly {
        KernelPoly(self.0.sub(&o.0))
    }

    pub fn neg(&self) -> KernelPoly {
        KernelPoly(self.0.neg())
    }

    pub fn scale(&self, s: &ExactScalar) -> KernelPoly {
        KernelPoly(self.0.scale(s))
    }

    /// Multiplication by a coefficient tensor (Einstein contraction applies).
    pub fn scale_tensor(&self, t: &TensorPoly) -> KernelPoly {
        KernelPoly(t.mul(&self.0))
    }

    /// Multiplication of `Q` by another polynomial (no ladder symbols).
    pub fn times(&self, q: &IndexedPoly) -> KernelPoly {
        KernelPoly(q.mul(&self.0))
    }

    pub fn max_degree(&self) -> usize {
        self.0.max_degree()
    }

    /// Left action of one generator.
    pub fn apply(&self, g: Gen) -> KernelPoly {
        let q = &self.0;
        let out = match g {
            Gen::B(j) => {
                let shift = times_var(q, VarKind::Zb, j).sub(&times_var(q, VarKind::Zbp, j));
                shift.scale(&(ExactScalar::int(2) * pi(1))).sub(&diff(q, VarKind::Z, j).scale(&ExactScalar::int(2)))
            }
            Gen::Bplus(j) => diff(q, VarKind::Zb, j).scale(&ExactScalar::int(2)),
            Gen::Mul(k, j) => {
                assert!(matches!(k, VarKind::Z | VarKind::Zb), "left multiplication uses unprimed variables");
                times_var(q, k, j)
            }
            Gen::Dz(j) => diff(q, VarKind::Z, j)
                .sub(&times_var(q, VarKind::Zb, j).scale(&(ExactScalar::rational(1, 2) * pi(1))))
                .add(&times_var(q, VarKind::Zbp, j).scale(&pi(1))),
            Gen::Dzb(j) => {
                diff(q, VarKind::Zb, j).sub(&times_var(q, VarKind::Z, j).scale(&(ExactScalar::rational(1, 2) * pi(1))))
            }
        };
        KernelPoly(out)
    }

    /// Right action `K ∘ g`.
    pub fn apply_right(&self, g: Gen) -> KernelPoly {
        let (h, s) = g.adjoint();
        self.adjoint().apply(h).adjoint().scale(&s.conj())
    }

    /// `Q(Z,Z′) ↦ conj(Q(Z′,Z))`.
    pub fn adjoint(&self) -> KernelPoly {
        KernelPoly(self.0.conj().map_vars(|k| match k {
            VarKind::Z => VarKind::Zp,
            VarKind::Zp => VarKind::Z,
            VarKind::Zb => VarKind::Zbp,
            VarKind::Zbp => VarKind::Zb,
            VarKind::B => VarKind::B,
        }))
    }

    pub fn fock_normal_form(&self) -> FockNF {
        FockNF::of(self, Peel::First)
    }

    /// `P ∘ K`.
    pub fn project_ker(&self) -> KernelPoly {
        self.fock_normal_form().component(0)
    }

    /// `(Id − P) ∘ K`.
    pub fn offdiag(&self) -> KernelPoly {
        self.sub(&self.project_ker())
    }

    /// `L^{−k} P^⊥ ∘ K`.
    pub fn apply_inv_offdiag(&self, k: u32) -> KernelPoly {
        let nf = self.fock_normal_form();
        let scaled = nf.0.flat_map(|m, s| {
            let l = m.b_len() as i64;
            if l == 0 {
                return vec![];
            }
            let f = ExactScalar::rational(1, (4 * l).pow(k)) * pi(-(k as i32));
            vec![(m.clone(), s * &f)]
        });
        FockNF(scaled).expand()
    }

    /// Kernel of the composition `K₁ ∘ K₂`.
    pub fn compose(&self, other: &KernelPoly) -> KernelPoly {
        let mut out = IndexedPoly::zero();
        for (m, s) in self.0.terms() {
            let m = m.externalize();
            let (left, right): (Vec<Var>, Vec<Var>) = m.vars.iter().partition(|v| !v.kind.is_primed());
            let reread: Vec<Var> = right
                .iter()
                .map(|v| Var::new(if v.kind == VarKind::Zp { VarKind::Z } else { VarKind::Zb }, v.idx))
                .collect();
            let inner = other.times(&IndexedPoly::monomial(Monomial { vars: reread, ..Default::default() }));
            let projected = inner.project_ker();
            let outer = Monomial { factors: m.factors.clone(), deltas: m.deltas.clone(), vars: left };
            out.add_assign(&IndexedPoly::term(outer, s.clone()).mul(&projected.0));
        }
        KernelPoly(out)
    }

    /// Constant coefficient of `Q`, i.e. the kernel's value at the origin.
    pub fn eval_origin(&self) -> TensorPoly {
        self.0.filter(|m| m.vars.is_empty())
    }

    /// Linear coefficients: `∂Q/∂(kind)_r (0)` with free label `r`.
    pub fn first_derivative_at_origin(&self, kind: VarKind, r: Idx) -> TensorPoly {
        diff(&self.0.filter(|m| m.vars.len() == 1), kind, r)
    }

    pub fn second_derivative_at_origin(&self, k1: VarKind, r: Idx, k2: VarKind, q: Idx) -> TensorPoly {
        diff(&diff(&self.0.filter(|m| m.vars.len() == 2), k1, r), k2, q)
    }

    /// `d_x d_y K(0,0)` split into the three complex-frame blocks.
    pub fn diagonal_two_form(&self) -> TwoForm {
        let (r, q) = (TwoForm::r(), TwoForm::q());
        let mixed = self
            .second_derivative_at_origin(VarKind::Z, r, VarKind::Zbp, q)
            .sub(&self.second_derivative_at_origin(VarKind::Zb, q, VarKind::Zp, r))
            .add(&self.eval_origin().mul(&IndexedPoly::monomial(Monomial::delta(r, q))).scale(&pi(1)));
        let anti = |a: TensorPoly| a.sub(&swap_labels(&a, r, q)).scale(&ExactScalar::rational(1, 2));
        let zz = anti(self.second_derivative_at_origin(VarKind::Z, r, VarKind::Zp, q));
        let zbzb = anti(self.second_derivative_at_origin(VarKind::Zb, r, VarKind::Zbp, q));
        TwoForm { zzb: mixed, zz, zbzb }
    }

    /// True if every term has polynomial degree of the given parity.
    pub fn has_parity(&self, odd: bool) -> bool {
        self.0.terms().all(|(m, _)| (m.degree() % 2 == 1) == odd)
    }
}

/// Exchanges two labels throughout.
pub fn swap_labels(p: &IndexedPoly, a: Idx, b: Idx) -> IndexedPoly {
    p.flat_map(|m, s| {
        let m2 = m.map_labels(|l| {
            if l == a {
                b
            } else if l == b {
                a
            } else {
                l
            }
        });
        vec![(m2, s.clone())]
    })
}

/// Peeling order for the normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Peel {
    First,
    Last,
}

/// Kernel written as `Σ b-word (head · P)`, heads free of unprimed `z̄`.
/// Ladder symbols are stored as variables of kind `B`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FockNF(pub IndexedPoly);

impl FockNF {
    pub fn of(k: &KernelPoly, order: Peel) -> FockNF {
        let mut done = IndexedPoly::zero();
        let mut todo = k.0.clone();
        while !todo.is_zero() {
            let mut next = IndexedPoly::zero();
            for (m, s) in todo.terms() {
                let pos = match order {
                    Peel::First => m.vars.iter().position(|v| v.kind == VarKind::Zb),
                    Peel::Last => m.vars.iter().rposition(|v| v.kind == VarKind::Zb),
                };
                let Some(pos) = pos else {
                    done.add_term(m.clone(), s.clone());
                    continue;
                };
                let a = m.vars[pos].idx;
                let mut h = m.clone();
                h.vars.remove(pos);
                // z̄_a h P = (1/2π) b_a(hP) + (1/π)(∂h/∂z_a)P + z̄′_a h P
                let mut with_b = h.clone();
                with_b.vars.push(Var::new(VarKind::B, a));
                next.add_term(with_b, s * &(ExactScalar::rational(1, 2) * pi(-1)));
                let mut primed = h.clone();
                primed.vars.push(Var::new(VarKind::Zbp, a));
                next.add_term(primed, s.clone());
                for (k, v) in h.vars.iter().enumerate() {
                    if v.kind == VarKind::Z {
                        let mut d = h.clone();
                        d.vars.remove(k);
                        d.deltas.push((v.idx, a));
                        next.add_term(d, s * &pi(-1));
                    }
                }
            }
            todo = next;
        }
        FockNF(done)
    }

    /// Heads carrying `ℓ` ladder symbols, re-expanded as a kernel.
    pub fn component(&self, l: usize) -> KernelPoly {
        FockNF(self.0.filter(|m| m.b_len() == l)).expand()
    }

    pub fn max_word(&self) -> usize {
        self.0.terms().map(|(m, _)| m.b_len()).max().unwrap_or(0)
    }

    /// Applies the ladder words, returning an ordinary kernel.
    pub fn expand(&self) -> KernelPoly {
        let mut out = IndexedPoly::zero();
        for (m, s) in self.0.terms() {
            out.add_assign(&expand_term(m, s).0);
        }
        KernelPoly(out)
    }
}

fn expand_term(m: &Monomial, s: &ExactScalar) -> KernelPoly {
    let Some(pos) = m.vars.iter().position(|v| v.kind == VarKind::B) else {
        return KernelPoly(IndexedPoly::term(m.clone(), s.clone()));
    };
    let m = m.externalize();
    let a = m.vars[pos].idx;
    let mut rest = m.clone();
    rest.vars.remove(pos);
    let mut inner = IndexedPoly::zero();
    inner.add_term(rest, s.clone());
    let mut acc = IndexedPoly::zero();
    for (t, c) in inner.terms() {
        acc.add_assign(&expand_term(t, c).0);
    }
    KernelPoly(acc).apply(Gen::B(a))
}

/// `d_x d_y K(0,0)` in the frame `dz_r, dz̄_q`; every table has free labels
/// `r` and `q`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwoForm {
    /// Coefficient of `dz_r ∧ dz̄_q`.
    pub zzb: TensorPoly,
    /// Antisymmetric coefficient of `dz_r ∧ dz_q`.
    pub zz: TensorPoly,
    /// Antisymmetric coefficient of `dz̄_r ∧ dz̄_q`.
    pub zbzb: TensorPoly,
}

impl TwoForm {
    pub fn r() -> Idx {
        Idx::ch('r')
    }

    pub fn q() -> Idx {
        Idx::ch('q')
    }

    /// `ω = (√−1/2) Σ dz_j ∧ dz̄_j`.
    pub fn omega() -> TwoForm {
        TwoForm {
            zzb: IndexedPoly::term(
                Monomial::delta(TwoForm::r(), TwoForm::q()),
                ExactScalar::i() * ExactScalar::rational(1, 2),
            ),
            ..Default::default()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.zzb.is_zero() && self.zz.is_zero() && self.zbzb.is_zero()
    }

    pub fn add(&self, o: &TwoForm) -> TwoForm {
        TwoForm { zzb: self.zzb.add(&o.zzb), zz: self.zz.add(&o.zz), zbzb: self.zbzb.add(&o.zbzb) }
    }

    pub fn sub(&self, o: &TwoForm) -> TwoForm {
        self.add(&o.scale(&ExactScalar::int(-1)))
    }

    pub fn scale(&self, s: &ExactScalar) -> TwoForm {
        TwoForm { zzb: self.zzb.scale(s), zz: self.zz.scale(s), zbzb: self.zbzb.scale(s) }
    }

    pub fn scale_tensor(&self, t: &TensorPoly) -> TwoForm {
        TwoForm { zzb: t.mul(&self.zzb), zz: t.mul(&self.zz), zbzb: t.mul(&self.zbzb) }
    }

    /// The form `−conj(ω)`, which is the two-form of the adjoint kernel.
    pub fn neg_conj(&self) -> TwoForm {
        let (r, q) = (TwoForm::r(), TwoForm::q());
        TwoForm { zzb: swap_labels(&self.zzb.conj(), r, q), zz: self.zbzb.conj().neg(), zbzb: self.zz.conj().neg() }
    }
}

impl fmt::Display for KernelPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for TwoForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dz∧dzb: {}", self.zzb)?;
        writeln!(f, "dz∧dz: {}", self.zz)?;
        write!(f, "dzb∧dzb: {}", self.zbzb)
    }
}
