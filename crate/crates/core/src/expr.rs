//! Operator expressions applied right-to-left, and their symbolic evaluation
//! to kernels.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::kernel::{Gen, KernelPoly, TensorPoly};
use crate::scalar::ExactScalar;
use crate::tensor::{Idx, IndexedPoly};

#[derive(Clone, Debug, PartialEq)]
pub enum OpExpr {
    /// The projector kernel.
    P,
    /// Identity operator; lets an expression denote a bare operator word.
    Id,
    Kernel(KernelPoly),
    /// Generator applied to the body.
    Gen(Gen, Box<OpExpr>),
    Project(Box<OpExpr>),
    Offdiag(Box<OpExpr>),
    /// `L^{−k} P^⊥` applied to the body.
    Inv(u32, Box<OpExpr>),
    Scale(TensorPoly, Box<OpExpr>),
    Adjoint(Box<OpExpr>),
    /// Operator product, leftmost factor applied last.
    Compose(Vec<OpExpr>),
    Sum(Vec<OpExpr>),
    /// Labels summed over `1..=n` inside the body.
    Bind(Vec<Idx>, Box<OpExpr>),
}

/// Builder shorthands.
impl OpExpr {
    pub fn b(j: Idx, x: OpExpr) -> OpExpr {
        OpExpr::Gen(Gen::B(j), Box::new(x))
    }

    pub fn bplus(j: Idx, x: OpExpr) -> OpExpr {
        OpExpr::Gen(Gen::Bplus(j), Box::new(x))
    }

    pub fn mul(kind: crate::tensor::VarKind, j: Idx, x: OpExpr) -> OpExpr {
        OpExpr::Gen(Gen::Mul(kind, j), Box::new(x))
    }

    pub fn project(x: OpExpr) -> OpExpr {
        OpExpr::Project(Box::new(x))
    }

    pub fn offdiag(x: OpExpr) -> OpExpr {
        OpExpr::Offdiag(Box::new(x))
    }

    pub fn inv(k: u32, x: OpExpr) -> OpExpr {
        OpExpr::Inv(k, Box::new(x))
    }

    pub fn scale(t: TensorPoly, x: OpExpr) -> OpExpr {
        OpExpr::Scale(t, Box::new(x))
    }

    pub fn scalar(s: ExactScalar, x: OpExpr) -> OpExpr {
        OpExpr::Scale(IndexedPoly::scalar(s), Box::new(x))
    }

    pub fn adjoint(x: OpExpr) -> OpExpr {
        OpExpr::Adjoint(Box::new(x))
    }

    pub fn bind(labels: Vec<Idx>, x: OpExpr) -> OpExpr {
        OpExpr::Bind(labels, Box::new(x))
    }

    /// Whether the expression denotes a kernel rather than a bare operator.
    pub fn is_kernel(&self) -> bool {
        match self {
            OpExpr::P | OpExpr::Kernel(_) => true,
            OpExpr::Id => false,
            OpExpr::Gen(_, x)
            | OpExpr::Project(x)
            | OpExpr::Offdiag(x)
            | OpExpr::Inv(_, x)
            | OpExpr::Scale(_, x)
            | OpExpr::Adjoint(x)
            | OpExpr::Bind(_, x) => x.is_kernel(),
            OpExpr::Compose(xs) => xs.iter().any(|x| x.is_kernel()),
            OpExpr::Sum(xs) => !xs.is_empty() && xs.iter().all(|x| x.is_kernel()),
        }
    }

    /// Renames labels everywhere, kernel leaves and scale tensors included.
    pub fn relabel(&self, map: &HashMap<Idx, Idx>) -> OpExpr {
        let r = |l: Idx| *map.get(&l).unwrap_or(&l);
        let sub = |p: &IndexedPoly| p.flat_map(|m, s| vec![(m.map_labels(r), s.clone())]);
        let bx = |x: &OpExpr| Box::new(x.relabel(map));
        match self {
            OpExpr::P => OpExpr::P,
            OpExpr::Id => OpExpr::Id,
            OpExpr::Kernel(k) => OpExpr::Kernel(KernelPoly::from_poly(sub(k.poly())).expect("kernel stays a kernel")),
            OpExpr::Gen(g, x) => {
                let g = match *g {
                    Gen::B(j) => Gen::B(r(j)),
                    Gen::Bplus(j) => Gen::Bplus(r(j)),
                    Gen::Mul(k, j) => Gen::Mul(k, r(j)),
                    Gen::Dz(j) => Gen::Dz(r(j)),
                    Gen::Dzb(j) => Gen::Dzb(r(j)),
                };
                OpExpr::Gen(g, bx(x))
            }
            OpExpr::Project(x) => OpExpr::Project(bx(x)),
            OpExpr::Offdiag(x) => OpExpr::Offdiag(bx(x)),
            OpExpr::Inv(k, x) => OpExpr::Inv(*k, bx(x)),
            OpExpr::Scale(t, x) => OpExpr::Scale(sub(t), bx(x)),
            OpExpr::Adjoint(x) => OpExpr::Adjoint(bx(x)),
            OpExpr::Compose(xs) => OpExpr::Compose(xs.iter().map(|x| x.relabel(map)).collect()),
            OpExpr::Sum(xs) => OpExpr::Sum(xs.iter().map(|x| x.relabel(map)).collect()),
            OpExpr::Bind(ls, x) => {
                // inner binders shadow
                let mut inner = map.clone();
                for l in ls {
                    inner.remove(l);
                }
                OpExpr::Bind(ls.clone(), Box::new(x.relabel(&inner)))
            }
        }
    }

    fn open_bind(ls: &[Idx], x: &OpExpr) -> OpExpr {
        let map: HashMap<Idx, Idx> = ls.iter().map(|&l| (l, Idx::fresh())).collect();
        x.relabel(&map)
    }

    /// Kernel denoted by the expression.
    pub fn eval(&self) -> Result<KernelPoly> {
        match self {
            OpExpr::P => Ok(KernelPoly::p()),
            OpExpr::Kernel(k) => Ok(k.clone()),
            OpExpr::Id => Err(Error::NotKernel("bare identity operator".into())),
            OpExpr::Gen(..) | OpExpr::Project(_) | OpExpr::Offdiag(_) | OpExpr::Inv(..) | OpExpr::Scale(..) => {
                let (outer, body) = self.split_unary();
                Ok(outer.act_left(&body.eval()?)?)
            }
            OpExpr::Adjoint(x) => Ok(x.eval()?.adjoint()),
            OpExpr::Compose(xs) => {
                let Some(anchor) = xs.iter().rposition(|x| x.is_kernel()) else {
                    return Err(Error::NotKernel("composition without a kernel factor".into()));
                };
                let mut k = xs[anchor].eval()?;
                for x in &xs[anchor + 1..] {
                    k = x.act_right(&k)?;
                }
                for x in xs[..anchor].iter().rev() {
                    k = x.act_left(&k)?;
                }
                Ok(k)
            }
            OpExpr::Sum(xs) => {
                let mut acc = KernelPoly::zero();
                for x in xs {
                    acc = acc.add(&x.eval()?);
                }
                Ok(acc)
            }
            OpExpr::Bind(ls, x) => OpExpr::open_bind(ls, x).eval(),
        }
    }

    /// Splits a unary node into the node with an identity body, and the body.
    fn split_unary(&self) -> (OpExpr, &OpExpr) {
        let id = Box::new(OpExpr::Id);
        match self {
            OpExpr::Gen(g, x) => (OpExpr::Gen(*g, id), x),
            OpExpr::Project(x) => (OpExpr::Project(id), x),
            OpExpr::Offdiag(x) => (OpExpr::Offdiag(id), x),
            OpExpr::Inv(k, x) => (OpExpr::Inv(*k, id), x),
            OpExpr::Scale(t, x) => (OpExpr::Scale(t.clone(), id), x),
            _ => unreachable!("not a unary node"),
        }
    }

    /// `self ∘ K`.
    pub fn act_left(&self, k: &KernelPoly) -> Result<KernelPoly> {
        Ok(match self {
            OpExpr::P => k.project_ker(),
            OpExpr::Kernel(l) => l.compose(k),
            OpExpr::Id => k.clone(),
            OpExpr::Gen(g, x) => x.act_left(k)?.apply(*g),
            OpExpr::Project(x) => x.act_left(k)?.project_ker(),
            OpExpr::Offdiag(x) => x.act_left(k)?.offdiag(),
            OpExpr::Inv(p, x) => x.act_left(k)?.apply_inv_offdiag(*p),
            OpExpr::Scale(t, x) => x.act_left(k)?.scale_tensor(t),
            OpExpr::Adjoint(x) => x.act_right(&k.adjoint())?.adjoint(),
            OpExpr::Compose(xs) => {
                let mut acc = k.clone();
                for x in xs.iter().rev() {
                    acc = x.act_left(&acc)?;
                }
                acc
            }
            OpExpr::Sum(xs) => {
                let mut acc = KernelPoly::zero();
                for x in xs {
                    acc = acc.add(&x.act_left(k)?);
                }
                acc
            }
            OpExpr::Bind(ls, x) => OpExpr::open_bind(ls, x).act_left(k)?,
        })
    }

    /// `K ∘ self`.
    pub fn act_right(&self, k: &KernelPoly) -> Result<KernelPoly> {
        let via_adjoint = |f: &dyn Fn(&KernelPoly) -> KernelPoly, k: &KernelPoly| f(&k.adjoint()).adjoint();
        Ok(match self {
            OpExpr::P => k.compose(&KernelPoly::p()),
            OpExpr::Kernel(l) => k.compose(l),
            OpExpr::Id => k.clone(),
            OpExpr::Gen(g, x) => x.act_right(&k.apply_right(*g))?,
            OpExpr::Project(x) => x.act_right(&via_adjoint(&|a| a.project_ker(), k))?,
            OpExpr::Offdiag(x) => x.act_right(&via_adjoint(&|a| a.offdiag(), k))?,
            OpExpr::Inv(p, x) => x.act_right(&via_adjoint(&|a| a.apply_inv_offdiag(*p), k))?,
            OpExpr::Scale(t, x) => x.act_right(&k.scale_tensor(t))?,
            OpExpr::Adjoint(x) => x.act_left(&k.adjoint())?.adjoint(),
            OpExpr::Compose(xs) => {
                let mut acc = k.clone();
                for x in xs {
                    acc = x.act_right(&acc)?;
                }
                acc
            }
            OpExpr::Sum(xs) => {
                let mut acc = KernelPoly::zero();
                for x in xs {
                    acc = acc.add(&x.act_right(k)?);
                }
                acc
            }
            OpExpr::Bind(ls, x) => OpExpr::open_bind(ls, x).act_right(k)?,
        })
    }

    /// Upper bound on how far the operator raises polynomial degree; used to
    /// size oracle truncations.
    pub fn raise_budget(&self) -> usize {
        match self {
            OpExpr::P | OpExpr::Id => 0,
            OpExpr::Kernel(k) => k.max_degree(),
            OpExpr::Gen(_, x) => 1 + x.raise_budget(),
            OpExpr::Project(x)
            | OpExpr::Offdiag(x)
            | OpExpr::Inv(_, x)
            | OpExpr::Scale(_, x)
            | OpExpr::Adjoint(x)
            | OpExpr::Bind(_, x) => x.raise_budget(),
            OpExpr::Compose(xs) => xs.iter().map(|x| x.raise_budget()).sum(),
            OpExpr::Sum(xs) => xs.iter().map(|x| x.raise_budget()).max().unwrap_or(0),
        }
    }
}
