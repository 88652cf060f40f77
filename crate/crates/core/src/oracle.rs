//! Numerical oracle on a truncated oscillator basis.
//!
//! States are `u_{α,β} = b^α (z^β e^{-π|z|²/2})`, normalized. Every generator
//! moves the total degree `|α|+|β|` by one, and `P`, `L⁻¹P^⊥` are diagonal,
//! so a truncated product of word length `L` is exact on the block of states
//! of degree at most `D − ⌈L/2⌉`.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::OpExpr;
use crate::kernel::{Gen, KernelPoly};
use crate::numeric::{eval_tensor, expand_term, NumericAssignment};
use crate::tensor::{Idx, VarKind};

pub type CMat = DMatrix<Complex64>;

/// Orthonormal states `(α, β)` with `|α| + |β| ≤ D`, sorted by degree.
#[derive(Clone, Debug)]
pub struct FockBasis {
    pub n: usize,
    pub d: usize,
    states: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
    norm: Vec<f64>,
}

fn multi_indices(len: usize, max: usize) -> Vec<Vec<u8>> {
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..=max {
        for mut rest in multi_indices(len - 1, max - first) {
            rest.insert(0, first as u8);
            out.push(rest);
        }
    }
    out
}

impl FockBasis {
    pub fn new(n: usize, d: usize) -> Self {
        let mut states = multi_indices(2 * n, d);
        states.sort_by_key(|s| (s.iter().map(|&x| x as usize).sum::<usize>(), s.clone()));
        let index = states.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect();
        let mut b = FockBasis { n, d, states, index, norm: Vec::new() };
        b.norm = b.norms_by_recursion();
        b
    }

    /// Squared norms from the ladder algebra: `‖b_j u‖² = 4π(α_j+1)‖u‖²` and
    /// `‖z_j φ_β‖² = (β_j+1)/π ‖φ_β‖²`, starting from `‖φ_0‖ = 1`.
    fn norms_by_recursion(&self) -> Vec<f64> {
        let mut sq = vec![0.0; self.len()];
        for (k, s) in self.states.iter().enumerate() {
            sq[k] = match s.iter().position(|&x| x > 0) {
                None => 1.0,
                Some(p) => {
                    let mut prev = s.clone();
                    prev[p] -= 1;
                    let base = sq[self.index[&prev]];
                    if p < self.n {
                        base * 4.0 * PI * s[p] as f64
                    } else {
                        base * s[p] as f64 / PI
                    }
                }
            };
        }
        sq.into_iter().map(f64::sqrt).collect()
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state(&self, k: usize) -> (&[u8], &[u8]) {
        self.states[k].split_at(self.n)
    }

    pub fn degree(&self, k: usize) -> usize {
        self.states[k].iter().map(|&x| x as usize).sum()
    }

    /// `|α|` of state `k`; the `L`-eigenvalue is `4π|α|`.
    pub fn level(&self, k: usize) -> usize {
        self.state(k).0.iter().map(|&x| x as usize).sum()
    }

    pub fn norm(&self, k: usize) -> f64 {
        self.norm[k]
    }

    pub fn find(&self, alpha: &[u8], beta: &[u8]) -> Option<usize> {
        let mut key = alpha.to_vec();
        key.extend_from_slice(beta);
        self.index.get(&key).copied()
    }

    /// Number of states of degree at most `deg`.
    pub fn prefix(&self, deg: usize) -> usize {
        self.states.partition_point(|s| s.iter().map(|&x| x as usize).sum::<usize>() <= deg)
    }
}

/// Single ladder steps and multiplications.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ladder {
    B(usize),
    Bplus(usize),
    Z(usize),
    Zb(usize),
}

impl Ladder {
    pub fn adjoint(self) -> Ladder {
        match self {
            Ladder::B(j) => Ladder::Bplus(j),
            Ladder::Bplus(j) => Ladder::B(j),
            Ladder::Z(j) => Ladder::Zb(j),
            Ladder::Zb(j) => Ladder::Z(j),
        }
    }
}

/// Sparse columns: `targets[src] = [(dst, coefficient)]` in the orthonormal basis.
#[derive(Clone, Debug)]
pub struct SparseOp {
    targets: Vec<Vec<(usize, f64)>>,
}

impl SparseOp {
    pub fn apply(&self, v: &CMat) -> CMat {
        let mut out = CMat::zeros(v.nrows(), v.ncols());
        for (src, ts) in self.targets.iter().enumerate() {
            for &(dst, c) in ts {
                for col in 0..v.ncols() {
                    let x = v[(src, col)];
                    if x != Complex64::new(0.0, 0.0) {
                        out[(dst, col)] += x * c;
                    }
                }
            }
        }
        out
    }

    pub fn dense(&self) -> CMat {
        let n = self.targets.len();
        let mut m = CMat::zeros(n, n);
        for (src, ts) in self.targets.iter().enumerate() {
            for &(dst, c) in ts {
                m[(dst, src)] += Complex64::new(c, 0.0);
            }
        }
        m
    }
}

impl FockBasis {
    /// Action on unnormalized states, rescaled to the orthonormal basis.
    /// Steps leaving the truncation are dropped.
    pub fn ladder(&self, g: Ladder) -> SparseOp {
        let n = self.n;
        let mut targets = Vec::with_capacity(self.len());
        for k in 0..self.len() {
            let s = &self.states[k];
            let mut out = Vec::new();
            let mut push = |pos: usize, up: bool, c: f64| {
                let mut t = s.clone();
                if up {
                    t[pos] += 1;
                } else {
                    t[pos] -= 1;
                }
                if let Some(&dst) = self.index.get(&t) {
                    out.push((dst, c * self.norm[dst] / self.norm[k]));
                }
            };
            match g {
                Ladder::B(j) => push(j, true, 1.0),
                Ladder::Bplus(j) if s[j] > 0 => push(j, false, 4.0 * PI * s[j] as f64),
                Ladder::Bplus(_) => {}
                Ladder::Z(j) => {
                    push(n + j, true, 1.0);
                    if s[j] > 0 {
                        push(j, false, 2.0 * s[j] as f64);
                    }
                }
                Ladder::Zb(j) => {
                    push(j, true, 1.0 / (2.0 * PI));
                    if s[n + j] > 0 {
                        push(n + j, false, s[n + j] as f64 / PI);
                    }
                }
            }
            targets.push(out);
        }
        SparseOp { targets }
    }

    /// Diagonal of `P`.
    pub fn projector_diag(&self) -> Vec<f64> {
        (0..self.len()).map(|k| if self.level(k) == 0 { 1.0 } else { 0.0 }).collect()
    }
}

/// Matrix over a basis, restricted to the leading `exact` columns. Entries are
/// trusted on the leading `exact` × `exact` block.
#[derive(Clone, Debug)]
pub struct FockMatrix {
    pub n: usize,
    pub d: usize,
    pub exact: usize,
    pub mat: CMat,
}

/// Dense generators, `P` and `𝓛 = Σ b_j b_j⁺`.
pub struct Generators {
    pub basis: FockBasis,
    pub b: Vec<CMat>,
    pub bplus: Vec<CMat>,
    pub z: Vec<CMat>,
    pub zb: Vec<CMat>,
    pub p: CMat,
}

pub fn build_generators(n: usize, d: usize) -> Result<Generators> {
    if d < 2 {
        return Err(Error::Budget { needed: 2, available: d });
    }
    let basis = FockBasis::new(n, d);
    let dense = |f: fn(usize) -> Ladder| (0..n).map(|j| basis.ladder(f(j)).dense()).collect::<Vec<_>>();
    let (b, bplus, z, zb) = (dense(Ladder::B), dense(Ladder::Bplus), dense(Ladder::Z), dense(Ladder::Zb));
    let p = CMat::from_diagonal(&nalgebra::DVector::from_iterator(
        basis.len(),
        basis.projector_diag().into_iter().map(|x| Complex64::new(x, 0.0)),
    ));
    Ok(Generators { basis, b, bplus, z, zb, p })
}

impl Generators {
    /// `Σ_j b_j b_j⁺`; exact on the whole truncation since `b⁺` acts first.
    pub fn laplacian(&self) -> CMat {
        let n = self.basis.len();
        (0..self.basis.n).fold(CMat::zeros(n, n), |acc, j| acc + &self.b[j] * &self.bplus[j])
    }
}

/// Residual of an oracle comparison.
#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub n: usize,
    pub d: usize,
    pub block: usize,
    pub residual: f64,
}

/// Max entry deviation on the common trusted block, relative to the largest
/// entry when that exceeds one.
pub fn compare(a: &FockMatrix, b: &FockMatrix) -> Result<Comparison> {
    if (a.n, a.d) != (b.n, b.d) {
        return Err(Error::BasisMismatch(format!("(n={}, D={}) vs (n={}, D={})", a.n, a.d, b.n, b.d)));
    }
    let m = a.exact.min(b.exact);
    let (mut diff, mut scale) = (0.0f64, 0.0f64);
    for c in 0..m {
        for r in 0..m {
            let (x, y) = (a.mat[(r, c)], b.mat[(r, c)]);
            diff = diff.max((x - y).norm());
            scale = scale.max(x.norm()).max(y.norm());
        }
    }
    let residual = diff / scale.max(1.0);
    Ok(Comparison { n: a.n, d: a.d, block: m, residual })
}

type Bindings = HashMap<Idx, usize>;

/// One concrete kernel monomial `c · f(Z) P g(Z')` with `f`, `g` as
/// multiplication words.
struct Piece {
    coef: Complex64,
    left: Vec<Ladder>,
    right: Vec<Ladder>,
}

/// Evaluates operator expressions on blocks of basis columns.
pub struct Oracle<'a> {
    pub basis: &'a FockBasis,
    pub assignment: &'a NumericAssignment,
    ops: HashMap<Ladder, SparseOp>,
}

impl<'a> Oracle<'a> {
    pub fn new(basis: &'a FockBasis, assignment: &'a NumericAssignment) -> Result<Self> {
        if basis.n != assignment.n {
            return Err(Error::BasisMismatch(format!("basis n={} but tensors sampled at n={}", basis.n, assignment.n)));
        }
        let mut ops = HashMap::new();
        for j in 0..basis.n {
            for g in [Ladder::B(j), Ladder::Bplus(j), Ladder::Z(j), Ladder::Zb(j)] {
                ops.insert(g, basis.ladder(g));
            }
        }
        Ok(Oracle { basis, assignment, ops })
    }

    fn step(&self, g: Ladder, v: &CMat) -> CMat {
        self.ops[&g].apply(v)
    }

    fn diag(&self, v: &CMat, f: impl Fn(usize) -> f64) -> CMat {
        let mut out = v.clone();
        for r in 0..v.nrows() {
            let s = f(self.basis.level(r));
            for c in 0..v.ncols() {
                out[(r, c)] *= s;
            }
        }
        out
    }

    fn project(&self, v: &CMat) -> CMat {
        self.diag(v, |l| if l == 0 { 1.0 } else { 0.0 })
    }

    fn offdiag(&self, v: &CMat) -> CMat {
        self.diag(v, |l| if l == 0 { 0.0 } else { 1.0 })
    }

    /// Pseudo-inverse of `L^k` on the `α ≠ 0` eigenspaces.
    fn inv(&self, k: u32, v: &CMat) -> CMat {
        self.diag(v, |l| {
            let lam = 4.0 * PI * l as f64;
            if lam > 1e-9 {
                lam.powi(-(k as i32))
            } else {
                0.0
            }
        })
    }

    fn label(&self, l: Idx, bind: &Bindings) -> Result<usize> {
        match l {
            Idx::Fixed(v) if v >= 1 && (v as usize) <= self.basis.n => Ok(v as usize - 1),
            Idx::Fixed(v) => Err(Error::Unbound(format!("index value {v} outside 1..={}", self.basis.n))),
            other => bind.get(&other).copied().ok_or_else(|| Error::Unbound(other.to_string())),
        }
    }

    fn gen_steps(&self, g: Gen, bind: &Bindings) -> Result<Vec<(Complex64, Ladder)>> {
        let one = Complex64::new(1.0, 0.0);
        Ok(match g {
            Gen::B(j) => vec![(one, Ladder::B(self.label(j, bind)?))],
            Gen::Bplus(j) => vec![(one, Ladder::Bplus(self.label(j, bind)?))],
            Gen::Mul(VarKind::Z, j) => vec![(one, Ladder::Z(self.label(j, bind)?))],
            Gen::Mul(_, j) => vec![(one, Ladder::Zb(self.label(j, bind)?))],
            // ∂_z = (π z̄ − b)/2, ∂_z̄ = (b⁺ − π z)/2
            Gen::Dz(j) => {
                let j = self.label(j, bind)?;
                vec![(one * (PI / 2.0), Ladder::Zb(j)), (-one * 0.5, Ladder::B(j))]
            }
            Gen::Dzb(j) => {
                let j = self.label(j, bind)?;
                vec![(one * 0.5, Ladder::Bplus(j)), (-one * (PI / 2.0), Ladder::Z(j))]
            }
        })
    }

    fn apply_gen(&self, g: Gen, bind: &Bindings, v: &CMat, adjoint: bool) -> Result<CMat> {
        let mut out = CMat::zeros(v.nrows(), v.ncols());
        for (c, s) in self.gen_steps(g, bind)? {
            let (c, s) = if adjoint { (c.conj(), s.adjoint()) } else { (c, s) };
            out += self.step(s, v) * c;
        }
        Ok(out)
    }

    fn pieces(&self, k: &KernelPoly, bind: &Bindings) -> Result<Vec<Piece>> {
        let mut acc: BTreeMap<(Vec<Ladder>, Vec<Ladder>), Complex64> = BTreeMap::new();
        for (m, s) in k.poly().terms() {
            expand_term(m, s, self.assignment, bind, |vars, coef| {
                let (mut left, mut right) = (Vec::new(), Vec::new());
                for &(kind, j) in vars {
                    match kind {
                        VarKind::Z => left.push(Ladder::Z(j)),
                        VarKind::Zb => left.push(Ladder::Zb(j)),
                        VarKind::Zp => right.push(Ladder::Z(j)),
                        VarKind::Zbp => right.push(Ladder::Zb(j)),
                        VarKind::B => unreachable!("kernels carry no ladder variables"),
                    }
                }
                left.sort();
                right.sort();
                *acc.entry((left, right)).or_default() += coef;
            })?;
        }
        Ok(acc.into_iter().map(|((left, right), coef)| Piece { coef, left, right }).collect())
    }

    /// `f P g` applied to `v`, or its adjoint `g* P f*`.
    fn apply_kernel(&self, k: &KernelPoly, bind: &Bindings, v: &CMat, adjoint: bool) -> Result<CMat> {
        let mut cache: HashMap<Vec<Ladder>, CMat> = HashMap::new();
        let mut out = CMat::zeros(v.nrows(), v.ncols());
        for piece in self.pieces(k, bind)? {
            let (first, last, coef) = if adjoint {
                let conj = |w: &[Ladder]| w.iter().map(|g| g.adjoint()).collect::<Vec<_>>();
                (conj(&piece.left), conj(&piece.right), piece.coef.conj())
            } else {
                (piece.right, piece.left, piece.coef)
            };
            let inner = match cache.get(&first) {
                Some(w) => w.clone(),
                None => {
                    let w = self.project(&first.iter().fold(v.clone(), |w, &g| self.step(g, &w)));
                    cache.insert(first.clone(), w.clone());
                    w
                }
            };
            out += last.iter().fold(inner, |w, &g| self.step(g, &w)) * coef;
        }
        Ok(out)
    }

    /// `x v`, or `x* v` when `adjoint` is set.
    pub fn apply(&self, x: &OpExpr, bind: &Bindings, v: &CMat, adjoint: bool) -> Result<CMat> {
        Ok(match x {
            OpExpr::P => self.project(v),
            OpExpr::Id => v.clone(),
            OpExpr::Kernel(k) => self.apply_kernel(k, bind, v, adjoint)?,
            OpExpr::Gen(g, body) => {
                if adjoint {
                    let w = self.apply_gen(*g, bind, v, true)?;
                    self.apply(body, bind, &w, true)?
                } else {
                    let w = self.apply(body, bind, v, false)?;
                    self.apply_gen(*g, bind, &w, false)?
                }
            }
            OpExpr::Project(body) | OpExpr::Offdiag(body) | OpExpr::Inv(_, body) => {
                let outer = |w: &CMat| match x {
                    OpExpr::Project(_) => self.project(w),
                    OpExpr::Offdiag(_) => self.offdiag(w),
                    OpExpr::Inv(k, _) => self.inv(*k, w),
                    _ => unreachable!(),
                };
                if adjoint {
                    self.apply(body, bind, &outer(v), true)?
                } else {
                    outer(&self.apply(body, bind, v, false)?)
                }
            }
            OpExpr::Scale(t, body) => {
                let c = eval_tensor(t, self.assignment, bind)?;
                self.apply(body, bind, v, adjoint)? * if adjoint { c.conj() } else { c }
            }
            OpExpr::Adjoint(body) => self.apply(body, bind, v, !adjoint)?,
            OpExpr::Compose(xs) => {
                let mut w = v.clone();
                if adjoint {
                    for y in xs {
                        w = self.apply(y, bind, &w, true)?;
                    }
                } else {
                    for y in xs.iter().rev() {
                        w = self.apply(y, bind, &w, false)?;
                    }
                }
                w
            }
            OpExpr::Sum(xs) => {
                let mut out = CMat::zeros(v.nrows(), v.ncols());
                for y in xs {
                    out += self.apply(y, bind, v, adjoint)?;
                }
                out
            }
            OpExpr::Bind(ls, body) => {
                let n = self.basis.n;
                let mut out = CMat::zeros(v.nrows(), v.ncols());
                for flat in 0..n.pow(ls.len() as u32) {
                    let mut inner = bind.clone();
                    let mut rest = flat;
                    for &l in ls {
                        inner.insert(l, rest % n);
                        rest /= n;
                    }
                    out += self.apply(body, &inner, v, adjoint)?;
                }
                out
            }
        })
    }

    /// Matrix of `x` on the block where truncation is exact.
    pub fn matrix_of(&self, x: &OpExpr, bind: &Bindings) -> Result<FockMatrix> {
        let reach = x.raise_budget().div_ceil(2);
        if reach > self.basis.d {
            return Err(Error::Budget { needed: reach, available: self.basis.d });
        }
        let exact = self.basis.prefix(self.basis.d - reach);
        let cols = CMat::identity(self.basis.len(), exact);
        let mat = self.apply(x, bind, &cols, false)?;
        Ok(FockMatrix { n: self.basis.n, d: self.basis.d, exact, mat })
    }

    pub fn matrix_of_kernel(&self, k: &KernelPoly, bind: &Bindings) -> Result<FockMatrix> {
        self.matrix_of(&OpExpr::Kernel(k.clone()), bind)
    }
}

/// Compares the matrix of a defining expression with that of its evaluated
/// kernel. Without an explicit truncation the basis is sized so that both are
/// exact up to degree 4.
pub fn expression_vs_kernel(x: &OpExpr, n: usize, trunc: Option<usize>, seed: u64) -> Result<Comparison> {
    let k = x.eval()?;
    let reach = x.raise_budget().max(k.max_degree()).div_ceil(2);
    let d = trunc.unwrap_or(4 + reach);
    if reach > d {
        return Err(Error::Budget { needed: reach, available: d });
    }
    let basis = FockBasis::new(n, d);
    let a = NumericAssignment::sample_admissible(n, seed)?;
    let oracle = Oracle::new(&basis, &a)?;
    let none = HashMap::new();
    compare(&oracle.matrix_of(x, &none)?, &oracle.matrix_of_kernel(&k, &none)?)
}

/// Gram matrix of the normalized one-dimensional states up to degree `d`,
/// computed by radial quadrature from the explicit functions. Used once to
/// validate the norm recursion.
pub fn quadrature_gram(d: usize) -> CMat {
    let basis = FockBasis::new(1, d);
    // coefficient maps z^i z̄^j → c, times e^{-π|z|²/2}
    let poly = |k: usize| {
        let (a, b) = basis.state(k);
        let mut p: HashMap<(i32, i32), f64> = HashMap::from([((b[0] as i32, 0), 1.0)]);
        for _ in 0..a[0] {
            let mut next = HashMap::new();
            for (&(i, j), &c) in &p {
                if i > 0 {
                    *next.entry((i - 1, j)).or_insert(0.0) -= 2.0 * i as f64 * c;
                }
                *next.entry((i, j + 1)).or_insert(0.0) += 2.0 * PI * c;
            }
            p = next;
        }
        p
    };
    // ∫_C |z|^{2m} e^{-π|z|²} dA = 2π ∫ r^{2m+1} e^{-πr²} dr, composite Simpson on [0, 8]
    let radial = |m: i32| {
        let (steps, hi) = (4000usize, 8.0f64);
        let h = hi / steps as f64;
        let f = |r: f64| r.powi(2 * m + 1) * (-PI * r * r).exp();
        let mut acc = f(0.0) + f(hi);
        for k in 1..steps {
            acc += f(k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
        }
        2.0 * PI * acc * h / 3.0
    };
    let radial: Vec<f64> = (0..=2 * d as i32).map(radial).collect();
    let polys: Vec<_> = (0..basis.len()).map(poly).collect();
    let n = basis.len();
    let mut g = CMat::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            let mut acc = 0.0;
            for (&(i, j), &x) in &polys[r] {
                for (&(k, l), &y) in &polys[c] {
                    // z^i z̄^j · conj(z^k z̄^l) survives the angular integral iff i + l = j + k
                    if i + l == j + k {
                        acc += x * y * radial[(i + l) as usize];
                    }
                }
            }
            g[(r, c)] = Complex64::new(acc / (basis.norm(r) * basis.norm(c)), 0.0);
        }
    }
    g
}
