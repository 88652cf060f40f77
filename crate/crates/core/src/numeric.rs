//! Random admissible values for the symbol families, and numeric evaluation
//! of indexed polynomials against them.

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::ExactScalar;
use crate::tensor::{Factor, Family, Idx, IndexedPoly, Monomial, VarKind};

/// Numeric values of every symbol family at dimension `n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericAssignment {
    pub n: usize,
    pub seed: u64,
    /// `J[a][b][c]`, flattened row-major, unbarred family.
    pub j: Vec<Complex64>,
    /// Real algebraic curvature tensor on `R^{2n}`, flattened.
    pub curv_real: Vec<f64>,
    /// Complex frame components; slot value `a + n·bar`.
    pub curv: Vec<Complex64>,
    /// All-barred second derivative family.
    pub ddj: Vec<Complex64>,
    pub phi: f64,
}

const CONSTRAINT_TOL: f64 = 1e-12;

fn rng_for(n: usize, seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream * 16 + n as u64);
    r
}

fn cplx(r: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))
}

/// Kulkarni–Nomizu product of two symmetric matrices.
fn kulkarni_nomizu(h: &DMatrix<f64>, k: &DMatrix<f64>) -> Vec<f64> {
    let m = h.nrows();
    let mut out = vec![0.0; m * m * m * m];
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for d in 0..m {
                    out[((a * m + b) * m + c) * m + d] =
                        h[(a, c)] * k[(b, d)] + h[(b, d)] * k[(a, c)] - h[(a, d)] * k[(b, c)] - h[(b, c)] * k[(a, d)];
                }
            }
        }
    }
    out
}

fn random_symmetric(r: &mut ChaCha8Rng, m: usize) -> DMatrix<f64> {
    let a = DMatrix::from_fn(m, m, |_, _| r.gen_range(-1.0..1.0));
    (&a + a.transpose()) * 0.5
}

/// Frame components `⟨R(U₁,U₂)U₃,U₄⟩` for `U = ∂/∂z_a` (slot `a`) and
/// `U = ∂/∂z̄_a` (slot `a + n`).
fn complexify(real: &[f64], n: usize) -> Vec<Complex64> {
    let m = 2 * n;
    let half = Complex64::new(0.5, 0.0);
    // frame[s][p]: component of slot vector s along e_p
    let mut frame = vec![vec![Complex64::new(0.0, 0.0); m]; m];
    for a in 0..n {
        frame[a][2 * a] = half;
        frame[a][2 * a + 1] = Complex64::new(0.0, -0.5);
        frame[a + n][2 * a] = half;
        frame[a + n][2 * a + 1] = Complex64::new(0.0, 0.5);
    }
    let mut cur: Vec<Complex64> = real.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    // contract one slot at a time; each pass moves the leading axis to the back
    for _ in 0..4 {
        let mut next = vec![Complex64::new(0.0, 0.0); m * m * m * m];
        for s in 0..m {
            for p in 0..m {
                let f = frame[s][p];
                if f == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for rest in 0..m * m * m {
                    next[rest * m + s] += f * cur[p * m * m * m + rest];
                }
            }
        }
        cur = next;
    }
    cur
}

impl NumericAssignment {
    /// Samples every family subject to the imposed relations: `J` antisymmetric
    /// in its last two slots with vanishing cyclic sum, a real algebraic
    /// curvature tensor whose `j`-contracted pure part matches the quadratic
    /// expression in `J`, and unconstrained `DdJ` and `Phi`.
    pub fn sample_admissible(n: usize, seed: u64) -> Result<Self> {
        if !(1..=4).contains(&n) {
            return Err(Error::Sampling(format!("dimension {n} outside 1..=4")));
        }
        let mut r = rng_for(n, seed, 0);
        let j = sample_j(&mut r, n);
        let m = 2 * n;

        let gens = 2 * n * n + 4;
        let mut base = vec![0.0; m.pow(4)];
        for _ in 0..3 {
            let (h, k) = (random_symmetric(&mut r, m), random_symmetric(&mut r, m));
            for (x, y) in base.iter_mut().zip(kulkarni_nomizu(&h, &k)) {
                *x += y;
            }
        }
        let basis: Vec<Vec<f64>> = (0..gens)
            .map(|_| {
                let (h, k) = (random_symmetric(&mut r, m), random_symmetric(&mut r, m));
                kulkarni_nomizu(&h, &k)
            })
            .collect();

        let target = contracted_target(&j, n);
        let lhs0 = contracted_curv(&complexify(&base, n), n);
        let cols: Vec<Vec<Complex64>> = basis.iter().map(|g| contracted_curv(&complexify(g, n), n)).collect();
        let rows = 2 * n * n;
        let a = DMatrix::from_fn(rows, gens, |i, g| {
            let c = cols[g][i / 2];
            if i % 2 == 0 {
                c.re
            } else {
                c.im
            }
        });
        let b = DVector::from_fn(rows, |i, _| {
            let c = target[i / 2] - lhs0[i / 2];
            if i % 2 == 0 {
                c.re
            } else {
                c.im
            }
        });
        let pinv = a.pseudo_inverse(1e-12).map_err(|e| Error::Sampling(e.to_string()))?;
        let coef = pinv * b;
        let mut curv_real = base;
        for (g, c) in basis.iter().zip(coef.iter()) {
            for (x, y) in curv_real.iter_mut().zip(g) {
                *x += c * y;
            }
        }
        let curv = complexify(&curv_real, n);

        let mut r2 = rng_for(n, seed, 1);
        let ddj = (0..n.pow(4)).map(|_| cplx(&mut r2)).collect();
        let phi = r2.gen_range(-1.0..1.0);

        let out = NumericAssignment { n, seed, j, curv_real, curv, ddj, phi };
        let (cyc, con) = (out.cyclic_residual(), out.contracted_residual());
        if cyc > CONSTRAINT_TOL || con > CONSTRAINT_TOL {
            return Err(Error::Sampling(format!(
                "constraint residuals too large at n={n}, seed={seed}: cyclic {cyc:e}, contracted {con:e}"
            )));
        }
        Ok(out)
    }

    /// Same assignment with the `DdJ` family redrawn from another seed.
    pub fn with_ddj_resampled(&self, seed: u64) -> Self {
        let mut r = rng_for(self.n, seed, 2);
        let mut out = self.clone();
        out.ddj = (0..self.n.pow(4)).map(|_| cplx(&mut r)).collect();
        out
    }

    /// Same assignment with `Phi` redrawn from another seed.
    pub fn with_phi_resampled(&self, seed: u64) -> Self {
        let mut r = rng_for(self.n, seed, 3);
        let mut out = self.clone();
        out.phi = r.gen_range(-10.0..10.0);
        out
    }

    fn j_at(&self, a: usize, b: usize, c: usize) -> Complex64 {
        self.j[(a * self.n + b) * self.n + c]
    }

    fn curv_at(&self, s: [usize; 4]) -> Complex64 {
        let m = 2 * self.n;
        self.curv[((s[0] * m + s[1]) * m + s[2]) * m + s[3]]
    }

    pub fn factor_value(&self, f: &Factor, vals: &[usize]) -> Complex64 {
        let n = self.n;
        match f.fam {
            Family::J { bar } => {
                let v = self.j_at(vals[0], vals[1], vals[2]);
                if bar {
                    v.conj()
                } else {
                    v
                }
            }
            Family::Curv { bars } => {
                let mut s = [0usize; 4];
                for k in 0..4 {
                    s[k] = vals[k] + if bars >> k & 1 == 1 { n } else { 0 };
                }
                self.curv_at(s)
            }
            Family::DdJ { bar } => {
                let v = self.ddj[((vals[0] * n + vals[1]) * n + vals[2]) * n + vals[3]];
                if bar {
                    v
                } else {
                    v.conj()
                }
            }
            Family::Phi => Complex64::new(self.phi, 0.0),
        }
    }

    /// Largest violation of antisymmetry and of the vanishing cyclic sum.
    pub fn cyclic_residual(&self) -> f64 {
        let n = self.n;
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let cyc = self.j_at(a, b, c) + self.j_at(b, c, a) + self.j_at(c, a, b);
                    let anti = self.j_at(a, b, c) + self.j_at(a, c, b);
                    worst = worst.max(cyc.norm()).max(anti.norm());
                }
            }
        }
        worst
    }

    /// Largest violation of the contracted pure-curvature identity.
    pub fn contracted_residual(&self) -> f64 {
        let lhs = contracted_curv(&self.curv, self.n);
        let rhs = contracted_target(&self.j, self.n);
        lhs.iter().zip(&rhs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

fn sample_j(r: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    let at = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
    let t: Vec<Complex64> = (0..n.pow(3)).map(|_| cplx(r)).collect();
    let mut anti = vec![Complex64::new(0.0, 0.0); n.pow(3)];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                anti[at(a, b, c)] = (t[at(a, b, c)] - t[at(a, c, b)]) * 0.5;
            }
        }
    }
    let mut j = anti.clone();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let s = anti[at(a, b, c)] + anti[at(b, c, a)] + anti[at(c, a, b)];
                j[at(a, b, c)] -= s / 3.0;
            }
        }
    }
    j
}

/// `Σ_j R(∂z_j, ∂z_r, ∂z̄_j, ∂z̄_q)` as an `n×n` table.
fn contracted_curv(curv: &[Complex64], n: usize) -> Vec<Complex64> {
    let m = 2 * n;
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for r in 0..n {
        for q in 0..n {
            for j in 0..n {
                out[r * n + q] += curv[((j * m + r) * m + j + n) * m + q + n];
            }
        }
    }
    out
}

/// `½ Σ J_{jri} conj(J_{jqi})` as an `n×n` table.
fn contracted_target(jt: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for r in 0..n {
        for q in 0..n {
            for j in 0..n {
                for i in 0..n {
                    out[r * n + q] += jt[(j * n + r) * n + i] * jt[(j * n + q) * n + i].conj() * 0.5;
                }
            }
        }
    }
    out
}

/// Walks every assignment of the summed labels of one term. The callback gets
/// the concrete variable list `(kind, value)` and the numeric coefficient.
pub fn expand_term(
    m: &Monomial,
    s: &ExactScalar,
    a: &NumericAssignment,
    bind: &HashMap<Idx, usize>,
    mut f: impl FnMut(&[(VarKind, usize)], Complex64),
) -> Result<()> {
    let n = a.n;
    let scalar = s.eval(n as f64);
    let bound = m.bound_labels();
    for l in m.free_labels() {
        if !bind.contains_key(&l) {
            return Err(Error::Unbound(l.to_string()));
        }
    }
    let mut vals = vec![0usize; bound.len()];
    let lookup = |l: Idx, vals: &[usize]| -> Result<usize> {
        match l {
            Idx::Fixed(v) if (v as usize) >= 1 && (v as usize) <= n => Ok(v as usize - 1),
            Idx::Fixed(v) => Err(Error::Unbound(format!("index value {v} outside 1..={n}"))),
            other => match bound.iter().position(|&b| b == other) {
                Some(k) => Ok(vals[k]),
                None => Ok(bind[&other]),
            },
        }
    };
    let mut buf = Vec::with_capacity(m.vars.len());
    loop {
        let mut coef = scalar;
        for fac in &m.factors {
            let iv = fac.idx.iter().map(|&l| lookup(l, &vals)).collect::<Result<Vec<_>>>()?;
            coef *= a.factor_value(fac, &iv);
        }
        for &(x, y) in &m.deltas {
            if lookup(x, &vals)? != lookup(y, &vals)? {
                coef = Complex64::new(0.0, 0.0);
            }
        }
        if coef != Complex64::new(0.0, 0.0) {
            buf.clear();
            for v in &m.vars {
                buf.push((v.kind, lookup(v.idx, &vals)?));
            }
            f(&buf, coef);
        }
        let mut k = 0;
        loop {
            if k == vals.len() {
                return Ok(());
            }
            vals[k] += 1;
            if vals[k] < n {
                break;
            }
            vals[k] = 0;
            k += 1;
        }
    }
}

/// Full Einstein sum of a variable-free polynomial.
pub fn eval_tensor(p: &IndexedPoly, a: &NumericAssignment, bind: &HashMap<Idx, usize>) -> Result<Complex64> {
    let mut total = Complex64::new(0.0, 0.0);
    for (m, s) in p.terms() {
        if !m.vars.is_empty() {
            return Err(Error::NotKernel(format!("unexpected variables in coefficient term {m}")));
        }
        expand_term(m, s, a, bind, |_, c| total += c)?;
    }
    Ok(total)
}

/// Values over all assignments of `free` (row-major in `free` order).
pub fn eval_array(p: &IndexedPoly, a: &NumericAssignment, free: &[Idx]) -> Result<Vec<Complex64>> {
    let extra: Vec<Idx> = p.free_labels().into_iter().filter(|l| !free.contains(l)).collect();
    if !extra.is_empty() {
        return Err(Error::Arity { expected: free.len(), found: free.len() + extra.len() });
    }
    let n = a.n;
    let total = n.pow(free.len() as u32);
    let mut out = Vec::with_capacity(total);
    for flat in 0..total {
        let mut bind = HashMap::new();
        let mut rest = flat;
        for &l in free.iter().rev() {
            bind.insert(l, rest % n);
            rest /= n;
        }
        out.push(eval_tensor(p, a, &bind)?);
    }
    Ok(out)
}
