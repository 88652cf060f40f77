//! Indexed polynomials with Einstein summation.
//!
//! One representation serves both coefficient tensors and kernels: a
//! [`Monomial`] carries geometric symbol factors, Kronecker deltas and
//! indexed variables. A label that occurs twice in a term is summed; a label
//! that occurs once is free. Canonical form contracts deltas, applies the sign
//! symmetries of each family, and renames summed labels deterministically.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};

use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

const NAME_STRIDE: u32 = 1000;
const EXT_BASE: u32 = 200_000_000;
static NEXT_EXT: AtomicU32 = AtomicU32::new(EXT_BASE);

/// Index label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Idx {
    /// User-visible name such as `j` or `a2`, or a generated external label.
    Name(u32),
    /// Canonical summed label.
    Dummy(u32),
    /// Concrete 1-based index value.
    Fixed(u8),
}

impl Idx {
    /// Parses an identifier of the form letter + optional digits.
    pub fn name(s: &str) -> Option<Idx> {
        let mut chars = s.chars();
        let first = chars.next()?;
        if !first.is_ascii_alphabetic() {
            return None;
        }
        let rest = chars.as_str();
        let suffix = if rest.is_empty() {
            0
        } else {
            if !rest.chars().all(|c| c.is_ascii_digit()) || rest.len() > 2 {
                return None;
            }
            rest.parse::<u32>().ok()? + 1
        };
        Some(Idx::Name(first as u32 * NAME_STRIDE + suffix))
    }

    /// Shorthand for single-letter names; panics on non-letters.
    pub fn ch(c: char) -> Idx {
        assert!(c.is_ascii_alphabetic(), "index names are ASCII letters");
        Idx::Name(c as u32 * NAME_STRIDE)
    }

    /// A fresh label, unique for the process lifetime.
    pub fn fresh() -> Idx {
        Idx::Name(NEXT_EXT.fetch_add(1, Ordering::Relaxed))
    }

    pub fn is_fixed(self) -> bool {
        matches!(self, Idx::Fixed(_))
    }
}

impl fmt::Display for Idx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Idx::Name(v) if v >= EXT_BASE => write!(f, "x{}", v - EXT_BASE),
            Idx::Name(v) => {
                let c = char::from_u32(v / NAME_STRIDE).unwrap_or('?');
                match v % NAME_STRIDE {
                    0 => write!(f, "{c}"),
                    s => write!(f, "{c}{}", s - 1),
                }
            }
            Idx::Dummy(d) => write!(f, "_{d}"),
            Idx::Fixed(v) => write!(f, "{v}"),
        }
    }
}

/// Geometric symbol families.
///
/// * `J` is `⟨(∇_{u₁}J)u₂, u₃⟩` with all slots of type (1,0) (`bar = false`)
///   or all of type (0,1). Antisymmetric in slots 2 and 3.
/// * `Curv` is `⟨R(u₁,u₂)u₃,u₄⟩` on frame vectors `∂/∂z` or `∂/∂z̄`; bit `k` of
///   `bars` marks slot `k` as barred.
/// * `DdJ` is `⟨(∇∇J)_{(u₁,u₂)}u₃, u₄⟩` with all slots of one type. No sign
///   symmetries are imposed.
/// * `Phi` is the real scalar potential.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    J { bar: bool },
    Curv { bars: u8 },
    DdJ { bar: bool },
    Phi,
}

impl Family {
    pub fn arity(self) -> usize {
        match self {
            Family::J { .. } => 3,
            Family::Curv { .. } | Family::DdJ { .. } => 4,
            Family::Phi => 0,
        }
    }

    pub fn conj(self) -> Family {
        match self {
            Family::J { bar } => Family::J { bar: !bar },
            Family::Curv { bars } => Family::Curv { bars: !bars & 0xf },
            Family::DdJ { bar } => Family::DdJ { bar: !bar },
            Family::Phi => Family::Phi,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub fam: Family,
    pub idx: Vec<Idx>,
}

impl Factor {
    pub fn new(fam: Family, idx: Vec<Idx>) -> Self {
        assert_eq!(fam.arity(), idx.len(), "wrong arity for {fam:?}");
        Factor { fam, idx }
    }

    /// Sign-symmetry images of this factor, the identity first.
    fn variants(&self) -> Vec<(Factor, bool)> {
        match self.fam {
            Family::J { .. } => {
                let i = &self.idx;
                vec![(self.clone(), false), (Factor { fam: self.fam, idx: vec![i[0], i[2], i[1]] }, true)]
            }
            Family::Curv { bars } => {
                let mut out = Vec::with_capacity(8);
                for s01 in [false, true] {
                    for s23 in [false, true] {
                        for pair in [false, true] {
                            let mut perm = [0usize, 1, 2, 3];
                            if s01 {
                                perm.swap(0, 1);
                            }
                            if s23 {
                                perm.swap(2, 3);
                            }
                            if pair {
                                perm = [perm[2], perm[3], perm[0], perm[1]];
                            }
                            let idx = perm.iter().map(|&p| self.idx[p]).collect();
                            let nb = perm.iter().enumerate().fold(0u8, |acc, (k, &p)| acc | (((bars >> p) & 1) << k));
                            out.push((Factor { fam: Family::Curv { bars: nb }, idx }, s01 ^ s23));
                        }
                    }
                }
                out
            }
            _ => vec![(self.clone(), false)],
        }
    }
}

/// Kinds of indexed variables. `B` marks a ladder operator `b_j` standing in
/// front of the Gaussian; it appears only in Fock normal forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKind {
    B,
    Z,
    Zb,
    Zp,
    Zbp,
}

impl VarKind {
    pub fn conj(self) -> VarKind {
        match self {
            VarKind::Z => VarKind::Zb,
            VarKind::Zb => VarKind::Z,
            VarKind::Zp => VarKind::Zbp,
            VarKind::Zbp => VarKind::Zp,
            VarKind::B => panic!("ladder operators have no conjugate variable"),
        }
    }

    /// The primed/unprimed mirror `z ↔ z̄′`, `z̄ ↔ z′` that turns left actions
    /// into right actions.
    pub fn mirror(self) -> VarKind {
        match self {
            VarKind::Z => VarKind::Zbp,
            VarKind::Zbp => VarKind::Z,
            VarKind::Zb => VarKind::Zp,
            VarKind::Zp => VarKind::Zb,
            VarKind::B => VarKind::B,
        }
    }

    pub fn is_primed(self) -> bool {
        matches!(self, VarKind::Zp | VarKind::Zbp)
    }

    pub fn tag(self) -> &'static str {
        match self {
            VarKind::B => "b",
            VarKind::Z => "z",
            VarKind::Zb => "zb",
            VarKind::Zp => "zp",
            VarKind::Zbp => "zbp",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub kind: VarKind,
    pub idx: Idx,
}

impl Var {
    pub fn new(kind: VarKind, idx: Idx) -> Self {
        Var { kind, idx }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub factors: Vec<Factor>,
    pub deltas: Vec<(Idx, Idx)>,
    pub vars: Vec<Var>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(kind: VarKind, idx: Idx) -> Self {
        Monomial { vars: vec![Var::new(kind, idx)], ..Default::default() }
    }

    pub fn factor(fam: Family, idx: Vec<Idx>) -> Self {
        Monomial { factors: vec![Factor::new(fam, idx)], ..Default::default() }
    }

    pub fn delta(a: Idx, b: Idx) -> Self {
        Monomial { deltas: vec![(a, b)], ..Default::default() }
    }

    fn labels(&self) -> impl Iterator<Item = Idx> + '_ {
        self.factors
            .iter()
            .flat_map(|f| f.idx.iter().copied())
            .chain(self.deltas.iter().flat_map(|&(a, b)| [a, b]))
            .chain(self.vars.iter().map(|v| v.idx))
    }

    fn counts(&self) -> HashMap<Idx, usize> {
        let mut c = HashMap::new();
        for l in self.labels().filter(|l| !l.is_fixed()) {
            *c.entry(l).or_insert(0) += 1;
        }
        c
    }

    /// Labels occurring exactly twice (summed).
    pub fn bound_labels(&self) -> Vec<Idx> {
        let mut v: Vec<Idx> = self.counts().into_iter().filter(|&(_, c)| c == 2).map(|(l, _)| l).collect();
        v.sort();
        v
    }

    /// Non-fixed labels occurring once.
    pub fn free_labels(&self) -> Vec<Idx> {
        let mut v: Vec<Idx> = self.counts().into_iter().filter(|&(_, c)| c == 1).map(|(l, _)| l).collect();
        v.sort();
        v
    }

    pub fn max_dummy(&self) -> Option<u32> {
        self.labels()
            .filter_map(|l| match l {
                Idx::Dummy(d) => Some(d),
                _ => None,
            })
            .max()
    }

    pub fn map_labels(&self, mut f: impl FnMut(Idx) -> Idx) -> Monomial {
        Monomial {
            factors: self
                .factors
                .iter()
                .map(|x| Factor { fam: x.fam, idx: x.idx.iter().map(|&i| f(i)).collect() })
                .collect(),
            deltas: self.deltas.iter().map(|&(a, b)| (f(a), f(b))).collect(),
            vars: self.vars.iter().map(|v| Var::new(v.kind, f(v.idx))).collect(),
        }
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        out.factors.extend(other.factors.iter().cloned());
        out.deltas.extend(other.deltas.iter().copied());
        out.vars.extend(other.vars.iter().copied());
        out
    }

    /// Replaces every dummy by a fresh external name, so that the monomial can
    /// be split and its pieces processed separately without losing contractions.
    pub fn externalize(&self) -> Monomial {
        let mut map = HashMap::new();
        self.map_labels(|l| match l {
            Idx::Dummy(_) => *map.entry(l).or_insert_with(Idx::fresh),
            other => other,
        })
    }

    pub fn degree(&self) -> usize {
        self.vars.iter().filter(|v| v.kind != VarKind::B).count()
    }

    pub fn b_len(&self) -> usize {
        self.vars.iter().filter(|v| v.kind == VarKind::B).count()
    }

    pub fn has_family(&self, pred: impl Fn(Family) -> bool) -> bool {
        self.factors.iter().any(|f| pred(f.fam))
    }

    pub fn validate(&self) -> Result<()> {
        for (l, c) in self.counts() {
            if c > 2 {
                return Err(Error::IndexOveruse(l.to_string()));
            }
        }
        Ok(())
    }
}

/// Result of canonicalizing one term.
enum Canon {
    Zero,
    Term(Monomial, ExactScalar),
}

fn contract_deltas(mut m: Monomial, mut s: ExactScalar) -> Canon {
    loop {
        let counts = m.counts();
        let mut changed = false;
        let mut k = 0;
        while k < m.deltas.len() {
            let (a, b) = m.deltas[k];
            if a == b {
                m.deltas.remove(k);
                if !a.is_fixed() {
                    s = &s * &ExactScalar::n_pow(1);
                }
                changed = true;
                break;
            }
            if a.is_fixed() && b.is_fixed() {
                return Canon::Zero;
            }
            let (from, to) = if !a.is_fixed() && counts.get(&a) == Some(&2) {
                (a, b)
            } else if !b.is_fixed() && counts.get(&b) == Some(&2) {
                (b, a)
            } else {
                k += 1;
                continue;
            };
            m.deltas.remove(k);
            m = m.map_labels(|l| if l == from { to } else { l });
            changed = true;
            break;
        }
        if !changed {
            break;
        }
    }
    for d in &mut m.deltas {
        if d.0 > d.1 {
            *d = (d.1, d.0);
        }
    }
    m.deltas.sort();
    Canon::Term(m, s)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n <= 1 {
        return vec![(0..n).collect()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn relabel(factors: &[Factor], deltas: &[(Idx, Idx)], vars: &[Var], bound: &[Idx]) -> Monomial {
    let mut map: HashMap<Idx, Idx> = HashMap::new();
    let mut next = 0u32;
    for f in factors {
        for &i in &f.idx {
            if bound.contains(&i) && !map.contains_key(&i) {
                map.insert(i, Idx::Dummy(next));
                next += 1;
            }
        }
    }
    // var-var contractions, ordered by their pair of kinds
    let mut pairs: BTreeMap<Idx, Vec<VarKind>> = BTreeMap::new();
    for v in vars {
        if bound.contains(&v.idx) && !map.contains_key(&v.idx) {
            pairs.entry(v.idx).or_default().push(v.kind);
        }
    }
    let mut pairs: Vec<(Vec<VarKind>, Idx)> = pairs
        .into_iter()
        .map(|(l, mut ks)| {
            ks.sort();
            (ks, l)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.cmp(&b.0));
    for (_, l) in pairs {
        map.insert(l, Idx::Dummy(next));
        next += 1;
    }
    let r = |i: Idx| *map.get(&i).unwrap_or(&i);
    let mut vars: Vec<Var> = vars.iter().map(|v| Var::new(v.kind, r(v.idx))).collect();
    vars.sort();
    Monomial {
        factors: factors.iter().map(|f| Factor { fam: f.fam, idx: f.idx.iter().map(|&i| r(i)).collect() }).collect(),
        deltas: deltas.to_vec(),
        vars,
    }
}

fn canonical(m: Monomial, s: ExactScalar) -> Canon {
    if s.is_zero() {
        return Canon::Zero;
    }
    let (m, s) = match contract_deltas(m, s) {
        Canon::Zero => return Canon::Zero,
        Canon::Term(m, s) => (m, s),
    };
    let bound = m.bound_labels();
    let variant_lists: Vec<Vec<(Factor, bool)>> = m.factors.iter().map(|f| f.variants()).collect();
    let mut best: Option<(Monomial, bool)> = None;
    let mut both_signs = false;
    let mut choice = vec![0usize; variant_lists.len()];
    loop {
        let mut sign = false;
        let mut chosen: Vec<Factor> = Vec::with_capacity(choice.len());
        for (k, &c) in choice.iter().enumerate() {
            let (f, neg) = &variant_lists[k][c];
            sign ^= neg;
            chosen.push(f.clone());
        }
        chosen.sort_by_key(|a| a.fam);
        // blocks of equal family may be permuted freely
        let mut blocks: Vec<(usize, usize)> = Vec::new();
        let mut start = 0;
        for k in 1..=chosen.len() {
            if k == chosen.len() || chosen[k].fam != chosen[start].fam {
                blocks.push((start, k));
                start = k;
            }
        }
        let block_perms: Vec<Vec<Vec<usize>>> = blocks.iter().map(|&(a, b)| permutations(b - a)).collect();
        let mut bp = vec![0usize; blocks.len()];
        loop {
            let mut ordered = Vec::with_capacity(chosen.len());
            for (bi, &(a, _)) in blocks.iter().enumerate() {
                for &p in &block_perms[bi][bp[bi]] {
                    ordered.push(chosen[a + p].clone());
                }
            }
            let cand = relabel(&ordered, &m.deltas, &m.vars, &bound);
            match &best {
                None => best = Some((cand, sign)),
                Some((b, bs)) => {
                    if cand < *b {
                        best = Some((cand, sign));
                        both_signs = false;
                    } else if cand == *b && sign != *bs {
                        both_signs = true;
                    }
                }
            }
            if !advance(&mut bp, &block_perms.iter().map(|v| v.len()).collect::<Vec<_>>()) {
                break;
            }
        }
        if !advance(&mut choice, &variant_lists.iter().map(|v| v.len()).collect::<Vec<_>>()) {
            break;
        }
    }
    if both_signs {
        return Canon::Zero;
    }
    let (mono, neg) = best.unwrap();
    Canon::Term(mono, if neg { -s } else { s })
}

fn advance(counter: &mut [usize], limits: &[usize]) -> bool {
    for k in 0..counter.len() {
        counter[k] += 1;
        if counter[k] < limits[k] {
            return true;
        }
        counter[k] = 0;
    }
    false
}

/// Polynomial in indexed symbols and variables, kept in canonical form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IndexedPoly {
    terms: BTreeMap<Monomial, ExactScalar>,
}

impl IndexedPoly {
    pub fn zero() -> Self {
        IndexedPoly::default()
    }

    pub fn one() -> Self {
        IndexedPoly::term(Monomial::one(), ExactScalar::one())
    }

    pub fn scalar(s: ExactScalar) -> Self {
        IndexedPoly::term(Monomial::one(), s)
    }

    pub fn term(m: Monomial, s: ExactScalar) -> Self {
        let mut p = IndexedPoly::zero();
        p.add_term(m, s);
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        IndexedPoly::term(m, ExactScalar::one())
    }

    /// Checked constructor for user input: rejects labels used more than twice.
    pub fn try_term(m: Monomial, s: ExactScalar) -> Result<Self> {
        m.validate()?;
        Ok(IndexedPoly::term(m, s))
    }

    pub fn add_term(&mut self, m: Monomial, s: ExactScalar) {
        debug_assert!(m.validate().is_ok(), "malformed term {m:?}");
        if let Canon::Term(m, s) = canonical(m, s) {
            use std::collections::btree_map::Entry;
            match self.terms.entry(m) {
                Entry::Vacant(e) => {
                    e.insert(s);
                }
                Entry::Occupied(mut e) => {
                    *e.get_mut() += &s;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &IndexedPoly) -> IndexedPoly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &IndexedPoly) {
        for (m, s) in &other.terms {
            use std::collections::btree_map::Entry;
            match self.terms.entry(m.clone()) {
                Entry::Vacant(e) => {
                    e.insert(s.clone());
                }
                Entry::Occupied(mut e) => {
                    *e.get_mut() += s;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
    }

    pub fn sub(&self, other: &IndexedPoly) -> IndexedPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> IndexedPoly {
        self.scale(&ExactScalar::int(-1))
    }

    pub fn scale(&self, s: &ExactScalar) -> IndexedPoly {
        if s.is_zero() {
            return IndexedPoly::zero();
        }
        IndexedPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    /// Einstein product: labels shared between the factors are summed; the
    /// canonical dummies of the right factor are renamed apart first.
    pub fn mul(&self, other: &IndexedPoly) -> IndexedPoly {
        let mut out = IndexedPoly::zero();
        for (m1, s1) in &self.terms {
            let offset = m1.max_dummy().map_or(0, |d| d + 1);
            for (m2, s2) in &other.terms {
                let m2 = m2.map_labels(|l| match l {
                    Idx::Dummy(d) => Idx::Dummy(d + offset),
                    o => o,
                });
                out.add_term(m1.concat(&m2), s1 * s2);
            }
        }
        out
    }

    /// Product that refuses to contract any of `keep_free`.
    pub fn mul_contract(&self, other: &IndexedPoly, keep_free: &[Idx]) -> Result<IndexedPoly> {
        let left = self.free_labels();
        let right = other.free_labels();
        for k in keep_free {
            if left.contains(k) && right.contains(k) {
                return Err(Error::SignatureClash(k.to_string()));
            }
        }
        Ok(self.mul(other))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> IndexedPoly {
        self.mul(&IndexedPoly::monomial(m.clone()))
    }

    /// Term-wise rewrite; the closure may return any number of new terms.
    pub fn flat_map(&self, f: impl Fn(&Monomial, &ExactScalar) -> Vec<(Monomial, ExactScalar)>) -> IndexedPoly {
        let mut out = IndexedPoly::zero();
        for (m, s) in &self.terms {
            for (m2, s2) in f(m, s) {
                out.add_term(m2, s2);
            }
        }
        out
    }

    pub fn filter(&self, pred: impl Fn(&Monomial) -> bool) -> IndexedPoly {
        IndexedPoly { terms: self.terms.iter().filter(|(m, _)| pred(m)).map(|(m, s)| (m.clone(), s.clone())).collect() }
    }

    /// Complex conjugation: scalars, symbol families and variables.
    pub fn conj(&self) -> IndexedPoly {
        self.flat_map(|m, s| {
            let m2 = Monomial {
                factors: m.factors.iter().map(|f| Factor { fam: f.fam.conj(), idx: f.idx.clone() }).collect(),
                deltas: m.deltas.clone(),
                vars: m.vars.iter().map(|v| Var::new(v.kind.conj(), v.idx)).collect(),
            };
            vec![(m2, s.conj())]
        })
    }

    pub fn map_vars(&self, f: impl Fn(VarKind) -> VarKind) -> IndexedPoly {
        self.flat_map(|m, s| {
            let mut m2 = m.clone();
            for v in &mut m2.vars {
                v.kind = f(v.kind);
            }
            vec![(m2, s.clone())]
        })
    }

    pub fn substitute(&self, from: Idx, to: Idx) -> IndexedPoly {
        self.flat_map(|m, s| vec![(m.map_labels(|l| if l == from { to } else { l }), s.clone())])
    }

    /// Union of free labels over all terms.
    pub fn free_labels(&self) -> Vec<Idx> {
        let mut v: Vec<Idx> = self.terms.keys().flat_map(|m| m.free_labels()).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn contains_family(&self, pred: impl Fn(Family) -> bool + Copy) -> bool {
        self.terms.keys().any(|m| m.has_family(pred))
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.idx.iter().map(|i| i.to_string()).collect();
        match self.fam {
            Family::J { bar } => write!(f, "{}[{}]", if bar { "Jb" } else { "J" }, idx.join(",")),
            Family::Curv { bars } => {
                let pat: String = (0..4).map(|k| if bars >> k & 1 == 1 { 'b' } else { 'u' }).collect();
                write!(f, "R{}[{}]", pat, idx.join(","))
            }
            Family::DdJ { bar } => write!(f, "{}[{}]", if bar { "DDJb" } else { "DDJ" }, idx.join(",")),
            Family::Phi => write!(f, "Phi"),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        parts.extend(self.deltas.iter().map(|(a, b)| format!("δ[{a},{b}]")));
        parts.extend(self.vars.iter().map(|v| format!("{}[{}]", v.kind.tag(), v.idx)));
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

impl fmt::Display for IndexedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, s)) in self.terms.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "+ [{s}] {m}")?;
        }
        Ok(())
    }
}

/// Convenience constructors for the common symbols.
pub mod sym {
    use super::*;

    pub fn j(a: Idx, b: Idx, c: Idx) -> Monomial {
        Monomial::factor(Family::J { bar: false }, vec![a, b, c])
    }

    pub fn jb(a: Idx, b: Idx, c: Idx) -> Monomial {
        Monomial::factor(Family::J { bar: true }, vec![a, b, c])
    }

    /// `⟨R(u₁,u₂)u₃,u₄⟩`; `pattern` uses `u` for ∂/∂z and `b` for ∂/∂z̄, e.g. `"ubub"`.
    pub fn curv(pattern: &str, idx: [Idx; 4]) -> Monomial {
        Monomial::factor(Family::Curv { bars: bars(pattern) }, idx.to_vec())
    }

    pub fn bars(pattern: &str) -> u8 {
        assert_eq!(pattern.len(), 4, "curvature pattern has four slots");
        pattern.chars().enumerate().fold(0u8, |acc, (k, c)| match c {
            'u' => acc,
            'b' => acc | (1 << k),
            _ => panic!("pattern characters are `u` or `b`"),
        })
    }

    pub fn ddjb(a: Idx, b: Idx, c: Idx, d: Idx) -> Monomial {
        Monomial::factor(Family::DdJ { bar: true }, vec![a, b, c, d])
    }

    pub fn phi() -> Monomial {
        Monomial::factor(Family::Phi, vec![])
    }

    pub fn delta(a: Idx, b: Idx) -> Monomial {
        Monomial::delta(a, b)
    }

    pub fn z(kind: VarKind, a: Idx) -> Monomial {
        Monomial::var(kind, a)
    }

    /// Product of monomials.
    pub fn prod(ms: &[Monomial]) -> Monomial {
        ms.iter().fold(Monomial::one(), |acc, m| acc.concat(m))
    }
}

#[cfg(test)]
mod tests {
    use super::sym::*;
    use super::*;

    fn c(x: char) -> Idx {
        Idx::ch(x)
    }

    #[test]
    fn delta_contracts_onto_bound_label() {
        // δ_ij X_i → X_j, with X a variable
        let p = IndexedPoly::monomial(prod(&[delta(c('i'), c('j')), z(VarKind::Z, c('i'))]));
        assert_eq!(p, IndexedPoly::monomial(z(VarKind::Z, c('j'))));
    }

    #[test]
    fn delta_trace_is_dimension() {
        let p = IndexedPoly::monomial(delta(c('i'), c('i')));
        assert_eq!(p, IndexedPoly::scalar(ExactScalar::n_pow(1)));
        let fixed = IndexedPoly::monomial(delta(Idx::Fixed(1), Idx::Fixed(1)));
        assert_eq!(fixed, IndexedPoly::one());
        assert!(IndexedPoly::monomial(delta(Idx::Fixed(1), Idx::Fixed(2))).is_zero());
    }

    #[test]
    fn antisymmetric_pairing_vanishes() {
        // J_sti δ_ij δ_kt summed against a (t,i)-symmetric pairing drops out
        let (s, t, i, jj, k) = (c('s'), c('t'), c('i'), c('j'), c('k'));
        let p = IndexedPoly::monomial(prod(&[
            j(s, t, i),
            delta(i, jj),
            delta(k, t),
            z(VarKind::B, k),
            z(VarKind::B, jj),
            z(VarKind::Z, s),
        ]));
        assert!(p.is_zero(), "{p}");
    }

    #[test]
    fn j_antisymmetry_sign() {
        let (s, i, t) = (c('s'), c('i'), c('t'));
        let a = IndexedPoly::monomial(j(s, i, t));
        let b = IndexedPoly::term(j(s, t, i), ExactScalar::int(-1));
        assert_eq!(a, b);
    }

    #[test]
    fn dummy_renaming_is_canonical() {
        let (a, b, cc, i) = (c('a'), c('b'), c('c'), c('i'));
        let p = IndexedPoly::monomial(prod(&[j(a, i, b), z(VarKind::Z, a)]));
        let q = IndexedPoly::monomial(prod(&[j(cc, i, b), z(VarKind::Z, cc)]));
        assert_eq!(p, q);
    }

    #[test]
    fn curvature_slot_swap_flips_sign() {
        let [a, b, d, e] = [c('a'), c('b'), c('d'), c('e')];
        let p = IndexedPoly::monomial(curv("uubb", [a, b, d, e]));
        let q = IndexedPoly::term(curv("uubb", [b, a, d, e]), ExactScalar::int(-1));
        assert_eq!(p, q);
        // pair symmetry moves the bar pattern along
        let r = IndexedPoly::monomial(curv("ubub", [a, b, d, e]));
        let s = IndexedPoly::monomial(curv("ubub", [d, e, a, b]));
        assert_eq!(r, s);
        let t = IndexedPoly::monomial(curv("buub", [b, a, d, e]));
        assert_eq!(t, r.neg());
    }

    #[test]
    fn repeated_slot_in_antisymmetric_pair_is_zero() {
        let (a, b) = (c('a'), c('b'));
        assert!(IndexedPoly::monomial(j(a, b, b)).is_zero());
    }

    #[test]
    fn conjugation_swaps_families() {
        let (x, y, w) = (c('j'), c('i'), c('r'));
        let p = IndexedPoly::monomial(j(x, y, w));
        assert_eq!(p.conj(), IndexedPoly::monomial(jb(x, y, w)));
        assert_eq!(p.conj().conj(), p);
        let q = IndexedPoly::term(delta(c('j'), c('k')), ExactScalar::i());
        assert_eq!(q.conj(), q.neg());
    }

    #[test]
    fn signature_clash_is_reported() {
        let a = IndexedPoly::monomial(j(c('a'), c('b'), c('q')));
        let b = IndexedPoly::monomial(jb(c('x'), c('y'), c('q')));
        assert!(matches!(a.mul_contract(&b, &[c('q')]), Err(Error::SignatureClash(_))));
        assert!(a.mul_contract(&b, &[]).is_ok());
    }

    #[test]
    fn overuse_rejected() {
        let m = prod(&[j(c('a'), c('a'), c('b')), z(VarKind::Z, c('a'))]);
        assert!(IndexedPoly::try_term(m, ExactScalar::one()).is_err());
    }

    #[test]
    fn identical_factor_blocks_commute() {
        let [a, b, d, e, f, g] = [c('a'), c('b'), c('d'), c('e'), c('f'), c('g')];
        let p = IndexedPoly::monomial(prod(&[j(a, b, d), j(e, f, g), jb(a, b, e), jb(d, f, g)]));
        let q = IndexedPoly::monomial(prod(&[j(e, f, g), j(a, b, d), jb(d, f, g), jb(a, b, e)]));
        assert_eq!(p, q);
    }

    #[test]
    fn idx_names_round_trip() {
        for s in ["j", "a2", "q17"] {
            assert_eq!(Idx::name(s).unwrap().to_string(), s);
        }
        assert!(Idx::name("2a").is_none());
    }
}
