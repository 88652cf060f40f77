//! Reduction-rule regression table.
//!
//! Every rule pairs an operator expression with the value it should reduce to.
//! Kernel targets are compared through their exact normal forms, optionally
//! restricted to the coefficients a bookkeeping relation tracks.

use crate::error::Result;
use crate::expr::OpExpr;
use crate::kernel::{KernelPoly, TensorPoly, TwoForm};
use crate::scalar::ExactScalar;
use crate::tensor::sym::{delta, z};
use crate::tensor::{Idx, IndexedPoly, Monomial, VarKind};

/// Which coefficients of `lhs − rhs` must vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// All of them.
    Exact,
    /// Those of primed degree at most one (`∼`).
    Sim,
    /// Those of primed and unprimed degree both at most one (`≈`).
    Approx,
    /// Those free of primed variables, i.e. the restriction to `Z' = 0`.
    AtZp0,
}

impl Relation {
    fn tracks(self, m: &Monomial) -> bool {
        let primed = m.vars.iter().filter(|v| v.kind.is_primed()).count();
        let unprimed = m.vars.len() - primed;
        match self {
            Relation::Exact => true,
            Relation::Sim => primed <= 1,
            Relation::Approx => primed <= 1 && unprimed <= 1,
            Relation::AtZp0 => primed == 0,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Target {
    Kernel(OpExpr, Relation),
    /// Value at `Z = Z' = 0`.
    Origin(TensorPoly),
    /// `d_x d_y` at the origin.
    Form(TwoForm),
}

#[derive(Clone, Debug)]
pub struct Rule {
    pub tag: &'static str,
    pub label: &'static str,
    pub lhs: OpExpr,
    pub target: Target,
}

impl Rule {
    /// Tracked part of the difference, one polynomial per compared block.
    pub fn discrepancy(&self) -> Result<Vec<IndexedPoly>> {
        let lhs = self.lhs.eval()?;
        Ok(match &self.target {
            Target::Kernel(rhs, rel) => {
                let d = lhs.sub(&rhs.eval()?);
                vec![d.poly().filter(|m| rel.tracks(m))]
            }
            Target::Origin(v) => vec![lhs.eval_origin().sub(v)],
            Target::Form(f) => {
                let d = lhs.diagonal_two_form().sub(f);
                vec![d.zzb, d.zz, d.zbzb]
            }
        })
    }

    pub fn holds(&self) -> Result<bool> {
        Ok(self.discrepancy()?.iter().all(IndexedPoly::is_zero))
    }
}

fn l(c: char) -> Idx {
    Idx::ch(c)
}

fn pi(k: i32) -> ExactScalar {
    ExactScalar::pi_pow(k)
}

fn q(n: i64, d: i64) -> ExactScalar {
    ExactScalar::rational(n, d)
}

fn var(kind: VarKind, c: char) -> IndexedPoly {
    IndexedPoly::monomial(z(kind, l(c)))
}

fn zu(c: char) -> IndexedPoly {
    var(VarKind::Z, c)
}

fn zbp(c: char) -> IndexedPoly {
    var(VarKind::Zbp, c)
}

/// `z̄_c − z̄'_c`
fn dd(c: char) -> IndexedPoly {
    var(VarKind::Zb, c).sub(&zbp(c))
}

fn dl(a: char, b: char) -> IndexedPoly {
    IndexedPoly::monomial(delta(l(a), l(b)))
}

fn mul(ps: &[&IndexedPoly]) -> IndexedPoly {
    ps.iter().fold(IndexedPoly::one(), |acc, p| acc.mul(p))
}

fn sum(ps: Vec<IndexedPoly>) -> IndexedPoly {
    ps.iter().fold(IndexedPoly::zero(), |acc, p| acc.add(p))
}

/// The kernel `p · P`.
fn kp(p: IndexedPoly) -> OpExpr {
    OpExpr::Kernel(KernelPoly::from_poly(p).expect("rule kernels carry no operators"))
}

fn zero() -> OpExpr {
    OpExpr::Kernel(KernelPoly::zero())
}

fn b(c: char, x: OpExpr) -> OpExpr {
    OpExpr::b(l(c), x)
}

fn mz(c: char, x: OpExpr) -> OpExpr {
    OpExpr::mul(VarKind::Z, l(c), x)
}

fn mzb(c: char, x: OpExpr) -> OpExpr {
    OpExpr::mul(VarKind::Zb, l(c), x)
}

fn sc(s: ExactScalar, x: OpExpr) -> OpExpr {
    OpExpr::scalar(s, x)
}

fn ts(t: IndexedPoly, x: OpExpr) -> OpExpr {
    OpExpr::scale(t, x)
}

fn add(xs: Vec<OpExpr>) -> OpExpr {
    OpExpr::Sum(xs)
}

fn anti(t: IndexedPoly) -> IndexedPoly {
    let (r, q_) = (TwoForm::r(), TwoForm::q());
    t.sub(&crate::kernel::swap_labels(&t, r, q_)).scale(&q(1, 2))
}

fn rule(tag: &'static str, label: &'static str, lhs: OpExpr, target: Target) -> Rule {
    Rule { tag, label, lhs, target }
}

fn exact(tag: &'static str, label: &'static str, lhs: OpExpr, rhs: OpExpr) -> Rule {
    rule(tag, label, lhs, Target::Kernel(rhs, Relation::Exact))
}

fn ladder_and_basics() -> Vec<Rule> {
    let p = || OpExpr::P;
    let mut v = vec![
        exact("(1.7)", "b+ P", OpExpr::bplus(l('j'), p()), zero()),
        exact("(1.7)", "b P", b('j', p()), kp(dd('j').scale(&(q(2, 1) * pi(1))))),
        exact("(1.9)", "no annihilators", OpExpr::project(mz('s', mz('t', p()))), mz('s', mz('t', p()))),
        exact("(1.9)", "one annihilator", OpExpr::project(b('j', mz('s', p()))), zero()),
        exact("(1.9)", "two annihilators", OpExpr::project(b('i', b('j', mz('s', p())))), zero()),
    ];
    let zz = |x: OpExpr| mz('s', mz('t', x));
    // δ_ij b_k + δ_ik b_j applied to x
    let pair = |x: &dyn Fn() -> OpExpr| add(vec![ts(dl('i', 'j'), b('k', x())), ts(dl('i', 'k'), b('j', x()))]);
    let src = zz(OpExpr::bplus(l('i'), b('j', b('k', p()))));
    v.push(exact(
        "(4.9)",
        "commutator step",
        OpExpr::inv(1, src.clone()),
        sc(q(4, 1) * pi(1), OpExpr::inv(1, zz(pair(&p)))),
    ));
    v.push(exact("(4.9)", "result", OpExpr::inv(1, src), pair(&|| zz(p()))));

    let quartic = || mzb('s', mzb('t', mz('j', mz('k', p()))));
    v.push(rule(
        "(4.15)",
        "restriction to Z'=0",
        quartic(),
        Target::Kernel(sc(q(1, 4) * pi(-2), mz('j', mz('k', b('s', b('t', p()))))), Relation::AtZp0),
    ));
    // z_j z_k b_s b_t reordered, checked on two probe kernels
    let reorder = |x: OpExpr| {
        let two = |d: (char, char), bi: char, zi: char| ts(dl(d.0, d.1).scale(&q(2, 1)), b(bi, mz(zi, x.clone())));
        add(vec![
            b('s', b('t', mz('j', mz('k', x.clone())))),
            two(('j', 's'), 't', 'k'),
            two(('j', 't'), 's', 'k'),
            two(('k', 's'), 't', 'j'),
            two(('k', 't'), 's', 'j'),
            ts(
                mul(&[&dl('j', 't'), &dl('k', 's')]).add(&mul(&[&dl('j', 's'), &dl('k', 't')])).scale(&q(4, 1)),
                x.clone(),
            ),
        ])
    };
    let lhs = |x: OpExpr| mz('j', mz('k', b('s', b('t', x))));
    v.push(exact("(4.15)", "reordering on P", lhs(p()), reorder(p())));
    let probe = || kp(mul(&[&var(VarKind::Zb, 'a'), &zbp('c')]));
    v.push(exact("(4.15)", "reordering on a probe", lhs(probe()), reorder(probe())));

    let want = mul(&[&dl('j', 't'), &dl('k', 's')]).add(&mul(&[&dl('j', 's'), &dl('k', 't')])).scale(&pi(-2));
    v.push(rule("(4.16)", "origin value", OpExpr::project(quartic()), Target::Origin(want)));

    v.push(exact(
        "(4.25)",
        "z zb P",
        mz('s', mzb('t', p())),
        add(vec![
            sc(q(1, 2) * pi(-1), b('t', mz('s', p()))),
            kp(dl('s', 't').scale(&pi(-1))),
            kp(mul(&[&zu('s'), &zbp('t')])),
        ]),
    ));

    let bb = |x: OpExpr| b('i', b('j', x));
    v.push(exact(
        "(4.28)",
        "inverse on b b zb zb",
        sc(q(4, 1) * pi(2), OpExpr::inv(1, bb(mzb('s', mzb('t', p()))))),
        add(vec![
            sc(q(1, 16) * pi(-1), bb(b('s', b('t', p())))),
            sc(q(1, 6), bb(b('s', kp(zbp('t'))))),
            sc(q(1, 6), bb(b('t', kp(zbp('s'))))),
            sc(q(1, 2) * pi(1), bb(kp(mul(&[&zbp('s'), &zbp('t')])))),
        ]),
    ));
    v
}

fn quadratic_ladders() -> Vec<Rule> {
    let p = || OpExpr::P;
    let pi4 = q(4, 1) * pi(1);
    let bb = |x: OpExpr| b('i', b('j', x));
    let mut v = vec![exact("(4.30)", "b b P", bb(p()), kp(mul(&[&dd('i'), &dd('j')]).scale(&(q(4, 1) * pi(2)))))];
    v.push(exact(
        "(4.30)",
        "b b z zb' P",
        bb(kp(mul(&[&zu('s'), &zbp('t')]))),
        kp(sum(vec![
            mul(&[&dl('j', 's'), &zbp('t'), &dd('i')]).scale(&-pi4.clone()),
            mul(&[&dl('i', 's'), &zbp('t'), &dd('j')]).scale(&-pi4.clone()),
            mul(&[&zu('s'), &zbp('t'), &dd('i'), &dd('j')]).scale(&(q(4, 1) * pi(2))),
        ])),
    ));
    v.push(exact(
        "(4.30)",
        "b b z z P",
        bb(mz('s', mz('t', p()))),
        kp(sum(vec![
            mul(&[&dl('i', 't'), &dl('j', 's')]).scale(&q(4, 1)),
            mul(&[&dl('j', 's'), &zu('t'), &dd('i')]).scale(&-pi4.clone()),
            mul(&[&dl('j', 't'), &dl('i', 's')]).scale(&q(4, 1)),
            mul(&[&dl('j', 't'), &zu('s'), &dd('i')]).scale(&-pi4.clone()),
            mul(&[&dl('i', 's'), &zu('t'), &dd('j')]).scale(&-pi4.clone()),
            mul(&[&dl('i', 't'), &zu('s'), &dd('j')]).scale(&-pi4.clone()),
            mul(&[&zu('s'), &zu('t'), &dd('j'), &dd('i')]).scale(&(q(4, 1) * pi(2))),
        ])),
    ));
    let m2 = q(-2, 1);
    v.push(exact(
        "(4.31)",
        "b b b z P",
        bb(b('t', mz('s', p()))),
        add(vec![
            ts(dl('t', 's').scale(&m2), bb(p())),
            ts(dl('j', 's').scale(&m2), b('i', b('t', p()))),
            ts(dl('i', 's').scale(&m2), b('j', b('t', p()))),
            mz('s', bb(b('t', p()))),
        ]),
    ));

    let bz = || b('j', mz('s', p()));
    v.push(exact("(4.35)", "eigenvalue", OpExpr::inv(1, bz()), sc(q(1, 4) * pi(-1), bz())));
    v.push(exact(
        "(4.35)",
        "kernel",
        OpExpr::inv(1, bz()),
        kp(dl('j', 's')
            .scale(&q(-2, 1))
            .add(&mul(&[&zu('s'), &dd('j')]).scale(&(q(2, 1) * pi(1))))
            .scale(&(q(1, 4) * pi(-1)))),
    ));
    let bzb = || OpExpr::inv(1, b('j', mzb('s', p())));
    v.push(exact(
        "(4.36)",
        "ladder form",
        bzb(),
        add(vec![sc(q(1, 16) * pi(-2), b('j', b('s', p()))), sc(q(1, 4) * pi(-1), b('j', kp(zbp('s'))))]),
    ));
    v.push(exact(
        "(4.36)",
        "kernel",
        bzb(),
        kp(mul(&[&dd('j'), &dd('s')]).scale(&q(1, 4)).add(&mul(&[&zbp('s'), &dd('j')]).scale(&q(1, 2)))),
    ));
    let (r, qq) = (TwoForm::r(), TwoForm::q());
    let form = |t: IndexedPoly| TwoForm { zbzb: anti(t), ..TwoForm::default() };
    let rq = |a: char, c: char| IndexedPoly::monomial(delta(r, l(a)).concat(&delta(qq, l(c))));
    v.push(rule("(4.37)", "two-form", bzb(), Target::Form(form(rq('j', 's').scale(&q(1, 2))))));

    let off = |x: OpExpr| OpExpr::offdiag(x);
    v.push(exact("(4.40)", "ladder form", off(mz('j', mzb('k', p()))), sc(q(1, 2) * pi(-1), b('k', mz('j', p())))));
    v.push(exact(
        "(4.40)",
        "kernel",
        off(mz('j', mzb('k', p()))),
        kp(dl('j', 'k').scale(&-pi(-1)).add(&mul(&[&zu('j'), &dd('k')]))),
    ));
    let zbzb = || off(mzb('j', mzb('k', p())));
    v.push(exact(
        "(4.41)",
        "ladder form",
        zbzb(),
        off(add(vec![
            sc(q(1, 4) * pi(-2), b('j', b('k', p()))),
            sc(q(1, 2) * pi(-1), b('j', kp(zbp('k')))),
            sc(q(1, 2) * pi(-1), b('k', kp(zbp('j')))),
        ])),
    ));
    v.push(exact(
        "(4.41)",
        "kernel",
        zbzb(),
        kp(mul(&[&var(VarKind::Zb, 'j'), &var(VarKind::Zb, 'k')]).sub(&mul(&[&zbp('j'), &zbp('k')]))),
    ));
    v
}

fn quartic_mixed() -> Vec<Rule> {
    let p = || OpExpr::P;
    let zz = |x: OpExpr| mz('i', mz('j', x));
    let mut v =
        vec![exact("(4.45)", "ladder form", OpExpr::inv(1, zz(b('s', p()))), sc(q(1, 4) * pi(-1), b('s', zz(p()))))];
    v.push(exact(
        "(4.45)",
        "reordered",
        OpExpr::inv(1, zz(b('s', p()))),
        sc(
            q(1, 4) * pi(-1),
            add(vec![
                ts(dl('i', 's').scale(&q(-2, 1)), mz('j', p())),
                ts(dl('j', 's').scale(&q(-2, 1)), mz('i', p())),
                zz(b('s', p())),
            ]),
        ),
    ));
    let src = || OpExpr::inv(1, zz(b('s', b('t', p()))));
    let bz = |d: (char, char), bi: char, zi: char, c: ExactScalar| ts(dl(d.0, d.1).scale(&c), b(bi, mz(zi, p())));
    v.push(exact(
        "(4.46)",
        "ladder form",
        src(),
        sc(
            q(1, 2) * pi(-1),
            add(vec![
                sc(q(1, 4), b('s', b('t', zz(p())))),
                bz(('i', 't'), 's', 'j', q(1, 1)),
                bz(('j', 't'), 's', 'i', q(1, 1)),
                bz(('i', 's'), 't', 'j', q(1, 1)),
                bz(('j', 's'), 't', 'i', q(1, 1)),
            ]),
        ),
    ));
    let zb_ = |zi: char, bi: char, d: (char, char)| ts(dl(d.0, d.1).scale(&q(1, 2)), mz(zi, b(bi, p())));
    v.push(exact(
        "(4.46)",
        "reordered",
        src(),
        sc(
            q(1, 2) * pi(-1),
            add(vec![
                kp(mul(&[&dl('j', 's'), &dl('i', 't')]).add(&mul(&[&dl('j', 't'), &dl('i', 's')])).scale(&q(-3, 1))),
                zb_('j', 's', ('i', 't')),
                zb_('i', 's', ('j', 't')),
                zb_('j', 't', ('i', 's')),
                zb_('i', 't', ('j', 's')),
                sc(q(1, 4), zz(b('s', b('t', p())))),
            ]),
        ),
    ));

    let lhs = || OpExpr::inv(1, zz(mzb('s', mzb('t', p()))));
    v.push(exact(
        "(4.47)",
        "ladder split",
        lhs(),
        add(vec![
            sc(q(1, 4) * pi(-2), OpExpr::inv(1, zz(b('s', b('t', p()))))),
            sc(q(1, 2) * pi(-1), OpExpr::inv(1, add(vec![zz(b('s', kp(zbp('t')))), zz(b('t', kp(zbp('s'))))]))),
        ]),
    ));
    let half = q(1, 2);
    let first = sum(vec![
        mul(&[&dl('i', 't'), &dl('j', 's')]).scale(&(q(-3, 2) * pi(-1))),
        mul(&[&dl('j', 't'), &dl('i', 's')]).scale(&(q(-3, 2) * pi(-1))),
        mul(&[&dl('i', 't'), &zu('j'), &dd('s')]).scale(&half),
        mul(&[&dl('j', 't'), &zu('i'), &dd('s')]).scale(&half),
        mul(&[&dl('i', 's'), &zu('j'), &dd('t')]).scale(&half),
        mul(&[&dl('j', 's'), &zu('i'), &dd('t')]).scale(&half),
        mul(&[&zu('i'), &zu('j'), &dd('t'), &dd('s')]).scale(&(half.clone() * pi(1))),
    ]);
    let tail = |x: char| {
        sum(vec![
            mul(&[&dl('i', x), &zu('j')]).scale(&q(-2, 1)),
            mul(&[&dl('j', x), &zu('i')]).scale(&q(-2, 1)),
            mul(&[&zu('i'), &zu('j'), &dd(x)]).scale(&(q(2, 1) * pi(1))),
        ])
    };
    let second = mul(&[&tail('s'), &zbp('t')]).add(&mul(&[&tail('t'), &zbp('s')]));
    v.push(exact(
        "(4.47)",
        "kernel",
        lhs(),
        kp(first.scale(&(q(1, 4) * pi(-2))).add(&second.scale(&(q(1, 8) * pi(-2))))),
    ));
    v
}

fn cubic_sources() -> Vec<Rule> {
    let p = || OpExpr::P;
    let one = || q(1, 1);
    let src = || b('i', mz('j', mz('k', mzb('s', p()))));
    let mut v = vec![exact(
        "(4.65)",
        "expansion",
        src(),
        add(vec![
            sc(q(1, 2) * pi(-1), b('i', b('s', mz('j', mz('k', p()))))),
            ts(dl('j', 's').scale(&pi(-1)), b('i', mz('k', p()))),
            ts(dl('k', 's').scale(&pi(-1)), b('i', mz('j', p()))),
            b('i', mz('j', mz('k', kp(zbp('s'))))),
        ]),
    )];
    let inv = || OpExpr::inv(1, src());
    v.push(exact(
        "(4.66)",
        "ladder form",
        inv(),
        add(vec![
            sc(q(1, 16) * pi(-2), b('i', b('s', mz('j', mz('k', p()))))),
            ts(dl('j', 's').scale(&(q(1, 4) * pi(-2))), b('i', mz('k', p()))),
            ts(dl('k', 's').scale(&(q(1, 4) * pi(-2))), b('i', mz('j', p()))),
            sc(q(1, 4) * pi(-1), b('i', mz('j', mz('k', kp(zbp('s')))))),
        ]),
    ));
    let pii = pi(1);
    let inner = sum(vec![
        mul(&[&dl('j', 's'), &dl('i', 'k')]).scale(&-one()),
        mul(&[&dl('j', 's'), &zu('k'), &dd('i')]).scale(&pii),
        mul(&[&dl('k', 's'), &dl('i', 'j')]).scale(&-one()),
        mul(&[&dl('k', 's'), &zu('j'), &dd('i')]).scale(&pii),
        mul(&[&dl('i', 'j'), &zu('k'), &dd('s')]).scale(&-pii.clone()),
        mul(&[&dl('i', 'k'), &zu('j'), &dd('s')]).scale(&-pii.clone()),
        mul(&[&zu('j'), &zu('k'), &dd('i'), &dd('s')]).scale(&pi(2)),
    ]);
    let outer = sum(vec![
        mul(&[&dl('i', 'j'), &zu('k')]).scale(&q(-2, 1)),
        mul(&[&dl('i', 'k'), &zu('j')]).scale(&q(-2, 1)),
        mul(&[&zu('j'), &zu('k'), &dd('i')]).scale(&(q(2, 1) * pi(1))),
    ]);
    v.push(exact(
        "(4.66)",
        "kernel",
        inv(),
        kp(inner.scale(&(q(1, 4) * pi(-2))).add(&mul(&[&outer, &zbp('s')]).scale(&(q(1, 4) * pi(-1))))),
    ));
    let approx = sum(vec![
        mul(&[&dl('j', 's'), &dl('i', 'k')]).add(&mul(&[&dl('k', 's'), &dl('i', 'j')])).scale(&(q(1, 4) * pi(-2))),
        sum(vec![
            mul(&[&dl('j', 's'), &zu('k'), &zbp('i')]),
            mul(&[&dl('k', 's'), &zu('j'), &zbp('i')]),
            mul(&[&dl('i', 'j'), &zu('k'), &zbp('s')]),
            mul(&[&dl('i', 'k'), &zu('j'), &zbp('s')]),
        ])
        .scale(&(q(1, 4) * pi(-1))),
    ])
    .neg();
    v.push(rule("(4.67)", "tracked part", inv(), Target::Kernel(kp(approx), Relation::Approx)));

    let src = || b('i', mz('j', mzb('s', mzb('t', p()))));
    // b_i (c b_x z_j + d δ_jx) z̄'_y P
    let bz = |x: char, y: char, c: ExactScalar, d: ExactScalar| {
        add(vec![sc(c, b('i', b(x, mz('j', kp(zbp(y)))))), ts(dl('j', x).scale(&d), b('i', kp(zbp(y))))])
    };
    let expansion = |l3: ExactScalar, l2: ExactScalar, c1: ExactScalar, d1: ExactScalar, l0: ExactScalar| {
        add(vec![
            sc(l3, b('i', b('s', b('t', mz('j', p()))))),
            ts(dl('j', 's').scale(&l2), b('i', b('t', p()))),
            ts(dl('j', 't').scale(&l2), b('i', b('s', p()))),
            bz('s', 't', c1.clone(), d1.clone()),
            bz('t', 's', c1, d1),
            sc(l0, b('i', mz('j', kp(mul(&[&zbp('s'), &zbp('t')]))))),
        ])
    };
    v.push(exact(
        "(4.68)",
        "expansion",
        src(),
        expansion(q(1, 4) * pi(-2), q(1, 2) * pi(-2), q(1, 2) * pi(-1), pi(-1), one()),
    ));
    let inv2 = || OpExpr::inv(1, src());
    v.push(exact(
        "(4.69)",
        "inverse",
        inv2(),
        expansion(q(1, 48) * pi(-3), q(1, 16) * pi(-3), q(1, 16) * pi(-2), q(1, 4) * pi(-2), q(1, 4) * pi(-1)),
    ));
    let piece = add(vec![
        sc(q(1, 16) * pi(-2), b('i', b('s', mz('j', kp(zbp('t')))))),
        ts(dl('j', 's').scale(&(q(1, 4) * pi(-2))), b('i', kp(zbp('t')))),
    ]);
    let want = mul(&[&dl('j', 's'), &var(VarKind::Zb, 'i')]).sub(&mul(&[&dl('i', 'j'), &var(VarKind::Zb, 's')]));
    v.push(rule(
        "(4.70)",
        "tracked part",
        piece,
        Target::Kernel(kp(mul(&[&want, &zbp('t')]).scale(&(q(1, 4) * pi(-1)))), Relation::Approx),
    ));

    let (r, qq) = (TwoForm::r(), TwoForm::q());
    let rq = |a: char, c: char| IndexedPoly::monomial(delta(r, l(a)).concat(&delta(qq, l(c))));
    let t = mul(&[&dl('j', 's'), &rq('i', 't')]).add(&mul(&[&dl('j', 't'), &rq('i', 's')])).scale(&(q(1, 4) * pi(-1)));
    v.push(rule("(4.71)", "two-form", inv2(), Target::Form(TwoForm { zbzb: anti(t), ..TwoForm::default() })));

    let cubic = || OpExpr::inv(1, b('i', mzb('j', mzb('s', mzb('t', p())))));
    let ladders = add(vec![
        sc(q(1, 8) * pi(-3), b('i', b('j', b('s', b('t', p()))))),
        sc(q(1, 4) * pi(-2), b('i', b('j', b('s', kp(zbp('t')))))),
        sc(q(1, 4) * pi(-2), b('i', b('j', b('t', kp(zbp('s')))))),
        sc(q(1, 4) * pi(-2), b('i', b('s', b('t', kp(zbp('j')))))),
    ]);
    v.push(rule("(4.72)", "tracked ladder terms", cubic(), Target::Kernel(OpExpr::inv(1, ladders), Relation::Sim)));
    v.push(rule("(4.72)", "negligible", cubic(), Target::Kernel(zero(), Relation::Approx)));
    v
}

/// The full table in source order.
pub fn rules() -> Vec<Rule> {
    let mut v = ladder_and_basics();
    v.extend(quadratic_ladders());
    v.extend(quartic_mixed());
    v.extend(cubic_sources());
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_tracking() {
        let m = z(VarKind::Z, l('a')).concat(&z(VarKind::Zbp, l('b')));
        assert!(Relation::Approx.tracks(&m));
        assert!(!Relation::AtZp0.tracks(&m));
        let m2 = m.concat(&z(VarKind::Zb, l('c')));
        assert!(Relation::Sim.tracks(&m2) && !Relation::Approx.tracks(&m2));
    }

    #[test]
    fn every_rule_holds() {
        for r in rules() {
            let d = r.discrepancy().unwrap();
            assert!(d.iter().all(IndexedPoly::is_zero), "{} {}: {:?}", r.tag, r.label, d);
        }
    }
}
