//! S-expression syntax for operator expressions.
//!
//! ```text
//! expr  := P | id
//!        | (b L expr) | (bplus L expr) | (mul KIND L expr) | (dz L expr) | (dzb L expr)
//!        | (project expr) | (offdiag expr) | (inv K expr) | (adjoint expr)
//!        | (compose expr...) | (sum expr...) | (scale S expr) | (bind (L...) expr)
//!        | (kernel term...)
//! S     := INT | INT/INT | "exact scalar text" | (tensor term...)
//! term  := (term S item...)
//! item  := (J a b c) | (Jb a b c) | (Rubub a b c d) | (DDJ a b c d) | (DDJb a b c d)
//!        | (Phi) | (delta a b) | (z a) | (zb a) | (zp a) | (zbp a)
//! L     := 1..255 | name | _k
//! ```
//!
//! Application is right to left: `(b 1 (mul z 1 P))` is `b₁ z₁ P`.

use std::fmt::Write;

use crate::error::ParseError;
use crate::expr::OpExpr;
use crate::kernel::{Gen, KernelPoly};
use crate::scalar::ExactScalar;
use crate::tensor::{Factor, Family, Idx, IndexedPoly, Monomial, Var, VarKind};

#[derive(Clone, Debug, PartialEq)]
enum Sexp {
    Atom(String, usize, usize),
    Str(String, usize, usize),
    List(Vec<Sexp>, usize, usize),
}

impl Sexp {
    fn pos(&self) -> (usize, usize) {
        match self {
            Sexp::Atom(_, l, c) | Sexp::Str(_, l, c) | Sexp::List(_, l, c) => (*l, *c),
        }
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        let (l, c) = self.pos();
        ParseError::new(msg, l, c)
    }
}

fn read(text: &str) -> Result<Sexp, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0usize;
    let (mut line, mut col) = (1usize, 1usize);
    let mut stack: Vec<(Vec<Sexp>, usize, usize)> = Vec::new();
    let mut done: Option<Sexp> = None;

    let push =
        |s: Sexp, stack: &mut Vec<(Vec<Sexp>, usize, usize)>, done: &mut Option<Sexp>| -> Result<(), ParseError> {
            match stack.last_mut() {
                Some((items, _, _)) => items.push(s),
                None if done.is_none() => *done = Some(s),
                None => {
                    let (l, c) = s.pos();
                    return Err(ParseError::new("trailing input after expression", l, c));
                }
            }
            Ok(())
        };

    while pos < chars.len() {
        let ch = chars[pos];
        let (l0, c0) = (line, col);
        let advance = |pos: &mut usize, line: &mut usize, col: &mut usize| {
            if chars[*pos] == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            *pos += 1;
        };
        match ch {
            ';' => {
                while pos < chars.len() && chars[pos] != '\n' {
                    advance(&mut pos, &mut line, &mut col);
                }
            }
            c if c.is_whitespace() => advance(&mut pos, &mut line, &mut col),
            '(' => {
                stack.push((Vec::new(), l0, c0));
                advance(&mut pos, &mut line, &mut col);
            }
            ')' => {
                let Some((items, l, c)) = stack.pop() else {
                    return Err(ParseError::new("unbalanced `)`", l0, c0));
                };
                advance(&mut pos, &mut line, &mut col);
                push(Sexp::List(items, l, c), &mut stack, &mut done)?;
            }
            '"' => {
                advance(&mut pos, &mut line, &mut col);
                let mut s = String::new();
                loop {
                    if pos >= chars.len() {
                        return Err(ParseError::new("unterminated string", l0, c0));
                    }
                    if chars[pos] == '"' {
                        advance(&mut pos, &mut line, &mut col);
                        break;
                    }
                    s.push(chars[pos]);
                    advance(&mut pos, &mut line, &mut col);
                }
                push(Sexp::Str(s, l0, c0), &mut stack, &mut done)?;
            }
            _ => {
                let mut s = String::new();
                while pos < chars.len() && !chars[pos].is_whitespace() && !"()\";".contains(chars[pos]) {
                    s.push(chars[pos]);
                    advance(&mut pos, &mut line, &mut col);
                }
                push(Sexp::Atom(s, l0, c0), &mut stack, &mut done)?;
            }
        }
    }
    if let Some((_, l, c)) = stack.pop() {
        return Err(ParseError::new("unbalanced `(`", l, c));
    }
    done.ok_or_else(|| ParseError::new("empty input", line, col))
}

fn label(s: &Sexp) -> Result<Idx, ParseError> {
    let Sexp::Atom(a, ..) = s else {
        return Err(s.err("expected an index label"));
    };
    if let Ok(v) = a.parse::<u8>() {
        if v == 0 {
            return Err(s.err("fixed index values start at 1"));
        }
        return Ok(Idx::Fixed(v));
    }
    if let Some(d) = a.strip_prefix('_') {
        return d.parse().map(Idx::Dummy).map_err(|_| s.err(format!("bad dummy label `{a}`")));
    }
    Idx::name(a).ok_or_else(|| s.err(format!("bad index label `{a}`")))
}

fn scalar(s: &Sexp) -> Result<ExactScalar, ParseError> {
    match s {
        Sexp::Str(t, ..) => t.parse().map_err(|_| s.err(format!("bad scalar `{t}`"))),
        Sexp::Atom(t, ..) => {
            let (num, den) = t.split_once('/').unwrap_or((t, "1"));
            match (num.parse::<i64>(), den.parse::<i64>()) {
                (Ok(n), Ok(d)) if d != 0 => Ok(ExactScalar::rational(n, d)),
                _ => Err(s.err(format!("bad scalar `{t}`"))),
            }
        }
        Sexp::List(..) => Err(s.err("expected a scalar")),
    }
}

fn head(items: &[Sexp], at: &Sexp) -> Result<String, ParseError> {
    match items.first() {
        Some(Sexp::Atom(h, ..)) => Ok(h.clone()),
        Some(other) => Err(other.err("expected a form name")),
        None => Err(at.err("empty form")),
    }
}

fn arity(items: &[Sexp], at: &Sexp, n: usize) -> Result<(), ParseError> {
    if items.len() != n + 1 {
        return Err(at.err(format!("`{}` takes {n} arguments, found {}", head(items, at)?, items.len() - 1)));
    }
    Ok(())
}

fn item(s: &Sexp) -> Result<Monomial, ParseError> {
    let Sexp::List(items, ..) = s else {
        return Err(s.err("expected a factor form"));
    };
    let h = head(items, s)?;
    let labels = || items[1..].iter().map(label).collect::<Result<Vec<_>, _>>();
    let fam = match h.as_str() {
        "J" => Some(Family::J { bar: false }),
        "Jb" => Some(Family::J { bar: true }),
        "DDJ" => Some(Family::DdJ { bar: false }),
        "DDJb" => Some(Family::DdJ { bar: true }),
        "Phi" => Some(Family::Phi),
        r if r.len() == 5 && r.starts_with('R') && r[1..].chars().all(|c| c == 'u' || c == 'b') => {
            Some(Family::Curv { bars: crate::tensor::sym::bars(&r[1..]) })
        }
        _ => None,
    };
    if let Some(fam) = fam {
        arity(items, s, fam.arity())?;
        return Ok(Monomial { factors: vec![Factor::new(fam, labels()?)], ..Default::default() });
    }
    let kind = match h.as_str() {
        "delta" => {
            arity(items, s, 2)?;
            let l = labels()?;
            return Ok(Monomial::delta(l[0], l[1]));
        }
        "z" => VarKind::Z,
        "zb" => VarKind::Zb,
        "zp" => VarKind::Zp,
        "zbp" => VarKind::Zbp,
        "b" => VarKind::B,
        _ => return Err(items[0].err(format!("unknown factor `{h}`"))),
    };
    arity(items, s, 1)?;
    Ok(Monomial { vars: vec![Var::new(kind, labels()?[0])], ..Default::default() })
}

fn poly(terms: &[Sexp]) -> Result<IndexedPoly, ParseError> {
    let mut p = IndexedPoly::zero();
    for t in terms {
        let Sexp::List(items, ..) = t else {
            return Err(t.err("expected `(term ...)`"));
        };
        if head(items, t)? != "term" || items.len() < 2 {
            return Err(t.err("expected `(term S factors...)`"));
        }
        let s = scalar(&items[1])?;
        let mut m = Monomial::one();
        for x in &items[2..] {
            m = m.concat(&item(x)?);
        }
        m.validate().map_err(|e| t.err(e.to_string()))?;
        p.add_term(m, s);
    }
    Ok(p)
}

fn expr(s: &Sexp) -> Result<OpExpr, ParseError> {
    let items = match s {
        Sexp::Atom(a, ..) => {
            return match a.as_str() {
                "P" => Ok(OpExpr::P),
                "id" => Ok(OpExpr::Id),
                _ => Err(s.err(format!("unknown atom `{a}`"))),
            }
        }
        Sexp::Str(..) => return Err(s.err("unexpected string")),
        Sexp::List(items, ..) => items,
    };
    let h = head(items, s)?;
    let sub = |k: usize| expr(&items[k]).map(Box::new);
    let gen = |g: Gen| -> Result<OpExpr, ParseError> { Ok(OpExpr::Gen(g, sub(2)?)) };
    match h.as_str() {
        "b" | "bplus" | "dz" | "dzb" => {
            arity(items, s, 2)?;
            let l = label(&items[1])?;
            gen(match h.as_str() {
                "b" => Gen::B(l),
                "bplus" => Gen::Bplus(l),
                "dz" => Gen::Dz(l),
                _ => Gen::Dzb(l),
            })
        }
        "mul" => {
            arity(items, s, 3)?;
            let kind = match &items[1] {
                Sexp::Atom(k, ..) if k == "z" => VarKind::Z,
                Sexp::Atom(k, ..) if k == "zb" => VarKind::Zb,
                other => return Err(other.err("multiplication kind is `z` or `zb`")),
            };
            Ok(OpExpr::Gen(Gen::Mul(kind, label(&items[2])?), sub(3)?))
        }
        "project" | "offdiag" | "adjoint" => {
            arity(items, s, 1)?;
            let x = sub(1)?;
            Ok(match h.as_str() {
                "project" => OpExpr::Project(x),
                "offdiag" => OpExpr::Offdiag(x),
                _ => OpExpr::Adjoint(x),
            })
        }
        "inv" => {
            arity(items, s, 2)?;
            let k = match &items[1] {
                Sexp::Atom(a, ..) => a.parse::<u32>().ok().filter(|&k| k > 0),
                _ => None,
            }
            .ok_or_else(|| items[1].err("inverse power is a positive integer"))?;
            Ok(OpExpr::Inv(k, sub(2)?))
        }
        "scale" => {
            arity(items, s, 2)?;
            let t = match &items[1] {
                Sexp::List(ts, ..) if matches!(ts.first(), Some(Sexp::Atom(a, ..)) if a == "tensor") => {
                    let p = poly(&ts[1..])?;
                    if p.terms().any(|(m, _)| !m.vars.is_empty()) {
                        return Err(items[1].err("scale tensors carry no variables"));
                    }
                    p
                }
                other => IndexedPoly::scalar(scalar(other)?),
            };
            Ok(OpExpr::Scale(t, sub(2)?))
        }
        "compose" | "sum" => {
            if items.len() < 2 {
                return Err(s.err(format!("`{h}` needs at least one argument")));
            }
            let xs = items[1..].iter().map(expr).collect::<Result<Vec<_>, _>>()?;
            Ok(if h == "compose" { OpExpr::Compose(xs) } else { OpExpr::Sum(xs) })
        }
        "bind" => {
            arity(items, s, 2)?;
            let Sexp::List(ls, ..) = &items[1] else {
                return Err(items[1].err("expected a label list"));
            };
            Ok(OpExpr::Bind(ls.iter().map(label).collect::<Result<_, _>>()?, sub(2)?))
        }
        "kernel" => {
            let p = poly(&items[1..])?;
            KernelPoly::from_poly(p).map(OpExpr::Kernel).map_err(|e| s.err(e.to_string()))
        }
        _ => Err(items[0].err(format!("unknown form `{h}`"))),
    }
}

/// Parses one expression.
pub fn parse(text: &str) -> Result<OpExpr, ParseError> {
    expr(&read(text)?)
}

fn render_scalar(s: &ExactScalar, out: &mut String) {
    write!(out, "\"{s}\"").unwrap();
}

fn render_monomial(m: &Monomial, out: &mut String) {
    for f in &m.factors {
        let name = match f.fam {
            Family::J { bar } => (if bar { "Jb" } else { "J" }).to_string(),
            Family::DdJ { bar } => (if bar { "DDJb" } else { "DDJ" }).to_string(),
            Family::Phi => "Phi".to_string(),
            Family::Curv { bars } => {
                format!("R{}", (0..4).map(|k| if bars >> k & 1 == 1 { 'b' } else { 'u' }).collect::<String>())
            }
        };
        out.push_str(" (");
        out.push_str(&name);
        for l in &f.idx {
            write!(out, " {l}").unwrap();
        }
        out.push(')');
    }
    for (a, b) in &m.deltas {
        write!(out, " (delta {a} {b})").unwrap();
    }
    for v in &m.vars {
        write!(out, " ({} {})", v.kind.tag(), v.idx).unwrap();
    }
}

fn render_poly(p: &IndexedPoly, out: &mut String) {
    for (m, s) in p.terms() {
        out.push_str(" (term ");
        render_scalar(s, out);
        render_monomial(m, out);
        out.push(')');
    }
}

fn render_into(x: &OpExpr, out: &mut String) {
    match x {
        OpExpr::P => out.push('P'),
        OpExpr::Id => out.push_str("id"),
        OpExpr::Kernel(k) => {
            out.push_str("(kernel");
            render_poly(k.poly(), out);
            out.push(')');
        }
        OpExpr::Gen(g, body) => {
            match *g {
                Gen::B(l) => write!(out, "(b {l} "),
                Gen::Bplus(l) => write!(out, "(bplus {l} "),
                Gen::Mul(k, l) => write!(out, "(mul {} {l} ", k.tag()),
                Gen::Dz(l) => write!(out, "(dz {l} "),
                Gen::Dzb(l) => write!(out, "(dzb {l} "),
            }
            .unwrap();
            render_into(body, out);
            out.push(')');
        }
        OpExpr::Project(b) | OpExpr::Offdiag(b) | OpExpr::Adjoint(b) => {
            out.push_str(match x {
                OpExpr::Project(_) => "(project ",
                OpExpr::Offdiag(_) => "(offdiag ",
                _ => "(adjoint ",
            });
            render_into(b, out);
            out.push(')');
        }
        OpExpr::Inv(k, b) => {
            write!(out, "(inv {k} ").unwrap();
            render_into(b, out);
            out.push(')');
        }
        OpExpr::Scale(t, b) => {
            out.push_str("(scale ");
            match t.terms().next() {
                Some((m, s)) if t.len() == 1 && *m == Monomial::one() => render_scalar(s, out),
                _ => {
                    out.push_str("(tensor");
                    render_poly(t, out);
                    out.push(')');
                }
            }
            out.push(' ');
            render_into(b, out);
            out.push(')');
        }
        OpExpr::Compose(xs) | OpExpr::Sum(xs) => {
            out.push_str(if matches!(x, OpExpr::Compose(_)) { "(compose" } else { "(sum" });
            for y in xs {
                out.push(' ');
                render_into(y, out);
            }
            out.push(')');
        }
        OpExpr::Bind(ls, b) => {
            out.push_str("(bind (");
            let names: Vec<String> = ls.iter().map(|l| l.to_string()).collect();
            out.push_str(&names.join(" "));
            out.push_str(") ");
            render_into(b, out);
            out.push(')');
        }
    }
}

/// Renders an expression so that `parse(render(x)) == x`.
pub fn render(x: &OpExpr) -> String {
    let mut out = String::new();
    render_into(x, &mut out);
    out
}

/// A kernel as a `(kernel ...)` form.
pub fn render_kernel(k: &KernelPoly) -> String {
    render(&OpExpr::Kernel(k.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atoms_and_generators() {
        assert_eq!(parse("(b 1 P)").unwrap(), OpExpr::b(Idx::Fixed(1), OpExpr::P));
        assert_eq!(parse("(compose P P)").unwrap(), OpExpr::Compose(vec![OpExpr::P, OpExpr::P]));
        let x = parse("(inv 1 (offdiag (b 1 (mul z 1 P))))").unwrap();
        let want = OpExpr::inv(
            1,
            OpExpr::offdiag(OpExpr::b(Idx::Fixed(1), OpExpr::mul(VarKind::Z, Idx::Fixed(1), OpExpr::P))),
        );
        assert_eq!(x, want);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("(b 1\n  (frob P))").unwrap_err();
        assert_eq!((e.line, e.col), (2, 4));
        let e = parse("(b 1 P").unwrap_err();
        assert_eq!((e.line, e.col), (1, 1));
        let e = parse("(b 1 P))").unwrap_err();
        assert_eq!((e.line, e.col), (1, 8));
        let e = parse("(inv 1)").unwrap_err();
        assert!(e.msg.contains("takes 2 arguments"), "{}", e.msg);
    }

    #[test]
    fn scalars_and_tensors() {
        let x = parse("(scale -1/3 (kernel (term \"(0+1i)·π^1·n^0\" (J a b c) (z a) (zb b) (zbp c))))").unwrap();
        assert_eq!(parse(&render(&x)).unwrap(), x);
        let y = parse("(bind (i j) (scale (tensor (term 2 (Rubub i j i j))) P))").unwrap();
        assert_eq!(parse(&render(&y)).unwrap(), y);
    }

    #[test]
    fn comments_are_skipped() {
        assert_eq!(parse("; projector\nP").unwrap(), OpExpr::P);
    }
}
