//! S-expression reader and the textual form of scalar expressions.
//!
//! ```text
//! (* 1/2 (^ (y 1 (1)) 2))      ½ (y¹_(1))²
//! (+ (x 1) (y 2 (0,1)))        x¹ + y²_(0,1)
//! (f ginv 1 2)                 function symbol ginv with indices 1 2
//! ```
//! Indices are 1-based in text. `-` is accepted on input as a convenience;
//! output only uses `+`, `*` and `^`.

use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::Signed;

use super::{FuncKey, Kind, Rational, ScalarExpr, Symbol};
use crate::error::{Error, Result};
use crate::multiindex::MultiIndex;

#[derive(Clone, Debug, PartialEq)]
pub enum SExp {
    Atom { text: String, line: usize, column: usize },
    List { items: Vec<SExp>, line: usize, column: usize },
}

impl SExp {
    pub fn position(&self) -> (usize, usize) {
        match self {
            SExp::Atom { line, column, .. } | SExp::List { line, column, .. } => (*line, *column),
        }
    }

    pub fn error(&self, message: impl Into<String>) -> Error {
        let (line, column) = self.position();
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    pub fn atom(&self) -> Option<&str> {
        match self {
            SExp::Atom { text, .. } => Some(text),
            _ => None,
        }
    }

    pub fn list(&self) -> Option<&[SExp]> {
        match self {
            SExp::List { items, .. } => Some(items),
            _ => None,
        }
    }

    /// `(head ...)` with an atom head.
    pub fn head(&self) -> Option<&str> {
        self.list().and_then(|items| items.first()).and_then(SExp::atom)
    }

    pub fn expect_list(&self) -> Result<&[SExp]> {
        self.list().ok_or_else(|| self.error("expected a list"))
    }

    pub fn expect_atom(&self) -> Result<&str> {
        self.atom().ok_or_else(|| self.error("expected an atom"))
    }

    pub fn expect_usize(&self) -> Result<usize> {
        let t = self.expect_atom()?;
        t.parse().map_err(|_| self.error(format!("expected a non-negative integer, got {t:?}")))
    }
}

/// Reads every top-level s-expression; `;` starts a line comment.
pub fn read_all(src: &str) -> Result<Vec<SExp>> {
    let mut stack: Vec<(Vec<SExp>, usize, usize)> = Vec::new();
    let mut top = Vec::new();
    let mut line = 1;
    let mut column = 0;
    let mut chars = src.chars().peekable();
    let mut token = String::new();
    let mut token_pos = (0, 0);

    fn flush(
        token: &mut String,
        pos: (usize, usize),
        stack: &mut [(Vec<SExp>, usize, usize)],
        top: &mut Vec<SExp>,
    ) {
        if token.is_empty() {
            return;
        }
        let atom = SExp::Atom {
            text: std::mem::take(token),
            line: pos.0,
            column: pos.1,
        };
        match stack.last_mut() {
            Some((items, _, _)) => items.push(atom),
            None => top.push(atom),
        }
    }

    while let Some(c) = chars.next() {
        column += 1;
        match c {
            ';' => {
                flush(&mut token, token_pos, &mut stack, &mut top);
                for d in chars.by_ref() {
                    if d == '\n' {
                        line += 1;
                        column = 0;
                        break;
                    }
                }
            }
            '(' => {
                flush(&mut token, token_pos, &mut stack, &mut top);
                stack.push((Vec::new(), line, column));
            }
            ')' => {
                flush(&mut token, token_pos, &mut stack, &mut top);
                let (items, l, c0) = stack.pop().ok_or(Error::Syntax {
                    line,
                    column,
                    message: "unbalanced ')'".into(),
                })?;
                let list = SExp::List {
                    items,
                    line: l,
                    column: c0,
                };
                match stack.last_mut() {
                    Some((parent, _, _)) => parent.push(list),
                    None => top.push(list),
                }
            }
            c if c.is_whitespace() => {
                flush(&mut token, token_pos, &mut stack, &mut top);
                if c == '\n' {
                    line += 1;
                    column = 0;
                }
            }
            c => {
                if token.is_empty() {
                    token_pos = (line, column);
                }
                token.push(c);
            }
        }
    }
    flush(&mut token, token_pos, &mut stack, &mut top);
    if let Some((_, l, c)) = stack.last() {
        return Err(Error::Syntax {
            line: *l,
            column: *c,
            message: "unclosed '('".into(),
        });
    }
    Ok(top)
}

pub fn read_one(src: &str) -> Result<SExp> {
    let mut all = read_all(src)?;
    match all.len() {
        1 => Ok(all.pop().unwrap()),
        0 => Err(Error::Syntax {
            line: 1,
            column: 1,
            message: "empty input".into(),
        }),
        _ => {
            let (line, column) = all[1].position();
            Err(Error::Syntax {
                line,
                column,
                message: "trailing input after expression".into(),
            })
        }
    }
}

pub fn parse_rational(text: &str) -> Option<Rational> {
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d == BigInt::from(0) {
        return None;
    }
    Some(Rational::new(n, d))
}

pub fn symbol_to_sexpr(s: &Symbol) -> String {
    match s {
        Symbol::Base(l) => format!("(x {})", l + 1),
        Symbol::Jet { fiber, index } => format!("(y {} {})", fiber + 1, index),
        Symbol::Func(k) => {
            let mut out = format!("(f {}", k.name);
            for i in &k.indices {
                write!(out, " {}", *i as usize + 1).unwrap();
            }
            out.push(')');
            out
        }
    }
}

pub fn symbol_from_sexp(s: &SExp) -> Result<Symbol> {
    let items = s.expect_list()?;
    match s.head() {
        Some("x") if items.len() == 2 => {
            let l = items[1].expect_usize()?;
            if l == 0 {
                return Err(items[1].error("indices are 1-based"));
            }
            Ok(Symbol::Base(l - 1))
        }
        Some("y") if items.len() == 3 => {
            let i = items[1].expect_usize()?;
            if i == 0 {
                return Err(items[1].error("indices are 1-based"));
            }
            let index = multiindex_from_sexp(&items[2])?;
            Ok(Symbol::jet(i - 1, index))
        }
        Some("f") if items.len() >= 2 => {
            let name = items[1].expect_atom()?;
            let indices = items[2..]
                .iter()
                .map(|t| {
                    let v = t.expect_usize()?;
                    if v == 0 || v > 256 {
                        return Err(t.error("function indices are 1-based and at most 256"));
                    }
                    Ok((v - 1) as u8)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Symbol::Func(FuncKey::new(name, &indices)))
        }
        _ => Err(s.error("expected (x λ), (y i (γ)) or (f name indices...)")),
    }
}

pub fn multiindex_from_sexp(s: &SExp) -> Result<MultiIndex> {
    let items = s.expect_list()?;
    let mut counts = Vec::new();
    for item in items {
        for part in item.expect_atom()?.split(',').filter(|p| !p.is_empty()) {
            counts.push(
                part.parse::<u32>()
                    .map_err(|_| item.error(format!("bad multi-index entry {part:?}")))?,
            );
        }
    }
    if counts.is_empty() {
        return Err(s.error("empty multi-index"));
    }
    Ok(MultiIndex::new(counts))
}

pub fn to_sexpr(e: &ScalarExpr) -> String {
    let mut out = String::new();
    write_expr(e, &mut out);
    out
}

fn write_expr(e: &ScalarExpr, out: &mut String) {
    match e.kind() {
        Kind::Const(q) => write!(out, "{q}").unwrap(),
        Kind::Sym(s) => out.push_str(&symbol_to_sexpr(s)),
        Kind::Add(xs) | Kind::Mul(xs) => {
            out.push_str(if matches!(e.kind(), Kind::Add(_)) { "(+" } else { "(*" });
            for x in xs {
                out.push(' ');
                write_expr(x, out);
            }
            out.push(')');
        }
        Kind::Pow(b, k) => {
            out.push_str("(^ ");
            write_expr(b, out);
            write!(out, " {k})").unwrap();
        }
    }
}

pub fn expr_from_sexp(s: &SExp) -> Result<ScalarExpr> {
    if let Some(text) = s.atom() {
        return parse_rational(text)
            .map(ScalarExpr::constant)
            .ok_or_else(|| s.error(format!("expected a rational constant, got {text:?}")));
    }
    let items = s.expect_list()?;
    let args = || -> Result<Vec<ScalarExpr>> { items[1..].iter().map(expr_from_sexp).collect() };
    match s.head() {
        Some("+") => Ok(ScalarExpr::sum(args()?)),
        Some("*") => Ok(ScalarExpr::product(args()?)),
        Some("-") => {
            let a = args()?;
            match a.len() {
                1 => Ok(-&a[0]),
                0 => Err(s.error("(-) needs an argument")),
                _ => {
                    let rest = ScalarExpr::sum(a[1..].iter().cloned());
                    Ok(&a[0] - &rest)
                }
            }
        }
        Some("^") => {
            if items.len() != 3 {
                return Err(s.error("(^ base exponent) takes two arguments"));
            }
            let base = expr_from_sexp(&items[1])?;
            let k: i32 = items[2]
                .expect_atom()?
                .parse()
                .map_err(|_| items[2].error("exponent must be an integer"))?;
            base.pow(k).map_err(|e| s.error(e.to_string()))
        }
        Some("x") | Some("y") | Some("f") => Ok(ScalarExpr::symbol(symbol_from_sexp(s)?)),
        _ => Err(s.error("unknown expression form")),
    }
}

pub fn parse_expr(src: &str) -> Result<ScalarExpr> {
    expr_from_sexp(&read_one(src)?)
}

/// Pretty coefficient for human-facing reports.
pub fn short(q: &Rational) -> String {
    if q.is_negative() {
        format!("({q})")
    } else {
        q.to_string()
    }
}
