//! Line-oriented s-expression files.
//!
//! Every file starts with the header `(jetvar 1)`. A chart descriptor:
//!
//! ```text
//! (jetvar 1)
//! (chart mechanics)
//! (base t)
//! (fiber q)
//! (order 1)
//! ```
//!
//! optionally followed by `(family lorentz)` or user function symbols
//!
//! ```text
//! (function (f phi) (args (y 1 (0))) (rule (y 1 (0)) (* 2 (y 1 (0)))))
//! ```
//!
//! A form file names its chart and lists one term per line:
//!
//! ```text
//! (jetvar 1)
//! (form mechanics)
//! (degree 2)
//! (basis contact)
//! (term (* -1 (y 1 (2))) (theta 1 (0)) (dx 1))
//! ```
//!
//! Lagrangian and expression files hold `(lagrangian chart)` or
//! `(expr chart)` followed by one `(density E)` or `(value E)` line.

use std::collections::HashMap;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::forms::{Basis, Form, Generator};
use crate::hilbert_einstein;
use crate::jetchart::JetChart;
use crate::symexpr::sexpr::{
    expr_from_sexp, multiindex_from_sexp, read_all, symbol_from_sexp, symbol_to_sexpr, to_sexpr, SExp,
};
use crate::symexpr::{FunctionDef, Registry, ScalarExpr, Symbol};
use crate::varcalc::Lagrangian;

pub const VERSION: usize = 1;

/// A chart together with the name form files refer to it by.
#[derive(Clone, Debug)]
pub struct NamedChart {
    pub name: String,
    pub chart: JetChart,
}

fn header() -> String {
    format!("(jetvar {VERSION})\n")
}

/// Reads all top-level forms and checks the version header.
fn body(src: &str) -> Result<Vec<SExp>> {
    let items = read_all(src)?;
    let Some(first) = items.first() else {
        return Err(Error::Parse("empty file; expected the header (jetvar 1)".into()));
    };
    let list = first.expect_list().map_err(|_| first.error("expected the header (jetvar 1)"))?;
    if first.head() != Some("jetvar") || list.len() != 2 {
        return Err(first.error("expected the header (jetvar 1)"));
    }
    let v = list[1].expect_usize()?;
    if v != VERSION {
        return Err(list[1].error(format!("unsupported format version {v}")));
    }
    Ok(items[1..].to_vec())
}

fn kind<'a>(items: &'a [SExp], expected: &str, src_hint: &str) -> Result<(&'a SExp, String)> {
    let Some(first) = items.first() else {
        return Err(Error::Parse(format!("missing ({expected} name) line in {src_hint}")));
    };
    let list = first.expect_list()?;
    if first.head() != Some(expected) || list.len() != 2 {
        return Err(first.error(format!("expected ({expected} name)")));
    }
    Ok((first, list[1].expect_atom()?.to_string()))
}

fn names(s: &SExp) -> Result<Vec<String>> {
    s.expect_list()?[1..]
        .iter()
        .map(|a| a.expect_atom().map(str::to_string))
        .collect()
}

pub fn write_chart(named: &NamedChart) -> String {
    let c = &named.chart;
    let mut out = header();
    writeln!(out, "(chart {})", named.name).unwrap();
    writeln!(out, "(base {})", c.base_names().join(" ")).unwrap();
    writeln!(out, "(fiber {})", c.fiber_names().join(" ")).unwrap();
    writeln!(out, "(order {})", c.order()).unwrap();
    match c.registry().family() {
        Some(f) => writeln!(out, "(family {f})").unwrap(),
        None => {
            let mut defs: Vec<&FunctionDef> = c.registry().functions().collect();
            defs.sort_by(|a, b| a.key.cmp(&b.key));
            for d in defs {
                write!(out, "(function {} (args", symbol_to_sexpr(&Symbol::Func(d.key.clone()))).unwrap();
                for a in &d.args {
                    write!(out, " {}", symbol_to_sexpr(a)).unwrap();
                }
                out.push(')');
                for a in &d.args {
                    write!(out, " (rule {} {})", symbol_to_sexpr(a), to_sexpr(&d.rules[a])).unwrap();
                }
                out.push_str(")\n");
            }
        }
    }
    out
}

pub fn read_chart(src: &str) -> Result<NamedChart> {
    let items = body(src)?;
    let (_, name) = kind(&items, "chart", "a chart file")?;
    let mut base = None;
    let mut fiber = None;
    let mut order = None;
    let mut family = None;
    let mut functions = Vec::new();
    for item in &items[1..] {
        let list = item.expect_list()?;
        match item.head() {
            Some("base") => base = Some(names(item)?),
            Some("fiber") => fiber = Some(names(item)?),
            Some("order") if list.len() == 2 => order = Some(list[1].expect_usize()? as u32),
            Some("family") if list.len() == 2 => family = Some((item, list[1].expect_atom()?.to_string())),
            Some("function") => functions.push(item),
            _ => return Err(item.error("unknown chart entry")),
        }
    }
    let missing = |what: &str| Error::Parse(format!("chart {name} has no ({what} ...) line"));
    let base = base.ok_or_else(|| missing("base"))?;
    let fiber = fiber.ok_or_else(|| missing("fiber"))?;
    let order = order.ok_or_else(|| missing("order"))?;
    let mut chart = JetChart::new(base.len(), fiber.len(), order)?.with_names(base, fiber)?;
    if let Some((item, f)) = family {
        if !functions.is_empty() {
            return Err(item.error("a chart declares either a family or its own functions"));
        }
        if f != hilbert_einstein::FAMILY {
            return Err(item.error(format!("unknown function family {f}")));
        }
        if chart.base_dim() != hilbert_einstein::DIM || chart.fiber_dim() != 10 {
            return Err(item.error("the lorentz family needs 4 base and 10 fiber coordinates"));
        }
        chart = chart.with_registry(hilbert_einstein::lorentz_registry()?)?;
    } else if !functions.is_empty() {
        let mut reg = Registry::new();
        for item in functions {
            reg.register(read_function(item)?)
                .map_err(|e| item.error(e.to_string()))?;
        }
        chart = chart.with_registry(reg)?;
    }
    Ok(NamedChart { name, chart })
}

fn read_function(item: &SExp) -> Result<FunctionDef> {
    let list = item.expect_list()?;
    if list.len() < 3 {
        return Err(item.error("expected (function (f name ...) (args ...) (rule ...)...)"));
    }
    let Symbol::Func(key) = symbol_from_sexp(&list[1])? else {
        return Err(list[1].error("expected (f name indices...)"));
    };
    if list[2].head() != Some("args") {
        return Err(list[2].error("expected (args ...)"));
    }
    let args = list[2].expect_list()?[1..]
        .iter()
        .map(symbol_from_sexp)
        .collect::<Result<Vec<_>>>()?;
    let mut rules = HashMap::new();
    for r in &list[3..] {
        let parts = r.expect_list()?;
        if r.head() != Some("rule") || parts.len() != 3 {
            return Err(r.error("expected (rule symbol expression)"));
        }
        rules.insert(symbol_from_sexp(&parts[1])?, expr_from_sexp(&parts[2])?);
    }
    Ok(FunctionDef {
        key,
        args,
        rules,
        hook: None,
    })
}

fn generator_to_sexpr(g: &Generator) -> String {
    match g {
        Generator::Dx(l) => format!("(dx {})", l + 1),
        Generator::Dy { fiber, index } => format!("(dy {} {})", fiber + 1, index),
        Generator::Theta { fiber, index } => format!("(theta {} {})", fiber + 1, index),
    }
}

fn generator_from_sexp(s: &SExp) -> Result<Generator> {
    let list = s.expect_list()?;
    let one_based = |t: &SExp| -> Result<usize> {
        match t.expect_usize()? {
            0 => Err(t.error("indices are 1-based")),
            v => Ok(v - 1),
        }
    };
    match (s.head(), list.len()) {
        (Some("dx"), 2) => Ok(Generator::Dx(one_based(&list[1])?)),
        (Some("dy"), 3) => Ok(Generator::dy(one_based(&list[1])?, multiindex_from_sexp(&list[2])?)),
        (Some("theta"), 3) => Ok(Generator::theta(one_based(&list[1])?, multiindex_from_sexp(&list[2])?)),
        _ => Err(s.error("expected (dx λ), (dy i (γ)) or (theta i (γ))")),
    }
}

pub fn write_form(chart_name: &str, form: &Form) -> String {
    let mut out = header();
    writeln!(out, "(form {chart_name})").unwrap();
    writeln!(out, "(degree {})", form.degree()).unwrap();
    writeln!(out, "(basis {})", form.basis()).unwrap();
    for (gens, c) in form.terms() {
        write!(out, "(term {}", to_sexpr(c)).unwrap();
        for g in gens {
            write!(out, " {}", generator_to_sexpr(g)).unwrap();
        }
        out.push_str(")\n");
    }
    out
}

fn check_chart_name(line: &SExp, got: &str, chart: &NamedChart) -> Result<()> {
    if got != chart.name {
        return Err(line.error(format!("file refers to chart {got}, but chart {} was given", chart.name)));
    }
    Ok(())
}

pub fn read_form(src: &str, chart: &NamedChart) -> Result<Form> {
    let items = body(src)?;
    let (line, name) = kind(&items, "form", "a form file")?;
    check_chart_name(line, &name, chart)?;
    let mut degree = None;
    let mut basis = None;
    let mut terms = Vec::new();
    for item in &items[1..] {
        let list = item.expect_list()?;
        match (item.head(), list.len()) {
            (Some("degree"), 2) => degree = Some(list[1].expect_usize()?),
            (Some("basis"), 2) => {
                basis = Some(match list[1].expect_atom()? {
                    "raw" => Basis::Raw,
                    "contact" => Basis::Contact,
                    other => return Err(list[1].error(format!("unknown basis {other}"))),
                })
            }
            (Some("term"), k) if k >= 2 => {
                let c = expr_from_sexp(&list[1])?;
                let gens = list[2..].iter().map(generator_from_sexp).collect::<Result<Vec<_>>>()?;
                terms.push((item, gens, c));
            }
            _ => return Err(item.error("unknown form entry")),
        }
    }
    let degree = degree.ok_or_else(|| Error::Parse("form file has no (degree k) line".into()))?;
    let basis = basis.ok_or_else(|| Error::Parse("form file has no (basis raw|contact) line".into()))?;
    for (item, gens, _) in &terms {
        if gens.len() != degree {
            return Err(item.error(format!("term has {} generators in a {degree}-form", gens.len())));
        }
    }
    let chart = chart_for(&chart.chart, terms.iter().flat_map(|(_, g, c)| {
        g.iter()
            .map(|g| match g {
                Generator::Dx(_) => 0,
                Generator::Dy { index, .. } => index.order(),
                Generator::Theta { index, .. } => index.order() + 1,
            })
            .chain(c.atoms().iter().filter_map(Symbol::jet_order))
            .collect::<Vec<_>>()
    }));
    Form::from_terms(&chart, degree, basis, terms.into_iter().map(|(_, g, c)| (g, c)))
}

/// The chart, prolonged if the file uses higher-order coordinates.
fn chart_for(chart: &JetChart, orders: impl Iterator<Item = u32>) -> JetChart {
    let top = orders.max().unwrap_or(0);
    chart.at_order(chart.order().max(top))
}

pub fn write_lagrangian(chart_name: &str, l: &Lagrangian) -> String {
    format!("{}(lagrangian {chart_name})\n(density {})\n", header(), to_sexpr(l.density()))
}

pub fn read_lagrangian(src: &str, chart: &NamedChart) -> Result<Lagrangian> {
    let e = read_single(src, chart, "lagrangian", "density")?;
    Lagrangian::new(&chart.chart, e)
}

pub fn write_expr(chart_name: &str, e: &ScalarExpr) -> String {
    format!("{}(expr {chart_name})\n(value {})\n", header(), to_sexpr(e))
}

pub fn read_expr(src: &str, chart: &NamedChart) -> Result<ScalarExpr> {
    let e = read_single(src, chart, "expr", "value")?;
    chart.chart.check_expr(&e)?;
    Ok(e)
}

fn read_single(src: &str, chart: &NamedChart, head: &str, field: &str) -> Result<ScalarExpr> {
    let items = body(src)?;
    let (line, name) = kind(&items, head, &format!("a {head} file"))?;
    check_chart_name(line, &name, chart)?;
    let [item] = &items[1..] else {
        return Err(Error::Parse(format!("a {head} file has exactly one ({field} ...) line")));
    };
    let list = item.expect_list()?;
    if item.head() != Some(field) || list.len() != 2 {
        return Err(item.error(format!("expected ({field} expression)")));
    }
    expr_from_sexp(&list[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiindex::MultiIndex;

    fn mechanics() -> NamedChart {
        NamedChart {
            name: "mechanics".into(),
            chart: JetChart::new(1, 1, 1).unwrap().with_names(vec!["t".into()], vec!["q".into()]).unwrap(),
        }
    }

    #[test]
    fn chart_round_trip() {
        let c = mechanics();
        let back = read_chart(&write_chart(&c)).unwrap();
        assert_eq!(back.name, "mechanics");
        assert_eq!(back.chart.base_names(), c.chart.base_names());
        assert_eq!(back.chart.order(), 1);
        assert_eq!(write_chart(&back), write_chart(&c));
    }

    #[test]
    fn form_round_trip() {
        let c = mechanics();
        let ch = &c.chart;
        let f = Form::theta(ch, 0, MultiIndex::new(vec![1]))
            .unwrap()
            .wedge(&Form::dx(ch, 0, Basis::Contact).unwrap())
            .unwrap()
            .scale(&ch.y(0, MultiIndex::new(vec![1])).powu(2));
        let text = write_form("mechanics", &f);
        let back = read_form(&text, &c).unwrap();
        assert_eq!(back, f.on_chart(back.chart()).unwrap());
        assert_eq!(write_form("mechanics", &back), text);
    }

    #[test]
    fn header_and_chart_errors() {
        let c = mechanics();
        assert!(matches!(read_expr("(expr mechanics)\n(value 1)", &c), Err(Error::Syntax { .. })));
        let wrong = "(jetvar 1)\n(expr other)\n(value 1)\n";
        assert!(read_expr(wrong, &c).is_err());
        let v2 = "(jetvar 2)\n(expr mechanics)\n(value 1)\n";
        assert!(matches!(read_expr(v2, &c), Err(Error::Syntax { line: 1, .. })));
    }
}
