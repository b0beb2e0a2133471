//! Degree queries with respect to a chosen set of symbols.
//!
//! The expression is expanded only in the chosen symbols; coefficients stay
//! unexpanded DAGs and are zero-tested in the requested [`CheckMode`]. This
//! keeps the query cheap on metric expressions where a full expansion would
//! not fit in memory.

use std::collections::{BTreeMap, HashMap};

use super::{is_zero, CheckMode, Degree, Kind, Monomial, Registry, ScalarExpr, Symbol};
use crate::error::Result;

/// `S`-polynomial with unexpanded coefficients.
type Expansion = BTreeMap<Monomial, ScalarExpr>;

impl ScalarExpr {
    /// Total degree in `symbols` of the normal form, function symbols opaque.
    pub fn polynomial_degree_in(&self, symbols: &[Symbol]) -> Degree {
        let weights = symbols.iter().map(|s| (s.clone(), 1)).collect();
        self.weighted_degree_in(&weights, CheckMode::Exact, &Registry::new())
            .expect("exact degree queries do not evaluate")
    }

    /// Weighted degree: each occurrence of `s` counts `weights[s]`. Symbols
    /// with weight 0 are ignored. Monomials whose coefficient vanishes in
    /// `mode` do not count.
    pub fn weighted_degree_in(
        &self,
        weights: &BTreeMap<Symbol, u32>,
        mode: CheckMode,
        reg: &Registry,
    ) -> Result<Degree> {
        let weights: BTreeMap<Symbol, u32> =
            weights.iter().filter(|(_, w)| **w > 0).map(|(s, w)| (s.clone(), *w)).collect();
        let Some(expansion) = self.expand_in(&weights, reg)? else {
            return Ok(Degree::NotPolynomial);
        };
        let mut by_degree: BTreeMap<u32, Vec<ScalarExpr>> = BTreeMap::new();
        for (m, c) in expansion {
            let d = m
                .factors()
                .iter()
                .map(|(s, k)| weights[s] * (*k as u32))
                .sum::<u32>();
            by_degree.entry(d).or_default().push(c);
        }
        for (d, coeffs) in by_degree.into_iter().rev() {
            for c in coeffs {
                if !is_zero(&c, mode, reg)? {
                    return Ok(Degree::Polynomial(d));
                }
            }
        }
        Ok(Degree::Polynomial(0))
    }

    /// Expansion in the keys of `weights`; `None` when not polynomial there.
    pub(crate) fn expand_in(
        &self,
        weights: &BTreeMap<Symbol, u32>,
        reg: &Registry,
    ) -> Result<Option<Expansion>> {
        let mut ctx = Expander {
            weights,
            reg,
            memo: HashMap::new(),
        };
        ctx.expand(self)
    }
}

struct Expander<'a> {
    weights: &'a BTreeMap<Symbol, u32>,
    reg: &'a Registry,
    memo: HashMap<usize, Option<Expansion>>,
}

fn constant_term(e: ScalarExpr) -> Expansion {
    let mut out = Expansion::new();
    if !e.is_literal_zero() {
        out.insert(Monomial::one(), e);
    }
    out
}

fn multiply(a: &Expansion, b: &Expansion) -> Expansion {
    let mut acc: BTreeMap<Monomial, Vec<ScalarExpr>> = BTreeMap::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            acc.entry(ma.mul(mb)).or_default().push(ca * cb);
        }
    }
    acc.into_iter()
        .map(|(m, cs)| (m, ScalarExpr::sum(cs)))
        .filter(|(_, c)| !c.is_literal_zero())
        .collect()
}

impl Expander<'_> {
    fn expand(&mut self, e: &ScalarExpr) -> Result<Option<Expansion>> {
        if let Some(v) = self.memo.get(&e.addr()) {
            return Ok(v.clone());
        }
        let out = match e.kind() {
            Kind::Const(_) => Some(constant_term(e.clone())),
            Kind::Sym(s) => match s {
                _ if self.weights.contains_key(s) => {
                    let mut m = Expansion::new();
                    m.insert(Monomial::var(s.clone()), ScalarExpr::one());
                    Some(m)
                }
                Symbol::Func(k) => {
                    let def = self.reg.get(k);
                    match def {
                        Ok(def) if def.args.iter().any(|a| self.weights.contains_key(a)) => None,
                        _ => Some(constant_term(e.clone())),
                    }
                }
                _ => Some(constant_term(e.clone())),
            },
            Kind::Add(ts) => {
                let mut acc: BTreeMap<Monomial, Vec<ScalarExpr>> = BTreeMap::new();
                let mut ok = true;
                for t in ts {
                    match self.expand(t)? {
                        Some(x) => {
                            for (m, c) in x {
                                acc.entry(m).or_default().push(c);
                            }
                        }
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                ok.then(|| {
                    acc.into_iter()
                        .map(|(m, cs)| (m, ScalarExpr::sum(cs)))
                        .filter(|(_, c)| !c.is_literal_zero())
                        .collect()
                })
            }
            Kind::Mul(fs) => {
                let mut acc = Some(constant_term(ScalarExpr::one()));
                for f in fs {
                    acc = match (acc, self.expand(f)?) {
                        (Some(a), Some(b)) => Some(multiply(&a, &b)),
                        _ => None,
                    };
                    if acc.is_none() {
                        break;
                    }
                }
                acc
            }
            Kind::Pow(b, k) => match self.expand(b)? {
                None => None,
                Some(x) => {
                    let free = x.keys().all(|m| m.factors().is_empty());
                    if free {
                        Some(constant_term(e.clone()))
                    } else if *k < 0 {
                        None
                    } else {
                        let mut acc = constant_term(ScalarExpr::one());
                        for _ in 0..*k {
                            acc = multiply(&acc, &x);
                        }
                        Some(acc)
                    }
                }
            },
        };
        self.memo.insert(e.addr(), out.clone());
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiindex::MultiIndex;

    fn ys(i: u32) -> Symbol {
        Symbol::jet(0, MultiIndex::new(vec![i]))
    }

    #[test]
    fn degree_examples() {
        let y1 = ScalarExpr::symbol(ys(1));
        let y2 = ScalarExpr::symbol(ys(2));
        let e = &y2.powu(2) * &y1;
        assert_eq!(e.polynomial_degree_in(&[ys(2)]), Degree::Polynomial(2));
        assert_eq!(ScalarExpr::base(0).polynomial_degree_in(&[ys(1)]), Degree::Polynomial(0));
        assert_eq!(y1.pow(-1).unwrap().polynomial_degree_in(&[ys(1)]), Degree::NotPolynomial);
        // cancellation lowers the degree
        let c = &(&y2 + &y1).powu(2) - &y2.powu(2);
        assert_eq!(c.polynomial_degree_in(&[ys(2)]), Degree::Polynomial(1));
    }

    #[test]
    fn weighted() {
        let e = &ScalarExpr::symbol(ys(3)) * &ScalarExpr::symbol(ys(2)).powu(2);
        let w: BTreeMap<_, _> = [(ys(2), 1), (ys(3), 2)].into_iter().collect();
        assert_eq!(
            e.weighted_degree_in(&w, CheckMode::Exact, &Registry::new()).unwrap(),
            Degree::Polynomial(4)
        );
    }
}
