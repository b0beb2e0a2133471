//! Canonical normal form: expanded Laurent polynomials with rational
//! coefficients, function symbols treated as opaque atoms.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Zero};

use super::{Kind, Rational, ScalarExpr, Symbol};

/// Sorted list of `(symbol, exponent)` with non-zero exponents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(Symbol, i32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(s: Symbol) -> Monomial {
        Monomial(vec![(s, 1)])
    }

    pub fn factors(&self) -> &[(Symbol, i32)] {
        &self.0
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|(_, k)| *k as i64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let k = a[i].1 + b[j].1;
                    if k != 0 {
                        out.push((a[i].0.clone(), k));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn to_expr(&self) -> ScalarExpr {
        ScalarExpr::product(self.0.iter().map(|(s, k)| {
            ScalarExpr::symbol(s.clone())
                .pow(*k)
                .expect("symbol powers always exist")
        }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

/// Result of a degree query.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Degree {
    Polynomial(u32),
    NotPolynomial,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn constant(q: Rational) -> Poly {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(Monomial::one(), q);
        }
        Poly { terms }
    }

    pub fn var(s: Symbol) -> Poly {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(s), Rational::one());
        Poly { terms }
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn add_assign_scaled(&mut self, other: &Poly, scale: &Rational) {
        for (m, c) in &other.terms {
            let entry = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
            *entry += c * scale;
            if entry.is_zero() {
                self.terms.remove(m);
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign_scaled(other, &Rational::one());
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let entry = terms.entry(m).or_insert_with(Rational::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Poly { terms }
    }

    /// Power with `k ≥ 0`, or `k < 0` for a single monomial.
    pub fn pow(&self, k: i32) -> Option<Poly> {
        if k >= 0 {
            let mut acc = Poly::constant(Rational::one());
            let mut base = self.clone();
            let mut e = k as u32;
            while e > 0 {
                if e & 1 == 1 {
                    acc = acc.mul(&base);
                }
                e >>= 1;
                if e > 0 {
                    base = base.mul(&base);
                }
            }
            return Some(acc);
        }
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        let inv = Monomial(m.0.iter().map(|(s, e)| (s.clone(), -e)).collect());
        let mut single = Poly::zero();
        single.terms.insert(inv, c.recip());
        single.pow(-k)
    }

    pub fn from_expr(e: &ScalarExpr) -> Poly {
        let mut memo: HashMap<usize, Poly> = HashMap::new();
        from_expr_memo(e, &mut memo)
    }

    pub fn to_expr(&self) -> ScalarExpr {
        ScalarExpr::sum(
            self.terms
                .iter()
                .map(|(m, c)| m.to_expr().scale(c)),
        )
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(s, _)| s.clone()))
            .collect()
    }
}

fn from_expr_memo(e: &ScalarExpr, memo: &mut HashMap<usize, Poly>) -> Poly {
    if let Some(p) = memo.get(&e.addr()) {
        return p.clone();
    }
    let p = match e.kind() {
        Kind::Const(q) => Poly::constant(q.clone()),
        Kind::Sym(s) => Poly::var(s.clone()),
        Kind::Add(ts) => {
            let mut acc = Poly::zero();
            for t in ts {
                acc.add_assign_scaled(&from_expr_memo(t, memo), &Rational::one());
            }
            acc
        }
        Kind::Mul(fs) => {
            let mut acc = Poly::constant(Rational::one());
            for f in fs {
                acc = acc.mul(&from_expr_memo(f, memo));
                if acc.is_zero() {
                    break;
                }
            }
            acc
        }
        Kind::Pow(b, k) => from_expr_memo(b, memo)
            .pow(*k)
            .expect("negative powers are only built on monomials"),
    };
    memo.insert(e.addr(), p.clone());
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiindex::MultiIndex;

    #[test]
    fn expansion_is_canonical() {
        let a = ScalarExpr::jet(0, MultiIndex::new(vec![1]));
        let b = ScalarExpr::base(0);
        let lhs = (&a + &b).powu(2);
        let rhs = &(&a * &a) + &(&(ScalarExpr::int(2) * &a) * &b) + (&b * &b);
        assert_eq!(lhs.normal_form(), rhs.normal_form());
        assert_eq!(lhs.normal_form().len(), 3);
    }

    #[test]
    fn laurent_monomials() {
        let a = ScalarExpr::base(1);
        let e = &a.pow(-2).unwrap() * &a.powu(3);
        assert_eq!(e.normal_form(), Poly::var(Symbol::Base(1)));
    }
}
