//! Exact symbolic scalars over base and jet coordinates.
//!
//! A [`ScalarExpr`] is an immutable, reference-counted expression DAG over
//! rational constants, [`Symbol`] leaves, sums, products and integer powers.
//! Smart constructors flatten, fold constants and collect like terms, but do
//! not expand products; the canonical normal form (an expanded Laurent
//! polynomial with function symbols as opaque atoms) is computed on demand by
//! [`ScalarExpr::normal_form`]. Keeping the DAG unexpanded is what makes the
//! metric computations tractable: they are checked by exact evaluation at
//! sampled rational points instead of by expansion.

mod calculus;
mod degree;
mod eval;
mod poly;
mod registry;
pub mod sexpr;

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::multiindex::MultiIndex;

pub use calculus::Substitution;
pub use eval::{
    all_zero, is_zero, CheckMode, Counterexample, Evaluator, Point, PointSampler, UniformSampler,
    DEFAULT_POINTS, DEFAULT_SEED,
};
pub use poly::{Degree, Monomial, Poly};
pub use registry::{EvalHook, FunctionDef, Registry};

pub type Rational = num_rational::BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Key of a registered function symbol, e.g. `ginv` with indices `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FuncKey {
    pub name: Arc<str>,
    pub indices: Vec<u8>,
}

impl FuncKey {
    pub fn new(name: &str, indices: &[u8]) -> Self {
        FuncKey {
            name: Arc::from(name),
            indices: indices.to_vec(),
        }
    }
}

impl fmt::Display for FuncKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        for i in &self.indices {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

/// Leaves of scalar expressions. Indices are 0-based internally and 1-based
/// in every textual rendering.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    /// Base coordinate `x^λ`.
    Base(usize),
    /// Jet coordinate `y^i_γ`.
    Jet { fiber: usize, index: MultiIndex },
    /// Opaque function of coordinates with registered derivative rules.
    Func(FuncKey),
}

impl Symbol {
    pub fn jet(fiber: usize, index: MultiIndex) -> Symbol {
        Symbol::Jet { fiber, index }
    }

    /// Jet order of a coordinate; `None` for base coordinates and functions.
    pub fn jet_order(&self) -> Option<u32> {
        match self {
            Symbol::Jet { index, .. } => Some(index.order()),
            _ => None,
        }
    }

    pub fn is_coordinate(&self) -> bool {
        !matches!(self, Symbol::Func(_))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Base(l) => write!(f, "x{}", l + 1),
            Symbol::Jet { fiber, index } => write!(f, "y{}_{}", fiber + 1, index),
            Symbol::Func(k) => write!(f, "{k}"),
        }
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, PartialEq)]
pub(crate) enum Kind {
    Const(Rational),
    Sym(Symbol),
    Add(Vec<ScalarExpr>),
    Mul(Vec<ScalarExpr>),
    Pow(ScalarExpr, i32),
}

pub(crate) struct Node {
    kind: Kind,
    hash: u64,
}

#[derive(Clone)]
pub struct ScalarExpr(Arc<Node>);

impl PartialEq for ScalarExpr {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.hash == other.0.hash && self.0.kind == other.0.kind)
    }
}

impl Eq for ScalarExpr {}

impl Hash for ScalarExpr {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

fn node_hash(kind: &Kind) -> u64 {
    let mut h = DefaultHasher::new();
    match kind {
        Kind::Const(q) => {
            0u8.hash(&mut h);
            q.hash(&mut h);
        }
        Kind::Sym(s) => {
            1u8.hash(&mut h);
            s.hash(&mut h);
        }
        Kind::Add(ts) => {
            2u8.hash(&mut h);
            for t in ts {
                t.0.hash.hash(&mut h);
            }
        }
        Kind::Mul(fs) => {
            3u8.hash(&mut h);
            for t in fs {
                t.0.hash.hash(&mut h);
            }
        }
        Kind::Pow(b, k) => {
            4u8.hash(&mut h);
            b.0.hash.hash(&mut h);
            k.hash(&mut h);
        }
    }
    h.finish()
}

impl ScalarExpr {
    fn from_kind(kind: Kind) -> ScalarExpr {
        let hash = node_hash(&kind);
        ScalarExpr(Arc::new(Node { kind, hash }))
    }

    pub(crate) fn kind(&self) -> &Kind {
        &self.0.kind
    }

    /// Address used as a memoization key during a single traversal.
    pub(crate) fn addr(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn structural_hash(&self) -> u64 {
        self.0.hash
    }

    pub fn constant(q: Rational) -> ScalarExpr {
        ScalarExpr::from_kind(Kind::Const(q))
    }

    pub fn int(i: i64) -> ScalarExpr {
        ScalarExpr::constant(Rational::from_integer(BigInt::from(i)))
    }

    pub fn ratio(numer: i64, denom: i64) -> ScalarExpr {
        ScalarExpr::constant(rational(numer, denom))
    }

    pub fn zero() -> ScalarExpr {
        ScalarExpr::int(0)
    }

    pub fn one() -> ScalarExpr {
        ScalarExpr::int(1)
    }

    pub fn symbol(s: Symbol) -> ScalarExpr {
        ScalarExpr::from_kind(Kind::Sym(s))
    }

    pub fn base(direction: usize) -> ScalarExpr {
        ScalarExpr::symbol(Symbol::Base(direction))
    }

    pub fn jet(fiber: usize, index: MultiIndex) -> ScalarExpr {
        ScalarExpr::symbol(Symbol::jet(fiber, index))
    }

    pub fn func(key: FuncKey) -> ScalarExpr {
        ScalarExpr::symbol(Symbol::Func(key))
    }

    pub fn as_constant(&self) -> Option<&Rational> {
        match self.kind() {
            Kind::Const(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_symbol(&self) -> Option<&Symbol> {
        match self.kind() {
            Kind::Sym(s) => Some(s),
            _ => None,
        }
    }

    /// Structurally the constant zero. Use [`is_zero`] for semantic checks.
    pub fn is_literal_zero(&self) -> bool {
        matches!(self.kind(), Kind::Const(q) if q.is_zero())
    }

    pub fn is_literal_one(&self) -> bool {
        matches!(self.kind(), Kind::Const(q) if q.is_one())
    }

    /// Sum with flattening, constant folding and like-term collection.
    pub fn sum<I: IntoIterator<Item = ScalarExpr>>(terms: I) -> ScalarExpr {
        let mut constant = Rational::zero();
        // rest -> (coefficient, insertion order)
        let mut groups: HashMap<ScalarExpr, (Rational, usize)> = HashMap::new();
        let mut push = |t: ScalarExpr, constant: &mut Rational| match t.kind() {
            Kind::Const(q) => *constant += q,
            _ => {
                let (c, rest) = t.split_coefficient();
                let next = groups.len();
                let entry = groups.entry(rest).or_insert((Rational::zero(), next));
                entry.0 += c;
            }
        };
        for t in terms {
            if let Kind::Add(inner) = t.kind() {
                for u in inner {
                    push(u.clone(), &mut constant);
                }
            } else {
                push(t, &mut constant);
            }
        }
        let mut out: Vec<ScalarExpr> = groups
            .into_iter()
            .filter(|(_, (c, _))| !c.is_zero())
            .map(|(rest, (c, _))| rest.with_coefficient(c))
            .collect();
        out.sort_by(sort_key_cmp);
        if !constant.is_zero() {
            out.insert(0, ScalarExpr::constant(constant));
        }
        match out.len() {
            0 => ScalarExpr::zero(),
            1 => out.pop().unwrap(),
            _ => ScalarExpr::from_kind(Kind::Add(out)),
        }
    }

    /// Product with flattening, constant folding and exponent collection.
    pub fn product<I: IntoIterator<Item = ScalarExpr>>(factors: I) -> ScalarExpr {
        let mut constant = Rational::one();
        let mut groups: HashMap<ScalarExpr, i32> = HashMap::new();
        let mut absorb = |f: ScalarExpr, constant: &mut Rational| match f.kind() {
            Kind::Const(q) => *constant *= q,
            Kind::Pow(b, k) => *groups.entry(b.clone()).or_insert(0) += *k,
            _ => *groups.entry(f).or_insert(0) += 1,
        };
        for f in factors {
            if let Kind::Mul(inner) = f.kind() {
                for u in inner {
                    absorb(u.clone(), &mut constant);
                }
            } else {
                absorb(f, &mut constant);
            }
            if constant.is_zero() {
                return ScalarExpr::zero();
            }
        }
        let mut out: Vec<ScalarExpr> = groups
            .into_iter()
            .filter(|(_, k)| *k != 0)
            .map(|(b, k)| {
                if k == 1 {
                    b
                } else {
                    ScalarExpr::from_kind(Kind::Pow(b, k))
                }
            })
            .collect();
        out.sort_by(sort_key_cmp);
        if out.is_empty() {
            return ScalarExpr::constant(constant);
        }
        if constant.is_one() && out.len() == 1 {
            return out.pop().unwrap();
        }
        if !constant.is_one() {
            out.insert(0, ScalarExpr::constant(constant));
        }
        ScalarExpr::from_kind(Kind::Mul(out))
    }

    /// Integer power. Negative exponents are allowed on monomials only.
    pub fn pow(&self, k: i32) -> Result<ScalarExpr> {
        if k == 0 {
            return Ok(ScalarExpr::one());
        }
        if k == 1 {
            return Ok(self.clone());
        }
        match self.kind() {
            Kind::Const(q) => {
                if q.is_zero() && k < 0 {
                    return Err(Error::Eval("zero raised to a negative power".into()));
                }
                let base = if k < 0 { q.recip() } else { q.clone() };
                Ok(ScalarExpr::constant(num_traits::pow(base, k.unsigned_abs() as usize)))
            }
            Kind::Sym(_) => Ok(ScalarExpr::from_kind(Kind::Pow(self.clone(), k))),
            Kind::Pow(b, j) => b.pow(j * k),
            Kind::Mul(fs) => {
                let parts = fs.iter().map(|f| f.pow(k)).collect::<Result<Vec<_>>>()?;
                Ok(ScalarExpr::product(parts))
            }
            Kind::Add(_) => {
                if k < 0 {
                    Err(Error::NonPolynomialPower)
                } else {
                    Ok(ScalarExpr::from_kind(Kind::Pow(self.clone(), k)))
                }
            }
        }
    }

    pub fn powu(&self, k: u32) -> ScalarExpr {
        self.pow(k as i32).expect("non-negative powers always exist")
    }

    pub fn scale(&self, q: &Rational) -> ScalarExpr {
        ScalarExpr::product([ScalarExpr::constant(q.clone()), self.clone()])
    }

    /// Splits `c · rest` with `c` rational.
    fn split_coefficient(&self) -> (Rational, ScalarExpr) {
        match self.kind() {
            Kind::Const(q) => (q.clone(), ScalarExpr::one()),
            Kind::Mul(fs) => match fs[0].kind() {
                Kind::Const(q) => {
                    let rest: Vec<_> = fs[1..].to_vec();
                    let rest = if rest.len() == 1 {
                        rest.into_iter().next().unwrap()
                    } else {
                        ScalarExpr::from_kind(Kind::Mul(rest))
                    };
                    (q.clone(), rest)
                }
                _ => (Rational::one(), self.clone()),
            },
            _ => (Rational::one(), self.clone()),
        }
    }

    fn with_coefficient(self, c: Rational) -> ScalarExpr {
        if c.is_one() {
            return self;
        }
        match self.kind() {
            Kind::Mul(fs) => {
                let mut v = Vec::with_capacity(fs.len() + 1);
                v.push(ScalarExpr::constant(c));
                v.extend(fs.iter().cloned());
                ScalarExpr::from_kind(Kind::Mul(v))
            }
            _ => ScalarExpr::from_kind(Kind::Mul(vec![ScalarExpr::constant(c), self])),
        }
    }

    /// Every symbol leaf, function symbols included but not expanded.
    pub fn atoms(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        let mut seen = std::collections::HashSet::new();
        self.collect_atoms(&mut out, &mut seen);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Symbol>, seen: &mut std::collections::HashSet<usize>) {
        if !seen.insert(self.addr()) {
            return;
        }
        match self.kind() {
            Kind::Const(_) => {}
            Kind::Sym(s) => {
                out.insert(s.clone());
            }
            Kind::Add(xs) | Kind::Mul(xs) => xs.iter().for_each(|x| x.collect_atoms(out, seen)),
            Kind::Pow(b, _) => b.collect_atoms(out, seen),
        }
    }

    /// Coordinates the expression depends on, with function symbols
    /// replaced by their registered arguments.
    pub fn coordinates(&self, reg: &Registry) -> Result<BTreeSet<Symbol>> {
        let mut out = BTreeSet::new();
        for a in self.atoms() {
            match &a {
                Symbol::Func(k) => {
                    let def = reg.get(k)?;
                    out.extend(def.args.iter().cloned());
                }
                _ => {
                    out.insert(a);
                }
            }
        }
        Ok(out)
    }

    /// Highest jet order among the coordinates the expression mentions
    /// (structural; see `jetchart::measured_order` for the semantic version).
    pub fn structural_jet_order(&self, reg: &Registry) -> Result<Option<u32>> {
        Ok(self.coordinates(reg)?.iter().filter_map(Symbol::jet_order).max())
    }

    /// Number of distinct DAG nodes.
    pub fn node_count(&self) -> usize {
        fn walk(e: &ScalarExpr, seen: &mut std::collections::HashSet<usize>) {
            if !seen.insert(e.addr()) {
                return;
            }
            match e.kind() {
                Kind::Add(xs) | Kind::Mul(xs) => xs.iter().for_each(|x| walk(x, seen)),
                Kind::Pow(b, _) => walk(b, seen),
                _ => {}
            }
        }
        let mut seen = std::collections::HashSet::new();
        walk(self, &mut seen);
        seen.len()
    }

    pub fn normal_form(&self) -> Poly {
        Poly::from_expr(self)
    }

    /// Rebuilds the expression from its normal form.
    pub fn normalize(&self) -> ScalarExpr {
        self.normal_form().to_expr()
    }
}

fn rank(e: &ScalarExpr) -> u8 {
    match e.kind() {
        Kind::Const(_) => 0,
        Kind::Sym(_) => 1,
        Kind::Pow(b, _) if b.as_symbol().is_some() => 1,
        Kind::Pow(..) => 2,
        Kind::Mul(_) => 3,
        Kind::Add(_) => 4,
    }
}

fn leading_symbol(e: &ScalarExpr) -> Option<(&Symbol, i32)> {
    match e.kind() {
        Kind::Sym(s) => Some((s, 1)),
        Kind::Pow(b, k) => b.as_symbol().map(|s| (s, *k)),
        _ => None,
    }
}

fn sort_key_cmp(a: &ScalarExpr, b: &ScalarExpr) -> std::cmp::Ordering {
    rank(a)
        .cmp(&rank(b))
        .then_with(|| match (leading_symbol(a), leading_symbol(b)) {
            (Some(x), Some(y)) => x.cmp(&y),
            _ => std::cmp::Ordering::Equal,
        })
        .then_with(|| a.0.hash.cmp(&b.0.hash))
}

impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            Kind::Const(q) => {
                if q.is_negative() {
                    write!(f, "({q})")
                } else {
                    write!(f, "{q}")
                }
            }
            Kind::Sym(s) => write!(f, "{s}"),
            Kind::Add(ts) => {
                f.write_str("(")?;
                for (k, t) in ts.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{t}")?;
                }
                f.write_str(")")
            }
            Kind::Mul(fs) => {
                for (k, t) in fs.iter().enumerate() {
                    if k > 0 {
                        f.write_str("·")?;
                    }
                    write!(f, "{t}")?;
                }
                Ok(())
            }
            Kind::Pow(b, k) => write!(f, "{b}^{k}"),
        }
    }
}

impl fmt::Debug for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", sexpr::to_sexpr(self))
    }
}

impl From<i64> for ScalarExpr {
    fn from(i: i64) -> Self {
        ScalarExpr::int(i)
    }
}

impl From<Symbol> for ScalarExpr {
    fn from(s: Symbol) -> Self {
        ScalarExpr::symbol(s)
    }
}

impl From<Rational> for ScalarExpr {
    fn from(q: Rational) -> Self {
        ScalarExpr::constant(q)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl std::ops::$tr<&ScalarExpr> for &ScalarExpr {
            type Output = ScalarExpr;
            fn $m(self, rhs: &ScalarExpr) -> ScalarExpr {
                let f: fn(&ScalarExpr, &ScalarExpr) -> ScalarExpr = $body;
                f(self, rhs)
            }
        }
        impl std::ops::$tr<ScalarExpr> for ScalarExpr {
            type Output = ScalarExpr;
            fn $m(self, rhs: ScalarExpr) -> ScalarExpr {
                std::ops::$tr::$m(&self, &rhs)
            }
        }
        impl std::ops::$tr<&ScalarExpr> for ScalarExpr {
            type Output = ScalarExpr;
            fn $m(self, rhs: &ScalarExpr) -> ScalarExpr {
                std::ops::$tr::$m(&self, rhs)
            }
        }
        impl std::ops::$tr<ScalarExpr> for &ScalarExpr {
            type Output = ScalarExpr;
            fn $m(self, rhs: ScalarExpr) -> ScalarExpr {
                std::ops::$tr::$m(self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| ScalarExpr::sum([a.clone(), b.clone()]));
binop!(Sub, sub, |a, b| ScalarExpr::sum([a.clone(), -b]));
binop!(Mul, mul, |a, b| ScalarExpr::product([a.clone(), b.clone()]));

impl std::ops::Neg for &ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        ScalarExpr::product([ScalarExpr::int(-1), self.clone()])
    }
}

impl std::ops::Neg for ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        -&self
    }
}

impl std::iter::Sum for ScalarExpr {
    fn sum<I: Iterator<Item = ScalarExpr>>(iter: I) -> Self {
        ScalarExpr::sum(iter)
    }
}

impl std::iter::Product for ScalarExpr {
    fn product<I: Iterator<Item = ScalarExpr>>(iter: I) -> Self {
        ScalarExpr::product(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(idx: &[u32]) -> ScalarExpr {
        ScalarExpr::jet(0, MultiIndex::new(idx.to_vec()))
    }

    #[test]
    fn like_terms_collect() {
        let a = y(&[1]);
        let e = &(&a * &a) - &a.powu(2);
        assert!(e.is_literal_zero());
        let two_a = &a + &a;
        assert_eq!(two_a, ScalarExpr::int(2) * &a);
    }

    #[test]
    fn products_commute_structurally() {
        let x = ScalarExpr::base(0);
        let yy = y(&[0]);
        assert_eq!(&x * &yy, &yy * &x);
        assert_eq!(&(&x * &yy) - &(&yy * &x), ScalarExpr::zero());
    }

    #[test]
    fn powers_fold() {
        let a = y(&[1]);
        assert_eq!(a.pow(2).unwrap().pow(3).unwrap(), a.pow(6).unwrap());
        assert_eq!(&a.pow(-1).unwrap() * &a, ScalarExpr::one());
        let s = &a + &ScalarExpr::one();
        assert_eq!(s.pow(-1), Err(Error::NonPolynomialPower));
        assert_eq!(ScalarExpr::ratio(2, 3).pow(-2).unwrap(), ScalarExpr::ratio(9, 4));
    }
}
