//! Exact evaluation at rational points and identity testing.
//!
//! Probabilistic identity checks evaluate at independently sampled rational
//! points. The default sampler draws every coordinate uniformly as `p/q`
//! with `p ∈ [−10⁴, 10⁴]` and `q ∈ [1, 100]` from a ChaCha8 stream seeded
//! with [`DEFAULT_SEED`] unless a seed is given. Charts with structured
//! fibers (the metric bundle) install their own sampler.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{FuncKey, Kind, Rational, Registry, ScalarExpr, Symbol};
use crate::error::{Error, Result};

pub const DEFAULT_SEED: u64 = 0x6a65_7476_6172;
pub const DEFAULT_POINTS: usize = 5;
const MAX_RETRIES: usize = 16;

pub type Point = BTreeMap<Symbol, Rational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CheckMode {
    /// Compare normal forms.
    Exact,
    /// Evaluate at `points` sampled points.
    Probabilistic { points: usize, seed: u64 },
}

impl CheckMode {
    pub fn probabilistic() -> CheckMode {
        CheckMode::Probabilistic {
            points: DEFAULT_POINTS,
            seed: DEFAULT_SEED,
        }
    }
}

pub trait PointSampler: Send + Sync {
    fn sample(&self, coords: &BTreeSet<Symbol>, rng: &mut ChaCha8Rng) -> Point;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct UniformSampler;

impl UniformSampler {
    pub fn draw(rng: &mut ChaCha8Rng) -> Rational {
        let p: i64 = rng.gen_range(-10_000..=10_000);
        let q: i64 = rng.gen_range(1..=100);
        Rational::new(BigInt::from(p), BigInt::from(q))
    }
}

impl PointSampler for UniformSampler {
    fn sample(&self, coords: &BTreeSet<Symbol>, rng: &mut ChaCha8Rng) -> Point {
        coords
            .iter()
            .map(|s| (s.clone(), UniformSampler::draw(rng)))
            .collect()
    }
}

/// Evaluates expressions at one point, sharing work across expressions.
pub struct Evaluator<'a> {
    point: &'a Point,
    reg: &'a Registry,
    memo: HashMap<usize, Rational>,
    funcs: HashMap<FuncKey, Rational>,
    // roots keep memoized node addresses alive
    roots: Vec<ScalarExpr>,
}

impl<'a> Evaluator<'a> {
    pub fn new(point: &'a Point, reg: &'a Registry) -> Self {
        Evaluator {
            point,
            reg,
            memo: HashMap::new(),
            funcs: HashMap::new(),
            roots: Vec::new(),
        }
    }

    pub fn eval(&mut self, e: &ScalarExpr) -> Result<Rational> {
        self.roots.push(e.clone());
        self.eval_node(e)
    }

    fn eval_node(&mut self, e: &ScalarExpr) -> Result<Rational> {
        if let Some(v) = self.memo.get(&e.addr()) {
            return Ok(v.clone());
        }
        let v = match e.kind() {
            Kind::Const(q) => q.clone(),
            Kind::Sym(s) => self.symbol_value(s)?,
            Kind::Add(ts) => {
                let mut acc = Rational::zero();
                for t in ts {
                    acc += self.eval_node(t)?;
                }
                acc
            }
            Kind::Mul(fs) => {
                let mut acc = Rational::one();
                for f in fs {
                    let v = self.eval_node(f)?;
                    if v.is_zero() {
                        acc = Rational::zero();
                        break;
                    }
                    acc *= v;
                }
                acc
            }
            Kind::Pow(b, k) => {
                let v = self.eval_node(b)?;
                if v.is_zero() && *k < 0 {
                    return Err(Error::Eval(format!("division by zero in {e:?}")));
                }
                let base = if *k < 0 { v.recip() } else { v };
                num_traits::pow(base, k.unsigned_abs() as usize)
            }
        };
        self.memo.insert(e.addr(), v.clone());
        Ok(v)
    }

    fn symbol_value(&mut self, s: &Symbol) -> Result<Rational> {
        match s {
            Symbol::Func(k) => {
                if let Some(v) = self.funcs.get(k) {
                    return Ok(v.clone());
                }
                let def = self.reg.get(k)?;
                let hook = def
                    .hook
                    .as_ref()
                    .ok_or_else(|| Error::Eval(format!("function {k} has no evaluation hook")))?;
                let args = def
                    .args
                    .iter()
                    .map(|a| self.coordinate(a))
                    .collect::<Result<Vec<_>>>()?;
                let v = hook(&args)?;
                self.funcs.insert(k.clone(), v.clone());
                Ok(v)
            }
            _ => self.coordinate(s),
        }
    }

    fn coordinate(&self, s: &Symbol) -> Result<Rational> {
        self.point
            .get(s)
            .cloned()
            .ok_or_else(|| Error::Eval(format!("unbound symbol {s}")))
    }
}

impl ScalarExpr {
    pub fn eval_at(&self, point: &Point, reg: &Registry) -> Result<Rational> {
        Evaluator::new(point, reg).eval(self)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    /// Index of the offending expression in the checked list.
    pub index: usize,
    /// Sampled point (probabilistic mode only), rendered `symbol = value`.
    pub point: Option<Vec<(String, String)>>,
    pub value: Option<String>,
}

pub fn is_zero(e: &ScalarExpr, mode: CheckMode, reg: &Registry) -> Result<bool> {
    Ok(all_zero(std::slice::from_ref(e), mode, reg)?.is_none())
}

/// Checks that every expression vanishes identically; returns the first
/// failure found.
pub fn all_zero(
    exprs: &[ScalarExpr],
    mode: CheckMode,
    reg: &Registry,
) -> Result<Option<Counterexample>> {
    match mode {
        CheckMode::Exact => {
            for (index, e) in exprs.iter().enumerate() {
                if e.is_literal_zero() {
                    continue;
                }
                if !e.normal_form().is_zero() {
                    return Ok(Some(Counterexample {
                        index,
                        point: None,
                        value: None,
                    }));
                }
            }
            Ok(None)
        }
        CheckMode::Probabilistic { points, seed } => {
            let pending: Vec<(usize, &ScalarExpr)> = exprs
                .iter()
                .enumerate()
                .filter(|(_, e)| !e.is_literal_zero())
                .collect();
            if pending.is_empty() {
                return Ok(None);
            }
            if let Some((index, e)) = pending.iter().find(|(_, e)| e.as_constant().is_some()) {
                return Ok(Some(Counterexample {
                    index: *index,
                    point: None,
                    value: e.as_constant().map(|q| q.to_string()),
                }));
            }
            let mut coords = BTreeSet::new();
            for (_, e) in &pending {
                coords.extend(e.coordinates(reg)?);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..points {
                let mut attempt = 0;
                loop {
                    let point = reg.sampler().sample(&coords, &mut rng);
                    let mut ev = Evaluator::new(&point, reg);
                    let mut failure = None;
                    let mut hook_error = None;
                    for (index, e) in &pending {
                        match ev.eval(e) {
                            Ok(v) if v.is_zero() => {}
                            Ok(v) => {
                                failure = Some((*index, v));
                                break;
                            }
                            Err(err @ Error::Eval(_)) => {
                                hook_error = Some(err);
                                break;
                            }
                            Err(err) => return Err(err),
                        }
                    }
                    if let Some(err) = hook_error {
                        attempt += 1;
                        if attempt >= MAX_RETRIES {
                            return Err(err);
                        }
                        continue;
                    }
                    if let Some((index, v)) = failure {
                        return Ok(Some(Counterexample {
                            index,
                            point: Some(render_point(&point)),
                            value: Some(v.to_string()),
                        }));
                    }
                    break;
                }
            }
            Ok(None)
        }
    }
}

pub(crate) fn render_point(point: &Point) -> Vec<(String, String)> {
    point
        .iter()
        .map(|(s, v)| (s.to_string(), v.to_string()))
        .collect()
}
