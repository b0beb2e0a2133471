//! Adapted charts `(x^λ, y^i_γ)` on `J_r Y` and total derivatives.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::multiindex::{enumerate_up_to, MultiIndex};
use crate::symexpr::{CheckMode, Evaluator, Point, Registry, ScalarExpr, Symbol};

#[derive(Clone, Debug)]
pub struct JetChart {
    n: usize,
    m: usize,
    r: u32,
    base_names: Vec<String>,
    fiber_names: Vec<String>,
    registry: Arc<Registry>,
}

/// A value together with the (possibly prolonged) chart it lives on.
#[derive(Clone, Debug)]
pub struct Prolonged<T> {
    pub chart: JetChart,
    pub value: T,
}

impl JetChart {
    pub fn new(n: usize, m: usize, r: u32) -> Result<JetChart> {
        if n == 0 || m == 0 {
            return Err(Error::Domain(format!(
                "a chart needs n ≥ 1 and m ≥ 1, got n = {n}, m = {m}"
            )));
        }
        Ok(JetChart {
            n,
            m,
            r,
            base_names: (1..=n).map(|l| format!("x{l}")).collect(),
            fiber_names: (1..=m).map(|i| format!("y{i}")).collect(),
            registry: Arc::new(Registry::new()),
        })
    }

    pub fn with_names(mut self, base: Vec<String>, fiber: Vec<String>) -> Result<JetChart> {
        if base.len() != self.n || fiber.len() != self.m {
            return Err(Error::Dimension {
                expected: self.n + self.m,
                found: base.len() + fiber.len(),
            });
        }
        self.base_names = base;
        self.fiber_names = fiber;
        Ok(self)
    }

    pub fn with_registry(mut self, registry: Registry) -> Result<JetChart> {
        registry.check_closed()?;
        for def in registry.functions() {
            for a in &def.args {
                self.check_coordinate(a)?;
            }
        }
        self.registry = Arc::new(registry);
        Ok(self)
    }

    pub fn base_dim(&self) -> usize {
        self.n
    }

    pub fn fiber_dim(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.r
    }

    pub fn base_names(&self) -> &[String] {
        &self.base_names
    }

    pub fn fiber_names(&self) -> &[String] {
        &self.fiber_names
    }

    pub fn registry(&self) -> &Registry {
        &self.registry
    }

    pub fn registry_arc(&self) -> Arc<Registry> {
        self.registry.clone()
    }

    /// The same chart at another jet order.
    pub fn at_order(&self, r: u32) -> JetChart {
        JetChart { r, ..self.clone() }
    }

    pub fn prolong(&self) -> JetChart {
        self.at_order(self.r + 1)
    }

    pub fn same_bundle(&self, other: &JetChart) -> bool {
        self.n == other.n && self.m == other.m
    }

    pub fn x(&self, direction: usize) -> ScalarExpr {
        ScalarExpr::base(direction)
    }

    pub fn y(&self, fiber: usize, index: MultiIndex) -> ScalarExpr {
        ScalarExpr::jet(fiber, index)
    }

    /// `{x^λ} ∪ {y^i_γ : |γ| ≤ r}` in canonical order.
    pub fn coordinates(&self) -> Vec<Symbol> {
        let mut out: Vec<Symbol> = (0..self.n).map(Symbol::Base).collect();
        for gamma in enumerate_up_to(self.n, self.r) {
            for i in 0..self.m {
                out.push(Symbol::jet(i, gamma.clone()));
            }
        }
        out
    }

    /// Jet coordinates of exactly order `k`.
    pub fn jet_coordinates_of_order(&self, k: u32) -> Vec<Symbol> {
        let mut out = Vec::new();
        for gamma in crate::multiindex::enumerate_exact(self.n, k) {
            for i in 0..self.m {
                out.push(Symbol::jet(i, gamma.clone()));
            }
        }
        out
    }

    pub fn check_coordinate(&self, s: &Symbol) -> Result<()> {
        let ok = match s {
            Symbol::Base(l) => *l < self.n,
            Symbol::Jet { fiber, index } => {
                *fiber < self.m && index.dim() == self.n && index.order() <= self.r
            }
            Symbol::Func(k) => return self.registry.get(k).map(|_| ()),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UnknownSymbol(format!(
                "{s} is not a coordinate of the chart (n = {}, m = {}, r = {})",
                self.n, self.m, self.r
            )))
        }
    }

    /// Fails with an unknown-symbol error if `e` leaves the chart.
    pub fn check_expr(&self, e: &ScalarExpr) -> Result<()> {
        e.atoms().iter().try_for_each(|s| self.check_coordinate(s))
    }

    /// `D_λ e = ∂_λ e + y^j_{γ+λ} ∂e/∂y^j_γ`, on the prolonged chart.
    pub fn total_derivative(&self, direction: usize, e: &ScalarExpr) -> Result<Prolonged<ScalarExpr>> {
        if direction >= self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: direction + 1,
            });
        }
        self.check_expr(e)?;
        Ok(Prolonged {
            chart: self.prolong(),
            value: self.total_derivative_unchecked(direction, e)?,
        })
    }

    /// `D_λ` without the chart-range check; used on hot paths where the
    /// operand was produced inside this crate.
    pub(crate) fn total_derivative_unchecked(&self, direction: usize, e: &ScalarExpr) -> Result<ScalarExpr> {
        let reg = &self.registry;
        let mut funcs: HashMap<Symbol, ScalarExpr> = HashMap::new();
        let n = self.n;
        let mut leaf = |s: &Symbol| -> Result<ScalarExpr> {
            Ok(match s {
                Symbol::Base(l) => {
                    if *l == direction {
                        ScalarExpr::one()
                    } else {
                        ScalarExpr::zero()
                    }
                }
                Symbol::Jet { fiber, index } => ScalarExpr::jet(*fiber, index.incremented(direction)),
                Symbol::Func(k) => {
                    if let Some(d) = funcs.get(s) {
                        return Ok(d.clone());
                    }
                    let def = reg.get(k)?;
                    let mut parts = Vec::new();
                    for a in &def.args {
                        let da = match a {
                            Symbol::Base(l) if *l == direction => ScalarExpr::one(),
                            Symbol::Base(_) => continue,
                            Symbol::Jet { fiber, index } => {
                                debug_assert_eq!(index.dim(), n);
                                ScalarExpr::jet(*fiber, index.incremented(direction))
                            }
                            Symbol::Func(_) => unreachable!("function arguments are coordinates"),
                        };
                        parts.push(&def.rules[a] * &da);
                    }
                    let d = ScalarExpr::sum(parts);
                    funcs.insert(s.clone(), d.clone());
                    d
                }
            })
        };
        e.derive_with(&mut leaf)
    }

    /// `D_γ = D_1^{γ_1} ∘ … ∘ D_n^{γ_n}`, on the chart prolonged `|γ|` times.
    pub fn iterated_total_derivative(&self, gamma: &MultiIndex, e: &ScalarExpr) -> Result<Prolonged<ScalarExpr>> {
        if gamma.dim() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: gamma.dim(),
            });
        }
        self.check_expr(e)?;
        Ok(Prolonged {
            chart: self.at_order(self.r + gamma.order()),
            value: self.iterated_unchecked(gamma, e)?,
        })
    }

    pub(crate) fn iterated_unchecked(&self, gamma: &MultiIndex, e: &ScalarExpr) -> Result<ScalarExpr> {
        let mut acc = e.clone();
        for dir in gamma.directions() {
            acc = self.total_derivative_unchecked(dir, &acc)?;
        }
        Ok(acc)
    }

    /// Smallest `ℓ` such that `e` does not depend on jet coordinates of
    /// order `≥ ℓ + 1`, i.e. the jet order actually used by `e`.
    ///
    /// Exact mode reads it off the normal form (function symbols count
    /// through their arguments). Probabilistic mode resamples the top-order
    /// coordinates and compares values.
    pub fn measured_order(&self, e: &ScalarExpr, mode: CheckMode) -> Result<u32> {
        measured_order(e, mode, &self.registry)
    }
}

/// See [`JetChart::measured_order`].
pub fn measured_order(e: &ScalarExpr, mode: CheckMode, reg: &Registry) -> Result<u32> {
    let structural = e.structural_jet_order(reg)?.unwrap_or(0);
    match mode {
        CheckMode::Exact => {
            let mut best = 0;
            for s in e.normal_form().symbols() {
                let order = match &s {
                    Symbol::Func(k) => reg
                        .get(k)
                        .map(|d| d.args.iter().filter_map(Symbol::jet_order).max().unwrap_or(0))
                        .unwrap_or(0),
                    other => other.jet_order().unwrap_or(0),
                };
                best = best.max(order);
            }
            Ok(best)
        }
        CheckMode::Probabilistic { points, seed } => {
            let coords = e.coordinates(reg)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut order = structural;
            while order > 0 {
                let top: BTreeSet<Symbol> = coords
                    .iter()
                    .filter(|s| s.jet_order().is_some_and(|k| k >= order))
                    .cloned()
                    .collect();
                if depends_on(e, &coords, &top, points, &mut rng, reg)? {
                    break;
                }
                order -= 1;
            }
            Ok(order)
        }
    }
}

/// Probabilistic test that `e` changes when only `subset` is resampled.
pub(crate) fn depends_on(
    e: &ScalarExpr,
    coords: &BTreeSet<Symbol>,
    subset: &BTreeSet<Symbol>,
    points: usize,
    rng: &mut ChaCha8Rng,
    reg: &Registry,
) -> Result<bool> {
    const RETRIES: usize = 16;
    let rest: BTreeSet<Symbol> = coords.difference(subset).cloned().collect();
    for _ in 0..points {
        let mut attempt = 0;
        loop {
            let mut p: Point = reg.sampler().sample(&rest, rng);
            let mut q = p.clone();
            p.extend(reg.sampler().sample(subset, rng));
            q.extend(reg.sampler().sample(subset, rng));
            let a = Evaluator::new(&p, reg).eval(e);
            let b = Evaluator::new(&q, reg).eval(e);
            match (a, b) {
                (Ok(a), Ok(b)) => {
                    if a != b {
                        return Ok(true);
                    }
                    break;
                }
                (Err(err @ Error::Eval(_)), _) | (_, Err(err @ Error::Eval(_))) => {
                    attempt += 1;
                    if attempt >= RETRIES {
                        return Err(err);
                    }
                }
                (Err(err), _) | (_, Err(err)) => return Err(err),
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn total_derivative_examples() {
        let c = JetChart::new(1, 1, 1).unwrap();
        let y = c.y(0, mi(&[0]));
        assert_eq!(c.total_derivative(0, &y).unwrap().value, c.y(0, mi(&[1])));
        let e = &c.x(0) * &c.y(0, mi(&[1]));
        let d = c.total_derivative(0, &e).unwrap();
        assert_eq!(d.chart.order(), 2);
        assert_eq!(d.value, &c.y(0, mi(&[1])) + &(&c.x(0) * &c.y(0, mi(&[2]))));
        assert!(c.total_derivative(0, &ScalarExpr::int(5)).unwrap().value.is_literal_zero());
    }

    #[test]
    fn iterated_examples() {
        let c = JetChart::new(2, 1, 0).unwrap();
        let y = c.y(0, mi(&[0, 0]));
        let d = c.iterated_total_derivative(&mi(&[1, 1]), &y).unwrap();
        assert_eq!(d.value, c.y(0, mi(&[1, 1])));
        assert_eq!(d.chart.order(), 2);
        assert_eq!(c.iterated_total_derivative(&mi(&[0, 0]), &y).unwrap().value, y);
    }

    #[test]
    fn out_of_chart() {
        let c = JetChart::new(1, 1, 1).unwrap();
        let e = c.y(0, mi(&[2]));
        assert!(matches!(c.total_derivative(0, &e), Err(Error::UnknownSymbol(_))));
        assert!(matches!(c.total_derivative(0, &c.y(1, mi(&[0]))), Err(Error::UnknownSymbol(_))));
    }

    #[test]
    fn measured_order_sees_cancellation() {
        let c = JetChart::new(1, 1, 2).unwrap();
        let y2 = c.y(0, mi(&[2]));
        let e = &(&y2 + &c.y(0, mi(&[1]))).powu(2) - &(&y2 * &y2);
        // still depends on y_(2) through the cross term
        assert_eq!(c.measured_order(&e, CheckMode::Exact).unwrap(), 2);
        assert_eq!(c.measured_order(&e, CheckMode::probabilistic()).unwrap(), 2);
        let f = &(&y2 + &c.y(0, mi(&[1]))) - &y2;
        assert_eq!(c.measured_order(&f, CheckMode::Exact).unwrap(), 1);
        assert_eq!(c.measured_order(&f, CheckMode::probabilistic()).unwrap(), 1);
    }
}
