//! Seeded random polynomial objects for property suites.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::forms::{Basis, Form, Generator};
use crate::jetchart::JetChart;
use crate::multiindex::enumerate_up_to;
use crate::symexpr::{rational, ScalarExpr, Symbol};
use crate::varcalc::{GeneratingForm, Lagrangian};

/// Size knobs for random objects.
#[derive(Clone, Copy, Debug)]
pub struct Bounds {
    pub max_n: usize,
    pub max_m: usize,
    pub max_order: u32,
    pub max_degree: u32,
    pub max_terms: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_n: 3,
            max_m: 2,
            max_order: 2,
            max_degree: 3,
            max_terms: 3,
        }
    }
}

pub fn chart(rng: &mut ChaCha8Rng, b: &Bounds) -> JetChart {
    chart_in(rng, b, 0..=b.max_order)
}

/// Random chart with jet order drawn from `orders`.
pub fn chart_in(rng: &mut ChaCha8Rng, b: &Bounds, orders: RangeInclusive<u32>) -> JetChart {
    let n = rng.gen_range(1..=b.max_n);
    let m = rng.gen_range(1..=b.max_m);
    let r = rng.gen_range(orders);
    JetChart::new(n, m, r).expect("n, m ≥ 1")
}

/// Sum of up to `terms` monomials of degree `≤ degree` in `vars`, with
/// small nonzero integer coefficients.
pub fn polynomial(rng: &mut ChaCha8Rng, vars: &[Symbol], degree: u32, terms: usize) -> ScalarExpr {
    let k = rng.gen_range(1..=terms.max(1));
    ScalarExpr::sum((0..k).map(|_| {
        let mut c: i64 = rng.gen_range(-5..=5);
        if c == 0 {
            c = 1;
        }
        let d = rng.gen_range(0..=degree);
        let factors = (0..d).filter_map(|_| vars.choose(rng).cloned()).map(ScalarExpr::symbol);
        &ScalarExpr::constant(rational(c, 1)) * &ScalarExpr::product(factors)
    }))
}

/// Polynomial in the coordinates of `chart`.
pub fn coefficient(rng: &mut ChaCha8Rng, chart: &JetChart, b: &Bounds) -> ScalarExpr {
    polynomial(rng, &chart.coordinates(), b.max_degree, b.max_terms)
}

fn generators(chart: &JetChart, basis: Basis) -> Vec<Generator> {
    let mut out: Vec<Generator> = (0..chart.base_dim()).map(Generator::Dx).collect();
    for gamma in enumerate_up_to(chart.base_dim(), chart.order()) {
        for i in 0..chart.fiber_dim() {
            out.push(match basis {
                Basis::Raw => Generator::dy(i, gamma.clone()),
                Basis::Contact => Generator::theta(i, gamma.clone()),
            });
        }
    }
    out
}

/// A random `degree`-form with polynomial coefficients.
pub fn form(rng: &mut ChaCha8Rng, chart: &JetChart, basis: Basis, degree: usize, b: &Bounds) -> Result<Form> {
    let gens = generators(chart, basis);
    let k = rng.gen_range(1..=b.max_terms);
    let mut terms = Vec::new();
    for _ in 0..k {
        let mut pick: Vec<Generator> = gens.choose_multiple(rng, degree.min(gens.len())).cloned().collect();
        pick.sort();
        if pick.len() == degree {
            terms.push((pick, coefficient(rng, chart, b)));
        }
    }
    Form::from_terms(chart, degree, basis, terms)
}

/// A random form of random degree `≤ n + 1`.
pub fn any_form(rng: &mut ChaCha8Rng, chart: &JetChart, basis: Basis, b: &Bounds) -> Result<Form> {
    let degree = rng.gen_range(0..=chart.base_dim() + 1);
    form(rng, chart, basis, degree, b)
}

/// `α̃^γ_i` for `|γ| ≤ top`, a few nonzero entries.
pub fn generating_form(rng: &mut ChaCha8Rng, chart: &JetChart, top: u32, b: &Bounds) -> Result<GeneratingForm> {
    let keys: Vec<(usize, crate::MultiIndex)> = enumerate_up_to(chart.base_dim(), top)
        .into_iter()
        .flat_map(|g| (0..chart.fiber_dim()).map(move |i| (i, g.clone())))
        .collect();
    let mut coeffs = BTreeMap::new();
    let k = rng.gen_range(1..=b.max_terms);
    for key in keys.choose_multiple(rng, k) {
        coeffs.insert(key.clone(), coefficient(rng, chart, b));
    }
    // make sure the top order is present
    let top_keys: Vec<_> = keys.iter().filter(|(_, g)| g.order() == top).collect();
    if let Some(key) = top_keys.choose(rng) {
        coeffs.insert((*key).clone(), coefficient(rng, chart, b));
    }
    GeneratingForm::new(&chart.at_order(chart.order().max(top)), coeffs)
}

pub fn lagrangian(rng: &mut ChaCha8Rng, chart: &JetChart, b: &Bounds) -> Result<Lagrangian> {
    // a quadratic top-order term keeps E at full order
    let top = chart.jet_coordinates_of_order(chart.order());
    let mut l = coefficient(rng, chart, b);
    if let Some(s) = top.choose(rng) {
        let extra = polynomial(rng, &chart.coordinates(), b.max_degree.saturating_sub(2), 1);
        l = &l + &(&extra * &ScalarExpr::symbol(s.clone()).powu(2));
    }
    Lagrangian::new(chart, l)
}
