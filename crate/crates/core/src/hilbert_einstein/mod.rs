//! The Hilbert–Einstein Lagrangian on second-order jets of Lorentzian
//! metrics in four dimensions.
//!
//! Fiber coordinates are `g_{μν}` with `μ ≤ ν`, stored as fibers
//! `0..10` in the order `11, 12, 13, 14, 22, …, 44`. Signature is
//! `(−,+,+,+)` and `sqrtg` stands for `√(−det g)`.

pub mod numeric;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::forms::Form;
use crate::jetchart::JetChart;
use crate::multiindex::MultiIndex;
use crate::symexpr::{
    rational, CheckMode, EvalHook, Evaluator, FuncKey, FunctionDef, Point, PointSampler, Rational, Registry,
    ScalarExpr, Substitution, Symbol, UniformSampler,
};
use crate::varcalc::{
    canonical_poincare_cartan, euler_lagrange, generating_form_of_d, momentum_unique_order1, poincare_cartan, special_witness_check,
    EulerLagrangeForm, GeneratingForm, Lagrangian, Momentum, Report,
};
use numeric::{Mat, MetricJet};

pub const DIM: usize = 4;
pub const FAMILY: &str = "lorentz";

/// Fiber index of `g_{μν}` (either order).
pub fn fiber_of(mu: usize, nu: usize) -> usize {
    let (a, b) = if mu <= nu { (mu, nu) } else { (nu, mu) };
    // rows of the upper triangle: 4, 3, 2, 1 entries
    a * DIM - a * (a + 1) / 2 + b
}

/// `(μ, ν)` with `μ ≤ ν` of a fiber index.
pub fn pair_of(fiber: usize) -> (usize, usize) {
    let mut k = fiber;
    for a in 0..DIM {
        let row = DIM - a;
        if k < row {
            return (a, a + k);
        }
        k -= row;
    }
    panic!("fiber index {fiber} out of range")
}

/// Number of ordered pairs a stored component stands for.
pub fn multiplicity(fiber: usize) -> i64 {
    let (a, b) = pair_of(fiber);
    if a == b {
        1
    } else {
        2
    }
}

fn g_sym(mu: usize, nu: usize) -> Symbol {
    Symbol::jet(fiber_of(mu, nu), MultiIndex::zero(DIM))
}

fn ginv_key(a: usize, b: usize) -> FuncKey {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    FuncKey::new("ginv", &[a as u8, b as u8])
}

fn sqrtg_key() -> FuncKey {
    FuncKey::new("sqrtg", &[])
}

fn metric_from_args(args: &[Rational]) -> Mat {
    std::array::from_fn(|a| std::array::from_fn(|b| args[fiber_of(a, b)].clone()))
}

/// Registry with `ginv^{αβ}` and `sqrtg`, their derivative rules in the
/// `μ ≤ ν` storage and exact numeric hooks.
pub fn lorentz_registry() -> Result<Registry> {
    let args: Vec<Symbol> = (0..10).map(|f| Symbol::jet(f, MultiIndex::zero(DIM))).collect();
    let ginv = |a, b| ScalarExpr::func(ginv_key(a, b));
    let mut reg = Registry::new().with_sampler(Arc::new(LorentzSampler));
    for a in 0..DIM {
        for b in a..DIM {
            let mut rules = HashMap::new();
            for (f, s) in args.iter().enumerate() {
                let (mu, nu) = pair_of(f);
                // ∂g^{ab}/∂g_{μν} on symmetric storage
                let rule = if mu == nu {
                    -(&ginv(a, mu) * &ginv(nu, b))
                } else {
                    -(&(&ginv(a, mu) * &ginv(nu, b)) + &(&ginv(a, nu) * &ginv(mu, b)))
                };
                rules.insert(s.clone(), rule);
            }
            let hook: EvalHook = Arc::new(move |vals: &[Rational]| {
                let gi = numeric::inverse(&metric_from_args(vals))?;
                Ok(gi[a][b].clone())
            });
            reg.register(FunctionDef {
                key: ginv_key(a, b),
                args: args.clone(),
                rules,
                hook: Some(hook),
            })?;
        }
    }
    let mut rules = HashMap::new();
    for (f, s) in args.iter().enumerate() {
        let (mu, nu) = pair_of(f);
        let w = rational(multiplicity(f), 2);
        rules.insert(s.clone(), (&ScalarExpr::func(sqrtg_key()) * &ginv(mu, nu)).scale(&w));
    }
    let hook: EvalHook = Arc::new(|vals: &[Rational]| numeric::sqrt_minus_det(&metric_from_args(vals)));
    reg.register(FunctionDef {
        key: sqrtg_key(),
        args,
        rules,
        hook: Some(hook),
    })?;
    reg.set_family(FAMILY);
    Ok(reg)
}

/// Samples metrics `g = Aᵀ η A` with `A = 1 + P`, `P_{ij} ∈ {−1/8, 0, 1/8}`,
/// so that `√(−det g) = |det A|` is rational. Jet coordinates of order ≥ 1
/// are halves in `[−5, 5]`; small denominators keep exact evaluation cheap.
#[derive(Clone, Copy, Debug, Default)]
pub struct LorentzSampler;

impl LorentzSampler {
    pub fn metric(rng: &mut ChaCha8Rng) -> Mat {
        let a: Mat = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let p: i64 = rng.gen_range(-1..=1);
                let base = if i == j { Rational::one() } else { Rational::zero() };
                base + rational(p, 8)
            })
        });
        lorentz_from(&a)
    }

    pub fn small(rng: &mut ChaCha8Rng) -> Rational {
        rational(rng.gen_range(-10..=10), 2)
    }
}

/// `Aᵀ η A`.
pub fn lorentz_from(a: &Mat) -> Mat {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = Rational::zero();
            for k in 0..DIM {
                let t = &a[k][i] * &a[k][j];
                if k == 0 {
                    acc -= t;
                } else {
                    acc += t;
                }
            }
            acc
        })
    })
}

impl PointSampler for LorentzSampler {
    fn sample(&self, coords: &BTreeSet<Symbol>, rng: &mut ChaCha8Rng) -> Point {
        let mut point = Point::new();
        if coords.iter().any(|s| s.jet_order() == Some(0)) {
            let g = LorentzSampler::metric(rng);
            for a in 0..DIM {
                for b in a..DIM {
                    point.insert(g_sym(a, b), g[a][b].clone());
                }
            }
        }
        for s in coords {
            match s {
                Symbol::Jet { index, .. } if index.is_zero() => {}
                Symbol::Base(_) => {
                    point.insert(s.clone(), UniformSampler::draw(rng));
                }
                _ => {
                    point.insert(s.clone(), LorentzSampler::small(rng));
                }
            }
        }
        point
    }
}

/// The jet chart `J_2(Lor(X))` with its function symbols.
#[derive(Clone, Debug)]
pub struct MetricChart {
    chart: JetChart,
}

impl MetricChart {
    pub fn new() -> Result<MetricChart> {
        let base = (1..=DIM).map(|l| format!("x{l}")).collect();
        let fiber = (0..10)
            .map(|f| {
                let (a, b) = pair_of(f);
                format!("g{}{}", a + 1, b + 1)
            })
            .collect();
        let chart = JetChart::new(DIM, 10, 2)?
            .with_names(base, fiber)?
            .with_registry(lorentz_registry()?)?;
        Ok(MetricChart { chart })
    }

    pub fn chart(&self) -> &JetChart {
        &self.chart
    }

    /// `g_{μν}`.
    pub fn g(&self, mu: usize, nu: usize) -> ScalarExpr {
        ScalarExpr::symbol(g_sym(mu, nu))
    }

    /// `g_{μν,σ}`.
    pub fn dg(&self, mu: usize, nu: usize, s: usize) -> ScalarExpr {
        ScalarExpr::jet(fiber_of(mu, nu), MultiIndex::unit(DIM, s))
    }

    /// `g_{μν,σρ}`.
    pub fn ddg(&self, mu: usize, nu: usize, s: usize, r: usize) -> ScalarExpr {
        ScalarExpr::jet(fiber_of(mu, nu), MultiIndex::unit(DIM, s).incremented(r))
    }

    pub fn ginv(&self, a: usize, b: usize) -> ScalarExpr {
        ScalarExpr::func(ginv_key(a, b))
    }

    pub fn sqrtg(&self) -> ScalarExpr {
        ScalarExpr::func(sqrtg_key())
    }

    /// A sampled point with the metric built from `a` and the remaining
    /// coordinates of orders `1..=order` drawn from `rng`.
    pub fn sample_point(&self, order: u32, rng: &mut ChaCha8Rng) -> Point {
        let coords: BTreeSet<Symbol> = self.chart.at_order(order).coordinates().into_iter().collect();
        LorentzSampler.sample(&coords, rng)
    }

    /// Binds a metric jet; coordinates of orders 3 and 4 are set to zero.
    pub fn point_of(&self, jet: &MetricJet) -> Point {
        let mut p = Point::new();
        for l in 0..DIM {
            p.insert(Symbol::Base(l), Rational::zero());
        }
        for s in self.chart.at_order(4).coordinates() {
            if let Symbol::Jet { fiber, index } = &s {
                let (a, b) = pair_of(*fiber);
                let d = index.directions();
                let v = match d.as_slice() {
                    [] => jet.g[a][b].clone(),
                    [c] => jet.d1[a][b][*c].clone(),
                    [c, e] => jet.d2[a][b][*c][*e].clone(),
                    _ => Rational::zero(),
                };
                p.insert(s, v);
            }
        }
        p
    }

    /// Reads the metric jet of a point.
    pub fn jet_of(&self, p: &Point) -> Result<MetricJet> {
        let get = |e: ScalarExpr| -> Result<Rational> {
            let s = e.as_symbol().cloned().expect("coordinate");
            p.get(&s).cloned().ok_or_else(|| Error::Eval(format!("unbound symbol {s}")))
        };
        let mut jet = MetricJet {
            g: std::array::from_fn(|_| std::array::from_fn(|_| Rational::zero())),
            d1: std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| Rational::zero()))),
            d2: std::array::from_fn(|_| {
                std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| Rational::zero())))
            }),
        };
        for a in 0..DIM {
            for b in 0..DIM {
                jet.g[a][b] = get(self.g(a, b))?;
                for c in 0..DIM {
                    jet.d1[a][b][c] = get(self.dg(a, b, c))?;
                    for e in 0..DIM {
                        jet.d2[a][b][c][e] = get(self.ddg(a, b, c, e))?;
                    }
                }
            }
        }
        Ok(jet)
    }
}

/// Indexed table `Γ^μ_{αβ}` as `[μ][α][β]`.
pub type Christoffel = Vec<Vec<Vec<ScalarExpr>>>;

/// `Γ^μ_{αβ} = ½ g^{μσ}(g_{σα,β} + g_{σβ,α} − g_{αβ,σ})`.
pub fn christoffel(mc: &MetricChart) -> Christoffel {
    let half = rational(1, 2);
    (0..DIM)
        .map(|m| {
            (0..DIM)
                .map(|a| {
                    (0..DIM)
                        .map(|b| {
                            ScalarExpr::sum((0..DIM).map(|s| {
                                let first = &(&mc.dg(s, a, b) + &mc.dg(s, b, a)) - &mc.dg(a, b, s);
                                &mc.ginv(m, s) * &first
                            }))
                            .scale(&half)
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// `G^{αβεγ} = g^{αε}g^{βγ} + g^{αγ}g^{βε} − 2g^{αβ}g^{εγ}`, indexed by
/// `a * 64 + b * 16 + e * 4 + c`.
pub fn big_g(mc: &MetricChart) -> Vec<ScalarExpr> {
    let mut out = Vec::with_capacity(256);
    for i in 0..256 {
        let (a, b, e, c) = (i / 64, (i / 16) % 4, (i / 4) % 4, i % 4);
        let t = &(&(&mc.ginv(a, e) * &mc.ginv(b, c)) + &(&mc.ginv(a, c) * &mc.ginv(b, e)))
            - &(&mc.ginv(a, b) * &mc.ginv(e, c)).scale(&rational(2, 1));
        out.push(t);
    }
    out
}

fn gi(a: usize, b: usize, e: usize, c: usize) -> usize {
    a * 64 + b * 16 + e * 4 + c
}

/// `Q = G^{αβεγ} g_{μν} Γ^μ_{αβ} Γ^ν_{εγ}`.
fn quadratic_part(mc: &MetricChart, g4: &[ScalarExpr], gamma: &Christoffel) -> ScalarExpr {
    // lowered pairs g_{μν}Γ^μ_{αβ}Γ^ν_{εγ}, symmetric under (αβ) ↔ (εγ)
    let mut terms = Vec::new();
    for a in 0..DIM {
        for b in 0..DIM {
            for e in 0..DIM {
                for c in 0..DIM {
                    let gg = ScalarExpr::sum((0..DIM).flat_map(|m| {
                        (0..DIM).map(move |n| (m, n))
                    }).map(|(m, n)| ScalarExpr::product([mc.g(m, n), gamma[m][a][b].clone(), gamma[n][e][c].clone()])));
                    terms.push(&g4[gi(a, b, e, c)] * &gg);
                }
            }
        }
    }
    ScalarExpr::sum(terms)
}

/// All displayed objects of the Hilbert–Einstein example.
#[derive(Clone, Debug)]
pub struct HilbertEinstein {
    pub metric: MetricChart,
    pub christoffel: Christoffel,
    pub big_g: Vec<ScalarExpr>,
    /// `½ G^{αβεγ} g_{μν} Γ^μ_{αβ} Γ^ν_{εγ}`.
    pub quadratic: ScalarExpr,
    pub lagrangian: Lagrangian,
}

impl HilbertEinstein {
    pub fn new() -> Result<HilbertEinstein> {
        let mc = MetricChart::new()?;
        let gamma = christoffel(&mc);
        let g4 = big_g(&mc);
        let half = rational(1, 2);
        let quadratic = quadratic_part(&mc, &g4, &gamma).scale(&half);
        let mut linear = Vec::new();
        for a in 0..DIM {
            for b in 0..DIM {
                for e in 0..DIM {
                    for c in 0..DIM {
                        linear.push(&g4[gi(a, b, e, c)] * &mc.ddg(e, c, a, b));
                    }
                }
            }
        }
        let r = &ScalarExpr::sum(linear).scale(&half) + &quadratic;
        let density = &r * &mc.sqrtg();
        let lagrangian = Lagrangian::new(mc.chart(), density)?;
        Ok(HilbertEinstein {
            metric: mc,
            christoffel: gamma,
            big_g: g4,
            quadratic,
            lagrangian,
        })
    }

    /// The scalar `r` with `L_HE = r √g`.
    pub fn lagrangian_density(&self) -> &ScalarExpr {
        self.lagrangian.density()
    }

    /// The momentum of the display, on stored components: the coefficient of
    /// `θ_{μν} ∧ ω_λ` is `½√g ∂Q/∂g_{μν,λ} − ½ m_{μν} D_ρ(G^{λρμν}√g)` and
    /// that of `θ_{μν,ρ} ∧ ω_λ` is `½ m_{μν} G^{λρμν}√g`, where `m_{μν}`
    /// counts the ordered pairs a stored component stands for.
    pub fn momentum(&self) -> Result<Momentum> {
        let mc = &self.metric;
        let chart = mc.chart();
        let reg = chart.registry();
        let sqrtg = mc.sqrtg();
        let zero = MultiIndex::zero(DIM);
        let mut coeffs = BTreeMap::new();
        for f in 0..10 {
            let (mu, nu) = pair_of(f);
            let w = rational(multiplicity(f), 2);
            for l in 0..DIM {
                let dq = self.quadratic.partial(&Symbol::jet(f, MultiIndex::unit(DIM, l)), reg)?;
                let div = ScalarExpr::sum(
                    (0..DIM)
                        .map(|r| {
                            let t = &self.big_g[gi(l, r, mu, nu)] * &sqrtg;
                            Ok(chart.total_derivative(r, &t)?.value)
                        })
                        .collect::<Result<Vec<_>>>()?,
                );
                // quadratic already carries the ½
                let first = &(&dq * &sqrtg) - &div.scale(&w);
                coeffs.insert((f, zero.clone(), l), first);
                for r in 0..DIM {
                    let second = (&self.big_g[gi(l, r, mu, nu)] * &sqrtg).scale(&w);
                    coeffs.insert((f, MultiIndex::unit(DIM, r), l), second);
                }
            }
        }
        Momentum::new(chart, coeffs)
    }

    /// `θ_λ = λ + p` in the CONTACT basis, after checking the momentum
    /// contract in `mode`.
    pub fn poincare_cartan(&self, mode: CheckMode) -> Result<Form> {
        poincare_cartan(&self.lagrangian, &self.momentum()?, mode)
    }

    /// The Poincaré–Cartan form `theta` as a RAW form on `J_1`. The order-2
    /// coordinates cancel in the RAW basis; this is checked in `mode` and
    /// they are then dropped.
    pub fn witness(&self, theta: &Form, mode: CheckMode) -> Result<Form> {
        let theta = theta.to_raw_basis()?;
        let order = theta.measured_order(mode)?;
        if order > 1 {
            return Err(Error::Verification(format!(
                "the Poincaré–Cartan form has measured order {order} in the RAW basis"
            )));
        }
        let chart = self.metric.chart();
        let bindings: Substitution = chart
            .jet_coordinates_of_order(2)
            .into_iter()
            .map(|s| (s, ScalarExpr::zero()))
            .collect();
        theta
            .map_coefficients(|_, c| c.substitute(&bindings))?
            .on_chart(&chart.at_order(1))
    }

    pub fn euler_lagrange(&self) -> Result<EulerLagrangeForm> {
        euler_lagrange(&self.lagrangian)
    }
}

/// Numeric target for `E` on stored components:
/// `E_{(μν)} = −m_{μν} √g G^{μν}`.
pub fn einstein_target(jet: &MetricJet) -> Result<Vec<Rational>> {
    let c = jet.curvature()?;
    Ok((0..10)
        .map(|f| {
            let (a, b) = pair_of(f);
            -(&c.sqrtg * &c.einstein_upper[a][b]) * Rational::from_integer(multiplicity(f).into())
        })
        .collect())
}

/// Full symmetric `E^{μν}` from stored components.
pub fn unpack(stored: &[Rational]) -> Mat {
    std::array::from_fn(|a| {
        std::array::from_fn(|b| {
            let f = fiber_of(a, b);
            &stored[f] / Rational::from_integer(multiplicity(f).into())
        })
    })
}

pub fn evaluate(exprs: &[ScalarExpr], point: &Point, reg: &Registry) -> Result<Vec<Rational>> {
    let mut ev = Evaluator::new(point, reg);
    exprs.iter().map(|e| ev.eval(e)).collect()
}

fn mat_text(m: &Mat) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|r| format!("({})", r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")))
        .collect();
    format!("({})", rows.join(" "))
}

/// Runs every check of the example at `points` sampled jet points.
pub fn verify(points: usize, seed: u64) -> Result<Report> {
    let mode = CheckMode::Probabilistic { points, seed };
    let he = HilbertEinstein::new()?;
    let mc = &he.metric;
    let reg = mc.chart().registry();
    let mut report = Report::new("Hilbert–Einstein example", mode);
    report.measure("seed", seed).measure("points", points);

    // L_HE is linear in the second derivatives
    let second: Vec<Symbol> = mc.chart().jet_coordinates_of_order(2);
    let mut linear = Report::new("L_HE is linear in the second derivatives", mode);
    let l = he.lagrangian_density();
    let deg = l.weighted_degree_in(&second.iter().map(|s| (s.clone(), 1)).collect(), mode, reg)?;
    linear.measure("degree", format!("{deg:?}"));
    linear.require(deg == crate::symexpr::Degree::Polynomial(1));
    report.push(linear);

    let e = he.euler_lagrange()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut einstein = Report::new("E_HE = −√g G^{μν} (stored components)", mode);
    let mut scalar = Report::new("L_HE = s √g", mode);
    for k in 0..points {
        let point = mc.sample_point(4, &mut rng);
        let jet = mc.jet_of(&point)?;
        let curv = jet.curvature()?;
        let lv = evaluate(std::slice::from_ref(l), &point, reg)?;
        scalar.require(lv[0] == &curv.scalar * &curv.sqrtg);
        let got = evaluate(e.components(), &point, reg)?;
        let want = einstein_target(&jet)?;
        if got != want {
            let bad = got.iter().zip(&want).position(|(a, b)| a != b).unwrap_or(0);
            einstein.fail_with(crate::symexpr::Counterexample {
                index: bad,
                point: Some(point.iter().map(|(s, v)| (s.to_string(), v.to_string())).collect()),
                value: Some(format!("{} vs {}", got[bad], want[bad])),
            });
        }
        if k == 0 {
            let upper = unpack(&got);
            einstein.measure("E_upper_at_first_point", mat_text(&upper));
            let lowered: Mat = std::array::from_fn(|a| {
                std::array::from_fn(|b| {
                    let mut acc = Rational::zero();
                    for c in 0..DIM {
                        for d in 0..DIM {
                            acc += &jet.g[a][c] * &jet.g[b][d] * &upper[c][d];
                        }
                    }
                    acc
                })
            });
            einstein.measure("E_lower_at_first_point", mat_text(&lowered));
        }
    }
    report.push(scalar);
    report.push(einstein);

    let order = e.measured_order(mode)?;
    let mut ord = Report::new("measured jet order of E is 2", mode);
    ord.measure("measured_order", order);
    ord.require(order == 2);
    report.push(ord);

    let p = he.momentum()?;
    let (kolar, _) = canonical_poincare_cartan(&he.lagrangian)?;
    let diffs = momentum_difference(&p, &kolar);
    let mut same = Report::new("displayed momentum equals the Kolář momentum", mode);
    if let Some(cx) = crate::symexpr::all_zero(&diffs, mode, reg)? {
        same.fail_with(cx);
    }
    report.push(same);

    let theta = poincare_cartan(&he.lagrangian, &p, mode)?;
    let h = theta.horizontalize()?;
    report.push(Report::leaf(
        "h(θ_HE) = λ_HE",
        mode,
        h.sub(&he.lagrangian.form())?.is_zero(mode)?,
    ));

    let beta = he.witness(&theta, mode)?;
    report.push(Report::leaf(
        "θ_HE on J_1 witnesses λ_HE as special",
        mode,
        special_witness_check(&he.lagrangian, &beta, mode)?,
    ));

    let natural = natural_generating_form(&theta, mode)?;
    let mut zero_p = Report::new("momentum of h(dθ_HE) is zero", mode);
    match natural {
        Some(g) => {
            let p = momentum_unique_order1(&g)?;
            zero_p.require(p.is_zero(mode)?);
            let source = GeneratingForm::sub(&g, &e.as_generating_form());
            zero_p.measure("h(dθ_HE) equals E", source.is_zero(mode)?);
        }
        None => {
            zero_p.measure("contact order", "≥ 2");
            zero_p.require(false);
        }
    }
    report.push(zero_p);
    Ok(report)
}

fn momentum_difference(a: &Momentum, b: &Momentum) -> Vec<ScalarExpr> {
    let keys: BTreeSet<_> = a.coefficients().keys().chain(b.coefficients().keys()).cloned().collect();
    keys.into_iter()
        .map(|(i, g, l)| &a.coefficient(i, &g, l) - &b.coefficient(i, &g, l))
        .collect()
}

/// `h(dθ)` with coefficients of `θ` factors of order ≥ 2 dropped once they
/// are checked to vanish; `None` if they do not.
pub fn natural_generating_form(theta: &Form, mode: CheckMode) -> Result<Option<GeneratingForm>> {
    let g = generating_form_of_d(theta)?;
    let chart = g.chart().clone();
    let mut kept = BTreeMap::new();
    for ((i, gamma), c) in g.coefficients() {
        if gamma.order() >= 2 {
            if !crate::symexpr::is_zero(c, mode, chart.registry())? {
                return Ok(None);
            }
        } else {
            kept.insert((*i, gamma.clone()), c.clone());
        }
    }
    Ok(Some(GeneratingForm::new(&chart, kept)?))
}

/// Numeric covariance check of `E` under `x' = M x`:
/// `E'^{ab}(j') = |det J| M^a_μ M^b_ν E^{μν}(j)` with `J = M⁻¹`.
pub fn covariance_check(e: &EulerLagrangeForm, mc: &MetricChart, jet: &MetricJet, m: &Mat) -> Result<bool> {
    let reg = mc.chart().registry();
    let before = unpack(&evaluate(e.components(), &mc.point_of(jet), reg)?);
    let moved = jet.transformed(m)?;
    let after = unpack(&evaluate(e.components(), &mc.point_of(&moved), reg)?);
    let j = numeric::inverse(m)?;
    let det = numeric::determinant(&j);
    let det = if det < Rational::zero() { -det } else { det };
    for a in 0..DIM {
        for b in 0..DIM {
            let mut acc = Rational::zero();
            for p in 0..DIM {
                for q in 0..DIM {
                    acc += &m[a][p] * &m[b][q] * &before[p][q];
                }
            }
            if after[a][b] != &det * &acc {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn storage_indexing() {
        for f in 0..10 {
            let (a, b) = pair_of(f);
            assert_eq!(fiber_of(a, b), f);
            assert_eq!(fiber_of(b, a), f);
        }
        assert_eq!(pair_of(4), (1, 1));
    }

    #[test]
    fn minkowski_sqrtg_is_one() {
        let mc = MetricChart::new().unwrap();
        let mut p = Point::new();
        for a in 0..DIM {
            for b in a..DIM {
                let v = match (a, b) {
                    (0, 0) => rational(-1, 1),
                    (a, b) if a == b => rational(1, 1),
                    _ => rational(0, 1),
                };
                p.insert(g_sym(a, b), v);
            }
        }
        let reg = mc.chart().registry();
        assert_eq!(mc.sqrtg().eval_at(&p, reg).unwrap(), rational(1, 1));
        assert_eq!(mc.ginv(0, 0).eval_at(&p, reg).unwrap(), rational(-1, 1));
    }

    #[test]
    fn christoffel_symmetric_and_matches_oracle() {
        let mc = MetricChart::new().unwrap();
        let gamma = christoffel(&mc);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = mc.sample_point(2, &mut rng);
        let curv = mc.jet_of(&p).unwrap().curvature().unwrap();
        let reg = mc.chart().registry();
        for m in 0..DIM {
            for a in 0..DIM {
                for b in 0..DIM {
                    assert_eq!(gamma[m][a][b], gamma[m][b][a]);
                    assert_eq!(gamma[m][a][b].eval_at(&p, reg).unwrap(), curv.christoffel[m][a][b]);
                }
            }
        }
    }

    #[test]
    fn big_g_symmetries() {
        let mc = MetricChart::new().unwrap();
        let g4 = big_g(&mc);
        for a in 0..DIM {
            for b in 0..DIM {
                for e in 0..DIM {
                    for c in 0..DIM {
                        let x = &g4[gi(a, b, e, c)];
                        for y in [gi(b, a, e, c), gi(a, b, c, e), gi(e, c, a, b)] {
                            assert!((x - &g4[y]).normal_form().is_zero());
                        }
                    }
                }
            }
        }
    }
}
