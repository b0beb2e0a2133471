//! Named randomized property suites. Each returns a [`Report`] tree: one
//! child per invariant, with the number of cases, the seed, and on failure
//! the first counterexample together with the offending input.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::forms::{Basis, Form, Generator};
use crate::hilbert_einstein;
use crate::jetchart::JetChart;
use crate::multiindex::{enumerate_up_to, MultiIndex};
use crate::random::{self, Bounds};
use crate::symexpr::{rational, CheckMode, Counterexample, Degree, ScalarExpr, Substitution, Symbol};
use crate::text::{self, NamedChart};
use crate::varcalc::{
    canonical_poincare_cartan, euler_lagrange, generating_form, kolar_decompose,
    momentum_relation_check, momentum_unique_order1, morphism_p, morphism_s, poincare_cartan_check,
    reconstruct, source_part, special_el_structure_check, special_witness_check,
    special_witness_search, uniqueness_kernel, GeneratingForm, Lagrangian, Momentum, MomentumAnsatz,
    Report,
};

pub const SUITES: &[&str] = &[
    "d-squared",
    "split",
    "kolar",
    "euler-lagrange",
    "special",
    "structure",
    "uniqueness-1",
    "uniqueness-2",
    "uniqueness-curve",
    "special-counterexample",
    "poincare-cartan",
    "round-trip",
    "he",
    "all",
];

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Overrides the per-suite default number of random cases.
    pub cases: Option<usize>,
    /// Jet points for the Hilbert–Einstein suite.
    pub points: usize,
    pub mode: CheckMode,
    pub bounds: Bounds,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: crate::symexpr::DEFAULT_SEED,
            cases: None,
            points: 5,
            mode: CheckMode::Exact,
            bounds: Bounds::default(),
        }
    }
}

impl SuiteConfig {
    fn cases(&self, default: usize) -> usize {
        self.cases.unwrap_or(default)
    }

    /// Case `k` draws from stream `k` of the suite seed.
    fn rng(&self, case: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(case as u64);
        rng
    }
}

pub fn run(name: &str, cfg: &SuiteConfig) -> Result<Report> {
    match name {
        "d-squared" => d_squared(cfg),
        "split" => split(cfg),
        "kolar" => kolar(cfg),
        "euler-lagrange" => euler_lagrange_suite(cfg),
        "special" => special(cfg),
        "structure" => structure(cfg),
        "uniqueness-1" => uniqueness_one(cfg),
        "uniqueness-2" => uniqueness_two(cfg),
        "uniqueness-curve" => uniqueness_curve(cfg),
        "special-counterexample" => special_counterexample(cfg),
        "poincare-cartan" => poincare_cartan(cfg),
        "round-trip" => round_trip(cfg),
        "he" => hilbert_einstein::verify(cfg.points, cfg.seed),
        "all" => {
            let mut root = Report::new("all suites", cfg.mode);
            root.measure("seed", cfg.seed);
            for s in SUITES.iter().filter(|s| **s != "all") {
                root.push(run(s, cfg)?);
            }
            Ok(root)
        }
        other => Err(Error::Domain(format!(
            "unknown suite {other}; known suites: {}",
            SUITES.join(", ")
        ))),
    }
}

/// One invariant checked over many cases.
struct Invariant {
    report: Report,
    cases: usize,
}

impl Invariant {
    fn new(claim: &str, cfg: &SuiteConfig) -> Invariant {
        Invariant {
            report: Report::new(claim, cfg.mode),
            cases: 0,
        }
    }

    fn fail(&mut self, case: usize, input: impl FnOnce() -> String, cx: Option<Counterexample>) {
        if self.report.passed() {
            self.report.measure("failing_case", case).measure("input", input());
            match cx {
                Some(cx) => {
                    self.report.fail_with(cx);
                }
                None => {
                    self.report.require(false);
                }
            }
        }
    }

    /// Records a case whose outcome is `ok`.
    fn check(&mut self, case: usize, ok: bool, input: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail(case, input, None);
        }
    }

    /// Records a case that passes when `f` vanishes.
    fn zero(&mut self, case: usize, f: &Form, mode: CheckMode, input: impl FnOnce() -> String) -> Result<()> {
        self.cases += 1;
        if let Some((gens, cx)) = f.find_nonzero(mode)? {
            let g: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
            self.fail(case, input, Some(cx));
            self.report.measure("nonzero_term", g.join(" ∧ "));
        }
        Ok(())
    }

    fn zero_g(&mut self, case: usize, g: &GeneratingForm, mode: CheckMode, input: impl FnOnce() -> String) -> Result<()> {
        self.zero(case, &g.to_form(), mode, input)
    }

    fn finish(mut self) -> Report {
        self.report.measure("cases", self.cases);
        self.report
    }
}

fn suite(claim: &str, cfg: &SuiteConfig, invariants: Vec<Invariant>) -> Report {
    let mut root = Report::new(claim, cfg.mode);
    root.measure("seed", cfg.seed);
    for inv in invariants {
        root.push(inv.finish());
    }
    root
}

fn show(f: &Form) -> String {
    text::write_form("random", f)
}

fn random_degree(rng: &mut ChaCha8Rng, chart: &JetChart, max: usize) -> usize {
    rng.gen_range(0..=max.min(chart.base_dim() + 1))
}

pub fn d_squared(cfg: &SuiteConfig) -> Result<Report> {
    let b = &cfg.bounds;
    let mode = cfg.mode;
    let mut dd = Invariant::new("d∘d = 0", cfg);
    let mut hh = Invariant::new("d_H∘d_H = 0", cfg);
    let mut vv = Invariant::new("d_V∘d_V = 0", cfg);
    let mut hv = Invariant::new("d_H∘d_V + d_V∘d_H = 0", cfg);
    let mut pull = Invariant::new("d = d_H + d_V after pullback", cfg);
    for case in 0..cfg.cases(200) {
        let mut rng = cfg.rng(case);
        let chart = random::chart(&mut rng, b);
        let n = chart.base_dim();
        let deg = random_degree(&mut rng, &chart, n);
        let raw = random::form(&mut rng, &chart, Basis::Raw, deg, b)?;
        dd.zero(case, &raw.exterior_d()?.exterior_d()?, mode, || show(&raw))?;
        let c = random::form(&mut rng, &chart, Basis::Contact, deg, b)?;
        hh.zero(case, &c.d_h()?.d_h()?, mode, || show(&c))?;
        vv.zero(case, &c.d_v()?.d_v()?, mode, || show(&c))?;
        hv.zero(case, &c.d_v()?.d_h()?.add(&c.d_h()?.d_v()?)?, mode, || show(&c))?;
        let pulled = raw.to_contact_basis()?;
        let lhs = raw.exterior_d()?.to_contact_basis()?;
        let rhs = pulled.d_h()?.add(&pulled.d_v()?)?;
        pull.zero(case, &lhs.sub(&rhs)?, mode, || show(&raw))?;
    }
    Ok(suite("cochain identities", cfg, vec![dd, hh, vv, hv, pull]))
}

/// `y^i_γ ↦ ∂^γ σ^i` for `|γ| ≤ order`.
fn section_bindings(chart: &JetChart, sigma: &[ScalarExpr], order: u32) -> Result<Substitution> {
    let reg = chart.registry();
    let mut out = Substitution::new();
    for (i, s) in sigma.iter().enumerate() {
        for gamma in enumerate_up_to(chart.base_dim(), order) {
            let mut d = s.clone();
            for l in gamma.directions() {
                d = d.partial(&Symbol::Base(l), reg)?;
            }
            out.insert(Symbol::jet(i, gamma), d);
        }
    }
    Ok(out)
}

/// Pullback of a RAW form along the prolongation of a section.
fn pullback(form: &Form, sigma: &[ScalarExpr], bindings: &Substitution) -> Result<Form> {
    let form = form.to_raw_basis()?;
    let chart = form.chart().at_order(0);
    let n = chart.base_dim();
    let reg = chart.registry();
    let derivative = |i: usize, gamma: &MultiIndex| -> Result<ScalarExpr> {
        let mut d = sigma[i].clone();
        for l in gamma.directions() {
            d = d.partial(&Symbol::Base(l), reg)?;
        }
        Ok(d)
    };
    let mut terms = Vec::new();
    for (gens, c) in form.terms() {
        let mut partial = vec![(Vec::new(), c.substitute(bindings)?)];
        for g in gens {
            let choices: Vec<(usize, ScalarExpr)> = match g {
                Generator::Dx(l) => vec![(*l, ScalarExpr::one())],
                Generator::Dy { fiber, index } => (0..n)
                    .map(|l| Ok((l, derivative(*fiber, &index.incremented(l))?)))
                    .collect::<Result<_>>()?,
                Generator::Theta { .. } => unreachable!("RAW basis"),
            };
            let mut next = Vec::new();
            for (pg, pc) in &partial {
                for (l, w) in &choices {
                    let mut g2: Vec<Generator> = pg.clone();
                    g2.push(Generator::Dx(*l));
                    next.push((g2, pc * w));
                }
            }
            partial = next;
        }
        terms.extend(partial);
    }
    Form::from_terms(&chart, form.degree(), Basis::Raw, terms)
}

pub fn split(cfg: &SuiteConfig) -> Result<Report> {
    let b = &cfg.bounds;
    let mode = cfg.mode;
    let mut sum = Invariant::new("contact_split components sum to the pullback", cfg);
    let mut idem = Invariant::new("h∘h = h", cfg);
    let mut hv = Invariant::new("h∘v = 0", cfg);
    let mut degree = Invariant::new("h(α) has degree ≤ k in the order-(r+1) coordinates", cfg);
    let mut section = Invariant::new("pullback along j_rσ of α equals pullback along j_{r+1}σ of h(α)", cfg);
    for case in 0..cfg.cases(200) {
        let mut rng = cfg.rng(case);
        let chart = random::chart(&mut rng, b);
        let n = chart.base_dim();
        let k = random_degree(&mut rng, &chart, n);
        let alpha = random::form(&mut rng, &chart, Basis::Raw, k, b)?;
        let parts = alpha.contact_split()?;
        let total = Form::sum(parts[0].chart(), k, Basis::Contact, &parts)?;
        sum.zero(case, &total.sub(&alpha.to_contact_basis()?)?, mode, || show(&alpha))?;
        let h = alpha.horizontalize()?;
        idem.zero(case, &h.horizontalize()?.sub(&h)?, mode, || show(&alpha))?;
        hv.zero(case, &alpha.verticalize()?.horizontalize()?, mode, || show(&alpha))?;
        let top = chart.prolong().jet_coordinates_of_order(chart.order() + 1);
        let ok = h.terms().all(|(_, c)| match c.polynomial_degree_in(&top) {
            Degree::Polynomial(d) => d as usize <= k,
            Degree::NotPolynomial => false,
        });
        degree.check(case, ok, || show(&alpha));
        let xs: Vec<Symbol> = (0..n).map(Symbol::Base).collect();
        let sigma: Vec<ScalarExpr> = (0..chart.fiber_dim())
            .map(|_| random::polynomial(&mut rng, &xs, b.max_degree + 1, b.max_terms + 1))
            .collect();
        let bindings = section_bindings(&chart, &sigma, chart.order() + 1)?;
        let lhs = pullback(&alpha, &sigma, &bindings)?;
        let rhs = pullback(&h, &sigma, &bindings)?;
        section.zero(case, &lhs.sub(&rhs)?, mode, || show(&alpha))?;
    }
    Ok(suite("splitting consistency", cfg, vec![sum, idem, hv, degree, section]))
}

/// Symmetric reading of the displayed order-two momentum:
/// `(α̃^λ − D_μ α̃^{μλ}) θ ∧ ω_λ + α̃^{μλ} θ_μ ∧ ω_λ` where `α̃^{μλ}` is the
/// symmetric tensor with `Σ_{μλ} α̃^{μλ} θ_{μλ} = Σ_{|γ|=2} α̃^γ θ_γ`.
pub fn uniqueness_two_momentum(g: &GeneratingForm) -> Result<Momentum> {
    let chart = g.chart();
    let n = chart.base_dim();
    let out = chart.at_order(chart.order() + 1);
    let zero = MultiIndex::zero(n);
    let mut coeffs: BTreeMap<(usize, MultiIndex, usize), Vec<ScalarExpr>> = BTreeMap::new();
    for i in 0..chart.fiber_dim() {
        for l in 0..n {
            let mut first = vec![g.coefficient(i, &MultiIndex::unit(n, l))];
            for mu in 0..n {
                let gamma = MultiIndex::unit(n, mu).incremented(l);
                let w = if mu == l { rational(1, 1) } else { rational(1, 2) };
                let s = g.coefficient(i, &gamma).scale(&w);
                first.push(-chart.total_derivative(mu, &s)?.value);
                coeffs.entry((i, MultiIndex::unit(n, mu), l)).or_default().push(s);
            }
            coeffs.entry((i, zero.clone(), l)).or_default().extend(first);
        }
    }
    Momentum::new(
        &out,
        coeffs
            .into_iter()
            .map(|(k, v)| (k, ScalarExpr::sum(v)))
            .filter(|(_, c)| !c.is_literal_zero())
            .collect(),
    )
}

fn momentum_diff(a: &Momentum, b: &Momentum) -> Result<Form> {
    a.to_form().sub(&b.to_form())
}

fn show_g(g: &GeneratingForm) -> String {
    show(&g.to_form())
}

pub fn kolar(cfg: &SuiteConfig) -> Result<Report> {
    let b = Bounds {
        max_order: 1,
        ..cfg.bounds
    };
    let mode = cfg.mode;
    let mut rec = Invariant::new("E − d_H p = g on random generating forms of order ≤ 3", cfg);
    let mut rec_h = Invariant::new("E − d_H p = h(α) for random (n+1)-forms α", cfg);
    let mut uniq = Invariant::new("E agrees with the momentum-free source part", cfg);
    let mut one = Invariant::new("order ≤ 1: p = α̃^λ θ ∧ ω_λ", cfg);
    let mut two = Invariant::new("order 2: s(p) = 0 and p matches the displayed momentum", cfg);
    for case in 0..cfg.cases(50) {
        let mut rng = cfg.rng(case);
        let chart = random::chart(&mut rng, &b);
        let top = rng.gen_range(0..=3);
        let g = random::generating_form(&mut rng, &chart, top, &b)?;
        let (e, p) = kolar_decompose(&g)?;
        rec.zero_g(case, &reconstruct(&e, &p)?.sub(&g), mode, || show_g(&g))?;
        uniq.check(case, e.equivalent(&source_part(&g)?, mode)?, || show_g(&g));
        if top <= 1 {
            let q = morphism_p(&g)?;
            one.zero(case, &momentum_diff(&momentum_unique_order1(&g)?, &q)?, mode, || show_g(&g))?;
        }
        if top == 2 && chart.base_dim() >= 2 {
            let s_ok = morphism_s(&p)?.is_zero(mode)?;
            let d = momentum_diff(&p, &uniqueness_two_momentum(&g)?)?;
            two.check(case, s_ok && d.is_zero(mode)?, || show_g(&g));
        }
        let n = chart.base_dim();
        let alpha = random::form(&mut rng, &chart, Basis::Contact, n + 1, &b)?;
        let ga = generating_form(&alpha)?;
        let (e, p) = kolar_decompose(&ga)?;
        rec_h.zero(case, &reconstruct(&e, &p)?.to_form().sub(&alpha.contact_component(1)?)?, mode, || show(&alpha))?;
    }
    Ok(suite("Kolář decomposition", cfg, vec![rec, rec_h, uniq, one, two]))
}

/// `λ = d_H ρ` for a random horizontal `(n−1)`-form `ρ` on `J_{r−1}`.
fn exact_lagrangian(rng: &mut ChaCha8Rng, b: &Bounds) -> Result<(Form, Lagrangian)> {
    let chart = random::chart_in(rng, b, 0..=1);
    let n = chart.base_dim();
    let mut parts = Vec::new();
    for l in 0..n {
        let f = random::coefficient(rng, &chart, b);
        parts.push(Form::omega(&chart, Basis::Contact, &[l])?.scale(&f));
    }
    let rho = Form::sum(&chart, n - 1, Basis::Contact, &parts)?;
    let lam = Lagrangian::from_form(&rho.d_h()?)?;
    Ok((rho, lam))
}

pub fn euler_lagrange_suite(cfg: &SuiteConfig) -> Result<Report> {
    let b = &cfg.bounds;
    let mode = cfg.mode;
    let mut trivial = Invariant::new("E(d_H ρ) = 0", cfg);
    let mut strategies = Invariant::new("E from Kolář equals E from the direct sum", cfg);
    for case in 0..cfg.cases(50) {
        let mut rng = cfg.rng(case);
        let (rho, lam) = exact_lagrangian(&mut rng, b)?;
        let e = euler_lagrange(&lam)?;
        trivial.zero(case, &e.to_form(), mode, || show(&rho))?;
        let chart = random::chart_in(&mut rng, b, 1..=2);
        let l = random::lagrangian(&mut rng, &chart, b)?;
        let g = crate::varcalc::generating_form_of_lagrangian(&l)?;
        let (e1, _) = kolar_decompose(&g)?;
        strategies.check(case, e1.equivalent(&euler_lagrange(&l)?, mode)?, || {
            text::write_lagrangian("random", &l)
        });
    }
    let mut particle = Invariant::new("E(½ y_(1)²) = −y_(2)", cfg);
    let c = JetChart::new(1, 1, 1)?;
    let l = Lagrangian::new(&c, c.y(0, MultiIndex::new(vec![1])).powu(2).scale(&rational(1, 2)))?;
    let e = euler_lagrange(&l)?;
    let expected = -c.y(0, MultiIndex::new(vec![2]));
    particle.check(0, (&e.components()[0] - &expected).normal_form().is_zero(), || {
        text::write_lagrangian("mechanics", &l)
    });
    Ok(suite("Euler–Lagrange operator", cfg, vec![trivial, strategies, particle]))
}

/// A special Lagrangian `h(β)` with its RAW witness `β` on `J_{r−1}`.
fn special_case(rng: &mut ChaCha8Rng, b: &Bounds) -> Result<(Form, Lagrangian)> {
    let chart = random::chart_in(rng, b, 0..=1);
    let n = chart.base_dim();
    let beta = random::form(rng, &chart, Basis::Raw, n, b)?;
    let lam = Lagrangian::from_form(&beta.horizontalize()?)?;
    Ok((beta, lam))
}

pub fn special(cfg: &SuiteConfig) -> Result<Report> {
    let b = Bounds {
        max_terms: 2,
        ..cfg.bounds
    };
    let mode = cfg.mode;
    let mut witness = Invariant::new("h(β) = λ", cfg);
    let mut euler = Invariant::new("E from h(dβ) equals E(λ)", cfg);
    let mut structure = Invariant::new("E on J_{2r−1}, degree ≤ n+1 in order r+1", cfg);
    let mut relation = Invariant::new("h(dβ) = h(d_H v(β)) + d_V λ", cfg);
    for case in 0..cfg.cases(20) {
        let mut rng = cfg.rng(case);
        let (beta, lam) = special_case(&mut rng, &b)?;
        witness.check(case, special_witness_check(&lam, &beta, mode)?, || show(&beta));
        let (e1, _) = kolar_decompose(&generating_form(&beta.exterior_d()?)?)?;
        euler.check(case, e1.equivalent(&euler_lagrange(&lam)?, mode)?, || show(&beta));
        let s = special_el_structure_check(&lam, Some(&beta), mode)?;
        structure.check(case, s.passed(), || show(&beta));
        let r = momentum_relation_check(&lam, &beta, mode)?;
        relation.check(case, r.passed(), || show(&beta));
    }
    Ok(suite("special Lagrangians", cfg, vec![witness, euler, structure, relation]))
}

pub fn structure(cfg: &SuiteConfig) -> Result<Report> {
    let b = Bounds {
        max_terms: 2,
        ..cfg.bounds
    };
    let mode = cfg.mode;
    let mut general = Invariant::new("general λ of order r: E on J_{2r}, weighted degree ≤ r", cfg);
    let mut orders = BTreeMap::new();
    for case in 0..cfg.cases(20) {
        let mut rng = cfg.rng(case);
        let chart = random::chart_in(&mut rng, &b, 1..=2);
        let l = random::lagrangian(&mut rng, &chart, &b)?;
        let s = special_el_structure_check(&l, None, mode)?;
        if let Some(o) = s.measured.get("measured_order") {
            *orders.entry(format!("r={} measured={o}", l.order())).or_insert(0) += 1;
        }
        general.check(case, s.passed(), || text::write_lagrangian("random", &l));
    }
    for (k, v) in orders {
        general.report.measure(&k, v);
    }
    Ok(suite("Euler–Lagrange structure bounds", cfg, vec![general]))
}

fn kernel_child(claim: &str, cfg: &SuiteConfig, n: usize, m: usize, order: u32, ansatz: MomentumAnsatz, want_zero: bool) -> Result<Report> {
    let rep = uniqueness_kernel(n, m, order, 3, ansatz)?;
    let mut r = Report::new(claim, cfg.mode);
    r.measure("n", n)
        .measure("m", m)
        .measure("coefficient_order", order)
        .measure("degree", rep.degree)
        .measure("unknowns", rep.unknowns)
        .measure("equations", rep.equations)
        .measure("rank", rep.rank)
        .measure("kernel_dim", rep.kernel_dim);
    r.require((rep.kernel_dim == 0) == want_zero);
    Ok(r)
}

pub fn uniqueness_one(cfg: &SuiteConfig) -> Result<Report> {
    let mut root = Report::new("Uniqueness I", cfg.mode);
    root.measure("seed", cfg.seed);
    for (n, m, order) in [(2, 1, 2), (3, 1, 1), (2, 2, 1)] {
        root.push(kernel_child("d_H q = 0 forces q = 0 for q = q^λ θ ∧ ω_λ", cfg, n, m, order, MomentumAnsatz::OrderOne, true)?);
    }
    let b = Bounds {
        max_order: 1,
        ..cfg.bounds
    };
    let mut formula = Invariant::new("momentum of an order-1 generating form is α̃^λ θ ∧ ω_λ", cfg);
    for case in 0..cfg.cases(20) {
        let mut rng = cfg.rng(case);
        let chart = random::chart(&mut rng, &b);
        let g = random::generating_form(&mut rng, &chart, 1, &b)?;
        let d = momentum_diff(&momentum_unique_order1(&g)?, &morphism_p(&g)?)?;
        formula.zero(case, &d, cfg.mode, || show_g(&g))?;
    }
    root.push(formula.finish());
    Ok(root)
}

pub fn uniqueness_two(cfg: &SuiteConfig) -> Result<Report> {
    let mut root = Report::new("Uniqueness II", cfg.mode);
    root.measure("seed", cfg.seed);
    for (n, m, order) in [(2, 1, 1), (3, 1, 1)] {
        root.push(kernel_child(
            "d_H q = 0 and s(q) = 0 force q = 0",
            cfg,
            n,
            m,
            order,
            MomentumAnsatz::OrderTwo { symmetric: true },
            true,
        )?);
        root.push(kernel_child(
            "without s(q) = 0 the kernel is nontrivial",
            cfg,
            n,
            m,
            order,
            MomentumAnsatz::OrderTwo { symmetric: false },
            false,
        )?);
    }
    let b = Bounds {
        max_order: 1,
        ..cfg.bounds
    };
    let mut formula = Invariant::new("Kolář momentum has s(p) = 0 and matches the displayed formula", cfg);
    for case in 0..cfg.cases(20) {
        let mut rng = cfg.rng(case);
        let mut chart = random::chart(&mut rng, &b);
        if chart.base_dim() < 2 {
            chart = JetChart::new(2, chart.fiber_dim(), chart.order())?;
        }
        let g = random::generating_form(&mut rng, &chart, 2, &b)?;
        let (_, p) = kolar_decompose(&g)?;
        let ok = morphism_s(&p)?.is_zero(cfg.mode)?
            && momentum_diff(&p, &uniqueness_two_momentum(&g)?)?.is_zero(cfg.mode)?;
        formula.check(case, ok, || show_g(&g));
    }
    root.push(formula.finish());
    Ok(root)
}

pub fn uniqueness_curve(cfg: &SuiteConfig) -> Result<Report> {
    let mut root = Report::new("n = 1: momenta are unique", cfg.mode);
    for (m, top) in [(1, 2), (2, 2), (1, 3)] {
        root.push(kernel_child("d_H q = 0 forces q = 0", cfg, 1, m, top, MomentumAnsatz::Curve { top }, true)?);
    }
    Ok(root)
}

pub fn special_counterexample(cfg: &SuiteConfig) -> Result<Report> {
    let mut root = Report::new("(y_(1,0))² is not special", cfg.mode);
    let chart = JetChart::new(2, 1, 1)?;
    let l = Lagrangian::new(&chart, chart.y(0, MultiIndex::new(vec![1, 0])).powu(2))?;
    let search = special_witness_search(&l, 3)?;
    let mut none = Report::new("no witness among RAW 2-forms on J_0 with cubic coefficients", cfg.mode);
    none.measure("unknowns", search.unknowns).measure("equations", search.equations);
    none.require(search.witness.is_none());
    root.push(none);
    let control = Lagrangian::new(&chart, &chart.x(0) * &chart.y(0, MultiIndex::new(vec![0, 1])))?;
    let found = special_witness_search(&control, 3)?;
    let mut pos = Report::new("control x¹ y_(0,1) has a witness", cfg.mode);
    let ok = match &found.witness {
        Some(beta) => special_witness_check(&control, beta, cfg.mode)?,
        None => false,
    };
    pos.require(ok);
    root.push(pos);
    Ok(root)
}

/// A form with contact degree two when `n ≥ 2`, otherwise `f θ^i_γ`.
fn perturbation(rng: &mut ChaCha8Rng, chart: &JetChart, b: &Bounds) -> Result<Form> {
    let n = chart.base_dim();
    let mut thetas = Vec::new();
    for gamma in enumerate_up_to(n, chart.order().saturating_sub(1)) {
        for i in 0..chart.fiber_dim() {
            thetas.push(Generator::theta(i, gamma.clone()));
        }
    }
    let f = random::coefficient(rng, chart, b);
    let f = if f.normal_form().is_zero() { ScalarExpr::one() } else { f };
    if n >= 2 && thetas.len() >= 2 {
        let mut gens: Vec<Generator> = thetas.choose_multiple(rng, 2).cloned().collect();
        let mut dirs: Vec<usize> = (0..n).collect();
        dirs.shuffle(rng);
        gens.extend(dirs[..n - 2].iter().map(|l| Generator::Dx(*l)));
        Form::term(chart, Basis::Contact, f, gens)
    } else {
        let th = thetas.choose(rng).cloned().expect("m ≥ 1");
        let mut gens = vec![th];
        gens.extend((1..n).map(Generator::Dx));
        Form::term(chart, Basis::Contact, f, gens)
    }
}

pub fn poincare_cartan(cfg: &SuiteConfig) -> Result<Report> {
    let b = Bounds {
        max_terms: 2,
        ..cfg.bounds
    };
    let mode = cfg.mode;
    let mut pos = Invariant::new("θ_λ satisfies all three conditions", cfg);
    let mut neg = Invariant::new("a perturbed θ_λ fails at least one condition", cfg);
    for case in 0..cfg.cases(20) {
        let mut rng = cfg.rng(case);
        let chart = random::chart_in(&mut rng, &b, 1..=2);
        let l = random::lagrangian(&mut rng, &chart, &b)?;
        let (_, theta) = canonical_poincare_cartan(&l)?;
        let rep = poincare_cartan_check(&l, &theta, mode)?;
        pos.check(case, rep.all(), || text::write_lagrangian("random", &l));
        let delta = perturbation(&mut rng, theta.chart(), &b)?;
        let bad = theta.add(&delta)?;
        let rep = poincare_cartan_check(&l, &bad, mode)?;
        neg.check(case, !rep.all(), || show(&delta));
    }
    Ok(suite("Poincaré–Cartan characterization", cfg, vec![pos, neg]))
}

pub fn round_trip(cfg: &SuiteConfig) -> Result<Report> {
    let b = &cfg.bounds;
    let mut charts = Invariant::new("read_chart ∘ write_chart = id", cfg);
    let mut forms = Invariant::new("read_form ∘ write_form = id", cfg);
    let mut exprs = Invariant::new("read_expr ∘ write_expr = id", cfg);
    for case in 0..cfg.cases(50) {
        let mut rng = cfg.rng(case);
        let chart = random::chart(&mut rng, b);
        let named = NamedChart {
            name: format!("c{case}"),
            chart: chart.clone(),
        };
        let src = text::write_chart(&named);
        let back = text::read_chart(&src)?;
        charts.check(
            case,
            back.name == named.name && back.chart.same_bundle(&chart) && back.chart.order() == chart.order(),
            || src.clone(),
        );
        let basis = if rng.gen_bool(0.5) { Basis::Raw } else { Basis::Contact };
        let f = random::any_form(&mut rng, &chart, basis, b)?;
        let src = text::write_form(&named.name, &f);
        let g = text::read_form(&src, &named)?;
        let same = g.basis() == f.basis() && g.degree() == f.degree() && g.terms().eq(f.terms());
        forms.check(case, same, || src.clone());
        let e = random::coefficient(&mut rng, &chart, b);
        let src = text::write_expr(&named.name, &e);
        exprs.check(case, text::read_expr(&src, &named)? == e, || src.clone());
    }
    Ok(suite("text round trips", cfg, vec![charts, forms, exprs]))
}
