//! Closed-form coordinate expressions, rebuilt term by term with explicit
//! generator lists and signs, compared against the library.
#![allow(dead_code)]

use std::collections::BTreeMap;

use jetvar_core::forms::{Basis, Form, Generator};
use jetvar_core::jetchart::JetChart;
use jetvar_core::multiindex::enumerate_up_to;
use jetvar_core::random::{self, Bounds};
use jetvar_core::symexpr::rational;
use jetvar_core::varcalc::{self, GeneratingForm, Lagrangian, Momentum};
use jetvar_core::{CheckMode, MultiIndex, Result, ScalarExpr};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const EXACT: CheckMode = CheckMode::Exact;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn mi(v: &[u32]) -> MultiIndex {
    MultiIndex::new(v.to_vec())
}

/// All directions except `skip`, in order.
fn dxs_without(n: usize, skip: &[usize]) -> Vec<Generator> {
    (0..n).filter(|l| !skip.contains(l)).map(Generator::Dx).collect()
}

/// `θ ∧ ω_λ` written as `sign · dx… ∧ θ`: `ω_λ = (−1)^λ dx^0 ∧ … ^λ … ∧ dx^{n−1}`
/// and moving `θ` past `n − 1` one-forms.
fn theta_omega_l(n: usize, theta: Generator, l: usize) -> (Vec<Generator>, i64) {
    let mut g = dxs_without(n, &[l]);
    g.push(theta);
    let sign = if (l + n - 1).is_multiple_of(2) { 1 } else { -1 };
    (g, sign)
}

fn theta_omega(n: usize, theta: Generator) -> (Vec<Generator>, i64) {
    let mut g = dxs_without(n, &[]);
    g.push(theta);
    (g, if n.is_multiple_of(2) { 1 } else { -1 })
}

fn signed(c: &ScalarExpr, s: i64) -> ScalarExpr {
    if s < 0 {
        -c
    } else {
        c.clone()
    }
}

/// `h(β) = (β_λ + y^i_λ β_i) dx^λ` for `β = β_λ dx^λ + β_i dy^i` on `J_0`.
pub fn h_of_one_form(seed: u64) -> Result<bool> {
    let mut r = rng(seed);
    let b = Bounds::default();
    let (n, m) = (2, 2);
    let chart = JetChart::new(n, m, 0)?;
    let bl: Vec<ScalarExpr> = (0..n).map(|_| random::coefficient(&mut r, &chart, &b)).collect();
    let bi: Vec<ScalarExpr> = (0..m).map(|_| random::coefficient(&mut r, &chart, &b)).collect();
    let mut terms = Vec::new();
    for (l, c) in bl.iter().enumerate() {
        terms.push((vec![Generator::Dx(l)], c.clone()));
    }
    for (i, c) in bi.iter().enumerate() {
        terms.push((vec![Generator::dy(i, MultiIndex::zero(n))], c.clone()));
    }
    let beta = Form::from_terms(&chart, 1, Basis::Raw, terms)?;
    let c1 = chart.at_order(1);
    let expected = Form::from_terms(
        &c1,
        1,
        Basis::Contact,
        (0..n).map(|l| {
            let mut c = bl[l].clone();
            for (i, b) in bi.iter().enumerate() {
                c = &c + &(&c1.y(i, MultiIndex::unit(n, l)) * b);
            }
            (vec![Generator::Dx(l)], c)
        }),
    )?;
    beta.horizontalize()?.sub(&expected)?.is_zero(EXACT)
}

/// Random `(n+1)`-form on `J_r` and its generating form.
fn random_generating(seed: u64, n: usize, r: u32) -> Result<GeneratingForm> {
    let mut g = rng(seed);
    let b = Bounds {
        max_terms: 4,
        max_degree: 2,
        ..Bounds::default()
    };
    let chart = JetChart::new(n, 1 + (seed % 2) as usize, r)?;
    let alpha = random::form(&mut g, &chart, Basis::Raw, n + 1, &b)?;
    varcalc::generating_form(&alpha)
}

fn momentum_matches(p: &Momentum, terms: Vec<(Vec<Generator>, ScalarExpr)>) -> Result<bool> {
    let pf = p.to_form();
    let n = pf.chart().base_dim();
    let expected = Form::from_terms(pf.chart(), n, Basis::Contact, terms)?;
    pf.sub(&expected)?.is_zero(EXACT)
}

/// Uniqueness I: `p = α̃^λ_i θ^i ∧ ω_λ` for `α` on `J_1`.
pub fn uniqueness_one_momentum(seed: u64, n: usize) -> Result<bool> {
    let g = random_generating(seed, n, 1)?;
    let p = varcalc::momentum_unique_order1(&g)?;
    let mut terms = Vec::new();
    for i in 0..g.chart().fiber_dim() {
        for l in 0..n {
            let (gens, s) = theta_omega_l(n, Generator::theta(i, MultiIndex::zero(n)), l);
            terms.push((gens, signed(&g.coefficient(i, &MultiIndex::unit(n, l)), s)));
        }
    }
    momentum_matches(&p, terms)
}

/// Uniqueness II:
/// `p = (α̃^λ − D_μ α̃^{μ+λ}) θ ∧ ω_λ + α̃^{μ+λ} θ_μ ∧ ω_λ`,
/// reading `α̃^{μ+λ}` as the symmetric tensor `α̃^{μλ}` with
/// `α̃^γ θ_γ = α̃^{μλ} θ_{μλ}`: off-diagonal entries are half the
/// multi-index coefficient.
pub fn uniqueness_two_momentum(seed: u64, n: usize) -> Result<(bool, bool)> {
    let g = random_generating(seed, n, 2)?;
    let (_, p) = varcalc::kolar_decompose(&g)?;
    let chart = g.chart();
    let sym = |i: usize, mu: usize, l: usize| {
        let c = g.coefficient(i, &MultiIndex::unit(n, mu).incremented(l));
        if mu == l {
            c
        } else {
            c.scale(&rational(1, 2))
        }
    };
    let mut terms = Vec::new();
    for i in 0..chart.fiber_dim() {
        for l in 0..n {
            let mut c = g.coefficient(i, &MultiIndex::unit(n, l));
            for mu in 0..n {
                c = &c - &chart.total_derivative(mu, &sym(i, mu, l))?.value;
                let (gens, s) = theta_omega_l(n, Generator::theta(i, MultiIndex::unit(n, mu)), l);
                terms.push((gens, signed(&sym(i, mu, l), s)));
            }
            let (gens, s) = theta_omega_l(n, Generator::theta(i, MultiIndex::zero(n)), l);
            terms.push((gens, signed(&c, s)));
        }
    }
    let s_zero = n < 2 || varcalc::morphism_s(&p)?.is_zero(EXACT)?;
    Ok((momentum_matches(&p, terms)?, s_zero))
}

/// `p(φ) = φ^λ θ ∧ ω_λ` on an explicit `n = 2` example.
pub fn morphism_p_example() -> Result<bool> {
    let n = 2;
    let chart = JetChart::new(n, 1, 1)?;
    let phi0 = &chart.x(0) * &chart.y(0, mi(&[0, 0]));
    let phi1 = chart.y(0, mi(&[0, 1])).powu(2);
    let phi2 = &chart.x(1) + &chart.y(0, mi(&[1, 0]));
    let mut coeffs = BTreeMap::new();
    coeffs.insert((0, mi(&[0, 0])), phi0);
    coeffs.insert((0, mi(&[1, 0])), phi1.clone());
    coeffs.insert((0, mi(&[0, 1])), phi2.clone());
    let phi = GeneratingForm::new(&chart, coeffs)?;
    let p = varcalc::morphism_p(&phi)?;
    let th = Generator::theta(0, mi(&[0, 0]));
    // θ ∧ ω_1 = θ ∧ dx² = −dx² ∧ θ, θ ∧ ω_2 = −θ ∧ dx¹ = dx¹ ∧ θ
    momentum_matches(
        &p,
        vec![(vec![Generator::Dx(1), th.clone()], -phi1), (vec![Generator::Dx(0), th], phi2)],
    )
}

/// `s(p) = p^{λμ} θ ∧ ω_{λμ}` for `n = 3`, where
/// `ω_{12} = dx³`, `ω_{13} = −dx²`, `ω_{23} = dx¹`.
pub fn morphism_s_example(seed: u64) -> Result<bool> {
    let n = 3;
    let mut r = rng(seed);
    let chart = JetChart::new(n, 1, 1)?;
    let b = Bounds::default();
    let mut coeffs = BTreeMap::new();
    let mut pl = BTreeMap::new();
    for l in 0..n {
        coeffs.insert((0, MultiIndex::zero(n), l), random::coefficient(&mut r, &chart, &b));
        for mu in 0..n {
            let c = random::coefficient(&mut r, &chart, &b);
            coeffs.insert((0, MultiIndex::unit(n, l), mu), c.clone());
            pl.insert((l, mu), c);
        }
    }
    let p = Momentum::new(&chart, coeffs)?;
    let s = varcalc::morphism_s(&p)?;
    let th = Generator::theta(0, MultiIndex::zero(n));
    let anti = |l: usize, mu: usize| &pl[&(l, mu)] - &pl[&(mu, l)];
    // θ ∧ dx^k = −dx^k ∧ θ
    let expected = Form::from_terms(
        &chart,
        n - 1,
        Basis::Contact,
        vec![
            (vec![Generator::Dx(2), th.clone()], -anti(0, 1)),
            (vec![Generator::Dx(1), th.clone()], anti(0, 2)),
            (vec![Generator::Dx(0), th], -anti(1, 2)),
        ],
    )?;
    s.sub(&expected)?.is_zero(EXACT)
}

/// `E(½ y_(1)²) = −y_(2)`.
pub fn free_particle() -> Result<bool> {
    let c = JetChart::new(1, 1, 1)?;
    let l = Lagrangian::new(&c, c.y(0, mi(&[1])).powu(2).scale(&rational(1, 2)))?;
    let e = varcalc::euler_lagrange(&l)?;
    Ok((&e.components()[0] + &c.y(0, mi(&[2]))).normal_form().is_zero())
}

/// Reconstruction on a random generating form of order `top`: `E` equals
/// `Σ (−D)^γ α̃^γ` computed here directly and `E − d_H p` returns `h(α)`.
pub fn kolar_reconstruction(seed: u64, top: u32) -> Result<bool> {
    let mut r = rng(seed);
    let b = Bounds {
        max_n: 3,
        max_order: 1,
        ..Bounds::default()
    };
    let chart = random::chart(&mut r, &b);
    let g = random::generating_form(&mut r, &chart, top, &b)?;
    let (e, p) = varcalc::kolar_decompose(&g)?;
    let n = chart.base_dim();
    let gc = g.chart();
    for (i, comp) in e.components().iter().enumerate() {
        let mut direct = Vec::new();
        for gamma in enumerate_up_to(n, top) {
            let mut d = g.coefficient(i, &gamma);
            let mut c = gc.clone();
            for l in gamma.directions() {
                let next = c.total_derivative(l, &d)?;
                d = -next.value;
                c = next.chart;
            }
            direct.push(d);
        }
        if !(comp - &ScalarExpr::sum(direct)).normal_form().is_zero() {
            return Ok(false);
        }
    }
    // E − d_H p, with θ ∧ ω written out by hand
    let dh = p.to_form().d_h()?;
    let mut terms = Vec::new();
    for (i, c) in e.components().iter().enumerate() {
        let (gens, s) = theta_omega(n, Generator::theta(i, MultiIndex::zero(n)));
        terms.push((gens, signed(c, s)));
    }
    let ef = Form::from_terms(dh.chart(), n + 1, Basis::Contact, terms)?;
    let mut gterms = Vec::new();
    for ((i, gamma), c) in g.coefficients() {
        let (gens, s) = theta_omega(n, Generator::theta(*i, gamma.clone()));
        gterms.push((gens, signed(c, s)));
    }
    let gf = Form::from_terms(gc, n + 1, Basis::Contact, gterms)?;
    ef.sub(&dh)?.sub(&gf)?.is_zero(EXACT)
}
