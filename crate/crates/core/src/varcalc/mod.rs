//! Euler–Lagrange forms, generating forms, momenta and Poincaré–Cartan
//! forms.
//!
//! Sign convention. With `ω_λ = ∂_λ ⌟ ω` and the generator order of
//! [`crate::forms`], one has
//! `d_H(f θ^i_γ ∧ ω_λ) = −D_λ f θ^i_γ ∧ ω − f θ^i_{γ+λ} ∧ ω`.
//! The decomposition of a generating form is therefore written
//! `g = E − d_H p`, which makes the displayed momenta hold verbatim:
//! `p = α̃^λ_i θ^i ∧ ω_λ` for first-order `g`, and `θ = L ω + p` with
//! `dθ = E + d_V p` for Lagrangians.

mod ansatz;
mod checks;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{Basis, Form, Generator};
use crate::jetchart::JetChart;
use crate::multiindex::MultiIndex;
use crate::symexpr::{rational, CheckMode, Rational, ScalarExpr, Symbol};

pub use ansatz::{
    special_witness_search, uniqueness_kernel, AnsatzReport, MomentumAnsatz, WitnessSearch,
};
pub use checks::{
    momentum_relation_check, poincare_cartan_check, special_el_structure_check,
    special_witness_check, PoincareCartanReport, Report, Status,
};

/// `λ = L ω`.
#[derive(Clone, Debug)]
pub struct Lagrangian {
    chart: JetChart,
    density: ScalarExpr,
}

impl Lagrangian {
    /// The density must live on `chart`; the chart order is the Lagrangian
    /// order `r`.
    pub fn new(chart: &JetChart, density: ScalarExpr) -> Result<Lagrangian> {
        chart.check_expr(&density)?;
        Ok(Lagrangian {
            chart: chart.clone(),
            density,
        })
    }

    pub fn chart(&self) -> &JetChart {
        &self.chart
    }

    pub fn density(&self) -> &ScalarExpr {
        &self.density
    }

    pub fn order(&self) -> u32 {
        self.chart.order()
    }

    pub fn form(&self) -> Form {
        Form::volume(&self.chart, Basis::Contact).scale(&self.density)
    }

    /// Reads a horizontal `n`-form as a Lagrangian.
    pub fn from_form(form: &Form) -> Result<Lagrangian> {
        let n = form.chart().base_dim();
        if form.degree() != n || !form.is_horizontal() {
            return Err(Error::Domain("a Lagrangian is a horizontal n-form".into()));
        }
        let gens: Vec<Generator> = (0..n).map(Generator::Dx).collect();
        Lagrangian::new(form.chart(), form.coefficient(&gens))
    }
}

/// Coefficient key `(i, γ)` of `θ^i_γ`.
pub type ThetaKey = (usize, MultiIndex);

fn volume_gens(n: usize) -> Vec<Generator> {
    (0..n).map(Generator::Dx).collect()
}

fn theta_wedge_omega(n: usize, fiber: usize, index: &MultiIndex) -> Vec<Generator> {
    let mut g = vec![Generator::theta(fiber, index.clone())];
    g.extend(volume_gens(n));
    g
}

/// `h(α) = α̃^γ_i θ^i_γ ∧ ω`.
#[derive(Clone, Debug)]
pub struct GeneratingForm {
    chart: JetChart,
    coeffs: BTreeMap<ThetaKey, ScalarExpr>,
}

impl GeneratingForm {
    pub fn new(chart: &JetChart, coeffs: BTreeMap<ThetaKey, ScalarExpr>) -> Result<GeneratingForm> {
        for ((i, gamma), c) in &coeffs {
            if *i >= chart.fiber_dim() || gamma.dim() != chart.base_dim() {
                return Err(Error::Domain(format!("θ{}_{gamma} is outside the chart", i + 1)));
            }
            chart.check_expr(c)?;
        }
        Ok(GeneratingForm {
            chart: chart.clone(),
            coeffs: coeffs.into_iter().filter(|(_, c)| !c.is_literal_zero()).collect(),
        })
    }

    pub fn zero(chart: &JetChart) -> GeneratingForm {
        GeneratingForm {
            chart: chart.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn chart(&self) -> &JetChart {
        &self.chart
    }

    pub fn coefficients(&self) -> &BTreeMap<ThetaKey, ScalarExpr> {
        &self.coeffs
    }

    pub fn coefficient(&self, fiber: usize, index: &MultiIndex) -> ScalarExpr {
        self.coeffs
            .get(&(fiber, index.clone()))
            .cloned()
            .unwrap_or_else(ScalarExpr::zero)
    }

    /// Highest `|γ|` with a structurally nonzero coefficient.
    pub fn contact_order(&self) -> Option<u32> {
        self.coeffs.keys().map(|(_, g)| g.order()).max()
    }

    pub fn to_form(&self) -> Form {
        let n = self.chart.base_dim();
        Form::from_terms(
            &self.chart,
            n + 1,
            Basis::Contact,
            self.coeffs
                .iter()
                .map(|((i, g), c)| (theta_wedge_omega(n, *i, g), c.clone())),
        )
        .expect("generating form terms are in range")
    }

    /// Reads the `θ ∧ ω` terms of an `(n+1)`-form already in CONTACT basis.
    pub fn from_contact_form(form: &Form) -> Result<GeneratingForm> {
        let n = form.chart().base_dim();
        if form.degree() != n + 1 {
            return Err(Error::Degree(format!(
                "generating forms come from (n+1)-forms; got degree {}",
                form.degree()
            )));
        }
        let mut coeffs = BTreeMap::new();
        for (gens, _) in form.terms() {
            let thetas: Vec<&Generator> = gens.iter().filter(|g| !g.is_horizontal()).collect();
            if let [Generator::Theta { fiber, index }] = thetas.as_slice() {
                let c = form.coefficient(&theta_wedge_omega(n, *fiber, index));
                coeffs.insert((*fiber, index.clone()), c);
            }
        }
        GeneratingForm::new(form.chart(), coeffs)
    }

    pub fn sub(&self, other: &GeneratingForm) -> GeneratingForm {
        let chart = if self.chart.order() >= other.chart.order() {
            &self.chart
        } else {
            &other.chart
        };
        let mut coeffs: BTreeMap<ThetaKey, Vec<ScalarExpr>> = BTreeMap::new();
        for (k, c) in &self.coeffs {
            coeffs.entry(k.clone()).or_default().push(c.clone());
        }
        for (k, c) in &other.coeffs {
            coeffs.entry(k.clone()).or_default().push(-c);
        }
        GeneratingForm {
            chart: chart.clone(),
            coeffs: coeffs
                .into_iter()
                .map(|(k, v)| (k, ScalarExpr::sum(v)))
                .filter(|(_, c)| !c.is_literal_zero())
                .collect(),
        }
    }

    pub fn is_zero(&self, mode: CheckMode) -> Result<bool> {
        self.to_form().is_zero(mode)
    }
}

/// `E = E_i θ^i ∧ ω`.
#[derive(Clone, Debug)]
pub struct EulerLagrangeForm {
    chart: JetChart,
    components: Vec<ScalarExpr>,
}

impl EulerLagrangeForm {
    pub fn chart(&self) -> &JetChart {
        &self.chart
    }

    pub fn components(&self) -> &[ScalarExpr] {
        &self.components
    }

    pub fn to_form(&self) -> Form {
        let n = self.chart.base_dim();
        let zero = MultiIndex::zero(n);
        Form::from_terms(
            &self.chart,
            n + 1,
            Basis::Contact,
            self.components
                .iter()
                .enumerate()
                .map(|(i, c)| (theta_wedge_omega(n, i, &zero), c.clone())),
        )
        .expect("source form terms are in range")
    }

    pub fn as_generating_form(&self) -> GeneratingForm {
        let zero = MultiIndex::zero(self.chart.base_dim());
        GeneratingForm {
            chart: self.chart.clone(),
            coeffs: self
                .components
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_literal_zero())
                .map(|(i, c)| ((i, zero.clone()), c.clone()))
                .collect(),
        }
    }

    /// Componentwise semantic difference check.
    pub fn equivalent(&self, other: &EulerLagrangeForm, mode: CheckMode) -> Result<bool> {
        if self.components.len() != other.components.len() {
            return Ok(false);
        }
        let diffs: Vec<ScalarExpr> = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a - b)
            .collect();
        Ok(crate::symexpr::all_zero(&diffs, mode, self.chart.registry())?.is_none())
    }

    /// Measured jet order over all components.
    pub fn measured_order(&self, mode: CheckMode) -> Result<u32> {
        let mut best = 0;
        for c in &self.components {
            best = best.max(self.chart.measured_order(c, mode)?);
        }
        Ok(best)
    }
}

/// Key `(i, γ, λ)` of `θ^i_γ ∧ ω_λ`.
pub type MomentumKey = (usize, MultiIndex, usize);

/// `p = p_i^{γ,λ} θ^i_γ ∧ ω_λ`.
#[derive(Clone, Debug)]
pub struct Momentum {
    chart: JetChart,
    coeffs: BTreeMap<MomentumKey, ScalarExpr>,
}

impl Momentum {
    pub fn new(chart: &JetChart, coeffs: BTreeMap<MomentumKey, ScalarExpr>) -> Result<Momentum> {
        for ((i, gamma, l), c) in &coeffs {
            if *i >= chart.fiber_dim()
                || gamma.dim() != chart.base_dim()
                || gamma.order() > chart.order()
                || *l >= chart.base_dim()
            {
                return Err(Error::Domain(format!(
                    "momentum term θ{}_{gamma}∧ω_{} is outside the chart",
                    i + 1,
                    l + 1
                )));
            }
            chart.check_expr(c)?;
        }
        Ok(Momentum {
            chart: chart.clone(),
            coeffs: coeffs.into_iter().filter(|(_, c)| !c.is_literal_zero()).collect(),
        })
    }

    pub fn zero(chart: &JetChart) -> Momentum {
        Momentum {
            chart: chart.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn chart(&self) -> &JetChart {
        &self.chart
    }

    pub fn coefficients(&self) -> &BTreeMap<MomentumKey, ScalarExpr> {
        &self.coeffs
    }

    pub fn coefficient(&self, fiber: usize, index: &MultiIndex, direction: usize) -> ScalarExpr {
        self.coeffs
            .get(&(fiber, index.clone(), direction))
            .cloned()
            .unwrap_or_else(ScalarExpr::zero)
    }

    pub fn to_form(&self) -> Form {
        let chart = &self.chart;
        let n = chart.base_dim();
        let mut parts = Vec::new();
        for ((i, gamma, l), c) in &self.coeffs {
            let th = Form::theta(chart, *i, gamma.clone()).expect("theta in range");
            let w = Form::omega(chart, Basis::Contact, &[*l]).expect("direction in range");
            parts.push(th.wedge(&w).expect("same chart").scale(c));
        }
        Form::sum(chart, n, Basis::Contact, &parts).expect("momentum terms share a chart")
    }

    /// Reads `θ ∧ (n−1 dx)` terms of a CONTACT `n`-form. Fails if other
    /// terms are present.
    pub fn from_form(form: &Form) -> Result<Momentum> {
        let chart = form.chart();
        let n = chart.base_dim();
        if form.degree() != n {
            return Err(Error::Degree(format!("momenta are n-forms; got degree {}", form.degree())));
        }
        let form = form.to_contact_basis()?;
        let mut coeffs = BTreeMap::new();
        for (gens, c) in form.terms() {
            let thetas: Vec<&Generator> = gens.iter().filter(|g| !g.is_horizontal()).collect();
            let [Generator::Theta { fiber, index }] = thetas.as_slice() else {
                return Err(Error::Momentum(format!(
                    "term with {} contact factors in a momentum",
                    thetas.len()
                )));
            };
            // θ ∧ ω_λ = (−1)^{λ} θ ∧ dx^1…^dx^λ…dx^n (λ 0-based), and
            // sorting θ behind n−1 dx's gives (−1)^{n−1}
            let missing = (0..n)
                .find(|l| !gens.contains(&Generator::Dx(*l)))
                .expect("n−1 horizontal factors");
            let sign = if (missing + n - 1).is_multiple_of(2) { 1 } else { -1 };
            coeffs.insert((*fiber, index.clone(), missing), c.scale(&rational(sign, 1)));
        }
        Momentum::new(chart, coeffs)
    }

    pub fn is_zero(&self, mode: CheckMode) -> Result<bool> {
        self.to_form().is_zero(mode)
    }

    /// Highest `|γ|` among the θ factors.
    pub fn contact_order(&self) -> Option<u32> {
        self.coeffs.keys().map(|(_, g, _)| g.order()).max()
    }
}

/// `E_i = Σ_{|γ| ≤ r} (−1)^{|γ|} D_γ(∂L/∂y^i_γ)`, on `J_{2r}`.
pub fn euler_lagrange(lagrangian: &Lagrangian) -> Result<EulerLagrangeForm> {
    let g = generating_form_of_lagrangian(lagrangian)?;
    source_part(&g)
}

/// `d_V λ`, i.e. the generating form of `dλ`: `α̃^γ_i = ∂L/∂y^i_γ`.
pub fn generating_form_of_lagrangian(lagrangian: &Lagrangian) -> Result<GeneratingForm> {
    let chart = lagrangian.chart();
    let reg = chart.registry();
    let l = lagrangian.density();
    let mut coeffs = BTreeMap::new();
    for s in l.coordinates(reg)? {
        if let Symbol::Jet { fiber, index } = &s {
            coeffs.insert((*fiber, index.clone()), l.partial(&s, reg)?);
        }
    }
    GeneratingForm::new(chart, coeffs)
}

/// Generating form of an `(n+1)`-form: the contact-degree-1 component of
/// its CONTACT-basis expression. Contact degree ≥ 2 is discarded; it lies
/// in the kernel of the quotient map.
pub fn generating_form(alpha: &Form) -> Result<GeneratingForm> {
    let n = alpha.chart().base_dim();
    if alpha.degree() != n + 1 {
        return Err(Error::Degree(format!(
            "generating forms are taken of (n+1)-forms; got degree {}",
            alpha.degree()
        )));
    }
    GeneratingForm::from_contact_form(&alpha.contact_component(1)?)
}

/// Generating form of `dρ` for an `n`-form `ρ` given in either basis,
/// computed as the contact-degree-1 part of `(d_H + d_V) ρ`.
pub fn generating_form_of_d(rho: &Form) -> Result<GeneratingForm> {
    let rho = rho.to_contact_basis()?;
    let horizontal = rho.contact_component(0)?;
    let contact1 = rho.contact_component(1)?;
    let a = horizontal.d_v()?;
    let b = contact1.d_h()?;
    GeneratingForm::from_contact_form(&a.add(&b)?)
}

/// The canonical Kolář recursion. Returns the Euler–Lagrange part and the
/// momentum, with `g = E − d_H p`.
///
/// Terms are processed from the highest `|γ|` down. A term `c θ^i_γ ∧ ω`
/// with `|γ| ≥ 1` emits `c θ^i_{γ−λ} ∧ ω_λ` for the smallest direction `λ`
/// with `γ_λ > 0` and pushes `−D_λ c` onto `θ^i_{γ−λ}`. When the highest
/// order present is 2, the second-order step is averaged over directions
/// with weights `γ_λ/|γ|`, which yields a momentum with `s(p) = 0`.
pub fn kolar_decompose(g: &GeneratingForm) -> Result<(EulerLagrangeForm, Momentum)> {
    let chart = g.chart();
    let n = chart.base_dim();
    let symmetrize = g.contact_order() == Some(2);
    let mut pending: BTreeMap<ThetaKey, Vec<ScalarExpr>> = BTreeMap::new();
    for (k, c) in &g.coeffs {
        pending.entry(k.clone()).or_default().push(c.clone());
    }
    let mut momentum: BTreeMap<MomentumKey, Vec<ScalarExpr>> = BTreeMap::new();
    let top = g.contact_order().unwrap_or(0);
    for level in (1..=top).rev() {
        let keys: Vec<ThetaKey> = pending.keys().filter(|(_, gm)| gm.order() == level).cloned().collect();
        for key in keys {
            let c = ScalarExpr::sum(pending.remove(&key).unwrap_or_default());
            if c.is_literal_zero() {
                continue;
            }
            let (i, gamma) = &key;
            let weights: Vec<(usize, Rational)> = if symmetrize && level == 2 {
                gamma
                    .support()
                    .map(|l| (l, Rational::new(gamma.get(l).into(), level.into())))
                    .collect()
            } else {
                vec![(gamma.support().next().expect("|γ| ≥ 1"), rational(1, 1))]
            };
            for (l, w) in weights {
                let lower = gamma.decremented(l).expect("γ_λ > 0");
                let wc = c.scale(&w);
                let dc = chart.total_derivative_unchecked(l, &wc)?;
                momentum.entry((*i, lower.clone(), l)).or_default().push(wc);
                pending.entry((*i, lower)).or_default().push(-dc);
            }
        }
    }
    let zero = MultiIndex::zero(n);
    let components = (0..chart.fiber_dim())
        .map(|i| ScalarExpr::sum(pending.remove(&(i, zero.clone())).unwrap_or_default()))
        .collect();
    let out_chart = chart.at_order(chart.order() + top);
    let e = EulerLagrangeForm {
        chart: out_chart.clone(),
        components,
    };
    let p = Momentum {
        chart: out_chart,
        coeffs: momentum
            .into_iter()
            .map(|(k, v)| (k, ScalarExpr::sum(v)))
            .filter(|(_, c)| !c.is_literal_zero())
            .collect(),
    };
    Ok((e, p))
}

/// `E_i = Σ (−1)^{|γ|} D_γ α̃^γ_i` directly, without building a momentum.
pub fn source_part(g: &GeneratingForm) -> Result<EulerLagrangeForm> {
    let chart = g.chart();
    let mut comps: Vec<Vec<ScalarExpr>> = vec![Vec::new(); chart.fiber_dim()];
    for ((i, gamma), c) in &g.coeffs {
        let d = chart.iterated_unchecked(gamma, c)?;
        comps[*i].push(if gamma.order() % 2 == 0 { d } else { -d });
    }
    let top = g.contact_order().unwrap_or(0);
    Ok(EulerLagrangeForm {
        chart: chart.at_order(chart.order() + top),
        components: comps.into_iter().map(ScalarExpr::sum).collect(),
    })
}

/// Reconstruction `E − d_H p` as a generating form.
pub fn reconstruct(e: &EulerLagrangeForm, p: &Momentum) -> Result<GeneratingForm> {
    let dh = p.to_form().d_h()?;
    let f = GeneratingForm::from_contact_form(&dh)?;
    Ok(e.as_generating_form().sub(&f))
}

/// The unique momentum of a generating form of contact order ≤ 1 (or any
/// order when `n = 1`): `p = α̃^λ_i θ^i ∧ ω_λ`.
pub fn momentum_unique_order1(g: &GeneratingForm) -> Result<Momentum> {
    let n = g.chart().base_dim();
    if n > 1 && g.contact_order().unwrap_or(0) >= 2 {
        return Err(Error::Order(format!(
            "uniqueness of the momentum needs contact order ≤ 1 when n > 1; got {}",
            g.contact_order().unwrap_or(0)
        )));
    }
    Ok(kolar_decompose(g)?.1)
}

/// `p(φ) = φ^λ_i θ^i ∧ ω_λ` for `φ = φ_i θ^i ∧ ω + φ^λ_i θ^i_λ ∧ ω`.
pub fn morphism_p(phi: &GeneratingForm) -> Result<Momentum> {
    if phi.contact_order().unwrap_or(0) >= 2 {
        return Err(Error::Domain(
            "the form has θ factors of order ≥ 2 and is not in the domain of p".into(),
        ));
    }
    let n = phi.chart().base_dim();
    let mut coeffs = BTreeMap::new();
    for ((i, gamma), c) in &phi.coeffs {
        if gamma.order() == 1 {
            let l = gamma.support().next().expect("order one");
            coeffs.insert((*i, MultiIndex::zero(n), l), c.clone());
        }
    }
    Momentum::new(phi.chart(), coeffs)
}

/// `s(p) = p^{λμ}_i θ^i ∧ ω_{λμ}` for `p = p^μ_i θ^i ∧ ω_μ + p^{λμ}_i θ^i_λ ∧ ω_μ`.
pub fn morphism_s(p: &Momentum) -> Result<Form> {
    let chart = p.chart();
    let n = chart.base_dim();
    if n < 2 {
        return Err(Error::Domain("s is defined for n ≥ 2".into()));
    }
    if p.contact_order().unwrap_or(0) >= 2 {
        return Err(Error::Domain(
            "the momentum has θ factors of order ≥ 2 and is not in the domain of s".into(),
        ));
    }
    let mut parts = Vec::new();
    for ((i, gamma, mu), c) in &p.coeffs {
        if gamma.order() == 1 {
            let l = gamma.support().next().expect("order one");
            let th = Form::theta(chart, *i, MultiIndex::zero(n))?;
            let w = Form::omega(chart, Basis::Contact, &[l, *mu])?;
            parts.push(th.wedge(&w)?.scale(c));
        }
    }
    Form::sum(chart, n - 1, Basis::Contact, &parts)
}

/// `θ_λ = λ + p`. The momentum contract `d_H p = E − d_V λ` is verified
/// first; a violation is a momentum error.
pub fn poincare_cartan(lagrangian: &Lagrangian, p: &Momentum, mode: CheckMode) -> Result<Form> {
    let g = generating_form_of_lagrangian(lagrangian)?;
    let e = source_part(&g)?;
    let residual = reconstruct(&e, p)?.sub(&g);
    if !residual.is_zero(mode)? {
        return Err(Error::Momentum(
            "d_H p does not equal E − d_V λ for the given momentum".into(),
        ));
    }
    let pf = p.to_form();
    let chart = if pf.order() >= lagrangian.order() {
        pf.chart().clone()
    } else {
        lagrangian.chart().clone()
    };
    lagrangian.form().on_chart(&chart)?.add(&pf)
}

/// Canonical momentum and Poincaré–Cartan form of a Lagrangian.
pub fn canonical_poincare_cartan(lagrangian: &Lagrangian) -> Result<(Momentum, Form)> {
    let g = generating_form_of_lagrangian(lagrangian)?;
    let (_, p) = kolar_decompose(&g)?;
    let theta = lagrangian.form().on_chart(p.chart())?.add(&p.to_form())?;
    Ok((p, theta))
}

#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub euler_lagrange: Vec<String>,
    pub momentum: Vec<(String, String)>,
}

impl Decomposition {
    pub fn describe(e: &EulerLagrangeForm, p: &Momentum) -> Decomposition {
        Decomposition {
            euler_lagrange: e.components.iter().map(|c| c.to_string()).collect(),
            momentum: p
                .coeffs
                .iter()
                .map(|((i, g, l), c)| (format!("θ{}_{}∧ω_{}", i + 1, g, l + 1), c.to_string()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn free_particle() {
        let c = JetChart::new(1, 1, 1).unwrap();
        let y1 = c.y(0, mi(&[1]));
        let l = Lagrangian::new(&c, y1.powu(2).scale(&rational(1, 2))).unwrap();
        let e = euler_lagrange(&l).unwrap();
        assert_eq!(e.components()[0], -c.y(0, mi(&[2])));
        let (p, theta) = canonical_poincare_cartan(&l).unwrap();
        assert_eq!(p.coefficient(0, &mi(&[0]), 0), y1);
        // θ = ½ y_1² dx + y_1 θ
        assert_eq!(theta.coefficient(&[Generator::Dx(0)]), y1.powu(2).scale(&rational(1, 2)));
        assert_eq!(theta.coefficient(&[Generator::theta(0, mi(&[0]))]), y1);
    }

    #[test]
    fn momentum_form_round_trip() {
        let c = JetChart::new(3, 1, 1).unwrap();
        let mut coeffs = BTreeMap::new();
        coeffs.insert((0, mi(&[0, 0, 0]), 0), c.x(1));
        coeffs.insert((0, mi(&[0, 1, 0]), 1), c.x(2));
        coeffs.insert((0, mi(&[0, 0, 0]), 2), ScalarExpr::int(3));
        let p = Momentum::new(&c, coeffs).unwrap();
        let back = Momentum::from_form(&p.to_form()).unwrap();
        assert_eq!(back.coefficients(), p.coefficients());
    }

    #[test]
    fn reconstruction_order_one() {
        let c = JetChart::new(2, 1, 2).unwrap();
        let mut coeffs = BTreeMap::new();
        coeffs.insert((0, mi(&[0, 0])), &c.x(0) * &c.y(0, mi(&[1, 0])));
        coeffs.insert((0, mi(&[1, 0])), c.y(0, mi(&[0, 1])).powu(2));
        coeffs.insert((0, mi(&[0, 1])), &c.x(1) * &c.y(0, mi(&[0, 0])));
        let g = GeneratingForm::new(&c, coeffs).unwrap();
        let (e, p) = kolar_decompose(&g).unwrap();
        assert!(reconstruct(&e, &p).unwrap().sub(&g).is_zero(CheckMode::Exact).unwrap());
        assert_eq!(p.coefficient(0, &mi(&[0, 0]), 0), c.y(0, mi(&[0, 1])).powu(2));
    }
}
