use std::collections::BTreeMap;

use serde::Serialize;

use super::{
    euler_lagrange, generating_form, generating_form_of_d, generating_form_of_lagrangian,
    kolar_decompose, GeneratingForm, Lagrangian,
};
use crate::error::{Error, Result};
use crate::forms::{Basis, Form};
use crate::symexpr::{CheckMode, Degree, Counterexample, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Machine-readable outcome of a check.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub claim: String,
    pub status: Status,
    pub mode: CheckMode,
    pub measured: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<Report>,
}

impl Report {
    pub fn new(claim: impl Into<String>, mode: CheckMode) -> Report {
        Report {
            claim: claim.into(),
            status: Status::Pass,
            mode,
            measured: BTreeMap::new(),
            counterexample: None,
            children: Vec::new(),
        }
    }

    pub fn leaf(claim: impl Into<String>, mode: CheckMode, passed: bool) -> Report {
        let mut r = Report::new(claim, mode);
        r.require(passed);
        r
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn require(&mut self, ok: bool) -> &mut Report {
        if !ok {
            self.status = Status::Fail;
        }
        self
    }

    pub fn measure(&mut self, key: &str, value: impl ToString) -> &mut Report {
        self.measured.insert(key.to_string(), value.to_string());
        self
    }

    pub fn push(&mut self, child: Report) -> &mut Report {
        if !child.passed() {
            self.status = Status::Fail;
        }
        self.children.push(child);
        self
    }

    /// Records a counterexample and fails.
    pub fn fail_with(&mut self, cx: Counterexample) -> &mut Report {
        self.status = Status::Fail;
        self.counterexample = Some(cx);
        self
    }
}

/// `h(β) == λ`. `β` must be an `n`-form of jet order below `λ`.
pub fn special_witness_check(lagrangian: &Lagrangian, beta: &Form, mode: CheckMode) -> Result<bool> {
    let n = lagrangian.chart().base_dim();
    if beta.degree() != n {
        return Err(Error::Domain(format!("a witness is an n-form; got degree {}", beta.degree())));
    }
    if !beta.chart().same_bundle(lagrangian.chart()) {
        return Err(Error::Domain("witness and Lagrangian live on different bundles".into()));
    }
    if beta.basis() == Basis::Raw && beta.order() + 1 > lagrangian.order().max(1) {
        return Err(Error::Domain(format!(
            "a witness for an order-{} Lagrangian lives on J_{}; got J_{}",
            lagrangian.order(),
            lagrangian.order().saturating_sub(1),
            beta.order()
        )));
    }
    let h = beta.horizontalize()?;
    h.sub(&lagrangian.form())?.is_zero(mode)
}

/// Order and degree structure of `E_{dλ}`.
///
/// With a witness (special `λ` of order `r`): jet order of `E` at most
/// `2r − 1` and degree at most `n + 1` in the order-`(r+1)` coordinates.
/// Without: jet order at most `2r` and weighted degree at most `r` in the
/// coordinates above order `r`, a coordinate of order `r + s` weighing `s`.
pub fn special_el_structure_check(
    lagrangian: &Lagrangian,
    witness: Option<&Form>,
    mode: CheckMode,
) -> Result<Report> {
    let r = lagrangian.order();
    let n = lagrangian.chart().base_dim();
    let e = euler_lagrange(lagrangian)?;
    let chart = e.chart();
    let reg = chart.registry();
    let order = e.measured_order(mode)?;
    let mut report;
    match witness {
        Some(beta) => {
            if !special_witness_check(lagrangian, beta, mode)? {
                return Err(Error::Domain("the witness does not horizontalize to λ".into()));
            }
            report = Report::new("special Lagrangian: E on J_{2r-1}, degree ≤ n+1 in order r+1", mode);
            let bound = (2 * r).saturating_sub(1);
            report.measure("order_bound", bound).measure("measured_order", order);
            report.require(order <= bound);
            let top: BTreeMap<Symbol, u32> = chart
                .jet_coordinates_of_order(r + 1)
                .into_iter()
                .map(|s| (s, 1))
                .collect();
            let mut worst = 0;
            for c in e.components() {
                match c.weighted_degree_in(&top, mode, reg)? {
                    Degree::Polynomial(d) => worst = worst.max(d),
                    Degree::NotPolynomial => {
                        report.measure("non_polynomial", true);
                        report.require(false);
                    }
                }
            }
            report.measure("degree_order_r+1", worst).measure("degree_bound", n + 1);
            report.require(worst as usize <= n + 1);
        }
        None => {
            report = Report::new("general Lagrangian: E on J_{2r}, weighted degree ≤ r above order r", mode);
            report.measure("order_bound", 2 * r).measure("measured_order", order);
            report.require(order <= 2 * r);
            let weights: BTreeMap<Symbol, u32> = (r + 1..=2 * r)
                .flat_map(|k| chart.jet_coordinates_of_order(k).into_iter().map(move |s| (s, k - r)))
                .collect();
            let mut worst = 0;
            for c in e.components() {
                match c.weighted_degree_in(&weights, mode, reg)? {
                    Degree::Polynomial(d) => worst = worst.max(d),
                    Degree::NotPolynomial => {
                        report.measure("non_polynomial", true);
                        report.require(false);
                    }
                }
            }
            report.measure("weighted_degree", worst).measure("weighted_degree_bound", r);
            report.require(worst <= r);
        }
    }
    Ok(report)
}

/// `h(dβ) = h(d_H v(β)) + d_V λ` for a witness `β` of `λ`.
pub fn momentum_relation_check(lagrangian: &Lagrangian, beta: &Form, mode: CheckMode) -> Result<Report> {
    if !special_witness_check(lagrangian, beta, mode)? {
        return Err(Error::Domain("the witness does not horizontalize to λ".into()));
    }
    let lhs = match beta.basis() {
        Basis::Raw => generating_form(&beta.exterior_d()?)?,
        Basis::Contact => generating_form_of_d(beta)?,
    };
    let v = beta.verticalize()?;
    let dhv = v.d_h()?;
    let dhv = GeneratingForm::from_contact_form(&dhv.contact_component(1)?)?;
    let dvl = generating_form_of_lagrangian(lagrangian)?;
    let residual = lhs.sub(&dhv).sub(&dvl);
    let mut report = Report::new("h(dβ) = h(d_H v(β)) + d_V λ", mode);
    let ok = residual.is_zero(mode)?;
    report.require(ok);
    let vanishes = dhv.is_zero(mode)?;
    report.measure("h(d_H v(beta)) vanishes", vanishes);
    report.measure("v(beta) vanishes", v.is_zero(mode)?);
    Ok(report)
}

/// The three characterizing conditions of a Poincaré–Cartan form.
#[derive(Clone, Debug, Serialize)]
pub struct PoincareCartanReport {
    /// `h(θ) = λ`.
    pub horizontal_is_lagrangian: bool,
    /// `v(θ)` has contact degree exactly one.
    pub vertical_is_contact_one: bool,
    /// The generating form of `dθ` equals `E` and has zero momentum.
    pub differential_is_source: bool,
    /// `dθ = E + d_V v(θ)`.
    pub differential_splits: bool,
}

impl PoincareCartanReport {
    pub fn all(&self) -> bool {
        self.horizontal_is_lagrangian
            && self.vertical_is_contact_one
            && self.differential_is_source
            && self.differential_splits
    }
}

pub fn poincare_cartan_check(lagrangian: &Lagrangian, theta: &Form, mode: CheckMode) -> Result<PoincareCartanReport> {
    let theta = theta.to_contact_basis()?;
    let h = theta.horizontalize()?;
    let horizontal_is_lagrangian = h.sub(&lagrangian.form())?.is_zero(mode)?;
    let v = theta.verticalize()?;
    let mut vertical_is_contact_one = true;
    for (deg, (gens, c)) in v.contact_degrees().into_iter().zip(v.terms()) {
        if deg != 1 {
            let single = Form::term(v.chart(), Basis::Contact, c.clone(), gens.clone())?;
            if !single.is_zero(mode)? {
                vertical_is_contact_one = false;
            }
        }
    }
    let e = euler_lagrange(lagrangian)?;
    let g = generating_form_of_d(&theta)?;
    let (e2, p2) = kolar_decompose(&g)?;
    let differential_is_source = e2.equivalent(&e, mode)? && p2.is_zero(mode)? && g.sub(&e.as_generating_form()).is_zero(mode)?;
    let dtheta = theta.d_h()?.add(&theta.d_v()?)?;
    let split = e.to_form().add(&v.d_v()?)?;
    let differential_splits = dtheta.sub(&split)?.is_zero(mode)?;
    Ok(PoincareCartanReport {
        horizontal_is_lagrangian,
        vertical_is_contact_one,
        differential_is_source,
        differential_splits,
    })
}
