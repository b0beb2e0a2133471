//! Exterior forms on `J_r Y` over the generators `dx^λ`, `dy^i_γ`, `θ^i_γ`.
//!
//! Generator order: `Dx(1) < … < Dx(n) < Dy/Theta`, the latter by fiber
//! index and then multi-index. Wedge monomials are kept sorted with the
//! permutation sign absorbed into the coefficient. A form is either in the
//! RAW basis (`dx`, `dy`) or the CONTACT basis (`dx`, `θ`), never mixed.
//!
//! Every form carries the chart it lives on; operations that raise the jet
//! order return a form on the prolonged chart.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::jetchart::JetChart;
use crate::multiindex::MultiIndex;
use crate::symexpr::{all_zero, CheckMode, Counterexample, ScalarExpr, Symbol};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    Dx(usize),
    Dy { fiber: usize, index: MultiIndex },
    Theta { fiber: usize, index: MultiIndex },
}

impl Generator {
    pub fn theta(fiber: usize, index: MultiIndex) -> Generator {
        Generator::Theta { fiber, index }
    }

    pub fn dy(fiber: usize, index: MultiIndex) -> Generator {
        Generator::Dy { fiber, index }
    }

    pub fn is_horizontal(&self) -> bool {
        matches!(self, Generator::Dx(_))
    }

    fn fits(&self, basis: Basis) -> bool {
        !matches!(
            (self, basis),
            (Generator::Dy { .. }, Basis::Contact) | (Generator::Theta { .. }, Basis::Raw)
        )
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Dx(l) => write!(f, "dx{}", l + 1),
            Generator::Dy { fiber, index } => write!(f, "dy{}_{}", fiber + 1, index),
            Generator::Theta { fiber, index } => write!(f, "θ{}_{}", fiber + 1, index),
        }
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    Raw,
    Contact,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Raw => "raw",
            Basis::Contact => "contact",
        })
    }
}

/// Sorts a wedge monomial, returning the permutation sign, or `None` when a
/// generator repeats (the monomial vanishes).
pub fn sort_with_sign(gens: &mut [Generator]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..gens.len() {
        let mut j = i;
        while j > 0 && gens[j - 1] > gens[j] {
            gens.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if gens.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

/// Accumulates terms before building a form; sums each coefficient once.
#[derive(Default)]
pub(crate) struct Terms(BTreeMap<Vec<Generator>, Vec<ScalarExpr>>);

impl Terms {
    pub(crate) fn push(&mut self, mut gens: Vec<Generator>, coeff: ScalarExpr) {
        if coeff.is_literal_zero() {
            return;
        }
        if let Some(sign) = sort_with_sign(&mut gens) {
            let c = if sign < 0 { -coeff } else { coeff };
            self.0.entry(gens).or_default().push(c);
        }
    }

    fn build(self) -> BTreeMap<Vec<Generator>, ScalarExpr> {
        self.0
            .into_iter()
            .map(|(g, cs)| (g, ScalarExpr::sum(cs)))
            .filter(|(_, c)| !c.is_literal_zero())
            .collect()
    }
}

#[derive(Clone)]
pub struct Form {
    chart: JetChart,
    degree: usize,
    basis: Basis,
    terms: BTreeMap<Vec<Generator>, ScalarExpr>,
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form[{}, deg {}, J{}]", self.basis, self.degree, self.chart.order())?;
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (gens, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}")?;
            for g in gens {
                write!(f, " {g}")?;
            }
        }
        Ok(())
    }
}

/// Structural equality: same bundle, order, basis, degree and terms.
impl PartialEq for Form {
    fn eq(&self, other: &Form) -> bool {
        self.chart.same_bundle(&other.chart)
            && self.chart.order() == other.chart.order()
            && self.basis == other.basis
            && self.degree == other.degree
            && self.terms == other.terms
    }
}

impl Form {
    pub fn zero(chart: &JetChart, degree: usize, basis: Basis) -> Form {
        Form {
            chart: chart.clone(),
            degree,
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(chart: &JetChart, f: ScalarExpr, basis: Basis) -> Form {
        let mut terms = Terms::default();
        terms.push(Vec::new(), f);
        Form {
            chart: chart.clone(),
            degree: 0,
            basis,
            terms: terms.build(),
        }
    }

    /// `coeff · g_1 ∧ … ∧ g_k`.
    pub fn term(chart: &JetChart, basis: Basis, coeff: ScalarExpr, gens: Vec<Generator>) -> Result<Form> {
        Form::from_terms(chart, gens.len(), basis, vec![(gens, coeff)])
    }

    pub fn from_terms(
        chart: &JetChart,
        degree: usize,
        basis: Basis,
        terms: impl IntoIterator<Item = (Vec<Generator>, ScalarExpr)>,
    ) -> Result<Form> {
        let mut acc = Terms::default();
        for (gens, c) in terms {
            if gens.len() != degree {
                return Err(Error::Degree(format!(
                    "term of degree {} in a {degree}-form",
                    gens.len()
                )));
            }
            for g in &gens {
                check_generator(chart, g, basis)?;
            }
            acc.push(gens, c);
        }
        Ok(Form {
            chart: chart.clone(),
            degree,
            basis,
            terms: acc.build(),
        })
    }

    fn rebuild(&self, chart: &JetChart, degree: usize, basis: Basis, terms: Terms) -> Form {
        Form {
            chart: chart.clone(),
            degree,
            basis,
            terms: terms.build(),
        }
    }

    pub fn dx(chart: &JetChart, direction: usize, basis: Basis) -> Result<Form> {
        Form::term(chart, basis, ScalarExpr::one(), vec![Generator::Dx(direction)])
    }

    pub fn dy(chart: &JetChart, fiber: usize, index: MultiIndex) -> Result<Form> {
        Form::term(chart, Basis::Raw, ScalarExpr::one(), vec![Generator::dy(fiber, index)])
    }

    pub fn theta(chart: &JetChart, fiber: usize, index: MultiIndex) -> Result<Form> {
        Form::term(chart, Basis::Contact, ScalarExpr::one(), vec![Generator::theta(fiber, index)])
    }

    /// `ω = dx¹ ∧ … ∧ dxⁿ`.
    pub fn volume(chart: &JetChart, basis: Basis) -> Form {
        Form::term(
            chart,
            basis,
            ScalarExpr::one(),
            (0..chart.base_dim()).map(Generator::Dx).collect(),
        )
        .expect("volume generators are in range")
    }

    /// `ω_{λ…} = ∂_… ⌟ ∂_λ ⌟ ω`.
    pub fn omega(chart: &JetChart, basis: Basis, directions: &[usize]) -> Result<Form> {
        Form::volume(chart, basis).interior_horizontal(directions)
    }

    pub fn chart(&self) -> &JetChart {
        &self.chart
    }

    pub fn order(&self) -> u32 {
        self.chart.order()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Generator>, &ScalarExpr)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of a (sorted) monomial.
    pub fn coefficient(&self, gens: &[Generator]) -> ScalarExpr {
        let mut key = gens.to_vec();
        match sort_with_sign(&mut key) {
            None => ScalarExpr::zero(),
            Some(sign) => {
                let c = self.terms.get(&key).cloned().unwrap_or_else(ScalarExpr::zero);
                if sign < 0 {
                    -c
                } else {
                    c
                }
            }
        }
    }

    /// Re-homes the form on `chart` (same bundle, any order that still
    /// contains its coordinates).
    pub fn on_chart(&self, chart: &JetChart) -> Result<Form> {
        if !chart.same_bundle(&self.chart) {
            return Err(Error::Dimension {
                expected: self.chart.base_dim(),
                found: chart.base_dim(),
            });
        }
        Ok(Form {
            chart: chart.clone(),
            ..self.clone()
        })
    }

    pub fn map_coefficients<F>(&self, mut f: F) -> Result<Form>
    where
        F: FnMut(&[Generator], &ScalarExpr) -> Result<ScalarExpr>,
    {
        let mut acc = Terms::default();
        for (g, c) in &self.terms {
            acc.push(g.clone(), f(g, c)?);
        }
        Ok(self.rebuild(&self.chart, self.degree, self.basis, acc))
    }

    pub fn filter_terms<F>(&self, mut keep: F) -> Form
    where
        F: FnMut(&[Generator]) -> bool,
    {
        Form {
            terms: self
                .terms
                .iter()
                .filter(|(g, _)| keep(g))
                .map(|(g, c)| (g.clone(), c.clone()))
                .collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, f: &ScalarExpr) -> Form {
        let mut acc = Terms::default();
        for (g, c) in &self.terms {
            acc.push(g.clone(), c * f);
        }
        self.rebuild(&self.chart, self.degree, self.basis, acc)
    }

    fn joint_chart(&self, other: &Form) -> Result<JetChart> {
        if !self.chart.same_bundle(&other.chart) {
            return Err(Error::Dimension {
                expected: self.chart.base_dim(),
                found: other.chart.base_dim(),
            });
        }
        if self.basis != other.basis && self.degree > 0 && other.degree > 0 {
            return Err(Error::Basis(format!(
                "cannot combine a {} form with a {} form",
                self.basis, other.basis
            )));
        }
        Ok(if self.order() >= other.order() {
            self.chart.clone()
        } else {
            other.chart.clone()
        })
    }

    fn joint_basis(&self, other: &Form) -> Basis {
        if self.degree == 0 {
            other.basis
        } else {
            self.basis
        }
    }

    pub fn add(&self, other: &Form) -> Result<Form> {
        let chart = self.joint_chart(other)?;
        if self.degree != other.degree {
            return Err(Error::Degree(format!(
                "cannot add a {}-form and a {}-form",
                self.degree, other.degree
            )));
        }
        let mut acc = Terms::default();
        for (g, c) in self.terms.iter().chain(other.terms.iter()) {
            acc.push(g.clone(), c.clone());
        }
        Ok(self.rebuild(&chart, self.degree, self.joint_basis(other), acc))
    }

    pub fn sub(&self, other: &Form) -> Result<Form> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Form {
        self.scale(&ScalarExpr::int(-1))
    }

    pub fn sum<'a>(chart: &JetChart, degree: usize, basis: Basis, forms: impl IntoIterator<Item = &'a Form>) -> Result<Form> {
        let mut acc = Form::zero(chart, degree, basis);
        let mut terms = Terms::default();
        for f in forms {
            let joint = acc.joint_chart(f)?;
            if f.degree != degree {
                return Err(Error::Degree(format!("cannot add a {}-form to {degree}-forms", f.degree)));
            }
            acc.chart = joint;
            for (g, c) in &f.terms {
                terms.push(g.clone(), c.clone());
            }
        }
        let chart = acc.chart.clone();
        Ok(acc.rebuild(&chart, degree, basis, terms))
    }

    pub fn wedge(&self, other: &Form) -> Result<Form> {
        let chart = self.joint_chart(other)?;
        let mut acc = Terms::default();
        for (ga, ca) in &self.terms {
            for (gb, cb) in &other.terms {
                let mut g = ga.clone();
                g.extend(gb.iter().cloned());
                acc.push(g, ca * cb);
            }
        }
        Ok(self.rebuild(&chart, self.degree + other.degree, self.joint_basis(other), acc))
    }

    /// Semantic zero test of every coefficient.
    pub fn is_zero(&self, mode: CheckMode) -> Result<bool> {
        Ok(self.find_nonzero(mode)?.is_none())
    }

    pub fn find_nonzero(&self, mode: CheckMode) -> Result<Option<(Vec<Generator>, Counterexample)>> {
        let coeffs: Vec<ScalarExpr> = self.terms.values().cloned().collect();
        let keys: Vec<&Vec<Generator>> = self.terms.keys().collect();
        Ok(all_zero(&coeffs, mode, self.chart.registry())?
            .map(|cx| (keys[cx.index].clone(), cx)))
    }

    /// `self − other` vanishes; both are converted to the same basis first.
    pub fn equivalent(&self, other: &Form, mode: CheckMode) -> Result<bool> {
        let (a, b) = match (self.basis, other.basis) {
            (x, y) if x == y || self.degree == 0 => (self.clone(), other.clone()),
            (Basis::Raw, _) => (self.clone(), other.to_raw_basis()?),
            (Basis::Contact, _) => (self.to_raw_basis()?, other.clone()),
        };
        a.sub(&b)?.is_zero(mode)
    }

    /// Normalizes every coefficient to its expanded normal form.
    pub fn normalize(&self) -> Form {
        let mut acc = Terms::default();
        for (g, c) in &self.terms {
            acc.push(g.clone(), c.normalize());
        }
        self.rebuild(&self.chart, self.degree, self.basis, acc)
    }

    /// Number of non-horizontal factors per term.
    pub fn contact_degrees(&self) -> Vec<usize> {
        self.terms
            .keys()
            .map(|g| g.iter().filter(|x| !x.is_horizontal()).count())
            .collect()
    }

    pub fn is_horizontal(&self) -> bool {
        self.terms.keys().all(|g| g.iter().all(Generator::is_horizontal))
    }

    /// Exterior derivative of a RAW form; `d` of every generator is zero.
    pub fn exterior_d(&self) -> Result<Form> {
        if self.basis == Basis::Contact && self.degree > 0 {
            return Err(Error::Basis("exterior_d expects a RAW form; convert first".into()));
        }
        let reg = self.chart.registry();
        let mut acc = Terms::default();
        for (gens, c) in &self.terms {
            for s in c.coordinates(reg)? {
                let ds = match &s {
                    Symbol::Base(l) => Generator::Dx(*l),
                    Symbol::Jet { fiber, index } => Generator::dy(*fiber, index.clone()),
                    Symbol::Func(_) => unreachable!("coordinates expand function symbols"),
                };
                let mut g = vec![ds];
                g.extend(gens.iter().cloned());
                acc.push(g, c.partial(&s, reg)?);
            }
        }
        Ok(self.rebuild(&self.chart, self.degree + 1, Basis::Raw, acc))
    }

    /// Rewrites `dy^i_γ = θ^i_γ + y^i_{γ+λ} dx^λ`; lands on `J_{r+1}`.
    pub fn to_contact_basis(&self) -> Result<Form> {
        if self.basis == Basis::Contact {
            return Ok(self.clone());
        }
        let n = self.chart.base_dim();
        let acc = self.substitute_generators(|g| match g {
            Generator::Dy { fiber, index } => {
                let mut out = vec![(Generator::theta(*fiber, index.clone()), ScalarExpr::one())];
                for l in 0..n {
                    out.push((Generator::Dx(l), ScalarExpr::jet(*fiber, index.incremented(l))));
                }
                out
            }
            other => vec![(other.clone(), ScalarExpr::one())],
        });
        Ok(self.rebuild(&self.chart.prolong(), self.degree, Basis::Contact, acc))
    }

    /// Inverse rewriting `θ^i_γ = dy^i_γ − y^i_{γ+λ} dx^λ`.
    pub fn to_raw_basis(&self) -> Result<Form> {
        if self.basis == Basis::Raw {
            return Ok(self.clone());
        }
        let n = self.chart.base_dim();
        let mut order = self.order();
        for g in self.terms.keys().flatten() {
            if let Generator::Theta { index, .. } = g {
                order = order.max(index.order() + 1);
            }
        }
        let acc = self.substitute_generators(|g| match g {
            Generator::Theta { fiber, index } => {
                let mut out = vec![(Generator::dy(*fiber, index.clone()), ScalarExpr::one())];
                for l in 0..n {
                    out.push((Generator::Dx(l), -ScalarExpr::jet(*fiber, index.incremented(l))));
                }
                out
            }
            other => vec![(other.clone(), ScalarExpr::one())],
        });
        Ok(self.rebuild(&self.chart.at_order(order), self.degree, Basis::Raw, acc))
    }

    fn substitute_generators<F>(&self, rule: F) -> Terms
    where
        F: Fn(&Generator) -> Vec<(Generator, ScalarExpr)>,
    {
        let mut acc = Terms::default();
        for (gens, c) in &self.terms {
            let mut partial: Vec<(Vec<Generator>, Vec<ScalarExpr>)> = vec![(Vec::new(), vec![c.clone()])];
            for g in gens {
                let choices = rule(g);
                let mut next = Vec::with_capacity(partial.len() * choices.len());
                for (pg, pc) in &partial {
                    for (cg, cc) in &choices {
                        if pg.contains(cg) {
                            continue;
                        }
                        let mut g2 = pg.clone();
                        g2.push(cg.clone());
                        let mut c2 = pc.clone();
                        c2.push(cc.clone());
                        next.push((g2, c2));
                    }
                }
                partial = next;
            }
            for (g, cs) in partial {
                acc.push(g, ScalarExpr::product(cs));
            }
        }
        acc
    }

    /// Components by contact degree: entry `c` holds the terms with `c`
    /// θ factors and `k − c` dx factors. Converts RAW input first.
    pub fn contact_split(&self) -> Result<Vec<Form>> {
        let a = self.to_contact_basis()?;
        Ok((0..=a.degree)
            .map(|c| a.filter_terms(|g| g.iter().filter(|x| !x.is_horizontal()).count() == c))
            .collect())
    }

    /// Contact-degree-`c` component (after conversion).
    pub fn contact_component(&self, c: usize) -> Result<Form> {
        let a = self.to_contact_basis()?;
        Ok(a.filter_terms(|g| g.iter().filter(|x| !x.is_horizontal()).count() == c))
    }

    /// `h(α)`: the purely horizontal component; degree must be `≤ n`.
    pub fn horizontalize(&self) -> Result<Form> {
        if self.degree > self.chart.base_dim() {
            return Err(Error::Degree(format!(
                "h is applied to {}-forms with k ≤ n = {}; got k = {}",
                self.degree,
                self.chart.base_dim(),
                self.degree
            )));
        }
        self.contact_component(0)
    }

    /// `v(α) = α − h(α)` in the CONTACT basis.
    pub fn verticalize(&self) -> Result<Form> {
        let h = self.horizontalize()?;
        self.to_contact_basis()?.sub(&h)
    }

    fn require_contact(&self, op: &str) -> Result<()> {
        if self.basis == Basis::Raw && self.terms.keys().flatten().any(|g| !g.fits(Basis::Contact)) {
            return Err(Error::Basis(format!("{op} expects a CONTACT form; convert first")));
        }
        Ok(())
    }

    /// Horizontal differential; raises the jet order by one.
    pub fn d_h(&self) -> Result<Form> {
        self.require_contact("d_H")?;
        let n = self.chart.base_dim();
        let mut acc = Terms::default();
        for (gens, c) in &self.terms {
            for l in 0..n {
                let dc = self.chart.total_derivative_unchecked(l, c)?;
                let mut g = vec![Generator::Dx(l)];
                g.extend(gens.iter().cloned());
                acc.push(g, dc);
            }
            // d_H θ_γ = dx^λ ∧ θ_{γ+λ}, passing j one-forms on the way
            for (j, gj) in gens.iter().enumerate() {
                if let Generator::Theta { fiber, index } = gj {
                    let signed = if j % 2 == 0 { c.clone() } else { -c };
                    for l in 0..n {
                        let mut g = gens[..j].to_vec();
                        g.push(Generator::Dx(l));
                        g.push(Generator::theta(*fiber, index.incremented(l)));
                        g.extend(gens[j + 1..].iter().cloned());
                        acc.push(g, signed.clone());
                    }
                }
            }
        }
        Ok(self.rebuild(&self.chart.prolong(), self.degree + 1, Basis::Contact, acc))
    }

    /// Vertical differential `d_V f = ∂f/∂y^i_γ θ^i_γ`; `d_V` of generators is 0.
    pub fn d_v(&self) -> Result<Form> {
        self.require_contact("d_V")?;
        let reg = self.chart.registry();
        let mut acc = Terms::default();
        for (gens, c) in &self.terms {
            for s in c.coordinates(reg)? {
                if let Symbol::Jet { fiber, index } = &s {
                    let mut g = vec![Generator::theta(*fiber, index.clone())];
                    g.extend(gens.iter().cloned());
                    acc.push(g, c.partial(&s, reg)?);
                }
            }
        }
        Ok(self.rebuild(&self.chart, self.degree + 1, Basis::Contact, acc))
    }

    /// Iterated contraction `∂_{λ_k} ⌟ … ∂_{λ_1} ⌟ α` of a horizontal form.
    pub fn interior_horizontal(&self, directions: &[usize]) -> Result<Form> {
        if !self.is_horizontal() {
            return Err(Error::Basis("contraction with ∂_λ needs a purely horizontal form".into()));
        }
        let mut cur = self.clone();
        for &l in directions {
            if l >= self.chart.base_dim() {
                return Err(Error::Dimension {
                    expected: self.chart.base_dim(),
                    found: l + 1,
                });
            }
            if cur.degree == 0 {
                return Err(Error::Degree("cannot contract a 0-form".into()));
            }
            let mut acc = Terms::default();
            for (gens, c) in &cur.terms {
                if let Some(j) = gens.iter().position(|g| *g == Generator::Dx(l)) {
                    let mut g = gens.clone();
                    g.remove(j);
                    let c = if j % 2 == 0 { c.clone() } else { -c };
                    acc.push(g, c);
                }
            }
            cur = cur.rebuild(&cur.chart.clone(), cur.degree - 1, cur.basis, acc);
        }
        Ok(cur)
    }

    /// Highest jet order actually used, read in the RAW basis: coefficient
    /// orders and the orders of `dy` factors.
    pub fn measured_order(&self, mode: CheckMode) -> Result<u32> {
        let raw = self.to_raw_basis()?;
        let mut best = 0;
        for (gens, c) in &raw.terms {
            for g in gens {
                if let Generator::Dy { index, .. } = g {
                    best = best.max(index.order());
                }
            }
            best = best.max(raw.chart.measured_order(c, mode)?);
        }
        Ok(best)
    }
}

fn check_generator(chart: &JetChart, g: &Generator, basis: Basis) -> Result<()> {
    if !g.fits(basis) {
        return Err(Error::Basis(format!("generator {g} in a {basis} form")));
    }
    match g {
        Generator::Dx(l) => chart.check_coordinate(&Symbol::Base(*l)),
        Generator::Dy { fiber, index } | Generator::Theta { fiber, index } => {
            chart.check_coordinate(&Symbol::jet(*fiber, index.clone()))
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
    fn wedge_examples() {
        let c = JetChart::new(2, 1, 0).unwrap();
        let dx1 = Form::dx(&c, 0, Basis::Raw).unwrap();
        let dx2 = Form::dx(&c, 1, Basis::Raw).unwrap();
        assert!(dx1.wedge(&dx1).unwrap().is_empty());
        let s = dx1.wedge(&dx2).unwrap().add(&dx2.wedge(&dx1).unwrap()).unwrap();
        assert!(s.is_empty());
        let y = c.y(0, mi(&[0, 0]));
        let a = dx1.scale(&y).wedge(&dx2.scale(&c.x(0))).unwrap();
        assert_eq!(a.coefficient(&[Generator::Dx(0), Generator::Dx(1)]), &c.x(0) * &y);
    }

    #[test]
    fn d_examples() {
        let c = JetChart::new(1, 1, 0).unwrap();
        let y = Form::scalar(&c, c.y(0, mi(&[0])), Basis::Raw);
        assert_eq!(y.exterior_d().unwrap(), Form::dy(&c, 0, mi(&[0])).unwrap());
        let c2 = JetChart::new(2, 1, 0).unwrap();
        let f = Form::dx(&c2, 1, Basis::Raw).unwrap().scale(&c2.x(0));
        let df = f.exterior_d().unwrap();
        assert_eq!(df.coefficient(&[Generator::Dx(0), Generator::Dx(1)]), ScalarExpr::one());
    }

    #[test]
    fn contact_conversion() {
        let c = JetChart::new(1, 1, 1).unwrap();
        let dy = Form::dy(&c, 0, mi(&[0])).unwrap();
        let t = dy.to_contact_basis().unwrap();
        assert_eq!(t.coefficient(&[Generator::theta(0, mi(&[0]))]), ScalarExpr::one());
        assert_eq!(t.coefficient(&[Generator::Dx(0)]), c.y(0, mi(&[1])));
        assert!(t.to_raw_basis().unwrap().sub(&dy).unwrap().is_empty());
        let dy1 = Form::dy(&c, 0, mi(&[1])).unwrap().to_contact_basis().unwrap();
        assert_eq!(dy1.coefficient(&[Generator::Dx(0)]), c.y(0, mi(&[2])));
        assert_eq!(dy1.order(), 2);
    }

    #[test]
    fn omega_contractions() {
        let c = JetChart::new(2, 1, 0).unwrap();
        let w1 = Form::omega(&c, Basis::Contact, &[0]).unwrap();
        assert_eq!(w1.coefficient(&[Generator::Dx(1)]), ScalarExpr::one());
        let w2 = Form::omega(&c, Basis::Contact, &[1]).unwrap();
        assert_eq!(w2.coefficient(&[Generator::Dx(0)]), ScalarExpr::int(-1));
        assert!(Form::omega(&c, Basis::Contact, &[0, 0]).unwrap().is_empty());
        let c1 = JetChart::new(1, 1, 0).unwrap();
        let w = Form::omega(&c1, Basis::Contact, &[0]).unwrap();
        assert_eq!(w.degree(), 0);
        assert_eq!(w.coefficient(&[]), ScalarExpr::one());
    }

    #[test]
    fn d_h_of_theta() {
        let c = JetChart::new(2, 1, 1).unwrap();
        let th = Form::theta(&c, 0, mi(&[0, 0])).unwrap();
        let d = th.d_h().unwrap();
        assert_eq!(
            d.coefficient(&[Generator::Dx(0), Generator::theta(0, mi(&[1, 0]))]),
            ScalarExpr::one()
        );
        assert_eq!(
            d.coefficient(&[Generator::Dx(1), Generator::theta(0, mi(&[0, 1]))]),
            ScalarExpr::one()
        );
        assert_eq!(d.len(), 2);
    }
}
