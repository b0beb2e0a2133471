//! Finite-dimensional spot checks over polynomial coefficient ansätze.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::{Lagrangian, Momentum, MomentumKey};
use crate::error::{Error, Result};
use crate::forms::{Basis, Form, Generator};
use crate::jetchart::JetChart;
use crate::linalg::{solve, Echelon, SparseRow};
use crate::multiindex::{enumerate_up_to, MultiIndex};
use crate::symexpr::{rational, Monomial, Rational, ScalarExpr, Symbol};

/// Shape of the momentum ansatz `q` in `d_H q = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MomentumAnsatz {
    /// `q = q^λ_i θ^i ∧ ω_λ`.
    OrderOne,
    /// Adds `q^{μλ}_i θ^i_μ ∧ ω_λ`; `symmetric` imposes `s(q) = 0`.
    OrderTwo { symmetric: bool },
    /// `n = 1`: `q = Σ_{k ≤ top} q^k_i θ^i_(k)`.
    Curve { top: u32 },
}

#[derive(Clone, Debug, Serialize)]
pub struct AnsatzReport {
    pub ansatz: MomentumAnsatz,
    pub n: usize,
    pub m: usize,
    /// Jet order of the coordinates the coefficients may depend on.
    pub coefficient_order: u32,
    pub degree: u32,
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    pub kernel_dim: usize,
}

/// Monomials of total degree `≤ degree` in `vars`.
pub fn monomials_up_to(vars: &[Symbol], degree: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one()];
    let mut frontier = vec![(Monomial::one(), 0usize)];
    for _ in 0..degree {
        let mut next = Vec::new();
        for (m, start) in &frontier {
            for (k, v) in vars.iter().enumerate().skip(*start) {
                let mm = m.mul(&Monomial::var(v.clone()));
                out.push(mm.clone());
                next.push((mm, k));
            }
        }
        frontier = next;
    }
    out
}

fn slots(ansatz: MomentumAnsatz, n: usize, m: usize) -> Result<Vec<Vec<(MomentumKey, Rational)>>> {
    let zero = MultiIndex::zero(n);
    let mut out = Vec::new();
    match ansatz {
        MomentumAnsatz::Curve { top } => {
            if n != 1 {
                return Err(Error::Domain("the curve ansatz needs n = 1".into()));
            }
            for i in 0..m {
                for k in 0..=top {
                    out.push(vec![((i, MultiIndex::new(vec![k]), 0), rational(1, 1))]);
                }
            }
        }
        MomentumAnsatz::OrderOne | MomentumAnsatz::OrderTwo { .. } => {
            for i in 0..m {
                for l in 0..n {
                    out.push(vec![((i, zero.clone(), l), rational(1, 1))]);
                }
            }
            if let MomentumAnsatz::OrderTwo { symmetric } = ansatz {
                for i in 0..m {
                    for mu in 0..n {
                        for l in 0..n {
                            let unit = MultiIndex::unit(n, mu);
                            if symmetric {
                                if mu > l {
                                    continue;
                                }
                                let mut s = vec![((i, unit, l), rational(1, 1))];
                                if mu != l {
                                    s.push(((i, MultiIndex::unit(n, l), mu), rational(1, 1)));
                                }
                                out.push(s);
                            } else {
                                out.push(vec![((i, unit, l), rational(1, 1))]);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Dimension of `{q in the ansatz : d_H q = 0}`: the freedom left in a
/// momentum once `d_H p` is fixed.
pub fn uniqueness_kernel(
    n: usize,
    m: usize,
    coefficient_order: u32,
    degree: u32,
    ansatz: MomentumAnsatz,
) -> Result<AnsatzReport> {
    let top = match ansatz {
        MomentumAnsatz::OrderOne => 0,
        MomentumAnsatz::OrderTwo { .. } => 1,
        MomentumAnsatz::Curve { top } => top,
    };
    let vars = JetChart::new(n, m, coefficient_order)?.coordinates();
    let chart = JetChart::new(n, m, coefficient_order.max(top))?;
    let monos = monomials_up_to(&vars, degree);
    let slot_list = slots(ansatz, n, m)?;
    let mut row_index: HashMap<(Vec<Generator>, Monomial), usize> = HashMap::new();
    let mut rows: Vec<SparseRow> = Vec::new();
    let mut col = 0;
    for slot in &slot_list {
        for mono in &monos {
            let c = mono.to_expr();
            let coeffs: BTreeMap<MomentumKey, ScalarExpr> =
                slot.iter().map(|(k, w)| (k.clone(), c.scale(w))).collect();
            let q = Momentum::new(&chart, coeffs)?;
            let dq = q.to_form().d_h()?;
            for (gens, coeff) in dq.terms() {
                for (m2, v) in coeff.normal_form().terms() {
                    let key = (gens.clone(), m2.clone());
                    let next = row_index.len();
                    let r = *row_index.entry(key).or_insert(next);
                    if r == rows.len() {
                        rows.push(SparseRow::new());
                    }
                    rows[r].insert(col, v.clone());
                }
            }
            col += 1;
        }
    }
    let mut e = Echelon::new();
    for r in &rows {
        e.insert(r.clone());
    }
    Ok(AnsatzReport {
        ansatz,
        n,
        m,
        coefficient_order,
        degree,
        unknowns: col,
        equations: rows.len(),
        rank: e.rank(),
        kernel_dim: col - e.rank(),
    })
}

#[derive(Clone, Debug)]
pub struct WitnessSearch {
    pub unknowns: usize,
    pub equations: usize,
    /// A RAW `n`-form `β` on `J_{r−1}` with `h(β) = λ`, if one exists in
    /// the ansatz.
    pub witness: Option<Form>,
}

/// Searches for `β` with `h(β) = λ` among RAW `n`-forms on `J_{r−1}` whose
/// coefficients are polynomials of degree `≤ degree`. Only for densities
/// without function symbols.
pub fn special_witness_search(lagrangian: &Lagrangian, degree: u32) -> Result<WitnessSearch> {
    let r = lagrangian.order();
    if r == 0 {
        return Err(Error::Order("special Lagrangians have order ≥ 1".into()));
    }
    let chart = lagrangian.chart().at_order(r - 1);
    let n = chart.base_dim();
    if lagrangian.density().atoms().iter().any(|s| matches!(s, Symbol::Func(_))) {
        return Err(Error::Domain("the witness search needs a density without function symbols".into()));
    }
    let mut gens: Vec<Generator> = (0..n).map(Generator::Dx).collect();
    for gamma in enumerate_up_to(n, r - 1) {
        for i in 0..chart.fiber_dim() {
            gens.push(Generator::dy(i, gamma.clone()));
        }
    }
    let wedges = combinations(&gens, n);
    let monos = monomials_up_to(&chart.coordinates(), degree);
    let volume: Vec<Generator> = (0..n).map(Generator::Dx).collect();
    let mut row_index: HashMap<Monomial, usize> = HashMap::new();
    let mut rows: Vec<SparseRow> = Vec::new();
    let mut basis = Vec::new();
    for w in &wedges {
        for mono in &monos {
            let col = basis.len();
            let b = Form::term(&chart, Basis::Raw, mono.to_expr(), w.clone())?;
            let h = b.horizontalize()?.coefficient(&volume);
            for (m2, v) in h.normal_form().terms() {
                let next = row_index.len();
                let r = *row_index.entry(m2.clone()).or_insert(next);
                if r == rows.len() {
                    rows.push(SparseRow::new());
                }
                rows[r].insert(col, v.clone());
            }
            basis.push(b);
        }
    }
    let target = lagrangian.density().normal_form();
    for (m2, _) in target.terms() {
        let next = row_index.len();
        let r = *row_index.entry(m2.clone()).or_insert(next);
        if r == rows.len() {
            rows.push(SparseRow::new());
        }
    }
    let rhs: HashMap<&Monomial, &Rational> = target.terms().collect();
    let mut system = vec![(SparseRow::new(), Rational::from_integer(0.into())); rows.len()];
    for (m2, r) in &row_index {
        system[*r] = (
            rows[*r].clone(),
            rhs.get(m2).map(|v| (*v).clone()).unwrap_or_else(|| Rational::from_integer(0.into())),
        );
    }
    let witness = match solve(&system, basis.len()) {
        None => None,
        Some(x) => {
            let parts: Vec<Form> = x.iter().map(|(c, v)| basis[*c].scale(&ScalarExpr::constant(v.clone()))).collect();
            Some(Form::sum(&chart, n, Basis::Raw, &parts)?)
        }
    };
    Ok(WitnessSearch {
        unknowns: basis.len(),
        equations: rows.len(),
        witness,
    })
}

fn combinations<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, x) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, x.clone());
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_count() {
        let vars: Vec<Symbol> = (0..5).map(Symbol::Base).collect();
        // C(5+3, 3)
        assert_eq!(monomials_up_to(&vars, 3).len(), 56);
    }

    #[test]
    fn curve_kernel_vanishes() {
        let rep = uniqueness_kernel(1, 1, 1, 2, MomentumAnsatz::Curve { top: 2 }).unwrap();
        assert_eq!(rep.kernel_dim, 0);
    }

    #[test]
    fn squared_gradient_has_no_witness() {
        let chart = JetChart::new(2, 1, 1).unwrap();
        let l = Lagrangian::new(&chart, chart.y(0, MultiIndex::new(vec![1, 0])).powu(2)).unwrap();
        assert!(special_witness_search(&l, 3).unwrap().witness.is_none());
        let affine = Lagrangian::new(&chart, &chart.x(0) * &chart.y(0, MultiIndex::new(vec![0, 1]))).unwrap();
        let found = special_witness_search(&affine, 2).unwrap().witness.unwrap();
        let h = found.horizontalize().unwrap();
        assert!(h.sub(&affine.form()).unwrap().is_zero(crate::symexpr::CheckMode::Exact).unwrap());
    }
}
