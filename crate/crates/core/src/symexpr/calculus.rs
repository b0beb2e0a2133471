use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;

use super::{Kind, Rational, Registry, ScalarExpr, Symbol};
use crate::error::{Error, Result};

/// Simultaneous substitution map.
pub type Substitution = BTreeMap<Symbol, ScalarExpr>;

impl ScalarExpr {
    /// Applies the derivation determined by its value on leaves. Results on
    /// shared sub-expressions are memoized, so the output stays a DAG of size
    /// linear in the input.
    pub fn derive_with<F>(&self, leaf: &mut F) -> Result<ScalarExpr>
    where
        F: FnMut(&Symbol) -> Result<ScalarExpr>,
    {
        let mut memo: HashMap<usize, ScalarExpr> = HashMap::new();
        derive_memo(self, leaf, &mut memo)
    }

    /// Partial derivative `∂e/∂s`, chaining through function symbols.
    pub fn partial(&self, s: &Symbol, reg: &Registry) -> Result<ScalarExpr> {
        let mut leaf = |atom: &Symbol| -> Result<ScalarExpr> {
            if atom == s {
                return Ok(ScalarExpr::one());
            }
            match atom {
                Symbol::Func(k) => {
                    let def = reg.get(k)?;
                    if def.args.contains(s) {
                        def.rules.get(s).cloned().ok_or_else(|| Error::MissingRule {
                            function: k.to_string(),
                            symbol: s.to_string(),
                        })
                    } else {
                        Ok(ScalarExpr::zero())
                    }
                }
                _ => Ok(ScalarExpr::zero()),
            }
        };
        self.derive_with(&mut leaf)
    }

    /// Simultaneous substitution: replacements are not themselves rewritten.
    /// Fails only when a negative power of a symbol is bound to a sum.
    pub fn substitute(&self, bindings: &Substitution) -> Result<ScalarExpr> {
        if bindings.is_empty() {
            return Ok(self.clone());
        }
        let mut memo: HashMap<usize, ScalarExpr> = HashMap::new();
        substitute_memo(self, bindings, &mut memo)
    }
}

fn derive_memo<F>(
    e: &ScalarExpr,
    leaf: &mut F,
    memo: &mut HashMap<usize, ScalarExpr>,
) -> Result<ScalarExpr>
where
    F: FnMut(&Symbol) -> Result<ScalarExpr>,
{
    if let Some(d) = memo.get(&e.addr()) {
        return Ok(d.clone());
    }
    let d = match e.kind() {
        Kind::Const(_) => ScalarExpr::zero(),
        Kind::Sym(s) => leaf(s)?,
        Kind::Add(ts) => {
            let mut parts = Vec::with_capacity(ts.len());
            for t in ts {
                let dt = derive_memo(t, leaf, memo)?;
                if !dt.is_literal_zero() {
                    parts.push(dt);
                }
            }
            ScalarExpr::sum(parts)
        }
        Kind::Mul(fs) => {
            let mut parts = Vec::new();
            for (j, f) in fs.iter().enumerate() {
                let df = derive_memo(f, leaf, memo)?;
                if df.is_literal_zero() {
                    continue;
                }
                let mut factors = Vec::with_capacity(fs.len());
                factors.push(df);
                factors.extend(fs.iter().enumerate().filter(|(i, _)| *i != j).map(|(_, x)| x.clone()));
                parts.push(ScalarExpr::product(factors));
            }
            ScalarExpr::sum(parts)
        }
        Kind::Pow(b, k) => {
            let db = derive_memo(b, leaf, memo)?;
            if db.is_literal_zero() {
                ScalarExpr::zero()
            } else {
                ScalarExpr::product([
                    ScalarExpr::constant(Rational::from_integer(BigInt::from(*k))),
                    b.pow(k - 1)?,
                    db,
                ])
            }
        }
    };
    memo.insert(e.addr(), d.clone());
    Ok(d)
}

fn substitute_memo(
    e: &ScalarExpr,
    bindings: &Substitution,
    memo: &mut HashMap<usize, ScalarExpr>,
) -> Result<ScalarExpr> {
    if let Some(d) = memo.get(&e.addr()) {
        return Ok(d.clone());
    }
    let out = match e.kind() {
        Kind::Const(_) => e.clone(),
        Kind::Sym(s) => bindings.get(s).cloned().unwrap_or_else(|| e.clone()),
        Kind::Add(ts) => ScalarExpr::sum(
            ts.iter()
                .map(|t| substitute_memo(t, bindings, memo))
                .collect::<Result<Vec<_>>>()?,
        ),
        Kind::Mul(fs) => ScalarExpr::product(
            fs.iter()
                .map(|t| substitute_memo(t, bindings, memo))
                .collect::<Result<Vec<_>>>()?,
        ),
        Kind::Pow(b, k) => substitute_memo(b, bindings, memo)?.pow(*k)?,
    };
    memo.insert(e.addr(), out.clone());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiindex::MultiIndex;

    fn y(i: &[u32]) -> ScalarExpr {
        ScalarExpr::jet(0, MultiIndex::new(i.to_vec()))
    }
    fn ys(i: &[u32]) -> Symbol {
        Symbol::jet(0, MultiIndex::new(i.to_vec()))
    }

    #[test]
    fn power_rule() {
        let reg = Registry::new();
        let e = &y(&[1]) * &y(&[1]);
        assert_eq!(e.partial(&ys(&[1]), &reg).unwrap(), ScalarExpr::int(2) * y(&[1]));
    }

    #[test]
    fn independent_coordinate() {
        let reg = Registry::new();
        let e = &ScalarExpr::base(0) + &y(&[0, 0]);
        assert!(e.partial(&ys(&[1, 0]), &reg).unwrap().is_literal_zero());
    }

    #[test]
    fn substitution_examples() {
        let e = y(&[1]).powu(2);
        let mut b = Substitution::new();
        b.insert(ys(&[1]), ScalarExpr::int(3));
        assert_eq!(e.substitute(&b).unwrap(), ScalarExpr::int(9));
        assert_eq!(e.substitute(&Substitution::new()).unwrap(), e);

        let x = ScalarExpr::base(0);
        let yy = y(&[0]);
        let mut swap = Substitution::new();
        swap.insert(Symbol::Base(0), yy.clone());
        swap.insert(ys(&[0]), x.clone());
        assert_eq!((&x * &yy).substitute(&swap).unwrap(), &yy * &x);
        let lin = &x + &(ScalarExpr::int(2) * &yy);
        assert_eq!(lin.substitute(&swap).unwrap(), &yy + &(ScalarExpr::int(2) * &x));
    }
}
