//! Sparse exact linear algebra over the rationals.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::symexpr::Rational;

pub type SparseRow = BTreeMap<usize, Rational>;

/// Row echelon form built incrementally; each pivot row is normalized to a
/// leading 1.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: HashMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon::default()
    }

    /// Reduces `row` against the current pivots and stores it if it is
    /// independent. Returns the new pivot column, if any.
    pub fn insert(&mut self, mut row: SparseRow) -> Option<usize> {
        row.retain(|_, v| !v.is_zero());
        // pivot rows start at their pivot column, so eliminating in
        // ascending column order terminates
        while let Some((col, lead)) = row
            .iter()
            .find(|(c, _)| self.pivots.contains_key(c))
            .map(|(c, v)| (*c, v.clone()))
        {
            for (c, v) in &self.pivots[&col] {
                let entry = row.entry(*c).or_insert_with(Rational::zero);
                *entry -= &lead * v;
                if entry.is_zero() {
                    row.remove(c);
                }
            }
        }
        self.store(row)
    }

    fn store(&mut self, mut row: SparseRow) -> Option<usize> {
        let (&col, lead) = row.iter().next()?;
        let inv = lead.recip();
        for v in row.values_mut() {
            *v *= &inv;
        }
        self.pivots.insert(col, row);
        Some(col)
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    /// Basis of `{x : A x = 0}` over `columns` unknowns.
    pub fn nullspace(&self, columns: usize) -> Vec<SparseRow> {
        let reduced = self.reduced();
        let mut out = Vec::new();
        for free in (0..columns).filter(|c| !reduced.contains_key(c)) {
            let mut v = SparseRow::new();
            v.insert(free, Rational::one());
            for (p, row) in &reduced {
                if let Some(a) = row.get(&free) {
                    v.insert(*p, -a.clone());
                }
            }
            out.push(v);
        }
        out
    }

    /// Reduced row echelon form keyed by pivot column.
    pub fn reduced(&self) -> BTreeMap<usize, SparseRow> {
        let mut rows: BTreeMap<usize, SparseRow> =
            self.pivots.iter().map(|(c, r)| (*c, r.clone())).collect();
        let cols: Vec<usize> = rows.keys().rev().cloned().collect();
        for p in cols {
            let pivot_row = rows[&p].clone();
            for (q, row) in rows.iter_mut() {
                if *q == p {
                    continue;
                }
                if let Some(a) = row.get(&p).cloned() {
                    for (c, v) in &pivot_row {
                        let entry = row.entry(*c).or_insert_with(Rational::zero);
                        *entry -= &a * v;
                        if entry.is_zero() {
                            row.remove(c);
                        }
                    }
                }
            }
        }
        rows
    }
}

/// Solves `A x = b` for sparse rows of `A` and right-hand sides `b`.
/// Returns `None` when the system is inconsistent; otherwise a particular
/// solution with free variables set to zero.
pub fn solve(rows: &[(SparseRow, Rational)], columns: usize) -> Option<SparseRow> {
    let mut e = Echelon::new();
    for (row, rhs) in rows {
        let mut r = row.clone();
        if !rhs.is_zero() {
            r.insert(columns, rhs.clone());
        }
        if e.insert(r) == Some(columns) {
            return None;
        }
    }
    let reduced = e.reduced();
    let mut x = SparseRow::new();
    for (p, row) in reduced {
        if let Some(v) = row.get(&columns) {
            x.insert(p, v.clone());
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::rational;

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().map(|(c, v)| (*c, rational(*v, 1))).collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let mut e = Echelon::new();
        e.insert(row(&[(0, 1), (1, 2), (2, 3)]));
        e.insert(row(&[(0, 2), (1, 4), (2, 6)]));
        e.insert(row(&[(1, 1), (2, 1)]));
        assert_eq!(e.rank(), 2);
        let ns = e.nullspace(3);
        assert_eq!(ns.len(), 1);
        // check A v = 0 for the original rows
        let v = &ns[0];
        let get = |c: usize| v.get(&c).cloned().unwrap_or_else(Rational::zero);
        assert!((get(0) + get(1) * rational(2, 1) + get(2) * rational(3, 1)).is_zero());
        assert!((get(1) + get(2)).is_zero());
    }

    #[test]
    fn solve_consistency() {
        let rows = vec![(row(&[(0, 1), (1, 1)]), rational(2, 1)), (row(&[(0, 1), (1, -1)]), rational(0, 1))];
        let x = solve(&rows, 2).unwrap();
        assert_eq!(x[&0], rational(1, 1));
        assert_eq!(x[&1], rational(1, 1));
        let bad = vec![(row(&[(0, 1)]), rational(1, 1)), (row(&[(0, 2)]), rational(3, 1))];
        assert!(solve(&bad, 1).is_none());
    }
}
