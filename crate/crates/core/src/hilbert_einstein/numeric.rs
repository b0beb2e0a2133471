//! Standalone exact curvature routines on bound jet values. Used as the
//! independent oracle for the symbolic construction.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::symexpr::Rational;

pub type Mat = [[Rational; 4]; 4];

fn mat(f: impl Fn(usize, usize) -> Rational) -> Mat {
    std::array::from_fn(|a| std::array::from_fn(|b| f(a, b)))
}

/// Inverse by Gauss–Jordan elimination.
pub fn inverse(m: &Mat) -> Result<Mat> {
    let mut a: Vec<Vec<Rational>> = (0..4)
        .map(|i| {
            let mut row = m[i].to_vec();
            row.extend((0..4).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    for c in 0..4 {
        let p = (c..4)
            .find(|r| !a[*r][c].is_zero())
            .ok_or_else(|| Error::Eval("singular metric".into()))?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for v in a[c].iter_mut() {
            *v *= &inv;
        }
        for r in 0..4 {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in 0..8 {
                    let t = &f * &a[c][k];
                    a[r][k] -= t;
                }
            }
        }
    }
    Ok(mat(|i, j| a[i][j + 4].clone()))
}

pub fn determinant(m: &Mat) -> Rational {
    let mut a: Vec<Vec<Rational>> = m.iter().map(|r| r.to_vec()).collect();
    let mut det = Rational::one();
    for c in 0..4 {
        let Some(p) = (c..4).find(|r| !a[*r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(c, p);
            det = -det;
        }
        det *= &a[c][c];
        for r in c + 1..4 {
            let f = &a[r][c] / &a[c][c];
            for k in c..4 {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    det
}

/// Exact square root of a non-negative rational square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let root = |b: &BigInt| {
        let s = b.sqrt();
        (&s * &s == *b).then_some(s)
    };
    Some(Rational::new(root(q.numer())?, root(q.denom())?))
}

/// `√(−det g)`; fails unless `−det g` is a positive rational square.
pub fn sqrt_minus_det(g: &Mat) -> Result<Rational> {
    let d = -determinant(g);
    if !d.is_positive() {
        return Err(Error::Eval(format!("−det g = {d} is not positive")));
    }
    rational_sqrt(&d).ok_or_else(|| Error::Eval(format!("−det g = {d} is not a rational square")))
}

/// Metric jet at a point: `g_{ab}`, `g_{ab,c}` and `g_{ab,cd}`, all
/// symmetric in the pair `ab` and in `cd`.
#[derive(Clone, Debug)]
pub struct MetricJet {
    pub g: Mat,
    pub d1: [[[Rational; 4]; 4]; 4],
    pub d2: [[[[Rational; 4]; 4]; 4]; 4],
}

#[derive(Clone, Debug)]
pub struct Curvature {
    pub ginv: Mat,
    pub sqrtg: Rational,
    /// `Γ^m_{ab}`.
    pub christoffel: [[[Rational; 4]; 4]; 4],
    pub ricci: Mat,
    pub scalar: Rational,
    /// `G_{ab} = R_{ab} − ½ s g_{ab}`.
    pub einstein_lower: Mat,
    /// `G^{ab}`.
    pub einstein_upper: Mat,
}

fn zero3() -> [[[Rational; 4]; 4]; 4] {
    std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| Rational::zero())))
}

impl MetricJet {
    /// Levi-Civita data computed directly from the coordinate formulas.
    pub fn curvature(&self) -> Result<Curvature> {
        let gi = inverse(&self.g)?;
        let sqrtg = sqrt_minus_det(&self.g)?;
        let (g, d1, d2) = (&self.g, &self.d1, &self.d2);
        let half = Rational::new(1.into(), 2.into());
        // first kind Γ_{s,ab} and its derivative
        let first = |s: usize, a: usize, b: usize| &d1[s][a][b] + &d1[s][b][a] - &d1[a][b][s];
        let first_d = |s: usize, a: usize, b: usize, r: usize| &d2[s][a][b][r] + &d2[s][b][a][r] - &d2[a][b][s][r];
        let mut gamma = zero3();
        for m in 0..4 {
            for a in 0..4 {
                for b in 0..4 {
                    let mut acc = Rational::zero();
                    for s in 0..4 {
                        acc += &gi[m][s] * first(s, a, b);
                    }
                    gamma[m][a][b] = &acc * &half;
                }
            }
        }
        // ∂_r g^{ms} = −g^{ma} g_{ab,r} g^{bs}
        let mut dgi = zero3();
        for m in 0..4 {
            for s in 0..4 {
                for r in 0..4 {
                    let mut acc = Rational::zero();
                    for a in 0..4 {
                        for b in 0..4 {
                            acc -= &gi[m][a] * &d1[a][b][r] * &gi[b][s];
                        }
                    }
                    dgi[m][s][r] = acc;
                }
            }
        }
        // ∂_r Γ^m_{ab}
        let dgamma = |m: usize, a: usize, b: usize, r: usize| {
            let mut acc = Rational::zero();
            for s in 0..4 {
                acc += &dgi[m][s][r] * first(s, a, b) + &gi[m][s] * first_d(s, a, b, r);
            }
            acc * &half
        };
        let ricci = mat(|a, b| {
            let mut acc = Rational::zero();
            for m in 0..4 {
                acc += dgamma(m, a, b, m) - dgamma(m, a, m, b);
                for l in 0..4 {
                    acc += &gamma[m][m][l] * &gamma[l][a][b] - &gamma[m][b][l] * &gamma[l][a][m];
                }
            }
            acc
        });
        let mut scalar = Rational::zero();
        for a in 0..4 {
            for b in 0..4 {
                scalar += &gi[a][b] * &ricci[a][b];
            }
        }
        let einstein_lower = mat(|a, b| &ricci[a][b] - &half * &scalar * &g[a][b]);
        let einstein_upper = mat(|a, b| {
            let mut acc = Rational::zero();
            for c in 0..4 {
                for d in 0..4 {
                    acc += &gi[a][c] * &gi[b][d] * &einstein_lower[c][d];
                }
            }
            acc
        });
        Ok(Curvature {
            ginv: gi,
            sqrtg,
            christoffel: gamma,
            ricci,
            scalar,
            einstein_lower,
            einstein_upper,
        })
    }

    /// Pushes the jet forward along the linear change `x' = M x`. All
    /// indices transform with `J = M⁻¹`.
    pub fn transformed(&self, m: &Mat) -> Result<MetricJet> {
        let j = inverse(m)?;
        let g = mat(|a, b| {
            let mut acc = Rational::zero();
            for p in 0..4 {
                for q in 0..4 {
                    acc += &j[p][a] * &j[q][b] * &self.g[p][q];
                }
            }
            acc
        });
        let mut d1 = zero3();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    let mut acc = Rational::zero();
                    for p in 0..4 {
                        for q in 0..4 {
                            for s in 0..4 {
                                acc += &j[p][a] * &j[q][b] * &j[s][c] * &self.d1[p][q][s];
                            }
                        }
                    }
                    d1[a][b][c] = acc;
                }
            }
        }
        // contract one index at a time
        let contract = |t: &[[[[Rational; 4]; 4]; 4]; 4], slot: usize| {
            let mut out: [[[[Rational; 4]; 4]; 4]; 4] = std::array::from_fn(|_| zero3());
            for i in 0..256 {
                let idx = [i / 64, (i / 16) % 4, (i / 4) % 4, i % 4];
                let mut acc = Rational::zero();
                for p in 0..4 {
                    let mut src = idx;
                    src[slot] = p;
                    acc += &j[p][idx[slot]] * &t[src[0]][src[1]][src[2]][src[3]];
                }
                out[idx[0]][idx[1]][idx[2]][idx[3]] = acc;
            }
            out
        };
        let mut d2 = self.d2.clone();
        for slot in 0..4 {
            d2 = contract(&d2, slot);
        }
        Ok(MetricJet { g, d1, d2 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::rational;

    fn minkowski() -> Mat {
        mat(|a, b| match (a, b) {
            (0, 0) => rational(-1, 1),
            (a, b) if a == b => rational(1, 1),
            _ => rational(0, 1),
        })
    }

    #[test]
    fn flat_has_no_curvature() {
        let jet = MetricJet {
            g: minkowski(),
            d1: zero3(),
            d2: std::array::from_fn(|_| zero3()),
        };
        let c = jet.curvature().unwrap();
        assert_eq!(c.sqrtg, rational(1, 1));
        assert!(c.scalar.is_zero());
        assert!(c.einstein_upper.iter().flatten().all(|v| v.is_zero()));
    }

    #[test]
    fn inverse_and_sqrt() {
        let g = mat(|a, b| if a == b { rational(a as i64 + 1, 1) } else { rational(1, 3) });
        let gi = inverse(&g).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                let mut acc = Rational::zero();
                for c in 0..4 {
                    acc += &g[a][c] * &gi[c][b];
                }
                assert_eq!(acc, if a == b { rational(1, 1) } else { rational(0, 1) });
            }
        }
        assert_eq!(rational_sqrt(&rational(9, 49)), Some(rational(3, 7)));
        assert_eq!(rational_sqrt(&rational(2, 1)), None);
        assert!(sqrt_minus_det(&g).is_err());
    }
}
