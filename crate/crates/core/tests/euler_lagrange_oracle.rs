//! The Euler–Lagrange expression against a numerical first variation of the
//! action on `[0, 1]` for a variation vanishing to third order at both ends.

use jetvar_core::jetchart::JetChart;
use jetvar_core::random::{self, Bounds};
use jetvar_core::symexpr::{rational, Point};
use jetvar_core::varcalc::{self, Lagrangian};
use jetvar_core::{MultiIndex, Rational, Symbol};
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const EPS: (i64, i64) = (1, 10_000);
const INTERVALS: i64 = 200;
const TOL: f64 = 1e-6;

/// Polynomial in one variable, lowest coefficient first.
#[derive(Clone)]
struct Poly1(Vec<Rational>);

impl Poly1 {
    fn from_ints(c: &[i64]) -> Self {
        Poly1(c.iter().map(|&k| rational(k, 1)).collect())
    }

    fn mul(&self, o: &Poly1) -> Poly1 {
        let mut out = vec![rational(0, 1); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly1(out)
    }

    fn pow(&self, k: u32) -> Poly1 {
        (0..k).fold(Poly1::from_ints(&[1]), |acc, _| acc.mul(self))
    }

    fn derivative(&self) -> Poly1 {
        if self.0.len() < 2 {
            return Poly1::from_ints(&[0]);
        }
        Poly1(self.0.iter().enumerate().skip(1).map(|(k, c)| c * rational(k as i64, 1)).collect())
    }

    fn at(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(rational(0, 1), |acc, c| acc * x + c)
    }
}

/// Values of `x`, `q`, `q'`, … at `x` for a chart of order `r`.
fn jet_point(chart: &JetChart, q: &Poly1, x: &Rational) -> Point {
    let mut p = Point::new();
    p.insert(Symbol::Base(0), x.clone());
    let mut d = q.clone();
    for k in 0..=chart.order() {
        p.insert(Symbol::jet(0, MultiIndex::new(vec![k])), d.at(x));
        d = d.derivative();
    }
    p
}

/// Composite Simpson rule on `[0, 1]`.
fn simpson(f: impl Fn(&Rational) -> f64) -> f64 {
    let h = 1.0 / INTERVALS as f64;
    let sum: f64 = (0..=INTERVALS)
        .map(|k| {
            let w = if k == 0 || k == INTERVALS {
                1.0
            } else if k % 2 == 1 {
                4.0
            } else {
                2.0
            };
            w * f(&rational(k, INTERVALS))
        })
        .sum();
    sum * h / 3.0
}

fn action(l: &Lagrangian, q: &Poly1) -> f64 {
    let reg = l.chart().registry();
    simpson(|x| l.density().eval_at(&jet_point(l.chart(), q, x), reg).unwrap().to_f64().unwrap())
}

fn check(l: &Lagrangian, q: &Poly1, eta: &Poly1) -> (f64, f64) {
    let eps = Poly1(vec![rational(EPS.0, EPS.1)]);
    let plus = Poly1(add(&q.0, &eta.mul(&eps).0));
    let minus = Poly1(add(&q.0, &eta.mul(&Poly1(vec![-rational(EPS.0, EPS.1)])).0));
    let h = EPS.0 as f64 / EPS.1 as f64;
    let gateaux = (action(l, &plus) - action(l, &minus)) / (2.0 * h);
    let e = varcalc::euler_lagrange(l).unwrap();
    let ec = e.chart().clone();
    let reg = ec.registry();
    let paired = simpson(|x| {
        let v = e.components()[0].eval_at(&jet_point(&ec, q, x), reg).unwrap();
        (v * eta.at(x)).to_f64().unwrap()
    });
    (gateaux, paired)
}

fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| a.get(k).cloned().unwrap_or_default() + b.get(k).cloned().unwrap_or_default())
        .collect()
}

fn bump() -> Poly1 {
    // x³(1 − x)³(1 + x)
    Poly1::from_ints(&[0, 1]).pow(3).mul(&Poly1::from_ints(&[1, -1]).pow(3)).mul(&Poly1::from_ints(&[1, 1]))
}

#[test]
fn free_particle_variation() {
    let c = JetChart::new(1, 1, 1).unwrap();
    let l = Lagrangian::new(&c, c.y(0, MultiIndex::new(vec![1])).powu(2).scale(&rational(1, 2))).unwrap();
    let q = Poly1(vec![rational(1, 2), rational(1, 1), rational(-1, 3)]);
    let (g, p) = check(&l, &q, &bump());
    assert!((g - p).abs() <= TOL * (1.0 + p.abs()), "{g} vs {p}");
    assert!(p.abs() > 1e-3);
}

#[test]
fn random_lagrangians_match_first_variation() {
    let b = Bounds {
        max_n: 1,
        max_m: 1,
        max_order: 2,
        max_degree: 3,
        max_terms: 3,
    };
    let q = Poly1(vec![rational(1, 2), rational(1, 1), rational(-1, 3), rational(1, 5)]);
    for seed in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let chart = random::chart_in(&mut rng, &b, 1..=2);
        let l = random::lagrangian(&mut rng, &chart, &b).unwrap();
        let (g, p) = check(&l, &q, &bump());
        assert!((g - p).abs() <= TOL * (1.0 + p.abs()), "seed {seed}: {g} vs {p}");
    }
}
