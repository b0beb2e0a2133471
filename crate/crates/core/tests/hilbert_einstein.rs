use jetvar_core::hilbert_einstein::numeric::{self, Mat};
use jetvar_core::hilbert_einstein::{verify, HilbertEinstein, LorentzSampler};
use jetvar_core::symexpr::{rational, Degree};
use jetvar_core::Rational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn full_report_passes() {
    let report = verify(5, 11).unwrap();
    let text = serde_json::to_string_pretty(&report).unwrap();
    assert!(report.passed(), "{text}");
    assert_eq!(report.children.len(), 8);
}

#[test]
fn density_is_linear_in_second_derivatives() {
    let he = HilbertEinstein::new().unwrap();
    let second = he.metric.chart().jet_coordinates_of_order(2);
    assert_eq!(he.lagrangian_density().polynomial_degree_in(&second), Degree::Polynomial(1));
}

#[test]
fn flat_point_gives_zero() {
    let he = HilbertEinstein::new().unwrap();
    let mc = &he.metric;
    let eta: Mat = std::array::from_fn(|a| {
        std::array::from_fn(|b| match (a, b) {
            (0, 0) => rational(-1, 1),
            (a, b) if a == b => rational(1, 1),
            _ => rational(0, 1),
        })
    });
    let jet = numeric::MetricJet {
        g: eta,
        d1: std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| rational(0, 1)))),
        d2: std::array::from_fn(|_| {
            std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| rational(0, 1))))
        }),
    };
    let p = mc.point_of(&jet);
    let reg = mc.chart().registry();
    assert_eq!(he.lagrangian_density().eval_at(&p, reg).unwrap(), rational(0, 1));
    let e = he.euler_lagrange().unwrap();
    for c in e.components() {
        assert_eq!(c.eval_at(&p, reg).unwrap(), rational(0, 1));
    }
}

#[test]
fn euler_lagrange_transforms_as_a_density() {
    let he = HilbertEinstein::new().unwrap();
    let e = he.euler_lagrange().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let g = LorentzSampler::metric(&mut rng);
    let mut jet = he.metric.jet_of(&he.metric.sample_point(2, &mut rng)).unwrap();
    jet.g = g;
    // a fixed non-orthogonal, non-unimodular linear map
    let m: Mat = std::array::from_fn(|a| {
        std::array::from_fn(|b| {
            let v = if a == b { rational(2, 1) } else { rational(0, 1) };
            v + if b == (a + 1) % 4 { rational(1, 3) } else { Rational::from_integer(0.into()) }
        })
    });
    assert!(jetvar_core::hilbert_einstein::covariance_check(&e, &he.metric, &jet, &m).unwrap());
}
