use criterion::{black_box, criterion_group, criterion_main, Criterion};
use jetvar_core::forms::Basis;
use jetvar_core::jetchart::JetChart;
use jetvar_core::random::{self, Bounds};
use jetvar_core::varcalc;
use jetvar_core::CheckMode;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(11)
}

fn normal_form(c: &mut Criterion) {
    let mut r = rng();
    let chart = JetChart::new(3, 2, 2).unwrap();
    let b = Bounds::default();
    let e = &random::coefficient(&mut r, &chart, &b) * &random::coefficient(&mut r, &chart, &b);
    let f = e.powu(3);
    c.bench_function("normal form of a cubed product", |bch| bch.iter(|| black_box(&f).normal_form()));
}

fn total_derivative(c: &mut Criterion) {
    let mut r = rng();
    let chart = JetChart::new(2, 2, 2).unwrap();
    let f = random::coefficient(&mut r, &chart, &Bounds::default());
    c.bench_function("total derivative n=2 r=2", |bch| bch.iter(|| chart.total_derivative(1, black_box(&f)).unwrap()));
}

fn exterior(c: &mut Criterion) {
    let mut r = rng();
    let chart = JetChart::new(2, 1, 2).unwrap();
    let form = random::form(&mut r, &chart, Basis::Raw, 2, &Bounds::default()).unwrap();
    c.bench_function("d of a raw 2-form", |bch| bch.iter(|| black_box(&form).exterior_d().unwrap()));
    c.bench_function("contact split of a raw 2-form", |bch| bch.iter(|| black_box(&form).contact_split().unwrap()));
}

fn variational(c: &mut Criterion) {
    let mut r = rng();
    let chart = JetChart::new(2, 1, 2).unwrap();
    let b = Bounds::default();
    let l = random::lagrangian(&mut r, &chart, &b).unwrap();
    c.bench_function("Euler-Lagrange n=2 r=2", |bch| bch.iter(|| varcalc::euler_lagrange(black_box(&l)).unwrap()));
    let g = random::generating_form(&mut r, &chart, 3, &b).unwrap();
    c.bench_function("Kolar decomposition order 3", |bch| bch.iter(|| varcalc::kolar_decompose(black_box(&g)).unwrap()));
    c.bench_function("Poincare-Cartan n=2 r=2", |bch| {
        bch.iter(|| {
            let (p, _) = varcalc::canonical_poincare_cartan(black_box(&l)).unwrap();
            varcalc::poincare_cartan(&l, &p, CheckMode::Exact).unwrap()
        })
    });
}

criterion_group!(benches, normal_form, total_derivative, exterior, variational);
criterion_main!(benches);
