mod common;

use jetvar_core::forms::{Basis, Form, Generator};
use jetvar_core::jetchart::JetChart;
use jetvar_core::{CheckMode, MultiIndex};

#[test]
fn horizontal_part_of_one_forms() {
    for seed in 0..20 {
        assert!(common::h_of_one_form(seed).unwrap(), "seed {seed}");
    }
}

#[test]
fn first_order_momentum_formula() {
    for seed in 0..20 {
        for n in 1..=3 {
            assert!(common::uniqueness_one_momentum(seed, n).unwrap(), "seed {seed} n {n}");
        }
    }
}

#[test]
fn second_order_momentum_formula() {
    for seed in 0..20 {
        for n in 1..=3 {
            let (formula, s_zero) = common::uniqueness_two_momentum(seed, n).unwrap();
            assert!(formula, "seed {seed} n {n}");
            assert!(s_zero, "seed {seed} n {n}");
        }
    }
}

#[test]
fn p_morphism_in_coordinates() {
    assert!(common::morphism_p_example().unwrap());
}

#[test]
fn s_morphism_in_coordinates() {
    for seed in 0..10 {
        assert!(common::morphism_s_example(seed).unwrap(), "seed {seed}");
    }
}

#[test]
fn free_particle_equation() {
    assert!(common::free_particle().unwrap());
}

#[test]
fn kolar_matches_direct_sum() {
    for seed in 0..30 {
        for top in 0..=3 {
            assert!(common::kolar_reconstruction(seed, top).unwrap(), "seed {seed} top {top}");
        }
    }
}

#[test]
fn horizontal_differential_of_contact_form() {
    // d_H θ_γ = dx^λ ∧ θ_{γ+λ}
    let c = JetChart::new(2, 1, 2).unwrap();
    let g = MultiIndex::new(vec![1, 0]);
    let dh = Form::theta(&c, 0, g.clone()).unwrap().d_h().unwrap();
    let expected = Form::from_terms(
        dh.chart(),
        2,
        Basis::Contact,
        (0..2).map(|l| {
            (
                vec![Generator::Dx(l), Generator::theta(0, g.incremented(l))],
                jetvar_core::ScalarExpr::one(),
            )
        }),
    )
    .unwrap();
    assert!(dh.equivalent(&expected, CheckMode::Exact).unwrap());
}
