//! Randomized identities for the generated polynomials.

mod common;

use common::props::{self, MODELS};
use common::{config, nonzero_rational, small_rational};
use equigen_core::expansion::{gen_multinomial, partitions};
use equigen_core::rational::int;
use equigen_core::{Expansion, LocalModel, MPoly, Rational};
use num_traits::{One, Zero};
use proptest::prelude::*;

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn weighted_homogeneity_and_euler(idx in 0usize..10_000, alpha in nonzero_rational()) {
        props::homogeneity(idx, &alpha)?;
    }

    /// `(Σ_{i≤N} f^{(b)}_i u^i)^a = (1 + Σ c_k u^k)^b` mod `u^{N+1}`, at random points.
    #[test]
    fn power_consistency(
        which in 0usize..3,
        n in 1usize..=12,
        pt in prop::collection::vec(small_rational(), 3),
    ) {
        props::power_consistency(which, n, &pt)?;
    }

    /// `S = s(1 + Σ γ_m s^{-m})` and `s = S(1 + Σ θ_m S^{-m})` compose to the identity.
    #[test]
    fn theta_gamma_round_trip(
        which in 0usize..MODELS.len(),
        pt in prop::collection::vec(small_rational(), 4),
    ) {
        props::theta_gamma_round_trip(which, &pt)?;
    }

    /// `Θ^{(l)}_i` from partitions equals the `U^i` coefficient of `(1 + Σ θ_m U^m)^l`.
    #[test]
    fn theta_cap_against_series_power(
        which in 0usize..MODELS.len(),
        l in -6i64..=-1,
        pt in prop::collection::vec(small_rational(), 4),
    ) {
        props::theta_cap_against_series_power(which, l, &pt)?;
    }
}

#[test]
fn theta_cap_symbolic_agreement() {
    // the same identity as polynomials, for one model with three coefficients
    let m = LocalModel::new(4, 7).unwrap();
    let e = Expansion::new(m, 8);
    let vars = m.vars();
    let mut h = vec![MPoly::one(&vars)];
    h.extend((1..=8).map(|i| e.theta(i).clone()));
    let mul = |x: &[MPoly], y: &[MPoly]| -> Vec<MPoly> {
        (0..=8)
            .map(|k| (0..=k).fold(MPoly::zero(&vars), |acc, i| &acc + &(&x[i] * &y[k - i])))
            .collect()
    };
    // inverse of h by the recursion inv_m = -Σ_{k≥1} h_k inv_{m-k}
    let mut inv = vec![MPoly::one(&vars)];
    for mm in 1..=8 {
        let s = (1..=mm).fold(MPoly::zero(&vars), |acc, k| &acc + &(&h[k] * &inv[mm - k]));
        inv.push(-&s);
    }
    let p = (1..6).fold(inv.clone(), |acc, _| mul(&acc, &inv));
    for i in 0..=8 {
        assert_eq!(e.theta_cap(-6, i).unwrap(), p[i], "i = {i}");
    }
}

#[test]
fn partitions_of_small_numbers() {
    // p(n) with parts in [2, n]: 0 1 0 1 1 2 2 4 4 7 8 for n = 0..=10 (with p(0) = 1)
    let counts: Vec<usize> = (0..=10).map(|n| partitions(n, 2, None).len()).collect();
    assert_eq!(counts, vec![1, 0, 1, 1, 2, 2, 4, 4, 7, 8, 12]);
    let one = partitions(0, 2, None);
    assert_eq!(gen_multinomial(&int(5), &one[0]), Rational::one());
}

#[test]
fn double_point_big_f_is_a_monomial() {
    for b in (3..=15).step_by(2) {
        let m = LocalModel::new(2, b).unwrap();
        let f = Expansion::new(m, 2).big_f(1).unwrap();
        let half = Rational::new((b as i64).into(), 2.into());
        let part = &partitions(b as i64 + 1, 2, Some(2))[0];
        assert_eq!(f.num_terms(), 1);
        let c = f.coefficient(&[b.div_ceil(2)]);
        assert_eq!(c, gen_multinomial(&half, part));
        assert!(!c.is_zero());
    }
}
