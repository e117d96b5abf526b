#![allow(dead_code)]

pub mod props;

use equigen_core::rational::{int, rat};
use equigen_core::{LocalModel, Rational, TSeries};
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// `EQUIGEN_SEED` overrides the fixed default.
pub fn seed() -> u64 {
    std::env::var("EQUIGEN_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED)
}

pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed()),
        failure_persistence: None,
        max_shrink_iters: 256,
        ..Config::default()
    }
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (1i64..=7, 1i64..=4, any::<bool>()).prop_map(|(n, d, neg)| rat(if neg { -n } else { n }, d))
}

pub fn model(a: u32, b: u32) -> LocalModel {
    LocalModel::new(a, b).unwrap()
}

/// Truncated series in one variable with rational coefficients, used as an
/// oracle independent of the crate's series code.
#[derive(Clone, Debug, PartialEq)]
pub struct Ser(pub Vec<Rational>);

impl Ser {
    pub fn one(n: usize) -> Self {
        let mut v = vec![Rational::zero(); n];
        v[0] = Rational::one();
        Ser(v)
    }

    pub fn mul(&self, o: &Ser) -> Ser {
        let n = self.0.len();
        let mut out = vec![Rational::zero(); n];
        for i in 0..n {
            if self.0[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                out[i + j] += &self.0[i] * &o.0[j];
            }
        }
        Ser(out)
    }

    pub fn pow(&self, k: u32) -> Ser {
        (0..k).fold(Ser::one(self.0.len()), |acc, _| acc.mul(self))
    }

    /// Inverse of a series with constant term 1.
    pub fn inv(&self) -> Ser {
        let n = self.0.len();
        let mut out = vec![Rational::zero(); n];
        out[0] = Rational::one() / &self.0[0];
        for m in 1..n {
            let mut s = Rational::zero();
            for k in 1..=m {
                s += &self.0[k] * &out[m - k];
            }
            out[m] = -s * &out[0];
        }
        Ser(out)
    }

    /// `self(x)` for a series `x` without constant term.
    pub fn compose(&self, x: &Ser) -> Ser {
        let n = self.0.len();
        let mut out = Ser(vec![Rational::zero(); n]);
        let mut p = Ser::one(n);
        for c in &self.0 {
            for (o, q) in out.0.iter_mut().zip(&p.0) {
                *o += c * q;
            }
            p = p.mul(x);
        }
        out
    }

    pub fn powi(&self, l: i64) -> Ser {
        if l >= 0 {
            self.pow(l as u32)
        } else {
            self.inv().pow((-l) as u32)
        }
    }
}

/// Bivariate truncated series: `rows[m]` is the coefficient of `u^m`, itself a `t`-series.
#[derive(Clone, Debug, PartialEq)]
pub struct BiSer(pub Vec<TSeries>);

impl BiSer {
    pub fn one(n: usize, k: usize) -> Self {
        let mut v = vec![TSeries::zero(k); n];
        v[0] = TSeries::one(k);
        BiSer(v)
    }

    pub fn mul(&self, o: &BiSer) -> BiSer {
        let n = self.0.len();
        let k = self.0[0].modulus();
        let mut out = vec![TSeries::zero(k); n];
        for i in 0..n {
            for j in 0..n - i {
                out[i + j] = &out[i + j] + &(&self.0[i] * &o.0[j]);
            }
        }
        BiSer(out)
    }

    pub fn pow(&self, e: u32) -> BiSer {
        let n = self.0.len();
        let k = self.0[0].modulus();
        (0..e).fold(BiSer::one(n, k), |acc, _| acc.mul(self))
    }
}

/// Random `t`-series with `ord ≥ lo`.
pub fn t_series(lo: usize, k: usize) -> impl Strategy<Value = TSeries> {
    prop::collection::vec(-4i64..=4, k).prop_map(move |v| {
        let mut c: Vec<Rational> = v.into_iter().map(int).collect();
        for x in c.iter_mut().take(lo.min(k)) {
            *x = Rational::zero();
        }
        TSeries::from_coeffs(c, k)
    })
}
