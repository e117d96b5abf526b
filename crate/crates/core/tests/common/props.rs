//! Property bodies shared by the property suites and the acceptance report.

use std::collections::BTreeMap;
use std::sync::LazyLock;

use equigen_core::lifting::{compute_weights, lift_step, LiftState, OShape, OTerm, SingularConfig, TermTable};
use equigen_core::rational::int;
use equigen_core::series::{order_bound_audit, pm_identity_check, pm_required_smax, reparam_solve, PmVerdict};
use equigen_core::{Expansion, Homogeneity, LocalModel, MPoly, Rational, SigmaModel, TSeries};
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use super::{small_rational, t_series, BiSer, Ser};

type Check = Result<(), TestCaseError>;

pub const MODELS: [(u32, u32); 7] = [(2, 3), (2, 5), (3, 4), (3, 5), (4, 6), (4, 7), (5, 6)];

pub struct Generated {
    pub label: String,
    pub poly: MPoly,
    pub degree: u64,
}

pub static GENERATED: LazyLock<Vec<Generated>> = LazyLock::new(|| {
    let mut out = Vec::new();
    for (a, b) in MODELS {
        let m = LocalModel::new(a, b).unwrap();
        let e = Expansion::new(m, 8);
        let mut push = |label: String, poly: MPoly, degree: u64| out.push(Generated { label, poly, degree });
        for mm in 0..=8i64 {
            for beta in [b as i64, 1, -1, -(b as i64)] {
                push(format!("({a},{b}) f^({beta}/{a})_{mm}"), e.f(beta, mm), mm as u64);
            }
            push(format!("({a},{b}) gamma_{mm}"), e.gamma(mm as usize).clone(), mm as u64);
            push(format!("({a},{b}) theta_{mm}"), e.theta(mm as usize).clone(), mm as u64);
        }
        for l in -6i64..=-1 {
            for i in 0..=8 {
                push(format!("({a},{b}) Theta^({l})_{i}"), e.theta_cap(l, i).unwrap(), i as u64);
            }
        }
        for n in 1..a {
            push(format!("({a},{b}) F_-{n}"), e.big_f(n).unwrap(), (b + n) as u64);
        }
    }
    out
});

fn euler(p: &MPoly) -> MPoly {
    let vars = p.vars().clone();
    let mut acc = MPoly::zero(&vars);
    for (i, w) in vars.weights().iter().enumerate() {
        let term = &MPoly::var_at(&vars, i) * &p.diff_at(i);
        acc = &acc + &term.scale(&int(*w as i64));
    }
    acc
}

pub fn homogeneity(idx: usize, alpha: &Rational) -> Check {
    let g = &GENERATED[idx % GENERATED.len()];
    let scaled = g.poly.weighted_rescale(alpha);
    let expected = g.poly.scale(&num_traits::pow(alpha.clone(), g.degree as usize));
    prop_assert_eq!(scaled, expected, "{}", g.label);
    let h = g.poly.weighted_degree();
    prop_assert!(h == Homogeneity::Zero || h == Homogeneity::Homogeneous(g.degree), "{}", g.label);
    prop_assert_eq!(euler(&g.poly), g.poly.scale(&int(g.degree as i64)), "{}", g.label);
    Ok(())
}

/// `(Σ_{i≤N} f^{(b)}_i u^i)^a = (1 + Σ c_k u^k)^b` mod `u^{N+1}`, at a random point.
pub fn power_consistency(which: usize, n: usize, pt: &[Rational]) -> Check {
    let (a, b) = [(2u32, 3u32), (3, 4), (4, 6)][which];
    let m = LocalModel::new(a, b).unwrap();
    let e = Expansion::new(m, n);
    let point = &pt[..m.dim()];
    let t = Ser((0..=n as i64).map(|i| e.f(b as i64, i).eval(point).unwrap()).collect());
    let mut base = Ser::one(n + 1);
    for k in 2..=(a as usize).min(n) {
        base.0[k] = point[k - 2].clone();
    }
    prop_assert_eq!(t.pow(a), base.pow(b));
    Ok(())
}

/// `S = s(1 + Σ γ_m s^{-m})` and `s = S(1 + Σ θ_m S^{-m})` compose to the identity.
pub fn theta_gamma_round_trip(which: usize, pt: &[Rational]) -> Check {
    let (a, b) = MODELS[which];
    let n = 10;
    let m = LocalModel::new(a, b).unwrap();
    let e = Expansion::new(m, n);
    let point = &pt[..m.dim()];
    let g = Ser((0..=n).map(|i| if i == 0 { Rational::one() } else { e.gamma(i).eval(point).unwrap() }).collect());
    let h = Ser((0..=n).map(|i| if i == 0 { Rational::one() } else { e.theta(i).eval(point).unwrap() }).collect());
    // U = 1/S = u / G(u)
    let mut u = Ser(vec![Rational::zero(); n + 1]);
    u.0[1] = Rational::one();
    let big_u = u.mul(&g.inv());
    prop_assert_eq!(g.mul(&h.compose(&big_u)), Ser::one(n + 1));
    Ok(())
}

/// `Θ^{(l)}_i` from partitions equals the `U^i` coefficient of `(1 + Σ θ_m U^m)^l`, `i ≤ 8`.
pub fn theta_cap_against_series_power(which: usize, l: i64, pt: &[Rational]) -> Check {
    let (a, b) = MODELS[which];
    let m = LocalModel::new(a, b).unwrap();
    let e = Expansion::new(m, 8);
    let point = &pt[..m.dim()];
    let h = Ser((0..=8).map(|i| if i == 0 { Rational::one() } else { e.theta(i).eval(point).unwrap() }).collect());
    let direct = h.powi(l);
    for i in 0..=8 {
        prop_assert_eq!(e.theta_cap(l, i).unwrap().eval(point).unwrap(), direct.0[i].clone(), "i = {}", i);
    }
    Ok(())
}

/// `c(N)` with `ord c_i ≥ i` and `c(N+1) = c(N) + δ` with `ord δ_i ≥ i + 1`.
pub fn levels(a: u32, k: usize) -> impl Strategy<Value = (Vec<TSeries>, Vec<TSeries>)> {
    let cs: Vec<_> = (2..=a as usize).map(|i| t_series(i, k)).collect();
    let ds: Vec<_> = (2..=a as usize).map(|i| t_series(i + 1, k)).collect();
    (cs, ds).prop_map(|(c, d)| {
        let c1 = c.iter().zip(&d).map(|(x, y)| x + y).collect();
        (c, c1)
    })
}

pub fn reparam_case_for(a: u32) -> impl Strategy<Value = ReparamCase> {
    (1usize..=12, 0usize..=6).prop_flat_map(move |(k, extra)| {
        levels(a, k).prop_map(move |(c, c1)| (a, k, a as usize + extra, c, c1))
    })
}

/// `a ∈ {2, 3, 4}`, `K ≤ 12`, `a ≤ smax ≤ a + 6`.
pub fn reparam_case() -> impl Strategy<Value = ReparamCase> {
    (2u32..=4).prop_flat_map(reparam_case_for)
}

pub type ReparamCase = (u32, usize, usize, Vec<TSeries>, Vec<TSeries>);

/// `(1+E)^a + Σ c_k(N+1) u^k (1+E)^{a-k} = 1 + Σ c_k(N) u^k` mod `u^{smax+1}`, `u = 1/s`.
pub fn reparam_back_substitution((a, k, smax, c, c1): &ReparamCase) -> Check {
    let (a, k, smax) = (*a, *k, *smax);
    let m = LocalModel::new(a, a + 1).unwrap();
    let r = reparam_solve(&m, c, c1, smax).unwrap();
    let n = smax + 1;
    let mut one_e = BiSer::one(n, k);
    for i in 2..n {
        one_e.0[i] = r.e(i).unwrap();
    }
    let mut lhs = one_e.pow(a);
    let mut rhs = BiSer::one(n, k);
    for kk in 2..=(a as usize).min(n - 1) {
        let shifted = one_e.pow(a - kk as u32);
        for i in 0..n - kk {
            lhs.0[i + kk] = &lhs.0[i + kk] + &(&c1[kk - 2] * &shifted.0[i]);
        }
        rhs.0[kk] = &rhs.0[kk] + &c[kk - 2];
    }
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

pub fn order_bounds((a, k, smax, c, c1): &ReparamCase) -> Check {
    let m = LocalModel::new(*a, a + 1).unwrap();
    let r = reparam_solve(&m, c, c1, *smax).unwrap();
    let deltas: Vec<TSeries> = c.iter().zip(c1).map(|(x, y)| y - x).collect();
    let report = order_bound_audit(&r, &deltas).unwrap();
    prop_assert!(report.passed(), "{:?} (K = {})", report.violations(), k);
    Ok(())
}

pub type PmCase = (usize, usize, Vec<Rational>, Vec<Vec<i64>>);

pub fn pm_case() -> impl Strategy<Value = PmCase> {
    (
        0usize..5,
        1usize..=8,
        prop::collection::vec(small_rational(), 0..=2),
        prop::collection::vec(prop::collection::vec(-3i64..=3, 8), 6),
    )
}

/// Holds at the sufficient `smax`, inconclusive just below it.
pub fn pm_identity((which, k, g0, rows): &PmCase) -> Check {
    let k = *k;
    let (a, b) = [(2u32, 3u32), (2, 5), (3, 4), (3, 5), (4, 6)][*which];
    let model = SigmaModel { model: LocalModel::new(a, b).unwrap(), g0: g0.clone() };
    let mk = |row: &Vec<i64>, lo: usize| {
        let coeffs: Vec<Rational> = row
            .iter()
            .take(k)
            .enumerate()
            .map(|(i, &x)| if i < lo { Rational::zero() } else { int(x) })
            .collect();
        TSeries::from_coeffs(coeffs, k)
    };
    let dim = (a - 1) as usize;
    let c: Vec<TSeries> = (0..dim).map(|i| mk(&rows[i], i + 2)).collect();
    let c1: Vec<TSeries> = (0..dim).map(|i| &c[i] + &mk(&rows[i + 3], i + 3)).collect();
    let smax = pm_required_smax(&model, k);
    prop_assert_eq!(pm_identity_check(&model, &c, &c1, smax).unwrap(), PmVerdict::Holds);
    if smax > a as usize {
        prop_assert_eq!(pm_identity_check(&model, &c, &c1, smax - 1).unwrap(), PmVerdict::Inconclusive);
    }
    Ok(())
}

/// Raw material for one perturbation term: shape selector, exponents, extra t-power, coefficient.
pub type RawTerm = (u8, Vec<u32>, usize, i64, u32, u32);

pub fn raw_terms() -> impl Strategy<Value = Vec<RawTerm>> {
    prop::collection::vec(
        (0u8..3, prop::collection::vec(0u32..=2, 6), 0usize..=2, -3i64..=3, 0u32..8, 0u32..8),
        0..=3,
    )
}

/// Builds admissible terms: the `t`-power is raised until the weight bound of the shape holds.
pub fn provider(c: &SingularConfig, raw: &[Vec<RawTerm>]) -> TermTable {
    let w = compute_weights(c);
    let mut table = BTreeMap::new();
    let mut slot = 0;
    for (bi, p) in c.points.iter().enumerate() {
        for j in 1..p.a {
            let mut terms = Vec::new();
            for (kind, exps, extra, coeff, k, m) in raw.get(slot).cloned().unwrap_or_default() {
                let mut it = exps.into_iter();
                let blocks: Vec<Vec<u32>> = c
                    .points
                    .iter()
                    .enumerate()
                    .map(|(q, pq)| {
                        (2..=pq.a).map(|_| if q == bi || kind == 2 { it.next().unwrap_or(0) } else { 0 }).collect()
                    })
                    .collect();
                let weight: i64 = blocks
                    .iter()
                    .zip(&w.d)
                    .map(|(e, d)| *d as i64 * e.iter().enumerate().map(|(i, &x)| (i as i64 + 2) * x as i64).sum::<i64>())
                    .sum();
                let d = w.d[bi] as i64;
                let base = d * (p.b + j) as i64;
                let (shape, need) = if kind == 1 && p.a > 2 {
                    let (k, m) = (2 + k % (p.a - 1), 2 + m % (p.a - 1));
                    (OShape::Quadratic { k, m }, base - d * (k + m) as i64)
                } else {
                    (OShape::Higher, base + 1)
                };
                let t_pow = (need - weight).max(0) as usize + extra;
                terms.push(OTerm { coeff: int(coeff), t_pow, exps: blocks, shape });
            }
            table.insert((bi + 1, j), terms);
            slot += 1;
        }
    }
    TermTable(table)
}

pub fn witness(m: &LocalModel) -> Vec<Rational> {
    match (m.a, m.b) {
        (2, _) => vec![int(1)],
        (4, 6) => vec![int(0), int(1), int(0)],
        (3, _) => vec![int(1), int(1)],
        _ => panic!("no witness for {m}"),
    }
}


pub fn cfg(points: &[(u32, u32)]) -> SingularConfig {
    SingularConfig::new(points.iter().map(|&(a, b)| LocalModel::new(a, b).unwrap()).collect()).unwrap()
}

/// Runs three rounds of steps at `(2,3)`, `(4,6)` or `[(2,3),(2,5)]`; every step closes
/// one more order and leaves the lower coefficients untouched.
pub fn lift_steps_close_one_order(which: usize, raw: &[Vec<RawTerm>]) -> Check {
    let points: &[(u32, u32)] = [&[(2u32, 3u32)][..], &[(4, 6)], &[(2, 3), (2, 5)]][which];
    let c = cfg(points);
    let table = provider(&c, raw);
    let witnesses: Vec<Vec<Rational>> = c.points.iter().map(witness).collect();
    let w = compute_weights(&c);
    let kk = (w.d[0] * (c.points[0].b as u64 + 1)) as usize + 3;
    let mut state = LiftState::seed(&c, &witnesses, kk).unwrap();
    for _ in 0..3 {
        for blk in 1..=c.len() {
            let (next, rec) = lift_step(&state, blk, &table).unwrap();
            let b = &state.blocks[blk - 1];
            for (i, (old, new)) in b.c.iter().zip(&next.blocks[blk - 1].c).enumerate() {
                let keep = (b.d as usize * (i + 2) + rec.order).min(kk);
                prop_assert!((0..keep).all(|t| old.coeff(t) == new.coeff(t)));
            }
            let res = next.residuals(blk, &table).unwrap();
            for (j, r) in res.iter().enumerate() {
                let need = (b.d as usize * (b.model.b as usize + j + 1) + rec.order + 1).min(kk);
                prop_assert!(r.ord() >= need, "block {} eq {} ord {} < {}", blk, j + 1, r.ord(), need);
            }
            state = next;
        }
    }
    Ok(())
}
