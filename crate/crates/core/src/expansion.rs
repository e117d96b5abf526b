//! Generation of the obstruction polynomials.
//!
//! For a branch `(z, w) = (s^a, s^b + …)` deformed by `S^a = s^a + Σ c_k s^{a-k}`,
//! everything here is a coefficient of some fractional power of
//! `1 + Σ_{k=2}^{a} c_k s^{-k}`, indexed by restricted integer partitions:
//!
//! * `f^{(β)}_m`: coefficient of `s^{-m}` in `(1 + Σ c_k s^{-k})^{β/a}`;
//! * `γ_m = f^{(1)}_m`: the expansion `S = s(1 + Σ γ_m s^{-m})`;
//! * `θ_m`: the inverse change `s = S(1 + Σ θ_m S^{-m})`;
//! * `Θ^{(l)}_i`: coefficient of `S^{-i}` in `(s/S)^l`;
//! * `F_{-n} = Σ_{i=-n}^{-1} Θ^{(i)}_{i+n} f^{(b)}_{b-i}`.
//!
//! All of them are weighted homogeneous with weight `k` on `c_k`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::matrix::det_bareiss;
use crate::poly::{MPoly, VarSet};
use crate::rational::{factorial, int, Rational};

/// Multiplicities `λ(k)` of the parts of an integer partition.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PartitionMultiplicity(pub BTreeMap<u32, u32>);

impl PartitionMultiplicity {
    pub fn total(&self) -> u64 {
        self.0.iter().map(|(&k, &m)| k as u64 * m as u64).sum()
    }

    pub fn length(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn multiplicity(&self, part: u32) -> u32 {
        self.0.get(&part).copied().unwrap_or(0)
    }
}

impl fmt::Display for PartitionMultiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, m)| format!("{k}^{m}")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// All partitions of `n` into parts from `[lo, hi]` (`hi = None` means unbounded).
///
/// `n = 0` gives the single empty partition, negative `n` gives none.
pub fn partitions(n: i64, lo: u32, hi: Option<u32>) -> Vec<PartitionMultiplicity> {
    if n < 0 {
        return Vec::new();
    }
    let lo = lo.max(1);
    let hi = hi.unwrap_or(u32::MAX).min(n.max(0) as u32);
    let mut out = Vec::new();
    let mut current = BTreeMap::new();
    fill_partitions(n as u64, hi, lo, &mut current, &mut out);
    out
}

fn fill_partitions(
    rest: u64,
    max_part: u32,
    lo: u32,
    current: &mut BTreeMap<u32, u32>,
    out: &mut Vec<PartitionMultiplicity>,
) {
    if rest == 0 {
        out.push(PartitionMultiplicity(current.clone()));
        return;
    }
    let mut part = max_part.min(rest as u32);
    while part >= lo {
        let max_mult = rest / part as u64;
        for mult in (1..=max_mult).rev() {
            current.insert(part, mult as u32);
            fill_partitions(rest - mult * part as u64, part - 1, lo, current, out);
        }
        current.remove(&part);
        part -= 1;
    }
}

/// `∏_{i<Σβ} (α - i) / ∏ β_j!`, the coefficient of `∏ x_j^{β_j}` in `(1 + Σ x_j)^α`.
pub fn gen_multinomial(alpha: &Rational, lambda: &PartitionMultiplicity) -> Rational {
    let total = lambda.length();
    let mut num = Rational::one();
    for i in 0..total {
        num *= alpha - int(i as i64);
    }
    let den = lambda
        .0
        .values()
        .fold(BigInt::one(), |acc, &b| acc * factorial(b));
    num / Rational::from_integer(den)
}

/// Local model `(s^a, s^b + …)` of a singular branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LocalModel {
    pub a: u32,
    pub b: u32,
}

impl LocalModel {
    pub fn new(a: u32, b: u32) -> Result<Self> {
        if a < 2 {
            return usage(format!("multiplicity a = {a} must be at least 2"));
        }
        if b <= a {
            return usage(format!("b = {b} must exceed a = {a}"));
        }
        if b.is_multiple_of(a) {
            return usage(format!(
                "b = {b} is a multiple of a = {a}; the local parameterization is normalized so that a does not divide b"
            ));
        }
        Ok(LocalModel { a, b })
    }

    pub fn vars(&self) -> Arc<VarSet> {
        VarSet::coefficients(self.a)
    }

    /// Number of coordinates `c_2, …, c_a`.
    pub fn dim(&self) -> usize {
        (self.a - 1) as usize
    }
}

impl fmt::Display for LocalModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// Local model together with the first coefficients of `g_0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaModel {
    pub model: LocalModel,
    /// Coefficients of `s^{b+1}, s^{b+2}, …` in the parameterization.
    pub g0: Vec<Rational>,
}

impl SigmaModel {
    pub fn plain(model: LocalModel) -> Self {
        SigmaModel { model, g0: Vec::new() }
    }
}

/// `f^{(β)}_m` with `β = beta_num / a`.
pub fn f_coeff(model: &LocalModel, beta_num: i64, m: i64) -> MPoly {
    f_coeff_over(&model.vars(), model.a, beta_num, m)
}

fn f_coeff_over(vars: &Arc<VarSet>, a: u32, beta_num: i64, m: i64) -> MPoly {
    let alpha = Rational::new(beta_num.into(), (a as i64).into());
    let mut out = MPoly::zero(vars);
    for lambda in partitions(m, 2, Some(a)) {
        let c = gen_multinomial(&alpha, &lambda);
        let exps = (2..=a).map(|k| lambda.multiplicity(k)).collect();
        out = &out + &MPoly::monomial(vars, exps, c);
    }
    out
}

pub fn gamma_coeff(model: &LocalModel, i: i64) -> Result<MPoly> {
    if i < 2 {
        return usage(format!("gamma index {i} must be at least 2"));
    }
    Ok(f_coeff(model, 1, i))
}

/// Truncated power series in an auxiliary variable with polynomial coefficients.
#[derive(Clone, Debug)]
struct PolySeries(Vec<MPoly>);

impl PolySeries {
    fn zero(vars: &Arc<VarSet>, len: usize) -> Self {
        PolySeries(vec![MPoly::zero(vars); len])
    }

    fn mul(&self, other: &PolySeries) -> PolySeries {
        let n = self.0.len();
        let vars = self.0[0].vars().clone();
        let mut out = PolySeries::zero(&vars, n);
        for (i, x) in self.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.0.iter().enumerate().take(n - i) {
                if !y.is_zero() {
                    out.0[i + j] = &out.0[i + j] + &(x * y);
                }
            }
        }
        out
    }

    /// `(1 + x)^alpha` for a series `x` without constant term.
    fn one_plus_pow(x: &PolySeries, alpha: &Rational) -> PolySeries {
        let n = x.0.len();
        let vars = x.0[0].vars().clone();
        let mut out = PolySeries::zero(&vars, n);
        out.0[0] = MPoly::one(&vars);
        let mut xp = out.clone();
        let mut binom = Rational::one();
        for k in 1..n {
            xp = xp.mul(x);
            if xp.0.iter().all(MPoly::is_zero) {
                break;
            }
            binom = binom * (alpha - int(k as i64 - 1)) / int(k as i64);
            for (o, t) in out.0.iter_mut().zip(&xp.0) {
                if !t.is_zero() {
                    *o = &*o + &t.scale(&binom);
                }
            }
        }
        out
    }
}

/// Precomputed γ and θ for one local model up to a fixed truncation order.
///
/// Instances are immutable once built, so sharing one between threads gives
/// the same results as recomputing.
#[derive(Debug, Clone)]
pub struct Expansion {
    model: LocalModel,
    vars: Arc<VarSet>,
    nmax: usize,
    /// `gamma[m]` for `m ≤ nmax`; entries 0 and 1 are zero.
    gamma: Vec<MPoly>,
    /// `theta[m]` for `m ≤ nmax`; entries 0 and 1 are zero.
    theta: Vec<MPoly>,
}

impl Expansion {
    pub fn new(model: LocalModel, nmax: usize) -> Self {
        let nmax = nmax.max(model.a as usize);
        let vars = model.vars();
        let gamma: Vec<MPoly> = (0..=nmax)
            .map(|m| {
                if m < 2 {
                    MPoly::zero(&vars)
                } else {
                    f_coeff_over(&vars, model.a, 1, m as i64)
                }
            })
            .collect();
        let theta = solve_theta(&vars, &gamma, nmax);
        Expansion { model, vars, nmax, gamma, theta }
    }

    pub fn model(&self) -> &LocalModel {
        &self.model
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn nmax(&self) -> usize {
        self.nmax
    }

    pub fn f(&self, beta_num: i64, m: i64) -> MPoly {
        f_coeff_over(&self.vars, self.model.a, beta_num, m)
    }

    /// `f^{(b)}_{b+j}`.
    pub fn f_b(&self, j: i64) -> MPoly {
        self.f(self.model.b as i64, self.model.b as i64 + j)
    }

    pub fn gamma(&self, m: usize) -> &MPoly {
        &self.gamma[m]
    }

    /// `θ_m` for `0 ≤ m ≤ nmax` (zero for `m < 2`).
    pub fn theta(&self, m: usize) -> &MPoly {
        &self.theta[m]
    }

    /// `Θ^{(l)}_i` from the multinomial formula over partitions of `i`.
    pub fn theta_cap(&self, l: i64, i: usize) -> Result<MPoly> {
        if i > self.nmax {
            return usage(format!("Theta index {i} exceeds truncation order {}", self.nmax));
        }
        let alpha = int(l);
        let mut out = MPoly::zero(&self.vars);
        for lambda in partitions(i as i64, 2, Some(i as u32)) {
            let mut term = MPoly::constant(&self.vars, gen_multinomial(&alpha, &lambda));
            for (&k, &mult) in &lambda.0 {
                term = &term * &self.theta[k as usize].pow(mult);
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// `F_{-n}` for `1 ≤ n ≤ a-1`.
    pub fn big_f(&self, n: u32) -> Result<MPoly> {
        if n == 0 || n >= self.model.a {
            return usage(format!("F index n = {n} outside [1, {}]", self.model.a - 1));
        }
        let n = n as i64;
        let mut out = MPoly::zero(&self.vars);
        for i in -n..=-1 {
            let theta = self.theta_cap(i, (i + n) as usize)?;
            if theta.is_zero() {
                continue;
            }
            out = &out + &(&theta * &self.f_b(-i));
        }
        Ok(out)
    }

    /// `f̄_{b+j}` over the doubled variables `(c, ct)`.
    pub fn f_bar(&self, j: u32) -> Result<MPoly> {
        let a = self.model.a;
        if j == 0 || j >= a {
            return usage(format!("f-bar index j = {j} outside [1, {}]", a - 1));
        }
        let dv = VarSet::doubled(a);
        let dim = self.model.dim();
        let c = |k: u32| MPoly::var_at(&dv, (k - 2) as usize);
        let ct = |k: u32| MPoly::var_at(&dv, dim + (k - 2) as usize);
        let at_ct: Vec<MPoly> = (2..=a).map(ct).collect();
        let a_r = int(a as i64);

        let mut out = self.f_b(j as i64).embed(&dv)?;
        for k in 2..j {
            let f_tilde = self.f_b((j - k) as i64).substitute(&at_ct)?;
            let jk = int((j - k) as i64) / &a_r;
            out = &out + (&(&(&c(k) - &ct(k)) * &f_tilde).scale(&jk));
            for l in 2..k.saturating_sub(1) {
                let al = int((a - l) as i64) / &a_r;
                let diff = &c(k - l) - &ct(k - l);
                let term = &(&diff * &ct(l)) * &f_tilde;
                out = &out - &term.scale(&(&jk * &al));
            }
        }
        Ok(out)
    }

    /// `M_{jk} = ∂f̄_{b+j}/∂c_k`, with `ct` identified with `c` afterwards.
    pub fn jacobian_matrix(&self) -> Result<Vec<Vec<MPoly>>> {
        let a = self.model.a;
        let dim = self.model.dim();
        let identify: Vec<MPoly> = (0..2 * dim).map(|i| MPoly::var_at(&self.vars, i % dim)).collect();
        (1..a)
            .map(|j| {
                let fb = self.f_bar(j)?;
                (0..dim).map(|k| fb.diff_at(k).substitute(&identify)).collect()
            })
            .collect()
    }

    /// `J̄ac`, the determinant of [`Self::jacobian_matrix`].
    pub fn jac_bar(&self) -> Result<MPoly> {
        det_bareiss(&self.jacobian_matrix()?)
    }

    /// Expected weighted degree of `J̄ac`: `Σ_j (b+j) − Σ_k k`.
    pub fn jac_bar_degree(&self) -> u64 {
        let (a, b) = (self.model.a as u64, self.model.b as u64);
        (1..a).map(|j| b + j).sum::<u64>() - (2..=a).sum::<u64>()
    }
}

/// Solves `θ(u) + Σ_k γ_k u^k (1 + θ(u))^{1-k} = 0` order by order.
fn solve_theta(vars: &Arc<VarSet>, gamma: &[MPoly], nmax: usize) -> Vec<MPoly> {
    let len = nmax + 1;
    let mut theta = PolySeries::zero(vars, len);
    for m in 2..=nmax {
        // θ_m only depends on θ_{≤ m-2}; the powers are recomputed on the prefix.
        let prefix = PolySeries(theta.0[..=m].to_vec());
        let mut acc = MPoly::zero(vars);
        for k in 2..=m {
            if gamma[k].is_zero() {
                continue;
            }
            let p = PolySeries::one_plus_pow(&prefix, &int(1 - k as i64));
            acc = &acc + &(&gamma[k] * &p.0[m - k]);
        }
        theta.0[m] = -&acc;
    }
    theta.0
}

pub fn theta_series(model: &LocalModel, nmax: usize) -> Result<Vec<MPoly>> {
    if nmax < 2 {
        return usage("theta series needs nmax ≥ 2");
    }
    let e = Expansion::new(*model, nmax);
    Ok((2..=nmax).map(|m| e.theta(m).clone()).collect())
}

pub fn theta_cap(model: &LocalModel, l: i64, i: usize, nmax: usize) -> Result<MPoly> {
    if l >= 0 {
        return usage(format!("Theta exponent l = {l} must be negative"));
    }
    Expansion::new(*model, nmax.max(i)).theta_cap(l, i)
}

pub fn big_f(model: &LocalModel, n: u32, nmax: usize) -> Result<MPoly> {
    Expansion::new(*model, nmax).big_f(n)
}

pub fn f_bar(model: &LocalModel, j: u32) -> Result<MPoly> {
    Expansion::new(*model, model.a as usize).f_bar(j)
}

pub fn jac_bar(model: &LocalModel) -> Result<MPoly> {
    Expansion::new(*model, model.a as usize).jac_bar()
}

/// `σ_{-l}` restricted to summands of weighted degree at most `tmax`.
pub fn sigma(model: &SigmaModel, l: i64, tmax: u64) -> MPoly {
    let base = &model.model;
    let vars = base.vars();
    let mut out = MPoly::zero(&vars);
    let coeffs = std::iter::once(Rational::one()).chain(model.g0.iter().cloned());
    for (r, g) in coeffs.enumerate() {
        if g.is_zero() {
            continue;
        }
        let beta = base.b as i64 + r as i64;
        let m = beta - l;
        if m < 0 || m as u64 > tmax {
            continue;
        }
        out = &out + &f_coeff_over(&vars, base.a, beta, m).scale(&g);
    }
    out
}

/// Checks the local model against an externally supplied model, for table lookups.
pub fn ensure_model(expected: &LocalModel, got: &LocalModel) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::Usage(format!("model mismatch: expected {expected}, got {got}")))
    }
}
