//! Truncated power series in `t`, Laurent slices in `s` with series
//! coefficients, and the change of parameter `s ↦ s(N+1)` that carries one
//! deformed branch equation to the next.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};
use crate::expansion::{sigma, LocalModel, SigmaModel};
use crate::rational::{format_rational, int, parse_rational, Rational};

/// Element of `Q[t]/t^K`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TSeries {
    coeffs: Vec<Rational>,
    modulus: usize,
}

impl TSeries {
    pub fn zero(modulus: usize) -> Self {
        TSeries { coeffs: Vec::new(), modulus }
    }

    pub fn one(modulus: usize) -> Self {
        TSeries::constant(Rational::one(), modulus)
    }

    pub fn constant(c: Rational, modulus: usize) -> Self {
        TSeries::monomial(c, 0, modulus)
    }

    /// `c t^pow`, zero when `pow ≥ modulus`.
    pub fn monomial(c: Rational, pow: usize, modulus: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); pow + 1];
        coeffs[pow] = c;
        TSeries::from_coeffs(coeffs, modulus)
    }

    /// Coefficients of `t^0, t^1, …`; entries at or beyond `modulus` are dropped.
    pub fn from_coeffs(mut coeffs: Vec<Rational>, modulus: usize) -> Self {
        coeffs.truncate(modulus);
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        TSeries { coeffs, modulus }
    }

    pub fn parse(strings: &[String], modulus: usize) -> Result<Self> {
        let coeffs = strings.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        Ok(TSeries::from_coeffs(coeffs, modulus))
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest `k` with `t^k | x`; the zero series reports the modulus.
    pub fn ord(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.modulus)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TSeries::from_coeffs(self.coeffs.iter().map(|x| x * c).collect(), self.modulus)
    }

    /// `t^k · self`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        TSeries::from_coeffs(coeffs, self.modulus)
    }

    /// Same element read modulo `t^k` for `k ≤ modulus`.
    pub fn reduce_modulus(&self, k: usize) -> Result<Self> {
        if k > self.modulus {
            return usage(format!("cannot raise modulus from {} to {k}", self.modulus));
        }
        Ok(TSeries::from_coeffs(self.coeffs.clone(), k))
    }

    fn check(&self, other: &TSeries) -> Result<()> {
        if self.modulus != other.modulus {
            return usage(format!("series moduli differ: t^{} vs t^{}", self.modulus, other.modulus));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &TSeries) -> Result<TSeries> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Ok(TSeries::from_coeffs(coeffs, self.modulus))
    }

    pub fn checked_sub(&self, other: &TSeries) -> Result<TSeries> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &TSeries) -> Result<TSeries> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(TSeries::zero(self.modulus));
        }
        let n = (self.coeffs.len() + other.coeffs.len() - 1).min(self.modulus);
        let mut coeffs = vec![Rational::zero(); n];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate().take(n.saturating_sub(i)) {
                coeffs[i + j] += x * y;
            }
        }
        Ok(TSeries::from_coeffs(coeffs, self.modulus))
    }
}

impl fmt::Display for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let c = if first {
                first = false;
                format_rational(c)
            } else if c.is_negative() {
                f.write_str(" - ")?;
                format_rational(&-c)
            } else {
                f.write_str(" + ")?;
                format_rational(c)
            };
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " mod t^{}", self.modulus)
    }
}

impl fmt::Debug for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TSeries({self})")
    }
}

impl<'a> Add<&'a TSeries> for &'a TSeries {
    type Output = TSeries;
    fn add(self, o: &'a TSeries) -> TSeries {
        self.checked_add(o).expect("TSeries addition")
    }
}

impl<'a> Sub<&'a TSeries> for &'a TSeries {
    type Output = TSeries;
    fn sub(self, o: &'a TSeries) -> TSeries {
        self.checked_sub(o).expect("TSeries subtraction")
    }
}

impl<'a> Mul<&'a TSeries> for &'a TSeries {
    type Output = TSeries;
    fn mul(self, o: &'a TSeries) -> TSeries {
        self.checked_mul(o).expect("TSeries multiplication")
    }
}

impl Neg for &TSeries {
    type Output = TSeries;
    fn neg(self) -> TSeries {
        TSeries { coeffs: self.coeffs.iter().map(|c| -c).collect(), modulus: self.modulus }
    }
}

/// Finite Laurent expression `Σ_{lo ≤ p ≤ hi} x_p s^p` with coefficients mod `t^K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSlice {
    terms: BTreeMap<i64, TSeries>,
    lo: i64,
    hi: i64,
    modulus: usize,
}

impl LaurentSlice {
    pub fn new(lo: i64, hi: i64, modulus: usize) -> Result<Self> {
        if lo > hi {
            return usage(format!("empty s-window [{lo}, {hi}]"));
        }
        Ok(LaurentSlice { terms: BTreeMap::new(), lo, hi, modulus })
    }

    pub fn bounds(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn get(&self, p: i64) -> TSeries {
        self.terms.get(&p).cloned().unwrap_or_else(|| TSeries::zero(self.modulus))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &TSeries)> {
        self.terms.iter().map(|(p, x)| (*p, x))
    }

    /// Adds `x s^p`; exponents outside the window are a usage error.
    pub fn add_term(&mut self, p: i64, x: &TSeries) -> Result<()> {
        if p < self.lo || p > self.hi {
            return usage(format!("s-exponent {p} outside window [{}, {}]", self.lo, self.hi));
        }
        if x.modulus() != self.modulus {
            return usage("coefficient modulus differs from the slice modulus");
        }
        let sum = &self.get(p) + x;
        if sum.is_zero() {
            self.terms.remove(&p);
        } else {
            self.terms.insert(p, sum);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &LaurentSlice) -> Result<LaurentSlice> {
        if (self.lo, self.hi, self.modulus) != (other.lo, other.hi, other.modulus) {
            return usage("Laurent slices with different windows or moduli");
        }
        let mut out = self.clone();
        for (p, x) in &other.terms {
            out.add_term(*p, x)?;
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Splits into the part with `s`-exponents `≥ 0` and the part with exponents `< 0`.
///
/// Both parts keep the window of the input, so they add back to it.
pub fn regularize(h: &LaurentSlice) -> (LaurentSlice, LaurentSlice) {
    let mut regular = LaurentSlice { terms: BTreeMap::new(), ..h.clone() };
    let mut singular = regular.clone();
    for (p, x) in &h.terms {
        let target = if *p >= 0 { &mut regular } else { &mut singular };
        target.terms.insert(*p, x.clone());
    }
    (regular, singular)
}

/// Coefficient of `s^{-1}`.
pub fn residue_at(h: &LaurentSlice) -> Result<TSeries> {
    if h.lo > -1 || h.hi < -1 {
        return usage(format!("s^-1 lies outside the window [{}, {}]", h.lo, h.hi));
    }
    Ok(h.get(-1))
}

/// Power series in `u = 1/s` with `TSeries` coefficients, truncated at `u^len`.
#[derive(Clone, Debug)]
struct USeries(Vec<TSeries>);

impl USeries {
    fn mul(&self, other: &USeries) -> USeries {
        let n = self.0.len();
        let k = self.0[0].modulus();
        let mut out = vec![TSeries::zero(k); n];
        for (i, x) in self.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.0.iter().enumerate().take(n - i) {
                if !y.is_zero() {
                    out[i + j] = &out[i + j] + &(x * y);
                }
            }
        }
        USeries(out)
    }

    /// `(1 + x)^alpha` for a series without constant term.
    fn one_plus_pow(x: &USeries, alpha: &Rational) -> USeries {
        let n = x.0.len();
        let k = x.0[0].modulus();
        let mut out = vec![TSeries::zero(k); n];
        out[0] = TSeries::one(k);
        let mut out = USeries(out);
        let mut xp = out.clone();
        let mut binom = Rational::one();
        for j in 1..n {
            xp = xp.mul(x);
            if xp.0.iter().all(TSeries::is_zero) {
                break;
            }
            binom = binom * (alpha - int(j as i64 - 1)) / int(j as i64);
            for (o, t) in out.0.iter_mut().zip(&xp.0) {
                *o = &*o + &t.scale(&binom);
            }
        }
        out
    }
}

/// Output of [`reparam_solve`]: `s(N+1) = s − (1/a) Σ δ'_i s^{1-i} + Σ ε_i s^{1-i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReparamResult {
    pub a: u32,
    /// `δ'_2, …, δ'_a`.
    pub delta_prime: Vec<TSeries>,
    /// `ε_{a+1}, …, ε_{smax}`.
    pub epsilon: Vec<TSeries>,
}

impl ReparamResult {
    /// Coefficient `e_m` of `s^{1-m}` in `s(N+1)`, for `0 ≤ m ≤ smax`.
    pub fn e(&self, m: usize) -> Option<TSeries> {
        let a = self.a as usize;
        let k = self.delta_prime[0].modulus();
        match m {
            0 | 1 => Some(TSeries::zero(k)),
            _ if m <= a => Some(self.delta_prime[m - 2].scale(&(-Rational::one() / int(a as i64)))),
            _ => self.epsilon.get(m - a - 1).cloned(),
        }
    }

    pub fn smax(&self) -> usize {
        self.a as usize + self.epsilon.len()
    }
}

fn check_inputs(model: &LocalModel, c_n: &[TSeries], c_n1: &[TSeries]) -> Result<usize> {
    let dim = model.dim();
    if c_n.len() != dim || c_n1.len() != dim {
        return usage(format!("expected {dim} coefficients c_2..c_{} at both levels", model.a));
    }
    let k = c_n[0].modulus();
    if c_n.iter().chain(c_n1).any(|x| x.modulus() != k) {
        return usage("all coefficient series must share one modulus");
    }
    for (idx, (x, y)) in c_n.iter().zip(c_n1).enumerate() {
        let i = idx + 2;
        // a series that vanishes mod t^K has every order
        if x.ord() < i.min(k) {
            return usage(format!("ord c_{i}(N) = {} is below {i}", x.ord()));
        }
        let delta = y - x;
        if delta.ord() < (i + 1).min(k) {
            return usage(format!("ord δ_{i} = {} is below {}", delta.ord(), i + 1));
        }
    }
    Ok(k)
}

/// Solves for the change of parameter taking `s^a + Σ c_k(N+1) s^{a-k}` to `s^a + Σ c_k(N) s^{a-k}`.
///
/// Inputs must satisfy `ord c_i(N) ≥ i` and `ord(c_i(N+1) − c_i(N)) ≥ i + 1`.
pub fn reparam_solve(
    model: &LocalModel,
    c_n: &[TSeries],
    c_n1: &[TSeries],
    smax: usize,
) -> Result<ReparamResult> {
    let k = check_inputs(model, c_n, c_n1)?;
    let a = model.a as usize;
    let smax = smax.max(a);
    let len = smax + 1;
    let zero = TSeries::zero(k);
    let c = |v: &[TSeries], m: usize| if (2..=a).contains(&m) { v[m - 2].clone() } else { zero.clone() };
    let mut e = USeries(vec![zero.clone(); len]);
    let a_r = int(a as i64);
    for m in 2..len {
        // only e_{<m} is set, so the powers below are exact through u^m
        let prefix = USeries(e.0[..=m].to_vec());
        let mut rhs = c(c_n, m);
        rhs = &rhs - &USeries::one_plus_pow(&prefix, &a_r).0[m];
        for kk in 2..=a.min(m) {
            let ck = c(c_n1, kk);
            if ck.is_zero() {
                continue;
            }
            let p = USeries::one_plus_pow(&prefix, &int((a - kk) as i64));
            rhs = &rhs - &(&ck * &p.0[m - kk]);
        }
        e.0[m] = rhs.scale(&(Rational::one() / &a_r));
    }
    Ok(ReparamResult {
        a: model.a,
        delta_prime: (2..=a).map(|m| e.0[m].scale(&-a_r.clone())).collect(),
        epsilon: e.0[a + 1..].to_vec(),
    })
}

/// One checked bound of the order audit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    /// `"delta'_i"` or `"epsilon_i"`.
    pub name: String,
    pub ord: usize,
    pub bound: i64,
    /// `ord - min(bound, K)`; negative means violated.
    pub margin: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub checks: Vec<BoundCheck>,
}

impl AuditReport {
    pub fn violations(&self) -> Vec<&BoundCheck> {
        self.checks.iter().filter(|c| c.margin < 0).collect()
    }

    pub fn passed(&self) -> bool {
        self.violations().is_empty()
    }
}

/// Checks `ord δ'_i ≥ i + min_{j ∈ {2..i-2, i}} (ord δ_j − j)` and
/// `ord ε_i ≥ i + min_{2≤j≤a} (ord δ_j − j)`, where orders at the modulus
/// stand for "at least K".
pub fn order_bound_audit(result: &ReparamResult, deltas: &[TSeries]) -> Result<AuditReport> {
    let a = result.a as usize;
    if deltas.len() != a - 1 {
        return usage(format!("expected {} deltas", a - 1));
    }
    let k = deltas[0].modulus() as i64;
    let excess = |j: usize| deltas[j - 2].ord() as i64 - j as i64;
    let mut checks = Vec::new();
    let mut push = |name: String, x: &TSeries, bound: i64| {
        let ord = x.ord();
        checks.push(BoundCheck { name, ord, bound, margin: ord as i64 - bound.min(k) });
    };
    for i in 2..=a {
        let js = (2..=i.saturating_sub(2)).chain(std::iter::once(i));
        let bound = i as i64 + js.map(excess).min().unwrap();
        push(format!("delta'_{i}"), &result.delta_prime[i - 2], bound);
    }
    let min_all = (2..=a).map(excess).min().unwrap();
    for (idx, eps) in result.epsilon.iter().enumerate() {
        let i = a + 1 + idx;
        push(format!("epsilon_{i}"), eps, i as i64 + min_all);
    }
    Ok(AuditReport { checks })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PmVerdict {
    Holds,
    Fails,
    /// The truncation is too small to decide.
    Inconclusive,
}

/// Both sides of the ± identity, restricted to the window where they can be nonzero.
#[derive(Clone, Debug)]
pub struct PmSides {
    pub regular_difference: LaurentSlice,
    pub singular_difference: LaurentSlice,
}

/// Smallest `smax` for which [`pm_identity_check`] can decide at modulus `k`.
pub fn pm_required_smax(model: &SigmaModel, k: usize) -> usize {
    (k + model.g0.len()).saturating_sub(1).max(model.model.a as usize)
}

/// Evaluates `Σ_{l≥0} σ_{-l}(c(N+1)) s(N+1)^l − Σ_{l≥0} σ_{-l}(c(N)) s^l` and
/// `Σ_{l<0} σ_{-l}(c(N)) s^l − Σ_{l<0} σ_{-l}(c(N+1)) s(N+1)^l`.
///
/// With `ord c_k ≥ k`, only `s`-exponents in `[b−K+1, b+R]` survive mod `t^K`
/// (`R = |g_0|`), and every such coefficient is exact once `smax ≥ K+R−1`.
pub fn pm_sides(
    model: &SigmaModel,
    c_n: &[TSeries],
    c_n1: &[TSeries],
    reparam: &ReparamResult,
) -> Result<PmSides> {
    let base = model.model;
    let k = check_inputs(&base, c_n, c_n1)?;
    let b = base.b as i64;
    let r = model.g0.len() as i64;
    let (lo, hi) = (b - k as i64 + 1, b + r);
    let len = (hi - lo + 1) as usize;
    let mut e = USeries(vec![TSeries::zero(k); len.max(2)]);
    for m in 0..e.0.len() {
        e.0[m] = match reparam.e(m) {
            Some(x) => x,
            None => return usage(format!("reparameterization lacks e_{m}; raise smax")),
        };
    }
    let tmax = k.saturating_sub(1) as u64;
    let eval = |l: i64, c: &[TSeries]| -> TSeries {
        sigma(model, l, tmax).eval_with(c, |q| TSeries::constant(q.clone(), k))
    };
    let mut regular = LaurentSlice::new(lo, hi, k)?;
    let mut singular = LaurentSlice::new(lo, hi, k)?;
    for l in lo..=hi {
        let (target, neg) = if l >= 0 { (&mut regular, false) } else { (&mut singular, true) };
        let old = eval(l, c_n);
        let new = eval(l, c_n1);
        // s(N+1)^l = s^l (1 + E)^l, where E = Σ e_m u^m and u = 1/s
        let pow = USeries::one_plus_pow(&e, &int(l));
        let (sign_old, sign_new) = if neg { (Rational::one(), -Rational::one()) } else { (-Rational::one(), Rational::one()) };
        target.add_term(l, &old.scale(&sign_old))?;
        if new.is_zero() {
            continue;
        }
        for (m, coef) in pow.0.iter().enumerate() {
            let p = l - m as i64;
            if p < lo {
                break;
            }
            if !coef.is_zero() {
                target.add_term(p, &(&new * coef).scale(&sign_new))?;
            }
        }
    }
    Ok(PmSides { regular_difference: regular, singular_difference: singular })
}

/// Decides the ± identity relating `σ` at consecutive levels, modulo `t^K` with `K` the input modulus.
pub fn pm_identity_check(
    model: &SigmaModel,
    c_n: &[TSeries],
    c_n1: &[TSeries],
    smax: usize,
) -> Result<PmVerdict> {
    let k = check_inputs(&model.model, c_n, c_n1)?;
    if smax < pm_required_smax(model, k) {
        return Ok(PmVerdict::Inconclusive);
    }
    let reparam = reparam_solve(&model.model, c_n, c_n1, smax)?;
    let sides = pm_sides(model, c_n, c_n1, &reparam)?;
    Ok(if sides.regular_difference == sides.singular_difference {
        PmVerdict::Holds
    } else {
        PmVerdict::Fails
    })
}

/// Convenience for building series vectors in tests and the CLI.
pub fn series_from_rationals(rows: &[Vec<Rational>], modulus: usize) -> Vec<TSeries> {
    rows.iter().map(|r| TSeries::from_coeffs(r.clone(), modulus)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn ts(c: &[i64], k: usize) -> TSeries {
        TSeries::from_coeffs(c.iter().map(|&x| int(x)).collect(), k)
    }

    #[test]
    fn ring_and_order() {
        let x = ts(&[0, 1, 1], 3);
        let t = ts(&[0, 1], 3);
        assert_eq!(&x * &t, ts(&[0, 0, 1], 3));
        assert_eq!(ts(&[0, 0, 0, 5, 1], 6).ord(), 3);
        assert_eq!(TSeries::zero(7).ord(), 7);
        assert!(ts(&[1], 3).checked_add(&ts(&[1], 4)).is_err());
        assert_eq!(TSeries::monomial(int(2), 5, 5), TSeries::zero(5));
    }

    #[test]
    fn regularize_and_residue() {
        let mut h = LaurentSlice::new(-3, 3, 4).unwrap();
        h.add_term(-1, &ts(&[0, 1], 4)).unwrap();
        h.add_term(0, &ts(&[1], 4)).unwrap();
        let (reg, sing) = regularize(&h);
        assert_eq!(reg.get(0), ts(&[1], 4));
        assert!(reg.get(-1).is_zero());
        assert_eq!(residue_at(&sing).unwrap(), ts(&[0, 1], 4));
        assert!(residue_at(&reg).unwrap().is_zero());
        assert_eq!(reg.checked_add(&sing).unwrap(), h);
        let window = LaurentSlice::new(0, 3, 4).unwrap();
        assert!(residue_at(&window).is_err());
        assert!(h.clone().add_term(4, &ts(&[1], 4)).is_err());
    }

    #[test]
    fn reparam_a2_by_hand() {
        let m = LocalModel::new(2, 3).unwrap();
        let k = 12;
        let c_n = vec![ts(&[0, 0, 3, 1], k)];
        let delta = ts(&[0, 0, 0, 2, -1], k);
        let c_n1 = vec![&c_n[0] + &delta];
        let r = reparam_solve(&m, &c_n, &c_n1, 6).unwrap();
        assert_eq!(r.delta_prime[0], delta);
        assert!(r.epsilon[0].is_zero());
        assert_eq!(r.epsilon[1], (&delta * &delta).scale(&rat(-1, 8)));
        let audit = order_bound_audit(&r, &[delta]).unwrap();
        assert!(audit.passed(), "{audit:?}");
    }

    #[test]
    fn reparam_zero_delta() {
        let m = LocalModel::new(4, 6).unwrap();
        let c = vec![ts(&[0, 0, 1], 9), ts(&[0, 0, 0, 2], 9), ts(&[0, 0, 0, 0, -1], 9)];
        let r = reparam_solve(&m, &c, &c, 10).unwrap();
        assert!(r.delta_prime.iter().chain(&r.epsilon).all(TSeries::is_zero));
        let audit = order_bound_audit(&r, &vec![TSeries::zero(9); 3]).unwrap();
        assert!(audit.checks.iter().all(|c| c.ord == 9 && c.margin >= 0));
    }

    #[test]
    fn reparam_rejects_low_orders() {
        let m = LocalModel::new(2, 3).unwrap();
        let c_n = vec![ts(&[0, 1], 8)];
        assert!(reparam_solve(&m, &c_n, &c_n, 4).is_err());
        let c_n = vec![ts(&[0, 0, 1], 8)];
        let c_n1 = vec![ts(&[0, 0, 2], 8)];
        assert!(reparam_solve(&m, &c_n, &c_n1, 4).is_err());
    }

    #[test]
    fn pm_trivial_and_inconclusive() {
        let sm = SigmaModel::plain(LocalModel::new(2, 3).unwrap());
        let c = vec![ts(&[0, 0, 1, 2], 8)];
        assert_eq!(pm_identity_check(&sm, &c, &c, 10).unwrap(), PmVerdict::Holds);
        assert_eq!(pm_identity_check(&sm, &c, &c, 3).unwrap(), PmVerdict::Inconclusive);
        let c1 = vec![ts(&[0, 0, 1, 3, 1], 8)];
        assert_eq!(pm_identity_check(&sm, &c, &c1, 10).unwrap(), PmVerdict::Holds);
    }
}
