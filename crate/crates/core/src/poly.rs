//! Sparse multivariate polynomials over the rationals.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose `Ord` is graded
//! reverse lexicographic on the raw exponents. Zero coefficients are never
//! stored, so structural equality is mathematical equality.
//!
//! Every polynomial carries an `Arc<VarSet>`. Binary operations on
//! polynomials over different variable sets are usage errors: the `checked_*`
//! methods report them, while the operator impls panic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};

/// Ordered, named variables with integer weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarSet {
    names: Vec<String>,
    weights: Vec<u32>,
}

impl VarSet {
    pub fn new(names: Vec<String>, weights: Vec<u32>) -> Result<Arc<VarSet>> {
        if names.len() != weights.len() {
            return usage("variable names and weights differ in length");
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return usage(format!("duplicate variable name {n:?}"));
            }
        }
        Ok(Arc::new(VarSet { names, weights }))
    }

    /// `c2, …, ca` with weight `k` on `ck`.
    pub fn coefficients(a: u32) -> Arc<VarSet> {
        let names = (2..=a).map(|k| format!("c{k}")).collect();
        let weights = (2..=a).collect();
        Arc::new(VarSet { names, weights })
    }

    /// `c2, …, ca, ct2, …, cta`; the `ct` block is the fixed base point.
    pub fn doubled(a: u32) -> Arc<VarSet> {
        let mut names: Vec<String> = (2..=a).map(|k| format!("c{k}")).collect();
        names.extend((2..=a).map(|k| format!("ct{k}")));
        let mut weights: Vec<u32> = (2..=a).collect();
        weights.extend(2..=a);
        Arc::new(VarSet { names, weights })
    }

    /// Copy of `self` with one extra variable appended.
    pub fn with_extra(&self, name: &str, weight: u32) -> Result<Arc<VarSet>> {
        let mut names = self.names.clone();
        let mut weights = self.weights.clone();
        names.push(name.to_string());
        weights.push(weight);
        VarSet::new(names, weights)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Exponent vector. Ordered by graded reverse lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex(&self.0, &other.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded reverse lexicographic comparison of exponent vectors.
pub fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().rev().zip(b.iter().rev()) {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

/// Result of a weighted-degree test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "degree")]
pub enum Homogeneity {
    /// The zero polynomial: homogeneous of every degree.
    Zero,
    Homogeneous(u64),
    Inhomogeneous,
}

#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    vars: Arc<VarSet>,
    terms: BTreeMap<Monomial, Rational>,
}

impl MPoly {
    pub fn zero(vars: &Arc<VarSet>) -> Self {
        MPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &Arc<VarSet>) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: &Arc<VarSet>, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(Monomial::one(vars.len()), c);
        p
    }

    pub fn var(vars: &Arc<VarSet>, name: &str) -> Result<Self> {
        match vars.index_of(name) {
            Some(i) => Ok(Self::var_at(vars, i)),
            None => usage(format!("unknown variable {name:?}")),
        }
    }

    pub fn var_at(vars: &Arc<VarSet>, idx: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        Self::monomial(vars, e, Rational::one())
    }

    pub fn monomial(vars: &Arc<VarSet>, exps: Vec<u32>, c: Rational) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut p = Self::zero(vars);
        p.add_term(Monomial(exps), c);
        p
    }

    pub fn from_terms<I>(vars: &Arc<VarSet>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            if e.len() != vars.len() {
                return usage(format!(
                    "exponent vector of length {} over {} variables",
                    e.len(),
                    vars.len()
                ));
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    /// Adds `c * m` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&vec![0; self.vars.len()])
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    fn same_vars(&self, other: &MPoly) -> Result<()> {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            Ok(())
        } else {
            usage(format!(
                "variable set mismatch: {:?} vs {:?}",
                self.vars.names, other.vars.names
            ))
        }
    }

    pub fn checked_add(&self, other: &MPoly) -> Result<MPoly> {
        self.same_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MPoly) -> Result<MPoly> {
        self.same_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MPoly) -> Result<MPoly> {
        self.same_vars(other)?;
        let mut out = MPoly::zero(&self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut result = MPoly::one(&self.vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn diff(&self, name: &str) -> Result<MPoly> {
        match self.vars.index_of(name) {
            Some(i) => Ok(self.diff_at(i)),
            None => usage(format!("unknown variable {name:?}")),
        }
    }

    pub fn diff_at(&self, idx: usize) -> MPoly {
        let mut out = MPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[idx] -= 1;
            out.add_term(m2, c * Rational::from_integer(e.into()));
        }
        out
    }

    /// Evaluates with `values[i]` assigned to the `i`-th variable.
    pub fn eval(&self, values: &[Rational]) -> Result<Rational> {
        if values.len() != self.vars.len() {
            return usage(format!(
                "point has {} coordinates, polynomial has {} variables",
                values.len(),
                self.vars.len()
            ));
        }
        Ok(self.eval_with(values, |c| c.clone()))
    }

    /// Evaluates at a named assignment; every variable must be assigned.
    pub fn eval_named(&self, point: &BTreeMap<String, Rational>) -> Result<Rational> {
        let values = self
            .vars
            .names
            .iter()
            .map(|n| {
                point
                    .get(n)
                    .cloned()
                    .ok_or_else(|| Error::Usage(format!("no value for variable {n:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.eval(&values)
    }

    /// Evaluates in any commutative ring `T` receiving rational scalars through `lift`.
    pub fn eval_with<T, F>(&self, values: &[T], lift: F) -> T
    where
        T: Clone,
        for<'a> &'a T: Add<&'a T, Output = T> + Mul<&'a T, Output = T>,
        F: Fn(&Rational) -> T,
    {
        assert_eq!(values.len(), self.vars.len(), "evaluation point length");
        let n = self.vars.len();
        let mut max_e = vec![0u32; n];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                max_e[i] = max_e[i].max(e);
            }
        }
        // powers[i][e] = values[i]^e, built lazily up to the largest exponent used
        let one = lift(&Rational::one());
        let powers: Vec<Vec<T>> = (0..n)
            .map(|i| {
                let mut p = vec![one.clone()];
                for e in 1..=max_e[i] as usize {
                    let next = &p[e - 1] * &values[i];
                    p.push(next);
                }
                p
            })
            .collect();
        let mut acc = lift(&Rational::zero());
        for (m, c) in &self.terms {
            let mut t = lift(c);
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Substitutes `images[i]` for the `i`-th variable.
    pub fn substitute(&self, images: &[MPoly]) -> Result<MPoly> {
        if images.len() != self.vars.len() {
            return usage("substitution needs one image per variable");
        }
        let target = match images.first() {
            Some(p) => p.vars.clone(),
            None => return Ok(self.clone()),
        };
        for img in images {
            if img.vars != target {
                return usage("substitution images live over different variable sets");
            }
        }
        Ok(self.eval_with(images, |c| MPoly::constant(&target, c.clone())))
    }

    /// Re-expresses `self` over a variable set that contains all of its variables by name.
    pub fn embed(&self, target: &Arc<VarSet>) -> Result<MPoly> {
        let map = self
            .vars
            .names
            .iter()
            .map(|n| {
                target
                    .index_of(n)
                    .ok_or_else(|| Error::Usage(format!("variable {n:?} missing from target")))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut out = MPoly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] = x;
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    pub fn weighted_degree(&self) -> Homogeneity {
        let w = self.vars.weights();
        let mut degs = self.terms.keys().map(|m| m.weighted_degree(w));
        match degs.next() {
            None => Homogeneity::Zero,
            Some(d) => {
                if degs.all(|e| e == d) {
                    Homogeneity::Homogeneous(d)
                } else {
                    Homogeneity::Inhomogeneous
                }
            }
        }
    }

    /// Applies `x_k ↦ α^{w_k} x_k` for every variable.
    pub fn weighted_rescale(&self, alpha: &Rational) -> MPoly {
        let w = self.vars.weights().to_vec();
        let mut out = MPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let d = m.weighted_degree(&w);
            out.add_term(m.clone(), c * num_traits::pow(alpha.clone(), d as usize));
        }
        out
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Result<Option<MPoly>> {
        self.same_vars(d)?;
        let (dm, dc) = match d.leading_term() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return usage("division by the zero polynomial"),
        };
        let mut r = self.clone();
        let mut q = MPoly::zero(&self.vars);
        while let Some((rm, rc)) = r.leading_term() {
            if !dm.divides(rm) {
                return Ok(None);
            }
            let qm = rm.div(&dm);
            let qc = rc / &dc;
            for (m, c) in &d.terms {
                r.add_term(m.mul(&qm), -(c * &qc));
            }
            q.add_term(qm, qc);
        }
        Ok(Some(q))
    }

    /// Canonical text form: `-3/16*c2^2*c3 + 3/4*c3*c4`, terms in descending order.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms().enumerate() {
            let mut s = if i == 0 {
                format_rational(c)
            } else if c.is_negative() {
                out.push_str(" - ");
                format_rational(&-c)
            } else {
                out.push_str(" + ");
                format_rational(c)
            };
            for (name, &e) in self.vars.names.iter().zip(&m.0) {
                match e {
                    0 => {}
                    1 => {
                        s.push('*');
                        s.push_str(name);
                    }
                    _ => s.push_str(&format!("*{name}^{e}")),
                }
            }
            out.push_str(&s);
        }
        out
    }

    /// Parses sums of products such as `3/128*c2^4 - 3/16*c2*c3^2 + c4`.
    ///
    /// Accepts the output of [`MPoly::to_text`] and hand-written variants
    /// (implicit coefficient 1, integer coefficients, any term order).
    pub fn parse(vars: &Arc<VarSet>, text: &str) -> Result<MPoly> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return usage("empty polynomial text");
        }
        let mut out = MPoly::zero(vars);
        let mut start = 0;
        let bytes = cleaned.as_bytes();
        let mut pieces = Vec::new();
        for i in 1..=bytes.len() {
            if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'^' | b'+' | b'-'))
            {
                pieces.push(&cleaned[start..i]);
                start = i;
            }
        }
        for piece in pieces {
            let body = piece.trim_start_matches(['+', '-']);
            let neg = piece[..piece.len() - body.len()].matches('-').count() % 2 == 1;
            if body.is_empty() {
                return usage(format!("dangling sign in {text:?}"));
            }
            let mut coeff = Rational::one();
            let mut exps = vec![0u32; vars.len()];
            for factor in body.split('*') {
                let first = factor.chars().next().unwrap_or(' ');
                if first.is_ascii_digit() {
                    coeff *= parse_rational(factor)?;
                    continue;
                }
                let (name, e) = match factor.split_once('^') {
                    Some((n, e)) => (
                        n,
                        e.parse::<u32>()
                            .or_else(|_| usage(format!("bad exponent in {factor:?}")))?,
                    ),
                    None => (factor, 1),
                };
                let idx = vars
                    .index_of(name)
                    .ok_or_else(|| Error::Usage(format!("unknown variable {name:?}")))?;
                exps[idx] += e;
            }
            if neg {
                coeff = -coeff;
            }
            out.add_term(Monomial(exps), coeff);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            variables: self.vars.names.clone(),
            terms: self
                .terms()
                .map(|(m, c)| TermJson { exponents: m.0.clone(), coefficient: format_rational(c) })
                .collect(),
        }
    }

    pub fn from_json(vars: &Arc<VarSet>, json: &PolyJson) -> Result<MPoly> {
        if json.variables != vars.names {
            return usage(format!(
                "json variables {:?} do not match {:?}",
                json.variables, vars.names
            ));
        }
        let terms = json
            .terms
            .iter()
            .map(|t| Ok((t.exponents.clone(), parse_rational(&t.coefficient)?)))
            .collect::<Result<Vec<_>>>()?;
        MPoly::from_terms(vars, terms)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({})", self.to_text())
    }
}

/// JSON form: `{variables, terms: [{exponents, coefficient}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub variables: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponents: Vec<u32>,
    pub coefficient: String,
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &'a MPoly) -> MPoly {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &'a MPoly) -> MPoly {
        self.checked_sub(rhs).expect("polynomial subtraction")
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &'a MPoly) -> MPoly {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Rational::one())
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(self, rhs: MPoly) -> MPoly {
        &self + &rhs
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        &self - &rhs
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn v3() -> Arc<VarSet> {
        VarSet::coefficients(4)
    }

    fn c(vars: &Arc<VarSet>, k: u32) -> MPoly {
        MPoly::var(vars, &format!("c{k}")).unwrap()
    }

    #[test]
    fn ring_examples() {
        let vs = v3();
        let (c2, c3) = (c(&vs, 2), c(&vs, 3));
        assert!((&c2 + &(-&c2)).is_zero());
        let s = &c2 + &c3;
        assert_eq!(&s * &MPoly::one(&vs), s);
        let sq = s.pow(2);
        let expect = &(&c2.pow(2) + (&(&c2 * &c3).scale(&int(2)))) + &c3.pow(2);
        assert_eq!(sq, expect);
        assert_eq!(sq.to_text(), "1/1*c2^2 + 2/1*c2*c3 + 1/1*c3^2");
    }

    #[test]
    fn mismatched_varsets_are_usage_errors() {
        let a = MPoly::var(&VarSet::coefficients(3), "c2").unwrap();
        let b = MPoly::var(&VarSet::coefficients(4), "c2").unwrap();
        assert!(matches!(a.checked_add(&b), Err(Error::Usage(_))));
        assert!(matches!(a.checked_mul(&b), Err(Error::Usage(_))));
    }

    #[test]
    fn derivatives() {
        let vs = v3();
        let (c2, c3) = (c(&vs, 2), c(&vs, 3));
        assert_eq!(c2.pow(3).diff("c2").unwrap(), c2.pow(2).scale(&int(3)));
        assert!(c3.diff("c2").unwrap().is_zero());
        assert_eq!((&c2.pow(2) * &c3).diff("c3").unwrap(), c2.pow(2));
        assert!(matches!(c2.diff("z"), Err(Error::Usage(_))));
    }

    #[test]
    fn evaluation() {
        let vs = v3();
        let (c2, c3) = (c(&vs, 2), c(&vs, 3));
        assert_eq!(c2.pow(2).eval(&[rat(3, 2), int(0), int(0)]).unwrap(), rat(9, 4));
        let p = &(&c2 - &c3) + &MPoly::constant(&vs, int(7));
        assert_eq!(p.eval(&[int(0), int(0), int(0)]).unwrap(), int(7));
        assert_eq!((&c2 - &c3).eval(&[int(5), int(5), int(1)]).unwrap(), int(0));
        let mut named = BTreeMap::new();
        named.insert("c2".to_string(), int(1));
        assert!(matches!(c2.eval_named(&named), Err(Error::Usage(_))));
        named.insert("c3".to_string(), int(1));
        named.insert("c4".to_string(), int(1));
        assert_eq!(c2.eval_named(&named).unwrap(), int(1));
    }

    #[test]
    fn weighted_degrees() {
        let vs = v3();
        let (c2, c3) = (c(&vs, 2), c(&vs, 3));
        assert_eq!((&c2.pow(2) * &c3).weighted_degree(), Homogeneity::Homogeneous(7));
        assert_eq!((&c2 + &c3).weighted_degree(), Homogeneity::Inhomogeneous);
        assert_eq!(MPoly::zero(&vs).weighted_degree(), Homogeneity::Zero);
    }

    #[test]
    fn exact_division() {
        let vs = v3();
        let (c2, c3) = (c(&vs, 2), c(&vs, 3));
        let f = &(&c2 + &c3) * &(&c2 - &c3.scale(&rat(1, 3)));
        assert_eq!(f.div_exact(&(&c2 + &c3)).unwrap(), Some(&c2 - &c3.scale(&rat(1, 3))));
        assert_eq!(c2.div_exact(&c3).unwrap(), None);
    }

    #[test]
    fn grevlex_order() {
        // degree first, then the smaller exponent in the last variable wins
        assert_eq!(grevlex(&[2, 1, 0], &[0, 1, 1]), Ordering::Greater);
        assert_eq!(grevlex(&[1, 1, 0], &[2, 0, 0]), Ordering::Less);
        assert_eq!(grevlex(&[0, 2, 0], &[1, 0, 1]), Ordering::Greater);
    }

    #[test]
    fn text_round_trip() {
        let vs = v3();
        let p = &(&c(&vs, 2).pow(2) * &c(&vs, 3)).scale(&rat(-3, 16))
            + &(&c(&vs, 3) * &c(&vs, 4)).scale(&rat(3, 4));
        assert_eq!(p.to_text(), "-3/16*c2^2*c3 + 3/4*c3*c4");
        assert_eq!(MPoly::parse(&vs, &p.to_text()).unwrap(), p);
        assert!(MPoly::parse(&vs, "3/4 c3*c4").is_err());
        assert_eq!(MPoly::parse(&vs, "c4*c3*3/4 + -3/16*c3*c2^2").unwrap(), p);
        assert!(MPoly::parse(&vs, "x + 1").is_err());
        assert!(MPoly::parse(&vs, "0").unwrap().is_zero());
    }

    #[test]
    fn json_round_trip() {
        let vs = v3();
        let p = &(&c(&vs, 2).pow(2) * &c(&vs, 3)).scale(&rat(-3, 16))
            + &(&c(&vs, 3) * &c(&vs, 4)).scale(&rat(3, 4));
        let js = p.to_json();
        assert_eq!(MPoly::from_json(&vs, &js).unwrap(), p);
    }
}
