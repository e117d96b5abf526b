//! Buchberger's algorithm over Q with the product and chain criteria, radical
//! membership, and the transversality and genericity checks built on top.
//!
//! Internally polynomials are primitive with integer coefficients; the
//! content is stripped after every reduction. The public results are monic
//! rational polynomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::expansion::{Expansion, LocalModel};
use crate::poly::{MPoly, Monomial, VarSet};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
}

impl MonomialOrder {
    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::Grevlex => "grevlex",
            MonomialOrder::Lex => "lex",
        }
    }

    /// Compares two exponent vectors of equal length.
    pub fn compare(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Grevlex => crate::poly::grevlex(a, b),
            MonomialOrder::Lex => a.cmp(b),
        }
    }

    pub fn leading_term<'p>(&self, p: &'p MPoly) -> Option<(&'p Monomial, &'p Rational)> {
        match self {
            MonomialOrder::Grevlex => p.leading_term(),
            MonomialOrder::Lex => p.terms().max_by(|x, y| self.compare(&x.0 .0, &y.0 .0)),
        }
    }
}

/// Resource limits for one Gröbner computation. `None` means unlimited.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub wall: Option<Duration>,
    pub max_pairs: Option<u64>,
}

impl Budget {
    pub fn seconds(secs: f64) -> Self {
        Budget { wall: Some(Duration::from_secs_f64(secs)), max_pairs: None }
    }

    pub fn unlimited() -> Self {
        Budget::default()
    }

    fn deadline(&self, start: Instant) -> Option<Instant> {
        self.wall.map(|w| start + w)
    }
}

/// Finite generating set of an ideal together with a monomial order.
#[derive(Debug, Clone)]
pub struct Ideal {
    vars: Arc<VarSet>,
    gens: Vec<MPoly>,
    order: MonomialOrder,
}

impl Ideal {
    /// Drops zero and duplicate generators. An empty list is the zero ideal.
    pub fn new(vars: &Arc<VarSet>, gens: Vec<MPoly>, order: MonomialOrder) -> Result<Self> {
        let mut kept: Vec<MPoly> = Vec::new();
        for g in gens {
            if g.vars() != vars {
                return usage("ideal generator over a different variable set");
            }
            if !g.is_zero() && !kept.contains(&g) {
                kept.push(g);
            }
        }
        Ok(Ideal { vars: vars.clone(), gens: kept, order })
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn generators(&self) -> &[MPoly] {
        &self.gens
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }
}

/// Reduced Gröbner basis: monic, sorted by increasing leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub vars: Arc<VarSet>,
    pub order: MonomialOrder,
    pub polys: Vec<MPoly>,
    pub pairs_processed: u64,
}

impl GroebnerBasis {
    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].num_terms() == 1 && self.polys[0].constant_term().is_one()
    }

    pub fn normal_form(&self, p: &MPoly) -> Result<MPoly> {
        normal_form(p, &self.polys, self.order)
    }

    pub fn contains(&self, p: &MPoly) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GbOutcome {
    Basis(GroebnerBasis),
    Timeout,
}

/// Remainder of multivariate division of `p` by `basis`.
///
/// The remainder has no monomial divisible by a leading monomial of the basis
/// and `p - remainder` lies in the ideal generated by the basis.
pub fn normal_form(p: &MPoly, basis: &[MPoly], order: MonomialOrder) -> Result<MPoly> {
    let vars = p.vars().clone();
    let mut leads = Vec::new();
    for g in basis {
        if g.vars() != &vars {
            return usage("normal form against a basis over a different variable set");
        }
        if let Some((m, c)) = order.leading_term(g) {
            leads.push((m.0.clone(), c.clone(), g));
        }
    }
    let mut rest = p.clone();
    let mut rem = MPoly::zero(&vars);
    while let Some((m, c)) = order.leading_term(&rest) {
        let (m, c) = (m.0.clone(), c.clone());
        let hit = leads.iter().find(|(lm, _, _)| lm.iter().zip(&m).all(|(x, y)| x <= y));
        match hit {
            Some((lm, lc, g)) => {
                let q: Vec<u32> = m.iter().zip(lm).map(|(x, y)| x - y).collect();
                let factor = MPoly::monomial(&vars, q, &c / lc);
                rest = &rest - &(&factor * g);
            }
            None => {
                rem.add_term(Monomial(m.clone()), c.clone());
                rest.add_term(Monomial(m), -c);
            }
        }
    }
    Ok(rem)
}

// ---------------------------------------------------------------------------
// Internal engine

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Mon {
    deg: u32,
    e: Box<[u32]>,
    /// Bit `i mod 64` set when variable `i` occurs; quick divisibility reject.
    mask: u64,
}

impl Mon {
    fn new(e: Vec<u32>) -> Mon {
        let deg = e.iter().sum();
        let mask = e
            .iter()
            .enumerate()
            .filter(|(_, &x)| x > 0)
            .fold(0u64, |m, (i, _)| m | (1 << (i % 64)));
        Mon { deg, e: e.into_boxed_slice(), mask }
    }

    fn mul(&self, o: &Mon) -> Mon {
        Mon {
            deg: self.deg + o.deg,
            e: self.e.iter().zip(o.e.iter()).map(|(a, b)| a + b).collect(),
            mask: self.mask | o.mask,
        }
    }

    fn divides(&self, o: &Mon) -> bool {
        self.mask & !o.mask == 0 && self.deg <= o.deg && self.e.iter().zip(o.e.iter()).all(|(a, b)| a <= b)
    }

    fn div(&self, o: &Mon) -> Mon {
        Mon::new(self.e.iter().zip(o.e.iter()).map(|(a, b)| a - b).collect())
    }

    fn lcm(&self, o: &Mon) -> Mon {
        Mon::new(self.e.iter().zip(o.e.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    fn disjoint(&self, o: &Mon) -> bool {
        self.e.iter().zip(o.e.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }
}

fn mcmp(order: MonomialOrder, a: &Mon, b: &Mon) -> Ordering {
    match order {
        MonomialOrder::Grevlex => a.deg.cmp(&b.deg).then_with(|| {
            for i in (0..a.e.len()).rev() {
                if a.e[i] != b.e[i] {
                    return b.e[i].cmp(&a.e[i]);
                }
            }
            Ordering::Equal
        }),
        MonomialOrder::Lex => a.e.cmp(&b.e),
    }
}

/// Terms in strictly decreasing order, integer coefficients.
type IPoly = Vec<(Mon, BigInt)>;

fn to_ipoly(p: &MPoly, order: MonomialOrder) -> IPoly {
    let den = p
        .terms()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let mut out: IPoly = p
        .terms()
        .map(|(m, c)| (Mon::new(m.0.clone()), (c * Rational::from_integer(den.clone())).to_integer()))
        .collect();
    out.sort_by(|x, y| mcmp(order, &y.0, &x.0));
    make_primitive(&mut out);
    out
}

fn to_mpoly(p: &IPoly, vars: &Arc<VarSet>) -> MPoly {
    let lc = Rational::from_integer(p[0].1.clone());
    let mut out = MPoly::zero(vars);
    for (m, c) in p {
        out.add_term(Monomial(m.e.to_vec()), Rational::from_integer(c.clone()) / &lc);
    }
    out
}

fn make_primitive(p: &mut IPoly) {
    if p.is_empty() {
        return;
    }
    let mut g = BigInt::zero();
    for (_, c) in p.iter() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if p[0].1.sign() == Sign::Minus {
        g = -g;
    }
    if !g.is_one() {
        for (_, c) in p.iter_mut() {
            *c /= &g;
        }
    }
}

/// `a * x + b * (m * y)`, both inputs sorted decreasingly.
fn lin_comb(order: MonomialOrder, a: &BigInt, x: &[(Mon, BigInt)], b: &BigInt, m: &Mon, y: &[(Mon, BigInt)]) -> IPoly {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let mut i = 0;
    let mut j = 0;
    let mut ym: Option<Mon> = y.first().map(|t| t.0.mul(m));
    while i < x.len() || j < y.len() {
        let ord = match (i < x.len(), &ym) {
            (true, Some(mm)) => mcmp(order, &x[i].0, mm),
            (true, None) => Ordering::Greater,
            (false, _) => Ordering::Less,
        };
        match ord {
            Ordering::Greater => {
                out.push((x[i].0.clone(), a * &x[i].1));
                i += 1;
            }
            Ordering::Less => {
                out.push((ym.take().unwrap(), b * &y[j].1));
                j += 1;
                ym = y.get(j).map(|t| t.0.mul(m));
            }
            Ordering::Equal => {
                let c = a * &x[i].1 + b * &y[j].1;
                let mm = ym.take().unwrap();
                if !c.is_zero() {
                    out.push((mm, c));
                }
                i += 1;
                j += 1;
                ym = y.get(j).map(|t| t.0.mul(m));
            }
        }
    }
    out
}

struct Engine<'a> {
    order: MonomialOrder,
    polys: Vec<IPoly>,
    active: Vec<usize>,
    deadline: Option<Instant>,
    budget: &'a Budget,
    pairs_done: u64,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Mon,
}

enum Reduced {
    Poly(IPoly),
    Timeout,
}

impl Engine<'_> {
    fn timed_out(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    fn find_reducer(&self, m: &Mon, skip: Option<usize>) -> Option<usize> {
        self.active
            .iter()
            .copied()
            .filter(|&k| Some(k) != skip)
            .find(|&k| self.polys[k][0].0.divides(m))
    }

    /// Full reduction by the active polynomials; the result is primitive.
    fn reduce(&self, mut p: IPoly, skip: Option<usize>) -> Reduced {
        let mut rem: IPoly = Vec::new();
        let mut steps = 0u32;
        while !p.is_empty() {
            steps += 1;
            if steps.is_multiple_of(16) {
                if self.timed_out() {
                    return Reduced::Timeout;
                }
                strip_joint_content(&mut p, &mut rem);
            }
            let (lm, lc) = (&p[0].0, &p[0].1);
            match self.find_reducer(lm, skip) {
                Some(k) => {
                    let g = &self.polys[k];
                    let gcd = lc.gcd(&g[0].1);
                    let mp = &g[0].1 / &gcd;
                    let mg = -(lc / &gcd);
                    let q = lm.div(&g[0].0);
                    p = lin_comb(self.order, &mp, &p[1..], &mg, &q, &g[1..]);
                    if !mp.is_one() {
                        for (_, c) in rem.iter_mut() {
                            *c *= &mp;
                        }
                    }
                }
                None => {
                    let mut it = p.into_iter();
                    rem.push(it.next().unwrap());
                    p = it.collect();
                }
            }
        }
        make_primitive(&mut rem);
        Reduced::Poly(rem)
    }

    fn spoly(&self, pair: &Pair) -> IPoly {
        let (f, g) = (&self.polys[pair.i], &self.polys[pair.j]);
        let gcd = f[0].1.gcd(&g[0].1);
        let a = &g[0].1 / &gcd;
        let b = -(&f[0].1 / &gcd);
        let mf = pair.lcm.div(&f[0].0);
        let mg = pair.lcm.div(&g[0].0);
        let x: IPoly = f[1..].iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect();
        lin_comb(self.order, &a, &x, &b, &mg, &g[1..])
    }

    /// Gebauer–Möller update after adding polynomial `h`.
    fn update(&mut self, pairs: &mut Vec<Pair>, h: usize) {
        let lh = self.polys[h][0].0.clone();
        let mut cands: Vec<Pair> = self
            .active
            .iter()
            .map(|&g| Pair { i: g, j: h, lcm: self.polys[g][0].0.lcm(&lh) })
            .collect();
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(p) = cands.pop() {
            let disjoint = self.polys[p.i][0].0.disjoint(&lh);
            let dominated = cands.iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
            if disjoint || !dominated {
                kept.push(p);
            }
        }
        kept.retain(|p| !self.polys[p.i][0].0.disjoint(&lh));
        pairs.retain(|p| {
            !(lh.divides(&p.lcm)
                && self.polys[p.i][0].0.lcm(&lh) != p.lcm
                && self.polys[p.j][0].0.lcm(&lh) != p.lcm)
        });
        pairs.extend(kept);
        self.active.retain(|&g| !lh.divides(&self.polys[g][0].0));
        self.active.push(h);
    }
}

fn strip_joint_content(p: &mut IPoly, rem: &mut IPoly) {
    let mut g = BigInt::zero();
    for (_, c) in p.iter().chain(rem.iter()) {
        g = g.gcd(c);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, c) in p.iter_mut().chain(rem.iter_mut()) {
        *c /= &g;
    }
}

/// Reduced Gröbner basis of `ideal`, or a timeout verdict once the budget runs out.
///
/// The zero ideal has the empty basis.
pub fn buchberger(ideal: &Ideal, budget: &Budget) -> Result<GbOutcome> {
    buchberger_inner(ideal, budget)
}

fn buchberger_inner(ideal: &Ideal, budget: &Budget) -> Result<GbOutcome> {
    let start = Instant::now();
    let order = ideal.order;
    let mut engine = Engine {
        order,
        polys: Vec::new(),
        active: Vec::new(),
        deadline: budget.deadline(start),
        budget,
        pairs_done: 0,
    };
    let unit = |vars: &Arc<VarSet>, pairs| {
        Ok(GbOutcome::Basis(GroebnerBasis {
            vars: vars.clone(),
            order,
            polys: vec![MPoly::one(vars)],
            pairs_processed: pairs,
        }))
    };
    let mut pairs: Vec<Pair> = Vec::new();
    let mut inputs: Vec<IPoly> = ideal.gens.iter().map(|g| to_ipoly(g, order)).collect();
    inputs.sort_by(|x, y| mcmp(order, &x[0].0, &y[0].0));
    for g in inputs {
        let h = match engine.reduce(g, None) {
            Reduced::Timeout => return Ok(GbOutcome::Timeout),
            Reduced::Poly(h) => h,
        };
        if h.is_empty() {
            continue;
        }
        if h[0].0.deg == 0 {
            return unit(&ideal.vars, 0);
        }
        engine.polys.push(h);
        let idx = engine.polys.len() - 1;
        engine.update(&mut pairs, idx);
    }
    while !pairs.is_empty() {
        if engine.timed_out() || engine.budget.max_pairs.is_some_and(|m| engine.pairs_done >= m) {
            return Ok(GbOutcome::Timeout);
        }
        let best = (0..pairs.len())
            .min_by(|&x, &y| {
                mcmp(order, &pairs[x].lcm, &pairs[y].lcm)
                    .then((pairs[x].j, pairs[x].i).cmp(&(pairs[y].j, pairs[y].i)))
            })
            .unwrap();
        let pair = pairs.swap_remove(best);
        engine.pairs_done += 1;
        let s = engine.spoly(&pair);
        let h = match engine.reduce(s, None) {
            Reduced::Timeout => return Ok(GbOutcome::Timeout),
            Reduced::Poly(h) => h,
        };
        if h.is_empty() {
            continue;
        }
        if h[0].0.deg == 0 {
            // 1 is in the ideal; the reduced basis is {1}
            return unit(&ideal.vars, engine.pairs_done);
        }
        engine.polys.push(h);
        let idx = engine.polys.len() - 1;
        engine.update(&mut pairs, idx);
    }
    // interreduce the (already minimal) active set; heads are never rewritten
    let mut polys: Vec<MPoly> = Vec::with_capacity(engine.active.len());
    for &k in &engine.active {
        match engine.reduce(engine.polys[k].clone(), Some(k)) {
            Reduced::Timeout => return Ok(GbOutcome::Timeout),
            Reduced::Poly(r) => polys.push(to_mpoly(&r, &ideal.vars)),
        }
    }
    polys.sort_by(|x, y| {
        let lx = order.leading_term(x).unwrap().0;
        let ly = order.leading_term(y).unwrap().0;
        order.compare(&lx.0, &ly.0)
    });
    Ok(GbOutcome::Basis(GroebnerBasis {
        vars: ideal.vars.clone(),
        order,
        polys,
        pairs_processed: engine.pairs_done,
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Membership {
    Member,
    NotMember,
    Timeout,
}

/// Name for the auxiliary variable that does not clash with `vars`.
fn fresh_name(vars: &VarSet) -> String {
    let mut name = "y".to_string();
    while vars.index_of(&name).is_some() {
        name.push('_');
    }
    name
}

/// Decides `p ∈ √I` as `1 ∈ I + (1 - y p)` with a fresh variable `y`.
pub fn radical_member(p: &MPoly, ideal: &Ideal, budget: &Budget) -> Result<Membership> {
    if p.vars() != &ideal.vars {
        return usage("radical membership for a polynomial over a different variable set");
    }
    if p.is_zero() {
        return Ok(Membership::Member);
    }
    let ext = ideal.vars.with_extra(&fresh_name(&ideal.vars), 0)?;
    let y = MPoly::var_at(&ext, ext.len() - 1);
    let mut gens = ideal
        .gens
        .iter()
        .map(|g| g.embed(&ext))
        .collect::<Result<Vec<_>>>()?;
    gens.push(&MPoly::one(&ext) - &(&y * &p.embed(&ext)?));
    let aux = Ideal::new(&ext, gens, ideal.order)?;
    Ok(match buchberger_inner(&aux, budget)? {
        GbOutcome::Timeout => Membership::Timeout,
        GbOutcome::Basis(gb) if gb.is_unit() => Membership::Member,
        GbOutcome::Basis(_) => Membership::NotMember,
    })
}

/// Condition (T) at `point = (c2, …, ca)`.
pub fn check_t(model: &LocalModel, point: &[Rational]) -> Result<bool> {
    if point.len() != model.dim() {
        return usage(format!("point has {} coordinates, expected {}", point.len(), model.dim()));
    }
    if model.a == 2 {
        return Ok(!point[0].is_zero());
    }
    let e = Expansion::new(*model, model.a as usize);
    Ok(!e.jac_bar()?.eval(point)?.is_zero())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Timeout,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Timeout => "timeout",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexDetail {
    pub verdict: Verdict,
    pub elapsed_ms: u64,
    /// Verdicts of the two ideal presentations, F-form then f-form.
    pub forms: [Verdict; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GVerdict {
    pub model: LocalModel,
    pub verdict: Verdict,
    pub indices: BTreeMap<u32, IndexDetail>,
    pub elapsed_ms: u64,
}

fn membership_to_verdict(m: Membership) -> Verdict {
    match m {
        Membership::Member => Verdict::Fails,
        Membership::NotMember => Verdict::Holds,
        Membership::Timeout => Verdict::Timeout,
    }
}

/// Polynomials shared by every index of the genericity test for one model.
#[derive(Debug, Clone)]
pub struct GProblem {
    pub expansion: Expansion,
    /// `J̄ac`, or `∂f_{b+1}/∂c_2` when `a = 2`.
    pub jac: MPoly,
    /// `F_{-1}, …, F_{-(a-1)}`.
    pub big_f: Vec<MPoly>,
}

impl GProblem {
    pub fn new(model: &LocalModel) -> Result<Self> {
        let e = Expansion::new(*model, model.a as usize);
        let jac = if model.a == 2 { e.f_b(1).diff_at(0) } else { e.jac_bar()? };
        let big_f = (1..model.a).map(|n| e.big_f(n)).collect::<Result<_>>()?;
        Ok(GProblem { expansion: e, jac, big_f })
    }

    /// The two presentations of the test at index `i`.
    ///
    /// Returns `(generators, p)` pairs: first with the `F_{-n}` (`n ≠ i`) as
    /// generators and `p = F_{-i} J̄ac`, then the triangular form with
    /// `f_{b+1}, …, f_{b+i-1}`, the `F_{-n}` (`n > i`) reduced modulo them,
    /// and `p = f_{b+i} J̄ac`. Both generate the same ideal.
    pub fn presentations(&self, i: u32) -> Result<[(Vec<MPoly>, MPoly); 2]> {
        let e = &self.expansion;
        let a = e.model().a;
        if i == 0 || i >= a {
            return usage(format!("index i = {i} outside [1, {}]", a - 1));
        }
        let f_form = (
            (1..a).filter(|&n| n != i).map(|n| self.big_f[(n - 1) as usize].clone()).collect(),
            &self.big_f[(i - 1) as usize] * &self.jac,
        );
        let mut gens: Vec<MPoly> = (1..i).map(|n| e.f_b(n as i64)).collect();
        for n in i + 1..a {
            let mut g = e.f_b(n as i64);
            for m in i..n {
                let theta = e.theta_cap(-(m as i64), (n - m) as usize)?;
                if !theta.is_zero() {
                    g = &g + &(&theta * &e.f_b(m as i64));
                }
            }
            gens.push(g);
        }
        let simple = (gens, &e.f_b(i as i64) * &self.jac);
        Ok([f_form, simple])
    }

    /// Condition (G) at index `i`; both presentations share the wall-clock budget.
    pub fn check_index(&self, i: u32, budget: &Budget) -> Result<IndexDetail> {
        let start = Instant::now();
        let vars = self.expansion.vars().clone();
        let mut forms = [Verdict::Timeout; 2];
        for (k, (gens, p)) in self.presentations(i)?.into_iter().enumerate() {
            let ideal = Ideal::new(&vars, gens, MonomialOrder::Grevlex)?;
            forms[k] = membership_to_verdict(radical_member(&p, &ideal, &remaining(budget, start))?);
        }
        let verdict = match forms {
            [x, y] if x == y => x,
            [Verdict::Timeout, y] | [y, Verdict::Timeout] => y,
            [x, y] => {
                let m = self.expansion.model();
                return Err(Error::Consistency(format!(
                    "(G) at ({}, {}), i = {i}: F-form says {}, f-form says {}",
                    m.a,
                    m.b,
                    x.as_str(),
                    y.as_str()
                )));
            }
        };
        Ok(IndexDetail { verdict, elapsed_ms: start.elapsed().as_millis() as u64, forms })
    }
}

fn remaining(budget: &Budget, start: Instant) -> Budget {
    Budget { wall: budget.wall.map(|w| w.saturating_sub(start.elapsed())), max_pairs: budget.max_pairs }
}

/// Condition (G) at a single index.
pub fn check_g_index(model: &LocalModel, i: u32, budget: &Budget) -> Result<IndexDetail> {
    GProblem::new(model)?.check_index(i, budget)
}

/// Condition (G) at every index `1 ≤ i ≤ a-1`; the budget covers the whole check.
pub fn check_g(model: &LocalModel, budget: &Budget) -> Result<GVerdict> {
    let start = Instant::now();
    let problem = GProblem::new(model)?;
    let mut indices = BTreeMap::new();
    for i in 1..model.a {
        indices.insert(i, problem.check_index(i, &remaining(budget, start))?);
    }
    Ok(GVerdict {
        model: *model,
        verdict: aggregate(indices.values().map(|d| d.verdict)),
        indices,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// `fails` dominates `timeout`, which dominates `holds`.
pub fn aggregate(vs: impl IntoIterator<Item = Verdict>) -> Verdict {
    let mut out = Verdict::Holds;
    for v in vs {
        match v {
            Verdict::Fails => return Verdict::Fails,
            Verdict::Timeout => out = Verdict::Timeout,
            Verdict::Holds => {}
        }
    }
    out
}

/// Evaluates the three clauses of (G) at an explicit witness.
pub fn witness_verify(model: &LocalModel, i: u32, point: &[Rational]) -> Result<bool> {
    if point.len() != model.dim() {
        return usage(format!("point has {} coordinates, expected {}", point.len(), model.dim()));
    }
    if i == 0 || i >= model.a {
        return usage(format!("index i = {i} outside [1, {}]", model.a - 1));
    }
    let e = Expansion::new(*model, model.a as usize);
    for n in 1..model.a {
        let v = e.big_f(n)?.eval(point)?;
        if (n == i) == v.is_zero() {
            return Ok(false);
        }
    }
    check_t(model, point)
}
