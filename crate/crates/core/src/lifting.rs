//! Multi-point bookkeeping and the order-by-order construction of solutions.
//!
//! A configuration is a list of singular points `(a_j, b_j)`, `j = 1..e`
//! (indices are 1-based in every public type). Sections are given only
//! through their residues `(j, m) ↦ r`, the coefficients of the poles of
//! order `m` at point `j`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::expansion::{Expansion, LocalModel};
use crate::groebner::{check_t, GVerdict, Verdict};
use crate::matrix::{in_row_space, inverse};
use crate::poly::{MPoly, VarSet};
use crate::rational::{int, lcm_all, rational_root, Rational};
use crate::series::TSeries;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularConfig {
    pub points: Vec<LocalModel>,
}

impl SingularConfig {
    pub fn new(points: Vec<LocalModel>) -> Result<Self> {
        if points.is_empty() {
            return usage("a configuration needs at least one singular point");
        }
        for p in &points {
            LocalModel::new(p.a, p.b)?;
        }
        Ok(SingularConfig { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Point `j`, 1-based.
    pub fn point(&self, j: usize) -> Result<&LocalModel> {
        if j == 0 || j > self.points.len() {
            return usage(format!("point index {j} outside [1, {}]", self.points.len()));
        }
        Ok(&self.points[j - 1])
    }

    pub fn all_double_points(&self) -> bool {
        self.points.iter().all(|p| p.a == 2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Weights {
    pub m: u64,
    pub d: Vec<u64>,
}

impl Weights {
    /// `d_j (b_j + a_j − m)` for the pair `(j, m)`.
    pub fn pair_weight(&self, config: &SingularConfig, j: usize, m: u32) -> Result<i64> {
        let p = config.point(j)?;
        Ok(self.d[j - 1] as i64 * (p.b as i64 + p.a as i64 - m as i64))
    }
}

/// `M = lcm(b_j + 1)` and `d_j = M / (b_j + 1)`.
pub fn compute_weights(config: &SingularConfig) -> Weights {
    let bs: Vec<u64> = config.points.iter().map(|p| p.b as u64 + 1).collect();
    let m = lcm_all(&bs);
    Weights { m, d: bs.iter().map(|b| m / b).collect() }
}

/// `(j, m) > (j', m')` iff the pair weight is smaller, ties broken by the larger `j`.
pub fn pair_compare(
    config: &SingularConfig,
    w: &Weights,
    p: (usize, u32),
    q: (usize, u32),
) -> Result<Ordering> {
    let wp = w.pair_weight(config, p.0, p.1)?;
    let wq = w.pair_weight(config, q.0, q.1)?;
    Ok(wq.cmp(&wp).then(p.0.cmp(&q.0)))
}

/// A section known only through its residues; zero residues are not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionProfile {
    pub id: String,
    pub residues: BTreeMap<(usize, u32), Rational>,
}

impl SectionProfile {
    pub fn new(id: impl Into<String>, entries: impl IntoIterator<Item = ((usize, u32), Rational)>) -> Self {
        let mut residues = BTreeMap::new();
        for (k, r) in entries {
            let slot: &mut Rational = residues.entry(k).or_insert_with(Rational::zero);
            *slot += r;
        }
        residues.retain(|_, r: &mut Rational| !r.is_zero());
        SectionProfile { id: id.into(), residues }
    }

    /// Keys of the nonzero residues.
    pub fn psupp(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.residues.keys().copied()
    }

    fn validate(&self, config: &SingularConfig) -> Result<()> {
        for &(j, m) in self.residues.keys() {
            config.point(j)?;
            if m == 0 {
                return usage(format!("section {}: pole order must be positive at point {j}", self.id));
            }
        }
        Ok(())
    }
}

/// `P(η)` and `ord(η)`; both are `None` for a section without residues (order ∞).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionOrd {
    pub top: Option<(usize, u32)>,
    pub ord: Option<i64>,
}

pub fn section_ord(config: &SingularConfig, w: &Weights, eta: &SectionProfile) -> Result<SectionOrd> {
    eta.validate(config)?;
    let mut top: Option<(usize, u32)> = None;
    for p in eta.psupp() {
        top = match top {
            Some(q) if pair_compare(config, w, q, p)? == Ordering::Greater => Some(q),
            _ => Some(p),
        };
    }
    let ord = top.map(|(j, m)| w.pair_weight(config, j, m)).transpose()?;
    Ok(SectionOrd { top, ord })
}

/// One selected representative of the filtration by order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisEntry {
    /// Id of the input row the representative was built from.
    pub id: String,
    pub section: SectionProfile,
    pub top: (usize, u32),
    pub ord: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisI {
    /// Sorted by decreasing order, ties by increasing point index.
    pub entries: Vec<BasisEntry>,
    /// Ids of sections with no residues; they lie in the order-∞ part.
    pub excluded: Vec<String>,
}

/// Pairs appearing in `sections` together with `(j, m)`, `1 ≤ m < a_j`, sorted from largest to smallest.
fn columns(config: &SingularConfig, w: &Weights, sections: &[SectionProfile]) -> Result<Vec<(usize, u32)>> {
    let mut cols: Vec<(usize, u32)> = Vec::new();
    for (j, p) in config.points.iter().enumerate() {
        cols.extend((1..p.a).map(|m| (j + 1, m)));
    }
    for s in sections {
        s.validate(config)?;
        cols.extend(s.psupp());
    }
    cols.sort();
    cols.dedup();
    let mut err = None;
    cols.sort_by(|p, q| match pair_compare(config, w, *q, *p) {
        Ok(o) => o,
        Err(e) => {
            err = Some(e);
            Ordering::Equal
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(cols),
    }
}

fn residue_matrix(sections: &[SectionProfile], cols: &[(usize, u32)]) -> Vec<Vec<Rational>> {
    sections
        .iter()
        .map(|s| cols.iter().map(|c| s.residues.get(c).cloned().unwrap_or_else(Rational::zero)).collect())
        .collect()
}

/// Representatives whose tops `P(η)` are pairwise distinct, by elimination
/// from the largest pair downwards; the pivot at each column is the first
/// remaining row in input order.
pub fn build_basis_i(config: &SingularConfig, sections: &[SectionProfile]) -> Result<BasisI> {
    let w = compute_weights(config);
    let cols = columns(config, &w, sections)?;
    let mut excluded = Vec::new();
    let mut rows: Vec<(usize, Vec<Rational>)> = Vec::new();
    for (i, row) in residue_matrix(sections, &cols).into_iter().enumerate() {
        if row.iter().all(Zero::is_zero) {
            excluded.push(sections[i].id.clone());
        } else {
            rows.push((i, row));
        }
    }
    let mut picked: Vec<(usize, usize, Vec<Rational>)> = Vec::new();
    for (c, _) in cols.iter().enumerate() {
        let Some(pos) = rows.iter().position(|(_, r)| !r[c].is_zero()) else {
            continue;
        };
        let (src, pivot) = rows.remove(pos);
        for (_, r) in rows.iter_mut() {
            if !r[c].is_zero() {
                let f = &r[c] / &pivot[c];
                for (x, y) in r.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        picked.push((src, c, pivot));
    }
    if let Some((src, _)) = rows.first() {
        return usage(format!(
            "section {} is a linear combination of the other residue profiles",
            sections[*src].id
        ));
    }
    let mut entries: Vec<BasisEntry> = picked
        .into_iter()
        .map(|(src, c, row)| {
            let section = SectionProfile::new(
                sections[src].id.clone(),
                cols.iter().copied().zip(row).filter(|(_, r)| !r.is_zero()),
            );
            let top = cols[c];
            BasisEntry {
                id: sections[src].id.clone(),
                ord: w.pair_weight(config, top.0, top.1).expect("validated"),
                section,
                top,
            }
        })
        .collect();
    entries.sort_by(|x, y| {
        pair_compare(config, &w, x.top, y.top).expect("validated")
    });
    Ok(BasisI { entries, excluded })
}

/// Variables `c{k}_{j}` for every point `j` and `2 ≤ k ≤ a_j`, with weight `k`.
pub fn joint_vars(config: &SingularConfig) -> Arc<VarSet> {
    let mut names = Vec::new();
    let mut weights = Vec::new();
    for (j, p) in config.points.iter().enumerate() {
        for k in 2..=p.a {
            names.push(format!("c{k}_{}", j + 1));
            weights.push(k);
        }
    }
    VarSet::new(names, weights).expect("names are distinct")
}

fn block_offset(config: &SingularConfig, j: usize) -> usize {
    config.points[..j - 1].iter().map(|p| p.dim()).sum()
}

/// `F_{-n}` of point `j` rewritten in the joint variables.
fn big_f_in_block(config: &SingularConfig, vars: &Arc<VarSet>, j: usize, n: u32) -> Result<MPoly> {
    let p = config.point(j)?;
    let f = Expansion::new(*p, p.a as usize).big_f(n)?;
    let off = block_offset(config, j);
    let images: Vec<MPoly> = (0..p.dim()).map(|i| MPoly::var_at(vars, off + i)).collect();
    f.substitute(&images)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarTerm {
    pub j: usize,
    pub m: u32,
    /// `a_j · r`, the factor in front of `F_{-(a_j - m)}`.
    pub coefficient: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarEquation {
    pub section_id: String,
    pub ord: i64,
    pub terms: Vec<StarTerm>,
    /// `Σ a_j r F_{-(a_j-m)}`; a single term is divided by its scalar.
    pub poly: MPoly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarSystem {
    pub vars: Arc<VarSet>,
    pub equations: Vec<StarEquation>,
}

/// One equation per section with residues, built from the pairs at the extremal order.
pub fn build_star_system(config: &SingularConfig, sections: &[SectionProfile]) -> Result<StarSystem> {
    let w = compute_weights(config);
    let vars = joint_vars(config);
    let mut equations = Vec::new();
    for eta in sections {
        let so = section_ord(config, &w, eta)?;
        let Some(ord) = so.ord else { continue };
        let mut terms = Vec::new();
        let mut poly = MPoly::zero(&vars);
        for (&(j, m), r) in &eta.residues {
            if w.pair_weight(config, j, m)? != ord {
                continue;
            }
            let a = config.point(j)?.a;
            if m >= a {
                return usage(format!(
                    "section {}: pole order {m} at point {j} must be below a_j = {a}",
                    eta.id
                ));
            }
            let coefficient = int(a as i64) * r;
            poly = &poly + &big_f_in_block(config, &vars, j, a - m)?.scale(&coefficient);
            terms.push(StarTerm { j, m, coefficient });
        }
        if let [single] = terms.as_slice() {
            poly = poly.scale(&(Rational::one() / &single.coefficient));
        }
        equations.push(StarEquation { section_id: eta.id.clone(), ord, terms, poly });
    }
    Ok(StarSystem { vars, equations })
}

fn flatten_points(config: &SingularConfig, points: &[Vec<Rational>]) -> Result<Vec<Rational>> {
    if points.len() != config.len() {
        return usage(format!("expected {} point blocks, got {}", config.len(), points.len()));
    }
    let mut flat = Vec::new();
    for (j, (p, v)) in config.points.iter().zip(points).enumerate() {
        if v.len() != p.dim() {
            return usage(format!("block {} has {} coordinates, expected {}", j + 1, v.len(), p.dim()));
        }
        flat.extend(v.iter().cloned());
    }
    Ok(flat)
}

pub fn star_satisfied(config: &SingularConfig, system: &StarSystem, points: &[Vec<Rational>]) -> Result<bool> {
    let flat = flatten_points(config, points)?;
    for eq in &system.equations {
        if !eq.poly.eval(&flat)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

fn rpow(x: &Rational, e: i64) -> Rational {
    let p = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        Rational::one() / p
    } else {
        p
    }
}

/// Nonzero rationals `(x, y)` with `α₁ x^{e₁} + α₂ y^{e₂} = 0`, if any exist.
///
/// With `q = −α₂/α₁` and `g = gcd(e₁, e₂)`, a rational `g`-th root `ρ` of `q`
/// gives `x = ρ^u`, `y = ρ^v` for any `u e₁ − v e₂ = g`.
pub fn solve_two_term_scaling(alpha1: &Rational, e1: u32, alpha2: &Rational, e2: u32) -> Option<(Rational, Rational)> {
    match (alpha1.is_zero(), alpha2.is_zero()) {
        (true, true) => return Some((Rational::one(), Rational::one())),
        (true, false) | (false, true) => return None,
        _ => {}
    }
    let q = -(alpha2 / alpha1);
    let (g, u, v) = ext_gcd(e1 as i64, e2 as i64);
    let rho = rational_root(&q, g as u32)?;
    Some((rpow(&rho, u), rpow(&rho, -v)))
}

/// Rescales two blocks so that a two-term star equation holds.
///
/// Double points scale `c2 ↦ μ c2`, where `F_{-1} ∝ c2^{(b+1)/2}`; other
/// points use the weighted rescaling `c_k ↦ λ^k c_k`. Returns `None` when no
/// rational scaling exists.
pub fn rescale_two_blocks(
    config: &SingularConfig,
    eq: &StarEquation,
    seeds: &[Vec<Rational>],
) -> Result<Option<Vec<Vec<Rational>>>> {
    let flat = flatten_points(config, seeds)?;
    let [t1, t2] = eq.terms.as_slice() else {
        return usage("rescaling needs an equation with exactly two terms");
    };
    if t1.j == t2.j {
        return usage("both terms of the equation live on the same point");
    }
    let vars = joint_vars(config);
    let mut alphas = Vec::new();
    let mut exps = Vec::new();
    for t in [t1, t2] {
        let p = config.point(t.j)?;
        let f = big_f_in_block(config, &vars, t.j, p.a - t.m)?;
        alphas.push(&t.coefficient * f.eval(&flat)?);
        let deg = p.b + p.a - t.m;
        exps.push(if p.a == 2 { deg / 2 } else { deg });
    }
    let Some((x, y)) = solve_two_term_scaling(&alphas[0], exps[0], &alphas[1], exps[1]) else {
        return Ok(None);
    };
    let mut out = seeds.to_vec();
    for (t, s) in [(t1, x), (t2, y)] {
        let p = config.point(t.j)?;
        let block = &mut out[t.j - 1];
        if p.a == 2 {
            block[0] = &block[0] * &s;
        } else {
            for (i, c) in block.iter_mut().enumerate() {
                *c = &*c * &rpow(&s, i as i64 + 2);
            }
        }
    }
    Ok(Some(out))
}

/// Jacobian `J_{ji} = ∂f̄_{b+j}/∂c_i` at `(c̃, c̃)`.
pub fn jacobian_at(model: &LocalModel, point: &[Rational]) -> Result<Vec<Vec<Rational>>> {
    if point.len() != model.dim() {
        return usage(format!("point has {} coordinates, expected {}", point.len(), model.dim()));
    }
    let e = Expansion::new(*model, model.a as usize);
    e.jacobian_matrix()?
        .iter()
        .map(|row| row.iter().map(|p| p.eval(point)).collect())
        .collect()
}

/// `V = J^{-1}`: column `j` of `V` is moved by `df̄_{b+l}` to `δ_{lj}`.
///
/// Indexing is `V[i][j]`, coordinate `c_{i+2}` of the `j+1`-th vector.
pub fn dual_kernel_basis(model: &LocalModel, point: &[Rational]) -> Result<Vec<Vec<Rational>>> {
    if !check_t(model, point)? {
        return Err(Error::Precondition(format!(
            "transversality fails for {model} at the given point"
        )));
    }
    inverse(&jacobian_at(model, point)?)?
        .ok_or_else(|| Error::Precondition(format!("Jacobian of f-bar is singular for {model}")))
}

// ---------------------------------------------------------------------------
// Perturbation terms and lifting

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OShape {
    /// `α t^l Π c^{l_p}` with total weight `≥ d(b+j) + 1`.
    Higher,
    /// `α t^l Π c^{l_p} (c_k − c_k(−∞)) (c_m − c_m(−∞))` with weight `≥ d(b+j) − d(k+m)`.
    Quadratic { k: u32, m: u32 },
}

/// One summand of a perturbation `o_{b+j}`.
///
/// `exps[q]` holds the exponents of `c_2..c_{a_q}` of point `q+1`; terms may
/// involve other points' coordinates. The quadratic factors always refer to
/// the point the equation belongs to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OTerm {
    pub coeff: Rational,
    pub t_pow: usize,
    pub exps: Vec<Vec<u32>>,
    pub shape: OShape,
}

/// Supplies the perturbation `o_{b+j}` of equation `j` at point `block` (both 1-based).
pub trait PerturbationProvider {
    fn terms(&self, block: usize, j: u32) -> Vec<OTerm>;
}

/// `o ≡ 0`.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoPerturbation;

impl PerturbationProvider for NoPerturbation {
    fn terms(&self, _: usize, _: u32) -> Vec<OTerm> {
        Vec::new()
    }
}

/// Fixed table of terms keyed by `(block, j)`.
#[derive(Debug, Clone, Default)]
pub struct TermTable(pub BTreeMap<(usize, u32), Vec<OTerm>>);

impl PerturbationProvider for TermTable {
    fn terms(&self, block: usize, j: u32) -> Vec<OTerm> {
        self.0.get(&(block, j)).cloned().unwrap_or_default()
    }
}

/// Solution data of one point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockState {
    pub model: LocalModel,
    pub d: u64,
    pub witness: Vec<Rational>,
    /// `c_2, …, c_a`.
    pub c: Vec<TSeries>,
    /// `c(−∞)`, the base point of `f̄`.
    pub base: Vec<TSeries>,
    /// The system holds modulo `t^{d(b+j)+order}`.
    pub order: usize,
}

#[derive(Debug, Clone)]
struct BlockData {
    fbar: Vec<MPoly>,
    /// `f_{b+j}(c̃)`.
    targets: Vec<Rational>,
    inverse: Vec<Vec<Rational>>,
}

#[derive(Debug, Clone)]
pub struct LiftState {
    pub config: SingularConfig,
    pub weights: Weights,
    pub modulus: usize,
    pub blocks: Vec<BlockState>,
    data: Vec<BlockData>,
}

impl PartialEq for LiftState {
    fn eq(&self, other: &Self) -> bool {
        self.config == other.config && self.modulus == other.modulus && self.blocks == other.blocks
    }
}

impl LiftState {
    /// Seed `c_i = t^{d i} c̃_i` at every point, with `c(−∞)` equal to the seed.
    pub fn seed(config: &SingularConfig, witnesses: &[Vec<Rational>], modulus: usize) -> Result<Self> {
        flatten_points(config, witnesses)?;
        let weights = compute_weights(config);
        let mut blocks = Vec::new();
        let mut data = Vec::new();
        for (idx, (p, w)) in config.points.iter().zip(witnesses).enumerate() {
            let d = weights.d[idx];
            let c: Vec<TSeries> = w
                .iter()
                .enumerate()
                .map(|(i, x)| TSeries::monomial(x.clone(), d as usize * (i + 2), modulus))
                .collect();
            let e = Expansion::new(*p, p.a as usize);
            let inverse = dual_kernel_basis(p, w)?;
            data.push(BlockData {
                fbar: (1..p.a).map(|j| e.f_bar(j)).collect::<Result<_>>()?,
                targets: (1..p.a).map(|j| e.f_b(j as i64).eval(w)).collect::<Result<_>>()?,
                inverse,
            });
            blocks.push(BlockState { model: *p, d, witness: w.clone(), base: c.clone(), c, order: 1 });
        }
        Ok(LiftState { config: config.clone(), weights, modulus, blocks, data })
    }

    /// Replaces `c(−∞)` of one block; it must agree with `t^{di} c̃_i` modulo `t^{di+1}`.
    pub fn with_base(mut self, block: usize, base: Vec<TSeries>) -> Result<Self> {
        let b = self
            .blocks
            .get_mut(block.wrapping_sub(1))
            .ok_or_else(|| Error::Usage(format!("no block {block}")))?;
        if base.len() != b.c.len() || base.iter().any(|x| x.modulus() != self.modulus) {
            return usage("base point has the wrong shape");
        }
        for (i, (x, s)) in base.iter().zip(&b.c).enumerate() {
            if (x - s).ord() < b.d as usize * (i + 2) + 1 {
                return Err(Error::Precondition(format!(
                    "c_{}(-inf) differs from the seed below order t^{}",
                    i + 2,
                    b.d as usize * (i + 2) + 1
                )));
            }
        }
        b.base = base;
        Ok(self)
    }

    fn term_weight(&self, t: &OTerm) -> Result<i64> {
        if t.exps.len() != self.blocks.len() {
            return usage("perturbation term has the wrong number of exponent blocks");
        }
        let mut w = t.t_pow as i64;
        for (b, e) in self.blocks.iter().zip(&t.exps) {
            if e.len() != b.c.len() {
                return usage("perturbation exponent block has the wrong length");
            }
            w += b.d as i64 * e.iter().enumerate().map(|(i, &x)| (i as i64 + 2) * x as i64).sum::<i64>();
        }
        Ok(w)
    }

    /// Checks every term of every `o_{b+j}` against its admissible shape.
    pub fn validate(&self, provider: &dyn PerturbationProvider) -> Result<()> {
        for (bi, b) in self.blocks.iter().enumerate() {
            let (a, bb, d) = (b.model.a, b.model.b as i64, b.d as i64);
            for j in 1..a {
                for (n, t) in provider.terms(bi + 1, j).iter().enumerate() {
                    let w = self.term_weight(t)?;
                    let need = match t.shape {
                        OShape::Higher => d * (bb + j as i64) + 1,
                        OShape::Quadratic { k, m } => {
                            if !(2..=a).contains(&k) || !(2..=a).contains(&m) {
                                return Err(Error::Contract(format!(
                                    "o_(b+{j}) at point {}: term #{n} uses c_{k}, c_{m} outside c_2..c_{a}",
                                    bi + 1
                                )));
                            }
                            d * (bb + j as i64) - d * (k + m) as i64
                        }
                    };
                    if w < need {
                        return Err(Error::Contract(format!(
                            "o_(b+{j}) at point {}: term #{n} ({:?}, t^{}) has weight {w} < {need}",
                            bi + 1,
                            t.shape,
                            t.t_pow
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn eval_term(&self, block: usize, t: &OTerm) -> TSeries {
        let k = self.modulus;
        let mut v = TSeries::monomial(t.coeff.clone(), t.t_pow, k);
        for (b, e) in self.blocks.iter().zip(&t.exps) {
            for (c, &x) in b.c.iter().zip(e) {
                for _ in 0..x {
                    v = &v * c;
                }
            }
        }
        if let OShape::Quadratic { k: p, m: q } = t.shape {
            let b = &self.blocks[block - 1];
            for i in [p, q] {
                let idx = (i - 2) as usize;
                v = &v * &(&b.c[idx] - &b.base[idx]);
            }
        }
        v
    }

    /// `t^{d(b+j)} f_{b+j}(c̃) + o_{b+j}(c) − f̄_{b+j}(c, c(−∞))` for `j = 1..a-1`.
    pub fn residuals(&self, block: usize, provider: &dyn PerturbationProvider) -> Result<Vec<TSeries>> {
        let b = self.blocks.get(block.wrapping_sub(1)).ok_or_else(|| Error::Usage(format!("no block {block}")))?;
        let data = &self.data[block - 1];
        let k = self.modulus;
        let mut args = b.c.clone();
        args.extend(b.base.iter().cloned());
        let mut out = Vec::new();
        for j in 1..b.model.a {
            let shift = b.d as usize * (b.model.b + j) as usize;
            let mut r = TSeries::monomial(data.targets[(j - 1) as usize].clone(), shift, k);
            for t in provider.terms(block, j) {
                r = &r + &self.eval_term(block, &t);
            }
            let fb = data.fbar[(j - 1) as usize].eval_with(&args, |q| TSeries::constant(q.clone(), k));
            out.push(&r - &fb);
        }
        Ok(out)
    }

    /// Largest `q` with every equation of the block holding mod `t^{min(d(b+j)+q, K)}`, capped at the block's nominal order.
    pub fn closed_order(&self, block: usize, provider: &dyn PerturbationProvider) -> Result<usize> {
        let b = &self.blocks[block - 1];
        let mut q = usize::MAX;
        for (idx, r) in self.residuals(block, provider)?.iter().enumerate() {
            let base = b.d as usize * (b.model.b as usize + idx + 1);
            let ord = r.ord();
            let closed = if ord >= self.modulus { usize::MAX } else { ord.saturating_sub(base) };
            q = q.min(closed);
        }
        Ok(q)
    }
}

/// Record of one call to [`lift_step`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepRecord {
    pub block: usize,
    /// Order before the step.
    pub order: usize,
    /// Defects `h_j`.
    pub defects: Vec<Rational>,
    /// Correction `V h` added at `t^{d i + order}`.
    pub correction: Vec<Rational>,
}

/// Raises the order of one block by one.
///
/// Requires the block's equations to hold modulo `t^{d(b+j)+k}` where `k` is
/// the current order; the update only touches `t^{d i + k}` in `c_i`.
pub fn lift_step(
    state: &LiftState,
    block: usize,
    provider: &dyn PerturbationProvider,
) -> Result<(LiftState, StepRecord)> {
    state.validate(provider)?;
    let b = state.blocks.get(block.wrapping_sub(1)).ok_or_else(|| Error::Usage(format!("no block {block}")))?;
    let k = b.order;
    let modulus = state.modulus;
    let res = state.residuals(block, provider)?;
    let mut defects = Vec::new();
    for (idx, r) in res.iter().enumerate() {
        let at = b.d as usize * (b.model.b as usize + idx + 1) + k;
        if r.ord() < at.min(modulus) {
            return Err(Error::Precondition(format!(
                "point {block}: equation {} fails below t^{at} (residual order {})",
                idx + 1,
                r.ord()
            )));
        }
        defects.push(if at < modulus { r.coeff(at) } else { Rational::zero() });
    }
    let inv = &state.data[block - 1].inverse;
    let correction: Vec<Rational> = inv
        .iter()
        .map(|row| row.iter().zip(&defects).fold(Rational::zero(), |acc, (v, h)| acc + v * h))
        .collect();
    let mut next = state.clone();
    let nb = &mut next.blocks[block - 1];
    for (i, (c, x)) in nb.c.iter_mut().zip(&correction).enumerate() {
        let pow = b.d as usize * (i + 2) + k;
        *c = &*c + &TSeries::monomial(x.clone(), pow, modulus);
    }
    nb.order = k + 1;
    Ok((next, StepRecord { block, order: k, defects, correction }))
}

#[derive(Debug, Clone)]
pub struct LiftReport {
    pub state: LiftState,
    pub steps: Vec<StepRecord>,
    /// Per block, per equation: order of the final residual.
    pub residual_orders: Vec<Vec<usize>>,
    /// Every equation holds modulo `t^{min(d(b+j)+order, K)}` after every step.
    pub closes_each_step: bool,
    /// `c_i(k) − c_i(k−1) ≡ 0 mod t^{d i + k}` at every step.
    pub prefix_preserved: bool,
    /// Violations of non-interference: another block lost an order it had closed.
    pub interference: Vec<String>,
}

impl LiftReport {
    pub fn passed(&self) -> bool {
        self.closes_each_step && self.prefix_preserved && self.interference.is_empty()
    }
}

fn block_needs_step(state: &LiftState, block: usize) -> bool {
    let b = &state.blocks[block - 1];
    (b.d as usize) * (b.model.b as usize + 1) + b.order < state.modulus
}

fn equations_hold(state: &LiftState, block: usize, provider: &dyn PerturbationProvider) -> Result<bool> {
    let b = &state.blocks[block - 1];
    for (idx, r) in state.residuals(block, provider)?.iter().enumerate() {
        let need = (b.d as usize * (b.model.b as usize + idx + 1) + b.order).min(state.modulus);
        if r.ord() < need {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Runs [`lift_step`] round-robin over the points until every `d_j(b_j+1) + order_j ≥ K`.
pub fn lift_run(
    config: &SingularConfig,
    witnesses: &[Vec<Rational>],
    modulus: usize,
    provider: &dyn PerturbationProvider,
) -> Result<LiftReport> {
    let state = LiftState::seed(config, witnesses, modulus)?;
    lift_from(state, provider)
}

/// As [`lift_run`], from a prepared state (for example one with a custom `c(−∞)`).
pub fn lift_from(mut state: LiftState, provider: &dyn PerturbationProvider) -> Result<LiftReport> {
    state.validate(provider)?;
    let e = state.blocks.len();
    let mut steps = Vec::new();
    let mut closes = true;
    let mut prefix = true;
    let mut interference = Vec::new();
    for blk in 1..=e {
        closes &= equations_hold(&state, blk, provider)?;
    }
    while (1..=e).any(|blk| block_needs_step(&state, blk)) {
        for blk in 1..=e {
            if !block_needs_step(&state, blk) {
                continue;
            }
            let before: Vec<usize> = (1..=e)
                .map(|o| state.closed_order(o, provider))
                .collect::<Result<_>>()?;
            let (next, rec) = lift_step(&state, blk, provider)?;
            let k = rec.order;
            let b = &state.blocks[blk - 1];
            for (i, (old, new)) in b.c.iter().zip(&next.blocks[blk - 1].c).enumerate() {
                if (new - old).ord() < (b.d as usize * (i + 2) + k).min(state.modulus) {
                    prefix = false;
                }
            }
            closes &= equations_hold(&next, blk, provider)?;
            for o in (1..=e).filter(|&o| o != blk) {
                let nominal = next.blocks[o - 1].order;
                let after = next.closed_order(o, provider)?;
                if after < before[o - 1].min(nominal) {
                    interference.push(format!(
                        "updating point {blk} at order {k} lowered point {o} from order {} to {after}",
                        before[o - 1].min(nominal)
                    ));
                }
            }
            steps.push(rec);
            state = next;
        }
    }
    let residual_orders = (1..=e)
        .map(|blk| Ok(state.residuals(blk, provider)?.iter().map(TSeries::ord).collect()))
        .collect::<Result<_>>()?;
    Ok(LiftReport { state, steps, residual_orders, closes_each_step: closes, prefix_preserved: prefix, interference })
}

// ---------------------------------------------------------------------------
// Decision procedures

/// Condition (D): `dim_twisted < dim_plain + a_j − 1`.
pub fn check_d(config: &SingularConfig, j: usize, dim_twisted: u64, dim_plain: u64) -> Result<bool> {
    let a = config.point(j)?.a as u64;
    Ok(dim_twisted < dim_plain + a - 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dims {
    pub twisted: u64,
    pub plain: u64,
}

#[derive(Debug, Clone)]
pub struct VerdictInput {
    pub config: SingularConfig,
    pub sections: Vec<SectionProfile>,
    /// Keyed by 1-based point index.
    pub dims: BTreeMap<usize, Dims>,
    /// Whether the sections of the reduced normal sheaf are nonzero.
    pub nbar_nonzero: bool,
    /// Per-point (G) results, keyed by 1-based point index. Double points may be omitted.
    pub g_table: BTreeMap<usize, GVerdict>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeformVerdict {
    Deforms,
    DoesNotDeform,
    Unknown,
}

impl DeformVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            DeformVerdict::Deforms => "deforms",
            DeformVerdict::DoesNotDeform => "does_not_deform",
            DeformVerdict::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictOutcome {
    pub verdict: DeformVerdict,
    /// `"double_point"` or `"general"`.
    pub rule: String,
    /// `l_j` per point from the sets of pole orders realized by single-point sections; `None` where (D) fails.
    pub certificate: Vec<Option<u32>>,
    pub reasons: Vec<String>,
}

/// `I_j`: pole orders `k < a_j` for which some section has polar support exactly `{(j, k)}`.
pub fn single_support_orders(config: &SingularConfig, sections: &[SectionProfile]) -> Result<Vec<Vec<u32>>> {
    let w = compute_weights(config);
    let cols = columns(config, &w, sections)?;
    let mat = residue_matrix(sections, &cols);
    let mut out = Vec::new();
    for (j, p) in config.points.iter().enumerate() {
        let mut ij = Vec::new();
        for k in 1..p.a {
            let unit: Vec<Rational> = cols
                .iter()
                .map(|&c| if c == (j + 1, k) { Rational::one() } else { Rational::zero() })
                .collect();
            if !mat.is_empty() && in_row_space(&mat, &unit) {
                ij.push(k);
            }
        }
        out.push(ij);
    }
    Ok(out)
}

/// `l_j = 1` if `I_j` is empty or starts above 1, else the least order missing from `I_j`.
pub fn choose_l(a: u32, ij: &[u32]) -> Option<u32> {
    match ij.iter().min() {
        None => Some(1),
        Some(&m) if m > 1 => Some(1),
        Some(_) => (1..a).find(|k| !ij.contains(k)),
    }
}

pub fn deform_verdict(input: &VerdictInput) -> Result<VerdictOutcome> {
    let config = &input.config;
    for s in &input.sections {
        s.validate(config)?;
    }
    for (&j, g) in &input.g_table {
        if g.model != *config.point(j)? {
            return usage(format!("(G) table entry for point {j} was computed for {}", g.model));
        }
    }
    let ij = single_support_orders(config, &input.sections)?;
    let certificate: Vec<Option<u32>> = config.points.iter().zip(&ij).map(|(p, s)| choose_l(p.a, s)).collect();
    let mut reasons = Vec::new();
    if config.all_double_points() {
        let free: Vec<usize> = ij.iter().enumerate().filter(|(_, s)| s.is_empty()).map(|(j, _)| j + 1).collect();
        let has_free = !free.is_empty();
        if has_free {
            reasons.push(format!("no section has polar support exactly at point(s) {free:?}"));
        } else {
            reasons.push("every point is the exact polar support of some section".into());
        }
        if input.nbar_nonzero {
            reasons.push("the reduced normal sheaf has nonzero sections".into());
        }
        let verdict = if has_free || input.nbar_nonzero { DeformVerdict::Deforms } else { DeformVerdict::DoesNotDeform };
        return Ok(VerdictOutcome { verdict, rule: "double_point".into(), certificate, reasons });
    }
    let mut ok = true;
    for (idx, p) in config.points.iter().enumerate() {
        let j = idx + 1;
        let dims = input
            .dims
            .get(&j)
            .ok_or_else(|| Error::Usage(format!("missing dimensions for point {j}")))?;
        if !check_d(config, j, dims.twisted, dims.plain)? {
            ok = false;
            reasons.push(format!("(D) fails at point {j}: {} ≥ {} + {}", dims.twisted, dims.plain, p.a - 1));
        }
        let g = match input.g_table.get(&j) {
            Some(g) => g.verdict,
            None if p.a == 2 => Verdict::Holds,
            None => return usage(format!("missing (G) result for point {j} = {p}")),
        };
        if g != Verdict::Holds {
            ok = false;
            reasons.push(format!("(G) at point {j} = {p}: {}", g.as_str()));
        }
    }
    if ok {
        reasons.push("(D) and (G) hold at every point".into());
    }
    let verdict = if ok { DeformVerdict::Deforms } else { DeformVerdict::Unknown };
    Ok(VerdictOutcome { verdict, rule: "general".into(), certificate, reasons })
}

/// `lcm` of the integers `b_j + a_j − l_j`, with `d_j` the corresponding quotients.
pub fn certificate_weights(config: &SingularConfig, ls: &[u32]) -> Result<Weights> {
    if ls.len() != config.len() {
        return usage("one l_j per point is required");
    }
    let vals: Vec<u64> = config
        .points
        .iter()
        .zip(ls)
        .map(|(p, &l)| (p.b + p.a - l) as u64)
        .collect();
    let m = vals.iter().fold(1u64, |acc, &x| acc.lcm(&x));
    Ok(Weights { m, d: vals.iter().map(|v| m / v).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn cfg(points: &[(u32, u32)]) -> SingularConfig {
        SingularConfig::new(points.iter().map(|&(a, b)| LocalModel::new(a, b).unwrap()).collect()).unwrap()
    }

    fn sec(id: &str, e: &[(usize, u32, i64)]) -> SectionProfile {
        SectionProfile::new(id, e.iter().map(|&(j, m, r)| ((j, m), int(r))))
    }

    #[test]
    fn weights_examples() {
        assert_eq!(compute_weights(&cfg(&[(2, 3), (2, 5)])), Weights { m: 12, d: vec![3, 2] });
        assert_eq!(compute_weights(&cfg(&[(4, 6)])), Weights { m: 7, d: vec![1] });
        assert_eq!(compute_weights(&cfg(&[(3, 4), (4, 6)])), Weights { m: 35, d: vec![7, 5] });
    }

    #[test]
    fn pair_order_examples() {
        let c = cfg(&[(2, 3), (2, 5)]);
        let w = compute_weights(&c);
        assert_eq!(pair_compare(&c, &w, (2, 1), (1, 1)).unwrap(), Ordering::Greater);
        let c4 = cfg(&[(4, 6)]);
        let w4 = compute_weights(&c4);
        assert_eq!(pair_compare(&c4, &w4, (1, 2), (1, 1)).unwrap(), Ordering::Greater);
        assert_eq!(pair_compare(&c4, &w4, (1, 2), (1, 2)).unwrap(), Ordering::Equal);
    }

    #[test]
    fn section_ord_examples() {
        let c = cfg(&[(4, 6)]);
        let w = compute_weights(&c);
        let empty = SectionProfile::new("e", []);
        assert_eq!(section_ord(&c, &w, &empty).unwrap(), SectionOrd { top: None, ord: None });
        let one = sec("a", &[(1, 1, 1)]);
        assert_eq!(section_ord(&c, &w, &one).unwrap(), SectionOrd { top: Some((1, 1)), ord: Some(9) });
        let two = sec("b", &[(1, 1, 1), (1, 2, 3)]);
        assert_eq!(section_ord(&c, &w, &two).unwrap().top, Some((1, 2)));
        assert!(section_ord(&c, &w, &sec("bad", &[(2, 1, 1)])).is_err());
    }

    #[test]
    fn basis_examples() {
        let c = cfg(&[(4, 6)]);
        let single = build_basis_i(&c, &[sec("x", &[(1, 1, 2)])]).unwrap();
        assert_eq!(single.entries.len(), 1);
        let two = build_basis_i(&c, &[sec("low", &[(1, 1, 1)]), sec("high", &[(1, 3, 1)])]).unwrap();
        let ids: Vec<&str> = two.entries.iter().map(|e| e.id.as_str()).collect();
        assert_eq!(ids, vec!["low", "high"]);
        assert!(two.entries[0].ord > two.entries[1].ord);
        let same = build_basis_i(&c, &[sec("p", &[(1, 2, 1), (1, 1, 1)]), sec("q", &[(1, 2, 2), (1, 1, 5)])]).unwrap();
        let tops: Vec<(usize, u32)> = same.entries.iter().map(|e| e.top).collect();
        assert_eq!(tops, vec![(1, 1), (1, 2)]);
        assert_eq!(same.entries[0].section.residues[&(1, 1)], int(3));
        let dep = build_basis_i(&c, &[sec("p", &[(1, 1, 1)]), sec("q", &[(1, 1, 2)])]);
        assert!(matches!(dep, Err(Error::Usage(msg)) if msg.contains('q')));
        let ex = build_basis_i(&c, &[SectionProfile::new("zero", [])]).unwrap();
        assert_eq!(ex.excluded, vec!["zero".to_string()]);
    }

    #[test]
    fn star_examples() {
        let c = cfg(&[(4, 6)]);
        let sys = build_star_system(&c, &[sec("x", &[(1, 3, 5)])]).unwrap();
        let e = Expansion::new(c.points[0], 4);
        let f1 = e.big_f(1).unwrap().substitute(&(0..3).map(|i| MPoly::var_at(&sys.vars, i)).collect::<Vec<_>>()).unwrap();
        assert_eq!(sys.equations[0].poly, f1);
        assert!(star_satisfied(&c, &sys, &[vec![int(0); 3]]).unwrap());
        let empty = build_star_system(&c, &[]).unwrap();
        assert!(empty.equations.is_empty());
        let c2 = cfg(&[(2, 3)]);
        let s2 = build_star_system(&c2, &[sec("y", &[(1, 1, 1)])]).unwrap();
        assert!(star_satisfied(&c2, &s2, &[vec![int(0)]]).unwrap());
        assert!(!star_satisfied(&c2, &s2, &[vec![int(2)]]).unwrap());
    }

    #[test]
    fn two_point_rescaling() {
        let c = cfg(&[(2, 3), (2, 5)]);
        // both pairs have weight 12; the equation couples the two points
        let sys = build_star_system(&c, &[sec("nu", &[(1, 1, 1), (2, 1, 1)])]).unwrap();
        assert_eq!(sys.equations[0].terms.len(), 2);
        let seeds = vec![vec![int(1)], vec![int(1)]];
        assert!(!star_satisfied(&c, &sys, &seeds).unwrap());
        let fixed = rescale_two_blocks(&c, &sys.equations[0], &seeds).unwrap().unwrap();
        assert!(star_satisfied(&c, &sys, &fixed).unwrap());
        assert!(fixed.iter().all(|b| !b[0].is_zero()));
    }

    #[test]
    fn scaling_solver() {
        let (x, y) = solve_two_term_scaling(&int(3), 2, &int(5), 3).unwrap();
        assert!((int(3) * &x * &x + int(5) * &y * &y * &y).is_zero());
        assert!(solve_two_term_scaling(&int(1), 2, &int(1), 4).is_none());
        assert!(solve_two_term_scaling(&int(0), 2, &int(1), 3).is_none());
    }

    #[test]
    fn dual_basis_examples() {
        let m = LocalModel::new(2, 3).unwrap();
        let v = dual_kernel_basis(&m, &[int(2)]).unwrap();
        // f_4 = 3/8 c2^2, derivative 3/4 c2 = 3/2 at c2 = 2
        assert_eq!(v, vec![vec![rat(2, 3)]]);
        assert!(matches!(dual_kernel_basis(&m, &[int(0)]), Err(Error::Precondition(_))));
    }

    #[test]
    fn d_examples() {
        let c = cfg(&[(3, 4), (2, 3)]);
        assert!(check_d(&c, 1, 5, 4).unwrap());
        assert!(!check_d(&c, 2, 8, 7).unwrap());
        assert!(check_d(&c, 2, 7, 7).unwrap());
    }

    #[test]
    fn choose_l_examples() {
        assert_eq!(choose_l(4, &[]), Some(1));
        assert_eq!(choose_l(4, &[2]), Some(1));
        assert_eq!(choose_l(4, &[1, 2]), Some(3));
        assert_eq!(choose_l(3, &[1, 2]), None);
    }

    #[test]
    fn zero_perturbation_step_is_identity() {
        let c = cfg(&[(4, 6)]);
        let w = vec![vec![int(0), int(1), int(0)]];
        let s = LiftState::seed(&c, &w, 14).unwrap();
        let (next, rec) = lift_step(&s, 1, &NoPerturbation).unwrap();
        assert_eq!(next.blocks[0].c, s.blocks[0].c);
        assert!(rec.correction.iter().all(Zero::is_zero));
    }
}
