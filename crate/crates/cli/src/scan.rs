//! Parallel (G) checks over a grid of local models.

use std::collections::BTreeMap;
use std::time::Duration;

use anyhow::Result;
use equigen_core::groebner::{aggregate, GProblem, IndexDetail, Verdict};
use equigen_core::{Budget, LocalModel, MonomialOrder, ENGINE_VERSION};
use rayon::prelude::*;
use serde::Serialize;

use crate::cache::{self, Cache, CacheEntry};

/// Verdict at one index, from the cache or from a fresh computation.
pub fn check_index(problem: &GProblem, i: u32, budget: &Budget, cache: Option<&Cache>) -> Result<(IndexDetail, bool)> {
    let model = *problem.expansion.model();
    let key = cache::key(&model, i, MonomialOrder::Grevlex);
    if let Some(hit) = cache.and_then(|c| c.get(&key)) {
        return Ok((hit.detail(), true));
    }
    let detail = problem.check_index(i, budget)?;
    if let Some(c) = cache {
        c.put(&CacheEntry {
            key,
            engine: ENGINE_VERSION.to_string(),
            a: model.a,
            b: model.b,
            i,
            order: MonomialOrder::Grevlex.name().to_string(),
            verdict: detail.verdict,
            forms: detail.forms,
            elapsed_ms: detail.elapsed_ms,
            poly_hashes: cache::poly_hashes(&problem.presentations(i)?),
        })?;
    }
    Ok((detail, false))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub a: u32,
    pub b: u32,
    pub verdict: Verdict,
    pub indices: BTreeMap<u32, Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<BTreeMap<u32, u64>>,
}

/// Cells `(a, b)` with `a_min ≤ a ≤ a_max`, `max(a+1, b_min) ≤ b ≤ b_max`, `a ∤ b`.
pub fn grid(a_min: u32, a_max: u32, b_min: u32, b_max: u32) -> Vec<LocalModel> {
    let mut out = Vec::new();
    for a in a_min.max(2)..=a_max {
        for b in b_min.max(a + 1)..=b_max {
            if let Ok(m) = LocalModel::new(a, b) {
                out.push(m);
            }
        }
    }
    out
}

/// Rows in grid order; the result does not depend on `jobs`.
pub fn run(cells: &[LocalModel], budget_secs: Option<f64>, jobs: usize, cache: Option<&Cache>, timings: bool) -> Result<Vec<ScanRow>> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build()?;
    let budget = Budget { wall: budget_secs.map(Duration::from_secs_f64), max_pairs: None };
    pool.install(|| {
        let problems: Vec<GProblem> = cells.par_iter().map(GProblem::new).collect::<Result<_, _>>()?;
        let work: Vec<(usize, u32)> = cells
            .iter()
            .enumerate()
            .flat_map(|(c, m)| (1..m.a).map(move |i| (c, i)))
            .collect();
        let details: Vec<IndexDetail> = work
            .par_iter()
            .map(|&(c, i)| check_index(&problems[c], i, &budget, cache).map(|(d, _)| d))
            .collect::<Result<_>>()?;
        let mut rows: Vec<ScanRow> = cells
            .iter()
            .map(|m| ScanRow {
                a: m.a,
                b: m.b,
                verdict: Verdict::Holds,
                indices: BTreeMap::new(),
                elapsed_ms: timings.then(BTreeMap::new),
            })
            .collect();
        for (&(c, i), d) in work.iter().zip(&details) {
            rows[c].indices.insert(i, d.verdict);
            if let Some(t) = rows[c].elapsed_ms.as_mut() {
                t.insert(i, d.elapsed_ms);
            }
        }
        for r in rows.iter_mut() {
            r.verdict = aggregate(r.indices.values().copied());
        }
        Ok(rows)
    })
}

fn detail_text(r: &ScanRow) -> String {
    r.indices.iter().map(|(i, v)| format!("{i}:{}", v.as_str())).collect::<Vec<_>>().join(" ")
}

pub fn to_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from("a,b,verdict,indices\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{}\n", r.a, r.b, r.verdict.as_str(), detail_text(r)));
    }
    out
}

pub fn to_markdown(rows: &[ScanRow]) -> String {
    let mut out = String::from("| a | b | (G) | per index |\n|---|---|---|---|\n");
    for r in rows {
        let v = match r.verdict {
            Verdict::Holds => "holds".to_string(),
            other => format!("**{}**", other.as_str()),
        };
        out.push_str(&format!("| {} | {} | {v} | {} |\n", r.a, r.b, detail_text(r)));
    }
    out
}

pub fn to_text(rows: &[ScanRow]) -> String {
    let mut out = String::new();
    for r in rows {
        let mark = if r.verdict == Verdict::Holds { " " } else { "!" };
        out.push_str(&format!("{mark} ({}, {:>2})  {:<7}  {}\n", r.a, r.b, r.verdict.as_str(), detail_text(r)));
    }
    out
}
