//! JSON inputs of `star`, `verdict` and `lift`, and the small text formats of the flags.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};
use equigen_core::lifting::{Dims, OShape, OTerm, SectionProfile, SingularConfig};
use equigen_core::rational::{parse_rational, parse_rational_list};
use equigen_core::{LocalModel, Rational, TSeries};
use serde::Deserialize;

#[derive(Debug, Deserialize)]
pub struct PointJson {
    pub a: u32,
    pub b: u32,
}

#[derive(Debug, Deserialize)]
pub struct ResidueJson {
    pub j: usize,
    pub m: u32,
    pub r: String,
}

#[derive(Debug, Deserialize)]
pub struct SectionJson {
    pub id: String,
    #[serde(default)]
    pub residues: Vec<ResidueJson>,
}

#[derive(Debug, Deserialize)]
pub struct DimJson {
    pub j: usize,
    pub twisted: u64,
    pub plain: u64,
}

#[derive(Debug, Default, Deserialize)]
pub struct FlagsJson {
    #[serde(default)]
    pub nbar_nonzero: bool,
}

/// `{"points": [...], "sections": [...], "dims": [...], "flags": {...}}`.
#[derive(Debug, Deserialize)]
pub struct ConfigFile {
    pub points: Vec<PointJson>,
    #[serde(default)]
    pub sections: Vec<SectionJson>,
    #[serde(default)]
    pub dims: Vec<DimJson>,
    #[serde(default)]
    pub flags: FlagsJson,
}

pub struct Parsed {
    pub config: SingularConfig,
    pub sections: Vec<SectionProfile>,
    pub dims: BTreeMap<usize, Dims>,
    pub nbar_nonzero: bool,
}

pub fn read_config(path: &Path) -> Result<Parsed> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file: ConfigFile = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let points = file.points.iter().map(|p| LocalModel::new(p.a, p.b)).collect::<Result<Vec<_>, _>>()?;
    let config = SingularConfig::new(points)?;
    let mut sections = Vec::new();
    for s in &file.sections {
        let entries = s
            .residues
            .iter()
            .map(|r| Ok(((r.j, r.m), parse_rational(&r.r)?)))
            .collect::<Result<Vec<_>, equigen_core::Error>>()?;
        sections.push(SectionProfile::new(s.id.clone(), entries));
    }
    let mut dims = BTreeMap::new();
    for d in &file.dims {
        if dims.insert(d.j, Dims { twisted: d.twisted, plain: d.plain }).is_some() {
            bail!("dimensions for point {} given twice", d.j);
        }
    }
    Ok(Parsed { config, sections, dims, nbar_nonzero: file.flags.nbar_nonzero })
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeJson {
    Higher,
    Quadratic,
}

/// One term of `o_{b+j}`: `coeff · t^t · Π c_k^{exps[k-2]}` times the quadratic factor if any.
#[derive(Debug, Deserialize)]
pub struct TermJson {
    pub j: u32,
    pub coeff: String,
    pub t: usize,
    pub exps: Vec<u32>,
    pub shape: ShapeJson,
    #[serde(default)]
    pub k: Option<u32>,
    #[serde(default)]
    pub m: Option<u32>,
}

#[derive(Debug, Deserialize)]
pub struct TermsFile {
    pub terms: Vec<TermJson>,
}

pub fn read_terms(path: &Path) -> Result<BTreeMap<(usize, u32), Vec<OTerm>>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file: TermsFile = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let mut out: BTreeMap<(usize, u32), Vec<OTerm>> = BTreeMap::new();
    for t in file.terms {
        let shape = match t.shape {
            ShapeJson::Higher => OShape::Higher,
            ShapeJson::Quadratic => match (t.k, t.m) {
                (Some(k), Some(m)) => OShape::Quadratic { k, m },
                _ => bail!("quadratic term for equation {} needs both k and m", t.j),
            },
        };
        out.entry((1, t.j)).or_default().push(OTerm {
            coeff: parse_rational(&t.coeff)?,
            t_pow: t.t,
            exps: vec![t.exps],
            shape,
        });
    }
    Ok(out)
}

pub fn point(text: &str, dim: usize) -> Result<Vec<Rational>> {
    let p = parse_rational_list(text)?;
    if p.len() != dim {
        bail!("point {text:?} has {} coordinates, expected {dim}", p.len());
    }
    Ok(p)
}

/// Blocks separated by `;`, coordinates by `,`.
pub fn blocks(text: &str) -> Result<Vec<Vec<Rational>>> {
    Ok(text.split(';').map(parse_rational_list).collect::<Result<_, _>>()?)
}

/// `c_2; c_3; …` with each `c_i` given by its coefficients of `t^0, t^1, …`.
pub fn series_list(text: &str, modulus: usize, dim: usize) -> Result<Vec<TSeries>> {
    let rows = blocks(text)?;
    if rows.len() != dim {
        bail!("expected {dim} series separated by ';', got {}", rows.len());
    }
    Ok(rows.into_iter().map(|r| TSeries::from_coeffs(r, modulus)).collect())
}
