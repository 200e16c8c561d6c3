use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lg::LgPair;
use crate::matfact::{koszul_factorization, make_factorization, MatrixFactorization};
use crate::polymatrix::PolyMatrix;
use crate::scalar::Scalar;
use crate::tft::{CardySign, Normalization};

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct JobFile {
    #[serde(default)]
    compute: Option<Vec<String>>,
    pairs: Option<Vec<[String; 2]>>,
    tft_branes: Option<Vec<String>>,
    degree_bound: Option<i64>,
    koszul_bound: Option<i64>,
    lg: LgSection,
    #[serde(default)]
    brane: Vec<BraneSection>,
    #[serde(default)]
    normalization: NormalizationSection,
    #[serde(default)]
    output: OutputSection,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LgSection {
    variables: Vec<String>,
    #[serde(rename = "W", alias = "w")]
    w: String,
    weights: Option<Vec<u32>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BraneSection {
    name: String,
    koszul: Option<Vec<[String; 2]>>,
    rank0: Option<usize>,
    rank1: Option<usize>,
    d01: Option<Vec<Vec<String>>>,
    d10: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct NormalizationSection {
    bulk: Option<String>,
    boundary: Option<String>,
    cardy_sign: Option<CardySign>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct OutputSection {
    report: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Computation {
    Jacobi,
    Koszul,
    Homs,
    Tft,
}

/// How a brane was specified, kept for the report echo.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BraneSource {
    Koszul(Vec<[String; 2]>),
    Matrices,
}

#[derive(Clone, Debug)]
pub struct BraneSpec {
    pub name: String,
    pub source: BraneSource,
    pub factorization: MatrixFactorization,
}

/// A validated job.
#[derive(Clone, Debug)]
pub struct JobSpec {
    pub lg: LgPair,
    pub branes: Vec<BraneSpec>,
    pub compute: BTreeSet<Computation>,
    /// Index pairs into `branes` for the Hom section.
    pub pairs: Vec<(usize, usize)>,
    /// Indices into `branes` for the TFT section.
    pub tft_branes: Vec<usize>,
    pub degree_bound: Option<i64>,
    pub koszul_bound: Option<i64>,
    pub normalization: Normalization,
    pub output: Option<PathBuf>,
}

fn parse_scalar(field: &str, s: &str) -> Result<Scalar> {
    Scalar::parse(s).ok_or_else(|| Error::validation(field, format!("`{s}` is not a Gaussian rational")))
}

fn parse_matrix(lg: &LgPair, field: &str, rows: &[Vec<String>]) -> Result<PolyMatrix> {
    for (r, row) in rows.iter().enumerate() {
        for (c, s) in row.iter().enumerate() {
            lg.ring().parse(s).map_err(|e| Error::validation(format!("{field}[{r}][{c}]"), e.to_string()))?;
        }
    }
    PolyMatrix::parse(lg.ring(), rows).map_err(|e| Error::validation(field, e.to_string()))
}

fn brane_index(names: &[String], field: &str, name: &str) -> Result<usize> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| Error::validation(field, format!("undefined brane `{name}`")))
}

impl JobSpec {
    pub fn load(path: &Path) -> Result<JobSpec> {
        JobSpec::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn from_toml(src: &str) -> Result<JobSpec> {
        let file: JobFile = toml::from_str(src)?;
        let lg = LgPair::parse(&file.lg.variables, &file.lg.w, file.lg.weights.clone())
            .map_err(|e| Error::validation("lg", e.to_string()))?;

        let mut names: Vec<String> = Vec::new();
        let mut branes = Vec::new();
        for (k, b) in file.brane.iter().enumerate() {
            let field = format!("brane[{k}]");
            if b.name.is_empty() {
                return Err(Error::validation(format!("{field}.name"), "empty brane name"));
            }
            if names.contains(&b.name) {
                return Err(Error::validation(format!("{field}.name"), format!("duplicate brane name `{}`", b.name)));
            }
            let explicit = b.rank0.is_some() || b.rank1.is_some() || b.d01.is_some() || b.d10.is_some();
            let (source, factorization) = match (&b.koszul, explicit) {
                (Some(pairs), false) => {
                    let mut polys = Vec::new();
                    for (i, [a, c]) in pairs.iter().enumerate() {
                        let pa = lg.ring().parse(a).map_err(|e| Error::validation(format!("{field}.koszul[{i}][0]"), e.to_string()))?;
                        let pc = lg.ring().parse(c).map_err(|e| Error::validation(format!("{field}.koszul[{i}][1]"), e.to_string()))?;
                        polys.push((pa, pc));
                    }
                    let mf = koszul_factorization(&lg, &polys)
                        .map_err(|e| Error::validation(format!("{field}.koszul"), e.to_string()))?;
                    (BraneSource::Koszul(pairs.clone()), mf)
                }
                (None, true) => {
                    let missing = |what: &str| Error::validation(format!("{field}.{what}"), "missing");
                    let r0 = b.rank0.ok_or_else(|| missing("rank0"))?;
                    let r1 = b.rank1.ok_or_else(|| missing("rank1"))?;
                    let d01 = parse_matrix(&lg, &format!("{field}.d01"), b.d01.as_ref().ok_or_else(|| missing("d01"))?)?;
                    let d10 = parse_matrix(&lg, &format!("{field}.d10"), b.d10.as_ref().ok_or_else(|| missing("d10"))?)?;
                    // an empty row list has no columns; give it the declared shape
                    let d01 = if d01.rows() == 0 || d01.cols() == 0 { PolyMatrix::zeros(r1, r0, lg.dimension()) } else { d01 };
                    let d10 = if d10.rows() == 0 || d10.cols() == 0 { PolyMatrix::zeros(r0, r1, lg.dimension()) } else { d10 };
                    let mf = make_factorization(&lg, r0, r1, d01, d10).map_err(|e| Error::validation(field.clone(), e.to_string()))?;
                    (BraneSource::Matrices, mf)
                }
                _ => {
                    return Err(Error::validation(
                        field,
                        "give either `koszul` pairs or all of `rank0`, `rank1`, `d01`, `d10`",
                    ))
                }
            };
            names.push(b.name.clone());
            branes.push(BraneSpec { name: b.name.clone(), source, factorization });
        }

        let mut compute = BTreeSet::new();
        for c in file.compute.clone().unwrap_or_else(|| vec!["all".into()]) {
            match c.as_str() {
                "jacobi" => {
                    compute.insert(Computation::Jacobi);
                }
                "koszul" => {
                    compute.insert(Computation::Koszul);
                }
                "homs" => {
                    compute.insert(Computation::Homs);
                }
                "tft" => {
                    compute.insert(Computation::Tft);
                }
                "all" => compute.extend([Computation::Jacobi, Computation::Koszul, Computation::Homs, Computation::Tft]),
                other => {
                    return Err(Error::validation(
                        "compute",
                        format!("unknown computation `{other}` (expected jacobi, koszul, homs, tft, all)"),
                    ))
                }
            }
        }

        let pairs = match &file.pairs {
            Some(ps) => ps
                .iter()
                .map(|[a, b]| Ok((brane_index(&names, "pairs", a)?, brane_index(&names, "pairs", b)?)))
                .collect::<Result<Vec<_>>>()?,
            None => (0..names.len()).flat_map(|a| (0..names.len()).map(move |b| (a, b))).collect(),
        };
        let tft_branes = match &file.tft_branes {
            Some(ns) => ns.iter().map(|n| brane_index(&names, "tft_branes", n)).collect::<Result<Vec<_>>>()?,
            None => (0..names.len()).collect(),
        };
        for (field, b) in [("degree_bound", file.degree_bound), ("koszul_bound", file.koszul_bound)] {
            if let Some(b) = b.filter(|b| *b < 0) {
                return Err(Error::validation(field, format!("must be non-negative, got {b}")));
            }
        }

        let n = &file.normalization;
        let normalization = Normalization {
            bulk: n.bulk.as_deref().map(|s| parse_scalar("normalization.bulk", s)).transpose()?.unwrap_or_else(Scalar::one),
            boundary: n.boundary.as_deref().map(|s| parse_scalar("normalization.boundary", s)).transpose()?,
            cardy_sign: n.cardy_sign.unwrap_or(CardySign::Koszul),
        };

        Ok(JobSpec {
            lg,
            branes,
            compute,
            pairs,
            tft_branes,
            degree_bound: file.degree_bound,
            koszul_bound: file.koszul_bound,
            normalization,
            output: file.output.report,
        })
    }

    /// Apply a `key=value` normalization override (`c_d`, `bulk`, `cardy_sign`).
    pub fn apply_normalization_override(&mut self, setting: &str) -> Result<()> {
        let (key, value) = setting
            .split_once('=')
            .ok_or_else(|| Error::validation("--normalization", format!("expected key=value, got `{setting}`")))?;
        match key.trim() {
            "c_d" | "boundary" => self.normalization.boundary = Some(parse_scalar("--normalization c_d", value.trim())?),
            "bulk" => self.normalization.bulk = parse_scalar("--normalization bulk", value.trim())?,
            "cardy_sign" => {
                self.normalization.cardy_sign = match value.trim() {
                    "koszul" => CardySign::Koszul,
                    "literal" => CardySign::Literal,
                    v => return Err(Error::validation("--normalization cardy_sign", format!("unknown sign convention `{v}`"))),
                }
            }
            k => return Err(Error::validation("--normalization", format!("unknown key `{k}` (expected c_d, bulk, cardy_sign)"))),
        }
        Ok(())
    }
}
