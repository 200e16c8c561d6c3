use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graded::Parity;
use crate::jacobi::{GroebnerStore, JacobiAlgebra};
use crate::koszul::{check_vanishing_negative_degrees, koszul_cohomology, GradedDimensionTable};
use crate::matfact::{default_degree_bound, hom_cohomology, MatrixFactorization};
use crate::scalar::Scalar;
use crate::tft::{assemble, verify_tft_datum, AxiomReport, CardySign, Verdict};

use super::spec::{BraneSource, Computation, JobSpec};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, Serialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BraneEcho {
    pub name: String,
    pub source: BraneSource,
    pub rank0: usize,
    pub rank1: usize,
    pub d01: Vec<Vec<String>>,
    pub d10: Vec<Vec<String>>,
    /// Doubled internal degrees of the basis vectors, when homogeneous.
    pub grading: Option<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalizationEcho {
    pub bulk: Scalar,
    pub boundary_c_d: Scalar,
    pub cardy_sign: CardySign,
}

#[derive(Clone, Debug, Serialize)]
pub struct JobEcho {
    pub variables: Vec<String>,
    #[serde(rename = "W")]
    pub w: String,
    pub weights: Option<Vec<u32>>,
    pub quasi_homogeneous: bool,
    pub compute: Vec<Computation>,
    pub branes: Vec<BraneEcho>,
    pub pairs: Vec<[String; 2]>,
    pub tft_branes: Vec<String>,
    pub degree_bound: Option<i64>,
    pub koszul_bound: Option<i64>,
    pub normalization: NormalizationEcho,
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobiSection {
    pub monomial_order: String,
    pub groebner_basis: Vec<String>,
    pub milnor_number: usize,
    pub basis: Vec<String>,
    pub hessian: String,
    /// Residue functional on the basis, normalized by `Res[hess W] = μ`.
    pub residue: Vec<Scalar>,
    /// Bulk trace on the basis.
    pub trace: Vec<Scalar>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WedgeTerm {
    pub wedge: Vec<String>,
    pub coefficient: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct KoszulWitness {
    pub k: i64,
    pub m: i64,
    pub cocycle: Vec<WedgeTerm>,
}

#[derive(Clone, Debug, Serialize)]
pub struct KoszulSection {
    pub table: GradedDimensionTable,
    pub negative_degrees_vanish: bool,
    pub witness: Option<KoszulWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PieceDim {
    pub parity: Parity,
    pub degree2: Option<i64>,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassEcho {
    pub parity: Parity,
    pub degree2: Option<i64>,
    pub representative: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomSection {
    pub source: String,
    pub target: String,
    pub mode: String,
    pub degree_bound: i64,
    pub window2: Option<[i64; 2]>,
    pub even_dim: usize,
    pub odd_dim: usize,
    pub stabilized: bool,
    pub note: String,
    pub pieces: Vec<PieceDim>,
    pub basis: Vec<ClassEcho>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BraneValues {
    pub brane: String,
    pub values: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TftSection {
    pub branes: Vec<String>,
    /// `tr_a` on the basis of `End(a)`.
    pub boundary_traces: Vec<BraneValues>,
    /// Columns `e_a(h_k)` in coordinates of `End(a)`.
    pub bulk_boundary: Vec<BraneValues>,
    /// `f_a(t_i)` in the bulk basis, one row per basis element of `End(a)`.
    pub boundary_bulk: Vec<BraneValues>,
    pub axioms: AxiomReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct SectionError {
    pub section: String,
    pub message: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Timing {
    pub total_ms: f64,
    pub sections_ms: BTreeMap<String, f64>,
}

/// Full job result. Everything except `timing` is deterministic.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: String,
    pub tool: ToolInfo,
    pub job: JobEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jacobi: Option<JacobiSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub koszul: Option<KoszulSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homs: Option<Vec<HomSection>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tft: Option<TftSection>,
    pub errors: Vec<SectionError>,
    pub timing: Timing,
}

const GRADED_NOTE: &str =
    "exact below the window; finiteness flag requires no classes in the two weighted degrees past it (engineering proxy)";
const FILTERED_NOTE: &str = "W or a brane is not homogeneous: dimensions are those of the total-degree filtration \
     stage at the bound; stabilized means unchanged over the last two stages (heuristic)";

fn echo(spec: &JobSpec) -> JobEcho {
    let lg = &spec.lg;
    let names: Vec<String> = spec.branes.iter().map(|b| b.name.clone()).collect();
    JobEcho {
        variables: lg.ring().vars().to_vec(),
        w: lg.display(lg.superpotential()),
        weights: lg.weights().map(<[u32]>::to_vec),
        quasi_homogeneous: lg.quasi_homogeneity().is_some(),
        compute: spec.compute.iter().copied().collect(),
        branes: spec
            .branes
            .iter()
            .map(|b| {
                let f = &b.factorization;
                BraneEcho {
                    name: b.name.clone(),
                    source: b.source.clone(),
                    rank0: f.rank0(),
                    rank1: f.rank1(),
                    d01: f.d01().to_strings(lg.ring()),
                    d10: f.d10().to_strings(lg.ring()),
                    grading: f.grading().map(<[i64]>::to_vec),
                }
            })
            .collect(),
        pairs: spec.pairs.iter().map(|&(a, b)| [names[a].clone(), names[b].clone()]).collect(),
        tft_branes: spec.tft_branes.iter().map(|&a| names[a].clone()).collect(),
        degree_bound: spec.degree_bound,
        koszul_bound: spec.koszul_bound,
        normalization: NormalizationEcho {
            bulk: spec.normalization.bulk.clone(),
            boundary_c_d: spec.normalization.boundary_constant(lg.dimension()),
            cardy_sign: spec.normalization.cardy_sign,
        },
    }
}

fn jacobi_section(alg: &JacobiAlgebra, scale: &Scalar) -> Result<JacobiSection> {
    let lg = alg.lg();
    let residue = alg.residue_functional()?;
    Ok(JacobiSection {
        monomial_order: alg.ideal().order().to_string(),
        groebner_basis: alg.ideal().generators().iter().map(|g| lg.display(g)).collect(),
        milnor_number: alg.dimension(),
        basis: alg.basis_strings(),
        hessian: lg.display(&lg.hessian()),
        trace: residue.iter().map(|r| r * scale).collect(),
        residue,
    })
}

/// Default Koszul bound: top weighted degree of the Jacobi staircase plus
/// `d·N`, so every wedge degree gets a full window above its shift.
fn default_koszul_bound(spec: &JobSpec, alg: Option<&JacobiAlgebra>) -> i64 {
    let lg = &spec.lg;
    let (weights, n) = match lg.quasi_homogeneity() {
        Some(q) => (q.weights, q.degree),
        None => (vec![1; lg.dimension()], lg.superpotential().degree().unwrap_or(0) as u64),
    };
    let top = alg.map_or(0, |a| a.basis().iter().map(|m| m.weighted_degree(&weights)).max().unwrap_or(0));
    (top + lg.dimension() as u64 * n) as i64
}

fn koszul_section(spec: &JobSpec, bound: i64) -> Result<KoszulSection> {
    let table = koszul_cohomology(&spec.lg, bound)?;
    let check = check_vanishing_negative_degrees(&spec.lg, bound)?;
    let vars = spec.lg.ring().vars();
    let witness = check.witness.map(|(k, m, z)| KoszulWitness {
        k,
        m,
        cocycle: z
            .components
            .iter()
            .map(|(set, p)| WedgeTerm {
                wedge: set.iter().map(|&j| format!("d{}", vars[j])).collect(),
                coefficient: spec.lg.display(p),
            })
            .collect(),
    });
    Ok(KoszulSection { table, negative_degrees_vanish: check.vanishes, witness })
}

fn hom_section(spec: &JobSpec, a: usize, b: usize) -> Result<HomSection> {
    let (fa, fb): (&MatrixFactorization, &MatrixFactorization) =
        (&spec.branes[a].factorization, &spec.branes[b].factorization);
    let bound = spec.degree_bound.unwrap_or_else(|| default_degree_bound(fa, fb));
    let h = hom_cohomology(fa, fb, bound)?;
    let ring = spec.lg.ring();
    Ok(HomSection {
        source: spec.branes[a].name.clone(),
        target: spec.branes[b].name.clone(),
        mode: if h.is_graded() { "graded" } else { "filtered" }.to_string(),
        degree_bound: bound,
        window2: h.is_graded().then(|| [h.window().0, h.window().1]),
        even_dim: h.dim_of(Parity::Even),
        odd_dim: h.dim_of(Parity::Odd),
        stabilized: h.is_stabilized(),
        note: if h.is_graded() { GRADED_NOTE } else { FILTERED_NOTE }.to_string(),
        pieces: h.piece_dims().into_iter().map(|(parity, degree2, dim)| PieceDim { parity, degree2, dim }).collect(),
        basis: h
            .basis()
            .iter()
            .map(|c| ClassEcho { parity: c.parity, degree2: c.degree, representative: c.representative.to_strings(ring) })
            .collect(),
    })
}

fn tft_section(spec: &JobSpec, alg: &JacobiAlgebra) -> Result<TftSection> {
    let branes: Vec<(String, MatrixFactorization)> = spec
        .tft_branes
        .iter()
        .map(|&k| (spec.branes[k].name.clone(), spec.branes[k].factorization.clone()))
        .collect();
    let datum = assemble(&spec.lg, alg.clone(), &branes, spec.degree_bound, spec.normalization.clone())?;
    let axioms = verify_tft_datum(&datum);
    let names: Vec<String> = branes.iter().map(|(n, _)| n.clone()).collect();
    let mut boundary_bulk = Vec::new();
    for (a, name) in names.iter().enumerate() {
        let dim = datum.branes.hom(a, a).dim();
        let values = if datum.bulk.is_nondegenerate() {
            (0..dim)
                .map(|i| {
                    let mut t = vec![Scalar::zero(); dim];
                    t[i] = Scalar::one();
                    datum.boundary_bulk(a, &t)
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            Vec::new()
        };
        boundary_bulk.push(BraneValues { brane: name.clone(), values });
    }
    Ok(TftSection {
        boundary_traces: names
            .iter()
            .zip(&datum.traces)
            .map(|(n, t)| BraneValues { brane: n.clone(), values: vec![t.clone()] })
            .collect(),
        bulk_boundary: names
            .iter()
            .zip(&datum.e)
            .map(|(n, e)| BraneValues { brane: n.clone(), values: (0..e.rows()).map(|r| e.row(r).to_vec()).collect() })
            .collect(),
        boundary_bulk,
        branes: names,
        axioms,
    })
}

/// Run every requested computation. Failures of individual sections are
/// recorded in `errors`; the report is still produced.
pub fn run_job(spec: &JobSpec, store: Option<&dyn GroebnerStore>) -> Report {
    let start = Instant::now();
    let mut timing = Timing::default();
    let mut errors = Vec::new();
    let record = |section: &str, e: Error, errors: &mut Vec<SectionError>| {
        errors.push(SectionError { section: section.into(), message: e.to_string() })
    };
    let wants = |c: Computation| spec.compute.contains(&c);

    let t = Instant::now();
    let alg = if wants(Computation::Jacobi) || wants(Computation::Tft) || wants(Computation::Koszul) {
        match JacobiAlgebra::with_store(&spec.lg, store) {
            Ok(a) => Some(a),
            Err(e) => {
                if wants(Computation::Jacobi) || wants(Computation::Tft) {
                    record("jacobi", e, &mut errors);
                }
                None
            }
        }
    } else {
        None
    };
    let jacobi = if wants(Computation::Jacobi) {
        alg.as_ref().and_then(|a| match jacobi_section(a, &spec.normalization.bulk) {
            Ok(s) => Some(s),
            Err(e) => {
                record("jacobi", e, &mut errors);
                None
            }
        })
    } else {
        None
    };
    timing.sections_ms.insert("jacobi".into(), t.elapsed().as_secs_f64() * 1e3);

    let t = Instant::now();
    let koszul = if wants(Computation::Koszul) {
        let bound = spec.koszul_bound.or(spec.degree_bound).unwrap_or_else(|| default_koszul_bound(spec, alg.as_ref()));
        match koszul_section(spec, bound) {
            Ok(s) => Some(s),
            Err(e) => {
                record("koszul", e, &mut errors);
                None
            }
        }
    } else {
        None
    };
    timing.sections_ms.insert("koszul".into(), t.elapsed().as_secs_f64() * 1e3);

    let t = Instant::now();
    let homs = if wants(Computation::Homs) {
        let mut out = Vec::new();
        for &(a, b) in &spec.pairs {
            match hom_section(spec, a, b) {
                Ok(s) => out.push(s),
                Err(e) => record(&format!("homs[{}->{}]", spec.branes[a].name, spec.branes[b].name), e, &mut errors),
            }
        }
        Some(out)
    } else {
        None
    };
    timing.sections_ms.insert("homs".into(), t.elapsed().as_secs_f64() * 1e3);

    let t = Instant::now();
    let tft = if wants(Computation::Tft) {
        alg.as_ref().and_then(|a| match tft_section(spec, a) {
            Ok(s) => Some(s),
            Err(e) => {
                record("tft", e, &mut errors);
                None
            }
        })
    } else {
        None
    };
    timing.sections_ms.insert("tft".into(), t.elapsed().as_secs_f64() * 1e3);
    timing.total_ms = start.elapsed().as_secs_f64() * 1e3;

    Report {
        schema_version: SCHEMA_VERSION.into(),
        tool: ToolInfo { name: env!("CARGO_PKG_NAME").into(), version: env!("CARGO_PKG_VERSION").into() },
        job: echo(spec),
        jacobi,
        koszul,
        homs,
        tft,
        errors,
        timing,
    }
}

impl Report {
    pub fn has_errors(&self) -> bool {
        !self.errors.is_empty()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// The report as JSON with the `timing` section removed.
    pub fn to_json_without_timing(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Some(o) = v.as_object_mut() {
            o.remove("timing");
        }
        serde_json::to_string_pretty(&v).expect("value serializes")
    }

    /// Short human-readable summary.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "W = {} over {:?}", self.job.w, self.job.variables);
        if let Some(j) = &self.jacobi {
            let _ = writeln!(s, "jacobi: mu = {}, basis [{}]", j.milnor_number, j.basis.join(", "));
        }
        if let Some(k) = &self.koszul {
            let totals: Vec<String> = (0..=self.job.variables.len() as i64)
                .map(|i| format!("H^{}={}", -i, k.table.total(-i)))
                .collect();
            let _ = writeln!(
                s,
                "koszul ({}, bound {}): {}; negative degrees vanish: {}",
                k.table.mode,
                k.table.degree_bound,
                totals.join(" "),
                k.negative_degrees_vanish
            );
        }
        for h in self.homs.iter().flatten() {
            let _ = writeln!(
                s,
                "hom {} -> {}: {}|{} ({}, stabilized: {})",
                h.source, h.target, h.even_dim, h.odd_dim, h.mode, h.stabilized
            );
        }
        if let Some(t) = &self.tft {
            let failing: Vec<&str> =
                t.axioms.clauses.iter().filter(|c| c.verdict == Verdict::Fail).map(|c| c.clause.as_str()).collect();
            let _ = writeln!(
                s,
                "tft: {} clauses, failing {:?}; cardy {:?}, c = {}",
                t.axioms.clauses.len(),
                failing,
                t.axioms.cardy.verdict,
                t.axioms.cardy.constant.as_ref().map_or("undetermined".to_string(), |c| c.to_string())
            );
        }
        for e in &self.errors {
            let _ = writeln!(s, "error in {}: {}", e.section, e.message);
        }
        s
    }
}

/// One differing field; `path` uses `/`-separated keys and indices.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiffEntry {
    pub path: String,
    pub left: Option<Value>,
    pub right: Option<Value>,
}

/// Field-level differences between two reports, ignoring `timing`.
pub fn diff_reports(r1: &Value, r2: &Value) -> Result<Vec<DiffEntry>> {
    let version = |v: &Value| v.get("schema_version").and_then(Value::as_str).unwrap_or("missing").to_string();
    let (v1, v2) = (version(r1), version(r2));
    if v1 != v2 || v1 != SCHEMA_VERSION {
        return Err(Error::SchemaMismatch(v1, v2));
    }
    let strip = |v: &Value| {
        let mut v = v.clone();
        if let Some(o) = v.as_object_mut() {
            o.remove("timing");
        }
        v
    };
    let mut out = Vec::new();
    diff_values("", &strip(r1), &strip(r2), &mut out);
    Ok(out)
}

fn diff_values(path: &str, a: &Value, b: &Value, out: &mut Vec<DiffEntry>) {
    match (a, b) {
        (Value::Object(x), Value::Object(y)) => {
            let keys: std::collections::BTreeSet<&String> = x.keys().chain(y.keys()).collect();
            for k in keys {
                let p = format!("{path}/{k}");
                match (x.get(k), y.get(k)) {
                    (Some(u), Some(v)) => diff_values(&p, u, v, out),
                    (u, v) => out.push(DiffEntry { path: p, left: u.cloned(), right: v.cloned() }),
                }
            }
        }
        (Value::Array(x), Value::Array(y)) => {
            for i in 0..x.len().max(y.len()) {
                let p = format!("{path}/{i}");
                match (x.get(i), y.get(i)) {
                    (Some(u), Some(v)) => diff_values(&p, u, v, out),
                    (u, v) => out.push(DiffEntry { path: p, left: u.cloned(), right: v.cloned() }),
                }
            }
        }
        _ if a != b => out.push(DiffEntry { path: path.to_string(), left: Some(a.clone()), right: Some(b.clone()) }),
        _ => {}
    }
}
