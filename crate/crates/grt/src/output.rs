//! Serialized forms of spectra, realizations and reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use grt_core::dtrans::{CosineProfile, Obstruction};
use grt_core::linalg::Spectrum;
use grt_core::metrics::MetricReport;
use grt_core::symmetry::OrbitalPartition;
use grt_core::{IntersectionArray, Matrix, PermGroup, Realization};
use serde::{Deserialize, Serialize};

use crate::error::{GrtError, Result};
use crate::formats::GraphJson;

pub const DIMENSION_TOO_LOW: &str = "Dimension too low, no plot generated.";

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

/// Human-readable number: 10 decimals, trailing zeros trimmed, no negative zero.
pub fn fmt_num(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let s = format!("{x:.10}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

fn rows(m: &Matrix) -> Vec<Vec<f64>> {
    m.to_row_vecs()
}

#[derive(Serialize)]
struct EigenvalueJson {
    theta: f64,
    multiplicity: usize,
    basis: Vec<Vec<f64>>,
}

#[derive(Serialize)]
struct SpectrumJson {
    tolerance: f64,
    eigenvalues: Vec<EigenvalueJson>,
}

pub fn spectrum_json(s: &Spectrum) -> String {
    let eigenvalues = s
        .groups()
        .iter()
        .map(|g| EigenvalueJson { theta: g.value, multiplicity: g.multiplicity(), basis: rows(&g.basis) })
        .collect();
    to_json(&SpectrumJson { tolerance: s.tol(), eigenvalues })
}

pub fn spectrum_csv(s: &Spectrum) -> String {
    let mut out = String::from("theta,multiplicity\n");
    for (theta, m) in s.summary() {
        writeln!(out, "{theta},{m}").unwrap();
    }
    out
}

pub fn spectrum_text(s: &Spectrum) -> String {
    let mut out = format!("{:>24}  {:>12}\n", "theta", "multiplicity");
    for (theta, m) in s.summary() {
        writeln!(out, "{:>24}  {m:>12}", fmt_num(theta)).unwrap();
    }
    out
}

/// `{"graph": {"n", "edges"}, "d": .., "matrix": [[..], ..]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealizationJson {
    pub graph: GraphJson,
    pub d: usize,
    pub matrix: Vec<Vec<f64>>,
}

impl From<&Realization> for RealizationJson {
    fn from(r: &Realization) -> Self {
        RealizationJson { graph: GraphJson::from(r.graph()), d: r.d(), matrix: rows(r.matrix()) }
    }
}

impl RealizationJson {
    pub fn build(&self) -> Result<Realization> {
        let g = self.graph.build()?.graph;
        if self.matrix.iter().any(|row| row.len() != self.d) {
            return Err(GrtError::Parse(format!("every matrix row must have d = {} entries", self.d)));
        }
        let m = if self.matrix.is_empty() { Matrix::zeros(0, self.d) } else { Matrix::from_rows(&self.matrix)? };
        Ok(Realization::new(g, m)?)
    }
}

pub fn realization_json(r: &Realization) -> String {
    to_json(&RealizationJson::from(r))
}

pub fn realization_csv(r: &Realization) -> String {
    let mut out = (0..r.d()).map(|k| format!("x{}", k + 1)).collect::<Vec<_>>().join(",");
    out.push('\n');
    for i in 0..r.n() {
        let line: Vec<String> = r.position(i).iter().map(|x| x.to_string()).collect();
        writeln!(out, "{}", line.join(",")).unwrap();
    }
    out
}

/// Wavefront OBJ with `v x y z` lines then 1-indexed `l i j` lines. Returns the
/// text and a note when coordinates beyond the third were dropped.
pub fn realization_obj(r: &Realization) -> Result<(String, Option<String>)> {
    if r.d() < 2 {
        return Err(GrtError::Unsupported(DIMENSION_TOO_LOW.into()));
    }
    let mut out = String::new();
    for i in 0..r.n() {
        let p = r.position(i);
        let z = p.get(2).copied().unwrap_or(0.0);
        writeln!(out, "v {} {} {}", p[0], p[1], z).unwrap();
    }
    for (i, j) in r.graph().edges() {
        writeln!(out, "l {} {}", i + 1, j + 1).unwrap();
    }
    let note = (r.d() > 3).then(|| format!("note: d = {}, projected onto the first 3 coordinates", r.d()));
    Ok((out, note))
}

/// Static SVG drawing of the first two coordinates.
pub fn realization_svg(r: &Realization) -> Result<(String, Option<String>)> {
    if r.d() < 2 {
        return Err(GrtError::Unsupported(DIMENSION_TOO_LOW.into()));
    }
    const SIZE: f64 = 400.0;
    const MARGIN: f64 = 20.0;
    let extent = (0..r.n())
        .flat_map(|i| [r.position(i)[0].abs(), r.position(i)[1].abs()])
        .fold(0.0f64, f64::max)
        .max(1e-12);
    let scale = (SIZE / 2.0 - MARGIN) / extent;
    let at = |i: usize| {
        let p = r.position(i);
        (SIZE / 2.0 + scale * p[0], SIZE / 2.0 - scale * p[1])
    };
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n"
    );
    out.push_str("<g stroke=\"black\" stroke-width=\"1\">\n");
    for &(i, j) in r.graph().edges() {
        let ((x1, y1), (x2, y2)) = (at(i), at(j));
        writeln!(out, "<line x1=\"{x1:.4}\" y1=\"{y1:.4}\" x2=\"{x2:.4}\" y2=\"{y2:.4}\"/>").unwrap();
    }
    out.push_str("</g>\n<g fill=\"black\">\n");
    for i in 0..r.n() {
        let (x, y) = at(i);
        writeln!(out, "<circle cx=\"{x:.4}\" cy=\"{y:.4}\" r=\"3\"/>").unwrap();
    }
    out.push_str("</g>\n</svg>\n");
    let note = (r.d() > 2).then(|| format!("note: d = {}, projected onto the first 2 coordinates", r.d()));
    Ok((out, note))
}

pub fn metric_text(m: &MetricReport, extra: &[(&str, f64)]) -> String {
    let mut fields = vec![
        ("radius", m.radius),
        ("omega", m.omega),
        ("length", m.length),
        ("cosine", m.cosine),
        ("relative_length", m.relative_length),
        ("theta", m.theta),
        ("lambda", m.lambda),
    ];
    fields.extend_from_slice(extra);
    let width = fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in fields {
        writeln!(out, "{k:<width$}  {}", fmt_num(v)).unwrap();
    }
    out
}

#[derive(Serialize)]
pub struct IntersectionArrayJson<'a> {
    pub diam: usize,
    pub a: &'a [usize],
    pub b: &'a [usize],
    pub c: &'a [usize],
}

pub fn intersection_array_json(arr: &IntersectionArray) -> String {
    to_json(&IntersectionArrayJson { diam: arr.diam, a: &arr.a, b: &arr.b, c: &arr.c })
}

/// `{b_0, .., b_{d-1}; c_1, .., c_d}`.
pub fn intersection_array_text(arr: &IntersectionArray) -> String {
    let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    format!("{{{};{}}}\n", join(&arr.b), join(&arr.c))
}

#[derive(Serialize)]
struct CosineJson<'a> {
    base: usize,
    radius_squared: f64,
    vector: &'a [f64],
    sequence: Option<&'a [f64]>,
    /// Sequence predicted from the intersection array, scaled by `r²`.
    #[serde(skip_serializing_if = "Option::is_none")]
    recurrence: Option<&'a [f64]>,
    multiset: Vec<(f64, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    obstruction: Option<&'a Obstruction>,
}

pub fn cosine_json(p: &CosineProfile, recurrence: Option<&[f64]>, obstruction: Option<&Obstruction>) -> String {
    to_json(&CosineJson {
        base: p.base,
        radius_squared: p.radius_squared(),
        vector: &p.vector,
        sequence: p.sequence.as_deref(),
        recurrence,
        multiset: p.multiset(1e-9),
        obstruction,
    })
}

#[derive(Serialize)]
struct GroupJson {
    degree: usize,
    order: u128,
    generators: Vec<Vec<usize>>,
}

pub fn group_json(group: &PermGroup) -> String {
    to_json(&GroupJson {
        degree: group.degree(),
        order: group.order(),
        generators: group.generators().iter().map(|p| p.images().to_vec()).collect(),
    })
}

/// One eigenspace of the seeded orbital matrix and the adjacency eigenvalue whose
/// eigenspace equals it, if any.
#[derive(Clone, Debug, Serialize)]
pub struct BlockMatch {
    pub multiplicity: usize,
    pub adjacency_theta: Option<f64>,
}

#[derive(Serialize)]
struct OrbitalsJson<'a> {
    count: usize,
    classes: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    candidate_decomposition: Option<&'a [BlockMatch]>,
}

/// Orbital classes as a map `"i,j" → class` over `i ≤ j`.
pub fn orbitals_json(part: &OrbitalPartition, decomposition: Option<&[BlockMatch]>) -> String {
    let mut classes = BTreeMap::new();
    for (c, members) in part.classes().iter().enumerate() {
        for (i, j) in members {
            classes.insert(format!("{i},{j}"), c);
        }
    }
    to_json(&OrbitalsJson { count: part.len(), classes, candidate_decomposition: decomposition })
}
