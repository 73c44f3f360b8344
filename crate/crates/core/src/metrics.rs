//! Radius, edge inner product, edge length and angles of balanced transitive realizations.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::{dot, Matrix};
use crate::perm::PermGroup;
use crate::realization::{extract_representation, is_balanced, Extraction, Realization};
use crate::symmetry::transitivity_class;
use alloc::format;

const EDGE_SPREAD_TOL: f64 = 1e-8;
const CLOSED_FORM_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MetricReport {
    pub radius: f64,
    /// Common inner product `⟨v_i, v_j⟩` over edges.
    pub omega: f64,
    /// Common edge length.
    pub length: f64,
    /// `ω / r²`.
    pub cosine: f64,
    /// `ℓ / r`.
    pub relative_length: f64,
    pub theta: f64,
    /// Laplacian eigenvalue `deg − θ`.
    pub lambda: f64,
}

/// `sqrt(tr(MᵀM)/n)`.
pub fn radius(r: &Realization) -> f64 {
    libm::sqrt(r.matrix().gram().trace() / r.n() as f64)
}

/// Metric quantities of a balanced realization that is symmetric under a
/// vertex- and edge-transitive group.
///
/// Preconditions are checked here, and the closed forms (`cosine = θ/deg`,
/// `relative_length² = 2λ/deg`, and for normalized input `ω = θd/2|E|`,
/// `ℓ² = λd/|E|`) are compared with the direct row computations.
pub fn metric_report(r: &Realization, group: &PermGroup, tol: f64) -> Result<MetricReport> {
    let g = r.graph();
    let flags = transitivity_class(g, group)?;
    if !flags.vertex {
        return Err(Error::NotTransitive("vertices"));
    }
    if !flags.edge {
        return Err(Error::NotTransitive("edges"));
    }
    if let Extraction::Violation { generator, residual, orthogonality_defect } =
        extract_representation(r, group, tol.max(1e-8))?
    {
        return Err(Error::NotSymmetric { generator, residual: residual.max(orthogonality_defect) });
    }
    let theta = is_balanced(r, tol.max(1e-8)).ok_or(Error::NotBalanced)?;
    let deg = g.regular_degree().ok_or(Error::NotRegular)? as f64;
    let m = r.matrix();

    let (mut lo, mut hi, mut sum) = (f64::INFINITY, f64::NEG_INFINITY, 0.0);
    let mut length_sq = 0.0;
    for &(i, j) in g.edges() {
        let w = dot(m.row(i), m.row(j));
        lo = lo.min(w);
        hi = hi.max(w);
        sum += w;
        length_sq += m.row(i).iter().zip(m.row(j)).map(|(a, b)| (a - b) * (a - b)).sum::<f64>();
    }
    let edges = g.edge_count() as f64;
    let scale = m.max_abs().max(1.0);
    if hi - lo > EDGE_SPREAD_TOL * scale * scale {
        return Err(Error::CrossCheckFailed(format!("edge inner products spread by {}", hi - lo)));
    }
    let omega = sum / edges;
    let length = libm::sqrt(length_sq / edges);
    let radius = radius(r);
    let lambda = deg - theta;
    let report = MetricReport {
        radius,
        omega,
        length,
        cosine: omega / (radius * radius),
        relative_length: length / radius,
        theta,
        lambda,
    };

    let check = |name: &str, got: f64, want: f64| -> Result<()> {
        if libm::fabs(got - want) > CLOSED_FORM_TOL * want.abs().max(1.0) {
            return Err(Error::CrossCheckFailed(format!("{name}: direct {got}, closed form {want}")));
        }
        Ok(())
    };
    check("cosine", report.cosine, theta / deg)?;
    check("relative length squared", report.relative_length * report.relative_length, 2.0 * lambda / deg)?;
    let d = r.d() as f64;
    let normalized = m.gram().sub(&Matrix::identity(r.d())).max_abs() <= 1e-8;
    if normalized {
        check("omega", omega, theta * d / (2.0 * edges))?;
        check("length squared", length * length, lambda * d / edges)?;
    }
    Ok(report)
}

/// Circumradius of a θ-balanced vertex/edge-transitive realization scaled to unit edges:
/// `sqrt(deg / (2(deg − θ)))`.
pub fn circumradius_at_unit_edge(g: &Graph, theta: f64) -> Result<f64> {
    let deg = g.regular_degree().ok_or(Error::NotRegular)? as f64;
    if theta >= deg {
        return Err(Error::InvalidArgument(format!("θ = {theta} must be below the degree {deg}")));
    }
    Ok(libm::sqrt(deg / (2.0 * (deg - theta))))
}

/// Dihedral angle `π − arccos(θ/deg)` in radians of the polytope dual to the realization.
pub fn dihedral_angle_from_dual(g_dual: &Graph, theta: f64) -> Result<f64> {
    let deg = g_dual.regular_degree().ok_or(Error::NotRegular)? as f64;
    let c = theta / deg;
    if !(-1.0..=1.0).contains(&c) {
        return Err(Error::InvalidArgument(format!("cosine {c} outside [-1, 1]")));
    }
    Ok(core::f64::consts::PI - libm::acos(c))
}

/// `θ = deg·(1 − ½·(ℓ/r)²)`.
pub fn theta_from_metrics(deg: f64, relative_length: f64) -> Result<f64> {
    if deg.is_nan() || deg <= 0.0 || relative_length.is_nan() || relative_length < 0.0 {
        return Err(Error::InvalidArgument("need deg > 0 and relative length >= 0".into()));
    }
    Ok(deg * (1.0 - 0.5 * relative_length * relative_length))
}

/// `ℓ/r = sqrt(2(deg − θ)/deg)`, the inverse of [`theta_from_metrics`].
pub fn relative_length(deg: f64, theta: f64) -> Result<f64> {
    if deg.is_nan() || deg <= 0.0 || theta.is_nan() || theta > deg {
        return Err(Error::InvalidArgument("need deg > 0 and θ <= deg".into()));
    }
    Ok(libm::sqrt(2.0 * (deg - theta) / deg))
}
