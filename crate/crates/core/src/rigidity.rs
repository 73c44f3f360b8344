//! Full local dimension, Fix-dimension, eigenspace projections and the rigidity cascade.

use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};

use crate::error::{Error, Result};
use crate::linalg::{eigendecompose, singular_values, Spectrum, DEFAULT_GROUPING_TOL};
use crate::matrix::Matrix;
use crate::perm::PermGroup;
use crate::realization::{
    equivalent, extract_representation, induced_map, irreducibility_test, is_balanced, normalize,
    scale_orbits, Extraction, Irreducibility, Realization, DEFAULT_SAMPLES,
};
use crate::symmetry::{transitivity_class, vertex_orbits, Transitivity};

/// Relative threshold below which a projection norm counts as zero.
pub const HIT_TOL: f64 = 1e-6;
const RANK_TOL: f64 = 1e-8;
const BALANCE_TOL: f64 = 1e-8;

/// Every vertex's edge directions `v_j − v_i` span `ℝ^d`.
pub fn full_local_dimension(r: &Realization) -> bool {
    let g = r.graph();
    let scale = r.matrix().max_abs();
    (0..r.n()).all(|i| {
        let vi = r.position(i);
        let rows: Vec<Vec<f64>> = g
            .neighbors(i)
            .iter()
            .map(|&j| r.position(j).iter().zip(vi).map(|(a, b)| a - b).collect())
            .collect();
        if rows.len() < r.d() {
            return false;
        }
        let m = Matrix::from_rows(&rows).expect("rows of equal length");
        singular_values(&m).iter().filter(|&&s| s > RANK_TOL * scale).count() == r.d()
    })
}

/// Dimension of the subspace fixed by `T_σ` for every `σ` in the stabilizer of `base`.
pub fn fix_dimension(r: &Realization, group: &PermGroup, base: usize) -> Result<usize> {
    if base >= r.n() {
        return Err(Error::IndexOutOfRange { index: base, len: r.n() });
    }
    extract_representation(r, group, 1e-6)?.representation()?;
    let d = r.d();
    let stabilizer = group.stabilizer(base);
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for sigma in stabilizer.generators() {
        let t = induced_map(r, sigma)?.sub(&Matrix::identity(d));
        rows.extend(t.to_row_vecs());
    }
    if rows.is_empty() {
        return Ok(d);
    }
    let stacked = Matrix::from_rows(&rows)?;
    let rank = singular_values(&stacked).iter().filter(|&&s| s > RANK_TOL).count();
    Ok(d - rank)
}

/// One entry of [`eigenspace_projections`].
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EigenspaceHit {
    pub theta: f64,
    /// Frobenius norm of the projection of an orthonormal basis of `U` onto `Eig(θ)`.
    pub norm: f64,
}

/// Projection norms of the arrangement space onto every eigenspace of `spectrum`.
///
/// The squared norms sum to `d`.
pub fn eigenspace_projections(r: &Realization, spectrum: &Spectrum) -> Result<Vec<EigenspaceHit>> {
    if spectrum.dimension() != r.n() {
        return Err(Error::DimensionMismatch { expected: r.n(), found: spectrum.dimension() });
    }
    let u = normalize(r)?;
    Ok(spectrum
        .groups()
        .iter()
        .map(|grp| EigenspaceHit { theta: grp.value, norm: grp.basis.tmul(u.matrix()).frobenius() })
        .collect())
}

/// Hits with norm above `HIT_TOL·sqrt(d)`.
pub fn nonzero_hits(hits: &[EigenspaceHit], d: usize) -> Vec<EigenspaceHit> {
    let threshold = HIT_TOL * libm::sqrt(d as f64);
    hits.iter().copied().filter(|h| h.norm > threshold).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MultiplicityCriteria {
    /// Largest multiplicity.
    pub mu1: usize,
    /// Largest multiplicity among the remaining eigenvalues (0 if none).
    pub mu2: usize,
    pub balanced_forced: bool,
    pub rigid_forced: bool,
}

/// For an irreducible Σ-realization of dimension `d`: a unique largest multiplicity
/// `μ₁` with `μ₂ < d` forces balance, and additionally `μ₁ < 2d` forces rigidity.
pub fn multiplicity_criteria(spectrum: &Spectrum, d: usize) -> Result<MultiplicityCriteria> {
    if d == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    let mut mult: Vec<usize> = spectrum.groups().iter().map(|g| g.multiplicity()).collect();
    mult.sort_unstable_by(|a, b| b.cmp(a));
    let mu1 = mult.first().copied().unwrap_or(0);
    let mu2 = mult.get(1).copied().unwrap_or(0);
    let unique = mu1 > mu2;
    let balanced_forced = unique && mu2 < d;
    let rigid_forced = balanced_forced && mu1 < 2 * d;
    Ok(MultiplicityCriteria { mu1, mu2, balanced_forced, rigid_forced })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Verdict {
    RigidCertified,
    FlexibleCertified,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Rule {
    /// (a) The group is distance-transitive.
    DistanceTransitive,
    /// (b) Arc-transitive with full local dimension.
    ArcTransitiveFullLocalDimension,
    /// (c) Vertex-transitive with one-dimensional Fix space.
    FixDimensionOne,
    /// (d) Irreducible, not vertex-transitive, at least two nonzero orbits.
    OrbitScaling,
    /// (e) Irreducible with at least two eigenspace hits.
    EigenspaceMixing,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::DistanceTransitive => "distance_transitive",
            Rule::ArcTransitiveFullLocalDimension => "arc_transitive_full_local_dimension",
            Rule::FixDimensionOne => "fix_dimension_one",
            Rule::OrbitScaling => "orbit_scaling",
            Rule::EigenspaceMixing => "eigenspace_mixing",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RigidityReport {
    pub verdict: Verdict,
    pub rule: Option<Rule>,
    pub transitivity: Transitivity,
    pub full_local_dimension: bool,
    /// At vertex 0.
    pub fix_dim: Option<usize>,
    pub irreducible: bool,
    /// `θ` when the realization is balanced (tolerance 1e-8).
    pub balanced: Option<f64>,
    pub eigenspace_hits: Vec<EigenspaceHit>,
    pub balanced_forced: bool,
    pub rigid_forced: bool,
    /// Checks performed while certifying, in order.
    pub notes: Vec<String>,
}

/// Runs the rule cascade (a) to (e) on a Σ-realization and re-verifies the certificate
/// that fires numerically.
pub fn rigidity_report(r: &Realization, group: &PermGroup, seed: u64) -> Result<RigidityReport> {
    let g = r.graph();
    if let Extraction::Violation { generator, residual, orthogonality_defect } = extract_representation(r, group, 1e-6)? {
        return Err(Error::NotSymmetric { generator, residual: residual.max(orthogonality_defect) });
    }
    let transitivity = transitivity_class(g, group)?;
    let full_local = full_local_dimension(r);
    let fix_dim = Some(fix_dimension(r, group, 0)?);
    let irreducible = irreducibility_test(r, group, DEFAULT_SAMPLES, seed)? == Irreducibility::Irreducible;
    let balanced = is_balanced(r, BALANCE_TOL);
    let spectrum = eigendecompose(&g.adjacency_matrix(), DEFAULT_GROUPING_TOL)?;
    let eigenspace_hits = eigenspace_projections(r, &spectrum)?;
    let hits = nonzero_hits(&eigenspace_hits, r.d());
    let criteria = multiplicity_criteria(&spectrum, r.d())?;
    let mut notes = Vec::new();
    let below: Vec<&EigenspaceHit> =
        eigenspace_hits.iter().filter(|h| h.norm > 0.0 && !hits.contains(h)).collect();
    if below.iter().any(|h| h.norm > 1e-12) {
        notes.push(format!("{} projection(s) below threshold treated as zero", below.len()));
    }

    let mut report = RigidityReport {
        verdict: Verdict::Inconclusive,
        rule: None,
        transitivity,
        full_local_dimension: full_local,
        fix_dim,
        irreducible,
        balanced,
        eigenspace_hits: eigenspace_hits.clone(),
        balanced_forced: irreducible && criteria.balanced_forced,
        rigid_forced: irreducible && criteria.rigid_forced,
        notes: Vec::new(),
    };

    if transitivity.distance {
        // Eigenspaces are the irreducible subspaces, so U must be a sum of whole eigenspaces.
        let whole = hits.iter().all(|h| {
            let m = spectrum.find(h.theta, 1e-12).map_or(0, |grp| grp.multiplicity()) as f64;
            libm::fabs(h.norm * h.norm - m) <= 1e-6
        });
        if !whole {
            return Err(Error::CrossCheckFailed("arrangement space is not a sum of eigenspaces".into()));
        }
        notes.push("arrangement space is a sum of eigenspaces".into());
        report.verdict = Verdict::RigidCertified;
        report.rule = Some(Rule::DistanceTransitive);
    } else if transitivity.arc && full_local {
        if !irreducible || balanced.is_none() {
            return Err(Error::CrossCheckFailed("arc-transitive full-local-dimension realization is not irreducible and balanced".into()));
        }
        notes.push(format!("irreducible and balanced with θ = {}", balanced.unwrap()));
        report.verdict = Verdict::RigidCertified;
        report.rule = Some(Rule::ArcTransitiveFullLocalDimension);
    } else if transitivity.vertex && fix_dim == Some(1) {
        notes.push("stabilizer fixes a single line".into());
        report.verdict = Verdict::RigidCertified;
        report.rule = Some(Rule::FixDimensionOne);
    } else if irreducible && !transitivity.vertex {
        let orbits = vertex_orbits(group);
        let nonzero: Vec<bool> = orbits
            .iter()
            .map(|orb| orb.iter().any(|&i| r.position(i).iter().any(|&x| x != 0.0)))
            .collect();
        if nonzero.iter().filter(|&&b| b).count() >= 2 {
            let second = nonzero.iter().enumerate().filter(|(_, &b)| b).nth(1).unwrap().0;
            let mut alphas = vec![1.0; orbits.len()];
            alphas[second] = 1.5;
            let moved = scale_orbits(r, group, &alphas)?;
            let symmetric = matches!(extract_representation(&moved, group, 1e-6)?, Extraction::Symmetric(_));
            if symmetric && !equivalent(&moved, r, 1e-7)? {
                notes.push(format!("scaling orbit {second} by 1.5 gives a non-equivalent symmetric realization"));
                report.verdict = Verdict::FlexibleCertified;
                report.rule = Some(Rule::OrbitScaling);
            } else {
                notes.push("orbit scaling did not produce a non-equivalent realization".into());
            }
        }
    }
    if report.rule.is_none() && irreducible && hits.len() >= 2 {
        if balanced.is_some() {
            return Err(Error::CrossCheckFailed("several eigenspace hits but balanced".into()));
        }
        notes.push(format!("{} eigenspace hits and not balanced", hits.len()));
        report.verdict = Verdict::FlexibleCertified;
        report.rule = Some(Rule::EigenspaceMixing);
    }
    report.notes = notes;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog, Family};
    use crate::constructions::{c6_sign_torus, cycle_rotation_representation, hexagonal_prism_antipodal, polytope_skeleton};
    use crate::realization::{build_from_representation, spectral_realization};
    use crate::symmetry::automorphism_group;

    #[test]
    fn local_dimension() {
        assert!(full_local_dimension(&polytope_skeleton(Family::Cell24).unwrap()));
        assert!(full_local_dimension(&c6_sign_torus()));
        let g = catalog(Family::Dodecahedron, &[]).unwrap();
        let four = spectral_realization(&g, 4, DEFAULT_GROUPING_TOL).unwrap();
        assert_eq!(four.d(), 4);
        assert!(!full_local_dimension(&four));
    }

    #[test]
    fn fix_dimensions() {
        let cell = polytope_skeleton(Family::Cell24).unwrap();
        let aut = automorphism_group(cell.graph()).unwrap();
        assert_eq!(fix_dimension(&cell, &aut, 0).unwrap(), 1);
        let (g, rot, rep) = cycle_rotation_representation(6);
        let polygon = build_from_representation(&g, &rot, &rep, &[1.0, 0.0], 0).unwrap();
        assert_eq!(fix_dimension(&polygon, &rot, 0).unwrap(), 2);
        let pet = catalog(Family::Petersen, &[]).unwrap();
        let r1 = spectral_realization(&pet, 1, DEFAULT_GROUPING_TOL).unwrap();
        assert_eq!(fix_dimension(&r1, &automorphism_group(&pet).unwrap(), 0).unwrap(), 1);
    }

    #[test]
    fn projections() {
        let g = catalog(Family::TruncatedTetrahedron, &[]).unwrap();
        let spectrum = eigendecompose(&g.adjacency_matrix(), DEFAULT_GROUPING_TOL).unwrap();
        let r = spectral_realization(&g, 2, DEFAULT_GROUPING_TOL).unwrap();
        let hits = eigenspace_projections(&r, &spectrum).unwrap();
        assert_eq!(nonzero_hits(&hits, r.d()).len(), 1);
        let total: f64 = hits.iter().map(|h| h.norm * h.norm).sum();
        assert!((total - 3.0).abs() < 1e-6);

        let prism = hexagonal_prism_antipodal();
        let spectrum = eigendecompose(&prism.graph().adjacency_matrix(), DEFAULT_GROUPING_TOL).unwrap();
        let hits = nonzero_hits(&eigenspace_projections(&prism, &spectrum).unwrap(), 2);
        assert_eq!(hits.len(), 1);
        assert!(hits[0].theta.abs() < 1e-9);
    }

    #[test]
    fn multiplicity_rules() {
        let spec = |f, p: &[usize]| eigendecompose(&catalog(f, p).unwrap().adjacency_matrix(), DEFAULT_GROUPING_TOL).unwrap();
        for n in [3, 4, 5] {
            let c = multiplicity_criteria(&spec(Family::CompleteBipartite, &[n, n]), 2).unwrap();
            assert!(c.balanced_forced && !c.rigid_forced);
        }
        let c = multiplicity_criteria(&spec(Family::Dodecahedron, &[]), 5).unwrap();
        assert_eq!((c.mu1, c.mu2, c.balanced_forced, c.rigid_forced), (5, 4, true, true));
        // C6 has multiplicities 1, 2, 2, 1: the largest is not unique.
        let c = multiplicity_criteria(&spec(Family::Cycle, &[6]), 3).unwrap();
        assert!(!c.balanced_forced);
    }

    #[test]
    fn cascade_examples() {
        let cell = polytope_skeleton(Family::Cell24).unwrap();
        let aut = automorphism_group(cell.graph()).unwrap();
        let rep = rigidity_report(&cell, &aut, 0).unwrap();
        assert_eq!((rep.verdict, rep.rule), (Verdict::RigidCertified, Some(Rule::ArcTransitiveFullLocalDimension)));
        assert!((rep.balanced.unwrap() - 4.0).abs() < 1e-8);

        let g = catalog(Family::Dodecahedron, &[]).unwrap();
        let aut = automorphism_group(&g).unwrap();
        let r = spectral_realization(&g, 2, DEFAULT_GROUPING_TOL).unwrap();
        let rep = rigidity_report(&r, &aut, 0).unwrap();
        assert_eq!((rep.verdict, rep.rule), (Verdict::RigidCertified, Some(Rule::DistanceTransitive)));

        let rd = polytope_skeleton(Family::RhombicDodecahedron).unwrap();
        let aut = automorphism_group(rd.graph()).unwrap();
        let scaled = scale_orbits(&rd, &aut, &[1.0, 1.5]).unwrap();
        let rep = rigidity_report(&scaled, &aut, 0).unwrap();
        assert_eq!((rep.verdict, rep.rule), (Verdict::FlexibleCertified, Some(Rule::OrbitScaling)));
    }
}
