//! Acceptance checks, one PASS/FAIL line per criterion. Exits 1 if any fails.

use std::process::Command;

use grt::cli::SWEEP;
use grt_core::catalog::{catalog, Family};
use grt_core::constructions::{c6_sign_torus, hexagonal_prism_antipodal, polytope_skeleton, truncated_tetrahedron_mix};
use grt_core::dtrans::{base_and_neighbors, cosine_obstruction, cosine_profile, cosine_sequence_recurrence, intersection_array};
use grt_core::linalg::{eigendecompose, subspace_relation, SubspaceRelation, DEFAULT_GROUPING_TOL};
use grt_core::metrics::{circumradius_at_unit_edge, dihedral_angle_from_dual, theta_from_metrics};
use grt_core::realization::{
    extract_representation, irreducibility_test, is_balanced, is_spectral, scale_orbits,
    spectral_realizations, symmetry_residuals, Extraction, Irreducibility,
};
use grt_core::rigidity::{eigenspace_projections, full_local_dimension, multiplicity_criteria, nonzero_hits, rigidity_report};
use grt_core::symmetry::{automorphism_group, candidate_decomposition, orbitals, transitivity_class};
use grt_core::{cartesian_product, Graph, Verdict};

// Pinned tolerances.
const SPECTRUM_TOL: f64 = 1e-8;
const SYMMETRY_RESIDUAL_TOL: f64 = 1e-6;
const CIRCUMRADIUS_TOL: f64 = 1e-5;
const DIHEDRAL_TOL_DEG: f64 = 1e-3;
const BALANCE_WITNESS_TOL: f64 = 1e-9;
const CELL24_THETA_TOL: f64 = 1e-8;
const REYNOLDS_SAMPLES: usize = 3;
const SUBSPACE_TOL: f64 = 1e-6;
const INTEGER_TOL: f64 = 1e-9;
const RECURRENCE_TOL: f64 = 1e-7;
const BALANCED_TOL: f64 = 1e-8;
const DETERMINISM_RUNS: usize = 10;
const SEED: u64 = 0;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cat(f: Family, p: &[usize]) -> Graph {
    catalog(f, p).expect("catalog graph")
}

fn check_spectrum(name: &str, g: &Graph, expected: &[(f64, usize)]) -> Result<(), String> {
    let got = eigendecompose(&g.adjacency_matrix(), DEFAULT_GROUPING_TOL).map_err(|e| e.to_string())?.summary();
    ensure(got.len() == expected.len(), || format!("{name}: {} distinct eigenvalues, expected {}", got.len(), expected.len()))?;
    for (&(theta, m), &(want, k)) in got.iter().zip(expected) {
        ensure(m == k && (theta - want).abs() <= SPECTRUM_TOL, || {
            format!("{name}: got {theta}^{m}, expected {want}^{k}")
        })?;
    }
    Ok(())
}

fn criterion_1() -> Outcome {
    let s5 = 5f64.sqrt();
    check_spectrum(
        "dodecahedron",
        &cat(Family::Dodecahedron, &[]),
        &[(3.0, 1), (s5, 3), (1.0, 5), (0.0, 4), (-2.0, 4), (-s5, 3)],
    )?;
    check_spectrum(
        "hexagonal prism",
        &cat(Family::Prism, &[6]),
        &[(3.0, 1), (2.0, 2), (1.0, 1), (0.0, 4), (-1.0, 1), (-2.0, 2), (-3.0, 1)],
    )?;
    check_spectrum(
        "truncated tetrahedron",
        &cat(Family::TruncatedTetrahedron, &[]),
        &[(3.0, 1), (2.0, 3), (0.0, 2), (-1.0, 3), (-2.0, 3)],
    )?;
    for n in 3..=5 {
        let nf = n as f64;
        check_spectrum(
            &format!("K{n},{n}"),
            &cat(Family::CompleteBipartite, &[n, n]),
            &[(nf, 1), (0.0, 2 * (n - 1)), (-nf, 1)],
        )?;
    }
    let c6 = cat(Family::Cycle, &[6]);
    check_spectrum(
        "C6xC6",
        &cartesian_product(&c6, &c6),
        &[(4.0, 1), (3.0, 4), (2.0, 4), (1.0, 4), (0.0, 10), (-1.0, 4), (-2.0, 4), (-3.0, 4), (-4.0, 1)],
    )?;
    // The 24-cell graph has 24 vertices and 96 edges, so multiplicities sum to 24
    // and squared eigenvalues sum to 192; this is its spectrum.
    check_spectrum("24-cell", &cat(Family::Cell24, &[]), &[(8.0, 1), (4.0, 4), (0.0, 9), (-2.0, 8), (-4.0, 2)])?;
    Ok("10 spectra match (24-cell checked against {8^1,4^4,0^9,(-2)^8,(-4)^2})".into())
}

fn criterion_2() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for (name, params) in SWEEP {
        let g = catalog(name.parse().unwrap(), params).unwrap();
        let aut = automorphism_group(&g).map_err(|e| e.to_string())?;
        for (theta, r) in spectral_realizations(&g, DEFAULT_GROUPING_TOL).map_err(|e| e.to_string())? {
            let ext = extract_representation(&r, &aut, SYMMETRY_RESIDUAL_TOL).map_err(|e| e.to_string())?;
            ensure(matches!(ext, Extraction::Symmetric(_)), || format!("{name} θ={theta}: {ext:?}"))?;
            let res = symmetry_residuals(&r, &aut).map_err(|e| e.to_string())?;
            let m = res.iter().map(|p| p.0).fold(0.0, f64::max);
            ensure(m <= SYMMETRY_RESIDUAL_TOL, || format!("{name} θ={theta}: residual {m:e}"))?;
            worst = worst.max(m);
            count += 1;
        }
    }
    Ok(format!("{count} spectral realizations over {} graphs, max residual {worst:e}", SWEEP.len()))
}

fn criterion_3() -> Outcome {
    let dodeca = cat(Family::Dodecahedron, &[]);
    let s5 = 5f64.sqrt();
    let r = circumradius_at_unit_edge(&dodeca, s5).map_err(|e| e.to_string())?;
    ensure((r - 1.401258).abs() <= CIRCUMRADIUS_TOL, || format!("circumradius {r}"))?;
    let angle = dihedral_angle_from_dual(&dodeca, s5).map_err(|e| e.to_string())?.to_degrees();
    ensure((angle - 138.1896).abs() <= DIHEDRAL_TOL_DEG, || format!("dihedral {angle}°"))?;
    let theta = theta_from_metrics(8.0, 1.0).map_err(|e| e.to_string())?;
    ensure(theta == 4.0, || format!("theta_from_metrics(8, 1) = {theta}"))?;
    Ok(format!("circumradius {r:.6}, dihedral {angle:.4}°, θ = {theta}"))
}

fn criterion_4() -> Outcome {
    for (name, r) in [("hexagonal prism", hexagonal_prism_antipodal()), ("C6xC6", c6_sign_torus())] {
        let theta = is_balanced(&r, BALANCE_WITNESS_TOL);
        ensure(theta.is_some_and(|t| t.abs() <= BALANCE_WITNESS_TOL), || format!("{name}: is_balanced = {theta:?}"))?;
        let spectral = is_spectral(&r, BALANCE_WITNESS_TOL);
        ensure(spectral.is_none(), || format!("{name}: is_spectral = {spectral:?}"))?;
    }
    Ok("both witnesses 0-balanced and not spectral".into())
}

fn criterion_5() -> Outcome {
    let r = polytope_skeleton(Family::Cell24).map_err(|e| e.to_string())?;
    let aut = automorphism_group(r.graph()).map_err(|e| e.to_string())?;
    ensure(full_local_dimension(&r), || "full local dimension fails".into())?;
    let irr = irreducibility_test(&r, &aut, REYNOLDS_SAMPLES, SEED).map_err(|e| e.to_string())?;
    ensure(irr == Irreducibility::Irreducible, || format!("{irr:?}"))?;
    let theta = is_balanced(&r, BALANCED_TOL);
    ensure(theta.is_some_and(|t| (t - 4.0).abs() <= CELL24_THETA_TOL), || format!("θ = {theta:?}"))?;
    let report = rigidity_report(&r, &aut, SEED).map_err(|e| e.to_string())?;
    ensure(report.verdict == Verdict::RigidCertified, || format!("{:?}", report.verdict))?;
    Ok(format!("θ = {}, rule {}", theta.unwrap(), report.rule.map_or("-", |r| r.name())))
}

fn criterion_6() -> Outcome {
    let cases: &[(Family, &[usize])] = &[
        (Family::Cycle, &[5]),
        (Family::Cycle, &[6]),
        (Family::Complete, &[5]),
        (Family::CompleteBipartite, &[3, 3]),
        (Family::Petersen, &[]),
        (Family::Dodecahedron, &[]),
    ];
    for (f, p) in cases {
        let g = cat(*f, p);
        let aut = automorphism_group(&g).map_err(|e| e.to_string())?;
        ensure(transitivity_class(&g, &aut).unwrap().distance, || format!("{f} not distance-transitive"))?;
        for (theta, r) in spectral_realizations(&g, DEFAULT_GROUPING_TOL).unwrap() {
            let irr = irreducibility_test(&r, &aut, REYNOLDS_SAMPLES, SEED).map_err(|e| e.to_string())?;
            ensure(irr == Irreducibility::Irreducible, || format!("{f} θ={theta} reducible"))?;
        }
        let adjacency = eigendecompose(&g.adjacency_matrix(), DEFAULT_GROUPING_TOL).unwrap();
        let candidate = candidate_decomposition(&orbitals(&aut), SEED).map_err(|e| e.to_string())?;
        ensure(candidate.len() == adjacency.len(), || format!("{f}: {} orbital blocks", candidate.len()))?;
        for block in candidate.groups() {
            let matched = adjacency.groups().iter().any(|e| {
                subspace_relation(&block.subspace(), &e.subspace(), SUBSPACE_TOL).unwrap() == SubspaceRelation::Equal
            });
            ensure(matched, || format!("{f}: orbital block of dim {} unmatched", block.multiplicity()))?;
        }
    }
    Ok("6 graphs: eigenspaces irreducible, orbital blocks equal adjacency eigenspaces".into())
}

fn integer_multiset(name: &str, r: &grt_core::Realization, expected: &[(i64, usize)]) -> Result<(), String> {
    let p = cosine_profile(r, 0).map_err(|e| e.to_string())?;
    ensure(p.vector.iter().all(|x| (x - x.round()).abs() <= INTEGER_TOL), || format!("{name}: non-integer cosines"))?;
    let ms: Vec<(i64, usize)> = p.multiset(INTEGER_TOL).iter().map(|&(v, k)| (v.round() as i64, k)).collect();
    ensure(ms == expected, || format!("{name}: multiset {ms:?}"))?;
    let obs = cosine_obstruction(&p, &base_and_neighbors(r.graph(), 0), true).map_err(|e| e.to_string())?;
    ensure(obs.is_infeasible(), || format!("{name}: obstruction {obs:?}"))
}

fn criterion_7() -> Outcome {
    let cell = polytope_skeleton(Family::Cell24).unwrap();
    integer_multiset("24-cell", &cell, &[(2, 1), (1, 8), (0, 6), (-1, 8), (-2, 1)])?;
    let cubo = polytope_skeleton(Family::Cuboctahedron).unwrap();
    integer_multiset("cuboctahedron", &cubo, &[(2, 1), (1, 4), (0, 2), (-1, 4), (-2, 1)])?;
    let mut checked = 0;
    for f in [Family::Petersen, Family::Dodecahedron] {
        let g = cat(f, &[]);
        let arr = intersection_array(&g).map_err(|e| e.to_string())?;
        for (theta, r) in spectral_realizations(&g, DEFAULT_GROUPING_TOL).unwrap() {
            let predicted = cosine_sequence_recurrence(&arr, theta).map_err(|e| e.to_string())?;
            for base in 0..g.n() {
                let p = cosine_profile(&r, base).unwrap();
                let seq = p.sequence.as_ref().ok_or_else(|| format!("{f} θ={theta}: no cosine sequence"))?;
                let r2 = p.radius_squared();
                for (delta, (a, b)) in seq.iter().zip(&predicted).enumerate() {
                    ensure((a - b * r2).abs() <= RECURRENCE_TOL, || {
                        format!("{f} θ={theta} base {base} δ={delta}: {a} vs {}", b * r2)
                    })?;
                }
                checked += 1;
            }
        }
    }
    Ok(format!("multisets exact, both obstructions infeasible, {checked} recurrence profiles agree"))
}

fn criterion_8() -> Outcome {
    let g = cat(Family::CompleteBipartite, &[4, 4]);
    let s = eigendecompose(&g.adjacency_matrix(), DEFAULT_GROUPING_TOL).unwrap();
    let m = multiplicity_criteria(&s, 2).map_err(|e| e.to_string())?;
    ensure(m.balanced_forced && !m.rigid_forced, || format!("{m:?}"))?;
    Ok(format!("μ1 = {}, μ2 = {}: balanced forced, rigidity not forced", m.mu1, m.mu2))
}

fn criterion_9() -> Outcome {
    let rhombic = polytope_skeleton(Family::RhombicDodecahedron).unwrap();
    let aut = automorphism_group(rhombic.graph()).unwrap();
    let scaled = scale_orbits(&rhombic, &aut, &[1.0, 1.5]).map_err(|e| e.to_string())?;
    let report = rigidity_report(&scaled, &aut, SEED).map_err(|e| e.to_string())?;
    ensure(report.verdict == Verdict::FlexibleCertified, || format!("rhombic dodecahedron: {:?}", report.verdict))?;
    let mix = truncated_tetrahedron_mix(0.5).map_err(|e| e.to_string())?;
    let tt_aut = automorphism_group(mix.graph()).unwrap();
    ensure(matches!(extract_representation(&mix, &tt_aut, SYMMETRY_RESIDUAL_TOL), Ok(Extraction::Symmetric(_))), || {
        "mixed realization not Aut-symmetric".into()
    })?;
    let spectrum = eigendecompose(&mix.graph().adjacency_matrix(), DEFAULT_GROUPING_TOL).unwrap();
    let hits = nonzero_hits(&eigenspace_projections(&mix, &spectrum).unwrap(), mix.d());
    ensure(hits.len() == 2, || format!("{} nonzero hits", hits.len()))?;
    ensure(is_balanced(&mix, BALANCED_TOL).is_none(), || "mixed realization is balanced".into())?;
    Ok(format!(
        "rhombic dodecahedron flexible via {}, truncated tetrahedron hits θ = {:.0}, {:.0}",
        report.rule.map_or("-", |r| r.name()),
        hits[0].theta,
        hits[1].theta.abs()
    ))
}

/// The CLI invocations behind criteria 1 to 7.
const COMMANDS: &[&[&str]] = &[
    &["spectrum", "--catalog", "dodecahedron", "--format", "csv"],
    &["spectrum", "--catalog", "cell24", "--format", "json"],
    &["spectrum", "--catalog", "cycle:6", "--product", "cycle:6", "--format", "csv"],
    &["check", "--sweep"],
    &["metrics", "--catalog", "dodecahedron", "--index", "2"],
    &["metrics", "--deg", "8", "--relative-length", "1"],
    &["check", "--construction", "hexagonal-prism-antipodal"],
    &["check", "--construction", "c6-sign-torus"],
    &["rigidity", "--catalog", "cell24", "--coordinates"],
    &["check", "--catalog", "petersen", "--all"],
    &["orbitals", "--catalog", "dodecahedron", "--decompose", "--subspace-tol", "1e-6"],
    &["cosine", "--catalog", "cell24", "--coordinates", "--obstruction"],
    &["cosine", "--catalog", "petersen", "--index", "2", "--base", "3"],
    &["realize", "--catalog", "dodecahedron", "--index", "2", "--format", "obj"],
];

fn criterion_10() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_grt");
    for args in COMMANDS {
        let mut first: Option<Vec<u8>> = None;
        for _ in 0..DETERMINISM_RUNS {
            let out = Command::new(exe).args(*args).env_remove("GRT_SEED").output().map_err(|e| e.to_string())?;
            ensure(out.status.success(), || format!("{args:?} exited with {}", out.status))?;
            match &first {
                None => first = Some(out.stdout),
                Some(f) => ensure(*f == out.stdout, || format!("{args:?}: output differs between runs"))?,
            }
        }
    }
    Ok(format!("{} commands x {DETERMINISM_RUNS} runs byte-identical", COMMANDS.len()))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("spectra reproduction", criterion_1),
        ("spectral realizations are symmetric", criterion_2),
        ("metric formulas", criterion_3),
        ("balanced but not spectral", criterion_4),
        ("full local dimension forces rigidity", criterion_5),
        ("distance-transitive eigenspaces", criterion_6),
        ("cosine machinery", criterion_7),
        ("multiplicity criteria", criterion_8),
        ("flexibility witnesses", criterion_9),
        ("determinism", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
