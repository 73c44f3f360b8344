//! Realizations (arrangement matrices), balancedness, symmetry and irreducibility.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{
    cholesky_solve, eigendecompose, singular_values, subspace_relation, EigenGroup, Subspace,
    SubspaceRelation, DEFAULT_GROUPING_TOL,
};
use crate::matrix::Matrix;
use crate::perm::{Perm, PermGroup, DEFAULT_ENUMERATION_CAP};
use crate::rng::SplitMix64;
use crate::symmetry::vertex_orbits;

/// Relative singular-value threshold for the full-dimension invariant.
pub const RANK_TOL: f64 = 1e-8;
/// Tolerance of the scalar-matrix test in [`irreducibility_test`].
pub const SCALAR_TOL: f64 = 1e-6;
/// Default number of Reynolds samples.
pub const DEFAULT_SAMPLES: usize = 3;

const WORD_LENGTH: usize = 32;
const WORD_COUNT: usize = 64;
const SEED_CONSISTENCY_TOL: f64 = 1e-7;

/// A graph together with an `n × d` arrangement matrix of full column rank.
#[derive(Clone, Debug, PartialEq)]
pub struct Realization {
    graph: Graph,
    matrix: Matrix,
}

impl Realization {
    /// Rejects shape mismatches and rank below `d`. Zero rows are fine.
    pub fn new(graph: Graph, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != graph.n() {
            return Err(Error::DimensionMismatch { expected: graph.n(), found: matrix.rows() });
        }
        let d = matrix.cols();
        if d == 0 {
            return Err(Error::RankDeficient { rank: 0, expected: 0 });
        }
        let sv = singular_values(&matrix);
        let top = sv[0];
        let rank = if top == 0.0 { 0 } else { sv.iter().filter(|&&s| s > RANK_TOL * top).count() };
        if rank < d {
            return Err(Error::RankDeficient { rank, expected: d });
        }
        Ok(Realization { graph, matrix })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn d(&self) -> usize {
        self.matrix.cols()
    }

    /// Position `v_i`.
    pub fn position(&self, i: usize) -> &[f64] {
        self.matrix.row(i)
    }

    /// Column span of the arrangement matrix.
    pub fn arrangement_space(&self) -> Subspace {
        Subspace::span(&self.matrix)
    }

    /// `α·M`.
    pub fn scaled(&self, alpha: f64) -> Result<Self> {
        Realization::new(self.graph.clone(), self.matrix.scaled(alpha))
    }

    /// Applies the linear map `t` (d' × d) to every position.
    pub fn transformed(&self, t: &Matrix) -> Result<Self> {
        if t.cols() != self.d() {
            return Err(Error::DimensionMismatch { expected: self.d(), found: t.cols() });
        }
        Realization::new(self.graph.clone(), self.matrix.mul(&t.transpose()))
    }

    /// Positions `(v_i, w_i)`.
    pub fn concat(&self, other: &Realization) -> Result<Self> {
        if self.graph != other.graph {
            return Err(Error::GraphMismatch);
        }
        Realization::new(self.graph.clone(), self.matrix.hcat(&other.matrix))
    }

    /// `Σ_{j ∈ N(i)} v_j` for every `i`, i.e. `AM`.
    pub fn neighbor_sums(&self) -> Matrix {
        let mut out = Matrix::zeros(self.n(), self.d());
        for i in 0..self.n() {
            for &j in self.graph.neighbors(i) {
                for (o, x) in out.row_mut(i).iter_mut().zip(self.matrix.row(j)) {
                    *o += x;
                }
            }
        }
        out
    }
}

fn realization_from_group(g: &Graph, group: &EigenGroup) -> Realization {
    Realization { graph: g.clone(), matrix: group.basis.clone() }
}

/// The θ-spectral realization for the `index`-th largest distinct eigenvalue.
///
/// Columns form an orthonormal basis of the eigenspace, so the result is normalized.
pub fn spectral_realization(g: &Graph, index: usize, tol: f64) -> Result<Realization> {
    let spectrum = eigendecompose(&g.adjacency_matrix(), tol)?;
    Ok(realization_from_group(g, spectrum.by_index(index)?))
}

/// All spectral realizations with their eigenvalues, largest first.
pub fn spectral_realizations(g: &Graph, tol: f64) -> Result<Vec<(f64, Realization)>> {
    let spectrum = eigendecompose(&g.adjacency_matrix(), tol)?;
    Ok(spectrum.groups().iter().map(|grp| (grp.value, realization_from_group(g, grp))).collect())
}

/// `θ` when `‖AM − θM‖_max ≤ tol·‖M‖_max`, with `θ` the Rayleigh estimate.
pub fn is_balanced(r: &Realization, tol: f64) -> Option<f64> {
    let am = r.neighbor_sums();
    let m = &r.matrix;
    let num: f64 = m.as_slice().iter().zip(am.as_slice()).map(|(a, b)| a * b).sum();
    let den: f64 = m.as_slice().iter().map(|a| a * a).sum();
    let theta = num / den;
    let residual = am.sub(&m.scaled(theta)).max_abs();
    (residual <= tol * m.max_abs()).then_some(theta)
}

/// `θ` when `r` is θ-balanced and `d` equals the multiplicity of `θ`.
pub fn is_spectral(r: &Realization, tol: f64) -> Option<f64> {
    let theta = is_balanced(r, tol)?;
    let spectrum = eigendecompose(&r.graph.adjacency_matrix(), DEFAULT_GROUPING_TOL).ok()?;
    let group = spectrum.find(theta, DEFAULT_GROUPING_TOL.max(tol))?;
    (group.multiplicity() == r.d()).then_some(theta)
}

/// Equivalent realization with orthonormal columns.
pub fn normalize(r: &Realization) -> Result<Realization> {
    let mut basis = r.matrix.clone();
    let rank = crate::linalg::orthonormalize_in_place(&mut basis, RANK_TOL);
    if rank < r.d() {
        return Err(Error::RankDeficient { rank, expected: r.d() });
    }
    Ok(Realization { graph: r.graph.clone(), matrix: basis })
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Sphericity {
    /// `MᵀM = I`.
    Normalized,
    /// `MᵀM = αI` with `α ≠ 1`.
    Spherical(f64),
    Neither,
}

/// Compares `MᵀM` with `αI`, `α = tr(MᵀM)/d`, entrywise within `tol·max(α, 1)`.
pub fn sphericity(r: &Realization, tol: f64) -> Sphericity {
    let gram = r.matrix.gram();
    let alpha = gram.trace() / r.d() as f64;
    let defect = gram.sub(&Matrix::identity(r.d()).scaled(alpha)).max_abs();
    if defect > tol * alpha.max(1.0) {
        Sphericity::Neither
    } else if libm::fabs(alpha - 1.0) <= tol {
        Sphericity::Normalized
    } else {
        Sphericity::Spherical(alpha)
    }
}

/// Whether the arrangement spaces agree.
///
/// When both inputs are normalized, also recovers the orthogonal `T` with
/// `v_i = T w_i` and checks `‖M₁ − M₂Tᵀ‖_max ≤ tol`.
pub fn equivalent(r1: &Realization, r2: &Realization, tol: f64) -> Result<bool> {
    if r1.graph != r2.graph {
        return Err(Error::GraphMismatch);
    }
    if r1.d() != r2.d() {
        return Ok(false);
    }
    let relation = subspace_relation(&r1.arrangement_space(), &r2.arrangement_space(), tol)?;
    if relation != SubspaceRelation::Equal {
        return Ok(false);
    }
    if sphericity(r1, tol) == Sphericity::Normalized && sphericity(r2, tol) == Sphericity::Normalized {
        return Ok(orthogonal_alignment(r1, r2, tol).is_some());
    }
    Ok(true)
}

/// Orthogonal `T` with `r1 = T·r2` for normalized, equivalent inputs.
pub fn orthogonal_alignment(r1: &Realization, r2: &Realization, tol: f64) -> Option<Matrix> {
    if r1.d() != r2.d() || r1.n() != r2.n() {
        return None;
    }
    // M₁ = M₂ Tᵀ  ⇒  Tᵀ = M₂ᵀ M₁
    let t_transpose = r2.matrix.tmul(&r1.matrix);
    let residual = r1.matrix.sub(&r2.matrix.mul(&t_transpose)).max_abs();
    let orth = t_transpose.gram().sub(&Matrix::identity(r1.d())).max_abs();
    (residual <= tol && orth <= tol).then(|| t_transpose.transpose())
}

/// Orthogonal maps `T_σ` for the generators of a permutation group.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    generators: Vec<Perm>,
    maps: Vec<Matrix>,
}

impl Representation {
    /// Checks one square `d × d` matrix per generator, each orthogonal within 1e-8.
    pub fn new(group: &PermGroup, maps: Vec<Matrix>) -> Result<Self> {
        let generators = group.generators().to_vec();
        if maps.len() != generators.len() {
            return Err(Error::DimensionMismatch { expected: generators.len(), found: maps.len() });
        }
        let d = maps.first().map_or(0, Matrix::rows);
        for (k, t) in maps.iter().enumerate() {
            if t.rows() != d || t.cols() != d {
                return Err(Error::DimensionMismatch { expected: d, found: t.cols() });
            }
            let defect = t.gram().sub(&Matrix::identity(d)).max_abs();
            if defect > 1e-8 {
                return Err(Error::NotSymmetric { generator: k, residual: defect });
            }
        }
        Ok(Representation { generators, maps })
    }

    pub fn d(&self) -> usize {
        self.maps.first().map_or(0, Matrix::rows)
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// Restriction to an invariant subspace given by orthonormal columns `basis`.
    fn restrict(&self, basis: &Matrix) -> Representation {
        let maps = self.maps.iter().map(|t| basis.tmul(&t.mul(basis))).collect();
        Representation { generators: self.generators.clone(), maps }
    }
}

/// Outcome of [`extract_representation`].
#[derive(Clone, Debug, PartialEq)]
pub enum Extraction {
    Symmetric(Representation),
    /// Generator `generator` is not induced by an orthogonal map.
    Violation { generator: usize, residual: f64, orthogonality_defect: f64 },
}

impl Extraction {
    pub fn representation(self) -> Result<Representation> {
        match self {
            Extraction::Symmetric(rep) => Ok(rep),
            Extraction::Violation { generator, residual, orthogonality_defect } => {
                Err(Error::NotSymmetric { generator, residual: residual.max(orthogonality_defect) })
            }
        }
    }
}

/// Solves `M Tᵀ = Π_σ M` once per element; holds `(MᵀM)⁻¹Mᵀ`.
struct Intertwiner<'a> {
    m: &'a Matrix,
    pseudo: Matrix,
}

impl<'a> Intertwiner<'a> {
    fn new(m: &'a Matrix) -> Result<Self> {
        let pseudo = cholesky_solve(&m.gram(), &m.transpose())?;
        Ok(Intertwiner { m, pseudo })
    }

    /// Least-squares `T_σ` (not transposed).
    fn map(&self, sigma: &Perm) -> Matrix {
        let permuted = self.m.permute_rows(sigma.images());
        self.pseudo.mul(&permuted).transpose()
    }

    fn residual(&self, sigma: &Perm, t: &Matrix) -> f64 {
        let permuted = self.m.permute_rows(sigma.images());
        permuted.sub(&self.m.mul(&t.transpose())).max_abs()
    }
}

/// Recovers `T_σ` for every generator and verifies `T_σ v_i = v_{σ(i)}` with `T_σ` orthogonal.
///
/// Both checks use `tol·max(1, ‖M‖_max)`.
pub fn extract_representation(r: &Realization, group: &PermGroup, tol: f64) -> Result<Extraction> {
    if group.degree() != r.n() {
        return Err(Error::DimensionMismatch { expected: r.n(), found: group.degree() });
    }
    let solver = Intertwiner::new(&r.matrix)?;
    let scale = r.matrix.max_abs().max(1.0);
    let d = r.d();
    let mut maps = Vec::with_capacity(group.generators().len());
    for (k, sigma) in group.generators().iter().enumerate() {
        let t = solver.map(sigma);
        let residual = solver.residual(sigma, &t);
        let orthogonality_defect = t.gram().sub(&Matrix::identity(d)).max_abs();
        if residual > tol * scale || orthogonality_defect > tol {
            return Ok(Extraction::Violation { generator: k, residual, orthogonality_defect });
        }
        maps.push(t);
    }
    Ok(Extraction::Symmetric(Representation { generators: group.generators().to_vec(), maps }))
}

/// Per generator: the raw residual `max|Π_σ M − M T_σᵀ|` and `max|T_σᵀT_σ − I|`.
pub fn symmetry_residuals(r: &Realization, group: &PermGroup) -> Result<Vec<(f64, f64)>> {
    if group.degree() != r.n() {
        return Err(Error::DimensionMismatch { expected: r.n(), found: group.degree() });
    }
    let solver = Intertwiner::new(&r.matrix)?;
    let id = Matrix::identity(r.d());
    Ok(group
        .generators()
        .iter()
        .map(|sigma| {
            let t = solver.map(sigma);
            (solver.residual(sigma, &t), t.gram().sub(&id).max_abs())
        })
        .collect())
}

/// Least-squares `T_σ` with `M T_σᵀ ≈ Π_σ M` for any permutation `σ`; no verification.
pub fn induced_map(r: &Realization, sigma: &Perm) -> Result<Matrix> {
    if sigma.degree() != r.n() {
        return Err(Error::DimensionMismatch { expected: r.n(), found: sigma.degree() });
    }
    Ok(Intertwiner::new(&r.matrix)?.map(sigma))
}

#[derive(Clone, Debug, PartialEq)]
pub enum Irreducibility {
    Irreducible,
    /// Orthonormal columns spanning a proper invariant subspace of `ℝ^d`.
    Reducible { witness: Matrix },
}

fn random_symmetric(d: usize, rng: &mut SplitMix64) -> Matrix {
    let mut s = Matrix::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            let x = rng.uniform(-1.0, 1.0);
            s[(i, j)] = x;
            s[(j, i)] = x;
        }
    }
    s
}

/// Reynolds averages `(1/|Σ|) Σ_σ T_σ S₀ T_σᵀ` for each sample `S₀`.
fn reynolds(r: &Realization, group: &PermGroup, rep: &Representation, seeds: &[Matrix], rng: &mut SplitMix64) -> Result<Vec<Matrix>> {
    let d = r.d();
    let mut sums = vec![Matrix::zeros(d, d); seeds.len()];
    let mut accumulate = |t: &Matrix| {
        for (sum, s0) in sums.iter_mut().zip(seeds) {
            *sum = sum.add(&t.mul(s0).mul(&t.transpose()));
        }
    };
    let count;
    if group.order() <= DEFAULT_ENUMERATION_CAP {
        let solver = Intertwiner::new(&r.matrix)?;
        let mut k = 0u64;
        group.for_each_element(DEFAULT_ENUMERATION_CAP, |sigma| {
            accumulate(&solver.map(sigma));
            k += 1;
        })?;
        count = k as f64;
    } else {
        let gens = rep.maps();
        for _ in 0..WORD_COUNT {
            let mut t = Matrix::identity(d);
            for _ in 0..WORD_LENGTH {
                t = gens[rng.below(gens.len())].mul(&t);
            }
            accumulate(&t);
        }
        count = WORD_COUNT as f64;
    }
    Ok(sums.into_iter().map(|s| s.scaled(1.0 / count)).collect())
}

/// Reynolds test for irreducibility of a Σ-realization.
///
/// Draws `samples` random symmetric `S₀` (at least one) from `seed`; the realization is
/// irreducible when every average `S` satisfies `‖S − (tr S/d)I‖_max ≤ 1e-6·‖S‖_max`.
/// Groups above the enumeration cap are averaged over random generator words.
pub fn irreducibility_test(r: &Realization, group: &PermGroup, samples: usize, seed: u64) -> Result<Irreducibility> {
    let rep = extract_representation(r, group, 1e-6)?.representation()?;
    let d = r.d();
    if d == 1 {
        return Ok(Irreducibility::Irreducible);
    }
    let mut rng = SplitMix64::new(seed);
    let seeds: Vec<Matrix> = (0..samples.max(1)).map(|_| random_symmetric(d, &mut rng)).collect();
    for s in reynolds(r, group, &rep, &seeds, &mut rng)? {
        let alpha = s.trace() / d as f64;
        let scale = s.max_abs();
        if s.sub(&Matrix::identity(d).scaled(alpha)).max_abs() > SCALAR_TOL * scale {
            let spectrum = eigendecompose(&s, SCALAR_TOL * scale)?;
            let witness = spectrum.groups()[0].basis.clone();
            return Ok(Irreducibility::Reducible { witness });
        }
    }
    Ok(Irreducibility::Irreducible)
}

/// Splits a Σ-realization into irreducible pieces by repeated Reynolds tests.
///
/// Each piece is `M·B` for an orthonormal basis `B` of an invariant subspace; the
/// bases together form an orthogonal matrix, so concatenating the pieces gives a
/// realization equivalent to `r`.
pub fn irreducible_components(r: &Realization, group: &PermGroup, seed: u64) -> Result<Vec<Realization>> {
    let rep = extract_representation(r, group, 1e-6)?.representation()?;
    let mut out = Vec::new();
    let mut pending = vec![Matrix::identity(r.d())];
    let mut round = 0u64;
    while let Some(basis) = pending.pop() {
        let piece = Realization::new(r.graph.clone(), r.matrix.mul(&basis))?;
        if basis.cols() == 1 {
            out.push((basis, piece));
            continue;
        }
        let sub_rep = rep.restrict(&basis);
        let mut rng = SplitMix64::new(seed.wrapping_add(round));
        round += 1;
        let k = basis.cols();
        let seeds: Vec<Matrix> = (0..DEFAULT_SAMPLES).map(|_| random_symmetric(k, &mut rng)).collect();
        let mut split = None;
        for s in reynolds(&piece, group, &sub_rep, &seeds, &mut rng)? {
            let alpha = s.trace() / k as f64;
            let scale = s.max_abs();
            if s.sub(&Matrix::identity(k).scaled(alpha)).max_abs() > SCALAR_TOL * scale {
                split = Some(eigendecompose(&s, SCALAR_TOL * scale)?);
                break;
            }
        }
        match split {
            None => out.push((basis, piece)),
            Some(spectrum) => {
                for grp in spectrum.groups().iter().rev() {
                    pending.push(basis.mul(&grp.basis));
                }
            }
        }
    }
    Ok(out.into_iter().map(|(_, piece)| piece).collect())
}

/// `u = Mx`, i.e. `u_i = ⟨x, v_i⟩`.
pub fn eigenvector_from_realization(r: &Realization, x: &[f64]) -> Result<Vec<f64>> {
    if x.len() != r.d() {
        return Err(Error::DimensionMismatch { expected: r.d(), found: x.len() });
    }
    Ok(r.matrix.mul_vec(x))
}

/// `v_i = T_σ(seed_point)` for group elements with `σ(base) = i`.
///
/// Elements are generator products found by breadth-first search from `base`.
/// Fails with [`Error::InfeasibleSeed`] when some `T_g v_x` differs from
/// `v_{g(x)}` by more than 1e-7, which happens exactly when the stabilizer of
/// `base` moves `seed_point`.
pub fn build_from_representation(
    g: &Graph,
    group: &PermGroup,
    rep: &Representation,
    seed_point: &[f64],
    base: usize,
) -> Result<Realization> {
    let n = g.n();
    if group.degree() != n {
        return Err(Error::DimensionMismatch { expected: n, found: group.degree() });
    }
    if base >= n {
        return Err(Error::IndexOutOfRange { index: base, len: n });
    }
    if rep.generators() != group.generators() {
        return Err(Error::InvalidArgument("representation belongs to a different generating set".into()));
    }
    let d = rep.d();
    if seed_point.len() != d {
        return Err(Error::DimensionMismatch { expected: d, found: seed_point.len() });
    }
    let mut positions: Vec<Option<Vec<f64>>> = vec![None; n];
    positions[base] = Some(seed_point.to_vec());
    let mut queue = alloc::collections::VecDeque::from([base]);
    while let Some(x) = queue.pop_front() {
        for (sigma, t) in group.generators().iter().zip(rep.maps()) {
            let y = sigma.apply(x);
            if positions[y].is_none() {
                positions[y] = Some(t.mul_vec(positions[x].as_ref().unwrap()));
                queue.push_back(y);
            }
        }
    }
    if positions.iter().any(Option::is_none) {
        return Err(Error::NotTransitive("vertices"));
    }
    let rows: Vec<Vec<f64>> = positions.into_iter().map(Option::unwrap).collect();
    let scale = crate::matrix::norm(seed_point).max(1.0);
    let mut worst: f64 = 0.0;
    for (x, vx) in rows.iter().enumerate() {
        for (sigma, t) in group.generators().iter().zip(rep.maps()) {
            let image = t.mul_vec(vx);
            let target = &rows[sigma.apply(x)];
            for (a, b) in image.iter().zip(target) {
                worst = worst.max(libm::fabs(a - b));
            }
        }
    }
    if worst > SEED_CONSISTENCY_TOL * scale {
        return Err(Error::InfeasibleSeed { residual: worst });
    }
    Realization::new(g.clone(), Matrix::from_rows(&rows)?)
}

/// Multiplies the positions in the `k`-th vertex orbit by `alphas[k]`.
///
/// Orbits are ordered by smallest vertex.
pub fn scale_orbits(r: &Realization, group: &PermGroup, alphas: &[f64]) -> Result<Realization> {
    let orbits = vertex_orbits(group);
    if alphas.len() != orbits.len() {
        return Err(Error::DimensionMismatch { expected: orbits.len(), found: alphas.len() });
    }
    if alphas.iter().all(|&a| a == 0.0) {
        return Err(Error::InvalidArgument("all orbit scales are zero".into()));
    }
    let mut m = r.matrix.clone();
    for (orbit, &alpha) in orbits.iter().zip(alphas) {
        for &i in orbit {
            m.row_mut(i).iter_mut().for_each(|x| *x *= alpha);
        }
    }
    Realization::new(r.graph.clone(), m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog, Family};
    use crate::constructions;
    use crate::symmetry::automorphism_group;

    fn c4() -> Graph {
        catalog(Family::Cycle, &[4]).unwrap()
    }

    #[test]
    fn dodecahedron_spectral_realization() {
        let g = catalog(Family::Dodecahedron, &[]).unwrap();
        let r = spectral_realization(&g, 2, DEFAULT_GROUPING_TOL).unwrap();
        assert_eq!(r.d(), 3);
        let theta = is_spectral(&r, 1e-8).unwrap();
        assert!((theta - 5f64.sqrt()).abs() < 1e-10);
        assert_eq!(sphericity(&r, 1e-8), Sphericity::Normalized);
        match sphericity(&r.scaled(2.0).unwrap(), 1e-8) {
            Sphericity::Spherical(a) => assert!((a - 4.0).abs() < 1e-10),
            other => panic!("{other:?}"),
        }
        assert!(matches!(spectral_realization(&g, 7, DEFAULT_GROUPING_TOL), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn perron_realization_is_constant() {
        let g = catalog(Family::Petersen, &[]).unwrap();
        let r = spectral_realization(&g, 1, DEFAULT_GROUPING_TOL).unwrap();
        assert_eq!(r.d(), 1);
        for i in 0..10 {
            assert!((r.position(i)[0].abs() - 1.0 / 10f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn c4_shapes() {
        let square = constructions::c4_rectangle(1.0, 1.0);
        let rhombus = constructions::c4_rhombus(1.0, 2.0);
        let rectangle = constructions::c4_rectangle(2.0, 1.0);
        assert_eq!(is_balanced(&square, 1e-12), Some(0.0));
        assert!(equivalent(&square, &rhombus, 1e-8).unwrap());
        assert_eq!(sphericity(&rectangle, 1e-8), Sphericity::Neither);
        let normalized = normalize(&rhombus).unwrap();
        let norms: Vec<f64> = (0..4).map(|i| crate::matrix::norm(normalized.position(i))).collect();
        assert!(norms.iter().all(|x| (x - norms[0]).abs() < 1e-12));
        assert_eq!(sphericity(&normalized, 1e-10), Sphericity::Normalized);
        let aut = automorphism_group(&c4()).unwrap();
        assert!(matches!(extract_representation(&square, &aut, 1e-8).unwrap(), Extraction::Symmetric(_)));
        assert!(matches!(extract_representation(&rectangle, &aut, 1e-8).unwrap(), Extraction::Violation { .. }));
    }

    #[test]
    fn constant_realization_has_trivial_representation() {
        let g = catalog(Family::Cycle, &[5]).unwrap();
        let r = Realization::new(g.clone(), Matrix::from_fn(5, 1, |_, _| 1.0)).unwrap();
        let aut = automorphism_group(&g).unwrap();
        let rep = extract_representation(&r, &aut, 1e-10).unwrap().representation().unwrap();
        for t in rep.maps() {
            assert!((t[(0, 0)] - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rank_is_enforced() {
        let g = c4();
        assert!(matches!(Realization::new(g.clone(), Matrix::zeros(4, 2)), Err(Error::RankDeficient { rank: 0, .. })));
        let collinear = Matrix::from_fn(4, 2, |i, j| (i as f64) * (j + 1) as f64);
        assert!(Realization::new(g, collinear).is_err());
    }

    #[test]
    fn equivalence_under_rotation_and_scaling() {
        let g = catalog(Family::Icosahedron, &[]).unwrap();
        let r = spectral_realization(&g, 2, DEFAULT_GROUPING_TOL).unwrap();
        let (c, s) = (0.6, 0.8);
        let rot = Matrix::from_rows(&[[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]).unwrap();
        let rotated = r.transformed(&rot).unwrap();
        assert!(equivalent(&r, &rotated, 1e-8).unwrap());
        let t = orthogonal_alignment(&rotated, &r, 1e-8).unwrap();
        assert!(t.sub(&rot).max_abs() < 1e-10);
        assert!(equivalent(&r, &r.scaled(-3.0).unwrap(), 1e-8).unwrap());
        let tt = catalog(Family::TruncatedTetrahedron, &[]).unwrap();
        let a = spectral_realization(&tt, 2, DEFAULT_GROUPING_TOL).unwrap();
        let b = spectral_realization(&tt, 3, DEFAULT_GROUPING_TOL).unwrap();
        assert!(!equivalent(&a, &b, 1e-8).unwrap());
        assert!(matches!(equivalent(&a, &r, 1e-8), Err(Error::GraphMismatch)));
    }

    #[test]
    fn irreducibility_of_spectral_and_concatenated() {
        let g = catalog(Family::Dodecahedron, &[]).unwrap();
        let aut = automorphism_group(&g).unwrap();
        let r2 = spectral_realization(&g, 2, DEFAULT_GROUPING_TOL).unwrap();
        assert_eq!(irreducibility_test(&r2, &aut, 3, 1).unwrap(), Irreducibility::Irreducible);
        let r3 = spectral_realization(&g, 3, DEFAULT_GROUPING_TOL).unwrap();
        let both = r2.concat(&r3).unwrap();
        match irreducibility_test(&both, &aut, 3, 1).unwrap() {
            Irreducibility::Reducible { witness } => {
                assert!(witness.cols() == 3 || witness.cols() == 5);
                // Coordinate-block witness: supported on one block only.
                let first_block: f64 = (0..3).flat_map(|i| (0..witness.cols()).map(move |j| (i, j))).map(|(i, j)| witness[(i, j)].abs()).sum();
                let second_block: f64 = (3..8).flat_map(|i| (0..witness.cols()).map(move |j| (i, j))).map(|(i, j)| witness[(i, j)].abs()).sum();
                assert!(first_block < 1e-8 || second_block < 1e-8);
            }
            other => panic!("{other:?}"),
        }
        let parts = irreducible_components(&both, &aut, 5).unwrap();
        assert_eq!(parts.len(), 2);
        let dims: Vec<usize> = parts.iter().map(Realization::d).collect();
        assert!(dims.contains(&3) && dims.contains(&5));
        for p in &parts {
            let reference = if p.d() == 3 { &r2 } else { &r3 };
            assert!(equivalent(p, reference, 1e-8).unwrap());
        }
        let joined = parts[0].concat(&parts[1]).unwrap();
        assert!(equivalent(&joined, &both, 1e-8).unwrap());
    }

    #[test]
    fn rhombus_splits_under_reflections() {
        let rhombus = constructions::c4_rhombus(1.0, 2.0);
        let reflections = PermGroup::new(
            4,
            vec![Perm::from_images(vec![0, 3, 2, 1]).unwrap(), Perm::from_images(vec![2, 1, 0, 3]).unwrap()],
        )
        .unwrap();
        let parts = irreducible_components(&rhombus, &reflections, 0).unwrap();
        assert_eq!(parts.len(), 2);
        for p in &parts {
            assert_eq!(p.d(), 1);
            let support: Vec<usize> = (0..4).filter(|&i| p.position(i)[0].abs() > 1e-9).collect();
            assert!(support == [0, 2] || support == [1, 3]);
        }
    }

    #[test]
    fn eigenvectors_from_positions() {
        let g = catalog(Family::Dodecahedron, &[]).unwrap();
        let r = spectral_realization(&g, 2, DEFAULT_GROUPING_TOL).unwrap();
        let u = eigenvector_from_realization(&r, &[1.0, 0.0, 0.0]).unwrap();
        let au = g.adjacency_matrix().mul_vec(&u);
        let s5 = 5f64.sqrt();
        assert!(au.iter().zip(&u).all(|(a, b)| (a - s5 * b).abs() < 1e-6));
        assert!(eigenvector_from_realization(&r, &[0.0; 3]).unwrap().iter().all(|&x| x == 0.0));
        assert!(eigenvector_from_realization(&r, &[1.0]).is_err());
    }

    #[test]
    fn regular_polygon_from_rotation() {
        let (g, group, rep) = constructions::cycle_rotation_representation(7);
        let r = build_from_representation(&g, &group, &rep, &[1.0, 0.0], 0).unwrap();
        for i in 0..7 {
            let angle = 2.0 * core::f64::consts::PI * i as f64 / 7.0;
            assert!((r.position(i)[0] - libm::cos(angle)).abs() < 1e-12);
            assert!((r.position(i)[1] - libm::sin(angle)).abs() < 1e-12);
        }
        assert!(matches!(
            build_from_representation(&g, &group, &rep, &[0.0, 0.0], 0),
            Err(Error::RankDeficient { .. })
        ));
    }

    #[test]
    fn dodecahedron_round_trip_through_representation() {
        let g = catalog(Family::Dodecahedron, &[]).unwrap();
        let aut = automorphism_group(&g).unwrap();
        let r = spectral_realization(&g, 2, DEFAULT_GROUPING_TOL).unwrap();
        let rep = extract_representation(&r, &aut, 1e-8).unwrap().representation().unwrap();
        let rebuilt = build_from_representation(&g, &aut, &rep, r.position(0), 0).unwrap();
        assert!(rebuilt.matrix().sub(r.matrix()).max_abs() < 1e-9);
        // A generic seed is moved by the vertex stabilizer.
        assert!(matches!(
            build_from_representation(&g, &aut, &rep, &[1.0, 0.3, -0.2], 0),
            Err(Error::InfeasibleSeed { .. })
        ));
    }

    #[test]
    fn orbit_scaling() {
        let r = constructions::polytope_skeleton(Family::RhombicDodecahedron).unwrap();
        let aut = automorphism_group(r.graph()).unwrap();
        assert_eq!(scale_orbits(&r, &aut, &[1.0, 1.0]).unwrap(), r);
        let deformed = scale_orbits(&r, &aut, &[1.0, 1.5]).unwrap();
        assert!(matches!(extract_representation(&deformed, &aut, 1e-8).unwrap(), Extraction::Symmetric(_)));
        assert!(scale_orbits(&r, &aut, &[0.0, 0.0]).is_err());
        assert!(scale_orbits(&r, &aut, &[1.0]).is_err());
    }
}
