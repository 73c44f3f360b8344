//! Dense symmetric eigendecomposition, eigenvalue grouping and subspace algebra.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::{dot, norm, Matrix};

/// Grouping tolerance for eigenvalues (matches rounding to 1e-5).
pub const DEFAULT_GROUPING_TOL: f64 = 1e-5;
/// Principal-angle tolerance for [`subspace_relation`].
pub const DEFAULT_SUBSPACE_TOL: f64 = 1e-7;

const MAX_SWEEPS: usize = 100;
const SYMMETRY_TOL: f64 = 1e-10;

/// One distinct eigenvalue with its orthonormal eigenbasis (columns).
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EigenGroup {
    pub value: f64,
    pub basis: Matrix,
}

impl EigenGroup {
    pub fn multiplicity(&self) -> usize {
        self.basis.cols()
    }

    pub fn subspace(&self) -> Subspace {
        Subspace { basis: self.basis.clone() }
    }
}

/// Eigenvalues grouped within a tolerance, sorted by value descending.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Spectrum {
    groups: Vec<EigenGroup>,
    tol: f64,
}

impl Spectrum {
    pub fn groups(&self) -> &[EigenGroup] {
        &self.groups
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Number of distinct eigenvalues.
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.groups.iter().map(EigenGroup::multiplicity).sum()
    }

    /// The group with 1-based `index` (1 = largest eigenvalue).
    pub fn by_index(&self, index: usize) -> Result<&EigenGroup> {
        if index == 0 || index > self.groups.len() {
            return Err(Error::IndexOutOfRange { index, len: self.groups.len() });
        }
        Ok(&self.groups[index - 1])
    }

    /// The group whose value lies within `tol` of `theta`.
    pub fn find(&self, theta: f64, tol: f64) -> Option<&EigenGroup> {
        self.groups.iter().find(|g| libm::fabs(g.value - theta) <= tol)
    }

    /// `(value, multiplicity)` pairs.
    pub fn summary(&self) -> Vec<(f64, usize)> {
        self.groups.iter().map(|g| (g.value, g.multiplicity())).collect()
    }
}

/// Full eigendecomposition of a symmetric matrix with eigenvalues merged when
/// consecutive sorted values differ by at most `tol`.
pub fn eigendecompose(matrix: &Matrix, tol: f64) -> Result<Spectrum> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument("grouping tolerance must be positive".into()));
    }
    let (values, vectors) = symmetric_eigen(matrix)?;
    let n = values.len();
    let mut groups = Vec::new();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && values[end - 1] - values[end] <= tol {
            end += 1;
        }
        let cols: Vec<usize> = (start..end).collect();
        let mut basis = vectors.select_columns(&cols);
        let rank = orthonormalize_in_place(&mut basis, 0.0);
        debug_assert_eq!(rank, cols.len());
        let value = values[start..end].iter().sum::<f64>() / (end - start) as f64;
        groups.push(EigenGroup { value, basis });
        start = end;
    }
    Ok(Spectrum { groups, tol })
}

/// Eigenvalues (descending) and matching orthonormal eigenvectors (columns),
/// by cyclic Jacobi rotations with a fixed sweep order.
pub fn symmetric_eigen(matrix: &Matrix) -> Result<(Vec<f64>, Matrix)> {
    if !matrix.is_square() {
        return Err(Error::DimensionMismatch { expected: matrix.rows(), found: matrix.cols() });
    }
    let scale = matrix.max_abs().max(1.0);
    let defect = matrix.symmetry_defect();
    if defect > SYMMETRY_TOL * scale {
        return Err(Error::Asymmetric { defect });
    }
    let n = matrix.rows();
    let mut a = matrix.clone();
    let mut v = Matrix::identity(n);
    let mut d: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    let mut b = d.clone();
    let mut z = vec![0.0; n];

    let mut converged = n <= 1;
    for sweep in 1..=MAX_SWEEPS {
        if converged {
            break;
        }
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += libm::fabs(a[(p, q)]);
            }
        }
        if off == 0.0 {
            converged = true;
            break;
        }
        let thresh = if sweep < 4 { 0.2 * off / (n * n) as f64 } else { 0.0 };
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let g = 100.0 * libm::fabs(apq);
                if sweep > 4
                    && libm::fabs(d[p]) + g == libm::fabs(d[p])
                    && libm::fabs(d[q]) + g == libm::fabs(d[q])
                {
                    a[(p, q)] = 0.0;
                } else if libm::fabs(apq) > thresh {
                    let h = d[q] - d[p];
                    let t = if libm::fabs(h) + g == libm::fabs(h) {
                        apq / h
                    } else {
                        let theta = 0.5 * h / apq;
                        let t = 1.0 / (libm::fabs(theta) + libm::sqrt(1.0 + theta * theta));
                        if theta < 0.0 {
                            -t
                        } else {
                            t
                        }
                    };
                    let c = 1.0 / libm::sqrt(1.0 + t * t);
                    let s = t * c;
                    let tau = s / (1.0 + c);
                    let h = t * apq;
                    z[p] -= h;
                    z[q] += h;
                    d[p] -= h;
                    d[q] += h;
                    a[(p, q)] = 0.0;
                    let rotate = |m: &mut Matrix, i: usize, j: usize, k: usize, l: usize| {
                        let g = m[(i, j)];
                        let h = m[(k, l)];
                        m[(i, j)] = g - s * (h + g * tau);
                        m[(k, l)] = h + s * (g - h * tau);
                    };
                    for j in 0..p {
                        rotate(&mut a, j, p, j, q);
                    }
                    for j in (p + 1)..q {
                        rotate(&mut a, p, j, j, q);
                    }
                    for j in (q + 1)..n {
                        rotate(&mut a, p, j, q, j);
                    }
                    for j in 0..n {
                        rotate(&mut v, j, p, j, q);
                    }
                }
            }
        }
        for p in 0..n {
            b[p] += z[p];
            d[p] = b[p];
            z[p] = 0.0;
        }
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[j].total_cmp(&d[i]).then(i.cmp(&j)));
    let values = order.iter().map(|&i| d[i]).collect();
    let vectors = v.select_columns(&order);
    Ok((values, vectors))
}

/// Modified Gram-Schmidt with one re-orthogonalization pass, in place.
///
/// Columns whose residual norm falls below `drop_tol` times their original norm
/// are removed. Returns the number of columns kept.
pub fn orthonormalize_in_place(m: &mut Matrix, drop_tol: f64) -> usize {
    let rows = m.rows();
    let mut kept: Vec<Vec<f64>> = Vec::with_capacity(m.cols());
    for j in 0..m.cols() {
        let mut col = m.column(j);
        let original = norm(&col);
        for _pass in 0..2 {
            for q in &kept {
                let c = dot(q, &col);
                for (x, y) in col.iter_mut().zip(q) {
                    *x -= c * y;
                }
            }
        }
        let r = norm(&col);
        if original == 0.0 || r <= drop_tol * original || r == 0.0 {
            continue;
        }
        col.iter_mut().for_each(|x| *x /= r);
        kept.push(col);
    }
    *m = Matrix::from_columns(rows, &kept);
    kept.len()
}

/// Singular values (descending) by one-sided Jacobi rotations on the columns.
pub fn singular_values(m: &Matrix) -> Vec<f64> {
    let mut work = if m.cols() > m.rows() { m.transpose() } else { m.clone() };
    let (rows, cols) = (work.rows(), work.cols());
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, 0.0);
                for i in 0..rows {
                    let (x, y) = (work[(i, p)], work[(i, q)]);
                    alpha += x * x;
                    beta += y * y;
                    gamma += x * y;
                }
                if gamma == 0.0 || libm::fabs(gamma) <= 1e-15 * libm::sqrt(alpha * beta) {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let sign = if zeta >= 0.0 { 1.0 } else { -1.0 };
                let t = sign / (libm::fabs(zeta) + libm::sqrt(1.0 + zeta * zeta));
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = c * t;
                for i in 0..rows {
                    let (x, y) = (work[(i, p)], work[(i, q)]);
                    work[(i, p)] = c * x - s * y;
                    work[(i, q)] = s * x + c * y;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = (0..cols).map(|j| norm(&work.column(j))).collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Number of singular values above `rel_tol` times the largest.
pub fn numerical_rank(m: &Matrix, rel_tol: f64) -> usize {
    let sv = singular_values(m);
    let top = sv.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * top).count()
}

/// Solves `a x = b` for symmetric positive definite `a` (columns of `b` at once).
pub fn cholesky_solve(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let n = a.rows();
    let mut l = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            if i == j {
                if s <= 0.0 {
                    return Err(Error::RankDeficient { rank: i, expected: n });
                }
                l[(i, i)] = libm::sqrt(s);
            } else {
                l[(i, j)] = s / l[(j, j)];
            }
        }
    }
    let mut x = b.clone();
    for c in 0..b.cols() {
        for i in 0..n {
            let mut s = x[(i, c)];
            for k in 0..i {
                s -= l[(i, k)] * x[(k, c)];
            }
            x[(i, c)] = s / l[(i, i)];
        }
        for i in (0..n).rev() {
            let mut s = x[(i, c)];
            for k in (i + 1)..n {
                s -= l[(k, i)] * x[(k, c)];
            }
            x[(i, c)] = s / l[(i, i)];
        }
    }
    Ok(x)
}

/// Laplacian eigenvalue `deg(G) - θ` of a regular graph.
pub fn laplacian_eigenvalue(g: &Graph, theta: f64) -> Result<f64> {
    let deg = g.regular_degree().ok_or(Error::NotRegular)?;
    Ok(deg as f64 - theta)
}

/// Linear subspace of ℝⁿ held by an orthonormal basis (columns).
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Subspace {
    basis: Matrix,
}

impl Subspace {
    /// Wraps a basis that must already be orthonormal within 1e-8.
    pub fn from_orthonormal(basis: Matrix) -> Result<Self> {
        let defect = basis.gram().sub(&Matrix::identity(basis.cols())).max_abs();
        if defect > 1e-8 {
            return Err(Error::InvalidArgument("subspace basis is not orthonormal".into()));
        }
        Ok(Subspace { basis })
    }

    /// Column span of an arbitrary matrix.
    pub fn span(m: &Matrix) -> Self {
        let mut basis = m.clone();
        orthonormalize_in_place(&mut basis, 1e-10);
        Subspace { basis }
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }

    /// Orthogonal projection of `x` onto the subspace.
    pub fn project(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.ambient() {
            return Err(Error::DimensionMismatch { expected: self.ambient(), found: x.len() });
        }
        let coeffs = self.basis.tmul_vec(x);
        Ok(self.basis.mul_vec(&coeffs))
    }

    /// Largest entry of `B - P·B` where `P` projects onto `self` and `B` spans `other`.
    fn containment_residual(&self, other: &Subspace) -> f64 {
        let coeffs = self.basis.tmul(&other.basis);
        other.basis.sub(&self.basis.mul(&coeffs)).max_abs()
    }
}

/// Free-function form of [`Subspace::project`].
pub fn project(u: &Subspace, x: &[f64]) -> Result<Vec<f64>> {
    u.project(x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum SubspaceRelation {
    Equal,
    /// First is a proper subspace of the second.
    Contained,
    /// Second is a proper subspace of the first.
    Contains,
    Orthogonal,
    /// Non-orthogonal with neither containing the other.
    Incomparable,
}

/// Classifies the relative position of two subspaces.
pub fn subspace_relation(u1: &Subspace, u2: &Subspace, tol: f64) -> Result<SubspaceRelation> {
    if u1.ambient() != u2.ambient() {
        return Err(Error::DimensionMismatch { expected: u1.ambient(), found: u2.ambient() });
    }
    let in_second = u2.containment_residual(u1) <= tol;
    let in_first = u1.containment_residual(u2) <= tol;
    Ok(match (in_second, in_first) {
        (true, true) => SubspaceRelation::Equal,
        (true, false) => SubspaceRelation::Contained,
        (false, true) => SubspaceRelation::Contains,
        (false, false) => {
            if u1.basis.tmul(&u2.basis).max_abs() <= tol {
                SubspaceRelation::Orthogonal
            } else {
                SubspaceRelation::Incomparable
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog, Family};

    fn spectrum_of(family: Family, params: &[usize]) -> Spectrum {
        let g = catalog(family, params).unwrap();
        eigendecompose(&g.adjacency_matrix(), DEFAULT_GROUPING_TOL).unwrap()
    }

    fn assert_spectrum(s: &Spectrum, expected: &[(f64, usize)]) {
        let got = s.summary();
        assert_eq!(got.len(), expected.len(), "{got:?}");
        for ((v, m), (ev, em)) in got.iter().zip(expected) {
            assert!((v - ev).abs() < 1e-8, "{v} vs {ev}");
            assert_eq!(m, em);
        }
    }

    #[test]
    fn dodecahedron_spectrum() {
        let r5 = 5f64.sqrt();
        assert_spectrum(
            &spectrum_of(Family::Dodecahedron, &[]),
            &[(3.0, 1), (r5, 3), (1.0, 5), (0.0, 4), (-2.0, 4), (-r5, 3)],
        );
    }

    #[test]
    fn hexagonal_prism_spectrum() {
        assert_spectrum(
            &spectrum_of(Family::Prism, &[6]),
            &[(3.0, 1), (2.0, 2), (1.0, 1), (0.0, 4), (-1.0, 1), (-2.0, 2), (-3.0, 1)],
        );
    }

    #[test]
    fn k33_spectrum() {
        assert_spectrum(&spectrum_of(Family::CompleteBipartite, &[3, 3]), &[(3.0, 1), (0.0, 4), (-3.0, 1)]);
    }

    #[test]
    fn single_vertex() {
        let s = eigendecompose(&Matrix::zeros(1, 1), DEFAULT_GROUPING_TOL).unwrap();
        assert_eq!(s.summary(), vec![(0.0, 1)]);
        assert_eq!(s.groups()[0].basis, Matrix::identity(1));
    }

    #[test]
    fn asymmetric_rejected() {
        let m = Matrix::from_rows(&[[0.0, 1.0], [0.0, 0.0]]).unwrap();
        assert!(matches!(eigendecompose(&m, 1e-5), Err(Error::Asymmetric { .. })));
    }

    #[test]
    fn reconstruction_and_orthogonality() {
        let g = catalog(Family::Cell24, &[]).unwrap();
        let a = g.adjacency_matrix();
        let s = eigendecompose(&a, DEFAULT_GROUPING_TOL).unwrap();
        assert_eq!(s.dimension(), 24);
        let mut rebuilt = Matrix::zeros(24, 24);
        for grp in s.groups() {
            let b = &grp.basis;
            rebuilt = rebuilt.add(&b.mul(&b.transpose()).scaled(grp.value));
            assert!(b.gram().sub(&Matrix::identity(b.cols())).max_abs() < 1e-8);
            assert!(a.mul(b).sub(&b.scaled(grp.value)).max_abs() < 1e-6);
        }
        assert!(rebuilt.sub(&a).max_abs() < 1e-6);
        for (i, g1) in s.groups().iter().enumerate() {
            for g2 in &s.groups()[i + 1..] {
                assert!(g1.basis.tmul(&g2.basis).max_abs() < 1e-8);
            }
        }
    }

    #[test]
    fn laplacian_relation() {
        let g = catalog(Family::Dodecahedron, &[]).unwrap();
        let r5 = 5f64.sqrt();
        assert!((laplacian_eigenvalue(&g, r5).unwrap() - (3.0 - r5)).abs() < 1e-15);
        assert_eq!(laplacian_eigenvalue(&g, 3.0).unwrap(), 0.0);
        let cell = catalog(Family::Cell24, &[]).unwrap();
        assert_eq!(laplacian_eigenvalue(&cell, 4.0).unwrap(), 4.0);
        let rd = catalog(Family::RhombicDodecahedron, &[]).unwrap();
        assert_eq!(laplacian_eigenvalue(&rd, 1.0), Err(Error::NotRegular));
    }

    fn axis(n: usize, k: usize) -> Subspace {
        let mut m = Matrix::zeros(n, 1);
        m[(k, 0)] = 1.0;
        Subspace::from_orthonormal(m).unwrap()
    }

    #[test]
    fn relations_of_small_subspaces() {
        let e1 = axis(3, 0);
        let e2 = axis(3, 1);
        let plane = Subspace::span(&Matrix::from_rows(&[[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]]).unwrap());
        let diag = Subspace::span(&Matrix::from_rows(&[[1.0], [0.0], [1.0]]).unwrap());
        let tol = DEFAULT_SUBSPACE_TOL;
        assert_eq!(subspace_relation(&e1, &e1, tol).unwrap(), SubspaceRelation::Equal);
        assert_eq!(subspace_relation(&e1, &e2, tol).unwrap(), SubspaceRelation::Orthogonal);
        assert_eq!(subspace_relation(&e1, &plane, tol).unwrap(), SubspaceRelation::Contained);
        assert_eq!(subspace_relation(&plane, &e1, tol).unwrap(), SubspaceRelation::Contains);
        assert_eq!(subspace_relation(&diag, &plane, tol).unwrap(), SubspaceRelation::Incomparable);
        assert!(subspace_relation(&e1, &axis(4, 0), tol).is_err());
    }

    #[test]
    fn projection_idempotent_and_annihilating() {
        let plane = Subspace::span(&Matrix::from_rows(&[[1.0, 1.0], [0.0, 1.0], [0.0, 0.0]]).unwrap());
        let x = [0.3, -2.0, 0.0];
        let p = plane.project(&x).unwrap();
        assert!(p.iter().zip(&x).all(|(a, b)| (a - b).abs() < 1e-10));
        let z = plane.project(&[0.0, 0.0, 5.0]).unwrap();
        assert!(z.iter().all(|v| v.abs() < 1e-10));
        assert!(plane.project(&[1.0]).is_err());
    }

    #[test]
    fn singular_values_of_known_matrix() {
        let m = Matrix::from_rows(&[[3.0, 0.0], [0.0, -2.0], [0.0, 0.0]]).unwrap();
        let sv = singular_values(&m);
        assert!((sv[0] - 3.0).abs() < 1e-14 && (sv[1] - 2.0).abs() < 1e-14);
        let flat = Matrix::from_rows(&[[1.0, 2.0], [2.0, 4.0]]).unwrap();
        assert_eq!(numerical_rank(&flat, 1e-8), 1);
        assert_eq!(numerical_rank(&Matrix::from_rows(&[[1.0, 2.0, 3.0]]).unwrap(), 1e-8), 1);
    }

    #[test]
    fn cholesky_solves() {
        let a = Matrix::from_rows(&[[4.0, 1.0], [1.0, 3.0]]).unwrap();
        let b = Matrix::from_rows(&[[1.0], [2.0]]).unwrap();
        let x = cholesky_solve(&a, &b).unwrap();
        assert!(a.mul(&x).sub(&b).max_abs() < 1e-14);
    }
}
