//! Explicit realizations used as worked examples.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::catalog::{catalog, polytope_coordinates, Family};
use crate::error::{Error, Result};
use crate::graph::{cartesian_product, Graph};
use crate::matrix::Matrix;
use crate::perm::{Perm, PermGroup};
use crate::realization::{Realization, Representation};

/// Skeleton of a polytope family at its standard coordinates.
pub fn polytope_skeleton(family: Family) -> Result<Realization> {
    let coords = polytope_coordinates(family)
        .ok_or_else(|| Error::InvalidArgument(alloc::format!("{family} has no coordinates")))?;
    let g = catalog(family, &[])?;
    Realization::new(g, coords)
}

/// C4 with `v_0 = (a, b)`, `v_1 = (−a, b)`, `v_2 = (−a, −b)`, `v_3 = (a, −b)`.
pub fn c4_rectangle(a: f64, b: f64) -> Realization {
    let m = Matrix::from_rows(&[[a, b], [-a, b], [-a, -b], [a, -b]]).unwrap();
    Realization::new(catalog(Family::Cycle, &[4]).unwrap(), m).expect("nonzero sides")
}

/// C4 with `v_0 = (a, 0)`, `v_1 = (0, b)`, `v_2 = (−a, 0)`, `v_3 = (0, −b)`.
pub fn c4_rhombus(a: f64, b: f64) -> Realization {
    let m = Matrix::from_rows(&[[a, 0.0], [0.0, b], [-a, 0.0], [0.0, -b]]).unwrap();
    Realization::new(catalog(Family::Cycle, &[4]).unwrap(), m).expect("nonzero diagonals")
}

/// Hexagonal prism with the top hexagon regular and each bottom vertex antipodal
/// to its partner: `v_{i+6} = −v_i`. This is 0-balanced in the plane.
pub fn hexagonal_prism_antipodal() -> Realization {
    let g = catalog(Family::Prism, &[6]).unwrap();
    let mut rows: Vec<[f64; 2]> = (0..6)
        .map(|i| {
            let t = PI * i as f64 / 3.0;
            [libm::cos(t), libm::sin(t)]
        })
        .collect();
    for i in 0..6 {
        rows.push([-rows[i][0], -rows[i][1]]);
    }
    Realization::new(g, Matrix::from_rows(&rows).unwrap()).unwrap()
}

/// C6 × C6 with vertex `6a + b` at `((−1)^a, (−1)^b)`.
pub fn c6_sign_torus() -> Realization {
    let c6 = catalog(Family::Cycle, &[6]).unwrap();
    let g = cartesian_product(&c6, &c6);
    let sign = |k: usize| if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let m = Matrix::from_fn(36, 2, |v, j| if j == 0 { sign(v / 6) } else { sign(v % 6) });
    Realization::new(g, m).unwrap()
}

/// `C_n`, its rotation group `⟨i ↦ i+1⟩` and the representation by rotation through `2π/n`.
pub fn cycle_rotation_representation(n: usize) -> (Graph, PermGroup, Representation) {
    let g = catalog(Family::Cycle, &[n]).unwrap();
    let group = PermGroup::new(n, vec![Perm::rotation(n, 1)]).unwrap();
    let t = 2.0 * PI / n as f64;
    let (c, s) = (libm::cos(t), libm::sin(t));
    let rot = Matrix::from_rows(&[[c, -s], [s, c]]).unwrap();
    let rep = Representation::new(&group, vec![rot]).unwrap();
    (g, group, rep)
}

/// Truncated tetrahedron realized by the θ = 2 eigenspace (3 columns) next to the
/// θ = 0 eigenspace scaled by `weight` (2 columns). Symmetric under Aut(G) but not
/// balanced for any `weight != 0`.
pub fn truncated_tetrahedron_mix(weight: f64) -> Result<Realization> {
    if weight == 0.0 || !weight.is_finite() {
        return Err(Error::InvalidArgument("mix weight must be finite and nonzero".into()));
    }
    let g = catalog(Family::TruncatedTetrahedron, &[])?;
    let spectrum = crate::linalg::eigendecompose(&g.adjacency_matrix(), crate::linalg::DEFAULT_GROUPING_TOL)?;
    let pick = |theta: f64| {
        spectrum
            .find(theta, 1e-6)
            .map(|e| e.basis.clone())
            .ok_or_else(|| Error::CrossCheckFailed(alloc::format!("no eigenvalue {theta}")))
    };
    let m = pick(2.0)?.hcat(&pick(0.0)?.scaled(weight));
    Realization::new(g, m)
}
