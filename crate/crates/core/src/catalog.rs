//! Named example graphs with frozen vertex orderings.
//!
//! Orderings:
//! - `cycle(n)`: `i ~ i+1 mod n`.
//! - `complete(n)`: all pairs.
//! - `complete_bipartite(a, b)`: parts `0..a` and `a..a+b`.
//! - `complete_multipartite(p1, .., pk)`: consecutive index blocks per part.
//! - `prism(n)`: top cycle `0..n`, bottom cycle `n..2n`, rungs `i ~ i+n`.
//! - `petersen`: outer 5-cycle `0..5`, spokes `i ~ i+5`, inner pentagram `i+5 ~ (i+2 mod 5)+5`.
//! - polytope families (`dodecahedron`, `icosahedron`, `truncated_tetrahedron`,
//!   `cuboctahedron`, `rhombic_dodecahedron`, `cell24`): vertices are the rows of
//!   [`polytope_coordinates`] in order, edges join pairs at minimal positive distance.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Cycle,
    Complete,
    CompleteBipartite,
    CompleteMultipartite,
    Prism,
    Petersen,
    Dodecahedron,
    Icosahedron,
    TruncatedTetrahedron,
    Cuboctahedron,
    RhombicDodecahedron,
    Cell24,
}

impl Family {
    pub const ALL: [Family; 12] = [
        Family::Cycle,
        Family::Complete,
        Family::CompleteBipartite,
        Family::CompleteMultipartite,
        Family::Prism,
        Family::Petersen,
        Family::Dodecahedron,
        Family::Icosahedron,
        Family::TruncatedTetrahedron,
        Family::Cuboctahedron,
        Family::RhombicDodecahedron,
        Family::Cell24,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::CompleteBipartite => "complete_bipartite",
            Family::CompleteMultipartite => "complete_multipartite",
            Family::Prism => "prism",
            Family::Petersen => "petersen",
            Family::Dodecahedron => "dodecahedron",
            Family::Icosahedron => "icosahedron",
            Family::TruncatedTetrahedron => "truncated_tetrahedron",
            Family::Cuboctahedron => "cuboctahedron",
            Family::RhombicDodecahedron => "rhombic_dodecahedron",
            Family::Cell24 => "cell24",
        }
    }

    /// Human-readable parameter signature, e.g. `"n >= 3"`.
    pub fn parameters(self) -> &'static str {
        match self {
            Family::Cycle => "n >= 3",
            Family::Complete => "n >= 1",
            Family::CompleteBipartite => "a >= 1, b >= 1",
            Family::CompleteMultipartite => "p1, .., pk (k >= 2, each >= 1)",
            Family::Prism => "n >= 3",
            _ => "none",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownCatalog(s.to_string()))
    }
}

/// Builds a catalog graph.
pub fn catalog(family: Family, params: &[usize]) -> Result<Graph> {
    let bad = |msg: &str| Err(Error::InvalidParameters(format!("{family}: {msg}")));
    match family {
        Family::Cycle => match params {
            [n] if *n >= 3 => Graph::from_edges(*n, &cycle_edges(*n, 0)),
            _ => bad("expected a single length n >= 3"),
        },
        Family::Complete => match params {
            [n] if *n >= 1 => {
                let edges: Vec<_> =
                    (0..*n).flat_map(|i| ((i + 1)..*n).map(move |j| (i, j))).collect();
                Graph::from_edges(*n, &edges)
            }
            _ => bad("expected a single order n >= 1"),
        },
        Family::CompleteBipartite => match params {
            [a, b] if *a >= 1 && *b >= 1 => multipartite(&[*a, *b]),
            _ => bad("expected two part sizes a, b >= 1"),
        },
        Family::CompleteMultipartite => {
            if params.len() >= 2 && params.iter().all(|&p| p >= 1) {
                multipartite(params)
            } else {
                bad("expected at least two part sizes, each >= 1")
            }
        }
        Family::Prism => match params {
            [n] if *n >= 3 => {
                let mut edges = cycle_edges(*n, 0);
                edges.extend(cycle_edges(*n, *n));
                edges.extend((0..*n).map(|i| (i, i + n)));
                Graph::from_edges(2 * n, &edges)
            }
            _ => bad("expected a single length n >= 3"),
        },
        Family::Petersen => {
            if !params.is_empty() {
                return bad("takes no parameters");
            }
            let mut edges = cycle_edges(5, 0);
            edges.extend((0..5).map(|i| (i, i + 5)));
            edges.extend((0..5).map(|i| (i + 5, (i + 2) % 5 + 5)));
            Graph::from_edges(10, &edges)
        }
        _ => {
            if !params.is_empty() {
                return bad("takes no parameters");
            }
            let coords = polytope_coordinates(family).expect("polytope family");
            Ok(graph_from_coordinates(&coords))
        }
    }
}

/// Looks a graph up by its catalog name.
pub fn catalog_by_name(name: &str, params: &[usize]) -> Result<Graph> {
    catalog(name.parse()?, params)
}

fn cycle_edges(n: usize, offset: usize) -> Vec<(usize, usize)> {
    (0..n).map(|i| (offset + i, offset + (i + 1) % n)).collect()
}

fn multipartite(parts: &[usize]) -> Result<Graph> {
    let mut starts = Vec::with_capacity(parts.len());
    let mut n = 0;
    for &p in parts {
        starts.push(n);
        n += p;
    }
    let part_of = |v: usize| starts.iter().rposition(|&s| s <= v).unwrap();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if part_of(i) != part_of(j) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Joins every pair of rows at minimal positive squared distance.
pub fn graph_from_coordinates(coords: &Matrix) -> Graph {
    let n = coords.rows();
    let sq = |i: usize, j: usize| -> f64 {
        coords.row(i).iter().zip(coords.row(j)).map(|(a, b)| (a - b) * (a - b)).sum()
    };
    let mut min = f64::INFINITY;
    for i in 0..n {
        for j in (i + 1)..n {
            let d = sq(i, j);
            if d > 1e-12 && d < min {
                min = d;
            }
        }
    }
    let tol = 1e-9 * min.max(1.0);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if libm::fabs(sq(i, j) - min) <= tol {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("coordinate graph is simple")
}

/// Signs `(±1, ..)` in binary order, `+` first, most significant coordinate first.
fn sign_patterns(k: usize) -> impl Iterator<Item = Vec<f64>> {
    (0..(1usize << k)).map(move |mask| {
        (0..k).map(|b| if mask >> (k - 1 - b) & 1 == 1 { -1.0 } else { 1.0 }).collect()
    })
}

/// Standard vertex coordinates of the polytope families, `None` for combinatorial ones.
///
/// - dodecahedron: `(±1,±1,±1)`, `(0,±1/φ,±φ)`, `(±1/φ,±φ,0)`, `(±φ,0,±1/φ)`
/// - icosahedron: `(0,±1,±φ)`, `(±1,±φ,0)`, `(±φ,0,±1)`
/// - truncated tetrahedron: `(3,1,1)` with the 3 at position 0, 1, 2 and an even number of minus signs
/// - cuboctahedron: `(±1,±1,0)`, `(±1,0,±1)`, `(0,±1,±1)`
/// - rhombic dodecahedron: `(±1,±1,±1)`, then `±2e_1, ±2e_2, ±2e_3`
/// - cell24: `√2·(±e_k)` for k = 1..4, then `√2·(±1/2,±1/2,±1/2,±1/2)`
pub fn polytope_coordinates(family: Family) -> Option<Matrix> {
    let phi = (1.0 + libm::sqrt(5.0)) / 2.0;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    match family {
        Family::Dodecahedron => {
            rows.extend(sign_patterns(3));
            for s in sign_patterns(2) {
                rows.push([0.0, s[0] / phi, s[1] * phi].to_vec());
            }
            for s in sign_patterns(2) {
                rows.push([s[0] / phi, s[1] * phi, 0.0].to_vec());
            }
            for s in sign_patterns(2) {
                rows.push([s[0] * phi, 0.0, s[1] / phi].to_vec());
            }
        }
        Family::Icosahedron => {
            for s in sign_patterns(2) {
                rows.push([0.0, s[0], s[1] * phi].to_vec());
            }
            for s in sign_patterns(2) {
                rows.push([s[0], s[1] * phi, 0.0].to_vec());
            }
            for s in sign_patterns(2) {
                rows.push([s[0] * phi, 0.0, s[1]].to_vec());
            }
        }
        Family::TruncatedTetrahedron => {
            for pos in 0..3 {
                for s in sign_patterns(3) {
                    if s.iter().filter(|&&x| x < 0.0).count() % 2 == 0 {
                        let mut v = [1.0, 1.0, 1.0];
                        v[pos] = 3.0;
                        rows.push((0..3).map(|k| v[k] * s[k]).collect());
                    }
                }
            }
        }
        Family::Cuboctahedron => {
            for zero in [2usize, 1, 0] {
                for s in sign_patterns(2) {
                    let mut it = s.into_iter();
                    rows.push((0..3).map(|k| if k == zero { 0.0 } else { it.next().unwrap() }).collect());
                }
            }
        }
        Family::RhombicDodecahedron => {
            rows.extend(sign_patterns(3));
            for k in 0..3 {
                for sign in [2.0, -2.0] {
                    let mut v = [0.0; 3].to_vec();
                    v[k] = sign;
                    rows.push(v);
                }
            }
        }
        Family::Cell24 => {
            let r2 = libm::sqrt(2.0);
            for k in 0..4 {
                for sign in [1.0, -1.0] {
                    let mut v = [0.0; 4].to_vec();
                    v[k] = sign * r2;
                    rows.push(v);
                }
            }
            for s in sign_patterns(4) {
                rows.push(s.iter().map(|x| r2 * x / 2.0).collect());
            }
        }
        _ => return None,
    }
    Some(Matrix::from_rows(&rows).expect("rows of equal length"))
}
