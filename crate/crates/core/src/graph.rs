//! Simple undirected graphs on `{0..n-1}` and their distance structure.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Immutable simple undirected graph.
///
/// Edges are stored once as `(i, j)` with `i < j`, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
    adjacent: Vec<bool>,
}

impl Graph {
    /// Builds a graph, silently merging repeated edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::with_duplicates(n, edges).map(|(g, _)| g)
    }

    /// Builds a graph and also returns the repeated edges that were merged.
    pub fn with_duplicates(
        n: usize,
        edges: &[(usize, usize)],
    ) -> Result<(Self, Vec<(usize, usize)>)> {
        if n == 0 {
            return Err(Error::InvalidGraph("a graph needs at least one vertex".into()));
        }
        let mut adjacent = vec![false; n * n];
        let mut canonical = Vec::with_capacity(edges.len());
        let mut duplicates = Vec::new();
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) references a vertex outside 0..{n}"
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {a}")));
            }
            let (i, j) = if a < b { (a, b) } else { (b, a) };
            if adjacent[i * n + j] {
                duplicates.push((i, j));
                continue;
            }
            adjacent[i * n + j] = true;
            adjacent[j * n + i] = true;
            canonical.push((i, j));
        }
        canonical.sort_unstable();
        let mut neighbors = vec![Vec::new(); n];
        for &(i, j) in &canonical {
            neighbors[i].push(j);
            neighbors[j].push(i);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Ok((Graph { n, edges: canonical, neighbors, adjacent }, duplicates))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors[i].len()
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacent[i * self.n + j]
    }

    /// The common degree, if every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        (1..self.n).all(|i| self.degree(i) == d).then_some(d)
    }

    pub fn adjacency_matrix(&self) -> Matrix {
        Matrix::from_fn(self.n, self.n, |i, j| if self.has_edge(i, j) { 1.0 } else { 0.0 })
    }

    pub fn is_connected(&self) -> bool {
        self.bfs(0).iter().all(|&d| d != UNREACHABLE)
    }

    fn bfs(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.n];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.neighbors[v] {
                if dist[w] == UNREACHABLE {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// All-pairs shortest path lengths by breadth-first search.
    pub fn distances(&self) -> DistanceTable {
        let mut dist = Vec::with_capacity(self.n * self.n);
        for s in 0..self.n {
            dist.extend(self.bfs(s));
        }
        let connected = dist.iter().all(|&d| d != UNREACHABLE);
        let diameter =
            dist.iter().filter(|&&d| d != UNREACHABLE).max().copied().unwrap_or(0) as usize;
        DistanceTable { n: self.n, dist, diameter, connected }
    }
}

const UNREACHABLE: u32 = u32::MAX;

/// Shortest-path distances; disconnected pairs have no entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceTable {
    n: usize,
    dist: Vec<u32>,
    diameter: usize,
    connected: bool,
}

impl DistanceTable {
    pub fn get(&self, i: usize, j: usize) -> Option<usize> {
        let d = self.dist[i * self.n + j];
        (d != UNREACHABLE).then_some(d as usize)
    }

    /// Largest finite distance.
    pub fn diameter(&self) -> usize {
        self.diameter
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Vertices at exactly distance `delta` from `i`.
    pub fn shell(&self, i: usize, delta: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| self.get(i, j) == Some(delta)).collect()
    }
}

/// Cartesian product; vertex `(a, b)` gets index `a * h.n() + b`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Graph {
    let m = h.n();
    let mut edges = Vec::with_capacity(g.edge_count() * m + h.edge_count() * g.n());
    for a in 0..g.n() {
        for &(b1, b2) in h.edges() {
            edges.push((a * m + b1, a * m + b2));
        }
    }
    for &(a1, a2) in g.edges() {
        for b in 0..m {
            edges.push((a1 * m + b, a2 * m + b));
        }
    }
    Graph::from_edges(g.n() * m, &edges).expect("product of simple graphs is simple")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog, Family};

    fn cycle(n: usize) -> Graph {
        catalog(Family::Cycle, &[n]).unwrap()
    }

    #[test]
    fn loops_and_out_of_range_rejected() {
        assert!(Graph::from_edges(3, &[(1, 1)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
        assert!(Graph::from_edges(0, &[]).is_err());
    }

    #[test]
    fn duplicates_reported_and_merged() {
        let (g, dups) = Graph::with_duplicates(3, &[(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(dups, vec![(0, 1)]);
    }

    #[test]
    fn adjacency_invariants() {
        let g = cycle(5);
        let a = g.adjacency_matrix();
        assert_eq!(a.symmetry_defect(), 0.0);
        assert!((0..5).all(|i| a[(i, i)] == 0.0));
        assert_eq!(a.as_slice().iter().sum::<f64>() as usize, 2 * g.edge_count());
    }

    #[test]
    fn c4_diameter() {
        assert_eq!(cycle(4).distances().diameter(), 2);
    }

    #[test]
    fn disconnected_pairs_have_no_distance() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let t = g.distances();
        assert!(!t.is_connected());
        assert_eq!(t.get(0, 2), None);
        assert_eq!(t.diameter(), 1);
    }

    #[test]
    fn k2_times_k2_is_c4() {
        let k2 = catalog(Family::Complete, &[2]).unwrap();
        let p = cartesian_product(&k2, &k2);
        assert_eq!(p.n(), 4);
        assert_eq!(p.edge_count(), 4);
        assert_eq!(p.regular_degree(), Some(2));
        assert_eq!(p.distances().diameter(), 2);
    }

    #[test]
    fn c6_times_c6_shape() {
        let p = cartesian_product(&cycle(6), &cycle(6));
        assert_eq!(p.n(), 36);
        assert_eq!(p.edge_count(), 72);
        assert_eq!(p.regular_degree(), Some(4));
        // (a, b) ~ (a, b+1)
        assert!(p.has_edge(2 * 6 + 3, 2 * 6 + 4));
        assert!(p.has_edge(2 * 6 + 3, 3 * 6 + 3));
        assert!(!p.has_edge(2 * 6 + 3, 3 * 6 + 4));
    }
}
