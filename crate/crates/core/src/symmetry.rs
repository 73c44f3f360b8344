//! Graph automorphisms, orbits on vertices/edges/arcs/distance pairs, orbitals
//! and the orbital matrix.
//!
//! Automorphisms are found by individualization-refinement: the leftmost path of
//! the search tree fixes a base `b_0, b_1, ..`, and for each level (deepest first)
//! every target-cell vertex outside the current orbit of `b_j` is tried once.
//! Each success is a new generator, so the result is a strong generating set.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{eigendecompose, Spectrum, DEFAULT_GROUPING_TOL};
use crate::matrix::Matrix;
use crate::perm::{Perm, PermGroup};
use crate::rng::SplitMix64;

/// Default bound on search-tree nodes visited by [`automorphism_group`].
pub const DEFAULT_NODE_CAP: u64 = 5_000_000;

type Partition = Vec<Vec<usize>>;

/// Refines an ordered partition until it is equitable.
///
/// Each cell is split by the sorted list of cell indices of a vertex's
/// neighbors; sub-cells are ordered by that list, so the result commutes with
/// isomorphisms.
fn refine(g: &Graph, mut cells: Partition) -> Partition {
    let n = g.n();
    let mut cell_of = vec![0usize; n];
    loop {
        for (c, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = c;
            }
        }
        let mut next: Partition = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<usize>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut key: Vec<usize> = g.neighbors(v).iter().map(|&w| cell_of[w]).collect();
                    key.sort_unstable();
                    (key, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    let mut part: Vec<usize> = keyed[start..i].iter().map(|(_, v)| *v).collect();
                    part.sort_unstable();
                    next.push(part);
                    start = i;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

fn individualize(cells: &Partition, cell: usize, v: usize) -> Partition {
    let mut out = Vec::with_capacity(cells.len() + 1);
    for (c, members) in cells.iter().enumerate() {
        if c == cell {
            out.push(vec![v]);
            out.push(members.iter().copied().filter(|&w| w != v).collect());
        } else {
            out.push(members.clone());
        }
    }
    out
}

fn shape(cells: &Partition) -> Vec<usize> {
    cells.iter().map(Vec::len).collect()
}

fn is_automorphism(g: &Graph, images: &[usize]) -> bool {
    g.edges().iter().all(|&(i, j)| g.has_edge(images[i], images[j]))
}

struct Search<'a> {
    g: &'a Graph,
    /// Partitions along the leftmost path; the last one is discrete.
    path: Vec<Partition>,
    /// Target cell index at each level of the leftmost path.
    targets: Vec<usize>,
    nodes: u64,
    cap: u64,
}

impl Search<'_> {
    fn leaf_permutation(&self, leaf: &Partition) -> Vec<usize> {
        let reference = self.path.last().unwrap();
        let mut images = vec![0; self.g.n()];
        for (a, b) in reference.iter().zip(leaf) {
            images[a[0]] = b[0];
        }
        images
    }

    /// Depth-first search below `q` (a partition at `depth` compatible with the path)
    /// for a leaf that yields an automorphism.
    fn find(&mut self, q: Partition, depth: usize) -> Result<Option<Perm>> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(Error::SearchCapExceeded { nodes: self.cap });
        }
        if depth == self.targets.len() {
            let images = self.leaf_permutation(&q);
            return Ok(is_automorphism(self.g, &images).then(|| Perm::from_images(images).unwrap()));
        }
        let target = self.targets[depth];
        let expected = shape(&self.path[depth + 1]);
        for &x in &q[target] {
            let child = refine(self.g, individualize(&q, target, x));
            if shape(&child) == expected {
                if let Some(found) = self.find(child, depth + 1)? {
                    return Ok(Some(found));
                }
            }
        }
        Ok(None)
    }
}

/// Automorphism group of `g` with a deterministic generating set.
pub fn automorphism_group(g: &Graph) -> Result<PermGroup> {
    automorphism_group_with_cap(g, DEFAULT_NODE_CAP)
}

pub fn automorphism_group_with_cap(g: &Graph, cap: u64) -> Result<PermGroup> {
    let n = g.n();
    let mut path = vec![refine(g, vec![(0..n).collect()])];
    let mut targets = Vec::new();
    let mut base = Vec::new();
    loop {
        let current = path.last().unwrap();
        let Some(target) = current.iter().position(|c| c.len() > 1) else { break };
        let b = current[target][0];
        targets.push(target);
        base.push(b);
        let next = refine(g, individualize(current, target, b));
        path.push(next);
    }

    let mut search = Search { g, path, targets, nodes: 0, cap };
    let mut generators: Vec<Perm> = Vec::new();
    for level in (0..base.len()).rev() {
        let target = search.targets[level];
        let candidates = search.path[level][target].clone();
        let expected = shape(&search.path[level + 1]);
        let mut orbit = orbit_under(n, &generators, base[level]);
        for &w in &candidates {
            if orbit[w] {
                continue;
            }
            let child = refine(g, individualize(&search.path[level], target, w));
            if shape(&child) != expected {
                continue;
            }
            if let Some(sigma) = search.find(child, level + 1)? {
                generators.push(sigma);
                orbit = orbit_under(n, &generators, base[level]);
            }
        }
    }
    PermGroup::new(n, generators)
}

fn orbit_under(n: usize, gens: &[Perm], start: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}

/// Domains a group acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    Vertices,
    /// Unordered adjacent pairs `(i, j)`, `i < j`.
    Edges,
    /// Ordered adjacent pairs.
    Arcs,
    /// Ordered pairs at the given distance.
    DistancePairs(usize),
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Orbits of pairs under the generators. `ordered == false` identifies `(i, j)` with `(j, i)`.
fn pair_orbits(n: usize, gens: &[Perm], items: &[(usize, usize)], ordered: bool) -> Vec<Vec<(usize, usize)>> {
    let canon = |i: usize, j: usize| if ordered || i <= j { (i, j) } else { (j, i) };
    let mut index = vec![usize::MAX; n * n];
    for (k, &(i, j)) in items.iter().enumerate() {
        let (a, b) = canon(i, j);
        index[a * n + b] = k;
    }
    let mut uf = UnionFind::new(items.len());
    for (k, &(i, j)) in items.iter().enumerate() {
        for g in gens {
            let (a, b) = canon(g.apply(i), g.apply(j));
            let target = index[a * n + b];
            debug_assert!(target != usize::MAX, "group does not preserve the domain");
            uf.union(k, target);
        }
    }
    let mut classes: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut class_of_root = vec![usize::MAX; items.len()];
    let mut sorted: Vec<usize> = (0..items.len()).collect();
    sorted.sort_by_key(|&k| canon(items[k].0, items[k].1));
    for k in sorted {
        let r = uf.find(k);
        if class_of_root[r] == usize::MAX {
            class_of_root[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[class_of_root[r]].push(canon(items[k].0, items[k].1));
    }
    classes
}

/// Vertex orbits, each sorted, ordered by smallest member.
pub fn vertex_orbits(group: &PermGroup) -> Vec<Vec<usize>> {
    let n = group.degree();
    let items: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
    pair_orbits(n, group.generators(), &items, true)
        .into_iter()
        .map(|c| c.into_iter().map(|(i, _)| i).collect())
        .collect()
}

/// Orbit partition of the chosen domain. Vertices are reported as pairs `(i, i)`.
pub fn orbits(group: &PermGroup, g: &Graph, domain: Domain) -> Result<Vec<Vec<(usize, usize)>>> {
    let n = g.n();
    if group.degree() != n {
        return Err(Error::DimensionMismatch { expected: n, found: group.degree() });
    }
    let gens = group.generators();
    Ok(match domain {
        Domain::Vertices => {
            let items: Vec<_> = (0..n).map(|i| (i, i)).collect();
            pair_orbits(n, gens, &items, true)
        }
        Domain::Edges => pair_orbits(n, gens, g.edges(), false),
        Domain::Arcs => {
            let items: Vec<_> = g.edges().iter().flat_map(|&(i, j)| [(i, j), (j, i)]).collect();
            pair_orbits(n, gens, &items, true)
        }
        Domain::DistancePairs(delta) => {
            let table = g.distances();
            if !table.is_connected() {
                return Err(Error::Disconnected);
            }
            if delta > table.diameter() {
                return Err(Error::DistanceOutOfRange { distance: delta, diameter: table.diameter() });
            }
            let items: Vec<_> = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|&(i, j)| table.get(i, j) == Some(delta))
                .collect();
            pair_orbits(n, gens, &items, true)
        }
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Transitivity {
    pub vertex: bool,
    pub edge: bool,
    pub arc: bool,
    /// Transitive on every distance class; false for disconnected graphs.
    pub distance: bool,
}

/// Which transitivity classes `group` achieves on `g`.
pub fn transitivity_class(g: &Graph, group: &PermGroup) -> Result<Transitivity> {
    let single = |d: Domain| -> Result<bool> { Ok(orbits(group, g, d)?.len() == 1) };
    let vertex = single(Domain::Vertices)?;
    let edge = single(Domain::Edges)?;
    let arc = single(Domain::Arcs)?;
    let table = g.distances();
    let distance = table.is_connected()
        && (0..=table.diameter()).try_fold(true, |acc, d| Ok::<_, Error>(acc && single(Domain::DistancePairs(d))?))?;
    Ok(Transitivity { vertex, edge, arc, distance })
}

/// Orbits of the group on singletons `{i}` and unordered pairs `{i, j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitalPartition {
    n: usize,
    class_of: Vec<usize>,
    classes: Vec<Vec<(usize, usize)>>,
}

impl OrbitalPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Class index of `{i, j}` (symmetric in its arguments).
    pub fn class(&self, i: usize, j: usize) -> usize {
        self.class_of[i * self.n + j]
    }

    /// Members of each class as `(i, j)` with `i <= j`, ordered by first member.
    pub fn classes(&self) -> &[Vec<(usize, usize)>] {
        &self.classes
    }
}

pub fn orbitals(group: &PermGroup) -> OrbitalPartition {
    let n = group.degree();
    let items: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let classes = pair_orbits(n, group.generators(), &items, false);
    let mut class_of = vec![0; n * n];
    for (c, members) in classes.iter().enumerate() {
        for &(i, j) in members {
            class_of[i * n + j] = c;
            class_of[j * n + i] = c;
        }
    }
    OrbitalPartition { n, class_of, classes }
}

/// `count` weights drawn uniformly from `[0, 1)` with SplitMix64.
pub fn random_orbital_weights(count: usize, seed: u64) -> Vec<f64> {
    let mut rng = SplitMix64::new(seed);
    (0..count).map(|_| rng.next_f64()).collect()
}

/// Symmetric matrix with entry `weights[orbital of {i, j}]`.
pub fn orbital_matrix(partition: &OrbitalPartition, weights: &[f64]) -> Result<Matrix> {
    if weights.len() < partition.len() {
        return Err(Error::MissingWeight { orbital: weights.len() });
    }
    let n = partition.n;
    Ok(Matrix::from_fn(n, n, |i, j| weights[partition.class(i, j)]))
}

/// Orbital matrix with seeded random weights.
pub fn seeded_orbital_matrix(partition: &OrbitalPartition, seed: u64) -> Matrix {
    let weights = random_orbital_weights(partition.len(), seed);
    orbital_matrix(partition, &weights).expect("one weight per orbital")
}

/// Eigenspaces of a seeded orbital matrix: a candidate decomposition of `ℝⁿ` into
/// irreducible subspaces. It is a heuristic and should be cross-checked.
pub fn candidate_decomposition(partition: &OrbitalPartition, seed: u64) -> Result<Spectrum> {
    eigendecompose(&seeded_orbital_matrix(partition, seed), DEFAULT_GROUPING_TOL)
}
