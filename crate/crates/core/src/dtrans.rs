//! Intersection arrays, cosine vectors and sequences, and the cosine-vector obstruction.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::dot;
use crate::realization::Realization;

/// Tolerance for grouping cosine entries by distance.
pub const SEQUENCE_TOL: f64 = 1e-8;
const RATIONAL_TOL: f64 = 1e-9;
const MAX_DENOMINATOR: i128 = 64;
const FLOAT_TOL: f64 = 1e-9;

/// `c_δ`, `a_δ`, `b_δ` of a distance-regular graph.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IntersectionArray {
    pub diam: usize,
    pub deg: usize,
    /// `a_0 ..= a_diam`.
    pub a: Vec<usize>,
    /// `b_0 .. b_diam` (excluding `b_diam = 0`).
    pub b: Vec<usize>,
    /// `c_1 ..= c_diam`.
    pub c: Vec<usize>,
}

impl IntersectionArray {
    pub fn a(&self, delta: usize) -> usize {
        self.a[delta]
    }

    /// `b_δ`, zero at `δ = diam`.
    pub fn b(&self, delta: usize) -> usize {
        self.b.get(delta).copied().unwrap_or(0)
    }

    /// `c_δ`, zero at `δ = 0`.
    pub fn c(&self, delta: usize) -> usize {
        if delta == 0 {
            0
        } else {
            self.c[delta - 1]
        }
    }
}

/// Counts, for every ordered pair `(i, j)` at each distance, how the neighbors of
/// `j` split across the distance shells around `i`.
///
/// Distances `1..=diam` are checked before the degree, so a non-regular graph such
/// as a path reports the first pair whose counts disagree.
pub fn intersection_array(g: &Graph) -> Result<IntersectionArray> {
    let table = g.distances();
    if !table.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    let diam = table.diameter();
    let mut a = vec![0usize; diam + 1];
    let mut b = vec![0usize; diam];
    let mut c = vec![0usize; diam];
    for delta in 1..=diam {
        let mut first: Option<(usize, usize, usize)> = None;
        for i in 0..n {
            for j in 0..n {
                if table.get(i, j) != Some(delta) {
                    continue;
                }
                let (mut cc, mut aa, mut bb) = (0, 0, 0);
                for &k in g.neighbors(j) {
                    match table.get(i, k) {
                        Some(e) if e + 1 == delta => cc += 1,
                        Some(e) if e == delta => aa += 1,
                        _ => bb += 1,
                    }
                }
                match first {
                    None => first = Some((cc, aa, bb)),
                    Some(f) if f != (cc, aa, bb) => {
                        return Err(Error::NotDistanceRegular { distance: delta, pair: (i, j) })
                    }
                    _ => {}
                }
            }
        }
        let (cc, aa, bb) = first.expect("every distance up to the diameter occurs");
        c[delta - 1] = cc;
        a[delta] = aa;
        if delta < diam {
            b[delta] = bb;
        }
    }
    let deg = g.regular_degree().ok_or(Error::NotRegular)?;
    if diam > 0 {
        b[0] = deg;
    }
    Ok(IntersectionArray { diam, deg, a, b, c })
}

/// `u_0 = 1`, `u_1 = θ/deg`, `u_{δ+1} = ((θ − a_δ)u_δ − c_δ u_{δ−1}) / b_δ`.
pub fn cosine_sequence_recurrence(arr: &IntersectionArray, theta: f64) -> Result<Vec<f64>> {
    let mut u = vec![1.0];
    if arr.diam == 0 {
        return Ok(u);
    }
    u.push(theta / arr.deg as f64);
    for delta in 1..arr.diam {
        let b = arr.b(delta);
        if b == 0 {
            return Err(Error::ZeroIntersection { distance: delta });
        }
        let next = ((theta - arr.a(delta) as f64) * u[delta] - arr.c(delta) as f64 * u[delta - 1]) / b as f64;
        u.push(next);
    }
    Ok(u)
}

/// Inner products of one position with all others.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CosineProfile {
    pub base: usize,
    /// `u_j = ⟨v_base, v_j⟩`.
    pub vector: Vec<f64>,
    /// `u_δ` for `δ = 0..=diam`, when all entries at each distance agree within 1e-8.
    pub sequence: Option<Vec<f64>>,
}

impl CosineProfile {
    /// `r² = u_base`.
    pub fn radius_squared(&self) -> f64 {
        self.vector[self.base]
    }

    /// Distinct values (descending) with counts; values within `tol` merge.
    pub fn multiset(&self, tol: f64) -> Vec<(f64, usize)> {
        let mut sorted = self.vector.clone();
        sorted.sort_by(|x, y| y.total_cmp(x));
        let mut out: Vec<(f64, usize)> = Vec::new();
        for x in sorted {
            match out.last_mut() {
                Some((v, k)) if libm::fabs(*v - x) <= tol => *k += 1,
                _ => out.push((x, 1)),
            }
        }
        out
    }
}

pub fn cosine_profile(r: &Realization, base: usize) -> Result<CosineProfile> {
    if base >= r.n() {
        return Err(Error::IndexOutOfRange { index: base, len: r.n() });
    }
    let vb = r.position(base);
    let vector: Vec<f64> = (0..r.n()).map(|j| dot(vb, r.position(j))).collect();
    let table = r.graph().distances();
    let sequence = table.is_connected().then(|| {
        let mut lo = vec![f64::INFINITY; table.diameter() + 1];
        let mut hi = vec![f64::NEG_INFINITY; table.diameter() + 1];
        for (j, &u) in vector.iter().enumerate() {
            let d = table.get(base, j).unwrap();
            lo[d] = lo[d].min(u);
            hi[d] = hi[d].max(u);
        }
        lo.iter().zip(&hi).all(|(l, h)| h - l <= SEQUENCE_TOL).then(|| {
            lo.iter().zip(&hi).map(|(l, h)| (l + h) / 2.0).collect()
        })
    });
    Ok(CosineProfile { base, vector, sequence: sequence.flatten() })
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Arithmetic {
    Exact,
    Float,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "result", rename_all = "kebab-case"))]
pub enum Obstruction {
    /// No competing vector exists. `direction` is a separating functional.
    Infeasible { arithmetic: Arithmetic, direction: [f64; 2], slack: f64 },
    /// A competing vector exists; `margin` is the smallest slack over the tested directions.
    Feasible { arithmetic: Arithmetic, margin: f64 },
}

impl Obstruction {
    pub fn is_infeasible(&self) -> bool {
        matches!(self, Obstruction::Infeasible { .. })
    }
}

type Q = Ratio<i128>;

fn to_rational(x: f64) -> Option<Q> {
    for q in 1..=MAX_DENOMINATOR {
        let p = libm::round(x * q as f64);
        if libm::fabs(x - p / q as f64) <= RATIONAL_TOL {
            return Some(Q::new(p as i128, q));
        }
    }
    None
}

/// Scalar arithmetic for the zonotope test.
trait Field: Copy + PartialOrd + core::ops::Add<Output = Self> + core::ops::Sub<Output = Self> + core::ops::Mul<Output = Self> + core::ops::Neg<Output = Self> {
    fn zero() -> Self;
    fn one() -> Self;
    fn abs(self) -> Self;
    fn to_f64(self) -> f64;
}

impl Field for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn abs(self) -> Self {
        libm::fabs(self)
    }
    fn to_f64(self) -> f64 {
        self
    }
}

impl Field for Q {
    fn zero() -> Self {
        Q::from_integer(0)
    }
    fn one() -> Self {
        Q::from_integer(1)
    }
    fn abs(self) -> Self {
        if self < Self::zero() {
            -self
        } else {
            self
        }
    }
    fn to_f64(self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

/// Whether `target ∈ {Σ s_k g_k : |s_k| ≤ bound}` for planar generators `g_k`.
///
/// A point lies in a zonotope iff it satisfies every support inequality
/// `⟨w, p⟩ ≤ bound·Σ|⟨w, g_k⟩|`; for planar zonotopes the facet normals are the
/// perpendiculars of the generators, and the coordinate axes and generators
/// themselves cover the degenerate (segment or point) cases.
fn zonotope_test<F: Field>(gens: &[[F; 2]], target: [F; 2], bound: F, strict_tol: F) -> (bool, [F; 2], F) {
    let mut directions: Vec<[F; 2]> = vec![[F::one(), F::zero()], [F::zero(), F::one()]];
    for g in gens {
        directions.push([-g[1], g[0]]);
        directions.push(*g);
    }
    let mut worst: Option<([F; 2], F)> = None;
    for w in directions {
        for w in [w, [-w[0], -w[1]]] {
            let reach = gens.iter().fold(F::zero(), |acc, g| acc + (w[0] * g[0] + w[1] * g[1]).abs()) * bound;
            let slack = reach - (w[0] * target[0] + w[1] * target[1]);
            if slack < -strict_tol {
                return (false, w, slack);
            }
            let norm = libm::sqrt(w[0].to_f64() * w[0].to_f64() + w[1].to_f64() * w[1].to_f64());
            if norm > 0.0 {
                let scaled = slack.to_f64() / norm;
                if worst.is_none_or(|(_, s)| scaled < s.to_f64()) {
                    worst = Some((w, slack));
                }
            }
        }
    }
    let (w, slack) = worst.unwrap();
    (true, w, slack)
}

/// Decides whether a second cosine vector `ū` with `⟨u, ū⟩ = 0`, optionally
/// `Σ ū_i = 0`, `ū_i = u_i` on `fixed` and `|ū_i| ≤ r²` elsewhere can exist.
///
/// Runs in exact rationals when every entry is within 1e-9 of a fraction with
/// denominator at most 64, else in floating point with tolerance 1e-9.
pub fn cosine_obstruction(profile: &CosineProfile, fixed: &[usize], sum_zero: bool) -> Result<Obstruction> {
    let n = profile.vector.len();
    let r2 = profile.radius_squared();
    let mut is_fixed = vec![false; n];
    for &i in fixed {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, len: n });
        }
        if libm::fabs(profile.vector[i]) > r2 + FLOAT_TOL {
            return Err(Error::InconsistentFixedValue { index: i });
        }
        is_fixed[i] = true;
    }
    let exact: Option<Vec<Q>> = profile.vector.iter().map(|&x| to_rational(x)).collect();
    match exact {
        Some(u) => {
            let (feasible, w, slack) = solve(&u, &is_fixed, sum_zero, u[profile.base], Q::zero());
            Ok(wrap(Arithmetic::Exact, feasible, w, slack))
        }
        None => {
            let (feasible, w, slack) = solve(&profile.vector, &is_fixed, sum_zero, r2, FLOAT_TOL * r2.max(1.0));
            Ok(wrap(Arithmetic::Float, feasible, w, slack))
        }
    }
}

fn solve<F: Field>(u: &[F], is_fixed: &[bool], sum_zero: bool, bound: F, tol: F) -> (bool, [F; 2], F) {
    // Second coordinate carries the sum constraint; it is identically zero without it.
    let ones = if sum_zero { F::one() } else { F::zero() };
    let mut target = [F::zero(), F::zero()];
    let mut gens = Vec::new();
    for (i, &x) in u.iter().enumerate() {
        if is_fixed[i] {
            target[0] = target[0] - x * x;
            target[1] = target[1] - x * ones;
        } else {
            gens.push([x, ones]);
        }
    }
    zonotope_test(&gens, target, bound, tol)
}

fn wrap<F: Field>(arithmetic: Arithmetic, feasible: bool, w: [F; 2], slack: F) -> Obstruction {
    if feasible {
        let norm = libm::sqrt(w[0].to_f64() * w[0].to_f64() + w[1].to_f64() * w[1].to_f64());
        Obstruction::Feasible { arithmetic, margin: slack.to_f64() / norm }
    } else {
        Obstruction::Infeasible { arithmetic, direction: [w[0].to_f64(), w[1].to_f64()], slack: slack.to_f64() }
    }
}

/// Fixed positions used by the standard argument: the base and its neighbors.
pub fn base_and_neighbors(g: &Graph, base: usize) -> Vec<usize> {
    let mut out = vec![base];
    out.extend_from_slice(g.neighbors(base));
    out
}
