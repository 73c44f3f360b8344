//! Permutations of `{0..n-1}` and permutation groups via a Schreier-Sims stabilizer chain.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Default cap on the number of group elements enumerated explicitly.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1_000_000;

/// Permutation in image form: `p[i]` is the image of `i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// Validates that `images` is a bijection on `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || core::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidArgument("permutation images are not a bijection".into()));
            }
        }
        Ok(Perm(images))
    }

    /// Cyclic shift `i ↦ i + k mod n`.
    pub fn rotation(n: usize, k: usize) -> Self {
        Perm((0..n).map(|i| (i + k) % n).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `x ↦ other(self(x))`: first `self`, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    fn first_moved(&self) -> Option<usize> {
        self.0.iter().enumerate().position(|(i, &x)| i != x)
    }
}

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    gens: Vec<Perm>,
    /// `transversal[x]` maps `point` to `x`, for `x` in the orbit.
    transversal: Vec<Option<Perm>>,
    orbit: Vec<usize>,
}

/// Base and strong generating set.
#[derive(Clone, Debug)]
struct StabChain {
    n: usize,
    levels: Vec<Level>,
}

impl StabChain {
    fn new(n: usize, base_prefix: &[usize]) -> Self {
        let mut chain = StabChain { n, levels: Vec::new() };
        for &b in base_prefix {
            chain.push_level(b);
        }
        chain
    }

    fn push_level(&mut self, point: usize) {
        let mut transversal = vec![None; self.n];
        transversal[point] = Some(Perm::identity(self.n));
        self.levels.push(Level { point, gens: Vec::new(), transversal, orbit: vec![point] });
    }

    fn rebuild_orbit(&mut self, k: usize) {
        let gens: Vec<Perm> = self.levels[k..].iter().flat_map(|l| l.gens.iter().cloned()).collect();
        let n = self.n;
        let level = &mut self.levels[k];
        let mut transversal = vec![None; n];
        transversal[level.point] = Some(Perm::identity(n));
        let mut orbit = vec![level.point];
        let mut queue = VecDeque::from([level.point]);
        while let Some(x) = queue.pop_front() {
            for s in &gens {
                let y = s.apply(x);
                if transversal[y].is_none() {
                    let ux = transversal[x].as_ref().unwrap();
                    transversal[y] = Some(ux.then(s));
                    orbit.push(y);
                    queue.push_back(y);
                }
            }
        }
        level.transversal = transversal;
        level.orbit = orbit;
    }

    /// Strips `g` through levels `from..`; returns the residue and the level it stopped at.
    fn sift(&self, g: &Perm, from: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for (k, level) in self.levels.iter().enumerate().skip(from) {
            let x = h.apply(level.point);
            match &level.transversal[x] {
                Some(u) => h = h.then(&u.inverse()),
                None => return (h, k),
            }
        }
        (h, self.levels.len())
    }

    fn contains(&self, g: &Perm) -> bool {
        let (h, _) = self.sift(g, 0);
        h.is_identity()
    }

    fn strong_gens(&self, k: usize) -> Vec<Perm> {
        self.levels[k..].iter().flat_map(|l| l.gens.iter().cloned()).collect()
    }

    fn add_generator(&mut self, k: usize, g: Perm) {
        if k == self.levels.len() {
            let point = g.first_moved().expect("identity never added");
            self.push_level(point);
        }
        self.levels[k].gens.push(g);
        loop {
            self.rebuild_orbit(k);
            let gens = self.strong_gens(k);
            let orbit = self.levels[k].orbit.clone();
            let mut extended = false;
            'scan: for &x in &orbit {
                for s in &gens {
                    let ux = self.levels[k].transversal[x].as_ref().unwrap();
                    let y = s.apply(x);
                    let uy = self.levels[k].transversal[y].as_ref().unwrap();
                    let schreier = ux.then(s).then(&uy.inverse());
                    let (residue, _) = self.sift(&schreier, k + 1);
                    if !residue.is_identity() {
                        self.add_generator(k + 1, residue);
                        extended = true;
                        break 'scan;
                    }
                }
            }
            if !extended {
                return;
            }
        }
    }

    fn order(&self) -> u128 {
        self.levels.iter().fold(1u128, |acc, l| acc.saturating_mul(l.orbit.len() as u128))
    }

    fn for_each_element(&self, f: &mut impl FnMut(&Perm)) {
        // every element is (deepest transversal) then ... then (level-0 transversal)
        fn rec_rev(chain: &StabChain, k: isize, acc: &Perm, f: &mut impl FnMut(&Perm)) {
            if k < 0 {
                f(acc);
                return;
            }
            let level = &chain.levels[k as usize];
            for &x in &level.orbit {
                let u = level.transversal[x].as_ref().unwrap();
                rec_rev(chain, k - 1, &acc.then(u), f);
            }
        }
        rec_rev(self, self.levels.len() as isize - 1, &Perm::identity(self.n), f);
    }
}

/// Permutation group given by generators, with a stabilizer chain for order,
/// membership and element enumeration.
#[derive(Clone, Debug)]
pub struct PermGroup {
    n: usize,
    generators: Vec<Perm>,
    chain: StabChain,
}

impl PermGroup {
    pub fn new(n: usize, generators: Vec<Perm>) -> Result<Self> {
        Self::with_base(n, generators, &[])
    }

    fn with_base(n: usize, generators: Vec<Perm>, base_prefix: &[usize]) -> Result<Self> {
        for g in &generators {
            if g.degree() != n {
                return Err(Error::DimensionMismatch { expected: n, found: g.degree() });
            }
        }
        let mut chain = StabChain::new(n, base_prefix);
        for g in &generators {
            if !g.is_identity() && !chain.contains(g) {
                chain.add_generator(0, g.clone());
            }
        }
        Ok(PermGroup { n, generators, chain })
    }

    pub fn trivial(n: usize) -> Self {
        PermGroup { n, generators: Vec::new(), chain: StabChain::new(n, &[]) }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// Group order (saturating at `u128::MAX`).
    pub fn order(&self) -> u128 {
        self.chain.order()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.n && self.chain.contains(g)
    }

    /// Orbit of `i`, in breadth-first discovery order.
    pub fn orbit(&self, i: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        seen[i] = true;
        let mut orbit = vec![i];
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
        }
        orbit
    }

    /// Stabilizer subgroup of vertex `i`, generated by a strong generating set.
    pub fn stabilizer(&self, i: usize) -> PermGroup {
        let rebased = PermGroup::with_base(self.n, self.generators.clone(), &[i])
            .expect("generators already validated");
        if rebased.chain.levels.len() <= 1 {
            return PermGroup::trivial(self.n);
        }
        let gens = rebased.chain.strong_gens(1);
        PermGroup::new(self.n, gens).expect("same degree")
    }

    /// For each point reachable from `i`, a group element mapping `i` to it.
    pub fn transversal(&self, i: usize) -> Vec<Option<Perm>> {
        let mut t: Vec<Option<Perm>> = vec![None; self.n];
        t[i] = Some(Perm::identity(self.n));
        let mut queue = VecDeque::from([i]);
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = g.apply(x);
                if t[y].is_none() {
                    t[y] = Some(t[x].as_ref().unwrap().then(g));
                    queue.push_back(y);
                }
            }
        }
        t
    }

    /// Calls `f` on every element; fails when the order exceeds `cap`.
    pub fn for_each_element(&self, cap: u128, mut f: impl FnMut(&Perm)) -> Result<()> {
        if self.order() > cap {
            return Err(Error::GroupTooLarge { cap: cap.min(u64::MAX as u128) as u64 });
        }
        self.chain.for_each_element(&mut f);
        Ok(())
    }

    pub fn elements(&self, cap: u128) -> Result<Vec<Perm>> {
        let mut out = Vec::new();
        self.for_each_element(cap, |p| out.push(p.clone()))?;
        Ok(out)
    }
}
