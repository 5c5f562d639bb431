//! Permutations and permutation groups.
//!
//! Groups are held as a generating set plus a stabilizer chain built by the
//! deterministic Schreier-Sims algorithm. Permutations act on the right:
//! `i^g = g.image(i)` and `g.then(h)` applies `g` first.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::digraph::{mask_lex_less, SDigraph, VertexSet};
use crate::error::{Error, Result};

/// A bijection of `0..n`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::NotABijection);
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of degree `n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for c in cycles {
            for (k, &a) in c.iter().enumerate() {
                if a >= n || touched[a] {
                    return Err(Error::NotABijection);
                }
                touched[a] = true;
                images[a] = c[(k + 1) % c.len()];
            }
        }
        Permutation::new(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn fixes(&self, i: usize) -> bool {
        self.images[i] == i
    }

    /// Cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.fixes(start) {
                seen[start] = true;
                continue;
            }
            let mut c = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                c.push(x);
                x = self.images[x];
            }
            out.push(c);
        }
        out
    }

    /// Number of cycles, fixed points included.
    pub fn cycle_count(&self) -> usize {
        let fixed = self.images.iter().enumerate().filter(|(i, j)| i == *j).count();
        fixed + self.cycles().len()
    }

    /// Element order: the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| {
            let l = c.len() as u64;
            acc / gcd(acc, l) * l
        })
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.then(other) == other.then(self)
    }

    pub fn apply_set(&self, s: &VertexSet) -> VertexSet {
        s.iter().map(|v| self.images[v]).collect()
    }

    pub fn apply_mask(&self, mask: u64) -> u64 {
        let mut m = mask;
        let mut out = 0u64;
        while m != 0 {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            out |= 1 << self.images[b];
        }
        out
    }

    /// Whether this permutation preserves every pair state of `d`.
    pub fn is_automorphism_of(&self, d: &SDigraph) -> bool {
        let n = d.n();
        self.degree() == n
            && (0..n).all(|i| {
                (i + 1..n).all(|j| d.state(i, j) == d.state(self.images[i], self.images[j]))
            })
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Cycle notation, `()` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `transversal[p]` maps the base point to `p`.
    transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base] = Some(Permutation::identity(degree));
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            transversal,
        }
    }

    fn rebuild_orbit(&mut self) {
        let degree = self.transversal.len();
        self.transversal = vec![None; degree];
        self.transversal[self.base] = Some(Permutation::identity(degree));
        self.orbit = vec![self.base];
        let mut k = 0;
        while k < self.orbit.len() {
            let p = self.orbit[k];
            k += 1;
            for g in &self.gens {
                let q = g.image(p);
                if self.transversal[q].is_none() {
                    let u = self.transversal[p].as_ref().unwrap().then(g);
                    self.transversal[q] = Some(u);
                    self.orbit.push(q);
                }
            }
        }
    }
}

/// A permutation group given by generators, with its stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
}

impl PermGroup {
    /// The group generated by `gens`, acting on `0..degree`.
    pub fn from_generators(degree: usize, gens: &[Permutation]) -> Result<Self> {
        PermGroup::with_base_prefix(degree, gens, &[])
    }

    /// As [`PermGroup::from_generators`], with the stabilizer chain's base
    /// starting with `prefix`.
    pub fn with_base_prefix(degree: usize, gens: &[Permutation], prefix: &[usize]) -> Result<Self> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        if let Some(&b) = prefix.iter().find(|&&b| b >= degree) {
            return Err(Error::IndexOutOfRange { index: b, n: degree });
        }
        let mut generators: Vec<Permutation> = Vec::new();
        for g in gens {
            if !g.is_identity() && !generators.contains(g) {
                generators.push(g.clone());
            }
        }
        let levels = schreier_sims(degree, &generators, prefix);
        Ok(PermGroup {
            degree,
            generators,
            levels,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            levels: Vec::new(),
        }
    }

    /// The symmetric group on `0..degree`.
    pub fn symmetric(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Permutation::from_cycles(degree, &[&[0, 1]]).unwrap());
            let cyc: Vec<usize> = (0..degree).collect();
            gens.push(Permutation::from_cycles(degree, &[&cyc]).unwrap());
        }
        PermGroup::from_generators(degree, &gens).unwrap()
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Basic orbit lengths along the chain.
    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// The exact group order, the product of the basic orbit lengths.
    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && {
            let (residue, _) = strip(&self.levels, g.clone(), 0);
            residue.is_identity()
        }
    }

    /// Whether every generator preserves `d`.
    pub fn acts_on(&self, d: &SDigraph) -> bool {
        self.degree == d.n() && self.generators.iter().all(|g| g.is_automorphism_of(d))
    }

    /// Generators of the pointwise stabilizer of `points`.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> PermGroup {
        let chain = PermGroup::with_base_prefix(self.degree, &self.generators, points)
            .expect("points already validated by caller");
        let k = points.len();
        let gens: Vec<Permutation> = match chain.levels.get(k) {
            Some(l) => l.gens.clone(),
            None => Vec::new(),
        };
        // strong generators at depth k fix every earlier base point
        debug_assert!(gens.iter().all(|g| points.iter().all(|&p| g.fixes(p))));
        PermGroup::from_generators(self.degree, &gens).unwrap()
    }

    /// Calls `f` on every element exactly once. Cost is `order()` products.
    pub fn for_each_element(&self, mut f: impl FnMut(&Permutation)) {
        fn rec(levels: &[Level], l: usize, cur: &Permutation, f: &mut dyn FnMut(&Permutation)) {
            for &p in &levels[l].orbit {
                let next = cur.then(levels[l].transversal[p].as_ref().unwrap());
                if l == 0 {
                    f(&next);
                } else {
                    rec(levels, l - 1, &next, f);
                }
            }
        }
        let id = Permutation::identity(self.degree);
        if self.levels.is_empty() {
            f(&id);
        } else {
            rec(&self.levels, self.levels.len() - 1, &id, &mut f);
        }
    }

    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = Vec::new();
        self.for_each_element(|g| out.push(g.clone()));
        out
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter().all(|a| g.iter().all(|b| a.commutes_with(b)))
    }

    /// Orbit partition of the points, each orbit sorted, orbits ordered by
    /// their least point.
    pub fn orbits_on_points(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.generators)
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbits_on_points().len() == 1
    }

    pub fn orbital_decomposition(&self) -> OrbitalDecomposition {
        OrbitalDecomposition::new(self)
    }

    /// The lexicographically least image of `s` under the group.
    pub fn min_subset_in_orbit(&self, s: &VertexSet) -> VertexSet {
        match s.mask() {
            Some(m) if self.degree <= 64 => {
                VertexSet::from_mask(OrbitMinimizer::new(self).min_mask(m))
            }
            _ => self
                .subset_orbit(s)
                .into_iter()
                .min()
                .expect("orbit contains s"),
        }
    }

    /// The full orbit of `s`, by breadth-first search over the generators.
    pub fn subset_orbit(&self, s: &VertexSet) -> BTreeSet<VertexSet> {
        let mut seen = BTreeSet::new();
        seen.insert(s.clone());
        let mut queue = VecDeque::from([s.clone()]);
        while let Some(t) = queue.pop_front() {
            for g in &self.generators {
                let u = g.apply_set(&t);
                if seen.insert(u.clone()) {
                    queue.push_back(u);
                }
            }
        }
        seen
    }

    /// `(k-homogeneous, k-transitive)` by direct orbit computation.
    pub fn k_homogeneity(&self, k: usize) -> (bool, bool) {
        assert!(k <= self.degree, "k exceeds the degree");
        let n = self.degree;
        let prefix: Vec<usize> = (0..k).collect();
        let chain = PermGroup::with_base_prefix(n, &self.generators, &prefix).unwrap();
        let transitive = (0..k).all(|i| chain.levels.get(i).map_or(1, |l| l.orbit.len()) == n - i);
        let start: VertexSet = (0..k).collect();
        let homogeneous = self.subset_orbit(&start).len() as u128 == binomial(n, k);
        (homogeneous, transitive)
    }

    /// Homogeneous on k-subsets for every k.
    pub fn is_highly_homogeneous(&self) -> bool {
        (1..=self.degree / 2).all(|k| self.k_homogeneity(k).0)
    }

    /// Orbits on all subsets: `(1/|G|) Σ_g 2^{c(g)}`.
    pub fn burnside_subset_orbits(&self) -> u128 {
        let mut total: u128 = 0;
        self.for_each_element(|g| total += 1u128 << g.cycle_count());
        total / self.order()
    }
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Free-function form of [`PermGroup::from_generators`]; degree is taken
/// from the first generator, `degree` is used only when `gens` is empty.
pub fn group_from_generators(degree: usize, gens: &[Permutation]) -> Result<PermGroup> {
    let d = gens.first().map_or(degree, |g| g.degree());
    PermGroup::from_generators(d, gens)
}

/// `(k-homogeneous, k-transitive)` for `g`.
pub fn group_k_homogeneity(g: &PermGroup, k: usize) -> (bool, bool) {
    g.k_homogeneity(k)
}

pub(crate) fn orbits_of(degree: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut label = vec![usize::MAX; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if label[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        label[start] = id;
        let mut orbit = vec![start];
        let mut k = 0;
        while k < orbit.len() {
            let p = orbit[k];
            k += 1;
            for g in gens {
                let q = g.image(p);
                if label[q] == usize::MAX {
                    label[q] = id;
                    orbit.push(q);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Sifts `g` through `levels[start..]`. Returns the residue and the depth at
/// which sifting stopped (`levels.len()` if it passed every level).
fn strip(levels: &[Level], mut g: Permutation, start: usize) -> (Permutation, usize) {
    for (l, level) in levels.iter().enumerate().skip(start) {
        let beta = g.image(level.base);
        match &level.transversal[beta] {
            None => return (g, l),
            Some(u) => g = g.then(&u.inverse()),
        }
    }
    (g, levels.len())
}

fn schreier_sims(degree: usize, gens: &[Permutation], prefix: &[usize]) -> Vec<Level> {
    // new base points are taken from the largest orbits first
    let mut preference: Vec<usize> = (0..degree).collect();
    {
        let orbits = orbits_of(degree, gens);
        let mut size = vec![0; degree];
        for o in &orbits {
            for &p in o {
                size[p] = o.len();
            }
        }
        preference.sort_by_key(|&p| (core::cmp::Reverse(size[p]), p));
    }
    let pick = |g: &Permutation| -> usize {
        *preference
            .iter()
            .find(|&&p| !g.fixes(p))
            .expect("non-identity permutation moves a point")
    };

    let mut levels: Vec<Level> = prefix.iter().map(|&b| Level::new(b, degree)).collect();
    for g in gens {
        if levels.iter().all(|l| g.fixes(l.base)) {
            levels.push(Level::new(pick(g), degree));
        }
    }
    // assign strong generators: a generator belongs to every level whose
    // earlier base points it fixes
    let bases: Vec<usize> = levels.iter().map(|l| l.base).collect();
    for (i, level) in levels.iter_mut().enumerate() {
        level.gens = gens
            .iter()
            .filter(|g| bases[..i].iter().all(|&b| g.fixes(b)))
            .cloned()
            .collect();
        level.rebuild_orbit();
    }

    let mut i = levels.len();
    while i > 0 {
        let lvl = i - 1;
        let mut restart = None;
        'scan: for oi in 0..levels[lvl].orbit.len() {
            let beta = levels[lvl].orbit[oi];
            for si in 0..levels[lvl].gens.len() {
                let s = &levels[lvl].gens[si];
                let u_beta = levels[lvl].transversal[beta].as_ref().unwrap();
                let image = s.image(beta);
                let u_image = levels[lvl].transversal[image].as_ref().unwrap();
                let h = u_beta.then(s).then(&u_image.inverse());
                if h.is_identity() {
                    continue;
                }
                let (residue, j) = strip(&levels, h, lvl + 1);
                if j < levels.len() || !residue.is_identity() {
                    if j == levels.len() {
                        levels.push(Level::new(pick(&residue), degree));
                    }
                    for level in &mut levels[lvl + 1..=j] {
                        level.gens.push(residue.clone());
                        level.rebuild_orbit();
                    }
                    restart = Some(j + 1);
                    break 'scan;
                }
            }
        }
        match restart {
            Some(r) => i = r,
            None => i -= 1,
        }
    }
    // trailing levels with trivial orbits carry no information unless they
    // were requested as part of the base prefix
    while levels.len() > prefix.len() && levels.last().is_some_and(|l| l.orbit.len() == 1) {
        levels.pop();
    }
    levels
}

/// Labels every ordered pair of distinct points by its orbital.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitalDecomposition {
    n: usize,
    labels: Vec<usize>,
    pairing: Vec<usize>,
}

impl OrbitalDecomposition {
    fn new(g: &PermGroup) -> Self {
        let n = g.degree;
        let mut labels = vec![usize::MAX; n * n];
        let mut count = 0;
        for a in 0..n {
            for b in 0..n {
                if a == b || labels[a * n + b] != usize::MAX {
                    continue;
                }
                labels[a * n + b] = count;
                let mut stack = vec![(a, b)];
                while let Some((x, y)) = stack.pop() {
                    for s in &g.generators {
                        let (x2, y2) = (s.image(x), s.image(y));
                        if labels[x2 * n + y2] == usize::MAX {
                            labels[x2 * n + y2] = count;
                            stack.push((x2, y2));
                        }
                    }
                }
                count += 1;
            }
        }
        let mut pairing = vec![usize::MAX; count];
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    pairing[labels[a * n + b]] = labels[b * n + a];
                }
            }
        }
        OrbitalDecomposition { n, labels, pairing }
    }

    /// Number of orbitals on ordered pairs of distinct points.
    pub fn count(&self) -> usize {
        self.pairing.len()
    }

    pub fn label(&self, a: usize, b: usize) -> usize {
        assert!(a != b);
        self.labels[a * self.n + b]
    }

    /// Index of the paired orbital.
    pub fn paired(&self, orbital: usize) -> usize {
        self.pairing[orbital]
    }

    pub fn is_self_paired(&self, orbital: usize) -> bool {
        self.pairing[orbital] == orbital
    }

    /// The suborbit `Λ(a)` of `orbital` at `a`.
    pub fn section(&self, orbital: usize, a: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&b| b != a && self.label(a, b) == orbital)
            .collect()
    }

    /// Every pair carrying `orbital`, in lexicographic order.
    pub fn pairs(&self, orbital: usize) -> Vec<(usize, usize)> {
        let n = self.n;
        (0..n * n)
            .map(|p| (p / n, p % n))
            .filter(|&(a, b)| a != b && self.label(a, b) == orbital)
            .collect()
    }
}

/// Sizes of the arc, reverse-arc and per-orbital sections at one vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuborbitSizes {
    pub out: usize,
    pub inn: usize,
    /// `per_orbital[λ] = |Λ(v)|`, zero for orbitals not starting at `v`.
    pub per_orbital: Vec<usize>,
}

pub fn suborbit_sizes(g: &PermGroup, d: &SDigraph, v: usize) -> Result<SuborbitSizes> {
    if !g.acts_on(d) {
        return Err(Error::NotAutomorphism);
    }
    if v >= d.n() {
        return Err(Error::IndexOutOfRange { index: v, n: d.n() });
    }
    let orbitals = g.orbital_decomposition();
    let mut per_orbital = vec![0; orbitals.count()];
    for w in (0..d.n()).filter(|&w| w != v) {
        per_orbital[orbitals.label(v, w)] += 1;
    }
    Ok(SuborbitSizes {
        out: d.out_set(v).len(),
        inn: d.in_set(v).len(),
        per_orbital,
    })
}

/// Groups at or below this order have their elements listed explicitly for
/// subset minimisation; larger groups fall back to orbit search.
pub const ELEMENT_LIST_LIMIT: u128 = 10_000;

/// Repeated lexicographic minimisation of subsets (as masks) under a group
/// of degree at most 64.
pub struct OrbitMinimizer {
    chunks: usize,
    /// per element: `chunks` tables of 16 partial images
    tables: Vec<u64>,
    elements: usize,
    /// used instead of `tables` for large groups
    gen_tables: Vec<u64>,
    gens: usize,
}

impl OrbitMinimizer {
    pub fn new(g: &PermGroup) -> Self {
        assert!(g.degree() <= 64, "mask minimisation needs degree <= 64");
        let chunks = g.degree().div_ceil(4).max(1);
        let fill = |out: &mut Vec<u64>, p: &Permutation| {
            for c in 0..chunks {
                for nib in 0..16u64 {
                    out.push(p.apply_mask((nib << (4 * c)) & full_mask(p.degree())));
                }
            }
        };
        let mut m = OrbitMinimizer {
            chunks,
            tables: Vec::new(),
            elements: 0,
            gen_tables: Vec::new(),
            gens: 0,
        };
        if g.order() <= ELEMENT_LIST_LIMIT {
            g.for_each_element(|p| {
                if !p.is_identity() {
                    fill(&mut m.tables, p);
                    m.elements += 1;
                }
            });
        } else {
            for p in g.generators() {
                fill(&mut m.gen_tables, p);
            }
            m.gens = g.generators().len();
        }
        m
    }

    #[inline]
    fn image(&self, table: &[u64], mask: u64) -> u64 {
        let mut out = 0;
        for c in 0..self.chunks {
            out |= table[c * 16 + ((mask >> (4 * c)) & 15) as usize];
        }
        out
    }

    /// True iff no group element maps `mask` to a lexicographically smaller
    /// set.
    pub fn is_min(&self, mask: u64) -> bool {
        if self.gens > 0 {
            return self.min_mask(mask) == mask;
        }
        let stride = self.chunks * 16;
        self.tables
            .chunks_exact(stride)
            .all(|t| !mask_lex_less(self.image(t, mask), mask))
    }

    pub fn min_mask(&self, mask: u64) -> u64 {
        let stride = self.chunks * 16;
        if self.gens == 0 {
            return self.tables.chunks_exact(stride).fold(mask, |best, t| {
                let img = self.image(t, mask);
                if mask_lex_less(img, best) {
                    img
                } else {
                    best
                }
            });
        }
        let mut seen = BTreeSet::from([mask]);
        let mut queue = VecDeque::from([mask]);
        let mut best = mask;
        while let Some(m) = queue.pop_front() {
            for t in self.gen_tables.chunks_exact(stride) {
                let img = self.image(t, m);
                if seen.insert(img) {
                    if mask_lex_less(img, best) {
                        best = img;
                    }
                    queue.push_back(img);
                }
            }
        }
        best
    }
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}
