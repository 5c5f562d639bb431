//! Set-homogeneity, k-set-homogeneity, k-homogeneity and homogeneity.
//!
//! Subset questions are answered from one representative per orbit of
//! `Aut(d)` on vertex subsets, produced by an orderly algorithm: a set is
//! kept iff it is the lexicographically least set in its orbit, and every
//! kept set minus its largest element is again kept. Isomorphic induced
//! substructures on two different representatives refute set-homogeneity.
//!
//! Tuple questions walk the tree of orbit representatives of injective
//! tuples: the children of `t` are `t` extended by the least point of each
//! orbit of the pointwise stabilizer `G_t`. Two leaves with equal ordered
//! type give an isomorphism that no automorphism extends.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::digraph::{SDigraph, VertexSet};
use crate::error::{Error, Result};
use crate::iso::{automorphism_group, canonical_form, find_isomorphism};
use crate::perm::{orbits_of, OrbitMinimizer, PermGroup, Permutation};

/// One representative per orbit on subsets, grouped by size.
#[derive(Clone, Debug)]
pub struct SubsetOrbitCatalog {
    /// `levels[k]`: lex-least orbit representatives of size `k`, in
    /// increasing lexicographic order, with the canonical code of the
    /// induced substructure.
    pub levels: Vec<Vec<(VertexSet, Vec<u8>)>>,
    pub group_order: u128,
}

impl SubsetOrbitCatalog {
    pub fn count(&self, k: usize) -> usize {
        self.levels.get(k).map_or(0, Vec::len)
    }

    pub fn total(&self) -> u128 {
        self.levels.iter().map(|l| l.len() as u128).sum()
    }
}

/// Which predicate a verdict answers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Predicate {
    SetHomogeneous,
    KSetHomogeneous(usize),
    KHomogeneous(usize),
    /// k-homogeneous for every `k` up to the bound.
    Homogeneous(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Isomorphic induced substructures in different orbits.
    Subsets { u: VertexSet, v: VertexSet },
    /// `u[i] -> v[i]` is an isomorphism of induced substructures that no
    /// automorphism extends.
    NonExtending { u: Vec<usize>, v: Vec<usize> },
}

impl Witness {
    /// Recomputes the claim: the two sides induce isomorphic substructures
    /// and no element of `Aut(d)` carries one to the other.
    pub fn verify(&self, d: &SDigraph) -> bool {
        let aut = automorphism_group(d);
        let mut extends = false;
        match self {
            Witness::Subsets { u, v } => {
                if u.len() != v.len() || u == v {
                    return false;
                }
                let (Ok(du), Ok(dv)) = (d.induced(u), d.induced(v)) else {
                    return false;
                };
                if find_isomorphism(&du, &dv).is_none() {
                    return false;
                }
                aut.for_each_element(|g| extends |= g.apply_set(u) == *v);
            }
            Witness::NonExtending { u, v } => {
                let n = d.n();
                if u.len() != v.len() || u.iter().chain(v).any(|&x| x >= n) {
                    return false;
                }
                for i in 0..u.len() {
                    for j in 0..u.len() {
                        if i == j {
                            continue;
                        }
                        if (u[i] == u[j]) || (v[i] == v[j]) || d.state(u[i], u[j]) != d.state(v[i], v[j]) {
                            return false;
                        }
                    }
                }
                aut.for_each_element(|g| extends |= u.iter().zip(v).all(|(&a, &b)| g.image(a) == b));
            }
        }
        !extends
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneityVerdict {
    pub holds: bool,
    pub predicate: Predicate,
    /// Size of the substructures that refuted the predicate.
    pub failing_k: Option<usize>,
    pub witness: Option<Witness>,
}

impl HomogeneityVerdict {
    fn pass(predicate: Predicate) -> Self {
        HomogeneityVerdict {
            holds: true,
            predicate,
            failing_k: None,
            witness: None,
        }
    }

    fn fail(predicate: Predicate, k: usize, witness: Witness) -> Self {
        HomogeneityVerdict {
            holds: false,
            predicate,
            failing_k: Some(k),
            witness: Some(witness),
        }
    }
}

/// Orbit representatives of `g` on all subsets of `d`, with induced codes.
pub fn subset_orbit_reps(d: &SDigraph, g: &PermGroup) -> Result<SubsetOrbitCatalog> {
    subset_orbit_reps_up_to(d, g, d.n())
}

/// As [`subset_orbit_reps`], stopping after subsets of size `max_k`.
pub fn subset_orbit_reps_up_to(d: &SDigraph, g: &PermGroup, max_k: usize) -> Result<SubsetOrbitCatalog> {
    if g.degree() != d.n() || !g.acts_on(d) {
        return Err(Error::NotAutomorphism);
    }
    let mut levels = Vec::new();
    sweep(d, g, max_k, |_, level| {
        levels.push(
            level
                .iter()
                .map(|&m| (VertexSet::from_mask(m), code_of(d, m)))
                .collect(),
        );
        true
    })?;
    Ok(SubsetOrbitCatalog {
        levels,
        group_order: g.order(),
    })
}

pub fn check_set_homogeneous(d: &SDigraph) -> Result<HomogeneityVerdict> {
    let g = automorphism_group(d);
    let masks = RelationMasks::new(d)?;
    let mut failure = None;
    sweep(d, &g, d.n(), |k, level| match first_collision(d, &masks, level) {
        Some(w) => {
            failure = Some((k, w));
            false
        }
        None => true,
    })?;
    Ok(match failure {
        Some((k, w)) => HomogeneityVerdict::fail(Predicate::SetHomogeneous, k, w),
        None => HomogeneityVerdict::pass(Predicate::SetHomogeneous),
    })
}

pub fn check_k_set_homogeneous(d: &SDigraph, k: usize) -> Result<HomogeneityVerdict> {
    let g = automorphism_group(d);
    let masks = RelationMasks::new(d)?;
    let mut witness = None;
    sweep(d, &g, k, |j, level| {
        if j == k {
            witness = first_collision(d, &masks, level);
        }
        true
    })?;
    let p = Predicate::KSetHomogeneous(k);
    Ok(match witness {
        Some(w) => HomogeneityVerdict::fail(p, k, w),
        None => HomogeneityVerdict::pass(p),
    })
}

pub fn check_k_homogeneous(d: &SDigraph, k: usize) -> HomogeneityVerdict {
    let p = Predicate::KHomogeneous(k);
    match tuple_sweep(d, k, k) {
        Some((j, w)) => HomogeneityVerdict::fail(p, j, w),
        None => HomogeneityVerdict::pass(p),
    }
}

/// k-homogeneity for `k = 1..=max_k`; with `max_k = n` this is homogeneity.
pub fn check_homogeneous(d: &SDigraph, max_k: usize) -> HomogeneityVerdict {
    let p = Predicate::Homogeneous(max_k);
    match tuple_sweep(d, 1, max_k) {
        Some((j, w)) => HomogeneityVerdict::fail(p, j, w),
        None => HomogeneityVerdict::pass(p),
    }
}

fn code_of(d: &SDigraph, mask: u64) -> Vec<u8> {
    canonical_form(&d.induced(&VertexSet::from_mask(mask)).unwrap()).code
}

/// Orderly generation of subset orbit representatives, level by level.
/// `on_level` sees each level in increasing lexicographic order and returns
/// whether to go on.
fn sweep(d: &SDigraph, g: &PermGroup, max_k: usize, mut on_level: impl FnMut(usize, &[u64]) -> bool) -> Result<()> {
    let n = d.n();
    if n > 64 {
        return Err(Error::TooLargeForMasks(n));
    }
    let min = OrbitMinimizer::new(g);
    let mut level = vec![0u64];
    if !on_level(0, &level) {
        return Ok(());
    }
    for k in 1..=max_k.min(n) {
        let mut next = Vec::new();
        for &r in &level {
            // parents come in lex order, so children do too
            let start = 64 - r.leading_zeros() as usize;
            for v in start..n {
                let t = r | 1 << v;
                if min.is_min(t) {
                    next.push(t);
                }
            }
        }
        level = next;
        if !on_level(k, &level) {
            break;
        }
    }
    Ok(())
}

/// Out-, in- and edge-neighbourhoods as masks.
struct RelationMasks {
    out: Vec<u64>,
    inn: Vec<u64>,
    edge: Vec<u64>,
}

impl RelationMasks {
    fn new(d: &SDigraph) -> Result<Self> {
        let n = d.n();
        if n > 64 {
            return Err(Error::TooLargeForMasks(n));
        }
        let mut m = RelationMasks {
            out: vec![0; n],
            inn: vec![0; n],
            edge: vec![0; n],
        };
        for (a, b) in d.arcs() {
            m.out[a] |= 1 << b;
            m.inn[b] |= 1 << a;
        }
        for (a, b) in d.edges() {
            m.edge[a] |= 1 << b;
            m.edge[b] |= 1 << a;
        }
        Ok(m)
    }

    /// Sorted (out, in, edge) degree triples inside `t`.
    fn degree_key(&self, t: u64) -> Vec<u32> {
        let mut key: Vec<u32> = Members(t)
            .map(|v| {
                (self.out[v] & t).count_ones() << 16
                    | (self.inn[v] & t).count_ones() << 8
                    | (self.edge[v] & t).count_ones()
            })
            .collect();
        key.sort_unstable();
        key
    }
}

struct Members(u64);

impl Iterator for Members {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

/// The lex-least pair of representatives in `level` with isomorphic
/// induced substructures. Degree triples are compared first so that most
/// representatives are never canonicalised.
fn first_collision(d: &SDigraph, masks: &RelationMasks, level: &[u64]) -> Option<Witness> {
    let mut buckets: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
    for (i, &t) in level.iter().enumerate() {
        buckets.entry(masks.degree_key(t)).or_default().push(i);
    }
    let mut best: Option<(usize, usize)> = None;
    for idx in buckets.values().filter(|b| b.len() > 1) {
        let mut by_code: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
        for &i in idx {
            // idx is increasing, so the first holder of a code is its least set
            let first = *by_code.entry(code_of(d, level[i])).or_insert(i);
            if first != i && best.is_none_or(|b| (first, i) < b) {
                best = Some((first, i));
            }
        }
    }
    best.map(|(i, j)| Witness::Subsets {
        u: VertexSet::from_mask(level[i]),
        v: VertexSet::from_mask(level[j]),
    })
}

/// Ordered type of a tuple: the states of its pairs `(t_i, t_j)`, `i < j`.
fn tuple_type(d: &SDigraph, t: &[usize]) -> Vec<u8> {
    let mut out = Vec::with_capacity(t.len() * t.len() / 2);
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            out.push(d.state(t[i], t[j]).bits());
        }
    }
    out
}

/// A tuple-orbit representative with generators of its pointwise
/// stabilizer.
type TupleNode = (Vec<usize>, Vec<Permutation>);

/// Children of every node, in lexicographic order.
fn extend_tuples(n: usize, level: &[TupleNode]) -> Vec<TupleNode> {
    let mut next = Vec::new();
    for (t, stab) in level {
        for orbit in orbits_of(n, stab) {
            let x = orbit[0];
            if t.contains(&x) {
                continue;
            }
            let child = if stab.is_empty() {
                Vec::new()
            } else {
                PermGroup::from_generators(n, stab)
                    .unwrap()
                    .pointwise_stabilizer(&[x])
                    .generators()
                    .to_vec()
            };
            let mut c = t.clone();
            c.push(x);
            next.push((c, child));
        }
    }
    next
}

/// Walks the tuple-orbit tree to depth `to`, checking levels `from..=to`.
/// Returns the first failing size with the lex-least witness there.
fn tuple_sweep(d: &SDigraph, from: usize, to: usize) -> Option<(usize, Witness)> {
    let n = d.n();
    let to = to.min(n);
    let aut = automorphism_group(d);
    let mut level: Vec<TupleNode> = vec![(Vec::new(), aut.generators().to_vec())];
    for k in 1..=to {
        level = extend_tuples(n, &level);
        if k < from {
            continue;
        }
        // leaves are in lex order; keep the first holder of each type
        let mut seen: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
        let mut best: Option<(usize, usize)> = None;
        for (i, (t, _)) in level.iter().enumerate() {
            let ty = tuple_type(d, t);
            match seen.get(&ty) {
                Some(&first) => {
                    if best.is_none_or(|b| (first, i) < b) {
                        best = Some((first, i));
                    }
                }
                None => {
                    seen.insert(ty, i);
                }
            }
        }
        if let Some((i, j)) = best {
            return Some((
                k,
                Witness::NonExtending {
                    u: level[i].0.clone(),
                    v: level[j].0.clone(),
                },
            ));
        }
    }
    None
}

/// Number of orbits of `Aut(d)` on injective `k`-tuples and number of
/// ordered isomorphism types among them.
pub fn tuple_orbit_and_type_counts(d: &SDigraph, k: usize) -> (usize, usize) {
    let n = d.n();
    let aut = automorphism_group(d);
    let mut level: Vec<TupleNode> = vec![(Vec::new(), aut.generators().to_vec())];
    for _ in 0..k.min(n) {
        level = extend_tuples(n, &level);
    }
    let types: alloc::collections::BTreeSet<Vec<u8>> = level.iter().map(|(t, _)| tuple_type(d, t)).collect();
    (level.len(), types.len())
}
