//! The s-digraph data model.
//!
//! Every unordered pair of distinct vertices carries exactly one of four
//! states: unrelated, an arc in one of two directions, or an (undirected)
//! edge. States are stored two bits per pair in a flat upper-triangular
//! array, oriented from the smaller index to the larger one.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};

/// Largest vertex count an [`SDigraph`] may have. Canonical codes store the
/// order in a single byte.
pub const MAX_VERTICES: usize = 255;

/// Version byte that opens every pair code.
pub const CODE_VERSION: u8 = 0x01;

/// The relation carried by an ordered pair `(i, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum PairState {
    Unrelated = 0,
    /// `i -> j`
    Arc = 1,
    /// `j -> i`
    RevArc = 2,
    /// `i ~ j`
    Edge = 3,
}

impl PairState {
    pub const ALL: [PairState; 4] = [
        PairState::Unrelated,
        PairState::Arc,
        PairState::RevArc,
        PairState::Edge,
    ];

    /// The state of the reversed pair.
    #[inline]
    pub const fn flip(self) -> Self {
        match self {
            PairState::Arc => PairState::RevArc,
            PairState::RevArc => PairState::Arc,
            s => s,
        }
    }

    #[inline]
    pub const fn bits(self) -> u8 {
        self as u8
    }

    #[inline]
    pub const fn from_bits(bits: u8) -> Self {
        match bits & 3 {
            0 => PairState::Unrelated,
            1 => PairState::Arc,
            2 => PairState::RevArc,
            _ => PairState::Edge,
        }
    }

    /// Swap edge and unrelated, reverse arcs.
    #[inline]
    pub const fn complement(self) -> Self {
        match self {
            PairState::Unrelated => PairState::Edge,
            PairState::Edge => PairState::Unrelated,
            s => s.flip(),
        }
    }
}

/// A finite s-digraph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SDigraph {
    n: usize,
    packed: Vec<u8>,
}

#[inline]
fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

#[inline]
fn tri_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl SDigraph {
    /// The digraph on `n` vertices with every pair unrelated.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(SDigraph {
            n,
            packed: vec![0; pair_count(n).div_ceil(4)],
        })
    }

    /// Builds a digraph from explicit assignments; unlisted pairs are
    /// unrelated.
    pub fn new(n: usize, assignments: &[(usize, usize, PairState)]) -> Result<Self> {
        let mut d = SDigraph::empty(n)?;
        let mut seen = vec![false; pair_count(n)];
        for &(i, j, s) in assignments {
            for v in [i, j] {
                if v >= n {
                    return Err(Error::IndexOutOfRange { index: v, n });
                }
            }
            if i == j {
                return Err(Error::SelfLoop(i));
            }
            let (a, b) = if i < j { (i, j) } else { (j, i) };
            let p = tri_index(n, a, b);
            if seen[p] {
                return Err(Error::DuplicatePair(a, b));
            }
            seen[p] = true;
            d.set(i, j, s);
        }
        Ok(d)
    }

    /// Builds a digraph by evaluating `f(i, j)` for every `i < j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> PairState) -> Result<Self> {
        let mut d = SDigraph::empty(n)?;
        for i in 0..n {
            for j in i + 1..n {
                d.set(i, j, f(i, j));
            }
        }
        Ok(d)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn raw(&self, p: usize) -> u8 {
        (self.packed[p >> 2] >> (6 - 2 * (p & 3))) & 3
    }

    /// State of the ordered pair `(i, j)`. Panics if `i == j` or either index
    /// is out of range.
    #[inline]
    pub fn state(&self, i: usize, j: usize) -> PairState {
        assert!(i != j, "no state on the diagonal");
        assert!(i < self.n && j < self.n, "vertex out of range");
        if i < j {
            PairState::from_bits(self.raw(tri_index(self.n, i, j)))
        } else {
            PairState::from_bits(self.raw(tri_index(self.n, j, i))).flip()
        }
    }

    /// Sets the state of `(i, j)`; `(j, i)` follows by consistency.
    pub fn set(&mut self, i: usize, j: usize, s: PairState) {
        assert!(i != j && i < self.n && j < self.n);
        let (p, s) = if i < j {
            (tri_index(self.n, i, j), s)
        } else {
            (tri_index(self.n, j, i), s.flip())
        };
        let shift = 6 - 2 * (p & 3);
        let byte = &mut self.packed[p >> 2];
        *byte = (*byte & !(3 << shift)) | (s.bits() << shift);
    }

    #[inline]
    pub fn is_arc(&self, i: usize, j: usize) -> bool {
        i != j && self.state(i, j) == PairState::Arc
    }

    #[inline]
    pub fn is_edge(&self, i: usize, j: usize) -> bool {
        i != j && self.state(i, j) == PairState::Edge
    }

    #[inline]
    pub fn is_unrelated(&self, i: usize, j: usize) -> bool {
        i != j && self.state(i, j) == PairState::Unrelated
    }

    /// All arcs `(i, j)` with `i -> j`, in lexicographic order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.is_arc(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// All edges `{i, j}` as `(i, j)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.pairs_with(PairState::Edge)
    }

    fn pairs_with(&self, s: PairState) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.state(i, j) == s {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Counts of (edges, arcs, unrelated pairs). They sum to `n(n-1)/2`.
    pub fn census(&self) -> (usize, usize, usize) {
        let mut c = [0usize; 4];
        for p in 0..pair_count(self.n) {
            c[self.raw(p) as usize] += 1;
        }
        (c[3], c[1] + c[2], c[0])
    }

    pub fn is_a_digraph(&self) -> bool {
        self.census().0 == 0
    }

    pub fn is_graph(&self) -> bool {
        self.census().1 == 0
    }

    pub fn is_tournament(&self) -> bool {
        let (e, _, u) = self.census();
        e == 0 && u == 0
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: v, n: self.n })
        }
    }

    /// The four neighbourhoods of `v`.
    pub fn neighborhoods(&self, v: usize) -> Result<Neighborhoods> {
        self.check_vertex(v)?;
        let mut nb = Neighborhoods::default();
        for w in (0..self.n).filter(|&w| w != v) {
            match self.state(v, w) {
                PairState::Arc => nb.out.insert(w),
                PairState::RevArc => nb.inn.insert(w),
                PairState::Edge => nb.edge.insert(w),
                PairState::Unrelated => nb.unrelated.insert(w),
            }
        }
        Ok(nb)
    }

    /// Out-neighbourhood `Γ(v)`.
    pub fn out_set(&self, v: usize) -> VertexSet {
        (0..self.n).filter(|&w| self.is_arc(v, w)).collect()
    }

    /// In-neighbourhood `Γ*(v)`.
    pub fn in_set(&self, v: usize) -> VertexSet {
        (0..self.n).filter(|&w| self.is_arc(w, v)).collect()
    }

    fn map_states(&self, f: impl Fn(PairState) -> PairState) -> SDigraph {
        let mut d = self.clone();
        for i in 0..self.n {
            for j in i + 1..self.n {
                d.set(i, j, f(self.state(i, j)));
            }
        }
        d
    }

    /// Edge and unrelated swapped, every arc reversed.
    pub fn complement(&self) -> SDigraph {
        self.map_states(PairState::complement)
    }

    /// Every arc reversed; edges and unrelated pairs kept.
    pub fn weak_complement(&self) -> SDigraph {
        self.map_states(PairState::flip)
    }

    /// Same as [`SDigraph::weak_complement`].
    pub fn converse(&self) -> SDigraph {
        self.weak_complement()
    }

    /// `U[V]`: vertex `(u, v)` is numbered `u * |V| + v`.
    ///
    /// Panics if the product has more than [`MAX_VERTICES`] vertices.
    pub fn comp_product(&self, inner: &SDigraph) -> SDigraph {
        let m = inner.n;
        SDigraph::from_fn(self.n * m, |a, b| {
            let (u1, v1, u2, v2) = (a / m, a % m, b / m, b % m);
            if u1 == u2 {
                inner.state(v1, v2)
            } else {
                self.state(u1, u2)
            }
        })
        .expect("compositional product too large")
    }

    /// `U × V`: related in a state iff both coordinates are, componentwise.
    ///
    /// Panics if the product has more than [`MAX_VERTICES`] vertices.
    pub fn direct_product(&self, other: &SDigraph) -> SDigraph {
        let m = other.n;
        SDigraph::from_fn(self.n * m, |a, b| {
            let (u1, v1, u2, v2) = (a / m, a % m, b / m, b % m);
            if u1 == u2 || v1 == v2 {
                return PairState::Unrelated;
            }
            let (s, t) = (self.state(u1, u2), other.state(v1, v2));
            match (s, t) {
                (PairState::Edge, PairState::Edge) => PairState::Edge,
                (PairState::Arc, PairState::Arc) => PairState::Arc,
                (PairState::RevArc, PairState::RevArc) => PairState::RevArc,
                _ => PairState::Unrelated,
            }
        })
        .expect("direct product too large")
    }

    /// The substructure on `s`, relabelled order-preservingly to `0..|s|`.
    pub fn induced(&self, s: &VertexSet) -> Result<SDigraph> {
        let verts: Vec<usize> = s.iter().collect();
        if let Some(&v) = verts.last() {
            self.check_vertex(v)?;
        }
        Ok(self.induced_on(&verts))
    }

    /// Substructure on an explicit vertex list, in the list's order.
    pub fn induced_on(&self, verts: &[usize]) -> SDigraph {
        SDigraph::from_fn(verts.len(), |a, b| self.state(verts[a], verts[b]))
            .expect("induced substructure is never larger than its parent")
    }

    /// The digraph with vertex `i` renamed to `images[i]`.
    pub fn relabeled(&self, images: &[usize]) -> SDigraph {
        assert_eq!(images.len(), self.n);
        let mut d = SDigraph::empty(self.n).expect("same order");
        for i in 0..self.n {
            for j in i + 1..self.n {
                d.set(images[i], images[j], self.state(i, j));
            }
        }
        d
    }

    /// Connected components after deleting every edge and forgetting arc
    /// direction. Components are sorted by their least vertex.
    pub fn gamma_components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut k = 0;
            while k < members.len() {
                let v = members[k];
                k += 1;
                for w in 0..self.n {
                    if w != v
                        && comp[w] == usize::MAX
                        && matches!(self.state(v, w), PairState::Arc | PairState::RevArc)
                    {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Classes of `x ≡ y ⇔ Γ(x) = Γ(y)`, or of `Γ*(x) = Γ*(y)` when `dual`.
    pub fn same_out_congruence(&self, dual: bool) -> Vec<Vec<usize>> {
        let mut classes: BTreeMap<VertexSet, Vec<usize>> = BTreeMap::new();
        for v in 0..self.n {
            let key = if dual { self.in_set(v) } else { self.out_set(v) };
            classes.entry(key).or_default().push(v);
        }
        let mut out: Vec<Vec<usize>> = classes.into_values().collect();
        out.sort_unstable();
        out
    }

    /// `{(a, b) : ∃c, r1(a, c) ∧ r2(c, b)}` over distinct `a, c` and `c, b`.
    /// The result is sorted and may contain `(a, a)`.
    pub fn relation_compose(
        &self,
        r1: impl Fn(usize, usize) -> bool,
        r2: impl Fn(usize, usize) -> bool,
    ) -> Vec<(usize, usize)> {
        let n = self.n;
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if (0..n).any(|c| c != a && c != b && r1(a, c) && r2(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// [`SDigraph::relation_compose`] for two pair-state relations.
    pub fn compose_states(&self, s1: PairState, s2: PairState) -> Vec<(usize, usize)> {
        self.relation_compose(|a, c| self.state(a, c) == s1, |c, b| self.state(c, b) == s2)
    }

    /// The identity-labelled pair code: version byte, order byte, then the
    /// upper triangle row by row at two bits per pair, most significant
    /// bits first.
    pub fn pair_code(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(2 + self.packed.len());
        out.push(CODE_VERSION);
        out.push(self.n as u8);
        out.extend_from_slice(&self.packed);
        out
    }

    /// Inverse of [`SDigraph::pair_code`].
    pub fn from_pair_code(code: &[u8]) -> Result<SDigraph> {
        let (&version, rest) = code.split_first().ok_or(Error::MalformedCode("empty"))?;
        if version != CODE_VERSION {
            return Err(Error::MalformedCode("unknown version"));
        }
        let (&n, packed) = rest.split_first().ok_or(Error::MalformedCode("missing order"))?;
        let n = n as usize;
        if packed.len() != pair_count(n).div_ceil(4) {
            return Err(Error::MalformedCode("length does not match order"));
        }
        let pc = pair_count(n);
        if !pc.is_multiple_of(4) {
            let last = packed[packed.len() - 1];
            let used = 2 * (pc % 4);
            if last & (0xffu8 >> used) != 0 {
                return Err(Error::MalformedCode("nonzero padding"));
            }
        }
        Ok(SDigraph {
            n,
            packed: packed.to_vec(),
        })
    }
}

impl fmt::Debug for SDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SDigraph(n={})", self.n)?;
        for i in 0..self.n {
            for j in 0..self.n {
                let c = if i == j {
                    '.'
                } else {
                    match self.state(i, j) {
                        PairState::Unrelated => '0',
                        PairState::Arc => '>',
                        PairState::RevArc => '<',
                        PairState::Edge => '~',
                    }
                };
                write!(f, "{c}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// `Γ(v)`, `Γ*(v)`, the edge neighbours and the unrelated vertices of `v`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Neighborhoods {
    pub out: VertexSet,
    pub inn: VertexSet,
    pub edge: VertexSet,
    pub unrelated: VertexSet,
}

/// A sorted, duplicate-free set of vertices backed by a bitset.
///
/// Sets compare lexicographically as sorted sequences, so `{0, 3} < {1, 2}`
/// and `{0, 1} < {0, 1, 2}`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new() -> Self {
        VertexSet::default()
    }

    pub fn from_mask(mask: u64) -> Self {
        let mut s = VertexSet { words: vec![mask] };
        s.trim();
        s
    }

    /// The set as a 64-bit mask, if every member is below 64.
    pub fn mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, v: usize) {
        let w = v / 64;
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        if let Some(w) = self.words.get_mut(v / 64) {
            *w &= !(1 << (v % 64));
        }
        self.trim();
    }

    pub fn contains(&self, v: usize) -> bool {
        self.words
            .get(v / 64)
            .is_some_and(|w| w & (1 << (v % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn largest(&self) -> Option<usize> {
        let w = self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - w.leading_zeros() as usize)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Lexicographic comparison of two equal-width masks read as sorted vertex
/// sequences of the same cardinality: `a` precedes `b` iff the least vertex
/// in which they differ belongs to `a`.
#[inline]
pub fn mask_lex_less(a: u64, b: u64) -> bool {
    let d = a ^ b;
    d != 0 && a & d & d.wrapping_neg() != 0
}
