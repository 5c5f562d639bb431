//! Canonical labelling, isomorphism testing and automorphism groups.
//!
//! The search is the usual individualisation-refinement tree. Partitions are
//! refined to equitability with respect to the four pair states, the target
//! cell is the first smallest non-singleton cell, and leaves are compared by
//! their pair code; the canonical leaf is the one with the least code.
//! Automorphisms are harvested whenever two leaves share a code, and they
//! prune siblings lying in a common orbit of the automorphisms found so far
//! that fix the current path pointwise.

use alloc::vec;
use alloc::vec::Vec;

use crate::digraph::{SDigraph, CODE_VERSION};
use crate::perm::{PermGroup, Permutation};

/// An isomorphism-invariant certificate of an s-digraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    /// Maps each input vertex to its canonical position.
    pub relabeling: Permutation,
    /// Pair code of the relabelled digraph: `0x01`, `n`, then the packed
    /// upper triangle.
    pub code: Vec<u8>,
}

impl CanonicalForm {
    /// The relabelled digraph, decoded from `code`.
    pub fn digraph(&self) -> SDigraph {
        SDigraph::from_pair_code(&self.code).expect("canonical codes are well formed")
    }
}

pub fn canonical_form(d: &SDigraph) -> CanonicalForm {
    canonical_form_with_automorphisms(d).0
}

/// Canonical form plus a generating set of `Aut(d)` from the same search.
pub fn canonical_form_with_automorphisms(d: &SDigraph) -> (CanonicalForm, Vec<Permutation>) {
    let mut s = Search::new(d);
    let mut part = Partition::unit(d.n());
    part.refine(&s.adj, s.n);
    let mut path = Vec::new();
    s.visit(part, &mut path);
    let n = d.n();
    let best = s.best.expect("search reaches at least one leaf");
    let mut images = vec![0; n];
    for (p, &v) in best.order.iter().enumerate() {
        images[v] = p;
    }
    let form = CanonicalForm {
        relabeling: Permutation::new(images).unwrap(),
        code: best.code,
    };
    (form, s.gens)
}

/// Generators of the full automorphism group.
pub fn automorphism_group(d: &SDigraph) -> PermGroup {
    let (_, gens) = canonical_form_with_automorphisms(d);
    PermGroup::from_generators(d.n(), &gens).expect("generators have the digraph's degree")
}

/// A vertex bijection `f` with `d1.state(i, j) == d2.state(f(i), f(j))`.
pub fn find_isomorphism(d1: &SDigraph, d2: &SDigraph) -> Option<Permutation> {
    if d1.n() != d2.n() || d1.census() != d2.census() {
        return None;
    }
    let c1 = canonical_form(d1);
    let c2 = canonical_form(d2);
    if c1.code != c2.code {
        return None;
    }
    let back = c2.relabeling.inverse();
    Some(c1.relabeling.then(&back))
}

pub fn are_isomorphic(d1: &SDigraph, d2: &SDigraph) -> bool {
    find_isomorphism(d1, d2).is_some()
}

/// Ordered partition of the vertices.
#[derive(Clone, Debug)]
struct Partition {
    order: Vec<usize>,
    /// start positions of the cells, increasing, first entry 0
    starts: Vec<usize>,
}

impl Partition {
    fn unit(n: usize) -> Self {
        Partition {
            order: (0..n).collect(),
            starts: if n == 0 { Vec::new() } else { vec![0] },
        }
    }

    fn is_discrete(&self) -> bool {
        self.starts.len() == self.order.len()
    }

    fn cell(&self, c: usize) -> (usize, usize) {
        let end = self.starts.get(c + 1).copied().unwrap_or(self.order.len());
        (self.starts[c], end)
    }

    /// First smallest non-singleton cell.
    fn target(&self) -> (usize, usize) {
        (0..self.starts.len())
            .map(|c| self.cell(c))
            .filter(|(s, e)| e - s > 1)
            .min_by_key(|(s, e)| (e - s, *s))
            .expect("partition is not discrete")
    }

    fn individualize(&mut self, start: usize, v: usize) {
        let at = self.order[start..].iter().position(|&x| x == v).unwrap() + start;
        self.order[start..=at].rotate_right(1);
        let c = self.starts.binary_search(&start).unwrap();
        self.starts.insert(c + 1, start + 1);
    }

    /// Splits cells by the number of arcs, reverse arcs and edges into each
    /// splitter cell until the partition is equitable.
    fn refine(&mut self, adj: &[u8], n: usize) {
        let mut key = vec![0u32; n];
        'outer: loop {
            for w in 0..self.starts.len() {
                let (ws, we) = self.cell(w);
                for k in key.iter_mut() {
                    *k = 0;
                }
                for &x in &self.order[ws..we] {
                    for (v, k) in key.iter_mut().enumerate() {
                        // counts are below 256: pack (arc, rev, edge) into one key
                        match adj[v * n + x] {
                            1 => *k += 1 << 16,
                            2 => *k += 1 << 8,
                            3 => *k += 1,
                            _ => {}
                        }
                    }
                }
                let mut split = false;
                let mut new_starts = Vec::with_capacity(self.starts.len() + 4);
                for c in 0..self.starts.len() {
                    let (s, e) = self.cell(c);
                    new_starts.push(s);
                    if e - s == 1 {
                        continue;
                    }
                    let seg = &mut self.order[s..e];
                    seg.sort_by_key(|&v| key[v]);
                    for p in s + 1..e {
                        if key[self.order[p]] != key[self.order[p - 1]] {
                            new_starts.push(p);
                            split = true;
                        }
                    }
                }
                if split {
                    self.starts = new_starts;
                    continue 'outer;
                }
            }
            break;
        }
    }
}

struct Leaf {
    order: Vec<usize>,
    code: Vec<u8>,
    path: Vec<usize>,
}

struct Search {
    n: usize,
    adj: Vec<u8>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    gens: Vec<Permutation>,
}

impl Search {
    fn new(d: &SDigraph) -> Self {
        let n = d.n();
        let mut adj = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    adj[i * n + j] = d.state(i, j).bits();
                }
            }
        }
        Search {
            n,
            adj,
            first: None,
            best: None,
            gens: Vec::new(),
        }
    }

    fn code(&self, order: &[usize]) -> Vec<u8> {
        let n = self.n;
        let pairs = n * n.saturating_sub(1) / 2;
        let mut out = vec![0u8; 2 + pairs.div_ceil(4)];
        out[0] = CODE_VERSION;
        out[1] = n as u8;
        let mut p = 0;
        for a in 0..n {
            let row = order[a] * n;
            for &vb in &order[a + 1..] {
                out[2 + (p >> 2)] |= self.adj[row + vb] << (6 - 2 * (p & 3));
                p += 1;
            }
        }
        out
    }

    /// Returns the depth to jump back to, if an automorphism made the rest of
    /// some ancestor's subtree redundant.
    fn visit(&mut self, part: Partition, path: &mut Vec<usize>) -> Option<usize> {
        if part.is_discrete() {
            return self.leaf(part.order, path);
        }
        let (start, end) = part.target();
        let mut cell = part.order[start..end].to_vec();
        cell.sort_unstable();
        for &v in &cell {
            if !self.orbit_min(v, path) {
                continue;
            }
            let mut child = part.clone();
            child.individualize(start, v);
            child.refine(&self.adj, self.n);
            path.push(v);
            let jump = self.visit(child, path);
            path.pop();
            if let Some(t) = jump {
                if t < path.len() {
                    return Some(t);
                }
            }
        }
        None
    }

    /// Whether `v` is least in its orbit under the automorphisms found so far
    /// that fix `path` pointwise.
    fn orbit_min(&self, v: usize, path: &[usize]) -> bool {
        let fixing: Vec<&Permutation> = self
            .gens
            .iter()
            .filter(|g| path.iter().all(|&p| g.fixes(p)))
            .collect();
        if fixing.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.n];
        seen[v] = true;
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            for g in &fixing {
                let y = g.image(x);
                if y < v {
                    return false;
                }
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        true
    }

    fn leaf(&mut self, order: Vec<usize>, path: &[usize]) -> Option<usize> {
        let code = self.code(&order);
        let Some(first) = &self.first else {
            let leaf = Leaf {
                order: order.clone(),
                code: code.clone(),
                path: path.to_vec(),
            };
            self.first = Some(leaf);
            self.best = Some(Leaf {
                order,
                code,
                path: path.to_vec(),
            });
            return None;
        };
        if code == first.code {
            let (g, depth) = automorphism(&first.order, &order, &first.path, path);
            self.gens.push(g);
            return Some(depth);
        }
        let best = self.best.as_ref().unwrap();
        if code == best.code {
            let (g, depth) = automorphism(&best.order, &order, &best.path, path);
            self.gens.push(g);
            return Some(depth);
        }
        if code < best.code {
            self.best = Some(Leaf {
                order,
                code,
                path: path.to_vec(),
            });
        }
        None
    }
}

fn automorphism(from: &[usize], to: &[usize], from_path: &[usize], to_path: &[usize]) -> (Permutation, usize) {
    let mut images = vec![0; from.len()];
    for (&a, &b) in from.iter().zip(to) {
        images[a] = b;
    }
    let depth = from_path
        .iter()
        .zip(to_path)
        .take_while(|(a, b)| a == b)
        .count();
    (Permutation::new(images).unwrap(), depth)
}
