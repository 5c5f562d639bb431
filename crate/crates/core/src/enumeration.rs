//! Isomorph-free generation of all s-digraphs of small order, and the
//! cross-check of the set-homogeneous ones against [`theorem_list`].
//!
//! Generation is by canonical augmentation: a child obtained by adding a
//! vertex to a parent is kept iff the new vertex lies in the same
//! automorphism orbit as the vertex labelled last by the canonical form, and
//! it is the first child of that parent with its code.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::catalog::theorem_list;
use crate::digraph::{PairState, SDigraph};
use crate::error::{Error, Result};
use crate::homo::check_set_homogeneous;
use crate::iso::{canonical_form, canonical_form_with_automorphisms};
use crate::perm::orbits_of;

/// Largest order [`enumerate_all`] accepts.
pub const ENUMERATION_CAP: usize = 6;

/// `out[n]` holds one canonical code per isomorphism class of order `n`,
/// sorted, for `n` in `0..=max_n`.
pub fn enumerate_all(max_n: usize) -> Result<Vec<Vec<Vec<u8>>>> {
    if max_n > ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            requested: max_n,
            cap: ENUMERATION_CAP,
        });
    }
    let mut out = vec![vec![SDigraph::empty(0)?.pair_code()]];
    for n in 1..=max_n {
        let mut level = Vec::new();
        for parent in &out[n - 1] {
            level.extend(children(&SDigraph::from_pair_code(parent)?));
        }
        level.sort();
        out.push(level);
    }
    Ok(out)
}

/// Accepted one-vertex extensions of `parent`, as canonical codes.
fn children(parent: &SDigraph) -> Vec<Vec<u8>> {
    let m = parent.n();
    let mut seen = BTreeSet::new();
    let mut kept = Vec::new();
    // new vertex m; the state of (i, m) is base-4 digit i, vertex 0 most
    // significant
    for word in 0..4usize.pow(m as u32) {
        let child = SDigraph::from_fn(m + 1, |i, j| {
            if j < m {
                parent.state(i, j)
            } else {
                PairState::from_bits(((word >> (2 * (m - 1 - i))) & 3) as u8)
            }
        })
        .unwrap();
        let (form, gens) = canonical_form_with_automorphisms(&child);
        let last = form.relabeling.inverse().image(m);
        let same_orbit = last == m
            || orbits_of(m + 1, &gens)
                .iter()
                .any(|o| o.contains(&m) && o.contains(&last));
        if same_orbit && seen.insert(form.code.clone()) {
            kept.push(form.code);
        }
    }
    kept
}

#[derive(Clone, Debug)]
pub struct Survivor {
    pub code: Vec<u8>,
    /// Matching theorem-list label, if any.
    pub label: Option<String>,
}

#[derive(Clone, Debug)]
pub struct CrossCheckReport {
    pub max_n: usize,
    /// Isomorphism classes per order `0..=max_n`.
    pub counts: Vec<usize>,
    /// Set-homogeneous classes of order `1..=max_n`, sorted by code.
    pub survivors: Vec<Survivor>,
    /// Theorem-list members with no set-homogeneous class.
    pub missing: Vec<String>,
    /// Survivors not on the theorem list.
    pub unexpected: Vec<Vec<u8>>,
    /// Whether the survivors are closed under complement and converse.
    pub closed: bool,
}

impl CrossCheckReport {
    pub fn is_clean(&self) -> bool {
        self.missing.is_empty() && self.unexpected.is_empty() && self.closed
    }
}

pub fn classify_cross_check(max_n: usize) -> Result<CrossCheckReport> {
    let all = enumerate_all(max_n)?;
    let counts = all.iter().map(Vec::len).collect();
    let listed: BTreeMap<Vec<u8>, String> = theorem_list(max_n)
        .into_iter()
        .map(|(label, d)| (canonical_form(&d).code, label))
        .collect();

    let mut survivors = Vec::new();
    for code in all.iter().skip(1).flatten() {
        let d = SDigraph::from_pair_code(code)?;
        if check_set_homogeneous(&d)?.holds {
            survivors.push(Survivor {
                code: code.clone(),
                label: listed.get(code).cloned(),
            });
        }
    }
    survivors.sort_by(|a, b| a.code.cmp(&b.code));

    let found: BTreeSet<&Vec<u8>> = survivors.iter().map(|s| &s.code).collect();
    let missing = listed
        .iter()
        .filter(|(code, _)| !found.contains(code))
        .map(|(_, label)| label.clone())
        .collect();
    let unexpected = survivors
        .iter()
        .filter(|s| s.label.is_none())
        .map(|s| s.code.clone())
        .collect();
    let closed = survivors.iter().all(|s| {
        let d = SDigraph::from_pair_code(&s.code).unwrap();
        found.contains(&canonical_form(&d.complement()).code)
            && found.contains(&canonical_form(&d.converse()).code)
    });
    Ok(CrossCheckReport {
        max_n,
        counts,
        survivors,
        missing,
        unexpected,
        closed,
    })
}
