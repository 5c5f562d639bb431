//! Named s-digraphs and a small expression language over them.
//!
//! ```text
//! expr    := term ('*' term)*
//! term    := primary ('[' expr ']')*
//! primary := NAME | NAME '(' INT (',' INT)? ')' | FUNC '(' expr ')' | '(' expr ')'
//! FUNC    := comp | wcomp | conv
//! ```
//!
//! Names are case-insensitive and whitespace between tokens is ignored.
//! `a[b]` is the compositional product and binds tighter than the direct
//! product `a*b`.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::digraph::{PairState, SDigraph, MAX_VERTICES};
use crate::error::{Error, Result};
use crate::iso::canonical_form;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CatalogExpr {
    /// `K(n)`
    Complete(usize),
    /// `Kbar(n)`
    Independent(usize),
    /// `Kmn(m, n)`
    CompleteBipartite(usize, usize),
    /// `C(n)`
    Cycle(usize),
    /// `D(n)`
    DirectedCycle(usize),
    P3,
    E6,
    E7,
    F6,
    J(usize),
    H0,
    H1,
    H2,
    H3,
    X,
    Complement(Box<CatalogExpr>),
    WeakComplement(Box<CatalogExpr>),
    Converse(Box<CatalogExpr>),
    /// `a[b]`
    Composition(Box<CatalogExpr>, Box<CatalogExpr>),
    /// `a*b`
    Product(Box<CatalogExpr>, Box<CatalogExpr>),
}

use CatalogExpr as E;

impl CatalogExpr {
    pub fn comp(self) -> Self {
        E::Complement(Box::new(self))
    }

    pub fn wcomp(self) -> Self {
        E::WeakComplement(Box::new(self))
    }

    pub fn conv(self) -> Self {
        E::Converse(Box::new(self))
    }

    pub fn of(self, inner: CatalogExpr) -> Self {
        E::Composition(Box::new(self), Box::new(inner))
    }

    pub fn times(self, other: CatalogExpr) -> Self {
        E::Product(Box::new(self), Box::new(other))
    }

    /// Number of vertices `build` would produce, or `None` on overflow.
    /// Does not validate parameters.
    pub fn order(&self) -> Option<usize> {
        Some(match self {
            E::Complete(n) | E::Independent(n) | E::Cycle(n) | E::DirectedCycle(n) => *n,
            E::CompleteBipartite(m, n) => m.checked_add(*n)?,
            E::P3 => 3,
            E::E6 | E::F6 => 6,
            E::E7 => 7,
            E::J(n) => n.checked_mul(3)?,
            E::H0 | E::H1 => 8,
            E::H2 => 12,
            E::H3 | E::X => 27,
            E::Complement(e) | E::WeakComplement(e) | E::Converse(e) => e.order()?,
            E::Composition(a, b) | E::Product(a, b) => a.order()?.checked_mul(b.order()?)?,
        })
    }
}

impl fmt::Display for CatalogExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            E::Complete(n) => write!(f, "K({n})"),
            E::Independent(n) => write!(f, "Kbar({n})"),
            E::CompleteBipartite(m, n) => write!(f, "Kmn({m},{n})"),
            E::Cycle(n) => write!(f, "C({n})"),
            E::DirectedCycle(n) => write!(f, "D({n})"),
            E::P3 => f.write_str("P3"),
            E::E6 => f.write_str("E6"),
            E::E7 => f.write_str("E7"),
            E::F6 => f.write_str("F6"),
            E::J(n) => write!(f, "J({n})"),
            E::H0 => f.write_str("H0"),
            E::H1 => f.write_str("H1"),
            E::H2 => f.write_str("H2"),
            E::H3 => f.write_str("H3"),
            E::X => f.write_str("X"),
            E::Complement(e) => write!(f, "comp({e})"),
            E::WeakComplement(e) => write!(f, "wcomp({e})"),
            E::Converse(e) => write!(f, "conv({e})"),
            E::Composition(a, b) => {
                if matches!(**a, E::Product(..)) {
                    write!(f, "({a})[{b}]")
                } else {
                    write!(f, "{a}[{b}]")
                }
            }
            E::Product(a, b) => {
                if matches!(**b, E::Product(..)) {
                    write!(f, "{a}*({b})")
                } else {
                    write!(f, "{a}*{b}")
                }
            }
        }
    }
}

pub fn build(expr: &CatalogExpr) -> Result<SDigraph> {
    let n = expr.order().unwrap_or(usize::MAX);
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices(n));
    }
    let positive = |n: usize, what: &str| {
        if n == 0 {
            Err(Error::ParamOutOfRange(format!("{what} needs a positive parameter")))
        } else {
            Ok(())
        }
    };
    match expr {
        E::Complete(n) => {
            positive(*n, "K")?;
            SDigraph::from_fn(*n, |_, _| PairState::Edge)
        }
        E::Independent(n) => {
            positive(*n, "Kbar")?;
            SDigraph::empty(*n)
        }
        E::CompleteBipartite(m, n) => {
            positive(*m, "Kmn")?;
            positive(*n, "Kmn")?;
            SDigraph::from_fn(m + n, |i, j| {
                if (i < *m) != (j < *m) {
                    PairState::Edge
                } else {
                    PairState::Unrelated
                }
            })
        }
        E::Cycle(n) => {
            positive(*n, "C")?;
            circulant(*n, |d| if d == 1 || d + 1 == *n { PairState::Edge } else { PairState::Unrelated })
        }
        E::DirectedCycle(n) => {
            positive(*n, "D")?;
            if *n == 2 {
                return Err(Error::ParamOutOfRange(
                    "D(2) would need arcs in both directions".to_string(),
                ));
            }
            circulant(*n, |d| if d == 1 { PairState::Arc } else if d + 1 == *n { PairState::RevArc } else { PairState::Unrelated })
        }
        E::P3 => SDigraph::from_fn(3, |_, _| PairState::Arc),
        E::E6 => circulant(6, |d| match d {
            1 => PairState::Arc,
            5 => PairState::RevArc,
            3 => PairState::Edge,
            _ => PairState::Unrelated,
        }),
        E::E7 => circulant(7, |d| match d {
            1 => PairState::Arc,
            6 => PairState::RevArc,
            3 | 4 => PairState::Edge,
            _ => PairState::Unrelated,
        }),
        E::F6 => Ok(f6()),
        E::J(n) => {
            positive(*n, "J")?;
            Ok(j_blocks(*n))
        }
        E::H0 => Ok(h0()),
        E::H1 => Ok(h1()),
        E::H2 => Ok(h2()),
        E::H3 => Ok(h3()),
        E::X => Ok(cover_graph()),
        E::Complement(e) => Ok(build(e)?.complement()),
        E::WeakComplement(e) => Ok(build(e)?.weak_complement()),
        E::Converse(e) => Ok(build(e)?.converse()),
        E::Composition(a, b) => Ok(build(a)?.comp_product(&build(b)?)),
        E::Product(a, b) => Ok(build(a)?.direct_product(&build(b)?)),
    }
}

/// `f` gets `(j - i) mod n` for `i < j`.
fn circulant(n: usize, f: impl Fn(usize) -> PairState) -> Result<SDigraph> {
    SDigraph::from_fn(n, |i, j| f(j - i))
}

/// Vertices `x1 y1 z1 x2 y2 z2` are `0..6`.
fn f6() -> SDigraph {
    SDigraph::from_fn(6, |i, j| {
        let (bi, bj) = (i / 3, j / 3);
        let (pi, pj) = (i % 3, j % 3);
        if bi != bj {
            if pi == pj {
                PairState::Edge
            } else {
                PairState::Unrelated
            }
        } else if (pi + 1) % 3 == pj {
            PairState::Arc
        } else {
            PairState::RevArc
        }
    })
    .unwrap()
}

/// Block `B_b` is `b*n .. (b+1)*n`; the matchings identify equal offsets.
fn j_blocks(n: usize) -> SDigraph {
    SDigraph::from_fn(3 * n, |i, j| {
        let (bi, bj) = (i / n, j / n);
        if bi == bj {
            PairState::Unrelated
        } else if i % n == j % n {
            PairState::Edge
        } else if (bi + 1) % 3 == bj {
            PairState::Arc
        } else {
            PairState::RevArc
        }
    })
    .unwrap()
}

/// Elements of GF(3) are `0, 1, 2`, with `2 = -1`.
fn det(u: (usize, usize), v: (usize, usize)) -> usize {
    (u.0 * v.1 + 2 * (v.0 * u.1)) % 3
}

/// The eight nonzero vectors of GF(3)^2 in lexicographic order.
pub fn h0_vertices() -> [(usize, usize); 8] {
    [(0, 1), (0, 2), (1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2)]
}

fn h0() -> SDigraph {
    let vs = h0_vertices();
    SDigraph::from_fn(8, |i, j| match det(vs[i], vs[j]) {
        1 => PairState::Arc,
        2 => PairState::RevArc,
        _ => PairState::Unrelated,
    })
    .unwrap()
}

/// Coordinates `(u, alpha)` of vertex `v` of `X` and `H3`; the numbering is
/// `(u.0 * 3 + u.1) * 3 + alpha`.
pub fn fibre_coords(v: usize) -> ((usize, usize), usize) {
    ((v / 9, (v / 3) % 3), v % 3)
}

fn cover_graph() -> SDigraph {
    SDigraph::from_fn(27, |i, j| {
        let ((u, a), (v, b)) = (fibre_coords(i), fibre_coords(j));
        if det(u, v) == (a + 3 - b) % 3 && u != v {
            PairState::Edge
        } else {
            PairState::Unrelated
        }
    })
    .unwrap()
}

fn h3() -> SDigraph {
    SDigraph::from_fn(27, |i, j| {
        let ((u, a), (v, b)) = (fibre_coords(i), fibre_coords(j));
        if u == v {
            return PairState::Edge;
        }
        let diff = (a + 3 - b) % 3;
        let d = det(u, v);
        if d == diff {
            PairState::Unrelated
        } else if d == (diff + 1) % 3 {
            PairState::Arc
        } else {
            PairState::RevArc
        }
    })
    .unwrap()
}

/// Standard labels for the vertices of `H1`, in index order.
pub const H1_LABELS: [&str; 8] = ["01", "11", "12", "20", "02", "22", "21", "10"];

const H1_EDGES: [(usize, usize); 4] = [(1, 0), (7, 6), (2, 3), (4, 5)];

// v01=0 v11=1 v12=2 v20=3 v02=4 v22=5 v21=6 v10=7
const H1_ARCS: [(usize, usize); 16] = [
    (0, 7), // 01 -> 10
    (0, 3), // 01 -> 20
    (7, 1), // 10 -> 11
    (7, 4), // 10 -> 02
    (6, 5), // 21 -> 22
    (6, 0), // 21 -> 01
    (5, 7), // 22 -> 10
    (5, 2), // 22 -> 12
    (4, 6), // 02 -> 21
    (4, 3), // 02 -> 20
    (3, 5), // 20 -> 22
    (3, 1), // 20 -> 11
    (2, 0), // 12 -> 01
    (2, 4), // 12 -> 02
    (1, 6), // 11 -> 21
    (1, 2), // 11 -> 12
];

fn h1() -> SDigraph {
    let mut a: Vec<(usize, usize, PairState)> =
        H1_EDGES.iter().map(|&(i, j)| (i, j, PairState::Edge)).collect();
    a.extend(H1_ARCS.iter().map(|&(i, j)| (i, j, PairState::Arc)));
    SDigraph::new(8, &a).unwrap()
}

/// Base arcs of `H2`, vertex `v_k` being index `k - 1`. The matching
/// edges are `{v1,v2}, {v3,v4}, ..., {v11,v12}`.
const H2_BASE_ARCS: [(usize, usize); 12] = [
    (1, 12),
    (1, 10),
    (2, 5),
    (3, 2),
    (4, 5),
    (4, 7),
    (6, 7),
    (8, 9),
    (9, 6),
    (11, 8),
    (11, 10),
    (12, 3),
];

fn h2() -> SDigraph {
    let mate = |v: usize| v ^ 1;
    let mut arcs: BTreeSet<(usize, usize)> =
        H2_BASE_ARCS.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
    loop {
        let mut next = arcs.clone();
        for &(v, w) in &arcs {
            next.insert((w, mate(v)));
            next.insert((mate(w), v));
        }
        if next.len() == arcs.len() {
            break;
        }
        arcs = next;
    }
    let mut a: Vec<(usize, usize, PairState)> =
        (0..6).map(|k| (2 * k, 2 * k + 1, PairState::Edge)).collect();
    a.extend(arcs.into_iter().map(|(v, w)| (v, w, PairState::Arc)));
    SDigraph::new(12, &a).expect("H2 completion is consistent")
}

// ---------------------------------------------------------------- parser

pub fn parse_expr(text: &str) -> Result<CatalogExpr> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::SyntaxError {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.s.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<CatalogExpr> {
        let mut e = self.term()?;
        while self.eat(b'*') {
            e = e.times(self.term()?);
        }
        Ok(e)
    }

    fn term(&mut self) -> Result<CatalogExpr> {
        let mut e = self.primary()?;
        while self.eat(b'[') {
            let inner = self.expr()?;
            self.expect(b']')?;
            e = e.of(inner);
        }
        Ok(e)
    }

    fn primary(&mut self) -> Result<CatalogExpr> {
        if self.eat(b'(') {
            let e = self.expr()?;
            self.expect(b')')?;
            return Ok(e);
        }
        self.skip_ws();
        let start = self.pos;
        while self
            .s
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a name"));
        }
        let name = core::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .to_ascii_lowercase();
        let unary = |e: CatalogExpr| match name.as_str() {
            "comp" => e.comp(),
            "wcomp" => e.wcomp(),
            _ => e.conv(),
        };
        match name.as_str() {
            "comp" | "wcomp" | "conv" => {
                self.expect(b'(')?;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(unary(e))
            }
            "k" | "kbar" | "c" | "d" | "j" => {
                let args = self.args(start, 1)?;
                let n = args[0];
                Ok(match name.as_str() {
                    "k" => E::Complete(n),
                    "kbar" => E::Independent(n),
                    "c" => E::Cycle(n),
                    "d" => E::DirectedCycle(n),
                    _ => E::J(n),
                })
            }
            "kmn" => {
                let args = self.args(start, 2)?;
                Ok(E::CompleteBipartite(args[0], args[1]))
            }
            "p3" => Ok(E::P3),
            "e6" => Ok(E::E6),
            "e7" => Ok(E::E7),
            "f6" => Ok(E::F6),
            "h0" => Ok(E::H0),
            "h1" => Ok(E::H1),
            "h2" => Ok(E::H2),
            "h3" => Ok(E::H3),
            "x" => Ok(E::X),
            _ => Err(Error::UnknownName(
                core::str::from_utf8(&self.s[start..self.pos]).unwrap().to_string(),
            )),
        }
    }

    fn args(&mut self, name_start: usize, arity: usize) -> Result<Vec<usize>> {
        if !self.eat(b'(') {
            return Err(Error::SyntaxError {
                offset: self.pos,
                message: format!(
                    "`{}` takes {arity} parameter(s)",
                    core::str::from_utf8(&self.s[name_start..self.pos]).unwrap()
                ),
            });
        }
        let mut out = Vec::new();
        loop {
            out.push(self.int()?);
            if !self.eat(b',') {
                break;
            }
        }
        if out.len() != arity {
            return Err(self.error(&format!("expected {arity} parameter(s), got {}", out.len())));
        }
        self.expect(b')')?;
        Ok(out)
    }

    fn int(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.s.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        core::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::SyntaxError {
                offset: start,
                message: "integer too large".to_string(),
            })
    }
}

// ---------------------------------------------------------- theorem list

/// The finite set-homogeneous a-digraphs with at most `max_n` vertices.
pub fn a_list(max_n: usize) -> Vec<CatalogExpr> {
    let mut out = Vec::new();
    for e in [E::DirectedCycle(1), E::DirectedCycle(3), E::DirectedCycle(4), E::DirectedCycle(5), E::H0] {
        out.push(e);
    }
    for n in 1..=max_n {
        out.push(E::Independent(n));
    }
    for n in 1..=max_n / 3 {
        out.push(E::Independent(n).of(E::DirectedCycle(3)));
        out.push(E::DirectedCycle(3).of(E::Independent(n)));
    }
    out.retain(|e| e.order().is_some_and(|k| k <= max_n));
    out
}

/// The finite set-homogeneous graphs with at most `max_n` vertices, both
/// the listed ones and their complements.
pub fn l_list(max_n: usize) -> Vec<CatalogExpr> {
    let mut base = vec_of([E::Cycle(5), E::Complete(3).times(E::Complete(3))]);
    for m in 1..=max_n {
        for n in 1..=max_n / m {
            base.push(E::Complete(m).of(E::Independent(n)));
        }
    }
    let mut out = Vec::new();
    for e in base {
        if e.order().is_some_and(|k| k <= max_n) {
            out.push(e.clone());
            out.push(e.comp());
        }
    }
    out
}

fn vec_of<const N: usize>(a: [CatalogExpr; N]) -> Vec<CatalogExpr> {
    a.into_iter().collect()
}

/// Every s-digraph on at most `max_n` vertices of the classification, each
/// isomorphism type once, closed under complement and ordered by vertex
/// count. Labels are expressions accepted by [`parse_expr`].
pub fn theorem_list(max_n: usize) -> Vec<(String, SDigraph)> {
    let max_n = max_n.min(MAX_VERTICES);
    let fits = |e: &CatalogExpr| e.order().is_some_and(|k| k <= max_n);
    let a = a_list(max_n);
    let l = l_list(max_n);
    let mut forms = Vec::new();
    for n in 1..=max_n {
        for x in &a {
            forms.push(E::Complete(n).of(x.clone()));
            forms.push(x.clone().of(E::Complete(n)));
        }
    }
    for x in &l {
        forms.push(x.clone());
        forms.push(E::DirectedCycle(3).of(x.clone()));
        forms.push(x.clone().of(E::DirectedCycle(3)));
    }
    forms.extend([E::H1, E::H2, E::H3, E::E6, E::E7, E::F6]);
    for n in 2..=max_n / 3 {
        forms.push(E::J(n));
    }
    forms.retain(|e| fits(e));

    let mut candidates: Vec<(usize, CatalogExpr)> = Vec::new();
    for e in forms {
        let k = e.order().unwrap();
        candidates.push((k, simplify(e.clone())));
        candidates.push((k, simplify(e.comp())));
    }
    candidates.sort_by_key(|(k, _)| *k);

    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (_, e) in candidates {
        let d = build(&e).expect("theorem-list members are buildable");
        if seen.insert(canonical_form(&d).code) {
            out.push((e.to_string(), d));
        }
    }
    out
}

/// Drops `K(1)[..]`, `..[K(1)]` and double complements so labels read
/// naturally.
fn simplify(e: CatalogExpr) -> CatalogExpr {
    match e {
        E::Composition(a, b) => match (simplify(*a), simplify(*b)) {
            (E::Complete(1), x) | (x, E::Complete(1)) => x,
            (x, y) => x.of(y),
        },
        E::Complement(x) => match simplify(*x) {
            E::Complement(y) => *y,
            y => y.comp(),
        },
        other => other,
    }
}
