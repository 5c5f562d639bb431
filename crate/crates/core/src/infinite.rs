//! Finite samples of two countable a-digraphs.
//!
//! `T(4)`: points on the unit circle, `y -> x` iff the angle from `x` to `y`
//! lies strictly between a quarter and a half turn. Angles are fractions of a
//! full turn with 32-bit resolution, so all comparisons are exact integer
//! arithmetic modulo `2^32`.
//!
//! `R_n`: rationals coloured with `n` classes, `a -> b` iff `a < b` and the
//! classes differ.
//!
//! In both, unrelated pairs carry an orientation `x => y`. For `R_n` it is
//! `x < y`. For `T(4)` it is `y` lying less than a quarter turn clockwise of
//! `x`; this is the orientation under which none of `L_7 .. L_14` embeds, the
//! counter-clockwise one realises `L_7`, `L_8`, `L_9` and `L_14`.

use alloc::vec::Vec;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digraph::{PairState, SDigraph};
use crate::error::{Error, Result};

const QUARTER: u32 = 1 << 30;
const HALF: u32 = 1 << 31;
const THREE_QUARTERS: u32 = 3 << 30;

/// Converts radians to a turn fraction, rounding to the nearest `2^-32`.
pub fn turn_from_radians(rad: f64) -> u32 {
    let t = rad / core::f64::consts::TAU;
    let mut frac = t - (t as i64) as f64;
    if frac < 0.0 {
        frac += 1.0;
    }
    let x = frac * 4294967296.0 + 0.5;
    (x as u64 & 0xffff_ffff) as u32
}

/// Which unrelated direction counts as `=>` in `T(4)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Orientation {
    /// `x => y` iff `theta_x - theta_y` is in `(0, 1/4)` turn.
    #[default]
    Clockwise,
    /// `x => y` iff `theta_y - theta_x` is in `(0, 1/4)` turn.
    CounterClockwise,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct T4Sample {
    /// Turn fractions, increasing.
    pub angles: Vec<u32>,
    pub digraph: SDigraph,
}

impl T4Sample {
    /// Fails if two angles coincide or differ by a quarter, half or three
    /// quarters of a turn.
    pub fn from_angles(mut angles: Vec<u32>) -> Result<Self> {
        angles.sort_unstable();
        for (i, &a) in angles.iter().enumerate() {
            for &b in &angles[i + 1..] {
                if !admissible(b.wrapping_sub(a)) {
                    return Err(Error::ParamOutOfRange(alloc::format!(
                        "angles {a} and {b} differ by a multiple of a quarter turn"
                    )));
                }
            }
        }
        let digraph = SDigraph::from_fn(angles.len(), |i, j| t4_state(angles[i], angles[j]))?;
        Ok(T4Sample { angles, digraph })
    }

    pub fn from_radians(rad: &[f64]) -> Result<Self> {
        T4Sample::from_angles(rad.iter().map(|&r| turn_from_radians(r)).collect())
    }

    /// `i => j` for an unrelated pair.
    pub fn lambda(&self, i: usize, j: usize, o: Orientation) -> Result<bool> {
        if !self.digraph.is_unrelated(i, j) {
            return Err(Error::NotUnrelated(i, j));
        }
        let ccw = self.angles[j].wrapping_sub(self.angles[i]) < QUARTER;
        Ok(ccw == (o == Orientation::CounterClockwise))
    }
}

fn admissible(diff: u32) -> bool {
    !matches!(diff, 0 | QUARTER | HALF | THREE_QUARTERS)
}

/// State of `(x, y)` for points at turn fractions `x`, `y`.
fn t4_state(x: u32, y: u32) -> PairState {
    let d = y.wrapping_sub(x);
    if d > QUARTER && d < HALF {
        PairState::RevArc
    } else if d > HALF && d < THREE_QUARTERS {
        PairState::Arc
    } else {
        PairState::Unrelated
    }
}

/// `size` admissible points, deterministic in `seed`.
pub fn sample_t4(size: usize, seed: u64) -> T4Sample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut angles: Vec<u32> = Vec::with_capacity(size);
    while angles.len() < size {
        let a: u32 = rng.random();
        if angles.iter().all(|&b| admissible(a.wrapping_sub(b))) {
            angles.push(a);
        }
    }
    T4Sample::from_angles(angles).expect("sampled angles are admissible")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RnSample {
    /// Distinct rationals, increasing.
    pub values: Vec<Ratio<i64>>,
    pub classes: Vec<usize>,
    pub class_count: usize,
    pub digraph: SDigraph,
}

impl RnSample {
    /// Points are reordered by value; values must be distinct.
    pub fn from_points(class_count: usize, mut points: Vec<(Ratio<i64>, usize)>) -> Result<Self> {
        if class_count < 2 {
            return Err(Error::ClassCountTooSmall(class_count));
        }
        if let Some(&(_, c)) = points.iter().find(|(_, c)| *c >= class_count) {
            return Err(Error::IndexOutOfRange { index: c, n: class_count });
        }
        points.sort();
        if points.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::ParamOutOfRange("repeated value".into()));
        }
        let (values, classes): (Vec<_>, Vec<_>) = points.into_iter().unzip();
        // values are increasing, so i < j means values[i] < values[j]
        let digraph = SDigraph::from_fn(values.len(), |i, j| {
            if classes[i] == classes[j] {
                PairState::Unrelated
            } else {
                PairState::Arc
            }
        })?;
        Ok(RnSample {
            values,
            classes,
            class_count,
            digraph,
        })
    }

    /// `i => j` for a same-class pair.
    pub fn lambda(&self, i: usize, j: usize) -> Result<bool> {
        if !self.digraph.is_unrelated(i, j) {
            return Err(Error::NotUnrelated(i, j));
        }
        Ok(self.values[i] < self.values[j])
    }
}

pub fn sample_rn(class_count: usize, size: usize, seed: u64) -> Result<RnSample> {
    if class_count < 2 {
        return Err(Error::ClassCountTooSmall(class_count));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<(Ratio<i64>, usize)> = Vec::with_capacity(size);
    while points.len() < size {
        let v = Ratio::new(rng.random_range(-1_000_000..=1_000_000), rng.random_range(1..=1000));
        if points.iter().all(|(w, _)| *w != v) {
            points.push((v, rng.random_range(0..class_count)));
        }
    }
    RnSample::from_points(class_count, points)
}

pub enum AnySample<'a> {
    T4(&'a T4Sample),
    Rn(&'a RnSample),
}

/// The unrelated pair `{i, j}` ordered so that the first `=>` the second,
/// clockwise for `T(4)`.
pub fn lambda_orientation(s: AnySample<'_>, i: usize, j: usize) -> Result<(usize, usize)> {
    let forward = match s {
        AnySample::T4(t) => t.lambda(i, j, Orientation::Clockwise)?,
        AnySample::Rn(r) => r.lambda(i, j)?,
    };
    Ok(if forward { (i, j) } else { (j, i) })
}

/// One constraint of a three-vertex configuration on positions
/// `0 = alpha, 1 = beta, 2 = gamma`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Rel {
    /// `s => t`
    Lambda(u8, u8),
    /// `s -> t`
    Arc(u8, u8),
    /// unrelated, either orientation
    Par(u8, u8),
}

const A: u8 = 0;
const B: u8 = 1;
const G: u8 = 2;

use Rel::{Arc, Lambda, Par};

/// `L_1 .. L_14`.
const CONFIGS: [[Rel; 3]; 14] = [
    [Lambda(B, A), Arc(B, G), Lambda(A, G)],
    [Lambda(B, A), Arc(A, G), Arc(B, G)],
    [Lambda(B, A), Arc(G, A), Arc(G, B)],
    [Lambda(B, A), Arc(A, G), Arc(G, B)],
    [Arc(A, B), Arc(B, G), Arc(G, A)],
    [Lambda(A, B), Lambda(B, G), Lambda(A, G)],
    [Lambda(B, A), Arc(B, G), Arc(G, A)],
    [Lambda(B, A), Arc(G, B), Par(G, A)],
    [Lambda(B, A), Arc(A, G), Par(G, B)],
    [Lambda(B, A), Lambda(A, G), Lambda(G, B)],
    [Arc(A, B), Arc(B, G), Arc(A, G)],
    [Lambda(B, A), Arc(B, G), Lambda(G, A)],
    [Lambda(B, A), Arc(G, A), Lambda(B, G)],
    [Lambda(B, A), Lambda(A, G), Arc(G, B)],
];

/// Embedding counts of `L_1 .. L_14` (over all ordered placements of each
/// 3-subset), and the number of 3-subsets matching none of them.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Census {
    pub counts: [u64; 14],
    pub other: u64,
}

impl Census {
    /// Count for `L_i`, `i` in `1..=14`.
    pub fn get(&self, i: usize) -> u64 {
        self.counts[i - 1]
    }

    pub fn forbidden_total(&self) -> u64 {
        (7..=14).map(|i| self.get(i)).sum()
    }
}

/// Census of `d` with `lambda(x, y)` deciding `x => y` on unrelated pairs.
pub fn config_census(d: &SDigraph, lambda: impl Fn(usize, usize) -> bool) -> Census {
    let n = d.n();
    let mut c = Census::default();
    let holds = |r: Rel, p: [usize; 3]| match r {
        Lambda(s, t) => {
            let (x, y) = (p[s as usize], p[t as usize]);
            d.is_unrelated(x, y) && lambda(x, y)
        }
        Arc(s, t) => d.is_arc(p[s as usize], p[t as usize]),
        Par(s, t) => d.is_unrelated(p[s as usize], p[t as usize]),
    };
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                let mut any = false;
                for p in [[x, y, z], [x, z, y], [y, x, z], [y, z, x], [z, x, y], [z, y, x]] {
                    for (i, cfg) in CONFIGS.iter().enumerate() {
                        if cfg.iter().all(|&r| holds(r, p)) {
                            c.counts[i] += 1;
                            any = true;
                        }
                    }
                }
                if !any {
                    c.other += 1;
                }
            }
        }
    }
    c
}

pub fn t4_census(s: &T4Sample, o: Orientation) -> Census {
    config_census(&s.digraph, |x, y| s.lambda(x, y, o).unwrap())
}

/// Censuses under both orientations, clockwise first.
pub fn t4_census_both(s: &T4Sample) -> (Census, Census) {
    (t4_census(s, Orientation::Clockwise), t4_census(s, Orientation::CounterClockwise))
}

pub fn rn_census(s: &RnSample) -> Census {
    config_census(&s.digraph, |x, y| s.lambda(x, y).unwrap())
}

/// Number of directed triangles.
pub fn directed_triangles(d: &SDigraph) -> usize {
    let n = d.n();
    let mut count = 0;
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                if (d.is_arc(x, y) && d.is_arc(y, z) && d.is_arc(z, x))
                    || (d.is_arc(x, z) && d.is_arc(z, y) && d.is_arc(y, x))
                {
                    count += 1;
                }
            }
        }
    }
    count
}

/// An unrelated pair with `x -> z -> y`, where the model rules out any `w`
/// with `y -> w -> x`. So `(x, y)` and `(y, x)` have the same type but no
/// automorphism swaps them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Non2HomWitness {
    pub x: usize,
    pub z: usize,
    pub y: usize,
}

/// Open arcs `(a, a + la)` and `(b, b + lb)` of the circle `Z / 2^32`
/// (lengths positive and below a full turn) meet.
fn circle_arcs_meet(a: u32, la: u32, b: u32, lb: u32) -> bool {
    b.wrapping_sub(a) < la || a.wrapping_sub(b) < lb
}

impl T4Sample {
    /// Whether some point of the circle `w` could satisfy `y -> w -> x`.
    fn reverse_two_path_possible(&self, x: usize, y: usize) -> bool {
        let (tx, ty) = (self.angles[x], self.angles[y]);
        // y -> w: w in (ty - 1/2, ty - 1/4); w -> x: w in (tx + 1/4, tx + 1/2)
        circle_arcs_meet(ty.wrapping_sub(HALF), QUARTER, tx.wrapping_add(QUARTER), QUARTER)
    }
}

pub fn non_2hom_witness_t4(s: &T4Sample) -> Option<Non2HomWitness> {
    let d = &s.digraph;
    let n = d.n();
    for x in 0..n {
        for y in 0..n {
            if x == y || !d.is_unrelated(x, y) || s.reverse_two_path_possible(x, y) {
                continue;
            }
            if let Some(z) = (0..n).find(|&z| z != x && z != y && d.is_arc(x, z) && d.is_arc(z, y)) {
                return Some(Non2HomWitness { x, z, y });
            }
        }
    }
    None
}

pub fn non_2hom_witness_rn(s: &RnSample) -> Option<Non2HomWitness> {
    let d = &s.digraph;
    let n = d.n();
    // values increase with the index: y -> w -> x would need y < w < x
    for x in 0..n {
        for y in x + 1..n {
            if s.classes[x] != s.classes[y] {
                continue;
            }
            if let Some(z) = (x + 1..y).find(|&z| s.classes[z] != s.classes[x]) {
                return Some(Non2HomWitness { x, z, y });
            }
        }
    }
    None
}
