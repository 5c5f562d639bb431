//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.
//!
//! Set `SETHOM_FULL_ENUM=1` to extend the classification cross-check to
//! order 6 (slow).

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use sethom::catalog::{a_list, fibre_coords, h0_vertices};
use sethom::enumeration::{classify_cross_check, enumerate_all};
use sethom::homo::{
    check_homogeneous, check_k_homogeneous, check_set_homogeneous, subset_orbit_reps,
};
use sethom::infinite::{
    directed_triangles, non_2hom_witness_rn, rn_census, sample_rn, sample_t4, t4_census_both,
};
use sethom::perm::group_k_homogeneity;
use sethom::*;

/// Smallest k at which H3 is not k-homogeneous, frozen from
/// `first_failing_k_oracle`.
const H3_FIRST_FAILING_K: usize = 2;

/// Isomorphism classes of s-digraphs of order 0..=4, frozen from
/// `class_count_oracle`.
const CLASS_COUNTS: [usize; 5] = [1, 1, 3, 16, 218];

fn b(s: &str) -> SDigraph {
    build(&parse_expr(s).unwrap()).unwrap()
}

fn iso(a: &SDigraph, c: &SDigraph) -> bool {
    find_isomorphism(a, c).is_some()
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    ensure(
        start.elapsed() < limit,
        format!("took {:.1?}, limit {limit:?}", start.elapsed()),
    )
}

/// Named digraphs plus the classification list up to order 9.
fn corpus() -> Vec<(String, SDigraph)> {
    let mut out: Vec<(String, SDigraph)> = [
        "D(5)", "P3", "E6", "E7", "F6", "J(2)", "J(3)", "H0", "H1", "H2", "H3", "X", "C(5)",
        "K(3)*K(3)", "Kmn(3,3)",
    ]
    .iter()
    .map(|s| (s.to_string(), b(s)))
    .collect();
    out.extend(theorem_list(9));
    out
}

// ----------------------------------------------------------------- oracles

/// Orbits of Aut(d) on ordered pairs, by applying every group element, set
/// against the number of pair types.
fn first_failing_k_oracle(d: &SDigraph, max_k: usize) -> Option<usize> {
    let n = d.n();
    let elements = automorphism_group(d).elements();
    assert!(elements.iter().all(|g| g.is_automorphism_of(d)));
    for k in 1..=max_k {
        let tuples = injective_tuples(n, k);
        let index: BTreeMap<&Vec<usize>, usize> =
            tuples.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let mut orbit = vec![usize::MAX; tuples.len()];
        let mut orbits = 0;
        for i in 0..tuples.len() {
            if orbit[i] != usize::MAX {
                continue;
            }
            for g in &elements {
                let img: Vec<usize> = tuples[i].iter().map(|&x| g.image(x)).collect();
                orbit[index[&img]] = orbits;
            }
            orbits += 1;
        }
        let types: BTreeSet<Vec<PairState>> = tuples
            .iter()
            .map(|t| {
                let mut ty = Vec::new();
                for a in 0..k {
                    for c in a + 1..k {
                        ty.push(d.state(t[a], t[c]));
                    }
                }
                ty
            })
            .collect();
        if types.len() != orbits {
            return Some(k);
        }
    }
    None
}

fn injective_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::new();
        for t in &out {
            for x in (0..n).filter(|x| !t.contains(x)) {
                let mut u = t.clone();
                u.push(x);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    injective_tuples(n, n)
}

/// Least pair code over all relabellings of every labelled s-digraph.
fn class_count_oracle(n: usize) -> usize {
    let pairs = n * n.saturating_sub(1) / 2;
    let perms = permutations(n);
    let mut codes = BTreeSet::new();
    for word in 0..4u64.pow(pairs as u32) {
        let mut k = 0;
        let d = SDigraph::from_fn(n, |_, _| {
            let s = PairState::from_bits(((word >> (2 * k)) & 3) as u8);
            k += 1;
            s
        })
        .unwrap();
        codes.insert(perms.iter().map(|p| d.relabeled(p).pair_code()).min().unwrap());
    }
    codes.len()
}

// --------------------------------------------------------------- criteria

fn c1_cover_group() -> Outcome {
    let start = Instant::now();
    let order = automorphism_group(&b("X")).order();
    ensure(order == 1296, format!("|Aut(X)| = {order}"))?;
    within(start, Duration::from_secs(10))?;
    Ok(format!("|Aut(X)| = 1296 in {:.1?}", start.elapsed()))
}

fn c2_h3_structure() -> Outcome {
    let h3 = b("H3");
    ensure(h3.n() == 27, "order")?;
    // pair-by-pair count straight from coordinates, signed arithmetic
    let (mut e, mut a, mut u) = (0, 0, 0);
    for i in 0..27i64 {
        for j in i + 1..27 {
            let (p, al) = ((i / 9, i / 3 % 3), i % 3);
            let (q, be) = ((j / 9, j / 3 % 3), j % 3);
            let det = (p.0 * q.1 - q.0 * p.1).rem_euclid(3);
            if p == q {
                e += 1;
            } else if det == (al - be).rem_euclid(3) {
                u += 1;
            } else {
                a += 1;
            }
        }
    }
    ensure((e, a, u) == (27, 216, 108), format!("oracle census {:?}", (e, a, u)))?;
    ensure(h3.census() == (27, 216, 108), format!("census {:?}", h3.census()))?;
    // edges: nine vertex-disjoint triangles
    let mut seen = BTreeSet::new();
    for v in 0..27 {
        let nb = h3.neighborhoods(v).unwrap();
        ensure(nb.edge.len() == 2, "edge degree")?;
        let mut tri = nb.edge.to_vec();
        tri.push(v);
        tri.sort();
        ensure(h3.is_edge(tri[0], tri[1]) && h3.is_edge(tri[1], tri[2]) && h3.is_edge(tri[0], tri[2]), "triangle")?;
        seen.insert(tri);
    }
    ensure(seen.len() == 9, "nine triangles")?;
    let unrel = SDigraph::from_fn(27, |i, j| {
        if h3.is_unrelated(i, j) {
            PairState::Edge
        } else {
            PairState::Unrelated
        }
    })
    .unwrap();
    ensure(iso(&unrel, &b("X")), "unrelated pairs are not X")?;
    let omega = (0..27).find(|&v| fibre_coords(v) == ((0, 0), 0)).unwrap();
    let gamma = h3.out_set(omega);
    ensure(iso(&h3.induced(&gamma).unwrap(), &b("H0")), "Gamma(omega) is not H0")?;
    Ok("27 edges in 9 triangles, 216 arcs, 108 unrelated; unrelated graph = X; Gamma(w) = H0".into())
}

fn c3_h3_verdicts() -> Outcome {
    let h3 = b("H3");
    let start = Instant::now();
    let v = check_set_homogeneous(&h3).unwrap();
    let sweep = start.elapsed();
    ensure(v.holds, format!("set-homogeneity fails: {v:?}"))?;
    within(start, Duration::from_secs(30 * 60))?;

    let hom = check_homogeneous(&h3, 5);
    ensure(!hom.holds, "H3 reported homogeneous up to 5")?;
    let w = hom.witness.as_ref().unwrap();
    ensure(w.verify(&h3), "witness does not verify")?;
    let oracle = first_failing_k_oracle(&h3, 2);
    ensure(oracle == Some(H3_FIRST_FAILING_K), format!("oracle says {oracle:?}"))?;
    ensure(hom.failing_k == Some(H3_FIRST_FAILING_K), format!("first failure at {:?}", hom.failing_k))?;

    let g = automorphism_group(&h3);
    ensure(g.order() % 648 == 0, format!("|Aut(H3)| = {}", g.order()))?;
    // the index-two subgroup from its explicit generators acts on H3
    let sub = sl23_k();
    ensure(sub.order() == 648 && sub.acts_on(&h3), "SL(2,3)K does not act")?;
    ensure(sub.generators().iter().all(|p| g.contains(p)), "SL(2,3)K not in Aut")?;
    Ok(format!(
        "set-homogeneous (sweep {sweep:.1?}); first k-homogeneity failure k={}; |Aut(H3)| = {}",
        H3_FIRST_FAILING_K,
        g.order()
    ))
}

/// Translations, fibre shifts and SL(2,3) acting on `(u, alpha)`.
fn sl23_k() -> PermGroup {
    let index = |u: (usize, usize), a: usize| (u.0 * 3 + u.1) * 3 + a;
    let det = |u: (usize, usize), v: (usize, usize)| (u.0 * v.1 + 2 * v.0 * u.1) % 3;
    let perm = |f: &dyn Fn((usize, usize), usize) -> ((usize, usize), usize)| {
        let mut img = vec![0; 27];
        for v in 0..27 {
            let (u, a) = fibre_coords(v);
            let (w, b) = f(u, a);
            img[v] = index(w, b);
        }
        Permutation::new(img).unwrap()
    };
    let mut gens = Vec::new();
    for x in [(1, 0), (0, 1)] {
        gens.push(perm(&|u, a| (((u.0 + x.0) % 3, (u.1 + x.1) % 3), (det(u, x) + a) % 3)));
    }
    gens.push(perm(&|u, a| (u, (a + 1) % 3)));
    for m in [[[1, 1], [0, 1]], [[1, 0], [1, 1]]] {
        gens.push(perm(&|u, a| {
            ((
                (u.0 * m[0][0] + u.1 * m[1][0]) % 3,
                (u.0 * m[0][1] + u.1 * m[1][1]) % 3,
            ), a)
        }));
    }
    PermGroup::from_generators(27, &gens).unwrap()
}

fn c4_positive_catalog() -> Outcome {
    let start = Instant::now();
    let list = theorem_list(9);
    for (label, d) in &list {
        ensure(check_set_homogeneous(d).unwrap().holds, format!("{label} fails"))?;
    }
    let alist = a_list(9);
    for e in &alist {
        let d = build(e).unwrap();
        ensure(check_set_homogeneous(&d).unwrap().holds, format!("{e} fails"))?;
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!("{} list members and {} a-digraphs in {:.1?}", list.len(), alist.len(), start.elapsed()))
}

fn c5_negative_homogeneity() -> Outcome {
    let mut out = Vec::new();
    for s in ["D(5)", "E6", "E7", "F6", "J(2)", "J(3)", "K(2)[D(5)]", "D(5)[K(2)]"] {
        let d = b(s);
        let v = check_homogeneous(&d, d.n());
        ensure(!v.holds, format!("{s} reported homogeneous"))?;
        ensure(v.witness.as_ref().unwrap().verify(&d), format!("{s} witness invalid"))?;
        out.push(format!("{s}@k={}", v.failing_k.unwrap()));
    }
    // H3 is covered by criterion 3; H1 is homogeneous
    let h1 = b("H1");
    ensure(check_homogeneous(&h1, h1.n()).holds, "H1 not homogeneous")?;
    let d5 = check_k_homogeneous(&b("D(5)"), 2);
    ensure(
        d5.witness
            == Some(sethom::homo::Witness::NonExtending { u: vec![0, 2], v: vec![0, 3] }),
        "D5 witness is not {0,2} -> {0,3}",
    )?;
    Ok(format!("{}; H1 homogeneous", out.join(" ")))
}

fn c6_group_identities() -> Outcome {
    for s in ["E6", "F6"] {
        let g = automorphism_group(&b(s));
        ensure(g.order() == 6, format!("|Aut({s})| = {}", g.order()))?;
        ensure(g.is_abelian(), format!("Aut({s}) not abelian"))?;
        ensure(g.elements().iter().any(|p| p.order() == 6), format!("Aut({s}) has no element of order 6"))?;
    }
    Ok("Aut(E6), Aut(F6) cyclic of order 6".into())
}

fn c7_complement_identity() -> Outcome {
    let a = canonical_form(&b("J(2)")).code;
    let c = canonical_form(&b("comp(E6)")).code;
    ensure(a == c, "codes differ")?;
    Ok(format!("code {}", a.iter().map(|x| format!("{x:02x}")).collect::<String>()))
}

fn c8_weak_complement() -> Outcome {
    let list = theorem_list(9);
    for (label, d) in &list {
        ensure(iso(d, &d.weak_complement()), format!("{label} not isomorphic to its weak complement"))?;
    }
    let h0 = b("H0");
    let vs = h0_vertices();
    let pos = |v: (usize, usize)| vs.iter().position(|&w| w == v).unwrap();
    // -1 written as 2
    let swaps = [((0, 2), (2, 2)), ((1, 1), (0, 1)), ((1, 0), (2, 0))];
    let mut img: Vec<usize> = (0..8).collect();
    for (x, y) in swaps {
        img[pos(x)] = pos(y);
        img[pos(y)] = pos(x);
    }
    ensure(img[pos((1, 2))] == pos((1, 2)) && img[pos((2, 1))] == pos((2, 1)), "fixed points")?;
    let wc = h0.weak_complement();
    for i in 0..8 {
        for j in 0..8 {
            if i != j {
                ensure(h0.state(i, j) == wc.state(img[i], img[j]), "explicit map fails")?;
            }
        }
    }
    Ok(format!("{} members; explicit H0 map verified", list.len()))
}

fn c9_cross_check() -> Outcome {
    let start = Instant::now();
    for n in 0..=4 {
        let oracle = class_count_oracle(n);
        ensure(oracle == CLASS_COUNTS[n], format!("oracle at {n}: {oracle}"))?;
    }
    let counts: Vec<usize> = enumerate_all(4).unwrap().iter().map(Vec::len).collect();
    ensure(counts == CLASS_COUNTS, format!("counts {counts:?}"))?;
    let report = classify_cross_check(5).unwrap();
    ensure(report.is_clean(), format!("missing {:?}, unexpected {}", report.missing, report.unexpected.len()))?;
    within(start, Duration::from_secs(5 * 60))?;
    let mut msg = format!(
        "classes {:?}, {} set-homogeneous at n<=5, all listed, in {:.1?}",
        report.counts,
        report.survivors.len(),
        start.elapsed()
    );
    if std::env::var("SETHOM_FULL_ENUM").is_ok_and(|v| v == "1") {
        let r6 = classify_cross_check(6).unwrap();
        ensure(r6.is_clean(), format!("n=6: missing {:?}, unexpected {}", r6.missing, r6.unexpected.len()))?;
        msg.push_str(&format!("; n=6: {} classes, {} survivors", r6.counts[6], r6.survivors.len()));
    }
    Ok(msg)
}

fn c10_paired_suborbits() -> Outcome {
    let mut checked = 0;
    for (label, d) in corpus() {
        let g = automorphism_group(&d);
        if !g.is_transitive() {
            continue;
        }
        let orb = g.orbital_decomposition();
        for o in 0..orb.count() {
            let p = orb.paired(o);
            for a in 0..d.n() {
                ensure(
                    orb.section(o, a).len() == orb.section(p, a).len(),
                    format!("{label}: orbital {o} at {a}"),
                )?;
            }
        }
        checked += 1;
    }
    Ok(format!("{checked} vertex-transitive members"))
}

fn c11_neighbourhoods() -> Outcome {
    let list = theorem_list(9);
    for (label, d) in &list {
        for v in 0..d.n() {
            let nb = d.neighborhoods(v).unwrap();
            for s in [&nb.out, &nb.inn] {
                let sub = d.induced(s).unwrap();
                ensure(check_set_homogeneous(&sub).unwrap().holds, format!("{label} at {v}"))?;
            }
        }
    }
    Ok(format!("{} members", list.len()))
}

fn c12_burnside() -> Outcome {
    let mut members: Vec<(String, SDigraph)> = corpus();
    members.extend(theorem_list(27));
    let mut checked = 0;
    let mut skipped = 0;
    let mut seen = BTreeSet::new();
    for (label, d) in members {
        if d.n() > 27 || !seen.insert(canonical_form(&d).code) {
            continue;
        }
        let g = automorphism_group(&d);
        if g.order() > 1296 {
            skipped += 1;
            continue;
        }
        // cycle-count sum over the explicit element list
        let elements = g.elements();
        let sum: u128 = elements
            .iter()
            .map(|p| {
                let moved: usize = p.cycles().iter().map(Vec::len).sum();
                1u128 << (p.cycles().len() + d.n() - moved)
            })
            .sum();
        let burnside = sum / elements.len() as u128;
        let reps = subset_orbit_reps(&d, &g).unwrap().total();
        ensure(reps == burnside, format!("{label}: {reps} reps, Burnside {burnside}"))?;
        checked += 1;
    }
    Ok(format!("{checked} members with |Aut| <= 1296 ({skipped} with larger groups not enumerated)"))
}

fn c13_infinite_samples() -> Outcome {
    let mut seen = [0u64; 14];
    for seed in 0..100 {
        let (cw, _) = t4_census_both(&sample_t4(40, seed));
        ensure(cw.forbidden_total() == 0, format!("T(4) seed {seed}: forbidden configuration"))?;
        for i in 0..14 {
            seen[i] += cw.counts[i];
        }
    }
    ensure(seen[..6].iter().all(|&c| c > 0), format!("L1-L6 counts {:?}", &seen[..6]))?;
    for n in [2, 3] {
        for seed in 0..100 {
            let s = sample_rn(n, 40, seed).unwrap();
            ensure(directed_triangles(&s.digraph) == 0, format!("R_{n} seed {seed}: directed triangle"))?;
            ensure(rn_census(&s).get(5) == 0, "L5 in R_n")?;
            let w = non_2hom_witness_rn(&s).ok_or(format!("R_{n} seed {seed}: no witness"))?;
            let d = &s.digraph;
            ensure(
                d.is_unrelated(w.x, w.y) && d.is_arc(w.x, w.z) && d.is_arc(w.z, w.y) && s.values[w.x] < s.values[w.y],
                "witness shape",
            )?;
        }
    }
    Ok(format!("T(4) L1-L6 totals {:?}, L7-L14 none; R_2, R_3 clean", &seen[..6]))
}

fn c14_fact_shadow() -> Outcome {
    let mut checked = 0;
    for (label, d) in corpus() {
        let g = automorphism_group(&d);
        if d.n() < 4 || !g.is_transitive() {
            continue;
        }
        if g.is_highly_homogeneous() {
            ensure(group_k_homogeneity(&g, 2).1, format!("{label}: highly homogeneous, not 2-transitive"))?;
        }
        checked += 1;
    }
    Ok(format!("{checked} transitive groups"))
}

fn c15_tournaments() -> Outcome {
    let all = enumerate_all(5).unwrap();
    let mut found = Vec::new();
    for code in all.iter().skip(1).flatten() {
        let d = SDigraph::from_pair_code(code).unwrap();
        if !d.is_tournament() || !check_set_homogeneous(&d).unwrap().holds {
            continue;
        }
        ensure(iso(&d, &b("D(1)")) || iso(&d, &b("D(3)")), format!("unexpected tournament {d:?}"))?;
        ensure(check_homogeneous(&d, d.n()).holds, "not homogeneous")?;
        found.push(d.n());
    }
    ensure(found == [1, 3], format!("orders {found:?}"))?;
    Ok("D1 and D3 only, both homogeneous".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 15] = [
        ("cover-graph group order", c1_cover_group),
        ("H3 structure", c2_h3_structure),
        ("H3 verdicts", c3_h3_verdicts),
        ("positive catalog", c4_positive_catalog),
        ("negative homogeneity", c5_negative_homogeneity),
        ("group identities", c6_group_identities),
        ("complement identity", c7_complement_identity),
        ("weak-complement closure", c8_weak_complement),
        ("classification cross-check", c9_cross_check),
        ("paired suborbits", c10_paired_suborbits),
        ("neighbourhood heredity", c11_neighbourhoods),
        ("Burnside count", c12_burnside),
        ("infinite samples", c13_infinite_samples),
        ("2-transitivity shadow", c14_fact_shadow),
        ("tournaments", c15_tournaments),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let t = start.elapsed();
        match result {
            Ok(msg) => println!("criterion {:>2} PASS {name} [{t:.2?}]: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} [{t:.2?}]: {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 15 criteria pass");
}
