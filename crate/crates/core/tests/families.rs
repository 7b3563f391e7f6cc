//! Every generator against structural oracles written from the family
//! definitions, plus the edge-local invariants recomputed from scratch.

use rsg_core::bounds::{distance_certificate, expansion_audit, max_r, AssertionStatus};
use rsg_core::constructions::{
    ap_free_set, cayley_rs, disjoint_union, double_cover, hypercube_rs, kneser_rs, ApMethod,
};
use rsg_core::{verify_decomposition, MatchingDecomposition, Rational};

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn edge_pairs(dec: &MatchingDecomposition) -> Vec<(usize, usize)> {
    dec.graph().edges().iter().map(|e| (e.u(), e.v())).collect()
}

/// Degree-sum and pairwise-intersection bounds, recomputed directly.
fn assert_edge_local(dec: &MatchingDecomposition, label: &str) {
    let (n, r, t) = (dec.n(), dec.r(), dec.t());
    let mut deg = vec![0usize; n];
    for (a, b) in edge_pairs(dec) {
        deg[a] += 1;
        deg[b] += 1;
    }
    for (a, b) in edge_pairs(dec) {
        assert!(deg[a] + deg[b] <= t + 1, "{label}: degree sum at ({a},{b})");
    }
    let sets: Vec<Vec<bool>> = dec
        .matchings()
        .iter()
        .map(|m| {
            let mut s = vec![false; n];
            for e in m {
                s[e.u()] = true;
                s[e.v()] = true;
            }
            s
        })
        .collect();
    for i in 0..t {
        for j in i + 1..t {
            let common = (0..n).filter(|&v| sets[i][v] && sets[j][v]).count();
            assert!(common <= r, "{label}: |V_{i} ∩ V_{j}| = {common} > {r}");
        }
    }
}

fn check(dec: &MatchingDecomposition, label: &str) {
    let report = verify_decomposition(dec);
    assert!(report.pass, "{label}: {:?}", report.violations);
    assert_edge_local(dec, label);
}

fn kneser_oracle_edges(k: usize) -> Vec<(usize, usize)> {
    let m = 2 * k + 1;
    let subsets: Vec<u64> = (0u64..1 << m)
        .filter(|s| s.count_ones() as usize == k)
        .collect();
    let mut edges = Vec::new();
    for (x, a) in subsets.iter().enumerate() {
        for (y, b) in subsets.iter().enumerate().skip(x + 1) {
            if a & b == 0 {
                edges.push((x, y));
            }
        }
    }
    edges
}

#[test]
fn kneser_family() {
    for k in 1..=4 {
        let dec = kneser_rs(k).unwrap();
        let label = format!("kneser k={k}");
        check(&dec, &label);
        let n = binomial(2 * k as u64 + 1, k as u64) as usize;
        let r = binomial(2 * k as u64, k as u64) as usize / 2;
        assert_eq!((dec.n(), dec.r(), dec.t()), (n, r, 2 * k + 1), "{label}");
        // Tight: 4 r t = n (t + 1).
        assert_eq!(4 * dec.r() * dec.t(), dec.n() * (dec.t() + 1), "{label}");
        assert_eq!(
            max_r(n as u64, dec.t() as u64),
            Rational::from_integer(r as i128)
        );
        assert_eq!(edge_pairs(&dec), kneser_oracle_edges(k), "{label}");
    }
    let k4 = kneser_rs(4).unwrap();
    assert_eq!((k4.n(), k4.t(), k4.r()), (126, 9, 35));
}

#[test]
fn hypercube_family() {
    for k in 2..=10 {
        for augmented in [false, true] {
            if augmented && k % 2 == 1 {
                continue;
            }
            let dec = hypercube_rs(k, augmented).unwrap();
            let label = format!("hypercube k={k} augmented={augmented}");
            check(&dec, &label);
            let n = 1usize << k;
            let t = if augmented { 2 * k + 2 } else { 2 * k };
            assert_eq!((dec.n(), dec.r(), dec.t()), (n, n / 4, t), "{label}");
            let mut expected: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|&(u, v)| (u ^ v).count_ones() == 1 || (augmented && u ^ v == n - 1))
                .collect();
            expected.sort();
            assert_eq!(edge_pairs(&dec), expected, "{label}");
        }
    }
}

#[test]
fn cayley_family() {
    let mut built = 0;
    for modulus in (3u64..=201).step_by(2) {
        let limit = (modulus - 1) / 3;
        if limit == 0 {
            continue;
        }
        for method in [ApMethod::GreedyBase3, ApMethod::Behrend] {
            let set = ap_free_set(method, limit).unwrap();
            let dec = cayley_rs(modulus, &set).unwrap();
            let label = format!("cayley N={modulus} {}", method.name());
            check(&dec, &label);
            let n = modulus as usize;
            assert_eq!(
                (dec.n(), dec.r(), dec.t()),
                (2 * n, set.len(), n),
                "{label}"
            );
            let mut expected: Vec<(usize, usize)> = (0..n)
                .flat_map(|x| (0..n).map(move |y| (x, y)))
                .filter(|&(x, y)| set.elements.contains(&(((y + n - x) % n) as u64)))
                .map(|(x, y)| (x, n + y))
                .collect();
            expected.sort();
            assert_eq!(edge_pairs(&dec), expected, "{label}");
            assert!(dec.graph().is_bipartite());
            built += 1;
        }
    }
    assert_eq!(built, 2 * 99);
}

#[test]
fn cayley_41_on_greedy_13() {
    let set = ap_free_set(ApMethod::GreedyBase3, 13).unwrap();
    let dec = cayley_rs(41, &set).unwrap();
    assert_eq!((dec.n(), dec.t(), dec.r()), (82, 41, 7));
    check(&dec, "cayley 41");
}

fn all_family_instances() -> Vec<(String, MatchingDecomposition)> {
    let mut out = Vec::new();
    for k in 1..=4 {
        out.push((format!("kneser {k}"), kneser_rs(k).unwrap()));
    }
    for k in 2..=10 {
        out.push((format!("hypercube {k}"), hypercube_rs(k, false).unwrap()));
        if k % 2 == 0 {
            out.push((format!("hypercube+ {k}"), hypercube_rs(k, true).unwrap()));
        }
    }
    let set = ap_free_set(ApMethod::GreedyBase3, 13).unwrap();
    out.push(("cayley 41".into(), cayley_rs(41, &set).unwrap()));
    out
}

#[test]
fn double_cover_of_every_family() {
    for (label, dec) in all_family_instances() {
        let cover = double_cover(&dec).unwrap();
        check(&cover, &format!("cover of {label}"));
        assert_eq!(
            (cover.n(), cover.r(), cover.t()),
            (2 * dec.n(), 2 * dec.r(), dec.t()),
            "{label}"
        );
        assert!(cover.graph().is_bipartite());
        assert_eq!(cover.graph().edge_count(), 2 * dec.graph().edge_count());
    }
}

#[test]
fn triangle_double_cover_is_hexagon() {
    let cover = double_cover(&kneser_rs(1).unwrap()).unwrap();
    assert_eq!((cover.n(), cover.graph().edge_count()), (6, 6));
    assert!(cover.graph().is_regular());
    assert_eq!(cover.graph().degree(0), 2);
    assert_eq!(cover.graph().girth(), Some(6));
}

#[test]
fn disjoint_unions_keep_ratio() {
    for (label, dec) in all_family_instances().into_iter().take(6) {
        for copies in 1..=3 {
            let union = disjoint_union(&dec, copies).unwrap();
            check(&union, &format!("{copies} x {label}"));
            assert_eq!(
                (union.n(), union.r(), union.t()),
                (copies * dec.n(), copies * dec.r(), dec.t())
            );
        }
    }
}

#[test]
fn distance_certificates_hold() {
    for (label, dec) in all_family_instances() {
        let cert = distance_certificate(&dec).unwrap();
        assert!(cert.holds(), "{label}: {cert:?}");
        assert!(cert.min_distance.unwrap() >= 2 * dec.r(), "{label}");
        assert!(
            cert.lower_slack >= 0 && cert.upper_slack >= Rational::from_integer(0),
            "{label}"
        );
    }
    let petersen = distance_certificate(&kneser_rs(2).unwrap()).unwrap();
    assert_eq!(petersen.min_distance, Some(6));
}

#[test]
fn audits_at_quarter_density() {
    for (label, dec) in all_family_instances() {
        if 4 * dec.r() != dec.n() {
            continue;
        }
        let report = expansion_audit(&dec).unwrap();
        assert!(report.passed(), "{label}: {:#?}", report.assertions);
        assert_eq!(report.bfs_violations, 0, "{label}");
        assert!(report.bfs_pairs_checked > 0, "{label}");
        assert_eq!(
            report.assertion("heavy-edge-count").unwrap().status,
            AssertionStatus::Pass
        );
    }
    for (k, augmented) in [(2, false), (4, true)] {
        let report = expansion_audit(&hypercube_rs(k, augmented).unwrap()).unwrap();
        assert_eq!(
            4 * (2 * report.e1 + report.e0),
            report.n * report.t,
            "k={k}"
        );
    }
}
