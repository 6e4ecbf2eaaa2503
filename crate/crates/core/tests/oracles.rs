//! Independent oracles: brute-force searches and closed-form counts checked
//! against the library's own enumeration.

use std::collections::BTreeSet;

use silt_core::derived::{HomSpace, Stalk, StalkSum};
use silt_core::instance::Instance;
use silt_core::quiver::{catalogue, DynkinKind};
use silt_core::roots::positive_roots;
use silt_core::silting::{enumerate_silting, is_connected, silting_quiver};
use silt_core::suite::{enumerate_permuted, fuss_catalan};

/// Silting in `S_m` decided only from homotopy-category Hom spaces of
/// presentations, never from the hereditary shortcut.
fn brute_force(inst: &Instance, m: usize) -> BTreeSet<StalkSum> {
    let q = inst.quiver();
    let cands = inst.domain_candidates(m);
    let k = cands.len();
    let hom = |a: Stalk, b: Stalk| HomSpace::new(q, &inst.present_stalk(a), &inst.present_stalk(b)).dim();
    // compatible[i][j]: Hom(c_i, c_j[s]) = 0 for every s > 0.
    let span = (2 * m + 2) as i32;
    let compatible: Vec<Vec<bool>> = (0..k)
        .map(|i| (0..k).map(|j| (1..=span).all(|s| hom(cands[i], cands[j].shifted(s)) == 0)).collect())
        .collect();
    let n = inst.rank();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << k) {
        if mask.count_ones() as usize != n {
            continue;
        }
        let idx: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
        if idx.iter().all(|&i| idx.iter().all(|&j| compatible[i][j])) {
            out.insert(idx.iter().map(|&i| cands[i]).collect());
        }
    }
    out
}

#[test]
fn enumeration_matches_brute_force() {
    for (label, m) in [("A2", 1), ("A2", 2), ("A3:1>2<3", 1)] {
        let inst = Instance::parse(label).unwrap();
        let ours: BTreeSet<StalkSum> = enumerate_silting(&inst, m).into_iter().collect();
        assert_eq!(ours, brute_force(&inst, m), "{label} m={m}");
    }
}

#[test]
fn type_a_counts_are_fuss_catalan() {
    for (label, n, m) in [("A2", 2, 1), ("A2", 2, 2), ("A2", 2, 3), ("A3", 3, 1), ("A3", 3, 2), ("A4", 4, 1)] {
        let inst = Instance::parse(label).unwrap();
        assert_eq!(enumerate_silting(&inst, m).len() as u128, fuss_catalan(n, m), "{label} m={m}");
    }
}

#[test]
fn d4_count() {
    // Type D_n Catalan number (3n-2)/n * binom(2n-2, n-1) at n = 4.
    let inst = Instance::parse("D4").unwrap();
    assert_eq!(enumerate_silting(&inst, 1).len(), 50);
}

#[test]
fn permuted_search_agrees() {
    for (label, m) in [("A3:1<2>3", 1), ("A2", 2)] {
        let inst = Instance::parse(label).unwrap();
        for seed in [1, 7, 99] {
            assert_eq!(enumerate_permuted(&inst, m, seed), enumerate_silting(&inst, m));
        }
    }
}

#[test]
fn indecomposables_are_positive_roots() {
    for t in catalogue() {
        if t.kind == DynkinKind::E && t.rank > 6 {
            continue;
        }
        let inst = Instance::new(silt_core::quiver::Quiver::default_orientation(t));
        let dims: BTreeSet<Vec<usize>> = inst.table().entries().iter().map(|e| e.rep.dims().to_vec()).collect();
        let roots: BTreeSet<Vec<usize>> = positive_roots(t).into_iter().collect();
        assert_eq!(inst.table().len(), roots.len(), "{t}");
        assert_eq!(dims, roots, "{t}");
    }
}

#[test]
fn silting_quivers_connected() {
    for (label, m) in [("A2", 1), ("A2", 2), ("A3", 1), ("A3:1<2>3", 2)] {
        let inst = Instance::parse(label).unwrap();
        let sq = silting_quiver(&inst, m).unwrap();
        assert!(is_connected(&sq), "{label} m={m}");
    }
}
