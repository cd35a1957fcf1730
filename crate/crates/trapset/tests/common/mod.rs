//! Test-side oracles, written independently of the library internals: a
//! definitional subset classifier and seeded random graph generators.

// Each integration test binary uses a different slice of these helpers.
#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use trapset::tanner::TannerGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NaiveFlags {
    pub is_ets: bool,
    pub is_lets: bool,
    pub is_abs: bool,
    pub is_eabs: bool,
}

/// Straight-from-the-definitions classifier over the induced subgraph,
/// deliberately sharing no code with the library's classifier.
pub fn naive_classify(g: &TannerGraph, subset: &[usize]) -> (usize, NaiveFlags) {
    let in_s = |v: usize| subset.contains(&v);
    let chk_deg = |c: usize| g.chk_adj(c).iter().filter(|&&v| in_s(v)).count();

    let mut b = 0;
    let mut is_ets = true;
    for c in 0..g.n_chk() {
        let d = chk_deg(c);
        if d % 2 == 1 {
            b += 1;
        }
        if d > 2 {
            is_ets = false;
        }
    }

    let mut is_lets = is_ets;
    let mut is_abs = true;
    for &v in subset {
        let mut even = 0;
        let mut odd = 0;
        let mut deg2 = 0;
        for &c in g.var_adj(v) {
            let d = chk_deg(c);
            if d % 2 == 0 {
                even += 1;
            } else {
                odd += 1;
            }
            if d == 2 {
                deg2 += 1;
            }
        }
        if deg2 < 2 {
            is_lets = false;
        }
        if even <= odd {
            is_abs = false;
        }
    }
    let flags =
        NaiveFlags { is_ets, is_lets, is_abs, is_eabs: is_abs && is_ets };
    (b, flags)
}

/// Random bipartite graph: each possible edge drawn independently.
pub fn random_bipartite(n_var: usize, n_chk: usize, p_percent: u32, seed: u64) -> TannerGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 0..n_var {
        for c in 0..n_chk {
            if rng.gen_range(0..100) < p_percent {
                edges.push((v, c));
            }
        }
    }
    TannerGraph::build(n_var, n_chk, &edges).expect("generated edges are valid")
}

/// Variable-regular random graph: every variable picks `d_v` distinct checks.
pub fn random_var_regular(n_var: usize, n_chk: usize, d_v: usize, seed: u64) -> TannerGraph {
    assert!(d_v <= n_chk);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 0..n_var {
        let mut picks: Vec<usize> = Vec::new();
        while picks.len() < d_v {
            let c = rng.gen_range(0..n_chk);
            if !picks.contains(&c) {
                picks.push(c);
            }
        }
        for c in picks {
            edges.push((v, c));
        }
    }
    TannerGraph::build(n_var, n_chk, &edges).expect("generated edges are valid")
}

/// All non-empty subsets of `0..n` in ascending bitmask order.
pub fn all_subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u64..(1u64 << n)).map(move |mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect())
}
