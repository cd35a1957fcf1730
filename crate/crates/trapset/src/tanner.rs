//! Bipartite Tanner-graph representation, induced-subgraph profiling, and the
//! trapping-set classification predicates.
//!
//! A Tanner graph has variable nodes `0..n_var` on one side and check nodes
//! `0..n_chk` on the other. For a variable subset `S`, the induced subgraph
//! `G(S)` contains `S`, its check neighbors, and the edges between them. A
//! check is *satisfied* if its degree in `G(S)` is even and *unsatisfied*
//! otherwise; `b = |N_o(S)|` counts the unsatisfied checks.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("variable index {0} out of range ({1} variable nodes)")]
    VarOutOfRange(usize, usize),
    #[error("check index {0} out of range ({1} check nodes)")]
    ChkOutOfRange(usize, usize),
    #[error("duplicate edge (v{0}, c{1}); graphs must be simple")]
    DuplicateEdge(usize, usize),
    #[error("classification requires a nonempty variable subset")]
    EmptySubset,
    #[error("label list length does not match node count")]
    LabelMismatch,
}

/// Immutable bipartite graph with adjacency stored on both sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TannerGraph {
    var_adj: Vec<Vec<usize>>,
    chk_adj: Vec<Vec<usize>>,
    var_labels: Option<Vec<String>>,
    chk_labels: Option<Vec<String>>,
}

impl TannerGraph {
    /// Builds a graph from an edge list. Rejects out-of-range indices and
    /// duplicate edges.
    pub fn build(
        n_var: usize,
        n_chk: usize,
        edges: &[(usize, usize)],
    ) -> Result<Self, GraphError> {
        let mut var_adj = vec![Vec::new(); n_var];
        let mut chk_adj = vec![Vec::new(); n_chk];
        for &(v, c) in edges {
            if v >= n_var {
                return Err(GraphError::VarOutOfRange(v, n_var));
            }
            if c >= n_chk {
                return Err(GraphError::ChkOutOfRange(c, n_chk));
            }
            if var_adj[v].contains(&c) {
                return Err(GraphError::DuplicateEdge(v, c));
            }
            var_adj[v].push(c);
            chk_adj[c].push(v);
        }
        for adj in var_adj.iter_mut() {
            adj.sort_unstable();
        }
        for adj in chk_adj.iter_mut() {
            adj.sort_unstable();
        }
        Ok(Self { var_adj, chk_adj, var_labels: None, chk_labels: None })
    }

    /// Attaches node labels (used by gadget-generated graphs).
    pub fn with_labels(
        mut self,
        var_labels: Vec<String>,
        chk_labels: Vec<String>,
    ) -> Result<Self, GraphError> {
        if var_labels.len() != self.n_var() || chk_labels.len() != self.n_chk() {
            return Err(GraphError::LabelMismatch);
        }
        self.var_labels = Some(var_labels);
        self.chk_labels = Some(chk_labels);
        Ok(self)
    }

    pub fn n_var(&self) -> usize {
        self.var_adj.len()
    }

    pub fn n_chk(&self) -> usize {
        self.chk_adj.len()
    }

    pub fn n_edges(&self) -> usize {
        self.var_adj.iter().map(Vec::len).sum()
    }

    /// Check neighbors of variable `v`, sorted ascending.
    pub fn var_adj(&self, v: usize) -> &[usize] {
        &self.var_adj[v]
    }

    /// Variable neighbors of check `c`, sorted ascending.
    pub fn chk_adj(&self, c: usize) -> &[usize] {
        &self.chk_adj[c]
    }

    pub fn var_degree(&self, v: usize) -> usize {
        self.var_adj[v].len()
    }

    pub fn chk_degree(&self, c: usize) -> usize {
        self.chk_adj[c].len()
    }

    pub fn var_label(&self, v: usize) -> Option<&str> {
        self.var_labels.as_ref().map(|l| l[v].as_str())
    }

    pub fn chk_label(&self, c: usize) -> Option<&str> {
        self.chk_labels.as_ref().map(|l| l[c].as_str())
    }

    /// All edges as `(var, chk)` pairs in variable-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.var_adj
            .iter()
            .enumerate()
            .flat_map(|(v, adj)| adj.iter().map(move |&c| (v, c)))
    }

    /// Structural equality ignoring labels.
    pub fn same_structure(&self, other: &TannerGraph) -> bool {
        self.var_adj == other.var_adj && self.chk_adj == other.chk_adj
    }
}

/// Classification flags for a variable subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassFlags {
    pub is_ets: bool,
    pub is_lets: bool,
    pub is_abs: bool,
    pub is_eabs: bool,
}

/// Induced-subgraph profile of a variable subset `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetProfile {
    /// Sorted, duplicate-free member list.
    pub subset: Vec<usize>,
    /// Unsatisfied checks `N_o(S)` (odd degree in `G(S)`), sorted.
    pub odd_checks: Vec<usize>,
    /// Satisfied checks `N_e(S)` (even degree in `G(S)`), sorted.
    pub even_checks: Vec<usize>,
    /// Degree in `G(S)` of every check in `N(S)`.
    pub check_degrees: BTreeMap<usize, usize>,
    pub flags: ClassFlags,
}

impl SubsetProfile {
    pub fn a(&self) -> usize {
        self.subset.len()
    }

    pub fn b(&self) -> usize {
        self.odd_checks.len()
    }
}

/// Computes the induced-subgraph profile of `S`. The empty subset is accepted
/// (all flags false); `classify` is the strict entry point.
pub fn subset_profile(g: &TannerGraph, subset: &[usize]) -> Result<SubsetProfile, GraphError> {
    let mut s = subset.to_vec();
    s.sort_unstable();
    s.dedup();
    for &v in &s {
        if v >= g.n_var() {
            return Err(GraphError::VarOutOfRange(v, g.n_var()));
        }
    }
    let mut check_degrees: BTreeMap<usize, usize> = BTreeMap::new();
    for &v in &s {
        for &c in g.var_adj(v) {
            *check_degrees.entry(c).or_insert(0) += 1;
        }
    }
    let mut odd_checks = Vec::new();
    let mut even_checks = Vec::new();
    for (&c, &d) in &check_degrees {
        if d % 2 == 1 {
            odd_checks.push(c);
        } else {
            even_checks.push(c);
        }
    }
    let flags = flags_of(g, &s, &check_degrees);
    Ok(SubsetProfile { subset: s, odd_checks, even_checks, check_degrees, flags })
}

/// Classifies a nonempty subset. The four problems all fix `a >= 1`, so the
/// empty subset is rejected rather than given vacuous flags.
pub fn classify(g: &TannerGraph, subset: &[usize]) -> Result<ClassFlags, GraphError> {
    let profile = subset_profile(g, subset)?;
    if profile.subset.is_empty() {
        return Err(GraphError::EmptySubset);
    }
    Ok(profile.flags)
}

fn flags_of(g: &TannerGraph, s: &[usize], check_degrees: &BTreeMap<usize, usize>) -> ClassFlags {
    if s.is_empty() {
        return ClassFlags { is_ets: false, is_lets: false, is_abs: false, is_eabs: false };
    }
    let is_ets = check_degrees.values().all(|&d| d <= 2);
    let mut is_lets = is_ets;
    let mut is_abs = true;
    for &v in s {
        let mut even = 0usize;
        let mut odd = 0usize;
        let mut deg2 = 0usize;
        for c in g.var_adj(v) {
            let d = check_degrees[c];
            if d % 2 == 0 {
                even += 1;
            } else {
                odd += 1;
            }
            if d == 2 {
                deg2 += 1;
            }
        }
        // Leafless: at least two satisfied (degree-2) checks per member.
        if deg2 < 2 {
            is_lets = false;
        }
        // ABS: strict majority of satisfied neighbors, parity only.
        if even <= odd {
            is_abs = false;
        }
    }
    ClassFlags { is_ets, is_lets, is_abs, is_eabs: is_abs && is_ets }
}

/// Degree-regularity report for a Tanner graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub is_var_regular: bool,
    pub d_v: Option<usize>,
    pub is_chk_regular: bool,
    pub d_c: Option<usize>,
}

pub fn regularity(g: &TannerGraph) -> RegularityReport {
    fn side(mut degs: impl Iterator<Item = usize>) -> (bool, Option<usize>) {
        match degs.next() {
            None => (true, None),
            Some(first) => {
                if degs.all(|d| d == first) {
                    (true, Some(first))
                } else {
                    (false, None)
                }
            }
        }
    }
    let (is_var_regular, d_v) = side((0..g.n_var()).map(|v| g.var_degree(v)));
    let (is_chk_regular, d_c) = side((0..g.n_chk()).map(|c| g.chk_degree(c)));
    RegularityReport { is_var_regular, d_v, is_chk_regular, d_c }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// 6-cycle: v1-c1-v2-c2-v3-c3-v1 (0-based here).
    fn six_cycle() -> TannerGraph {
        TannerGraph::build(3, 3, &[(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn build_empty_graph() {
        let g = TannerGraph::build(0, 0, &[]).unwrap();
        assert_eq!(g.n_var(), 0);
        assert_eq!(g.n_chk(), 0);
        assert_eq!(g.n_edges(), 0);
    }

    #[test]
    fn build_six_cycle_is_regular() {
        let g = six_cycle();
        let r = regularity(&g);
        assert_eq!(r, RegularityReport {
            is_var_regular: true,
            d_v: Some(2),
            is_chk_regular: true,
            d_c: Some(2),
        });
    }

    #[test]
    fn build_rejects_duplicate_edge() {
        let err = TannerGraph::build(2, 2, &[(0, 0), (0, 0)]).unwrap_err();
        assert_eq!(err, GraphError::DuplicateEdge(0, 0));
    }

    #[test]
    fn build_rejects_out_of_range() {
        assert_eq!(
            TannerGraph::build(2, 2, &[(2, 0)]).unwrap_err(),
            GraphError::VarOutOfRange(2, 2)
        );
        assert_eq!(
            TannerGraph::build(2, 2, &[(0, 5)]).unwrap_err(),
            GraphError::ChkOutOfRange(5, 2)
        );
    }

    #[test]
    fn empty_subset_profile() {
        let g = six_cycle();
        let p = subset_profile(&g, &[]).unwrap();
        assert_eq!(p.a(), 0);
        assert_eq!(p.b(), 0);
        assert!(p.check_degrees.is_empty());
    }

    #[test]
    fn six_cycle_full_subset_is_lets_and_eabs() {
        let g = six_cycle();
        let p = subset_profile(&g, &[0, 1, 2]).unwrap();
        assert_eq!(p.a(), 3);
        assert_eq!(p.b(), 0);
        assert!(p.check_degrees.values().all(|&d| d == 2));
        assert!(p.flags.is_ets);
        assert!(p.flags.is_lets);
        assert!(p.flags.is_abs);
        assert!(p.flags.is_eabs);
    }

    #[test]
    fn single_variable_is_not_lets() {
        let g = six_cycle();
        let f = classify(&g, &[0]).unwrap();
        assert!(f.is_ets);
        assert!(!f.is_lets);
    }

    #[test]
    fn degree_three_star_is_not_abs() {
        // One variable connected to three checks: 0 even vs 3 odd.
        let g = TannerGraph::build(1, 3, &[(0, 0), (0, 1), (0, 2)]).unwrap();
        let f = classify(&g, &[0]).unwrap();
        assert!(!f.is_abs);
        assert!(!f.is_eabs);
    }

    #[test]
    fn classify_rejects_empty_subset() {
        let g = six_cycle();
        assert_eq!(classify(&g, &[]).unwrap_err(), GraphError::EmptySubset);
    }

    #[test]
    fn classify_rejects_out_of_range() {
        let g = six_cycle();
        assert!(matches!(classify(&g, &[7]), Err(GraphError::VarOutOfRange(7, 3))));
    }

    #[test]
    fn ets_flag_flips_under_degree_cap() {
        // Three variables all adjacent to check 0; any two keep it elementary,
        // the third pushes check 0 to degree three.
        let g = TannerGraph::build(3, 2, &[(0, 0), (1, 0), (2, 0), (0, 1), (1, 1)]).unwrap();
        assert!(classify(&g, &[0, 1]).unwrap().is_ets);
        assert!(!classify(&g, &[0, 1, 2]).unwrap().is_ets);
    }
}
