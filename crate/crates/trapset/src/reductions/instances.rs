//! Direct gadget constructions for the Min-a problems: one Tanner graph per
//! cubic monotone 1-IN-3 instance, built so that a trapping set with the
//! target number of unsatisfied checks exists iff the formula is satisfiable.
//!
//! Per clause `c` the LETS instance carries a block of three variable nodes
//! `g1..g3`, a fan of `2*eta+1` identical-neighborhood checks `y_i ~
//! {g1,g2,g3}`, and two coupling checks `w1 ~ {g1,g2} + the clause's x1
//! nodes`, `w2 ~ {g1,g3} + x2 nodes`. The EABS instance widens the block to
//! `g1..g5` with a second fan `s_i ~ {g1,g4,g5}` and couplings `w1 ~ {g1} +
//! x1 nodes`, `w2 ~ {g2,g3,g4,g5} + x2 nodes`.

use crate::sat::{Assignment, ClassDescriptor, MonotoneFormula, validate_class};
use crate::tanner::TannerGraph;

use super::{check_names, require_uniform, Provenance, ReductionError, StepTrace};

fn require_cubic_3uniform(phi: &MonotoneFormula) -> Result<usize, ReductionError> {
    check_names(phi)?;
    if phi.n_vars() == 0 || phi.n_clauses() == 0 {
        return Err(ReductionError::EmptyFormula);
    }
    require_uniform(phi, 3)?;
    let class = validate_class(phi, &ClassDescriptor::cubic(Some(3)));
    if !class.is_empty() {
        return Err(ReductionError::ClassViolations(class.len()));
    }
    // Cubic and 3-uniform forces |C| = |X|.
    debug_assert_eq!(phi.n_clauses(), phi.n_vars());
    Ok(phi.n_vars())
}

/// Min-a-LETS instance graph with node bookkeeping for witness transport.
#[derive(Debug, Clone)]
pub struct MinALetsInstance {
    pub graph: TannerGraph,
    /// Target unsatisfied-check count `eta * (2*eta + 1)`.
    pub b: usize,
    /// The only possible LETS size at that `b`; `None` when `3 | eta` fails,
    /// in which case no such LETS exists at all.
    pub a_expected: Option<usize>,
    pub eta: usize,
    /// Variable-node ids `x1`/`x2` per source variable.
    pub x1: Vec<usize>,
    pub x2: Vec<usize>,
    /// Gadget variable ids `[g1, g2, g3]` per clause.
    pub g: Vec<[usize; 3]>,
    /// Check-node ids per clause.
    pub y: Vec<Vec<usize>>,
    pub w1: Vec<usize>,
    pub w2: Vec<usize>,
    pub trace: StepTrace,
}

/// Builds the Min-a-LETS instance from a cubic monotone 1-IN-3 formula:
/// `5*eta` variable nodes, `eta*(2*eta+3)` check nodes.
pub fn build_min_a_lets_instance(
    phi: &MonotoneFormula,
) -> Result<MinALetsInstance, ReductionError> {
    let eta = require_cubic_3uniform(phi)?;
    let z = 2 * eta + 1;
    let mut trace = StepTrace::new("min_a_lets");
    trace.param("eta", eta as i64);
    trace.param("z", z as i64);

    // Gadget variables first so the clause blocks are decided early in
    // index-ordered searches; x nodes follow.
    let mut var_labels = Vec::new();
    let mut g = Vec::with_capacity(eta);
    for c in 0..eta {
        let base = var_labels.len();
        for r in 0..3 {
            var_labels.push(format!("g{}@c{}", r + 1, c + 1));
            trace.var_provenance.push(Provenance::gadget("clause_gadget.g", vec![c, r]));
        }
        g.push([base, base + 1, base + 2]);
    }
    let mut x1 = Vec::with_capacity(eta);
    let mut x2 = Vec::with_capacity(eta);
    for v in 0..phi.n_vars() {
        x1.push(var_labels.len());
        var_labels.push(format!("x1@{}", phi.name(v)));
        trace.var_provenance.push(Provenance::source(format!("{}:1", phi.name(v))));
        x2.push(var_labels.len());
        var_labels.push(format!("x2@{}", phi.name(v)));
        trace.var_provenance.push(Provenance::source(format!("{}:2", phi.name(v))));
    }

    let mut chk_labels = Vec::new();
    let mut edges = Vec::new();
    let mut y = Vec::with_capacity(eta);
    let mut w1 = Vec::with_capacity(eta);
    let mut w2 = Vec::with_capacity(eta);
    for (c, clause) in phi.clauses().iter().enumerate() {
        let [g1, g2, g3] = g[c];
        let mut fan = Vec::with_capacity(z);
        for i in 0..z {
            let yc = chk_labels.len();
            chk_labels.push(format!("y{}@c{}", i + 1, c + 1));
            trace.constraint_provenance.push(Provenance::gadget("clause_gadget.y", vec![c, i]));
            for v in [g1, g2, g3] {
                edges.push((v, yc));
            }
            fan.push(yc);
        }
        y.push(fan);
        let wc1 = chk_labels.len();
        chk_labels.push(format!("w1@c{}", c + 1));
        trace.constraint_provenance.push(Provenance::gadget("clause_gadget.w1", vec![c]));
        edges.push((g1, wc1));
        edges.push((g2, wc1));
        for &v in clause {
            edges.push((x1[v], wc1));
        }
        w1.push(wc1);
        let wc2 = chk_labels.len();
        chk_labels.push(format!("w2@c{}", c + 1));
        trace.constraint_provenance.push(Provenance::gadget("clause_gadget.w2", vec![c]));
        edges.push((g1, wc2));
        edges.push((g3, wc2));
        for &v in clause {
            edges.push((x2[v], wc2));
        }
        w2.push(wc2);
    }

    let graph = TannerGraph::build(var_labels.len(), chk_labels.len(), &edges)
        .expect("gadget edges are valid by construction")
        .with_labels(var_labels, chk_labels)
        .expect("label counts match");
    debug_assert_eq!(graph.n_var(), 5 * eta);
    debug_assert_eq!(graph.n_chk(), eta * (2 * eta + 3));

    let b = eta * z;
    let a_expected = (eta % 3 == 0).then(|| eta + 2 * eta / 3);
    Ok(MinALetsInstance { graph, b, a_expected, eta, x1, x2, g, y, w1, w2, trace })
}

impl MinALetsInstance {
    /// 1-IN-3 assignment -> the canonical LETS witness: both x-nodes of every
    /// true variable plus `g1` of every clause.
    pub fn forward(&self, l: &Assignment) -> Vec<usize> {
        let mut s: Vec<usize> = self.g.iter().map(|&[g1, _, _]| g1).collect();
        for v in 0..l.n_vars() {
            if l.get(v) {
                s.push(self.x1[v]);
                s.push(self.x2[v]);
            }
        }
        s.sort_unstable();
        s
    }

    /// Witness subset -> assignment: a variable is true iff its `x1` node is
    /// in the subset.
    pub fn backward(&self, subset: &[usize]) -> Assignment {
        Assignment(self.x1.iter().map(|id| subset.contains(id)).collect())
    }
}

/// Min-a-EABS instance graph with node bookkeeping for witness transport.
#[derive(Debug, Clone)]
pub struct MinAEabsInstance {
    pub graph: TannerGraph,
    pub b: usize,
    pub a_expected: Option<usize>,
    pub eta: usize,
    pub x1: Vec<usize>,
    pub x2: Vec<usize>,
    /// Gadget variable ids `[g1..g5]` per clause.
    pub g: Vec<[usize; 5]>,
    pub y: Vec<Vec<usize>>,
    pub s: Vec<Vec<usize>>,
    pub w1: Vec<usize>,
    pub w2: Vec<usize>,
    pub trace: StepTrace,
}

/// Builds the Min-a-EABS instance from a cubic monotone 1-IN-3 formula:
/// `7*eta` variable nodes, `eta*(4*eta+4)` check nodes.
pub fn build_min_a_eabs_instance(
    phi: &MonotoneFormula,
) -> Result<MinAEabsInstance, ReductionError> {
    let eta = require_cubic_3uniform(phi)?;
    let z = 2 * eta + 1;
    let mut trace = StepTrace::new("min_a_eabs");
    trace.param("eta", eta as i64);
    trace.param("z", z as i64);

    let mut var_labels = Vec::new();
    let mut g = Vec::with_capacity(eta);
    for c in 0..eta {
        let base = var_labels.len();
        for r in 0..5 {
            var_labels.push(format!("g{}@c{}", r + 1, c + 1));
            trace.var_provenance.push(Provenance::gadget("clause_gadget.g", vec![c, r]));
        }
        g.push([base, base + 1, base + 2, base + 3, base + 4]);
    }
    let mut x1 = Vec::with_capacity(eta);
    let mut x2 = Vec::with_capacity(eta);
    for v in 0..phi.n_vars() {
        x1.push(var_labels.len());
        var_labels.push(format!("x1@{}", phi.name(v)));
        trace.var_provenance.push(Provenance::source(format!("{}:1", phi.name(v))));
        x2.push(var_labels.len());
        var_labels.push(format!("x2@{}", phi.name(v)));
        trace.var_provenance.push(Provenance::source(format!("{}:2", phi.name(v))));
    }

    let mut chk_labels = Vec::new();
    let mut edges = Vec::new();
    let mut y = Vec::with_capacity(eta);
    let mut s_checks = Vec::with_capacity(eta);
    let mut w1 = Vec::with_capacity(eta);
    let mut w2 = Vec::with_capacity(eta);
    for (c, clause) in phi.clauses().iter().enumerate() {
        let [g1, g2, g3, g4, g5] = g[c];
        let mut fan = Vec::with_capacity(z);
        for i in 0..z {
            let yc = chk_labels.len();
            chk_labels.push(format!("y{}@c{}", i + 1, c + 1));
            trace.constraint_provenance.push(Provenance::gadget("clause_gadget.y", vec![c, i]));
            for v in [g1, g2, g3] {
                edges.push((v, yc));
            }
            fan.push(yc);
        }
        y.push(fan);
        let mut fan = Vec::with_capacity(z);
        for i in 0..z {
            let sc = chk_labels.len();
            chk_labels.push(format!("s{}@c{}", i + 1, c + 1));
            trace.constraint_provenance.push(Provenance::gadget("clause_gadget.s", vec![c, i]));
            for v in [g1, g4, g5] {
                edges.push((v, sc));
            }
            fan.push(sc);
        }
        s_checks.push(fan);
        let wc1 = chk_labels.len();
        chk_labels.push(format!("w1@c{}", c + 1));
        trace.constraint_provenance.push(Provenance::gadget("clause_gadget.w1", vec![c]));
        edges.push((g1, wc1));
        for &v in clause {
            edges.push((x1[v], wc1));
        }
        w1.push(wc1);
        let wc2 = chk_labels.len();
        chk_labels.push(format!("w2@c{}", c + 1));
        trace.constraint_provenance.push(Provenance::gadget("clause_gadget.w2", vec![c]));
        for v in [g2, g3, g4, g5] {
            edges.push((v, wc2));
        }
        for &v in clause {
            edges.push((x2[v], wc2));
        }
        w2.push(wc2);
    }

    let graph = TannerGraph::build(var_labels.len(), chk_labels.len(), &edges)
        .expect("gadget edges are valid by construction")
        .with_labels(var_labels, chk_labels)
        .expect("label counts match");
    debug_assert_eq!(graph.n_var(), 7 * eta);
    debug_assert_eq!(graph.n_chk(), eta * (4 * eta + 4));

    let b = eta * z;
    let a_expected = (eta % 3 == 0).then(|| 2 * eta + 2 * eta / 3);
    Ok(MinAEabsInstance { graph, b, a_expected, eta, x1, x2, g, y, s: s_checks, w1, w2, trace })
}

impl MinAEabsInstance {
    /// 1-IN-3 assignment -> the canonical EABS witness: both x-nodes of every
    /// true variable plus `g1` and `g2` of every clause.
    pub fn forward(&self, l: &Assignment) -> Vec<usize> {
        let mut s: Vec<usize> = self.g.iter().flat_map(|&[g1, g2, ..]| [g1, g2]).collect();
        for v in 0..l.n_vars() {
            if l.get(v) {
                s.push(self.x1[v]);
                s.push(self.x2[v]);
            }
        }
        s.sort_unstable();
        s
    }

    pub fn backward(&self, subset: &[usize]) -> Assignment {
        Assignment(self.x1.iter().map(|id| subset.contains(id)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sat::{brute_force_gamma_in_beta, check_gamma_in_beta, triple_clause_formula};
    use crate::tanner::subset_profile;

    #[test]
    fn lets_instance_counts_eta3() {
        let inst = build_min_a_lets_instance(&triple_clause_formula()).unwrap();
        assert_eq!(inst.graph.n_var(), 15);
        assert_eq!(inst.graph.n_chk(), 27);
        assert_eq!(inst.b, 21);
        assert_eq!(inst.a_expected, Some(5));
        assert!(inst.trace.is_total_for(15, 27));
        // Full variable set profile exercises the whole graph.
        let all: Vec<usize> = (0..15).collect();
        let p = subset_profile(&inst.graph, &all).unwrap();
        assert_eq!(p.a(), 15);
        assert_eq!(p.check_degrees.len(), 27);
    }

    #[test]
    fn lets_witness_round_trip_eta3() {
        let phi = triple_clause_formula();
        let inst = build_min_a_lets_instance(&phi).unwrap();
        let l = brute_force_gamma_in_beta(&phi, 1, 24).unwrap().unwrap();
        let s = inst.forward(&l);
        let p = subset_profile(&inst.graph, &s).unwrap();
        assert_eq!((p.a(), p.b()), (5, 21));
        assert!(p.flags.is_lets);
        let back = inst.backward(&s);
        assert!(check_gamma_in_beta(&phi, &back, 1).unwrap());
    }

    #[test]
    fn eabs_instance_counts_eta3() {
        let inst = build_min_a_eabs_instance(&triple_clause_formula()).unwrap();
        assert_eq!(inst.graph.n_var(), 21);
        assert_eq!(inst.graph.n_chk(), 48);
        assert_eq!(inst.b, 21);
        assert_eq!(inst.a_expected, Some(8));
        assert!(inst.trace.is_total_for(21, 48));
    }

    #[test]
    fn eabs_witness_round_trip_eta3() {
        let phi = triple_clause_formula();
        let inst = build_min_a_eabs_instance(&phi).unwrap();
        let l = brute_force_gamma_in_beta(&phi, 1, 24).unwrap().unwrap();
        let s = inst.forward(&l);
        let p = subset_profile(&inst.graph, &s).unwrap();
        assert_eq!((p.a(), p.b()), (8, 21));
        assert!(p.flags.is_eabs);
        let back = inst.backward(&s);
        assert!(check_gamma_in_beta(&phi, &back, 1).unwrap());
    }

    #[test]
    fn instances_reject_non_cubic_input() {
        let mut f = MonotoneFormula::with_n_vars(3);
        f.push_clause(&[0, 1, 2]).unwrap();
        assert!(matches!(
            build_min_a_lets_instance(&f),
            Err(ReductionError::ClassViolations(_))
        ));
        assert!(matches!(
            build_min_a_eabs_instance(&f),
            Err(ReductionError::ClassViolations(_))
        ));
    }
}
