//! The four-step chain: Monotone 1-IN-3 SAT -> Monotone 2-IN-beta SAT ->
//! Cubic Monotone 2-IN-beta SAT -> alpha-Monotone 2-IN-beta SAT -> a Tanner
//! graph on which the target-size LETS question decides the formula.
//!
//! Every step carries witness transport in both directions, so a satisfying
//! assignment of the chain input can be pushed forward to a trapping-set
//! witness and any witness pulled back to a satisfying assignment.

use crate::sat::{complement, Assignment, ClassDescriptor, MonotoneFormula, validate_class};
use crate::tanner::TannerGraph;

use super::equalizer::build_equalizer_formula;
use super::{check_names, Provenance, ReductionError, StepTrace};

// ---------------------------------------------------------------------------
// Step 1: widen clauses from 3 to beta.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct Step1 {
    pub output: MonotoneFormula,
    pub beta: usize,
    input_n_vars: usize,
    /// The single fresh variable appended to every clause when beta = 4.
    pad_var: Option<usize>,
    /// For beta >= 5: per fresh block, the x-variable ids and y-variable ids.
    blocks: Vec<(Vec<usize>, Vec<usize>)>,
    pub trace: StepTrace,
}

/// Converts a 3-uniform monotone formula into a beta-uniform one that has a
/// 2-IN-beta assignment iff the input has a 1-IN-3 assignment.
pub fn step1_expand(phi: &MonotoneFormula, beta: usize) -> Result<Step1, ReductionError> {
    check_names(phi)?;
    require3(phi)?;
    if beta < 3 {
        return Err(ReductionError::BadBeta(beta));
    }
    let n = phi.n_vars();
    let mut trace = StepTrace::new("step1");
    trace.param("beta", beta as i64);
    for name in phi.names() {
        trace.var_provenance.push(Provenance::source(name));
    }

    let step = match beta {
        3 => {
            for i in 0..phi.n_clauses() {
                trace.constraint_provenance.push(Provenance::source(format!("c{}", i + 1)));
            }
            Step1 {
                output: phi.clone(),
                beta,
                input_n_vars: n,
                pad_var: None,
                blocks: Vec::new(),
                trace,
            }
        }
        4 => {
            let mut names = phi.names().to_vec();
            let pad = names.len();
            names.push("$p".into());
            trace.var_provenance.push(Provenance::gadget("widen.pad", vec![]));
            let mut out = MonotoneFormula::new(names);
            for (i, c) in phi.clauses().iter().enumerate() {
                let mut wide = c.clone();
                wide.push(pad);
                out.push_clause(&wide)?;
                trace.constraint_provenance.push(Provenance::source(format!("c{}", i + 1)));
            }
            Step1 {
                output: out,
                beta,
                input_n_vars: n,
                pad_var: Some(pad),
                blocks: Vec::new(),
                trace,
            }
        }
        _ => {
            // beta >= 5: beta-3 fresh blocks; the original clauses are padded
            // with the third x-variable of every block, which every 2-IN-beta
            // assignment forces to false.
            let mut names = phi.names().to_vec();
            let mut blocks = Vec::new();
            for i in 0..beta - 3 {
                let xs: Vec<usize> = (0..beta - 1)
                    .map(|m| {
                        trace.var_provenance.push(Provenance::gadget("widen.x", vec![i, m]));
                        names.push(format!("$s{}.x{}", i + 1, m + 1));
                        names.len() - 1
                    })
                    .collect();
                let ys: Vec<usize> = (0..beta - 2)
                    .map(|m| {
                        trace.var_provenance.push(Provenance::gadget("widen.y", vec![i, m]));
                        names.push(format!("$s{}.y{}", i + 1, m + 1));
                        names.len() - 1
                    })
                    .collect();
                blocks.push((xs, ys));
            }
            let mut out = MonotoneFormula::new(names);
            let pads: Vec<usize> = blocks.iter().map(|(xs, _)| xs[2]).collect();
            for (i, c) in phi.clauses().iter().enumerate() {
                let mut wide = c.clone();
                wide.extend_from_slice(&pads);
                out.push_clause(&wide)?;
                trace.constraint_provenance.push(Provenance::source(format!("c{}", i + 1)));
            }
            for (i, (xs, ys)) in blocks.iter().enumerate() {
                for (m, &y) in ys.iter().enumerate() {
                    let mut c = xs.clone();
                    c.push(y);
                    out.push_clause(&c)?;
                    trace.constraint_provenance.push(Provenance::gadget("widen.clause", vec![i, m]));
                }
                let mut c = ys.clone();
                c.push(xs[0]);
                c.push(xs[1]);
                out.push_clause(&c)?;
                trace
                    .constraint_provenance
                    .push(Provenance::gadget("widen.clause", vec![i, beta - 2]));
            }
            Step1 { output: out, beta, input_n_vars: n, pad_var: None, blocks, trace }
        }
    };
    Ok(step)
}

impl Step1 {
    /// Maps a 1-IN-3 assignment of the input to a 2-IN-beta assignment of the
    /// output.
    pub fn forward(&self, l: &Assignment) -> Assignment {
        match self.beta {
            3 => complement(l),
            4 => {
                let mut values = l.0.clone();
                values.push(true); // pad variable
                Assignment(values)
            }
            _ => {
                let mut values = vec![false; self.output.n_vars()];
                for (v, &b) in l.0.iter().enumerate() {
                    values[v] = !b; // complement is 2-IN-3 on the source clauses
                }
                for (xs, _ys) in &self.blocks {
                    values[xs[0]] = true;
                    values[xs[1]] = true;
                }
                Assignment(values)
            }
        }
    }

    /// Maps a 2-IN-beta assignment of the output back to a 1-IN-3 assignment
    /// of the input.
    pub fn backward(&self, l: &Assignment) -> Assignment {
        let restricted = Assignment(l.0[..self.input_n_vars].to_vec());
        match self.beta {
            3 => complement(&restricted),
            4 => {
                if l.get(self.pad_var.unwrap()) {
                    restricted
                } else {
                    complement(&restricted)
                }
            }
            _ => complement(&restricted),
        }
    }
}

fn require3(phi: &MonotoneFormula) -> Result<(), ReductionError> {
    for (i, c) in phi.clauses().iter().enumerate() {
        if c.len() != 3 {
            return Err(ReductionError::NotThreeUniform(i, c.len()));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Step 2: make every variable occur exactly three times.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct Step2 {
    pub output: MonotoneFormula,
    pub beta: usize,
    input_n_vars: usize,
    /// Per input variable: the black variable ids of its equalizer gadget.
    gadget_blacks: Vec<Vec<usize>>,
    /// Per input variable: (grey, whites) for each gadget block.
    gadget_blocks: Vec<Vec<(usize, Vec<usize>)>>,
    pub trace: StepTrace,
}

/// Converts a beta-uniform monotone formula into a cubic one: each clause is
/// copied nine times, each variable occurrence is replaced by a distinct black
/// variable of that variable's equalizer gadget, and the gadgets force all
/// blacks of one variable to agree.
pub fn step2_make_cubic(upsilon: &MonotoneFormula) -> Result<Step2, ReductionError> {
    // No reserved-name check here: the input may be a step-1 output whose
    // fresh variables already use the `$` prefix. All names vanish anyway.
    if upsilon.n_vars() == 0 || upsilon.n_clauses() == 0 {
        return Err(ReductionError::EmptyFormula);
    }
    let beta = match upsilon.uniform_width() {
        Some(w) if w >= 3 => w,
        Some(w) => return Err(ReductionError::BadBeta(w)),
        None => {
            let first = upsilon.clauses()[0].len();
            return Err(find_nonuniform(upsilon, first));
        }
    };
    let occ = upsilon.occurrences();
    if let Some(v) = occ.iter().position(|&o| o == 0) {
        return Err(ReductionError::UnusedVariable(upsilon.name(v).to_string()));
    }

    let mut trace = StepTrace::new("step2");
    trace.param("beta", beta as i64);
    let mut names: Vec<String> = Vec::new();
    let mut clause_defs: Vec<Vec<usize>> = Vec::new();
    let mut gadget_blacks = Vec::with_capacity(upsilon.n_vars());
    let mut gadget_blocks = Vec::with_capacity(upsilon.n_vars());

    for (j, &o) in occ.iter().enumerate() {
        // Nine copies of every clause gives 9*o occurrences = 3*h blacks.
        let h = 3 * o;
        let gadget = build_equalizer_formula(h, beta, j)?;
        let base = names.len();
        names.extend(gadget.formula.names().iter().cloned());
        trace.var_provenance.extend(gadget.trace.var_provenance.iter().cloned());
        trace.constraint_provenance.extend(gadget.trace.constraint_provenance.iter().cloned());
        for c in gadget.formula.clauses() {
            clause_defs.push(c.iter().map(|&v| base + v).collect());
        }
        gadget_blacks.push(gadget.blacks.iter().map(|&z| base + z).collect::<Vec<_>>());
        gadget_blocks.push(
            gadget
                .blocks
                .iter()
                .map(|b| (base + b.grey, b.whites.iter().map(|&w| base + w).collect()))
                .collect::<Vec<(usize, Vec<usize>)>>(),
        );
    }

    // The nine-fold copied clauses with occurrences replaced by fresh blacks.
    let mut next_black = vec![0usize; upsilon.n_vars()];
    for (ci, c) in upsilon.clauses().iter().enumerate() {
        for copy in 0..9 {
            let mapped: Vec<usize> = c
                .iter()
                .map(|&x| {
                    let z = gadget_blacks[x][next_black[x]];
                    next_black[x] += 1;
                    z
                })
                .collect();
            clause_defs.push(mapped);
            trace
                .constraint_provenance
                .push(Provenance::gadget("source_clause_copy", vec![ci, copy]));
        }
    }
    debug_assert!(next_black
        .iter()
        .zip(gadget_blacks.iter())
        .all(|(&used, blacks)| used == blacks.len()));

    let mut output = MonotoneFormula::new(names);
    for c in &clause_defs {
        output.push_clause(c)?;
    }
    Ok(Step2 {
        output,
        beta,
        input_n_vars: upsilon.n_vars(),
        gadget_blacks,
        gadget_blocks,
        trace,
    })
}

impl Step2 {
    pub fn forward(&self, l: &Assignment) -> Assignment {
        let mut values = vec![false; self.output.n_vars()];
        for j in 0..self.input_n_vars {
            let polarity = l.get(j);
            for &z in &self.gadget_blacks[j] {
                values[z] = polarity;
            }
            for (grey, whites) in &self.gadget_blocks[j] {
                values[*grey] = true;
                for (m, &w) in whites.iter().enumerate() {
                    values[w] = !polarity && m == 0;
                }
            }
        }
        Assignment(values)
    }

    pub fn backward(&self, l: &Assignment) -> Assignment {
        Assignment((0..self.input_n_vars).map(|j| l.get(self.gadget_blacks[j][0])).collect())
    }
}

fn find_nonuniform(f: &MonotoneFormula, expected: usize) -> ReductionError {
    for (i, c) in f.clauses().iter().enumerate() {
        if c.len() != expected {
            return ReductionError::NotUniform { clause: i, got: c.len(), expected };
        }
    }
    unreachable!("formula claimed non-uniform")
}

// ---------------------------------------------------------------------------
// Step 3: raise occurrence count from three to alpha.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct Step3 {
    pub output: MonotoneFormula,
    pub alpha: usize,
    pub beta: usize,
    gamma: usize,
    identity: bool,
    pub trace: StepTrace,
}

/// Converts a cubic beta-uniform formula into an alpha-regular one by taking
/// alpha renamed copies and tying the copies of each variable together with
/// shared equalizing clauses.
pub fn step3_make_alpha_regular(
    psi: &MonotoneFormula,
    alpha: usize,
) -> Result<Step3, ReductionError> {
    if psi.n_vars() == 0 || psi.n_clauses() == 0 {
        return Err(ReductionError::EmptyFormula);
    }
    let beta = match psi.uniform_width() {
        Some(w) => w,
        None => return Err(find_nonuniform(psi, psi.clauses()[0].len())),
    };
    let cubic = validate_class(psi, &ClassDescriptor::cubic(None));
    if !cubic.is_empty() {
        return Err(ReductionError::ClassViolations(cubic.len()));
    }
    // The construction is valid for any alpha >= 3; the theorem-level
    // alpha <= beta restriction is enforced by `full_min_b_chain`.
    if alpha < 3 {
        return Err(ReductionError::AlphaBeta(alpha, beta));
    }
    let gamma = psi.n_vars();
    let mut trace = StepTrace::new("step3");
    trace.param("alpha", alpha as i64);
    trace.param("beta", beta as i64);

    if alpha == 3 {
        for name in psi.names() {
            trace.var_provenance.push(Provenance::source(name));
        }
        for i in 0..psi.n_clauses() {
            trace.constraint_provenance.push(Provenance::source(format!("c{}", i + 1)));
        }
        return Ok(Step3 { output: psi.clone(), alpha, beta, gamma, identity: true, trace });
    }

    // Copy i of source variable x gets id i*gamma + x. The shared y-variables
    // for (x, j, m) follow at alpha*gamma + x*(alpha-3)*(beta-1) + j*(beta-1) + m.
    let mut names: Vec<String> = Vec::new();
    for i in 0..alpha {
        for x in 0..gamma {
            names.push(format!("{}#{}", psi.name(x), i + 1));
            trace.var_provenance.push(Provenance::gadget("copy.var", vec![x, i]));
        }
    }
    for x in 0..gamma {
        for j in 0..alpha - 3 {
            for m in 0..beta - 1 {
                names.push(format!("$t[{}].y{}.{}", psi.name(x), j + 1, m + 1));
                trace.var_provenance.push(Provenance::gadget("tie.y", vec![x, j, m]));
            }
        }
    }
    let y_id = |x: usize, j: usize, m: usize| {
        alpha * gamma + x * (alpha - 3) * (beta - 1) + j * (beta - 1) + m
    };

    let mut output = MonotoneFormula::new(names);
    for i in 0..alpha {
        for (ci, c) in psi.clauses().iter().enumerate() {
            let mapped: Vec<usize> = c.iter().map(|&x| i * gamma + x).collect();
            output.push_clause(&mapped)?;
            trace.constraint_provenance.push(Provenance::gadget("source_clause_copy", vec![ci, i]));
        }
    }
    for x in 0..gamma {
        for i in 0..alpha {
            for j in 0..alpha - 3 {
                let mut c = vec![i * gamma + x];
                c.extend((0..beta - 1).map(|m| y_id(x, j, m)));
                output.push_clause(&c)?;
                trace.constraint_provenance.push(Provenance::gadget("tie.clause", vec![x, i, j]));
            }
        }
    }
    Ok(Step3 { output, alpha, beta, gamma, identity: false, trace })
}

impl Step3 {
    pub fn forward(&self, f: &Assignment) -> Assignment {
        if self.identity {
            return f.clone();
        }
        let mut values = vec![false; self.output.n_vars()];
        let (alpha, beta, gamma) = (self.alpha, self.beta, self.gamma);
        for x in 0..gamma {
            for i in 0..alpha {
                values[i * gamma + x] = f.get(x);
            }
            for j in 0..alpha - 3 {
                let base = alpha * gamma + x * (alpha - 3) * (beta - 1) + j * (beta - 1);
                values[base] = true; // y_{1,x}
                values[base + 1] = !f.get(x); // y_{2,x}
            }
        }
        Assignment(values)
    }

    pub fn backward(&self, l: &Assignment) -> Assignment {
        if self.identity {
            return l.clone();
        }
        Assignment(l.0[..self.gamma].to_vec()) // copy 1 occupies ids 0..gamma
    }
}

// ---------------------------------------------------------------------------
// Step 4: incidence Tanner graph.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct Step4 {
    pub graph: TannerGraph,
    /// The target LETS size 2|W|/alpha.
    pub a: usize,
    pub alpha: usize,
    pub beta: usize,
    pub trace: StepTrace,
}

/// Builds the incidence Tanner graph of an alpha-regular beta-uniform monotone
/// formula and the target subset size `a = 2|W|/alpha`. The graph has an
/// `(a, 0)` LETS iff the formula has a 2-IN-beta assignment, and every size-a
/// LETS has `b = 0`.
pub fn step4_formula_to_tanner(phi: &MonotoneFormula) -> Result<Step4, ReductionError> {
    if phi.n_vars() == 0 || phi.n_clauses() == 0 {
        return Err(ReductionError::EmptyFormula);
    }
    let beta = match phi.uniform_width() {
        Some(w) => w,
        None => return Err(find_nonuniform(phi, phi.clauses()[0].len())),
    };
    let occ = phi.occurrences();
    let alpha = occ[0];
    let class = validate_class(phi, &ClassDescriptor { beta: Some(beta), alpha: Some(alpha) });
    if !class.is_empty() {
        return Err(ReductionError::ClassViolations(class.len()));
    }
    if 2 * phi.n_clauses() % alpha != 0 {
        return Err(ReductionError::Divisibility(2 * phi.n_clauses(), alpha));
    }
    let a = 2 * phi.n_clauses() / alpha;

    let mut edges = Vec::new();
    for (ci, c) in phi.clauses().iter().enumerate() {
        for &v in c {
            edges.push((v, ci));
        }
    }
    let var_labels: Vec<String> = phi.names().to_vec();
    let chk_labels: Vec<String> = (0..phi.n_clauses()).map(|i| format!("c{}", i + 1)).collect();
    let graph = TannerGraph::build(phi.n_vars(), phi.n_clauses(), &edges)
        .expect("incidence edges are valid by construction")
        .with_labels(var_labels, chk_labels)
        .expect("label counts match");

    let mut trace = StepTrace::new("step4");
    trace.param("alpha", alpha as i64);
    trace.param("beta", beta as i64);
    trace.param("a", a as i64);
    for name in phi.names() {
        trace.var_provenance.push(Provenance::source(name));
    }
    for i in 0..phi.n_clauses() {
        trace.constraint_provenance.push(Provenance::source(format!("c{}", i + 1)));
    }
    Ok(Step4 { graph, a, alpha, beta, trace })
}

impl Step4 {
    /// A 2-IN-beta assignment maps to the subset of true variable nodes.
    pub fn forward(&self, l: &Assignment) -> Vec<usize> {
        l.true_vars()
    }

    pub fn backward(&self, subset: &[usize]) -> Assignment {
        let mut values = vec![false; self.graph.n_var()];
        for &v in subset {
            values[v] = true;
        }
        Assignment(values)
    }
}

// ---------------------------------------------------------------------------
// Full chain.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct MinBChain {
    pub step1: Step1,
    pub step2: Step2,
    pub step3: Step3,
    pub step4: Step4,
}

/// Runs the four steps end to end on a 3-uniform monotone formula.
pub fn full_min_b_chain(
    phi: &MonotoneFormula,
    alpha: usize,
    beta: usize,
) -> Result<MinBChain, ReductionError> {
    if alpha < 3 || alpha > beta {
        return Err(ReductionError::AlphaBeta(alpha, beta));
    }
    let step1 = step1_expand(phi, beta)?;
    let step2 = step2_make_cubic(&step1.output)?;
    let step3 = step3_make_alpha_regular(&step2.output, alpha)?;
    let step4 = step4_formula_to_tanner(&step3.output)?;
    Ok(MinBChain { step1, step2, step3, step4 })
}

impl MinBChain {
    pub fn graph(&self) -> &TannerGraph {
        &self.step4.graph
    }

    pub fn a(&self) -> usize {
        self.step4.a
    }

    pub fn traces(&self) -> Vec<&StepTrace> {
        vec![&self.step1.trace, &self.step2.trace, &self.step3.trace, &self.step4.trace]
    }

    /// 1-IN-3 assignment of the chain input -> variable subset of the output
    /// graph (an (a, 0) LETS).
    pub fn forward_witness(&self, l: &Assignment) -> Vec<usize> {
        let l = self.step1.forward(l);
        let l = self.step2.forward(&l);
        let l = self.step3.forward(&l);
        self.step4.forward(&l)
    }

    /// Variable subset of the output graph -> 1-IN-3 assignment of the input.
    pub fn backward_witness(&self, subset: &[usize]) -> Assignment {
        let l = self.step4.backward(subset);
        let l = self.step3.backward(&l);
        let l = self.step2.backward(&l);
        self.step1.backward(&l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sat::{
        brute_force_gamma_in_beta, check_gamma_in_beta, triple_clause_formula,
    };
    use crate::tanner::{classify, regularity, subset_profile};

    fn single_clause() -> MonotoneFormula {
        let mut f = MonotoneFormula::new(vec!["x".into(), "y".into(), "z".into()]);
        f.push_clause(&[0, 1, 2]).unwrap();
        f
    }

    #[test]
    fn step1_beta3_is_identity() {
        let phi = triple_clause_formula();
        let s = step1_expand(&phi, 3).unwrap();
        assert_eq!(s.output, phi);
        assert!(s.trace.is_total_for(3, 3));
    }

    #[test]
    fn step1_beta4_appends_fresh_variable() {
        let phi = single_clause();
        let s = step1_expand(&phi, 4).unwrap();
        assert_eq!(s.output.n_vars(), 4);
        assert_eq!(s.output.n_clauses(), 1);
        assert_eq!(s.output.clauses()[0], vec![0, 1, 2, 3]);
    }

    #[test]
    fn step1_beta5_counts() {
        let phi = triple_clause_formula();
        let s = step1_expand(&phi, 5).unwrap();
        assert_eq!(s.output.n_clauses(), 3 + 2 * 4);
        assert_eq!(s.output.n_vars(), 3 + 2 * 7);
        assert!(s.trace.is_total_for(17, 11));
    }

    #[test]
    fn step1_witness_transport() {
        let phi = triple_clause_formula();
        for beta in [3, 4, 5] {
            let s = step1_expand(&phi, beta).unwrap();
            let l = brute_force_gamma_in_beta(&phi, 1, 24).unwrap().unwrap();
            let fwd = s.forward(&l);
            assert!(check_gamma_in_beta(&s.output, &fwd, 2).unwrap(), "beta={beta}");
            let back = s.backward(&fwd);
            assert!(check_gamma_in_beta(&phi, &back, 1).unwrap(), "beta={beta}");
        }
    }

    #[test]
    fn step1_rejects_bad_input() {
        let mut f = MonotoneFormula::with_n_vars(4);
        f.push_clause(&[0, 1, 2, 3]).unwrap();
        assert!(matches!(step1_expand(&f, 4), Err(ReductionError::NotThreeUniform(0, 4))));
        assert!(matches!(
            step1_expand(&triple_clause_formula(), 2),
            Err(ReductionError::BadBeta(2))
        ));
    }

    #[test]
    fn step2_counts_on_triple_clause() {
        let upsilon = triple_clause_formula();
        let s = step2_make_cubic(&upsilon).unwrap();
        // h = 9 per variable: each gadget has 54 clauses and 63 variables.
        assert_eq!(s.output.n_clauses(), 27 + 3 * 54);
        assert_eq!(s.output.n_vars(), 3 * 63);
        assert!(validate_class(&s.output, &ClassDescriptor::cubic(Some(3))).is_empty());
        assert!(s.trace.is_total_for(s.output.n_vars(), s.output.n_clauses()));
    }

    #[test]
    fn step2_witness_transport() {
        let upsilon = triple_clause_formula();
        let s = step2_make_cubic(&upsilon).unwrap();
        let l = brute_force_gamma_in_beta(&upsilon, 2, 24).unwrap().unwrap();
        let fwd = s.forward(&l);
        assert!(check_gamma_in_beta(&s.output, &fwd, 2).unwrap());
        assert_eq!(s.backward(&fwd), l);
    }

    #[test]
    fn step3_counts_alpha4() {
        let psi = triple_clause_formula();
        let s = step3_make_alpha_regular(&psi, 4).unwrap();
        assert_eq!(s.output.n_clauses(), 4 * 3 + 4 * 1 * 3);
        assert_eq!(s.output.n_vars(), 12 + 6);
        let class = ClassDescriptor { beta: Some(3), alpha: Some(4) };
        assert!(validate_class(&s.output, &class).is_empty());
        assert!(s.trace.is_total_for(18, 24));
    }

    #[test]
    fn step3_witness_transport() {
        let psi = triple_clause_formula();
        let s = step3_make_alpha_regular(&psi, 4).unwrap();
        let f = brute_force_gamma_in_beta(&psi, 2, 24).unwrap().unwrap();
        let fwd = s.forward(&f);
        assert!(check_gamma_in_beta(&s.output, &fwd, 2).unwrap());
        assert_eq!(s.backward(&fwd), f);
    }

    #[test]
    fn step3_identity_for_alpha3() {
        let psi = triple_clause_formula();
        let s = step3_make_alpha_regular(&psi, 3).unwrap();
        assert_eq!(s.output, psi);
    }

    #[test]
    fn step3_rejects_non_cubic() {
        let psi = single_clause();
        assert!(matches!(
            step3_make_alpha_regular(&psi, 3),
            Err(ReductionError::ClassViolations(3))
        ));
    }

    #[test]
    fn step4_triple_clause_is_k33() {
        let phi = triple_clause_formula();
        let s = step4_formula_to_tanner(&phi).unwrap();
        assert_eq!(s.graph.n_var(), 3);
        assert_eq!(s.graph.n_chk(), 3);
        assert_eq!(s.a, 2);
        let r = regularity(&s.graph);
        assert_eq!((r.d_v, r.d_c), (Some(3), Some(3)));
        // Any pair of variables is a (2, 0) LETS matching a 2-IN-3 witness.
        let p = subset_profile(&s.graph, &[0, 1]).unwrap();
        assert_eq!((p.a(), p.b()), (2, 0));
        assert!(p.flags.is_lets && p.flags.is_eabs);
        // Edge-count identity: |E(G(S))| = a * alpha = 2|W|.
        let edge_count: usize = p.check_degrees.values().sum();
        assert_eq!(edge_count, s.a * s.alpha);
        assert_eq!(edge_count, 2 * s.graph.n_chk());
    }

    #[test]
    fn chain_runs_and_transports_witnesses() {
        let phi = triple_clause_formula();
        let chain = full_min_b_chain(&phi, 3, 3).unwrap();
        let r = regularity(chain.graph());
        assert_eq!((r.d_v, r.d_c), (Some(3), Some(3)));
        for t in chain.traces() {
            assert!(!t.var_provenance.is_empty());
        }
        let l = brute_force_gamma_in_beta(&phi, 1, 24).unwrap().unwrap();
        let subset = chain.forward_witness(&l);
        assert_eq!(subset.len(), chain.a());
        let p = subset_profile(chain.graph(), &subset).unwrap();
        assert_eq!(p.b(), 0);
        assert!(p.flags.is_lets);
        let back = chain.backward_witness(&subset);
        assert!(check_gamma_in_beta(&phi, &back, 1).unwrap());
        let _ = classify(chain.graph(), &subset).unwrap();
    }

    #[test]
    fn chain_rejects_alpha_above_beta() {
        let phi = triple_clause_formula();
        assert!(matches!(
            full_min_b_chain(&phi, 4, 3),
            Err(ReductionError::AlphaBeta(4, 3))
        ));
    }
}
