//! The equalizer gadget: a monotone k-uniform formula in which every 2-IN-k
//! truth assignment forces all "black" variables to the same value, with both
//! polarities achievable.
//!
//! Layout: `2t` blocks arranged as the vertices of a connected cubic
//! multigraph whose edges are the `3t` black variables. Blacks `1..2t` join
//! consecutive blocks in a cycle and one extra black joins blocks `2i-1` and
//! `2i` for each `i`. Each block carries one fresh grey variable and `k-2`
//! fresh white variables, and contributes three clauses of width `k` that
//! share the grey+white tail, one clause per incident black. Every black
//! occurs exactly twice, every grey and white exactly three times.

use crate::sat::MonotoneFormula;

use super::{Provenance, ReductionError, StepTrace};

#[derive(Debug, Clone)]
pub struct EqualizerBlock {
    /// The three incident black variable ids (multigraph edges).
    pub blacks: [usize; 3],
    pub grey: usize,
    pub whites: Vec<usize>,
    /// Clause indices contributed by this block.
    pub clauses: [usize; 3],
}

#[derive(Debug, Clone)]
pub struct EqualizerGadget {
    pub formula: MonotoneFormula,
    pub t: usize,
    pub k: usize,
    pub j: usize,
    /// All `3t` black variable ids.
    pub blacks: Vec<usize>,
    pub blocks: Vec<EqualizerBlock>,
    pub trace: StepTrace,
}

/// Builds the equalizer formula for parameters `(t, k, j)`; `j` is only a
/// superscript carried in variable names so instantiations stay disjoint.
pub fn build_equalizer_formula(
    t: usize,
    k: usize,
    j: usize,
) -> Result<EqualizerGadget, ReductionError> {
    if t < 1 || k < 3 {
        return Err(ReductionError::BadGadgetParams(t, k));
    }
    let n_blocks = 2 * t;
    let mut names: Vec<String> = Vec::new();
    let mut trace = StepTrace::new("equalizer");
    trace.param("t", t as i64);
    trace.param("k", k as i64);
    trace.param("j", j as i64);

    // Blacks first: cycle blacks 0..2t, then pair blacks 2t..3t.
    for i in 0..3 * t {
        names.push(format!("$o{j}.z{}", i + 1));
        trace.var_provenance.push(Provenance::gadget("equalizer.black", vec![j, i]));
    }
    // Block incidences in the cubic multigraph.
    let block_blacks = |bl: usize| -> [usize; 3] {
        let prev = (bl + n_blocks - 1) % n_blocks;
        [prev, bl, 2 * t + bl / 2]
    };

    let mut blocks = Vec::with_capacity(n_blocks);
    let mut clause_defs: Vec<Vec<usize>> = Vec::new();
    for bl in 0..n_blocks {
        let grey = names.len();
        names.push(format!("$o{j}.g{}", bl + 1));
        trace.var_provenance.push(Provenance::gadget("equalizer.grey", vec![j, bl]));
        let whites: Vec<usize> = (0..k - 2)
            .map(|m| {
                let id = names.len();
                names.push(format!("$o{j}.w{}.{}", bl + 1, m + 1));
                trace.var_provenance.push(Provenance::gadget("equalizer.white", vec![j, bl, m]));
                id
            })
            .collect();
        let blacks = block_blacks(bl);
        let mut clause_ids = [0usize; 3];
        for (slot, &z) in blacks.iter().enumerate() {
            clause_ids[slot] = clause_defs.len();
            let mut c = vec![z, grey];
            c.extend_from_slice(&whites);
            clause_defs.push(c);
            trace
                .constraint_provenance
                .push(Provenance::gadget("equalizer.clause", vec![j, bl, slot]));
        }
        blocks.push(EqualizerBlock { blacks, grey, whites, clauses: clause_ids });
    }

    let mut formula = MonotoneFormula::new(names);
    for c in &clause_defs {
        formula.push_clause(c)?;
    }
    let blacks = (0..3 * t).collect();
    Ok(EqualizerGadget { formula, t, k, j, blacks, blocks, trace })
}

impl EqualizerGadget {
    /// Fills the gadget's slice of an assignment so every clause has exactly
    /// two true variables, given the common black polarity.
    pub fn fill_assignment(&self, values: &mut [bool], polarity: bool) {
        for &z in &self.blacks {
            values[z] = polarity;
        }
        for block in &self.blocks {
            values[block.grey] = true;
            for (m, &w) in block.whites.iter().enumerate() {
                // Blacks true: tail needs one true (the grey). Blacks false:
                // tail needs two, so light the first white as well.
                values[w] = !polarity && m == 0;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sat::{check_gamma_in_beta, Assignment};

    #[test]
    fn counts_for_t3_k3() {
        let g = build_equalizer_formula(3, 3, 1).unwrap();
        assert_eq!(g.formula.n_clauses(), 18);
        assert_eq!(g.formula.n_vars(), 21); // 9 black + 6 grey + 6 white
        assert_eq!(g.blacks.len(), 9);
        assert!(g.trace.is_total_for(21, 18));
        // Blacks occur twice, everything else three times.
        let occ = g.formula.occurrences();
        for &z in &g.blacks {
            assert_eq!(occ[z], 2);
        }
        for block in &g.blocks {
            assert_eq!(occ[block.grey], 3);
            for &w in &block.whites {
                assert_eq!(occ[w], 3);
            }
        }
    }

    #[test]
    fn both_polarities_satisfy() {
        for (t, k) in [(1, 3), (2, 4), (3, 3), (2, 5)] {
            let g = build_equalizer_formula(t, k, 0).unwrap();
            for polarity in [true, false] {
                let mut values = vec![false; g.formula.n_vars()];
                g.fill_assignment(&mut values, polarity);
                assert!(
                    check_gamma_in_beta(&g.formula, &Assignment(values), 2).unwrap(),
                    "t={t} k={k} polarity={polarity}"
                );
            }
        }
    }

    #[test]
    fn blacks_forced_equal_small() {
        // Exhaustive check on the smallest gadget: t=1, k=3 has 7 variables.
        let g = build_equalizer_formula(1, 3, 0).unwrap();
        let n = g.formula.n_vars();
        let mut saw = [false; 2];
        for m in 0u32..1 << n {
            let values: Vec<bool> = (0..n).map(|v| m >> v & 1 == 1).collect();
            let l = Assignment(values);
            if check_gamma_in_beta(&g.formula, &l, 2).unwrap() {
                let first = l.get(g.blacks[0]);
                assert!(g.blacks.iter().all(|&z| l.get(z) == first));
                saw[first as usize] = true;
            }
        }
        assert!(saw[0] && saw[1]);
    }

    #[test]
    fn rejects_bad_params() {
        assert!(matches!(build_equalizer_formula(0, 3, 0), Err(ReductionError::BadGadgetParams(0, 3))));
        assert!(matches!(build_equalizer_formula(1, 2, 0), Err(ReductionError::BadGadgetParams(1, 2))));
    }
}
