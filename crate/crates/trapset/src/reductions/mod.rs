//! Reduction constructions: the four-step chain from Monotone 1-IN-3 SAT to
//! Min-b-LETS / Min-b-EABS instances, and the direct gadget graphs for the
//! Min-a-LETS and Min-a-EABS instances, each with bidirectional witness
//! transport and full provenance traces.

mod chain;
mod equalizer;
mod instances;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::sat::{MonotoneFormula, SatError};

pub use chain::{
    full_min_b_chain, step1_expand, step2_make_cubic, step3_make_alpha_regular,
    step4_formula_to_tanner, MinBChain, Step1, Step2, Step3, Step4,
};
pub use equalizer::{build_equalizer_formula, EqualizerBlock, EqualizerGadget};
pub use instances::{
    build_min_a_eabs_instance, build_min_a_lets_instance, MinAEabsInstance, MinALetsInstance,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error("input must be 3-uniform: clause {0} has width {1}")]
    NotThreeUniform(usize, usize),
    #[error("input must be uniform of width {expected}: clause {clause} has width {got}")]
    NotUniform { clause: usize, got: usize, expected: usize },
    #[error("alpha and beta must satisfy 3 <= alpha <= beta (got alpha={0}, beta={1})")]
    AlphaBeta(usize, usize),
    #[error("beta must be at least 3 (got {0})")]
    BadBeta(usize),
    #[error("formula must have at least one variable and one clause")]
    EmptyFormula,
    #[error("equalizer gadget requires t >= 1 and k >= 3 (got t={0}, k={1})")]
    BadGadgetParams(usize, usize),
    #[error("input is not in the required class ({0} violations)")]
    ClassViolations(usize),
    #[error("2|C| = {0} is not divisible by alpha = {1}")]
    Divisibility(usize, usize),
    #[error("variable name `{0}` uses the reserved `$` prefix")]
    ReservedName(String),
    #[error("every variable must occur at least once (`{0}` does not)")]
    UnusedVariable(String),
    #[error(transparent)]
    Sat(#[from] SatError),
}

/// Origin of one output variable, clause, or check node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "origin", rename_all = "snake_case")]
pub enum Provenance {
    /// Carried over (possibly renamed) from the input instance.
    Source { name: String },
    /// Created by a gadget; `role` names the position, `indices` the
    /// instantiation coordinates.
    Gadget { role: String, indices: Vec<usize> },
}

impl Provenance {
    pub fn source(name: impl Into<String>) -> Self {
        Provenance::Source { name: name.into() }
    }

    pub fn gadget(role: impl Into<String>, indices: Vec<usize>) -> Self {
        Provenance::Gadget { role: role.into(), indices }
    }
}

/// Per-step provenance record. For formula outputs the constraints are
/// clauses; for graph outputs they are check nodes.
#[derive(Debug, Clone, Serialize)]
pub struct StepTrace {
    pub step: String,
    pub params: BTreeMap<String, i64>,
    pub var_provenance: Vec<Provenance>,
    pub constraint_provenance: Vec<Provenance>,
}

impl StepTrace {
    pub fn new(step: impl Into<String>) -> Self {
        Self {
            step: step.into(),
            params: BTreeMap::new(),
            var_provenance: Vec::new(),
            constraint_provenance: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: i64) {
        self.params.insert(key.to_string(), value);
    }

    /// Trace totality: one provenance entry per output variable and constraint.
    pub fn is_total_for(&self, n_vars: usize, n_constraints: usize) -> bool {
        self.var_provenance.len() == n_vars && self.constraint_provenance.len() == n_constraints
    }
}

/// Source formulas may not use the `$` prefix; it is reserved for fresh
/// gadget variables so renamings can never collide.
pub(crate) fn check_names(f: &MonotoneFormula) -> Result<(), ReductionError> {
    for name in f.names() {
        if name.starts_with('$') {
            return Err(ReductionError::ReservedName(name.clone()));
        }
    }
    Ok(())
}

pub(crate) fn require_uniform(f: &MonotoneFormula, width: usize) -> Result<(), ReductionError> {
    for (i, c) in f.clauses().iter().enumerate() {
        if c.len() != width {
            return Err(ReductionError::NotUniform { clause: i, got: c.len(), expected: width });
        }
    }
    Ok(())
}
