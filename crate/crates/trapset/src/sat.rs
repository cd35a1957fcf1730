//! Monotone CNF formulas, gamma-IN-beta truth-assignment checking, brute-force
//! satisfiability oracles, formula class validation, and a seeded random
//! instance generator.
//!
//! Formulas are monotone by construction: clauses only hold variable ids, so
//! no negation can be represented. A clause never repeats a variable, but the
//! clause *list* may contain repeated identical clauses (the reduction chain
//! relies on clause duplication).

use std::collections::HashMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SatError {
    #[error("variable index {0} out of range ({1} variables)")]
    VarOutOfRange(usize, usize),
    #[error("clause repeats variable {0}")]
    RepeatedVariable(usize),
    #[error("assignment covers {0} variables but the formula has {1}")]
    PartialAssignment(usize, usize),
    #[error("formula has {0} variables, above the oracle cap of {1}")]
    TooLargeForOracle(usize, usize),
    #[error("infeasible parameters: {0}")]
    InfeasibleParams(String),
    #[error("formula parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Monotone CNF formula: named variables and clauses of distinct variable ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneFormula {
    names: Vec<String>,
    clauses: Vec<Vec<usize>>,
}

impl MonotoneFormula {
    pub fn new(names: Vec<String>) -> Self {
        Self { names, clauses: Vec::new() }
    }

    /// Convenience constructor with anonymous variable names `x0..`.
    pub fn with_n_vars(n: usize) -> Self {
        Self::new((0..n).map(|i| format!("x{i}")).collect())
    }

    /// Appends a clause. The variable list is sorted; repeats are rejected.
    pub fn push_clause(&mut self, vars: &[usize]) -> Result<(), SatError> {
        let mut c = vars.to_vec();
        for &v in &c {
            if v >= self.names.len() {
                return Err(SatError::VarOutOfRange(v, self.names.len()));
            }
        }
        c.sort_unstable();
        if let Some(w) = c.windows(2).find(|w| w[0] == w[1]) {
            return Err(SatError::RepeatedVariable(w[0]));
        }
        self.clauses.push(c);
        Ok(())
    }

    pub fn n_vars(&self) -> usize {
        self.names.len()
    }

    pub fn n_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Vec<usize>] {
        &self.clauses
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn var_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Occurrence count of every variable across the clause list.
    pub fn occurrences(&self) -> Vec<usize> {
        let mut occ = vec![0usize; self.n_vars()];
        for c in &self.clauses {
            for &v in c {
                occ[v] += 1;
            }
        }
        occ
    }

    /// Common clause width, if the formula is uniform.
    pub fn uniform_width(&self) -> Option<usize> {
        let mut widths = self.clauses.iter().map(Vec::len);
        let first = widths.next()?;
        widths.all(|w| w == first).then_some(first)
    }
}

/// Total truth assignment over a formula's variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment(pub Vec<bool>);

impl Assignment {
    pub fn all_false(n: usize) -> Self {
        Assignment(vec![false; n])
    }

    pub fn n_vars(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, v: usize) -> bool {
        self.0[v]
    }

    pub fn true_vars(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&v| self.0[v]).collect()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "T" } else { "F" })?;
        }
        Ok(())
    }
}

/// Flips every value; an involution.
pub fn complement(l: &Assignment) -> Assignment {
    Assignment(l.0.iter().map(|&b| !b).collect())
}

/// True iff every clause contains exactly `gamma` true variables under `l`.
pub fn check_gamma_in_beta(
    f: &MonotoneFormula,
    l: &Assignment,
    gamma: usize,
) -> Result<bool, SatError> {
    if l.n_vars() != f.n_vars() {
        return Err(SatError::PartialAssignment(l.n_vars(), f.n_vars()));
    }
    Ok(f.clauses.iter().all(|c| c.iter().filter(|&&v| l.get(v)).count() == gamma))
}

pub const DEFAULT_ORACLE_CAP: usize = 24;

/// Exhaustive gamma-IN-beta oracle. Returns the lexicographically first
/// satisfying assignment (F before T, variable 0 most significant), or `None`.
pub fn brute_force_gamma_in_beta(
    f: &MonotoneFormula,
    gamma: usize,
    cap: usize,
) -> Result<Option<Assignment>, SatError> {
    let n = f.n_vars();
    if n > cap {
        return Err(SatError::TooLargeForOracle(n, cap));
    }
    // Bitmask encoding: variable v occupies bit (n-1-v), so ascending mask
    // order is lexicographic assignment order.
    let masks: Vec<u32> = f
        .clauses
        .iter()
        .map(|c| c.iter().fold(0u32, |m, &v| m | 1u32 << (n - 1 - v)))
        .collect();
    let gamma = gamma as u32;
    for m in 0u64..(1u64 << n) {
        let m = m as u32;
        if masks.iter().all(|&cm| (m & cm).count_ones() == gamma) {
            let values = (0..n).map(|v| m >> (n - 1 - v) & 1 == 1).collect();
            return Ok(Some(Assignment(values)));
        }
    }
    Ok(None)
}

/// Target formula class: clause width and/or per-variable occurrence count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassDescriptor {
    pub beta: Option<usize>,
    pub alpha: Option<usize>,
}

impl ClassDescriptor {
    /// Cubic: every variable occurs exactly three times.
    pub fn cubic(beta: Option<usize>) -> Self {
        Self { beta, alpha: Some(3) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum ClassViolation {
    #[serde(rename = "clause_width")]
    ClauseWidth { clause: usize, width: usize, expected: usize },
    #[serde(rename = "occurrence_count")]
    OccurrenceCount { var: String, count: usize, expected: usize },
}

/// Reports every clause violating the width and every variable violating the
/// occurrence count. Empty iff the formula is in the class.
pub fn validate_class(f: &MonotoneFormula, d: &ClassDescriptor) -> Vec<ClassViolation> {
    let mut out = Vec::new();
    if let Some(beta) = d.beta {
        for (i, c) in f.clauses.iter().enumerate() {
            if c.len() != beta {
                out.push(ClassViolation::ClauseWidth { clause: i, width: c.len(), expected: beta });
            }
        }
    }
    if let Some(alpha) = d.alpha {
        for (v, &count) in f.occurrences().iter().enumerate() {
            if count != alpha {
                out.push(ClassViolation::OccurrenceCount {
                    var: f.name(v).to_string(),
                    count,
                    expected: alpha,
                });
            }
        }
    }
    out
}

/// Generates a random beta-uniform alpha-regular monotone formula,
/// deterministic per seed. Both class parameters are required.
pub fn random_instance(
    d: &ClassDescriptor,
    n_vars: usize,
    seed: u64,
) -> Result<MonotoneFormula, SatError> {
    let beta = d
        .beta
        .ok_or_else(|| SatError::InfeasibleParams("clause width beta is required".into()))?;
    let alpha = d
        .alpha
        .ok_or_else(|| SatError::InfeasibleParams("occurrence count alpha is required".into()))?;
    if beta == 0 || alpha == 0 || n_vars == 0 {
        return Err(SatError::InfeasibleParams("parameters must be positive".into()));
    }
    if beta > n_vars {
        return Err(SatError::InfeasibleParams(format!(
            "clause width {beta} exceeds variable count {n_vars}"
        )));
    }
    if n_vars * alpha % beta != 0 {
        return Err(SatError::InfeasibleParams(format!(
            "{n_vars} vars x {alpha} occurrences = {} slots is not divisible by beta = {beta}",
            n_vars * alpha
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Shuffle the occurrence multiset into clause-sized chunks; retry until
    // every chunk is duplicate-free.
    let mut slots: Vec<usize> = (0..n_vars).flat_map(|v| std::iter::repeat(v).take(alpha)).collect();
    for _ in 0..100_000 {
        slots.shuffle(&mut rng);
        let chunks: Vec<&[usize]> = slots.chunks(beta).collect();
        if chunks.iter().all(|c| {
            let mut s = c.to_vec();
            s.sort_unstable();
            s.windows(2).all(|w| w[0] != w[1])
        }) {
            let mut f = MonotoneFormula::with_n_vars(n_vars);
            for c in chunks {
                f.push_clause(c)?;
            }
            debug_assert!(validate_class(&f, d).is_empty());
            return Ok(f);
        }
    }
    Err(SatError::InfeasibleParams(format!(
        "no duplicate-free clause partition found for n_vars={n_vars}, alpha={alpha}, beta={beta}"
    )))
}

/// Writes the monotone formula text format: a `p monotone` header, a `v` line
/// fixing the variable order, then one clause per line.
pub fn write_formula(f: &MonotoneFormula) -> String {
    let mut out = format!("p monotone {} {}\n", f.n_vars(), f.n_clauses());
    if f.n_vars() > 0 {
        out.push_str("v ");
        out.push_str(&f.names.join(" "));
        out.push('\n');
    }
    for c in &f.clauses {
        let line: Vec<&str> = c.iter().map(|&v| f.name(v)).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Parses the monotone formula text format. The `v` line is optional; without
/// it variable ids follow first appearance.
pub fn parse_formula(text: &str) -> Result<MonotoneFormula, SatError> {
    let perr = |line: usize, msg: &str| SatError::Parse { line, msg: msg.into() };
    let mut lines = text.lines().enumerate();
    let (hline, header) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('c'))
        .ok_or_else(|| perr(1, "missing header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 4 || toks[0] != "p" || toks[1] != "monotone" {
        return Err(perr(hline + 1, "expected header `p monotone <n_vars> <n_clauses>`"));
    }
    let n_vars: usize =
        toks[2].parse().map_err(|_| perr(hline + 1, "bad variable count"))?;
    let n_clauses: usize =
        toks[3].parse().map_err(|_| perr(hline + 1, "bad clause count"))?;

    let mut names: Vec<String> = Vec::new();
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut declared = false;
    let mut clause_rows: Vec<(usize, Vec<String>)> = Vec::new();
    for (i, line) in lines {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks[0] == "v" {
            if declared || !clause_rows.is_empty() {
                return Err(perr(i + 1, "misplaced `v` line"));
            }
            declared = true;
            for t in &toks[1..] {
                if ids.insert((*t).to_string(), names.len()).is_some() {
                    return Err(perr(i + 1, "repeated variable name in `v` line"));
                }
                names.push((*t).to_string());
            }
            continue;
        }
        clause_rows.push((i + 1, toks.iter().map(|t| (*t).to_string()).collect()));
    }
    if clause_rows.len() != n_clauses {
        return Err(SatError::Parse {
            line: hline + 1,
            msg: format!("header declares {} clauses but {} found", n_clauses, clause_rows.len()),
        });
    }
    let mut f = MonotoneFormula::new(Vec::new());
    let mut clauses: Vec<(usize, Vec<usize>)> = Vec::new();
    for (lineno, row) in clause_rows {
        let mut c = Vec::with_capacity(row.len());
        for name in row {
            let id = match ids.get(&name) {
                Some(&id) => id,
                None => {
                    if declared {
                        return Err(SatError::Parse {
                            line: lineno,
                            msg: format!("variable `{name}` not in `v` line"),
                        });
                    }
                    let id = names.len();
                    ids.insert(name.clone(), id);
                    names.push(name);
                    id
                }
            };
            c.push(id);
        }
        clauses.push((lineno, c));
    }
    if names.len() != n_vars {
        return Err(SatError::Parse {
            line: hline + 1,
            msg: format!("header declares {} variables but {} found", n_vars, names.len()),
        });
    }
    f.names = names;
    for (lineno, c) in clauses {
        f.push_clause(&c).map_err(|e| SatError::Parse { line: lineno, msg: e.to_string() })?;
    }
    Ok(f)
}

/// The running example: three identical clauses over three variables,
/// cubic monotone and 3-uniform.
pub fn triple_clause_formula() -> MonotoneFormula {
    let mut f = MonotoneFormula::new(vec!["x".into(), "x'".into(), "x''".into()]);
    for _ in 0..3 {
        f.push_clause(&[0, 1, 2]).unwrap();
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz_formula(copies: usize) -> MonotoneFormula {
        let mut f = MonotoneFormula::with_n_vars(3);
        for _ in 0..copies {
            f.push_clause(&[0, 1, 2]).unwrap();
        }
        f
    }

    #[test]
    fn check_counts_true_literals() {
        let f = xyz_formula(2);
        let l = Assignment(vec![true, false, false]);
        assert!(check_gamma_in_beta(&f, &l, 1).unwrap());
        assert!(!check_gamma_in_beta(&f, &l, 2).unwrap());
        // Complement of a 1-IN-3 assignment of a 3-uniform formula is 2-IN-3.
        assert!(check_gamma_in_beta(&f, &complement(&l), 2).unwrap());
    }

    #[test]
    fn check_rejects_partial_assignment() {
        let f = xyz_formula(1);
        let l = Assignment(vec![true]);
        assert_eq!(
            check_gamma_in_beta(&f, &l, 1).unwrap_err(),
            SatError::PartialAssignment(1, 3)
        );
    }

    #[test]
    fn brute_force_finds_first_witness() {
        let f = xyz_formula(3);
        let l = brute_force_gamma_in_beta(&f, 1, DEFAULT_ORACLE_CAP).unwrap().unwrap();
        // Lexicographically first 1-IN-3 witness: F F T.
        assert_eq!(l.0, vec![false, false, true]);
        let all_true = brute_force_gamma_in_beta(&f, 3, DEFAULT_ORACLE_CAP).unwrap().unwrap();
        assert_eq!(all_true.0, vec![true, true, true]);
        let all_false = brute_force_gamma_in_beta(&f, 0, DEFAULT_ORACLE_CAP).unwrap().unwrap();
        assert_eq!(all_false.0, vec![false, false, false]);
    }

    #[test]
    fn brute_force_cap() {
        let f = MonotoneFormula::with_n_vars(30);
        assert_eq!(
            brute_force_gamma_in_beta(&f, 1, 24).unwrap_err(),
            SatError::TooLargeForOracle(30, 24)
        );
    }

    #[test]
    fn complement_is_involution() {
        let l = Assignment(vec![true, false, true, true]);
        assert_eq!(complement(&complement(&l)), l);
        assert_eq!(complement(&Assignment(vec![true; 4])).0, vec![false; 4]);
    }

    #[test]
    fn validate_class_flags_violations() {
        let f = xyz_formula(1);
        let diags = validate_class(&f, &ClassDescriptor::cubic(None));
        // Each of x, y, z occurs once instead of three times.
        assert_eq!(diags.len(), 3);
        let good = triple_clause_formula();
        assert!(validate_class(&good, &ClassDescriptor::cubic(Some(3))).is_empty());
    }

    #[test]
    fn clause_rejects_repeated_variable() {
        let mut f = MonotoneFormula::with_n_vars(3);
        assert_eq!(f.push_clause(&[0, 0, 1]).unwrap_err(), SatError::RepeatedVariable(0));
    }

    #[test]
    fn random_instance_matches_class() {
        let d = ClassDescriptor::cubic(Some(3));
        let f = random_instance(&d, 3, 7).unwrap();
        assert_eq!(f.n_clauses(), 3);
        assert!(validate_class(&f, &d).is_empty());
        // Determinism per seed.
        assert_eq!(f, random_instance(&d, 3, 7).unwrap());
        assert!(validate_class(&random_instance(&d, 4, 0).unwrap(), &d).is_empty());
    }

    #[test]
    fn random_instance_divisibility_error() {
        let d = ClassDescriptor { beta: Some(4), alpha: Some(3) };
        match random_instance(&d, 5, 0) {
            Err(SatError::InfeasibleParams(msg)) => assert!(msg.contains("beta")),
            other => panic!("expected infeasibility, got {other:?}"),
        }
    }

    #[test]
    fn formula_text_round_trip() {
        let f = triple_clause_formula();
        let text = write_formula(&f);
        assert!(text.starts_with("p monotone 3 3\n"));
        assert_eq!(parse_formula(&text).unwrap(), f);
    }

    #[test]
    fn parse_reports_line_numbers() {
        let e = parse_formula("p monotone 2 1\nx x y\n").unwrap_err();
        match e {
            SatError::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }
}
