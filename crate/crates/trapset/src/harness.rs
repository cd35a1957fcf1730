//! Verification pipelines: each one runs a reduction stage, re-derives the
//! claimed properties by independent brute force where feasible, and emits a
//! structured report. Brute-force legs that exceed the configured caps are
//! recorded as skips with a reason — never as silent passes. A pipeline fails
//! only on a genuine contradiction.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::reductions::{
    build_equalizer_formula, build_min_a_eabs_instance, build_min_a_lets_instance, step1_expand,
    step2_make_cubic, step3_make_alpha_regular, step4_formula_to_tanner, ReductionError,
};
use crate::sat::{
    brute_force_gamma_in_beta, check_gamma_in_beta, random_instance, Assignment, ClassDescriptor,
    MonotoneFormula, SatError,
};
use crate::search::{min_a, min_b, Kind, SearchBudget, SearchOptions, SearchStatus};
use crate::tanner::{classify, regularity};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub observed: Value,
    pub expected: Value,
    /// How the expected value was obtained: "closed-form", "brute-force",
    /// "exhaustive-search", or "construction".
    pub provenance: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceDescriptor {
    pub source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub params: BTreeMap<String, i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub pipeline: String,
    pub instance: InstanceDescriptor,
    pub checks: Vec<Check>,
    pub passed: bool,
    pub skipped: usize,
    /// True when a skip was caused by the search budget rather than an
    /// explicit size cap.
    pub budget_exhausted: bool,
    /// Timing; excluded from golden-file comparisons.
    pub elapsed_ms: u128,
}

/// Size caps and budgets shared by all pipelines.
#[derive(Debug, Clone)]
pub struct Caps {
    /// Largest variable count the exhaustive assignment sweeps will attempt.
    pub oracle_max_vars: usize,
    pub budget: SearchBudget,
    pub threads: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            oracle_max_vars: crate::sat::DEFAULT_ORACLE_CAP,
            budget: SearchBudget::default(),
            threads: 1,
        }
    }
}

struct Recorder {
    checks: Vec<Check>,
    budget_exhausted: bool,
}

impl Recorder {
    fn new() -> Self {
        Self { checks: Vec::new(), budget_exhausted: false }
    }

    fn record(
        &mut self,
        name: &str,
        provenance: &'static str,
        expected: Value,
        observed: Value,
    ) -> bool {
        let ok = expected == observed;
        self.checks.push(Check {
            name: name.to_string(),
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            observed,
            expected,
            provenance,
            note: None,
        });
        ok
    }

    fn assert_true(&mut self, name: &str, provenance: &'static str, observed: bool) -> bool {
        self.record(name, provenance, json!(true), json!(observed))
    }

    fn skip(&mut self, name: &str, provenance: &'static str, reason: String, budget: bool) {
        self.checks.push(Check {
            name: name.to_string(),
            status: CheckStatus::Skip,
            observed: Value::Null,
            expected: Value::Null,
            provenance,
            note: Some(reason),
        });
        self.budget_exhausted |= budget;
    }

    fn finish(self, pipeline: &str, instance: InstanceDescriptor, started: Instant) -> VerificationReport {
        let passed = self.checks.iter().all(|c| c.status != CheckStatus::Fail);
        let skipped = self.checks.iter().filter(|c| c.status == CheckStatus::Skip).count();
        VerificationReport {
            schema_version: REPORT_SCHEMA_VERSION,
            pipeline: pipeline.to_string(),
            instance,
            checks: self.checks,
            passed,
            skipped,
            budget_exhausted: self.budget_exhausted,
            elapsed_ms: started.elapsed().as_millis(),
        }
    }
}

fn descriptor(source: &str, seed: Option<u64>, params: &[(&str, i64)]) -> InstanceDescriptor {
    InstanceDescriptor {
        source: source.to_string(),
        seed,
        params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
    }
}

/// Both-sides satisfiability comparison plus witness transport in both
/// directions, shared by the step pipelines.
fn equisat_checks(
    rec: &mut Recorder,
    label: &str,
    input: &MonotoneFormula,
    input_gamma: usize,
    output: &MonotoneFormula,
    output_gamma: usize,
    cap: usize,
    forward: &dyn Fn(&Assignment) -> Assignment,
    backward: &dyn Fn(&Assignment) -> Assignment,
) {
    let in_wit = match brute_force_gamma_in_beta(input, input_gamma, cap) {
        Ok(w) => w,
        Err(_) => {
            rec.skip(
                &format!("{label}.equisatisfiable"),
                "brute-force",
                format!("input has {} variables, above the {cap}-variable sweep cap", input.n_vars()),
                false,
            );
            return;
        }
    };
    let out_wit = match brute_force_gamma_in_beta(output, output_gamma, cap) {
        Ok(w) => w,
        Err(_) => {
            rec.skip(
                &format!("{label}.equisatisfiable"),
                "brute-force",
                format!("output has {} variables, above the {cap}-variable sweep cap", output.n_vars()),
                false,
            );
            return;
        }
    };
    rec.record(
        &format!("{label}.equisatisfiable"),
        "brute-force",
        json!(in_wit.is_some()),
        json!(out_wit.is_some()),
    );
    if let Some(w) = &in_wit {
        let fwd = forward(w);
        rec.assert_true(
            &format!("{label}.forward_witness_satisfies_output"),
            "brute-force",
            check_gamma_in_beta(output, &fwd, output_gamma).unwrap_or(false),
        );
    }
    if let Some(w) = &out_wit {
        let back = backward(w);
        let ok = check_gamma_in_beta(input, &back, input_gamma).unwrap_or(false);
        rec.assert_true(&format!("{label}.backward_witness_satisfies_input"), "brute-force", ok);
    }
}

// ---------------------------------------------------------------------------
// Step pipelines.
// ---------------------------------------------------------------------------

pub fn verify_step1(
    phi: &MonotoneFormula,
    beta: usize,
    seed: Option<u64>,
    caps: &Caps,
) -> Result<VerificationReport, ReductionError> {
    let started = Instant::now();
    let mut rec = Recorder::new();
    let step = step1_expand(phi, beta)?;
    rec.record(
        "step1.output_is_beta_uniform",
        "construction",
        json!(Some(beta)),
        json!(step.output.uniform_width()),
    );
    rec.assert_true(
        "step1.trace_covers_output",
        "construction",
        step.trace.is_total_for(step.output.n_vars(), step.output.n_clauses()),
    );
    equisat_checks(
        &mut rec,
        "step1",
        phi,
        1,
        &step.output,
        2,
        caps.oracle_max_vars,
        &|w| step.forward(w),
        &|w| step.backward(w),
    );
    Ok(rec.finish(
        "step1",
        descriptor("3-uniform monotone formula", seed, &[
            ("beta", beta as i64),
            ("n_vars", phi.n_vars() as i64),
            ("n_clauses", phi.n_clauses() as i64),
        ]),
        started,
    ))
}

pub fn verify_step2(
    phi: &MonotoneFormula,
    beta: usize,
    seed: Option<u64>,
    caps: &Caps,
) -> Result<VerificationReport, ReductionError> {
    let started = Instant::now();
    let mut rec = Recorder::new();
    let step1 = step1_expand(phi, beta)?;
    let step2 = step2_make_cubic(&step1.output)?;
    rec.record(
        "step2.output_is_cubic_and_uniform",
        "construction",
        json!(Vec::<Value>::new()),
        json!(crate::sat::validate_class(
            &step2.output,
            &ClassDescriptor { beta: Some(beta), alpha: Some(3) }
        )),
    );
    // Nine clause copies plus one equalizer (six clauses per three blacks)
    // for each of the beta * |C| occurrence slots.
    rec.record(
        "step2.clause_count",
        "closed-form",
        json!(step1.output.n_clauses() * (9 + 18 * beta)),
        json!(step2.output.n_clauses()),
    );
    rec.assert_true(
        "step2.trace_covers_output",
        "construction",
        step2.trace.is_total_for(step2.output.n_vars(), step2.output.n_clauses()),
    );
    equisat_checks(
        &mut rec,
        "step2",
        &step1.output,
        2,
        &step2.output,
        2,
        caps.oracle_max_vars,
        &|w| step2.forward(w),
        &|w| step2.backward(w),
    );
    Ok(rec.finish(
        "step2",
        descriptor("3-uniform monotone formula", seed, &[
            ("beta", beta as i64),
            ("n_vars", phi.n_vars() as i64),
            ("n_clauses", phi.n_clauses() as i64),
        ]),
        started,
    ))
}

pub fn verify_step3(
    phi: &MonotoneFormula,
    alpha: usize,
    beta: usize,
    seed: Option<u64>,
    caps: &Caps,
) -> Result<VerificationReport, ReductionError> {
    let started = Instant::now();
    let mut rec = Recorder::new();
    let step1 = step1_expand(phi, beta)?;
    let step2 = step2_make_cubic(&step1.output)?;
    let step3 = step3_make_alpha_regular(&step2.output, alpha)?;
    rec.record(
        "step3.output_is_alpha_regular_beta_uniform",
        "construction",
        json!(Vec::<Value>::new()),
        json!(crate::sat::validate_class(
            &step3.output,
            &ClassDescriptor { beta: Some(beta), alpha: Some(alpha) }
        )),
    );
    rec.assert_true(
        "step3.trace_covers_output",
        "construction",
        step3.trace.is_total_for(step3.output.n_vars(), step3.output.n_clauses()),
    );
    equisat_checks(
        &mut rec,
        "step3",
        &step2.output,
        2,
        &step3.output,
        2,
        caps.oracle_max_vars,
        &|w| step3.forward(w),
        &|w| step3.backward(w),
    );
    Ok(rec.finish(
        "step3",
        descriptor("3-uniform monotone formula", seed, &[
            ("alpha", alpha as i64),
            ("beta", beta as i64),
            ("n_vars", phi.n_vars() as i64),
            ("n_clauses", phi.n_clauses() as i64),
        ]),
        started,
    ))
}

/// Incidence-graph leg on an already alpha-regular beta-uniform formula:
/// regularity, the target size `a = 2|W|/alpha`, and `min_b = 0 at size a`
/// iff the formula is 2-IN-beta satisfiable, for both search kinds.
pub fn verify_step4(
    phi: &MonotoneFormula,
    seed: Option<u64>,
    caps: &Caps,
) -> Result<VerificationReport, ReductionError> {
    let started = Instant::now();
    let mut rec = Recorder::new();
    let step = step4_formula_to_tanner(phi)?;
    let g = &step.graph;
    let reg = regularity(g);
    rec.record(
        "step4.graph_is_regular",
        "construction",
        json!([Some(step.alpha), Some(step.beta)]),
        json!([reg.d_v, reg.d_c]),
    );
    rec.record(
        "step4.target_size_identity",
        "closed-form",
        json!(2 * g.n_chk()),
        json!(step.a * step.alpha),
    );
    let wit = match brute_force_gamma_in_beta(phi, 2, caps.oracle_max_vars) {
        Ok(w) => w,
        Err(_) => {
            rec.skip(
                "step4.min_b_zero_iff_satisfiable",
                "brute-force",
                format!(
                    "formula has {} variables, above the {}-variable sweep cap",
                    phi.n_vars(),
                    caps.oracle_max_vars
                ),
                false,
            );
            return Ok(rec.finish("step4", step4_descriptor(phi, seed, &step), started));
        }
    };
    for kind in [Kind::Lets, Kind::Eabs] {
        let opts = SearchOptions { pruning: true, threads: caps.threads };
        let r = min_b(g, step.a, kind, &caps.budget, &opts);
        let name = format!("step4.min_b_zero_iff_satisfiable.{kind}");
        match r.status {
            SearchStatus::BudgetExceeded => {
                rec.skip(&name, "exhaustive-search", "search budget exceeded".into(), true)
            }
            _ => {
                let zero = r.status == SearchStatus::Found && r.optimum == Some(0);
                rec.record(&name, "exhaustive-search", json!(wit.is_some()), json!(zero));
                if let Some(s) = &r.witness {
                    if r.optimum == Some(0) {
                        let back = step.backward(s);
                        let back_ok = check_gamma_in_beta(phi, &back, 2).unwrap_or(false);
                        rec.assert_true(
                            &format!("step4.search_witness_transports_back.{kind}"),
                            "exhaustive-search",
                            back_ok,
                        );
                    }
                }
            }
        }
    }
    if let Some(w) = &wit {
        let s = step.forward(w);
        let flags = classify(g, &s).expect("witness in range");
        rec.assert_true("step4.forward_witness_is_lets", "brute-force", flags.is_lets);
        rec.record("step4.forward_witness_size", "closed-form", json!(step.a), json!(s.len()));
        let prof = crate::tanner::subset_profile(g, &s).expect("witness in range");
        rec.record("step4.forward_witness_b", "closed-form", json!(0), json!(prof.b()));
    }
    Ok(rec.finish("step4", step4_descriptor(phi, seed, &step), started))
}

fn step4_descriptor(
    phi: &MonotoneFormula,
    seed: Option<u64>,
    step: &crate::reductions::Step4,
) -> InstanceDescriptor {
    descriptor("regular uniform monotone formula", seed, &[
        ("alpha", step.alpha as i64),
        ("beta", step.beta as i64),
        ("n_vars", phi.n_vars() as i64),
        ("n_clauses", phi.n_clauses() as i64),
    ])
}

// ---------------------------------------------------------------------------
// Theorem-level pipelines on the fixed-size gadget instances.
// ---------------------------------------------------------------------------

fn a_expected_lets(eta: usize) -> Option<usize> {
    (eta % 3 == 0).then(|| eta + 2 * eta / 3)
}

fn a_expected_eabs(eta: usize) -> Option<usize> {
    (eta % 3 == 0).then(|| 2 * eta + 2 * eta / 3)
}

/// Structural facts every target-b witness must exhibit, shared by both
/// theorem pipelines: per clause the designated gadget variables and nothing
/// else, per source variable both copies or neither, and a backward image
/// that is a 1-IN-3 solution.
#[allow(clippy::too_many_arguments)]
fn witness_fact_checks(
    rec: &mut Recorder,
    label: &str,
    psi: &MonotoneFormula,
    witness: &[usize],
    in_gadget: &[Vec<usize>],
    out_gadget: &[Vec<usize>],
    x1: &[usize],
    x2: &[usize],
    backward: &dyn Fn(&[usize]) -> Assignment,
) {
    let member = |v: usize| witness.binary_search(&v).is_ok();
    let forced = in_gadget.iter().flatten().all(|&v| member(v));
    let excluded = out_gadget.iter().flatten().all(|&v| !member(v));
    rec.assert_true(&format!("{label}.witness_contains_forced_gadget_vars"), "closed-form", forced);
    rec.assert_true(&format!("{label}.witness_omits_other_gadget_vars"), "closed-form", excluded);
    let paired = (0..psi.n_vars()).all(|v| member(x1[v]) == member(x2[v]));
    rec.assert_true(&format!("{label}.witness_pairs_variable_copies"), "closed-form", paired);
    let true_count = (0..psi.n_vars()).filter(|&v| member(x1[v])).count();
    rec.record(
        &format!("{label}.witness_true_variable_count"),
        "closed-form",
        json!(psi.n_vars() / 3),
        json!(true_count),
    );
    let back = backward(witness);
    let back_ok = check_gamma_in_beta(psi, &back, 1).unwrap_or(false);
    rec.assert_true(&format!("{label}.witness_decodes_to_1_in_3_solution"), "brute-force", back_ok);
}

pub fn verify_thm2(
    psi: &MonotoneFormula,
    seed: Option<u64>,
    caps: &Caps,
) -> Result<VerificationReport, ReductionError> {
    let started = Instant::now();
    let mut rec = Recorder::new();
    let inst = build_min_a_lets_instance(psi)?;
    let eta = inst.eta;
    rec.record(
        "thm2.node_counts",
        "closed-form",
        json!([5 * eta, eta * (2 * eta + 3)]),
        json!([inst.graph.n_var(), inst.graph.n_chk()]),
    );
    rec.record("thm2.target_b", "closed-form", json!(eta * (2 * eta + 1)), json!(inst.b));
    let sat = match brute_force_gamma_in_beta(psi, 1, caps.oracle_max_vars) {
        Ok(w) => w,
        Err(_) => {
            rec.skip(
                "thm2.min_a_matches_satisfiability",
                "brute-force",
                format!("source has {} variables, above the sweep cap", psi.n_vars()),
                false,
            );
            return Ok(rec.finish("thm2", thm_descriptor(psi, seed, eta), started));
        }
    };
    let a_target = a_expected_lets(eta);
    rec.record(
        "thm2.a_expected",
        "closed-form",
        json!(inst.a_expected),
        json!(a_target),
    );
    let mut budget = caps.budget.clone();
    if budget.max_subset_size.is_none() {
        // One past the target is enough to separate found from infeasible.
        budget.max_subset_size = Some(a_target.map_or(inst.graph.n_var(), |a| a + 1));
    }
    let opts = SearchOptions { pruning: true, threads: caps.threads };
    let r = min_a(&inst.graph, inst.b, Kind::Lets, &budget, &opts);
    if r.status == SearchStatus::BudgetExceeded {
        rec.skip(
            "thm2.min_a_matches_satisfiability",
            "exhaustive-search",
            "search budget exceeded".into(),
            true,
        );
        return Ok(rec.finish("thm2", thm_descriptor(psi, seed, eta), started));
    }
    match (sat.as_ref(), a_target) {
        (Some(_), Some(a)) => {
            rec.record(
                "thm2.min_a_matches_satisfiability",
                "exhaustive-search",
                json!({"status": "found", "a": a}),
                json!({"status": status_str(r.status), "a": r.optimum}),
            );
        }
        _ => {
            // Unsatisfiable source, or eta not divisible by 3: no witness at
            // the target b within the searched range.
            rec.record(
                "thm2.min_a_matches_satisfiability",
                "exhaustive-search",
                json!("infeasible"),
                json!(status_str(r.status)),
            );
        }
    }
    if let Some(s) = &r.witness {
        let flags = classify(&inst.graph, s).expect("witness in range");
        rec.assert_true("thm2.search_witness_is_lets", "exhaustive-search", flags.is_lets);
        let prof = crate::tanner::subset_profile(&inst.graph, s).expect("witness in range");
        rec.record("thm2.search_witness_b", "closed-form", json!(inst.b), json!(prof.b()));
        let in_gadget: Vec<Vec<usize>> = inst.g.iter().map(|g| vec![g[0]]).collect();
        let out_gadget: Vec<Vec<usize>> = inst.g.iter().map(|g| vec![g[1], g[2]]).collect();
        witness_fact_checks(
            &mut rec,
            "thm2",
            psi,
            s,
            &in_gadget,
            &out_gadget,
            &inst.x1,
            &inst.x2,
            &|w| inst.backward(w),
        );
    }
    if let Some(w) = &sat {
        let s = inst.forward(w);
        let prof = crate::tanner::subset_profile(&inst.graph, &s).expect("witness in range");
        rec.assert_true("thm2.forward_witness_is_lets", "brute-force", prof.flags.is_lets);
        rec.record(
            "thm2.forward_witness_profile",
            "closed-form",
            json!([a_target, Some(inst.b)]),
            json!([Some(prof.a()), Some(prof.b())]),
        );
    }
    Ok(rec.finish("thm2", thm_descriptor(psi, seed, eta), started))
}

pub fn verify_thm4(
    psi: &MonotoneFormula,
    seed: Option<u64>,
    caps: &Caps,
) -> Result<VerificationReport, ReductionError> {
    let started = Instant::now();
    let mut rec = Recorder::new();
    let inst = build_min_a_eabs_instance(psi)?;
    let eta = inst.eta;
    rec.record(
        "thm4.node_counts",
        "closed-form",
        json!([7 * eta, eta * (4 * eta + 4)]),
        json!([inst.graph.n_var(), inst.graph.n_chk()]),
    );
    rec.record("thm4.target_b", "closed-form", json!(eta * (2 * eta + 1)), json!(inst.b));
    let sat = match brute_force_gamma_in_beta(psi, 1, caps.oracle_max_vars) {
        Ok(w) => w,
        Err(_) => {
            rec.skip(
                "thm4.min_a_matches_satisfiability",
                "brute-force",
                format!("source has {} variables, above the sweep cap", psi.n_vars()),
                false,
            );
            return Ok(rec.finish("thm4", thm_descriptor(psi, seed, eta), started));
        }
    };
    let a_target = a_expected_eabs(eta);
    rec.record("thm4.a_expected", "closed-form", json!(inst.a_expected), json!(a_target));
    let mut budget = caps.budget.clone();
    if budget.max_subset_size.is_none() {
        budget.max_subset_size = Some(a_target.map_or(inst.graph.n_var(), |a| a + 1));
    }
    let opts = SearchOptions { pruning: true, threads: caps.threads };
    let r = min_a(&inst.graph, inst.b, Kind::Eabs, &budget, &opts);
    if r.status == SearchStatus::BudgetExceeded {
        rec.skip(
            "thm4.min_a_matches_satisfiability",
            "exhaustive-search",
            "search budget exceeded".into(),
            true,
        );
        return Ok(rec.finish("thm4", thm_descriptor(psi, seed, eta), started));
    }
    match (sat.as_ref(), a_target) {
        (Some(_), Some(a)) => {
            rec.record(
                "thm4.min_a_matches_satisfiability",
                "exhaustive-search",
                json!({"status": "found", "a": a}),
                json!({"status": status_str(r.status), "a": r.optimum}),
            );
        }
        _ => {
            rec.record(
                "thm4.min_a_matches_satisfiability",
                "exhaustive-search",
                json!("infeasible"),
                json!(status_str(r.status)),
            );
        }
    }
    if let Some(s) = &r.witness {
        let flags = classify(&inst.graph, s).expect("witness in range");
        rec.assert_true("thm4.search_witness_is_eabs", "exhaustive-search", flags.is_eabs);
        let prof = crate::tanner::subset_profile(&inst.graph, s).expect("witness in range");
        rec.record("thm4.search_witness_b", "closed-form", json!(inst.b), json!(prof.b()));
        let in_gadget: Vec<Vec<usize>> = inst.g.iter().map(|g| vec![g[0], g[1]]).collect();
        let out_gadget: Vec<Vec<usize>> =
            inst.g.iter().map(|g| vec![g[2], g[3], g[4]]).collect();
        witness_fact_checks(
            &mut rec,
            "thm4",
            psi,
            s,
            &in_gadget,
            &out_gadget,
            &inst.x1,
            &inst.x2,
            &|w| inst.backward(w),
        );
    }
    if let Some(w) = &sat {
        let s = inst.forward(w);
        let prof = crate::tanner::subset_profile(&inst.graph, &s).expect("witness in range");
        rec.assert_true("thm4.forward_witness_is_eabs", "brute-force", prof.flags.is_eabs);
        rec.record(
            "thm4.forward_witness_profile",
            "closed-form",
            json!([a_target, Some(inst.b)]),
            json!([Some(prof.a()), Some(prof.b())]),
        );
    }
    Ok(rec.finish("thm4", thm_descriptor(psi, seed, eta), started))
}

fn thm_descriptor(psi: &MonotoneFormula, seed: Option<u64>, eta: usize) -> InstanceDescriptor {
    descriptor("cubic 3-uniform monotone formula", seed, &[
        ("eta", eta as i64),
        ("n_vars", psi.n_vars() as i64),
    ])
}

fn status_str(s: SearchStatus) -> &'static str {
    match s {
        SearchStatus::Found => "found",
        SearchStatus::Infeasible => "infeasible",
        SearchStatus::BudgetExceeded => "budget_exceeded",
    }
}

// ---------------------------------------------------------------------------
// Instance generation.
// ---------------------------------------------------------------------------

/// Random 3-uniform monotone formula with distinct variables per clause.
/// Every variable is used at least once.
pub fn random_three_uniform(
    n_vars: usize,
    n_clauses: usize,
    seed: u64,
) -> Result<MonotoneFormula, SatError> {
    assert!(n_vars >= 3, "need at least three variables");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let names: Vec<String> = (0..n_vars).map(|i| format!("x{}", i + 1)).collect();
        let mut phi = MonotoneFormula::new(names);
        let mut used = vec![false; n_vars];
        for _ in 0..n_clauses {
            let mut picks = Vec::new();
            while picks.len() < 3 {
                let v = rng.gen_range(0..n_vars);
                if !picks.contains(&v) {
                    picks.push(v);
                }
            }
            for &v in &picks {
                used[v] = true;
            }
            phi.push_clause(&picks)?;
        }
        if used.iter().all(|&u| u) {
            return Ok(phi);
        }
    }
}

/// Random cubic 3-uniform monotone instance with `eta` clauses (and `eta`
/// variables).
pub fn random_cubic(eta: usize, seed: u64) -> Result<MonotoneFormula, SatError> {
    random_instance(&ClassDescriptor::cubic(Some(3)), eta, seed)
}

/// Searches seeds for a cubic instance with no 1-IN-3 solution, by oracle
/// sweep. Returns the instance and the seed that produced it.
pub fn find_unsat_cubic(
    eta: usize,
    start_seed: u64,
    attempts: u64,
    oracle_cap: usize,
) -> Result<Option<(MonotoneFormula, u64)>, SatError> {
    for offset in 0..attempts {
        let seed = start_seed.wrapping_add(offset);
        let psi = match random_cubic(eta, seed) {
            Ok(p) => p,
            Err(SatError::InfeasibleParams { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        if brute_force_gamma_in_beta(&psi, 1, oracle_cap)?.is_none() {
            return Ok(Some((psi, seed)));
        }
    }
    Ok(None)
}

/// Exhaustive black-equality sweep of the equalizer gadget: in every 2-IN-k
/// solution all black variables agree, and both polarities occur.
pub fn verify_equalizer(t: usize, k: usize, j: usize) -> Result<VerificationReport, ReductionError> {
    let started = Instant::now();
    let mut rec = Recorder::new();
    let gadget = build_equalizer_formula(t, k, j)?;
    let phi = &gadget.formula;
    let n = phi.n_vars();
    assert!(n <= 26, "equalizer sweep limited to 2^26 assignments");
    let mut all_equal = true;
    let mut saw = [false, false];
    let mut solutions = 0u64;
    for mask in 0u64..(1u64 << n) {
        let assignment = Assignment((0..n).map(|v| mask >> v & 1 == 1).collect());
        if check_gamma_in_beta(phi, &assignment, 2).unwrap_or(false) {
            solutions += 1;
            let first = assignment.get(gadget.blacks[0]);
            if gadget.blacks.iter().any(|&b| assignment.get(b) != first) {
                all_equal = false;
            }
            saw[first as usize] = true;
        }
    }
    rec.assert_true("equalizer.solutions_exist", "brute-force", solutions > 0);
    rec.assert_true("equalizer.blacks_forced_equal", "brute-force", all_equal);
    rec.assert_true("equalizer.both_polarities_occur", "brute-force", saw[0] && saw[1]);
    for polarity in [true, false] {
        let mut values = vec![false; n];
        gadget.fill_assignment(&mut values, polarity);
        let filled = Assignment(values);
        rec.assert_true(
            &format!("equalizer.fill_satisfies.{polarity}"),
            "closed-form",
            check_gamma_in_beta(phi, &filled, 2).unwrap_or(false),
        );
    }
    Ok(rec.finish(
        "equalizer",
        descriptor("equalizer gadget", None, &[
            ("t", t as i64),
            ("k", k as i64),
            ("j", j as i64),
        ]),
        started,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sat::triple_clause_formula;

    #[test]
    fn thm2_pipeline_on_running_example() {
        let report = verify_thm2(&triple_clause_formula(), None, &Caps::default()).unwrap();
        assert!(report.passed, "{}", serde_json::to_string_pretty(&report).unwrap());
        assert_eq!(report.skipped, 0);
        let min_a_check = report
            .checks
            .iter()
            .find(|c| c.name == "thm2.min_a_matches_satisfiability")
            .unwrap();
        assert_eq!(min_a_check.status, CheckStatus::Pass);
    }

    #[test]
    fn thm4_pipeline_on_running_example() {
        let report = verify_thm4(&triple_clause_formula(), None, &Caps::default()).unwrap();
        assert!(report.passed, "{}", serde_json::to_string_pretty(&report).unwrap());
        assert_eq!(report.skipped, 0);
    }

    #[test]
    fn step_pipelines_on_small_random_formula() {
        let phi = random_three_uniform(4, 3, 7).unwrap();
        for beta in [3, 4] {
            let r1 = verify_step1(&phi, beta, Some(7), &Caps::default()).unwrap();
            assert!(r1.passed, "{}", serde_json::to_string_pretty(&r1).unwrap());
        }
        let caps = Caps::default();
        let r2 = verify_step2(&phi, 3, Some(7), &caps).unwrap();
        assert!(r2.passed, "{}", serde_json::to_string_pretty(&r2).unwrap());
        // The cubic intermediate formula is far above the sweep cap, so the
        // satisfiability leg must be an explicit skip, not a silent pass.
        assert!(r2.skipped > 0);
    }

    #[test]
    fn step4_pipeline_on_running_example() {
        let report = verify_step4(&triple_clause_formula(), None, &Caps::default()).unwrap();
        assert!(report.passed, "{}", serde_json::to_string_pretty(&report).unwrap());
        assert_eq!(report.skipped, 0);
    }

    #[test]
    fn equalizer_pipeline_small() {
        let report = verify_equalizer(1, 3, 0).unwrap();
        assert!(report.passed, "{}", serde_json::to_string_pretty(&report).unwrap());
    }

    #[test]
    fn unsat_generator_finds_instance() {
        let found = find_unsat_cubic(6, 1, 500, 24).unwrap();
        let (psi, _) = found.expect("an unsatisfiable cubic instance in 500 seeds");
        assert!(brute_force_gamma_in_beta(&psi, 1, 24).unwrap().is_none());
    }
}
