//! Exact desk-scale solvers for Min-b-LETS, Min-a-LETS, Min-b-EABS,
//! Min-a-EABS, and (a,b)-class enumeration.
//!
//! The engine is a depth-first scan over variable subsets in ascending index
//! order with incremental check-degree tracking. Pruning is admissible and
//! toggleable: disabling it never changes the status or optimum, only the
//! node count. The search tree is partitioned across workers by the smallest
//! subset element; merging is deterministic, so results are independent of
//! the worker count.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::tanner::TannerGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Lets,
    Eabs,
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Kind::Lets => "lets",
            Kind::Eabs => "eabs",
        })
    }
}

/// Resource limits. Exceeding any limit aborts with a distinct status, never
/// a wrong answer.
#[derive(Debug, Clone, Default)]
pub struct SearchBudget {
    /// Largest subset size Min-a deepening will try (defaults to `n_var`).
    pub max_subset_size: Option<usize>,
    pub max_nodes: Option<u64>,
    pub time_limit: Option<Duration>,
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub pruning: bool,
    pub threads: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { pruning: true, threads: 1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Found,
    Infeasible,
    BudgetExceeded,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchResult {
    pub status: SearchStatus,
    /// The exact optimum (b for Min-b, a for Min-a) when status is `found`.
    pub optimum: Option<usize>,
    pub witness: Option<Vec<usize>>,
    pub nodes_expanded: u64,
    /// Best bound seen before a budget abort; not claimed optimal.
    pub partial_bound: Option<usize>,
    /// Min-a: the largest subset size whose level was fully exhausted.
    pub exhausted_to: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassEntry {
    pub a: usize,
    pub b: usize,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EnumerationResult {
    pub entries: Vec<ClassEntry>,
    /// False when the budget cut the scan short; the list is then partial.
    pub complete: bool,
    pub nodes_expanded: u64,
}

// ---------------------------------------------------------------------------
// Shared abort bookkeeping.
// ---------------------------------------------------------------------------

struct AbortState {
    node_limit: u64,
    nodes: AtomicU64,
    deadline: Option<Instant>,
    flag: AtomicBool,
}

impl AbortState {
    fn new(budget: &SearchBudget) -> Self {
        Self {
            node_limit: budget.max_nodes.unwrap_or(u64::MAX),
            nodes: AtomicU64::new(0),
            deadline: budget.time_limit.map(|d| Instant::now() + d),
            flag: AtomicBool::new(false),
        }
    }

    /// Registers a batch of expanded nodes; returns true if the search must
    /// stop.
    fn charge(&self, batch: u64) -> bool {
        let total = self.nodes.fetch_add(batch, Ordering::Relaxed) + batch;
        if total > self.node_limit {
            self.flag.store(true, Ordering::Relaxed);
        }
        if let Some(deadline) = self.deadline {
            if Instant::now() > deadline {
                self.flag.store(true, Ordering::Relaxed);
            }
        }
        self.flag.load(Ordering::Relaxed)
    }

    fn aborted(&self) -> bool {
        self.flag.load(Ordering::Relaxed)
    }

    fn total_nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }
}

const BATCH: u64 = 1024;

// ---------------------------------------------------------------------------
// Per-task DFS state.
// ---------------------------------------------------------------------------

struct Worker<'a> {
    g: &'a TannerGraph,
    kind: Kind,
    pruning: bool,
    /// Check degree in G(S) for the current subset.
    deg: Vec<u32>,
    subset: Vec<usize>,
    /// Number of checks at odd degree.
    odd: usize,
    /// Number of checks at degree three or more (never elementary).
    over_cap: usize,
    /// Largest variable neighbor per check; checks whose neighbors are all
    /// decided can no longer change parity.
    max_nb: &'a [isize],
    /// `gain[next][k]`: largest total degree `k` further inclusions can add,
    /// bounding how far b can still rise (Min-a only).
    gain: Option<&'a [Vec<usize>]>,
    local_nodes: u64,
    abort: &'a AbortState,
    stopped: bool,
}

impl<'a> Worker<'a> {
    fn new(
        g: &'a TannerGraph,
        kind: Kind,
        pruning: bool,
        max_nb: &'a [isize],
        abort: &'a AbortState,
    ) -> Self {
        Self {
            g,
            kind,
            pruning,
            deg: vec![0; g.n_chk()],
            subset: Vec::new(),
            odd: 0,
            over_cap: 0,
            max_nb,
            gain: None,
            local_nodes: 0,
            abort,
            stopped: false,
        }
    }

    fn tick(&mut self) {
        self.local_nodes += 1;
        if self.local_nodes % BATCH == 0 && self.abort.charge(BATCH) {
            self.stopped = true;
        }
    }

    fn flush_nodes(&mut self) {
        self.abort.charge(self.local_nodes % BATCH);
    }

    fn include(&mut self, v: usize) {
        self.subset.push(v);
        for &c in self.g.var_adj(v) {
            let d = self.deg[c];
            self.deg[c] = d + 1;
            match d {
                0 => self.odd += 1,
                1 => self.odd -= 1,
                2 => {
                    self.odd += 1;
                    self.over_cap += 1;
                }
                _ => {
                    if d % 2 == 0 {
                        self.odd += 1;
                    } else {
                        self.odd -= 1;
                    }
                }
            }
        }
    }

    fn exclude(&mut self, v: usize) {
        self.subset.pop();
        for &c in self.g.var_adj(v) {
            let d = self.deg[c];
            self.deg[c] = d - 1;
            match d {
                1 => self.odd -= 1,
                2 => self.odd += 1,
                3 => {
                    self.odd -= 1;
                    self.over_cap -= 1;
                }
                _ => {
                    if d % 2 == 0 {
                        self.odd += 1;
                    } else {
                        self.odd -= 1;
                    }
                }
            }
        }
    }

    /// If the current subset is of the target kind, returns its b value.
    fn leaf_matches(&self) -> Option<usize> {
        if self.over_cap > 0 || self.subset.is_empty() {
            return None;
        }
        for &v in &self.subset {
            let mut deg1 = 0usize;
            let mut deg2 = 0usize;
            for &c in self.g.var_adj(v) {
                match self.deg[c] {
                    1 => deg1 += 1,
                    2 => deg2 += 1,
                    _ => unreachable!("over_cap == 0"),
                }
            }
            let ok = match self.kind {
                Kind::Lets => deg2 >= 2,
                Kind::Eabs => deg2 > deg1,
            };
            if !ok {
                return None;
            }
        }
        Some(self.odd)
    }

    /// Checks whose parity is already final (all neighbors decided, i.e.
    /// below `next`) and odd, plus the count of still-flexible checks.
    fn committed_and_flexible(&self, next: usize) -> (usize, usize) {
        let next = next as isize;
        let mut committed = 0usize;
        let mut flexible = 0usize;
        for c in 0..self.deg.len() {
            if self.max_nb[c] >= next {
                flexible += 1;
            } else if self.deg[c] % 2 == 1 {
                committed += 1;
            }
        }
        (committed, flexible)
    }

    /// True when some included variable can no longer meet the kind
    /// condition in any completion of the current prefix: its committed
    /// checks are final, and even if every still-flexible check of the
    /// variable reached degree two the condition would fail. This never cuts
    /// a branch holding a valid leaf, so it is admissible everywhere.
    fn member_infeasible(&self, next: usize) -> bool {
        let next = next as isize;
        for &v in &self.subset {
            let mut c1 = 0usize;
            let mut c2 = 0usize;
            let mut flex = 0usize;
            for &c in self.g.var_adj(v) {
                if self.max_nb[c] >= next {
                    flex += 1;
                } else {
                    match self.deg[c] {
                        1 => c1 += 1,
                        2 => c2 += 1,
                        _ => {}
                    }
                }
            }
            let feasible = match self.kind {
                Kind::Lets => c2 + flex >= 2,
                Kind::Eabs => c2 + flex > c1,
            };
            if !feasible {
                return true;
            }
        }
        false
    }

    /// Min-b at fixed subset size: keeps the best (b, witness), first-found
    /// on ties so the witness is lexicographically smallest.
    fn min_b_dfs(
        &mut self,
        next: usize,
        remaining: usize,
        best: &mut Option<(usize, Vec<usize>)>,
        shared_best: &AtomicUsize,
    ) {
        if self.stopped {
            return;
        }
        self.tick();
        if remaining == 0 {
            if let Some(b) = self.leaf_matches() {
                let cur = shared_best.load(Ordering::Relaxed);
                let better_local = best.as_ref().map_or(true, |(bb, _)| b < *bb);
                if better_local && b <= cur {
                    shared_best.fetch_min(b, Ordering::Relaxed);
                    *best = Some((b, self.subset.clone()));
                }
            }
            return;
        }
        if self.pruning {
            // A strictly-greater cut keeps equal-b branches alive so the
            // lexicographic tie-break is unaffected.
            let (committed, _) = self.committed_and_flexible(next);
            if committed > shared_best.load(Ordering::Relaxed) {
                return;
            }
            if self.member_infeasible(next) {
                return;
            }
        }
        let n = self.g.n_var();
        for v in next..=n.saturating_sub(remaining) {
            self.include(v);
            let doomed = self.pruning && self.over_cap > 0;
            if !doomed {
                self.min_b_dfs(v + 1, remaining - 1, best, shared_best);
            }
            self.exclude(v);
            if self.stopped {
                return;
            }
        }
    }

    /// Fixed subset size, exact b target: stops at the first (lexicographic)
    /// witness in this task's region.
    fn exact_b_dfs(
        &mut self,
        next: usize,
        remaining: usize,
        b_target: usize,
        found: &mut Option<Vec<usize>>,
        found_at: &AtomicUsize,
        task_v0: usize,
    ) {
        if self.stopped || found.is_some() {
            return;
        }
        if found_at.load(Ordering::Relaxed) < task_v0 {
            // A lexicographically earlier region already has a witness.
            self.stopped = true;
            return;
        }
        self.tick();
        if remaining == 0 {
            if self.leaf_matches() == Some(b_target) {
                *found = Some(self.subset.clone());
                found_at.fetch_min(task_v0, Ordering::Relaxed);
            }
            return;
        }
        if self.pruning {
            let (committed, flexible) = self.committed_and_flexible(next);
            if committed > b_target || committed + flexible < b_target {
                return;
            }
            if let Some(gain) = self.gain {
                let row = &gain[next];
                if self.odd + row[remaining.min(row.len() - 1)] < b_target {
                    return;
                }
            }
            if self.member_infeasible(next) {
                return;
            }
        }
        let n = self.g.n_var();
        for v in next..=n.saturating_sub(remaining) {
            self.include(v);
            let doomed = self.pruning && self.over_cap > 0;
            if !doomed {
                self.exact_b_dfs(v + 1, remaining - 1, b_target, found, found_at, task_v0);
            }
            self.exclude(v);
            if self.stopped || found.is_some() {
                return;
            }
        }
    }

    /// Enumerates every kind-matching subset with size <= a_max and
    /// b <= b_max below the current node.
    fn enumerate_dfs(&mut self, next: usize, a_max: usize, b_max: usize, out: &mut Vec<ClassEntry>) {
        if self.stopped {
            return;
        }
        self.tick();
        if let Some(b) = self.leaf_matches() {
            if b <= b_max {
                out.push(ClassEntry { a: self.subset.len(), b, witness: self.subset.clone() });
            }
        }
        if self.subset.len() == a_max {
            return;
        }
        for v in next..self.g.n_var() {
            self.include(v);
            // Supersets of an over-cap subset can never become elementary,
            // and committed unsatisfied checks never recover.
            let doomed = self.over_cap > 0
                || self.committed_and_flexible(v + 1).0 > b_max
                || self.member_infeasible(v + 1);
            if !doomed {
                self.enumerate_dfs(v + 1, a_max, b_max, out);
            }
            self.exclude(v);
            if self.stopped {
                return;
            }
        }
    }
}

/// `gain[next][k]`: the sum of the `k` largest variable degrees among the
/// still-undecided variables `next..n`. Each inclusion flips at most that
/// variable's degree worth of check parities, so `odd + gain[next][k]` is an
/// upper bound on the b value of any leaf `k` levels down.
fn degree_gain_table(g: &TannerGraph, k_max: usize) -> Vec<Vec<usize>> {
    let n = g.n_var();
    (0..=n)
        .map(|next| {
            let mut degs: Vec<usize> = (next..n).map(|v| g.var_degree(v)).collect();
            degs.sort_unstable_by(|x, y| y.cmp(x));
            degs.truncate(k_max);
            let mut sums = vec![0usize];
            for d in degs {
                sums.push(sums.last().unwrap() + d);
            }
            sums
        })
        .collect()
}

fn max_neighbors(g: &TannerGraph) -> Vec<isize> {
    (0..g.n_chk())
        .map(|c| g.chk_adj(c).iter().map(|&v| v as isize).max().unwrap_or(-1))
        .collect()
}

// ---------------------------------------------------------------------------
// Task driver.
// ---------------------------------------------------------------------------

/// Runs `n_tasks` independent closures on `threads` workers. Task outputs are
/// returned in task order so merging stays deterministic.
fn run_tasks<T: Send>(
    n_tasks: usize,
    threads: usize,
    task: impl Fn(usize) -> T + Sync,
) -> Vec<T> {
    let threads = threads.max(1).min(n_tasks.max(1));
    if threads <= 1 {
        return (0..n_tasks).map(task).collect();
    }
    let next = AtomicUsize::new(0);
    let mut slots: Vec<Option<T>> = (0..n_tasks).map(|_| None).collect();
    let slot_refs: Vec<std::sync::Mutex<&mut Option<T>>> =
        slots.iter_mut().map(std::sync::Mutex::new).collect();
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= n_tasks {
                    break;
                }
                let out = task(i);
                **slot_refs[i].lock().unwrap() = Some(out);
            });
        }
    });
    slots.into_iter().map(|s| s.expect("task completed")).collect()
}

// ---------------------------------------------------------------------------
// Public operations.
// ---------------------------------------------------------------------------

/// Exact minimum b over all size-`a` subsets of the given kind.
pub fn min_b(
    g: &TannerGraph,
    a: usize,
    kind: Kind,
    budget: &SearchBudget,
    opts: &SearchOptions,
) -> SearchResult {
    let n = g.n_var();
    if a == 0 || a > n {
        return SearchResult {
            status: SearchStatus::Infeasible,
            optimum: None,
            witness: None,
            nodes_expanded: 0,
            partial_bound: None,
            exhausted_to: None,
        };
    }
    let abort = AbortState::new(budget);
    let max_nb = max_neighbors(g);
    let shared_best = AtomicUsize::new(usize::MAX);
    let n_tasks = n - a + 1; // tasks keyed by the smallest subset element
    let results = run_tasks(n_tasks, opts.threads, |v0| {
        let mut w = Worker::new(g, kind, opts.pruning, &max_nb, &abort);
        let mut best: Option<(usize, Vec<usize>)> = None;
        w.include(v0);
        if !(opts.pruning && w.over_cap > 0) || a == 1 {
            w.min_b_dfs(v0 + 1, a - 1, &mut best, &shared_best);
        }
        w.exclude(v0);
        w.flush_nodes();
        best
    });
    let best = results
        .into_iter()
        .flatten()
        .min_by(|(b1, s1), (b2, s2)| b1.cmp(b2).then_with(|| s1.cmp(s2)));
    let nodes_expanded = abort.total_nodes();
    if abort.aborted() {
        return SearchResult {
            status: SearchStatus::BudgetExceeded,
            optimum: None,
            witness: None,
            nodes_expanded,
            partial_bound: best.map(|(b, _)| b),
            exhausted_to: None,
        };
    }
    match best {
        Some((b, witness)) => SearchResult {
            status: SearchStatus::Found,
            optimum: Some(b),
            witness: Some(witness),
            nodes_expanded,
            partial_bound: None,
            exhausted_to: None,
        },
        None => SearchResult {
            status: SearchStatus::Infeasible,
            optimum: None,
            witness: None,
            nodes_expanded,
            partial_bound: None,
            exhausted_to: None,
        },
    }
}

/// Exact minimum a with exactly `b` unsatisfied checks, by iterative
/// deepening over the subset size. `Infeasible` means the whole size range up
/// to `max_subset_size` (default `n_var`) was exhausted; the range actually
/// covered is reported in `exhausted_to`.
pub fn min_a(
    g: &TannerGraph,
    b: usize,
    kind: Kind,
    budget: &SearchBudget,
    opts: &SearchOptions,
) -> SearchResult {
    let n = g.n_var();
    let a_cap = budget.max_subset_size.unwrap_or(n).min(n);
    if b > g.n_chk() {
        return SearchResult {
            status: SearchStatus::Infeasible,
            optimum: None,
            witness: None,
            nodes_expanded: 0,
            partial_bound: None,
            exhausted_to: Some(a_cap),
        };
    }
    let abort = AbortState::new(budget);
    let max_nb = max_neighbors(g);
    let gain = degree_gain_table(g, a_cap);
    for a in 1..=a_cap {
        let found_at = AtomicUsize::new(usize::MAX);
        let n_tasks = n - a + 1;
        let results = run_tasks(n_tasks, opts.threads, |v0| {
            let mut w = Worker::new(g, kind, opts.pruning, &max_nb, &abort);
            if opts.pruning {
                w.gain = Some(&gain);
            }
            let mut found: Option<Vec<usize>> = None;
            w.include(v0);
            if !(opts.pruning && w.over_cap > 0) || a == 1 {
                w.exact_b_dfs(v0 + 1, a - 1, b, &mut found, &found_at, v0);
            }
            w.exclude(v0);
            w.flush_nodes();
            let completed = !w.stopped || found.is_some();
            (found, completed)
        });
        // The witness stands only if every lexicographically earlier task
        // completed (or also found one).
        let mut witness: Option<Vec<usize>> = None;
        let mut clean_prefix = true;
        for (found, completed) in results {
            if let Some(s) = found {
                if witness.is_none() {
                    witness = Some(s);
                }
                break;
            }
            if !completed {
                clean_prefix = false;
                break;
            }
        }
        if let Some(witness) = witness {
            if clean_prefix {
                return SearchResult {
                    status: SearchStatus::Found,
                    optimum: Some(a),
                    witness: Some(witness),
                    nodes_expanded: abort.total_nodes(),
                    partial_bound: None,
                    exhausted_to: Some(a.saturating_sub(1)),
                };
            }
        }
        if abort.aborted() || !clean_prefix {
            return SearchResult {
                status: SearchStatus::BudgetExceeded,
                optimum: None,
                witness: None,
                nodes_expanded: abort.total_nodes(),
                partial_bound: None,
                exhausted_to: Some(a.saturating_sub(1)),
            };
        }
    }
    SearchResult {
        status: SearchStatus::Infeasible,
        optimum: None,
        witness: None,
        nodes_expanded: abort.total_nodes(),
        partial_bound: None,
        exhausted_to: Some(a_cap),
    }
}

/// Exhaustive, duplicate-free list of all kind subsets with `a <= a_max` and
/// `b <= b_max`, in lexicographic witness order.
pub fn enumerate_class(
    g: &TannerGraph,
    a_max: usize,
    b_max: usize,
    kind: Kind,
    budget: &SearchBudget,
) -> EnumerationResult {
    let a_max = a_max.min(g.n_var());
    let abort = AbortState::new(budget);
    let max_nb = max_neighbors(g);
    let mut out = Vec::new();
    if a_max > 0 {
        let mut w = Worker::new(g, kind, true, &max_nb, &abort);
        for v0 in 0..g.n_var() {
            w.include(v0);
            if w.over_cap == 0 {
                w.enumerate_dfs(v0 + 1, a_max, b_max, &mut out);
            }
            w.exclude(v0);
            if w.stopped {
                break;
            }
        }
        w.flush_nodes();
    }
    EnumerationResult { entries: out, complete: !abort.aborted(), nodes_expanded: abort.total_nodes() }
}
