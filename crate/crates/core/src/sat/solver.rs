//! A complete CDCL solver: two-watched-literal propagation, first-UIP
//! conflict analysis with clause minimization, VSIDS branching with phase
//! saving, Luby restarts, and LBD-guided learned-clause reduction.
//!
//! The solver is fully deterministic: no randomization anywhere, ties
//! resolved by variable index. A conflict budget turns exhaustion into an
//! honest `Unknown` instead of a misreported answer.

use alloc::vec;
use alloc::vec::Vec;

/// Resource limits for one [`Solver::solve`] call.
#[derive(Clone, Debug, Default)]
pub struct Budget {
    /// Give up (status `Unknown`) after this many conflicts.
    pub max_conflicts: Option<u64>,
    /// Give up after this many unit propagations.
    pub max_propagations: Option<u64>,
}

impl Budget {
    /// No limits: run to completion.
    pub fn unlimited() -> Self {
        Budget::default()
    }

    /// Limit by conflicts only.
    pub fn conflicts(n: u64) -> Self {
        Budget {
            max_conflicts: Some(n),
            max_propagations: None,
        }
    }
}

/// Solver verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// A satisfying assignment was found (and re-verified).
    Sat,
    /// The formula was refuted.
    Unsat,
    /// The budget ran out before an answer was reached.
    Unknown,
}

/// Search statistics.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Number of branching decisions.
    pub decisions: u64,
    /// Number of conflicts analyzed.
    pub conflicts: u64,
    /// Number of literals propagated.
    pub propagations: u64,
    /// Number of restarts performed.
    pub restarts: u64,
    /// Learned clauses currently retained.
    pub learned: u64,
}

/// Outcome of a solve call; `model` is present iff `status` is `Sat`.
#[derive(Clone, Debug)]
pub struct SatOutcome {
    /// Verdict.
    pub status: Status,
    /// Satisfying assignment indexed by variable (0-based).
    pub model: Option<Vec<bool>>,
    /// Search statistics.
    pub stats: SolveStats,
}

const LIT_UNDEF: Lit = Lit(u32::MAX);
const VALUE_UNDEF: u8 = 2;
const NO_REASON: u32 = u32::MAX;

/// Literal: variable index shifted left, low bit = negated.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct Lit(u32);

impl Lit {
    #[inline]
    fn new(var: u32, neg: bool) -> Lit {
        Lit(var << 1 | neg as u32)
    }
    #[inline]
    fn from_dimacs(lit: i32) -> Lit {
        Lit::new(lit.unsigned_abs() - 1, lit < 0)
    }
    #[inline]
    fn var(self) -> u32 {
        self.0 >> 1
    }
    #[inline]
    fn negated(self) -> bool {
        self.0 & 1 == 1
    }
    #[inline]
    fn inverse(self) -> Lit {
        Lit(self.0 ^ 1)
    }
    #[inline]
    fn index(self) -> usize {
        self.0 as usize
    }
}

struct Clause {
    lits: Vec<Lit>,
    activity: f32,
    lbd: u32,
    learnt: bool,
}

#[derive(Clone, Copy)]
struct Watcher {
    clause: u32,
    blocker: Lit,
}

/// Max-activity variable heap (indexed binary heap, deterministic
/// tie-break on variable index).
#[derive(Default)]
struct VarOrder {
    heap: Vec<u32>,
    position: Vec<usize>, // usize::MAX = absent
}

impl VarOrder {
    fn new(nvars: usize) -> Self {
        VarOrder {
            heap: (0..nvars as u32).collect(),
            position: (0..nvars).collect(),
        }
    }

    #[inline]
    fn better(a: u32, b: u32, act: &[f64]) -> bool {
        let (aa, ab) = (act[a as usize], act[b as usize]);
        aa > ab || (aa == ab && a < b)
    }

    fn sift_up(&mut self, mut i: usize, act: &[f64]) {
        while i > 0 {
            let parent = (i - 1) / 2;
            if Self::better(self.heap[i], self.heap[parent], act) {
                self.heap.swap(i, parent);
                self.position[self.heap[i] as usize] = i;
                self.position[self.heap[parent] as usize] = parent;
                i = parent;
            } else {
                break;
            }
        }
    }

    fn sift_down(&mut self, mut i: usize, act: &[f64]) {
        loop {
            let l = 2 * i + 1;
            let r = 2 * i + 2;
            let mut best = i;
            if l < self.heap.len() && Self::better(self.heap[l], self.heap[best], act) {
                best = l;
            }
            if r < self.heap.len() && Self::better(self.heap[r], self.heap[best], act) {
                best = r;
            }
            if best == i {
                break;
            }
            self.heap.swap(i, best);
            self.position[self.heap[i] as usize] = i;
            self.position[self.heap[best] as usize] = best;
            i = best;
        }
    }

    fn pop(&mut self, act: &[f64]) -> Option<u32> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().expect("nonempty");
        self.position[top as usize] = usize::MAX;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.position[last as usize] = 0;
            self.sift_down(0, act);
        }
        Some(top)
    }

    fn insert(&mut self, var: u32, act: &[f64]) {
        if self.position[var as usize] != usize::MAX {
            return;
        }
        self.position[var as usize] = self.heap.len();
        self.heap.push(var);
        self.sift_up(self.heap.len() - 1, act);
    }

    fn bumped(&mut self, var: u32, act: &[f64]) {
        let pos = self.position[var as usize];
        if pos != usize::MAX {
            self.sift_up(pos, act);
        }
    }

    fn rescaled(&mut self, act: &[f64]) {
        // Activities were scaled uniformly; relative order is unchanged,
        // nothing to do. Kept for symmetry with bumped().
        let _ = act;
    }
}

/// The CDCL solver.
pub struct Solver {
    nvars: usize,
    clauses: Vec<Clause>,
    watches: Vec<Vec<Watcher>>,
    assigns: Vec<u8>,
    phase: Vec<bool>,
    level: Vec<u32>,
    reason: Vec<u32>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    cla_inc: f32,
    order: VarOrder,
    seen: Vec<bool>,
    stats: SolveStats,
    learnt_count: usize,
    unsat: bool,
}

impl Solver {
    /// A solver over `nvars` variables with no clauses yet.
    pub fn new(nvars: usize) -> Self {
        Solver {
            nvars,
            clauses: Vec::new(),
            watches: vec![Vec::new(); 2 * nvars],
            assigns: vec![VALUE_UNDEF; nvars],
            phase: vec![false; nvars],
            level: vec![0; nvars],
            reason: vec![NO_REASON; nvars],
            trail: Vec::with_capacity(nvars),
            trail_lim: Vec::new(),
            qhead: 0,
            activity: vec![0.0; nvars],
            var_inc: 1.0,
            cla_inc: 1.0,
            order: VarOrder::new(nvars),
            seen: vec![false; nvars],
            stats: SolveStats::default(),
            learnt_count: 0,
            unsat: false,
        }
    }

    #[inline]
    fn value(&self, lit: Lit) -> u8 {
        let v = self.assigns[lit.var() as usize];
        if v == VALUE_UNDEF {
            VALUE_UNDEF
        } else {
            v ^ lit.negated() as u8
        }
    }

    #[inline]
    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    /// Adds an original clause. Duplicate literals are removed and
    /// tautologies dropped; empty or immediately-contradicted clauses mark
    /// the solver unsatisfiable.
    pub fn add_clause<I: IntoIterator<Item = i32>>(&mut self, lits: I) {
        debug_assert_eq!(self.decision_level(), 0);
        if self.unsat {
            return;
        }
        let mut c: Vec<Lit> = lits.into_iter().map(Lit::from_dimacs).collect();
        c.sort_unstable_by_key(|l| l.0);
        c.dedup();
        for i in 1..c.len() {
            if c[i].var() == c[i - 1].var() {
                return; // tautology: v and !v
            }
        }
        // Strip literals already false at level 0; satisfied clauses drop.
        c.retain(|&l| self.value(l) != 0 || self.level[l.var() as usize] != 0);
        if c.iter().any(|&l| self.value(l) == 1 && self.level[l.var() as usize] == 0) {
            return;
        }
        match c.len() {
            0 => self.unsat = true,
            1 => {
                if self.value(c[0]) == 0 {
                    self.unsat = true;
                } else if self.value(c[0]) == VALUE_UNDEF {
                    self.enqueue(c[0], NO_REASON);
                }
            }
            _ => {
                self.attach(Clause {
                    lits: c,
                    activity: 0.0,
                    lbd: 0,
                    learnt: false,
                });
            }
        }
    }

    fn attach(&mut self, clause: Clause) -> u32 {
        let cref = self.clauses.len() as u32;
        let w0 = clause.lits[0];
        let w1 = clause.lits[1];
        self.watches[w0.index()].push(Watcher {
            clause: cref,
            blocker: w1,
        });
        self.watches[w1.index()].push(Watcher {
            clause: cref,
            blocker: w0,
        });
        if clause.learnt {
            self.learnt_count += 1;
        }
        self.clauses.push(clause);
        cref
    }

    #[inline]
    fn enqueue(&mut self, lit: Lit, reason: u32) {
        debug_assert_eq!(self.value(lit), VALUE_UNDEF);
        self.assigns[lit.var() as usize] = !lit.negated() as u8;
        self.level[lit.var() as usize] = self.decision_level();
        self.reason[lit.var() as usize] = reason;
        self.trail.push(lit);
    }

    /// Unit propagation; returns the conflicting clause if one arises.
    fn propagate(&mut self) -> Option<u32> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = p.inverse();
            let mut watchers = core::mem::take(&mut self.watches[false_lit.index()]);
            let mut i = 0;
            while i < watchers.len() {
                let w = watchers[i];
                if self.value(w.blocker) == 1 {
                    i += 1;
                    continue;
                }
                let cref = w.clause;
                // Make sure the false literal sits in slot 1.
                let (first, unit_or_conflict) = {
                    let clause = &mut self.clauses[cref as usize];
                    if clause.lits[0] == false_lit {
                        clause.lits.swap(0, 1);
                    }
                    debug_assert_eq!(clause.lits[1], false_lit);
                    let first = clause.lits[0];
                    if first != w.blocker && {
                        let v = self.assigns[first.var() as usize];
                        v != VALUE_UNDEF && v ^ first.negated() as u8 == 1
                    } {
                        // Satisfied via slot 0: refresh blocker and keep.
                        watchers[i].blocker = first;
                        i += 1;
                        continue;
                    }
                    // Hunt for a replacement watch.
                    let mut moved = false;
                    for k in 2..clause.lits.len() {
                        let cand = clause.lits[k];
                        let v = self.assigns[cand.var() as usize];
                        if v == VALUE_UNDEF || v ^ cand.negated() as u8 == 1 {
                            clause.lits.swap(1, k);
                            moved = true;
                            break;
                        }
                    }
                    if moved {
                        let new_watch = clause.lits[1];
                        self.watches[new_watch.index()].push(Watcher {
                            clause: cref,
                            blocker: first,
                        });
                        watchers.swap_remove(i);
                        continue;
                    }
                    (first, true)
                };
                debug_assert!(unit_or_conflict);
                match self.value(first) {
                    0 => {
                        // Conflict: restore remaining watchers and bail.
                        self.watches[false_lit.index()] = watchers;
                        self.qhead = self.trail.len();
                        return Some(cref);
                    }
                    VALUE_UNDEF => {
                        self.enqueue(first, cref);
                        i += 1;
                    }
                    _ => {
                        i += 1;
                    }
                }
            }
            self.watches[false_lit.index()] = watchers;
        }
        None
    }

    fn bump_var(&mut self, var: u32) {
        self.activity[var as usize] += self.var_inc;
        if self.activity[var as usize] > 1e100 {
            for a in &mut self.activity {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
            self.order.rescaled(&self.activity);
        }
        self.order.bumped(var, &self.activity);
    }

    fn bump_clause(&mut self, cref: u32) {
        let c = &mut self.clauses[cref as usize];
        c.activity += self.cla_inc;
        if c.activity > 1e20 {
            for cl in &mut self.clauses {
                cl.activity *= 1e-20;
            }
            self.cla_inc *= 1e-20;
        }
    }

    /// First-UIP conflict analysis. Returns the learned clause (asserting
    /// literal in slot 0) and the backjump level.
    fn analyze(&mut self, mut confl: u32) -> (Vec<Lit>, u32) {
        let mut learnt: Vec<Lit> = vec![LIT_UNDEF];
        let mut path = 0u32;
        let mut p = LIT_UNDEF;
        let mut index = self.trail.len();
        let mut to_clear: Vec<u32> = Vec::new();

        loop {
            if self.clauses[confl as usize].learnt {
                self.bump_clause(confl);
            }
            let start = if p == LIT_UNDEF { 0 } else { 1 };
            for j in start..self.clauses[confl as usize].lits.len() {
                let q = self.clauses[confl as usize].lits[j];
                let qv = q.var() as usize;
                if !self.seen[qv] && self.level[qv] > 0 {
                    self.seen[qv] = true;
                    to_clear.push(q.var());
                    self.bump_var(q.var());
                    if self.level[qv] >= self.decision_level() {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                index -= 1;
                if self.seen[self.trail[index].var() as usize] {
                    break;
                }
            }
            p = self.trail[index];
            self.seen[p.var() as usize] = false;
            path -= 1;
            if path == 0 {
                break;
            }
            confl = self.reason[p.var() as usize];
            debug_assert_ne!(confl, NO_REASON);
        }
        learnt[0] = p.inverse();

        // Cheap local minimization: a literal is redundant if its reason
        // clause is covered by the rest of the learned clause (or level 0).
        let mut keep = vec![true; learnt.len()];
        for (i, &l) in learnt.iter().enumerate().skip(1) {
            let r = self.reason[l.var() as usize];
            if r == NO_REASON {
                continue;
            }
            let redundant = self.clauses[r as usize].lits.iter().skip(1).all(|&q| {
                let qv = q.var() as usize;
                self.seen[qv] || self.level[qv] == 0
            });
            if redundant {
                keep[i] = false;
            }
        }
        let mut filtered = Vec::with_capacity(learnt.len());
        for (i, &l) in learnt.iter().enumerate() {
            if keep[i] {
                filtered.push(l);
            }
        }
        let mut learnt = filtered;

        for v in to_clear {
            self.seen[v as usize] = false;
        }

        // Backjump level: highest level among the non-asserting literals;
        // move one literal of that level into the watch slot 1.
        let backjump = if learnt.len() == 1 {
            0
        } else {
            let mut max_i = 1;
            for i in 2..learnt.len() {
                if self.level[learnt[i].var() as usize] > self.level[learnt[max_i].var() as usize]
                {
                    max_i = i;
                }
            }
            learnt.swap(1, max_i);
            self.level[learnt[1].var() as usize]
        };
        (learnt, backjump)
    }

    fn lbd(&self, lits: &[Lit]) -> u32 {
        let mut levels: Vec<u32> = lits.iter().map(|l| self.level[l.var() as usize]).collect();
        levels.sort_unstable();
        levels.dedup();
        levels.len() as u32
    }

    fn cancel_until(&mut self, target: u32) {
        if self.decision_level() <= target {
            return;
        }
        let limit = self.trail_lim[target as usize];
        for i in (limit..self.trail.len()).rev() {
            let lit = self.trail[i];
            let v = lit.var() as usize;
            self.phase[v] = self.assigns[v] == 1;
            self.assigns[v] = VALUE_UNDEF;
            self.reason[v] = NO_REASON;
            self.order.insert(lit.var(), &self.activity);
        }
        self.trail.truncate(limit);
        self.trail_lim.truncate(target as usize);
        self.qhead = limit;
    }

    /// Drops the least useful half of the deletable learned clauses
    /// (keeping binary, glue, and reason clauses), then rebuilds watches
    /// and reason indices.
    fn reduce_learnts(&mut self) {
        let mut candidates: Vec<u32> = (0..self.clauses.len() as u32)
            .filter(|&i| {
                let c = &self.clauses[i as usize];
                c.learnt && c.lits.len() > 2 && c.lbd > 2 && !self.is_reason(i)
            })
            .collect();
        // Worst first: high LBD, then low activity, then index for
        // determinism.
        candidates.sort_unstable_by(|&a, &b| {
            let (ca, cb) = (&self.clauses[a as usize], &self.clauses[b as usize]);
            cb.lbd
                .cmp(&ca.lbd)
                .then(ca.activity.partial_cmp(&cb.activity).unwrap_or(core::cmp::Ordering::Equal))
                .then(a.cmp(&b))
        });
        let drop_count = candidates.len() / 2;
        let mut dead = vec![false; self.clauses.len()];
        for &i in candidates.iter().take(drop_count) {
            dead[i as usize] = true;
        }

        let mut remap = vec![NO_REASON; self.clauses.len()];
        let mut kept: Vec<Clause> = Vec::with_capacity(self.clauses.len() - drop_count);
        for (i, clause) in core::mem::take(&mut self.clauses).into_iter().enumerate() {
            if !dead[i] {
                remap[i] = kept.len() as u32;
                kept.push(clause);
            }
        }
        self.clauses = kept;
        self.learnt_count -= drop_count;

        for r in &mut self.reason {
            if *r != NO_REASON {
                *r = remap[*r as usize];
                debug_assert_ne!(*r, NO_REASON);
            }
        }
        for list in &mut self.watches {
            list.clear();
        }
        for (i, clause) in self.clauses.iter().enumerate() {
            let (w0, w1) = (clause.lits[0], clause.lits[1]);
            self.watches[w0.index()].push(Watcher {
                clause: i as u32,
                blocker: w1,
            });
            self.watches[w1.index()].push(Watcher {
                clause: i as u32,
                blocker: w0,
            });
        }
    }

    fn is_reason(&self, cref: u32) -> bool {
        let first = self.clauses[cref as usize].lits[0];
        self.reason[first.var() as usize] == cref && self.value(first) == 1
    }

    fn decide(&mut self) -> bool {
        while let Some(var) = self.order.pop(&self.activity) {
            if self.assigns[var as usize] == VALUE_UNDEF {
                self.stats.decisions += 1;
                self.trail_lim.push(self.trail.len());
                self.enqueue(Lit::new(var, !self.phase[var as usize]), NO_REASON);
                return true;
            }
        }
        false
    }

    /// Runs the CDCL loop under the given budget.
    pub fn solve(&mut self, budget: &Budget) -> SatOutcome {
        if self.unsat {
            return self.outcome(Status::Unsat);
        }
        if self.propagate().is_some() {
            self.unsat = true;
            return self.outcome(Status::Unsat);
        }

        let restart_base = 100u64;
        let mut restart_number = 0u64;
        let mut conflicts_until_restart = luby(restart_number) * restart_base;
        let mut max_learnts = (self.clauses.len() / 3).max(4000);

        loop {
            if let Some(confl) = self.propagate() {
                self.stats.conflicts += 1;
                if self.decision_level() == 0 {
                    self.unsat = true;
                    return self.outcome(Status::Unsat);
                }
                let (learnt, backjump) = self.analyze(confl);
                self.cancel_until(backjump);
                if learnt.len() == 1 {
                    self.enqueue(learnt[0], NO_REASON);
                } else {
                    let lbd = self.lbd(&learnt);
                    let asserting = learnt[0];
                    let cref = self.attach(Clause {
                        lits: learnt,
                        activity: 0.0,
                        lbd,
                        learnt: true,
                    });
                    self.bump_clause(cref);
                    self.enqueue(asserting, cref);
                }
                self.var_inc /= 0.95;
                self.cla_inc /= 0.999;

                if let Some(max) = budget.max_conflicts {
                    if self.stats.conflicts >= max {
                        self.cancel_until(0);
                        return self.outcome(Status::Unknown);
                    }
                }
                if let Some(max) = budget.max_propagations {
                    if self.stats.propagations >= max {
                        self.cancel_until(0);
                        return self.outcome(Status::Unknown);
                    }
                }

                conflicts_until_restart = conflicts_until_restart.saturating_sub(1);
                if conflicts_until_restart == 0 {
                    restart_number += 1;
                    self.stats.restarts += 1;
                    conflicts_until_restart = luby(restart_number) * restart_base;
                    self.cancel_until(0);
                }
                if self.learnt_count > max_learnts {
                    self.reduce_learnts();
                    max_learnts = max_learnts + max_learnts / 10;
                }
            } else {
                if self.trail.len() == self.nvars {
                    let model: Vec<bool> = self.assigns.iter().map(|&v| v == 1).collect();
                    self.cancel_until(0);
                    self.stats.learned = self.learnt_count as u64;
                    return SatOutcome {
                        status: Status::Sat,
                        model: Some(model),
                        stats: self.stats,
                    };
                }
                if !self.decide() {
                    // Heap exhausted but trail incomplete: every remaining
                    // variable is assigned; treat as SAT.
                    let model: Vec<bool> = self.assigns.iter().map(|&v| v == 1).collect();
                    self.cancel_until(0);
                    return SatOutcome {
                        status: Status::Sat,
                        model: Some(model),
                        stats: self.stats,
                    };
                }
            }
        }
    }

    fn outcome(&self, status: Status) -> SatOutcome {
        let mut stats = self.stats;
        stats.learned = self.learnt_count as u64;
        SatOutcome {
            status,
            model: None,
            stats,
        }
    }
}

/// The Luby restart sequence 1,1,2,1,1,2,4,...
fn luby(mut i: u64) -> u64 {
    // Find the finite subsequence containing index i and its position.
    let mut size = 1u64;
    let mut seq = 0u32;
    while size < i + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != i {
        size = (size - 1) / 2;
        seq -= 1;
        i %= size;
    }
    1u64 << seq
}
