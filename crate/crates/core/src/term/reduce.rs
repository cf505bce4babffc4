//! Normal-order reduction and fuel-bounded β-equality.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{instantiate, unshift, Term};

pub const DEFAULT_FUEL: usize = 10_000;

/// Terms larger than this (in nodes) are not reduced further.
const DEFAULT_MAX_NODES: usize = 50_000;

/// Reduction histories kept by [`Reducer::eq`] stop growing past this many
/// stored nodes per side.
const HISTORY_NODE_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EqVerdict {
    Equal,
    Distinct,
    Unknown { steps: usize },
}

impl EqVerdict {
    pub fn is_equal(self) -> bool {
        self == EqVerdict::Equal
    }

    pub fn is_distinct(self) -> bool {
        self == EqVerdict::Distinct
    }

    pub fn is_unknown(self) -> bool {
        matches!(self, EqVerdict::Unknown { .. })
    }

    /// Conjunction: Distinct dominates, then Unknown.
    pub fn and(self, other: EqVerdict) -> EqVerdict {
        use EqVerdict::*;
        match (self, other) {
            (Distinct, _) | (_, Distinct) => Distinct,
            (Unknown { steps: a }, Unknown { steps: b }) => Unknown { steps: a.max(b) },
            (u @ Unknown { .. }, Equal) | (Equal, u @ Unknown { .. }) => u,
            (Equal, Equal) => Equal,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalizeOutcome {
    NormalForm { term: Term, steps: usize },
    FuelExhausted { partial: Term, steps: usize },
}

impl NormalizeOutcome {
    pub fn term(&self) -> &Term {
        match self {
            NormalizeOutcome::NormalForm { term, .. } => term,
            NormalizeOutcome::FuelExhausted { partial, .. } => partial,
        }
    }

    pub fn into_term(self) -> Term {
        match self {
            NormalizeOutcome::NormalForm { term, .. } => term,
            NormalizeOutcome::FuelExhausted { partial, .. } => partial,
        }
    }

    pub fn steps(&self) -> usize {
        match self {
            NormalizeOutcome::NormalForm { steps, .. }
            | NormalizeOutcome::FuelExhausted { steps, .. } => *steps,
        }
    }

    pub fn normal_form(&self) -> Option<&Term> {
        match self {
            NormalizeOutcome::NormalForm { term, .. } => Some(term),
            NormalizeOutcome::FuelExhausted { .. } => None,
        }
    }
}

/// Reduction settings shared by every equality check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reducer {
    pub fuel: usize,
    pub eta: bool,
    pub max_nodes: usize,
}

impl Default for Reducer {
    fn default() -> Self {
        Reducer {
            fuel: DEFAULT_FUEL,
            eta: false,
            max_nodes: DEFAULT_MAX_NODES,
        }
    }
}

/// Contracts the leftmost-outermost redex in place. β-redexes and δ-redexes
/// (a defined constant applied to an argument) are found in normal order; an
/// η-redex, when enabled, is contracted at the abstraction that carries it.
fn step_in_place(t: &mut Term, eta: bool) -> bool {
    match t {
        Term::App(f, a) => {
            if let Term::Lam(body) = &**f {
                let next = instantiate(body, a);
                *t = next;
                return true;
            }
            if let Term::Const(_, Some(u)) = &**f {
                let unfolded = (**u).clone();
                **f = unfolded;
                return true;
            }
            step_in_place(f, eta) || step_in_place(a, eta)
        }
        Term::Lam(body) => {
            if eta {
                if let Term::App(g, x) = &**body {
                    if **x == Term::Var(0) && !g.has_free(0) {
                        let next = unshift(g, 0);
                        *t = next;
                        return true;
                    }
                }
            }
            step_in_place(body, eta)
        }
        Term::Var(_) | Term::Const(..) => false,
    }
}

struct Side {
    cur: Term,
    done: bool,
    stuck: bool,
    seen: HashSet<Term>,
    seen_nodes: usize,
}

impl Side {
    fn new(t: &Term) -> Side {
        let mut seen = HashSet::new();
        seen.insert(t.clone());
        Side {
            cur: t.clone(),
            done: false,
            stuck: false,
            seen,
            seen_nodes: t.node_count(),
        }
    }

    fn active(&self) -> bool {
        !self.done && !self.stuck
    }

    fn record(&mut self) {
        let n = self.cur.node_count();
        if self.seen_nodes + n <= HISTORY_NODE_BUDGET {
            self.seen_nodes += n;
            self.seen.insert(self.cur.clone());
        }
    }
}

impl Reducer {
    pub fn with_fuel(fuel: usize) -> Reducer {
        Reducer {
            fuel,
            ..Reducer::default()
        }
    }

    pub fn with_eta(self, eta: bool) -> Reducer {
        Reducer { eta, ..self }
    }

    /// One leftmost-outermost step, `None` when no β-, δ- (or η-) redex is
    /// left.
    pub fn step(&self, t: &Term) -> Option<Term> {
        let mut next = t.clone();
        step_in_place(&mut next, self.eta).then_some(next)
    }

    /// One step that also unfolds every remaining defined constant once the
    /// term has no redex: the strategy used for equality.
    fn full_step(&self, t: &mut Term) -> bool {
        if step_in_place(t, self.eta) {
            return true;
        }
        if t.has_unfoldable() {
            *t = t.unfold_all();
            return true;
        }
        false
    }

    fn run(&self, t: &Term, full: bool) -> NormalizeOutcome {
        let mut cur = t.clone();
        let mut steps = 0;
        while steps < self.fuel {
            let progressed = if full {
                self.full_step(&mut cur)
            } else {
                step_in_place(&mut cur, self.eta)
            };
            if !progressed {
                return NormalizeOutcome::NormalForm { term: cur, steps };
            }
            steps += 1;
            if cur.node_count() > self.max_nodes {
                return NormalizeOutcome::FuelExhausted {
                    partial: cur,
                    steps,
                };
            }
        }
        let normal = if full {
            !self.full_step(&mut cur.clone())
        } else {
            self.step(&cur).is_none()
        };
        if normal {
            NormalizeOutcome::NormalForm { term: cur, steps }
        } else {
            NormalizeOutcome::FuelExhausted {
                partial: cur,
                steps,
            }
        }
    }

    /// Normal-order reduction with lazy δ: defined constants outside head
    /// position are left folded.
    pub fn normalize(&self, t: &Term) -> NormalizeOutcome {
        self.run(t, false)
    }

    /// Like [`Reducer::normalize`] but ends with no defined constant left.
    pub fn normalize_full(&self, t: &Term) -> NormalizeOutcome {
        self.run(t, true)
    }

    /// Fuel-bounded β(δ)-equality with the number of steps spent.
    ///
    /// Both sides are reduced in alternation from one shared budget. The
    /// sides are Equal as soon as one reaches a term already visited by the
    /// other (a common reduct), Distinct when both reach distinct full normal
    /// forms, and Unknown when the budget runs out first.
    pub fn eq_counted(&self, t: &Term, u: &Term) -> (EqVerdict, usize) {
        if t == u {
            return (EqVerdict::Equal, 0);
        }
        let mut sides = [Side::new(t), Side::new(u)];
        let mut steps = 0;
        let mut turn = 0;
        loop {
            if sides[0].done && sides[1].done {
                return (EqVerdict::Distinct, steps);
            }
            if steps >= self.fuel || !(sides[0].active() || sides[1].active()) {
                return (EqVerdict::Unknown { steps }, steps);
            }
            if !sides[turn].active() {
                turn = 1 - turn;
            }
            let i = turn;
            turn = 1 - turn;
            let side = &mut sides[i];
            if !self.full_step(&mut side.cur) {
                side.done = true;
                continue;
            }
            steps += 1;
            if side.cur.node_count() > self.max_nodes {
                side.stuck = true;
                continue;
            }
            let (mine, other) = if i == 0 {
                let (a, b) = sides.split_at_mut(1);
                (&mut a[0], &b[0])
            } else {
                let (a, b) = sides.split_at_mut(1);
                (&mut b[0], &a[0])
            };
            if other.seen.contains(&mine.cur) || mine.cur == other.cur {
                return (EqVerdict::Equal, steps);
            }
            mine.record();
        }
    }

    pub fn eq(&self, t: &Term, u: &Term) -> EqVerdict {
        self.eq_counted(t, u).0
    }
}

/// One normal-order step (β, then δ in head position), no η.
pub fn beta_step(t: &Term) -> Option<Term> {
    Reducer::default().step(t)
}

pub fn normalize(t: &Term, fuel: usize) -> NormalizeOutcome {
    Reducer::with_fuel(fuel).normalize(t)
}

pub fn beta_eq(t: &Term, u: &Term, fuel: usize) -> EqVerdict {
    Reducer::with_fuel(fuel).eq(t, u)
}
