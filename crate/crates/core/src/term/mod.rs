//! Untyped λ-terms in de Bruijn form with named opaque constants.
//!
//! A term lives in a context of `n` free variables. The context behaves like
//! `n` binders wrapped around the term: context position `i` (its *level*,
//! counted from the left) is the free index `n - 1 - i` at depth zero, so the
//! last variable of a context is index `0`. Bound variables use ordinary
//! de Bruijn indices, innermost binder = 0.

pub(crate) mod combinators;
pub mod gen;
mod parse;
mod print;
mod reduce;

use std::fmt;
use std::sync::Arc;

use crate::error::Error;

pub use combinators::{combinator, combinator_names, Signature};
pub use parse::{parse, parse_in, ParseError};
pub use print::{print, print_closed};
pub use reduce::{
    beta_eq, beta_step, normalize, EqVerdict, NormalizeOutcome, Reducer, DEFAULT_FUEL,
};

/// A λ-term.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    App(Box<Term>, Box<Term>),
    Lam(Box<Term>),
    /// A named constant. With an unfolding it is a δ-redex in head position;
    /// without one it is an inert indeterminate.
    Const(Arc<str>, Option<Arc<Term>>),
}

impl Term {
    pub fn var(index: usize) -> Term {
        Term::Var(index)
    }

    /// The variable at `level` of a context of size `n`.
    pub fn ctx_var(n: usize, level: usize) -> Term {
        assert!(level < n, "level {level} outside context of size {n}");
        Term::Var(n - 1 - level)
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }

    /// Left-associated application `f a₀ a₁ …`.
    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    pub fn lam(body: Term) -> Term {
        Term::Lam(Box::new(body))
    }

    /// `k` nested abstractions around `body`.
    pub fn lams(k: usize, body: Term) -> Term {
        (0..k).fold(body, |b, _| Term::lam(b))
    }

    pub fn inert(name: &str) -> Term {
        Term::Const(Arc::from(name), None)
    }

    /// A constant with a closed unfolding.
    pub fn defined(name: &str, unfolding: Term) -> Result<Term, Error> {
        if !unfolding.is_closed() {
            return Err(Error::OpenUnfolding(name.to_string()));
        }
        Ok(Term::Const(Arc::from(name), Some(Arc::new(unfolding))))
    }

    /// Number of `App` and `Lam` nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const(..) => 0,
            Term::App(f, a) => 1 + f.size() + a.size(),
            Term::Lam(b) => 1 + b.size(),
        }
    }

    /// Total node count including leaves.
    pub fn node_count(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const(..) => 1,
            Term::App(f, a) => 1 + f.node_count() + a.node_count(),
            Term::Lam(b) => 1 + b.node_count(),
        }
    }

    /// Smallest context size in which the term is well-scoped.
    pub fn scope(&self) -> usize {
        fn go(t: &Term, depth: usize) -> usize {
            match t {
                Term::Var(k) => (k + 1).saturating_sub(depth),
                Term::App(f, a) => go(f, depth).max(go(a, depth)),
                Term::Lam(b) => go(b, depth + 1),
                Term::Const(..) => 0,
            }
        }
        go(self, 0)
    }

    pub fn is_closed(&self) -> bool {
        self.scope() == 0
    }

    pub fn is_scoped_in(&self, n: usize) -> bool {
        self.scope() <= n
    }

    /// Whether free index `k` (at depth zero) occurs.
    pub fn has_free(&self, k: usize) -> bool {
        match self {
            Term::Var(j) => *j == k,
            Term::App(f, a) => f.has_free(k) || a.has_free(k),
            Term::Lam(b) => b.has_free(k + 1),
            Term::Const(..) => false,
        }
    }

    pub fn has_constants(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(f, a) => f.has_constants() || a.has_constants(),
            Term::Lam(b) => b.has_constants(),
            Term::Const(..) => true,
        }
    }

    pub fn has_unfoldable(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(f, a) => f.has_unfoldable() || a.has_unfoldable(),
            Term::Lam(b) => b.has_unfoldable(),
            Term::Const(_, u) => u.is_some(),
        }
    }

    /// Names of all constants, in first-occurrence order.
    pub fn constant_names(&self) -> Vec<Arc<str>> {
        fn go(t: &Term, out: &mut Vec<Arc<str>>) {
            match t {
                Term::Var(_) => {}
                Term::App(f, a) => {
                    go(f, out);
                    go(a, out);
                }
                Term::Lam(b) => go(b, out),
                Term::Const(name, _) => {
                    if !out.contains(name) {
                        out.push(name.clone());
                    }
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }

    /// Adds `d` to every free index at or above `cutoff`.
    pub fn shifted(&self, d: usize, cutoff: usize) -> Term {
        if d == 0 {
            return self.clone();
        }
        match self {
            Term::Var(k) if *k >= cutoff => Term::Var(k + d),
            Term::Var(_) | Term::Const(..) => self.clone(),
            Term::App(f, a) => Term::app(f.shifted(d, cutoff), a.shifted(d, cutoff)),
            Term::Lam(b) => Term::lam(b.shifted(d, cutoff + 1)),
        }
    }

    /// Weakening: the same term read in a context with `d` extra variables
    /// appended on the right.
    pub fn weaken(&self, d: usize) -> Term {
        self.shifted(d, 0)
    }

    /// Replaces every constant that has an unfolding by that unfolding.
    pub fn unfold_all(&self) -> Term {
        match self {
            Term::Var(_) => self.clone(),
            Term::App(f, a) => Term::app(f.unfold_all(), a.unfold_all()),
            Term::Lam(b) => Term::lam(b.unfold_all()),
            Term::Const(_, Some(u)) => (**u).clone(),
            Term::Const(_, None) => self.clone(),
        }
    }

    /// Replaces constants by name; others are left alone.
    pub fn replace_constants(&self, f: &dyn Fn(&str) -> Option<Term>) -> Term {
        fn go(t: &Term, depth: usize, f: &dyn Fn(&str) -> Option<Term>) -> Term {
            match t {
                Term::Var(_) => t.clone(),
                Term::App(a, b) => Term::app(go(a, depth, f), go(b, depth, f)),
                Term::Lam(b) => Term::lam(go(b, depth + 1, f)),
                Term::Const(name, _) => match f(name) {
                    Some(r) => r.shifted(depth, 0),
                    None => t.clone(),
                },
            }
        }
        go(self, 0, f)
    }

    /// Spine decomposition `h a₁ … aₖ` → `(h, [a₁, …, aₖ])`.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut head = self;
        while let Term::App(f, a) = head {
            args.push(&**a);
            head = f;
        }
        args.reverse();
        (head, args)
    }
}

/// Simultaneous capture-free substitution.
///
/// `t` lives in a context of size `args.len()`; the variable at level `i` is
/// replaced by `args[i]`. All arguments live in one common context, so bound
/// variables of `t` are never captured.
pub fn subst(t: &Term, args: &[Term]) -> Result<Term, Error> {
    let n = args.len();
    if !t.is_scoped_in(n) {
        return Err(Error::ArityMismatch {
            expected: t.scope(),
            found: n,
        });
    }
    Ok(subst_unchecked(t, args))
}

pub(crate) fn subst_unchecked(t: &Term, args: &[Term]) -> Term {
    fn go(t: &Term, depth: usize, args: &[Term]) -> Term {
        match t {
            Term::Var(k) if *k < depth => t.clone(),
            Term::Var(k) => {
                let level = args.len() - 1 - (k - depth);
                args[level].shifted(depth, 0)
            }
            Term::App(f, a) => Term::app(go(f, depth, args), go(a, depth, args)),
            Term::Lam(b) => Term::lam(go(b, depth + 1, args)),
            Term::Const(..) => t.clone(),
        }
    }
    go(t, 0, args)
}

/// `body[arg/0]` for the body of an abstraction: index 0 is replaced, every
/// other free index drops by one.
pub(crate) fn instantiate(body: &Term, arg: &Term) -> Term {
    fn go(t: &Term, depth: usize, arg: &Term) -> Term {
        match t {
            Term::Var(k) if *k < depth => t.clone(),
            Term::Var(k) if *k == depth => arg.shifted(depth, 0),
            Term::Var(k) => Term::Var(k - 1),
            Term::App(f, a) => Term::app(go(f, depth, arg), go(a, depth, arg)),
            Term::Lam(b) => Term::lam(go(b, depth + 1, arg)),
            Term::Const(..) => t.clone(),
        }
    }
    go(body, 0, arg)
}

/// Lowers every free index at or above `cutoff` by one. Callers guarantee
/// index `cutoff` itself does not occur.
pub(crate) fn unshift(t: &Term, cutoff: usize) -> Term {
    match t {
        Term::Var(k) if *k > cutoff => Term::Var(k - 1),
        Term::Var(_) | Term::Const(..) => t.clone(),
        Term::App(f, a) => Term::app(unshift(f, cutoff), unshift(a, cutoff)),
        Term::Lam(b) => Term::lam(unshift(b, cutoff + 1)),
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(k) => write!(f, "{k}"),
            Term::App(a, b) => write!(f, "({a:?} {b:?})"),
            Term::Lam(b) => write!(f, "(λ {b:?})"),
            Term::Const(name, _) => write!(f, "#{name}"),
        }
    }
}

/// Prints with generated names for the free variables (`v0`, `v1`, …).
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.scope();
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        f.write_str(&print(self, &names))
    }
}
