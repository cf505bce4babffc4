use std::collections::BTreeMap;
use std::sync::Arc;

use super::Term;
use crate::error::Error;

fn v(k: usize) -> Term {
    Term::var(k)
}

/// `λz₁ … zₙ₊₁. z₁ z₂ … zₙ₊₁`, the closed form of `n`-fold iterated
/// application. `app_0 = I`, `app_1 = 𝟙 = λxy.xy`.
pub(crate) fn iterated_app(n: usize) -> Term {
    let body = Term::apps(v(n), (0..n).rev().map(v));
    Term::lams(n + 1, body)
}

pub(crate) fn identity() -> Term {
    Term::lam(v(0))
}

pub(crate) fn church_true() -> Term {
    Term::lams(2, v(1))
}

pub(crate) fn church_false() -> Term {
    Term::lams(2, v(0))
}

/// `λabx. x a b`
pub(crate) fn pair() -> Term {
    Term::lams(3, Term::apps(v(0), [v(2), v(1)]))
}

/// `λx. x T`
pub(crate) fn first() -> Term {
    Term::lam(Term::app(v(0), church_true()))
}

/// `λx. x F`
pub(crate) fn second() -> Term {
    Term::lam(Term::app(v(0), church_false()))
}

/// Turing's `Θ = A A` with `A = λxy. y (x x y)`.
pub(crate) fn theta() -> Term {
    let a = Term::lams(2, Term::app(v(0), Term::apps(v(1), [v(1), v(0)])));
    Term::app(a.clone(), a)
}

fn omega() -> Term {
    let w = Term::lam(Term::app(v(0), v(0)));
    Term::app(w.clone(), w)
}

/// `λxyz. x z (y z)`
fn s_combinator() -> Term {
    Term::lams(3, Term::apps(v(2), [v(0), Term::app(v(1), v(0))]))
}

/// `λxyz. x (y z)`
fn b_combinator() -> Term {
    Term::lams(3, Term::app(v(2), Term::app(v(1), v(0))))
}

/// `λxyz. x z y`
fn c_combinator() -> Term {
    Term::lams(3, Term::apps(v(2), [v(0), v(1)]))
}

const FIXED: &[&str] = &[
    "I", "K", "S", "B", "C", "T", "F", "app", "one", "p", "q", "pair", "Theta", "Omega",
];

/// The fixed combinator table.
///
/// Besides the names listed by [`combinator_names`], `app_N` and `one_N` for
/// any `N` give `λz₁ … z_{N+1}. z₁ … z_{N+1}`.
pub fn combinator(name: &str) -> Result<Term, Error> {
    let t = match name {
        "I" => identity(),
        "K" | "T" => church_true(),
        "F" => church_false(),
        "S" => s_combinator(),
        "B" => b_combinator(),
        "C" => c_combinator(),
        "app" | "one" => iterated_app(1),
        "p" => first(),
        "q" => second(),
        "pair" => pair(),
        "Theta" => theta(),
        "Omega" => omega(),
        _ => {
            let n = name
                .strip_prefix("app_")
                .or_else(|| name.strip_prefix("one_"))
                .and_then(|digits| digits.parse::<usize>().ok())
                .ok_or_else(|| Error::UnknownCombinator(name.to_string()))?;
            iterated_app(n)
        }
    };
    Ok(t)
}

pub fn combinator_names() -> &'static [&'static str] {
    FIXED
}

/// Constant names visible to the parser, with their unfoldings.
///
/// `#name` resolves to the signature entry if present, then to the
/// combinator table (when enabled), and otherwise to an inert constant.
#[derive(Clone, Debug, Default)]
pub struct Signature {
    entries: BTreeMap<String, Option<Arc<Term>>>,
    combinators: bool,
}

impl Signature {
    /// Only the combinator table.
    pub fn standard() -> Signature {
        Signature {
            entries: BTreeMap::new(),
            combinators: true,
        }
    }

    /// No combinators: every `#name` not declared is inert.
    pub fn empty() -> Signature {
        Signature::default()
    }

    pub fn with(mut self, name: &str, unfolding: Option<Term>) -> Result<Signature, Error> {
        self.declare(name, unfolding)?;
        Ok(self)
    }

    pub fn declare(&mut self, name: &str, unfolding: Option<Term>) -> Result<(), Error> {
        if let Some(u) = &unfolding {
            if !u.is_closed() {
                return Err(Error::OpenUnfolding(name.to_string()));
            }
        }
        self.entries.insert(name.to_string(), unfolding.map(Arc::new));
        Ok(())
    }

    pub fn resolve(&self, name: &str) -> Term {
        if let Some(u) = self.entries.get(name) {
            return Term::Const(Arc::from(name), u.clone());
        }
        if self.combinators {
            if let Ok(t) = combinator(name) {
                return Term::Const(Arc::from(name), Some(Arc::new(t)));
            }
        }
        Term::inert(name)
    }
}
