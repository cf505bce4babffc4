//! Seeded random terms for the property suites.

use rand::Rng;

use super::Term;

/// Upper bound on App/Lam nodes for generated terms.
pub const MAX_RANDOM_SIZE: usize = 25;

#[derive(Debug, Clone)]
pub struct TermGen {
    pub max_size: usize,
    /// Leaves drawn from here besides variables.
    pub constants: Vec<Term>,
    /// Probability of picking a constant over a variable at a leaf.
    pub constant_weight: f64,
    /// Use every variable, bound or free, at most once. Affine terms are
    /// strongly normalizing and stay so under application.
    pub affine: bool,
}

impl Default for TermGen {
    fn default() -> Self {
        TermGen {
            max_size: MAX_RANDOM_SIZE,
            constants: Vec::new(),
            constant_weight: 0.2,
            affine: false,
        }
    }
}

struct Draw<'a, R> {
    gen: &'a TermGen,
    rng: &'a mut R,
    /// Availability by de Bruijn level.
    avail: Vec<bool>,
}

impl<R: Rng> Draw<'_, R> {
    fn leaf(&mut self, heads_only: bool) -> Option<Term> {
        let consts: Vec<&Term> = self
            .gen
            .constants
            .iter()
            .filter(|c| !heads_only || matches!(c, Term::Const(_, None)))
            .collect();
        let levels: Vec<usize> = (0..self.avail.len()).filter(|&l| self.avail[l]).collect();
        let use_const = !consts.is_empty() && (levels.is_empty() || self.rng.gen_bool(self.gen.constant_weight));
        if use_const {
            return Some(consts[self.rng.gen_range(0..consts.len())].clone());
        }
        if levels.is_empty() {
            return None;
        }
        let level = levels[self.rng.gen_range(0..levels.len())];
        if self.gen.affine {
            self.avail[level] = false;
        }
        Some(Term::Var(self.avail.len() - 1 - level))
    }

    fn under_binder(&mut self, f: impl FnOnce(&mut Self) -> Term) -> Term {
        self.avail.push(true);
        let body = f(self);
        self.avail.pop();
        Term::lam(body)
    }

    fn any(&mut self, size: usize) -> Term {
        if size == 0 {
            return self.leaf(false).unwrap_or_else(|| Term::lam(Term::Var(0)));
        }
        if self.rng.gen_bool(0.45) {
            self.under_binder(|d| d.any(size - 1))
        } else {
            let left = self.rng.gen_range(0..size);
            let f = self.any(left);
            let a = self.any(size - 1 - left);
            Term::app(f, a)
        }
    }

    fn normal(&mut self, size: usize) -> Term {
        if size == 0 {
            return self.leaf(false).unwrap_or_else(|| Term::lam(Term::Var(0)));
        }
        if self.rng.gen_bool(0.5) {
            return self.under_binder(|d| d.normal(size - 1));
        }
        match self.neutral(size) {
            Some(t) => t,
            None => self.under_binder(|d| d.normal(size - 1)),
        }
    }

    /// `h a₁ … aₖ` with an inert head, all arguments normal. The head is
    /// drawn first, so a failure consumes no variable.
    fn neutral(&mut self, size: usize) -> Option<Term> {
        if size == 0 {
            return self.leaf(true);
        }
        let left = self.rng.gen_range(0..size);
        let head = self.neutral(left)?;
        let arg = self.normal(size - 1 - left);
        Some(Term::app(head, arg))
    }
}

impl TermGen {
    pub fn sized(max_size: usize) -> TermGen {
        TermGen {
            max_size,
            ..TermGen::default()
        }
    }

    /// Affine terms of at most `max_size` nodes.
    pub fn affine(max_size: usize) -> TermGen {
        TermGen {
            max_size,
            affine: true,
            ..TermGen::default()
        }
    }

    pub fn with_constants(mut self, constants: Vec<Term>) -> TermGen {
        self.constants = constants;
        self
    }

    fn draw<'a, R: Rng>(&'a self, rng: &'a mut R, ctx: usize) -> Draw<'a, R> {
        Draw {
            gen: self,
            rng,
            avail: vec![true; ctx],
        }
    }

    /// A term in context `ctx` with at most `max_size` App/Lam nodes.
    pub fn term(&self, rng: &mut impl Rng, ctx: usize) -> Term {
        let size = rng.gen_range(0..=self.max_size);
        self.draw(rng, ctx).any(size)
    }

    /// A β-normal term (no defined constant in head position either).
    pub fn normal_term(&self, rng: &mut impl Rng, ctx: usize) -> Term {
        let size = rng.gen_range(0..=self.max_size);
        self.draw(rng, ctx).normal(size)
    }

    /// A normal term of the form `λ…λ. body` with `k` leading binders.
    pub fn abstraction(&self, rng: &mut impl Rng, ctx: usize, k: usize) -> Term {
        let size = rng.gen_range(0..=self.max_size.saturating_sub(k));
        let mut d = self.draw(rng, ctx + k);
        Term::lams(k, d.normal(size))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suite_rng;

    #[test]
    fn generated_terms_are_scoped_and_bounded() {
        let gen = TermGen::default().with_constants(vec![Term::inert("c")]);
        let mut rng = suite_rng(7);
        for ctx in 0..4 {
            for _ in 0..200 {
                let t = gen.term(&mut rng, ctx);
                assert!(t.is_scoped_in(ctx));
                assert!(t.size() <= MAX_RANDOM_SIZE + 1);
                let n = gen.normal_term(&mut rng, ctx);
                assert!(n.is_scoped_in(ctx));
                assert!(crate::term::beta_step(&n).is_none(), "{n:?}");
            }
        }
    }

    #[test]
    fn affine_terms_use_variables_once() {
        fn uses(t: &Term, depth: usize, counts: &mut Vec<usize>, ctx: usize) {
            match t {
                Term::Var(k) if *k >= depth => counts[ctx - 1 - (k - depth)] += 1,
                Term::Var(_) | Term::Const(..) => {}
                Term::App(a, b) => {
                    uses(a, depth, counts, ctx);
                    uses(b, depth, counts, ctx);
                }
                Term::Lam(b) => {
                    let mut inner = vec![0];
                    uses_bound(b, &mut inner);
                    assert!(inner[0] <= 1);
                    uses(b, depth + 1, counts, ctx);
                }
            }
        }
        fn uses_bound(t: &Term, out: &mut Vec<usize>) {
            fn go(t: &Term, depth: usize, out: &mut Vec<usize>) {
                match t {
                    Term::Var(k) if *k == depth => out[0] += 1,
                    Term::App(a, b) => {
                        go(a, depth, out);
                        go(b, depth, out);
                    }
                    Term::Lam(b) => go(b, depth + 1, out),
                    _ => {}
                }
            }
            go(t, 0, out)
        }
        let gen = TermGen::affine(20);
        let mut rng = suite_rng(8);
        for _ in 0..300 {
            let t = gen.normal_term(&mut rng, 3);
            let mut counts = vec![0; 3];
            uses(&t, 0, &mut counts, 3);
            assert!(counts.iter().all(|&c| c <= 1), "{t:?}");
            assert!(crate::term::beta_step(&t).is_none());
        }
    }

    #[test]
    fn generation_is_reproducible() {
        let gen = TermGen::default();
        let a: Vec<Term> = (0..20).map(|_| ()).scan(suite_rng(3), |r, _| Some(gen.term(r, 2))).collect();
        let b: Vec<Term> = (0..20).map(|_| ()).scan(suite_rng(3), |r, _| Some(gen.term(r, 2))).collect();
        assert_eq!(a, b);
    }
}
