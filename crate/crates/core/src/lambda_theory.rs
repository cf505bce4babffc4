//! Semi-closed structure, the initial λ-theory and its extensions, the
//! interpreter of λ-syntax, and theory-map checks.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::clone::{extension_theory, finite_endo_theory, Elem, FinMap, SyntacticTheory, Theory};
use crate::error::Error;
use crate::report::{Certificate, CheckRecord, Family};
use crate::term::gen::TermGen;
use crate::term::{print, subst, EqVerdict, Term};
use crate::SuiteRng;

/// A theory with a natural retraction `ρ: L(n) → L(n+1)` and section
/// `λ: L(n+1) → L(n)`.
pub trait LambdaTheory: Theory {
    fn rho(&self, s: &Elem<Self>) -> Result<Elem<Self>, Error>;

    fn lam(&self, s: &Elem<Self>) -> Result<Elem<Self>, Error>;

    /// Interpretation of a closed constant of the object language. Theories
    /// without an alphabet only know the abbreviations, via their unfolding.
    fn constant(&self, c: &Term) -> Result<Elem<Self>, Error> {
        match c {
            Term::Const(_, Some(u)) => interpret(u, 0, self),
            Term::Const(name, None) => Err(Error::UnknownConstant(name.to_string())),
            _ => Err(Error::UnknownConstant(format!("{c:?}"))),
        }
    }

    /// `app = ρ(id) ∈ L(2)`.
    fn app(&self) -> Elem<Self> {
        self.app_n(1)
    }

    /// `𝟙 = λλ app ∈ L(0)`.
    fn one(&self) -> Elem<Self> {
        self.one_n(1)
    }

    /// `app_n = ρⁿ(id) ∈ L(n+1)`.
    fn app_n(&self, n: usize) -> Elem<Self> {
        let mut e = self.proj(1, 0).expect("identity");
        for _ in 0..n {
            e = self.rho(&e).expect("rho on own element");
        }
        e
    }

    /// `𝟙_n = λⁿ⁺¹ app_n ∈ L(0)`.
    fn one_n(&self, n: usize) -> Elem<Self> {
        self.lam_times(&self.app_n(n), n + 1).expect("arity n+1")
    }

    fn lam_times(&self, s: &Elem<Self>, k: usize) -> Result<Elem<Self>, Error> {
        let mut e = s.clone();
        for _ in 0..k {
            e = self.lam(&e)?;
        }
        Ok(e)
    }

    /// `app(a, b)`.
    fn apply(&self, a: &Elem<Self>, b: &Elem<Self>) -> Result<Elem<Self>, Error> {
        self.compose(&self.app(), &[a.clone(), b.clone()])
    }

    /// Context extension along `n ↪ n+k`.
    fn weaken(&self, e: &Elem<Self>, k: usize) -> Result<Elem<Self>, Error> {
        self.rename(e, &FinMap::inclusion(e.arity(), e.arity() + k))
    }
}

impl LambdaTheory for SyntacticTheory {
    fn rho(&self, s: &Elem<Self>) -> Result<Elem<Self>, Error> {
        self.check(s)?;
        let t = Term::app(s.payload().weaken(1), Term::Var(0));
        self.element(s.arity() + 1, t)
    }

    fn lam(&self, s: &Elem<Self>) -> Result<Elem<Self>, Error> {
        self.check(s)?;
        if s.arity() == 0 {
            return Err(Error::NoAbstraction);
        }
        self.element(s.arity() - 1, Term::lam(s.payload().clone()))
    }

    fn constant(&self, c: &Term) -> Result<Elem<Self>, Error> {
        self.element(0, c.clone())
    }
}

/// `Λ`: pure terms modulo β.
pub fn initial_lambda_theory() -> SyntacticTheory {
    SyntacticTheory::lambda()
}

/// `Λ_A`, the theory of extensions of `Λ` by the generators of `A`.
pub fn lambda_extension_theory(algebra: &Algebra) -> Result<SyntacticTheory, Error> {
    extension_theory(&initial_lambda_theory(), algebra)
}

/// A raw λ-term in a context of length `context`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SyntaxTerm {
    context: usize,
    term: Term,
}

impl SyntaxTerm {
    pub fn new(context: usize, term: Term) -> Result<SyntaxTerm, Error> {
        if !term.is_scoped_in(context) {
            return Err(Error::ArityMismatch {
                expected: context,
                found: term.scope(),
            });
        }
        Ok(SyntaxTerm { context, term })
    }

    pub fn context(&self) -> usize {
        self.context
    }

    pub fn term(&self) -> &Term {
        &self.term
    }
}

/// `⟦xᵢ⟧ = prᵢ`, `⟦tu⟧ = app(⟦t⟧, ⟦u⟧)`, `⟦λz.r⟧ = λ⟦r⟧`; constants through
/// [`LambdaTheory::constant`], weakened into the context.
pub fn interpret<L: LambdaTheory + ?Sized>(t: &Term, context: usize, theory: &L) -> Result<Elem<L>, Error> {
    match t {
        Term::Var(k) if *k < context => theory.proj(context, context - 1 - k),
        Term::Var(k) => Err(Error::IndexOutOfRange {
            index: *k,
            arity: context,
        }),
        Term::App(f, a) => {
            let (f, a) = (interpret(f, context, theory)?, interpret(a, context, theory)?);
            theory.compose(&theory.app(), &[f, a])
        }
        Term::Lam(body) => theory.lam(&interpret(body, context + 1, theory)?),
        Term::Const(..) => {
            let c = theory.constant(t)?;
            theory.weaken(&c, context)
        }
    }
}

pub fn interpret_syntax<L: LambdaTheory + ?Sized>(t: &SyntaxTerm, theory: &L) -> Result<Elem<L>, Error> {
    interpret(&t.term, t.context, theory)
}

fn ctx_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{}", i + 1)).collect()
}

type Side<P> = Result<(crate::clone::TheoryElement<P>, crate::clone::TheoryElement<P>), Error>;

fn judge<L: Theory + ?Sized>(theory: &L, fam: &mut Family, sides: Side<L::Payload>, shown: impl FnOnce() -> Vec<String>) {
    match sides {
        Ok((l, r)) => {
            let (v, steps) = theory.element_eq(&l, &r);
            fam.record(v, steps, || {
                let mut s = shown();
                s.push(theory.show(&l));
                s.push(theory.show(&r));
                s
            });
        }
        Err(e) => fam.record(e.verdict(), 0, || {
            let mut s = shown();
            s.push(format!("error: {e}"));
            s
        }),
    }
}

/// The abstraction `ŝ = λⁿs ∈ L(0)` and `app_n(ŝ, z₁, …, zₙ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Recovery<P> {
    pub hat: crate::clone::TheoryElement<P>,
    pub reconstruction: crate::clone::TheoryElement<P>,
    /// `reconstruction = s`
    pub recovered: EqVerdict,
    /// `𝟙ₙ ŝ = ŝ`
    pub fixed: EqVerdict,
}

pub fn abstraction_recover<L: LambdaTheory + ?Sized>(theory: &L, s: &Elem<L>) -> Result<Recovery<L::Payload>, Error> {
    let n = s.arity();
    let hat = theory.lam_times(s, n)?;
    let mut args = vec![theory.weaken(&hat, n)?];
    args.extend(theory.projections(n));
    let reconstruction = theory.compose(&theory.app_n(n), &args)?;
    let recovered = theory.element_eq(&reconstruction, s).0;
    let one_hat = theory.apply(&theory.one_n(n), &hat)?;
    let fixed = theory.element_eq(&one_hat, &hat).0;
    Ok(Recovery {
        hat,
        reconstruction,
        recovered,
        fixed,
    })
}

/// Appends a fresh last variable to a map `n → m`.
fn extend_map(f: &FinMap) -> FinMap {
    let mut images = f.images().to_vec();
    images.push(f.target());
    FinMap::new(f.target() + 1, images).expect("in range")
}

/// Retraction, the `𝟙`-characterization of `λ`, naturality and
/// compatibility with composition, and the abstraction identity, on
/// `samples` random instances per law with arities up to `max_arity`.
pub fn check_lambda_laws<L: LambdaTheory>(theory: &L, max_arity: usize, samples: usize, rng: &mut SuiteRng) -> Certificate {
    let id = theory.id().to_string();
    let fam = |law: &str, text: &str| Family::new(format!("{id}.{law}"), text);
    let mut retraction = fam("retraction", "ρ(λs) = s");
    let mut one_fix = fam("lam.fixed", "𝟙(λs) = λs");
    let mut unique = fam("lam.unique", "x with ρx = s and 𝟙x = x equals λs");
    let mut rho_nat = fam("rho.natural", "ρ(rename(s, f)) = rename(ρs, f+1)");
    let mut rho_comp = fam("rho.compose", "ρ(t(a⃗)) = (ρt)(a⃗ weakened, z)");
    let mut lam_comp = fam("lam.compose", "λ(s(a⃗ weakened, z)) = (λs)(a⃗)");
    let mut recover = fam("abstraction", "s = app_n(λⁿs, z₁ … zₙ)");
    let mut recover_fix = fam("abstraction.fixed", "𝟙ₙ(λⁿs) = λⁿs");

    for _ in 0..samples {
        let n = rng.gen_range(0..=max_arity);
        let s = theory.sample(rng, n + 1);
        let show_s = || vec![theory.show(&s)];

        let lam_s = theory.lam(&s);
        judge(theory, &mut retraction, lam_s.clone().and_then(|l| Ok((theory.rho(&l)?, s.clone()))), show_s);
        let one = theory.weaken(&theory.one(), n);
        let fixed = lam_s
            .clone()
            .and_then(|l| Ok((theory.compose(&theory.app(), &[one.clone()?, l.clone()])?, l)));
        judge(theory, &mut one_fix, fixed, show_s);
        // a second candidate: 𝟙 applied to λs
        let cand = lam_s
            .clone()
            .and_then(|l| theory.compose(&theory.app(), &[one.clone()?, l]));
        if let Ok(c) = &cand {
            let conditions = theory
                .rho(c)
                .map(|r| theory.element_eq(&r, &s).0)
                .unwrap_or(EqVerdict::Distinct);
            if conditions.is_equal() {
                judge(theory, &mut unique, lam_s.clone().map(|l| (c.clone(), l)), show_s);
            }
        }

        // naturality of ρ in n: rename along a random f: n → m
        let m = rng.gen_range(0..=max_arity);
        let t = theory.sample(rng, n);
        if let Some(f) = FinMap::random(rng, n, m) {
            let sides = theory
                .rename(&t, &f)
                .and_then(|r| theory.rho(&r))
                .and_then(|l| Ok((l, theory.rename(&theory.rho(&t)?, &extend_map(&f))?)));
            judge(theory, &mut rho_nat, sides, || vec![theory.show(&t), format!("{:?}", f.images())]);
        }

        // compatibility with the action
        let args: Vec<_> = (0..n).map(|_| theory.sample(rng, m)).collect();
        let mut weak = args
            .iter()
            .map(|a| theory.weaken(a, 1))
            .collect::<Result<Vec<_>, _>>()
            .expect("weakening");
        weak.push(theory.proj(m + 1, m).expect("last"));
        let sides = (|| {
            let lhs = if n == 0 {
                theory.rho(&theory.weaken(&t, m)?)?
            } else {
                theory.rho(&theory.compose(&t, &args)?)?
            };
            let rhs = theory.compose(&theory.rho(&t)?, &weak)?;
            Ok((lhs, rhs))
        })();
        judge(theory, &mut rho_comp, sides, || {
            let mut v = vec![theory.show(&t)];
            v.extend(args.iter().map(|a| theory.show(a)));
            v
        });
        let sides = (|| {
            let lhs = theory.lam(&theory.compose(&s, &weak)?)?;
            let rhs = if n == 0 {
                theory.weaken(&theory.lam(&s)?, m)?
            } else {
                theory.compose(&theory.lam(&s)?, &args)?
            };
            Ok((lhs, rhs))
        })();
        judge(theory, &mut lam_comp, sides, show_s);

        let k = rng.gen_range(0..=max_arity);
        let u = theory.sample(rng, k);
        match abstraction_recover(theory, &u) {
            Ok(r) => {
                recover.record(r.recovered, 0, || vec![theory.show(&u)]);
                recover_fix.record(r.fixed, 0, || vec![theory.show(&u)]);
            }
            Err(e) => recover.record(e.verdict(), 0, || vec![e.to_string()]),
        }
    }
    Certificate::new(
        format!("{id} λ-laws"),
        [retraction, one_fix, unique, rho_nat, rho_comp, lam_comp, recover, recover_fix]
            .into_iter()
            .filter(|f| f.tally().total() > 0)
            .map(Family::finish)
            .collect(),
    )
}

/// A random redex `(λz.s)u` in context `n` with its contractum `s[u/z]`.
pub fn random_redex(gen: &TermGen, rng: &mut SuiteRng, n: usize) -> (Term, Term) {
    let s = gen.term(rng, n + 1);
    let u = gen.term(rng, n);
    let mut args: Vec<Term> = (0..n).map(|i| Term::ctx_var(n, i)).collect();
    args.push(u.clone());
    let contractum = subst(&s, &args).expect("scoped");
    (Term::app(Term::lam(s), u), contractum)
}

/// `⟦(λz.s)u⟧ = ⟦s[u/z]⟧` on random redexes, and in `Λ`-like theories
/// `⟦t⟧ = [t]`.
pub fn check_interpreter<L: LambdaTheory>(
    theory: &L,
    samples: usize,
    gen: &TermGen,
    rng: &mut SuiteRng,
    raw: Option<&dyn Fn(&Term, usize) -> Elem<L>>,
) -> Certificate {
    let id = theory.id();
    let mut sound = Family::new(format!("{id}.interpret.beta"), "⟦(λz.s)u⟧ = ⟦s[u/z]⟧");
    let mut initial = Family::new(format!("{id}.interpret.initial"), "⟦t⟧ = [t]");
    for _ in 0..samples {
        let n = rng.gen_range(0..=3);
        let (redex, contractum) = random_redex(gen, rng, n);
        let names = ctx_names(n);
        let shown = || vec![print(&redex, &names)];
        let sides = interpret(&redex, n, theory).and_then(|l| Ok((l, interpret(&contractum, n, theory)?)));
        judge(theory, &mut sound, sides, shown);
        if let Some(raw) = raw {
            let sides = interpret(&redex, n, theory).map(|l| (l, raw(&redex, n)));
            judge(theory, &mut initial, sides, shown);
        }
    }
    let mut records = vec![sound.finish()];
    if raw.is_some() {
        records.push(initial.finish());
    }
    Certificate::new(format!("{id} interpreter"), records)
}

/// A map of λ-theories given on representatives.
pub type ElementMap<'a, S, T> = dyn Fn(&Elem<S>) -> Result<Elem<T>, Error> + Sync + 'a;

/// Checks that `f` is a clone map preserving `app` and `𝟙`, then checks the
/// conclusion: `f` commutes with `ρ`, `λ` and the interpretation of pure
/// terms.
pub fn check_theory_map<S: LambdaTheory, T: LambdaTheory>(
    label: &str,
    f: &ElementMap<'_, S, T>,
    source: &S,
    target: &T,
    samples: usize,
    rng: &mut SuiteRng,
) -> Certificate {
    let fam = |law: &str, text: &str| Family::new(format!("map.{label}.{law}"), text);
    let mut app = fam("app", "F(app) = app");
    let mut one = fam("one", "F(𝟙) = 𝟙");
    let mut proj = fam("proj", "F(prᵢ) = prᵢ");
    let mut comp = fam("compose", "F(t(a⃗)) = F(t)(F a⃗)");
    let mut rho = fam("rho", "F(ρs) = ρ(Fs)");
    let mut lam = fam("lam", "F(λs) = λ(Fs)");
    let mut interp = fam("interpretation", "F⟦t⟧ = ⟦t⟧");
    let show = |e: &Elem<S>| source.show(e);

    judge(target, &mut app, f(&source.app()).map(|x| (x, target.app())), || vec!["app".into()]);
    judge(target, &mut one, f(&source.one()).map(|x| (x, target.one())), || vec!["one".into()]);
    for n in 1..=3 {
        for i in 0..n {
            let sides = source.proj(n, i).and_then(|p| f(&p)).and_then(|x| Ok((x, target.proj(n, i)?)));
            judge(target, &mut proj, sides, || vec![format!("pr({n},{i})")]);
        }
    }
    let gen = TermGen::affine(8);
    for _ in 0..samples {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(0..=2);
        let t = source.sample(rng, n);
        let args: Vec<_> = (0..n).map(|_| source.sample(rng, m)).collect();
        let sides = (|| {
            let lhs = f(&source.compose(&t, &args)?)?;
            let fargs = args.iter().map(|a| f(a)).collect::<Result<Vec<_>, _>>()?;
            Ok((lhs, target.compose(&f(&t)?, &fargs)?))
        })();
        judge(target, &mut comp, sides, || vec![show(&t)]);

        let sides = (|| Ok((f(&source.rho(&t)?)?, target.rho(&f(&t)?)?)))();
        judge(target, &mut rho, sides, || vec![show(&t)]);
        let sides = (|| Ok((f(&source.lam(&t)?)?, target.lam(&f(&t)?)?)))();
        judge(target, &mut lam, sides, || vec![show(&t)]);

        let k = rng.gen_range(0..=2);
        let raw = gen.normal_term(rng, k);
        let sides = (|| Ok((f(&interpret(&raw, k, source)?)?, interpret(&raw, k, target)?)))();
        judge(target, &mut interp, sides, || vec![print(&raw, &ctx_names(k))]);
    }
    Certificate::new(
        format!("theory map {label}"),
        [app, one, proj, comp, rho, lam, interp].into_iter().map(Family::finish).collect(),
    )
}

/// Why a finite endomorphism theory cannot carry a retraction
/// `T(n+1) ◁ T(n)`: counting at `n = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obstruction {
    pub carrier: usize,
    pub unary: Option<u128>,
    pub binary: Option<u128>,
    /// True when no retraction can exist.
    pub impossible: bool,
    pub explanation: String,
}

pub fn semi_closed_obstruction(carrier: usize) -> Result<Obstruction, Error> {
    let theory = finite_endo_theory(carrier)?;
    let (unary, binary) = (theory.cardinality(1), theory.cardinality(2));
    let (impossible, explanation) = match (unary, binary) {
        (Some(1), Some(1)) => (false, "terminal theory: every T(n) is a singleton, trivially semi-closed".to_string()),
        (Some(a), Some(b)) if b > a => (
            true,
            format!("|T(2)| = {b} > {a} = |T(1)|, so T(2) is not a retract of T(1)"),
        ),
        (a, b) => (false, format!("no counting obstruction: {a:?}, {b:?}")),
    };
    Ok(Obstruction {
        carrier,
        unary,
        binary,
        impossible,
        explanation,
    })
}

/// Records from [`semi_closed_obstruction`] for the carriers `1..=max`.
pub fn obstruction_records(max: usize) -> Vec<CheckRecord> {
    (1..=max)
        .map(|k| {
            let o = semi_closed_obstruction(k).expect("small carrier");
            let expect_impossible = k >= 2;
            let v = if o.impossible == expect_impossible {
                EqVerdict::Equal
            } else {
                EqVerdict::Distinct
            };
            CheckRecord::single(format!("obstruction.endo{k}"), "|T(2)| > |T(1)| forbids ρ/λ", v, 0).with_instance(vec![
                format!("{:?}", o.unary),
                format!("{:?}", o.binary),
                o.explanation,
            ])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suite_rng;
    use crate::term::{combinator, parse, Reducer};

    #[test]
    fn derived_combinators_in_lambda() {
        let lam = initial_lambda_theory();
        let app = lam.app();
        assert_eq!(app.arity(), 2);
        let r = Reducer::default();
        // app is x₁ x₂ in context 2
        assert_eq!(app.payload(), &Term::app(Term::ctx_var(2, 0), Term::ctx_var(2, 1)));
        assert!(r.eq(&Term::lams(2, app.payload().clone()), &parse("\\x.\\y. x y").unwrap()).is_equal());
        assert_eq!(lam.one().payload(), &combinator("one").unwrap());
        for n in 0..4 {
            assert_eq!(lam.one_n(n).payload(), &combinator(&format!("one_{n}")).unwrap());
        }
        assert_eq!(lam.one_n(0).payload(), &combinator("I").unwrap());
    }

    #[test]
    fn retraction_in_lambda() {
        let lam = initial_lambda_theory();
        let s = lam.element(1, Term::app(Term::ctx_var(1, 0), combinator("I").unwrap())).unwrap();
        let back = lam.rho(&lam.lam(&s).unwrap()).unwrap();
        assert!(lam.element_eq(&back, &s).0.is_equal());
        let c = lam.element(0, combinator("T").unwrap()).unwrap();
        assert_eq!(lam.lam(&c), Err(Error::NoAbstraction));
    }

    #[test]
    fn abstraction_of_app_is_one() {
        let lam = initial_lambda_theory();
        let r = abstraction_recover(&lam, &lam.app()).unwrap();
        assert_eq!(r.hat.payload(), &combinator("one").unwrap());
        assert!(r.recovered.is_equal() && r.fixed.is_equal());
        let c = lam.element(0, combinator("S").unwrap()).unwrap();
        let r0 = abstraction_recover(&lam, &c).unwrap();
        assert_eq!(r0.hat, c);
        assert_eq!(r0.reconstruction, c);
    }

    #[test]
    fn interpretation_is_the_class_of_the_term() {
        let lam = initial_lambda_theory();
        let t = parse("\\x. x (\\y. y x)").unwrap();
        assert_eq!(interpret(&t, 0, &lam).unwrap().payload(), &t);
        // xᵢ ↦ prᵢ
        for i in 0..3 {
            let v = Term::ctx_var(3, i);
            assert_eq!(interpret(&v, 3, &lam).unwrap(), lam.proj(3, i).unwrap());
        }
    }

    #[test]
    fn lambda_laws_hold_in_lambda() {
        let lam = initial_lambda_theory().with_gen(TermGen::sized(12));
        let cert = check_lambda_laws(&lam, 3, 200, &mut suite_rng(0));
        assert!(cert.passed(), "{cert:#?}");
    }

    #[test]
    fn identity_and_inclusion_are_theory_maps() {
        let lam = initial_lambda_theory().with_gen(TermGen::sized(10));
        let id = |e: &Elem<SyntacticTheory>| Ok(e.clone());
        let cert = check_theory_map("id", &id, &lam, &lam, 50, &mut suite_rng(1));
        assert!(cert.passed(), "{cert:#?}");

        let ext = lambda_extension_theory(&Algebra::free(2)).unwrap();
        let incl = |e: &Elem<SyntacticTheory>| ext.element(e.arity(), e.payload().clone());
        let cert = check_theory_map("incl", &incl, &lam, &ext, 50, &mut suite_rng(2));
        assert!(cert.passed(), "{cert:#?}");

        let broken = |e: &Elem<SyntacticTheory>| {
            if e.payload() == lam.app().payload() && e.arity() == 2 {
                lam.element(2, combinator("F").unwrap())
            } else {
                Ok(e.clone())
            }
        };
        let cert = check_theory_map("broken", &broken, &lam, &lam, 10, &mut suite_rng(3));
        assert_eq!(cert.record(".app").unwrap().verdict, crate::report::Verdict::Distinct);
    }

    #[test]
    fn extension_theory_retraction_with_constants() {
        let ext = lambda_extension_theory(&Algebra::free(2)).unwrap();
        let cert = check_lambda_laws(&ext, 2, 200, &mut suite_rng(4));
        assert!(cert.passed(), "{cert:#?}");
        let a = LambdaTheory::constant(&ext, &Term::inert("x0")).unwrap();
        let l = ext.lam(&ext.weaken(&a, 1).unwrap()).unwrap();
        assert_eq!(l.payload(), &Term::lam(Term::inert("x0")));
    }

    #[test]
    fn interpreter_soundness_small() {
        let lam = initial_lambda_theory();
        let raw = |t: &Term, n: usize| lam.element(n, t.clone()).unwrap();
        let cert = check_interpreter(&lam, 300, &TermGen::default(), &mut suite_rng(5), Some(&raw));
        assert!(cert.passed(), "{cert:#?}");
    }

    #[test]
    fn obstruction_counts() {
        let o = semi_closed_obstruction(2).unwrap();
        assert_eq!((o.unary, o.binary), (Some(4), Some(16)));
        assert!(o.impossible);
        assert!(!semi_closed_obstruction(1).unwrap().impossible);
        let o3 = semi_closed_obstruction(3).unwrap();
        assert_eq!((o3.unary, o3.binary), (Some(27), Some(3u128.pow(9))));
        assert!(semi_closed_obstruction(4).unwrap().impossible);
        assert!(semi_closed_obstruction(0).is_err());
    }
}
