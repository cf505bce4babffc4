//! Λ-algebras presented by constants, their homomorphisms, the monoid `M_A`
//! and the retracts `A(n)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::clone::SyntacticTheory;
use crate::error::Error;
use crate::report::{CheckRecord, Family};
use crate::term::combinators::iterated_app;
use crate::term::gen::TermGen;
use crate::term::{combinator, parse_in, print_closed, subst, EqVerdict, Reducer, Signature, Term};
use crate::SuiteRng;

/// Name of the `j`-th indeterminate of [`Algebra::free`].
pub fn indeterminate_name(j: usize) -> String {
    format!("x{j}")
}

/// A Λ-algebra whose elements are closed terms over a constant alphabet,
/// compared by β(δ)-equality. The trivial algebra identifies everything.
#[derive(Debug, Clone)]
pub struct Algebra {
    name: Arc<str>,
    constants: Vec<Term>,
    trivial: bool,
    reducer: Reducer,
    gen: TermGen,
}

/// A closed representative tagged with its algebra.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    algebra: Arc<str>,
    term: Term,
}

impl AlgebraElement {
    pub fn term(&self) -> &Term {
        &self.term
    }

    pub fn algebra_id(&self) -> &str {
        &self.algebra
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.algebra, print_closed(&self.term))
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct AlgebraFile {
    name: String,
    #[serde(default)]
    constants: Vec<ConstantDecl>,
    #[serde(default)]
    trivial: bool,
}

#[derive(Debug, Serialize, Deserialize)]
struct ConstantDecl {
    name: String,
    #[serde(default)]
    unfolding: Option<String>,
}

impl Algebra {
    fn build(name: &str, constants: Vec<Term>, trivial: bool) -> Algebra {
        Algebra {
            name: Arc::from(name),
            gen: TermGen::affine(12).with_constants(constants.clone()),
            constants,
            trivial,
            reducer: Reducer::default(),
        }
    }

    /// `Λ(0)`, the closed terms.
    pub fn closed_terms() -> Algebra {
        Algebra::build("closed", Vec::new(), false)
    }

    /// `Λ(p)` as an algebra: open terms with the `p` variables replaced by
    /// inert constants `x0 … x{p-1}`.
    pub fn free(p: usize) -> Algebra {
        let cs = (0..p).map(|j| Term::inert(&indeterminate_name(j))).collect();
        Algebra::build(&format!("open{p}"), cs, false)
    }

    /// Closed terms with named abbreviations: each constant unfolds to the
    /// given closed term, so the algebra is again `Λ(0)`.
    pub fn with_definitions(name: &str, defs: &[(&str, Term)]) -> Result<Algebra, Error> {
        let cs = defs
            .iter()
            .map(|(n, t)| Term::defined(n, t.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Algebra::build(name, cs, false))
    }

    /// The one-point algebra.
    pub fn trivial() -> Algebra {
        Algebra::build("trivial", Vec::new(), true)
    }

    /// Constants with optional unfoldings, as in an algebra file.
    pub fn presented(name: &str, constants: Vec<Term>) -> Result<Algebra, Error> {
        for c in &constants {
            match c {
                Term::Const(n, Some(u)) if !u.is_closed() => return Err(Error::OpenUnfolding(n.to_string())),
                Term::Const(..) => {}
                _ => return Err(Error::AlgebraFile("alphabet entries must be constants".into())),
            }
        }
        Ok(Algebra::build(name, constants, false))
    }

    /// Loads `{name, constants: [{name, unfolding}], trivial?}`. Unfoldings
    /// may mention the combinator table and earlier constants.
    pub fn from_json(text: &str) -> Result<Algebra, Error> {
        let file: AlgebraFile = serde_json::from_str(text).map_err(|e| Error::AlgebraFile(e.to_string()))?;
        if file.trivial {
            let mut a = Algebra::trivial();
            a.name = Arc::from(file.name.as_str());
            return Ok(a);
        }
        let mut sig = Signature::standard();
        let mut cs = Vec::new();
        let none: [&str; 0] = [];
        for decl in &file.constants {
            if decl.name.is_empty() || !decl.name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(Error::AlgebraFile(format!("bad constant name `{}`", decl.name)));
            }
            let unfolding = match &decl.unfolding {
                Some(text) => Some(parse_in(text, &none, &sig)?),
                None => None,
            };
            sig.declare(&decl.name, unfolding.clone())?;
            cs.push(sig.resolve(&decl.name));
        }
        Algebra::presented(&file.name, cs)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_trivial(&self) -> bool {
        self.trivial
    }

    /// Every algebra here except the trivial one is a quotient of terms by
    /// β(δ)-equality.
    pub fn is_term_presented(&self) -> bool {
        !self.trivial
    }

    pub fn with_reducer(mut self, reducer: Reducer) -> Algebra {
        self.reducer = reducer;
        self
    }

    pub fn with_gen(mut self, gen: TermGen) -> Algebra {
        self.gen = gen.with_constants(self.constants.clone());
        self
    }

    pub fn reducer(&self) -> &Reducer {
        &self.reducer
    }

    pub fn constants(&self) -> Vec<Term> {
        self.constants.clone()
    }

    pub fn constant(&self, name: &str) -> Result<AlgebraElement, Error> {
        self.constants
            .iter()
            .find(|c| matches!(c, Term::Const(n, _) if &**n == name))
            .map(|c| self.tag(c.clone()))
            .ok_or_else(|| Error::UnknownConstant(name.to_string()))
    }

    /// The parser signature: combinators plus this alphabet.
    pub fn signature(&self) -> Signature {
        let mut sig = Signature::standard();
        for c in &self.constants {
            if let Term::Const(n, u) = c {
                sig.declare(n, u.as_deref().cloned()).expect("alphabet unfoldings are closed");
            }
        }
        sig
    }

    pub fn parse(&self, text: &str) -> Result<AlgebraElement, Error> {
        let none: [&str; 0] = [];
        let t = parse_in(text, &none, &self.signature())?;
        self.element(t)
    }

    fn admits(&self, t: &Term) -> Result<(), Error> {
        match t {
            Term::Var(_) => Ok(()),
            Term::App(a, b) => self.admits(a).and_then(|_| self.admits(b)),
            Term::Lam(b) => self.admits(b),
            Term::Const(_, Some(u)) if !u.has_constants() => Ok(()),
            Term::Const(..) if self.constants.contains(t) => Ok(()),
            Term::Const(n, _) => Err(Error::UnknownConstant(n.to_string())),
        }
    }

    fn tag(&self, term: Term) -> AlgebraElement {
        AlgebraElement {
            algebra: self.name.clone(),
            term,
        }
    }

    /// Wraps a closed term over the alphabet.
    pub fn element(&self, t: Term) -> Result<AlgebraElement, Error> {
        if !t.is_closed() {
            return Err(Error::NotClosed);
        }
        self.admits(&t)?;
        Ok(self.tag(t))
    }

    /// A pure closed combinator such as `I` or `one_2`.
    pub fn combinator(&self, name: &str) -> AlgebraElement {
        self.tag(combinator(name).expect("known combinator"))
    }

    pub fn check(&self, a: &AlgebraElement) -> Result<(), Error> {
        if a.algebra != self.name {
            return Err(Error::AlgebraMismatch {
                expected: self.name.to_string(),
                found: a.algebra.to_string(),
            });
        }
        Ok(())
    }

    pub fn eq_counted(&self, a: &AlgebraElement, b: &AlgebraElement) -> (EqVerdict, usize) {
        if self.trivial {
            return (EqVerdict::Equal, 0);
        }
        self.reducer.eq_counted(&a.term, &b.term)
    }

    pub fn eq(&self, a: &AlgebraElement, b: &AlgebraElement) -> EqVerdict {
        self.eq_counted(a, b).0
    }

    /// `ab`.
    pub fn apply(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        self.tag(Term::app(a.term.clone(), b.term.clone()))
    }

    /// `a b₁ … bₖ`.
    pub fn apply_all(&self, a: &AlgebraElement, bs: &[AlgebraElement]) -> AlgebraElement {
        self.tag(Term::apps(a.term.clone(), bs.iter().map(|b| b.term.clone())))
    }

    /// The action of `s ∈ Λ(n)` on an `n`-tuple: substitution of the
    /// representatives.
    pub fn act(&self, s: &Term, args: &[AlgebraElement]) -> Result<AlgebraElement, Error> {
        for a in args {
            self.check(a)?;
        }
        let reps: Vec<Term> = args.iter().map(|a| a.term.clone()).collect();
        Ok(self.tag(subst(s, &reps)?))
    }

    /// The same action through the closure: `app_n(λⁿs, a⃗)`, that is
    /// `(λⁿ s) a₁ … aₙ`.
    pub fn act_by_closure(&self, s: &Term, args: &[AlgebraElement]) -> Result<AlgebraElement, Error> {
        if !s.is_scoped_in(args.len()) {
            return Err(Error::ArityMismatch {
                expected: args.len(),
                found: s.scope(),
            });
        }
        let closed = self.tag(Term::lams(args.len(), s.clone()));
        Ok(self.apply_all(&closed, args))
    }

    /// A random element; normal when `normal` is set.
    pub fn sample(&self, rng: &mut SuiteRng, normal: bool) -> AlgebraElement {
        let t = if normal {
            self.gen.normal_term(rng, 0)
        } else {
            self.gen.term(rng, 0)
        };
        self.tag(t)
    }

    /// A random element of `A(n)`: `λz₁…zₙ. t` with `t` normal.
    pub fn sample_retract(&self, rng: &mut SuiteRng, n: usize) -> AlgebraElement {
        self.tag(self.gen.abstraction(rng, 0, n))
    }

    /// A random fixed point of `A(n+1)`: `λy z₁…zₙ. t` with `y` unused.
    pub fn sample_fixed(&self, rng: &mut SuiteRng, n: usize) -> AlgebraElement {
        let body = self.gen.abstraction(rng, 0, n);
        self.tag(Term::lam(body.weaken(1)))
    }

    pub(crate) fn tag_trusted(&self, term: Term) -> AlgebraElement {
        self.tag(term)
    }

    pub fn show(&self, a: &AlgebraElement) -> String {
        print_closed(&a.term)
    }
}

/// `L(0)` as a Λ-algebra.
pub fn closed_term_algebra(theory: &SyntacticTheory) -> Algebra {
    Algebra::build(&format!("{}(0)", crate::clone::Theory::id(theory)), theory.constants().to_vec(), false)
        .with_reducer(*theory.reducer())
}

// ---------------------------------------------------------------------------
// Homomorphisms

type TermFn = dyn Fn(&Term) -> Term + Send + Sync;

/// A map of carriers given on representatives.
#[derive(Clone)]
pub struct AlgebraMap {
    label: String,
    source: Arc<str>,
    target: Arc<str>,
    f: Arc<TermFn>,
}

impl fmt::Debug for AlgebraMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} → {}", self.label, self.source, self.target)
    }
}

impl AlgebraMap {
    pub fn from_fn(
        label: &str,
        source: &Algebra,
        target: &Algebra,
        f: impl Fn(&Term) -> Term + Send + Sync + 'static,
    ) -> AlgebraMap {
        AlgebraMap {
            label: label.to_string(),
            source: source.name.clone(),
            target: target.name.clone(),
            f: Arc::new(f),
        }
    }

    pub fn identity(a: &Algebra) -> AlgebraMap {
        AlgebraMap::from_fn("id", a, a, Term::clone)
    }

    /// The map fixed by images of the generators; other constants are kept.
    /// Such a map commutes with substitution by construction.
    pub fn by_constants(
        label: &str,
        source: &Algebra,
        target: &Algebra,
        images: BTreeMap<String, Term>,
    ) -> Result<AlgebraMap, Error> {
        for (name, image) in &images {
            source.constant(name)?;
            target.element(image.clone())?;
        }
        Ok(AlgebraMap::from_fn(label, source, target, move |t| {
            t.replace_constants(&|name| images.get(name).cloned())
        }))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn source_id(&self) -> &str {
        &self.source
    }

    pub fn target_id(&self) -> &str {
        &self.target
    }

    /// Applies the map to any representative, open or closed.
    pub fn apply_term(&self, t: &Term) -> Term {
        (self.f)(t)
    }

    pub fn apply(&self, a: &AlgebraElement) -> Result<AlgebraElement, Error> {
        if a.algebra != self.source {
            return Err(Error::AlgebraMismatch {
                expected: self.source.to_string(),
                found: a.algebra.to_string(),
            });
        }
        Ok(AlgebraElement {
            algebra: self.target.clone(),
            term: (self.f)(&a.term),
        })
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &AlgebraMap) -> Result<AlgebraMap, Error> {
        if g.source != self.target {
            return Err(Error::AlgebraMismatch {
                expected: self.target.to_string(),
                found: g.source.to_string(),
            });
        }
        let (f, g2) = (self.f.clone(), g.f.clone());
        Ok(AlgebraMap {
            label: format!("{}∘{}", g.label, self.label),
            source: self.source.clone(),
            target: g.target.clone(),
            f: Arc::new(move |t| g2(&f(t))),
        })
    }
}

/// The fixed list of λ-definable constants a homomorphism must preserve.
pub const HOM_CONSTANTS: &[&str] = &["I", "T", "F", "one", "one_2", "S", "B", "C", "p", "q", "pair"];

/// Outcome of [`check_hom`]: one record per condition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomReport {
    pub map: String,
    /// Application and the constant list.
    pub sufficient: Vec<CheckRecord>,
    /// The full action on sampled terms.
    pub action: CheckRecord,
}

impl HomReport {
    pub fn sufficient_passed(&self) -> bool {
        self.sufficient.iter().all(|r| r.verdict == crate::report::Verdict::Equal)
    }

    pub fn passed(&self) -> bool {
        self.sufficient_passed() && self.action.verdict == crate::report::Verdict::Equal
    }

    pub fn records(&self) -> Vec<CheckRecord> {
        let mut v = self.sufficient.clone();
        v.push(self.action.clone());
        v
    }
}

/// Preservation of application and of the λ-definable constants, then the
/// full action `f(s(a⃗)) = s(f(a⃗))` on sampled `s ∈ Λ(n)`, `n ≤ 3`.
pub fn check_hom(f: &AlgebraMap, a: &Algebra, b: &Algebra, samples: usize, rng: &mut SuiteRng) -> HomReport {
    let prefix = format!("hom.{}", f.label);
    let mut app = Family::new(format!("{prefix}.app"), "f(ab) = f(a)f(b)");
    let mut consts = Family::new(format!("{prefix}.constants"), "f(c) = c for λ-definable c");
    let mut gens = Family::new(format!("{prefix}.generators"), "f(c) = f(unfolding of c)");
    let mut action = Family::new(format!("{prefix}.action"), "f(s(a⃗)) = s(f(a⃗))");
    let judge = |fam: &mut Family, lhs: Result<AlgebraElement, Error>, rhs: Result<AlgebraElement, Error>, show: Vec<String>| {
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => {
                let (v, steps) = b.eq_counted(&l, &r);
                fam.record(v, steps, || {
                    let mut s = show;
                    s.push(b.show(&l));
                    s.push(b.show(&r));
                    s
                });
            }
            (Err(e), _) | (_, Err(e)) => fam.record(e.verdict(), 0, || vec![e.to_string()]),
        }
    };

    for _ in 0..samples {
        let x = a.sample(rng, true);
        let y = a.sample(rng, true);
        let lhs = f.apply(&a.apply(&x, &y));
        let rhs = f.apply(&x).and_then(|fx| Ok(b.apply(&fx, &f.apply(&y)?)));
        judge(&mut app, lhs, rhs, vec![a.show(&x), a.show(&y)]);
    }
    for name in HOM_CONSTANTS {
        let c = a.combinator(name);
        judge(&mut consts, f.apply(&c), Ok(b.combinator(name)), vec![name.to_string()]);
    }
    for c in &a.constants {
        if let Term::Const(name, Some(u)) = c {
            let lhs = f.apply(&a.tag(c.clone()));
            let rhs = f.apply(&a.tag((**u).clone()));
            judge(&mut gens, lhs, rhs, vec![name.to_string()]);
        }
    }
    let gen = TermGen::affine(10);
    for _ in 0..samples {
        let n = rng.gen_range(0..=3);
        let s = gen.normal_term(rng, n);
        let xs: Vec<AlgebraElement> = (0..n).map(|_| a.sample(rng, true)).collect();
        let lhs = a.act(&s, &xs).and_then(|e| f.apply(&e));
        let rhs = xs
            .iter()
            .map(|x| f.apply(x))
            .collect::<Result<Vec<_>, _>>()
            .and_then(|fx| b.act(&s, &fx));
        let mut shown = vec![crate::term::print(&s, &(0..n).map(|i| format!("z{i}")).collect::<Vec<_>>())];
        shown.extend(xs.iter().map(|x| a.show(x)));
        judge(&mut action, lhs, rhs, shown);
    }
    let mut sufficient = vec![app.finish(), consts.finish()];
    if gens.tally().total() > 0 {
        sufficient.push(gens.finish());
    }
    HomReport {
        map: f.label.clone(),
        sufficient,
        action: action.finish(),
    }
}

// ---------------------------------------------------------------------------
// M_A and A(n)

/// The monoid `M_A` on `A(1) = {a | 𝟙a = a}`, `a ∘ b = λx. a(bx)`, unit `I`.
#[derive(Debug, Clone, Copy)]
pub struct Monoid<'a> {
    algebra: &'a Algebra,
}

pub fn monoid_of(algebra: &Algebra) -> Monoid<'_> {
    Monoid { algebra }
}

impl<'a> Monoid<'a> {
    pub fn algebra(&self) -> &'a Algebra {
        self.algebra
    }

    pub fn unit(&self) -> AlgebraElement {
        self.algebra.combinator("I")
    }

    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        self.algebra.tag(compose_closed(&a.term, &b.term))
    }

    /// `a₁ ∘ a₂ ∘ … ∘ aₖ`.
    pub fn product(&self, factors: &[&AlgebraElement]) -> AlgebraElement {
        factors
            .iter()
            .rev()
            .fold(None, |acc: Option<AlgebraElement>, a| {
                Some(match acc {
                    None => (*a).clone(),
                    Some(r) => self.mul(a, &r),
                })
            })
            .unwrap_or_else(|| self.unit())
    }

    pub fn contains(&self, a: &AlgebraElement) -> EqVerdict {
        retract_an(self.algebra, 1).contains(a)
    }

    pub fn eq(&self, a: &AlgebraElement, b: &AlgebraElement) -> EqVerdict {
        self.algebra.eq(a, b)
    }

    /// A random member, `λx. t` with `t` normal.
    pub fn sample(&self, rng: &mut SuiteRng) -> AlgebraElement {
        self.algebra.sample_retract(rng, 1)
    }
}

/// `λx. a (b x)` for closed `a`, `b`.
pub fn compose_closed(a: &Term, b: &Term) -> Term {
    Term::lam(Term::app(a.clone(), Term::app(b.clone(), Term::Var(0))))
}

/// The retract `A(n) = {a | 𝟙ₙ a = a}` with its retraction `a ↦ 𝟙ₙ a`.
#[derive(Debug, Clone, Copy)]
pub struct Retract<'a> {
    algebra: &'a Algebra,
    n: usize,
}

pub fn retract_an(algebra: &Algebra, n: usize) -> Retract<'_> {
    Retract { algebra, n }
}

impl Retract<'_> {
    pub fn index(&self) -> usize {
        self.n
    }

    pub fn one_n(&self) -> Term {
        iterated_app(self.n)
    }

    pub fn project(&self, a: &AlgebraElement) -> AlgebraElement {
        self.algebra.tag(Term::app(self.one_n(), a.term.clone()))
    }

    pub fn contains(&self, a: &AlgebraElement) -> EqVerdict {
        self.algebra.eq(&self.project(a), a)
    }

    /// The monoid-side description of `A(n+1)`: `𝟙ₙ ∘ d = d`.
    pub fn contains_next_via_monoid(&self, d: &AlgebraElement) -> EqVerdict {
        let lhs = self.algebra.tag(compose_closed(&self.one_n(), &d.term));
        self.algebra.eq(&lhs, d)
    }

    /// Membership as an error on anything but Equal.
    pub fn require(&self, a: &AlgebraElement) -> Result<(), Error> {
        match self.contains(a) {
            EqVerdict::Equal => Ok(()),
            EqVerdict::Distinct => Err(Error::NotMember(format!(
                "{} is not fixed by one_{}",
                self.algebra.show(a),
                self.n
            ))),
            EqVerdict::Unknown { .. } => Err(Error::Inconclusive(format!(
                "one_{} fixing {}",
                self.n,
                self.algebra.show(a)
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suite_rng;

    fn lam0() -> Algebra {
        Algebra::closed_terms()
    }

    #[test]
    fn action_projects_and_applies() {
        let a = lam0();
        let x = a.combinator("T");
        let y = a.combinator("F");
        let pr1 = Term::ctx_var(2, 0);
        assert_eq!(a.act(&pr1, &[x.clone(), y.clone()]).unwrap(), x);
        let app = Term::app(Term::ctx_var(2, 0), Term::ctx_var(2, 1));
        let out = a.act(&app, &[x.clone(), y.clone()]).unwrap();
        assert_eq!(out.term(), &Term::app(x.term().clone(), y.term().clone()));
        assert!(matches!(a.act(&app, &[x]), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn closure_route_agrees_with_substitution() {
        let a = Algebra::free(2);
        let mut rng = suite_rng(5);
        let gen = TermGen::sized(12);
        for _ in 0..200 {
            let n = rng.gen_range(0..=3);
            let s = gen.term(&mut rng, n);
            let xs: Vec<_> = (0..n).map(|_| a.sample(&mut rng, true)).collect();
            let direct = a.act(&s, &xs).unwrap();
            let closed = a.act_by_closure(&s, &xs).unwrap();
            assert!(!a.eq(&direct, &closed).is_distinct());
        }
    }

    #[test]
    fn trivial_algebra_identifies_everything() {
        let t = Algebra::trivial();
        assert!(t.eq(&t.combinator("T"), &t.combinator("F")).is_equal());
        assert!(!t.is_term_presented());
    }

    #[test]
    fn json_presentation() {
        let a = Algebra::from_json(
            r##"{"name": "sample", "constants": [
                {"name": "k", "unfolding": "\\x y. x"},
                {"name": "kk", "unfolding": "#k #k"},
                {"name": "g", "unfolding": null}
            ]}"##,
        )
        .unwrap();
        assert_eq!(a.name(), "sample");
        let kk = a.constant("kk").unwrap();
        let expect = a.parse("\\y. #k").unwrap();
        assert!(a.eq(&kk, &expect).is_equal());
        let g = a.constant("g").unwrap();
        assert!(a.eq(&g, &a.combinator("I")).is_distinct());
        assert!(Algebra::from_json(r#"{"name": "bad", "constants": [{"name": "o", "unfolding": "y"}]}"#).is_err());
        assert!(a.parse("#nope").is_err());
    }

    #[test]
    fn monoid_laws() {
        let a = lam0();
        let m = monoid_of(&a);
        let mut rng = suite_rng(2);
        for _ in 0..100 {
            let x = m.sample(&mut rng);
            let y = m.sample(&mut rng);
            let z = m.sample(&mut rng);
            assert!(m.contains(&x).is_equal());
            assert!(m.eq(&m.mul(&m.unit(), &x), &x).is_equal());
            assert!(m.eq(&m.mul(&x, &m.unit()), &x).is_equal());
            let l = m.mul(&m.mul(&x, &y), &z);
            let r = m.mul(&x, &m.mul(&y, &z));
            let v = m.eq(&l, &r);
            assert!(v.is_equal(), "{v:?} {x:?} {y:?} {z:?}");
        }
    }

    #[test]
    fn one_projects_into_a1() {
        let a = lam0();
        let r1 = retract_an(&a, 1);
        let mut rng = suite_rng(9);
        for _ in 0..100 {
            let x = a.sample(&mut rng, true);
            let p = r1.project(&x);
            assert!(!r1.contains(&p).is_distinct());
        }
        assert!(r1.contains(&a.combinator("one")).is_equal());
        assert!(retract_an(&a, 2).contains(&a.combinator("T")).is_equal());
        // not every element is a member: a variable-free non-abstraction
        let free = Algebra::free(1);
        let x0 = free.constant("x0").unwrap();
        assert!(retract_an(&free, 1).contains(&x0).is_distinct());
    }

    #[test]
    fn two_descriptions_of_the_next_retract_agree() {
        let a = Algebra::free(1);
        let mut rng = suite_rng(4);
        for n in 0..3 {
            let r = retract_an(&a, n);
            let next = retract_an(&a, n + 1);
            for _ in 0..50 {
                let d = a.sample(&mut rng, true);
                let d = if rng.gen_bool(0.5) { next.project(&d) } else { d };
                let via_monoid = r.contains_next_via_monoid(&d);
                let direct = next.contains(&d);
                assert_eq!(via_monoid.is_equal(), direct.is_equal(), "{d:?}");
            }
        }
    }

    #[test]
    fn hom_checks() {
        let a = lam0();
        let mut rng = suite_rng(0);
        assert!(check_hom(&AlgebraMap::identity(&a), &a, &a, 50, &mut rng).passed());
        let b = Algebra::free(1);
        let incl = AlgebraMap::from_fn("incl", &a, &b, Term::clone);
        assert!(check_hom(&incl, &a, &b, 50, &mut rng).passed());
        let broken = AlgebraMap::from_fn("broken", &a, &a, |t| Term::app(t.clone(), Term::inert("junk")));
        let r = check_hom(&broken, &a, &a, 20, &mut rng);
        assert!(!r.sufficient_passed());
        assert!(!r.passed());
    }

    #[test]
    fn maps_by_constants_are_homs() {
        let src = Algebra::free(2);
        let dst = Algebra::free(1);
        let images = BTreeMap::from([
            ("x0".to_string(), Term::inert("x0")),
            ("x1".to_string(), Term::app(Term::inert("x0"), Term::inert("x0"))),
        ]);
        let f = AlgebraMap::by_constants("collapse", &src, &dst, images).unwrap();
        let mut rng = suite_rng(3);
        let r = check_hom(&f, &src, &dst, 100, &mut rng);
        assert!(r.passed(), "{r:?}");
    }
}
