//! The function-space isomorphism `A(2) ≅ U^U`, evaluation, product
//! witnesses, and the endomorphism λ-theory `U_A` of the reflexive object.
//!
//! Inside the presheaf of `M_A`-sets everything is manipulated through
//! representatives: an element `d ∈ A(n+1)` stands for the map
//! `(a₁, …, aₙ) ↦ λy. d y (a₁y) ⋯ (aₙy)`.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::algebra::{check_hom, compose_closed, monoid_of, retract_an, Algebra, AlgebraElement, AlgebraMap, HomReport};
use crate::clone::{check_args, Elem, FinMap, Theory, TheoryElement};
use crate::error::Error;
use crate::lambda_theory::LambdaTheory;
use crate::report::{CheckRecord, Family};
use crate::term::combinators::{church_false, church_true, first, identity, iterated_app, second};
use crate::term::{print_closed, EqVerdict, Term};
use crate::SuiteRng;

type BinaryFn = dyn Fn(&AlgebraElement, &AlgebraElement) -> AlgebraElement + Send + Sync;

/// An equivariant binary operation on `M_A`.
#[derive(Clone)]
pub struct EquivariantMap {
    generator: Option<AlgebraElement>,
    apply: Arc<BinaryFn>,
}

impl fmt::Debug for EquivariantMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.generator {
            Some(d) => write!(f, "phi[{d:?}]"),
            None => write!(f, "phi[procedural]"),
        }
    }
}

impl EquivariantMap {
    /// A map given only as a procedure; equivariance is then the caller's
    /// claim.
    pub fn procedural(f: impl Fn(&AlgebraElement, &AlgebraElement) -> AlgebraElement + Send + Sync + 'static) -> Self {
        EquivariantMap {
            generator: None,
            apply: Arc::new(f),
        }
    }

    pub fn generator(&self) -> Option<&AlgebraElement> {
        self.generator.as_ref()
    }

    pub fn apply(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        (self.apply)(a, b)
    }
}

fn v(k: usize) -> Term {
    Term::Var(k)
}

/// `λy. d (a y) (b y)`.
fn phi_term(d: &Term, a: &Term, b: &Term) -> Term {
    Term::lam(Term::apps(d.clone(), [Term::app(a.clone(), v(0)), Term::app(b.clone(), v(0))]))
}

/// `φ(a, b) = λy. d(ay)(by)` for `d ∈ A(2)`.
pub fn phi_of(algebra: &Algebra, d: &AlgebraElement) -> Result<EquivariantMap, Error> {
    algebra.check(d)?;
    retract_an(algebra, 2).require(d)?;
    let dt = d.term().clone();
    let alg = algebra.clone();
    Ok(EquivariantMap {
        generator: Some(d.clone()),
        apply: Arc::new(move |a, b| alg.tag_trusted(phi_term(&dt, a.term(), b.term()))),
    })
}

/// `d = λyz. φ(p, q)(λx. x y z)`.
pub fn d_of(algebra: &Algebra, phi: &EquivariantMap) -> AlgebraElement {
    let p = algebra.tag_trusted(first());
    let q = algebra.tag_trusted(second());
    let pq = phi.apply(&p, &q);
    let pairing = Term::lam(Term::apps(v(0), [v(2), v(1)]));
    algebra.tag_trusted(Term::lams(2, Term::app(pq.term().clone(), pairing)))
}

/// `φ(a∘c, b∘c) = φ(a, b)∘c`.
pub fn equivariance(algebra: &Algebra, phi: &EquivariantMap, a: &AlgebraElement, b: &AlgebraElement, c: &AlgebraElement) -> (EqVerdict, usize) {
    let m = monoid_of(algebra);
    let lhs = phi.apply(&m.mul(a, c), &m.mul(b, c));
    let rhs = m.mul(&phi.apply(a, b), c);
    algebra.eq_counted(&lhs, &rhs)
}

fn require_all(algebra: &Algebra, n: usize, es: &[&AlgebraElement]) -> Result<(), Error> {
    let r = retract_an(algebra, n);
    for e in es {
        algebra.check(e)?;
        r.require(e)?;
    }
    Ok(())
}

fn evaluation_term(d: &Term, args: &[Term]) -> Term {
    let applied = args.iter().map(|a| Term::app(a.clone(), v(0)));
    Term::lam(Term::apps(Term::app(d.clone(), v(0)), applied))
}

/// `(d, a₁ … aₙ) ↦ λy. d y (a₁y) ⋯ (aₙy)` for `d ∈ A(n+1)`, `aᵢ ∈ A(1)`.
pub fn evaluation(algebra: &Algebra, d: &AlgebraElement, args: &[AlgebraElement]) -> Result<AlgebraElement, Error> {
    require_all(algebra, args.len() + 1, &[d])?;
    require_all(algebra, 1, &args.iter().collect::<Vec<_>>())?;
    Ok(evaluation_unchecked(algebra, d, args))
}

pub(crate) fn evaluation_unchecked(algebra: &Algebra, d: &AlgebraElement, args: &[AlgebraElement]) -> AlgebraElement {
    let reps: Vec<Term> = args.iter().map(|a| a.term().clone()).collect();
    algebra.tag_trusted(evaluation_term(d.term(), &reps))
}

/// The pairing `s = λw. λx. x (b₁w) (b₂w)` of two maps into `U`, with its
/// certificate.
#[derive(Debug, Clone)]
pub struct ProductWitness {
    pub b1: AlgebraElement,
    pub b2: AlgebraElement,
    pub s: AlgebraElement,
    pub checks: Vec<CheckRecord>,
}

fn pairing_of(algebra: &Algebra, a1: &Term, a2: &Term) -> AlgebraElement {
    // λw. λx. x (a₁ w) (a₂ w)
    let body = Term::apps(v(0), [Term::app(a1.clone(), v(1)), Term::app(a2.clone(), v(1))]);
    algebra.tag_trusted(Term::lams(2, body))
}

fn check(algebra: &Algebra, id: &str, law: &str, lhs: &AlgebraElement, rhs: &AlgebraElement) -> CheckRecord {
    let (v, steps) = algebra.eq_counted(lhs, rhs);
    CheckRecord::single(id, law, v, steps).with_instance(vec![algebra.show(lhs), algebra.show(rhs)])
}

impl ProductWitness {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict == crate::report::Verdict::Equal)
    }

    /// For `(c, a₁, a₂)` with `f(aᵢ)∘c = bᵢ`: the mediating
    /// `r = λw. λx. x (a₁w) (a₂w)` with `p∘r = a₁`, `q∘r = a₂` and
    /// `f(r)∘c = s`.
    pub fn mediate(
        &self,
        source: &Algebra,
        target: &Algebra,
        f: &AlgebraMap,
        c: &AlgebraElement,
        a1: &AlgebraElement,
        a2: &AlgebraElement,
    ) -> Result<(AlgebraElement, Vec<CheckRecord>), Error> {
        let mt = monoid_of(target);
        let ms = monoid_of(source);
        let mut checks = Vec::new();
        for (i, (a, b)) in [(a1, &self.b1), (a2, &self.b2)].into_iter().enumerate() {
            let lhs = mt.mul(&f.apply(a)?, c);
            checks.push(check(target, &format!("product.cone.{}", i + 1), "f(aᵢ)∘c = bᵢ", &lhs, b));
        }
        let r = pairing_of(source, a1.term(), a2.term());
        let p = source.tag_trusted(first());
        let q = source.tag_trusted(second());
        checks.push(check(source, "product.mediate.fst", "p∘r = a₁", &ms.mul(&p, &r), a1));
        checks.push(check(source, "product.mediate.snd", "q∘r = a₂", &ms.mul(&q, &r), a2));
        let fr = mt.mul(&f.apply(&r)?, c);
        checks.push(check(target, "product.mediate.s", "f(r)∘c = s", &fr, &self.s));
        Ok((r, checks))
    }
}

pub fn product_witnesses(algebra: &Algebra, b1: &AlgebraElement, b2: &AlgebraElement) -> Result<ProductWitness, Error> {
    require_all(algebra, 1, &[b1, b2])?;
    let m = monoid_of(algebra);
    let s = pairing_of(algebra, b1.term(), b2.term());
    let p = algebra.tag_trusted(first());
    let q = algebra.tag_trusted(second());
    let checks = vec![
        check(algebra, "product.fst", "p∘s = b₁", &m.mul(&p, &s), b1),
        check(algebra, "product.snd", "q∘s = b₂", &m.mul(&q, &s), b2),
    ];
    Ok(ProductWitness {
        b1: b1.clone(),
        b2: b2.clone(),
        s,
        checks,
    })
}

/// Every `b ∈ M` is sent to `λx. I` by composing: `(λx.I)∘b = λx.I`.
pub fn terminal_witness(algebra: &Algebra, b: &AlgebraElement) -> CheckRecord {
    let m = monoid_of(algebra);
    let bang = algebra.tag_trusted(Term::lam(identity()));
    check(algebra, "product.terminal", "(λx.I)∘b = λx.I", &m.mul(&bang, b), &bang)
}

// ---------------------------------------------------------------------------
// U_A

/// The endomorphism λ-theory of `U` in presheaves on `M_A`.
///
/// `U_A(n)` is represented by the fixed points of `A(n+1)`: elements
/// `d = λy w₁…wₙ. t` with `𝟙ₙ₊₁ d = d` and `λx. dI = d`.
#[derive(Debug, Clone)]
pub struct UTheory {
    algebra: Algebra,
    id: String,
}

pub fn endo_lambda_theory(algebra: &Algebra) -> Result<UTheory, Error> {
    if !algebra.is_term_presented() {
        return Err(Error::AlgebraFile(format!("algebra `{}` is not presented by terms", algebra.name())));
    }
    Ok(UTheory {
        id: format!("U[{}]", algebra.name()),
        algebra: algebra.clone(),
    })
}

/// `λy w₁…wₘ. d y (e₁ y w⃗) ⋯ (eₙ y w⃗)`.
fn u_compose_term(d: &Term, es: &[Term], m: usize) -> Term {
    let y = v(m);
    let ws: Vec<Term> = (0..m).map(|j| v(m - 1 - j)).collect();
    let arg = |e: &Term| Term::apps(Term::app(e.clone(), y.clone()), ws.iter().cloned());
    Term::lams(m + 1, Term::apps(Term::app(d.clone(), y.clone()), es.iter().map(arg)))
}

impl UTheory {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn as_algebra_element(&self, e: &Elem<Self>) -> AlgebraElement {
        self.algebra.tag_trusted(e.payload().clone())
    }

    /// Membership of `d` in `U_A(n)`.
    pub fn membership(&self, n: usize, d: &Term) -> EqVerdict {
        let a = self.algebra.tag_trusted(d.clone());
        let fixed = self.algebra.tag_trusted(Term::lam(Term::app(d.clone(), identity())));
        retract_an(&self.algebra, n + 1)
            .contains(&a)
            .and(self.algebra.eq(&fixed, &a))
    }

    /// `evaluation(compose(d, e⃗), a⃗) = evaluation(d, [evaluation(eᵢ, a⃗)])`
    /// on random members of `A(n+1)`, `A(m+1)` and `A(1)` (not only fixed
    /// points).
    pub fn validate_composition(&self, samples: usize, rng: &mut SuiteRng) -> CheckRecord {
        let mut fam = Family::new(
            format!("{}.compose.oracle", self.id),
            "evaluation(compose(d, e⃗), a⃗) = evaluation(d, evaluation(eᵢ, a⃗))",
        );
        let al = &self.algebra;
        for _ in 0..samples {
            let n = rng.gen_range(0..=3);
            let m = rng.gen_range(0..=3);
            let d = al.sample_retract(rng, n + 1);
            let es: Vec<_> = (0..n).map(|_| al.sample_retract(rng, m + 1)).collect();
            let args: Vec<_> = (0..m).map(|_| al.sample_retract(rng, 1)).collect();
            // with n = 0 this is the constant d weakened along 0 → m
            let reps: Vec<Term> = es.iter().map(|e| e.term().clone()).collect();
            let composed = al.tag_trusted(u_compose_term(d.term(), &reps, m));
            let lhs = evaluation_unchecked(al, &composed, &args);
            let inner: Vec<_> = es.iter().map(|e| evaluation_unchecked(al, e, &args)).collect();
            let rhs = evaluation_unchecked(al, &d, &inner);
            let (v, steps) = al.eq_counted(&lhs, &rhs);
            fam.record(v, steps, || {
                let mut s = vec![al.show(&d)];
                s.extend(es.iter().chain(&args).map(|x| al.show(x)));
                s
            });
        }
        fam.finish()
    }
}

impl Theory for UTheory {
    type Payload = Term;

    fn id(&self) -> &str {
        &self.id
    }

    fn element(&self, arity: usize, d: Term) -> Result<Elem<Self>, Error> {
        let e = self.algebra.element(d)?;
        match self.membership(arity, e.term()) {
            EqVerdict::Equal => Ok(self.tag(arity, e.term().clone())),
            EqVerdict::Distinct => Err(Error::NotMember(format!("{} ∉ {}({arity})", print_closed(e.term()), self.id))),
            EqVerdict::Unknown { .. } => Err(Error::Inconclusive(format!("{} ∈ {}({arity})", print_closed(e.term()), self.id))),
        }
    }

    fn proj(&self, n: usize, i: usize) -> Result<Elem<Self>, Error> {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, arity: n });
        }
        Ok(self.tag(n, Term::lams(n + 1, v(n - 1 - i))))
    }

    fn compose(&self, t: &Elem<Self>, args: &[Elem<Self>]) -> Result<Elem<Self>, Error> {
        let m = check_args(self, t, args)?;
        if m == usize::MAX {
            return Ok(t.clone());
        }
        let reps: Vec<Term> = args.iter().map(|a| a.payload().clone()).collect();
        Ok(self.tag(m, u_compose_term(t.payload(), &reps, m)))
    }

    fn rename(&self, t: &Elem<Self>, f: &FinMap) -> Result<Elem<Self>, Error> {
        self.check(t)?;
        if f.source() != t.arity() {
            return Err(Error::ArityMismatch {
                expected: t.arity(),
                found: f.source(),
            });
        }
        // λy w₁…wₘ. d y w_f(0) … w_f(n-1)
        let m = f.target();
        let args = f.images().iter().map(|&j| v(m - 1 - j));
        let body = Term::apps(Term::app(t.payload().clone(), v(m)), args);
        Ok(self.tag(m, Term::lams(m + 1, body)))
    }

    fn element_eq(&self, a: &Elem<Self>, b: &Elem<Self>) -> (EqVerdict, usize) {
        if a.arity() != b.arity() {
            return (EqVerdict::Distinct, 0);
        }
        self.algebra
            .eq_counted(&self.as_algebra_element(a), &self.as_algebra_element(b))
    }

    fn sample(&self, rng: &mut SuiteRng, n: usize) -> Elem<Self> {
        self.tag(n, self.algebra.sample_fixed(rng, n).term().clone())
    }

    fn show(&self, e: &Elem<Self>) -> String {
        print_closed(e.payload())
    }
}

impl LambdaTheory for UTheory {
    /// `ρ(d) = 𝟙ₙ₊₂ d`.
    fn rho(&self, d: &Elem<Self>) -> Result<Elem<Self>, Error> {
        self.check(d)?;
        let n = d.arity();
        Ok(self.tag(n + 1, Term::app(iterated_app(n + 2), d.payload().clone())))
    }

    /// `λ(e) = e`, the inclusion `A(n+2) ⊆ A(n+1)`.
    fn lam(&self, e: &Elem<Self>) -> Result<Elem<Self>, Error> {
        self.check(e)?;
        if e.arity() == 0 {
            return Err(Error::NoAbstraction);
        }
        Ok(self.tag(e.arity() - 1, e.payload().clone()))
    }

    /// A closed constant `c` becomes the fixed point `λx. c`.
    fn constant(&self, c: &Term) -> Result<Elem<Self>, Error> {
        let e = self.algebra.element(c.clone())?;
        Ok(self.tag(0, Term::lam(e.term().clone())))
    }
}

/// `U_f`: the map `U_A → U_B` applying `f` to representatives.
pub fn u_functor_map<'a>(
    f: &'a AlgebraMap,
    target: &'a UTheory,
) -> impl Fn(&Elem<UTheory>) -> Result<Elem<UTheory>, Error> + Sync + 'a {
    move |e: &TheoryElement<Term>| Ok(target.tag(e.arity(), f.apply_term(e.payload())))
}

/// Checks `f` with [`check_hom`] before it is used to build `U_f`.
pub fn certify_hom(f: &AlgebraMap, a: &Algebra, b: &Algebra, samples: usize, rng: &mut SuiteRng) -> Result<HomReport, Error> {
    let report = check_hom(f, a, b, samples, rng);
    if report.action.verdict == crate::report::Verdict::Distinct || !report.sufficient_passed() {
        return Err(Error::NotMember(format!("`{}` is not a homomorphism", f.label())));
    }
    Ok(report)
}

/// Left composition with `𝟙` as a retraction of `U` onto `U^U`: `𝟙∘(𝟙∘d) = 𝟙∘d`,
/// and `𝟙∘d = d` exactly when `d ∈ A(2)`.
pub fn reflexive_retract(algebra: &Algebra, d: &AlgebraElement) -> (EqVerdict, EqVerdict, EqVerdict) {
    let one = algebra.tag_trusted(iterated_app(1));
    let once = algebra.tag_trusted(compose_closed(one.term(), d.term()));
    let twice = algebra.tag_trusted(compose_closed(one.term(), once.term()));
    let idem = algebra.eq(&twice, &once);
    let fixes = algebra.eq(&once, d);
    let member = retract_an(algebra, 2).contains(d);
    (idem, fixes, member)
}

/// `I`, `T`, `F` as algebra elements, used by the suites.
pub fn basic_elements(algebra: &Algebra) -> [AlgebraElement; 3] {
    [
        algebra.tag_trusted(identity()),
        algebra.tag_trusted(church_true()),
        algebra.tag_trusted(church_false()),
    ]
}
