//! The comparison maps between a λ-theory `L` and the endomorphism theory
//! `U_{L(0)}`: `η` on representatives, `ε: U_A(0) → A`, their round trips,
//! and naturality of `ε` in the algebra.

use rand::Rng;

use crate::algebra::{closed_term_algebra, Algebra, AlgebraElement, AlgebraMap};
use crate::clone::{Elem, SyntacticTheory, Theory};
use crate::error::Error;
use crate::lambda_theory::{check_theory_map, LambdaTheory};
use crate::report::{Certificate, CheckRecord, Family};
use crate::representation::{endo_lambda_theory, u_functor_map, UTheory};
use crate::term::combinators::{church_true, identity, theta};
use crate::term::{print_closed, EqVerdict, Term};
use crate::SuiteRng;

/// `U_{L(0)}` for a syntactic theory.
pub fn endo_of(theory: &SyntacticTheory) -> UTheory {
    endo_lambda_theory(&closed_term_algebra(theory)).expect("closed terms are term-presented")
}

/// `η(a) = λy w₁…wₙ. a` for `a ∈ L(n)`; evaluated at `c⃗` it is
/// `λx. a(c₁x, …, cₙx)`. Membership in `U(n)` is certified.
pub fn eta(u: &UTheory, a: &Elem<SyntacticTheory>) -> Result<Elem<UTheory>, Error> {
    let n = a.arity();
    u.element(n, Term::lams(n + 1, a.payload().clone()))
}

/// `d ↦ d I w₁ … wₙ`, inverse to [`eta`] up to `=eq`.
pub fn eta_inverse(theory: &SyntacticTheory, d: &Elem<UTheory>) -> Result<Elem<SyntacticTheory>, Error> {
    let n = d.arity();
    let ws = (0..n).map(|j| Term::ctx_var(n, j));
    theory.element(n, Term::apps(Term::app(d.payload().clone(), identity()), ws))
}

/// `ε(a) = aI` for `a ∈ U_A(0)`, normalized when the reducer reaches a
/// normal form.
pub fn eps(u: &UTheory, a: &Elem<UTheory>) -> Result<AlgebraElement, Error> {
    u.check(a)?;
    if a.arity() != 0 {
        return Err(Error::ArityMismatch { expected: 0, found: a.arity() });
    }
    let al = u.algebra();
    let t = Term::app(a.payload().clone(), identity());
    let out = match al.reducer().normalize(&t).normal_form() {
        Some(nf) => nf.clone(),
        None => t,
    };
    Ok(al.tag_trusted(out))
}

/// `c ↦ λx. c`, inverse to [`eps`].
pub fn eps_inverse(u: &UTheory, c: &AlgebraElement) -> Result<Elem<UTheory>, Error> {
    u.algebra().check(c)?;
    Ok(u.tag(0, Term::lam(c.term().clone())))
}

/// Arity-indexed maps `L ⇄ U_{L(0)}` with the checks they passed.
#[derive(Debug, Clone)]
pub struct TheoryIsoWitness {
    pub theory: String,
    pub endo: String,
    pub certificate: Certificate,
}

impl TheoryIsoWitness {
    pub fn passed(&self) -> bool {
        self.certificate.passed()
    }
}

fn record_sides<T: Theory + ?Sized>(
    theory: &T,
    fam: &mut Family,
    sides: Result<(Elem<T>, Elem<T>), Error>,
    show: impl FnOnce() -> Vec<String>,
) {
    match sides {
        Ok((l, r)) => {
            let (v, steps) = theory.element_eq(&l, &r);
            fam.record(v, steps, show);
        }
        Err(e) => fam.record(e.verdict(), 0, || {
            let mut s = show();
            s.push(e.to_string());
            s
        }),
    }
}

/// Both round trips at arities `0..=max_arity`: `η⁻¹(η a) = a` in `L(n)`
/// and `η(η⁻¹ d) = d` in `U(n)`.
pub fn iso_witness(theory: &SyntacticTheory, max_arity: usize, samples: usize, rng: &mut SuiteRng) -> TheoryIsoWitness {
    let u = endo_of(theory);
    let mut records = Vec::new();
    for n in 0..=max_arity {
        let mut there = Family::new(format!("fundamental.roundtrip.L.{n}"), "η⁻¹(η a) = a");
        let mut back = Family::new(format!("fundamental.roundtrip.U.{n}"), "η(η⁻¹ d) = d");
        for _ in 0..samples {
            let a = theory.sample(rng, n);
            let sides = eta(&u, &a).and_then(|e| eta_inverse(theory, &e)).map(|b| (b, a.clone()));
            record_sides(theory, &mut there, sides, || vec![theory.show(&a)]);
            let d = u.sample(rng, n);
            let sides = eta_inverse(theory, &d).and_then(|b| eta(&u, &b)).map(|e| (e, d.clone()));
            record_sides(&u, &mut back, sides, || vec![u.show(&d)]);
        }
        records.push(there.finish());
        records.push(back.finish());
    }
    TheoryIsoWitness {
        theory: theory.id().to_string(),
        endo: u.id().to_string(),
        certificate: Certificate::new(format!("{} ≅ {}", theory.id(), u.id()), records),
    }
}

/// `ε(η a) = a` on sampled closed terms, including `ΘI`, and
/// `η(ε a) = a` on sampled members of `U(0)`.
pub fn triangle_check(theory: &SyntacticTheory, samples: usize, rng: &mut SuiteRng) -> Vec<CheckRecord> {
    let u = endo_of(theory);
    let al = u.algebra().clone();
    let mut tri = Family::new("fundamental.triangle", "ε(η a) = a");
    let mut closed: Vec<Term> = vec![identity(), Term::app(theta(), identity())];
    closed.extend((0..samples).map(|_| theory.sample(rng, 0).into_payload()));
    for a in &closed {
        let sides = (|| {
            let e = eta(&u, &theory.element(0, a.clone())?)?;
            Ok::<_, Error>((eps(&u, &e)?, al.tag_trusted(a.clone())))
        })();
        match sides {
            Ok((l, r)) => {
                let (v, steps) = al.eq_counted(&l, &r);
                tri.record(v, steps, || vec![print_closed(a)]);
            }
            Err(e) => tri.record(e.verdict(), 0, || vec![print_closed(a), e.to_string()]),
        }
    }
    let mut other = Family::new("fundamental.eta_eps", "η(ε a) = λx. aI = a");
    for _ in 0..samples {
        let a = u.sample(rng, 0);
        let sides = (|| {
            let c = eps(&u, &a)?;
            Ok::<_, Error>((eps_inverse(&u, &c)?, a.clone()))
        })();
        record_sides(&u, &mut other, sides, || vec![u.show(&a)]);
    }
    vec![tri.finish(), other.finish()]
}

/// `ε` preserves application and does not depend on the argument:
/// `ε(λy. ay(by)) = ε(a)ε(b)` and `aI = aT`.
pub fn eps_checks(u: &UTheory, samples: usize, rng: &mut SuiteRng) -> Vec<CheckRecord> {
    let al = u.algebra();
    let mut app = Family::new("fundamental.eps.app", "ε(λy. ay(by)) = ε(a)ε(b)");
    let mut konst = Family::new("fundamental.eps.constant", "aI = aT");
    for _ in 0..samples {
        let (a, b) = (u.sample(rng, 0), u.sample(rng, 0));
        let sides = (|| {
            let ab = u.apply(&a, &b)?;
            Ok::<_, Error>((eps(u, &ab)?, al.apply(&eps(u, &a)?, &eps(u, &b)?)))
        })();
        match sides {
            Ok((l, r)) => {
                let (v, steps) = al.eq_counted(&l, &r);
                app.record(v, steps, || vec![u.show(&a), u.show(&b)]);
            }
            Err(e) => app.record(e.verdict(), 0, || vec![u.show(&a), e.to_string()]),
        }
        let ai = al.tag_trusted(Term::app(a.payload().clone(), identity()));
        let at = al.tag_trusted(Term::app(a.payload().clone(), church_true()));
        let (v, steps) = al.eq_counted(&ai, &at);
        konst.record(v, steps, || vec![u.show(&a)]);
    }
    vec![app.finish(), konst.finish()]
}

/// `ε_B(U_f a) = f(ε_A a)` on sampled `a ∈ U_A(0)`. The caller certifies
/// `f` as a homomorphism first.
pub fn naturality_check(
    f: &AlgebraMap,
    source: &Algebra,
    target: &Algebra,
    samples: usize,
    rng: &mut SuiteRng,
) -> Result<CheckRecord, Error> {
    let ua = endo_lambda_theory(source)?;
    let ub = endo_lambda_theory(target)?;
    let uf = u_functor_map(f, &ub);
    let mut fam = Family::new(format!("fundamental.naturality.{}", f.label()), "ε_B(U_f a) = f(ε_A a)");
    for _ in 0..samples {
        let a = ua.sample(rng, 0);
        let sides = (|| Ok::<_, Error>((eps(&ub, &uf(&a)?)?, f.apply(&eps(&ua, &a)?)?)))();
        match sides {
            Ok((l, r)) => {
                let (v, steps) = target.eq_counted(&l, &r);
                fam.record(v, steps, || vec![ua.show(&a)]);
            }
            Err(e) => fam.record(e.verdict(), 0, || vec![ua.show(&a), e.to_string()]),
        }
    }
    Ok(fam.finish())
}

/// `η a = η b` implies `a = b`, checked on pairs the reducer separates.
pub fn eta_injective(theory: &SyntacticTheory, samples: usize, rng: &mut SuiteRng) -> CheckRecord {
    let u = endo_of(theory);
    let mut fam = Family::new("fundamental.eta.injective", "a ≠ b implies η a ≠ η b");
    for _ in 0..samples {
        let n = rng.gen_range(0..=2);
        let (a, b) = (theory.sample(rng, n), theory.sample(rng, n));
        if !theory.element_eq(&a, &b).0.is_distinct() {
            continue;
        }
        match (eta(&u, &a), eta(&u, &b)) {
            (Ok(x), Ok(y)) => {
                let (v, steps) = u.element_eq(&x, &y);
                let v = match v {
                    EqVerdict::Distinct => EqVerdict::Equal,
                    EqVerdict::Equal => EqVerdict::Distinct,
                    unknown => unknown,
                };
                fam.record(v, steps, || vec![theory.show(&a), theory.show(&b)]);
            }
            _ => fam.record(EqVerdict::Unknown { steps: 0 }, 0, || vec![theory.show(&a), theory.show(&b)]),
        }
    }
    fam.finish()
}

/// `η` as a map of λ-theories, through [`check_theory_map`].
pub fn eta_theory_map(theory: &SyntacticTheory, samples: usize, rng: &mut SuiteRng) -> Certificate {
    let u = endo_of(theory);
    let f = |a: &Elem<SyntacticTheory>| eta(&u, a);
    check_theory_map("eta", &f, theory, &u, samples, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_hom;
    use crate::lambda_theory::initial_lambda_theory;
    use crate::report::Verdict;
    use crate::representation::evaluation;
    use crate::suite_rng;
    use crate::term::gen::TermGen;
    use crate::term::{combinator, parse};

    fn lam() -> SyntacticTheory {
        initial_lambda_theory().with_gen(TermGen::affine(10))
    }

    #[test]
    fn eta_at_zero_is_constant_map() {
        let l = lam();
        let u = endo_of(&l);
        let a = l.element(0, combinator("K").unwrap()).unwrap();
        let e = eta(&u, &a).unwrap();
        assert_eq!(e.payload(), &Term::lam(combinator("K").unwrap()));
        let back = eps(&u, &e).unwrap();
        assert_eq!(back.term(), &combinator("K").unwrap());
    }

    #[test]
    fn eta_of_app_evaluates_pointwise() {
        let l = lam();
        let u = endo_of(&l);
        let al = u.algebra();
        let e = eta(&u, &l.app()).unwrap();
        let c1 = al.parse(r"\x. x x").unwrap();
        let c2 = al.parse(r"\x y. y").unwrap();
        let lhs = evaluation(al, &al.tag_trusted(e.payload().clone()), &[c1.clone(), c2.clone()]).unwrap();
        let rhs = al.parse(r"\x. (\x. x x) x ((\x y. y) x)").unwrap();
        assert!(al.eq(&lhs, &rhs).is_equal());
    }

    #[test]
    fn eps_inverse_and_application() {
        let l = lam();
        let u = endo_of(&l);
        let al = u.algebra();
        let c = al.parse(r"\x y. y x").unwrap();
        let back = eps(&u, &eps_inverse(&u, &c).unwrap()).unwrap();
        assert!(al.eq(&back, &c).is_equal());
        for r in eps_checks(&u, 100, &mut suite_rng(1)) {
            assert_eq!(r.verdict, Verdict::Equal, "{r:#?}");
        }
    }

    #[test]
    fn eps_rejects_non_members() {
        let l = lam();
        let u = endo_of(&l);
        // K is λxy.x: 𝟙K = K but λx.KI ≠ K
        assert!(u.element(0, combinator("K").unwrap()).is_err());
        assert!(u.element(0, parse(r"\y. \z. z").unwrap()).is_ok());
    }

    #[test]
    fn triangle_and_round_trips() {
        let l = lam();
        for r in triangle_check(&l, 200, &mut suite_rng(2)) {
            assert_eq!(r.verdict, Verdict::Equal, "{r:#?}");
            assert!(r.tally.unwrap().total() >= 200);
        }
        let w = iso_witness(&l, 3, 30, &mut suite_rng(3));
        assert!(w.passed(), "{:#?}", w.certificate);
    }

    #[test]
    fn general_terms_still_round_trip() {
        // non-affine samples, which need not normalize
        let l = initial_lambda_theory();
        let recs = triangle_check(&l, 100, &mut suite_rng(4));
        assert_eq!(recs[0].verdict, Verdict::Equal, "{:#?}", recs[0]);
    }

    #[test]
    fn naturality_for_identity_inclusion_and_mutation() {
        let a = Algebra::closed_terms();
        let b = Algebra::free(1);
        let id = AlgebraMap::identity(&a);
        assert_eq!(naturality_check(&id, &a, &a, 50, &mut suite_rng(5)).unwrap().verdict, Verdict::Equal);
        let inc = AlgebraMap::from_fn("inclusion", &a, &b, Term::clone);
        assert!(check_hom(&inc, &a, &b, 30, &mut suite_rng(6)).passed());
        let rec = naturality_check(&inc, &a, &b, 100, &mut suite_rng(7)).unwrap();
        assert_eq!(rec.verdict, Verdict::Equal);
        let k = combinator("K").unwrap();
        let bad = AlgebraMap::from_fn("mutated", &a, &a, move |t| Term::app(t.clone(), k.clone()));
        let rec = naturality_check(&bad, &a, &a, 50, &mut suite_rng(8)).unwrap();
        assert_eq!(rec.verdict, Verdict::Distinct);
    }

    #[test]
    fn eta_is_injective_and_a_theory_map() {
        let l = lam();
        let r = eta_injective(&l, 200, &mut suite_rng(9));
        assert_eq!(r.verdict, Verdict::Equal, "{r:#?}");
        assert!(r.tally.unwrap().total() > 50);
        let cert = eta_theory_map(&l, 100, &mut suite_rng(10));
        assert!(cert.passed(), "{cert:#?}");
    }
}
