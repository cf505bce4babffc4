//! Named, seeded check suites producing a [`SuiteReport`].
//!
//! Every check family draws from its own generator, seeded from the suite
//! seed and a fixed salt, so a family's records do not depend on which
//! other suites run alongside it.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::algebra::{compose_closed, monoid_of, Algebra, AlgebraElement, AlgebraMap};
use crate::clone::{check_clone_laws, finite_endo_theory, Budget, Elem, SyntacticTheory, Theory};
use crate::error::Error;
use crate::fundamental::{
    endo_of, eps_checks, eta_injective, eta_theory_map, iso_witness, naturality_check, triangle_check,
};
use crate::karoubi::ccc_law_suite;
use crate::lambda_theory::{
    check_interpreter, check_lambda_laws, check_theory_map, initial_lambda_theory, lambda_extension_theory,
    obstruction_records, LambdaTheory,
};
use crate::report::{CheckRecord, Family, SuiteReport, Verdict};
use crate::representation::{
    d_of, endo_lambda_theory, equivariance, evaluation, phi_of, product_witnesses, reflexive_retract,
    terminal_witness, u_functor_map, EquivariantMap,
};
use crate::term::combinators::{church_false, church_true, theta};
use crate::term::gen::TermGen;
use crate::term::{print, Reducer, Term};
use crate::{suite_rng, SuiteRng};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SuiteName {
    Paper,
    Clone,
    Lambda,
    Representation,
    Karoubi,
    Fundamental,
    Obstruction,
    All,
}

impl SuiteName {
    pub const ALL: [SuiteName; 8] = [
        SuiteName::Paper,
        SuiteName::Clone,
        SuiteName::Lambda,
        SuiteName::Representation,
        SuiteName::Karoubi,
        SuiteName::Fundamental,
        SuiteName::Obstruction,
        SuiteName::All,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Paper => "paper",
            SuiteName::Clone => "clone",
            SuiteName::Lambda => "lambda",
            SuiteName::Representation => "representation",
            SuiteName::Karoubi => "karoubi",
            SuiteName::Fundamental => "fundamental",
            SuiteName::Obstruction => "obstruction",
            SuiteName::All => "all",
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        SuiteName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub fuel: usize,
    pub eta: bool,
    /// Enumerate finite clones instead of sampling them.
    pub exhaustive_finite: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            fuel: crate::term::DEFAULT_FUEL,
            eta: false,
            exhaustive_finite: false,
        }
    }
}

impl SuiteConfig {
    pub fn reducer(&self) -> Reducer {
        Reducer::with_fuel(self.fuel).with_eta(self.eta)
    }

    fn rng(&self, salt: u64) -> SuiteRng {
        suite_rng(self.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(salt))
    }

    fn closed(&self) -> Algebra {
        Algebra::closed_terms().with_reducer(self.reducer())
    }

    fn lambda(&self) -> SyntacticTheory {
        initial_lambda_theory().with_reducer(self.reducer())
    }
}

pub fn run_suite(name: SuiteName, cfg: &SuiteConfig) -> Result<SuiteReport, Error> {
    let records = match name {
        SuiteName::Paper => paper_suite(cfg)?,
        SuiteName::Clone => clone_suite(cfg)?,
        SuiteName::Lambda => lambda_suite(cfg)?,
        SuiteName::Representation => representation_suite(cfg)?,
        SuiteName::Karoubi => karoubi_suite(cfg)?,
        SuiteName::Fundamental => fundamental_suite(cfg)?,
        SuiteName::Obstruction => obstruction_records(4),
        SuiteName::All => {
            let mut all = Vec::new();
            for n in &SuiteName::ALL[..7] {
                all.extend(run_suite(*n, cfg)?.records);
            }
            all
        }
    };
    Ok(SuiteReport::new(name.as_str(), cfg.seed, cfg.fuel, cfg.eta, records))
}

fn prefixed(prefix: &str, records: impl IntoIterator<Item = CheckRecord>) -> Vec<CheckRecord> {
    fn go(prefix: &str, mut r: CheckRecord) -> CheckRecord {
        r.id = format!("{prefix}.{}", r.id);
        r.details = r.details.into_iter().map(|d| go(prefix, d)).collect();
        r
    }
    records.into_iter().map(|r| go(prefix, r)).collect()
}

fn record_eq(fam: &mut Family, al: &Algebra, lhs: &AlgebraElement, rhs: &AlgebraElement) {
    let (v, steps) = al.eq_counted(lhs, rhs);
    fam.record(v, steps, || vec![al.show(lhs), al.show(rhs)]);
}

fn record_elem<T: Theory>(fam: &mut Family, theory: &T, sides: Result<(Elem<T>, Elem<T>), Error>, show: String) {
    match sides {
        Ok((l, r)) => {
            let (v, steps) = theory.element_eq(&l, &r);
            fam.record(v, steps, || vec![show]);
        }
        Err(e) => fam.record(e.verdict(), 0, || vec![show, e.to_string()]),
    }
}

/// The value of `r`, or a recorded failure: Unknown when a membership
/// check ran out of fuel, Distinct otherwise.
fn attempt<T>(fam: &mut Family, r: Result<T, Error>) -> Option<T> {
    match r {
        Ok(x) => Some(x),
        Err(e) => {
            fam.record(e.verdict(), 0, || vec![e.to_string()]);
            None
        }
    }
}

fn absorb(fam: &mut Family, records: &[CheckRecord]) {
    for r in records {
        let v = match r.verdict {
            Verdict::Equal => crate::EqVerdict::Equal,
            Verdict::Distinct => crate::EqVerdict::Distinct,
            Verdict::Unknown => crate::EqVerdict::Unknown { steps: r.steps },
        };
        fam.record(v, r.steps, || r.instance.clone());
    }
}

// ---------------------------------------------------------------------------
// paper

/// The displayed identities, one record each.
pub fn paper_suite(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>, Error> {
    let lam = cfg.lambda().with_gen(TermGen::affine(12));
    let al = cfg.closed();
    let r = cfg.reducer();
    let mut out = Vec::new();

    // (a) ρ(λs) = s
    let mut rng = cfg.rng(1);
    let mut a = Family::new("paper.a.retraction", "(λz.s)z = s for s ∈ Λ(n+1), n ≤ 3");
    for n in 0..=3 {
        for _ in 0..10 {
            let s = lam.sample(&mut rng, n + 1);
            let sides = lam.lam(&s).and_then(|l| Ok((lam.rho(&l)?, s.clone())));
            record_elem(&mut a, &lam, sides, lam.show(&s));
        }
    }
    out.push(a.finish());

    // (b) s = app_n(λⁿs, z⃗)
    let mut b = Family::new("paper.b.abstraction", "s = app_n(λⁿs, z₁ … zₙ) for n ≤ 3");
    for n in 0..=3 {
        for _ in 0..10 {
            let s = lam.sample(&mut rng, n);
            let sides = (|| {
                let closed = lam.weaken(&lam.lam_times(&s, n)?, n)?;
                let mut args = vec![closed];
                args.extend(lam.projections(n));
                Ok((lam.compose(&lam.app_n(n), &args)?, s.clone()))
            })();
            record_elem(&mut b, &lam, sides, lam.show(&s));
        }
    }
    out.push(b.finish());

    // (c) (λx.xab)T → a, (λx.xab)F → b, in context a, b
    let (va, vb) = (Term::ctx_var(2, 0), Term::ctx_var(2, 1));
    let pair_ab = Term::lam(Term::apps(Term::var(0), [va.weaken(1), vb.weaken(1)]));
    for (id, sel, want) in [("paper.c.fst", church_true(), &va), ("paper.c.snd", church_false(), &vb)] {
        let t = Term::app(pair_ab.clone(), sel);
        let (v, steps) = r.eq_counted(&t, want);
        out.push(
            CheckRecord::single(id, "(λx. xab)T = a and (λx. xab)F = b", v, steps)
                .with_instance(vec![print(&t, &["a", "b"]), print(want, &["a", "b"])]),
        );
    }

    // (d) p∘s = b₁, q∘s = b₂
    let mut rng = cfg.rng(4);
    let mut d = Family::new("paper.d.product", "p∘s = b₁ and q∘s = b₂ for s = λw. λx. x(b₁w)(b₂w)");
    let i = al.combinator("I");
    let mut pairs = vec![(i.clone(), i.clone())];
    pairs.extend((0..50).map(|_| (al.sample_retract(&mut rng, 1), al.sample_retract(&mut rng, 1))));
    for (b1, b2) in &pairs {
        if let Some(w) = attempt(&mut d, product_witnesses(&al, b1, b2)) {
            absorb(&mut d, &w.checks);
        }
    }
    out.push(d.finish());

    // (e) both round trips
    let mut rng = cfg.rng(5);
    let mut e1 = Family::new("paper.e.roundtrip.d", "λyz. φ(p, q)(λx. xyz) = λyz. dyz = d");
    let mut e2 = Family::new("paper.e.roundtrip.phi", "φ_d(a, b) = φ(a, b) for d = d_of(φ)");
    let mut gens = vec![al.combinator("one_2")];
    gens.extend((0..20).map(|_| al.sample_retract(&mut rng, 2)));
    for g in &gens {
        let Some(phi) = attempt(&mut e1, phi_of(&al, g)) else { continue };
        record_eq(&mut e1, &al, &d_of(&al, &phi), g);
        let Some(back) = attempt(&mut e2, phi_of(&al, &d_of(&al, &phi))) else { continue };
        for _ in 0..3 {
            let (x, y) = (al.sample_retract(&mut rng, 1), al.sample_retract(&mut rng, 1));
            record_eq(&mut e2, &al, &back.apply(&x, &y), &phi.apply(&x, &y));
        }
    }
    out.push(e1.finish());
    out.push(e2.finish());

    // (f) λy. d(Iy)(ay) = λy. dy(ay)
    let mut rng = cfg.rng(6);
    let mut f = Family::new("paper.f.evaluation", "λy. d(Iy)(ay) = λy. dy(ay)");
    for _ in 0..20 {
        let dd = al.sample_retract(&mut rng, 2);
        let x = al.sample_retract(&mut rng, 1);
        let Some(phi) = attempt(&mut f, phi_of(&al, &dd)) else { continue };
        let Some(rhs) = attempt(&mut f, evaluation(&al, &dd, std::slice::from_ref(&x))) else { continue };
        record_eq(&mut f, &al, &phi.apply(&i, &x), &rhs);
    }
    out.push(f.finish());

    // (g) (λx.a)I = a
    let mut rng = cfg.rng(7);
    let mut g = Family::new("paper.g.triangle", "(λx. a)I = a");
    let mut closed = vec![i.clone(), al.tag_trusted(Term::app(theta(), i.term().clone()))];
    closed.extend((0..20).map(|_| al.sample(&mut rng, false)));
    for c in &closed {
        let lhs = al.apply(&al.tag_trusted(Term::lam(c.term().weaken(1))), &i);
        record_eq(&mut g, &al, &lhs, c);
    }
    out.push(g.finish());

    // (h) (λy. ay(by))I = aI(bI)
    let mut rng = cfg.rng(8);
    let mut h = Family::new("paper.h.eps_app", "(λy. ay(by))I = aI(bI)");
    for _ in 0..20 {
        let (x, y) = (al.sample_fixed(&mut rng, 0), al.sample_fixed(&mut rng, 0));
        let xy = al.tag_trusted(Term::lam(Term::app(
            Term::app(x.term().weaken(1), Term::var(0)),
            Term::app(y.term().weaken(1), Term::var(0)),
        )));
        let lhs = al.apply(&xy, &i);
        let rhs = al.apply(&al.apply(&x, &i), &al.apply(&y, &i));
        record_eq(&mut h, &al, &lhs, &rhs);
    }
    out.push(h.finish());

    // (i) Θf = f(Θf) within 50 steps, f free
    let fvar = Term::ctx_var(1, 0);
    let tf = Term::app(theta(), fvar.clone());
    let ftf = Term::app(fvar, tf.clone());
    let (v, steps) = Reducer::with_fuel(50.min(cfg.fuel)).with_eta(cfg.eta).eq_counted(&tf, &ftf);
    out.push(
        CheckRecord::single("paper.i.fixed_point", "Θf = f(Θf)", v, steps)
            .with_instance(vec![print(&tf, &["f"]), print(&ftf, &["f"])]),
    );
    Ok(out)
}

// ---------------------------------------------------------------------------
// clone

/// `Λ_{Λ(0)}` with a few constants standing for random closed terms.
fn closed_extension(cfg: &SuiteConfig) -> Result<SyntacticTheory, Error> {
    let mut rng = cfg.rng(20);
    let gen = TermGen::affine(8);
    let defs: Vec<(String, Term)> = (0..4).map(|j| (format!("c{j}"), gen.normal_term(&mut rng, 0))).collect();
    let refs: Vec<(&str, Term)> = defs.iter().map(|(n, t)| (n.as_str(), t.clone())).collect();
    let alg = Algebra::with_definitions("closed", &refs)?;
    Ok(lambda_extension_theory(&alg)?.with_reducer(cfg.reducer()))
}

pub fn clone_suite(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>, Error> {
    let endo2 = finite_endo_theory(2)?;
    let budget = if cfg.exhaustive_finite {
        Budget::Exhaustive
    } else {
        Budget::Sampled { samples: 500, seed: cfg.seed }
    };
    let mut out = prefixed("clone", check_clone_laws(&endo2, 2, budget).laws);
    let sampled = Budget::Sampled { samples: 500, seed: cfg.seed };
    out.extend(prefixed("clone", check_clone_laws(&cfg.lambda(), 3, sampled).laws));
    out.extend(prefixed("clone", check_clone_laws(&closed_extension(cfg)?, 3, sampled).laws));
    Ok(out)
}

// ---------------------------------------------------------------------------
// lambda

pub fn lambda_suite(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>, Error> {
    let lam = cfg.lambda();
    let mut out = Vec::new();
    let raw = |t: &Term, n: usize| lam.element(n, t.clone()).expect("scoped redex");
    let cert = check_interpreter(&lam, 1000, &TermGen::sized(25), &mut cfg.rng(30), Some(&raw));
    out.extend(cert.records);
    out.extend(check_lambda_laws(&lam, 3, 200, &mut cfg.rng(31)).records);
    let ext = closed_extension(cfg)?;
    out.extend(check_lambda_laws(&ext, 3, 200, &mut cfg.rng(32)).records);

    let affine = lam.clone().with_gen(TermGen::affine(10));
    out.extend(eta_theory_map(&affine, 200, &mut cfg.rng(33)).records);
    let include = |a: &Elem<SyntacticTheory>| ext.element(a.arity(), a.payload().clone());
    out.extend(check_theory_map("inclusion", &include, &lam, &ext, 200, &mut cfg.rng(34)).records);
    Ok(prefixed("lambda", out))
}

// ---------------------------------------------------------------------------
// representation

pub fn representation_suite(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>, Error> {
    let al = cfg.closed();
    let u = endo_lambda_theory(&al)?;
    let mut out = Vec::new();

    // the U_A formulas are only trusted once they agree with evaluation
    let oracle = u.validate_composition(200, &mut cfg.rng(40));
    let oracle_ok = oracle.verdict == Verdict::Equal;
    out.push(oracle);
    if oracle_ok {
        let budget = Budget::Sampled { samples: 200, seed: cfg.seed };
        out.extend(check_clone_laws(&u, 3, budget).laws);
        out.extend(check_lambda_laws(&u, 2, 200, &mut cfg.rng(41)).records);
    }

    let mut rng = cfg.rng(42);
    let mut rt1 = Family::new("roundtrip.d", "d_of(phi_of(d)) = d");
    let mut equi = Family::new("equivariance", "φ(a∘c, b∘c) = φ(a, b)∘c");
    for _ in 0..200 {
        let d = al.sample_retract(&mut rng, 2);
        let Some(phi) = attempt(&mut rt1, phi_of(&al, &d)) else { continue };
        record_eq(&mut rt1, &al, &d_of(&al, &phi), &d);
        let (x, y, c) = (
            al.sample_retract(&mut rng, 1),
            al.sample_retract(&mut rng, 1),
            al.sample_retract(&mut rng, 1),
        );
        let (v, steps) = equivariance(&al, &phi, &x, &y, &c);
        equi.record(v, steps, || vec![al.show(&d), al.show(&x), al.show(&y), al.show(&c)]);
    }
    out.push(rt1.finish());
    out.push(equi.finish());

    // procedural φ: hidden generators, and the same followed by some g ∈ M
    let mut rng = cfg.rng(43);
    let mut rt2 = Family::new("roundtrip.phi", "phi_of(d_of(φ))(a, b) = φ(a, b)");
    for k in 0..50 {
        let Some(hidden) = attempt(&mut rt2, phi_of(&al, &al.sample_retract(&mut rng, 2))) else { continue };
        let phi = if k % 2 == 0 {
            EquivariantMap::procedural({
                let h = hidden.clone();
                move |a, b| h.apply(a, b)
            })
        } else {
            let g = al.sample_retract(&mut rng, 1);
            let alg = al.clone();
            EquivariantMap::procedural(move |a, b| alg.tag_trusted(compose_closed(g.term(), hidden.apply(a, b).term())))
        };
        let Some(back) = attempt(&mut rt2, phi_of(&al, &d_of(&al, &phi))) else { continue };
        for _ in 0..10 {
            let (x, y) = (al.sample_retract(&mut rng, 1), al.sample_retract(&mut rng, 1));
            record_eq(&mut rt2, &al, &back.apply(&x, &y), &phi.apply(&x, &y));
        }
    }
    out.push(rt2.finish());

    let mut rng = cfg.rng(44);
    let mut prod = Family::new("product", "p∘s = b₁, q∘s = b₂ and the mediating map");
    let mut term = Family::new("terminal", "(λx. I)∘b = λx. I");
    let m = monoid_of(&al);
    let f = AlgebraMap::identity(&al);
    for _ in 0..50 {
        let (a1, a2, c) = (
            al.sample_retract(&mut rng, 1),
            al.sample_retract(&mut rng, 1),
            al.sample_retract(&mut rng, 1),
        );
        let (b1, b2) = (m.mul(&a1, &c), m.mul(&a2, &c));
        let Some(w) = attempt(&mut prod, product_witnesses(&al, &b1, &b2)) else { continue };
        absorb(&mut prod, &w.checks);
        if let Some((_, checks)) = attempt(&mut prod, w.mediate(&al, &al, &f, &c, &a1, &a2)) {
            absorb(&mut prod, &checks);
        }
        absorb(&mut term, &[terminal_witness(&al, &b1)]);
    }
    out.push(prod.finish());
    out.push(term.finish());

    let mut rng = cfg.rng(45);
    let mut refl = Family::new("reflexive", "𝟙∘(𝟙∘d) = 𝟙∘d, and 𝟙∘d = d exactly on A(2)");
    for _ in 0..100 {
        let d = if rng.gen_bool(0.5) {
            al.sample_retract(&mut rng, 2)
        } else {
            al.sample_retract(&mut rng, 1)
        };
        let (idem, fixes, member) = reflexive_retract(&al, &d);
        let agree = if fixes.is_unknown() || member.is_unknown() {
            crate::EqVerdict::Unknown { steps: 0 }
        } else if fixes.is_equal() == member.is_equal() {
            crate::EqVerdict::Equal
        } else {
            crate::EqVerdict::Distinct
        };
        refl.record(idem.and(agree), 0, || vec![al.show(&d)]);
    }
    out.push(refl.finish());

    // U of the inclusion Λ(0) → Λ(1)
    if oracle_ok {
        let dst = Algebra::free(1).with_reducer(cfg.reducer());
        let inc = AlgebraMap::from_fn("inclusion", &al, &dst, Term::clone);
        let mut rng = cfg.rng(46);
        let hom = crate::algebra::check_hom(&inc, &al, &dst, 50, &mut rng);
        out.extend(hom.records());
        let ub = endo_lambda_theory(&dst)?;
        let uf = u_functor_map(&inc, &ub);
        out.extend(check_theory_map("U.inclusion", &uf, &u, &ub, 100, &mut rng).records);
    }
    Ok(prefixed("representation", out))
}

// ---------------------------------------------------------------------------
// karoubi

pub fn karoubi_suite(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>, Error> {
    let mut roster = Family::new("karoubi.roster", "every roster object and structure map certified");
    let records = attempt(&mut roster, ccc_law_suite(&cfg.closed(), 40, &mut cfg.rng(50)));
    Ok(records.unwrap_or_else(|| vec![roster.finish()]))
}

// ---------------------------------------------------------------------------
// fundamental

pub fn fundamental_suite(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>, Error> {
    let lam = cfg.lambda();
    let affine = lam.clone().with_gen(TermGen::affine(10));
    let mut out = triangle_check(&lam, 200, &mut cfg.rng(60));
    out.extend(iso_witness(&lam, 3, 50, &mut cfg.rng(61)).certificate.records);
    out.extend(eps_checks(&endo_of(&lam), 100, &mut cfg.rng(62)));
    let a = cfg.closed();
    let b = Algebra::free(1).with_reducer(cfg.reducer());
    let id = AlgebraMap::identity(&a);
    let inc = AlgebraMap::from_fn("inclusion", &a, &b, Term::clone);
    let mut rng = cfg.rng(63);
    for (f, target) in [(&id, &a), (&inc, &b)] {
        let hom = crate::algebra::check_hom(f, &a, target, 30, &mut rng);
        out.extend(prefixed("fundamental", hom.records()));
        out.push(naturality_check(f, &a, target, 100, &mut rng)?);
    }
    out.push(eta_injective(&affine, 200, &mut cfg.rng(64)));
    out.extend(prefixed("fundamental", eta_theory_map(&affine, 200, &mut cfg.rng(65)).records));
    // the abstraction 𝟙 as an η-image: η(𝟙) = λx. 𝟙
    let one = lam.one();
    let u = endo_of(&lam);
    let mut fam = Family::new("fundamental.eta.one", "η(𝟙) = 𝟙");
    if let Some(e) = attempt(&mut fam, crate::fundamental::eta(&u, &one)) {
        let (v, steps) = u.element_eq(&e, &u.one());
        fam.record(v, steps, || vec![u.show(&e)]);
    }
    out.push(fam.finish());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for n in SuiteName::ALL {
            assert_eq!(n.as_str().parse::<SuiteName>().unwrap(), n);
        }
        assert!("nope".parse::<SuiteName>().is_err());
    }

    #[test]
    fn paper_suite_passes() {
        let r = run_suite(SuiteName::Paper, &SuiteConfig::default()).unwrap();
        assert!(r.passed(), "{}", r.render_text());
        assert_eq!(r.records.len(), 11);
    }

    #[test]
    fn obstruction_suite() {
        let r = run_suite(SuiteName::Obstruction, &SuiteConfig::default()).unwrap();
        assert!(r.passed());
    }
}
