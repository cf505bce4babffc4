//! The category of retracts of the monoid `M_A`: idempotents as objects,
//! maps `v: e → f` with `f∘v∘e = v`, and a cartesian closed structure given
//! by combinators.

use rand::Rng;

use crate::algebra::{compose_closed, Algebra, AlgebraElement};
use crate::error::Error;
use crate::report::{CheckRecord, Family};
use crate::term::combinators::{church_false, church_true, identity, iterated_app};
use crate::term::{print_closed, EqVerdict, Term};
use crate::SuiteRng;

fn v(k: usize) -> Term {
    Term::Var(k)
}

fn verdict_to_result(v: EqVerdict, what: impl FnOnce() -> String) -> Result<(), Error> {
    match v {
        EqVerdict::Equal => Ok(()),
        EqVerdict::Distinct => Err(Error::NotMember(what())),
        EqVerdict::Unknown { .. } => Err(Error::Inconclusive(what())),
    }
}

/// An object: `e` with `e∘e = e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Idempotent {
    name: String,
    term: Term,
}

impl Idempotent {
    pub fn new(algebra: &Algebra, name: &str, term: Term) -> Result<Idempotent, Error> {
        let e = algebra.element(term)?;
        let ee = algebra.tag_trusted(compose_closed(e.term(), e.term()));
        verdict_to_result(algebra.eq(&ee, &e), || format!("{name} is not idempotent"))?;
        Ok(Idempotent {
            name: name.to_string(),
            term: e.term().clone(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn term(&self) -> &Term {
        &self.term
    }
}

/// A map `v: source → target` of retracts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RetractMap {
    source: Idempotent,
    target: Idempotent,
    term: Term,
}

impl RetractMap {
    /// Checks `f∘v∘e = v`.
    pub fn new(algebra: &Algebra, source: &Idempotent, target: &Idempotent, term: Term) -> Result<RetractMap, Error> {
        let m = RetractMap {
            source: source.clone(),
            target: target.clone(),
            term,
        };
        let conj = algebra.tag_trusted(conjugate(&target.term, &m.term, &source.term));
        let vv = algebra.element(m.term.clone())?;
        verdict_to_result(algebra.eq(&conj, &vv), || {
            format!("{} is not a map {} → {}", print_closed(&m.term), source.name, target.name)
        })?;
        Ok(m)
    }

    /// `f∘w∘e`, a map for any `w`.
    pub fn conjugated(source: &Idempotent, target: &Idempotent, w: &Term) -> RetractMap {
        RetractMap {
            source: source.clone(),
            target: target.clone(),
            term: conjugate(&target.term, w, &source.term),
        }
    }

    pub fn identity(e: &Idempotent) -> RetractMap {
        RetractMap {
            source: e.clone(),
            target: e.clone(),
            term: e.term.clone(),
        }
    }

    pub fn source(&self) -> &Idempotent {
        &self.source
    }

    pub fn target(&self) -> &Idempotent {
        &self.target
    }

    pub fn term(&self) -> &Term {
        &self.term
    }
}

/// `f ∘ w ∘ e` as `λx. f (w (e x))`.
fn conjugate(f: &Term, w: &Term, e: &Term) -> Term {
    Term::lam(Term::app(f.clone(), Term::app(w.clone(), Term::app(e.clone(), v(0)))))
}

fn same_object(algebra: &Algebra, a: &Idempotent, b: &Idempotent) -> Result<(), Error> {
    if a.term == b.term {
        return Ok(());
    }
    let (x, y) = (algebra.tag_trusted(a.term.clone()), algebra.tag_trusted(b.term.clone()));
    match algebra.eq(&x, &y) {
        EqVerdict::Equal => Ok(()),
        _ => Err(Error::BoundaryMismatch(format!("{} vs {}", a.name, b.name))),
    }
}

/// `g ∘ v` for `v: e → f`, `g: f → h`.
pub fn compose_maps(algebra: &Algebra, g: &RetractMap, v: &RetractMap) -> Result<RetractMap, Error> {
    same_object(algebra, &v.target, &g.source)?;
    Ok(RetractMap {
        source: v.source.clone(),
        target: g.target.clone(),
        term: compose_closed(&g.term, &v.term),
    })
}

/// `e × f = λc. λx. x (e (c T)) (f (c F))` with its projections.
#[derive(Debug, Clone)]
pub struct ProductObject {
    pub left: Idempotent,
    pub right: Idempotent,
    pub object: Idempotent,
    pub fst: RetractMap,
    pub snd: RetractMap,
}

/// `λc. λx. x (a (c T)) (b (c F))`.
fn product_term(a: &Term, b: &Term) -> Term {
    let side = |t: &Term, sel: Term| Term::app(t.clone(), Term::app(v(1), sel));
    Term::lams(2, Term::apps(v(0), [side(a, church_true()), side(b, church_false())]))
}

/// `λz. λx. x (a z) (b z)`.
fn pairing_term(a: &Term, b: &Term) -> Term {
    Term::lams(2, Term::apps(v(0), [Term::app(a.clone(), v(1)), Term::app(b.clone(), v(1))]))
}

/// The product built from the pairing retract `(a, b) ↦ λx. xab`,
/// `c ↦ (cT, cF)`, conjugated by `e` and `f`.
pub fn product_object(algebra: &Algebra, e: &Idempotent, f: &Idempotent) -> Result<ProductObject, Error> {
    let name = format!("({}×{})", e.name, f.name);
    let object = Idempotent::new(algebra, &name, product_term(&e.term, &f.term))?;
    let fst = Term::lam(Term::app(e.term.clone(), Term::app(v(0), church_true())));
    let snd = Term::lam(Term::app(f.term.clone(), Term::app(v(0), church_false())));
    Ok(ProductObject {
        fst: RetractMap::new(algebra, &object, e, fst)?,
        snd: RetractMap::new(algebra, &object, f, snd)?,
        left: e.clone(),
        right: f.clone(),
        object,
    })
}

impl ProductObject {
    /// `⟨a, b⟩ = λz. λx. x (a z) (b z)`.
    pub fn pair(&self, algebra: &Algebra, a: &RetractMap, b: &RetractMap) -> Result<RetractMap, Error> {
        same_object(algebra, &a.target, &self.left)?;
        same_object(algebra, &b.target, &self.right)?;
        same_object(algebra, &a.source, &b.source)?;
        Ok(RetractMap {
            source: a.source.clone(),
            target: self.object.clone(),
            term: pairing_term(&a.term, &b.term),
        })
    }
}

/// `h × k` between products.
pub fn product_map(src: &ProductObject, dst: &ProductObject, h: &RetractMap, k: &RetractMap) -> RetractMap {
    RetractMap {
        source: src.object.clone(),
        target: dst.object.clone(),
        term: product_term(&h.term, &k.term),
    }
}

/// `e ⇒ f = λd. λz. f (d (e z))` with evaluation.
#[derive(Debug, Clone)]
pub struct ExponentialObject {
    pub domain: Idempotent,
    pub codomain: Idempotent,
    pub object: Idempotent,
    /// `(e ⇒ f) × e`.
    pub eval_source: ProductObject,
    pub eval: RetractMap,
}

pub fn exponential_object(algebra: &Algebra, e: &Idempotent, f: &Idempotent) -> Result<ExponentialObject, Error> {
    let name = format!("({}⇒{})", e.name, f.name);
    let body = Term::app(f.term.clone(), Term::app(v(1), Term::app(e.term.clone(), v(0))));
    let object = Idempotent::new(algebra, &name, Term::lams(2, body))?;
    let eval_source = product_object(algebra, &object, e)?;
    // f ∘ (λz. (zT)(zF)) ∘ ((e⇒f) × e)
    let apply_pair = Term::lam(Term::app(Term::app(v(0), church_true()), Term::app(v(0), church_false())));
    let eval_term = conjugate(&f.term, &apply_pair, &eval_source.object.term);
    let eval = RetractMap::new(algebra, &eval_source.object, f, eval_term)?;
    Ok(ExponentialObject {
        domain: e.clone(),
        codomain: f.clone(),
        object,
        eval_source,
        eval,
    })
}

impl ExponentialObject {
    /// `curry(v) = (e⇒f) ∘ (λz. λx. v (λp. p z x)) ∘ g` for `v: g × e → f`.
    pub fn curry(&self, algebra: &Algebra, g: &ProductObject, map: &RetractMap) -> Result<RetractMap, Error> {
        same_object(algebra, &g.right, &self.domain)?;
        same_object(algebra, &map.source, &g.object)?;
        same_object(algebra, &map.target, &self.codomain)?;
        let pair_zx = Term::lam(Term::apps(v(0), [v(2), v(1)]));
        let inner = Term::lams(2, Term::app(map.term.clone(), pair_zx));
        Ok(RetractMap::conjugated(&g.left, &self.object, &inner))
    }
}

/// The terminal object `λx. I`.
pub fn terminal(algebra: &Algebra) -> Idempotent {
    Idempotent::new(algebra, "1", Term::lam(identity())).expect("λx.I is idempotent")
}

/// Objects used by the law suite: `I`, `𝟙`, `𝟙₂`, `𝟙₃`, the terminal
/// object, all binary products and exponentials of these, and a selection
/// of depth-two objects.
pub fn roster(algebra: &Algebra) -> Result<Vec<Idempotent>, Error> {
    let base = vec![
        Idempotent::new(algebra, "I", identity())?,
        Idempotent::new(algebra, "𝟙", iterated_app(1))?,
        Idempotent::new(algebra, "𝟙₂", iterated_app(2))?,
        Idempotent::new(algebra, "𝟙₃", iterated_app(3))?,
        terminal(algebra),
    ];
    let mut objects = base.clone();
    for a in &base {
        for b in &base {
            objects.push(product_object(algebra, a, b)?.object);
            objects.push(exponential_object(algebra, a, b)?.object);
        }
    }
    let (i, one, one2) = (&base[0], &base[1], &base[2]);
    let one_one = product_object(algebra, one, one)?.object;
    let i_to_one = exponential_object(algebra, i, one)?.object;
    let depth2 = [
        product_object(algebra, &one_one, one2)?.object,
        product_object(algebra, &i_to_one, i)?.object,
        exponential_object(algebra, &one_one, one)?.object,
        exponential_object(algebra, one, &one_one)?.object,
        exponential_object(algebra, &i_to_one, &i_to_one)?.object,
    ];
    objects.extend(depth2);
    Ok(objects)
}

/// Constructors used by [`ccc_law_suite_with`]; replaced in mutation tests.
#[derive(Clone, Copy)]
pub struct CccStructure {
    pub product: fn(&Algebra, &Idempotent, &Idempotent) -> Result<ProductObject, Error>,
    pub exponential: fn(&Algebra, &Idempotent, &Idempotent) -> Result<ExponentialObject, Error>,
}

pub const STANDARD: CccStructure = CccStructure {
    product: product_object,
    exponential: exponential_object,
};

struct Laws<'a> {
    algebra: &'a Algebra,
    fams: Vec<Family>,
}

impl Laws<'_> {
    fn fam(&mut self, id: &str, law: &str) -> usize {
        if let Some(i) = self.fams.iter().position(|f| f.id() == id) {
            return i;
        }
        self.fams.push(Family::new(id, law));
        self.fams.len() - 1
    }

    fn eq(&mut self, id: &str, law: &str, lhs: &Term, rhs: &Term, context: &str) {
        let i = self.fam(id, law);
        let (l, r) = (self.algebra.tag_trusted(lhs.clone()), self.algebra.tag_trusted(rhs.clone()));
        let (verdict, steps) = self.algebra.eq_counted(&l, &r);
        self.fams[i].record(verdict, steps, || vec![context.to_string(), print_closed(lhs), print_closed(rhs)]);
    }

    fn holds(&mut self, id: &str, law: &str, r: Result<(), Error>, context: &str) {
        let i = self.fam(id, law);
        let v = match &r {
            Ok(()) => EqVerdict::Equal,
            Err(e) => e.verdict(),
        };
        self.fams[i].record(v, 0, || vec![context.to_string(), format!("{r:?}")]);
    }
}

/// A random map `e → f`, conjugating an affine normal element.
fn sample_map(algebra: &Algebra, rng: &mut SuiteRng, e: &Idempotent, f: &Idempotent) -> RetractMap {
    let w = algebra.sample_retract(rng, 1);
    RetractMap::conjugated(e, f, w.term())
}

fn hom_check(algebra: &Algebra, m: &RetractMap) -> Result<(), Error> {
    RetractMap::new(algebra, &m.source, &m.target, m.term.clone()).map(|_| ())
}

/// Category, product, exponential and terminal laws over the depth-two
/// roster with `samples` seeded maps per check.
pub fn ccc_law_suite(algebra: &Algebra, samples: usize, rng: &mut SuiteRng) -> Result<Vec<CheckRecord>, Error> {
    ccc_law_suite_with(algebra, STANDARD, samples, rng)
}

pub fn ccc_law_suite_with(algebra: &Algebra, s: CccStructure, samples: usize, rng: &mut SuiteRng) -> Result<Vec<CheckRecord>, Error> {
    let objects = roster(algebra)?;
    let mut laws = Laws { algebra, fams: Vec::new() };
    let one = terminal(algebra);
    let pick = |rng: &mut SuiteRng| objects[rng.gen_range(0..objects.len())].clone();

    for obj in &objects {
        let e = algebra.tag_trusted(obj.term.clone());
        let ee = algebra.tag_trusted(compose_closed(&obj.term, &obj.term));
        laws.eq("karoubi.object.idempotent", "e∘e = e", ee.term(), e.term(), &obj.name);
    }

    for _ in 0..samples {
        let (e, f, g, h) = (pick(rng), pick(rng), pick(rng), pick(rng));
        let ctx = format!("{} {} {} {}", e.name, f.name, g.name, h.name);
        let v1 = sample_map(algebra, rng, &e, &f);
        let v2 = sample_map(algebra, rng, &f, &g);
        let v3 = sample_map(algebra, rng, &g, &h);
        laws.holds("karoubi.map.hom", "f∘v∘e = v", hom_check(algebra, &v1), &ctx);

        // identities and associativity
        let left = compose_maps(algebra, &RetractMap::identity(&f), &v1)?;
        let right = compose_maps(algebra, &v1, &RetractMap::identity(&e))?;
        laws.eq("karoubi.category.identity", "f∘v = v = v∘e", left.term(), v1.term(), &ctx);
        laws.eq("karoubi.category.identity", "f∘v = v = v∘e", right.term(), v1.term(), &ctx);
        let a = compose_maps(algebra, &compose_maps(algebra, &v3, &v2)?, &v1)?;
        let b = compose_maps(algebra, &v3, &compose_maps(algebra, &v2, &v1)?)?;
        laws.eq("karoubi.category.assoc", "(h∘g)∘v = h∘(g∘v)", a.term(), b.term(), &ctx);
        laws.holds("karoubi.category.compose_hom", "h∘(g∘v)∘e = g∘v", hom_check(algebra, &b), &ctx);

        // products: e × f with maps from g
        let p = (s.product)(algebra, &e, &f)?;
        let a1 = sample_map(algebra, rng, &g, &e);
        let a2 = sample_map(algebra, rng, &g, &f);
        let paired = p.pair(algebra, &a1, &a2)?;
        laws.holds("karoubi.product.pair_hom", "⟨a, b⟩ is a map g → e×f", hom_check(algebra, &paired), &ctx);
        let l = compose_maps(algebra, &p.fst, &paired)?;
        laws.eq("karoubi.product.fst", "fst∘⟨a, b⟩ = a", l.term(), a1.term(), &ctx);
        let r = compose_maps(algebra, &p.snd, &paired)?;
        laws.eq("karoubi.product.snd", "snd∘⟨a, b⟩ = b", r.term(), a2.term(), &ctx);
        let hmap = sample_map(algebra, rng, &g, &p.object);
        let again = p.pair(
            algebra,
            &compose_maps(algebra, &p.fst, &hmap)?,
            &compose_maps(algebra, &p.snd, &hmap)?,
        )?;
        laws.eq("karoubi.product.unique", "⟨fst∘h, snd∘h⟩ = h", again.term(), hmap.term(), &ctx);
        let c = algebra.tag_trusted(Term::app(p.object.term.clone(), algebra.sample_retract(rng, 1).term().clone()));
        let split = Term::lam(Term::apps(
            v(0),
            [
                Term::app(p.fst.term.clone(), c.term().clone()),
                Term::app(p.snd.term.clone(), c.term().clone()),
            ],
        ));
        laws.eq("karoubi.product.surjective", "λx. x (fst c) (snd c) = c for fixed c", &split, c.term(), &ctx);

        // exponentials: v: g × e → f and curry
        let x = (s.exponential)(algebra, &e, &f)?;
        let ge = (s.product)(algebra, &g, &e)?;
        let vmap = sample_map(algebra, rng, &ge.object, &f);
        let cur = x.curry(algebra, &ge, &vmap)?;
        laws.holds("karoubi.exponential.curry_hom", "curry(v) is a map g → e⇒f", hom_check(algebra, &cur), &ctx);
        laws.holds("karoubi.exponential.eval_hom", "eval is a map (e⇒f)×e → f", hom_check(algebra, &x.eval), &ctx);
        let cur_x_id = product_map(&ge, &x.eval_source, &cur, &RetractMap::identity(&e));
        let lhs = compose_maps(algebra, &x.eval, &cur_x_id)?;
        laws.eq("karoubi.exponential.beta", "eval∘(curry(v)×e) = v", lhs.term(), vmap.term(), &ctx);
        // uniqueness, conditionally on candidates satisfying the equation
        let candidates = [
            compose_maps(algebra, &RetractMap::identity(&x.object), &cur)?,
            compose_maps(algebra, &cur, &RetractMap::identity(&g))?,
            RetractMap::conjugated(&g, &x.object, &Term::lam(Term::app(cur.term.clone(), v(0)))),
            sample_map(algebra, rng, &g, &x.object),
        ];
        for w in &candidates {
            let wx = product_map(&ge, &x.eval_source, w, &RetractMap::identity(&e));
            let lhs = compose_maps(algebra, &x.eval, &wx)?;
            let premise = algebra.eq(&algebra.tag_trusted(lhs.term.clone()), &algebra.tag_trusted(vmap.term.clone()));
            if premise.is_equal() {
                let conj = compose_closed(&x.object.term, &w.term);
                laws.eq("karoubi.exponential.unique", "eval∘(w×e) = v implies (e⇒f)∘w = curry(v)", &conj, cur.term(), &ctx);
            }
        }

        // terminal: every map into 1 is λx.I
        let bang = sample_map(algebra, rng, &e, &one);
        laws.eq("karoubi.terminal.unique", "v: e → 1 equals λx.I", bang.term(), &one.term, &ctx);
    }

    // the identity idempotent's exponential and A(2)
    let i = Idempotent::new(algebra, "I", identity())?;
    let ii = (s.exponential)(algebra, &i, &i)?;
    let one_c = algebra.tag_trusted(iterated_app(1));
    laws.eq("karoubi.exponential.reflexive", "I⇒I = 𝟙", &ii.object.term, one_c.term(), "I I");
    for _ in 0..samples {
        let d: AlgebraElement = if rng.gen_bool(0.5) {
            algebra.sample_retract(rng, 2)
        } else {
            algebra.sample_retract(rng, 1)
        };
        let conj = algebra.tag_trusted(conjugate(&ii.object.term, d.term(), &i.term));
        let is_map = algebra.eq(&conj, &d);
        let member = crate::algebra::retract_an(algebra, 2).contains(&d);
        let agree = if is_map.is_unknown() || member.is_unknown() {
            EqVerdict::Unknown { steps: 0 }
        } else if is_map.is_equal() == member.is_equal() {
            EqVerdict::Equal
        } else {
            EqVerdict::Distinct
        };
        let idx = laws.fam("karoubi.exponential.a2", "maps I → I⇒I are exactly A(2)");
        laws.fams[idx].record(agree, 0, || vec![algebra.show(&d)]);
    }
    Ok(laws.fams.into_iter().map(Family::finish).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;
    use crate::suite_rng;
    use crate::term::{combinator, parse};

    fn alg() -> Algebra {
        Algebra::closed_terms()
    }

    #[test]
    fn pairing_retract_at_identity() {
        let a = alg();
        let one = Idempotent::new(&a, "𝟙", combinator("one").unwrap()).unwrap();
        let i = Idempotent::new(&a, "I", identity()).unwrap();
        let p = product_object(&a, &i, &i).unwrap();
        let r = crate::Reducer::default();
        let pair_ab = parse("\\x. x #a #b").unwrap();
        let fst_ab = Term::app(p.fst.term().clone(), pair_ab.clone());
        assert_eq!(r.normalize_full(&fst_ab).into_term(), Term::inert("a"));
        let snd_ab = Term::app(p.snd.term().clone(), pair_ab);
        assert_eq!(r.normalize_full(&snd_ab).into_term(), Term::inert("b"));
        assert!(product_object(&a, &one, &one).is_ok());
    }

    #[test]
    fn non_idempotent_rejected() {
        let a = alg();
        assert!(Idempotent::new(&a, "K", combinator("K").unwrap()).is_err());
        let i = Idempotent::new(&a, "I", identity()).unwrap();
        let t = terminal(&a);
        // K is not a map 1 → I: I∘K∘(λx.I) = λx.λy.I
        assert!(RetractMap::new(&a, &t, &i, combinator("K").unwrap()).is_err());
        let one = Idempotent::new(&a, "𝟙", combinator("one").unwrap()).unwrap();
        let v = RetractMap::identity(&one);
        let w = RetractMap::identity(&i);
        assert!(matches!(compose_maps(&a, &w, &v), Err(Error::BoundaryMismatch(_))));
    }

    #[test]
    fn curry_eval_on_application() {
        // v = application: eval itself, curried, is the identity of e⇒f
        let a = alg();
        let one = Idempotent::new(&a, "𝟙", combinator("one").unwrap()).unwrap();
        let x = exponential_object(&a, &one, &one).unwrap();
        let cur = x.curry(&a, &x.eval_source, &x.eval).unwrap();
        let id = a.tag_trusted(x.object.term().clone());
        assert!(a.eq(&a.tag_trusted(cur.term().clone()), &id).is_equal());
    }

    #[test]
    fn small_law_suite() {
        let a = alg();
        let recs = ccc_law_suite(&a, 20, &mut suite_rng(0)).unwrap();
        for r in &recs {
            assert_eq!(r.verdict, Verdict::Equal, "{r:#?}");
        }
        assert!(recs.iter().any(|r| r.id == "karoubi.exponential.unique"));
    }

    fn broken_product(alg: &Algebra, e: &Idempotent, f: &Idempotent) -> Result<ProductObject, Error> {
        let mut p = product_object(alg, e, f)?;
        // fst projects with F instead of T
        p.fst = RetractMap::conjugated(&p.object, e, &Term::lam(Term::app(v(0), church_false())));
        Ok(p)
    }

    #[test]
    fn mutated_fst_is_reported() {
        let a = alg();
        let s = CccStructure {
            product: broken_product,
            ..STANDARD
        };
        let recs = ccc_law_suite_with(&a, s, 10, &mut suite_rng(0)).unwrap();
        let fst = recs.iter().find(|r| r.id == "karoubi.product.fst").unwrap();
        assert_eq!(fst.verdict, Verdict::Distinct);
    }
}
