//! Algebraic theories as abstract clones.
//!
//! A theory has sets `T(n)` of `n`-ary operations, projections, and a
//! substitution-style composition `T(n) × T(m)ⁿ → T(m)`. Renaming along maps
//! of finite sets makes each theory a functor on finite ordinals.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::Error;
use crate::report::{CheckRecord, Family, Tally};
use crate::term::gen::TermGen;
use crate::term::{print, subst_unchecked, EqVerdict, Reducer, Term};
use crate::SuiteRng;

/// An element of `T(n)` tagged with the theory it belongs to.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TheoryElement<P> {
    theory_id: Arc<str>,
    arity: usize,
    payload: P,
}

impl<P> TheoryElement<P> {
    pub fn theory_id(&self) -> &str {
        &self.theory_id
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn payload(&self) -> &P {
        &self.payload
    }

    pub fn into_payload(self) -> P {
        self.payload
    }
}

impl<P: fmt::Debug> fmt::Debug for TheoryElement<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}):{:?}", self.theory_id, self.arity, self.payload)
    }
}

/// A map of finite ordinals `source → target`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinMap {
    source: usize,
    target: usize,
    images: Vec<usize>,
}

impl FinMap {
    pub fn new(target: usize, images: Vec<usize>) -> Result<FinMap, Error> {
        if let Some(bad) = images.iter().find(|&&i| i >= target) {
            return Err(Error::BadFinMap(format!("image {bad} not below {target}")));
        }
        Ok(FinMap {
            source: images.len(),
            target,
            images,
        })
    }

    pub fn identity(n: usize) -> FinMap {
        FinMap {
            source: n,
            target: n,
            images: (0..n).collect(),
        }
    }

    /// `i ↦ offset + i` from `n` into `target`.
    pub fn offset(n: usize, offset: usize, target: usize) -> FinMap {
        assert!(offset + n <= target);
        FinMap {
            source: n,
            target,
            images: (offset..offset + n).collect(),
        }
    }

    /// The inclusion `n ↪ m`, `i ↦ i`.
    pub fn inclusion(n: usize, m: usize) -> FinMap {
        FinMap::offset(n, 0, m)
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &FinMap) -> Result<FinMap, Error> {
        if g.source != self.target {
            return Err(Error::ArityMismatch {
                expected: self.target,
                found: g.source,
            });
        }
        FinMap::new(g.target, self.images.iter().map(|&i| g.images[i]).collect())
    }

    /// All maps `n → m`.
    pub fn all(n: usize, m: usize) -> Vec<FinMap> {
        if m == 0 {
            return if n == 0 { vec![FinMap::identity(0)] } else { Vec::new() };
        }
        tuples(m, n)
            .into_iter()
            .map(|images| FinMap { source: n, target: m, images })
            .collect()
    }

    pub fn random(rng: &mut impl Rng, n: usize, m: usize) -> Option<FinMap> {
        (m > 0 || n == 0).then(|| FinMap {
            source: n,
            target: m,
            images: (0..n).map(|_| rng.gen_range(0..m)).collect(),
        })
    }
}

/// Every length-`len` tuple over `0..base`, in lexicographic order.
fn tuples(base: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..base).map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}

pub type Elem<T> = TheoryElement<<T as Theory>::Payload>;

/// An algebraic theory presented by representatives.
pub trait Theory: Sync {
    type Payload: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn id(&self) -> &str;

    /// Validates a payload as an element of arity `arity`.
    fn element(&self, arity: usize, payload: Self::Payload) -> Result<Elem<Self>, Error>;

    fn proj(&self, n: usize, i: usize) -> Result<Elem<Self>, Error>;

    fn compose(&self, t: &Elem<Self>, args: &[Elem<Self>]) -> Result<Elem<Self>, Error>;

    /// Renaming along `f`. Must agree with `compose(t, [proj(m, f(i))])`
    /// whenever `n > 0`.
    fn rename(&self, t: &Elem<Self>, f: &FinMap) -> Result<Elem<Self>, Error>;

    /// Equality of representatives with the number of reduction steps spent.
    fn element_eq(&self, a: &Elem<Self>, b: &Elem<Self>) -> (EqVerdict, usize);

    /// All of `T(n)`, for finite theories of manageable size.
    fn enumerate(&self, _n: usize) -> Option<Vec<Elem<Self>>> {
        None
    }

    fn sample(&self, rng: &mut SuiteRng, n: usize) -> Elem<Self>;

    fn show(&self, e: &Elem<Self>) -> String;

    fn check(&self, e: &Elem<Self>) -> Result<(), Error> {
        if e.theory_id() != self.id() {
            return Err(Error::TheoryMismatch {
                expected: self.id().to_string(),
                found: e.theory_id().to_string(),
            });
        }
        Ok(())
    }

    /// `proj(n, 0) … proj(n, n-1)`.
    fn projections(&self, n: usize) -> Vec<Elem<Self>> {
        (0..n)
            .map(|i| self.proj(n, i).expect("projection in range"))
            .collect()
    }

    #[doc(hidden)]
    fn tag(&self, arity: usize, payload: Self::Payload) -> Elem<Self> {
        TheoryElement {
            theory_id: Arc::from(self.id()),
            arity,
            payload,
        }
    }
}

pub(crate) fn check_args<T: Theory + ?Sized>(
    theory: &T,
    t: &Elem<T>,
    args: &[Elem<T>],
) -> Result<usize, Error> {
    theory.check(t)?;
    if args.len() != t.arity() {
        return Err(Error::ArityMismatch {
            expected: t.arity(),
            found: args.len(),
        });
    }
    let m = match args.first() {
        Some(a) => a.arity(),
        None => return Ok(usize::MAX),
    };
    for a in args {
        theory.check(a)?;
        if a.arity() != m {
            return Err(Error::ArityMismatch {
                expected: m,
                found: a.arity(),
            });
        }
    }
    Ok(m)
}

// ---------------------------------------------------------------------------
// Finite endomorphism theories

pub const MAX_FINITE_CARRIER: usize = 4;
pub const MAX_FINITE_ARITY: usize = 3;
const MAX_ENUMERATION: u128 = 1 << 20;

/// The endomorphism theory of a finite set `X = {0, …, k-1}`: `T(n)` is all
/// functions `Xⁿ → X`, stored as dense tables indexed by the input tuple read
/// as a base-`k` numeral, first coordinate most significant.
#[derive(Debug, Clone)]
pub struct FiniteEndo {
    k: usize,
    id: String,
}

pub fn finite_endo_theory(k: usize) -> Result<FiniteEndo, Error> {
    if k == 0 {
        return Err(Error::EmptyCarrier);
    }
    if k > MAX_FINITE_CARRIER {
        return Err(Error::TooLarge { carrier: k, arity: 0 });
    }
    Ok(FiniteEndo {
        k,
        id: format!("endo{k}"),
    })
}

impl FiniteEndo {
    pub fn carrier(&self) -> usize {
        self.k
    }

    /// `|T(n)| = k^(kⁿ)`, when it fits.
    pub fn cardinality(&self, n: usize) -> Option<u128> {
        let entries = u32::try_from(self.k.checked_pow(u32::try_from(n).ok()?)?).ok()?;
        (self.k as u128).checked_pow(entries)
    }

    fn rows(&self, n: usize) -> usize {
        self.k.pow(n as u32)
    }

    fn encode(&self, inputs: impl Iterator<Item = u8>) -> usize {
        inputs.fold(0, |acc, x| acc * self.k + x as usize)
    }

    fn decode(&self, n: usize, mut idx: usize) -> Vec<u8> {
        let mut out = vec![0u8; n];
        for slot in out.iter_mut().rev() {
            *slot = (idx % self.k) as u8;
            idx /= self.k;
        }
        out
    }

    /// Evaluates a table on one input tuple.
    pub fn eval(&self, t: &Elem<Self>, inputs: &[u8]) -> u8 {
        t.payload()[self.encode(inputs.iter().copied())]
    }

    /// Builds an element from a function on tuples.
    pub fn tabulate(&self, n: usize, f: impl Fn(&[u8]) -> u8) -> Result<Elem<Self>, Error> {
        let table = (0..self.rows(n)).map(|r| f(&self.decode(n, r))).collect();
        self.element(n, table)
    }
}

impl Theory for FiniteEndo {
    type Payload = Vec<u8>;

    fn id(&self) -> &str {
        &self.id
    }

    fn element(&self, arity: usize, table: Vec<u8>) -> Result<Elem<Self>, Error> {
        if arity > MAX_FINITE_ARITY {
            return Err(Error::TooLarge {
                carrier: self.k,
                arity,
            });
        }
        if table.len() != self.rows(arity) {
            return Err(Error::BadTable(format!(
                "{} rows for arity {arity}, expected {}",
                table.len(),
                self.rows(arity)
            )));
        }
        if let Some(bad) = table.iter().find(|&&x| x as usize >= self.k) {
            return Err(Error::BadTable(format!("value {bad} outside carrier of size {}", self.k)));
        }
        Ok(self.tag(arity, table))
    }

    fn proj(&self, n: usize, i: usize) -> Result<Elem<Self>, Error> {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, arity: n });
        }
        self.tabulate(n, |xs| xs[i])
    }

    fn compose(&self, t: &Elem<Self>, args: &[Elem<Self>]) -> Result<Elem<Self>, Error> {
        let m = check_args(self, t, args)?;
        if m == usize::MAX {
            // a constant composed with nothing
            return Ok(t.clone());
        }
        let table = (0..self.rows(m))
            .map(|row| {
                let idx = self.encode(args.iter().map(|a| a.payload()[row]));
                t.payload()[idx]
            })
            .collect();
        self.element(m, table)
    }

    fn rename(&self, t: &Elem<Self>, f: &FinMap) -> Result<Elem<Self>, Error> {
        self.check(t)?;
        if f.source() != t.arity() {
            return Err(Error::ArityMismatch {
                expected: t.arity(),
                found: f.source(),
            });
        }
        self.tabulate(f.target(), |ys| {
            t.payload()[self.encode(f.images().iter().map(|&j| ys[j]))]
        })
    }

    fn element_eq(&self, a: &Elem<Self>, b: &Elem<Self>) -> (EqVerdict, usize) {
        let v = if a.arity() == b.arity() && a.payload() == b.payload() {
            EqVerdict::Equal
        } else {
            EqVerdict::Distinct
        };
        (v, 0)
    }

    fn enumerate(&self, n: usize) -> Option<Vec<Elem<Self>>> {
        let count = self.cardinality(n)?;
        if count > MAX_ENUMERATION || n > MAX_FINITE_ARITY {
            return None;
        }
        let rows = self.rows(n);
        Some(
            (0..count as usize)
                .map(|code| self.tag(n, self.decode(rows, code)))
                .collect(),
        )
    }

    fn sample(&self, rng: &mut SuiteRng, n: usize) -> Elem<Self> {
        let table = (0..self.rows(n)).map(|_| rng.gen_range(0..self.k) as u8).collect();
        self.tag(n, table)
    }

    fn show(&self, e: &Elem<Self>) -> String {
        let digits: String = e.payload().iter().map(|d| char::from(b'0' + d)).collect();
        format!("{}/{digits}", e.arity())
    }
}

// ---------------------------------------------------------------------------
// Syntactic theories: Λ and its theories of extensions

/// Terms in context `n` over a constant alphabet, identified by
/// β(δ)-equality. With an empty alphabet this is `Λ`; adjoining the
/// constants of an algebra `A` gives the theory of extensions `Λ_A`.
#[derive(Debug, Clone)]
pub struct SyntacticTheory {
    id: String,
    constants: Vec<Term>,
    reducer: Reducer,
    gen: TermGen,
}

impl SyntacticTheory {
    pub fn lambda() -> SyntacticTheory {
        SyntacticTheory {
            id: "lambda".to_string(),
            constants: Vec::new(),
            reducer: Reducer::default(),
            gen: TermGen::default(),
        }
    }

    pub fn with_reducer(mut self, reducer: Reducer) -> SyntacticTheory {
        self.reducer = reducer;
        self
    }

    pub fn with_gen(mut self, gen: TermGen) -> SyntacticTheory {
        self.gen = gen.with_constants(self.constants.clone());
        self
    }

    pub fn reducer(&self) -> &Reducer {
        &self.reducer
    }

    pub fn generator(&self) -> &TermGen {
        &self.gen
    }

    /// The adjoined constants, as `Const` terms.
    pub fn constants(&self) -> &[Term] {
        &self.constants
    }

    pub fn constant(&self, name: &str) -> Option<&Term> {
        self.constants
            .iter()
            .find(|c| matches!(c, Term::Const(n, _) if &**n == name))
    }

    /// Wraps a term, checking scope and alphabet.
    pub fn lift(&self, n: usize, t: Term) -> Result<Elem<Self>, Error> {
        self.element(n, t)
    }

    fn allows(&self, c: &Term) -> bool {
        match c {
            // abbreviations for pure terms are always admitted
            Term::Const(_, Some(u)) if !u.has_constants() => true,
            Term::Const(..) => self.constants.contains(c),
            _ => true,
        }
    }
}

fn context_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{}", i + 1)).collect()
}

/// Renames free variables along `f`, by index arithmetic.
fn rename_term(t: &Term, f: &FinMap) -> Term {
    fn go(t: &Term, depth: usize, f: &FinMap) -> Term {
        match t {
            Term::Var(k) if *k < depth => t.clone(),
            Term::Var(k) => {
                let level = f.source() - 1 - (k - depth);
                Term::Var(depth + f.target() - 1 - f.apply(level))
            }
            Term::App(a, b) => Term::app(go(a, depth, f), go(b, depth, f)),
            Term::Lam(b) => Term::lam(go(b, depth + 1, f)),
            Term::Const(..) => t.clone(),
        }
    }
    go(t, 0, f)
}

impl Theory for SyntacticTheory {
    type Payload = Term;

    fn id(&self) -> &str {
        &self.id
    }

    fn element(&self, arity: usize, t: Term) -> Result<Elem<Self>, Error> {
        if !t.is_scoped_in(arity) {
            return Err(Error::ArityMismatch {
                expected: arity,
                found: t.scope(),
            });
        }
        fn consts(t: &Term, out: &mut Vec<Term>) {
            match t {
                Term::Var(_) => {}
                Term::App(a, b) => {
                    consts(a, out);
                    consts(b, out);
                }
                Term::Lam(b) => consts(b, out),
                c @ Term::Const(..) => out.push(c.clone()),
            }
        }
        let mut cs = Vec::new();
        consts(&t, &mut cs);
        if let Some(Term::Const(name, _)) = cs.iter().find(|c| !self.allows(c)) {
            return Err(Error::UnknownConstant(name.to_string()));
        }
        Ok(self.tag(arity, t))
    }

    fn proj(&self, n: usize, i: usize) -> Result<Elem<Self>, Error> {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, arity: n });
        }
        Ok(self.tag(n, Term::ctx_var(n, i)))
    }

    fn compose(&self, t: &Elem<Self>, args: &[Elem<Self>]) -> Result<Elem<Self>, Error> {
        let m = check_args(self, t, args)?;
        if m == usize::MAX {
            return Ok(t.clone());
        }
        let reps: Vec<Term> = args.iter().map(|a| a.payload().clone()).collect();
        Ok(self.tag(m, subst_unchecked(t.payload(), &reps)))
    }

    fn rename(&self, t: &Elem<Self>, f: &FinMap) -> Result<Elem<Self>, Error> {
        self.check(t)?;
        if f.source() != t.arity() {
            return Err(Error::ArityMismatch {
                expected: t.arity(),
                found: f.source(),
            });
        }
        Ok(self.tag(f.target(), rename_term(t.payload(), f)))
    }

    fn element_eq(&self, a: &Elem<Self>, b: &Elem<Self>) -> (EqVerdict, usize) {
        if a.arity() != b.arity() {
            return (EqVerdict::Distinct, 0);
        }
        self.reducer.eq_counted(a.payload(), b.payload())
    }

    fn sample(&self, rng: &mut SuiteRng, n: usize) -> Elem<Self> {
        self.tag(n, self.gen.term(rng, n))
    }

    fn show(&self, e: &Elem<Self>) -> String {
        print(e.payload(), &context_names(e.arity()))
    }
}

/// The theory of extensions `S_A`: `S` with one constant adjoined per
/// generator of `A`, carrying its unfolding.
pub fn extension_theory(base: &SyntacticTheory, algebra: &Algebra) -> Result<SyntacticTheory, Error> {
    if !algebra.is_term_presented() {
        return Err(Error::AlgebraFile(format!(
            "algebra `{}` is not presented by terms",
            algebra.name()
        )));
    }
    let mut constants = base.constants.clone();
    for c in algebra.constants() {
        if !constants.contains(&c) {
            constants.push(c);
        }
    }
    Ok(SyntacticTheory {
        id: format!("{}[{}]", base.id, algebra.name()),
        gen: base.gen.clone().with_constants(constants.clone()),
        constants,
        reducer: base.reducer,
    })
}

/// `S_A(0) ≅ A`: a closed representative read as an algebra element.
pub fn extension_constants_to_algebra(
    ext: &SyntacticTheory,
    algebra: &Algebra,
    e: &Elem<SyntacticTheory>,
) -> Result<crate::algebra::AlgebraElement, Error> {
    ext.check(e)?;
    if e.arity() != 0 {
        return Err(Error::ArityMismatch {
            expected: 0,
            found: e.arity(),
        });
    }
    algebra.element(e.payload().clone())
}

/// The isomorphism `S_{S(p)}(n) ≅ S(n+p)` for `S = Λ`, with the `p`
/// parameters placed first.
///
/// In `S_{S(p)}` the parameters are the inert constants of
/// [`Algebra::free`]; in `S(n+p)` they are the first `p` context variables.
#[derive(Debug, Clone)]
pub struct ParameterIso {
    p: usize,
    names: Vec<String>,
}

impl ParameterIso {
    pub fn new(p: usize) -> ParameterIso {
        ParameterIso {
            p,
            names: (0..p).map(crate::algebra::indeterminate_name).collect(),
        }
    }

    /// Constant `x_j` becomes context level `j`; the term's own variables
    /// keep their indices.
    pub fn to_context(&self, t: &Term, n: usize) -> Term {
        let total = n + self.p;
        t.replace_constants(&|name| {
            self.names
                .iter()
                .position(|c| c == name)
                .map(|j| Term::ctx_var(total, j))
        })
    }

    /// Context levels below `p` become constants again.
    pub fn from_context(&self, t: &Term, n: usize) -> Term {
        fn go(t: &Term, depth: usize, n: usize, iso: &ParameterIso) -> Term {
            match t {
                Term::Var(k) if *k < depth => t.clone(),
                Term::Var(k) => {
                    let level = n + iso.p - 1 - (k - depth);
                    if level < iso.p {
                        Term::inert(&iso.names[level])
                    } else {
                        t.clone()
                    }
                }
                Term::App(a, b) => Term::app(go(a, depth, n, iso), go(b, depth, n, iso)),
                Term::Lam(b) => Term::lam(go(b, depth + 1, n, iso)),
                Term::Const(..) => t.clone(),
            }
        }
        go(t, 0, n, self)
    }
}

/// The two coproduct injections `T(n) → T(n+m) ← T(m)`.
#[derive(Debug, Clone)]
pub struct CoproductEmbedding {
    pub left: FinMap,
    pub right: FinMap,
}

pub fn coproduct_embed(n: usize, m: usize) -> CoproductEmbedding {
    CoproductEmbedding {
        left: FinMap::offset(n, 0, n + m),
        right: FinMap::offset(m, n, n + m),
    }
}

impl CoproductEmbedding {
    pub fn embed_left<T: Theory>(&self, theory: &T, e: &Elem<T>) -> Result<Elem<T>, Error> {
        theory.rename(e, &self.left)
    }

    pub fn embed_right<T: Theory>(&self, theory: &T, e: &Elem<T>) -> Result<Elem<T>, Error> {
        theory.rename(e, &self.right)
    }
}

// ---------------------------------------------------------------------------
// Law harness

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Budget {
    /// Every instance, from `enumerate`.
    Exhaustive,
    /// `samples` random instances per law.
    Sampled { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawReport {
    pub theory: String,
    pub max_arity: usize,
    pub budget: Budget,
    pub laws: Vec<CheckRecord>,
}

impl LawReport {
    pub fn tally(&self) -> Tally {
        let mut t = Tally::default();
        for l in &self.laws {
            if let Some(x) = l.tally {
                t.merge(x);
            }
        }
        t
    }

    /// No Distinct instance in any law.
    pub fn no_failures(&self) -> bool {
        self.tally().distinct == 0
    }

    pub fn law(&self, name: &str) -> Option<&CheckRecord> {
        self.laws.iter().find(|l| l.id.ends_with(name))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("law report serializes")
    }
}

pub const CLONE_LAWS: &[(&str, &str)] = &[
    ("unit.right", "compose(t, pr₁…prₙ) = t"),
    ("unit.left", "compose(id, [a]) = a"),
    ("projection", "compose(prᵢ, a⃗) = aᵢ"),
    ("associativity", "compose(compose(t, a⃗), b⃗) = compose(t, [compose(aᵢ, b⃗)])"),
    ("rename.formula", "rename(t, f) = compose(t, [pr_f(i)])"),
    ("rename.identity", "rename(t, id) = t"),
    ("rename.functorial", "rename(rename(t, f), g) = rename(t, g∘f)"),
    ("naturality.source", "compose(rename(t, f), a⃗) = compose(t, a⃗∘f)"),
    ("naturality.target", "rename(compose(t, a⃗), g) = compose(t, [rename(aᵢ, g)])"),
];

/// One instance of one law: the two sides and the printed inputs.
type Instance<P> = Result<(TheoryElement<P>, TheoryElement<P>), Error>;

fn judge<T: Theory>(theory: &T, family: &mut Family, inst: Instance<T::Payload>, show: impl FnOnce() -> Vec<String>) {
    match inst {
        Ok((lhs, rhs)) => {
            let (v, steps) = theory.element_eq(&lhs, &rhs);
            family.record(v, steps, || {
                let mut s = show();
                s.push(format!("lhs = {}", theory.show(&lhs)));
                s.push(format!("rhs = {}", theory.show(&rhs)));
                s
            });
        }
        Err(e) => family.record(e.verdict(), 0, || {
            let mut s = show();
            s.push(format!("error: {e}"));
            s
        }),
    }
}

fn compose_all<T: Theory>(theory: &T, ts: &[Elem<T>], args: &[Elem<T>]) -> Result<Vec<Elem<T>>, Error> {
    ts.iter().map(|t| theory.compose(t, args)).collect()
}

fn rename_along<T: Theory>(args: &[Elem<T>], f: &FinMap) -> Vec<Elem<T>> {
    f.images().iter().map(|&i| args[i].clone()).collect()
}

fn law_unit_right<T: Theory>(theory: &T, t: &Elem<T>) -> Instance<T::Payload> {
    let lhs = theory.compose(t, &theory.projections(t.arity()))?;
    Ok((lhs, t.clone()))
}

fn law_unit_left<T: Theory>(theory: &T, a: &Elem<T>) -> Instance<T::Payload> {
    let id = theory.proj(1, 0)?;
    Ok((theory.compose(&id, std::slice::from_ref(a))?, a.clone()))
}

fn law_projection<T: Theory>(theory: &T, i: usize, args: &[Elem<T>]) -> Instance<T::Payload> {
    let pr = theory.proj(args.len(), i)?;
    Ok((theory.compose(&pr, args)?, args[i].clone()))
}

fn law_assoc<T: Theory>(theory: &T, t: &Elem<T>, a: &[Elem<T>], b: &[Elem<T>]) -> Instance<T::Payload> {
    let lhs = theory.compose(&theory.compose(t, a)?, b)?;
    let inner = compose_all(theory, a, b)?;
    let rhs = theory.compose(t, &inner)?;
    Ok((lhs, rhs))
}

fn law_rename_formula<T: Theory>(theory: &T, t: &Elem<T>, f: &FinMap) -> Instance<T::Payload> {
    let lhs = theory.rename(t, f)?;
    let projs = f
        .images()
        .iter()
        .map(|&j| theory.proj(f.target(), j))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((lhs, theory.compose(t, &projs)?))
}

fn law_rename_identity<T: Theory>(theory: &T, t: &Elem<T>) -> Instance<T::Payload> {
    Ok((theory.rename(t, &FinMap::identity(t.arity()))?, t.clone()))
}

fn law_rename_functorial<T: Theory>(theory: &T, t: &Elem<T>, f: &FinMap, g: &FinMap) -> Instance<T::Payload> {
    let lhs = theory.rename(&theory.rename(t, f)?, g)?;
    let rhs = theory.rename(t, &f.then(g)?)?;
    Ok((lhs, rhs))
}

fn law_naturality_source<T: Theory>(theory: &T, t: &Elem<T>, f: &FinMap, a: &[Elem<T>]) -> Instance<T::Payload> {
    let lhs = theory.compose(&theory.rename(t, f)?, a)?;
    let rhs = theory.compose(t, &rename_along::<T>(a, f))?;
    Ok((lhs, rhs))
}

fn law_naturality_target<T: Theory>(theory: &T, t: &Elem<T>, a: &[Elem<T>], g: &FinMap) -> Instance<T::Payload> {
    let lhs = theory.rename(&theory.compose(t, a)?, g)?;
    let renamed = a
        .iter()
        .map(|x| theory.rename(x, g))
        .collect::<Result<Vec<_>, _>>()?;
    let rhs = theory.compose(t, &renamed)?;
    Ok((lhs, rhs))
}

fn show_all<T: Theory>(theory: &T, es: &[&Elem<T>]) -> Vec<String> {
    es.iter().map(|e| theory.show(e)).collect()
}

fn cartesian<E: Clone>(pool: &[E], len: usize) -> Vec<Vec<E>> {
    tuples(pool.len(), len)
        .into_iter()
        .map(|ix| ix.into_iter().map(|i| pool[i].clone()).collect())
        .collect()
}

fn exhaustive_laws<T: Theory>(theory: &T, max_arity: usize) -> Option<Vec<Family>> {
    let pools: Vec<Vec<Elem<T>>> = (0..=max_arity)
        .map(|n| theory.enumerate(n))
        .collect::<Option<_>>()?;
    let name = |law: &str| format!("{}.{}", theory.id(), law);
    let law_text = |i: usize| CLONE_LAWS[i].1;
    let arities = 0..=max_arity;
    let mut fams: Vec<Family> = CLONE_LAWS
        .iter()
        .enumerate()
        .map(|(i, (l, _))| Family::new(name(l), law_text(i)))
        .collect();

    for n in arities.clone() {
        for t in &pools[n] {
            judge(theory, &mut fams[0], law_unit_right(theory, t), || show_all(theory, &[t]));
            judge(theory, &mut fams[5], law_rename_identity(theory, t), || show_all(theory, &[t]));
        }
    }
    for m in arities.clone() {
        for a in &pools[m] {
            judge(theory, &mut fams[1], law_unit_left(theory, a), || show_all(theory, &[a]));
        }
    }
    for n in 1..=max_arity {
        for m in arities.clone() {
            for args in cartesian(&pools[m], n) {
                for i in 0..n {
                    judge(theory, &mut fams[2], law_projection(theory, i, &args), || {
                        args.iter().map(|a| theory.show(a)).collect()
                    });
                }
            }
        }
    }

    // associativity: parallel over the outer operation
    let mut jobs = Vec::new();
    for n in arities.clone() {
        for m in arities.clone() {
            for p in arities.clone() {
                jobs.push((n, m, p));
            }
        }
    }
    let assoc: Vec<Family> = jobs
        .par_iter()
        .flat_map_iter(|&(n, m, p)| {
            let a_tuples = cartesian(&pools[m], n);
            let b_tuples = cartesian(&pools[p], m);
            pools[n].iter().map(move |t| (t, a_tuples.clone(), b_tuples.clone())).collect::<Vec<_>>()
        })
        .map(|(t, a_tuples, b_tuples)| {
            let mut fam = Family::new(name("associativity"), law_text(3));
            for a in &a_tuples {
                for b in &b_tuples {
                    // m = 0 with a constant t: compose(t, a⃗) has no inferable arity
                    if a.is_empty() || b.is_empty() {
                        continue;
                    }
                    judge(theory, &mut fam, law_assoc(theory, t, a, b), || {
                        let mut s = vec![theory.show(t)];
                        s.extend(a.iter().map(|x| theory.show(x)));
                        s.extend(b.iter().map(|x| theory.show(x)));
                        s
                    });
                }
            }
            fam
        })
        .collect();
    for f in assoc {
        fams[3].merge(f);
    }

    for n in arities.clone() {
        for m in arities.clone() {
            let maps = FinMap::all(n, m);
            for f in &maps {
                for t in pools[n].iter().filter(|_| n > 0) {
                    judge(theory, &mut fams[4], law_rename_formula(theory, t, f), || {
                        vec![theory.show(t), format!("{:?}", f.images())]
                    });
                }
                for k in arities.clone() {
                    for g in FinMap::all(m, k) {
                        for t in &pools[n] {
                            judge(theory, &mut fams[6], law_rename_functorial(theory, t, f, &g), || {
                                vec![theory.show(t), format!("{:?}", f.images()), format!("{:?}", g.images())]
                            });
                        }
                    }
                    // naturality in the source: f: n → m, a⃗ ∈ T(k)^m
                    if m > 0 && n > 0 {
                        for a in cartesian(&pools[k], m) {
                            for t in &pools[n] {
                                judge(theory, &mut fams[7], law_naturality_source(theory, t, f, &a), || {
                                    vec![theory.show(t), format!("{:?}", f.images())]
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    // naturality in the target: t ∈ T(n), a⃗ ∈ T(m)ⁿ, g: m → k
    for n in 1..=max_arity {
        for m in arities.clone() {
            let a_tuples = cartesian(&pools[m], n);
            for k in arities.clone() {
                for g in FinMap::all(m, k) {
                    for t in &pools[n] {
                        for a in &a_tuples {
                            judge(theory, &mut fams[8], law_naturality_target(theory, t, a, &g), || {
                                vec![theory.show(t), format!("{:?}", g.images())]
                            });
                        }
                    }
                }
            }
        }
    }
    Some(fams)
}

/// Draws one instance of law `law` at random arities.
fn sampled_instance<T: Theory>(
    theory: &T,
    law: usize,
    rng: &mut SuiteRng,
    max_arity: usize,
) -> (Instance<T::Payload>, Vec<String>) {
    let arity = |rng: &mut SuiteRng| rng.gen_range(0..=max_arity);
    let positive = |rng: &mut SuiteRng| rng.gen_range(1..=max_arity.max(1));
    let many = |rng: &mut SuiteRng, k: usize, m: usize| -> Vec<Elem<T>> {
        (0..k).map(|_| theory.sample(rng, m)).collect()
    };
    let map = |rng: &mut SuiteRng, n: usize, m: usize| FinMap::random(rng, n, m).expect("target non-empty");
    let shown = |es: &[&Elem<T>]| show_all(theory, es);
    match law {
        0 => {
            let n = arity(rng);
            let t = theory.sample(rng, n);
            (law_unit_right(theory, &t), shown(&[&t]))
        }
        1 => {
            let m = arity(rng);
            let a = theory.sample(rng, m);
            (law_unit_left(theory, &a), shown(&[&a]))
        }
        2 => {
            let n = positive(rng);
            let m = arity(rng);
            let args = many(rng, n, m);
            let i = rng.gen_range(0..n);
            let s = args.iter().map(|a| theory.show(a)).collect();
            (law_projection(theory, i, &args), s)
        }
        3 => {
            let (n, m, p) = (positive(rng), positive(rng), arity(rng));
            let t = theory.sample(rng, n);
            let a = many(rng, n, m);
            let b = many(rng, m, p);
            let mut s = vec![theory.show(&t)];
            s.extend(a.iter().chain(&b).map(|x| theory.show(x)));
            (law_assoc(theory, &t, &a, &b), s)
        }
        4 => {
            let (n, m) = (positive(rng), positive(rng));
            let t = theory.sample(rng, n);
            let f = map(rng, n, m);
            let s = vec![theory.show(&t), format!("{:?}", f.images())];
            (law_rename_formula(theory, &t, &f), s)
        }
        5 => {
            let n = arity(rng);
            let t = theory.sample(rng, n);
            (law_rename_identity(theory, &t), shown(&[&t]))
        }
        6 => {
            let (n, m, k) = (arity(rng), positive(rng), positive(rng));
            let t = theory.sample(rng, n);
            let f = map(rng, n, m);
            let g = map(rng, m, k);
            let s = vec![theory.show(&t), format!("{:?}", f.images()), format!("{:?}", g.images())];
            (law_rename_functorial(theory, &t, &f, &g), s)
        }
        7 => {
            let (n, m, k) = (positive(rng), positive(rng), arity(rng));
            let t = theory.sample(rng, n);
            let f = map(rng, n, m);
            let a = many(rng, m, k);
            let s = vec![theory.show(&t), format!("{:?}", f.images())];
            (law_naturality_source(theory, &t, &f, &a), s)
        }
        _ => {
            let (n, m, k) = (positive(rng), arity(rng), positive(rng));
            let t = theory.sample(rng, n);
            let a = many(rng, n, m);
            let g = map(rng, m, k);
            let s = vec![theory.show(&t), format!("{:?}", g.images())];
            (law_naturality_target(theory, &t, &a, &g), s)
        }
    }
}

fn sampled_laws<T: Theory>(theory: &T, max_arity: usize, samples: usize, seed: u64) -> Vec<Family> {
    CLONE_LAWS
        .iter()
        .enumerate()
        .map(|(law, (label, text))| {
            let mut rng = crate::suite_rng(seed.wrapping_mul(1_000_003).wrapping_add(law as u64));
            let instances: Vec<_> = (0..samples)
                .map(|_| sampled_instance(theory, law, &mut rng, max_arity))
                .collect();
            let judged: Vec<Family> = instances
                .into_par_iter()
                .map(|(inst, shown)| {
                    let mut fam = Family::new(format!("{}.{}", theory.id(), label), *text);
                    judge(theory, &mut fam, inst, || shown);
                    fam
                })
                .collect();
            let mut fam = Family::new(format!("{}.{}", theory.id(), label), *text);
            for f in judged {
                fam.merge(f);
            }
            fam
        })
        .collect()
}

/// Checks unit, projection, associativity and renaming laws up to
/// `max_arity`. Failures are data: the report lists every failed or
/// inconclusive instance (up to a cap per law).
pub fn check_clone_laws<T: Theory>(theory: &T, max_arity: usize, budget: Budget) -> LawReport {
    let fams = match budget {
        Budget::Exhaustive => exhaustive_laws(theory, max_arity).unwrap_or_else(|| {
            let mut f = Family::new(format!("{}.enumerate", theory.id()), "theory is finite");
            f.record(EqVerdict::Unknown { steps: 0 }, 0, || vec!["not enumerable".into()]);
            vec![f]
        }),
        Budget::Sampled { samples, seed } => sampled_laws(theory, max_arity, samples, seed),
    };
    LawReport {
        theory: theory.id().to_string(),
        max_arity,
        budget,
        laws: fams.into_iter().map(Family::finish).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suite_rng;
    use crate::term::{combinator, parse, parse_in, Signature};

    fn endo2() -> FiniteEndo {
        finite_endo_theory(2).unwrap()
    }

    fn and_table(t: &FiniteEndo) -> Elem<FiniteEndo> {
        t.tabulate(2, |xs| xs[0] & xs[1]).unwrap()
    }

    #[test]
    fn counting() {
        for k in 1..=3 {
            let t = finite_endo_theory(k).unwrap();
            for n in 0..=2 {
                let expected = (k as u128).pow((k as u32).pow(n as u32));
                assert_eq!(t.cardinality(n), Some(expected));
                assert_eq!(t.enumerate(n).unwrap().len() as u128, expected);
            }
        }
        assert_eq!(endo2().cardinality(2), Some(16));
        assert_eq!(finite_endo_theory(4).unwrap().cardinality(3), None);
        assert!(finite_endo_theory(4).unwrap().enumerate(2).is_none());
    }

    #[test]
    fn empty_and_oversized_carriers_rejected() {
        assert_eq!(finite_endo_theory(0).unwrap_err(), Error::EmptyCarrier);
        assert!(finite_endo_theory(5).is_err());
        assert!(endo2().proj(4, 0).is_err());
    }

    #[test]
    fn finite_projection_table() {
        let t = endo2();
        let pr = t.proj(2, 1).unwrap();
        for x in 0..2u8 {
            for y in 0..2u8 {
                assert_eq!(t.eval(&pr, &[x, y]), y);
            }
        }
        assert!(matches!(t.proj(2, 2), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn and_on_diagonal_is_identity() {
        let t = endo2();
        let id = t.proj(1, 0).unwrap();
        let out = t.compose(&and_table(&t), &[id.clone(), id.clone()]).unwrap();
        // brute force: x ∧ x = x on every input
        for x in 0..2u8 {
            assert_eq!(t.eval(&out, &[x]), x & x);
        }
        assert_eq!(out, id);
    }

    #[test]
    fn composition_is_pointwise_evaluation() {
        let t = finite_endo_theory(3).unwrap();
        let mut rng = suite_rng(1);
        for _ in 0..50 {
            let f = t.sample(&mut rng, 2);
            let a = t.sample(&mut rng, 3);
            let b = t.sample(&mut rng, 3);
            let c = t.compose(&f, &[a.clone(), b.clone()]).unwrap();
            for x in 0..3u8 {
                for y in 0..3u8 {
                    for z in 0..3u8 {
                        let xs = [x, y, z];
                        let expect = t.eval(&f, &[t.eval(&a, &xs), t.eval(&b, &xs)]);
                        assert_eq!(t.eval(&c, &xs), expect);
                    }
                }
            }
        }
    }

    #[test]
    fn compose_rejects_mismatches() {
        let t = endo2();
        let f = and_table(&t);
        let id = t.proj(1, 0).unwrap();
        assert!(matches!(t.compose(&f, &[id.clone()]), Err(Error::ArityMismatch { .. })));
        let lam = SyntacticTheory::lambda();
        let foreign = finite_endo_theory(3).unwrap().proj(1, 0).unwrap();
        assert!(matches!(t.compose(&f, &[id, foreign]), Err(Error::TheoryMismatch { .. })));
        let lid = lam.proj(1, 0).unwrap();
        assert!(lam.compose(&lid, &[lam.proj(1, 0).unwrap(), lam.proj(1, 0).unwrap()]).is_err());
    }

    #[test]
    fn lambda_projections_and_rename() {
        let lam = SyntacticTheory::lambda();
        assert_eq!(lam.proj(2, 0).unwrap().payload(), &Term::Var(1));
        let v0 = lam.proj(1, 0).unwrap();
        let f = FinMap::new(2, vec![1]).unwrap();
        let r = lam.rename(&v0, &f).unwrap();
        assert_eq!(r.arity(), 2);
        assert_eq!(r.payload(), &Term::ctx_var(2, 1));
        assert_eq!(lam.rename(&v0, &FinMap::identity(1)).unwrap(), v0);
    }

    #[test]
    fn constants_embed_into_every_arity() {
        let lam = SyntacticTheory::lambda();
        let c = lam.element(0, combinator("T").unwrap()).unwrap();
        for m in 0..4 {
            let r = lam.rename(&c, &FinMap::inclusion(0, m)).unwrap();
            assert_eq!(r.arity(), m);
            assert_eq!(r.payload(), c.payload());
        }
        let t = endo2();
        let one = t.element(0, vec![1]).unwrap();
        let r = t.rename(&one, &FinMap::inclusion(0, 2)).unwrap();
        assert_eq!(r.payload(), &vec![1, 1, 1, 1]);
    }

    #[test]
    fn app_of_true_false() {
        let lam = SyntacticTheory::lambda();
        let app = lam.element(2, Term::app(Term::Var(1), Term::Var(0))).unwrap();
        let tt = lam.element(0, combinator("T").unwrap()).unwrap();
        let ff = lam.element(0, combinator("F").unwrap()).unwrap();
        let out = lam.compose(&app, &[tt, ff]).unwrap();
        // oracle: normal form of T F computed by the reducer, λy.λx.λz.z
        let nf = crate::term::normalize(out.payload(), 100).into_term();
        assert_eq!(nf, parse("\\y x z. z").unwrap());
        assert_eq!(nf, Term::lam(combinator("F").unwrap()));
    }

    #[test]
    fn coproduct_injections() {
        let lam = SyntacticTheory::lambda();
        let emb = coproduct_embed(1, 1);
        let v = lam.proj(1, 0).unwrap();
        assert_eq!(emb.embed_left(&lam, &v).unwrap().payload(), &Term::ctx_var(2, 0));
        assert_eq!(emb.embed_right(&lam, &v).unwrap().payload(), &Term::ctx_var(2, 1));
        // n = 0: constants are untouched
        let emb0 = coproduct_embed(0, 2);
        let c = lam.element(0, combinator("I").unwrap()).unwrap();
        assert_eq!(emb0.embed_left(&lam, &c).unwrap().payload(), c.payload());
        // swapping the blocks of a symmetric term gives the other injection
        let sym = lam
            .element(1, parse_in("v v", &["v"], &Signature::standard()).unwrap())
            .unwrap();
        let swap = FinMap::new(2, vec![1, 0]).unwrap();
        let left_swapped = lam.rename(&emb.embed_left(&lam, &sym).unwrap(), &swap).unwrap();
        assert_eq!(left_swapped, emb.embed_right(&lam, &sym).unwrap());
    }

    #[test]
    fn injections_generate_the_sum() {
        // every variable of T(n+m) is in the image of one of the injections
        let lam = SyntacticTheory::lambda();
        let (n, m) = (2, 3);
        let emb = coproduct_embed(n, m);
        let mut hit = vec![false; n + m];
        for i in 0..n {
            let e = emb.embed_left(&lam, &lam.proj(n, i).unwrap()).unwrap();
            hit[(0..n + m).find(|&j| lam.proj(n + m, j).unwrap() == e).unwrap()] = true;
        }
        for i in 0..m {
            let e = emb.embed_right(&lam, &lam.proj(m, i).unwrap()).unwrap();
            hit[(0..n + m).find(|&j| lam.proj(n + m, j).unwrap() == e).unwrap()] = true;
        }
        assert!(hit.into_iter().all(|h| h));
    }

    #[test]
    fn finite_clone_laws_exhaustive() {
        let report = check_clone_laws(&endo2(), 2, Budget::Exhaustive);
        assert!(report.no_failures(), "{}", report.to_json());
        assert_eq!(report.tally().unknown, 0);
        let assoc = report.law("associativity").unwrap().tally.unwrap();
        assert!(assoc.equal > 1_000_000);
    }

    /// Breaks composition on inputs whose first coordinate is 1.
    struct Corrupted(FiniteEndo);

    impl Theory for Corrupted {
        type Payload = Vec<u8>;
        fn id(&self) -> &str {
            self.0.id()
        }
        fn element(&self, arity: usize, p: Vec<u8>) -> Result<Elem<Self>, Error> {
            self.0.element(arity, p)
        }
        fn proj(&self, n: usize, i: usize) -> Result<Elem<Self>, Error> {
            self.0.proj(n, i)
        }
        fn compose(&self, t: &Elem<Self>, args: &[Elem<Self>]) -> Result<Elem<Self>, Error> {
            let mut out = self.0.compose(t, args)?;
            if out.arity() >= 2 {
                let last = out.payload.len() - 1;
                out.payload[last] ^= 1;
            }
            Ok(out)
        }
        fn rename(&self, t: &Elem<Self>, f: &FinMap) -> Result<Elem<Self>, Error> {
            self.0.rename(t, f)
        }
        fn element_eq(&self, a: &Elem<Self>, b: &Elem<Self>) -> (EqVerdict, usize) {
            self.0.element_eq(a, b)
        }
        fn enumerate(&self, n: usize) -> Option<Vec<Elem<Self>>> {
            self.0.enumerate(n)
        }
        fn sample(&self, rng: &mut SuiteRng, n: usize) -> Elem<Self> {
            self.0.sample(rng, n)
        }
        fn show(&self, e: &Elem<Self>) -> String {
            self.0.show(e)
        }
    }

    #[test]
    fn corrupted_compose_is_caught() {
        let report = check_clone_laws(&Corrupted(endo2()), 2, Budget::Exhaustive);
        assert!(!report.no_failures());
        let unit = report.law("unit.right").unwrap();
        assert!(unit.tally.unwrap().distinct > 0);
        assert!(!unit.details.is_empty());
        let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        let first = &json["laws"][0]["details"][0];
        assert!(first["law"].is_string() && first["instance"].is_array());
        assert!(first["verdict"].is_string() && first["steps"].is_number());
    }

    #[test]
    fn lambda_clone_laws_sampled() {
        let lam = SyntacticTheory::lambda();
        let report = check_clone_laws(&lam, 3, Budget::Sampled { samples: 100, seed: 0 });
        let t = report.tally();
        assert_eq!(t.distinct, 0);
        assert_eq!(t.unknown, 0);
    }

    #[test]
    fn parameter_iso_commutes_with_composition() {
        use crate::algebra::Algebra;
        let p = 2;
        let base = SyntacticTheory::lambda();
        let ext = extension_theory(&base, &Algebra::free(p)).unwrap();
        let iso = ParameterIso::new(p);
        let mut rng = suite_rng(11);
        for _ in 0..200 {
            let n = rng.gen_range(1..=3);
            let m = rng.gen_range(0..=3);
            let t = ext.sample(&mut rng, n);
            let args: Vec<_> = (0..n).map(|_| ext.sample(&mut rng, m)).collect();
            let lhs = iso.to_context(ext.compose(&t, &args).unwrap().payload(), m);
            let t2 = base.element(n + p, iso.to_context(t.payload(), n)).unwrap();
            let mut args2: Vec<_> = (0..p).map(|j| base.proj(m + p, j).unwrap()).collect();
            args2.extend(args.iter().map(|a| base.element(m + p, iso.to_context(a.payload(), m)).unwrap()));
            let rhs = base.compose(&t2, &args2).unwrap();
            assert_eq!(&lhs, rhs.payload());
            // and back
            assert_eq!(&iso.from_context(&iso.to_context(t.payload(), n), n), t.payload());
        }
    }
}
