//! Sequentially ordered SEAs: Conditions (1) and (2), the sequential
//! quotient `a/b`, its identities, and the interval SEA `([0,b], ∘_b)`.
//!
//! Everything here is generic over [`SeaModel`]. Each carrier decides
//! quotient uniqueness in its own way: exhaustively on finite tables,
//! pointwise on fuzzy sets, by re-derivation on Hilbert effects.

use std::cell::RefCell;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{EffectAlgebra, PartialAlgebra, SequentialProduct, SharplyDominating};
use crate::finite::{ElemId, FiniteEffectAlgebra, SeqProductTable, TableSea};
use crate::fuzzy::{fuzzy_quotient, FuzzyElement, FuzzySystem};
use crate::hilbert::{sequential_quotient as hilbert_quotient, HilbertEffects, MatrixEffect};
use crate::hs::{HsElem, HsModel};
use crate::poly::{Poly, PolynomialSea};
use crate::report::{Check, CheckSet};
use crate::symbolic::{Omega, OmegaOmegaStar};

/// A sharply dominating SEA with a way to solve `a = b∘d`.
pub trait SeaModel: SequentialProduct + SharplyDominating {
    /// Some `d` with `a = b∘d`, or `None` if there is none. Only called with
    /// `a ≤ b`.
    fn factor(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    /// Whether `c` is the only element `≤ b̂` with `b∘c = a`, as far as the
    /// carrier can decide.
    fn quotient_unique(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> bool;

    /// How [`quotient_unique`](Self::quotient_unique) decides.
    fn uniqueness_policy(&self) -> &'static str;

    /// Distance between two elements, for numeric carriers.
    fn residual(&self, _x: &Self::Elem, _y: &Self::Elem) -> Option<f64> {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeqOrderError {
    #[error("`{element}` has no least sharp dominator")]
    NotSharplyDominating { element: String },
    #[error("interval [0, b] needs b ≠ 0")]
    ZeroInterval,
}

/// A finite effect algebra with a verified product table.
#[derive(Debug, Clone)]
pub struct FiniteSea {
    alg: FiniteEffectAlgebra,
    table: SeqProductTable,
    hats: Vec<ElemId>,
}

impl FiniteSea {
    /// Refuses carriers where some element has no least sharp dominator.
    pub fn new(alg: FiniteEffectAlgebra, table: SeqProductTable) -> Result<Self, SeqOrderError> {
        let hats = alg
            .elements()
            .map(|a| {
                alg.hat_id(a).ok_or_else(|| SeqOrderError::NotSharplyDominating {
                    element: alg.elem_name(a).to_string(),
                })
            })
            .collect::<Result<_, _>>()?;
        Ok(Self { alg, table, hats })
    }

    pub fn algebra(&self) -> &FiniteEffectAlgebra {
        &self.alg
    }

    pub fn table(&self) -> &SeqProductTable {
        &self.table
    }

    pub fn elements(&self) -> Vec<ElemId> {
        self.alg.element_list()
    }

    fn as_table_sea(&self) -> TableSea<'_> {
        TableSea::new(&self.alg, &self.table)
    }
}

impl PartialAlgebra for FiniteSea {
    type Elem = ElemId;

    fn zero(&self) -> ElemId {
        self.alg.zero_id()
    }

    fn one(&self) -> ElemId {
        self.alg.one_id()
    }

    fn sum(&self, a: &ElemId, b: &ElemId) -> Option<ElemId> {
        self.alg.sum_id(*a, *b)
    }

    fn same(&self, a: &ElemId, b: &ElemId) -> bool {
        a == b
    }

    fn show(&self, a: &ElemId) -> String {
        self.alg.elem_name(*a).to_string()
    }
}

impl EffectAlgebra for FiniteSea {
    fn complement(&self, a: &ElemId) -> ElemId {
        self.alg.complement_id(*a)
    }

    fn leq(&self, a: &ElemId, b: &ElemId) -> bool {
        self.alg.leq_id(*a, *b)
    }
}

impl SequentialProduct for FiniteSea {
    fn product(&self, a: &ElemId, b: &ElemId) -> ElemId {
        self.as_table_sea().product(a, b)
    }
}

impl SharplyDominating for FiniteSea {
    fn hat(&self, a: &ElemId) -> ElemId {
        self.hats[a.0]
    }
}

impl SeaModel for FiniteSea {
    fn factor(&self, a: &ElemId, b: &ElemId) -> Option<ElemId> {
        self.alg.elements().find(|d| self.table.get(*b, *d) == *a)
    }

    fn quotient_unique(&self, a: &ElemId, b: &ElemId, c: &ElemId) -> bool {
        let bh = self.hat(b);
        self.alg
            .elements()
            .filter(|&d| self.alg.leq_id(d, bh) && self.table.get(*b, d) == *a)
            .all(|d| d == *c)
    }

    fn uniqueness_policy(&self) -> &'static str {
        "exhaustive"
    }
}

impl SeaModel for FuzzySystem {
    fn factor(&self, a: &FuzzyElement, b: &FuzzyElement) -> Option<FuzzyElement> {
        fuzzy_quotient(a, b).ok()
    }

    /// On `supp(b)` the value `a/b` is forced, and `c ≤ b̂` forces `0` off it.
    fn quotient_unique(&self, a: &FuzzyElement, b: &FuzzyElement, c: &FuzzyElement) -> bool {
        fuzzy_quotient(a, b).is_ok_and(|h| h == *c)
    }

    fn uniqueness_policy(&self) -> &'static str {
        "pointwise"
    }
}

impl SeaModel for HilbertEffects {
    fn factor(&self, a: &MatrixEffect, b: &MatrixEffect) -> Option<MatrixEffect> {
        hilbert_quotient(a, b).ok().map(|q| q.c)
    }

    /// Re-derives the quotient as `T T*` with `T = pinv(B^{1/2}) A^{1/2}` and
    /// compares.
    fn quotient_unique(&self, a: &MatrixEffect, b: &MatrixEffect, c: &MatrixEffect) -> bool {
        use crate::hilbert::{support_projection, QUOTIENT_TOL};
        let Ok(pb) = support_projection(b) else { return false };
        let e = b.eigen();
        let cut = crate::hilbert::cutoff(e);
        let pinv = e.apply(|l| if l > cut { 1.0 / l.sqrt() } else { 0.0 });
        let t = &pinv * &a.sqrt();
        let tt = &t * &t.adjoint();
        let pcp = &(pb.matrix() * c.matrix()) * pb.matrix();
        (&tt - c.matrix()).max_abs() <= QUOTIENT_TOL && (&pcp - c.matrix()).max_abs() <= QUOTIENT_TOL
    }

    fn uniqueness_policy(&self) -> &'static str {
        "residual-certified"
    }

    fn residual(&self, x: &MatrixEffect, y: &MatrixEffect) -> Option<f64> {
        Some(x.distance(y))
    }
}

impl SeaModel for HsModel {
    fn factor(&self, a: &HsElem, b: &HsElem) -> Option<HsElem> {
        HsModel::factor(self, a, b)
    }

    fn quotient_unique(&self, a: &HsElem, b: &HsElem, c: &HsElem) -> bool {
        HsModel::factor(self, a, b).is_some_and(|d| {
            let d = self.product(&self.hat(b), &d);
            self.same(&d, c)
        })
    }

    fn uniqueness_policy(&self) -> &'static str {
        "per summand"
    }
}

impl SeaModel for OmegaOmegaStar {
    /// `(ma)∘x ∈ {0, ma}`, `(ma)′∘(na) = na`, `(ma)′∘(na)′ = ((m+n)a)′`.
    fn factor(&self, a: &Omega, b: &Omega) -> Option<Omega> {
        match (*a, *b) {
            (Omega::Low(0), _) => Some(Omega::Low(0)),
            (x, y) if x == y && matches!(y, Omega::Low(_)) => Some(Omega::Up(0)),
            (_, Omega::Low(_)) => None,
            (Omega::Low(k), Omega::Up(_)) => Some(Omega::Low(k)),
            (Omega::Up(n), Omega::Up(m)) => (n >= m).then_some(Omega::Up(n - m)),
        }
    }

    fn quotient_unique(&self, a: &Omega, b: &Omega, c: &Omega) -> bool {
        let bound = match (*a, *b) {
            (Omega::Low(x) | Omega::Up(x), Omega::Low(y) | Omega::Up(y)) => x.max(y) + 2,
        };
        let bh = self.hat(b);
        self.window(bound)
            .into_iter()
            .filter(|d| self.leq(d, &bh) && self.product(b, d) == *a)
            .all(|d| d == *c)
    }

    fn uniqueness_policy(&self) -> &'static str {
        "window search"
    }
}

impl SeaModel for PolynomialSea {
    fn factor(&self, a: &Poly, b: &Poly) -> Option<Poly> {
        PolynomialSea::factor(self, a, b)
    }

    /// Polynomials form an integral domain, so `b c₁ = b c₂` with `b ≠ 0`
    /// gives `c₁ = c₂`.
    fn quotient_unique(&self, a: &Poly, b: &Poly, c: &Poly) -> bool {
        PolynomialSea::factor(self, a, b).is_some_and(|d| d == *c)
    }

    fn uniqueness_policy(&self) -> &'static str {
        "exact division"
    }
}

/// The sequential quotient `c = a/b` with its certificate.
#[derive(Debug, Clone)]
pub struct QuotientWitness<E> {
    pub a: E,
    pub b: E,
    pub c: E,
    /// `b∘c = a` and `c ≤ b̂` both hold.
    pub certified: bool,
    pub unique: bool,
    /// `‖b∘c − a‖` on numeric carriers.
    pub residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum QuotientError {
    #[error("a ≰ b")]
    NotBelow,
    /// Condition (1) fails for this pair.
    #[error("no d with a = b∘d")]
    NoFactor,
    #[error("certificate failed: {0}")]
    Certification(String),
}

/// `a/b = b̂∘d` for any `d` with `a = b∘d`.
pub fn sequential_quotient<M: SeaModel>(m: &M, a: &M::Elem, b: &M::Elem) -> Result<QuotientWitness<M::Elem>, QuotientError> {
    if !m.leq(a, b) {
        return Err(QuotientError::NotBelow);
    }
    let d = m.factor(a, b).ok_or(QuotientError::NoFactor)?;
    let bh = m.hat(b);
    let c = m.product(&bh, &d);
    let back = m.product(b, &c);
    let certified = m.same(&back, a) && m.leq(&c, &bh);
    if !certified {
        return Err(QuotientError::Certification(format!(
            "a={}, b={}: b∘c={} with c={}",
            m.show(a),
            m.show(b),
            m.show(&back),
            m.show(&c)
        )));
    }
    let unique = m.quotient_unique(a, b, &c);
    let residual = m.residual(&back, a);
    Ok(QuotientWitness {
        a: a.clone(),
        b: b.clone(),
        c,
        certified,
        unique,
        residual,
    })
}

fn quot<M: SeaModel>(m: &M, a: &M::Elem, b: &M::Elem) -> Option<M::Elem> {
    sequential_quotient(m, a, b).ok().map(|w| w.c)
}

/// Condition (1): every `a ≤ b` factors as `a = b∘c`. Pairs with `a ≰ b`
/// are skipped.
pub fn check_condition1<M: SeaModel>(m: &M, pairs: &[(M::Elem, M::Elem)]) -> CheckSet {
    let mut set = CheckSet::new("condition 1", format!("{} pairs", pairs.len()));
    let mut check = Check::new("a ≤ b ⇒ a = b∘c for some c");
    for (a, b) in pairs {
        if !m.leq(a, b) {
            check.skip();
            continue;
        }
        let ok = m.factor(a, b).is_some_and(|c| m.same(&m.product(b, &c), a));
        check.record(ok, || format!("a={}, b={}: no c with a = b∘c", m.show(a), m.show(b)));
    }
    set.push(check);
    set
}

/// Condition (2): `c∘a ≤ c∘b ⇒ ĉ∘a ≤ ĉ∘b`, on triples `(c, a, b)`.
pub fn check_condition2<M: SeaModel>(m: &M, triples: &[(M::Elem, M::Elem, M::Elem)]) -> CheckSet {
    let mut set = CheckSet::new("condition 2", format!("{} triples", triples.len()));
    let mut check = Check::new("c∘a ≤ c∘b ⇒ ĉ∘a ≤ ĉ∘b");
    for (c, a, b) in triples {
        if !m.leq(&m.product(c, a), &m.product(c, b)) {
            check.skip();
            continue;
        }
        let ch = m.hat(c);
        let (l, r) = (m.product(&ch, a), m.product(&ch, b));
        check.record(m.leq(&l, &r), || {
            format!(
                "c={}, a={}, b={}: c∘a={} ≤ c∘b={} but ĉ∘a={} ≰ ĉ∘b={}",
                m.show(c),
                m.show(a),
                m.show(b),
                m.show(&m.product(c, a)),
                m.show(&m.product(c, b)),
                m.show(&l),
                m.show(&r)
            )
        });
    }
    set.push(check);
    set
}

/// `â` is sharp, dominates `a`, and lies below every sharp dominator of `a`
/// found in `elems`.
pub fn check_sharply_dominating<M: SeaModel>(m: &M, elems: &[M::Elem]) -> CheckSet {
    let mut set = CheckSet::new("sharp domination", format!("{} elements", elems.len()));
    let mut check = Check::new("â is the least sharp dominator");
    let sharp: Vec<&M::Elem> = elems.iter().filter(|s| m.is_sharp(s)).collect();
    for a in elems {
        let h = m.hat(a);
        let least = sharp.iter().filter(|s| m.leq(a, s)).all(|s| m.leq(&h, s));
        check.record(m.is_sharp(&h) && m.leq(a, &h) && least, || format!("a={}: â={}", m.show(a), m.show(&h)));
    }
    set.push(check);
    set
}

struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    fn new(names: &[&str]) -> Self {
        Self {
            checks: names.iter().map(|n| Check::new(*n)).collect(),
        }
    }

    fn at(&mut self, name: &str) -> &mut Check {
        self.checks.iter_mut().find(|c| c.name == name).expect("declared check")
    }

    /// Records `f()`; `None` means a quotient the identity needs is missing.
    fn run(&mut self, name: &str, f: impl FnOnce() -> Option<(bool, String)>) {
        let c = self.at(name);
        match f() {
            Some((ok, w)) => c.record(ok, || w),
            None => c.skip(),
        }
    }
}

const IDENTITIES: &[&str] = &[
    "a/a = â",
    "a sharp iff a/a = a",
    "b sharp, a ≤ b ⇒ a/b = a",
    "b sharp, b ≤ a ⇒ b/a = b",
    "a/1 = a and 0/a = 0",
    "a^(n+m)/a^m = a^n",
    "a∘(b∘c) = (a∘b)∘d with d ≤ (a∘b)^",
    "d = (a/b)′ ≥ b̂′ and a ⊕ b∘d = b",
    "(b⊖a)/b = b̂∘(a/b)′",
    "(a∘b)/a = â∘b",
    "a ≤ b ≤ c ⇒ a/c ≤ b/c",
    "a⊕b ≤ c iff a/c ⊥ b/c",
    "(a⊕b)/c = a/c ⊕ b/c ≤ ĉ",
    "a/(a⊕b) = (a⊕b)^∘[b/(a⊕b)]′",
    "a ≤ b, b∣(a/b) ⇒ b∣a",
    "quotient uniqueness",
];

/// The quotient identities, instantiated from each triple `(x, y, z)`.
/// Comparable pairs are manufactured as `a = y∘x ≤ y`, chains as
/// `z∘y∘x ≤ z∘y ≤ z`, and orthogonal pairs below `z` as `z∘x, z∘(x′∘y)`.
/// Instances whose quotients do not exist are skipped, not failed.
pub fn identity_suite<M: SeaModel>(m: &M, triples: &[(M::Elem, M::Elem, M::Elem)]) -> CheckSet {
    let mut s = Suite::new(IDENTITIES);
    let sh = |x: &M::Elem| m.show(x);
    let one = m.one();
    let zero = m.zero();
    for (x, y, z) in triples {
        s.run(IDENTITIES[0], || {
            let q = quot(m, x, x)?;
            Some((m.same(&q, &m.hat(x)), format!("a={}: a/a={}", sh(x), sh(&q))))
        });
        for a in [x.clone(), m.hat(x)] {
            s.run(IDENTITIES[1], || {
                let q = quot(m, &a, &a)?;
                Some((m.is_sharp(&a) == m.same(&q, &a), format!("a={}: a/a={}", sh(&a), sh(&q))))
            });
        }
        let b = m.hat(y);
        let below = m.product(&b, x);
        s.run(IDENTITIES[2], || {
            let q = quot(m, &below, &b)?;
            Some((m.same(&q, &below), format!("a={}, b={}: a/b={}", sh(&below), sh(&b), sh(&q))))
        });
        let above = m.sum(&b, &m.product(&m.complement(&b), x));
        s.run(IDENTITIES[3], || {
            let a = above.clone()?;
            let q = quot(m, &b, &a)?;
            Some((m.same(&q, &b), format!("a={}, b={}: b/a={}", sh(&a), sh(&b), sh(&q))))
        });
        s.run(IDENTITIES[4], || {
            let q1 = quot(m, x, &one)?;
            let q0 = quot(m, &zero, x)?;
            Some((m.same(&q1, x) && m.same(&q0, &zero), format!("a={}: a/1={}, 0/a={}", sh(x), sh(&q1), sh(&q0))))
        });
        for (n, k) in [(1u32, 0u32), (1, 1), (2, 1), (1, 2)] {
            s.run(IDENTITIES[5], || {
                let q = quot(m, &m.power(x, n + k), &m.power(x, k))?;
                let an = m.power(x, n);
                Some((m.same(&q, &an), format!("a={}, n={n}, m={k}: quotient {}", sh(x), sh(&q))))
            });
        }

        let (a, b, c) = (x, y, z);
        let ab = m.product(a, b);
        let lhs = m.product(a, &m.product(b, c));
        s.run(IDENTITIES[6], || {
            let w = sequential_quotient(m, &lhs, &ab).ok()?;
            let ok = m.leq(&w.c, &m.hat(&ab)) && m.same(&m.product(&ab, &w.c), &lhs) && w.unique;
            Some((ok, format!("a={}, b={}, c={}: d={}", sh(a), sh(b), sh(c), sh(&w.c))))
        });

        // a = y∘x ≤ b = y
        let (b, a) = (y.clone(), m.product(y, x));
        let ab_q = quot(m, &a, &b);
        let bh = m.hat(&b);
        s.run(IDENTITIES[7], || {
            let d = m.complement(ab_q.as_ref()?);
            let ok = m.leq(&m.complement(&bh), &d) && m.sum(&a, &m.product(&b, &d)).is_some_and(|t| m.same(&t, &b));
            Some((ok, format!("a={}, b={}: d={}", sh(&a), sh(&b), sh(&d))))
        });
        s.run(IDENTITIES[8], || {
            let lhs = quot(m, &m.minus(&b, &a)?, &b)?;
            let rhs = m.product(&bh, &m.complement(ab_q.as_ref()?));
            Some((m.same(&lhs, &rhs), format!("a={}, b={}: {} vs {}", sh(&a), sh(&b), sh(&lhs), sh(&rhs))))
        });
        s.run(IDENTITIES[9], || {
            let q = quot(m, &m.product(x, y), x)?;
            let rhs = m.product(&m.hat(x), y);
            Some((m.same(&q, &rhs), format!("a={}, b={}: (a∘b)/a={} vs â∘b={}", sh(x), sh(y), sh(&q), sh(&rhs))))
        });
        s.run(IDENTITIES[14], || {
            let q = ab_q.clone()?;
            if !m.commute(&b, &q) {
                return None;
            }
            Some((m.commute(&b, &a), format!("a={}, b={}", sh(&a), sh(&b))))
        });
        s.run(IDENTITIES[15], || {
            let w = sequential_quotient(m, &a, &b).ok()?;
            Some((w.unique, format!("a={}, b={}: c={} not unique", sh(&a), sh(&b), sh(&w.c))))
        });

        // a ≤ b ≤ c built as z∘y∘x ≤ z∘y ≤ z
        let c = z.clone();
        let b2 = m.product(&c, y);
        let a2 = m.product(&b2, x);
        s.run(IDENTITIES[10], || {
            let (qa, qb) = (quot(m, &a2, &c)?, quot(m, &b2, &c)?);
            Some((m.leq(&qa, &qb), format!("a={}, b={}, c={}: a/c={} ≰ b/c={}", sh(&a2), sh(&b2), sh(&c), sh(&qa), sh(&qb))))
        });

        // a, b ≤ c with a ⊕ b ≤ c, and an unconstrained second pair
        let a3 = m.product(&c, x);
        let rest = m.product(&m.complement(x), y);
        let b3 = m.product(&c, &rest);
        for (p, r) in [(a3.clone(), b3.clone()), (a3.clone(), m.product(&c, y))] {
            s.run(IDENTITIES[11], || {
                let (qp, qr) = (quot(m, &p, &c)?, quot(m, &r, &c)?);
                let left = m.sum(&p, &r).is_some_and(|t| m.leq(&t, &c));
                let right = m.sum(&qp, &qr).is_some();
                Some((left == right, format!("a={}, b={}, c={}: a⊕b ≤ c is {left}, a/c ⊥ b/c is {right}", sh(&p), sh(&r), sh(&c))))
            });
        }
        s.run(IDENTITIES[12], || {
            let (qa, qb) = (quot(m, &a3, &c)?, quot(m, &b3, &c)?);
            let sum = m.sum(&a3, &b3)?;
            let qs = quot(m, &sum, &c)?;
            let joined = m.sum(&qa, &qb);
            let ok = joined.as_ref().is_some_and(|j| m.same(j, &qs) && m.leq(j, &m.hat(&c)));
            Some((ok, format!("a={}, b={}, c={}: (a⊕b)/c={}", sh(&a3), sh(&b3), sh(&c), sh(&qs))))
        });
        s.run(IDENTITIES[13], || {
            let sum = m.sum(&a3, &b3)?;
            let lhs = quot(m, &a3, &sum)?;
            let rhs = m.product(&m.hat(&sum), &m.complement(&quot(m, &b3, &sum)?));
            Some((m.same(&lhs, &rhs), format!("a={}, b={}: {} vs {}", sh(&a3), sh(&b3), sh(&lhs), sh(&rhs))))
        });
    }
    let mut set = CheckSet::new(
        "quotient identities",
        format!("{} triples, uniqueness {}", triples.len(), m.uniqueness_policy()),
    );
    for c in s.checks {
        set.push(c);
    }
    set
}

/// Checks that a candidate quotient satisfies `(a∘b)//a = â∘b` and agrees
/// with the sequential quotient on comparable pairs `y∘x ≤ y`.
pub fn quotient_characterization<M: SeaModel>(
    m: &M,
    candidate: impl Fn(&M::Elem, &M::Elem) -> Option<M::Elem>,
    pairs: &[(M::Elem, M::Elem)],
) -> CheckSet {
    let mut set = CheckSet::new("quotient characterization", format!("{} pairs", pairs.len()));
    let mut ident = Check::new("(a∘b)//a = â∘b");
    let mut agree = Check::new("// coincides with /");
    for (x, y) in pairs {
        let ab = m.product(x, y);
        let rhs = m.product(&m.hat(x), y);
        match candidate(&ab, x) {
            Some(q) => ident.record(m.same(&q, &rhs), || {
                format!("a={}, b={}: (a∘b)//a={} but â∘b={}", m.show(x), m.show(y), m.show(&q), m.show(&rhs))
            }),
            None => ident.fail(format!("a={}, b={}: (a∘b)//a undefined", m.show(x), m.show(y))),
        }
        let a = m.product(y, x);
        match (candidate(&a, y), quot(m, &a, y)) {
            (Some(p), Some(q)) => agree.record(m.same(&p, &q), || {
                format!("a={}, b={}: a//b={} but a/b={}", m.show(&a), m.show(y), m.show(&p), m.show(&q))
            }),
            (None, Some(_)) => agree.fail(format!("a={}, b={}: a//b undefined", m.show(&a), m.show(y))),
            _ => agree.skip(),
        }
    }
    set.push(ident);
    set.push(agree);
    set
}

/// `([0,b], 0, b, ⊕, ∘_b)` with `a ∘_b c = b∘[(a/b)∘(c/b)]`.
pub struct IntervalSea<'m, M: SeaModel> {
    model: &'m M,
    b: M::Elem,
    b_hat: M::Elem,
    /// First operation that left `[0,b]` or had no quotient over `b`. The
    /// operation then returns `0` so checking can carry on.
    undefined: RefCell<Option<String>>,
}

impl<'m, M: SeaModel> IntervalSea<'m, M> {
    pub fn new(model: &'m M, b: M::Elem) -> Result<Self, SeqOrderError> {
        if model.is_zero(&b) {
            return Err(SeqOrderError::ZeroInterval);
        }
        let b_hat = model.hat(&b);
        Ok(Self {
            model,
            b,
            b_hat,
            undefined: RefCell::new(None),
        })
    }

    pub fn unit(&self) -> &M::Elem {
        &self.b
    }

    /// Where `∘_b` or `′` was undefined, if anywhere so far.
    pub fn undefined(&self) -> Option<String> {
        self.undefined.borrow().clone()
    }

    fn give_up(&self, what: impl FnOnce() -> String) -> M::Elem {
        self.undefined.borrow_mut().get_or_insert_with(what);
        self.model.zero()
    }

    /// `φ_b(a) = a/b`, from `[0,b]` onto `[0,b̂]`.
    pub fn phi(&self, a: &M::Elem) -> Option<M::Elem> {
        quot(self.model, a, &self.b)
    }

    /// `ψ(c) = b∘c`, the inverse of `φ_b`.
    pub fn psi(&self, c: &M::Elem) -> M::Elem {
        self.model.product(&self.b, c)
    }
}

impl<M: SeaModel> PartialAlgebra for IntervalSea<'_, M> {
    type Elem = M::Elem;

    fn zero(&self) -> M::Elem {
        self.model.zero()
    }

    fn one(&self) -> M::Elem {
        self.b.clone()
    }

    fn sum(&self, a: &M::Elem, c: &M::Elem) -> Option<M::Elem> {
        self.model.sum(a, c).filter(|s| self.model.leq(s, &self.b))
    }

    fn same(&self, a: &M::Elem, c: &M::Elem) -> bool {
        self.model.same(a, c)
    }

    fn show(&self, a: &M::Elem) -> String {
        self.model.show(a)
    }
}

impl<M: SeaModel> EffectAlgebra for IntervalSea<'_, M> {
    fn complement(&self, a: &M::Elem) -> M::Elem {
        match self.model.minus(&self.b, a) {
            Some(c) => c,
            None => self.give_up(|| format!("{} ≰ b", self.model.show(a))),
        }
    }

    fn leq(&self, a: &M::Elem, c: &M::Elem) -> bool {
        self.model.leq(a, c)
    }
}

impl<M: SeaModel> SequentialProduct for IntervalSea<'_, M> {
    fn product(&self, a: &M::Elem, c: &M::Elem) -> M::Elem {
        match (self.phi(a), self.phi(c)) {
            (Some(x), Some(y)) => self.psi(&self.model.product(&x, &y)),
            (pa, _) => {
                let missing = if pa.is_none() { a } else { c };
                self.give_up(|| format!("{}/b does not exist", self.model.show(missing)))
            }
        }
    }
}

/// Builds `([0,b], ∘_b)` and checks it: the SEA axioms on elements `b∘x`,
/// `(a∘_b c)/b = (a/b)∘(c/b)`, `φ_b` an isomorphism onto `[0,b̂]`, and for
/// sharp `b`, `∘_b` the restriction of `∘`.
pub fn interval_sea<M: SeaModel>(m: &M, b: &M::Elem, triples: &[(M::Elem, M::Elem, M::Elem)]) -> Result<CheckSet, SeqOrderError> {
    let iv = IntervalSea::new(m, b.clone())?;
    let sh = |x: &M::Elem| m.show(x);
    let inside: Vec<(M::Elem, M::Elem, M::Elem)> = triples
        .iter()
        .map(|(x, y, z)| (m.product(b, x), m.product(b, y), m.product(b, z)))
        .collect();
    let mut set = CheckSet::new(format!("interval SEA [0,{}]", sh(b)), format!("{} triples", triples.len()));

    let axioms = crate::axioms::check_sea_axioms_sampled(&iv, &inside);
    for mut c in axioms.checks.checks {
        c.name = format!("interval {}", c.name);
        set.push(c);
    }

    let mut ident = Check::new("(a∘_b c)/b = (a/b)∘(c/b)");
    let mut additive = Check::new("φ_b additive");
    let mut unit = Check::new("φ_b(b) = b̂");
    let mut inverse = Check::new("φ_b bijective onto [0,b̂]");
    let mut restrict = Check::new("b sharp ⇒ ∘_b is ∘ restricted");
    unit.record(iv.phi(b).is_some_and(|p| m.same(&p, &iv.b_hat)), || format!("b={}", sh(b)));

    for ((a, c, _), (x, _, _)) in inside.iter().zip(triples) {
        match (iv.phi(a), iv.phi(c)) {
            (Some(pa), Some(pc)) => {
                let prod = iv.product(a, c);
                match iv.phi(&prod) {
                    Some(lhs) => {
                        let rhs = m.product(&pa, &pc);
                        ident.record(m.same(&lhs, &rhs), || format!("a={}, c={}: {} vs {}", sh(a), sh(c), sh(&lhs), sh(&rhs)));
                    }
                    None => ident.fail(format!("a∘_b c = {} has no quotient", sh(&prod))),
                }
                inverse.record(m.same(&iv.psi(&pa), a), || format!("a={}: b∘(a/b) ≠ a", sh(a)));
                if let Some(s) = iv.sum(a, c) {
                    let ok = iv.phi(&s).is_some_and(|ps| m.sum(&pa, &pc).is_some_and(|t| m.same(&t, &ps)));
                    additive.record(ok, || format!("a={}, c={}", sh(a), sh(c)));
                }
                if m.is_sharp(b) {
                    restrict.record(m.same(&prod, &m.product(a, c)), || format!("a={}, c={}", sh(a), sh(c)));
                }
            }
            _ => {
                ident.skip();
                inverse.skip();
            }
        }
        // onto: every c ≤ b̂ is φ_b(b∘c)
        let cb = m.product(&iv.b_hat, x);
        match iv.phi(&iv.psi(&cb)) {
            Some(p) => inverse.record(m.same(&p, &cb), || format!("c={}: φ_b(b∘c)={}", sh(&cb), sh(&p))),
            None => inverse.skip(),
        }
    }
    let mut closed = Check::new("∘_b and ′ defined on the samples");
    match iv.undefined() {
        Some(w) => closed.fail(w),
        None => closed.pass(),
    }
    for c in [closed, ident, additive, unit, inverse, restrict] {
        set.push(c);
    }
    Ok(set)
}

/// All triples over a finite element list.
pub fn all_triples<E: Clone>(elems: &[E]) -> Vec<(E, E, E)> {
    let mut out = Vec::with_capacity(elems.len().pow(3));
    for x in elems {
        for y in elems {
            for z in elems {
                out.push((x.clone(), y.clone(), z.clone()));
            }
        }
    }
    out
}

pub fn all_pairs<E: Clone>(elems: &[E]) -> Vec<(E, E)> {
    elems.iter().flat_map(|x| elems.iter().map(move |y| (x.clone(), y.clone()))).collect()
}

/// Finds the first failing instance of a report, for models that are
/// expected to fail.
pub fn counterexample(set: &CheckSet) -> Option<String> {
    set.failures().next().and_then(|c| c.witness.clone())
}
