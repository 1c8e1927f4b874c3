//! Infinite effect algebras with computable operations: `ω + ω*` and the
//! lexicographic extension `E_ℤ` of a finite effect algebra.
//!
//! Both are checked on finite windows; see [`OmegaOmegaStar::window`] and
//! [`LexExtension::window`].

use std::fmt;

use serde::Serialize;

use crate::algebra::{EffectAlgebra, PartialAlgebra, SequentialProduct, SharplyDominating};
use crate::finite::{ElemId, FiniteEffectAlgebra};

/// Default window size for bounded checks on symbolic carriers.
pub const DEFAULT_WINDOW: u64 = 20;

/// An element of `ω + ω*`: either `m·a` or its complement `(m·a)′`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Omega {
    Low(u64),
    Up(u64),
}

impl fmt::Display for Omega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Omega::Low(0) => write!(f, "0"),
            Omega::Low(1) => write!(f, "a"),
            Omega::Low(m) => write!(f, "{m}a"),
            Omega::Up(0) => write!(f, "1"),
            Omega::Up(1) => write!(f, "a'"),
            Omega::Up(m) => write!(f, "({m}a)'"),
        }
    }
}

/// The chain `0 < a < 2a < … < (2a)′ < a′ < 1` with `(ma) ⊕ (na) = (m+n)a`
/// and `(ma)′ ⊕ (na) = ((m−n)a)′` for `n ≤ m`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OmegaOmegaStar;

impl OmegaOmegaStar {
    /// `{0, a, …, Ka, (Ka)′, …, a′, 1}`, closed under complement.
    pub fn window(&self, k: u64) -> Vec<Omega> {
        (0..=k).map(Omega::Low).chain((0..=k).rev().map(Omega::Up)).collect()
    }

    pub fn multiple(&self, m: u64) -> Omega {
        Omega::Low(m)
    }
}

impl PartialAlgebra for OmegaOmegaStar {
    type Elem = Omega;

    fn zero(&self) -> Omega {
        Omega::Low(0)
    }

    fn one(&self) -> Omega {
        Omega::Up(0)
    }

    fn sum(&self, a: &Omega, b: &Omega) -> Option<Omega> {
        match (*a, *b) {
            (Omega::Low(m), Omega::Low(n)) => Some(Omega::Low(m + n)),
            (Omega::Up(m), Omega::Low(n)) | (Omega::Low(n), Omega::Up(m)) => (n <= m).then(|| Omega::Up(m - n)),
            (Omega::Up(_), Omega::Up(_)) => None,
        }
    }

    fn same(&self, a: &Omega, b: &Omega) -> bool {
        a == b
    }

    fn show(&self, a: &Omega) -> String {
        a.to_string()
    }
}

impl EffectAlgebra for OmegaOmegaStar {
    fn complement(&self, a: &Omega) -> Omega {
        match *a {
            Omega::Low(m) => Omega::Up(m),
            Omega::Up(m) => Omega::Low(m),
        }
    }

    fn leq(&self, a: &Omega, b: &Omega) -> bool {
        match (*a, *b) {
            (Omega::Low(m), Omega::Low(n)) => m <= n,
            (Omega::Low(_), Omega::Up(_)) => true,
            (Omega::Up(_), Omega::Low(_)) => false,
            (Omega::Up(m), Omega::Up(n)) => n <= m,
        }
    }
}

impl SequentialProduct for OmegaOmegaStar {
    fn product(&self, a: &Omega, b: &Omega) -> Omega {
        match (*a, *b) {
            (Omega::Low(_), Omega::Low(_)) => Omega::Low(0),
            // ma ≤ (na)′ always, so the meet is the Low operand
            (Omega::Low(m), Omega::Up(_)) | (Omega::Up(_), Omega::Low(m)) => Omega::Low(m),
            (Omega::Up(m), Omega::Up(n)) => Omega::Up(m + n),
        }
    }
}

impl SharplyDominating for OmegaOmegaStar {
    fn hat(&self, a: &Omega) -> Omega {
        match *a {
            Omega::Low(0) => Omega::Low(0),
            _ => Omega::Up(0),
        }
    }
}

/// An element `(a, g)` of the lexicographic extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct LexElement {
    pub base: ElemId,
    pub offset: i64,
}

/// `E_ℤ = (E ∖ {0,1}) × ℤ ∪ {(0,g), (1,−g) : g ≥ 0}` with componentwise sum
/// wherever the result is admitted. Its only sharp elements are `(0,0)` and
/// `(1,0)`, while `a ↦ (a, 0)` embeds `E`.
#[derive(Debug, Clone)]
pub struct LexExtension {
    base: FiniteEffectAlgebra,
}

impl LexExtension {
    pub fn new(base: FiniteEffectAlgebra) -> Self {
        Self { base }
    }

    pub fn base(&self) -> &FiniteEffectAlgebra {
        &self.base
    }

    pub fn admitted(&self, a: ElemId, g: i64) -> bool {
        if a == self.base.zero_id() {
            g >= 0
        } else if a == self.base.one_id() {
            g <= 0
        } else {
            true
        }
    }

    pub fn element(&self, a: ElemId, g: i64) -> Option<LexElement> {
        self.admitted(a, g).then_some(LexElement { base: a, offset: g })
    }

    /// `φ(a) = (a, 0)`.
    pub fn embed(&self, a: ElemId) -> LexElement {
        LexElement { base: a, offset: 0 }
    }

    /// Admitted elements with `|g| ≤ k`, base elements in declaration order.
    pub fn window(&self, k: i64) -> Vec<LexElement> {
        self.base
            .elements()
            .flat_map(|a| (-k..=k).filter_map(move |g| self.element(a, g)))
            .collect()
    }
}

impl PartialAlgebra for LexExtension {
    type Elem = LexElement;

    fn zero(&self) -> LexElement {
        self.embed(self.base.zero_id())
    }

    fn one(&self) -> LexElement {
        self.embed(self.base.one_id())
    }

    fn sum(&self, a: &LexElement, b: &LexElement) -> Option<LexElement> {
        let s = self.base.sum_id(a.base, b.base)?;
        self.element(s, a.offset.checked_add(b.offset)?)
    }

    fn same(&self, a: &LexElement, b: &LexElement) -> bool {
        a == b
    }

    fn show(&self, a: &LexElement) -> String {
        format!("({},{})", self.base.elem_name(a.base), a.offset)
    }
}

impl EffectAlgebra for LexExtension {
    fn complement(&self, a: &LexElement) -> LexElement {
        LexElement {
            base: self.base.complement_id(a.base),
            offset: -a.offset,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{check_effect_axioms, check_sea_axioms};
    use crate::catalog;

    #[test]
    fn omega_sums() {
        let w = OmegaOmegaStar;
        assert_eq!(w.sum(&Omega::Low(2), &Omega::Low(3)), Some(Omega::Low(5)));
        assert_eq!(w.sum(&Omega::Up(5), &Omega::Low(2)), Some(Omega::Up(3)));
        assert_eq!(w.sum(&Omega::Up(1), &Omega::Low(2)), None);
        assert_eq!(w.sum(&Omega::Up(1), &Omega::Up(2)), None);
    }

    #[test]
    fn omega_window_axioms() {
        let w = OmegaOmegaStar;
        let elems = w.window(DEFAULT_WINDOW);
        assert!(check_effect_axioms(&w, &elems).passed());
        let r = check_sea_axioms(&w, &elems);
        assert!(r.passed(), "{}", r.checks.render());
        assert!(r.commutative);
    }

    #[test]
    fn lex_sums_and_admission() {
        let c2 = catalog::chain(1).unwrap();
        let e = LexExtension::new(c2.clone());
        let z = c2.zero_id();
        let a = e.element(z, 1).unwrap();
        let b = e.element(z, 2).unwrap();
        assert_eq!(e.sum(&a, &b), e.element(z, 3));

        let c3 = catalog::chain(2).unwrap();
        let e3 = LexExtension::new(c3.clone());
        let x = e3.element(c3.lookup("a").unwrap(), -5).unwrap();
        let y = e3.element(c3.lookup("a").unwrap(), 7).unwrap();
        // (1, 2) is not admitted
        assert_eq!(e3.sum(&x, &y), None);
        assert!(!e3.admitted(c3.one_id(), 2));
    }

    #[test]
    fn lex_window_is_an_effect_algebra() {
        for base in [catalog::chain(2).unwrap(), catalog::boolean(2).unwrap(), catalog::diamond()] {
            let e = LexExtension::new(base);
            let w = e.window(4);
            let r = check_effect_axioms(&e, &w);
            assert!(r.passed(), "{}", r.render());
        }
    }
}
