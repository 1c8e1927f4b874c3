//! Carrier-agnostic interfaces shared by every model in the crate.
//!
//! A model is described by a small tower of traits. [`PartialAlgebra`] is the
//! raw signature `(E, 0, 1, ⊕)` with no axioms assumed, which is what the axiom
//! checker needs. [`EffectAlgebra`] adds the orthocomplement and the derived
//! order. [`SequentialProduct`] and [`SharplyDominating`] add `∘` and `â`.

use std::fmt::Debug;

/// The signature `(E, 0, 1, ⊕)` of a partial algebra.
pub trait PartialAlgebra {
    type Elem: Clone + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;

    /// `a ⊕ b`, or `None` when the sum is undefined.
    fn sum(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    /// Element equality. Numeric carriers compare to a tolerance.
    fn same(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    /// Human-readable rendering used in report witnesses.
    fn show(&self, a: &Self::Elem) -> String {
        format!("{a:?}")
    }
}

/// A partial algebra known to satisfy (A1)–(A4).
pub trait EffectAlgebra: PartialAlgebra {
    /// The unique `a′` with `a ⊕ a′ = 1`.
    fn complement(&self, a: &Self::Elem) -> Self::Elem;

    fn orthogonal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.sum(a, b).is_some()
    }

    /// `a ≤ b`, decided through `a ⊥ b′`.
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.orthogonal(a, &self.complement(b))
    }

    /// `b ⊖ a`, the unique `c` with `a ⊕ c = b`. Equal to `(a ⊕ b′)′`.
    fn minus(&self, b: &Self::Elem, a: &Self::Elem) -> Option<Self::Elem> {
        self.sum(a, &self.complement(b)).map(|s| self.complement(&s))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.same(a, &self.zero())
    }
}

/// An effect algebra equipped with a binary operation `∘` intended to be a
/// sequential product. Whether it is one is decided by
/// [`check_sea_axioms`](crate::axioms::check_sea_axioms).
pub trait SequentialProduct: EffectAlgebra {
    fn product(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// `a ∣ b`: the two products agree.
    fn commute(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.same(&self.product(a, b), &self.product(b, a))
    }

    /// `aⁿ = a ∘ a ∘ … ∘ a`, with `a⁰ = 1`.
    fn power(&self, a: &Self::Elem, n: u32) -> Self::Elem {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.product(a, &acc);
        }
        acc
    }
}

/// Every element has a least sharp element above it.
pub trait SharplyDominating: EffectAlgebra {
    fn hat(&self, a: &Self::Elem) -> Self::Elem;

    fn is_sharp(&self, a: &Self::Elem) -> bool {
        self.same(&self.hat(a), a)
    }
}
