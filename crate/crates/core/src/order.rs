//! The order `a ≤ b ⟺ ∃c. a ⊕ c = b`, sharp elements, and coexistence.

use serde::Serialize;

use crate::algebra::{EffectAlgebra, PartialAlgebra};
use crate::finite::{ElemId, FiniteEffectAlgebra};

/// `≤` on an indexed element list, together with the witnesses `b ⊖ a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderRelation {
    n: usize,
    leq: Vec<bool>,
    diff: Vec<Option<usize>>,
}

/// Derives `≤` by searching `elems` for `⊕`-witnesses. Exact on a finite
/// carrier; on a window, only witnesses inside the window are found.
pub fn derive_order<A: PartialAlgebra>(alg: &A, elems: &[A::Elem]) -> OrderRelation {
    let n = elems.len();
    let mut diff = vec![None; n * n];
    for (i, a) in elems.iter().enumerate() {
        for (k, c) in elems.iter().enumerate() {
            let Some(s) = alg.sum(a, c) else { continue };
            if let Some(j) = elems.iter().position(|x| alg.same(x, &s)) {
                diff[i * n + j].get_or_insert(k);
            }
        }
    }
    let leq = diff.iter().map(Option::is_some).collect();
    OrderRelation { n, leq, diff }
}

/// Derives `≤` on a window of a computable effect algebra. The witness
/// `b ⊖ a = (a ⊕ b′)′` is computed and confirmed by `a ⊕ (b ⊖ a) = b`, so it
/// may lie outside the window; `minus` only reports witnesses inside it.
pub fn derive_window_order<A: EffectAlgebra>(alg: &A, elems: &[A::Elem]) -> OrderRelation {
    let n = elems.len();
    let mut leq = vec![false; n * n];
    let mut diff = vec![None; n * n];
    for (i, a) in elems.iter().enumerate() {
        for (j, b) in elems.iter().enumerate() {
            let Some(c) = alg.minus(b, a) else { continue };
            if alg.sum(a, &c).is_some_and(|s| alg.same(&s, b)) {
                leq[i * n + j] = true;
                diff[i * n + j] = elems.iter().position(|x| alg.same(x, &c));
            }
        }
    }
    OrderRelation { n, leq, diff }
}

impl OrderRelation {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq_idx(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.n + j]
    }

    pub fn leq(&self, a: ElemId, b: ElemId) -> bool {
        self.leq_idx(a.0, b.0)
    }

    /// Index of `b ⊖ a` when `a ≤ b`.
    pub fn minus_idx(&self, b: usize, a: usize) -> Option<usize> {
        self.diff[a * self.n + b]
    }

    pub fn minus(&self, b: ElemId, a: ElemId) -> Option<ElemId> {
        self.minus_idx(b.0, a.0).map(ElemId)
    }

    pub fn lower_bounds(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.n).filter(|&k| self.leq_idx(k, i) && self.leq_idx(k, j)).collect()
    }

    /// The meet as the unique maximal common lower bound, if there is one.
    pub fn meet_idx(&self, i: usize, j: usize) -> Option<usize> {
        let lbs = self.lower_bounds(i, j);
        let maximal: Vec<usize> = lbs
            .iter()
            .copied()
            .filter(|&k| lbs.iter().all(|&m| m == k || !self.leq_idx(k, m)))
            .collect();
        match maximal.as_slice() {
            [k] if lbs.iter().all(|&m| self.leq_idx(m, *k)) => Some(*k),
            _ => None,
        }
    }

    pub fn meet(&self, a: ElemId, b: ElemId) -> Option<ElemId> {
        self.meet_idx(a.0, b.0).map(ElemId)
    }

    pub fn is_partial_order(&self) -> bool {
        let n = self.n;
        let refl = (0..n).all(|i| self.leq_idx(i, i));
        let antisym = (0..n).all(|i| (0..n).all(|j| i == j || !(self.leq_idx(i, j) && self.leq_idx(j, i))));
        let trans = (0..n).all(|i| {
            (0..n).all(|j| !self.leq_idx(i, j) || (0..n).all(|k| !self.leq_idx(j, k) || self.leq_idx(i, k)))
        });
        refl && antisym && trans
    }

    /// A linear extension: indices sorted by the number of elements below.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.n).collect();
        idx.sort_by_key(|&i| ((0..self.n).filter(|&k| self.leq_idx(k, i)).count(), i));
        idx
    }

    /// Whether the order is total.
    pub fn is_chain(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.leq_idx(i, j) || self.leq_idx(j, i)))
    }
}

/// Sharp elements of an indexed list plus the orthoalgebra flag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SharpReport {
    /// Indices into the element list.
    pub sharp: Vec<usize>,
    /// `a ⊥ a ⇒ a = 0` over the list.
    pub orthoalgebra: bool,
}

/// `a` is sharp when `0` is its only common lower bound with `a′`.
pub fn sharp_elements<A: EffectAlgebra>(alg: &A, elems: &[A::Elem], order: &OrderRelation) -> SharpReport {
    let zero = alg.zero();
    let idx_of = |x: &A::Elem| elems.iter().position(|y| alg.same(x, y));
    let sharp = (0..elems.len())
        .filter(|&i| {
            let Some(j) = idx_of(&alg.complement(&elems[i])) else {
                return false;
            };
            order.lower_bounds(i, j).iter().all(|&k| alg.same(&elems[k], &zero))
        })
        .collect();
    let orthoalgebra = elems
        .iter()
        .all(|a| alg.sum(a, a).is_none() || alg.same(a, &zero));
    SharpReport { sharp, orthoalgebra }
}

impl FiniteEffectAlgebra {
    pub fn sharp_elements(&self) -> Vec<ElemId> {
        let elems = self.element_list();
        sharp_elements(self, &elems, self.order()).sharp.into_iter().map(ElemId).collect()
    }

    pub fn is_sharp_id(&self, a: ElemId) -> bool {
        let ac = self.complement_id(a);
        self.elements()
            .all(|c| c == self.zero_id() || !(self.leq_id(c, a) && self.leq_id(c, ac)))
    }

    pub fn is_orthoalgebra(&self) -> bool {
        let z = self.zero_id();
        self.elements().all(|a| a == z || self.sum_id(a, a).is_none())
    }

    /// Least sharp element above `a`, if one exists.
    pub fn hat_id(&self, a: ElemId) -> Option<ElemId> {
        let dominators: Vec<ElemId> = self
            .sharp_elements()
            .into_iter()
            .filter(|&s| self.leq_id(a, s))
            .collect();
        dominators
            .iter()
            .copied()
            .find(|&s| dominators.iter().all(|&t| self.leq_id(s, t)))
    }
}

/// A Mackey decomposition `a = c ⊕ d`, `b = c ⊕ e` with `c ⊕ d ⊕ e` defined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Coexistence {
    pub c: ElemId,
    pub d: ElemId,
    pub e: ElemId,
}

/// Exhaustive search for a coexistence witness. Candidates for `c` are tried
/// starting with `0`, then in declaration order.
pub fn coexistence_witness(alg: &FiniteEffectAlgebra, a: ElemId, b: ElemId) -> Option<Coexistence> {
    let order = alg.order();
    let z = alg.zero_id();
    std::iter::once(z).chain(alg.elements().filter(|&c| c != z)).find_map(|c| {
        let d = order.minus(a, c)?;
        let e = order.minus(b, c)?;
        let cd = alg.sum_id(c, d)?;
        alg.sum_id(cd, e)?;
        Some(Coexistence { c, d, e })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::symbolic::OmegaOmegaStar;

    #[test]
    fn chain_order() {
        let c3 = catalog::chain(2).unwrap();
        let a = c3.lookup("a").unwrap();
        assert!(c3.leq_id(c3.zero_id(), a) && c3.leq_id(a, c3.one_id()));
        assert!(!c3.leq_id(a, c3.zero_id()));
        assert!(c3.order().is_chain());
    }

    #[test]
    fn diamond_atoms_incomparable() {
        let d = catalog::diamond();
        let (a, b) = (d.lookup("a").unwrap(), d.lookup("b").unwrap());
        assert!(!d.leq_id(a, b) && !d.leq_id(b, a));
        for x in [a, b] {
            assert!(d.leq_id(d.zero_id(), x) && x != d.zero_id());
            assert!(d.leq_id(x, d.one_id()) && x != d.one_id());
        }
    }

    #[test]
    fn omega_window_is_the_expected_chain() {
        let w = OmegaOmegaStar;
        let elems = w.window(3);
        let order = derive_window_order(&w, &elems);
        assert!(order.is_partial_order() && order.is_chain());
        // witnesses restricted to the window miss e.g. 3a ≤ (3a)′
        assert!(!derive_order(&w, &elems).leq_idx(3, 4));
        let names: Vec<String> = order.linear_extension().into_iter().map(|i| w.show(&elems[i])).collect();
        assert_eq!(names, ["0", "a", "2a", "3a", "(3a)'", "(2a)'", "a'", "1"]);
    }

    #[test]
    fn sharp_sets() {
        let b4 = catalog::boolean(2).unwrap();
        assert_eq!(b4.sharp_elements().len(), 4);
        assert!(b4.is_orthoalgebra());

        let c3 = catalog::chain(2).unwrap();
        assert_eq!(c3.sharp_elements(), vec![c3.zero_id(), c3.one_id()]);
        assert!(!c3.is_orthoalgebra());

        let w = OmegaOmegaStar;
        let elems = w.window(20);
        let r = sharp_elements(&w, &elems, &derive_window_order(&w, &elems));
        let names: Vec<String> = r.sharp.iter().map(|&i| w.show(&elems[i])).collect();
        assert_eq!(names, ["0", "1"]);
    }

    #[test]
    fn coexistence_examples() {
        let b4 = catalog::boolean(2).unwrap();
        let (x, y) = (b4.lookup("x").unwrap(), b4.lookup("y").unwrap());
        let w = coexistence_witness(&b4, x, y).unwrap();
        assert_eq!((w.c, w.d, w.e), (b4.zero_id(), x, y));

        let d = catalog::diamond();
        let (a, b) = (d.lookup("a").unwrap(), d.lookup("b").unwrap());
        assert!(coexistence_witness(&d, a, b).is_none());

        for alg in [catalog::chain(3).unwrap(), d, catalog::boolean(3).unwrap()] {
            for a in alg.elements() {
                let ac = alg.complement_id(a);
                let w = coexistence_witness(&alg, a, ac).unwrap();
                assert_eq!(w.c, alg.zero_id());
                assert_eq!((w.d, w.e), (a, ac));
            }
        }
    }

    #[test]
    fn meets_in_boolean_algebra() {
        let b8 = catalog::boolean(3).unwrap();
        let o = b8.order();
        for a in b8.elements() {
            for b in b8.elements() {
                assert_eq!(o.meet(a, b), Some(ElemId(a.0 & b.0)));
            }
        }
        let d = catalog::diamond();
        let (a, b) = (d.lookup("a").unwrap(), d.lookup("b").unwrap());
        assert_eq!(d.order().meet(a, b), Some(d.zero_id()));
    }
}
