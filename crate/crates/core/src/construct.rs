//! New effect algebras from old ones: products, horizontal sums, intervals,
//! and transport of structure along isomorphisms.

use thiserror::Error;

use crate::algebra::EffectAlgebra;
use crate::finite::{AlgebraTable, ElemId, FiniteEffectAlgebra, NotAnEffectAlgebra, SeqProductTable, StructureError};
use crate::symbolic::LexExtension;

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error("construction needs at least one factor")]
    NoFactors,
    #[error("interval [0, b] needs b ≠ 0")]
    ZeroInterval,
    #[error("carrier too large for a finite table ({0} elements)")]
    TooLarge(usize),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Axioms(#[from] NotAnEffectAlgebra),
}

/// A cartesian product together with its coordinate maps.
#[derive(Debug, Clone)]
pub struct ProductAlgebra {
    pub algebra: FiniteEffectAlgebra,
    sizes: Vec<usize>,
    /// `f_j`: `1` in coordinate `j`, `0` elsewhere.
    pub markers: Vec<ElemId>,
}

impl ProductAlgebra {
    pub fn factor_count(&self) -> usize {
        self.sizes.len()
    }

    /// Coordinates of an element, first factor most significant.
    pub fn coords(&self, a: ElemId) -> Vec<ElemId> {
        let mut rest = a.0;
        let mut out = vec![ElemId(0); self.sizes.len()];
        for (i, &s) in self.sizes.iter().enumerate().rev() {
            out[i] = ElemId(rest % s);
            rest /= s;
        }
        out
    }

    pub fn element(&self, coords: &[ElemId]) -> ElemId {
        ElemId(coords.iter().zip(&self.sizes).fold(0, |acc, (c, s)| acc * s + c.0))
    }

    /// The componentwise operation `(f ∘ g)(i) = f(i) ∘ᵢ g(i)`.
    pub fn componentwise(&self, tables: &[SeqProductTable]) -> SeqProductTable {
        assert_eq!(tables.len(), self.sizes.len());
        SeqProductTable::from_fn(self.algebra.len(), |a, b| {
            let (ca, cb) = (self.coords(a), self.coords(b));
            let c: Vec<ElemId> = tables.iter().zip(ca.iter().zip(&cb)).map(|(t, (x, y))| t.get(*x, *y)).collect();
            self.element(&c)
        })
    }
}

/// `Π Eᵢ` with componentwise `⊕`.
pub fn cartesian_product(factors: &[FiniteEffectAlgebra]) -> Result<ProductAlgebra, ConstructError> {
    if factors.is_empty() {
        return Err(ConstructError::NoFactors);
    }
    let sizes: Vec<usize> = factors.iter().map(|f| f.len()).collect();
    let total = sizes.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s)).filter(|&t| t <= 4096);
    let total = total.ok_or(ConstructError::TooLarge(usize::MAX))?;

    let decode = |mut k: usize| {
        let mut out = vec![ElemId(0); sizes.len()];
        for i in (0..sizes.len()).rev() {
            out[i] = ElemId(k % sizes[i]);
            k /= sizes[i];
        }
        out
    };
    let encode = |c: &[ElemId]| c.iter().zip(&sizes).fold(0, |acc, (c, s)| acc * s + c.0);

    let names: Vec<String> = (0..total)
        .map(|k| {
            let c = decode(k);
            if factors.iter().zip(&c).all(|(f, x)| *x == f.zero_id()) {
                "0".to_string()
            } else if factors.iter().zip(&c).all(|(f, x)| *x == f.one_id()) {
                "1".to_string()
            } else {
                let parts: Vec<&str> = factors.iter().zip(&c).map(|(f, x)| f.elem_name(*x)).collect();
                format!("({})", parts.join(","))
            }
        })
        .collect();
    let name = factors.iter().map(|f| f.name()).collect::<Vec<_>>().join("x");
    let mut table = AlgebraTable::new(name, names, "0", "1")?;
    for a in 0..total {
        let ca = decode(a);
        for b in a..total {
            let cb = decode(b);
            let s: Option<Vec<ElemId>> = factors.iter().zip(ca.iter().zip(&cb)).map(|(f, (x, y))| f.sum_id(*x, *y)).collect();
            if let Some(s) = s {
                table.set_sum(ElemId(a), ElemId(b), ElemId(encode(&s)))?;
            }
        }
    }
    let markers = (0..factors.len())
        .map(|j| {
            let c: Vec<ElemId> = factors
                .iter()
                .enumerate()
                .map(|(i, f)| if i == j { f.one_id() } else { f.zero_id() })
                .collect();
            ElemId(encode(&c))
        })
        .collect();
    Ok(ProductAlgebra {
        algebra: FiniteEffectAlgebra::new(table)?,
        sizes,
        markers,
    })
}

/// `HS(Eᵢ)`: summands glued at `0` and `1`, no sums across summands. Proper
/// elements are renamed `i.name` with `i` counting from 1.
pub fn horizontal_sum(summands: &[FiniteEffectAlgebra]) -> Result<FiniteEffectAlgebra, ConstructError> {
    if summands.is_empty() {
        return Err(ConstructError::NoFactors);
    }
    let mut names = vec!["0".to_string(), "1".to_string()];
    // per summand: local id -> glued id
    let mut maps: Vec<Vec<ElemId>> = Vec::with_capacity(summands.len());
    for (i, e) in summands.iter().enumerate() {
        let map = e
            .elements()
            .map(|a| {
                if a == e.zero_id() {
                    ElemId(0)
                } else if a == e.one_id() {
                    ElemId(1)
                } else {
                    names.push(format!("{}.{}", i + 1, e.elem_name(a)));
                    ElemId(names.len() - 1)
                }
            })
            .collect();
        maps.push(map);
    }
    let name = format!("HS({})", summands.iter().map(|f| f.name()).collect::<Vec<_>>().join(","));
    let mut table = AlgebraTable::new(name, names, "0", "1")?;
    for (e, map) in summands.iter().zip(&maps) {
        for (a, b, c) in e.table().sum_entries() {
            table.set_sum(map[a.0], map[b.0], map[c.0])?;
        }
    }
    Ok(FiniteEffectAlgebra::new(table)?)
}

/// `([0,b], 0, b, ⊕_b)` cut out of `elems`, which must contain all of
/// `[0, b]`. The unit `b` is renamed `1`.
pub fn interval_from<A: EffectAlgebra>(
    alg: &A,
    elems: &[A::Elem],
    b: &A::Elem,
) -> Result<FiniteEffectAlgebra, ConstructError> {
    if alg.is_zero(b) {
        return Err(ConstructError::ZeroInterval);
    }
    let carrier: Vec<&A::Elem> = elems.iter().filter(|x| alg.leq(x, b)).collect();
    let names: Vec<String> = carrier
        .iter()
        .map(|x| {
            if alg.same(x, b) {
                "1".to_string()
            } else if alg.is_zero(x) {
                "0".to_string()
            } else {
                alg.show(x)
            }
        })
        .collect();
    let mut table = AlgebraTable::new(format!("[0,{}]", alg.show(b)), names, "0", "1")?;
    for (i, x) in carrier.iter().enumerate() {
        for (j, y) in carrier.iter().enumerate().skip(i) {
            let Some(s) = alg.sum(x, y) else { continue };
            if let Some(k) = carrier.iter().position(|z| alg.same(z, &s)) {
                table.set_sum(ElemId(i), ElemId(j), ElemId(k))?;
            }
        }
    }
    Ok(FiniteEffectAlgebra::new(table)?)
}

pub fn interval_algebra(alg: &FiniteEffectAlgebra, b: ElemId) -> Result<FiniteEffectAlgebra, ConstructError> {
    interval_from(alg, &alg.element_list(), &b)
}

/// `E_ℤ` over a finite base.
pub fn lex_extension(base: FiniteEffectAlgebra) -> LexExtension {
    LexExtension::new(base)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("carriers differ in size ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("map is not a bijection")]
    NotBijective,
    #[error("map does not preserve {0}")]
    NotMorphism(String),
}

/// A verified effect-algebra isomorphism between two finite carriers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EAIsomorphism {
    forward: Vec<ElemId>,
    inverse: Vec<ElemId>,
}

impl EAIsomorphism {
    /// Checks bijectivity and that `0`, `1` and `⊕` (including definedness)
    /// are preserved in both directions.
    pub fn new(from: &FiniteEffectAlgebra, to: &FiniteEffectAlgebra, forward: Vec<ElemId>) -> Result<Self, IsoError> {
        let n = from.len();
        if n != to.len() || forward.len() != n {
            return Err(IsoError::SizeMismatch(n, to.len()));
        }
        let mut inverse = vec![None; n];
        for (a, &fa) in forward.iter().enumerate() {
            if fa.0 >= n || inverse[fa.0].replace(ElemId(a)).is_some() {
                return Err(IsoError::NotBijective);
            }
        }
        let inverse: Vec<ElemId> = inverse.into_iter().map(|x| x.expect("bijective")).collect();
        if forward[from.zero_id().0] != to.zero_id() || forward[from.one_id().0] != to.one_id() {
            return Err(IsoError::NotMorphism("0 and 1".into()));
        }
        for a in from.elements() {
            for b in from.elements() {
                let lhs = from.sum_id(a, b).map(|s| forward[s.0]);
                let rhs = to.sum_id(forward[a.0], forward[b.0]);
                if lhs != rhs {
                    return Err(IsoError::NotMorphism(format!(
                        "{} ⊕ {}",
                        from.elem_name(a),
                        from.elem_name(b)
                    )));
                }
            }
        }
        Ok(Self { forward, inverse })
    }

    pub fn identity(alg: &FiniteEffectAlgebra) -> Self {
        let ids: Vec<ElemId> = alg.elements().collect();
        Self {
            forward: ids.clone(),
            inverse: ids,
        }
    }

    pub fn apply(&self, a: ElemId) -> ElemId {
        self.forward[a.0]
    }

    pub fn invert(&self, a: ElemId) -> ElemId {
        self.inverse[a.0]
    }

    pub fn inverse(&self) -> Self {
        Self {
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
        }
    }
}

/// `a ∗ b = φ(φ⁻¹(a) ∘ φ⁻¹(b))`.
pub fn transport_product(iso: &EAIsomorphism, t: &SeqProductTable) -> SeqProductTable {
    SeqProductTable::from_fn(t.size(), |a, b| iso.apply(t.get(iso.invert(a), iso.invert(b))))
}

/// Searches for an isomorphism by backtracking. Candidates are pruned by an
/// invariant signature (number of elements below, above, and orthogonal).
pub fn find_isomorphism(from: &FiniteEffectAlgebra, to: &FiniteEffectAlgebra) -> Option<EAIsomorphism> {
    let n = from.len();
    if n != to.len() || n > 64 {
        return None;
    }
    let sig = |e: &FiniteEffectAlgebra, a: ElemId| {
        let below = e.elements().filter(|&x| e.leq_id(x, a)).count();
        let above = e.elements().filter(|&x| e.leq_id(a, x)).count();
        let orth = e.elements().filter(|&x| e.sum_id(a, x).is_some()).count();
        (below, above, orth)
    };
    let sa: Vec<_> = from.elements().map(|a| sig(from, a)).collect();
    let sb: Vec<_> = to.elements().map(|a| sig(to, a)).collect();
    let mut multiset_a = sa.clone();
    let mut multiset_b = sb.clone();
    multiset_a.sort_unstable();
    multiset_b.sort_unstable();
    if multiset_a != multiset_b {
        return None;
    }

    let mut map: Vec<Option<ElemId>> = vec![None; n];
    let mut used = vec![false; n];
    map[from.zero_id().0] = Some(to.zero_id());
    map[from.one_id().0] = Some(to.one_id());
    used[to.zero_id().0] = true;
    used[to.one_id().0] = true;
    let order: Vec<ElemId> = from.elements().filter(|&a| map[a.0].is_none()).collect();

    fn consistent(from: &FiniteEffectAlgebra, to: &FiniteEffectAlgebra, map: &[Option<ElemId>], a: ElemId) -> bool {
        let fa = map[a.0].expect("assigned");
        from.elements().all(|b| {
            let Some(fb) = map[b.0] else { return true };
            match from.sum_id(a, b) {
                Some(s) => match (to.sum_id(fa, fb), map[s.0]) {
                    (None, _) => false,
                    (Some(t), Some(fs)) => t == fs,
                    (Some(_), None) => true,
                },
                None => to.sum_id(fa, fb).is_none(),
            }
        })
    }

    fn go(
        from: &FiniteEffectAlgebra,
        to: &FiniteEffectAlgebra,
        order: &[ElemId],
        sa: &[(usize, usize, usize)],
        sb: &[(usize, usize, usize)],
        map: &mut Vec<Option<ElemId>>,
        used: &mut Vec<bool>,
    ) -> bool {
        let Some((&a, rest)) = order.split_first() else {
            return true;
        };
        for b in to.elements() {
            if used[b.0] || sa[a.0] != sb[b.0] {
                continue;
            }
            map[a.0] = Some(b);
            used[b.0] = true;
            if consistent(from, to, map, a) && go(from, to, rest, sa, sb, map, used) {
                return true;
            }
            map[a.0] = None;
            used[b.0] = false;
        }
        false
    }

    if !go(from, to, &order, &sa, &sb, &mut map, &mut used) {
        return None;
    }
    let forward = map.into_iter().map(|x| x.expect("complete")).collect();
    EAIsomorphism::new(from, to, forward).ok()
}

/// Checks that `map` is a bijection from `window_a` onto `window_b` that
/// preserves `0`, `1`, complements, and `⊕` together with its definedness on
/// every pair of window elements. Sums may leave the window; they are
/// compared through `map`.
pub fn is_window_isomorphism<A, B>(
    a: &A,
    window_a: &[A::Elem],
    b: &B,
    window_b: &[B::Elem],
    map: impl Fn(&A::Elem) -> B::Elem,
) -> bool
where
    A: EffectAlgebra,
    B: EffectAlgebra,
{
    if window_a.len() != window_b.len() {
        return false;
    }
    let images: Vec<B::Elem> = window_a.iter().map(&map).collect();
    let onto = window_b.iter().all(|y| images.iter().filter(|x| b.same(x, y)).count() == 1);
    if !onto || !b.same(&map(&a.zero()), &b.zero()) || !b.same(&map(&a.one()), &b.one()) {
        return false;
    }
    window_a.iter().zip(&images).all(|(x, fx)| {
        b.same(&map(&a.complement(x)), &b.complement(fx))
            && window_a.iter().zip(&images).all(|(y, fy)| match (a.sum(x, y), b.sum(fx, fy)) {
                (Some(s), Some(t)) => b.same(&map(&s), &t),
                (None, None) => true,
                _ => false,
            })
    })
}

/// The meet table, when every pair has a meet.
pub fn meet_table(alg: &FiniteEffectAlgebra) -> Option<SeqProductTable> {
    let order = alg.order();
    let n = alg.len();
    let mut cells = Vec::with_capacity(n * n);
    for a in alg.elements() {
        for b in alg.elements() {
            cells.push(order.meet(a, b)?);
        }
    }
    Some(SeqProductTable::from_cells(n, cells))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{check_effect_axioms, check_sea_axioms};
    use crate::catalog;
    use crate::finite::TableSea;
    use crate::symbolic::{Omega, OmegaOmegaStar};

    #[test]
    fn product_of_two_bits_is_boolean_four() {
        let c2 = catalog::chain(1).unwrap();
        let p = cartesian_product(&[c2.clone(), c2]).unwrap();
        assert_eq!(p.algebra.len(), 4);
        assert!(find_isomorphism(&p.algebra, &catalog::boolean(2).unwrap()).is_some());
    }

    #[test]
    fn product_markers_are_sharp_and_order_is_componentwise() {
        let p = cartesian_product(&[catalog::chain(2).unwrap(), catalog::chain(1).unwrap()]).unwrap();
        let e = &p.algebra;
        assert_eq!(e.len(), 6);
        let f1 = p.markers[0];
        assert_eq!(e.elem_name(f1), "(1,0)");
        assert!(e.sharp_elements().contains(&f1));
        let a0 = e.lookup("(a,0)").unwrap();
        let a1 = e.lookup("(a,1)").unwrap();
        assert!(e.leq_id(a0, a1) && !e.leq_id(a1, a0));
    }

    #[test]
    fn empty_product_is_an_error() {
        assert!(matches!(cartesian_product(&[]), Err(ConstructError::NoFactors)));
    }

    #[test]
    fn horizontal_sums() {
        let c3 = catalog::chain(2).unwrap();
        let d = horizontal_sum(&[c3.clone(), c3]).unwrap();
        assert!(find_isomorphism(&d, &catalog::diamond()).is_some());

        let c2 = catalog::chain(1).unwrap();
        let hs = horizontal_sum(&[c2.clone(), c2.clone()]).unwrap();
        assert!(find_isomorphism(&hs, &c2).is_some());

        let hs = horizontal_sum(&[catalog::boolean(2).unwrap(), catalog::chain(2).unwrap()]).unwrap();
        assert_eq!(hs.len(), 5);
        assert!(check_effect_axioms(hs.table(), &hs.element_list()).passed());
        let x = hs.lookup("1.x").unwrap();
        let a = hs.lookup("2.a").unwrap();
        assert_eq!(hs.sum_id(x, a), None);
    }

    #[test]
    fn intervals() {
        let w = OmegaOmegaStar;
        let i = interval_from(&w, &w.window(4), &Omega::Low(2)).unwrap();
        assert!(find_isomorphism(&i, &catalog::chain(2).unwrap()).is_some());

        let b8 = catalog::boolean(3).unwrap();
        let xy = b8.lookup("xy").unwrap();
        let i = interval_algebra(&b8, xy).unwrap();
        assert!(find_isomorphism(&i, &catalog::boolean(2).unwrap()).is_some());

        let c3 = catalog::chain(2).unwrap();
        let i = interval_algebra(&c3, c3.lookup("a").unwrap()).unwrap();
        assert!(find_isomorphism(&i, &catalog::chain(1).unwrap()).is_some());

        assert!(matches!(interval_algebra(&c3, c3.zero_id()), Err(ConstructError::ZeroInterval)));
    }

    #[test]
    fn transport_along_identity_and_swap() {
        let b4 = catalog::boolean(2).unwrap();
        let meet = meet_table(&b4).unwrap();
        assert_eq!(transport_product(&EAIsomorphism::identity(&b4), &meet), meet);

        let (x, y) = (b4.lookup("x").unwrap(), b4.lookup("y").unwrap());
        let swap: Vec<ElemId> = b4
            .elements()
            .map(|a| if a == x { y } else if a == y { x } else { a })
            .collect();
        let iso = EAIsomorphism::new(&b4, &b4, swap).unwrap();
        assert_eq!(transport_product(&iso, &meet), meet);
    }

    #[test]
    fn transport_from_product_of_bits() {
        let c2 = catalog::chain(1).unwrap();
        let p = cartesian_product(&[c2.clone(), c2.clone()]).unwrap();
        let c2_table = meet_table(&c2).unwrap();
        let componentwise = p.componentwise(&[c2_table.clone(), c2_table]);
        let b4 = catalog::boolean(2).unwrap();
        let iso = find_isomorphism(&p.algebra, &b4).unwrap();
        let moved = transport_product(&iso, &componentwise);
        assert_eq!(moved, meet_table(&b4).unwrap());
        assert!(check_sea_axioms(&TableSea::new(&b4, &moved), &b4.element_list()).passed());
    }

    #[test]
    fn non_isomorphism_rejected() {
        let b4 = catalog::boolean(2).unwrap();
        let d = catalog::diamond();
        assert!(find_isomorphism(&b4, &d).is_none());
        let bad: Vec<ElemId> = b4.elements().collect();
        assert!(EAIsomorphism::new(&b4, &d, bad).is_err());
    }
}
