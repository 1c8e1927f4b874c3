//! Finite effect algebras given by an explicit `⊕` table.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{EffectAlgebra, PartialAlgebra, SequentialProduct};
use crate::axioms::{check_effect_axioms, AxiomReport};
use crate::order::{derive_order, OrderRelation};

/// Interned element of a finite carrier: an index into the declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ElemId(pub usize);

impl ElemId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ElemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Encoding problems in a table. These are distinct from axiom failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("carrier is empty")]
    Empty,
    #[error("element `{0}` declared twice")]
    DuplicateElement(String),
    #[error("undeclared element `{0}`")]
    UnknownElement(String),
    #[error("zero and one must be distinct elements")]
    ZeroIsOne,
    #[error("conflicting entries: {a} {op} {b} is both `{first}` and `{second}`")]
    Conflict {
        op: &'static str,
        a: String,
        b: String,
        first: String,
        second: String,
    },
    #[error("product table is not total: {a} ∘ {b} is missing")]
    Incomplete { a: String, b: String },
}

/// A carrier with a symmetric partial `⊕` table, not yet known to satisfy
/// the effect-algebra axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraTable {
    name: String,
    names: Vec<String>,
    index: HashMap<String, ElemId>,
    zero: ElemId,
    one: ElemId,
    sums: Vec<Option<ElemId>>,
}

impl AlgebraTable {
    /// Declares the carrier. `zero` and `one` name two of the elements.
    /// The table starts with `0 ⊕ x = x` for every `x`.
    pub fn new(
        name: impl Into<String>,
        names: Vec<String>,
        zero: &str,
        one: &str,
    ) -> Result<Self, StructureError> {
        if names.is_empty() {
            return Err(StructureError::Empty);
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), ElemId(i)).is_some() {
                return Err(StructureError::DuplicateElement(n.clone()));
            }
        }
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| StructureError::UnknownElement(s.to_string()))
        };
        let zero = lookup(zero)?;
        let one = lookup(one)?;
        if zero == one {
            return Err(StructureError::ZeroIsOne);
        }
        let n = names.len();
        let mut table = Self {
            name: name.into(),
            names,
            index,
            zero,
            one,
            sums: vec![None; n * n],
        };
        for x in 0..n {
            table.set_sum(zero, ElemId(x), ElemId(x))?;
        }
        Ok(table)
    }

    /// Records `a ⊕ b = c` together with `b ⊕ a = c`.
    pub fn set_sum(&mut self, a: ElemId, b: ElemId, c: ElemId) -> Result<(), StructureError> {
        let n = self.len();
        for (x, y) in [(a, b), (b, a)] {
            let slot = &mut self.sums[x.0 * n + y.0];
            match *slot {
                Some(prev) if prev != c => {
                    return Err(StructureError::Conflict {
                        op: "⊕",
                        a: self.names[a.0].clone(),
                        b: self.names[b.0].clone(),
                        first: self.names[prev.0].clone(),
                        second: self.names[c.0].clone(),
                    })
                }
                _ => *slot = Some(c),
            }
        }
        Ok(())
    }

    pub fn set_sum_by_name(&mut self, a: &str, b: &str, c: &str) -> Result<(), StructureError> {
        let (a, b, c) = (self.lookup(a)?, self.lookup(b)?, self.lookup(c)?);
        self.set_sum(a, b, c)
    }

    pub fn lookup(&self, name: &str) -> Result<ElemId, StructureError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| StructureError::UnknownElement(name.to_string()))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn elem_name(&self, a: ElemId) -> &str {
        &self.names[a.0]
    }

    pub fn elements(&self) -> impl Iterator<Item = ElemId> {
        (0..self.len()).map(ElemId)
    }

    pub fn zero_id(&self) -> ElemId {
        self.zero
    }

    pub fn one_id(&self) -> ElemId {
        self.one
    }

    pub fn sum_id(&self, a: ElemId, b: ElemId) -> Option<ElemId> {
        self.sums[a.0 * self.len() + b.0]
    }

    /// Defined sums with `a ≤ b` in declaration order, each unordered pair once.
    pub fn sum_entries(&self) -> Vec<(ElemId, ElemId, ElemId)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a..n {
                if let Some(c) = self.sums[a * n + b] {
                    out.push((ElemId(a), ElemId(b), c));
                }
            }
        }
        out
    }
}

impl PartialAlgebra for AlgebraTable {
    type Elem = ElemId;

    fn zero(&self) -> ElemId {
        self.zero
    }

    fn one(&self) -> ElemId {
        self.one
    }

    fn sum(&self, a: &ElemId, b: &ElemId) -> Option<ElemId> {
        self.sum_id(*a, *b)
    }

    fn same(&self, a: &ElemId, b: &ElemId) -> bool {
        a == b
    }

    fn show(&self, a: &ElemId) -> String {
        self.names[a.0].clone()
    }
}

/// Rejection of a table that is well formed but fails an axiom.
#[derive(Debug, Clone, Error)]
#[error("`{name}` is not an effect algebra: {}", report.first_failure().unwrap_or("?"))]
pub struct NotAnEffectAlgebra {
    pub name: String,
    pub report: AxiomReport,
}

/// A finite table that passed (A1)–(A4), with complements and the order
/// relation cached.
#[derive(Debug, Clone)]
pub struct FiniteEffectAlgebra {
    table: AlgebraTable,
    complements: Vec<ElemId>,
    order: OrderRelation,
}

impl FiniteEffectAlgebra {
    pub fn new(table: AlgebraTable) -> Result<Self, NotAnEffectAlgebra> {
        let elems: Vec<ElemId> = table.elements().collect();
        let report = check_effect_axioms(&table, &elems);
        if !report.passed() {
            return Err(NotAnEffectAlgebra {
                name: table.name().to_string(),
                report,
            });
        }
        let one = table.one_id();
        let complements = elems
            .iter()
            .map(|&a| {
                elems
                    .iter()
                    .copied()
                    .find(|&b| table.sum_id(a, b) == Some(one))
                    .expect("A3 verified")
            })
            .collect();
        let order = derive_order(&table, &elems);
        Ok(Self {
            table,
            complements,
            order,
        })
    }

    pub fn table(&self) -> &AlgebraTable {
        &self.table
    }

    pub fn into_table(self) -> AlgebraTable {
        self.table
    }

    pub fn order(&self) -> &OrderRelation {
        &self.order
    }

    pub fn name(&self) -> &str {
        self.table.name()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = ElemId> {
        self.table.elements()
    }

    pub fn element_list(&self) -> Vec<ElemId> {
        self.table.elements().collect()
    }

    pub fn elem_name(&self, a: ElemId) -> &str {
        self.table.elem_name(a)
    }

    pub fn lookup(&self, name: &str) -> Result<ElemId, StructureError> {
        self.table.lookup(name)
    }

    pub fn zero_id(&self) -> ElemId {
        self.table.zero_id()
    }

    pub fn one_id(&self) -> ElemId {
        self.table.one_id()
    }

    pub fn sum_id(&self, a: ElemId, b: ElemId) -> Option<ElemId> {
        self.table.sum_id(a, b)
    }

    pub fn complement_id(&self, a: ElemId) -> ElemId {
        self.complements[a.0]
    }

    pub fn leq_id(&self, a: ElemId, b: ElemId) -> bool {
        self.order.leq(a, b)
    }

    /// Elements other than `0` that have no decomposition `a = b ⊕ c` with
    /// `b, c ≠ 0`.
    pub fn atoms(&self) -> Vec<ElemId> {
        let z = self.zero_id();
        self.elements()
            .filter(|&a| a != z)
            .filter(|&a| self.elements().all(|b| b == z || b == a || !self.leq_id(b, a)))
            .collect()
    }
}

impl PartialAlgebra for FiniteEffectAlgebra {
    type Elem = ElemId;

    fn zero(&self) -> ElemId {
        self.table.zero_id()
    }

    fn one(&self) -> ElemId {
        self.table.one_id()
    }

    fn sum(&self, a: &ElemId, b: &ElemId) -> Option<ElemId> {
        self.table.sum_id(*a, *b)
    }

    fn same(&self, a: &ElemId, b: &ElemId) -> bool {
        a == b
    }

    fn show(&self, a: &ElemId) -> String {
        self.table.elem_name(*a).to_string()
    }
}

impl EffectAlgebra for FiniteEffectAlgebra {
    fn complement(&self, a: &ElemId) -> ElemId {
        self.complements[a.0]
    }

    fn leq(&self, a: &ElemId, b: &ElemId) -> bool {
        self.order.leq(*a, *b)
    }
}

/// A total binary operation table on a finite carrier.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SeqProductTable {
    n: usize,
    cells: Vec<ElemId>,
}

impl SeqProductTable {
    pub fn from_cells(n: usize, cells: Vec<ElemId>) -> Self {
        assert_eq!(cells.len(), n * n, "table must be n×n");
        assert!(cells.iter().all(|c| c.0 < n), "cell out of range");
        Self { n, cells }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(ElemId, ElemId) -> ElemId) -> Self {
        let mut cells = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                cells.push(f(ElemId(a), ElemId(b)));
            }
        }
        Self::from_cells(n, cells)
    }

    /// Builds a table from `(a, b, c)` entries meaning `a ∘ b = c`. Every
    /// cell must be covered exactly once (repeats must agree).
    pub fn from_entries(
        alg: &AlgebraTable,
        entries: &[(ElemId, ElemId, ElemId)],
    ) -> Result<Self, StructureError> {
        let n = alg.len();
        let mut cells: Vec<Option<ElemId>> = vec![None; n * n];
        for &(a, b, c) in entries {
            let slot = &mut cells[a.0 * n + b.0];
            match *slot {
                Some(prev) if prev != c => {
                    return Err(StructureError::Conflict {
                        op: "∘",
                        a: alg.elem_name(a).to_string(),
                        b: alg.elem_name(b).to_string(),
                        first: alg.elem_name(prev).to_string(),
                        second: alg.elem_name(c).to_string(),
                    })
                }
                _ => *slot = Some(c),
            }
        }
        let mut out = Vec::with_capacity(n * n);
        for (i, c) in cells.into_iter().enumerate() {
            match c {
                Some(c) => out.push(c),
                None => {
                    return Err(StructureError::Incomplete {
                        a: alg.elem_name(ElemId(i / n)).to_string(),
                        b: alg.elem_name(ElemId(i % n)).to_string(),
                    })
                }
            }
        }
        Ok(Self { n, cells: out })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: ElemId, b: ElemId) -> ElemId {
        self.cells[a.0 * self.n + b.0]
    }

    pub fn cells(&self) -> &[ElemId] {
        &self.cells
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.get(ElemId(a), ElemId(b)) == self.get(ElemId(b), ElemId(a))))
    }

    /// Rows rendered with element names, for reports.
    pub fn render(&self, alg: &AlgebraTable) -> Vec<Vec<String>> {
        (0..self.n)
            .map(|a| {
                (0..self.n)
                    .map(|b| alg.elem_name(self.get(ElemId(a), ElemId(b))).to_string())
                    .collect()
            })
            .collect()
    }
}

/// A finite effect algebra paired with a product table.
#[derive(Debug, Clone, Copy)]
pub struct TableSea<'a> {
    pub alg: &'a FiniteEffectAlgebra,
    pub table: &'a SeqProductTable,
}

impl<'a> TableSea<'a> {
    pub fn new(alg: &'a FiniteEffectAlgebra, table: &'a SeqProductTable) -> Self {
        assert_eq!(alg.len(), table.size(), "table size must match the carrier");
        Self { alg, table }
    }
}

impl PartialAlgebra for TableSea<'_> {
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

impl EffectAlgebra for TableSea<'_> {
    fn complement(&self, a: &ElemId) -> ElemId {
        self.alg.complement_id(*a)
    }

    fn leq(&self, a: &ElemId, b: &ElemId) -> bool {
        self.alg.leq_id(*a, *b)
    }
}

impl SequentialProduct for TableSea<'_> {
    fn product(&self, a: &ElemId, b: &ElemId) -> ElemId {
        self.table.get(*a, *b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn zero_sums_are_implicit() {
        let t = AlgebraTable::new("C2", names(&["0", "1"]), "0", "1").unwrap();
        assert_eq!(t.sum_id(ElemId(0), ElemId(1)), Some(ElemId(1)));
        assert_eq!(t.sum_id(ElemId(1), ElemId(1)), None);
    }

    #[test]
    fn conflicting_sum_is_structural() {
        let mut t = AlgebraTable::new("C3", names(&["0", "a", "1"]), "0", "1").unwrap();
        t.set_sum_by_name("a", "a", "1").unwrap();
        let err = t.set_sum_by_name("a", "a", "0").unwrap_err();
        assert!(matches!(err, StructureError::Conflict { .. }));
    }

    #[test]
    fn zero_equal_one_rejected() {
        let err = AlgebraTable::new("bad", names(&["0"]), "0", "0").unwrap_err();
        assert_eq!(err, StructureError::ZeroIsOne);
    }

    #[test]
    fn undeclared_names_rejected() {
        let err = AlgebraTable::new("bad", names(&["0", "e"]), "0", "1").unwrap_err();
        assert_eq!(err, StructureError::UnknownElement("1".into()));
    }

    #[test]
    fn incomplete_product_table_rejected() {
        let t = AlgebraTable::new("C2", names(&["0", "1"]), "0", "1").unwrap();
        let e = SeqProductTable::from_entries(&t, &[(ElemId(0), ElemId(0), ElemId(0))]).unwrap_err();
        assert!(matches!(e, StructureError::Incomplete { .. }));
    }
}
