//! The solver against plain enumeration of product tables.
//!
//! Every SEA has `a∘0 = 0∘a = 0`, `1∘a = a` and `a∘1 = a`, so for `n ≥ 4`
//! those rows and columns are fixed and only the inner `(n−2)²` cells are
//! enumerated. For `C₂` and `C₃` every total table is tried.

use sea_core::catalog::{boolean, chain, diamond};
use sea_core::construct::horizontal_sum;
use sea_core::finite::TableSea;
use sea_core::{check_sea_axioms, enumerate_products, ElemId, FiniteEffectAlgebra, SeqProductTable};

fn is_sea(alg: &FiniteEffectAlgebra, t: &SeqProductTable) -> bool {
    let elems = alg.element_list();
    check_sea_axioms(&TableSea::new(alg, t), &elems).passed()
}

/// Cheap necessary condition: each row is additive.
fn rows_additive(alg: &FiniteEffectAlgebra, sums: &[(ElemId, ElemId, ElemId)], t: &SeqProductTable) -> bool {
    alg.elements().all(|a| {
        sums.iter()
            .all(|&(b, c, d)| alg.sum_id(t.get(a, b), t.get(a, c)) == Some(t.get(a, d)))
    })
}

fn brute_force(alg: &FiniteEffectAlgebra, free: &[(usize, usize)], base: Vec<ElemId>) -> Vec<SeqProductTable> {
    let n = alg.len();
    let sums = alg.table().sum_entries();
    let mut cells = base;
    let mut digits = vec![0usize; free.len()];
    let mut out = Vec::new();
    loop {
        for (&(a, b), &d) in free.iter().zip(&digits) {
            cells[a * n + b] = ElemId(d);
        }
        let t = SeqProductTable::from_cells(n, cells.clone());
        if rows_additive(alg, &sums, &t) && is_sea(alg, &t) {
            out.push(t);
        }
        // odometer
        let mut i = 0;
        loop {
            if i == digits.len() {
                out.sort();
                return out;
            }
            digits[i] += 1;
            if digits[i] < n {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

fn all_tables(alg: &FiniteEffectAlgebra) -> Vec<SeqProductTable> {
    let n = alg.len();
    let free: Vec<_> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    brute_force(alg, &free, vec![ElemId(0); n * n])
}

fn forced_tables(alg: &FiniteEffectAlgebra) -> Vec<SeqProductTable> {
    let n = alg.len();
    let (z, o) = (alg.zero_id(), alg.one_id());
    let mut base = vec![z; n * n];
    for a in alg.elements() {
        base[o.0 * n + a.0] = a;
        base[a.0 * n + o.0] = a;
        base[z.0 * n + a.0] = z;
        base[a.0 * n + z.0] = z;
    }
    let inner: Vec<usize> = alg.elements().filter(|&e| e != z && e != o).map(|e| e.0).collect();
    let free: Vec<_> = inner.iter().flat_map(|&a| inner.iter().map(move |&b| (a, b))).collect();
    brute_force(alg, &free, base)
}

fn solver_tables(alg: &FiniteEffectAlgebra) -> Vec<SeqProductTable> {
    let out = enumerate_products(alg, 10_000).unwrap();
    assert!(!out.truncated);
    out.tables
}

#[test]
fn c2_full_enumeration() {
    let c2 = chain(1).unwrap();
    let brute = all_tables(&c2);
    assert_eq!(brute.len(), 1);
    assert_eq!(solver_tables(&c2), brute);
}

#[test]
fn c3_full_enumeration() {
    let c3 = chain(2).unwrap();
    let brute = all_tables(&c3);
    assert!(brute.is_empty());
    assert_eq!(solver_tables(&c3), brute);
}

#[test]
fn forced_border_agrees_with_full_enumeration() {
    for alg in [chain(1).unwrap(), chain(2).unwrap()] {
        assert_eq!(forced_tables(&alg), all_tables(&alg));
    }
}

#[test]
fn four_element_carriers() {
    for alg in [boolean(2).unwrap(), diamond(), chain(3).unwrap()] {
        assert_eq!(solver_tables(&alg), forced_tables(&alg), "{}", alg.name());
    }
}

#[test]
fn five_element_carriers() {
    let hs = horizontal_sum(&[chain(2).unwrap(), chain(3).unwrap()]).unwrap();
    for alg in [chain(4).unwrap(), hs] {
        assert_eq!(solver_tables(&alg), forced_tables(&alg), "{}", alg.name());
    }
}
