//! Named models: chains, Boolean algebras, the diamond, `ω + ω*`, the unit
//! interval, full fuzzy set systems, and Hilbert-space effects.

use thiserror::Error;

use crate::construct::meet_table;
use crate::finite::{AlgebraTable, ElemId, FiniteEffectAlgebra, SeqProductTable};
use crate::fuzzy::FuzzySystem;
use crate::hilbert::HilbertEffects;
use crate::symbolic::OmegaOmegaStar;

const ATOM_NAMES: &[&str] = &["x", "y", "z", "u", "v", "w"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown model `{0}`")]
    Unknown(String),
    #[error("bad parameters for `{name}`: {reason}")]
    BadParams { name: String, reason: String },
}

fn bad(name: &str, reason: impl Into<String>) -> CatalogError {
    CatalogError::BadParams {
        name: name.into(),
        reason: reason.into(),
    }
}

/// `{0, a, 2a, …, (n−1)a, 1}` with `na = 1`; `chain(2)` is the 3-chain.
pub fn chain(n: usize) -> Result<FiniteEffectAlgebra, CatalogError> {
    if !(1..=64).contains(&n) {
        return Err(bad("chain", "need 1 ≤ n ≤ 64"));
    }
    let name_of = |i: usize| match i {
        0 => "0".to_string(),
        1 if n > 1 => "a".to_string(),
        i if i == n => "1".to_string(),
        i => format!("{i}a"),
    };
    let names = (0..=n).map(name_of).collect();
    let mut t = AlgebraTable::new(format!("C{}", n + 1), names, "0", "1").expect("well-formed");
    for i in 0..=n {
        for j in i..=n - i {
            t.set_sum(ElemId(i), ElemId(j), ElemId(i + j)).expect("consistent");
        }
    }
    Ok(FiniteEffectAlgebra::new(t).expect("chains are effect algebras"))
}

/// The Boolean algebra `2^{x, y, …}` on `k` atoms. Element `i` is the subset
/// with bitmask `i`.
pub fn boolean(k: usize) -> Result<FiniteEffectAlgebra, CatalogError> {
    if !(1..=ATOM_NAMES.len()).contains(&k) {
        return Err(bad("boolean", format!("need 1 ≤ k ≤ {}", ATOM_NAMES.len())));
    }
    let full = (1usize << k) - 1;
    let names = (0..=full)
        .map(|m| match m {
            0 => "0".to_string(),
            m if m == full => "1".to_string(),
            m => (0..k).filter(|b| m >> b & 1 == 1).map(|b| ATOM_NAMES[b]).collect(),
        })
        .collect();
    let mut t = AlgebraTable::new(format!("B{}", full + 1), names, "0", "1").expect("well-formed");
    for a in 0..=full {
        for b in a..=full {
            if a & b == 0 {
                t.set_sum(ElemId(a), ElemId(b), ElemId(a | b)).expect("consistent");
            }
        }
    }
    Ok(FiniteEffectAlgebra::new(t).expect("Boolean algebras are effect algebras"))
}

/// `D = {0, a, b, 1}` with `2a = 2b = 1`.
pub fn diamond() -> FiniteEffectAlgebra {
    let names = ["0", "a", "b", "1"].map(String::from).to_vec();
    let mut t = AlgebraTable::new("D", names, "0", "1").expect("well-formed");
    t.set_sum_by_name("a", "a", "1").expect("consistent");
    t.set_sum_by_name("b", "b", "1").expect("consistent");
    FiniteEffectAlgebra::new(t).expect("the diamond is an effect algebra")
}

/// `a ∘ b = a ∧ b` on a Boolean algebra.
pub fn boolean_meet(alg: &FiniteEffectAlgebra) -> SeqProductTable {
    meet_table(alg).expect("Boolean algebras are lattices")
}

/// A model from the catalog.
#[derive(Debug, Clone)]
pub enum CatalogModel {
    Finite(FiniteEffectAlgebra),
    OmegaOmegaStar(OmegaOmegaStar),
    Fuzzy(FuzzySystem),
    Hilbert(HilbertEffects),
}

impl CatalogModel {
    pub fn as_finite(&self) -> Option<&FiniteEffectAlgebra> {
        match self {
            CatalogModel::Finite(f) => Some(f),
            _ => None,
        }
    }
}

/// Looks up a model by name, e.g. `chain(3)`, `boolean(2)`, `diamond`,
/// `omega_omega_star`, `unit_interval`, `full_fuzzy(3)`, `hilbert(2)`.
pub fn catalog(spec: &str) -> Result<CatalogModel, CatalogError> {
    let spec = spec.trim();
    let (name, arg) = match spec.split_once('(') {
        Some((n, rest)) => {
            let arg = rest
                .strip_suffix(')')
                .ok_or_else(|| bad(n, "missing `)`"))?
                .trim();
            let v: usize = arg.parse().map_err(|_| bad(n, format!("`{arg}` is not a count")))?;
            (n.trim(), Some(v))
        }
        None => (spec, None),
    };
    let need = |arg: Option<usize>| arg.ok_or_else(|| bad(name, "parameter required"));
    let none = |arg: Option<usize>| match arg {
        Some(_) => Err(bad(name, "takes no parameter")),
        None => Ok(()),
    };
    Ok(match name {
        "chain" => CatalogModel::Finite(chain(need(arg)?)?),
        "boolean" => CatalogModel::Finite(boolean(need(arg)?)?),
        "diamond" => {
            none(arg)?;
            CatalogModel::Finite(diamond())
        }
        "omega_omega_star" => {
            none(arg)?;
            CatalogModel::OmegaOmegaStar(OmegaOmegaStar)
        }
        "unit_interval" => {
            none(arg)?;
            CatalogModel::Fuzzy(FuzzySystem::unit_interval())
        }
        "full_fuzzy" => {
            let k = need(arg)?;
            if k == 0 {
                return Err(bad(name, "base set must be nonempty"));
            }
            CatalogModel::Fuzzy(FuzzySystem::with_points(k))
        }
        "hilbert" => {
            let d = need(arg)?;
            if !(1..=8).contains(&d) {
                return Err(bad(name, "need 1 ≤ d ≤ 8"));
            }
            CatalogModel::Hilbert(HilbertEffects::new(d))
        }
        other => return Err(CatalogError::Unknown(other.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_finite_models() {
        let c3 = catalog("chain(2)").unwrap();
        let c3 = c3.as_finite().unwrap();
        assert_eq!(c3.table().names(), ["0", "a", "1"]);
        assert_eq!(c3.sum_id(ElemId(1), ElemId(1)), Some(ElemId(2)));

        let b4 = catalog("boolean(2)").unwrap();
        assert_eq!(b4.as_finite().unwrap().table().names(), ["0", "x", "y", "1"]);

        let d = catalog("diamond").unwrap();
        assert_eq!(d.as_finite().unwrap().len(), 4);
    }

    #[test]
    fn other_models() {
        assert!(matches!(catalog("omega_omega_star"), Ok(CatalogModel::OmegaOmegaStar(_))));
        assert!(matches!(catalog("unit_interval"), Ok(CatalogModel::Fuzzy(_))));
        assert!(matches!(catalog("full_fuzzy(3)"), Ok(CatalogModel::Fuzzy(_))));
        assert!(matches!(catalog("hilbert(2)"), Ok(CatalogModel::Hilbert(_))));
    }

    #[test]
    fn errors() {
        assert!(matches!(catalog("lattice"), Err(CatalogError::Unknown(_))));
        assert!(matches!(catalog("chain(0)"), Err(CatalogError::BadParams { .. })));
        assert!(matches!(catalog("chain(x)"), Err(CatalogError::BadParams { .. })));
        assert!(matches!(catalog("diamond(2)"), Err(CatalogError::BadParams { .. })));
        assert!(matches!(catalog("boolean"), Err(CatalogError::BadParams { .. })));
    }
}
