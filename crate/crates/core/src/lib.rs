//! Effect algebras and sequential effect algebras.
//!
//! Finite models are tables ([`finite`]) checked against the effect-algebra
//! and sequential-product axioms ([`axioms`]); [`solver`] searches for every
//! sequential product a finite effect algebra admits. Infinite models are
//! closed-form ([`symbolic`]), matrix-valued ([`hilbert`], [`hs`]), exact
//! rational ([`fuzzy`]) or polynomial ([`poly`]). [`seq_order`] holds the
//! theory of sequentially ordered SEAs, generic over all of them.

pub mod algebra;
pub mod axioms;
pub mod catalog;
pub mod construct;
pub mod finite;
pub mod format;
pub mod fuzzy;
pub mod hilbert;
pub mod hs;
pub mod linalg;
pub mod order;
pub mod poly;
pub mod report;
pub mod seq_order;
pub mod solver;
pub mod symbolic;

pub use algebra::{EffectAlgebra, PartialAlgebra, SequentialProduct, SharplyDominating};
pub use axioms::{check_effect_axioms, check_sea_axioms, check_sea_axioms_sampled, AxiomReport, SeaReport};
pub use finite::{AlgebraTable, ElemId, FiniteEffectAlgebra, SeqProductTable, StructureError};
pub use format::{parse_algebra, serialize_algebra, AlgebraFile, ParseError};
pub use fuzzy::{FuzzyElement, FuzzySystem};
pub use hilbert::{HilbertEffects, MatrixEffect};
pub use report::{Check, CheckSet};
pub use seq_order::{sequential_quotient, FiniteSea, SeaModel};
pub use solver::{enumerate_products, SolveOutcome, Verdict};
pub use symbolic::{Omega, OmegaOmegaStar};
