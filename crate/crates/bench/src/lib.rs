//! Fixtures shared by the benches.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sea_core::catalog::{boolean, chain, diamond};
use sea_core::construct::{cartesian_product, horizontal_sum};
use sea_core::hilbert::EffectSampler;
use sea_core::FiniteEffectAlgebra;

/// Carriers the solver is timed on, with or without a product.
pub fn solver_cases() -> Vec<(&'static str, FiniteEffectAlgebra)> {
    let b4 = boolean(2).unwrap();
    let c3 = chain(2).unwrap();
    vec![
        ("C3", c3.clone()),
        ("D", diamond()),
        ("chain(4)", chain(4).unwrap()),
        ("B4", b4.clone()),
        ("B8", boolean(3).unwrap()),
        ("B16", boolean(4).unwrap()),
        ("HS(B4,C3)", horizontal_sum(&[b4.clone(), c3.clone()]).unwrap()),
        ("B4xC3", cartesian_product(&[b4, c3]).unwrap().algebra),
    ]
}

pub fn sampler(dim: usize) -> EffectSampler<ChaCha8Rng> {
    EffectSampler::new(dim, ChaCha8Rng::seed_from_u64(0x5EA + dim as u64))
}
