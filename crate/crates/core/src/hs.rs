//! The horizontal sum `HS(E(H), [0,1])` with the product determined by a
//! faithful density operator `W`:
//! `A∘B = A^{1/2}BA^{1/2}`, `a∘b = ab`, `A∘a = aA`, `a∘A = a·tr(WA)`.

use rand::Rng;

use crate::algebra::{EffectAlgebra, PartialAlgebra, SequentialProduct, SharplyDominating};
use crate::hilbert::{
    loewner_leq, sequential_quotient, std_product, support_projection, DensityOperator, EffectSampler,
    HilbertEffects, HilbertError, MatrixEffect,
};

/// An element of the horizontal sum. `Zero` and `One` are shared; matrices
/// and scalars are proper elements of their summands.
#[derive(Debug, Clone, PartialEq)]
pub enum HsElem {
    Zero,
    One,
    Matrix(MatrixEffect),
    Scalar(f64),
}

#[derive(Debug, Clone)]
pub struct HsModel {
    hilbert: HilbertEffects,
    w: DensityOperator,
}

impl HsModel {
    pub fn new(w: DensityOperator) -> Result<Self, HilbertError> {
        let w = w.require_faithful()?;
        Ok(Self {
            hilbert: HilbertEffects::new(w.dim()),
            w,
        })
    }

    pub fn dim(&self) -> usize {
        self.hilbert.dim
    }

    pub fn tol(&self) -> f64 {
        self.hilbert.tol
    }

    pub fn density(&self) -> &DensityOperator {
        &self.w
    }

    /// Folds matrices equal to `0` or `I`, and scalars equal to `0` or `1`,
    /// into the shared elements.
    pub fn matrix(&self, a: MatrixEffect) -> HsElem {
        if self.hilbert.same(&a, &self.hilbert.zero()) {
            HsElem::Zero
        } else if self.hilbert.same(&a, &self.hilbert.one()) {
            HsElem::One
        } else {
            HsElem::Matrix(a)
        }
    }

    pub fn scalar(&self, a: f64) -> HsElem {
        let tol = self.tol();
        if a.abs() <= tol {
            HsElem::Zero
        } else if (a - 1.0).abs() <= tol {
            HsElem::One
        } else {
            HsElem::Scalar(a.clamp(0.0, 1.0))
        }
    }

    /// `(A, a) ↦ A∘a` and the other cases, with `0` and `1` handled first.
    pub fn hs_product(&self, a: &HsElem, b: &HsElem) -> HsElem {
        match (a, b) {
            (HsElem::Zero, _) | (_, HsElem::Zero) => HsElem::Zero,
            (HsElem::One, x) | (x, HsElem::One) => x.clone(),
            (HsElem::Matrix(x), HsElem::Matrix(y)) => self.matrix(std_product(x, y).expect("model dimension")),
            (HsElem::Scalar(x), HsElem::Scalar(y)) => self.scalar(x * y),
            (HsElem::Matrix(x), HsElem::Scalar(s)) => self.matrix(x.scale(*s)),
            (HsElem::Scalar(s), HsElem::Matrix(x)) => self.scalar(s * self.w.expectation(x)),
        }
    }

    /// A random element: a tenth each `0` and `1`, then matrices and
    /// scalars in equal proportion.
    pub fn sample(&self, sampler: &mut EffectSampler<impl Rng>) -> HsElem {
        match sampler.rng().gen_range(0..10) {
            0 => HsElem::Zero,
            1 => HsElem::One,
            2..=5 => self.matrix(sampler.effect()),
            _ => self.scalar(sampler.rng().gen_range(0.0..1.0)),
        }
    }

    /// `(a, b, c)` where `c ⊥ b` a third of the time.
    pub fn sample_triple(&self, sampler: &mut EffectSampler<impl Rng>) -> (HsElem, HsElem, HsElem) {
        let a = self.sample(sampler);
        let b = self.sample(sampler);
        let c = if sampler.rng().gen_ratio(1, 3) {
            let t = sampler.rng().gen_range(0.0..=1.0);
            match self.complement(&b) {
                HsElem::Matrix(m) => self.matrix(m.scale(t)),
                HsElem::Scalar(s) => self.scalar(s * t),
                HsElem::One => self.scalar(t),
                HsElem::Zero => HsElem::Zero,
            }
        } else {
            self.sample(sampler)
        };
        (a, b, c)
    }

    /// `Some(d)` with `a = b∘d` when `a ≤ b`.
    pub fn factor(&self, a: &HsElem, b: &HsElem) -> Option<HsElem> {
        match (a, b) {
            (HsElem::Zero, _) => Some(HsElem::Zero),
            (_, HsElem::One) => Some(a.clone()),
            (HsElem::Matrix(x), HsElem::Matrix(y)) => sequential_quotient(x, y).ok().map(|q| self.matrix(q.c)),
            (HsElem::Scalar(x), HsElem::Scalar(y)) if *x <= y + self.tol() => Some(self.scalar((x / y).min(1.0))),
            _ => None,
        }
    }
}

impl PartialAlgebra for HsModel {
    type Elem = HsElem;

    fn zero(&self) -> HsElem {
        HsElem::Zero
    }

    fn one(&self) -> HsElem {
        HsElem::One
    }

    fn sum(&self, a: &HsElem, b: &HsElem) -> Option<HsElem> {
        match (a, b) {
            (HsElem::Zero, x) | (x, HsElem::Zero) => Some(x.clone()),
            (HsElem::One, _) | (_, HsElem::One) => None,
            (HsElem::Matrix(x), HsElem::Matrix(y)) => self.hilbert.sum(x, y).map(|s| self.matrix(s)),
            (HsElem::Scalar(x), HsElem::Scalar(y)) => (x + y <= 1.0 + self.tol()).then(|| self.scalar(x + y)),
            _ => None,
        }
    }

    fn same(&self, a: &HsElem, b: &HsElem) -> bool {
        match (a, b) {
            (HsElem::Zero, HsElem::Zero) | (HsElem::One, HsElem::One) => true,
            (HsElem::Matrix(x), HsElem::Matrix(y)) => self.hilbert.same(x, y),
            (HsElem::Scalar(x), HsElem::Scalar(y)) => (x - y).abs() <= self.tol(),
            _ => false,
        }
    }

    fn show(&self, a: &HsElem) -> String {
        match a {
            HsElem::Zero => "0".into(),
            HsElem::One => "1".into(),
            HsElem::Matrix(m) => format!("{m:?}"),
            HsElem::Scalar(s) => format!("{s}"),
        }
    }
}

impl EffectAlgebra for HsModel {
    fn complement(&self, a: &HsElem) -> HsElem {
        match a {
            HsElem::Zero => HsElem::One,
            HsElem::One => HsElem::Zero,
            HsElem::Matrix(m) => self.matrix(m.complement()),
            HsElem::Scalar(s) => self.scalar(1.0 - s),
        }
    }

    fn leq(&self, a: &HsElem, b: &HsElem) -> bool {
        match (a, b) {
            (HsElem::Zero, _) | (_, HsElem::One) => true,
            (HsElem::Matrix(x), HsElem::Matrix(y)) => loewner_leq(x, y, self.tol()),
            (HsElem::Scalar(x), HsElem::Scalar(y)) => *x <= y + self.tol(),
            _ => false,
        }
    }
}

impl SequentialProduct for HsModel {
    fn product(&self, a: &HsElem, b: &HsElem) -> HsElem {
        self.hs_product(a, b)
    }
}

impl SharplyDominating for HsModel {
    /// Projections stay put, proper scalars have no sharp element below `1`.
    fn hat(&self, a: &HsElem) -> HsElem {
        match a {
            HsElem::Zero => HsElem::Zero,
            HsElem::One | HsElem::Scalar(_) => HsElem::One,
            HsElem::Matrix(m) => self.matrix(support_projection(m).unwrap_or_else(|_| self.hilbert.hat(m))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::check_sea_axioms_sampled;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn mixed_products() {
        let w = DensityOperator::diag(&[0.5, 0.5]).unwrap();
        let hs = HsModel::new(w).unwrap();
        let a = hs.scalar(0.5);
        let p = hs.matrix(MatrixEffect::diag(&[1.0, 0.0]).unwrap());
        let r = hs.product(&a, &p);
        assert!(hs.same(&r, &hs.scalar(0.25)));
        // the shared unit acts as the identity on both sides
        assert!(hs.same(&hs.product(&HsElem::One, &p), &p));
        assert!(hs.same(&hs.product(&p, &a), &hs.matrix(MatrixEffect::diag(&[0.5, 0.0]).unwrap())));
    }

    #[test]
    fn different_states_give_different_products() {
        let h1 = HsModel::new(DensityOperator::diag(&[0.5, 0.5]).unwrap()).unwrap();
        let h2 = HsModel::new(DensityOperator::diag(&[0.75, 0.25]).unwrap()).unwrap();
        let a = HsElem::Scalar(0.5);
        let p = HsElem::Matrix(MatrixEffect::diag(&[1.0, 0.0]).unwrap());
        assert!(h1.same(&h1.product(&a, &p), &HsElem::Scalar(0.25)));
        assert!(h2.same(&h2.product(&a, &p), &HsElem::Scalar(0.375)));
    }

    #[test]
    fn unfaithful_state_refused() {
        let w = DensityOperator::diag(&[1.0, 0.0]).unwrap();
        assert!(matches!(HsModel::new(w), Err(HilbertError::NotFaithful { .. })));
    }

    #[test]
    fn cross_sums_undefined() {
        let hs = HsModel::new(DensityOperator::maximally_mixed(2)).unwrap();
        let a = hs.scalar(0.25);
        let p = hs.matrix(MatrixEffect::diag(&[0.25, 0.0]).unwrap());
        assert!(hs.sum(&a, &p).is_none());
        assert!(hs.sum(&a, &hs.complement(&a)).is_some_and(|s| s == HsElem::One));
    }

    #[test]
    fn sampled_axioms() {
        let mut s = EffectSampler::new(3, ChaCha8Rng::seed_from_u64(4));
        let hs = HsModel::new(s.faithful_density()).unwrap();
        let triples: Vec<_> = (0..100).map(|_| hs.sample_triple(&mut s)).collect();
        let r = check_sea_axioms_sampled(&hs, &triples);
        assert!(r.passed(), "{}", r.checks.render());
    }
}
