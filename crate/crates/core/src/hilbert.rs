//! Effects on a finite-dimensional complex Hilbert space: Hermitian `A` with
//! `0 ≤ A ≤ I`, the standard product `A∘B = A^{1/2} B A^{1/2}`, supports,
//! quotients and the checks that characterize the product.

use std::fmt;
use std::sync::OnceLock;

use rand::Rng;
use thiserror::Error;

use crate::algebra::{EffectAlgebra, PartialAlgebra, SequentialProduct, SharplyDominating};
use crate::linalg::{eigh, inner, normalize, CMatrix, Eigen, C64};
use crate::report::{Check, CheckSet};

/// Default tolerances.
pub const HERMITIAN_TOL: f64 = 1e-10;
pub const LOEWNER_TOL: f64 = 1e-9;
pub const QUOTIENT_TOL: f64 = 1e-8;
/// Relative cutoff separating zero from nonzero eigenvalues.
pub const SUPPORT_EPS: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HilbertError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is not Hermitian (defect {defect:e})")]
    NotHermitian { defect: f64 },
    #[error("spectrum [{min}, {max}] is outside [0,1]")]
    OutOfRange { min: f64, max: f64 },
    #[error("eigenvalue {eigenvalue:e} is too close to the support cutoff {cutoff:e}")]
    Degenerate { eigenvalue: f64, cutoff: f64 },
    #[error("A ≰ B: smallest eigenvalue of B − A is {min_eigenvalue:e}")]
    NotBelow { min_eigenvalue: f64 },
    #[error("quotient certification failed: residual {residual:e}, excess over support {excess:e}")]
    Certification { residual: f64, excess: f64 },
    #[error("density operator is not faithful (smallest eigenvalue {min_eigenvalue:e})")]
    NotFaithful { min_eigenvalue: f64 },
    #[error("not a density operator: {0}")]
    NotDensity(String),
    #[error("zero vector")]
    ZeroVector,
}

/// A Hermitian matrix with spectrum in `[0,1]`. The eigendecomposition is
/// computed once on demand.
#[derive(Clone)]
pub struct MatrixEffect {
    m: CMatrix,
    eig: OnceLock<Eigen>,
}

impl fmt::Debug for MatrixEffect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.m)
    }
}

impl PartialEq for MatrixEffect {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m
    }
}

impl MatrixEffect {
    /// Validates and clamps eigenvalues within `tol` of `[0,1]` into it.
    pub fn with_tolerance(m: CMatrix, tol: f64) -> Result<Self, HilbertError> {
        let defect = m.hermiticity_defect();
        if defect > HERMITIAN_TOL.max(tol) {
            return Err(HilbertError::NotHermitian { defect });
        }
        let e = eigh(&m);
        if e.min() < -tol || e.max() > 1.0 + tol {
            return Err(HilbertError::OutOfRange { min: e.min(), max: e.max() });
        }
        if e.min() < 0.0 || e.max() > 1.0 {
            let clamped = Eigen {
                values: e.values.iter().map(|v| v.clamp(0.0, 1.0)).collect(),
                vectors: e.vectors,
            };
            let m = clamped.apply(|v| v).hermitian_part();
            return Ok(Self::trusted(m, Some(clamped)));
        }
        Ok(Self::trusted(m.hermitian_part(), Some(e)))
    }

    pub fn new(m: CMatrix) -> Result<Self, HilbertError> {
        Self::with_tolerance(m, LOEWNER_TOL)
    }

    fn trusted(m: CMatrix, eig: Option<Eigen>) -> Self {
        let cell = OnceLock::new();
        if let Some(e) = eig {
            let _ = cell.set(e);
        }
        Self { m, eig: cell }
    }

    pub fn zero(dim: usize) -> Self {
        Self::trusted(CMatrix::zeros(dim), None)
    }

    pub fn identity(dim: usize) -> Self {
        Self::trusted(CMatrix::identity(dim), None)
    }

    pub fn diag(values: &[f64]) -> Result<Self, HilbertError> {
        Self::new(CMatrix::from_real_diag(values))
    }

    /// `U diag(λ) U*` for unitary `U`.
    pub fn from_spectrum(u: &CMatrix, values: &[f64]) -> Result<Self, HilbertError> {
        Self::new(spectral(u, values))
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.dim()
    }

    pub fn eigen(&self) -> &Eigen {
        self.eig.get_or_init(|| eigh(&self.m))
    }

    /// Eigenvalues at rounding-noise level are flushed to zero first; their
    /// square roots would otherwise be of order `1e-8`.
    pub fn sqrt(&self) -> CMatrix {
        let e = self.eigen();
        let noise = 64.0 * f64::EPSILON * e.max().max(1.0);
        e.apply(|v| if v <= noise { 0.0 } else { v.sqrt() })
    }

    pub fn complement(&self) -> Self {
        Self::trusted(&CMatrix::identity(self.dim()) - &self.m, None)
    }

    pub fn scale(&self, s: f64) -> Self {
        assert!((0.0..=1.0).contains(&s));
        Self::trusted(self.m.scale(s), None)
    }

    pub fn distance(&self, other: &Self) -> f64 {
        (&self.m - &other.m).max_abs()
    }

    /// `A = A²` to `tol`, via `min(λ, 1 − λ)` over the spectrum.
    pub fn is_projection(&self, tol: f64) -> bool {
        self.eigen().values.iter().all(|&l| l.min(1.0 - l) <= tol)
    }

    /// Number of eigenvalues above the support cutoff.
    pub fn rank(&self) -> usize {
        self.rank_above(SUPPORT_EPS, NOISE_FLOOR)
    }

    /// Number of eigenvalues above `max(rel · λ_max, floor)`.
    pub fn rank_above(&self, rel: f64, floor: f64) -> usize {
        let e = self.eigen();
        let cut = (rel * e.max().max(0.0)).max(floor);
        e.values.iter().filter(|&&l| l > cut).count()
    }
}

fn spectral(u: &CMatrix, values: &[f64]) -> CMatrix {
    let d = CMatrix::from_real_diag(values);
    &(u * &d) * &u.adjoint()
}

fn same_dim(a: &MatrixEffect, b: &MatrixEffect) -> Result<(), HilbertError> {
    if a.dim() == b.dim() {
        Ok(())
    } else {
        Err(HilbertError::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        })
    }
}

/// `A^{1/2} B A^{1/2}`.
pub fn std_product(a: &MatrixEffect, b: &MatrixEffect) -> Result<MatrixEffect, HilbertError> {
    same_dim(a, b)?;
    let s = a.sqrt();
    let m = &(&s * b.matrix()) * &s;
    MatrixEffect::new(m.hermitian_part())
}

/// Eigenvalues at or below this are treated as zero whatever `λmax` is, so
/// a matrix that is zero up to rounding has an empty support.
pub const NOISE_FLOOR: f64 = 1e-12;

/// Support cutoff: `SUPPORT_EPS · λmax`, but never below [`NOISE_FLOOR`].
pub fn cutoff(e: &Eigen) -> f64 {
    (SUPPORT_EPS * e.max().max(0.0)).max(NOISE_FLOOR)
}

fn check_gap(e: &Eigen) -> Result<f64, HilbertError> {
    let cut = cutoff(e);
    if let Some(&l) = e.values.iter().find(|&&l| l > cut * 1e-2 && l < cut * 1e2) {
        return Err(HilbertError::Degenerate { eigenvalue: l, cutoff: cut });
    }
    Ok(cut)
}

/// The projection `P_A` onto the range of `A`: the least projection above
/// `A`. Refuses spectra with eigenvalues near the cutoff.
pub fn support_projection(a: &MatrixEffect) -> Result<MatrixEffect, HilbertError> {
    let cut = check_gap(a.eigen())?;
    Ok(support_unchecked(a, cut))
}

fn support_unchecked(a: &MatrixEffect, cut: f64) -> MatrixEffect {
    let e = a.eigen();
    if e.max() <= 0.0 {
        return MatrixEffect::zero(a.dim());
    }
    let values: Vec<f64> = e.values.iter().map(|&l| if l > cut { 1.0 } else { 0.0 }).collect();
    let p = e.apply(|l| if l > cut { 1.0 } else { 0.0 });
    MatrixEffect::trusted(
        p,
        Some(Eigen {
            values,
            vectors: e.vectors.clone(),
        }),
    )
}

/// Smallest eigenvalue of `B − A`.
pub fn loewner_gap(a: &MatrixEffect, b: &MatrixEffect) -> f64 {
    eigh(&(b.matrix() - a.matrix())).min()
}

pub fn loewner_leq(a: &MatrixEffect, b: &MatrixEffect, tol: f64) -> bool {
    loewner_gap(a, b) >= -tol
}

/// `C = A/B` with its certificate.
#[derive(Debug, Clone)]
pub struct HilbertQuotient {
    pub c: MatrixEffect,
    /// `‖B^{1/2} C B^{1/2} − A‖`, largest entry.
    pub residual: f64,
    /// How far `C` rises above `P_B`: `max(0, −λ_min(P_B − C))`.
    pub excess: f64,
}

/// `C = pinv(B^{1/2}) A pinv(B^{1/2})`, equivalently `T T*` with
/// `T = pinv(B^{1/2}) A^{1/2}`. Certified by `B∘C = A` and `C ≤ P_B`.
pub fn sequential_quotient(a: &MatrixEffect, b: &MatrixEffect) -> Result<HilbertQuotient, HilbertError> {
    same_dim(a, b)?;
    let gap = loewner_gap(a, b);
    if gap < -LOEWNER_TOL {
        return Err(HilbertError::NotBelow { min_eigenvalue: gap });
    }
    let e = b.eigen();
    let cut = check_gap(e)?;
    let pinv_sqrt = e.apply(|l| if l > cut { 1.0 / l.sqrt() } else { 0.0 });
    let c = (&(&pinv_sqrt * a.matrix()) * &pinv_sqrt).hermitian_part();
    let c = MatrixEffect::with_tolerance(c, QUOTIENT_TOL)?;
    let sb = b.sqrt();
    let back = &(&sb * c.matrix()) * &sb;
    let residual = (&back - a.matrix()).max_abs();
    let pb = support_unchecked(b, cut);
    let excess = (-loewner_gap(&c, &pb)).max(0.0);
    if residual > QUOTIENT_TOL || excess > QUOTIENT_TOL {
        return Err(HilbertError::Certification { residual, excess });
    }
    Ok(HilbertQuotient { c, residual, excess })
}

/// A positive trace-one operator.
#[derive(Debug, Clone)]
pub struct DensityOperator {
    m: CMatrix,
    pub faithful: bool,
}

impl DensityOperator {
    pub fn new(m: CMatrix) -> Result<Self, HilbertError> {
        let defect = m.hermiticity_defect();
        if defect > HERMITIAN_TOL {
            return Err(HilbertError::NotHermitian { defect });
        }
        let e = eigh(&m);
        if e.min() < -LOEWNER_TOL {
            return Err(HilbertError::NotDensity(format!("eigenvalue {}", e.min())));
        }
        let tr = m.trace().re;
        if (tr - 1.0).abs() > LOEWNER_TOL {
            return Err(HilbertError::NotDensity(format!("trace {tr}")));
        }
        Ok(Self {
            faithful: e.min() > LOEWNER_TOL,
            m: m.hermitian_part(),
        })
    }

    pub fn diag(values: &[f64]) -> Result<Self, HilbertError> {
        Self::new(CMatrix::from_real_diag(values))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self::diag(&vec![1.0 / dim as f64; dim]).expect("valid density")
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.dim()
    }

    /// `tr(WA)`.
    pub fn expectation(&self, a: &MatrixEffect) -> f64 {
        (&self.m * a.matrix()).trace().re
    }

    pub fn require_faithful(self) -> Result<Self, HilbertError> {
        if self.faithful {
            Ok(self)
        } else {
            Err(HilbertError::NotFaithful {
                min_eigenvalue: eigh(&self.m).min(),
            })
        }
    }
}

/// `P_x`, the projection onto the span of `x`.
#[derive(Debug, Clone)]
pub struct RankOneProjection {
    pub x: Vec<C64>,
    pub p: MatrixEffect,
}

impl RankOneProjection {
    pub fn new(x: &[C64]) -> Result<Self, HilbertError> {
        let x = normalize(x).ok_or(HilbertError::ZeroVector)?;
        let p = MatrixEffect::trusted(CMatrix::outer(&x), None);
        Ok(Self { x, p })
    }
}

/// Seeded generator of effects, projections, unit vectors and faithful
/// states. Half of the draws use one fixed basis, so commuting and
/// orthogonal pairs occur among the samples.
pub struct EffectSampler<R: Rng> {
    dim: usize,
    rng: R,
    basis: CMatrix,
}

impl<R: Rng> EffectSampler<R> {
    pub fn new(dim: usize, mut rng: R) -> Self {
        let basis = random_unitary(dim, &mut rng);
        Self { dim, rng, basis }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rng(&mut self) -> &mut R {
        &mut self.rng
    }

    fn basis_for_draw(&mut self) -> CMatrix {
        if self.rng.gen_bool(0.5) {
            self.basis.clone()
        } else {
            random_unitary(self.dim, &mut self.rng)
        }
    }

    fn spectrum_value(&mut self) -> f64 {
        match self.rng.gen_range(0..10) {
            0 => 0.0,
            1 => 1.0,
            _ => self.rng.gen_range(0.0..1.0),
        }
    }

    pub fn effect(&mut self) -> MatrixEffect {
        let u = self.basis_for_draw();
        let values: Vec<f64> = (0..self.dim).map(|_| self.spectrum_value()).collect();
        MatrixEffect::from_spectrum(&u, &values).expect("spectrum in [0,1]")
    }

    /// An effect with every eigenvalue in `[lo, 1]`.
    pub fn invertible_effect(&mut self, lo: f64) -> MatrixEffect {
        let u = self.basis_for_draw();
        let values: Vec<f64> = (0..self.dim).map(|_| self.rng.gen_range(lo..=1.0)).collect();
        MatrixEffect::from_spectrum(&u, &values).expect("spectrum in [0,1]")
    }

    pub fn projection(&mut self) -> MatrixEffect {
        let u = self.basis_for_draw();
        let values: Vec<f64> = (0..self.dim).map(|_| if self.rng.gen_bool(0.5) { 1.0 } else { 0.0 }).collect();
        MatrixEffect::from_spectrum(&u, &values).expect("projection")
    }

    pub fn unit_vector(&mut self) -> Vec<C64> {
        loop {
            let v: Vec<C64> = (0..self.dim)
                .map(|_| C64::new(self.rng.gen_range(-1.0..1.0), self.rng.gen_range(-1.0..1.0)))
                .collect();
            if let Some(v) = normalize(&v) {
                return v;
            }
        }
    }

    pub fn faithful_density(&mut self) -> DensityOperator {
        let u = random_unitary(self.dim, &mut self.rng);
        let raw: Vec<f64> = (0..self.dim).map(|_| self.rng.gen_range(0.05..1.0)).collect();
        let total: f64 = raw.iter().sum();
        let values: Vec<f64> = raw.iter().map(|v| v / total).collect();
        DensityOperator::new(spectral(&u, &values)).expect("valid density")
    }

    pub fn unit_scalar(&mut self) -> f64 {
        self.spectrum_value()
    }

    /// `(a, b, c)` where `c ⊥ b` a third of the time.
    pub fn triple(&mut self) -> (MatrixEffect, MatrixEffect, MatrixEffect) {
        let a = self.effect();
        let b = self.effect();
        let c = if self.rng.gen_ratio(1, 3) {
            let t = self.rng.gen_range(0.0..=1.0);
            b.complement().scale(t)
        } else {
            self.effect()
        };
        (a, b, c)
    }
}

/// Gram–Schmidt on a random complex matrix.
pub fn random_unitary(dim: usize, rng: &mut impl Rng) -> CMatrix {
    loop {
        let mut cols: Vec<Vec<C64>> = Vec::with_capacity(dim);
        let mut ok = true;
        for _ in 0..dim {
            let mut v: Vec<C64> = (0..dim)
                .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            for c in &cols {
                let proj = inner(&v, c);
                for (vi, ci) in v.iter_mut().zip(c) {
                    *vi -= proj * ci;
                }
            }
            match normalize(&v) {
                Some(v) if inner(&v, &v).re > 0.5 => cols.push(v),
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return CMatrix::from_fn(dim, |i, j| cols[j][i]);
        }
    }
}

/// `E(H)` in a fixed dimension, with entrywise tolerance `tol` for equality
/// and the Löwner order.
#[derive(Debug, Clone, PartialEq)]
pub struct HilbertEffects {
    pub dim: usize,
    pub tol: f64,
}

impl HilbertEffects {
    pub fn new(dim: usize) -> Self {
        Self { dim, tol: LOEWNER_TOL }
    }

    pub fn with_tol(dim: usize, tol: f64) -> Self {
        Self { dim, tol }
    }
}

impl PartialAlgebra for HilbertEffects {
    type Elem = MatrixEffect;

    fn zero(&self) -> MatrixEffect {
        MatrixEffect::zero(self.dim)
    }

    fn one(&self) -> MatrixEffect {
        MatrixEffect::identity(self.dim)
    }

    fn sum(&self, a: &MatrixEffect, b: &MatrixEffect) -> Option<MatrixEffect> {
        MatrixEffect::with_tolerance(a.matrix() + b.matrix(), self.tol).ok()
    }

    fn same(&self, a: &MatrixEffect, b: &MatrixEffect) -> bool {
        a.distance(b) <= self.tol
    }
}

impl EffectAlgebra for HilbertEffects {
    fn complement(&self, a: &MatrixEffect) -> MatrixEffect {
        a.complement()
    }

    fn leq(&self, a: &MatrixEffect, b: &MatrixEffect) -> bool {
        loewner_leq(a, b, self.tol)
    }
}

impl SequentialProduct for HilbertEffects {
    fn product(&self, a: &MatrixEffect, b: &MatrixEffect) -> MatrixEffect {
        std_product(a, b).expect("operands share the model dimension")
    }
}

impl SharplyDominating for HilbertEffects {
    /// `P_A`. Near-degenerate spectra fall back to the plain cutoff; use
    /// [`support_projection`] to have them refused.
    fn hat(&self, a: &MatrixEffect) -> MatrixEffect {
        support_unchecked(a, cutoff(a.eigen()))
    }

    fn is_sharp(&self, a: &MatrixEffect) -> bool {
        a.is_projection(self.tol)
    }
}

/// The conditions characterizing the standard product, on samples:
/// finite additivity, homogeneity `(λA)∘B = λ(A∘B)`, and
/// `⟨A∘P_x y, y⟩ = |⟨A^{1/2}x, y⟩|²`.
pub fn check_characterization(sampler: &mut EffectSampler<impl Rng>, samples: usize, tol: f64) -> CheckSet {
    let mut set = CheckSet::new(
        "standard product characterization",
        format!("dim {}, {samples} samples, tol {tol:e}", sampler.dim()),
    );
    let mut additive = Check::new("finite additivity");
    let mut homogeneous = Check::new("homogeneity");
    let mut rank_one = Check::new("rank-one formula");
    for _ in 0..samples {
        let a = sampler.effect();
        let b1 = sampler.effect();
        // B₂ ≤ B₁′ so that B₁ + B₂ ≤ I
        let t = sampler.rng().gen_range(0.0..=1.0);
        let b2 = b1.complement().scale(t);
        let sum = MatrixEffect::with_tolerance(b1.matrix() + b2.matrix(), tol).expect("B₁ + B₂ ≤ I");
        let lhs = std_product(&a, &sum).expect("dims");
        let rhs = std_product(&a, &b1).expect("dims").matrix() + std_product(&a, &b2).expect("dims").matrix();
        let d = (lhs.matrix() - &rhs).max_abs();
        additive.record(d <= tol, || format!("residual {d:e}"));

        let lambda = sampler.unit_scalar();
        let lhs = std_product(&a.scale(lambda), &b1).expect("dims");
        let rhs = std_product(&a, &b1).expect("dims").scale(lambda);
        let d = lhs.distance(&rhs);
        homogeneous.record(d <= tol, || format!("λ={lambda}: residual {d:e}"));

        let x = sampler.unit_vector();
        let y = sampler.unit_vector();
        let px = RankOneProjection::new(&x).expect("unit vector");
        let prod = std_product(&a, &px.p).expect("dims");
        let lhs = inner(&prod.matrix().mul_vec(&y), &y).re;
        let rhs = inner(&a.sqrt().mul_vec(&x), &y).norm_sqr();
        let d = (lhs - rhs).abs();
        rank_one.record(d <= tol, || format!("residual {d:e}"));
    }
    set.push(additive);
    set.push(homogeneous);
    set.push(rank_one);
    set
}

/// Condition (1) through certified quotients of planted pairs, and
/// Condition (2) as `C∘A ≤ C∘B ⇒ P_C A P_C ≤ P_C B P_C`.
pub fn check_sequential_order(sampler: &mut EffectSampler<impl Rng>, samples: usize, tol: f64) -> CheckSet {
    let mut set = CheckSet::new("sequential order", format!("dim {}, {samples} samples, tol {tol:e}", sampler.dim()));
    let mut cond1 = Check::new("condition 1");
    let mut cond2 = Check::new("condition 2");
    let mut kernels = Check::new("ker C = ker C^{1/2}");
    for _ in 0..samples {
        let b = sampler.effect();
        let c0 = sampler.effect();
        let a = std_product(&b, &c0).expect("dims");
        match sequential_quotient(&a, &b) {
            Ok(qt) => cond1.record(qt.residual <= tol && qt.excess <= tol, || format!("residual {:e}", qt.residual)),
            Err(HilbertError::Degenerate { .. }) => cond1.skip(),
            Err(e) => cond1.fail(e.to_string()),
        }

        // hypothesis C∘A ≤ C∘B holds by construction: A = B∘D ≤ B
        let c = sampler.effect();
        let bb = sampler.effect();
        let d = sampler.effect();
        let aa = std_product(&bb, &d).expect("dims");
        let ca = std_product(&c, &aa).expect("dims");
        let cb = std_product(&c, &bb).expect("dims");
        if loewner_leq(&ca, &cb, tol) {
            let pc = match support_projection(&c) {
                Ok(p) => p,
                Err(_) => {
                    cond2.skip();
                    continue;
                }
            };
            let lhs = std_product(&pc, &aa).expect("dims");
            let rhs = std_product(&pc, &bb).expect("dims");
            cond2.record(loewner_leq(&lhs, &rhs, tol), || format!("gap {:e}", loewner_gap(&lhs, &rhs)));
        } else {
            cond2.skip();
        }

        // √ maps the cutoff ε·λ_max(C) to √ε·λ_max(√C)
        let s = MatrixEffect::with_tolerance(c.sqrt(), tol).expect("√C is an effect");
        let (rc, rs) = (c.rank(), s.rank_above(SUPPORT_EPS.sqrt(), NOISE_FLOOR.sqrt()));
        let ranges = match (support_projection(&c), support_projection(&s)) {
            (Ok(p), Ok(q)) => p.distance(&q) <= tol,
            _ => true,
        };
        kernels.record(rc == rs && ranges, || format!("rank C = {rc}, rank C^{{1/2}} = {rs}"));
    }
    set.push(cond1);
    set.push(cond2);
    set.push(kernels);
    set
}

/// Planted recovery: `A = B∘C₀` with `C₀ ≤ P_B` gives `A/B = C₀`.
pub fn check_quotient_roundtrip(sampler: &mut EffectSampler<impl Rng>, samples: usize, tol: f64) -> CheckSet {
    let mut set = CheckSet::new("quotient round trip", format!("dim {}, {samples} samples, tol {tol:e}", sampler.dim()));
    let mut roundtrip = Check::new("B∘(A/B) = A");
    let mut planted = Check::new("recovers planted C₀");
    for _ in 0..samples {
        let b = sampler.effect();
        let pb = match support_projection(&b) {
            Ok(p) => p,
            Err(_) => {
                roundtrip.skip();
                planted.skip();
                continue;
            }
        };
        let raw = sampler.effect();
        let c0 = std_product(&pb, &raw).expect("dims");
        let a = std_product(&b, &c0).expect("dims");
        match sequential_quotient(&a, &b) {
            Ok(qt) => {
                let back = std_product(&b, &qt.c).expect("dims");
                let r = back.distance(&a);
                roundtrip.record(r <= tol, || format!("residual {r:e}"));
                let d = qt.c.distance(&c0);
                planted.record(d <= tol, || format!("distance {d:e}"));
            }
            Err(HilbertError::Degenerate { .. }) => {
                roundtrip.skip();
                planted.skip();
            }
            Err(e) => {
                roundtrip.fail(e.to_string());
                planted.fail(e.to_string());
            }
        }
    }
    set.push(roundtrip);
    set.push(planted);
    set
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::check_sea_axioms_sampled;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sampler(dim: usize, seed: u64) -> EffectSampler<ChaCha8Rng> {
        EffectSampler::new(dim, ChaCha8Rng::seed_from_u64(seed))
    }

    #[test]
    fn product_examples() {
        let mut s = sampler(3, 1);
        let b = s.effect();
        let i = MatrixEffect::identity(3);
        assert!(std_product(&i, &b).unwrap().distance(&b) < 1e-12);

        let a = MatrixEffect::diag(&[0.25, 1.0]).unwrap();
        let b = MatrixEffect::diag(&[0.5, 0.5]).unwrap();
        let ab = std_product(&a, &b).unwrap();
        assert!(ab.distance(&MatrixEffect::diag(&[0.125, 0.5]).unwrap()) < 1e-12);

        let p = s.projection();
        assert!(std_product(&p, &p).unwrap().distance(&p) < 1e-12);
        assert!(std_product(&a, &MatrixEffect::identity(3)).is_err());
    }

    #[test]
    fn supports() {
        let a = MatrixEffect::diag(&[0.3, 0.0, 0.9]).unwrap();
        let p = support_projection(&a).unwrap();
        assert!(p.distance(&MatrixEffect::diag(&[1.0, 0.0, 1.0]).unwrap()) < 1e-12);
        let mut s = sampler(4, 2);
        let q = s.projection();
        assert!(support_projection(&q).unwrap().distance(&q) < 1e-12);
        let inv = s.invertible_effect(0.1);
        assert!(support_projection(&inv).unwrap().distance(&MatrixEffect::identity(4)) < 1e-12);
        let crowded = MatrixEffect::diag(&[1.0, 1e-8]).unwrap();
        assert!(matches!(support_projection(&crowded), Err(HilbertError::Degenerate { .. })));
    }

    #[test]
    fn quotient_examples() {
        let mut s = sampler(4, 3);
        let b = s.effect();
        let q = sequential_quotient(&b, &b).unwrap();
        assert!(q.c.distance(&support_projection(&b).unwrap()) < 1e-8);

        let p = s.projection();
        let a = std_product(&p, &s.effect()).unwrap();
        let q = sequential_quotient(&a, &p).unwrap();
        assert!(q.c.distance(&a) < 1e-8);

        let big = MatrixEffect::identity(4);
        assert!(matches!(sequential_quotient(&big, &b), Err(HilbertError::NotBelow { .. })));
    }

    #[test]
    fn rank_one_formula_by_hand() {
        let a = MatrixEffect::diag(&[0.25, 1.0]).unwrap();
        let e1 = vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
        let px = RankOneProjection::new(&e1).unwrap();
        let prod = std_product(&a, &px.p).unwrap();
        let lhs = inner(&prod.matrix().mul_vec(&e1), &e1).re;
        assert!((lhs - 0.25).abs() < 1e-12);
        let rhs = inner(&a.sqrt().mul_vec(&e1), &e1).norm_sqr();
        assert!((rhs - 0.25).abs() < 1e-12);
    }

    #[test]
    fn scaling_by_zero() {
        let mut s = sampler(3, 4);
        let a = s.effect();
        let b = s.effect();
        assert!(std_product(&a.scale(0.0), &b).unwrap().distance(&MatrixEffect::zero(3)) < 1e-12);
    }

    #[test]
    fn sharp_means_projection() {
        let h = HilbertEffects::new(3);
        let mut s = sampler(3, 5);
        for _ in 0..50 {
            let p = s.projection();
            assert!(h.is_sharp(&p));
            let a = s.invertible_effect(0.2);
            let a = MatrixEffect::with_tolerance(a.matrix().scale(0.9), 1e-9).unwrap();
            assert!(!h.is_sharp(&a));
        }
    }

    #[test]
    fn density_operators() {
        let w = DensityOperator::diag(&[0.5, 0.5]).unwrap();
        assert!(w.faithful);
        let pure = DensityOperator::diag(&[1.0, 0.0]).unwrap();
        assert!(!pure.faithful);
        assert!(pure.require_faithful().is_err());
        assert!(DensityOperator::diag(&[0.5, 0.6]).is_err());
    }

    #[test]
    fn suites_pass_small() {
        for dim in [2, 3] {
            let mut s = sampler(dim, 9);
            let triples: Vec<_> = (0..60).map(|_| s.triple()).collect();
            let r = check_sea_axioms_sampled(&HilbertEffects::new(dim), &triples);
            assert!(r.passed(), "{}", r.checks.render());
            assert!(check_characterization(&mut s, 60, 1e-9).passed());
            let r = check_sequential_order(&mut s, 60, 1e-8);
            assert!(r.passed(), "{}", r.render());
            let r = check_quotient_roundtrip(&mut s, 60, 1e-8);
            assert!(r.passed(), "{}", r.render());
        }
    }
}
