//! Full fuzzy set systems `[0,1]^X` on a finite `X`, in exact rational
//! arithmetic. The scalar unit interval is the case `|X| = 1`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use thiserror::Error;

use crate::algebra::{EffectAlgebra, PartialAlgebra, SequentialProduct, SharplyDominating};
use crate::report::{Check, CheckSet};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

fn in_unit(v: &Q) -> bool {
    !v.is_negative() && *v <= Q::one()
}

/// Renders `p/q`, or just `p` for integers.
pub fn show_q(v: &Q) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FuzzyError {
    #[error("base sets differ: {left} vs {right} points")]
    BaseMismatch { left: usize, right: usize },
    #[error("value {value} at `{point}` is outside [0,1]")]
    OutOfRange { point: String, value: String },
    #[error("f ≰ g at `{point}`")]
    NotBelow { point: String },
    #[error("cannot parse `{0}`: expected `x=p/q` pairs")]
    Syntax(String),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("point `{0}` given twice")]
    DuplicatePoint(String),
}

/// A function `X → [0,1]`, stored as its values in base-set order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FuzzyElement {
    values: Vec<Q>,
}

impl FuzzyElement {
    pub fn new(values: Vec<Q>) -> Result<Self, FuzzyError> {
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !in_unit(v)) {
            return Err(FuzzyError::OutOfRange {
                point: format!("#{i}"),
                value: show_q(v),
            });
        }
        Ok(Self { values })
    }

    pub fn constant(len: usize, v: Q) -> Self {
        assert!(in_unit(&v));
        Self { values: vec![v; len] }
    }

    /// From `(numerator, denominator)` pairs.
    pub fn ratios(pairs: &[(i64, i64)]) -> Self {
        Self::new(pairs.iter().map(|&(n, d)| q(n, d)).collect()).expect("values in [0,1]")
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_characteristic(&self) -> bool {
        self.values.iter().all(|v| v.is_zero() || v.is_one())
    }

    pub fn leq(&self, other: &Self) -> bool {
        self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for FuzzyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(show_q).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A rational in `[0,1]`: the one-point fuzzy set system.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitScalar(Q);

impl UnitScalar {
    pub fn new(v: Q) -> Result<Self, FuzzyError> {
        if in_unit(&v) {
            Ok(Self(v))
        } else {
            Err(FuzzyError::OutOfRange {
                point: "scalar".into(),
                value: show_q(&v),
            })
        }
    }

    pub fn value(&self) -> &Q {
        &self.0
    }

    pub fn to_element(&self) -> FuzzyElement {
        FuzzyElement { values: vec![self.0.clone()] }
    }
}

fn check_base(f: &FuzzyElement, g: &FuzzyElement) -> Result<(), FuzzyError> {
    if f.len() == g.len() {
        Ok(())
    } else {
        Err(FuzzyError::BaseMismatch {
            left: f.len(),
            right: g.len(),
        })
    }
}

/// `(fg)(x) = f(x) g(x)`.
pub fn fuzzy_product(f: &FuzzyElement, g: &FuzzyElement) -> Result<FuzzyElement, FuzzyError> {
    check_base(f, g)?;
    Ok(FuzzyElement {
        values: f.values.iter().zip(&g.values).map(|(a, b)| a * b).collect(),
    })
}

/// The characteristic function of `supp(f)`.
pub fn fuzzy_hat(f: &FuzzyElement) -> FuzzyElement {
    FuzzyElement {
        values: f
            .values
            .iter()
            .map(|v| if v.is_zero() { Q::zero() } else { Q::one() })
            .collect(),
    }
}

/// `f/g`: `f(x)/g(x)` on `supp(g)`, zero elsewhere.
pub fn fuzzy_quotient(f: &FuzzyElement, g: &FuzzyElement) -> Result<FuzzyElement, FuzzyError> {
    check_base(f, g)?;
    let mut values = Vec::with_capacity(f.len());
    for (i, (a, b)) in f.values.iter().zip(&g.values).enumerate() {
        if a > b {
            return Err(FuzzyError::NotBelow { point: format!("#{i}") });
        }
        values.push(if b.is_zero() { Q::zero() } else { a / b });
    }
    Ok(FuzzyElement { values })
}

const POINT_NAMES: &[&str] = &["p", "q", "r", "s", "t", "u", "v", "w"];

/// `[0,1]^X` with pointwise `⊕` and product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzySystem {
    points: Vec<String>,
}

impl FuzzySystem {
    pub fn new(points: Vec<String>) -> Self {
        assert!(!points.is_empty(), "base set must be nonempty");
        Self { points }
    }

    /// `[0,1]` itself.
    pub fn unit_interval() -> Self {
        Self::new(vec!["x".into()])
    }

    /// `[0,1]^X` with `X = {p, q, r, …}`.
    pub fn with_points(k: usize) -> Self {
        Self::new(
            (0..k)
                .map(|i| POINT_NAMES.get(i).map_or_else(|| format!("x{i}"), |s| s.to_string()))
                .collect(),
        )
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn element(&self, values: Vec<Q>) -> Result<FuzzyElement, FuzzyError> {
        if values.len() != self.len() {
            return Err(FuzzyError::BaseMismatch {
                left: self.len(),
                right: values.len(),
            });
        }
        FuzzyElement::new(values).map_err(|e| match e {
            FuzzyError::OutOfRange { point, value } => {
                let i: usize = point.trim_start_matches('#').parse().unwrap_or(0);
                FuzzyError::OutOfRange {
                    point: self.points[i].clone(),
                    value,
                }
            }
            e => e,
        })
    }

    /// The sharp marker `f_j`: the characteristic function of `{j}`.
    pub fn marker(&self, j: usize) -> FuzzyElement {
        FuzzyElement {
            values: (0..self.len()).map(|i| if i == j { Q::one() } else { Q::zero() }).collect(),
        }
    }

    /// Parses `p=1/2,q=0` (commas or whitespace); unmentioned points are 0.
    pub fn parse_element(&self, text: &str) -> Result<FuzzyElement, FuzzyError> {
        let mut values = vec![None; self.len()];
        for (name, v) in parse_pairs(text)? {
            let i = self
                .points
                .iter()
                .position(|p| *p == name)
                .ok_or_else(|| FuzzyError::UnknownPoint(name.clone()))?;
            if values[i].is_some() {
                return Err(FuzzyError::DuplicatePoint(name));
            }
            values[i] = Some(v);
        }
        self.element(values.into_iter().map(|v| v.unwrap_or_else(Q::zero)).collect())
    }

    /// Inverse of [`parse_element`](Self::parse_element).
    pub fn format_element(&self, f: &FuzzyElement) -> String {
        self.points
            .iter()
            .zip(&f.values)
            .map(|(p, v)| format!("{p}={}", show_q(v)))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// A random element with denominators at most 64. About a quarter of
    /// the coordinates are exactly 0 or 1 so supports vary.
    pub fn sample(&self, rng: &mut impl Rng) -> FuzzyElement {
        FuzzyElement {
            values: (0..self.len()).map(|_| sample_unit(rng)).collect(),
        }
    }

    /// `(a, b, c)` where `c ⊥ b` a third of the time.
    pub fn sample_triple(&self, rng: &mut impl Rng) -> (FuzzyElement, FuzzyElement, FuzzyElement) {
        let a = self.sample(rng);
        let b = self.sample(rng);
        let c = if rng.gen_ratio(1, 3) {
            let t = sample_unit(rng);
            FuzzyElement {
                values: b.values.iter().map(|v| (Q::one() - v) * &t).collect(),
            }
        } else {
            self.sample(rng)
        };
        (a, b, c)
    }
}

pub fn sample_unit(rng: &mut impl Rng) -> Q {
    match rng.gen_range(0..20) {
        0..=2 => Q::zero(),
        3..=4 => Q::one(),
        _ => {
            let d: i64 = rng.gen_range(1..=64);
            q(rng.gen_range(0..=d), d)
        }
    }
}

/// Parses `x=p/q` pairs separated by commas or whitespace.
pub fn parse_pairs(text: &str) -> Result<Vec<(String, Q)>, FuzzyError> {
    let syntax = || FuzzyError::Syntax(text.to_string());
    let mut out = Vec::new();
    for item in text.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()) {
        let (name, value) = item.split_once('=').ok_or_else(syntax)?;
        let name = name.trim();
        if name.is_empty() {
            return Err(syntax());
        }
        let v = match value.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| syntax())?;
                let d: BigInt = d.trim().parse().map_err(|_| syntax())?;
                if d.is_zero() {
                    return Err(syntax());
                }
                Q::new(n, d)
            }
            None => Q::from_integer(value.trim().parse().map_err(|_| syntax())?),
        };
        out.push((name.to_string(), v));
    }
    Ok(out)
}

impl PartialAlgebra for FuzzySystem {
    type Elem = FuzzyElement;

    fn zero(&self) -> FuzzyElement {
        FuzzyElement::constant(self.len(), Q::zero())
    }

    fn one(&self) -> FuzzyElement {
        FuzzyElement::constant(self.len(), Q::one())
    }

    fn sum(&self, a: &FuzzyElement, b: &FuzzyElement) -> Option<FuzzyElement> {
        let values: Vec<Q> = a.values.iter().zip(&b.values).map(|(x, y)| x + y).collect();
        values.iter().all(|v| *v <= Q::one()).then_some(FuzzyElement { values })
    }

    fn same(&self, a: &FuzzyElement, b: &FuzzyElement) -> bool {
        a == b
    }

    fn show(&self, a: &FuzzyElement) -> String {
        if self.len() == 1 {
            show_q(&a.values[0])
        } else {
            a.to_string()
        }
    }
}

impl EffectAlgebra for FuzzySystem {
    fn complement(&self, a: &FuzzyElement) -> FuzzyElement {
        FuzzyElement {
            values: a.values.iter().map(|v| Q::one() - v).collect(),
        }
    }

    fn leq(&self, a: &FuzzyElement, b: &FuzzyElement) -> bool {
        a.leq(b)
    }
}

impl SequentialProduct for FuzzySystem {
    fn product(&self, a: &FuzzyElement, b: &FuzzyElement) -> FuzzyElement {
        fuzzy_product(a, b).expect("same base set")
    }
}

impl SharplyDominating for FuzzySystem {
    fn hat(&self, a: &FuzzyElement) -> FuzzyElement {
        fuzzy_hat(a)
    }
}

/// Checks a candidate product on `[0,1]` against the values forced by
/// additivity and the unit law: `1 = n·(1/n)` gives `a∘(1/n) = a/n`, hence
/// `a∘(m/n) = ma/n`.
pub fn rational_uniqueness_probe(t: impl Fn(&Q, &Q) -> Q, n_max: u32, samples: &[Q]) -> CheckSet {
    let mut set = CheckSet::new("rational uniqueness probe", format!("m ≤ n ≤ {n_max}, {} values of a", samples.len()));
    let mut check = Check::new("a∘(m/n) = ma/n");
    for a in samples {
        for n in 1..=n_max as i64 {
            for m in 1..=n {
                let r = q(m, n);
                let got = t(a, &r);
                let forced = a * &r;
                check.record(got == forced, || {
                    format!("a={}, b={}: candidate gives {}, forced value {}", show_q(a), show_q(&r), show_q(&got), show_q(&forced))
                });
            }
        }
    }
    set.push(check);
    set
}

/// Default values of `a` for the probe.
pub fn probe_samples() -> Vec<Q> {
    vec![q(1, 2), q(0, 1), q(1, 1), q(1, 3), q(2, 3), q(3, 7), q(5, 64)]
}

/// The finite skeleton of uniqueness on `[0,1]^X`: a candidate product must
/// split along the markers `f_j` (`f∘g = ⊕_j f∘(g f_j)` with `f∘(g f_j)`
/// supported on `j`), and on each coordinate it must pass the scalar probe.
pub fn coordinatewise_uniqueness_probe(
    sys: &FuzzySystem,
    t: impl Fn(&FuzzyElement, &FuzzyElement) -> FuzzyElement,
    n_max: u32,
    samples: &[(FuzzyElement, FuzzyElement)],
) -> CheckSet {
    let mut set = CheckSet::new(
        "coordinatewise uniqueness probe",
        format!("|X|={}, m ≤ n ≤ {n_max}, {} sampled pairs (finite X only)", sys.len(), samples.len()),
    );
    let mut split = Check::new("splits along markers");
    for (f, g) in samples {
        let whole = t(f, g);
        let mut acc = Some(sys.zero());
        for j in 0..sys.len() {
            let part = t(f, &fuzzy_product(g, &sys.marker(j)).expect("same base"));
            let supported = part.values.iter().enumerate().all(|(i, v)| i == j || v.is_zero());
            if !supported {
                acc = None;
                break;
            }
            acc = acc.and_then(|s| sys.sum(&s, &part));
        }
        split.record(acc.as_ref() == Some(&whole), || format!("f={f}, g={g}: f∘g={whole}"));
    }
    set.push(split);

    for j in 0..sys.len() {
        let marker = sys.marker(j);
        let scalar = |a: &Q, b: &Q| {
            let fa = FuzzyElement {
                values: marker.values.iter().map(|m| m * a).collect(),
            };
            let fb = FuzzyElement {
                values: marker.values.iter().map(|m| m * b).collect(),
            };
            t(&fa, &fb).values[j].clone()
        };
        let sub = rational_uniqueness_probe(scalar, n_max, &probe_samples());
        let mut c = sub.checks.into_iter().next().expect("one check");
        c.name = format!("coordinate {}: a∘(m/n) = ma/n", sys.points[j]);
        set.push(c);
    }
    set
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::check_sea_axioms_sampled;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn products() {
        let f = FuzzyElement::ratios(&[(1, 2), (1, 3)]);
        let g = FuzzyElement::ratios(&[(1, 2), (3, 4)]);
        assert_eq!(fuzzy_product(&f, &g).unwrap(), FuzzyElement::ratios(&[(1, 4), (1, 4)]));
        let one = FuzzyElement::constant(2, Q::one());
        assert_eq!(fuzzy_product(&one, &g).unwrap(), g);
        let h = FuzzyElement::ratios(&[(1, 2)]);
        assert_eq!(fuzzy_product(&h, &h).unwrap(), FuzzyElement::ratios(&[(1, 4)]));
        assert!(matches!(fuzzy_product(&f, &h), Err(FuzzyError::BaseMismatch { .. })));
    }

    #[test]
    fn hats() {
        assert_eq!(
            fuzzy_hat(&FuzzyElement::ratios(&[(1, 2), (0, 1)])),
            FuzzyElement::ratios(&[(1, 1), (0, 1)])
        );
        let chi = FuzzyElement::ratios(&[(1, 1), (0, 1), (1, 1)]);
        assert_eq!(fuzzy_hat(&chi), chi);
        let zero = FuzzyElement::constant(2, Q::zero());
        assert_eq!(fuzzy_hat(&zero), zero);
    }

    #[test]
    fn quotients() {
        let g = FuzzyElement::ratios(&[(1, 2), (0, 1)]);
        assert_eq!(fuzzy_quotient(&g, &g).unwrap(), fuzzy_hat(&g));
        assert_eq!(
            fuzzy_quotient(&FuzzyElement::ratios(&[(1, 4)]), &FuzzyElement::ratios(&[(1, 2)])).unwrap(),
            FuzzyElement::ratios(&[(1, 2)])
        );
        let zero = FuzzyElement::constant(2, Q::zero());
        assert_eq!(fuzzy_quotient(&zero, &g).unwrap(), zero);
        assert!(matches!(
            fuzzy_quotient(&FuzzyElement::ratios(&[(1, 1), (0, 1)]), &g),
            Err(FuzzyError::NotBelow { .. })
        ));
    }

    #[test]
    fn probe_accepts_multiplication_and_rejects_min() {
        let mult = rational_uniqueness_probe(|a, b| a * b, 12, &probe_samples());
        assert!(mult.passed());
        let min = rational_uniqueness_probe(|a, b| a.min(b).clone(), 12, &probe_samples());
        let w = min.checks[0].witness.as_deref().unwrap();
        assert!(w.starts_with("a=1/2, b=1/2"), "{w}");
        let zero_row = rational_uniqueness_probe(|a, b| a * b, 6, &[Q::zero()]);
        assert!(zero_row.passed());
    }

    #[test]
    fn coordinatewise_probe() {
        let sys = FuzzySystem::with_points(3);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pairs: Vec<_> = (0..50).map(|_| (sys.sample(&mut rng), sys.sample(&mut rng))).collect();
        let ok = coordinatewise_uniqueness_probe(&sys, |f, g| fuzzy_product(f, g).unwrap(), 8, &pairs);
        assert!(ok.passed(), "{}", ok.render());
        let min = |f: &FuzzyElement, g: &FuzzyElement| FuzzyElement {
            values: f.values().iter().zip(g.values()).map(|(a, b)| a.min(b).clone()).collect(),
        };
        assert!(!coordinatewise_uniqueness_probe(&sys, min, 8, &pairs).passed());
    }

    #[test]
    fn parse_and_format() {
        let sys = FuzzySystem::with_points(2);
        let f = sys.parse_element("p=1/2, q=1/3").unwrap();
        assert_eq!(f, FuzzyElement::ratios(&[(1, 2), (1, 3)]));
        assert_eq!(sys.format_element(&f), "p=1/2,q=1/3");
        assert_eq!(sys.parse_element(&sys.format_element(&f)).unwrap(), f);
        assert_eq!(sys.parse_element("q=1").unwrap(), FuzzyElement::ratios(&[(0, 1), (1, 1)]));
        assert!(matches!(sys.parse_element("z=1"), Err(FuzzyError::UnknownPoint(_))));
        assert!(matches!(sys.parse_element("p=3/2"), Err(FuzzyError::OutOfRange { .. })));
        assert!(matches!(sys.parse_element("p"), Err(FuzzyError::Syntax(_))));
        assert!(matches!(sys.parse_element("p=1,p=0"), Err(FuzzyError::DuplicatePoint(_))));
    }

    #[test]
    fn sampled_sea_axioms() {
        let sys = FuzzySystem::with_points(4);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let triples: Vec<_> = (0..300).map(|_| sys.sample_triple(&mut rng)).collect();
        let r = check_sea_axioms_sampled(&sys, &triples);
        assert!(r.passed(), "{}", r.checks.render());
        assert_eq!(r.commutative_shortcut, Some(true));
    }
}
