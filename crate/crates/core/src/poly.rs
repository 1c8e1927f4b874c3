//! Polynomials on `[0,1]` with values in `[0,1]`, under pointwise sum and
//! product. The system satisfies Condition (2) of a sequential order but not
//! Condition (1): `f = x/2 ≤ g = (1+x)/2` and the only pointwise solution of
//! `f = g∘h` is `h = x/(x+1)`, which is not a polynomial.

use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::algebra::{EffectAlgebra, PartialAlgebra, SequentialProduct, SharplyDominating};
use crate::fuzzy::{q, sample_unit, show_q, Q};
use crate::report::{Check, CheckSet};

/// Exact rational polynomial, coefficients from the constant term up, with
/// no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Q>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    /// `x`.
    pub fn x() -> Self {
        Self::new(vec![Q::zero(), Q::one()])
    }

    pub fn from_ratios(pairs: &[(i64, i64)]) -> Self {
        Self::new(pairs.iter().map(|&(n, d)| q(n, d)).collect())
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `deg 0 = 0`.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = Q::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, s: &Q) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Q::from_integer((i as i64).into()))
                .collect(),
        )
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.coeffs.clone();
        let dl = d.lead();
        let dd = d.degree();
        let mut quot = vec![Q::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = r.last().expect("nonempty") / &dl;
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= &c * dc;
            }
            quot[k] = c;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (Self::new(quot), Self::new(r))
    }

    /// Exact quotient `self / d`, if `d` divides `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (quot, r) = self.div_rem(d);
        r.is_zero().then_some(quot)
    }

    fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&(Q::one() / self.lead()))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p′)`: same roots, all simple.
    pub fn square_free(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            self.monic()
        } else {
            self.exact_div(&g).expect("gcd divides").monic()
        }
    }

    fn sturm_chain(&self) -> Vec<Self> {
        let mut chain = vec![self.clone(), self.derivative()];
        while !chain.last().expect("nonempty").is_zero() {
            let n = chain.len();
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            chain.push(r.neg());
        }
        chain.pop();
        chain
    }

    /// Distinct real roots in `(a, b]`.
    fn roots_in(chain: &[Self], a: &Q, b: &Q) -> usize {
        let changes = |x: &Q| {
            let signs: Vec<bool> = chain
                .iter()
                .map(|p| p.eval(x))
                .filter(|v| !v.is_zero())
                .map(|v| v.is_positive())
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        changes(a) - changes(b)
    }

    /// Decides `p(x) ≥ 0` for all `x ∈ [0,1]` exactly.
    pub fn nonnegative_on_unit(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        // strip roots at the endpoints; the cofactors x and 1 − x are positive inside
        let mut p = self.clone();
        let x = Poly::x();
        let one_minus_x = Poly::from_ratios(&[(1, 1), (-1, 1)]);
        while p.eval(&Q::zero()).is_zero() {
            p = p.exact_div(&x).expect("root at 0");
        }
        while p.eval(&Q::one()).is_zero() {
            p = p.exact_div(&one_minus_x).expect("root at 1");
        }
        let sq = p.square_free();
        if sq.degree() == 0 {
            return p.eval(&q(1, 2)).is_positive();
        }
        let chain = sq.sturm_chain();
        let mut probes = vec![Q::zero(), Q::one()];
        let mut stack = vec![(Q::zero(), Q::one())];
        while let Some((a, b)) = stack.pop() {
            if Self::roots_in(&chain, &a, &b) <= 1 {
                continue;
            }
            let mid = split_point(&sq, &a, &b);
            probes.push(mid.clone());
            stack.push((a, mid.clone()));
            stack.push((mid, b));
        }
        // every sign region of p meets a probe, and no probe is a root
        probes.iter().all(|t| !p.eval(t).is_negative())
    }
}

/// A point strictly inside `(a, b)` that is not a root of `p`.
fn split_point(p: &Poly, a: &Q, b: &Q) -> Q {
    let width = b - a;
    std::iter::once(q(1, 2))
        .chain((1..).map(|k: i64| q(k, 2 * k + 1)))
        .map(|t| a + &width * t)
        .find(|t| !p.eval(t).is_zero())
        .expect("finitely many roots")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => show_q(c),
                1 => format!("{}x", show_q(c)),
                i => format!("{}x^{i}", show_q(c)),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Polynomials `p` with `0 ≤ p ≤ 1` on `[0,1]`. The only sharp elements are
/// the constants `0` and `1`, so `p̂ = 1` for every `p ≠ 0`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PolynomialSea;

impl PolynomialSea {
    pub fn contains(&self, p: &Poly) -> bool {
        p.nonnegative_on_unit() && Poly::constant(Q::one()).sub(p).nonnegative_on_unit()
    }

    /// A random member: Bernstein coefficients in `[0,1]`, degree at most
    /// `max_degree`.
    pub fn sample(&self, rng: &mut impl Rng, max_degree: usize) -> Poly {
        let d = rng.gen_range(0..=max_degree);
        let b: Vec<Q> = (0..=d).map(|_| sample_unit(rng)).collect();
        bernstein(&b)
    }

    /// `Some(c)` with `a = b∘c`, when such a polynomial exists.
    pub fn factor(&self, a: &Poly, b: &Poly) -> Option<Poly> {
        if a.is_zero() {
            return Some(Poly::zero());
        }
        if b.is_zero() {
            return None;
        }
        a.exact_div(b).filter(|c| self.contains(c))
    }
}

/// `Σ b_k C(d,k) x^k (1−x)^{d−k}`.
pub fn bernstein(b: &[Q]) -> Poly {
    let d = b.len().saturating_sub(1);
    let x = Poly::x();
    let one_minus_x = Poly::from_ratios(&[(1, 1), (-1, 1)]);
    let pow = |p: &Poly, k: usize| (0..k).fold(Poly::constant(Q::one()), |acc, _| acc.mul(p));
    let mut out = Poly::zero();
    let mut binom = Q::one();
    for (k, bk) in b.iter().enumerate() {
        out = out.add(&pow(&x, k).mul(&pow(&one_minus_x, d - k)).scale(&(bk * &binom)));
        binom = binom * Q::from_integer(((d - k) as i64).into()) / Q::from_integer(((k + 1) as i64).into());
    }
    out
}

impl PartialAlgebra for PolynomialSea {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Poly::zero()
    }

    fn one(&self) -> Poly {
        Poly::constant(Q::one())
    }

    fn sum(&self, a: &Poly, b: &Poly) -> Option<Poly> {
        let s = a.add(b);
        Poly::constant(Q::one()).sub(&s).nonnegative_on_unit().then_some(s)
    }

    fn same(&self, a: &Poly, b: &Poly) -> bool {
        a == b
    }

    fn show(&self, a: &Poly) -> String {
        a.to_string()
    }
}

impl EffectAlgebra for PolynomialSea {
    fn complement(&self, a: &Poly) -> Poly {
        Poly::constant(Q::one()).sub(a)
    }

    fn leq(&self, a: &Poly, b: &Poly) -> bool {
        b.sub(a).nonnegative_on_unit()
    }
}

impl SequentialProduct for PolynomialSea {
    fn product(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul(b)
    }
}

impl SharplyDominating for PolynomialSea {
    fn hat(&self, a: &Poly) -> Poly {
        if a.is_zero() {
            Poly::zero()
        } else {
            Poly::constant(Q::one())
        }
    }
}

/// Lagrange interpolation through `(x_i, y_i)`.
pub fn interpolate(points: &[(Q, Q)]) -> Poly {
    let mut out = Poly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = Poly::constant(Q::one());
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                let factor = Poly::new(vec![-xj.clone(), Q::one()]).scale(&(Q::one() / (xi - xj)));
                basis = basis.mul(&factor);
            }
        }
        out = out.add(&basis.scale(yi));
    }
    out
}

/// `h(x) = x/(x+1)`.
pub fn h_ratio(x: &Q) -> Q {
    x / (x + Q::one())
}

/// The polynomial counterexample to Condition (1), with interpolation
/// evidence that `x/(x+1)` is not a polynomial of degree `≤ max_degree`:
/// the degree-`d` interpolant through `x = i/d` misses `h` at `1/(2d)`.
pub fn polynomial_counterexample(max_degree: usize) -> CheckSet {
    let sea = PolynomialSea;
    let f = Poly::from_ratios(&[(0, 1), (1, 2)]);
    let g = Poly::from_ratios(&[(1, 2), (1, 2)]);
    let mut set = CheckSet::new(
        "polynomial counterexample",
        format!("64-point grid, interpolation degrees 0..={max_degree}"),
    );

    let mut grid = Check::new("f ≤ g on grid");
    for k in 0..64 {
        let x = q(k, 63);
        let (fx, gx) = (f.eval(&x), g.eval(&x));
        grid.record(fx <= gx, || format!("x={}: f={} > g={}", show_q(&x), show_q(&fx), show_q(&gx)));
    }
    set.push(grid);

    let mut exact = Check::new("f ≤ g exactly");
    exact.record(sea.leq(&f, &g), || "g − f is negative somewhere on [0,1]".into());
    set.push(exact);

    let mut solution = Check::new("h = x/(x+1) solves f = g·h");
    for k in 0..64 {
        let x = q(k, 63);
        let ok = g.eval(&x) * h_ratio(&x) == f.eval(&x);
        solution.record(ok, || format!("x={}", show_q(&x)));
    }
    solution.record(h_ratio(&Q::one()) == q(1, 2), || "h(1) ≠ 1/2".into());
    set.push(solution);

    for d in 0..=max_degree {
        let nodes: Vec<Q> = if d == 0 { vec![Q::zero()] } else { (0..=d).map(|i| q(i as i64, d as i64)).collect() };
        let held_out = if d == 0 { q(1, 2) } else { q(1, 2 * d as i64) };
        let p = interpolate(&nodes.iter().map(|x| (x.clone(), h_ratio(x))).collect::<Vec<_>>());
        let (pv, hv) = (p.eval(&held_out), h_ratio(&held_out));
        let mut c = Check::new(format!("degree {d} interpolant misses h"));
        c.record(pv != hv, || format!("interpolant {p} matches h at {}", show_q(&held_out)));
        c.note = Some(format!("at x={}: interpolant {}, h {}", show_q(&held_out), show_q(&pv), show_q(&hv)));
        set.push(c);
    }

    let mut cond1 = Check::new("no polynomial c with f = g∘c");
    cond1.record(sea.factor(&f, &g).is_none(), || "g divides f".into());
    set.push(cond1);
    set
}
