//! Exact arithmetic in the real cyclotomic field K = Q(2cos(π/L)).
//!
//! All root coordinates and bilinear-form values live in a single field per
//! graph: L is the lcm of the finite off-diagonal labels (L = 1 when there
//! are none) and elements are stored in the power basis 1, θ, ..., θ^{d−1}
//! of θ = 2cos(π/L) with arbitrary-precision rational coordinates. Equality
//! is coordinate-wise; the sign of a nonzero element is decided by
//! evaluating it on a rational interval enclosure of θ and doubling the
//! enclosure precision until the interval excludes zero.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{EngineError, Result};
use crate::graph::{CoxeterGraph, Label};

/// The field Q(2cos(π/L)), shared by all elements built for one graph.
pub struct FieldSpec {
    l: u64,
    /// Monic minimal polynomial of θ = 2cos(π/L), low-degree first.
    minpoly: Vec<BigInt>,
    degree: usize,
    /// θ^{d+k} rewritten in the power basis, for k = 0 .. d−2.
    reduction: Vec<Vec<BigRational>>,
    /// Cached rational enclosure of θ: (precision bits, (lo, hi)).
    enclosure: Mutex<Option<(u32, (BigRational, BigRational))>>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("l", &self.l)
            .field("minpoly", &self.minpoly)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.l == other.l
    }
}
impl Eq for FieldSpec {}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut out = BigInt::one();
    for i in 0..k {
        out = out * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    out
}

fn euler_phi(mut n: u64) -> u64 {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            out.push(i);
            if i != n / i {
                out.push(n / i);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

/// Exact division of integer polynomials, panicking on a nonzero remainder.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd].clone();
        if !c.is_zero() {
            quot[k] = c.clone();
            for (i, d) in den.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
        }
    }
    assert!(
        rem.iter().all(Zero::is_zero),
        "polynomial division not exact"
    );
    quot
}

/// The n-th cyclotomic polynomial, via Φ_n = (x^n − 1) / Π_{d|n, d<n} Φ_d.
fn cyclotomic(n: u64) -> Vec<BigInt> {
    assert!(n >= 1);
    if n == 1 {
        return vec![-BigInt::one(), BigInt::one()];
    }
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d == n {
            continue;
        }
        num = poly_div_exact(&num, &cyclotomic(d));
    }
    num
}

/// Given a palindromic polynomial P of even degree 2d, return the Q with
/// P(z) = z^d Q(z + 1/z).
fn descend_palindromic(p: &[BigInt]) -> Vec<BigInt> {
    let two_d = p.len() - 1;
    assert!(two_d.is_multiple_of(2), "expected even degree");
    let d = two_d / 2;
    let mut rem = p.to_vec();
    let mut q = vec![BigInt::zero(); d + 1];
    for j in (0..=d).rev() {
        let c = rem[d + j].clone();
        if !c.is_zero() {
            q[j] = c.clone();
            // subtract c · z^{d−j} (z² + 1)^j
            for k in 0..=j {
                rem[d - j + 2 * k] -= &c * binomial(j, k);
            }
        }
    }
    assert!(
        rem.iter().all(Zero::is_zero),
        "polynomial is not palindromic"
    );
    q
}

/// Partial sums of the alternating arctan(1/x) series, as a rigorous interval.
fn atan_inv_interval(x: u64, bits: u32) -> (BigRational, BigRational) {
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut xpow = BigInt::from(x);
    let threshold = BigRational::new(BigInt::one(), BigInt::one() << bits);
    let mut sum = BigRational::zero();
    let mut k: u64 = 0;
    loop {
        let term = BigRational::new(BigInt::one(), BigInt::from(2 * k + 1) * &xpow);
        if term < threshold {
            return (&sum - &term, &sum + &term);
        }
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        xpow *= &x2;
        k += 1;
    }
}

/// Machin's formula: π = 16 arctan(1/5) − 4 arctan(1/239).
fn pi_interval(bits: u32) -> (BigRational, BigRational) {
    let (a_lo, a_hi) = atan_inv_interval(5, bits + 6);
    let (b_lo, b_hi) = atan_inv_interval(239, bits + 6);
    let sixteen = BigRational::from(BigInt::from(16));
    let four = BigRational::from(BigInt::from(4));
    (
        &sixteen * &a_lo - &four * &b_hi,
        &sixteen * &a_hi - &four * &b_lo,
    )
}

/// Outward rounding to denominator 2^bits, keeping endpoint sizes bounded so
/// downstream interval arithmetic stays cheap.
fn dyadic_floor(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let scaled = (x * BigRational::from(scale.clone())).floor();
    BigRational::new(scaled.to_integer(), scale)
}

fn dyadic_ceil(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let scaled = (x * BigRational::from(scale.clone())).ceil();
    BigRational::new(scaled.to_integer(), scale)
}

/// Taylor bounds for cos at a rational point, valid for |y| < 2; uses the
/// Lagrange remainder |R_N| ≤ y^{2N+2}/(2N+2)!.
fn cos_point_interval(y: &BigRational, bits: u32) -> (BigRational, BigRational) {
    let y2 = y * y;
    let threshold = BigRational::new(BigInt::one(), BigInt::one() << bits);
    let mut sum = BigRational::one();
    let mut term = BigRational::one();
    let mut j: u64 = 0;
    loop {
        term = &term * &y2 / BigRational::from(BigInt::from((2 * j + 1) * (2 * j + 2)));
        j += 1;
        if term < threshold {
            return (&sum - &term, &sum + &term);
        }
        if j.is_multiple_of(2) {
            sum += &term;
        } else {
            sum -= &term;
        }
    }
}

impl FieldSpec {
    /// The field attached to a graph: L = lcm of the finite off-diagonal
    /// labels, L = 1 when there are none.
    pub fn for_graph(graph: &CoxeterGraph) -> Arc<FieldSpec> {
        let mut l: u64 = 1;
        for m in graph.finite_labels() {
            l = l.lcm(&(m as u64));
        }
        FieldSpec::with_l(l)
    }

    /// The field Q(2cos(π/L)) for a given L.
    pub fn with_l(l: u64) -> Arc<FieldSpec> {
        assert!(l >= 1);
        let minpoly = if l == 1 {
            // θ = 2cos(π) = −2
            vec![BigInt::from(2), BigInt::one()]
        } else {
            descend_palindromic(&cyclotomic(2 * l))
        };
        let degree = minpoly.len() - 1;
        if l >= 2 {
            debug_assert_eq!(degree as u64, euler_phi(2 * l) / 2);
        }
        // θ^{d+k} in the power basis: row 0 is θ^d = −(c_0 + ... + c_{d−1}θ^{d−1}).
        let mut reduction: Vec<Vec<BigRational>> = Vec::new();
        if degree >= 1 {
            let base: Vec<BigRational> = minpoly[..degree]
                .iter()
                .map(|c| BigRational::from(-c.clone()))
                .collect();
            reduction.push(base);
            for k in 1..degree.saturating_sub(1) {
                let prev = reduction[k - 1].clone();
                let mut next = vec![BigRational::zero(); degree];
                next[1..].clone_from_slice(&prev[..degree - 1]);
                let top = prev[degree - 1].clone();
                if !top.is_zero() {
                    for i in 0..degree {
                        next[i] += &top * &reduction[0][i];
                    }
                }
                reduction.push(next);
            }
        }
        Arc::new(FieldSpec {
            l,
            minpoly,
            degree,
            reduction,
            enclosure: Mutex::new(None),
        })
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn minpoly(&self) -> &[BigInt] {
        &self.minpoly
    }

    /// θ as a floating-point number, for display and numeric cross-checks.
    pub fn theta_f64(&self) -> f64 {
        2.0 * (std::f64::consts::PI / self.l as f64).cos()
    }

    /// A rational interval containing θ with width below 2^−bits.
    pub fn theta_enclosure(&self, bits: u32) -> (BigRational, BigRational) {
        if self.degree == 1 {
            let theta = BigRational::from(-self.minpoly[0].clone());
            return (theta.clone(), theta);
        }
        {
            let cached = self.enclosure.lock().unwrap();
            if let Some((have, interval)) = cached.as_ref() {
                if *have >= bits {
                    return interval.clone();
                }
            }
        }
        let (pi_lo, pi_hi) = pi_interval(bits + 6);
        let l = BigRational::from(BigInt::from(self.l));
        // Snap the cos arguments (and later the result) to dyadics so the
        // enclosure endpoints stay small.
        let y_lo = dyadic_floor(&(&pi_lo / &l), bits + 8);
        let y_hi = dyadic_ceil(&(&pi_hi / &l), bits + 8);
        debug_assert!(y_lo.is_positive());
        // cos is decreasing on [0, π/2] ⊇ [y_lo, y_hi] for L ≥ 2.
        let (lo, _) = cos_point_interval(&y_hi, bits + 6);
        let (_, hi) = cos_point_interval(&y_lo, bits + 6);
        let two = BigRational::from(BigInt::from(2));
        let interval = (
            dyadic_floor(&(&two * &lo), bits + 2),
            dyadic_ceil(&(&two * &hi), bits + 2),
        );
        let mut cached = self.enclosure.lock().unwrap();
        *cached = Some((bits, interval.clone()));
        interval
    }
}

/// An element of K in the power basis of θ.
#[derive(Clone)]
pub struct FieldElement {
    coords: Vec<BigRational>,
    spec: Arc<FieldSpec>,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K[{}]{:?}", self.spec.l, self.coords)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        debug_assert_eq!(self.spec.l, other.spec.l, "mixed field specs");
        self.coords == other.coords
    }
}
impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

/// Structural (coordinate-lexicographic) order, used for canonical map keys.
/// This is not the order of the real embedding; use `sign` for that.
impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl FieldElement {
    pub fn zero(spec: &Arc<FieldSpec>) -> Self {
        FieldElement {
            coords: vec![BigRational::zero(); spec.degree],
            spec: spec.clone(),
        }
    }

    pub fn one(spec: &Arc<FieldSpec>) -> Self {
        FieldElement::from_int(spec, 1)
    }

    pub fn from_int(spec: &Arc<FieldSpec>, value: i64) -> Self {
        let mut coords = vec![BigRational::zero(); spec.degree];
        coords[0] = BigRational::from(BigInt::from(value));
        FieldElement {
            coords,
            spec: spec.clone(),
        }
    }

    pub fn from_rational(spec: &Arc<FieldSpec>, value: BigRational) -> Self {
        let mut coords = vec![BigRational::zero(); spec.degree];
        coords[0] = value;
        FieldElement {
            coords,
            spec: spec.clone(),
        }
    }

    /// The generator θ = 2cos(π/L) itself.
    pub fn theta(spec: &Arc<FieldSpec>) -> Self {
        if spec.degree == 1 {
            return FieldElement::from_rational(spec, BigRational::from(-spec.minpoly[0].clone()));
        }
        let mut coords = vec![BigRational::zero(); spec.degree];
        coords[1] = BigRational::one();
        FieldElement {
            coords,
            spec: spec.clone(),
        }
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Rational value if the element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    pub fn scale(&self, by: &BigRational) -> FieldElement {
        FieldElement {
            coords: self.coords.iter().map(|c| c * by).collect(),
            spec: self.spec.clone(),
        }
    }

    /// Exact sign in the real embedding: −1, 0, or +1.
    pub fn sign(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        if self.spec.degree == 1 || self.coords[1..].iter().all(Zero::is_zero) {
            return rational_sign(&self.coords[0]);
        }
        let mut bits: u32 = 64;
        loop {
            let theta = self.spec.theta_enclosure(bits);
            let (lo, hi) = interval_horner(&self.coords, &theta);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            bits *= 2;
            assert!(bits <= 1 << 20, "sign refinement exceeded precision cap");
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inverse(&self) -> FieldElement {
        assert!(!self.is_zero(), "inverse of zero field element");
        let d = self.spec.degree;
        if d == 1 {
            return FieldElement::from_rational(&self.spec, self.coords[0].recip());
        }
        // Solve M y = e_0 where column j of M holds the coordinates of x·θ^j.
        let mut cols = Vec::with_capacity(d);
        let mut v = self.clone();
        for _ in 0..d {
            cols.push(v.coords.clone());
            v = v.mul_theta();
        }
        let mut m = vec![vec![BigRational::zero(); d + 1]; d];
        for (j, col) in cols.iter().enumerate() {
            for i in 0..d {
                m[i][j] = col[i].clone();
            }
        }
        m[0][d] = BigRational::one();
        // Gauss-Jordan.
        for col in 0..d {
            let pivot = (col..d)
                .find(|&r| !m[r][col].is_zero())
                .expect("singular multiplication matrix");
            m.swap(col, pivot);
            let inv = m[col][col].recip();
            for x in m[col].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = m[col].clone();
            for (row, entries) in m.iter_mut().enumerate() {
                if row != col && !entries[col].is_zero() {
                    let factor = entries[col].clone();
                    for (entry, pivot) in entries.iter_mut().zip(&pivot_row) {
                        *entry -= &factor * pivot;
                    }
                }
            }
        }
        let coords = (0..d).map(|i| m[i][d].clone()).collect();
        let out = FieldElement {
            coords,
            spec: self.spec.clone(),
        };
        debug_assert!((&out * self) == FieldElement::one(&self.spec));
        out
    }

    fn mul_theta(&self) -> FieldElement {
        let d = self.spec.degree;
        let mut coords = vec![BigRational::zero(); d];
        coords[1..].clone_from_slice(&self.coords[..d - 1]);
        let top = &self.coords[d - 1];
        if !top.is_zero() {
            for (c, r) in coords.iter_mut().zip(&self.spec.reduction[0]) {
                *c += top * r;
            }
        }
        FieldElement {
            coords,
            spec: self.spec.clone(),
        }
    }

    /// Re-express this element inside a larger field; the target conductor
    /// must be a multiple of this element's.
    pub fn lift_to(&self, target: &Arc<FieldSpec>) -> Result<FieldElement> {
        if !target.l.is_multiple_of(self.spec.l) {
            return Err(EngineError::Precondition(format!(
                "cannot lift from conductor {} to {}",
                self.spec.l, target.l
            )));
        }
        let generator = two_cos_pi_over(target, Label::Finite(self.spec.l as u32))?;
        let mut acc = FieldElement::zero(target);
        for c in self.coords.iter().rev() {
            acc = &(&acc * &generator) + &FieldElement::from_rational(target, c.clone());
        }
        Ok(acc)
    }

    /// Floating-point value in the real embedding (for checks and display).
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let theta = self.spec.theta_f64();
        let mut acc = 0.0;
        for c in self.coords.iter().rev() {
            acc = acc * theta + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }
}

fn rational_sign(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn interval_mul(
    a: &(BigRational, BigRational),
    b: &(BigRational, BigRational),
) -> (BigRational, BigRational) {
    let products = [&a.0 * &b.0, &a.0 * &b.1, &a.1 * &b.0, &a.1 * &b.1];
    let lo = products.iter().min().unwrap().clone();
    let hi = products.iter().max().unwrap().clone();
    (lo, hi)
}

fn interval_horner(
    coords: &[BigRational],
    theta: &(BigRational, BigRational),
) -> (BigRational, BigRational) {
    let d = coords.len();
    let mut acc = (coords[d - 1].clone(), coords[d - 1].clone());
    for c in coords[..d - 1].iter().rev() {
        let prod = interval_mul(&acc, theta);
        acc = (&prod.0 + c, &prod.1 + c);
    }
    acc
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        debug_assert_eq!(self.spec.l, rhs.spec.l);
        FieldElement {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
            spec: self.spec.clone(),
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        debug_assert_eq!(self.spec.l, rhs.spec.l);
        FieldElement {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
            spec: self.spec.clone(),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            coords: self.coords.iter().map(|a| -a).collect(),
            spec: self.spec.clone(),
        }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        debug_assert_eq!(self.spec.l, rhs.spec.l);
        let d = self.spec.degree;
        if d == 1 {
            return FieldElement::from_rational(&self.spec, &self.coords[0] * &rhs.coords[0]);
        }
        let mut conv = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if !b.is_zero() {
                    conv[i + j] += a * b;
                }
            }
        }
        let mut coords: Vec<BigRational> = conv[..d].to_vec();
        for (overflow, row) in conv[d..].iter().zip(&self.spec.reduction) {
            if !overflow.is_zero() {
                for (c, r) in coords.iter_mut().zip(row) {
                    *c += overflow * r;
                }
            }
        }
        FieldElement {
            coords,
            spec: self.spec.clone(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// The value 2cos(π/m) inside `spec`; Infinite maps to 2 (the limit value).
/// A finite m must divide L.
pub fn two_cos_pi_over(spec: &Arc<FieldSpec>, m: Label) -> Result<FieldElement> {
    let m = match m {
        Label::Infinite => return Ok(FieldElement::from_int(spec, 2)),
        Label::Finite(m) => m as u64,
    };
    assert!(m >= 1);
    if !spec.l.is_multiple_of(m) {
        return Err(EngineError::Precondition(format!(
            "label {m} does not divide the field conductor L = {}",
            spec.l
        )));
    }
    let n = spec.l / m;
    // 2cos(nψ) = E_n(2cosψ) with E_0 = 2, E_1 = x, E_{k+1} = x·E_k − E_{k−1}.
    let theta = FieldElement::theta(spec);
    let mut prev = FieldElement::from_int(spec, 2);
    let mut cur = theta.clone();
    if n == 0 {
        return Ok(prev);
    }
    for _ in 1..n {
        let next = &(&theta * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::CoxeterGraph;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn graph_a3() -> CoxeterGraph {
        CoxeterGraph::from_parts(
            &["a", "b", "c"],
            &[("a", "b", Label::Finite(3)), ("b", "c", Label::Finite(3))],
        )
        .unwrap()
    }

    #[test]
    fn cyclotomic_small_cases() {
        assert_eq!(
            cyclotomic(12),
            vec![
                BigInt::from(1),
                BigInt::from(0),
                BigInt::from(-1),
                BigInt::from(0),
                BigInt::from(1)
            ]
        );
        assert_eq!(
            cyclotomic(6),
            vec![BigInt::from(1), BigInt::from(-1), BigInt::from(1)]
        );
    }

    #[test]
    fn field_for_labels_two_and_three() {
        // Labels {2, 3} give L = 6 and minimal polynomial x² − 3 (θ = √3).
        let spec = FieldSpec::for_graph(&graph_a3());
        assert_eq!(spec.l(), 6);
        assert_eq!(
            spec.minpoly(),
            &[BigInt::from(-3), BigInt::from(0), BigInt::from(1)]
        );
        let theta = FieldElement::theta(&spec);
        assert!((theta.to_f64() - 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn field_for_label_five_is_golden() {
        let g = CoxeterGraph::from_parts(&["s", "t"], &[("s", "t", Label::Finite(5))]).unwrap();
        let spec = FieldSpec::for_graph(&g);
        assert_eq!(spec.l(), 5);
        // x² − x − 1: with θ = 2cos(π/5) the golden ratio.
        assert_eq!(
            spec.minpoly(),
            &[BigInt::from(-1), BigInt::from(-1), BigInt::from(1)]
        );
        assert!((spec.theta_f64() - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn field_without_finite_labels_is_rational() {
        let g = CoxeterGraph::from_parts(&["s", "t"], &[("s", "t", Label::Infinite)]).unwrap();
        let spec = FieldSpec::for_graph(&g);
        assert_eq!(spec.l(), 1);
        assert_eq!(spec.degree(), 1);
        let theta = FieldElement::theta(&spec);
        assert_eq!(theta, FieldElement::from_int(&spec, -2));
    }

    #[test]
    fn two_cos_values() {
        let spec = FieldSpec::for_graph(&graph_a3());
        assert_eq!(
            two_cos_pi_over(&spec, Label::Finite(2)).unwrap(),
            FieldElement::zero(&spec)
        );
        assert_eq!(
            two_cos_pi_over(&spec, Label::Finite(3)).unwrap(),
            FieldElement::one(&spec)
        );
        assert_eq!(
            two_cos_pi_over(&spec, Label::Infinite).unwrap(),
            FieldElement::from_int(&spec, 2)
        );
        assert!(two_cos_pi_over(&spec, Label::Finite(5)).is_err());
    }

    #[test]
    fn recurrence_reaches_minus_two() {
        // E_L(θ) = 2cos(π) = −2 in every field spec.
        for l in [1u64, 2, 3, 4, 5, 6, 8, 10, 12, 30] {
            let spec = FieldSpec::with_l(l);
            let val = two_cos_pi_over(&spec, Label::Finite(1)).unwrap();
            assert_eq!(val, FieldElement::from_int(&spec, -2), "L = {l}");
        }
    }

    #[test]
    fn two_cos_matches_f64() {
        for l in [2u64, 3, 4, 5, 6, 12, 30] {
            let spec = FieldSpec::with_l(l);
            for m in divisors(l) {
                if m < 2 {
                    continue;
                }
                let exact = two_cos_pi_over(&spec, Label::Finite(m as u32)).unwrap();
                let expect = 2.0 * (std::f64::consts::PI / m as f64).cos();
                assert!((exact.to_f64() - expect).abs() < 1e-12, "L = {l}, m = {m}");
            }
            // The minimal polynomial vanishes at the float approximation of θ.
            let mut acc = 0.0;
            for c in spec.minpoly().iter().rev() {
                acc = acc * spec.theta_f64() + c.to_string().parse::<f64>().unwrap();
            }
            assert!(acc.abs() < 1e-9, "L = {l}: minpoly(θ) ≈ {acc}");
        }
    }

    #[test]
    fn sign_examples() {
        let spec = FieldSpec::with_l(6); // θ = √3
        assert_eq!(FieldElement::zero(&spec).sign(), 0);
        let theta = FieldElement::theta(&spec);
        let one = FieldElement::one(&spec);
        assert_eq!((&theta - &one).sign(), 1); // √3 − 1 > 0
        let theta_sq = &theta * &theta;
        assert_eq!((&one - &theta_sq).sign(), -1); // 1 − 3 < 0
        assert_eq!((&theta_sq - &FieldElement::from_int(&spec, 3)).sign(), 0);
    }

    fn random_element(spec: &Arc<FieldSpec>, rng: &mut ChaCha8Rng) -> FieldElement {
        let coords = (0..spec.degree())
            .map(|_| {
                BigRational::new(
                    BigInt::from(rng.gen_range(-12i64..=12)),
                    BigInt::from(rng.gen_range(1i64..=6)),
                )
            })
            .collect();
        FieldElement {
            coords,
            spec: spec.clone(),
        }
    }

    #[test]
    fn ring_axioms_on_random_elements() {
        let spec = FieldSpec::with_l(12); // degree 2 over Q
        let spec5 = FieldSpec::with_l(5);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for spec in [&spec, &spec5] {
            for _ in 0..200 {
                let a = random_element(spec, &mut rng);
                let b = random_element(spec, &mut rng);
                let c = random_element(spec, &mut rng);
                assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                assert_eq!(&a + &b, &b + &a);
                assert_eq!(&a * &b, &b * &a);
            }
        }
    }

    #[test]
    fn sign_is_multiplicative() {
        let spec = FieldSpec::with_l(12);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let a = random_element(&spec, &mut rng);
            let b = random_element(&spec, &mut rng);
            assert_eq!((&a * &b).sign(), a.sign() * b.sign());
        }
    }

    #[test]
    fn inverse_round_trip() {
        let spec = FieldSpec::with_l(12);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..100 {
            let a = random_element(&spec, &mut rng);
            if a.is_zero() {
                continue;
            }
            assert_eq!(&a * &a.inverse(), FieldElement::one(&spec));
        }
    }

    #[test]
    fn lifting_between_fields() {
        let small = FieldSpec::with_l(4); // θ' = √2
        let big = FieldSpec::with_l(12); // contains 2cos(π/4)
        let theta_small = FieldElement::theta(&small);
        let lifted = theta_small.lift_to(&big).unwrap();
        assert_eq!(lifted, two_cos_pi_over(&big, Label::Finite(4)).unwrap());
        assert!((lifted.to_f64() - 2f64.sqrt()).abs() < 1e-12);
        // Rationals lift to themselves.
        let half =
            FieldElement::from_rational(&small, BigRational::new(BigInt::one(), BigInt::from(2)));
        assert_eq!(
            half.lift_to(&big).unwrap().as_rational(),
            half.as_rational()
        );
        assert!(FieldElement::theta(&big).lift_to(&small).is_err());
    }

    #[test]
    fn enclosure_narrows_and_contains_theta() {
        let spec = FieldSpec::with_l(12);
        let (lo, hi) = spec.theta_enclosure(80);
        assert!(&hi - &lo < BigRational::new(BigInt::one(), BigInt::one() << 80));
        // The float approximation of θ sits inside the exact enclosure up to
        // one ulp on either side.
        let approx = BigRational::from_float(spec.theta_f64()).unwrap();
        let ulp = BigRational::new(BigInt::one(), BigInt::one() << 50);
        assert!(lo <= &approx + &ulp);
        assert!(&approx - &ulp <= hi);
    }
}
