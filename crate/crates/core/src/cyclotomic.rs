//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! An element of `Q(ζ_N)` is stored in the power basis `1, ζ_N, …, ζ_N^{φ(N)-1}`: every
//! power `ζ_N^e` with `e ≥ φ(N)` is rewritten through the `N`-th cyclotomic polynomial
//! `Φ_N`, which is monic with integer coefficients. Coefficients are integer numerators over a
//! single positive denominator, reduced so that their common gcd with the denominator is one.
//! Two elements with the same modulus are therefore equal iff their stored forms agree;
//! elements with different moduli are compared after lifting both to the lcm.
//!
//! Numerators are `i128`. The workspace builds every profile with overflow checks, so a
//! coefficient that would not fit panics instead of wrapping.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

struct Basis {
    phi: usize,
    /// Nonzero coefficients `(i, a_i)` of `Φ_N = X^φ + Σ a_i X^i`.
    tail: Vec<(usize, i128)>,
}

fn basis_cache() -> &'static RwLock<HashMap<u32, Arc<Basis>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Basis>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i128> {
    assert!(n >= 1);
    // X^n - 1
    let mut poly = vec![0i128; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            poly = div_monic(&poly, &cyclotomic_polynomial(d));
        }
    }
    poly
}

fn div_monic(num: &[i128], den: &[i128]) -> Vec<i128> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i128; num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &b) in den.iter().enumerate() {
                rem[i + j] -= c * b;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

fn basis(n: u32) -> Arc<Basis> {
    if let Some(b) = basis_cache().read().unwrap().get(&n) {
        return b.clone();
    }
    let poly = cyclotomic_polynomial(n);
    let phi = poly.len() - 1;
    let tail = poly[..phi]
        .iter()
        .enumerate()
        .filter(|(_, &a)| a != 0)
        .map(|(i, &a)| (i, a))
        .collect();
    let b = Arc::new(Basis { phi, tail });
    basis_cache().write().unwrap().insert(n, b.clone());
    b
}

/// Euler's totient of `n`.
pub fn euler_phi(n: u32) -> usize {
    basis(n).phi
}

fn reduce_in_place(b: &Basis, v: &mut Vec<i128>) {
    let phi = b.phi;
    for j in (phi..v.len()).rev() {
        let c = v[j];
        if c != 0 {
            v[j] = 0;
            for &(i, a) in &b.tail {
                v[j - phi + i] -= c * a;
            }
        }
    }
    v.truncate(phi);
    v.resize(phi, 0);
}

/// An exact element of `Q(ζ_N)`.
#[derive(Clone, Debug)]
pub struct CyclotomicNumber {
    n: u32,
    num: Vec<i128>,
    den: i128,
}

impl CyclotomicNumber {
    fn from_parts(n: u32, num: Vec<i128>, den: i128) -> Self {
        let mut x = CyclotomicNumber { n, num, den };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        assert!(self.den != 0);
        if self.num.iter().all(|&c| c == 0) {
            self.den = 1;
            return;
        }
        let mut g = self.den.abs();
        for &c in &self.num {
            if g == 1 {
                break;
            }
            g = g.gcd(&c);
        }
        if self.den < 0 {
            g = -g;
        }
        if g != 1 {
            for c in &mut self.num {
                *c /= g;
            }
            self.den /= g;
        }
    }

    /// Builds `Σ c_e ζ_n^e / den` from coefficients on arbitrary exponents.
    pub fn from_exponents<I>(n: u32, terms: I, den: i128) -> Self
    where
        I: IntoIterator<Item = (u64, i128)>,
    {
        let b = basis(n);
        let mut v = vec![0i128; n as usize];
        for (e, c) in terms {
            v[(e % n as u64) as usize] += c;
        }
        reduce_in_place(&b, &mut v);
        Self::from_parts(n, v, den)
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(a: i128) -> Self {
        CyclotomicNumber { n: 1, num: vec![a], den: 1 }
    }

    pub fn from_ratio(a: i128, b: i128) -> Self {
        Self::from_parts(1, vec![a], b)
    }

    /// `ζ_n^e`.
    pub fn root_of_unity(n: u32, e: i64) -> Self {
        let e = e.rem_euclid(n as i64) as u64;
        Self::from_exponents(n, [(e, 1)], 1)
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|&c| c == 0)
    }

    /// `Some((a, b))` when the element is the rational `a/b`.
    pub fn as_rational(&self) -> Option<(i128, i128)> {
        if self.num[1..].iter().all(|&c| c == 0) {
            Some((self.num[0], self.den))
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    /// Nonzero power-basis coefficients as `(exponent, numerator, denominator)`, each fraction
    /// in lowest terms.
    pub fn coefficients(&self) -> Vec<(usize, i128, i128)> {
        self.num
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(e, &c)| {
                let g = c.gcd(&self.den);
                (e, c / g, self.den / g)
            })
            .collect()
    }

    /// Re-expresses the element in `Q(ζ_m)`; `m` must be a multiple of the current modulus.
    pub fn lift(&self, m: u32) -> Self {
        assert!(m.is_multiple_of(self.n), "cannot lift modulus {} to {}", self.n, m);
        if m == self.n {
            return self.clone();
        }
        let step = (m / self.n) as usize;
        let b = basis(m);
        let mut v = vec![0i128; m as usize];
        for (i, &c) in self.num.iter().enumerate() {
            v[i * step] = c;
        }
        reduce_in_place(&b, &mut v);
        CyclotomicNumber { n: m, num: v, den: self.den }
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        let m = a.n.lcm(&b.n);
        (a.lift(m), b.lift(m))
    }

    /// The automorphism `ζ_N ↦ ζ_N^k`, `gcd(k, N) = 1`.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.n as i64;
        let k = k.rem_euclid(n);
        debug_assert_eq!((k as u64).gcd(&(n as u64)), 1);
        let terms = self
            .num
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (((i as i64 * k) % n) as u64, c));
        Self::from_exponents(self.n, terms, self.den)
    }

    /// Complex conjugation `ζ_N ↦ ζ_N^{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// `a · conj(a)`, a totally real element.
    pub fn abs_square(&self) -> Self {
        self * &self.conj()
    }

    /// Multiplication by `ζ_m^e`.
    pub fn mul_root(&self, m: u32, e: i64) -> Self {
        let modulus = self.n.lcm(&m);
        let x = self.lift(modulus);
        let shift = (e.rem_euclid(m as i64) as u64) * (modulus / m) as u64;
        let terms = x
            .num
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i as u64 + shift, c));
        Self::from_exponents(modulus, terms, x.den)
    }

    pub fn scale(&self, a: i128, b: i128) -> Self {
        assert!(b != 0);
        let ga = a.gcd(&self.den);
        let gb = b.gcd(&self.num.iter().fold(0i128, |g, &c| g.gcd(&c)).max(1));
        let num = self.num.iter().map(|&c| (c / gb) * (a / ga)).collect();
        Self::from_parts(self.n, num, (self.den / ga) * (b / gb))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some((a, b)) = self.as_rational() {
            return Ok(Self::from_ratio(b, a));
        }
        // product of the nontrivial conjugates, divided by the (rational) norm
        let n = self.n as u64;
        let mut prod = Self::one();
        for k in 2..n {
            if k.gcd(&n) == 1 {
                prod = &prod * &self.galois(k as i64);
            }
        }
        let norm = (self * &prod)
            .as_rational()
            .expect("norm of a cyclotomic number is rational");
        Ok(prod.scale(norm.1, norm.0))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Moves the element to the smallest modulus dividing the current one that contains it.
    pub fn simplify_modulus(&self) -> Self {
        let n = self.n;
        for d in 1..n {
            if n.is_multiple_of(d) && self.lies_in(d) {
                return self.descend_exact(d);
            }
        }
        self.clone()
    }

    /// Whether the element lies in `Q(ζ_d)` for `d | N`: fixed by every `ζ_N ↦ ζ_N^k`, `k ≡ 1 mod d`.
    fn lies_in(&self, d: u32) -> bool {
        let n = self.n as u64;
        (1..n)
            .filter(|&k| k.gcd(&n) == 1 && k % d as u64 == 1 % d as u64)
            .all(|k| self.galois(k as i64) == *self)
    }

    fn descend_exact(&self, d: u32) -> Self {
        // Solve the linear system lift(x) = self over Q with x in the power basis of Q(ζ_d).
        let phi_d = euler_phi(d);
        let cols: Vec<CyclotomicNumber> = (0..phi_d)
            .map(|i| CyclotomicNumber::root_of_unity(d, i as i64).lift(self.n))
            .collect();
        let rows = self.num.len();
        // augmented matrix of rationals (num, den)
        let mut m: Vec<Vec<(i128, i128)>> = (0..rows)
            .map(|r| {
                let mut row: Vec<(i128, i128)> = cols.iter().map(|c| (c.num[r], 1)).collect();
                row.push((self.num[r], self.den));
                row
            })
            .collect();
        let mut piv_row = 0;
        let mut sol = vec![(0i128, 1i128); phi_d];
        let mut pivots = Vec::new();
        for col in 0..phi_d {
            let Some(p) = (piv_row..rows).find(|&r| m[r][col].0 != 0) else { continue };
            m.swap(piv_row, p);
            let pv = m[piv_row][col];
            for j in 0..=phi_d {
                m[piv_row][j] = rdiv(m[piv_row][j], pv);
            }
            for r in 0..rows {
                if r != piv_row && m[r][col].0 != 0 {
                    let f = m[r][col];
                    for j in 0..=phi_d {
                        let t = rmul(f, m[piv_row][j]);
                        m[r][j] = rsub(m[r][j], t);
                    }
                }
            }
            pivots.push((piv_row, col));
            piv_row += 1;
        }
        for (r, c) in pivots {
            sol[c] = m[r][phi_d];
        }
        let den = sol.iter().fold(1i128, |l, &(_, d)| l.lcm(&d));
        let num = sol.iter().map(|&(a, b)| a * (den / b)).collect();
        Self::from_parts(d, num, den)
    }
}

fn rnorm((a, b): (i128, i128)) -> (i128, i128) {
    let g = a.gcd(&b);
    let g = if b < 0 { -g } else { g };
    if g == 0 {
        (0, 1)
    } else {
        (a / g, b / g)
    }
}
fn rmul(x: (i128, i128), y: (i128, i128)) -> (i128, i128) {
    rnorm((x.0 * y.0, x.1 * y.1))
}
fn rdiv(x: (i128, i128), y: (i128, i128)) -> (i128, i128) {
    rnorm((x.0 * y.1, x.1 * y.0))
}
fn rsub(x: (i128, i128), y: (i128, i128)) -> (i128, i128) {
    let l = x.1.lcm(&y.1);
    rnorm((x.0 * (l / x.1) - y.0 * (l / y.1), l))
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = Self::aligned(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CyclotomicNumber {}

impl<'a> Add<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
        if self.n != rhs.n {
            let (a, b) = CyclotomicNumber::aligned(self, rhs);
            return &a + &b;
        }
        let l = self.den.lcm(&rhs.den);
        let (fa, fb) = (l / self.den, l / rhs.den);
        let num = self
            .num
            .iter()
            .zip(&rhs.num)
            .map(|(&x, &y)| x * fa + y * fb)
            .collect();
        CyclotomicNumber::from_parts(self.n, num, l)
    }
}

impl<'a> Sub<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
        if self.n != rhs.n {
            let (a, b) = CyclotomicNumber::aligned(self, rhs);
            return &a * &b;
        }
        if let Some((a, b)) = rhs.as_rational() {
            return self.scale(a, b);
        }
        if let Some((a, b)) = self.as_rational() {
            return rhs.scale(a, b);
        }
        let b = basis(self.n);
        let phi = b.phi;
        let mut v = vec![0i128; 2 * phi - 1];
        for (i, &x) in self.num.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in rhs.num.iter().enumerate() {
                if y != 0 {
                    v[i + j] += x * y;
                }
            }
        }
        reduce_in_place(&b, &mut v);
        CyclotomicNumber::from_parts(self.n, v, self.den * rhs.den)
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            n: self.n,
            num: self.num.iter().map(|&c| -c).collect(),
            den: self.den,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

impl AddAssign<&CyclotomicNumber> for CyclotomicNumber {
    fn add_assign(&mut self, rhs: &CyclotomicNumber) {
        *self = &*self + rhs;
    }
}

impl std::iter::Sum for CyclotomicNumber {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.coefficients();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, a, b)) in terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if *b == 1 {
                write!(f, "{a}")?;
            } else {
                write!(f, "{a}/{b}")?;
            }
            if *e > 0 {
                write!(f, "*z{}^{}", self.n, e)?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CycloRepr {
    #[serde(rename = "N")]
    n: u32,
    coeffs: Vec<(usize, i128, i128)>,
}

impl CycloRepr {
    fn into_number(self) -> std::result::Result<CyclotomicNumber, String> {
        if self.n == 0 {
            return Err("modulus must be positive".into());
        }
        let phi = euler_phi(self.n);
        let den = self
            .coeffs
            .iter()
            .try_fold(1i128, |l, &(e, _, d)| {
                if d <= 0 || e >= phi {
                    Err(format!("bad coefficient at exponent {e}"))
                } else {
                    Ok(l.lcm(&d))
                }
            })?;
        let mut num = vec![0i128; phi];
        for (e, a, d) in self.coeffs {
            num[e] += a * (den / d);
        }
        Ok(CyclotomicNumber::from_parts(self.n, num, den))
    }
}

impl Serialize for CyclotomicNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycloRepr { n: self.n, coeffs: self.coefficients() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclotomicNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        CycloRepr::deserialize(d)?
            .into_number()
            .map_err(serde::de::Error::custom)
    }
}

/// A value `q^{h/2} · c` with `c ∈ Q(ζ_N)`; `√q` is tracked through the half-integer exponent.
#[derive(Clone, Debug)]
pub struct FactorValue {
    pub q: u64,
    pub q_half_power: i64,
    pub value: CyclotomicNumber,
}

impl FactorValue {
    pub fn new(q: u64, q_half_power: i64, value: CyclotomicNumber) -> Self {
        FactorValue { q, q_half_power, value }
    }

    pub fn from_cyclotomic(q: u64, value: CyclotomicNumber) -> Self {
        Self::new(q, 0, value)
    }

    pub fn one(q: u64) -> Self {
        Self::from_cyclotomic(q, CyclotomicNumber::one())
    }

    /// Folds whole powers of `q` into the cyclotomic part, leaving an exponent of 0 or 1.
    pub fn normalized(&self) -> Self {
        let h = self.q_half_power;
        let whole = h.div_euclid(2);
        let rest = h.rem_euclid(2);
        let q = self.q as i128;
        let qp = q.pow(whole.unsigned_abs() as u32);
        let value = if whole >= 0 { self.value.scale(qp, 1) } else { self.value.scale(1, qp) };
        FactorValue { q: self.q, q_half_power: rest, value }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.q, other.q);
        Self::new(self.q, self.q_half_power + other.q_half_power, &self.value * &other.value)
            .normalized()
    }

    pub fn pow(&self, e: u32) -> Self {
        Self::new(self.q, self.q_half_power * e as i64, self.value.pow(e)).normalized()
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(Self::new(self.q, -self.q_half_power, self.value.inv()?).normalized())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.q, self.q_half_power, self.value.conj())
    }

    /// `|x|²`, which is an element of `Q(ζ_N)` since `√q² = q`.
    pub fn abs_square(&self) -> CyclotomicNumber {
        let f = FactorValue::new(self.q, 2 * self.q_half_power, self.value.abs_square());
        f.normalized().value
    }

    pub fn scale_cyclotomic(&self, c: &CyclotomicNumber) -> Self {
        Self::new(self.q, self.q_half_power, &self.value * c)
    }
}

impl PartialEq for FactorValue {
    fn eq(&self, other: &Self) -> bool {
        if self.q != other.q {
            return false;
        }
        let (a, b) = (self.normalized(), other.normalized());
        a.q_half_power == b.q_half_power && a.value == b.value
    }
}

impl fmt::Display for FactorValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.normalized();
        if n.q_half_power == 0 {
            write!(f, "{}", n.value)
        } else {
            write!(f, "sqrt({})*({})", n.q, n.value)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct FactorRepr {
    q: u64,
    #[serde(rename = "N")]
    n: u32,
    q_half_power: i64,
    coeffs: Vec<(usize, i128, i128)>,
}

impl Serialize for FactorValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v = self.normalized();
        FactorRepr {
            q: v.q,
            n: v.value.n,
            q_half_power: v.q_half_power,
            coeffs: v.value.coefficients(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FactorValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = FactorRepr::deserialize(d)?;
        let value = CycloRepr { n: r.n, coeffs: r.coeffs }
            .into_number()
            .map_err(serde::de::Error::custom)?;
        Ok(FactorValue::new(r.q, r.q_half_power, value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, e: i64) -> CyclotomicNumber {
        CyclotomicNumber::root_of_unity(n, e)
    }

    #[test]
    fn primitive_cube_roots_sum_to_minus_one() {
        assert_eq!(z(3, 1) + z(3, 2), CyclotomicNumber::from_int(-1));
    }

    #[test]
    fn i_squared() {
        assert_eq!(&z(4, 1) * &z(4, 1), CyclotomicNumber::from_int(-1));
    }

    #[test]
    fn inverse_of_root() {
        assert_eq!(z(8, 1).inv().unwrap(), z(8, 7));
        assert_eq!(CyclotomicNumber::zero().inv(), Err(Error::DivisionByZero));
        let x = z(5, 1) + CyclotomicNumber::from_ratio(2, 3);
        assert_eq!(&x * &x.inv().unwrap(), CyclotomicNumber::one());
    }

    #[test]
    fn conjugation() {
        assert_eq!(z(5, 1).conj(), z(5, 4));
        let r = CyclotomicNumber::from_ratio(3, 2);
        assert_eq!(r.conj(), r);
        let x = z(8, 1) + z(8, 3);
        // brute-force oracle: ζ8^5 = -ζ8, ζ8^7 = -ζ8^3
        assert_eq!(x.conj(), z(8, 5) + z(8, 7));
        assert_eq!(x.conj(), -x);
    }

    #[test]
    fn abs_square_examples() {
        assert_eq!(z(7, 3).abs_square(), CyclotomicNumber::one());
        assert!(CyclotomicNumber::zero().abs_square().is_zero());
        let s = z(3, 1) + z(3, 2);
        assert_eq!(s.abs_square(), CyclotomicNumber::one());
    }

    #[test]
    fn lift_then_compare_across_moduli() {
        let x = z(6, 1);
        assert_eq!(x.lift(12), z(12, 2));
        assert_eq!(z(2, 1), CyclotomicNumber::from_int(-1));
        assert_eq!(z(6, 2), z(3, 1));
    }

    #[test]
    fn descend_finds_smallest_field() {
        let x = z(12, 4) + CyclotomicNumber::from_ratio(1, 2);
        let y = x.simplify_modulus();
        assert_eq!(y.modulus(), 3);
        assert_eq!(y, x);
    }

    #[test]
    fn factor_value_normalization() {
        let a = FactorValue::new(3, -3, CyclotomicNumber::from_int(9));
        let b = FactorValue::new(3, 1, CyclotomicNumber::one());
        assert_eq!(a, b);
        assert_eq!(a.abs_square(), CyclotomicNumber::from_int(3));
    }

    #[test]
    fn serde_round_trip() {
        let x = z(8, 3) + CyclotomicNumber::from_ratio(-5, 7);
        let s = serde_json::to_string(&x).unwrap();
        let y: CyclotomicNumber = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
        let f = FactorValue::new(5, -1, x);
        let s = serde_json::to_string(&f).unwrap();
        assert!(s.contains("\"q_half_power\":1"));
        let g: FactorValue = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
    }
}
