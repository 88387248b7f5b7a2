//! Towers of finite fields `k = F_q ⊂ k_2 ⊂ … ⊂ k_L`.
//!
//! The top field `k_L = F_p[X]/(f)` is built from the smallest primitive polynomial `f` of
//! degree `[k_L : F_p]`, where polynomials are ordered by the integer `Σ c_i p^i` of their
//! non-leading coefficients. `g_L = X` generates `k_L^×` and every level uses
//! `g_n = g_L^{(q^L-1)/(q^n-1)}`, so the generators are norm-compatible by construction.
//! Nonzero elements at level `n` are stored as discrete logarithms with respect to `g_n`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Default bound on `q^L`.
pub const DEFAULT_TOWER_LIMIT: u64 = 1 << 20;

/// Returns `(p, f)` with `q = p^f`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut r, mut f) = (q, 0);
    while r % p == 0 {
        r /= p;
        f += 1;
    }
    (r == 1).then_some((p, f))
}

#[derive(Clone, Debug)]
pub struct FieldTower {
    p: u64,
    f: u32,
    q: u64,
    top: u32,
    /// `|k_L|`.
    size: u64,
    /// Non-leading coefficients of the defining polynomial over `F_p`, lowest degree first.
    modulus_poly: Vec<u64>,
    /// `exp[i] = g_L^i` in the polynomial encoding.
    exp: Vec<u32>,
    /// `log[x]` for nonzero `x`.
    log: Vec<u32>,
}

/// An element of `k_n`: `None` is zero, `Some(e)` is `g_n^e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem {
    pub level: u32,
    pub log: Option<u64>,
}

impl FieldElem {
    pub fn zero(level: u32) -> Self {
        FieldElem { level, log: None }
    }
    pub fn is_zero(&self) -> bool {
        self.log.is_none()
    }
}

/// Reproducibility record for the run report.
#[derive(Clone, Debug, Serialize)]
pub struct TowerRecord {
    pub p: u64,
    pub q: u64,
    pub top_level: u32,
    /// Coefficients of the monic defining polynomial over `F_p`, lowest degree first.
    pub polynomial: Vec<u64>,
}

impl FieldTower {
    pub fn build(q: u64, top: u32) -> Result<Self> {
        Self::build_with_limit(q, top, DEFAULT_TOWER_LIMIT)
    }

    /// Tower with top level `lcm(1, …, n)`, containing every degree up to `n`.
    pub fn for_rank(q: u64, n: u32) -> Result<Self> {
        let top = (1..=n.max(1)).fold(1u32, num_integer::lcm);
        Self::build(q, top)
    }

    pub fn build_with_limit(q: u64, top: u32, limit: u64) -> Result<Self> {
        let (p, f) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if top == 0 {
            return Err(Error::LimitExceeded("top level must be positive".into()));
        }
        let size = q
            .checked_pow(top)
            .filter(|&s| s <= limit)
            .ok_or_else(|| Error::LimitExceeded(format!("{q}^{top} exceeds {limit}")))?;
        let degree = (f * top) as usize;
        let digits_mod = |x: u64| -> Vec<u64> {
            let mut v = Vec::with_capacity(degree);
            let mut x = x;
            for _ in 0..degree {
                v.push(x % p);
                x /= p;
            }
            v
        };
        for code in 0..size {
            let tail = digits_mod(code);
            if tail[0] == 0 {
                continue;
            }
            if let Some((exp, log)) = primitive_tables(p, &tail, size) {
                return Ok(FieldTower { p, f, q, top, size, modulus_poly: tail, exp, log });
            }
        }
        unreachable!("a primitive polynomial of every degree exists")
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn top_level(&self) -> u32 {
        self.top
    }
    /// `[k : F_p]`.
    pub fn base_degree(&self) -> u32 {
        self.f
    }

    pub fn record(&self) -> TowerRecord {
        let mut polynomial = self.modulus_poly.clone();
        polynomial.push(1);
        TowerRecord { p: self.p, q: self.q, top_level: self.top, polynomial }
    }

    /// `q^n - 1`, the order of `k_n^×`.
    pub fn unit_order(&self, n: u32) -> u64 {
        self.q.pow(n) - 1
    }

    fn check_level(&self, n: u32) -> Result<()> {
        if n == 0 || !self.top.is_multiple_of(n) {
            return Err(Error::LevelMismatch(format!("level {n} does not divide {}", self.top)));
        }
        Ok(())
    }

    /// `g_n`.
    pub fn generator(&self, n: u32) -> Result<FieldElem> {
        self.check_level(n)?;
        Ok(FieldElem { level: n, log: Some(if self.unit_order(n) == 1 { 0 } else { 1 }) })
    }

    pub fn elem(&self, n: u32, log: u64) -> FieldElem {
        FieldElem { level: n, log: Some(log % self.unit_order(n)) }
    }

    pub fn one(&self, n: u32) -> FieldElem {
        self.elem(n, 0)
    }

    /// All elements of `k_n`, zero first then `g_n^0, g_n^1, …`.
    pub fn elements(&self, n: u32) -> impl Iterator<Item = FieldElem> + '_ {
        std::iter::once(FieldElem::zero(n)).chain((0..self.unit_order(n)).map(move |e| self.elem(n, e)))
    }

    /// Encoding of an element inside the top field.
    fn to_top(&self, x: FieldElem) -> u32 {
        match x.log {
            None => 0,
            Some(e) => {
                let step = (self.size - 1) / self.unit_order(x.level);
                self.exp[((e * step) % (self.size - 1)) as usize]
            }
        }
    }

    fn from_top(&self, code: u32, n: u32) -> Result<FieldElem> {
        if code == 0 {
            return Ok(FieldElem::zero(n));
        }
        let l = self.log[code as usize] as u64;
        let step = (self.size - 1) / self.unit_order(n);
        if !l.is_multiple_of(step) {
            return Err(Error::LevelMismatch(format!("element does not lie in level {n}")));
        }
        Ok(self.elem(n, l / step))
    }

    fn add_codes(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a as u64, b as u64);
        let (mut out, mut place) = (0u64, 1u64);
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out as u32
    }

    /// Views an element of `k_m` as an element of `k_n`, `m | n`.
    pub fn embed(&self, x: FieldElem, n: u32) -> Result<FieldElem> {
        self.check_level(n)?;
        if !n.is_multiple_of(x.level) {
            return Err(Error::LevelMismatch(format!("{} does not divide {n}", x.level)));
        }
        Ok(match x.log {
            None => FieldElem::zero(n),
            Some(e) => self.elem(n, e * (self.unit_order(n) / self.unit_order(x.level))),
        })
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        let n = a.level.max(b.level);
        let (a, b) = (self.embed(a, n)?, self.embed(b, n)?);
        self.from_top(self.add_codes(self.to_top(a), self.to_top(b)), n)
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        match a.log {
            None => a,
            Some(e) => {
                if self.p == 2 {
                    a
                } else {
                    self.elem(a.level, e + self.unit_order(a.level) / 2)
                }
            }
        }
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        let n = a.level.max(b.level);
        let (a, b) = (self.embed(a, n)?, self.embed(b, n)?);
        Ok(match (a.log, b.log) {
            (Some(x), Some(y)) => self.elem(n, x + y),
            _ => FieldElem::zero(n),
        })
    }

    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        match a.log {
            None if e == 0 => self.one(a.level),
            None => a,
            Some(x) => {
                let m = self.unit_order(a.level) as u128;
                self.elem(a.level, ((x as u128 * e as u128) % m) as u64)
            }
        }
    }

    /// `x ↦ x^q`.
    pub fn frobenius(&self, x: FieldElem) -> FieldElem {
        self.pow(x, self.q)
    }

    /// `N_{n,m}(x) = x^{(q^n-1)/(q^m-1)}`.
    pub fn norm(&self, x: FieldElem, m: u32) -> Result<FieldElem> {
        let n = x.level;
        if m == 0 || !n.is_multiple_of(m) {
            return Err(Error::LevelMismatch(format!("{m} does not divide {n}")));
        }
        Ok(match x.log {
            None => FieldElem::zero(m),
            // g_n^{e (q^n-1)/(q^m-1)} = g_m^e
            Some(e) => self.elem(m, e),
        })
    }

    /// `Tr_{k_n/k_m}(x) = Σ_{i<n/m} Frob^{mi}(x)`.
    pub fn trace(&self, x: FieldElem, m: u32) -> Result<FieldElem> {
        let n = x.level;
        if m == 0 || !n.is_multiple_of(m) {
            return Err(Error::LevelMismatch(format!("{m} does not divide {n}")));
        }
        let qm = self.q.pow(m);
        let mut acc = 0u32;
        let mut y = x;
        for _ in 0..n / m {
            acc = self.add_codes(acc, self.to_top(y));
            y = self.pow(y, qm);
        }
        self.from_top(acc, m)
    }

    /// `Tr_{k/F_p}(x)` as an integer in `[0, p)`.
    pub fn absolute_trace(&self, x: FieldElem) -> u64 {
        let mut acc = 0u32;
        let mut y = x;
        for _ in 0..self.f * x.level {
            acc = self.add_codes(acc, self.to_top(y));
            y = self.pow(y, self.p);
        }
        // F_p sits in the top field as the constant polynomials
        debug_assert!((acc as u64) < self.p);
        acc as u64
    }

    /// Smallest `d` with `x ∈ k_d`.
    pub fn degree(&self, x: FieldElem) -> u32 {
        match x.log {
            None => 1,
            Some(e) => {
                let n = x.level;
                (1..=n)
                    .filter(|d| n.is_multiple_of(*d))
                    .find(|&d| self.pow(x, self.q.pow(d)).log == Some(e))
                    .unwrap_or(n)
            }
        }
    }
}

/// Builds `exp`/`log` tables when `X` is primitive modulo the polynomial.
fn primitive_tables(p: u64, tail: &[u64], size: u64) -> Option<(Vec<u32>, Vec<u32>)> {
    let degree = tail.len();
    let order = size - 1;
    let mut exp = Vec::with_capacity(order as usize);
    let mut log = vec![u32::MAX; size as usize];
    let mut cur = vec![0u64; degree];
    cur[0] = 1;
    let encode = |v: &[u64]| v.iter().rev().fold(0u64, |acc, &c| acc * p + c) as u32;
    for i in 0..order {
        let code = encode(&cur);
        if log[code as usize] != u32::MAX {
            return None;
        }
        log[code as usize] = i as u32;
        exp.push(code);
        // multiply by X: shift, then X^d = -Σ tail_i X^i
        let top = cur[degree - 1];
        for j in (1..degree).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for (j, &t) in tail.iter().enumerate() {
                cur[j] = (cur[j] + (p - t) * top) % p;
            }
        }
    }
    let back = encode(&cur);
    (back == 1).then_some((exp, log))
}

/// The prime field's additive structure and the base field `k` as a small indexed set,
/// used for matrix entries: index `0` is zero and index `i ≥ 1` is `g_1^{i-1}`.
#[derive(Clone, Debug)]
pub struct BaseField {
    pub q: u64,
    pub p: u64,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    abs_trace: Vec<u8>,
    names: Vec<String>,
}

impl BaseField {
    pub fn new(tower: &FieldTower) -> Self {
        let q = tower.q() as usize;
        assert!(q <= 256);
        let to_elem = |i: usize| if i == 0 { FieldElem::zero(1) } else { tower.elem(1, i as u64 - 1) };
        let to_idx = |x: FieldElem| match x.log {
            None => 0u8,
            Some(e) => (e + 1) as u8,
        };
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = to_idx(tower.add(to_elem(a), to_elem(b)).unwrap());
                mul[a * q + b] = to_idx(tower.mul(to_elem(a), to_elem(b)).unwrap());
            }
        }
        let neg = (0..q).map(|a| to_idx(tower.neg(to_elem(a)))).collect();
        let inv = (0..q)
            .map(|a| match to_elem(a).log {
                None => 0,
                Some(e) => to_idx(tower.elem(1, tower.unit_order(1) - e)),
            })
            .collect();
        let abs_trace = (0..q).map(|a| tower.absolute_trace(to_elem(a)) as u8).collect();
        let names = (0..q)
            .map(|a| match a {
                0 => "0".to_string(),
                1 => "1".to_string(),
                _ if tower.p() == q as u64 => tower.to_top(to_elem(a)).to_string(),
                _ => format!("g^{}", a - 1),
            })
            .collect();
        BaseField { q: q as u64, p: tower.p(), add, mul, neg, inv, abs_trace, names }
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }
    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }
    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }
    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }
    /// Panics on zero.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        assert!(a != 0, "inverse of zero");
        self.inv[a as usize]
    }
    /// `Tr_{k/F_p}`, the exponent of `ζ_p` in the canonical additive character.
    #[inline]
    pub fn abs_trace(&self, a: u8) -> u8 {
        self.abs_trace[a as usize]
    }
    pub fn from_elem(&self, x: FieldElem) -> u8 {
        assert_eq!(x.level, 1);
        match x.log {
            None => 0,
            Some(e) => (e + 1) as u8,
        }
    }
    pub fn to_elem(&self, a: u8) -> FieldElem {
        if a == 0 {
            FieldElem::zero(1)
        } else {
            FieldElem { level: 1, log: Some(a as u64 - 1) }
        }
    }
    pub fn one(&self) -> u8 {
        1
    }
    /// Printable name: the integer value over a prime field, else a power of `g_1`.
    pub fn name(&self, a: u8) -> &str {
        &self.names[a as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q3_l2() {
        let t = FieldTower::build(3, 2).unwrap();
        assert_eq!(t.unit_order(2), 8);
        let g2 = t.generator(2).unwrap();
        let g1 = t.generator(1).unwrap();
        // g_2^4 = g_1 as elements of k_2
        assert_eq!(t.pow(g2, 4), t.embed(g1, 2).unwrap());
        // N_{2,1}(g_2) is the element 2 of F_3, i.e. -1
        let n = t.norm(g2, 1).unwrap();
        assert_eq!(n, g1);
        assert_eq!(t.neg(t.one(1)), g1);
        assert_eq!(t.frobenius(g2), t.pow(g2, 3));
    }

    #[test]
    fn f2_is_trivial() {
        let t = FieldTower::build(2, 1).unwrap();
        assert_eq!(t.generator(1).unwrap(), t.one(1));
    }

    #[test]
    fn f16_over_f4() {
        let t = FieldTower::build(4, 2).unwrap();
        assert_eq!(t.elements(2).count(), 16);
        assert_eq!(t.base_degree(), 2);
        // k_1 is exactly the Frobenius-fixed part of k_2
        let fixed = t.elements(2).filter(|&x| t.frobenius(x) == x).count();
        assert_eq!(fixed, 4);
    }

    #[test]
    fn norm_transitivity_q2() {
        let t = FieldTower::build(2, 4).unwrap();
        for x in t.elements(4).skip(1) {
            let a = t.norm(t.norm(x, 2).unwrap(), 1).unwrap();
            assert_eq!(a, t.norm(x, 1).unwrap());
        }
    }

    #[test]
    fn norm_surjective_with_uniform_fibres() {
        for (q, l) in [(2u64, 6u32), (3, 4), (4, 3), (5, 2)] {
            let t = FieldTower::build(q, l).unwrap();
            for n in (1..=l).filter(|n| l % n == 0) {
                for m in (1..=n).filter(|m| n % m == 0) {
                    let mut counts = vec![0u64; t.unit_order(m) as usize];
                    for x in t.elements(n).skip(1) {
                        counts[t.norm(x, m).unwrap().log.unwrap() as usize] += 1;
                    }
                    let fibre = t.unit_order(n) / t.unit_order(m);
                    assert!(counts.iter().all(|&c| c == fibre));
                    // the norm agrees with the product of Frobenius conjugates
                    for x in t.elements(n).skip(1).take(20) {
                        let mut prod = t.one(n);
                        let mut y = x;
                        for _ in 0..n / m {
                            prod = t.mul(prod, y).unwrap();
                            y = t.pow(y, q.pow(m));
                        }
                        assert_eq!(t.embed(t.norm(x, m).unwrap(), n).unwrap(), prod);
                    }
                }
            }
        }
    }

    #[test]
    fn trace_examples() {
        let t = FieldTower::build(3, 2).unwrap();
        let one = t.embed(t.one(1), 2).unwrap();
        // 2 = -1 in F_3
        assert_eq!(t.trace(one, 1).unwrap(), t.neg(t.one(1)));
        assert!(t.trace(FieldElem::zero(2), 1).unwrap().is_zero());
        let mut sums = [0u64; 3];
        for x in t.elements(2) {
            sums[t.absolute_trace(t.trace(x, 1).unwrap()) as usize] += 1;
        }
        // each trace value taken equally often, so the additive character sums to zero
        assert_eq!(sums, [3, 3, 3]);
    }

    #[test]
    fn trace_is_linear_and_surjective() {
        let t = FieldTower::build(2, 4).unwrap();
        let els: Vec<_> = t.elements(4).collect();
        for &a in &els {
            for &b in els.iter().step_by(3) {
                let lhs = t.trace(t.add(a, b).unwrap(), 2).unwrap();
                let rhs = t.add(t.trace(a, 2).unwrap(), t.trace(b, 2).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        let mut image: Vec<_> = els.iter().map(|&a| t.trace(a, 2).unwrap()).collect();
        image.sort();
        image.dedup();
        assert_eq!(image.len(), 4);
    }

    #[test]
    fn frobenius_fixed_fields() {
        let t = FieldTower::build(2, 6).unwrap();
        for n in 1..=6u32 {
            let fixed = t
                .elements(6)
                .filter(|&x| {
                    let mut y = x;
                    for _ in 0..n {
                        y = t.frobenius(y);
                    }
                    y == x
                })
                .count() as u64;
            assert_eq!(fixed, 2u64.pow(num_integer::gcd(n, 6)));
        }
    }

    #[test]
    fn errors() {
        assert_eq!(FieldTower::build(6, 1).unwrap_err(), Error::NotPrimePower(6));
        assert!(matches!(FieldTower::build(2, 21), Err(Error::LimitExceeded(_))));
        let t = FieldTower::build(2, 4).unwrap();
        let x = t.generator(4).unwrap();
        assert!(matches!(t.norm(x, 3), Err(Error::LevelMismatch(_))));
    }

    #[test]
    fn base_field_tables() {
        let t = FieldTower::build(4, 1).unwrap();
        let k = BaseField::new(&t);
        for a in 0..4u8 {
            assert_eq!(k.add(a, a), 0);
            if a != 0 {
                assert_eq!(k.mul(a, k.inv(a)), 1);
            }
        }
        assert_eq!(k.p, 2);
    }
}
