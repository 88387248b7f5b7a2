//! Characters of the groups `k_n^×`, their Frobenius orbits, and partition-valued functions
//! on orbits.
//!
//! A character of `k_n^×` is `θ(g_n^a) = ζ_{q^n-1}^{e a}` for an exponent `e` mod `q^n - 1`.
//! Inflation along the norm `k_n^× → k_m^×` multiplies the exponent by `(q^n-1)/(q^m-1)`,
//! and the Frobenius acts by `e ↦ q e`.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::ff_tower::{FieldElem, FieldTower};
use crate::partition::{partitions, Partition};

fn unit_order(q: u64, n: u32) -> u64 {
    q.pow(n) - 1
}

/// A character of `k_n^×`, kept at its minimal level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LevelChar {
    q: u64,
    level: u32,
    exponent: u64,
}

impl LevelChar {
    /// The character of `k_n^×` with exponent `e`, reduced to the smallest level it is inflated
    /// from.
    pub fn new(q: u64, level: u32, exponent: u64) -> Self {
        Self::at_level(q, level, exponent).minimal()
    }

    /// The character exactly as given, without reduction.
    pub fn at_level(q: u64, level: u32, exponent: u64) -> Self {
        LevelChar { q, level, exponent: exponent % unit_order(q, level) }
    }

    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn level(&self) -> u32 {
        self.level
    }
    pub fn exponent(&self) -> u64 {
        self.exponent
    }
    pub fn modulus(&self) -> u64 {
        unit_order(self.q, self.level)
    }

    /// Smallest `m | n` from which the character is inflated.
    pub fn minimal(&self) -> Self {
        let n = self.level;
        let top = unit_order(self.q, n);
        for m in (1..=n).filter(|m| n.is_multiple_of(*m)) {
            let step = top / unit_order(self.q, m);
            if self.exponent.is_multiple_of(step) {
                return LevelChar { q: self.q, level: m, exponent: self.exponent / step };
            }
        }
        unreachable!()
    }

    /// The character composed with the norm `k_n^× → k_level^×`.
    pub fn inflate(&self, n: u32) -> Result<Self> {
        if !n.is_multiple_of(self.level) {
            return Err(Error::LevelMismatch(format!("{} does not divide {n}", self.level)));
        }
        let step = unit_order(self.q, n) / self.modulus();
        Ok(LevelChar { q: self.q, level: n, exponent: self.exponent * step })
    }

    pub fn frobenius(&self) -> Self {
        LevelChar::at_level(self.q, self.level, (self.exponent as u128 * self.q as u128 % self.modulus() as u128) as u64)
    }

    pub fn inverse(&self) -> Self {
        LevelChar::at_level(self.q, self.level, self.modulus() - self.exponent)
    }

    pub fn is_trivial(&self) -> bool {
        self.exponent == 0
    }

    /// `θ(g_n^a)`.
    pub fn eval_log(&self, a: u64) -> CyclotomicNumber {
        let m = self.modulus();
        let e = (self.exponent as u128 * a as u128 % m as u128) as i64;
        CyclotomicNumber::root_of_unity(m as u32, e)
    }

    /// Evaluates at an element of `k_m^×`, `level | m`.
    pub fn eval(&self, x: FieldElem) -> Result<CyclotomicNumber> {
        let a = x.log.ok_or(Error::ZeroElement)?;
        let lifted = self.inflate(x.level)?;
        Ok(lifted.eval_log(a))
    }

    /// Frobenius orbit of the exponent at the stored level.
    pub fn orbit_exponents(&self) -> Vec<u64> {
        let mut out = Vec::new();
        let mut e = self.exponent;
        loop {
            if out.contains(&e) {
                break;
            }
            out.push(e);
            e = (e as u128 * self.q as u128 % self.modulus() as u128) as u64;
        }
        out.sort_unstable();
        out
    }

    /// Whether the Frobenius orbit at the stored level has exactly `level` members.
    pub fn is_regular(&self) -> bool {
        self.orbit_exponents().len() == self.level as usize
    }
}

/// A Galois orbit of characters, represented at its degree by its smallest exponent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaloisOrbit {
    degree: u32,
    rep: u64,
    q: u64,
    members: Vec<u64>,
}

impl GaloisOrbit {
    pub fn of(theta: LevelChar) -> Self {
        let t = theta.minimal();
        let members = t.orbit_exponents();
        GaloisOrbit { degree: t.level, rep: members[0], q: t.q, members }
    }

    pub fn trivial(q: u64) -> Self {
        Self::of(LevelChar::new(q, 1, 0))
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }
    pub fn rep_exponent(&self) -> u64 {
        self.rep
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    /// Sorted exponents of the orbit at level `degree`.
    pub fn members(&self) -> &[u64] {
        &self.members
    }
    pub fn representative(&self) -> LevelChar {
        LevelChar { q: self.q, level: self.degree, exponent: self.rep }
    }
    pub fn is_trivial(&self) -> bool {
        self.degree == 1 && self.rep == 0
    }
    /// The orbit of `θ^{-1}`.
    pub fn dual(&self) -> Self {
        Self::of(self.representative().inverse())
    }

    /// Restriction of `θ` (equivalently of the determinant of the attached inertial class) to
    /// `k^×`, as an exponent modulo `q - 1`.
    pub fn determinant_exponent(&self) -> u64 {
        self.rep % (self.q - 1).max(1)
    }
}

impl fmt::Display for GaloisOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.members.iter().map(|e| e.to_string()).collect();
        write!(f, "[{}]_{}", m.join(","), self.degree)
    }
}

#[derive(Serialize, Deserialize)]
struct OrbitRepr {
    degree: u32,
    rep_exponent: u64,
}

impl Serialize for GaloisOrbit {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        OrbitRepr { degree: self.degree, rep_exponent: self.rep }.serialize(s)
    }
}

/// All orbits of degree exactly `d`, sorted by representative.
pub fn orbits_of_degree(tower: &FieldTower, d: u32) -> Result<Vec<GaloisOrbit>> {
    if d == 0 || !tower.top_level().is_multiple_of(d) {
        return Err(Error::LevelMismatch(format!("degree {d} does not divide {}", tower.top_level())));
    }
    Ok(orbits_of_degree_q(tower.q(), d))
}

pub(crate) fn orbits_of_degree_q(q: u64, d: u32) -> Vec<GaloisOrbit> {
    let m = unit_order(q, d);
    let mut seen = vec![false; m as usize];
    let mut out = Vec::new();
    for e in 0..m {
        if seen[e as usize] {
            continue;
        }
        let c = LevelChar::at_level(q, d, e);
        let orbit = c.orbit_exponents();
        for &x in &orbit {
            seen[x as usize] = true;
        }
        if orbit.len() == d as usize {
            out.push(GaloisOrbit { degree: d, rep: orbit[0], q, members: orbit });
        }
    }
    out
}

/// The inertial constituents of `ρ(θ1) ⊗ ρ(θ2)`: each orbit with its multiplicity.
pub fn orbit_product_decompose(
    tower: &FieldTower,
    o1: &GaloisOrbit,
    o2: &GaloisOrbit,
) -> Result<Vec<(GaloisOrbit, u32)>> {
    if o1.q != o2.q || o1.q != tower.q() {
        return Err(Error::LevelMismatch("orbits over different fields".into()));
    }
    let l = o1.degree.lcm(&o2.degree);
    if !tower.top_level().is_multiple_of(l) {
        return Err(Error::LevelMismatch(format!("level {l} not in tower")));
    }
    let m = unit_order(o1.q, l);
    let lift = |o: &GaloisOrbit| -> Vec<u64> {
        let step = m / unit_order(o.q, o.degree);
        o.members.iter().map(|&e| e * step).collect()
    };
    let (a, b) = (lift(o1), lift(o2));
    let mut counts: BTreeMap<GaloisOrbit, u32> = BTreeMap::new();
    for &x in &a {
        for &y in &b {
            let orbit = GaloisOrbit::of(LevelChar::at_level(o1.q, l, (x + y) % m));
            *counts.entry(orbit).or_default() += 1;
        }
    }
    Ok(counts
        .into_iter()
        .map(|(o, c)| {
            let d = o.degree;
            debug_assert_eq!(c % d, 0);
            (o, c / d)
        })
        .collect())
}

/// A Frobenius-invariant partition-valued function with finite support, stored on orbit
/// representatives.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParamFunction {
    entries: Vec<(GaloisOrbit, Partition)>,
}

impl ParamFunction {
    pub fn new(entries: impl IntoIterator<Item = (GaloisOrbit, Partition)>) -> Result<Self> {
        let mut map: BTreeMap<GaloisOrbit, Partition> = BTreeMap::new();
        for (o, p) in entries {
            if p.is_empty() {
                return Err(Error::ShapeMismatch("empty partition in parameter".into()));
            }
            if map.insert(o, p).is_some() {
                return Err(Error::ShapeMismatch("repeated orbit in parameter".into()));
            }
        }
        Ok(ParamFunction { entries: map.into_iter().collect() })
    }

    pub fn single(orbit: GaloisOrbit, partition: Partition) -> Self {
        ParamFunction { entries: vec![(orbit, partition)] }
    }

    pub fn entries(&self) -> &[(GaloisOrbit, Partition)] {
        &self.entries
    }

    /// `Σ |λ_[θ]| · deg[θ]`.
    pub fn total(&self) -> u32 {
        self.entries.iter().map(|(o, p)| o.degree * p.size()).sum()
    }

    pub fn is_cuspidal_label(&self) -> bool {
        self.entries.len() == 1 && self.entries[0].1.parts() == [1]
    }

    /// Exponent modulo `q - 1` of the product of the determinant characters.
    pub fn determinant_exponent(&self) -> u64 {
        let Some((o, _)) = self.entries.first() else { return 0 };
        let m = (o.q - 1).max(1);
        self.entries
            .iter()
            .map(|(o, p)| o.determinant_exponent() * p.size() as u64)
            .sum::<u64>()
            % m
    }
}

impl fmt::Display for ParamFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(o, p)| format!("{o}->{p}")).collect();
        write!(f, "{{{}}}", parts.join("; "))
    }
}

impl Serialize for ParamFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(s)
    }
}

/// Default bound on the number of parameters produced by [`enumerate_params`].
pub const PARAM_LIMIT: usize = 1_000_000;

/// Every element of `𝔓_n(𝔛)^Γ`, sorted.
pub fn enumerate_params(tower: &FieldTower, n: u32) -> Result<Vec<ParamFunction>> {
    for d in 1..=n {
        if !tower.top_level().is_multiple_of(d) {
            return Err(Error::LimitExceeded(format!(
                "tower of top level {} lacks degree {d}",
                tower.top_level()
            )));
        }
    }
    let mut orbits = Vec::new();
    for d in 1..=n {
        orbits.extend(orbits_of_degree_q(tower.q(), d));
    }
    let parts: Vec<Vec<Partition>> = (0..=n).map(partitions).collect();
    let mut out = Vec::new();
    let mut current: Vec<(GaloisOrbit, Partition)> = Vec::new();
    fn rec(
        idx: usize,
        remaining: u32,
        orbits: &[GaloisOrbit],
        parts: &[Vec<Partition>],
        current: &mut Vec<(GaloisOrbit, Partition)>,
        out: &mut Vec<ParamFunction>,
    ) -> Result<()> {
        if remaining == 0 {
            if out.len() >= PARAM_LIMIT {
                return Err(Error::LimitExceeded(format!("more than {PARAM_LIMIT} parameters")));
            }
            out.push(ParamFunction { entries: current.clone() });
            return Ok(());
        }
        for i in idx..orbits.len() {
            let d = orbits[i].degree;
            if d > remaining {
                continue;
            }
            for size in 1..=remaining / d {
                for p in &parts[size as usize] {
                    current.push((orbits[i].clone(), p.clone()));
                    rec(i + 1, remaining - size * d, orbits, parts, current, out)?;
                    current.pop();
                }
            }
        }
        Ok(())
    }
    rec(0, n, &orbits, &parts, &mut current, &mut out)?;
    for p in &mut out {
        p.entries.sort();
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mobius(n: u32) -> i64 {
        let mut n = n;
        let mut k = 0;
        let mut p = 2;
        while p * p <= n {
            if n.is_multiple_of(p) {
                n /= p;
                if n.is_multiple_of(p) {
                    return 0;
                }
                k += 1;
            }
            p += 1;
        }
        if n > 1 {
            k += 1;
        }
        if k % 2 == 0 { 1 } else { -1 }
    }

    #[test]
    fn regularity() {
        assert!(LevelChar::at_level(3, 2, 1).is_regular());
        assert!(!LevelChar::at_level(3, 2, 4).is_regular());
        assert!(LevelChar::at_level(2, 1, 0).is_regular());
        assert_eq!(LevelChar::new(3, 2, 4), LevelChar::at_level(3, 1, 1));
    }

    #[test]
    fn orbit_examples() {
        let t3 = FieldTower::build(3, 2).unwrap();
        let o1 = orbits_of_degree(&t3, 1).unwrap();
        assert_eq!(o1.iter().map(|o| o.rep_exponent()).collect::<Vec<_>>(), vec![0, 1]);
        let o2 = orbits_of_degree(&t3, 2).unwrap();
        let members: Vec<Vec<u64>> = o2.iter().map(|o| o.members().to_vec()).collect();
        assert_eq!(members, vec![vec![1, 3], vec![2, 6], vec![5, 7]]);
        let t2 = FieldTower::build(2, 2).unwrap();
        let o = orbits_of_degree(&t2, 2).unwrap();
        assert_eq!(o.len(), 1);
        assert_eq!(o[0].members(), &[1, 2]);
        assert!(orbits_of_degree(&t2, 3).is_err());
    }

    #[test]
    fn orbit_counts_match_necklace_formula() {
        for (q, l) in [(2u64, 12u32), (3, 6), (4, 2), (5, 2)] {
            let t = FieldTower::build(q, l).unwrap();
            for d in (1..=l).filter(|d| l % d == 0) {
                let s: i64 = (1..=d)
                    .filter(|m| d % m == 0)
                    .map(|m| mobius(d / m) * (q.pow(m) as i64 - 1))
                    .sum();
                assert_eq!(orbits_of_degree(&t, d).unwrap().len() as i64, s / d as i64);
            }
        }
    }

    #[test]
    fn reduction_then_inflation_is_identity() {
        let q = 2;
        for e in 0..63u64 {
            let c = LevelChar::at_level(q, 6, e);
            let m = c.minimal();
            assert_eq!(m.inflate(6).unwrap(), c);
            assert!(m.is_regular());
        }
    }

    #[test]
    fn params_counts() {
        let t = FieldTower::build(3, 2).unwrap();
        assert_eq!(enumerate_params(&t, 1).unwrap().len(), 2);
        assert_eq!(enumerate_params(&t, 2).unwrap().len(), 8);
        let t = FieldTower::build(2, 2).unwrap();
        assert_eq!(enumerate_params(&t, 2).unwrap().len(), 3);
        for p in enumerate_params(&t, 2).unwrap() {
            assert_eq!(p.total(), 2);
        }
    }

    #[test]
    fn decompose_examples() {
        let t = FieldTower::build(3, 2).unwrap();
        let th = GaloisOrbit::of(LevelChar::at_level(3, 2, 1));
        let chi = GaloisOrbit::of(LevelChar::at_level(3, 1, 1));
        let d = orbit_product_decompose(&t, &th, &chi).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].0.members(), &[5, 7]);
        assert_eq!(d[0].1, 1);
        let d = orbit_product_decompose(&t, &th, &th).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!((d[0].0.degree(), d[0].0.rep_exponent(), d[0].1), (1, 1, 2));
        assert_eq!(d[1].0.members(), &[2, 6]);
        assert_eq!(d[1].1, 1);
        let triv = GaloisOrbit::trivial(3);
        let d = orbit_product_decompose(&t, &th, &triv).unwrap();
        assert_eq!(d, vec![(th.clone(), 1)]);
    }

    #[test]
    fn decompose_conserves_degree() {
        let t = FieldTower::build(2, 12).unwrap();
        let mut all = Vec::new();
        for d in [1, 2, 3, 4] {
            all.extend(orbits_of_degree(&t, d).unwrap());
        }
        for a in &all {
            for b in all.iter().step_by(2) {
                let s: u32 = orbit_product_decompose(&t, a, b)
                    .unwrap()
                    .iter()
                    .map(|(o, m)| o.degree() * m)
                    .sum();
                assert_eq!(s, a.degree() * b.degree());
            }
        }
    }
}
