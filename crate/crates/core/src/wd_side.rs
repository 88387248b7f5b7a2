//! Tame Weil–Deligne inertial classes and their `ε₀` constants as Gauss sums.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::char_lattice::{orbit_product_decompose, GaloisOrbit, ParamFunction};
use crate::cyclotomic::{CyclotomicNumber, FactorValue};
use crate::error::{Error, Result};
use crate::ff_tower::FieldTower;
use crate::partition::Partition;

/// An inertial class `⊕_[θ] sp(λ_[θ]) ⊗ ρ(θ)`, each pair standing for
/// `⊕_{parts m} sp(m) ⊗ ρ(θ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TameWDClass {
    components: Vec<(GaloisOrbit, Partition)>,
}

impl TameWDClass {
    pub fn new(components: impl IntoIterator<Item = (GaloisOrbit, Partition)>) -> Result<Self> {
        let p = ParamFunction::new(components)?;
        Ok(param_to_wd(&p))
    }

    pub fn components(&self) -> &[(GaloisOrbit, Partition)] {
        &self.components
    }

    pub fn dimension(&self) -> u32 {
        self.components.iter().map(|(o, l)| o.degree() * l.size()).sum()
    }

    /// Indecomposable summands `sp(m) ⊗ ρ(θ)`, as `(orbit, m)`.
    pub fn summands(&self) -> Vec<(GaloisOrbit, u32)> {
        self.components
            .iter()
            .flat_map(|(o, l)| l.parts().iter().map(move |&m| (o.clone(), m)))
            .collect()
    }

    /// A single `ρ(θ)` with trivial monodromy.
    pub fn is_irreducible(&self) -> bool {
        self.components.len() == 1 && self.components[0].1.parts() == [1]
    }

    /// `det` restricted to inertia, pushed to `k^×`: exponent modulo `q - 1`.
    pub fn determinant_exponent(&self) -> u64 {
        wd_to_param(self).determinant_exponent()
    }
}

impl fmt::Display for TameWDClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .summands()
            .iter()
            .map(|(o, m)| if *m == 1 { format!("rho{o}") } else { format!("sp({m})(x)rho{o}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for TameWDClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            dimension: u32,
            components: &'a [(GaloisOrbit, Partition)],
        }
        Repr { dimension: self.dimension(), components: &self.components }.serialize(s)
    }
}

pub fn param_to_wd(p: &ParamFunction) -> TameWDClass {
    TameWDClass { components: p.entries().to_vec() }
}

pub fn wd_to_param(c: &TameWDClass) -> ParamFunction {
    ParamFunction::new(c.components.iter().cloned()).expect("class components are canonical")
}

/// Which of the two sign rules `s(d)` is in force.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignRule {
    /// `s(d) = (-1)^d`.
    Even,
    /// `s(d) = (-1)^{d-1}`.
    Odd,
}

/// The two binary choices in the tame `ε₀` formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EpsConvention {
    pub sign: SignRule,
    /// Whether the Gauss sum uses `θ^{-1}` rather than `θ`.
    pub dual: bool,
}

impl EpsConvention {
    pub const ALL: [EpsConvention; 4] = [
        EpsConvention { sign: SignRule::Even, dual: false },
        EpsConvention { sign: SignRule::Even, dual: true },
        EpsConvention { sign: SignRule::Odd, dual: false },
        EpsConvention { sign: SignRule::Odd, dual: true },
    ];

    pub fn sign(&self, d: u32) -> i128 {
        let odd = match self.sign {
            SignRule::Even => d % 2 == 1,
            SignRule::Odd => d.is_multiple_of(2),
        };
        if odd { -1 } else { 1 }
    }
}

/// `Σ_{x ∈ k_d^×} θ(x) ψ(Tr_{k_d/k} x)` for the representative `θ` of the orbit.
pub fn gauss_sum(tower: &FieldTower, orbit: &GaloisOrbit, dual: bool) -> Result<CyclotomicNumber> {
    let d = orbit.degree();
    if orbit.q() != tower.q() || !tower.top_level().is_multiple_of(d) {
        return Err(Error::LevelMismatch(format!("orbit of degree {d} not in tower")));
    }
    let order = tower.unit_order(d);
    let p = tower.p();
    let modulus = order.lcm(&p);
    let e = if dual { (order - orbit.rep_exponent()) % order } else { orbit.rep_exponent() };
    let (a_scale, t_scale) = (modulus / order, modulus / p);
    let terms = (0..order).map(|a| {
        let x = tower.elem(d, a);
        let t = tower.absolute_trace(x);
        let exp = (e as u128 * a as u128 % order as u128) as u64 * a_scale + t * t_scale;
        (exp % modulus, 1i128)
    });
    Ok(CyclotomicNumber::from_exponents(modulus as u32, terms, 1))
}

/// `ε₀` of the irreducible tame class `ρ(θ)`: `s(d) q^{-d/2} Σ θ^ι(x) ψ(Tr x)`.
pub fn eps0_orbit(
    tower: &FieldTower,
    orbit: &GaloisOrbit,
    convention: Option<&EpsConvention>,
) -> Result<FactorValue> {
    let conv = convention.ok_or(Error::ConventionNotPinned)?;
    let d = orbit.degree();
    let g = gauss_sum(tower, orbit, conv.dual)?.scale(conv.sign(d), 1);
    Ok(FactorValue::new(tower.q(), -(d as i64), g).normalized())
}

/// `Π eps0_orbit([θ])^{|λ|}`: only the inertia restriction matters.
pub fn eps0_class(
    tower: &FieldTower,
    class: &TameWDClass,
    convention: Option<&EpsConvention>,
) -> Result<FactorValue> {
    let mut acc = FactorValue::one(tower.q());
    for (o, l) in class.components() {
        acc = acc.mul(&eps0_orbit(tower, o, convention)?.pow(l.size()));
    }
    Ok(acc)
}

/// `ε₀(ρ1 ⊗ ρ2)` for irreducible classes, through the inertial decomposition of the tensor.
pub fn eps0_pair(
    tower: &FieldTower,
    c1: &TameWDClass,
    c2: &TameWDClass,
    convention: Option<&EpsConvention>,
) -> Result<FactorValue> {
    if !c1.is_irreducible() || !c2.is_irreducible() {
        return Err(Error::NotIrreducible);
    }
    let mut acc = FactorValue::one(tower.q());
    for (o, m) in orbit_product_decompose(tower, &c1.components[0].0, &c2.components[0].0)? {
        acc = acc.mul(&eps0_orbit(tower, &o, convention)?.pow(m));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::char_lattice::{enumerate_params, orbits_of_degree, LevelChar};

    const CONV: EpsConvention = EpsConvention { sign: SignRule::Odd, dual: true };

    fn orbit(q: u64, level: u32, e: u64) -> GaloisOrbit {
        GaloisOrbit::of(LevelChar::at_level(q, level, e))
    }

    #[test]
    fn unpinned_is_an_error() {
        let t = FieldTower::build(3, 1).unwrap();
        assert_eq!(eps0_orbit(&t, &GaloisOrbit::trivial(3), None), Err(Error::ConventionNotPinned));
    }

    #[test]
    fn trivial_orbit_q3() {
        let t = FieldTower::build(3, 1).unwrap();
        for c in EpsConvention::ALL {
            let v = eps0_orbit(&t, &GaloisOrbit::trivial(3), Some(&c)).unwrap();
            let expect = FactorValue::new(3, -1, CyclotomicNumber::from_int(-c.sign(1)));
            assert_eq!(v, expect);
        }
    }

    #[test]
    fn q2_degree_two_direct_sum() {
        // F_4^× = {1, g, g^2}; Tr(1) = 0, Tr(g) = Tr(g^2) = 1; θ(g) = ζ_3
        let t = FieldTower::build(2, 2).unwrap();
        let o = orbit(2, 2, 1);
        let g = gauss_sum(&t, &o, false).unwrap();
        let expect = CyclotomicNumber::from_exponents(3, [(0, 1)], 1)
            - (CyclotomicNumber::root_of_unity(3, 1) + CyclotomicNumber::root_of_unity(3, 2));
        assert_eq!(g, expect);
        assert_eq!(g, CyclotomicNumber::from_int(2));
    }

    #[test]
    fn unit_modulus_for_nontrivial_orbits() {
        for (q, l) in [(2u64, 6u32), (3, 6), (4, 2), (5, 2), (4, 3), (5, 3)] {
            let t = FieldTower::build(q, l).unwrap();
            for d in (1..=3).filter(|d| l % d == 0) {
                for o in orbits_of_degree(&t, d).unwrap() {
                    if o.is_trivial() {
                        continue;
                    }
                    let v = eps0_orbit(&t, &o, Some(&CONV)).unwrap();
                    assert_eq!(v.abs_square(), CyclotomicNumber::one(), "q={q} orbit {o}");
                }
            }
        }
    }

    #[test]
    fn round_trip_and_dimensions() {
        let t = FieldTower::build(3, 2).unwrap();
        let params = enumerate_params(&t, 2).unwrap();
        assert_eq!(params.len(), 8);
        let mut classes: Vec<TameWDClass> = params.iter().map(param_to_wd).collect();
        for (p, c) in params.iter().zip(&classes) {
            assert_eq!(&wd_to_param(c), p);
            assert_eq!(c.dimension(), 2);
        }
        classes.sort();
        classes.dedup();
        assert_eq!(classes.len(), 8);
    }

    #[test]
    fn class_products() {
        let t = FieldTower::build(3, 2).unwrap();
        let triv = GaloisOrbit::trivial(3);
        let sp2 = TameWDClass::new([(triv.clone(), Partition::new(vec![2]))]).unwrap();
        assert_eq!(sp2.summands(), vec![(triv.clone(), 2)]);
        let e = eps0_orbit(&t, &triv, Some(&CONV)).unwrap();
        assert_eq!(eps0_class(&t, &sp2, Some(&CONV)).unwrap(), e.pow(2));
        let sign = orbit(3, 1, 1);
        let two = TameWDClass::new([(triv.clone(), Partition::new(vec![1])), (sign.clone(), Partition::new(vec![1]))]).unwrap();
        let e2 = eps0_orbit(&t, &sign, Some(&CONV)).unwrap();
        assert_eq!(eps0_class(&t, &two, Some(&CONV)).unwrap(), e.mul(&e2));
    }

    #[test]
    fn pair_examples() {
        let t = FieldTower::build(3, 2).unwrap();
        let irr = |o: GaloisOrbit| TameWDClass::new([(o, Partition::new(vec![1]))]).unwrap();
        let th = orbit(3, 2, 1);
        let chi = orbit(3, 1, 1);
        let c = Some(&CONV);
        let v = eps0_pair(&t, &irr(th.clone()), &irr(chi.clone()), c).unwrap();
        assert_eq!(v, eps0_orbit(&t, &orbit(3, 2, 5), c).unwrap());
        assert_eq!(v, eps0_pair(&t, &irr(chi.clone()), &irr(th.clone()), c).unwrap());
        let v = eps0_pair(&t, &irr(th.clone()), &irr(th.clone()), c).unwrap();
        let expect = eps0_orbit(&t, &orbit(3, 2, 2), c)
            .unwrap()
            .mul(&eps0_orbit(&t, &chi, c).unwrap().pow(2));
        assert_eq!(v, expect);
        let v = eps0_pair(&t, &irr(th.clone()), &irr(GaloisOrbit::trivial(3)), c).unwrap();
        assert_eq!(v, eps0_orbit(&t, &th, c).unwrap());
        let sp2 = TameWDClass::new([(chi, Partition::new(vec![2]))]).unwrap();
        assert_eq!(eps0_pair(&t, &sp2, &irr(th), c), Err(Error::NotIrreducible));
    }
}
