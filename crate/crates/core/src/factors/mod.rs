mod jpss;
mod pinning;
mod shahidi;
mod whittaker;

pub use jpss::{jpss_gamma, sjpss_check, SjpssOutcome};
pub use pinning::{pin_conventions, PinningCase, PinningRecord};
pub use shahidi::{
    central_sign, eps_pair, intertwine, normalized_gamma, Evaluation, shahidi_gamma, weyl_block, InducedWhittaker, IntertwinedVector,
    ShahidiResult,
};
pub use whittaker::{is_generic, whittaker_model, WhittakerModel, WhittakerVector};

use serde::Serialize;

use crate::char_table::ClassFunction;
use crate::cyclotomic::{CyclotomicNumber, FactorValue};
use crate::error::{Error, Result};
use crate::gl_group::GroupContext;

/// Number of elements in each class with each value of `Tr_{k/F_p}(tr g)`.
#[derive(Clone, Debug)]
pub struct TraceProfile {
    p: u64,
    counts: Vec<Vec<i128>>,
}

impl TraceProfile {
    pub fn new(ctx: &GroupContext) -> Self {
        let gl = ctx.gl();
        let p = gl.field().p;
        let mut counts = vec![vec![0i128; p as usize]; ctx.num_classes()];
        for g in ctx.elements() {
            counts[ctx.class_of(g)][gl.psi_trace_exp(g) as usize] += 1;
        }
        TraceProfile { p, counts }
    }

    /// `Σ_{g ∈ class k} ψ(Tr g)`.
    pub fn psi_sum(&self, k: usize) -> CyclotomicNumber {
        CyclotomicNumber::from_exponents(
            self.p as u32,
            self.counts[k].iter().enumerate().map(|(t, &c)| (t as u64, c)),
            1,
        )
    }
}

/// `ε(π, ψ) = q^{-n²/2} (dim π)^{-1} Σ_g ψ(Tr g) \bar{χ(g)}`.
pub fn eps_zeta(ctx: &GroupContext, chi: &ClassFunction) -> Result<FactorValue> {
    eps_zeta_with(ctx, &TraceProfile::new(ctx), chi)
}

pub fn eps_zeta_with(ctx: &GroupContext, profile: &TraceProfile, chi: &ClassFunction) -> Result<FactorValue> {
    if chi.norm_squared(ctx) != Some(1) {
        return Err(Error::NotIrreducible);
    }
    let dim = chi.degree().filter(|&d| d > 0).ok_or(Error::NotIrreducible)?;
    let mut acc = CyclotomicNumber::zero();
    for k in 0..ctx.num_classes() {
        let v = chi.value(k);
        if !v.is_zero() {
            acc += &(&v.conj() * &profile.psi_sum(k));
        }
    }
    let n = ctx.n() as i64;
    Ok(FactorValue::new(ctx.q(), -n * n, acc.scale(1, dim)).normalized())
}

/// Which side of the correspondence a factor was computed on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Group,
    Galois,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorReport {
    pub side: Side,
    pub inputs: serde_json::Value,
    pub value: FactorValue,
    pub method: String,
    pub runtime_ms: u128,
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::char_table::GlFamily;
    use crate::gl_group::ParabolicShape;

    fn fam(q: u64, n: usize) -> GlFamily {
        GlFamily::new(q, n, None).unwrap()
    }

    #[test]
    fn gl1_trivial_over_f3() {
        let f = fam(3, 1);
        let t = f.table(1);
        let i = (0..t.len()).find(|&i| t.character(i).values().iter().all(|v| *v == CyclotomicNumber::one())).unwrap();
        let e = eps_zeta(f.context(1), t.character(i)).unwrap();
        assert_eq!(e, FactorValue::new(3, -1, CyclotomicNumber::from_int(-1)));
    }

    #[test]
    fn gl1_gauss_moduli() {
        for q in [2, 3, 4, 5] {
            let f = fam(q, 1);
            let t = f.table(1);
            for i in 0..t.len() {
                let e = eps_zeta(f.context(1), t.character(i)).unwrap();
                if !t.character(i).values().iter().all(|v| *v == CyclotomicNumber::one()) {
                    assert_eq!(e.abs_square(), CyclotomicNumber::one(), "q={q}");
                }
            }
        }
    }

    #[test]
    fn eps_zeta_rejects_reducible() {
        let f = fam(3, 2);
        let t = f.table(2);
        let sum = t.character(0) + t.character(1);
        assert_eq!(eps_zeta(f.context(2), &sum), Err(Error::NotIrreducible));
    }

    #[test]
    fn whittaker_models() {
        let f = fam(2, 2);
        let ctx = f.context(1).clone();
        let m = whittaker_model(ctx, f.table(1).character(0)).unwrap();
        assert_eq!(m.dimension(), 1);
        let c = f.table(2).cuspidal_rows()[0];
        let m = whittaker_model(f.context(2).clone(), f.table(2).character(c)).unwrap();
        assert_eq!(m.dimension(), 1);

        let f = fam(3, 2);
        let t = f.table(2);
        for &c in &t.cuspidal_rows() {
            let m = whittaker_model(f.context(2).clone(), t.character(c)).unwrap();
            assert_eq!(m.dimension(), 2);
            assert_eq!(m.whittaker_line_dimension(), 1);
            assert_eq!(m.vector.eval(&f.context(2).gl().identity()), CyclotomicNumber::one());
        }
        let triv = (0..t.len()).find(|&i| t.character(i).degree() == Some(1)).unwrap();
        assert!(matches!(whittaker_model(f.context(2).clone(), t.character(triv)), Err(Error::NotGeneric)));
    }

    #[test]
    fn induced_vector_gl1_pair_over_f3() {
        let f = fam(3, 1);
        let ctx = f.context(1).clone();
        let t = f.table(1);
        let triv = (0..t.len()).find(|&i| t.character(i).values().iter().all(|v| *v == CyclotomicNumber::one())).unwrap();
        let w = Arc::new(WhittakerVector::new(ctx, t.character(triv), false).unwrap());
        let v = InducedWhittaker::new(w.clone(), w).unwrap();
        let gl = v.gl().clone();
        let elems = crate::gl_group::enumerate_gl(&gl);
        let support = elems.iter().filter(|g| !v.eval_checked(g).unwrap().is_zero()).count();
        assert_eq!(support, 36);
        assert_eq!(v.eval(&weyl_block(1, 1)), CyclotomicNumber::one());
        let us: Vec<_> = ParabolicShape::new(vec![1, 1]).unwrap().u_elements(&gl).unwrap().collect();
        for g in &elems {
            for u in &us {
                let lhs = v.eval(&gl.mul(g, u));
                let rhs = v.eval(g).mul_root(3, gl.psi_n_exp(u) as i64);
                assert_eq!(lhs, rhs);
            }
        }
        let a = intertwine(&v).unwrap();
        assert_eq!(a.num_terms(), 3);
        let r = shahidi_gamma(&f, (1, t.character(triv)), (1, t.character(triv)), &Evaluation::default()).unwrap();
        assert_eq!(r.gamma_bar, CyclotomicNumber::from_int(-1));
        assert!(r.exhaustive);
    }

    #[test]
    fn intertwined_vector_is_equivariant_over_f2() {
        let f = fam(2, 1);
        let w = Arc::new(WhittakerVector::new(f.context(1).clone(), f.table(1).character(0), false).unwrap());
        let v = InducedWhittaker::new(w.clone(), w).unwrap();
        let a = intertwine(&v).unwrap();
        let gl = v.gl().clone();
        let elems = crate::gl_group::enumerate_gl(&gl);
        let b: Vec<_> = elems.iter().filter(|g| g.get(1, 0) == 0).collect();
        for g in &elems {
            for p in &b {
                assert_eq!(a.eval(&gl.mul(p, g)), a.eval(g));
            }
        }
    }

    #[test]
    fn pinning_selects_odd_dual() {
        let rec = pin_conventions(|q, n| Ok(Arc::new(fam(q, n)))).unwrap();
        assert_eq!(rec.convention, crate::wd_side::EpsConvention { sign: crate::wd_side::SignRule::Odd, dual: true });
        assert_eq!(rec.survivors.len(), 2);
        assert_eq!(rec.cases.len(), 4);
        assert!(!rec.tie_break.is_empty());
    }

    #[test]
    fn jpss_needs_larger_first_rank() {
        let f = fam(2, 2);
        let c = f.table(2).cuspidal_rows()[0];
        let chi = f.table(2).character(c);
        assert!(matches!(jpss_gamma(&f, (2, chi), (2, chi)), Err(Error::Unsupported(_))));
    }
}
