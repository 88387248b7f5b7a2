
use serde::Serialize;

use super::shahidi::{central_sign, shahidi_gamma, Evaluation};
use super::whittaker::WhittakerVector;
use crate::char_table::{ClassFunction, GlFamily};
use crate::cyclotomic::{CyclotomicNumber, FactorValue};
use crate::error::{Error, Result};
use crate::gl_group::{Gl, Matrix};

/// `γ(π × τ, ψ)` from the zeta sums
/// `q^{m(n-m-1)} γ Σ_h W(diag(h, I)) W'(h) = Σ_h Σ_x W([[0,1,0],[0,0,I],[h,0,x]]) W'(h)`,
/// with `W ∈ W(π, ψ)` and `W' ∈ W(τ, ψ^{-1})`.
pub fn jpss_gamma(
    fam: &GlFamily,
    (n, pi): (usize, &ClassFunction),
    (m, tau): (usize, &ClassFunction),
) -> Result<FactorValue> {
    if n <= m {
        return Err(Error::Unsupported(format!("JPSS gamma needs n > m, got ({n}, {m})")));
    }
    let ctx_n = fam.context(n).clone();
    let ctx_m = fam.context(m).clone();
    let w = WhittakerVector::new(ctx_n.clone(), pi, false)?;
    let w_dual = WhittakerVector::new(ctx_m.clone(), tau, true)?;
    let gl: &Gl = ctx_n.gl();
    let q = fam.q() as u8;

    let hs: Vec<(Matrix, CyclotomicNumber)> = ctx_m
        .elements()
        .iter()
        .map(|h| (*h, w_dual.eval(h)))
        .filter(|(_, v)| !v.is_zero())
        .collect();

    let embed = |h: &Matrix| {
        let mut g = gl.identity();
        for i in 0..m {
            for j in 0..m {
                g.set(i, j, h.get(i, j));
            }
        }
        g
    };
    let k = n - m - 1;
    let cols = m * k;
    let rhs_point = |h: &Matrix, x: usize| {
        let mut g = Matrix::zero(n);
        g.set(0, m, 1);
        for i in 1..=k {
            g.set(i, m + i, 1);
        }
        let mut code = x;
        for i in 0..m {
            for j in 0..m {
                g.set(n - m + i, j, h.get(i, j));
            }
            for j in 0..k {
                g.set(n - m + i, m + 1 + j, (code % q as usize) as u8);
                code /= q as usize;
            }
        }
        g
    };
    let num_x = (q as usize).pow(cols as u32);

    for g0 in ctx_n.elements() {
        let lhs: CyclotomicNumber =
            hs.iter().map(|(h, v)| &w.eval(&gl.mul(&embed(h), g0)) * v).sum();
        if lhs.is_zero() {
            continue;
        }
        let mut rhs = CyclotomicNumber::zero();
        for (h, v) in &hs {
            for x in 0..num_x {
                let f = w.eval(&gl.mul(&rhs_point(h, x), g0));
                if !f.is_zero() {
                    rhs += &(&f * v);
                }
            }
        }
        let e = (m * k) as i64;
        return Ok(FactorValue::new(fam.q(), -2 * e, &rhs * &lhs.inv()?).normalized());
    }
    Err(Error::ZeroDenominator)
}

#[derive(Clone, Debug, Serialize)]
pub struct SjpssOutcome {
    /// `γ^{Sh}(π1 × π2, ψ)`.
    pub shahidi: FactorValue,
    /// `q^{(n1-n2-1) n2} ω_{π2}(-1) γ(π1 × π2^∨, ψ)`.
    pub jpss_side: FactorValue,
    pub holds: bool,
    /// `shahidi / jpss_side` when they differ.
    pub discrepancy: Option<FactorValue>,
}

/// Compares both sides of the relation between Shahidi and JPSS gamma factors.
pub fn sjpss_check(
    fam: &GlFamily,
    (n1, chi1): (usize, &ClassFunction),
    (n2, chi2): (usize, &ClassFunction),
    eval: &Evaluation,
) -> Result<SjpssOutcome> {
    let sh = shahidi_gamma(fam, (n1, chi1), (n2, chi2), eval)?.gamma;
    let jp = jpss_gamma(fam, (n1, chi1), (n2, &chi2.conj()))?;
    let sign = central_sign(chi2, fam.context(n2))?;
    let e = ((n1 - n2 - 1) * n2) as i64;
    let jpss_side = FactorValue::new(fam.q(), 2 * e, jp.value.scale(sign, 1)).normalized();
    let holds = sh == jpss_side;
    let discrepancy = if holds { None } else { jpss_side.inv().ok().map(|i| sh.mul(&i)) };
    Ok(SjpssOutcome { shahidi: sh, jpss_side, holds, discrepancy })
}

