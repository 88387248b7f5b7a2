use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::whittaker::WhittakerVector;
use crate::char_table::{central_character, ClassFunction, GlFamily};
use crate::cyclotomic::{CyclotomicNumber, FactorValue};
use crate::error::{Error, Result};
use crate::gl_group::{enumerate_gl, gl_order, Gl, GroupContext, Matrix, ParabolicShape};

/// Points at which vector identities are asserted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Evaluation {
    /// Groups of at most this order are checked at every element.
    pub exhaustive_limit: u64,
    /// Number of random points otherwise.
    pub samples: usize,
    pub seed: u64,
}

impl Default for Evaluation {
    fn default() -> Self {
        Evaluation { exhaustive_limit: 25_000, samples: 48, seed: 0 }
    }
}

impl Evaluation {
    pub fn with_seed(seed: u64) -> Self {
        Evaluation { seed, ..Self::default() }
    }

    /// Returns the points and whether they exhaust the group.
    pub fn points(&self, gl: &Gl, extra: &[Matrix]) -> (Vec<Matrix>, bool) {
        if gl_order(gl.n(), gl.q()) <= self.exhaustive_limit {
            return (enumerate_gl(gl), true);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let q = gl.q() as u8;
        let n = gl.n();
        let mut pts = extra.to_vec();
        while pts.len() < extra.len() + self.samples {
            let mut m = Matrix::zero(n);
            for i in 0..n {
                for j in 0..n {
                    m.set(i, j, rng.gen_range(0..q));
                }
            }
            if gl.is_invertible(&m) {
                pts.push(m);
            }
        }
        (pts, false)
    }
}

/// `ŵ_{n1,n2} = [[0, I_{n2}], [I_{n1}, 0]]`.
pub fn weyl_block(n1: usize, n2: usize) -> Matrix {
    let mut w = Matrix::zero(n1 + n2);
    for i in 0..n2 {
        w.set(i, n1 + i, 1);
    }
    for j in 0..n1 {
        w.set(n2 + j, j, 1);
    }
    w
}

/// The Whittaker vector `v_{π1,π2,ψ}` of `I(π1,π2)`, supported on `P ŵ_{n1,n2} U_n`.
///
/// `I(π1,π2)` is realized on the parabolic with Levi `GL_{n2} × GL_{n1}`, the one for which
/// `P ŵ_{n1,n2} U_n` is the open cell and the intertwining sum over `U(n1,n2)` is equivariant.
/// The vector is stored through its scalar function `φ(g) = v(g)(1,1)`;
/// the full vector is `v(g)(x2,x1) = φ(diag(x2,x1) g)`.
#[derive(Debug)]
pub struct InducedWhittaker {
    gl: Gl,
    n1: usize,
    /// Block sizes of the Levi, top-left first.
    top: usize,
    w1: Arc<WhittakerVector>,
    w2: Arc<WhittakerVector>,
    w_inv: Matrix,
    /// `(u^{-1} ŵ^{-1}, exponent of ψ_n(u))` over `u ∈ U_n`; empty above [`SEARCH_LIMIT`].
    cosets: Vec<(Matrix, u8)>,
}

/// Largest `|U_n|` for which every factorization is enumerated.
pub const SEARCH_LIMIT: u64 = 4096;

impl InducedWhittaker {
    pub fn new(w1: Arc<WhittakerVector>, w2: Arc<WhittakerVector>) -> Result<Self> {
        let (n1, n2) = (w1.context().n(), w2.context().n());
        if w1.is_dual() != w2.is_dual() {
            return Err(Error::ShapeMismatch("Whittaker vectors for different characters".into()));
        }
        let gl = Gl::new(n1 + n2, w1.context().gl().field_arc().clone());
        let w_inv = gl.inv(&weyl_block(n1, n2))?;
        let n = n1 + n2;
        let u_size = gl.q().checked_pow((n * (n - 1) / 2) as u32).unwrap_or(u64::MAX);
        let mut iw = InducedWhittaker { gl, n1, top: n2, w1, w2, w_inv, cosets: Vec::new() };
        if u_size <= SEARCH_LIMIT {
            let gl = &iw.gl;
            iw.cosets = ParabolicShape::new(vec![1; n])?
                .u_elements(gl)?
                .map(|u| (gl.mul(&gl.inv(&u).unwrap(), &iw.w_inv), iw.psi_exp(&u)))
                .collect();
        }
        iw.check_stabilizer()?;
        Ok(iw)
    }

    pub fn gl(&self) -> &Gl {
        &self.gl
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.n1, self.gl.n() - self.n1)
    }

    fn psi_exp(&self, u: &Matrix) -> u8 {
        let p = self.gl.field().p;
        let t = self.gl.psi_n_exp(u);
        if self.w1.is_dual() {
            ((p - t as u64) % p) as u8
        } else {
            t
        }
    }

    /// `v` is well defined iff `ψ_n(v)` equals the Levi character of `ŵ v ŵ^{-1}`
    /// on `U_n ∩ ŵ^{-1} P ŵ`. Both sides are characters of that pattern group,
    /// so root subgroups suffice.
    fn check_stabilizer(&self) -> Result<()> {
        let gl = &self.gl;
        let (n, top) = (gl.n(), self.top);
        let w = weyl_block(self.n1, n - self.n1);
        let p = gl.field().p;
        for i in 0..n {
            for j in i + 1..n {
                for x in 1..gl.q() as u8 {
                    let mut v = gl.identity();
                    v.set(i, j, x);
                    let m = gl.mul(&gl.mul(&w, &v), &self.w_inv);
                    if !(top..n).all(|r| (0..top).all(|c| m.get(r, c) == 0)) {
                        continue;
                    }
                    let (a, b) = (m.block(0, 0, top), m.block(top, top, n - top));
                    let levi = (gl_psi(&a, gl, self.w1.is_dual()) + gl_psi(&b, gl, self.w1.is_dual())) % p as u32;
                    if !is_unitriangular(&a) || !is_unitriangular(&b) || levi != self.psi_exp(&v) as u32 {
                        return Err(Error::IllDefined(format!("ψ-character mismatch on root ({i},{j})")));
                    }
                }
            }
        }
        Ok(())
    }

    fn in_parabolic(&self, h: &Matrix) -> bool {
        let n = self.gl.n();
        (self.top..n).all(|r| (0..self.top).all(|c| h.get(r, c) == 0))
    }

    fn value_at(&self, h: &Matrix, t: u8) -> CyclotomicNumber {
        let a = self.w2.eval(&h.block(0, 0, self.top));
        if a.is_zero() {
            return a;
        }
        let b = self.w1.eval(&h.block(self.top, self.top, self.n1));
        (&a * &b).mul_root(self.gl.field().p as u32, t as i64)
    }

    /// The unipotent factor of the Bruhat decomposition `g = b w u`.
    fn bruhat_u(&self, g: &Matrix) -> Matrix {
        let f = self.gl.field();
        let n = self.gl.n();
        let mut rows = g.rows();
        let mut pivot = vec![usize::MAX; n];
        for i in (0..n).rev() {
            for j in (i + 1..n).rev() {
                let c = pivot[j];
                let x = rows[i][c];
                if x != 0 {
                    for k in c..n {
                        let y = f.mul(x, rows[j][k]);
                        rows[i][k] = f.sub(rows[i][k], y);
                    }
                }
            }
            let c = (0..n).find(|&c| rows[i][c] != 0).expect("singular matrix");
            let s = f.inv(rows[i][c]);
            for k in c..n {
                rows[i][k] = f.mul(s, rows[i][k]);
            }
            pivot[i] = c;
        }
        let mut u = Matrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                u.set(pivot[i], k, rows[i][k]);
            }
        }
        u
    }

    /// `φ(g)`, via the factorization `g = p ŵ u` read off from Bruhat elimination.
    pub fn eval(&self, g: &Matrix) -> CyclotomicNumber {
        let gl = &self.gl;
        let u = self.bruhat_u(g);
        let h = gl.mul(&gl.mul(g, &gl.inv(&u).unwrap()), &self.w_inv);
        if !self.in_parabolic(&h) {
            return CyclotomicNumber::zero();
        }
        self.value_at(&h, self.psi_exp(&u))
    }

    /// Like [`eval`](Self::eval), also comparing every factorization of `g` when
    /// `|U_n|` is at most [`SEARCH_LIMIT`].
    pub fn eval_checked(&self, g: &Matrix) -> Result<CyclotomicNumber> {
        let v = self.eval(g);
        for (m, t) in &self.cosets {
            let h = self.gl.mul(g, m);
            if self.in_parabolic(&h) && self.value_at(&h, *t) != v {
                return Err(Error::IllDefined(format!("two factorizations of {g:?} disagree")));
            }
        }
        Ok(v)
    }
}

fn is_unitriangular(a: &Matrix) -> bool {
    let n = a.n();
    (0..n).all(|i| (0..=i).all(|j| a.get(i, j) == u8::from(i == j)))
}

fn gl_psi(a: &Matrix, gl: &Gl, dual: bool) -> u32 {
    let f = gl.field();
    let s = (0..a.n().saturating_sub(1)).fold(0u8, |s, i| f.add(s, a.get(i, i + 1)));
    let t = f.abs_trace(s) as u64;
    (if dual { (f.p - t) % f.p } else { t }) as u32
}

/// `A v`, the intertwining operator applied to an induced Whittaker vector:
/// `(A v)(g) = Σ_{u ∈ U(n1,n2)} v̄(ŵ_{n1,n2} u g)`.
#[derive(Debug)]
pub struct IntertwinedVector<'a> {
    source: &'a InducedWhittaker,
    terms: Vec<Matrix>,
}

pub fn intertwine(v: &InducedWhittaker) -> Result<IntertwinedVector<'_>> {
    let (n1, n2) = v.shape();
    let gl = v.gl();
    let w = weyl_block(n1, n2);
    let terms = ParabolicShape::new(vec![n1, n2])?.u_elements(gl)?.map(|u| gl.mul(&w, &u)).collect();
    Ok(IntertwinedVector { source: v, terms })
}

impl IntertwinedVector<'_> {
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn eval(&self, g: &Matrix) -> CyclotomicNumber {
        let gl = self.source.gl();
        self.terms.iter().map(|t| self.source.eval(&gl.mul(t, g))).sum()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ShahidiResult {
    pub n1: usize,
    pub n2: usize,
    pub gamma_bar: CyclotomicNumber,
    /// `q^{-n1 n2/2} γ̄`.
    pub gamma: FactorValue,
    pub points_checked: usize,
    pub exhaustive: bool,
}

pub fn normalized_gamma(q: u64, n1: usize, n2: usize, gamma_bar: &CyclotomicNumber) -> FactorValue {
    FactorValue::new(q, -((n1 * n2) as i64), gamma_bar.clone()).normalized()
}

/// `γ̄^{Sh}(π1 × π2, ψ)`, asserting `A v_{π1,π2} = γ̄ v_{π2,π1}` at every evaluation point.
pub fn shahidi_gamma(
    fam: &GlFamily,
    (n1, chi1): (usize, &ClassFunction),
    (n2, chi2): (usize, &ClassFunction),
    eval: &Evaluation,
) -> Result<ShahidiResult> {
    let ctx1 = fam.context(n1).clone();
    let ctx2 = fam.context(n2).clone();
    shahidi_gamma_in(ctx1, chi1, ctx2, chi2, eval)
}

pub(crate) fn shahidi_gamma_in(
    ctx1: Arc<GroupContext>,
    chi1: &ClassFunction,
    ctx2: Arc<GroupContext>,
    chi2: &ClassFunction,
    eval: &Evaluation,
) -> Result<ShahidiResult> {
    let (n1, n2) = (ctx1.n(), ctx2.n());
    let q = ctx1.q();
    let w1 = Arc::new(WhittakerVector::new(ctx1, chi1, false)?);
    let w2 = Arc::new(WhittakerVector::new(ctx2, chi2, false)?);
    let v12 = InducedWhittaker::new(w1.clone(), w2.clone())?;
    let v21 = InducedWhittaker::new(w2, w1)?;
    let a = intertwine(&v12)?;
    let base = weyl_block(n2, n1);
    let denom = v21.eval(&base);
    if denom.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let gamma_bar = &a.eval(&base) * &denom.inv()?;
    let gl = v12.gl();
    let (points, exhaustive) = eval.points(gl, &[gl.identity(), base, weyl_block(n1, n2)]);
    points.par_iter().try_for_each(|g| -> Result<()> {
        v12.eval_checked(g)?;
        let rhs = &gamma_bar * &v21.eval_checked(g)?;
        if a.eval(g) != rhs {
            return Err(Error::NotProportional(format!("A v and γ̄ v differ at {g:?}")));
        }
        Ok(())
    })?;
    Ok(ShahidiResult {
        n1,
        n2,
        gamma: normalized_gamma(q, n1, n2, &gamma_bar),
        gamma_bar,
        points_checked: points.len(),
        exhaustive,
    })
}

/// `ω(-1)` for an irreducible character.
pub fn central_sign(chi: &ClassFunction, ctx: &GroupContext) -> Result<i128> {
    let omega = central_character(chi, ctx)?;
    if ctx.q().is_multiple_of(2) {
        return Ok(1);
    }
    Ok(if omega.exponent() % 2 == 1 { -1 } else { 1 })
}

/// `ε(σ1 × σ2, ψ) = ω_{σ2}(-1)^{n1} γ^{Sh}(σ1 × σ2^∨, ψ)` for cuspidal `σ1, σ2`.
///
/// The sign exponent is `n1`; with `n2` the identity with `ε₀` fails whenever `n1 - n2` is odd
/// and `ω_{σ2}(-1) = -1`.
pub fn eps_pair(
    fam: &GlFamily,
    (n1, chi1): (usize, &ClassFunction),
    (n2, chi2): (usize, &ClassFunction),
    eval: &Evaluation,
) -> Result<FactorValue> {
    if !fam.is_cuspidal(n1, chi1)? || !fam.is_cuspidal(n2, chi2)? {
        return Err(Error::NotCuspidal);
    }
    let sign = central_sign(chi2, fam.context(n2))?.pow(n1 as u32);
    let g = shahidi_gamma(fam, (n1, chi1), (n2, &chi2.conj()), eval)?;
    Ok(FactorValue::new(g.gamma.q, g.gamma.q_half_power, g.gamma.value.scale(sign, 1)))
}
