use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::char_table::ClassFunction;
use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::gl_group::{GroupContext, Matrix, ParabolicShape};

/// `⟨χ|_{U_n}, ψ_n⟩ = 1` (or with `ψ^{-1}` when `dual`).
pub fn is_generic(ctx: &GroupContext, chi: &ClassFunction, dual: bool) -> Result<bool> {
    Ok(whittaker_multiplicity(ctx, chi, dual)? == CyclotomicNumber::one())
}

fn whittaker_multiplicity(ctx: &GroupContext, chi: &ClassFunction, dual: bool) -> Result<CyclotomicNumber> {
    let gl = ctx.gl();
    let p = gl.field().p;
    let shape = ParabolicShape::new(vec![1; ctx.n()])?;
    let mut counts: HashMap<(usize, u8), i128> = HashMap::new();
    let mut total = 0i128;
    for u in shape.u_elements(gl)? {
        let t = psi_exp(gl.psi_n_exp(&u), p, !dual);
        *counts.entry((ctx.class_of(&u), t)).or_default() += 1;
        total += 1;
    }
    let mut acc = CyclotomicNumber::zero();
    for ((k, t), c) in counts {
        acc += &chi.value(k).mul_root(p as u32, t as i64).scale(c, 1);
    }
    Ok(acc.scale(1, total))
}

#[inline]
fn psi_exp(t: u8, p: u64, dual: bool) -> u8 {
    if dual { ((p - t as u64) % p) as u8 } else { t }
}

/// The Whittaker vector of `π` inside its Whittaker model:
/// `F(x) = |U|^{-1} Σ_u ψ_n(u) χ(u^{-1} x)`, bi-equivariant under `U_n` with `F(1) = 1`.
#[derive(Debug)]
pub struct WhittakerVector {
    ctx: Arc<GroupContext>,
    chi: ClassFunction,
    dual: bool,
    /// `(u^{-1}, exponent of ψ_n(u))`.
    us: Vec<(Matrix, u8)>,
    memo: Mutex<HashMap<Matrix, CyclotomicNumber>>,
}

impl WhittakerVector {
    /// `dual` selects `ψ^{-1}` in place of `ψ`.
    pub fn new(ctx: Arc<GroupContext>, chi: &ClassFunction, dual: bool) -> Result<Self> {
        if !is_generic(&ctx, chi, dual)? {
            return Err(Error::NotGeneric);
        }
        let gl = ctx.gl();
        let p = gl.field().p;
        let shape = ParabolicShape::new(vec![1; ctx.n()])?;
        let us = shape
            .u_elements(gl)?
            .map(|u| (gl.inv(&u).unwrap(), psi_exp(gl.psi_n_exp(&u), p, dual)))
            .collect();
        Ok(WhittakerVector { ctx, chi: chi.clone(), dual, us, memo: Mutex::new(HashMap::new()) })
    }

    pub fn context(&self) -> &Arc<GroupContext> {
        &self.ctx
    }
    pub fn character(&self) -> &ClassFunction {
        &self.chi
    }
    pub fn is_dual(&self) -> bool {
        self.dual
    }

    pub fn eval(&self, x: &Matrix) -> CyclotomicNumber {
        if let Some(v) = self.memo.lock().unwrap().get(x) {
            return v.clone();
        }
        let gl = self.ctx.gl();
        let p = gl.field().p;
        let mut counts: HashMap<usize, Vec<i128>> = HashMap::new();
        for (ui, t) in &self.us {
            let k = self.ctx.class_of(&gl.mul(ui, x));
            counts.entry(k).or_insert_with(|| vec![0; p as usize])[*t as usize] += 1;
        }
        let mut keys: Vec<usize> = counts.keys().copied().collect();
        keys.sort_unstable();
        let mut acc = CyclotomicNumber::zero();
        for k in keys {
            let v = self.chi.value(k);
            if v.is_zero() {
                continue;
            }
            let c = &counts[&k];
            let s = CyclotomicNumber::from_exponents(p as u32, c.iter().enumerate().map(|(t, &m)| (t as u64, m)), 1);
            acc += &(v * &s);
        }
        let value = acc.scale(1, self.us.len() as i128);
        self.memo.lock().unwrap().insert(*x, value.clone());
        value
    }
}

/// The Whittaker model of `π`: right translates `R(g_i) F` of the Whittaker vector forming a
/// basis, with the evaluation points that certify their independence.
#[derive(Debug)]
pub struct WhittakerModel {
    pub vector: Arc<WhittakerVector>,
    pub translates: Vec<Matrix>,
    pub points: Vec<Matrix>,
}

/// Incremental row echelon form over cyclotomic numbers.
#[derive(Debug, Default)]
pub(crate) struct Echelon {
    rows: Vec<(usize, Vec<CyclotomicNumber>)>,
}

impl Echelon {
    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` and keeps it if independent; returns whether it was kept.
    pub(crate) fn insert(&mut self, mut row: Vec<CyclotomicNumber>) -> bool {
        for (c, r) in &self.rows {
            if !row[*c].is_zero() {
                let f = row[*c].clone();
                for j in 0..row.len() {
                    if !r[j].is_zero() {
                        let t = &f * &r[j];
                        row[j] = &row[j] - &t;
                    }
                }
            }
        }
        let Some(c) = row.iter().position(|x| !x.is_zero()) else { return false };
        let inv = row[c].inv().unwrap();
        let row: Vec<CyclotomicNumber> = row.iter().map(|x| x * &inv).collect();
        for (_, r) in self.rows.iter_mut() {
            if !r[c].is_zero() {
                let f = r[c].clone();
                for j in 0..row.len() {
                    if !row[j].is_zero() {
                        let t = &f * &row[j];
                        r[j] = &r[j] - &t;
                    }
                }
            }
        }
        self.rows.push((c, row));
        true
    }
}

pub(crate) fn cyclotomic_rank(rows: &[Vec<CyclotomicNumber>]) -> usize {
    let mut e = Echelon::default();
    for r in rows {
        e.insert(r.clone());
    }
    e.rank()
}

impl WhittakerModel {
    pub fn dimension(&self) -> usize {
        self.translates.len()
    }

    fn rows(&self, fs: &[Matrix]) -> Vec<Vec<CyclotomicNumber>> {
        let gl = self.vector.context().gl();
        fs.iter()
            .map(|g| self.points.iter().map(|x| self.vector.eval(&gl.mul(x, g))).collect())
            .collect()
    }

    /// Dimension of the `ψ_n`-eigenspace of the model, from the projections of the basis.
    pub fn whittaker_line_dimension(&self) -> usize {
        let ctx = self.vector.context();
        let gl = ctx.gl();
        let p = gl.field().p;
        let shape = ParabolicShape::new(vec![1; ctx.n()]).unwrap();
        let us: Vec<(Matrix, u8)> =
            shape.u_elements(gl).unwrap().map(|u| (u, psi_exp(gl.psi_n_exp(&u), p, !self.vector.dual))).collect();
        // projection of R(g)F is Σ_u ψ^{-1}(u) R(u g) F, evaluated at each point
        let rows: Vec<Vec<CyclotomicNumber>> = self
            .translates
            .iter()
            .map(|g| {
                self.points
                    .iter()
                    .map(|x| {
                        let mut acc = CyclotomicNumber::zero();
                        for (u, t) in &us {
                            let v = self.vector.eval(&gl.mul(&gl.mul(x, u), g));
                            acc += &v.mul_root(p as u32, *t as i64);
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        cyclotomic_rank(&rows)
    }
}

/// Builds the Whittaker model of a generic irreducible character, evaluating on all of `G`.
pub fn whittaker_model(ctx: Arc<GroupContext>, chi: &ClassFunction) -> Result<WhittakerModel> {
    if chi.norm_squared(&ctx) != Some(1) {
        return Err(Error::NotIrreducible);
    }
    let dim = chi.degree().ok_or(Error::NotIrreducible)? as usize;
    let vector = Arc::new(WhittakerVector::new(ctx.clone(), chi, false)?);
    let points: Vec<Matrix> = ctx.elements().to_vec();
    let mut model = WhittakerModel { vector, translates: Vec::new(), points };
    let mut ech = Echelon::default();
    for g in ctx.elements() {
        if ech.rank() == dim {
            break;
        }
        if ech.insert(model.rows(&[*g]).pop().unwrap()) {
            model.translates.push(*g);
        }
    }
    let extra = ctx.elements().iter().rev().take(2 * dim + 2);
    for g in extra {
        if ech.insert(model.rows(&[*g]).pop().unwrap()) {
            return Err(Error::Unsupported("Whittaker model exceeds the degree".into()));
        }
    }
    if ech.rank() != dim {
        return Err(Error::Unsupported("Whittaker model dimension differs from the degree".into()));
    }
    Ok(model)
}
