//! Irreducible characters of `GL_n(F_q)`, Harish-Chandra induction and restriction,
//! cuspidality, and the parameter labelling of irreducibles.

mod cache;
mod dixon;
mod harish;
mod labeling;

pub use cache::{default_cache_dir, CACHE_SCHEMA_VERSION};
pub use harish::{is_cuspidal, jacquet_restrict, parabolic_induce, LeviFunction, ParabolicData};
pub use labeling::{
    central_character, generic_degree, label_cuspidal, macdonald, macdonald_inverse, GlFamily,
    IrreducibleLabel, LabeledTable,
};

use std::ops::{Add, Mul};

use serde::{Deserialize, Serialize};

use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::gl_group::GroupContext;

/// A class function, valued in `Q(ζ_N)`, indexed by class number of a [`GroupContext`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClassFunction {
    values: Vec<CyclotomicNumber>,
}

impl ClassFunction {
    pub fn new(values: Vec<CyclotomicNumber>) -> Self {
        ClassFunction { values }
    }

    pub fn zero(r: usize) -> Self {
        ClassFunction { values: vec![CyclotomicNumber::zero(); r] }
    }

    pub fn values(&self) -> &[CyclotomicNumber] {
        &self.values
    }

    pub fn value(&self, k: usize) -> &CyclotomicNumber {
        &self.values[k]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at the identity class (class 0) as an integer, if rational and integral.
    pub fn degree(&self) -> Option<i128> {
        match self.values.first()?.as_rational()? {
            (a, 1) => Some(a),
            _ => None,
        }
    }

    pub fn conj(&self) -> Self {
        ClassFunction { values: self.values.iter().map(|v| v.conj()).collect() }
    }

    pub fn scale(&self, a: i128, b: i128) -> Self {
        ClassFunction { values: self.values.iter().map(|v| v.scale(a, b)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// `|G|^{-1} Σ_g f1(g) conj(f2(g))`, computed class by class.
    pub fn inner(&self, other: &ClassFunction, ctx: &GroupContext) -> CyclotomicNumber {
        let mut acc = CyclotomicNumber::zero();
        for (k, c) in ctx.classes().iter().enumerate() {
            let a = &self.values[k];
            let b = &other.values[k];
            if a.is_zero() || b.is_zero() {
                continue;
            }
            acc += &(a * &b.conj()).scale(c.size as i128, 1);
        }
        acc.scale(1, ctx.order() as i128)
    }

    /// `⟨f, f⟩` as an integer when it is one.
    pub fn norm_squared(&self, ctx: &GroupContext) -> Option<i128> {
        match self.inner(self, ctx).as_rational()? {
            (a, 1) => Some(a),
            _ => None,
        }
    }

    /// Canonical storage: every value at its smallest modulus.
    pub fn simplified(&self) -> Self {
        ClassFunction { values: self.values.iter().map(|v| v.simplify_modulus()).collect() }
    }

    fn sort_key(&self) -> (i128, Vec<(u32, Vec<(usize, i128, i128)>)>) {
        let vals = self.values.iter().map(|v| (v.modulus(), v.coefficients())).collect();
        (self.degree().unwrap_or(0), vals)
    }
}

impl Add for &ClassFunction {
    type Output = ClassFunction;
    fn add(self, o: &ClassFunction) -> ClassFunction {
        ClassFunction { values: self.values.iter().zip(&o.values).map(|(a, b)| a + b).collect() }
    }
}

impl Mul for &ClassFunction {
    type Output = ClassFunction;
    fn mul(self, o: &ClassFunction) -> ClassFunction {
        ClassFunction { values: self.values.iter().zip(&o.values).map(|(a, b)| a * b).collect() }
    }
}

/// The irreducible characters of one `GL_n(F_q)`, rows sorted canonically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    pub n: usize,
    pub q: u64,
    rows: Vec<ClassFunction>,
}

impl CharacterTable {
    /// Runs the class-algebra algorithm on the enumerated group.
    pub fn compute(ctx: &GroupContext) -> Result<Self> {
        let mut rows: Vec<ClassFunction> = dixon::irreducible_characters(ctx)?;
        rows.sort_by_cached_key(|c| c.sort_key());
        Ok(CharacterTable { n: ctx.n(), q: ctx.q(), rows })
    }

    pub(crate) fn from_rows(n: usize, q: u64, rows: Vec<ClassFunction>) -> Self {
        CharacterTable { n, q, rows }
    }

    pub fn rows(&self) -> &[ClassFunction] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn degrees(&self) -> Vec<i128> {
        self.rows.iter().map(|c| c.degree().expect("integral degree")).collect()
    }

    /// Multiplicities `⟨f, χ⟩` of every irreducible in `f`.
    pub fn decompose(&self, f: &ClassFunction, ctx: &GroupContext) -> Result<Vec<i128>> {
        self.rows
            .iter()
            .map(|chi| match f.inner(chi, ctx).as_rational() {
                Some((a, 1)) => Ok(a),
                _ => Err(Error::NotIrreducible),
            })
            .collect()
    }

    /// Index of the row equal to `f`.
    pub fn find(&self, f: &ClassFunction) -> Option<usize> {
        self.rows.iter().position(|r| r == f)
    }

    /// Exact first and second orthogonality and `Σ χ(1)² = |G|`.
    pub fn check_orthogonality(&self, ctx: &GroupContext) -> Result<()> {
        let r = ctx.num_classes();
        if self.rows.len() != r {
            return Err(Error::Unsupported(format!("{} rows for {} classes", self.rows.len(), r)));
        }
        let sizes: Vec<i128> = ctx.classes().iter().map(|c| c.size as i128).collect();
        let conj: Vec<ClassFunction> = self.rows.iter().map(|c| c.conj()).collect();
        let bad = |what: String| Err(Error::Unsupported(format!("orthogonality fails: {what}")));
        let order = ctx.order() as i128;
        for a in 0..r {
            for b in a..r {
                let mut acc = CyclotomicNumber::zero();
                for k in 0..r {
                    acc += &(self.rows[a].value(k) * conj[b].value(k)).scale(sizes[k], 1);
                }
                let expect = if a == b { order } else { 0 };
                if acc != CyclotomicNumber::from_int(expect) {
                    return bad(format!("rows {a},{b}"));
                }
            }
        }
        for k in 0..r {
            for l in k..r {
                let mut acc = CyclotomicNumber::zero();
                for a in 0..r {
                    acc += &(self.rows[a].value(k) * conj[a].value(l));
                }
                let expect = if k == l { ctx.classes()[k].centralizer as i128 } else { 0 };
                if acc != CyclotomicNumber::from_int(expect) {
                    return bad(format!("columns {k},{l}"));
                }
            }
        }
        let s: i128 = self.degrees().iter().map(|d| d * d).sum();
        if s != order {
            return bad("sum of squared degrees".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::ff_tower::FieldTower;

    fn table(n: usize, q: u64) -> (GroupContext, CharacterTable) {
        let t = Arc::new(FieldTower::for_rank(q, n as u32).unwrap());
        let ctx = GroupContext::new(t, n).unwrap();
        let tab = CharacterTable::compute(&ctx).unwrap();
        (ctx, tab)
    }

    #[test]
    fn small_tables() {
        let (ctx, t) = table(2, 2);
        assert_eq!(t.degrees(), vec![1, 1, 2]);
        t.check_orthogonality(&ctx).unwrap();
        let (ctx, t) = table(2, 3);
        let mut d = t.degrees();
        d.sort();
        assert_eq!(d, vec![1, 1, 2, 2, 2, 3, 3, 4]);
        t.check_orthogonality(&ctx).unwrap();
        let (ctx, t) = table(1, 5);
        assert_eq!(t.degrees(), vec![1; 4]);
        t.check_orthogonality(&ctx).unwrap();
    }

    #[test]
    fn deterministic() {
        let (_, a) = table(3, 2);
        let (_, b) = table(3, 2);
        assert_eq!(a, b);
    }
}
