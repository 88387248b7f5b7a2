use std::collections::BTreeMap;

use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::gl_group::{GroupContext, Matrix, ParabolicShape};

use super::ClassFunction;

/// Class bookkeeping for one standard parabolic `P = L U` of an enumerated `G`, shared by
/// induction and truncation.
#[derive(Debug)]
pub struct ParabolicData {
    shape: ParabolicShape,
    /// Levi classes as tuples of block class indices, sorted.
    levi_classes: Vec<Vec<usize>>,
    levi_sizes: Vec<u64>,
    levi_order: u64,
    u_order: u64,
    p_order: u64,
    /// Per `G`-class: `(levi class, #{y ∈ P ∩ C_k with that Levi image})`.
    induce_counts: Vec<Vec<(usize, u64)>>,
    /// Per Levi class `l`: `(G-class, #{u ∈ U : l u ∈ C_k})`.
    jacquet_counts: Vec<Vec<(usize, u64)>>,
    block_class_counts: Vec<usize>,
}

impl ParabolicData {
    /// `blocks[i]` must enumerate `GL_{n_i}` over the same base field as `ctx`.
    pub fn build(ctx: &GroupContext, shape: &ParabolicShape, blocks: &[&GroupContext]) -> Result<Self> {
        let gl = ctx.gl();
        if shape.n() != ctx.n()
            || blocks.len() != shape.parts().len()
            || blocks.iter().zip(shape.parts()).any(|(b, &k)| b.n() != k || b.q() != ctx.q())
        {
            return Err(Error::ShapeMismatch(format!("{:?} for GL_{}", shape.parts(), ctx.n())));
        }
        let block_class_counts: Vec<usize> = blocks.iter().map(|b| b.num_classes()).collect();
        let mut levi_classes: Vec<Vec<usize>> = vec![Vec::new()];
        for &c in &block_class_counts {
            levi_classes = levi_classes
                .into_iter()
                .flat_map(|p| {
                    (0..c).map(move |i| {
                        let mut v = p.clone();
                        v.push(i);
                        v
                    })
                })
                .collect();
        }
        let levi_index = |t: &[usize]| -> usize {
            t.iter().zip(&block_class_counts).fold(0, |acc, (&i, &c)| acc * c + i)
        };
        let levi_sizes: Vec<u64> = levi_classes
            .iter()
            .map(|t| t.iter().zip(blocks).map(|(&i, b)| b.classes()[i].size).product())
            .collect();
        let us: Vec<Matrix> = shape.u_elements(gl)?.collect();
        let r = ctx.num_classes();
        let mut induce: Vec<BTreeMap<usize, u64>> = vec![BTreeMap::new(); r];
        let total: usize = blocks.iter().map(|b| b.elements().len()).product();
        for flat in 0..total {
            let mut rest = flat;
            let mut bl = vec![Matrix::identity(1); blocks.len()];
            for (i, b) in blocks.iter().enumerate().rev() {
                let m = b.elements().len();
                bl[i] = b.elements()[rest % m];
                rest /= m;
            }
            let lclass: Vec<usize> = bl.iter().zip(blocks).map(|(m, b)| b.class_of(m)).collect();
            let li = levi_index(&lclass);
            let l = gl.block_diag(&bl);
            for u in &us {
                let k = ctx.class_of(&gl.mul(&l, u));
                *induce[k].entry(li).or_default() += 1;
            }
        }
        let jacquet_counts = levi_classes
            .iter()
            .map(|t| {
                let reps: Vec<Matrix> = t.iter().zip(blocks).map(|(&i, b)| b.classes()[i].rep).collect();
                let l = gl.block_diag(&reps);
                let mut m: BTreeMap<usize, u64> = BTreeMap::new();
                for u in &us {
                    *m.entry(ctx.class_of(&gl.mul(&l, u))).or_default() += 1;
                }
                m.into_iter().collect()
            })
            .collect();
        let levi_order: u64 = blocks.iter().map(|b| b.order()).product();
        Ok(ParabolicData {
            shape: shape.clone(),
            levi_classes,
            levi_sizes,
            levi_order,
            u_order: us.len() as u64,
            p_order: levi_order * us.len() as u64,
            induce_counts: induce.into_iter().map(|m| m.into_iter().collect()).collect(),
            jacquet_counts,
            block_class_counts,
        })
    }

    pub fn shape(&self) -> &ParabolicShape {
        &self.shape
    }
    pub fn levi_classes(&self) -> &[Vec<usize>] {
        &self.levi_classes
    }
    pub fn u_order(&self) -> u64 {
        self.u_order
    }
    pub fn p_order(&self) -> u64 {
        self.p_order
    }
}

/// A class function on the Levi `L = Π GL_{n_i}`, indexed like [`ParabolicData::levi_classes`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviFunction {
    pub values: Vec<CyclotomicNumber>,
}

impl LeviFunction {
    /// The tensor product `χ_1 ⊗ … ⊗ χ_r`.
    pub fn tensor(data: &ParabolicData, blocks: &[&ClassFunction]) -> Result<Self> {
        if blocks.len() != data.block_class_counts.len()
            || blocks.iter().zip(&data.block_class_counts).any(|(c, &n)| c.len() != n)
        {
            return Err(Error::ShapeMismatch("block characters do not match the Levi".into()));
        }
        let values = data
            .levi_classes
            .iter()
            .map(|t| {
                t.iter().zip(blocks).fold(CyclotomicNumber::one(), |acc, (&i, c)| &acc * c.value(i))
            })
            .collect();
        Ok(LeviFunction { values })
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// `|L|^{-1} Σ_l f1(l) conj(f2(l))`.
    pub fn inner(&self, other: &LeviFunction, data: &ParabolicData) -> CyclotomicNumber {
        let mut acc = CyclotomicNumber::zero();
        for (i, s) in data.levi_sizes.iter().enumerate() {
            acc += &(&self.values[i] * &other.values[i].conj()).scale(*s as i128, 1);
        }
        acc.scale(1, data.levi_order as i128)
    }
}

/// Harish-Chandra induction of a Levi class function (inflated to `P`) up to `G`.
pub fn induce_levi(ctx: &GroupContext, data: &ParabolicData, f: &LeviFunction) -> ClassFunction {
    let values = data
        .induce_counts
        .iter()
        .enumerate()
        .map(|(k, entries)| {
            let mut acc = CyclotomicNumber::zero();
            for &(li, c) in entries {
                if !f.values[li].is_zero() {
                    acc += &f.values[li].scale(c as i128, 1);
                }
            }
            let cent = ctx.classes()[k].centralizer as i128;
            acc.scale(cent, data.p_order as i128)
        })
        .collect();
    ClassFunction::new(values)
}

/// `χ_1 ⊙ … ⊙ χ_r`.
pub fn parabolic_induce(
    ctx: &GroupContext,
    data: &ParabolicData,
    blocks: &[&ClassFunction],
) -> Result<ClassFunction> {
    Ok(induce_levi(ctx, data, &LeviFunction::tensor(data, blocks)?))
}

/// `l ↦ |U|^{-1} Σ_u χ(l u)`.
pub fn jacquet_restrict(chi: &ClassFunction, data: &ParabolicData) -> LeviFunction {
    let values = data
        .jacquet_counts
        .iter()
        .map(|entries| {
            let mut acc = CyclotomicNumber::zero();
            for &(k, c) in entries {
                acc += &chi.value(k).scale(c as i128, 1);
            }
            acc.scale(1, data.u_order as i128)
        })
        .collect();
    LeviFunction { values }
}

/// Whether an irreducible character has vanishing truncation along every given proper parabolic.
pub fn is_cuspidal(chi: &ClassFunction, ctx: &GroupContext, proper: &[&ParabolicData]) -> Result<bool> {
    if chi.norm_squared(ctx) != Some(1) {
        return Err(Error::NotIrreducible);
    }
    Ok(proper
        .iter()
        .filter(|d| d.shape.is_proper())
        .all(|d| jacquet_restrict(chi, d).is_zero()))
}
