use serde::Serialize;

use crate::error::{Error, Result};

use super::matrix::{gl_order, Gl, Matrix};

/// A composition `(n_1, …, n_r)` of `n` and its standard parabolic `P = L ⋉ U`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ParabolicShape {
    parts: Vec<usize>,
}

impl ParabolicShape {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::ShapeMismatch(format!("invalid composition {parts:?}")));
        }
        Ok(ParabolicShape { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn is_proper(&self) -> bool {
        self.parts.len() > 1
    }

    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.parts
            .iter()
            .map(|&k| {
                let o = acc;
                acc += k;
                o
            })
            .collect()
    }

    /// Block index of each row.
    fn block_of(&self) -> Vec<usize> {
        self.parts.iter().enumerate().flat_map(|(b, &k)| std::iter::repeat_n(b, k)).collect()
    }

    /// Positions `(i, j)` strictly above the block diagonal.
    pub fn u_positions(&self) -> Vec<(usize, usize)> {
        let b = self.block_of();
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if b[j] > b[i] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn u_order(&self, q: u64) -> u64 {
        q.pow(self.u_positions().len() as u32)
    }

    pub fn l_order(&self, q: u64) -> u64 {
        self.parts.iter().map(|&k| gl_order(k, q)).product()
    }

    pub fn p_order(&self, q: u64) -> u64 {
        self.l_order(q) * self.u_order(q)
    }

    fn check(&self, gl: &Gl) -> Result<()> {
        if self.n() != gl.n() {
            return Err(Error::ShapeMismatch(format!("{:?} is not a composition of {}", self.parts, gl.n())));
        }
        Ok(())
    }

    pub fn contains_p(&self, g: &Matrix) -> bool {
        let b = self.block_of();
        let n = self.n();
        (0..n).all(|i| (0..n).all(|j| b[j] >= b[i] || g.get(i, j) == 0))
    }

    pub fn contains_l(&self, g: &Matrix) -> bool {
        let b = self.block_of();
        let n = self.n();
        (0..n).all(|i| (0..n).all(|j| b[j] == b[i] || g.get(i, j) == 0))
    }

    pub fn contains_u(&self, g: &Matrix) -> bool {
        let b = self.block_of();
        let n = self.n();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let x = g.get(i, j);
                if b[j] > b[i] {
                    true
                } else if i == j {
                    x == 1
                } else {
                    x == 0
                }
            })
        })
    }

    /// Diagonal blocks of `g`.
    pub fn blocks(&self, g: &Matrix) -> Vec<Matrix> {
        self.offsets().iter().zip(&self.parts).map(|(&o, &k)| g.block(o, o, k)).collect()
    }

    /// Every element of `U`, in canonical order.
    pub fn u_elements<'a>(&self, gl: &'a Gl) -> Result<impl Iterator<Item = Matrix> + 'a> {
        self.check(gl)?;
        let pos = self.u_positions();
        let q = gl.q();
        let count = q.pow(pos.len() as u32);
        Ok((0..count).map(move |mut code| {
            let mut m = gl.identity();
            for &(i, j) in pos.iter().rev() {
                m.set(i, j, (code % q) as u8);
                code /= q;
            }
            m
        }))
    }

    /// Every element of `L`, in canonical order.
    pub fn l_elements(&self, gl: &Gl) -> Result<Vec<Matrix>> {
        self.check(gl)?;
        let per_block: Vec<Vec<Matrix>> = self
            .parts
            .iter()
            .map(|&k| enumerate_gl(&Gl::new(k, gl.field_arc().clone())))
            .collect();
        let mut out = vec![Vec::new()];
        for choices in &per_block {
            let mut next = Vec::with_capacity(out.len() * choices.len());
            for prefix in &out {
                for c in choices {
                    let mut v: Vec<Matrix> = prefix.clone();
                    v.push(*c);
                    next.push(v);
                }
            }
            out = next;
        }
        let mut mats: Vec<Matrix> = out.iter().map(|bs| gl.block_diag(bs)).collect();
        mats.sort();
        Ok(mats)
    }

    /// Every element of `P` as `l·u`.
    pub fn p_elements(&self, gl: &Gl) -> Result<Vec<Matrix>> {
        let ls = self.l_elements(gl)?;
        let us: Vec<Matrix> = self.u_elements(gl)?.collect();
        let mut out = Vec::with_capacity(ls.len() * us.len());
        for l in &ls {
            for u in &us {
                out.push(gl.mul(l, u));
            }
        }
        Ok(out)
    }

    /// All compositions of `n`.
    pub fn all(n: usize) -> Vec<ParabolicShape> {
        fn rec(n: usize, prefix: &mut Vec<usize>, out: &mut Vec<ParabolicShape>) {
            if n == 0 {
                out.push(ParabolicShape { parts: prefix.clone() });
                return;
            }
            for k in 1..=n {
                prefix.push(k);
                rec(n - k, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, &mut Vec::new(), &mut out);
        out
    }

    /// Proper compositions `(k, n-k)`; cuspidality is decided by these maximal parabolics.
    pub fn maximal(n: usize) -> Vec<ParabolicShape> {
        (1..n).map(|k| ParabolicShape { parts: vec![k, n - k] }).collect()
    }
}

/// All invertible matrices in canonical order, by scanning codes.
pub fn enumerate_gl(gl: &Gl) -> Vec<Matrix> {
    let space = gl.code_space().expect("code space fits");
    (0..space).map(|c| gl.decode(c)).filter(|m| gl.is_invertible(m)).collect()
}
