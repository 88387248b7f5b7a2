use crate::error::{Error, Result};
use crate::ff_tower::{BaseField, FieldElem, FieldTower};

use super::matrix::{Gl, Matrix};

/// Coordinates of `k_n` in the basis `1, y, …, y^{n-1}` with `y = g_n`, used to realise
/// `k_n^×` as an elliptic torus in `GL_n(k)`.
#[derive(Clone, Debug)]
pub struct EllipticEmbedding {
    n: u32,
    /// `coords[a]` for `g_n^a`.
    coords: Vec<Vec<u8>>,
    unit_order: u64,
}

impl EllipticEmbedding {
    pub fn new(tower: &FieldTower, field: &BaseField, n: u32) -> Result<Self> {
        if !tower.top_level().is_multiple_of(n) {
            return Err(Error::LevelMismatch(format!("level {n} not in tower")));
        }
        let q = tower.q();
        let unit_order = tower.unit_order(n);
        let y = tower.generator(n)?;
        let powers: Vec<FieldElem> = (0..n as u64).map(|i| tower.pow(y, i)).collect();
        let mut coords = vec![Vec::new(); unit_order as usize];
        for code in 1..q.pow(n) {
            let mut c = Vec::with_capacity(n as usize);
            let mut x = code;
            for _ in 0..n {
                c.push((x % q) as u8);
                x /= q;
            }
            let mut acc = FieldElem::zero(n);
            for (i, &ci) in c.iter().enumerate() {
                let a = tower.embed(field.to_elem(ci), n)?;
                acc = tower.add(acc, tower.mul(a, powers[i])?)?;
            }
            let log = acc.log.expect("nonzero combination");
            coords[log as usize] = c;
        }
        Ok(EllipticEmbedding { n, coords, unit_order })
    }

    pub fn level(&self) -> u32 {
        self.n
    }

    /// Matrix of multiplication by `x` acting on column coordinate vectors.
    pub fn embed(&self, gl: &Gl, x: FieldElem) -> Result<Matrix> {
        if x.level != self.n || gl.n() != self.n as usize {
            return Err(Error::LevelMismatch(format!("element of level {} into GL_{}", x.level, gl.n())));
        }
        let a = x.log.ok_or(Error::ZeroElement)?;
        let n = self.n as usize;
        let mut m = Matrix::zero(n);
        for j in 0..n {
            let c = &self.coords[((a + j as u64) % self.unit_order) as usize];
            for (i, &ci) in c.iter().enumerate() {
                m.set(i, j, ci);
            }
        }
        Ok(m)
    }

    /// Coordinates of a nonzero element.
    pub fn coordinates(&self, log: u64) -> &[u8] {
        &self.coords[(log % self.unit_order) as usize]
    }
}
