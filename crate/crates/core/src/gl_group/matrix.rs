use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ff_tower::BaseField;

/// Largest matrix size supported by [`Matrix`].
pub const MAX_N: usize = 6;

/// A square matrix over `k`, entries as [`BaseField`] indices, stored row-major.
///
/// The derived order is lexicographic in row-major entries, which is the canonical group order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    n: u8,
    e: [u8; MAX_N * MAX_N],
}

impl Matrix {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_N && n > 0, "matrix size {n} unsupported");
        Matrix { n: n as u8, e: [0; MAX_N * MAX_N] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds from rows of field indices.
    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let n = rows.len();
        let mut m = Self::zero(n);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), n);
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.e[i * self.n as usize + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u8) {
        self.e[i * self.n as usize + j] = x;
    }

    pub fn entries(&self) -> &[u8] {
        &self.e[..self.n() * self.n()]
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        (0..self.n()).map(|i| (0..self.n()).map(|j| self.get(i, j)).collect()).collect()
    }

    /// Square sub-block starting at `(r, c)` of size `k`.
    pub fn block(&self, r: usize, c: usize, k: usize) -> Matrix {
        let mut m = Matrix::zero(k);
        for i in 0..k {
            for j in 0..k {
                m.set(i, j, self.get(r + i, c + j));
            }
        }
        m
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = *self;
        for i in 0..self.n() {
            for j in 0..self.n() {
                m.set(i, j, self.get(j, i));
            }
        }
        m
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

/// Arithmetic in `GL_n(k)` and `M_n(k)` for one `n`.
#[derive(Clone, Debug)]
pub struct Gl {
    n: usize,
    field: Arc<BaseField>,
}

impl Gl {
    pub fn new(n: usize, field: Arc<BaseField>) -> Self {
        assert!(n > 0 && n <= MAX_N);
        Gl { n, field }
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn q(&self) -> u64 {
        self.field.q
    }
    pub fn field(&self) -> &BaseField {
        &self.field
    }
    pub fn field_arc(&self) -> &Arc<BaseField> {
        &self.field
    }

    /// `Π_{i<n} (q^n - q^i)`.
    pub fn order(&self) -> u64 {
        gl_order(self.n, self.q())
    }

    pub fn identity(&self) -> Matrix {
        Matrix::identity(self.n)
    }

    /// Scalar matrix `a·I`.
    pub fn scalar(&self, a: u8) -> Matrix {
        let mut m = Matrix::zero(self.n);
        for i in 0..self.n {
            m.set(i, i, a);
        }
        m
    }

    pub fn mul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        let n = self.n;
        let f = &self.field;
        let mut c = Matrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let x = a.get(i, k);
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    let y = b.get(k, j);
                    if y != 0 {
                        c.set(i, j, f.add(c.get(i, j), f.mul(x, y)));
                    }
                }
            }
        }
        c
    }

    pub fn add(&self, a: &Matrix, b: &Matrix) -> Matrix {
        let mut c = *a;
        for i in 0..self.n {
            for j in 0..self.n {
                c.set(i, j, self.field.add(a.get(i, j), b.get(i, j)));
            }
        }
        c
    }

    pub fn scale(&self, a: &Matrix, s: u8) -> Matrix {
        let mut c = *a;
        for x in c.e[..self.n * self.n].iter_mut() {
            *x = self.field.mul(*x, s);
        }
        c
    }

    /// Row reduction: returns the rank and, when square and full rank, the inverse.
    fn reduce(&self, a: &Matrix, want_inverse: bool) -> (usize, Option<Matrix>) {
        let n = self.n;
        let f = &self.field;
        let mut m = *a;
        let mut inv = self.identity();
        let mut rank = 0;
        for col in 0..n {
            let Some(piv) = (rank..n).find(|&r| m.get(r, col) != 0) else { continue };
            if piv != rank {
                for j in 0..n {
                    let (x, y) = (m.get(piv, j), m.get(rank, j));
                    m.set(piv, j, y);
                    m.set(rank, j, x);
                    let (x, y) = (inv.get(piv, j), inv.get(rank, j));
                    inv.set(piv, j, y);
                    inv.set(rank, j, x);
                }
            }
            let s = f.inv(m.get(rank, col));
            for j in 0..n {
                m.set(rank, j, f.mul(m.get(rank, j), s));
                inv.set(rank, j, f.mul(inv.get(rank, j), s));
            }
            for r in 0..n {
                if r == rank {
                    continue;
                }
                let c = m.get(r, col);
                if c == 0 {
                    continue;
                }
                let nc = f.neg(c);
                for j in 0..n {
                    m.set(r, j, f.add(m.get(r, j), f.mul(nc, m.get(rank, j))));
                    inv.set(r, j, f.add(inv.get(r, j), f.mul(nc, inv.get(rank, j))));
                }
            }
            rank += 1;
        }
        let inverse = (want_inverse && rank == n).then_some(inv);
        (rank, inverse)
    }

    pub fn rank(&self, a: &Matrix) -> usize {
        self.reduce(a, false).0
    }

    pub fn inv(&self, a: &Matrix) -> Result<Matrix> {
        self.reduce(a, true).1.ok_or(Error::Singular)
    }

    pub fn is_invertible(&self, a: &Matrix) -> bool {
        self.rank(a) == self.n
    }

    pub fn det(&self, a: &Matrix) -> u8 {
        let n = self.n;
        let f = &self.field;
        let mut m = *a;
        let mut d = f.one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| m.get(r, col) != 0) else { return 0 };
            if piv != col {
                for j in 0..n {
                    let (x, y) = (m.get(piv, j), m.get(col, j));
                    m.set(piv, j, y);
                    m.set(col, j, x);
                }
                d = f.neg(d);
            }
            let p = m.get(col, col);
            d = f.mul(d, p);
            let s = f.inv(p);
            for r in col + 1..n {
                let c = m.get(r, col);
                if c == 0 {
                    continue;
                }
                let factor = f.neg(f.mul(c, s));
                for j in col..n {
                    m.set(r, j, f.add(m.get(r, j), f.mul(factor, m.get(col, j))));
                }
            }
        }
        d
    }

    pub fn pow(&self, a: &Matrix, mut e: u64) -> Matrix {
        let mut base = *a;
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `h g h^{-1}`.
    pub fn conjugate(&self, h: &Matrix, g: &Matrix, h_inv: &Matrix) -> Matrix {
        self.mul(&self.mul(h, g), h_inv)
    }

    pub fn trace(&self, a: &Matrix) -> u8 {
        (0..self.n).fold(0, |acc, i| self.field.add(acc, a.get(i, i)))
    }

    /// Multiplicative order of an invertible matrix.
    pub fn element_order(&self, a: &Matrix) -> u64 {
        let id = self.identity();
        let mut x = *a;
        let mut k = 1;
        while x != id {
            x = self.mul(&x, a);
            k += 1;
        }
        k
    }

    /// Base-`q` code with entry `(0,0)` most significant.
    pub fn code(&self, a: &Matrix) -> u64 {
        a.entries().iter().fold(0u64, |acc, &x| acc * self.q() + x as u64)
    }

    pub fn decode(&self, mut code: u64) -> Matrix {
        let n = self.n;
        let mut m = Matrix::zero(n);
        for idx in (0..n * n).rev() {
            m.e[idx] = (code % self.q()) as u8;
            code /= self.q();
        }
        m
    }

    /// `q^{n²}`, the size of the code space, if it fits.
    pub fn code_space(&self) -> Option<u64> {
        self.q().checked_pow((self.n * self.n) as u32)
    }

    pub fn is_upper_unitriangular(&self, u: &Matrix) -> bool {
        (0..self.n).all(|i| u.get(i, i) == 1 && (0..i).all(|j| u.get(i, j) == 0))
    }

    /// Exponent of `ζ_p` in `ψ(Tr g)`.
    pub fn psi_trace_exp(&self, g: &Matrix) -> u8 {
        self.field.abs_trace(self.trace(g))
    }

    /// Exponent of `ζ_p` in `ψ_n(u) = ψ(u_{12} + u_{23} + … + u_{n-1,n})`; no check on `u`.
    pub fn psi_n_exp(&self, u: &Matrix) -> u8 {
        let s = (0..self.n - 1).fold(0, |acc, i| self.field.add(acc, u.get(i, i + 1)));
        self.field.abs_trace(s)
    }

    /// Block-diagonal matrix from square blocks.
    pub fn block_diag(&self, blocks: &[Matrix]) -> Matrix {
        let mut m = Matrix::zero(self.n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n() {
                for j in 0..b.n() {
                    m.set(off + i, off + j, b.get(i, j));
                }
            }
            off += b.n();
        }
        assert_eq!(off, self.n, "blocks do not fill the matrix");
        m
    }

    /// Generators of `GL_n(k)`: elementary transvections and one diagonal generator.
    pub fn generators(&self) -> Vec<Matrix> {
        let mut gens = Vec::new();
        let q = self.q() as u8;
        if q > 2 {
            let mut d = self.identity();
            d.set(0, 0, 2);
            gens.push(d);
        }
        for i in 0..self.n {
            for j in 0..self.n {
                if i == j {
                    continue;
                }
                for a in 1..q {
                    let mut t = self.identity();
                    t.set(i, j, a);
                    gens.push(t);
                }
            }
        }
        gens
    }
}

/// `|GL_n(F_q)|`.
pub fn gl_order(n: usize, q: u64) -> u64 {
    let qn = q.pow(n as u32);
    (0..n as u32).map(|i| qn - q.pow(i)).product()
}
