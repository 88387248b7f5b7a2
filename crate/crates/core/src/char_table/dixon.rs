//! Class-algebra character table computation over a prime field `F_ℓ`, `ℓ ≡ 1 mod exp(G)`,
//! followed by exact lifting of eigenvalue multiplicities to cyclotomic values.

use rayon::prelude::*;

use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::gl_group::GroupContext;

use super::ClassFunction;

#[inline]
fn mulm(a: u64, b: u64, l: u64) -> u64 {
    (a as u128 * b as u128 % l as u128) as u64
}

fn powm(mut a: u64, mut e: u64, l: u64) -> u64 {
    let mut acc = 1;
    a %= l;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, a, l);
        }
        a = mulm(a, a, l);
        e >>= 1;
    }
    acc
}

fn invm(a: u64, l: u64) -> u64 {
    assert!(!a.is_multiple_of(l));
    powm(a, l - 2, l)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime `ℓ ≡ 1 mod e` with `ℓ > 2√|G|`.
pub(crate) fn choose_prime(e: u64, order: u64) -> u64 {
    let bound = 2 * ((order as f64).sqrt().ceil() as u64) + 1;
    let mut l = e + 1;
    while l <= bound || !is_prime(l) {
        l += e;
    }
    l
}

/// An element of order exactly `e` in `F_ℓ^×`.
fn primitive_root_of_order(e: u64, l: u64) -> u64 {
    let factors: Vec<u64> = (2..=e).filter(|&p| e.is_multiple_of(p) && is_prime(p)).collect();
    (2..l)
        .map(|g| powm(g, (l - 1) / e, l))
        .find(|&z| factors.iter().all(|&p| powm(z, e / p, l) != 1))
        .expect("F_ℓ^× is cyclic of order divisible by e")
}

/// `a[j][l][k] = #{x ∈ C_j : x^{-1} z_k ∈ C_l}`, the class-algebra structure constants.
fn structure_constants(ctx: &GroupContext) -> Vec<Vec<Vec<u64>>> {
    let r = ctx.num_classes();
    let gl = ctx.gl();
    let elems = ctx.elements();
    let pairs: Vec<(usize, crate::gl_group::Matrix)> =
        elems.par_iter().map(|x| (ctx.class_of(x), gl.inv(x).unwrap())).collect();
    let per_k: Vec<Vec<u64>> = (0..r)
        .into_par_iter()
        .map(|k| {
            let z = ctx.classes()[k].rep;
            let mut counts = vec![0u64; r * r];
            for (j, xi) in &pairs {
                let l = ctx.class_of(&gl.mul(xi, &z));
                counts[j * r + l] += 1;
            }
            counts
        })
        .collect();
    let mut a = vec![vec![vec![0u64; r]; r]; r];
    for (k, counts) in per_k.iter().enumerate() {
        for j in 0..r {
            for l in 0..r {
                a[j][l][k] = counts[j * r + l];
            }
        }
    }
    a
}

/// Dense matrix over `F_ℓ`, row-major.
#[derive(Clone)]
struct Mat {
    rows: usize,
    cols: usize,
    v: Vec<u64>,
}

impl Mat {
    fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, v: vec![0; rows * cols] }
    }
    fn at(&self, i: usize, j: usize) -> u64 {
        self.v[i * self.cols + j]
    }
    fn set(&mut self, i: usize, j: usize, x: u64) {
        self.v[i * self.cols + j] = x;
    }
    fn mul(&self, o: &Mat, l: u64) -> Mat {
        let mut c = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let x = (c.at(i, j) + mulm(a, o.at(k, j), l)) % l;
                    c.set(i, j, x);
                }
            }
        }
        c
    }
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(m: &mut Mat, l: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        let Some(p) = (row..m.rows).find(|&r| m.at(r, col) != 0) else { continue };
        for j in 0..m.cols {
            let (a, b) = (m.at(p, j), m.at(row, j));
            m.set(p, j, b);
            m.set(row, j, a);
        }
        let s = invm(m.at(row, col), l);
        for j in 0..m.cols {
            let x = mulm(m.at(row, j), s, l);
            m.set(row, j, x);
        }
        for r in 0..m.rows {
            if r != row && m.at(r, col) != 0 {
                let f = m.at(r, col);
                for j in 0..m.cols {
                    let x = (m.at(r, j) + l - mulm(f, m.at(row, j), l)) % l;
                    m.set(r, j, x);
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.rows {
            break;
        }
    }
    pivots
}

/// Basis of the null space, as columns of the returned matrix.
fn kernel(m: &Mat, l: u64) -> Mat {
    let mut r = m.clone();
    let pivots = rref(&mut r, l);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let mut k = Mat::zeros(m.cols, free.len());
    for (fi, &f) in free.iter().enumerate() {
        k.set(f, fi, 1);
        for (pi, &p) in pivots.iter().enumerate() {
            k.set(p, fi, (l - r.at(pi, f)) % l);
        }
    }
    k
}

/// Characteristic polynomial by the Faddeev–LeVerrier recursion, lowest degree first.
fn charpoly(a: &Mat, l: u64) -> Vec<u64> {
    let n = a.rows;
    let mut coeffs = vec![0u64; n + 1];
    coeffs[n] = 1;
    let mut m = Mat::zeros(n, n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = a.mul(&m, l);
        for i in 0..n {
            let x = (next.at(i, i) + coeffs[n - k + 1]) % l;
            next.set(i, i, x);
        }
        m = next;
        let am = a.mul(&m, l);
        let tr = (0..n).fold(0, |acc, i| (acc + am.at(i, i)) % l);
        let c = mulm(l - tr % l, invm(k as u64, l), l) % l;
        coeffs[n - k] = c;
    }
    coeffs
}

fn eval_poly(p: &[u64], x: u64, l: u64) -> u64 {
    p.iter().rev().fold(0, |acc, &c| (mulm(acc, x, l) + c) % l)
}

/// Splits `F_ℓ^r` into the common eigenlines of the class-multiplication matrices.
fn common_eigenvectors(a: &[Vec<Vec<u64>>], l: u64) -> Result<Vec<Vec<u64>>> {
    let r = a.len();
    // A_j acts by (A_j ω)_k' = Σ_k a[j][k'][k] ω_k
    let action = |j: usize| {
        let mut m = Mat::zeros(r, r);
        for lrow in 0..r {
            for k in 0..r {
                m.set(lrow, k, a[j][lrow][k] % l);
            }
        }
        m
    };
    let mut identity = Mat::zeros(r, r);
    for i in 0..r {
        identity.set(i, i, 1);
    }
    let mut spaces = vec![identity];
    for j in 0..r {
        if spaces.iter().all(|s| s.cols == 1) {
            break;
        }
        let aj = action(j);
        let mut next = Vec::new();
        for b in spaces {
            if b.cols == 1 {
                next.push(b);
                continue;
            }
            // restriction: A_j B = B R, solved on pivot rows of B
            let ab = aj.mul(&b, l);
            let mut aug = Mat::zeros(r, b.cols + b.cols);
            for i in 0..r {
                for c in 0..b.cols {
                    aug.set(i, c, b.at(i, c));
                    aug.set(i, b.cols + c, ab.at(i, c));
                }
            }
            let mut red = aug.clone();
            let piv = rref(&mut red, l);
            if piv.len() != b.cols || piv.iter().any(|&p| p >= b.cols) {
                return Err(Error::Unsupported("class-algebra subspace not invariant".into()));
            }
            let d = b.cols;
            let mut rmat = Mat::zeros(d, d);
            for i in 0..d {
                for c in 0..d {
                    rmat.set(i, c, red.at(i, d + c));
                }
            }
            let cp = charpoly(&rmat, l);
            let roots: Vec<u64> = (0..l).filter(|&x| eval_poly(&cp, x, l) == 0).collect();
            if roots.len() == 1 {
                next.push(b);
                continue;
            }
            let mut total = 0;
            for lam in roots {
                let mut shifted = rmat.clone();
                for i in 0..d {
                    let x = (shifted.at(i, i) + l - lam) % l;
                    shifted.set(i, i, x);
                }
                let k = kernel(&shifted, l);
                total += k.cols;
                next.push(b.mul(&k, l));
            }
            if total != d {
                return Err(Error::Unsupported("class-algebra action not diagonalisable".into()));
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.cols != 1) {
        return Err(Error::Unsupported("class sums do not separate characters".into()));
    }
    Ok(spaces.into_iter().map(|s| s.v).collect())
}

/// Irreducible characters of the enumerated group, unsorted.
pub(crate) fn irreducible_characters(ctx: &GroupContext) -> Result<Vec<ClassFunction>> {
    let order = ctx.order();
    let e = ctx.exponent();
    let l = choose_prime(e, order);
    let z = primitive_root_of_order(e, l);
    let a = structure_constants(ctx);
    let r = ctx.num_classes();
    let sizes: Vec<u64> = ctx.classes().iter().map(|c| c.size).collect();
    let id = ctx.identity_class();
    let vectors = common_eigenvectors(&a, l)?;
    let mut out = Vec::with_capacity(r);
    let inverse: Vec<usize> = (0..r).map(|k| ctx.inverse_class(k)).collect();
    let power: Vec<Vec<usize>> = (0..r)
        .map(|k| {
            let o = ctx.classes()[k].element_order;
            (0..o).map(|j| ctx.power_class(k, j)).collect()
        })
        .collect();
    for v in vectors {
        let s = invm(v[id], l);
        let omega: Vec<u64> = v.iter().map(|&x| mulm(x, s, l)).collect();
        let mut acc = 0;
        for k in 0..r {
            let t = mulm(mulm(omega[k], omega[inverse[k]], l), invm(sizes[k] % l, l), l);
            acc = (acc + t) % l;
        }
        let d2 = mulm(order % l, invm(acc, l), l);
        let deg = (1..=((order as f64).sqrt() as u64 + 1))
            .find(|&d| mulm(d, d, l) == d2)
            .ok_or_else(|| Error::Unsupported("no degree satisfies the modular norm".into()))?;
        let modular: Vec<u64> =
            (0..r).map(|k| mulm(mulm(omega[k], deg, l), invm(sizes[k] % l, l), l)).collect();
        let mut values = Vec::with_capacity(r);
        for k in 0..r {
            let o = ctx.classes()[k].element_order;
            let step = e / o;
            let inv_o = invm(o % l, l);
            let mut terms = Vec::new();
            for t in 0..o {
                let mut m = 0;
                for j in 0..o {
                    let w = powm(z, (l - 1 - (step * j * t) % (l - 1)) % (l - 1), l);
                    m = (m + mulm(modular[power[k][j as usize]], w, l)) % l;
                }
                let m = mulm(m, inv_o, l);
                if m > deg {
                    return Err(Error::Unsupported("eigenvalue multiplicity out of range".into()));
                }
                if m != 0 {
                    terms.push((t, m as i128));
                }
            }
            let value = CyclotomicNumber::from_exponents(o as u32, terms, 1).simplify_modulus();
            values.push(value);
        }
        out.push(ClassFunction::new(values));
    }
    Ok(out)
}
