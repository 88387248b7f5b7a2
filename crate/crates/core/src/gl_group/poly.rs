use std::fmt;

use crate::ff_tower::BaseField;

use super::matrix::{Gl, Matrix};

/// A monic polynomial over `k`, coefficients lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly(pub Vec<u8>);

impl Poly {
    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn x() -> Self {
        Poly(vec![0, 1])
    }

    /// Remainder of `a` modulo the monic `self`.
    pub fn rem_of(&self, f: &BaseField, a: &[u8]) -> Vec<u8> {
        let d = self.degree();
        let mut r = a.to_vec();
        while r.len() > d {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - d;
            if lead != 0 {
                let nl = f.neg(lead);
                for (i, &c) in self.0.iter().enumerate() {
                    r[shift + i] = f.add(r[shift + i], f.mul(nl, c));
                }
            }
            r.pop();
        }
        r
    }

    pub fn divides(&self, f: &BaseField, a: &[u8]) -> bool {
        self.rem_of(f, a).iter().all(|&c| c == 0)
    }

    /// `self(g)` by Horner's rule.
    pub fn eval_matrix(&self, gl: &Gl, g: &Matrix) -> Matrix {
        let mut acc = gl.scalar(*self.0.last().unwrap());
        for &c in self.0.iter().rev().skip(1) {
            acc = gl.add(&gl.mul(&acc, g), &gl.scalar(c));
        }
        acc
    }

    pub fn display(&self, f: &BaseField) -> String {
        let mut terms = Vec::new();
        for (i, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coeff = if c == 1 && i > 0 { String::new() } else { f.name(c).to_string() };
            let mono = match i {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{i}"),
            };
            terms.push(format!("{coeff}{mono}"));
        }
        terms.join("+")
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Monic irreducible polynomials of degree `1..=max_deg` other than `X`, sorted.
pub fn irreducible_polys(f: &BaseField, max_deg: usize) -> Vec<Poly> {
    let q = f.q as usize;
    let mut all: Vec<Poly> = vec![Poly::x()];
    for d in 1..=max_deg {
        let count = q.pow(d as u32);
        for code in 0..count {
            let mut c = Vec::with_capacity(d + 1);
            let mut x = code;
            for _ in 0..d {
                c.push((x % q) as u8);
                x /= q;
            }
            c.push(1);
            let reducible = all
                .iter()
                .filter(|p| p.degree() <= d / 2)
                .any(|p| p.divides(f, &c));
            if !reducible && c != Poly::x().0 {
                all.push(Poly(c));
            }
        }
    }
    let mut out: Vec<Poly> = all.into_iter().filter(|p| *p != Poly::x()).collect();
    out.sort();
    out
}
