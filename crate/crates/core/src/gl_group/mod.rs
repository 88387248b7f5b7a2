//! `GL_n(F_q)` as concrete matrices: arithmetic, conjugacy classes, parabolic subgroups,
//! the characters `ψ` and `ψ_n`, and elliptic tori.

mod context;
mod elliptic;
mod matrix;
mod parabolic;
mod poly;

pub use context::{class_label, ClassInfo, ClassLabel, GroupContext, DEFAULT_GROUP_CAP};
pub use elliptic::EllipticEmbedding;
pub use matrix::{gl_order, Gl, Matrix, MAX_N};
pub use parabolic::{enumerate_gl, ParabolicShape};
pub use poly::{irreducible_polys, Poly};

use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};

/// `ψ(u_{12} + u_{23} + … + u_{n-1,n})`.
pub fn psi_n(gl: &Gl, u: &Matrix) -> Result<CyclotomicNumber> {
    if !gl.is_upper_unitriangular(u) {
        return Err(Error::NotUnitriangular);
    }
    Ok(CyclotomicNumber::root_of_unity(gl.field().p as u32, gl.psi_n_exp(u) as i64))
}

/// `ψ(Tr g)`.
pub fn psi_trace(gl: &Gl, g: &Matrix) -> CyclotomicNumber {
    CyclotomicNumber::root_of_unity(gl.field().p as u32, gl.psi_trace_exp(g) as i64)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::char_lattice::enumerate_params;
    use crate::ff_tower::{BaseField, FieldTower};
    use crate::partition::Partition;

    fn ctx(n: usize, q: u64) -> GroupContext {
        let t = Arc::new(FieldTower::for_rank(q, n as u32).unwrap());
        GroupContext::new(t, n).unwrap()
    }

    /// `q^{|λ|+2n(λ)} Π_i φ_{m_i}(q^{-1})` per elementary divisor, with `q → q^{deg f}`.
    fn centralizer_formula(q: u64, label: &ClassLabel) -> u64 {
        let mut acc = 1u128;
        for (f, l) in &label.0 {
            let qf = q.pow(f.degree() as u32) as u128;
            let exp = l.size() + 2 * l.n_statistic();
            let mut num = qf.pow(exp);
            let mut den = 1u128;
            let mut mult = std::collections::BTreeMap::new();
            for &p in l.parts() {
                *mult.entry(p).or_insert(0u32) += 1;
            }
            for &m in mult.values() {
                for i in 1..=m {
                    num *= qf.pow(i) - 1;
                    den *= qf.pow(i);
                }
            }
            acc *= num / den;
        }
        acc as u64
    }

    #[test]
    fn gl2_f3_classes() {
        let c = ctx(2, 3);
        assert_eq!(c.order(), 48);
        assert_eq!(c.num_classes(), 8);
        assert_eq!(c.classes().iter().map(|k| k.size).sum::<u64>(), 48);
        let id = &c.classes()[c.identity_class()];
        assert_eq!(id.size, 1);
        assert_eq!(id.label.0, vec![(Poly(vec![c.field().neg(1), 1]), Partition::new(vec![1, 1]))]);
    }

    #[test]
    fn class_counts_match_params_and_centralizers() {
        for (n, q) in [(1usize, 2u64), (1, 5), (2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3)] {
            let c = ctx(n, q);
            let params = enumerate_params(c.tower(), n as u32).unwrap();
            assert_eq!(c.num_classes(), params.len(), "n={n} q={q}");
            for k in c.classes() {
                assert_eq!(k.size * k.centralizer, c.order());
                assert_eq!(k.centralizer, centralizer_formula(q, &k.label), "{}", k.label);
                assert_eq!(c.label_of(&k.rep).unwrap(), k.label);
            }
        }
    }

    #[test]
    fn companion_of_irreducible_quadratic() {
        let c = ctx(2, 3);
        let f = c.irreducibles().iter().find(|p| p.degree() == 2).unwrap().clone();
        let comp = Matrix::from_rows(&[vec![0, c.field().neg(f.0[0])], vec![1, c.field().neg(f.0[1])]]);
        let label = c.label_of(&comp).unwrap();
        assert_eq!(label.0, vec![(f, Partition::new(vec![1]))]);
        assert_eq!(c.label_of(&Matrix::zero(2)), Err(Error::Singular));
    }

    #[test]
    fn inverse_and_power_classes() {
        let c = ctx(3, 2);
        for k in 0..c.num_classes() {
            let inv = c.inverse_class(k);
            assert_eq!(c.inverse_class(inv), k);
            assert_eq!(c.power_class(k, c.classes()[k].element_order), c.identity_class());
            assert_eq!(c.power_class(k, c.classes()[k].element_order - 1), inv);
        }
        assert_eq!(c.exponent(), 84);
    }

    #[test]
    fn psi_n_values() {
        let t = FieldTower::build(3, 1).unwrap();
        let gl = Gl::new(2, Arc::new(BaseField::new(&t)));
        assert_eq!(psi_n(&gl, &gl.identity()).unwrap(), CyclotomicNumber::one());
        let u = Matrix::from_rows(&[vec![1, 1], vec![0, 1]]);
        assert_eq!(psi_n(&gl, &u).unwrap(), CyclotomicNumber::root_of_unity(3, 1));
        assert_eq!(psi_n(&gl, &gl.scalar(2)), Err(Error::NotUnitriangular));
    }

    #[test]
    fn psi_n_is_a_character_of_u3() {
        let t = FieldTower::build(2, 1).unwrap();
        let gl = Gl::new(3, Arc::new(BaseField::new(&t)));
        let shape = ParabolicShape::new(vec![1, 1, 1]).unwrap();
        let us: Vec<Matrix> = shape.u_elements(&gl).unwrap().collect();
        assert_eq!(us.len(), 8);
        for a in &us {
            for b in &us {
                let lhs = psi_n(&gl, &gl.mul(a, b)).unwrap();
                assert_eq!(lhs, &psi_n(&gl, a).unwrap() * &psi_n(&gl, b).unwrap());
            }
        }
    }

    #[test]
    fn parabolic_orders() {
        for (parts, q, n, u, p) in [
            (vec![1, 1], 3u64, 2usize, 3u64, 12u64),
            (vec![2, 1], 2, 3, 4, 24),
            (vec![2, 2], 2, 4, 16, 576),
        ] {
            let t = FieldTower::build(q, 1).unwrap();
            let gl = Gl::new(n, Arc::new(BaseField::new(&t)));
            let s = ParabolicShape::new(parts).unwrap();
            let us: Vec<Matrix> = s.u_elements(&gl).unwrap().collect();
            assert_eq!(us.len() as u64, u);
            assert!(us.iter().all(|x| s.contains_u(x)));
            let ps = s.p_elements(&gl).unwrap();
            assert_eq!(ps.len() as u64, p);
            assert_eq!(s.p_order(q), p);
            let mut sorted = ps.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), ps.len());
            assert!(ps.iter().all(|x| s.contains_p(x)));
            let ls = s.l_elements(&gl).unwrap();
            assert_eq!(ls.iter().filter(|x| s.contains_u(x)).count(), 1);
        }
        assert_eq!(ParabolicShape::all(4).len(), 8);
    }

    #[test]
    fn elliptic_embedding() {
        for (n, q) in [(2u32, 3u64), (3, 2), (2, 4), (3, 3)] {
            let t = FieldTower::build(q, n).unwrap();
            let f = Arc::new(BaseField::new(&t));
            let gl = Gl::new(n as usize, f.clone());
            let irr = irreducible_polys(&f, n as usize);
            let emb = EllipticEmbedding::new(&t, &f, n).unwrap();
            assert_eq!(emb.embed(&gl, t.one(n)).unwrap(), gl.identity());
            for x in t.elements(n).skip(1) {
                let m = emb.embed(&gl, x).unwrap();
                let det = f.to_elem(gl.det(&m));
                assert_eq!(det, t.norm(x, 1).unwrap());
                if t.degree(x) == n {
                    let label = class_label(&gl, &irr, &m).unwrap();
                    assert_eq!(label.0.len(), 1);
                    assert_eq!(label.0[0].0.degree(), n as usize);
                }
            }
            let g = t.generator(n).unwrap();
            let h = t.pow(g, 5);
            assert_eq!(
                gl.mul(&emb.embed(&gl, g).unwrap(), &emb.embed(&gl, h).unwrap()),
                emb.embed(&gl, t.mul(g, h).unwrap()).unwrap()
            );
            assert_eq!(emb.embed(&gl, crate::ff_tower::FieldElem::zero(n)), Err(Error::ZeroElement));
        }
    }
}
