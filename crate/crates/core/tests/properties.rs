use std::sync::{Arc, LazyLock};

use proptest::prelude::*;

use mactab::char_table::GlFamily;
use mactab::cyclotomic::{CyclotomicNumber, FactorValue};
use mactab::factors::{InducedWhittaker, WhittakerVector};
use mactab::ff_tower::{FieldElem, FieldTower};
use mactab::gl_group::Matrix;
use mactab::partition::partitions;

fn cyclo() -> impl Strategy<Value = CyclotomicNumber> {
    let n = prop::sample::select(vec![1u32, 2, 3, 4, 5, 6, 8, 12]);
    (n, prop::collection::vec((0u64..24, -4i128..5), 0..5), 1i128..4).prop_map(|(n, terms, den)| {
        CyclotomicNumber::from_exponents(n, terms.into_iter().map(|(e, c)| (e % n as u64, c)), den)
    })
}

proptest! {
    #[test]
    fn cyclotomic_ring_axioms(a in cyclo(), b in cyclo(), c in cyclo()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }

    #[test]
    fn cyclotomic_inverse(a in cyclo()) {
        prop_assume!(!a.is_zero());
        prop_assert_eq!(&a * &a.inv().unwrap(), CyclotomicNumber::one());
    }

    #[test]
    fn cyclotomic_equality_ignores_modulus(a in cyclo(), m in 1u32..4) {
        prop_assert_eq!(a.lift(a.modulus() * m), a.clone());
        prop_assert_eq!(a.simplify_modulus(), a);
    }

    #[test]
    fn cyclotomic_serde_round_trip(a in cyclo()) {
        let s = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<CyclotomicNumber>(&s).unwrap(), a);
    }

    #[test]
    fn factor_value_group_law(a in cyclo(), b in cyclo(), h in -4i64..5, k in -4i64..5) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let (x, y) = (FactorValue::new(3, h, a), FactorValue::new(3, k, b));
        prop_assert_eq!(x.mul(&y).mul(&y.inv().unwrap()), x.clone());
        prop_assert_eq!(x.normalized(), x.clone());
        let s = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<FactorValue>(&s).unwrap(), x);
    }
}

static TOWER: LazyLock<FieldTower> = LazyLock::new(|| FieldTower::build(3, 6).unwrap());

fn elem(level: u32) -> impl Strategy<Value = FieldElem> {
    let order = TOWER.unit_order(level);
    prop_oneof![Just(FieldElem::zero(level)), (0..order).prop_map(move |e| TOWER.elem(level, e))]
}

proptest! {
    #[test]
    fn field_axioms(level in prop::sample::select(vec![1u32, 2, 3, 6]), seed in any::<u64>()) {
        let t = &*TOWER;
        let order = t.unit_order(level);
        let pick = |s: u64| if s.is_multiple_of(7) { FieldElem::zero(level) } else { t.elem(level, s % order) };
        let (a, b, c) = (pick(seed), pick(seed / 7 + 1), pick(seed / 49 + 3));
        prop_assert_eq!(t.add(a, b).unwrap(), t.add(b, a).unwrap());
        prop_assert_eq!(t.mul(a, t.add(b, c).unwrap()).unwrap(), t.add(t.mul(a, b).unwrap(), t.mul(a, c).unwrap()).unwrap());
        prop_assert!(t.add(a, t.neg(a)).unwrap().is_zero());
        let f = |x| t.frobenius(x);
        prop_assert_eq!(f(t.add(a, b).unwrap()), t.add(f(a), f(b)).unwrap());
        prop_assert_eq!(f(t.mul(a, b).unwrap()), t.mul(f(a), f(b)).unwrap());
    }

    #[test]
    fn norm_and_trace(a in elem(6), b in elem(6), m in prop::sample::select(vec![1u32, 2, 3])) {
        let t = &*TOWER;
        let ab = t.mul(a, b).unwrap();
        prop_assert_eq!(t.norm(ab, m).unwrap(), t.mul(t.norm(a, m).unwrap(), t.norm(b, m).unwrap()).unwrap());
        let s = t.add(a, b).unwrap();
        prop_assert_eq!(t.trace(s, m).unwrap(), t.add(t.trace(a, m).unwrap(), t.trace(b, m).unwrap()).unwrap());
        prop_assert_eq!(t.absolute_trace(t.trace(a, 1).unwrap()), t.absolute_trace(a));
    }

    #[test]
    fn embedding_commutes_with_field_operations(a in elem(2), b in elem(2)) {
        let t = &*TOWER;
        let up = |x| t.embed(x, 6).unwrap();
        prop_assert_eq!(up(t.mul(a, b).unwrap()), t.mul(up(a), up(b)).unwrap());
        prop_assert_eq!(up(t.add(a, b).unwrap()), t.add(up(a), up(b)).unwrap());
        prop_assert_eq!(t.degree(up(a)), t.degree(a));
    }
}

#[test]
fn tableaux_count_symmetric_group() {
    for n in 1..=8u32 {
        let total: u64 = partitions(n).iter().map(|l| l.standard_tableaux().pow(2)).sum();
        assert_eq!(total, (1..=n as u64).product::<u64>());
        for l in partitions(n) {
            assert_eq!(l.conjugate().conjugate(), l);
        }
    }
}

static F3: LazyLock<Arc<GlFamily>> = LazyLock::new(|| Arc::new(GlFamily::new(3, 2, None).unwrap()));

fn matrix(n: usize, q: u8) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(prop::collection::vec(0..q, n), n).prop_map(|rows| Matrix::from_rows(&rows))
}

fn unitriangular(n: usize, q: u8) -> impl Strategy<Value = Matrix> {
    matrix(n, q).prop_map(move |m| {
        let mut u = Matrix::identity(n);
        for i in 0..n {
            for j in i + 1..n {
                u.set(i, j, m.get(i, j));
            }
        }
        u
    })
}

fn induced() -> InducedWhittaker {
    let fam = &*F3;
    let (t1, t2) = (fam.table(2), fam.table(1));
    let chi1 = t1.character(t1.cuspidal_rows()[0]);
    let w1 = Arc::new(WhittakerVector::new(fam.context(2).clone(), chi1, false).unwrap());
    let w2 = Arc::new(WhittakerVector::new(fam.context(1).clone(), t2.character(1), false).unwrap());
    InducedWhittaker::new(w1, w2).unwrap()
}

static INDUCED: LazyLock<InducedWhittaker> = LazyLock::new(induced);

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matrix_inverse(g in matrix(3, 3)) {
        let gl = INDUCED.gl();
        prop_assume!(gl.inv(&g).is_ok());
        prop_assert_eq!(gl.mul(&gl.inv(&g).unwrap(), &g), gl.identity());
    }

    #[test]
    fn induced_vector_is_well_defined(g in matrix(3, 3)) {
        let iw = &*INDUCED;
        prop_assume!(iw.gl().inv(&g).is_ok());
        prop_assert!(iw.eval_checked(&g).is_ok());
    }

    #[test]
    fn induced_vector_is_right_psi_equivariant(g in matrix(3, 3), u in unitriangular(3, 3)) {
        let iw = &*INDUCED;
        let gl = iw.gl();
        prop_assume!(gl.inv(&g).is_ok());
        let lhs = iw.eval(&gl.mul(&g, &u));
        let rhs = iw.eval(&g).mul_root(3, gl.psi_n_exp(&u) as i64);
        prop_assert_eq!(lhs, rhs);
    }
}
