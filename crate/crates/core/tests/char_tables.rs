use std::time::Instant;

use mactab::char_lattice::{enumerate_params, GaloisOrbit, LevelChar, ParamFunction};
use mactab::char_table::{
    central_character, generic_degree, jacquet_restrict, macdonald, macdonald_inverse, CharacterTable,
    ClassFunction, GlFamily, LeviFunction,
};
use mactab::cyclotomic::CyclotomicNumber;
use mactab::gl_group::ParabolicShape;
use mactab::partition::Partition;

fn mobius(n: u64) -> i64 {
    let (mut n, mut k, mut p) = (n, 0, 2);
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            k += 1;
        }
        p += 1;
    }
    if n > 1 {
        k += 1;
    }
    if k % 2 == 0 { 1 } else { -1 }
}

fn check_family(q: u64, n: usize) -> GlFamily {
    let t0 = Instant::now();
    let fam = GlFamily::new(q, n, None).unwrap();
    for m in 1..=n {
        let ctx = fam.context(m);
        let lt = fam.table(m);
        lt.table().check_orthogonality(ctx).unwrap();
        assert_eq!(lt.len(), enumerate_params(fam.tower(), m as u32).unwrap().len());
        for i in 0..lt.len() {
            let w = central_character(lt.character(i), ctx).unwrap();
            assert_eq!(w.exponent(), lt.param(i).determinant_exponent(), "GL_{m}(F_{q}) row {i}");
            let label = lt.label(i);
            assert_eq!(macdonald_inverse(&macdonald(&label)), label);
            assert_eq!(macdonald(&label).dimension(), m as u32);
        }
        let cusp = lt.cuspidal_rows();
        let m64 = m as u64;
        let expect: i64 = (1..=m64)
            .filter(|d| m64.is_multiple_of(*d))
            .map(|d| mobius(d) * (q.pow((m64 / d) as u32) as i64 - 1))
            .sum::<i64>()
            / m as i64;
        assert_eq!(cusp.len() as i64, expect, "cuspidal count GL_{m}(F_{q})");
        let deg: i128 = (1..m as u32).map(|i| q.pow(i) as i128 - 1).product();
        for &i in &cusp {
            assert_eq!(lt.character(i).degree(), Some(deg));
        }
    }
    eprintln!("q={q} n<={n}: {:?}", t0.elapsed());
    fam
}

#[test]
fn family_q2() {
    check_family(2, 4);
}

#[test]
fn family_q3() {
    check_family(3, 3);
}

#[test]
fn family_q4_q5() {
    check_family(4, 2);
    check_family(5, 2);
}

fn trivial(r: usize) -> ClassFunction {
    ClassFunction::new(vec![CyclotomicNumber::one(); r])
}

#[test]
fn gl2_f3_examples() {
    let fam = GlFamily::new(3, 2, None).unwrap();
    let ctx = fam.context(2);
    let lt = fam.table(2);
    let t1 = trivial(fam.context(1).num_classes());
    let ind = fam.induce(&[&t1, &t1], &[1, 1]).unwrap();
    assert_eq!(ind.degree(), Some(4));
    let mult = lt.table().decompose(&ind, ctx).unwrap();
    let parts: Vec<(i128, i128)> = mult
        .iter()
        .enumerate()
        .filter(|(_, &m)| m != 0)
        .map(|(i, &m)| (lt.character(i).degree().unwrap(), m))
        .collect();
    assert_eq!(parts, vec![(1, 1), (3, 1)]);

    let triv = GaloisOrbit::trivial(3);
    let row = |l: Vec<u32>| lt.row_of(&ParamFunction::single(triv.clone(), Partition::new(l))).unwrap();
    assert_eq!(lt.character(row(vec![2])).degree(), Some(1));
    let st = row(vec![1, 1]);
    assert_eq!(lt.character(st).degree(), Some(3));
    assert_eq!(
        central_character(lt.character(st), ctx).unwrap(),
        LevelChar::new(3, 1, 0)
    );
    let torus = fam.parabolic(&ParabolicShape::new(vec![1, 1]).unwrap()).unwrap();
    assert!(!jacquet_restrict(lt.character(st), &torus).is_zero());

    let sign = GaloisOrbit::of(LevelChar::new(3, 1, 1));
    let mixed = ParamFunction::new([(triv.clone(), Partition::new(vec![1])), (sign, Partition::new(vec![1]))]).unwrap();
    assert_eq!(lt.character(lt.row_of(&mixed).unwrap()).degree(), Some(4));

    let cusp = lt.cuspidal_rows();
    assert_eq!(cusp.len(), 3);
    let mut members: Vec<Vec<u64>> = cusp.iter().map(|&i| lt.param(i).entries()[0].0.members().to_vec()).collect();
    members.sort();
    assert_eq!(members, vec![vec![1, 3], vec![2, 6], vec![5, 7]]);
    for &i in &cusp {
        let o = lt.param(i).entries()[0].0.clone();
        let w = central_character(lt.character(i), ctx).unwrap();
        assert_eq!(w.exponent(), o.rep_exponent() % 2);
    }
}

#[test]
fn induction_properties() {
    let fam = GlFamily::new(2, 3, None).unwrap();
    let ctx3 = fam.context(3);
    let t1 = trivial(1);
    let b = fam.induce(&[&t1, &t1, &t1], &[1, 1, 1]).unwrap();
    assert_eq!(b.degree(), Some(21));
    let l2 = fam.table(2);
    let l1 = fam.table(1);
    for i in 0..l2.len() {
        let a = fam.induce(&[l2.character(i), l1.character(0)], &[2, 1]).unwrap();
        let c = fam.induce(&[l1.character(0), l2.character(i)], &[1, 2]).unwrap();
        assert_eq!(a, c);
    }
    // adjointness along the (2,1) parabolic
    let data = fam.parabolic(&ParabolicShape::new(vec![2, 1]).unwrap()).unwrap();
    let lt3 = fam.table(3);
    for i in 0..lt3.len() {
        for j in 0..l2.len() {
            let sigma = LeviFunction::tensor(&data, &[l2.character(j), l1.character(0)]).unwrap();
            let lhs = jacquet_restrict(lt3.character(i), &data).inner(&sigma, &data);
            let ind = fam.induce(&[l2.character(j), l1.character(0)], &[2, 1]).unwrap();
            let rhs = lt3.character(i).inner(&ind, ctx3);
            assert_eq!(lhs, rhs);
        }
    }
    let cusp = lt3.cuspidal_rows();
    assert_eq!(cusp.len(), 2);
    for s in ParabolicShape::all(3).into_iter().filter(|s| s.is_proper()) {
        let d = fam.parabolic(&s).unwrap();
        for &i in &cusp {
            assert!(jacquet_restrict(lt3.character(i), &d).is_zero());
        }
    }
}

#[test]
fn generic_degrees() {
    assert_eq!(generic_degree(&Partition::new(vec![2]), 3), 1);
    assert_eq!(generic_degree(&Partition::new(vec![1, 1]), 3), 3);
    assert_eq!(generic_degree(&Partition::new(vec![2, 1]), 2), 2 * 3);
}

#[test]
fn cache_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let fam = GlFamily::new(3, 2, Some(dir.path())).unwrap();
    let path = CharacterTable::cache_file(dir.path(), 2, 3);
    let first = std::fs::read(&path).unwrap();
    let fresh = CharacterTable::compute(fam.context(2)).unwrap();
    assert_eq!(fresh.to_cache_json(fam.context(2)).unwrap().into_bytes(), first);
    let again = GlFamily::new(3, 2, Some(dir.path())).unwrap();
    assert_eq!(again.table(2).table(), &fresh);
    std::fs::remove_file(&path).unwrap();
    GlFamily::new(3, 2, Some(dir.path())).unwrap();
    assert_eq!(std::fs::read(&path).unwrap(), first);
}
