use std::collections::BTreeSet;

use proptest::prelude::*;
use ver4_core::dalgebra::{catalog, dual_numbers, make_t, Monomial, PbwAlgebra, PbwElem, TableAlgebra};
use ver4_core::groups::{
    alpha2_points, conjugation_test, cover_witness, dlog, g_points, glp_points, h_points, h_red_check, hopf_check,
    n_points, non_normality_witness, o_g_hopf, quotient_bijection_check, ses_check, LaurentTensors, TensorElem,
};
use ver4_core::linalg::{is_zero, unit_vec, Matrix, Vector};
use ver4_core::{BaseField, Error};

fn gf2() -> BaseField {
    BaseField::gf2()
}

fn t() -> TableAlgebra {
    make_t(gf2())
}

fn k() -> TableAlgebra {
    TableAlgebra::ground(gf2())
}

fn named(name: &str) -> TableAlgebra {
    catalog().into_iter().find(|(n, _)| n == name).unwrap().1
}

fn small_catalog() -> Vec<(String, TableAlgebra)> {
    catalog().into_iter().filter(|(_, b)| b.dim() <= 8).collect()
}

fn f4() -> TableAlgebra {
    let names = vec!["1".to_string(), "w".to_string()];
    TableAlgebra::from_fn(gf2(), names, vec![1, 0], Matrix::zeros(gf2(), 2, 2), |i, j| match (i, j) {
        (0, j) => unit_vec(2, j),
        (i, 0) => unit_vec(2, i),
        _ => vec![1, 1],
    })
    .unwrap()
}

#[test]
fn unit_groups() {
    let g = g_points(&t());
    assert_eq!(g.len(), 8);
    assert!(g.elements.iter().all(|a| a[0][0] == 1));
    assert!(g.check(1).passed());
    assert_eq!(g_points(&k()).len(), 1);
    let n = n_points(&t());
    assert_eq!(n.len(), 4);
    assert!(n.check(1).passed());
    assert_eq!(n_points(&k()).len(), 1);
}

#[test]
fn unit_group_of_two_pairs_is_not_abelian() {
    let p = PbwAlgebra::sym(gf2(), 2, 0, Some(2));
    let (b, basis) = p.to_table().unwrap();
    let x1 = b.add(&b.one(), &p.coordinates(&basis, &p.x(0)).unwrap());
    let x2 = b.add(&b.one(), &p.coordinates(&basis, &p.x(1)).unwrap());
    let g = g_points(&b);
    assert!(g.contains(&[x1.clone()]) && g.contains(&[x2.clone()]));
    let y1y2 = p.coordinates(&basis, &p.mul(&p.y(0), &p.y(1)).unwrap()).unwrap();
    assert_eq!(b.add(&b.mul(&x1, &x2), &b.mul(&x2, &x1)), y1y2);
    assert!(!is_zero(&y1y2));
}

#[test]
fn n_is_central() {
    for (name, b) in catalog() {
        let g = g_points(&b);
        for f in &n_points(&b).elements {
            assert!(g.elements.iter().all(|a| b.mul(&f[0], &a[0]) == b.mul(&a[0], &f[0])), "{name}");
        }
    }
}

#[test]
fn dlog_examples() {
    let t = t();
    assert_eq!(dlog(&t, &[1, 1, 0, 0]).unwrap(), vec![0, 0, 1, 1]);
    assert_eq!(dlog(&t, &[1, 0, 1, 0]).unwrap(), vec![0; 4]);
    for u in n_points(&t).elements {
        assert!(is_zero(&dlog(&t, &u[0]).unwrap()));
    }
    assert_eq!(dlog(&t, &[0, 1, 0, 0]), Err(Error::NotAUnit));
}

#[test]
fn alpha2_examples() {
    let a = alpha2_points(&t());
    let expected: Vec<Vec<Vector>> =
        vec![vec![vec![0, 0, 0, 0]], vec![vec![0, 0, 0, 1]], vec![vec![0, 0, 1, 0]], vec![vec![0, 0, 1, 1]]];
    assert_eq!(a.elements, expected);
    assert!(a.check(0).passed());
    assert_eq!(alpha2_points(&k()).len(), 1);
    assert_eq!(alpha2_points(&dual_numbers(gf2())).len(), 2);
}

#[test]
fn dlog_sequence_on_t() {
    let r = ses_check(&t(), 0).unwrap();
    assert!(r.holds(), "{r:?}");
    assert_eq!(r.image, vec![vec![0, 0, 0, 0], vec![0, 0, 1, 1]]);
    let targets: BTreeSet<Vector> = r.witnesses.iter().map(|w| w.target.clone()).collect();
    assert_eq!(targets, [vec![0, 0, 0, 1], vec![0, 0, 1, 0]].into_iter().collect());
    let w = cover_witness(&t(), &[0, 0, 1, 0]);
    assert!(w.passed());
    assert_eq!(w.cover.unwrap().dim(), 8);
}

#[test]
fn dlog_sequence_on_catalog() {
    for (name, b) in catalog() {
        let r = ses_check(&b, 0).unwrap();
        assert!(r.holds(), "{name}: {r:?}");
    }
    let r = ses_check(&k(), 0).unwrap();
    assert_eq!(r.image, vec![vec![0]]);
    assert!(r.witnesses.is_empty());
}

#[test]
fn cover_witness_rejects_non_invariant_targets() {
    assert!(!cover_witness(&t(), &[0, 1, 0, 0]).passed());
}

/// `g h` for `h` applied first, from `B`-linearity on `1 (x) v1`.
fn closed_composition(b: &TableAlgebra, g: &[Vector], h: &[Vector]) -> Vec<Vector> {
    let (ag, bg, ah, bh) = (&g[0], &g[1], &h[0], &h[1]);
    vec![
        b.add(&b.mul(ah, ag), &b.mul(bh, &b.apply_d(ag))),
        b.add(&b.mul(ah, bg), &b.mul(bh, &b.add(ag, &b.apply_d(bg)))),
    ]
}

#[test]
fn general_linear_group_of_p() {
    let t = t();
    let gl = glp_points(&t).unwrap();
    assert_eq!(gl.len(), 128);
    assert!(gl.check(3).passed());
    assert!(gl.contains(&[t.one(), t.zero()]));
    assert_eq!(gl.identity(), vec![t.one(), t.zero()]);
    assert_eq!(glp_points(&k()).unwrap().len(), 2);
    for g in &gl.elements {
        for h in &gl.elements {
            assert_eq!(gl.op(g, h), closed_composition(&t, g, h));
        }
    }
}

#[test]
fn invertibility_is_a_unit_condition() {
    for (name, b) in small_catalog() {
        let gl = glp_points(&b).unwrap();
        let units = g_points(&b);
        let expected = units.len() * b.elements().len();
        assert_eq!(gl.len(), expected, "{name}");
        assert!(gl.elements.iter().all(|g| units.contains(&[g[0].clone()])), "{name}");
    }
}

#[test]
fn transporter() {
    let t = t();
    let h = h_points(&t).unwrap();
    assert_eq!(h.len(), 64);
    assert!(h.check(5).passed());
    assert!(h.elements.iter().all(|g| is_zero(&t.apply_d(&g[0]))));
    assert_eq!(h_points(&k()).unwrap(), {
        let mut gl = glp_points(&k()).unwrap();
        gl.tag = "H".into();
        gl
    });
    assert!(h.contains(&[t.one(), vec![0, 1, 0, 0]]));
    for (name, b) in small_catalog() {
        let h = h_points(&b).unwrap();
        let expected = n_points(&b).len() * b.elements().len();
        assert_eq!(h.len(), expected, "{name}");
    }
}

#[test]
fn cosets_match_unit_classes() {
    let t = t();
    let r = quotient_bijection_check(&t).unwrap();
    assert!(r.holds(), "{r:?}");
    assert_eq!((r.cosets, r.unit_classes), (2, 2));
    assert_eq!(quotient_bijection_check(&k()).unwrap().cosets, 1);
    assert_eq!(quotient_bijection_check(&dual_numbers(gf2())).unwrap().cosets, 1);
    for (name, b) in small_catalog() {
        let r = quotient_bijection_check(&b).unwrap();
        assert!(r.holds(), "{name}: {r:?}");
        assert_eq!(r.cosets * n_points(&b).len(), g_points(&b).len(), "{name}");
    }
}

#[test]
fn transporter_is_not_normal() {
    let w = non_normality_witness().unwrap();
    assert!(w.is_witness(), "{w:?}");
    assert!(!is_zero(&w.obstruction));
}

#[test]
fn one_pair_conjugation_stays_in_the_transporter() {
    // With a single pair the obstruction (Dw)(Da) is a multiple of y^2 = 0.
    let p = PbwAlgebra::sym(gf2(), 1, 0, Some(3));
    let (b, basis) = p.to_table().unwrap();
    let x = p.coordinates(&basis, &p.x(0)).unwrap();
    let w = conjugation_test(&b, &b.add(&b.one(), &x), &x).unwrap();
    assert!(is_zero(&w.obstruction));
    assert!(!w.is_witness());
}

#[test]
fn conjugation_controls() {
    let t = t();
    let h = h_points(&t).unwrap();
    for g in &h.elements {
        for x in &h.elements {
            assert!(h.contains(&h.conjugate(g, x).unwrap()));
        }
    }
    let gl = glp_points(&t).unwrap();
    for g in &gl.elements {
        assert_eq!(gl.conjugate(g, &gl.identity()).unwrap(), gl.identity());
    }
}

#[test]
fn reduced_transporter_splits() {
    for b in [k(), named("k x k"), f4()] {
        let r = h_red_check(&b).unwrap();
        assert!(r.holds(), "{r:?}");
    }
    assert!(!h_red_check(&t()).unwrap().reduced_ordinary);
}

#[test]
fn hopf_structure() {
    let h = o_g_hopf(gf2(), -8, 8).unwrap();
    let r = hopf_check(&h, 100, 11).unwrap();
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.elements_checked, 103);

    let ar = h.arith;
    let x = TensorElem::x_pow(1, 0, 1);
    let dx = ar.apply_d(&x).unwrap();
    assert_eq!(dx, TensorElem::y(1, 0));
    let expected = ar
        .mul(&TensorElem::y(2, 0), &TensorElem::x_pow(2, 1, 1))
        .unwrap()
        .add(&ar.mul(&TensorElem::x_pow(2, 0, 1), &TensorElem::y(2, 1)).unwrap());
    assert_eq!(h.comultiply(&dx).unwrap(), expected);
    assert_eq!(ar.apply_d(&h.comultiply(&x).unwrap()).unwrap(), expected);
    assert_eq!(h.apply_counit(&x), 1);
    assert_eq!(h.apply_counit(&TensorElem::y(1, 0)), 0);
}

#[test]
fn hopf_check_reports_window_overflow() {
    let h = o_g_hopf(gf2(), -1, 1).unwrap();
    assert!(matches!(hopf_check(&h, 5, 0), Err(Error::WindowOverflow { .. })));
}

fn pbw_to_tensor(e: &PbwElem) -> TensorElem {
    let mut out = TensorElem::zero(2);
    for (m, c) in e.terms() {
        let mut mono = TensorElem::one(2);
        let ar = LaurentTensors { field: gf2(), lo: -20, hi: 20 };
        mono = ar.mul(&mono, &TensorElem::x_pow(2, 0, m.x[0])).unwrap();
        mono = ar.mul(&mono, &TensorElem::x_pow(2, 1, m.x[1])).unwrap();
        for i in 0..2 {
            if m.y >> i & 1 == 1 {
                mono = ar.mul(&mono, &TensorElem::y(2, i)).unwrap();
            }
        }
        if c != 0 {
            out = out.add(&mono);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// On non-negative exponents the tensor square of `O(G)` is `Sym(P (+) P)`.
    #[test]
    fn tensor_square_matches_two_pair_pbw(a in (0i64..4, 0i64..4, 0u64..4), b in (0i64..4, 0i64..4, 0u64..4)) {
        let p = PbwAlgebra::sym(gf2(), 2, 0, None);
        let ma = PbwElem::monomial(Monomial { x: vec![a.0, a.1], y: a.2, z: vec![] });
        let mb = PbwElem::monomial(Monomial { x: vec![b.0, b.1], y: b.2, z: vec![] });
        let ar = LaurentTensors { field: gf2(), lo: -20, hi: 20 };
        let lhs = ar.mul(&pbw_to_tensor(&ma), &pbw_to_tensor(&mb)).unwrap();
        prop_assert_eq!(lhs, pbw_to_tensor(&p.mul(&ma, &mb).unwrap()));
    }

    /// Inverses in the tensor square are two-sided.
    #[test]
    fn laurent_inverses(e in -4i64..4, i in 0usize..2, j in 0usize..2) {
        let ar = LaurentTensors { field: gf2(), lo: -20, hi: 20 };
        let x = ar.mul(&TensorElem::x_pow(2, i, e), &TensorElem::x_pow(2, j, 1)).unwrap();
        let inv = ar.mul(&TensorElem::x_pow(2, j, -1), &TensorElem::x_pow(2, i, -e)).unwrap();
        prop_assert_eq!(ar.mul(&x, &inv).unwrap(), TensorElem::one(2));
        prop_assert_eq!(ar.mul(&inv, &x).unwrap(), TensorElem::one(2));
    }
}
