use gpin_core::clifford::*;
use gpin_core::quadspace::*;
use gpin_core::scalars::*;

use std::sync::Arc;
use gpin_core::scalars::Field;
use proptest::prelude::*;

fn space(field: Field, diag: &[i64]) -> Arc<QuadSpace> {
    Arc::new(QuadSpace::diagonal(field, diag).unwrap())
}

#[test]
fn generator_relations() {
    let q = Field::Rational;
    let s = space(q, &[2, 3, 5]);
    let e: Vec<CliffordElem> = (0..3).map(|i| CliffordElem::basis_vector(&s, i)).collect();
    assert_eq!(e[0].mul(&e[0]), CliffordElem::scalar(&s, q.from_i64(2)));
    assert_eq!(e[1].mul(&e[0]), e[0].mul(&e[1]).neg());
    let e12 = e[0].mul(&e[1]);
    let e23 = e[1].mul(&e[2]);
    assert_eq!(e12.mul(&e23), e[0].mul(&e[2]).scale(&q.from_i64(3)));
}

#[test]
fn involutions_on_blades() {
    let q = Field::Rational;
    let s = space(q, &[1, 1, 1]);
    let e1 = CliffordElem::basis_vector(&s, 0);
    let e12 = CliffordElem::blade(&s, 0b11, q.one());
    let zeta = CliffordElem::zeta(&s);
    assert_eq!(e1.alpha(), e1.neg());
    assert_eq!(e12.alpha(), e12);
    assert_eq!(zeta.star(), zeta.neg());
    assert_eq!(e1.star(), e1);
    assert_eq!(e1.bar(), e1.neg());
    assert_eq!(zeta.mul(&zeta), CliffordElem::scalar(&s, q.from_i64(-1)));
}

#[test]
fn norms() {
    let q = Field::Rational;
    let s = space(q, &[2, 3]);
    let z = CliffordElem::scalar(&s, q.from_i64(5));
    assert_eq!(z.clifford_norm(), CliffordElem::scalar(&s, q.from_i64(25)));
    assert_eq!(CliffordElem::basis_vector(&s, 0).clifford_norm(), CliffordElem::scalar(&s, q.from_i64(-2)));
    let e12 = CliffordElem::blade(&s, 0b11, q.one());
    assert_eq!(e12.clifford_norm(), CliffordElem::scalar(&s, q.from_i64(6)));
}

#[test]
fn grade_parts_split() {
    let q = Field::Rational;
    let s = space(q, &[1, 1]);
    let x = CliffordElem::from_terms(&s, [(0, q.one()), (1, q.one())]);
    let (even, odd) = x.grade_parts();
    assert_eq!(even, CliffordElem::one(&s));
    assert_eq!(odd, CliffordElem::basis_vector(&s, 0));
    let e12 = CliffordElem::blade(&s, 0b11, q.one());
    assert_eq!(e12.grade_parts(), (e12.clone(), CliffordElem::zero(&s)));
    assert_eq!(x.parity(), None);
}

#[test]
fn display_and_json() {
    let f5 = Field::Prime(5);
    let s = space(f5, &[1, 1, 1]);
    let x = CliffordElem::from_terms(&s, [(0, f5.from_i64(2)), (0b101, f5.one()), (0b010, f5.from_i64(-1))]);
    assert_eq!(x.to_string(), "2 + 4*e2 + e1e3");
    let back = CliffordElem::from_json_map(&s, &x.to_json_map()).unwrap();
    assert_eq!(back, x);
}

fn arb_elem(s: Arc<QuadSpace>) -> impl Strategy<Value = CliffordElem> {
    let n = s.dim();
    let p = s.field().characteristic().max(7) as i64;
    proptest::collection::vec((0u32..1 << n, -p..p), 0..6).prop_map(move |ts| {
        let f = s.field();
        CliffordElem::from_terms(&s, ts.into_iter().map(|(m, c)| (m, f.from_i64(c))))
    })
}

fn test_space() -> Arc<QuadSpace> {
    space(Field::Prime(5), &[1, 2, 1, 3])
}

proptest! {
    #[test]
    fn associativity(a in arb_elem(test_space()), b in arb_elem(test_space()), c in arb_elem(test_space())) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn involution_laws(a in arb_elem(test_space()), b in arb_elem(test_space())) {
        prop_assert_eq!(a.alpha().alpha(), a.clone());
        prop_assert_eq!(a.star().star(), a.clone());
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!(a.alpha().star(), a.star().alpha());
        prop_assert_eq!(a.bar(), a.alpha().star());
        prop_assert_eq!(a.mul(&b).alpha(), a.alpha().mul(&b.alpha()));
        prop_assert_eq!(a.mul(&b).star(), b.star().mul(&a.star()));
        let (even, odd) = a.grade_parts();
        prop_assert_eq!(even.add(&odd), a);
    }

    #[test]
    fn anticommutator_is_twice_the_form(v in proptest::collection::vec(-4i64..5, 4), w in proptest::collection::vec(-4i64..5, 4)) {
        let s = test_space();
        let f = s.field();
        let v: Vector = v.iter().map(|&x| f.from_i64(x)).collect();
        let w: Vector = w.iter().map(|&x| f.from_i64(x)).collect();
        let (cv, cw) = (CliffordElem::vector(&s, &v), CliffordElem::vector(&s, &w));
        let anti = cv.mul(&cw).add(&cw.mul(&cv));
        prop_assert_eq!(anti, CliffordElem::scalar(&s, &f.from_i64(2) * &s.frame_bilinear(&v, &w)));
    }
}
