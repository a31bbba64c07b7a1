mod element {
    use gpin_core::gpin::*;
    use gpin_core::clifford::*;
    use gpin_core::quadspace::*;
    use gpin_core::{Error, NonMemberReason};
    use std::sync::Arc;
    use gpin_core::scalars::matrix::unit_vector;
    use gpin_core::scalars::Field;

    fn space(field: Field, diag: &[i64]) -> Arc<QuadSpace> {
        Arc::new(QuadSpace::diagonal(field, diag).unwrap())
    }

    #[test]
    fn membership_examples() {
        let q = Field::Rational;
        let s = space(q, &[1, 1, 1, 1]);
        let v = GPinElem::membership(&CliffordElem::vector(&s, &[q.from_i64(1), q.from_i64(2), q.zero(), q.zero()])).unwrap();
        assert_eq!(v.parity(), Parity::Odd);
        let one_plus_zeta = CliffordElem::one(&s).add(&CliffordElem::zeta(&s));
        assert_eq!(GPinElem::membership(&one_plus_zeta), Err(Error::NotMember(NonMemberReason::NonInvertible)));
        let z = GPinElem::membership(&CliffordElem::scalar(&s, q.from_i64(3))).unwrap();
        assert_eq!(z.parity(), Parity::Even);
        assert!(z.projection().is_identity());
        let mixed = CliffordElem::one(&s).add(&CliffordElem::basis_vector(&s, 0));
        assert_eq!(GPinElem::membership(&mixed), Err(Error::NotMember(NonMemberReason::MixedParity)));
        // For n = 6, 1 + zeta has norm 1 - zeta^2 = 2 but maps v to zeta v.
        let s6 = space(q, &[1, 1, 1, 1, 1, 1]);
        let one_plus_zeta6 = CliffordElem::one(&s6).add(&CliffordElem::zeta(&s6));
        assert_eq!(GPinElem::membership(&one_plus_zeta6), Err(Error::NotMember(NonMemberReason::DoesNotStabilizeV)));
    }

    #[test]
    fn projections_of_generators() {
        let q = Field::Rational;
        let s = space(q, &[1, 1, 1]);
        let e1 = GPinElem::from_vectors(&s, &[unit_vector(q, 3, 0)], &q.one()).unwrap();
        assert_eq!(e1.projection(), &reflect(&s, &unit_vector(q, 3, 0)).unwrap());
        assert_eq!(GPinElem::zeta(&s).projection(), &Isometry::minus_identity(&s));
        let lifted = GPinElem::lift(&Isometry::minus_identity(&s));
        let ratio = lifted.value().coeff(0b111);
        assert_eq!(lifted.value(), &CliffordElem::zeta(&s).scale(&ratio));
        assert_eq!(GPinElem::lift(&Isometry::identity(&s)), GPinElem::one(&s));
    }

    #[test]
    fn from_vectors_examples() {
        let q = Field::Rational;
        let s = space(q, &[2, 3]);
        let e1 = unit_vector(q, 2, 0);
        let e2 = unit_vector(q, 2, 1);
        let g = GPinElem::from_vectors(&s, &[e1.clone(), e2], &q.from_i64(2)).unwrap();
        assert!(g.is_even());
        assert_eq!(g.value(), &CliffordElem::blade(&s, 0b11, q.from_i64(2)));
        let sq = GPinElem::from_vectors(&s, &[e1.clone(), e1.clone()], &q.one()).unwrap();
        assert_eq!(sq.as_scalar(), Some(q.from_i64(2)));
        assert_eq!(GPinElem::from_vectors(&s, &[e1], &q.zero()), Err(Error::ZeroScalar));
    }

    #[test]
    fn sigma_examples() {
        let q = Field::Rational;
        let s4 = space(q, &[1, 1, 1, 1]);
        let e12 = GPinElem::membership(&CliffordElem::blade(&s4, 0b11, q.one())).unwrap();
        assert_eq!(e12.sigma_v(), e12.neg());
        let s3 = space(q, &[1, 1, 1]);
        assert_eq!(GPinElem::zeta(&s3).sigma_v(), GPinElem::zeta(&s3));
    }

    #[test]
    fn pin_and_spinor_norm() {
        let q = Field::Rational;
        let s = space(q, &[-1, 1]);
        let e1 = GPinElem::from_vectors(&s, &[unit_vector(q, 2, 0)], &q.one()).unwrap();
        assert_eq!(e1.pin_spin(), PinSpin { pin: true, spin: false });
        let two = GPinElem::scalar(&s, &q.from_i64(2)).unwrap();
        assert_eq!(two.pin_spin(), PinSpin { pin: false, spin: false });
        assert_eq!(GPinElem::one(&s).pin_spin(), PinSpin { pin: true, spin: true });
        let s3 = space(q, &[1, 2, 3]);
        let v = vec![q.from_i64(1), q.from_i64(1), q.zero()];
        assert_eq!(spinor_norm(&reflect(&s3, &v).unwrap()), q.from_i64(-3));
        assert_eq!(spinor_norm(&Isometry::identity(&s3)), q.one());
    }
}

mod center {
    use gpin_core::gpin::*;
    use gpin_core::clifford::*;
    use gpin_core::quadspace::*;
    use gpin_core::Error;
    use std::sync::Arc;
    use gpin_core::scalars::Field;

    fn space(field: Field, diag: &[i64]) -> Arc<QuadSpace> {
        Arc::new(QuadSpace::diagonal(field, diag).unwrap())
    }

    #[test]
    fn center_cases() {
        let q = Field::Rational;
        let c3 = center(&space(q, &[1, 1, 1]), GroupKind::GPin);
        assert!(c3.zeta_coset && !c3.whole_group);
        let s4 = space(q, &[1, 1, 1, 1]);
        assert!(center(&s4, GroupKind::GSpin).zeta_coset);
        assert!(!center(&s4, GroupKind::GPin).zeta_coset);
        assert!(center(&space(q, &[1, 1]), GroupKind::GSpin).whole_group);
    }

    #[test]
    fn zeta_commutation_examples() {
        let q = Field::Rational;
        let s4 = space(q, &[1, 1, 1, 1]);
        let e1 = GPinElem::membership(&CliffordElem::basis_vector(&s4, 0)).unwrap();
        assert_eq!(zeta_commutation(&e1), Ok(-1));
        let e12 = GPinElem::membership(&CliffordElem::blade(&s4, 0b11, q.one())).unwrap();
        assert_eq!(zeta_commutation(&e12), Ok(1));
        let s3 = space(q, &[1, 1, 1]);
        assert_eq!(zeta_commutation(&GPinElem::one(&s3)), Err(Error::WrongParityDimension));
    }

    #[test]
    fn split_examples() {
        let f5 = Field::Prime(5);
        match split_structure(&space(f5, &[1, 1, 1])) {
            SplitStructure::Direct { zeta_prime } => {
                assert!(zeta_prime.mul(&zeta_prime).value().as_scalar().unwrap().is_one());
            }
            other => panic!("expected a direct splitting, got {other:?}"),
        }
        assert_eq!(split_structure(&space(Field::Rational, &[1, 1, 1])), SplitStructure::NotSplit);
        let s2 = space(Field::Rational, &[1, 1]);
        match split_structure(&s2) {
            SplitStructure::Semidirect { t } => assert_eq!(t.value(), &CliffordElem::basis_vector(&s2, 0)),
            other => panic!("expected t = e1, got {other:?}"),
        }
        assert_eq!(split_structure(&space(Field::Rational, &[2, 3])), SplitStructure::NotFoundAmongBasis);
    }
}

mod enumerate {
    use gpin_core::gpin::*;
    use gpin_core::quadspace::*;
    use gpin_core::scalars::*;
    use gpin_core::Error;
    use std::sync::Arc;

    fn space(p: u32, diag: &[i64]) -> Arc<QuadSpace> {
        Arc::new(QuadSpace::diagonal(Field::Prime(p), diag).unwrap())
    }

    #[test]
    fn small_orders() {
        assert_eq!(enumerate_gpin(&space(3, &[1]), false, DEFAULT_CAP).unwrap().len(), 4);
        // x^2 + y^2 is anisotropic over F_3: |O_2^-(3)| = 2(3 + 1).
        assert_eq!(enumerate_isometries(&space(3, &[1, 1]), false, DEFAULT_CAP).unwrap().len(), 8);
        // x^2 + 2y^2 is a hyperbolic plane: |O_2^+(3)| = 2(3 - 1).
        assert_eq!(enumerate_isometries(&space(3, &[1, 2]), false, DEFAULT_CAP).unwrap().len(), 4);
        assert_eq!(enumerate_isometries(&space(3, &[1, 1, 1]), false, DEFAULT_CAP).unwrap().len(), 48);
        assert_eq!(enumerate_isometries(&space(3, &[1, 1, 1]), true, DEFAULT_CAP).unwrap().len(), 24);
    }

    #[test]
    fn cap_and_field_errors() {
        assert_eq!(enumerate_isometries(&space(3, &[1, 1, 1]), false, 10), Err(Error::CapExceeded { cap: 10 }));
        let q = Arc::new(QuadSpace::diagonal(Field::Rational, &[1]).unwrap());
        assert_eq!(enumerate_gpin(&q, false, DEFAULT_CAP), Err(Error::NotEnumerable));
    }
}
