mod common;

use std::sync::Arc;

use common::*;
use gpin_core::centralizer::decompose;
use gpin_core::conjugacy::{
    brute_force_conjugate, brute_force_mvw, conjugator, conjugator_gspin, conjugator_with, mvw_beta, mvw_verify,
    tau_w, tau_w_gspin, DetTargets, Involution, TildeElement, TildeGroup,
};
use gpin_core::gpin::GPinElem;
use gpin_core::quadspace::{Isometry, QuadSpace};
use gpin_core::scalars::matrix::unit_vector;
use gpin_core::scalars::{Field, Matrix, Vector};
use gpin_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn conjugates_inverse(beta: &Isometry, h: &Isometry) -> bool {
    beta.compose(&h.inverse()) == h.compose(beta)
}

#[test]
fn mvw_examples() {
    let s = space(3, &[1, 1]);
    assert!(mvw_verify(&Isometry::identity(&s)).unwrap().is_identity());
    assert!(mvw_verify(&Isometry::minus_identity(&s)).unwrap().is_identity());

    let rot = Isometry::new(&s, Matrix::from_i64_rows(Field::Prime(3), &[&[0, -1], &[1, 0]])).unwrap();
    let constructive = mvw_verify(&rot).unwrap();
    assert!(conjugates_inverse(&constructive, &rot));
    let brute = brute_force_mvw(&rot, &orthogonal_group(&s)).unwrap();
    assert!(conjugates_inverse(&brute, &rot));

    // Hyperbolic plane with h = diag(2, 3): beta swaps the eigenlines, det -1.
    let f5 = Field::Prime(5);
    let s = Arc::new(QuadSpace::new(Matrix::from_i64_rows(f5, &[&[0, 1], &[1, 0]])).unwrap());
    let h = Isometry::from_original(&s, &Matrix::from_i64_rows(f5, &[&[2, 0], &[0, 3]])).unwrap();
    let beta = mvw_verify(&h).unwrap();
    assert!(conjugates_inverse(&beta, &h));
    assert_eq!(beta.det_sign(), -1);
    let swap = beta.to_original();
    assert!(swap[(0, 0)].is_zero() && swap[(1, 1)].is_zero());
}

#[test]
fn mvw_unreachable_det() {
    let s = space(3, &[1, 1]);
    let d = decompose(&Isometry::identity(&s)).unwrap();
    assert_eq!(mvw_beta(&d, DetTargets { plus: 1, minus: -1 }).unwrap_err(), Error::UnreachableDet);
    let beta = mvw_beta(&d, DetTargets { plus: -1, minus: 1 }).unwrap();
    assert_eq!(beta.det_sign(), -1);
}

/// Every element of O_2 and O_3 over F_3 is conjugate to its inverse, and
/// the block construction agrees wherever it applies.
#[test]
fn mvw_exhaustive_small_groups() {
    for n in 2..=3 {
        for s in diagonal_forms(3, n) {
            let group = orthogonal_group(&s);
            for h in &group {
                let brute = brute_force_mvw(h, &group).expect("witness exists");
                assert!(conjugates_inverse(&brute, h));
                let witness = mvw_verify(h).unwrap();
                assert!(conjugates_inverse(&witness, h));
                if is_semisimple(h) {
                    let d = decompose(h).unwrap();
                    for (plus, minus) in [(1, 1), (-1, 1), (1, -1), (-1, -1)] {
                        match mvw_beta(&d, DetTargets { plus, minus }) {
                            Ok(beta) => assert!(conjugates_inverse(&beta, h)),
                            Err(e) => assert_eq!(e, Error::UnreachableDet),
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn mvw_block_determinants() {
    // GL and unitary pieces contribute (-1)^(dim/2).
    for (p, n) in [(3, 2), (3, 3), (5, 2), (5, 3), (7, 2)] {
        for s in diagonal_forms(p, n) {
            for h in orthogonal_group(&s).iter().filter(|h| is_semisimple(h)) {
                let d = decompose(h).unwrap();
                let beta = mvw_beta(&d, DetTargets::default()).unwrap();
                let expected: usize = d
                    .blocks()
                    .iter()
                    .filter(|b| b.ext().is_some())
                    .map(|b| b.dim() / 2)
                    .sum();
                assert_eq!(beta.det_sign(), if expected % 2 == 0 { 1 } else { -1 });
            }
        }
    }
}

#[test]
fn conjugator_examples() {
    let s = space(3, &[1, 1]);
    let z = GPinElem::scalar(&s, &Field::Prime(3).from_i64(2)).unwrap();
    let cert = conjugator(&z).unwrap();
    assert!(cert.is_valid());
    assert_eq!(cert.det_beta, -1, "k = 1 forces an odd conjugator");
    let s3 = space(3, &[1, 1, 1, 1]);
    let cert = conjugator(&GPinElem::one(&s3)).unwrap();
    assert!(cert.eta.as_scalar().is_some_and(|c| c.is_one()));

    let zeta = GPinElem::zeta(&s);
    assert_eq!(zeta.sigma_v(), zeta.neg());
    let e1 = GPinElem::from_vectors(&s, &[unit_vector(Field::Prime(3), 2, 0)], &Field::Prime(3).one()).unwrap();
    assert_eq!(e1.conjugate(&zeta.neg()), zeta);
    let cert = conjugator(&zeta).unwrap();
    assert!(cert.is_valid() && cert.det_constraint_holds());
}

/// Every semisimple g of GPin(V)(F_3), n <= 3: the certificate validates,
/// honours the determinant rule on GSpin, and agrees with brute force.
#[test]
fn conjugator_exhaustive() {
    for n in 1..=3 {
        for s in diagonal_forms(3, n) {
            let group = gpin_group(&s);
            for g in group.iter().filter(|g| is_semisimple(g.projection())) {
                assert!(brute_force_conjugate(g, &g.sigma_v(), &group).is_some());
                let cert = conjugator(g).unwrap_or_else(|e| panic!("g = {g} on {s}: {e}"));
                assert!(cert.is_valid(), "g = {g}");
                assert!(cert.det_constraint_holds(), "g = {g}");
                if g.is_even() {
                    assert!(cert.repair.is_none());
                }
                let gs = conjugator_gspin(g);
                if g.is_even() {
                    let gs = gs.unwrap();
                    assert!(gs.is_valid(), "gspin g = {g}");
                    assert!(gs.eta.is_even());
                } else {
                    assert_eq!(gs.unwrap_err(), Error::NotEven);
                }
            }
        }
    }
}

#[test]
fn clifford_involution_in_even_dimension() {
    for s in diagonal_forms(3, 2) {
        for g in gpin_group(&s).iter().filter(|g| is_semisimple(g.projection())) {
            let cert = conjugator_with(g, Involution::Clifford).unwrap();
            assert!(cert.is_valid());
            assert_eq!(cert.eta.conjugate(&g.bar()), *g);
        }
    }
    let s = space(3, &[1, 1, 1]);
    assert_eq!(conjugator_with(&GPinElem::one(&s), Involution::Clifford).unwrap_err(), Error::WrongParityDimension);
}

#[test]
fn conjugator_on_rational_space() {
    let q = Field::Rational;
    let s = Arc::new(QuadSpace::diagonal(q, &[1, 2, 3, 5]).unwrap());
    let v = |c: &[i64]| c.iter().map(|&x| q.from_i64(x)).collect::<Vector>();
    let mut certified = 0;
    for vectors in [vec![v(&[1, 1, 0, 0]), v(&[0, 1, 1, 0])], vec![v(&[1, 0, 0, 0]), v(&[0, 0, 1, 1]), v(&[1, 1, 1, 0])]] {
        let g = GPinElem::from_vectors(&s, &vectors, &q.from_i64(3)).unwrap();
        match conjugator(&g) {
            Ok(cert) => {
                assert!(cert.is_valid() && cert.det_constraint_holds());
                certified += 1;
            }
            Err(Error::FactorizationUnsupported(_)) | Err(Error::NotSemisimple) => {}
            Err(e) => panic!("{e}"),
        }
    }
    assert!(certified > 0);
}

#[test]
fn brute_force_oracle_examples() {
    let s = space(3, &[1, 1]);
    let group = gpin_group(&s);
    let zeta = GPinElem::zeta(&s);
    let id = brute_force_conjugate(&zeta, &zeta, &group).unwrap();
    assert!(id.as_scalar().is_some_and(|c| c.is_one()));
    let eta = brute_force_conjugate(&zeta, &zeta.neg(), &group).unwrap();
    assert!(!eta.is_even());
    let two = GPinElem::scalar(&s, &Field::Prime(3).from_i64(2)).unwrap();
    assert!(brute_force_conjugate(&GPinElem::one(&s), &two, &group).is_none());
}

#[test]
fn sigma_is_equivariant() {
    for s in diagonal_forms(3, 3).into_iter().take(3) {
        let group = gpin_group(&s);
        for g in group.iter().step_by(5) {
            for h in group.iter().step_by(7) {
                assert_eq!(g.conjugate(h).sigma_v(), g.conjugate(&h.sigma_v()));
            }
        }
    }
}

#[test]
fn tau_w_examples() {
    let s = space(3, &[1, 1, 1]);
    let f = Field::Prime(3);
    let e = GPinElem::from_vectors(&s, &[unit_vector(f, 3, 2)], &f.one()).unwrap();
    let t = tau_w(&e);
    assert!(t == e || t == e.neg());
    let z = GPinElem::scalar(&s, &f.from_i64(2)).unwrap();
    assert_eq!(tau_w(&z), z);
}

fn in_w(g: &GPinElem) -> bool {
    TildeGroup::GPinW.admits(g)
}

#[test]
fn tau_w_preserves_subgroups() {
    for n in 1..=3 {
        for s in diagonal_forms(3, n) {
            for g in gpin_group(&s) {
                let t = tau_w(&g);
                assert_eq!(tau_w(&t), g, "involution");
                if in_w(&g) {
                    assert!(in_w(&t));
                }
                if g.is_even() {
                    let t = tau_w_gspin(&g);
                    assert!(t.is_even());
                    assert_eq!(tau_w_gspin(&t), g);
                    if in_w(&g) {
                        assert!(in_w(&t));
                    }
                }
            }
        }
    }
}

fn random_point(rng: &mut ChaCha8Rng, group: &[GPinElem], p: u32, n: usize) -> (GPinElem, Vector) {
    let h = group[rng.gen_range(0..group.len())].clone();
    let v = (0..n).map(|_| Field::Prime(p).from_i64(rng.gen_range(0..p as i64))).collect();
    (h, v)
}

fn random_tilde(rng: &mut ChaCha8Rng, members: &[GPinElem], tag: TildeGroup) -> TildeElement {
    let g = members[rng.gen_range(0..members.len())].clone();
    TildeElement::new(g, rng.gen_bool(0.5), tag).unwrap()
}

#[test]
fn tilde_action_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for diag in [&[1, 1, 1][..], &[1, 2, 1, 2]] {
        let s = space(3, diag);
        let n = diag.len();
        let group = gpin_group(&s);
        for tag in [TildeGroup::GPin, TildeGroup::GSpin, TildeGroup::GPinW, TildeGroup::GSpinW] {
            let members: Vec<GPinElem> = group.iter().filter(|g| tag.admits(g)).cloned().collect();
            let points: Vec<GPinElem> = match tag {
                TildeGroup::GSpin | TildeGroup::GSpinW => group.iter().filter(|g| g.is_even()).cloned().collect(),
                _ => group.clone(),
            };
            let one = TildeElement::identity(&s, tag);
            let gen = TildeElement::generator(&s, tag);
            for _ in 0..100 {
                let a = random_tilde(&mut rng, &members, tag);
                let b = random_tilde(&mut rng, &members, tag);
                let x = random_point(&mut rng, &points, 3, n);
                assert_eq!(a.mul(&b).act(&x), a.act(&b.act(&x)), "{tag:?}");
                assert_eq!(one.act(&x), x);
                assert_eq!(gen.mul(&gen).act(&x), x, "(t beta)^2 acts trivially");
                assert_eq!(a.mul(&b).chi(), a.chi() * b.chi());
                assert!(tag.admits(&a.mul(&b).g), "closure");
            }
            assert_eq!(gen.chi(), -1);
            assert_eq!(one.chi(), 1);
        }
        let beta = TildeElement::generator(&s, TildeGroup::GPin);
        assert_eq!(beta.mul(&beta), TildeElement::identity(&s, TildeGroup::GPin));
        let zero = vec![Field::Prime(3).zero(); n];
        for g in group.iter().step_by(11) {
            let plain = TildeElement::new(g.clone(), false, TildeGroup::GPin).unwrap();
            assert_eq!(plain.act(&(GPinElem::one(&s), zero.clone())), (GPinElem::one(&s), zero.clone()));
            assert_eq!(beta.mul(&plain), plain.mul(&beta), "beta is central");
        }
        let h = group[3].clone();
        let v = unit_vector(Field::Prime(3), n, 0);
        let (sh, mv) = beta.act(&(h.clone(), v.clone()));
        assert_eq!(sh, h.sigma_v());
        assert_eq!(mv, v.iter().map(|c| -c).collect::<Vector>());
    }
}

#[test]
fn tilde_rejects_outside_elements() {
    let s = space(3, &[1, 1, 1]);
    let f = Field::Prime(3);
    let e = GPinElem::from_vectors(&s, &[unit_vector(f, 3, 2)], &f.one()).unwrap();
    assert_eq!(TildeElement::new(e.clone(), false, TildeGroup::GPinW).unwrap_err(), Error::OutsideSubgroup);
    assert_eq!(TildeElement::new(e, true, TildeGroup::GSpin).unwrap_err(), Error::OutsideSubgroup);
}
