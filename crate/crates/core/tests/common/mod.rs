#![allow(dead_code)]

use std::sync::Arc;

use gpin_core::gpin::{enumerate_gpin, enumerate_isometries, GPinElem, DEFAULT_CAP};
use gpin_core::quadspace::{Isometry, QuadSpace};
use gpin_core::scalars::{minimal_polynomial, Field};

pub fn space(p: u32, diag: &[i64]) -> Arc<QuadSpace> {
    Arc::new(QuadSpace::diagonal(Field::Prime(p), diag).unwrap())
}

/// Every diagonal form of dimension `n` over F_p with entries 1 or the least
/// nonresidue, i.e. all diagonal forms up to square classes of the entries.
pub fn diagonal_forms(p: u32, n: usize) -> Vec<Arc<QuadSpace>> {
    let nonresidue = (2..p as i64).find(|&a| !Field::Prime(p).from_i64(a).is_square()).unwrap();
    (0..1usize << n)
        .map(|bits| {
            let diag: Vec<i64> = (0..n).map(|i| if bits >> i & 1 == 1 { nonresidue } else { 1 }).collect();
            space(p, &diag)
        })
        .collect()
}

pub fn orthogonal_group(s: &Arc<QuadSpace>) -> Vec<Isometry> {
    enumerate_isometries(s, false, DEFAULT_CAP).unwrap()
}

pub fn gpin_group(s: &Arc<QuadSpace>) -> Vec<GPinElem> {
    enumerate_gpin(s, false, DEFAULT_CAP).unwrap()
}

/// Squarefree minimal polynomial, computed directly.
pub fn is_semisimple(h: &Isometry) -> bool {
    let p = minimal_polynomial(h.matrix());
    p.gcd(&p.derivative()).degree() == Some(0)
}

pub fn commutes(a: &Isometry, b: &Isometry) -> bool {
    a.matrix().mul(b.matrix()) == b.matrix().mul(a.matrix())
}

/// Elements of `group` commuting with `h`.
pub fn commutant<'a>(h: &Isometry, group: &'a [Isometry]) -> Vec<&'a Isometry> {
    group.iter().filter(|m| commutes(m, h)).collect()
}
