use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::GPinElem;
use crate::clifford::CliffordElem;
use crate::error::{Error, Result};
use crate::quadspace::QuadSpace;
use crate::scalars::matrix::unit_vector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    O,
    SO,
    GPin,
    GSpin,
}

/// Center of GPin(V) or GSpin(V): always the nonzero scalars, possibly
/// together with the scalar multiples of `zeta`, or the whole group when
/// that group is commutative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterDescription {
    pub group: GroupKind,
    pub scalars: bool,
    pub zeta_coset: bool,
    pub whole_group: bool,
}

impl CenterDescription {
    pub fn contains(&self, g: &GPinElem) -> bool {
        if self.whole_group || g.as_scalar().is_some() {
            return true;
        }
        let zeta_mask = (1u32 << g.space().dim()) - 1;
        self.zeta_coset && g.value().terms().len() == 1 && g.value().terms().contains_key(&zeta_mask)
    }
}

/// Case split by the parity of `n` and the group.
pub fn center(space: &QuadSpace, group: GroupKind) -> CenterDescription {
    let n = space.dim();
    let (zeta_coset, whole_group) = match group {
        GroupKind::GPin => (n % 2 == 1, false),
        GroupKind::GSpin if n == 2 => (false, true),
        GroupKind::GSpin => (n % 2 == 0, false),
        GroupKind::O | GroupKind::SO => panic!("center is described for GPin and GSpin only"),
    };
    CenterDescription { group, scalars: true, zeta_coset, whole_group }
}

/// `c` with `g zeta = c zeta g`, for even `n > 2`.
pub fn zeta_commutation(g: &GPinElem) -> Result<i8> {
    let n = g.space().dim();
    if n % 2 == 1 || n <= 2 {
        return Err(Error::WrongParityDimension);
    }
    let zeta = CliffordElem::zeta(g.space());
    let left = g.value().mul(&zeta);
    let right = zeta.mul(g.value());
    if left == right {
        Ok(1)
    } else if left == right.neg() {
        Ok(-1)
    } else {
        unreachable!("group elements commute with zeta up to sign")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitStructure {
    /// Odd `n` with trivial discriminant: `zeta'` central with square 1.
    Direct { zeta_prime: GPinElem },
    /// Odd `n`, discriminant not a square.
    NotSplit,
    /// Even `n`: an odd involution `t` found among the scaled basis vectors.
    Semidirect { t: GPinElem },
    /// Even `n`, no basis vector has square length.
    NotFoundAmongBasis,
}

pub fn split_structure(space: &Arc<QuadSpace>) -> SplitStructure {
    let n = space.dim();
    let field = space.field();
    if n % 2 == 1 {
        let zeta = GPinElem::zeta(space);
        let square = zeta.mul(&zeta).as_scalar().expect("zeta squares to a scalar");
        return match square.sqrt() {
            Some(root) => SplitStructure::Direct { zeta_prime: zeta.scale(&root.inv().expect("nonzero")) },
            None => SplitStructure::NotSplit,
        };
    }
    for i in 0..n {
        if let Some(root) = space.diag()[i].sqrt() {
            let t = GPinElem::from_vectors(space, &[unit_vector(field, n, i)], &root.inv().expect("nonzero"))
                .expect("basis vectors are anisotropic");
            return SplitStructure::Semidirect { t };
        }
    }
    SplitStructure::NotFoundAmongBasis
}
