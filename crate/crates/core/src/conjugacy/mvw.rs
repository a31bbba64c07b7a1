use std::sync::Arc;

use crate::centralizer::{anisotropic_in, decompose, Block, CentralizerDescription};
use crate::error::{Error, Result};
use crate::gpin::{enumerate_isometries, enumeration_cap};
use crate::quadspace::{reflect, Isometry, QuadSpace};
use crate::scalars::{Matrix, Vector};

/// Required determinants of the conjugator on `V+` and `V-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DetTargets {
    pub plus: i8,
    pub minus: i8,
}

impl Default for DetTargets {
    fn default() -> DetTargets {
        DetTargets { plus: 1, minus: 1 }
    }
}

/// An isometry `beta` with `beta h^-1 beta^-1 = h`, assembled block by block:
/// a swap of `X` and `X*` on GL blocks, conjugation of coordinates in an
/// orthogonal Hermitian basis on unitary blocks, and the identity or a
/// reflection on the `+-1` blocks.
pub fn mvw_beta(d: &CentralizerDescription, targets: DetTargets) -> Result<Isometry> {
    let h = d.isometry();
    let space = h.space();
    let m = h.matrix();
    let m_inv = h.inverse().matrix().clone();
    let mut sources: Vec<Vector> = Vec::new();
    let mut images: Vec<Vector> = Vec::new();
    for block in d.blocks() {
        match block {
            Block::GL { ext, x_basis, xstar_basis } => {
                for (e, f) in x_basis.iter().zip(xstar_basis) {
                    let (mut fwd, mut back) = (e.clone(), f.clone());
                    for j in 0..ext.degree() {
                        if j > 0 {
                            fwd = m.mul_vec(&fwd);
                            back = m_inv.mul_vec(&back);
                        }
                        sources.extend([fwd.clone(), back.clone()]);
                        images.extend([back.clone(), fwd.clone()]);
                    }
                }
            }
            Block::Unitary { ext, basis, .. } => {
                for e in basis {
                    let (mut fwd, mut back) = (e.clone(), e.clone());
                    for j in 0..ext.degree() {
                        if j > 0 {
                            fwd = m.mul_vec(&fwd);
                            back = m_inv.mul_vec(&back);
                        }
                        sources.push(fwd.clone());
                        images.push(back.clone());
                    }
                }
            }
            Block::Plus(basis) => orthogonal_piece(space, basis, targets.plus, &mut sources, &mut images)?,
            Block::Minus(basis) => orthogonal_piece(space, basis, targets.minus, &mut sources, &mut images)?,
        }
    }
    for (basis, det) in [(d.plus_basis(), targets.plus), (d.minus_basis(), targets.minus)] {
        if basis.is_empty() && det != 1 {
            return Err(Error::UnreachableDet);
        }
    }
    let field = space.field();
    let n = space.dim();
    let s = Matrix::from_columns(field, n, &sources);
    let t = Matrix::from_columns(field, n, &images);
    let beta = t.mul(&s.inverse().expect("blocks span V"));
    Ok(Isometry::new_unchecked(space, beta))
}

fn orthogonal_piece(
    space: &Arc<QuadSpace>,
    basis: &[Vector],
    det: i8,
    sources: &mut Vec<Vector>,
    images: &mut Vec<Vector>,
) -> Result<()> {
    sources.extend(basis.iter().cloned());
    if det == 1 {
        images.extend(basis.iter().cloned());
        return Ok(());
    }
    let v = anisotropic_in(space, basis).ok_or(Error::UnreachableDet)?;
    let r = reflect(space, &v)?;
    images.extend(basis.iter().map(|b| r.apply(b)));
    Ok(())
}

/// First element of `group`, in its order, conjugating `h^-1` to `h`.
pub fn brute_force_mvw(h: &Isometry, group: &[Isometry]) -> Option<Isometry> {
    let h_inv = h.inverse();
    group.iter().find(|b| b.compose(&h_inv) == h.compose(b)).cloned()
}

/// A witness `beta` with `beta h^-1 beta^-1 = h`: constructive for
/// semisimple `h`, otherwise found by exhaustive search over O(V).
pub fn mvw_verify(h: &Isometry) -> Result<Isometry> {
    match decompose(h) {
        Ok(d) => mvw_beta(&d, DetTargets::default()),
        Err(Error::NotSemisimple) => {
            let group = enumerate_isometries(h.space(), false, enumeration_cap()).map_err(|e| match e {
                Error::NotEnumerable => Error::NotFound,
                other => other,
            })?;
            brute_force_mvw(h, &group).ok_or(Error::NotFound)
        }
        Err(e) => Err(e),
    }
}
