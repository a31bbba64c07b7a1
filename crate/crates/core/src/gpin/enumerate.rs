use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use super::{GPinElem, GroupKind};
use crate::error::{Error, Result};
use crate::quadspace::{reflect, Isometry, QuadSpace};
use crate::scalars::{Field, Vector};

pub const DEFAULT_CAP: usize = 1_000_000;

/// Enumeration cap, overridable through the `GPIN_CAP` environment variable.
pub fn enumeration_cap() -> usize {
    std::env::var("GPIN_CAP").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_CAP)
}

/// Every nonzero frame vector whose first nonzero coordinate is 1, in
/// lexicographic order of coordinates.
pub fn projective_points(space: &QuadSpace) -> Result<Vec<Vector>> {
    let Field::Prime(p) = space.field() else {
        return Err(Error::NotEnumerable);
    };
    let n = space.dim();
    let field = space.field();
    let mut out = Vec::new();
    for lead in 0..n {
        let free = n - lead - 1;
        let count = (p as u64).pow(free as u32);
        for code in 0..count {
            let mut v = vec![field.zero(); n];
            v[lead] = field.one();
            let mut rest = code;
            for slot in v.iter_mut().skip(lead + 1).rev() {
                *slot = field.from_i64((rest % p as u64) as i64);
                rest /= p as u64;
            }
            out.push(v);
        }
    }
    Ok(out)
}

/// All elements of O(V) (or SO(V)) in breadth-first order from the identity,
/// generated by the reflections in all anisotropic lines.
pub fn enumerate_isometries(space: &Arc<QuadSpace>, special: bool, cap: usize) -> Result<Vec<Isometry>> {
    let generators: Vec<Isometry> = projective_points(space)?
        .iter()
        .filter(|v| !space.frame_quadratic(v).is_zero())
        .map(|v| reflect(space, v).expect("anisotropic"))
        .collect();
    let identity = Isometry::identity(space);
    let mut seen: HashSet<Isometry> = HashSet::from([identity.clone()]);
    let mut order = vec![identity.clone()];
    let mut queue = VecDeque::from([identity]);
    while let Some(m) = queue.pop_front() {
        for r in &generators {
            let next = m.compose(r);
            if seen.insert(next.clone()) {
                if seen.len() > cap {
                    return Err(Error::CapExceeded { cap });
                }
                order.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    if special {
        order.retain(|m| m.det_sign() == 1);
    }
    Ok(order)
}

/// All of GPin(V) (or GSpin(V)) as `z * lift(m)`, isometry-major with `z`
/// running through `1, ..., p-1`.
pub fn enumerate_gpin(space: &Arc<QuadSpace>, even: bool, cap: usize) -> Result<Vec<GPinElem>> {
    let Field::Prime(p) = space.field() else {
        return Err(Error::NotEnumerable);
    };
    let isometries = enumerate_isometries(space, even, cap)?;
    let units = (p - 1) as usize;
    if isometries.len().saturating_mul(units) > cap {
        return Err(Error::CapExceeded { cap });
    }
    let field = space.field();
    let mut out = Vec::with_capacity(isometries.len() * units);
    for m in &isometries {
        let g = GPinElem::lift(m);
        for z in 1..p {
            out.push(g.scale(&field.from_i64(z as i64)));
        }
    }
    Ok(out)
}

/// A finite group listed element by element.
#[derive(Debug, Clone)]
pub enum EnumeratedGroup {
    Isometries(Vec<Isometry>),
    Spinors(Vec<GPinElem>),
}

impl EnumeratedGroup {
    pub fn len(&self) -> usize {
        match self {
            EnumeratedGroup::Isometries(v) => v.len(),
            EnumeratedGroup::Spinors(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn enumerate_group(space: &Arc<QuadSpace>, group: GroupKind) -> Result<EnumeratedGroup> {
    let cap = enumeration_cap();
    Ok(match group {
        GroupKind::O => EnumeratedGroup::Isometries(enumerate_isometries(space, false, cap)?),
        GroupKind::SO => EnumeratedGroup::Isometries(enumerate_isometries(space, true, cap)?),
        GroupKind::GPin => EnumeratedGroup::Spinors(enumerate_gpin(space, false, cap)?),
        GroupKind::GSpin => EnumeratedGroup::Spinors(enumerate_gpin(space, true, cap)?),
    })
}
