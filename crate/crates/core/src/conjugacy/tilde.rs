use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gpin::GPinElem;
use crate::quadspace::QuadSpace;
use crate::scalars::matrix::{unit_vector, vec_scale};
use crate::scalars::Vector;

/// The extensions of GPin(V), GSpin(V) and their subgroups over
/// `W = span(e_1, ..., e_(n-1))` by an involutive symbol `beta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum TildeGroup {
    /// GPin(V) x {1, beta}.
    GPin,
    /// GSpin(V) extended by `e^k beta`.
    GSpin,
    /// GPin(W) extended by `e beta`.
    GPinW,
    /// GSpin(W) extended by `e_(n-1)^(k-1) e beta`.
    GSpinW,
}

impl TildeGroup {
    /// The element `t` with `t beta` the non-trivial coset generator.
    pub fn twist(self, space: &Arc<QuadSpace>) -> GPinElem {
        let n = space.dim();
        let k = space.half_dim();
        let basis = |i: usize| unit_vector(space.field(), n, i);
        let vectors: Vec<Vector> = match self {
            TildeGroup::GPin => Vec::new(),
            TildeGroup::GSpin => (0..k).map(|_| basis(n - 1)).collect(),
            TildeGroup::GPinW => vec![basis(n - 1)],
            TildeGroup::GSpinW => (0..k - 1).map(|_| basis(n - 2)).chain([basis(n - 1)]).collect(),
        };
        GPinElem::from_vectors(space, &vectors, &space.field().one()).expect("basis vectors are anisotropic")
    }

    /// Whether `g` lies in the plain subgroup.
    pub fn admits(self, g: &GPinElem) -> bool {
        let last = 1u32 << (g.space().dim() - 1);
        let in_w = || g.value().terms().keys().all(|mask| mask & last == 0);
        match self {
            TildeGroup::GPin => true,
            TildeGroup::GSpin => g.is_even(),
            TildeGroup::GPinW => in_w(),
            TildeGroup::GSpinW => g.is_even() && in_w(),
        }
    }
}

/// `g (t beta)^b` with `beta` central and `beta^2 = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TildeElement {
    pub g: GPinElem,
    pub beta: bool,
    pub group: TildeGroup,
}

impl TildeElement {
    pub fn new(g: GPinElem, beta: bool, group: TildeGroup) -> Result<TildeElement> {
        if !group.admits(&g) {
            return Err(Error::OutsideSubgroup);
        }
        Ok(TildeElement { g, beta, group })
    }

    pub fn identity(space: &Arc<QuadSpace>, group: TildeGroup) -> TildeElement {
        TildeElement { g: GPinElem::one(space), beta: false, group }
    }

    /// The coset generator `t beta`.
    pub fn generator(space: &Arc<QuadSpace>, group: TildeGroup) -> TildeElement {
        TildeElement { g: GPinElem::one(space), beta: true, group }
    }

    /// `g1 (t beta)^b1 g2 (t beta)^b2 = g1 (t^b1 g2 t^-b1) t^(b1+b2) beta^(b1+b2)`,
    /// where `t^2` is a scalar.
    pub fn mul(&self, other: &TildeElement) -> TildeElement {
        assert_eq!(self.group, other.group, "elements of different groups");
        let space = self.g.space();
        let t = self.group.twist(space);
        let middle = if self.beta { t.conjugate(&other.g) } else { other.g.clone() };
        let mut g = self.g.mul(&middle);
        if self.beta && other.beta {
            g = g.mul(&t.mul(&t));
        }
        TildeElement { g, beta: self.beta ^ other.beta, group: self.group }
    }

    /// `-1` on the `beta` coset.
    pub fn chi(&self) -> i8 {
        if self.beta {
            -1
        } else {
            1
        }
    }

    /// `g . (h, v) = (g h g^-1, P(g) v)` and
    /// `t beta . (h, v) = (t sigma_V(h) t^-1, -P(t) v)`.
    pub fn act(&self, point: &(GPinElem, Vector)) -> (GPinElem, Vector) {
        let (mut h, mut v) = point.clone();
        if self.beta {
            let t = self.group.twist(h.space());
            h = t.conjugate(&h.sigma_v());
            v = vec_scale(&h.space().field().from_i64(-1), &t.projection().apply(&v));
        }
        (self.g.conjugate(&h), self.g.projection().apply(&v))
    }
}

/// `e sigma_V(g) e^-1`: the action of `e beta`.
pub fn tau_w(g: &GPinElem) -> GPinElem {
    TildeGroup::GPinW.twist(g.space()).conjugate(&g.sigma_v())
}

/// `(e_(n-1)^(k-1) e) sigma_V(g) (e_(n-1)^(k-1) e)^-1` on GSpin(V).
pub fn tau_w_gspin(g: &GPinElem) -> GPinElem {
    TildeGroup::GSpinW.twist(g.space()).conjugate(&g.sigma_v())
}
