use serde_json::{json, Value};

use super::mvw::{mvw_beta, DetTargets};
use crate::centralizer::{anisotropic_in, decompose, Block, CentralizerDescription};
use crate::error::{Error, Result};
use crate::gpin::GPinElem;
use crate::quadspace::Isometry;
use crate::scalars::matrix::unit_vector;
use crate::scalars::{Matrix, Vector};

/// Which involution `g` is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Involution {
    /// `sigma_V`.
    Canonical,
    /// The Clifford involution `bar`, for even `n`.
    Clifford,
}

impl Involution {
    pub fn apply(self, g: &GPinElem) -> GPinElem {
        match self {
            Involution::Canonical => g.sigma_v(),
            Involution::Clifford => g.bar(),
        }
    }
}

/// `eta` with `eta * tau(target) * eta^-1 = target`.
#[derive(Debug, Clone)]
pub struct ConjugatorCertificate {
    pub eta: GPinElem,
    pub target: GPinElem,
    pub involution: Involution,
    /// `det P(eta)`.
    pub det_beta: i8,
    /// Determinant of `P(eta)` on each block of the decomposition.
    pub block_dets: Vec<i8>,
    /// Anisotropic vector appended to `eta` to fix a sign, if one was needed.
    pub repair: Option<Vector>,
}

impl ConjugatorCertificate {
    pub fn conjugates(&self) -> bool {
        self.eta.conjugate(&self.involution.apply(&self.target)) == self.target
    }

    /// `det P(eta) = (-1)^k` when the target is even.
    pub fn det_constraint_holds(&self) -> bool {
        let k = self.target.space().half_dim();
        !self.target.is_even() || self.det_beta == if k % 2 == 0 { 1 } else { -1 }
    }

    pub fn is_valid(&self) -> bool {
        self.conjugates() && self.eta.projection().det_sign() == self.det_beta
    }

    pub fn to_json(&self) -> Value {
        json!({
            "eta": self.eta.value().to_json_map(),
            "target": self.target.value().to_json_map(),
            "involution": self.involution,
            "det_beta": self.det_beta,
            "block_dets": self.block_dets,
            "repair": self.repair.as_ref().map(|v| v.iter().map(|c| c.to_string()).collect::<Vec<_>>()),
            "conjugates": self.conjugates(),
            "det_constraint": self.det_constraint_holds(),
        })
    }
}

/// `eta` with `eta * sigma_V(g) * eta^-1 = g` for semisimple `g`.
pub fn conjugator(g: &GPinElem) -> Result<ConjugatorCertificate> {
    conjugator_with(g, Involution::Canonical)
}

/// As [`conjugator`] for a chosen involution. The determinant of the lifted
/// `beta` is `(-1)^(k_i)` on each GL or unitary block and `(-1)^(k_-)` on
/// `V-`; on `V+` it is chosen to make `det = (-1)^k` for even `g`. A result
/// of `-g` is repaired by an anisotropic vector of `V+`, then of `V-`.
pub fn conjugator_with(g: &GPinElem, involution: Involution) -> Result<ConjugatorCertificate> {
    let space = g.space().clone();
    let n = space.dim();
    if involution == Involution::Clifford && n % 2 == 1 {
        return Err(Error::WrongParityDimension);
    }
    let d = decompose(g.projection())?;
    let sign = |e: usize| if e % 2 == 0 { 1i8 } else { -1 };
    let k = space.half_dim();
    let k_blocks: usize = d
        .blocks()
        .iter()
        .filter(|b| matches!(b, Block::GL { .. } | Block::Unitary { .. }))
        .map(Block::half_dim)
        .sum();
    let k_minus = d.minus_dim().div_ceil(2);
    let minus = sign(k_minus);
    let plus = if g.is_even() { sign(k + k_blocks + k_minus) } else { 1 };
    let beta = mvw_beta(&d, DetTargets { plus, minus })?;
    let eta = GPinElem::lift(&beta);
    let twisted = involution.apply(g);
    let image = eta.conjugate(&twisted);
    if image == *g {
        return Ok(certificate(eta, g, involution, &d, None));
    }
    if image != g.neg() {
        return Err(Error::RepairFailed(format!("eta conjugates to {image}, not +-{g}")));
    }
    let candidates = [d.plus_basis(), d.minus_basis()].into_iter().flat_map(|basis| {
        let anisotropic = basis.iter().filter(|v| !space.frame_quadratic(v).is_zero()).cloned();
        anisotropic.chain(anisotropic_in(&space, basis))
    });
    for x in candidates {
        let fixed = eta.mul(&GPinElem::from_vectors(&space, std::slice::from_ref(&x), &space.field().one())?);
        if fixed.conjugate(&twisted) == *g {
            return Ok(certificate(fixed, g, involution, &d, Some(x)));
        }
    }
    Err(Error::RepairFailed(format!("no anisotropic vector of V+ or V- turns -{g} into {g}")))
}

fn certificate(
    eta: GPinElem,
    g: &GPinElem,
    involution: Involution,
    d: &CentralizerDescription,
    repair: Option<Vector>,
) -> ConjugatorCertificate {
    let p = eta.projection();
    let block_dets = d.spans().iter().map(|span| restricted_det_sign(p, span)).collect();
    ConjugatorCertificate {
        det_beta: p.det_sign(),
        eta,
        target: g.clone(),
        involution,
        block_dets,
        repair,
    }
}

fn restricted_det_sign(m: &Isometry, span: &[Vector]) -> i8 {
    let b = Matrix::from_columns(m.space().field(), m.space().dim(), span);
    m.matrix().restrict(&b).expect("blocks are invariant").det().as_sign().expect("isometry of a block")
}

/// `eta` in GSpin(V) with `eta * (e^k sigma_V(g) e^-k) * eta^-1 = g`, where
/// `e` is the last basis vector.
#[derive(Debug, Clone)]
pub struct GSpinCertificate {
    pub eta: GPinElem,
    pub target: GPinElem,
    /// `e^k sigma_V(g) e^-k`.
    pub twisted: GPinElem,
}

impl GSpinCertificate {
    pub fn is_valid(&self) -> bool {
        self.eta.is_even() && self.eta.conjugate(&self.twisted) == self.target
    }

    pub fn to_json(&self) -> Value {
        json!({
            "eta": self.eta.value().to_json_map(),
            "target": self.target.value().to_json_map(),
            "twisted": self.twisted.value().to_json_map(),
            "eta_even": self.eta.is_even(),
            "conjugates": self.eta.conjugate(&self.twisted) == self.target,
        })
    }
}

pub fn conjugator_gspin(g: &GPinElem) -> Result<GSpinCertificate> {
    if !g.is_even() {
        return Err(Error::NotEven);
    }
    let space = g.space().clone();
    let n = space.dim();
    let k = space.half_dim();
    let cert = conjugator(g)?;
    let e = GPinElem::from_vectors(&space, &[unit_vector(space.field(), n, n - 1)], &space.field().one())?;
    let e_k = (0..k).fold(GPinElem::one(&space), |acc, _| acc.mul(&e));
    let twisted = e_k.conjugate(&g.sigma_v());
    let eta = if k % 2 == 0 { cert.eta } else { cert.eta.mul(&e.inverse()) };
    Ok(GSpinCertificate { eta, target: g.clone(), twisted })
}

/// For odd `n`: `eta` in GSpin(V) with `eta * sigma_V(g) * eta^-1 = g`.
/// An odd conjugator is corrected by an anisotropic vector of `V+`, which
/// commutes with both `g` and `sigma_V(g)`.
pub fn conjugator_gspin_untwisted(g: &GPinElem) -> Result<GSpinCertificate> {
    if !g.is_even() {
        return Err(Error::NotEven);
    }
    let space = g.space().clone();
    if space.dim() % 2 == 0 {
        return Err(Error::WrongParityDimension);
    }
    let twisted = g.sigma_v();
    let cert = conjugator(g)?;
    if cert.eta.is_even() {
        return Ok(GSpinCertificate { eta: cert.eta, target: g.clone(), twisted });
    }
    let d = decompose(g.projection())?;
    let plus = d.plus_basis();
    let candidates = plus.iter().filter(|v| !space.frame_quadratic(v).is_zero()).cloned().chain(anisotropic_in(&space, plus));
    for x in candidates {
        let eta = cert.eta.mul(&GPinElem::from_vectors(&space, std::slice::from_ref(&x), &space.field().one())?);
        if eta.conjugate(&twisted) == *g {
            return Ok(GSpinCertificate { eta, target: g.clone(), twisted });
        }
    }
    Err(Error::RepairFailed(format!("no anisotropic vector of V+ makes the conjugator of {g} even")))
}

/// First `eta` of `group`, in its order, with `eta * b * eta^-1 = a`.
pub fn brute_force_conjugate(a: &GPinElem, b: &GPinElem, group: &[GPinElem]) -> Option<GPinElem> {
    if a.norm() != b.norm() {
        return None;
    }
    group.iter().find(|eta| eta.mul(b) == a.mul(eta)).cloned()
}
