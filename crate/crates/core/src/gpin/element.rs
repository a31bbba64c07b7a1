use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::clifford::{CliffordElem, Parity};
use crate::error::{Error, NonMemberReason, Result};
use crate::quadspace::{cartan_dieudonne, reflect, Isometry, QuadSpace};
use crate::scalars::{minimal_polynomial, Scalar, Vector};

/// A validated element of GPin(V) with its parity, Clifford norm and projection.
#[derive(Debug, Clone)]
pub struct GPinElem {
    value: CliffordElem,
    parity: Parity,
    norm: Scalar,
    proj: Isometry,
}

impl PartialEq for GPinElem {
    fn eq(&self, other: &GPinElem) -> bool {
        self.value == other.value
    }
}

impl Eq for GPinElem {}

impl Hash for GPinElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.value.hash(state);
    }
}

impl fmt::Display for GPinElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Membership in Pin(V) and Spin(V).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct PinSpin {
    pub pin: bool,
    pub spin: bool,
}

impl GPinElem {
    /// Checks homogeneity, a nonzero scalar norm, and that twisted conjugation
    /// preserves V.
    pub fn membership(a: &CliffordElem) -> Result<GPinElem> {
        if a.is_zero() {
            return Err(Error::NotMember(NonMemberReason::NonInvertible));
        }
        let parity = a.parity().ok_or(Error::NotMember(NonMemberReason::MixedParity))?;
        let norm = a
            .clifford_norm()
            .as_scalar()
            .filter(|n| !n.is_zero())
            .ok_or(Error::NotMember(NonMemberReason::NonInvertible))?;
        let space = a.space().clone();
        let inverse = a.bar().scale(&norm.inv().expect("nonzero norm"));
        let twisted = a.alpha();
        let mut columns: Vec<Vector> = Vec::with_capacity(space.dim());
        for i in 0..space.dim() {
            let image = twisted.mul(&CliffordElem::basis_vector(&space, i)).mul(&inverse);
            columns.push(image.as_vector().ok_or(Error::NotMember(NonMemberReason::DoesNotStabilizeV))?);
        }
        let matrix = crate::scalars::Matrix::from_columns(space.field(), space.dim(), &columns);
        let proj = Isometry::new(&space, matrix).map_err(|_| Error::NotMember(NonMemberReason::DoesNotStabilizeV))?;
        Ok(GPinElem { value: a.clone(), parity, norm, proj })
    }

    /// `z * v_1 ... v_l` for anisotropic frame vectors.
    pub fn from_vectors(space: &Arc<QuadSpace>, vectors: &[Vector], z: &Scalar) -> Result<GPinElem> {
        if z.is_zero() {
            return Err(Error::ZeroScalar);
        }
        let mut value = CliffordElem::scalar(space, z.clone());
        let mut norm = z * z;
        let mut proj = Isometry::identity(space);
        let mut parity = Parity::Even;
        for v in vectors {
            let r = reflect(space, v)?;
            value = value.mul(&CliffordElem::vector(space, v));
            norm *= &(-&space.frame_quadratic(v));
            proj = proj.compose(&r);
            parity = parity.flip();
        }
        Ok(GPinElem { value, parity, norm, proj })
    }

    pub fn scalar(space: &Arc<QuadSpace>, z: &Scalar) -> Result<GPinElem> {
        GPinElem::from_vectors(space, &[], z)
    }

    pub fn one(space: &Arc<QuadSpace>) -> GPinElem {
        GPinElem::scalar(space, &space.field().one()).expect("one is nonzero")
    }

    /// `e_1 ... e_n`.
    pub fn zeta(space: &Arc<QuadSpace>) -> GPinElem {
        let n = space.dim();
        let basis: Vec<Vector> = (0..n).map(|i| crate::scalars::matrix::unit_vector(space.field(), n, i)).collect();
        GPinElem::from_vectors(space, &basis, &space.field().one()).expect("basis vectors are anisotropic")
    }

    /// A preimage of `m` under the projection, normalized so that the
    /// coefficient of its lowest blade is 1.
    pub fn lift(m: &Isometry) -> GPinElem {
        let space = m.space().clone();
        let g = GPinElem::from_vectors(&space, &cartan_dieudonne(m), &space.field().one())
            .expect("Cartan-Dieudonne vectors are anisotropic");
        let (_, lead) = g.value.lowest_coeff().expect("group elements are nonzero");
        g.scale(&lead.inv().expect("nonzero"))
    }

    pub fn value(&self) -> &CliffordElem {
        &self.value
    }

    pub fn space(&self) -> &Arc<QuadSpace> {
        self.value.space()
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn norm(&self) -> &Scalar {
        &self.norm
    }

    /// The canonical projection `v -> alpha(g) v g^-1`.
    pub fn projection(&self) -> &Isometry {
        &self.proj
    }

    pub fn is_even(&self) -> bool {
        self.parity == Parity::Even
    }

    /// `+1` on GSpin, `-1` off it.
    pub fn sign(&self) -> i8 {
        self.parity.sign()
    }

    pub fn mul(&self, other: &GPinElem) -> GPinElem {
        GPinElem {
            value: self.value.mul(&other.value),
            parity: if self.parity == other.parity { Parity::Even } else { Parity::Odd },
            norm: &self.norm * &other.norm,
            proj: self.proj.compose(&other.proj),
        }
    }

    /// `bar(g) / N(g)`.
    pub fn inverse(&self) -> GPinElem {
        let inv_norm = self.norm.inv().expect("nonzero norm");
        GPinElem {
            value: self.value.bar().scale(&inv_norm),
            parity: self.parity,
            norm: inv_norm,
            proj: self.proj.inverse(),
        }
    }

    pub fn scale(&self, z: &Scalar) -> GPinElem {
        assert!(!z.is_zero(), "scaling by zero");
        GPinElem {
            value: self.value.scale(z),
            parity: self.parity,
            norm: &(&self.norm * z) * z,
            proj: self.proj.clone(),
        }
    }

    pub fn neg(&self) -> GPinElem {
        self.scale(&self.space().field().from_i64(-1))
    }

    /// `self * other * self^-1`.
    pub fn conjugate(&self, other: &GPinElem) -> GPinElem {
        self.mul(other).mul(&self.inverse())
    }

    /// The reversal `g*`, again a group element with the same norm.
    pub fn star(&self) -> GPinElem {
        GPinElem { value: self.value.star(), parity: self.parity, norm: self.norm.clone(), proj: self.proj.inverse() }
    }

    /// The Clifford involution `bar(g) = sign(g) g*`.
    pub fn bar(&self) -> GPinElem {
        GPinElem { value: self.value.bar(), parity: self.parity, norm: self.norm.clone(), proj: self.proj.inverse() }
    }

    /// `g*` for even `n`; `sign(g)^(k+1) g*` for odd `n`.
    pub fn sigma_v(&self) -> GPinElem {
        let n = self.space().dim();
        let k = self.space().half_dim();
        let star = self.star();
        if n % 2 == 1 && self.parity == Parity::Odd && k % 2 == 0 {
            star.neg()
        } else {
            star
        }
    }

    /// `Some(z)` if the element is the scalar `z`.
    pub fn as_scalar(&self) -> Option<Scalar> {
        self.value.as_scalar()
    }

    /// Spinor norm class of the projection.
    pub fn spinor_norm_class(&self) -> Scalar {
        self.norm.square_class_rep()
    }

    pub fn pin_spin(&self) -> PinSpin {
        let pin = self.norm.is_one();
        PinSpin { pin, spin: pin && self.is_even() }
    }

    /// Whether the projection has a squarefree minimal polynomial.
    pub fn is_semisimple(&self) -> bool {
        minimal_polynomial(self.proj.matrix()).is_squarefree()
    }
}

/// Square class of the Clifford norm of any lift of `m`.
pub fn spinor_norm(m: &Isometry) -> Scalar {
    GPinElem::lift(m).spinor_norm_class()
}
