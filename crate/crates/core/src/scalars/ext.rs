use std::fmt;

use super::factor::factor;
use super::matrix::{unit_vector, Matrix};
use super::{Field, Poly, Scalar};
use crate::error::{Error, Result};

/// A finite extension `base[x]/(modulus)` in the power basis `1, x, ..., x^(d-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtField {
    base: Field,
    modulus: Poly,
}

/// An element of an [`ExtField`], stored as its power-basis coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtScalar {
    coeffs: Vec<Scalar>,
}

impl ExtScalar {
    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }
}

impl fmt::Display for ExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = self.coeffs[0].field();
        write!(f, "{}", Poly::new(field, self.coeffs.clone()))
    }
}

impl ExtField {
    /// Builds the extension by a monic irreducible modulus. Irreducibility is
    /// checked over F_p; over Q it is checked when the factorizer can decide
    /// it and otherwise taken on trust.
    pub fn new(modulus: &Poly) -> Result<ExtField> {
        let modulus = modulus.monic();
        if modulus.degree().is_none_or(|d| d == 0) {
            return Err(Error::Reducible);
        }
        match factor(&modulus) {
            Ok(f) if !f.is_irreducible() => return Err(Error::Reducible),
            Err(Error::FactorizationUnsupported(_)) if modulus.field().is_rational() => {}
            Err(e) => return Err(e),
            Ok(_) => {}
        }
        Ok(ExtField { base: modulus.field(), modulus })
    }

    pub fn base(&self) -> Field {
        self.base
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().expect("positive degree")
    }

    pub fn from_poly(&self, p: &Poly) -> ExtScalar {
        let r = p.rem(&self.modulus);
        ExtScalar { coeffs: (0..self.degree()).map(|i| r.coeff(i)).collect() }
    }

    pub fn to_poly(&self, a: &ExtScalar) -> Poly {
        Poly::new(self.base, a.coeffs.clone())
    }

    pub fn from_coeffs(&self, coeffs: Vec<Scalar>) -> ExtScalar {
        assert_eq!(coeffs.len(), self.degree());
        ExtScalar { coeffs }
    }

    pub fn from_base(&self, c: &Scalar) -> ExtScalar {
        self.from_poly(&Poly::constant(c.clone()))
    }

    pub fn zero(&self) -> ExtScalar {
        self.from_base(&self.base.zero())
    }

    pub fn one(&self) -> ExtScalar {
        self.from_base(&self.base.one())
    }

    /// The class of `x`.
    pub fn generator(&self) -> ExtScalar {
        self.from_poly(&Poly::x(self.base))
    }

    pub fn add(&self, a: &ExtScalar, b: &ExtScalar) -> ExtScalar {
        ExtScalar { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect() }
    }

    pub fn sub(&self, a: &ExtScalar, b: &ExtScalar) -> ExtScalar {
        ExtScalar { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect() }
    }

    pub fn scale(&self, c: &Scalar, a: &ExtScalar) -> ExtScalar {
        ExtScalar { coeffs: a.coeffs.iter().map(|x| c * x).collect() }
    }

    pub fn mul(&self, a: &ExtScalar, b: &ExtScalar) -> ExtScalar {
        self.from_poly(&self.to_poly(a).mul(&self.to_poly(b)))
    }

    pub fn inv(&self, a: &ExtScalar) -> Option<ExtScalar> {
        let sol = self.mul_matrix(a).solve(&unit_vector(self.base, self.degree(), 0))?;
        Some(ExtScalar { coeffs: sol })
    }

    pub fn pow(&self, a: &ExtScalar, exp: i64) -> Option<ExtScalar> {
        let base = if exp < 0 { self.inv(a)? } else { a.clone() };
        let mut acc = self.one();
        for _ in 0..exp.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        Some(acc)
    }

    /// Matrix of multiplication by `a` in the power basis.
    pub fn mul_matrix(&self, a: &ExtScalar) -> Matrix {
        let d = self.degree();
        let cols: Vec<Vec<Scalar>> = (0..d)
            .map(|j| self.mul(a, &self.from_poly(&Poly::x(self.base).pow(j as u64))).coeffs)
            .collect();
        Matrix::from_columns(self.base, d, &cols)
    }

    /// Trace of multiplication by `a`, as a base-field linear map.
    pub fn trace(&self, a: &ExtScalar) -> Scalar {
        self.mul_matrix(a).trace()
    }

    /// The ring endomorphism sending `x` to `x^(-1)`.
    pub fn inverse_involution(&self) -> Result<InverseInvolution> {
        if self.modulus.coeff(0).is_zero() {
            return Err(Error::NonUnitGenerator);
        }
        let image = self.inv(&self.generator()).ok_or(Error::NonUnitGenerator)?;
        let sigma = InverseInvolution { ext: self.clone(), image };
        // Well defined only if the modulus vanishes at x^(-1).
        let at_image = self.modulus.coeffs().iter().rev().fold(self.zero(), |acc, c| {
            self.add(&self.mul(&acc, &sigma.image), &self.from_base(c))
        });
        if !at_image.is_zero() {
            return Err(Error::NotSelfReciprocal);
        }
        Ok(sigma)
    }
}

/// `x -> x^(-1)` on an extension whose modulus is self-reciprocal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseInvolution {
    ext: ExtField,
    image: ExtScalar,
}

impl InverseInvolution {
    pub fn apply(&self, a: &ExtScalar) -> ExtScalar {
        let e = &self.ext;
        a.coeffs.iter().rev().fold(e.zero(), |acc, c| e.add(&e.mul(&acc, &self.image), &e.from_base(c)))
    }

    /// Image of the generator.
    pub fn generator_image(&self) -> &ExtScalar {
        &self.image
    }
}
