use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Field;

/// An element of Q or of F_p.
///
/// Prime-field elements carry their modulus so that the arithmetic operators
/// need no context. Mixing fields is a programming error and panics.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u32, modulus: u32 },
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Squarefree part of a nonzero integer, keeping the sign.
pub(crate) fn squarefree_part(n: &BigInt) -> BigInt {
    assert!(!n.is_zero());
    let sign = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut rest = n.abs();
    let mut out = BigInt::one();
    let mut d = BigInt::from(2);
    while &d * &d <= rest {
        let mut count = 0u32;
        while (&rest % &d).is_zero() {
            rest /= &d;
            count += 1;
        }
        if count % 2 == 1 {
            out *= &d;
        }
        d += 1;
    }
    out * rest * sign
}

/// Exact integer square root, if `n` is a perfect square.
fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: pow_mod(*value as u64, *modulus as u64 - 2, *modulus as u64) as u32,
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, mut exp: u64) -> Scalar {
        let mut acc = self.field().one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Signed power; panics on a negative power of zero.
    pub fn powi(&self, exp: i64) -> Scalar {
        if exp >= 0 {
            self.pow(exp as u64)
        } else {
            self.inv().expect("negative power of zero").pow(exp.unsigned_abs())
        }
    }

    /// Whether the scalar is a square (zero counts as a square).
    pub fn is_square(&self) -> bool {
        match self {
            Scalar::Rational(r) => exact_sqrt(r.numer()).is_some() && exact_sqrt(r.denom()).is_some(),
            Scalar::Prime { value, modulus } => {
                *value == 0 || pow_mod(*value as u64, (*modulus as u64 - 1) / 2, *modulus as u64) == 1
            }
        }
    }

    /// A square root, if one exists in the field (Tonelli-Shanks over F_p).
    pub fn sqrt(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(r) => {
                let n = exact_sqrt(r.numer())?;
                let d = exact_sqrt(r.denom())?;
                Some(Scalar::Rational(BigRational::new(n, d)))
            }
            Scalar::Prime { value, modulus } => {
                if *value == 0 {
                    return Some(self.clone());
                }
                if !self.is_square() {
                    return None;
                }
                let p = *modulus as u64;
                let a = *value as u64;
                let mut q = p - 1;
                let mut s = 0;
                while q % 2 == 0 {
                    q /= 2;
                    s += 1;
                }
                let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1).expect("nonresidue");
                let mut m = s;
                let mut c = pow_mod(z, q, p);
                let mut t = pow_mod(a, q, p);
                let mut r = pow_mod(a, (q + 1) / 2, p);
                while t != 1 {
                    let mut i = 0;
                    let mut tt = t;
                    while tt != 1 {
                        tt = tt * tt % p;
                        i += 1;
                    }
                    let b = pow_mod(c, 1 << (m - i - 1), p);
                    m = i;
                    c = b * b % p;
                    t = t * c % p;
                    r = r * b % p;
                }
                Some(Scalar::Prime { value: r as u32, modulus: *modulus })
            }
        }
    }

    /// Canonical representative of the square class of a nonzero scalar:
    /// `1` or the least nonresidue over F_p, the signed squarefree integer
    /// over Q.
    pub fn square_class_rep(&self) -> Scalar {
        assert!(!self.is_zero(), "square class of zero");
        match self {
            Scalar::Rational(r) => {
                let prod = r.numer() * r.denom();
                Scalar::Rational(BigRational::from_integer(squarefree_part(&prod)))
            }
            Scalar::Prime { .. } => {
                if self.is_square() {
                    self.field().one()
                } else {
                    self.field().nonresidue().expect("odd prime has a nonresidue")
                }
            }
        }
    }

    /// The integer `n` with `self == n` in Q, or the residue in `0..p`.
    pub fn to_bigint(&self) -> Option<BigInt> {
        match self {
            Scalar::Rational(r) => r.is_integer().then(|| r.to_integer()),
            Scalar::Prime { value, .. } => Some(BigInt::from(*value)),
        }
    }

    /// Sign (+1/-1) for a scalar expected to be ±1.
    pub fn as_sign(&self) -> Option<i8> {
        if self.is_one() {
            Some(1)
        } else if (-self).is_one() {
            Some(-1)
        } else {
            None
        }
    }

    fn check(&self, other: &Scalar) {
        assert_eq!(self.field(), other.field(), "mixed-field arithmetic");
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { value: a, modulus }, Scalar::Prime { value: b, .. }) => Scalar::Prime {
                value: ((*a as u64 + *b as u64) % *modulus as u64) as u32,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { value: a, modulus }, Scalar::Prime { value: b, .. }) => Scalar::Prime {
                value: ((*a as u64 * *b as u64) % *modulus as u64) as u32,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

/// Stable hash of a scalar list used to seed deterministic random streams.
pub(crate) fn fingerprint(values: &[Scalar]) -> u64 {
    // FNV-1a over the display strings; independent of std's randomised hasher.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for v in values {
        for b in v.to_string().bytes().chain(std::iter::once(b',')) {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    h
}
