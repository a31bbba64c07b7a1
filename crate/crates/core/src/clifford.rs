//! Sparse multivectors in the Clifford algebra of a quadratic space.
//!
//! Blades are bitmasks over the frame basis: bit `i` set means `e_{i+1}`
//! occurs, factors always in ascending order.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quadspace::QuadSpace;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalars::{Field, Scalar, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_mask(mask: u32) -> Parity {
        if mask.count_ones() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `+1` for even, `-1` for odd.
    pub fn sign(self) -> i8 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CliffordElem {
    space: Arc<QuadSpace>,
    terms: BTreeMap<u32, Scalar>,
}

impl PartialEq for CliffordElem {
    fn eq(&self, other: &CliffordElem) -> bool {
        self.space.dim() == other.space.dim() && self.terms == other.terms
    }
}

impl Eq for CliffordElem {}

impl Hash for CliffordElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.space.dim().hash(state);
        self.terms.hash(state);
    }
}

/// Sign of `blade(a) * blade(b)` after reordering into ascending form.
pub fn reorder_sign(a: u32, b: u32) -> i8 {
    let mut swaps = 0;
    let mut rest = a >> 1;
    while rest != 0 {
        swaps += (rest & b).count_ones();
        rest >>= 1;
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `(-1)^(l(l-1)/2)`, the sign of reversing a blade of `l` factors.
pub fn reversal_sign(len: u32) -> i8 {
    if (len * len.saturating_sub(1) / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

fn signed(s: &Scalar, sign: i8) -> Scalar {
    if sign < 0 {
        -s
    } else {
        s.clone()
    }
}

impl CliffordElem {
    pub fn zero(space: &Arc<QuadSpace>) -> CliffordElem {
        CliffordElem { space: space.clone(), terms: BTreeMap::new() }
    }

    pub fn scalar(space: &Arc<QuadSpace>, c: Scalar) -> CliffordElem {
        CliffordElem::blade(space, 0, c)
    }

    pub fn one(space: &Arc<QuadSpace>) -> CliffordElem {
        CliffordElem::scalar(space, space.field().one())
    }

    pub fn blade(space: &Arc<QuadSpace>, mask: u32, c: Scalar) -> CliffordElem {
        assert!(mask < 1 << space.dim(), "blade outside the algebra");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mask, c);
        }
        CliffordElem { space: space.clone(), terms }
    }

    /// `e_{i+1}`.
    pub fn basis_vector(space: &Arc<QuadSpace>, i: usize) -> CliffordElem {
        CliffordElem::blade(space, 1 << i, space.field().one())
    }

    /// The vector with the given frame coordinates.
    pub fn vector(space: &Arc<QuadSpace>, v: &[Scalar]) -> CliffordElem {
        assert_eq!(v.len(), space.dim());
        let terms = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (1u32 << i, c.clone()))
            .collect();
        CliffordElem { space: space.clone(), terms }
    }

    pub fn from_terms(space: &Arc<QuadSpace>, terms: impl IntoIterator<Item = (u32, Scalar)>) -> CliffordElem {
        let mut out = CliffordElem::zero(space);
        for (mask, c) in terms {
            assert!(mask < 1 << space.dim(), "blade outside the algebra");
            out.add_term(mask, &c);
        }
        out
    }

    /// `e_1 e_2 ... e_n`.
    pub fn zeta(space: &Arc<QuadSpace>) -> CliffordElem {
        CliffordElem::blade(space, (1u32 << space.dim()) - 1, space.field().one())
    }

    pub fn space(&self) -> &Arc<QuadSpace> {
        &self.space
    }

    pub fn terms(&self) -> &BTreeMap<u32, Scalar> {
        &self.terms
    }

    pub fn coeff(&self, mask: u32) -> Scalar {
        self.terms.get(&mask).cloned().unwrap_or_else(|| self.space.field().zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, mask: u32, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mask) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&mask);
                }
            }
            None => {
                self.terms.insert(mask, c.clone());
            }
        }
    }

    fn check_space(&self, other: &CliffordElem) -> Result<()> {
        if self.space.dim() != other.space.dim() || self.space.field() != other.space.field() {
            return Err(Error::SpaceMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &CliffordElem) -> CliffordElem {
        self.check_space(other).expect("same space");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        out
    }

    pub fn sub(&self, other: &CliffordElem) -> CliffordElem {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CliffordElem {
        self.map_terms(|_, c| -c)
    }

    pub fn scale(&self, k: &Scalar) -> CliffordElem {
        if k.is_zero() {
            return CliffordElem::zero(&self.space);
        }
        self.map_terms(|_, c| c * k)
    }

    fn map_terms(&self, f: impl Fn(u32, &Scalar) -> Scalar) -> CliffordElem {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (*m, f(*m, c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        CliffordElem { space: self.space.clone(), terms }
    }

    /// Product of two blades, as `(mask, coefficient factor)`.
    pub fn blade_product(space: &QuadSpace, a: u32, b: u32) -> (u32, Scalar) {
        let mut c = space.field().from_i64(reorder_sign(a, b) as i64);
        let mut common = a & b;
        while common != 0 {
            let i = common.trailing_zeros() as usize;
            c *= &space.diag()[i];
            common &= common - 1;
        }
        (a ^ b, c)
    }

    pub fn try_mul(&self, other: &CliffordElem) -> Result<CliffordElem> {
        self.check_space(other)?;
        let field = self.space.field();
        let size = 1usize << self.space.dim();
        // squares[m] is the product of q(e_i) over the indices in m.
        let mut squares = vec![field.one(); size];
        for m in 1..size {
            let i = m.trailing_zeros() as usize;
            squares[m] = &squares[m & (m - 1)] * &self.space.diag()[i];
        }
        if field == Field::Rational {
            return Ok(self.rational_mul(other, &squares));
        }
        let mut acc = vec![field.zero(); size];
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let term = &(ca * cb) * &squares[(ma & mb) as usize];
                let slot = &mut acc[(ma ^ mb) as usize];
                if reorder_sign(*ma, *mb) == 1 {
                    *slot += &term;
                } else {
                    *slot -= &term;
                }
            }
        }
        let terms = acc.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m as u32, c)).collect();
        Ok(CliffordElem { space: self.space.clone(), terms })
    }

    /// Over Q: scale every coefficient to a common denominator and
    /// accumulate integers, normalizing once per output blade.
    fn rational_mul(&self, other: &CliffordElem, squares: &[Scalar]) -> CliffordElem {
        fn integral<'a>(values: impl Iterator<Item = &'a Scalar> + Clone) -> (BigInt, Vec<BigInt>) {
            let ratio = |c: &'a Scalar| match c {
                Scalar::Rational(r) => r,
                Scalar::Prime { .. } => unreachable!("rational field"),
            };
            let den = values.clone().fold(BigInt::one(), |acc, c| acc.lcm(ratio(c).denom()));
            let nums = values.map(|c| ratio(c).numer() * (&den / ratio(c).denom())).collect();
            (den, nums)
        }
        let (da, na) = integral(self.terms.values());
        let (db, nb) = integral(other.terms.values());
        let (dq, nq) = integral(squares.iter());
        let mut acc = vec![BigInt::zero(); squares.len()];
        for (ma, a) in self.terms.keys().zip(&na) {
            for (mb, b) in other.terms.keys().zip(&nb) {
                let term = a * b * &nq[(ma & mb) as usize];
                let slot = &mut acc[(ma ^ mb) as usize];
                if reorder_sign(*ma, *mb) == 1 {
                    *slot += term;
                } else {
                    *slot -= term;
                }
            }
        }
        let den = da * db * dq;
        let terms = acc
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m as u32, Scalar::Rational(BigRational::new(c, den.clone()))))
            .collect();
        CliffordElem { space: self.space.clone(), terms }
    }

    /// Panics if the operands live in different spaces.
    pub fn mul(&self, other: &CliffordElem) -> CliffordElem {
        self.try_mul(other).expect("same space")
    }

    /// Parity automorphism.
    pub fn alpha(&self) -> CliffordElem {
        self.map_terms(|m, c| signed(c, Parity::of_mask(m).sign()))
    }

    /// Reversal anti-automorphism.
    pub fn star(&self) -> CliffordElem {
        self.map_terms(|m, c| signed(c, reversal_sign(m.count_ones())))
    }

    /// Clifford involution, `alpha` composed with reversal.
    pub fn bar(&self) -> CliffordElem {
        self.map_terms(|m, c| signed(c, Parity::of_mask(m).sign() * reversal_sign(m.count_ones())))
    }

    /// `a * bar(a)`.
    pub fn clifford_norm(&self) -> CliffordElem {
        self.mul(&self.bar())
    }

    pub fn grade_parts(&self) -> (CliffordElem, CliffordElem) {
        let (even, odd): (BTreeMap<_, _>, BTreeMap<_, _>) =
            self.terms.iter().map(|(m, c)| (*m, c.clone())).partition(|(m, _)| Parity::of_mask(*m) == Parity::Even);
        (
            CliffordElem { space: self.space.clone(), terms: even },
            CliffordElem { space: self.space.clone(), terms: odd },
        )
    }

    /// The common parity of all blades, if there is one (`None` for zero or mixed).
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|m| Parity::of_mask(*m));
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    /// `Some(c)` if the element is the scalar `c` (including zero).
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(self.space.field().zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    /// Frame coordinates if the element lies in `V`.
    pub fn as_vector(&self) -> Option<Vector> {
        if self.terms.keys().any(|m| m.count_ones() != 1) {
            return None;
        }
        Some((0..self.space.dim()).map(|i| self.coeff(1 << i)).collect())
    }

    /// Coefficient of the lowest blade present.
    pub fn lowest_coeff(&self) -> Option<(u32, Scalar)> {
        self.terms.iter().next().map(|(m, c)| (*m, c.clone()))
    }

    /// Moves the element into a larger space, sending `e_{i+1}` to
    /// `e_{positions[i]+1}`. Positions must be strictly increasing so that
    /// blade order, and hence every sign, is preserved.
    pub fn embed(&self, target: &Arc<QuadSpace>, positions: &[usize]) -> CliffordElem {
        assert_eq!(positions.len(), self.space.dim());
        assert!(positions.windows(2).all(|w| w[0] < w[1]), "positions must increase");
        for (i, &p) in positions.iter().enumerate() {
            assert_eq!(self.space.diag()[i], target.diag()[p], "embedding must preserve the form");
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut image = 0u32;
            for (i, &p) in positions.iter().enumerate() {
                if m & (1 << i) != 0 {
                    image |= 1 << p;
                }
            }
            (image, c.clone())
        });
        CliffordElem { space: target.clone(), terms: terms.collect() }
    }

    /// Exact `{"mask": "coefficient"}` map.
    pub fn to_json_map(&self) -> BTreeMap<String, String> {
        self.terms.iter().map(|(m, c)| (m.to_string(), c.to_string())).collect()
    }

    pub fn from_json_map(space: &Arc<QuadSpace>, map: &BTreeMap<String, String>) -> Result<CliffordElem> {
        let mut terms = Vec::with_capacity(map.len());
        for (k, v) in map {
            let mask: u32 = k.trim().parse().map_err(|_| Error::Parse(format!("bad blade mask '{k}'")))?;
            if mask >= 1 << space.dim() {
                return Err(Error::Parse(format!("blade mask {mask} exceeds dimension {}", space.dim())));
            }
            terms.push((mask, space.field().parse(v)?));
        }
        Ok(CliffordElem::from_terms(space, terms))
    }
}

/// `"e1e3"` for mask `0b101`, `"1"` for the empty blade.
pub fn blade_name(mask: u32) -> String {
    if mask == 0 {
        return "1".to_string();
    }
    (0..32).filter(|i| mask & (1 << i) != 0).map(|i| format!("e{}", i + 1)).collect()
}

impl fmt::Display for CliffordElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| match (*m, c.is_one()) {
                (0, _) => c.to_string(),
                (_, true) => blade_name(*m),
                _ => format!("{c}*{}", blade_name(*m)),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
