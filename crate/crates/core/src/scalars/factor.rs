use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::scalar::fingerprint;
use super::{Field, Poly, Scalar};
use crate::error::{Error, Result};

/// A factorization `unit * prod(factor^multiplicity)` into monic irreducibles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Scalar,
    pub factors: Vec<(Poly, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(self.unit.clone()), |acc, (f, m)| acc.mul(&f.pow(*m as u64)))
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Factors a nonzero polynomial into monic irreducibles, sorted by degree
/// and then by coefficients.
pub fn factor(p: &Poly) -> Result<Factorization> {
    assert!(!p.is_zero(), "factor of the zero polynomial");
    let unit = p.lead();
    let monic = p.monic();
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(&monic) {
        let irreducibles = match p.field() {
            Field::Prime(prime) => factor_squarefree_fp(&part, prime),
            Field::Rational => factor_squarefree_q(&part)?,
        };
        factors.extend(irreducibles.into_iter().map(|f| (f, mult)));
    }
    factors.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    Ok(Factorization { unit, factors })
}

/// Whether a polynomial of positive degree is irreducible.
pub fn is_irreducible(p: &Poly) -> Result<bool> {
    Ok(p.degree().is_some_and(|d| d > 0) && factor(p)?.is_irreducible())
}

/// Squarefree parts `(g_i, i)` with `p = prod g_i^i`, for monic `p`.
fn squarefree_decomposition(p: &Poly) -> Vec<(Poly, usize)> {
    if p.degree() == Some(0) {
        return Vec::new();
    }
    let deriv = p.derivative();
    if deriv.is_zero() {
        // Only reachable in characteristic p: p(x) = r(x)^p.
        let prime = p.field().characteristic() as usize;
        return squarefree_decomposition(&pth_root(p))
            .into_iter()
            .map(|(g, m)| (g, m * prime))
            .collect();
    }
    let mut out = Vec::new();
    let mut c = p.gcd(&deriv);
    let mut w = p.div_exact(&c);
    let mut i = 1;
    while w.degree() != Some(0) {
        let y = w.gcd(&c);
        let z = w.div_exact(&y);
        if z.degree() != Some(0) {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w);
    }
    if c.degree() != Some(0) {
        let prime = p.field().characteristic() as usize;
        out.extend(squarefree_decomposition(&pth_root(&c)).into_iter().map(|(g, m)| (g, m * prime)));
    }
    out
}

/// For `p(x) = r(x^p)` over F_p, returns `r` (Frobenius is the identity on F_p).
fn pth_root(p: &Poly) -> Poly {
    let prime = p.field().characteristic() as usize;
    assert!(prime > 0, "p-th root in characteristic zero");
    Poly::new(p.field(), p.coeffs().iter().step_by(prime).cloned().collect())
}

fn factor_squarefree_fp(f: &Poly, prime: u32) -> Vec<Poly> {
    let mut rng = ChaCha8Rng::seed_from_u64(u64::from(prime) ^ fingerprint(f.coeffs()));
    let mut out = Vec::new();
    for (part, d) in distinct_degree(f, prime) {
        equal_degree(&part, d, prime, &mut rng, &mut out);
    }
    out
}

fn distinct_degree(f: &Poly, prime: u32) -> Vec<(Poly, usize)> {
    let field = f.field();
    let x = Poly::x(field);
    let p = BigUint::from(prime);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().is_some_and(|deg| deg >= 2 * d) {
        h = h.powmod(&p, &rest);
        let g = h.sub(&x).gcd(&rest);
        if g.degree() != Some(0) {
            rest = rest.div_exact(&g);
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(deg) = rest.degree().filter(|&deg| deg > 0) {
        out.push((rest, deg));
    }
    out
}

/// Cantor-Zassenhaus splitting of a product of distinct degree-`d` irreducibles.
fn equal_degree(f: &Poly, d: usize, prime: u32, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    let n = f.degree().expect("nonzero");
    if n == d {
        out.push(f.clone());
        return;
    }
    let field = f.field();
    let exp = (BigUint::from(prime).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a = Poly::new(field, (0..n).map(|_| field.from_i64(rng.gen_range(0..prime as i64))).collect());
        if a.degree().is_none_or(|deg| deg == 0) {
            continue;
        }
        let mut g = a.gcd(f);
        if g.degree() == Some(0) {
            g = a.powmod(&exp, f).sub(&Poly::one(field)).gcd(f);
        }
        if g.degree().is_some_and(|dg| dg > 0 && dg < n) {
            let other = f.div_exact(&g);
            equal_degree(&g, d, prime, rng, out);
            equal_degree(&other, d, prime, rng, out);
            return;
        }
    }
}

fn factor_squarefree_q(f: &Poly) -> Result<Vec<Poly>> {
    let mut rest = f.clone();
    let mut out = Vec::new();
    for root in rational_roots(f) {
        let lin = Poly::linear(&root);
        rest = rest.div_exact(&lin);
        out.push(lin);
    }
    match rest.degree() {
        Some(0) | None => {}
        // Without a rational root, a quadratic or cubic is irreducible.
        Some(2) | Some(3) => out.push(rest),
        Some(1) => unreachable!("linear factor without a rational root"),
        Some(d) => return Err(Error::FactorizationUnsupported(d)),
    }
    Ok(out)
}

/// Distinct rational roots of a squarefree polynomial over Q.
fn rational_roots(f: &Poly) -> Vec<Scalar> {
    let ints = integer_coefficients(f);
    let mut roots = Vec::new();
    if ints[0].is_zero() {
        roots.push(Field::Rational.zero());
    }
    let low = ints.iter().find(|c| !c.is_zero()).expect("nonzero polynomial").abs();
    let high = ints.last().expect("nonzero polynomial").abs();
    for num in divisors(&low) {
        for den in divisors(&high) {
            if num.gcd(&den) != BigInt::one() {
                continue;
            }
            for sign in [1, -1] {
                let r = Scalar::Rational(BigRational::new(&num * sign, den.clone()));
                if f.eval(&r).is_zero() && !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots
}

fn integer_coefficients(f: &Poly) -> Vec<BigInt> {
    let rationals: Vec<BigRational> = f
        .coeffs()
        .iter()
        .map(|c| match c {
            Scalar::Rational(r) => r.clone(),
            Scalar::Prime { .. } => unreachable!("rational polynomial expected"),
        })
        .collect();
    let lcm = rationals.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    rationals.iter().map(|r| (r * BigRational::from_integer(lcm.clone())).to_integer()).collect()
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let co = n / &d;
            if co != d {
                out.push(co);
            }
        }
        d += 1;
    }
    out
}
