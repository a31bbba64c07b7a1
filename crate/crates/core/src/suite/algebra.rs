use std::collections::BTreeSet;
use std::sync::Arc;

use super::{population, random_anisotropic, random_clifford, random_gpin, random_vector, show_vector, Env, Recorder};
use crate::clifford::{blade_name, CliffordElem, Parity};
use crate::error::Result;
use crate::gpin::{enumerate_isometries, spinor_norm, split_structure, GPinElem, SplitStructure};
use crate::quadspace::{Isometry, QuadSpace};

const TRIPLES: usize = 200;
const INVOLUTION_PAIRS: usize = 100;

fn show(a: &CliffordElem) -> String {
    a.to_string()
}

pub(crate) fn clifford_axioms(rec: &mut Recorder, space: &Arc<QuadSpace>, env: &mut Env) -> Result<()> {
    let n = space.dim();
    rec.case(format!("blades of {space}"));
    let mut masks = BTreeSet::new();
    let mut even = 0usize;
    for subset in 0..1u32 << n {
        let product = (0..n)
            .filter(|i| subset >> i & 1 == 1)
            .fold(CliffordElem::one(space), |acc, i| acc.mul(&CliffordElem::basis_vector(space, i)));
        let terms: Vec<u32> = product.terms().keys().copied().collect();
        rec.check("basis products are blades", terms == [subset], || {
            (blade_name(subset), show(&product))
        });
        masks.insert(subset);
        if Parity::of_mask(subset) == Parity::Even {
            even += 1;
        }
    }
    rec.check_eq("blade count is 2^n", &(1usize << n), &masks.len());
    rec.check_eq("even part has half the blades", &(1usize << (n - 1)), &even);

    for i in 0..TRIPLES {
        rec.case(format!("triple {i} on {space}"));
        let (a, b, c) = (random_clifford(space, &mut env.rng), random_clifford(space, &mut env.rng), random_clifford(space, &mut env.rng));
        let left = a.mul(&b).mul(&c);
        let right = a.mul(&b.mul(&c));
        rec.check("associativity", left == right, || (show(&left), show(&right)));
        let dist = a.mul(&b.add(&c));
        let split = a.mul(&b).add(&a.mul(&c));
        rec.check("distributivity", dist == split, || (show(&split), show(&dist)));

        let v = random_vector(space, &mut env.rng);
        let w = random_vector(space, &mut env.rng);
        let (cv, cw) = (CliffordElem::vector(space, &v), CliffordElem::vector(space, &w));
        let square = cv.mul(&cv);
        let q = CliffordElem::scalar(space, space.frame_quadratic(&v));
        rec.check("v^2 = q(v)", square == q, || (show(&q), show(&square)));
        let anti = cv.mul(&cw).add(&cw.mul(&cv));
        let two_b = CliffordElem::scalar(space, &space.frame_bilinear(&v, &w) * &space.field().from_i64(2));
        rec.check("vw + wv = 2<v,w>", anti == two_b, || (show(&two_b), show(&anti)));

        if i < INVOLUTION_PAIRS {
            involution_laws(rec, &a, &b);
            let g = random_gpin(space, &mut env.rng);
            let h = random_gpin(space, &mut env.rng);
            rec.check_eq("sigma_V is an involution", &g, &g.sigma_v().sigma_v());
            rec.check_eq("sigma_V reverses products", &h.sigma_v().mul(&g.sigma_v()), &g.mul(&h).sigma_v());
            let star = GPinElem::membership(&g.value().star())?;
            rec.check_eq("reversal inverts the projection", &g.projection().inverse(), star.projection());
        }
    }
    for i in 0..n {
        for j in 0..i {
            rec.case(format!("e{} e{} on {space}", j + 1, i + 1));
            let (ei, ej) = (CliffordElem::basis_vector(space, i), CliffordElem::basis_vector(space, j));
            let lhs = ei.mul(&ej);
            let rhs = ej.mul(&ei).neg();
            rec.check("orthogonal vectors anticommute", lhs == rhs, || (show(&rhs), show(&lhs)));
        }
    }
    Ok(())
}

fn involution_laws(rec: &mut Recorder, a: &CliffordElem, b: &CliffordElem) {
    let mut law = |name: &str, lhs: CliffordElem, rhs: CliffordElem| {
        rec.check(name, lhs == rhs, || (show(&rhs), show(&lhs)));
    };
    law("alpha^2 = id", a.alpha().alpha(), a.clone());
    law("reversal^2 = id", a.star().star(), a.clone());
    law("bar^2 = id", a.bar().bar(), a.clone());
    law("alpha is multiplicative", a.mul(b).alpha(), a.alpha().mul(&b.alpha()));
    law("(ab)* = b* a*", a.mul(b).star(), b.star().mul(&a.star()));
    law("bar(ab) = bar(b) bar(a)", a.mul(b).bar(), b.bar().mul(&a.bar()));
    law("bar = alpha o reversal", a.bar(), a.star().alpha());
    law("alpha and reversal commute", a.alpha().star(), a.star().alpha());
}

pub(crate) fn zeta(rec: &mut Recorder, space: &Arc<QuadSpace>, _env: &mut Env) -> Result<()> {
    let n = space.dim();
    let field = space.field();
    rec.case(format!("zeta on {space}"));
    let raw = CliffordElem::zeta(space);
    let zeta = GPinElem::membership(&raw)?;
    let inverse = raw.bar().scale(&zeta.norm().inv().expect("nonzero norm"));
    let mut flips = true;
    for i in 0..n {
        let e = CliffordElem::basis_vector(space, i);
        flips &= raw.alpha().mul(&e).mul(&inverse) == e.neg();
    }
    rec.check("P(zeta) = -1", flips && zeta.projection() == &Isometry::minus_identity(space), || {
        ("-1".into(), zeta.projection().to_string())
    });

    let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
    let expected = raw.scale(&field.from_i64(sign));
    rec.check("zeta* = (-1)^(n(n-1)/2) zeta", raw.star() == expected, || (show(&expected), show(&raw.star())));

    let square = raw.mul(&raw);
    let class = square.as_scalar().map(|s| s.square_class_rep());
    rec.check("zeta^2 = disc(V) mod squares", class.as_ref() == Some(&space.discriminant()), || {
        (space.discriminant().to_string(), show(&square))
    });

    let mut graded = true;
    for mask in 0..1u32 << n {
        let blade = CliffordElem::blade(space, mask, field.one());
        let commutes_sign = if n % 2 == 1 || mask.count_ones() % 2 == 0 { 1 } else { -1 };
        graded &= raw.mul(&blade) == blade.mul(&raw).scale(&field.from_i64(commutes_sign));
    }
    rec.check("zeta is central in C(V) (n odd) or C+(V) (n even)", graded, || {
        ("graded centrality".into(), "a blade violates it".into())
    });
    Ok(())
}

pub(crate) fn semidirect(rec: &mut Recorder, space: &Arc<QuadSpace>, env: &mut Env) -> Result<()> {
    let n = space.dim();
    let (group, exhaustive) = population(space, env, 32)?;
    let one = space.field().one();
    let involutions: Vec<&GPinElem> =
        group.iter().filter(|t| !t.is_even() && t.mul(t).as_scalar().is_some_and(|s| s.is_one())).collect();
    let structure = split_structure(space);
    rec.case(format!("split structure of {space}"));
    if n % 2 == 1 {
        let disc_square = space.discriminant().is_one();
        let claimed = matches!(structure, SplitStructure::Direct { .. });
        rec.check_eq("direct splitting iff disc(V) is a square", &disc_square, &claimed);
        if exhaustive {
            // The vectors of the group generate it.
            let vectors: Vec<&GPinElem> =
                group.iter().filter(|g| g.value().terms().keys().all(|m| m.count_ones() == 1)).collect();
            let central: Vec<&&GPinElem> =
                involutions.iter().filter(|t| vectors.iter().all(|g| g.mul(t) == t.mul(g))).collect();
            rec.check_eq("central odd involution exists iff disc(V) is a square", &disc_square, &!central.is_empty());
        }
        if let SplitStructure::Direct { zeta_prime } = &structure {
            rec.check("zeta' is an odd involution", !zeta_prime.is_even() && zeta_prime.mul(zeta_prime).as_scalar() == Some(one.clone()), || {
                ("odd with square 1".into(), zeta_prime.to_string())
            });
            decomposition(rec, &group, exhaustive, zeta_prime, true);
        }
    } else {
        if let SplitStructure::Semidirect { t } = &structure {
            rec.check("t is an odd involution", !t.is_even() && t.mul(t).as_scalar() == Some(one.clone()), || {
                ("odd with square 1".into(), t.to_string())
            });
            decomposition(rec, &group, exhaustive, t, false);
        } else if exhaustive {
            match involutions.first() {
                Some(t) => decomposition(rec, &group, exhaustive, t, false),
                None => rec.finding("no-odd-involution", format!("{space} has no odd involution")),
            }
        }
    }
    Ok(())
}

/// `GPin = GSpin * {1, t}` with `t` normalizing GSpin, and centralizing it
/// when `central`.
fn decomposition(rec: &mut Recorder, group: &[GPinElem], exhaustive: bool, t: &GPinElem, central: bool) {
    let t_inv = t.inverse();
    for g in group {
        rec.case(format!("{g} against t = {t}"));
        let even_part = if g.is_even() { g.clone() } else { g.mul(&t_inv) };
        rec.check("g = g0 t^b with g0 even", even_part.is_even(), || ("even".into(), even_part.to_string()));
        if g.is_even() {
            let conj = t.conjugate(g);
            rec.check("t normalizes GSpin", conj.is_even(), || ("even".into(), conj.to_string()));
            if central {
                rec.check_eq("t centralizes GSpin", g, &conj);
            }
        }
    }
    if exhaustive {
        let evens = group.iter().filter(|g| g.is_even()).count();
        rec.check_eq("|GPin| = 2 |GSpin|", &group.len(), &(2 * evens));
    }
}

pub(crate) fn pin_spin(rec: &mut Recorder, space: &Arc<QuadSpace>, env: &mut Env) -> Result<()> {
    let (group, exhaustive) = population(space, env, 32)?;
    let stride = (group.len() / 16).max(1);
    for g in &group {
        rec.case(format!("{g} on {space}"));
        let flags = g.pin_spin();
        let pin = g.norm().is_one();
        rec.check("Pin(V) is the norm-one subgroup", flags.pin == pin && flags.spin == (pin && g.is_even()), || {
            (format!("pin={pin}, spin={}", pin && g.is_even()), format!("{flags:?}"))
        });
        let sn = spinor_norm(g.projection());
        rec.check_eq("spinor norm = N(g) mod squares", &g.norm().square_class_rep(), &sn);
        for h in group.iter().step_by(stride) {
            let product = spinor_norm(&g.projection().compose(h.projection()));
            let expected = (&sn * &spinor_norm(h.projection())).square_class_rep();
            rec.check_eq("spinor norm is multiplicative", &expected, &product);
        }
    }
    if exhaustive {
        rec.case(format!("P(Pin(V)) on {space}"));
        let images: BTreeSet<String> =
            group.iter().filter(|g| g.norm().is_one()).map(|g| g.projection().to_string()).collect();
        let kernel: BTreeSet<String> = enumerate_isometries(space, false, env.cap)?
            .iter()
            .filter(|m| spinor_norm(m).is_one())
            .map(|m| m.to_string())
            .collect();
        rec.check_eq("P(Pin(V)) = kernel of the spinor norm", &kernel.len(), &images.len());
        rec.check("P(Pin(V)) = kernel of the spinor norm (elementwise)", images == kernel, || {
            (format!("{} isometries", kernel.len()), format!("{} images", images.len()))
        });
        let pin_kernel = group.iter().filter(|g| g.norm().is_one() && g.projection().is_identity()).count();
        rec.check_eq("Pin(V) meets the scalars in {1, -1}", &2, &pin_kernel);
    } else {
        for _ in 0..8 {
            let v = random_anisotropic(space, &mut env.rng);
            rec.case(format!("reflection in {} on {space}", show_vector(&v)));
            let g = GPinElem::from_vectors(space, std::slice::from_ref(&v), &space.field().one())?;
            let expected = (-space.frame_quadratic(&v)).square_class_rep();
            rec.check_eq("spinor norm of a reflection is -q(v)", &expected, &spinor_norm(g.projection()));
        }
    }
    Ok(())
}
