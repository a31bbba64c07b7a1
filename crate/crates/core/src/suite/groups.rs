use std::collections::HashSet;
use std::sync::Arc;

use super::{isometries, population, Env, Recorder};
use crate::clifford::CliffordElem;
use crate::error::Result;
use crate::gpin::{center, zeta_commutation, GPinElem, GroupKind};
use crate::quadspace::{cartan_dieudonne, Isometry, QuadSpace};
use crate::scalars::matrix::unit_vector;
use crate::scalars::{Matrix, Vector};

/// `v -> alpha(g) v g^-1` on the frame basis, from raw Clifford products.
fn projection_oracle(g: &GPinElem) -> Option<Matrix> {
    let s = g.space();
    let inverse = g.value().bar().scale(&g.norm().inv()?);
    let alpha = g.value().alpha();
    let columns: Option<Vec<Vector>> = (0..s.dim())
        .map(|i| alpha.mul(&CliffordElem::basis_vector(s, i)).mul(&inverse).as_vector())
        .collect();
    Some(Matrix::from_columns(s.field(), s.dim(), &columns?))
}

fn commute(a: &GPinElem, b: &GPinElem) -> bool {
    a.value().mul(b.value()) == b.value().mul(a.value())
}

pub(crate) fn centers(rec: &mut Recorder, space: &Arc<QuadSpace>, env: &mut Env) -> Result<()> {
    let n = space.dim();
    let (group, exhaustive) = population(space, env, 24)?;
    let stride = if exhaustive { (group.len() / 48).max(1) } else { 1 };
    for g in &group {
        rec.case(format!("{g} on {space}"));
        let homogeneous = g.value().parity() == Some(g.parity());
        rec.check("elements are homogeneous", homogeneous, || ("homogeneous".into(), g.to_string()));
        let lift = GPinElem::lift(g.projection());
        let ratio = g.value().lowest_coeff().zip(lift.value().lowest_coeff()).and_then(|((_, a), (_, b))| {
            let b_inv = b.inv()?;
            Some(&a * &b_inv)
        });
        let reflections = cartan_dieudonne(g.projection()).len();
        let product_of_vectors = reflections <= n && ratio.is_some_and(|c| lift.scale(&c) == *g);
        rec.check("g is a scalar times at most n vectors", product_of_vectors, || {
            (format!("at most {n} vectors"), format!("{reflections} vectors, lift {lift}"))
        });
        match projection_oracle(g) {
            Some(m) => rec.check_eq("P(g) = alpha(g) v g^-1", &m.to_string(), &g.projection().matrix().to_string()),
            None => rec.check("P(g) = alpha(g) v g^-1", false, || ("image in V".into(), "image leaves V".into())),
        };
        rec.check_eq("sign(g) = det P(g)", &g.sign(), &g.projection().det_sign());
        let raw_norm = g.value().mul(&g.value().bar());
        rec.check("N(g) is the scalar norm", raw_norm.as_scalar().as_ref() == Some(g.norm()), || {
            (g.norm().to_string(), raw_norm.to_string())
        });
        let signed_star = if g.sign() == 1 { g.star() } else { g.star().neg() };
        rec.check_eq("bar(g) = sign(g) g*", &signed_star, &g.bar());
        rec.check_eq("N(sigma_V(g)) = N(g)", g.norm(), g.sigma_v().norm());
        for h in group.iter().step_by(stride) {
            let product = GPinElem::membership(&g.value().mul(h.value()))?;
            rec.check_eq("P is a homomorphism", &g.projection().compose(h.projection()), product.projection());
            rec.check_eq("N is multiplicative", &(g.norm() * h.norm()), product.norm());
        }
    }
    if !exhaustive {
        return Ok(());
    }
    rec.case(format!("projection onto O({space})"));
    let (orthogonal, _) = isometries(space, env, 0)?;
    let images: HashSet<&Isometry> = group.iter().map(GPinElem::projection).collect();
    let onto = orthogonal.len() == images.len() && orthogonal.iter().all(|m| images.contains(m));
    rec.check("P is onto O(V)", onto, || (format!("{} isometries", orthogonal.len()), format!("{} images", images.len())));
    let even_images: HashSet<&Isometry> = group.iter().filter(|g| g.is_even()).map(GPinElem::projection).collect();
    let special = orthogonal.iter().filter(|m| m.det_sign() == 1).count();
    let graded = even_images.len() == special && even_images.iter().all(|m| m.det_sign() == 1);
    rec.check("P maps GSpin onto SO(V) and odd elements onto O(V) - SO(V)", graded, || {
        (format!("{special} rotations"), format!("{} images of GSpin", even_images.len()))
    });
    let kernel: Vec<&GPinElem> = group.iter().filter(|g| g.projection().is_identity()).collect();
    let units = space.field().order().map(|q| q as usize - 1).unwrap_or(0);
    rec.check("ker P is the nonzero scalars", kernel.len() == units && kernel.iter().all(|g| g.as_scalar().is_some()), || {
        (format!("{units} scalars"), format!("{} elements", kernel.len()))
    });

    let even: Vec<GPinElem> = group.iter().filter(|g| g.is_even()).cloned().collect();
    for (kind, members) in [(GroupKind::GPin, &group), (GroupKind::GSpin, &even)] {
        let described = center(space, kind);
        for z in members.iter() {
            rec.case(format!("{z} in the center of {kind:?} on {space}"));
            let brute = members.iter().all(|g| commute(z, g));
            rec.check_eq(&format!("center of {kind:?} matches brute force"), &brute, &described.contains(z));
            if kind == GroupKind::GPin && brute {
                rec.check_eq("sigma_V fixes the center", z, &z.sigma_v());
            }
        }
    }
    if n == 2 {
        rec.case(format!("GSpin of the plane {space}"));
        let commutative = even.iter().all(|a| even.iter().all(|b| commute(a, b)));
        rec.check_eq("GSpin of a plane is commutative", &commutative, &center(space, GroupKind::GSpin).whole_group);
    }
    Ok(())
}

pub(crate) fn inclusions(rec: &mut Recorder, space: &Arc<QuadSpace>, env: &mut Env) -> Result<()> {
    let n = space.dim();
    if n < 2 {
        return Ok(());
    }
    let w = Arc::new(space.leading_subspace(n - 1));
    let positions: Vec<usize> = (0..n - 1).collect();
    let last = unit_vector(space.field(), n, n - 1);
    let w_basis: Vec<Vector> = positions.iter().map(|&i| unit_vector(space.field(), n, i)).collect();
    let w_frame = Matrix::from_columns(space.field(), n, &w_basis);
    let (group, exhaustive) = population(&w, env, 24)?;
    for g in &group {
        rec.case(format!("{g} from {w} into {space}"));
        let member = GPinElem::membership(&g.value().embed(space, &positions));
        let ok = member.is_ok();
        rec.check("GPin(W) lies in GPin(V)", ok, || ("member".into(), format!("{:?}", member.as_ref().err())));
        let Ok(embedded) = member else { continue };
        rec.check("P(g) fixes e_n", embedded.projection().apply(&last) == last, || {
            ("e_n fixed".into(), embedded.projection().to_string())
        });
        let restricted = embedded.projection().matrix().restrict(&w_frame);
        rec.check("P(g) restricts to P_W(g)", restricted.as_ref() == Some(g.projection().matrix()), || {
            (g.projection().to_string(), restricted.map_or("none".into(), |m| m.to_string()))
        });
        rec.check_eq("norm is preserved", g.norm(), embedded.norm());
        rec.check_eq("GSpin(W) lies in GSpin(V)", &g.is_even(), &embedded.is_even());
    }
    if exhaustive {
        rec.case(format!("elements of GPin({space}) supported on W"));
        let (full, _) = population(space, env, 0)?;
        let mask = (1u32 << (n - 1)) - 1;
        let supported = full.iter().filter(|g| g.value().terms().keys().all(|m| m & !mask == 0)).count();
        rec.check_eq("GPin(W) is the part of GPin(V) supported on W", &group.len(), &supported);
    }
    Ok(())
}

pub(crate) fn commuting(rec: &mut Recorder, space: &Arc<QuadSpace>, env: &mut Env) -> Result<()> {
    let n = space.dim();
    let (group, _) = population(space, env, 32)?;
    let full = (1u32 << n) - 1;
    let supported = |g: &&GPinElem, mask: u32| g.value().terms().keys().all(|m| m & !mask == 0);
    for m in 1..n {
        let low = (1u32 << m) - 1;
        let first: Vec<&GPinElem> = group.iter().filter(|g| supported(g, low)).collect();
        let second: Vec<&GPinElem> = group.iter().filter(|g| supported(g, full & !low)).collect();
        for g1 in &first {
            for g2 in &second {
                rec.case(format!("{g1} with {g2} on {space}, split {m}+{}", n - m));
                let expected = if g1.is_even() || g2.is_even() { (*g2).clone() } else { g2.neg() };
                rec.check_eq("g1 g2 g1^-1 = (-1)^(odd and odd) g2", &expected, &g1.conjugate(g2));
            }
        }
    }
    if n % 2 == 0 && n > 2 {
        let zeta = CliffordElem::zeta(space);
        for g in &group {
            rec.case(format!("{g} against zeta on {space}"));
            let c = zeta_commutation(g)?;
            rec.check_eq("g zeta = sign(g) zeta g", &g.sign(), &c);
            let right = zeta.mul(g.value());
            let right = if g.sign() == 1 { right } else { right.neg() };
            rec.check("g zeta = sign(g) zeta g (raw)", g.value().mul(&zeta) == right, || {
                (right.to_string(), g.value().mul(&zeta).to_string())
            });
        }
    }
    Ok(())
}
