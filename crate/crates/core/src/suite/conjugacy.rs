use std::collections::HashSet;
use std::sync::Arc;

use rand::seq::SliceRandom;

use super::{isometries, population, random_vector, Env, Recorder};
use crate::centralizer::{
    decompose, image_in_gpin, image_in_gspin, restrict_so, trace_form_pairing, Block, CentralizerDescription,
};
use crate::conjugacy::{
    brute_force_conjugate, brute_force_mvw, conjugator, conjugator_gspin, conjugator_gspin_untwisted,
    conjugator_with, mvw_beta, tau_w, tau_w_gspin, DetTargets, Involution, TildeElement, TildeGroup,
};
use crate::error::{Error, Result};
use crate::gpin::GPinElem;
use crate::quadspace::{Isometry, QuadSpace};
use crate::scalars::matrix::unit_vector;
use crate::scalars::{Matrix, Vector};

const SLOW_SAMPLES: usize = 24;
const TILDE_TRIPLES: usize = 100;

fn sign(e: usize) -> i8 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Everything in small dimension, a seeded sample from dimension 4 on.
fn pick<'a, T>(items: &'a [T], space: &QuadSpace, env: &mut Env) -> Vec<&'a T> {
    if space.dim() < 4 {
        return items.iter().collect();
    }
    items.choose_multiple(&mut env.rng, SLOW_SAMPLES).collect()
}

/// One representative per scalar multiple: the lowest blade coefficient is 1.
fn normalized(g: &GPinElem) -> bool {
    g.value().lowest_coeff().is_some_and(|(_, c)| c.is_one())
}

fn restricted_sign(m: &Isometry, span: &[Vector]) -> Option<i8> {
    if span.is_empty() {
        return Some(1);
    }
    let b = Matrix::from_columns(m.space().field(), m.space().dim(), span);
    m.matrix().restrict(&b)?.det().as_sign()
}

/// `decompose`, with unsupported factorizations reported as findings and
/// non-semisimple isometries skipped.
fn describe(rec: &mut Recorder, h: &Isometry) -> Result<Option<CentralizerDescription>> {
    match decompose(h) {
        Ok(d) => Ok(Some(d)),
        Err(Error::NotSemisimple) => Ok(None),
        Err(e @ Error::FactorizationUnsupported(_)) => {
            rec.finding("factorization-unsupported", e.to_string());
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

pub(crate) fn mvw(rec: &mut Recorder, space: &Arc<QuadSpace>, env: &mut Env) -> Result<()> {
    let (group, exhaustive) = isometries(space, env, SLOW_SAMPLES)?;
    for h in &group {
        rec.case(format!("h = {h} on {space}"));
        if exhaustive {
            rec.check("h is conjugate to h^-1 in O(V)", brute_force_mvw(h, &group).is_some(), || {
                ("a conjugating isometry".into(), "none".into())
            });
        }
        let Some(d) = describe(rec, h)? else { continue };
        for (plus, minus) in [(1, 1), (-1, 1), (1, -1), (-1, -1)] {
            let targets = DetTargets { plus, minus };
            match mvw_beta(&d, targets) {
                Ok(beta) => {
                    let ok = beta.compose(&h.inverse()).compose(&beta.inverse()) == *h;
                    rec.check("beta h^-1 beta^-1 = h", ok, || (h.to_string(), beta.to_string()));
                    let got = (restricted_sign(&beta, d.plus_basis()), restricted_sign(&beta, d.minus_basis()));
                    rec.check("beta has the requested determinants on V+ and V-", got == (Some(plus), Some(minus)), || {
                        (format!("({plus}, {minus})"), format!("{got:?}"))
                    });
                    for (block, span) in d.blocks().iter().zip(d.spans()) {
                        if matches!(block, Block::GL { .. } | Block::Unitary { .. }) {
                            let expected = sign(block.half_dim());
                            let got = restricted_sign(&beta, span);
                            rec.check("det beta = (-1)^k_i on GL and unitary blocks", got == Some(expected), || {
                                (expected.to_string(), format!("{got:?} on a {} block", block.kind_name()))
                            });
                        }
                    }
                }
                Err(Error::UnreachableDet) => {
                    let empty = (plus == -1 && d.plus_dim() == 0) || (minus == -1 && d.minus_dim() == 0);
                    rec.check("only determinants on empty blocks are unreachable", empty, || {
                        ("reachable".into(), format!("({plus}, {minus}) unreachable"))
                    });
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(())
}

fn decomposition_checks(rec: &mut Recorder, d: &CentralizerDescription) {
    let space = d.space();
    let n = space.dim();
    let h = d.isometry();
    let m = h.matrix();
    let spans = d.spans();
    let all: Vec<Vector> = spans.iter().flatten().cloned().collect();
    rec.check_eq("blocks span V", &n, &Matrix::from_columns(space.field(), n, &all).rank());
    let mut orthogonal = true;
    let mut nondegenerate = true;
    for (i, a) in spans.iter().enumerate() {
        for b in &spans[i + 1..] {
            orthogonal &= a.iter().all(|v| b.iter().all(|w| space.frame_bilinear(v, w).is_zero()));
        }
        let gram: Vec<Vector> = a.iter().map(|v| a.iter().map(|w| space.frame_bilinear(v, w)).collect()).collect();
        nondegenerate &= !Matrix::from_rows(space.field(), gram).det().is_zero();
    }
    rec.check("blocks are orthogonal", orthogonal, || ("orthogonal".into(), "a pairing is nonzero".into()));
    rec.check("blocks are nondegenerate", nondegenerate, || ("nondegenerate".into(), "a block is degenerate".into()));
    let minus_one = space.field().from_i64(-1);
    let eigen = d.plus_basis().iter().all(|v| h.apply(v) == *v)
        && d.minus_basis().iter().all(|v| h.apply(v) == v.iter().map(|c| c * &minus_one).collect::<Vector>());
    rec.check("V+ and V- are the +-1 eigenspaces", eigen, || ("eigenvectors".into(), h.to_string()));
    for block in d.blocks() {
        match block {
            Block::Unitary { ext, basis, hermitian_gram } => {
                let sigma = match ext.inverse_involution() {
                    Ok(sigma) => sigma,
                    Err(e) => {
                        rec.check("unitary blocks carry x -> x^-1", false, || ("an involution".into(), e.to_string()));
                        continue;
                    }
                };
                for (a, v) in basis.iter().enumerate() {
                    for (b, w) in basis.iter().enumerate() {
                        let vw = trace_form_pairing(space, m, ext, v, w);
                        let wv = trace_form_pairing(space, m, ext, w, v);
                        rec.check("unitary pairing is Hermitian", sigma.apply(&vw) == wv, || {
                            (format!("{wv:?}"), format!("{:?}", sigma.apply(&vw)))
                        });
                        rec.check_eq("trace of the unitary pairing is the form", &space.frame_bilinear(v, w), &ext.trace(&vw));
                        let expected = if a == b { hermitian_gram[a].clone() } else { ext.zero() };
                        rec.check("unitary basis is orthogonal with the recorded Gram", vw == expected, || {
                            (format!("{expected:?}"), format!("{vw:?}"))
                        });
                    }
                }
            }
            Block::GL { ext, x_basis, xstar_basis } => {
                let isotropic = x_basis.iter().chain(xstar_basis).all(|v| space.frame_quadratic(v).is_zero());
                rec.check("X and X* are totally isotropic", isotropic, || ("isotropic".into(), "anisotropic".into()));
                for (a, e) in x_basis.iter().enumerate() {
                    for (b, f) in xstar_basis.iter().enumerate() {
                        let pairing = trace_form_pairing(space, m, ext, e, f);
                        let expected = if a == b { ext.one() } else { ext.zero() };
                        rec.check("X* carries the dual basis of X", pairing == expected, || {
                            (format!("{expected:?}"), format!("{pairing:?}"))
                        });
                        rec.check_eq("trace of the GL pairing is the form", &space.frame_bilinear(e, f), &ext.trace(&pairing));
                    }
                }
            }
            Block::Plus(_) | Block::Minus(_) => {}
        }
    }
}

pub(crate) fn centralizer_orders(rec: &mut Recorder, space: &Arc<QuadSpace>, env: &mut Env) -> Result<()> {
    let (group, exhaustive) = isometries(space, env, SLOW_SAMPLES)?;
    let targets = if exhaustive { pick(&group, space, env) } else { group.iter().collect() };
    for h in targets {
        rec.case(format!("O(V)_h for h = {h} on {space}"));
        let Some(d) = describe(rec, h)? else { continue };
        decomposition_checks(rec, &d);
        if !exhaustive {
            continue;
        }
        let commutant: Vec<&Isometry> =
            group.iter().filter(|m| m.matrix().mul(h.matrix()) == h.matrix().mul(m.matrix())).collect();
        let full = d.full_group();
        rec.check("commutant lies in the described group", commutant.iter().all(|m| full.contains(m)), || {
            ("all contained".into(), "an element outside".into())
        });
        let count = |n: usize| Some(num_bigint::BigUint::from(n));
        rec.check_eq("|O(V)_h| matches the block formula", &fmt_order(count(commutant.len())), &fmt_order(full.predicted_order()));
        match restrict_so(&d) {
            Ok(so) => {
                let special = commutant.iter().filter(|m| m.det_sign() == 1).count();
                rec.check_eq("|SO(V)_h| matches S(O(V+) x O(V-))", &fmt_order(count(special)), &fmt_order(so.predicted_order()));
            }
            Err(e) => {
                rec.check("SO(V)_h is refused only for det h = -1", e == Error::NotSpecial && h.det_sign() == -1, || {
                    ("NotSpecial with det -1".into(), e.to_string())
                });
            }
        }
    }
    let (elements, exhaustive) = population(space, env, 0)?;
    if !exhaustive {
        return Ok(());
    }
    let normalized: Vec<GPinElem> = elements.iter().filter(|g| normalized(g)).cloned().collect();
    for g in pick(&normalized, space, env) {
        rec.case(format!("P(GPin(V)_g) for g = {g} on {space}"));
        let Some(d) = describe(rec, g.projection())? else { continue };
        let commuting: Vec<&GPinElem> = elements.iter().filter(|x| x.mul(g) == g.mul(x)).collect();
        let brute: HashSet<&Isometry> = commuting.iter().map(|x| x.projection()).collect();
        let image = image_in_gpin(&d);
        let predicted: HashSet<&Isometry> = group.iter().filter(|m| image.contains(m)).collect();
        rec.check("P(GPin(V)_g) matches the described subgroup", brute == predicted, || {
            (format!("{} isometries", predicted.len()), format!("{} isometries", brute.len()))
        });
        rec.check_eq("|P(GPin(V)_g)| matches the formula", &fmt_order(Some(brute.len().into())), &fmt_order(image.predicted_order()));
        if g.is_even() {
            let brute: HashSet<&Isometry> = commuting.iter().filter(|x| x.is_even()).map(|x| x.projection()).collect();
            let image = image_in_gspin(&d)?;
            let predicted: HashSet<&Isometry> = group.iter().filter(|m| image.contains(m)).collect();
            rec.check("P(GSpin(V)_g) = SO(V+) x SO(V-) on the orthogonal part", brute == predicted, || {
                (format!("{} isometries", predicted.len()), format!("{} isometries", brute.len()))
            });
        }
    }
    Ok(())
}

fn fmt_order(o: Option<num_bigint::BigUint>) -> String {
    o.map_or_else(|| "unknown".into(), |o| o.to_string())
}

pub(crate) fn conjugacy(rec: &mut Recorder, space: &Arc<QuadSpace>, env: &mut Env) -> Result<()> {
    let n = space.dim();
    let (elements, exhaustive) = population(space, env, SLOW_SAMPLES)?;
    let targets: Vec<GPinElem> = elements.iter().filter(|g| !exhaustive || normalized(g)).cloned().collect();
    for g in pick(&targets, space, env) {
        rec.case(format!("g = {g} on {space}"));
        let Some(d) = describe(rec, g.projection())? else { continue };
        let cert = match conjugator(g) {
            Ok(c) => c,
            Err(e @ Error::RepairFailed(_)) => {
                rec.finding("repair-failed", e.to_string());
                continue;
            }
            Err(e) => return Err(e),
        };
        rec.check("eta sigma_V(g) eta^-1 = g", cert.is_valid(), || (g.to_string(), cert.eta.conjugate(&g.sigma_v()).to_string()));
        if g.is_even() {
            let k = space.half_dim();
            rec.check("det P(eta) = (-1)^k for g in GSpin(V)", cert.det_constraint_holds(), || {
                (sign(k).to_string(), cert.det_beta.to_string())
            });
            for ((block, det), _) in d.blocks().iter().zip(&cert.block_dets).zip(d.spans()) {
                let expected = match block {
                    Block::GL { .. } | Block::Unitary { .. } => sign(block.half_dim()),
                    Block::Minus(b) => sign(b.len().div_ceil(2)),
                    Block::Plus(_) => continue,
                };
                rec.check("det P(eta) = (-1)^k_i on each block", *det == expected, || {
                    (expected.to_string(), format!("{det} on a {} block", block.kind_name()))
                });
            }
        }
        if d.plus_dim() == 0 && d.minus_dim() == 0 {
            let beta = mvw_beta(&d, DetTargets::default())?;
            let eta = GPinElem::lift(&beta);
            rec.check("without V+ and V- any lift of beta conjugates", eta.conjugate(&g.sigma_v()) == *g, || {
                (g.to_string(), eta.conjugate(&g.sigma_v()).to_string())
            });
            rec.check("without V+ and V- g is even", g.is_even(), || ("even".into(), g.to_string()));
        }
        if n % 2 == 1 {
            let gz = g.mul(&GPinElem::zeta(space));
            if let Ok(c) = conjugator(&gz) {
                rec.check("odd n: g zeta is conjugate to sigma_V(g zeta)", c.is_valid(), || {
                    (gz.to_string(), c.eta.conjugate(&gz.sigma_v()).to_string())
                });
            }
        } else {
            match conjugator_with(g, Involution::Clifford) {
                Ok(c) => rec.check("even n: g is conjugate to bar(g)", c.is_valid(), || {
                    (g.to_string(), c.eta.conjugate(&g.bar()).to_string())
                }),
                Err(e @ Error::RepairFailed(_)) => {
                    rec.finding("repair-failed", e.to_string());
                    true
                }
                Err(e) => return Err(e),
            };
        }
        if exhaustive {
            let found = brute_force_conjugate(g, &g.sigma_v(), &elements).is_some();
            rec.check("brute force finds a conjugator of sigma_V(g) to g", found, || ("a conjugator".into(), "none".into()));
        }
    }
    zeta_minus_cases(rec, space, if exhaustive { Some(&elements) } else { None })
}

/// `zeta_-` for the coordinate splits `V+ = span(e_1..e_(n-m))`, `V- = span(e_(n-m+1)..e_n)`.
fn zeta_minus_cases(rec: &mut Recorder, space: &Arc<QuadSpace>, elements: Option<&[GPinElem]>) -> Result<()> {
    let n = space.dim();
    let field = space.field();
    let basis = |i: usize| unit_vector(field, n, i);
    for m in 1..=n {
        let minus_span: Vec<Vector> = (n - m..n).map(basis).collect();
        let zeta_minus = GPinElem::from_vectors(space, &minus_span, &field.one())?;
        let involutions: &[Involution] =
            if n % 2 == 0 { &[Involution::Canonical, Involution::Clifford] } else { &[Involution::Canonical] };
        for &tau in involutions {
            rec.case(format!("zeta_- on the last {m} basis vectors of {space}, {tau:?}"));
            let twisted = tau.apply(&zeta_minus);
            if m % 2 == 0 {
                let cert = match conjugator_with(&zeta_minus, tau) {
                    Ok(c) => c,
                    Err(e @ Error::RepairFailed(_)) => {
                        rec.finding("repair-failed", e.to_string());
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                rec.check("even V-: eta tau(zeta_-) eta^-1 = zeta_-", cert.conjugates(), || {
                    (zeta_minus.to_string(), cert.eta.conjugate(&twisted).to_string())
                });
                let det = restricted_sign(cert.eta.projection(), &minus_span);
                rec.check("even V-: det P(eta) on V- is (-1)^(m/2)", det == Some(sign(m / 2)), || {
                    (sign(m / 2).to_string(), format!("{det:?}"))
                });
            } else if (n - m) % 2 == 1 {
                let cert = match conjugator_with(&zeta_minus, tau) {
                    Ok(c) => c,
                    Err(e @ Error::RepairFailed(_)) => {
                        rec.finding("repair-failed", e.to_string());
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                rec.check("odd V+ and V-: zeta_- is conjugate to tau(zeta_-)", cert.conjugates(), || {
                    (zeta_minus.to_string(), cert.eta.conjugate(&twisted).to_string())
                });
                let x = GPinElem::from_vectors(space, &[basis(0)], &field.one())?;
                let flipped = cert.eta.mul(&x).conjugate(&twisted);
                rec.check_eq("odd V+ and V-: a vector of V+ flips the sign", &zeta_minus.neg(), &flipped);
                if let Some(group) = elements {
                    let plus = brute_force_conjugate(&zeta_minus, &twisted, group).is_some();
                    let minus = brute_force_conjugate(&zeta_minus.neg(), &twisted, group).is_some();
                    rec.check("odd V+ and V-: both signs are reached (brute force)", plus && minus, || {
                        ("both".into(), format!("+: {plus}, -: {minus}"))
                    });
                }
            }
        }
    }
    Ok(())
}

pub(crate) fn gspin_conjugacy(rec: &mut Recorder, space: &Arc<QuadSpace>, env: &mut Env) -> Result<()> {
    let (elements, exhaustive) = population(space, env, SLOW_SAMPLES)?;
    let even: Vec<GPinElem> = elements.iter().filter(|g| g.is_even()).cloned().collect();
    let targets: Vec<GPinElem> = even.iter().filter(|g| !exhaustive || normalized(g)).cloned().collect();
    for g in pick(&targets, space, env) {
        rec.case(format!("g = {g} in GSpin({space})"));
        if describe(rec, g.projection())?.is_none() {
            continue;
        }
        let certificates = [(conjugator_gspin(g), "twisted"), (conjugator_gspin_untwisted(g), "untwisted")];
        for (result, kind) in certificates {
            let cert = match result {
                Ok(c) => c,
                Err(Error::WrongParityDimension) => continue,
                Err(e @ Error::RepairFailed(_)) => {
                    rec.finding("repair-failed", e.to_string());
                    continue;
                }
                Err(e) => return Err(e),
            };
            let name = if kind == "twisted" {
                "g is conjugate to e^k sigma_V(g) e^-k in GSpin(V)"
            } else {
                "odd n: g is conjugate to sigma_V(g) in GSpin(V)"
            };
            rec.check(name, cert.is_valid(), || {
                (g.to_string(), format!("eta = {} (even: {})", cert.eta, cert.eta.is_even()))
            });
            if exhaustive {
                let found = brute_force_conjugate(g, &cert.twisted, &even).is_some();
                rec.check(&format!("{name} (brute force)"), found, || ("a conjugator".into(), "none".into()));
            }
        }
    }
    Ok(())
}

pub(crate) fn tilde_actions(rec: &mut Recorder, space: &Arc<QuadSpace>, env: &mut Env) -> Result<()> {
    let (elements, _) = population(space, env, SLOW_SAMPLES)?;
    for tag in [TildeGroup::GPin, TildeGroup::GSpin, TildeGroup::GPinW, TildeGroup::GSpinW] {
        let members: Vec<&GPinElem> = elements.iter().filter(|g| tag.admits(g)).collect();
        let points: Vec<&GPinElem> =
            elements.iter().filter(|g| matches!(tag, TildeGroup::GPin | TildeGroup::GPinW) || g.is_even()).collect();
        if members.is_empty() || points.is_empty() {
            continue;
        }
        let gen = TildeElement::generator(space, tag);
        let id = TildeElement::identity(space, tag);
        rec.case(format!("{tag:?} generator on {space}"));
        let square = gen.mul(&gen);
        rec.check("(t beta)^2 is a scalar", !square.beta && square.g.as_scalar().is_some(), || {
            ("scalar".into(), format!("{square:?}"))
        });
        if tag == TildeGroup::GPin {
            rec.check("beta^2 = 1", square == id, || ("1".into(), format!("{square:?}")));
        }
        for i in 0..TILDE_TRIPLES {
            rec.case(format!("{tag:?} triple {i} on {space}"));
            let element = |env: &mut Env| -> TildeElement {
                let g = (*members.choose(&mut env.rng).expect("nonempty")).clone();
                let beta = rand::Rng::gen_bool(&mut env.rng, 0.5);
                TildeElement::new(g, beta, tag).expect("admitted")
            };
            let (a, b) = (element(env), element(env));
            let point = ((*points.choose(&mut env.rng).expect("nonempty")).clone(), random_vector(space, &mut env.rng));
            let ab = a.mul(&b);
            rec.check_eq("products stay in the group", &true, &tag.admits(&ab.g));
            let left = ab.act(&point);
            let right = a.act(&b.act(&point));
            rec.check("(ab).x = a.(b.x)", left == right, || (format!("{right:?}"), format!("{left:?}")));
            rec.check("1.x = x", id.act(&point) == point, || (format!("{point:?}"), format!("{:?}", id.act(&point))));
            let twice = gen.act(&gen.act(&point));
            rec.check("(t beta)^2 acts trivially", twice == point, || (format!("{point:?}"), format!("{twice:?}")));
            rec.check_eq("chi is a homomorphism", &(a.chi() * b.chi()), &ab.chi());
            rec.check_eq("ker chi is the plain group", &(a.chi() == 1), &!a.beta);
            if tag == TildeGroup::GPin {
                let plain = TildeElement::new(a.g.clone(), false, tag).expect("admitted");
                let (left, right) = (plain.mul(&gen), gen.mul(&plain));
                rec.check("beta is central in GPin~(V)", left == right, || (format!("{right:?}"), format!("{left:?}")));
            }
        }
    }
    for (tag, tau) in [(TildeGroup::GPinW, tau_w as fn(&GPinElem) -> GPinElem), (TildeGroup::GSpinW, tau_w_gspin)] {
        for g in elements.iter().filter(|g| tag.admits(g)) {
            rec.case(format!("tau on {g} in {tag:?} over {space}"));
            let image = tau(g);
            rec.check(&format!("tau preserves the {tag:?} subgroup"), tag.admits(&image), || {
                ("inside".into(), image.to_string())
            });
            rec.check_eq(&format!("tau is an involution on the {tag:?} subgroup"), g, &tau(&image));
            let acted = TildeElement::generator(space, tag).act(&(g.clone(), random_vector(space, &mut env.rng))).0;
            rec.check_eq(&format!("the {tag:?} generator acts through tau"), &image, &acted);
        }
    }
    Ok(())
}
