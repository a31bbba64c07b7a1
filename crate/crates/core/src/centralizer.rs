//! Decomposition of a quadratic space under a semisimple isometry and the
//! resulting description of its centralizer.

use num_bigint::BigUint;
use num_traits::One;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::quadspace::{Isometry, QuadSpace};
use crate::scalars::matrix::{vec_add, vec_scale, vec_sub};
use crate::scalars::{factor, minimal_polynomial, ExtField, ExtScalar, Field, Matrix, Poly, Scalar, Vector};

/// One orthogonal summand of the decomposition. Bases are frame coordinates.
#[derive(Debug, Clone)]
pub enum Block {
    /// `X + X*` with `X = ker p(h)` and `X* = ker p*(h)`, paired through the
    /// trace form. `x_basis` is a basis of `X` over `ext` (acting through `h`),
    /// `xstar_basis` the dual basis of `X*` (with `ext` acting through `h^-1`).
    GL { ext: ExtField, x_basis: Vec<Vector>, xstar_basis: Vec<Vector> },
    /// `ker p(h)` for a self-reciprocal `p` other than `x -+ 1`, with an
    /// orthogonal basis for the Hermitian form and its diagonal Gram entries.
    Unitary { ext: ExtField, basis: Vec<Vector>, hermitian_gram: Vec<ExtScalar> },
    Plus(Vec<Vector>),
    Minus(Vec<Vector>),
}

impl Block {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Block::GL { .. } => "GL",
            Block::Unitary { .. } => "Unitary",
            Block::Plus(_) => "Plus",
            Block::Minus(_) => "Minus",
        }
    }

    pub fn ext(&self) -> Option<&ExtField> {
        match self {
            Block::GL { ext, .. } | Block::Unitary { ext, .. } => Some(ext),
            _ => None,
        }
    }

    /// Rank over the extension field (or dimension for the `+-1` blocks).
    pub fn rank(&self) -> usize {
        match self {
            Block::GL { x_basis, .. } => x_basis.len(),
            Block::Unitary { basis, .. } => basis.len(),
            Block::Plus(b) | Block::Minus(b) => b.len(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Block::GL { ext, x_basis, .. } => 2 * ext.degree() * x_basis.len(),
            Block::Unitary { ext, basis, .. } => ext.degree() * basis.len(),
            Block::Plus(b) | Block::Minus(b) => b.len(),
        }
    }

    /// `k` with `dim = 2k` or `2k - 1`.
    pub fn half_dim(&self) -> usize {
        self.dim().div_ceil(2)
    }
}

/// The orthogonal decomposition of V under a semisimple isometry `h`.
#[derive(Debug, Clone)]
pub struct CentralizerDescription {
    h: Isometry,
    blocks: Vec<Block>,
    spans: Vec<Vec<Vector>>,
}

impl CentralizerDescription {
    pub fn isometry(&self) -> &Isometry {
        &self.h
    }

    pub fn space(&self) -> &QuadSpace {
        self.h.space()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Base-field basis of each block, in block order.
    pub fn spans(&self) -> &[Vec<Vector>] {
        &self.spans
    }

    pub fn plus_basis(&self) -> &[Vector] {
        self.blocks.iter().find_map(|b| if let Block::Plus(v) = b { Some(v.as_slice()) } else { None }).unwrap_or(&[])
    }

    pub fn minus_basis(&self) -> &[Vector] {
        self.blocks.iter().find_map(|b| if let Block::Minus(v) = b { Some(v.as_slice()) } else { None }).unwrap_or(&[])
    }

    pub fn plus_dim(&self) -> usize {
        self.plus_basis().len()
    }

    pub fn minus_dim(&self) -> usize {
        self.minus_basis().len()
    }

    /// Half-dimensions of the blocks in order, `+` and `-` blocks included.
    pub fn k_list(&self) -> Vec<usize> {
        self.blocks.iter().map(Block::half_dim).collect()
    }

    /// `O(V)_h`.
    pub fn full_group(&self) -> CentralizerGroup {
        CentralizerGroup { description: self.clone(), orthogonal: OrthogonalPart::Product(Ortho::O, Ortho::O) }
    }
}

/// Orthogonal or special orthogonal group on a `+-1` block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Ortho {
    O,
    SO,
}

/// How the centralizer acts on `V+ + V-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrthogonalPart {
    /// `G(V+) x G(V-)`.
    Product(Ortho, Ortho),
    /// `S(O(V+) x O(V-))`.
    Special,
}

/// A subgroup of `O(V)_h` given by the block decomposition and a
/// restriction on the orthogonal part.
#[derive(Debug, Clone)]
pub struct CentralizerGroup {
    pub description: CentralizerDescription,
    pub orthogonal: OrthogonalPart,
}

impl CentralizerGroup {
    /// Whether an isometry belongs to the described group.
    pub fn contains(&self, m: &Isometry) -> bool {
        let h = self.description.h.matrix();
        if m.matrix().mul(h) != h.mul(m.matrix()) {
            return false;
        }
        let d = &self.description;
        let plus = restricted_det(m, d.plus_basis());
        let minus = restricted_det(m, d.minus_basis());
        let ok = |o: Ortho, det: &Scalar| o == Ortho::O || det.is_one();
        match self.orthogonal {
            OrthogonalPart::Product(p, q) => ok(p, &plus) && ok(q, &minus),
            OrthogonalPart::Special => (&plus * &minus).is_one(),
        }
    }

    /// Group order predicted from the blocks; `None` over Q.
    pub fn predicted_order(&self) -> Option<BigUint> {
        let d = &self.description;
        let Field::Prime(p) = d.space().field() else { return None };
        let mut order = BigUint::one();
        for b in &d.blocks {
            order *= match b {
                Block::GL { ext, x_basis, .. } => gl_order(&BigUint::from(p).pow(ext.degree() as u32), x_basis.len()),
                Block::Unitary { ext, basis, .. } => {
                    unitary_order(&BigUint::from(p).pow(ext.degree() as u32 / 2), basis.len())
                }
                Block::Plus(_) | Block::Minus(_) => BigUint::one(),
            };
        }
        let o_plus = orthogonal_order(d.space(), d.plus_basis())?;
        let o_minus = orthogonal_order(d.space(), d.minus_basis())?;
        let special = |o: BigUint, dim: usize| if dim == 0 { o } else { o / 2u32 };
        order *= match self.orthogonal {
            OrthogonalPart::Product(a, b) => {
                let pick = |o: Ortho, ord: BigUint, dim| if o == Ortho::O { ord } else { special(ord, dim) };
                pick(a, o_plus, d.plus_dim()) * pick(b, o_minus, d.minus_dim())
            }
            OrthogonalPart::Special => special(o_plus * o_minus, d.plus_dim() + d.minus_dim()),
        };
        Some(order)
    }

    pub fn to_json(&self) -> Value {
        let d = &self.description;
        let space = d.space();
        let original = |vs: &[Vector]| -> Vec<Vec<String>> {
            vs.iter().map(|v| space.to_original(v).iter().map(Scalar::to_string).collect()).collect()
        };
        let blocks: Vec<Value> = d
            .blocks
            .iter()
            .map(|b| {
                let mut entry = json!({ "kind": b.kind_name(), "dim": b.dim(), "rank": b.rank() });
                match b {
                    Block::GL { ext, x_basis, xstar_basis } => {
                        entry["modulus"] = json!(ext.modulus().to_strings());
                        entry["x_basis"] = json!(original(x_basis));
                        entry["xstar_basis"] = json!(original(xstar_basis));
                    }
                    Block::Unitary { ext, basis, hermitian_gram } => {
                        entry["modulus"] = json!(ext.modulus().to_strings());
                        entry["basis"] = json!(original(basis));
                        let gram: Vec<Vec<String>> =
                            hermitian_gram.iter().map(|a| a.coeffs().iter().map(Scalar::to_string).collect()).collect();
                        entry["hermitian_gram"] = json!(gram);
                    }
                    Block::Plus(v) | Block::Minus(v) => entry["basis"] = json!(original(v)),
                }
                entry
            })
            .collect();
        let orthogonal = match self.orthogonal {
            OrthogonalPart::Product(a, b) => json!({ "plus": a, "minus": b }),
            OrthogonalPart::Special => json!("S(O(V+) x O(V-))"),
        };
        json!({
            "blocks": blocks,
            "plus_dim": d.plus_dim(),
            "minus_dim": d.minus_dim(),
            "k_list": d.k_list(),
            "orthogonal": orthogonal,
            "predicted_order": self.predicted_order().map(|o| o.to_string()),
        })
    }
}

/// Splits V under a semisimple isometry into GL, unitary and `+-1` blocks.
pub fn decompose(h: &Isometry) -> Result<CentralizerDescription> {
    let m = h.matrix();
    let field = m.field();
    let minpoly = minimal_polynomial(m);
    if !minpoly.is_squarefree() {
        return Err(Error::NotSemisimple);
    }
    let factors: Vec<Poly> = factor(&minpoly)?.factors.into_iter().map(|(f, _)| f).collect();
    let plus = Poly::from_i64(field, &[-1, 1]);
    let minus = Poly::from_i64(field, &[1, 1]);
    let h_inv = h.inverse();
    let mut blocks = Vec::new();
    let mut plus_block = None;
    let mut minus_block = None;
    for (i, f) in factors.iter().enumerate() {
        let kernel = f.eval_matrix(m).kernel();
        if *f == plus {
            plus_block = Some(Block::Plus(kernel));
            continue;
        }
        if *f == minus {
            minus_block = Some(Block::Minus(kernel));
            continue;
        }
        let recip = f.reciprocal().expect("isometries are invertible");
        let j = factors.iter().position(|g| *g == recip).expect("factors of an isometry pair up under x -> 1/x");
        let ext = ExtField::new(f)?;
        if j == i {
            blocks.push(unitary_block(h, ext, &kernel));
        } else if i < j {
            let dual_kernel = factors[j].eval_matrix(m).kernel();
            blocks.push(gl_block(h, ext, &kernel, &dual_kernel));
        }
    }
    blocks.extend(plus_block);
    blocks.extend(minus_block);
    let spans = blocks.iter().map(|b| block_span(h, &h_inv, b)).collect();
    Ok(CentralizerDescription { h: h.clone(), blocks, spans })
}

/// `SO(V)_h`.
pub fn restrict_so(d: &CentralizerDescription) -> Result<CentralizerGroup> {
    if d.h.det_sign() != 1 {
        return Err(Error::NotSpecial);
    }
    assert!(d.minus_dim() % 2 == 0, "det h = 1 forces an even minus block");
    Ok(CentralizerGroup { description: d.clone(), orthogonal: OrthogonalPart::Special })
}

/// The projection of the GPin-centralizer of any lift of `h`.
pub fn image_in_gpin(d: &CentralizerDescription) -> CentralizerGroup {
    let orthogonal = if d.minus_dim() % 2 == 0 {
        OrthogonalPart::Product(Ortho::O, Ortho::SO)
    } else {
        OrthogonalPart::Product(Ortho::SO, Ortho::O)
    };
    CentralizerGroup { description: d.clone(), orthogonal }
}

/// The projection of the GSpin-centralizer of any even lift of `h`.
pub fn image_in_gspin(d: &CentralizerDescription) -> Result<CentralizerGroup> {
    if d.h.det_sign() != 1 {
        return Err(Error::NotSpecial);
    }
    Ok(CentralizerGroup { description: d.clone(), orthogonal: OrthogonalPart::Product(Ortho::SO, Ortho::SO) })
}

/// `a . v = a(h) v`.
pub fn ext_act(h: &Matrix, a: &ExtScalar, v: &[Scalar]) -> Vector {
    let mut acc = vec![h.field().zero(); v.len()];
    let mut power = v.to_vec();
    for (j, c) in a.coeffs().iter().enumerate() {
        if j > 0 {
            power = h.mul_vec(&power);
        }
        if !c.is_zero() {
            acc = vec_add(&acc, &vec_scale(c, &power));
        }
    }
    acc
}

/// The unique `c` in the extension with `tr(a c) = <a . v, w>` for all `a`.
pub fn trace_form_pairing(space: &QuadSpace, h: &Matrix, ext: &ExtField, v: &[Scalar], w: &[Scalar]) -> ExtScalar {
    let d = ext.degree();
    let x = ext.generator();
    let powers: Vec<ExtScalar> = (0..2 * d).map(|j| ext.pow(&x, j as i64).expect("nonnegative power")).collect();
    let traces: Vec<Vec<Scalar>> = (0..d).map(|j| (0..d).map(|l| ext.trace(&powers[j + l])).collect()).collect();
    let gram = Matrix::from_rows(ext.base(), traces);
    let mut rhs = Vec::with_capacity(d);
    let mut hv = v.to_vec();
    for j in 0..d {
        if j > 0 {
            hv = h.mul_vec(&hv);
        }
        rhs.push(space.frame_bilinear(&hv, w));
    }
    ext.from_coeffs(gram.solve(&rhs).expect("the trace form of a separable extension is nondegenerate"))
}

/// Picks vectors whose `A`-spans (under `h`) are independent and fill `kernel`.
fn ext_basis(h: &Matrix, degree: usize, kernel: &[Vector]) -> Vec<Vector> {
    let field = h.field();
    let n = h.rows();
    let mut span: Vec<Vector> = Vec::new();
    let mut basis = Vec::new();
    for v in kernel {
        let mut trial = span.clone();
        trial.push(v.clone());
        if Matrix::from_columns(field, n, &trial).rank() == span.len() {
            continue;
        }
        let mut power = v.clone();
        for j in 0..degree {
            if j > 0 {
                power = h.mul_vec(&power);
            }
            span.push(power.clone());
        }
        basis.push(v.clone());
    }
    basis
}

fn unitary_block(h: &Isometry, ext: ExtField, kernel: &[Vector]) -> Block {
    let space = h.space();
    let m = h.matrix();
    let herm = |v: &Vector, w: &Vector| trace_form_pairing(space, m, &ext, v, w);
    let mut pending = ext_basis(m, ext.degree(), kernel);
    let mut basis = Vec::new();
    let mut gram = Vec::new();
    while !pending.is_empty() {
        let idx = match pending.iter().position(|v| !herm(v, v).is_zero()) {
            Some(i) => i,
            None => {
                // Every candidate is isotropic: a sum with a paired partner is not.
                let (a, b) = (0..pending.len())
                    .flat_map(|a| (0..pending.len()).map(move |b| (a, b)))
                    .find(|&(a, b)| a != b && !herm(&pending[a], &pending[b]).is_zero())
                    .expect("Hermitian form is nondegenerate");
                let candidate = [ext.one(), ext.generator()]
                    .iter()
                    .map(|c| vec_add(&pending[a], &ext_act(m, c, &pending[b])))
                    .find(|v| !herm(v, v).is_zero())
                    .expect("1 and x span the extension over the fixed field");
                pending[a] = candidate;
                a
            }
        };
        let e = pending.remove(idx);
        let ee = herm(&e, &e);
        let ee_inv = ext.inv(&ee).expect("anisotropic");
        for w in pending.iter_mut() {
            let c = ext.mul(&herm(w, &e), &ee_inv);
            *w = vec_sub(w, &ext_act(m, &c, &e));
        }
        basis.push(e);
        gram.push(ee);
    }
    Block::Unitary { ext, basis, hermitian_gram: gram }
}

fn gl_block(h: &Isometry, ext: ExtField, kernel: &[Vector], dual_kernel: &[Vector]) -> Block {
    let space = h.space();
    let m = h.matrix();
    let x_basis = ext_basis(m, ext.degree(), kernel);
    let d = ext.degree();
    let x = ext.generator();
    let traces: Vec<Scalar> = (0..d).map(|j| ext.trace(&ext.pow(&x, j as i64).expect("power"))).collect();
    // Rows: pairings of h^j e_b with the dual kernel basis.
    let mut rows = Vec::new();
    for e in &x_basis {
        let mut power = e.clone();
        for j in 0..d {
            if j > 0 {
                power = m.mul_vec(&power);
            }
            rows.push(dual_kernel.iter().map(|y| space.frame_bilinear(&power, y)).collect::<Vec<_>>());
        }
    }
    let system = Matrix::from_rows(space.field(), rows);
    let xstar_basis = (0..x_basis.len())
        .map(|a| {
            let rhs: Vec<Scalar> = (0..x_basis.len())
                .flat_map(|b| traces.iter().map(move |t| if a == b { t.clone() } else { t.field().zero() }))
                .collect();
            let coeffs = system.solve(&rhs).expect("X and X* are paired nondegenerately");
            dual_kernel.iter().zip(&coeffs).fold(vec![space.field().zero(); space.dim()], |acc, (y, c)| {
                vec_add(&acc, &vec_scale(c, y))
            })
        })
        .collect();
    Block::GL { ext, x_basis, xstar_basis }
}

/// Base-field basis of a block: `h^j e` for GL/unitary generators and
/// `h^-j e*` for the dual generators.
fn block_span(h: &Isometry, h_inv: &Isometry, block: &Block) -> Vec<Vector> {
    let orbit = |m: &Matrix, vs: &[Vector], d: usize| -> Vec<Vector> {
        vs.iter()
            .flat_map(|v| {
                let mut out = Vec::with_capacity(d);
                let mut power = v.clone();
                for j in 0..d {
                    if j > 0 {
                        power = m.mul_vec(&power);
                    }
                    out.push(power.clone());
                }
                out
            })
            .collect()
    };
    match block {
        Block::GL { ext, x_basis, xstar_basis } => {
            let mut span = orbit(h.matrix(), x_basis, ext.degree());
            span.extend(orbit(h_inv.matrix(), xstar_basis, ext.degree()));
            span
        }
        Block::Unitary { ext, basis, .. } => orbit(h.matrix(), basis, ext.degree()),
        Block::Plus(b) | Block::Minus(b) => b.clone(),
    }
}

fn restricted_det(m: &Isometry, basis: &[Vector]) -> Scalar {
    let field = m.space().field();
    if basis.is_empty() {
        return field.one();
    }
    let b = Matrix::from_columns(field, m.space().dim(), basis);
    m.matrix().restrict(&b).expect("block is invariant").det()
}

/// `|GL_r(F_Q)|`.
pub fn gl_order(q: &BigUint, r: usize) -> BigUint {
    let qr = q.pow(r as u32);
    (0..r).fold(BigUint::one(), |acc, i| acc * (&qr - q.pow(i as u32)))
}

/// `|U_r|` for the unitary group over the quadratic extension of `F_Q0`.
pub fn unitary_order(q0: &BigUint, r: usize) -> BigUint {
    let mut order = q0.pow((r * r.saturating_sub(1) / 2) as u32);
    for i in 1..=r {
        let qi = q0.pow(i as u32);
        order *= if i % 2 == 0 { qi - 1u32 } else { qi + 1u32 };
    }
    order
}

/// `|O_m(F_q)|` with `split` selecting the plus type in even dimension.
pub fn orthogonal_group_order(q: &BigUint, m: usize, split: bool) -> BigUint {
    if m == 0 {
        return BigUint::one();
    }
    let l = m / 2;
    let product = |upto: usize| (1..=upto).fold(BigUint::one(), |acc, i| acc * (q.pow(2 * i as u32) - 1u32));
    if m % 2 == 1 {
        BigUint::from(2u32) * q.pow((l * l) as u32) * product(l)
    } else {
        let ql = q.pow(l as u32);
        let middle = if split { ql - 1u32 } else { ql + 1u32 };
        BigUint::from(2u32) * q.pow((l * (l - 1)) as u32) * middle * product(l - 1)
    }
}

fn orthogonal_order(space: &QuadSpace, basis: &[Vector]) -> Option<BigUint> {
    let Field::Prime(p) = space.field() else { return None };
    if basis.is_empty() {
        return Some(BigUint::one());
    }
    let field = space.field();
    let rows: Vec<Vec<Scalar>> =
        basis.iter().map(|v| basis.iter().map(|w| space.frame_bilinear(v, w)).collect()).collect();
    let sub = QuadSpace::new(Matrix::from_rows(field, rows)).expect("blocks are nondegenerate");
    Some(orthogonal_group_order(&BigUint::from(p), basis.len(), sub.discriminant().is_one()))
}

/// Anisotropic vector in the span of `basis`, if the span is nonzero and
/// nondegenerate: a basis vector, or else a sum of two paired ones.
pub fn anisotropic_in(space: &QuadSpace, basis: &[Vector]) -> Option<Vector> {
    basis.iter().find(|v| !space.frame_quadratic(v).is_zero()).cloned().or_else(|| {
        (0..basis.len())
            .flat_map(|a| (a + 1..basis.len()).map(move |b| (a, b)))
            .find(|&(a, b)| !space.frame_bilinear(&basis[a], &basis[b]).is_zero())
            .map(|(a, b)| vec_add(&basis[a], &basis[b]))
    })
}
