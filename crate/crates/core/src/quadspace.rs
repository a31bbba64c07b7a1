//! Nondegenerate quadratic spaces, isometries, reflections and the
//! Cartan-Dieudonne factorization.
//!
//! A space remembers the Gram matrix it was built from together with an
//! orthogonal basis. Isometries and vectors handled by the rest of the crate
//! are expressed in that orthogonal basis (the *frame*), where the form is
//! `sum diag_i x_i y_i`; `to_original`/`from_original` convert to and from
//! the coordinates of the input Gram matrix.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalars::matrix::{dot, unit_vector, vec_add, vec_scale, vec_sub};
use crate::scalars::{Field, Matrix, Scalar, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadSpace {
    field: Field,
    gram: Matrix,
    basis: Matrix,
    basis_inv: Matrix,
    diag: Vec<Scalar>,
}

impl QuadSpace {
    /// Diagonalizes a symmetric Gram matrix. Each diagonal entry is scaled to
    /// its square-class representative.
    pub fn new(gram: Matrix) -> Result<QuadSpace> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch { expected: gram.rows(), got: gram.cols() });
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if gram.det().is_zero() {
            return Err(Error::DegenerateForm);
        }
        let field = gram.field();
        let n = gram.rows();
        let form = |v: &[Scalar], w: &[Scalar]| dot(v, &gram.mul_vec(w));
        let mut pending: Vec<Vector> = (0..n).map(|i| unit_vector(field, n, i)).collect();
        let mut chosen = Vec::with_capacity(n);
        let mut diag = Vec::with_capacity(n);
        while !pending.is_empty() {
            let pivot = match pending.iter().position(|v| !form(v, v).is_zero()) {
                Some(i) => pending.remove(i),
                None => {
                    let (i, j) = (0..pending.len())
                        .flat_map(|i| (i + 1..pending.len()).map(move |j| (i, j)))
                        .find(|&(i, j)| !form(&pending[i], &pending[j]).is_zero())
                        .ok_or(Error::DegenerateForm)?;
                    let sum = vec_add(&pending[i], &pending[j]);
                    pending.remove(i);
                    sum
                }
            };
            let value = form(&pivot, &pivot);
            let rep = value.square_class_rep();
            let root = (&value / &rep).sqrt().expect("ratio to the class representative is a square");
            let pivot = vec_scale(&root.inv().expect("nonzero"), &pivot);
            for v in pending.iter_mut() {
                let c = &form(v, &pivot) / &rep;
                *v = vec_sub(v, &vec_scale(&c, &pivot));
            }
            chosen.push(pivot);
            diag.push(rep);
        }
        let basis = Matrix::from_columns(field, n, &chosen);
        let basis_inv = basis.inverse().expect("orthogonal basis is a basis");
        Ok(QuadSpace { field, gram, basis, basis_inv, diag })
    }

    /// The space with Gram matrix `diag(entries)`.
    pub fn diagonal(field: Field, entries: &[i64]) -> Result<QuadSpace> {
        let values: Vec<Scalar> = entries.iter().map(|&e| field.from_i64(e)).collect();
        QuadSpace::new(Matrix::diagonal(field, &values))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// `k = floor((n + 1) / 2)`.
    pub fn half_dim(&self) -> usize {
        self.dim().div_ceil(2)
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    /// Columns are the orthogonal basis in original coordinates.
    pub fn ortho_basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn diag(&self) -> &[Scalar] {
        &self.diag
    }

    fn check_len(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: v.len() });
        }
        Ok(())
    }

    /// `v^T G w` in original coordinates.
    pub fn bilinear(&self, v: &[Scalar], w: &[Scalar]) -> Result<Scalar> {
        self.check_len(v)?;
        self.check_len(w)?;
        Ok(dot(v, &self.gram.mul_vec(w)))
    }

    pub fn quadratic(&self, v: &[Scalar]) -> Result<Scalar> {
        self.bilinear(v, v)
    }

    /// The form in frame coordinates.
    pub fn frame_bilinear(&self, v: &[Scalar], w: &[Scalar]) -> Scalar {
        assert_eq!(v.len(), self.dim());
        assert_eq!(w.len(), self.dim());
        let mut acc = self.field.zero();
        for ((a, b), d) in v.iter().zip(w).zip(&self.diag) {
            if !a.is_zero() && !b.is_zero() {
                acc += &(&(a * b) * d);
            }
        }
        acc
    }

    pub fn frame_quadratic(&self, v: &[Scalar]) -> Scalar {
        self.frame_bilinear(v, v)
    }

    pub fn to_frame(&self, v: &[Scalar]) -> Result<Vector> {
        self.check_len(v)?;
        Ok(self.basis_inv.mul_vec(v))
    }

    pub fn to_original(&self, v: &[Scalar]) -> Vector {
        self.basis.mul_vec(v)
    }

    /// Square-class representative of `(-1)^(n(n-1)/2) det`.
    pub fn discriminant(&self) -> Scalar {
        let n = self.dim();
        let sign = if (n * n.saturating_sub(1) / 2) % 2 == 0 { 1 } else { -1 };
        self.diag.iter().fold(self.field.from_i64(sign), |acc, d| &acc * d).square_class_rep()
    }

    /// The frame matrix `diag(q(e_i))`.
    pub fn frame_gram(&self) -> Matrix {
        Matrix::diagonal(self.field, &self.diag)
    }

    /// Orthogonal subspace spanned by the first `m` frame vectors, as a space of its own.
    pub fn leading_subspace(&self, m: usize) -> QuadSpace {
        QuadSpace::new(Matrix::diagonal(self.field, &self.diag[..m])).expect("nondegenerate")
    }
}

impl fmt::Display for QuadSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: Vec<String> = self.diag.iter().map(Scalar::to_string).collect();
        write!(f, "<{}> over {}", d.join(", "), self.field)
    }
}

/// An isometry of a [`QuadSpace`], stored in frame coordinates.
#[derive(Debug, Clone)]
pub struct Isometry {
    space: Arc<QuadSpace>,
    matrix: Matrix,
}

impl PartialEq for Isometry {
    fn eq(&self, other: &Isometry) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for Isometry {}

impl Hash for Isometry {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.matrix.hash(state);
    }
}

impl Isometry {
    /// Validates a frame-coordinate matrix.
    pub fn new(space: &Arc<QuadSpace>, matrix: Matrix) -> Result<Isometry> {
        let n = space.dim();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, got: matrix.rows() });
        }
        let d = space.frame_gram();
        if matrix.transpose().mul(&d).mul(&matrix) != d {
            return Err(Error::NotIsometry);
        }
        Ok(Isometry { space: space.clone(), matrix })
    }

    pub(crate) fn new_unchecked(space: &Arc<QuadSpace>, matrix: Matrix) -> Isometry {
        debug_assert!(Isometry::new(space, matrix.clone()).is_ok());
        Isometry { space: space.clone(), matrix }
    }

    /// Validates a matrix given in the coordinates of the original Gram matrix.
    pub fn from_original(space: &Arc<QuadSpace>, matrix: &Matrix) -> Result<Isometry> {
        let n = space.dim();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, got: matrix.rows() });
        }
        Isometry::new(space, space.basis_inv.mul(matrix).mul(&space.basis))
    }

    pub fn to_original(&self) -> Matrix {
        self.space.basis.mul(&self.matrix).mul(&self.space.basis_inv)
    }

    pub fn identity(space: &Arc<QuadSpace>) -> Isometry {
        Isometry { space: space.clone(), matrix: Matrix::identity(space.field(), space.dim()) }
    }

    pub fn minus_identity(space: &Arc<QuadSpace>) -> Isometry {
        let m = Matrix::identity(space.field(), space.dim()).scale(&space.field().from_i64(-1));
        Isometry { space: space.clone(), matrix: m }
    }

    /// Diagonal isometry with entries `±1`.
    pub fn signs(space: &Arc<QuadSpace>, signs: &[i64]) -> Result<Isometry> {
        let field = space.field();
        let entries: Vec<Scalar> = signs.iter().map(|&s| field.from_i64(s)).collect();
        Isometry::new(space, Matrix::diagonal(field, &entries))
    }

    pub fn space(&self) -> &Arc<QuadSpace> {
        &self.space
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry { space: self.space.clone(), matrix: self.matrix.mul(&other.matrix) }
    }

    /// `D^-1 M^T D`.
    pub fn inverse(&self) -> Isometry {
        let field = self.space.field();
        let n = self.space.dim();
        let mut inv = Matrix::zeros(field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = &(&self.matrix[(j, i)] * &self.space.diag[j]) / &self.space.diag[i];
            }
        }
        Isometry { space: self.space.clone(), matrix: inv }
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        self.matrix.mul_vec(v)
    }

    pub fn det(&self) -> Scalar {
        self.matrix.det()
    }

    /// `+1` or `-1`.
    pub fn det_sign(&self) -> i8 {
        self.det().as_sign().expect("isometries have determinant +-1")
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }
}

impl fmt::Display for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matrix)
    }
}

/// The reflection `w -> w - 2<w,v>/q(v) v` for a frame vector `v`.
pub fn reflect(space: &Arc<QuadSpace>, v: &[Scalar]) -> Result<Isometry> {
    space.check_len(v)?;
    let qv = space.frame_quadratic(v);
    if qv.is_zero() {
        return Err(Error::IsotropicVector);
    }
    let field = space.field();
    let n = space.dim();
    let c = &field.from_i64(2) / &qv;
    let mut m = Matrix::identity(field, n);
    for i in 0..n {
        if v[i].is_zero() {
            continue;
        }
        let ci = &c * &v[i];
        for j in 0..n {
            if !v[j].is_zero() {
                let t = &(&ci * &v[j]) * &space.diag[j];
                m[(i, j)] -= &t;
            }
        }
    }
    Ok(Isometry { space: space.clone(), matrix: m })
}

/// Anisotropic frame vectors `v_1, ..., v_l` with `l <= n` and
/// `r_{v_1} ... r_{v_l} = m`.
pub fn cartan_dieudonne(m: &Isometry) -> Vec<Vector> {
    let space = m.space().clone();
    let field = space.field();
    let n = space.dim();
    let id = Matrix::identity(field, n);
    let mut vectors = Vec::new();
    let mut current = m.clone();
    while !current.is_identity() {
        let moved = current.matrix.sub(&id);
        let images = moved.columns();
        let step = images
            .iter()
            .find(|w| !space.frame_quadratic(w).is_zero())
            .cloned()
            .or_else(|| {
                (0..n)
                    .flat_map(|j| (j + 1..n).map(move |k| (j, k)))
                    .find(|&(j, k)| !space.frame_bilinear(&images[j], &images[k]).is_zero())
                    .map(|(j, k)| vec_add(&images[j], &images[k]))
            });
        // A totally isotropic image of m - 1 forces det m = 1; composing with any
        // basis reflection flips the determinant and so leaves that locus.
        let w = step.unwrap_or_else(|| unit_vector(field, n, 0));
        let w = projective_normal(&w);
        let r = reflect(&space, &w).expect("chosen vector is anisotropic");
        current = r.compose(&current);
        vectors.push(w);
    }
    vectors
}

/// Scales a nonzero vector so that its first nonzero coordinate is 1.
pub fn projective_normal(v: &[Scalar]) -> Vector {
    let lead = v.iter().find(|c| !c.is_zero()).expect("nonzero vector");
    vec_scale(&lead.inv().expect("nonzero"), v)
}

/// Product `r_{v_1} ... r_{v_l}`.
pub fn reflection_product(space: &Arc<QuadSpace>, vectors: &[Vector]) -> Result<Isometry> {
    vectors
        .iter()
        .try_fold(Isometry::identity(space), |acc, v| Ok(acc.compose(&reflect(space, v)?)))
}
