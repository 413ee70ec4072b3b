//! Alternating bilinear, quadratic and Hermitian forms in characteristic 2.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Elem, ExtensionPair, Field};
use crate::linalg::{self, Matrix};
use crate::projgeom::{PointIndex, ProjectiveSpace, Subspace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearForm {
    gram: Matrix,
}

impl BilinearForm {
    pub fn new(gram: Matrix) -> Result<Self> {
        if gram.rows() != gram.cols() {
            return Err(Error::Usage("Gram matrix must be square".into()));
        }
        Ok(BilinearForm { gram })
    }

    /// The anti-diagonal alternating form, the reference symplectic form.
    pub fn standard(dim: usize) -> Self {
        BilinearForm {
            gram: Matrix::anti_identity(dim),
        }
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn eval(&self, field: &Field, u: &[Elem], v: &[Elem]) -> Elem {
        self.gram.bilinear(field, u, v)
    }

    /// Row vector `uᵗ G`, so that `B(u, v) = dot(row, v)`.
    pub fn covector(&self, field: &Field, u: &[Elem]) -> Vec<Elem> {
        self.gram.transpose().apply(field, u)
    }

    /// Symmetric with zero diagonal.
    pub fn is_alternating(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            self.gram[(i, i)] == 0 && (0..n).all(|j| self.gram[(i, j)] == self.gram[(j, i)])
        })
    }

    pub fn radical(&self, field: &Field) -> Subspace {
        Subspace::from_equations(field, self.dim(), &self.gram.transpose().to_rows())
    }

    pub fn is_nondegenerate(&self, field: &Field) -> bool {
        self.gram.rank(field) == self.dim()
    }

    fn require_nondegenerate(&self, field: &Field) -> Result<()> {
        let radical_dim = self.radical(field).rank();
        if radical_dim > 0 {
            return Err(Error::Degenerate { radical_dim });
        }
        Ok(())
    }

    /// `{v : B(s, v) = 0 for all s in S}`.
    pub fn perp(&self, field: &Field, s: &Subspace) -> Result<Subspace> {
        if s.ambient() != self.dim() {
            return Err(Error::Usage(
                "subspace and form live in different spaces".into(),
            ));
        }
        self.require_nondegenerate(field)?;
        Ok(self.perp_unchecked(field, s))
    }

    pub(crate) fn perp_unchecked(&self, field: &Field, s: &Subspace) -> Subspace {
        let rows: Vec<Vec<Elem>> = s.basis().iter().map(|b| self.covector(field, b)).collect();
        Subspace::from_equations(field, self.dim(), &rows)
    }

    pub fn is_totally_isotropic(&self, field: &Field, s: &Subspace) -> bool {
        let b = s.basis();
        (0..b.len()).all(|i| (i..b.len()).all(|j| self.eval(field, &b[i], &b[j]) == 0))
    }

    /// The matrix of the form on `basis` coordinates.
    pub fn restrict(&self, field: &Field, basis: &[Vec<Elem>]) -> BilinearForm {
        let k = basis.len();
        let mut g = Matrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                g[(i, j)] = self.eval(field, &basis[i], &basis[j]);
            }
        }
        BilinearForm { gram: g }
    }
}

/// `Q(v) = Σ_{i ≤ j} c_ij v_i v_j`, upper-triangular storage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    coeffs: Matrix,
}

impl QuadraticForm {
    /// Folds the strictly lower triangle into the upper one.
    pub fn from_matrix(m: &Matrix) -> Self {
        let n = m.rows();
        assert_eq!(n, m.cols(), "coefficient matrix must be square");
        let mut c = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if i <= j {
                    c[(i, j)] ^= m[(i, j)];
                } else {
                    c[(j, i)] ^= m[(i, j)];
                }
            }
        }
        QuadraticForm { coeffs: c }
    }

    /// From `(i, j, c)` terms `c · X_i X_j`, indices 0-based.
    pub fn from_terms(dim: usize, terms: &[(usize, usize, Elem)]) -> Self {
        let mut m = Matrix::zeros(dim, dim);
        for &(i, j, c) in terms {
            m[(i, j)] ^= c;
        }
        Self::from_matrix(&m)
    }

    pub fn coeffs(&self) -> &Matrix {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.rows()
    }

    pub fn eval(&self, field: &Field, v: &[Elem]) -> Elem {
        let n = self.dim();
        let mut acc = 0;
        for i in 0..n {
            if v[i] == 0 {
                continue;
            }
            let mut row = 0;
            for (j, &vj) in v.iter().enumerate().skip(i) {
                row ^= field.mul(self.coeffs[(i, j)], vj);
            }
            acc ^= field.mul(v[i], row);
        }
        acc
    }

    /// `B(u, v) = Q(u + v) + Q(u) + Q(v)`.
    pub fn polar(&self) -> BilinearForm {
        let n = self.dim();
        let mut g = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                g[(i, j)] = self.coeffs[(i, j)];
                g[(j, i)] = self.coeffs[(i, j)];
            }
        }
        BilinearForm { gram: g }
    }

    /// The form in the coordinates of `basis`.
    pub fn restrict(&self, field: &Field, basis: &[Vec<Elem>]) -> QuadraticForm {
        let k = basis.len();
        let polar = self.polar();
        let mut c = Matrix::zeros(k, k);
        for i in 0..k {
            c[(i, i)] = self.eval(field, &basis[i]);
            for j in i + 1..k {
                c[(i, j)] = polar.eval(field, &basis[i], &basis[j]);
            }
        }
        QuadraticForm { coeffs: c }
    }

    pub fn zero_points(&self, space: &ProjectiveSpace) -> Vec<PointIndex> {
        let field = space.field();
        space
            .points()
            .filter(|(_, c)| self.eval(field, c) == 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// `{v in rad(B) : Q(v) = 0}`, a subspace because Q is a squared linear
    /// functional on the radical of its polar form.
    pub fn singular_radical(&self, field: &Field) -> Subspace {
        let rad = self.polar().radical(field);
        let roots: Vec<Elem> = rad
            .basis()
            .iter()
            .map(|r| field.sqrt(self.eval(field, r)))
            .collect();
        if roots.iter().all(|&s| s == 0) {
            return rad;
        }
        // Kernel of a ↦ Σ a_i s_i inside rad, pushed back to the ambient space.
        let coords = linalg::nullspace(field, &[roots], rad.rank());
        let vectors: Vec<Vec<Elem>> = coords
            .iter()
            .map(|a| {
                let mut v = vec![0; self.dim()];
                for (ai, r) in a.iter().zip(rad.basis()) {
                    linalg::axpy(field, &mut v, *ai, r);
                }
                v
            })
            .collect();
        Subspace::span(field, self.dim(), &vectors)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadricKind {
    Elliptic,
    Hyperbolic,
    Parabolic,
    /// The base of the cone is the empty space (the form vanishes identically).
    Null,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadricClass {
    /// Type of the non-degenerate base after the vertex is split off.
    pub kind: QuadricKind,
    /// Projective dimension of the vertex; -1 for a non-degenerate quadric.
    pub vertex_dimension: isize,
    pub points: u64,
}

impl QuadricClass {
    pub fn is_degenerate(&self) -> bool {
        self.vertex_dimension >= 0
    }
}

/// Number of projective points of a non-degenerate quadric of the given type
/// in a space of vector dimension `dim`.
pub fn nondegenerate_point_count(kind: QuadricKind, dim: usize, q: u64) -> Option<u64> {
    let pc = |n: i64| -> u64 {
        if n < 0 {
            0
        } else {
            (0..=n as u32).map(|i| q.pow(i)).sum()
        }
    };
    match (kind, dim % 2) {
        (QuadricKind::Null, _) => (dim == 0).then_some(0),
        (QuadricKind::Parabolic, 1) => Some(pc(dim as i64 - 2)),
        (QuadricKind::Hyperbolic, 0) if dim >= 2 => {
            let m = (dim / 2) as u32;
            Some((q.pow(m) - 1) * (q.pow(m - 1) + 1) / (q - 1))
        }
        (QuadricKind::Elliptic, 0) if dim >= 2 => {
            let m = (dim / 2) as u32;
            Some((q.pow(m) + 1) * (q.pow(m - 1) - 1) / (q - 1))
        }
        _ => None,
    }
}

/// Classifies by splitting off the singular radical and counting the zeros of
/// the base form.
pub fn classify_quadric(field: &Field, form: &QuadraticForm) -> Result<QuadricClass> {
    let dim = form.dim();
    let q = field.order() as u64;
    let vertex = form.singular_radical(field);
    let k = vertex.rank();
    let mut complement: Vec<Vec<Elem>> = Vec::new();
    let mut current = vertex.clone();
    for i in 0..dim {
        let mut e = vec![0; dim];
        e[i] = 1;
        if !current.contains(field, &e) {
            current = current.join(field, &Subspace::span(field, dim, &[e.clone()]))?;
            complement.push(e);
        }
    }
    let base = form.restrict(field, &complement);
    let b = complement.len();
    let mut zeros: u64 = 0;
    let mut v = vec![0 as Elem; b];
    if b > 0 {
        'outer: loop {
            if v.iter().any(|&c| c != 0) && base.eval(field, &v) == 0 {
                zeros += 1;
            }
            for c in v.iter_mut() {
                *c += 1;
                if (*c as u64) < q {
                    continue 'outer;
                }
                *c = 0;
            }
            break;
        }
    }
    let base_points = zeros / (q - 1);
    let kind = if b == 0 {
        QuadricKind::Null
    } else if b % 2 == 1 {
        QuadricKind::Parabolic
    } else if Some(base_points) == nondegenerate_point_count(QuadricKind::Hyperbolic, b, q) {
        QuadricKind::Hyperbolic
    } else {
        QuadricKind::Elliptic
    };
    if nondegenerate_point_count(kind, b, q) != Some(base_points) {
        return Err(Error::Internal(format!(
            "base of vector dimension {b} has {base_points} points, matching no quadric type"
        )));
    }
    let vertex_points = if k == 0 {
        0
    } else {
        (q.pow(k as u32) - 1) / (q - 1)
    };
    Ok(QuadricClass {
        kind,
        vertex_dimension: k as isize - 1,
        points: q.pow(k as u32) * base_points + vertex_points,
    })
}

/// The nucleus of a parabolic quadric: the radical point of the polar form.
pub fn nucleus(field: &Field, form: &QuadraticForm) -> Result<Vec<Elem>> {
    let class = classify_quadric(field, form)?;
    if class.kind != QuadricKind::Parabolic || class.is_degenerate() {
        return Err(Error::Usage(format!(
            "nucleus requested for a non-parabolic quadric {class:?}"
        )));
    }
    let rad = form.polar().radical(field);
    if rad.rank() != 1 {
        return Err(Error::Internal(
            "parabolic quadric with radical of rank != 1".into(),
        ));
    }
    let v = rad.basis()[0].clone();
    debug_assert_ne!(form.eval(field, &v), 0);
    Ok(v)
}

/// Returns `T` with `Tᵗ · J_std · T = gram(B)`, where `J_std` is the
/// anti-diagonal form. `x ↦ T x` carries the polar space of `B` onto the
/// standard one.
pub fn symplectic_basis(field: &Field, form: &BilinearForm) -> Result<Matrix> {
    if !form.is_alternating() {
        return Err(Error::Usage("form is not alternating".into()));
    }
    form.require_nondegenerate(field)?;
    let dim = form.dim();
    let mut remaining = Matrix::identity(dim).to_rows();
    let mut pairs: Vec<(Vec<Elem>, Vec<Elem>)> = Vec::new();
    while let Some(e) = remaining.first().cloned() {
        let (fi, value) = remaining
            .iter()
            .enumerate()
            .map(|(i, f)| (i, form.eval(field, &e, f)))
            .find(|&(_, b)| b != 0)
            .ok_or(Error::Degenerate { radical_dim: 1 })?;
        let mut f = remaining[fi].clone();
        linalg::scale(field, &mut f, field.inv(value));
        let mut next: Vec<Vec<Elem>> = remaining
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != 0 && i != fi)
            .map(|(_, w)| {
                let mut w = w.clone();
                let bwf = form.eval(field, &w, &f);
                let bwe = form.eval(field, &w, &e);
                linalg::axpy(field, &mut w, bwf, &e);
                linalg::axpy(field, &mut w, bwe, &f);
                w
            })
            .collect();
        linalg::rref(field, &mut next);
        pairs.push((e, f));
        remaining = next;
    }
    let m = pairs.len();
    let mut columns = vec![Vec::new(); 2 * m];
    for (i, (e, f)) in pairs.into_iter().enumerate() {
        columns[i] = e;
        columns[2 * m - 1 - i] = f;
    }
    let p = Matrix::from_rows(&columns).transpose();
    let t = p.inverse(field)?;
    debug_assert_eq!(
        t.transpose()
            .mul(field, &Matrix::anti_identity(dim))
            .mul(field, &t),
        *form.gram()
    );
    Ok(t)
}

/// `h(u, v) = Σ u_i G_ij v_j^q` over GF(q²).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermitianForm {
    gram: Matrix,
}

impl HermitianForm {
    pub fn new(pair: &ExtensionPair, gram: Matrix) -> Result<Self> {
        let n = gram.rows();
        if n != gram.cols() {
            return Err(Error::Usage("Gram matrix must be square".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if gram[(j, i)] != pair.conj(gram[(i, j)]) {
                    return Err(Error::Construction(format!(
                        "Gram matrix is not Hermitian at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(HermitianForm { gram })
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn eval(&self, pair: &ExtensionPair, u: &[Elem], v: &[Elem]) -> Elem {
        let vq: Vec<Elem> = v.iter().map(|&x| pair.conj(x)).collect();
        self.gram.bilinear(&pair.ext, u, &vq)
    }
}

/// The GF(q)-bilinear form that `h` induces on a Baer subgeometry with the
/// given GF(q)-basis (vectors over GF(q²)).
pub fn induced_symplectic_on_sigma(
    pair: &ExtensionPair,
    h: &HermitianForm,
    sigma_basis: &[Vec<Elem>],
) -> Result<BilinearForm> {
    for (i, b) in sigma_basis.iter().enumerate() {
        if h.eval(pair, b, b) != 0 {
            return Err(Error::Construction(format!(
                "basis vector {i} is not on the Hermitian variety"
            )));
        }
    }
    let k = sigma_basis.len();
    let mut g = Matrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            let value = h.eval(pair, &sigma_basis[i], &sigma_basis[j]);
            g[(i, j)] = pair.project(value).ok_or_else(|| {
                Error::Construction(format!(
                    "induced Gram entry ({i}, {j}) = {value} is outside GF(q)"
                ))
            })?;
        }
    }
    let form = BilinearForm::new(g)?;
    if !form.is_alternating() {
        return Err(Error::Construction(
            "induced form is not alternating".into(),
        ));
    }
    if !form.is_nondegenerate(&pair.base) {
        return Err(Error::Construction("induced form is degenerate".into()));
    }
    Ok(form)
}

/// Serialized form: a kind tag plus the integer-encoded matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormRecord {
    pub kind: FormKind,
    pub matrix: Vec<Vec<Elem>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormKind {
    Alternating,
    Quadratic,
    Hermitian,
}

impl From<&BilinearForm> for FormRecord {
    fn from(f: &BilinearForm) -> Self {
        FormRecord {
            kind: FormKind::Alternating,
            matrix: f.gram.to_rows(),
        }
    }
}

impl From<&QuadraticForm> for FormRecord {
    fn from(f: &QuadraticForm) -> Self {
        FormRecord {
            kind: FormKind::Quadratic,
            matrix: f.coeffs.to_rows(),
        }
    }
}

impl From<&HermitianForm> for FormRecord {
    fn from(f: &HermitianForm) -> Self {
        FormRecord {
            kind: FormKind::Hermitian,
            matrix: f.gram.to_rows(),
        }
    }
}

impl FormRecord {
    pub fn to_bilinear(&self) -> Result<BilinearForm> {
        if self.kind != FormKind::Alternating {
            return Err(Error::Usage(format!(
                "expected an alternating form, found {:?}",
                self.kind
            )));
        }
        BilinearForm::new(Matrix::from_rows(&self.matrix))
    }
}
