//! Points and subspaces of PG(n, q).
//!
//! Points are numbered in lexicographic order of their normalized coordinate
//! vectors (first nonzero coordinate equal to 1). Subspaces are kept in reduced
//! row-echelon form so that equality is syntactic.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg::{self, axpy, rref};

pub const DEFAULT_POINT_CAP: u64 = 10_000_000;

pub type PointIndex = u32;

const NO_POINT: u32 = u32::MAX;

pub struct ProjectiveSpace {
    field: Arc<Field>,
    n: usize,
    coords: Vec<Elem>,
    /// Packed coordinate vector (any nonzero scalar multiple) to point index.
    lookup: Vec<u32>,
}

impl fmt::Debug for ProjectiveSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PG({}, {})", self.n, self.field.order())
    }
}

pub fn point_count(n: usize, q: u64) -> u64 {
    (0..=n as u32).map(|i| q.pow(i)).sum()
}

impl ProjectiveSpace {
    pub fn new(field: Arc<Field>, n: usize) -> Result<Self> {
        Self::with_cap(field, n, DEFAULT_POINT_CAP)
    }

    pub fn with_cap(field: Arc<Field>, n: usize, cap: u64) -> Result<Self> {
        if n < 1 {
            return Err(Error::Usage(
                "projective dimension must be at least 1".into(),
            ));
        }
        let q = field.order() as u64;
        let count = point_count(n, q);
        if count > cap {
            return Err(Error::ScaleCap(format!(
                "PG({n}, {q}) has {count} points, cap is {cap}"
            )));
        }
        let d = n + 1;
        let e = field.degree() as usize;
        let total = 1usize << (e * d);
        let mask = (1usize << e) - 1;
        let mut coords = Vec::with_capacity(count as usize * d);
        for key in 1..total {
            let leading = (0..d)
                .map(|i| (key >> (e * (d - 1 - i))) & mask)
                .find(|&c| c != 0);
            if leading == Some(1) {
                coords.extend((0..d).map(|i| ((key >> (e * (d - 1 - i))) & mask) as Elem));
            }
        }
        debug_assert_eq!(coords.len(), count as usize * d);
        let mut space = ProjectiveSpace {
            field,
            n,
            coords,
            lookup: vec![NO_POINT; total],
        };
        let mut scaled = vec![0; d];
        for idx in 0..count as usize {
            for lambda in space.field.nonzero() {
                for (s, &c) in scaled.iter_mut().zip(space.point(idx as PointIndex)) {
                    *s = space.field.mul(lambda, c);
                }
                let key = space.pack(&scaled);
                space.lookup[key] = idx as u32;
            }
        }
        Ok(space)
    }

    fn pack(&self, v: &[Elem]) -> usize {
        let e = self.field.degree() as usize;
        v.iter().fold(0usize, |acc, &c| (acc << e) | c as usize)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    /// Projective dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Vector dimension `n + 1`.
    pub fn dim(&self) -> usize {
        self.n + 1
    }

    pub fn num_points(&self) -> usize {
        self.coords.len() / self.dim()
    }

    pub fn point(&self, idx: PointIndex) -> &[Elem] {
        let d = self.dim();
        &self.coords[idx as usize * d..(idx as usize + 1) * d]
    }

    pub fn points(&self) -> impl Iterator<Item = (PointIndex, &[Elem])> {
        self.coords
            .chunks(self.dim())
            .enumerate()
            .map(|(i, c)| (i as PointIndex, c))
    }

    /// Index of the point spanned by `v`; `None` for the zero vector or
    /// out-of-range coordinates.
    pub fn index_of(&self, v: &[Elem]) -> Option<PointIndex> {
        if v.len() != self.dim() || v.iter().any(|&c| c as u32 >= self.q()) {
            return None;
        }
        match self.lookup[self.pack(v)] {
            NO_POINT => None,
            idx => Some(idx),
        }
    }

    /// Scales `v` so its first nonzero coordinate is 1.
    pub fn normalize(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        let lead = *v.iter().find(|&&c| c != 0)?;
        let inv = self.field.inv(lead);
        Some(v.iter().map(|&c| self.field.mul(c, inv)).collect())
    }

    pub fn span(&self, points: &[PointIndex]) -> Subspace {
        let vectors: Vec<Vec<Elem>> = points.iter().map(|&p| self.point(p).to_vec()).collect();
        Subspace::span(&self.field, self.dim(), &vectors)
    }

    /// All lines of the space, each as an ascending list of point indices.
    pub fn all_lines(&self) -> Vec<Vec<PointIndex>> {
        let mut lines = Vec::new();
        let count = self.num_points() as PointIndex;
        for a in 0..count {
            for b in a + 1..count {
                let line = self.span(&[a, b]).points(self);
                if line[0] == a && line[1] == b {
                    lines.push(line);
                }
            }
        }
        lines
    }
}

/// A subspace of the vector space GF(q)^ambient, stored by its reduced
/// row-echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Elem>>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(pdim {}, {:?})",
            self.projective_dimension(),
            self.basis
        )
    }
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn whole(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: linalg::Matrix::identity(ambient).to_rows(),
        }
    }

    pub fn span(field: &Field, ambient: usize, vectors: &[Vec<Elem>]) -> Self {
        assert!(
            vectors.iter().all(|v| v.len() == ambient),
            "vector outside the ambient space"
        );
        let mut basis = vectors.to_vec();
        rref(field, &mut basis);
        Subspace { ambient, basis }
    }

    /// The common zero set of the given linear equations (coefficient rows).
    pub fn from_equations(field: &Field, ambient: usize, equations: &[Vec<Elem>]) -> Self {
        Subspace {
            ambient,
            basis: linalg::nullspace(field, equations, ambient),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<Elem>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// `rank - 1`; the empty subspace has projective dimension -1.
    pub fn projective_dimension(&self) -> isize {
        self.basis.len() as isize - 1
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Usage(format!(
                "subspaces of different ambient dimensions {} and {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn join(&self, field: &Field, other: &Subspace) -> Result<Self> {
        self.check_ambient(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Ok(Subspace::span(field, self.ambient, &rows))
    }

    /// Orthogonal complement under the standard dot product (the dual subspace).
    pub fn annihilator(&self, field: &Field) -> Self {
        Subspace::from_equations(field, self.ambient, &self.basis)
    }

    pub fn meet(&self, field: &Field, other: &Subspace) -> Result<Self> {
        self.check_ambient(other)?;
        let dual = self
            .annihilator(field)
            .join(field, &other.annihilator(field))?;
        Ok(dual.annihilator(field))
    }

    /// The residue of `v` after reduction against the echelon basis.
    fn reduce(&self, field: &Field, v: &[Elem]) -> Vec<Elem> {
        let mut r = v.to_vec();
        for row in &self.basis {
            let pivot = row
                .iter()
                .position(|&c| c != 0)
                .expect("echelon rows are nonzero");
            let factor = r[pivot];
            axpy(field, &mut r, factor, row);
        }
        r
    }

    pub fn contains(&self, field: &Field, v: &[Elem]) -> bool {
        v.len() == self.ambient && self.reduce(field, v).iter().all(|&c| c == 0)
    }

    pub fn contains_subspace(&self, field: &Field, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(field, v))
    }

    /// Indices of the points of this subspace, ascending.
    pub fn points(&self, space: &ProjectiveSpace) -> Vec<PointIndex> {
        assert_eq!(space.dim(), self.ambient, "subspace of a different space");
        span_points(space, &self.basis)
    }

    pub fn num_points(&self, q: u64) -> u64 {
        if self.basis.is_empty() {
            0
        } else {
            point_count(self.basis.len() - 1, q)
        }
    }
}

/// Indices of all points spanned by `vectors` (assumed linearly independent),
/// ascending.
pub fn span_points(space: &ProjectiveSpace, vectors: &[Vec<Elem>]) -> Vec<PointIndex> {
    let k = vectors.len();
    if k == 0 {
        return Vec::new();
    }
    let field = space.field();
    let q = field.order() as usize;
    let d = space.dim();
    let mut out = Vec::with_capacity(point_count(k - 1, q as u64) as usize);
    let mut coeffs = vec![0usize; k];
    let mut v = vec![0; d];
    'outer: loop {
        if coeffs.iter().find(|&&c| c != 0) == Some(&1) {
            v.iter_mut().for_each(|x| *x = 0);
            for (c, row) in coeffs.iter().zip(vectors) {
                axpy(field, &mut v, *c as Elem, row);
            }
            out.push(space.index_of(&v).expect("independent vectors"));
        }
        for c in coeffs.iter_mut().rev() {
            *c += 1;
            if *c < q {
                continue 'outer;
            }
            *c = 0;
        }
        break;
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pg(n: usize, q: u32) -> ProjectiveSpace {
        ProjectiveSpace::new(Field::of_order(q).unwrap(), n).unwrap()
    }

    #[test]
    fn point_counts() {
        assert_eq!(pg(5, 2).num_points(), 63);
        assert_eq!(pg(1, 2).num_points(), 3);
        assert_eq!(pg(5, 4).num_points(), 1365);
    }

    #[test]
    fn enumeration_is_lexicographic_and_normalized() {
        let s = pg(1, 2);
        let pts: Vec<Vec<Elem>> = s.points().map(|(_, c)| c.to_vec()).collect();
        assert_eq!(pts, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        let s = pg(3, 4);
        let all: Vec<&[Elem]> = s.points().map(|(_, c)| c).collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(|c| c.iter().find(|&&x| x != 0) == Some(&1)));
    }

    #[test]
    fn round_trip_indices() {
        for (n, q) in [(5, 2), (5, 4), (3, 4), (2, 8)] {
            let s = pg(n, q);
            for (i, c) in s.points() {
                assert_eq!(s.index_of(c), Some(i));
                let scaled: Vec<Elem> = c
                    .iter()
                    .map(|&x| s.field().mul(x, (q - 1) as Elem))
                    .collect();
                assert_eq!(s.index_of(&scaled), Some(i));
            }
            assert_eq!(s.index_of(&vec![0; n + 1]), None);
        }
    }

    #[test]
    fn point_cap() {
        let f = Field::of_order(4).unwrap();
        assert!(matches!(
            ProjectiveSpace::with_cap(f, 5, 100),
            Err(Error::ScaleCap(_))
        ));
    }

    #[test]
    fn lines_have_q_plus_one_points() {
        for q in [2, 4] {
            let s = pg(3, q);
            for a in [0, 5, 12] {
                for b in [1, 9, 14] {
                    assert_eq!(s.span(&[a, b]).points(&s).len(), q as usize + 1);
                }
            }
        }
        assert_eq!(pg(3, 2).all_lines().len(), 35);
    }

    #[test]
    fn meet_and_join_dimensions() {
        let s = pg(5, 2);
        let f = s.field().clone();
        let h1 = Subspace::from_equations(&f, 6, &[vec![1, 0, 0, 0, 0, 0]]);
        let h2 = Subspace::from_equations(&f, 6, &[vec![0, 1, 1, 0, 0, 0]]);
        let m = h1.meet(&f, &h2).unwrap();
        assert_eq!(m.projective_dimension(), 3);
        let j = h1.join(&f, &h2).unwrap();
        assert_eq!(
            j.projective_dimension() + m.projective_dimension(),
            h1.projective_dimension() + h2.projective_dimension()
        );
        assert!(h1.meet(&f, &Subspace::zero(5)).is_err());
    }
}
