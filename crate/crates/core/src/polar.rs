//! Symplectic polar spaces: totally isotropic subspaces, generators and the
//! point/generator incidence structure.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::BilinearForm;
use crate::gf::Elem;
use crate::linalg::{axpy, dot};
use crate::projgeom::{span_points, PointIndex, ProjectiveSpace, Subspace};

/// Every subspace of vector dimension `k` spanned by pairwise orthogonal
/// points accepted by `allowed`, orthogonality taken with respect to every
/// form in `forms`. Each subspace is returned once, as its ascending point
/// list, and the list of subspaces is sorted.
///
/// `allowed` is only evaluated on spanning points, so it must hold on the
/// whole span of any pairwise orthogonal allowed set (true for "all points"
/// and for singular points of a quadric whose polar form is in `forms`).
pub fn isotropic_subspaces(
    space: &ProjectiveSpace,
    forms: &[&BilinearForm],
    allowed: &dyn Fn(PointIndex) -> bool,
    k: usize,
) -> Vec<Vec<PointIndex>> {
    let field = space.field();
    let covectors: Vec<Vec<Vec<Elem>>> = forms
        .iter()
        .map(|f| space.points().map(|(_, c)| f.covector(field, c)).collect())
        .collect();
    let candidates: Vec<PointIndex> = (0..space.num_points() as PointIndex)
        .filter(|&p| allowed(p))
        .collect();
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    let mut walker = Walker {
        space,
        covectors: &covectors,
        k,
        chosen: Vec::new(),
        out: &mut out,
    };
    walker.descend(&candidates);
    out.sort_unstable();
    out
}

struct Walker<'a> {
    space: &'a ProjectiveSpace,
    covectors: &'a [Vec<Vec<Elem>>],
    k: usize,
    chosen: Vec<PointIndex>,
    out: &'a mut Vec<Vec<PointIndex>>,
}

impl Walker<'_> {
    fn orthogonal(&self, a: PointIndex, b: PointIndex) -> bool {
        let v = self.space.point(b);
        self.covectors
            .iter()
            .all(|cov| dot(self.space.field(), &cov[a as usize], v) == 0)
    }

    /// `p` is outside the current span and is the smallest point of
    /// `span(chosen, p) \ span(chosen)`.
    fn is_local_minimum(&self, p: PointIndex) -> bool {
        let field = self.space.field();
        let q = field.order() as usize;
        let base: Vec<&[Elem]> = self.chosen.iter().map(|&c| self.space.point(c)).collect();
        let mut coeffs = vec![0usize; base.len()];
        let mut v = vec![0; self.space.dim()];
        loop {
            v.copy_from_slice(self.space.point(p));
            for (c, b) in coeffs.iter().zip(&base) {
                axpy(field, &mut v, *c as Elem, b);
            }
            match self.space.index_of(&v) {
                None => return false,
                Some(idx) if idx < p => return false,
                _ => {}
            }
            let mut i = coeffs.len();
            loop {
                if i == 0 {
                    return true;
                }
                i -= 1;
                coeffs[i] += 1;
                if coeffs[i] < q {
                    break;
                }
                coeffs[i] = 0;
            }
        }
    }

    /// The ascending-greedy basis of the subspace equals the chosen sequence.
    fn is_canonical(&self, points: &[PointIndex]) -> bool {
        let field = self.space.field();
        let mut span = Subspace::zero(self.space.dim());
        let mut next = 0;
        for &p in points {
            if next == self.chosen.len() {
                break;
            }
            let v = self.space.point(p);
            if !span.contains(field, v) {
                if p != self.chosen[next] {
                    return false;
                }
                span = Subspace::span(
                    field,
                    self.space.dim(),
                    &[span.basis(), &[v.to_vec()]].concat(),
                );
                next += 1;
            }
        }
        true
    }

    fn descend(&mut self, candidates: &[PointIndex]) {
        if self.chosen.len() == self.k {
            let basis: Vec<Vec<Elem>> = self
                .chosen
                .iter()
                .map(|&c| self.space.point(c).to_vec())
                .collect();
            let points = span_points(self.space, &basis);
            if self.is_canonical(&points) {
                self.out.push(points);
            }
            return;
        }
        for (i, &p) in candidates.iter().enumerate() {
            if !self.is_local_minimum(p) {
                continue;
            }
            let next: Vec<PointIndex> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&c| self.orthogonal(p, c))
                .collect();
            if next.len() + self.chosen.len() + 1 < self.k {
                continue;
            }
            self.chosen.push(p);
            self.descend(&next);
            self.chosen.pop();
        }
    }
}

/// `∏_{i=1}^{n+1} (q^i + 1)`, the number of generators of W(2n+1, q).
pub fn generator_count(n: usize, q: u64) -> u64 {
    (1..=n as u32 + 1).map(|i| q.pow(i) + 1).product()
}

/// Totally isotropic lines of W(2n+1, q).
pub fn ti_line_count(n: usize, q: u64) -> u64 {
    // points × (points of W(2n-1, q)) / (q + 1)
    let points: u64 = (0..=2 * n as u32 + 1).map(|i| q.pow(i)).sum();
    let residual: u64 = (0..=2 * n as u32 - 1).map(|i| q.pow(i)).sum();
    points * residual / (q + 1)
}

/// The polar space W(2n+1, q) of a non-degenerate alternating form.
pub struct PolarSpace {
    space: Arc<ProjectiveSpace>,
    form: BilinearForm,
    covectors: Vec<Vec<Elem>>,
    generators: Vec<Vec<PointIndex>>,
    ti_lines: OnceLock<Vec<Vec<PointIndex>>>,
}

impl fmt::Debug for PolarSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W({}, {})", self.space.n(), self.space.q())
    }
}

impl PolarSpace {
    pub fn build(space: Arc<ProjectiveSpace>, form: BilinearForm) -> Result<Self> {
        let field = space.field().clone();
        if form.dim() != space.dim() {
            return Err(Error::Usage(format!(
                "{}x{} form on {:?}",
                form.dim(),
                form.dim(),
                space
            )));
        }
        if !space.dim().is_multiple_of(2) {
            return Err(Error::Usage(format!("{space:?} has odd vector dimension")));
        }
        if !form.is_alternating() {
            return Err(Error::Usage("form is not alternating".into()));
        }
        if !form.is_nondegenerate(&field) {
            return Err(Error::Degenerate {
                radical_dim: form.radical(&field).rank(),
            });
        }
        let rank = space.dim() / 2;
        let generators = isotropic_subspaces(&space, &[&form], &|_| true, rank);
        let n = rank - 1;
        let q = space.q() as u64;
        let expected = generator_count(n, q);
        if generators.len() as u64 != expected {
            return Err(Error::Internal(format!(
                "enumerated {} generators of W({}, {q}), expected {expected}",
                generators.len(),
                2 * n + 1
            )));
        }
        let covectors = space
            .points()
            .map(|(_, c)| form.covector(&field, c))
            .collect();
        Ok(PolarSpace {
            space,
            form,
            covectors,
            generators,
            ti_lines: OnceLock::new(),
        })
    }

    /// W(2n+1, q) with the anti-diagonal form.
    pub fn standard(n: usize, q: u32) -> Result<Self> {
        let field = crate::gf::Field::of_order(q)?;
        let space = Arc::new(ProjectiveSpace::new(field, 2 * n + 1)?);
        Self::build(space, BilinearForm::standard(2 * n + 2))
    }

    pub fn space(&self) -> &Arc<ProjectiveSpace> {
        &self.space
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn q(&self) -> u32 {
        self.space.q()
    }

    /// The `n` of W(2n+1, q).
    pub fn n(&self) -> usize {
        self.space.dim() / 2 - 1
    }

    pub fn num_points(&self) -> usize {
        self.space.num_points()
    }

    /// Points per generator, `(q^(n+1) - 1)/(q - 1)`.
    pub fn generator_size(&self) -> usize {
        crate::projgeom::point_count(self.n(), self.q() as u64) as usize
    }

    pub fn generators(&self) -> &[Vec<PointIndex>] {
        &self.generators
    }

    pub fn ti_lines(&self) -> &[Vec<PointIndex>] {
        self.ti_lines
            .get_or_init(|| isotropic_subspaces(&self.space, &[&self.form], &|_| true, 2))
    }

    pub fn orthogonal(&self, a: PointIndex, b: PointIndex) -> bool {
        dot(
            self.space.field(),
            &self.covectors[a as usize],
            self.space.point(b),
        ) == 0
    }

    /// Points of `P^⊥`, ascending.
    pub fn perp_points(&self, p: PointIndex) -> Vec<PointIndex> {
        (0..self.num_points() as PointIndex)
            .filter(|&x| self.orthogonal(p, x))
            .collect()
    }

    pub fn perp(&self, s: &Subspace) -> Subspace {
        self.form.perp_unchecked(self.space.field(), s)
    }

    pub fn incidence(&self) -> IncidenceSystem {
        IncidenceSystem {
            rows: self.num_points(),
            columns: self.generators.clone(),
        }
    }

    /// Number of generators through each point.
    pub fn point_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.num_points()];
        for g in &self.generators {
            for &p in g {
                deg[p as usize] += 1;
            }
        }
        deg
    }
}

/// Points against generators; column `j` lists the points on generator `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceSystem {
    pub rows: usize,
    pub columns: Vec<Vec<PointIndex>>,
}

impl IncidenceSystem {
    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn row_sums(&self) -> Vec<usize> {
        let mut sums = vec![0; self.rows];
        for c in &self.columns {
            for &p in c {
                sums[p as usize] += 1;
            }
        }
        sums
    }

    /// First line `rows cols`, then one line per column with its point
    /// indices ascending and space separated.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols());
        for c in &self.columns {
            let line: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Usage("empty incidence file".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::Usage(format!("bad header {header:?}")))
            })
            .collect::<Result<_>>()?;
        let [rows, cols] = dims[..] else {
            return Err(Error::Usage(format!("bad header {header:?}")));
        };
        let columns: Vec<Vec<PointIndex>> = lines
            .map(|l| {
                l.split_whitespace()
                    .map(|t| {
                        t.parse()
                            .map_err(|_| Error::Usage(format!("bad column {l:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        if columns.len() != cols || columns.iter().flatten().any(|&p| p as usize >= rows) {
            return Err(Error::Usage(
                "incidence body does not match its header".into(),
            ));
        }
        Ok(IncidenceSystem { rows, columns })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn w32_counts() {
        let w = PolarSpace::standard(1, 2).unwrap();
        assert_eq!(w.num_points(), 15);
        assert_eq!(w.generators().len(), 15);
        assert_eq!(w.ti_lines().len(), 15);
        let inc = w.incidence();
        assert!(inc.columns.iter().all(|c| c.len() == 3));
        assert!(inc.row_sums().iter().all(|&r| r == 3));
    }

    #[test]
    fn w52_counts() {
        let w = PolarSpace::standard(2, 2).unwrap();
        assert_eq!(w.num_points(), 63);
        assert_eq!(w.generators().len(), 135);
        assert_eq!(w.ti_lines().len(), 315);
        assert_eq!(ti_line_count(2, 2), 315);
        assert!(w.point_degrees().iter().all(|&d| d == 15));
        assert!(w.generators().windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn ti_lines_match_brute_force_over_all_lines() {
        let w = PolarSpace::standard(2, 2).unwrap();
        let brute: Vec<Vec<PointIndex>> = w
            .space()
            .all_lines()
            .into_iter()
            .filter(|l| w.orthogonal(l[0], l[1]))
            .collect();
        assert_eq!(w.space().all_lines().len(), 651);
        let mut brute = brute;
        brute.sort();
        assert_eq!(brute, w.ti_lines());
    }

    #[test]
    fn every_ti_line_lies_in_a_generator() {
        let w = PolarSpace::standard(2, 2).unwrap();
        for l in w.ti_lines() {
            assert!(w
                .generators()
                .iter()
                .any(|g| l.iter().all(|p| g.binary_search(p).is_ok())));
        }
    }

    #[test]
    fn generators_meet_in_isotropic_subspaces() {
        let w = PolarSpace::standard(2, 2).unwrap();
        let f = w.space().field().clone();
        for a in w.generators().iter().take(20) {
            for b in w.generators() {
                let sa = w.space().span(a);
                let sb = w.space().span(b);
                let m = sa.meet(&f, &sb).unwrap();
                assert!(w.form().is_totally_isotropic(&f, &m));
            }
        }
    }

    #[test]
    fn incidence_text_round_trip() {
        let w = PolarSpace::standard(1, 2).unwrap();
        let inc = w.incidence();
        let text = inc.to_text();
        assert!(text.starts_with("15 15\n"));
        assert_eq!(IncidenceSystem::from_text(&text).unwrap(), inc);
        assert!(IncidenceSystem::from_text("3 1\n0 5\n").is_err());
    }

    #[test]
    fn rejects_degenerate_form() {
        let f = crate::gf::Field::of_order(2).unwrap();
        let space = Arc::new(ProjectiveSpace::new(f, 3).unwrap());
        let g = crate::linalg::Matrix::zeros(4, 4);
        assert!(PolarSpace::build(space, BilinearForm::new(g).unwrap()).is_err());
    }
}
