//! m-ovoid verification and intersection spectra.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polar::PolarSpace;
use crate::projgeom::PointIndex;

/// A sorted, duplicate-free set of point indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PointSet {
    members: Vec<PointIndex>,
}

impl PointSet {
    /// Rejects duplicates and indices `>= num_points`.
    pub fn new(mut members: Vec<PointIndex>, num_points: usize) -> Result<Self> {
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Usage("point set contains a repeated point".into()));
        }
        if members.last().is_some_and(|&p| p as usize >= num_points) {
            return Err(Error::Usage(format!(
                "point index out of range for {num_points} points"
            )));
        }
        Ok(PointSet { members })
    }

    pub fn from_mask(mask: u128) -> Self {
        PointSet {
            members: (0..128).filter(|&i| mask >> i & 1 == 1).collect(),
        }
    }

    pub fn members(&self) -> &[PointIndex] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: PointIndex) -> bool {
        self.members.binary_search(&p).is_ok()
    }

    pub fn indicator(&self, num_points: usize) -> Vec<bool> {
        let mut v = vec![false; num_points];
        for &p in &self.members {
            v[p as usize] = true;
        }
        v
    }

    /// Bit mask; only valid when every index is below 128.
    pub fn mask(&self) -> u128 {
        self.members.iter().fold(0, |m, &p| m | 1u128 << p)
    }
}

fn count_in(indicator: &[bool], set: &[PointIndex]) -> usize {
    set.iter().filter(|&&p| indicator[p as usize]).count()
}

/// The common size of `g ∩ X` over all generators `g`, if there is one.
pub fn is_m_ovoid(space: &PolarSpace, x: &PointSet) -> Option<usize> {
    let ind = x.indicator(space.num_points());
    let sizes: Vec<usize> = space
        .generators()
        .par_iter()
        .map(|g| count_in(&ind, g))
        .collect();
    let m = *sizes.first()?;
    if sizes.iter().any(|&s| s != m) {
        return None;
    }
    let q = space.q() as usize;
    (x.len() == m * (q.pow(space.n() as u32 + 1) + 1)).then_some(m)
}

/// Expected `|X ∩ P^⊥|` for an m-ovoid of W(2n+1, q): `(inside, outside)`.
pub fn hyperplane_values(n: usize, q: u64, m: u64) -> (i64, i64) {
    let t = q.pow(n as u32) as i64;
    let outside = m as i64 * (t + 1);
    (outside - t, outside)
}

/// `|X ∩ P^⊥|` for every point P.
pub fn hyperplane_counts(space: &PolarSpace, x: &PointSet) -> Vec<usize> {
    (0..space.num_points() as PointIndex)
        .into_par_iter()
        .map(|p| {
            x.members()
                .iter()
                .filter(|&&y| space.orthogonal(p, y))
                .count()
        })
        .collect()
}

/// Checks the two-intersection characterization of an m-ovoid.
pub fn hyperplane_check(space: &PolarSpace, x: &PointSet, m: usize) -> bool {
    let (inside, outside) = hyperplane_values(space.n(), space.q() as u64, m as u64);
    hyperplane_counts(space, x)
        .iter()
        .enumerate()
        .all(|(p, &c)| {
            c as i64
                == if x.contains(p as PointIndex) {
                    inside
                } else {
                    outside
                }
        })
}

pub type Spectrum = BTreeMap<usize, usize>;

fn spectrum(values: impl IntoIterator<Item = usize>) -> Spectrum {
    let mut s = Spectrum::new();
    for v in values {
        *s.entry(v).or_default() += 1;
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumReport {
    /// `|g ∩ X|` → number of generators.
    pub generator_spectrum: Spectrum,
    /// `|l ∩ X|` → number of totally isotropic lines.
    pub line_spectrum: Spectrum,
    /// Totally isotropic lines contained in X.
    pub full_line_count: usize,
    /// `|X ∩ P^⊥|` → number of points P in X.
    pub hyperplane_inside: Spectrum,
    /// `|X ∩ P^⊥|` → number of points P outside X.
    pub hyperplane_outside: Spectrum,
    /// `|l ∩ X|` over every line of the ambient space, when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub all_line_spectrum: Option<Spectrum>,
}

pub fn spectra(space: &PolarSpace, x: &PointSet) -> SpectrumReport {
    let ind = x.indicator(space.num_points());
    let gens: Vec<usize> = space
        .generators()
        .par_iter()
        .map(|g| count_in(&ind, g))
        .collect();
    let lines: Vec<usize> = space
        .ti_lines()
        .par_iter()
        .map(|l| count_in(&ind, l))
        .collect();
    let line_size = space.q() as usize + 1;
    let hyper = hyperplane_counts(space, x);
    let (inside, outside): (Vec<_>, Vec<_>) = hyper.iter().enumerate().partition(|(p, _)| ind[*p]);
    SpectrumReport {
        generator_spectrum: spectrum(gens),
        full_line_count: lines.iter().filter(|&&c| c == line_size).count(),
        line_spectrum: spectrum(lines),
        hyperplane_inside: spectrum(inside.into_iter().map(|(_, &c)| c)),
        hyperplane_outside: spectrum(outside.into_iter().map(|(_, &c)| c)),
        all_line_spectrum: None,
    }
}

/// Like [`spectra`], also counting over all lines of the ambient space.
pub fn spectra_with_all_lines(space: &PolarSpace, x: &PointSet) -> SpectrumReport {
    let mut report = spectra(space, x);
    let ind = x.indicator(space.num_points());
    let all = space.space().all_lines();
    report.all_line_spectrum = Some(spectrum(all.iter().map(|l| count_in(&ind, l))));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::QuadraticForm;

    fn polarizing_quadric(w: &PolarSpace) -> PointSet {
        // X1X6 + X2X5 + X3² + X3X4 + X4²
        let q =
            QuadraticForm::from_terms(6, &[(0, 5, 1), (1, 4, 1), (2, 2, 1), (2, 3, 1), (3, 3, 1)]);
        PointSet::new(q.zero_points(w.space()), w.num_points()).unwrap()
    }

    #[test]
    fn trivial_ovoids() {
        let w = PolarSpace::standard(2, 2).unwrap();
        let empty = PointSet::new(vec![], 63).unwrap();
        assert_eq!(is_m_ovoid(&w, &empty), Some(0));
        let all = PointSet::new((0..63).collect(), 63).unwrap();
        assert_eq!(is_m_ovoid(&w, &all), Some(7));
        assert!(hyperplane_check(&w, &all, 7));
        let one = PointSet::new(vec![4], 63).unwrap();
        assert_eq!(is_m_ovoid(&w, &one), None);
    }

    #[test]
    fn polarizing_quadric_is_three_ovoid() {
        let w = PolarSpace::standard(2, 2).unwrap();
        let x = polarizing_quadric(&w);
        assert_eq!(x.len(), 27);
        assert_eq!(is_m_ovoid(&w, &x), Some(3));
        assert!(hyperplane_check(&w, &x, 3));
        let s = spectra(&w, &x);
        assert_eq!(s.full_line_count, 45);
        assert!(s.line_spectrum.keys().all(|&k| k == 1 || k == 3));
        assert_eq!(s.hyperplane_inside, Spectrum::from([(11, 27)]));
        assert_eq!(s.hyperplane_outside, Spectrum::from([(15, 36)]));
        // double count over lines: each point on 15 t.i. lines
        let incidences: usize = s.line_spectrum.iter().map(|(k, v)| k * v).sum();
        assert_eq!(incidences, 27 * 15);
    }

    #[test]
    fn hyperplane_value_table() {
        assert_eq!(hyperplane_values(2, 2, 3), (11, 15));
        assert_eq!(hyperplane_values(2, 4, 5), (69, 85));
        assert_eq!(hyperplane_values(1, 2, 1), (1, 3));
        assert_eq!(hyperplane_values(2, 2, 0), (-4, 0));
    }

    #[test]
    fn point_set_validation() {
        assert!(PointSet::new(vec![3, 1, 3], 10).is_err());
        assert!(PointSet::new(vec![10], 10).is_err());
        let s = PointSet::new(vec![5, 2], 10).unwrap();
        assert_eq!(s.members(), &[2, 5]);
        assert_eq!(PointSet::from_mask(s.mask()), s);
    }
}
