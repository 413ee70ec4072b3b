//! Permutation groups on point indices, materialized by closure.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::Rng;

use crate::error::{Error, Result};
use crate::projgeom::PointIndex;

/// Default bound on the number of materialized elements.
pub const DEFAULT_ELEMENT_CAP: usize = 2_000_000;

/// A permutation group acting on `0..degree`, stored as the full element
/// list. Elements are keyed by their images of a *base*: a point sequence
/// whose images determine the element (a projective frame for groups of
/// projectivities).
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Vec<u16>>,
    base: Vec<PointIndex>,
    elements: Vec<u16>,
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "PermGroup(degree {}, order {}, {} generators)",
            self.degree,
            self.order(),
            self.generators.len()
        )
    }
}

struct KeyPacker {
    bits: u32,
}

impl KeyPacker {
    fn new(degree: usize, base_len: usize) -> Result<Self> {
        let bits = usize::BITS - degree.saturating_sub(1).leading_zeros();
        let bits = bits.max(1);
        if bits as usize * base_len > 128 {
            return Err(Error::Usage(format!(
                "base of {base_len} points on degree {degree} does not fit a 128-bit key"
            )));
        }
        Ok(KeyPacker { bits })
    }

    fn key(&self, images: impl Iterator<Item = u16>) -> u128 {
        images.fold(0u128, |acc, x| (acc << self.bits) | x as u128)
    }
}

impl PermGroup {
    /// Closes `generators` under composition.
    pub fn closure(
        degree: usize,
        generators: Vec<Vec<u16>>,
        base: Vec<PointIndex>,
        cap: usize,
    ) -> Result<Self> {
        if degree > u16::MAX as usize + 1 {
            return Err(Error::ScaleCap(format!(
                "degree {degree} exceeds the 16-bit point encoding"
            )));
        }
        for g in &generators {
            if !is_permutation(g, degree) {
                return Err(Error::Usage(
                    "generator is not a permutation of the point set".into(),
                ));
            }
        }
        if base.iter().any(|&b| b as usize >= degree) {
            return Err(Error::Usage("base point out of range".into()));
        }
        let packer = KeyPacker::new(degree, base.len())?;
        let mut elements: Vec<u16> = (0..degree as u16).collect();
        let mut seen: HashSet<u128> = HashSet::new();
        seen.insert(packer.key(base.iter().map(|&b| b as u16)));
        let mut next = 0;
        while next * degree < elements.len() {
            for s in &generators {
                let g = &elements[next * degree..(next + 1) * degree];
                let key = packer.key(base.iter().map(|&b| s[g[b as usize] as usize]));
                if !seen.insert(key) {
                    continue;
                }
                if seen.len() > cap {
                    return Err(Error::ScaleCap(format!(
                        "group closure exceeded {cap} elements"
                    )));
                }
                let image: Vec<u16> = g.iter().map(|&x| s[x as usize]).collect();
                elements.extend_from_slice(&image);
            }
            next += 1;
        }
        Ok(PermGroup {
            degree,
            generators,
            base,
            elements,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len() / self.degree.max(1)
    }

    pub fn generators(&self) -> &[Vec<u16>] {
        &self.generators
    }

    pub fn base(&self) -> &[PointIndex] {
        &self.base
    }

    pub fn element(&self, i: usize) -> &[u16] {
        &self.elements[i * self.degree..(i + 1) * self.degree]
    }

    pub fn elements(&self) -> impl Iterator<Item = &[u16]> + '_ {
        self.elements.chunks(self.degree)
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> &[u16] {
        self.element(rng.gen_range(0..self.order()))
    }

    /// Orbits on points, each ascending, ordered by least element.
    pub fn point_orbits(&self) -> Vec<Vec<PointIndex>> {
        let mut orbit_of = vec![usize::MAX; self.degree];
        let mut orbits = Vec::new();
        for start in 0..self.degree {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut orbit = vec![start as PointIndex];
            orbit_of[start] = id;
            let mut i = 0;
            while i < orbit.len() {
                let p = orbit[i] as usize;
                for g in &self.generators {
                    let x = g[p] as usize;
                    if orbit_of[x] == usize::MAX {
                        orbit_of[x] = id;
                        orbit.push(x as PointIndex);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    /// Partitions an invariant family of point sets into orbits. Each orbit
    /// is an ascending list of family indices; orbits are ordered by their
    /// least index. Fails if the family is not invariant.
    pub fn orbits_on_sets(&self, family: &[Vec<PointIndex>]) -> Result<Vec<Vec<usize>>> {
        let index: HashMap<Vec<PointIndex>, usize> = family
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let mut s = s.clone();
                s.sort_unstable();
                (s, i)
            })
            .collect();
        let mut orbit_of = vec![usize::MAX; family.len()];
        let mut orbits = Vec::new();
        for start in 0..family.len() {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut orbit = vec![start];
            orbit_of[start] = id;
            let mut i = 0;
            while i < orbit.len() {
                for g in &self.generators {
                    let image = apply_set(g, &family[orbit[i]]);
                    let &j = index.get(&image).ok_or_else(|| {
                        Error::Internal("point-set family is not invariant under the group".into())
                    })?;
                    if orbit_of[j] == usize::MAX {
                        orbit_of[j] = id;
                        orbit.push(j);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        Ok(orbits)
    }

    /// The orbit of a point set, as ascending lists, sorted.
    pub fn set_orbit(&self, set: &[PointIndex]) -> Vec<Vec<PointIndex>> {
        let mut start = set.to_vec();
        start.sort_unstable();
        let mut seen: HashSet<Vec<PointIndex>> = HashSet::new();
        seen.insert(start.clone());
        let mut queue = VecDeque::from([start]);
        while let Some(s) = queue.pop_front() {
            for g in &self.generators {
                let image = apply_set(g, &s);
                if seen.insert(image.clone()) {
                    queue.push_back(image);
                }
            }
        }
        let mut orbit: Vec<_> = seen.into_iter().collect();
        orbit.sort_unstable();
        orbit
    }

    /// Number of elements mapping `set` onto itself.
    pub fn set_stabilizer_order(&self, set: &[PointIndex]) -> usize {
        let mut member = vec![false; self.degree];
        for &p in set {
            member[p as usize] = true;
        }
        self.elements()
            .filter(|g| set.iter().all(|&p| member[g[p as usize] as usize]))
            .count()
    }

    pub fn point_stabilizer_order(&self, p: PointIndex) -> usize {
        self.elements()
            .filter(|g| g[p as usize] as PointIndex == p)
            .count()
    }

    /// Some element carrying `x` onto `y`.
    pub fn find_mapping(&self, x: &[PointIndex], y: &[PointIndex]) -> Option<Vec<u16>> {
        if x.len() != y.len() {
            return None;
        }
        let mut member = vec![false; self.degree];
        for &p in y {
            member[p as usize] = true;
        }
        self.elements()
            .find(|g| x.iter().all(|&p| member[g[p as usize] as usize]))
            .map(<[u16]>::to_vec)
    }
}

pub fn is_permutation(g: &[u16], degree: usize) -> bool {
    if g.len() != degree {
        return false;
    }
    let mut hit = vec![false; degree];
    for &x in g {
        if x as usize >= degree || std::mem::replace(&mut hit[x as usize], true) {
            return false;
        }
    }
    true
}

/// Image of a point set, ascending.
pub fn apply_set(g: &[u16], set: &[PointIndex]) -> Vec<PointIndex> {
    let mut image: Vec<PointIndex> = set.iter().map(|&p| g[p as usize] as PointIndex).collect();
    image.sort_unstable();
    image
}

/// `a` after `b`.
pub fn compose(a: &[u16], b: &[u16]) -> Vec<u16> {
    b.iter().map(|&x| a[x as usize]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Vec<u16> {
        (0..n as u16).map(|i| (i + 1) % n as u16).collect()
    }

    #[test]
    fn symmetric_group_closure() {
        // S5 from a 5-cycle and a transposition; two points determine nothing,
        // so use the full point list as base.
        let t = vec![1, 0, 2, 3, 4];
        let g = PermGroup::closure(5, vec![cycle(5), t], (0..5).collect(), 1000).unwrap();
        assert_eq!(g.order(), 120);
        assert_eq!(g.point_orbits(), vec![vec![0, 1, 2, 3, 4]]);
        assert_eq!(g.point_stabilizer_order(3), 24);
        assert_eq!(g.set_stabilizer_order(&[0, 1]), 12);
        assert_eq!(g.set_orbit(&[0, 1]).len(), 10);
    }

    #[test]
    fn cyclic_group_orbits_on_sets() {
        let g = PermGroup::closure(6, vec![cycle(6)], vec![0], 100).unwrap();
        assert_eq!(g.order(), 6);
        let family: Vec<Vec<PointIndex>> = (0..6)
            .map(|i| vec![i, (i + 1) % 6])
            .chain((0..3).map(|i| vec![i, i + 3]))
            .collect();
        let orbits = g.orbits_on_sets(&family).unwrap();
        assert_eq!(orbits, vec![(0..6).collect::<Vec<_>>(), vec![6, 7, 8]]);
        assert!(g.orbits_on_sets(&[vec![0, 1]]).is_err());
        assert_eq!(g.find_mapping(&[0, 2], &[3, 5]).map(|m| m[0]), Some(3));
        assert!(g.find_mapping(&[0, 1], &[0, 2]).is_none());
    }

    #[test]
    fn closure_cap_and_validation() {
        assert!(
            PermGroup::closure(5, vec![cycle(5), vec![1, 0, 2, 3, 4]], (0..5).collect(), 50)
                .is_err()
        );
        assert!(PermGroup::closure(3, vec![vec![0, 0, 1]], vec![0], 10).is_err());
    }

    #[test]
    fn compose_and_apply() {
        let a = cycle(4);
        let b = vec![1, 0, 2, 3];
        assert_eq!(compose(&a, &b), vec![2, 1, 3, 0]);
        assert_eq!(apply_set(&a, &[3, 0]), vec![0, 1]);
    }
}
