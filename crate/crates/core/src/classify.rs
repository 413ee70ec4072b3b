//! Exhaustive enumeration of m-ovoids of small polar spaces and their
//! isomorphism classes under the symplectic group.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{symplectic_basis, BilinearForm};
use crate::gf::Elem;
use crate::group::{PermGroup, DEFAULT_ELEMENT_CAP};
use crate::linalg::axpy;
use crate::polar::{IncidenceSystem, PolarSpace};
use crate::projgeom::PointIndex;
use crate::verify::{spectra, PointSet, Spectrum};

/// Largest point count the bit-mask search handles.
pub const MAX_SEARCH_POINTS: usize = 128;

/// Find all 0/1 vectors `x` with `x·A = m·j` and `Σ x = cardinality`.
#[derive(Debug, Clone)]
pub struct SearchProblem {
    pub num_points: usize,
    pub columns: Vec<u128>,
    pub m: usize,
    pub cardinality: usize,
}

impl SearchProblem {
    pub fn new(system: &IncidenceSystem, m: usize, cardinality: usize) -> Result<Self> {
        if system.rows > MAX_SEARCH_POINTS {
            return Err(Error::ScaleCap(format!(
                "{} points exceed the search limit of {MAX_SEARCH_POINTS}",
                system.rows
            )));
        }
        let columns = system
            .columns
            .iter()
            .map(|c| c.iter().fold(0u128, |acc, &p| acc | 1 << p))
            .collect();
        Ok(SearchProblem {
            num_points: system.rows,
            columns,
            m,
            cardinality,
        })
    }

    /// m-ovoids of `space`: every generator meets the set in `m` points and
    /// the set has `m(q^{n+1} + 1)` points.
    pub fn m_ovoids(space: &PolarSpace, m: usize) -> Result<Self> {
        let q = space.q() as usize;
        Self::new(&space.incidence(), m, m * (q.pow(space.n() as u32 + 1) + 1))
    }

    fn all(&self) -> u128 {
        if self.num_points == 128 {
            u128::MAX
        } else {
            (1u128 << self.num_points) - 1
        }
    }

    /// Forces every consequence of the counting constraints; `None` on a
    /// contradiction.
    fn propagate(&self, mut inc: u128, mut exc: u128) -> Option<(u128, u128)> {
        let all = self.all();
        let m = self.m as u32;
        let k = self.cardinality as u32;
        loop {
            let mut changed = false;
            for &g in &self.columns {
                let c = (g & inc).count_ones();
                let free = g & !inc & !exc;
                let f = free.count_ones();
                if c > m || c + f < m {
                    return None;
                }
                if free != 0 {
                    if c == m {
                        exc |= free;
                        changed = true;
                    } else if c + f == m {
                        inc |= free;
                        changed = true;
                    }
                }
            }
            let free = all & !inc & !exc;
            let (c, f) = (inc.count_ones(), free.count_ones());
            if c > k || c + f < k {
                return None;
            }
            if free != 0 && c == k {
                exc |= free;
                changed = true;
            } else if free != 0 && c + f == k {
                inc |= free;
                changed = true;
            }
            if !changed {
                return Some((inc, exc));
            }
        }
    }

    /// Next undecided point: the smallest index, or with `heuristic` the
    /// smallest free point of the generator with fewest free points.
    fn branch_point(&self, inc: u128, exc: u128, heuristic: bool) -> Option<u32> {
        let free = self.all() & !inc & !exc;
        if free == 0 {
            return None;
        }
        if heuristic {
            let best = self
                .columns
                .iter()
                .map(|&g| g & free)
                .filter(|&f| f != 0)
                .min_by_key(|f| f.count_ones())
                .expect("some generator has a free point");
            return Some(best.trailing_zeros());
        }
        Some(free.trailing_zeros())
    }

    fn search(&self, inc: u128, exc: u128, heuristic: bool, out: &mut Vec<u128>) {
        let Some((inc, exc)) = self.propagate(inc, exc) else {
            return;
        };
        match self.branch_point(inc, exc, heuristic) {
            None => out.push(inc),
            Some(p) => {
                self.search(inc | 1 << p, exc, heuristic, out);
                self.search(inc, exc | 1 << p, heuristic, out);
            }
        }
    }

    /// Open subproblems after `depth` levels of index-order branching.
    fn frontier(&self, depth: usize) -> (Vec<(u128, u128)>, Vec<u128>) {
        let mut open = vec![(0u128, 0u128)];
        let mut done = Vec::new();
        for _ in 0..depth {
            let mut next = Vec::new();
            for (inc, exc) in open {
                let Some((inc, exc)) = self.propagate(inc, exc) else {
                    continue;
                };
                match self.branch_point(inc, exc, false) {
                    None => done.push(inc),
                    Some(p) => {
                        next.push((inc | 1 << p, exc));
                        next.push((inc, exc | 1 << p));
                    }
                }
            }
            open = next;
        }
        (open, done)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    /// Worker threads; 1 runs on the calling thread.
    pub jobs: usize,
    /// Most-constrained-generator branching. Same solution set.
    pub heuristic: bool,
    /// Branching depth at which the tree is split into parallel tasks.
    pub split_depth: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            jobs: 1,
            heuristic: false,
            split_depth: 10,
        }
    }
}

/// Every solution, as an ascending list of masks.
pub fn enumerate_solutions(problem: &SearchProblem, options: SearchOptions) -> Result<Vec<u128>> {
    let mut out = if options.jobs <= 1 {
        let mut out = Vec::new();
        problem.search(0, 0, options.heuristic, &mut out);
        out
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.jobs)
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
        let (open, mut done) = problem.frontier(options.split_depth);
        let found: Vec<u128> = pool.install(|| {
            open.par_iter()
                .flat_map_iter(|&(inc, exc)| {
                    let mut out = Vec::new();
                    problem.search(inc, exc, options.heuristic, &mut out);
                    out
                })
                .collect()
        });
        done.extend(found);
        done
    };
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// `|Sp(2r, q)|`, which for even q is also the order of its projective image.
pub fn symplectic_group_order(rank: usize, q: u64) -> u128 {
    let q = q as u128;
    (1..=rank as u32).fold(q.pow((rank * rank) as u32), |acc, i| {
        acc * (q.pow(2 * i) - 1)
    })
}

/// The collineation group of `space` induced by its symplectic group,
/// generated by the transvections `x ↦ x + λB(x, v)v` for `v` among the
/// unit vectors and sums of consecutive unit vectors.
pub fn symplectic_group(space: &PolarSpace, cap: usize) -> Result<PermGroup> {
    let ps = space.space();
    let f = ps.field();
    let d = ps.dim();
    let form: &BilinearForm = space.form();
    let mut vectors = Vec::new();
    for i in 0..d {
        let mut v = vec![0 as Elem; d];
        v[i] = 1;
        vectors.push(v.clone());
        if i + 1 < d {
            v[i + 1] = 1;
            vectors.push(v);
        }
    }
    let mut gens = Vec::new();
    for v in &vectors {
        for lambda in f.nonzero() {
            let perm: Vec<u16> = ps
                .points()
                .map(|(_, x)| {
                    let mut y = x.to_vec();
                    axpy(f, &mut y, f.mul(lambda, form.eval(f, x, v)), v);
                    ps.index_of(&y).expect("invertible") as u16
                })
                .collect();
            gens.push(perm);
        }
    }
    let frame: Vec<PointIndex> = (0..d)
        .map(|i| {
            let mut v = vec![0; d];
            v[i] = 1;
            v
        })
        .chain(std::iter::once(vec![1; d]))
        .map(|v| ps.index_of(&v).expect("frame point"))
        .collect();
    let group = PermGroup::closure(ps.num_points(), gens, frame, cap)?;
    let expected = symplectic_group_order(d / 2, ps.q() as u64);
    if group.order() as u128 != expected {
        return Err(Error::Internal(format!(
            "transvection closure has order {}, expected {expected}",
            group.order()
        )));
    }
    Ok(group)
}

pub fn default_symplectic_group(space: &PolarSpace) -> Result<PermGroup> {
    symplectic_group(space, DEFAULT_ELEMENT_CAP)
}

pub fn apply_mask(perm: &[u16], mut mask: u128) -> u128 {
    let mut image = 0;
    while mask != 0 {
        let p = mask.trailing_zeros();
        image |= 1u128 << perm[p as usize];
        mask &= mask - 1;
    }
    image
}

/// Numbers preserved by every collineation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Invariants {
    pub full_line_count: usize,
    pub line_spectrum: Spectrum,
    pub generator_spectrum: Spectrum,
    pub hyperplane_inside: Spectrum,
    pub hyperplane_outside: Spectrum,
}

pub fn invariants(space: &PolarSpace, x: &PointSet) -> Invariants {
    let s = spectra(space, x);
    Invariants {
        full_line_count: s.full_line_count,
        line_spectrum: s.line_spectrum,
        generator_spectrum: s.generator_spectrum,
        hyperplane_inside: s.hyperplane_inside,
        hyperplane_outside: s.hyperplane_outside,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IsoClass {
    pub representative: PointSet,
    pub orbit_size: usize,
    pub stabilizer_order: usize,
    pub invariants: Invariants,
}

/// Number of group elements mapping `mask` onto itself.
pub fn mask_stabilizer_order(group: &PermGroup, mask: u128) -> usize {
    let order = group.order();
    (0..order)
        .into_par_iter()
        .filter(|&i| apply_mask(group.element(i), mask) == mask)
        .count()
}

/// Splits a complete, invariant list of solutions into group orbits,
/// in order of their least member.
pub fn isomorphism_classes(
    solutions: &[u128],
    group: &PermGroup,
    space: &PolarSpace,
) -> Result<Vec<IsoClass>> {
    let index: HashMap<u128, usize> = solutions.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    if index.len() != solutions.len() {
        return Err(Error::Usage("solution list has repeats".into()));
    }
    let mut assigned = vec![false; solutions.len()];
    let mut classes = Vec::new();
    for start in 0..solutions.len() {
        if assigned[start] {
            continue;
        }
        assigned[start] = true;
        let mut queue = vec![solutions[start]];
        let mut i = 0;
        while i < queue.len() {
            for g in group.generators() {
                let image = apply_mask(g, queue[i]);
                let &j = index.get(&image).ok_or_else(|| {
                    Error::Internal("solution list is not closed under the group".into())
                })?;
                if !assigned[j] {
                    assigned[j] = true;
                    queue.push(image);
                }
            }
            i += 1;
        }
        let stabilizer_order = mask_stabilizer_order(group, solutions[start]);
        if queue.len() * stabilizer_order != group.order() {
            return Err(Error::Internal(format!(
                "orbit of size {} with stabilizer of order {stabilizer_order} in a group of order {}",
                queue.len(),
                group.order()
            )));
        }
        let representative = PointSet::from_mask(solutions[start]);
        classes.push(IsoClass {
            invariants: invariants(space, &representative),
            representative,
            orbit_size: queue.len(),
            stabilizer_order,
        });
    }
    Ok(classes)
}

/// Some group element carrying `x` onto `y`.
pub fn are_isomorphic(
    space: &PolarSpace,
    group: &PermGroup,
    x: &PointSet,
    y: &PointSet,
) -> Result<Option<Vec<u16>>> {
    if group.degree() != space.num_points() {
        return Err(Error::Usage("group does not act on this space".into()));
    }
    if x.len() != y.len() || invariants(space, x) != invariants(space, y) {
        return Ok(None);
    }
    let (mx, my) = (x.mask(), y.mask());
    let found = (0..group.order())
        .into_par_iter()
        .find_first(|&i| apply_mask(group.element(i), mx) == my);
    Ok(found.map(|i| group.element(i).to_vec()))
}

/// Image of `set` under `x ↦ Tx`, where `T` carries the form of `from`
/// onto the anti-diagonal form of `to`.
pub fn transport_to_standard(
    from: &PolarSpace,
    set: &PointSet,
    to: &PolarSpace,
) -> Result<PointSet> {
    let (src, dst) = (from.space(), to.space());
    if src.field().spec() != dst.field().spec() || src.dim() != dst.dim() {
        return Err(Error::Usage(format!(
            "cannot transport from {from:?} to {to:?}"
        )));
    }
    if *to.form() != BilinearForm::standard(dst.dim()) {
        return Err(Error::Usage(
            "target space does not carry the standard form".into(),
        ));
    }
    let f = src.field();
    let t = symplectic_basis(f, from.form())?;
    let members = set
        .members()
        .iter()
        .map(|&p| dst.index_of(&t.apply(f, src.point(p))).expect("invertible"))
        .collect();
    PointSet::new(members, dst.num_points())
}
