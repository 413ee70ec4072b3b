//! The pencil of quadrics `Q_μ = Q_0 + μ·Q_∞` on PG(2n+1, q), q even, whose
//! non-zero members are m-ovoids of the polar space of `Q_0`.
//!
//! Coordinates are 0-based here: `X_1` is index 0 and `X_{2n+2}` is index
//! `2n+1`.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::forms::{
    classify_quadric, nondegenerate_point_count, BilinearForm, QuadraticForm, QuadricClass,
    QuadricKind,
};
use crate::gf::{Elem, Field};
use crate::linalg::Matrix;
use crate::polar::{isotropic_subspaces, PolarSpace};
use crate::projgeom::{point_count, PointIndex, ProjectiveSpace, Subspace};
use crate::report::{CheckResult, LemmaReport};
use crate::verify::{hyperplane_check, is_m_ovoid, PointSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PencilConfig {
    pub n: usize,
    pub q: u32,
    /// Defaults to the smallest element of absolute trace 1.
    pub delta: Option<Elem>,
    pub mu: Elem,
}

impl PencilConfig {
    pub fn new(n: usize, q: u32, mu: Elem) -> Self {
        PencilConfig {
            n,
            q,
            delta: None,
            mu,
        }
    }
}

/// `X_1² + X_1X_{2n+2} + δX_{2n+2}² + Σ X_iX_{2n+3-i} + μ(X_{2n}² + X_{2n}X_{2n+1} + δX_{2n+1}²)`.
pub fn pencil_quadric(n: usize, delta: Elem, mu: Elem, field: &Field) -> QuadraticForm {
    let d = 2 * n + 2;
    let mut terms = vec![(0, 0, 1), (0, d - 1, 1), (d - 1, d - 1, delta)];
    for i in 2..=n + 1 {
        terms.push((i - 1, d - i, 1));
    }
    terms.extend([
        (2 * n - 1, 2 * n - 1, mu),
        (2 * n - 1, 2 * n, mu),
        (2 * n, 2 * n, field.mul(mu, delta)),
    ]);
    QuadraticForm::from_terms(d, &terms)
}

/// `X_{2n}² + X_{2n}X_{2n+1} + δX_{2n+1}²`.
pub fn degenerate_quadric(n: usize, delta: Elem) -> QuadraticForm {
    QuadraticForm::from_terms(
        2 * n + 2,
        &[
            (2 * n - 1, 2 * n - 1, 1),
            (2 * n - 1, 2 * n, 1),
            (2 * n, 2 * n, delta),
        ],
    )
}

/// The anti-diagonal Gram matrix plus `μ` at `(2n-1, 2n)` and `(2n, 2n-1)`.
pub fn pencil_gram(n: usize, mu: Elem) -> BilinearForm {
    let mut g = Matrix::anti_identity(2 * n + 2);
    g[(2 * n - 1, 2 * n)] ^= mu;
    g[(2 * n, 2 * n - 1)] ^= mu;
    BilinearForm::new(g).expect("square")
}

fn unit(dim: usize, i: usize) -> Vec<Elem> {
    let mut e = vec![0; dim];
    e[i] = 1;
    e
}

pub struct PencilGeometry {
    pub config: PencilConfig,
    pub delta: Elem,
    field: Arc<Field>,
    /// `Q_μ` indexed by the encoding of `μ`.
    pub quadrics: Vec<QuadraticForm>,
    pub degenerate: QuadraticForm,
    /// `J_μ` indexed by the encoding of `μ`.
    pub grams: Vec<BilinearForm>,
    /// Zero set of the degenerate member, `X_{2n} = X_{2n+1} = 0`.
    pub axis: Subspace,
    /// The line `⟨e_2, e_3⟩`, polar to the axis under every `J_μ`.
    pub center: Subspace,
    pub classes: Vec<QuadricClass>,
    pub base_locus: Vec<PointIndex>,
    /// Polar space of `J_0`.
    pub w0: PolarSpace,
    /// `J_0^{-t} J_μ`, acting on column vectors.
    pub elation: Matrix,
    pub elation_perm: Vec<PointIndex>,
}

impl std::fmt::Debug for PencilGeometry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PencilGeometry")
            .field("config", &self.config)
            .field("delta", &self.delta)
            .finish()
    }
}

pub fn smallest_trace_one(field: &Field) -> Elem {
    field
        .elements()
        .find(|&c| field.absolute_trace(c) == 1)
        .expect("every GF(2^e) has trace-one elements")
}

pub fn build_pencil(config: PencilConfig) -> Result<PencilGeometry> {
    let PencilConfig { n, q, mu, .. } = config;
    if n < 2 {
        return Err(Error::Usage(format!(
            "pencil construction needs n >= 2, got {n}"
        )));
    }
    let field = Field::of_order(q)?;
    if mu as u32 >= q {
        return Err(Error::Usage(format!(
            "mu = {mu} is not an element of GF({q})"
        )));
    }
    let delta = config.delta.unwrap_or_else(|| smallest_trace_one(&field));
    if delta as u32 >= q || !field.is_quadratic_irreducible(delta) {
        return Err(Error::Usage(format!(
            "X² + X + {delta} is reducible over GF({q})"
        )));
    }
    let space = Arc::new(ProjectiveSpace::new(field.clone(), 2 * n + 1)?);
    let d = space.dim();
    let qq = q as u64;

    let quadrics: Vec<QuadraticForm> = field
        .elements()
        .map(|m| pencil_quadric(n, delta, m, &field))
        .collect();
    let grams: Vec<BilinearForm> = field.elements().map(|m| pencil_gram(n, m)).collect();
    let elliptic_points =
        nondegenerate_point_count(QuadricKind::Elliptic, d, qq).expect("even dimension");
    let mut classes = Vec::new();
    for (m, (qf, gram)) in quadrics.iter().zip(&grams).enumerate() {
        if qf.polar() != *gram {
            return Err(Error::Construction(format!(
                "polar form of Q_{m} differs from its Gram matrix"
            )));
        }
        let class = classify_quadric(&field, qf)?;
        if class.kind != QuadricKind::Elliptic
            || class.is_degenerate()
            || class.points != elliptic_points
        {
            return Err(Error::Construction(format!(
                "Q_{m} classified as {class:?}, expected elliptic"
            )));
        }
        classes.push(class);
    }

    let axis = Subspace::from_equations(&field, d, &[unit(d, 2 * n - 1), unit(d, 2 * n)]);
    let center = Subspace::span(&field, d, &[unit(d, 1), unit(d, 2)]);
    let degenerate = degenerate_quadric(n, delta);
    if degenerate.zero_points(&space) != axis.points(&space) {
        return Err(Error::Construction(
            "zero set of the degenerate member is not the axis".into(),
        ));
    }
    for (m, gram) in grams.iter().enumerate() {
        if gram.perp(&field, &center)? != axis {
            return Err(Error::Construction(format!(
                "center is not polar to the axis under J_{m}"
            )));
        }
    }

    let base_locus: Vec<PointIndex> = space
        .points()
        .filter(|(_, v)| {
            degenerate.eval(&field, v) == 0 && quadrics.iter().all(|qf| qf.eval(&field, v) == 0)
        })
        .map(|(i, _)| i)
        .collect();
    check_base_locus(&space, &quadrics[0], &axis, &center, &base_locus)?;

    let w0 = PolarSpace::build(space.clone(), grams[0].clone())?;
    let j0 = grams[0].gram();
    let elation = j0
        .transpose()
        .inverse(&field)?
        .mul(&field, grams[mu as usize].gram());
    let elation_perm = space
        .points()
        .map(|(_, v)| {
            space
                .index_of(&elation.apply(&field, v))
                .expect("invertible")
        })
        .collect();

    Ok(PencilGeometry {
        config: PencilConfig {
            delta: Some(delta),
            ..config
        },
        delta,
        field,
        quadrics,
        degenerate,
        grams,
        axis,
        center,
        classes,
        base_locus,
        w0,
        elation,
        elation_perm,
    })
}

/// The common zeros form a cone with vertex the center over an elliptic
/// quadric of a complement of the center in the axis.
fn check_base_locus(
    space: &ProjectiveSpace,
    q0: &QuadraticForm,
    axis: &Subspace,
    center: &Subspace,
    base: &[PointIndex],
) -> Result<()> {
    let field = space.field();
    let qq = space.q() as u64;
    let complement: Vec<Vec<Elem>> = {
        let mut current = center.clone();
        let mut out = Vec::new();
        for b in axis.basis() {
            if !current.contains(field, b) {
                current = current.join(
                    field,
                    &Subspace::span(field, space.dim(), std::slice::from_ref(b)),
                )?;
                out.push(b.clone());
            }
        }
        out
    };
    let restricted = q0.restrict(field, &complement);
    let base_class = classify_quadric(field, &restricted)?;
    let k = complement.len();
    let expected_base = nondegenerate_point_count(QuadricKind::Elliptic, k, qq);
    if base_class.kind != QuadricKind::Elliptic
        || base_class.is_degenerate()
        || Some(base_class.points) != expected_base
    {
        return Err(Error::Construction(format!(
            "base of the cone classified as {base_class:?}"
        )));
    }
    let expected = (qq + 1) + qq * qq * base_class.points;
    let center_points = center.points(space);
    if base.len() as u64 != expected
        || !base.iter().all(|&p| axis.contains(field, space.point(p)))
        || !center_points.iter().all(|p| base.binary_search(p).is_ok())
    {
        return Err(Error::Construction(format!(
            "base locus has {} points, expected a cone of {expected}",
            base.len()
        )));
    }
    Ok(())
}

impl PencilGeometry {
    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn space(&self) -> &Arc<ProjectiveSpace> {
        self.w0.space()
    }

    pub fn n(&self) -> usize {
        self.config.n
    }

    pub fn q(&self) -> u32 {
        self.config.q
    }

    pub fn mu(&self) -> Elem {
        self.config.mu
    }

    /// The selected member `Q_μ`.
    pub fn quadric(&self) -> &QuadraticForm {
        &self.quadrics[self.mu() as usize]
    }

    pub fn gram(&self) -> &BilinearForm {
        &self.grams[self.mu() as usize]
    }

    /// `(q^n - 1)/(q - 1)`.
    pub fn expected_m(&self) -> usize {
        point_count(self.n() - 1, self.q() as u64) as usize
    }

    fn require_nonzero_mu(&self) -> Result<()> {
        if self.mu() == 0 {
            return Err(Error::Usage("mu must be non-zero".into()));
        }
        Ok(())
    }

    /// Projective dimension of `g ∩ axis` for a generator given by points.
    fn axis_meet_dimension(&self, g: &[PointIndex]) -> isize {
        let s = self.space().span(g);
        s.meet(&self.field, &self.axis)
            .expect("same ambient")
            .projective_dimension()
    }
}

/// Zero set of `Q_μ` (μ ≠ 0), verified as an m-ovoid of the polar space of
/// `J_0` with `m = (q^n - 1)/(q - 1)`.
pub fn theorem_first_movoid(geom: &PencilGeometry) -> Result<PointSet> {
    geom.require_nonzero_mu()?;
    let points = geom.quadric().zero_points(geom.space());
    let set = PointSet::new(points, geom.w0.num_points())?;
    let m = geom.expected_m();
    let ind = set.indicator(geom.w0.num_points());
    if let Some(g) = geom
        .w0
        .generators()
        .iter()
        .find(|g| g.iter().filter(|&&p| ind[p as usize]).count() != m)
    {
        return Err(Error::Construction(format!(
            "generator {g:?} does not meet Q_mu in {m} points"
        )));
    }
    if is_m_ovoid(&geom.w0, &set) != Some(m) {
        return Err(Error::Construction(format!(
            "zero set of Q_mu is not a {m}-ovoid"
        )));
    }
    Ok(set)
}

/// Matrix identity and point-level behavior of the composed polarities.
pub fn check_commuting_polarities(geom: &PencilGeometry) -> Result<Vec<CheckResult>> {
    geom.require_nonzero_mu()?;
    let f = &geom.field;
    let space = geom.space();
    let n = geom.n();
    let d = space.dim();
    let j0 = geom.grams[0].gram();
    let jm = geom.gram().gram();
    let left = j0.transpose().inverse(f)?.mul(f, jm);
    let right = jm.transpose().inverse(f)?.mul(f, j0);
    let mut expected = Matrix::identity(d);
    expected[(1, 2 * n - 1)] = geom.mu();
    expected[(2, 2 * n)] = geom.mu();
    let mut out = vec![CheckResult::new(
        "elation_matrix",
        left == right && left == expected,
        json!({ "matrix": left.to_rows() }),
    )];

    // (P^{⊥0})^{⊥μ} and (P^{⊥μ})^{⊥0}, computed on subspaces.
    let composed: Vec<(PointIndex, PointIndex, PointIndex)> = (0..space.num_points() as PointIndex)
        .into_par_iter()
        .map(|p| {
            let pt = space.span(&[p]);
            let a = geom
                .gram()
                .perp_unchecked(f, &geom.grams[0].perp_unchecked(f, &pt));
            let b = geom.grams[0].perp_unchecked(f, &geom.gram().perp_unchecked(f, &pt));
            let idx = |s: &Subspace| space.index_of(&s.basis()[0]).expect("point");
            (p, idx(&a), idx(&b))
        })
        .collect();
    let bad = composed
        .iter()
        .find(|&&(p, a, b)| a != b || a != geom.elation_perm[p as usize]);
    out.push(
        CheckResult::new(
            "polarities_commute",
            bad.is_none(),
            json!({ "points": composed.len() }),
        )
        .with_witness(bad.map(|w| format!("point {}: {:?}", w.0, w))),
    );

    let perm = &geom.elation_perm;
    let non_involutive = (0..perm.len()).find(|&p| perm[perm[p] as usize] as usize != p);
    out.push(
        CheckResult::new("elation_involution", non_involutive.is_none(), json!({}))
            .with_witness(non_involutive.map(|p| format!("point {p}"))),
    );

    let fixed: Vec<PointIndex> = (0..perm.len() as PointIndex)
        .filter(|&p| perm[p as usize] == p)
        .collect();
    let axis_points = geom.axis.points(space);
    out.push(CheckResult::new(
        "elation_axis",
        fixed == axis_points,
        json!({ "fixed_points": fixed.len(), "axis_points": axis_points.len() }),
    ));

    let off_center = (0..perm.len() as PointIndex).find(|&p| {
        let through = space
            .span(&[p])
            .join(f, &geom.center)
            .expect("same ambient");
        !through.contains(f, space.point(perm[p as usize]))
    });
    out.push(
        CheckResult::new("elation_center", off_center.is_none(), json!({}))
            .with_witness(off_center.map(|p| format!("point {p}"))),
    );
    Ok(out)
}

/// Greatest number of pairwise disjoint sets.
fn max_disjoint_family(sets: &[Vec<PointIndex>]) -> usize {
    let k = sets.len();
    let words = k.div_ceil(64);
    let mut adj = vec![vec![0u64; words]; k];
    for i in 0..k {
        for j in 0..k {
            if i != j && !sets[i].iter().any(|p| sets[j].binary_search(p).is_ok()) {
                adj[i][j / 64] |= 1 << (j % 64);
            }
        }
    }
    fn count(s: &[u64]) -> usize {
        s.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn grow(adj: &[Vec<u64>], cand: Vec<u64>, size: usize, best: &mut usize) {
        if count(&cand) == 0 {
            *best = (*best).max(size);
            return;
        }
        let mut cand = cand;
        while count(&cand) + size > *best {
            let w = cand.iter().position(|&x| x != 0).expect("non-empty");
            let v = w * 64 + cand[w].trailing_zeros() as usize;
            cand[v / 64] &= !(1 << (v % 64));
            let next: Vec<u64> = cand.iter().zip(&adj[v]).map(|(a, b)| a & b).collect();
            grow(adj, next, size + 1, best);
        }
    }
    let mut all = vec![0u64; words];
    for i in 0..k {
        all[i / 64] |= 1 << (i % 64);
    }
    let mut best = 0;
    grow(&adj, all, 0, &mut best);
    best
}

/// Every check of the pencil construction, each under its own name.
pub fn lemma_suite_pencil(geom: &PencilGeometry) -> Result<LemmaReport> {
    geom.require_nonzero_mu()?;
    let f = &geom.field;
    let space = geom.space().clone();
    let n = geom.n();
    let q = geom.q() as usize;
    let mut report = LemmaReport::new(
        "pencil",
        json!({ "n": n, "q": geom.q(), "mu": geom.mu(), "delta": geom.delta }),
    );
    for c in check_commuting_polarities(geom)? {
        report.push(c);
    }

    // Perps of subspaces of the axis agree under J_0 and J_μ.
    let in_axis: Vec<bool> = space
        .points()
        .map(|(_, v)| geom.axis.contains(f, v))
        .collect();
    let mut checked = 0;
    let mut witness = None;
    for k in 1..=geom.axis.rank() {
        for s in isotropic_subspaces(&space, &[], &|p| in_axis[p as usize], k) {
            let sub = space.span(&s);
            checked += 1;
            if geom.grams[0].perp_unchecked(f, &sub) != geom.gram().perp_unchecked(f, &sub)
                && witness.is_none()
            {
                witness = Some(format!("{s:?}"));
            }
        }
    }
    report.push(
        CheckResult::new(
            "axis_perps_agree",
            witness.is_none(),
            json!({ "subspaces": checked }),
        )
        .with_witness(witness),
    );

    // Generators of W_0 and W_μ: meeting the center iff meeting the axis in
    // at least an (n-1)-space.
    let wmu = PolarSpace::build(space.clone(), geom.gram().clone())?;
    let center_points = geom.center.points(&space);
    let mut witness = None;
    for w in [&geom.w0, &wmu] {
        let bad = w.generators().par_iter().find_any(|g| {
            let meets_center = center_points.iter().any(|p| g.binary_search(p).is_ok());
            meets_center != (geom.axis_meet_dimension(g) >= n as isize - 1)
        });
        if let Some(g) = bad {
            witness.get_or_insert(format!("{g:?}"));
        }
    }
    report.push(
        CheckResult::new(
            "generators_meeting_center",
            witness.is_none(),
            json!({ "w0_generators": geom.w0.generators().len(), "wmu_generators": wmu.generators().len() }),
        )
        .with_witness(witness),
    );

    // Classify generators of W_0 by their meet with the axis.
    let zero_set = geom.quadric().zero_points(&space);
    let on_quadric: Vec<bool> = {
        let mut v = vec![false; space.num_points()];
        for &p in &zero_set {
            v[p as usize] = true;
        }
        v
    };
    struct GenInfo {
        dim: isize,
        shared: bool,
        hits: usize,
        section_ok: bool,
    }
    let infos: Vec<GenInfo> = geom
        .w0
        .generators()
        .par_iter()
        .map(|g| {
            let sub = space.span(g);
            let dim = sub
                .meet(f, &geom.axis)
                .expect("same ambient")
                .projective_dimension();
            let shared = geom.gram().is_totally_isotropic(f, &sub);
            let hits = g.iter().filter(|&&p| on_quadric[p as usize]).count();
            let section_ok =
                dim != n as isize - 2 || transversal_section_ok(geom, &sub, g, &on_quadric);
            GenInfo {
                dim,
                shared,
                hits,
                section_ok,
            }
        })
        .collect();
    let mut by_dim =
        std::collections::BTreeMap::<isize, (usize, std::collections::BTreeSet<usize>)>::new();
    for i in &infos {
        let e = by_dim.entry(i.dim).or_default();
        e.0 += 1;
        e.1.insert(i.hits);
    }
    let dims_ok = by_dim
        .keys()
        .all(|&k| (n as isize - 2..=n as isize).contains(&k));
    let shared_bad = infos
        .iter()
        .position(|i| i.shared != (i.dim >= n as isize - 1));
    report.push(
        CheckResult::new(
            "shared_generators",
            dims_ok && shared_bad.is_none(),
            json!({
                "by_axis_dimension": by_dim.iter().map(|(k, v)| (k.to_string(), v.0)).collect::<std::collections::BTreeMap<_, _>>(),
                "shared": infos.iter().filter(|i| i.shared).count(),
            }),
        )
        .with_witness(shared_bad.map(|i| format!("{:?}", geom.w0.generators()[i]))),
    );
    let section_bad = infos.iter().position(|i| !i.section_ok);
    report.push(
        CheckResult::new(
            "transversal_generator_sections",
            section_bad.is_none(),
            json!({ "transversal_generators": by_dim.get(&(n as isize - 2)).map_or(0, |v| v.0) }),
        )
        .with_witness(section_bad.map(|i| format!("{:?}", geom.w0.generators()[i]))),
    );

    let m = geom.expected_m();
    let per_class_ok = by_dim
        .values()
        .all(|(_, hits)| hits.len() == 1 && hits.contains(&m));
    let set = PointSet::new(zero_set.clone(), space.num_points())?;
    let inferred = is_m_ovoid(&geom.w0, &set);
    let size_ok = set.len() == m * (q.pow(n as u32 + 1) + 1);
    report.push(CheckResult::new(
        "m_ovoid",
        per_class_ok && inferred == Some(m) && size_ok,
        json!({ "m": inferred, "expected_m": m, "size": set.len() }),
    ));
    report.push(CheckResult::new(
        "hyperplane_characterization",
        hyperplane_check(&geom.w0, &set, m),
        json!({ "m": m }),
    ));

    // Totally isotropic lines of W_0.
    let lines = geom.w0.ti_lines();
    let line_info: Vec<(bool, bool, usize)> = lines
        .par_iter()
        .map(|l| {
            let meets_axis = l.iter().any(|&p| in_axis[p as usize]);
            let v = [space.point(l[0]), space.point(l[1])];
            let iso_mu = geom.gram().eval(f, v[0], v[1]) == 0;
            (
                meets_axis,
                iso_mu,
                l.iter().filter(|&&p| on_quadric[p as usize]).count(),
            )
        })
        .collect();
    let bad = line_info.iter().position(|&(a, b, _)| a != b);
    report.push(
        CheckResult::new(
            "isotropic_lines_meeting_axis",
            bad.is_none(),
            json!({ "lines": lines.len() }),
        )
        .with_witness(bad.map(|i| format!("{:?}", lines[i]))),
    );
    let mut meeting = std::collections::BTreeMap::<usize, usize>::new();
    let mut disjoint = std::collections::BTreeMap::<usize, usize>::new();
    for &(a, _, k) in &line_info {
        *if a { &mut meeting } else { &mut disjoint }
            .entry(k)
            .or_default() += 1;
    }
    let all: std::collections::BTreeSet<usize> =
        meeting.keys().chain(disjoint.keys()).copied().collect();
    let spectrum_ok = all == [0, 1, 2, q + 1].into()
        && meeting.keys().all(|&k| k == 1 || k == q + 1)
        && disjoint.keys().all(|&k| k == 0 || k == 2);
    report.push(CheckResult::new(
        "line_spectrum",
        spectrum_ok,
        json!({ "meeting_axis": meeting, "disjoint_from_axis": disjoint }),
    ));

    // Generators of Q_μ totally isotropic for J_0.
    let polar_mu = geom.quadric().polar();
    let quadric_gens = isotropic_subspaces(
        &space,
        &[&polar_mu, &geom.grams[0]],
        &|p| on_quadric[p as usize],
        n,
    );
    let product: u64 = (1..=n.saturating_sub(2))
        .map(|i| (q as u64).pow((n - i) as u32) + 1)
        .product();
    let expected = ((q as u64).pow(n as u32 + 1) + (q as u64).pow(n as u32) + 1) * product;
    report.push(CheckResult::new(
        "isotropic_quadric_generators",
        quadric_gens.len() as u64 == expected,
        json!({ "count": quadric_gens.len(), "expected": expected }),
    ));

    let all_meet_center = quadric_gens
        .iter()
        .all(|g| center_points.iter().any(|p| g.binary_search(p).is_ok()));
    let max_disjoint = max_disjoint_family(&quadric_gens);
    report.push(CheckResult::new(
        "disjoint_quadric_generators",
        all_meet_center && max_disjoint <= q + 1,
        json!({ "max_pairwise_disjoint": max_disjoint, "bound": q + 1, "all_meet_center": all_meet_center }),
    ));
    Ok(report)
}

/// `g ∩ axis` is an (n-2)-space: `g ∩ Q_μ` is a cone with an (n-3)-space
/// vertex over a non-degenerate conic.
fn transversal_section_ok(
    geom: &PencilGeometry,
    sub: &Subspace,
    g: &[PointIndex],
    on_quadric: &[bool],
) -> bool {
    let f = &geom.field;
    let n = geom.n();
    let class = classify_quadric(f, &geom.quadric().restrict(f, sub.basis()));
    let Ok(class) = class else { return false };
    if class.kind != QuadricKind::Parabolic || class.vertex_dimension != n as isize - 3 {
        return false;
    }
    let space = geom.space();
    let vertex: Vec<PointIndex> = g
        .iter()
        .copied()
        .filter(|&p| on_quadric[p as usize] && geom.axis.contains(f, space.point(p)))
        .collect();
    let span = space.span(&vertex);
    vertex.len() as u64 == span.num_points(geom.q() as u64)
        && span.projective_dimension() == n as isize - 3
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadric_polar_is_gram() {
        let f = Field::of_order(4).unwrap();
        for mu in 0..4 {
            assert_eq!(pencil_quadric(3, 2, mu, &f).polar(), pencil_gram(3, mu));
        }
    }

    #[test]
    fn small_pencil_counts() {
        let g = build_pencil(PencilConfig::new(2, 2, 1)).unwrap();
        assert_eq!(g.delta, 1);
        assert!(g.classes.iter().all(|c| c.points == 27));
        assert_eq!(g.axis.points(g.space()).len(), 15);
        assert_eq!(g.degenerate.zero_points(g.space()).len(), 15);
        assert_eq!(g.base_locus.len(), 3);
        assert_eq!(g.center.points(g.space()), g.base_locus);
        assert_eq!(g.grams[1].perp(g.field(), &g.center).unwrap(), g.axis);
        assert_eq!(g.grams[0].perp(g.field(), &g.axis).unwrap(), g.center);
        let axis_meet = g.axis.meet(g.field(), &g.center).unwrap();
        assert_eq!(axis_meet, g.center);
    }

    #[test]
    fn degenerate_member_classification() {
        let f = Field::of_order(2).unwrap();
        let c = classify_quadric(&f, &degenerate_quadric(2, 1)).unwrap();
        assert_eq!(c.kind, QuadricKind::Elliptic);
        assert_eq!(c.vertex_dimension, 3);
        assert_eq!(c.points, 15);
    }

    #[test]
    fn theorem_first_small() {
        let g = build_pencil(PencilConfig::new(2, 2, 1)).unwrap();
        let x = theorem_first_movoid(&g).unwrap();
        assert_eq!(x.len(), 27);
        let zero = build_pencil(PencilConfig::new(2, 2, 0)).unwrap();
        assert!(theorem_first_movoid(&zero).is_err());
    }

    #[test]
    fn config_errors() {
        assert!(build_pencil(PencilConfig::new(1, 2, 1)).is_err());
        assert!(build_pencil(PencilConfig::new(2, 3, 1)).is_err());
        assert!(build_pencil(PencilConfig::new(2, 2, 2)).is_err());
        assert!(build_pencil(PencilConfig {
            delta: Some(0),
            ..PencilConfig::new(2, 2, 1)
        })
        .is_err());
    }

    #[test]
    fn elation_is_identity_plus_two_entries() {
        let g = build_pencil(PencilConfig::new(2, 4, 3)).unwrap();
        let mut expected = Matrix::identity(6);
        expected[(1, 3)] = 3;
        expected[(2, 4)] = 3;
        assert_eq!(g.elation, expected);
        let checks = check_commuting_polarities(&g).unwrap();
        assert!(checks.iter().all(|c| c.passed), "{checks:?}");
    }

    #[test]
    fn disjoint_family_search() {
        let sets = vec![vec![0, 1], vec![2, 3], vec![1, 2], vec![4], vec![0, 4]];
        assert_eq!(max_disjoint_family(&sets), 3);
        assert_eq!(max_disjoint_family(&[]), 0);
    }

    #[test]
    fn lemma_suite_small() {
        let g = build_pencil(PencilConfig::new(2, 2, 1)).unwrap();
        let r = lemma_suite_pencil(&g).unwrap();
        assert!(r.passed(), "{:#?}", r.failures().collect::<Vec<_>>());
        assert_eq!(
            r.get("isotropic_quadric_generators").unwrap().detail["count"],
            13
        );
        assert_eq!(
            r.get("disjoint_quadric_generators").unwrap().detail["max_pairwise_disjoint"],
            3
        );
    }
}
