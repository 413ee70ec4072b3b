use std::sync::Arc;

use movoid::forms::BilinearForm;
use movoid::gf::{ExtensionPair, Field};
use movoid::pointfile::{PointFile, SpaceKind};
use movoid::polar::{IncidenceSystem, PolarSpace};
use movoid::projgeom::{PointIndex, ProjectiveSpace, Subspace};
use movoid::verify::PointSet;
use proptest::prelude::*;

const ORDERS: [u32; 4] = [2, 4, 8, 16];

#[test]
fn field_axioms_exhaustive() {
    for q in ORDERS {
        let f = Field::of_order(q).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, a), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
                assert_eq!(f.pow(a, q as u64 - 1), 1);
            }
            for b in f.elements() {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in f.elements() {
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
        assert!(f.checked_inv(0).is_err());
    }
}

#[test]
fn square_roots_and_traces() {
    for q in ORDERS {
        let f = Field::of_order(q).unwrap();
        let mut ones = 0;
        for a in f.elements() {
            let r = f.sqrt(a);
            assert_eq!(f.mul(r, r), a);
            let t = f.absolute_trace(a);
            assert!(t <= 1);
            ones += t as usize;
            assert_eq!(f.absolute_trace(f.mul(a, a)), t);
            for b in f.elements() {
                assert_eq!(f.absolute_trace(f.add(a, b)), t ^ f.absolute_trace(b));
            }
        }
        // trace is onto GF(2): half the elements have trace 1
        assert_eq!(ones, q as usize / 2);
    }
}

#[test]
fn extension_conjugation_and_relative_trace() {
    for q in ORDERS {
        let pair = ExtensionPair::new(q).unwrap();
        let (base, ext) = (&pair.base, &pair.ext);
        for a in base.elements() {
            assert_eq!(pair.project(pair.embed(a)), Some(a));
            for b in base.elements() {
                assert_eq!(
                    pair.embed(base.mul(a, b)),
                    ext.mul(pair.embed(a), pair.embed(b))
                );
            }
        }
        let mut hits = vec![0usize; q as usize];
        for x in ext.elements() {
            let c = pair.conj(x);
            assert_eq!(pair.conj(c), x);
            assert_eq!(c, ext.pow(x, q as u64));
            assert_eq!(pair.in_base(x), c == x);
            let t = pair.relative_trace(x);
            assert_eq!(pair.embed(t), ext.add(x, c));
            hits[t as usize] += 1;
        }
        // the relative trace is onto with fibres of size q
        assert!(hits.iter().all(|&h| h == q as usize));
    }
}

#[test]
fn perp_is_an_involution_on_every_subspace_of_pg32() {
    let w = PolarSpace::standard(1, 2).unwrap();
    let ps = w.space();
    let f = ps.field();
    let n = ps.num_points() as PointIndex;
    let mut seen = std::collections::BTreeSet::new();
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                let s = ps.span(&[a, b, c]);
                let p = w.perp(&s);
                assert_eq!(s.rank() + p.rank(), 4);
                assert_eq!(w.perp(&p), s);
                assert!(
                    s.contains_subspace(f, &p)
                        == (s.rank() >= 2 && w.form().is_totally_isotropic(f, &p))
                );
                seen.insert(s.basis().to_vec());
            }
        }
    }
    // 15 points, 35 lines, 15 planes
    assert_eq!(seen.len(), 15 + 35 + 15);
}

fn pg5() -> (Arc<Field>, BilinearForm) {
    (Field::of_order(2).unwrap(), BilinearForm::standard(6))
}

proptest! {
    #[test]
    fn perp_is_an_involution_on_sampled_subspaces_of_pg52(vectors in prop::collection::vec(prop::collection::vec(0u8..2, 6), 0..6)) {
        let (f, form) = pg5();
        let s = Subspace::span(&f, 6, &vectors);
        let p = form.perp(&f, &s).unwrap();
        prop_assert_eq!(s.rank() + p.rank(), 6);
        prop_assert_eq!(form.perp(&f, &p).unwrap(), s);
    }

    #[test]
    fn points_round_trip_through_their_index(q in prop::sample::select(vec![2u32, 4, 8]), n in 1usize..4, seed in any::<u64>(), scale in 0u8..8) {
        let f = Field::of_order(q).unwrap();
        let ps = ProjectiveSpace::new(f.clone(), n).unwrap();
        let i = (seed % ps.num_points() as u64) as PointIndex;
        let v = ps.point(i).to_vec();
        prop_assert_eq!(ps.index_of(&v), Some(i));
        let lambda = 1 + scale % (q as u8 - 1);
        let scaled: Vec<u8> = v.iter().map(|&c| f.mul(c, lambda)).collect();
        prop_assert_eq!(ps.index_of(&scaled), Some(i));
        prop_assert_eq!(ps.normalize(&scaled), Some(v));
    }

    #[test]
    fn point_files_round_trip(members in prop::collection::btree_set(0 as PointIndex..63, 0..63)) {
        let w = PolarSpace::standard(2, 2).unwrap();
        let set = PointSet::new(members.into_iter().collect(), 63).unwrap();
        let file = PointFile::new(SpaceKind::Standard, &w, &set);
        let back = PointFile::from_json(&file.to_json().unwrap()).unwrap();
        prop_assert_eq!(back.to_point_set(&w).unwrap(), set);
    }
}

#[test]
fn incidence_text_round_trips() {
    for (n, q) in [(1, 2), (1, 4), (2, 2)] {
        let w = PolarSpace::standard(n, q).unwrap();
        let inc = w.incidence();
        let text = inc.to_text();
        assert_eq!(IncidenceSystem::from_text(&text).unwrap(), inc);
        assert_eq!(IncidenceSystem::from_text(&text).unwrap().to_text(), text);
        let total: usize = inc.row_sums().iter().sum();
        assert_eq!(total, inc.columns.iter().map(Vec::len).sum::<usize>());
    }
}
