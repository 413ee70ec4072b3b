use movoid::glued::{
    build_glued, lemma_suite_glued, orbit_s_gamma, theorem_second_movoid, GluedConfig,
};

#[test]
fn glued_q4_suite() {
    let g = build_glued(GluedConfig::new(4)).unwrap();
    assert_eq!(g.space().num_points(), 1365);
    assert_eq!(g.group.order(), 4080);
    assert_eq!(g.quadric_points.len(), 85);
    assert_eq!(g.spread.len(), 17);
    assert_eq!(orbit_s_gamma(&g).unwrap().len(), 240);
    assert_eq!(theorem_second_movoid(&g).unwrap().len(), 325);
    let r = lemma_suite_glued(&g).unwrap();
    assert!(r.passed(), "{:#?}", r.failures().collect::<Vec<_>>());
}
