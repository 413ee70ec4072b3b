use movoid::pencil::{build_pencil, lemma_suite_pencil, theorem_first_movoid, PencilConfig};

fn suite_passes(n: usize, q: u32, mu: u8) -> serde_json::Value {
    let g = build_pencil(PencilConfig::new(n, q, mu)).unwrap();
    let x = theorem_first_movoid(&g).unwrap();
    let m = g.expected_m();
    assert_eq!(x.len(), m * (q.pow(n as u32 + 1) as usize + 1));
    let r = lemma_suite_pencil(&g).unwrap();
    assert!(r.passed(), "{:#?}", r.failures().collect::<Vec<_>>());
    serde_json::to_value(&r).unwrap()
}

#[test]
fn pencil_n3_q2() {
    let g = build_pencil(PencilConfig::new(3, 2, 1)).unwrap();
    assert_eq!(g.base_locus.len(), 23);
    assert_eq!(g.classes[1].points, 119);
    let r = suite_passes(3, 2, 1);
    let gens = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "isotropic_quadric_generators")
        .unwrap();
    assert_eq!(gens["detail"]["count"], 125);
}

#[test]
fn pencil_n2_q4_every_mu() {
    for mu in 1..4 {
        let r = suite_passes(2, 4, mu);
        let gens = r["checks"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["name"] == "isotropic_quadric_generators")
            .unwrap();
        assert_eq!(gens["detail"]["count"], 81);
    }
}
