use super::*;

#[test]
fn every_check_passes() {
    let atlas = Atlas::new();
    let results = atlas.run_all();
    assert_eq!(results.len(), Atlas::check_names().len());
    for r in &results {
        assert!(r.passed(), "{} failed: expected {}, computed {}", r.check, r.expected, r.computed);
        assert!(!r.citation.is_empty());
    }
    let names: Vec<&str> = results.iter().map(|r| r.check.as_str()).collect();
    assert_eq!(names, Atlas::check_names());
}

#[test]
fn wrong_top_value_breaks_the_pairing_check() {
    let atlas = Atlas::new();
    let site = Site { constant: "pairing_R32_values".into(), index: 4 };
    let bad = atlas.perturbed(&site, -1).unwrap();
    assert_eq!(bad.integers("pairing_R32_values").unwrap(), vec![78, 45, 26, 15, 8]);
    let r = bad.run_check("pairing_R32").unwrap();
    assert!(!r.passed());
    assert!(r.computed.contains("det -2 is not +-1"), "{}", r.computed);
    assert!(r.computed.contains("w^4 = 9 from det(x) = 3x - 26"), "{}", r.computed);
}

#[test]
fn chirality_report_names_both() {
    let atlas = Atlas::new().with_chirality(Chirality::Odd);
    let r = atlas.run_check("chern_consistency").unwrap();
    assert!(r.passed(), "{}", r.computed);
    assert!(r.computed.contains("odd: consistent"));
    assert!(r.computed.contains("even: consistent"));
    assert!(r.computed.contains("using odd"));
}

#[test]
fn spaces() {
    let atlas = Atlas::new();
    let p = atlas.get_space("P").unwrap();
    match &p.data {
        SpaceData::Ring(r) => {
            assert_eq!(r.relations().len(), 1);
            assert_eq!(r.top_degree(), Some(16));
            assert_eq!(r.context().weights(), &[8]);
        }
        SpaceData::Groups(_) => panic!("P has a ring"),
    }
    assert_eq!(p.classes[0].1.to_json()["p4"], "39*a^2");
    let gr = atlas.get_space("Gr2R9").unwrap();
    let SpaceData::Ring(gr) = &gr.data else { panic!() };
    assert_eq!(gr.relations()[0].to_string(), "e^4 - 2*b");
    let s = atlas.get_space("S").unwrap();
    let SpaceData::Groups(groups) = &s.data else { panic!("S is stored as groups") };
    let shown: Vec<String> = groups.iter().map(|(d, g)| format!("{d}:{g}")).collect();
    assert_eq!(shown, ["0:Z", "8:Z", "16:Z/3", "23:Z", "31:Z"]);
    for name in Atlas::space_names() {
        let e = atlas.get_space(name).unwrap();
        assert!(e.constants.iter().all(|c| !c.citation.is_empty()));
    }
    assert!(matches!(atlas.get_space("T"), Err(AtlasError::UnknownSpace(_))));
}

#[test]
fn constants_round_trip() {
    for c in Atlas::new().constants() {
        let json = serde_json::to_string(c).unwrap();
        let back: Constant = serde_json::from_str(&json).unwrap();
        assert_eq!(&back, c);
        assert!(!c.citation.is_empty());
        for check in &c.checks {
            assert!(Atlas::check_names().contains(&check.as_str()), "{} names {check}", c.id);
        }
    }
}

#[test]
fn unknown_names() {
    let atlas = Atlas::new();
    assert!(matches!(atlas.run_check("nope"), Err(AtlasError::UnknownCheck(_))));
    assert!(atlas.run_checks(&["betti_R_Q", "nope"]).is_err());
    assert!(atlas.perturbed(&Site { constant: "nope".into(), index: 0 }, 1).is_err());
}

#[test]
fn perturbing_a_polynomial_moves_its_leading_coefficient() {
    let atlas = Atlas::new();
    let site = Site { constant: "chern_TcR".into(), index: 3 };
    let moved = atlas.perturbed(&site, 1).unwrap();
    assert_eq!(moved.polynomials("chern_TcR").unwrap()[3].to_string(), "658*t^4 - 6*w");
    let zero = Site { constant: "istar_images".into(), index: 0 };
    assert_eq!(atlas.perturbed(&zero, -1).unwrap().polynomials("istar_images").unwrap()[0].to_string(), "-1");
}
