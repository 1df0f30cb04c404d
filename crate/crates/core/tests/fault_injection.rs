//! Moving any stored entry by one must be caught by a check that reads it.

use cohring::atlas::{Atlas, Site};

fn survivors(atlas: &Atlas, sites: &[Site]) -> Vec<String> {
    let mut missed = Vec::new();
    for site in sites {
        let checks = atlas.constant(&site.constant).unwrap().checks.clone();
        let names: Vec<&str> = checks.iter().map(String::as_str).collect();
        for delta in [1, -1] {
            let bad = atlas.perturbed(site, delta).unwrap();
            let results = bad.run_checks(&names).unwrap();
            if results.iter().all(|r| r.passed()) {
                missed.push(format!("{}[{}] {delta:+}", site.constant, site.index));
            } else {
                let failed = results.iter().find(|r| !r.passed()).unwrap();
                assert!(!failed.computed.is_empty(), "{} fails without a diagnostic", failed.check);
            }
        }
    }
    missed
}

#[test]
fn every_entry_is_guarded() {
    let atlas = Atlas::new();
    let sites = atlas.sites();
    assert!(sites.len() > 100);
    let missed = survivors(&atlas, &sites);
    assert!(missed.is_empty(), "undetected perturbations: {missed:?}");
}

#[test]
fn declared_readers_are_the_only_readers() {
    // A perturbed constant must leave checks that do not list it untouched.
    let atlas = Atlas::new();
    let baseline = atlas.run_all();
    for site in atlas.sites().iter() {
        let readers = &atlas.constant(&site.constant).unwrap().checks;
        let bad = atlas.perturbed(site, 1).unwrap();
        let others: Vec<&str> = Atlas::check_names().into_iter().filter(|n| !readers.iter().any(|r| r == n)).collect();
        for r in bad.run_checks(&others).unwrap() {
            let before = baseline.iter().find(|b| b.check == r.check).unwrap();
            assert_eq!((&r.status, &r.computed), (&before.status, &before.computed), "{} changed when {} moved", r.check, site.constant);
        }
    }
}
