use ckfield::ckengine::*;
use ckfield::exact::{rat, QVec, Quad};
use ckfield::homcat::{
    build_pair, default_catalog, Candidate, CartanSplit, Catalog, CatalogEntry, Expected, HomogeneousPair, PairSpec,
};
use ckfield::rootsys::{build_root_system, RootType};

fn pair(name: &str) -> HomogeneousPair {
    build_pair(&PairSpec::parse_short(name).unwrap()).unwrap()
}

fn q(v: &[i128]) -> QVec {
    QVec::from_ints(v)
}

fn fast() -> Config {
    Config { samples: 300, witness_budget: 3000, ..Config::default() }
}

#[test]
fn tier1_spin7_line() {
    let p = pair("Spin7/G2");
    let gens = p.model().root_system().weyl_generators(false);
    let r = tier1_weyl_constancy(p.split(), &gens, &q(&[1, 0, 0]), 1000);
    assert!(r.certified());
    assert_eq!(r.h_norm2, Quad::from_ratio(2, 3));
    assert_eq!(r.orbit_size, 6);
}

#[test]
fn tier1_su4_su3() {
    let p = pair("SU4/SU3");
    let gens = p.model().root_system().weyl_generators(false);
    assert!(tier1_weyl_constancy(p.split(), &gens, &q(&[1, 1, -1, -1]), 1000).certified());
    let r = tier1_weyl_constancy(p.split(), &gens, &q(&[3, -1, -1, -1]), 1000);
    let bad = r.violation.expect("violation");
    assert_eq!(bad.first, q(&[3, -1, -1, -1]));
    assert_ne!(bad.first_h_norm2, bad.second_h_norm2);
}

#[test]
fn tier2_examples() {
    let so8 = pair("SO8/SO7");
    let v = so8.model().cartan_element(&[1.0; 4]).unwrap().mat;
    let (t2, _) = sample_orbit(&OrbitProbe::new(&so8, v), 50, 50, 3, 1);
    assert!(t2.max_residual < 1e-9);
    let sp = pair("Sp3/Sp2");
    let v = sp.model().cartan_element(&[1.0, 0.0, 0.0]).unwrap().mat;
    let (t2, _) = sample_orbit(&OrbitProbe::new(&sp, v), 50, 50, 3, 1);
    assert!(t2.max_residual > 1e-2);
}

#[test]
fn tier3_examples() {
    let cases: [(&str, &[f64], bool); 3] = [
        ("SO8/SO7", &[1.0; 4], true),
        ("SU4/Sp2", &[3.0, -1.0, -1.0, -1.0], true),
        ("SU3/SU2", &[2.0, -1.0, -1.0], false),
    ];
    for (name, v, constant) in cases {
        let p = pair(name);
        let v = p.model().cartan_element(v).unwrap().mat;
        let probe = OrbitProbe::new(&p, v);
        let (_, t3) = sample_orbit(&probe, 2000, 0, 3, DEFAULT_SEED);
        let rel = t3.spread() / probe.v_norm2;
        if constant {
            assert!(rel < 1e-9, "{name}: {rel:e}");
        } else {
            assert!(rel > 1e-2, "{name}: {rel:e}");
        }
    }
}

#[test]
fn witness_search_finds_nothing_on_the_sphere() {
    let p = pair("SO8/SO7");
    let v = p.model().cartan_element(&[1.0; 4]).unwrap().mat;
    let probe = OrbitProbe::new(&p, v);
    assert!(witness_search(&probe, 500, 1, 3, &[], 1e-8).is_none());
}

#[test]
fn witness_search_su4_su3() {
    let p = pair("SU4/SU3");
    let v = p.model().cartan_element(&[1.0, 1.0, -1.0, -1.0]).unwrap().mat;
    let probe = OrbitProbe::new(&p, v);
    let w = witness_search(&probe, 3000, 5, 3, &[], 1e-8).unwrap();
    assert!(w.gap() >= 2.0 / 3.0 - 1e-9, "{}", w.gap());
    assert!((probe.f(&w.g1) - w.f1).abs() < 1e-12);
    assert!((probe.f(&w.g2) - w.f2).abs() < 1e-12);
}

#[test]
fn rectangle_examples() {
    let so8 = pair("SO8/SO7");
    let v = q(&[1, 2, 4, 8]);
    assert!(lemma31_rectangle(so8.split(), &v, &q(&[1, -1, 0, 0]), &q(&[0, 0, 1, -1])).unwrap());
    let g2 = pair("Spin7/G2");
    assert!(lemma31_rectangle(g2.split(), &q(&[1, 2, 4]), &q(&[1, -1, 0]), &q(&[1, 1, 0])).unwrap());
}

#[test]
fn ratio_examples() {
    let p = pair("SU4/Sp2");
    let rs = p.model().root_system();
    let l = lemma33_ratios(rs, p.split(), &q(&[3, -1, -1, -1]), p.dim_h(), p.dim_g());
    assert_eq!(l.algebra_ratio, rat(2, 3));
    let p = pair("SO8/SO7");
    let l = lemma33_ratios(p.model().root_system(), p.split(), &q(&[1, 0, 0, 0]), p.dim_h(), p.dim_g());
    assert_eq!((l.cartan_ratio, l.algebra_ratio), (rat(3, 4), rat(3, 4)));
}

#[test]
fn grid_oracle_examples() {
    let b3 = build_root_system(RootType::B, 3).unwrap();
    let split = CartanSplit::from_h_basis(&b3, &[q(&[0, 1, 0]), q(&[0, 0, 1])]);
    let r = prop32_oracle(&b3, &split, 3).unwrap();
    assert!(r.contained(), "{:?}", r.outside);
    // t∩m = ℝe₁ leaves only vectors with equal absolute coordinates.
    assert_eq!(r.survivors, vec![b3.canonical_up_to_scale(&q(&[1, 1, 1]), false).unwrap()]);

    let a3 = build_root_system(RootType::A, 3).unwrap();
    let split = CartanSplit::from_m_basis(&a3, &[q(&[3, -1, -1, -1])]);
    let r = prop32_oracle(&a3, &split, 3).unwrap();
    assert!(r.contained(), "{:?}", r.outside);
    assert_eq!(r.survivors, vec![a3.canonical_up_to_scale(&q(&[1, 1, -1, -1]), false).unwrap()]);

    let d4 = build_root_system(RootType::D, 4).unwrap();
    let split = CartanSplit::from_h_basis(&d4, &[q(&[1, 0, 0, 0]), q(&[0, 1, 0, 0]), q(&[0, 0, 1, 0])]);
    let r = prop32_oracle(&d4, &split, 3).unwrap();
    assert!(r.contained(), "{:?}", r.outside);
    assert_eq!(r.survivors, vec![d4.canonical_up_to_scale(&q(&[1, 1, 1, 1]), true).unwrap()]);
}

#[test]
fn classify_default_catalog() {
    let c = classify(&default_catalog(), &Config::default()).unwrap();
    assert_eq!(c.summary.positive, vec!["SU4/Sp2", "SU6/Sp3", "SO8/SO7", "SO10/SO9", "Spin7/G2"]);
    assert_eq!(c.summary.inconclusive, 0);
    let constant: Vec<(&str, &[String])> = c
        .reports
        .iter()
        .filter(|r| r.verdict == Verdict::Constant)
        .map(|r| (r.pair.as_str(), r.candidate.as_slice()))
        .collect();
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    assert_eq!(
        constant,
        vec![
            ("SU4/Sp2", s(&["3", "-1", "-1", "-1"]).as_slice()),
            ("SU6/Sp3", s(&["5", "-1", "-1", "-1", "-1", "-1"]).as_slice()),
            ("SO8/SO7", s(&["1", "1", "1", "1"]).as_slice()),
            ("SO10/SO9", s(&["1", "1", "1", "1", "1"]).as_slice()),
            ("Spin7/G2", s(&["1", "0", "0"]).as_slice()),
        ]
    );
    for r in &c.reports {
        if ["Sp3/", "Sp4/", "SU3/"].iter().any(|n| r.pair.starts_with(n)) {
            assert_eq!(r.verdict, Verdict::Nonconstant, "{}", r.pair);
        }
        // NONCONSTANT always comes with a witness above the declared gap.
        if r.verdict == Verdict::Nonconstant {
            let w = r.witness.as_ref().unwrap();
            assert!(w.gap.0 > DEFAULT_GAP);
        }
        // CONSTANT needs an exact Weyl pass and a small spread.
        if r.verdict == Verdict::Constant {
            assert!(r.tier1.as_ref().unwrap().pass);
            assert!(r.tier3.as_ref().unwrap().spread.0 < DEFAULT_TOL);
        }
    }
}

#[test]
fn verdicts_do_not_depend_on_the_seed() {
    let cat = default_catalog();
    let a = classify(&cat, &Config::default()).unwrap();
    let b = classify(&cat, &Config { seed: 7, ..Config::default() }).unwrap();
    let verdicts = |c: &Classification| c.reports.iter().map(|r| r.verdict).collect::<Vec<_>>();
    assert_eq!(verdicts(&a), verdicts(&b));
}

#[test]
fn tiers_agree_and_weyl_failures_are_realized() {
    let cat = default_catalog();
    for entry in &cat.entries {
        let p = entry.build().unwrap();
        for c in &entry.candidates {
            let e = evaluate(&p, c, &fast()).unwrap();
            let rel = e.tier3.spread() / c.to_f64().iter().map(|x| x * x).sum::<f64>();
            assert_eq!(e.tier2.max_residual < 1e-8, rel < 1e-8, "{} {c}", entry.name);
            if !e.tier1.pass {
                assert_eq!(e.verdict, Verdict::Nonconstant, "{} {c}", entry.name);
            }
            if e.lemma33.weyl_basis.is_some() && e.lemma33.weyl_constant {
                assert_eq!(e.lemma33.cartan_identity, Some(true), "{} {c}", entry.name);
            }
        }
    }
}

#[test]
fn failing_entries_are_isolated() {
    let mut cat = default_catalog();
    let good = cat.find("SO8/SO7").unwrap().clone();
    let bad = CatalogEntry {
        name: "broken".into(),
        spec: PairSpec::SoSo { big: 8, small: 7 },
        candidates: vec![Candidate::from_ints(&[1, 1])],
        expected: Expected::Unknown,
    };
    cat = Catalog { entries: vec![bad, good] };
    let c = classify(&cat, &fast()).unwrap();
    assert_eq!(c.reports[0].verdict, Verdict::Inconclusive);
    assert!(c.reports[0].note.as_ref().unwrap().starts_with("error:"));
    assert_eq!(c.summary.positive, vec!["SO8/SO7"]);
}

#[test]
fn exceptional_scan_rejects_everything() {
    for ty in [RootType::F4, RootType::E6] {
        let cases = exceptional_exclusion(ty).unwrap();
        assert!(cases.iter().all(|c| c.rejected));
    }
    assert!(exceptional_exclusion(RootType::E7).is_err());
}
