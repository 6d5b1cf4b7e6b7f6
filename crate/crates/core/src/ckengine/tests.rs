use super::*;
use crate::homcat::{build_pair, PairSpec};

fn pair(name: &str) -> HomogeneousPair {
    build_pair(&PairSpec::parse_short(name).unwrap()).unwrap()
}

fn quick() -> Config {
    Config { samples: 200, witness_budget: 2000, ..Config::default() }
}

#[test]
fn first_order_residual_matches_direct_sum() {
    let p = pair("Sp3/Sp2");
    let v = p.model().cartan_element(&[1.0, 0.0, 0.0]).unwrap().mat;
    let probe = OrbitProbe::new(&p, v);
    for k in 1..4 {
        let g = sampling::sample_element(&p, 3, k, 2);
        let x = probe.point(&g);
        let a = probe.first_order_residual(&x);
        let b = probe.first_order_residual_direct(&x);
        assert!((a - b).abs() < 1e-12, "{a} {b}");
    }
}

#[test]
fn realized_words_act_like_the_orbit() {
    let p = pair("SU4/SU3");
    let gens = p.model().root_system().weyl_generators(false);
    let v = QVec::from_ints(&[3, -1, -1, -1]);
    let orbit = crate::rootsys::weyl_orbit(&v, &gens, 100);
    let x = p.model().cartan_element(&v.to_f64()).unwrap().mat;
    for i in 0..orbit.points.len() {
        let g = realize_word(&p, &gens, &orbit.word(i)).unwrap();
        let y = crate::matmodel::adjoint_raw(&g, &x);
        let want = p.model().cartan_element(&orbit.points[i].to_f64()).unwrap().mat;
        assert!((y - want).amax() < 1e-10);
    }
}

#[test]
fn sphere_is_constant() {
    let p = pair("SO8/SO7");
    let e = evaluate(&p, &Candidate::from_ints(&[1, 1, 1, 1]), &quick()).unwrap();
    assert_eq!(e.verdict, Verdict::Constant);
    assert!(e.witness.is_none());
    assert!(e.tier2.max_residual < 1e-9);
}

#[test]
fn sp_line_fails_first_order() {
    let p = pair("Sp3/Sp2");
    let e = evaluate(&p, &Candidate::from_ints(&[1, 0, 0]), &quick()).unwrap();
    assert!(e.tier2.max_residual > 1e-2);
    assert!(!e.tier1.pass);
    assert_eq!(e.verdict, Verdict::Nonconstant);
    let w = e.witness.unwrap();
    assert!(w.gap() >= 1.0 - 1e-9);
    let r = e.report.witness.unwrap();
    assert_eq!(r.source, "weyl");
}

#[test]
fn undersampling_is_inconclusive() {
    let p = pair("SO8/SO7");
    let cfg = Config { samples: 10, ..quick() };
    let e = evaluate(&p, &Candidate::from_ints(&[1, 1, 1, 1]), &cfg).unwrap();
    assert_eq!(e.verdict, Verdict::Inconclusive);
    assert!(e.report.note.unwrap().contains("too few"));
}

#[test]
fn invalid_config_and_candidate() {
    let p = pair("SO8/SO7");
    let bad = Config { tol: 0.0, ..quick() };
    assert!(matches!(evaluate(&p, &Candidate::from_ints(&[1, 0, 0, 0]), &bad), Err(EngineError::Config(_))));
    assert!(matches!(
        evaluate(&p, &Candidate::from_ints(&[1, 0, 0]), &quick()),
        Err(EngineError::Pair(PairError::Candidate(_)))
    ));
}

#[test]
fn report_round_trips() {
    let p = pair("Sp3/Sp2");
    let r = verify(&p, &Candidate::from_ints(&[1, 0, 0]), &quick()).unwrap();
    let line = r.to_json_line();
    assert!(!line.contains('\n'));
    let back = VerdictReport::from_json_line(&line).unwrap();
    assert_eq!(back, r);
    assert_eq!(back.to_json_line(), line);
}
