//! Exact constancy of `‖pr_h ρv‖²` over a Weyl orbit.

use crate::exact::{QVec, Quad};
use crate::homcat::CartanSplit;
use crate::rootsys::{weyl_orbit, Generator, Orbit};

/// Two orbit members with different projected norms.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub first: QVec,
    pub second: QVec,
    pub first_h_norm2: Quad,
    pub second_h_norm2: Quad,
    /// Generator indices carrying `v` to `first`, in application order.
    pub first_word: Vec<usize>,
    pub second_word: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tier1Result {
    pub pass: bool,
    pub truncated: bool,
    pub orbit_size: usize,
    /// `‖pr_{t∩h} v‖²` at the seed vector.
    pub h_norm2: Quad,
    pub m_norm2: Quad,
    pub violation: Option<Violation>,
}

impl Tier1Result {
    /// A pass that can be trusted, i.e. the orbit was fully enumerated.
    pub fn certified(&self) -> bool {
        self.pass && !self.truncated
    }
}

/// Enumerates the orbit of `v` under `generators` and compares
/// `‖pr_{t∩h} ρv‖²` exactly at every member.
pub fn tier1_weyl_constancy(split: &CartanSplit, generators: &[Generator], v: &QVec, cap: usize) -> Tier1Result {
    let orbit: Orbit = weyl_orbit(v, generators, cap);
    let base = split.h_norm2(v);
    let m_norm2 = split.m_norm2(v);
    let mut violation = None;
    for (i, w) in orbit.points.iter().enumerate().skip(1) {
        let val = split.h_norm2(w);
        if val != base {
            violation = Some(Violation {
                first: v.clone(),
                second: w.clone(),
                first_h_norm2: base.clone(),
                second_h_norm2: val,
                first_word: Vec::new(),
                second_word: orbit.word(i),
            });
            break;
        }
    }
    Tier1Result {
        pass: violation.is_none(),
        truncated: orbit.truncated,
        orbit_size: orbit.points.len(),
        h_norm2: base,
        m_norm2,
        violation,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, RootType};

    fn q(v: &[i128]) -> QVec {
        QVec::from_ints(v)
    }

    #[test]
    fn a3_line_splitting() {
        let rs = build_root_system(RootType::A, 3).unwrap();
        let split = CartanSplit::from_m_basis(&rs, &[q(&[3, -1, -1, -1])]);
        let gens = rs.weyl_generators(false);
        let r = tier1_weyl_constancy(&split, &gens, &q(&[1, 1, -1, -1]), 1000);
        assert!(r.certified());
        assert_eq!(r.orbit_size, 6);
        let r = tier1_weyl_constancy(&split, &gens, &q(&[3, -1, -1, -1]), 1000);
        assert!(!r.pass);
        let bad = r.violation.unwrap();
        assert_ne!(bad.first_h_norm2, bad.second_h_norm2);
        let mut w = bad.first.clone();
        for &g in &bad.second_word {
            w = gens[g].apply(&w);
        }
        assert_eq!(w, bad.second);
    }

    #[test]
    fn truncation_is_not_a_pass() {
        let rs = build_root_system(RootType::B, 3).unwrap();
        let split = CartanSplit::from_h_basis(&rs, &[q(&[1, 0, 0])]);
        let r = tier1_weyl_constancy(&split, &rs.weyl_generators(false), &q(&[1, 1, 1]), 3);
        assert!(r.truncated);
        assert!(!r.certified());
    }
}
