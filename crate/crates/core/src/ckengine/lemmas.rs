//! Exact checks of the rectangle lemma and the orthogonal-basis ratios.

use crate::exact::{rank as exact_rank, QVec, Quad, Rational};
use crate::homcat::CartanSplit;
use crate::rootsys::{weyl_orbit, RootSystem, RootType, DEFAULT_ORBIT_CAP};

use super::EngineError;

/// Checks `⟨pr_h α, pr_h β⟩ = ⟨pr_m α, pr_m β⟩ = 0` for orthogonal roots with
/// `α(v) ≠ 0 ≠ β(v)`.
pub fn lemma31_rectangle(split: &CartanSplit, v: &QVec, alpha: &QVec, beta: &QVec) -> Result<bool, EngineError> {
    if !alpha.dot(beta).is_zero() {
        return Err(EngineError::Precondition(format!("⟨{alpha}, {beta}⟩ ≠ 0")));
    }
    if alpha.dot(v).is_zero() || beta.dot(v).is_zero() {
        return Err(EngineError::Precondition(format!("{alpha} or {beta} vanishes on {v}")));
    }
    let h = split.project_h(alpha).dot(&split.project_h(beta));
    let m = split.project_m(alpha).dot(&split.project_m(beta));
    Ok(h.is_zero() && m.is_zero())
}

#[derive(Clone, Debug, PartialEq)]
pub struct Lemma33 {
    /// `‖pr_h v‖² / ‖v‖²`
    pub h_ratio: Quad,
    /// `dim(t∩h) / dim t`
    pub cartan_ratio: Rational,
    /// `dim h / dim g`
    pub algebra_ratio: Rational,
    /// Whether `‖pr_h ρv‖²` is constant on the Weyl orbit.
    pub weyl_constant: bool,
    /// An orthogonal basis of `t` inside the Weyl orbit, if one was found.
    pub weyl_basis: Option<Vec<QVec>>,
    /// `v` is a multiple of a single coordinate vector in a type B or D
    /// model, so its adjoint orbit contains an orthogonal basis of `g`.
    pub ad_basis: bool,
    /// `h_ratio = cartan_ratio`, checked when a Weyl basis was found and
    /// the orbit is constant.
    pub cartan_identity: Option<bool>,
    /// `h_ratio = algebra_ratio`, checked when `ad_basis` holds. Only
    /// expected for CK vectors.
    pub algebra_identity: Option<bool>,
}

/// Search budget for the orthogonal basis backtracking.
const BASIS_NODES: usize = 200_000;

/// Exact ratios for `v` under the splitting, given the algebra dimensions.
pub fn lemma33_ratios(rs: &RootSystem, split: &CartanSplit, v: &QVec, dim_h: usize, dim_g: usize) -> Lemma33 {
    let gens = rs.weyl_generators(false);
    let orbit = weyl_orbit(v, &gens, DEFAULT_ORBIT_CAP);
    let base = split.h_norm2(v);
    let weyl_constant = !orbit.truncated && orbit.points.iter().all(|w| split.h_norm2(w) == base);
    let h_ratio = &base * &v.norm2().inverse().expect("nonzero candidate");
    let cartan_ratio = Rational::new(split.dim_h() as i128, split.dim_t() as i128);
    let algebra_ratio = Rational::new(dim_h as i128, dim_g as i128);
    let weyl_basis = orthogonal_basis(&orbit.points, rs.rank());
    let nonzero = v.0.iter().filter(|x| !x.is_zero()).count();
    let ad_basis = matches!(rs.type_label(), RootType::B | RootType::D) && nonzero == 1;
    let cartan_identity = (weyl_basis.is_some() && weyl_constant).then(|| h_ratio == Quad::from_rational(cartan_ratio));
    let algebra_identity = ad_basis.then(|| h_ratio == Quad::from_rational(algebra_ratio));
    Lemma33 {
        h_ratio,
        cartan_ratio,
        algebra_ratio,
        weyl_constant,
        weyl_basis,
        ad_basis,
        cartan_identity,
        algebra_identity,
    }
}

/// Backtracking search for `n` pairwise orthogonal, linearly independent
/// vectors among `points` (up to sign).
pub fn orthogonal_basis(points: &[QVec], n: usize) -> Option<Vec<QVec>> {
    let mut reps: Vec<QVec> = Vec::new();
    for p in points {
        if !reps.contains(&p.neg()) {
            reps.push(p.clone());
        }
    }
    let mut chosen: Vec<usize> = Vec::new();
    let mut nodes = 0;
    if extend(&reps, n, 0, &mut chosen, &mut nodes) {
        let basis: Vec<QVec> = chosen.iter().map(|&i| reps[i].clone()).collect();
        debug_assert_eq!(exact_rank(&basis), n);
        Some(basis)
    } else {
        None
    }
}

fn extend(reps: &[QVec], n: usize, from: usize, chosen: &mut Vec<usize>, nodes: &mut usize) -> bool {
    if chosen.len() == n {
        return true;
    }
    for i in from..reps.len() {
        *nodes += 1;
        if *nodes > BASIS_NODES {
            return false;
        }
        if chosen.iter().all(|&j| reps[j].dot(&reps[i]).is_zero()) {
            chosen.push(i);
            if extend(reps, n, i + 1, chosen, nodes) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::rootsys::build_root_system;

    fn q(v: &[i128]) -> QVec {
        QVec::from_ints(v)
    }

    #[test]
    fn rectangle_on_g2_line() {
        let rs = build_root_system(RootType::B, 3).unwrap();
        let split = CartanSplit::from_m_basis(&rs, &[q(&[1, 1, 1])]);
        let v = q(&[1, 2, 4]);
        assert!(lemma31_rectangle(&split, &v, &q(&[1, -1, 0]), &q(&[1, 1, 0])).unwrap());
    }

    #[test]
    fn rectangle_filters_bad_splitting() {
        let rs = build_root_system(RootType::B, 2).unwrap();
        let split = CartanSplit::from_h_basis(&rs, &[q(&[1, 1])]);
        assert!(!lemma31_rectangle(&split, &q(&[1, 2]), &q(&[1, 0]), &q(&[0, 1])).unwrap());
    }

    #[test]
    fn rectangle_preconditions() {
        let rs = build_root_system(RootType::B, 2).unwrap();
        let split = CartanSplit::from_h_basis(&rs, &[q(&[1, 1])]);
        let v = q(&[1, 2]);
        assert!(lemma31_rectangle(&split, &v, &q(&[1, 0]), &q(&[1, 1])).is_err());
        assert!(lemma31_rectangle(&split, &q(&[0, 1]), &q(&[1, 0]), &q(&[0, 1])).is_err());
    }

    #[test]
    fn ratios_for_line_in_b3() {
        let rs = build_root_system(RootType::B, 3).unwrap();
        let split = CartanSplit::from_m_basis(&rs, &[q(&[1, 1, 1])]);
        let l = lemma33_ratios(&rs, &split, &q(&[1, 0, 0]), 14, 21);
        assert_eq!(l.h_ratio, Quad::from_ratio(2, 3));
        assert_eq!(l.cartan_ratio, rat(2, 3));
        assert_eq!(l.algebra_ratio, rat(2, 3));
        assert!(l.weyl_constant && l.ad_basis);
        assert_eq!(l.cartan_identity, Some(true));
        assert_eq!(l.algebra_identity, Some(true));
    }

    #[test]
    fn ratios_without_constancy() {
        let rs = build_root_system(RootType::D, 4).unwrap();
        let split = CartanSplit::from_m_basis(&rs, &[q(&[0, 0, 0, 1])]);
        let l = lemma33_ratios(&rs, &split, &q(&[1, 0, 0, 0]), 21, 28);
        assert_eq!(l.cartan_ratio, rat(3, 4));
        assert_eq!(l.algebra_ratio, rat(3, 4));
        assert!(!l.weyl_constant);
        assert!(l.weyl_basis.is_some());
        assert_eq!(l.cartan_identity, None);
        assert_eq!(l.algebra_identity, Some(false));
    }

    #[test]
    fn basis_in_a3_orbit() {
        let rs = build_root_system(RootType::A, 3).unwrap();
        let orbit = weyl_orbit(&q(&[1, 1, -1, -1]), &rs.weyl_generators(false), 100);
        let b = orthogonal_basis(&orbit.points, 3).unwrap();
        assert_eq!(exact_rank(&b), 3);
        // (3,-1,-1,-1) has no three mutually orthogonal conjugates.
        let orbit = weyl_orbit(&q(&[3, -1, -1, -1]), &rs.weyl_generators(false), 100);
        assert!(orthogonal_basis(&orbit.points, 3).is_none());
    }
}
