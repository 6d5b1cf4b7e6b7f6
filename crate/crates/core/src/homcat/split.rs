use crate::exact::{projector, row_basis, QMat, QVec, Quad};
use crate::rootsys::RootSystem;

/// An exact orthogonal splitting `t = (t∩h) ⊕ (t∩m)` in Cartan coordinates.
///
/// `p_t` projects the coordinate space onto `t` (the identity except for
/// type A, where `t` is the zero-sum hyperplane) and `p_h` onto `t∩h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanSplit {
    p_t: QMat,
    p_h: QMat,
}

impl CartanSplit {
    /// Splitting with `t∩h` spanned by `h_basis`.
    pub fn from_h_basis(rs: &RootSystem, h_basis: &[QVec]) -> Self {
        let n = rs.coord_dim();
        CartanSplit { p_t: projector(rs.roots(), n), p_h: projector(h_basis, n) }
    }

    /// Splitting with `t∩m` spanned by `m_basis`.
    pub fn from_m_basis(rs: &RootSystem, m_basis: &[QVec]) -> Self {
        let n = rs.coord_dim();
        let p_t = projector(rs.roots(), n);
        let p_h = p_t.sub(&projector(m_basis, n));
        CartanSplit { p_t, p_h }
    }

    /// Splitting from an exact projector onto `t∩h`; `None` unless it is a
    /// symmetric idempotent inside `t`.
    pub fn from_projector(rs: &RootSystem, p_h: QMat) -> Option<Self> {
        let p_t = projector(rs.roots(), rs.coord_dim());
        let ok = p_h.dim() == rs.coord_dim() && p_h.is_symmetric() && p_h.mul(&p_h) == p_h && p_t.mul(&p_h) == p_h;
        ok.then_some(CartanSplit { p_t, p_h })
    }

    pub fn p_h(&self) -> &QMat {
        &self.p_h
    }

    pub fn p_m(&self) -> QMat {
        self.p_t.sub(&self.p_h)
    }

    pub fn project_h(&self, v: &QVec) -> QVec {
        self.p_h.apply(v)
    }

    pub fn project_m(&self, v: &QVec) -> QVec {
        self.p_t.apply(v).sub(&self.p_h.apply(v))
    }

    /// `‖pr_{t∩h} v‖²`.
    pub fn h_norm2(&self, v: &QVec) -> Quad {
        v.dot(&self.p_h.apply(v))
    }

    /// `‖pr_{t∩m} v‖²`.
    pub fn m_norm2(&self, v: &QVec) -> Quad {
        let pm = self.project_m(v);
        pm.dot(&pm)
    }

    pub fn dim_t(&self) -> usize {
        trace_dim(&self.p_t)
    }

    pub fn dim_h(&self) -> usize {
        trace_dim(&self.p_h)
    }

    pub fn dim_m(&self) -> usize {
        self.dim_t() - self.dim_h()
    }

    /// Canonical (row-reduced) basis of `t∩h`.
    pub fn h_basis(&self) -> Vec<QVec> {
        row_basis(&rows(&self.p_h))
    }

    /// Canonical (row-reduced) basis of `t∩m`.
    pub fn m_basis(&self) -> Vec<QVec> {
        row_basis(&rows(&self.p_m()))
    }

    /// The splitting after the coordinate sign change `e_i ↦ signs[i]·e_i`.
    pub(crate) fn flip_signs(&self, signs: &[i128]) -> Self {
        let n = self.p_h.dim();
        let f = |m: &QMat| {
            QMat::from_rows(
                (0..n)
                    .map(|i| QVec((0..n).map(|j| m.get(i, j).scale((signs[i] * signs[j]).into())).collect()))
                    .collect(),
            )
        };
        CartanSplit { p_t: f(&self.p_t), p_h: f(&self.p_h) }
    }
}

fn rows(m: &QMat) -> Vec<QVec> {
    (0..m.dim()).map(|i| m.row(i).clone()).collect()
}

fn trace_dim(p: &QMat) -> usize {
    let t = p.trace().as_rational().expect("projector trace is rational");
    assert!(t.is_integer(), "projector trace is an integer");
    t.to_integer() as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::rootsys::{build_root_system, RootType};

    #[test]
    fn type_a_hyperplane() {
        let a3 = build_root_system(RootType::A, 3).unwrap();
        let s = CartanSplit::from_m_basis(&a3, &[QVec::from_ints(&[3, -1, -1, -1])]);
        assert_eq!((s.dim_t(), s.dim_h(), s.dim_m()), (3, 2, 1));
        let v = QVec::from_ints(&[1, 1, -1, -1]);
        assert_eq!(s.m_norm2(&v), Quad::from_ratio(4, 3));
        assert_eq!(s.h_norm2(&v), Quad::from_ratio(8, 3));
        assert_eq!(s.project_h(&QVec::from_ints(&[1, 1, 1, 1])), QVec::zeros(4));
    }

    #[test]
    fn projector_validation() {
        let b3 = build_root_system(RootType::B, 3).unwrap();
        let s = CartanSplit::from_m_basis(&b3, &[QVec::from_ints(&[1, 1, 1])]);
        assert_eq!(s.p_h().get(0, 0), &Quad::from_rational(rat(2, 3)));
        assert!(CartanSplit::from_projector(&b3, s.p_h().clone()).is_some());
        assert!(CartanSplit::from_projector(&b3, QMat::identity(3).sub(&QMat::identity(3)).sub(&QMat::identity(3)))
            .is_none());
    }
}
