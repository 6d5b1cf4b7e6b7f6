//! Real matrix models of the classical compact Lie algebras.
//!
//! `su(n+1)` is embedded in `so(2n+2)` by replacing each complex entry
//! `a + bi` with the block `[[a, b], [-b, a]]`; `sp(n)` goes through `2×2`
//! complex blocks and then the same real embedding into `so(4n)`. Every
//! algebra element is therefore a real skew-symmetric matrix and every group
//! element a real orthogonal one.
//!
//! The inner product is `⟨X, Y⟩ = -c·tr(XY)` with `c` chosen so that the
//! Cartan generators `e_i` are orthonormal.

mod expm;

pub use expm::expm;

use nalgebra::{DMatrix, DVector};
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use thiserror::Error;

use crate::exact::{rat, QVec, Rational};
use crate::rootsys::{build_root_system, RootError, RootSystem, RootType};

/// Tolerance for group membership checks.
pub const GROUP_TOL: f64 = 1e-10;

/// Number of multiplications between polar re-orthonormalisations.
const REORTHO_EVERY: usize = 16;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("no matrix model for type {0}")]
    Unsupported(RootType),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("elements belong to different models ({0} vs {1})")]
    ModelMismatch(String, String),
    #[error("{0} is not a root")]
    NotARoot(String),
    #[error("index {index} out of range (dimension {dim})")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Identifies the model an element belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModelTag {
    pub ty: RootType,
    pub rank: usize,
}

impl std::fmt::Display for ModelTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{}", self.ty, self.rank)
    }
}

/// An element of a Lie algebra model.
#[derive(Clone, Debug, PartialEq)]
pub struct MatElem {
    pub mat: DMatrix<f64>,
    pub tag: ModelTag,
}

/// An element of the compact group of a model.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElem {
    pub mat: DMatrix<f64>,
    pub tag: ModelTag,
}

impl GroupElem {
    pub fn mul(&self, other: &GroupElem) -> Result<GroupElem, ModelError> {
        same(self.tag, other.tag)?;
        Ok(GroupElem { mat: &self.mat * &other.mat, tag: self.tag })
    }

    pub fn inverse(&self) -> GroupElem {
        GroupElem { mat: self.mat.transpose(), tag: self.tag }
    }

    /// `max |g gᵀ - I|`.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.mat.nrows();
        (&self.mat * self.mat.transpose() - DMatrix::<f64>::identity(n, n)).amax()
    }

    pub fn is_in_group(&self) -> bool {
        self.orthogonality_defect() < GROUP_TOL
    }
}

fn same(a: ModelTag, b: ModelTag) -> Result<(), ModelError> {
    if a == b {
        Ok(())
    } else {
        Err(ModelError::ModelMismatch(a.to_string(), b.to_string()))
    }
}

/// A root-plane pair: the positive root and an orthonormal basis of its plane.
#[derive(Clone, Debug)]
pub struct RootPlane {
    pub root: QVec,
    pub span: [DMatrix<f64>; 2],
}

/// A concrete matrix model of a classical compact Lie algebra.
#[derive(Clone, Debug)]
pub struct AlgebraModel {
    tag: ModelTag,
    size: usize,
    inner_scale: Rational,
    c: f64,
    roots: RootSystem,
    cartan: Vec<DMatrix<f64>>,
    cartan_onb: Vec<DMatrix<f64>>,
    planes: Vec<RootPlane>,
    basis: Vec<DMatrix<f64>>,
    /// Row `k` maps a column-major flattened matrix to `⟨X, B_k⟩`.
    coord_rows: DMatrix<f64>,
}

fn unit(n: usize, i: usize, j: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    m[(i, j)] = 1.0;
    m
}

fn skew(n: usize, i: usize, j: usize) -> DMatrix<f64> {
    unit(n, i, j) - unit(n, j, i)
}

/// Real embedding of a complex `n×n` matrix given by `(row, col, re, im)`
/// entries.
pub fn complex_embed(n: usize, entries: &[(usize, usize, f64, f64)]) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    for &(p, q, a, b) in entries {
        m[(2 * p, 2 * q)] += a;
        m[(2 * p, 2 * q + 1)] += b;
        m[(2 * p + 1, 2 * q)] -= b;
        m[(2 * p + 1, 2 * q + 1)] += a;
    }
    m
}

/// Recovers the complex entries `(re, im)` of a real-embedded matrix.
pub fn complex_entries(m: &DMatrix<f64>) -> Vec<Vec<(f64, f64)>> {
    let n = m.nrows() / 2;
    (0..n).map(|p| (0..n).map(|q| (m[(2 * p, 2 * q)], m[(2 * p, 2 * q + 1)])).collect()).collect()
}

/// Real embedding of a quaternionic `n×n` matrix given by
/// `(row, col, [w, x, y, z])` entries for `w + x𝐢 + y𝐣 + z𝐤`.
pub fn quaternion_embed(n: usize, entries: &[(usize, usize, [f64; 4])]) -> DMatrix<f64> {
    let mut cx = Vec::new();
    for &(p, q, [w, x, y, z]) in entries {
        // w + x𝐢 + y𝐣 + z𝐤 ↦ [[w + x i, y + z i], [-y + z i, w - x i]]
        cx.push((2 * p, 2 * q, w, x));
        cx.push((2 * p, 2 * q + 1, y, z));
        cx.push((2 * p + 1, 2 * q, -y, z));
        cx.push((2 * p + 1, 2 * q + 1, w, -x));
    }
    complex_embed(2 * n, &cx)
}

/// Builds the matrix model for a classical type.
pub fn build_algebra(ty: RootType, rank: usize) -> Result<AlgebraModel, ModelError> {
    if !ty.is_classical() {
        return Err(ModelError::Unsupported(ty));
    }
    let roots = build_root_system(ty, rank)?;
    let n = rank;
    let s2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut planes: Vec<RootPlane> = Vec::new();
    let (size, inner_scale, cartan) = match ty {
        RootType::A => {
            let m = n + 1;
            let cartan: Vec<_> = (0..m).map(|i| complex_embed(m, &[(i, i, 0.0, 1.0)])).collect();
            for i in 0..m {
                for j in i + 1..m {
                    let x1 = complex_embed(m, &[(i, j, 1.0, 0.0), (j, i, -1.0, 0.0)]) * s2;
                    let x2 = complex_embed(m, &[(i, j, 0.0, 1.0), (j, i, 0.0, 1.0)]) * s2;
                    let mut r = QVec::zeros(m);
                    r.0[i] = 1.into();
                    r.0[j] = (-1).into();
                    planes.push(RootPlane { root: r, span: [x1, x2] });
                }
            }
            (2 * m, rat(1, 2), cartan)
        }
        RootType::B | RootType::D => {
            let (size, off) = if ty == RootType::B { (2 * n + 1, 1) } else { (2 * n, 0) };
            let a = |i: usize| 2 * i + off;
            let b = |i: usize| 2 * i + off + 1;
            let cartan: Vec<_> = (0..n).map(|i| skew(size, a(i), b(i))).collect();
            for i in 0..n {
                for j in i + 1..n {
                    let mut r = QVec::zeros(n);
                    r.0[i] = 1.into();
                    r.0[j] = (-1).into();
                    let x1 = (skew(size, a(i), a(j)) + skew(size, b(i), b(j))) * s2;
                    let x2 = (skew(size, a(i), b(j)) + skew(size, a(j), b(i))) * s2;
                    planes.push(RootPlane { root: r.clone(), span: [x1, x2] });
                    r.0[j] = 1.into();
                    let x1 = (skew(size, a(i), a(j)) - skew(size, b(i), b(j))) * s2;
                    let x2 = (skew(size, a(i), b(j)) + skew(size, b(i), a(j))) * s2;
                    planes.push(RootPlane { root: r, span: [x1, x2] });
                }
                if ty == RootType::B {
                    let r = QVec::unit(n, i);
                    planes.push(RootPlane { root: r, span: [skew(size, a(i), 0), skew(size, b(i), 0)] });
                }
            }
            (size, rat(1, 2), cartan)
        }
        RootType::C => {
            let q = |entries: &[(usize, usize, [f64; 4])]| quaternion_embed(n, entries);
            let cartan: Vec<_> = (0..n).map(|i| q(&[(i, i, [0.0, 1.0, 0.0, 0.0])])).collect();
            for i in 0..n {
                for j in i + 1..n {
                    let mut r = QVec::zeros(n);
                    r.0[i] = 1.into();
                    r.0[j] = (-1).into();
                    let x1 = q(&[(i, j, [1.0, 0.0, 0.0, 0.0]), (j, i, [-1.0, 0.0, 0.0, 0.0])]) * s2;
                    let x2 = q(&[(i, j, [0.0, 1.0, 0.0, 0.0]), (j, i, [0.0, 1.0, 0.0, 0.0])]) * s2;
                    planes.push(RootPlane { root: r.clone(), span: [x1, x2] });
                    r.0[j] = 1.into();
                    let x1 = q(&[(i, j, [0.0, 0.0, 1.0, 0.0]), (j, i, [0.0, 0.0, 1.0, 0.0])]) * s2;
                    let x2 = q(&[(i, j, [0.0, 0.0, 0.0, 1.0]), (j, i, [0.0, 0.0, 0.0, 1.0])]) * s2;
                    planes.push(RootPlane { root: r, span: [x1, x2] });
                }
                let mut r = QVec::zeros(n);
                r.0[i] = 2.into();
                let x1 = q(&[(i, i, [0.0, 0.0, 1.0, 0.0])]);
                let x2 = q(&[(i, i, [0.0, 0.0, 0.0, 1.0])]);
                planes.push(RootPlane { root: r, span: [x1, x2] });
            }
            (4 * n, rat(1, 4), cartan)
        }
        _ => unreachable!(),
    };
    planes.sort_by(|x, y| x.root.cmp(&y.root));
    let c = inner_scale.to_f64().expect("small rational");
    let cartan_onb: Vec<DMatrix<f64>> = if ty == RootType::A {
        // (e_1 + … + e_k - k e_{k+1}) / √(k(k+1))
        (1..=n)
            .map(|k| {
                let mut m = &cartan[k] * -(k as f64);
                for e in &cartan[..k] {
                    m += e;
                }
                m / ((k * (k + 1)) as f64).sqrt()
            })
            .collect()
    } else {
        cartan.clone()
    };
    let mut basis = cartan_onb.clone();
    for p in &planes {
        basis.extend(p.span.iter().cloned());
    }
    let coord_rows = DMatrix::from_fn(basis.len(), size * size, |k, idx| {
        let (i, j) = (idx % size, idx / size);
        -c * basis[k][(j, i)]
    });
    Ok(AlgebraModel {
        tag: ModelTag { ty, rank },
        size,
        inner_scale,
        c,
        roots,
        cartan,
        cartan_onb,
        planes,
        basis,
        coord_rows,
    })
}

impl AlgebraModel {
    pub fn tag(&self) -> ModelTag {
        self.tag
    }

    pub fn root_type(&self) -> RootType {
        self.tag.ty
    }

    pub fn rank(&self) -> usize {
        self.tag.rank
    }

    /// Size of the real matrices.
    pub fn matrix_size(&self) -> usize {
        self.size
    }

    /// The constant `c` in `⟨X, Y⟩ = -c·tr(XY)`.
    pub fn inner_scale(&self) -> Rational {
        self.inner_scale
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.roots
    }

    /// Number of Cartan generators `e_i` (the coordinate dimension).
    pub fn coord_dim(&self) -> usize {
        self.cartan.len()
    }

    pub fn elem(&self, mat: DMatrix<f64>) -> MatElem {
        MatElem { mat, tag: self.tag }
    }

    pub fn group_elem(&self, mat: DMatrix<f64>) -> GroupElem {
        GroupElem { mat, tag: self.tag }
    }

    pub fn identity(&self) -> GroupElem {
        self.group_elem(DMatrix::identity(self.size, self.size))
    }

    /// The Cartan generator `e_{i+1}` (zero-based index `i`). For type A these
    /// lie in `u(n+1)`; zero-sum combinations lie in `su(n+1)`.
    pub fn cartan_generator(&self, i: usize) -> Result<MatElem, ModelError> {
        self.cartan
            .get(i)
            .map(|m| self.elem(m.clone()))
            .ok_or(ModelError::IndexOutOfRange { index: i, dim: self.cartan.len() })
    }

    pub fn cartan_basis(&self) -> Vec<MatElem> {
        self.cartan.iter().map(|m| self.elem(m.clone())).collect()
    }

    pub(crate) fn cartan_mats(&self) -> &[DMatrix<f64>] {
        &self.cartan
    }

    /// Orthonormal basis of the Cartan subalgebra inside the algebra.
    pub fn cartan_onb(&self) -> Vec<MatElem> {
        self.cartan_onb.iter().map(|m| self.elem(m.clone())).collect()
    }

    /// `Σ coords_i e_i`.
    pub fn cartan_element(&self, coords: &[f64]) -> Result<MatElem, ModelError> {
        if coords.len() != self.cartan.len() {
            return Err(ModelError::DimensionMismatch { expected: self.cartan.len(), got: coords.len() });
        }
        let mut m = DMatrix::zeros(self.size, self.size);
        for (x, e) in coords.iter().zip(&self.cartan) {
            m += e * *x;
        }
        Ok(self.elem(m))
    }

    /// Orthonormal basis: Cartan part first, then root planes in root order.
    pub fn basis(&self) -> Vec<MatElem> {
        self.basis.iter().map(|m| self.elem(m.clone())).collect()
    }

    pub(crate) fn basis_mats(&self) -> &[DMatrix<f64>] {
        &self.basis
    }

    /// Positive roots with their plane bases.
    pub fn root_planes(&self) -> &[RootPlane] {
        &self.planes
    }

    /// Orthonormal basis of `g_{±α}`.
    pub fn root_plane(&self, alpha: &QVec) -> Result<[MatElem; 2], ModelError> {
        let neg = alpha.neg();
        self.planes
            .iter()
            .find(|p| &p.root == alpha || p.root == neg)
            .map(|p| [self.elem(p.span[0].clone()), self.elem(p.span[1].clone())])
            .ok_or_else(|| ModelError::NotARoot(alpha.to_string()))
    }

    /// `⟨X, Y⟩ = -c·tr(XY)` on raw matrices.
    pub fn inner_raw(&self, x: &DMatrix<f64>, y: &DMatrix<f64>) -> f64 {
        let n = self.size;
        let mut s = 0.0;
        for j in 0..n {
            for i in 0..n {
                s += x[(i, j)] * y[(j, i)];
            }
        }
        -self.c * s
    }

    pub fn inner(&self, x: &MatElem, y: &MatElem) -> Result<f64, ModelError> {
        same(x.tag, self.tag)?;
        same(y.tag, self.tag)?;
        Ok(self.inner_raw(&x.mat, &y.mat))
    }

    pub fn norm2(&self, x: &MatElem) -> Result<f64, ModelError> {
        self.inner(x, x)
    }

    /// Coordinates of `x` in the orthonormal basis.
    pub fn coords_raw(&self, x: &DMatrix<f64>) -> DVector<f64> {
        &self.coord_rows * DVector::from_column_slice(x.as_slice())
    }

    pub fn coords(&self, x: &MatElem) -> Result<DVector<f64>, ModelError> {
        same(x.tag, self.tag)?;
        Ok(self.coords_raw(&x.mat))
    }

    pub fn from_coords(&self, c: &DVector<f64>) -> Result<MatElem, ModelError> {
        if c.len() != self.dim() {
            return Err(ModelError::DimensionMismatch { expected: self.dim(), got: c.len() });
        }
        let mut m = DMatrix::zeros(self.size, self.size);
        for (x, b) in c.iter().zip(&self.basis) {
            if *x != 0.0 {
                m += b * *x;
            }
        }
        Ok(self.elem(m))
    }

    /// Matrix of `ad(x)` in the orthonormal basis.
    pub fn ad_matrix(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        let cols: Vec<DVector<f64>> = self.basis.iter().map(|b| self.coords_raw(&bracket_raw(x, b))).collect();
        DMatrix::from_columns(&cols)
    }

    /// `Ad(g)X = g X g⁻¹`.
    pub fn adjoint(&self, g: &GroupElem, x: &MatElem) -> Result<MatElem, ModelError> {
        same(g.tag, self.tag)?;
        same(x.tag, self.tag)?;
        Ok(self.elem(adjoint_raw(&g.mat, &x.mat)))
    }

    pub fn group_exp(&self, x: &MatElem) -> Result<GroupElem, ModelError> {
        same(x.tag, self.tag)?;
        Ok(self.group_elem(expm(&x.mat)))
    }

    /// Algebra element with independent standard normal coordinates.
    pub fn random_algebra_element(&self, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.size, self.size);
        for b in &self.basis {
            let xi: f64 = StandardNormal.sample(rng);
            m += b * xi;
        }
        m
    }

    /// Product of `steps` exponentials of random algebra elements. The stream
    /// depends only on `(seed, index)`, never on scheduling.
    pub fn random_group_element(&self, seed: u64, index: u64, steps: usize) -> GroupElem {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        let mut g = DMatrix::identity(self.size, self.size);
        for k in 0..steps {
            g = &g * expm(&self.random_algebra_element(&mut rng));
            if (k + 1) % REORTHO_EVERY == 0 {
                g = polar(&g);
            }
        }
        self.group_elem(g)
    }

    /// A group element acting on the Cartan subalgebra as the reflection `s_α`.
    pub fn reflection_element(&self, alpha: &QVec) -> Result<GroupElem, ModelError> {
        let [x1, _] = self.root_plane(alpha)?;
        let len = alpha.norm2().to_f64().sqrt();
        Ok(self.group_elem(expm(&(x1.mat * (std::f64::consts::PI / len)))))
    }
}

/// `[X, Y] = XY - YX` on raw matrices.
pub fn bracket_raw(x: &DMatrix<f64>, y: &DMatrix<f64>) -> DMatrix<f64> {
    x * y - y * x
}

pub fn bracket(x: &MatElem, y: &MatElem) -> Result<MatElem, ModelError> {
    same(x.tag, y.tag)?;
    Ok(MatElem { mat: bracket_raw(&x.mat, &y.mat), tag: x.tag })
}

/// `g X gᵀ` for orthogonal `g`.
pub fn adjoint_raw(g: &DMatrix<f64>, x: &DMatrix<f64>) -> DMatrix<f64> {
    g * x * g.transpose()
}

/// Orthogonal polar factor `U Vᵀ` of a square matrix.
pub fn polar(g: &DMatrix<f64>) -> DMatrix<f64> {
    let svd = g.clone().svd(true, true);
    let u = svd.u.expect("requested U");
    let vt = svd.v_t.expect("requested Vᵀ");
    u * vt
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::RootType::*;

    fn models() -> Vec<AlgebraModel> {
        let mut v = Vec::new();
        for (ty, ranks) in [(A, 1..=4), (B, 2..=4), (C, 3..=4), (D, 4..=5)] {
            for r in ranks {
                v.push(build_algebra(ty, r).unwrap());
            }
        }
        v
    }

    #[test]
    fn dimensions() {
        for m in models() {
            let n = m.rank();
            let want = match m.root_type() {
                A => n * n + 2 * n,
                B => (2 * n + 1) * (2 * n) / 2,
                C => n * (2 * n + 1),
                D => (2 * n) * (2 * n - 1) / 2,
                _ => unreachable!(),
            };
            assert_eq!(m.dim(), want, "{}", m.tag());
            assert_eq!(m.dim(), m.rank() + m.root_system().roots().len());
        }
    }

    #[test]
    fn basis_is_orthonormal_and_skew() {
        for m in models() {
            let b = m.basis_mats();
            for (i, x) in b.iter().enumerate() {
                assert!((x + x.transpose()).amax() == 0.0);
                for (j, y) in b.iter().enumerate() {
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((m.inner_raw(x, y) - want).abs() < 1e-12, "{} {i} {j}", m.tag());
                }
            }
        }
    }

    #[test]
    fn cartan_generators_commute_and_are_unit() {
        for m in models() {
            for x in m.cartan_mats() {
                assert_eq!(m.inner_raw(x, x), 1.0);
                for y in m.cartan_mats() {
                    assert_eq!(bracket_raw(x, y).amax(), 0.0);
                }
            }
        }
    }

    #[test]
    fn root_planes_rotate_with_root_speed() {
        for m in models() {
            for p in m.root_planes() {
                let [x1, x2] = &p.span;
                let mut sign = 0.0;
                for (i, e) in m.cartan_mats().iter().enumerate() {
                    let a = p.root.0[i].to_f64();
                    let b1 = bracket_raw(e, x1);
                    let b2 = bracket_raw(e, x2);
                    if a != 0.0 && sign == 0.0 {
                        sign = m.inner_raw(&b1, x2) / a;
                    }
                    let s = if sign == 0.0 { 1.0 } else { sign };
                    assert!((&b1 - x2 * (s * a)).amax() < 1e-12, "{} root {}", m.tag(), p.root);
                    assert!((&b2 + x1 * (s * a)).amax() < 1e-12, "{} root {}", m.tag(), p.root);
                }
                assert!((sign.abs() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn a2_rotation_speed() {
        let m = build_algebra(A, 2).unwrap();
        let [x1, x2] = m.root_plane(&QVec::from_ints(&[1, -1, 0])).unwrap();
        let e1 = m.cartan_generator(0).unwrap();
        let b = bracket(&e1, &x1).unwrap();
        assert!((m.inner(&b, &x2).unwrap().abs() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn c3_long_root_bracket() {
        let m = build_algebra(C, 3).unwrap();
        let [x1, x2] = m.root_plane(&QVec::from_ints(&[2, 0, 0])).unwrap();
        let b = bracket(&x1, &x2).unwrap();
        let e1 = m.cartan_generator(0).unwrap();
        let k = m.inner(&b, &e1).unwrap();
        assert!(k.abs() > 1.0);
        assert!((b.mat - e1.mat * k).amax() < 1e-12);
    }

    #[test]
    fn jacobi_and_ad_invariance() {
        for m in models().into_iter().filter(|m| m.dim() <= 28) {
            let b = m.basis_mats();
            for x in b.iter().step_by(2) {
                for y in b.iter().step_by(3) {
                    let xy = bracket_raw(x, y);
                    for z in b.iter().step_by(5) {
                        let j = bracket_raw(x, &bracket_raw(y, z))
                            + bracket_raw(y, &bracket_raw(z, x))
                            + bracket_raw(z, &xy);
                        assert!(j.amax() < 1e-12);
                        let lhs = m.inner_raw(&xy, z);
                        let rhs = -m.inner_raw(y, &bracket_raw(x, z));
                        assert!((lhs - rhs).abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn random_elements_are_in_group_and_preserve_norm() {
        for m in models() {
            // Zero-sum so that type A stays inside su(n+1).
            let k = m.coord_dim();
            let coords: Vec<f64> = (0..k).map(|i| (k - 1) as f64 - 2.0 * i as f64).collect();
            let v = m.cartan_element(&coords).unwrap();
            let n0 = m.norm2(&v).unwrap();
            for i in 0..20 {
                let g = m.random_group_element(11, i, 3);
                assert!(g.is_in_group(), "{} defect {}", m.tag(), g.orthogonality_defect());
                let w = m.adjoint(&g, &v).unwrap();
                assert!((m.norm2(&w).unwrap() - n0).abs() < 1e-10 * n0);
                assert!((m.from_coords(&m.coords(&w).unwrap()).unwrap().mat - &w.mat).amax() < 1e-10);
            }
        }
    }

    #[test]
    fn long_products_stay_in_group() {
        let m = build_algebra(C, 3).unwrap();
        let g = m.random_group_element(5, 0, 100);
        assert!(g.is_in_group());
    }

    #[test]
    fn sampling_is_reproducible_per_index() {
        let m = build_algebra(B, 2).unwrap();
        assert_eq!(m.random_group_element(3, 7, 3), m.random_group_element(3, 7, 3));
        assert_ne!(m.random_group_element(3, 7, 3), m.random_group_element(3, 8, 3));
    }

    #[test]
    fn haar_like_mean_in_so5() {
        let m = build_algebra(B, 2).unwrap();
        let e1 = m.cartan_generator(0).unwrap();
        let n = 10_000;
        let xs: Vec<f64> = (0..n)
            .map(|i| {
                let g = m.random_group_element(20141005, i, 3);
                m.inner(&m.adjoint(&g, &e1).unwrap(), &e1).unwrap()
            })
            .collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0);
        assert!(mean.abs() < 3.0 * (var / n as f64).sqrt(), "mean {mean}");
    }

    #[test]
    fn reflection_elements_act_as_weyl_reflections() {
        for m in models() {
            for alpha in m.root_system().simple_roots() {
                let g = m.reflection_element(alpha).unwrap();
                assert!(g.is_in_group());
                for i in 0..m.coord_dim() {
                    let e = m.cartan_generator(i).unwrap();
                    let img = m.adjoint(&g, &e).unwrap();
                    let want = QVec::unit(m.coord_dim(), i).reflect(alpha);
                    let want = m.cartan_element(&want.to_f64()).unwrap();
                    // Type A: u(n+1) centre is fixed, so compare directly.
                    assert!((img.mat - want.mat).amax() < 1e-12, "{} {}", m.tag(), alpha);
                }
            }
        }
    }

    #[test]
    fn errors() {
        assert_eq!(build_algebra(E6, 6).unwrap_err(), ModelError::Unsupported(E6));
        let a = build_algebra(A, 2).unwrap();
        let b = build_algebra(B, 2).unwrap();
        let x = a.cartan_generator(0).unwrap();
        let y = b.cartan_generator(0).unwrap();
        assert!(matches!(bracket(&x, &y), Err(ModelError::ModelMismatch(..))));
        assert!(matches!(a.root_plane(&QVec::from_ints(&[1, 1, 0])), Err(ModelError::NotARoot(_))));
        assert!(a.cartan_generator(3).is_err());
    }

    #[test]
    fn su4_block_rotation_witness() {
        // v = i·diag(1, 1, -1, -1) conjugated to i·diag([[0,1],[1,0]], 1, -1).
        let m = build_algebra(A, 3).unwrap();
        let v = m.cartan_element(&[1.0, 1.0, -1.0, -1.0]).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        // Columns send the eigenvectors of v to those of the target.
        let g = complex_embed(
            4,
            &[(0, 0, s, 0.0), (0, 2, s, 0.0), (1, 0, s, 0.0), (1, 2, -s, 0.0), (2, 1, 1.0, 0.0), (3, 3, 1.0, 0.0)],
        );
        let g = m.group_elem(g);
        assert!(g.is_in_group());
        let w = m.adjoint(&g, &v).unwrap();
        let want = complex_embed(4, &[(0, 1, 0.0, 1.0), (1, 0, 0.0, 1.0), (2, 2, 0.0, 1.0), (3, 3, 0.0, -1.0)]);
        assert!((w.mat - want).amax() < 1e-14);
    }

    #[test]
    fn quaternion_units_multiply() {
        let q = |c: [f64; 4]| quaternion_embed(1, &[(0, 0, c)]);
        let (i, j, k) = (q([0.0, 1.0, 0.0, 0.0]), q([0.0, 0.0, 1.0, 0.0]), q([0.0, 0.0, 0.0, 1.0]));
        assert_eq!(&i * &j, k);
        assert_eq!(&j * &k, i);
        assert_eq!(&k * &i, j);
        assert_eq!(&i * &i, -DMatrix::<f64>::identity(4, 4));
    }
}
