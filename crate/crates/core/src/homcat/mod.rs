//! Compact homogeneous pairs `(g, h)` with an adapted Cartan subalgebra.
//!
//! A pair stores orthonormal bases of `h` and of its orthogonal complement
//! `m`, as coefficient columns in the orthonormal basis of its
//! [`AlgebraModel`]. Construction conjugates `h` when necessary so that the
//! standard Cartan subalgebra `t` satisfies `t = (t∩h) ⊕ (t∩m)`; the induced
//! splitting of Cartan coordinates is recorded exactly as a [`CartanSplit`].

mod catalog;
pub mod octonion;
mod split;

pub use catalog::{
    default_catalog, load_catalog, parse_catalog, save_catalog, to_json as catalog_to_json, Catalog, CatalogEntry,
    CatalogError,
};
pub use split::CartanSplit;

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{rationalize, QMat, QVec, Quad, Rational};
use crate::linalg;
use crate::matmodel::{adjoint_raw, bracket_raw, build_algebra, complex_entries, AlgebraModel, ModelError};
use crate::rootsys::RootType;

/// Numerical tolerance for subspace and closure checks.
pub const SUBSPACE_TOL: f64 = 1e-9;

/// Seed for the generic elements used while adapting Cartan subalgebras.
const ADAPT_SEED: u64 = 0x5eed_ca27;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PairError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("invalid parameters for {0}: {1}")]
    InvalidParams(String, String),
    #[error("h is not closed under the bracket (defect {0:.3e})")]
    NotSubalgebra(f64),
    #[error("[h, m] is not contained in m (defect {0:.3e})")]
    NotReductive(f64),
    #[error("h must be a proper nonzero subalgebra (dim h = {dim_h}, dim g = {dim_g})")]
    Degenerate { dim_h: usize, dim_g: usize },
    #[error("cannot adapt a Cartan subalgebra: {0}")]
    Adapt(String),
    #[error("bad candidate: {0}")]
    Candidate(String),
}

/// The catalogued families of pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PairSpec {
    /// `SO(N)/SO(M)` with `so(M)` acting on the first `M` coordinates.
    SoSo { big: usize, small: usize },
    /// `SU(n+1)/SU(n)` with `su(n)` omitting the first coordinate.
    SuSu { n: usize },
    /// `SU(2k)/Sp(k)` with the symplectic form pairing `i` and `i+k`.
    SuSp { k: usize },
    /// `Spin(7)/G_2` with `g_2` the derivations of the octonions.
    Spin7G2,
    /// `Sp(n)/Sp(n-1)` with `sp(n-1)` omitting the first coordinate.
    SpSp { n: usize },
    /// `Sp(n)/(Sp(k)×Sp(n-k))`, block diagonal.
    SpSpSp { n: usize, k: usize },
}

impl PairSpec {
    /// Short identifier such as `SO8/SO7` or `Sp3/Sp1xSp2`.
    pub fn short_name(&self) -> String {
        match *self {
            PairSpec::SoSo { big, small } => format!("SO{big}/SO{small}"),
            PairSpec::SuSu { n } => format!("SU{}/SU{n}", n + 1),
            PairSpec::SuSp { k } => format!("SU{}/Sp{k}", 2 * k),
            PairSpec::Spin7G2 => "Spin7/G2".into(),
            PairSpec::SpSp { n } => format!("Sp{n}/Sp{}", n - 1),
            PairSpec::SpSpSp { n, k } => format!("Sp{n}/Sp{k}xSp{}", n - k),
        }
    }

    /// Parses a short identifier as produced by [`PairSpec::short_name`].
    pub fn parse_short(s: &str) -> Option<PairSpec> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("Spin7/G2") {
            return Some(PairSpec::Spin7G2);
        }
        let (left, right) = s.split_once('/')?;
        let num = |t: &str, prefix: &str| t.strip_prefix(prefix).and_then(|x| x.parse::<usize>().ok());
        if let (Some(a), Some(b)) = (num(left, "SO"), num(right, "SO")) {
            return Some(PairSpec::SoSo { big: a, small: b });
        }
        if let Some(a) = num(left, "SU") {
            if let Some(b) = num(right, "SU") {
                return (a == b + 1).then_some(PairSpec::SuSu { n: b });
            }
            if let Some(b) = num(right, "Sp") {
                return (a == 2 * b).then_some(PairSpec::SuSp { k: b });
            }
            return None;
        }
        if let Some(a) = num(left, "Sp") {
            if let Some(b) = num(right, "Sp") {
                return (b + 1 == a).then_some(PairSpec::SpSp { n: a });
            }
            let (p, q) = right.split_once('x')?;
            let (b, c) = (num(p, "Sp")?, num(q, "Sp")?);
            return (b + c == a).then_some(PairSpec::SpSpSp { n: a, k: b });
        }
        None
    }

    /// Constructor family name used in catalog files.
    pub fn constructor(&self) -> &'static str {
        match self {
            PairSpec::SoSo { .. } => "SO(N)/SO(M)",
            PairSpec::SuSu { .. } => "SU(n+1)/SU(n)",
            PairSpec::SuSp { .. } => "SU(2k)/Sp(k)",
            PairSpec::Spin7G2 => "Spin(7)/G2",
            PairSpec::SpSp { .. } => "Sp(n)/Sp(n-1)",
            PairSpec::SpSpSp { .. } => "Sp(n)/Sp(k)xSp(n-k)",
        }
    }

    /// Parameters of the constructor family, by name.
    pub fn params(&self) -> BTreeMap<String, usize> {
        let kv = |v: &[(&str, usize)]| v.iter().map(|(k, x)| (k.to_string(), *x)).collect();
        match *self {
            PairSpec::SoSo { big, small } => kv(&[("N", big), ("M", small)]),
            PairSpec::SuSu { n } => kv(&[("n", n)]),
            PairSpec::SuSp { k } => kv(&[("k", k)]),
            PairSpec::Spin7G2 => BTreeMap::new(),
            PairSpec::SpSp { n } => kv(&[("n", n)]),
            PairSpec::SpSpSp { n, k } => kv(&[("n", n), ("k", k)]),
        }
    }

    /// Inverse of [`PairSpec::constructor`] and [`PairSpec::params`].
    pub fn from_constructor(name: &str, params: &BTreeMap<String, usize>) -> Result<PairSpec, String> {
        let get = |k: &str| params.get(k).copied().ok_or_else(|| format!("missing parameter {k:?}"));
        Ok(match name {
            "SO(N)/SO(M)" => PairSpec::SoSo { big: get("N")?, small: get("M")? },
            "SO(2n)/SO(2n-1)" => {
                let n = get("n")?;
                PairSpec::SoSo { big: 2 * n, small: (2 * n).saturating_sub(1) }
            }
            "SU(n+1)/SU(n)" => PairSpec::SuSu { n: get("n")? },
            "SU(2k)/Sp(k)" => PairSpec::SuSp { k: get("k")? },
            "Spin(7)/G2" => PairSpec::Spin7G2,
            "Sp(n)/Sp(n-1)" => PairSpec::SpSp { n: get("n")? },
            "Sp(n)/Sp(k)xSp(n-k)" => PairSpec::SpSpSp { n: get("n")?, k: get("k")? },
            other => return Err(format!("unknown constructor {other:?}")),
        })
    }

    fn invalid(&self, why: &str) -> PairError {
        PairError::InvalidParams(self.to_string(), why.into())
    }

    fn model(&self) -> Result<AlgebraModel, PairError> {
        let (ty, rank) = match *self {
            PairSpec::SoSo { big, small } => {
                if small < 2 || small >= big {
                    return Err(self.invalid("need 2 <= M < N"));
                }
                if big % 2 == 1 {
                    (RootType::B, (big - 1) / 2)
                } else {
                    (RootType::D, big / 2)
                }
            }
            PairSpec::SuSu { n } => {
                if n < 2 {
                    return Err(self.invalid("need n >= 2"));
                }
                (RootType::A, n)
            }
            PairSpec::SuSp { k } => {
                if k < 2 {
                    return Err(self.invalid("need k >= 2"));
                }
                (RootType::A, 2 * k - 1)
            }
            PairSpec::Spin7G2 => (RootType::B, 3),
            PairSpec::SpSp { n } => (RootType::C, n),
            PairSpec::SpSpSp { n, k } => {
                if k == 0 || k >= n {
                    return Err(self.invalid("need 1 <= k < n"));
                }
                (RootType::C, n)
            }
        };
        Ok(build_algebra(ty, rank)?)
    }

    /// Matrices spanning `h` before any alignment.
    fn h_generators(&self, model: &AlgebraModel) -> Result<Vec<DMatrix<f64>>, PairError> {
        let n = model.matrix_size();
        Ok(match *self {
            PairSpec::SoSo { small, .. } => {
                let mut v = Vec::new();
                for i in 0..small {
                    for j in i + 1..small {
                        let mut m = DMatrix::zeros(n, n);
                        m[(i, j)] = 1.0;
                        m[(j, i)] = -1.0;
                        v.push(m);
                    }
                }
                v
            }
            PairSpec::SuSu { n: r } => block_generators(model, &[(1..=r).collect()]),
            PairSpec::SpSp { n: r } => block_generators(model, &[(1..r).collect()]),
            PairSpec::SpSpSp { n: r, k } => block_generators(model, &[(0..k).collect(), (k..r).collect()]),
            PairSpec::SuSp { k } => {
                let coeffs = constraint_kernel(model, |b| symplectic_residual(b, k));
                coeff_mats(model, &coeffs)
            }
            PairSpec::Spin7G2 => {
                let coeffs = constraint_kernel(model, octonion::leibniz_residual);
                coeff_mats(model, &coeffs)
            }
        })
    }
}

impl fmt::Display for PairSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PairSpec::SoSo { big, small } => write!(f, "SO({big})/SO({small})"),
            PairSpec::SuSu { n } => write!(f, "SU({})/SU({n})", n + 1),
            PairSpec::SuSp { k } => write!(f, "SU({})/Sp({k})", 2 * k),
            PairSpec::Spin7G2 => write!(f, "Spin(7)/G2"),
            PairSpec::SpSp { n } => write!(f, "Sp({n})/Sp({})", n - 1),
            PairSpec::SpSpSp { n, k } => write!(f, "Sp({n})/(Sp({k})xSp({}))", n - k),
        }
    }
}

/// Metadata attached to catalog entries; never consulted by the engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expected {
    Positive,
    Negative,
    Unknown,
}

/// A candidate Cartan vector `v = Σ coords_i e_i` with exact coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Candidate {
    pub coords: Vec<Rational>,
}

impl Candidate {
    pub fn new(coords: Vec<Rational>) -> Self {
        Candidate { coords }
    }

    pub fn from_ints(v: &[i128]) -> Self {
        Candidate { coords: v.iter().map(|&x| Rational::from_integer(x)).collect() }
    }

    pub fn to_qvec(&self) -> QVec {
        QVec::from_rationals(&self.coords)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.to_qvec().to_f64()
    }

    pub fn norm2(&self) -> Rational {
        self.coords.iter().map(|x| x * x).sum()
    }
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// A compact homogeneous pair with adapted Cartan data.
#[derive(Clone, Debug)]
pub struct HomogeneousPair {
    name: String,
    spec: PairSpec,
    model: AlgebraModel,
    h: DMatrix<f64>,
    m: DMatrix<f64>,
    h_mats: Vec<DMatrix<f64>>,
    m_mats: Vec<DMatrix<f64>>,
    split: CartanSplit,
    alignment: DMatrix<f64>,
    adapted_by_conjugation: bool,
    pub candidates: Vec<Candidate>,
    pub expected: Expected,
}

/// Builds a pair, adapting its Cartan subalgebra.
pub fn build_pair(spec: &PairSpec) -> Result<HomogeneousPair, PairError> {
    let model = spec.model()?;
    let gens = spec.h_generators(&model)?;
    let cols: Vec<DVector<f64>> = gens.iter().map(|g| model.coords_raw(g)).collect();
    let h = linalg::orth(&linalg::columns(model.dim(), &cols), SUBSPACE_TOL);
    let dim_g = model.dim();
    if h.ncols() == 0 || h.ncols() >= dim_g {
        return Err(PairError::Degenerate { dim_h: h.ncols(), dim_g });
    }
    let defect = closure_defect(&model, &h);
    if defect > SUBSPACE_TOL {
        return Err(PairError::NotSubalgebra(defect));
    }
    let adapted = adapt_cartan(&model, h)?;
    let m = linalg::complement(&adapted.h, SUBSPACE_TOL);
    let h_mats = coeff_mats(&model, &adapted.h);
    let m_mats = coeff_mats(&model, &m);
    let pair = HomogeneousPair {
        name: spec.short_name(),
        spec: spec.clone(),
        h: adapted.h,
        m,
        h_mats,
        m_mats,
        split: adapted.split,
        alignment: adapted.alignment,
        adapted_by_conjugation: adapted.conjugated,
        model,
        candidates: Vec::new(),
        expected: Expected::Unknown,
    };
    let red = pair.reductivity_defect();
    if red > SUBSPACE_TOL {
        return Err(PairError::NotReductive(red));
    }
    Ok(pair)
}

impl HomogeneousPair {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn spec(&self) -> &PairSpec {
        &self.spec
    }

    pub fn model(&self) -> &AlgebraModel {
        &self.model
    }

    pub fn dim_g(&self) -> usize {
        self.model.dim()
    }

    pub fn dim_h(&self) -> usize {
        self.h.ncols()
    }

    pub fn dim_m(&self) -> usize {
        self.m.ncols()
    }

    /// Orthonormal coefficient columns spanning `h`.
    pub fn h_coeffs(&self) -> &DMatrix<f64> {
        &self.h
    }

    /// Orthonormal coefficient columns spanning `m`.
    pub fn m_coeffs(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn h_basis(&self) -> &[DMatrix<f64>] {
        &self.h_mats
    }

    pub fn m_basis(&self) -> &[DMatrix<f64>] {
        &self.m_mats
    }

    /// Exact splitting of the Cartan coordinates.
    pub fn split(&self) -> &CartanSplit {
        &self.split
    }

    /// The orthogonal matrix by which `h` was conjugated to adapt the Cartan
    /// subalgebra (the identity when no conjugation was needed).
    pub fn alignment(&self) -> &DMatrix<f64> {
        &self.alignment
    }

    pub fn adapted_by_conjugation(&self) -> bool {
        self.adapted_by_conjugation
    }

    /// `(pr_h X, pr_m X)` as matrices.
    pub fn project(&self, x: &DMatrix<f64>) -> (DMatrix<f64>, DMatrix<f64>) {
        let c = self.model.coords_raw(x);
        let ch = &self.h * (self.h.transpose() * &c);
        let cm = &self.m * (self.m.transpose() * &c);
        let to = |v: &DVector<f64>| self.model.from_coords(v).expect("dimension matches").mat;
        (to(&ch), to(&cm))
    }

    /// `(‖pr_h X‖², ‖pr_m X‖²)` from coordinates.
    pub fn split_norms(&self, x: &DMatrix<f64>) -> (f64, f64) {
        let c = self.model.coords_raw(x);
        ((self.h.transpose() * &c).norm_squared(), (self.m.transpose() * &c).norm_squared())
    }

    /// Checks that a candidate has the right length, is nonzero and lies in `t`.
    pub fn validate_candidate(&self, c: &Candidate) -> Result<(), PairError> {
        let n = self.model.coord_dim();
        if c.coords.len() != n {
            return Err(PairError::Candidate(format!("expected {n} coordinates, got {}", c.coords.len())));
        }
        let v = c.to_qvec();
        if v.is_zero() {
            return Err(PairError::Candidate("zero vector".into()));
        }
        if self.split.project_h(&v).add(&self.split.project_m(&v)) != v {
            return Err(PairError::Candidate(format!(
                "{c} is not in the Cartan subalgebra (coordinates must sum to zero)"
            )));
        }
        Ok(())
    }

    /// Whether `[m, m] ⊂ h`, i.e. the pair is symmetric.
    pub fn symmetric_check(&self) -> bool {
        let mt = self.m.transpose();
        for (i, x) in self.m_mats.iter().enumerate() {
            for y in &self.m_mats[i + 1..] {
                let c = self.model.coords_raw(&bracket_raw(x, y));
                if (&mt * c).amax() > 1e-10 {
                    return false;
                }
            }
        }
        true
    }

    fn reductivity_defect(&self) -> f64 {
        let ht = self.h.transpose();
        let mut worst: f64 = 0.0;
        for x in &self.h_mats {
            for y in &self.m_mats {
                let c = self.model.coords_raw(&bracket_raw(x, y));
                worst = worst.max((&ht * c).amax());
            }
        }
        worst
    }

    /// Groups the root planes by their projection to `t∩h`.
    pub fn projected_root_data(&self) -> Vec<ProjectedRoot> {
        let mut groups: BTreeMap<QVec, Vec<usize>> = BTreeMap::new();
        for (k, p) in self.model.root_planes().iter().enumerate() {
            let key = self.split.project_h(&p.root);
            let key = std::cmp::max(key.clone(), key.neg());
            groups.entry(key).or_default().push(k);
        }
        let planes = self.model.root_planes();
        groups
            .into_iter()
            .map(|(projected, idx)| {
                let cols: Vec<DVector<f64>> =
                    idx.iter().flat_map(|&k| planes[k].span.iter().map(|x| self.model.coords_raw(x))).collect();
                let c = linalg::columns(self.dim_g(), &cols);
                let ch = &self.h * (self.h.transpose() * &c);
                let cm = &self.m * (self.m.transpose() * &c);
                ProjectedRoot {
                    projected,
                    roots: idx.iter().map(|&k| planes[k].root.clone()).collect(),
                    dim: 2 * idx.len(),
                    dim_h: linalg::rank(&ch, 1e-8),
                    dim_m: linalg::rank(&cm, 1e-8),
                }
            })
            .collect()
    }
}

/// The sum of root planes whose roots share a projection to `t∩h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectedRoot {
    /// `pr_{t∩h} α`, sign-normalised (the larger of `±`).
    pub projected: QVec,
    /// Positive roots `α` with this projection (up to sign).
    pub roots: Vec<QVec>,
    pub dim: usize,
    pub dim_h: usize,
    pub dim_m: usize,
}

/// Result of adapting the Cartan subalgebra.
struct Adapted {
    h: DMatrix<f64>,
    split: CartanSplit,
    alignment: DMatrix<f64>,
    conjugated: bool,
}

fn coeff_mats(model: &AlgebraModel, cols: &DMatrix<f64>) -> Vec<DMatrix<f64>> {
    cols.column_iter().map(|c| model.from_coords(&c.into_owned()).expect("dimension matches").mat).collect()
}

fn closure_defect(model: &AlgebraModel, h: &DMatrix<f64>) -> f64 {
    let mats = coeff_mats(model, h);
    let proj = DMatrix::identity(model.dim(), model.dim()) - h * h.transpose();
    let mut worst: f64 = 0.0;
    for (i, x) in mats.iter().enumerate() {
        for y in &mats[i + 1..] {
            worst = worst.max((&proj * model.coords_raw(&bracket_raw(x, y))).amax());
        }
    }
    worst
}

/// Generators of `⊕ su(S)` or `⊕ sp(S)` over coordinate blocks `S`.
fn block_generators(model: &AlgebraModel, blocks: &[Vec<usize>]) -> Vec<DMatrix<f64>> {
    let cartan = model.cartan_mats();
    let mut out = Vec::new();
    for s in blocks {
        match model.root_type() {
            RootType::A => {
                for w in s.windows(2) {
                    out.push(&cartan[w[0]] - &cartan[w[1]]);
                }
            }
            _ => out.extend(s.iter().map(|&i| cartan[i].clone())),
        }
        for p in model.root_planes() {
            let support_ok = p.root.0.iter().enumerate().all(|(i, x)| x.is_zero() || s.contains(&i));
            if support_ok {
                out.extend(p.span.iter().cloned());
            }
        }
    }
    out
}

/// Orthonormal coefficient columns of the kernel of a linear constraint.
fn constraint_kernel(model: &AlgebraModel, f: impl Fn(&DMatrix<f64>) -> Vec<f64>) -> DMatrix<f64> {
    let cols: Vec<DVector<f64>> = model.basis_mats().iter().map(|b| DVector::from_vec(f(b))).collect();
    linalg::kernel(&DMatrix::from_columns(&cols), SUBSPACE_TOL)
}

/// `Zᵀ J + J Z` for the complex matrix `Z` behind a real-embedded element,
/// with `J = [[0, I_k], [-I_k, 0]]`.
#[allow(clippy::needless_range_loop)]
fn symplectic_residual(b: &DMatrix<f64>, k: usize) -> Vec<f64> {
    let z = complex_entries(b);
    let n = 2 * k;
    let j = |p: usize, q: usize| -> f64 {
        if q == p + k && p < k {
            1.0
        } else if p == q + k && q < k {
            -1.0
        } else {
            0.0
        }
    };
    let mut out = Vec::with_capacity(2 * n * n);
    for p in 0..n {
        for q in 0..n {
            let (mut re, mut im) = (0.0, 0.0);
            for r in 0..n {
                re += z[r][p].0 * j(r, q) + j(p, r) * z[r][q].0;
                im += z[r][p].1 * j(r, q) + j(p, r) * z[r][q].1;
            }
            out.push(re);
            out.push(im);
        }
    }
    out
}

fn generic_combination(cols: &DMatrix<f64>, rng: &mut ChaCha8Rng) -> DVector<f64> {
    let xi = DVector::from_fn(cols.ncols(), |_, _| StandardNormal.sample(rng));
    cols * xi
}

/// Numeric projector onto `t∩h` in Cartan coordinates, if `t` is adapted.
fn standard_split(model: &AlgebraModel, h: &DMatrix<f64>) -> Option<DMatrix<f64>> {
    let rank = model.rank();
    let cs: Vec<DVector<f64>> = model.cartan_mats().iter().map(|e| h.transpose() * model.coords_raw(e)).collect();
    for c in &cs {
        let full = h * c;
        let off_cartan = full.rows(rank, full.len() - rank).norm();
        if off_cartan > SUBSPACE_TOL.sqrt() * 1e-2 {
            return None;
        }
    }
    let n = cs.len();
    Some(DMatrix::from_fn(n, n, |i, j| cs[i].dot(&cs[j])))
}

fn exact_split(model: &AlgebraModel, p: &DMatrix<f64>) -> Result<CartanSplit, PairError> {
    let n = p.nrows();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let r = rationalize(p[(i, j)], 10_000, 1e-9)
                .ok_or_else(|| PairError::Adapt(format!("projector entry {} is not a small rational", p[(i, j)])))?;
            row.push(Quad::from_rational(r));
        }
        rows.push(QVec(row));
    }
    CartanSplit::from_projector(model.root_system(), QMat::from_rows(rows))
        .ok_or_else(|| PairError::Adapt("rationalised projector is not an orthogonal projector in t".into()))
}

fn adapt_cartan(model: &AlgebraModel, h: DMatrix<f64>) -> Result<Adapted, PairError> {
    let mut rng = ChaCha8Rng::seed_from_u64(ADAPT_SEED);
    let dim = model.dim();
    // A Cartan subalgebra s of h: the centraliser in h of a generic element.
    let x = generic_combination(&h, &mut rng);
    let ad_x = model.ad_matrix(&model.from_coords(&x)?.mat);
    let s = &h * linalg::kernel(&(&ad_x * &h), SUBSPACE_TOL);
    let rank_h = s.ncols();

    if let Some(p) = standard_split(model, &h) {
        if (p.trace() - rank_h as f64).abs() < 1e-6 {
            let split = exact_split(model, &p)?;
            let n = model.matrix_size();
            return Ok(Adapted { h, split, alignment: DMatrix::identity(n, n), conjugated: false });
        }
    }

    // Extend s by a Cartan subalgebra of its centraliser inside m.
    let ads: Vec<DMatrix<f64>> =
        s.column_iter().map(|c| model.ad_matrix(&model.from_coords(&c.into_owned()).unwrap().mat)).collect();
    let stacked = DMatrix::from_fn(ads.len() * dim, dim, |r, c| ads[r / dim][(r % dim, c)]);
    let z = linalg::kernel(&stacked, SUBSPACE_TOL);
    let proj_m = DMatrix::identity(dim, dim) - &h * h.transpose();
    let zm = linalg::orth(&(&proj_m * &z), SUBSPACE_TOL);
    let a = if zm.ncols() > 0 {
        let y = generic_combination(&zm, &mut rng);
        let ad_y = model.ad_matrix(&model.from_coords(&y)?.mat);
        &zm * linalg::kernel(&(&ad_y * &zm), SUBSPACE_TOL)
    } else {
        DMatrix::zeros(dim, 0)
    };
    let t = DMatrix::from_fn(
        dim,
        s.ncols() + a.ncols(),
        |r, c| if c < s.ncols() { s[(r, c)] } else { a[(r, c - s.ncols())] },
    );
    if t.ncols() != model.rank() {
        return Err(PairError::Adapt(format!(
            "found an abelian subalgebra of dimension {} in rank {}",
            t.ncols(),
            model.rank()
        )));
    }
    if !matches!(model.root_type(), RootType::B | RootType::D) {
        return Err(PairError::Adapt(format!(
            "alignment by conjugation is only implemented for orthogonal models, not type {}",
            model.root_type()
        )));
    }
    let tgen = model.from_coords(&generic_combination(&t, &mut rng))?.mat;
    let mut g = orthogonal_alignment(model, &tgen)?;
    let conj = |g: &DMatrix<f64>, cols: &DMatrix<f64>| -> DMatrix<f64> {
        let moved: Vec<DVector<f64>> =
            coeff_mats(model, cols).iter().map(|x| model.coords_raw(&adjoint_raw(g, x))).collect();
        linalg::orth(&linalg::columns(dim, &moved), SUBSPACE_TOL)
    };
    let mut h2 = conj(&g, &h);
    let p = standard_split(model, &h2).ok_or_else(|| PairError::Adapt("conjugated Cartan is not adapted".into()))?;
    let mut split = exact_split(model, &p)?;

    // Orient a one-dimensional t∩m into the positive orthant (type B only,
    // where the sign change of any e_i is realised inside SO(2n+1)).
    if model.root_type() == RootType::B && split.dim_m() == 1 {
        let u = split.m_basis().remove(0);
        let lead = u.0.iter().find(|x| !x.is_zero()).map(Quad::signum).unwrap_or(1);
        let signs: Vec<i128> = u.0.iter().map(|x| if x.signum() * lead < 0 { -1 } else { 1 }).collect();
        if signs.iter().any(|&s| s < 0) {
            let n = model.matrix_size();
            let mut d = DMatrix::<f64>::identity(n, n);
            let mut flips = 0;
            for (i, &s) in signs.iter().enumerate() {
                if s < 0 {
                    d[(2 * i + 2, 2 * i + 2)] = -1.0;
                    flips += 1;
                }
            }
            if flips % 2 == 1 {
                d[(0, 0)] = -1.0;
            }
            h2 = conj(&d, &h2);
            g = &d * g;
            split = split.flip_signs(&signs);
        }
    }
    Ok(Adapted { h: h2, split, alignment: g, conjugated: true })
}

/// An orthogonal `g` with `g T gᵀ` in the standard Cartan subalgebra, for a
/// regular skew-symmetric `T`.
fn orthogonal_alignment(model: &AlgebraModel, t: &DMatrix<f64>) -> Result<DMatrix<f64>, PairError> {
    let n = t.nrows();
    let rank = model.rank();
    let off = if model.root_type() == RootType::B { 1 } else { 0 };
    let s = t.transpose() * t;
    let eig = nalgebra::SymmetricEigen::new(s);
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let mut q = DMatrix::<f64>::zeros(n, n);
    for blk in 0..rank {
        let (k1, k2) = (idx[2 * blk], idx[2 * blk + 1]);
        let (l1, l2) = (eig.eigenvalues[k1], eig.eigenvalues[k2]);
        if l1 <= 1e-12 || (l1 - l2).abs() > 1e-8 * l1.max(1.0) {
            return Err(PairError::Adapt("generic Cartan element is not regular".into()));
        }
        if blk + 1 < rank && (l2 - eig.eigenvalues[idx[2 * blk + 2]]).abs() < 1e-8 * l1.max(1.0) {
            return Err(PairError::Adapt("generic Cartan element has repeated rotation speeds".into()));
        }
        let u = eig.eigenvectors.column(k1).into_owned();
        let lam = l1.sqrt();
        let w = (t * &u) / lam;
        q.set_column(2 * blk + off, &w);
        q.set_column(2 * blk + off + 1, &u);
    }
    if off == 1 {
        q.set_column(0, &eig.eigenvectors.column(idx[n - 1]).into_owned());
    }
    if q.determinant() < 0.0 {
        let c = if off == 1 { 0 } else { 1 };
        let col = -q.column(c).into_owned();
        q.set_column(c, &col);
    }
    Ok(q.transpose())
}
