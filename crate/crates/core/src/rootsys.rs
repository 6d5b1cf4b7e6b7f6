//! Root systems of the compact simple Lie algebras in explicit Euclidean
//! coordinates, with exact Weyl-group actions.
//!
//! Coordinates follow the usual orthonormal frame `e_1, …, e_m`. Type `A_n`
//! lives in ℝ^{n+1}; the exceptional types use the presentations below, whose
//! entries all lie in ℚ(√2, √3).
//!
//! ```
//! use ckfield::rootsys::{build_root_system, RootType};
//!
//! let d4 = build_root_system(RootType::D, 4).unwrap();
//! assert_eq!(d4.roots().len(), 24);
//! ```

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{rank as exact_rank, rat, QVec, Quad, Rational};

/// Default cap on the number of orbit points a search may visit.
pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RootType {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
    /// A reducible or unrecognised subsystem.
    Other,
}

impl RootType {
    /// Parses `"A"`, `"B"`, `"C"`, `"D"`, `"E6"`, … (case insensitive).
    pub fn parse(s: &str) -> Option<RootType> {
        Some(match s.trim().to_ascii_uppercase().as_str() {
            "A" => RootType::A,
            "B" => RootType::B,
            "C" => RootType::C,
            "D" => RootType::D,
            "E6" => RootType::E6,
            "E7" => RootType::E7,
            "E8" => RootType::E8,
            "F4" => RootType::F4,
            "G2" => RootType::G2,
            _ => return None,
        })
    }

    /// Rank of an exceptional type, `None` for the classical series.
    pub fn fixed_rank(self) -> Option<usize> {
        match self {
            RootType::E6 => Some(6),
            RootType::E7 => Some(7),
            RootType::E8 => Some(8),
            RootType::F4 => Some(4),
            RootType::G2 => Some(2),
            _ => None,
        }
    }

    /// Smallest admissible rank for a classical series.
    pub fn min_rank(self) -> usize {
        match self {
            RootType::A => 1,
            RootType::B => 2,
            RootType::C => 3,
            RootType::D => 4,
            other => other.fixed_rank().unwrap_or(1),
        }
    }

    pub fn is_classical(self) -> bool {
        matches!(self, RootType::A | RootType::B | RootType::C | RootType::D)
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RootType::A => "A",
            RootType::B => "B",
            RootType::C => "C",
            RootType::D => "D",
            RootType::E6 => "E6",
            RootType::E7 => "E7",
            RootType::E8 => "E8",
            RootType::F4 => "F4",
            RootType::G2 => "G2",
            RootType::Other => "Other",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("rank {rank} is out of range for type {ty} (minimum {min})")]
    InvalidRank { ty: RootType, rank: usize, min: usize },
    #[error("type {0} cannot be built directly")]
    Unsupported(RootType),
    #[error("selected roots are not closed under negation")]
    NotClosedUnderNegation,
    #[error("selected root set is empty")]
    EmptySubsystem,
    #[error("vector has dimension {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cannot normalise the zero vector")]
    ZeroVector,
}

/// A finite root system with a fixed positive system.
#[derive(Clone, Debug)]
pub struct RootSystem {
    type_label: RootType,
    rank: usize,
    coord_dim: usize,
    roots: Vec<QVec>,
    positive: Vec<QVec>,
    simple: Vec<QVec>,
    scale_note: &'static str,
}

impl RootSystem {
    pub fn type_label(&self) -> RootType {
        self.type_label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Dimension of the ambient coordinate space.
    pub fn coord_dim(&self) -> usize {
        self.coord_dim
    }

    /// All roots in a fixed deterministic order.
    pub fn roots(&self) -> &[QVec] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[QVec] {
        &self.positive
    }

    pub fn simple_roots(&self) -> &[QVec] {
        &self.simple
    }

    /// How root lengths relate to the Lie algebra inner product.
    pub fn scale_note(&self) -> &'static str {
        self.scale_note
    }

    pub fn contains(&self, v: &QVec) -> bool {
        self.roots.binary_search(v).is_ok()
    }

    fn check_dim(&self, v: &QVec) -> Result<(), RootError> {
        if v.len() != self.coord_dim {
            return Err(RootError::DimensionMismatch { expected: self.coord_dim, got: v.len() });
        }
        Ok(())
    }

    /// Generators of the Weyl group: reflections in the simple roots, plus the
    /// sign change of the last coordinate for type D when `outer` is set.
    pub fn weyl_generators(&self, outer: bool) -> Vec<Generator> {
        let mut g: Vec<Generator> = self.simple.iter().cloned().map(Generator::Reflection).collect();
        if outer && self.type_label == RootType::D {
            g.push(Generator::FlipLast);
        }
        g
    }

    /// Unordered pairs of orthogonal roots `{α, β}` with `α ≠ ±β`.
    pub fn orthogonal_root_pairs(&self) -> Vec<(QVec, QVec)> {
        let mut out = Vec::new();
        for (i, a) in self.roots.iter().enumerate() {
            for b in &self.roots[i + 1..] {
                if a.dot(b).is_zero() {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        out
    }

    /// The unique point of the Weyl orbit of `v` in the closed fundamental
    /// chamber.
    pub fn dominant_representative(&self, v: &QVec) -> Result<QVec, RootError> {
        self.check_dim(v)?;
        let cap = weyl_order(self.type_label, self.rank).max(1);
        let mut w = v.clone();
        let mut steps: u128 = 0;
        while let Some(a) = self.simple.iter().find(|a| w.dot(a).signum() < 0) {
            w = w.reflect(a);
            steps += 1;
            assert!(steps <= cap, "dominant_representative failed to terminate");
        }
        Ok(w)
    }

    /// Canonical representative of `ℝ^×·W·v`: scaled so the largest absolute
    /// coordinate is one, made dominant, and the lexicographically smallest
    /// choice among `±v` (and the type-D sign flip when `outer` is set).
    pub fn canonical_up_to_scale(&self, v: &QVec, outer: bool) -> Result<QVec, RootError> {
        self.check_dim(v)?;
        let m = v.max_abs();
        if m.is_zero() {
            return Err(RootError::ZeroVector);
        }
        let inv = m.inverse().expect("nonzero");
        let base = v.scale(&inv);
        let mut cands = vec![base.clone(), base.neg()];
        if outer && self.type_label == RootType::D {
            let flipped: Vec<QVec> = cands.iter().map(flip_last).collect();
            cands.extend(flipped);
        }
        let reps: Result<Vec<QVec>, RootError> = cands.iter().map(|c| self.dominant_representative(c)).collect();
        Ok(reps?.into_iter().min().expect("nonempty"))
    }

    /// Restriction to the roots selected by `pred`.
    pub fn subsystem<F: Fn(&QVec) -> bool>(&self, pred: F) -> Result<RootSystem, RootError> {
        let roots: Vec<QVec> = self.roots.iter().filter(|r| pred(r)).cloned().collect();
        if roots.is_empty() {
            return Err(RootError::EmptySubsystem);
        }
        if roots.iter().any(|r| roots.binary_search(&r.neg()).is_err()) {
            return Err(RootError::NotClosedUnderNegation);
        }
        let rank = exact_rank(&roots);
        let type_label = identify(&roots, rank);
        let rs = finish(type_label, rank, self.coord_dim, roots, self.scale_note);
        Ok(rs)
    }
}

/// A generator of a (possibly extended) Weyl group acting on coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    Reflection(QVec),
    /// `e_m ↦ -e_m` on the last coordinate.
    FlipLast,
}

impl Generator {
    pub fn apply(&self, v: &QVec) -> QVec {
        match self {
            Generator::Reflection(a) => v.reflect(a),
            Generator::FlipLast => flip_last(v),
        }
    }
}

fn flip_last(v: &QVec) -> QVec {
    let mut w = v.clone();
    if let Some(x) = w.0.last_mut() {
        *x = -&*x;
    }
    w
}

/// Reflection of `v` in the hyperplane orthogonal to `alpha`.
pub fn reflect(v: &QVec, alpha: &QVec) -> QVec {
    v.reflect(alpha)
}

/// Result of an orbit enumeration.
#[derive(Clone, Debug)]
pub struct Orbit {
    /// Orbit points in breadth-first order, starting with the seed vector.
    pub points: Vec<QVec>,
    /// For each point after the first, its parent index and the generator
    /// that maps the parent to it.
    pub parents: Vec<Option<(usize, usize)>>,
    /// Set when the cap was hit before the orbit closed.
    pub truncated: bool,
}

impl Orbit {
    /// Generator indices, in application order, carrying the seed to point `i`.
    pub fn word(&self, mut i: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while let Some((p, g)) = self.parents[i] {
            w.push(g);
            i = p;
        }
        w.reverse();
        w
    }
}

/// Breadth-first enumeration of the orbit of `v` under `generators`.
pub fn weyl_orbit(v: &QVec, generators: &[Generator], cap: usize) -> Orbit {
    let mut index: HashMap<QVec, usize> = HashMap::new();
    let mut points = vec![v.clone()];
    let mut parents = vec![None];
    index.insert(v.clone(), 0);
    let mut queue = VecDeque::from([0usize]);
    let mut truncated = false;
    'outer: while let Some(i) = queue.pop_front() {
        for (gi, g) in generators.iter().enumerate() {
            let w = g.apply(&points[i]);
            if index.contains_key(&w) {
                continue;
            }
            if points.len() >= cap {
                truncated = true;
                break 'outer;
            }
            index.insert(w.clone(), points.len());
            points.push(w);
            parents.push(Some((i, gi)));
            queue.push_back(points.len() - 1);
        }
    }
    Orbit { points, parents, truncated }
}

/// Order of the Weyl group, saturating at `u128::MAX`.
pub fn weyl_order(ty: RootType, rank: usize) -> u128 {
    let fact = |n: usize| (1..=n as u128).fold(1u128, |a, b| a.saturating_mul(b));
    let pow2 = |n: usize| 1u128.checked_shl(n as u32).unwrap_or(u128::MAX);
    match ty {
        RootType::A => fact(rank + 1),
        RootType::B | RootType::C => pow2(rank).saturating_mul(fact(rank)),
        RootType::D => pow2(rank.saturating_sub(1)).saturating_mul(fact(rank)),
        RootType::E6 => 51_840,
        RootType::E7 => 2_903_040,
        RootType::E8 => 696_729_600,
        RootType::F4 => 1_152,
        RootType::G2 => 12,
        RootType::Other => u128::MAX,
    }
}

/// Builds the root system of the given type and rank.
pub fn build_root_system(ty: RootType, rank: usize) -> Result<RootSystem, RootError> {
    if let Some(r) = ty.fixed_rank() {
        if rank != r {
            return Err(RootError::InvalidRank { ty, rank, min: r });
        }
    } else if ty == RootType::Other {
        return Err(RootError::Unsupported(ty));
    } else if rank < ty.min_rank() {
        return Err(RootError::InvalidRank { ty, rank, min: ty.min_rank() });
    }
    let n = rank;
    let z = Quad::zero;
    let int = |k: i128| Quad::from_int(k);
    let half = |s: i128| Quad::from_ratio(s, 2);
    let mut roots: Vec<QVec> = Vec::new();
    let coord_dim = match ty {
        RootType::A => n + 1,
        _ => n,
    };
    // ±e_i ± e_j over the first `m` coordinates of a `dim`-dimensional space.
    let pm_pairs = |m: usize, dim: usize, out: &mut Vec<QVec>| {
        for i in 0..m {
            for j in i + 1..m {
                for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                    let mut v = QVec::zeros(dim);
                    v.0[i] = int(si);
                    v.0[j] = int(sj);
                    out.push(v);
                }
            }
        }
    };
    let note;
    match ty {
        RootType::A => {
            for i in 0..=n {
                for j in 0..=n {
                    if i != j {
                        let mut v = QVec::zeros(n + 1);
                        v.0[i] = int(1);
                        v.0[j] = int(-1);
                        roots.push(v);
                    }
                }
            }
            note = "unit e_i; roots ±(e_i - e_j) of squared length 2";
        }
        RootType::B | RootType::C | RootType::D => {
            pm_pairs(n, n, &mut roots);
            if ty != RootType::D {
                let k = if ty == RootType::B { 1 } else { 2 };
                for i in 0..n {
                    for s in [k, -k] {
                        let mut v = QVec::zeros(n);
                        v.0[i] = int(s);
                        roots.push(v);
                    }
                }
            }
            note = match ty {
                RootType::B => "unit e_i; long roots ±e_i±e_j, short roots ±e_i",
                RootType::C => "unit e_i; short roots ±e_i±e_j, long roots ±2e_i",
                _ => "unit e_i; roots ±e_i±e_j of squared length 2",
            };
        }
        RootType::E6 => {
            pm_pairs(5, 6, &mut roots);
            for mask in 0u32..64 {
                if mask.count_ones() % 2 == 1 {
                    let mut v = QVec::zeros(6);
                    for k in 0..5 {
                        v.0[k] = half(if mask >> k & 1 == 1 { 1 } else { -1 });
                    }
                    let s = if mask >> 5 & 1 == 1 { 1 } else { -1 };
                    v.0[5] = Quad::sqrt3(rat(s, 2));
                    roots.push(v);
                }
            }
            note = "roots of squared length 2, last coordinate carries √3/2";
        }
        RootType::E7 => {
            pm_pairs(6, 7, &mut roots);
            for s in [1, -1] {
                let mut v = QVec::zeros(7);
                v.0[6] = Quad::sqrt2(Rational::from_integer(s));
                roots.push(v);
            }
            for mask in 0u32..128 {
                if (mask & 63).count_ones() % 2 == 1 {
                    let mut v = QVec::zeros(7);
                    for k in 0..6 {
                        v.0[k] = half(if mask >> k & 1 == 1 { 1 } else { -1 });
                    }
                    let s = if mask >> 6 & 1 == 1 { 1 } else { -1 };
                    v.0[6] = Quad::sqrt2(rat(s, 2));
                    roots.push(v);
                }
            }
            note = "roots of squared length 2, last coordinate carries √2";
        }
        RootType::E8 => {
            pm_pairs(8, 8, &mut roots);
            for mask in 0u32..256 {
                if mask.count_ones() % 2 == 0 {
                    let v = QVec((0..8).map(|k| half(if mask >> k & 1 == 1 { 1 } else { -1 })).collect());
                    roots.push(v);
                }
            }
            note = "roots of squared length 2";
        }
        RootType::F4 => {
            pm_pairs(4, 4, &mut roots);
            for i in 0..4 {
                for s in [1, -1] {
                    let mut v = QVec::zeros(4);
                    v.0[i] = int(s);
                    roots.push(v);
                }
            }
            for mask in 0u32..16 {
                let v = QVec((0..4).map(|k| half(if mask >> k & 1 == 1 { 1 } else { -1 })).collect());
                roots.push(v);
            }
            note = "long roots ±e_i±e_j, short roots ±e_i and ½(±e_1±e_2±e_3±e_4)";
        }
        RootType::G2 => {
            let r3 = |p: i128, q: i128| Quad::sqrt3(rat(p, q));
            for s in [1, -1] {
                roots.push(QVec(vec![r3(s, 1), z()]));
                roots.push(QVec(vec![z(), int(s)]));
                for t in [1, -1] {
                    roots.push(QVec(vec![r3(s, 2), Quad::from_ratio(3 * t, 2)]));
                    roots.push(QVec(vec![r3(s, 2), Quad::from_ratio(t, 2)]));
                }
            }
            note = "long roots of squared length 3, short roots of squared length 1";
        }
        RootType::Other => unreachable!(),
    }
    Ok(finish(ty, n, coord_dim, roots, note))
}

/// Sorts the roots and fixes positive and simple roots from a generic
/// linear functional.
fn finish(
    type_label: RootType,
    rank: usize,
    coord_dim: usize,
    mut roots: Vec<QVec>,
    scale_note: &'static str,
) -> RootSystem {
    roots.sort();
    roots.dedup();
    let rho = generic_functional(&roots, coord_dim);
    let positive: Vec<QVec> = roots.iter().filter(|r| r.dot(&rho).signum() > 0).cloned().collect();
    let mut simple: Vec<QVec> = positive
        .iter()
        .filter(|a| {
            !positive.iter().any(|b| {
                let d = a.sub(b);
                positive.binary_search(&d).is_ok()
            })
        })
        .cloned()
        .collect();
    // Order simple roots by decreasing height functional for readability.
    simple.sort_by_key(|a| std::cmp::Reverse(a.dot(&rho)));
    debug_assert_eq!(simple.len(), rank);
    RootSystem { type_label, rank, coord_dim, roots, positive, simple, scale_note }
}

/// A vector with decreasing powers of three as coordinates, perturbed until it
/// is orthogonal to no root.
fn generic_functional(roots: &[QVec], dim: usize) -> QVec {
    for shift in 0i128.. {
        let rho =
            QVec((0..dim).map(|i| Quad::from_int(3i128.pow((dim - 1 - i) as u32) + shift * (i as i128 + 1))).collect());
        if roots.iter().all(|r| !r.dot(&rho).is_zero()) {
            return rho;
        }
    }
    unreachable!()
}

/// Identifies an irreducible root system from its size, rank and root lengths.
fn identify(roots: &[QVec], rank: usize) -> RootType {
    let n = roots.len();
    let mut lengths: Vec<Quad> = roots.iter().map(QVec::norm2).collect();
    lengths.sort();
    let short = lengths.iter().filter(|l| **l == lengths[0]).count();
    lengths.dedup();
    let r = rank;
    match lengths.len() {
        1 => {
            if n == r * (r + 1) {
                RootType::A
            } else if r >= 4 && n == 2 * r * (r - 1) {
                RootType::D
            } else if r == 6 && n == 72 {
                RootType::E6
            } else if r == 7 && n == 126 {
                RootType::E7
            } else if r == 8 && n == 240 {
                RootType::E8
            } else {
                RootType::Other
            }
        }
        2 => {
            if r == 4 && n == 48 {
                RootType::F4
            } else if r == 2 && n == 12 {
                RootType::G2
            } else if n == 2 * r * r && short == 2 * r {
                RootType::B
            } else if n == 2 * r * r && n - short == 2 * r {
                RootType::C
            } else {
                RootType::Other
            }
        }
        _ => RootType::Other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_types() -> Vec<RootSystem> {
        let mut v = Vec::new();
        for (ty, lo) in [(RootType::A, 1), (RootType::B, 2), (RootType::C, 3), (RootType::D, 4)] {
            for n in lo..=6 {
                v.push(build_root_system(ty, n).unwrap());
            }
        }
        for ty in [RootType::E6, RootType::E7, RootType::E8, RootType::F4, RootType::G2] {
            v.push(build_root_system(ty, ty.fixed_rank().unwrap()).unwrap());
        }
        v
    }

    #[test]
    fn closed_under_reflections_and_integral() {
        for rs in all_types() {
            for a in rs.roots() {
                for b in rs.roots() {
                    assert!(rs.contains(&b.reflect(a)), "{} {}: s_{a}({b})", rs.type_label(), rs.rank());
                    let c = &(a.dot(b) * Quad::from_int(2)) / &a.norm2();
                    let c = c.as_rational().expect("rational Cartan integer");
                    assert!(c.is_integer());
                }
            }
        }
    }

    #[test]
    fn simple_roots_span_and_positive_count() {
        for rs in all_types() {
            assert_eq!(rs.simple_roots().len(), rs.rank());
            assert_eq!(exact_rank(rs.simple_roots()), rs.rank());
            assert_eq!(rs.positive_roots().len() * 2, rs.roots().len());
        }
    }

    #[test]
    fn classical_simple_roots_are_standard() {
        let b3 = build_root_system(RootType::B, 3).unwrap();
        let want = [QVec::from_ints(&[1, -1, 0]), QVec::from_ints(&[0, 1, -1]), QVec::from_ints(&[0, 0, 1])];
        for w in &want {
            assert!(b3.simple_roots().contains(w));
        }
    }

    #[test]
    fn invalid_ranks() {
        assert!(matches!(build_root_system(RootType::B, 1), Err(RootError::InvalidRank { .. })));
        assert!(build_root_system(RootType::C, 2).is_err());
        assert!(build_root_system(RootType::D, 3).is_err());
        assert!(build_root_system(RootType::E6, 5).is_err());
        assert!(build_root_system(RootType::A, 0).is_err());
    }

    #[test]
    fn dominant_in_chamber_and_orbit() {
        let b3 = build_root_system(RootType::B, 3).unwrap();
        let v = QVec::from_ints(&[-1, 3, -2]);
        let d = b3.dominant_representative(&v).unwrap();
        assert_eq!(d, QVec::from_ints(&[3, 2, 1]));
        let orbit = weyl_orbit(&v, &b3.weyl_generators(false), DEFAULT_ORBIT_CAP);
        assert_eq!(orbit.points.len(), 48);
        assert!(orbit.points.contains(&d));
    }

    #[test]
    fn words_reproduce_orbit_points() {
        let a3 = build_root_system(RootType::A, 3).unwrap();
        let gens = a3.weyl_generators(false);
        let v = QVec::from_ints(&[3, -1, -1, -1]);
        let orbit = weyl_orbit(&v, &gens, DEFAULT_ORBIT_CAP);
        assert_eq!(orbit.points.len(), 4);
        for i in 0..orbit.points.len() {
            let w = orbit.word(i).iter().fold(v.clone(), |x, &g| gens[g].apply(&x));
            assert_eq!(w, orbit.points[i]);
        }
    }

    #[test]
    fn outer_flip_extends_d_orbits() {
        let d4 = build_root_system(RootType::D, 4).unwrap();
        let v = QVec::from_ints(&[1, 1, 1, 1]);
        assert_eq!(weyl_orbit(&v, &d4.weyl_generators(false), DEFAULT_ORBIT_CAP).points.len(), 8);
        assert_eq!(weyl_orbit(&v, &d4.weyl_generators(true), DEFAULT_ORBIT_CAP).points.len(), 16);
        let w = QVec::from_ints(&[1, 1, 1, -1]);
        assert_eq!(d4.canonical_up_to_scale(&w, true).unwrap(), d4.canonical_up_to_scale(&v, true).unwrap());
    }

    #[test]
    fn orbit_cap_truncates() {
        let e8 = build_root_system(RootType::E8, 8).unwrap();
        let v = QVec::from_ints(&[8, 7, 6, 5, 4, 3, 2, 1]);
        let o = weyl_orbit(&v, &e8.weyl_generators(false), 1000);
        assert!(o.truncated);
        assert_eq!(o.points.len(), 1000);
    }

    #[test]
    fn subsystem_identification() {
        let e8 = build_root_system(RootType::E8, 8).unwrap();
        let d8 = e8.subsystem(|r| r.as_rationals().unwrap().iter().all(|x| x.is_integer())).unwrap();
        assert_eq!((d8.type_label(), d8.rank(), d8.roots().len()), (RootType::D, 8, 112));
        let f4 = build_root_system(RootType::F4, 4).unwrap();
        let b4 = f4.subsystem(|r| r.as_rationals().unwrap().iter().all(|x| x.is_integer())).unwrap();
        assert_eq!((b4.type_label(), b4.roots().len()), (RootType::B, 32));
        let bad = f4.subsystem(|r| r.0[0].signum() > 0);
        assert_eq!(bad.unwrap_err(), RootError::NotClosedUnderNegation);
    }

    #[test]
    fn b2_orthogonal_pairs() {
        let b2 = build_root_system(RootType::B, 2).unwrap();
        let pairs = b2.orthogonal_root_pairs();
        let has = |a: &[i128], b: &[i128]| {
            let (a, b) = (QVec::from_ints(a), QVec::from_ints(b));
            pairs.iter().any(|(x, y)| (x == &a && y == &b) || (x == &b && y == &a))
        };
        assert!(has(&[1, 0], &[0, 1]));
        assert!(has(&[1, -1], &[1, 1]));
        assert!(!has(&[1, 0], &[-1, 0]));
    }
}
