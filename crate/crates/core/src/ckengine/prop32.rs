//! Brute-force enumeration of Weyl-level CK candidates on a rational grid.

use std::collections::BTreeSet;

use num_traits::Signed;

use crate::exact::{rat, QVec, Quad, Rational};
use crate::homcat::CartanSplit;
use crate::rootsys::{build_root_system, weyl_orbit, Generator, RootSystem, RootType, DEFAULT_ORBIT_CAP};

use super::tier1::tier1_weyl_constancy;
use super::EngineError;

pub const MAX_RANK: usize = 4;
pub const MAX_DENOMINATOR: i128 = 3;

#[derive(Clone, Debug, PartialEq)]
pub struct Prop32Result {
    /// Grid vectors tested (nonzero, in `t`, dominant, max coordinate 1).
    pub examined: usize,
    /// Canonical survivors, up to Weyl group and scale.
    pub survivors: Vec<QVec>,
    /// Canonical forms of the reference list for this type.
    pub reference: Vec<QVec>,
    /// Survivors outside the reference list.
    pub outside: Vec<QVec>,
}

impl Prop32Result {
    pub fn contained(&self) -> bool {
        self.outside.is_empty()
    }
}

/// Reference candidates: for `A_n`, `n e_1 - e_2 - ⋯` and, when `n` is odd,
/// `e_1 + ⋯ + e_k - e_{k+1} - ⋯`; for `B`, `C`, `D`, `e_1` and `e_1 + ⋯ + e_n`.
pub fn reference_list(rs: &RootSystem) -> Result<Vec<QVec>, EngineError> {
    let n = rs.rank();
    let d = rs.coord_dim();
    let list = match rs.type_label() {
        RootType::A => {
            let mut out =
                vec![QVec::from_ints(&(0..d).map(|i| if i == 0 { n as i128 } else { -1 }).collect::<Vec<_>>())];
            if n % 2 == 1 {
                let k = n.div_ceil(2);
                out.push(QVec::from_ints(&(0..d).map(|i| if i < k { 1 } else { -1 }).collect::<Vec<_>>()));
            }
            out
        }
        RootType::B | RootType::C | RootType::D => vec![QVec::unit(d, 0), QVec::from_ints(&vec![1; d])],
        other => return Err(EngineError::Unsupported(format!("no reference list for type {other}"))),
    };
    Ok(list)
}

/// Runs the exact Weyl test on every dominant grid vector with coordinates
/// `p/q`, `|p| ≤ q ≤ bound`, and largest absolute coordinate 1.
pub fn prop32_oracle(rs: &RootSystem, split: &CartanSplit, bound: i128) -> Result<Prop32Result, EngineError> {
    run(rs, split, bound, false)
}

fn run(rs: &RootSystem, split: &CartanSplit, bound: i128, reversed: bool) -> Result<Prop32Result, EngineError> {
    if rs.rank() > MAX_RANK || !(1..=MAX_DENOMINATOR).contains(&bound) {
        return Err(EngineError::Bounds(format!(
            "rank {} and bound {bound} exceed the limits rank ≤ {MAX_RANK}, 1 ≤ bound ≤ {MAX_DENOMINATOR}",
            rs.rank()
        )));
    }
    let outer = rs.type_label() == RootType::D;
    let gens = rs.weyl_generators(false);
    let mut values: BTreeSet<Rational> = BTreeSet::new();
    for q in 1..=bound {
        for p in -q..=q {
            values.insert(rat(p, q));
        }
    }
    let mut values: Vec<Rational> = values.into_iter().collect();
    if reversed {
        values.reverse();
    }
    let d = rs.coord_dim();
    let one = Rational::from_integer(1);
    let mut examined = 0;
    let mut survivors: BTreeSet<QVec> = BTreeSet::new();
    let mut idx = vec![0usize; d];
    loop {
        let coords: Vec<Rational> = idx.iter().map(|&i| values[i]).collect();
        let max = coords.iter().map(|c| c.abs()).max().expect("nonempty");
        if max == one {
            let v = QVec::from_rationals(&coords);
            let in_t = split.project_h(&v).add(&split.project_m(&v)) == v;
            let dominant = rs.simple_roots().iter().all(|a| a.dot(&v).signum() >= 0);
            if in_t && dominant {
                examined += 1;
                let t1 = tier1_weyl_constancy(split, &gens, &v, DEFAULT_ORBIT_CAP);
                if t1.truncated {
                    return Err(EngineError::Bounds(format!("orbit of {v} exceeded the cap")));
                }
                if t1.pass {
                    survivors.insert(rs.canonical_up_to_scale(&v, outer)?);
                }
            }
        }
        // Odometer increment.
        let mut k = 0;
        loop {
            if k == d {
                let reference: Vec<QVec> =
                    reference_list(rs)?.iter().map(|r| rs.canonical_up_to_scale(r, outer)).collect::<Result<_, _>>()?;
                let outside = survivors.iter().filter(|s| !reference.contains(s)).cloned().collect();
                return Ok(Prop32Result { examined, survivors: survivors.into_iter().collect(), reference, outside });
            }
            idx[k] += 1;
            if idx[k] < values.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// One exceptional-type check: a candidate against a coordinate splitting.
#[derive(Clone, Debug, PartialEq)]
pub struct ExclusionCase {
    /// Coordinates spanning `t∩h`.
    pub subset: Vec<usize>,
    pub candidate: QVec,
    pub rejected: bool,
}

/// For `F4` (through its `B4` subsystem) and `E6` (through `D5`): tests both
/// classical-shaped candidates against every coordinate splitting of `t`
/// with `1 ≤ dim(t∩h) ≤ rank-1`, using the full exceptional Weyl group.
pub fn exceptional_exclusion(ty: RootType) -> Result<Vec<ExclusionCase>, EngineError> {
    let (rank, sub_rank) = match ty {
        RootType::F4 => (4, 4),
        RootType::E6 => (6, 5),
        other => return Err(EngineError::Unsupported(format!("exclusion scan is defined for F4 and E6, not {other}"))),
    };
    let rs = build_root_system(ty, rank)?;
    let d = rs.coord_dim();
    let integral = |r: &QVec| r.0.iter().all(|x| x.as_rational().is_some_and(|q| q.is_integer()));
    let sub = rs.subsystem(|r| integral(r) && r.0[sub_rank..].iter().all(Quad::is_zero))?;
    let expected = if ty == RootType::F4 { RootType::B } else { RootType::D };
    if sub.type_label() != expected || sub.rank() != sub_rank {
        return Err(EngineError::Unsupported(format!("unexpected subsystem {}{}", sub.type_label(), sub.rank())));
    }
    let candidates = [QVec::unit(d, 0), QVec::from_ints(&(0..d).map(|i| i128::from(i < sub_rank)).collect::<Vec<_>>())];
    let gens: Vec<Generator> = rs.weyl_generators(false);
    let mut out = Vec::new();
    for c in &candidates {
        let orbit = weyl_orbit(c, &gens, DEFAULT_ORBIT_CAP);
        if orbit.truncated {
            return Err(EngineError::Bounds(format!("orbit of {c} exceeded the cap")));
        }
        for mask in 1u32..(1 << d) - 1 {
            let subset: Vec<usize> = (0..d).filter(|i| mask >> i & 1 == 1).collect();
            if subset.len() >= rank {
                continue;
            }
            let basis: Vec<QVec> = subset.iter().map(|&i| QVec::unit(d, i)).collect();
            let split = CartanSplit::from_h_basis(&rs, &basis);
            let base = split.h_norm2(c);
            let rejected = orbit.points.iter().any(|w| split.h_norm2(w) != base);
            out.push(ExclusionCase { subset, candidate: c.clone(), rejected });
        }
    }
    Ok(out)
}
