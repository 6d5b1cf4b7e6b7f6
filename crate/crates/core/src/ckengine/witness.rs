//! Search for two group elements with different values of `f`.

use nalgebra::DMatrix;
use rayon::prelude::*;

use super::sampling::{sample_element, OrbitProbe};
use crate::matmodel::expm;

/// Two group elements certifying that `f` is not constant.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub g1: DMatrix<f64>,
    pub g2: DMatrix<f64>,
    pub f1: f64,
    pub f2: f64,
}

impl Witness {
    pub fn gap(&self) -> f64 {
        self.f2 - self.f1
    }
}

/// Number of step sizes `2^-s` tried by the line search.
const LEVELS: usize = 24;

/// Relative improvement below which a step counts as float noise.
const MIN_GAIN: f64 = 1e-14;

/// Stream offset keeping coarse witness samples apart from tier-3 samples.
const COARSE_STREAM: u64 = 1 << 40;

/// `exp(±2^-s B_k)` for every basis element `B_k` and level `s`.
pub(crate) struct StepTable {
    steps: Vec<[Vec<DMatrix<f64>>; 2]>,
}

impl StepTable {
    pub(crate) fn new(probe: &OrbitProbe<'_>) -> Self {
        let steps = probe
            .pair
            .model()
            .basis()
            .par_iter()
            .map(|b| {
                let at = |sign: f64| (0..LEVELS).map(|s| expm(&(&b.mat * (sign * 0.5f64.powi(s as i32))))).collect();
                [at(1.0), at(-1.0)]
            })
            .collect();
        StepTable { steps }
    }
}

/// Coordinate-wise line search on `g ↦ exp(t B_k) g`, maximizing `sign·f`.
/// Returns the improved element, its value and the evaluations used.
pub(crate) fn refine(
    probe: &OrbitProbe<'_>,
    table: &StepTable,
    mut g: DMatrix<f64>,
    maximize: bool,
    budget: usize,
) -> (DMatrix<f64>, f64, usize) {
    let sign = if maximize { 1.0 } else { -1.0 };
    let mut best = sign * probe.f(&g);
    let mut used = 0;
    let mut level = 0;
    let eps = MIN_GAIN * probe.v_norm2;
    while level < LEVELS && used < budget {
        let mut improved = false;
        for dirs in &table.steps {
            for dir in dirs {
                if used >= budget {
                    break;
                }
                let cand = &dir[level] * &g;
                used += 1;
                let val = sign * probe.f(&cand);
                if val > best + eps {
                    best = val;
                    g = cand;
                    improved = true;
                }
            }
        }
        if !improved {
            level += 1;
        }
    }
    (g, sign * best, used)
}

/// Coarse sampling followed by local refinement of the extreme samples.
/// `budget` bounds the number of evaluations of `f` per phase; extra
/// starting elements (for instance realized Weyl elements) can be supplied.
/// Returns `None` when the spread found stays below `tol·‖v‖²`.
pub fn witness_search(
    probe: &OrbitProbe<'_>,
    budget: usize,
    seed: u64,
    steps: usize,
    starts: &[DMatrix<f64>],
    tol: f64,
) -> Option<Witness> {
    let coarse = (budget / 4).max(1);
    let mut pool: Vec<DMatrix<f64>> = starts.to_vec();
    pool.push(probe.pair.model().identity().mat);
    pool.extend(
        (1..=coarse as u64)
            .into_par_iter()
            .map(|k| sample_element(probe.pair, seed, COARSE_STREAM + k, steps))
            .collect::<Vec<_>>(),
    );
    let values: Vec<f64> = pool.par_iter().map(|g| probe.f(g)).collect();
    let (mut lo, mut hi) = (0, 0);
    for (i, &f) in values.iter().enumerate() {
        if f < values[lo] {
            lo = i;
        }
        if f > values[hi] {
            hi = i;
        }
    }
    let table = StepTable::new(probe);
    let ((g1, f1, _), (g2, f2, _)) = rayon::join(
        || refine(probe, &table, pool[lo].clone(), false, budget),
        || refine(probe, &table, pool[hi].clone(), true, budget),
    );
    let w = Witness { g1, g2, f1, f2 };
    (w.gap() > tol * probe.v_norm2).then_some(w)
}
