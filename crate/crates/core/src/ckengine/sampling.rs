//! Numeric orbit tests: first-order residual and sampled constancy.

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::homcat::HomogeneousPair;
use crate::matmodel::{adjoint_raw, bracket_raw};

/// A pair together with a fixed Cartan vector `v`, evaluated at group elements.
pub struct OrbitProbe<'a> {
    pub pair: &'a HomogeneousPair,
    pub v: DMatrix<f64>,
    pub v_norm2: f64,
}

/// Values at one orbit point `x = Ad(g)v`.
#[derive(Clone, Copy, Debug)]
pub struct PointEval {
    /// `‖pr_m x‖²`
    pub f: f64,
    pub h_norm2: f64,
    pub norm2: f64,
}

impl<'a> OrbitProbe<'a> {
    pub fn new(pair: &'a HomogeneousPair, v: DMatrix<f64>) -> Self {
        let v_norm2 = pair.model().inner_raw(&v, &v);
        OrbitProbe { pair, v, v_norm2 }
    }

    pub fn point(&self, g: &DMatrix<f64>) -> DMatrix<f64> {
        adjoint_raw(g, &self.v)
    }

    pub fn eval_point(&self, x: &DMatrix<f64>) -> PointEval {
        let c = self.pair.model().coords_raw(x);
        let f = (self.pair.m_coeffs().transpose() * &c).norm_squared();
        let h_norm2 = (self.pair.h_coeffs().transpose() * &c).norm_squared();
        PointEval { f, h_norm2, norm2: c.norm_squared() }
    }

    /// `f(g) = ‖pr_m(Ad(g)v)‖²`.
    pub fn f(&self, g: &DMatrix<f64>) -> f64 {
        self.eval_point(&self.point(g)).f
    }

    /// `max_w |⟨pr_m x, pr_m [w,x]⟩| / ‖v‖²` over an orthonormal basis `w`.
    /// By invariance of the form this is the largest coordinate of
    /// `[x, pr_m x]`.
    pub fn first_order_residual(&self, x: &DMatrix<f64>) -> f64 {
        let (_, xm) = self.pair.project(x);
        let b = bracket_raw(x, &xm);
        self.pair.model().coords_raw(&b).amax() / self.v_norm2
    }

    /// Same residual computed term by term, for cross-checking.
    pub fn first_order_residual_direct(&self, x: &DMatrix<f64>) -> f64 {
        let model = self.pair.model();
        let (_, xm) = self.pair.project(x);
        let mut worst: f64 = 0.0;
        for w in model.basis() {
            let (_, bm) = self.pair.project(&bracket_raw(&w.mat, x));
            worst = worst.max(model.inner_raw(&xm, &bm).abs());
        }
        worst / self.v_norm2
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tier2Result {
    pub points: usize,
    pub max_residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tier3Result {
    /// Random samples, not counting the identity.
    pub samples: usize,
    pub steps: usize,
    pub seed: u64,
    pub min_f: f64,
    pub max_f: f64,
    /// Sample index of the minimum (0 is the identity).
    pub argmin: u64,
    pub argmax: u64,
    /// Largest `|‖Ad(g)v‖² - ‖v‖²|`.
    pub max_norm_defect: f64,
    /// Largest `|‖pr_h x‖² + ‖pr_m x‖² - ‖x‖²|`.
    pub max_pythagoras_defect: f64,
}

impl Tier3Result {
    pub fn spread(&self) -> f64 {
        self.max_f - self.min_f
    }
}

/// Group element used for sample `index`: the identity at 0, otherwise a
/// random element from the `(seed, index)` stream.
pub fn sample_element(pair: &HomogeneousPair, seed: u64, index: u64, steps: usize) -> DMatrix<f64> {
    if index == 0 {
        pair.model().identity().mat
    } else {
        pair.model().random_group_element(seed, index, steps).mat
    }
}

struct Sample {
    eval: PointEval,
    residual: Option<f64>,
}

/// Evaluates tiers 2 and 3 in one pass over samples `0..=n_samples`; the
/// first `tier2_points + 1` of them also get the first-order residual.
pub fn sample_orbit(
    probe: &OrbitProbe<'_>,
    n_samples: usize,
    tier2_points: usize,
    steps: usize,
    seed: u64,
) -> (Tier2Result, Tier3Result) {
    let rows: Vec<Sample> = (0..=n_samples as u64)
        .into_par_iter()
        .map(|k| {
            let g = sample_element(probe.pair, seed, k, steps);
            let x = probe.point(&g);
            let eval = probe.eval_point(&x);
            let residual = (k as usize <= tier2_points).then(|| probe.first_order_residual(&x));
            Sample { eval, residual }
        })
        .collect();
    let mut t3 = Tier3Result {
        samples: n_samples,
        steps,
        seed,
        min_f: f64::INFINITY,
        max_f: f64::NEG_INFINITY,
        argmin: 0,
        argmax: 0,
        max_norm_defect: 0.0,
        max_pythagoras_defect: 0.0,
    };
    let mut t2 = Tier2Result { points: 0, max_residual: 0.0 };
    for (k, s) in rows.iter().enumerate() {
        let e = s.eval;
        if e.f < t3.min_f {
            t3.min_f = e.f;
            t3.argmin = k as u64;
        }
        if e.f > t3.max_f {
            t3.max_f = e.f;
            t3.argmax = k as u64;
        }
        t3.max_norm_defect = t3.max_norm_defect.max((e.norm2 - probe.v_norm2).abs());
        t3.max_pythagoras_defect = t3.max_pythagoras_defect.max((e.h_norm2 + e.f - e.norm2).abs());
        if let Some(r) = s.residual {
            t2.points += 1;
            t2.max_residual = t2.max_residual.max(r);
        }
    }
    (t2, t3)
}
