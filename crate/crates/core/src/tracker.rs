//! Numerical continuation of the 24-point discriminant fiber along a
//! parameter loop, producing the monodromy permutation.
//!
//! The predictor is zeroth order (previous roots); the corrector is Newton
//! against the discriminant at the new parameter value, confined to a trust
//! radius that is a fraction of the current minimum pairwise root distance.
//! Steps halve on any correction failure and grow on success.

use crate::permgroup::Permutation;
use crate::roots::{self, newton_polish_with};
use crate::weierstrass::ParameterLoop;
use rayon::prelude::*;
use thiserror::Error;

/// Collision threshold: tracking aborts if the fiber's minimum pairwise
/// distance falls below this fraction of the root scale.
pub const COLLISION_EPS: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum TrackError {
    #[error("the base fiber could not be computed: {0}")]
    BaseInvalid(String),
    #[error("step size underflowed; the loop passes too close to the branch locus")]
    PathTooClose,
    #[error("loops passed to the batch driver have different base points")]
    BaseMismatch,
}

/// Step-size policy for the continuation.
#[derive(Debug, Clone, Copy)]
pub struct TrackerConfig {
    /// First step in loop parameter.
    pub initial_step: f64,
    /// Below this step size tracking gives up with [`TrackError::PathTooClose`].
    pub min_step: f64,
    /// Newton trust radius as a fraction of the current minimum pairwise
    /// root distance; must stay below 0.5 so trust regions never overlap.
    pub trust_factor: f64,
    /// Step multiplier after an accepted step.
    pub step_growth: f64,
    /// Step multiplier after a rejected step.
    pub step_shrink: f64,
}

impl Default for TrackerConfig {
    fn default() -> Self {
        TrackerConfig {
            initial_step: 1e-2,
            min_step: 1e-9,
            trust_factor: 0.4,
            step_growth: 1.5,
            step_shrink: 0.5,
        }
    }
}

impl TrackerConfig {
    pub fn validate(&self) {
        assert!(self.min_step > 0.0 && self.min_step < self.initial_step);
        assert!(self.initial_step <= 1.0);
        assert!(self.trust_factor > 0.0 && self.trust_factor < 0.5);
        assert!(self.step_growth > 1.0 && self.step_shrink < 1.0 && self.step_shrink > 0.0);
    }

    /// The same policy with every step bound divided by `factor` (used by
    /// the fine-step re-tracking oracle).
    pub fn finer(&self, factor: f64) -> TrackerConfig {
        TrackerConfig {
            initial_step: self.initial_step / factor,
            min_step: self.min_step / factor,
            ..*self
        }
    }
}

/// The monodromy permutation of one loop plus tracking diagnostics.
#[derive(Debug, Clone)]
pub struct TrackedPermutation {
    pub perm: Permutation,
    pub min_separation_seen: f64,
    pub steps_taken: usize,
    pub max_residual: f64,
}

struct StepState {
    roots: Vec<num_complex::Complex64>,
    min_sep: f64,
}

/// Track the fiber around `lp` and return the induced permutation of the
/// base labels.
pub fn track_loop(
    lp: &ParameterLoop,
    cfg: &TrackerConfig,
) -> Result<TrackedPermutation, TrackError> {
    cfg.validate();
    match track_loop_attempt(lp, cfg) {
        Ok(out) => Ok(out),
        // one retry at a 10x finer schedule before giving up; ambiguity at
        // the final assignment is also funneled through here
        Err(TrackError::PathTooClose) => track_loop_attempt(lp, &cfg.finer(10.0)),
        Err(e) => Err(e),
    }
}

fn track_loop_attempt(
    lp: &ParameterLoop,
    cfg: &TrackerConfig,
) -> Result<TrackedPermutation, TrackError> {
    let base_fiber = lp
        .base
        .fiber()
        .map_err(|e| TrackError::BaseInvalid(e.to_string()))?;
    let start_roots = base_fiber.roots.clone();
    let mut state = StepState {
        roots: start_roots.clone(),
        min_sep: base_fiber.separation,
    };
    let mut min_separation_seen = base_fiber.separation;
    let mut max_residual = base_fiber.residual;
    let mut steps_taken = 0usize;

    let mut s = 0.0f64;
    let mut step = cfg.initial_step;
    while s < 1.0 {
        let s_next = (s + step).min(1.0);
        match correct_at(lp, s_next, &state, cfg) {
            Some(next) => {
                s = s_next;
                steps_taken += 1;
                min_separation_seen = min_separation_seen.min(next.min_sep);
                let scale = roots::root_scale(&next.roots);
                if next.min_sep < COLLISION_EPS * scale {
                    return Err(TrackError::PathTooClose);
                }
                state = next;
                step = (step * cfg.step_growth).min(cfg.initial_step.max(step));
                // never outgrow the remaining interval pointlessly
                step = step.min(1.0);
            }
            None => {
                step *= cfg.step_shrink;
                if step < cfg.min_step {
                    return Err(TrackError::PathTooClose);
                }
            }
        }
    }

    // close the loop: match the final fiber back to the base labels by
    // nearest assignment with a 2x margin
    let perm = assign_nearest(&state.roots, &start_roots, state.min_sep)
        .ok_or(TrackError::PathTooClose)?;

    // residual bookkeeping at the endpoint
    if let Ok((poly, _)) = lp.base.affine_discriminant() {
        for &r in &state.roots {
            max_residual = max_residual.max(poly.eval(r).norm() / roots::eval_scale(&poly, r));
        }
    }

    Ok(TrackedPermutation {
        perm,
        min_separation_seen,
        steps_taken,
        max_residual,
    })
}

/// Newton-correct all 24 roots at loop parameter `s`; `None` if any root
/// fails to converge inside its trust region.
fn correct_at(
    lp: &ParameterLoop,
    s: f64,
    state: &StepState,
    cfg: &TrackerConfig,
) -> Option<StepState> {
    let pair = lp.eval(s);
    let (poly, _) = pair.affine_discriminant().ok()?;
    // a degree drop means a root escaped to infinity mid-path
    if poly.degree() != Some(state.roots.len()) {
        return None;
    }
    let dp = poly.derivative();
    let trust = cfg.trust_factor * state.min_sep;
    let mut next = Vec::with_capacity(state.roots.len());
    for &z in &state.roots {
        match newton_polish_with(&poly, &dp, z, trust) {
            Ok(r) => next.push(r),
            Err(_) => return None,
        }
    }
    let min_sep = roots::min_pairwise(&next);
    Some(StepState {
        roots: next,
        min_sep,
    })
}

/// Match `from[i]` to its nearest entry of `to`; the assignment must be a
/// bijection, every match distance must stay below half the fiber
/// separation, and each best match must beat the second-best by 2x.
fn assign_nearest(
    from: &[num_complex::Complex64],
    to: &[num_complex::Complex64],
    min_sep: f64,
) -> Option<Permutation> {
    let n = from.len();
    let mut images = vec![usize::MAX; n];
    let mut taken = vec![false; n];
    for (i, &z) in from.iter().enumerate() {
        let mut best = (f64::INFINITY, usize::MAX);
        let mut second = f64::INFINITY;
        for (j, &w) in to.iter().enumerate() {
            let d = (z - w).norm();
            if d < best.0 {
                second = best.0;
                best = (d, j);
            } else if d < second {
                second = d;
            }
        }
        if best.0 > 0.5 * min_sep || best.0 * 2.0 > second || taken[best.1] {
            return None;
        }
        taken[best.1] = true;
        // the lifted arc starting at base root i ends at from[i], which is
        // the base root best.1: the loop sends label i to label best.1
        images[i] = best.1;
    }
    Permutation::from_images(images).ok()
}

/// Track many loops sharing one base point; results keep input order.
pub fn track_composite(
    loops: &[ParameterLoop],
    cfg: &TrackerConfig,
) -> Result<Vec<TrackedPermutation>, TrackError> {
    if let Some(first) = loops.first() {
        if loops[1..]
            .iter()
            .any(|lp| !lp.base.approx_eq(&first.base, 0.0))
        {
            return Err(TrackError::BaseMismatch);
        }
    }
    loops
        .par_iter()
        .map(|lp| track_loop(lp, cfg))
        .collect::<Result<Vec<_>, _>>()
}
