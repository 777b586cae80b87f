//! Simultaneous root finding for low-degree complex polynomials.
//!
//! Aberth-Ehrlich iteration from a scaled circular start, followed by a
//! Newton polish of every root. Produces the labeled fiber used by the
//! tracker; labels are deterministic (descending real part, then imaginary
//! part).

use crate::cpoly::CPoly;
use num_complex::Complex64;
use thiserror::Error;

/// Two roots closer than this fraction of the root scale are treated as a
/// numerically multiple root. An exact double root splits into a pair at
/// distance ~sqrt(machine epsilon) ~ 1.5e-8, so the threshold sits above
/// that and far below the separations of well-posed inputs.
pub const DISTINCT_EPS: f64 = 1e-7;

/// Acceptable normalized residual for a certified fiber.
pub const RESIDUAL_TOL: f64 = 1e-10;

const MAX_SWEEPS: usize = 1000;
const MAX_NEWTON_STEPS: usize = 50;

// irrational angle offset for the circular start, breaks coefficient symmetry
const ANGLE_OFFSET: f64 = 2.399963229728653;

#[derive(Debug, Error)]
pub enum RootError {
    #[error("polynomial must have degree >= 1")]
    DegreeTooLow,
    #[error("two roots closer than the distinctness threshold (separation {separation:.3e})")]
    MultipleRoot { separation: f64 },
    #[error("root iteration did not converge within the sweep budget")]
    NoConvergence,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolishError {
    #[error("Newton iterate left the trust region")]
    LeftTrustRegion,
    #[error("derivative vanished near the iterate")]
    DerivativeVanishes,
    #[error("Newton did not converge")]
    NoConvergence,
}

/// All roots of one polynomial at one parameter value, with labels
/// `0..d-1` in deterministic order.
#[derive(Debug, Clone)]
pub struct Fiber {
    pub roots: Vec<Complex64>,
    /// Minimum pairwise distance between roots.
    pub separation: f64,
    /// Maximum normalized residual over the roots.
    pub residual: f64,
}

/// `sum_k |c_k| max(1,|z|)^k`; the natural magnitude against which a
/// residual `|p(z)|` should be compared.
pub fn eval_scale(p: &CPoly, z: Complex64) -> f64 {
    let m = z.norm().max(1.0);
    let mut acc = 0.0;
    let mut mp = 1.0;
    for c in p.coeffs() {
        acc += c.norm() * mp;
        mp *= m;
    }
    acc
}

pub fn min_pairwise(roots: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            best = best.min((roots[i] - roots[j]).norm());
        }
    }
    best
}

pub fn root_scale(roots: &[Complex64]) -> f64 {
    roots.iter().map(|z| z.norm()).fold(1.0, f64::max)
}

/// Newton refinement of `z0` against `p`, confined to `trust_radius`.
pub fn newton_polish(
    p: &CPoly,
    z0: Complex64,
    trust_radius: f64,
) -> Result<Complex64, PolishError> {
    let dp = p.derivative();
    newton_polish_with(p, &dp, z0, trust_radius)
}

/// Same as [`newton_polish`] with the derivative precomputed (the tracker
/// polishes 24 roots against one polynomial per step).
pub fn newton_polish_with(
    p: &CPoly,
    dp: &CPoly,
    z0: Complex64,
    trust_radius: f64,
) -> Result<Complex64, PolishError> {
    // Horner at degree d cannot evaluate below ~d * eps * eval_scale; treat
    // that as the attainable residual floor
    let degree = p.coeffs().len().max(2) as f64;
    let floor_factor = 4.0 * degree * f64::EPSILON;

    let mut z = z0;
    let mut best = z0;
    let mut best_res = f64::INFINITY;
    for _ in 0..MAX_NEWTON_STEPS {
        let res = p.eval(z).norm();
        let scale = eval_scale(p, z);
        if res <= floor_factor * scale {
            return Ok(z);
        }
        if res < best_res {
            best_res = res;
            best = z;
        } else {
            // residual stagnated above the floor: accept the best iterate
            // if it already meets the certification tolerance
            if best_res <= 1e-10 * eval_scale(p, best) {
                return Ok(best);
            }
            return Err(PolishError::NoConvergence);
        }
        let dv = dp.eval(z);
        if dv.norm() <= 1e-14 * eval_scale(dp, z) {
            return Err(PolishError::DerivativeVanishes);
        }
        z -= p.eval(z) / dv;
        if (z - z0).norm() > trust_radius {
            return Err(PolishError::LeftTrustRegion);
        }
    }
    if best_res <= 1e-10 * eval_scale(p, best) {
        return Ok(best);
    }
    Err(PolishError::NoConvergence)
}

/// All roots of `p` via Aberth-Ehrlich simultaneous iteration, polished and
/// certified pairwise distinct.
pub fn solve_all(p: &CPoly) -> Result<Fiber, RootError> {
    let d = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(RootError::DegreeTooLow),
    };
    let dp = p.derivative();
    let lead = p.leading().unwrap();

    // circular initial configuration, radius from the coefficient bound
    let radius = 1.0
        + p.coeffs()[..d]
            .iter()
            .map(|c| (c / lead).norm())
            .fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            Complex64::from_polar(
                radius,
                std::f64::consts::TAU * k as f64 / d as f64 + ANGLE_OFFSET,
            )
        })
        .collect();

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut max_rel_step = 0.0f64;
        let mut max_residual = 0.0f64;
        for i in 0..d {
            let pv = p.eval(z[i]);
            max_residual = max_residual.max(pv.norm() / eval_scale(p, z[i]));
            if pv.norm() == 0.0 {
                continue;
            }
            let dv = dp.eval(z[i]);
            if dv.norm() == 0.0 {
                let nudge = 1e-6 * (1.0 + z[i].norm());
                z[i] += Complex64::new(nudge, 0.0);
                max_rel_step = f64::INFINITY;
                continue;
            }
            let newton = pv / dv;
            let mut repulsion = Complex64::new(0.0, 0.0);
            for j in 0..d {
                if j != i {
                    repulsion += (z[i] - z[j]).inv();
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let w = if denom.norm() == 0.0 {
                newton
            } else {
                newton / denom
            };
            z[i] -= w;
            max_rel_step = max_rel_step.max(w.norm() / z[i].norm().max(1.0));
        }
        // stop on stagnation or once every residual is at rounding level;
        // the Newton polish below restores full precision either way
        if max_rel_step < 1e-13 || max_residual < 1e-14 {
            converged = true;
            break;
        }
    }
    if !converged {
        // a stalled sweep with two near-coincident approximations is the
        // signature of a multiple root, not of a budget problem
        let separation = min_pairwise(&z);
        if separation < DISTINCT_EPS * root_scale(&z) {
            return Err(RootError::MultipleRoot { separation });
        }
        return Err(RootError::NoConvergence);
    }

    for zi in z.iter_mut() {
        if let Ok(refined) = newton_polish_with(p, &dp, *zi, f64::INFINITY) {
            *zi = refined;
        }
    }

    // deterministic labels: lexicographic by (-Re, Im)
    z.sort_unstable_by(|a, b| {
        b.re.partial_cmp(&a.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });

    let separation = min_pairwise(&z);
    if separation < DISTINCT_EPS * root_scale(&z) {
        return Err(RootError::MultipleRoot { separation });
    }
    let residual = z
        .iter()
        .map(|&zi| p.eval(zi).norm() / eval_scale(p, zi))
        .fold(0.0, f64::max);
    if residual >= RESIDUAL_TOL {
        return Err(RootError::NoConvergence);
    }
    Ok(Fiber {
        roots: z,
        separation,
        residual,
    })
}
