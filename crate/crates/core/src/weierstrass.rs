//! Weierstrass pairs on `P^1`, the degree-24 discriminant, the two explicit
//! constructions with marked points, and loop generators in the parameter
//! space.

use crate::cpoly::{BinaryForm, CPoly};
use crate::roots::{self, Fiber};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};
use thiserror::Error;

/// `l` for Construction I: the real cube root of `-27/4`.
pub fn l_construction_i() -> Complex64 {
    Complex64::new(-(27.0f64 / 4.0).cbrt(), 0.0)
}

/// `l` for Construction II: the principal square root of `-4/27`.
pub fn l_construction_ii() -> Complex64 {
    Complex64::new(-4.0 / 27.0, 0.0).sqrt()
}

/// The two roots `(3 ± sqrt(-3)) / 2` of `w^2 - 3w + 3`; the degree-8
/// factors of the Construction II discriminant are `beta + w K^2 x1^8`.
pub fn omega_pair() -> (Complex64, Complex64) {
    let s = Complex64::new(-3.0, 0.0).sqrt();
    (
        (Complex64::new(3.0, 0.0) + s) / 2.0,
        (Complex64::new(3.0, 0.0) - s) / 2.0,
    )
}

#[derive(Debug, Error)]
pub enum WeierstrassError {
    #[error("discriminant is identically zero")]
    ZeroDiscriminant,
    #[error("construction parameters give an invalid pair: {0}")]
    DegenerateParameters(String),
    #[error("swap arc passes too close to a third marked point")]
    ArcCollision,
    #[error("loop endpoints differ")]
    NotClosed,
}

/// A point `(A, B)` of the parameter space: degree-8 and degree-12 forms.
#[derive(Debug, Clone, PartialEq)]
pub struct WeierstrassPair {
    pub a: BinaryForm,
    pub b: BinaryForm,
}

impl WeierstrassPair {
    pub fn new(a: BinaryForm, b: BinaryForm) -> Self {
        assert_eq!(a.degree(), 8, "A must have degree 8");
        assert_eq!(b.degree(), 12, "B must have degree 12");
        WeierstrassPair { a, b }
    }

    /// The degree-24 form `4A^3 + 27B^2`.
    pub fn discriminant(&self) -> Result<BinaryForm, WeierstrassError> {
        let delta = self
            .a
            .pow(3)
            .scale(Complex64::new(4.0, 0.0))
            .add(&self.b.pow(2).scale(Complex64::new(27.0, 0.0)));
        // "zero" is relative to the scale the two terms were computed at
        let scale = 4.0 * self.a.max_coeff_norm().powi(3) + 27.0 * self.b.max_coeff_norm().powi(2);
        if delta.max_coeff_norm() < crate::cpoly::CANONICAL_EPS * scale.max(f64::MIN_POSITIVE) {
            return Err(WeierstrassError::ZeroDiscriminant);
        }
        Ok(delta)
    }

    /// Affine discriminant `Delta(t, 1)` plus the multiplicity at infinity.
    pub fn affine_discriminant(&self) -> Result<(CPoly, usize), WeierstrassError> {
        let delta = self.discriminant()?;
        delta
            .dehomogenize()
            .map_err(|_| WeierstrassError::ZeroDiscriminant)
    }

    /// The labeled 24-point fiber: all roots of the affine discriminant.
    pub fn fiber(&self) -> Result<Fiber, WeierstrassError> {
        let (p, mult_inf) = self.affine_discriminant()?;
        if mult_inf > 0 {
            return Err(WeierstrassError::DegenerateParameters(
                "discriminant has a root at infinity".into(),
            ));
        }
        roots::solve_all(&p).map_err(|e| WeierstrassError::DegenerateParameters(e.to_string()))
    }

    pub fn coeff_scale(&self) -> f64 {
        self.a.max_coeff_norm().max(self.b.max_coeff_norm())
    }

    /// Coefficientwise closeness relative to the larger of the two scales.
    pub fn approx_eq(&self, other: &WeierstrassPair, tol: f64) -> bool {
        let scale = self.coeff_scale().max(other.coeff_scale()).max(1e-300);
        let close = |x: &BinaryForm, y: &BinaryForm| {
            x.coeffs()
                .iter()
                .zip(y.coeffs())
                .all(|(u, v)| (u - v).norm() <= tol * scale)
        };
        close(&self.a, &other.a) && close(&self.b, &other.b)
    }

    /// Apply one Moebius substitution to both forms (change of chart on
    /// `P^1`).
    pub fn moebius(&self, m: &[[Complex64; 2]; 2]) -> WeierstrassPair {
        WeierstrassPair::new(self.a.moebius(m), self.b.moebius(m))
    }
}

/// Outcome of the genericity checks on a pair; never an error, each failed
/// check is reported.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub discriminant_nonzero: bool,
    pub no_root_at_infinity: bool,
    pub distinct_roots: bool,
    pub separation: Option<f64>,
    pub valid: bool,
    pub failure: Option<String>,
}

pub fn validate(p: &WeierstrassPair) -> ValidationReport {
    let mut report = ValidationReport {
        discriminant_nonzero: false,
        no_root_at_infinity: false,
        distinct_roots: false,
        separation: None,
        valid: false,
        failure: None,
    };
    let (poly, mult_inf) = match p.affine_discriminant() {
        Ok(v) => v,
        Err(e) => {
            report.failure = Some(e.to_string());
            return report;
        }
    };
    report.discriminant_nonzero = true;
    if mult_inf > 0 {
        report.failure = Some(format!(
            "discriminant vanishes to order {mult_inf} at infinity"
        ));
        return report;
    }
    report.no_root_at_infinity = true;
    match roots::solve_all(&poly) {
        Ok(fiber) => {
            report.distinct_roots = true;
            report.separation = Some(fiber.separation);
            report.valid = true;
        }
        Err(e) => {
            report.failure = Some(e.to_string());
        }
    }
    report
}

/// Which of the two marked-point constructions a parameter set feeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConstructionKind {
    /// 12 marked points in `B`; `A = K^2 l x1^8`.
    I,
    /// 8 marked points in `A`; `B = K^3 l x1^12`.
    II,
}

impl ConstructionKind {
    pub fn num_points(&self) -> usize {
        match self {
            ConstructionKind::I => 12,
            ConstructionKind::II => 8,
        }
    }
}

/// Marked points plus the scale `K`, for either construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Construction {
    pub kind: ConstructionKind,
    pub points: Vec<Complex64>,
    pub k: Complex64,
}

pub fn min_point_separation(points: &[Complex64]) -> f64 {
    roots::min_pairwise(points)
}

/// Assemble the pair from construction data without validating it.
pub fn build_pair(kind: ConstructionKind, points: &[Complex64], k: Complex64) -> WeierstrassPair {
    let beta = BinaryForm::from_affine_roots(points);
    match kind {
        ConstructionKind::I => {
            let a = BinaryForm::x1_power(8).scale(k * k * l_construction_i());
            let b = beta.add(&BinaryForm::x1_power(12).scale(k * k * k));
            WeierstrassPair::new(a, b)
        }
        ConstructionKind::II => {
            let a = beta.add(&BinaryForm::x1_power(8).scale(k * k));
            let b = BinaryForm::x1_power(12).scale(k * k * k * l_construction_ii());
            WeierstrassPair::new(a, b)
        }
    }
}

impl Construction {
    pub fn new(
        kind: ConstructionKind,
        points: Vec<Complex64>,
        k: Complex64,
    ) -> Result<Construction, WeierstrassError> {
        if points.len() != kind.num_points() {
            return Err(WeierstrassError::DegenerateParameters(format!(
                "expected {} marked points, got {}",
                kind.num_points(),
                points.len()
            )));
        }
        if k.norm() == 0.0 {
            return Err(WeierstrassError::DegenerateParameters(
                "K must be nonzero".into(),
            ));
        }
        let sep = min_point_separation(&points);
        if sep == 0.0 {
            return Err(WeierstrassError::DegenerateParameters(
                "marked points must be pairwise distinct".into(),
            ));
        }
        let c = Construction { kind, points, k };
        let report = validate(&c.pair());
        if !report.valid {
            return Err(WeierstrassError::DegenerateParameters(
                report.failure.unwrap_or_else(|| "validation failed".into()),
            ));
        }
        Ok(c)
    }

    /// Choose `K` automatically: start at a fraction of the minimum marked
    /// point separation and halve until the fiber clusters correctly around
    /// the marked points (each point claims exactly 2 roots in
    /// Construction I, 3 in Construction II).
    pub fn with_default_k(
        kind: ConstructionKind,
        points: Vec<Complex64>,
    ) -> Result<Construction, WeierstrassError> {
        let sep = min_point_separation(&points);
        if sep == 0.0 || points.len() != kind.num_points() {
            return Err(WeierstrassError::DegenerateParameters(
                "marked points must be pairwise distinct and of the right count".into(),
            ));
        }
        let expected = match kind {
            ConstructionKind::I => 2,
            ConstructionKind::II => 3,
        };
        let mut k_mag = 0.25 * sep;
        for _ in 0..20 {
            let k = Complex64::new(k_mag, 0.0);
            let cand = Construction {
                kind,
                points: points.clone(),
                k,
            };
            if let Ok(fiber) = cand.pair().fiber() {
                if cluster_counts(&fiber.roots, &points)
                    .iter()
                    .all(|&n| n == expected)
                {
                    return Ok(cand);
                }
            }
            k_mag *= 0.5;
        }
        Err(WeierstrassError::DegenerateParameters(
            "no K in the tested range clusters the fiber around the marked points".into(),
        ))
    }

    pub fn pair(&self) -> WeierstrassPair {
        build_pair(self.kind, &self.points, self.k)
    }
}

/// How many fiber roots are nearest to each marked point.
pub fn cluster_counts(fiber_roots: &[Complex64], points: &[Complex64]) -> Vec<usize> {
    let mut counts = vec![0usize; points.len()];
    for &r in fiber_roots {
        let nearest = points
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| (r - *a).norm().partial_cmp(&(r - *b).norm()).unwrap())
            .unwrap()
            .0;
        counts[nearest] += 1;
    }
    counts
}

/// One analytic piece of a parameter-space path, parameterized over
/// `s in [0, 1]`.
#[derive(Debug, Clone)]
pub enum Segment {
    /// Straight coefficientwise interpolation.
    Linear {
        from: WeierstrassPair,
        to: WeierstrassPair,
    },
    /// `s -> base + (center + radius e^{orientation * 2 pi i s}) * (dir_a, dir_b)`.
    Circle {
        base: WeierstrassPair,
        dir_a: BinaryForm,
        dir_b: BinaryForm,
        center: Complex64,
        radius: f64,
        orientation: i8,
    },
    /// Marked points `i` and `j` of a construction trade places along
    /// opposite semicircular arcs over the segment joining them; `margin`
    /// shrinks the arcs radially at mid-swing to dodge other points.
    SwapArc {
        kind: ConstructionKind,
        points: Vec<Complex64>,
        k: Complex64,
        i: usize,
        j: usize,
        orientation: i8,
        margin: f64,
    },
}

impl Segment {
    pub fn eval(&self, s: f64) -> WeierstrassPair {
        match self {
            Segment::Linear { from, to } => {
                let t = Complex64::new(s, 0.0);
                let one_minus = Complex64::new(1.0 - s, 0.0);
                WeierstrassPair::new(
                    from.a.scale(one_minus).add(&to.a.scale(t)),
                    from.b.scale(one_minus).add(&to.b.scale(t)),
                )
            }
            Segment::Circle {
                base,
                dir_a,
                dir_b,
                center,
                radius,
                orientation,
            } => {
                let phase = Complex64::from_polar(*radius, f64::from(*orientation) * TAU * s);
                let c = center + phase;
                WeierstrassPair::new(base.a.add(&dir_a.scale(c)), base.b.add(&dir_b.scale(c)))
            }
            Segment::SwapArc {
                kind,
                points,
                k,
                i,
                j,
                orientation,
                margin,
            } => {
                let mut pts = points.clone();
                let (pi, pj) = swap_positions(points[*i], points[*j], s, *orientation, *margin);
                pts[*i] = pi;
                pts[*j] = pj;
                build_pair(*kind, &pts, *k)
            }
        }
    }

    pub fn reverse(&self) -> Segment {
        match self {
            Segment::Linear { from, to } => Segment::Linear {
                from: to.clone(),
                to: from.clone(),
            },
            Segment::Circle {
                base,
                dir_a,
                dir_b,
                center,
                radius,
                orientation,
            } => Segment::Circle {
                base: base.clone(),
                dir_a: dir_a.clone(),
                dir_b: dir_b.clone(),
                center: *center,
                radius: *radius,
                orientation: -orientation,
            },
            Segment::SwapArc {
                kind,
                points,
                k,
                i,
                j,
                orientation,
                margin,
            } => {
                // reversing the half-twist starts from the swapped
                // configuration and turns the other way
                let mut pts = points.clone();
                pts.swap(*i, *j);
                Segment::SwapArc {
                    kind: *kind,
                    points: pts,
                    k: *k,
                    i: *i,
                    j: *j,
                    orientation: -orientation,
                    margin: *margin,
                }
            }
        }
    }
}

/// Positions of the two swapping points at arc parameter `s`; at `s = 0`
/// they sit at `(p, q)`, at `s = 1` at `(q, p)`.
fn swap_positions(
    p: Complex64,
    q: Complex64,
    s: f64,
    orientation: i8,
    margin: f64,
) -> (Complex64, Complex64) {
    let mid = (p + q) / 2.0;
    let half = (q - p) / 2.0;
    let rho = 1.0 - margin * (PI * s).sin();
    let rot = Complex64::from_polar(rho, f64::from(orientation) * PI * s);
    (mid - half * rot, mid + half * rot)
}

/// A closed piecewise path in the parameter space with a validated base
/// point; segments traverse uniformly in loop parameter.
#[derive(Debug, Clone)]
pub struct ParameterLoop {
    pub base: WeierstrassPair,
    pub segments: Vec<Segment>,
}

impl ParameterLoop {
    pub fn eval(&self, s: f64) -> WeierstrassPair {
        if self.segments.is_empty() {
            return self.base.clone();
        }
        let s = s.clamp(0.0, 1.0);
        let scaled = s * self.segments.len() as f64;
        let mut idx = scaled.floor() as usize;
        if idx == self.segments.len() {
            idx -= 1;
        }
        self.segments[idx].eval(scaled - idx as f64)
    }

    pub fn is_closed(&self, tol: f64) -> bool {
        let start = self.eval(0.0);
        let end = self.eval(1.0);
        start.approx_eq(&self.base, tol) && end.approx_eq(&self.base, tol)
    }

    pub fn reverse(&self) -> ParameterLoop {
        ParameterLoop {
            base: self.base.clone(),
            segments: self.segments.iter().rev().map(Segment::reverse).collect(),
        }
    }

    /// Concatenation at a shared base: traverse `self`, then `other`.
    pub fn concat(&self, other: &ParameterLoop) -> ParameterLoop {
        let mut segments = self.segments.clone();
        segments.extend(other.segments.iter().cloned());
        ParameterLoop {
            base: self.base.clone(),
            segments,
        }
    }
}

/// Loop swapping marked points `i` and `j` of a construction; a
/// counterclockwise half-twist for `orientation = +1`. The arcs shrink 10%
/// radially on each collision with a third point, up to 8 retries.
pub fn swap_loop(
    c: &Construction,
    i: usize,
    j: usize,
    orientation: i8,
) -> Result<ParameterLoop, WeierstrassError> {
    assert!(i != j, "swap needs two distinct indices");
    assert!(orientation == 1 || orientation == -1);
    let sep = min_point_separation(&c.points);
    let clearance = 1e-3 * sep;
    let mut margin = 0.0f64;
    for _ in 0..=8 {
        let collides = (0..=256).any(|n| {
            let s = n as f64 / 256.0;
            let (pi, pj) = swap_positions(c.points[i], c.points[j], s, orientation, margin);
            c.points.iter().enumerate().any(|(m, &other)| {
                m != i
                    && m != j
                    && ((pi - other).norm() < clearance || (pj - other).norm() < clearance)
            })
        });
        if !collides {
            return Ok(ParameterLoop {
                base: c.pair(),
                segments: vec![Segment::SwapArc {
                    kind: c.kind,
                    points: c.points.clone(),
                    k: c.k,
                    i,
                    j,
                    orientation,
                    margin,
                }],
            });
        }
        margin = if margin == 0.0 {
            0.1
        } else {
            margin + 0.1 * (1.0 - margin)
        };
    }
    Err(WeierstrassError::ArcCollision)
}

/// A generic one-complex-parameter circle: random direction pair `D`, a
/// random circle `c + r e^{i theta}` with `r < |c|`, reached by a linear
/// stub from the base.
pub fn random_scalar_loop(base: &WeierstrassPair, rng: &mut ChaCha8Rng) -> ParameterLoop {
    let mut draw_form = |degree: usize| {
        let coeffs: Vec<Complex64> = (0..=degree)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let norm = coeffs
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max)
            .max(1e-12);
        BinaryForm::new(degree, coeffs.iter().map(|&c| c / norm).collect())
    };
    let dir_a_raw = draw_form(8);
    let dir_b_raw = draw_form(12);
    // scale the directions so the perturbation competes with the base
    // in the discriminant: A enters cubed, B squared
    let na = base.a.max_coeff_norm();
    let nb = base.b.max_coeff_norm();
    let scale_a = na.max(nb.powf(2.0 / 3.0)).max(1e-6);
    let scale_b = nb.max(na.powf(1.5)).max(1e-6);
    let dir_a = dir_a_raw.scale(Complex64::new(scale_a, 0.0));
    let dir_b = dir_b_raw.scale(Complex64::new(scale_b, 0.0));

    let center = Complex64::from_polar(rng.gen_range(0.1..0.5), rng.gen_range(0.0..TAU));
    let radius = rng.gen_range(0.3..0.9) * center.norm();
    let start = center + Complex64::new(radius, 0.0);
    let entry = WeierstrassPair::new(
        base.a.add(&dir_a.scale(start)),
        base.b.add(&dir_b.scale(start)),
    );
    ParameterLoop {
        base: base.clone(),
        segments: vec![
            Segment::Linear {
                from: base.clone(),
                to: entry.clone(),
            },
            Segment::Circle {
                base: base.clone(),
                dir_a,
                dir_b,
                center,
                radius,
                orientation: 1,
            },
            Segment::Linear {
                from: entry,
                to: base.clone(),
            },
        ],
    }
}

/// Conjugate a loop to a new base point: linear segment out, the loop,
/// linear segment back.
pub fn connect(base0: &WeierstrassPair, lp: &ParameterLoop) -> ParameterLoop {
    let mut segments = vec![Segment::Linear {
        from: base0.clone(),
        to: lp.base.clone(),
    }];
    segments.extend(lp.segments.iter().cloned());
    segments.push(Segment::Linear {
        from: lp.base.clone(),
        to: base0.clone(),
    });
    ParameterLoop {
        base: base0.clone(),
        segments,
    }
}

/// If a validated pair has a discriminant root far outside the chart,
/// move to a random Moebius chart where all roots are moderate.
pub fn ensure_finite_chart(pair: &WeierstrassPair, rng: &mut ChaCha8Rng) -> WeierstrassPair {
    const CHART_LIMIT: f64 = 1e6;
    let ok = |p: &WeierstrassPair| {
        p.fiber()
            .map(|f| f.roots.iter().all(|r| r.norm() < CHART_LIMIT))
            .unwrap_or(false)
    };
    if ok(pair) {
        return pair.clone();
    }
    for _ in 0..16 {
        let theta = rng.gen_range(0.0..TAU);
        let rot = Complex64::from_polar(1.0, theta);
        let m = [
            [
                rot,
                Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)),
            ],
            [
                Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)),
                Complex64::new(1.0, 0.0),
            ],
        ];
        let moved = pair.moebius(&m);
        if ok(&moved) {
            return moved;
        }
    }
    pair.clone()
}
