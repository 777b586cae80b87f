//! Exact-integer reproduction of the enumerative counts: Pluecker formulas,
//! rational-curve counting coefficients, quartic Gauss-map invariants, and
//! the trinodal-curve solve. No floating point anywhere in this module.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CountError {
    #[error("formula not defined for degree {0}")]
    DomainError(i128),
    #[error("inconsistent contribution table: {0}")]
    InconsistentTable(String),
}

/// `3d(d-2)` flexes of a generic plane curve of degree `d >= 3`.
pub fn flex_count(d: i128) -> Result<i128, CountError> {
    if d < 3 {
        return Err(CountError::DomainError(d));
    }
    Ok(3 * d * (d - 2))
}

/// `d^4/2 - d^3 - 9d^2/2 + 9d` bitangents of a generic plane curve of
/// degree `d >= 4`; the polynomial is integral at every integer.
pub fn bitangent_count(d: i128) -> Result<i128, CountError> {
    if d < 4 {
        return Err(CountError::DomainError(d));
    }
    Ok((d * d * d * d - 2 * d * d * d - 9 * d * d + 18 * d) / 2)
}

/// Coefficients `n(0..=g_max)` of `prod_{n>=1} (1 - q^n)^{-24}`: the
/// number of rational curves in a `g`-dimensional linear system on a K3.
pub fn yau_zaslow(g_max: usize) -> Vec<i128> {
    // multiply out (1 - q^n)^{-24} = (sum_k C(k+23, 23) q^{nk}) factor by
    // factor, truncating at q^g_max
    let mut series = vec![0i128; g_max + 1];
    series[0] = 1;
    for n in 1..=g_max.max(1) {
        if n > g_max {
            break;
        }
        // binomial coefficients C(k+23, 23) for the n-th factor
        let mut factor = vec![1i128];
        let mut k = 0usize;
        while n * (k + 1) <= g_max {
            k += 1;
            let prev = factor[k - 1];
            factor.push(prev * (k as i128 + 23) / k as i128);
        }
        let mut out = vec![0i128; g_max + 1];
        for (i, &s) in series.iter().enumerate() {
            if s == 0 {
                continue;
            }
            for (k, &f) in factor.iter().enumerate() {
                let idx = i + n * k;
                if idx > g_max {
                    break;
                }
                out[idx] += s * f;
            }
        }
        series = out;
    }
    series
}

/// Degree `d(d-1)^2` of the dual surface of a smooth degree-`d` surface.
pub fn dual_surface_degree(d: i128) -> Result<i128, CountError> {
    if d < 2 {
        return Err(CountError::DomainError(d));
    }
    Ok(d * (d - 1) * (d - 1))
}

/// `2d(d-2)(11d-24)` cusps of the Gauss map (swallowtails) of a generic
/// degree-`d` surface.
pub fn swallowtail_count(d: i128) -> Result<i128, CountError> {
    if d < 2 {
        return Err(CountError::DomainError(d));
    }
    Ok(2 * d * (d - 2) * (11 * d - 24))
}

/// Singularity types entering the double-curve budget, with their
/// delta-invariant and ramification contributions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularityKind {
    Node,
    Cusp,
    Tacnode,
    /// The germ `y^3 = x^2` union the line `y = -x`.
    DType,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SingularityContribution {
    pub kind: SingularityKind,
    pub delta: i128,
    pub ramification: i128,
}

pub const CONTRIBUTIONS: [SingularityContribution; 4] = [
    SingularityContribution {
        kind: SingularityKind::Node,
        delta: 1,
        ramification: 0,
    },
    SingularityContribution {
        kind: SingularityKind::Cusp,
        delta: 1,
        ramification: 1,
    },
    SingularityContribution {
        kind: SingularityKind::Tacnode,
        delta: 2,
        ramification: 0,
    },
    SingularityContribution {
        kind: SingularityKind::DType,
        delta: 3,
        ramification: 2,
    },
];

pub fn contribution(kind: SingularityKind) -> SingularityContribution {
    CONTRIBUTIONS
        .iter()
        .copied()
        .find(|c| c.kind == kind)
        .unwrap()
}

/// Numerical invariants of the Gauss map of a quartic surface.
///
/// `C_d` is the double-point curve of the Gauss map on the surface and
/// `C_d*` its image in the dual surface; `C_par` is the parabolic curve.
/// The genus formula for the normalization of `C_d*` takes the shape
/// `b(mu0 - 2) = rho + delta_b + v_b + i` (*), where `b = deg C_d*`,
/// `mu0` is the dual-surface degree, `rho` counts Gauss swallowtails,
/// `delta_b` is the singularity budget of `C_d*`, `v_b` the ramification
/// of the degree-2 map `C_d -> C_d*`, and `i` the intersection
/// `C_d . C_par`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussInvariants {
    pub d: i128,
    pub mu0: i128,
    pub rho: i128,
    pub b: i128,
    pub i: i128,
    pub delta_b: i128,
    pub v_b: i128,
    pub swallowtails: i128,
    pub parabolic_double_points: i128,
    pub dual_parabolic_points: i128,
    pub triple_points: i128,
}

impl GaussInvariants {
    /// Both sides of the genus formula (*); equal for a consistent table.
    pub fn star_formula_sides(&self) -> (i128, i128) {
        (
            self.b * (self.mu0 - 2),
            self.rho + self.delta_b + self.v_b + self.i,
        )
    }

    pub fn star_formula_holds(&self) -> bool {
        let (lhs, rhs) = self.star_formula_sides();
        lhs == rhs
    }
}

/// Degree of the Gauss double-point curve `C_d` on the generic quartic
/// (pinned constant).
pub const DEG_C_D: i128 = 320;
/// `C_par` is cut by `O_S(8)` on the quartic: degree 32.
pub const DEG_C_PAR: i128 = 32;
/// Degree of the dual parabolic curve `C_par*` (pinned constant).
pub const DEG_C_PAR_DUAL: i128 = 96;
/// `C_d` lies in `O_S(80)`.
pub const CLASS_C_D: i128 = 80;
/// `C_par` lies in `O_S(8)`.
pub const CLASS_C_PAR: i128 = 8;

/// The generic quartic's invariant table, with (*) verified on
/// construction.
pub fn generic_invariants() -> GaussInvariants {
    let d = 4;
    let mu0 = dual_surface_degree(d).unwrap();
    let swallowtails = swallowtail_count(d).unwrap();
    let triple_points = 9600;
    let dual_parabolic = 1920;
    let inv = GaussInvariants {
        d,
        mu0,
        rho: swallowtails,
        b: dual_double_curve_degree(),
        i: dual_parabolic + 2 * swallowtails,
        delta_b: triple_points + dual_parabolic,
        v_b: 1920,
        swallowtails,
        parabolic_double_points: 1920,
        dual_parabolic_points: dual_parabolic,
        triple_points,
    };
    assert!(
        inv.star_formula_holds(),
        "generic quartic table violates (*)"
    );
    inv
}

/// Degree of `C_d*` from the projection-formula relation
/// `(C_d + 2 C_par) . C_d = 2(S* . C_d*) + 2(K . C_d*)` on the quartic:
/// the left side is 30720, the divisor `2 mu0 - 2d = 64`, giving 480.
pub fn dual_double_curve_degree() -> i128 {
    let d = 4;
    let mu0 = dual_surface_degree(d).unwrap();
    let lhs = (CLASS_C_D + 2 * CLASS_C_PAR) * CLASS_C_D * d;
    let divisor = 2 * mu0 - 2 * d;
    assert_eq!(lhs % divisor, 0);
    lhs / divisor
}

/// The count chain for a good quartic (one two-node-one-cusp tangent
/// curve, all other rational tangent curves trinodal).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GoodSurfaceSolve {
    pub parabolic_double: i128,
    pub v_b: i128,
    pub delta_b: i128,
    pub trinodal_count: i128,
}

/// Replay the good-surface computation: count parabolic Gauss double
/// points, the ramification `v_b`, the singularity budget `delta_b` via
/// (*), and solve for the number `t` of trinodal tangent curves.
pub fn good_surface_solve() -> Result<GoodSurfaceSolve, CountError> {
    let d = 4;
    let mu0 = dual_surface_degree(d).unwrap();
    let rho = swallowtail_count(d).unwrap();
    let b = dual_double_curve_degree();
    let i = 1920 + 2 * rho;

    let cusp = contribution(SingularityKind::Cusp);
    let tacnode = contribution(SingularityKind::Tacnode);
    let dtype = contribution(SingularityKind::DType);

    // the special two-node-one-cusp curve contributes one tacnode-type and
    // two D-type points to the budget; everything else is parabolic Gauss
    // double points
    let parabolic_double = i - 2 * rho - 2;
    if parabolic_double < 0 {
        return Err(CountError::InconsistentTable(
            "negative parabolic double point count".into(),
        ));
    }

    // each parabolic double point is a cusp of C_d* (ramification 1); the
    // D-type point ramifies with degree 2
    let v_b = parabolic_double * cusp.ramification + dtype.ramification;

    // delta budget of C_d* from (*)
    let delta_b = b * (mu0 - 2) - rho - v_b - i;
    if delta_b < 0 {
        return Err(CountError::InconsistentTable(
            "negative delta budget".into(),
        ));
    }

    // each trinodal tangent curve yields a triple point (delta 3); the
    // cusps of C_d* contribute delta 1 each; the special curve adds one
    // tacnode and two D-type points
    let remainder = delta_b - parabolic_double * cusp.delta - tacnode.delta - 2 * dtype.delta;
    if remainder < 0 || remainder % 3 != 0 {
        return Err(CountError::InconsistentTable(format!(
            "trinodal solve leaves remainder {remainder}"
        )));
    }
    Ok(GoodSurfaceSolve {
        parabolic_double,
        v_b,
        delta_b,
        trinodal_count: remainder / 3,
    })
}
