//! Static analysis of the potential landscape: equilibrium roots, the
//! pull-in stability criterion, critical stiffness, the harmonic expansion
//! about the minimum, and the energy turning point of a release from rest.
//!
//! In natural units the landscape is `V(chi) = (chi - 1)^2 / 2 - c_hat /
//! (3 chi^3)` with `chi = x / x0`. Stationary points solve
//! `chi^4 (1 - chi) = c_hat`; the left side peaks at `chi = 4/5` with value
//! `4^4 / 5^5 = 0.08192`, so for `c_hat` above that peak no equilibrium
//! exists and the plate pulls in. Otherwise the root above `4/5` is the
//! stable minimum and the root below it the barrier.
//!
//! Stable roots sit within ~1e-9 of `chi = 1` for realistic devices, so the
//! solvers work in the offset `eps = 1 - chi`, which keeps full relative
//! precision where `chi` itself would flush the answer into the last few
//! bits of 1.0.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::physics::{total_potential, OscillatorModel, PI_SQ_HBAR_C};
use crate::roots::bisect;
use crate::scalar::{to_f64_lossy, Real};

/// Relative tolerance for all landscape root solves.
const ROOT_REL_TOL: f64 = 1e-14;

/// `pi^2 hbar c / 60`, the prefactor of the curvature criterion.
fn curvature_prefactor<T: Real>() -> T {
    T::of(PI_SQ_HBAR_C / 60.0)
}

/// Peak value of `chi^4 (1 - chi)` on (0, 1), attained at `chi = 4/5`.
fn landscape_peak<T: Real>() -> T {
    T::of(256.0 / 3125.0)
}

/// Stationary points of the dimensionless landscape.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumOffsets<T> {
    /// Offset `1 - chi` of the stable minimum, resolved to full relative
    /// precision.
    pub eps_stable: T,
    /// Position `chi` of the unstable barrier root. Absent only in the
    /// harmonic limit `c_hat = 0`.
    pub chi_unstable: Option<T>,
}

/// Solve `chi^4 (1 - chi) = c_hat` for both stationary points, or `None`
/// when `c_hat` reaches the landscape peak and the potential has no minimum.
/// The marginal case `c_hat == 4^4/5^5` counts as pull-in: its stationary
/// point is degenerate, not a minimum.
pub fn equilibrium_offsets<T: Real>(c_hat: T) -> Option<EquilibriumOffsets<T>> {
    if c_hat < T::zero() || !c_hat.is_finite() || c_hat >= landscape_peak() {
        return None;
    }
    if c_hat == T::zero() {
        return Some(EquilibriumOffsets {
            eps_stable: T::zero(),
            chi_unstable: None,
        });
    }
    let tol = T::of(ROOT_REL_TOL);
    // Stable root in eps space: eps (1 - eps)^4 = c_hat on eps in (0, 1/5).
    // The iteration cap covers roots down at the subnormal floor; the usual
    // case exits after ~75 halvings on the relative tolerance.
    let stable = bisect(
        T::zero(),
        T::of(0.2),
        |eps| {
            let one_m = T::one() - eps;
            eps * one_m.powi(4) - c_hat
        },
        tol,
        1200,
    )
    .ok()?;
    // Barrier root in chi space: chi^4 (1 - chi) = c_hat on chi in (0, 4/5).
    let unstable = bisect(
        T::zero(),
        T::of(0.8),
        |chi| chi.powi(4) * (T::one() - chi) - c_hat,
        tol,
        1200,
    )
    .ok()?;
    Some(EquilibriumOffsets {
        eps_stable: stable,
        chi_unstable: Some(unstable),
    })
}

/// Dimensionless potential relative to the release point,
/// `V(1 - eps) - V(1)`, written without cancellation:
/// `eps^2/2 - (c_hat/3) eps (3 - 3 eps + eps^2) / (1 - eps)^3`.
///
/// Valid on the whole physical range `eps < 1`; motion released from rest at
/// the free length is allowed exactly where this is non-positive.
pub fn relative_potential<T: Real>(eps: T, c_hat: T) -> T {
    let one_m = T::one() - eps;
    let three = T::of(3.0);
    let poly = three - three * eps + eps * eps;
    eps * eps * T::of(0.5) - c_hat / three * eps * poly / one_m.powi(3)
}

/// Curvature and small-oscillation frequency at the stable minimum:
/// `(V''(chi_eq), sqrt(V''))` with `V'' = 1 - 4 c_hat / chi_eq^5`, in
/// `1/t*` units. `None` when no minimum exists.
pub fn effective_stiffness<T: Real>(c_hat: T) -> Option<(T, T)> {
    let offsets = equilibrium_offsets(c_hat)?;
    let chi = T::one() - offsets.eps_stable;
    let v2 = T::one() - T::of(4.0) * c_hat / chi.powi(5);
    if v2 > T::zero() {
        Some((v2, v2.sqrt()))
    } else {
        None
    }
}

/// Equilibrium structure and stability verdict for one device.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquilibriumReport<T> {
    /// Stable equilibrium position (m), absent under pull-in.
    pub x_eq_stable: Option<T>,
    /// Unstable barrier position (m), absent under pull-in and in the
    /// harmonic limit.
    pub x_eq_unstable: Option<T>,
    /// `(x0 - x_eq_stable) / x0` at full relative precision.
    pub eps_stable: Option<T>,
    /// `(x0 - x_eq_unstable) / x0`.
    pub eps_unstable: Option<T>,
    /// Dimensionless curvature `V''` at the minimum.
    pub v2_at_min: Option<T>,
    /// Small-oscillation frequency `sqrt(V'')` in `1/t*` units.
    pub omega_eff: Option<T>,
    /// Whether a stable equilibrium exists.
    pub stable: bool,
    /// Pull-in threshold stiffness for this area and free length (N/m).
    pub k_crit: T,
}

impl<T: Real> EquilibriumReport<T> {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Locate the stationary points of the total potential and judge stability.
///
/// Pull-in (no roots) is a valid report with `stable = false`, not an error.
pub fn solve_equilibrium<T: Real>(model: &OscillatorModel<T>) -> EquilibriumReport<T> {
    let p = &model.physical;
    let k_crit = critical_stiffness(p.area, p.x0);
    let pull_in = EquilibriumReport {
        x_eq_stable: None,
        x_eq_unstable: None,
        eps_stable: None,
        eps_unstable: None,
        v2_at_min: None,
        omega_eff: None,
        stable: false,
        k_crit,
    };
    let Some(offsets) = equilibrium_offsets(model.dimensionless.c_hat) else {
        return pull_in;
    };
    let chi_eq = T::one() - offsets.eps_stable;
    let v2 = T::one() - T::of(4.0) * model.dimensionless.c_hat / chi_eq.powi(5);
    if !(v2 > T::zero()) {
        // Roots resolvable only to the degenerate edge; the minimum has no
        // curvature left, which the strict criterion counts as pull-in.
        return pull_in;
    }
    EquilibriumReport {
        x_eq_stable: Some(chi_eq * p.x0),
        x_eq_unstable: offsets.chi_unstable.map(|chi| chi * p.x0),
        eps_stable: Some(offsets.eps_stable),
        eps_unstable: offsets.chi_unstable.map(|chi| T::one() - chi),
        v2_at_min: Some(v2),
        omega_eff: Some(v2.sqrt()),
        stable: true,
        k_crit,
    }
}

/// The stiffness below which the potential loses its minimum and the plates
/// pull in: `pi^2 hbar c A / (60 (4 x0 / 5)^5)`.
///
/// Callers guarantee positive inputs.
pub fn critical_stiffness<T: Real>(area: T, x0: T) -> T {
    let boundary = T::of(0.8) * x0;
    curvature_prefactor::<T>() * area / boundary.powi(5)
}

/// Curvature test at a candidate minimum: `k > pi^2 hbar c A / (60 x_min^5)`.
pub fn stability_criterion<T: Real>(k: T, area: T, x_min: T) -> Result<bool> {
    for (name, v) in [("k", k), ("area", area), ("x_min", x_min)] {
        if !(v > T::zero()) || !v.is_finite() {
            return Err(Error::NonPositive {
                name,
                value: to_f64_lossy(v),
            });
        }
    }
    Ok(k > curvature_prefactor::<T>() * area / x_min.powi(5))
}

/// Quadratic expansion of the total potential about its minimum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HarmonicExpansion<T> {
    /// Potential value at the minimum (J/m^2).
    pub v_min: T,
    /// Dimensionless effective stiffness `V''(chi_eq) = 1 - 4 c_hat / chi_eq^5`.
    pub k_eff_hat: T,
    /// Small-oscillation frequency `sqrt(k_eff_hat)` in `1/t*` units.
    pub omega_hat: T,
}

/// Expand the total potential to second order about the stable minimum.
/// Errors when the configuration has no stable equilibrium.
pub fn harmonic_expansion<T: Real>(model: &OscillatorModel<T>) -> Result<HarmonicExpansion<T>> {
    let p = &model.physical;
    let report = solve_equilibrium(model);
    let (Some(x_eq), Some(k_eff_hat), Some(omega_hat)) =
        (report.x_eq_stable, report.v2_at_min, report.omega_eff)
    else {
        return Err(Error::Unstable {
            k: to_f64_lossy(p.k),
            k_crit: to_f64_lossy(report.k_crit),
        });
    };
    Ok(HarmonicExpansion {
        v_min: total_potential(x_eq, p)?,
        k_eff_hat,
        omega_hat,
    })
}

/// Closest approach of a release from rest at the free length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TurningPoint<T> {
    /// Turning position (m).
    pub x_turn: T,
    /// Gap margin `x0 - x_turn` (m), formed from the full-precision offset.
    pub margin: T,
}

/// Offset `eps = 1 - x_turn / x0` of the inner turning point for a release
/// from rest, solving `eps = (2 c_hat / 3) (3 - 3 eps + eps^2) / (1 - eps)^3`
/// (the zero-velocity condition with the release energy).
///
/// Errors with [`Error::Collapse`] when the release energy reaches the
/// barrier and no turning point below the free length exists.
pub fn turning_offset<T: Real>(c_hat: T) -> Result<T> {
    if c_hat < T::zero() || !c_hat.is_finite() {
        return Err(Error::InvalidInput(format!(
            "c_hat must be finite and non-negative, got {c_hat:e}"
        )));
    }
    if c_hat == T::zero() {
        // Harmonic limit: released at the minimum, no motion.
        return Ok(T::zero());
    }
    let collapse = || Error::Collapse {
        c_hat: to_f64_lossy(c_hat),
    };
    let offsets = equilibrium_offsets(c_hat).ok_or_else(collapse)?;
    let chi_barrier = offsets
        .chi_unstable
        .expect("positive c_hat has a barrier root");
    // For couplings tiny enough that 1 - chi_barrier rounds to 1, pull the
    // bracket end one ulp inside; the potential there is still on the
    // barrier side of the turning point whenever the margin below holds.
    let eps_barrier = (T::one() - chi_barrier).min(T::one() - T::epsilon());
    // Positive energy margin at the barrier, otherwise the plate flies over.
    if !(relative_potential(eps_barrier, c_hat) > T::zero()) {
        return Err(collapse());
    }
    let q = |eps: T| {
        let one_m = T::one() - eps;
        let three = T::of(3.0);
        let poly = three - three * eps + eps * eps;
        eps - T::of(2.0) * c_hat / three * poly / one_m.powi(3)
    };
    let mut lo = c_hat * T::of(1e-3);
    while q(lo) >= T::zero() && lo > T::min_positive_value() {
        lo /= T::of(16.0);
    }
    bisect(lo, eps_barrier, q, T::of(ROOT_REL_TOL), 1200)
}

/// Solve for the turning point of a release from rest at the free length.
pub fn solve_turning_point<T: Real>(model: &OscillatorModel<T>) -> Result<TurningPoint<T>> {
    let eps = turning_offset(model.dimensionless.c_hat)?;
    let x0 = model.physical.x0;
    Ok(TurningPoint {
        x_turn: (T::one() - eps) * x0,
        margin: eps * x0,
    })
}
