//! Nonlinear least-squares fit of a trajectory to the two-parameter model
//! `u(tau) = Amp (cos(omega tau) - 1)`.
//!
//! The model has no phase term, which is only valid for runs released from
//! rest at the free length; inputs that start elsewhere are rejected. The
//! solver is damped Gauss-Newton with analytic partials and step halving,
//! which is plenty for a well-conditioned two-parameter problem and keeps
//! the iteration deterministic.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::integrator::Trajectory;
use crate::scalar::Real;

/// Convergence threshold on the relative parameter step.
const STEP_REL_TOL: f64 = 1e-10;

/// Iteration cap for the Gauss-Newton loop.
const MAX_ITERATIONS: usize = 100;

/// Result of a sinusoid fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitResult<T> {
    /// Fitted amplitude, non-negative for the valid input class.
    pub amp: T,
    /// Fitted angular frequency in `1/t*` units.
    pub omega: T,
    /// Coefficient of determination against the data.
    pub r2: T,
    /// Root-mean-square residual.
    pub residual_rms: T,
    /// Gauss-Newton iterations used.
    pub iterations: usize,
    /// Whether the parameter step dropped below tolerance.
    pub converged: bool,
}

impl<T: Real> FitResult<T> {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fit result serializes")
    }
}

/// Fit `Amp (cos(omega tau) - 1)` to a trajectory by damped Gauss-Newton.
///
/// Starting values come from the data: half the peak-to-peak spread for the
/// amplitude, and `pi * (velocity sign changes) / duration` for the
/// frequency. Requires at least two full cycles and a from-rest start.
/// Non-convergence is reported through `converged = false` with the best
/// parameters found, not as an error.
pub fn fit_sinusoid<T: Real>(traj: &Trajectory<T>) -> Result<FitResult<T>> {
    let n = traj.len();
    if n < 8 {
        return Err(Error::InsufficientData(format!(
            "{n} samples are too few to fit a sinusoid"
        )));
    }
    let (u_min, u_max) = traj.u_range();
    if u_min == u_max {
        return Err(Error::InsufficientData(
            "trajectory is constant; there is no oscillation to fit".into(),
        ));
    }
    let u_scale = u_min.abs().max(u_max.abs());
    let rest_tol = T::of(1e-9);
    if traj.u[0].abs() > rest_tol * u_scale {
        return Err(Error::InvalidInput(format!(
            "the model has no phase parameter and requires u(0) = 0; got u(0) = {:e}",
            traj.u[0]
        )));
    }
    let v_scale = traj.v.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    if v_scale > T::zero() && traj.v[0].abs() > rest_tol * v_scale {
        return Err(Error::InvalidInput(format!(
            "the model requires a start from rest (v(0) = 0); got v(0) = {:e}",
            traj.v[0]
        )));
    }

    let sign_changes = count_sign_changes(&traj.v);
    if sign_changes < 3 {
        return Err(Error::InsufficientData(format!(
            "trajectory spans fewer than 2 full cycles ({sign_changes} velocity sign changes)"
        )));
    }
    let duration = *traj.times.last().unwrap() - traj.times[0];

    let mut amp = (u_max - u_min) * T::of(0.5);
    let mut omega = T::PI() * T::of(sign_changes as f64) / duration;

    let objective = |amp: T, omega: T| -> T {
        let mut ss = T::zero();
        for i in 0..n {
            let r = traj.u[i] - amp * ((omega * traj.times[i]).cos() - T::one());
            ss += r * r;
        }
        ss
    };

    let mut obj = objective(amp, omega);
    let mut iterations = 0;
    let mut converged = false;

    while iterations < MAX_ITERATIONS {
        iterations += 1;
        // Normal equations for the 2x2 Gauss-Newton system.
        let mut a11 = T::zero();
        let mut a12 = T::zero();
        let mut a22 = T::zero();
        let mut g1 = T::zero();
        let mut g2 = T::zero();
        for i in 0..n {
            let tau = traj.times[i];
            let (sin, cos) = (omega * tau).sin_cos();
            let j1 = cos - T::one();
            let j2 = -amp * tau * sin;
            let r = traj.u[i] - amp * j1;
            a11 += j1 * j1;
            a12 += j1 * j2;
            a22 += j2 * j2;
            g1 += j1 * r;
            g2 += j2 * r;
        }
        let det = a11 * a22 - a12 * a12;
        if !(det.abs() > T::zero()) || !det.is_finite() {
            break;
        }
        let d_amp = (a22 * g1 - a12 * g2) / det;
        let d_omega = (a11 * g2 - a12 * g1) / det;

        // Step halving on objective increase.
        let mut scale = T::one();
        let mut accepted = false;
        for _ in 0..60 {
            let trial_amp = amp + scale * d_amp;
            let trial_omega = omega + scale * d_omega;
            let trial_obj = objective(trial_amp, trial_omega);
            if trial_obj <= obj {
                let rel_step = relative_step(scale * d_amp, amp).max(relative_step(
                    scale * d_omega,
                    omega,
                ));
                amp = trial_amp;
                omega = trial_omega;
                obj = trial_obj;
                accepted = true;
                if rel_step < T::of(STEP_REL_TOL) {
                    converged = true;
                }
                break;
            }
            scale *= T::of(0.5);
        }
        if !accepted || converged {
            break;
        }
    }

    let model: Vec<T> = traj
        .times
        .iter()
        .map(|&tau| amp * ((omega * tau).cos() - T::one()))
        .collect();
    let r2 = r_squared(&traj.u, &model)?;
    Ok(FitResult {
        amp,
        omega,
        r2,
        residual_rms: (obj / T::of(n as f64)).sqrt(),
        iterations,
        converged,
    })
}

fn relative_step<T: Real>(step: T, value: T) -> T {
    step.abs() / value.abs().max(T::of(f64::MIN_POSITIVE))
}

/// Count strict sign alternations, ignoring exact zeros.
fn count_sign_changes<T: Real>(values: &[T]) -> usize {
    let mut changes = 0;
    let mut last = T::zero();
    for &v in values {
        if v == T::zero() {
            continue;
        }
        let s = v.signum();
        if last != T::zero() && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

/// Coefficient of determination `1 - SS_res / SS_tot`, with the total sum of
/// squares taken about the data mean. Errors on constant data, where the
/// statistic is undefined.
pub fn r_squared<T: Real>(data: &[T], model: &[T]) -> Result<T> {
    if data.len() != model.len() {
        return Err(Error::InvalidInput(format!(
            "series lengths differ: {} vs {}",
            data.len(),
            model.len()
        )));
    }
    if data.len() < 2 {
        return Err(Error::InsufficientData(
            "need at least 2 points for r^2".into(),
        ));
    }
    let n = T::of(data.len() as f64);
    let mean = data.iter().fold(T::zero(), |s, &d| s + d) / n;
    let mut ss_tot = T::zero();
    let mut ss_res = T::zero();
    for i in 0..data.len() {
        let dm = data[i] - mean;
        let r = data[i] - model[i];
        ss_tot += dm * dm;
        ss_res += r * r;
    }
    if ss_tot == T::zero() {
        return Err(Error::ZeroVariance);
    }
    Ok(T::one() - ss_res / ss_tot)
}
