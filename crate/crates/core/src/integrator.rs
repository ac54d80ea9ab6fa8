//! Dimensionless time integration of the oscillator.
//!
//! The equation of motion in natural units is `u'' = -u - c_hat / (1 + u)^4`
//! with `u = (x - x0) / x0` and time in `t*` units. The offset coordinate
//! matters: oscillation amplitudes are ~1e-9 of the gap, and integrating
//! `x` near `x0` directly would lose nine digits to cancellation in the
//! two-step recurrence.
//!
//! Two integrators share one output contract. The production scheme is the
//! position (Stoermer) Verlet recurrence
//! `u[n+1] = 2 u[n] - u[n-1] + a(u[n]) dt^2`, bootstrapped with a
//! second-order Taylor step. A classical fourth-order Runge-Kutta stepper on
//! the first-order system serves as the independent cross-check.
//!
//! Verlet stores positions only, so velocities are reconstructed centrally,
//! `v[i] = (u[i+1] - u[i-1]) / (2 dt)`, with acceleration-corrected one-sided
//! forms at the ends. The end forms are chosen so that restarting from
//! `(u[last], -v[last])` retraces the forward samples to roundoff, keeping
//! the scheme reversible through the public interface.

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{to_f64_lossy, Real};

/// Default time step: 1000 steps per harmonic period.
pub const DEFAULT_STEPS_PER_PERIOD: usize = 1000;

/// Default run length in harmonic periods.
pub const DEFAULT_PERIODS: f64 = 5.0;

/// Default time step in `t*` units, `2 pi / 1000`.
pub fn default_dt<T: Real>() -> T {
    T::TAU() / T::of(DEFAULT_STEPS_PER_PERIOD as f64)
}

/// One simulation request.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimConfig<T> {
    /// Dimensionless Casimir coefficient (zero gives the harmonic limit).
    pub c_hat: T,
    /// Time step in `t*` units.
    pub dt: T,
    /// Number of steps; the trajectory holds `n_steps + 1` samples.
    pub n_steps: usize,
    /// Initial displacement `(x(0) - x0) / x0`.
    pub u0: T,
    /// Initial velocity in `l*/t*` units.
    pub v0: T,
}

impl<T: Real> SimConfig<T> {
    /// Release from rest at the free length, default step and length.
    pub fn release_from_rest(c_hat: T) -> Self {
        Self::for_periods(c_hat, default_dt(), T::of(DEFAULT_PERIODS))
    }

    /// Run for a given number of harmonic periods at step `dt`.
    pub fn for_periods(c_hat: T, dt: T, periods: T) -> Self {
        let n = (periods * T::TAU() / dt).round();
        let n_steps = n.to_usize().unwrap_or(2).max(2);
        Self {
            c_hat,
            dt,
            n_steps,
            u0: T::zero(),
            v0: T::zero(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > T::zero()) || !self.dt.is_finite() {
            return Err(Error::InvalidInput(format!(
                "dt must be positive and finite, got {:e}",
                self.dt
            )));
        }
        if self.n_steps < 2 {
            return Err(Error::InvalidInput(format!(
                "n_steps must be at least 2, got {}",
                self.n_steps
            )));
        }
        if self.c_hat < T::zero() || !self.c_hat.is_finite() {
            return Err(Error::InvalidInput(format!(
                "c_hat must be non-negative and finite, got {:e}",
                self.c_hat
            )));
        }
        if !(T::one() + self.u0 > T::zero()) {
            return Err(Error::Contact {
                chi: to_f64_lossy(T::one() + self.u0),
            });
        }
        if !self.v0.is_finite() {
            return Err(Error::InvalidInput("v0 must be finite".into()));
        }
        Ok(())
    }
}

/// Time series of one run, in natural units throughout.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory<T> {
    /// Sample times `t / t*`, uniformly spaced by `dt`.
    pub times: Vec<T>,
    /// Dimensionless displacement `(x - x0) / x0`.
    pub u: Vec<T>,
    /// Dimensionless velocity.
    pub v: Vec<T>,
    /// Dimensionless total energy per sample.
    pub energy: Vec<T>,
    /// True when the run hit plate contact and was truncated there.
    pub collapsed: bool,
}

impl<T: Real> Trajectory<T> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Half the peak-to-peak displacement.
    pub fn amplitude(&self) -> T {
        let (lo, hi) = self.u_range();
        (hi - lo) * T::of(0.5)
    }

    /// Minimum and maximum displacement over the run.
    pub fn u_range(&self) -> (T, T) {
        let mut lo = T::infinity();
        let mut hi = T::neg_infinity();
        for &u in &self.u {
            lo = lo.min(u);
            hi = hi.max(u);
        }
        (lo, hi)
    }

    /// Serialize as CSV with a `tau,u,v,energy` header. Values carry 17
    /// significant digits, which round-trips 64-bit floats exactly.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "tau,u,v,energy")?;
        for i in 0..self.len() {
            writeln!(
                out,
                "{:.16e},{:.16e},{:.16e},{:.16e}",
                self.times[i], self.u[i], self.v[i], self.energy[i]
            )?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("CSV is ASCII")
    }

    /// Parse a trajectory CSV produced by [`Trajectory::write_csv`].
    /// `source_name` labels parse errors (typically the file path).
    pub fn from_csv_str(source_name: &str, text: &str) -> Result<Self> {
        let parse_err = |line: usize, msg: String| Error::Parse {
            source_name: source_name.to_string(),
            line,
            msg,
        };
        let mut lines = text.lines().enumerate();
        let Some((_, header)) = lines.next() else {
            return Err(parse_err(1, "empty input".into()));
        };
        if header.trim() != "tau,u,v,energy" {
            return Err(parse_err(
                1,
                format!("expected header `tau,u,v,energy`, got `{}`", header.trim()),
            ));
        }
        let mut traj = Trajectory {
            times: Vec::new(),
            u: Vec::new(),
            v: Vec::new(),
            energy: Vec::new(),
            collapsed: false,
        };
        for (idx, row) in lines {
            let line = idx + 1;
            if row.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = row.split(',').collect();
            if fields.len() != 4 {
                return Err(parse_err(
                    line,
                    format!("expected 4 comma-separated fields, got {}", fields.len()),
                ));
            }
            let mut parsed = [T::zero(); 4];
            for (slot, field) in parsed.iter_mut().zip(&fields) {
                *slot = field.trim().parse::<T>().map_err(|_| {
                    parse_err(line, format!("`{}` is not a number", field.trim()))
                })?;
            }
            traj.times.push(parsed[0]);
            traj.u.push(parsed[1]);
            traj.v.push(parsed[2]);
            traj.energy.push(parsed[3]);
        }
        if traj.is_empty() {
            return Err(Error::InsufficientData(format!(
                "{source_name} contains no data rows"
            )));
        }
        Ok(traj)
    }
}

/// Dimensionless acceleration `-u - c_hat / (1 + u)^4`.
pub fn acceleration<T: Real>(u: T, c_hat: T) -> Result<T> {
    let chi = T::one() + u;
    if !(chi > T::zero()) {
        return Err(Error::Contact {
            chi: to_f64_lossy(chi),
        });
    }
    Ok(accel_unchecked(u, c_hat))
}

#[inline]
fn accel_unchecked<T: Real>(u: T, c_hat: T) -> T {
    let chi = T::one() + u;
    -u - c_hat / chi.powi(4)
}

#[inline]
fn in_contact<T: Real>(u: T) -> bool {
    !(T::one() + u > T::zero())
}

/// Dimensionless total energy `v^2/2 + u^2/2 - c_hat / (3 (1 + u)^3)`.
/// At the release point `(0, 0)` this is `-c_hat / 3`.
pub fn total_energy<T: Real>(u: T, v: T, c_hat: T) -> Result<T> {
    let chi = T::one() + u;
    if !(chi > T::zero()) {
        return Err(Error::Contact {
            chi: to_f64_lossy(chi),
        });
    }
    let half = T::of(0.5);
    Ok(half * v * v + half * u * u - c_hat / (T::of(3.0) * chi.powi(3)))
}

/// Integrate with the two-step position Verlet recurrence.
///
/// The position sequence obeys `u[n+1] = 2 u[n] - u[n-1] + a(u[n]) dt^2`
/// exactly; the first step is the Taylor bootstrap
/// `u[1] = u[0] + v0 dt + a(u[0]) dt^2 / 2`. Contact truncates the run and
/// flags it collapsed instead of erroring, so sweeps across pull-in regions
/// complete.
pub fn verlet_integrate<T: Real>(cfg: &SimConfig<T>) -> Result<Trajectory<T>> {
    cfg.validate()?;
    let dt = cfg.dt;
    let half = T::of(0.5);
    let mut u = Vec::with_capacity(cfg.n_steps + 1);
    let mut collapsed = false;

    u.push(cfg.u0);
    let a0 = accel_unchecked(cfg.u0, cfg.c_hat);
    let u1 = cfg.u0 + cfg.v0 * dt + half * a0 * dt * dt;
    if in_contact(u1) {
        collapsed = true;
    } else {
        u.push(u1);
        for _ in 1..cfg.n_steps {
            let n = u.len();
            let a = accel_unchecked(u[n - 1], cfg.c_hat);
            let next = T::of(2.0) * u[n - 1] - u[n - 2] + a * dt * dt;
            if in_contact(next) {
                collapsed = true;
                break;
            }
            u.push(next);
        }
    }

    Ok(assemble(u, cfg, collapsed))
}

/// Classical fourth-order Runge-Kutta on the first-order system
/// `(u', v') = (v, a(u))`. Independent oracle for [`verlet_integrate`];
/// same output contract, including contact truncation.
pub fn rk4_integrate<T: Real>(cfg: &SimConfig<T>) -> Result<Trajectory<T>> {
    cfg.validate()?;
    let dt = cfg.dt;
    let half = T::of(0.5);
    let sixth = T::one() / T::of(6.0);
    let two = T::of(2.0);

    let mut u = Vec::with_capacity(cfg.n_steps + 1);
    let mut v = Vec::with_capacity(cfg.n_steps + 1);
    u.push(cfg.u0);
    v.push(cfg.v0);
    let mut collapsed = false;

    'steps: for _ in 0..cfg.n_steps {
        let (uc, vc) = (*u.last().unwrap(), *v.last().unwrap());
        let stage = |du: T, dv_u: T| -> Option<(T, T)> {
            let u_s = uc + du;
            if in_contact(u_s) {
                None
            } else {
                Some((vc + dv_u, accel_unchecked(u_s, cfg.c_hat)))
            }
        };
        let Some((k1u, k1v)) = stage(T::zero(), T::zero()) else {
            collapsed = true;
            break 'steps;
        };
        let Some((k2u, k2v)) = stage(half * dt * k1u, half * dt * k1v) else {
            collapsed = true;
            break 'steps;
        };
        let Some((k3u, k3v)) = stage(half * dt * k2u, half * dt * k2v) else {
            collapsed = true;
            break 'steps;
        };
        let Some((k4u, k4v)) = stage(dt * k3u, dt * k3v) else {
            collapsed = true;
            break 'steps;
        };
        let u_next = uc + dt * sixth * (k1u + two * k2u + two * k3u + k4u);
        let v_next = vc + dt * sixth * (k1v + two * k2v + two * k3v + k4v);
        if in_contact(u_next) {
            collapsed = true;
            break;
        }
        u.push(u_next);
        v.push(v_next);
    }

    let times = sample_times(u.len(), dt);
    let energy = u
        .iter()
        .zip(&v)
        .map(|(&ui, &vi)| total_energy(ui, vi, cfg.c_hat).expect("samples are off contact"))
        .collect();
    Ok(Trajectory {
        times,
        u,
        v,
        energy,
        collapsed,
    })
}

fn sample_times<T: Real>(n: usize, dt: T) -> Vec<T> {
    (0..n).map(|i| T::of(i as f64) * dt).collect()
}

/// Reconstruct velocities and energies for a position-only sequence.
fn assemble<T: Real>(u: Vec<T>, cfg: &SimConfig<T>, collapsed: bool) -> Trajectory<T> {
    let dt = cfg.dt;
    let half = T::of(0.5);
    let n = u.len();
    let mut v = vec![T::zero(); n];
    if n == 1 {
        v[0] = cfg.v0;
    } else {
        // One-sided ends carry the half-step acceleration correction; the
        // start form inverts the bootstrap exactly, the end form mirrors it
        // so a negated restart retraces the run.
        v[0] = (u[1] - u[0]) / dt - half * accel_unchecked(u[0], cfg.c_hat) * dt;
        v[n - 1] = (u[n - 1] - u[n - 2]) / dt + half * accel_unchecked(u[n - 1], cfg.c_hat) * dt;
        for i in 1..n - 1 {
            v[i] = (u[i + 1] - u[i - 1]) / (T::of(2.0) * dt);
        }
    }
    let energy = u
        .iter()
        .zip(&v)
        .map(|(&ui, &vi)| total_energy(ui, vi, cfg.c_hat).expect("samples are off contact"))
        .collect();
    Trajectory {
        times: sample_times(n, dt),
        u,
        v,
        energy,
        collapsed,
    }
}

/// Worst energy deviation from the initial value, normalized by the run's
/// kinetic-energy scale `max(v^2/2)`. Zero for constant energy.
pub fn energy_drift<T: Real>(traj: &Trajectory<T>) -> T {
    let Some(&e0) = traj.energy.first() else {
        return T::zero();
    };
    let mut worst = T::zero();
    let mut kinetic = T::zero();
    for i in 0..traj.len() {
        worst = worst.max((traj.energy[i] - e0).abs());
        kinetic = kinetic.max(T::of(0.5) * traj.v[i] * traj.v[i]);
    }
    if worst == T::zero() {
        T::zero()
    } else if kinetic == T::zero() {
        T::infinity()
    } else {
        worst / kinetic
    }
}

/// A displacement extremum located between samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TurningEvent<T> {
    /// Refined time of the extremum.
    pub tau: T,
    /// Refined displacement at the extremum.
    pub u: T,
    /// True for minima (closest approach), false for maxima.
    pub minimum: bool,
}

/// Locate velocity sign changes and refine each by a parabola through the
/// three bracketing displacement samples. Requires at least 3 samples;
/// returns an empty list when the velocity never changes sign.
pub fn detect_turning_points<T: Real>(traj: &Trajectory<T>) -> Vec<TurningEvent<T>> {
    let n = traj.len();
    let mut events = Vec::new();
    if n < 3 {
        return events;
    }
    let dt = traj.times[1] - traj.times[0];
    let mut last_sign = T::zero();
    let mut last_center = usize::MAX;
    for i in 0..n {
        let s = traj.v[i].signum();
        if traj.v[i] == T::zero() {
            continue;
        }
        if last_sign != T::zero() && s != last_sign {
            // Sign change somewhere before sample i; center the parabola on
            // the more extreme of the two bracketing samples.
            let j = if i == 0 { 0 } else { i - 1 };
            let center = if last_sign < T::zero() {
                // falling then rising: a minimum
                if traj.u[i] < traj.u[j] {
                    i
                } else {
                    j
                }
            } else if traj.u[i] > traj.u[j] {
                i
            } else {
                j
            };
            if center >= 1 && center + 1 < n && center != last_center {
                let (um, uc, up) = (traj.u[center - 1], traj.u[center], traj.u[center + 1]);
                let curvature = um - T::of(2.0) * uc + up;
                if curvature != T::zero() {
                    let delta = (um - up) / (T::of(2.0) * curvature);
                    let tau = traj.times[center] + delta * dt;
                    let spread = um - up;
                    let u_ref = uc - spread * spread / (T::of(8.0) * curvature);
                    events.push(TurningEvent {
                        tau,
                        u: u_ref,
                        minimum: curvature > T::zero(),
                    });
                    last_center = center;
                }
            }
        }
        last_sign = s;
    }
    events
}
