//! Batch exploration of the design space `(k, A, x0)`: stability maps and
//! oscillation summaries over a parameter grid.
//!
//! Grid points are independent, so they may be evaluated concurrently;
//! results are always assembled in row-major axis order, making the output a
//! pure function of the [`SweepSpec`] regardless of scheduling.

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::solve_equilibrium;
use crate::config::KvEntry;
use crate::error::{Error, Result};
use crate::fit::fit_sinusoid;
use crate::integrator::{default_dt, verlet_integrate, SimConfig, DEFAULT_PERIODS};
use crate::physics::{surface_density, OscillatorModel, PhysicalParams};
use crate::scalar::Real;

/// A sweepable device parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AxisParam {
    K,
    Area,
    X0,
}

impl AxisParam {
    pub fn name(self) -> &'static str {
        match self {
            AxisParam::K => "k",
            AxisParam::Area => "area",
            AxisParam::X0 => "x0",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Spacing {
    Linear,
    Log,
}

/// One grid axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepAxis<T> {
    pub param: AxisParam,
    pub min: T,
    pub max: T,
    pub count: usize,
    pub spacing: Spacing,
}

impl<T: Real> SweepAxis<T> {
    /// Grid values, inclusive of both ends. A degenerate axis with
    /// `min == max` repeats the value, which is occasionally useful for
    /// determinism checks.
    pub fn values(&self) -> Vec<T> {
        let n = self.count;
        let denom = T::of((n - 1) as f64);
        (0..n)
            .map(|i| {
                let frac = T::of(i as f64) / denom;
                match self.spacing {
                    Spacing::Linear => self.min + (self.max - self.min) * frac,
                    Spacing::Log => {
                        let log_min = self.min.ln();
                        let log_max = self.max.ln();
                        (log_min + (log_max - log_min) * frac).exp()
                    }
                }
            })
            .collect()
    }
}

/// A sweep request: 1 to 3 axes, fixed values for whatever is not swept, and
/// an optional per-point simulation plus fit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec<T> {
    pub axes: Vec<SweepAxis<T>>,
    pub fixed_k: Option<T>,
    pub fixed_area: Option<T>,
    pub fixed_x0: Option<T>,
    /// Surface mass density. Enters only the time scale `t*`, never the
    /// stability verdict or the natural-unit observables, so it defaults
    /// to 1 kg/m^2.
    pub rho_s: T,
    /// Run a release-from-rest simulation and sinusoid fit at stable points.
    pub simulate: bool,
    /// Simulation time step in `t*` units.
    pub dt: T,
    /// Simulation length in harmonic periods.
    pub periods: T,
}

impl<T: Real> SweepSpec<T> {
    pub fn new(axes: Vec<SweepAxis<T>>) -> Self {
        Self {
            axes,
            fixed_k: None,
            fixed_area: None,
            fixed_x0: None,
            rho_s: T::one(),
            simulate: false,
            dt: default_dt(),
            periods: T::of(DEFAULT_PERIODS),
        }
    }

    /// Build from `key = value` entries: fixed values (`k`, `area`, `x0`,
    /// `rho_s` or `rho_volume` with `thickness`), switches (`simulate`,
    /// `dt`, `periods`), and axis lines
    /// `axis.<param> = <min> <max> <count> <lin|log>`, one per swept
    /// parameter, in sweep order.
    pub fn from_kv(source_name: &str, entries: &[KvEntry]) -> Result<Self> {
        let parse_err = |entry: &KvEntry, msg: String| Error::Parse {
            source_name: source_name.to_string(),
            line: entry.line,
            msg,
        };
        let num = |entry: &KvEntry| -> Result<T> {
            entry
                .value
                .parse::<T>()
                .map_err(|_| parse_err(entry, format!("`{}` is not a number", entry.value)))
        };

        let mut spec = SweepSpec::new(Vec::new());
        let mut rho_volume: Option<T> = None;
        let mut thickness: Option<T> = None;
        let mut rho_s: Option<T> = None;

        for entry in entries {
            match entry.key.as_str() {
                "k" => spec.fixed_k = Some(num(entry)?),
                "area" => spec.fixed_area = Some(num(entry)?),
                "x0" => spec.fixed_x0 = Some(num(entry)?),
                "rho_s" => rho_s = Some(num(entry)?),
                "rho_volume" => rho_volume = Some(num(entry)?),
                "thickness" => thickness = Some(num(entry)?),
                "dt" => spec.dt = num(entry)?,
                "periods" => spec.periods = num(entry)?,
                "simulate" => {
                    spec.simulate = match entry.value.as_str() {
                        "true" | "yes" | "1" => true,
                        "false" | "no" | "0" => false,
                        other => {
                            return Err(parse_err(
                                entry,
                                format!("`{other}` is not a boolean"),
                            ))
                        }
                    }
                }
                key if key.starts_with("axis.") => {
                    let param = match &key[5..] {
                        "k" => AxisParam::K,
                        "area" => AxisParam::Area,
                        "x0" => AxisParam::X0,
                        other => {
                            return Err(parse_err(
                                entry,
                                format!("unknown axis parameter `{other}` (use k, area or x0)"),
                            ))
                        }
                    };
                    let fields: Vec<&str> = entry.value.split_whitespace().collect();
                    if fields.len() != 4 {
                        return Err(parse_err(
                            entry,
                            "axis needs `<min> <max> <count> <lin|log>`".into(),
                        ));
                    }
                    let fnum = |s: &str| -> Result<T> {
                        s.parse::<T>()
                            .map_err(|_| parse_err(entry, format!("`{s}` is not a number")))
                    };
                    let count: usize = fields[2]
                        .parse()
                        .map_err(|_| parse_err(entry, format!("`{}` is not a count", fields[2])))?;
                    let spacing = match fields[3] {
                        "lin" | "linear" => Spacing::Linear,
                        "log" => Spacing::Log,
                        other => {
                            return Err(parse_err(
                                entry,
                                format!("`{other}` is not a spacing (use lin or log)"),
                            ))
                        }
                    };
                    spec.axes.push(SweepAxis {
                        param,
                        min: fnum(fields[0])?,
                        max: fnum(fields[1])?,
                        count,
                        spacing,
                    });
                }
                other => {
                    return Err(parse_err(entry, format!("unknown key `{other}`")));
                }
            }
        }
        spec.rho_s = match (rho_s, rho_volume, thickness) {
            (Some(r), _, _) => r,
            (None, Some(rv), Some(th)) => surface_density(rv, th)?,
            (None, None, None) => T::one(),
            _ => {
                return Err(Error::InvalidInput(
                    "rho_volume and thickness must be given together".into(),
                ))
            }
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.axes.is_empty() || self.axes.len() > 3 {
            return Err(Error::InvalidInput(format!(
                "sweeps take 1 to 3 axes, got {}",
                self.axes.len()
            )));
        }
        for (i, a) in self.axes.iter().enumerate() {
            for b in &self.axes[i + 1..] {
                if a.param == b.param {
                    return Err(Error::InvalidInput(format!(
                        "parameter `{}` is swept twice",
                        a.param.name()
                    )));
                }
            }
            if a.count < 2 {
                return Err(Error::InvalidInput(format!(
                    "axis `{}` needs at least 2 points",
                    a.param.name()
                )));
            }
            if !(a.min > T::zero()) || !(a.max >= a.min) || !a.max.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "axis `{}` needs 0 < min <= max",
                    a.param.name()
                )));
            }
        }
        for (param, fixed) in [
            (AxisParam::K, self.fixed_k),
            (AxisParam::Area, self.fixed_area),
            (AxisParam::X0, self.fixed_x0),
        ] {
            let swept = self.axes.iter().any(|a| a.param == param);
            match fixed {
                Some(_) if swept => {
                    return Err(Error::InvalidInput(format!(
                        "`{}` is both swept and fixed",
                        param.name()
                    )))
                }
                Some(v) if !(v > T::zero()) => {
                    return Err(Error::InvalidInput(format!(
                        "fixed `{}` must be positive",
                        param.name()
                    )))
                }
                None if !swept => {
                    return Err(Error::InvalidInput(format!(
                        "`{}` is neither swept nor fixed",
                        param.name()
                    )))
                }
                _ => {}
            }
        }
        if !(self.rho_s > T::zero()) {
            return Err(Error::InvalidInput("rho_s must be positive".into()));
        }
        if !(self.dt > T::zero()) || !(self.periods > T::zero()) {
            return Err(Error::InvalidInput(
                "dt and periods must be positive".into(),
            ));
        }
        Ok(())
    }

    fn grid(&self) -> Vec<Vec<T>> {
        self.axes.iter().map(SweepAxis::values).collect()
    }

    fn point(&self, grid: &[Vec<T>], flat: usize) -> (T, T, T) {
        let mut remainder = flat;
        let mut indices = vec![0usize; self.axes.len()];
        for d in (0..self.axes.len()).rev() {
            indices[d] = remainder % self.axes[d].count;
            remainder /= self.axes[d].count;
        }
        let mut k = self.fixed_k;
        let mut area = self.fixed_area;
        let mut x0 = self.fixed_x0;
        for (axis, (values, &idx)) in self.axes.iter().zip(grid.iter().zip(&indices)) {
            let v = values[idx];
            match axis.param {
                AxisParam::K => k = Some(v),
                AxisParam::Area => area = Some(v),
                AxisParam::X0 => x0 = Some(v),
            }
        }
        (
            k.expect("validated"),
            area.expect("validated"),
            x0.expect("validated"),
        )
    }
}

/// One evaluated grid point. Unstable points carry nulls for everything an
/// oscillation would define.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow<T> {
    pub k: T,
    pub area: T,
    pub x0: T,
    pub stable: bool,
    pub x_eq_stable: Option<T>,
    pub k_crit: T,
    pub omega_hat: Option<T>,
    pub amp_fit: Option<T>,
    /// Per-point failure note; failures never abort the sweep.
    pub error: Option<String>,
}

fn eval_point<T: Real>(spec: &SweepSpec<T>, k: T, area: T, x0: T) -> SweepRow<T> {
    let physical = match PhysicalParams::new(k, area, x0, spec.rho_s) {
        Ok(p) => p,
        Err(e) => {
            return SweepRow {
                k,
                area,
                x0,
                stable: false,
                x_eq_stable: None,
                k_crit: T::nan(),
                omega_hat: None,
                amp_fit: None,
                error: Some(e.to_string()),
            }
        }
    };
    let model = OscillatorModel::from_physical(physical);
    let report = solve_equilibrium(&model);
    let mut row = SweepRow {
        k,
        area,
        x0,
        stable: report.stable,
        x_eq_stable: report.x_eq_stable,
        k_crit: report.k_crit,
        omega_hat: report.omega_eff,
        amp_fit: None,
        error: None,
    };
    if spec.simulate && report.stable {
        let cfg = SimConfig::for_periods(model.dimensionless.c_hat, spec.dt, spec.periods);
        match verlet_integrate(&cfg) {
            Ok(traj) if traj.collapsed => {
                row.error = Some("release from rest collapsed onto the fixed plate".into());
            }
            Ok(traj) => match fit_sinusoid(&traj) {
                Ok(fit) if fit.converged => row.amp_fit = Some(fit.amp),
                Ok(_) => row.error = Some("sinusoid fit did not converge".into()),
                Err(e) => row.error = Some(e.to_string()),
            },
            Err(e) => row.error = Some(e.to_string()),
        }
    }
    row
}

/// Evaluate the grid concurrently. Rows come back in row-major axis order
/// (first axis outermost) regardless of scheduling, identical to
/// [`run_sweep_serial`].
pub fn run_sweep<T: Real>(spec: &SweepSpec<T>) -> Result<Vec<SweepRow<T>>> {
    spec.validate()?;
    let grid = spec.grid();
    let total: usize = spec.axes.iter().map(|a| a.count).product();
    Ok((0..total)
        .into_par_iter()
        .map(|flat| {
            let (k, area, x0) = spec.point(&grid, flat);
            eval_point(spec, k, area, x0)
        })
        .collect())
}

/// Evaluate the grid on the calling thread, in output order.
pub fn run_sweep_serial<T: Real>(spec: &SweepSpec<T>) -> Result<Vec<SweepRow<T>>> {
    spec.validate()?;
    let grid = spec.grid();
    let total: usize = spec.axes.iter().map(|a| a.count).product();
    Ok((0..total)
        .map(|flat| {
            let (k, area, x0) = spec.point(&grid, flat);
            eval_point(spec, k, area, x0)
        })
        .collect())
}

fn fmt_field<T: Real>(v: T) -> String {
    format!("{v:.16e}")
}

/// Render rows as CSV: swept axis columns first, then
/// `stable,x_eq_stable,k_crit,omega_hat,amp_fit,error`. Nulls are empty
/// fields; byte-identical across runs for identical specs.
pub fn rows_to_csv<T: Real>(spec: &SweepSpec<T>, rows: &[SweepRow<T>]) -> String {
    let mut out = String::new();
    for axis in &spec.axes {
        out.push_str(axis.param.name());
        out.push(',');
    }
    out.push_str("stable,x_eq_stable,k_crit,omega_hat,amp_fit,error\n");
    for row in rows {
        for axis in &spec.axes {
            let v = match axis.param {
                AxisParam::K => row.k,
                AxisParam::Area => row.area,
                AxisParam::X0 => row.x0,
            };
            out.push_str(&fmt_field(v));
            out.push(',');
        }
        out.push_str(if row.stable { "true" } else { "false" });
        out.push(',');
        if let Some(x) = row.x_eq_stable {
            out.push_str(&fmt_field(x));
        }
        out.push(',');
        out.push_str(&fmt_field(row.k_crit));
        out.push(',');
        if let Some(w) = row.omega_hat {
            out.push_str(&fmt_field(w));
        }
        out.push(',');
        if let Some(a) = row.amp_fit {
            out.push_str(&fmt_field(a));
        }
        out.push(',');
        if let Some(e) = &row.error {
            // Keep the CSV single-token per field.
            out.push_str(&e.replace(',', ";"));
        }
        out.push('\n');
    }
    out
}

/// A stability transition between neighboring grid cells, reported at the
/// midpoint of the changing coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryPoint<T> {
    /// Value on the first swept axis.
    pub first: T,
    /// Value on the second swept axis.
    pub second: T,
}

/// Scan a 2-axis sweep for cells where the stable flag changes between
/// neighbors. An all-stable or all-unstable grid yields an empty list.
pub fn stability_boundary<T: Real>(
    spec: &SweepSpec<T>,
    rows: &[SweepRow<T>],
) -> Result<Vec<BoundaryPoint<T>>> {
    if spec.axes.len() != 2 {
        return Err(Error::InvalidInput(format!(
            "stability boundaries need exactly 2 axes, got {}",
            spec.axes.len()
        )));
    }
    let (n0, n1) = (spec.axes[0].count, spec.axes[1].count);
    if rows.len() != n0 * n1 {
        return Err(Error::InvalidInput(format!(
            "row count {} does not match the {n0}x{n1} grid",
            rows.len()
        )));
    }
    let v0 = spec.axes[0].values();
    let v1 = spec.axes[1].values();
    let half = T::of(0.5);
    let mut boundary = Vec::new();
    for i in 0..n0 {
        for j in 0..n1 {
            let here = rows[i * n1 + j].stable;
            if i + 1 < n0 && rows[(i + 1) * n1 + j].stable != here {
                boundary.push(BoundaryPoint {
                    first: (v0[i] + v0[i + 1]) * half,
                    second: v1[j],
                });
            }
            if j + 1 < n1 && rows[i * n1 + j + 1].stable != here {
                boundary.push(BoundaryPoint {
                    first: v0[i],
                    second: (v1[j] + v1[j + 1]) * half,
                });
            }
        }
    }
    Ok(boundary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::critical_stiffness;
    use crate::config::parse_kv;

    fn k_axis(min: f64, max: f64, count: usize) -> SweepAxis<f64> {
        SweepAxis {
            param: AxisParam::K,
            min,
            max,
            count,
            spacing: Spacing::Log,
        }
    }

    #[test]
    fn one_axis_sweep_brackets_the_critical_stiffness() {
        let mut spec = SweepSpec::new(vec![k_axis(1e-8, 1e-4, 25)]);
        spec.fixed_area = Some(1e-10);
        spec.fixed_x0 = Some(1e-6);
        let rows = run_sweep(&spec).unwrap();
        assert_eq!(rows.len(), 25);
        let k_crit = critical_stiffness(1e-10_f64, 1e-6);
        let mut transitions = 0;
        for w in rows.windows(2) {
            if w[0].stable != w[1].stable {
                transitions += 1;
                assert!(w[0].k < k_crit && k_crit < w[1].k, "bracket misses k_crit");
            }
        }
        assert_eq!(transitions, 1);
        for row in &rows {
            assert!((row.k_crit - k_crit).abs() / k_crit < 1e-12);
            if row.stable {
                assert!(row.x_eq_stable.unwrap() > 0.8 * row.x0);
            } else {
                assert!(row.x_eq_stable.is_none() && row.omega_hat.is_none());
                assert!(row.amp_fit.is_none());
            }
        }
    }

    #[test]
    fn degenerate_axis_repeats_identical_rows() {
        let mut spec = SweepSpec::new(vec![SweepAxis {
            param: AxisParam::K,
            min: 1.0,
            max: 1.0,
            count: 2,
            spacing: Spacing::Linear,
        }]);
        spec.fixed_area = Some(1e-12);
        spec.fixed_x0 = Some(1e-6);
        spec.rho_s = 8.92e-3;
        let rows = run_sweep(&spec).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0], rows[1]);
    }

    #[test]
    fn simulated_sweep_row_at_the_reference_point_recovers_the_amplitude() {
        // Same device as the bundled preset, but with the coefficients
        // derived from the physical inputs rather than pinned. The fitted
        // amplitude must still land inside the reference window.
        let mut spec = SweepSpec::<f64>::new(vec![SweepAxis {
            param: AxisParam::K,
            min: 1.0,
            max: 1.0,
            count: 2,
            spacing: Spacing::Linear,
        }]);
        spec.fixed_area = Some(1e-12);
        spec.fixed_x0 = Some(1e-6);
        spec.rho_s = 8.92e-3;
        spec.simulate = true;
        let rows = run_sweep(&spec).unwrap();
        let amp = rows[0].amp_fit.expect("stable point fits");
        assert!((amp - 1.302e-9).abs() < 5e-12, "amp_fit = {amp:e}");
        assert!(rows[0].error.is_none());
    }

    #[test]
    fn serial_and_parallel_runs_render_identically() {
        let mut spec = SweepSpec::new(vec![
            k_axis(1e-8, 1e-4, 9),
            SweepAxis {
                param: AxisParam::Area,
                min: 1e-12,
                max: 1e-9,
                count: 7,
                spacing: Spacing::Log,
            },
        ]);
        spec.fixed_x0 = Some(1e-6);
        let par = rows_to_csv(&spec, &run_sweep(&spec).unwrap());
        let ser = rows_to_csv(&spec, &run_sweep_serial(&spec).unwrap());
        assert_eq!(par, ser);
        let again = rows_to_csv(&spec, &run_sweep(&spec).unwrap());
        assert_eq!(par, again);
    }

    #[test]
    fn boundary_tracks_the_linear_area_law() {
        // k_crit is linear in A, so on a (k, A) grid the boundary must sit
        // within one cell of k = k_crit(A).
        let mut spec = SweepSpec::new(vec![
            k_axis(1e-9, 1e-4, 26),
            SweepAxis {
                param: AxisParam::Area,
                min: 1e-12,
                max: 1e-8,
                count: 9,
                spacing: Spacing::Log,
            },
        ]);
        spec.fixed_x0 = Some(1e-6);
        let rows = run_sweep(&spec).unwrap();
        let boundary = stability_boundary(&spec, &rows).unwrap();
        assert!(!boundary.is_empty());
        // One grid cell of slack: a transition along either axis moves
        // k_crit by at most one step factor (the law is linear in A).
        let k_step = (1e-4_f64 / 1e-9).powf(1.0 / 25.0);
        let a_step = (1e-8_f64 / 1e-12).powf(1.0 / 8.0);
        let allowed = k_step.max(a_step);
        for pt in &boundary {
            let k_crit = critical_stiffness(pt.second, 1e-6_f64);
            let ratio = pt.first / k_crit;
            assert!(
                (1.0 / allowed..=allowed).contains(&ratio),
                "boundary point off the law: k = {:e}, k_crit = {k_crit:e}",
                pt.first
            );
        }
    }

    #[test]
    fn boundary_tracks_the_quintic_gap_law() {
        let mut spec = SweepSpec::new(vec![
            k_axis(1e-9, 1e-3, 25),
            SweepAxis {
                param: AxisParam::X0,
                min: 5e-7,
                max: 5e-6,
                count: 8,
                spacing: Spacing::Log,
            },
        ]);
        spec.fixed_area = Some(1e-10);
        let rows = run_sweep(&spec).unwrap();
        let boundary = stability_boundary(&spec, &rows).unwrap();
        assert!(!boundary.is_empty());
        // The law runs as x0^-5, so one x0 cell moves k_crit by the fifth
        // power of the x0 step factor.
        let k_step = (1e-3_f64 / 1e-9).powf(1.0 / 24.0);
        let x_step = (5e-6_f64 / 5e-7).powf(1.0 / 7.0);
        let allowed = k_step.max(x_step.powi(5));
        for pt in &boundary {
            let k_crit = critical_stiffness(1e-10_f64, pt.second);
            let ratio = pt.first / k_crit;
            assert!(
                (1.0 / allowed..=allowed).contains(&ratio),
                "boundary point off the x0^-5 law: ratio {ratio}"
            );
        }
    }

    #[test]
    fn all_stable_grid_has_no_boundary() {
        let mut spec = SweepSpec::new(vec![
            k_axis(0.1, 10.0, 4),
            SweepAxis {
                param: AxisParam::Area,
                min: 1e-13,
                max: 1e-12,
                count: 3,
                spacing: Spacing::Linear,
            },
        ]);
        spec.fixed_x0 = Some(1e-6);
        let rows = run_sweep(&spec).unwrap();
        assert!(rows.iter().all(|r| r.stable));
        assert!(stability_boundary(&spec, &rows).unwrap().is_empty());
    }

    #[test]
    fn simulation_failures_stay_in_their_rows() {
        // Points inside the overshoot band (static minimum, dynamic
        // collapse) must report their error without aborting neighbors.
        let x0 = 1e-6_f64;
        let area = 1e-10_f64;
        let peak = 256.0 / 3125.0;
        let k_for = |c_hat: f64| {
            crate::physics::PI_SQ_HBAR_C * area / (240.0 * c_hat * x0.powi(5))
        };
        let k_overshoot = k_for(0.075); // collapses from rest
        let k_fine = k_for(1e-4); // oscillates
        assert!(k_overshoot > critical_stiffness(area, x0));
        assert!(0.075 < peak);

        let mut spec = SweepSpec::new(vec![SweepAxis {
            param: AxisParam::K,
            min: k_overshoot,
            max: k_fine,
            count: 2,
            spacing: Spacing::Linear,
        }]);
        spec.fixed_area = Some(area);
        spec.fixed_x0 = Some(x0);
        spec.simulate = true;
        let rows = run_sweep(&spec).unwrap();
        assert!(rows[0].stable && rows[0].amp_fit.is_none());
        assert!(rows[0].error.as_deref().unwrap().contains("collapsed"));
        assert!(rows[1].stable && rows[1].amp_fit.is_some());
        assert!(rows[1].error.is_none());
    }

    #[test]
    fn csv_layout_matches_the_contract() {
        let mut spec = SweepSpec::new(vec![k_axis(1e-8, 1e-6, 2)]);
        spec.fixed_area = Some(1e-10);
        spec.fixed_x0 = Some(1e-6);
        let rows = run_sweep(&spec).unwrap();
        let csv = rows_to_csv(&spec, &rows);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "k,stable,x_eq_stable,k_crit,omega_hat,amp_fit,error"
        );
        let first: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(first.len(), 7);
        assert_eq!(first[1], "false");
        assert_eq!(first[2], "", "unstable row has empty x_eq field");
    }

    #[test]
    fn spec_parses_from_kv_entries() {
        let text = "\
            area = 1e-10\n\
            x0 = 1e-6\n\
            simulate = false\n\
            axis.k = 1e-8 1e-4 25 log\n";
        let entries = parse_kv("sweep.cfg", text).unwrap();
        let spec = SweepSpec::<f64>::from_kv("sweep.cfg", &entries).unwrap();
        assert_eq!(spec.axes.len(), 1);
        assert_eq!(spec.axes[0].count, 25);
        assert_eq!(spec.axes[0].spacing, Spacing::Log);
        assert_eq!(spec.fixed_area, Some(1e-10));
        assert!(!spec.simulate);

        let bad = parse_kv("s", "axis.k = 1 2 3\narea = 1\nx0 = 1\n").unwrap();
        assert!(matches!(
            SweepSpec::<f64>::from_kv("s", &bad),
            Err(Error::Parse { line: 1, .. })
        ));
        let unknown = parse_kv("s", "bogus = 1\n").unwrap();
        assert!(SweepSpec::<f64>::from_kv("s", &unknown).is_err());
    }

    #[test]
    fn validation_rejects_inconsistent_specs() {
        // Swept and fixed at once.
        let mut spec = SweepSpec::new(vec![k_axis(1e-8, 1e-4, 5)]);
        spec.fixed_k = Some(1.0);
        spec.fixed_area = Some(1e-10);
        spec.fixed_x0 = Some(1e-6);
        assert!(spec.validate().is_err());
        // Missing fixed value.
        let spec = SweepSpec::<f64>::new(vec![k_axis(1e-8, 1e-4, 5)]);
        assert!(spec.validate().is_err());
        // No axes.
        let spec = SweepSpec::<f64>::new(vec![]);
        assert!(spec.validate().is_err());
        // Single-point axis.
        let mut spec = SweepSpec::new(vec![k_axis(1e-8, 1e-4, 1)]);
        spec.fixed_area = Some(1e-10);
        spec.fixed_x0 = Some(1e-6);
        assert!(spec.validate().is_err());
    }
}
