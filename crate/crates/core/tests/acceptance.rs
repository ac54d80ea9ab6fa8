//! Acceptance suite: the release gate for the toolkit.
//!
//! Each criterion runs at its pinned tolerance and prints one PASS/FAIL
//! line (visible with `--nocapture`). Expected values come from independent
//! oracles computed inside this file (fixed-point iterations, dense scans,
//! analytic limits, step-halving order measurements), from the published
//! reference figures for the bundled preset, or from hand arithmetic.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use casimir_oscillator::{
    casimir_pressure, critical_stiffness, energy_drift, fit_sinusoid, nondimensionalize,
    rk4_integrate, run_sweep, run_sweep_serial, rows_to_csv, solve_equilibrium,
    solve_turning_point, stability_criterion, turning_offset, verlet_integrate,
    OscillatorModel64, PhysicalParams64, SimConfig64, Trajectory64,
};
use casimir_oscillator::sweep::{AxisParam, Spacing, SweepAxis, SweepSpec};

const DT: f64 = std::f64::consts::TAU / 1000.0;

/// Print the verdict line and panic with detail on failure.
fn verdict(id: usize, name: &str, failures: Vec<String>) {
    if failures.is_empty() {
        println!("[acceptance] criterion {id} ({name}): PASS");
    } else {
        println!("[acceptance] criterion {id} ({name}): FAIL");
        panic!("criterion {id} ({name}) failed:\n  {}", failures.join("\n  "));
    }
}

struct Checks(Vec<String>);

impl Checks {
    fn new() -> Self {
        Checks(Vec::new())
    }
    fn expect(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        if !ok {
            self.0.push(detail());
        }
    }
}

/// Turning-offset oracle: the contraction
/// `eps <- (2 c_hat / 3) (3 - 3 eps + eps^2) / (1 - eps)^3`.
fn turning_oracle(c_hat: f64) -> f64 {
    let mut eps = 2.0 * c_hat;
    for _ in 0..50 {
        eps = 2.0 * c_hat / 3.0 * (3.0 - 3.0 * eps + eps * eps) / (1.0 - eps).powi(3);
    }
    eps
}

/// Equilibrium-offset oracle: the contraction `eps <- c_hat / (1 - eps)^4`.
fn equilibrium_oracle(c_hat: f64) -> f64 {
    let mut eps = c_hat;
    for _ in 0..50 {
        eps = c_hat / (1.0 - eps).powi(4);
    }
    eps
}

fn paper_trajectory() -> Trajectory64 {
    let c_hat = OscillatorModel64::paper().dimensionless.c_hat;
    verlet_integrate(&SimConfig64::for_periods(c_hat, DT, 5.0)).unwrap()
}

#[test]
fn criterion_1_coefficient_reproduction() {
    let mut c = Checks::new();
    let params = PhysicalParams64::new(1.0, 1e-12, 1e-6, 8.92e-3).unwrap();
    let d = nondimensionalize(&params);
    c.expect((d.b - 1.121e14).abs() / 1.121e14 <= 1e-3, || {
        format!("b = {:e}, want 1.121e14 within 0.1%", d.b)
    });
    c.expect((d.c_cas - 1.459e-25).abs() / 1.459e-25 <= 3e-3, || {
        format!("c_cas = {:e}, want 1.459e-25 within 0.3%", d.c_cas)
    });
    verdict(1, "coefficient reproduction", c.0);
}

#[test]
fn criterion_2_sinusoid_fit_reproduction() {
    let mut c = Checks::new();
    let traj = paper_trajectory();
    let fit = fit_sinusoid(&traj).unwrap();
    c.expect(fit.converged, || "fit did not converge".into());
    c.expect((fit.amp - 1.302e-9).abs() <= 5e-12, || {
        format!("Amp = {:e}, want 1.302e-9 within 5e-12", fit.amp)
    });
    c.expect((fit.omega - 1.0).abs() <= 1e-3, || {
        format!("omega = {}, want 1.000 within 1e-3", fit.omega)
    });
    c.expect(fit.r2 >= 0.9999, || format!("r^2 = {}, want >= 0.9999", fit.r2));
    verdict(2, "trajectory fit reproduction", c.0);
}

#[test]
fn criterion_3_turning_point() {
    let mut c = Checks::new();
    let model = OscillatorModel64::paper();
    let traj = paper_trajectory();

    // Simulated closest approach, as a fraction of the gap.
    let (u_min, _) = traj.u_range();
    let sim_ratio = 1.0 + u_min;
    c.expect((sim_ratio - (1.0 - 2.604e-9)).abs() <= 2e-11, || {
        format!("simulated min x/x0 = {sim_ratio:.12e}, want 1 - 2.604e-9 within 2e-11")
    });

    // Solver value against the independent energy-equality oracle.
    let eps_solver = turning_offset(model.dimensionless.c_hat).unwrap();
    let eps_oracle = turning_oracle(model.dimensionless.c_hat);
    let ratio_solver = 1.0 - eps_solver;
    let ratio_oracle = 1.0 - eps_oracle;
    c.expect(
        (ratio_solver - ratio_oracle).abs() / ratio_oracle <= 1e-13,
        || {
            format!(
                "solver x_turn/x0 = {ratio_solver:.15e} vs oracle {ratio_oracle:.15e}, want 1e-13 rel"
            )
        },
    );
    c.expect((ratio_solver - (1.0 - 2.604e-9)).abs() <= 2e-11, || {
        format!("solver x_turn/x0 = {ratio_solver:.12e}, want 1 - 2.604e-9 within 2e-11")
    });

    let tp = solve_turning_point(&model).unwrap();
    c.expect(tp.x_turn < model.physical.x0, || "x_turn must sit below x0".into());
    verdict(3, "turning point", c.0);
}

#[test]
fn criterion_4_equilibrium() {
    let mut c = Checks::new();
    let model = OscillatorModel64::paper();
    let report = solve_equilibrium(&model);
    let eps = report.eps_stable.unwrap();
    let ratio = 1.0 - eps;
    c.expect((ratio - (1.0 - 1.302e-9)).abs() <= 2e-12, || {
        format!("x_eq/x0 = {ratio:.14e}, want 1 - 1.302e-9 within 2e-12")
    });

    // Residual of the stationarity condition, relative.
    let c_hat = model.dimensionless.c_hat;
    let residual = (eps * (1.0 - eps).powi(4) - c_hat).abs() / c_hat;
    c.expect(residual < 1e-12, || format!("stationarity residual {residual:e}"));

    let x_eq = report.x_eq_stable.unwrap();
    c.expect(x_eq > 0.8 * model.physical.x0, || {
        format!("x_eq = {x_eq:e} not above 4/5 x0")
    });

    // Cross-check against the independent fixed-point oracle, at the
    // solver's own relative tolerance with slack.
    let oracle = equilibrium_oracle(c_hat);
    c.expect((eps - oracle).abs() <= 1e-13 * oracle, || {
        format!("eps = {eps:e} vs oracle {oracle:e}")
    });
    verdict(4, "equilibrium", c.0);
}

#[test]
fn criterion_5_stability_threshold() {
    let mut c = Checks::new();
    let k_crit = critical_stiffness(1e-10_f64, 1e-6);
    c.expect((k_crit - 1.587e-6).abs() / 1.587e-6 <= 1e-2, || {
        format!("k_crit = {k_crit:e}, want 1.587e-6 within 1%")
    });
    // Same order as the quoted bound k >= 1e-6 N/m.
    c.expect(k_crit > 1e-6 && k_crit < 1e-5, || {
        format!("k_crit = {k_crit:e} not of order 1e-6")
    });

    // A stiffness sweep brackets the same transition within one grid cell.
    let mut spec = SweepSpec::new(vec![SweepAxis {
        param: AxisParam::K,
        min: 1e-8,
        max: 1e-4,
        count: 25,
        spacing: Spacing::Log,
    }]);
    spec.fixed_area = Some(1e-10);
    spec.fixed_x0 = Some(1e-6);
    let rows = run_sweep(&spec).unwrap();
    let mut bracketed = false;
    for w in rows.windows(2) {
        if w[0].stable != w[1].stable {
            bracketed = w[0].k < k_crit && k_crit < w[1].k && !w[0].stable && w[1].stable;
        }
    }
    c.expect(bracketed, || "sweep transition does not bracket k_crit".into());
    verdict(5, "stability threshold", c.0);
}

#[test]
fn criterion_6_casimir_magnitude() {
    let mut c = Checks::new();
    let p = casimir_pressure(1e-8_f64).unwrap();
    c.expect(p < 0.0, || "pressure must be attractive".into());
    c.expect((p.abs() - 1.30e5).abs() / 1.30e5 <= 5e-2, || {
        format!("|P(10 nm)| = {:e}, want 1.30e5 within 5%", p.abs())
    });
    let atm = p.abs() / 101_325.0;
    c.expect((atm - 1.28).abs() < 0.05, || format!("{atm} atm, want ~1.28"));
    verdict(6, "Casimir magnitude sanity", c.0);
}

#[test]
fn criterion_7_integrator_orders() {
    let mut c = Checks::new();
    let c_hat = OscillatorModel64::paper().dimensionless.c_hat;
    let steps = (5.0 * std::f64::consts::TAU / DT).round() as usize;
    let cfg = |dt: f64, n: usize| SimConfig64 {
        c_hat,
        dt,
        n_steps: n,
        u0: 0.0,
        v0: 0.0,
    };

    // One dt -> 0 reference serves every run: RK4 at dt/32.
    let reference = rk4_integrate(&cfg(DT / 32.0, steps * 32)).unwrap();
    let max_err = |traj: &Trajectory64, stride: usize| -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..traj.len() {
            worst = worst.max((traj.u[i] - reference.u[stride * i]).abs());
        }
        worst
    };

    let verlet_1 = verlet_integrate(&cfg(DT, steps)).unwrap();
    let verlet_2 = verlet_integrate(&cfg(DT / 2.0, steps * 2)).unwrap();
    let position_order = (max_err(&verlet_1, 32) / max_err(&verlet_2, 16)).log2();
    c.expect((position_order - 2.0).abs() <= 0.3, || {
        format!("Verlet position order {position_order:.3}, want 2.0 +- 0.3")
    });

    let drift_order = (energy_drift(&verlet_1) / energy_drift(&verlet_2)).log2();
    c.expect((drift_order - 2.0).abs() <= 0.3, || {
        format!("Verlet energy-drift order {drift_order:.3}, want 2.0 +- 0.3")
    });

    let rk4_1 = rk4_integrate(&cfg(DT, steps)).unwrap();
    let rk4_2 = rk4_integrate(&cfg(DT / 2.0, steps * 2)).unwrap();
    let rk4_order = (max_err(&rk4_1, 32) / max_err(&rk4_2, 16)).log2();
    c.expect((rk4_order - 4.0).abs() <= 0.5, || {
        format!("RK4 order {rk4_order:.3}, want 4.0 +- 0.5")
    });

    // Pointwise cross-method agreement over 5 periods.
    let amp = verlet_1.amplitude();
    let mut worst = 0.0_f64;
    for i in 0..verlet_1.len() {
        worst = worst.max((verlet_1.u[i] - rk4_1.u[i]).abs());
    }
    c.expect(worst <= 1e-3 * amp, || {
        format!("Verlet vs RK4 disagreement {worst:e} above 1e-3 x amplitude {amp:e}")
    });
    verdict(7, "integrator order properties", c.0);
}

#[test]
fn criterion_8_harmonic_limit_oracle() {
    let mut c = Checks::new();
    let amp = 1e-3_f64;
    let cfg = SimConfig64 {
        c_hat: 0.0,
        dt: DT,
        n_steps: 10_000,
        u0: amp,
        v0: 0.0,
    };
    // The fourth-order oracle against the exact cosine over 10 periods.
    let traj = rk4_integrate(&cfg).unwrap();
    let mut worst = 0.0_f64;
    for i in 0..traj.len() {
        worst = worst.max((traj.u[i] - amp * traj.times[i].cos()).abs());
    }
    c.expect(worst / amp < 1e-8, || {
        format!("oracle deviation {:e} of amplitude, want < 1e-8", worst / amp)
    });

    // Reversibility: negate the end velocity and integrate back.
    let forward = verlet_integrate(&cfg).unwrap();
    let back = verlet_integrate(&SimConfig64 {
        u0: *forward.u.last().unwrap(),
        v0: -*forward.v.last().unwrap(),
        ..cfg
    })
    .unwrap();
    let round_trip = (back.u.last().unwrap() - cfg.u0).abs();
    c.expect(round_trip < 1e-12, || {
        format!("time-reversal error {round_trip:e}, want < 1e-12")
    });
    verdict(8, "harmonic-limit oracle", c.0);
}

#[test]
fn criterion_9_property_suites() {
    let mut c = Checks::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0c1a5);

    // Positivity bound for at-rest releases across the oscillating range,
    // plus simulated minima against the turning-point solver.
    for trial in 0..60 {
        let c_hat = 10f64.powf(rng.random_range(-12.0..=-1.31));
        let cfg = SimConfig64::for_periods(c_hat, std::f64::consts::TAU / 500.0, 2.0);
        let traj = verlet_integrate(&cfg).unwrap();
        let (u_min, u_max) = traj.u_range();
        c.expect(!traj.collapsed, || {
            format!("trial {trial}: unexpected collapse at c_hat = {c_hat:e}")
        });
        c.expect(u_max <= 1e-15, || {
            format!("trial {trial}: max u = {u_max:e} above 1e-15 at c_hat = {c_hat:e}")
        });
        let eps_turn = turning_offset(c_hat).unwrap();
        c.expect((u_min + eps_turn).abs() / eps_turn <= 1e-2, || {
            format!(
                "trial {trial}: simulated depth {:e} vs solver {eps_turn:e} at c_hat = {c_hat:e}",
                -u_min
            )
        });
    }

    // Four-way equivalence of the stability views on random devices.
    let mut stable_seen = 0;
    let mut unstable_seen = 0;
    for _ in 0..1200 {
        let k = 10f64.powf(rng.random_range(-9.0..=1.0));
        let area = 10f64.powf(rng.random_range(-13.0..=-8.0));
        let x0 = 10f64.powf(rng.random_range(-7.0..=-5.0));
        let params = PhysicalParams64::new(k, area, x0, 1.0).unwrap();
        let model = OscillatorModel64::from_physical(params);
        let report = solve_equilibrium(&model);

        let by_threshold = k > critical_stiffness(area, x0);
        let by_root = match report.x_eq_stable {
            Some(x_eq) => x_eq > 0.8 * x0 && stability_criterion(k, area, x_eq).unwrap(),
            None => false,
        };
        let by_curvature = report.v2_at_min.map(|v2| v2 > 0.0).unwrap_or(false);
        let agree = report.stable == by_threshold
            && report.stable == by_root
            && report.stable == by_curvature;
        c.expect(agree, || {
            format!(
                "stability views disagree at k={k:e} A={area:e} x0={x0:e}: report={} threshold={by_threshold} root={by_root} curvature={by_curvature}",
                report.stable
            )
        });
        if report.stable {
            stable_seen += 1;
        } else {
            unstable_seen += 1;
        }
    }
    c.expect(stable_seen > 100 && unstable_seen > 100, || {
        format!("draws did not cover both phases: {stable_seen} stable, {unstable_seen} unstable")
    });

    // Fit recovery inside the model class.
    for _ in 0..25 {
        let amp = 10f64.powf(rng.random_range(-10.0..=-6.0));
        let omega: f64 = rng.random_range(0.5..=2.0);
        let duration = 3.0 * std::f64::consts::TAU / omega;
        let n = 1500usize;
        let dt = duration / n as f64;
        let times: Vec<f64> = (0..=n).map(|i| i as f64 * dt).collect();
        let u: Vec<f64> = times.iter().map(|t| amp * ((omega * t).cos() - 1.0)).collect();
        let v: Vec<f64> = times
            .iter()
            .map(|t| -amp * omega * (omega * t).sin())
            .collect();
        let energy = vec![0.0; times.len()];
        let traj = Trajectory64 {
            times,
            u,
            v,
            energy,
            collapsed: false,
        };
        let fit = fit_sinusoid(&traj).unwrap();
        c.expect(
            (fit.amp - amp).abs() / amp <= 1e-9 && (fit.omega - omega).abs() / omega <= 1e-9,
            || {
                format!(
                    "recovery off at amp={amp:e} omega={omega}: got {:e}, {}",
                    fit.amp, fit.omega
                )
            },
        );
    }

    // Sweep determinism: byte-identical CSV across repeat runs and across
    // serial/parallel execution.
    let mut spec = SweepSpec::new(vec![
        SweepAxis {
            param: AxisParam::K,
            min: 1e-8,
            max: 1e-4,
            count: 11,
            spacing: Spacing::Log,
        },
        SweepAxis {
            param: AxisParam::X0,
            min: 5e-7,
            max: 2e-6,
            count: 5,
            spacing: Spacing::Linear,
        },
    ]);
    spec.fixed_area = Some(1e-10);
    spec.simulate = true;
    let csv_parallel = rows_to_csv(&spec, &run_sweep(&spec).unwrap());
    let csv_again = rows_to_csv(&spec, &run_sweep(&spec).unwrap());
    let csv_serial = rows_to_csv(&spec, &run_sweep_serial(&spec).unwrap());
    c.expect(csv_parallel == csv_again, || "repeat runs differ".into());
    c.expect(csv_parallel == csv_serial, || "serial and parallel differ".into());
    // Stable rows restate the root-location criterion.
    for row in run_sweep(&spec).unwrap() {
        if row.stable {
            c.expect(row.x_eq_stable.unwrap() > 0.8 * row.x0, || {
                format!("stable row with x_eq below 4/5 x0 at k={:e}", row.k)
            });
        }
    }
    verdict(9, "property suites", c.0);
}
