//! Device description, Casimir force and energy laws, total potential, and
//! the reduction to natural (dimensionless) units.
//!
//! The device is a linear spring of stiffness `k` and free length `x0`
//! holding a moving plate of area `A` and surface mass density `rho_s`
//! parallel to a fixed plate. Per unit area the plate feels the spring
//! restoring pressure and the attractive ideal Casimir pressure
//! `-pi^2 hbar c / (240 x^4)`.
//!
//! All dynamics collapse onto a single dimensionless group
//! `c_hat = c_cas / (b x0^5)` once lengths are measured in `l* = x0` and
//! times in `t* = b^(-1/2)`, with `b = k / (A rho_s)` and
//! `c_cas = pi^2 hbar c / (240 rho_s)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{to_f64_lossy, Real};

/// Reduced Planck constant (J s), CODATA 2018.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Speed of light in vacuum (m/s), exact by SI definition.
pub const C_LIGHT: f64 = 2.997_924_58e8;

/// pi^2 hbar c (J m), the prefactor shared by the plate pressure and
/// energy-per-area laws.
pub const PI_SQ_HBAR_C: f64 = std::f64::consts::PI * std::f64::consts::PI * HBAR * C_LIGHT;

/// Coefficients pinned by the bundled `paper` preset (copper plates,
/// micrometre gap). The preset stores these literal values rather than
/// re-deriving them from `k`, `A` and `rho_s`, so reference runs reproduce
/// the published trajectory exactly; see [`OscillatorModel::paper`].
pub const PAPER_B: f64 = 1.121e14;
/// Casimir coefficient of the `paper` preset (m^5/s^2).
pub const PAPER_C_CAS: f64 = 1.459e-25;
/// Free spring length of the `paper` preset (m).
pub const PAPER_X0: f64 = 1e-6;
/// Spring stiffness of the `paper` preset (N/m).
pub const PAPER_K: f64 = 1.0;
/// Plate area of the `paper` preset (m^2).
pub const PAPER_AREA: f64 = 1e-12;
/// Surface mass density of the `paper` preset (kg/m^2), copper at 1 um
/// thickness.
pub const PAPER_RHO_S: f64 = 8.92e-3;

/// SI description of the device. Immutable value object; construct through
/// [`PhysicalParams::new`] so the positivity invariants hold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalParams<T> {
    /// Spring stiffness (N/m).
    pub k: T,
    /// Moving plate area (m^2).
    pub area: T,
    /// Free spring length, equal to the initial gap (m).
    pub x0: T,
    /// Surface mass density of the moving plate (kg/m^2).
    pub rho_s: T,
}

impl<T: Real> PhysicalParams<T> {
    pub fn new(k: T, area: T, x0: T, rho_s: T) -> Result<Self> {
        check_positive("k", k)?;
        check_positive("area", area)?;
        check_positive("x0", x0)?;
        check_positive("rho_s", rho_s)?;
        Ok(Self { k, area, x0, rho_s })
    }

    /// Build with `rho_s` derived from a volume density and plate thickness.
    pub fn from_volume_density(k: T, area: T, x0: T, rho_volume: T, thickness: T) -> Result<Self> {
        let rho_s = surface_density(rho_volume, thickness)?;
        Self::new(k, area, x0, rho_s)
    }

    /// Non-fatal validity notes. The ideal parallel-plate pressure assumes
    /// the area is much larger than the squared gap; configurations with
    /// `A < 100 x0^2` are flagged but not rejected, because the bundled
    /// reference device itself sits at `A = x0^2`.
    pub fn warnings(&self) -> Vec<String> {
        let mut notes = Vec::new();
        let hundred_x0_sq = T::of(100.0) * self.x0 * self.x0;
        if self.area < hundred_x0_sq {
            notes.push(format!(
                "plate area {:e} m^2 is below 100*x0^2 = {:e} m^2; the ideal parallel-plate \
                 Casimir form assumes A >> x0^2",
                self.area, hundred_x0_sq
            ));
        }
        notes
    }
}

fn check_positive<T: Real>(name: &'static str, value: T) -> Result<()> {
    if value > T::zero() && value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositive {
            name,
            value: to_f64_lossy(value),
        })
    }
}

/// Natural-unit coefficients and scales of a device.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DimensionlessParams<T> {
    /// Spring coefficient `k / (A rho_s)` (1/s^2).
    pub b: T,
    /// Casimir coefficient `pi^2 hbar c / (240 rho_s)` (m^5/s^2).
    pub c_cas: T,
    /// Length scale, the free spring length (m).
    pub l_star: T,
    /// Time scale `b^(-1/2)` (s).
    pub t_star: T,
    /// The single group governing the dimensionless dynamics,
    /// `c_cas / (b x0^5)`.
    pub c_hat: T,
}

/// Surface mass density from a volume density and thickness.
pub fn surface_density<T: Real>(rho_volume: T, thickness: T) -> Result<T> {
    check_positive("rho_volume", rho_volume)?;
    check_positive("thickness", thickness)?;
    Ok(rho_volume * thickness)
}

/// Ideal Casimir pressure between parallel plates at gap `x` (Pa, signed;
/// negative means attractive).
pub fn casimir_pressure<T: Real>(x: T) -> Result<T> {
    check_separation(x)?;
    let x4 = x * x * x * x;
    Ok(-T::of(PI_SQ_HBAR_C) / (T::of(240.0) * x4))
}

/// Casimir energy per unit plate area at gap `x` (J/m^2). Its negative
/// gradient is [`casimir_pressure`]; evaluated at `x0` it is the total
/// energy of a release from rest.
pub fn casimir_energy_per_area<T: Real>(x: T) -> Result<T> {
    check_separation(x)?;
    let x3 = x * x * x;
    Ok(-T::of(PI_SQ_HBAR_C) / (T::of(720.0) * x3))
}

/// Total potential energy per unit area: spring plus Casimir (J/m^2).
pub fn total_potential<T: Real>(x: T, p: &PhysicalParams<T>) -> Result<T> {
    check_separation(x)?;
    let d = x - p.x0;
    let spring = p.k / (T::of(2.0) * p.area) * d * d;
    Ok(spring + casimir_energy_per_area(x)?)
}

fn check_separation<T: Real>(x: T) -> Result<()> {
    if x > T::zero() && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Singularity { x: to_f64_lossy(x) })
    }
}

/// Reduce a device to natural units.
pub fn nondimensionalize<T: Real>(p: &PhysicalParams<T>) -> DimensionlessParams<T> {
    let b = p.k / (p.area * p.rho_s);
    let c_cas = T::of(PI_SQ_HBAR_C) / (T::of(240.0) * p.rho_s);
    let l_star = p.x0;
    let t_star = b.sqrt().recip();
    let c_hat = c_cas / (b * p.x0.powi(5));
    DimensionlessParams {
        b,
        c_cas,
        l_star,
        t_star,
        c_hat,
    }
}

/// A resolved parameter set: the SI description together with its
/// natural-unit reduction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OscillatorModel<T> {
    pub physical: PhysicalParams<T>,
    pub dimensionless: DimensionlessParams<T>,
}

impl<T: Real> OscillatorModel<T> {
    /// Derive the natural-unit coefficients from the SI description.
    pub fn from_physical(physical: PhysicalParams<T>) -> Self {
        let dimensionless = nondimensionalize(&physical);
        Self {
            physical,
            dimensionless,
        }
    }

    /// The bundled reference device. Pins the literal published coefficients
    /// `b = 1.121e14 1/s^2` and `c = 1.459e-25 m^5/s^2` instead of deriving
    /// them from the physical inputs, because the quoted `b` is only
    /// consistent with `A = x0^2` while the accompanying text asks for
    /// `A >= 100 x0^2`. Pinning isolates that ambiguity here; the derivation
    /// path from `k`, `A`, `rho_s` stays available through
    /// [`OscillatorModel::from_physical`] and reproduces both coefficients to
    /// within 0.2%.
    pub fn paper() -> Self {
        let physical = PhysicalParams::new(
            T::of(PAPER_K),
            T::of(PAPER_AREA),
            T::of(PAPER_X0),
            T::of(PAPER_RHO_S),
        )
        .expect("preset parameters are positive");
        let b = T::of(PAPER_B);
        let c_cas = T::of(PAPER_C_CAS);
        let l_star = T::of(PAPER_X0);
        let dimensionless = DimensionlessParams {
            b,
            c_cas,
            l_star,
            t_star: b.sqrt().recip(),
            c_hat: c_cas / (b * l_star.powi(5)),
        };
        Self {
            physical,
            dimensionless,
        }
    }

    /// Look up a named preset. Currently only `"paper"` exists.
    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "paper" => Some(Self::paper()),
            _ => None,
        }
    }
}
