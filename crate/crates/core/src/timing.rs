//! Per-move traversal times under a uniform wind aligned with the X axis.
//!
//! Ground speed along a track at angle `theta` to the wind is
//! `v_w cos(theta) + sqrt(v_a^2 - v_w^2 sin^2(theta))`. Orthogonal moves cover
//! one cell pitch, diagonal moves `sqrt(2)` pitches.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::Move;

/// Airspeed, wind speed and cell pitch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindKinematics {
    /// Airspeed in m/s.
    pub airspeed: f64,
    /// Wind speed in m/s, blowing along +X.
    pub wind_speed: f64,
    /// Center-to-center cell distance in m.
    pub cell_pitch: f64,
}

impl WindKinematics {
    pub fn new(airspeed: f64, wind_speed: f64, cell_pitch: f64) -> Result<Self> {
        let k = Self { airspeed, wind_speed, cell_pitch };
        k.validate()?;
        Ok(k)
    }

    fn validate(&self) -> Result<()> {
        let Self { airspeed, wind_speed, cell_pitch } = *self;
        if ![airspeed, wind_speed, cell_pitch].iter().all(|v| v.is_finite()) {
            return Err(Error::Domain("kinematic parameters must be finite".into()));
        }
        if cell_pitch <= 0.0 {
            return Err(Error::Domain(format!("cell pitch must be positive, got {cell_pitch}")));
        }
        if wind_speed < 0.0 {
            return Err(Error::Domain(format!("wind speed must be non-negative, got {wind_speed}")));
        }
        if wind_speed >= airspeed {
            return Err(Error::Infeasible(format!(
                "UAV cannot make headway: wind speed {wind_speed} >= airspeed {airspeed}"
            )));
        }
        Ok(())
    }

    /// Wind speed as a fraction of airspeed, in `[0, 1)`.
    pub fn wind_ratio(&self) -> f64 {
        self.wind_speed / self.airspeed
    }

    /// Ground speed along a track at `theta` radians from the wind direction.
    pub fn ground_speed(&self, theta: f64) -> f64 {
        let (s, c) = theta.sin_cos();
        let cross = self.wind_speed * s;
        self.wind_speed * c + (self.airspeed * self.airspeed - cross * cross).sqrt()
    }
}

/// Traversal time of each move class, in seconds.
///
/// Diagonal times are only known when the times were derived from kinematics;
/// explicit overrides carry the three orthogonal classes only.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MoveTimes {
    /// `Ts`, one cell with the wind.
    pub downwind: f64,
    /// `Tp`, one cell perpendicular to the wind.
    pub crosswind: f64,
    /// `To`, one cell against the wind.
    pub upwind: f64,
    /// `Tf`, one diagonal cell with a downwind component.
    pub diag_downwind: Option<f64>,
    /// `Tb`, one diagonal cell with an upwind component.
    pub diag_upwind: Option<f64>,
}

impl MoveTimes {
    /// Explicit orthogonal move times, e.g. the rounded `(4, 5.16, 6.66)`.
    ///
    /// Requires positive times with `Ts <= Tp <= To` and `Ts + To >= 2 Tp`,
    /// the conditions under which the path-time lower bound is valid.
    pub fn new(downwind: f64, crosswind: f64, upwind: f64) -> Result<Self> {
        let t = Self { downwind, crosswind, upwind, diag_downwind: None, diag_upwind: None };
        if ![downwind, crosswind, upwind].iter().all(|v| v.is_finite() && *v > 0.0) {
            return Err(Error::Domain(format!(
                "move times must be positive and finite, got ({downwind}, {crosswind}, {upwind})"
            )));
        }
        if !(downwind <= crosswind && crosswind <= upwind) {
            return Err(Error::Domain(format!(
                "move times must satisfy Ts <= Tp <= To, got ({downwind}, {crosswind}, {upwind})"
            )));
        }
        let slack = 1e-12 * upwind;
        if downwind + upwind + slack < 2.0 * crosswind {
            return Err(Error::Domain(format!(
                "move times must satisfy Ts + To >= 2 Tp, got ({downwind}, {crosswind}, {upwind})"
            )));
        }
        Ok(t)
    }

    /// Time for one orthogonal move.
    pub fn of(&self, mv: Move) -> f64 {
        match mv {
            Move::Downwind => self.downwind,
            Move::Upwind => self.upwind,
            Move::Up | Move::Down => self.crosswind,
        }
    }

    /// Evaluates a move-count triple `(downwind, crosswind, upwind)`.
    pub fn eval(&self, downwind: u64, crosswind: u64, upwind: u64) -> f64 {
        downwind as f64 * self.downwind + crosswind as f64 * self.crosswind + upwind as f64 * self.upwind
    }

    /// Whether the strict chain `Ts < Tf < Tp < Tb < To` holds.
    ///
    /// `None` when diagonal times are unknown. With diagonals spanning
    /// `sqrt(2)` pitches, `Tb > To` for every wind ratio in `[0, 1)`, so this
    /// is false for all kinematics-derived times.
    pub fn moore_ordering_holds(&self) -> Option<bool> {
        let (f, b) = (self.diag_downwind?, self.diag_upwind?);
        Some(self.downwind < f && f < self.crosswind && self.crosswind < b && b < self.upwind)
    }

    /// `Ts + Tb - 2 Tp`, positive whenever a diagonal upwind detour cannot beat
    /// two crosswind moves.
    pub fn diagonal_detour_margin(&self) -> Option<f64> {
        Some(self.downwind + self.diag_upwind? - 2.0 * self.crosswind)
    }
}

/// Traversal times for all five move classes.
pub fn move_times(k: &WindKinematics) -> Result<MoveTimes> {
    k.validate()?;
    let d = k.cell_pitch;
    let diag = SQRT_2 * d;
    Ok(MoveTimes {
        downwind: d / k.ground_speed(0.0),
        crosswind: d / k.ground_speed(FRAC_PI_2),
        upwind: d / k.ground_speed(PI),
        diag_downwind: Some(diag / k.ground_speed(FRAC_PI_4)),
        diag_upwind: Some(diag / k.ground_speed(3.0 * FRAC_PI_4)),
    })
}

/// Backward-diagonal time from the triangle construction: the angle between
/// air and ground velocity comes from the law of sines, the ground speed from
/// the law of cosines. Independent of [`move_times`], used to cross-check it.
pub fn tb_law_of_sines(k: &WindKinematics) -> Result<f64> {
    k.validate()?;
    let (va, vw, d) = (k.airspeed, k.wind_speed, k.cell_pitch);
    if vw == 0.0 {
        return Ok(SQRT_2 * d / va);
    }
    let alpha = (SQRT_2 * vw / (2.0 * va)).asin();
    let beta = FRAC_PI_4 - alpha;
    let vg = (va * va + vw * vw - 2.0 * va * vw * beta.cos()).sqrt();
    Ok(SQRT_2 * d / vg)
}

/// `(Ts + Tb - 2 Tp) * v_a / D` as a function of the wind ratio `gamma`.
pub fn g_of_gamma(gamma: f64) -> Result<f64> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::Domain(format!("gamma must lie in (0, 1), got {gamma}")));
    }
    let beta = FRAC_PI_4 - (SQRT_2 * gamma / 2.0).asin();
    let diag = SQRT_2 / (1.0 + gamma * gamma - 2.0 * gamma * beta.cos()).sqrt();
    Ok(1.0 / (1.0 + gamma) + diag - 2.0 / (1.0 - gamma * gamma).sqrt())
}
