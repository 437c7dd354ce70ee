//! JSON documents for instances and plans.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{CellCoord, GridSpec, Move, Neighborhood};
use crate::nopp::{GapClass, Plan};
use crate::path::UavPath;
use crate::timing::{move_times, MoveTimes, WindKinematics};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceDoc {
    pub n: u32,
    pub m: u32,
    pub q: u32,
    #[serde(default)]
    pub neighborhood: Neighborhood,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub airspeed: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wind_speed: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cell_size: Option<f64>,
    /// `[Ts, Tp, To]`; takes precedence over the physical parameters.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub move_times: Option<[f64; 3]>,
}

impl InstanceDoc {
    pub fn grid(&self) -> Result<GridSpec> {
        GridSpec::new(self.n, self.m, self.q, self.neighborhood, self.cell_size.unwrap_or(1.0))
    }

    pub fn times(&self) -> Result<MoveTimes> {
        if let Some([ts, tp, to]) = self.move_times {
            return MoveTimes::new(ts, tp, to);
        }
        match (self.airspeed, self.wind_speed, self.cell_size) {
            (Some(va), Some(vw), Some(d)) => move_times(&WindKinematics::new(va, vw, d)?),
            _ => Err(Error::Domain(
                "instance needs move_times or all of airspeed, wind_speed and cell_size".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathDoc {
    pub uav: u32,
    pub cells: Vec<CellCoord>,
    pub moves: Vec<Move>,
    pub mission_time: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanDoc {
    pub instance: InstanceDoc,
    pub move_times: [f64; 3],
    pub paths: Vec<PathDoc>,
    pub operation_time: f64,
    pub lb: f64,
    pub gap: GapClass,
}

impl PlanDoc {
    pub fn new(instance: InstanceDoc, t: &MoveTimes, plan: &Plan) -> Self {
        let paths = plan
            .paths
            .iter()
            .zip(&plan.mission_times)
            .enumerate()
            .map(|(i, (p, &mt))| PathDoc {
                uav: i as u32 + 1,
                cells: p.cells.clone(),
                moves: p.moves.clone(),
                mission_time: mt,
            })
            .collect();
        Self {
            instance,
            move_times: [t.downwind, t.crosswind, t.upwind],
            paths,
            operation_time: plan.operation_time,
            lb: plan.lb,
            gap: plan.gap_class,
        }
    }

    pub fn times(&self) -> Result<MoveTimes> {
        let [ts, tp, to] = self.move_times;
        MoveTimes::new(ts, tp, to)
    }

    /// Paths as stored, ordered by UAV number.
    pub fn uav_paths(&self) -> Vec<UavPath> {
        let mut docs: Vec<&PathDoc> = self.paths.iter().collect();
        docs.sort_by_key(|p| p.uav);
        docs.into_iter().map(|p| UavPath { cells: p.cells.clone(), moves: p.moves.clone() }).collect()
    }
}
