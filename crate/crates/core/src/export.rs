//! CSV and JSON export of trajectories and sampled motions.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::design::CurveSample;
use crate::error::{bad, Result};
use crate::motions::{Trajectory, TrajectorySample};
use crate::quat::Quaternion;

pub const CSV_HEADER: &str = "s,x0,x1,x2,x3";

/// One row per sample. Numbers use the shortest decimal that parses back
/// to the same `f64`.
pub fn trajectory_csv(traj: &Trajectory) -> String {
    let mut out = String::with_capacity(32 * (traj.samples.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for s in &traj.samples {
        let p = s.point;
        let _ = writeln!(out, "{},{},{},{},{}", s.param, p[0], p[1], p[2], p[3]);
    }
    out
}

pub fn parse_trajectory_csv(text: &str) -> Result<Trajectory> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == CSV_HEADER => {}
        _ => return Err(bad(format!("expected header `{CSV_HEADER}`"))),
    }
    let mut samples = Vec::new();
    for (n, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let v: Vec<f64> = line
            .split(',')
            .map(|c| c.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| bad(format!("row {}: {e}", n + 1)))?;
        if v.len() != 5 {
            return Err(bad(format!(
                "row {}: expected 5 columns, got {}",
                n + 1,
                v.len()
            )));
        }
        samples.push(TrajectorySample {
            param: v[0],
            point: [v[1], v[2], v[3], v[4]],
        });
    }
    Ok(Trajectory {
        samples,
        closure: None,
    })
}

/// JSON record of one sampled pose. The parameter is stored under
/// `param` because `t` already names the translation part.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoseRecord {
    pub param: f64,
    pub e: Quaternion,
    pub t: Quaternion,
    pub height: f64,
}

pub fn pose_records(curve: &[CurveSample]) -> Vec<PoseRecord> {
    curve
        .iter()
        .map(|s| PoseRecord {
            param: s.param,
            e: s.pose.e(),
            t: s.pose.t(),
            height: s.height,
        })
        .collect()
}
