//! Rational motion design: a projective de Casteljau construction in P7
//! whose control and Farin points are read as labeled poses.
//!
//! The height of a pose is its `x0_shift`. Start and end poses lie on the
//! Study quadric, so they carry height 0.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{bad, Error, Result};
use crate::kinematics::{act_x4, kotierte_projection, psh, x0_shift};
use crate::motions::{Trajectory, TrajectorySample};
use crate::optimize::{golden_section, MinimizeOptions, Minimizer};
use crate::quat::{DualQuaternion, Vec4, DEFAULT_TOL};

/// Farin parameters are kept inside this interval by the optimizer.
pub const FARIN_BOUNDS: (f64, f64) = (0.01, 0.99);
/// Search interval for free heights.
pub const HEIGHT_BOUNDS: (f64, f64) = (-1e3, 1e3);

/// Control poses plus one Farin parameter per control-polygon edge.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CsRepr", into = "CsRepr")]
pub struct ControlStructure {
    ctrl: Vec<DualQuaternion>,
    farin: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct CsRepr {
    ctrl: Vec<DualQuaternion>,
    farin: Vec<f64>,
}

impl TryFrom<CsRepr> for ControlStructure {
    type Error = Error;
    fn try_from(r: CsRepr) -> Result<Self> {
        ControlStructure::new(r.ctrl, r.farin, DEFAULT_TOL)
    }
}

impl From<ControlStructure> for CsRepr {
    fn from(c: ControlStructure) -> Self {
        CsRepr {
            ctrl: c.ctrl,
            farin: c.farin,
        }
    }
}

impl ControlStructure {
    pub fn new(ctrl: Vec<DualQuaternion>, farin: Vec<f64>, tol: f64) -> Result<Self> {
        if ctrl.len() < 2 {
            return Err(bad("at least two control poses are required"));
        }
        if farin.len() + 1 != ctrl.len() {
            return Err(bad(format!(
                "expected {} Farin parameters, got {}",
                ctrl.len() - 1,
                farin.len()
            )));
        }
        for (i, f) in farin.iter().enumerate() {
            if !(f.is_finite() && *f > 0.0 && *f < 1.0) {
                return Err(bad(format!(
                    "Farin parameter {i} must lie strictly inside (0, 1), got {f}"
                )));
            }
        }
        for (i, c) in ctrl.iter().enumerate() {
            if !c.in_f() {
                return Err(bad(format!("control pose {i} lies in the generator space")));
            }
        }
        for i in [0, ctrl.len() - 1] {
            let r = ctrl[i]
                .normalize()?
                .study_residual()
                .unwrap_or(f64::INFINITY);
            if r.abs() > tol {
                return Err(Error::OffQuadric(r));
            }
        }
        Ok(ControlStructure { ctrl, farin })
    }

    pub fn ctrl(&self) -> &[DualQuaternion] {
        &self.ctrl
    }

    pub fn farin(&self) -> &[f64] {
        &self.farin
    }

    pub fn degree(&self) -> usize {
        self.ctrl.len() - 1
    }

    /// `w0 = 1`, `w(i+1) = w(i)·f(i)/(1 − f(i))`.
    pub fn weights(&self) -> Vec<f64> {
        let mut w = Vec::with_capacity(self.ctrl.len());
        w.push(1.0);
        for f in &self.farin {
            let last = *w.last().unwrap();
            w.push(last * f / (1.0 - f));
        }
        w
    }

    /// Height label of control pose `i`.
    pub fn control_height(&self, i: usize) -> Result<f64> {
        let c = self
            .ctrl
            .get(i)
            .ok_or_else(|| bad(format!("no control pose {i}")))?;
        x0_shift(*c)
    }

    /// Moves interior control pose `i` vertically to height `h` without
    /// changing its projected SE(3) pose.
    pub fn set_height(&mut self, i: usize, h: f64) -> Result<()> {
        if i == 0 || i + 1 >= self.ctrl.len() {
            return Err(bad(format!("control pose {i} is not interior")));
        }
        if !h.is_finite() {
            return Err(bad("height must be finite"));
        }
        let c = self.ctrl[i];
        let base = psh(c)?;
        let kappa = -0.5 * h;
        self.ctrl[i] = DualQuaternion::new(c.e(), base.t() + c.e() * kappa)?;
        Ok(())
    }

    pub fn set_farin(&mut self, i: usize, f: f64) -> Result<()> {
        if i >= self.farin.len() {
            return Err(bad(format!("no Farin parameter {i}")));
        }
        if !(f.is_finite() && f > 0.0 && f < 1.0) {
            return Err(bad(format!(
                "Farin parameter must lie strictly inside (0, 1), got {f}"
            )));
        }
        self.farin[i] = f;
        Ok(())
    }
}

/// On-disk scene: a control structure plus free-form metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneFile {
    #[serde(flatten)]
    pub cs: ControlStructure,
    #[serde(default)]
    pub meta: Map<String, Value>,
}

fn lerp8(a: &[f64; 8], b: &[f64; 8], t: f64) -> [f64; 8] {
    let mut out = [0.0; 8];
    for k in 0..8 {
        out[k] = (1.0 - t) * a[k] + t * b[k];
    }
    out
}

/// Point of the rational Bezier curve at `t`, scaled to `|E| = 1`.
pub fn decasteljau_eval(cs: &ControlStructure, t: f64) -> Result<DualQuaternion> {
    if !t.is_finite() {
        return Err(bad("curve parameter must be finite"));
    }
    let w = cs.weights();
    let mut pts: Vec<[f64; 8]> = cs
        .ctrl
        .iter()
        .zip(&w)
        .map(|(c, wi)| c.to_array().map(|v| v * wi))
        .collect();
    // endpoints are returned verbatim so that interpolation is exact
    if t == 0.0 {
        return cs.ctrl[0].unit();
    }
    if t == 1.0 {
        return cs.ctrl[cs.ctrl.len() - 1].unit();
    }
    let scale = pts
        .iter()
        .map(|p| p[..4].iter().map(|v| v * v).sum::<f64>().sqrt())
        .fold(0.0, f64::max);
    for r in (1..pts.len()).rev() {
        for k in 0..r {
            pts[k] = lerp8(&pts[k], &pts[k + 1], t);
        }
    }
    let p = pts[0];
    let en = p[..4].iter().map(|v| v * v).sum::<f64>().sqrt();
    if en <= 1e-12 * scale {
        return Err(Error::Puncture(t));
    }
    DualQuaternion::from_array(p)?.unit()
}

/// Farin pose of edge `i` and its height.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FarinPose {
    pub pose: DualQuaternion,
    pub height: f64,
}

/// The Farin point `(1 − f)·c(i) + f·c(i+1)`, which is the weighted mean of
/// the two neighbouring weighted control points.
pub fn farin_pose(cs: &ControlStructure, i: usize) -> Result<FarinPose> {
    let f = *cs
        .farin
        .get(i)
        .ok_or_else(|| bad(format!("no Farin parameter {i}")))?;
    let p = lerp8(&cs.ctrl[i].to_array(), &cs.ctrl[i + 1].to_array(), f);
    let pose = DualQuaternion::from_array(p)?;
    if !pose.in_f() {
        return Err(Error::OnGeneratorSpace);
    }
    Ok(FarinPose {
        pose,
        height: x0_shift(pose)?,
    })
}

/// One sample of the projected motion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub param: f64,
    /// SE(3) pose on the Study quadric, `|E| = 1`.
    pub pose: DualQuaternion,
    pub height: f64,
}

fn uniform_grid(n: usize) -> Vec<f64> {
    (0..n).map(|k| k as f64 / (n - 1) as f64).collect()
}

pub fn motion_curve(cs: &ControlStructure, samples: usize) -> Result<Vec<CurveSample>> {
    if samples < 2 {
        return Err(bad("at least two samples are required"));
    }
    uniform_grid(samples)
        .into_iter()
        .map(|t| {
            let lp = kotierte_projection(decasteljau_eval(cs, t)?)?;
            Ok(CurveSample {
                param: t,
                pose: lp.pose,
                height: lp.height,
            })
        })
        .collect()
}

/// Trajectory of the X4 point `p` under the design motion.
pub fn design_trajectory(cs: &ControlStructure, p: Vec4, samples: usize) -> Result<Trajectory> {
    if samples < 2 {
        return Err(bad("at least two samples are required"));
    }
    let samples = uniform_grid(samples)
        .into_iter()
        .map(|t| {
            Ok(TrajectorySample {
                param: t,
                point: act_x4(decasteljau_eval(cs, t)?, p)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Trajectory {
        samples,
        closure: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DesignObjective {
    /// Number of curve samples for the inner maximum.
    pub grid: usize,
    /// Optimizer stopping tolerance on the objective.
    pub tol: f64,
    /// Refine the grid maximum by golden-section search.
    pub refine: bool,
    pub seed: u64,
}

impl Default for DesignObjective {
    fn default() -> Self {
        DesignObjective {
            grid: 257,
            tol: 1e-10,
            refine: true,
            seed: 0x5eed,
        }
    }
}

impl DesignObjective {
    pub fn validate(&self) -> Result<()> {
        if self.grid < 33 {
            return Err(bad(format!("grid must be at least 33, got {}", self.grid)));
        }
        if !(self.tol.is_finite() && self.tol >= 0.0) {
            return Err(bad("tol must be a non-negative number"));
        }
        Ok(())
    }

    pub fn value(&self, cs: &ControlStructure) -> Result<f64> {
        self.validate()?;
        excursion(cs, self.grid, self.refine)
    }
}

fn excursion(cs: &ControlStructure, grid: usize, refine: bool) -> Result<f64> {
    let ts = uniform_grid(grid);
    let mut best = (0.0_f64, 0usize);
    for (k, &t) in ts.iter().enumerate() {
        let h = x0_shift(decasteljau_eval(cs, t)?)?.abs();
        if h > best.0 {
            best = (h, k);
        }
    }
    if !refine || best.0 == 0.0 {
        return Ok(best.0);
    }
    let k = best.1;
    let lo = ts[k.saturating_sub(1)];
    let hi = ts[(k + 1).min(grid - 1)];
    let mut neg = |t: f64| match decasteljau_eval(cs, t).and_then(x0_shift) {
        Ok(h) => -h.abs(),
        Err(_) => f64::INFINITY,
    };
    let (_, v) = golden_section(&mut neg, lo, hi, 1e-12);
    Ok(best.0.max(-v))
}

/// Largest height magnitude along the curve: grid maximum refined by a
/// golden-section search around the grid argmax.
pub fn max_x0_excursion(cs: &ControlStructure, grid: usize) -> Result<f64> {
    if grid < 2 {
        return Err(bad("grid must have at least two points"));
    }
    excursion(cs, grid, true)
}

/// Which parameters the optimizer may change.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct FreeMask {
    /// Indices into the Farin parameters.
    pub farin: Vec<usize>,
    /// Indices of interior control poses whose height is free.
    pub heights: Vec<usize>,
}

impl FreeMask {
    fn validate(&self, cs: &ControlStructure) -> Result<()> {
        if self.farin.is_empty() && self.heights.is_empty() {
            return Err(bad("no free parameters"));
        }
        for (i, &f) in self.farin.iter().enumerate() {
            if f >= cs.farin.len() {
                return Err(bad(format!("no Farin parameter {f}")));
            }
            if self.farin[..i].contains(&f) {
                return Err(bad(format!("Farin parameter {f} listed twice")));
            }
        }
        for (i, &h) in self.heights.iter().enumerate() {
            if h == 0 || h + 1 >= cs.ctrl.len() {
                return Err(bad(format!("control pose {h} is not interior")));
            }
            if self.heights[..i].contains(&h) {
                return Err(bad(format!("height {h} listed twice")));
            }
        }
        Ok(())
    }

    fn read(&self, cs: &ControlStructure) -> Result<Vec<f64>> {
        let mut x: Vec<f64> = self.farin.iter().map(|&i| cs.farin[i]).collect();
        for &i in &self.heights {
            x.push(cs.control_height(i)?);
        }
        Ok(x)
    }

    fn write(&self, cs: &mut ControlStructure, x: &[f64]) -> Result<()> {
        let (fx, hx) = x.split_at(self.farin.len());
        for (&i, &f) in self.farin.iter().zip(fx) {
            cs.set_farin(i, f)?;
        }
        for (&i, &h) in self.heights.iter().zip(hx) {
            cs.set_height(i, h)?;
        }
        Ok(())
    }

    fn bounds(&self) -> Vec<(f64, f64)> {
        let mut b = vec![FARIN_BOUNDS; self.farin.len()];
        b.extend(std::iter::repeat_n(HEIGHT_BOUNDS, self.heights.len()));
        b
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizeOutcome {
    pub cs: ControlStructure,
    pub before: f64,
    pub after: f64,
    /// Objective after each optimizer cycle; non-increasing.
    pub trace: Vec<f64>,
    pub evaluations: usize,
    pub minimizer: String,
}

/// Minimizes the excursion over the free parameters. The input is
/// returned unchanged unless the minimizer found a strict improvement.
pub fn optimize_heights(
    cs: &ControlStructure,
    mask: &FreeMask,
    obj: &DesignObjective,
    minimizer: &dyn Minimizer,
) -> Result<OptimizeOutcome> {
    obj.validate()?;
    mask.validate(cs)?;
    let before = obj.value(cs)?;
    let x0 = mask.read(cs)?;
    let mut f = |x: &[f64]| {
        let mut trial = cs.clone();
        mask.write(&mut trial, x)
            .and_then(|_| obj.value(&trial))
            .unwrap_or(f64::INFINITY)
    };
    let opts = MinimizeOptions {
        tol: obj.tol,
        seed: obj.seed,
        ..MinimizeOptions::default()
    };
    let r = minimizer.minimize(&mut f, &x0, &mask.bounds(), &opts);
    let (out, after) = if r.value < before {
        let mut c = cs.clone();
        mask.write(&mut c, &r.x)?;
        (c, r.value)
    } else {
        (cs.clone(), before)
    };
    let trace = r.trace.into_iter().map(|v| v.min(before)).collect();
    Ok(OptimizeOutcome {
        cs: out,
        before,
        after,
        trace,
        evaluations: r.evaluations,
        minimizer: minimizer.name().to_string(),
    })
}

fn dq(e: [f64; 4], t: [f64; 4]) -> DualQuaternion {
    DualQuaternion::from_array([e[0], e[1], e[2], e[3], t[0], t[1], t[2], t[3]]).expect("demo pose")
}

/// Quadratic demo: start and end on the quadric, an interior control
/// pose at height −28/9, equal weights.
pub fn demo_quadratic() -> ControlStructure {
    let start = DualQuaternion::IDENTITY;
    // rotation by 90° about z with a translation; e·t = 0 by construction
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let end = dq([s, 0.0, 0.0, s], [-s * 1.5, s * 2.0, -s * 1.0, s * 1.5]);
    let mut cs = ControlStructure::new(
        vec![start, dq([0.9, 0.2, 0.1, 0.4], [0.0, 1.0, 3.0, 0.5]), end],
        vec![0.5, 0.5],
        DEFAULT_TOL,
    )
    .expect("demo scene");
    cs.set_height(1, -28.0 / 9.0).expect("demo height");
    cs
}

/// Pure vertical quadratic motion whose samples at t = 0, ¼, ½, ¾, 1 carry
/// the heights 0, ¾, 1, ¾, 0.
pub fn demo_quarter_heights() -> ControlStructure {
    let mut cs = ControlStructure::new(
        vec![
            DualQuaternion::IDENTITY,
            dq([1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.5, 0.0]),
            dq([1.0, 0.0, 0.0, 0.0], [0.0, 2.0, -1.0, 0.5]),
        ],
        vec![0.5, 0.5],
        DEFAULT_TOL,
    )
    .expect("demo scene");
    cs.set_height(1, 2.0).expect("demo height");
    cs
}
