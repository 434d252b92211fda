//! Request and response types shared by the CLI and the HTTP service.
//!
//! Both front ends deserialize the same request bodies, call the same
//! functions here and serialize with [`to_json`], so identical requests
//! produce byte-identical payloads.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use studykin_core::circularity::{circularity_tests, CircleVerdict};
use studykin_core::complexes::{
    complex_axis, complex_condition, complex_contains, is_orthogonal_x4, relative_motion,
    sample_complex_members, DisplacementComplex,
};
use studykin_core::design::{
    design_trajectory, farin_pose, max_x0_excursion, motion_curve, optimize_heights,
    ControlStructure, CurveSample, DesignObjective, FarinPose, FreeMask, OptimizeOutcome,
    SceneFile,
};
use studykin_core::export::{pose_records, trajectory_csv, PoseRecord};
use studykin_core::kinematics::{act_se3, act_x4, kotierte_projection, psh, LabeledPose};
use studykin_core::motions::{
    classify_line, karger_trajectory, sample_trajectory, MotionClass, P7Line, Trajectory,
};
use studykin_core::optimize::{minimizers, DEFAULT_MINIMIZER};
use studykin_core::{DualQuaternion, Error, ErrorCode, Vec4, DEFAULT_TOL};

/// Error payload `{code, message}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApiError {
    pub code: ErrorCode,
    pub message: String,
}

impl ApiError {
    pub fn new(code: ErrorCode, message: impl Into<String>) -> Self {
        ApiError {
            code,
            message: message.into(),
        }
    }

    pub fn bad_input(message: impl Into<String>) -> Self {
        Self::new(ErrorCode::BadInput, message)
    }

    pub fn not_found(message: impl Into<String>) -> Self {
        Self::new(ErrorCode::NotFound, message)
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        ApiError::new(e.code(), e.to_string())
    }
}

impl std::fmt::Display for ApiError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.code.as_str(), self.message)
    }
}

impl std::error::Error for ApiError {}

pub type ApiResult<T> = Result<T, ApiError>;

/// Canonical serialization used by every front end.
pub fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("response types always serialize")
}

pub fn parse<T: for<'de> Deserialize<'de>>(body: &[u8]) -> ApiResult<T> {
    serde_json::from_slice(body)
        .map_err(|e| ApiError::bad_input(format!("invalid request body: {e}")))
}

fn tol_or_default(tol: Option<f64>) -> ApiResult<f64> {
    match tol {
        None => Ok(DEFAULT_TOL),
        Some(t) if t.is_finite() && t >= 0.0 => Ok(t),
        Some(t) => Err(ApiError::bad_input(format!(
            "tol must be a non-negative number, got {t}"
        ))),
    }
}

// ---------------------------------------------------------------- quatcore

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DqRequest {
    pub dq: DualQuaternion,
    #[serde(default)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DqResponse {
    pub dq: DualQuaternion,
}

/// PSH image, projectively normalized.
pub fn psh_op(req: &DqRequest) -> ApiResult<DqResponse> {
    Ok(DqResponse {
        dq: psh(req.dq)?.normalize()?,
    })
}

pub fn project_op(req: &DqRequest) -> ApiResult<LabeledPose> {
    Ok(kotierte_projection(req.dq)?)
}

/// Points with three coordinates are acted on as E3 points (the pose must
/// lie on the quadric), points with four as E4 points.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ActRequest {
    pub dq: DualQuaternion,
    pub points: Vec<Vec<f64>>,
    #[serde(default)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointsResponse {
    pub points: Vec<Vec<f64>>,
}

pub fn act_op(req: &ActRequest) -> ApiResult<PointsResponse> {
    let tol = tol_or_default(req.tol)?;
    if !req.dq.in_f() {
        return Err(Error::OnGeneratorSpace.into());
    }
    let points = req
        .points
        .iter()
        .map(|p| match p.len() {
            3 => Ok(act_se3(req.dq, [p[0], p[1], p[2]], tol)?.to_vec()),
            4 => Ok(act_x4(req.dq, [p[0], p[1], p[2], p[3]])?.to_vec()),
            n => Err(ApiError::bad_input(format!(
                "points need 3 or 4 coordinates, got {n}"
            ))),
        })
        .collect::<ApiResult<Vec<_>>>()?;
    Ok(PointsResponse { points })
}

// ---------------------------------------------------------------- motions

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassifyRequest {
    pub a: DualQuaternion,
    pub b: DualQuaternion,
    #[serde(default)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassifyResponse {
    pub summary: String,
    pub class: MotionClass,
}

pub fn classify_op(req: &ClassifyRequest) -> ApiResult<ClassifyResponse> {
    let tol = tol_or_default(req.tol)?;
    let line = P7Line::new(req.a, req.b)?;
    let class = classify_line(&line, tol)?;
    Ok(ClassifyResponse {
        summary: class.summary(),
        class,
    })
}

fn default_beta() -> f64 {
    1.0
}
fn default_gamma() -> f64 {
    2.0
}
fn default_samples() -> usize {
    33
}
fn default_circle_test() -> String {
    "metric".into()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DarbouxRequest {
    #[serde(default = "default_beta")]
    pub beta: f64,
    #[serde(default = "default_gamma")]
    pub gamma: f64,
    #[serde(default)]
    pub nu: f64,
    /// Traced point; the origin by default.
    #[serde(default)]
    pub point: Vec4,
    /// Number of angles spread uniformly over (−π, π).
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default = "default_circle_test")]
    pub circle_test: String,
    #[serde(default)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CircularityReport {
    pub circular: bool,
    pub verdict: CircleVerdict,
    pub circle_test: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrajectoryResponse {
    pub trajectory: Trajectory,
    pub circularity: CircularityReport,
}

fn certify(traj: &Trajectory, name: &str, tol: f64) -> ApiResult<CircularityReport> {
    let reg = circularity_tests();
    let test = reg.get(name).ok_or_else(|| {
        ApiError::bad_input(format!(
            "unknown circle test {name:?}; available: {:?}",
            reg.names()
        ))
    })?;
    let verdict = test.certify(traj, tol)?;
    Ok(CircularityReport {
        circular: verdict.is_circle(),
        verdict,
        circle_test: name.to_string(),
    })
}

pub fn darboux_op(req: &DarbouxRequest) -> ApiResult<TrajectoryResponse> {
    let tol = tol_or_default(req.tol)?;
    if req.samples < 5 {
        return Err(ApiError::bad_input("at least 5 samples are required"));
    }
    let n = req.samples as f64;
    let pi = std::f64::consts::PI;
    let taus: Vec<f64> = (0..req.samples)
        .map(|k| -pi + 2.0 * pi * (k as f64 + 0.5) / n)
        .collect();
    let trajectory = karger_trajectory(req.beta, req.gamma, req.nu, req.point, &taus)?;
    let circularity = certify(&trajectory, &req.circle_test, tol)?;
    Ok(TrajectoryResponse {
        trajectory,
        circularity,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LineTrajectoryRequest {
    pub a: DualQuaternion,
    pub b: DualQuaternion,
    #[serde(default)]
    pub point: Vec4,
    /// Line parameters at which to sample.
    pub params: Vec<f64>,
    #[serde(default = "default_circle_test")]
    pub circle_test: String,
    #[serde(default)]
    pub tol: Option<f64>,
}

pub fn line_trajectory_op(req: &LineTrajectoryRequest) -> ApiResult<TrajectoryResponse> {
    let tol = tol_or_default(req.tol)?;
    let line = P7Line::new(req.a, req.b)?;
    let trajectory = sample_trajectory(&line, req.point, &req.params)?;
    let circularity = certify(&trajectory, &req.circle_test, tol)?;
    Ok(TrajectoryResponse {
        trajectory,
        circularity,
    })
}

// ---------------------------------------------------------------- complexes

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ContainsRequest {
    pub pole: DualQuaternion,
    pub m: DualQuaternion,
    #[serde(default)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ContainsResponse {
    pub contains: bool,
    pub condition: f64,
}

pub fn complex_contains_op(req: &ContainsRequest) -> ApiResult<ContainsResponse> {
    let tol = tol_or_default(req.tol)?;
    let cx = DisplacementComplex::new(req.pole)?;
    Ok(ContainsResponse {
        contains: complex_contains(&cx, req.m, tol)?,
        condition: complex_condition(req.pole, req.m)?,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PoleRequest {
    pub pole: DualQuaternion,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AxisResponse {
    pub axis: DualQuaternion,
}

pub fn complex_axis_op(req: &PoleRequest) -> ApiResult<AxisResponse> {
    let cx = DisplacementComplex::new(req.pole)?;
    Ok(AxisResponse {
        axis: complex_axis(&cx)?,
    })
}

pub const DEFAULT_SEED: u64 = 0x5eed;

fn default_seed() -> u64 {
    DEFAULT_SEED
}
fn default_members() -> usize {
    10
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MembersRequest {
    pub pole: DualQuaternion,
    #[serde(default = "default_members")]
    pub n: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MembersResponse {
    pub members: Vec<DualQuaternion>,
}

pub const MAX_MEMBERS: usize = 100_000;

pub fn complex_members_op(req: &MembersRequest) -> ApiResult<MembersResponse> {
    if req.n > MAX_MEMBERS {
        return Err(ApiError::bad_input(format!(
            "n must not exceed {MAX_MEMBERS}"
        )));
    }
    let cx = DisplacementComplex::new(req.pole)?;
    Ok(MembersResponse {
        members: sample_complex_members(&cx, req.n, req.seed)?,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelativeResponse {
    pub relative: DualQuaternion,
    pub orthogonal: bool,
}

pub fn complex_relative_op(req: &ContainsRequest) -> ApiResult<RelativeResponse> {
    let tol = tol_or_default(req.tol)?;
    let relative = relative_motion(req.pole, req.m, tol)?;
    Ok(RelativeResponse {
        orthogonal: is_orthogonal_x4(relative, tol)?,
        relative,
    })
}

// ---------------------------------------------------------------- design

/// Scene body as sent by clients; validated into a [`SceneFile`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SceneBody {
    pub ctrl: Vec<DualQuaternion>,
    pub farin: Vec<f64>,
    #[serde(default)]
    pub meta: Map<String, Value>,
}

impl SceneBody {
    pub fn validate(self, tol: f64) -> ApiResult<SceneFile> {
        Ok(SceneFile {
            cs: ControlStructure::new(self.ctrl, self.farin, tol)?,
            meta: self.meta,
        })
    }
}

impl From<SceneFile> for SceneBody {
    fn from(s: SceneFile) -> Self {
        SceneBody {
            ctrl: s.cs.ctrl().to_vec(),
            farin: s.cs.farin().to_vec(),
            meta: s.meta,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvaluateRequest {
    #[serde(default = "default_samples")]
    pub samples: usize,
}

impl Default for EvaluateRequest {
    fn default() -> Self {
        EvaluateRequest {
            samples: default_samples(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvaluateResponse {
    pub curve: Vec<CurveSample>,
    pub control_heights: Vec<f64>,
    pub farin_poses: Vec<FarinPose>,
}

pub const MAX_SAMPLES: usize = 1_000_000;

pub fn evaluate_op(cs: &ControlStructure, req: &EvaluateRequest) -> ApiResult<EvaluateResponse> {
    if req.samples > MAX_SAMPLES {
        return Err(ApiError::bad_input(format!(
            "samples must not exceed {MAX_SAMPLES}"
        )));
    }
    Ok(EvaluateResponse {
        curve: motion_curve(cs, req.samples)?,
        control_heights: (0..cs.ctrl().len())
            .map(|i| cs.control_height(i))
            .collect::<Result<_, _>>()?,
        farin_poses: (0..cs.farin().len())
            .map(|i| farin_pose(cs, i))
            .collect::<Result<_, _>>()?,
    })
}

fn default_grid() -> usize {
    257
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExcursionRequest {
    #[serde(default = "default_grid")]
    pub grid: usize,
}

impl Default for ExcursionRequest {
    fn default() -> Self {
        ExcursionRequest {
            grid: default_grid(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExcursionResponse {
    pub excursion: f64,
}

pub fn excursion_op(cs: &ControlStructure, req: &ExcursionRequest) -> ApiResult<ExcursionResponse> {
    if req.grid > MAX_SAMPLES {
        return Err(ApiError::bad_input(format!(
            "grid must not exceed {MAX_SAMPLES}"
        )));
    }
    Ok(ExcursionResponse {
        excursion: max_x0_excursion(cs, req.grid)?,
    })
}

fn default_optimizer() -> String {
    DEFAULT_MINIMIZER.into()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OptimizeRequest {
    pub mask: FreeMask,
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub grid: Option<usize>,
    #[serde(default)]
    pub refine: Option<bool>,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_optimizer")]
    pub optimizer: String,
    /// Store the improved scene (HTTP only).
    #[serde(default)]
    pub persist: bool,
}

pub fn optimize_op(cs: &ControlStructure, req: &OptimizeRequest) -> ApiResult<OptimizeOutcome> {
    let defaults = DesignObjective::default();
    let obj = DesignObjective {
        grid: req.grid.unwrap_or(defaults.grid),
        tol: req.tol.unwrap_or(defaults.tol),
        refine: req.refine.unwrap_or(defaults.refine),
        seed: req.seed,
    };
    if obj.grid > MAX_SAMPLES {
        return Err(ApiError::bad_input(format!(
            "grid must not exceed {MAX_SAMPLES}"
        )));
    }
    let reg = minimizers();
    let m = reg.get(&req.optimizer).ok_or_else(|| {
        ApiError::bad_input(format!(
            "unknown optimizer {:?}; available: {:?}",
            req.optimizer,
            reg.names()
        ))
    })?;
    Ok(optimize_heights(cs, &req.mask, &obj, m)?)
}

// ---------------------------------------------------------------- export

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExportFormat {
    Csv,
    Json,
}

/// CSV: trajectory of `point` under the design motion. JSON: labeled poses.
pub fn export_scene(
    cs: &ControlStructure,
    samples: usize,
    point: Vec4,
    format: ExportFormat,
) -> ApiResult<String> {
    if samples > MAX_SAMPLES {
        return Err(ApiError::bad_input(format!(
            "samples must not exceed {MAX_SAMPLES}"
        )));
    }
    match format {
        ExportFormat::Csv => Ok(trajectory_csv(&design_trajectory(cs, point, samples)?)),
        ExportFormat::Json => {
            let recs: Vec<PoseRecord> = pose_records(&motion_curve(cs, samples)?);
            Ok(to_json(&recs))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use studykin_core::design::demo_quadratic;
    use studykin_core::Quaternion;

    fn dq(v: [f64; 8]) -> DualQuaternion {
        DualQuaternion::from_array(v).unwrap()
    }

    #[test]
    fn psh_echoes_on_quadric_pose() {
        let x = dq([1.0, 0.0, 0.0, 0.0, 0.0, 0.5, 0.0, 0.0]);
        let out = psh_op(&DqRequest { dq: x, tol: None }).unwrap();
        assert_eq!(out.dq, x);
    }

    #[test]
    fn act_on_generator_space_is_rejected() {
        let g = dq([0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
        let err = act_op(&ActRequest {
            dq: g,
            points: vec![vec![1.0, 2.0, 3.0]],
            tol: None,
        })
        .unwrap_err();
        assert_eq!(err.code, ErrorCode::OnGeneratorSpace);
    }

    #[test]
    fn act_dispatches_on_dimension() {
        let x = dq([1.0, 0.0, 0.0, 0.0, 0.5, 0.0, 0.0, 0.0]);
        let out = act_op(&ActRequest {
            dq: x,
            points: vec![vec![0.0, 0.0, 0.0, 0.0]],
            tol: None,
        })
        .unwrap();
        assert_eq!(out.points, vec![vec![-1.0, 0.0, 0.0, 0.0]]);
        let err = act_op(&ActRequest {
            dq: x,
            points: vec![vec![0.0, 0.0, 0.0]],
            tol: None,
        })
        .unwrap_err();
        assert_eq!(err.code, ErrorCode::OffQuadric);
        assert!(act_op(&ActRequest {
            dq: x,
            points: vec![vec![0.0; 2]],
            tol: None
        })
        .is_err());
    }

    #[test]
    fn classify_summary() {
        let a = DualQuaternion::IDENTITY;
        let b = DualQuaternion::new(Quaternion::I, Quaternion::new(-0.5, 0.0, 0.0, 0.0)).unwrap();
        let out = classify_op(&ClassifyRequest { a, b, tol: None }).unwrap();
        assert_eq!(out.summary, "circular-darboux c=0.5 rho=0");
        let err = classify_op(&ClassifyRequest { a, b: a, tol: None }).unwrap_err();
        assert_eq!(err.code, ErrorCode::BadInput);
    }

    #[test]
    fn darboux_circle_tests_agree() {
        for nu in [0.0, 0.1, 0.5, 1.0] {
            let verdicts: Vec<bool> = ["metric", "absolute-sphere"]
                .into_iter()
                .map(|name| {
                    let req = DarbouxRequest {
                        beta: 1.0,
                        gamma: 2.0,
                        nu,
                        point: [0.0; 4],
                        samples: 9,
                        circle_test: name.into(),
                        tol: Some(1e-8),
                    };
                    darboux_op(&req).unwrap().circularity.circular
                })
                .collect();
            assert_eq!(verdicts, [false, false], "nu = {nu}");
        }
        let req = DarbouxRequest {
            beta: 1.0,
            gamma: 2.0,
            nu: 0.0,
            point: [0.0; 4],
            samples: 9,
            circle_test: "nope".into(),
            tol: None,
        };
        assert_eq!(darboux_op(&req).unwrap_err().code, ErrorCode::BadInput);
    }

    #[test]
    fn members_are_deterministic_and_contained() {
        let pole = dq([1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
        let req = MembersRequest {
            pole,
            n: 5,
            seed: 3,
        };
        let a = complex_members_op(&req).unwrap();
        assert_eq!(to_json(&a), to_json(&complex_members_op(&req).unwrap()));
        for m in a.members {
            let c = complex_contains_op(&ContainsRequest { pole, m, tol: None }).unwrap();
            assert!(c.contains);
            let r = complex_relative_op(&ContainsRequest { pole, m, tol: None }).unwrap();
            assert!(r.orthogonal);
        }
    }

    #[test]
    fn scene_body_validation_codes() {
        let scene: SceneBody = demo_quadratic_body();
        let mut bad = scene.clone();
        bad.farin[0] = 1.0;
        assert_eq!(
            bad.validate(DEFAULT_TOL).unwrap_err().code,
            ErrorCode::BadInput
        );
        let mut off = scene.clone();
        off.ctrl[0] = dq([1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
        assert_eq!(
            off.validate(DEFAULT_TOL).unwrap_err().code,
            ErrorCode::OffQuadric
        );
        assert!(scene.validate(DEFAULT_TOL).is_ok());
    }

    fn demo_quadratic_body() -> SceneBody {
        SceneFile {
            cs: demo_quadratic(),
            meta: Map::new(),
        }
        .into()
    }

    #[test]
    fn optimizer_names() {
        let cs = demo_quadratic();
        let mut req = OptimizeRequest {
            mask: FreeMask {
                farin: vec![],
                heights: vec![1],
            },
            tol: None,
            grid: Some(33),
            refine: None,
            seed: 1,
            optimizer: "compass".into(),
            persist: false,
        };
        let out = optimize_op(&cs, &req).unwrap();
        assert!(out.after < out.before);
        assert_eq!(out.minimizer, "compass");
        req.optimizer = "simplex".into();
        assert_eq!(
            optimize_op(&cs, &req).unwrap_err().code,
            ErrorCode::BadInput
        );
    }

    #[test]
    fn export_formats() {
        let cs = demo_quadratic();
        let csv = export_scene(&cs, 5, [0.0; 4], ExportFormat::Csv).unwrap();
        assert_eq!(csv.lines().count(), 6);
        assert!(csv.starts_with("s,x0,x1,x2,x3\n0,0,0,0,0\n"));
        let json = export_scene(&cs, 3, [0.0; 4], ExportFormat::Json).unwrap();
        let v: Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 3);
    }
}
