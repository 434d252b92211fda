//! Concyclicity certificates for point trajectories in E4.
//!
//! Two independent routes are registered:
//! * `metric`: circumcircle of three well-spread samples, then every sample
//!   must lie on it (distance to the center and to its 2-plane).
//! * `absolute-sphere`: for a trajectory given as a rational quadratic
//!   curve `h_i(t)/h(t)`, the conic is a circle iff the two points at
//!   infinity (roots of `h`) lie on the absolute sphere `Σ h_i² = 0`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::motions::Trajectory;
use crate::quat::{dist4, Vec4};
use crate::registry::{Named, Registry};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CircleVerdict {
    Circle {
        center: Vec4,
        radius: f64,
        residual: f64,
    },
    FixedPoint {
        point: Vec4,
    },
    LineSegment {
        direction: Vec4,
        residual: f64,
    },
    NotCircular {
        residual: f64,
    },
}

impl CircleVerdict {
    pub fn is_circle(&self) -> bool {
        matches!(self, CircleVerdict::Circle { .. })
    }
}

pub trait CircularityTest: Named + Send + Sync {
    fn certify(&self, traj: &Trajectory, tol: f64) -> Result<CircleVerdict>;
}

/// Registry holding `metric` and `absolute-sphere`.
pub fn circularity_tests() -> Registry<dyn CircularityTest> {
    let mut r: Registry<dyn CircularityTest> = Registry::new();
    r.register(Box::new(MetricTest))
        .register(Box::new(AbsoluteSphereTest));
    r
}

/// Metric test on the samples; `true` iff they lie on a circle of positive
/// radius.
pub fn is_circular(traj: &Trajectory, tol: f64) -> Result<(bool, CircleVerdict)> {
    let v = MetricTest.certify(traj, tol)?;
    Ok((v.is_circle(), v))
}

pub struct MetricTest;

impl Named for MetricTest {
    fn name(&self) -> &'static str {
        "metric"
    }
}

impl CircularityTest for MetricTest {
    fn certify(&self, traj: &Trajectory, tol: f64) -> Result<CircleVerdict> {
        let pts: Vec<Vec4> = traj.samples.iter().map(|s| s.point).collect();
        if pts.len() < 5 {
            return Err(Error::bad(format!(
                "circularity test needs at least 5 samples, got {}",
                pts.len()
            )));
        }
        Ok(metric_verdict(&pts, tol))
    }
}

fn sub(a: Vec4, b: Vec4) -> Vec4 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]]
}

fn dot(a: Vec4, b: Vec4) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(p: Vec4, s: f64, d: Vec4) -> Vec4 {
    [
        p[0] + s * d[0],
        p[1] + s * d[1],
        p[2] + s * d[2],
        p[3] + s * d[3],
    ]
}

/// Distance of `p` from the line through `o` with unit direction `u`.
fn dist_line(p: Vec4, o: Vec4, u: Vec4) -> f64 {
    let w = sub(p, o);
    dist4(w, axpy([0.0; 4], dot(w, u), u))
}

fn metric_verdict(pts: &[Vec4], tol: f64) -> CircleVerdict {
    let n = pts.len() as f64;
    let mut centroid = [0.0; 4];
    for p in pts {
        centroid = axpy(centroid, 1.0 / n, *p);
    }
    let spread = pts.iter().map(|p| dist4(*p, centroid)).fold(0.0, f64::max);
    let scale = tol * spread.max(1.0);
    if spread <= tol {
        return CircleVerdict::FixedPoint { point: centroid };
    }

    let p0 = pts[0];
    let far = |from: &dyn Fn(Vec4) -> f64| {
        pts.iter()
            .copied()
            .max_by(|a, b| from(*a).total_cmp(&from(*b)))
            .unwrap()
    };
    let p1 = far(&|p| dist4(p, p0));
    let p0 = far(&|p| dist4(p, p1));
    let a = sub(p1, p0);
    let u = axpy([0.0; 4], 1.0 / dot(a, a).sqrt(), a);
    let p2 = far(&|p| dist_line(p, p0, u));
    let off_line = pts.iter().map(|p| dist_line(*p, p0, u)).fold(0.0, f64::max);
    if off_line <= scale {
        return CircleVerdict::LineSegment {
            direction: u,
            residual: off_line,
        };
    }

    // circumcenter c = p0 + α a + β b in the plane of p0, p1, p2
    let b = sub(p2, p0);
    let (aa, ab, bb) = (dot(a, a), dot(a, b), dot(b, b));
    let det = 2.0 * (aa * bb - ab * ab);
    let alpha = (aa * bb - bb * ab) / det;
    let beta = (bb * aa - aa * ab) / det;
    let center = axpy(axpy(p0, alpha, a), beta, b);
    let radius = dist4(center, p0);

    // orthonormal frame of the plane for the out-of-plane residual
    let v = sub(b, axpy([0.0; 4], dot(b, u), u));
    let v = axpy([0.0; 4], 1.0 / dot(v, v).sqrt(), v);
    let residual = pts
        .iter()
        .map(|p| {
            let w = sub(*p, center);
            let inplane = axpy(axpy([0.0; 4], dot(w, u), u), dot(w, v), v);
            let off = dist4(w, inplane);
            (dist4(*p, center) - radius).abs().max(off)
        })
        .fold(0.0, f64::max);

    if residual <= tol * radius.max(1.0) {
        CircleVerdict::Circle {
            center,
            radius,
            residual,
        }
    } else {
        CircleVerdict::NotCircular { residual }
    }
}

/// Rational curve `t ↦ (num_i(t) / denom(t))_i` with polynomial coefficients
/// in ascending order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalCurve {
    pub denom: Vec<f64>,
    pub num: [Vec<f64>; 4],
}

fn horner(c: &[f64], t: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, x| acc * t + x)
}

fn horner_c(c: &[f64], t: Complex64) -> Complex64 {
    c.iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, x| acc * t + x)
}

/// Synthetic division by `(t − r)`; the remainder is dropped.
fn deflate(c: &[f64], r: f64) -> Vec<f64> {
    let n = c.len();
    if n <= 1 {
        return vec![0.0];
    }
    let mut out = vec![0.0; n - 1];
    let mut carry = 0.0;
    for k in (1..n).rev() {
        carry = c[k] + carry * r;
        out[k - 1] = carry;
    }
    out
}

fn trim(c: &[f64], eps: f64) -> Vec<f64> {
    let mut v = c.to_vec();
    while v.len() > 1 && v.last().unwrap().abs() <= eps {
        v.pop();
    }
    v
}

impl RationalCurve {
    pub fn eval(&self, t: f64) -> Vec4 {
        let h = horner(&self.denom, t);
        [0, 1, 2, 3].map(|i| horner(&self.num[i], t) / h)
    }

    fn coeff_scale(&self) -> f64 {
        self.denom
            .iter()
            .chain(self.num.iter().flatten())
            .fold(0.0f64, |m, c| m.max(c.abs()))
    }

    /// Cancels real roots of the denominator shared by all numerators.
    fn reduced(&self, tol: f64) -> RationalCurve {
        let mut cur = self.clone();
        loop {
            let eps = 1e-14 * cur.coeff_scale();
            let d = trim(&cur.denom, eps);
            if d.len() < 2 {
                return cur;
            }
            let roots = real_roots(&d);
            let common = roots.into_iter().find(|r| {
                let s = cur.coeff_scale() * (1.0 + r.abs()).powi(d.len() as i32);
                cur.num.iter().all(|n| horner(n, *r).abs() <= tol * s)
            });
            match common {
                Some(r) => {
                    cur = RationalCurve {
                        denom: deflate(&d, r),
                        num: [0, 1, 2, 3].map(|i| deflate(&cur.num[i], r)),
                    };
                }
                None => return cur,
            }
        }
    }
}

fn real_roots(c: &[f64]) -> Vec<f64> {
    match c.len() {
        2 => vec![-c[0] / c[1]],
        3 => {
            let disc = c[1] * c[1] - 4.0 * c[2] * c[0];
            if disc < 0.0 {
                vec![]
            } else {
                let s = disc.sqrt();
                vec![(-c[1] + s) / (2.0 * c[2]), (-c[1] - s) / (2.0 * c[2])]
            }
        }
        _ => vec![],
    }
}

pub struct AbsoluteSphereTest;

impl Named for AbsoluteSphereTest {
    fn name(&self) -> &'static str {
        "absolute-sphere"
    }
}

impl CircularityTest for AbsoluteSphereTest {
    fn certify(&self, traj: &Trajectory, tol: f64) -> Result<CircleVerdict> {
        let curve = traj
            .closure
            .as_ref()
            .ok_or_else(|| Error::bad("absolute-sphere test needs a rational closure"))?;
        absolute_sphere_verdict(curve, tol)
    }
}

/// Projective circle test for conics given in rational quadratic form.
pub fn absolute_sphere_verdict(curve: &RationalCurve, tol: f64) -> Result<CircleVerdict> {
    let c = curve.reduced(1e-10);
    let eps = 1e-14 * c.coeff_scale();
    let d = trim(&c.denom, eps);
    let deg_num = c.num.iter().map(|n| trim(n, eps).len()).max().unwrap_or(1);
    if d.len() > 3 || deg_num > 3 {
        return Err(Error::bad(
            "absolute-sphere test handles conics (degree ≤ 2) only",
        ));
    }
    let samples = [-1.0, 0.0, 1.0, 0.5].map(|t| c.eval(t));

    if d.len() <= 2 && deg_num <= 2 {
        // linear over linear: a line or a point
        let dir = sub(samples[2], samples[0]);
        let len = dot(dir, dir).sqrt();
        if len <= tol {
            return Ok(CircleVerdict::FixedPoint { point: samples[1] });
        }
        return Ok(CircleVerdict::LineSegment {
            direction: axpy([0.0; 4], 1.0 / len, dir),
            residual: 0.0,
        });
    }
    if d.len() < 3 {
        return Ok(CircleVerdict::NotCircular {
            residual: f64::INFINITY,
        });
    }
    let disc = d[1] * d[1] - 4.0 * d[2] * d[0];
    if disc >= 0.0 {
        // hyperbola or parabola: real points at infinity
        return Ok(CircleVerdict::NotCircular {
            residual: f64::INFINITY,
        });
    }
    let root = Complex64::new(-d[1], (-disc).sqrt()) / (2.0 * d[2]);
    let h: Vec<Complex64> = c.num.iter().map(|n| horner_c(n, root)).collect();
    let quad: Complex64 = h.iter().map(|z| z * z).sum();
    let mag: f64 = h.iter().map(|z| z.norm_sqr()).sum();
    if mag <= eps * eps {
        return Ok(CircleVerdict::FixedPoint { point: samples[1] });
    }
    let residual = quad.norm() / mag;
    if residual > tol {
        return Ok(CircleVerdict::NotCircular { residual });
    }
    match metric_verdict(&samples, 1e-6) {
        CircleVerdict::Circle { center, radius, .. } => Ok(CircleVerdict::Circle {
            center,
            radius,
            residual,
        }),
        other => Ok(other),
    }
}
