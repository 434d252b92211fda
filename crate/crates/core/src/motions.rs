//! Straight lines of P7 read as one-parameter X4 motions.
//!
//! Every line outside the generator space is a translation along a fixed
//! direction, a rotation about a fixed plane, or a circular Darboux
//! 2-motion (rotation about a plane combined with a circular translation
//! parallel to it). The classifier reduces a line to the canonical form
//! `(1; 0) – (i; −c cos ϱ + c sin ϱ i)` by changes of frame inside X4.

use serde::{Deserialize, Serialize};

use crate::circularity::RationalCurve;
use crate::error::{Error, Result};
use crate::kinematics::{act_x4, gamma_plane, GrassmannPlane};
use crate::quat::{proj_distance, DualQuaternion, Quaternion, Vec4};

/// Line of P7 spanned by two projectively independent points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LineRepr", into = "LineRepr")]
pub struct P7Line {
    a: DualQuaternion,
    b: DualQuaternion,
}

#[derive(Serialize, Deserialize)]
struct LineRepr {
    a: DualQuaternion,
    b: DualQuaternion,
}

impl TryFrom<LineRepr> for P7Line {
    type Error = Error;
    fn try_from(r: LineRepr) -> Result<Self> {
        P7Line::new(r.a, r.b)
    }
}

impl From<P7Line> for LineRepr {
    fn from(l: P7Line) -> Self {
        LineRepr { a: l.a, b: l.b }
    }
}

impl P7Line {
    pub fn new(a: DualQuaternion, b: DualQuaternion) -> Result<Self> {
        if proj_distance(a, b) <= 1e-12 {
            return Err(Error::bad("the two points coincide"));
        }
        if !a.in_f() && !b.in_f() {
            return Err(Error::DegenerateLine(
                "line lies in the generator space".into(),
            ));
        }
        Ok(P7Line { a, b })
    }

    pub fn a(&self) -> DualQuaternion {
        self.a
    }

    pub fn b(&self) -> DualQuaternion {
        self.b
    }

    /// Homogeneous point `s·a + (1 − s)·b`.
    pub fn point(&self, s: f64) -> DualQuaternion {
        DualQuaternion::raw(
            self.a.e() * s + self.b.e() * (1.0 - s),
            self.a.t() * s + self.b.t() * (1.0 - s),
        )
    }
}

/// Pose of the line motion at parameter `s`, scaled to `|E| = 1`.
pub fn motion_at(line: &P7Line, s: f64) -> Result<DualQuaternion> {
    let p = line.point(s);
    let scale = line.a.e().norm().max(line.b.e().norm()) * (1.0 + s.abs());
    if p.e().norm() <= 1e-14 * scale {
        return Err(Error::Puncture(s));
    }
    p.unit()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MotionClass {
    /// Unit direction in E4, oriented from `a` towards `b`.
    Translation {
        direction: Vec4,
    },
    PlaneRotation {
        plane: GrassmannPlane,
    },
    CircularDarboux {
        plane: GrassmannPlane,
        c: f64,
        rho: f64,
    },
}

impl MotionClass {
    /// One-line description, e.g. `circular-darboux c=0.5 rho=1.2`.
    pub fn summary(&self) -> String {
        match self {
            MotionClass::Translation { direction: d } => {
                format!(
                    "translation direction=({}, {}, {}, {})",
                    d[0], d[1], d[2], d[3]
                )
            }
            MotionClass::PlaneRotation { plane } => {
                let (d, q) = (plane.direction(), plane.foot());
                format!(
                    "plane-rotation direction=({}, {}, {}) foot=({}, {}, {})",
                    d[0], d[1], d[2], q[0], q[1], q[2]
                )
            }
            MotionClass::CircularDarboux { c, rho, .. } => {
                format!("circular-darboux c={c} rho={rho}")
            }
        }
    }

    /// Pose at parameter `p` of the motion this class describes, starting at
    /// the identity. `p` is a distance for translations and an angle
    /// otherwise.
    pub fn pose_at(&self, p: f64) -> DualQuaternion {
        match *self {
            MotionClass::Translation { direction } => translation(direction, p),
            MotionClass::PlaneRotation { plane } => {
                let f = plane_frame(&plane);
                let h = (p / 2.0).sin();
                let r = DualQuaternion::raw(
                    Quaternion::new((p / 2.0).cos(), h, 0.0, 0.0),
                    Quaternion::ZERO,
                );
                conjugate(f, r)
            }
            MotionClass::CircularDarboux { plane, c, rho } => {
                conjugate(plane_frame(&plane), darboux_canonical_pose(c, rho, p))
            }
        }
    }
}

fn translation(v: Vec4, scale: f64) -> DualQuaternion {
    let q = Quaternion::embed4(v) * scale;
    DualQuaternion::raw(Quaternion::ONE, q.conj() * -0.5)
}

/// `f ∘ x ∘ f⁻¹`.
fn conjugate(f: DualQuaternion, x: DualQuaternion) -> DualQuaternion {
    f * x * f.inverse().expect("frame has unit rotation part")
}

/// Unit quaternion whose sandwich maps the unit pure `u` onto the unit pure `v`.
fn rotate_onto(u: Quaternion, v: Quaternion) -> Quaternion {
    let q = Quaternion::ONE - v * u;
    let n = q.norm();
    if n <= 1e-9 {
        // antiparallel: half-turn about any axis orthogonal to u
        let cand = if u.q1.abs() < 0.9 {
            Quaternion::I
        } else {
            Quaternion::J
        };
        let w = (cand * u - u * cand).pure();
        return w / w.norm();
    }
    q / n
}

/// X4 displacement mapping the x0x1-plane through O onto Γ.
fn plane_frame(plane: &GrassmannPlane) -> DualQuaternion {
    let d = plane.direction();
    let rot = rotate_onto(Quaternion::I, Quaternion::embed3(d));
    translation(
        [0.0, plane.foot()[0], plane.foot()[1], plane.foot()[2]],
        1.0,
    ) * DualQuaternion::raw(rot, Quaternion::ZERO)
}

/// Canonical circular Darboux pose: rotation by `tau` about the x0x1-plane
/// and translation by `circular_translation(c, rho, tau)`.
pub fn darboux_canonical_pose(c: f64, rho: f64, tau: f64) -> DualQuaternion {
    let e = Quaternion::new((tau / 2.0).cos(), (tau / 2.0).sin(), 0.0, 0.0);
    let v = Quaternion::embed4(circular_translation(c, rho, tau));
    DualQuaternion::raw(e, v.conj() * e * -0.5)
}

/// Classifies the X4 motion of a line of P7.
pub fn classify_line(line: &P7Line, tol: f64) -> Result<MotionClass> {
    // generators outside G, orientation kept from a to b
    let (a, b) = match (line.a.in_f(), line.b.in_f()) {
        (true, true) => (line.a, line.b),
        (false, _) => (line.a + line.b, line.b),
        (_, false) => (line.a, line.a + line.b),
    };
    let (a, b) = (a.unit()?, b.unit()?);
    let rel = b * a.inverse()?;
    let (r, w) = (rel.e(), rel.t());

    if r.pure().norm() <= tol {
        let v = act_x4(rel, [0.0; 4])?;
        let len = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if len <= tol {
            return Err(Error::DegenerateLine("the two points coincide".into()));
        }
        return Ok(MotionClass::Translation {
            direction: v.map(|c| c / len),
        });
    }

    let plane = gamma_plane(rel)?;
    if study_ratio_constant(a, b, tol) {
        return Ok(MotionClass::PlaneRotation { plane });
    }

    // point of the line through 1 and rel whose rotation part is pure,
    // carried into the frame where that part is i
    let rp = r.pure();
    let n = rp.norm();
    let fq = rotate_onto(rp / n, Quaternion::I);
    let wc = fq * (w / n) * fq.conj();
    let (w0, w1) = (wc.q0, wc.q1);
    Ok(MotionClass::CircularDarboux {
        plane,
        c: w0.hypot(w1),
        rho: w1.atan2(-w0),
    })
}

/// Whether `e(s)·t(s) / |E(s)|²` is constant along the line: the quadratic
/// numerator must be a multiple of the quadratic denominator.
fn study_ratio_constant(a: DualQuaternion, b: DualQuaternion, tol: f64) -> bool {
    let (de, dt) = (a.e() - b.e(), a.t() - b.t());
    let num = [b.e().dot(b.t()), b.e().dot(dt) + de.dot(b.t()), de.dot(dt)];
    let den = [b.e().norm2(), 2.0 * b.e().dot(de), de.norm2()];
    let dd: f64 = den.iter().map(|x| x * x).sum();
    let k = num.iter().zip(den).map(|(x, y)| x * y).sum::<f64>() / dd;
    let resid = num
        .iter()
        .zip(den)
        .map(|(x, y)| (x - k * y).powi(2))
        .sum::<f64>()
        .sqrt();
    let size = num.iter().map(|x| x * x).sum::<f64>().sqrt();
    resid <= tol * (1.0 + size)
}

/// Karger's parameters of a Type-1 Darboux 2-motion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KargerParams {
    pub beta: f64,
    pub gamma: f64,
    pub nu: f64,
    pub tau: f64,
}

impl KargerParams {
    pub fn new(beta: f64, gamma: f64, nu: f64, tau: f64) -> Result<Self> {
        if !(beta >= 0.0 && gamma >= 1.0 && nu >= 0.0 && tau.is_finite() && gamma.is_finite()) {
            return Err(Error::bad(
                "Karger parameters need beta >= 0, gamma >= 1, nu >= 0",
            ));
        }
        Ok(KargerParams {
            beta,
            gamma,
            nu,
            tau,
        })
    }

    fn k(&self) -> f64 {
        self.beta / (2.0 * self.gamma.sqrt())
    }
}

/// Type-1 Darboux motion: rotation by τ in the x2x3-plane plus Karger's
/// translation vector.
pub fn karger_type1(kp: &KargerParams, p: Vec4) -> Vec4 {
    let (s, c) = kp.tau.sin_cos();
    let k = kp.k();
    [
        p[0] + k * (kp.gamma * s + 1.0 - c),
        p[1] + k * (kp.gamma * kp.gamma - 1.0).sqrt() * (1.0 - c),
        c * p[2] - s * p[3],
        s * p[2] + c * p[3] + kp.nu / 2.0 * (c - 1.0),
    ]
}

/// Trajectory of `p` under the Type-1 motion after the half-angle
/// substitution `t = tan(τ/2)`.
pub fn karger_closure(kp: &KargerParams, p: Vec4) -> RationalCurve {
    let k = kp.k();
    let g1 = (kp.gamma * kp.gamma - 1.0).sqrt();
    RationalCurve {
        denom: vec![1.0, 0.0, 1.0],
        num: [
            vec![p[0], 2.0 * k * kp.gamma, p[0] + 2.0 * k],
            vec![p[1], 0.0, p[1] + 2.0 * k * g1],
            vec![p[2], -2.0 * p[3], -p[2]],
            vec![p[3], 2.0 * p[2], -p[3] - kp.nu],
        ],
    }
}

/// Circular translation `c (cos ϱ sin τ − sin ϱ (1 − cos τ), sin ϱ sin τ + cos ϱ (1 − cos τ), 0, 0)`.
pub fn circular_translation(c: f64, rho: f64, tau: f64) -> Vec4 {
    let (st, ct) = tau.sin_cos();
    let (sr, cr) = rho.sin_cos();
    [
        c * (cr * st - sr * (1.0 - ct)),
        c * (sr * st + cr * (1.0 - ct)),
        0.0,
        0.0,
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectorySample {
    pub param: f64,
    pub point: Vec4,
}

/// Sampled trajectory of a point, optionally with its exact rational form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub samples: Vec<TrajectorySample>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closure: Option<RationalCurve>,
}

/// Trajectory of `p` under the line motion at the given parameters.
pub fn sample_trajectory(line: &P7Line, p: Vec4, params: &[f64]) -> Result<Trajectory> {
    let samples = params
        .iter()
        .map(|&s| {
            Ok(TrajectorySample {
                param: s,
                point: act_x4(motion_at(line, s)?, p)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Trajectory {
        samples,
        closure: Some(line_closure(line, p)),
    })
}

/// Exact rational quadratic form of a line trajectory in `s`:
/// `(E_s∘P∘Ẽ_s − 2 E_s∘T̃_s) / |E_s|²`.
pub fn line_closure(line: &P7Line, p: Vec4) -> RationalCurve {
    let pq = Quaternion::embed4(p);
    let num_at = |s: f64| {
        let x = line.point(s);
        (x.e() * pq * x.e().conj() - x.e() * x.t().conj() * 2.0).to_vec4()
    };
    let den_at = |s: f64| line.point(s).e().norm2();
    // exact quadratic interpolation through s = -1, 0, 1
    let quad = |m: f64, z: f64, p: f64| vec![z, (p - m) / 2.0, (p + m) / 2.0 - z];
    let (nm, nz, np) = (num_at(-1.0), num_at(0.0), num_at(1.0));
    RationalCurve {
        denom: quad(den_at(-1.0), den_at(0.0), den_at(1.0)),
        num: [0, 1, 2, 3].map(|i| quad(nm[i], nz[i], np[i])),
    }
}

/// Trajectory of `p` under the Type-1 motion at the given angles.
pub fn karger_trajectory(
    beta: f64,
    gamma: f64,
    nu: f64,
    p: Vec4,
    taus: &[f64],
) -> Result<Trajectory> {
    let base = KargerParams::new(beta, gamma, nu, 0.0)?;
    let samples = taus
        .iter()
        .map(|&tau| TrajectorySample {
            param: tau,
            point: karger_type1(&KargerParams { tau, ..base }, p),
        })
        .collect();
    Ok(Trajectory {
        samples,
        closure: Some(karger_closure(&base, p)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circularity::{absolute_sphere_verdict, is_circular, CircleVerdict};
    use crate::quat::{dist4, DEFAULT_TOL};
    use std::f64::consts::PI;

    fn q(a: f64, b: f64, c: f64, d: f64) -> Quaternion {
        Quaternion::new(a, b, c, d)
    }

    fn dq(e: Quaternion, t: Quaternion) -> DualQuaternion {
        DualQuaternion::new(e, t).unwrap()
    }

    fn canonical(c: f64, rho: f64) -> P7Line {
        P7Line::new(
            DualQuaternion::IDENTITY,
            dq(Quaternion::I, q(-c * rho.cos(), c * rho.sin(), 0.0, 0.0)),
        )
        .unwrap()
    }

    #[test]
    fn line_validation() {
        let a = dq(Quaternion::ONE, Quaternion::I);
        assert!(matches!(
            P7Line::new(a, a.scale(-2.0)),
            Err(Error::BadInput(_))
        ));
        let g1 = dq(Quaternion::ZERO, Quaternion::I);
        let g2 = dq(Quaternion::ZERO, Quaternion::J);
        assert!(matches!(P7Line::new(g1, g2), Err(Error::DegenerateLine(_))));
        assert!(P7Line::new(g1, a).is_ok());
    }

    #[test]
    fn motion_at_examples() {
        let a = dq(q(0.0, 2.0, 0.0, 0.0), q(1.0, 0.0, 0.0, 3.0));
        let b = dq(q(1.0, 1.0, 0.0, 0.0), Quaternion::J);
        let l = P7Line::new(a, b).unwrap();
        assert!(motion_at(&l, 1.0).unwrap().proj_eq(a, 1e-15));
        assert!(motion_at(&l, 0.0).unwrap().proj_eq(b, 1e-15));
        let l = P7Line::new(
            DualQuaternion::IDENTITY,
            dq(Quaternion::I, Quaternion::ZERO),
        )
        .unwrap();
        let m = motion_at(&l, 0.5).unwrap();
        let h = 0.5f64.sqrt();
        assert!((m.e() - q(h, h, 0.0, 0.0)).max_abs() < 1e-15);
        let l = P7Line::new(DualQuaternion::IDENTITY, dq(Quaternion::ONE, Quaternion::K)).unwrap();
        for s in [-2.0, 0.3, 5.0] {
            assert_eq!(motion_at(&l, s).unwrap().e(), Quaternion::ONE);
        }
        // E_s vanishes at s = 1/2
        let l = P7Line::new(
            DualQuaternion::IDENTITY,
            dq(-Quaternion::ONE, Quaternion::K),
        )
        .unwrap();
        assert_eq!(motion_at(&l, 0.5), Err(Error::Puncture(0.5)));
    }

    #[test]
    fn classify_examples() {
        let l = P7Line::new(DualQuaternion::IDENTITY, dq(Quaternion::ONE, Quaternion::I)).unwrap();
        assert_eq!(
            classify_line(&l, DEFAULT_TOL).unwrap(),
            MotionClass::Translation {
                direction: [0.0, 1.0, 0.0, 0.0]
            }
        );
        let l = P7Line::new(
            DualQuaternion::IDENTITY,
            dq(Quaternion::I, Quaternion::ZERO),
        )
        .unwrap();
        let MotionClass::PlaneRotation { plane } = classify_line(&l, DEFAULT_TOL).unwrap() else {
            panic!()
        };
        assert_eq!(plane.direction(), [1.0, 0.0, 0.0]);
        assert_eq!(plane.foot(), [0.0, 0.0, 0.0]);
        for (c, rho) in [(1.0, 0.0), (0.3, 1.2), (2.5, -2.0), (0.7, 3.0)] {
            let MotionClass::CircularDarboux {
                c: cc,
                rho: rr,
                plane,
            } = classify_line(&canonical(c, rho), DEFAULT_TOL).unwrap()
            else {
                panic!()
            };
            assert!((cc - c).abs() < 1e-12, "{cc} vs {c}");
            assert!((rr - rho).abs() < 1e-12, "{rr} vs {rho}");
            assert_eq!(plane.direction(), [1.0, 0.0, 0.0]);
        }
    }

    #[test]
    fn classify_through_generator_space() {
        // a in G: every pose shares the rotation of b
        let l = P7Line::new(
            dq(Quaternion::ZERO, Quaternion::J),
            dq(Quaternion::I, Quaternion::ZERO),
        )
        .unwrap();
        assert!(matches!(
            classify_line(&l, DEFAULT_TOL).unwrap(),
            MotionClass::Translation { .. }
        ));
    }

    #[test]
    fn summary_format() {
        let s = classify_line(&canonical(0.5, 0.25), DEFAULT_TOL)
            .unwrap()
            .summary();
        assert!(s.starts_with("circular-darboux c=0.5"), "{s}");
        assert!(s.contains("rho=0.25"));
    }

    #[test]
    fn karger_identity_at_zero() {
        let kp = KargerParams::new(1.3, 2.0, 0.4, 0.0).unwrap();
        let p = [0.1, -2.0, 3.0, 0.7];
        assert_eq!(karger_type1(&kp, p), p);
        assert!(KargerParams::new(-1.0, 2.0, 0.0, 0.0).is_err());
        assert!(KargerParams::new(1.0, 0.5, 0.0, 0.0).is_err());
    }

    #[test]
    fn karger_closure_matches_direct_evaluation() {
        let base = KargerParams::new(0.8, 3.0, 0.6, 0.0).unwrap();
        let p = [0.5, 1.0, -1.5, 2.0];
        let curve = karger_closure(&base, p);
        for tau in [-2.5, -0.3, 0.0, 1.0, 2.9] {
            let direct = karger_type1(&KargerParams { tau, ..base }, p);
            let via = curve.eval((tau / 2.0).tan());
            assert!(dist4(direct, via) < 1e-12);
        }
    }

    #[test]
    fn karger_with_nu_is_not_circular() {
        let taus: Vec<f64> = (0..7).map(|k| -2.5 + 0.8 * k as f64).collect();
        let tr = karger_trajectory(1.0, 2.0, 0.3, [0.0; 4], &taus).unwrap();
        assert!(!is_circular(&tr, 1e-8).unwrap().0);
        assert!(
            !absolute_sphere_verdict(tr.closure.as_ref().unwrap(), 1e-10)
                .unwrap()
                .is_circle()
        );
    }

    #[test]
    fn karger_limit_is_half_the_circular_translation() {
        // β = c/√γ, γ → ∞ sends Karger's vector to (c/2)(sin τ, 1 − cos τ, 0, 0)
        let (c, gamma) = (1.7_f64, 1e6_f64);
        for tau in [0.4, 1.3, 3.0] {
            let kp = KargerParams::new(c / gamma.sqrt(), gamma, 0.0, tau).unwrap();
            let v = karger_type1(&kp, [0.0; 4]);
            let want = circular_translation(c / 2.0, 0.0, tau);
            assert!(dist4(v, want) < 1e-5);
            let kp2 = KargerParams::new(2.0 * c / gamma.sqrt(), gamma, 0.0, tau).unwrap();
            assert!(
                dist4(
                    karger_type1(&kp2, [0.0; 4]),
                    circular_translation(c, 0.0, tau)
                ) < 1e-5
            );
        }
    }

    #[test]
    fn circular_translation_examples() {
        assert_eq!(circular_translation(0.0, 0.7, 1.1), [0.0; 4]);
        let v = circular_translation(1.0, 0.0, PI);
        assert!(dist4(v, [0.0, 2.0, 0.0, 0.0]) < 1e-15);
        let pts: Vec<TrajectorySample> = (0..7)
            .map(|k| {
                let tau = 0.9 * k as f64;
                TrajectorySample {
                    param: tau,
                    point: circular_translation(2.0, 0.6, tau),
                }
            })
            .collect();
        let (ok, v) = is_circular(
            &Trajectory {
                samples: pts,
                closure: None,
            },
            1e-10,
        )
        .unwrap();
        assert!(ok);
        let CircleVerdict::Circle { radius, .. } = v else {
            panic!()
        };
        assert!((radius - 2.0).abs() < 1e-12);
    }

    #[test]
    fn canonical_pose_lies_on_canonical_line() {
        let (c, rho) = (0.8, -0.4);
        let l = canonical(c, rho);
        for tau in [0.3_f64, 1.0, 2.5, -1.0] {
            let s = 1.0 / (1.0 + (tau / 2.0).tan());
            let pose = darboux_canonical_pose(c, rho, tau);
            assert!(pose.proj_eq(motion_at(&l, s).unwrap(), 1e-12), "tau {tau}");
        }
    }

    #[test]
    fn sampled_trajectories_per_class() {
        let params: Vec<f64> = (0..7).map(|k| -1.0 + 0.5 * k as f64).collect();
        let tl = P7Line::new(DualQuaternion::IDENTITY, dq(Quaternion::ONE, Quaternion::I)).unwrap();
        let tr = sample_trajectory(&tl, [0.2, 0.3, -0.1, 1.0], &params).unwrap();
        assert!(matches!(
            is_circular(&tr, 1e-8).unwrap().1,
            CircleVerdict::LineSegment { .. }
        ));

        let rl = P7Line::new(
            DualQuaternion::IDENTITY,
            dq(Quaternion::I, Quaternion::ZERO),
        )
        .unwrap();
        let on_gamma = sample_trajectory(&rl, [0.7, -1.2, 0.0, 0.0], &params).unwrap();
        assert!(matches!(
            is_circular(&on_gamma, 1e-8).unwrap().1,
            CircleVerdict::FixedPoint { .. }
        ));

        let dl = canonical(0.9, 0.3);
        let tr = sample_trajectory(&dl, [0.3, -0.5, 1.0, 2.0], &params[..5]).unwrap();
        assert!(is_circular(&tr, 1e-8).unwrap().0);
        assert!(absolute_sphere_verdict(tr.closure.as_ref().unwrap(), 1e-10)
            .unwrap()
            .is_circle());
        let curve = tr.closure.unwrap();
        for smp in &tr.samples {
            assert!(dist4(curve.eval(smp.param), smp.point) < 1e-12);
        }
    }

    #[test]
    fn generated_darboux_reclassifies() {
        let plane = gamma_plane(dq(q(0.3, 0.5, -0.2, 0.7), q(0.1, 1.0, -2.0, 0.4))).unwrap();
        let class = MotionClass::CircularDarboux {
            plane,
            c: 1.3,
            rho: 0.9,
        };
        let line = P7Line::new(class.pose_at(0.0), class.pose_at(1.1)).unwrap();
        let MotionClass::CircularDarboux { plane: p2, c, rho } =
            classify_line(&line, DEFAULT_TOL).unwrap()
        else {
            panic!()
        };
        assert!((c - 1.3).abs() < 1e-10 && (rho - 0.9).abs() < 1e-10);
        assert!(p2.same_plane(&plane, 1e-10));
    }
}
