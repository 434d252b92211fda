//! Actions of dual quaternions on E3 and E4, the PSH projection onto the
//! Study quadric, and the rotation-plane geometry of X4 displacements.
//!
//! An element `E + εT` of 𝔽 acts on E4 by
//! `P ↦ E∘P∘Ẽ − 2 E∘T̃` (unit `E`). This fixes the ideal point of the
//! x0-axis. Restricted to the pure part it is the SE(3) action
//! `p ↦ E∘p∘Ẽ + (T∘Ẽ − E∘T̃)`, and the x0-coordinate is shifted by
//! `−2 e·t`. Dropping that shift is the PSH map.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quat::{cross3, dot3, norm3, DualQuaternion, Quaternion, Vec3, Vec4};

/// Action of an SE(3) displacement (a point of the Study quadric) on E3.
pub fn act_se3(x: DualQuaternion, p: Vec3, tol: f64) -> Result<Vec3> {
    let n = x.normalize()?;
    let r = n.e().dot(n.t());
    if r.abs() > tol {
        return Err(Error::OffQuadric(r.abs()));
    }
    let (e, t) = (n.e(), n.t());
    let img = e * Quaternion::embed3(p) * e.conj() + (t * e.conj() - e * t.conj());
    Ok(img.to_vec3())
}

/// Action of an X4 displacement on E4.
pub fn act_x4(x: DualQuaternion, p: Vec4) -> Result<Vec4> {
    let n = x.unit()?;
    let (e, t) = (n.e(), n.t());
    let img = e * Quaternion::embed4(p) * e.conj() - e * t.conj() * 2.0;
    Ok(img.to_vec4())
}

/// Translation of every point along x0: `−2 e·t / |E|²`.
pub fn x0_shift(x: DualQuaternion) -> Result<f64> {
    x.study_residual()
        .map(|r| -2.0 * r)
        .ok_or(Error::OnGeneratorSpace)
}

/// PSH map: `T ↦ T − (e·t / |E|²) E`. Keeps the scale of the input.
pub fn psh(x: DualQuaternion) -> Result<DualQuaternion> {
    let r = x.study_residual().ok_or(Error::OnGeneratorSpace)?;
    Ok(DualQuaternion::raw(x.e(), x.t() - x.e() * r))
}

/// Top-view SE(3) pose together with its x0 height label.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LabeledPose {
    pub pose: DualQuaternion,
    pub height: f64,
}

/// Orthogonal projection along x0 with the lost coordinate kept as label.
pub fn kotierte_projection(x: DualQuaternion) -> Result<LabeledPose> {
    Ok(LabeledPose {
        pose: psh(x)?.normalize()?,
        height: x0_shift(x)?,
    })
}

/// Plane through the origin spanned by `I = (1,0,0,0)` and `E`, about which
/// `P ↦ E∘P∘Ẽ` rotates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlaneThroughOrigin {
    /// Always true: the plane contains the x0 direction.
    pub span_i: bool,
    /// Unit 4-vector along `E`.
    pub dir_e: Vec4,
    /// Rotation angle in `[0, 2π)`, oriented by the triangle O, I, E.
    pub angle: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RotationPlane {
    /// `E = ±1`: no rotation, the plane is undefined.
    Identity,
    Plane(PlaneThroughOrigin),
}

pub fn rotation_plane_angle(e: Quaternion) -> Result<RotationPlane> {
    let n = e.norm();
    if n == 0.0 {
        return Err(Error::OnGeneratorSpace);
    }
    let u = e / n;
    let v = u.pure().norm();
    if v <= 1e-12 {
        return Ok(RotationPlane::Identity);
    }
    Ok(RotationPlane::Plane(PlaneThroughOrigin {
        span_i: true,
        dir_e: u.to_vec4(),
        angle: 2.0 * v.atan2(u.q0),
    }))
}

/// Normalized Grassmann coordinates `(l̄, l̂, 𝔏)` of the invariant plane Γ
/// of an X4 displacement. Γ is parallel to the x0 direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrassmannPlane {
    pub lbar: Quaternion,
    pub lhat: Quaternion,
    #[serde(rename = "L")]
    pub moment: Quaternion,
}

impl GrassmannPlane {
    /// Unit direction of Γ orthogonal to x0.
    pub fn direction(&self) -> Vec3 {
        let d = self.lbar.to_vec3();
        let n = norm3(d);
        [d[0] / n, d[1] / n, d[2] / n]
    }

    /// Point of Γ ∩ {x0 = 0} closest to the origin, read from `𝔏 = l̄ × q`.
    pub fn foot(&self) -> Vec3 {
        let l = self.lbar.to_vec3();
        let c = cross3(self.moment.to_vec3(), l);
        let n2 = dot3(l, l);
        [c[0] / n2, c[1] / n2, c[2] / n2]
    }

    /// Euclidean distance of a point of E4 from Γ.
    pub fn distance(&self, p: Vec4) -> f64 {
        let d = self.direction();
        let q = self.foot();
        let w = [p[1] - q[0], p[2] - q[1], p[3] - q[2]];
        let along = dot3(w, d);
        norm3([
            w[0] - along * d[0],
            w[1] - along * d[1],
            w[2] - along * d[2],
        ])
    }

    /// Point of Γ with coordinates `(h, μ)` along x0 and along the direction.
    pub fn point(&self, h: f64, mu: f64) -> Vec4 {
        let d = self.direction();
        let q = self.foot();
        [h, q[0] + mu * d[0], q[1] + mu * d[1], q[2] + mu * d[2]]
    }

    /// Same plane as a set (orientation of `l̄` ignored).
    pub fn same_plane(&self, o: &GrassmannPlane, tol: f64) -> bool {
        let (a, b) = (self.direction(), o.direction());
        let cross = norm3(cross3(a, b));
        cross <= tol && o.distance(self.point(0.0, 0.0)) <= tol
    }
}

/// Invariant plane Γ of the displacement `x` (pure part of `E` nonzero).
pub fn gamma_plane(x: DualQuaternion) -> Result<GrassmannPlane> {
    let n = x.normalize()?;
    let (e, t) = (n.e(), n.t());
    let ep = e.pure();
    let en2 = ep.norm2();
    if en2 <= 1e-24 {
        return Err(Error::bad("pure translation has no rotation plane"));
    }
    let lbar = ep / en2;
    let diff = e - e.conj();
    let num = diff * (lbar * t - t * lbar);
    let den = (diff * (e.conj() - e)).scalar();
    Ok(GrassmannPlane {
        lbar,
        lhat: Quaternion::ZERO,
        moment: num / den,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line3 {
    pub point: Vec3,
    pub direction: Vec3,
}

impl Line3 {
    pub fn distance(&self, p: Vec3) -> f64 {
        let d = self.direction;
        let n = norm3(d);
        let w = [
            p[0] - self.point[0],
            p[1] - self.point[1],
            p[2] - self.point[2],
        ];
        norm3(cross3(w, d)) / n
    }
}

/// Axis of an SE(3) displacement as `Γ ∩ {x0 = k}`.
pub fn axis_in_hyperplane(x: DualQuaternion, k: f64, tol: f64) -> Result<Line3> {
    let n = x.normalize()?;
    let r = n.e().dot(n.t());
    if r.abs() > tol {
        return Err(Error::OffQuadric(r.abs()));
    }
    let plane = gamma_plane(n)?;
    let p = plane.point(k, 0.0);
    Ok(Line3 {
        point: [p[1], p[2], p[3]],
        direction: plane.direction(),
    })
}

/// Kinds of SE(3) displacements, distinguishing pure rotations from screws.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Se3Kind {
    Identity,
    Translation { vector: Vec3 },
    Rotation { axis: Line3, angle: f64 },
    Screw { axis: Line3, angle: f64, slide: f64 },
}

/// Classifies a point of the Study quadric as a displacement of E3.
pub fn classify_se3(x: DualQuaternion, tol: f64) -> Result<Se3Kind> {
    let n = x.normalize()?;
    let r = n.e().dot(n.t());
    if r.abs() > tol {
        return Err(Error::OffQuadric(r.abs()));
    }
    let (e, t) = (n.e(), n.t());
    let d = (t * e.conj() - e * t.conj()).to_vec3();
    match rotation_plane_angle(e)? {
        RotationPlane::Identity => {
            if norm3(d) <= tol {
                Ok(Se3Kind::Identity)
            } else {
                Ok(Se3Kind::Translation { vector: d })
            }
        }
        RotationPlane::Plane(pl) => {
            let axis = axis_in_hyperplane(n, 0.0, tol)?;
            let slide = dot3(d, axis.direction);
            if slide.abs() <= tol {
                Ok(Se3Kind::Rotation {
                    axis,
                    angle: pl.angle,
                })
            } else {
                Ok(Se3Kind::Screw {
                    axis,
                    angle: pl.angle,
                    slide,
                })
            }
        }
    }
}

/// 3×3 rotation matrix of `p ↦ E∘p∘Ẽ` for the unit-normalized `E`.
pub fn rotation_matrix3(e: Quaternion) -> Result<[[f64; 3]; 3]> {
    let n = e.norm();
    if n == 0.0 {
        return Err(Error::OnGeneratorSpace);
    }
    let u = e / n;
    let mut m = [[0.0; 3]; 3];
    for (col, basis) in [Quaternion::I, Quaternion::J, Quaternion::K]
        .into_iter()
        .enumerate()
    {
        let img = (u * basis * u.conj()).to_vec3();
        for row in 0..3 {
            m[row][col] = img[row];
        }
    }
    Ok(m)
}
