//! Quaternion and dual-quaternion arithmetic.
//!
//! A [`DualQuaternion`] `E + εT` is read as the homogeneous 8-tuple
//! `(e0:e1:e2:e3:t0:t1:t2:t3)` of a point of P7. Points with `E != 0` are
//! displacements of the motion group X4; those that also satisfy
//! `e·t = 0` lie on the Study quadric and are displacements of E3.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default absolute tolerance for membership predicates on normalized
/// representatives.
pub const DEFAULT_TOL: f64 = 1e-9;

pub type Vec3 = [f64; 3];
pub type Vec4 = [f64; 4];

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Quaternion {
    pub q0: f64,
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(q0: f64, q1: f64, q2: f64, q3: f64) -> Self {
        Quaternion { q0, q1, q2, q3 }
    }

    pub const fn scalar_q(s: f64) -> Self {
        Quaternion::new(s, 0.0, 0.0, 0.0)
    }

    /// Point of E3 as the pure quaternion `p1 i + p2 j + p3 k`.
    pub fn embed3(p: Vec3) -> Self {
        Quaternion::new(0.0, p[0], p[1], p[2])
    }

    /// Point of E4 as the quaternion `p0 + p1 i + p2 j + p3 k`.
    pub fn embed4(p: Vec4) -> Self {
        Quaternion::new(p[0], p[1], p[2], p[3])
    }

    pub fn to_vec3(self) -> Vec3 {
        [self.q1, self.q2, self.q3]
    }

    pub fn to_vec4(self) -> Vec4 {
        [self.q0, self.q1, self.q2, self.q3]
    }

    pub fn conj(self) -> Self {
        Quaternion::new(self.q0, -self.q1, -self.q2, -self.q3)
    }

    pub fn norm2(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm2().sqrt()
    }

    pub fn scalar(self) -> f64 {
        self.q0
    }

    pub fn pure(self) -> Self {
        Quaternion::new(0.0, self.q1, self.q2, self.q3)
    }

    /// Euclidean inner product of the coordinate 4-vectors.
    pub fn dot(self, o: Self) -> f64 {
        self.q0 * o.q0 + self.q1 * o.q1 + self.q2 * o.q2 + self.q3 * o.q3
    }

    pub fn max_abs(self) -> f64 {
        self.q0
            .abs()
            .max(self.q1.abs())
            .max(self.q2.abs())
            .max(self.q3.abs())
    }

    pub fn is_zero(self) -> bool {
        self == Quaternion::ZERO || self.to_vec4().iter().all(|c| *c == 0.0)
    }
}

impl From<[f64; 4]> for Quaternion {
    fn from(v: [f64; 4]) -> Self {
        Quaternion::embed4(v)
    }
}

impl From<Quaternion> for [f64; 4] {
    fn from(q: Quaternion) -> Self {
        q.to_vec4()
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + {}i + {}j + {}k",
            self.q0, self.q1, self.q2, self.q3
        )
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, b: Quaternion) -> Quaternion {
        let a = self;
        Quaternion::new(
            a.q0 * b.q0 - a.q1 * b.q1 - a.q2 * b.q2 - a.q3 * b.q3,
            a.q0 * b.q1 + a.q1 * b.q0 + a.q2 * b.q3 - a.q3 * b.q2,
            a.q0 * b.q2 - a.q1 * b.q3 + a.q2 * b.q0 + a.q3 * b.q1,
            a.q0 * b.q3 + a.q1 * b.q2 - a.q2 * b.q1 + a.q3 * b.q0,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Quaternion {
        Quaternion::new(self.q0 * s, self.q1 * s, self.q2 * s, self.q3 * s)
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    fn div(self, s: f64) -> Quaternion {
        Quaternion::new(self.q0 / s, self.q1 / s, self.q2 / s, self.q3 / s)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(
            self.q0 + o.q0,
            self.q1 + o.q1,
            self.q2 + o.q2,
            self.q3 + o.q3,
        )
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Quaternion) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(
            self.q0 - o.q0,
            self.q1 - o.q1,
            self.q2 - o.q2,
            self.q3 - o.q3,
        )
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        self * -1.0
    }
}

pub fn qmul(a: Quaternion, b: Quaternion) -> Quaternion {
    a * b
}

pub fn qconj(a: Quaternion) -> Quaternion {
    a.conj()
}

pub fn qnorm2(a: Quaternion) -> f64 {
    a.norm2()
}

pub fn qpure(a: Quaternion) -> Quaternion {
    a.pure()
}

pub fn qscalar(a: Quaternion) -> f64 {
    a.scalar()
}

/// Homogeneous point `(E : T)` of P7. Never all-zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DqRepr", into = "DqRepr")]
pub struct DualQuaternion {
    e: Quaternion,
    t: Quaternion,
}

#[derive(Serialize, Deserialize)]
struct DqRepr {
    e: [f64; 4],
    t: [f64; 4],
}

impl TryFrom<DqRepr> for DualQuaternion {
    type Error = Error;
    fn try_from(r: DqRepr) -> Result<Self> {
        if r.e.iter().chain(r.t.iter()).any(|c| !c.is_finite()) {
            return Err(Error::bad("dual quaternion coordinates must be finite"));
        }
        DualQuaternion::new(r.e.into(), r.t.into())
    }
}

impl From<DualQuaternion> for DqRepr {
    fn from(x: DualQuaternion) -> Self {
        DqRepr {
            e: x.e.to_vec4(),
            t: x.t.to_vec4(),
        }
    }
}

impl DualQuaternion {
    pub const IDENTITY: DualQuaternion = DualQuaternion {
        e: Quaternion::ONE,
        t: Quaternion::ZERO,
    };

    pub fn new(e: Quaternion, t: Quaternion) -> Result<Self> {
        if e.is_zero() && t.is_zero() {
            return Err(Error::Zero);
        }
        Ok(DualQuaternion { e, t })
    }

    /// Builds without the non-zero check; for products of valid elements.
    pub(crate) const fn raw(e: Quaternion, t: Quaternion) -> Self {
        DualQuaternion { e, t }
    }

    pub fn from_array(c: [f64; 8]) -> Result<Self> {
        DualQuaternion::new(
            Quaternion::new(c[0], c[1], c[2], c[3]),
            Quaternion::new(c[4], c[5], c[6], c[7]),
        )
    }

    pub fn to_array(self) -> [f64; 8] {
        let (e, t) = (self.e, self.t);
        [e.q0, e.q1, e.q2, e.q3, t.q0, t.q1, t.q2, t.q3]
    }

    pub fn e(&self) -> Quaternion {
        self.e
    }

    pub fn t(&self) -> Quaternion {
        self.t
    }

    /// Member of 𝔽 (an X4 displacement): `E != 0`.
    pub fn in_f(&self) -> bool {
        !self.e.is_zero()
    }

    /// Member of 𝔼 (an SE(3) displacement): in 𝔽 and on the Study quadric.
    pub fn in_e(&self, tol: f64) -> bool {
        self.study_residual().is_some_and(|r| r.abs() <= tol)
    }

    /// `e·t / |E|²`, the Study form of the representative with unit `E`.
    pub fn study_residual(&self) -> Option<f64> {
        let n2 = self.e.norm2();
        (n2 > 0.0).then(|| self.e.dot(self.t) / n2)
    }

    pub fn scale(self, s: f64) -> Self {
        DualQuaternion::raw(self.e * s, self.t * s)
    }

    /// Canonical representative: `|E| = 1` and the first non-negligible
    /// coordinate of `E` positive.
    pub fn normalize(self) -> Result<Self> {
        let n = self.e.norm();
        if n == 0.0 {
            return Err(Error::OnGeneratorSpace);
        }
        let lead = self
            .e
            .to_vec4()
            .into_iter()
            .find(|c| c.abs() > 1e-12 * n)
            .unwrap_or(1.0);
        let s = if lead < 0.0 { -1.0 / n } else { 1.0 / n };
        Ok(self.scale(s))
    }

    /// Rescales to `|E| = 1` without touching the sign.
    pub fn unit(self) -> Result<Self> {
        let n = self.e.norm();
        if n == 0.0 {
            return Err(Error::OnGeneratorSpace);
        }
        Ok(self.scale(1.0 / n))
    }

    /// Inverse up to the projective scale `|E|²`:
    /// `(Ẽ, -Ẽ∘T∘Ẽ / |E|²)`.
    pub fn inverse(self) -> Result<Self> {
        let n2 = self.e.norm2();
        if n2 == 0.0 {
            return Err(Error::OnGeneratorSpace);
        }
        let ec = self.e.conj();
        Ok(DualQuaternion::raw(ec, -(ec * self.t * ec) / n2))
    }

    pub fn conj(self) -> Self {
        DualQuaternion::raw(self.e.conj(), self.t.conj())
    }

    pub fn norm8(self) -> f64 {
        self.to_array().iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Projective equality: the unit 8-vectors agree up to sign.
    pub fn proj_eq(self, o: Self, tol: f64) -> bool {
        proj_distance(self, o) <= tol
    }
}

/// Distance between two points of P7 measured on unit 8-vectors, minimized
/// over the sign.
pub fn proj_distance(a: DualQuaternion, b: DualQuaternion) -> f64 {
    let (x, y) = (a.to_array(), b.to_array());
    let (nx, ny) = (a.norm8(), b.norm8());
    let (mut dp, mut dm) = (0.0, 0.0);
    for k in 0..8 {
        let (u, v) = (x[k] / nx, y[k] / ny);
        dp += (u - v) * (u - v);
        dm += (u + v) * (u + v);
    }
    dp.min(dm).sqrt()
}

impl Mul for DualQuaternion {
    type Output = DualQuaternion;
    fn mul(self, b: DualQuaternion) -> DualQuaternion {
        dq_mul(self, b)
    }
}

impl Add for DualQuaternion {
    type Output = DualQuaternion;
    fn add(self, b: DualQuaternion) -> DualQuaternion {
        DualQuaternion::raw(self.e + b.e, self.t + b.t)
    }
}

impl fmt::Display for DualQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ε({})", self.e, self.t)
    }
}

/// `(Ea∘Eb, Ea∘Tb + Ta∘Eb)`, the product with `ε² = 0`.
pub fn dq_mul(a: DualQuaternion, b: DualQuaternion) -> DualQuaternion {
    DualQuaternion::raw(a.e * b.e, a.e * b.t + a.t * b.e)
}

/// Symmetric bilinear form of the Study quadric:
/// `e(x)·t(y) + e(y)·t(x)`.
pub fn study_bilinear(x: DualQuaternion, y: DualQuaternion) -> f64 {
    x.e.dot(y.t) + y.e.dot(x.t)
}

pub fn embed3(p: Vec3) -> Quaternion {
    Quaternion::embed3(p)
}

pub fn embed4(p: Vec4) -> Quaternion {
    Quaternion::embed4(p)
}

pub(crate) fn dot3(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn cross3(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub(crate) fn norm3(a: Vec3) -> f64 {
    dot3(a, a).sqrt()
}

pub(crate) fn dist4(a: Vec4, b: Vec4) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}
