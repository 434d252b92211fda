//! Linear complexes of SE(3)-displacements and the Plücker/screw analogue.
//!
//! The complex of a pole `E + εT` in 𝔽 is the set of points of the Study
//! quadric lying in the pole's polar hyperplane. A member's relative motion
//! to the pole always has a pure dual part, i.e. it is an orthogonal X4
//! displacement.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kinematics::psh;
use crate::quat::{DualQuaternion, Quaternion};

/// Plücker coordinates `(l01 : l02 : l03 : l23 : l31 : l12)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlueckerLine(pub [f64; 6]);

/// Homogeneous screw coordinates, same ordering as [`PlueckerLine`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScrewCoords(pub [f64; 6]);

fn unit6(v: [f64; 6]) -> Result<[f64; 6]> {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n == 0.0 {
        return Err(Error::bad("the zero 6-tuple is not a point of P5"));
    }
    Ok(v.map(|x| x / n))
}

/// Polar form of the Plücker quadric.
fn klein_form(s: [f64; 6], l: [f64; 6]) -> f64 {
    s[0] * l[3] + s[1] * l[4] + s[2] * l[5] + s[3] * l[0] + s[4] * l[1] + s[5] * l[2]
}

pub fn on_pluecker_quadric(l: PlueckerLine, tol: f64) -> Result<bool> {
    let u = unit6(l.0)?;
    Ok((u[0] * u[3] + u[1] * u[4] + u[2] * u[5]).abs() <= tol)
}

/// Whether the line is a path normal of the screw (lies in its polar
/// hyperplane).
pub fn screw_complex_contains(s: ScrewCoords, l: PlueckerLine, tol: f64) -> Result<bool> {
    Ok(klein_form(unit6(s.0)?, unit6(l.0)?).abs() <= tol)
}

/// Linear complex of SE(3)-displacements with the given pole.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ComplexRepr", into = "ComplexRepr")]
pub struct DisplacementComplex {
    pole: DualQuaternion,
}

#[derive(Serialize, Deserialize)]
struct ComplexRepr {
    pole: DualQuaternion,
}

impl TryFrom<ComplexRepr> for DisplacementComplex {
    type Error = Error;
    fn try_from(r: ComplexRepr) -> Result<Self> {
        DisplacementComplex::new(r.pole)
    }
}

impl From<DisplacementComplex> for ComplexRepr {
    fn from(c: DisplacementComplex) -> Self {
        ComplexRepr { pole: c.pole }
    }
}

impl DisplacementComplex {
    pub fn new(pole: DualQuaternion) -> Result<Self> {
        if !pole.in_f() {
            return Err(Error::OnGeneratorSpace);
        }
        Ok(DisplacementComplex { pole })
    }

    pub fn pole(&self) -> DualQuaternion {
        self.pole
    }
}

fn on_quadric(m: DualQuaternion, tol: f64) -> Result<DualQuaternion> {
    let n = m.normalize()?;
    let r = n.e().dot(n.t());
    if r.abs() > tol {
        return Err(Error::OffQuadric(r.abs()));
    }
    Ok(n)
}

/// Value of `(F∘T̃ + T∘F̃) + (E∘Ũ + U∘Ẽ)` for pole `(E, T)` and member
/// `(F, U)`, both normalized. The quaternion is a pure scalar.
pub fn complex_condition(pole: DualQuaternion, m: DualQuaternion) -> Result<f64> {
    let (p, m) = (pole.normalize()?, m.normalize()?);
    let (e, t, f, u) = (p.e(), p.t(), m.e(), m.t());
    Ok(((f * t.conj() + t * f.conj()) + (e * u.conj() + u * e.conj())).scalar())
}

pub fn complex_contains(cx: &DisplacementComplex, m: DualQuaternion, tol: f64) -> Result<bool> {
    let m = on_quadric(m, tol)?;
    Ok(complex_condition(cx.pole, m)?.abs() <= tol)
}

/// Relative motion `(E∘F̃, E∘Ũ + T∘F̃)` taking the member pose to the pole.
pub fn relative_motion(
    pole: DualQuaternion,
    m: DualQuaternion,
    tol: f64,
) -> Result<DualQuaternion> {
    let p = pole.normalize()?;
    let m = on_quadric(m, tol)?;
    let (e, t, f, u) = (p.e(), p.t(), m.e(), m.t());
    Ok(DualQuaternion::raw(
        e * f.conj(),
        e * u.conj() + t * f.conj(),
    ))
}

/// The PSH image of the pole.
pub fn complex_axis(cx: &DisplacementComplex) -> Result<DualQuaternion> {
    psh(cx.pole)?.normalize()
}

/// Orthogonal X4 displacement: the dual part is a pure quaternion.
pub fn is_orthogonal_x4(x: DualQuaternion, tol: f64) -> Result<bool> {
    Ok(x.normalize()?.t().scalar().abs() <= tol)
}

/// Deterministic members of the complex.
///
/// Each member takes a random unit rotation part `F`; the dual part `U` then
/// has to satisfy two linear conditions, `F·U = 0` (Study quadric) and
/// `E·U = −T·F` (polar hyperplane). `U` is the particular solution in
/// `span{F, E}` plus a random element of the orthogonal complement.
pub fn sample_complex_members(
    cx: &DisplacementComplex,
    n: usize,
    seed: u64,
) -> Result<Vec<DualQuaternion>> {
    if n == 0 {
        return Err(Error::bad("member count must be at least 1"));
    }
    let p = cx.pole.normalize()?;
    let (e, t) = (p.e(), p.t());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gauss4 = |rng: &mut ChaCha8Rng| {
        let v: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(rng));
        Quaternion::from(v)
    };
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let f = gauss4(&mut rng);
        let f = f / f.norm();
        let ef = e.dot(f);
        let det = 1.0 - ef * ef;
        if det < 1e-6 {
            continue;
        }
        // u = α F + β E with F·u = 0 and E·u = −T·F
        let rhs = -t.dot(f);
        let beta = rhs / det;
        let alpha = -beta * ef;
        let mut u = f * alpha + e * beta;
        // add a component orthogonal to both F and E
        let mut w = gauss4(&mut rng);
        w = w - f * w.dot(f);
        let e_perp = e - f * ef;
        w = w - e_perp * (w.dot(e_perp) / e_perp.norm2());
        u += w;
        let m = DualQuaternion::new(f, u)?.normalize()?;
        out.push(m);
    }
    Ok(out)
}
