//! Geometry instances and exact planar oracles.
//!
//! [`Geometry`] is the operation table the incidence checkers quantify over:
//! connecting curve, evaluation, tangent, distance, membership and simple
//! ratio. Two instances ship — the Nil model (delegating to
//! [`crate::nil_kernel`]) and a Euclidean instance on the same affine
//! coordinates, whose curves are straight lines. A further instance would
//! plug in here without touching the checkers.
//!
//! The second half of the module is an exact-arithmetic planar oracle
//! (arbitrary-precision rationals, homogeneous coordinates) for the classical
//! Menelaus, Desargues and Pappus statements. Fibre-type configurations
//! reduce to a vertical plane where Nil curves are straight segments, so the
//! float pipeline can be cross-checked against these oracles through the
//! [`VerticalPlane`] chart.

use crate::incidence::PappusPairing;
use crate::nil_kernel::{
    simple_ratio_with, translation_distance, KernelError, NilPoint, TangentVector, Tolerances,
    TranslationCurve,
};
use crate::vec3::{Vec2, Vec3};
use num::{BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Geometry instance tag with its operation table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Geometry {
    #[default]
    Nil,
    #[serde(alias = "euclidean")]
    Euclid,
}

impl Geometry {
    /// Connecting curve from `a` to `b` and the parameter at which it
    /// reaches `b`. The parameter is translation arc length for Nil and
    /// Euclidean distance for the Euclidean instance.
    pub fn curve_through(
        self,
        a: NilPoint,
        b: NilPoint,
    ) -> Result<(TranslationCurve, f64), KernelError> {
        match self {
            Geometry::Nil => TranslationCurve::through(a, b),
            Geometry::Euclid => {
                let d = b.as_vec3() - a.as_vec3();
                let t = d.norm();
                if t < 1e-14 * (1.0 + a.as_vec3().norm() + b.as_vec3().norm()) {
                    return Err(KernelError::ZeroLength);
                }
                let curve = TranslationCurve::new(a, TangentVector::from_vec3(d * (1.0 / t)))?;
                Ok((curve, t))
            }
        }
    }

    pub fn eval(self, c: &TranslationCurve, t: f64) -> NilPoint {
        match self {
            Geometry::Nil => c.eval(t),
            Geometry::Euclid => NilPoint::from_vec3(c.base().as_vec3() + c.dir().as_vec3() * t),
        }
    }

    pub fn tangent_at(self, c: &TranslationCurve, t: f64) -> TangentVector {
        match self {
            Geometry::Nil => c.tangent_at(t),
            Geometry::Euclid => c.dir(),
        }
    }

    pub fn distance(self, a: NilPoint, b: NilPoint) -> f64 {
        match self {
            Geometry::Nil => translation_distance(a, b),
            Geometry::Euclid => a.model_dist(b),
        }
    }

    /// Curve parameter of `p` and its membership residual.
    pub fn param_of(self, c: &TranslationCurve, p: NilPoint) -> (f64, f64) {
        match self {
            Geometry::Nil => c.param_of(p),
            Geometry::Euclid => {
                let d = p.as_vec3() - c.base().as_vec3();
                let dir = c.dir().as_vec3();
                let t = d.dot(dir);
                (t, (d - dir * t).norm())
            }
        }
    }

    /// Parameter, curve point and Euclidean distance of the point of the
    /// curve nearest to `q`.
    pub fn nearest_point(self, c: &TranslationCurve, q: NilPoint) -> (f64, NilPoint, f64) {
        match self {
            Geometry::Nil => c.nearest_point(q),
            Geometry::Euclid => {
                let (t, residual) = self.param_of(c, q);
                (t, self.eval(c, t), residual)
            }
        }
    }

    pub fn simple_ratio(
        self,
        a: NilPoint,
        p: NilPoint,
        b: NilPoint,
        tol: &Tolerances,
    ) -> Result<f64, KernelError> {
        match self {
            Geometry::Nil => simple_ratio_with(a, p, b, tol),
            Geometry::Euclid => {
                if self.distance(a, b) < tol.coincidence
                    || self.distance(a, p) < tol.coincidence
                    || self.distance(p, b) < tol.coincidence
                {
                    return Err(KernelError::DegeneratePoints);
                }
                let (curve, t_b) = self.curve_through(a, b)?;
                let (t_p, residual) = self.param_of(&curve, p);
                if residual > tol.membership {
                    return Err(KernelError::NotOnCurve {
                        residual,
                        tol: tol.membership,
                    });
                }
                Ok(t_p / (t_b - t_p))
            }
        }
    }

}

/// Vertical plane parallel to a coordinate plane, with the chart that drops
/// the constant coordinate. Nil translation curves between points of such a
/// plane are Euclidean straight segments, which is what makes fibre-type
/// configurations reducible to the planar oracles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VerticalPlane {
    /// Plane `y = const`, charted by `(x, z)`.
    XZ { y: f64 },
    /// Plane `x = const`, charted by `(y, z)`.
    YZ { x: f64 },
}

impl VerticalPlane {
    pub fn lift(self, p: Vec2) -> NilPoint {
        match self {
            VerticalPlane::XZ { y } => NilPoint::new(p.x, y, p.y),
            VerticalPlane::YZ { x } => NilPoint::new(x, p.x, p.y),
        }
    }

    pub fn project(self, p: NilPoint) -> Vec2 {
        match self {
            VerticalPlane::XZ { .. } => Vec2::new(p.x, p.z),
            VerticalPlane::YZ { .. } => Vec2::new(p.y, p.z),
        }
    }
}

// ---------------------------------------------------------------------------
// Exact planar oracles
// ---------------------------------------------------------------------------

pub type Rat = BigRational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("degenerate configuration")]
    DegenerateConfig,
    #[error("line is parallel to a triangle side")]
    ParallelSideLine,
    #[error("line passes through a triangle vertex")]
    ThroughVertex,
}

/// Exact planar point.
#[derive(Debug, Clone, PartialEq)]
pub struct RatPoint {
    pub x: Rat,
    pub y: Rat,
}

impl RatPoint {
    pub fn new(x: Rat, y: Rat) -> Self {
        RatPoint { x, y }
    }

    /// Exact conversion from binary floating point.
    pub fn from_f64(x: f64, y: f64) -> Option<Self> {
        Some(RatPoint::new(Rat::from_float(x)?, Rat::from_float(y)?))
    }

    fn homogeneous(&self) -> [Rat; 3] {
        [self.x.clone(), self.y.clone(), Rat::one()]
    }
}

fn cross_h(a: &[Rat; 3], b: &[Rat; 3]) -> [Rat; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn is_zero_h(v: &[Rat; 3]) -> bool {
    v.iter().all(Zero::is_zero)
}

fn det_h(a: &[Rat; 3], b: &[Rat; 3], c: &[Rat; 3]) -> Rat {
    let cb = cross_h(b, c);
    &a[0] * &cb[0] + &a[1] * &cb[1] + &a[2] * &cb[2]
}

/// Homogeneous line through two distinct points.
fn line_h(a: &RatPoint, b: &RatPoint) -> Result<[Rat; 3], OracleError> {
    let l = cross_h(&a.homogeneous(), &b.homogeneous());
    if is_zero_h(&l) {
        Err(OracleError::DegenerateConfig)
    } else {
        Ok(l)
    }
}

/// Signed simple ratio of exactly collinear planar points.
fn rat_ratio(a: &RatPoint, p: &RatPoint, b: &RatPoint) -> Result<Rat, OracleError> {
    let dx = &b.x - &p.x;
    let dy = &b.y - &p.y;
    if dx.is_zero() && dy.is_zero() {
        return Err(OracleError::DegenerateConfig);
    }
    if dx.abs() >= dy.abs() {
        Ok((&p.x - &a.x) / dx)
    } else {
        Ok((&p.y - &a.y) / dy)
    }
}

fn meet_affine(l1: &[Rat; 3], l2: &[Rat; 3]) -> Result<RatPoint, OracleError> {
    let m = cross_h(l1, l2);
    if m[2].is_zero() {
        Err(OracleError::ParallelSideLine)
    } else {
        Ok(RatPoint::new(&m[0] / &m[2], &m[1] / &m[2]))
    }
}

/// Classical Menelaus product of a triangle cut by the line through `l0` and
/// `l1`, in exact arithmetic; equals −1 whenever the three meets exist and
/// avoid the vertices.
pub fn euclid_menelaus(
    triangle: &[RatPoint; 3],
    l0: &RatPoint,
    l1: &RatPoint,
) -> Result<Rat, OracleError> {
    let [a0, a1, a2] = triangle;
    if det_h(&a0.homogeneous(), &a1.homogeneous(), &a2.homogeneous()).is_zero() {
        return Err(OracleError::DegenerateConfig);
    }
    let line = line_h(l0, l1)?;
    let sides = [(a0, a1), (a1, a2), (a2, a0)];
    let mut product = Rat::one();
    for (start, end) in sides {
        let meet = meet_affine(&line_h(start, end)?, &line)?;
        if &meet == start || &meet == end {
            return Err(OracleError::ThroughVertex);
        }
        product *= rat_ratio(start, &meet, end)?;
    }
    Ok(product)
}

/// Exact signed-ratio product `s(A₀,p,A₁)·s(A₁,q,A₂)·s(A₂,r,A₀)` for points
/// lying exactly on the triangle's side lines.
pub fn ratio_product_exact(
    triangle: &[RatPoint; 3],
    p: &RatPoint,
    q: &RatPoint,
    r: &RatPoint,
) -> Result<Rat, OracleError> {
    let [a0, a1, a2] = triangle;
    let mut product = Rat::one();
    for (start, point, end) in [(a0, p, a1), (a1, q, a2), (a2, r, a0)] {
        if point == start || point == end {
            return Err(OracleError::ThroughVertex);
        }
        product *= rat_ratio(start, point, end)?;
    }
    Ok(product)
}

/// Classical Desargues check in exact arithmetic: true when the meets of
/// corresponding sides of the two triangles are collinear. Ideal meets are
/// handled projectively through the homogeneous coordinates.
pub fn euclid_desargues(a: &[RatPoint; 3], b: &[RatPoint; 3]) -> Result<bool, OracleError> {
    let meets: Vec<[Rat; 3]> = [(0usize, 1usize), (0, 2), (1, 2)]
        .iter()
        .map(|&(i, j)| {
            let la = line_h(&a[i], &a[j])?;
            let lb = line_h(&b[i], &b[j])?;
            let m = cross_h(&la, &lb);
            if is_zero_h(&m) {
                // Coincident side lines carry no meet.
                return Err(OracleError::DegenerateConfig);
            }
            Ok(m)
        })
        .collect::<Result<_, _>>()?;
    Ok(det_h(&meets[0], &meets[1], &meets[2]).is_zero())
}

/// Classical Pappus check in exact arithmetic for either hexagon pairing.
pub fn euclid_pappus(
    a: &[RatPoint; 3],
    b: &[RatPoint; 3],
    pairing: PappusPairing,
) -> Result<bool, OracleError> {
    for pts in [a, b] {
        if pts[0] == pts[1] || pts[0] == pts[2] || pts[1] == pts[2] {
            return Err(OracleError::DegenerateConfig);
        }
    }
    let meets: Vec<[Rat; 3]> = pairing
        .index_pairs()
        .iter()
        .map(|&((i1, j1), (i2, j2))| {
            let l1 = line_h(&a[i1], &b[j1])?;
            let l2 = line_h(&a[i2], &b[j2])?;
            let m = cross_h(&l1, &l2);
            if is_zero_h(&m) {
                return Err(OracleError::DegenerateConfig);
            }
            Ok(m)
        })
        .collect::<Result<_, _>>()?;
    Ok(det_h(&meets[0], &meets[1], &meets[2]).is_zero())
}
