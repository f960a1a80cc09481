//! Closed-form primitives of the affine model of Nil geometry.
//!
//! Points are stored in the affine chart `(x, y, z)` of the projective model;
//! the homogeneous leading 1 is implicit. Translations are Heisenberg group
//! elements `(x, y, z)` composing as
//!
//! ```text
//! (x, y, z) ∘ (a, b, c) = (a + x, b + y, c + x·b + z)
//! ```
//!
//! and acting on points by
//!
//! ```text
//! (a, b, c) · T(x, y, z) = (x + a, y + b, z + b·x + c),
//! ```
//!
//! a left action: iterating `g` then `h` equals acting by `h ∘ g`.
//!
//! A translation curve drags a fixed initial tangent `(u, v, w)` at the
//! origin along the group action, which gives the first-order system
//! `ẋ = u, ẏ = v, ż = v·x + w` with the closed-form solution
//! `(u·t, v·t, ½·u·v·t² + w·t)` from the origin. Conjugating by the
//! translation that carries the origin to `base` yields
//!
//! ```text
//! eval(t) = (x₀ + u·t,  y₀ + v·t,  z₀ + ½·u·v·t² + (v·x₀ + w)·t).
//! ```
//!
//! With the unit-speed convention `u² + v² + w² = 1` the parameter `t` is the
//! translation arc length, so distances and simple ratios read directly off
//! curve parameters. The inversion of the closed form is the chart map
//! `(x, y, z) ↦ (x, y, z − x·y/2)`, which sends curves through the origin to
//! straight rays; it is used for curve fitting and membership residuals.

use crate::vec3::{Vec2, Vec3};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KernelError {
    #[error("translation curve endpoints coincide")]
    ZeroLength,
    #[error("tangent vector has norm {0}, expected unit")]
    NotUnit(f64),
    #[error("point is off the curve: residual {residual:.3e} exceeds {tol:.3e}")]
    NotOnCurve { residual: f64, tol: f64 },
    #[error("points coincide within tolerance")]
    DegeneratePoints,
}

/// Default numeric thresholds; every consumer can override them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Algebraic identities (group laws, conjugacy).
    pub algebraic: f64,
    /// Curve-membership residual in chart coordinates.
    pub membership: f64,
    /// Collinearity verdicts of the theorem checkers.
    pub collinearity: f64,
    /// `|product + 1|` bound for Menelaus-type products.
    pub product: f64,
    /// Accept threshold on the Euclidean residual of a curve intersection.
    pub intersection: f64,
    /// Projected direction angle below which curves count as parallel.
    pub parallel_angle: f64,
    /// Surface-membership bound on the coplanarity functional.
    pub surface: f64,
    /// Distance below which two points count as coincident.
    pub coincidence: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            algebraic: 1e-12,
            membership: 1e-9,
            collinearity: 1e-6,
            product: 1e-6,
            intersection: 1e-9,
            parallel_angle: 1e-10,
            surface: 1e-7,
            coincidence: 1e-9,
        }
    }
}

/// Point of the affine model chart.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NilPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl NilPoint {
    pub const ORIGIN: NilPoint = NilPoint {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        NilPoint { x, y, z }
    }

    pub fn as_vec3(self) -> Vec3 {
        Vec3::new(self.x, self.y, self.z)
    }

    pub fn from_vec3(v: Vec3) -> Self {
        NilPoint::new(v.x, v.y, v.z)
    }

    /// Euclidean distance in model coordinates (used for residuals only).
    pub fn model_dist(self, other: NilPoint) -> f64 {
        self.as_vec3().dist(other.as_vec3())
    }

    /// The translation carrying this point to the origin (group inverse).
    pub fn to_origin(self) -> NilTranslation {
        NilTranslation::new(-self.x, -self.y, self.x * self.y - self.z)
    }

    /// The translation carrying the origin to this point.
    pub fn as_translation(self) -> NilTranslation {
        NilTranslation::new(self.x, self.y, self.z)
    }

    /// Fibre-direction projection onto the `[x, y]` coordinate plane.
    pub fn project_xy(self) -> Vec2 {
        Vec2::new(self.x, self.y)
    }

    /// Rotation through `omega` about the z-axis at the origin.
    ///
    /// An isometry of the model; quadratic in `x, y` on the `z` coordinate.
    pub fn rotated_z(self, omega: f64) -> NilPoint {
        let (s, c) = omega.sin_cos();
        let (s2, c2) = (2.0 * omega).sin_cos();
        let NilPoint { x, y, z } = self;
        NilPoint::new(
            x * c - y * s,
            x * s + y * c,
            z - 0.5 * x * y + 0.25 * (x * x - y * y) * s2 + 0.5 * x * y * c2,
        )
    }
}

/// Heisenberg group element acting on model points by right translation.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NilTranslation {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl NilTranslation {
    pub const IDENTITY: NilTranslation = NilTranslation {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        NilTranslation { x, y, z }
    }

    /// Heisenberg product with `self` as the left factor.
    pub fn compose(self, other: NilTranslation) -> NilTranslation {
        NilTranslation::new(
            other.x + self.x,
            other.y + self.y,
            other.z + self.x * other.y + self.z,
        )
    }

    pub fn inverse(self) -> NilTranslation {
        NilTranslation::new(-self.x, -self.y, self.x * self.y - self.z)
    }

    /// Action on a point; iterated actions compose as `h ∘ g`.
    pub fn apply(self, p: NilPoint) -> NilPoint {
        NilPoint::new(self.x + p.x, self.y + p.y, self.z + p.y * self.x + p.z)
    }
}

/// Tangent vector `(0; u, v, w)` at a model point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TangentVector {
    pub u: f64,
    pub v: f64,
    pub w: f64,
}

impl TangentVector {
    pub fn new(u: f64, v: f64, w: f64) -> Self {
        TangentVector { u, v, w }
    }

    pub fn from_vec3(v: Vec3) -> Self {
        TangentVector::new(v.x, v.y, v.z)
    }

    pub fn as_vec3(self) -> Vec3 {
        Vec3::new(self.u, self.v, self.w)
    }

    pub fn norm(self) -> f64 {
        self.as_vec3().norm()
    }

    pub fn normalized(self) -> Option<TangentVector> {
        self.as_vec3().normalized().map(TangentVector::from_vec3)
    }
}

/// Chart map sending origin-based translation curves to straight rays.
pub(crate) fn chart(p: NilPoint) -> Vec3 {
    Vec3::new(p.x, p.y, p.z - 0.5 * p.x * p.y)
}

/// Unit-speed translation curve: base point plus unit initial tangent of the
/// origin-conjugated curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TranslationCurve {
    base: NilPoint,
    dir: TangentVector,
}

impl TranslationCurve {
    /// Builds a curve from a base point and a direction, normalizing the
    /// direction to unit length.
    pub fn new(base: NilPoint, dir: TangentVector) -> Result<Self, KernelError> {
        let unit = dir.normalized().ok_or(KernelError::ZeroLength)?;
        Ok(TranslationCurve { base, dir: unit })
    }

    /// Curve based at the origin reaching `b` at the returned arc length.
    pub fn from_origin_to(b: NilPoint) -> Result<(Self, f64), KernelError> {
        let d = chart(b);
        let t = d.norm();
        if t < 1e-14 * (1.0 + b.as_vec3().norm()) {
            return Err(KernelError::ZeroLength);
        }
        let dir = TangentVector::from_vec3(d * (1.0 / t));
        Ok((
            TranslationCurve {
                base: NilPoint::ORIGIN,
                dir,
            },
            t,
        ))
    }

    /// Curve based at `a` reaching `b` at the returned arc length, computed
    /// by conjugating `a` to the origin.
    pub fn through(a: NilPoint, b: NilPoint) -> Result<(Self, f64), KernelError> {
        let b_local = a.to_origin().apply(b);
        let d = chart(b_local);
        let t = d.norm();
        if t < 1e-14 * (1.0 + a.as_vec3().norm() + b.as_vec3().norm()) {
            return Err(KernelError::ZeroLength);
        }
        let dir = TangentVector::from_vec3(d * (1.0 / t));
        Ok((TranslationCurve { base: a, dir }, t))
    }

    pub fn base(&self) -> NilPoint {
        self.base
    }

    pub fn dir(&self) -> TangentVector {
        self.dir
    }

    /// Closed-form evaluation, conjugated to the curve's base point.
    pub fn eval(&self, t: f64) -> NilPoint {
        let TangentVector { u, v, w } = self.dir;
        let b = self.base;
        NilPoint::new(
            b.x + u * t,
            b.y + v * t,
            b.z + 0.5 * u * v * t * t + (v * b.x + w) * t,
        )
    }

    /// Tangent vector at parameter `t` in model coordinates.
    pub fn tangent_at(&self, t: f64) -> TangentVector {
        let TangentVector { u, v, w } = self.dir;
        let x_t = self.base.x + u * t;
        TangentVector::new(u, v, v * x_t + w)
    }

    /// Second parameter derivative (constant along the curve).
    pub(crate) fn accel(&self) -> Vec3 {
        Vec3::new(0.0, 0.0, self.dir.u * self.dir.v)
    }

    /// Orthogonal curve parameter of `p` in chart coordinates, with the
    /// membership residual (distance of `p` from the curve in the chart).
    pub fn param_of(&self, p: NilPoint) -> (f64, f64) {
        let local = self.base.to_origin().apply(p);
        let d = chart(local);
        let dir = self.dir.as_vec3();
        let t = d.dot(dir);
        let residual = (d - dir * t).norm();
        (t, residual)
    }

    /// Parameter, nearest curve point and Euclidean distance from `q`,
    /// minimized over the parameter by a coarse scan, golden-section
    /// narrowing and a Newton polish.
    pub fn nearest_point(&self, q: NilPoint) -> (f64, NilPoint, f64) {
        let qv = q.as_vec3();
        let dist2 = |t: f64| self.eval(t).as_vec3() - qv;
        let phi = |t: f64| {
            let d = dist2(t);
            d.dot(d)
        };
        let (seed, _) = self.param_of(q);
        let r0 = self.eval(seed).model_dist(q);
        let sigma = self.dir.u.hypot(self.dir.v);
        let span = (8.0 * (r0 + 1.0) / sigma.max(0.05)).min(1e4);

        let n = 256;
        let mut best_t = seed;
        let mut best_phi = phi(seed);
        for i in 0..=n {
            let t = seed - span + 2.0 * span * (i as f64) / (n as f64);
            let p = phi(t);
            if p < best_phi {
                best_phi = p;
                best_t = t;
            }
        }

        // Golden-section narrowing around the best coarse sample.
        let step = 2.0 * span / (n as f64);
        let (mut lo, mut hi) = (best_t - step, best_t + step);
        let inv_phi = 0.618_033_988_749_894_9;
        let mut c = hi - inv_phi * (hi - lo);
        let mut d = lo + inv_phi * (hi - lo);
        let (mut fc, mut fd) = (phi(c), phi(d));
        for _ in 0..60 {
            if fc < fd {
                hi = d;
                d = c;
                fd = fc;
                c = hi - inv_phi * (hi - lo);
                fc = phi(c);
            } else {
                lo = c;
                c = d;
                fc = fd;
                d = lo + inv_phi * (hi - lo);
                fd = phi(d);
            }
            if hi - lo < 1e-14 * (1.0 + best_t.abs()) {
                break;
            }
        }
        let mut t = 0.5 * (lo + hi);

        // Newton polish on the analytic derivative of the squared distance.
        let acc = self.accel();
        for _ in 0..12 {
            let e = dist2(t);
            let de = self.tangent_at(t).as_vec3();
            let g = 2.0 * e.dot(de);
            let h = 2.0 * (de.dot(de) + e.dot(acc));
            if h <= 0.0 {
                break;
            }
            let step = g / h;
            let t_new = t - step;
            if phi(t_new) <= phi(t) {
                t = t_new;
            } else {
                break;
            }
            if step.abs() < 1e-15 * (1.0 + t.abs()) {
                break;
            }
        }
        if phi(best_t) < phi(t) {
            t = best_t;
        }
        let p = self.eval(t);
        (t, p, p.model_dist(q))
    }
}

/// Arc length of the translation curve from `a` to `b`; zero when the points
/// coincide. Defined as the parameter length of the connecting curve.
pub fn translation_distance(a: NilPoint, b: NilPoint) -> f64 {
    chart(a.to_origin().apply(b)).norm()
}

/// Signed simple ratio `s(a, p, b)` of three points on one translation curve:
/// magnitude `d(a,p)/d(p,b)`, positive exactly when `p` lies between `a` and
/// `b` in curve parameter.
pub fn simple_ratio(a: NilPoint, p: NilPoint, b: NilPoint) -> Result<f64, KernelError> {
    simple_ratio_with(a, p, b, &Tolerances::default())
}

pub fn simple_ratio_with(
    a: NilPoint,
    p: NilPoint,
    b: NilPoint,
    tol: &Tolerances,
) -> Result<f64, KernelError> {
    if translation_distance(a, b) < tol.coincidence
        || translation_distance(a, p) < tol.coincidence
        || translation_distance(p, b) < tol.coincidence
    {
        return Err(KernelError::DegeneratePoints);
    }
    let (curve, t_b) = TranslationCurve::through(a, b)?;
    let (t_p, residual) = curve.param_of(p);
    if residual > tol.membership {
        return Err(KernelError::NotOnCurve {
            residual,
            tol: tol.membership,
        });
    }
    Ok(t_p / (t_b - t_p))
}

/// Geographic parametrization of a unit tangent vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeographicParams {
    /// Longitude in `[-π, π]`.
    pub phi: f64,
    /// Latitude in `[-π/2, π/2]`.
    pub theta: f64,
}

impl GeographicParams {
    pub fn direction(&self) -> TangentVector {
        TangentVector::new(
            self.theta.cos() * self.phi.cos(),
            self.theta.cos() * self.phi.sin(),
            self.theta.sin(),
        )
    }
}

/// Geographic angles of a unit direction; at the poles `phi` is 0.
pub fn geographic(dir: TangentVector) -> Result<GeographicParams, KernelError> {
    let n = dir.norm();
    if (n - 1.0).abs() > 1e-9 {
        return Err(KernelError::NotUnit(n));
    }
    Ok(GeographicParams {
        phi: dir.v.atan2(dir.u),
        theta: dir.w.clamp(-1.0, 1.0).asin(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const O: NilPoint = NilPoint::ORIGIN;

    fn pt(x: f64, y: f64, z: f64) -> NilPoint {
        NilPoint::new(x, y, z)
    }

    fn tr(x: f64, y: f64, z: f64) -> NilTranslation {
        NilTranslation::new(x, y, z)
    }

    #[test]
    fn compose_matches_matrix_product() {
        let g = tr(1.0, 0.0, 0.0).compose(tr(0.0, 1.0, 0.0));
        assert_eq!(g, tr(1.0, 1.0, 1.0));
        // Reversed order demonstrates non-commutativity.
        let h = tr(0.0, 1.0, 0.0).compose(tr(1.0, 0.0, 0.0));
        assert_eq!(h, tr(1.0, 1.0, 0.0));
        let g = tr(0.3, -0.7, 2.1);
        assert_eq!(g.compose(NilTranslation::IDENTITY), g);
        assert_eq!(NilTranslation::IDENTITY.compose(g), g);
    }

    #[test]
    fn apply_matches_right_translation_formula() {
        assert_eq!(tr(4.0, 5.0, 6.0).apply(pt(1.0, 2.0, 3.0)), pt(5.0, 7.0, 17.0));
        assert_eq!(tr(0.4, -1.0, 2.0).apply(O), pt(0.4, -1.0, 2.0));
    }

    #[test]
    fn to_origin_inverts_the_point() {
        let p = pt(1.0, 1.0, 1.0);
        assert_eq!(p.to_origin(), tr(-1.0, -1.0, 0.0));
        assert_eq!(p.to_origin().apply(p), O);
        assert_eq!(O.to_origin(), NilTranslation::IDENTITY);
        assert_eq!(pt(2.0, 3.0, 7.0).to_origin(), tr(-2.0, -3.0, -1.0));
    }

    #[test]
    fn rotation_basic_cases() {
        let r = pt(1.0, 0.0, 0.0).rotated_z(std::f64::consts::FRAC_PI_2);
        assert!(r.model_dist(pt(0.0, 1.0, 0.0)) < 1e-15);
        let p = pt(0.3, -0.8, 1.7);
        assert!(p.rotated_z(0.0).model_dist(p) < 1e-15);
    }

    /// Independent route for the rotation: shear to chart coordinates, apply
    /// the linear rotation, shear back.
    fn rotate_via_conjugacy(p: NilPoint, omega: f64) -> NilPoint {
        let shear_down = |p: NilPoint| (p.x, p.y, p.z - 0.5 * p.x * p.y);
        let (x1, y1, z1) = shear_down(p);
        let (s, c) = omega.sin_cos();
        let (x2, y2, z2) = (x1 * c - y1 * s, x1 * s + y1 * c, z1);
        NilPoint::new(x2, y2, z2 + 0.5 * x2 * y2)
    }

    #[test]
    fn rotation_agrees_with_shear_conjugacy() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 4.0 - 2.0
        };
        for _ in 0..500 {
            let p = pt(next(), next(), next());
            let omega = next() * std::f64::consts::PI;
            let a = p.rotated_z(omega);
            let b = rotate_via_conjugacy(p, omega);
            assert!(a.model_dist(b) < 1e-12, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn rotation_preserves_translation_distance_from_origin() {
        let p = pt(0.9, -0.4, 0.6);
        for k in 0..12 {
            let omega = k as f64 * 0.5;
            let d0 = translation_distance(O, p);
            let d1 = translation_distance(O, p.rotated_z(omega));
            assert!((d0 - d1).abs() < 1e-10);
        }
    }

    #[test]
    fn curve_from_origin_closed_form() {
        let (c, t) = TranslationCurve::from_origin_to(pt(1.0, 1.0, 1.0)).unwrap();
        assert!((t - 1.5).abs() < 1e-15);
        let d = c.dir();
        assert!((d.u - 2.0 / 3.0).abs() < 1e-15);
        assert!((d.v - 2.0 / 3.0).abs() < 1e-15);
        assert!((d.w - 1.0 / 3.0).abs() < 1e-15);
        assert!(c.eval(t).model_dist(pt(1.0, 1.0, 1.0)) < 1e-15);

        let (c, t) = TranslationCurve::from_origin_to(pt(2.0, 0.0, 0.0)).unwrap();
        assert!((t - 2.0).abs() < 1e-15);
        assert_eq!(c.dir(), TangentVector::new(1.0, 0.0, 0.0));

        // Fibre direction.
        let (c, t) = TranslationCurve::from_origin_to(pt(0.0, 0.0, 5.0)).unwrap();
        assert!((t - 5.0).abs() < 1e-15);
        assert_eq!(c.dir(), TangentVector::new(0.0, 0.0, 1.0));

        assert_eq!(
            TranslationCurve::from_origin_to(O).unwrap_err(),
            KernelError::ZeroLength
        );
    }

    #[test]
    fn curve_through_translates_the_problem() {
        let (c, t) = TranslationCurve::through(O, pt(1.0, 1.0, 1.0)).unwrap();
        assert!((t - 1.5).abs() < 1e-15);
        assert!(c.eval(t).model_dist(pt(1.0, 1.0, 1.0)) < 1e-15);

        let (c, t) = TranslationCurve::through(pt(1.0, 0.0, 0.0), pt(2.0, 0.0, 0.0)).unwrap();
        assert!((t - 1.0).abs() < 1e-15);
        assert_eq!(c.dir(), TangentVector::new(1.0, 0.0, 0.0));

        assert_eq!(
            TranslationCurve::through(pt(0.5, 0.5, 0.5), pt(0.5, 0.5, 0.5)).unwrap_err(),
            KernelError::ZeroLength
        );
    }

    #[test]
    fn curve_eval_examples() {
        let c = TranslationCurve::new(O, TangentVector::new(0.6, 0.8, 0.0)).unwrap();
        let p = c.eval(1.0);
        assert!(p.model_dist(pt(0.6, 0.8, 0.24)) < 1e-15);
        assert_eq!(c.eval(0.0), O);

        let c = TranslationCurve::new(O, TangentVector::new(1.0, 0.0, 0.0)).unwrap();
        assert_eq!(c.eval(-1.0), pt(-1.0, 0.0, 0.0));
    }

    #[test]
    fn tangent_examples_and_finite_difference() {
        let c = TranslationCurve::new(O, TangentVector::new(1.0, 0.0, 0.0)).unwrap();
        for t in [-2.0, 0.0, 0.7] {
            assert_eq!(c.tangent_at(t), TangentVector::new(1.0, 0.0, 0.0));
        }

        let c = TranslationCurve::new(O, TangentVector::new(0.6, 0.8, 0.0)).unwrap();
        let tau = c.tangent_at(1.0);
        assert!(tau.as_vec3().dist(Vec3::new(0.6, 0.8, 0.48)) < 1e-15);

        // Cross-check against a centered finite difference of eval.
        let h = 1e-6;
        let fd = (c.eval(1.0 + h).as_vec3() - c.eval(1.0 - h).as_vec3()) * (0.5 / h);
        assert!(fd.dist(tau.as_vec3()) < 1e-9);

        let (c, _) = TranslationCurve::through(O, pt(0.3, -0.9, 0.2)).unwrap();
        assert_eq!(c.tangent_at(0.0), c.dir());
    }

    #[test]
    fn translation_distance_examples() {
        assert!((translation_distance(O, pt(1.0, 1.0, 1.0)) - 1.5).abs() < 1e-15);
        assert_eq!(translation_distance(pt(0.2, 0.3, 0.4), pt(0.2, 0.3, 0.4)), 0.0);
        assert!((translation_distance(O, pt(3.0, 4.0, 6.0)) - 5.0).abs() < 1e-15);
    }

    #[test]
    fn geographic_round_trip_and_poles() {
        let g = geographic(TangentVector::new(1.0, 0.0, 0.0)).unwrap();
        assert_eq!((g.phi, g.theta), (0.0, 0.0));

        let g = geographic(TangentVector::new(0.0, 0.0, 1.0)).unwrap();
        assert_eq!(g.phi, 0.0);
        assert!((g.theta - std::f64::consts::FRAC_PI_2).abs() < 1e-15);

        let dir = TangentVector::new(
            0.3f64.cos() * 1.1f64.cos(),
            0.3f64.cos() * 1.1f64.sin(),
            0.3f64.sin(),
        );
        let g = geographic(dir).unwrap();
        assert!((g.phi - 1.1).abs() < 1e-12);
        assert!((g.theta - 0.3).abs() < 1e-12);
        assert!(g.direction().as_vec3().dist(dir.as_vec3()) < 1e-12);

        assert!(matches!(
            geographic(TangentVector::new(1.0, 1.0, 0.0)),
            Err(KernelError::NotUnit(_))
        ));
    }

    #[test]
    fn xy_projection_of_curves() {
        assert_eq!(pt(1.0, 2.0, 3.0).project_xy(), Vec2::new(1.0, 2.0));

        // Non-fibre curve: projected samples are collinear.
        let (c, t) = TranslationCurve::through(pt(0.2, -0.4, 0.7), pt(-0.8, 0.9, 0.1)).unwrap();
        let a = c.eval(0.0).project_xy();
        let b = c.eval(t).project_xy();
        let line_dir = (b - a).normalized().unwrap();
        for i in 0..=10 {
            let p = c.eval(t * i as f64 / 10.0).project_xy();
            let off = (p - a).cross(line_dir);
            assert!(off.abs() < 1e-10);
        }

        // Fibre curve: the projection is a single point.
        let c = TranslationCurve::new(pt(0.3, 0.4, 0.0), TangentVector::new(0.0, 0.0, 1.0)).unwrap();
        for i in 0..=10 {
            assert!(c.eval(i as f64 / 2.0).project_xy().dist(Vec2::new(0.3, 0.4)) < 1e-15);
        }
    }

    #[test]
    fn non_fibre_curves_live_in_vertical_planes() {
        let (c, t) = TranslationCurve::through(pt(0.1, 0.2, -0.5), pt(0.9, -0.7, 0.8)).unwrap();
        let a = c.eval(0.0).project_xy();
        let dir = (c.eval(t).project_xy() - a).normalized().unwrap();
        let normal = Vec2::new(-dir.y, dir.x);
        for i in -3..=13 {
            let p = c.eval(t * i as f64 / 10.0);
            assert!((p.project_xy() - a).dot(normal).abs() < 1e-10);
        }
    }

    #[test]
    fn planar_pairs_give_straight_segments() {
        // [x, z] plane.
        let a = pt(0.2, 0.0, 0.6);
        let b = pt(-0.7, 0.0, 0.1);
        let (c, t) = TranslationCurve::through(a, b).unwrap();
        let dir = (b.as_vec3() - a.as_vec3()).normalized().unwrap();
        for i in 0..=10 {
            let p = c.eval(t * i as f64 / 10.0).as_vec3() - a.as_vec3();
            assert!((p - dir * p.dot(dir)).norm() < 1e-10);
        }
        // [y, z] plane.
        let a = pt(0.0, -0.3, 0.2);
        let b = pt(0.0, 0.8, -0.9);
        let (c, t) = TranslationCurve::through(a, b).unwrap();
        let dir = (b.as_vec3() - a.as_vec3()).normalized().unwrap();
        for i in 0..=10 {
            let p = c.eval(t * i as f64 / 10.0).as_vec3() - a.as_vec3();
            assert!((p - dir * p.dot(dir)).norm() < 1e-10);
        }
    }

    #[test]
    fn simple_ratio_examples() {
        let s = simple_ratio(O, pt(1.0, 0.0, 0.0), pt(2.0, 0.0, 0.0)).unwrap();
        assert!((s - 1.0).abs() < 1e-14);

        // Point beyond b: magnitude 2, negative sign.
        let s = simple_ratio(O, pt(2.0, 0.0, 0.0), pt(1.0, 0.0, 0.0)).unwrap();
        assert!((s + 2.0).abs() < 1e-14);

        let b = pt(1.0, 1.0, 1.0);
        let (c, _) = TranslationCurve::from_origin_to(b).unwrap();
        let p = c.eval(0.5);
        let s = simple_ratio(O, p, b).unwrap();
        assert!((s - 0.5).abs() < 1e-13);

        assert!(matches!(
            simple_ratio(O, pt(1.0, 1.0, 0.0), pt(1.0, 0.0, 0.0)),
            Err(KernelError::NotOnCurve { .. })
        ));
        assert!(matches!(
            simple_ratio(O, O, pt(1.0, 0.0, 0.0)),
            Err(KernelError::DegeneratePoints)
        ));
    }

    #[test]
    fn simple_ratio_projects_to_euclidean_ratio() {
        // Lemma-style consistency: the ratio of a non-fibre triple equals the
        // planar ratio of the xy projections.
        let a = pt(0.3, -0.2, 0.5);
        let b = pt(-0.6, 0.9, -0.1);
        let (c, t) = TranslationCurve::through(a, b).unwrap();
        for lam in [0.25, 0.5, 0.75, 1.4, -0.3] {
            let p = c.eval(lam * t);
            let s = simple_ratio(a, p, b).unwrap();
            let (ap, pp, bp) = (a.project_xy(), p.project_xy(), b.project_xy());
            let chord = (bp - ap).normalized().unwrap();
            let ta = (pp - ap).dot(chord);
            let tb = (bp - pp).dot(chord);
            assert!((s - ta / tb).abs() < 1e-10, "lam={lam}");
            // Reciprocal consistency through the reversed curve.
            let s_rev = simple_ratio(b, p, a).unwrap();
            assert!((s * s_rev - 1.0).abs() < 1e-10);
        }
        // Fibre triple: ratio of z coordinates.
        let a = pt(0.1, 0.2, 0.0);
        let b = pt(0.1, 0.2, 1.0);
        let p = pt(0.1, 0.2, 0.25);
        let s = simple_ratio(a, p, b).unwrap();
        assert!((s - 0.25 / 0.75).abs() < 1e-14);
    }

    #[test]
    fn arc_length_parametrization_is_additive() {
        let (c, _) = TranslationCurve::through(pt(0.4, 0.1, -0.3), pt(-0.5, 0.8, 0.9)).unwrap();
        for (t1, t2) in [(0.0, 1.0), (-0.7, 0.4), (0.3, 2.1)] {
            let d = translation_distance(c.eval(t1), c.eval(t2));
            assert!((d - (t2 - t1).abs()).abs() < 1e-10);
        }
    }

    #[test]
    fn nearest_point_recovers_on_curve_points() {
        let (c, t) = TranslationCurve::through(pt(0.2, 0.4, -0.1), pt(-0.9, 0.3, 0.8)).unwrap();
        let q = c.eval(0.37 * t);
        let (t_star, p, d) = c.nearest_point(q);
        assert!(d < 1e-12);
        assert!((t_star - 0.37 * t).abs() < 1e-9);
        assert!(p.model_dist(q) < 1e-12);

        // Off-curve point: distance positive and no smaller than the chart gap.
        let q_off = NilPoint::new(q.x, q.y, q.z + 0.3);
        let (_, _, d_off) = c.nearest_point(q_off);
        assert!(d_off > 0.05 && d_off <= 0.3 + 1e-12);
    }

    proptest! {
        #[test]
        fn prop_action_law(
            px in -2.0..2.0f64, py in -2.0..2.0f64, pz in -2.0..2.0f64,
            gx in -2.0..2.0f64, gy in -2.0..2.0f64, gz in -2.0..2.0f64,
            hx in -2.0..2.0f64, hy in -2.0..2.0f64, hz in -2.0..2.0f64,
        ) {
            let p = pt(px, py, pz);
            let g = tr(gx, gy, gz);
            let h = tr(hx, hy, hz);
            let lhs = h.apply(g.apply(p));
            let rhs = h.compose(g).apply(p);
            prop_assert!(lhs.model_dist(rhs) < 1e-12);
        }

        #[test]
        fn prop_compose_is_associative(
            ax in -2.0..2.0f64, ay in -2.0..2.0f64, az in -2.0..2.0f64,
            bx in -2.0..2.0f64, by in -2.0..2.0f64, bz in -2.0..2.0f64,
            cx in -2.0..2.0f64, cy in -2.0..2.0f64, cz in -2.0..2.0f64,
        ) {
            let (a, b, c) = (tr(ax, ay, az), tr(bx, by, bz), tr(cx, cy, cz));
            let lhs = a.compose(b).compose(c);
            let rhs = a.compose(b.compose(c));
            prop_assert!((lhs.x - rhs.x).abs() < 1e-12);
            prop_assert!((lhs.y - rhs.y).abs() < 1e-12);
            prop_assert!((lhs.z - rhs.z).abs() < 1e-12);
        }

        #[test]
        fn prop_inverse_law(
            px in -3.0..3.0f64, py in -3.0..3.0f64, pz in -3.0..3.0f64,
        ) {
            let p = pt(px, py, pz);
            prop_assert!(p.to_origin().apply(p).model_dist(O) < 1e-14);
        }

        #[test]
        fn prop_curve_round_trip(
            ax in -1.0..1.0f64, ay in -1.0..1.0f64, az in -1.0..1.0f64,
            bx in -1.0..1.0f64, by in -1.0..1.0f64, bz in -1.0..1.0f64,
        ) {
            let a = pt(ax, ay, az);
            let b = pt(bx, by, bz);
            prop_assume!(a.model_dist(b) > 1e-6);
            let (c, t) = TranslationCurve::through(a, b).unwrap();
            prop_assert!(c.eval(t).model_dist(b) < 1e-12);
            prop_assert!(c.eval(0.0).model_dist(a) == 0.0);
        }
    }
}
