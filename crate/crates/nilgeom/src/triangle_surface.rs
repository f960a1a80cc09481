//! Implicit translation-triangle surfaces.
//!
//! The surface of a triangle is the zero set of the coplanarity functional
//! `F(p) = det[w₀ w₁ w₂]`, where `wᵢ` is the unit tangent at `p` of the
//! connecting curve from `p` towards vertex `i`. Side curves lie on the
//! surface (the two tangents towards a side's endpoints are anti-parallel),
//! and so does the connecting curve of any two surface points, which the
//! tests verify as a property rather than assume.
//!
//! A triangle whose surface is a Euclidean plane is fibre type; everything
//! else is general type. Classification probes the functional on the plane
//! through the vertices.

use crate::euclid_oracle::Geometry;
use crate::nil_kernel::{KernelError, NilPoint, Tolerances, TranslationCurve};
use crate::vec3::{det3, Vec3};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SurfaceError {
    #[error("triangle vertices coincide (distance {0:.3e})")]
    DegenerateVertices(f64),
    #[error("triangle vertices lie on one connecting curve (residual {0:.3e})")]
    CollinearVertices(f64),
    #[error("point coincides with a triangle vertex")]
    AtVertex,
    #[error("surface projection did not converge; best residual {best_residual:.3e}")]
    NoConvergence { best_residual: f64 },
    #[error("no surface point found inside the sampling bounds")]
    EmptyMesh,
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// Euclidean plane `normal · x = offset` with unit normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneParams {
    pub normal: Vec3,
    pub offset: f64,
}

impl PlaneParams {
    pub fn signed_distance(&self, p: NilPoint) -> f64 {
        self.normal.dot(p.as_vec3()) - self.offset
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SurfaceClass {
    FibreType { plane: PlaneParams },
    GeneralType,
}

/// Rectangular `(x, y)` sampling window for the mesher.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridBounds {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

#[derive(Debug, Clone, Default)]
pub struct TriangleMesh {
    pub vertices: Vec<NilPoint>,
    pub faces: Vec<[usize; 3]>,
    /// Grid cells dropped because some corner fibre carried no bracketed root.
    pub skipped_cells: usize,
}

/// Translation triangle together with its implicit surface.
#[derive(Debug, Clone)]
pub struct TriangleSurface {
    geom: Geometry,
    vertices: [NilPoint; 3],
    sides: [(TranslationCurve, f64); 3],
    /// Half-width of the z bracket used by the root solvers.
    bracket: f64,
}

impl TriangleSurface {
    pub fn new(geom: Geometry, vertices: [NilPoint; 3]) -> Result<Self, SurfaceError> {
        Self::with_tolerances(geom, vertices, &Tolerances::default())
    }

    pub fn with_tolerances(
        geom: Geometry,
        vertices: [NilPoint; 3],
        tol: &Tolerances,
    ) -> Result<Self, SurfaceError> {
        let mut max_d = 0.0f64;
        for i in 0..3 {
            for j in (i + 1)..3 {
                let d = geom.distance(vertices[i], vertices[j]);
                if d <= tol.coincidence {
                    return Err(SurfaceError::DegenerateVertices(d));
                }
                max_d = max_d.max(d);
            }
        }
        let (c01, _) = geom.curve_through(vertices[0], vertices[1])?;
        let (_, _, off) = geom.nearest_point(&c01, vertices[2]);
        if off <= 1e-8 {
            return Err(SurfaceError::CollinearVertices(off));
        }
        let sides = [
            geom.curve_through(vertices[0], vertices[1])?,
            geom.curve_through(vertices[1], vertices[2])?,
            geom.curve_through(vertices[2], vertices[0])?,
        ];
        Ok(TriangleSurface {
            geom,
            vertices,
            sides,
            bracket: 2.0 * max_d,
        })
    }

    /// Nil-instance constructor.
    pub fn from_vertices(vertices: [NilPoint; 3]) -> Result<Self, SurfaceError> {
        Self::new(Geometry::Nil, vertices)
    }

    pub fn geometry(&self) -> Geometry {
        self.geom
    }

    pub fn vertices(&self) -> [NilPoint; 3] {
        self.vertices
    }

    /// Side curve from vertex `i` to vertex `(i + 1) % 3` and its length.
    pub fn side(&self, i: usize) -> &(TranslationCurve, f64) {
        &self.sides[i]
    }

    /// Coplanarity functional: determinant of the unit tangents drawn from
    /// `p` towards the three vertices. Undefined at the vertices.
    pub fn functional(&self, p: NilPoint) -> Result<f64, SurfaceError> {
        let mut cols = [Vec3::ZERO; 3];
        for (i, &v) in self.vertices.iter().enumerate() {
            if self.geom.distance(p, v) < 1e-9 {
                return Err(SurfaceError::AtVertex);
            }
            let (curve, _) = self.geom.curve_through(p, v)?;
            let tangent = self.geom.tangent_at(&curve, 0.0).as_vec3();
            cols[i] = tangent.normalized().ok_or(SurfaceError::AtVertex)?;
        }
        Ok(det3(cols[0], cols[1], cols[2]))
    }

    /// Surface membership within `tol`; vertices are members by convention.
    pub fn contains(&self, p: NilPoint, tol: f64) -> Result<bool, SurfaceError> {
        if self.vertices.iter().any(|&v| self.geom.distance(p, v) < 1e-9) {
            return Ok(true);
        }
        Ok(self.functional(p)?.abs() < tol)
    }

    fn z_range(&self) -> (f64, f64) {
        let zs = self.vertices.map(|v| v.z);
        let lo = zs.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = zs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        (lo - self.bracket, hi + self.bracket)
    }

    fn functional_at(&self, x: f64, y: f64, z: f64) -> Option<f64> {
        self.functional(NilPoint::new(x, y, z)).ok()
    }

    /// Pulls `q` onto the surface: one-dimensional Newton along the z fibre
    /// through `q`, restarted by bracketed bisection, with a normal-flow
    /// fallback along the gradient when the fibre carries no root.
    pub fn project(&self, q: NilPoint) -> Result<NilPoint, SurfaceError> {
        if self.vertices.iter().any(|&v| self.geom.distance(q, v) < 1e-9) {
            return Ok(q);
        }
        let target = 1e-10;
        let f0 = self.functional(q)?;
        if f0.abs() <= 1e-13 {
            return Ok(q);
        }

        let mut best = (q, f0.abs());

        // The functional decays to zero along every fibre as |z| grows (all
        // three tangents approach the fibre direction), so the fibre Newton
        // must stay inside the scale-aware bracket to avoid chasing that
        // asymptote instead of a genuine crossing.
        let (range_lo, range_hi) = self.z_range();
        let (zlo, zhi) = (range_lo.min(q.z - 1.0), range_hi.max(q.z + 1.0));

        let mut z = q.z;
        let mut f = f0;
        for _ in 0..40 {
            let h = 1e-6 * (1.0 + z.abs());
            let (fp, fm) = match (
                self.functional_at(q.x, q.y, z + h),
                self.functional_at(q.x, q.y, z - h),
            ) {
                (Some(a), Some(b)) => (a, b),
                _ => break,
            };
            let deriv = (fp - fm) / (2.0 * h);
            if deriv.abs() < 1e-14 {
                break;
            }
            let z_next = z - f / deriv;
            if z_next < zlo || z_next > zhi {
                break;
            }
            z = z_next;
            f = match self.functional_at(q.x, q.y, z) {
                Some(v) => v,
                None => break,
            };
            if f.abs() < best.1 {
                best = (NilPoint::new(q.x, q.y, z), f.abs());
            }
            if f.abs() < 1e-13 {
                return Ok(NilPoint::new(q.x, q.y, z));
            }
        }
        if best.1 < target {
            return Ok(best.0);
        }

        // Bracketed bisection along the fibre, scanning outward from q.z.
        if let Some(p) = self.fibre_root(q.x, q.y, q.z, zlo, zhi) {
            if let Some(f) = self.functional_at(p.x, p.y, p.z) {
                if f.abs() < best.1 {
                    best = (p, f.abs());
                }
                if f.abs() < target {
                    return Ok(p);
                }
            }
        }

        // Directional fallback. The functional decays to zero far from the
        // configuration in every direction (the vertex tangents become
        // parallel), so gradient descent on |F| runs away; a genuine surface
        // crossing is a sign change instead. Probe expanding steps along the
        // gradient and axis directions, breadth first, and bisect the first
        // bracketed crossing.
        let h = 1e-6;
        let grad = Vec3::new(
            (self.functional_at(q.x + h, q.y, q.z).unwrap_or(f0)
                - self.functional_at(q.x - h, q.y, q.z).unwrap_or(f0))
                / (2.0 * h),
            (self.functional_at(q.x, q.y + h, q.z).unwrap_or(f0)
                - self.functional_at(q.x, q.y - h, q.z).unwrap_or(f0))
                / (2.0 * h),
            (self.functional_at(q.x, q.y, q.z + h).unwrap_or(f0)
                - self.functional_at(q.x, q.y, q.z - h).unwrap_or(f0))
                / (2.0 * h),
        );
        let mut dirs = Vec::new();
        if let Some(g) = grad.normalized() {
            dirs.push(g);
            dirs.push(-g);
        }
        dirs.extend_from_slice(&[
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(-1.0, 0.0, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
            Vec3::new(0.0, -1.0, 0.0),
            Vec3::new(0.0, 0.0, 1.0),
            Vec3::new(0.0, 0.0, -1.0),
        ]);
        let scale = 1.0 + self.bracket;
        let steps: Vec<f64> = (0..14).map(|k| scale * 0.01 * 1.6f64.powi(k)).collect();
        let mut prev: Vec<(f64, f64)> = dirs.iter().map(|_| (0.0, f0)).collect();
        for &s in &steps {
            for (di, &d) in dirs.iter().enumerate() {
                let sample = NilPoint::from_vec3(q.as_vec3() + d * s);
                let Ok(f) = self.functional(sample) else {
                    continue;
                };
                let (s_prev, f_prev) = prev[di];
                if f_prev * f < 0.0 {
                    if let Some(p) = self.bisect_segment(q, d, s_prev, f_prev, s, f) {
                        if let Ok(fr) = self.functional(p) {
                            if fr.abs() < best.1 {
                                best = (p, fr.abs());
                            }
                            if fr.abs() < target {
                                return Ok(p);
                            }
                        }
                    }
                }
                prev[di] = (s, f);
            }
        }
        if best.1 < target {
            Ok(best.0)
        } else {
            Err(SurfaceError::NoConvergence {
                best_residual: best.1,
            })
        }
    }

    /// Bisects a bracketed sign change of the functional along the ray
    /// `q + s·d`.
    fn bisect_segment(
        &self,
        q: NilPoint,
        d: Vec3,
        mut lo: f64,
        mut flo: f64,
        mut hi: f64,
        _fhi: f64,
    ) -> Option<NilPoint> {
        for _ in 0..80 {
            let m = 0.5 * (lo + hi);
            let p = NilPoint::from_vec3(q.as_vec3() + d * m);
            let fm = self.functional(p).ok()?;
            if fm == 0.0 {
                return Some(p);
            }
            if flo * fm < 0.0 {
                hi = m;
            } else {
                lo = m;
                flo = fm;
            }
        }
        Some(NilPoint::from_vec3(q.as_vec3() + d * (0.5 * (lo + hi))))
    }

    /// First bracketed root of the functional on the fibre through `(x, y)`,
    /// searching subintervals outward from `z_center`.
    fn fibre_root(&self, x: f64, y: f64, z_center: f64, zlo: f64, zhi: f64) -> Option<NilPoint> {
        const SUBDIV: usize = 96;
        let step = (zhi - zlo) / SUBDIV as f64;
        let mid = |i: usize| zlo + (i as f64 + 0.5) * step;
        let mut order: Vec<usize> = (0..SUBDIV).collect();
        order.sort_by(|&a, &b| {
            (mid(a) - z_center)
                .abs()
                .partial_cmp(&(mid(b) - z_center).abs())
                .unwrap()
                .then(a.cmp(&b))
        });
        for i in order {
            let (za, zb) = (zlo + i as f64 * step, zlo + (i + 1) as f64 * step);
            let (fa, fb) = match (self.functional_at(x, y, za), self.functional_at(x, y, zb)) {
                (Some(a), Some(b)) => (a, b),
                _ => continue,
            };
            if fa == 0.0 {
                return Some(NilPoint::new(x, y, za));
            }
            if fa * fb > 0.0 {
                continue;
            }
            let (mut lo, mut hi, mut flo) = (za, zb, fa);
            for _ in 0..60 {
                let m = 0.5 * (lo + hi);
                let fm = match self.functional_at(x, y, m) {
                    Some(v) => v,
                    None => break,
                };
                if fm == 0.0 {
                    return Some(NilPoint::new(x, y, m));
                }
                if flo * fm < 0.0 {
                    hi = m;
                } else {
                    lo = m;
                    flo = fm;
                }
            }
            let mut z = 0.5 * (lo + hi);
            for _ in 0..6 {
                let f = self.functional_at(x, y, z)?;
                let h = 1e-7 * (1.0 + z.abs());
                let d = (self.functional_at(x, y, z + h)? - self.functional_at(x, y, z - h)?)
                    / (2.0 * h);
                if d.abs() < 1e-14 {
                    break;
                }
                let z_new = z - f / d;
                if z_new < lo || z_new > hi {
                    break;
                }
                z = z_new;
            }
            return Some(NilPoint::new(x, y, z));
        }
        None
    }

    /// Fibre type iff the functional vanishes on the Euclidean plane through
    /// the vertices, probed on a barycentric lattice of interior and exterior
    /// plane points.
    pub fn classify(&self) -> SurfaceClass {
        let [a0, a1, a2] = self.vertices.map(NilPoint::as_vec3);
        let chord_normal = (a1 - a0).cross(a2 - a0);
        let scale = (a1 - a0).norm() + (a2 - a0).norm();
        let normal = if chord_normal.norm() > 1e-10 * scale * scale {
            chord_normal.normalized().unwrap()
        } else {
            // Euclidean-collinear vertices: fall back to the vertical plane
            // through the common projected line.
            let d = if (a1 - a0).xy().norm() > (a2 - a0).xy().norm() {
                (a1 - a0).xy()
            } else {
                (a2 - a0).xy()
            };
            match Vec3::new(-d.y, d.x, 0.0).normalized() {
                Some(n) => n,
                None => return SurfaceClass::GeneralType,
            }
        };
        let plane = PlaneParams {
            normal,
            offset: normal.dot(a0),
        };

        let mut weights: Vec<[f64; 3]> = Vec::new();
        let n = 8;
        for i in 1..n {
            for j in 1..(n - i) {
                let k = n - i - j;
                weights.push([i as f64 / n as f64, j as f64 / n as f64, k as f64 / n as f64]);
            }
        }
        weights.extend_from_slice(&[
            [-0.4, 0.7, 0.7],
            [0.7, -0.4, 0.7],
            [0.7, 0.7, -0.4],
            [1.6, -0.3, -0.3],
            [-0.3, 1.6, -0.3],
            [-0.3, -0.3, 1.6],
        ]);

        let mut probes = 0usize;
        for w in weights {
            let p = NilPoint::from_vec3(a0 * w[0] + a1 * w[1] + a2 * w[2]);
            match self.functional(p) {
                Ok(f) => {
                    probes += 1;
                    if f.abs() >= 1e-9 {
                        return SurfaceClass::GeneralType;
                    }
                }
                Err(_) => continue,
            }
        }
        if probes >= 20 {
            SurfaceClass::FibreType { plane }
        } else {
            SurfaceClass::GeneralType
        }
    }

    /// Samples the surface as a z-graph over a rectangular grid: bracketed
    /// bisection plus Newton polish per fibre, grid-connected triangles, and
    /// cells without a bracketed root omitted. Deterministic for fixed input.
    pub fn sample_mesh(
        &self,
        bounds: GridBounds,
        resolution: usize,
    ) -> Result<TriangleMesh, SurfaceError> {
        let res = resolution.max(2);
        let (zlo, zhi) = self.z_range();
        let z_center = (self.vertices[0].z + self.vertices[1].z + self.vertices[2].z) / 3.0;

        let mut node_index = vec![None; res * res];
        let mut mesh = TriangleMesh::default();
        for j in 0..res {
            for i in 0..res {
                let x = bounds.x0 + (bounds.x1 - bounds.x0) * i as f64 / (res - 1) as f64;
                let y = bounds.y0 + (bounds.y1 - bounds.y0) * j as f64 / (res - 1) as f64;
                if let Some(p) = self.fibre_root(x, y, z_center, zlo, zhi) {
                    let ok = self.functional(p).map(|f| f.abs() < 1e-8).unwrap_or(false);
                    if ok {
                        node_index[j * res + i] = Some(mesh.vertices.len());
                        mesh.vertices.push(p);
                    }
                }
            }
        }
        if mesh.vertices.is_empty() {
            return Err(SurfaceError::EmptyMesh);
        }
        for j in 0..res - 1 {
            for i in 0..res - 1 {
                let corners = [
                    node_index[j * res + i],
                    node_index[j * res + i + 1],
                    node_index[(j + 1) * res + i + 1],
                    node_index[(j + 1) * res + i],
                ];
                match corners {
                    [Some(a), Some(b), Some(c), Some(d)] => {
                        mesh.faces.push([a, b, c]);
                        mesh.faces.push([a, c, d]);
                    }
                    _ => mesh.skipped_cells += 1,
                }
            }
        }
        Ok(mesh)
    }
}
