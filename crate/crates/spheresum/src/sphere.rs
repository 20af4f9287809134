//! Points on the unit sphere S^N in R^{N+1}: geodesic distance, antipodes,
//! caps, and the slice frames that parameterize colatitude circles.
//!
//! Every surface integral in this crate reduces to slices {y : pole . y = cos gamma},
//! so the geometry here is deliberately minimal: unit vectors, arccos of clamped
//! dot products, and one deterministic tangent basis per pole.

use crate::error::{Error, Result};

/// A point on S^N, stored as a unit vector in R^{N+1}.
#[derive(Debug, Clone, PartialEq)]
pub struct SpherePoint {
    coords: Vec<f64>,
}

impl SpherePoint {
    /// Build a point from ambient coordinates, normalizing to unit length.
    ///
    /// Needs at least 3 components (N >= 2) and a nonzero vector.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 3 {
            return Err(Error::InvalidArgument(format!(
                "sphere dimension must be >= 2, got ambient length {}",
                coords.len()
            )));
        }
        let norm = coords.iter().map(|c| c * c).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::InvalidArgument(
                "cannot normalize a zero or non-finite vector".into(),
            ));
        }
        let coords = coords.into_iter().map(|c| c / norm).collect();
        Ok(Self { coords })
    }

    /// The north pole e_{N+1} of S^N.
    pub fn north_pole(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidArgument(format!(
                "sphere dimension must be >= 2, got {dim}"
            )));
        }
        let mut coords = vec![0.0; dim + 1];
        coords[dim] = 1.0;
        Ok(Self { coords })
    }

    /// Sphere dimension N (the ambient vector has N+1 components).
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dot(&self, other: &SpherePoint) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }
}

/// Open geodesic ball B_radius(center).
#[derive(Debug, Clone)]
pub struct SphericalCap {
    pub center: SpherePoint,
    pub radius: f64,
}

impl SphericalCap {
    pub fn new(center: SpherePoint, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius < std::f64::consts::PI) {
            return Err(Error::InvalidArgument(format!(
                "cap radius must lie in (0, pi), got {radius}"
            )));
        }
        Ok(Self { center, radius })
    }
}

/// Geodesic distance arccos(a . b), with the dot product clamped to [-1, 1]
/// so near-antipodal roundoff cannot produce NaN.
pub fn geodesic_distance(a: &SpherePoint, b: &SpherePoint) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    Ok(a.dot(b).clamp(-1.0, 1.0).acos())
}

/// Coordinatewise negation; an involution with geodesic_distance(x, antipode(x)) = pi.
pub fn antipode(x: &SpherePoint) -> SpherePoint {
    SpherePoint {
        coords: x.coords.iter().map(|c| -c).collect(),
    }
}

/// Strict membership in the open cap.
pub fn in_cap(cap: &SphericalCap, y: &SpherePoint) -> Result<bool> {
    Ok(geodesic_distance(&cap.center, y)? < cap.radius)
}

/// A pole together with N orthonormal tangent directions; parameterizes the
/// colatitude slice {y : pole . y = cos gamma} as cos(gamma) pole + sin(gamma) basis omega.
#[derive(Debug, Clone)]
pub struct SliceFrame {
    pole: SpherePoint,
    basis: Vec<Vec<f64>>,
}

impl SliceFrame {
    /// Gram-Schmidt against the pole, seeded from the standard basis with the
    /// most-parallel axis skipped. Deterministic: no randomness in geometry.
    pub fn new(pole: SpherePoint) -> Self {
        let m = pole.coords.len();
        let skip = pole
            .coords
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).unwrap())
            .map(|(i, _)| i)
            .unwrap();
        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(m - 1);
        for axis in 0..m {
            if axis == skip {
                continue;
            }
            let mut v = vec![0.0; m];
            v[axis] = 1.0;
            let proj = pole.coords[axis];
            for (vi, pi) in v.iter_mut().zip(&pole.coords) {
                *vi -= proj * pi;
            }
            for b in &basis {
                let proj: f64 = v.iter().zip(b).map(|(a, c)| a * c).sum();
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= proj * bi;
                }
            }
            let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
            for vi in &mut v {
                *vi /= norm;
            }
            basis.push(v);
        }
        Self { pole, basis }
    }

    pub fn pole(&self) -> &SpherePoint {
        &self.pole
    }

    /// Number of tangent directions, equal to the sphere dimension N.
    pub fn tangent_dim(&self) -> usize {
        self.basis.len()
    }

    /// The point cos(gamma) pole + sin(gamma) (basis . omega), for a unit
    /// direction omega in R^N.
    pub fn slice_point(&self, gamma: f64, omega: &[f64]) -> Result<SpherePoint> {
        if omega.len() != self.basis.len() {
            return Err(Error::DimensionMismatch {
                expected: self.basis.len(),
                got: omega.len(),
            });
        }
        let omega_norm = omega.iter().map(|c| c * c).sum::<f64>().sqrt();
        if (omega_norm - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidArgument(format!(
                "slice direction must be a unit vector, |omega| = {omega_norm}"
            )));
        }
        let (s, c) = gamma.sin_cos();
        let mut coords: Vec<f64> = self.pole.coords.iter().map(|p| c * p).collect();
        for (w, b) in omega.iter().zip(&self.basis) {
            for (ci, bi) in coords.iter_mut().zip(b) {
                *ci += s * w * bi;
            }
        }
        SpherePoint::new(coords)
    }
}
