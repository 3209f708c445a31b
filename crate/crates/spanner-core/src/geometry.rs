//! Planar primitives shared by every other module: Euclidean distance,
//! cone indexing for Yao/Theta tables, and focal-sum ellipse membership.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    /// Direction queries are undefined when apex and target coincide.
    #[error("undefined direction: apex and target coincide")]
    UndefinedDirection,
    /// An ellipse needs two distinct foci.
    #[error("degenerate ellipse: coincident foci")]
    CoincidentFoci,
}

/// A point of the embedding, living in the unit square.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    /// True iff the point lies in the embedding domain [0,1]^2.
    pub fn in_unit_square(&self) -> bool {
        (0.0..=1.0).contains(&self.x) && (0.0..=1.0).contains(&self.y)
    }
}

/// Euclidean distance between two points.
pub fn dist(a: Point, b: Point) -> f64 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    (dx * dx + dy * dy).sqrt()
}

/// The cone family: `tau` cones of angular width `epsilon`, cone `i`
/// spanning polar angles `[i*epsilon, (i+1)*epsilon)`. The last cone is
/// narrower when 2*pi/epsilon is not integral, so the cones tile the circle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeSpec {
    epsilon: f64,
    tau: u32,
}

impl ConeSpec {
    /// Cone family of width `epsilon` radians. Requires `0 < epsilon <= pi/2`
    /// so that `tau >= 4`.
    pub fn new(epsilon: f64) -> Self {
        assert!(
            epsilon > 0.0 && epsilon <= PI / 2.0,
            "cone width must be in (0, pi/2], got {epsilon}"
        );
        let tau = (2.0 * PI / epsilon).ceil() as u32;
        debug_assert!(tau >= 4);
        ConeSpec { epsilon, tau }
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Number of cones.
    pub fn tau(&self) -> u32 {
        self.tau
    }
}

/// Index of the cone of `spec` with apex `apex` containing `target`:
/// `floor(phi / epsilon)` for `phi` the polar angle of `target - apex`,
/// clamped into `[0, tau)`.
pub fn cone_index(apex: Point, target: Point, spec: &ConeSpec) -> Result<u32, GeometryError> {
    let dx = target.x - apex.x;
    let dy = target.y - apex.y;
    if dx == 0.0 && dy == 0.0 {
        return Err(GeometryError::UndefinedDirection);
    }
    let mut phi = dy.atan2(dx);
    if phi < 0.0 {
        phi += 2.0 * PI;
    }
    // phi == 2*pi can survive the wrap for tiny negative angles; the clamp
    // below folds it into the last cone.
    let i = (phi / spec.epsilon).floor() as u32;
    Ok(i.min(spec.tau - 1))
}

/// Focal-sum membership test: true iff
/// `dist(x,a) + dist(x,b) <= (1+epsilon) * dist(a,b)`, boundary inclusive.
pub fn in_ellipse(a: Point, b: Point, epsilon: f64, x: Point) -> Result<bool, GeometryError> {
    if a.x == b.x && a.y == b.y {
        return Err(GeometryError::CoincidentFoci);
    }
    Ok(dist(x, a) + dist(x, b) <= (1.0 + epsilon) * dist(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dist_identity() {
        assert_eq!(dist(Point::new(0.0, 0.0), Point::new(0.0, 0.0)), 0.0);
    }

    #[test]
    fn dist_unit_diagonal() {
        let d = dist(Point::new(0.0, 0.0), Point::new(1.0, 1.0));
        assert!((d - std::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn dist_3_4_5() {
        assert_eq!(dist(Point::new(0.3, 0.4), Point::new(0.0, 0.0)), 0.5);
    }

    #[test]
    fn cone_spec_tau() {
        assert_eq!(ConeSpec::new(PI / 4.0).tau(), 8);
        assert_eq!(ConeSpec::new(0.2).tau(), 32);
        assert_eq!(ConeSpec::new(0.25).tau(), 26);
    }

    #[test]
    fn cone_index_zero_angle() {
        let spec = ConeSpec::new(PI / 4.0);
        let i = cone_index(Point::new(0.0, 0.0), Point::new(1.0, 0.0), &spec).unwrap();
        assert_eq!(i, 0);
    }

    #[test]
    fn cone_index_straight_up() {
        // phi = pi/2, floor((pi/2)/(pi/4)) = 2
        let spec = ConeSpec::new(PI / 4.0);
        let i = cone_index(Point::new(0.0, 0.0), Point::new(0.0, 1.0), &spec).unwrap();
        assert_eq!(i, 2);
    }

    #[test]
    fn cone_index_left() {
        // phi = pi, floor(pi/0.2) = 15
        let spec = ConeSpec::new(0.2);
        let i = cone_index(Point::new(0.0, 0.0), Point::new(-1.0, 0.0), &spec).unwrap();
        assert_eq!(i, 15);
    }

    #[test]
    fn cone_index_coincident_errors() {
        let spec = ConeSpec::new(0.2);
        let p = Point::new(0.5, 0.5);
        assert_eq!(
            cone_index(p, p, &spec),
            Err(GeometryError::UndefinedDirection)
        );
    }

    #[test]
    fn ellipse_midpoint_on_boundary() {
        let a = Point::new(0.0, 0.0);
        let b = Point::new(1.0, 0.0);
        assert!(in_ellipse(a, b, 0.1, Point::new(0.5, 0.0)).unwrap());
    }

    #[test]
    fn ellipse_excludes_far_point() {
        let a = Point::new(0.0, 0.0);
        let b = Point::new(1.0, 0.0);
        // sum = 2*sqrt(0.5) ~ 1.414 > 1.1
        assert!(!in_ellipse(a, b, 0.1, Point::new(0.5, 0.5)).unwrap());
        // 1.414 <= 2.0
        assert!(in_ellipse(a, b, 1.0, Point::new(0.5, 0.5)).unwrap());
    }

    #[test]
    fn ellipse_coincident_foci_errors() {
        let p = Point::new(0.2, 0.2);
        assert_eq!(
            in_ellipse(p, p, 0.1, Point::new(0.0, 0.0)),
            Err(GeometryError::CoincidentFoci)
        );
    }

    #[test]
    fn ellipse_contains_both_foci() {
        let a = Point::new(0.1, 0.9);
        let b = Point::new(0.7, 0.2);
        assert!(in_ellipse(a, b, 0.0, a).unwrap());
        assert!(in_ellipse(a, b, 0.0, b).unwrap());
    }
}
