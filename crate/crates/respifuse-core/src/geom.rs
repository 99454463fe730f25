//! Plane geometry primitives shared across the measurement chain.

use core::ops::{Add, Mul, Neg, Sub};

use crate::flt;

/// A 2-D point or vector in meters.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    #[inline]
    pub fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    #[inline]
    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    #[inline]
    pub fn norm(self) -> f64 {
        flt::hypot(self.x, self.y)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn distance(self, other: Vec2) -> f64 {
        (self - other).norm()
    }

    #[inline]
    pub fn scale(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    #[inline]
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    #[inline]
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    #[inline]
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn mul(self, s: f64) -> Vec2 {
        self.scale(s)
    }
}

/// A real 2x2 matrix in row-major order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub m: [[f64; 2]; 2],
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 {
        m: [[1.0, 0.0], [0.0, 1.0]],
    };

    #[inline]
    pub fn new(m00: f64, m01: f64, m10: f64, m11: f64) -> Self {
        Mat2 {
            m: [[m00, m01], [m10, m11]],
        }
    }

    /// Counterclockwise rotation by `angle` radians.
    pub fn rotation(angle: f64) -> Self {
        let (s, c) = flt::sin_cos(angle);
        Mat2::new(c, -s, s, c)
    }

    #[inline]
    pub fn transpose(self) -> Mat2 {
        Mat2::new(self.m[0][0], self.m[1][0], self.m[0][1], self.m[1][1])
    }

    #[inline]
    pub fn det(self) -> f64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    #[inline]
    pub fn apply(self, v: Vec2) -> Vec2 {
        Vec2::new(
            self.m[0][0] * v.x + self.m[0][1] * v.y,
            self.m[1][0] * v.x + self.m[1][1] * v.y,
        )
    }

    #[inline]
    pub fn matmul(self, other: Mat2) -> Mat2 {
        let a = self.m;
        let b = other.m;
        Mat2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

/// Distance from point `p` to the segment `a`..`b`.
///
/// Degenerates to point-to-point distance when the segment has zero length.
pub fn point_segment_distance(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let d = b - a;
    let len_sqr = d.norm_sqr();
    if len_sqr == 0.0 {
        return p.distance(a);
    }
    let t = ((p - a).dot(d) / len_sqr).clamp(0.0, 1.0);
    p.distance(a + d * t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segment_distance_interior_and_endpoints() {
        let a = Vec2::new(0.0, 0.0);
        let b = Vec2::new(4.0, 0.0);
        assert_eq!(point_segment_distance(Vec2::new(2.0, 3.0), a, b), 3.0);
        assert_eq!(point_segment_distance(Vec2::new(-3.0, 4.0), a, b), 5.0);
        assert_eq!(point_segment_distance(Vec2::new(7.0, 4.0), a, b), 5.0);
    }

    #[test]
    fn segment_distance_zero_length() {
        let a = Vec2::new(1.0, 1.0);
        assert_eq!(point_segment_distance(Vec2::new(4.0, 5.0), a, a), 5.0);
    }

    #[test]
    fn rotation_is_orthogonal() {
        let r = Mat2::rotation(0.7);
        let rtr = r.transpose().matmul(r);
        assert!((rtr.m[0][0] - 1.0).abs() < 1e-15);
        assert!((rtr.m[1][1] - 1.0).abs() < 1e-15);
        assert!(rtr.m[0][1].abs() < 1e-15);
        assert!((r.det() - 1.0).abs() < 1e-15);
    }
}
