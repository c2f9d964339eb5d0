use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Coordinates beyond this magnitude are rejected so that every determinant
/// and shoelace term fits comfortably in `i128`.
pub const COORD_LIMIT: i64 = 1 << 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        LatticePoint { x, y }
    }

    pub fn checked(x: i64, y: i64) -> Result<Self> {
        if x.abs() > COORD_LIMIT || y.abs() > COORD_LIMIT {
            return domain(format!("coordinate ({x},{y}) exceeds the supported range 2^40"));
        }
        Ok(LatticePoint { x, y })
    }

    pub fn scale(self, k: i64) -> Self {
        LatticePoint::new(self.x * k, self.y * k)
    }
}

impl std::ops::Add for LatticePoint {
    type Output = LatticePoint;
    fn add(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.x + o.x, self.y + o.y)
    }
}

impl std::ops::Sub for LatticePoint {
    type Output = LatticePoint;
    fn sub(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.x - o.x, self.y - o.y)
    }
}

impl std::ops::Neg for LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> LatticePoint {
        LatticePoint::new(-self.x, -self.y)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl From<(i64, i64)> for LatticePoint {
    fn from((x, y): (i64, i64)) -> Self {
        LatticePoint::new(x, y)
    }
}

#[inline]
pub fn cross(u: LatticePoint, v: LatticePoint) -> i128 {
    u.x as i128 * v.y as i128 - u.y as i128 * v.x as i128
}

/// Orientation of the triple (a, b, c): positive for a left turn.
#[inline]
pub fn orient(a: LatticePoint, b: LatticePoint, c: LatticePoint) -> i128 {
    cross(b - a, c - a)
}

#[inline]
pub fn dot(u: LatticePoint, v: LatticePoint) -> i128 {
    u.x as i128 * v.x as i128 + u.y as i128 * v.y as i128
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.abs().gcd(&b.abs())
}

/// Returns (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

pub fn floor_div(a: i128, b: i128) -> i128 {
    Integer::div_floor(&a, &b)
}

pub fn ceil_div(a: i128, b: i128) -> i128 {
    -Integer::div_floor(&-a, &b)
}

/// Primitive lattice direction `(a, b)`, one representative per pair `±v`:
/// `b > 0`, or `b = 0` and `a > 0`.
///
/// The associated width functional is `(X, Y) ↦ aY − bX`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticeDirection {
    a: i64,
    b: i64,
}

impl LatticeDirection {
    /// Builds the canonical representative of `±(a, b)`.
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if a == 0 && b == 0 {
            return domain("direction (0,0) is not primitive");
        }
        if gcd(a, b) != 1 {
            return domain(format!("direction ({a},{b}) is not primitive"));
        }
        if a.abs() > COORD_LIMIT || b.abs() > COORD_LIMIT {
            return domain(format!("direction ({a},{b}) exceeds the supported range"));
        }
        Ok(Self::canonical_unchecked(a, b))
    }

    pub(crate) fn canonical_unchecked(a: i64, b: i64) -> Self {
        if b > 0 || (b == 0 && a > 0) {
            LatticeDirection { a, b }
        } else {
            LatticeDirection { a: -a, b: -b }
        }
    }

    /// Direction whose width functional is `p ↦ ⟨p, (u, w)⟩`.
    pub(crate) fn from_functional(u: i64, w: i64) -> Self {
        // aY − bX = uX + wY  ⇒  a = w, b = −u
        Self::canonical_unchecked(w, -u)
    }

    pub fn a(self) -> i64 {
        self.a
    }

    pub fn b(self) -> i64 {
        self.b
    }

    pub fn functional(self) -> LatticePoint {
        LatticePoint::new(-self.b, self.a)
    }

    #[inline]
    pub fn eval(self, p: LatticePoint) -> i128 {
        self.a as i128 * p.y as i128 - self.b as i128 * p.x as i128
    }

    pub fn det(self, o: LatticeDirection) -> i64 {
        self.a * o.b - self.b * o.a
    }

    /// Sort key: (b, a) ascending.
    pub fn sort_key(self) -> (i64, i64) {
        (self.b, self.a)
    }
}

impl fmt::Display for LatticeDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl Serialize for LatticeDirection {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.a, self.b].serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticeDirection {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b] = <[i64; 2]>::deserialize(d)?;
        LatticeDirection::new(a, b).map_err(serde::de::Error::custom)
    }
}

pub fn sort_directions(dirs: &mut [LatticeDirection]) {
    dirs.sort_by_key(|d| d.sort_key());
}

/// Integer affine map `p ↦ A p + t` with `det A = ±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnimodularMap {
    matrix: [[i64; 2]; 2],
    translation: (i64, i64),
}

impl UnimodularMap {
    pub fn new(matrix: [[i64; 2]; 2], translation: (i64, i64)) -> Result<Self> {
        let det = matrix[0][0] as i128 * matrix[1][1] as i128 - matrix[0][1] as i128 * matrix[1][0] as i128;
        if det != 1 && det != -1 {
            return domain(format!("matrix {matrix:?} has determinant {det}, expected ±1"));
        }
        Ok(UnimodularMap { matrix, translation })
    }

    pub fn linear(matrix: [[i64; 2]; 2]) -> Result<Self> {
        Self::new(matrix, (0, 0))
    }

    pub fn identity() -> Self {
        UnimodularMap { matrix: [[1, 0], [0, 1]], translation: (0, 0) }
    }

    pub fn translation(t: (i64, i64)) -> Self {
        UnimodularMap { matrix: [[1, 0], [0, 1]], translation: t }
    }

    pub fn matrix(&self) -> [[i64; 2]; 2] {
        self.matrix
    }

    pub fn det(&self) -> i64 {
        self.matrix[0][0] * self.matrix[1][1] - self.matrix[0][1] * self.matrix[1][0]
    }

    pub fn map(&self, p: LatticePoint) -> LatticePoint {
        let m = &self.matrix;
        LatticePoint::new(
            m[0][0] * p.x + m[0][1] * p.y + self.translation.0,
            m[1][0] * p.x + m[1][1] * p.y + self.translation.1,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direction_sign_is_canonical() {
        let d = LatticeDirection::new(-1, -1).unwrap();
        assert_eq!((d.a(), d.b()), (1, 1));
        let d = LatticeDirection::new(-1, 0).unwrap();
        assert_eq!((d.a(), d.b()), (1, 0));
        let d = LatticeDirection::new(1, -1).unwrap();
        assert_eq!((d.a(), d.b()), (-1, 1));
        assert!(LatticeDirection::new(2, 4).is_err());
        assert!(LatticeDirection::new(0, 0).is_err());
    }

    #[test]
    fn ext_gcd_identity() {
        for a in -7..=7 {
            for b in -7..=7 {
                let (g, s, t) = ext_gcd(a, b);
                assert_eq!(s * a + t * b, g);
                assert_eq!(g, gcd(a, b));
            }
        }
    }

    #[test]
    fn rejects_singular_matrix() {
        assert!(UnimodularMap::linear([[2, 0], [0, 1]]).is_err());
        assert!(UnimodularMap::linear([[0, 1], [1, 0]]).is_ok());
    }

    #[test]
    fn rounding_helpers() {
        assert_eq!(floor_div(-3, 2), -2);
        assert_eq!(ceil_div(-3, 2), -1);
        assert_eq!(ceil_div(3, 2), 2);
        assert_eq!(floor_div(4, 2), 2);
    }
}
