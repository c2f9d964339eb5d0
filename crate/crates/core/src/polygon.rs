use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, Result};
use crate::lattice::{ceil_div, cross, floor_div, gcd, orient, LatticeDirection, LatticePoint, UnimodularMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Dim {
    Empty,
    Point,
    Segment,
    TwoD,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Counts {
    pub lattice: i64,
    pub boundary: i64,
    pub interior: i64,
}

/// Convex hull of finitely many lattice points.
///
/// Vertices are stored counterclockwise starting at the lexicographically
/// least one, so two polygons are equal as point sets iff they are `==`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePolygon {
    vertices: Vec<LatticePoint>,
    dim: Dim,
}

impl LatticePolygon {
    pub fn empty() -> Self {
        LatticePolygon { vertices: Vec::new(), dim: Dim::Empty }
    }

    pub fn point(p: LatticePoint) -> Self {
        LatticePolygon { vertices: vec![p], dim: Dim::Point }
    }

    /// Convex hull (monotone chain, collinear points dropped).
    pub fn hull(points: &[LatticePoint]) -> Self {
        let mut pts = points.to_vec();
        pts.sort_unstable();
        pts.dedup();
        match pts.len() {
            0 => return Self::empty(),
            1 => return Self::point(pts[0]),
            _ => {}
        }
        let first = pts[0];
        let last = *pts.last().unwrap();
        if pts.iter().all(|&p| orient(first, last, p) == 0) {
            return LatticePolygon { vertices: vec![first, last], dim: Dim::Segment };
        }
        let mut h: Vec<LatticePoint> = Vec::with_capacity(pts.len() + 1);
        for &p in &pts {
            while h.len() >= 2 && orient(h[h.len() - 2], h[h.len() - 1], p) <= 0 {
                h.pop();
            }
            h.push(p);
        }
        let lower = h.len() + 1;
        for &p in pts.iter().rev().skip(1) {
            while h.len() >= lower && orient(h[h.len() - 2], h[h.len() - 1], p) <= 0 {
                h.pop();
            }
            h.push(p);
        }
        h.pop();
        LatticePolygon { vertices: h, dim: Dim::TwoD }
    }

    pub fn from_tuples(points: &[(i64, i64)]) -> Self {
        let pts: Vec<LatticePoint> = points.iter().map(|&p| p.into()).collect();
        Self::hull(&pts)
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn is_two_d(&self) -> bool {
        self.dim == Dim::TwoD
    }

    pub fn is_empty(&self) -> bool {
        self.dim == Dim::Empty
    }

    /// Directed edges `(v_i, v_{i+1})` of a 2D polygon.
    pub fn edges(&self) -> impl Iterator<Item = (LatticePoint, LatticePoint)> + '_ {
        let n = self.vertices.len();
        let k = if self.dim == Dim::TwoD { n } else { 0 };
        (0..k).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn volume2(&self) -> i64 {
        if self.dim != Dim::TwoD {
            return 0;
        }
        let n = self.vertices.len();
        let mut s: i128 = 0;
        for i in 0..n {
            s += cross(self.vertices[i], self.vertices[(i + 1) % n]);
        }
        s as i64
    }

    pub fn boundary_count(&self) -> i64 {
        match self.dim {
            Dim::Empty => 0,
            Dim::Point => 1,
            Dim::Segment => {
                let d = self.vertices[1] - self.vertices[0];
                gcd(d.x, d.y) + 1
            }
            Dim::TwoD => self.edges().map(|(p, q)| gcd(q.x - p.x, q.y - p.y)).sum(),
        }
    }

    pub fn counts(&self) -> Counts {
        let boundary = self.boundary_count();
        let interior = if self.dim == Dim::TwoD {
            // Pick: 2A = 2i + b − 2
            (self.volume2() - boundary + 2) / 2
        } else {
            0
        };
        Counts { lattice: boundary + interior, boundary, interior }
    }

    pub fn interior_count(&self) -> i64 {
        self.counts().interior
    }

    pub fn lattice_count(&self) -> i64 {
        self.counts().lattice
    }

    pub fn y_range(&self) -> Option<(i64, i64)> {
        let lo = self.vertices.iter().map(|p| p.y).min()?;
        let hi = self.vertices.iter().map(|p| p.y).max()?;
        Some((lo, hi))
    }

    /// Integer x-range of row `y` inside the polygon (or strictly inside).
    pub fn row_range(&self, y: i64, strict: bool) -> Option<(i64, i64)> {
        match self.dim {
            Dim::Empty => None,
            Dim::Point | Dim::Segment => {
                if strict {
                    return None;
                }
                let p = self.vertices[0];
                let q = *self.vertices.last().unwrap();
                if p.y == q.y {
                    return (y == p.y).then_some((p.x.min(q.x), p.x.max(q.x)));
                }
                let (lo, hi) = (p.y.min(q.y), p.y.max(q.y));
                if y < lo || y > hi {
                    return None;
                }
                let num = (y - p.y) as i128 * (q.x - p.x) as i128;
                let den = (q.y - p.y) as i128;
                if num % den != 0 {
                    return None;
                }
                let x = p.x + (num / den) as i64;
                Some((x, x))
            }
            Dim::TwoD => {
                let mut lo = i128::MIN;
                let mut hi = i128::MAX;
                for (p, q) in self.edges() {
                    let e = q - p;
                    // polygon lies left of the edge: e.x (y − p.y) − e.y (x − p.x) ≥ 0
                    let rhs = e.x as i128 * (y - p.y) as i128 + e.y as i128 * p.x as i128;
                    let ey = e.y as i128;
                    if ey > 0 {
                        let b = if strict { ceil_div(rhs, ey) - 1 } else { floor_div(rhs, ey) };
                        hi = hi.min(b);
                    } else if ey < 0 {
                        let b = if strict { floor_div(rhs, ey) + 1 } else { ceil_div(rhs, ey) };
                        lo = lo.max(b);
                    } else {
                        let s = e.x as i128 * (y - p.y) as i128;
                        if s < 0 || (strict && s == 0) {
                            return None;
                        }
                    }
                }
                (lo <= hi).then_some((lo as i64, hi as i64))
            }
        }
    }

    fn collect_points(&self, strict: bool) -> Vec<LatticePoint> {
        let mut out = Vec::new();
        if let Some((y0, y1)) = self.y_range() {
            for y in y0..=y1 {
                if let Some((a, b)) = self.row_range(y, strict) {
                    out.extend((a..=b).map(|x| LatticePoint::new(x, y)));
                }
            }
        }
        out
    }

    pub fn lattice_points(&self) -> Vec<LatticePoint> {
        self.collect_points(false)
    }

    pub fn interior_points(&self) -> Vec<LatticePoint> {
        if self.dim != Dim::TwoD {
            return Vec::new();
        }
        self.collect_points(true)
    }

    /// Convex hull of the strictly interior lattice points.
    pub fn interior_hull(&self) -> LatticePolygon {
        if self.dim != Dim::TwoD {
            return Self::empty();
        }
        // Only the extreme points of each interior row can be hull vertices.
        let (y0, y1) = self.y_range().unwrap();
        let mut pts = Vec::new();
        for y in y0 + 1..y1 {
            if let Some((a, b)) = self.row_range(y, true) {
                pts.push(LatticePoint::new(a, y));
                pts.push(LatticePoint::new(b, y));
            }
        }
        Self::hull(&pts)
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        match self.dim {
            Dim::Empty => false,
            Dim::Point => self.vertices[0] == p,
            Dim::Segment => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                orient(a, b, p) == 0
                    && p.x >= a.x.min(b.x)
                    && p.x <= a.x.max(b.x)
                    && p.y >= a.y.min(b.y)
                    && p.y <= a.y.max(b.y)
            }
            Dim::TwoD => self.edges().all(|(a, b)| orient(a, b, p) >= 0),
        }
    }

    pub fn strictly_contains(&self, p: LatticePoint) -> bool {
        self.dim == Dim::TwoD && self.edges().all(|(a, b)| orient(a, b, p) > 0)
    }

    /// Whether `other` is contained in `self`.
    pub fn contains_polygon(&self, other: &LatticePolygon) -> bool {
        other.vertices.iter().all(|&p| self.contains(p))
    }

    pub fn translate(&self, t: LatticePoint) -> LatticePolygon {
        LatticePolygon { vertices: self.vertices.iter().map(|&p| p + t).collect(), dim: self.dim }
    }

    /// Dilation by a non-negative integer factor.
    pub fn scale(&self, k: i64) -> LatticePolygon {
        assert!(k >= 0, "negative dilation factor");
        let pts: Vec<LatticePoint> = self.vertices.iter().map(|p| p.scale(k)).collect();
        Self::hull(&pts)
    }

    pub fn apply(&self, u: &UnimodularMap) -> LatticePolygon {
        let pts: Vec<LatticePoint> = self.vertices.iter().map(|&p| u.map(p)).collect();
        Self::hull(&pts)
    }

    /// Width data `(max − min, min)` of the functional `aY − bX`; `(−1, 0)` on ∅.
    pub fn width(&self, v: LatticeDirection) -> (i64, i64) {
        let mut it = self.vertices.iter().map(|&p| v.eval(p));
        let Some(first) = it.next() else {
            return (-1, 0);
        };
        let (lo, hi) = it.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x)));
        ((hi - lo) as i64, lo as i64)
    }

    pub fn to_tuples(&self) -> Vec<(i64, i64)> {
        self.vertices.iter().map(|p| (p.x, p.y)).collect()
    }
}

/// Sort key for edge directions in the range (−π/2, 3π/2].
fn angle_half(v: LatticePoint) -> u8 {
    if v.x > 0 || (v.x == 0 && v.y > 0) {
        0
    } else {
        1
    }
}

fn angle_cmp(u: LatticePoint, v: LatticePoint) -> std::cmp::Ordering {
    angle_half(u).cmp(&angle_half(v)).then_with(|| 0.cmp(&cross(u, v)))
}

/// Minkowski sum. Two-dimensional inputs are merged edge by edge; otherwise
/// the hull of pairwise vertex sums is taken.
pub fn minkowski_sum(p: &LatticePolygon, q: &LatticePolygon) -> Result<LatticePolygon> {
    if p.is_empty() || q.is_empty() {
        return domain("Minkowski sum with an empty polygon");
    }
    if p.dim != Dim::TwoD || q.dim != Dim::TwoD {
        let mut pts = Vec::with_capacity(p.vertices.len() * q.vertices.len());
        for &a in &p.vertices {
            for &b in &q.vertices {
                pts.push(a + b);
            }
        }
        return Ok(LatticePolygon::hull(&pts));
    }
    // Both vertex lists start at the leftmost-lowest vertex, whose outgoing
    // edge has the smallest angle in (−π/2, 3π/2].
    let ep: Vec<LatticePoint> = p.edges().map(|(a, b)| b - a).collect();
    let eq: Vec<LatticePoint> = q.edges().map(|(a, b)| b - a).collect();
    let mut cur = p.vertices[0] + q.vertices[0];
    let mut pts = Vec::with_capacity(ep.len() + eq.len());
    let (mut i, mut j) = (0, 0);
    while i < ep.len() || j < eq.len() {
        pts.push(cur);
        let take_p = if i == ep.len() {
            false
        } else if j == eq.len() {
            true
        } else {
            angle_cmp(ep[i], eq[j]) != std::cmp::Ordering::Greater
        };
        if take_p {
            cur = cur + ep[i];
            i += 1;
        } else {
            cur = cur + eq[j];
            j += 1;
        }
    }
    Ok(LatticePolygon::hull(&pts))
}

/// `Vol(P+Q) − Vol(P) − Vol(Q)`, computed as
/// `(volume2(P+Q) − volume2(P) − volume2(Q)) / 2`.
pub fn mixed_volume(p: &LatticePolygon, q: &LatticePolygon) -> Result<i64> {
    let s = minkowski_sum(p, q)?;
    let num = s.volume2() - p.volume2() - q.volume2();
    debug_assert!(num % 2 == 0);
    Ok(num / 2)
}

impl fmt::Display for LatticePolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl Serialize for LatticePolygon {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<[i64; 2]> = self.vertices.iter().map(|p| [p.x, p.y]).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticePolygon {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<[i64; 2]> = Vec::deserialize(d)?;
        let pts: Vec<LatticePoint> = v.into_iter().map(|[x, y]| LatticePoint::new(x, y)).collect();
        Ok(LatticePolygon::hull(&pts))
    }
}
