use std::fmt;

use num_rational::Ratio;
use num_traits::Signed;
use serde::{Serialize, Serializer};

use crate::error::{domain, unsupported, Result};
use crate::lattice::{cross, gcd, LatticePoint};
use crate::polygon::{Dim, LatticePolygon};

pub type Q = Ratio<i128>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalPoint {
    pub x: Q,
    pub y: Q,
}

impl RationalPoint {
    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    pub fn to_lattice(&self) -> Option<LatticePoint> {
        self.is_integral().then(|| LatticePoint::new(self.x.to_integer() as i64, self.y.to_integer() as i64))
    }
}

impl From<LatticePoint> for RationalPoint {
    fn from(p: LatticePoint) -> Self {
        RationalPoint { x: Q::from_integer(p.x as i128), y: Q::from_integer(p.y as i128) }
    }
}

/// Convex polygon with exact rational vertices (CCW, lexicographically least first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPolygon {
    vertices: Vec<RationalPoint>,
    is_lattice: bool,
}

fn rcross(o: &RationalPoint, a: &RationalPoint, b: &RationalPoint) -> Q {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

impl RationalPolygon {
    pub fn hull(points: &[RationalPoint]) -> Self {
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        let vertices = if pts.len() <= 2 {
            pts
        } else {
            let mut h: Vec<RationalPoint> = Vec::new();
            for p in pts.iter() {
                while h.len() >= 2 && !rcross(&h[h.len() - 2], &h[h.len() - 1], p).is_positive() {
                    h.pop();
                }
                h.push(*p);
            }
            let lower = h.len() + 1;
            for p in pts.iter().rev().skip(1) {
                while h.len() >= lower && !rcross(&h[h.len() - 2], &h[h.len() - 1], p).is_positive() {
                    h.pop();
                }
                h.push(*p);
            }
            h.pop();
            if h.len() == 2 && h[0] == h[1] {
                h.pop();
            }
            h
        };
        let is_lattice = vertices.iter().all(|v| v.is_integral());
        RationalPolygon { vertices, is_lattice }
    }

    pub fn vertices(&self) -> &[RationalPoint] {
        &self.vertices
    }

    pub fn is_lattice(&self) -> bool {
        self.is_lattice
    }

    pub fn to_lattice(&self) -> Option<LatticePolygon> {
        if !self.is_lattice {
            return None;
        }
        let pts: Vec<LatticePoint> = self.vertices.iter().filter_map(|v| v.to_lattice()).collect();
        Some(LatticePolygon::hull(&pts))
    }
}

fn fmt_q(q: &Q) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for RationalPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|v| format!("({},{})", fmt_q(&v.x), fmt_q(&v.y))).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl Serialize for RationalPolygon {
    /// Integral coordinates as JSON numbers, others as `"p/q"` strings.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<[serde_json::Value; 2]> = self
            .vertices
            .iter()
            .map(|p| {
                let c = |q: &Q| {
                    if q.is_integer() {
                        serde_json::Value::from(q.to_integer() as i64)
                    } else {
                        serde_json::Value::from(fmt_q(q))
                    }
                };
                [c(&p.x), c(&p.y)]
            })
            .collect();
        v.serialize(s)
    }
}

/// Half-plane `⟨p, n⟩ ≥ c`.
#[derive(Debug, Clone, Copy)]
struct HalfPlane {
    n: LatticePoint,
    c: i128,
}

fn meet(h: &HalfPlane, k: &HalfPlane) -> Option<RationalPoint> {
    let det = cross(h.n, k.n);
    if det == 0 {
        return None;
    }
    let xn = h.c * k.n.y as i128 - k.c * h.n.y as i128;
    let yn = h.n.x as i128 * k.c - k.n.x as i128 * h.c;
    Some(RationalPoint { x: Q::new(xn, det), y: Q::new(yn, det) })
}

fn satisfies(h: &HalfPlane, p: &RationalPoint) -> bool {
    p.x * Q::from_integer(h.n.x as i128) + p.y * Q::from_integer(h.n.y as i128) >= Q::from_integer(h.c)
}

/// Exact intersection of half-planes whose normals positively span the plane.
fn intersect(hs: &[HalfPlane]) -> RationalPolygon {
    let mut cands = Vec::new();
    for i in 0..hs.len() {
        for j in i + 1..hs.len() {
            if let Some(p) = meet(&hs[i], &hs[j]) {
                if hs.iter().all(|h| satisfies(h, &p)) {
                    cands.push(p);
                }
            }
        }
    }
    RationalPolygon::hull(&cands)
}

/// Inward edge half-planes `⟨p, n_ℓ⟩ ≥ −a_ℓ` of a 2D polygon, in CCW order.
fn edge_halfplanes(g: &LatticePolygon) -> Vec<HalfPlane> {
    g.edges()
        .map(|(p, q)| {
            let e = q - p;
            let k = gcd(e.x, e.y);
            let n = LatticePoint::new(-e.y / k, e.x / k);
            HalfPlane { n, c: n.x as i128 * p.x as i128 + n.y as i128 * p.y as i128 }
        })
        .collect()
}

/// `Γ^(−1)`: every edge half-plane of `g` moved outward by one lattice step.
pub fn outward_polygon(g: &LatticePolygon) -> Result<RationalPolygon> {
    if g.dim() != Dim::TwoD {
        return unsupported(format!("outward polygon needs a two-dimensional polygon, got {:?}", g.dim()));
    }
    let hs: Vec<HalfPlane> = edge_halfplanes(g).into_iter().map(|h| HalfPlane { c: h.c - 1, ..h }).collect();
    Ok(intersect(&hs))
}

/// Integer-only variant of [`outward_polygon`] returning `Γ^(−1)` when it is
/// a lattice polygon. Redundant shifted edges are pruned by a local test on
/// the angularly sorted half-planes.
pub fn outward_lattice(g: &LatticePolygon) -> Option<LatticePolygon> {
    if g.dim() != Dim::TwoD {
        return None;
    }
    let mut hs: Vec<HalfPlane> = edge_halfplanes(g).into_iter().map(|h| HalfPlane { c: h.c - 1, ..h }).collect();
    // apex of lines j, k as (x·det, y·det, det) with det > 0
    let apex = |h: &HalfPlane, k: &HalfPlane| {
        let det = cross(h.n, k.n);
        let xn = h.c * k.n.y as i128 - k.c * h.n.y as i128;
        let yn = h.n.x as i128 * k.c - k.n.x as i128 * h.c;
        (xn, yn, det)
    };
    loop {
        let n = hs.len();
        let mut removed = None;
        for i in 0..n {
            let p = &hs[(i + n - 1) % n];
            let q = &hs[(i + 1) % n];
            if cross(p.n, q.n) <= 0 {
                continue;
            }
            let (xn, yn, det) = apex(p, q);
            let h = &hs[i];
            if h.n.x as i128 * xn + h.n.y as i128 * yn >= h.c * det {
                removed = Some(i);
                break;
            }
        }
        match removed {
            Some(i) => {
                hs.remove(i);
            }
            None => break,
        }
    }
    let n = hs.len();
    let mut pts = Vec::with_capacity(n);
    for i in 0..n {
        let (xn, yn, det) = apex(&hs[i], &hs[(i + 1) % n]);
        debug_assert!(det > 0);
        if xn % det != 0 || yn % det != 0 {
            return None;
        }
        pts.push(LatticePoint::new((xn / det) as i64, (yn / det) as i64));
    }
    Some(LatticePolygon::hull(&pts))
}

/// `Δ^max = (Δ^(1))^(−1)`.
pub fn max_polygon(p: &LatticePolygon) -> Result<LatticePolygon> {
    let g = p.interior_hull();
    if g.dim() != Dim::TwoD {
        return unsupported("maximal polygon needs a two-dimensional interior hull");
    }
    outward_polygon(&g)?
        .to_lattice()
        .ok_or_else(|| crate::Error::Internal("outward polygon of an interior hull is not a lattice polygon".into()))
}

/// Torus-invariant divisor `Σ a_ℓ D_ℓ`: primitive inward ray vectors with
/// integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusDivisor {
    rays: Vec<LatticePoint>,
    coeffs: Vec<i64>,
}

impl TorusDivisor {
    pub fn new(rays: Vec<LatticePoint>, coeffs: Vec<i64>) -> Result<Self> {
        if rays.len() != coeffs.len() {
            return domain("rays and coefficients differ in length");
        }
        for (i, r) in rays.iter().enumerate() {
            if gcd(r.x, r.y) != 1 {
                return domain(format!("ray {r} is not primitive"));
            }
            if rays[..i].contains(r) {
                return domain(format!("ray {r} listed twice"));
            }
        }
        let mut sorted = rays.clone();
        sort_by_angle(&mut sorted);
        let n = sorted.len();
        let spans = n >= 3 && (0..n).all(|i| cross(sorted[i], sorted[(i + 1) % n]) > 0);
        if !spans {
            return domain("rays do not positively span the plane (unbounded intersection)");
        }
        Ok(TorusDivisor { rays, coeffs })
    }

    /// Divisor of the edges of a 2D lattice polygon, whose polygon is itself.
    pub fn of_polygon(p: &LatticePolygon) -> Result<Self> {
        if p.dim() != Dim::TwoD {
            return unsupported("normal fan needs a two-dimensional polygon");
        }
        let hs = edge_halfplanes(p);
        Self::new(hs.iter().map(|h| h.n).collect(), hs.iter().map(|h| -(h.c as i64)).collect())
    }

    pub fn rays(&self) -> &[LatticePoint] {
        &self.rays
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }
}

fn sort_by_angle(v: &mut [LatticePoint]) {
    let half = |p: &LatticePoint| if p.y > 0 || (p.y == 0 && p.x > 0) { 0 } else { 1 };
    v.sort_by(|a, b| half(a).cmp(&half(b)).then_with(|| 0.cmp(&cross(*a, *b))));
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorPolygon {
    pub polygon: RationalPolygon,
    pub is_cartier: bool,
    pub is_convex: bool,
    pub is_strictly_convex: bool,
}

/// `Δ_D = ⋂ {⟨p, v_ℓ⟩ ≥ −a_ℓ}` together with the apex tests on adjacent rays.
pub fn divisor_polygon(d: &TorusDivisor) -> DivisorPolygon {
    let mut hs: Vec<HalfPlane> =
        d.rays.iter().zip(&d.coeffs).map(|(&n, &a)| HalfPlane { n, c: -(a as i128) }).collect();
    let polygon = intersect(&hs);
    let half = |p: &LatticePoint| if p.y > 0 || (p.y == 0 && p.x > 0) { 0 } else { 1 };
    hs.sort_by(|a, b| half(&a.n).cmp(&half(&b.n)).then_with(|| 0.cmp(&cross(a.n, b.n))));
    let n = hs.len();
    let apexes: Vec<RationalPoint> = (0..n).filter_map(|i| meet(&hs[i], &hs[(i + 1) % n])).collect();
    let is_cartier = apexes.iter().all(|a| a.is_integral());
    let verts = polygon.vertices();
    let is_convex = !verts.is_empty() && apexes.iter().all(|a| verts.contains(a));
    let mut distinct = apexes.clone();
    distinct.sort();
    distinct.dedup();
    let is_strictly_convex = is_convex && distinct.len() == apexes.len() && distinct.len() == verts.len();
    DivisorPolygon { polygon, is_cartier, is_convex, is_strictly_convex }
}
