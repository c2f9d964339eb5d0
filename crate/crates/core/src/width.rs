use serde::{Deserialize, Serialize};

use crate::error::{domain, unsupported, Result};
use crate::lattice::{gcd, LatticeDirection, LatticePoint};
use crate::polygon::{Dim, LatticePolygon};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WidthProfile {
    pub direction: LatticeDirection,
    pub width: i64,
    pub offset: i64,
    pub invariants: Vec<i64>,
}

pub fn width(p: &LatticePolygon, v: LatticeDirection) -> (i64, i64) {
    p.width(v)
}

/// `E_ℓ = #{interior lattice points on level m + ℓ} − 1` for `ℓ = 1..w−1`.
pub fn width_invariants(p: &LatticePolygon, v: LatticeDirection) -> Result<WidthProfile> {
    let (w, m) = p.width(v);
    if w < 2 {
        return unsupported(format!("width invariants need width at least 2, got {w} in direction {v}"));
    }
    let mut e = vec![-1i64; (w - 1) as usize];
    for q in p.interior_points() {
        let level = v.eval(q) as i64 - m;
        debug_assert!(level >= 1 && level < w);
        e[(level - 1) as usize] += 1;
    }
    Ok(WidthProfile { direction: v, width: w, offset: m, invariants: e })
}

/// Every direction `v` (one per `±v`) with `w(p, v) ≤ d`.
///
/// Any such `v` pairs to at most `d` in absolute value with two independent
/// edge vectors, which confines the functional to a finite parallelogram.
pub fn directions_with_width_at_most(p: &LatticePolygon, d: i64) -> Result<Vec<LatticeDirection>> {
    if p.dim() != Dim::TwoD {
        return unsupported("a polygon of dimension below two has infinitely many bounded-width directions");
    }
    let mut out = Vec::new();
    if d < 0 {
        return Ok(out);
    }
    let vs = p.vertices();
    let s1 = vs[1] - vs[0];
    let s2 = vs[2] - vs[1];
    let det = s1.x as i128 * s2.y as i128 - s1.y as i128 * s2.x as i128;
    debug_assert!(det != 0);
    for t1 in -d..=d {
        for t2 in -d..=d {
            // ±t give ±functional; keep one sign
            if t1 < 0 || (t1 == 0 && t2 <= 0) {
                continue;
            }
            let un = t1 as i128 * s2.y as i128 - t2 as i128 * s1.y as i128;
            let wn = s1.x as i128 * t2 as i128 - s2.x as i128 * t1 as i128;
            if un % det != 0 || wn % det != 0 {
                continue;
            }
            let (u, w) = ((un / det) as i64, (wn / det) as i64);
            if gcd(u, w) != 1 {
                continue;
            }
            let v = LatticeDirection::from_functional(u, w);
            if p.width(v).0 <= d {
                out.push(v);
            }
        }
    }
    out.sort_by_key(|v| v.sort_key());
    out.dedup();
    Ok(out)
}

/// Direction along which a segment from `a` to `b` has width zero.
fn along(a: LatticePoint, b: LatticePoint) -> LatticeDirection {
    let e = b - a;
    let g = gcd(e.x, e.y);
    LatticeDirection::canonical_unchecked(e.x / g, e.y / g)
}

pub fn lattice_width(p: &LatticePolygon) -> i64 {
    match p.dim() {
        Dim::Empty => -1,
        Dim::Point | Dim::Segment => 0,
        Dim::TwoD => lattice_width_data(p).0,
    }
}

fn lattice_width_data(p: &LatticePolygon) -> (i64, Vec<LatticeDirection>) {
    let upper = p.edges().map(|(a, b)| p.width(along(a, b)).0).min().unwrap();
    let cands = directions_with_width_at_most(p, upper).expect("two-dimensional");
    let lw = cands.iter().map(|&v| p.width(v).0).min().unwrap();
    let dirs = cands.into_iter().filter(|&v| p.width(v).0 == lw).collect();
    (lw, dirs)
}

/// Directions attaining the lattice width, sorted by `(b, a)`.
pub fn lattice_width_directions(p: &LatticePolygon) -> Result<Vec<LatticeDirection>> {
    match p.dim() {
        Dim::Empty | Dim::Point => unsupported("every direction attains the lattice width of a point or the empty set"),
        Dim::Segment => Ok(vec![along(p.vertices()[0], p.vertices()[1])]),
        Dim::TwoD => Ok(lattice_width_data(p).1),
    }
}

/// Both signs of each direction with `w(p, ·) ≤ d`, as functionals.
fn signed_functionals(p: &LatticePolygon, d: i64) -> Vec<LatticePoint> {
    directions_with_width_at_most(p, d)
        .expect("two-dimensional")
        .into_iter()
        .flat_map(|v| [v.functional(), -v.functional()])
        .collect()
}

fn size_value(p: &LatticePolygon, u: LatticePoint, w: LatticePoint) -> i64 {
    let mut mu = i128::MAX;
    let mut mw = i128::MAX;
    let mut ms = i128::MIN;
    for &q in p.vertices() {
        let a = u.x as i128 * q.x as i128 + u.y as i128 * q.y as i128;
        let b = w.x as i128 * q.x as i128 + w.y as i128 * q.y as i128;
        mu = mu.min(a);
        mw = mw.min(b);
        ms = ms.max(a + b);
    }
    (ms - mu - mw) as i64
}

/// Smallest `d` such that a unimodular image of `p` fits in `dΣ`; `ls(∅) = −2`.
///
/// An image lies in `dΣ` iff some basis `(u, w)` of the dual lattice has
/// `max⟨·,u+w⟩ − min⟨·,u⟩ − min⟨·,w⟩ ≤ d`; each of `u`, `w` then has width
/// at most `d`, so the search stays inside a finite direction set.
pub fn lattice_size(p: &LatticePolygon) -> i64 {
    match p.dim() {
        Dim::Empty => -2,
        Dim::Point => 0,
        Dim::Segment => {
            let e = p.vertices()[1] - p.vertices()[0];
            gcd(e.x, e.y)
        }
        Dim::TwoD => {
            let mut best = i64::MAX;
            for (u, w) in [((1, 0), (0, 1)), ((-1, 0), (0, 1)), ((1, 0), (0, -1)), ((-1, 0), (0, -1))] {
                best = best.min(size_value(p, u.into(), w.into()));
            }
            let fs = signed_functionals(p, best);
            for &u in &fs {
                if p.width(LatticeDirection::from_functional(u.x, u.y)).0 > best {
                    continue;
                }
                for &w in &fs {
                    if crate::lattice::cross(u, w) == 1 {
                        best = best.min(size_value(p, u, w));
                    }
                }
            }
            best
        }
    }
}

/// Sufficient condition for the pencils of `v1` and `v2` to differ:
/// `w(Δ^(1), v1) > |det(v1, v2)| − 2`.
pub fn provably_distinct_pencils(p: &LatticePolygon, v1: LatticeDirection, v2: LatticeDirection) -> Result<bool> {
    if v1 == v2 {
        return domain(format!("directions {v1} and {v2} coincide up to sign"));
    }
    let w = p.interior_hull().width(v1).0;
    Ok(w > v1.det(v2).abs() - 2)
}
