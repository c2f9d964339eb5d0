use crate::lattice::{ext_gcd, floor_div, gcd, LatticePoint};
use crate::polygon::{Dim, LatticePolygon};

/// Vertex list of the placement that sends edge `i` of the CCW cycle `vs`
/// onto the positive x-axis starting at the origin, with the residual shear
/// fixed by the vertex following the edge.
fn placement(vs: &[LatticePoint], i: usize) -> Vec<LatticePoint> {
    let n = vs.len();
    let base = vs[i];
    let e = vs[(i + 1) % n] - base;
    let g = gcd(e.x, e.y);
    let (ex, ey) = (e.x / g, e.y / g);
    let (_, s, t) = ext_gcd(ex, ey);
    // rows (s, t) and (−ey, ex): e ↦ (g, 0), polygon ↦ upper half-plane
    let map = |p: LatticePoint| {
        let d = p - base;
        LatticePoint::new(s * d.x + t * d.y, -ey * d.x + ex * d.y)
    };
    let mut out: Vec<LatticePoint> = (0..n).map(|k| map(vs[(i + k) % n])).collect();
    let w = out[2];
    let k = -floor_div(w.x as i128, w.y as i128) as i64;
    for p in out.iter_mut() {
        p.x += k * p.y;
    }
    out
}

/// Distinguished representative of the unimodular orbit of `p`.
pub fn canonical_form(p: &LatticePolygon) -> LatticePolygon {
    match p.dim() {
        Dim::Empty => LatticePolygon::empty(),
        Dim::Point => LatticePolygon::point(LatticePoint::ORIGIN),
        Dim::Segment => {
            let d = p.vertices()[1] - p.vertices()[0];
            LatticePolygon::from_tuples(&[(0, 0), (gcd(d.x, d.y), 0)])
        }
        Dim::TwoD => {
            let vs = p.vertices();
            // mirror image (x, y) ↦ (−x, y), re-listed counterclockwise
            let mirrored: Vec<LatticePoint> = vs.iter().rev().map(|q| LatticePoint::new(-q.x, q.y)).collect();
            let mut best: Option<Vec<LatticePoint>> = None;
            for cycle in [vs, &mirrored[..]] {
                for i in 0..cycle.len() {
                    let cand = placement(cycle, i);
                    if best.as_ref().is_none_or(|b| cand < *b) {
                        best = Some(cand);
                    }
                }
            }
            LatticePolygon::hull(&best.unwrap())
        }
    }
}

pub fn are_equivalent(p: &LatticePolygon, q: &LatticePolygon) -> bool {
    if p.dim() != q.dim() || p.vertices().len() != q.vertices().len() || p.volume2() != q.volume2() {
        return false;
    }
    canonical_form(p) == canonical_form(q)
}
