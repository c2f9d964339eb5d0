// Shared by the oracle, property and acceptance targets. Each target uses a
// different subset.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use latcurve::{
    lattice_width, lattice_width_directions, minkowski_sum, mixed_volume, pencil_data, recognize, width_invariants,
    Dim, Family, LatticeDirection, LatticePoint, LatticePolygon,
};

type Pt = (i64, i64);

fn cross(o: Pt, a: Pt, b: Pt) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Convex hull vertices, counter-clockwise, collinear points dropped.
pub fn hull(points: &[Pt]) -> Vec<Pt> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Pt> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Pt> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Lattice points of a hull, by testing every point of its bounding box.
pub fn points_in(vs: &[Pt]) -> Vec<Pt> {
    let (x0, x1) = (vs.iter().map(|p| p.0).min().unwrap(), vs.iter().map(|p| p.0).max().unwrap());
    let (y0, y1) = (vs.iter().map(|p| p.1).min().unwrap(), vs.iter().map(|p| p.1).max().unwrap());
    let n = vs.len();
    let mut out = Vec::new();
    for x in x0..=x1 {
        for y in y0..=y1 {
            if (0..n).all(|i| cross(vs[i], vs[(i + 1) % n], (x, y)) >= 0) {
                out.push((x, y));
            }
        }
    }
    out
}

pub fn interior_count(vs: &[Pt]) -> usize {
    let n = vs.len();
    points_in(vs).into_iter().filter(|&q| (0..n).all(|i| cross(vs[i], vs[(i + 1) % n], q) > 0)).count()
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, s, t) = ext_gcd(b, a.rem_euclid(b));
        (g, t, s - a.div_euclid(b) * t)
    }
}

/// Normal form under GL2(Z) and translations: for every vertex and both
/// neighbours, send the vertex to the origin and the edge to the positive
/// x-axis with the rest of the polygon above it, reduce the shear by the
/// other neighbour, and keep the smallest sorted vertex list.
pub fn normal_form(vs: &[Pt]) -> Vec<Pt> {
    let n = vs.len();
    let mut best: Option<Vec<Pt>> = None;
    for i in 0..n {
        for (nb, other) in [((i + 1) % n, (i + n - 1) % n), ((i + n - 1) % n, (i + 1) % n)] {
            let o = vs[i];
            let (ex, ey) = (vs[nb].0 - o.0, vs[nb].1 - o.1);
            let (g, s, t) = ext_gcd(ex, ey);
            let (ex, ey) = (ex / g, ey / g);
            // rows (s, t) and (-ey, ex): sends e to (1, 0), determinant 1
            let map = |p: Pt, sign: i64| {
                let (x, y) = (p.0 - o.0, p.1 - o.1);
                (s * x + t * y, sign * (-ey * x + ex * y))
            };
            let probe = map(vs[other], 1);
            let sign = if probe.1 > 0 { 1 } else { -1 };
            let q = map(vs[other], sign);
            let k = q.0.div_euclid(q.1);
            let mut img: Vec<Pt> = vs.iter().map(|&p| map(p, sign)).map(|(x, y)| (x - k * y, y)).collect();
            img.sort();
            if best.as_ref().is_none_or(|b| img < *b) {
                best = Some(img);
            }
        }
    }
    best.unwrap()
}

/// All classes of two-dimensional lattice polygons inside `[0,w] x [0,h]`
/// whose value of `key` is at least `floor`, found by removing one vertex at
/// a time from the full box. `key` must not increase under removal.
pub fn box_descendants(w: i64, h: i64, floor: usize, key: impl Fn(&[Pt]) -> usize) -> Vec<(Vec<Pt>, usize)> {
    let top = vec![(0, 0), (w, 0), (w, h), (0, h)];
    let mut seen: HashSet<Vec<Pt>> = HashSet::new();
    let mut out = Vec::new();
    let mut stack = vec![top.clone()];
    seen.insert(normal_form(&top));
    while let Some(p) = stack.pop() {
        out.push((p.clone(), key(&p)));
        let pts = points_in(&p);
        for v in &p {
            let rest: Vec<Pt> = pts.iter().copied().filter(|q| q != v).collect();
            let child = hull(&rest);
            if child.len() < 3 || key(&child) < floor {
                continue;
            }
            if seen.insert(normal_form(&child)) {
                stack.push(child);
            }
        }
    }
    out
}

/// Normal forms of every genus-`g` polygon fitting in one of the boxes.
pub fn oracle_genus(g: usize, boxes: &[(i64, i64)]) -> BTreeSet<Vec<Pt>> {
    boxes
        .iter()
        .flat_map(|&(w, h)| box_descendants(w, h, g, interior_count))
        .filter(|(_, k)| *k == g)
        .map(|(p, _)| normal_form(&p))
        .collect()
}

/// Normal forms of every two-dimensional polygon with `k` lattice points
/// fitting in one of the boxes.
pub fn oracle_points(k: usize, boxes: &[(i64, i64)]) -> BTreeSet<Vec<Pt>> {
    boxes
        .iter()
        .flat_map(|&(w, h)| box_descendants(w, h, k, |p| points_in(p).len()))
        .filter(|(_, c)| *c == k)
        .map(|(p, _)| normal_form(&p))
        .collect()
}

pub fn normal_form_of(p: &LatticePolygon) -> Vec<Pt> {
    normal_form(&p.to_tuples())
}

pub fn is_family(p: &LatticePolygon, f: Family) -> bool {
    recognize(p).is_some_and(|n| n.family == f)
}

fn det(u: LatticeDirection, v: LatticeDirection) -> i64 {
    u.a() * v.b() - u.b() * v.a()
}

/// Checks one two-dimensional polygon against the structural laws. Returns
/// one message per broken law.
pub fn check_polygon(p: &LatticePolygon) -> Vec<String> {
    let mut bad = Vec::new();
    let mut fail = |law: &str, detail: String| bad.push(format!("{law}: {p:?} {detail}"));
    assert_eq!(p.dim(), Dim::TwoD);
    let c = p.counts();
    let g = c.interior;
    if p.volume2() != 2 * c.interior + c.boundary - 2 {
        fail("pick", format!("volume2 {} interior {} boundary {}", p.volume2(), c.interior, c.boundary));
    }
    let lw = lattice_width(p);
    let dirs = lattice_width_directions(p).expect("two-dimensional");
    let sigma = is_family(p, Family::SigmaMultiple);
    let gamma51 = is_family(p, Family::Gamma51Multiple);
    let upsilon = is_family(p, Family::UpsilonMultiple);
    let inner = p.interior_hull();

    // width recursion and inherited directions
    if !inner.is_empty() {
        let gap = lw - lattice_width(&inner);
        let want = if sigma { 3 } else { 2 };
        if gap != want {
            fail("width recursion", format!("gap {gap}, expected {want}"));
        }
        if inner.is_two_d() && !sigma {
            let inner_dirs = lattice_width_directions(&inner).unwrap();
            if let Some(v) = dirs.iter().find(|v| !inner_dirs.contains(v)) {
                fail("inherited direction", format!("{v} is not a width direction of the interior"));
            }
        }
    }

    // invariants along width directions
    if lw >= 2 {
        for &v in &dirs {
            let e = width_invariants(p, v).unwrap().invariants;
            if !sigma && e.iter().any(|&x| x < 0) {
                fail("non-negativity", format!("E = {e:?} along {v}"));
            }
            if e.iter().any(|&x| lw * x > 2 * g - 2) {
                fail("width-invariant inequality", format!("E = {e:?} along {v}, lw {lw}, genus {g}"));
            }
            if inner.is_two_d() && !sigma && !pencil_data(p, v).unwrap().complete {
                fail("completeness", format!("incomplete pencil along {v}"));
            }
        }
    }

    // direction pairs
    if dirs.len() > 4 || (dirs.len() == 4 && !gamma51) {
        fail("direction count", format!("{} directions", dirs.len()));
    }
    for (i, &u) in dirs.iter().enumerate() {
        for &v in &dirs[i + 1..] {
            let d = det(u, v).abs();
            if d > 2 || (d == 2 && !gamma51) {
                fail("direction determinant", format!("|det({u},{v})| = {d}"));
            }
        }
    }
    if dirs.len() >= 2 && g > (lw - 1) * (lw - 1) {
        fail("genus bound", format!("genus {g} > (lw-1)^2 with lw {lw}"));
    }

    // area bound
    let (lhs, rhs) = (3 * lw * lw, 4 * p.volume2());
    if lhs > rhs || ((lhs == rhs) != upsilon) {
        fail("area bound", format!("3 lw^2 = {lhs}, 4 volume2 = {rhs}"));
    }

    // scroll degree over every direction of width 2..=genus
    if inner.is_two_d() {
        let ds = latcurve::directions_with_width_at_most(p, g).unwrap();
        for v in ds {
            let (w, _) = p.width(v);
            if w < 2 {
                continue;
            }
            let pd = pencil_data(p, v).unwrap();
            if pd.degree != w {
                fail("pencil degree", format!("degree {} width {w} along {v}", pd.degree));
            }
            if pd.complete && pd.scrollar.iter().sum::<i64>() != g - pd.degree + 1 {
                fail("scroll degree", format!("scrollar {:?} degree {} along {v}", pd.scrollar, pd.degree));
            }
        }
    }

    // mixed volume against a segment
    for (a, b) in [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 3), (-3, 2)] {
        let v = LatticeDirection::new(a, b).unwrap();
        let seg = LatticePolygon::from_tuples(&[(0, 0), (a, b)]);
        if mixed_volume(p, &seg).unwrap() != p.width(v).0 {
            fail("segment mixed volume", format!("direction {v}"));
        }
    }
    bad
}

/// Edge-merge Minkowski sum against the hull of all pairwise vertex sums.
pub fn check_minkowski(p: &LatticePolygon, q: &LatticePolygon) -> Option<String> {
    let fast = minkowski_sum(p, q).unwrap();
    let pairs: Vec<LatticePoint> =
        p.vertices().iter().flat_map(|&a| q.vertices().iter().map(move |&b| a + b)).collect();
    let slow = LatticePolygon::hull(&pairs);
    (fast != slow).then(|| format!("minkowski {p:?} + {q:?}: {fast:?} vs {slow:?}"))
}
