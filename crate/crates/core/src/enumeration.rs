use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canonical::canonical_form;
use crate::error::{domain, Result};
use crate::lattice::LatticePoint;
use crate::polygon::{Dim, LatticePolygon};
use crate::rational::outward_lattice;
use crate::width::lattice_width;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationRecord {
    pub canonical: LatticePolygon,
    pub genus: i64,
    pub lattice_points: i64,
    pub lw: i64,
    pub volume2: i64,
    pub is_maximal: bool,
    pub is_interior_hull_2d: bool,
}

impl EnumerationRecord {
    pub fn new(p: &LatticePolygon) -> Self {
        let canonical = canonical_form(p);
        let counts = canonical.counts();
        let hull = canonical.interior_hull();
        let is_interior_hull_2d = hull.dim() == Dim::TwoD;
        let is_maximal =
            is_interior_hull_2d && outward_lattice(&hull).is_some_and(|m| m.volume2() == canonical.volume2());
        EnumerationRecord {
            lw: lattice_width(&canonical),
            volume2: canonical.volume2(),
            genus: counts.interior,
            lattice_points: counts.lattice,
            is_maximal,
            is_interior_hull_2d,
            canonical,
        }
    }
}

fn records(polys: &[LatticePolygon]) -> Vec<EnumerationRecord> {
    let mut out: Vec<EnumerationRecord> = polys.par_iter().map(EnumerationRecord::new).collect();
    out.sort_by(|a, b| a.canonical.cmp(&b.canonical));
    out
}

/// Hull of `p` with vertex `i` dropped and every other lattice point kept.
fn remove_vertex(p: &LatticePolygon, i: usize) -> LatticePolygon {
    let vs = p.vertices();
    let n = vs.len();
    let prev = vs[(i + n - 1) % n];
    let v = vs[i];
    let next = vs[(i + 1) % n];
    let mut pts: Vec<LatticePoint> = vs.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &q)| q).collect();
    // lattice points of p outside conv(vs \ v) lie in the corner triangle
    let corner = LatticePolygon::hull(&[prev, v, next]);
    pts.extend(corner.lattice_points().into_iter().filter(|&q| q != v));
    LatticePolygon::hull(&pts)
}

/// Visits, once per equivalence class, every lattice polygon `Δ` with
/// `Δ^(1) = gamma`, walking down from `gamma^(−1)` by single-vertex removals.
/// The visitor receives the canonical form and the lattice-point count.
pub fn for_each_with_interior(gamma: &LatticePolygon, mut visit: impl FnMut(&LatticePolygon, i64)) {
    let Some(top) = outward_lattice(gamma) else { return };
    let inner = gamma.vertices();
    let mut seen: HashSet<LatticePolygon> = HashSet::new();
    let top_canon = canonical_form(&top);
    let mut stack = vec![(top.clone(), top.lattice_count())];
    seen.insert(top_canon.clone());
    visit(&top_canon, top.lattice_count());
    while let Some((p, cnt)) = stack.pop() {
        for i in 0..p.vertices().len() {
            let child = remove_vertex(&p, i);
            if child.dim() != Dim::TwoD || !inner.iter().all(|&q| child.strictly_contains(q)) {
                continue;
            }
            let c = canonical_form(&child);
            if seen.contains(&c) {
                continue;
            }
            visit(&c, cnt - 1);
            seen.insert(c);
            stack.push((child, cnt - 1));
        }
    }
}

fn sigma(d: i64) -> LatticePolygon {
    LatticePolygon::from_tuples(&[(0, 0), (d, 0), (0, d)])
}

/// Polygons without interior lattice points and exactly `k` lattice points.
fn empty_interior(k: i64) -> Vec<LatticePolygon> {
    let mut set = HashSet::new();
    if k == 6 {
        set.insert(canonical_form(&sigma(2)));
    }
    // height-one strips conv{(0,0),(a,0),(0,1),(c,1)}
    for a in 1..=k {
        let c = k - a - 2;
        if c < 0 || c > a {
            continue;
        }
        set.insert(canonical_form(&LatticePolygon::from_tuples(&[(0, 0), (a, 0), (0, 1), (c, 1)])));
    }
    let mut v: Vec<_> = set.into_iter().collect();
    v.sort();
    v
}

/// Polygons whose `g ≥ 1` interior points all lie on the middle row of the
/// strip `0 ≤ y ≤ 2`.
fn middle_row_strips(g: i64) -> Vec<LatticePolygon> {
    let mut set = HashSet::new();
    let ceil2 = |x: i64| x.div_euclid(2) + (x.rem_euclid(2) != 0) as i64;
    let floor2 = |x: i64| x.div_euclid(2);
    for l2 in 0..=1i64 {
        for r0 in 0..=2 * g + 2 {
            for r2 in l2..=2 * g + 2 + l2 - r0 {
                // doubled natural bounds of row 1
                let ln = l2;
                let rn = r0 + r2;
                let lefts: Vec<Option<i64>> =
                    std::iter::once(None).chain((floor2(ln) - g - 2..).take_while(|&x| 2 * x < ln).map(Some)).collect();
                let rights: Vec<Option<i64>> = std::iter::once(None)
                    .chain((floor2(rn) + 1..=ceil2(rn) + g + 2).filter(|&x| 2 * x > rn).map(Some))
                    .collect();
                for &xl in &lefts {
                    let lb = xl.map_or(ln, |x| 2 * x);
                    for &xr in &rights {
                        let rb = xr.map_or(rn, |x| 2 * x);
                        if ceil2(rb) - floor2(lb) - 1 != g {
                            continue;
                        }
                        let mut pts = vec![(0, 0), (r0, 0), (l2, 2), (r2, 2)];
                        if let Some(x) = xl {
                            pts.push((x, 1));
                        }
                        if let Some(x) = xr {
                            pts.push((x, 1));
                        }
                        let p = LatticePolygon::from_tuples(&pts);
                        debug_assert_eq!(p.interior_count(), g);
                        set.insert(canonical_form(&p));
                    }
                }
            }
        }
    }
    let mut v: Vec<_> = set.into_iter().collect();
    v.sort();
    v
}

/// Polygons whose interior hull has dimension below two, with genus `g ≥ 1`.
fn low_dimensional_genus(g: i64) -> Vec<LatticePolygon> {
    let mut v = middle_row_strips(g);
    if g == 1 {
        v.push(canonical_form(&sigma(3)));
    }
    v.sort();
    v
}

type Shared<T> = Arc<Vec<T>>;

#[derive(Default)]
struct Level {
    points: HashMap<i64, Shared<LatticePolygon>>,
    interior: HashMap<i64, Shared<LatticePolygon>>,
    two_d: HashMap<i64, Shared<(LatticePolygon, i64)>>,
}

/// Memoized moving-out enumeration.
///
/// Polygons with `k` points and a two-dimensional interior `Γ'` are found
/// below `Γ'^(−1)` for interior polygons `Γ'` of smaller genus, so every level
/// is built from the interior polygons of the levels before it. A lattice
/// width cap `L` only needs interior polygons of width at most `L − 2`.
pub struct Enumerator {
    max_points: i64,
    levels: HashMap<Option<i64>, Level>,
    strips: HashMap<i64, Shared<LatticePolygon>>,
}

impl Enumerator {
    /// `max_points` bounds the lattice-point counts that will be requested.
    pub fn new(max_points: i64) -> Self {
        Enumerator { max_points, levels: HashMap::new(), strips: HashMap::new() }
    }

    fn strips(&mut self, g: i64) -> Shared<LatticePolygon> {
        self.strips.entry(g).or_insert_with(|| Arc::new(low_dimensional_genus(g))).clone()
    }

    fn within(cap: Option<i64>, p: &LatticePolygon) -> bool {
        cap.is_none_or(|c| lattice_width(p) <= c)
    }

    /// Polygons with exactly `k` lattice points (and lattice width `≤ cap`).
    pub fn points(&mut self, cap: Option<i64>, k: i64) -> Shared<LatticePolygon> {
        if let Some(v) = self.levels.get(&cap).and_then(|l| l.points.get(&k)) {
            return v.clone();
        }
        assert!(k <= self.max_points, "point count {k} above the enumerator bound {}", self.max_points);
        let mut out: Vec<LatticePolygon> = empty_interior(k).into_iter().filter(|p| Self::within(cap, p)).collect();
        for g in 1..=k - 3 {
            for p in self.strips(g).iter() {
                if p.lattice_count() == k && Self::within(cap, p) {
                    out.push(p.clone());
                }
            }
        }
        for g in 3..=k - 3 {
            let two = self.two_d(cap, g);
            out.extend(two.iter().filter(|(_, c)| *c == k).map(|(p, _)| p.clone()));
        }
        out.sort();
        let out = Arc::new(out);
        self.levels.entry(cap).or_default().points.insert(k, out.clone());
        out
    }

    /// Genus-`g` polygons that are interior hulls of some lattice polygon.
    pub fn interior_polygons(&mut self, cap: Option<i64>, g: i64) -> Shared<LatticePolygon> {
        if let Some(v) = self.levels.get(&cap).and_then(|l| l.interior.get(&g)) {
            return v.clone();
        }
        let pts = self.points(cap, g);
        let out: Vec<LatticePolygon> = pts.par_iter().filter(|p| outward_lattice(p).is_some()).cloned().collect();
        let out = Arc::new(out);
        self.levels.entry(cap).or_default().interior.insert(g, out.clone());
        out
    }

    /// Genus-`g` polygons with 2D interior hull, at most `max_points` points and width `≤ cap`.
    fn two_d(&mut self, cap: Option<i64>, g: i64) -> Shared<(LatticePolygon, i64)> {
        if let Some(v) = self.levels.get(&cap).and_then(|l| l.two_d.get(&g)) {
            return v.clone();
        }
        let inner_cap = cap.map(|c| c - 2);
        let hulls =
            if inner_cap.is_some_and(|c| c < 1) { Arc::new(Vec::new()) } else { self.interior_polygons(inner_cap, g) };
        let max_points = self.max_points;
        let mut out: Vec<(LatticePolygon, i64)> = hulls
            .par_iter()
            .flat_map_iter(|gamma| {
                let mut found = Vec::new();
                for_each_with_interior(gamma, |p, c| {
                    if c <= max_points && Self::within(cap, p) {
                        found.push((p.clone(), c));
                    }
                });
                found
            })
            .collect();
        out.sort();
        let out = Arc::new(out);
        self.levels.entry(cap).or_default().two_d.insert(g, out.clone());
        out
    }
}

pub fn enumerate_with_point_count(k: i64) -> Result<Vec<EnumerationRecord>> {
    if k < 3 {
        return domain(format!("a two-dimensional lattice polygon has at least 3 lattice points, got k = {k}"));
    }
    let mut e = Enumerator::new(k);
    Ok(records(&e.points(None, k)))
}

pub fn enumerate_interior_hulls(g: i64) -> Result<Vec<EnumerationRecord>> {
    if g < 3 {
        return domain(format!("two-dimensional interior hulls need genus at least 3, got {g}"));
    }
    let mut e = Enumerator::new(g);
    Ok(records(&e.interior_polygons(None, g)))
}

pub fn enumerate_maximal(g: i64) -> Result<Vec<EnumerationRecord>> {
    if g < 3 {
        return domain(format!("maximal polygons with two-dimensional interior need genus at least 3, got {g}"));
    }
    let mut e = Enumerator::new(g);
    let hulls = e.interior_polygons(None, g);
    let maxes: Vec<LatticePolygon> = hulls.iter().map(|h| outward_lattice(h).expect("interior polygon")).collect();
    Ok(records(&maxes))
}

/// Interior hull classes whose subpolygons make up the genus-`g` polygons
/// with two-dimensional interior.
pub fn genus_hull_classes(g: i64) -> Result<Vec<LatticePolygon>> {
    if g < 1 {
        return domain("genus 0 polygons form an infinite family");
    }
    if g < 3 {
        return Ok(Vec::new());
    }
    let mut e = Enumerator::new(g);
    Ok(e.interior_polygons(None, g).to_vec())
}

/// Records of all genus-`g` polygons whose interior hull is `gamma`.
pub fn records_with_interior(gamma: &LatticePolygon) -> Vec<EnumerationRecord> {
    let mut polys = Vec::new();
    for_each_with_interior(gamma, |p, _| polys.push(p.clone()));
    polys.iter().map(EnumerationRecord::new).collect()
}

/// Records of the genus-`g` polygons with collinear or single-point interior.
pub fn low_dimensional_records(g: i64) -> Vec<EnumerationRecord> {
    records(&low_dimensional_genus(g))
}

pub fn enumerate_by_genus(g: i64) -> Result<Vec<EnumerationRecord>> {
    if g < 1 {
        return domain("genus 0 polygons form an infinite family");
    }
    let hulls = genus_hull_classes(g)?;
    let mut out: Vec<EnumerationRecord> = hulls.par_iter().flat_map_iter(records_with_interior).collect();
    out.extend(low_dimensional_records(g));
    out.sort_by(|a, b| a.canonical.cmp(&b.canonical));
    Ok(out)
}

/// Number of genus-`g` classes, without materializing records.
pub fn count_by_genus(g: i64) -> Result<usize> {
    if g < 1 {
        return domain("genus 0 polygons form an infinite family");
    }
    let hulls = genus_hull_classes(g)?;
    let two_d: usize = hulls
        .par_iter()
        .map(|h| {
            let mut n = 0usize;
            for_each_with_interior(h, |_, _| n += 1);
            n
        })
        .sum();
    Ok(two_d + low_dimensional_genus(g).len())
}
