use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::canonical::canonical_form;
use crate::curve::{in_gonality_exception_list, plane_curve_condition};
use crate::enumeration::Enumerator;
use crate::error::{domain, Result};
use crate::named::{recognize, Family, NamedFamily};
use crate::polygon::LatticePolygon;
use crate::rational::outward_lattice;
use crate::width::lattice_width;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundTable {
    Gonal,
    Neargonal,
}

impl BoundTable {
    /// Claimed lower bounds on `2Vol(Δ^max)` indexed by `lw(Δ^max)`.
    pub fn claimed(self) -> &'static [(i64, i64)] {
        match self {
            BoundTable::Gonal => &[(3, 18), (4, 20), (5, 25), (6, 28)],
            BoundTable::Neargonal => &[(3, 24), (4, 24), (5, 30), (6, 34), (7, 46), (8, 55)],
        }
    }

    pub fn max_lw(self) -> i64 {
        self.claimed().last().unwrap().0
    }

    /// Maximal polygons stated to undercut the table, with their `(lw, 2Vol)`.
    pub fn named_exceptions(self) -> &'static [(Family, i64, i64)] {
        match self {
            BoundTable::Gonal => &[],
            BoundTable::Neargonal => &[(Family::Delta1, 5, 25), (Family::Delta2, 6, 32), (Family::Delta3, 6, 33)],
        }
    }

    fn claimed_at(self, lw: i64) -> i64 {
        self.claimed().iter().find(|r| r.0 == lw).unwrap().1
    }

    /// Whether `hull` (as `Δ^(1)`) is excluded from the table.
    pub fn excludes(self, hull: &LatticePolygon) -> bool {
        if in_gonality_exception_list(hull) {
            return true;
        }
        match self {
            BoundTable::Gonal => false,
            BoundTable::Neargonal => {
                matches!(
                    recognize(hull),
                    Some(NamedFamily { family: Family::UpsilonMultiple, d: 2 | 3 })
                        | Some(NamedFamily { family: Family::Gamma7 | Family::Gamma8, .. })
                ) || !plane_curve_condition(hull)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRow {
    pub lw: i64,
    pub claimed: i64,
    pub min_volume2: Option<i64>,
    pub witness: Option<LatticePolygon>,
    pub unfiltered_min_volume2: Option<i64>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionHit {
    pub family: Option<NamedFamily>,
    pub polygon: LatticePolygon,
    pub lw: i64,
    pub volume2: i64,
    /// The `(lw, 2Vol)` pair stated for this named polygon, if any.
    pub claimed: Option<(i64, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub table: BoundTable,
    pub genus_cutoff: i64,
    pub rows: Vec<BoundRow>,
    pub exceptions_found: Vec<ExceptionHit>,
    /// Every reported minimum is at most the smallest `2Vol` a polygon of
    /// genus above the cutoff can have, so no larger cutoff can change it.
    pub saturated: bool,
    pub pass: bool,
}

/// Verifies a bound table for `lw(Δ^max) = 3..=max_lw`.
///
/// By Pick, `2Vol(Δ^max) = 2g + b − 2 ≥ 2g + 1`, so a polygon violating a
/// bound `B` has genus at most `(B − 1) / 2`; interior polygons `Γ` are only
/// needed up to that genus and up to lattice width `max_lw − 2`.
pub fn verify_bounds(table: BoundTable, max_lw: i64) -> Result<BoundReport> {
    if !(3..=table.max_lw()).contains(&max_lw) {
        return domain(format!("max_lw must lie in 3..={} for the {table:?} table, got {max_lw}", table.max_lw()));
    }
    let bound_max = table.claimed_at(max_lw);
    let cutoff = (bound_max - 1) / 2;
    let mut enumerator = Enumerator::new(cutoff);
    // lw -> (min, witness) filtered, and unfiltered min
    let mut best: BTreeMap<i64, (i64, LatticePolygon)> = BTreeMap::new();
    let mut raw: BTreeMap<i64, i64> = BTreeMap::new();
    let mut hits = Vec::new();
    for g in 3..=cutoff {
        let hulls = enumerator.interior_polygons(Some(max_lw - 2), g);
        for hull in hulls.iter() {
            let m = outward_lattice(hull).expect("interior polygon");
            let lw = lattice_width(&m);
            if !(3..=max_lw).contains(&lw) {
                continue;
            }
            let v = m.volume2();
            let e = raw.entry(lw).or_insert(v);
            *e = (*e).min(v);
            if table.excludes(hull) {
                continue;
            }
            if v < table.claimed_at(lw) {
                let family = recognize(&m);
                let claimed =
                    table.named_exceptions().iter().find(|e| Some(NamedFamily { family: e.0, d: 1 }) == family);
                hits.push(ExceptionHit {
                    family,
                    polygon: canonical_form(&m),
                    lw,
                    volume2: v,
                    claimed: claimed.map(|e| (e.1, e.2)),
                });
                continue;
            }
            let c = canonical_form(&m);
            match best.get(&lw) {
                Some((b, w)) if (*b, w) <= (v, &c) => {}
                _ => {
                    best.insert(lw, (v, c));
                }
            }
        }
    }
    hits.sort_by(|a, b| (a.lw, a.volume2, &a.polygon).cmp(&(b.lw, b.volume2, &b.polygon)));
    let rows: Vec<BoundRow> = table
        .claimed()
        .iter()
        .filter(|r| r.0 <= max_lw)
        .map(|&(lw, claimed)| {
            let found = best.get(&lw);
            BoundRow {
                lw,
                claimed,
                min_volume2: found.map(|f| f.0),
                witness: found.map(|f| f.1.clone()),
                unfiltered_min_volume2: raw.get(&lw).copied(),
                pass: found.is_some_and(|f| f.0 == claimed),
            }
        })
        .collect();
    let saturated = rows.iter().all(|r| r.min_volume2.is_some_and(|m| m <= 2 * cutoff + 3));
    let expected: Vec<_> = table.named_exceptions().iter().filter(|e| e.1 <= max_lw).collect();
    let hits_ok = hits.len() == expected.len() && hits.iter().all(|h| h.claimed == Some((h.lw, h.volume2)));
    let pass = hits_ok && rows.iter().all(|r| r.pass);
    Ok(BoundReport { table, genus_cutoff: cutoff, rows, exceptions_found: hits, saturated, pass })
}

pub fn verify_gonality_bounds(max_lw: i64) -> Result<BoundReport> {
    verify_bounds(BoundTable::Gonal, max_lw)
}

pub fn verify_neargonal_bounds(max_lw: i64) -> Result<BoundReport> {
    verify_bounds(BoundTable::Neargonal, max_lw)
}

impl BoundReport {
    /// Fixed-format human table.
    pub fn render(&self) -> String {
        let mut s = format!("table {:?}  genus cutoff {}\n", self.table, self.genus_cutoff).to_lowercase();
        s.push_str(" lw  claimed  found  unfiltered  status\n");
        for r in &self.rows {
            let f = |x: Option<i64>| x.map_or("-".to_string(), |v| v.to_string());
            s.push_str(&format!(
                "{:>3}  {:>7}  {:>5}  {:>10}  {}\n",
                r.lw,
                r.claimed,
                f(r.min_volume2),
                f(r.unfiltered_min_volume2),
                if r.pass { "PASS" } else { "FAIL" }
            ));
        }
        for h in &self.exceptions_found {
            let name = h.family.map_or("unrecognized".to_string(), |f| f.to_string());
            let claim = h.claimed.map_or("unexpected".to_string(), |(l, v)| {
                let ok = (l, v) == (h.lw, h.volume2);
                format!("stated lw {l} volume2 {v}: {}", if ok { "PASS" } else { "FAIL" })
            });
            s.push_str(&format!("exception {name}: lw {} volume2 {} ({claim}) at {}\n", h.lw, h.volume2, h.polygon));
        }
        s.push_str(&format!("saturated {}  overall {}\n", self.saturated, if self.pass { "PASS" } else { "FAIL" }));
        s
    }
}
