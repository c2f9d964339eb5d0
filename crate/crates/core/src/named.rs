use std::fmt;

use serde::{Deserialize, Serialize};

use crate::canonical::canonical_form;
use crate::polygon::{Dim, LatticePolygon};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Family {
    SigmaMultiple,
    SquareMultiple,
    UpsilonMultiple,
    Gamma51Multiple,
    Gamma52,
    Gamma53,
    Gamma7,
    Gamma8,
    Delta1,
    Delta2,
    Delta3,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::SigmaMultiple,
        Family::SquareMultiple,
        Family::UpsilonMultiple,
        Family::Gamma51Multiple,
        Family::Gamma52,
        Family::Gamma53,
        Family::Gamma7,
        Family::Gamma8,
        Family::Delta1,
        Family::Delta2,
        Family::Delta3,
    ];

    pub fn scalable(self) -> bool {
        matches!(
            self,
            Family::SigmaMultiple | Family::SquareMultiple | Family::UpsilonMultiple | Family::Gamma51Multiple
        )
    }

    /// Vertices of the unit member of the family.
    pub fn template(self) -> LatticePolygon {
        let pts: &[(i64, i64)] = match self {
            Family::SigmaMultiple => &[(0, 0), (1, 0), (0, 1)],
            Family::SquareMultiple => &[(0, 0), (1, 0), (1, 1), (0, 1)],
            Family::UpsilonMultiple => &[(-1, -1), (1, 0), (0, 1)],
            Family::Gamma51Multiple => &[(-1, 0), (0, -1), (1, 0), (0, 1)],
            Family::Gamma52 => &[(-1, 0), (0, -1), (1, -1), (0, 1)],
            Family::Gamma53 => &[(-1, -1), (1, -1), (0, 1)],
            Family::Gamma7 => &[(-1, -1), (0, -1), (2, 0), (1, 1), (0, 1)],
            Family::Gamma8 => &[(-1, -1), (0, -1), (3, 0), (1, 1), (0, 1)],
            Family::Delta1 => &[(-2, 0), (6, -2), (0, 2), (-2, 3)],
            Family::Delta2 => &[(-2, 1), (-1, 0), (3, -2), (4, -2), (1, 4)],
            Family::Delta3 => &[(-2, -2), (4, 0), (4, 1), (1, 4)],
        };
        LatticePolygon::from_tuples(pts)
    }

    fn symbol(self) -> &'static str {
        match self {
            Family::SigmaMultiple => "Σ",
            Family::SquareMultiple => "□",
            Family::UpsilonMultiple => "Υ",
            Family::Gamma51Multiple => "Γ5_1",
            Family::Gamma52 => "Γ5_2",
            Family::Gamma53 => "Γ5_3",
            Family::Gamma7 => "Γ7",
            Family::Gamma8 => "Γ8",
            Family::Delta1 => "Δ1",
            Family::Delta2 => "Δ2",
            Family::Delta3 => "Δ3",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NamedFamily {
    pub family: Family,
    pub d: i64,
}

impl NamedFamily {
    pub fn new(family: Family, d: i64) -> Self {
        assert!(d >= 1 && (d == 1 || family.scalable()), "bad scale {d} for {family:?}");
        NamedFamily { family, d }
    }

    pub fn polygon(&self) -> LatticePolygon {
        self.family.template().scale(self.d)
    }
}

impl fmt::Display for NamedFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d == 1 {
            write!(f, "{}", self.family.symbol())
        } else {
            write!(f, "{}{}", self.d, self.family.symbol())
        }
    }
}

fn isqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    (r * r == n).then_some(r)
}

/// Identifies `p` with a named family member, recovering the scale from the area.
pub fn recognize(p: &LatticePolygon) -> Option<NamedFamily> {
    if p.dim() != Dim::TwoD {
        return None;
    }
    let v = p.volume2();
    let nv = p.vertices().len();
    let mut canon = None;
    for fam in Family::ALL {
        let t = fam.template();
        if t.vertices().len() != nv {
            continue;
        }
        let tv = t.volume2();
        if v % tv != 0 {
            continue;
        }
        let Some(d) = isqrt(v / tv) else { continue };
        if d != 1 && !fam.scalable() {
            continue;
        }
        let c = canon.get_or_insert_with(|| canonical_form(p));
        if *c == canonical_form(&t.scale(d)) {
            return Some(NamedFamily::new(fam, d));
        }
    }
    None
}

/// `Some(d)` when `p ≅ dΣ` for some `d ≥ 0` (a point counts as `0Σ`).
pub fn sigma_multiple(p: &LatticePolygon) -> Option<i64> {
    match p.dim() {
        Dim::Point => Some(0),
        Dim::TwoD => match recognize(p) {
            Some(NamedFamily { family: Family::SigmaMultiple, d }) => Some(d),
            _ => None,
        },
        _ => None,
    }
}

pub fn is_family(p: &LatticePolygon, family: Family, d: i64) -> bool {
    recognize(p) == Some(NamedFamily { family, d })
}
