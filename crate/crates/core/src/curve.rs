use serde::{Deserialize, Serialize};

use crate::error::{domain, unsupported, Error, Result};
use crate::lattice::{gcd, LatticeDirection};
use crate::named::{recognize, sigma_multiple, Family, NamedFamily};
use crate::polygon::{Dim, LatticePolygon};
use crate::width::{lattice_size, lattice_width, lattice_width_directions, width_invariants};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PencilKind {
    Exactly,
    AtMost,
    Infinite,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PencilCount {
    pub kind: PencilKind,
    pub n: Option<i64>,
    pub directions: Vec<LatticeDirection>,
}

impl PencilCount {
    fn exactly(directions: Vec<LatticeDirection>) -> Self {
        PencilCount { kind: PencilKind::Exactly, n: Some(directions.len() as i64), directions }
    }

    fn infinite() -> Self {
        PencilCount { kind: PencilKind::Infinite, n: None, directions: Vec::new() }
    }

    pub fn is_finite(&self) -> bool {
        self.kind != PencilKind::Infinite
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PencilData {
    pub direction: LatticeDirection,
    pub degree: i64,
    pub scrollar: Vec<i64>,
    pub complete: bool,
    pub rank: i64,
    pub scroll_dim: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NearGonalClass {
    AllCombinatorial,
    InfinitelyMany,
    ExistsNonCombinatorial,
    NoCombinatorialExistenceOpen,
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clifford {
    pub index: i64,
    pub dimension: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveProfile {
    pub genus: i64,
    pub gonality: i64,
    pub lw: i64,
    pub ls_interior: i64,
    pub pencils: PencilCount,
    pub clifford: Option<Clifford>,
    pub smooth_plane: bool,
    pub near_gonal: NearGonalClass,
    pub pencil_data: Vec<PencilData>,
}

fn require_two_d(p: &LatticePolygon, what: &str) -> Result<()> {
    if p.dim() != Dim::TwoD {
        return unsupported(format!("{what} needs a two-dimensional polygon, got {:?}", p.dim()));
    }
    Ok(())
}

fn hull_is(hull: &LatticePolygon, family: Family, d: i64) -> bool {
    hull.dim() == Dim::TwoD && recognize(hull) == Some(NamedFamily { family, d })
}

/// Interior hull in list (5): ∅, (d−3)Σ, Υ, 2Υ, Γ⁵₁, Γ⁵₂, Γ⁵₃.
pub fn in_gonality_exception_list(hull: &LatticePolygon) -> bool {
    if hull.is_empty() || sigma_multiple(hull).is_some() {
        return true;
    }
    matches!(
        recognize(hull),
        Some(NamedFamily { family: Family::UpsilonMultiple, d: 1 | 2 })
            | Some(NamedFamily { family: Family::Gamma51Multiple, d: 1 })
            | Some(NamedFamily { family: Family::Gamma52 | Family::Gamma53, .. })
    )
}

pub fn genus(p: &LatticePolygon) -> Result<i64> {
    require_two_d(p, "genus")?;
    Ok(p.interior_count())
}

pub fn gonality(p: &LatticePolygon) -> Result<i64> {
    require_two_d(p, "gonality")?;
    let hull = p.interior_hull();
    Ok(match hull.dim() {
        Dim::Empty => 1,
        Dim::Point | Dim::Segment => 2,
        Dim::TwoD if hull_is(&hull, Family::UpsilonMultiple, 1) => 3,
        Dim::TwoD => lattice_width(&hull) + 2,
    })
}

pub fn gonality_pencils(p: &LatticePolygon) -> Result<PencilCount> {
    require_two_d(p, "pencil count")?;
    let hull = p.interior_hull();
    if hull.is_empty() {
        return Ok(PencilCount { kind: PencilKind::Exactly, n: Some(1), directions: Vec::new() });
    }
    if hull_is(&hull, Family::UpsilonMultiple, 1) {
        return Ok(PencilCount { kind: PencilKind::AtMost, n: Some(2), directions: Vec::new() });
    }
    if sigma_multiple(&hull).is_some() {
        return Ok(PencilCount::infinite());
    }
    if hull.dim() == Dim::TwoD {
        if let Some(nf) = recognize(&hull) {
            let exceptional = matches!(
                nf,
                NamedFamily { family: Family::UpsilonMultiple, d: 2 }
                    | NamedFamily { family: Family::Gamma51Multiple, d: 1 }
                    | NamedFamily { family: Family::Gamma52 | Family::Gamma53, .. }
            );
            if exceptional {
                return Ok(PencilCount::infinite());
            }
        }
    }
    let gon = gonality(p)?;
    let lw = lattice_width(p);
    if lw != gon {
        return Err(Error::Internal(format!(
            "lattice width {lw} differs from gonality {gon} outside the exception list"
        )));
    }
    let dirs = lattice_width_directions(p)?;
    if hull.dim() == Dim::Segment && dirs.len() != 1 {
        return Err(Error::Internal(format!("hyperelliptic polygon with {} lattice width directions", dirs.len())));
    }
    Ok(PencilCount::exactly(dirs))
}

pub fn has_combinatorial_gonality_pencil(p: &LatticePolygon) -> Result<bool> {
    Ok(lattice_width(p) == gonality(p)?)
}

pub fn clifford(p: &LatticePolygon) -> Result<Clifford> {
    require_two_d(p, "Clifford index")?;
    let g = p.interior_count();
    if g == 0 {
        return unsupported("Clifford index is undefined in genus 0");
    }
    let hull = p.interior_hull();
    let (index, dimension) = if g <= 3 {
        (if hull_is(&hull, Family::SigmaMultiple, 1) { 1 } else { 0 }, 1)
    } else if let Some(k) = sigma_multiple(&hull).filter(|&k| k >= 2) {
        (k - 1, 2)
    } else if hull_is(&hull, Family::UpsilonMultiple, 1) {
        (1, 1)
    } else if hull_is(&hull, Family::UpsilonMultiple, 2) {
        (3, 3)
    } else {
        (lattice_width(&hull), 1)
    };
    Ok(Clifford { index, dimension })
}

pub fn is_smooth_plane_model(p: &LatticePolygon) -> Result<bool> {
    require_two_d(p, "smooth plane test")?;
    let hull = p.interior_hull();
    Ok(hull.is_empty() || sigma_multiple(&hull).is_some())
}

pub fn pencil_data(p: &LatticePolygon, v: LatticeDirection) -> Result<PencilData> {
    let hull = p.interior_hull();
    if hull.dim() != Dim::TwoD {
        return unsupported("pencil data needs a two-dimensional interior hull");
    }
    let prof = width_invariants(p, v)?;
    Ok(pencil_from_invariants(v, prof.width, &prof.invariants, p.interior_count()))
}

fn pencil_from_invariants(v: LatticeDirection, degree: i64, e: &[i64], genus: i64) -> PencilData {
    let mut scrollar: Vec<i64> = e.iter().copied().filter(|&x| x >= 0).collect();
    scrollar.sort_unstable();
    let negatives = (e.len() - scrollar.len()) as i64;
    let nonneg = scrollar.len() as i64;
    PencilData {
        direction: v,
        degree,
        scrollar,
        complete: negatives == 0,
        rank: negatives + 1,
        scroll_dim: if nonneg == genus { genus - 1 } else { nonneg },
    }
}

/// `ls(Δ^(1)) ≥ lw(Δ^(1)) + 2`.
pub fn plane_curve_condition(hull: &LatticePolygon) -> bool {
    lattice_size(hull) >= lattice_width(hull) + 2
}

pub fn near_gonal(p: &LatticePolygon) -> Result<NearGonalClass> {
    if p.dim() != Dim::TwoD || p.interior_count() < 3 {
        return Ok(NearGonalClass::NotApplicable);
    }
    let hull = p.interior_hull();
    Ok(match recognize(&hull) {
        Some(NamedFamily { family: Family::UpsilonMultiple, d: 3 }) => NearGonalClass::ExistsNonCombinatorial,
        Some(NamedFamily { family: Family::Gamma8, .. }) => NearGonalClass::NoCombinatorialExistenceOpen,
        Some(NamedFamily { family: Family::UpsilonMultiple, d: 2 })
        | Some(NamedFamily { family: Family::Gamma7, .. }) => NearGonalClass::InfinitelyMany,
        _ if !plane_curve_condition(&hull) => NearGonalClass::InfinitelyMany,
        _ => NearGonalClass::AllCombinatorial,
    })
}

pub fn curve_profile(p: &LatticePolygon) -> Result<CurveProfile> {
    require_two_d(p, "curve profile")?;
    let genus = p.interior_count();
    let hull = p.interior_hull();
    let pencils = gonality_pencils(p)?;
    let pencil_data = if hull.dim() == Dim::TwoD {
        pencils.directions.iter().map(|&v| pencil_data(p, v)).collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    Ok(CurveProfile {
        genus,
        gonality: gonality(p)?,
        lw: lattice_width(p),
        ls_interior: lattice_size(&hull),
        pencils,
        clifford: if genus >= 1 { Some(clifford(p)?) } else { None },
        smooth_plane: is_smooth_plane_model(p)?,
        near_gonal: near_gonal(p)?,
        pencil_data,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CabProfile {
    pub polygon: LatticePolygon,
    pub genus: i64,
    pub gonality: i64,
}

/// Newton triangle `conv{(b,0),(0,a),(0,0)}` of a curve with Weierstrass
/// semigroup `aN + bN`.
pub fn cab_profile(a: i64, b: i64) -> Result<CabProfile> {
    if a < 2 || b < 2 || gcd(a, b) != 1 {
        return domain(format!("C_{{a,b}} needs coprime a, b >= 2, got ({a},{b})"));
    }
    let polygon = LatticePolygon::from_tuples(&[(b, 0), (0, a), (0, 0)]);
    let genus = (a - 1) * (b - 1) / 2;
    if polygon.interior_count() != genus {
        return Err(Error::Internal(format!("genus of Δ_{{{a},{b}}} disagrees with (a−1)(b−1)/2")));
    }
    let gon = gonality(&polygon)?;
    if gon != a.min(b) {
        return Err(Error::Internal(format!("gonality of Δ_{{{a},{b}}} is {gon}, expected {}", a.min(b))));
    }
    Ok(CabProfile { polygon, genus, gonality: gon })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HirzebruchProfile {
    pub polygon: LatticePolygon,
    pub genus: i64,
    pub gonality: i64,
    pub pencils: PencilCount,
    pub scrollar: Vec<i64>,
    pub recovered_n: Option<i64>,
}

/// Trapezoid `conv{(0,0),(a+dn,0),(a,d),(0,d)}` on the Hirzebruch surface `H_n`.
pub fn hirzebruch_profile(n: i64, a: i64, d: i64) -> Result<HirzebruchProfile> {
    if n < 0 || a < 0 || d < 2 || (a == 0 && n == 0) {
        return domain(format!("Hirzebruch trapezoid needs n, a >= 0, d >= 2, a + n > 0; got n={n}, a={a}, d={d}"));
    }
    let polygon = LatticePolygon::from_tuples(&[(0, 0), (a + d * n, 0), (a, d), (0, d)]);
    let genus = d * (d - 1) / 2 * n + (d - 1) * (a - 1);
    if polygon.interior_count() != genus {
        return Err(Error::Internal("trapezoid genus disagrees with the closed form".into()));
    }
    let v = LatticeDirection::new(1, 0)?;
    let e = width_invariants(&polygon, v)?.invariants;
    let mut closed: Vec<i64> = (1..d).map(|l| a - 2 + l * n).collect();
    let mut comb = e.clone();
    closed.sort_unstable();
    comb.sort_unstable();
    if comb != closed {
        return Err(Error::Internal(format!("width invariants {comb:?} differ from closed form {closed:?}")));
    }
    let scrollar = pencil_from_invariants(v, d, &e, genus).scrollar;
    let recovered_n = if d > 2 {
        let e1 = a - 2 + n;
        let num = 2 * genus - 2 * (d - 1) * (e1 + 1);
        let den = (d - 1) * (d - 2);
        (num % den == 0).then_some(num / den)
    } else {
        None
    };
    if recovered_n.is_some_and(|r| r != n) {
        return Err(Error::Internal(format!("recovered n = {recovered_n:?} differs from {n}")));
    }
    let gonality = gonality(&polygon)?;
    let pencils = gonality_pencils(&polygon)?;
    Ok(HirzebruchProfile { polygon, genus, gonality, pencils, scrollar, recovered_n })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(pts: &[(i64, i64)]) -> LatticePolygon {
        LatticePolygon::from_tuples(pts)
    }

    fn dir(a: i64, b: i64) -> LatticeDirection {
        LatticeDirection::new(a, b).unwrap()
    }

    fn g7() -> LatticePolygon {
        poly(&[(0, 0), (1, -1), (3, -2), (4, -2), (4, 2), (3, 2), (1, 1)])
    }

    fn sigma(d: i64) -> LatticePolygon {
        Family::SigmaMultiple.template().scale(d)
    }

    fn ups(d: i64) -> LatticePolygon {
        Family::UpsilonMultiple.template().scale(d)
    }

    #[test]
    fn genus_examples() {
        assert_eq!(genus(&sigma(2)).unwrap(), 0);
        assert_eq!(genus(&g7()).unwrap(), 7);
        assert_eq!(genus(&ups(4)).unwrap(), 19);
        assert!(matches!(genus(&poly(&[(0, 0), (1, 0)])), Err(Error::Unsupported(_))));
    }

    #[test]
    fn gonality_examples() {
        for d in 2..9 {
            assert_eq!(gonality(&sigma(d)).unwrap(), d - 1);
            assert!(!has_combinatorial_gonality_pencil(&sigma(d)).unwrap());
        }
        assert_eq!(gonality(&ups(2)).unwrap(), 3);
        assert!(!has_combinatorial_gonality_pencil(&ups(2)).unwrap());
        assert_eq!(gonality(&g7()).unwrap(), 4);
        assert!(has_combinatorial_gonality_pencil(&g7()).unwrap());
    }

    #[test]
    fn pencil_examples() {
        let p = gonality_pencils(&g7()).unwrap();
        assert_eq!((p.kind, p.n), (PencilKind::Exactly, Some(2)));
        assert_eq!(p.directions, vec![dir(1, 0), dir(0, 1)]);
        // hull ≅ dΓ⁵₁ with d ≥ 2
        for d in 3..6 {
            let p = gonality_pencils(&Family::Gamma51Multiple.template().scale(d)).unwrap();
            assert_eq!(p.n, Some(4));
        }
        assert_eq!(gonality_pencils(&Family::Gamma51Multiple.template().scale(2)).unwrap().kind, PencilKind::Infinite);
        assert_eq!(gonality_pencils(&ups(3)).unwrap().kind, PencilKind::Infinite);
        assert_eq!(gonality_pencils(&ups(2)).unwrap().kind, PencilKind::AtMost);
    }

    #[test]
    fn clifford_examples() {
        assert_eq!(clifford(&ups(3)).unwrap(), Clifford { index: 3, dimension: 3 });
        for d in 5..9 {
            assert_eq!(clifford(&sigma(d)).unwrap(), Clifford { index: d - 4, dimension: 2 });
        }
        assert_eq!(clifford(&g7()).unwrap(), Clifford { index: 2, dimension: 1 });
        assert_eq!(clifford(&sigma(4)).unwrap(), Clifford { index: 1, dimension: 1 });
        assert!(clifford(&sigma(2)).is_err());
    }

    #[test]
    fn smooth_plane_examples() {
        assert!(is_smooth_plane_model(&sigma(6)).unwrap());
        assert!(!is_smooth_plane_model(&Family::Gamma51Multiple.template().scale(2)).unwrap());
        assert!(is_smooth_plane_model(&poly(&[(0, 0), (5, 0), (0, 1)])).unwrap());
    }

    #[test]
    fn pencil_data_examples() {
        let p = pencil_data(&g7(), dir(1, 0)).unwrap();
        assert_eq!((p.scrollar.clone(), p.complete, p.rank, p.degree), (vec![1, 1, 2], true, 1, 4));
        let p = pencil_data(&g7(), dir(0, 1)).unwrap();
        assert_eq!((p.scrollar.clone(), p.complete, p.rank), (vec![0, 2, 2], true, 1));
        for d in 4..9 {
            let p = pencil_data(&sigma(d), dir(1, 0)).unwrap();
            assert_eq!(p.scrollar, (0..=d - 3).collect::<Vec<_>>());
            assert!(!p.complete);
            assert_eq!(p.rank, 2);
        }
    }

    #[test]
    fn scroll_dimension_caps_at_genus_minus_one() {
        let p = pencil_from_invariants(dir(1, 0), 3, &[0, 0], 2);
        assert_eq!((p.scroll_dim, p.rank, p.complete), (1, 1, true));
        let p = pencil_from_invariants(dir(1, 0), 4, &[1, 0, -1], 3);
        assert_eq!((p.scroll_dim, p.rank, p.complete), (2, 2, false));
    }

    #[test]
    fn near_gonal_examples() {
        assert_eq!(near_gonal(&ups(4)).unwrap(), NearGonalClass::ExistsNonCombinatorial);
        let g8 = poly(&[(0, 0), (6, 2), (2, 4)]);
        assert_eq!(near_gonal(&g8).unwrap(), NearGonalClass::NoCombinatorialExistenceOpen);
        let g7max = crate::rational::outward_polygon(&Family::Gamma7.template()).unwrap().to_lattice().unwrap();
        assert_eq!(near_gonal(&g7max).unwrap(), NearGonalClass::InfinitelyMany);
        assert_eq!(near_gonal(&sigma(4)).unwrap(), NearGonalClass::InfinitelyMany);
        assert_eq!(near_gonal(&sigma(3)).unwrap(), NearGonalClass::NotApplicable);
    }

    #[test]
    fn genus_nine_profile() {
        let p = poly(&[(4, 0), (5, 0), (3, 4), (2, 5), (0, 3), (0, 2)]);
        let c = curve_profile(&p).unwrap();
        assert_eq!((c.genus, c.gonality), (9, 5));
        assert_eq!(c.pencils.directions, vec![dir(1, 0), dir(-1, 1), dir(0, 1)]);
        for pd in &c.pencil_data {
            assert_eq!(pd.scrollar, vec![0, 1, 2, 2]);
        }
    }

    #[test]
    fn profile_examples() {
        let c = curve_profile(&ups(2)).unwrap();
        assert_eq!((c.genus, c.gonality, c.pencils.kind), (4, 3, PencilKind::AtMost));
        let c = curve_profile(&sigma(5)).unwrap();
        assert_eq!((c.genus, c.gonality, c.pencils.kind, c.smooth_plane), (6, 4, PencilKind::Infinite, true));
    }

    #[test]
    fn cab_examples() {
        for g in 1..8 {
            let c = cab_profile(2, 2 * g + 1).unwrap();
            assert_eq!((c.genus, c.gonality), (g, 2));
        }
        let c = cab_profile(3, 5).unwrap();
        assert_eq!((c.genus, c.gonality), (4, 3));
        assert!(cab_profile(4, 6).is_err());
        for a in 2..6 {
            for k in 2..5 {
                let c = cab_profile(a, a * k - 1).unwrap();
                let e = width_invariants(&c.polygon, dir(1, 0)).unwrap().invariants;
                assert_eq!(e[0], a * k - k - 2);
            }
        }
    }

    #[test]
    fn hirzebruch_examples() {
        let h = hirzebruch_profile(2, 3, 3).unwrap();
        assert_eq!((h.genus, h.scrollar.clone(), h.recovered_n), (10, vec![3, 5], Some(2)));
        let h = hirzebruch_profile(0, 4, 4).unwrap();
        assert_eq!(h.pencils.n, Some(2));
        for d in 3..8 {
            let h = hirzebruch_profile(1, 0, d).unwrap();
            assert_eq!(h.scrollar, (0..=d - 3).collect::<Vec<_>>());
        }
        assert!(hirzebruch_profile(0, 0, 3).is_err());
    }
}
