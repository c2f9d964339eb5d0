use crate::error::{domain, Result};
use crate::lattice::{LatticeDirection, LatticePoint};
use crate::polygon::LatticePolygon;

fn int(tok: &str, whole: &str) -> Result<i64> {
    tok.trim().parse::<i64>().or_else(|_| domain(format!("bad integer {:?} in {whole:?}", tok.trim())))
}

/// Points in `(x,y),(x,y),...` or JSON `[[x,y],...]` form, in any order.
pub fn parse_points(s: &str) -> Result<Vec<LatticePoint>> {
    let t = s.trim();
    if t.starts_with('[') {
        let v: Vec<[i64; 2]> = serde_json::from_str(t).or_else(|e| domain(format!("bad JSON polygon {t:?}: {e}")))?;
        return v.into_iter().map(|[x, y]| LatticePoint::checked(x, y)).collect();
    }
    let mut out = Vec::new();
    let mut rest = t;
    while !rest.is_empty() {
        let Some(r) = rest.strip_prefix('(') else {
            return domain(format!("expected '(' in polygon {t:?}"));
        };
        let Some(close) = r.find(')') else {
            return domain(format!("unclosed '(' in polygon {t:?}"));
        };
        let inner = &r[..close];
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 2 {
            return domain(format!("point ({inner}) needs two coordinates"));
        }
        out.push(LatticePoint::checked(int(parts[0], t)?, int(parts[1], t)?)?);
        rest = r[close + 1..].trim_start();
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim_start();
            if rest.is_empty() {
                return domain(format!("trailing comma in polygon {t:?}"));
            }
        } else if !rest.is_empty() {
            return domain(format!("expected ',' between points in {t:?}"));
        }
    }
    Ok(out)
}

pub fn parse_polygon(s: &str) -> Result<LatticePolygon> {
    Ok(LatticePolygon::hull(&parse_points(s)?))
}

/// Direction in `a,b` form (parentheses optional).
pub fn parse_direction(s: &str) -> Result<LatticeDirection> {
    let t = s.trim();
    let inner = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(t);
    let parts: Vec<&str> = inner.split(',').collect();
    if parts.len() != 2 {
        return domain(format!("direction {t:?} must have the form a,b"));
    }
    LatticeDirection::new(int(parts[0], t)?, int(parts[1], t)?)
}
