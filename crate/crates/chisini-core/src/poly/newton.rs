//! Newton polygons of bivariate polynomials.
//!
//! Points are `(i, j)` = (exponent of the horizontal variable, exponent of
//! the vertical variable). The lower hull is the chain of supporting edges
//! facing the origin, ordered by increasing `i`; its slopes strictly
//! increase along the chain.

use super::{MultiPoly, PolyError};
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    pub points: Vec<(u32, u32)>,
    pub lower_hull: Vec<(u32, u32)>,
}

/// Newton polygon of `f` with `x` on the horizontal axis and `y` on the
/// vertical axis.
pub fn newton_polygon(f: &MultiPoly, x: &str, y: &str) -> Result<NewtonPolygon, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    for v in f.vars() {
        if v != x && v != y && f.degree_in(v) > 0 {
            return Err(PolyError::Other(format!(
                "expected a polynomial in {x}, {y}; found `{v}`"
            )));
        }
    }
    let xi = f.vars().iter().position(|v| v == x);
    let yi = f.vars().iter().position(|v| v == y);
    let mut pts: BTreeSet<(u32, u32)> = BTreeSet::new();
    for (m, _) in f.terms_desc() {
        let i = xi.map(|k| m.0[k]).unwrap_or(0);
        let j = yi.map(|k| m.0[k]).unwrap_or(0);
        pts.insert((i, j));
    }
    let points: Vec<(u32, u32)> = pts.iter().copied().collect();
    Ok(NewtonPolygon {
        lower_hull: lower_hull(&points),
        points,
    })
}

fn lower_hull(points: &[(u32, u32)]) -> Vec<(u32, u32)> {
    // start: minimal i, then minimal j; end: minimal j, then minimal i
    let start = *points
        .iter()
        .min_by_key(|(i, j)| (*i, *j))
        .expect("nonempty");
    let end = *points
        .iter()
        .min_by_key(|(i, j)| (*j, *i))
        .expect("nonempty");
    if start == end {
        return vec![start];
    }
    // monotone chain on the points between them (i ascending, j descending)
    let mut cand: Vec<(u32, u32)> = points
        .iter()
        .copied()
        .filter(|(i, j)| *i >= start.0 && *i <= end.0 && *j >= end.1 && *j <= start.1)
        .collect();
    cand.sort_by_key(|(i, j)| (*i, std::cmp::Reverse(*j)));
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for (i, j) in cand {
        let p = (i as i64, j as i64);
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // pop b unless a -> b -> p turns strictly left (keeps the chain convex from below)
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull.into_iter()
        .map(|(i, j)| (i as u32, j as u32))
        .collect()
}
