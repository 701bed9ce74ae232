//! Milnor number of an isolated plane-curve-germ singularity, two ways.
//!
//! Route (a): dimension of the local algebra K[[x,y]]/(f_x, f_y) by exact
//! linear algebra on truncations. The truncation degree starts at a bound
//! read off the Newton polygon and grows until the dimension stabilizes;
//! stabilization at D proves m^D lies in the Jacobian ideal (Nakayama), so
//! the stabilized dimension is exact.
//!
//! Route (b): the valuation at x = 0 of Res_y(f_x, f_y) after a shear
//! making the configuration clean (leading y-coefficients of both partials
//! nonzero on x = 0, no common zero on the y-axis away from the origin).
//! Shear parameters are tried in the fixed order 0, 1, 2, ...
//!
//! Both routes are exact; `germ::analyze` insists they agree.

use super::bi::{self, BiPoly};
use super::puiseux::GermError;
use crate::alg::uni::{self, UPoly};
use crate::alg::{Elem, Split, Tower};

#[derive(Debug)]
pub(crate) enum EngineErr {
    Split(Split),
    Germ(GermError),
}

impl From<Split> for EngineErr {
    fn from(s: Split) -> Self {
        EngineErr::Split(s)
    }
}

impl From<GermError> for EngineErr {
    fn from(e: GermError) -> Self {
        EngineErr::Germ(e)
    }
}

fn origin_value(f: &BiPoly) -> Elem {
    f.first()
        .and_then(|row| row.first())
        .cloned()
        .unwrap_or_else(Elem::zero)
}

fn min_order(f: &BiPoly) -> usize {
    bi::bi_support(f)
        .iter()
        .map(|(i, j)| i + j)
        .min()
        .unwrap_or(0)
}

/// Route (a): stabilized local-algebra dimension.
pub(crate) fn milnor_local_algebra(t: &Tower, f: &BiPoly) -> Result<u64, EngineErr> {
    let fx = bi::bi_dx(t, f);
    let fy = bi::bi_dy(t, f);
    if bi::bi_is_zero(&fx) && bi::bi_is_zero(&fy) {
        return Err(GermError::Internal("constant germ".into()).into());
    }
    if !origin_value(&fx).is_zero_repr() || !origin_value(&fy).is_zero_repr() {
        return Ok(0); // smooth point
    }
    let degs = |g: &BiPoly| {
        bi::bi_support(g)
            .iter()
            .map(|(i, j)| i + j)
            .max()
            .unwrap_or(0)
    };
    // Bezout bound on the intersection number, hence on the Milnor number
    let bezout = degs(&fx).max(1) * degs(&fy).max(1);
    let d0 = bi::bi_support(f)
        .iter()
        .map(|(i, j)| i + j)
        .max()
        .unwrap_or(2)
        .max(2);
    let dmax = d0 + bezout + 3;
    let mut prev: Option<u64> = None;
    let mut d = d0;
    while d <= dmax {
        let dim = quotient_dim(t, &[&fx, &fy], d)?;
        if let Some(p) = prev {
            if p == dim {
                return Ok(dim);
            }
        }
        prev = Some(dim);
        d += 1;
    }
    Err(GermError::NonIsolated.into())
}

/// dim K[x,y] / (J + m^D) for the ideal J spanned by `gens`.
fn quotient_dim(t: &Tower, gens: &[&BiPoly], d: usize) -> Result<u64, EngineErr> {
    // columns: monomials x^a y^b with a + b < d
    let mut col_of = std::collections::BTreeMap::new();
    let mut ncols = 0usize;
    for total in 0..d {
        for a in 0..=total {
            col_of.insert((a, total - a), ncols);
            ncols += 1;
        }
    }
    let mut rows: Vec<Vec<Elem>> = Vec::new();
    for g in gens {
        let ord = min_order(g);
        if ord >= d {
            continue;
        }
        let support = bi::bi_support(g);
        for mdeg in 0..(d - ord) {
            for a in 0..=mdeg {
                let b = mdeg - a;
                let mut row = vec![Elem::zero(); ncols];
                let mut nonzero = false;
                for (i, j) in &support {
                    let (ci, cj) = (i + a, j + b);
                    if ci + cj >= d {
                        continue;
                    }
                    let col = col_of[&(ci, cj)];
                    row[col] = g[*j][*i].clone();
                    nonzero = true;
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
    }
    let rank = rank_of(t, rows)?;
    Ok((ncols - rank) as u64)
}

fn rank_of(t: &Tower, mut rows: Vec<Vec<Elem>>) -> Result<usize, EngineErr> {
    if rows.is_empty() {
        return Ok(0);
    }
    let ncols = rows[0].len();
    let mut rank = 0usize;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero_repr()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = t.inv(&rows[rank][col])?;
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero_repr() {
                continue;
            }
            let factor = t.mul(&rows[r][col], &inv);
            for c in col..ncols {
                let s = t.mul(&factor, &rows[rank][c]);
                rows[r][c] = t.sub(&rows[r][c], &s);
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    Ok(rank)
}

/// Route (b): valuation of the eliminant of the partials.
pub(crate) fn milnor_resultant(t: &Tower, f: &BiPoly) -> Result<u64, EngineErr> {
    {
        let fx = bi::bi_dx(t, f);
        let fy = bi::bi_dy(t, f);
        if !origin_value(&fx).is_zero_repr() || !origin_value(&fy).is_zero_repr() {
            return Ok(0);
        }
    }
    for s in 0..24i64 {
        let g = if s == 0 {
            f.clone()
        } else {
            bi::bi_shear(t, f, s)
        };
        let fx = bi::bi_dx(t, &g);
        let fy = bi::bi_dy(t, &g);
        if bi::bi_is_zero(&fx) || bi::bi_is_zero(&fy) {
            continue;
        }
        // leading y-coefficients must not vanish on x = 0
        let lc_ok = |h: &BiPoly| {
            h.last()
                .and_then(|row| row.first())
                .map(|c| !c.is_zero_repr())
                .unwrap_or(false)
        };
        if !lc_ok(&fx) || !lc_ok(&fy) {
            continue;
        }
        // the partials restricted to x = 0 may share only the root y = 0
        let at0 = |h: &BiPoly| -> UPoly {
            uni::trim(
                h.iter()
                    .map(|row| row.first().cloned().unwrap_or_else(Elem::zero))
                    .collect(),
            )
        };
        let gx0 = at0(&fx);
        let gy0 = at0(&fy);
        if uni::is_zero(&gx0) || uni::is_zero(&gy0) {
            continue;
        }
        let common = uni::gcd(t, &gx0, &gy0)?;
        let pure_power_of_y = common
            .iter()
            .take(common.len().saturating_sub(1))
            .all(|c| c.is_zero_repr());
        if !pure_power_of_y {
            continue;
        }
        let r = resultant_in_y(t, &fx, &fy)?;
        if uni::is_zero(&r) {
            continue; // partials share a curve through this chart; reshear
        }
        let ord = r.iter().position(|c| !c.is_zero_repr()).unwrap();
        return Ok(ord as u64);
    }
    Err(GermError::NonIsolated.into())
}

/// Sylvester resultant eliminating y; entries are polynomials in x over
/// the tower, determinant by fraction-free Bareiss elimination.
fn resultant_in_y(t: &Tower, a: &BiPoly, b: &BiPoly) -> Result<UPoly, EngineErr> {
    let da = a.len() - 1;
    let db = b.len() - 1;
    if da == 0 {
        return Ok(upow(t, &a[0], db));
    }
    if db == 0 {
        return Ok(upow(t, &b[0], da));
    }
    let n = da + db;
    let mut m: Vec<Vec<UPoly>> = vec![vec![Vec::new(); n]; n];
    for i in 0..db {
        for (j, c) in a.iter().rev().enumerate() {
            m[i][i + j] = c.clone();
        }
    }
    for i in 0..da {
        for (j, c) in b.iter().rev().enumerate() {
            m[db + i][i + j] = c.clone();
        }
    }
    // Bareiss
    let mut sign_neg = false;
    let mut prev: UPoly = vec![Elem::one()];
    for k in 0..n - 1 {
        if uni::is_zero(&m[k][k]) {
            let Some(l) = (k + 1..n).find(|&l| !uni::is_zero(&m[l][k])) else {
                return Ok(Vec::new());
            };
            m.swap(k, l);
            sign_neg = !sign_neg;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t1 = uni::mul(t, &m[k][k], &m[i][j]);
                let t2 = uni::mul(t, &m[i][k], &m[k][j]);
                let num = uni::sub(t, &t1, &t2);
                m[i][j] = if uni::is_zero(&num) {
                    Vec::new()
                } else {
                    uni::div_exact(t, &num, &prev)?
                };
            }
            m[i][k] = Vec::new();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_neg {
        Ok(uni::scale(t, &det, &Elem::from_i64(-1)))
    } else {
        Ok(det)
    }
}

fn upow(t: &Tower, base: &UPoly, e: usize) -> UPoly {
    let mut acc: UPoly = vec![Elem::one()];
    for _ in 0..e {
        acc = uni::mul(t, &acc, base);
    }
    acc
}
