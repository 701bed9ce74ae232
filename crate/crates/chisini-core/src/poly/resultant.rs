//! Sylvester resultants, discriminants and square-free parts.
//!
//! Determinants are taken with Bareiss fraction-free elimination, so the
//! intermediate entries stay polynomial and every division is exact. A
//! dense scalar path handles the common case of univariate inputs with
//! constant coefficients.

use super::{poly_gcd, MultiPoly, PolyError};
use crate::rat::BigRat;
use num::{One, Zero};

/// Sylvester resultant of `f` and `g` with respect to `var`.
///
/// Zero iff the two inputs share a factor of positive degree in `var`.
pub fn resultant(f: &MultiPoly, g: &MultiPoly, var: &str) -> Result<MultiPoly, PolyError> {
    let df = f.degree_in(var);
    let dg = g.degree_in(var);
    if df == 0 && dg == 0 {
        return Err(PolyError::NoEliminableVariable(var.to_string()));
    }
    if f.is_zero() || g.is_zero() {
        return Ok(MultiPoly::zero());
    }
    if df == 0 {
        return Ok(f.pow(dg));
    }
    if dg == 0 {
        return Ok(g.pow(df));
    }
    let fc = f.coeffs_in(var);
    let gc = g.coeffs_in(var);
    if let (Some(fs), Some(gs)) = (scalars(&fc), scalars(&gc)) {
        let det = bareiss_scalar(sylvester_rows(&fs, &gs, BigRat::zero()));
        return Ok(MultiPoly::constant(det));
    }
    let m = sylvester_rows(&fc, &gc, MultiPoly::zero());
    Ok(bareiss_poly(m))
}

fn scalars(cs: &[MultiPoly]) -> Option<Vec<BigRat>> {
    cs.iter().map(|c| c.constant_value()).collect()
}

/// Sylvester matrix rows; coefficient slices are in ascending order.
fn sylvester_rows<T: Clone>(f: &[T], g: &[T], zero: T) -> Vec<Vec<T>> {
    let df = f.len() - 1;
    let dg = g.len() - 1;
    let n = df + dg;
    let mut rows = Vec::with_capacity(n);
    for i in 0..dg {
        let mut row = vec![zero.clone(); n];
        for (j, c) in f.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..df {
        let mut row = vec![zero.clone(); n];
        for (j, c) in g.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

fn bareiss_poly(mut m: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one();
    }
    let mut sign_neg = false;
    let mut prev = MultiPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(l) = (k + 1..n).find(|&l| !m[l][k].is_zero()) else {
                return MultiPoly::zero();
            };
            m.swap(k, l);
            sign_neg = !sign_neg;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = MultiPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_neg {
        det.neg()
    } else {
        det
    }
}

fn bareiss_scalar(mut m: Vec<Vec<BigRat>>) -> BigRat {
    let n = m.len();
    if n == 0 {
        return BigRat::one();
    }
    let mut sign_neg = false;
    let mut prev = BigRat::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(l) = (k + 1..n).find(|&l| !m[l][k].is_zero()) else {
                return BigRat::zero();
            };
            m.swap(k, l);
            sign_neg = !sign_neg;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].clone() * m[i][j].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = num / prev.clone();
            }
            m[i][k] = BigRat::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_neg {
        -det
    } else {
        det
    }
}

/// Discriminant with respect to `var`:
/// `(-1)^(d(d-1)/2) * Res(f, df/dvar) / lc(f)`.
pub fn discriminant(f: &MultiPoly, var: &str) -> Result<MultiPoly, PolyError> {
    let d = f.degree_in(var);
    if d < 2 {
        return Err(PolyError::DegreeTooSmall(var.to_string()));
    }
    let fp = f.derivative(var);
    let res = resultant(f, &fp, var)?;
    let lc = f.leading_coeff_in(var);
    let quot = res
        .div_exact(&lc)
        .expect("resultant of f and f' is divisible by the leading coefficient");
    if (d * (d - 1) / 2) % 2 == 1 {
        Ok(quot.neg())
    } else {
        Ok(quot)
    }
}

/// Product of the distinct irreducible factors, via gcd with the partial
/// derivatives; content removed, monic in the canonical order.
pub fn squarefree_part(f: &MultiPoly) -> Result<MultiPoly, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if f.is_constant() {
        return Ok(MultiPoly::one());
    }
    let mut d = f.clone();
    for v in f.vars().to_vec() {
        let fv = f.derivative(&v);
        if fv.is_zero() {
            continue;
        }
        d = poly_gcd(&d, &fv);
        if d.is_constant() {
            break;
        }
    }
    let sf = f.div_exact(&d).expect("gcd divides");
    Ok(sf.monic())
}

/// True when `f` has a repeated factor involving `var`.
pub fn has_square_factor_in(f: &MultiPoly, var: &str) -> bool {
    if f.degree_in(var) == 0 {
        return false;
    }
    let g = poly_gcd(f, &f.derivative(var));
    g.degree_in(var) > 0
}
