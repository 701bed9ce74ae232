//! Bivariate polynomials over a tower: `f[j][i]` is the coefficient of
//! `y^j x^i`. The germ engine works on these after lifting a rational
//! `MultiPoly` in (z, v) to x = z, y = v.

use crate::alg::uni::{self, UPoly};
use crate::alg::{Elem, Tower};
use crate::poly::MultiPoly;

pub type BiPoly = Vec<UPoly>;

pub fn bi_trim(mut f: BiPoly) -> BiPoly {
    for c in f.iter_mut() {
        let t = uni::trim(std::mem::take(c));
        *c = t;
    }
    while f.last().map(|c| uni::is_zero(c)).unwrap_or(false) {
        f.pop();
    }
    f
}

pub fn bi_is_zero(f: &BiPoly) -> bool {
    f.iter().all(|c| uni::is_zero(c))
}

/// Lifts a rational polynomial in `(xname, yname)` to a `BiPoly`.
pub fn bi_from_multipoly(p: &MultiPoly, xname: &str, yname: &str) -> BiPoly {
    let xi = p.vars().iter().position(|v| v == xname);
    let yi = p.vars().iter().position(|v| v == yname);
    let dy = yi
        .map(|k| p.terms_desc().map(|(m, _)| m.0[k]).max().unwrap_or(0))
        .unwrap_or(0) as usize;
    let mut out: BiPoly = vec![Vec::new(); dy + 1];
    for (m, c) in p.terms_desc() {
        let i = xi.map(|k| m.0[k] as usize).unwrap_or(0);
        let j = yi.map(|k| m.0[k] as usize).unwrap_or(0);
        let row = &mut out[j];
        if row.len() <= i {
            row.resize(i + 1, Elem::zero());
        }
        row[i] = Elem::from_rat(c.clone());
    }
    bi_trim(out)
}

pub fn bi_support(f: &BiPoly) -> Vec<(usize, usize)> {
    let mut pts = Vec::new();
    for (j, row) in f.iter().enumerate() {
        for (i, c) in row.iter().enumerate() {
            if !c.is_zero_repr() {
                pts.push((i, j));
            }
        }
    }
    pts
}

/// Smallest total degree of a nonzero term (the multiplicity at the origin).
pub fn bi_multiplicity(f: &BiPoly) -> usize {
    bi_support(f)
        .iter()
        .map(|(i, j)| i + j)
        .min()
        .expect("nonzero polynomial")
}

pub fn bi_add(t: &Tower, a: &BiPoly, b: &BiPoly) -> BiPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let x = a.get(j).cloned().unwrap_or_default();
        let y = b.get(j).cloned().unwrap_or_default();
        out.push(uni::add(t, &x, &y));
    }
    bi_trim(out)
}

pub fn bi_scale(t: &Tower, a: &BiPoly, c: &Elem) -> BiPoly {
    bi_trim(a.iter().map(|row| uni::scale(t, row, c)).collect())
}

pub fn bi_mul(t: &Tower, a: &BiPoly, b: &BiPoly) -> BiPoly {
    if bi_is_zero(a) || bi_is_zero(b) {
        return Vec::new();
    }
    let mut out: BiPoly = vec![Vec::new(); a.len() + b.len() - 1];
    for (j1, r1) in a.iter().enumerate() {
        if uni::is_zero(r1) {
            continue;
        }
        for (j2, r2) in b.iter().enumerate() {
            if uni::is_zero(r2) {
                continue;
            }
            let prod = uni::mul(t, r1, r2);
            out[j1 + j2] = uni::add(t, &out[j1 + j2], &prod);
        }
    }
    bi_trim(out)
}

/// d/dx.
pub fn bi_dx(t: &Tower, f: &BiPoly) -> BiPoly {
    bi_trim(f.iter().map(|row| uni::deriv(t, row)).collect())
}

/// d/dy.
pub fn bi_dy(t: &Tower, f: &BiPoly) -> BiPoly {
    if f.len() <= 1 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(f.len() - 1);
    for (j, row) in f.iter().enumerate().skip(1) {
        out.push(uni::scale(t, row, &Elem::from_i64(j as i64)));
    }
    bi_trim(out)
}

/// f(x + s*y, y) for a rational shear parameter.
pub fn bi_shear(t: &Tower, f: &BiPoly, s: i64) -> BiPoly {
    // x -> x + s*y as a BiPoly: rows y^0 = [0, 1], y^1 = [s]
    let subst: BiPoly = vec![vec![Elem::zero(), Elem::one()], vec![Elem::from_i64(s)]];
    let mut out: BiPoly = Vec::new();
    for (j, row) in f.iter().enumerate() {
        // row(x) evaluated at subst, times y^j
        let mut acc: BiPoly = Vec::new();
        for c in row.iter().rev() {
            acc = bi_mul(t, &acc, &subst);
            acc = bi_add(t, &acc, &vec![vec![c.clone()]]);
        }
        // shift by y^j
        let mut shifted: BiPoly = vec![Vec::new(); j];
        shifted.extend(acc);
        out = bi_add(t, &out, &shifted);
    }
    bi_trim(out)
}

/// f(x0 + x, y0 + y): recenters the germ at a (possibly algebraic) point.
pub fn bi_translate(t: &Tower, f: &BiPoly, x0: &Elem, y0: &Elem) -> BiPoly {
    // Horner in y with coefficients translated in x.
    let xsub: BiPoly = vec![vec![x0.clone(), Elem::one()]]; // x0 + x
    let ysub: BiPoly = vec![vec![y0.clone()], vec![Elem::one()]]; // y0 + y
    let mut out: BiPoly = Vec::new();
    for row in f.iter().rev() {
        out = bi_mul(t, &out, &ysub);
        // translate row(x) -> row(x0 + x)
        let mut acc: BiPoly = Vec::new();
        for c in row.iter().rev() {
            acc = bi_mul(t, &acc, &xsub);
            acc = bi_add(t, &acc, &vec![vec![c.clone()]]);
        }
        out = bi_add(t, &out, &acc);
    }
    bi_trim(out)
}

/// Re-reduces every coefficient (after a tower fork).
pub fn bi_reduce(t: &Tower, f: &BiPoly) -> BiPoly {
    bi_trim(
        f.iter()
            .map(|row| uni::trim(row.iter().map(|c| t.reduce_elem(c)).collect()))
            .collect(),
    )
}

/// Evaluation at rational or tower points, mostly for tests.
pub fn bi_eval(t: &Tower, f: &BiPoly, x: &Elem, y: &Elem) -> Elem {
    let mut acc = Elem::zero();
    for row in f.iter().rev() {
        let rx = uni::eval(t, row, x);
        acc = t.add(&t.mul(&acc, y), &rx);
    }
    acc
}
