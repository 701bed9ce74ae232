//! Univariate polynomials over a tower, as dense ascending coefficient
//! vectors. Everything that can hit a zero divisor returns `AlgResult`.

use super::{AlgResult, Elem, Tower};

pub type UPoly = Vec<Elem>;

pub fn trim(mut v: UPoly) -> UPoly {
    while v.last().map(|c| c.is_zero_repr()).unwrap_or(false) {
        v.pop();
    }
    v
}

pub fn is_zero(v: &[Elem]) -> bool {
    v.iter().all(|c| c.is_zero_repr())
}

pub fn degree(v: &[Elem]) -> Option<usize> {
    v.iter().rposition(|c| !c.is_zero_repr())
}

pub fn constant(e: Elem) -> UPoly {
    if e.is_zero_repr() {
        Vec::new()
    } else {
        vec![e]
    }
}

pub fn add(t: &Tower, a: &[Elem], b: &[Elem]) -> UPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(Elem::zero);
        let y = b.get(i).cloned().unwrap_or_else(Elem::zero);
        out.push(t.add(&x, &y));
    }
    trim(out)
}

pub fn sub(t: &Tower, a: &[Elem], b: &[Elem]) -> UPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(Elem::zero);
        let y = b.get(i).cloned().unwrap_or_else(Elem::zero);
        out.push(t.sub(&x, &y));
    }
    trim(out)
}

pub fn mul(t: &Tower, a: &[Elem], b: &[Elem]) -> UPoly {
    if is_zero(a) || is_zero(b) {
        return Vec::new();
    }
    let mut out = vec![Elem::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero_repr() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero_repr() {
                continue;
            }
            out[i + j] = t.add(&out[i + j], &t.mul(x, y));
        }
    }
    trim(out)
}

pub fn scale(t: &Tower, a: &[Elem], c: &Elem) -> UPoly {
    trim(a.iter().map(|x| t.mul(x, c)).collect())
}

pub fn deriv(t: &Tower, a: &[Elem]) -> UPoly {
    if a.len() <= 1 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(a.len() - 1);
    for (i, c) in a.iter().enumerate().skip(1) {
        out.push(t.mul(c, &Elem::from_i64(i as i64)));
    }
    trim(out)
}

pub fn eval(t: &Tower, a: &[Elem], x: &Elem) -> Elem {
    let mut acc = Elem::zero();
    for c in a.iter().rev() {
        acc = t.add(&t.mul(&acc, x), c);
    }
    acc
}

pub fn monic(t: &Tower, a: &[Elem]) -> AlgResult<UPoly> {
    t.upoly_monic_raw(a)
}

pub fn divrem(t: &Tower, a: &[Elem], b: &[Elem]) -> AlgResult<(UPoly, UPoly)> {
    t.divrem_field(a, b)
}

/// Exact division; panics when the division is not exact (internal use on
/// known-divisible inputs).
pub fn div_exact(t: &Tower, a: &[Elem], b: &[Elem]) -> AlgResult<UPoly> {
    let (q, r) = t.divrem_field(a, b)?;
    assert!(is_zero(&r), "expected exact division");
    Ok(q)
}

/// Monic gcd by the Euclidean algorithm over the tower field.
pub fn gcd(t: &Tower, a: &[Elem], b: &[Elem]) -> AlgResult<UPoly> {
    let mut r0 = trim(a.to_vec());
    let mut r1 = trim(b.to_vec());
    while !is_zero(&r1) {
        let (_, r2) = t.divrem_field(&r0, &r1)?;
        r0 = r1;
        r1 = r2;
    }
    if is_zero(&r0) {
        return Ok(Vec::new());
    }
    monic(t, &r0)
}

/// Yun's squarefree decomposition: returns `(g_i, i)` with
/// `f = lc * prod g_i^i`, each `g_i` monic squarefree, pairwise coprime.
pub fn squarefree_decomposition(t: &Tower, f: &[Elem]) -> AlgResult<Vec<(UPoly, usize)>> {
    let f = trim(f.to_vec());
    assert!(!is_zero(&f), "zero polynomial");
    if f.len() == 1 {
        return Ok(Vec::new());
    }
    let fm = monic(t, &f)?;
    let df = deriv(t, &fm);
    let a = gcd(t, &fm, &df)?;
    if a.len() <= 1 {
        return Ok(vec![(fm, 1)]);
    }
    let mut out = Vec::new();
    let mut b = div_exact(t, &fm, &a)?; // product of distinct factors
    let mut c = div_exact(t, &df, &a)?;
    let mut i = 1usize;
    loop {
        // d = c - b'
        let d = sub(t, &c, &deriv(t, &b));
        if is_zero(&d) {
            if b.len() > 1 {
                out.push((monic(t, &b)?, i));
            }
            break;
        }
        let g = gcd(t, &b, &d)?;
        if g.len() > 1 {
            out.push((g.clone(), i));
        }
        b = div_exact(t, &b, &g)?;
        c = div_exact(t, &d, &g)?;
        i += 1;
        if b.len() <= 1 {
            break;
        }
    }
    Ok(out)
}
