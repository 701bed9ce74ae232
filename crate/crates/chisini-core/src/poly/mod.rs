//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! The canonical term order is graded lexicographic over the sorted
//! variable list, so equal polynomials always serialize to the same text.

mod newton;
mod parse;
mod resultant;

pub use newton::{newton_polygon, NewtonPolygon};
pub use resultant::{discriminant, has_square_factor_in, resultant, squarefree_part};

use crate::rat::{rat_to_string, BigRat};
use num::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no eliminable variable: both inputs constant in `{0}`")]
    NoEliminableVariable(String),
    #[error("degree too small: discriminant needs degree >= 2 in `{0}`")]
    DegreeTooSmall(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("{0}")]
    Other(String),
}

/// Exponent vector, ordered by graded lexicographic comparison.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over the rationals.
///
/// Variables are kept sorted by name; every stored exponent vector has
/// exactly `vars.len()` entries and a nonzero coefficient.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Mono, BigRat>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly {
            vars: Vec::new(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono(Vec::new()), c);
        }
        MultiPoly {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Mono(vec![1]), BigRat::one());
        MultiPoly {
            vars: vec![name.to_string()],
            terms,
        }
    }

    pub fn from_terms(vars: Vec<String>, entries: Vec<(Vec<u32>, BigRat)>) -> Self {
        let mut p = MultiPoly {
            vars,
            terms: BTreeMap::new(),
        };
        for (exps, c) in entries {
            debug_assert_eq!(exps.len(), p.vars.len());
            p.add_term(Mono(exps), c);
        }
        p.prune_vars();
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.total_degree() == 0)
    }

    pub fn constant_value(&self) -> Option<BigRat> {
        if self.is_zero() {
            Some(BigRat::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending canonical order.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Mono, &BigRat)> {
        self.terms.iter().rev()
    }

    /// Leading (canonically largest) term.
    pub fn leading(&self) -> Option<(&Mono, &BigRat)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Mono, c: BigRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                *old = old.clone() + c;
                if old.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Drops variables that no longer occur with a positive exponent.
    fn prune_vars(&mut self) {
        if self.vars.is_empty() {
            return;
        }
        let mut used = vec![false; self.vars.len()];
        for m in self.terms.keys() {
            for (i, e) in m.0.iter().enumerate() {
                if *e > 0 {
                    used[i] = true;
                }
            }
        }
        if used.iter().all(|u| *u) {
            return;
        }
        let keep: Vec<usize> = (0..self.vars.len()).filter(|i| used[*i]).collect();
        let vars: Vec<String> = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let terms = std::mem::take(&mut self.terms);
        self.vars = vars;
        for (m, c) in terms {
            let exps: Vec<u32> = keep.iter().map(|&i| m.0[i]).collect();
            self.terms.insert(Mono(exps), c);
        }
    }

    /// Rewrites both polynomials over the sorted union of their variables.
    pub fn aligned(&self, other: &Self) -> (Self, Self) {
        if self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        let mut union: Vec<String> = self.vars.clone();
        for v in &other.vars {
            if !union.contains(v) {
                union.push(v.clone());
            }
        }
        union.sort();
        (self.embed(&union), other.embed(&union))
    }

    fn embed(&self, vars: &[String]) -> Self {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("superset"))
            .collect();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; vars.len()];
            for (i, e) in m.0.iter().enumerate() {
                exps[map[i]] = *e;
            }
            terms.insert(Mono(exps), c.clone());
        }
        MultiPoly {
            vars: vars.to_vec(),
            terms,
        }
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = self.aligned(other);
        for (m, c) in b.terms {
            a.add_term(m, c);
        }
        a.prune_vars();
        a
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let mut out = MultiPoly {
            vars: a.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let exps: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect();
                out.add_term(Mono(exps), ca.clone() * cb.clone());
            }
        }
        out.prune_vars();
        out
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = v.clone() * c.clone();
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = MultiPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self, var: &str) -> Self {
        let Some(idx) = self.vars.iter().position(|v| v == var) else {
            return MultiPoly::zero();
        };
        let mut out = MultiPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[idx] = e - 1;
            out.add_term(Mono(exps), c.clone() * BigRat::from_integer(e.into()));
        }
        out.prune_vars();
        out
    }

    /// Substitutes `repl` for `var`.
    pub fn substitute(&self, var: &str, repl: &MultiPoly) -> Self {
        let Some(idx) = self.vars.iter().position(|v| v == var) else {
            return self.clone();
        };
        let mut out = MultiPoly::zero();
        // group by var-exponent and use Horner on the grouped coefficients
        let maxdeg = self.terms.keys().map(|m| m.0[idx]).max().unwrap_or(0);
        let mut by_exp: Vec<MultiPoly> = vec![MultiPoly::zero(); maxdeg as usize + 1];
        for (m, c) in &self.terms {
            let e = m.0[idx];
            let mut exps = m.0.clone();
            exps[idx] = 0;
            let mut t = MultiPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
            t.add_term(Mono(exps), c.clone());
            t.prune_vars();
            by_exp[e as usize] = by_exp[e as usize].add(&t);
        }
        for coeff in by_exp.into_iter().rev() {
            out = out.mul(repl).add(&coeff);
        }
        out
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        let Some(idx) = self.vars.iter().position(|v| v == var) else {
            return 0;
        };
        self.terms.keys().map(|m| m.0[idx]).max().unwrap_or(0)
    }

    /// Coefficients of `var^0, var^1, ...`; each coefficient is free of `var`.
    pub fn coeffs_in(&self, var: &str) -> Vec<MultiPoly> {
        let d = self.degree_in(var) as usize;
        let mut out = vec![MultiPoly::zero(); d + 1];
        let Some(idx) = self.vars.iter().position(|v| v == var) else {
            out[0] = self.clone();
            return out;
        };
        for (m, c) in &self.terms {
            let e = m.0[idx] as usize;
            let mut exps = m.0.clone();
            exps[idx] = 0;
            let mut t = MultiPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
            t.add_term(Mono(exps), c.clone());
            t.prune_vars();
            out[e] = out[e].add(&t);
        }
        out
    }

    /// Rebuilds `sum coeffs[i] * var^i`.
    pub fn from_coeffs_in(var: &str, coeffs: &[MultiPoly]) -> MultiPoly {
        let x = MultiPoly::var(var);
        let mut out = MultiPoly::zero();
        for c in coeffs.iter().rev() {
            out = out.mul(&x).add(c);
        }
        out
    }

    /// Leading coefficient with respect to `var`.
    pub fn leading_coeff_in(&self, var: &str) -> MultiPoly {
        let cs = self.coeffs_in(var);
        cs.last().cloned().unwrap_or_else(MultiPoly::zero)
    }

    /// Exact division; `None` when the division does not come out even.
    ///
    /// All arithmetic happens over one fixed variable space so intermediate
    /// cancellation cannot desynchronize exponent vectors.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(MultiPoly::zero());
        }
        let (rem0, d) = self.aligned(divisor);
        let vars = rem0.vars.clone();
        let mut rem = rem0.terms;
        let (dm, dc) = {
            let (m, c) = d.leading().expect("nonzero divisor");
            (m.clone(), c.clone())
        };
        let mut quot: BTreeMap<Mono, BigRat> = BTreeMap::new();
        while let Some((rm, rc)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            let mut q = Vec::with_capacity(rm.0.len());
            for (a, b) in rm.0.iter().zip(&dm.0) {
                if a < b {
                    return None;
                }
                q.push(a - b);
            }
            let qc = rc / dc.clone();
            for (m, c) in &d.terms {
                let mm = Mono(m.0.iter().zip(&q).map(|(x, y)| x + y).collect());
                let delta = qc.clone() * c.clone();
                match rem.get_mut(&mm) {
                    Some(old) => {
                        *old = old.clone() - delta;
                        if old.is_zero() {
                            rem.remove(&mm);
                        }
                    }
                    None => {
                        rem.insert(mm, -delta);
                    }
                }
            }
            quot.insert(Mono(q), qc);
        }
        let mut out = MultiPoly { vars, terms: quot };
        out.prune_vars();
        Some(out)
    }

    /// Scales so the canonical leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => MultiPoly::zero(),
            Some((_, c)) => {
                let inv = BigRat::one() / c.clone();
                self.scale(&inv)
            }
        }
    }

    /// Evaluates at a full rational point (every variable assigned).
    pub fn eval(&self, point: &[(&str, BigRat)]) -> Option<BigRat> {
        let mut total = BigRat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, e) in m.0.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                let (_, val) = point.iter().find(|(n, _)| *n == self.vars[i])?;
                let mut p = BigRat::one();
                for _ in 0..*e {
                    p *= val.clone();
                }
                t *= p;
            }
            total += t;
        }
        Some(total)
    }

    /// Integer-content-free form with positive canonical leading integer
    /// coefficient; keeps the zero set, makes unit-comparison stable.
    pub fn primitive_normalized(&self) -> Self {
        if self.is_zero() {
            return MultiPoly::zero();
        }
        use num::bigint::BigInt;
        use num::Integer;
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let scaled: Vec<BigInt> = self
            .terms
            .values()
            .map(|c| c.numer() * (&den_lcm / c.denom()))
            .collect();
        let mut g = BigInt::zero();
        for n in &scaled {
            g = g.gcd(n);
        }
        let lead_neg = self
            .leading()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false);
        if lead_neg {
            g = -g;
        }
        let factor = BigRat::new(den_lcm, g);
        self.scale(&factor)
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.vars == b.vars && a.terms == b.terms
    }
}

impl Eq for MultiPoly {}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms_desc() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, e)| **e > 0)
                    .map(|(i, e)| {
                        if *e == 1 {
                            self.vars[i].clone()
                        } else {
                            format!("{}^{}", self.vars[i], e)
                        }
                    })
                    .collect();
            if mono.is_empty() {
                write!(f, "{}", rat_to_string(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", rat_to_string(&abs), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for MultiPoly {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse_poly(s)
    }
}

/// Multivariate gcd over the rationals (primitive PRS), monic-normalized.
pub fn poly_gcd(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let (f, g) = f.aligned(g);
    gcd_inner(&f, &g).monic()
}

fn gcd_inner(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    if f.is_zero() {
        return g.clone();
    }
    if g.is_zero() {
        return f.clone();
    }
    if f.is_constant() || g.is_constant() {
        return MultiPoly::one();
    }
    // main variable: first (sorted) variable occurring in either input
    let var = {
        let mut v: Option<&str> = None;
        for w in f.vars() {
            if f.degree_in(w) > 0 {
                v = Some(w);
                break;
            }
        }
        for w in g.vars() {
            if g.degree_in(w) > 0 && (v.is_none() || w.as_str() < v.unwrap()) {
                v = Some(w);
            }
        }
        v.expect("nonconstant").to_string()
    };
    let df = f.degree_in(&var);
    let dg = g.degree_in(&var);
    if df == 0 {
        return gcd_inner(f, &content_in(g, &var));
    }
    if dg == 0 {
        return gcd_inner(&content_in(f, &var), g);
    }
    let cf = content_in(f, &var);
    let cg = content_in(g, &var);
    let c = gcd_inner(&cf, &cg);
    let fp = f.div_exact(&cf).expect("content divides");
    let gp = g.div_exact(&cg).expect("content divides");
    let (mut a, mut b) = if df >= dg { (fp, gp) } else { (gp, fp) };
    loop {
        if b.is_zero() {
            break;
        }
        let r = pseudo_rem(&a, &b, &var);
        a = b;
        b = if r.is_zero() {
            MultiPoly::zero()
        } else {
            let cr = content_in(&r, &var);
            r.div_exact(&cr).expect("content divides")
        };
    }
    c.mul(&a)
}

/// gcd of the `var`-coefficients (the content with respect to `var`).
fn content_in(f: &MultiPoly, var: &str) -> MultiPoly {
    let coeffs = f.coeffs_in(var);
    let mut acc = MultiPoly::zero();
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        acc = gcd_inner(&acc, &c);
        if acc.is_constant() && !acc.is_zero() {
            return MultiPoly::one();
        }
    }
    if acc.is_zero() {
        MultiPoly::zero()
    } else {
        acc.monic()
    }
}

fn pseudo_rem(a: &MultiPoly, b: &MultiPoly, var: &str) -> MultiPoly {
    let db = b.degree_in(var);
    let lb = b.leading_coeff_in(var);
    let x = MultiPoly::var(var);
    let mut r = a.clone();
    let mut guard = 0u32;
    while !r.is_zero() && r.degree_in(var) >= db {
        let dr = r.degree_in(var);
        let lr = r.leading_coeff_in(var);
        r = r.mul(&lb).sub(&b.mul(&lr).mul(&x.pow(dr - db)));
        guard += 1;
        assert!(guard < 10_000, "pseudo-division diverged");
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_i64;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_and_display() {
        let f = p("v^2 - 4*z^3");
        assert_eq!(f.to_string(), "-4*z^3 + v^2");
        assert_eq!(p("(x + y)^2"), p("x^2 + 2*x*y + y^2"));
        assert_eq!(f.derivative("z").to_string(), "-12*z^2");
        assert_eq!(f.degree_in("z"), 3);
    }

    #[test]
    fn substitution() {
        let f = p("v^2 - 4*z^3");
        let g = f.substitute("z", &p("z^2"));
        assert_eq!(g, p("v^2 - 4*z^6"));
        let h = p("x*y").substitute("x", &p("x + 1"));
        assert_eq!(h, p("x*y + y"));
    }

    #[test]
    fn exact_division() {
        let f = p("x^2 - y^2");
        let g = p("x - y");
        assert_eq!(f.div_exact(&g).unwrap(), p("x + y"));
        assert!(p("x^2 + y").div_exact(&g).is_none());
    }

    #[test]
    fn gcd_basic() {
        let f = p("x^2 - y^2").mul(&p("x + 2*y"));
        let g = p("x + y").mul(&p("x + 2*y"));
        let d = poly_gcd(&f, &g);
        assert_eq!(d, p("x^2 + 3*x*y + 2*y^2"));
        assert_eq!(poly_gcd(&p("x"), &p("y")), MultiPoly::one());
    }

    #[test]
    fn primitive_normalization() {
        let f = p("v^2 - 4*z^3").scale(&rat_i64(-27));
        let n = f.primitive_normalized();
        // canonical leading term is z^3; its coefficient ends up positive
        assert_eq!(n, p("4*z^3 - v^2"));
    }
}
