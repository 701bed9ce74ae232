//! Towers of algebraic extensions of the rationals, with dynamic
//! evaluation.
//!
//! A tower is a chain Q = K0 ⊂ K1 ⊂ ... ⊂ Kn where each level adjoins a
//! root of a monic squarefree polynomial over the level below. Moduli are
//! not required to be irreducible: arithmetic treats the generator as "a
//! root", and the moment an inversion meets a zero divisor the modulus
//! factors and the computation is forked over both factors (D5-style
//! dynamic evaluation). Zero tests are structural: representatives are
//! kept reduced, so an element is zero iff its representation is.

pub mod uni;

use crate::rat::BigRat;
use num::{One, Zero};
use std::fmt;

/// Why a level was adjoined; drives branch/point bookkeeping upstream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelKind {
    /// Root of an edge polynomial of a Newton polygon: its degree counts
    /// conjugate branches.
    EdgeRoot,
    /// q-th root `c` with `c^q = u` of an already-adjoined quantity: the
    /// roots all describe the same branch, so degree does not multiply
    /// any count and forks on this level keep only one factor.
    RootPower,
    /// Coordinate of a singular point: degree counts conjugate points.
    Point,
}

#[derive(Debug, Clone)]
pub struct Level {
    pub name: String,
    /// Monic dense coefficient vector (length = degree + 1, trailing 1).
    pub modulus: Vec<Elem>,
    pub kind: LevelKind,
}

impl Level {
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }
}

/// Element of a tower level: a rational, or a polynomial in the level's
/// generator with coefficients from lower levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Elem {
    Base(BigRat),
    Alg { level: usize, coeffs: Vec<Elem> },
}

impl Elem {
    pub fn zero() -> Self {
        Elem::Base(BigRat::zero())
    }

    pub fn one() -> Self {
        Elem::Base(BigRat::one())
    }

    pub fn from_rat(r: BigRat) -> Self {
        Elem::Base(r)
    }

    pub fn from_i64(n: i64) -> Self {
        Elem::Base(crate::rat::rat_i64(n))
    }

    pub fn level(&self) -> usize {
        match self {
            Elem::Base(_) => 0,
            Elem::Alg { level, .. } => *level,
        }
    }

    pub fn is_zero_repr(&self) -> bool {
        match self {
            Elem::Base(r) => r.is_zero(),
            Elem::Alg { .. } => false,
        }
    }

    /// Generator of tower level `level` (1-based).
    pub fn generator(level: usize) -> Self {
        Elem::Alg {
            level,
            coeffs: vec![Elem::zero(), Elem::one()],
        }
    }
}

/// Normalized element from a coefficient vector at `level`.
fn norm(level: usize, mut coeffs: Vec<Elem>) -> Elem {
    while coeffs.last().map(|c| c.is_zero_repr()).unwrap_or(false) {
        coeffs.pop();
    }
    match coeffs.len() {
        0 => Elem::zero(),
        1 => coeffs.pop().unwrap(),
        _ => Elem::Alg { level, coeffs },
    }
}

/// A zero-divisor was met: `modulus` of `level` factors as
/// `factor * (modulus / factor)`; the caller forks.
#[derive(Debug, Clone)]
pub struct Split {
    pub level: usize,
    pub factor: Vec<Elem>,
}

pub type AlgResult<T> = Result<T, Split>;

#[derive(Debug, Clone, Default)]
pub struct Tower {
    pub levels: Vec<Level>,
}

impl Tower {
    pub fn new() -> Self {
        Tower { levels: Vec::new() }
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Total field-extension degree of the tower over Q.
    pub fn total_degree(&self) -> usize {
        self.levels.iter().map(|l| l.degree()).product()
    }

    /// Product of the degrees of the levels of one kind.
    pub fn degree_of_kind(&self, kind: LevelKind) -> usize {
        self.levels
            .iter()
            .filter(|l| l.kind == kind)
            .map(|l| l.degree())
            .product()
    }

    /// Adjoins a root of the monic polynomial `modulus` (degree >= 1);
    /// returns the new generator.
    pub fn adjoin(&mut self, name: &str, modulus: Vec<Elem>, kind: LevelKind) -> Elem {
        assert!(modulus.len() >= 2, "modulus must have positive degree");
        assert!(
            modulus.last().map(is_one).unwrap_or(false),
            "modulus must be monic"
        );
        self.levels.push(Level {
            name: name.to_string(),
            modulus,
            kind,
        });
        Elem::generator(self.levels.len())
    }

    fn coeffs_at(&self, e: &Elem, level: usize) -> Vec<Elem> {
        if e.level() == level {
            match e {
                Elem::Alg { coeffs, .. } => coeffs.clone(),
                Elem::Base(_) => vec![e.clone()],
            }
        } else {
            debug_assert!(e.level() < level);
            vec![e.clone()]
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        let l = a.level().max(b.level());
        if l == 0 {
            let (Elem::Base(x), Elem::Base(y)) = (a, b) else {
                unreachable!()
            };
            return Elem::Base(x.clone() + y.clone());
        }
        let mut ca = self.coeffs_at(a, l);
        let cb = self.coeffs_at(b, l);
        if ca.len() < cb.len() {
            ca.resize(cb.len(), Elem::zero());
        }
        for (i, y) in cb.into_iter().enumerate() {
            ca[i] = self.add(&ca[i], &y);
        }
        norm(l, ca)
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match a {
            Elem::Base(r) => Elem::Base(-r.clone()),
            Elem::Alg { level, coeffs } => Elem::Alg {
                level: *level,
                coeffs: coeffs.iter().map(|c| self.neg(c)).collect(),
            },
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        if a.is_zero_repr() || b.is_zero_repr() {
            return Elem::zero();
        }
        let l = a.level().max(b.level());
        if l == 0 {
            let (Elem::Base(x), Elem::Base(y)) = (a, b) else {
                unreachable!()
            };
            return Elem::Base(x.clone() * y.clone());
        }
        let ca = self.coeffs_at(a, l);
        let cb = self.coeffs_at(b, l);
        let mut prod = vec![Elem::zero(); ca.len() + cb.len() - 1];
        for (i, x) in ca.iter().enumerate() {
            if x.is_zero_repr() {
                continue;
            }
            for (j, y) in cb.iter().enumerate() {
                if y.is_zero_repr() {
                    continue;
                }
                prod[i + j] = self.add(&prod[i + j], &self.mul(x, y));
            }
        }
        let reduced = self.reduce_vec(l, prod);
        norm(l, reduced)
    }

    /// Reduces a coefficient vector at `level` modulo that level's modulus.
    fn reduce_vec(&self, level: usize, mut v: Vec<Elem>) -> Vec<Elem> {
        let m = self.levels[level - 1].modulus.clone();
        let d = m.len() - 1;
        while v.len() > d {
            let lead = v.pop().unwrap();
            if lead.is_zero_repr() {
                continue;
            }
            let off = v.len() - d;
            for i in 0..d {
                let t = self.mul(&lead, &m[i]);
                v[off + i] = self.sub(&v[off + i], &t);
            }
        }
        v
    }

    /// Fully re-reduces an element (used after a tower fork, when stored
    /// representatives may exceed a shrunken modulus degree).
    pub fn reduce_elem(&self, e: &Elem) -> Elem {
        match e {
            Elem::Base(_) => e.clone(),
            Elem::Alg { level, coeffs } => {
                let v: Vec<Elem> = coeffs.iter().map(|c| self.reduce_elem(c)).collect();
                let v = self.reduce_vec(*level, v);
                norm(*level, v)
            }
        }
    }

    pub fn is_zero(&self, e: &Elem) -> bool {
        e.is_zero_repr()
    }

    pub fn eq(&self, a: &Elem, b: &Elem) -> bool {
        self.sub(a, b).is_zero_repr()
    }

    /// Multiplicative inverse. `Err(Split)` when the representative is a
    /// zero divisor, i.e. the modulus factors.
    pub fn inv(&self, e: &Elem) -> AlgResult<Elem> {
        match e {
            Elem::Base(r) => {
                assert!(!r.is_zero(), "inversion of zero");
                Ok(Elem::Base(BigRat::one() / r.clone()))
            }
            Elem::Alg { level, coeffs } => {
                let l = *level;
                let m = self.levels[l - 1].modulus.clone();
                // extended Euclid, tracking s with s * e = r (mod modulus)
                let mut r0: Vec<Elem> = m.clone();
                let mut r1: Vec<Elem> = coeffs.clone();
                let mut s0: Vec<Elem> = Vec::new();
                let mut s1: Vec<Elem> = vec![Elem::one()];
                while !uni::is_zero(&r1) {
                    let (q, r2) = self.divrem_field(&r0, &r1)?;
                    let qs1 = self.upoly_mul_raw(&q, &s1);
                    let s2 = self.upoly_sub_raw(&s0, &qs1);
                    r0 = r1;
                    r1 = r2;
                    s0 = s1;
                    s1 = s2;
                }
                let g = uni::trim(r0);
                match g.len() {
                    0 => panic!("gcd with modulus is zero"),
                    1 => {
                        let ginv = self.inv(&g[0])?;
                        let scaled: Vec<Elem> = s0.iter().map(|c| self.mul(c, &ginv)).collect();
                        let red = self.reduce_vec(l, scaled);
                        Ok(norm(l, red))
                    }
                    glen if glen < m.len() => {
                        let monic = self.upoly_monic_raw(&g)?;
                        Err(Split {
                            level: l,
                            factor: monic,
                        })
                    }
                    _ => panic!("inversion of zero element (gcd = modulus)"),
                }
            }
        }
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> AlgResult<Elem> {
        let bi = self.inv(b)?;
        Ok(self.mul(a, &bi))
    }

    // -- helpers on raw univariate coefficient vectors over this tower --

    fn upoly_mul_raw(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Elem::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = self.add(&out[i + j], &self.mul(x, y));
            }
        }
        uni::trim(out)
    }

    fn upoly_sub_raw(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let n = a.len().max(b.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let x = a.get(i).cloned().unwrap_or_else(Elem::zero);
            let y = b.get(i).cloned().unwrap_or_else(Elem::zero);
            out.push(self.sub(&x, &y));
        }
        uni::trim(out)
    }

    pub(crate) fn upoly_monic_raw(&self, a: &[Elem]) -> AlgResult<Vec<Elem>> {
        let a = uni::trim(a.to_vec());
        let lead = a.last().expect("nonzero");
        let li = self.inv(lead)?;
        Ok(a.iter().map(|c| self.mul(c, &li)).collect())
    }

    /// Division with remainder; the divisor need not be monic, its leading
    /// coefficient is inverted (which may split).
    pub(crate) fn divrem_field(&self, a: &[Elem], b: &[Elem]) -> AlgResult<(Vec<Elem>, Vec<Elem>)> {
        let b = uni::trim(b.to_vec());
        assert!(!b.is_empty(), "division by zero polynomial");
        let lb_inv = self.inv(b.last().unwrap())?;
        let db = b.len() - 1;
        let mut rem = uni::trim(a.to_vec());
        if rem.len() <= db {
            return Ok((Vec::new(), rem));
        }
        let mut quot = vec![Elem::zero(); rem.len() - db];
        while rem.len() > db {
            let k = rem.len() - 1 - db;
            let c = self.mul(rem.last().unwrap(), &lb_inv);
            for i in 0..=db {
                let t = self.mul(&c, &b[i]);
                rem[k + i] = self.sub(&rem[k + i], &t);
            }
            quot[k] = c;
            rem = uni::trim(rem);
        }
        Ok((uni::trim(quot), rem))
    }

    /// Forks the tower at a zero divisor. Elements represented over the old
    /// tower remain valid over both results (re-reduce before reuse).
    pub fn split(&self, s: &Split) -> (Tower, Tower) {
        let level = &self.levels[s.level - 1];
        let (q, r) = self
            .divrem_field(&level.modulus, &s.factor)
            .expect("division by a monic factor cannot split");
        assert!(uni::is_zero(&r), "split factor must divide the modulus");
        let mut a = self.clone();
        let mut b = self.clone();
        a.levels[s.level - 1].modulus = s.factor.clone();
        b.levels[s.level - 1].modulus = q;
        // deeper moduli keep their meaning; re-reduce their coefficient
        // representatives so they stay canonical
        for t in [&mut a, &mut b] {
            for i in s.level..t.levels.len() {
                let m = t.levels[i].modulus.clone();
                let view = t.clone();
                t.levels[i].modulus = m.iter().map(|c| view.reduce_elem(c)).collect();
            }
        }
        (a, b)
    }

    /// Pretty form of an element in the level generator names.
    pub fn render(&self, e: &Elem) -> String {
        match e {
            Elem::Base(r) => crate::rat::rat_to_string(r),
            Elem::Alg { level, coeffs } => {
                let name = self.levels[*level - 1].name.clone();
                self.render_terms(&name, coeffs)
            }
        }
    }

    /// The monic modulus of a level, rendered as a polynomial in the
    /// level's generator name.
    pub fn render_modulus(&self, level: usize) -> String {
        let l = &self.levels[level - 1];
        self.render_terms(&l.name.clone(), &l.modulus)
    }

    fn render_terms(&self, name: &str, coeffs: &[Elem]) -> String {
        let mut out = String::new();
        for (i, c) in coeffs.iter().enumerate().rev() {
            if c.is_zero_repr() {
                continue;
            }
            let mut cs = self.render(c);
            // fold a plain leading sign; parenthesize composite coefficients
            let negative = cs.starts_with('-') && !cs.contains(' ');
            if negative {
                cs = cs[1..].to_string();
            }
            if cs.contains(' ') {
                cs = format!("({cs})");
            }
            let body = match i {
                0 => cs,
                1 if cs == "1" => name.to_string(),
                1 => format!("{cs}*{name}"),
                _ if cs == "1" => format!("{name}^{i}"),
                _ => format!("{cs}*{name}^{i}"),
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
                out.push_str(&body);
            } else {
                out.push_str(if negative { " - " } else { " + " });
                out.push_str(&body);
            }
        }
        if out.is_empty() {
            "0".to_string()
        } else {
            out
        }
    }
}

fn is_one(e: &Elem) -> bool {
    matches!(e, Elem::Base(r) if r.is_one())
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "modulus at tower level {} factors", self.level)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_i64;

    fn e(n: i64) -> Elem {
        Elem::from_i64(n)
    }

    #[test]
    fn quadratic_extension_arithmetic() {
        // adjoin sqrt2: x^2 - 2
        let mut t = Tower::new();
        let s = t.adjoin("s", vec![e(-2), e(0), Elem::one()], LevelKind::EdgeRoot);
        let s2 = t.mul(&s, &s);
        assert!(t.eq(&s2, &e(2)));
        // (1 + s)^2 = 3 + 2s
        let u = t.add(&Elem::one(), &s);
        let u2 = t.mul(&u, &u);
        let expect = t.add(&e(3), &t.mul(&e(2), &s));
        assert!(t.eq(&u2, &expect));
        // inverse of s is s/2
        let si = t.inv(&s).unwrap();
        assert!(t.eq(&t.mul(&si, &s), &Elem::one()));
    }

    #[test]
    fn nested_tower() {
        // s^2 = 2, then r^2 = s  (so r^4 = 2)
        let mut t = Tower::new();
        let s = t.adjoin("s", vec![e(-2), e(0), Elem::one()], LevelKind::EdgeRoot);
        let r = t.adjoin(
            "r",
            vec![t.neg(&s), Elem::zero(), Elem::one()],
            LevelKind::RootPower,
        );
        let r4 = t.mul(&t.mul(&r, &r), &t.mul(&r, &r));
        assert!(t.eq(&r4, &e(2)));
        let ri = t.inv(&r).unwrap();
        assert!(t.eq(&t.mul(&ri, &r), &Elem::one()));
    }

    #[test]
    fn zero_divisor_splits() {
        // modulus x^2 - 1 is reducible; inverting x - 1 must fork
        let mut t = Tower::new();
        let x = t.adjoin("x", vec![e(-1), e(0), Elem::one()], LevelKind::EdgeRoot);
        let z = t.sub(&x, &Elem::one());
        match t.inv(&z) {
            Err(split) => {
                assert_eq!(split.level, 1);
                let (a, b) = t.split(&split);
                assert_eq!(a.levels[0].degree() + b.levels[0].degree(), 2);
                // over each factor the element is either zero or invertible
                for tt in [a, b] {
                    let zr = tt.reduce_elem(&z);
                    if !tt.is_zero(&zr) {
                        let yi = tt.inv(&zr).unwrap();
                        assert!(tt.eq(&tt.mul(&yi, &zr), &Elem::one()));
                    }
                }
            }
            Ok(_) => panic!("expected a split"),
        }
    }

    #[test]
    fn rendering() {
        let mut t = Tower::new();
        let s = t.adjoin("a1", vec![e(-2), e(0), Elem::one()], LevelKind::EdgeRoot);
        let u = t.add(&t.mul(&e(3), &s), &Elem::Base(rat_i64(1) / rat_i64(2)));
        assert_eq!(t.render(&u), "3*a1 + 1/2");
        assert_eq!(t.render_modulus(1), "a1^2 - 2");
    }
}
