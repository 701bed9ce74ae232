//! Newton–Puiseux expansion into rational branch classes.
//!
//! Branch coefficients live in towers of extensions; moduli are kept
//! squarefree but not factored into irreducibles, so one class may bundle
//! several Galois-conjugate branches — `class_size` counts them. A root
//! of an edge polynomial of multiplicity one terminates a class (the
//! series continues unramified from there); a multiple root triggers the
//! classical substitution x -> x^q, y -> x^p (c + y) and recursion.
//!
//! Splits of an edge-root modulus fork the computation into both factors.
//! Splits of a root-power modulus `c^q = u` keep only one factor: every
//! q-th root describes the same set of branches, so the factors are
//! interchangeable and keeping both would double-count. Splits at or
//! below the seed tower (point coordinates) are propagated to the caller.

use super::bi::{self, BiPoly};
use crate::alg::uni::{self, UPoly};
use crate::alg::{Elem, LevelKind, Split, Tower};
use crate::rat::BigRat;
use num::{ToPrimitive, Zero};

#[derive(Debug, Clone)]
pub struct BranchClass {
    pub tower: Tower,
    pub seed_depth: usize,
    pub ramification_index: u64,
    /// Characteristic exponents as reduced fractions, increasing.
    pub char_exponents: Vec<(u64, u64)>,
    /// Number of conjugate branches this class bundles.
    pub class_size: u64,
    /// Multiplicity at the origin of each branch in the class.
    pub multiplicity: u64,
    /// The x = 0 axis component, which has no series in x.
    pub vertical: bool,
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum GermError {
    #[error("reduce first: equation has a repeated factor")]
    NotSquarefree,
    #[error("germ does not vanish at the origin")]
    NotVanishing,
    #[error("non-isolated singularity")]
    NonIsolated,
    #[error("internal error: {0}")]
    Internal(String),
}

struct Item {
    tower: Tower,
    f: BiPoly,
    /// Product of the q's applied so far.
    e_acc: u64,
    /// Exponent accumulated through the previous level.
    beta: BigRat,
    chars: Vec<(u64, u64)>,
    /// (min(p1, q1), q1) from the first expansion step.
    mult_base: Option<(u64, u64)>,
    depth: usize,
}

fn reduce_fraction(r: &BigRat) -> (u64, u64) {
    (
        r.numer().to_u64().expect("exponent numerator fits u64"),
        r.denom().to_u64().expect("exponent denominator fits u64"),
    )
}

fn class_size(tower: &Tower, seed_depth: usize) -> u64 {
    tower.levels[seed_depth..]
        .iter()
        .filter(|l| l.kind == LevelKind::EdgeRoot)
        .map(|l| l.degree() as u64)
        .product()
}

fn branch_multiplicity(mult_base: &Option<(u64, u64)>, e_total: u64) -> u64 {
    match mult_base {
        None => 1, // no expansion step happened: smooth exact branch y = 0
        Some((m0, q1)) => m0 * (e_total / q1),
    }
}

/// Lower hull of the support, from the minimal-i point down to the
/// minimal-j point (same chain as `poly::newton_polygon`).
fn hull(points: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let start = *points.iter().min_by_key(|(i, j)| (*i, *j)).unwrap();
    let end = *points.iter().min_by_key(|(i, j)| (*j, *i)).unwrap();
    if start == end {
        return vec![start];
    }
    let mut cand: Vec<(usize, usize)> = points
        .iter()
        .copied()
        .filter(|(i, j)| *i >= start.0 && *i <= end.0 && *j >= end.1 && *j <= start.1)
        .collect();
    cand.sort_by_key(|(i, j)| (*i, std::cmp::Reverse(*j)));
    let mut h: Vec<(i64, i64)> = Vec::new();
    for (i, j) in cand {
        let p = (i as i64, j as i64);
        while h.len() >= 2 {
            let a = h[h.len() - 2];
            let b = h[h.len() - 1];
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross <= 0 {
                h.pop();
            } else {
                break;
            }
        }
        h.push(p);
    }
    h.into_iter()
        .map(|(i, j)| (i as usize, j as usize))
        .collect()
}

fn gcd64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd64(b, a % b)
    }
}

/// Full expansion of the germ `f` over `seed`. Splits at seed levels
/// propagate to the caller; deeper splits are resolved internally.
pub(crate) fn puiseux(
    seed: &Tower,
    f: &BiPoly,
    seed_depth: usize,
) -> Result<Vec<BranchClass>, super::milnor::EngineErr> {
    let mut f = bi::bi_trim(f.clone());
    if bi::bi_is_zero(&f) {
        return Err(super::milnor::EngineErr::Germ(GermError::Internal(
            "zero germ".into(),
        )));
    }
    let mut classes: Vec<BranchClass> = Vec::new();

    // x = 0 component
    let x_order = f
        .iter()
        .filter(|row| !uni::is_zero(row))
        .map(|row| row.iter().position(|c| !c.is_zero_repr()).unwrap())
        .min()
        .unwrap();
    if x_order >= 2 {
        return Err(super::milnor::EngineErr::Germ(GermError::NotSquarefree));
    }
    if x_order == 1 {
        for row in f.iter_mut() {
            if !uni::is_zero(row) {
                row.remove(0);
            }
        }
        classes.push(BranchClass {
            tower: seed.clone(),
            seed_depth,
            ramification_index: 1,
            char_exponents: Vec::new(),
            class_size: 1,
            multiplicity: 1,
            vertical: true,
        });
    }

    let mut stack: Vec<Item> = vec![Item {
        tower: seed.clone(),
        f,
        e_acc: 1,
        beta: BigRat::zero(),
        chars: Vec::new(),
        mult_base: None,
        depth: 1,
    }];

    while let Some(item) = stack.pop() {
        match process_item(&item, seed_depth) {
            Ok((mut done, mut more)) => {
                classes.append(&mut done);
                stack.append(&mut more);
            }
            Err(split) => {
                if split.level <= seed_depth {
                    return Err(super::milnor::EngineErr::Split(split));
                }
                let kind = item.tower.levels[split.level - 1].kind;
                let (ta, tb) = item.tower.split(&split);
                let mut requeue = |t: Tower| {
                    let f = bi::bi_reduce(&t, &item.f);
                    stack.push(Item {
                        tower: t,
                        f,
                        e_acc: item.e_acc,
                        beta: item.beta.clone(),
                        chars: item.chars.clone(),
                        mult_base: item.mult_base,
                        depth: item.depth,
                    });
                };
                if kind == LevelKind::RootPower {
                    // all q-th roots are equivalent: keep one factor
                    requeue(ta);
                } else {
                    requeue(ta);
                    requeue(tb);
                }
            }
        }
    }
    Ok(classes
        .into_iter()
        .flat_map(|c| refine_rational_roots(c, seed_depth))
        .collect())
}

/// Separates the rational branches of a class whose single edge-root
/// modulus lives over the base field: each rational root becomes its own
/// class, the residual factor keeps the rest. Invariant totals are
/// unchanged; the grouping just matches Galois orbits more closely.
fn refine_rational_roots(class: BranchClass, seed_depth: usize) -> Vec<BranchClass> {
    use crate::rat::BigRat as Q;
    use num::{One, Signed};
    if class.vertical
        || class.tower.depth() != seed_depth + 1
        || class.tower.levels[seed_depth].kind != LevelKind::EdgeRoot
    {
        return vec![class];
    }
    let modulus = class.tower.levels[seed_depth].modulus.clone();
    let rational: Option<Vec<Q>> = modulus
        .iter()
        .map(|e| match e {
            Elem::Base(r) => Some(r.clone()),
            _ => None,
        })
        .collect();
    let Some(coeffs) = rational else {
        return vec![class];
    };
    // integer form for the rational root theorem
    use num::bigint::BigInt;
    use num::Integer;
    let mut den_lcm = BigInt::one();
    for c in &coeffs {
        den_lcm = den_lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| c.numer() * (&den_lcm / c.denom()))
        .collect();
    let lead = ints.last().unwrap().clone();
    let konst = ints
        .iter()
        .find(|c| !num::Zero::is_zero(*c))
        .unwrap()
        .clone();
    let small = |n: &BigInt| n.abs() <= BigInt::from(1_000_000u64);
    if !small(&lead) || !small(&konst) {
        return vec![class]; // divisor search not worth it
    }
    let divisors = |n: &BigInt| -> Vec<BigInt> {
        use num::ToPrimitive;
        let n = n.abs().to_i64().unwrap().unsigned_abs();
        let mut out = Vec::new();
        let mut d = 1u64;
        while d * d <= n {
            if n.is_multiple_of(d) {
                out.push(BigInt::from(d));
                out.push(BigInt::from(n / d));
            }
            d += 1;
        }
        out
    };
    let eval = |cs: &[Q], x: &Q| -> Q {
        let mut acc: Q = num::Zero::zero();
        for c in cs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    };
    let mut remaining = coeffs;
    let mut roots: Vec<Q> = Vec::new();
    'search: loop {
        if remaining.len() <= 1 {
            break;
        }
        for p in divisors(&konst) {
            for q in divisors(&lead) {
                for sign in [1i64, -1] {
                    let cand = Q::new(p.clone() * BigInt::from(sign), q.clone());
                    if num::Zero::is_zero(&eval(&remaining, &cand)) {
                        // deflate by (x - cand)
                        let mut quot = vec![Q::from_integer(0.into()); remaining.len() - 1];
                        let mut carry: Q = num::Zero::zero();
                        for i in (0..remaining.len()).rev() {
                            let v = remaining[i].clone() + carry.clone();
                            if i == 0 {
                                debug_assert!(num::Zero::is_zero(&v));
                            } else {
                                quot[i - 1] = v.clone();
                                carry = v * cand.clone();
                            }
                        }
                        remaining = quot;
                        roots.push(cand);
                        continue 'search;
                    }
                }
            }
        }
        break;
    }
    if roots.is_empty() {
        return vec![class];
    }
    let mut out = Vec::new();
    let base_tower = {
        let mut t = class.tower.clone();
        t.levels.truncate(seed_depth);
        t
    };
    for _ in &roots {
        out.push(BranchClass {
            tower: base_tower.clone(),
            seed_depth,
            ramification_index: class.ramification_index,
            char_exponents: class.char_exponents.clone(),
            class_size: 1,
            multiplicity: class.multiplicity,
            vertical: false,
        });
    }
    if remaining.len() >= 2 {
        let mut t = base_tower;
        let lead_inv = Q::one() / remaining.last().unwrap().clone();
        let monic: Vec<Elem> = remaining
            .iter()
            .map(|c| Elem::Base(c.clone() * lead_inv.clone()))
            .collect();
        let name = class.tower.levels[seed_depth].name.clone();
        t.adjoin(&name, monic, LevelKind::EdgeRoot);
        out.push(BranchClass {
            tower: t,
            seed_depth,
            ramification_index: class.ramification_index,
            char_exponents: class.char_exponents.clone(),
            class_size: remaining.len() as u64 - 1,
            multiplicity: class.multiplicity,
            vertical: false,
        });
    }
    out
}

fn process_item(item: &Item, seed_depth: usize) -> Result<(Vec<BranchClass>, Vec<Item>), Split> {
    let t = &item.tower;
    let mut f = item.f.clone();
    let mut done = Vec::new();
    let mut more = Vec::new();

    assert!(item.depth <= 64, "Puiseux recursion exceeded depth bound");

    // y = 0 component: an exactly terminating series
    let y_order = f.iter().position(|row| !uni::is_zero(row)).unwrap();
    assert!(y_order <= 1, "repeated series factor in squarefree germ");
    if y_order == 1 {
        f.remove(0);
        done.push(BranchClass {
            tower: t.clone(),
            seed_depth,
            ramification_index: item.e_acc,
            char_exponents: item.chars.clone(),
            class_size: class_size(t, seed_depth),
            multiplicity: branch_multiplicity(&item.mult_base, item.e_acc),
            vertical: false,
        });
    }
    if f.len() <= 1 {
        // nothing left below the hull: remaining factor is a unit
        debug_assert!(!f.is_empty() && !f[0].is_empty() && !f[0][0].is_zero_repr());
        return Ok((done, more));
    }

    let support = bi::bi_support(&f);
    let chain = hull(&support);

    for edge in chain.windows(2) {
        let (i0, j0) = edge[0];
        let (i1, j1) = edge[1];
        let w = (i1 - i0) as u64;
        let h = (j0 - j1) as u64;
        let g = gcd64(w, h);
        let p = w / g;
        let q = h / g;
        let steps = g as usize;

        // edge polynomial: psi(u) = sum coeff(i1 - s*p, j1 + s*q) u^s
        let mut psi: UPoly = Vec::with_capacity(steps + 1);
        for s in 0..=steps {
            let i = i1 - s * p as usize;
            let j = j1 + s * q as usize;
            let c = f
                .get(j)
                .and_then(|row| row.get(i))
                .cloned()
                .unwrap_or_else(Elem::zero);
            psi.push(c);
        }
        debug_assert!(!psi.last().unwrap().is_zero_repr());
        debug_assert!(!psi[0].is_zero_repr());

        let beta_new = item.beta.clone()
            + BigRat::new(p.into(), q.into()) / BigRat::from_integer(item.e_acc.into());
        let mut chars_new = item.chars.clone();
        if q > 1 {
            chars_new.push(reduce_fraction(&beta_new));
        }
        let e_new = item.e_acc * q;
        let mult_base_new = item.mult_base.unwrap_or((p.min(q), q));

        let decomposition = uni::squarefree_decomposition(t, &psi)?;
        debug_assert!(!decomposition.is_empty());

        for (factor, mult) in decomposition {
            let fdeg = factor.len() - 1;
            if mult == 1 {
                // terminal class: the series is determined from here on
                let mut tower = t.clone();
                if fdeg >= 1 && (fdeg > 1 || factor_root_outside(&tower, &factor)) {
                    let name = format!("a{}", tower.depth() + 1);
                    tower.adjoin(&name, factor.clone(), LevelKind::EdgeRoot);
                }
                done.push(BranchClass {
                    seed_depth,
                    ramification_index: e_new,
                    char_exponents: chars_new.clone(),
                    class_size: class_size(&tower, seed_depth),
                    multiplicity: branch_multiplicity(&Some(mult_base_new), e_new),
                    vertical: false,
                    tower,
                });
                continue;
            }

            // multiple root: substitute and recurse
            let mut tower = t.clone();
            let u = if fdeg == 1 {
                tower.neg(&factor[0])
            } else {
                let name = format!("a{}", tower.depth() + 1);
                tower.adjoin(&name, factor.clone(), LevelKind::EdgeRoot)
            };
            let c = if q == 1 {
                u
            } else {
                let mut modulus = vec![Elem::zero(); q as usize + 1];
                modulus[0] = tower.neg(&u);
                modulus[q as usize] = Elem::one();
                let name = format!("c{}", tower.depth() + 1);
                tower.adjoin(&name, modulus, LevelKind::RootPower)
            };
            let f1 = expand_after_substitution(&tower, &f, p, q, &c);
            more.push(Item {
                tower,
                f: f1,
                e_acc: e_new,
                beta: beta_new.clone(),
                chars: chars_new.clone(),
                mult_base: Some(mult_base_new),
                depth: item.depth + 1,
            });
        }
    }
    Ok((done, more))
}

/// Whether the degree-1 factor's root is genuinely outside the field of
/// fractions representation — it never is (a monic linear factor has its
/// root in the field), kept for clarity at call sites.
fn factor_root_outside(_t: &Tower, _factor: &UPoly) -> bool {
    false
}

/// f(x^q, x^p (c + y)) with the x-content removed.
fn expand_after_substitution(t: &Tower, f: &BiPoly, p: u64, q: u64, c: &Elem) -> BiPoly {
    let dy = f.len() - 1;
    // binomial coefficients up to dy
    let mut binom = vec![vec![0u64; dy + 1]; dy + 1];
    for n in 0..=dy {
        binom[n][0] = 1;
        for k in 1..=n {
            binom[n][k] = binom[n - 1][k - 1] + if k < n { binom[n - 1][k] } else { 0 };
        }
    }
    // powers of c
    let mut cpow = vec![Elem::one(); dy + 1];
    for k in 1..=dy {
        cpow[k] = t.mul(&cpow[k - 1], c);
    }
    let mut out: BiPoly = vec![Vec::new(); dy + 1];
    for (j, row) in f.iter().enumerate() {
        if uni::is_zero(row) {
            continue;
        }
        // a_j(x^q) * x^{p*j}
        let shift = (p as usize) * j;
        let mut stretched = vec![Elem::zero(); shift + (row.len() - 1) * q as usize + 1];
        for (i, cf) in row.iter().enumerate() {
            if !cf.is_zero_repr() {
                stretched[shift + i * q as usize] = cf.clone();
            }
        }
        // times (c + y)^j
        for r in 0..=j {
            let coef = t.mul(&Elem::from_i64(binom[j][r] as i64), &cpow[j - r]);
            if coef.is_zero_repr() {
                continue;
            }
            let term = uni::scale(t, &stretched, &coef);
            out[r] = uni::add(t, &out[r], &term);
        }
    }
    let mut out = bi::bi_trim(out);
    // strip x^N
    let n = out
        .iter()
        .filter(|row| !uni::is_zero(row))
        .map(|row| row.iter().position(|c| !c.is_zero_repr()).unwrap())
        .min()
        .expect("nonzero after substitution");
    if n > 0 {
        for row in out.iter_mut() {
            if uni::is_zero(row) {
                row.clear();
            } else {
                row.drain(0..n);
            }
        }
    }
    bi::bi_trim(out)
}
