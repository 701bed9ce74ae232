//! Monodromy representations: enumeration of homomorphisms from finitely
//! presented groups (with marked geometric generators) into symmetric
//! groups, equivalence under simultaneous conjugation, transitivity,
//! local component decompositions, and presentation validation.

mod presentation;

pub use presentation::{
    ak_presentation, free_rank_one, load_data_pack, AbelianizationExpectation, Expectations,
    FinitePresentation, HomCountExpectation, PresentationFile,
};

use crate::perm::{CyclicalType, Permutation};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonoError {
    #[error("degree {0} exceeds the configured cap {1}; raise the cap explicitly")]
    DegreeCapExceeded(usize, usize),
    #[error("representations have mixed degrees")]
    MixedDegrees,
    #[error("presentation error: {0}")]
    Presentation(String),
    #[error("{0}")]
    Other(String),
}

/// A homomorphism to S_n, one permutation per generator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PermRepresentation {
    pub degree: usize,
    pub images: Vec<Permutation>,
}

impl PermRepresentation {
    /// Evaluates a word (signed 1-based generator indices, first letter
    /// applied first).
    pub fn eval_word(&self, word: &[i32]) -> Permutation {
        let mut acc = Permutation::identity(self.degree);
        for &letter in word {
            let idx = letter.unsigned_abs() as usize - 1;
            let g = if letter > 0 {
                self.images[idx].clone()
            } else {
                self.images[idx].inverse()
            };
            acc = g.compose(&acc);
        }
        acc
    }

    /// Simultaneous conjugation of all generator images.
    pub fn conjugate(&self, g: &Permutation) -> PermRepresentation {
        PermRepresentation {
            degree: self.degree,
            images: self.images.iter().map(|p| p.conjugate(g)).collect(),
        }
    }

    /// Flat image key used for the canonical lexicographic order.
    pub fn key(&self) -> Vec<usize> {
        self.images
            .iter()
            .flat_map(|p| p.images().iter().copied())
            .collect()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct EnumerationOptions {
    /// Enumeration refuses degrees above this unless raised explicitly.
    pub degree_cap: usize,
    pub parallel: bool,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            degree_cap: 8,
            parallel: true,
        }
    }
}

/// All homomorphisms whose geometric generators map to permutations of
/// exactly the constrained cyclical type and whose relators map to the
/// identity, in canonical lexicographic-by-images order.
pub fn enumerate_homs(
    pres: &FinitePresentation,
    n: usize,
    geom_constraint: &CyclicalType,
    opts: &EnumerationOptions,
) -> Result<Vec<PermRepresentation>, MonoError> {
    if n > opts.degree_cap {
        return Err(MonoError::DegreeCapExceeded(n, opts.degree_cap));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let g = pres.generators.len();
    let constrained = Permutation::all_of_type(n, geom_constraint);
    if constrained.is_empty() && !pres.geometric.is_empty() {
        return Ok(Vec::new());
    }
    let unconstrained = Permutation::all(n);
    let candidates: Vec<&[Permutation]> = (1..=g)
        .map(|i| {
            if pres.geometric.contains(&i) {
                constrained.as_slice()
            } else {
                unconstrained.as_slice()
            }
        })
        .collect();

    // relators become checkable once every generator they mention is set
    let checkpoint: Vec<Vec<&[i32]>> = {
        let mut by_depth: Vec<Vec<&[i32]>> = vec![Vec::new(); g + 1];
        for r in &pres.relators {
            let max_gen = r
                .iter()
                .map(|l| l.unsigned_abs() as usize)
                .max()
                .unwrap_or(0);
            by_depth[max_gen].push(r.as_slice());
        }
        by_depth
    };

    fn backtrack(
        depth: usize,
        g: usize,
        n: usize,
        stack: &mut Vec<Permutation>,
        candidates: &[&[Permutation]],
        checkpoint: &[Vec<&[i32]>],
        out: &mut Vec<PermRepresentation>,
    ) {
        if depth == g {
            out.push(PermRepresentation {
                degree: n,
                images: stack.clone(),
            });
            return;
        }
        'next: for cand in candidates[depth] {
            stack.push(cand.clone());
            let rep = PermRepresentation {
                degree: n,
                images: stack.clone(),
            };
            for relator in &checkpoint[depth + 1] {
                if !rep.eval_word(relator).is_identity() {
                    stack.pop();
                    continue 'next;
                }
            }
            backtrack(depth + 1, g, n, stack, candidates, checkpoint, out);
            stack.pop();
        }
    }

    let mut result: Vec<PermRepresentation> = if g == 0 {
        vec![PermRepresentation {
            degree: n,
            images: Vec::new(),
        }]
    } else if opts.parallel && candidates[0].len() > 1 {
        // split the tree at the first generator; merge-only collector,
        // canonical sort below makes the output schedule-independent
        candidates[0]
            .par_iter()
            .map(|first| {
                let mut local = Vec::new();
                let mut stack = vec![first.clone()];
                let rep = PermRepresentation {
                    degree: n,
                    images: stack.clone(),
                };
                if checkpoint[1].iter().all(|r| rep.eval_word(r).is_identity()) {
                    backtrack(1, g, n, &mut stack, &candidates, &checkpoint, &mut local);
                }
                local
            })
            .reduce(Vec::new, |mut a, mut b| {
                a.append(&mut b);
                a
            })
    } else {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        backtrack(0, g, n, &mut stack, &candidates, &checkpoint, &mut out);
        out
    };
    result.sort_by_key(|r| r.key());
    Ok(result)
}

/// True iff the image subgroup acts transitively on {1..n}.
pub fn is_transitive(rep: &PermRepresentation) -> bool {
    let n = rep.degree;
    if n <= 1 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut queue = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(p) = queue.pop() {
        for img in &rep.images {
            for q in [img.apply(p), img.inverse().apply(p)] {
                if !seen[q] {
                    seen[q] = true;
                    count += 1;
                    queue.push(q);
                }
            }
        }
    }
    count == n
}

#[derive(Debug, Clone)]
pub struct EquivClass {
    pub representative: PermRepresentation,
    pub size: usize,
    pub transitive: bool,
}

/// Partition under simultaneous conjugation by a single element of S_n.
/// Class representative: lexicographically least member.
pub fn equivalence_classes(reps: &[PermRepresentation]) -> Result<Vec<EquivClass>, MonoError> {
    if reps.is_empty() {
        return Ok(Vec::new());
    }
    let n = reps[0].degree;
    if reps.iter().any(|r| r.degree != n) {
        return Err(MonoError::MixedDegrees);
    }
    let conjugators = Permutation::all(n);
    let mut canon: Vec<(Vec<usize>, usize)> = Vec::new(); // (canonical key, source index)
    for (i, rep) in reps.iter().enumerate() {
        let least = conjugators
            .iter()
            .map(|c| rep.conjugate(c).key())
            .min()
            .expect("nonempty S_n");
        canon.push((least, i));
    }
    canon.sort();
    let mut classes: Vec<EquivClass> = Vec::new();
    let mut at = 0;
    while at < canon.len() {
        let key = &canon[at].0;
        let mut size = 0;
        while at + size < canon.len() && &canon[at + size].0 == key {
            size += 1;
        }
        let representative = PermRepresentation {
            degree: n,
            images: key
                .chunks(n)
                .map(|c| Permutation::from_images(c.to_vec()).expect("conjugate image"))
                .collect(),
        };
        let transitive = is_transitive(&representative);
        classes.push(EquivClass {
            representative,
            size,
            transitive,
        });
        at += size;
    }
    Ok(classes)
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentDecomposition {
    /// Orbits as sorted 1-based point sets, ordered by least point.
    pub orbits: Vec<Vec<usize>>,
    pub degrees: Vec<usize>,
    /// Per-orbit flag `n_j = mu + 1` when a reference multiplicity is given.
    pub nondegenerate: Option<Vec<bool>>,
}

/// Orbits of the subgroup generated by the images of `local_gens`
/// (1-based generator indices).
pub fn components(
    rep: &PermRepresentation,
    local_gens: &[usize],
    reference_multiplicity: Option<u64>,
) -> Result<ComponentDecomposition, MonoError> {
    if local_gens.is_empty() {
        return Err(MonoError::Other("localGens must be nonempty".into()));
    }
    for &g in local_gens {
        if g == 0 || g > rep.images.len() {
            return Err(MonoError::Other(format!("no generator index {g}")));
        }
    }
    let n = rep.degree;
    let mut seen = vec![false; n];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut queue = vec![start];
        while let Some(p) = queue.pop() {
            for &g in local_gens {
                let img = &rep.images[g - 1];
                for q in [img.apply(p), img.inverse().apply(p)] {
                    if !seen[q] {
                        seen[q] = true;
                        orbit.push(q);
                        queue.push(q);
                    }
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit.iter().map(|p| p + 1).collect());
    }
    orbits.sort_by_key(|o| o[0]);
    let degrees: Vec<usize> = orbits.iter().map(|o| o.len()).collect();
    let nondegenerate =
        reference_multiplicity.map(|mu| degrees.iter().map(|&d| d as u64 == mu + 1).collect());
    Ok(ComponentDecomposition {
        orbits,
        degrees,
        nondegenerate,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub passed: bool,
    pub details: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub name: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

/// Verifies a presentation's declared expectations: abelianization
/// invariants (integer row reduction of the relator matrix), hom counts
/// into small symmetric groups, geometric-generator count.
pub fn validate_presentation(pres: &FinitePresentation) -> ValidationReport {
    let mut checks = Vec::new();
    let Some(exp) = &pres.expectations else {
        return ValidationReport {
            name: pres.name.clone(),
            passed: true,
            checks: vec![CheckResult {
                check: "expectations".into(),
                passed: true,
                details: "no expectations declared".into(),
            }],
        };
    };
    if let Some(ab) = &exp.abelianization {
        let (free_rank, torsion) = abelianization(pres);
        let ok = free_rank == ab.free_rank && torsion == ab.torsion;
        checks.push(CheckResult {
            check: "abelianization".into(),
            passed: ok,
            details: format!(
                "computed free rank {free_rank}, torsion {torsion:?}; expected free rank {}, torsion {:?}",
                ab.free_rank, ab.torsion
            ),
        });
    }
    if let Some(counts) = &exp.hom_counts {
        for hc in counts {
            let constraint = match CyclicalType::new(hc.cyclical_type.clone()) {
                Some(t) => t,
                None => {
                    checks.push(CheckResult {
                        check: format!("homCount degree {}", hc.degree),
                        passed: false,
                        details: "invalid cyclical type (entries must be >= 2)".into(),
                    });
                    continue;
                }
            };
            let opts = EnumerationOptions {
                degree_cap: hc.degree.max(8),
                parallel: false,
            };
            match enumerate_homs(pres, hc.degree, &constraint, &opts) {
                Ok(homs) => {
                    let ok = homs.len() == hc.total;
                    checks.push(CheckResult {
                        check: format!("homCount degree {}", hc.degree),
                        passed: ok,
                        details: format!("counted {}, expected {}", homs.len(), hc.total),
                    });
                }
                Err(e) => checks.push(CheckResult {
                    check: format!("homCount degree {}", hc.degree),
                    passed: false,
                    details: e.to_string(),
                }),
            }
        }
    }
    if let Some(gc) = exp.geometric_count {
        let ok = pres.geometric.len() == gc;
        checks.push(CheckResult {
            check: "geometricCount".into(),
            passed: ok,
            details: format!("marked {}, expected {gc}", pres.geometric.len()),
        });
    }
    ValidationReport {
        name: pres.name.clone(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

/// (free rank, torsion invariants > 1, ascending under divisibility).
pub fn abelianization(pres: &FinitePresentation) -> (usize, Vec<u64>) {
    let g = pres.generators.len();
    let mut matrix: Vec<Vec<i64>> = pres
        .relators
        .iter()
        .map(|r| {
            let mut row = vec![0i64; g];
            for &letter in r {
                let idx = letter.unsigned_abs() as usize - 1;
                row[idx] += letter.signum() as i64;
            }
            row
        })
        .collect();
    matrix.retain(|r| r.iter().any(|&x| x != 0));
    let diag = smith_diagonal(matrix, g);
    let rank = diag.iter().filter(|&&d| d != 0).count();
    let torsion: Vec<u64> = diag.iter().filter(|&&d| d > 1).map(|&d| d as u64).collect();
    (g - rank, torsion)
}

/// Diagonal of the Smith normal form (nonnegative, divisibility chain).
fn smith_diagonal(mut m: Vec<Vec<i64>>, cols: usize) -> Vec<i64> {
    let rows = m.len();
    let n = rows.min(cols);
    let mut diag = Vec::new();
    let mut top = 0usize;
    let mut left = 0usize;
    while top < rows && left < cols && diag.len() < n {
        // find a pivot of smallest nonzero magnitude
        let mut best: Option<(usize, usize)> = None;
        for (r, row) in m.iter().enumerate().skip(top) {
            for (c, &x) in row.iter().enumerate().skip(left) {
                if x != 0
                    && best
                        .map(|(br, bc)| x.abs() < m[br][bc].abs())
                        .unwrap_or(true)
                {
                    best = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = best else { break };
        m.swap(top, pr);
        for row in m.iter_mut() {
            row.swap(left, pc);
        }
        loop {
            let p = m[top][left];
            let mut clean = true;
            for r in top + 1..rows {
                let q = m[r][left] / p;
                if q != 0 {
                    for c in left..cols {
                        m[r][c] -= q * m[top][c];
                    }
                }
                if m[r][left] != 0 {
                    clean = false;
                }
            }
            for c in left + 1..cols {
                let q = m[top][c] / p;
                if q != 0 {
                    for r in top..rows {
                        m[r][c] -= q * m[r][left];
                    }
                }
                if m[top][c] != 0 {
                    clean = false;
                }
            }
            if clean {
                break;
            }
            // a smaller remainder appeared somewhere; re-pivot on it
            let mut best = (top, left);
            for r in top..rows {
                for c in left..cols {
                    if m[r][c] != 0
                        && m[r][c].abs() < m[best.0][best.1].abs().max(1)
                        && (m[best.0][best.1] == 0 || m[r][c].abs() < m[best.0][best.1].abs())
                    {
                        best = (r, c);
                    }
                }
            }
            m.swap(top, best.0);
            for row in m.iter_mut() {
                row.swap(left, best.1);
            }
        }
        diag.push(m[top][left].abs());
        top += 1;
        left += 1;
    }
    // enforce the divisibility chain
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..diag.len() {
            for j in i + 1..diag.len() {
                if diag[j] % diag[i] != 0 {
                    let g = gcd_i64(diag[i], diag[j]);
                    let l = diag[i] / g * diag[j];
                    diag[i] = g;
                    diag[j] = l;
                    changed = true;
                }
            }
        }
    }
    diag
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd_i64(b, a % b)
    }
}

/// Summary counts the CLI reports for an enumeration.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct EnumerationSummary {
    pub total: usize,
    pub transitive: usize,
    pub classes: usize,
    #[serde(rename = "transitiveClasses")]
    pub transitive_classes: usize,
}

pub fn summarize(reps: &[PermRepresentation]) -> Result<EnumerationSummary, MonoError> {
    let total = reps.len();
    let transitive = reps.iter().filter(|r| is_transitive(r)).count();
    let classes = equivalence_classes(reps)?;
    Ok(EnumerationSummary {
        total,
        transitive,
        classes: classes.len(),
        transitive_classes: classes.iter().filter(|c| c.transitive).count(),
    })
}
