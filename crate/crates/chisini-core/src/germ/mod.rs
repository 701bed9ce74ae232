//! Plane curve germs at the origin and their singularity invariants:
//! multiplicity, branch decomposition, Milnor number, delta invariant,
//! virtual cusps and nodes, and singularity-type recognition.

pub mod bi;
mod milnor;
mod puiseux;

pub use puiseux::{BranchClass, GermError};

use crate::alg::{LevelKind, Tower};
use crate::poly::{squarefree_part, MultiPoly};
use bi::BiPoly;
use milnor::EngineErr;
use serde::Serialize;
use std::fmt;
use std::sync::OnceLock;

/// One Duval-style rational Puiseux class: a packet of Galois-conjugate
/// branches `z = t^e, v = series`, with the coefficient field presented
/// as a tower of minimal polynomials.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct PuiseuxBranch {
    pub ramification_index: u64,
    /// Characteristic exponents as reduced `(numerator, denominator)`.
    pub exponents: Vec<(u64, u64)>,
    pub minimal_polys: Vec<String>,
    pub conjugacy_class_size: u64,
    pub multiplicity: u64,
    /// True for the z = 0 axis component (no series in z).
    pub vertical: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TypeTag {
    A(u64),
    E6,
    Torus(u64, u64),
    Other,
}

impl Serialize for TypeTag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeTag::A(k) => write!(f, "A{k}"),
            TypeTag::E6 => write!(f, "E6"),
            TypeTag::Torus(p, q) => write!(f, "T({p},{q})"),
            TypeTag::Other => write!(f, "Other"),
        }
    }
}

impl TypeTag {
    /// Parses the display form: `A2`, `E6`, `T(4,5)`, `Other`.
    pub fn parse(s: &str) -> Option<TypeTag> {
        let s = s.trim();
        if s == "E6" {
            return Some(TypeTag::E6);
        }
        if s == "Other" {
            return Some(TypeTag::Other);
        }
        if let Some(k) = s.strip_prefix('A') {
            return k.parse().ok().map(TypeTag::A);
        }
        if let Some(rest) = s.strip_prefix("T(").and_then(|r| r.strip_suffix(')')) {
            let (p, q) = rest.split_once(',')?;
            return Some(TypeTag::Torus(
                p.trim().parse().ok()?,
                q.trim().parse().ok()?,
            ));
        }
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GermInvariants {
    pub multiplicity: u64,
    pub branch_count: u64,
    pub milnor: u64,
    pub delta: u64,
    pub virtual_cusps: u64,
    pub virtual_nodes: u64,
    #[serde(rename = "type")]
    pub type_tag: TypeTag,
}

/// Raw analysis record, also used by the dual-curve singular scan where
/// the germ sits at a point with algebraic coordinates.
#[derive(Debug, Clone)]
pub(crate) struct RawGermData {
    /// Number of conjugate points this record accounts for.
    pub point_count: u64,
    pub multiplicity: u64,
    pub milnor: u64,
    pub branch_count: u64,
    pub delta: u64,
    pub virtual_cusps: u64,
    pub virtual_nodes: u64,
    pub type_tag: TypeTag,
    pub classes: Vec<BranchClass>,
}

/// Analyzes the germ of `f` at the origin over the seed tower, forking on
/// splits of point-coordinate moduli. One record per fork.
pub(crate) fn analyze_over_tower(seed: &Tower, f: &BiPoly) -> Result<Vec<RawGermData>, GermError> {
    let mut stack = vec![(seed.clone(), f.clone())];
    let mut out = Vec::new();
    while let Some((t, g)) = stack.pop() {
        match analyze_once(&t, &g) {
            Ok(d) => out.push(d),
            Err(EngineErr::Split(sp)) => {
                assert!(
                    sp.level <= seed.depth(),
                    "deep splits are resolved inside the engine"
                );
                let (ta, tb) = t.split(&sp);
                let ga = bi::bi_reduce(&ta, &g);
                let gb = bi::bi_reduce(&tb, &g);
                stack.push((ta, ga));
                stack.push((tb, gb));
            }
            Err(EngineErr::Germ(e)) => return Err(e),
        }
    }
    Ok(out)
}

fn analyze_once(t: &Tower, f: &BiPoly) -> Result<RawGermData, EngineErr> {
    let seed_depth = t.depth();
    let multiplicity = bi::bi_multiplicity(f) as u64;
    let milnor_a = milnor::milnor_local_algebra(t, f)?;
    // over the rationals the eliminant route double-checks the local
    // algebra; over point towers the scan has its own dual-route check
    // (Plücker numerics against the germ totals) and the eliminant's
    // coefficient growth is prohibitive
    if seed_depth == 0 {
        let milnor_b = milnor::milnor_resultant(t, f)?;
        if milnor_a != milnor_b {
            return Err(GermError::Internal(format!(
                "Milnor routes disagree: {milnor_a} vs {milnor_b}"
            ))
            .into());
        }
    }
    let milnor = milnor_a;
    let classes = puiseux::puiseux(t, f, seed_depth)?;

    let branch_count: u64 = classes.iter().map(|c| c.class_size).sum();
    let total_mult: u64 = classes.iter().map(|c| c.class_size * c.multiplicity).sum();
    if total_mult != multiplicity {
        return Err(GermError::Internal(format!(
            "branch multiplicities sum to {total_mult}, germ multiplicity is {multiplicity}"
        ))
        .into());
    }
    let two_delta = milnor + branch_count - 1;
    if !two_delta.is_multiple_of(2) {
        return Err(GermError::Internal("2*delta = mu + r - 1 parity failed".into()).into());
    }
    let delta = two_delta / 2;
    let virtual_cusps = total_mult - branch_count;
    if virtual_cusps > delta {
        return Err(GermError::Internal("virtual cusp count exceeds delta".into()).into());
    }
    let virtual_nodes = delta - virtual_cusps;

    let type_tag = recognize(
        t,
        f,
        multiplicity,
        milnor,
        branch_count,
        &classes,
        seed_depth,
    )?;

    Ok(RawGermData {
        point_count: t.degree_of_kind(LevelKind::Point) as u64,
        multiplicity,
        milnor,
        branch_count,
        delta,
        virtual_cusps,
        virtual_nodes,
        type_tag,
        classes,
    })
}

fn recognize(
    t: &Tower,
    f: &BiPoly,
    multiplicity: u64,
    milnor: u64,
    branch_count: u64,
    classes: &[BranchClass],
    seed_depth: usize,
) -> Result<TypeTag, EngineErr> {
    if multiplicity <= 2 {
        return Ok(TypeTag::A(milnor));
    }
    if branch_count != 1 || classes.len() != 1 {
        return Ok(TypeTag::Other);
    }
    let class = &classes[0];
    if class.vertical {
        return Ok(TypeTag::Other);
    }
    // intrinsic characteristic exponents: if the branch is tangent to the
    // v-axis (ramification exceeds multiplicity) swap the axes first
    let exponents = if class.ramification_index == multiplicity {
        class.char_exponents.clone()
    } else {
        let transposed = transpose(f);
        let swapped = puiseux::puiseux(t, &transposed, seed_depth)?;
        if swapped.len() != 1 {
            return Ok(TypeTag::Other);
        }
        swapped[0].char_exponents.clone()
    };
    if exponents.len() != 1 {
        return Ok(TypeTag::Other);
    }
    let (q, p) = exponents[0];
    if multiplicity == 3 && milnor == 6 && (q, p) == (4, 3) {
        return Ok(TypeTag::E6);
    }
    if q > p && p >= 2 {
        return Ok(TypeTag::Torus(p, q));
    }
    Ok(TypeTag::Other)
}

fn transpose(f: &BiPoly) -> BiPoly {
    let mut out: BiPoly = Vec::new();
    for (j, row) in f.iter().enumerate() {
        for (i, c) in row.iter().enumerate() {
            if c.is_zero_repr() {
                continue;
            }
            if out.len() <= i {
                out.resize(i + 1, Vec::new());
            }
            let r = &mut out[i];
            if r.len() <= j {
                r.resize(j + 1, crate::alg::Elem::zero());
            }
            r[j] = c.clone();
        }
    }
    bi::bi_trim(out)
}

/// A reduced plane curve germ at the origin, in the variables (z, v).
#[derive(Debug)]
pub struct CurveGerm {
    equation: MultiPoly,
    cache: OnceLock<Result<(RawGermData, Vec<PuiseuxBranch>), GermError>>,
}

impl CurveGerm {
    /// Validates and wraps a defining equation: bivariate in (z, v),
    /// vanishing at the origin, square-free ("reduce first" otherwise).
    pub fn new(equation: MultiPoly) -> Result<Self, GermError> {
        if equation.is_zero() {
            return Err(GermError::Internal("zero equation".into()));
        }
        for var in equation.vars() {
            if var != "z" && var != "v" && equation.degree_in(var) > 0 {
                return Err(GermError::Internal(format!(
                    "germ equations use the variables z, v; found `{var}`"
                )));
            }
        }
        let zero_point: Vec<(&str, crate::rat::BigRat)> = equation
            .vars()
            .iter()
            .map(|v| (v.as_str(), num::Zero::zero()))
            .collect();
        let at_origin = equation.eval(&zero_point).expect("full point");
        if !num::Zero::is_zero(&at_origin) {
            return Err(GermError::NotVanishing);
        }
        let sf = squarefree_part(&equation).map_err(|e| GermError::Internal(e.to_string()))?;
        if sf.monic() != equation.monic() {
            return Err(GermError::NotSquarefree);
        }
        Ok(CurveGerm {
            equation,
            cache: OnceLock::new(),
        })
    }

    pub fn equation(&self) -> &MultiPoly {
        &self.equation
    }

    fn analysis(&self) -> Result<&(RawGermData, Vec<PuiseuxBranch>), GermError> {
        self.cache
            .get_or_init(|| {
                let f = bi::bi_from_multipoly(&self.equation, "z", "v");
                let tower = Tower::new();
                let mut data = analyze_over_tower(&tower, &f)?;
                assert_eq!(data.len(), 1, "trivial seed tower cannot fork");
                let data = data.pop().unwrap();
                let branches = data
                    .classes
                    .iter()
                    .map(|c| PuiseuxBranch {
                        ramification_index: c.ramification_index,
                        exponents: c.char_exponents.clone(),
                        minimal_polys: (c.seed_depth..c.tower.depth())
                            .map(|l| c.tower.render_modulus(l + 1))
                            .collect(),
                        conjugacy_class_size: c.class_size,
                        multiplicity: c.multiplicity,
                        vertical: c.vertical,
                    })
                    .collect();
                Ok((data, branches))
            })
            .as_ref()
            .map_err(|e| e.clone())
    }

    /// Rational Puiseux classes covering all local branches.
    pub fn branches(&self) -> Result<&[PuiseuxBranch], GermError> {
        Ok(&self.analysis()?.1)
    }

    /// Degree of the lowest homogeneous part of the equation.
    pub fn multiplicity(&self) -> u64 {
        let f = bi::bi_from_multipoly(&self.equation, "z", "v");
        bi::bi_multiplicity(&f) as u64
    }

    pub fn milnor_number(&self) -> Result<u64, GermError> {
        Ok(self.analysis()?.0.milnor)
    }

    pub fn delta_invariant(&self) -> Result<u64, GermError> {
        Ok(self.analysis()?.0.delta)
    }

    pub fn virtual_cusps(&self) -> Result<u64, GermError> {
        Ok(self.analysis()?.0.virtual_cusps)
    }

    pub fn virtual_nodes(&self) -> Result<u64, GermError> {
        Ok(self.analysis()?.0.virtual_nodes)
    }

    pub fn recognize_type(&self) -> Result<TypeTag, GermError> {
        Ok(self.analysis()?.0.type_tag)
    }

    pub fn invariants(&self) -> Result<GermInvariants, GermError> {
        let d = &self.analysis()?.0;
        Ok(GermInvariants {
            multiplicity: d.multiplicity,
            branch_count: d.branch_count,
            milnor: d.milnor,
            delta: d.delta,
            virtual_cusps: d.virtual_cusps,
            virtual_nodes: d.virtual_nodes,
            type_tag: d.type_tag,
        })
    }
}
