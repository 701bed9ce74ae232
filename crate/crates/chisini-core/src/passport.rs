//! Passports of finite covers and the decision procedure applying the
//! uniqueness statements: the single-cycle theorem, the Hodge-index
//! degree bound, the degree-12 and degree-5 generic-cover theorems, the
//! Chisini-12 singularity-type criterion, the dualizing-cover criterion,
//! and the multi-cycle impossibility pattern.

use crate::germ::TypeTag;
use crate::perm::CyclicalType;
use crate::rat::BigRat;
use num::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PassportError {
    #[error("bound inapplicable: 2(3d + g - 1) - c <= 0")]
    BoundInapplicable,
    #[error("invalid curve numerics: {0}")]
    InvalidNumerics(String),
    #[error("malformed passport: {0}")]
    Malformed(String),
}

/// Numeric data of a plane curve: degree, genus, virtual cusp and node
/// counts, and whether all singularities are ordinary nodes and cusps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveNumerics {
    pub degree: u64,
    pub genus: u64,
    #[serde(rename = "virtualCusps")]
    pub virtual_cusps: u64,
    #[serde(rename = "virtualNodes")]
    pub virtual_nodes: u64,
    #[serde(rename = "ordinaryOnly")]
    pub ordinary_only: bool,
}

impl CurveNumerics {
    /// Genus consistency for an irreducible curve:
    /// g = (d-1)(d-2)/2 - n_v - c_v. Checked, not assumed.
    pub fn validate(&self) -> Result<(), PassportError> {
        let d = self.degree as i64;
        let arithmetic = (d - 1) * (d - 2) / 2;
        let expected = arithmetic - self.virtual_nodes as i64 - self.virtual_cusps as i64;
        if expected < 0 || self.genus as i64 != expected {
            return Err(PassportError::InvalidNumerics(format!(
                "genus {} does not match (d-1)(d-2)/2 - n_v - c_v = {}",
                self.genus, expected
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PassportFlags {
    #[serde(rename = "genericProjection", default)]
    pub generic_projection: bool,
    #[serde(rename = "dualizingCover", default)]
    pub dualizing_cover: bool,
}

/// Local monodromy data at one singularity type: how many points carry it
/// and the component degrees over such a point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalDatum {
    #[serde(rename = "type", with = "type_tag_string")]
    pub type_tag: TypeTag,
    pub count: u64,
    #[serde(rename = "componentDegrees", default)]
    pub component_degrees: Vec<u64>,
}

mod type_tag_string {
    use crate::germ::TypeTag;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(tag: &TypeTag, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&tag.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<TypeTag, D::Error> {
        let text = String::deserialize(d)?;
        TypeTag::parse(&text)
            .ok_or_else(|| serde::de::Error::custom(format!("unknown type tag `{text}`")))
    }
}

/// The passport of a cover: branch-curve numerics, monodromy cyclical
/// type, local data, cover degree and flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Passport {
    pub schema: String,
    pub curve: CurveNumerics,
    #[serde(rename = "cyclicalType")]
    pub cyclical_type: Vec<usize>,
    #[serde(rename = "coverDegree")]
    pub cover_degree: u64,
    #[serde(default)]
    pub flags: PassportFlags,
    #[serde(rename = "localData", default)]
    pub local_data: Vec<LocalDatum>,
}

impl Passport {
    pub fn validate(&self) -> Result<(), PassportError> {
        if self.schema != "passport/1" {
            return Err(PassportError::Malformed(format!(
                "schema: expected \"passport/1\", got \"{}\"",
                self.schema
            )));
        }
        if self.cover_degree < 1 {
            return Err(PassportError::Malformed("coverDegree must be >= 1".into()));
        }
        if self.cyclical_type.iter().any(|&l| l < 2) {
            return Err(PassportError::Malformed(
                "cyclicalType entries must be >= 2".into(),
            ));
        }
        self.curve.validate()?;
        for (i, d) in self.local_data.iter().enumerate() {
            let total: u64 = d.component_degrees.iter().sum();
            if total > self.cover_degree {
                return Err(PassportError::Malformed(format!(
                    "localData[{i}]: component degrees sum to {total} > cover degree {}",
                    self.cover_degree
                )));
            }
        }
        Ok(())
    }

    pub fn cyclical(&self) -> Option<CyclicalType> {
        CyclicalType::new(self.cyclical_type.clone())
    }

    fn local_types(&self) -> Vec<TypeTag> {
        self.local_data.iter().map(|d| d.type_tag).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VerdictStatus {
    UniqueByThm0,
    UniqueByThm2,
    UniqueByThm3,
    UniqueByThm4,
    UniqueByChisini12,
    UniqueByThm8,
    NoConstantPossible,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub status: VerdictStatus,
    /// Every rule that fired, in priority order; the status is the first.
    pub witness: Vec<String>,
    /// Conjectural notes (never a status).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub advisory: Option<String>,
}

/// The degree bound 4(3d + g - 1) / (2(3d + g - 1) - c), exactly.
pub fn thm2_bound(d: u64, g: u64, c: u64) -> Result<BigRat, PassportError> {
    let base: i64 = 3 * d as i64 + g as i64 - 1;
    let den: i64 = 2 * base - c as i64;
    if den <= 0 {
        return Err(PassportError::BoundInapplicable);
    }
    Ok(BigRat::new((4 * base).into(), den.into()))
}

/// Virtual Plücker transform of (degree, virtual nodes, virtual cusps):
/// dual degree m = n(n-1) - 2 n_v - 3 c_v, dual cusps
/// c* = 3n(n-2) - 6 n_v - 8 c_v, dual nodes from the genus.
pub fn pluecker_dual(n: u64, n_v: u64, c_v: u64) -> Result<(u64, u64, u64), PassportError> {
    if n < 2 {
        return Err(PassportError::InvalidNumerics(
            "virtual Plücker needs degree >= 2".into(),
        ));
    }
    let (n, n_v, c_v) = (n as i64, n_v as i64, c_v as i64);
    let genus = (n - 1) * (n - 2) / 2 - n_v - c_v;
    let m = n * (n - 1) - 2 * n_v - 3 * c_v;
    let c_dual = 3 * n * (n - 2) - 6 * n_v - 8 * c_v;
    let n_dual = if m >= 2 {
        (m - 1) * (m - 2) / 2 - genus - c_dual
    } else {
        -1
    };
    if genus < 0 || m < 0 || c_dual < 0 || n_dual < 0 {
        return Err(PassportError::InvalidNumerics(format!(
            "negative output: genus {genus}, m {m}, c* {c_dual}, n* {n_dual}"
        )));
    }
    Ok((m as u64, n_dual as u64, c_dual as u64))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Tch12Membership {
    KnownIn,
    Conjectural,
    Unknown,
}

/// Membership of a singularity type in the Chisini-12 set: known for
/// A0, E6, A_(3n+2) and the types of the m = 1 model family; conjectural
/// for the twisted models (m >= 2); unknown otherwise.
pub fn tch12_membership(tag: TypeTag) -> Tch12Membership {
    match tag {
        TypeTag::A(0) | TypeTag::E6 => Tch12Membership::KnownIn,
        TypeTag::A(k) if k >= 2 && k % 3 == 2 => Tch12Membership::KnownIn,
        TypeTag::A(_) => Tch12Membership::Unknown,
        TypeTag::Torus(p, q) => {
            let valid_tag = p >= 2 && q > p && gcd(p, q) == 1;
            if valid_tag {
                if q == p + 1 {
                    Tch12Membership::KnownIn // type of the model with m = 1
                } else if q % (p + 1) == 0 {
                    Tch12Membership::Conjectural // type of a twisted model
                } else {
                    Tch12Membership::Unknown
                }
            } else {
                // read (p, q) as the model label (n, m) itself
                let (n, m) = (p, q);
                if n >= 2 && m >= 1 {
                    if m == 1 {
                        Tch12Membership::KnownIn
                    } else {
                        Tch12Membership::Conjectural
                    }
                } else {
                    Tch12Membership::Unknown
                }
            }
        }
        TypeTag::Other => Tch12Membership::Unknown,
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Right-hand side 2*delta + c_v of the extra-property inequality.
pub fn extra_property_rhs(delta: u64, c_v: u64) -> u64 {
    2 * delta + c_v
}

/// The extra-property inequality with a user-supplied left-hand
/// intersection number (the left side is never computed here).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ExtraPropertyCheck {
    pub lhs: u64,
    pub delta: u64,
    #[serde(rename = "virtualCusps")]
    pub c_v: u64,
    pub rhs: u64,
    pub holds: bool,
}

pub fn extra_property_check(lhs: u64, delta: u64, c_v: u64) -> ExtraPropertyCheck {
    let rhs = extra_property_rhs(delta, c_v);
    ExtraPropertyCheck {
        lhs,
        delta,
        c_v,
        rhs,
        holds: lhs <= rhs,
    }
}

fn only_nodes_and_cusps(tags: &[TypeTag]) -> bool {
    tags.iter()
        .all(|t| matches!(t, TypeTag::A(0) | TypeTag::A(2)))
}

/// Applies every uniqueness rule to a pair of passports; rules are
/// evaluated in a fixed priority order and all satisfied rules are
/// reported in the witness.
pub fn verdict(p1: &Passport, p2: &Passport) -> Result<Verdict, PassportError> {
    p1.validate()?;
    p2.validate()?;
    if p1.curve != p2.curve || p1.cyclical_type != p2.cyclical_type {
        return Ok(Verdict {
            status: VerdictStatus::Inconclusive,
            witness: vec!["passports differ (curve numerics or cyclical type)".into()],
            advisory: None,
        });
    }
    let curve = &p1.curve;
    let cyc = &p1.cyclical_type;
    let max_deg = p1.cover_degree.max(p2.cover_degree);
    let mut tags = p1.local_types();
    tags.extend(p2.local_types());

    let mut fired: Vec<(VerdictStatus, String)> = Vec::new();

    // single nontrivial cycle, no singular local data
    if cyc.len() == 1 && p1.local_data.is_empty() && p2.local_data.is_empty() {
        fired.push((
            VerdictStatus::UniqueByThm0,
            format!(
                "single cycle ({}) with empty local data: constant 1",
                cyc[0]
            ),
        ));
    }

    // several 2-cycles over nodes and cusps: no constant can exist.
    // (Composing a generic projection with degree-m etale cyclic covers
    // of an abelian surface with endomorphism ring Z produces, for prime
    // m, (m^4 - 1)/(m - 1) pairwise inequivalent covers sharing one
    // branch curve, at arbitrarily large degree.)
    if cyc.len() >= 2 && cyc.iter().all(|&l| l == 2) && only_nodes_and_cusps(&tags) {
        fired.push((
            VerdictStatus::NoConstantPossible,
            format!(
                "cyclical type (2 x {}) with local types in {{A0, A2}}: no constant exists",
                cyc.len()
            ),
        ));
    }

    let generic = cyc == &[2] && only_nodes_and_cusps(&tags) && curve.ordinary_only;

    if generic && curve.degree.is_multiple_of(2) {
        let d = curve.degree / 2;
        if let Ok(bound) = thm2_bound(d, curve.genus, curve.virtual_cusps) {
            if BigRat::from_integer(max_deg.into()) > bound {
                fired.push((
                    VerdictStatus::UniqueByThm2,
                    format!(
                        "generic covers with max degree {max_deg} > bound {}",
                        crate::rat::rat_to_string(&bound)
                    ),
                ));
            }
        }
    }
    if generic && max_deg >= 12 {
        fired.push((
            VerdictStatus::UniqueByThm3,
            format!("generic covers with max degree {max_deg} >= 12"),
        ));
    }
    if generic {
        for p in [p1, p2] {
            if p.flags.generic_projection && p.cover_degree >= 5 {
                fired.push((
                    VerdictStatus::UniqueByThm4,
                    format!(
                        "generic projection of degree {} >= 5 against a generic cover",
                        p.cover_degree
                    ),
                ));
                break;
            }
        }
    }

    if cyc == &[2]
        && !tags.is_empty()
        && tags
            .iter()
            .all(|&t| tch12_membership(t) == Tch12Membership::KnownIn)
        && max_deg >= 12
    {
        fired.push((
            VerdictStatus::UniqueByChisini12,
            format!("all local types known in the Chisini-12 set and max degree {max_deg} >= 12"),
        ));
    }

    for p in [p1, p2] {
        if p.flags.dualizing_cover {
            let deg_ok_positive_genus = p.cover_degree >= 8 && curve.genus >= 1;
            let deg_ok_rational = p.cover_degree >= 12 && curve.genus == 0;
            if deg_ok_positive_genus || deg_ok_rational {
                fired.push((
                    VerdictStatus::UniqueByThm8,
                    format!(
                        "dualizing cover of degree {} with genus {}",
                        p.cover_degree, curve.genus
                    ),
                ));
                break;
            }
        }
    }

    let advisory = if generic && max_deg >= 5 {
        Some(format!(
            "Chisini Conjecture (constant 5) would apply at max degree {max_deg}; conjectural, never used for the status"
        ))
    } else {
        None
    };

    match fired.first() {
        Some((status, _)) => Ok(Verdict {
            status: *status,
            witness: fired.iter().map(|(_, w)| w.clone()).collect(),
            advisory,
        }),
        None => Ok(Verdict {
            status: VerdictStatus::Inconclusive,
            witness: vec!["no uniqueness rule applies".into()],
            advisory,
        }),
    }
}

/// True when the exact rational is a nonnegative integer (helper for
/// callers printing bounds).
pub fn is_nonneg_integer(r: &BigRat) -> bool {
    !r.is_negative() && r.denom() == &num::BigInt::from(1) && !r.numer().is_negative()
        || r.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat_frac, rat_i64};

    fn nine_cuspidal_passport(cover_degree: u64) -> Passport {
        Passport {
            schema: "passport/1".into(),
            curve: CurveNumerics {
                degree: 6,
                genus: 1,
                virtual_cusps: 9,
                virtual_nodes: 0,
                ordinary_only: true,
            },
            cyclical_type: vec![2],
            cover_degree,
            flags: PassportFlags::default(),
            local_data: vec![LocalDatum {
                type_tag: TypeTag::A(2),
                count: 9,
                component_degrees: vec![],
            }],
        }
    }

    #[test]
    fn bound_values() {
        assert_eq!(thm2_bound(3, 1, 9).unwrap(), rat_i64(4));
        assert_eq!(thm2_bound(3, 4, 6).unwrap(), rat_frac(8, 3));
        assert_eq!(thm2_bound(1, 0, 0).unwrap(), rat_i64(2));
        assert!(matches!(
            thm2_bound(1, 0, 10),
            Err(PassportError::BoundInapplicable)
        ));
    }

    #[test]
    fn pluecker_values() {
        assert_eq!(pluecker_dual(3, 0, 0).unwrap(), (6, 0, 9));
        assert_eq!(pluecker_dual(2, 0, 0).unwrap(), (2, 0, 0));
        assert_eq!(pluecker_dual(3, 1, 0).unwrap(), (4, 0, 3));
    }

    #[test]
    fn pluecker_involution_on_grid() {
        for n in 2..=8u64 {
            let arith = (n - 1) * (n - 2) / 2;
            for n_v in 0..=arith {
                for c_v in 0..=(arith - n_v) {
                    if let Ok((m, nd, cd)) = pluecker_dual(n, n_v, c_v) {
                        if let Ok(back) = pluecker_dual(m, nd, cd) {
                            assert_eq!(back, (n, n_v, c_v), "involution at ({n},{n_v},{c_v})");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn example_one_inconclusive_then_unique() {
        let a = nine_cuspidal_passport(3);
        let b = nine_cuspidal_passport(4);
        let v = verdict(&a, &b).unwrap();
        assert_eq!(v.status, VerdictStatus::Inconclusive);

        let a = nine_cuspidal_passport(5);
        let b = nine_cuspidal_passport(5);
        let v = verdict(&a, &b).unwrap();
        assert_eq!(v.status, VerdictStatus::UniqueByThm2);
        assert!(v.advisory.is_some());
    }

    #[test]
    fn thm0_single_cycle() {
        let mk = |deg| Passport {
            schema: "passport/1".into(),
            curve: CurveNumerics {
                degree: 4,
                genus: 3,
                virtual_cusps: 0,
                virtual_nodes: 0,
                ordinary_only: true,
            },
            cyclical_type: vec![3],
            cover_degree: deg,
            flags: PassportFlags::default(),
            local_data: vec![],
        };
        let v = verdict(&mk(3), &mk(3)).unwrap();
        assert_eq!(v.status, VerdictStatus::UniqueByThm0);
    }

    #[test]
    fn prop1_pattern() {
        let mk = || Passport {
            schema: "passport/1".into(),
            curve: CurveNumerics {
                degree: 6,
                genus: 1,
                virtual_cusps: 9,
                virtual_nodes: 0,
                ordinary_only: true,
            },
            cyclical_type: vec![2, 2],
            cover_degree: 6,
            flags: PassportFlags::default(),
            local_data: vec![LocalDatum {
                type_tag: TypeTag::A(2),
                count: 9,
                component_degrees: vec![],
            }],
        };
        let v = verdict(&mk(), &mk()).unwrap();
        assert_eq!(v.status, VerdictStatus::NoConstantPossible);
    }

    #[test]
    fn membership_table() {
        assert_eq!(tch12_membership(TypeTag::A(2)), Tch12Membership::KnownIn);
        assert_eq!(tch12_membership(TypeTag::A(3)), Tch12Membership::Unknown);
        assert_eq!(tch12_membership(TypeTag::A(5)), Tch12Membership::KnownIn);
        assert_eq!(tch12_membership(TypeTag::E6), Tch12Membership::KnownIn);
        assert_eq!(
            tch12_membership(TypeTag::Torus(4, 5)),
            Tch12Membership::KnownIn
        );
        // germ tag of the twisted model (n, m) = (4, 2)
        assert_eq!(
            tch12_membership(TypeTag::Torus(3, 8)),
            Tch12Membership::Conjectural
        );
        // the model label itself
        assert_eq!(
            tch12_membership(TypeTag::Torus(4, 2)),
            Tch12Membership::Conjectural
        );
        assert_eq!(
            tch12_membership(TypeTag::Torus(3, 5)),
            Tch12Membership::Unknown
        );
        assert_eq!(tch12_membership(TypeTag::Other), Tch12Membership::Unknown);
    }

    #[test]
    fn extra_property_values() {
        assert_eq!(extra_property_rhs(1, 1), 3);
        assert_eq!(extra_property_rhs(3, 2), 8);
        assert_eq!(extra_property_rhs(0, 0), 0);
        let chk = extra_property_check(7, 3, 2);
        assert!(chk.holds);
        let chk = extra_property_check(9, 3, 2);
        assert!(!chk.holds);
    }

    #[test]
    fn genus_consistency_enforced() {
        let mut p = nine_cuspidal_passport(3);
        p.curve.genus = 2;
        assert!(p.validate().is_err());
    }
}
