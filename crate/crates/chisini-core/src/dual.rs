//! Dual curves of rationally parametrized plane curves: the tangent-line
//! parametrization, implicit equations by elimination, a singular-point
//! scan with exact germ analysis at algebraic points, and assembly of the
//! dualizing-cover passport.

use crate::alg::uni::{self, UPoly};
use crate::alg::{Elem, LevelKind, Split, Tower};
use crate::germ::bi::{self, BiPoly};
use crate::germ::{self, GermError, GermInvariants, TypeTag};
use crate::passport::{
    pluecker_dual, verdict as passport_verdict, CurveNumerics, LocalDatum, Passport, PassportError,
    PassportFlags, Verdict, VerdictStatus,
};
use crate::poly::{self, MultiPoly};
use crate::rat::BigRat;
use num::Zero;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DualError {
    #[error("coordinates are all proportional: the image is a point, not a curve")]
    ImageIsPoint,
    #[error("dual degenerates to a point (the source is a line)")]
    DualDegenerates,
    #[error("implicitization failed: {0}")]
    Implicitization(String),
    #[error("inconsistent dual numerics: germ scan found (nodes {scan_nodes}, cusps {scan_cusps}), Plücker predicts (nodes {expected_nodes}, cusps {expected_cusps})")]
    InconsistentNumerics {
        scan_nodes: u64,
        scan_cusps: u64,
        expected_nodes: u64,
        expected_cusps: u64,
    },
    #[error("singular scan failed: {0}")]
    Scan(String),
    #[error("{0}")]
    Germ(#[from] GermError),
    #[error("{0}")]
    Passport(#[from] PassportError),
    #[error("{0}")]
    Algebra(String),
}

/// A rational projective plane curve given by a parametrization
/// (x(t) : y(t) : z(t)) with no common polynomial factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamCurve {
    coords: [MultiPoly; 3],
    degree: u32,
}

impl ParamCurve {
    pub fn new(x: MultiPoly, y: MultiPoly, z: MultiPoly) -> Result<Self, DualError> {
        for c in [&x, &y, &z] {
            for v in c.vars() {
                if v != "t" && c.degree_in(v) > 0 {
                    return Err(DualError::Algebra(format!(
                        "parametrizations are univariate in t; found `{v}`"
                    )));
                }
            }
        }
        if x.is_zero() && y.is_zero() && z.is_zero() {
            return Err(DualError::ImageIsPoint);
        }
        let mut g = poly::poly_gcd(&x, &y);
        g = poly::poly_gcd(&g, &z);
        let x = x.div_exact(&g).expect("gcd divides");
        let y = y.div_exact(&g).expect("gcd divides");
        let z = z.div_exact(&g).expect("gcd divides");
        let coords = [x, y, z];
        if cross(&coords).iter().all(|c| c.is_zero()) {
            return Err(DualError::ImageIsPoint);
        }
        let degree = coords.iter().map(|c| c.degree_in("t")).max().unwrap();
        Ok(ParamCurve { coords, degree })
    }

    pub fn coords(&self) -> &[MultiPoly; 3] {
        &self.coords
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn eval(&self, t0: &BigRat) -> [BigRat; 3] {
        let point = [("t", t0.clone())];
        [
            self.coords[0].eval(&point).unwrap(),
            self.coords[1].eval(&point).unwrap(),
            self.coords[2].eval(&point).unwrap(),
        ]
    }
}

fn cross(p: &[MultiPoly; 3]) -> [MultiPoly; 3] {
    let d: Vec<MultiPoly> = p.iter().map(|c| c.derivative("t")).collect();
    [
        p[1].mul(&d[2]).sub(&p[2].mul(&d[1])),
        p[2].mul(&d[0]).sub(&p[0].mul(&d[2])),
        p[0].mul(&d[1]).sub(&p[1].mul(&d[0])),
    ]
}

/// Parametrization of the dual curve: the tangent line at P(t) is
/// P(t) x P'(t), with common factors cleared.
pub fn dual_param(c: &ParamCurve) -> Result<ParamCurve, DualError> {
    let w = cross(&c.coords);
    if w.iter().all(|c| c.is_zero()) {
        return Err(DualError::DualDegenerates);
    }
    let [a, b, d] = w;
    match ParamCurve::new(a, b, d) {
        Ok(pc) => Ok(pc),
        Err(DualError::ImageIsPoint) => Err(DualError::DualDegenerates),
        Err(e) => Err(e),
    }
}

/// Irreducible defining polynomial of the image in (u, v, w), obtained by
/// eliminating t from pairs of incidence minors, with extraneous factors
/// removed. Chart pairs are tried in a fixed order.
pub fn implicitize(c: &ParamCurve) -> Result<MultiPoly, DualError> {
    let [x, y, z] = c.coords.clone();
    let u = MultiPoly::var("u");
    let v = MultiPoly::var("v");
    let w = MultiPoly::var("w");
    let pairs: [(MultiPoly, MultiPoly); 3] = [
        (u.mul(&y).sub(&v.mul(&x)), u.mul(&z).sub(&w.mul(&x))),
        (v.mul(&x).sub(&u.mul(&y)), v.mul(&z).sub(&w.mul(&y))),
        (w.mul(&x).sub(&u.mul(&z)), w.mul(&y).sub(&v.mul(&z))),
    ];
    let expected_degree = c.degree;
    for (a, b) in pairs {
        if a.degree_in("t") == 0 && b.degree_in("t") == 0 {
            continue;
        }
        let Ok(res) = poly::resultant(&a, &b, "t") else {
            continue;
        };
        if res.is_zero() {
            continue;
        }
        let mut f = res;
        // strip coordinate powers and content, reduce
        for var in ["u", "v", "w"] {
            let vp = MultiPoly::var(var);
            while let Some(q) = f.div_exact(&vp) {
                if q.is_zero() {
                    break;
                }
                f = q;
            }
        }
        let f = match poly::squarefree_part(&f) {
            Ok(sf) => sf.primitive_normalized(),
            Err(_) => continue,
        };
        if f.total_degree() != expected_degree {
            continue;
        }
        // definitive check: the equation vanishes on the parametrization
        let composed = f
            .substitute("u", &x)
            .substitute("v", &y)
            .substitute("w", &z);
        if composed.is_zero() {
            return Ok(f);
        }
    }
    Err(DualError::Implicitization(
        "no elimination pair produced an equation of the expected degree vanishing on the curve"
            .into(),
    ))
}

/// One conjugacy class of singular points found by the scan.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ScanRecord {
    /// Which affine chart the class lives in: "w=1", "u=1,w=0" or "v=1".
    pub chart: String,
    /// Rendered coordinates of a representative point over its field.
    pub location: Vec<String>,
    /// Minimal polynomials cutting out the coordinates (empty = rational).
    pub field: Vec<String>,
    /// Number of conjugate points in the class.
    pub point_count: u64,
    pub invariants: GermInvariants,
}

/// Exhaustive singular-point scan of a squarefree projective plane curve
/// F(u, v, w): the affine chart w = 1 first, then the line at infinity.
pub fn singular_scan(f: &MultiPoly) -> Result<Vec<ScanRecord>, DualError> {
    for var in f.vars() {
        if var != "u" && var != "v" && var != "w" && f.degree_in(var) > 0 {
            return Err(DualError::Scan(format!(
                "expected variables u, v, w; found `{var}`"
            )));
        }
    }
    let mut records = Vec::new();

    // affine chart w = 1
    let g = f.substitute("w", &MultiPoly::one());
    records.extend(affine_scan(&g, "w=1")?);

    // line at infinity: points (1 : v : 0), then (0 : 1 : 0)
    let at_infinity = f.substitute("w", &MultiPoly::zero());
    let b = at_infinity.substitute("u", &MultiPoly::one());
    if at_infinity.is_zero() {
        return Err(DualError::Scan("the line w = 0 is a component".into()));
    }
    let fu = f.derivative("u");
    let fv = f.derivative("v");
    let fw = f.derivative("w");
    if !b.is_constant() {
        // candidates: common roots of all three partials on the line
        let restrict = |p: &MultiPoly| {
            p.substitute("w", &MultiPoly::zero())
                .substitute("u", &MultiPoly::one())
        };
        let mut m = poly::squarefree_part(&b).map_err(|e| DualError::Algebra(e.to_string()))?;
        for partial in [&fu, &fv, &fw] {
            let r = restrict(partial);
            if r.is_zero() {
                continue;
            }
            m = poly::poly_gcd(&m, &r);
            if m.is_constant() {
                break;
            }
        }
        if !m.is_constant() {
            // germ in the chart u = 1 with coordinates (v, w) at (v0, 0);
            // w is pinned to 0 so affine points over the same v0 stay in
            // the w = 1 chart and are never double-counted
            let chart = f.substitute("u", &MultiPoly::one());
            records.extend(scan_point_classes(
                &chart,
                "v",
                "w",
                &m,
                Some(BigRat::zero()),
                "u=1,w=0",
            )?);
        }
    }
    // the point (0 : 1 : 0)
    let corner = [
        ("u", BigRat::zero()),
        ("v", BigRat::from_integer(1.into())),
        ("w", BigRat::zero()),
    ];
    let vanish = |p: &MultiPoly| p.eval(&corner).map(|x| x.is_zero()).unwrap_or(false);
    if vanish(f) && vanish(&fu) && vanish(&fv) && vanish(&fw) {
        let chart = f.substitute("v", &MultiPoly::one());
        let germ = bi::bi_from_multipoly(&chart, "u", "w");
        let outcomes = germ::analyze_over_tower(&Tower::new(), &germ)?;
        for d in outcomes {
            records.push(ScanRecord {
                chart: "v=1".into(),
                location: vec!["0".into(), "0".into()],
                field: Vec::new(),
                point_count: 1,
                invariants: GermInvariants {
                    multiplicity: d.multiplicity,
                    branch_count: d.branch_count,
                    milnor: d.milnor,
                    delta: d.delta,
                    virtual_cusps: d.virtual_cusps,
                    virtual_nodes: d.virtual_nodes,
                    type_tag: d.type_tag,
                },
            });
        }
    }
    Ok(records)
}

/// Singular points of an affine curve g(u, v) = 0.
fn affine_scan(g: &MultiPoly, chart: &str) -> Result<Vec<ScanRecord>, DualError> {
    let gu = g.derivative("u");
    let gv = g.derivative("v");
    if gu.is_zero() && gv.is_zero() {
        return Err(DualError::Scan(
            "degenerate chart: both partials vanish".into(),
        ));
    }
    // candidate u-coordinates by elimination; the ideal property of the
    // resultant makes each candidate set a superset of the truth
    let mut candid: Option<MultiPoly> = None;
    for (a, b) in [(&gu, &gv), (g, &gu), (g, &gv)] {
        if a.degree_in("v") == 0 && b.degree_in("v") == 0 {
            continue;
        }
        let Ok(r) = poly::resultant(a, b, "v") else {
            continue;
        };
        if r.is_zero() {
            continue;
        }
        let sf = poly::squarefree_part(&r).map_err(|e| DualError::Algebra(e.to_string()))?;
        candid = Some(match candid {
            None => sf,
            Some(prev) => poly::poly_gcd(&prev, &sf),
        });
    }
    let Some(h) = candid else {
        // every elimination degenerated: no v to eliminate means the curve
        // is a union of vertical lines, excluded by squarefreeness checks
        return Err(DualError::Scan("candidate elimination degenerated".into()));
    };
    if h.is_constant() {
        return Ok(Vec::new());
    }
    if h.degree_in("u") == 0 {
        // candidates do not involve u at all: singular locus would be
        // positive-dimensional
        return Err(DualError::Scan("candidate locus is not finite".into()));
    }
    scan_point_classes(g, "u", "v", &h, None, chart)
}

/// Given a squarefree candidate polynomial `h` for the first coordinate,
/// adjoins its generic root, finds the singular second coordinates over
/// it, and analyzes the translated germs. Splits fork the class.
fn scan_point_classes(
    g: &MultiPoly,
    xvar: &str,
    yvar: &str,
    h: &MultiPoly,
    fixed_y: Option<BigRat>,
    chart: &str,
) -> Result<Vec<ScanRecord>, DualError> {
    let hu = rational_upoly(h, xvar)?;
    let mut seed = Tower::new();
    let monic = monic_rational(&hu);
    seed.adjoin("x0", monic, LevelKind::Point);

    let mut stack = vec![seed];
    let mut records = Vec::new();
    while let Some(tower) = stack.pop() {
        match class_step(&tower, g, xvar, yvar, fixed_y.clone(), chart) {
            Ok(mut rs) => records.append(&mut rs),
            Err(StepFailure::Split(split)) => {
                let (a, b) = tower.split(&split);
                stack.push(a);
                stack.push(b);
            }
            Err(StepFailure::Germ(e)) => return Err(e.into()),
        }
    }
    Ok(records)
}

enum StepFailure {
    Split(Split),
    Germ(GermError),
}

impl From<Split> for StepFailure {
    fn from(s: Split) -> Self {
        StepFailure::Split(s)
    }
}

fn class_step(
    tower: &Tower,
    g: &MultiPoly,
    xvar: &str,
    yvar: &str,
    fixed_y: Option<BigRat>,
    chart: &str,
) -> Result<Vec<ScanRecord>, StepFailure> {
    let x0 = Elem::generator(1);
    // restrict g and its partials to x = x0: univariate polynomials in y
    let gb = bi::bi_from_multipoly(g, xvar, yvar);
    let at_x0 = |p: &BiPoly| -> UPoly {
        uni::trim(p.iter().map(|row| uni::eval(tower, row, &x0)).collect())
    };
    let base_depth = tower.depth();

    let mut t2 = tower.clone();
    let y0 = match fixed_y {
        Some(ref val) => Elem::from_rat(val.clone()),
        None => {
            let g0 = at_x0(&gb);
            let gu0 = at_x0(&bi::bi_dx(tower, &gb));
            let gv0 = at_x0(&bi::bi_dy(tower, &gb));
            let mut k = g0;
            for other in [gu0, gv0] {
                if uni::is_zero(&other) {
                    continue;
                }
                k = uni::gcd(tower, &k, &other)?;
                if k.len() <= 1 {
                    break;
                }
            }
            if k.len() <= 1 {
                // the generic root of the candidate modulus carries no
                // singular point
                return Ok(Vec::new());
            }
            // keep one squarefree representative of the singular fibre
            let dec = uni::squarefree_decomposition(tower, &k)?;
            let mut product: UPoly = vec![Elem::one()];
            for (factor, _) in &dec {
                product = uni::mul(tower, &product, factor);
            }
            if product.len() <= 1 {
                return Ok(Vec::new());
            }
            t2.adjoin("y0", product, LevelKind::Point)
        }
    };

    // germ recentered at (x0, y0)
    let lifted = bi::bi_reduce(&t2, &gb);
    let germ = bi::bi_translate(&t2, &lifted, &x0, &y0);
    if bi::bi_is_zero(&germ) {
        return Err(StepFailure::Germ(GermError::Internal(
            "curve vanishes identically after translation".into(),
        )));
    }
    let outcomes = match germ::analyze_over_tower(&t2, &germ) {
        Ok(o) => o,
        Err(e) => return Err(StepFailure::Germ(e)),
    };
    let mut records = Vec::new();
    for d in outcomes {
        if d.multiplicity < 2 {
            // smooth sheet over a spurious candidate root
            continue;
        }
        // render a representative location; fork-specific towers from the
        // analysis share the seed levels, so the seed rendering is stable
        let location = vec![t2.render(&x0), t2.render(&y0)];
        let field: Vec<String> = (0..t2.depth())
            .filter(|&l| t2.levels[l].kind == LevelKind::Point && t2.levels[l].degree() > 1)
            .map(|l| t2.render_modulus(l + 1))
            .collect();
        let _ = base_depth;
        records.push(ScanRecord {
            chart: chart.to_string(),
            location: location.clone(),
            field,
            point_count: d.point_count,
            invariants: GermInvariants {
                multiplicity: d.multiplicity,
                branch_count: d.branch_count,
                milnor: d.milnor,
                delta: d.delta,
                virtual_cusps: d.virtual_cusps,
                virtual_nodes: d.virtual_nodes,
                type_tag: d.type_tag,
            },
        });
    }
    Ok(records)
}

fn rational_upoly(p: &MultiPoly, var: &str) -> Result<Vec<BigRat>, DualError> {
    let coeffs = p.coeffs_in(var);
    coeffs
        .iter()
        .map(|c| {
            c.constant_value().ok_or_else(|| {
                DualError::Scan(format!("expected a univariate polynomial in {var}"))
            })
        })
        .collect()
}

fn monic_rational(coeffs: &[BigRat]) -> Vec<Elem> {
    let lead = coeffs.last().expect("nonzero").clone();
    coeffs
        .iter()
        .map(|c| Elem::from_rat(c.clone() / lead.clone()))
        .collect()
}

/// Aggregated singular numerics of a scanned curve.
#[derive(Debug, Clone, Serialize)]
pub struct ScanSummary {
    pub nodes: u64,
    pub cusps: u64,
    pub other: u64,
    #[serde(rename = "virtualCusps")]
    pub virtual_cusps: u64,
    #[serde(rename = "virtualNodes")]
    pub virtual_nodes: u64,
    pub delta: u64,
    #[serde(rename = "ordinaryOnly")]
    pub ordinary_only: bool,
}

pub fn summarize_scan(records: &[ScanRecord]) -> ScanSummary {
    let mut s = ScanSummary {
        nodes: 0,
        cusps: 0,
        other: 0,
        virtual_cusps: 0,
        virtual_nodes: 0,
        delta: 0,
        ordinary_only: true,
    };
    for r in records {
        match r.invariants.type_tag {
            TypeTag::A(1) => s.nodes += r.point_count,
            TypeTag::A(2) => s.cusps += r.point_count,
            _ => {
                s.other += r.point_count;
                s.ordinary_only = false;
            }
        }
        s.virtual_cusps += r.point_count * r.invariants.virtual_cusps;
        s.virtual_nodes += r.point_count * r.invariants.virtual_nodes;
        s.delta += r.point_count * r.invariants.delta;
    }
    s
}

#[derive(Debug, Clone, Serialize)]
pub struct DualizingPassport {
    pub passport: Passport,
    #[serde(rename = "dualCurveNumerics")]
    pub dual_curve_numerics: CurveNumerics,
    #[serde(rename = "sourceNumerics")]
    pub source_numerics: CurveNumerics,
    #[serde(rename = "dualImplicit")]
    pub dual_implicit: String,
    pub scan: Vec<ScanRecord>,
}

/// Builds the passport of the dualizing cover of a rationally
/// parametrized curve. The numerics of the dual curve are computed two
/// independent ways — germ scan of the implicitized dual, and the virtual
/// Plücker transform of the source numerics — and must agree.
pub fn dualizing_passport(c: &ParamCurve) -> Result<DualizingPassport, DualError> {
    let f_src = implicitize(c)?;
    let n = f_src.total_degree() as u64;
    if n < 2 {
        return Err(DualError::Algebra("image degree must be at least 2".into()));
    }
    let src_records = singular_scan(&f_src)?;
    let src = summarize_scan(&src_records);
    // a rational curve of degree n has delta-invariant (n-1)(n-2)/2 in
    // total; if the scan found less, something was missed
    let expected_delta = (n - 1) * (n - 2) / 2;
    if src.delta != expected_delta {
        return Err(DualError::Scan(format!(
            "source scan collected delta {} of {expected_delta}",
            src.delta
        )));
    }
    let source_numerics = CurveNumerics {
        degree: n,
        genus: 0,
        virtual_cusps: src.virtual_cusps,
        virtual_nodes: src.virtual_nodes,
        ordinary_only: src.ordinary_only,
    };
    source_numerics.validate()?;

    // route (b): Plücker transform of the source numerics
    let (m, n_dual_expected, c_dual_expected) =
        pluecker_dual(n, src.virtual_nodes, src.virtual_cusps)?;

    // route (a): implicitize the dual and scan its germs
    let dual = dual_param(c)?;
    let f_dual = implicitize(&dual)?;
    if f_dual.total_degree() as u64 != m {
        return Err(DualError::Implicitization(format!(
            "dual curve has degree {}, Plücker predicts {m}",
            f_dual.total_degree()
        )));
    }
    let dual_records = singular_scan(&f_dual)?;
    let dual_sum = summarize_scan(&dual_records);
    if dual_sum.virtual_nodes != n_dual_expected || dual_sum.virtual_cusps != c_dual_expected {
        return Err(DualError::InconsistentNumerics {
            scan_nodes: dual_sum.virtual_nodes,
            scan_cusps: dual_sum.virtual_cusps,
            expected_nodes: n_dual_expected,
            expected_cusps: c_dual_expected,
        });
    }
    let dual_curve_numerics = CurveNumerics {
        degree: m,
        genus: 0,
        virtual_cusps: c_dual_expected,
        virtual_nodes: n_dual_expected,
        ordinary_only: dual_sum.ordinary_only,
    };
    dual_curve_numerics.validate()?;

    // local data carries singularity types only; the finer per-point
    // monodromy (component degrees at bitangent/flex lines) is not
    // tabulated for dualizing covers and stays unpopulated
    let mut local_data: Vec<LocalDatum> = Vec::new();
    for r in &dual_records {
        match local_data
            .iter_mut()
            .find(|d| d.type_tag == r.invariants.type_tag)
        {
            Some(d) => d.count += r.point_count,
            None => local_data.push(LocalDatum {
                type_tag: r.invariants.type_tag,
                count: r.point_count,
                component_degrees: Vec::new(),
            }),
        }
    }
    local_data.sort_by_key(|d| format!("{}", d.type_tag));

    let passport = Passport {
        schema: "passport/1".into(),
        curve: dual_curve_numerics.clone(),
        cyclical_type: vec![2],
        cover_degree: n,
        flags: PassportFlags {
            generic_projection: false,
            dualizing_cover: true,
        },
        local_data,
    };
    passport.validate()?;
    Ok(DualizingPassport {
        passport,
        dual_curve_numerics,
        source_numerics,
        dual_implicit: f_dual.to_string(),
        scan: dual_records,
    })
}

/// The degree/genus criterion for dualizing covers.
pub fn thm8_verdict(dp: &DualizingPassport) -> Verdict {
    let p = &dp.passport;
    let n = p.cover_degree;
    let g = p.curve.genus;
    if (n >= 8 && g >= 1) || (n >= 12 && g == 0) {
        Verdict {
            status: VerdictStatus::UniqueByThm8,
            witness: vec![format!("dualizing cover of degree {n} with genus {g}")],
            advisory: None,
        }
    } else {
        Verdict {
            status: VerdictStatus::Inconclusive,
            witness: vec![format!(
                "degree {n} with genus {g} meets neither (>= 8, g >= 1) nor (>= 12, g = 0)"
            )],
            advisory: None,
        }
    }
}

/// Convenience: the full pairwise verdict machinery applied to the
/// dualizing passport against another passport.
pub fn verdict_against(dp: &DualizingPassport, other: &Passport) -> Result<Verdict, PassportError> {
    passport_verdict(&dp.passport, other)
}
