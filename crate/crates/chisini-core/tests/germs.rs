//! Germ invariants against independent oracles: a brute-force
//! local-algebra dimension computed with plain rational row reduction,
//! and the classical valuation identity for the local discriminant.

use chisini_core::germ::{CurveGerm, TypeTag};
use chisini_core::poly::{resultant, MultiPoly};
use chisini_core::rat::{rat_i64, BigRat};
use num::Zero;

fn p(s: &str) -> MultiPoly {
    s.parse().unwrap()
}

fn germ(s: &str) -> CurveGerm {
    CurveGerm::new(p(s)).unwrap()
}

/// Brute-force Milnor number: dim Q[z,v]/(f_z, f_v, m^D) by dense
/// rational row reduction, growing D from `hint` until two consecutive
/// dimensions agree. Stabilization certifies the answer on its own
/// (Nakayama), so the hint only affects speed, never the value; it is
/// capped by the Bezout bound.
fn oracle_milnor_from(f: &MultiPoly, hint: u64) -> Option<u64> {
    let fz = f.derivative("z");
    let fv = f.derivative("v");
    if fz.is_zero() && fv.is_zero() {
        return None;
    }
    let at_origin = |g: &MultiPoly| {
        g.eval(&[("z", BigRat::zero()), ("v", BigRat::zero())])
            .map(|x| x.is_zero())
            .unwrap_or(true)
    };
    if !at_origin(&fz) || !at_origin(&fv) {
        return Some(0);
    }
    let bez = (fz.total_degree().max(1) * fv.total_degree().max(1)) as usize;
    let start = (hint as usize + 2).min(bez + 2);
    let dim_at = |d: usize| -> usize {
        let cols = d * (d + 1) / 2;
        let col = |a: usize, b: usize| -> usize {
            let t = a + b;
            t * (t + 1) / 2 + a
        };
        let mut rows: Vec<Vec<BigRat>> = Vec::new();
        for g in [&fz, &fv] {
            for a in 0..d {
                for b in 0..(d - a) {
                    let m = MultiPoly::var("z")
                        .pow(a as u32)
                        .mul(&MultiPoly::var("v").pow(b as u32));
                    let prod = m.mul(g);
                    let mut row = vec![BigRat::zero(); cols];
                    let mut any = false;
                    for (mono, c) in prod.terms_desc() {
                        let vars = prod.vars();
                        let mut za = 0usize;
                        let mut vb = 0usize;
                        for (i, e) in mono.0.iter().enumerate() {
                            if vars[i] == "z" {
                                za = *e as usize;
                            } else if vars[i] == "v" {
                                vb = *e as usize;
                            }
                        }
                        if za + vb < d {
                            row[col(za, vb)] = c.clone();
                            any = true;
                        }
                    }
                    if any {
                        rows.push(row);
                    }
                }
            }
        }
        // plain fraction row reduction
        let mut rank = 0usize;
        for c in 0..cols {
            let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
                continue;
            };
            rows.swap(rank, pivot);
            let inv = BigRat::from_integer(1.into()) / rows[rank][c].clone();
            for r in rank + 1..rows.len() {
                if rows[r][c].is_zero() {
                    continue;
                }
                let factor = rows[r][c].clone() * inv.clone();
                for k in c..cols {
                    let s = factor.clone() * rows[rank][k].clone();
                    rows[r][k] = rows[r][k].clone() - s;
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        cols - rank
    };
    let mut prev = dim_at(start);
    for d in start + 1..=bez + 3 {
        let next = dim_at(d);
        if next == prev {
            return Some(prev as u64);
        }
        prev = next;
    }
    None // non-isolated
}

fn oracle_milnor(f: &MultiPoly) -> Option<u64> {
    oracle_milnor_from(f, 0)
}

/// Classical identity: in coordinates where the projection is generic,
/// ord_{z=0} Res_v(f, f_v) = mu + multiplicity - 1 = 2 delta + c_v.
fn oracle_local_discriminant_order(f: &MultiPoly) -> Option<u64> {
    for s in 0..12i64 {
        let sheared = f.substitute("z", &p("z").add(&p("v").scale(&rat_i64(s))));
        let fv = sheared.derivative("v");
        if fv.is_zero() {
            continue;
        }
        // leading v-coefficients constant in z at the origin
        let lc_f = sheared.leading_coeff_in("v");
        let lc_fv = fv.leading_coeff_in("v");
        let const_at_zero = |c: &MultiPoly| {
            c.eval(&[("z", BigRat::zero()), ("v", BigRat::zero())])
                .map(|x| !x.is_zero())
                .unwrap_or(false)
        };
        if !const_at_zero(&lc_f) || !const_at_zero(&lc_fv) {
            continue;
        }
        // the only common root on z = 0 must be v = 0
        let f0 = sheared.substitute("z", &MultiPoly::zero());
        let fv0 = fv.substitute("z", &MultiPoly::zero());
        let g = chisini_core::poly::poly_gcd(&f0, &fv0);
        let pure_v = g.coeffs_in("v").iter().rev().skip(1).all(|c| c.is_zero());
        if !pure_v {
            continue;
        }
        let r = resultant(&sheared, &fv, "v").unwrap();
        if r.is_zero() {
            continue;
        }
        let ord = r.coeffs_in("z").iter().position(|c| !c.is_zero()).unwrap();
        return Some(ord as u64);
    }
    None
}

#[test]
fn branch_examples() {
    let node = germ("v^2 - z^2");
    let branches = node.branches().unwrap();
    assert_eq!(
        branches.iter().map(|b| b.conjugacy_class_size).sum::<u64>(),
        2
    );
    assert!(branches.iter().all(|b| b.multiplicity == 1));

    let cusp = germ("v^2 - 4*z^3");
    let branches = cusp.branches().unwrap();
    assert_eq!(branches.len(), 1);
    assert_eq!(branches[0].ramification_index, 2);
    assert_eq!(branches[0].exponents, vec![(3, 2)]);

    let e6 = germ("v^3 + 27*z^4");
    let branches = e6.branches().unwrap();
    assert_eq!(branches.len(), 1);
    assert_eq!(branches[0].ramification_index, 3);
    assert_eq!(branches[0].exponents, vec![(4, 3)]);
}

#[test]
fn milnor_examples_against_oracle() {
    for (eq, expected) in [("v^2 - z^2", 1u64), ("v^2 - 4*z^3", 2), ("v^3 + 27*z^4", 6)] {
        let g = germ(eq);
        assert_eq!(g.milnor_number().unwrap(), expected, "{eq}");
        assert_eq!(
            oracle_milnor(g.equation()),
            Some(expected),
            "oracle for {eq}"
        );
    }
    // quasi-homogeneous formula (p-1)(q-1) for v^q = z^p
    assert_eq!(
        germ("v^3 + 27*z^4").milnor_number().unwrap(),
        (3 - 1) * (4 - 1)
    );
}

#[test]
fn ak_table_against_oracle() {
    for k in 0u64..=8 {
        let eq = format!("v^2 - z^{}", k + 1);
        let g = germ(&eq);
        let inv = g.invariants().unwrap();
        assert_eq!(inv.milnor, k, "mu of A{k}");
        assert_eq!(oracle_milnor(g.equation()), Some(k), "oracle mu of A{k}");
        assert_eq!(inv.multiplicity, if k == 0 { 1 } else { 2 }, "mult of A{k}");
        assert_eq!(
            inv.branch_count,
            if k % 2 == 0 { 1 } else { 2 },
            "r of A{k}"
        );
        assert_eq!(inv.delta, k.div_ceil(2), "delta of A{k}");
        let expected_cv = if k >= 2 && k % 2 == 0 { 1 } else { 0 };
        assert_eq!(inv.virtual_cusps, expected_cv, "c_v of A{k}");
        assert_eq!(inv.virtual_nodes, inv.delta - expected_cv, "n_v of A{k}");
        assert_eq!(inv.type_tag, TypeTag::A(k), "tag of A{k}");
    }
}

#[test]
fn delta_and_virtual_count_examples() {
    assert_eq!(germ("v^2 - z^2").delta_invariant().unwrap(), 1);
    assert_eq!(germ("v^2 - 4*z^3").delta_invariant().unwrap(), 1);
    assert_eq!(germ("v^3 + 27*z^4").delta_invariant().unwrap(), 3);

    assert_eq!(germ("v^2 - z^2").virtual_cusps().unwrap(), 0);
    assert_eq!(germ("v^2 - 4*z^3").virtual_cusps().unwrap(), 1);
    assert_eq!(germ("v^3 + 27*z^4").virtual_cusps().unwrap(), 2);

    assert_eq!(germ("v^2 - z^2").virtual_nodes().unwrap(), 1);
    assert_eq!(germ("v^2 - z^4").virtual_nodes().unwrap(), 2);
    assert_eq!(germ("v^3 + 27*z^4").virtual_nodes().unwrap(), 1);
}

#[test]
fn recognition_examples() {
    assert_eq!(germ("v + z^2").recognize_type().unwrap(), TypeTag::A(0));
    assert_eq!(germ("v^2 - 4*z^3").recognize_type().unwrap(), TypeTag::A(2));
    assert_eq!(germ("v^3 + 27*z^4").recognize_type().unwrap(), TypeTag::E6);
    assert_eq!(
        germ("v^4 - 256*z^5").recognize_type().unwrap(),
        TypeTag::Torus(4, 5)
    );
    assert_eq!(
        germ("v*(v - z)*(v + z)").recognize_type().unwrap(),
        TypeTag::Other
    );
}

#[test]
fn recognition_invariant_under_rescaling() {
    let cases = ["v^2 - 4*z^3", "v^3 + 27*z^4", "v^4 - 256*z^5", "v^2 - z^4"];
    let scales = [(2i64, 3i64), (-1, 1), (5, -2), (1, 7)];
    for eq in cases {
        let base = germ(eq).recognize_type().unwrap();
        for (a, b) in scales {
            let scaled = p(eq)
                .substitute("z", &p("z").scale(&rat_i64(a)))
                .substitute("v", &p("v").scale(&rat_i64(b)));
            let tag = CurveGerm::new(scaled).unwrap().recognize_type().unwrap();
            assert_eq!(tag, base, "{eq} under z -> {a} z, v -> {b} v");
        }
    }
}

#[test]
fn identity_two_delta_and_discriminant_valuation() {
    let corpus = [
        "v^2 - z^2",
        "v^2 - 4*z^3",
        "v^2 - z^4",
        "v^2 - z^5",
        "v^3 + 27*z^4",
        "v^4 - 256*z^5",
        "v*(v - z)*(v + z)",
        "(v^2 - z^3)*(v^2 - z^3 - z^4)",
        "(v - z^2)*(v - z^3)",
        "z*v^2 - z^4",
        "z^7 + 4*v*z^5 - z^6 + 2*v^2*z^3 - v^4",
        "(v^2 - z^3)^2 - z^7",
        "v^2 - 2*z^2",
        "(v^2 - 2*z^2)*(v - z^2)",
    ];
    for eq in corpus {
        let g = germ(eq);
        let inv = g.invariants().unwrap();
        // 2 delta = mu + r - 1
        assert_eq!(2 * inv.delta, inv.milnor + inv.branch_count - 1, "{eq}");
        // c_v + n_v = delta
        assert_eq!(inv.virtual_cusps + inv.virtual_nodes, inv.delta, "{eq}");
        // branch multiplicities sum to the germ multiplicity
        let total: u64 = g
            .branches()
            .unwrap()
            .iter()
            .map(|b| b.conjugacy_class_size * b.multiplicity)
            .sum();
        assert_eq!(total, inv.multiplicity, "{eq}");
        // classical identity against an untouched elimination route:
        // ord disc = mu + mult - 1 = 2 delta + c_v
        if let Some(ord) = oracle_local_discriminant_order(g.equation()) {
            assert_eq!(ord, inv.milnor + inv.multiplicity - 1, "{eq}");
            assert_eq!(ord, 2 * inv.delta + inv.virtual_cusps, "{eq}");
        }
    }
}

#[test]
fn two_characteristic_exponents() {
    // z = t^4, v = t^6 + t^7 (value semigroup <4, 6, 13>): one branch,
    // characteristic exponents 3/2 and 7/4. Expected values derived by
    // hand: delta = #gaps of the semigroup = 8, mu = 2*delta = 16,
    // c_v = multiplicity - 1 = 3. The defining equation is the
    // t-resultant of (t^4 - z, t^6 + t^7 - v).
    let g = germ("z^7 + 4*v*z^5 - z^6 + 2*v^2*z^3 - v^4");
    let inv = g.invariants().unwrap();
    assert_eq!(inv.multiplicity, 4);
    assert_eq!(inv.branch_count, 1);
    assert_eq!(inv.milnor, 16);
    assert_eq!(oracle_milnor_from(g.equation(), 16), Some(16));
    assert_eq!(inv.delta, 8);
    assert_eq!(inv.virtual_cusps, 3);
    assert_eq!(inv.virtual_nodes, 5);
    let b = &g.branches().unwrap()[0];
    assert_eq!(b.ramification_index, 4);
    assert_eq!(b.exponents, vec![(3, 2), (7, 4)]);
    assert_eq!(b.conjugacy_class_size, 1);
}

#[test]
fn nearby_germ_splits_into_two_places() {
    // (v^2 - z^3)^2 - z^7 looks similar but is two branches, each the
    // place of v^2 = z^3 (1 +- z^(1/2)) with e = 2 and exponent 3/2
    let g = germ("(v^2 - z^3)^2 - z^7");
    let inv = g.invariants().unwrap();
    assert_eq!(inv.branch_count, 2);
    assert_eq!(inv.milnor, 17);
    assert_eq!(oracle_milnor_from(g.equation(), 17), Some(17));
    assert_eq!(inv.delta, 9);
    assert_eq!(inv.virtual_cusps, 2);
    for b in g.branches().unwrap() {
        assert_eq!(b.ramification_index, 2);
        assert_eq!(b.multiplicity, 2);
        assert_eq!(b.exponents, vec![(3, 2)]);
    }
}

#[test]
fn axis_component_invariants() {
    // z (v^2 - z^3): a smooth vertical branch plus a cusp branch
    let g = germ("z*v^2 - z^4");
    let inv = g.invariants().unwrap();
    assert_eq!(inv.multiplicity, 3);
    assert_eq!(inv.branch_count, 2);
    assert_eq!(inv.milnor, 5);
    assert_eq!(inv.delta, 3);
    assert_eq!(inv.virtual_cusps, 1);
    assert_eq!(inv.virtual_nodes, 2);
    let branches = g.branches().unwrap();
    assert!(branches.iter().any(|b| b.vertical));
}

#[test]
fn branch_multiset_invariant_under_axis_swap() {
    // both axes non-tangent for the node and the ordinary triple point
    for eq in ["v^2 - z^2", "v*(v - z)*(v + z)"] {
        let g1 = germ(eq);
        let swapped = p(&eqxchange(eq));
        let g2 = CurveGerm::new(swapped).unwrap();
        let mut m1: Vec<u64> = g1
            .branches()
            .unwrap()
            .iter()
            .flat_map(|b| std::iter::repeat_n(b.multiplicity, b.conjugacy_class_size as usize))
            .collect();
        let mut m2: Vec<u64> = g2
            .branches()
            .unwrap()
            .iter()
            .flat_map(|b| std::iter::repeat_n(b.multiplicity, b.conjugacy_class_size as usize))
            .collect();
        m1.sort_unstable();
        m2.sort_unstable();
        assert_eq!(m1, m2, "{eq}");
    }
}

/// Swaps z and v in the source text (test helper, valid on the corpus).
fn eqxchange(eq: &str) -> String {
    eq.chars()
        .map(|c| match c {
            'z' => 'v',
            'v' => 'z',
            other => other,
        })
        .collect()
}

#[test]
fn error_paths() {
    assert!(CurveGerm::new(p("(v - z)^2")).is_err(), "reduce first");
    assert!(CurveGerm::new(p("v + 1")).is_err(), "must vanish at origin");
    // non-isolated: v^2 has a repeated factor, rejected at construction
    assert!(CurveGerm::new(p("v^2")).is_err());
}
