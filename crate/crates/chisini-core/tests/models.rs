//! The local model family: branch equations against the closed form,
//! the twist identity, type identifications, non-degeneracy.

use chisini_core::germ::TypeTag;
use chisini_core::model::{branch_curve, model_report, tch12_model_family};
use chisini_core::poly::MultiPoly;
use chisini_core::rat::rat_i64;

/// v^(n-1) - (1-n)^(n-1) z^(n m), normalized.
fn closed_form(n: u64, m: u64) -> MultiPoly {
    let z = MultiPoly::var("z");
    let v = MultiPoly::var("v");
    let mut c = rat_i64(1);
    for _ in 0..n - 1 {
        c *= rat_i64(1 - n as i64);
    }
    v.pow(n as u32 - 1)
        .sub(&z.pow((n * m) as u32).scale(&c))
        .primitive_normalized()
}

#[test]
fn branch_equation_matches_closed_form_up_to_unit() {
    for n in 2..=8u64 {
        let germ = branch_curve(n, 1).unwrap();
        assert_eq!(
            germ.equation().primitive_normalized(),
            closed_form(n, 1),
            "n = {n}"
        );
    }
}

#[test]
fn twist_substitutes_z_power() {
    for n in 2..=6u64 {
        for m in 1..=3u64 {
            let twisted = branch_curve(n, m).unwrap();
            let base = branch_curve(n, 1).unwrap();
            let substituted = base
                .equation()
                .substitute("z", &MultiPoly::var("z").pow(m as u32))
                .primitive_normalized();
            assert_eq!(
                twisted.equation().primitive_normalized(),
                substituted,
                "n = {n}, m = {m}"
            );
            assert_eq!(twisted.equation().primitive_normalized(), closed_form(n, m));
        }
    }
}

#[test]
fn type_identifications() {
    let r = model_report(2, 1).unwrap();
    assert_eq!(r.invariants.type_tag, TypeTag::A(0));
    assert!(r.nondegenerate);

    let r = model_report(3, 1).unwrap();
    assert_eq!(r.invariants.type_tag, TypeTag::A(2));

    let r = model_report(4, 1).unwrap();
    assert_eq!(r.invariants.type_tag, TypeTag::E6);
    assert_eq!(r.invariants.multiplicity, 3);
    assert_eq!(r.invariants.delta, 3);
    assert_eq!(r.invariants.virtual_cusps, 2);
    assert!(r.nondegenerate, "4 = 3 + 1");
}

#[test]
fn degree_five_model_full_record() {
    let r = model_report(5, 1).unwrap();
    assert_eq!(r.invariants.type_tag, TypeTag::Torus(4, 5));
    assert_eq!(r.invariants.milnor, 12);
    assert_eq!(r.invariants.delta, 6);
    assert_eq!(r.invariants.virtual_cusps, 3);
    assert_eq!(r.invariants.virtual_nodes, 3);
    assert!(r.nondegenerate);
}

#[test]
fn nondegeneracy_over_the_tested_range() {
    for n in 2..=6u64 {
        for m in 1..=3u64 {
            let r = model_report(n, m).unwrap();
            assert_eq!(r.invariants.multiplicity, n - 1, "n = {n}, m = {m}");
            assert!(r.nondegenerate, "n = {n}, m = {m}");
        }
    }
}

#[test]
fn family_tables() {
    let fam = tch12_model_family(4).unwrap();
    assert_eq!(
        fam,
        vec![
            (2, TypeTag::A(0), true),
            (3, TypeTag::A(2), true),
            (4, TypeTag::E6, true),
        ]
    );
    let fam = tch12_model_family(2).unwrap();
    assert_eq!(fam, vec![(2, TypeTag::A(0), true)]);
    let fam = tch12_model_family(6).unwrap();
    assert_eq!(fam[3], (5, TypeTag::Torus(4, 5), true));
    assert_eq!(fam[4], (6, TypeTag::Torus(5, 6), true));
}

#[test]
fn twisted_model_types() {
    // (3, 2): v^2 - 4 z^6 is a pair of smooth branches with contact 3 (A5)
    let r = model_report(3, 2).unwrap();
    assert_eq!(r.invariants.type_tag, TypeTag::A(5));
    // (4, 2): v^3 + 27 z^8, torus exponent 8/3
    let r = model_report(4, 2).unwrap();
    assert_eq!(r.invariants.type_tag, TypeTag::Torus(3, 8));
}

#[test]
fn parameter_validation() {
    assert!(branch_curve(1, 1).is_err());
    assert!(branch_curve(2, 0).is_err());
    assert!(tch12_model_family(1).is_err());
}
