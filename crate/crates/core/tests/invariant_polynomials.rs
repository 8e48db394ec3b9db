use centralizer::coeff::{MultiPoly, Var};
use centralizer::invariants::{
    coordinate, coordinate_matrix, degree_warning, identify, independent_family, invariant_gen, is_coadjoint_invariant,
    parity_check, parity_class, stability_check, stability_of, stability_table, witness_min_rank, witness_point, Invariant,
    InvariantError, ParityClass,
};
use centralizer::lie::AlgebraSpec;
use proptest::prelude::*;

fn x(i: i32, j: i32) -> MultiPoly {
    MultiPoly::var(Var::X(i, j))
}

fn all_specs(n: usize) -> Vec<AlgebraSpec> {
    vec![AlgebraSpec::gl(n), AlgebraSpec::o(2 * n + 1), AlgebraSpec::o(2 * n), AlgebraSpec::sp(2 * n)]
}

#[test]
fn trace_of_first_power() {
    let f = invariant_gen(AlgebraSpec::gl(2), 2, Invariant::Trace { power: 1 }).unwrap();
    assert_eq!(f, &x(1, 1) + &x(2, 2));
    for spec in [AlgebraSpec::o(4), AlgebraSpec::o(5), AlgebraSpec::sp(4)] {
        assert!(invariant_gen(spec, 2, Invariant::Trace { power: 1 }).unwrap().is_zero());
    }
}

#[test]
fn coordinates_respect_antisymmetry() {
    let spec = AlgebraSpec::sp(4);
    assert_eq!(coordinate(spec, 1, 2), -coordinate(spec, -2, -1));
    assert_eq!(coordinate(spec, -1, 2), coordinate(spec, -2, 1));
    assert!(coordinate(AlgebraSpec::o(4), 1, -1).is_zero());
    assert!(!coordinate(spec, 1, -1).is_zero());
}

#[test]
fn corner_range_is_enforced() {
    let err = invariant_gen(AlgebraSpec::gl(3), 1, Invariant::Corner { i: 1, j: 2, power: 2 }).unwrap_err();
    assert_eq!(err, InvariantError::CornerOutOfRange { i: 1, j: 2, m: 1 });
    let err = invariant_gen(AlgebraSpec::o(4), 2, Invariant::Corner { i: 0, j: 1, power: 1 }).unwrap_err();
    assert!(matches!(err, InvariantError::BadIndex(0, 1, _)));
    assert_eq!(invariant_gen(AlgebraSpec::gl(2), 2, Invariant::Trace { power: 0 }).unwrap_err(), InvariantError::ZeroPower);
}

#[test]
fn stability_up_to_rank_four() {
    for n in 2..=4 {
        for spec in all_specs(n) {
            let table = stability_table(spec, 4).unwrap();
            assert!(table.iter().all(|(_, ok)| *ok), "{spec}");
            assert_eq!(table.len(), 4 * (1 + spec.with_rank(n - 1).size().pow(2)));
        }
    }
    let spec = AlgebraSpec::o(5);
    for inv in [Invariant::Trace { power: 2 }, Invariant::Corner { i: -1, j: 0, power: 3 }] {
        let f = invariant_gen(spec, 2, inv).unwrap();
        assert!(stability_check(spec, &f).unwrap(), "{inv}");
    }
    let f = invariant_gen(AlgebraSpec::gl(3), 3, Invariant::Trace { power: 2 }).unwrap();
    assert!(stability_check(AlgebraSpec::gl(3), &f).unwrap());
}

#[test]
fn stability_rejects_foreign_polynomials() {
    let spec = AlgebraSpec::gl(3);
    let f = &x(1, 1) * &x(1, 3);
    assert_eq!(stability_check(spec, &f).unwrap_err(), InvariantError::NotAFamily(spec));
    assert!(matches!(stability_check(AlgebraSpec::gl(1), &x(1, 1)), Err(InvariantError::RankTooSmall { .. })));
}

#[test]
fn identify_recovers_generators() {
    let spec = AlgebraSpec::o(5);
    let inv = Invariant::Corner { i: -1, j: 2, power: 3 };
    let f = invariant_gen(spec, 2, inv).unwrap();
    assert_eq!(identify(spec, &f), Some(inv));
    assert_eq!(identify(spec, &MultiPoly::one()), None);
}

#[test]
fn parity_table() {
    for spec in [AlgebraSpec::o(4), AlgebraSpec::o(5), AlgebraSpec::sp(4)] {
        for power in 1..=4 {
            assert!(parity_check(spec, Invariant::Trace { power }).unwrap());
            for &i in &spec.index_set() {
                for &j in &spec.index_set() {
                    let inv = Invariant::Corner { i, j, power };
                    assert!(parity_check(spec, inv).unwrap(), "{spec} {inv} {:?}", parity_class(spec, inv));
                }
            }
        }
    }
    let sp = AlgebraSpec::sp(2);
    assert_eq!(parity_class(sp, Invariant::Corner { i: 1, j: -1, power: 1 }), ParityClass::Allowed);
    assert_eq!(parity_class(sp, Invariant::Corner { i: 1, j: -1, power: 2 }), ParityClass::Vanishes);
    assert_eq!(parity_class(AlgebraSpec::o(4), Invariant::Corner { i: 1, j: -1, power: 1 }), ParityClass::Vanishes);
    assert!(matches!(parity_class(sp, Invariant::Corner { i: 1, j: 1, power: 1 }), ParityClass::Mirror { sign: -1, .. }));
}

#[test]
fn witness_certifies_independence() {
    for family in [AlgebraSpec::gl(1), AlgebraSpec::o(3), AlgebraSpec::o(2), AlgebraSpec::sp(2)] {
        let n = witness_min_rank(family, 1, 2);
        let spec = family.with_rank(n);
        let w = witness_point(spec, 1, 2).unwrap();
        assert!(w.is_antisymmetric(), "{spec}");
        assert!(w.is_triangular(), "{spec}");
        assert_eq!(w.family_rank(), w.invariants.len(), "{spec}");
    }
}

#[test]
fn witness_examples() {
    let spec = AlgebraSpec::gl(4);
    let w = witness_point(spec, 1, 2).unwrap();
    let f = invariant_gen(spec, 1, Invariant::Corner { i: 1, j: 1, power: 2 }).unwrap();
    assert!(w.evaluate(&f).contains_var(Var::Z(1, 1, 2)));
    let polys: Vec<MultiPoly> = w.invariants.iter().map(|inv| invariant_gen(spec, 1, *inv).unwrap()).collect();
    assert_eq!(w.jacobian_rank(&polys), polys.len());
    let mut doubled = polys.clone();
    doubled.push(polys[0].clone());
    assert_eq!(w.jacobian_rank(&doubled), polys.len());
    let sp = AlgebraSpec::sp(2).with_rank(witness_min_rank(AlgebraSpec::sp(2), 1, 2));
    assert_eq!(independent_family(sp, 1, 2).len(), 5);
    let w = witness_point(sp, 1, 2).unwrap();
    let polys: Vec<MultiPoly> = w.invariants.iter().map(|inv| invariant_gen(sp, 1, *inv).unwrap()).collect();
    assert_eq!(w.jacobian_rank(&polys), polys.len());
}

#[test]
fn witness_needs_room() {
    let err = witness_point(AlgebraSpec::gl(3), 1, 2).unwrap_err();
    assert_eq!(err, InvariantError::RankTooSmall { rank: 3, needed: 4 });
    assert!(witness_point(AlgebraSpec::gl(4), 1, 2).is_ok());
}

#[test]
fn witness_larger_orders() {
    for family in [AlgebraSpec::gl(1), AlgebraSpec::o(3), AlgebraSpec::sp(2)] {
        for (m, k) in [(0, 3), (2, 2), (1, 3)] {
            let spec = family.with_rank(witness_min_rank(family, m, k));
            let w = witness_point(spec, m, k).unwrap();
            assert!(w.is_triangular(), "{spec} m={m} K={k}");
            assert_eq!(w.family_rank(), w.invariants.len(), "{spec} m={m} K={k}");
        }
    }
}

#[test]
fn coadjoint_invariance() {
    for spec in all_specs(2).into_iter().chain(all_specs(3)) {
        let m = 1;
        for power in 1..=3 {
            let f = invariant_gen(spec, m, Invariant::Trace { power }).unwrap();
            assert!(is_coadjoint_invariant(spec, 0, &f), "{spec} trace {power}");
            for inv in independent_family(spec, m, power).into_iter().filter(|v| v.power() == power) {
                let f = invariant_gen(spec, m, inv).unwrap();
                assert!(is_coadjoint_invariant(spec, m, &f), "{spec} {inv}");
            }
        }
    }
    let spec = AlgebraSpec::gl(3);
    assert!(!is_coadjoint_invariant(spec, 0, &(&x(1, 1) * &x(1, 3))));
    let corner = invariant_gen(spec, 1, Invariant::Corner { i: 1, j: 1, power: 2 }).unwrap();
    assert!(!is_coadjoint_invariant(spec, 0, &corner));
}

#[test]
fn degree_bound_warning() {
    assert!(degree_warning(AlgebraSpec::o(6), 1, 2).is_some());
    assert!(degree_warning(AlgebraSpec::o(6), 0, 2).is_none());
    assert!(degree_warning(AlgebraSpec::gl(2), 1, 5).is_none());
}

proptest! {
    #[test]
    fn power_is_associative(n in 1usize..3, a in 1u32..3, b in 1u32..3) {
        let x = coordinate_matrix(AlgebraSpec::sp(2 * n));
        prop_assert_eq!(x.power(a).mul(&x.power(b)), x.power(a + b));
    }

    #[test]
    fn traces_are_stable(n in 2usize..4, power in 1u32..4, family in 0usize..4) {
        let spec = all_specs(n)[family];
        let inv = Invariant::Trace { power };
        prop_assert!(stability_of(spec, inv).unwrap());
    }
}
