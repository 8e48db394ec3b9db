use centralizer::coeff::{int, rat, Rational};
use centralizer::lie::{
    canonicalize, index_labels, kappa, lie_algebra, rho, theta, tri_class, AlgebraSpec, Family, GenIndex, LieError,
    TriClass,
};
use proptest::prelude::*;

fn g(i: i32, j: i32) -> GenIndex {
    GenIndex::new(i, j)
}

fn combo(spec: AlgebraSpec, terms: &[(i32, i32, i64)]) -> Vec<(usize, Rational)> {
    let lie = lie_algebra(spec);
    let mut out: Vec<(usize, Rational)> = terms.iter().map(|&(i, j, k)| (lie.index_of(g(i, j)).unwrap(), int(k))).collect();
    out.sort();
    out
}

fn sorted(mut v: Vec<(usize, Rational)>) -> Vec<(usize, Rational)> {
    v.sort();
    v
}

#[test]
fn theta_examples() {
    assert_eq!(theta(AlgebraSpec::o(4), 1, -1), 1);
    assert_eq!(theta(AlgebraSpec::sp(2), 1, -1), -1);
    assert_eq!(theta(AlgebraSpec::sp(4), 2, 1), 1);
    assert_eq!(theta(AlgebraSpec::sp(4), -2, -1), 1);
}

#[test]
fn canonicalize_examples() {
    assert_eq!(canonicalize(AlgebraSpec::o(4), 1, -1), None);
    assert_eq!(canonicalize(AlgebraSpec::sp(2), 1, -1), Some((1, g(1, -1))));
    assert_eq!(canonicalize(AlgebraSpec::o(4), 2, 1), Some((-1, g(-1, -2))));
    assert_eq!(canonicalize(AlgebraSpec::o(5), 0, 0), None);
    assert_eq!(canonicalize(AlgebraSpec::o(5), 1, 0), Some((-1, g(0, -1))));
    assert_eq!(canonicalize(AlgebraSpec::gl(3), 3, 1), Some((1, g(3, 1))));
}

#[test]
fn bracket_examples() {
    let gl = AlgebraSpec::gl(2);
    let lie = lie_algebra(gl);
    let got = sorted(lie.bracket_gen(g(1, 2), g(2, 1)).unwrap());
    assert_eq!(got, combo(gl, &[(1, 1, 1), (2, 2, -1)]));

    let sp = AlgebraSpec::sp(2);
    let lie = lie_algebra(sp);
    let got = lie.bracket_gen(g(1, -1), g(-1, 1)).unwrap();
    assert_eq!(got, combo(sp, &[(-1, -1, -4)]));

    for spec in [AlgebraSpec::gl(3), AlgebraSpec::o(5), AlgebraSpec::sp(4), AlgebraSpec::o(4)] {
        let lie = lie_algebra(spec);
        for x in 0..lie.dim() {
            assert!(lie.bracket(x, x).is_empty());
        }
    }
    let lie = lie_algebra(AlgebraSpec::gl(2));
    assert_eq!(lie.bracket_gen(g(1, 3), g(1, 1)).unwrap_err(), LieError::IndexOutOfRange(1, 3, AlgebraSpec::gl(2)));
}

#[test]
fn rho_examples() {
    assert_eq!(rho(AlgebraSpec::sp(4)).unwrap(), vec![int(1), int(2)]);
    assert_eq!(rho(AlgebraSpec::o(5)).unwrap(), vec![rat(1, 2), rat(3, 2)]);
    assert_eq!(rho(AlgebraSpec::o(4)).unwrap(), vec![int(0), int(1)]);
    assert_eq!(rho(AlgebraSpec::gl(2)).unwrap_err(), LieError::RhoForTypeA);
    assert_eq!(kappa(AlgebraSpec::o(5)), int(2));
    assert_eq!(kappa(AlgebraSpec::sp(4)), rat(5, 2));
}

#[test]
fn index_sets_and_dimensions() {
    assert_eq!(index_labels(Family::A, 3), vec![1, 2, 3]);
    assert_eq!(index_labels(Family::B, 1), vec![-1, 0, 1]);
    assert_eq!(index_labels(Family::C, 2), vec![-2, -1, 1, 2]);
    for n in 1..=4 {
        for family in [Family::A, Family::B, Family::C, Family::D] {
            let spec = AlgebraSpec::new(family, n);
            let lie = lie_algebra(spec);
            let want = match family {
                Family::A => n * n,
                Family::B | Family::C => 2 * n * n + n,
                Family::D => n * (2 * n - 1),
            };
            assert_eq!(lie.dim(), want, "{spec}");
            assert_eq!(spec.dimension(), want);
            for &i in &spec.index_set() {
                for &j in &spec.index_set() {
                    if let Some((_, b)) = canonicalize(spec, i, j) {
                        assert!(lie.index_of(b).is_some(), "{spec} ({i},{j})");
                    }
                }
            }
        }
    }
}

#[test]
fn triangular_classes() {
    assert_eq!(tri_class(g(-1, 2)), TriClass::Upper);
    assert_eq!(tri_class(g(-1, -1)), TriClass::Cartan);
    assert_eq!(tri_class(g(2, -1)), TriClass::Lower);
    assert_eq!(lie_algebra(AlgebraSpec::sp(4)).cartan().len(), 2);
    assert_eq!(lie_algebra(AlgebraSpec::gl(3)).cartan().len(), 3);
}

#[test]
fn axioms_hold_exhaustively() {
    for spec in [
        AlgebraSpec::gl(3),
        AlgebraSpec::o(3),
        AlgebraSpec::o(4),
        AlgebraSpec::o(5),
        AlgebraSpec::o(6),
        AlgebraSpec::sp(2),
        AlgebraSpec::sp(4),
        AlgebraSpec::sp(6),
    ] {
        let lie = lie_algebra(spec);
        assert!(lie.antisymmetry_defects().is_empty(), "{spec}");
        assert!(lie.jacobi_defects().is_empty(), "{spec}");
    }
}

#[test]
fn spec_strings() {
    for s in ["gl:3", "o:5", "o:6", "sp:4"] {
        assert_eq!(s.parse::<AlgebraSpec>().unwrap().to_string(), s);
    }
    assert_eq!("o:5".parse::<AlgebraSpec>().unwrap(), AlgebraSpec::new(Family::B, 2));
    assert!("gl:0".parse::<AlgebraSpec>().is_err());
    assert!("sp:5".parse::<AlgebraSpec>().is_err());
}

fn any_spec() -> impl Strategy<Value = AlgebraSpec> {
    (0usize..4, 1usize..4).prop_map(|(f, n)| AlgebraSpec::new([Family::A, Family::B, Family::C, Family::D][f], n))
}

proptest! {
    #[test]
    fn mirrored_generators_agree(spec in any_spec(), a in 0usize..49, b in 0usize..49) {
        let labels = spec.index_set();
        let i = labels[a % labels.len()];
        let j = labels[b % labels.len()];
        if spec.family != Family::A {
            let direct = canonicalize(spec, i, j);
            let mirror = canonicalize(spec, -j, -i);
            match (direct, mirror) {
                (None, None) => {}
                (Some((s, x)), Some((t, y))) => {
                    prop_assert_eq!(x, y);
                    prop_assert_eq!(s, -theta(spec, i, j) * t);
                }
                _ => prop_assert!(false, "one side vanishes"),
            }
        }
    }
}
