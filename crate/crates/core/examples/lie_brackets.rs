use centralizer::lie::{canonicalize, lie_algebra, AlgebraSpec, GenIndex};

fn main() {
    for spec in [AlgebraSpec::gl(3), AlgebraSpec::o(5), AlgebraSpec::sp(4)] {
        let lie = lie_algebra(spec);
        println!("{spec}: dim {}, antisymmetry defects {}, Jacobi defects {}", lie.dim(), lie.antisymmetry_defects().len(), lie.jacobi_defects().len());
    }
    let sp = AlgebraSpec::sp(2);
    let lie = lie_algebra(sp);
    let br = lie.bracket_gen(GenIndex::new(1, -1), GenIndex::new(-1, 1)).unwrap();
    for (k, coef) in br {
        println!("[F(1,-1), F(-1,1)] contains {coef} * F{}", lie.basis()[k]);
    }
    println!("o:4 F(2,1) = {:?}", canonicalize(AlgebraSpec::o(4), 2, 1));
}
