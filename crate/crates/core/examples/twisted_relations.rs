use centralizer::coeff::{MultiPoly, Rational};
use centralizer::lie::AlgebraSpec;
use centralizer::pbw::Pbw;
use centralizer::relations::{all_pass, check_reflection, check_symmetry};
use centralizer::series_matrix::{build_phi_tensor, build_s_eta};

fn main() {
    for spec in [AlgebraSpec::o(3), AlgebraSpec::o(4), AlgebraSpec::sp(2)] {
        let alg = Pbw::<Rational>::hc(spec);
        let s = build_s_eta(&alg, spec.rank, 3).unwrap();
        let refl = check_reflection(&s, "eta", false).unwrap();
        let sym = check_symmetry(&s, "eta", None).unwrap();
        println!("{spec}: reflection {}, symmetry {}", all_pass(&refl), all_pass(&sym));
    }
    let spec = AlgebraSpec::sp(2);
    let alg = Pbw::<MultiPoly>::hc(spec);
    let s = build_phi_tensor(&alg, 1, &MultiPoly::c(), 2).unwrap();
    println!(
        "{spec} tensor model: reflection {}, symmetry {}",
        all_pass(&check_reflection(&s, "phi-tensor", false).unwrap()),
        all_pass(&check_symmetry(&s, "phi-tensor", None).unwrap())
    );
}
