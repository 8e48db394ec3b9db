use centralizer::coeff::Rational;
use centralizer::lie::AlgebraSpec;
use centralizer::pbw::Pbw;
use centralizer::relations::{all_pass, check_qdet, qdet};
use centralizer::series_matrix::build_t_eta;

fn main() {
    let alg = Pbw::<Rational>::hc(AlgebraSpec::gl(2));
    let t = build_t_eta(&alg, 2, 3).unwrap();
    let d = qdet(&t).unwrap();
    for k in 0..=3 {
        println!("qdet u^-{k}: {}", d.coeff(k));
    }
    let r = check_qdet(&t, "eta").unwrap();
    println!("{} checks, all pass: {}", r.len(), all_pass(&r));
}
