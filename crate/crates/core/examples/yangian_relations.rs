use centralizer::coeff::{MultiPoly, Rational};
use centralizer::lie::AlgebraSpec;
use centralizer::pbw::Pbw;
use centralizer::relations::{all_pass, check_ternary};
use centralizer::series_matrix::{build_t_eta, build_t_phi};

fn main() {
    let spec = AlgebraSpec::gl(2);
    let alg = Pbw::<Rational>::hc(spec);
    let t = build_t_eta(&alg, 2, 3).unwrap();
    let r = check_ternary(&t, "eta", false).unwrap();
    println!("eta image, {} index tuples, all pass: {}", r.len(), all_pass(&r));

    let alg = Pbw::<MultiPoly>::hc(spec);
    let t = build_t_phi(&alg, 2, &MultiPoly::c(), 3).unwrap();
    let r = check_ternary(&t, "phi", false).unwrap();
    println!("phi image with symbolic c, all pass: {}", all_pass(&r));

    let r = check_ternary(&t, "phi", true).unwrap();
    if let Some(bad) = r.iter().find(|x| !x.pass) {
        println!("sign-flipped control fails at {:?}: {:?}", bad.instance.indices, bad.witness);
    }
}
