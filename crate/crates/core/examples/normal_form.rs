use centralizer::lie::AlgebraSpec;
use centralizer::pbw::hc::gelfand_invariant;
use centralizer::pbw::Pbw;
use centralizer::coeff::Rational;

fn main() {
    let alg = Pbw::<Rational>::hc(AlgebraSpec::gl(2));
    let e12 = alg.gen(1, 2).unwrap();
    let e21 = alg.gen(2, 1).unwrap();
    println!("E12*E21 = {}", e12.times(&e21));
    println!("E21*E12 = {}", e21.times(&e12));
    let cas = gelfand_invariant(&alg, 2).unwrap();
    println!("Casimir = {}", cas);
    println!("[Casimir, E12] = {}", cas.commutator(&e12));
}
