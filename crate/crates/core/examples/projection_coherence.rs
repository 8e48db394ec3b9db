use centralizer::coeff::MultiPoly;
use centralizer::lie::AlgebraSpec;
use centralizer::relations::{all_pass, check_projection_coherence_a, check_projection_coherence_bcd};

fn main() {
    let c = MultiPoly::c();
    let r = check_projection_coherence_a(3, &c, 3, None).unwrap();
    println!("gl(3) -> gl(2): {} memberships, all pass: {}", r.len(), all_pass(&r));
    let wrong = MultiPoly::int(4);
    let r = check_projection_coherence_a(3, &c, 3, Some(&wrong)).unwrap();
    println!("with a wrong shift: all pass: {}", all_pass(&r));
    for spec in [AlgebraSpec::sp(4), AlgebraSpec::o(5)] {
        let r = check_projection_coherence_bcd(spec, &c, 3, None).unwrap();
        println!("{spec}: {} memberships, all pass: {}", r.len(), all_pass(&r));
    }
}
