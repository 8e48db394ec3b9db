use std::collections::BTreeMap;

use centralizer::coeff::MultiPoly;
use centralizer::lie::AlgebraSpec;
use centralizer::pbw::hc::{gelfand_invariant, hc_omega, highest_weight_eigenvalue};
use centralizer::pbw::Pbw;
use centralizer::symfun::{eigenvalue_bridge, wprime_invariance_check};

fn main() {
    for spec in [AlgebraSpec::gl(2), AlgebraSpec::sp(4)] {
        let alg = Pbw::<MultiPoly>::hc(spec);
        let cas = gelfand_invariant(&alg, 2).unwrap();
        let image = hc_omega(&cas).unwrap();
        println!("{spec}: omega(C2) = {image}");
        println!("  shifted symmetric: {}", wprime_invariance_check(&image, spec));
    }
    let alg = Pbw::<MultiPoly>::hc(AlgebraSpec::gl(2));
    let cas = gelfand_invariant(&alg, 2).unwrap();
    let weight = BTreeMap::from([(1, MultiPoly::int(3)), (2, MultiPoly::int(1))]);
    println!("eigenvalue at (3, 1): {}", highest_weight_eigenvalue(&cas, &weight).unwrap());
    println!("agrees with the Verma action: {}", eigenvalue_bridge(&cas, &weight).unwrap());
}
