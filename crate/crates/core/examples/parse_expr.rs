use std::sync::Arc;

use centralizer::cli::{parse_expr, parse_expr_for};
use centralizer::coeff::MultiPoly;
use centralizer::lie::AlgebraSpec;
use centralizer::pbw::Pbw;

fn main() {
    let spec = AlgebraSpec::gl(2);
    let src = "(E[1,1] - c)^2 + 1/2*E[1,2]*E[2,1]";
    let e = parse_expr_for(src, spec).unwrap();
    println!("parsed : {e}");
    let alg: Arc<Pbw<MultiPoly>> = Pbw::hc(spec);
    println!("normal : {}", e.to_element(&alg, &MultiPoly::c()).unwrap());
    for bad in ["E[1,2]*", "E[1,2] E[2,1]", "q + 1"] {
        println!("{bad:?}: {}", parse_expr(bad).unwrap_err());
    }
}
