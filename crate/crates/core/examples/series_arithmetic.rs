use centralizer::coeff::{MultiPoly, TruncSeries};

fn main() {
    let c = MultiPoly::c();
    let s = TruncSeries::from_coeffs(vec![MultiPoly::one(), -c.clone(), MultiPoly::zero(), MultiPoly::zero()]);
    let inv = s.invert().expect("constant term is 1");
    println!("(1 - c/u)^-1 = {:?}", inv.coeffs());
    println!("product      = {:?}", s.times(&inv).coeffs());
    let shifted = inv.shift(&MultiPoly::int(2));
    println!("shifted by 2 = {:?}", shifted.coeffs());
}
