use centralizer::coeff::MultiPoly;
use centralizer::lie::{AlgebraSpec, Family};
use centralizer::symfun::{chi_series, generator, newton_residuals, GenKind, ShiftedSymFn};

fn main() {
    let c = MultiPoly::c();
    println!("p2 for gl(2): {}", generator(AlgebraSpec::gl(2), GenKind::P, 2, &c).unwrap());
    println!("p1 for sp(4): {}", generator(AlgebraSpec::sp(4), GenKind::P, 1, &c).unwrap());
    for family in [Family::A, Family::C] {
        let f = ShiftedSymFn::from_generator(family, GenKind::P, 3, &c, 1..=4).unwrap();
        println!("{family:?} p3 coherent along ranks 1..4: {}", f.is_coherent());
    }
    let bad = newton_residuals(AlgebraSpec::o(5), 4, &c).unwrap().into_iter().filter(|(_, _, r)| !r.is_zero()).count();
    println!("o:5 Newton residuals to order 4 that are nonzero: {bad}");
    let chi = chi_series(AlgebraSpec::sp(2), &c, 2).unwrap();
    println!("chi for sp(2): {:?}", chi.coeffs());
}
