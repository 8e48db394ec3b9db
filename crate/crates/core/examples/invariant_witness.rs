use centralizer::invariants::{stability_table, witness_min_rank, witness_point};
use centralizer::lie::AlgebraSpec;

fn main() {
    for family in [AlgebraSpec::gl(1), AlgebraSpec::o(3), AlgebraSpec::sp(2)] {
        let n = witness_min_rank(family, 1, 2);
        let spec = family.with_rank(n);
        let w = witness_point(spec, 1, 2).unwrap();
        println!("{spec}: {} invariants, Jacobian rank {}, triangular {}", w.invariants.len(), w.family_rank(), w.is_triangular());
        for (inv, value) in w.evaluations() {
            println!("  {inv} -> {value}");
        }
    }
    let table = stability_table(AlgebraSpec::o(6), 3).unwrap();
    println!("o:6 stability: {} of {} stable", table.iter().filter(|(_, ok)| *ok).count(), table.len());
}
