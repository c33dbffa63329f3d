//! Expresses monomials on a basis and removes linear dependencies from a
//! sum.

use fieldcas::symmetry::{build_basis, decompose, reduce_sum};
use fieldcas::{parse, Session};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut s = Session::new();
    s.eval_line("{a,b,c,d}::Indices(vector). R_{a b c d}::RiemannTensor.")?;
    let reg = s.registry();

    let basis = build_basis(&[parse("R_{a b c d} R_{a c b d}")?], reg)?;
    let square = parse("R_{a b c d} R_{a b c d}")?;
    println!("{square} on {{R_{{a b c d}} R_{{a c b d}}}}: {}", decompose(&square, &basis, reg)?.to_node());

    let sum = parse("2 R_{a b c d} + 2 R_{b c a d} + R_{c a b d}")?;
    println!("{sum} -> {}", reduce_sum(&sum, reg)?);
    Ok(())
}
