//! Young projection of a Riemann tensor, and the cyclic identity falling
//! out of it.

use fieldcas::algorithms::collect_terms;
use fieldcas::symmetry::young_project;
use fieldcas::{parse, Session};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut s = Session::new();
    s.eval_line("{a,b,c,d,m,n,p,q}::Indices(vector). R_{a b c d}::RiemannTensor.")?;
    let reg = s.registry();
    let single = young_project(&parse("R_{a b c d}")?, reg)?;
    println!("R_{{a b c d}} -> {single}");
    let cyclic = parse("R_{m n p q} + R_{m p q n} + R_{m q n p}")?;
    println!("{cyclic} -> {}", collect_terms(&young_project(&cyclic, reg)?));
    Ok(())
}
