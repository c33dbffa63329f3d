//! Brings tensor monomials to canonical form under slot symmetries and
//! dummy relabelling.

use fieldcas::symmetry::canonicalise;
use fieldcas::Session;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut s = Session::new();
    s.eval_line(
        "{a,b,c,d,e,f}::Indices(vector). R_{a b c d}::RiemannTensor. F_{a b}::AntiSymmetric. S_{a b}::Symmetric.",
    )?;
    let reg = s.registry();
    for text in [
        "R_{b a c d} R_{c d a b}",
        "F_{b a} S_{a b}",
        "R_{c f d e} F_{e f} S_{c d}",
        "F_{e a} F_{f e} R_{b a f b}",
    ] {
        let e = fieldcas::parse(text)?;
        println!("{text:30} -> {}", canonicalise(&e, reg)?);
    }
    Ok(())
}
