//! Partial integration, dropping the boundary term.

use fieldcas::algorithms::pintegrate;
use fieldcas::{parse, Session};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut s = Session::new();
    s.eval_line("{a,b}::Indices(vector). \\partial{#}::PartialDerivative.")?;
    for text in ["A_{b} \\partial_{a}{B_{a b}}", "\\int{ \\phi \\partial_{a}{\\chi} }{x}"] {
        println!("{text} -> {}", pintegrate(&parse(text)?, "\\partial", s.registry())?);
    }
    Ok(())
}
