//! Declares properties in a session and lists what the registry knows
//! about a few symbols, including properties inherited through accents.

use fieldcas::Session;

fn main() -> fieldcas::Result<()> {
    let mut s = Session::new();
    s.eval_line(
        "{a,b,c,d}::Indices(vector).
         \\bar{#}::DiracBar.
         \\partial{#}::PartialDerivative.
         {\\lambda, \\epsilon}::AntiCommuting.
         \\lambda::Spinor(dimension=4, type=Majorana).
         f_{a b}::AntiSymmetric.",
    )?;
    for sym in ["\\lambda", "f_{a b}", "a", "\\partial"] {
        for p in s.eval_line(&format!("@properties({sym});"))? {
            println!("{}", p.plain);
        }
    }
    Ok(())
}
