//! Sorts products while tracking signs from anticommuting factors.

use fieldcas::algorithms::prodsort;
use fieldcas::{parse, Session};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut s = Session::new();
    s.eval_line("{\\epsilon, \\lambda, \\chi}::AntiCommuting. {\\chi, \\epsilon}::SortOrder.")?;
    for text in ["\\lambda x \\epsilon", "\\epsilon \\chi", "y \\lambda \\chi x \\epsilon"] {
        println!("{text:28} -> {}", prodsort(&parse(text)?, s.registry()));
    }
    Ok(())
}
