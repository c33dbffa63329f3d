//! Antisymmetrisation over chosen index slots.

use fieldcas::algorithms::collect_terms;
use fieldcas::symmetry::{asym, canonicalise};
use fieldcas::{parse, Session};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut s = Session::new();
    s.eval_line("{a,b,c,d}::Indices(vector). S_{a b}::Symmetric.")?;
    let reg = s.registry();
    let slots = [parse("a")?, parse("b")?];
    for text in ["T_{a b}", "S_{a b}", "U_{a c} V_{b}"] {
        let a = asym(&parse(text)?, &slots, reg)?;
        println!("{text:14} -> {a} = {}", collect_terms(&canonicalise(&a, reg)?));
    }
    Ok(())
}
