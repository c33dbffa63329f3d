//! Parses input notation and prints it back, both as re-parseable text and
//! as display TeX.

use fieldcas::notation::render_tex;
use fieldcas::parse;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inputs = [
        "A_{m n} B^{m}_{p} + 1/2 C_{n p}",
        "-(a + b) x",
        "\\partial_{m}(T_{n p} S_{p}) \\bar{\\psi}",
        "\\int{ F_{m n} F^{m n} }{x}",
    ];
    for text in inputs {
        let e = parse(text)?;
        println!("{text:45} => {e}");
        println!("{:45}    tex: {}", "", render_tex(&e));
    }
    Ok(())
}
