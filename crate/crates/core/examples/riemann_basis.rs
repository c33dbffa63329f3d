//! Runs the cubic Riemann invariant script and prints the basis it finds.

use std::path::Path;

use fieldcas::Session;

fn main() -> std::io::Result<()> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("scripts/riemann_cubic.fc");
    let mut s = Session::new();
    let out = s.run_script(&path, false)?;
    for line in out.transcript.iter().rev().take(1) {
        println!("{line}");
    }
    if let Some(basis) = s.binding("basisR3") {
        println!("{} independent monomials", basis.children.len());
    }
    std::process::exit(out.exit_code());
}
