//! Decomposes a quartic Weyl expression on a seven-element basis, one of
//! whose elements is built by an eight-fold antisymmetrisation.
//!
//! Takes a few seconds in release mode.

use std::path::Path;
use std::time::Instant;

use fieldcas::Session;

fn main() -> std::io::Result<()> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("scripts/weyl_quartic.fc");
    let start = Instant::now();
    let mut s = Session::new();
    let out = s.run_script(&path, false)?;
    for e in &out.errors {
        eprintln!("{e}");
    }
    if let Some(w7) = s.binding("W7") {
        println!("W7 has {} terms", w7.terms().len());
    }
    if let Some(r) = s.current() {
        println!("coefficients: {r}");
    }
    println!("{:.1} s", start.elapsed().as_secs_f64());
    Ok(())
}
