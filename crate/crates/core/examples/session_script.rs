//! Runs a script given on the command line, or a short built-in one, and
//! prints the transcript.

use fieldcas::Session;

const DEMO: &str = "
{m,n,p,q#}::Indices(vector).
\\partial{#}::Derivative.
C:= A A;
@substitute!(%)( A = \\partial_{m}(B_{n} B_{p} + C_{n p}) B_{m n p} );
@substitute!(%)( B_{n} = T_{n m} S_{m} );
";

fn main() -> std::io::Result<()> {
    let mut s = Session::new();
    let out = match std::env::args().nth(1) {
        Some(path) => s.run_script(path.as_ref(), true)?,
        None => s.run_source(DEMO, true),
    };
    for line in &out.transcript {
        println!("{line}");
    }
    std::process::exit(out.exit_code());
}
