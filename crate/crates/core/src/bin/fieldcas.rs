use std::io::{self, BufWriter};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use fieldcas::session::{serve_protocol, Session};

/// Field-theory computer algebra: run scripts, an interactive session or
/// the JSON-lines protocol server.
#[derive(Parser, Debug)]
#[command(name = "fieldcas", version)]
struct Cli {
    /// Script to evaluate.
    script: Option<PathBuf>,
    /// Read statements from standard input after the script.
    #[arg(short, long)]
    interactive: bool,
    /// Serve newline-delimited JSON messages on standard input/output.
    #[arg(long, conflicts_with = "interactive")]
    serve: bool,
    /// Run prodsort, rename_dummies, canonicalise and collect_terms after every command.
    #[arg(long)]
    default_rules: bool,
    /// Write the printed outputs to this file.
    #[arg(long, value_name = "PATH")]
    transcript: Option<PathBuf>,
    /// Continue after errors in a script.
    #[arg(long)]
    keep_going: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut session = if cli.default_rules { Session::with_default_rules() } else { Session::new() };
    let mut transcript = Vec::new();
    let mut code = 0;
    if let Some(path) = &cli.script {
        match session.run_script(path, cli.keep_going) {
            Ok(out) => {
                for line in &out.transcript {
                    println!("{line}");
                }
                for e in &out.errors {
                    eprintln!("error: {e}");
                }
                code = out.exit_code();
                transcript = out.transcript;
            }
            Err(e) => {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
    }
    let io_result = if cli.serve {
        serve_protocol(&mut session, io::stdin().lock(), BufWriter::new(io::stdout().lock()))
    } else if cli.interactive || cli.script.is_none() {
        session.repl(io::stdin().lock(), io::stdout().lock())
    } else {
        Ok(())
    };
    if let Err(e) = io_result {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if let Some(path) = &cli.transcript {
        if cli.script.is_none() || cli.interactive || cli.serve {
            transcript = session.history().iter().flat_map(|(_, out)| out.clone()).collect();
        }
        let mut text = transcript.join("\n");
        if !text.is_empty() {
            text.push('\n');
        }
        if let Err(e) = std::fs::write(path, text) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(code as u8)
}
