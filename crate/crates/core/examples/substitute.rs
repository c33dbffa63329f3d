//! Substitution with automatic dummy relabelling across index types.

use fieldcas::algorithms::{substitute, RuleSet};
use fieldcas::{parse, Session};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut s = Session::new();
    s.eval_line("{m,n,p,q#}::Indices(flat). {\\mu,\\rho,\\nu#}::Indices(curved).")?;
    let reg = s.registry();
    let steps = [
        ("A A", "A = B_{m n} B_{m n}"),
        ("A_{m \\nu} A_{m \\nu}", "A_{m \\mu} = \\bar{\\psi} \\Gamma_{m p} \\psi B_{p \\mu \\rho} C_{\\rho}"),
    ];
    for (expr, rule) in steps {
        let rules = RuleSet::from_nodes(&[parse(rule)?], reg)?;
        let out = substitute(&parse(expr)?, &rules, reg)?;
        println!("{expr}\n  with {rule}\n  => {}", out.expression);
    }
    Ok(())
}
