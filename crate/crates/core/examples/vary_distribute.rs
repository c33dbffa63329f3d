use fieldcas::algorithms::{distribute, vary, RuleSet};
use fieldcas::{parse, Session};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut s = Session::new();
    s.eval_line("{a,b,c,d}::Indices(vector). \\partial{#}::PartialDerivative. \\delta{#}::Accent. f_{a b}::AntiSymmetric.")?;
    let reg = s.registry();
    let action = parse("-1/4 f_{a b} f_{a b}")?;
    let rule = parse("f_{a b} -> \\partial_{a}{\\delta{A_{b}}} - \\partial_{b}{\\delta{A_{a}}}")?;
    let varied = vary(&action, &RuleSet::from_nodes(&[rule], reg)?, reg)?;
    println!("vary:       {varied}");
    println!("distribute: {}", distribute(&varied));
    Ok(())
}
