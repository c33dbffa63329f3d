//! Integration by parts.

use crate::error::{Error, Result};
use crate::expr::{normalize, Node, ParentRel, INT, MEASURE};
use crate::properties::Registry;

/// Moves the first derivative named `deriv` in every term onto the other
/// factors: `A d(X) B -> -s X d(A B)` with `s` the sign of moving `X` past
/// `A`. Total derivatives drop out. Terms under an integral are handled
/// inside it; an expression without an integral is treated as an
/// integrand.
pub fn pintegrate(e: &Node, deriv: &str, reg: &Registry) -> Result<Node> {
    Ok(normalize(walk(e, deriv, reg)?))
}

fn walk(e: &Node, deriv: &str, reg: &Registry) -> Result<Node> {
    if e.is(INT) {
        let mut out = e.clone();
        for c in out.children.iter_mut() {
            if !c.is(MEASURE) {
                let rel = c.rel;
                let bracket = c.bracket;
                *c = integrand(c, deriv, reg)?;
                c.rel = rel;
                c.bracket = bracket;
            }
        }
        return Ok(out);
    }
    if contains_integral(e) {
        let mut out = e.clone();
        out.children = e.children.iter().map(|c| walk(c, deriv, reg)).collect::<Result<_>>()?;
        return Ok(out);
    }
    integrand(e, deriv, reg)
}

fn contains_integral(e: &Node) -> bool {
    e.is(INT) || e.children.iter().any(contains_integral)
}

fn integrand(e: &Node, deriv: &str, reg: &Registry) -> Result<Node> {
    let terms = e
        .terms()
        .into_iter()
        .map(|t| by_parts(t, deriv, reg))
        .collect::<Result<Vec<_>>>()?;
    Ok(normalize(Node::sum(terms)))
}

fn by_parts(term: &Node, deriv: &str, reg: &Registry) -> Result<Node> {
    let factors: Vec<&Node> = term.factors();
    let Some(k) = factors.iter().position(|f| &*f.name == deriv) else {
        return Ok(term.clone());
    };
    let d = factors[k];
    let args: Vec<&Node> = d.children.iter().filter(|c| !c.rel.is_index()).collect();
    let [x] = args[..] else {
        return Ok(term.clone());
    };
    let rest: Vec<Node> = factors
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != k)
        .map(|(_, f)| f.unit())
        .collect();
    if rest.is_empty() {
        return Ok(Node::zero());
    }
    let mut x = x.clone();
    x.rel = ParentRel::NoRelation;
    x.bracket = crate::expr::Bracket::None;
    let mut sign = -1;
    for f in &factors[..k] {
        sign *= reg
            .commutation_sign(&x, f)
            .ok_or_else(|| Error::UndefinedCommutation(x.to_string(), f.to_string()))?;
    }
    let mut moved = d.unit();
    let arg_pos = moved.children.iter().position(|c| !c.rel.is_index()).unwrap();
    let bracket = moved.children[arg_pos].bracket;
    let mut inner = if rest.len() == 1 { rest[0].clone() } else { Node::prod(rest) };
    inner.rel = ParentRel::Argument;
    inner.bracket = if bracket == crate::expr::Bracket::None { crate::expr::Bracket::Round } else { bracket };
    moved.children[arg_pos] = inner;
    let out = Node::prod(vec![x, moved]).with_multiplier(&term.multiplier * &crate::rational::Rational::from_int(sign as i64));
    Ok(normalize(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse;
    use crate::symmetry::canon::tests::registry;

    #[test]
    fn boundary_terms_drop() {
        let reg = registry(&["\\partial{#}::PartialDerivative."]);
        let p = |s: &str| pintegrate(&parse(s).unwrap(), "\\partial", &reg).unwrap().to_string();
        assert_eq!(p("\\int d^{4}x \\partial_{a}(A) B"), "\\int d^{4}x (-A \\partial_{a}(B))");
        assert_eq!(p("\\partial_{a}(A) B"), "-A \\partial_{a}(B)");
        assert_eq!(p("\\partial_{a}(A)"), "0");
        assert_eq!(p("C \\partial_{a}(A) B"), "-A \\partial_{a}(C B)");
    }

    #[test]
    fn grassmann_sign() {
        let reg = registry(&[
            "\\partial{#}::PartialDerivative.",
            "{\\psi, \\chi}::AntiCommuting.",
        ]);
        let e = parse("\\chi \\partial_{a}(\\psi)").unwrap();
        assert_eq!(pintegrate(&e, "\\partial", &reg).unwrap().to_string(), "\\psi \\partial_{a}(\\chi)");
    }
}
