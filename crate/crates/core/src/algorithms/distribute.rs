//! Expansion of products over sums and the Leibniz rule.

use crate::expr::{normalize, Node};
use crate::properties::Registry;

/// Expands every product over the sums among its factors. Factor order is
/// kept within each resulting term.
pub fn distribute(e: &Node) -> Node {
    normalize(expand(e))
}

fn expand(e: &Node) -> Node {
    let mut out = e.clone();
    out.children = e.children.iter().map(expand).collect();
    if !out.is_prod() || !out.children.iter().any(Node::is_sum) {
        return out;
    }
    let mut terms: Vec<Vec<Node>> = vec![Vec::new()];
    for f in &out.children {
        let choices: Vec<Node> = if f.is_sum() {
            f.children
                .iter()
                .map(|t| t.clone().with_multiplier(&t.multiplier * &f.multiplier))
                .collect()
        } else {
            vec![f.clone()]
        };
        let mut next = Vec::with_capacity(terms.len() * choices.len());
        for t in &terms {
            for c in &choices {
                let mut t = t.clone();
                t.push(c.clone());
                next.push(t);
            }
        }
        terms = next;
    }
    let sum = Node::sum(terms.into_iter().map(Node::prod).collect());
    let mut sum = normalize(sum);
    sum.multiplier = &sum.multiplier * &out.multiplier;
    sum.rel = out.rel;
    sum.bracket = out.bracket;
    normalize(sum)
}

/// Leibniz rule for derivatives of products: the derivative lands on each
/// factor in turn, with no sign of its own.
pub fn prodrule(e: &Node, reg: &Registry) -> Node {
    normalize(leibniz(e, reg))
}

fn leibniz(e: &Node, reg: &Registry) -> Node {
    let mut out = e.clone();
    out.children = e.children.iter().map(|c| leibniz(c, reg)).collect();
    if !reg.is_derivative(&out) {
        return out;
    }
    let args: Vec<usize> = (0..out.children.len())
        .filter(|&i| !out.children[i].rel.is_index())
        .collect();
    let [arg_pos] = args[..] else {
        return out;
    };
    let arg = &out.children[arg_pos];
    if !arg.is_prod() {
        return out;
    }
    let mut terms = Vec::new();
    for (k, f) in arg.children.iter().enumerate() {
        if f.is_number() {
            continue;
        }
        let mut d = out.clone();
        d.multiplier = crate::rational::Rational::one();
        let mut inner = f.clone();
        inner.rel = arg.rel;
        inner.bracket = arg.bracket;
        d.children[arg_pos] = inner;
        let mut factors = arg.children.clone();
        factors[k] = d;
        terms.push(Node::prod(factors).with_multiplier(&arg.multiplier * &out.multiplier));
    }
    let mut sum = normalize(Node::sum(terms));
    sum.rel = out.rel;
    sum.bracket = out.bracket;
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse;
    use crate::symmetry::canon::tests::registry;

    fn d(s: &str) -> String {
        distribute(&parse(s).unwrap()).to_string()
    }

    #[test]
    fn distributes_in_order() {
        assert_eq!(d("a (b + c)"), "a b + a c");
        assert_eq!(d("(a + b) (c + d)"), "a c + a d + b c + b d");
        assert_eq!(d("2 (a - b) c"), "2 a c - 2 b c");
        assert_eq!(d("\\partial_{m}(a + b)"), "\\partial_{m}(a + b)");
    }

    #[test]
    fn leibniz_expansion() {
        let reg = registry(&["\\partial{#}::PartialDerivative."]);
        let p = |s: &str| prodrule(&parse(s).unwrap(), &reg).to_string();
        assert_eq!(p("\\partial_{a}(f g)"), "\\partial_{a}(f) g + f \\partial_{a}(g)");
        assert_eq!(
            p("\\partial_{a}(f g h)"),
            "\\partial_{a}(f) g h + f \\partial_{a}(g) h + f g \\partial_{a}(h)"
        );
        assert_eq!(p("\\partial_{a}(f)"), "\\partial_{a}(f)");
    }
}
