//! Operations on list expressions.

use crate::error::{Error, Result};
use crate::expr::{normalize, Node};
use crate::index::check_free_indices;
use crate::properties::Registry;

/// A list becomes the sum of its entries; a sum of equally long lists
/// becomes the list of entrywise sums. Anything else is returned as is.
pub fn list_sum(e: &Node, reg: &Registry) -> Result<Node> {
    if e.is_list() {
        let terms: Vec<Node> = e
            .children
            .iter()
            .map(|c| c.clone().with_multiplier(&c.multiplier * &e.multiplier))
            .collect();
        let s = normalize(Node::sum(terms));
        check_free_indices(&s, reg)?;
        return Ok(s);
    }
    if e.is_sum() && e.children.iter().all(Node::is_list) {
        let len = e.children[0].children.len();
        if e.children.iter().any(|l| l.children.len() != len) {
            return Err(Error::DimensionMismatch("lists of different lengths".into()));
        }
        let entries = (0..len)
            .map(|i| {
                let terms = e
                    .children
                    .iter()
                    .map(|l| {
                        let c = &l.children[i];
                        c.clone().with_multiplier(&(&c.multiplier * &l.multiplier) * &e.multiplier)
                    })
                    .collect();
                crate::algorithms::collect::collect_flat(terms)
            })
            .collect();
        return Ok(Node::list(entries));
    }
    Ok(e.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse;

    fn ls(s: &str) -> Result<String> {
        list_sum(&parse(s).unwrap(), &Registry::new()).map(|n| n.to_string())
    }

    #[test]
    fn sums_entries() {
        assert_eq!(ls("{a, b}").unwrap(), "a + b");
        assert_eq!(ls("{a}").unwrap(), "a");
        assert_eq!(ls("{0, 1} + {2, -1/4}").unwrap(), "{2, 3/4}");
        assert!(ls("{T_{m}, S_{n}}").is_err());
    }
}
