//! The expression tree.
//!
//! Every node carries a name, a rational multiplier and the relation it has
//! with its parent (sub/superscript, argument). Sums, products, integrals and
//! lists are ordinary nodes with reserved names.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::properties::Registry;
use crate::rational::Rational;

pub type Name = Arc<str>;

pub const SUM: &str = "\\sum";
pub const PROD: &str = "\\prod";
pub const INT: &str = "\\int";
pub const LIST: &str = "\\comma";
pub const EQUALS: &str = "\\equals";
pub const ARROW: &str = "\\arrow";
pub const MEASURE: &str = "\\measure";
/// Placeholder for `@(label)` before the session splices the binding in.
pub const INTERPOLATE: &str = "\\at";
/// Numeric constants are nodes with this name; the value is the multiplier.
pub const NUMBER: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParentRel {
    Superscript,
    Subscript,
    Argument,
    NoRelation,
}

impl ParentRel {
    pub fn is_index(self) -> bool {
        matches!(self, ParentRel::Superscript | ParentRel::Subscript)
    }
}

/// How an argument child was bracketed in the input; only affects printing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bracket {
    None,
    Round,
    Curly,
}

#[derive(Clone)]
pub struct Node {
    pub name: Name,
    pub multiplier: Rational,
    pub rel: ParentRel,
    pub bracket: Bracket,
    pub children: Vec<Node>,
}

/// Expressions are trees addressed through their root node.
pub type Expression = Node;

impl Node {
    pub fn new(name: &str) -> Self {
        Node {
            name: Arc::from(name),
            multiplier: Rational::one(),
            rel: ParentRel::NoRelation,
            bracket: Bracket::None,
            children: Vec::new(),
        }
    }

    pub fn with_name(name: Name) -> Self {
        Node {
            name,
            multiplier: Rational::one(),
            rel: ParentRel::NoRelation,
            bracket: Bracket::None,
            children: Vec::new(),
        }
    }

    pub fn number(value: Rational) -> Self {
        let mut n = Node::new(NUMBER);
        n.multiplier = value;
        n
    }

    pub fn zero() -> Self {
        Node::number(Rational::zero())
    }

    pub fn sum(children: Vec<Node>) -> Self {
        Node::new(SUM).with_children(children)
    }

    pub fn prod(children: Vec<Node>) -> Self {
        Node::new(PROD).with_children(children)
    }

    pub fn list(children: Vec<Node>) -> Self {
        Node::new(LIST).with_children(children)
    }

    /// A tensor with subscript indices, e.g. `tensor("R", &["a","b"])`.
    pub fn tensor(name: &str, subscripts: &[&str]) -> Self {
        let mut n = Node::new(name);
        for s in subscripts {
            n.children.push(Node::new(s).with_rel(ParentRel::Subscript));
        }
        n
    }

    pub fn with_children(mut self, children: Vec<Node>) -> Self {
        for mut c in children {
            if c.rel == ParentRel::NoRelation && !self.is_structural() {
                c.rel = ParentRel::Argument;
            }
            self.children.push(c);
        }
        self
    }

    pub fn with_rel(mut self, rel: ParentRel) -> Self {
        self.rel = rel;
        self
    }

    pub fn with_multiplier(mut self, m: Rational) -> Self {
        self.multiplier = m;
        self
    }

    pub fn is(&self, name: &str) -> bool {
        &*self.name == name
    }

    pub fn is_sum(&self) -> bool {
        self.is(SUM)
    }

    pub fn is_prod(&self) -> bool {
        self.is(PROD)
    }

    pub fn is_list(&self) -> bool {
        self.is(LIST)
    }

    pub fn is_number(&self) -> bool {
        self.is(NUMBER) && self.children.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.multiplier.is_zero()
    }

    fn is_structural(&self) -> bool {
        matches!(&*self.name, SUM | PROD | LIST | EQUALS | ARROW)
    }

    /// Sub- and superscript children, in order.
    pub fn index_children(&self) -> impl Iterator<Item = &Node> {
        self.children.iter().filter(|c| c.rel.is_index())
    }

    pub fn argument_children(&self) -> impl Iterator<Item = &Node> {
        self.children.iter().filter(|c| !c.rel.is_index())
    }

    pub fn index_count(&self) -> usize {
        self.index_children().count()
    }

    /// Terms of a sum, or the node itself.
    pub fn terms(&self) -> Vec<&Node> {
        if self.is_sum() {
            self.children.iter().collect()
        } else {
            vec![self]
        }
    }

    /// Factors of a product, or the node itself.
    pub fn factors(&self) -> Vec<&Node> {
        if self.is_prod() {
            self.children.iter().collect()
        } else {
            vec![self]
        }
    }

    pub fn into_terms(self) -> Vec<Node> {
        if self.is_sum() {
            self.children
        } else {
            vec![self]
        }
    }

    pub fn at(&self, path: &[usize]) -> &Node {
        path.iter().fold(self, |n, &i| &n.children[i])
    }

    pub fn at_mut(&mut self, path: &[usize]) -> &mut Node {
        path.iter().fold(self, |n, &i| &mut n.children[i])
    }

    /// Visits every node in pre-order.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Node)) {
        f(self);
        for c in &self.children {
            c.walk(f);
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Node::size).sum::<usize>()
    }

    /// Copy of this node with the root multiplier set to one.
    pub fn unit(&self) -> Node {
        let mut n = self.clone();
        n.multiplier = Rational::one();
        n
    }
}

/// Structural equality. With `compare_multiplier` off the root multipliers
/// are ignored; descendants are always compared in full.
pub fn equal_subtree(a: &Node, b: &Node, compare_multiplier: bool) -> bool {
    if a.name != b.name
        || a.rel != b.rel
        || a.children.len() != b.children.len()
        || (compare_multiplier && a.multiplier != b.multiplier)
    {
        return false;
    }
    a.children
        .iter()
        .zip(&b.children)
        .all(|(x, y)| equal_subtree(x, y, true))
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        equal_subtree(self, other, true)
    }
}

impl Eq for Node {}

impl Hash for Node {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.name.hash(state);
        self.multiplier.hash(state);
        self.rel.hash(state);
        self.children.len().hash(state);
        for c in &self.children {
            c.hash(state);
        }
    }
}

/// Hash/Eq wrapper that ignores the root multiplier; used to collect terms.
#[derive(Clone, Copy)]
pub struct ShapeKey<'a>(pub &'a Node);

impl PartialEq for ShapeKey<'_> {
    fn eq(&self, other: &Self) -> bool {
        equal_subtree(self.0, other.0, false)
    }
}

impl Eq for ShapeKey<'_> {}

impl Hash for ShapeKey<'_> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.name.hash(state);
        self.0.rel.hash(state);
        self.0.children.len().hash(state);
        for c in &self.0.children {
            c.hash(state);
        }
    }
}

impl fmt::Debug for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::notation::print_tex(self))
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::notation::print_tex(self))
    }
}

/// Flattens nested sums and products, moves multipliers to term and
/// factor roots, drops zero terms. An empty sum becomes the number 0.
pub fn normalize(e: Node) -> Node {
    let rel = e.rel;
    let bracket = e.bracket;
    let mut out = normalize_inner(e);
    out.rel = rel;
    out.bracket = bracket;
    out
}

fn normalize_inner(mut e: Node) -> Node {
    let children = std::mem::take(&mut e.children);
    let children: Vec<Node> = children.into_iter().map(normalize).collect();
    if e.is_prod() {
        let mut mult = e.multiplier;
        let mut factors = Vec::with_capacity(children.len());
        for mut c in children {
            mult *= &c.multiplier;
            if c.is_prod() {
                factors.extend(c.children.into_iter().map(|mut f| {
                    f.rel = ParentRel::NoRelation;
                    f
                }));
            } else if !c.is_number() {
                c.multiplier = Rational::one();
                c.rel = ParentRel::NoRelation;
                c.bracket = Bracket::None;
                factors.push(c);
            }
            if mult.is_zero() {
                return Node::zero();
            }
        }
        return match factors.len() {
            0 => Node::number(mult),
            1 => {
                let mut f = factors.pop().unwrap();
                f.multiplier = mult;
                if f.is_sum() {
                    return normalize_inner(f);
                }
                f
            }
            _ => {
                e.children = factors;
                e.multiplier = mult;
                e
            }
        };
    }
    if e.is_sum() {
        let mult = e.multiplier;
        let mut terms = Vec::with_capacity(children.len());
        for c in children {
            if c.is_sum() {
                let inner = c.multiplier.clone();
                for mut t in c.children {
                    t.multiplier = &t.multiplier * &inner * &mult;
                    if !t.multiplier.is_zero() {
                        t.rel = ParentRel::NoRelation;
                        terms.push(t);
                    }
                }
            } else {
                let mut c = c;
                c.multiplier *= &mult;
                if !c.multiplier.is_zero() {
                    c.rel = ParentRel::NoRelation;
                    c.bracket = Bracket::None;
                    terms.push(c);
                }
            }
        }
        return match terms.len() {
            0 => Node::zero(),
            1 => terms.pop().unwrap(),
            _ => {
                e.children = terms;
                e.multiplier = Rational::one();
                e
            }
        };
    }
    e.children = children;
    if e.multiplier.is_zero() && !e.is_list() {
        return Node::zero();
    }
    e
}

/// Paths (child offsets from `n`) of every index slot visible at `n`.
///
/// Index-inheriting nodes (products, derivatives, accents, integrals and
/// anything declared `IndexInherit`) expose the indices of their arguments
/// first and then their own sub/superscripts.
pub fn index_paths(n: &Node, reg: &Registry) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    collect_index_paths(n, reg, &mut prefix, &mut out);
    out
}

fn collect_index_paths(
    n: &Node,
    reg: &Registry,
    prefix: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if n.is_sum() {
        if let Some(first) = n.children.first() {
            prefix.push(0);
            collect_index_paths(first, reg, prefix, out);
            prefix.pop();
        }
        return;
    }
    if reg.inherits_indices(n) {
        for (i, c) in n.children.iter().enumerate() {
            if !c.rel.is_index() {
                prefix.push(i);
                collect_index_paths(c, reg, prefix, out);
                prefix.pop();
            }
        }
    }
    for (i, c) in n.children.iter().enumerate() {
        if c.rel.is_index() && !c.is_number() && !reg.is_non_index(c) {
            prefix.push(i);
            out.push(prefix.clone());
            prefix.pop();
        }
    }
}

/// Every index slot visible to the outside world at `n`.
pub fn index_iterator<'a>(n: &'a Node, reg: &Registry) -> Vec<&'a Node> {
    index_paths(n, reg).iter().map(|p| n.at(p)).collect()
}

/// Index slots in plain pre-order (textual) order; used to decide the order
/// in which dummies get fresh names.
pub fn textual_index_paths(n: &Node, reg: &Registry) -> Vec<Vec<usize>> {
    fn go(n: &Node, reg: &Registry, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for (i, c) in n.children.iter().enumerate() {
            prefix.push(i);
            if c.rel.is_index() {
                if !c.is_number() && !reg.is_non_index(c) {
                    out.push(prefix.clone());
                }
            } else {
                go(c, reg, prefix, out);
            }
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, reg, &mut Vec::new(), &mut out);
    out
}
