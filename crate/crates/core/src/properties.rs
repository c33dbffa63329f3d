//! Properties attached to symbols through patterns, and the rules by which
//! nodes inherit or compute properties from their children.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expr::{Name, Node, INT, PROD};
use crate::index::IndexSet;
use crate::symmetry::YoungTableau;

/// A symbol pattern from the left-hand side of a `::` declaration.
///
/// `q#` is a name family (q1, q2, ...); `\partial{#}` matches the symbol
/// with any children; otherwise the number of indices must agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pattern {
    pub name: Name,
    pub family: bool,
    pub any_children: bool,
    pub arity: usize,
}

impl Pattern {
    pub fn symbol(name: &str) -> Self {
        Pattern {
            name: Arc::from(name),
            family: false,
            any_children: false,
            arity: 0,
        }
    }

    pub fn from_node(n: &Node) -> Self {
        let (name, family) = match n.name.strip_suffix('#') {
            Some(stem) if !stem.is_empty() => (Arc::from(stem), true),
            _ => (n.name.clone(), false),
        };
        Pattern {
            name,
            family,
            any_children: n.children.iter().any(|c| c.is("#")),
            arity: n.index_count(),
        }
    }

    pub fn matches_name(&self, name: &str) -> bool {
        if self.family {
            name.strip_prefix(&*self.name).is_some_and(is_positive_integer)
        } else {
            name == &*self.name
        }
    }

    pub fn matches(&self, n: &Node) -> bool {
        self.matches_name(&n.name) && (self.any_children || self.family || n.index_count() == self.arity)
    }
}

pub(crate) fn is_positive_integer(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) && !s.starts_with('0')
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        if self.family {
            write!(f, "#")?;
        } else if self.any_children {
            write!(f, "{{#}}")?;
        } else if self.arity > 0 {
            write!(f, "_{{{}}}", self.arity)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PropertyKind {
    Indices,
    Integer,
    Symmetric,
    AntiSymmetric,
    TableauSymmetry,
    RiemannTensor,
    WeylTensor,
    KroneckerDelta,
    Derivative,
    PartialDerivative,
    Depends,
    AntiCommuting,
    SelfAntiCommuting,
    NonCommuting,
    CommutingAsProduct,
    CommutingAsSum,
    SortOrder,
    Spinor,
    GammaMatrix,
    Accent,
    DiracBar,
    PropertyInherit,
    /// Inheritance restricted to one property kind, named in the arguments.
    Inherit,
    IndexInherit,
    NonIndex,
}

impl PropertyKind {
    pub fn parse(name: &str) -> Option<Self> {
        use PropertyKind::*;
        Some(match name {
            "Indices" => Indices,
            "Integer" => Integer,
            "Symmetric" => Symmetric,
            "AntiSymmetric" => AntiSymmetric,
            "TableauSymmetry" => TableauSymmetry,
            "RiemannTensor" => RiemannTensor,
            "WeylTensor" => WeylTensor,
            "KroneckerDelta" => KroneckerDelta,
            "Derivative" => Derivative,
            "PartialDerivative" => PartialDerivative,
            "Depends" => Depends,
            "AntiCommuting" => AntiCommuting,
            "SelfAntiCommuting" => SelfAntiCommuting,
            "NonCommuting" => NonCommuting,
            "CommutingAsProduct" => CommutingAsProduct,
            "CommutingAsSum" => CommutingAsSum,
            "SortOrder" => SortOrder,
            "Spinor" => Spinor,
            "GammaMatrix" => GammaMatrix,
            "Accent" => Accent,
            "DiracBar" => DiracBar,
            "PropertyInherit" => PropertyInherit,
            "Inherit" => Inherit,
            "IndexInherit" => IndexInherit,
            "NonIndex" => NonIndex,
            _ => return None,
        })
    }

    /// Kinds that describe index symmetry; at most one per pattern.
    pub fn is_symmetry(self) -> bool {
        use PropertyKind::*;
        matches!(
            self,
            Symmetric | AntiSymmetric | TableauSymmetry | RiemannTensor | WeylTensor
        )
    }

    pub fn is_list_attached(self) -> bool {
        use PropertyKind::*;
        matches!(self, AntiCommuting | NonCommuting | SortOrder)
    }

    /// Kinds that accents, derivatives and `PropertyInherit` nodes pass up
    /// from their argument.
    fn inheritable(self) -> bool {
        use PropertyKind::*;
        matches!(
            self,
            Symmetric
                | AntiSymmetric
                | TableauSymmetry
                | RiemannTensor
                | WeylTensor
                | AntiCommuting
                | SelfAntiCommuting
                | NonCommuting
                | Spinor
                | GammaMatrix
                | SortOrder
        )
    }

    fn makes_inheriting(self) -> bool {
        use PropertyKind::*;
        matches!(
            self,
            Accent | PropertyInherit | DiracBar | Derivative | PartialDerivative
        )
    }
}

impl fmt::Display for PropertyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyRecord {
    pub kind: PropertyKind,
    /// Keyword arguments; positional arguments use keys "0", "1", ...
    pub args: BTreeMap<String, String>,
    /// Full member list for list-attached kinds.
    pub list_members: Vec<Pattern>,
    /// Explicit tableau for `TableauSymmetry`.
    pub tableau: Option<YoungTableau>,
}

impl PropertyRecord {
    pub fn new(kind: PropertyKind) -> Self {
        PropertyRecord {
            kind,
            args: BTreeMap::new(),
            list_members: Vec::new(),
            tableau: None,
        }
    }

    pub fn with_arg(mut self, key: &str, value: &str) -> Self {
        self.args.insert(key.to_string(), value.to_string());
        self
    }

    pub fn with_tableau(mut self, t: YoungTableau) -> Self {
        self.tableau = Some(t);
        self
    }

    pub fn arg(&self, key: &str) -> Option<&str> {
        self.args.get(key).map(String::as_str)
    }

    /// First positional argument, or the named one.
    pub fn arg_or_positional(&self, key: &str) -> Option<&str> {
        self.arg(key).or_else(|| self.arg("0"))
    }

    pub fn is_traceless(&self) -> bool {
        self.kind == PropertyKind::WeylTensor
    }

    /// The tableau this record imposes on `n_slots` own slots.
    pub fn tableau_for(&self, n_slots: usize) -> Option<YoungTableau> {
        use PropertyKind::*;
        match self.kind {
            Symmetric if n_slots > 1 => Some(YoungTableau::symmetric(0..n_slots)),
            AntiSymmetric if n_slots > 1 => Some(YoungTableau::antisymmetric(0..n_slots)),
            RiemannTensor | WeylTensor if n_slots == 4 => Some(YoungTableau::riemann()),
            TableauSymmetry => self.tableau.clone(),
            _ => None,
        }
    }
}

impl fmt::Display for PropertyRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        let args: Vec<String> = self
            .args
            .iter()
            .map(|(k, v)| {
                if k.parse::<usize>().is_ok() {
                    v.clone()
                } else {
                    format!("{k}={v}")
                }
            })
            .collect();
        if !args.is_empty() {
            write!(f, "({})", args.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
struct Entry {
    pattern: Pattern,
    record: Arc<PropertyRecord>,
}

/// Ordered map from patterns to property records, plus the declared
/// index sets.
#[derive(Clone, Debug, Default)]
pub struct Registry {
    entries: Vec<Entry>,
    index_sets: Vec<IndexSet>,
    warnings: Vec<String>,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn index_sets(&self) -> &[IndexSet] {
        &self.index_sets
    }

    /// Registers a parsed `symbols::Property(args)` line.
    pub fn declare_parsed(&mut self, d: &crate::notation::Declaration) -> Result<()> {
        let kind = PropertyKind::parse(&d.property)
            .ok_or_else(|| Error::InvalidDeclaration(format!("unknown property {}", d.property)))?;
        let patterns: Vec<Pattern> = d.patterns.iter().map(Pattern::from_node).collect();
        let mut record = PropertyRecord::new(kind);
        for (k, v) in &d.args {
            record = record.with_arg(k, v);
        }
        self.declare(&patterns, record)
    }

    /// Attaches `record` to every pattern.
    pub fn declare(&mut self, patterns: &[Pattern], mut record: PropertyRecord) -> Result<()> {
        if patterns.is_empty() {
            return Err(Error::InvalidDeclaration("empty pattern list".into()));
        }
        use PropertyKind::*;
        match record.kind {
            Indices => return self.declare_indices(patterns, &record),
            Integer => self.apply_integer_range(patterns, &record)?,
            TableauSymmetry => {
                if record.tableau.is_none() {
                    record.tableau = Some(parse_tableau_args(&record)?);
                }
            }
            _ => {}
        }
        if record.kind.is_symmetry() {
            for p in patterns {
                if let Some(e) = self
                    .entries
                    .iter()
                    .find(|e| &e.pattern == p && e.record.kind.is_symmetry() && e.record.kind != record.kind)
                {
                    return Err(Error::ConflictingProperty {
                        pattern: p.to_string(),
                        existing: e.record.to_string(),
                        new: record.to_string(),
                    });
                }
            }
        }
        if record.kind.is_list_attached() {
            record.list_members = patterns.to_vec();
            if record.kind == SortOrder {
                self.check_sort_order_overlap(patterns);
            }
        }
        let record = Arc::new(record);
        for p in patterns {
            let slot = self
                .entries
                .iter_mut()
                .find(|e| &e.pattern == p && e.record.kind == record.kind && !record.kind.is_list_attached());
            match slot {
                Some(e) => e.record = record.clone(),
                None => self.entries.push(Entry {
                    pattern: p.clone(),
                    record: record.clone(),
                }),
            }
        }
        Ok(())
    }

    fn declare_indices(&mut self, patterns: &[Pattern], record: &PropertyRecord) -> Result<()> {
        let set_name = record
            .arg_or_positional("name")
            .unwrap_or("default")
            .to_string();
        let mut set = IndexSet::new(&set_name);
        for p in patterns {
            if p.family {
                set.generator = Some(p.name.to_string());
            } else {
                set.members.push(p.name.to_string());
            }
        }
        if let Some(existing) = self.index_sets.iter_mut().find(|s| s.name == set_name) {
            set.dimension = existing.dimension;
            *existing = set;
        } else {
            self.index_sets.push(set);
        }
        Ok(())
    }

    fn apply_integer_range(&mut self, patterns: &[Pattern], record: &PropertyRecord) -> Result<()> {
        let Some(range) = record.arg_or_positional("range") else {
            return Ok(());
        };
        let (lo, hi) = range
            .split_once("..")
            .ok_or_else(|| Error::InvalidDeclaration(format!("bad Integer range {range}")))?;
        let parse = |s: &str| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| Error::InvalidDeclaration(format!("bad Integer range {range}")))
        };
        let (lo, hi) = (parse(lo)?, parse(hi)?);
        if hi < lo {
            return Err(Error::InvalidDeclaration(format!("empty Integer range {range}")));
        }
        let dim = (hi - lo + 1) as usize;
        for set in &mut self.index_sets {
            if patterns.iter().any(|p| set.contains(&p.name)) {
                set.dimension = Some(dim);
            }
        }
        Ok(())
    }

    fn check_sort_order_overlap(&mut self, patterns: &[Pattern]) {
        for e in &self.entries {
            if e.record.kind == PropertyKind::SortOrder && patterns.contains(&e.pattern) {
                self.warnings.push(format!(
                    "{} appears in more than one SortOrder list; each list keeps its own order",
                    e.pattern
                ));
            }
        }
    }

    /// The index set a name belongs to, if any.
    pub fn index_set_of(&self, name: &str) -> Option<&IndexSet> {
        self.index_sets.iter().find(|s| s.contains(name))
    }

    pub fn index_set_position(&self, name: &str) -> Option<usize> {
        self.index_sets.iter().position(|s| s.contains(name))
    }

    /// Direct match on the node itself, ignoring inheritance.
    pub fn direct(&self, n: &Node, kind: PropertyKind) -> Option<&Arc<PropertyRecord>> {
        self.entries
            .iter()
            .find(|e| e.record.kind == kind && e.pattern.matches(n))
            .map(|e| &e.record)
    }

    fn direct_any(&self, n: &Node, pred: impl Fn(PropertyKind) -> bool) -> Option<&Arc<PropertyRecord>> {
        self.entries
            .iter()
            .find(|e| pred(e.record.kind) && e.pattern.matches(n))
            .map(|e| &e.record)
    }

    pub fn has(&self, n: &Node, kind: PropertyKind) -> bool {
        self.direct(n, kind).is_some()
    }

    /// Resolves a property: direct match, then inheritance through accents,
    /// derivatives and `PropertyInherit`/`Inherit` nodes.
    pub fn query(&self, n: &Node, kind: PropertyKind) -> Option<Arc<PropertyRecord>> {
        if let Some(r) = self.direct(n, kind) {
            return Some(r.clone());
        }
        if !kind.inheritable() {
            return None;
        }
        let forwards = self.direct_any(n, PropertyKind::makes_inheriting).is_some()
            || self
                .direct(n, PropertyKind::Inherit)
                .is_some_and(|r| r.arg_or_positional("kind") == Some(&kind.to_string()));
        if !forwards {
            return None;
        }
        n.argument_children().find_map(|c| self.query(c, kind))
    }

    /// Every property visible on the node, for diagnostics.
    pub fn describe(&self, n: &Node) -> Vec<String> {
        let mut out: Vec<String> = self
            .entries
            .iter()
            .filter(|e| e.pattern.matches(n))
            .map(|e| e.record.to_string())
            .collect();
        for set in &self.index_sets {
            if set.contains(&n.name) {
                out.push(format!("Indices({})", set.name));
                if let Some(d) = set.dimension {
                    out.push(format!("Integer(0..{})", d - 1));
                }
            }
        }
        out
    }

    pub fn is_derivative(&self, n: &Node) -> bool {
        self.has(n, PropertyKind::Derivative) || self.has(n, PropertyKind::PartialDerivative)
    }

    pub fn is_accent(&self, n: &Node) -> bool {
        self.has(n, PropertyKind::Accent)
            || self.has(n, PropertyKind::PropertyInherit)
            || self.has(n, PropertyKind::DiracBar)
    }

    /// Whether `n` makes the indices of its arguments visible.
    pub fn inherits_indices(&self, n: &Node) -> bool {
        matches!(&*n.name, PROD | INT)
            || self
                .direct_any(n, |k| {
                    k.makes_inheriting() || k == PropertyKind::IndexInherit || k == PropertyKind::Inherit
                })
                .is_some()
    }

    pub fn is_non_index(&self, n: &Node) -> bool {
        self.has(n, PropertyKind::NonIndex)
    }

    /// Tableau acting on the slots of `n` (as returned by `index_paths`),
    /// including the one a derivative inherits from its argument.
    pub fn tableau(&self, n: &Node) -> Option<YoungTableau> {
        let own = n.index_children().filter(|c| !c.is_number() && !self.is_non_index(c)).count();
        if let Some(r) = self.direct_any(n, PropertyKind::is_symmetry) {
            let t = r.tableau_for(own)?;
            let offset = crate::expr::index_paths(n, self).len() - own;
            return Some(shift_tableau(&t, offset));
        }
        if self.direct_any(n, PropertyKind::makes_inheriting).is_some() {
            let mut args = n.argument_children();
            if let (Some(a), None) = (args.next(), args.next()) {
                return self.tableau(a);
            }
        }
        None
    }

    /// Position in the first `SortOrder` list containing `n`.
    pub fn sort_position(&self, n: &Node) -> Option<usize> {
        let r = self.query(n, PropertyKind::SortOrder)?;
        let atom = self.first_atom(n);
        r.list_members.iter().position(|p| p.matches(atom))
    }

    fn first_atom<'a>(&self, n: &'a Node) -> &'a Node {
        if self.direct_any(n, PropertyKind::makes_inheriting).is_some() {
            if let Some(a) = n.argument_children().next() {
                return self.first_atom(a);
            }
        }
        n
    }

    fn atoms<'a>(&self, n: &'a Node, out: &mut Vec<&'a Node>) {
        if n.is_number() {
            return;
        }
        if n.is_prod() {
            for c in &n.children {
                self.atoms(c, out);
            }
            return;
        }
        let inheriting = self.direct_any(n, PropertyKind::makes_inheriting).is_some()
            || self.has(n, PropertyKind::Inherit)
            || self.has(n, PropertyKind::CommutingAsProduct);
        if inheriting {
            for c in n.argument_children() {
                self.atoms(c, out);
            }
            return;
        }
        out.push(n);
    }

    fn atom_sign(&self, x: &Node, y: &Node) -> Option<i32> {
        let gamma = |n: &Node| self.has(n, PropertyKind::GammaMatrix);
        let spinor = |n: &Node| self.has(n, PropertyKind::Spinor);
        // matrices act on spinors and on each other in a fixed order
        if (gamma(x) && (gamma(y) || spinor(y))) || (spinor(x) && gamma(y)) {
            return None;
        }
        for e in &self.entries {
            if !e.pattern.matches(x) {
                continue;
            }
            match e.record.kind {
                PropertyKind::NonCommuting | PropertyKind::AntiCommuting => {
                    let members = &e.record.list_members;
                    let xi = members.iter().position(|p| p == &e.pattern);
                    let hit = members
                        .iter()
                        .enumerate()
                        .any(|(i, p)| Some(i) != xi && p.matches(y));
                    if hit {
                        return if e.record.kind == PropertyKind::NonCommuting {
                            None
                        } else {
                            Some(-1)
                        };
                    }
                }
                PropertyKind::SelfAntiCommuting if e.pattern.matches(y) => return Some(-1),
                _ => {}
            }
        }
        Some(1)
    }

    /// Sign picked up when exchanging two adjacent factors; `None` when
    /// they do not commute in any definite way.
    pub fn commutation_sign(&self, a: &Node, b: &Node) -> Option<i32> {
        if a.is_sum() {
            return uniform(a.children.iter().map(|t| self.commutation_sign(t, b)));
        }
        if b.is_sum() {
            return uniform(b.children.iter().map(|t| self.commutation_sign(a, t)));
        }
        let (mut xa, mut xb) = (Vec::new(), Vec::new());
        self.atoms(a, &mut xa);
        self.atoms(b, &mut xb);
        let mut sign = 1;
        for x in &xa {
            for y in &xb {
                sign *= self.atom_sign(x, y)?;
            }
        }
        Some(sign)
    }
}

fn uniform(signs: impl Iterator<Item = Option<i32>>) -> Option<i32> {
    let mut out = None;
    for s in signs {
        let s = s?;
        match out {
            None => out = Some(s),
            Some(prev) if prev != s => return None,
            _ => {}
        }
    }
    out.or(Some(1))
}

fn shift_tableau(t: &YoungTableau, offset: usize) -> YoungTableau {
    if offset == 0 {
        return t.clone();
    }
    YoungTableau {
        rows: t.rows.iter().map(|r| r.iter().map(|s| s + offset).collect()).collect(),
    }
}

fn parse_int_list(s: &str) -> Result<Vec<usize>> {
    s.trim()
        .trim_start_matches('{')
        .trim_end_matches('}')
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidDeclaration(format!("bad integer list {s}")))
        })
        .collect()
}

/// `TableauSymmetry(shape={2,2}, indices={0,2,1,3})`
fn parse_tableau_args(r: &PropertyRecord) -> Result<YoungTableau> {
    let shape = r
        .arg("shape")
        .ok_or_else(|| Error::InvalidDeclaration("TableauSymmetry needs shape=".into()))?;
    let indices = r
        .arg("indices")
        .ok_or_else(|| Error::InvalidDeclaration("TableauSymmetry needs indices=".into()))?;
    YoungTableau::from_shape(&parse_int_list(shape)?, &parse_int_list(indices)?)
}
