//! Transformation commands acting on expressions.

pub mod collect;
pub mod distribute;
pub mod list;
pub mod pintegrate;
pub mod sort;
pub mod substitute;
pub mod vary;

pub use collect::collect_terms;
pub use distribute::{distribute, prodrule};
pub use list::list_sum;
pub use pintegrate::pintegrate;
pub use sort::{indexsort, prodsort};
pub use substitute::{substitute, CommandResult, Rule, RuleSet};
pub use vary::vary;
