//! Computer algebra for field-theory expressions.
//!
//! Expressions are trees whose nodes know how they hang off their parent
//! (sub/superscript, argument). A property registry gives symbols meaning,
//! and tensor symmetries, including multi-term identities such as the
//! cyclic Riemann identity, are handled with Young projectors.

pub mod algorithms;
pub mod error;
pub mod expr;
pub mod index;
pub mod notation;
pub mod properties;
pub mod rational;
pub mod session;
pub mod symmetry;

pub use error::{Error, Result};
pub use expr::{Expression, Node, ParentRel};
pub use notation::{parse, print_tex};
pub use properties::{PropertyKind, PropertyRecord, Registry};
pub use rational::Rational;
pub use session::{Printed, ScriptOutcome, Session};
