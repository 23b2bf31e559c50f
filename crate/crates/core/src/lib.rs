//! Exact construction and verification of partial geometric designs and
//! balanced incomplete block designs arising from degree-two linear group
//! actions on subsets of F_q^2.
//!
//! The crate is organized bottom-up:
//!
//! - [`gf`]: table-driven GF(q) arithmetic with discrete logarithms;
//! - [`cyclotomy`]: cyclotomic classes and numbers, distinguished plane
//!   subsets, developments of subsets of F_q;
//! - [`matgroup`]: enumeration of GL2/SL2/SA2 and their actions on row
//!   vectors;
//! - [`orbitstab`]: orbits, setwise stabilizers, transversals, and
//!   intersection-size profiles;
//! - [`design`]: incidence structures and the verification predicates
//!   (tactical, t-design, partial geometric, simplicity, feasibility);
//! - [`constructions`]: named builders for each design family with their
//!   claimed closed-form parameters and claim-by-claim verification;
//! - [`interchange`]: the JSON design file and report formats.

pub mod constructions;
pub mod cyclotomy;
pub mod design;
mod error;
pub mod gf;
pub mod interchange;
pub mod matgroup;
pub mod orbitstab;

pub use error::{Error, Result};
