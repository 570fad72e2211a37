//! Exact supercharacter theories of small abelian groups.
//!
//! The supported groups are `C_p`, `C_2 × C_2`, `C_p × C_2`, `(C_2)^3` and
//! `C_p × C_2 × C_2` for an odd prime `p`, together with the subgroups and
//! quotients that appear while building theories of those.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod classify;
pub mod construct;
pub mod cyclo;
pub mod enumerate;
pub mod group;
pub mod oracle;
pub mod partition;
pub mod theory;

pub use cyclo::{CycError, CycInt};
pub use group::{Element, Character, Family, GroupError, GroupSpec, Subgroup};
pub use partition::{Partition, PartitionError};
pub use construct::{ConstructError, WedgeSpec};
pub use enumerate::{CountReport, Counts, EnumError, Provenance, Tag, TheoryRecord};
pub use oracle::{OracleError, OracleOptions};
pub use theory::{Theory, TheoryError, TheoryKey, Violation};
