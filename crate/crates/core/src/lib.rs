//! Decision procedures for finite relative generalized Boolean dynamical
//! systems: Conditions (L) and (K), maximal tails, hereditary saturated and
//! gauge-invariant ideal lattices, minimality and simplicity.

pub mod bds;
pub mod boolcore;
pub mod error;
pub mod format;
pub mod ideals;
pub mod oracle;
pub mod props;
pub mod relgen;
pub mod report;
pub mod topograph;

pub use bds::{apply_word, build_instance, Instance, InstanceSpec, Word};
pub use boolcore::{AtomUniverse, Element, PrincipalIdeal};
pub use error::{Error, ParseError, Result};
pub use format::{parse_instance, render_instance};
