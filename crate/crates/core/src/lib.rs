//! Shotgun identification of random patterns on countable groups.
//!
//! A pattern `w` on a finite region `CK` of a group is observed only through
//! its reads: the `K`-shaped windows `sigma^c(w)(K)` at each center `c` in
//! `C`, with locations erased. The pattern is identifiable when every pattern
//! with the same multiset of reads is a C-preserving translate of it.
//!
//! The crate provides
//!
//! * concrete groups and finite-set algebra ([`group`]),
//! * patterns and i.i.d. sampling ([`pattern`], [`rng`]),
//! * the read operator and an exact preimage oracle ([`reads`]),
//! * a sound identifiability certificate based on overlap graphs ([`overlap`]),
//! * a sound non-identifiability certificate based on repeated shells ([`shells`]),
//! * exact repeat probabilities and bound evaluators ([`probability`]),
//! * scenario presets and Monte Carlo threshold experiments ([`simulate`]).
//!
//! ```
//! use shotgun_core::group::{lattice_cube, GroupCtx, GroupKind};
//! use shotgun_core::pattern::Pattern;
//! use shotgun_core::reads::{oracle_identifiable, Instance, DEFAULT_ORACLE_BUDGET};
//!
//! let z = GroupCtx::standard(GroupKind::Lattice { dim: 1 }).unwrap();
//! let inst = Instance::new(z, lattice_cube(1, 0, 1), lattice_cube(1, 0, 1), 2).unwrap();
//! let w = Pattern::from_digits(inst.ck().clone(), "010").unwrap();
//! let verdict = oracle_identifiable(&inst, &w, DEFAULT_ORACLE_BUDGET).unwrap();
//! assert!(!verdict.is_identifiable());
//! ```

pub mod error;
pub mod group;
pub mod overlap;
pub mod pattern;
pub mod probability;
pub mod reads;
pub mod rng;
pub mod shells;
pub mod simulate;

pub use error::{Error, Result};
pub use group::{Element, GroupCtx, GroupKind, Shape};
pub use pattern::{Pattern, ProbVector, Symbol};
pub use reads::Instance;
