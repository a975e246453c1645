//! Model checking for alternating-time temporal logic (ATL, EATL, ATL+)
//! over three families of multi-agent structures: explicit concurrent
//! game structures, implicit (guard-based) ones, and alternating
//! transition systems.
//!
//! The crate provides:
//!
//! * the structure data model with validation and successor semantics
//!   ([`gamestruct`]);
//! * a formula language with four dialects ([`formula`]);
//! * controllable-predecessor kernels for the three structure kinds
//!   ([`cpre`]);
//! * fixpoint model checking, memoryless strategy synthesis and an
//!   independent brute-force oracle ([`checker`]);
//! * the six structure translations and an alternating-bisimulation
//!   checker ([`translate`]);
//! * hardness-gadget generators with brute-force ground truth, usable
//!   as self-validating test instances ([`reductions`]).

pub mod bitset;
pub mod checker;
pub mod cpre;
pub mod fixtures;
pub mod formula;
pub mod gamestruct;
pub mod manifest;
pub mod reductions;
pub mod sample;
pub mod translate;
