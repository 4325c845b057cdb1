//! Exact arithmetic for Markoff m-triples whose components come from
//! k-Fibonacci sequences.
//!
//! A Markoff m-triple is a positive integer solution of
//! x^2 + y^2 + z^2 = 3xyz + m.  This crate builds the solution forest
//! for a given m by Vieta moves, singles out the families whose
//! triples keep two components inside a k-Fibonacci sequence, and
//! checks those constructions against independent brute-force
//! searches.  Everything runs on arbitrary-precision integers and
//! rationals; no floating point is involved anywhere.
//!
//! The modules, in dependency order:
//!
//! * [`k_sequences`]: the k-Fibonacci and k-Lucas sequences, index
//!   lookup, and the product and residue identities the rest of the
//!   crate leans on.
//! * [`markoff_core`]: triples, the three Vieta moves, minimality,
//!   descent to a minimal root, and forest enumeration under a bound.
//! * [`principal_branches`]: the two-Fibonacci families themselves,
//!   their shared constant alpha(k, r), membership classification,
//!   branch roots with their labels, and the bounded enumeration of
//!   all such triples.
//! * [`oracle_search`]: brute-force searches and report types that
//!   re-derive the same objects without using the constructions, for
//!   cross-checking at desk scale.

pub mod k_sequences;
pub mod markoff_core;
pub mod oracle_search;
pub mod principal_branches;

pub use k_sequences::{Div3Class, SeqParams};
pub use markoff_core::{OrderedTriple, TreeNode, Triple, VietaMove};
pub use oracle_search::{ClassifiedTriple, Mismatch, OracleError, PathState, SearchReport};
pub use principal_branches::{AlphaValue, BranchRoot, BranchSpec, Classification, Parity};
