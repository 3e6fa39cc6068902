//! Exact structure theory for finite-dimensional group-graded rings that
//! carry a family of positive-semidefinite inner products.
//!
//! The crate validates such rings, computes the connection relation on the
//! support of the grading, splits the ring into the graded ideals attached
//! to its connection classes and decides graded simplicity, both through
//! structural criteria and through a brute-force ideal-closure oracle.

pub mod cli;
pub mod connections;
pub mod decomposition;
pub mod generators;
pub mod group;
pub mod linalg;
pub mod properties;
pub mod report;
pub mod ring;
pub mod spec_file;
