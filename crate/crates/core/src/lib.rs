//! Exact computations with four-term exact sequences of group-ring modules
//! over metacyclic groups, bar-resolution cohomology, Bockstein and connecting
//! maps, and six-term exactness checks.

pub mod cli;
pub mod cohomology;
pub mod config;
pub mod group_ring;
pub mod groups;
pub mod report;
pub mod sequences;
pub mod suite;
pub mod znz;
