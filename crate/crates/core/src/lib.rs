//! Finite-resolution constructions of compact null sets `K` whose difference
//! set `K K^-1` contains a neighborhood of the identity.
//!
//! * [`group`]: finite groups, subgroups, quotients and homomorphisms.
//! * [`diffbasis`]: difference bases `T T^-1 = F` of finite groups.
//! * [`tower`]: quotient towers of profinite groups and the covering recursion.
//! * [`cantor`]: exact interval unions and Cantor stages.
//! * [`lie`]: torus and Heisenberg instances with exact coordinates.

pub mod cantor;
pub mod diffbasis;
pub mod group;
pub mod lie;
pub mod rational;
pub mod tower;
