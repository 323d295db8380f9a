//! Exact p-adic computation of analytic and Greenberg L-invariants for the
//! adjoint of a weight-one form, and cross-checks between them.

mod fp_poly;
pub mod galois;
pub mod linv;
pub mod group;
mod lattice;
pub mod numfield;
pub mod padic;
pub mod poly;
pub mod repcheck;
pub mod selftest;
