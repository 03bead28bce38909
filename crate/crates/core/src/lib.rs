//! Exact computation of generalized symmetries of scalar evolution
//! equations `u_t = G(u, u_1, ..., u_d)` inside finite ansatz spaces, their
//! exponential-polynomial structure in selected variables, and a test for
//! symmetries depending explicitly on a chosen coordinate.

pub mod algebra;
pub mod cli;
pub mod engine;
pub mod jet;
pub mod structure;
