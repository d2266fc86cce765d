//! Sublinear-time estimators for maximum path cover, (1,2)-TSP and graphic
//! TSP, with query accounting and exact small-instance oracles.
//!
//! The usual flow is to wrap a [`graph::SimpleGraph`] in a
//! [`graph::TspInstance`], run one of the estimators in [`estimators`] and
//! read the charged distance queries off the instance's ledger.

pub mod bench;
pub mod error;
pub mod estimators;
pub mod exact;
pub mod graph;
pub mod hat;
pub mod local;
pub mod port_greedy;

pub use error::{Error, Result};
