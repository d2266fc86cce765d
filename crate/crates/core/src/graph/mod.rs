//! Ground-truth graphs, the counting distance oracle and graph text I/O.

mod instance;
mod ledger;
mod simple;

pub use instance::{MetricKind, QueryObserver, TspInstance};
pub use ledger::{LedgerSnapshot, Phase, PhaseGuard, QueryLedger};
pub use simple::{SimpleGraph, UNREACHABLE};
