//! Local simulation of the randomized greedy over edge copies: implicit
//! ranks, membership oracles and trail instrumentation.

mod oracle;
mod ranks;
mod view;

pub use oracle::{OracleSession, TrailStats};
pub use ranks::{eager_rank, splitmix64, PermutationProvider, RankKey, RankMode};
pub use view::NeighborView;
