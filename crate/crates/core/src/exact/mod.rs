//! Exact baselines for small instances: path cover, TSP, bridges, matching,
//! the ratio programs and the chained bipartite reduction.

mod bridges;
mod held_karp;
mod matching;
mod path_cover;
mod ratio;
mod reduction;

pub use bridges::{bridges_by_deletion, cut_vertices_by_deletion, exact_bridges, exact_cut_vertices};
pub use held_karp::{exact_tsp, MAX_TSP_N};
pub use matching::{exact_max_matching, MatchingResult, MAX_GENERAL_MATCHING_N};
pub use path_cover::{exact_max_path_cover, exact_max_path_cover_with_order, path_cover_by_subset_dp};
pub use ratio::{solve_ratio_program, RatioProgram};
pub use reduction::build_reduction_prime;
