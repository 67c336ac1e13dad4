//! Exact computation of Pareto-optimal equitable allocations of divisible
//! items among three players.
//!
//! Items live as points on a 2-simplex; the supporting segments joining them
//! to the player corners form an arrangement whose vertices index the faces
//! of the Pareto surface. A convex support function descends over that graph
//! to the face meeting the egalitarian ray, and the equal-value allocation is
//! read off the face with at most two fractured items. Everything runs on
//! arbitrary-precision rationals; independent oracles (an exact maxmin LP,
//! grid sweeps, brute-force support checks) cross-validate the results.

pub mod error;
pub mod fixtures;
pub mod generate;
pub mod geometry;
pub mod graph;
mod hull;
pub mod io;
mod lp;
pub mod model;
pub mod oracle;
pub mod rational;
pub mod solver;

pub use error::{Error, Result};
pub use geometry::{
    classify_region, disputants_at, geometric_claim, item_point, normalize_point, rd_map,
    s_independent, segment_intersection, DisputeRecord, ItemClaim, RegionClass, SegmentMeet,
    SimplexPoint, SupportSegment,
};
pub use graph::{
    build_graph, classify_vertex, face_allocation_census, face_allocation_values, par_allocation,
    Arc, Census, Composite, FaceClass, FaceVertex, ParResult, RnsGraph,
};
pub use model::{
    allocation_value, enumerate_integer_allocations, enumerate_integer_allocations_with_cap,
    integer_allocation_value, AllocationMatrix, Instance, IntegerAllocation, Player, ValueVector,
    DEFAULT_ENUMERATION_CAP,
};
pub use oracle::{
    grid_min_g, hyperplane_support_check, hyperplane_support_check_with_cap,
    instance_from_rns_points, maxmin_lp, LpSolution,
};
pub use solver::{
    delta_prime, directional_derivative, extract_equitable, g_tilde, g_value, shift_direction,
    simple_descent, solve, steepest_descent, Algorithm, EquitableSolution, ItemSplit, ShiftSense,
    ShiftVector, SolveReport, SplitPattern,
};
