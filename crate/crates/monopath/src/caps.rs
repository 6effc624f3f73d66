//! Default limits for the exhaustive operations.
//!
//! Every enumeration in this crate grows at least factorially, so the
//! functions that walk a full word space, box grid, or flip graph take an
//! explicit cap and refuse inputs above it with [`crate::Error::CapExceeded`].
//! These constants are the defaults the CLI starts from; the `--cap` flag and
//! the `MONOPATH_CAP` environment variable override them per invocation.

/// Largest `n` for which full word enumeration is allowed by default.
pub const WORD_ENUMERATION: usize = 12;

/// Largest `n` for which flip-graph searches run by default.
pub const FLIP_BFS: usize = 10;

/// Largest `d` for the maximum-incoherency census over `(2, …, 2)`.
pub const INCOHERENCY_CENSUS: usize = 4;

/// Largest point count `q^d` scanned by the finite-field counter.
pub const FIELD_GRID: u128 = 1_000_000;

/// Largest number of lattice points listed for a box.
pub const BOX_POINTS: u128 = 1_000_000;

/// Largest `d` for which all `d!` upper-facet paths are enumerated.
pub const PERMUTATION_DIM: usize = 8;
