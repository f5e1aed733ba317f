//! Construction, counting and canonical classification of orbit matrices of
//! symmetric 2-designs under prescribed group actions.

pub(crate) mod canon;
pub mod design;
pub mod error;
pub mod format;
pub mod groups;
pub mod oracle;
pub mod row_types;
pub mod search;

pub use design::{
    check_row_sum, column_sums_ok, dual_integrality_ok, pair_product, pair_target, prefix_bound_ok,
    row_quadratic, row_quadratic_target, DesignParams, Entry, MatrixStatus, OrbitDistribution,
    PartialOrbitMatrix, Violation,
};
pub use error::{Error, Result};
pub use groups::{feasible_distributions, transitive_actions, FixedPointSpec, GroupName, GroupSpec, TransitiveAction};
pub use format::{parse_matrix, read_matrix_file, write_matrix_file, write_matrix_string};
pub use row_types::{ClassEntries, enumerate_types, fixed_block_types, Pin, PinKind, RowType, TypeQuery};
pub use search::{
    canonical_form, extend_one_row, max_completable_rows, run_search, verify_complete, verify_partial,
    EquivalenceClassKey, Pruning, SearchReport, SearchSpec,
};
