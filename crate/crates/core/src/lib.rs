//! Exact combinatorics for the permutation classes `Av(3214, 3241, 4213, 4231)`
//! and `Av(3124, 3142, 4123, 4132)`, both counted by central binomial
//! coefficients through a common map to Dyck prefixes.
//!
//! * [`perm`]: permutations, pattern containment, statistics and the
//!   left-to-right-maximum structure of both classes.
//! * [`path`]: Dyck prefixes and their factor statistics.
//! * [`bijection`]: the map `Φ`, its two inverses and related maps.
//! * [`census`]: exhaustive generation, distribution tables and the
//!   verification suite.
//! * [`series`] and [`gf`]: exact truncated power series and the closed-form
//!   generating functions.

pub mod bijection;
pub mod census;
pub mod combi;
pub mod error;
pub mod gf;
pub mod path;
pub mod perm;
pub mod series;

pub use bijection::{
    juxtaposition_split, dyck_extension, phi, phi1_inverse, phi2_inverse, phi_inverse, phi_unchecked,
    psi_delete_last, ClassTag,
};
pub use census::{
    class_count, count_avoiding_long_decreasing, distribution, generate_class, head_table, verify_suite,
    DistributionTable, Statistic, VerifyReport,
};
pub use error::{Error, Result};
pub use gf::{build, coefficient, narayana, SeriesName};
pub use path::{
    classify, count_prefixes_by_height, cut_step_index, enumerate_prefixes, features, last_return_split,
    parse_path, LastReturnSplit, LatticePath, PathFeatures, PathKind, Step,
};
pub use perm::{
    avoids_basis, contains_pattern, is_connected, longest_decreasing_length, ltr_decompose, renormalize,
    stat_record, validate_t1_structure, validate_t2_structure, LtrDecomposition, PatternBasis, Permutation,
    StatRecord,
};
pub use series::TruncatedSeries;
