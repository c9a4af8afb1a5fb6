//! Suite runner, seeded random systems, point evaluation and tables: the
//! library side of the command-line tool.

mod random;
mod suite;
mod table;

pub use random::{random_addition_cases, random_bivariate, random_rotation, random_system, AdditionCase, MAX_PARAMETER};
pub use suite::{
    check_factorization, check_general_sum, check_routes, error_exit_code, exit_code, factorization_parameters,
    general_parameters, run_suite, MatrixSource, Suite, SuiteConfig, ADDITION_CASES,
};
pub use table::{evaluate, monic_table, EvalRequest, EvalRoute, MonicTable, Quantity, TableRow};
