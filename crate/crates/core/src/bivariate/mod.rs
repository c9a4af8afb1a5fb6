//! Bivariate Meixner polynomials attached to generic elements of `SO(2,1)`.
//!
//! `R_{m,n}(i,k)` are the monic (radical-free) polynomials; `M_{m,n}(i,k)` the
//! orthonormal ones on the negative trinomial distribution.

mod addition;
mod checks;
mod orthonormal;
mod routes;
mod subgroups;
mod system;

pub use addition::{check_addition, check_addition_direct, matrix_element_direct, AdditionTuple, DirectElements};
pub use checks::{check_difference, check_duality, check_lowering, check_recurrence, check_recurrence_with};
pub use orthonormal::{
    amplitude, amplitude_sq, check_duality_orthonormal, check_orthogonality, check_recurrence_orthonormal,
    matrix_element, orthonormal_eval, orthonormal_prefactor, weight,
};
pub use routes::{
    monic_column_gf, monic_eval, monic_eval_gf, monic_eval_hyp, monic_eval_raising, ColumnCache, MonicColumn,
    RaisingTable, Route,
};
pub use subgroups::{
    boost_product, check_subgroup_unitarity, elliptic_me, factorized_eval, general_element, general_sum_eval,
    hyperbolic_me_psi, hyperbolic_me_xi, hyperbolic_values, trig_values, Subgroup,
};
pub use system::MeixnerSystem;
