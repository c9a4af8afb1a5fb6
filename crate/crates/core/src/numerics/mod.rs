//! Exact combinatorial primitives and truncated multivariate power series.

mod series;
mod shells;

pub use series::{multi_indices, series_geom_pow, series_linear_pow, series_mul, Exponents, TruncatedSeries};
pub use shells::{shell_points, sum_shells, LnTables, ShellPolicy};

use crate::scalar::Scalar;

/// Rising factorial `x (x+1) ... (x+n-1)`; 1 when `n == 0`.
pub fn pochhammer<S: Scalar>(x: &S, n: usize) -> S {
    let mut acc = S::one();
    let mut term = x.clone();
    for _ in 0..n {
        acc = acc * term.clone();
        term = term + S::one();
    }
    acc
}

/// Falling factorial `x (x-1) ... (x-n+1)`.
pub fn falling<S: Scalar>(x: &S, n: usize) -> S {
    let mut acc = S::one();
    let mut term = x.clone();
    for _ in 0..n {
        acc = acc * term.clone();
        term = term - S::one();
    }
    acc
}

pub fn factorial<S: Scalar>(n: usize) -> S {
    (1..=n).fold(S::one(), |acc, j| acc * S::from_usize(j))
}

pub fn binomial<S: Scalar>(n: usize, k: usize) -> S {
    if k > n {
        return S::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(S::one(), |acc, j| acc * S::from_usize(n - j) / S::from_usize(j + 1))
}

/// Table `[(x)_0, (x)_1, ..., (x)_n]`.
pub fn pochhammer_table<S: Scalar>(x: &S, n: usize) -> Vec<S> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = S::one();
    out.push(acc.clone());
    for j in 0..n {
        acc = acc * (x.clone() + S::from_usize(j));
        out.push(acc.clone());
    }
    out
}

pub fn factorial_table<S: Scalar>(n: usize) -> Vec<S> {
    pochhammer_table(&S::one(), n)
}

/// Powers `[1, x, x^2, ..., x^n]`.
pub fn power_table<S: Scalar>(x: &S, n: usize) -> Vec<S> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = S::one();
    out.push(acc.clone());
    for _ in 0..n {
        acc = acc * x.clone();
        out.push(acc.clone());
    }
    out
}
