//! One-variable Meixner and Krawtchouk polynomials.
//!
//! Both are terminating Gauss series `2F1(-n, -x; b; z)` and are summed term by
//! term with the ratio `(j-n)(j-x) z / ((b+j)(j+1))`.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `sum_{j=0}^{n} (-n)_j (-x)_j / ((b)_j j!) z^j`, stopping early once a term
/// vanishes. Fails if a needed `(b)_j` is zero.
fn terminating_2f1<S: Scalar>(n: usize, x: &S, b: &S, z: &S) -> Result<S> {
    let mut sum = S::one();
    let mut term = S::one();
    for j in 0..n {
        let jj = S::from_usize(j);
        let num = (jj.clone() - S::from_usize(n)) * (jj.clone() - x.clone());
        if num.is_zero() {
            break;
        }
        let den = b.clone() + jj.clone();
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        term = term * num * z.clone() / (den * (jj + S::one()));
        sum = sum + term.clone();
    }
    Ok(sum)
}

/// Meixner polynomial `M_n(x; delta, c) = 2F1(-n, -x; delta; 1 - 1/c)`.
pub fn meixner<S: Scalar>(n: usize, x: &S, delta: &S, c: &S) -> Result<S> {
    if c.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let z = S::one() - S::one() / c.clone();
    terminating_2f1(n, x, delta, &z)
}

/// Monic Meixner polynomial `m_n(x)` from the three-term recurrence
/// `x m_n = m_{n+1} + (n + (n+delta) c)/(1-c) m_n + n (n+delta-1) c/(1-c)^2 m_{n-1}`.
///
/// Related to [`meixner`] by `M_n = ((c-1)/c)^n / (delta)_n * m_n`.
pub fn monic_meixner<S: Scalar>(n: usize, x: &S, delta: &S, c: &S) -> Result<S> {
    let one_minus_c = S::one() - c.clone();
    if one_minus_c.is_zero() {
        return Err(Error::InvalidParameter("monic Meixner needs c != 1".into()));
    }
    let mut prev = S::zero();
    let mut cur = S::one();
    for k in 0..n {
        let kk = S::from_usize(k);
        let diag = (kk.clone() + (kk.clone() + delta.clone()) * c.clone()) / one_minus_c.clone();
        let off = kk.clone() * (kk + delta.clone() - S::one()) * c.clone()
            / (one_minus_c.clone() * one_minus_c.clone());
        let next = (x.clone() - diag) * cur.clone() - off * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Krawtchouk polynomial `K_n(x; p, N) = 2F1(-n, -x; -N; 1/p)`, `n <= N`.
///
/// `x` may be any scalar; the series is polynomial in `x`.
pub fn krawtchouk<S: Scalar>(n: usize, x: &S, p: &S, big_n: usize) -> Result<S> {
    if n > big_n {
        return Err(Error::InvalidParameter(format!("Krawtchouk degree {n} exceeds N = {big_n}")));
    }
    if p.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let z = S::one() / p.clone();
    terminating_2f1(n, x, &-S::from_usize(big_n), &z)
}
