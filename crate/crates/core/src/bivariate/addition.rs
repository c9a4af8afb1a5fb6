//! Matrix elements computed straight from the group action, valid for any
//! element of `SO(2,1)`, and the addition formula that composes them.


use crate::error::{Error, Result};
use crate::lorentz::{compose, inverse_tilde, Matrix, PseudoRotation};
use crate::numerics::{series_linear_pow, shell_points, sum_shells, LnTables, ShellPolicy, TruncatedSeries};
use crate::report::{EvalReport, Tally};
use crate::scalar::{int, FloatScalar, Rational, Scalar};

use super::orthonormal::{amplitude, orthonormal_eval, orthonormal_prefactor};
use super::routes::monic_column_gf;
use super::system::check_beta;
use super::MeixnerSystem;

/// Evaluates
///
/// ```text
/// <x,y| F(L) |m,n> = sqrt((beta)_{x+y} m! n! / (x! y! (beta)_{m+n}))
///   [d1^m d2^n] (L13 + L11 d1 + L12 d2)^x (L23 + L21 d1 + L22 d2)^y (L33 + L31 d1 + L32 d2)^(-beta-x-y)
/// ```
///
/// with the large-argument factors carried in log scale. No entry of `L`
/// needs to be nonzero.
#[derive(Debug, Clone)]
pub struct DirectElements<F> {
    l: Matrix<F>,
    beta: Rational,
    beta_f: F,
    ln: LnTables<F>,
}

impl<F: FloatScalar> DirectElements<F> {
    /// Supports rows `x + y <= max_row`.
    pub fn new(lambda: &PseudoRotation, beta: &Rational, max_row: usize) -> Result<Self> {
        if lambda.d() != 2 {
            return Err(Error::DimensionMismatch(lambda.d(), 2));
        }
        check_beta(beta)?;
        let beta_f = F::from_rational(beta);
        Ok(DirectElements { l: lambda.to_scalar(), beta: beta.clone(), beta_f, ln: LnTables::new(beta_f, max_row) })
    }

    /// `<x,y| F(L) |m,n>` for all `m + n <= max_degree`, indexed `[m][n]`.
    pub fn row(&self, x: usize, y: usize, max_degree: usize) -> Result<Vec<Vec<F>>> {
        if x + y > self.ln.len() {
            return Err(Error::InvalidParameter(format!("row ({x},{y}) beyond table size {}", self.ln.len())));
        }
        let l = |r: usize, c: usize| *self.l.get(r, c);
        let cutoff = max_degree as u32;
        let zeros = || (0..=max_degree).map(|m| vec![F::zero(); max_degree + 1 - m]).collect();
        let l33 = l(2, 2);
        let mut log_scale = F::from_rational(&Rational::new(1.into(), 2.into())) * self.ln.ln_multinomial(&[x, y])
            - (self.beta_f + F::from_usize(x + y)) * l33.ln();
        let mut negative = false;
        let mut factors: Vec<TruncatedSeries<F>> = Vec::with_capacity(3);
        for (r, p) in [(0usize, x), (1, y)] {
            let a0 = l(r, 2);
            if a0.is_zero() {
                if p > max_degree {
                    return Ok(zeros());
                }
                factors.push(series_linear_pow(&F::zero(), &[l(r, 0), l(r, 1)], &int(p as i64), cutoff)?);
            } else {
                log_scale = log_scale + F::from_usize(p) * a0.abs().ln();
                negative ^= a0 < F::zero() && p % 2 == 1;
                factors.push(series_linear_pow(&F::one(), &[l(r, 0) / a0, l(r, 1) / a0], &int(p as i64), cutoff)?);
            }
        }
        let e = -(self.beta.clone() + int((x + y) as i64));
        factors.push(series_linear_pow(&F::one(), &[l(2, 0) / l33, l(2, 1) / l33], &e, cutoff)?);
        let product = factors[0].try_mul(&factors[1])?.try_mul(&factors[2])?;
        let scale = if negative { -log_scale.exp() } else { log_scale.exp() };
        let ln_fact: Vec<F> = (0..=max_degree).map(|j| ln_pochhammer(F::one(), j)).collect();
        let mut out: Vec<Vec<F>> = zeros();
        for (m, row) in out.iter_mut().enumerate() {
            for (n, v) in row.iter_mut().enumerate() {
                let norm = (ln_fact[m] + ln_fact[n] - ln_pochhammer(self.beta_f, m + n)).exp().sqrt();
                *v = product.coefficient(&[m as u32, n as u32])? * scale * norm;
            }
        }
        Ok(out)
    }
}

fn ln_pochhammer<F: FloatScalar>(x: F, n: usize) -> F {
    (0..n).fold(F::zero(), |acc, j| acc + (x + F::from_usize(j)).ln())
}

/// `<i,k| F(L) |m,n>` for any element `L` of `SO(2,1)`.
pub fn matrix_element_direct<F: FloatScalar>(
    lambda: &PseudoRotation,
    beta: &Rational,
    i: usize,
    k: usize,
    m: usize,
    n: usize,
) -> Result<F> {
    let rows = DirectElements::<F>::new(lambda, beta, i + k)?.row(i, k, m + n)?;
    Ok(rows[m][n])
}

/// Tuple `(i, k, m, n)` of an addition-formula check.
pub type AdditionTuple = [usize; 4];

fn label(t: &AdditionTuple) -> String {
    format!("i={} k={} m={} n={}", t[0], t[1], t[2], t[3])
}

/// `<i,k|F(AB)|m,n> = sum_{rho,sigma} <i,k|F(A)|rho,sigma> <rho,sigma|F(B)|m,n>`,
/// every factor evaluated directly, so `A`, `B` need not be generic.
///
/// Rows of `F(A)` are read as columns of `F(A~)`, its inverse and transpose.
pub fn check_addition_direct<F: FloatScalar>(
    a: &PseudoRotation,
    b: &PseudoRotation,
    beta: &Rational,
    tuple: AdditionTuple,
    tol: f64,
) -> Result<EvalReport> {
    let [i, k, m, n] = tuple;
    let c = compose(a, b)?;
    let lhs: F = matrix_element_direct(&c, beta, i, k, m, n)?;
    let policy = ShellPolicy::new(tol).with_min_shells((i + k).max(m + n) + 2);
    let left = DirectElements::<F>::new(&inverse_tilde(a), beta, 2 * policy.cap)?;
    let right = DirectElements::<F>::new(b, beta, 2 * policy.cap)?;
    let mut rhs = F::zero();
    let shells = sum_shells(&policy, |s| {
        let mut mag = 0f64;
        for p in shell_points(2, s) {
            let t = left.row(p[0], p[1], i + k)?[i][k] * right.row(p[0], p[1], m + n)?[m][n];
            rhs = rhs + t;
            mag += Scalar::to_f64(&t.abs());
        }
        Ok(mag)
    })?;
    let mut tally = Tally::<F>::new("addition", serde_json::json!({ "tuple": tuple }), tol);
    tally.record(|| label(&tuple), &lhs, &rhs);
    tally.note(format!("truncated after {shells} shells"));
    Ok(tally.finish())
}

/// The addition formula in amplitude/polynomial form, for generic `A`, `B`
/// and `C = AB`:
///
/// ```text
/// W_{i,k}(C)/W_{i,k}(A) M_{m,n}(i,k;C) = sum_{rho,sigma} W_{rho,sigma}(B) M_{rho,sigma}(i,k;A) M_{m,n}(rho,sigma;B)
/// ```
///
/// `M_{rho,sigma}(i,k;A)` is evaluated through duality as
/// `P_{rho,sigma}(A) R~_{i,k}(rho,sigma)` so only low degrees are expanded.
pub fn check_addition<F: FloatScalar>(
    a: &PseudoRotation,
    b: &PseudoRotation,
    beta: &Rational,
    tuple: AdditionTuple,
    tol: f64,
) -> Result<EvalReport> {
    let [i, k, m, n] = tuple;
    let sa = MeixnerSystem::<F>::new(beta.clone(), a.clone())?;
    let sb = MeixnerSystem::<F>::new(beta.clone(), b.clone())?;
    let sc = MeixnerSystem::<F>::new(beta.clone(), compose(a, b)?)?;
    let dual_a = sa.dual()?;
    let lhs = amplitude(&sc, i, k) / amplitude(&sa, i, k) * orthonormal_eval(&sc, m, n, i, k);

    let e = |s: &MeixnerSystem<F>, r: usize, c: usize| *s.entry(r, c);
    let policy = ShellPolicy::new(tol).with_min_shells((i + k).max(m + n) + 2);
    let ln = LnTables::new(*sb.beta_scalar(), 2 * policy.cap);
    let (a33, b33) = (e(&sa, 2, 2), e(&sb, 2, 2));
    // W_{rho,sigma}(B) (-1)^{rho+sigma} sqrt(..) (A31/A33)^rho (A32/A33)^sigma
    let g1 = -e(&sa, 2, 0) * e(&sb, 0, 2) / (a33 * b33);
    let g2 = -e(&sa, 2, 1) * e(&sb, 1, 2) / (a33 * b33);
    let head = -*sb.beta_scalar() * b33.ln();
    let pb = orthonormal_prefactor(&sb, m, n);
    let mut rhs = F::zero();
    let shells = sum_shells(&policy, |s| {
        let mut mag = 0f64;
        for p in shell_points(2, s) {
            let (rho, sigma) = (p[0], p[1]);
            let lw = ln.ln_multinomial(&[rho, sigma])
                + head
                + F::from_usize(rho) * g1.abs().ln()
                + F::from_usize(sigma) * g2.abs().ln();
            let negative = (g1 < F::zero() && rho % 2 == 1) != (g2 < F::zero() && sigma % 2 == 1);
            let weight = if negative { -lw.exp() } else { lw.exp() };
            let dual_r = *monic_column_gf(&dual_a, i + k, rho, sigma).get(i, k).expect("in range");
            let r_b = *monic_column_gf(&sb, m + n, rho, sigma).get(m, n).expect("in range");
            let t = weight * dual_r * pb * r_b;
            rhs = rhs + t;
            mag += Scalar::to_f64(&t.abs());
        }
        Ok(mag)
    })?;
    let mut tally = Tally::<F>::new("addition-generic", serde_json::json!({ "tuple": tuple }), tol);
    tally.record(|| label(&tuple), &lhs, &rhs);
    tally.note(format!("truncated after {shells} shells"));
    Ok(tally.finish())
}
