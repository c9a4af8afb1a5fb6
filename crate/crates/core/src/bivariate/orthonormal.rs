//! Weights, amplitudes, the orthonormal polynomials `M` and the matrix
//! elements they build, with the float-mode checks that involve them.

use crate::error::{Error, Result};
use crate::numerics::{factorial, pochhammer, shell_points, sum_shells, LnTables, ShellPolicy};
use crate::report::{point4, EvalReport, LatticeBox, Tally};
use crate::scalar::{FloatScalar, Rational, Scalar};

use super::routes::{monic_column_gf, monic_eval_gf, ColumnCache};
use super::MeixnerSystem;

/// `(beta)_{i+k} / (i! k!) a^i b^k`, accumulated factor by factor so large
/// arguments stay in range.
fn trinomial_term<S: Scalar>(beta: &S, i: usize, k: usize, a: &S, b: &S) -> S {
    let mut acc = S::one();
    for j in 0..i {
        acc = acc * (beta.clone() + S::from_usize(j)) / S::from_usize(j + 1) * a.clone();
    }
    for j in 0..k {
        acc = acc * (beta.clone() + S::from_usize(i + j)) / S::from_usize(j + 1) * b.clone();
    }
    acc
}

fn power<S: Scalar>(base: &S, e: &Rational, what: &str) -> Result<S> {
    base.pow_rational(e)
        .ok_or_else(|| Error::NotExact(format!("{what} = ({base})^({e}) is irrational; use float mode")))
}

/// Negative trinomial weight `(beta)_{i+k}/(i!k!) (1-c1-c2)^beta c1^i c2^k`.
pub fn weight<S: Scalar>(sys: &MeixnerSystem<S>, i: usize, k: usize) -> Result<S> {
    let base = S::one() - sys.c(0).clone() - sys.c(1).clone();
    let head = power(&base, sys.beta(), "(1-c1-c2)^beta")?;
    Ok(head * trinomial_term(sys.beta_scalar(), i, k, sys.c(0), sys.c(1)))
}

/// `W_{i,k}^2 = (beta)_{i+k}/(i!k!) L33^(-2beta-2i-2k) L13^(2i) L23^(2k)`.
pub fn amplitude_sq<S: Scalar>(sys: &MeixnerSystem<S>, i: usize, k: usize) -> Result<S> {
    let l33 = sys.entry(2, 2);
    let head = power(l33, &(sys.beta() * Rational::from_integer((-2).into())), "L33^(-2beta)")?;
    let a = sys.entry(0, 2).clone() * sys.entry(0, 2).clone() / (l33.clone() * l33.clone());
    let b = sys.entry(1, 2).clone() * sys.entry(1, 2).clone() / (l33.clone() * l33.clone());
    Ok(head * trinomial_term(sys.beta_scalar(), i, k, &a, &b))
}

/// Signed amplitude `W_{i,k} = sqrt((beta)_{i+k}/(i!k!)) L33^(-beta-i-k) L13^i L23^k`.
pub fn amplitude<F: FloatScalar>(sys: &MeixnerSystem<F>, i: usize, k: usize) -> F {
    let beta = *sys.beta_scalar();
    let l33 = *sys.entry(2, 2);
    let (a, b) = (*sys.entry(0, 2) / l33, *sys.entry(1, 2) / l33);
    let mut acc = l33.powf(-beta);
    for j in 0..i {
        acc = acc * ((beta + F::from_usize(j)) / F::from_usize(j + 1)).sqrt() * a;
    }
    for j in 0..k {
        acc = acc * ((beta + F::from_usize(i + j)) / F::from_usize(j + 1)).sqrt() * b;
    }
    acc
}

/// `(-1)^{m+n} sqrt((beta)_{m+n}/(m!n!)) L31^m L32^n / L33^{m+n}`, the factor
/// taking `R_{m,n}` to `M_{m,n}`.
pub fn orthonormal_prefactor<F: FloatScalar>(sys: &MeixnerSystem<F>, m: usize, n: usize) -> F {
    let beta = *sys.beta_scalar();
    let l33 = *sys.entry(2, 2);
    let norm = (pochhammer(&beta, m + n) / (factorial::<F>(m) * factorial::<F>(n))).sqrt();
    let sign = if (m + n).is_multiple_of(2) { F::one() } else { -F::one() };
    sign * norm * (*sys.entry(2, 0) / l33).powi(m as i32) * (*sys.entry(2, 1) / l33).powi(n as i32)
}

pub fn orthonormal_eval<F: FloatScalar>(sys: &MeixnerSystem<F>, m: usize, n: usize, i: usize, k: usize) -> F {
    orthonormal_prefactor(sys, m, n) * monic_eval_gf(sys, m, n, i, k)
}

/// `<i,k| F(L) |m,n> = W_{i,k} M_{m,n}(i,k)`.
pub fn matrix_element<F: FloatScalar>(sys: &MeixnerSystem<F>, i: usize, k: usize, m: usize, n: usize) -> F {
    amplitude(sys, i, k) * orthonormal_eval(sys, m, n, i, k)
}

/// Truncated Gram matrix `sum_{i,k} w_{i,k} M_{m,n}(i,k) M_{m',n'}(i,k)` over
/// the degree pairs of `degrees`, compared against the identity.
pub fn check_orthogonality<F: FloatScalar>(sys: &MeixnerSystem<F>, degrees: &LatticeBox, tol: f64) -> Result<EvalReport> {
    let degs = degrees.degrees();
    let top = degrees.max_degree();
    let pref: Vec<F> = degs.iter().map(|&(m, n)| orthonormal_prefactor(sys, m, n)).collect();
    let policy = ShellPolicy::new(tol);
    let ln = LnTables::new(*sys.beta_scalar(), 2 * policy.cap);
    let beta = *sys.beta_scalar();
    let ln_head = beta * (F::one() - *sys.c(0) - *sys.c(1)).ln();
    let (lc1, lc2) = (sys.c(0).ln(), sys.c(1).ln());
    let size = degs.len();
    let mut gram = vec![F::zero(); size * size];
    let shells = sum_shells(&policy, |s| {
        let mut magnitude = vec![F::zero(); size * size];
        for p in shell_points(2, s) {
            let (i, k) = (p[0], p[1]);
            let lw = ln.ln_multinomial(&[i, k]) + ln_head + F::from_usize(i) * lc1 + F::from_usize(k) * lc2;
            let w = lw.exp();
            let col = monic_column_gf(sys, top, i, k);
            let vals: Vec<F> = degs.iter().zip(&pref).map(|(&(m, n), p)| *p * *col.get(m, n).unwrap()).collect();
            for a in 0..size {
                for b in 0..size {
                    let t = w * vals[a] * vals[b];
                    gram[a * size + b] = gram[a * size + b] + t;
                    magnitude[a * size + b] = magnitude[a * size + b] + t.abs();
                }
            }
        }
        Ok(magnitude.iter().fold(0.0f64, |acc, x| acc.max(Scalar::to_f64(x))))
    })?;
    let mut tally = Tally::<F>::new("orthogonality", degrees, tol);
    for (a, &(m, n)) in degs.iter().enumerate() {
        for (b, &(mm, nn)) in degs.iter().enumerate() {
            let expect = if a == b { F::one() } else { F::zero() };
            tally.record(|| format!("(m,n)=({m},{n}) (m',n')=({mm},{nn})"), &gram[a * size + b], &expect);
        }
    }
    tally.note(format!("truncated after {shells} shells"));
    Ok(tally.finish())
}

/// The duality relation in orthonormal form:
/// `M_{i,k}(m,n) = (-1)^{i+k} sqrt((beta)_{i+k} m! n! / (i! k! (beta)_{m+n}))
///   L33^{m+n} L31^i L32^k / (L33^{i+k} L13^m L23^n) M~_{m,n}(i,k)`.
pub fn check_duality_orthonormal<F: FloatScalar>(sys: &MeixnerSystem<F>, lattice: &LatticeBox, tol: f64) -> Result<EvalReport> {
    let dual = sys.dual()?;
    let beta = *sys.beta_scalar();
    let l = |r: usize, c: usize| *sys.entry(r - 1, c - 1);
    let mut tally = Tally::<F>::new("duality-orthonormal", lattice, tol);
    for [m, n, i, k] in lattice.points() {
        let lhs = orthonormal_eval(sys, i, k, m, n);
        let ratio = pochhammer(&beta, i + k) * factorial::<F>(m) * factorial::<F>(n)
            / (factorial::<F>(i) * factorial::<F>(k) * pochhammer(&beta, m + n));
        let sign = if (i + k) % 2 == 0 { F::one() } else { -F::one() };
        let geometry = l(3, 3).powi((m + n) as i32) * l(3, 1).powi(i as i32) * l(3, 2).powi(k as i32)
            / (l(3, 3).powi((i + k) as i32) * l(1, 3).powi(m as i32) * l(2, 3).powi(n as i32));
        let rhs = sign * ratio.sqrt() * geometry * orthonormal_eval(&dual, m, n, i, k);
        tally.record(|| point4(m, n, i, k), &lhs, &rhs);
    }
    Ok(tally.finish())
}

/// The three-term recurrences for `M` in `m, n` (radical coefficients).
pub fn check_recurrence_orthonormal<F: FloatScalar>(sys: &MeixnerSystem<F>, lattice: &LatticeBox, tol: f64) -> Result<EvalReport> {
    let beta = *sys.beta_scalar();
    let top = lattice.max_degree() + 1;
    let prefs: Vec<Vec<F>> =
        (0..=top).map(|m| (0..=top - m).map(|n| orthonormal_prefactor(sys, m, n)).collect()).collect();
    let mut cache = ColumnCache::new(sys, top);
    let mut om = |m: isize, n: isize, i: usize, k: usize| -> F {
        if m < 0 || n < 0 {
            return F::zero();
        }
        prefs[m as usize][n as usize] * cache.r(m, n, i as isize, k as isize)
    };
    let l = |r: usize, c: usize| *sys.entry(r - 1, c - 1);
    let f = |x: usize| F::from_usize(x);
    let mut tally = Tally::<F>::new("recurrence-orthonormal", lattice, tol);
    for [m, n, i, k] in lattice.points() {
        let (mi, ni) = (m as isize, n as isize);
        let here = om(mi, ni, i, k);
        let s = f(m + n) + beta;
        let sides = [(1usize, f(i)), (2, f(k))];
        for (r, x) in sides {
            let lhs = x * here;
            let rhs = (f(m) * l(r, 1).powi(2) + f(n) * l(r, 2).powi(2) + s * l(r, 3).powi(2)) * here
                + l(r, 1) * l(r, 2)
                    * ((f(m) * f(n + 1)).sqrt() * om(mi - 1, ni + 1, i, k)
                        + (f(n) * f(m + 1)).sqrt() * om(mi + 1, ni - 1, i, k))
                + l(r, 1) * l(r, 3)
                    * ((f(m) * (s - F::one())).sqrt() * om(mi - 1, ni, i, k)
                        + (f(m + 1) * s).sqrt() * om(mi + 1, ni, i, k))
                + l(r, 2) * l(r, 3)
                    * ((f(n) * (s - F::one())).sqrt() * om(mi, ni - 1, i, k)
                        + (f(n + 1) * s).sqrt() * om(mi, ni + 1, i, k));
            tally.record(|| format!("row {r}: {}", point4(m, n, i, k)), &lhs, &rhs);
        }
    }
    Ok(tally.finish())
}
