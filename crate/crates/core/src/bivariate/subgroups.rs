//! One-parameter subgroups: their matrix elements in closed form, and the
//! closed forms for the polynomials of products of subgroup elements.
//!
//! Boosts take `t = e^xi > 0` and rotations `s = tan(theta/2)`, so every
//! hyperbolic and trigonometric factor is rational.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lorentz::{boost, compose, rotation, PseudoRotation};
use crate::numerics::{binomial, factorial, pochhammer, shell_points, sum_shells, ShellPolicy};
use crate::report::{EvalReport, Tally};
use crate::scalar::{int, FloatScalar, Rational, Scalar};
use crate::univariate::{krawtchouk, meixner};

use super::system::check_beta;

/// `(cosh, sinh, tanh)` for `t = e^xi`.
pub fn hyperbolic_values(t: &Rational) -> Result<(Rational, Rational, Rational)> {
    if !t.is_positive() || t.is_zero() {
        return Err(Error::InvalidParameter(format!("boost parameter must be positive, got {t}")));
    }
    let half = Rational::new(1.into(), 2.into());
    let ch = (t + t.recip()) * &half;
    let sh = (t - t.recip()) * &half;
    let th = &sh / &ch;
    Ok((ch, sh, th))
}

/// `(cos, sin, tan)` for `s = tan(theta/2)`; fails when `cos = 0`.
pub fn trig_values(s: &Rational) -> Result<(Rational, Rational, Rational)> {
    let s2 = s * s;
    let den = Rational::one() + &s2;
    let cos = (Rational::one() - &s2) / &den;
    let sin = s * int(2) / &den;
    if cos.is_zero() {
        return Err(Error::InvalidParameter(format!("rotation parameter {s} gives a quarter turn (tan undefined)")));
    }
    let tan = &sin / &cos;
    Ok((cos, sin, tan))
}

fn require_nontrivial_boost(t: &Rational) -> Result<(Rational, Rational, Rational)> {
    let v = hyperbolic_values(t)?;
    if v.1.is_zero() {
        return Err(Error::InvalidParameter("boost parameter t = 1 is the identity (tanh = 0)".into()));
    }
    Ok(v)
}

fn require_nontrivial_rotation(s: &Rational) -> Result<(Rational, Rational, Rational)> {
    if s.is_zero() {
        return Err(Error::InvalidParameter("rotation parameter s = 0 is the identity (sin = 0)".into()));
    }
    trig_values(s)
}

fn sign<F: FloatScalar>(odd: bool) -> F {
    if odd {
        -F::one()
    } else {
        F::one()
    }
}

fn to_float<F: FloatScalar>(r: &Rational) -> F {
    F::from_rational(r)
}

/// `<i,k| F(Xi) |m,n> = delta_{kn} (-1)^m sqrt((k+beta)_i (k+beta)_m / (i! m!))
///   cosh^{-k-beta} tanh^{i+m} M_m(i; k+beta; tanh^2)`.
pub fn hyperbolic_me_xi<F: FloatScalar>(beta: &Rational, t: &Rational, i: usize, k: usize, m: usize, n: usize) -> Result<F> {
    check_beta(beta)?;
    let (ch, _, th) = require_nontrivial_boost(t)?;
    if k != n {
        return Ok(F::zero());
    }
    let gamma = beta + int(k as i64);
    let poly = meixner(m, &int(i as i64), &gamma, &(&th * &th))?;
    let g: F = to_float(&gamma);
    let root = (pochhammer(&g, i) * pochhammer(&g, m) / (factorial::<F>(i) * factorial::<F>(m))).sqrt();
    Ok(sign::<F>(m % 2 == 1)
        * root
        * to_float::<F>(&ch).powf(-g)
        * to_float::<F>(&th).powi((i + m) as i32)
        * to_float::<F>(&poly))
}

/// `<i,k| F(Psi) |m,n> = delta_{im} (-1)^n sqrt((i+beta)_k (i+beta)_n / (k! n!))
///   cosh^{-i-beta} tanh^{k+n} M_n(k; i+beta; tanh^2)`.
pub fn hyperbolic_me_psi<F: FloatScalar>(beta: &Rational, t: &Rational, i: usize, k: usize, m: usize, n: usize) -> Result<F> {
    // the same element with the two oscillators exchanged
    hyperbolic_me_xi(beta, t, k, i, n, m)
}

/// `<i,k| F(R) |m,n> = delta_{i+k,m+n} (-1)^k sqrt(C(i+k,k) C(i+k,n))
///   cos^{i+k} tan^{k+n} K_n(k; sin^2; i+k)`.
///
/// The representation is independent of `beta` on the rotation subgroup.
pub fn elliptic_me<F: FloatScalar>(s: &Rational, i: usize, k: usize, m: usize, n: usize) -> Result<F> {
    let (cos, sin, tan) = require_nontrivial_rotation(s)?;
    if i + k != m + n {
        return Ok(F::zero());
    }
    let total = i + k;
    let poly = krawtchouk(n, &int(k as i64), &(&sin * &sin), total)?;
    let root = (binomial::<F>(total, k) * binomial::<F>(total, n)).sqrt();
    Ok(sign::<F>(k % 2 == 1)
        * root
        * to_float::<F>(&cos).powi(total as i32)
        * to_float::<F>(&tan).powi((k + n) as i32)
        * to_float::<F>(&poly))
}

/// `Psi(t_psi) Xi(t_xi)`.
pub fn boost_product(t_xi: &Rational, t_psi: &Rational) -> Result<PseudoRotation> {
    compose(&boost(1, t_psi, 2)?, &boost(0, t_xi, 2)?)
}

/// `R(s_chi) Psi(t_psi) R(s_theta)`.
pub fn general_element(s_chi: &Rational, t_psi: &Rational, s_theta: &Rational) -> Result<PseudoRotation> {
    let right = compose(&boost(1, t_psi, 2)?, &rotation((0, 1), s_theta, 2)?)?;
    compose(&rotation((0, 1), s_chi, 2)?, &right)
}

/// `R_{m,n}(i,k)` for `Psi(t_psi) Xi(t_xi)` as a product of two univariate
/// Meixner polynomials:
/// `(i+beta)_n/(beta)_n M_m(i; n+beta; tanh^2 xi) M_n(k; i+beta; tanh^2 psi)`.
pub fn factorized_eval<S: Scalar>(
    beta: &Rational,
    t_xi: &Rational,
    t_psi: &Rational,
    m: usize,
    n: usize,
    i: usize,
    k: usize,
) -> Result<S> {
    check_beta(beta)?;
    let (_, _, tx) = require_nontrivial_boost(t_xi)?;
    let (_, _, tp) = require_nontrivial_boost(t_psi)?;
    let b = S::from_rational(beta);
    let shift = |x: usize| S::from_rational(&(beta + int(x as i64)));
    let first = meixner(m, &S::from_usize(i), &shift(n), &S::from_rational(&(&tx * &tx)))?;
    let second = meixner(n, &S::from_usize(k), &shift(i), &S::from_rational(&(&tp * &tp)))?;
    Ok(pochhammer(&shift(i), n) / pochhammer(&b, n) * first * second)
}

/// `R_{m,n}(i,k)` for `R(s_chi) Psi(t_psi) R(s_theta)` as a single finite sum
/// of Krawtchouk-Meixner-Krawtchouk products:
///
/// ```text
/// (-tan^2 chi)^k (-tan^2 theta)^n sum_mu (-i-k)_mu (-m-n)_mu / (mu! (beta)_mu)
///   (tan chi tan theta sinh psi tanh psi)^{-mu}
///   K_{i+k-mu}(k; sin^2 chi; i+k) M_{m+n-mu}(i+k-mu; mu+beta; tanh^2 psi) K_n(m+n-mu; sin^2 theta; m+n)
/// ```
#[allow(clippy::too_many_arguments)]
pub fn general_sum_eval<S: Scalar>(
    beta: &Rational,
    s_chi: &Rational,
    t_psi: &Rational,
    s_theta: &Rational,
    m: usize,
    n: usize,
    i: usize,
    k: usize,
) -> Result<S> {
    check_beta(beta)?;
    let (_, sin_c, tan_c) = require_nontrivial_rotation(s_chi)?;
    let (_, sin_t, tan_t) = require_nontrivial_rotation(s_theta)?;
    let (_, sh, th) = require_nontrivial_boost(t_psi)?;
    let q = |r: &Rational| S::from_rational(r);
    let b = q(beta);
    let ratio = q(&(&tan_c * &tan_t * &sh * &th).recip());
    let (pc, pt, pth) = (q(&(&sin_c * &sin_c)), q(&(&sin_t * &sin_t)), q(&(&th * &th)));
    let (row, col) = (i + k, m + n);
    let mut sum = S::zero();
    let mut scale = S::one();
    for mu in 0..=row.min(col) {
        if mu > 0 {
            let j = S::from_usize(mu - 1);
            // (-row)_mu (-col)_mu / (mu! (beta)_mu) ratio^mu, built incrementally
            scale = scale * (j.clone() - S::from_usize(row)) * (j.clone() - S::from_usize(col)) * ratio.clone()
                / (S::from_usize(mu) * (b.clone() + j));
        }
        let left = krawtchouk(row - mu, &S::from_usize(k), &pc, row)?;
        let middle = meixner(col - mu, &S::from_usize(row - mu), &(b.clone() + S::from_usize(mu)), &pth)?;
        let right = krawtchouk(n, &S::from_usize(col - mu), &pt, col)?;
        sum = sum + scale.clone() * left * middle * right;
    }
    let front = |tan: &Rational, e: usize| q(&(-(tan * tan))).pow_int(e as i64).expect("non-negative power");
    Ok(front(&tan_c, k) * front(&tan_t, n) * sum)
}

/// Which one-parameter subgroup a unitarity check runs on.
#[derive(Debug, Clone, PartialEq)]
pub enum Subgroup {
    Xi(Rational),
    Psi(Rational),
    Rotation(Rational),
}

/// Columns `(m,n)` with `m + n <= max_degree` are orthonormal.
///
/// Hyperbolic columns are infinite and summed by shells; rotation matrix
/// elements live on finite blocks `i + k = m + n`.
pub fn check_subgroup_unitarity<F: FloatScalar>(
    beta: &Rational,
    subgroup: &Subgroup,
    max_degree: usize,
    tol: f64,
) -> Result<EvalReport> {
    let degs: Vec<(usize, usize)> =
        (0..=max_degree).flat_map(|m| (0..=max_degree - m).map(move |n| (m, n))).collect();
    let size = degs.len();
    let mut gram = vec![F::zero(); size * size];
    let me = |i: usize, k: usize, m: usize, n: usize| -> Result<F> {
        match subgroup {
            Subgroup::Xi(t) => hyperbolic_me_xi(beta, t, i, k, m, n),
            Subgroup::Psi(t) => hyperbolic_me_psi(beta, t, i, k, m, n),
            Subgroup::Rotation(s) => elliptic_me(s, i, k, m, n),
        }
    };
    let name = match subgroup {
        Subgroup::Xi(t) => format!("unitarity xi t={t}"),
        Subgroup::Psi(t) => format!("unitarity psi t={t}"),
        Subgroup::Rotation(s) => format!("unitarity rotation s={s}"),
    };
    let mut notes = Vec::new();
    let add_point = |i: usize, k: usize, gram: &mut Vec<F>| -> Result<f64> {
        let vals = degs.iter().map(|&(m, n)| me(i, k, m, n)).collect::<Result<Vec<F>>>()?;
        let mut mag = 0f64;
        for a in 0..size {
            for b in 0..size {
                let t = vals[a] * vals[b];
                gram[a * size + b] = gram[a * size + b] + t;
                mag = mag.max(Scalar::to_f64(&t.abs()));
            }
        }
        Ok(mag)
    };
    match subgroup {
        Subgroup::Rotation(_) => {
            for total in 0..=max_degree {
                for i in 0..=total {
                    add_point(i, total - i, &mut gram)?;
                }
            }
        }
        _ => {
            let policy = ShellPolicy::new(tol).with_min_shells(max_degree + 2);
            let shells = sum_shells(&policy, |s| {
                let mut mag = 0f64;
                for p in shell_points(2, s) {
                    mag += add_point(p[0], p[1], &mut gram)?;
                }
                Ok(mag)
            })?;
            notes.push(format!("truncated after {shells} shells"));
        }
    }
    let mut tally = Tally::<F>::new(&name, serde_json::json!({ "max_degree": max_degree }), tol);
    for (a, &(m, n)) in degs.iter().enumerate() {
        for (b, &(mm, nn)) in degs.iter().enumerate() {
            let expect = if a == b { F::one() } else { F::zero() };
            tally.record(|| format!("(m,n)=({m},{n}) (m',n')=({mm},{nn})"), &gram[a * size + b], &expect);
        }
    }
    for n in notes {
        tally.note(n);
    }
    Ok(tally.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bivariate::{matrix_element_direct, monic_eval_gf, MeixnerSystem};
    use crate::lorentz::{inverse_tilde, reference_rotation};
    use crate::scalar::ratio;

    #[test]
    fn parameter_values() {
        assert_eq!(hyperbolic_values(&int(2)).unwrap(), (ratio(5, 4), ratio(3, 4), ratio(3, 5)));
        assert_eq!(trig_values(&ratio(1, 2)).unwrap(), (ratio(3, 5), ratio(4, 5), ratio(4, 3)));
        assert!(trig_values(&int(1)).is_err());
        assert!(hyperbolic_values(&int(0)).is_err());
        assert!(hyperbolic_me_xi::<f64>(&int(2), &int(1), 0, 0, 0, 0).is_err());
    }

    #[test]
    fn one_parameter_examples() {
        let beta = int(2);
        assert_eq!(hyperbolic_me_xi::<f64>(&beta, &int(2), 1, 0, 1, 1).unwrap(), 0.0);
        let v: f64 = hyperbolic_me_xi(&beta, &int(2), 0, 3, 0, 3).unwrap();
        assert!((v - 1.25f64.powi(-5)).abs() < 1e-15);
        assert_eq!(hyperbolic_me_psi::<f64>(&beta, &int(3), 1, 2, 0, 2).unwrap(), 0.0);
        let v: f64 = hyperbolic_me_psi(&beta, &int(3), 2, 0, 2, 0).unwrap();
        assert!((v - (5.0f64 / 3.0).powi(-4)).abs() < 1e-15);
        assert_eq!(elliptic_me::<f64>(&ratio(1, 2), 1, 1, 1, 0).unwrap(), 0.0);
        assert_eq!(elliptic_me::<f64>(&ratio(1, 2), 0, 0, 0, 0).unwrap(), 1.0);
    }

    #[test]
    fn one_parameter_forms_match_direct_elements() {
        let beta = ratio(7, 3);
        type Element = Box<dyn Fn(usize, usize, usize, usize) -> f64>;
        let cases: Vec<(PseudoRotation, Element)> = vec![
            (boost(0, &int(2), 2).unwrap(), Box::new(|i, k, m, n| hyperbolic_me_xi(&ratio(7, 3), &int(2), i, k, m, n).unwrap())),
            (boost(0, &ratio(1, 3), 2).unwrap(), Box::new(|i, k, m, n| hyperbolic_me_xi(&ratio(7, 3), &ratio(1, 3), i, k, m, n).unwrap())),
            (boost(1, &int(3), 2).unwrap(), Box::new(|i, k, m, n| hyperbolic_me_psi(&ratio(7, 3), &int(3), i, k, m, n).unwrap())),
            (rotation((0, 1), &ratio(1, 2), 2).unwrap(), Box::new(|i, k, m, n| elliptic_me(&ratio(1, 2), i, k, m, n).unwrap())),
            (rotation((0, 1), &ratio(-3, 2), 2).unwrap(), Box::new(|i, k, m, n| elliptic_me(&ratio(-3, 2), i, k, m, n).unwrap())),
        ];
        for (l, closed) in cases {
            for i in 0..4 {
                for k in 0..4 {
                    for m in 0..4 {
                        for n in 0..4 {
                            let direct: f64 = matrix_element_direct(&l, &beta, i, k, m, n).unwrap();
                            let c = closed(i, k, m, n);
                            assert!((direct - c).abs() < 1e-12, "{i} {k} {m} {n}: {direct} vs {c}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn factorization_matches_generating_function() {
        for (tx, tp) in [(int(3), int(2)), (ratio(1, 3), int(2)), (int(3), ratio(1, 2))] {
            let s = MeixnerSystem::<Rational>::new(int(2), boost_product(&tx, &tp).unwrap()).unwrap();
            for m in 0..=3usize {
                for n in 0..=3 - m {
                    for i in 0..=3 {
                        for k in 0..=3 {
                            let f: Rational = factorized_eval(&int(2), &tx, &tp, m, n, i, k).unwrap();
                            assert_eq!(f, monic_eval_gf(&s, m, n, i, k));
                        }
                    }
                }
            }
        }
        assert_eq!(factorized_eval::<Rational>(&int(2), &int(3), &int(2), 0, 0, 4, 1).unwrap(), int(1));
    }

    #[test]
    fn general_sum_matches_generating_function_and_duality() {
        let (sc, tp, st) = (ratio(1, 2), int(2), ratio(2, 3));
        let l = general_element(&sc, &tp, &st).unwrap();
        assert_eq!(l, reference_rotation());
        let s = MeixnerSystem::<Rational>::new(int(2), l.clone()).unwrap();
        // the inverse is R(-s_theta) Psi(1/t) R(-s_chi)
        assert_eq!(inverse_tilde(&l), general_element(&-st.clone(), &tp.recip(), &-sc.clone()).unwrap());
        for m in 0..=3usize {
            for n in 0..=3 - m {
                for i in 0..=3 {
                    for k in 0..=3 {
                        let g: Rational = general_sum_eval(&int(2), &sc, &tp, &st, m, n, i, k).unwrap();
                        assert_eq!(g, monic_eval_gf(&s, m, n, i, k), "{m} {n} {i} {k}");
                        let dual: Rational =
                            general_sum_eval(&int(2), &-st.clone(), &tp.recip(), &-sc.clone(), i, k, m, n).unwrap();
                        assert_eq!(g, dual);
                    }
                }
            }
        }
    }

    #[test]
    fn subgroup_columns_are_orthonormal() {
        for g in [Subgroup::Xi(int(2)), Subgroup::Psi(int(3)), Subgroup::Rotation(ratio(1, 2))] {
            let tol = if matches!(g, Subgroup::Rotation(_)) { 1e-10 } else { 1e-8 };
            let r = check_subgroup_unitarity::<f64>(&int(2), &g, 3, tol).unwrap();
            assert!(r.pass, "{}", r.to_json());
        }
    }
}
