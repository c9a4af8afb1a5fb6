//! Values recomputed here from first principles, sharing no code with the
//! library beyond its rational type.

use meixner::bivariate::{monic_eval_raising, weight, RaisingTable};
use meixner::harness::random_bivariate;
use meixner::lorentz::reference_rotation;
use meixner::multivariate::{monic_eval_raising_d, MultiIndex};
use meixner::scalar::{int, ratio};
use meixner::univariate::meixner;
use meixner::{ExactSystem, ExactSystemD, Rational};
use num_traits::{One, Zero};

type M3 = [[Rational; 3]; 3];

fn mul(a: &M3, b: &M3) -> M3 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| &a[i][k] * &b[k][j]).sum()))
}

fn rot(s: Rational) -> M3 {
    let den = Rational::one() + &s * &s;
    let c = (Rational::one() - &s * &s) / &den;
    let sn = int(2) * &s / &den;
    [[c.clone(), sn.clone(), int(0)], [-sn, c, int(0)], [int(0), int(0), int(1)]]
}

fn boost2(t: Rational) -> M3 {
    let ch = (&t + t.recip()) / int(2);
    let sh = (&t - t.recip()) / int(2);
    [[int(1), int(0), int(0)], [int(0), ch.clone(), sh.clone()], [int(0), sh, ch]]
}

fn poch(x: &Rational, n: usize) -> Rational {
    (0..n).map(|j| x + int(j as i64)).product()
}

fn fact(n: usize) -> Rational {
    poch(&int(1), n)
}

fn pow(x: &Rational, n: usize) -> Rational {
    (0..n).fold(Rational::one(), |acc, _| acc * x)
}

/// Coefficient of `z1^m z2^n` in
/// `(1-z1-z2)^(-g) (1-u11 z1-u12 z2)^i (1-u21 z1-u22 z2)^k`, by explicit convolution.
fn coefficient(g: &Rational, i: usize, k: usize, u: &[[Rational; 2]; 2], m: usize, n: usize) -> Rational {
    let trinomial = |e: usize, p: usize, q: usize, x: &Rational, y: &Rational| -> Rational {
        if p + q > e {
            return Rational::zero();
        }
        fact(e) / (fact(p) * fact(q) * fact(e - p - q)) * pow(&-x.clone(), p) * pow(&-y.clone(), q)
    };
    let mut total = Rational::zero();
    for p1 in 0..=m {
        for q1 in 0..=n {
            for p2 in 0..=m - p1 {
                for q2 in 0..=n - q1 {
                    let (r, s) = (m - p1 - p2, n - q1 - q2);
                    let base = poch(g, r + s) / (fact(r) * fact(s));
                    total += base
                        * trinomial(i, p1, q1, &u[0][0], &u[0][1])
                        * trinomial(k, p2, q2, &u[1][0], &u[1][1]);
                }
            }
        }
    }
    total
}

fn monic_oracle(l: &M3, beta: &Rational, m: usize, n: usize, i: usize, k: usize) -> Rational {
    let u: [[Rational; 2]; 2] =
        std::array::from_fn(|a| std::array::from_fn(|b| &l[a][b] * &l[2][2] / (&l[a][2] * &l[2][b])));
    let g = beta + int((i + k) as i64);
    fact(m) * fact(n) / poch(beta, m + n) * coefficient(&g, i, k, &u, m, n)
}

fn reference_matrix() -> M3 {
    mul(&rot(ratio(1, 2)), &mul(&boost2(int(2)), &rot(ratio(2, 3))))
}

#[test]
fn reference_matrix_matches_library() {
    let l = reference_matrix();
    let lib = reference_rotation();
    for (r, row) in l.iter().enumerate() {
        for (c, x) in row.iter().enumerate() {
            assert_eq!(x, lib.entry(r, c));
        }
    }
    assert_eq!(l[2][2], ratio(5, 4));
}

#[test]
fn raising_route_matches_convolution() {
    let l = reference_matrix();
    for beta in [int(2), ratio(7, 3)] {
        let sys = ExactSystem::new(beta.clone(), reference_rotation()).unwrap();
        let table = RaisingTable::build(&sys, 4, 4, 4);
        for m in 0..=4 {
            for n in 0..=4 - m {
                for i in 0..=4 {
                    for k in 0..=4 {
                        assert_eq!(
                            table.get(m, n, i, k).unwrap(),
                            &monic_oracle(&l, &beta, m, n, i, k),
                            "m={m} n={n} i={i} k={k}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn seeded_system_matches_convolution() {
    let sys = random_bivariate::<Rational>(11, int(3), 3).unwrap();
    let l: M3 = std::array::from_fn(|r| std::array::from_fn(|c| sys.lambda().entry(r, c).clone()));
    for (m, n, i, k) in [(2, 1, 3, 0), (0, 3, 1, 2), (1, 1, 2, 2)] {
        assert_eq!(monic_eval_raising(&sys, m, n, i, k), monic_oracle(&l, &int(3), m, n, i, k));
    }
}

#[test]
fn weight_is_negative_trinomial() {
    let l = reference_matrix();
    let c1 = &l[0][2] * &l[0][2] / (&l[2][2] * &l[2][2]);
    let c2 = &l[1][2] * &l[1][2] / (&l[2][2] * &l[2][2]);
    let beta = int(3);
    let sys = ExactSystem::new(beta.clone(), reference_rotation()).unwrap();
    let head = pow(&(Rational::one() - &c1 - &c2), 3);
    for i in 0..6 {
        for k in 0..6 {
            let expect = &head * poch(&beta, i + k) / (fact(i) * fact(k)) * pow(&c1, i) * pow(&c2, k);
            assert_eq!(weight(&sys, i, k).unwrap(), expect);
        }
    }
}

#[test]
fn meixner_matches_explicit_sum_and_is_orthogonal() {
    let (delta, c) = (ratio(5, 2), ratio(2, 5));
    let explicit = |n: usize, x: usize| -> Rational {
        (0..=n.min(x))
            .map(|j| {
                // (-n)_j (-x)_j = n! x! / ((n-j)! (x-j)!)
                fact(n) / fact(n - j) * fact(x) / fact(x - j) / (poch(&delta, j) * fact(j))
                    * pow(&(Rational::one() - c.recip()), j)
            })
            .sum()
    };
    for n in 0..6 {
        for x in 0..8 {
            assert_eq!(meixner(n, &int(x as i64), &delta, &c).unwrap(), explicit(n, x));
        }
    }
    // sum_x (delta)_x / x! c^x M_m M_n = delta_mn n! / ((delta)_n c^n (1-c)^delta)
    let (d, cf) = (2.5f64, 0.4f64);
    for a in 0..4 {
        for b in 0..4 {
            let mut sum = 0.0;
            let mut w = 1.0;
            for x in 0..400 {
                if x > 0 {
                    w *= (d + (x - 1) as f64) / x as f64 * cf;
                }
                let ma = meixner(a, &(x as f64), &d, &cf).unwrap();
                let mb = meixner(b, &(x as f64), &d, &cf).unwrap();
                sum += w * ma * mb;
            }
            let norm: f64 = (1..=a).map(|j| j as f64 / ((d + (j - 1) as f64) * cf)).product::<f64>() / (1.0 - cf).powf(d);
            let expect = if a == b { norm } else { 0.0 };
            assert!((sum - expect).abs() < 1e-9 * norm.max(1.0), "a={a} b={b} {sum} vs {expect}");
        }
    }
}

#[test]
fn d_variable_raising_matches_convolution() {
    let l = reference_matrix();
    let sys = ExactSystemD::new(int(2), reference_rotation()).unwrap();
    for (m, n, i, k) in [(1, 2, 2, 1), (3, 0, 0, 4), (0, 0, 5, 5)] {
        let v = monic_eval_raising_d(&sys, &MultiIndex::new(vec![m, n]), &MultiIndex::new(vec![i, k])).unwrap();
        assert_eq!(v, monic_oracle(&l, &int(2), m, n, i, k));
    }
}
