//! Three independent evaluations of the monic polynomials `R_{m,n}(i,k)`.

use std::collections::HashMap;

use crate::numerics::{factorial_table, pochhammer_table, series_geom_pow, power_table};
use crate::scalar::{int, Scalar};

use super::MeixnerSystem;

/// `R_{m,n}(i,k)` for every `m + n <= max_degree` at one argument `(i, k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonicColumn<S> {
    values: Vec<Vec<S>>,
}

impl<S: Scalar> MonicColumn<S> {
    pub fn max_degree(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, m: usize, n: usize) -> Option<&S> {
        self.values.get(m).and_then(|row| row.get(n))
    }
}

/// Coefficients of
/// `(1-z1-z2)^(-beta-i-k) (1-u11 z1-u12 z2)^i (1-u21 z1-u22 z2)^k`,
/// rescaled by `m! n! / (beta)_{m+n}`.
pub fn monic_column_gf<S: Scalar>(sys: &MeixnerSystem<S>, max_degree: usize, i: usize, k: usize) -> MonicColumn<S> {
    let cutoff = max_degree as u32;
    let exponent = -(sys.beta().clone() + int((i + k) as i64));
    let base = series_geom_pow(&[S::one(), S::one()], &exponent, cutoff);
    let first = series_geom_pow(&[sys.u(0, 0).clone(), sys.u(0, 1).clone()], &int(i as i64), cutoff);
    let second = series_geom_pow(&[sys.u(1, 0).clone(), sys.u(1, 1).clone()], &int(k as i64), cutoff);
    let product = base.try_mul(&first).and_then(|p| p.try_mul(&second)).expect("common shape");
    let poch = pochhammer_table(sys.beta_scalar(), max_degree);
    let fact: Vec<S> = factorial_table(max_degree);
    let values = (0..=max_degree)
        .map(|m| {
            (0..=max_degree - m)
                .map(|n| {
                    let c = product.coefficient(&[m as u32, n as u32]).expect("within cutoff");
                    c * fact[m].clone() * fact[n].clone() / poch[m + n].clone()
                })
                .collect()
        })
        .collect();
    MonicColumn { values }
}

pub fn monic_eval_gf<S: Scalar>(sys: &MeixnerSystem<S>, m: usize, n: usize, i: usize, k: usize) -> S {
    monic_column_gf(sys, m + n, i, k).get(m, n).cloned().expect("degree in range")
}

/// Finite Gel'fand-Aomoto sum over `mu + nu <= m`, `rho + sigma <= n`,
/// `mu + rho <= i`, `nu + sigma <= k`.
pub fn monic_eval_hyp<S: Scalar>(sys: &MeixnerSystem<S>, m: usize, n: usize, i: usize, k: usize) -> S {
    let neg = |x: usize| pochhammer_table(&-S::from_usize(x), x);
    let (pm, pn, pi, pk) = (neg(m), neg(n), neg(i), neg(k));
    let top = m + n;
    let pb = pochhammer_table(sys.beta_scalar(), top);
    let fact: Vec<S> = factorial_table(top.max(1));
    let w = |a: usize, b: usize| power_table(&(S::one() - sys.u(a, b).clone()), top);
    let (w11, w21, w12, w22) = (w(0, 0), w(1, 0), w(0, 1), w(1, 1));
    let mut sum = S::zero();
    for mu in 0..=m.min(i) {
        for nu in 0..=(m - mu).min(k) {
            for rho in 0..=n.min(i - mu) {
                for sigma in 0..=(n - rho).min(k - nu) {
                    let num = pm[mu + nu].clone()
                        * pn[rho + sigma].clone()
                        * pi[mu + rho].clone()
                        * pk[nu + sigma].clone()
                        * w11[mu].clone()
                        * w21[nu].clone()
                        * w12[rho].clone()
                        * w22[sigma].clone();
                    let den = fact[mu].clone()
                        * fact[nu].clone()
                        * fact[rho].clone()
                        * fact[sigma].clone()
                        * pb[mu + nu + rho + sigma].clone();
                    sum = sum + num / den;
                }
            }
        }
    }
    sum
}

/// Values of `R^{(beta)}_{m,n}(i,k)` on `m + n <= max_degree`, `i <= max_i`,
/// `k <= max_k`, built by the monic raising relations
///
/// ```text
/// beta R^(beta)_{m+1,n}(i,k) = (i+k+beta) R'(i,k) - u11 i R'(i-1,k) - u21 k R'(i,k-1)
/// beta R^(beta)_{m,n+1}(i,k) = (i+k+beta) R'(i,k) - u12 i R'(i-1,k) - u22 k R'(i,k-1)
/// ```
///
/// with `R' = R^(beta+1)_{m,n}`, descending from `R^(beta+max_degree)_{0,0} = 1`.
#[derive(Debug, Clone)]
pub struct RaisingTable<S> {
    max_degree: usize,
    max_i: usize,
    max_k: usize,
    // grids[m][n][i * (max_k + 1) + k]
    grids: Vec<Vec<Vec<S>>>,
}

impl<S: Scalar> RaisingTable<S> {
    pub fn build(sys: &MeixnerSystem<S>, max_degree: usize, max_i: usize, max_k: usize) -> Self {
        let width = max_k + 1;
        let cells = (max_i + 1) * width;
        let ones = vec![S::one(); cells];
        // level l holds R^(beta+l)_{a,b} for a + b <= max_degree - l
        let mut level: Vec<Vec<Vec<S>>> = vec![vec![ones.clone()]];
        for l in (0..max_degree).rev() {
            let b = sys.beta_scalar().clone() + S::from_usize(l);
            let span = max_degree - l;
            let mut next: Vec<Vec<Vec<S>>> = (0..=span).map(|a| Vec::with_capacity(span + 1 - a)).collect();
            for (a, row) in next.iter_mut().enumerate() {
                for c in 0..=span - a {
                    if a == 0 && c == 0 {
                        row.push(ones.clone());
                        continue;
                    }
                    // raise in m when possible, otherwise in n
                    let (prev, dir) = if a > 0 { (&level[a - 1][c], 0) } else { (&level[a][c - 1], 1) };
                    let (ui, uk) = (sys.u(0, dir), sys.u(1, dir));
                    let mut grid = Vec::with_capacity(cells);
                    for i in 0..=max_i {
                        for k in 0..=max_k {
                            let mut v = (S::from_usize(i + k) + b.clone()) * prev[i * width + k].clone();
                            if i > 0 {
                                v = v - ui.clone() * S::from_usize(i) * prev[(i - 1) * width + k].clone();
                            }
                            if k > 0 {
                                v = v - uk.clone() * S::from_usize(k) * prev[i * width + k - 1].clone();
                            }
                            grid.push(v / b.clone());
                        }
                    }
                    row.push(grid);
                }
            }
            level = next;
        }
        RaisingTable { max_degree, max_i, max_k, grids: level }
    }

    pub fn get(&self, m: usize, n: usize, i: usize, k: usize) -> Option<&S> {
        if m + n > self.max_degree || i > self.max_i || k > self.max_k {
            return None;
        }
        self.grids[m][n].get(i * (self.max_k + 1) + k)
    }
}

pub fn monic_eval_raising<S: Scalar>(sys: &MeixnerSystem<S>, m: usize, n: usize, i: usize, k: usize) -> S {
    RaisingTable::build(sys, m + n, i, k).get(m, n, i, k).cloned().expect("in range")
}

/// Evaluation route selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Raising,
    GeneratingFunction,
    Hypergeometric,
}

pub fn monic_eval<S: Scalar>(sys: &MeixnerSystem<S>, route: Route, m: usize, n: usize, i: usize, k: usize) -> S {
    match route {
        Route::Raising => monic_eval_raising(sys, m, n, i, k),
        Route::GeneratingFunction => monic_eval_gf(sys, m, n, i, k),
        Route::Hypergeometric => monic_eval_hyp(sys, m, n, i, k),
    }
}

/// Memoized generating-function columns for one system and degree cutoff.
///
/// Out-of-range indices (any negative) read as zero; every identity that
/// reaches them multiplies by a vanishing coefficient.
pub struct ColumnCache<'a, S: Scalar> {
    sys: &'a MeixnerSystem<S>,
    max_degree: usize,
    columns: HashMap<(usize, usize), MonicColumn<S>>,
}

impl<'a, S: Scalar> ColumnCache<'a, S> {
    pub fn new(sys: &'a MeixnerSystem<S>, max_degree: usize) -> Self {
        ColumnCache { sys, max_degree, columns: HashMap::new() }
    }

    pub fn r(&mut self, m: isize, n: isize, i: isize, k: isize) -> S {
        if m < 0 || n < 0 || i < 0 || k < 0 {
            return S::zero();
        }
        let (sys, d) = (self.sys, self.max_degree);
        let col = self
            .columns
            .entry((i as usize, k as usize))
            .or_insert_with(|| monic_column_gf(sys, d, i as usize, k as usize));
        col.get(m as usize, n as usize).cloned().expect("degree within cache cutoff")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::reference_rotation;
    use crate::scalar::{ratio, Rational};

    fn sys(beta: Rational) -> MeixnerSystem<Rational> {
        MeixnerSystem::new(beta, reference_rotation()).unwrap()
    }

    #[test]
    fn trivial_values() {
        let s = sys(int(2));
        for m in 0..4 {
            for n in 0..4 {
                assert_eq!(monic_eval_gf(&s, m, n, 0, 0), int(1));
                assert_eq!(monic_eval_hyp(&s, m, n, 0, 0), int(1));
                assert_eq!(monic_eval_raising(&s, m, n, 0, 0), int(1));
            }
        }
        for i in 0..4 {
            assert_eq!(monic_eval_gf(&s, 0, 0, i, 3), int(1));
            assert_eq!(monic_eval_hyp(&s, 0, 0, i, 3), int(1));
        }
    }

    #[test]
    fn degree_one_is_affine() {
        // R_{1,0}(i,k) = 1 + (1 - u11) i / beta + (1 - u21) k / beta
        let s = sys(ratio(7, 3));
        let b = s.beta().clone();
        for i in 0..4 {
            for k in 0..4 {
                let expect = int(1)
                    + (int(1) - s.u(0, 0)) * int(i) / &b
                    + (int(1) - s.u(1, 0)) * int(k) / &b;
                assert_eq!(monic_eval_gf(&s, 1, 0, i as usize, k as usize), expect);
                assert_eq!(monic_eval_raising(&s, 1, 0, i as usize, k as usize), expect);
            }
        }
    }

    #[test]
    fn routes_agree_on_canonical_system() {
        for beta in [int(2), ratio(3, 2)] {
            let s = sys(beta);
            let table = RaisingTable::build(&s, 4, 5, 5);
            for m in 0..=4usize {
                for n in 0..=4 - m {
                    for i in 0..=5 {
                        for k in 0..=5 {
                            let gf = monic_eval_gf(&s, m, n, i, k);
                            assert_eq!(&gf, table.get(m, n, i, k).unwrap(), "raising {m} {n} {i} {k}");
                            assert_eq!(gf, monic_eval_hyp(&s, m, n, i, k), "hyp {m} {n} {i} {k}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn float_routes_track_exact() {
        let exact = sys(ratio(7, 3));
        let float = MeixnerSystem::<f64>::new(ratio(7, 3), reference_rotation()).unwrap();
        let e = monic_eval_gf(&exact, 2, 1, 3, 4).to_f64();
        for route in [Route::Raising, Route::GeneratingFunction, Route::Hypergeometric] {
            assert!((monic_eval(&float, route, 2, 1, 3, 4) - e).abs() < 1e-10 * e.abs().max(1.0));
        }
    }

    #[test]
    fn cache_reads_zero_outside() {
        let s = sys(int(2));
        let mut c = ColumnCache::new(&s, 3);
        assert_eq!(c.r(-1, 0, 2, 2), int(0));
        assert_eq!(c.r(1, 1, 2, -1), int(0));
        assert_eq!(c.r(1, 2, 2, 3), monic_eval_hyp(&s, 1, 2, 2, 3));
    }
}
