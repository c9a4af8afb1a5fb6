//! Meixner polynomials in `d` variables attached to generic elements of
//! `SO(d,1)`, orthogonal on the negative multinomial distribution.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::bivariate::MeixnerSystem;
use crate::error::{Error, Result};
use crate::lorentz::{require_generic, Matrix, PseudoRotation};
use crate::numerics::{
    factorial_table, multi_indices, pochhammer_table, series_geom_pow, shell_points, sum_shells, LnTables,
    ShellPolicy,
};
use crate::report::{EvalReport, Tally};
use crate::scalar::{int, FloatScalar, Rational, Scalar, ScalarMode};

/// A point of `{0, 1, ...}^d`, used both for degrees and for arguments.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(components: Vec<usize>) -> Self {
        MultiIndex(components)
    }

    pub fn zeros(d: usize) -> Self {
        MultiIndex(vec![0; d])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|n|`
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn components(&self) -> &[usize] {
        &self.0
    }

    pub fn get(&self, j: usize) -> usize {
        self.0[j]
    }

    /// `self - e_j`, or `None` when component `j` is already zero.
    pub fn lowered(&self, j: usize) -> Option<MultiIndex> {
        let mut v = self.0.clone();
        v[j] = v[j].checked_sub(1)?;
        Some(MultiIndex(v))
    }

    /// All indices of length `d` with `|n| <= max_total`, lexicographic.
    pub fn simplex(d: usize, max_total: usize) -> Vec<MultiIndex> {
        multi_indices(d, max_total as u32)
            .into_iter()
            .map(|e| MultiIndex(e.into_iter().map(|a| a as usize).collect()))
            .collect()
    }

    /// All indices with `n_j <= bounds[j]`, lexicographic.
    pub fn cuboid(bounds: &[usize]) -> Vec<MultiIndex> {
        let mut out = vec![Vec::with_capacity(bounds.len())];
        for &b in bounds {
            out = out.into_iter().flat_map(|p| (0..=b).map(move |a| [p.clone(), vec![a]].concat())).collect();
        }
        out.into_iter().map(MultiIndex).collect()
    }
}

impl From<Vec<usize>> for MultiIndex {
    fn from(v: Vec<usize>) -> Self {
        MultiIndex(v)
    }
}

impl std::fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The `d`-variable family attached to `(beta, L)`, `L` generic in `SO(d,1)`.
///
/// `c[i] = L[i][d]^2 / L[d][d]^2`, `u[i][j] = L[i][j] L[d][d] / (L[i][d] L[d][j])`.
#[derive(Debug, Clone)]
pub struct MeixnerSystemD<S: Scalar> {
    d: usize,
    beta: Rational,
    beta_s: S,
    lambda: PseudoRotation,
    l: Matrix<S>,
    c: Vec<S>,
    u: Vec<Vec<S>>,
}

impl<S: Scalar> MeixnerSystemD<S> {
    pub fn new(beta: Rational, lambda: PseudoRotation) -> Result<Self> {
        let d = lambda.d();
        if d == 0 {
            return Err(Error::InvalidParameter("d must be at least 1".into()));
        }
        if !beta.is_positive() || beta.is_zero() {
            return Err(Error::InvalidParameter(format!("beta must be positive, got {beta}")));
        }
        require_generic(&lambda)?;
        let e = |r: usize, c: usize| lambda.entry(r, c).clone();
        let c_exact: Vec<Rational> = (0..d).map(|i| e(i, d) * e(i, d) / (e(d, d) * e(d, d))).collect();
        let total: Rational = c_exact.iter().sum();
        if total >= Rational::one() {
            return Err(Error::InvalidParameter(format!("|c| = {total} is not below 1")));
        }
        let u = (0..d)
            .map(|i| (0..d).map(|j| S::from_rational(&(e(i, j) * e(d, d) / (e(i, d) * e(d, j))))).collect())
            .collect();
        Ok(MeixnerSystemD {
            d,
            beta_s: S::from_rational(&beta),
            beta,
            l: lambda.to_scalar(),
            c: c_exact.iter().map(S::from_rational).collect(),
            u,
            lambda,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    pub fn beta_scalar(&self) -> &S {
        &self.beta_s
    }

    pub fn lambda(&self) -> &PseudoRotation {
        &self.lambda
    }

    pub fn entry(&self, r: usize, c: usize) -> &S {
        self.l.get(r, c)
    }

    pub fn c(&self, i: usize) -> &S {
        &self.c[i]
    }

    pub fn u(&self, i: usize, j: usize) -> &S {
        &self.u[i][j]
    }

    pub fn mode(&self) -> ScalarMode {
        S::MODE
    }

    fn require_len(&self, x: &MultiIndex) -> Result<()> {
        if x.len() != self.d {
            return Err(Error::DimensionMismatch(x.len(), self.d));
        }
        Ok(())
    }
}

impl<S: Scalar> From<&MeixnerSystem<S>> for MeixnerSystemD<S> {
    fn from(sys: &MeixnerSystem<S>) -> Self {
        MeixnerSystemD::new(sys.beta().clone(), sys.lambda().clone()).expect("a bivariate system is valid in d = 2")
    }
}

/// Negative multinomial weight `(beta)_{|x|}/(x_1!...x_d!) (1-|c|)^beta prod c_i^{x_i}`.
pub fn weight_d<S: Scalar>(sys: &MeixnerSystemD<S>, x: &MultiIndex) -> Result<S> {
    sys.require_len(x)?;
    let base = sys.c.iter().fold(S::one(), |acc, c| acc - c.clone());
    let head = base
        .pow_rational(sys.beta())
        .ok_or_else(|| Error::NotExact(format!("(1-|c|)^beta = ({base})^({}) is irrational", sys.beta())))?;
    let mut acc = head;
    let mut seen = 0;
    for (i, &xi) in x.components().iter().enumerate() {
        for j in 0..xi {
            acc = acc * (sys.beta_s.clone() + S::from_usize(seen + j)) / S::from_usize(j + 1) * sys.c[i].clone();
        }
        seen += xi;
    }
    Ok(acc)
}

/// `R_n(x)` for every `|n| <= max_degree` at one argument `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonicColumnD<S> {
    max_degree: usize,
    values: BTreeMap<MultiIndex, S>,
}

impl<S: Scalar> MonicColumnD<S> {
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn get(&self, n: &MultiIndex) -> Option<&S> {
        self.values.get(n)
    }
}

/// Coefficients of `(1-|z|)^(-beta-|x|) prod_i (1 - sum_j u_ij z_j)^(x_i)`,
/// rescaled by `n_1!...n_d! / (beta)_{|n|}`.
pub fn monic_column_gf_d<S: Scalar>(sys: &MeixnerSystemD<S>, max_degree: usize, x: &MultiIndex) -> Result<MonicColumnD<S>> {
    sys.require_len(x)?;
    let d = sys.d;
    let cutoff = max_degree as u32;
    let exponent = -(sys.beta.clone() + int(x.total() as i64));
    let mut product = series_geom_pow(&vec![S::one(); d], &exponent, cutoff);
    for (i, &xi) in x.components().iter().enumerate() {
        if xi > 0 {
            product = product.try_mul(&series_geom_pow(&sys.u[i], &int(xi as i64), cutoff))?;
        }
    }
    let poch = pochhammer_table(&sys.beta_s, max_degree);
    let fact: Vec<S> = factorial_table(max_degree);
    let mut values = BTreeMap::new();
    for n in MultiIndex::simplex(d, max_degree) {
        let idx: Vec<u32> = n.components().iter().map(|&a| a as u32).collect();
        let scale = n.components().iter().fold(S::one(), |acc, &a| acc * fact[a].clone()) / poch[n.total()].clone();
        values.insert(n, product.coefficient(&idx)? * scale);
    }
    Ok(MonicColumnD { max_degree, values })
}

pub fn monic_eval_gf_d<S: Scalar>(sys: &MeixnerSystemD<S>, n: &MultiIndex, x: &MultiIndex) -> Result<S> {
    sys.require_len(n)?;
    let col = monic_column_gf_d(sys, n.total(), x)?;
    Ok(col.get(n).cloned().expect("degree in range"))
}

/// Values of `R^(beta)_n(x)` on `|n| <= max_degree` and `x_i <= max_x[i]`,
/// built from the raising relations
///
/// ```text
/// beta R^(beta)_{n+e_j}(x) = (|x|+beta) R'(x) - sum_i u_ij x_i R'(x-e_i),   R' = R^(beta+1)_n
/// ```
///
/// descending from `R^(beta+max_degree)_0 = 1`.
#[derive(Debug, Clone)]
pub struct RaisingTableD<S> {
    max_degree: usize,
    args: Vec<MultiIndex>,
    slot: HashMap<MultiIndex, usize>,
    grids: HashMap<MultiIndex, Vec<S>>,
}

impl<S: Scalar> RaisingTableD<S> {
    pub fn build(sys: &MeixnerSystemD<S>, max_degree: usize, max_x: &[usize]) -> Result<Self> {
        if max_x.len() != sys.d {
            return Err(Error::DimensionMismatch(max_x.len(), sys.d));
        }
        let d = sys.d;
        let args = MultiIndex::cuboid(max_x);
        let slot: HashMap<MultiIndex, usize> = args.iter().cloned().enumerate().map(|(p, x)| (x, p)).collect();
        // for each argument, the slots of x - e_i (if inside the box)
        let below: Vec<Vec<Option<usize>>> =
            args.iter().map(|x| (0..d).map(|i| x.lowered(i).map(|y| slot[&y])).collect()).collect();
        let ones = vec![S::one(); args.len()];
        let mut level: HashMap<MultiIndex, Vec<S>> = HashMap::from([(MultiIndex::zeros(d), ones.clone())]);
        for l in (0..max_degree).rev() {
            let b = sys.beta_s.clone() + S::from_usize(l);
            let mut next = HashMap::new();
            for n in MultiIndex::simplex(d, max_degree - l) {
                // raise along the first nonzero direction
                let Some(j) = n.components().iter().position(|&a| a > 0) else {
                    next.insert(n, ones.clone());
                    continue;
                };
                let prev = &level[&n.lowered(j).expect("n_j > 0")];
                let grid: Vec<S> = args
                    .iter()
                    .enumerate()
                    .map(|(p, x)| {
                        let mut v = (S::from_usize(x.total()) + b.clone()) * prev[p].clone();
                        for (i, q) in below[p].iter().enumerate() {
                            if let Some(q) = q {
                                v = v - sys.u[i][j].clone() * S::from_usize(x.get(i)) * prev[*q].clone();
                            }
                        }
                        v / b.clone()
                    })
                    .collect();
                next.insert(n, grid);
            }
            level = next;
        }
        Ok(RaisingTableD { max_degree, args, slot, grids: level })
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Arguments covered, lexicographic.
    pub fn arguments(&self) -> &[MultiIndex] {
        &self.args
    }

    pub fn get(&self, n: &MultiIndex, x: &MultiIndex) -> Option<&S> {
        let p = *self.slot.get(x)?;
        self.grids.get(n).map(|g| &g[p])
    }
}

pub fn monic_eval_raising_d<S: Scalar>(sys: &MeixnerSystemD<S>, n: &MultiIndex, x: &MultiIndex) -> Result<S> {
    sys.require_len(n)?;
    let table = RaisingTableD::build(sys, n.total(), x.components())?;
    Ok(table.get(n, x).cloned().expect("in range"))
}

/// `(-1)^{|n|} sqrt((beta)_{|n|}/(n_1!...n_d!)) prod_i (L[d][i]/L[d][d])^{n_i}`.
pub fn orthonormal_prefactor_d<F: FloatScalar>(sys: &MeixnerSystemD<F>, n: &MultiIndex) -> F {
    let d = sys.d;
    let l_dd = *sys.entry(d, d);
    let mut acc = if n.total().is_multiple_of(2) { F::one() } else { -F::one() };
    let mut seen = 0;
    for (i, &ni) in n.components().iter().enumerate() {
        let r = *sys.entry(d, i) / l_dd;
        for j in 0..ni {
            acc = acc * ((sys.beta_s + F::from_usize(seen + j)) / F::from_usize(j + 1)).sqrt() * r;
        }
        seen += ni;
    }
    acc
}

#[derive(Serialize)]
struct DegreeDomain {
    d: usize,
    max_degree: usize,
}

/// Truncated Gram matrix of the orthonormal `M_n`, `|n| <= max_degree`,
/// against the identity.
pub fn check_orthogonality_d<F: FloatScalar>(sys: &MeixnerSystemD<F>, max_degree: usize, tol: f64) -> Result<EvalReport> {
    let d = sys.d;
    let degs = MultiIndex::simplex(d, max_degree);
    let pref: Vec<F> = degs.iter().map(|n| orthonormal_prefactor_d(sys, n)).collect();
    let policy = ShellPolicy::new(tol);
    let ln = LnTables::new(sys.beta_s, d * policy.cap);
    let ln_head = sys.beta_s * sys.c.iter().fold(F::one(), |acc, &c| acc - c).ln();
    let ln_c: Vec<F> = sys.c.iter().map(|c| c.ln()).collect();
    let size = degs.len();
    let mut gram = vec![F::zero(); size * size];
    let shells = sum_shells(&policy, |s| {
        let mut magnitude = vec![F::zero(); size * size];
        for p in shell_points(d, s) {
            let lw = ln.ln_multinomial(&p)
                + ln_head
                + p.iter().zip(&ln_c).fold(F::zero(), |acc, (&a, &lc)| acc + F::from_usize(a) * lc);
            let w = lw.exp();
            let col = monic_column_gf_d(sys, max_degree, &MultiIndex::new(p))?;
            let vals: Vec<F> = degs.iter().zip(&pref).map(|(n, q)| *q * *col.get(n).expect("in range")).collect();
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
    let mut tally = Tally::<F>::new("orthogonality-d", DegreeDomain { d, max_degree }, tol);
    for (a, n) in degs.iter().enumerate() {
        for (b, nn) in degs.iter().enumerate() {
            let expect = if a == b { F::one() } else { F::zero() };
            tally.record(|| format!("n={n} n'={nn}"), &gram[a * size + b], &expect);
        }
    }
    tally.note(format!("truncated after {shells} shells"));
    Ok(tally.finish())
}

#[derive(Serialize)]
struct RouteDomain {
    d: usize,
    max_degree: usize,
    max_x: Vec<usize>,
}

/// Raising route against the generating function on `|n| <= max_degree`,
/// `x_i <= max_x[i]`.
pub fn check_routes_d<S: Scalar>(sys: &MeixnerSystemD<S>, max_degree: usize, max_x: &[usize], tol: f64) -> Result<EvalReport> {
    let table = RaisingTableD::build(sys, max_degree, max_x)?;
    let degs = MultiIndex::simplex(sys.d, max_degree);
    let mut tally = Tally::<S>::new("routes-d", RouteDomain { d: sys.d, max_degree, max_x: max_x.to_vec() }, tol);
    for x in table.arguments() {
        let col = monic_column_gf_d(sys, max_degree, x)?;
        for n in &degs {
            tally.record(|| format!("n={n} x={x}"), table.get(n, x).expect("in table"), col.get(n).expect("in column"));
        }
    }
    Ok(tally.finish())
}
