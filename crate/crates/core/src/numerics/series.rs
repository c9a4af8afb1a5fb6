use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::numerics::{factorial_table, power_table};
use crate::scalar::{Rational, Scalar};

/// Exponent multi-index of a monomial `z_1^{a_1} ... z_g^{a_g}`.
pub type Exponents = Vec<u32>;

/// Multivariate power series truncated at a total degree.
///
/// Coefficients are stored sparsely; absent entries are zero and nothing of
/// total degree above `cutoff` is ever stored.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<S> {
    num_vars: usize,
    cutoff: u32,
    coeffs: BTreeMap<Exponents, S>,
}

fn degree(idx: &[u32]) -> u32 {
    idx.iter().sum()
}

impl<S: Scalar> TruncatedSeries<S> {
    pub fn zero(num_vars: usize, cutoff: u32) -> Self {
        assert!(num_vars > 0, "a series needs at least one variable");
        TruncatedSeries { num_vars, cutoff, coeffs: BTreeMap::new() }
    }

    pub fn one(num_vars: usize, cutoff: u32) -> Self {
        let mut s = Self::zero(num_vars, cutoff);
        s.coeffs.insert(vec![0; num_vars], S::one());
        s
    }

    /// Builds a series from explicit terms; terms above the cutoff are dropped.
    pub fn from_terms<I>(num_vars: usize, cutoff: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponents, S)>,
    {
        let mut s = Self::zero(num_vars, cutoff);
        for (idx, c) in terms {
            if idx.len() != num_vars {
                return Err(Error::DimensionMismatch(idx.len(), num_vars));
            }
            if degree(&idx) <= cutoff {
                s.add_to(idx, c);
            }
        }
        Ok(s)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Stored coefficient of `z^idx`, zero when absent.
    pub fn coefficient(&self, idx: &[u32]) -> Result<S> {
        if idx.len() != self.num_vars {
            return Err(Error::DimensionMismatch(idx.len(), self.num_vars));
        }
        if degree(idx) > self.cutoff {
            return Err(Error::InvalidParameter(format!(
                "degree {} exceeds series cutoff {}",
                degree(idx),
                self.cutoff
            )));
        }
        Ok(self.coeffs.get(idx).cloned().unwrap_or_else(S::zero))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &S)> {
        self.coeffs.iter()
    }

    fn add_to(&mut self, idx: Exponents, c: S) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(idx) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::DimensionMismatch(self.num_vars, other.num_vars));
        }
        if self.cutoff != other.cutoff {
            return Err(Error::InvalidParameter(format!(
                "series cutoffs differ: {} vs {}",
                self.cutoff, other.cutoff
            )));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = Self::zero(self.num_vars, self.cutoff);
        for (ia, ca) in &self.coeffs {
            let da = degree(ia);
            for (ib, cb) in &other.coeffs {
                if da + degree(ib) > self.cutoff {
                    continue;
                }
                let idx: Exponents = ia.iter().zip(ib).map(|(a, b)| a + b).collect();
                out.add_to(idx, ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (idx, c) in &other.coeffs {
            out.add_to(idx.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, k: &S) -> Self {
        let mut out = Self::zero(self.num_vars, self.cutoff);
        for (idx, c) in &self.coeffs {
            out.add_to(idx.clone(), c.clone() * k.clone());
        }
        out
    }
}

/// Exact product of two series with the same shape, truncated at the common cutoff.
pub fn series_mul<S: Scalar>(a: &TruncatedSeries<S>, b: &TruncatedSeries<S>) -> Result<TruncatedSeries<S>> {
    a.try_mul(b)
}

/// All multi-indices in `g` variables with total degree at most `max_degree`,
/// in lexicographic order.
pub fn multi_indices(g: usize, max_degree: u32) -> Vec<Exponents> {
    fn rec(g: usize, budget: u32, prefix: &mut Exponents, out: &mut Vec<Exponents>) {
        if prefix.len() == g {
            out.push(prefix.clone());
            return;
        }
        for a in 0..=budget {
            prefix.push(a);
            rec(g, budget - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(g, max_degree, &mut Vec::with_capacity(g), &mut out);
    out
}

/// Taylor expansion of `(a0 + sum_j l_j z_j)^e` to total degree `cutoff`.
///
/// The coefficient of `z^alpha` is `e(e-1)..(e-|alpha|+1) / alpha! * a0^(e-|alpha|) * l^alpha`.
/// `a0` may be zero only when `e` is a non-negative integer; in exact mode the
/// powers of `a0` must stay rational.
pub fn series_linear_pow<S: Scalar>(
    constant: &S,
    linear: &[S],
    exponent: &Rational,
    cutoff: u32,
) -> Result<TruncatedSeries<S>> {
    let g = linear.len();
    let mut out = TruncatedSeries::zero(g, cutoff);
    let top = cutoff as usize;
    let e = S::from_rational(exponent);
    // falling[n] = e (e-1) ... (e-n+1)
    let mut falling = Vec::with_capacity(top + 1);
    falling.push(S::one());
    for n in 0..top {
        let next = falling[n].clone() * (e.clone() - S::from_usize(n));
        falling.push(next);
    }
    let fact: Vec<S> = factorial_table(top);
    let powers: Vec<Vec<S>> = linear.iter().map(|l| power_table(l, top)).collect();
    let mut base_powers: Vec<Option<S>> = vec![None; top + 1];
    for idx in multi_indices(g, cutoff) {
        let n = degree(&idx) as usize;
        if falling[n].is_zero() {
            continue;
        }
        let mut c = falling[n].clone();
        let mut nonzero = true;
        for (j, &a) in idx.iter().enumerate() {
            let p = &powers[j][a as usize];
            if p.is_zero() {
                nonzero = false;
                break;
            }
            c = c * p.clone() / fact[a as usize].clone();
        }
        if !nonzero {
            continue;
        }
        if base_powers[n].is_none() {
            let shifted = exponent - Rational::from_integer((n as i64).into());
            let p = constant.pow_rational(&shifted).ok_or_else(|| {
                Error::NotExact(format!("({constant})^({shifted}) in series expansion"))
            })?;
            base_powers[n] = Some(p);
        }
        let base = base_powers[n].clone().expect("filled above");
        out.add_to(idx, c * base);
    }
    Ok(out)
}

/// Taylor expansion of `(1 - sum_j l_j z_j)^e` to total degree `cutoff`.
///
/// For `e = -beta` and `l = (1, 1)` the coefficient of `z_1^i z_2^k` is
/// `(beta)_{i+k} / (i! k!)`.
pub fn series_geom_pow<S: Scalar>(linear: &[S], exponent: &Rational, cutoff: u32) -> TruncatedSeries<S> {
    let negated: Vec<S> = linear.iter().map(|l| -l.clone()).collect();
    series_linear_pow(&S::one(), &negated, exponent, cutoff).expect("powers of one are always exact")
}
