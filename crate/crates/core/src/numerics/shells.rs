//! Shell-by-shell truncation of sums over the non-negative lattice, and
//! log-scale Pochhammer tables for the large arguments those sums reach.

use crate::error::{Error, Result};
use crate::scalar::FloatScalar;

/// Stop once a full shell contributes less than `tol / 100`, the contribution
/// is not increasing, and at least `min_shells` shells have been summed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShellPolicy {
    pub tol: f64,
    pub cap: usize,
    pub min_shells: usize,
}

impl ShellPolicy {
    pub const DEFAULT_CAP: usize = 400;

    pub fn new(tol: f64) -> Self {
        ShellPolicy { tol, cap: Self::DEFAULT_CAP, min_shells: 1 }
    }

    pub fn with_min_shells(mut self, n: usize) -> Self {
        self.min_shells = n;
        self
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }
}

/// Calls `shell(s)` for `s = 0, 1, ...`; each call adds shell `s` into the
/// caller's accumulators and returns its magnitude. Returns the number of
/// shells summed.
pub fn sum_shells(policy: &ShellPolicy, mut shell: impl FnMut(usize) -> Result<f64>) -> Result<usize> {
    let threshold = policy.tol / 100.0;
    let mut prev = f64::INFINITY;
    for s in 0..policy.cap {
        let c = shell(s)?;
        if !c.is_finite() {
            return Err(Error::NonConvergence { shells: s + 1, last: c });
        }
        if s + 1 >= policy.min_shells && c < threshold && c <= prev {
            return Ok(s + 1);
        }
        prev = c;
    }
    Err(Error::NonConvergence { shells: policy.cap, last: prev })
}

/// Points of `{0..}^d` with maximum coordinate exactly `s`, in lexicographic order.
pub fn shell_points(d: usize, s: usize) -> Vec<Vec<usize>> {
    fn rec(d: usize, s: usize, hit: bool, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == d {
            if hit {
                out.push(prefix.clone());
            }
            return;
        }
        let remaining = d - prefix.len();
        for a in 0..=s {
            // the last free slot must reach s if nothing has yet
            if remaining == 1 && !hit && a != s {
                continue;
            }
            prefix.push(a);
            rec(d, s, hit || a == s, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, s, false, &mut Vec::with_capacity(d), &mut out);
    out
}

/// `ln (x)_j` and `ln j!` for `j <= len`, `x > 0`.
#[derive(Debug, Clone)]
pub struct LnTables<F> {
    ln_poch: Vec<F>,
    ln_fact: Vec<F>,
}

impl<F: FloatScalar> LnTables<F> {
    pub fn new(x: F, len: usize) -> Self {
        let mut ln_poch = Vec::with_capacity(len + 1);
        let mut ln_fact = Vec::with_capacity(len + 1);
        let (mut p, mut f) = (F::zero(), F::zero());
        ln_poch.push(p);
        ln_fact.push(f);
        for j in 0..len {
            let jj = F::from_usize(j);
            p = p + (x + jj).ln();
            f = f + (jj + F::one()).ln();
            ln_poch.push(p);
            ln_fact.push(f);
        }
        LnTables { ln_poch, ln_fact }
    }

    pub fn len(&self) -> usize {
        self.ln_poch.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn ln_pochhammer(&self, j: usize) -> F {
        self.ln_poch[j]
    }

    pub fn ln_factorial(&self, j: usize) -> F {
        self.ln_fact[j]
    }

    /// `ln((x)_{|a|} / (a_1! ... a_g!))`
    pub fn ln_multinomial(&self, a: &[usize]) -> F {
        let total: usize = a.iter().sum();
        a.iter().fold(self.ln_poch[total], |acc, &j| acc - self.ln_fact[j])
    }
}
