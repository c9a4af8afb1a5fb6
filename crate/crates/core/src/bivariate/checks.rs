//! Exact checks of the recurrences, difference equations, lowering relations
//! and duality of the monic polynomials.

use crate::error::{Error, Result};
use crate::report::{point4, EvalReport, LatticeBox, Tally};
use crate::scalar::{int, Scalar};

use super::routes::ColumnCache;
use super::MeixnerSystem;

fn tolerance<S: Scalar>() -> f64 {
    S::default_tolerance()
}

/// Both three-term recurrences in the degrees `(m, n)`:
///
/// ```text
/// x_r R = (m Lr1^2 + n Lr2^2 + (m+n+beta) Lr3^2) R
///       + Lr1 Lr2 (L32/L31 m R_{m-1,n+1} + L31/L32 n R_{m+1,n-1})
///       - Lr1 Lr3 (L33/L31 m R_{m-1,n} + L31/L33 (m+n+beta) R_{m+1,n})
///       - Lr2 Lr3 (L33/L32 n R_{m,n-1} + L32/L33 (m+n+beta) R_{m,n+1})
/// ```
///
/// with `x_1 = i`, `x_2 = k`.
pub fn check_recurrence<S: Scalar>(sys: &MeixnerSystem<S>, lattice: &LatticeBox) -> Result<EvalReport> {
    let mut cache = ColumnCache::new(sys, lattice.max_degree() + 1);
    check_recurrence_with(sys, lattice, |m, n, i, k| Some(cache.r(m as isize, n as isize, i as isize, k as isize)))
}

/// [`check_recurrence`] reading `R_{m,n}(i,k)` from `values`, which must cover
/// every non-negative index the recurrences reach.
pub fn check_recurrence_with<S: Scalar>(
    sys: &MeixnerSystem<S>,
    lattice: &LatticeBox,
    mut values: impl FnMut(usize, usize, usize, usize) -> Option<S>,
) -> Result<EvalReport> {
    let l = |r: usize, c: usize| sys.entry(r - 1, c - 1).clone();
    let beta = sys.beta_scalar().clone();
    let mut tally = Tally::<S>::new("recurrence", lattice, tolerance::<S>());
    for [m, n, i, k] in lattice.points() {
        let (mi, ni) = (m as isize, n as isize);
        let mut r = |a: isize, b: isize| -> Result<S> {
            if a < 0 || b < 0 {
                return Ok(S::zero());
            }
            values(a as usize, b as usize, i, k)
                .ok_or_else(|| Error::InvalidParameter(format!("missing value {}", point4(a as usize, b as usize, i, k))))
        };
        let here = r(mi, ni)?;
        let (up_m, up_n) = (r(mi + 1, ni)?, r(mi, ni + 1)?);
        let (down_m, down_n) = (r(mi - 1, ni)?, r(mi, ni - 1)?);
        let (swap_up, swap_down) = (r(mi - 1, ni + 1)?, r(mi + 1, ni - 1)?);
        let (fm, fn_) = (S::from_usize(m), S::from_usize(n));
        let s = S::from_usize(m + n) + beta.clone();
        for (row, x) in [(1usize, i), (2, k)] {
            let lhs = S::from_usize(x) * here.clone();
            let rhs = (fm.clone() * l(row, 1) * l(row, 1)
                + fn_.clone() * l(row, 2) * l(row, 2)
                + s.clone() * l(row, 3) * l(row, 3))
                * here.clone()
                + l(row, 1) * l(row, 2) * l(3, 2) / l(3, 1) * fm.clone() * swap_up.clone()
                + l(row, 1) * l(row, 2) * l(3, 1) / l(3, 2) * fn_.clone() * swap_down.clone()
                - l(row, 1) * l(row, 3) * l(3, 3) / l(3, 1) * fm.clone() * down_m.clone()
                - l(row, 1) * l(row, 3) * l(3, 1) / l(3, 3) * s.clone() * up_m.clone()
                - l(row, 2) * l(row, 3) * l(3, 3) / l(3, 2) * fn_.clone() * down_n.clone()
                - l(row, 2) * l(row, 3) * l(3, 2) / l(3, 3) * s.clone() * up_n.clone();
            let label = if row == 1 { "i" } else { "k" };
            tally.record(|| format!("{label}-recurrence {}", point4(m, n, i, k)), &lhs, &rhs);
        }
    }
    Ok(tally.finish())
}

/// Both difference equations in the variables `(i, k)` and, when
/// `L11 L12 L21 L22 != 0`, their nearest-neighbour combination.
///
/// ```text
/// d_c R = (i L1c^2 + k L2c^2 + (i+k+beta) L3c^2) R
///       + L1c L2c (L23/L13 i R(i-1,k+1) + L13/L23 k R(i+1,k-1))
///       - L1c L3c (L33/L13 i R(i-1,k) + L13/L33 (i+k+beta) R(i+1,k))
///       - L2c L3c (L33/L23 k R(i,k-1) + L23/L33 (i+k+beta) R(i,k+1))
/// ```
///
/// with `d_1 = m`, `d_2 = n`.
pub fn check_difference<S: Scalar>(sys: &MeixnerSystem<S>, lattice: &LatticeBox) -> Result<EvalReport> {
    let mut cache = ColumnCache::new(sys, lattice.max_degree());
    let l = |r: usize, c: usize| sys.entry(r - 1, c - 1).clone();
    let beta = sys.beta_scalar().clone();
    let interior_nonzero = [(1, 1), (1, 2), (2, 1), (2, 2)].iter().all(|&(r, c)| !l(r, c).is_zero());
    let mut tally = Tally::<S>::new("difference", lattice, tolerance::<S>());
    if !interior_nonzero {
        tally.note("nearest-neighbour equation skipped: a zero among L11, L12, L21, L22");
    }
    for [m, n, i, k] in lattice.points() {
        let (mi, ni, ii, ki) = (m as isize, n as isize, i as isize, k as isize);
        let mut r = |a: isize, b: isize| cache.r(mi, ni, a, b);
        let here = r(ii, ki);
        let (up_i, up_k) = (r(ii + 1, ki), r(ii, ki + 1));
        let (down_i, down_k) = (r(ii - 1, ki), r(ii, ki - 1));
        let (swap_up, swap_down) = (r(ii - 1, ki + 1), r(ii + 1, ki - 1));
        let (fi, fk) = (S::from_usize(i), S::from_usize(k));
        let s = S::from_usize(i + k) + beta.clone();
        for (col, d) in [(1usize, m), (2, n)] {
            let lhs = S::from_usize(d) * here.clone();
            let rhs = (fi.clone() * l(1, col) * l(1, col)
                + fk.clone() * l(2, col) * l(2, col)
                + s.clone() * l(3, col) * l(3, col))
                * here.clone()
                + l(1, col) * l(2, col) * l(2, 3) / l(1, 3) * fi.clone() * swap_up.clone()
                + l(1, col) * l(2, col) * l(1, 3) / l(2, 3) * fk.clone() * swap_down.clone()
                - l(1, col) * l(3, col) * l(3, 3) / l(1, 3) * fi.clone() * down_i.clone()
                - l(1, col) * l(3, col) * l(1, 3) / l(3, 3) * s.clone() * up_i.clone()
                - l(2, col) * l(3, col) * l(3, 3) / l(2, 3) * fk.clone() * down_k.clone()
                - l(2, col) * l(3, col) * l(2, 3) / l(3, 3) * s.clone() * up_k.clone();
            let label = if col == 1 { "m" } else { "n" };
            tally.record(|| format!("{label}-difference {}", point4(m, n, i, k)), &lhs, &rhs);
        }
        if interior_nonzero {
            let (a, b) = (l(1, 1) * l(2, 1), l(1, 2) * l(2, 2));
            let lhs = (S::from_usize(m) / a.clone() - S::from_usize(n) / b.clone()) * here.clone();
            let diag = fi.clone() * (l(1, 1) / l(2, 1) - l(1, 2) / l(2, 2))
                + fk.clone() * (l(2, 1) / l(1, 1) - l(2, 2) / l(1, 2))
                + s.clone() * (l(3, 1) * l(3, 1) / a.clone() - l(3, 2) * l(3, 2) / b.clone());
            let rhs = diag * here.clone()
                + fi.clone() * (l(3, 2) * l(3, 3) / (l(1, 3) * l(2, 2)) - l(3, 1) * l(3, 3) / (l(2, 1) * l(1, 3))) * down_i
                + s.clone() * (l(1, 3) * l(3, 2) / (l(2, 2) * l(3, 3)) - l(1, 3) * l(3, 1) / (l(2, 1) * l(3, 3))) * up_i
                + fk.clone() * (l(3, 2) * l(3, 3) / (l(1, 2) * l(2, 3)) - l(3, 1) * l(3, 3) / (l(1, 1) * l(2, 3))) * down_k
                + s * (l(2, 3) * l(3, 2) / (l(1, 2) * l(3, 3)) - l(2, 3) * l(3, 1) / (l(1, 1) * l(3, 3))) * up_k;
            tally.record(|| format!("nearest-neighbour {}", point4(m, n, i, k)), &lhs, &rhs);
        }
    }
    Ok(tally.finish())
}

/// Lowering relations in monic form, relating `R^(beta)` to forward
/// differences of `R^(beta-1)`:
///
/// ```text
/// -m/(beta-1) L33/L31 R^(beta)_{m-1,n} = L11 L13 D_i R^(beta-1)_{m,n} + L21 L23 D_k R^(beta-1)_{m,n}
/// -n/(beta-1) L33/L32 R^(beta)_{m,n-1} = L12 L13 D_i R^(beta-1)_{m,n} + L22 L23 D_k R^(beta-1)_{m,n}
/// ```
pub fn check_lowering<S: Scalar>(sys: &MeixnerSystem<S>, lattice: &LatticeBox) -> Result<EvalReport> {
    if *sys.beta() <= int(1) {
        return Err(Error::InvalidParameter(format!("lowering needs beta > 1, got {}", sys.beta())));
    }
    let lower = sys.with_beta(sys.beta() - int(1))?;
    let top = lattice.max_degree();
    let mut high = ColumnCache::new(sys, top);
    let mut low = ColumnCache::new(&lower, top);
    let l = |r: usize, c: usize| sys.entry(r - 1, c - 1).clone();
    let bm1 = sys.beta_scalar().clone() - S::one();
    let mut tally = Tally::<S>::new("lowering", lattice, tolerance::<S>());
    for [m, n, i, k] in lattice.points() {
        let (mi, ni, ii, ki) = (m as isize, n as isize, i as isize, k as isize);
        let here = low.r(mi, ni, ii, ki);
        let di = low.r(mi, ni, ii + 1, ki) - here.clone();
        let dk = low.r(mi, ni, ii, ki + 1) - here;
        for (col, d) in [(1usize, m), (2, n)] {
            let reduced = if col == 1 { high.r(mi - 1, ni, ii, ki) } else { high.r(mi, ni - 1, ii, ki) };
            let lhs = -S::from_usize(d) / bm1.clone() * l(3, 3) / l(3, col) * reduced;
            let rhs = l(1, col) * l(1, 3) * di.clone() + l(2, col) * l(2, 3) * dk.clone();
            let label = if col == 1 { "m" } else { "n" };
            tally.record(|| format!("{label}-lowering {}", point4(m, n, i, k)), &lhs, &rhs);
        }
    }
    Ok(tally.finish())
}

/// `R_{i,k}(m,n; L) = R_{m,n}(i,k; L~)` with `L~ = eta L^t eta`.
pub fn check_duality<S: Scalar>(sys: &MeixnerSystem<S>, lattice: &LatticeBox) -> Result<EvalReport> {
    let dual = sys.dual()?;
    let mut primal = ColumnCache::new(sys, lattice.max_argument_sum());
    let mut inverse = ColumnCache::new(&dual, lattice.max_degree());
    let mut tally = Tally::<S>::new("duality", lattice, tolerance::<S>());
    for [m, n, i, k] in lattice.points() {
        let (mi, ni, ii, ki) = (m as isize, n as isize, i as isize, k as isize);
        let lhs = primal.r(ii, ki, mi, ni);
        let rhs = inverse.r(mi, ni, ii, ki);
        tally.record(|| point4(m, n, i, k), &lhs, &rhs);
    }
    Ok(tally.finish())
}
