use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lorentz::{inverse_tilde, require_generic, Matrix, PseudoRotation};
use crate::scalar::{Rational, Scalar, ScalarMode};

/// The bivariate family attached to `(beta, L)` with `L` a generic element
/// of `SO(2,1)`.
///
/// Derived parameters, zero-based:
/// `c[i] = L[i][2]^2 / L[2][2]^2` and
/// `u[i][j] = L[i][j] L[2][2] / (L[i][2] L[2][j])`.
#[derive(Debug, Clone)]
pub struct MeixnerSystem<S: Scalar> {
    beta: Rational,
    beta_s: S,
    lambda: PseudoRotation,
    l: Matrix<S>,
    c: [S; 2],
    u: [[S; 2]; 2],
}

impl<S: Scalar> MeixnerSystem<S> {
    pub fn new(beta: Rational, lambda: PseudoRotation) -> Result<Self> {
        if lambda.d() != 2 {
            return Err(Error::DimensionMismatch(lambda.d(), 2));
        }
        check_beta(&beta)?;
        require_generic(&lambda)?;
        let e = |r: usize, c: usize| lambda.entry(r, c).clone();
        let c_exact = [0, 1].map(|i| e(i, 2) * e(i, 2) / (e(2, 2) * e(2, 2)));
        let total = &c_exact[0] + &c_exact[1];
        if total >= Rational::one() {
            return Err(Error::InvalidParameter(format!("c1 + c2 = {total} is not below 1")));
        }
        let l: Matrix<S> = lambda.to_scalar();
        let u = [0, 1].map(|i| [0, 1].map(|j| S::from_rational(&(e(i, j) * e(2, 2) / (e(i, 2) * e(2, j))))));
        Ok(MeixnerSystem {
            beta_s: S::from_rational(&beta),
            beta,
            c: c_exact.map(|c| S::from_rational(&c)),
            u,
            l,
            lambda,
        })
    }

    /// Same matrix, different `beta`.
    pub fn with_beta(&self, beta: Rational) -> Result<Self> {
        MeixnerSystem::new(beta, self.lambda.clone())
    }

    /// The system of the inverse matrix `eta L^t eta`.
    pub fn dual(&self) -> Result<Self> {
        MeixnerSystem::new(self.beta.clone(), inverse_tilde(&self.lambda))
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

    /// Zero-based matrix entry in the working scalar.
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
}

pub(crate) fn check_beta(beta: &Rational) -> Result<()> {
    if !beta.is_positive() || beta.is_zero() {
        return Err(Error::InvalidParameter(format!("beta must be positive, got {beta}")));
    }
    Ok(())
}
