//! Seeded random elements of `SO(d,1)` as products of boosts and rotations
//! with small rational parameters.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bivariate::{AdditionTuple, MeixnerSystem};
use crate::error::{Error, Result};
use crate::lorentz::{compose, is_generic, product_of, PseudoRotation, SubgroupParam};
use crate::multivariate::MeixnerSystemD;
use crate::scalar::{ratio, Rational, Scalar};

/// Largest numerator or denominator of a generated parameter.
pub const MAX_PARAMETER: i64 = 9;

const MAX_ATTEMPTS: usize = 1000;

fn small_ratio(rng: &mut ChaCha8Rng, max: i64) -> Rational {
    ratio(rng.gen_range(1..=max), rng.gen_range(1..=max))
}

/// One boost (`t > 0`, `t != 1`) or rotation (`s != 0`, `s^2 != 1`).
fn random_factor(rng: &mut ChaCha8Rng, d: usize, max: i64) -> SubgroupParam {
    if d == 1 || rng.gen_bool(0.5) {
        let axis = rng.gen_range(0..d);
        loop {
            let t = small_ratio(rng, max);
            if t != ratio(1, 1) {
                return SubgroupParam::Boost { axis, t };
            }
        }
    }
    let i = rng.gen_range(0..d - 1);
    let j = rng.gen_range(i + 1..d);
    loop {
        let s = small_ratio(rng, max);
        if s != ratio(1, 1) {
            let s = if rng.gen_bool(0.5) { -s } else { s };
            return SubgroupParam::Rotation { i, j, s };
        }
    }
}

fn generic_product(rng: &mut ChaCha8Rng, d: usize, factors: usize, max: i64) -> Result<(PseudoRotation, Vec<SubgroupParam>)> {
    if d == 0 || factors == 0 {
        return Err(Error::InvalidParameter(format!("need d >= 1 and at least one factor, got d={d}, {factors} factors")));
    }
    for _ in 0..MAX_ATTEMPTS {
        let params: Vec<SubgroupParam> = (0..factors).map(|_| random_factor(rng, d, max)).collect();
        let l = product_of(&params, d)?;
        if is_generic(&l) {
            return Ok((l, params));
        }
    }
    Err(Error::NonGeneric(format!("no generic product of {factors} factors after {MAX_ATTEMPTS} draws")))
}

/// A generic element of `SO(d,1)`, with the factors that built it.
/// The same seed always gives the same matrix.
pub fn random_rotation(seed: u64, d: usize, factors: usize) -> Result<(PseudoRotation, Vec<SubgroupParam>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    generic_product(&mut rng, d, factors, MAX_PARAMETER)
}

pub fn random_system<S: Scalar>(seed: u64, d: usize, beta: Rational, factors: usize) -> Result<MeixnerSystemD<S>> {
    MeixnerSystemD::new(beta, random_rotation(seed, d, factors)?.0)
}

pub fn random_bivariate<S: Scalar>(seed: u64, beta: Rational, factors: usize) -> Result<MeixnerSystem<S>> {
    MeixnerSystem::new(beta, random_rotation(seed, 2, factors)?.0)
}

/// One addition-formula check: `A`, `B` and `AB` generic, small indices.
#[derive(Debug, Clone, PartialEq)]
pub struct AdditionCase {
    pub a: PseudoRotation,
    pub b: PseudoRotation,
    pub tuple: AdditionTuple,
}

/// Parameters stay within `1/3..3` and indices below 3 so the sums over
/// intermediate states converge in a few dozen shells.
pub fn random_addition_cases(seed: u64, count: usize) -> Result<Vec<AdditionCase>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        if attempts > MAX_ATTEMPTS {
            return Err(Error::NonGeneric("could not draw generic addition pairs".into()));
        }
        let (a, _) = generic_product(&mut rng, 2, 2, 3)?;
        let (b, _) = generic_product(&mut rng, 2, 2, 3)?;
        if !is_generic(&compose(&a, &b)?) {
            continue;
        }
        let tuple = [0; 4].map(|_| rng.gen_range(0..3));
        out.push(AdditionCase { a, b, tuple });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::validate;

    #[test]
    fn same_seed_same_matrix() {
        for d in 1..=3 {
            let (a, pa) = random_rotation(17, d, 3).unwrap();
            let (b, pb) = random_rotation(17, d, 3).unwrap();
            assert_eq!(a, b);
            assert_eq!(pa, pb);
        }
        assert_ne!(random_rotation(1, 2, 3).unwrap().0, random_rotation(2, 2, 3).unwrap().0);
    }

    #[test]
    fn generated_matrices_are_valid_and_generic() {
        for seed in 0..100 {
            let (l, params) = random_rotation(seed, 2, 3).unwrap();
            assert!(is_generic(&l));
            assert_eq!(validate(l.matrix().clone()).unwrap(), l);
            for p in params {
                let v = match p {
                    SubgroupParam::Boost { t, .. } => t,
                    SubgroupParam::Rotation { s, .. } => s,
                };
                assert!(*v.numer().magnitude() <= 9u32.into() && *v.denom() <= 9.into());
            }
        }
    }

    #[test]
    fn systems_in_several_dimensions() {
        let s = random_system::<Rational>(5, 3, ratio(2, 1), 4).unwrap();
        assert_eq!(s.d(), 3);
        assert!(random_bivariate::<f64>(5, ratio(1, 2), 3).is_ok());
        assert!(random_rotation(5, 2, 0).is_err());
    }

    #[test]
    fn addition_cases_are_generic() {
        let cases = random_addition_cases(3, 10).unwrap();
        assert_eq!(cases.len(), 10);
        for c in &cases {
            assert!(is_generic(&c.a) && is_generic(&c.b));
            assert!(c.tuple.iter().all(|&x| x < 3));
        }
        assert_eq!(cases, random_addition_cases(3, 10).unwrap());
    }
}
