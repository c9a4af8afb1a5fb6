//! Named verification suites and the configuration that drives them.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::bivariate::{
    check_addition, check_addition_direct, check_difference, check_duality, check_duality_orthonormal,
    check_lowering, check_orthogonality, check_recurrence, check_recurrence_orthonormal, check_subgroup_unitarity,
    factorized_eval, general_sum_eval, monic_column_gf, monic_eval_hyp, MeixnerSystem, RaisingTable, Subgroup,
};
use crate::error::{Error, Result};
use crate::lorentz::{compose, is_generic, product_of, reference_rotation, MatrixFile, PseudoRotation, SubgroupParam};
use crate::multivariate::{check_orthogonality_d, check_routes_d, MeixnerSystemD};
use crate::report::{point4, EvalReport, LatticeBox, Tally};
use crate::scalar::{FloatScalar, Rational, Scalar, ScalarMode};

use super::random::{random_addition_cases, random_rotation};

/// Number of seeded `(A, B, tuple)` cases in the addition suite.
pub const ADDITION_CASES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Orthogonality,
    Recurrence,
    Difference,
    Lowering,
    Duality,
    Routes,
    Factorization,
    Dompe3,
    Addition,
    SubgroupUnitarity,
    Multivariate,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Orthogonality,
        Suite::Recurrence,
        Suite::Difference,
        Suite::Lowering,
        Suite::Duality,
        Suite::Routes,
        Suite::Factorization,
        Suite::Dompe3,
        Suite::Addition,
        Suite::SubgroupUnitarity,
        Suite::Multivariate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Orthogonality => "orthogonality",
            Suite::Recurrence => "recurrence",
            Suite::Difference => "difference",
            Suite::Lowering => "lowering",
            Suite::Duality => "duality",
            Suite::Routes => "routes",
            Suite::Factorization => "factorization",
            Suite::Dompe3 => "dompe3",
            Suite::Addition => "addition",
            Suite::SubgroupUnitarity => "subgroup-unitarity",
            Suite::Multivariate => "multivariate",
        }
    }

    /// Suites whose quantities carry square roots.
    pub fn float_only(self) -> bool {
        matches!(self, Suite::Orthogonality | Suite::Addition | Suite::SubgroupUnitarity)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

/// Where the parameter matrix comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum MatrixSource {
    File(PathBuf),
    Seed { seed: u64, factors: usize },
    /// Ordered product of one-parameter subgroup elements.
    Params(Vec<SubgroupParam>),
    /// `R(1/2) Psi(2) R(2/3)` in `SO(2,1)`.
    Reference,
}

impl MatrixSource {
    pub fn resolve(&self, d: usize) -> Result<PseudoRotation> {
        let l = match self {
            MatrixSource::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
                MatrixFile::parse(&text)?
            }
            MatrixSource::Seed { seed, factors } => random_rotation(*seed, d, *factors)?.0,
            MatrixSource::Params(params) => product_of(params, d)?,
            MatrixSource::Reference => reference_rotation(),
        };
        if l.d() != d {
            return Err(Error::DimensionMismatch(l.d(), d));
        }
        Ok(l)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub d: usize,
    pub beta: Rational,
    pub source: MatrixSource,
    pub lattice: LatticeBox,
    pub mode: ScalarMode,
    /// Required in float mode, absent in exact mode.
    pub tol: Option<f64>,
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        match (self.mode, self.tol) {
            (ScalarMode::Float, None) => return Err(Error::InvalidParameter("float mode needs a tolerance".into())),
            (ScalarMode::Exact, Some(_)) => {
                return Err(Error::InvalidParameter("a tolerance only applies in float mode".into()))
            }
            (_, Some(t)) if !(t >= 0.0 && t.is_finite()) => {
                return Err(Error::InvalidParameter(format!("tolerance must be finite and non-negative, got {t}")))
            }
            _ => {}
        }
        if self.suite.float_only() && self.mode == ScalarMode::Exact {
            return Err(Error::InvalidParameter(format!("suite {} runs in float mode only", self.suite)));
        }
        if self.d != 2 && self.suite != Suite::Multivariate && self.suite != Suite::Orthogonality {
            return Err(Error::InvalidParameter(format!("suite {} is defined for d = 2 only", self.suite)));
        }
        Ok(())
    }

    fn tol(&self) -> f64 {
        self.tol.unwrap_or(0.0)
    }
}

/// Exit status of the command-line contract.
pub fn exit_code(result: &Result<EvalReport>) -> i32 {
    match result {
        Ok(r) if r.pass => 0,
        Ok(_) => 1,
        Err(e) => error_exit_code(e),
    }
}

/// 2 for malformed or invalid input, 3 for a violated precondition of the
/// requested route or a sum that did not converge.
pub fn error_exit_code(e: &Error) -> i32 {
    if e.is_input_error() || matches!(e, Error::InvalidParameter(_)) {
        2
    } else {
        3
    }
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<EvalReport> {
    cfg.validate()?;
    let lambda = cfg.source.resolve(cfg.d)?;
    match cfg.mode {
        ScalarMode::Exact => run_generic::<Rational>(cfg, lambda),
        ScalarMode::Float => run_float::<f64>(cfg, lambda),
    }
}

fn run_generic<S: Scalar>(cfg: &SuiteConfig, lambda: PseudoRotation) -> Result<EvalReport> {
    let lat = &cfg.lattice;
    match cfg.suite {
        Suite::Multivariate => {
            let sys = MeixnerSystemD::<S>::new(cfg.beta.clone(), lambda)?;
            check_routes_d(&sys, lat.max_degree(), &vec![lat.max_i.max(lat.max_k); cfg.d], cfg.tol())
        }
        Suite::Factorization => {
            let (t_xi, t_psi) = factorization_parameters(&cfg.source)?;
            check_factorization::<S>(&cfg.beta, &t_xi, &t_psi, lat)
        }
        Suite::Dompe3 => {
            let (s_chi, t_psi, s_theta) = general_parameters(&cfg.source)?;
            check_general_sum::<S>(&cfg.beta, &s_chi, &t_psi, &s_theta, lat)
        }
        suite => {
            let sys = MeixnerSystem::<S>::new(cfg.beta.clone(), lambda)?;
            match suite {
                Suite::Recurrence => check_recurrence(&sys, lat),
                Suite::Difference => check_difference(&sys, lat),
                Suite::Lowering => check_lowering(&sys, lat),
                Suite::Duality => check_duality(&sys, lat),
                Suite::Routes => check_routes(&sys, lat),
                _ => unreachable!("float-only suites are rejected by validate"),
            }
        }
    }
}

fn run_float<F: FloatScalar>(cfg: &SuiteConfig, lambda: PseudoRotation) -> Result<EvalReport> {
    let lat = &cfg.lattice;
    let tol = cfg.tol();
    match cfg.suite {
        Suite::Orthogonality if cfg.d == 2 => {
            check_orthogonality(&MeixnerSystem::<F>::new(cfg.beta.clone(), lambda)?, lat, tol)
        }
        Suite::Orthogonality => {
            check_orthogonality_d(&MeixnerSystemD::<F>::new(cfg.beta.clone(), lambda)?, lat.max_degree(), tol)
        }
        Suite::Recurrence => {
            let sys = MeixnerSystem::<F>::new(cfg.beta.clone(), lambda)?;
            Ok(EvalReport::combine("recurrence", vec![check_recurrence(&sys, lat)?, check_recurrence_orthonormal(&sys, lat, tol)?]))
        }
        Suite::Duality => {
            let sys = MeixnerSystem::<F>::new(cfg.beta.clone(), lambda)?;
            Ok(EvalReport::combine("duality", vec![check_duality(&sys, lat)?, check_duality_orthonormal(&sys, lat, tol)?]))
        }
        Suite::Multivariate => {
            let sys = MeixnerSystemD::<F>::new(cfg.beta.clone(), lambda)?;
            let routes = check_routes_d(&sys, lat.max_degree(), &vec![lat.max_i.max(lat.max_k); cfg.d], tol)?;
            Ok(EvalReport::combine("multivariate", vec![routes, check_orthogonality_d(&sys, lat.max_degree(), tol)?]))
        }
        Suite::Addition => run_addition::<F>(cfg, lambda),
        Suite::SubgroupUnitarity => {
            let parts = unitarity_subgroups(&cfg.source)?
                .iter()
                .map(|g| check_subgroup_unitarity::<F>(&cfg.beta, g, lat.max_degree(), tol))
                .collect::<Result<Vec<_>>>()?;
            Ok(EvalReport::combine("subgroup-unitarity", parts))
        }
        _ => run_generic::<F>(cfg, lambda),
    }
}

/// Seeded sources draw [`ADDITION_CASES`] random cases; any other source
/// checks `A = B = L` at the box corner `(max_i, max_k, max_m, max_n)`.
fn run_addition<F: FloatScalar>(cfg: &SuiteConfig, lambda: PseudoRotation) -> Result<EvalReport> {
    let tol = cfg.tol();
    let cases = match &cfg.source {
        MatrixSource::Seed { seed, .. } => random_addition_cases(*seed, ADDITION_CASES)?
            .into_iter()
            .map(|c| (c.a, c.b, c.tuple))
            .collect(),
        _ => {
            let l = &cfg.lattice;
            vec![(lambda.clone(), lambda, [l.max_i, l.max_k, l.max_m, l.max_n])]
        }
    };
    let mut parts = Vec::with_capacity(cases.len());
    for (a, b, tuple) in cases {
        let generic = is_generic(&a) && is_generic(&b) && is_generic(&compose(&a, &b)?);
        parts.push(if generic {
            check_addition::<F>(&a, &b, &cfg.beta, tuple, tol)?
        } else {
            check_addition_direct::<F>(&a, &b, &cfg.beta, tuple, tol)?
        });
    }
    Ok(EvalReport::combine("addition", parts))
}

fn unitarity_subgroups(source: &MatrixSource) -> Result<Vec<Subgroup>> {
    let MatrixSource::Params(params) = source else {
        return Ok(vec![
            Subgroup::Xi(Rational::from_integer(2.into())),
            Subgroup::Psi(Rational::from_integer(3.into())),
            Subgroup::Rotation(Rational::new(1.into(), 2.into())),
        ]);
    };
    params
        .iter()
        .map(|p| match p {
            SubgroupParam::Boost { axis: 0, t } => Ok(Subgroup::Xi(t.clone())),
            SubgroupParam::Boost { axis: 1, t } => Ok(Subgroup::Psi(t.clone())),
            SubgroupParam::Rotation { i: 0, j: 1, s } => Ok(Subgroup::Rotation(s.clone())),
            other => Err(Error::InvalidParameter(format!("{other} is not a subgroup of SO(2,1)"))),
        })
        .collect()
}

/// `(t_xi, t_psi)` from the parameter list `boost:2:T_PSI, boost:1:T_XI`.
pub fn factorization_parameters(source: &MatrixSource) -> Result<(Rational, Rational)> {
    match source {
        MatrixSource::Params(p) => match p.as_slice() {
            [SubgroupParam::Boost { axis: 1, t: t_psi }, SubgroupParam::Boost { axis: 0, t: t_xi }] => {
                Ok((t_xi.clone(), t_psi.clone()))
            }
            _ => Err(Error::InvalidParameter("factorization needs the parameters boost:2:T, boost:1:T".into())),
        },
        _ => Err(Error::InvalidParameter("factorization needs a subgroup parameter list".into())),
    }
}

/// `(s_chi, t_psi, s_theta)` from `rot:1-2:S_CHI, boost:2:T_PSI, rot:1-2:S_THETA`.
pub fn general_parameters(source: &MatrixSource) -> Result<(Rational, Rational, Rational)> {
    let bad = || Error::InvalidParameter("dompe3 needs the parameters rot:1-2:S, boost:2:T, rot:1-2:S".into());
    match source {
        MatrixSource::Params(p) => match p.as_slice() {
            [SubgroupParam::Rotation { i: 0, j: 1, s: chi }, SubgroupParam::Boost { axis: 1, t }, SubgroupParam::Rotation { i: 0, j: 1, s: theta }] => {
                Ok((chi.clone(), t.clone(), theta.clone()))
            }
            _ => Err(bad()),
        },
        MatrixSource::Reference => {
            Ok((Rational::new(1.into(), 2.into()), Rational::from_integer(2.into()), Rational::new(2.into(), 3.into())))
        }
        _ => Err(bad()),
    }
}

/// Raising, generating-function and hypergeometric routes agree on the box.
pub fn check_routes<S: Scalar>(sys: &MeixnerSystem<S>, lattice: &LatticeBox) -> Result<EvalReport> {
    let top = lattice.max_degree();
    let table = RaisingTable::build(sys, top, lattice.max_i, lattice.max_k);
    let mut tally = Tally::<S>::new("routes", lattice, S::default_tolerance());
    for (i, k) in lattice.arguments() {
        let col = monic_column_gf(sys, top, i, k);
        for (m, n) in lattice.degrees() {
            let gf = col.get(m, n).expect("in column");
            tally.record(|| format!("raising/gf {}", point4(m, n, i, k)), table.get(m, n, i, k).expect("in table"), gf);
            tally.record(|| format!("hyp/gf {}", point4(m, n, i, k)), &monic_eval_hyp(sys, m, n, i, k), gf);
        }
    }
    Ok(tally.finish())
}

/// The product form for `Psi(t_psi) Xi(t_xi)` against the generating function.
pub fn check_factorization<S: Scalar>(beta: &Rational, t_xi: &Rational, t_psi: &Rational, lattice: &LatticeBox) -> Result<EvalReport> {
    let sys = MeixnerSystem::<S>::new(beta.clone(), crate::bivariate::boost_product(t_xi, t_psi)?)?;
    let mut tally = Tally::<S>::new("factorization", lattice, S::default_tolerance());
    for (i, k) in lattice.arguments() {
        let col = monic_column_gf(&sys, lattice.max_degree(), i, k);
        for (m, n) in lattice.degrees() {
            let lhs = factorized_eval::<S>(beta, t_xi, t_psi, m, n, i, k)?;
            tally.record(|| point4(m, n, i, k), &lhs, col.get(m, n).expect("in column"));
        }
    }
    Ok(tally.finish())
}

/// The single-sum form for `R(s_chi) Psi(t_psi) R(s_theta)` against the
/// generating function.
pub fn check_general_sum<S: Scalar>(
    beta: &Rational,
    s_chi: &Rational,
    t_psi: &Rational,
    s_theta: &Rational,
    lattice: &LatticeBox,
) -> Result<EvalReport> {
    let lambda = crate::bivariate::general_element(s_chi, t_psi, s_theta)?;
    let sys = MeixnerSystem::<S>::new(beta.clone(), lambda)?;
    let mut tally = Tally::<S>::new("dompe3", lattice, S::default_tolerance());
    for (i, k) in lattice.arguments() {
        let col = monic_column_gf(&sys, lattice.max_degree(), i, k);
        for (m, n) in lattice.degrees() {
            let lhs = general_sum_eval::<S>(beta, s_chi, t_psi, s_theta, m, n, i, k)?;
            tally.record(|| point4(m, n, i, k), &lhs, col.get(m, n).expect("in column"));
        }
    }
    Ok(tally.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::parse_subgroup_param;
    use crate::scalar::{int, ratio};

    fn params(text: &str) -> MatrixSource {
        MatrixSource::Params(text.split(',').map(|p| parse_subgroup_param(p).unwrap()).collect())
    }

    fn config(suite: Suite, source: MatrixSource, lattice: LatticeBox) -> SuiteConfig {
        SuiteConfig { suite, d: 2, beta: int(2), source, lattice, mode: ScalarMode::Exact, tol: None }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn tolerance_iff_float() {
        let mut c = config(Suite::Recurrence, MatrixSource::Reference, LatticeBox::triangle(1, 1));
        assert!(c.validate().is_ok());
        c.tol = Some(1e-9);
        assert!(c.validate().is_err());
        c.mode = ScalarMode::Float;
        assert!(c.validate().is_ok());
        c.tol = None;
        assert_eq!(exit_code(&run_suite(&c)), 2);
        let c = config(Suite::Orthogonality, MatrixSource::Reference, LatticeBox::triangle(1, 0));
        assert_eq!(exit_code(&run_suite(&c)), 2);
    }

    #[test]
    fn exact_suites_on_reference() {
        for suite in [Suite::Recurrence, Suite::Difference, Suite::Lowering, Suite::Duality, Suite::Routes, Suite::Dompe3] {
            let r = run_suite(&config(suite, MatrixSource::Reference, LatticeBox::triangle(2, 2))).unwrap();
            assert!(r.pass, "{}", r.to_json());
            assert_eq!(r.max_discrepancy_f64(), 0.0);
        }
    }

    #[test]
    fn factorization_and_general_sum_from_parameters() {
        let r = run_suite(&config(Suite::Factorization, params("boost:2:2,boost:1:3"), LatticeBox::triangle(2, 2))).unwrap();
        assert!(r.pass);
        let r = run_suite(&config(Suite::Dompe3, params("rot:1-2:1/2,boost:2:2,rot:1-2:2/3"), LatticeBox::triangle(2, 2)))
            .unwrap();
        assert!(r.pass);
        let wrong = run_suite(&config(Suite::Factorization, MatrixSource::Reference, LatticeBox::triangle(1, 1)));
        assert_eq!(exit_code(&wrong), 2);
    }

    #[test]
    fn non_generic_matrix_is_a_precondition_failure() {
        let r = run_suite(&config(Suite::Recurrence, params("boost:1:2"), LatticeBox::triangle(1, 1)));
        assert!(matches!(r, Err(Error::NonGeneric(_))));
        assert_eq!(exit_code(&r), 3);
    }

    #[test]
    fn seeded_and_multivariate_suites() {
        let c = SuiteConfig {
            d: 3,
            ..config(Suite::Multivariate, MatrixSource::Seed { seed: 4, factors: 4 }, LatticeBox::triangle(2, 2))
        };
        assert!(run_suite(&c).unwrap().pass);
        let c = config(Suite::Routes, MatrixSource::Seed { seed: 4, factors: 3 }, LatticeBox::triangle(2, 2));
        assert!(run_suite(&c).unwrap().pass);
        let mut c = config(Suite::Recurrence, MatrixSource::Reference, LatticeBox::triangle(1, 0));
        c.d = 3;
        assert_eq!(exit_code(&run_suite(&c)), 2);
    }

    #[test]
    fn float_suites() {
        let float = |suite, source| SuiteConfig {
            mode: ScalarMode::Float,
            tol: Some(1e-8),
            beta: ratio(3, 2),
            ..config(suite, source, LatticeBox::triangle(1, 2))
        };
        for suite in [Suite::Orthogonality, Suite::Recurrence, Suite::Duality, Suite::SubgroupUnitarity] {
            let r = run_suite(&float(suite, MatrixSource::Reference)).unwrap();
            assert!(r.pass, "{}", r.to_json());
        }
        let r = run_suite(&float(Suite::Addition, MatrixSource::Reference)).unwrap();
        assert!(r.pass, "{}", r.to_json());
        let r = run_suite(&float(Suite::SubgroupUnitarity, params("boost:1:3,rot:1-2:-1/3"))).unwrap();
        assert!(r.pass);
        let mixed = run_suite(&float(Suite::SubgroupUnitarity, params("rot:1-2:1/2,boost:2:1/2")));
        assert!(mixed.unwrap().pass);
        let single = float(Suite::SubgroupUnitarity, params("boost:1:2"));
        assert!(run_suite(&single).unwrap().pass);
    }
}
