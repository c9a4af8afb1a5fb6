//! Point evaluation and tables of `R_{m,n}(i,k)` for the command line.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bivariate::{
    check_recurrence_with, factorized_eval, general_sum_eval, matrix_element_direct, monic_column_gf, monic_eval,
    orthonormal_eval, MeixnerSystem, RaisingTable, Route,
};
use crate::error::{Error, Result};
use crate::lorentz::{MatrixFile, PseudoRotation};
use crate::multivariate::{monic_eval_gf_d, monic_eval_raising_d, MeixnerSystemD, MultiIndex};
use crate::report::{EvalReport, LatticeBox};
use crate::scalar::{parse_rational, Rational, Scalar, ScalarMode};

use super::suite::{factorization_parameters, general_parameters, MatrixSource};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalRoute {
    Raising,
    Gf,
    Hyp,
    Tratnik,
    Dompe3,
}

impl FromStr for EvalRoute {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raising" => Ok(EvalRoute::Raising),
            "gf" => Ok(EvalRoute::Gf),
            "hyp" => Ok(EvalRoute::Hyp),
            "tratnik" => Ok(EvalRoute::Tratnik),
            "dompe3" => Ok(EvalRoute::Dompe3),
            other => Err(Error::Parse(format!("unknown route `{other}`"))),
        }
    }
}

impl fmt::Display for EvalRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EvalRoute::Raising => "raising",
            EvalRoute::Gf => "gf",
            EvalRoute::Hyp => "hyp",
            EvalRoute::Tratnik => "tratnik",
            EvalRoute::Dompe3 => "dompe3",
        })
    }
}

/// What `eval` prints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    /// `R_n(x)`, exact or float.
    Monic,
    /// `M_{m,n}(i,k)`, float only.
    Orthonormal,
    /// `<i,k| F(L) |m,n>`, float only.
    Element,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalRequest {
    pub d: usize,
    pub beta: Rational,
    pub source: MatrixSource,
    pub route: EvalRoute,
    pub quantity: Quantity,
    pub mode: ScalarMode,
    pub degree: MultiIndex,
    pub at: MultiIndex,
}

/// The requested value, rendered canonically.
pub fn evaluate(req: &EvalRequest) -> Result<String> {
    if req.degree.len() != req.d || req.at.len() != req.d {
        return Err(Error::DimensionMismatch(req.degree.len().max(req.at.len()), req.d));
    }
    let lambda = req.source.resolve(req.d)?;
    match (req.quantity, req.mode) {
        (Quantity::Monic, ScalarMode::Exact) => monic_value::<Rational>(req, lambda),
        (Quantity::Monic, ScalarMode::Float) => monic_value::<f64>(req, lambda),
        (_, ScalarMode::Exact) => Err(Error::InvalidParameter("orthonormal values and matrix elements need float mode".into())),
        (q, ScalarMode::Float) => {
            if req.d != 2 {
                return Err(Error::InvalidParameter("orthonormal values are available for d = 2".into()));
            }
            let (m, n, i, k) = (req.degree.get(0), req.degree.get(1), req.at.get(0), req.at.get(1));
            let v: f64 = if q == Quantity::Element {
                matrix_element_direct(&lambda, &req.beta, i, k, m, n)?
            } else {
                orthonormal_eval(&MeixnerSystem::<f64>::new(req.beta.clone(), lambda)?, m, n, i, k)
            };
            Ok(v.render())
        }
    }
}

fn monic_value<S: Scalar>(req: &EvalRequest, lambda: PseudoRotation) -> Result<String> {
    let (n, x) = (&req.degree, &req.at);
    if req.d != 2 {
        let sys = MeixnerSystemD::<S>::new(req.beta.clone(), lambda)?;
        return match req.route {
            EvalRoute::Raising => monic_eval_raising_d(&sys, n, x),
            EvalRoute::Gf => monic_eval_gf_d(&sys, n, x),
            other => Err(Error::InvalidParameter(format!("route {other} is available for d = 2 only"))),
        }
        .map(|v| v.render());
    }
    let (m, n, i, k) = (n.get(0), n.get(1), x.get(0), x.get(1));
    let v: S = match req.route {
        EvalRoute::Tratnik => {
            let (t_xi, t_psi) = factorization_parameters(&req.source)?;
            factorized_eval(&req.beta, &t_xi, &t_psi, m, n, i, k)?
        }
        EvalRoute::Dompe3 => {
            let (s_chi, t_psi, s_theta) = general_parameters(&req.source)?;
            general_sum_eval(&req.beta, &s_chi, &t_psi, &s_theta, m, n, i, k)?
        }
        route => {
            let sys = MeixnerSystem::<S>::new(req.beta.clone(), lambda)?;
            let route = match route {
                EvalRoute::Raising => Route::Raising,
                EvalRoute::Gf => Route::GeneratingFunction,
                _ => Route::Hypergeometric,
            };
            monic_eval(&sys, route, m, n, i, k)
        }
    };
    Ok(v.render())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub m: usize,
    pub n: usize,
    pub i: usize,
    pub k: usize,
    pub value: String,
}

/// `R_{m,n}(i,k)` over a box, with everything needed to rebuild the system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonicTable {
    #[serde(with = "crate::scalar::rational_string")]
    pub beta: Rational,
    pub matrix: MatrixFile,
    pub mode: ScalarMode,
    #[serde(rename = "box")]
    pub lattice: LatticeBox,
    pub rows: Vec<TableRow>,
}

impl MonicTable {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Checks the three-term recurrences on the table's own values, at every
    /// point whose neighbours the table contains.
    pub fn verify_recurrence(&self) -> Result<EvalReport> {
        let lambda = self.matrix.to_rotation()?;
        match self.mode {
            ScalarMode::Exact => self.verify_in(&MeixnerSystem::<Rational>::new(self.beta.clone(), lambda)?),
            ScalarMode::Float => self.verify_in(&MeixnerSystem::<f64>::new(self.beta.clone(), lambda)?),
        }
    }

    fn verify_in<S: Scalar>(&self, sys: &MeixnerSystem<S>) -> Result<EvalReport> {
        let b = &self.lattice;
        if b.max_m == 0 || b.max_n == 0 || b.max_degree() == 0 {
            return Err(Error::InvalidParameter("table needs degree 1 in both m and n to check a recurrence".into()));
        }
        let mut inner = LatticeBox::new(b.max_m - 1, b.max_n - 1, b.max_i, b.max_k).with_degree_total(b.max_degree() - 1);
        inner.argument_total = b.argument_total;
        let mut values = HashMap::with_capacity(self.rows.len());
        for r in &self.rows {
            values.insert([r.m, r.n, r.i, r.k], parse_value::<S>(&r.value)?);
        }
        check_recurrence_with(sys, &inner, |m, n, i, k| values.get(&[m, n, i, k]).cloned())
    }
}

fn parse_value<S: Scalar>(text: &str) -> Result<S> {
    match S::MODE {
        ScalarMode::Exact => Ok(S::from_rational(&parse_rational(text)?)),
        ScalarMode::Float => {
            let x: f64 = text.trim().parse().map_err(|_| Error::Parse(format!("bad float `{text}`")))?;
            Rational::from_float(x)
                .map(|r| S::from_rational(&r))
                .ok_or_else(|| Error::Parse(format!("non-finite value `{text}`")))
        }
    }
}

/// Rows in lexicographic `(m, n, i, k)` order; `raising` builds one table,
/// other routes evaluate column by column.
pub fn monic_table(beta: &Rational, lambda: &PseudoRotation, lattice: &LatticeBox, mode: ScalarMode, route: Route) -> Result<MonicTable> {
    let rows = match mode {
        ScalarMode::Exact => table_rows(&MeixnerSystem::<Rational>::new(beta.clone(), lambda.clone())?, lattice, route),
        ScalarMode::Float => table_rows(&MeixnerSystem::<f64>::new(beta.clone(), lambda.clone())?, lattice, route),
    };
    Ok(MonicTable { beta: beta.clone(), matrix: MatrixFile::from_rotation(lambda), mode, lattice: *lattice, rows })
}

fn table_rows<S: Scalar>(sys: &MeixnerSystem<S>, lattice: &LatticeBox, route: Route) -> Vec<TableRow> {
    let top = lattice.max_degree();
    let raised = (route == Route::Raising).then(|| RaisingTable::build(sys, top, lattice.max_i, lattice.max_k));
    let columns: HashMap<(usize, usize), _> = if route == Route::GeneratingFunction {
        lattice.arguments().into_iter().map(|(i, k)| ((i, k), monic_column_gf(sys, top, i, k))).collect()
    } else {
        HashMap::new()
    };
    lattice
        .points()
        .into_iter()
        .map(|[m, n, i, k]| {
            let v = match route {
                Route::Raising => raised.as_ref().and_then(|t| t.get(m, n, i, k)).cloned().expect("in table"),
                Route::GeneratingFunction => columns[&(i, k)].get(m, n).cloned().expect("in column"),
                Route::Hypergeometric => monic_eval(sys, route, m, n, i, k),
            };
            TableRow { m, n, i, k, value: v.render() }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::{parse_subgroup_param, reference_rotation};
    use crate::scalar::int;

    fn request(route: EvalRoute, source: MatrixSource, point: [usize; 4]) -> EvalRequest {
        EvalRequest {
            d: 2,
            beta: int(2),
            source,
            route,
            quantity: Quantity::Monic,
            mode: ScalarMode::Exact,
            degree: MultiIndex::new(vec![point[0], point[1]]),
            at: MultiIndex::new(vec![point[2], point[3]]),
        }
    }

    #[test]
    fn routes_print_identical_strings() {
        let values: Vec<String> = [EvalRoute::Raising, EvalRoute::Gf, EvalRoute::Hyp, EvalRoute::Dompe3]
            .into_iter()
            .map(|r| evaluate(&request(r, MatrixSource::Reference, [2, 1, 3, 2])).unwrap())
            .collect();
        assert!(values.windows(2).all(|w| w[0] == w[1]), "{values:?}");
        assert!(values[0].contains('/') || values[0].parse::<i64>().is_ok());
        assert_eq!(evaluate(&request(EvalRoute::Gf, MatrixSource::Reference, [0, 0, 4, 1])).unwrap(), "1");
        let params = MatrixSource::Params(vec![
            parse_subgroup_param("boost:2:2").unwrap(),
            parse_subgroup_param("boost:1:3").unwrap(),
        ]);
        assert_eq!(
            evaluate(&request(EvalRoute::Tratnik, params.clone(), [1, 2, 2, 1])).unwrap(),
            evaluate(&request(EvalRoute::Raising, params, [1, 2, 2, 1])).unwrap()
        );
    }

    #[test]
    fn non_generic_gf_fails() {
        let source = MatrixSource::Params(vec![parse_subgroup_param("boost:1:2").unwrap()]);
        let r = evaluate(&request(EvalRoute::Gf, source, [1, 0, 0, 0]));
        assert!(matches!(r, Err(Error::NonGeneric(_))));
    }

    #[test]
    fn float_quantities() {
        let mut req = request(EvalRoute::Gf, MatrixSource::Reference, [1, 1, 2, 0]);
        req.mode = ScalarMode::Float;
        req.quantity = Quantity::Element;
        let direct: f64 = evaluate(&req).unwrap().parse().unwrap();
        req.quantity = Quantity::Orthonormal;
        let m: f64 = evaluate(&req).unwrap().parse().unwrap();
        let sys = MeixnerSystem::<f64>::new(int(2), reference_rotation()).unwrap();
        assert!((direct - crate::bivariate::amplitude(&sys, 2, 0) * m).abs() < 1e-12);
        req.mode = ScalarMode::Exact;
        assert!(evaluate(&req).is_err());
    }

    #[test]
    fn three_variable_points() {
        let mut req = request(EvalRoute::Raising, MatrixSource::Seed { seed: 9, factors: 4 }, [0; 4]);
        req.d = 3;
        req.degree = MultiIndex::new(vec![1, 0, 1]);
        req.at = MultiIndex::new(vec![2, 1, 0]);
        let a = evaluate(&req).unwrap();
        req.route = EvalRoute::Gf;
        assert_eq!(a, evaluate(&req).unwrap());
        req.route = EvalRoute::Hyp;
        assert!(evaluate(&req).is_err());
    }

    #[test]
    fn tables_round_trip_and_reverify() {
        let lattice = LatticeBox::triangle(3, 3);
        for (mode, route) in [(ScalarMode::Exact, Route::Raising), (ScalarMode::Float, Route::GeneratingFunction)] {
            let t = monic_table(&int(2), &reference_rotation(), &lattice, mode, route).unwrap();
            assert_eq!(t.rows.len(), lattice.volume());
            let back = MonicTable::from_json(&t.to_json()).unwrap();
            assert_eq!(back, t);
            let report = back.verify_recurrence().unwrap();
            assert!(report.pass, "{}", report.to_json());
            assert!(report.points_checked > 0);
        }
        let zero = monic_table(&int(2), &reference_rotation(), &LatticeBox::new(0, 0, 0, 0), ScalarMode::Exact, Route::Hypergeometric)
            .unwrap();
        assert_eq!(zero.rows, vec![TableRow { m: 0, n: 0, i: 0, k: 0, value: "1".into() }]);
    }

    #[test]
    fn corrupted_table_fails() {
        let mut t = monic_table(&int(2), &reference_rotation(), &LatticeBox::triangle(2, 2), ScalarMode::Exact, Route::Raising)
            .unwrap();
        t.rows[3].value = "7/5".into();
        let report = t.verify_recurrence().unwrap();
        assert!(!report.pass);
        assert!(report.counterexample.is_some());
    }
}
