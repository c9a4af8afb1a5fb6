//! Lattice boxes and structured results of identity checks.

use serde::{Deserialize, Serialize};

use crate::scalar::{Scalar, ScalarMode};

/// Bounds for a bivariate check: degrees `(m, n)` and arguments `(i, k)`.
///
/// Optional totals further restrict to `m + n <= degree_total` and
/// `i + k <= argument_total`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeBox {
    pub max_m: usize,
    pub max_n: usize,
    pub max_i: usize,
    pub max_k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_total: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub argument_total: Option<usize>,
}

impl LatticeBox {
    pub fn new(max_m: usize, max_n: usize, max_i: usize, max_k: usize) -> Self {
        LatticeBox { max_m, max_n, max_i, max_k, degree_total: None, argument_total: None }
    }

    /// `m + n <= degree`, `i, k <= arg`.
    pub fn triangle(degree: usize, arg: usize) -> Self {
        LatticeBox::new(degree, degree, arg, arg).with_degree_total(degree)
    }

    pub fn with_degree_total(mut self, total: usize) -> Self {
        self.degree_total = Some(total);
        self
    }

    pub fn with_argument_total(mut self, total: usize) -> Self {
        self.argument_total = Some(total);
        self
    }

    /// Largest `m + n` in the box.
    pub fn max_degree(&self) -> usize {
        let d = self.max_m + self.max_n;
        self.degree_total.map_or(d, |t| t.min(d))
    }

    pub fn max_argument_sum(&self) -> usize {
        let a = self.max_i + self.max_k;
        self.argument_total.map_or(a, |t| t.min(a))
    }

    /// Degree pairs in lexicographic order.
    pub fn degrees(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for m in 0..=self.max_m {
            for n in 0..=self.max_n {
                if self.degree_total.is_none_or(|t| m + n <= t) {
                    out.push((m, n));
                }
            }
        }
        out
    }

    /// Argument pairs in lexicographic order.
    pub fn arguments(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..=self.max_i {
            for k in 0..=self.max_k {
                if self.argument_total.is_none_or(|t| i + k <= t) {
                    out.push((i, k));
                }
            }
        }
        out
    }

    /// All `(m, n, i, k)` in lexicographic order.
    pub fn points(&self) -> Vec<[usize; 4]> {
        let args = self.arguments();
        self.degrees()
            .into_iter()
            .flat_map(|(m, n)| args.iter().map(move |&(i, k)| [m, n, i, k]))
            .collect()
    }

    pub fn volume(&self) -> usize {
        self.degrees().len() * self.arguments().len()
    }
}

/// Discrepancy as text for exact runs and as a number for float runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Discrepancy {
    Exact(String),
    Float(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    /// e.g. `m=1 n=0 i=2 k=3`
    pub point: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub suite: String,
    #[serde(rename = "box")]
    pub domain: serde_json::Value,
    pub mode: ScalarMode,
    pub max_discrepancy: Discrepancy,
    pub tolerance: f64,
    pub points_checked: usize,
    pub counterexample: Option<Counterexample>,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl EvalReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn max_discrepancy_f64(&self) -> f64 {
        match &self.max_discrepancy {
            Discrepancy::Float(x) => *x,
            Discrepancy::Exact(s) => crate::scalar::parse_rational(s).map(|r| Scalar::to_f64(&r)).unwrap_or(f64::NAN),
        }
    }

    /// Folds several reports into one; passes iff all pass, keeps the first
    /// counterexample.
    pub fn combine(suite: &str, parts: Vec<EvalReport>) -> EvalReport {
        let mode = parts.first().map_or(ScalarMode::Exact, |r| r.mode);
        let mut worst: Option<&EvalReport> = None;
        for r in &parts {
            if worst.is_none_or(|w| r.max_discrepancy_f64() > w.max_discrepancy_f64()) {
                worst = Some(r);
            }
        }
        let max_discrepancy = worst.map_or(Discrepancy::Exact("0".into()), |w| w.max_discrepancy.clone());
        let counterexample = parts.iter().find_map(|r| {
            r.counterexample.clone().map(|mut c| {
                c.point = format!("{}: {}", r.suite, c.point);
                c
            })
        });
        EvalReport {
            suite: suite.to_string(),
            domain: serde_json::Value::Array(
                parts.iter().map(|r| serde_json::json!({ "suite": r.suite, "box": r.domain })).collect(),
            ),
            mode,
            max_discrepancy,
            tolerance: parts.iter().map(|r| r.tolerance).fold(0.0, f64::max),
            points_checked: parts.iter().map(|r| r.points_checked).sum(),
            counterexample,
            pass: parts.iter().all(|r| r.pass),
            notes: parts.iter().flat_map(|r| r.notes.iter().cloned()).collect(),
        }
    }
}

/// Accumulates per-point comparisons into an [`EvalReport`].
///
/// Float points pass when `|lhs - rhs| <= tol * max(1, |lhs|, |rhs|)`; exact
/// points only when equal.
pub struct Tally<S: Scalar> {
    suite: String,
    domain: serde_json::Value,
    tol: f64,
    max: S,
    checked: usize,
    first_failure: Option<Counterexample>,
    notes: Vec<String>,
}

impl<S: Scalar> Tally<S> {
    pub fn new(suite: &str, domain: impl Serialize, tol: f64) -> Self {
        Tally {
            suite: suite.to_string(),
            domain: serde_json::to_value(domain).expect("domain serializes"),
            tol,
            max: S::zero(),
            checked: 0,
            first_failure: None,
            notes: Vec::new(),
        }
    }

    pub fn record(&mut self, point: impl FnOnce() -> String, lhs: &S, rhs: &S) {
        self.checked += 1;
        let diff = (lhs.clone() - rhs.clone()).abs_value();
        let ok = match S::MODE {
            ScalarMode::Exact => diff.is_zero(),
            ScalarMode::Float => {
                let scale = 1f64.max(lhs.to_f64().abs()).max(rhs.to_f64().abs());
                diff.to_f64() <= self.tol * scale
            }
        };
        if diff > self.max || diff.to_f64().is_nan() {
            self.max = diff;
        }
        if !ok && self.first_failure.is_none() {
            self.first_failure = Some(Counterexample { point: point(), lhs: lhs.render(), rhs: rhs.render() });
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn finish(self) -> EvalReport {
        let max_discrepancy = match S::MODE {
            ScalarMode::Exact => Discrepancy::Exact(self.max.render()),
            ScalarMode::Float => Discrepancy::Float(self.max.to_f64()),
        };
        EvalReport {
            suite: self.suite,
            domain: self.domain,
            mode: S::MODE,
            max_discrepancy,
            tolerance: self.tol,
            points_checked: self.checked,
            pass: self.first_failure.is_none(),
            counterexample: self.first_failure,
            notes: self.notes,
        }
    }
}

pub(crate) fn point4(m: usize, n: usize, i: usize, k: usize) -> String {
    format!("m={m} n={n} i={i} k={k}")
}
