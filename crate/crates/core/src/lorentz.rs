//! Orthochronous pseudo-rotations of `R^{d,1}` with exact rational entries.
//!
//! The metric is `eta = diag(1, ..., 1, -1)`; the timelike axis is the last
//! one. Boosts and spatial rotations are parametrized rationally so every
//! generated matrix is exact: a boost with parameter `t > 0` has
//! `cosh = (t + 1/t)/2`, `sinh = (t - 1/t)/2` (so `t = e^xi`), and a rotation
//! with parameter `s` has `cos = (1 - s^2)/(1 + s^2)`, `sin = 2s/(1 + s^2)`
//! (so `s = tan(theta/2)`).

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{int, parse_rational, Rational, Scalar};

/// Dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    size: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn identity(size: usize) -> Self {
        let mut data = vec![S::zero(); size * size];
        for i in 0..size {
            data[i * size + i] = S::one();
        }
        Matrix { size, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let size = rows.len();
        let mut data = Vec::with_capacity(size * size);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != size {
                return Err(Error::NotSquare { rows: size, bad_row: r, len: row.len() });
            }
            data.extend(row);
        }
        Ok(Matrix { size, data })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Zero-based entry access.
    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.size + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.size + c] = v;
    }

    pub fn rows(&self) -> Vec<Vec<S>> {
        self.data.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.size;
        let mut out = self.clone();
        for r in 0..n {
            for c in 0..n {
                out.data[c * n + r] = self.get(r, c).clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.size != other.size {
            return Err(Error::DimensionMismatch(self.size, other.size));
        }
        let n = self.size;
        let mut data = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = S::zero();
                for k in 0..n {
                    acc = acc + self.get(r, k).clone() * other.get(k, c).clone();
                }
                data.push(acc);
            }
        }
        Ok(Matrix { size: n, data })
    }

    /// `eta M eta` with `eta = diag(1, .., 1, -1)`.
    pub fn eta_conjugate(&self) -> Self {
        let n = self.size;
        let mut out = self.clone();
        for r in 0..n {
            for c in 0..n {
                if (r == n - 1) != (c == n - 1) {
                    out.data[r * n + c] = -self.get(r, c).clone();
                }
            }
        }
        out
    }

    /// Determinant by Gaussian elimination (exact over the rationals).
    pub fn determinant(&self) -> S {
        let n = self.size;
        let mut a = self.data.clone();
        let mut det = S::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return S::zero();
            };
            if pivot != col {
                for c in 0..n {
                    a.swap(pivot * n + c, col * n + c);
                }
                det = -det;
            }
            let p = a[col * n + col].clone();
            det = det * p.clone();
            for r in col + 1..n {
                let f = a[r * n + col].clone() / p.clone();
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = a[r * n + c].clone() - f.clone() * a[col * n + c].clone();
                    a[r * n + c] = v;
                }
            }
        }
        det
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix { size: self.size, data: self.data.iter().map(f).collect() }
    }
}

/// A validated orthochronous element of `SO(d,1)`: `L^t eta L = eta` and
/// `L[d][d] >= 1`, held exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct PseudoRotation {
    d: usize,
    m: Matrix<Rational>,
}

/// Rational one-parameter subgroup element. Axes are zero-based; the
/// timelike axis is `d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SubgroupParam {
    /// Boost in the plane `(axis, d)`.
    Boost {
        axis: usize,
        #[serde(with = "crate::scalar::rational_string")]
        t: Rational,
    },
    /// Rotation in the spatial plane `(i, j)`, `i < j < d`.
    Rotation {
        i: usize,
        j: usize,
        #[serde(with = "crate::scalar::rational_string")]
        s: Rational,
    },
}

impl SubgroupParam {
    pub fn to_matrix(&self, d: usize) -> Result<PseudoRotation> {
        match self {
            SubgroupParam::Boost { axis, t } => boost(*axis, t, d),
            SubgroupParam::Rotation { i, j, s } => rotation((*i, *j), s, d),
        }
    }
}

impl fmt::Display for SubgroupParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // one-based axes, the form accepted by the CLI
        match self {
            SubgroupParam::Boost { axis, t } => write!(f, "boost:{}:{}", axis + 1, t),
            SubgroupParam::Rotation { i, j, s } => write!(f, "rot:{}-{}:{}", i + 1, j + 1, s),
        }
    }
}

/// Parses `boost:AXIS:T` or `rot:I-J:S` with one-based axes.
pub fn parse_subgroup_param(text: &str) -> Result<SubgroupParam> {
    let bad = || Error::Parse(format!("bad subgroup parameter `{text}`"));
    let mut parts = text.trim().split(':');
    let kind = parts.next().ok_or_else(bad)?;
    let plane = parts.next().ok_or_else(bad)?;
    let value = parse_rational(parts.next().ok_or_else(bad)?)?;
    if parts.next().is_some() {
        return Err(bad());
    }
    let axis = |s: &str| -> Result<usize> {
        let a: usize = s.trim().parse().map_err(|_| bad())?;
        a.checked_sub(1).ok_or_else(bad)
    };
    match kind {
        "boost" => Ok(SubgroupParam::Boost { axis: axis(plane)?, t: value }),
        "rot" => {
            let (i, j) = plane.split_once('-').ok_or_else(bad)?;
            Ok(SubgroupParam::Rotation { i: axis(i)?, j: axis(j)?, s: value })
        }
        _ => Err(bad()),
    }
}

/// Builds the ordered product of subgroup elements.
pub fn product_of(params: &[SubgroupParam], d: usize) -> Result<PseudoRotation> {
    params.iter().try_fold(PseudoRotation::identity(d), |acc, p| compose(&acc, &p.to_matrix(d)?))
}

impl PseudoRotation {
    pub fn identity(d: usize) -> Self {
        PseudoRotation { d, m: Matrix::identity(d + 1) }
    }

    /// Number of space dimensions.
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.m
    }

    /// Zero-based entry.
    pub fn entry(&self, r: usize, c: usize) -> &Rational {
        self.m.get(r, c)
    }

    pub fn to_scalar<S: Scalar>(&self) -> Matrix<S> {
        self.m.map(S::from_rational)
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        self.to_scalar()
    }

    pub fn determinant(&self) -> Rational {
        self.m.determinant()
    }
}

/// Checks both defining conditions exactly.
pub fn validate(m: Matrix<Rational>) -> Result<PseudoRotation> {
    let n = m.size();
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need at least a 2x2 matrix, got {n}x{n}")));
    }
    let eta = {
        let mut e = Matrix::<Rational>::identity(n);
        e.set(n - 1, n - 1, int(-1));
        e
    };
    let form = m.transpose().mul(&eta)?.mul(&m)?;
    if form != eta {
        return Err(Error::NotPseudoOrthogonal);
    }
    let corner = m.get(n - 1, n - 1);
    if *corner < Rational::one() {
        return Err(Error::NotOrthochronous(corner.to_string()));
    }
    Ok(PseudoRotation { d: n - 1, m })
}

/// The group inverse `eta L^t eta`.
pub fn inverse_tilde(l: &PseudoRotation) -> PseudoRotation {
    PseudoRotation { d: l.d, m: l.m.transpose().eta_conjugate() }
}

/// Boost in the plane `(axis, d)` with rational rapidity parameter `t = e^xi`.
pub fn boost(axis: usize, t: &Rational, d: usize) -> Result<PseudoRotation> {
    if axis >= d {
        return Err(Error::InvalidParameter(format!("boost axis {} outside 1..={d}", axis + 1)));
    }
    if !t.is_positive() {
        return Err(Error::InvalidParameter(format!("boost parameter must be positive, got {t}")));
    }
    let inv = t.recip();
    let half = Rational::new(1.into(), 2.into());
    let ch = (t + &inv) * &half;
    let sh = (t - &inv) * &half;
    let mut m = Matrix::identity(d + 1);
    m.set(axis, axis, ch.clone());
    m.set(d, d, ch);
    m.set(axis, d, sh.clone());
    m.set(d, axis, sh);
    Ok(PseudoRotation { d, m })
}

/// Rotation in the spatial plane `(i, j)` with `s = tan(theta/2)`.
pub fn rotation(plane: (usize, usize), s: &Rational, d: usize) -> Result<PseudoRotation> {
    let (i, j) = plane;
    if i >= j || j >= d {
        return Err(Error::InvalidParameter(format!(
            "rotation plane ({}, {}) must satisfy 1 <= i < j <= {d}",
            i + 1,
            j + 1
        )));
    }
    let s2 = s * s;
    let denom = Rational::one() + &s2;
    let cos = (Rational::one() - &s2) / &denom;
    let sin = (s * int(2)) / &denom;
    let mut m = Matrix::identity(d + 1);
    m.set(i, i, cos.clone());
    m.set(j, j, cos);
    m.set(i, j, sin.clone());
    m.set(j, i, -sin);
    Ok(PseudoRotation { d, m })
}

/// Exact product `A B`, revalidated.
pub fn compose(a: &PseudoRotation, b: &PseudoRotation) -> Result<PseudoRotation> {
    if a.d != b.d {
        return Err(Error::DimensionMismatch(a.d, b.d));
    }
    validate(a.m.mul(&b.m)?)
}

/// `R(1/2) Psi(2) R(2/3)`: a dense, generic element of `SO(2,1)` with small
/// rational entries, used as the default system.
pub fn reference_rotation() -> PseudoRotation {
    let half = Rational::new(1.into(), 2.into());
    let two_thirds = Rational::new(2.into(), 3.into());
    let r1 = rotation((0, 1), &half, 2).expect("valid plane");
    let b = boost(1, &int(2), 2).expect("valid axis");
    let r2 = rotation((0, 1), &two_thirds, 2).expect("valid plane");
    compose(&r1, &compose(&b, &r2).expect("same d")).expect("same d")
}

/// True iff every entry of the last row and last column is nonzero, which is
/// what the generic formulas divide by.
pub fn is_generic(l: &PseudoRotation) -> bool {
    let d = l.d;
    (0..=d).all(|k| !l.entry(d, k).is_zero() && !l.entry(k, d).is_zero())
}

pub(crate) fn require_generic(l: &PseudoRotation) -> Result<()> {
    if is_generic(l) {
        return Ok(());
    }
    let d = l.d;
    let zeros: Vec<String> = (0..=d)
        .flat_map(|k| if k == d { vec![(d, d)] } else { vec![(d, k), (k, d)] })
        .filter(|&(r, c)| l.entry(r, c).is_zero())
        .map(|(r, c)| format!("L{}{}", r + 1, c + 1))
        .collect();
    Err(Error::NonGeneric(format!("zero entries {}", zeros.join(", "))))
}

/// On-disk matrix representation: `{"d": 2, "entries": [["p/q", ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub d: usize,
    pub entries: Vec<Vec<String>>,
}

impl MatrixFile {
    pub fn from_rotation(l: &PseudoRotation) -> Self {
        MatrixFile {
            d: l.d,
            entries: l.m.rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
        }
    }

    pub fn to_rotation(&self) -> Result<PseudoRotation> {
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if rows.len() != self.d + 1 {
            return Err(Error::DimensionMismatch(rows.len(), self.d + 1));
        }
        validate(Matrix::from_rows(rows)?)
    }

    pub fn parse(json: &str) -> Result<PseudoRotation> {
        let file: MatrixFile = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
        file.to_rotation()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("matrix file serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use proptest::prelude::*;

    fn rat_rows(rows: &[&[(i64, i64)]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&(p, q)| ratio(p, q)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(validate(Matrix::identity(3)).is_ok());
        let xi = rat_rows(&[&[(5, 4), (0, 1), (3, 4)], &[(0, 1), (1, 1), (0, 1)], &[(3, 4), (0, 1), (5, 4)]]);
        assert!(validate(xi).is_ok());
        let eta = rat_rows(&[&[(1, 1), (0, 1), (0, 1)], &[(0, 1), (1, 1), (0, 1)], &[(0, 1), (0, 1), (-1, 1)]]);
        assert_eq!(validate(eta), Err(Error::NotOrthochronous("-1".into())));
        let skew = rat_rows(&[&[(1, 1), (1, 2), (0, 1)], &[(0, 1), (1, 1), (0, 1)], &[(0, 1), (0, 1), (1, 1)]]);
        assert_eq!(validate(skew), Err(Error::NotPseudoOrthogonal));
        assert!(matches!(
            Matrix::from_rows(vec![vec![int(1), int(0)], vec![int(0)]]),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn boosts() {
        assert_eq!(boost(0, &int(1), 2).unwrap(), PseudoRotation::identity(2));
        let b = boost(0, &int(2), 2).unwrap();
        assert_eq!(*b.entry(0, 0), ratio(5, 4));
        assert_eq!(*b.entry(2, 2), ratio(5, 4));
        assert_eq!(*b.entry(0, 2), ratio(3, 4));
        assert_eq!(*b.entry(2, 0), ratio(3, 4));
        assert_eq!(*b.entry(1, 1), int(1));
        let b = boost(1, &int(3), 2).unwrap();
        assert_eq!(*b.entry(1, 1), ratio(5, 3));
        assert_eq!(*b.entry(1, 2), ratio(4, 3));
        assert!(boost(0, &int(0), 2).is_err());
        assert!(boost(0, &int(-2), 2).is_err());
        assert!(boost(2, &int(2), 2).is_err());
    }

    #[test]
    fn rotations() {
        assert_eq!(rotation((0, 1), &int(0), 2).unwrap(), PseudoRotation::identity(2));
        let r = rotation((0, 1), &ratio(1, 2), 2).unwrap();
        assert_eq!(*r.entry(0, 0), ratio(3, 5));
        assert_eq!(*r.entry(0, 1), ratio(4, 5));
        assert_eq!(*r.entry(1, 0), ratio(-4, 5));
        let q = rotation((0, 1), &int(1), 2).unwrap();
        assert_eq!(*q.entry(0, 0), int(0));
        assert_eq!(*q.entry(0, 1), int(1));
        assert!(rotation((0, 2), &int(1), 2).is_err());
        assert!(rotation((1, 0), &int(1), 2).is_err());
    }

    #[test]
    fn inverse_and_composition() {
        let id = PseudoRotation::identity(2);
        assert_eq!(inverse_tilde(&id), id);
        assert_eq!(inverse_tilde(&boost(0, &int(2), 2).unwrap()), boost(0, &ratio(1, 2), 2).unwrap());
        let a = boost(0, &int(2), 2).unwrap();
        assert_eq!(compose(&a, &id).unwrap(), a);
        assert_eq!(
            compose(&a, &boost(0, &int(3), 2).unwrap()).unwrap(),
            boost(0, &int(6), 2).unwrap()
        );
        assert!(matches!(compose(&a, &PseudoRotation::identity(3)), Err(Error::DimensionMismatch(2, 3))));
    }

    #[test]
    fn general_element_is_dense_and_generic() {
        let l = product_of(
            &[
                SubgroupParam::Rotation { i: 0, j: 1, s: ratio(1, 2) },
                SubgroupParam::Boost { axis: 1, t: int(2) },
                SubgroupParam::Rotation { i: 0, j: 1, s: ratio(2, 3) },
            ],
            2,
        )
        .unwrap();
        assert_eq!(l, reference_rotation());
        // frozen from exact multiplication of the three factors
        let expected = rat_rows(&[
            &[(-9, 13), (61, 65), (3, 5)],
            &[(-1, 1), (-9, 20), (9, 20)],
            &[(-9, 13), (15, 52), (5, 4)],
        ]);
        assert_eq!(*l.matrix(), expected);
        assert!(is_generic(&l));
        assert!(!is_generic(&PseudoRotation::identity(2)));
        assert!(!is_generic(&boost(0, &int(2), 2).unwrap()));
        assert!(require_generic(&boost(0, &int(2), 2).unwrap()).is_err());
    }

    #[test]
    fn matrix_file_round_trip() {
        let l = compose(&boost(1, &int(2), 2).unwrap(), &rotation((0, 1), &ratio(1, 3), 2).unwrap()).unwrap();
        let json = MatrixFile::from_rotation(&l).to_json();
        assert_eq!(MatrixFile::parse(&json).unwrap(), l);
        let corrupt = json.replacen("\"5/4\"", "\"5/3\"", 1);
        assert_eq!(MatrixFile::parse(&corrupt), Err(Error::NotPseudoOrthogonal));
        assert!(MatrixFile::parse("{\"d\": 1, \"entries\": [[\"1\"]]}").is_err());
    }

    #[test]
    fn subgroup_param_text() {
        let p = parse_subgroup_param("rot:1-2:1/2").unwrap();
        assert_eq!(p, SubgroupParam::Rotation { i: 0, j: 1, s: ratio(1, 2) });
        assert_eq!(p.to_string(), "rot:1-2:1/2");
        let b = parse_subgroup_param("boost:2:3").unwrap();
        assert_eq!(b, SubgroupParam::Boost { axis: 1, t: int(3) });
        assert!(parse_subgroup_param("boost:0:3").is_err());
        assert!(parse_subgroup_param("spin:1:3").is_err());
    }

    fn arb_factor(d: usize) -> impl Strategy<Value = SubgroupParam> {
        let boosts = (0..d, 1i64..10, 1i64..10).prop_map(|(axis, p, q)| SubgroupParam::Boost { axis, t: ratio(p, q) });
        let rots = (0..d, 0..d, -9i64..10, 1i64..10).prop_filter_map("distinct axes", |(a, b, p, q)| {
            (a != b).then(|| SubgroupParam::Rotation { i: a.min(b), j: a.max(b), s: ratio(p, q) })
        });
        if d >= 2 {
            prop_oneof![boosts, rots].boxed()
        } else {
            boosts.boxed()
        }
    }

    proptest! {
        #[test]
        fn products_stay_in_the_group(d in 1usize..4, factors in proptest::collection::vec(0usize..1000, 1..5)) {
            // derive the factor list deterministically from the drawn seeds
            let params: Vec<SubgroupParam> = factors.iter().enumerate().map(|(k, &seed)| {
                let t = ratio((seed % 9 + 1) as i64, ((seed / 9) % 9 + 1) as i64);
                if d >= 2 && (seed + k) % 2 == 0 {
                    SubgroupParam::Rotation { i: 0, j: 1 + seed % (d - 1), s: t }
                } else {
                    SubgroupParam::Boost { axis: seed % d, t }
                }
            }).collect();
            let l = product_of(&params, d).unwrap();
            prop_assert!(validate(l.matrix().clone()).is_ok());
            prop_assert_eq!(l.determinant(), int(1));
            prop_assert_eq!(inverse_tilde(&inverse_tilde(&l)), l.clone());
            prop_assert_eq!(compose(&l, &inverse_tilde(&l)).unwrap(), PseudoRotation::identity(d));
        }

        #[test]
        fn composition_is_associative(a in arb_factor(2), b in arb_factor(2), c in arb_factor(2)) {
            let (a, b, c) = (a.to_matrix(2).unwrap(), b.to_matrix(2).unwrap(), c.to_matrix(2).unwrap());
            let left = compose(&compose(&a, &b).unwrap(), &c).unwrap();
            let right = compose(&a, &compose(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }
}
