//! Period-2 quasi-polynomial fitting by exact interpolation plus tail
//! confirmation, and the extremal-degree verdicts built on it.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use serde_json::json;
use thiserror::Error;

use crate::complex::{gf, BasisFilter, CeComplex, SliceKey};
use crate::homology::{generalized_binomial, CheckReport, Engine, EngineConfig, EngineError};
use crate::nu;
use crate::presentation::CohomologyPresentation;
use crate::rational::{format_rational, int, Rational};

/// Polynomial in `n` with rational coefficients, ascending degree, no
/// trailing zeros (the zero polynomial has no coefficients).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, n: i64) -> Rational {
        let x = int(n);
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * &x + c)
    }

    /// Newton interpolation through `(x, y)` points with distinct `x`.
    fn interpolate(points: &[(i64, i64)]) -> Self {
        let xs: Vec<Rational> = points.iter().map(|p| int(p.0)).collect();
        let mut dd: Vec<Rational> = points.iter().map(|p| int(p.1)).collect();
        for level in 1..dd.len() {
            for i in (level..dd.len()).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
            }
        }
        // Horner on the Newton form: c_0 + (x - x_0)(c_1 + (x - x_1)(...)).
        let mut acc: Vec<Rational> = Vec::new();
        for i in (0..dd.len()).rev() {
            let mut next = vec![Rational::zero(); acc.len() + 1];
            for (j, a) in acc.iter().enumerate() {
                next[j + 1] += a;
                next[j] -= a * &xs[i];
            }
            next[0] += &dd[i];
            acc = next;
        }
        Self::new(acc)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format_rational(c),
                1 => format!("{}·n", format_rational(c)),
                _ => format!("{}·n^{i}", format_rational(c)),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(format_rational))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiPolynomial {
    pub period: usize,
    pub p_even: Polynomial,
    pub q_odd: Polynomial,
    /// Every data point with `n >= onset` is reproduced exactly.
    pub onset: i64,
}

impl QuasiPolynomial {
    pub fn eval(&self, n: i64) -> Rational {
        if n % 2 == 0 {
            self.p_even.eval(n)
        } else {
            self.q_odd.eval(n)
        }
    }

    /// `max(deg p, deg q)`; `None` when both vanish.
    pub fn degree(&self) -> Option<usize> {
        self.p_even.degree().max(self.q_odd.degree())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityFit {
    pub parity: usize,
    pub points: usize,
    pub polynomial: Option<Polynomial>,
    /// Points matched beyond the `degree + 1` used to interpolate.
    pub confirmations: usize,
    /// Smallest `n` of this parity from which all points match.
    pub matches_from: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FitReport {
    pub window: (i64, i64),
    pub min_confirm: usize,
    pub even: ParityFit,
    pub odd: ParityFit,
    /// `None` when inconclusive.
    pub quasi_polynomial: Option<QuasiPolynomial>,
}

impl FitReport {
    pub fn is_conclusive(&self) -> bool {
        self.quasi_polynomial.is_some()
    }

    /// Fitted degree when conclusive; the inner `None` means identically zero.
    pub fn fitted_degree(&self) -> Option<Option<usize>> {
        self.quasi_polynomial.as_ref().map(QuasiPolynomial::degree)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FitError {
    #[error("window too short: {points} points, need at least 4")]
    WindowTooShort { points: usize },
    #[error("n values are not consecutive at n = {at}")]
    NotConsecutive { at: i64 },
    #[error("min_confirm must be at least 2, got {0}")]
    MinConfirm(usize),
}

pub const DEFAULT_MIN_CONFIRM: usize = 2;

fn fit_class(parity: usize, points: &[(i64, i64)], min_confirm: usize) -> ParityFit {
    let len = points.len();
    let mut fit = ParityFit { parity, points: len, polynomial: None, confirmations: 0, matches_from: None };
    // The zero polynomial counts as degree -1: it needs `min_confirm` points.
    if len >= min_confirm && points[len - min_confirm..].iter().all(|p| p.1 == 0) {
        fit.polynomial = Some(Polynomial::zero());
    } else {
        for degree in 0.. {
            let need = degree + 1 + min_confirm;
            if need > len {
                break;
            }
            let tail = &points[len - need..];
            let poly = Polynomial::interpolate(&tail[..degree + 1]);
            if tail[degree + 1..].iter().all(|&(n, y)| poly.eval(n) == int(y)) {
                fit.polynomial = Some(poly);
                break;
            }
        }
    }
    if let Some(poly) = &fit.polynomial {
        let mut start = len;
        while start > 0 && poly.eval(points[start - 1].0) == int(points[start - 1].1) {
            start -= 1;
        }
        let used = poly.degree().map_or(0, |d| d + 1);
        fit.confirmations = (len - start).saturating_sub(used);
        fit.matches_from = points.get(start).map(|p| p.0);
    }
    fit
}

/// Fits `p` on even `n` and `q` on odd `n`, each the minimal-degree
/// polynomial reproducing the last `degree + 1 + min_confirm` points of its
/// class.
pub fn fit(values: &[(i64, i64)], min_confirm: usize) -> Result<FitReport, FitError> {
    if min_confirm < 2 {
        return Err(FitError::MinConfirm(min_confirm));
    }
    if values.len() < 4 {
        return Err(FitError::WindowTooShort { points: values.len() });
    }
    for pair in values.windows(2) {
        if pair[1].0 != pair[0].0 + 1 {
            return Err(FitError::NotConsecutive { at: pair[1].0 });
        }
    }
    let class = |r: i64| -> Vec<(i64, i64)> { values.iter().copied().filter(|p| p.0.rem_euclid(2) == r).collect() };
    let even = fit_class(0, &class(0), min_confirm);
    let odd = fit_class(1, &class(1), min_confirm);
    let first = values[0].0;
    let last = values[values.len() - 1].0;
    let quasi_polynomial = match (&even.polynomial, &odd.polynomial) {
        (Some(p), Some(q)) => {
            let from = |c: &ParityFit| c.matches_from.map_or(last + 1, |m| m - 1);
            Some(QuasiPolynomial {
                period: 2,
                p_even: p.clone(),
                q_odd: q.clone(),
                onset: from(&even).max(from(&odd)).max(first),
            })
        }
        _ => None,
    };
    Ok(FitReport { window: (first, last), min_confirm, even, odd, quasi_polynomial })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum VerdictKind {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictKind::Pass => "PASS",
            VerdictKind::Fail => "FAIL",
            VerdictKind::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// Which statement a verdict speaks to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    /// Closed manifold, top degree.
    ClosedTop,
    /// Open manifold, one below the top degree.
    OpenTop,
    /// Any other offset: exploratory.
    Probe,
}

impl Claim {
    pub fn of(pres: &CohomologyPresentation, offset: usize) -> Self {
        match (pres.is_closed(), offset) {
            (true, 0) => Claim::ClosedTop,
            (false, 1) => Claim::OpenTop,
            _ => Claim::Probe,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub manifold: String,
    pub offset: usize,
    pub k: usize,
    pub expected_degree: Option<usize>,
    pub fitted_degree: Option<usize>,
    pub onset: Option<i64>,
    pub verdict: VerdictKind,
    #[serde(skip)]
    pub claim: Claim,
    #[serde(skip)]
    pub sequence: Vec<(usize, u64)>,
    #[serde(skip)]
    pub fit: Option<FitReport>,
}

impl Verdict {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("verdict serializes")
    }
}

/// Decides the verdict from a fit. `k = 0` demands an identically zero tail
/// and `k > 0` demands degree `k - 1`; a zero tail for `k > 0` fails the two
/// theorem cases and passes vacuously in probes.
pub fn judge(k: usize, claim: Claim, fit: Option<&FitReport>) -> VerdictKind {
    let Some(fitted) = fit.and_then(FitReport::fitted_degree) else {
        return VerdictKind::Inconclusive;
    };
    let expected = k.checked_sub(1);
    match (expected, fitted) {
        (e, f) if e == f => VerdictKind::Pass,
        (Some(_), None) if claim == Claim::Probe => VerdictKind::Pass,
        _ => VerdictKind::Fail,
    }
}

/// Computes `n ↦ dim H_{ν_n - offset}(B_n(M))` for `2 ≤ n ≤ n_max`, fits it,
/// and compares the degree with `dim H_c^1(M) - 1`.
pub fn verify_extremal_degree(
    pres: &CohomologyPresentation,
    offset: usize,
    n_max: usize,
    config: &EngineConfig,
) -> Result<Verdict, EngineError> {
    let mut config = config.clone();
    if config.window.is_none() {
        config.window = Some(offset + 1);
    }
    config.n_range = 2..=n_max.max(2);
    let engine = Engine::new(pres, config)?;
    let sequence = engine.extremal_sequence(offset, 2..=n_max)?;
    let values: Vec<(i64, i64)> = sequence.iter().map(|&(n, b)| (n as i64, b as i64)).collect();
    let fit = fit(&values, DEFAULT_MIN_CONFIRM).ok();
    let k = pres.k_invariant();
    let claim = Claim::of(pres, offset);
    let verdict = judge(k, claim, fit.as_ref());
    let quasi = fit.as_ref().and_then(|f| f.quasi_polynomial.as_ref());
    Ok(Verdict {
        manifold: pres.name().to_string(),
        offset,
        k,
        expected_degree: k.checked_sub(1),
        fitted_degree: quasi.and_then(QuasiPolynomial::degree),
        onset: quasi.map(|q| q.onset),
        verdict,
        claim,
        sequence,
        fit,
    })
}

/// Size of the extremal weight-`⌊n/2⌋` slice for odd `n`: the reduced
/// `(ν_n, ⌊n/2⌋)` slice when closed, `(ν_n - 1, ⌊n/2⌋)` when open.
pub fn slice_count_check(pres: &CohomologyPresentation, n: usize) -> Result<CheckReport, EngineError> {
    let k = pres.k_invariant();
    if k == 0 || n < 3 || n.is_multiple_of(2) {
        return Err(EngineError::Config("slice count needs k >= 1 and odd n >= 3".into()));
    }
    let complex = CeComplex::new(pres)?;
    let half = n / 2;
    let top = nu(pres.dim(), n);
    let (degree, filter, factor) = if pres.is_closed() {
        (top, BasisFilter::Reduced, 1)
    } else {
        (top - 1, BasisFilter::Full, k as i128)
    };
    let enumerated = complex.slice(SliceKey::new(n, degree, half), filter)?.len() as i128;
    let counted = gf::slice_dimensions(complex.generators(), n, filter)
        .get(&(degree, half))
        .copied()
        .unwrap_or(0) as i128;
    let expected = factor * generalized_binomial((half + k - 1) as i64, k - 1);
    Ok(CheckReport {
        check: "slice_count".into(),
        pass: enumerated == expected && counted == expected,
        details: json!({
            "manifold": pres.name(),
            "n": n,
            "degree": degree,
            "weight": half,
            "enumerated": enumerated,
            "generating_function": counted,
            "expected": expected,
        }),
    })
}

/// Evaluates to an integer when the fit is integral at `n`.
pub fn predict(q: &QuasiPolynomial, n: i64) -> Option<i64> {
    let v = q.eval(n);
    (v.denom().is_one()).then(|| v.numer().try_into().ok()).flatten()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(range: std::ops::RangeInclusive<i64>, f: impl Fn(i64) -> i64) -> Vec<(i64, i64)> {
        range.map(|n| (n, f(n))).collect()
    }

    #[test]
    fn constant() {
        let r = fit(&seq(1..=10, |_| 5), 2).unwrap();
        let q = r.quasi_polynomial.unwrap();
        assert_eq!(q.degree(), Some(0));
        assert_eq!(q.onset, 1);
    }

    #[test]
    fn piecewise_linear() {
        let r = fit(&seq(2..=13, |n| if n % 2 == 0 { n / 2 + 1 } else { 0 }), 2).unwrap();
        let q = r.quasi_polynomial.unwrap();
        assert_eq!(q.p_even.degree(), Some(1));
        assert!(q.q_odd.is_zero());
        assert_eq!(q.degree(), Some(1));
        assert_eq!(q.eval(20), int(11));
    }

    #[test]
    fn insufficient_window() {
        let r = fit(&seq(3..=6, |n| n * n * n), 2).unwrap();
        assert!(!r.is_conclusive());
    }

    #[test]
    fn errors() {
        assert_eq!(fit(&seq(1..=3, |_| 0), 2), Err(FitError::WindowTooShort { points: 3 }));
        assert_eq!(fit(&[(1, 0), (2, 0), (4, 0), (5, 0)], 2), Err(FitError::NotConsecutive { at: 4 }));
        assert_eq!(fit(&seq(1..=8, |_| 0), 1), Err(FitError::MinConfirm(1)));
    }

    #[test]
    fn onset_after_transient() {
        let r = fit(&seq(1..=14, |n| if n < 5 { 7 } else { 2 * n }), 2).unwrap();
        let q = r.quasi_polynomial.unwrap();
        assert_eq!(q.onset, 5);
        assert_eq!(q.degree(), Some(1));
    }

    #[test]
    fn rational_coefficients() {
        let r = fit(&seq(1..=16, |n| n * (n + 1) / 2), 2).unwrap();
        let q = r.quasi_polynomial.unwrap();
        assert_eq!(q.p_even.coeffs()[2], Rational::new(1.into(), 2.into()));
        assert_eq!(predict(&q, 100), Some(5050));
    }

    #[test]
    fn judging() {
        let zero = fit(&seq(2..=10, |_| 0), 2).unwrap();
        let linear = fit(&seq(2..=10, |n| n), 2).unwrap();
        assert_eq!(judge(0, Claim::ClosedTop, Some(&zero)), VerdictKind::Pass);
        assert_eq!(judge(2, Claim::ClosedTop, Some(&linear)), VerdictKind::Pass);
        assert_eq!(judge(3, Claim::ClosedTop, Some(&linear)), VerdictKind::Fail);
        assert_eq!(judge(2, Claim::ClosedTop, Some(&zero)), VerdictKind::Fail);
        assert_eq!(judge(2, Claim::Probe, Some(&zero)), VerdictKind::Pass);
        assert_eq!(judge(2, Claim::OpenTop, None), VerdictKind::Inconclusive);
    }

    #[test]
    fn verdict_json_fields() {
        let v = Verdict {
            manifold: "t2".into(),
            offset: 0,
            k: 2,
            expected_degree: Some(1),
            fitted_degree: Some(1),
            onset: Some(3),
            verdict: VerdictKind::Pass,
            claim: Claim::ClosedTop,
            sequence: vec![],
            fit: None,
        };
        assert_eq!(
            v.to_json(),
            r#"{"manifold":"t2","offset":0,"k":2,"expected_degree":1,"fitted_degree":1,"onset":3,"verdict":"PASS"}"#
        );
    }
}
