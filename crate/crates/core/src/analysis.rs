//! Comparison of symbolic classes, closed-form formulas and enumeration;
//! polynomiality detection; the semi-smallness and decomposition checks.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{self, CatalogError, StratumInfo};
use crate::enumerate::{self as en, Budget, CountMethod, EnumError, Parallelism};
use crate::ffield::odd_primes;
use crate::lefschetz::{LPoly, ScaledClass};
use crate::routes::{self, SymbolicOutcome};
use crate::space::SpaceExpr;

/// Enumeration jobs up to this size are used when padding a fit with
/// extra primes; larger ones fall back to the formula or the class.
pub const AUGMENT_ENUMERATION_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("need at least {needed} points with distinct q, got {got}")]
    InsufficientPoints { needed: usize, got: usize },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Enumeration(#[from] EnumError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolyStatus {
    IntegerPolynomial,
    RationalPolynomial,
    NoPolynomialFit,
}

impl std::fmt::Display for PolyStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PolyStatus::IntegerPolynomial => "integer_polynomial",
            PolyStatus::RationalPolynomial => "rational_polynomial",
            PolyStatus::NoPolynomialFit => "no_polynomial_fit",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyVerdict {
    pub status: PolyStatus,
    pub fitted: Option<ScaledClass>,
    /// Common denominator of the fitted coefficients.
    pub denominator: Option<BigInt>,
    /// Points the interpolant was built from.
    pub witnesses: Vec<u32>,
    /// Held-out points it was checked against.
    pub validation_primes: Vec<u32>,
}

/// Multiplies two polynomials with rational coefficients (ascending order).
fn rat_poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn rat_eval(coeffs: &[BigRational], q: &BigRational) -> BigRational {
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * q + c)
}

/// Interpolates exactly through the first `max_degree + 1` points and
/// checks the rest. Any miss on a held-out point means no polynomial of
/// degree `<= max_degree` fits.
pub fn fit_polynomial(points: &[(u32, BigRational)], max_degree: usize) -> Result<PolyVerdict, AnalysisError> {
    let needed = max_degree + 2;
    let mut qs: Vec<u32> = points.iter().map(|(q, _)| *q).collect();
    qs.sort_unstable();
    qs.dedup();
    if qs.len() != points.len() || points.len() < needed {
        return Err(AnalysisError::InsufficientPoints { needed, got: qs.len() });
    }
    let (fit, held_out) = points.split_at(max_degree + 1);
    let xs: Vec<BigRational> = fit.iter().map(|(q, _)| BigRational::from_integer((*q).into())).collect();

    // Lagrange basis, summed in the monomial basis
    let mut coeffs = vec![BigRational::zero(); fit.len()];
    for (i, (_, yi)) in fit.iter().enumerate() {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = rat_poly_mul(&basis, &[-xj.clone(), BigRational::one()]);
            denom *= &xs[i] - xj;
        }
        let scale = yi / denom;
        for (c, b) in coeffs.iter_mut().zip(basis) {
            *c += b * &scale;
        }
    }
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }

    let witnesses = fit.iter().map(|(q, _)| *q).collect();
    let validation_primes: Vec<u32> = held_out.iter().map(|(q, _)| *q).collect();
    let fits = held_out
        .iter()
        .all(|(q, y)| &rat_eval(&coeffs, &BigRational::from_integer((*q).into())) == y);
    if !fits {
        return Ok(PolyVerdict {
            status: PolyStatus::NoPolynomialFit,
            fitted: None,
            denominator: None,
            witnesses,
            validation_primes,
        });
    }
    let denominator = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let d = BigRational::from_integer(denominator.clone());
    let poly = LPoly::from_coeffs(coeffs.iter().map(|c| (c * &d).to_integer()).collect());
    let fitted = ScaledClass::new(BigRational::new(BigInt::one(), denominator.clone()), poly);
    let status = if denominator.is_one() { PolyStatus::IntegerPolynomial } else { PolyStatus::RationalPolynomial };
    Ok(PolyVerdict { status, fitted: Some(fitted), denominator: Some(denominator), witnesses, validation_primes })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FitPoint {
    pub q: u32,
    pub value: BigRational,
    pub method: CountMethod,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetectReport {
    pub space: String,
    pub max_degree: usize,
    pub points: Vec<FitPoint>,
    /// `None` when not enough points could be gathered.
    pub verdict: Option<PolyVerdict>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub budget: Budget,
    pub parallelism: Parallelism,
    pub max_degree: Option<usize>,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { budget: Budget::default(), parallelism: Parallelism::Parallel, max_degree: None }
    }
}

/// Default degree bound: expected dimension plus one.
pub fn default_max_degree(expr: &SpaceExpr) -> usize {
    catalog::expected_dimension(expr).map_or(10, |d| d + 1)
}

/// One data point, preferring enumeration within `enum_budget`.
fn best_point(expr: &SpaceExpr, q: u32, enum_budget: &Budget, par: Parallelism) -> Result<Option<FitPoint>, AnalysisError> {
    match routes::enumerate_expr(expr, q, enum_budget, par) {
        Ok(Some(e)) => {
            return Ok(Some(FitPoint { q, value: BigRational::from_integer(e.count), method: CountMethod::Enumeration }))
        }
        Ok(None) | Err(EnumError::BudgetExceeded { .. }) => {}
        Err(e) => return Err(e.into()),
    }
    if let Some(v) = routes::formula_value(expr, q)? {
        return Ok(Some(FitPoint { q, value: v, method: CountMethod::Formula }));
    }
    if let SymbolicOutcome::Value(v) = routes::symbolic_value(expr, q)? {
        return Ok(Some(FitPoint { q, value: v, method: CountMethod::Symbolic }));
    }
    Ok(None)
}

/// Gathers counts at `primes` (and, if needed, further odd primes) and
/// fits a polynomial to them.
pub fn detect_polynomial(expr: &SpaceExpr, primes: &[u32], opts: &AnalysisOptions) -> Result<DetectReport, AnalysisError> {
    let max_degree = opts.max_degree.unwrap_or_else(|| default_max_degree(expr));
    let needed = max_degree + 2;
    let mut points = Vec::new();
    for &q in primes {
        if let Some(pt) = best_point(expr, q, &opts.budget, opts.parallelism)? {
            points.push(pt);
        }
    }
    let small = Budget::new(opts.budget.max_candidates.min(AUGMENT_ENUMERATION_LIMIT));
    for q in odd_primes().filter(|q| !primes.contains(q)) {
        if points.len() >= needed {
            break;
        }
        let pt = match best_point(expr, q, &small, opts.parallelism)? {
            Some(pt) => Some(pt),
            None => best_point(expr, q, &opts.budget, opts.parallelism)?,
        };
        points.extend(pt);
    }
    let data: Vec<(u32, BigRational)> = points.iter().map(|p| (p.q, p.value.clone())).collect();
    let (verdict, note) = match fit_polynomial(&data, max_degree) {
        Ok(v) => (Some(v), None),
        Err(AnalysisError::InsufficientPoints { needed, got }) => {
            (None, Some(format!("only {got} of {needed} points available")))
        }
        Err(e) => return Err(e),
    };
    Ok(DetectReport { space: expr.render(), max_degree, points, verdict, note })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeComparison {
    pub q: u32,
    pub symbolic: Option<BigRational>,
    pub formula: Option<BigRational>,
    pub enumeration: Option<BigInt>,
    /// Why enumeration is missing, when it was attempted.
    pub enumeration_note: Option<String>,
}

impl PrimeComparison {
    fn values(&self) -> Vec<(&'static str, BigRational)> {
        let mut v = Vec::new();
        if let Some(x) = &self.symbolic {
            v.push(("symbolic", x.clone()));
        }
        if let Some(x) = &self.formula {
            v.push(("formula", x.clone()));
        }
        if let Some(x) = &self.enumeration {
            v.push(("enumeration", BigRational::from_integer(x.clone())));
        }
        v
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Agree,
    Disagree(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub space: String,
    /// Symbolic class, when catalogued and Tate.
    pub class: Option<ScaledClass>,
    /// Set when the quotient class is not a Tate polynomial.
    pub class_note: Option<String>,
    pub records: Vec<PrimeComparison>,
    pub verdict: Verdict,
    pub poly: DetectReport,
}

impl VerifyReport {
    pub fn agrees(&self) -> bool {
        self.verdict == Verdict::Agree
    }
}

/// Computes every available value at every prime and compares them exactly.
/// Budget refusals are recorded per prime and are not fatal.
pub fn verify_space(expr: &SpaceExpr, primes: &[u32], opts: &AnalysisOptions) -> Result<VerifyReport, AnalysisError> {
    let (class, class_note) = match catalog::symbolic_class(expr) {
        Ok(c) => (Some(c), None),
        Err(CatalogError::NoSymbolicClass(_)) => (None, None),
        Err(CatalogError::Class(e)) => (None, Some(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    let records: Vec<PrimeComparison> = primes
        .par_iter()
        .map(|&q| -> Result<PrimeComparison, AnalysisError> {
            let symbolic = class.as_ref().map(|c| c.eval_at(&BigInt::from(q)));
            let formula = routes::formula_value(expr, q)?;
            let (enumeration, enumeration_note) = match routes::enumerate_expr(expr, q, &opts.budget, opts.parallelism) {
                Ok(Some(e)) => (Some(e.count), None),
                Ok(None) => (None, None),
                Err(e @ EnumError::BudgetExceeded { .. }) => (None, Some(e.to_string())),
                Err(e) => return Err(e.into()),
            };
            Ok(PrimeComparison { q, symbolic, formula, enumeration, enumeration_note })
        })
        .collect::<Result<_, _>>()?;

    let mut problems = Vec::new();
    for rec in &records {
        let values = rec.values();
        if let Some((first_name, first)) = values.first() {
            for (name, v) in &values[1..] {
                if v != first {
                    problems.push(format!("q={}: {first_name}={first} but {name}={v}", rec.q));
                }
            }
        }
    }
    let verdict = if problems.is_empty() { Verdict::Agree } else { Verdict::Disagree(problems) };
    let poly = detect_polynomial(expr, primes, opts)?;
    Ok(VerifyReport { space: expr.render(), class, class_note, records, verdict, poly })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumCheck {
    #[serde(flatten)]
    pub info: StratumInfo,
    /// `stratum_dim + 2 * fiber_dim <= dim I`.
    pub passes: bool,
    /// Equality in the inequality: the stratum is relevant.
    pub relevant: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemismallReport {
    pub n: u32,
    pub dim_incidence: i64,
    pub strata: Vec<StratumCheck>,
    pub all_pass: bool,
    pub relevant_ranks: Vec<u32>,
}

pub fn check_semismall(n: u32) -> Result<SemismallReport, AnalysisError> {
    let s = catalog::incidence_strata(n)?;
    let strata: Vec<StratumCheck> = s
        .strata
        .iter()
        .map(|info| {
            let lhs = info.stratum_dim + 2 * info.fiber_dim;
            StratumCheck { info: *info, passes: lhs <= s.dim_incidence, relevant: lhs == s.dim_incidence }
        })
        .collect();
    let all_pass = strata.iter().all(|c| c.passes && c.info.defect >= 0);
    let relevant_ranks = strata.iter().filter(|c| c.relevant).map(|c| c.info.rank).collect();
    Ok(SemismallReport { n, dim_incidence: s.dim_incidence, strata, all_pass, relevant_ranks })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionRow {
    pub q: u32,
    /// `#I(F_q)` by summing `#P(ker Q)` over the rank strata.
    pub incidence: BigUint,
    /// `#P^{n-1} * #P^{N-n-1}`.
    pub bundle: BigUint,
    /// Projectivized singular symmetric forms.
    pub y: BigUint,
    /// Projectivized forms of rank at most `n - 2`.
    pub sbar: BigUint,
    /// `#Y + q * #Sbar_{n-2}`.
    pub rhs: BigUint,
    pub holds: bool,
    pub bundle_holds: bool,
}

impl DecompositionRow {
    /// `#I - (#Y + q #Sbar)`, the signed discrepancy.
    pub fn discrepancy(&self) -> BigInt {
        BigInt::from(self.incidence.clone()) - BigInt::from(self.rhs.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    pub n: u32,
    pub rows: Vec<DecompositionRow>,
}

impl DecompositionReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.holds && r.bundle_holds)
    }
}

/// Checks `#I = #Y + q #Sbar_{n-2}` and `#I = #P^{n-1} #P^{N-n-1}` at each
/// prime, every count taken from one enumeration of symmetric matrices.
pub fn check_decomposition(n: u32, primes: &[u32], budget: &Budget, par: Parallelism) -> Result<DecompositionReport, AnalysisError> {
    if n < 2 {
        return Err(EnumError::InvalidParameter("decomposition needs n >= 2".into()).into());
    }
    let nn = n as usize;
    let rows = primes
        .iter()
        .map(|&q| -> Result<DecompositionRow, AnalysisError> {
            let inc = en::count_incidence(nn, q, budget, par)?;
            let h = &inc.histogram;
            let y = en::count_projective_from_affine(&h.rank_at_most(nn - 1), q)?;
            let sbar = en::count_projective_from_affine(&h.rank_at_most(nn - 2), q)?;
            let rhs = &y + BigUint::from(q) * &sbar;
            Ok(DecompositionRow {
                q,
                holds: inc.via_strata == rhs,
                bundle_holds: inc.via_strata == inc.via_bundle,
                incidence: inc.via_strata,
                bundle: inc.via_bundle,
                y,
                sbar,
                rhs,
            })
        })
        .collect::<Result<_, _>>()?;
    Ok(DecompositionReport { n, rows })
}

/// `true` when `value` is a nonnegative integer that fits in `u64`.
pub fn as_u64(value: &BigRational) -> Option<u64> {
    value.is_integer().then(|| value.to_integer().to_u64()).flatten()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::parse_space;
    use proptest::prelude::*;

    fn pts(data: &[(u32, i64)]) -> Vec<(u32, BigRational)> {
        data.iter().map(|&(q, c)| (q, BigRational::from_integer(c.into()))).collect()
    }

    #[test]
    fn fit_examples() {
        let v = fit_polynomial(&pts(&[(2, 6), (3, 48), (5, 480), (7, 2016), (11, 13200)]), 4);
        assert!(matches!(v, Err(AnalysisError::InsufficientPoints { needed: 6, got: 5 })));
        let data = pts(&[(2, 6), (3, 48), (5, 480), (7, 2016), (11, 13200), (13, 26208)]);
        // degree 4 data cannot pass a cubic through the held-out point
        assert_eq!(fit_polynomial(&data[..5], 3).unwrap().status, PolyStatus::NoPolynomialFit);
        let v = fit_polynomial(&data, 4).unwrap();
        assert_eq!(v.status, PolyStatus::IntegerPolynomial);
        assert_eq!(v.fitted.unwrap(), LPoly::from_i64s(&[0, 1, -1, -1, 1]).into());
    }

    #[test]
    fn fit_rational_and_constant() {
        let v = fit_polynomial(&pts(&[(3, 12), (5, 60), (7, 168), (11, 660), (13, 1092)]), 3).unwrap();
        assert_eq!(v.status, PolyStatus::RationalPolynomial);
        assert_eq!(v.denominator, Some(BigInt::from(2)));
        assert_eq!(v.fitted.unwrap(), ScaledClass::with_scalar(1, 2, LPoly::from_i64s(&[0, -1, 0, 1])));
        assert_eq!(v.witnesses, vec![3, 5, 7, 11]);
        assert_eq!(v.validation_primes, vec![13]);

        let v = fit_polynomial(&pts(&[(3, 7), (5, 7), (7, 7)]), 1).unwrap();
        assert_eq!(v.status, PolyStatus::IntegerPolynomial);
        assert_eq!(v.fitted.unwrap().degree(), Some(0));
    }

    #[test]
    fn corrupted_data_has_no_fit() {
        let v = fit_polynomial(&pts(&[(3, 48), (5, 480), (7, 2016), (11, 13200), (13, 28393), (17, 0)]), 4).unwrap();
        assert_eq!(v.status, PolyStatus::NoPolynomialFit);
        assert!(v.fitted.is_none());
    }

    #[test]
    fn duplicate_points_rejected() {
        assert!(fit_polynomial(&pts(&[(3, 1), (3, 1), (5, 1)]), 0).is_err());
    }

    #[test]
    fn semismall_small_cases() {
        let r = check_semismall(3).unwrap();
        assert!(r.all_pass);
        assert_eq!(r.relevant_ranks, vec![1, 2]);
        let r = check_semismall(2).unwrap();
        assert!(r.all_pass);
        assert_eq!(r.relevant_ranks, vec![0, 1]);
        assert!(check_semismall(10).unwrap().strata.iter().all(|s| s.info.defect >= 0));
    }

    #[test]
    fn decomposition_small_cases() {
        let rep = check_decomposition(3, &[3], &Budget::default(), Parallelism::Parallel).unwrap();
        let row = &rep.rows[0];
        assert_eq!((row.incidence.clone(), row.y.clone(), row.sbar.clone()), (169u32.into(), 130u32.into(), 13u32.into()));
        assert!(rep.holds());
        let rep = check_decomposition(2, &[3], &Budget::default(), Parallelism::Parallel).unwrap();
        assert_eq!(rep.rows[0].incidence, 4u32.into());
        assert_eq!(rep.rows[0].y, 4u32.into());
        assert_eq!(rep.rows[0].sbar, 0u32.into());
        assert!(rep.holds());
    }

    #[test]
    fn verify_examples() {
        let opts = AnalysisOptions::default();
        let rep = verify_space(&parse_space("Det(2)").unwrap(), &[3, 5, 7], &opts).unwrap();
        assert!(rep.agrees());
        let v = rep.poly.verdict.unwrap();
        assert_eq!(v.status, PolyStatus::IntegerPolynomial);
        assert_eq!(v.fitted.unwrap(), LPoly::from_i64s(&[1, 2, 1]).into());

        let rep = verify_space(&parse_space("B(2)").unwrap(), &[3, 5], &opts).unwrap();
        assert!(rep.agrees());
        assert_eq!(rep.poly.verdict.unwrap().fitted.unwrap(), LPoly::from_i64s(&[-1, 1]).into());
    }

    fn arb_class() -> impl Strategy<Value = ScaledClass> {
        (prop::collection::vec(-20i64..20, 1..=11), 1i64..5).prop_map(|(c, d)| {
            ScaledClass::new(BigRational::new(1.into(), d.into()), LPoly::from_i64s(&c))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn fit_recovers_class(class in arb_class()) {
            let deg = class.degree().unwrap_or(0);
            let max_degree = deg + 1;
            let data: Vec<(u32, BigRational)> =
                odd_primes().take(max_degree + 2).map(|q| (q, class.eval_at_u64(q as u64))).collect();
            let v = fit_polynomial(&data, max_degree).unwrap();
            if class.is_zero() {
                prop_assert!(v.fitted.unwrap().is_zero());
            } else {
                prop_assert!(v.fitted.unwrap().same_value(&class));
                let integral = class.eval_at_u64(2).is_integer() && (class.scalar().is_integer() || class.poly().content().is_multiple_of(class.scalar().denom()));
                prop_assert_eq!(v.status == PolyStatus::IntegerPolynomial, integral);
            }
        }
    }
}
