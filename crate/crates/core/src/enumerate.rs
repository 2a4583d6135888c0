//! Exhaustive point counting over `F_p`, the ground truth for every class.
//!
//! Candidates are visited by a mixed-radix odometer over the free entries
//! (all entries, the upper triangle for symmetric forms, the strict upper
//! triangle for alternating ones). Each worker owns a scratch buffer, so
//! the hot loop does not allocate. The parallel path fixes a prefix of the
//! free entries per task and merges per-task histograms by addition.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ffield::{FieldError, PrimeField};
use crate::linalg::{rank_det_in_place, sym_type_from, SymType, MAX_DIM};

pub const DEFAULT_MAX_CANDIDATES: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("search space of {needed} candidates exceeds the budget of {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("cone count {cone_count} is not 1 mod {modulus}; the affine cone was miscounted")]
    NotACone { cone_count: String, modulus: u32 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_candidates: u64,
    pub allow_override: bool,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_candidates: DEFAULT_MAX_CANDIDATES, allow_override: false }
    }
}

impl Budget {
    pub fn new(max_candidates: u64) -> Self {
        Budget { max_candidates, allow_override: false }
    }

    pub fn unlimited() -> Self {
        Budget { max_candidates: u64::MAX, allow_override: true }
    }

    /// `None` stands for a size too large to represent.
    pub fn check(&self, candidates: Option<u128>) -> Result<(), EnumError> {
        if self.allow_override {
            return Ok(());
        }
        match candidates {
            Some(c) if c <= self.max_candidates as u128 => Ok(()),
            Some(c) => Err(EnumError::BudgetExceeded { needed: c.to_string(), budget: self.max_candidates }),
            None => Err(EnumError::BudgetExceeded { needed: "more than 2^128".into(), budget: self.max_candidates }),
        }
    }

    pub fn admits(&self, candidates: Option<u128>) -> bool {
        self.check(candidates).is_ok()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Parallelism {
    Sequential,
    #[default]
    Parallel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMethod {
    Enumeration,
    Formula,
    Symbolic,
}

impl std::fmt::Display for CountMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CountMethod::Enumeration => "enumeration",
            CountMethod::Formula => "formula",
            CountMethod::Symbolic => "symbolic",
        })
    }
}

/// One point count of one space at one prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRecord {
    pub space: String,
    pub q: u32,
    #[serde(with = "crate::decimal")]
    pub count: BigInt,
    pub method: CountMethod,
    pub elapsed_ms: u64,
    /// Number of candidates scanned; present exactly for enumeration.
    #[serde(default, with = "crate::decimal::option")]
    pub search_space: Option<BigInt>,
}

impl CountRecord {
    pub fn new(space: impl Into<String>, q: u32, count: BigInt, method: CountMethod, started: Instant) -> Self {
        CountRecord {
            space: space.into(),
            q,
            count,
            method,
            elapsed_ms: started.elapsed().as_millis() as u64,
            search_space: None,
        }
    }

    pub fn with_search_space(mut self, size: BigInt) -> Self {
        self.search_space = Some(size);
        self
    }
}

pub(crate) fn search_size(p: u32, free: usize) -> Option<u128> {
    (p as u128).checked_pow(free as u32)
}

/// Counts of candidates by bin index.
fn odometer<W, F>(p: u32, free: usize, bins: usize, par: Parallelism, make_worker: F) -> Vec<u64>
where
    F: Fn() -> W + Sync,
    W: FnMut(&[u32]) -> usize,
{
    match par {
        Parallelism::Sequential => {
            let mut hist = vec![0u64; bins];
            let mut worker = make_worker();
            let mut digits = vec![0u32; free];
            loop {
                hist[worker(&digits)] += 1;
                if !advance(&mut digits, 0, p) {
                    break;
                }
            }
            hist
        }
        Parallelism::Parallel => {
            let mut prefix = 0;
            while prefix < free && (p as u64).pow(prefix as u32) < 256 {
                prefix += 1;
            }
            let tasks = (p as u64).pow(prefix as u32);
            (0..tasks)
                .into_par_iter()
                .map(|task| {
                    let mut hist = vec![0u64; bins];
                    let mut worker = make_worker();
                    let mut digits = vec![0u32; free];
                    let mut t = task;
                    for d in digits[..prefix].iter_mut() {
                        *d = (t % p as u64) as u32;
                        t /= p as u64;
                    }
                    loop {
                        hist[worker(&digits)] += 1;
                        if !advance(&mut digits, prefix, p) {
                            break;
                        }
                    }
                    hist
                })
                .reduce(|| vec![0u64; bins], |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                })
        }
    }
}

/// Increments `digits[from..]` as a base-`p` counter, last digit fastest.
/// Returns false after wrapping around.
#[inline]
fn advance(digits: &mut [u32], from: usize, p: u32) -> bool {
    for i in (from..digits.len()).rev() {
        digits[i] += 1;
        if digits[i] < p {
            return true;
        }
        digits[i] = 0;
    }
    false
}

fn check_size(n: usize, what: &str) -> Result<(), EnumError> {
    if n == 0 || n > MAX_DIM {
        return Err(EnumError::InvalidParameter(format!("{what} size {n} outside 1..={MAX_DIM}")));
    }
    Ok(())
}

/// Histogram indexed by rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankHistogram {
    pub counts: Vec<BigUint>,
}

impl RankHistogram {
    fn from_u64(counts: Vec<u64>) -> Self {
        RankHistogram { counts: counts.into_iter().map(BigUint::from).collect() }
    }

    pub fn get(&self, rank: usize) -> BigUint {
        self.counts.get(rank).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Sum of the bins with rank at most `r`.
    pub fn at_most(&self, r: usize) -> BigUint {
        self.counts.iter().take(r + 1).sum()
    }
}

/// All `n x n` matrices over `F_p` by rank. Accepts `p = 2`.
pub fn count_matrices_by_rank(n: usize, p: u32, budget: &Budget, par: Parallelism) -> Result<RankHistogram, EnumError> {
    check_size(n, "matrix")?;
    let field = PrimeField::new_any(p)?;
    let free = n * n;
    budget.check(search_size(p, free))?;
    let inv = field.inverse_table();
    let hist = odometer(p, free, n + 1, par, || {
        let mut scratch = vec![0u32; free];
        let inv = &inv;
        move |d: &[u32]| {
            scratch.copy_from_slice(d);
            rank_det_in_place(&mut scratch, n, n, p, inv).0
        }
    });
    Ok(RankHistogram::from_u64(hist))
}

/// Matrices of determinant one (`|SL_n(F_p)|`).
pub fn count_special_linear(n: usize, p: u32, budget: &Budget, par: Parallelism) -> Result<BigUint, EnumError> {
    check_size(n, "matrix")?;
    let field = PrimeField::new_any(p)?;
    let free = n * n;
    budget.check(search_size(p, free))?;
    let inv = field.inverse_table();
    let hist = odometer(p, free, 2, par, || {
        let mut scratch = vec![0u32; free];
        let inv = &inv;
        move |d: &[u32]| {
            scratch.copy_from_slice(d);
            usize::from(rank_det_in_place(&mut scratch, n, n, p, inv).1 == 1)
        }
    });
    Ok(BigUint::from(hist[1]))
}

/// Matrices `g` with `g^T J g = c J` for the standard form
/// `J = [[0, I], [-I, 0]]`: `c = 1` counts `Sp`, any nonzero `c` counts `GSp`.
pub fn count_symplectic(two_m: usize, p: u32, similitudes: bool, budget: &Budget, par: Parallelism) -> Result<BigUint, EnumError> {
    if two_m == 0 || !two_m.is_multiple_of(2) {
        return Err(EnumError::InvalidParameter(format!("symplectic size must be positive and even, got {two_m}")));
    }
    check_size(two_m, "matrix")?;
    PrimeField::new(p)?;
    let n = two_m;
    let m = n / 2;
    budget.check(search_size(p, n * n))?;
    let p64 = p as u64;
    let hist = odometer(p, n * n, 2, par, || {
        move |g: &[u32]| {
            // (g^T J g)_{ij} = sum_{k<m} g_{k,i} g_{k+m,j} - g_{k+m,i} g_{k,j}
            let form = |i: usize, j: usize| -> u64 {
                let mut acc = 0u64;
                for k in 0..m {
                    acc += g[k * n + i] as u64 * g[(k + m) * n + j] as u64;
                    acc += (p64 - g[(k + m) * n + i] as u64) * g[k * n + j] as u64;
                }
                acc % p64
            };
            let scale = form(0, m);
            if scale == 0 || (!similitudes && scale != 1) {
                return 0;
            }
            for i in 0..n {
                for j in i + 1..n {
                    let expected = if j == i + m && i < m { scale } else { 0 };
                    if form(i, j) != expected {
                        return 0;
                    }
                }
            }
            1
        }
    });
    Ok(BigUint::from(hist[1]))
}

/// Symmetric matrices by (rank, isometry type).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymHistogram {
    pub n: usize,
    pub counts: BTreeMap<(usize, SymType), BigUint>,
}

impl SymHistogram {
    pub fn get(&self, rank: usize, ty: SymType) -> BigUint {
        self.counts.get(&(rank, ty)).cloned().unwrap_or_default()
    }

    pub fn of_rank(&self, rank: usize) -> BigUint {
        self.counts.iter().filter(|((r, _), _)| *r == rank).map(|(_, c)| c).sum()
    }

    pub fn rank_at_most(&self, rank: usize) -> BigUint {
        self.counts.iter().filter(|((r, _), _)| *r <= rank).map(|(_, c)| c).sum()
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }
}

const SYM_TYPES: [SymType; 5] = [
    SymType::OddRankSquareDisc,
    SymType::OddRankNonsquareDisc,
    SymType::EvenPlus,
    SymType::EvenMinus,
    SymType::Degenerate,
];

fn sym_type_index(t: SymType) -> usize {
    SYM_TYPES.iter().position(|&x| x == t).expect("listed")
}

pub fn count_symmetric(n: usize, p: u32, budget: &Budget, par: Parallelism) -> Result<SymHistogram, EnumError> {
    check_size(n, "matrix")?;
    let field = PrimeField::new(p)?;
    let free = n * (n + 1) / 2;
    budget.check(search_size(p, free))?;
    let inv = field.inverse_table();
    let hist = odometer(p, free, (n + 1) * SYM_TYPES.len(), par, || {
        let mut scratch = vec![0u32; n * n];
        let inv = &inv;
        move |d: &[u32]| {
            let mut k = 0;
            for i in 0..n {
                for j in i..n {
                    scratch[i * n + j] = d[k];
                    scratch[j * n + i] = d[k];
                    k += 1;
                }
            }
            let (rank, det) = rank_det_in_place(&mut scratch, n, n, p, inv);
            rank * SYM_TYPES.len() + sym_type_index(sym_type_from(field, n, rank, det))
        }
    });
    let counts = hist
        .into_iter()
        .enumerate()
        .filter(|(_, c)| *c > 0)
        .map(|(idx, c)| ((idx / SYM_TYPES.len(), SYM_TYPES[idx % SYM_TYPES.len()]), BigUint::from(c)))
        .collect();
    Ok(SymHistogram { n, counts })
}

/// Alternating `two_n x two_n` matrices by rank; odd bins stay zero.
pub fn count_alternating_by_rank(two_n: usize, p: u32, budget: &Budget, par: Parallelism) -> Result<RankHistogram, EnumError> {
    check_size(two_n, "matrix")?;
    let field = PrimeField::new(p)?;
    let n = two_n;
    let free = n * (n - 1) / 2;
    budget.check(search_size(p, free))?;
    let inv = field.inverse_table();
    let hist = odometer(p, free, n + 1, par, || {
        let mut scratch = vec![0u32; n * n];
        let inv = &inv;
        move |d: &[u32]| {
            let mut k = 0;
            for i in 0..n {
                scratch[i * n + i] = 0;
                for j in i + 1..n {
                    scratch[i * n + j] = d[k];
                    scratch[j * n + i] = if d[k] == 0 { 0 } else { p - d[k] };
                    k += 1;
                }
            }
            rank_det_in_place(&mut scratch, n, n, p, inv).0
        }
    });
    Ok(RankHistogram::from_u64(hist))
}

/// Affine solutions of `sum c_i x_i^2 = rhs`.
pub fn count_quadric_affine(coeffs: &[i64], rhs: i64, p: u32, budget: &Budget, par: Parallelism) -> Result<BigUint, EnumError> {
    if coeffs.len() > 6 {
        return Err(EnumError::InvalidParameter(format!("at most 6 variables, got {}", coeffs.len())));
    }
    let field = PrimeField::new(p)?;
    budget.check(search_size(p, coeffs.len()))?;
    let c: Vec<u64> = coeffs.iter().map(|&x| field.elem(x).value() as u64).collect();
    let target = field.elem(rhs).value() as u64;
    let hist = odometer(p, c.len(), 2, par, || {
        let c = &c;
        move |x: &[u32]| {
            let s: u64 = c.iter().zip(x).map(|(ci, &xi)| ci * (xi as u64 * xi as u64)).sum();
            usize::from(s % p as u64 == target)
        }
    });
    Ok(BigUint::from(hist[1]))
}

/// All tuples of length `n` (the affine space itself).
pub fn count_affine(n: usize, p: u32, budget: &Budget) -> Result<BigUint, EnumError> {
    PrimeField::new_any(p)?;
    budget.check(search_size(p, n))?;
    let hist = odometer(p, n, 1, Parallelism::Sequential, || |_: &[u32]| 0);
    Ok(BigUint::from(hist[0]))
}

/// Points of the projectivization of an affine cone: `(cone - 1) / (p - 1)`.
pub fn count_projective_from_affine(cone_count: &BigUint, p: u32) -> Result<BigUint, EnumError> {
    let modulus = BigUint::from(p - 1);
    if cone_count.is_zero() {
        return Err(EnumError::NotACone { cone_count: "0".into(), modulus: p - 1 });
    }
    let punctured = cone_count - 1u32;
    let (quot, rem) = punctured.div_rem(&modulus);
    if !rem.is_zero() {
        return Err(EnumError::NotACone { cone_count: cone_count.to_string(), modulus: p - 1 });
    }
    Ok(quot)
}

/// Number of `k`-dimensional subspaces of `F_p^d` (Gaussian binomial).
pub fn subspace_count(k: usize, d: usize, p: u32) -> BigUint {
    if k > d {
        return BigUint::zero();
    }
    let p = BigUint::from(p);
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for i in 0..k {
        num *= p.pow((d - i) as u32) - 1u32;
        den *= p.pow((i + 1) as u32) - 1u32;
    }
    num / den
}

/// Visits every `k`-dimensional subspace of `F_p^d` once, as its reduced
/// row-echelon basis (`k x d`, row-major).
pub fn for_each_subspace(k: usize, d: usize, p: u32, mut visit: impl FnMut(&[u32])) {
    if k > d {
        return;
    }
    let mut basis = vec![0u32; k * d];
    if k == 0 {
        visit(&basis);
        return;
    }
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        // free slots: (row, col) right of the row's pivot, not in a pivot column
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| (pivots[i] + 1..d).filter(|c| !pivots.contains(c)).map(move |c| (i, c)))
            .collect();
        basis.iter_mut().for_each(|x| *x = 0);
        for (i, &c) in pivots.iter().enumerate() {
            basis[i * d + c] = 1;
        }
        let mut digits = vec![0u32; free.len()];
        loop {
            for (&(i, c), &v) in free.iter().zip(&digits) {
                basis[i * d + c] = v;
            }
            visit(&basis);
            if !advance(&mut digits, 0, p) {
                break;
            }
        }
        // next k-subset of 0..d in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if pivots[i] < d - k + i {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Gram matrix `B J B^T` of the rows of `basis` (`k x 2n`) under the standard
/// symplectic form, written into `out` (`k x k`).
fn symplectic_gram(basis: &[u32], k: usize, two_n: usize, p: u32, out: &mut [u32]) {
    let n = two_n / 2;
    let p64 = p as u64;
    for a in 0..k {
        for b in 0..k {
            let mut acc = 0u64;
            for t in 0..n {
                acc += basis[a * two_n + t] as u64 * basis[b * two_n + t + n] as u64;
                acc += (p64 - basis[a * two_n + t + n] as u64) * basis[b * two_n + t] as u64;
            }
            out[a * k + b] = (acc % p64) as u32;
        }
    }
}

/// Nondegenerate `2k`-dimensional subspaces of the standard symplectic
/// `F_p^{2n}` (points of `Sp(2n) / (Sp(2k) x Sp(2n-2k))`).
pub fn count_nondegenerate_symplectic_subspaces(k: usize, n: usize, p: u32, budget: &Budget) -> Result<BigUint, EnumError> {
    if k > n || 2 * n > MAX_DIM {
        return Err(EnumError::InvalidParameter(format!("need 0 <= k <= n and 2n <= {MAX_DIM}")));
    }
    let field = PrimeField::new(p)?;
    budget.check(subspace_count(2 * k, 2 * n, p).to_u128())?;
    let inv = field.inverse_table();
    let dim = 2 * k;
    let mut gram = vec![0u32; dim * dim];
    let mut count = 0u64;
    for_each_subspace(dim, 2 * n, p, |basis| {
        symplectic_gram(basis, dim, 2 * n, p, &mut gram);
        if rank_det_in_place(&mut gram, dim, dim, p, &inv).0 == dim {
            count += 1;
        }
    });
    Ok(BigUint::from(count))
}

/// Ordered pairs of transversal Lagrangian subspaces of the standard
/// symplectic `F_p^{2n}` (points of `Sp(2n) / GL(n)`).
pub fn count_transversal_lagrangian_pairs(n: usize, p: u32, budget: &Budget) -> Result<BigUint, EnumError> {
    if n == 0 || 2 * n > MAX_DIM {
        return Err(EnumError::InvalidParameter(format!("need 1 <= n and 2n <= {MAX_DIM}")));
    }
    let field = PrimeField::new(p)?;
    budget.check(subspace_count(n, 2 * n, p).to_u128())?;
    let inv = field.inverse_table();
    let mut gram = vec![0u32; n * n];
    let mut lagrangians: Vec<Vec<u32>> = Vec::new();
    for_each_subspace(n, 2 * n, p, |basis| {
        symplectic_gram(basis, n, 2 * n, p, &mut gram);
        if gram.iter().all(|&x| x == 0) {
            lagrangians.push(basis.to_vec());
        }
    });
    let pairs = (lagrangians.len() as u128).checked_mul(lagrangians.len() as u128);
    budget.check(pairs)?;
    let two_n = 2 * n;
    let count: u64 = lagrangians
        .par_iter()
        .map(|a| {
            let mut stacked = vec![0u32; two_n * two_n];
            lagrangians
                .iter()
                .filter(|b| {
                    stacked[..n * two_n].copy_from_slice(a);
                    stacked[n * two_n..].copy_from_slice(b);
                    rank_det_in_place(&mut stacked, two_n, two_n, p, &inv).0 == two_n
                })
                .count() as u64
        })
        .sum();
    Ok(BigUint::from(count))
}

/// The incidence variety `{([Q], [v]) : Qv = 0}` counted two ways.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceCount {
    /// Sum over rank strata of `#P(ker Q)`.
    pub via_strata: BigUint,
    /// `#P^{n-1} * #P^{N-n-1}`, from the projective-bundle structure.
    pub via_bundle: BigUint,
    pub histogram: SymHistogram,
}

fn proj_points(dim_plus_one: usize, p: u32) -> BigUint {
    if dim_plus_one == 0 {
        return BigUint::zero();
    }
    (BigUint::from(p).pow(dim_plus_one as u32) - 1u32) / BigUint::from(p - 1)
}

pub fn count_incidence(n: usize, p: u32, budget: &Budget, par: Parallelism) -> Result<IncidenceCount, EnumError> {
    if n < 2 {
        return Err(EnumError::InvalidParameter("incidence needs n >= 2".into()));
    }
    let histogram = count_symmetric(n, p, budget, par)?;
    let pm1 = BigUint::from(p - 1);
    let mut via_strata = BigUint::zero();
    for r in 1..n {
        let projective = histogram.of_rank(r) / &pm1;
        via_strata += projective * proj_points(n - r, p);
    }
    let big_n = n * (n + 1) / 2;
    let via_bundle = proj_points(n, p) * proj_points(big_n - n, p);
    assert_eq!(via_strata, via_bundle, "incidence counts disagree at n={n}, p={p}");
    Ok(IncidenceCount { via_strata, via_bundle, histogram })
}

/// Wall-clock helper for building [`CountRecord`]s.
pub fn timed<T>(f: impl FnOnce() -> T) -> (T, Instant) {
    let start = Instant::now();
    (f(), start)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn seq() -> Parallelism {
        Parallelism::Sequential
    }

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn matrix_rank_examples() {
        let h = count_matrices_by_rank(1, 3, &b(), seq()).unwrap();
        assert_eq!(h.counts, vec![u(1), u(2)]);
        let h = count_matrices_by_rank(2, 2, &b(), seq()).unwrap();
        assert_eq!(h.counts, vec![u(1), u(9), u(6)]);
        let h = count_matrices_by_rank(3, 3, &b(), Parallelism::Parallel).unwrap();
        assert_eq!(h.get(3), u(11232));
        assert_eq!(h.total(), u(3u64.pow(9)));
    }

    #[test]
    fn symmetric_examples() {
        let h = count_symmetric(2, 3, &b(), seq()).unwrap();
        assert_eq!(h.get(2, SymType::EvenPlus), u(12));
        assert_eq!(h.get(2, SymType::EvenMinus), u(6));
        assert_eq!(h.total(), u(27));
        let h = count_symmetric(3, 3, &b(), seq()).unwrap();
        assert_eq!(h.get(3, SymType::OddRankSquareDisc), u(234));
        assert_eq!(h.get(3, SymType::OddRankNonsquareDisc), u(234));
        let h = count_symmetric(1, 5, &b(), seq()).unwrap();
        assert_eq!(h.get(0, SymType::Degenerate), u(1));
        assert_eq!(h.get(1, SymType::OddRankSquareDisc), u(2));
        assert_eq!(h.get(1, SymType::OddRankNonsquareDisc), u(2));
    }

    #[test]
    fn alternating_examples() {
        let h = count_alternating_by_rank(2, 3, &b(), seq()).unwrap();
        assert_eq!(h.counts, vec![u(1), u(0), u(2)]);
        let h = count_alternating_by_rank(4, 5, &b(), seq()).unwrap();
        assert_eq!(h.get(1), u(0));
        assert_eq!(h.get(3), u(0));
        assert_eq!(h.total(), u(5u64.pow(6)));
    }

    #[test]
    fn quadric_examples() {
        assert_eq!(count_quadric_affine(&[1, 1, 1, 1], 1, 3, &b(), seq()).unwrap(), u(24));
        assert_eq!(count_quadric_affine(&[1], 1, 5, &b(), seq()).unwrap(), u(2));
        assert_eq!(count_quadric_affine(&[1, -1], 0, 3, &b(), seq()).unwrap(), u(5));
        assert!(count_quadric_affine(&[1; 7], 1, 3, &b(), seq()).is_err());
    }

    #[test]
    fn projective_examples() {
        assert_eq!(count_projective_from_affine(&u(27), 3).unwrap(), u(13));
        let h = count_symmetric(3, 3, &b(), seq()).unwrap();
        assert_eq!(h.rank_at_most(1), u(27));
        assert_eq!(count_projective_from_affine(&h.rank_at_most(1), 3).unwrap(), u(13));
        assert!(matches!(count_projective_from_affine(&u(10), 3), Err(EnumError::NotACone { .. })));
    }

    #[test]
    fn incidence_examples() {
        assert_eq!(count_incidence(3, 3, &b(), seq()).unwrap().via_strata, u(169));
        assert_eq!(count_incidence(2, 3, &b(), seq()).unwrap().via_strata, u(4));
        assert_eq!(count_incidence(3, 5, &b(), seq()).unwrap().via_strata, u(961));
    }

    #[test]
    fn budget_refusal() {
        let small = Budget::new(1000);
        assert!(matches!(count_matrices_by_rank(3, 3, &small, seq()), Err(EnumError::BudgetExceeded { .. })));
        let mut over = small;
        over.allow_override = true;
        assert!(count_matrices_by_rank(3, 3, &over, seq()).is_ok());
        // 5^15 alternating 6x6 is refused by default, 3^15 is allowed
        assert!(!b().admits(search_size(5, 15)));
        assert!(b().admits(search_size(3, 15)));
        assert!(!b().admits(None));
    }

    #[test]
    fn parallel_matches_sequential() {
        for &p in &[3u32, 5] {
            assert_eq!(
                count_matrices_by_rank(3, p, &b(), seq()).unwrap(),
                count_matrices_by_rank(3, p, &b(), Parallelism::Parallel).unwrap()
            );
            assert_eq!(
                count_symmetric(3, p, &b(), seq()).unwrap(),
                count_symmetric(3, p, &b(), Parallelism::Parallel).unwrap()
            );
            assert_eq!(
                count_alternating_by_rank(4, p, &b(), seq()).unwrap(),
                count_alternating_by_rank(4, p, &b(), Parallelism::Parallel).unwrap()
            );
        }
    }

    #[test]
    fn group_oracles() {
        assert_eq!(count_special_linear(2, 2, &b(), seq()).unwrap(), u(6));
        assert_eq!(count_special_linear(2, 3, &b(), seq()).unwrap(), u(24));
        // Sp(2) = SL(2)
        assert_eq!(count_symplectic(2, 5, false, &b(), seq()).unwrap(), u(120));
        assert_eq!(count_symplectic(2, 3, true, &b(), seq()).unwrap(), u(48));
    }

    #[test]
    fn subspace_enumeration() {
        for (k, d, p) in [(0, 3, 3), (1, 3, 3), (2, 4, 3), (3, 5, 2), (4, 4, 5)] {
            let mut seen = 0u64;
            for_each_subspace(k, d, p, |_| seen += 1);
            assert_eq!(u(seen), subspace_count(k, d, p), "k={k} d={d} p={p}");
        }
        assert_eq!(subspace_count(1, 3, 3), u(13));
    }

    #[test]
    fn symplectic_geometry_counts() {
        // Sp(2)/GL(1) = pairs of distinct lines in the plane: q(q+1)
        assert_eq!(count_transversal_lagrangian_pairs(1, 3, &b()).unwrap(), u(12));
        // XSp(0, n) and XSp(n, n) are points
        assert_eq!(count_nondegenerate_symplectic_subspaces(0, 2, 3, &b()).unwrap(), u(1));
        assert_eq!(count_nondegenerate_symplectic_subspaces(2, 2, 3, &b()).unwrap(), u(1));
    }
}
