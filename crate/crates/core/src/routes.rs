//! The three independent ways of getting `#X(F_q)` for a space expression:
//! evaluating its symbolic class, evaluating a closed-form formula, and
//! exhaustive enumeration.

use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::catalog::{self, formula, CatalogError};
use crate::enumerate::{self as en, Budget, CountMethod, CountRecord, EnumError, Parallelism};
use crate::lefschetz::ClassError;
use crate::linalg::SymType;
use crate::space::{Atom, OrthSign, SpaceExpr};

/// Outcome of the symbolic route at one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymbolicOutcome {
    Value(BigRational),
    /// No class catalogued for this space.
    Unavailable,
    /// The quotient class is not a Tate polynomial.
    NotTate(String),
}

pub fn symbolic_value(expr: &SpaceExpr, q: u32) -> Result<SymbolicOutcome, CatalogError> {
    match catalog::symbolic_class(expr) {
        Ok(c) => Ok(SymbolicOutcome::Value(c.eval_at(&BigInt::from(q)))),
        Err(CatalogError::NoSymbolicClass(_)) => Ok(SymbolicOutcome::Unavailable),
        Err(CatalogError::Class(e @ ClassError::InexactDivision { .. })) => Ok(SymbolicOutcome::NotTate(e.to_string())),
        Err(e) => Err(e),
    }
}

pub fn formula_value(expr: &SpaceExpr, q: u32) -> Result<Option<BigRational>, CatalogError> {
    formula::formula_value(expr, q)
}

/// A raw enumeration result: the count and the number of candidates scanned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumerated {
    pub count: BigInt,
    pub search_space: BigInt,
}

fn big(x: BigUint) -> BigInt {
    BigInt::from(x)
}

fn pow(p: u32, e: usize) -> BigInt {
    num_traits::pow(BigInt::from(p), e)
}

/// Candidates an atom's oracle would scan, for budget previews.
pub fn atom_search_space(atom: &Atom, p: u32) -> Option<BigInt> {
    let sym = |n: u32| pow(p, (n * (n + 1) / 2) as usize);
    let alt = |n: u32| pow(p, (n * n.saturating_sub(1) / 2) as usize);
    Some(match atom {
        Atom::GL(n) | Atom::SL(n) | Atom::Sp(n) | Atom::GSp(n) | Atom::MatRank { n, .. } | Atom::Det(n) => {
            pow(p, (n * n) as usize)
        }
        Atom::Gm => BigInt::from(p),
        Atom::Affine(n) => pow(p, *n as usize),
        Atom::Proj(n) => pow(p, *n as usize + 1),
        Atom::AltRank { two_n, .. } | Atom::Pf(two_n) | Atom::B(two_n) | Atom::PAlt(two_n) => alt(*two_n),
        Atom::XSp { p: k, n } => big(en::subspace_count(2 * *k as usize, 2 * *n as usize, p)),
        Atom::LSp(n) => big(en::subspace_count(*n as usize, 2 * *n as usize, p)),
        Atom::GLmodO { n, .. } | Atom::Inc(n) | Atom::Y(n) | Atom::Sbar { n, .. } => sym(*n),
        Atom::Sphere(m) => pow(p, *m as usize + 1),
        Atom::SLrep { .. } => return None,
    })
}

pub fn search_space(expr: &SpaceExpr, p: u32) -> Option<BigInt> {
    match expr {
        SpaceExpr::Atom(a) => atom_search_space(a, p),
        SpaceExpr::Quotient(a, b) | SpaceExpr::Product(a, b) | SpaceExpr::Difference(a, b) => {
            Some(search_space(a, p)? + search_space(b, p)?)
        }
        SpaceExpr::Projectivize(e) => search_space(e, p),
    }
}

fn projective(cone: BigUint, p: u32) -> Result<BigUint, EnumError> {
    en::count_projective_from_affine(&cone, p)
}

/// Enumeration count for an atom, `Ok(None)` where no oracle exists.
pub fn enumerate_atom(atom: &Atom, p: u32, budget: &Budget, par: Parallelism) -> Result<Option<Enumerated>, EnumError> {
    let Some(size) = atom_search_space(atom, p) else {
        return Ok(None);
    };
    let count: BigUint = match atom {
        Atom::GL(n) => en::count_matrices_by_rank(*n as usize, p, budget, par)?.get(*n as usize),
        Atom::SL(n) => en::count_special_linear(*n as usize, p, budget, par)?,
        Atom::Sp(n) => en::count_symplectic(*n as usize, p, false, budget, par)?,
        Atom::GSp(n) => en::count_symplectic(*n as usize, p, true, budget, par)?,
        Atom::Gm => en::count_matrices_by_rank(1, p, budget, par)?.get(1),
        Atom::Affine(n) => en::count_affine(*n as usize, p, budget)?,
        Atom::Proj(n) => projective(en::count_affine(*n as usize + 1, p, budget)?, p)?,
        Atom::MatRank { n, r } => en::count_matrices_by_rank(*n as usize, p, budget, par)?.get(*r as usize),
        Atom::Det(n) => {
            let h = en::count_matrices_by_rank(*n as usize, p, budget, par)?;
            projective(h.at_most(*n as usize - 1), p)?
        }
        Atom::AltRank { two_n, k } => en::count_alternating_by_rank(*two_n as usize, p, budget, par)?.get(2 * *k as usize),
        Atom::Pf(two_n) => {
            let h = en::count_alternating_by_rank(*two_n as usize, p, budget, par)?;
            projective(h.at_most(*two_n as usize - 1), p)?
        }
        Atom::B(two_n) => en::count_alternating_by_rank(*two_n as usize, p, budget, par)?.get(*two_n as usize),
        Atom::PAlt(two_n) => {
            let h = en::count_alternating_by_rank(*two_n as usize, p, budget, par)?;
            // the open orbit, punctured cone of nondegenerate forms
            projective(h.get(*two_n as usize) + 1u32, p)?
        }
        Atom::XSp { p: k, n } => en::count_nondegenerate_symplectic_subspaces(*k as usize, *n as usize, p, budget)?,
        Atom::LSp(n) => en::count_transversal_lagrangian_pairs(*n as usize, p, budget)?,
        Atom::GLmodO { n, sign } => {
            let ty = match sign {
                None => SymType::OddRankSquareDisc,
                Some(OrthSign::Plus) => SymType::EvenPlus,
                Some(OrthSign::Minus) => SymType::EvenMinus,
            };
            en::count_symmetric(*n as usize, p, budget, par)?.get(*n as usize, ty)
        }
        Atom::Inc(n) => en::count_incidence(*n as usize, p, budget, par)?.via_strata,
        Atom::Y(n) => {
            let h = en::count_symmetric(*n as usize, p, budget, par)?;
            projective(h.rank_at_most(*n as usize - 1), p)?
        }
        Atom::Sbar { n, r } => {
            let h = en::count_symmetric(*n as usize, p, budget, par)?;
            projective(h.rank_at_most(*r as usize), p)?
        }
        Atom::Sphere(m) => en::count_quadric_affine(&vec![1; *m as usize + 1], 1, p, budget, par)?,
        Atom::SLrep { .. } => unreachable!("no search space"),
    };
    Ok(Some(Enumerated { count: big(count), search_space: size }))
}

fn exact_quotient(a: &BigInt, b: &BigInt) -> Result<BigInt, EnumError> {
    if b.is_zero() {
        return Err(EnumError::InvalidParameter("quotient by an empty space".into()));
    }
    let (q, r) = a.div_rem(b);
    if !r.is_zero() {
        return Err(EnumError::InvalidParameter(format!("enumerated counts {a} / {b} do not divide")));
    }
    Ok(q)
}

/// Enumeration for a whole expression, composing atom counts. `Ok(None)`
/// when some atom has no oracle.
pub fn enumerate_expr(expr: &SpaceExpr, p: u32, budget: &Budget, par: Parallelism) -> Result<Option<Enumerated>, EnumError> {
    // refuse up front rather than after running half the job
    if let Some(size) = search_space(expr, p) {
        budget.check(size.to_u128())?;
    }
    let pair = |a: &SpaceExpr, b: &SpaceExpr| -> Result<Option<(Enumerated, Enumerated)>, EnumError> {
        let Some(x) = enumerate_expr(a, p, budget, par)? else { return Ok(None) };
        let Some(y) = enumerate_expr(b, p, budget, par)? else { return Ok(None) };
        Ok(Some((x, y)))
    };
    let combine = |x: Enumerated, y: Enumerated, count: BigInt| Enumerated { count, search_space: x.search_space + y.search_space };
    Ok(match expr {
        SpaceExpr::Atom(a) => enumerate_atom(a, p, budget, par)?,
        SpaceExpr::Quotient(a, b) => match pair(a, b)? {
            Some((x, y)) => {
                let c = exact_quotient(&x.count, &y.count)?;
                Some(combine(x, y, c))
            }
            None => None,
        },
        SpaceExpr::Product(a, b) => pair(a, b)?.map(|(x, y)| {
            let c = &x.count * &y.count;
            combine(x, y, c)
        }),
        SpaceExpr::Difference(a, b) => pair(a, b)?.map(|(x, y)| {
            let c = &x.count - &y.count;
            combine(x, y, c)
        }),
        SpaceExpr::Projectivize(e) => match enumerate_expr(e, p, budget, par)? {
            Some(x) => {
                let cone = x.count.to_biguint().ok_or_else(|| EnumError::InvalidParameter("negative cone count".into()))?;
                Some(Enumerated { count: big(projective(cone, p)?), search_space: x.search_space })
            }
            None => None,
        },
    })
}

/// Best available count as a [`CountRecord`]: enumeration when an oracle
/// exists and fits the budget, then the formula, then the symbolic class.
/// Budget refusals are returned as errors only when nothing else applies.
pub fn count_record(expr: &SpaceExpr, q: u32, budget: &Budget, par: Parallelism) -> Result<CountRecord, RouteError> {
    let space = expr.render();
    let start = Instant::now();
    let refusal = match enumerate_expr(expr, q, budget, par) {
        Ok(Some(e)) => {
            return Ok(CountRecord::new(space, q, e.count, CountMethod::Enumeration, start).with_search_space(e.search_space))
        }
        Ok(None) => None,
        Err(e @ EnumError::BudgetExceeded { .. }) => Some(e),
        Err(e) => return Err(e.into()),
    };
    let start = Instant::now();
    if let Some(v) = formula_value(expr, q)? {
        if v.is_integer() {
            return Ok(CountRecord::new(space, q, v.to_integer(), CountMethod::Formula, start));
        }
    }
    let start = Instant::now();
    if let SymbolicOutcome::Value(v) = symbolic_value(expr, q)? {
        if v.is_integer() {
            return Ok(CountRecord::new(space, q, v.to_integer(), CountMethod::Symbolic, start));
        }
    }
    Err(match refusal {
        Some(e) => e.into(),
        None => RouteError::NoRoute(space),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RouteError {
    #[error(transparent)]
    Enumeration(#[from] EnumError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("no way to count {0}")]
    NoRoute(String),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::parse_space;

    fn enum_count(text: &str, p: u32) -> BigInt {
        enumerate_expr(&parse_space(text).unwrap(), p, &Budget::default(), Parallelism::Parallel)
            .unwrap()
            .unwrap()
            .count
    }

    #[test]
    fn routes_agree_on_small_spaces() {
        let spaces = [
            "GL(2)", "SL(2)", "Sp(2)", "GSp(2)", "Gm", "A(3)", "P(3)", "MatRank(2,1)", "Det(2)", "Det(3)", "AltRank(4,1)",
            "Pf(4)", "XSp(1,2)", "XSp(1,1)", "LSp(1)", "LSp(2)", "B(2)", "B(4)", "PAlt(4)", "GLmodO(2,+)", "GLmodO(2,-)",
            "GLmodO(3)", "Inc(3)", "Y(3)", "Sphere(3)", "Sphere(2)", "GL(2)/Gm", "Proj(A(2))", "P(2)*P(1)",
        ];
        for text in spaces {
            let expr = parse_space(text).unwrap();
            for p in [3u32, 5] {
                let e = BigRational::from_integer(enum_count(text, p));
                if let Some(f) = formula_value(&expr, p).unwrap() {
                    assert_eq!(f, e, "{text} formula at {p}");
                }
                if let SymbolicOutcome::Value(s) = symbolic_value(&expr, p).unwrap() {
                    assert_eq!(s, e, "{text} symbolic at {p}");
                }
            }
        }
    }

    #[test]
    fn sphere_three_is_24_at_three() {
        assert_eq!(enum_count("Sphere(3)", 3), BigInt::from(24));
    }

    #[test]
    fn record_falls_back_when_over_budget() {
        let expr = parse_space("GL(3)").unwrap();
        let rec = count_record(&expr, 5, &Budget::new(1000), Parallelism::Parallel).unwrap();
        assert_eq!(rec.method, CountMethod::Formula);
        let rec = count_record(&expr, 3, &Budget::default(), Parallelism::Parallel).unwrap();
        assert_eq!(rec.method, CountMethod::Enumeration);
        assert_eq!(rec.count, BigInt::from(11232));
        assert_eq!(rec.search_space, Some(BigInt::from(19683)));
        let sbar = parse_space("Sbar(4,2)").unwrap();
        assert!(matches!(
            count_record(&sbar, 7, &Budget::new(10), Parallelism::Parallel),
            Err(RouteError::Enumeration(EnumError::BudgetExceeded { .. }))
        ));
    }

    #[test]
    fn not_tate_is_reported() {
        let expr = parse_space("P(2)/Gm").unwrap();
        assert!(matches!(symbolic_value(&expr, 3).unwrap(), SymbolicOutcome::NotTate(_)));
        assert_eq!(symbolic_value(&parse_space("Sbar(3,1)").unwrap(), 3).unwrap(), SymbolicOutcome::Unavailable);
    }
}
