//! Closed-form point counts evaluated directly in integers.
//!
//! These mirror the catalog classes but never touch [`crate::lefschetz`],
//! so agreement between the two is a real cross-check of the polynomial
//! code. The orthogonal counts and the sphere count are the explicit
//! finite-field formulas.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{weyl_dim, CatalogError};
use crate::ffield::{is_prime, PrimeField};
use crate::space::{Atom, OrthSign, SpaceExpr};

fn qi(q: u32) -> BigInt {
    BigInt::from(q)
}

fn pow(q: u32, e: u64) -> BigInt {
    num_traits::pow(qi(q), e as usize)
}

pub fn gl_order(n: u32, q: u32) -> BigInt {
    (0..n as u64).map(|i| pow(q, n as u64) - pow(q, i)).product()
}

pub fn sl_order(n: u32, q: u32) -> BigInt {
    gl_order(n, q) / (qi(q) - 1)
}

pub fn sp_order(two_m: u32, q: u32) -> BigInt {
    let m = (two_m / 2) as u64;
    pow(q, m * m) * (1..=m).map(|i| pow(q, 2 * i) - 1).product::<BigInt>()
}

pub fn gsp_order(two_m: u32, q: u32) -> BigInt {
    sp_order(two_m, q) * (qi(q) - 1)
}

pub fn proj_count(n: u32, q: u32) -> BigInt {
    (pow(q, n as u64 + 1) - 1) / (qi(q) - 1)
}

pub fn o_order(n: u32, sign: Option<OrthSign>, q: u32) -> BigInt {
    let m = (n / 2) as u64;
    let two = BigInt::from(2);
    if n % 2 == 1 {
        two * pow(q, m * m) * (1..=m).map(|i| pow(q, 2 * i) - 1).product::<BigInt>()
    } else {
        let twist = match sign {
            Some(OrthSign::Minus) => pow(q, m) + 1,
            _ => pow(q, m) - 1,
        };
        two * pow(q, m * (m - 1)) * twist * (1..m).map(|i| pow(q, 2 * i) - 1).product::<BigInt>()
    }
}

/// `n x n` matrices of rank `r`: ordered `r`-frames in the row and column
/// spaces, modulo `GL_r`.
pub fn mat_rank_count(n: u32, r: u32, q: u32) -> BigInt {
    let frames: BigInt = (0..r as u64).map(|i| pow(q, n as u64) - pow(q, i)).product();
    &frames * &frames / gl_order(r, q)
}

pub fn alt_rank_count(two_n: u32, k: u32, q: u32) -> BigInt {
    let r = 2 * k;
    let m = two_n - r;
    gl_order(two_n, q) / (pow(q, (m * r) as u64) * gl_order(m, q) * sp_order(r, q))
}

/// Affine solutions of `x_1^2 + ... + x_k^2 = 1` over `F_q`, `q` odd:
/// `q^{2s-1} - eta((-1)^s) q^{s-1}` for `k = 2s`,
/// `q^{2s} + eta((-1)^s) q^s` for `k = 2s + 1`.
pub fn sphere_count(m: u32, q: u32) -> Result<BigInt, CatalogError> {
    let field = PrimeField::new(q).map_err(|e| CatalogError::InvalidParameter(e.to_string()))?;
    let k = (m + 1) as u64;
    let s = k / 2;
    let sign = if s.is_multiple_of(2) { 1 } else { -1 };
    let eta = BigInt::from(field.legendre(field.elem(sign)));
    Ok(if k.is_multiple_of(2) {
        pow(q, 2 * s - 1) - eta * pow(q, s - 1)
    } else {
        pow(q, 2 * s) + eta * pow(q, s)
    })
}

/// All nondegenerate symmetric `n x n` matrices: every isometry class is a
/// `GL_n` orbit with stabilizer `O_n`.
pub fn nondegenerate_symmetric_count(n: u32, q: u32) -> BigInt {
    let gl = gl_order(n, q);
    if n % 2 == 1 {
        // two determinant classes, orbits of equal size
        BigInt::from(2) * &gl / o_order(n, None, q)
    } else {
        &gl / o_order(n, Some(OrthSign::Plus), q) + &gl / o_order(n, Some(OrthSign::Minus), q)
    }
}

fn require_odd_prime(q: u32) -> Result<(), CatalogError> {
    if q < 3 || !is_prime(q) {
        return Err(CatalogError::InvalidParameter(format!("q = {q} must be an odd prime")));
    }
    Ok(())
}

/// Formula value for an atom, `None` where no closed form is catalogued.
pub fn atom_formula(atom: &Atom, q: u32) -> Result<Option<BigRational>, CatalogError> {
    let int = |x: BigInt| Ok(Some(BigRational::from_integer(x)));
    match atom {
        Atom::GL(n) => int(gl_order(*n, q)),
        Atom::SL(n) => int(sl_order(*n, q)),
        Atom::Sp(n) => int(sp_order(*n, q)),
        Atom::GSp(n) => int(gsp_order(*n, q)),
        Atom::Gm => int(qi(q) - 1),
        Atom::Affine(n) => int(pow(q, *n as u64)),
        Atom::Proj(n) => int(proj_count(*n, q)),
        Atom::MatRank { n, r } => int(mat_rank_count(*n, *r, q)),
        Atom::Det(n) => {
            let cone: BigInt = (0..*n).map(|r| mat_rank_count(*n, r, q)).sum();
            int((cone - 1) / (qi(q) - 1))
        }
        Atom::AltRank { two_n, k } => int(alt_rank_count(*two_n, *k, q)),
        Atom::Pf(two_n) => {
            let cone: BigInt = (0..two_n / 2).map(|k| alt_rank_count(*two_n, k, q)).sum();
            int((cone - 1) / (qi(q) - 1))
        }
        Atom::XSp { p, n } => int(sp_order(2 * n, q) / (sp_order(2 * p, q) * sp_order(2 * (n - p), q))),
        Atom::LSp(n) => int(sp_order(2 * n, q) / gl_order(*n, q)),
        Atom::B(n) => int(gl_order(*n, q) / sp_order(*n, q)),
        Atom::PAlt(n) => int(gl_order(*n, q) / gsp_order(*n, q)),
        Atom::SLrep { n, weights } => {
            let big_n: u32 = weyl_dim(*n, weights)?
                .try_into()
                .map_err(|_| CatalogError::InvalidParameter("representation too large".into()))?;
            Ok(Some(BigRational::new(gl_order(big_n, q), sl_order(*n, q))))
        }
        Atom::GLmodO { n, sign } => {
            require_odd_prime(q)?;
            Ok(Some(BigRational::new(gl_order(*n, q), o_order(*n, *sign, q))))
        }
        Atom::Inc(n) => {
            let big_n = n * (n + 1) / 2;
            int(proj_count(n - 1, q) * proj_count(big_n - n - 1, q))
        }
        Atom::Y(n) => {
            require_odd_prime(q)?;
            let big_n = (n * (n + 1) / 2) as u64;
            int((pow(q, big_n) - 1 - nondegenerate_symmetric_count(*n, q)) / (qi(q) - 1))
        }
        Atom::Sphere(m) => {
            require_odd_prime(q)?;
            int(sphere_count(*m, q)?)
        }
        Atom::Sbar { .. } => Ok(None),
    }
}

/// Formula value for an expression, composed from atom formulas.
pub fn formula_value(expr: &SpaceExpr, q: u32) -> Result<Option<BigRational>, CatalogError> {
    let both = |a: &SpaceExpr, b: &SpaceExpr| -> Result<Option<(BigRational, BigRational)>, CatalogError> {
        Ok(formula_value(a, q)?.zip(formula_value(b, q)?))
    };
    Ok(match expr {
        SpaceExpr::Atom(a) => atom_formula(a, q)?,
        SpaceExpr::Quotient(a, b) => match both(a, b)? {
            Some((_, y)) if y.is_zero() => None,
            other => other.map(|(x, y)| x / y),
        },
        SpaceExpr::Product(a, b) => both(a, b)?.map(|(x, y)| x * y),
        SpaceExpr::Difference(a, b) => both(a, b)?.map(|(x, y)| x - y),
        SpaceExpr::Projectivize(e) => formula_value(e, q)?
            .map(|x| (x - BigRational::one()) / BigRational::from_integer(qi(q) - 1)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn numeric_orders_match_classes() {
        for q in [2u32, 3, 5, 7] {
            let b = BigInt::from(q);
            for n in 1..=5 {
                assert_eq!(BigRational::from_integer(gl_order(n, q)), catalog::class_gl(n).unwrap().eval_at(&b));
                assert_eq!(BigRational::from_integer(sl_order(n, q)), catalog::class_sl(n).unwrap().eval_at(&b));
            }
            for m in 1..=3 {
                assert_eq!(BigRational::from_integer(sp_order(2 * m, q)), catalog::class_sp(2 * m).unwrap().eval_at(&b));
            }
        }
    }

    #[test]
    fn sphere_formula_small_cases() {
        assert_eq!(sphere_count(3, 3).unwrap(), BigInt::from(24));
        assert_eq!(sphere_count(0, 5).unwrap(), BigInt::from(2));
        // x^2 + y^2 = 1 over F_3: (+-1, 0), (0, +-1)
        assert_eq!(sphere_count(1, 3).unwrap(), BigInt::from(4));
        assert_eq!(sphere_count(1, 5).unwrap(), BigInt::from(4));
    }

    #[test]
    fn nondegenerate_counts() {
        // 2x2 over F_3: 27 symmetric, 9 singular
        assert_eq!(nondegenerate_symmetric_count(2, 3), BigInt::from(18));
        assert_eq!(nondegenerate_symmetric_count(3, 3), BigInt::from(468));
        assert_eq!(atom_formula(&Atom::Y(3), 3).unwrap(), Some(BigRational::from_integer(130.into())));
    }
}
