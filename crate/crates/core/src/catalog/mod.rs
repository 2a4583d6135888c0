//! Classes of the catalogued varieties as polynomials in `L`.
//!
//! Group classes come from the usual order formulas. Homogeneous spaces
//! `G/H` are obtained as `[G] / [H]` by exact division, which is only
//! legitimate when the stabilizer is special; a failed division is
//! surfaced as [`ClassError::InexactDivision`] rather than hidden. Rank
//! strata of matrices and alternating forms are orbits, so they are
//! computed the same way from their stabilizers.

pub mod formula;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lefschetz::{ClassError, LPoly, ScaledClass};
use crate::space::{Atom, OrthSign, SpaceExpr};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no symbolic class is catalogued for {0}")]
    NoSymbolicClass(String),
    #[error(transparent)]
    Class(#[from] ClassError),
}

/// One rank stratum of singular symmetric forms, with the fibre of the
/// incidence resolution over it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumInfo {
    pub rank: u32,
    /// Dimension of the projective stratum of rank-`r` forms.
    pub stratum_dim: i64,
    /// Dimension of the fibre `P(ker Q)`.
    pub fiber_dim: i64,
    /// `dim I - (stratum_dim + 2 * fiber_dim)`.
    pub defect: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceStrata {
    pub n: u32,
    pub dim_incidence: i64,
    pub strata: Vec<StratumInfo>,
}

fn invalid(msg: impl Into<String>) -> CatalogError {
    CatalogError::InvalidParameter(msg.into())
}

fn l_minus_one() -> LPoly {
    LPoly::l_pow_minus(1, 0)
}

/// `prod_{i<n} (L^n - L^i)`; the empty product for `n = 0`.
pub(crate) fn gl_poly(n: u32) -> Result<LPoly, ClassError> {
    let n = n as usize;
    if n * n > crate::lefschetz::MAX_DEGREE {
        return Err(ClassError::DegreeOverflow(n * n));
    }
    let factors: Vec<LPoly> = (0..n).map(|i| LPoly::l_pow_minus(n, i)).collect();
    LPoly::product(&factors)
}

/// `L^{m^2} prod_{i=1}^m (L^{2i} - 1)` for `Sp(2m)`.
pub(crate) fn sp_poly(two_m: u32) -> Result<LPoly, ClassError> {
    let m = (two_m / 2) as usize;
    let deg = m * (2 * m + 1);
    if deg > crate::lefschetz::MAX_DEGREE {
        return Err(ClassError::DegreeOverflow(deg));
    }
    let mut factors = vec![LPoly::monomial(1, m * m)];
    factors.extend((1..=m).map(|i| LPoly::l_pow_minus(2 * i, 0)));
    LPoly::product(&factors)
}

pub fn class_gl(n: u32) -> Result<ScaledClass, CatalogError> {
    if n == 0 {
        return Err(invalid("GL needs n >= 1"));
    }
    Ok(gl_poly(n)?.into())
}

pub fn class_sl(n: u32) -> Result<ScaledClass, CatalogError> {
    if n == 0 {
        return Err(invalid("SL needs n >= 1"));
    }
    Ok(gl_poly(n)?.exact_div(&l_minus_one())?.into())
}

fn check_even(two_m: u32, what: &str) -> Result<(), CatalogError> {
    if two_m == 0 || !two_m.is_multiple_of(2) {
        return Err(invalid(format!("{what} needs a positive even size, got {two_m}")));
    }
    Ok(())
}

pub fn class_sp(two_m: u32) -> Result<ScaledClass, CatalogError> {
    check_even(two_m, "Sp")?;
    Ok(sp_poly(two_m)?.into())
}

/// Symplectic similitudes: `(L - 1) [Sp(2m)]`.
pub fn class_gsp(two_m: u32) -> Result<ScaledClass, CatalogError> {
    check_even(two_m, "GSp")?;
    Ok(sp_poly(two_m)?.checked_mul(&l_minus_one())?.into())
}

pub fn class_gm() -> ScaledClass {
    l_minus_one().into()
}

pub fn class_affine(n: u32) -> Result<ScaledClass, CatalogError> {
    if n as usize > crate::lefschetz::MAX_DEGREE {
        return Err(ClassError::DegreeOverflow(n as usize).into());
    }
    Ok(LPoly::monomial(1, n as usize).into())
}

/// `1 + L + ... + L^n`.
pub fn class_proj(n: u32) -> Result<ScaledClass, CatalogError> {
    let n = n as usize;
    if n > crate::lefschetz::MAX_DEGREE {
        return Err(ClassError::DegreeOverflow(n).into());
    }
    Ok(LPoly::from_coeffs(vec![BigInt::one(); n + 1]).into())
}

/// Order of the orthogonal group as a scaled class, scalar 2:
/// odd `n = 2m+1`: `2 L^{m^2} prod_{i=1}^m (L^{2i} - 1)`;
/// even `n = 2m`: `2 L^{m(m-1)} (L^m -/+ 1) prod_{i=1}^{m-1} (L^{2i} - 1)`.
pub fn order_o(n: u32, sign: Option<OrthSign>) -> Result<ScaledClass, CatalogError> {
    if n == 0 {
        return Err(invalid("orthogonal group needs n >= 1"));
    }
    let m = (n / 2) as usize;
    let poly = match (n % 2, sign) {
        (1, None) => {
            let mut f = vec![LPoly::monomial(1, m * m)];
            f.extend((1..=m).map(|i| LPoly::l_pow_minus(2 * i, 0)));
            LPoly::product(&f)?
        }
        (0, Some(s)) => {
            let twist = match s {
                OrthSign::Plus => LPoly::l_pow_minus(m, 0),
                OrthSign::Minus => &LPoly::monomial(1, m) + &LPoly::one(),
            };
            let mut f = vec![LPoly::monomial(1, m * (m - 1)), twist];
            f.extend((1..m).map(|i| LPoly::l_pow_minus(2 * i, 0)));
            LPoly::product(&f)?
        }
        (1, Some(_)) => return Err(invalid(format!("O({n}) takes no type for odd n"))),
        _ => return Err(invalid(format!("O({n}) needs a type for even n"))),
    };
    Ok(ScaledClass::with_scalar(2, 1, poly))
}

/// `#(GL_n / O_n)(F_q)` for the given isometry type, as an exact rational
/// (always a positive integer for odd prime `q`).
pub fn count_gl_mod_o(n: u32, sign: Option<OrthSign>, q: u32) -> Result<BigRational, CatalogError> {
    if q < 3 || q.is_multiple_of(2) || !crate::ffield::is_prime(q) {
        return Err(invalid(format!("q = {q} must be an odd prime")));
    }
    let q = BigInt::from(q);
    let gl = class_gl(n)?.eval_at(&q);
    let o = order_o(n, sign)?.eval_at(&q);
    Ok(gl / o)
}

/// `n x n` matrices of rank exactly `r`:
/// `(prod_{i<r} (L^n - L^i))^2 / prod_{i<r} (L^r - L^i)`, the orbit
/// `GL_n x GL_n / Stab` of the rank-`r` normal form.
pub fn class_mat_rank(n: u32, r: u32) -> Result<ScaledClass, CatalogError> {
    if n == 0 || r > n {
        return Err(invalid(format!("MatRank needs 0 <= r <= n (n={n}, r={r})")));
    }
    let (n, r) = (n as usize, r as usize);
    let frames: Vec<LPoly> = (0..r).map(|i| LPoly::l_pow_minus(n, i)).collect();
    let frames = LPoly::product(&frames)?;
    let num = frames.checked_mul(&frames)?;
    let den = gl_poly(r as u32)?;
    let class = num.exact_div(&den).expect("rank strata of matrices divide exactly");
    Ok(class.into())
}

/// Projective hypersurface of singular matrices: `(sum_{r<n} [X_r] - 1) / (L - 1)`.
pub fn class_det_hypersurface(n: u32) -> Result<ScaledClass, CatalogError> {
    if n < 2 {
        return Err(invalid("Det needs n >= 2"));
    }
    let mut cone = LPoly::zero();
    for r in 0..n {
        cone = &cone + class_mat_rank(n, r)?.poly();
    }
    let proj = (&cone - &LPoly::one()).exact_div(&l_minus_one())?;
    Ok(proj.into())
}

/// Alternating forms of rank `2k` on a `two_n`-space, as the orbit
/// `GL(two_n) / H_k` with `H_k = Hom(W, R) x GL(R) x Sp(W)`,
/// `dim R = two_n - 2k`, `dim W = 2k`.
pub fn class_alt_rank(two_n: u32, k: u32) -> Result<ScaledClass, CatalogError> {
    if two_n == 0 || !two_n.is_multiple_of(2) || 2 * k > two_n {
        return Err(invalid(format!("AltRank needs even 2n > 0 and 2k <= 2n (2n={two_n}, k={k})")));
    }
    let r = 2 * k as usize;
    let m = two_n as usize - r;
    let unipotent = LPoly::monomial(1, m * r);
    let stab = LPoly::product(&[unipotent, gl_poly(m as u32)?, sp_poly(2 * k)?])?;
    let class = gl_poly(two_n)?.exact_div(&stab).expect("alternating rank strata divide exactly");
    Ok(class.into())
}

/// Projective Pfaffian hypersurface: `(sum_{k<n} [O_{2k}] - 1) / (L - 1)`.
pub fn class_pfaffian_hypersurface(two_n: u32) -> Result<ScaledClass, CatalogError> {
    if two_n < 4 || !two_n.is_multiple_of(2) {
        return Err(invalid(format!("Pf needs even 2n >= 4, got {two_n}")));
    }
    let mut cone = LPoly::zero();
    for k in 0..two_n / 2 {
        cone = &cone + class_alt_rank(two_n, k)?.poly();
    }
    Ok((&cone - &LPoly::one()).exact_div(&l_minus_one())?.into())
}

/// Dimension of the irreducible `SL_n` representation with highest weight
/// `sum a_i w_i`, by the Weyl dimension formula.
pub fn weyl_dim(n: u32, a: &[u32]) -> Result<BigInt, CatalogError> {
    if n < 2 {
        return Err(invalid("weyl_dim needs n >= 2"));
    }
    if a.len() != (n - 1) as usize {
        return Err(invalid(format!("weyl_dim({n}) needs {} coordinates, got {}", n - 1, a.len())));
    }
    let n = n as usize;
    // c_i = a_i + ... + a_{n-1} + (n - i), 1-based i, with a_n = 0
    let c: Vec<BigInt> = (0..n)
        .map(|i| {
            let tail: u64 = a[i.min(n - 1)..].iter().map(|&x| x as u64).sum();
            BigInt::from(tail + (n - 1 - i) as u64)
        })
        .collect();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..n {
        for j in i + 1..n {
            num *= &c[i] - &c[j];
            den *= BigInt::from(j - i);
        }
    }
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

/// The special pair `(G, H)` behind a catalogued quotient atom.
pub fn special_pair(atom: &Atom) -> Result<Option<(ScaledClass, ScaledClass)>, CatalogError> {
    let pair = match atom {
        Atom::XSp { p, n } => {
            if *n == 0 || p > n {
                return Err(invalid(format!("XSp needs 0 <= p <= n (p={p}, n={n})")));
            }
            let h = sp_poly(2 * p)?.checked_mul(&sp_poly(2 * (n - p))?)?;
            (sp_poly(2 * n)?.into(), h.into())
        }
        Atom::LSp(n) => {
            if *n == 0 {
                return Err(invalid("LSp needs n >= 1"));
            }
            (sp_poly(2 * n)?.into(), class_gl(*n)?)
        }
        Atom::B(two_n) => (class_gl(*two_n)?, class_sp(*two_n)?),
        Atom::PAlt(two_n) => (class_gl(*two_n)?, class_gsp(*two_n)?),
        Atom::SLrep { n, weights } => {
            let dim = weyl_dim(*n, weights)?;
            let dim: u32 = dim
                .try_into()
                .map_err(|_| CatalogError::Class(ClassError::DegreeOverflow(usize::MAX)))?;
            (class_gl(dim)?, class_sl(*n)?)
        }
        _ => return Ok(None),
    };
    Ok(Some(pair))
}

/// Class of a catalogued special quotient by exact division of group
/// classes. A nonzero remainder comes back as an error, never a panic.
pub fn class_special_quotient(atom: &Atom) -> Result<ScaledClass, CatalogError> {
    let (g, h) = special_pair(atom)?.ok_or_else(|| invalid(format!("{atom} is not a catalogued special quotient")))?;
    Ok(g.scaled_div(&h)?)
}

/// Dimensions of the rank strata of the determinantal hypersurface of
/// symmetric forms and of the fibres of its incidence resolution.
pub fn incidence_strata(n: u32) -> Result<IncidenceStrata, CatalogError> {
    if n < 2 {
        return Err(invalid("incidence strata need n >= 2"));
    }
    let ni = n as i64;
    let dim_incidence = ni * (ni + 1) / 2 - 2;
    let strata = (0..n)
        .map(|r| {
            let ri = r as i64;
            let stratum_dim = ri * ni - ri * (ri - 1) / 2 - 1;
            let fiber_dim = ni - ri - 1;
            let defect = (ni - ri - 1) * (ni - ri - 2) / 2;
            assert_eq!(defect, dim_incidence - (stratum_dim + 2 * fiber_dim), "defect identity at n={n}, r={r}");
            StratumInfo { rank: r, stratum_dim, fiber_dim, defect }
        })
        .collect();
    Ok(IncidenceStrata { n, dim_incidence, strata })
}

/// Class of a single atom, where one is catalogued.
pub fn atom_class(atom: &Atom) -> Result<ScaledClass, CatalogError> {
    match atom {
        Atom::GL(n) => class_gl(*n),
        Atom::SL(n) => class_sl(*n),
        Atom::Sp(n) => class_sp(*n),
        Atom::GSp(n) => class_gsp(*n),
        Atom::Gm => Ok(class_gm()),
        Atom::Affine(n) => class_affine(*n),
        Atom::Proj(n) => class_proj(*n),
        Atom::MatRank { n, r } => class_mat_rank(*n, *r),
        Atom::Det(n) => class_det_hypersurface(*n),
        Atom::AltRank { two_n, k } => class_alt_rank(*two_n, *k),
        Atom::Pf(n) => class_pfaffian_hypersurface(*n),
        Atom::XSp { .. } | Atom::LSp(_) | Atom::B(_) | Atom::PAlt(_) | Atom::SLrep { .. } => class_special_quotient(atom),
        Atom::Inc(n) => {
            // projective bundle with fibre P^{N-n-1} over P^{n-1}
            let big_n = n * (n + 1) / 2;
            Ok(class_proj(n - 1)?.checked_mul(&class_proj(big_n - n - 1)?)?)
        }
        // GL_n/O_n is deliberately left out: it is only exposed as a count
        Atom::GLmodO { .. } | Atom::Y(_) | Atom::Sbar { .. } | Atom::Sphere(_) => {
            Err(CatalogError::NoSymbolicClass(atom.to_string()))
        }
    }
}

/// Class of an expression: quotients by exact division, products,
/// differences, and projectivization `(X - 1) / (L - 1)`.
pub fn symbolic_class(expr: &SpaceExpr) -> Result<ScaledClass, CatalogError> {
    match expr {
        SpaceExpr::Atom(a) => atom_class(a),
        SpaceExpr::Quotient(a, b) => Ok(symbolic_class(a)?.scaled_div(&symbolic_class(b)?)?),
        SpaceExpr::Product(a, b) => Ok(symbolic_class(a)?.checked_mul(&symbolic_class(b)?)?),
        SpaceExpr::Difference(a, b) => Ok(symbolic_class(a)?.checked_sub(&symbolic_class(b)?)),
        SpaceExpr::Projectivize(e) => {
            let cone = symbolic_class(e)?.checked_sub(&ScaledClass::one());
            Ok(cone.scaled_div(&class_gm())?)
        }
    }
}

/// A-priori dimension of a space, used as the expected degree of its
/// counting polynomial. `None` when it cannot be determined.
pub fn expected_dimension(expr: &SpaceExpr) -> Option<usize> {
    if let Ok(c) = symbolic_class(expr) {
        return c.degree();
    }
    match expr {
        SpaceExpr::Atom(a) => match a {
            Atom::GLmodO { n, .. } => Some((n * (n + 1) / 2) as usize),
            Atom::Y(n) => Some((n * (n + 1) / 2 - 2) as usize),
            Atom::Sbar { n, r } => {
                let (n, r) = (*n as i64, *r as i64);
                Some((r * n - r * (r - 1) / 2 - 1).max(0) as usize)
            }
            Atom::Sphere(m) => Some(*m as usize),
            _ => None,
        },
        SpaceExpr::Quotient(a, b) => expected_dimension(a)?.checked_sub(expected_dimension(b)?),
        SpaceExpr::Product(a, b) => Some(expected_dimension(a)? + expected_dimension(b)?),
        SpaceExpr::Difference(a, b) => Some(expected_dimension(a)?.max(expected_dimension(b)?)),
        SpaceExpr::Projectivize(e) => expected_dimension(e)?.checked_sub(1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::parse_space;

    fn lp(c: &[i64]) -> LPoly {
        LPoly::from_i64s(c)
    }

    fn at(c: &ScaledClass, q: u64) -> BigRational {
        c.eval_at_u64(q)
    }

    fn int(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    #[test]
    fn gl_examples() {
        assert_eq!(class_gl(1).unwrap(), lp(&[-1, 1]).into());
        let gl2 = class_gl(2).unwrap();
        assert_eq!(gl2, lp(&[0, 1, -1, -1, 1]).into());
        assert_eq!(at(&gl2, 2), int(6));
        assert_eq!(at(&class_gl(3).unwrap(), 3), int((27 - 1) * (27 - 3) * (27 - 9)));
        assert_eq!(at(&class_gl(3).unwrap(), 3), int(11232));
    }

    #[test]
    fn group_examples() {
        assert_eq!(class_sp(2).unwrap(), class_sl(2).unwrap());
        assert_eq!(class_sp(2).unwrap(), lp(&[0, -1, 0, 1]).into());
        assert_eq!(at(&class_proj(2).unwrap(), 3), int(13));
        let sp4 = class_sp(4).unwrap();
        assert_eq!(at(&sp4, 3), int(51840));
        // |O_5(F_3)| / 2
        assert_eq!(at(&order_o(5, None).unwrap(), 3) / int(2), int(51840));
        assert_eq!(at(&class_gsp(4).unwrap(), 3), int(51840 * 2));
        assert_eq!(class_gm(), lp(&[-1, 1]).into());
        assert_eq!(class_affine(3).unwrap(), LPoly::monomial(1, 3).into());
        assert!(matches!(class_sp(3), Err(CatalogError::InvalidParameter(_))));
        assert!(matches!(class_gsp(0), Err(CatalogError::InvalidParameter(_))));
    }

    #[test]
    fn orthogonal_orders() {
        assert_eq!(at(&order_o(3, None).unwrap(), 3), int(48));
        assert_eq!(at(&order_o(2, Some(OrthSign::Plus)).unwrap(), 3), int(4));
        assert_eq!(at(&order_o(2, Some(OrthSign::Minus)).unwrap(), 3), int(8));
        assert_eq!(at(&order_o(4, Some(OrthSign::Minus)).unwrap(), 3), int(1440));
        assert_eq!(order_o(1, None).unwrap(), ScaledClass::with_scalar(2, 1, LPoly::one()));
        assert!(order_o(3, Some(OrthSign::Plus)).is_err());
        assert!(order_o(4, None).is_err());
    }

    #[test]
    fn gl_mod_o_counts() {
        assert_eq!(count_gl_mod_o(3, None, 3).unwrap(), int(234));
        assert_eq!(count_gl_mod_o(2, Some(OrthSign::Plus), 3).unwrap(), int(12));
        assert_eq!(count_gl_mod_o(2, Some(OrthSign::Minus), 3).unwrap(), int(6));
        assert!(count_gl_mod_o(3, None, 4).is_err());
        for q in [3u32, 5, 7, 11, 13] {
            for (n, s) in [(1, None), (2, Some(OrthSign::Plus)), (2, Some(OrthSign::Minus)), (3, None), (4, Some(OrthSign::Plus)), (4, Some(OrthSign::Minus)), (5, None)] {
                let c = count_gl_mod_o(n, s, q).unwrap();
                assert!(c.is_integer() && c > BigRational::zero(), "n={n} q={q}");
            }
        }
    }

    #[test]
    fn matrix_rank_strata() {
        assert_eq!(class_mat_rank(3, 0).unwrap(), ScaledClass::one());
        for n in 1..=4 {
            assert_eq!(class_mat_rank(n, n).unwrap(), class_gl(n).unwrap());
        }
        assert_eq!(at(&class_mat_rank(2, 1).unwrap(), 2), int(9));
        for n in 1..=6u32 {
            let total = (0..=n).fold(LPoly::zero(), |acc, r| &acc + class_mat_rank(n, r).unwrap().poly());
            assert_eq!(total, LPoly::monomial(1, (n * n) as usize), "n={n}");
        }
    }

    #[test]
    fn determinant_hypersurface() {
        let d2 = class_det_hypersurface(2).unwrap();
        assert_eq!(d2, lp(&[1, 2, 1]).into());
        assert_eq!(at(&d2, 3), int(16));
    }

    #[test]
    fn alternating_strata() {
        assert_eq!(class_alt_rank(6, 0).unwrap(), ScaledClass::one());
        assert_eq!(class_alt_rank(2, 1).unwrap(), lp(&[-1, 1]).into());
        for n in 1..=4u32 {
            let total = (0..=n).fold(LPoly::zero(), |acc, k| &acc + class_alt_rank(2 * n, k).unwrap().poly());
            assert_eq!(total, LPoly::monomial(1, (n * (2 * n - 1)) as usize), "2n={}", 2 * n);
        }
    }

    #[test]
    fn pfaffian_boundary_identity() {
        for two_n in [4u32, 6, 8] {
            let big_n = two_n * (two_n - 1) / 2;
            let lhs = class_proj(big_n - 1).unwrap();
            let open = class_special_quotient(&Atom::PAlt(two_n)).unwrap();
            let boundary = class_pfaffian_hypersurface(two_n).unwrap();
            assert_eq!(lhs, open.checked_add(&boundary), "2n={two_n}");
        }
    }

    #[test]
    fn special_quotient_examples() {
        assert_eq!(class_special_quotient(&Atom::XSp { p: 0, n: 3 }).unwrap(), ScaledClass::one());
        assert_eq!(class_special_quotient(&Atom::LSp(1)).unwrap(), lp(&[0, 1, 1]).into());
        assert_eq!(class_special_quotient(&Atom::B(2)).unwrap(), lp(&[-1, 1]).into());
        assert_eq!(
            class_special_quotient(&Atom::SLrep { n: 2, weights: vec![1] }).unwrap(),
            lp(&[-1, 1]).into()
        );
        assert!(class_special_quotient(&Atom::GL(2)).is_err());
    }

    #[test]
    fn weyl_examples() {
        for m in 0..10u32 {
            assert_eq!(weyl_dim(2, &[m]).unwrap(), BigInt::from(m + 1));
        }
        assert_eq!(weyl_dim(3, &[1, 0]).unwrap(), BigInt::from(3));
        assert_eq!(weyl_dim(3, &[1, 1]).unwrap(), BigInt::from(8));
        // Sym^2 of the standard rep of SL_4
        assert_eq!(weyl_dim(4, &[2, 0, 0]).unwrap(), BigInt::from(10));
        assert!(weyl_dim(3, &[1]).is_err());
    }

    #[test]
    fn fundamental_weights_give_binomials() {
        for n in 2..=8u32 {
            for k in 1..n {
                let mut a = vec![0; (n - 1) as usize];
                a[(k - 1) as usize] = 1;
                let binom = (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1));
                assert_eq!(weyl_dim(n, &a).unwrap(), binom, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn incidence_examples() {
        let s3 = incidence_strata(3).unwrap();
        assert_eq!(s3.dim_incidence, 4);
        assert_eq!(s3.strata[1], StratumInfo { rank: 1, stratum_dim: 2, fiber_dim: 1, defect: 0 });
        for n in 2..=10 {
            let s = incidence_strata(n).unwrap();
            assert_eq!(s.strata.last().unwrap().defect, 0);
        }
        assert_eq!(incidence_strata(5).unwrap().strata[1].defect, 3);
    }

    #[test]
    fn expression_classes() {
        let e = parse_space("GL(2)/Gm").unwrap();
        assert_eq!(symbolic_class(&e).unwrap(), class_sl(2).unwrap());
        let e = parse_space("Proj(A(3))").unwrap();
        assert_eq!(symbolic_class(&e).unwrap(), class_proj(2).unwrap());
        let e = parse_space("GL(2)/Sp(2)*Sp(2)").unwrap();
        assert_eq!(symbolic_class(&e).unwrap(), class_gl(2).unwrap());
        let e = parse_space("GL(2)/A(1)").unwrap();
        // [GL_2] / L = L^3 - L^2 - L + 1
        assert_eq!(symbolic_class(&e).unwrap(), lp(&[1, -1, -1, 1]).into());
        let e = parse_space("P(2)/Gm").unwrap();
        assert!(matches!(symbolic_class(&e), Err(CatalogError::Class(ClassError::InexactDivision { .. }))));
        let e = parse_space("GLmodO(3)").unwrap();
        assert!(matches!(symbolic_class(&e), Err(CatalogError::NoSymbolicClass(_))));
        assert_eq!(expected_dimension(&e), Some(6));
        assert_eq!(expected_dimension(&parse_space("Det(2)").unwrap()), Some(2));
    }
}
