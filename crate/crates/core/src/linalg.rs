//! Dense matrices over `F_p`: rank, determinant, Pfaffian, and the
//! isometry type of a symmetric bilinear form.
//!
//! The enumeration oracles call [`rank_det_in_place`] directly on a scratch
//! buffer so that the hot loop never allocates. Everything else goes
//! through [`MatFp`].

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ffield::{Fp, PrimeField};

/// Largest supported row or column count.
pub const MAX_DIM: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not alternating (needs A = -A^T and a zero diagonal)")]
    NotAlternating,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("Pfaffian needs even size, got {0}")]
    OddSize(usize),
    #[error("dimension {rows}x{cols} outside 1..={MAX_DIM}")]
    BadDimension { rows: usize, cols: usize },
    #[error("expected {expected} entries, got {got}")]
    EntryCount { expected: usize, got: usize },
    #[error("fields differ: {0} vs {1}")]
    FieldMismatch(u32, u32),
    #[error("quadratic form classification needs odd characteristic")]
    EvenCharacteristic,
}

/// Isometry type of a symmetric bilinear form over a finite field of odd
/// order. Nondegenerate forms of odd rank are tagged by the square class of
/// the determinant; of even rank by whether the form is split (`+`) or
/// nonsplit (`-`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymType {
    OddRankSquareDisc,
    OddRankNonsquareDisc,
    EvenPlus,
    EvenMinus,
    Degenerate,
}

impl SymType {
    pub fn is_nondegenerate(self) -> bool {
        self != SymType::Degenerate
    }
}

impl fmt::Display for SymType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SymType::OddRankSquareDisc => "odd_rank_square_disc",
            SymType::OddRankNonsquareDisc => "odd_rank_nonsquare_disc",
            SymType::EvenPlus => "even_plus",
            SymType::EvenMinus => "even_minus",
            SymType::Degenerate => "degenerate",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatFp {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl MatFp {
    /// Builds a matrix from row-major integer entries, reducing each mod p.
    pub fn new(field: PrimeField, rows: usize, cols: usize, entries: &[i64]) -> Result<Self, LinalgError> {
        check_dims(rows, cols)?;
        if entries.len() != rows * cols {
            return Err(LinalgError::EntryCount { expected: rows * cols, got: entries.len() });
        }
        let entries = entries.iter().map(|&x| field.elem(x).value()).collect();
        Ok(MatFp { field, rows, cols, entries })
    }

    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Result<Self, LinalgError> {
        check_dims(rows, cols)?;
        Ok(MatFp { field, rows, cols, entries: vec![0; rows * cols] })
    }

    pub fn identity(field: PrimeField, n: usize) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(field, n, n)?;
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        Ok(m)
    }

    pub fn from_fn(
        field: PrimeField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> i64,
    ) -> Result<Self, LinalgError> {
        check_dims(rows, cols)?;
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(field.elem(f(i, j)).value());
            }
        }
        Ok(MatFp { field, rows, cols, entries })
    }

    /// Standard symplectic block form `[[0, I_m], [-I_m, 0]]`.
    pub fn standard_symplectic(field: PrimeField, two_m: usize) -> Result<Self, LinalgError> {
        if !two_m.is_multiple_of(2) {
            return Err(LinalgError::OddSize(two_m));
        }
        let m = two_m / 2;
        Self::from_fn(field, two_m, two_m, |i, j| {
            if i < m && j == i + m {
                1
            } else if i >= m && j + m == i {
                -1
            } else {
                0
            }
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fp {
        self.field.from_residue(self.entries[i * self.cols + j])
    }

    pub fn set(&mut self, i: usize, j: usize, v: Fp) {
        self.entries[i * self.cols + j] = v.value();
    }

    pub fn raw_entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn transpose(&self) -> MatFp {
        let mut entries = vec![0; self.entries.len()];
        for i in 0..self.rows {
            for j in 0..self.cols {
                entries[j * self.rows + i] = self.entries[i * self.cols + j];
            }
        }
        MatFp { field: self.field, rows: self.cols, cols: self.rows, entries }
    }

    pub fn mul(&self, other: &MatFp) -> Result<MatFp, LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch(self.field.p(), other.field.p()));
        }
        if self.cols != other.rows {
            return Err(LinalgError::EntryCount { expected: self.cols, got: other.rows });
        }
        let p = self.field.p() as u64;
        let mut entries = vec![0u32; self.rows * other.cols];
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = 0u64;
                for k in 0..self.cols {
                    acc += self.entries[i * self.cols + k] as u64 * other.entries[k * other.cols + j] as u64;
                }
                entries[i * other.cols + j] = (acc % p) as u32;
            }
        }
        Ok(MatFp { field: self.field, rows: self.rows, cols: other.cols, entries })
    }

    /// `g^T * self * g`, the action of `g` on a bilinear form.
    pub fn congruence(&self, g: &MatFp) -> Result<MatFp, LinalgError> {
        g.transpose().mul(self)?.mul(g)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_alternating(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self.get(i, i).is_zero() && (0..i).all(|j| self.get(i, j) == self.field.neg(self.get(j, i)))
            })
    }

    pub fn rank(&self) -> usize {
        let mut scratch = self.entries.clone();
        let inv = self.field.inverse_table();
        rank_det_in_place(&mut scratch, self.rows, self.cols, self.field.p(), &inv).0
    }

    pub fn det(&self) -> Result<Fp, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut scratch = self.entries.clone();
        let inv = self.field.inverse_table();
        let (_, det) = rank_det_in_place(&mut scratch, self.rows, self.cols, self.field.p(), &inv);
        Ok(self.field.from_residue(det))
    }

    /// Pfaffian by expansion along the first row:
    /// `Pf(A) = sum_j (-1)^j a_{1j} Pf(A with rows/cols 1, j removed)` (1-based `j`),
    /// normalized so the standard symplectic block form has Pfaffian 1
    /// when written as `m` diagonal copies of `[[0, 1], [-1, 0]]`.
    pub fn pfaffian(&self) -> Result<Fp, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        if !self.rows.is_multiple_of(2) {
            return Err(LinalgError::OddSize(self.rows));
        }
        if !self.is_alternating() {
            return Err(LinalgError::NotAlternating);
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.field.from_residue(self.pfaffian_rec(&idx)))
    }

    fn pfaffian_rec(&self, idx: &[usize]) -> u32 {
        if idx.is_empty() {
            return 1;
        }
        let p = self.field.p();
        let first = idx[0];
        let mut acc = 0u32;
        for pos in 1..idx.len() {
            let a = self.entries[first * self.cols + idx[pos]];
            if a == 0 {
                continue;
            }
            let rest: Vec<usize> = idx[1..].iter().copied().filter(|&c| c != idx[pos]).collect();
            let term = (a as u64 * self.pfaffian_rec(&rest) as u64 % p as u64) as u32;
            // pos is 0-based, so the 1-based column index is pos + 1
            if pos % 2 == 1 {
                acc = (acc + term) % p;
            } else {
                acc = (acc + p - term) % p;
            }
        }
        acc
    }

    pub fn classify_symmetric(&self) -> Result<(usize, SymType), LinalgError> {
        if !self.is_symmetric() {
            return Err(LinalgError::NotSymmetric);
        }
        if self.field.p() == 2 {
            return Err(LinalgError::EvenCharacteristic);
        }
        let inv = self.field.inverse_table();
        let mut scratch = self.entries.clone();
        let (rank, det) = rank_det_in_place(&mut scratch, self.rows, self.cols, self.field.p(), &inv);
        Ok((rank, sym_type_from(self.field, self.rows, rank, det)))
    }
}

impl fmt::Display for MatFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

fn check_dims(rows: usize, cols: usize) -> Result<(), LinalgError> {
    if rows == 0 || cols == 0 || rows > MAX_DIM || cols > MAX_DIM {
        return Err(LinalgError::BadDimension { rows, cols });
    }
    Ok(())
}

/// Type of an `n x n` symmetric form of the given rank and determinant.
pub fn sym_type_from(field: PrimeField, n: usize, rank: usize, det: u32) -> SymType {
    if rank < n {
        return SymType::Degenerate;
    }
    let det = field.from_residue(det);
    if n % 2 == 1 {
        if field.is_square(det) {
            SymType::OddRankSquareDisc
        } else {
            SymType::OddRankNonsquareDisc
        }
    } else {
        let disc = if (n / 2) % 2 == 1 { field.neg(det) } else { det };
        if field.is_square(disc) {
            SymType::EvenPlus
        } else {
            SymType::EvenMinus
        }
    }
}

/// Gaussian elimination on a row-major scratch buffer. Returns the rank and,
/// for square input, the determinant residue (0 when singular). `inv` is the
/// table from [`PrimeField::inverse_table`]. The buffer is clobbered.
#[inline]
pub fn rank_det_in_place(buf: &mut [u32], rows: usize, cols: usize, p: u32, inv: &[u32]) -> (usize, u32) {
    let mut rank = 0;
    let mut det: u64 = 1;
    let mut negate = false;
    let p64 = p as u64;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| buf[r * cols + col] != 0) else {
            det = 0;
            continue;
        };
        if pivot != rank {
            for c in col..cols {
                buf.swap(pivot * cols + c, rank * cols + c);
            }
            negate = !negate;
        }
        let pv = buf[rank * cols + col];
        det = det * pv as u64 % p64;
        let pinv = inv[pv as usize] as u64;
        for r in rank + 1..rows {
            let lead = buf[r * cols + col];
            if lead == 0 {
                continue;
            }
            let factor = lead as u64 * pinv % p64;
            for c in col..cols {
                let sub = factor * buf[rank * cols + c] as u64 % p64;
                let cur = buf[r * cols + c] as u64;
                buf[r * cols + c] = ((cur + p64 - sub) % p64) as u32;
            }
        }
        rank += 1;
    }
    if rows != cols || rank < rows {
        return (rank, 0);
    }
    let det = det as u32;
    (rank, if negate && det != 0 { p - det } else { det })
}
