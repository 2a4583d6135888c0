//! Space expressions: the named varieties of the catalog and the quotients,
//! products and differences built from them.
//!
//! Grammar (left-associative, all binary operators at one precedence):
//!
//! ```text
//! expr  := term (('/' | '*' | '-') term)*
//! term  := NAME '(' args ')' | 'Gm' | 'Proj' '(' expr ')' | '(' expr ')'
//! args  := int (',' int)*            SLrep uses  n ';' a1 ',' ... ',' a_{n-1}
//!                                     GLmodO takes an optional trailing '+' or '-'
//! ```
//!
//! `/` is a class quotient (exact division attempt), `*` a product and `-`
//! a class difference. Error columns are 1-based.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrthSign {
    Plus,
    Minus,
}

impl OrthSign {
    pub fn symbol(self) -> char {
        match self {
            OrthSign::Plus => '+',
            OrthSign::Minus => '-',
        }
    }
}

/// A catalogued variety. Sizes of symplectic and alternating objects are
/// given as the (even) dimension of the underlying space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Atom {
    GL(u32),
    SL(u32),
    Sp(u32),
    GSp(u32),
    Gm,
    Affine(u32),
    Proj(u32),
    /// `n x n` matrices of rank exactly `r`.
    MatRank { n: u32, r: u32 },
    /// Projective hypersurface of singular `n x n` matrices.
    Det(u32),
    /// Alternating forms on a `two_n`-space of rank exactly `2k`.
    AltRank { two_n: u32, k: u32 },
    /// Projective Pfaffian hypersurface of degenerate alternating forms.
    Pf(u32),
    /// `Sp(2n) / (Sp(2p) x Sp(2n - 2p))`.
    XSp { p: u32, n: u32 },
    /// `Sp(2n) / GL(n)`.
    LSp(u32),
    /// `GL(2n) / Sp(2n)`: nondegenerate alternating forms.
    B(u32),
    /// `GL(2n) / GSp(2n)`: projective classes of nondegenerate alternating forms.
    PAlt(u32),
    /// `GL(N) / SL(n)` for the irreducible representation with the given
    /// highest-weight coordinates, `N` its dimension.
    SLrep { n: u32, weights: Vec<u32> },
    /// `GL(n) / O(n)`; even `n` carries the isometry type.
    GLmodO { n: u32, sign: Option<OrthSign> },
    /// Incidence variety `{(Q, [v]) : Qv = 0}` over projective symmetric forms.
    Inc(u32),
    /// Projective hypersurface of singular symmetric `n x n` forms.
    Y(u32),
    /// Projective closure of symmetric forms of rank at most `r`.
    Sbar { n: u32, r: u32 },
    /// Affine quadric `x_0^2 + ... + x_m^2 = 1`.
    Sphere(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SpaceExpr {
    Atom(Atom),
    Quotient(Box<SpaceExpr>, Box<SpaceExpr>),
    Product(Box<SpaceExpr>, Box<SpaceExpr>),
    Difference(Box<SpaceExpr>, Box<SpaceExpr>),
    /// `(X - 0) / G_m` for an affine cone `X`.
    Projectivize(Box<SpaceExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("parse error at column {column}: expected {}, found {found}", expected.join(" or "))]
    Syntax { column: usize, expected: Vec<String>, found: String },
    #[error("invalid parameters at column {column}: {message}")]
    InvalidParameter { column: usize, message: String },
}

impl SpaceError {
    pub fn column(&self) -> usize {
        match self {
            SpaceError::Syntax { column, .. } | SpaceError::InvalidParameter { column, .. } => *column,
        }
    }
}

pub const ATOM_NAMES: &[&str] = &[
    "GL", "SL", "Sp", "GSp", "Gm", "A", "P", "MatRank", "Det", "AltRank", "Pf", "XSp", "LSp", "B", "PAlt",
    "SLrep", "GLmodO", "Inc", "Y", "Sbar", "Sphere", "Proj",
];

impl Atom {
    /// Checks the per-atom parameter rules.
    pub fn validate(&self) -> Result<(), String> {
        let even = |x: u32, what: &str| {
            if x == 0 || !x.is_multiple_of(2) {
                Err(format!("{what} needs a positive even size, got {x}"))
            } else {
                Ok(())
            }
        };
        match self {
            Atom::GL(n) | Atom::SL(n) if *n == 0 => Err("group size must be positive".into()),
            Atom::Sp(n) => even(*n, "Sp"),
            Atom::GSp(n) => even(*n, "GSp"),
            Atom::MatRank { n, r } if *n == 0 || r > n => Err(format!("MatRank needs 0 <= r <= n, n >= 1 (got n={n}, r={r})")),
            Atom::Det(n) if *n < 2 => Err("Det needs n >= 2".into()),
            Atom::AltRank { two_n, k } => {
                even(*two_n, "AltRank")?;
                if 2 * k > *two_n {
                    return Err(format!("AltRank needs 2k <= 2n (got 2n={two_n}, k={k})"));
                }
                Ok(())
            }
            Atom::Pf(two_n) => {
                even(*two_n, "Pf")?;
                if *two_n < 4 {
                    return Err("Pf needs 2n >= 4".into());
                }
                Ok(())
            }
            Atom::XSp { p, n } if *n == 0 || p > n => Err(format!("XSp needs 0 <= p <= n, n >= 1 (got p={p}, n={n})")),
            Atom::LSp(n) if *n == 0 => Err("LSp needs n >= 1".into()),
            Atom::B(n) => even(*n, "B"),
            Atom::PAlt(n) => even(*n, "PAlt"),
            Atom::SLrep { n, weights } => {
                if *n < 2 {
                    return Err("SLrep needs n >= 2".into());
                }
                if weights.len() != (*n - 1) as usize {
                    return Err(format!("SLrep({n};...) needs {} weight coordinates, got {}", n - 1, weights.len()));
                }
                Ok(())
            }
            Atom::GLmodO { n, sign } => {
                if *n == 0 {
                    return Err("GLmodO needs n >= 1".into());
                }
                match (n % 2 == 0, sign) {
                    (true, None) => Err(format!("GLmodO({n}) needs a type '+' or '-' for even n")),
                    (false, Some(_)) => Err(format!("GLmodO({n}) takes no type for odd n")),
                    _ => Ok(()),
                }
            }
            Atom::Inc(n) | Atom::Y(n) if *n < 2 => Err("needs n >= 2".into()),
            Atom::Sbar { n, r } if *n == 0 || r > n => Err(format!("Sbar needs 0 <= r <= n, n >= 1 (got n={n}, r={r})")),
            Atom::Sphere(m) if *m > 5 => Err(format!("Sphere needs m <= 5, got {m}")),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::GL(n) => write!(f, "GL({n})"),
            Atom::SL(n) => write!(f, "SL({n})"),
            Atom::Sp(n) => write!(f, "Sp({n})"),
            Atom::GSp(n) => write!(f, "GSp({n})"),
            Atom::Gm => write!(f, "Gm"),
            Atom::Affine(n) => write!(f, "A({n})"),
            Atom::Proj(n) => write!(f, "P({n})"),
            Atom::MatRank { n, r } => write!(f, "MatRank({n},{r})"),
            Atom::Det(n) => write!(f, "Det({n})"),
            Atom::AltRank { two_n, k } => write!(f, "AltRank({two_n},{k})"),
            Atom::Pf(n) => write!(f, "Pf({n})"),
            Atom::XSp { p, n } => write!(f, "XSp({p},{n})"),
            Atom::LSp(n) => write!(f, "LSp({n})"),
            Atom::B(n) => write!(f, "B({n})"),
            Atom::PAlt(n) => write!(f, "PAlt({n})"),
            Atom::SLrep { n, weights } => {
                let w: Vec<String> = weights.iter().map(|a| a.to_string()).collect();
                write!(f, "SLrep({n};{})", w.join(","))
            }
            Atom::GLmodO { n, sign: None } => write!(f, "GLmodO({n})"),
            Atom::GLmodO { n, sign: Some(s) } => write!(f, "GLmodO({n},{})", s.symbol()),
            Atom::Inc(n) => write!(f, "Inc({n})"),
            Atom::Y(n) => write!(f, "Y({n})"),
            Atom::Sbar { n, r } => write!(f, "Sbar({n},{r})"),
            Atom::Sphere(m) => write!(f, "Sphere({m})"),
        }
    }
}

impl SpaceExpr {
    pub fn atom(a: Atom) -> Self {
        SpaceExpr::Atom(a)
    }

    pub fn quotient(a: SpaceExpr, b: SpaceExpr) -> Self {
        SpaceExpr::Quotient(Box::new(a), Box::new(b))
    }

    pub fn product(a: SpaceExpr, b: SpaceExpr) -> Self {
        SpaceExpr::Product(Box::new(a), Box::new(b))
    }

    pub fn difference(a: SpaceExpr, b: SpaceExpr) -> Self {
        SpaceExpr::Difference(Box::new(a), Box::new(b))
    }

    pub fn as_atom(&self) -> Option<&Atom> {
        match self {
            SpaceExpr::Atom(a) => Some(a),
            _ => None,
        }
    }

    /// Canonical text; `parse(render(e)) == e` for every parsed `e`.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl From<Atom> for SpaceExpr {
    fn from(a: Atom) -> Self {
        SpaceExpr::Atom(a)
    }
}

impl fmt::Display for SpaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let binary = |f: &mut fmt::Formatter<'_>, a: &SpaceExpr, op: char, b: &SpaceExpr| -> fmt::Result {
            write!(f, "{a}{op}")?;
            // the grammar is left-associative, so a compound right operand needs parentheses
            match b {
                SpaceExpr::Atom(_) | SpaceExpr::Projectivize(_) => write!(f, "{b}"),
                _ => write!(f, "({b})"),
            }
        };
        match self {
            SpaceExpr::Atom(a) => write!(f, "{a}"),
            SpaceExpr::Quotient(a, b) => binary(f, a, '/', b),
            SpaceExpr::Product(a, b) => binary(f, a, '*', b),
            SpaceExpr::Difference(a, b) => binary(f, a, '-', b),
            SpaceExpr::Projectivize(e) => write!(f, "Proj({e})"),
        }
    }
}

pub fn parse_space(text: &str) -> Result<SpaceExpr, SpaceError> {
    let mut parser = Parser { src: text.as_bytes(), pos: 0 };
    let expr = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(parser.syntax(&["'/'", "'*'", "'-'", "end of input"]));
    }
    Ok(expr)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn found(&self) -> String {
        match self.src.get(self.pos) {
            None => "end of input".into(),
            Some(&c) => format!("'{}'", c as char),
        }
    }

    fn syntax(&self, expected: &[&str]) -> SpaceError {
        SpaceError::Syntax {
            column: self.pos + 1,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.found(),
        }
    }

    fn expect(&mut self, c: u8, expected: &[&str]) -> Result<(), SpaceError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(expected))
        }
    }

    fn expr(&mut self) -> Result<SpaceExpr, SpaceError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(c @ (b'/' | b'*' | b'-')) => c,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = match op {
                b'/' => SpaceExpr::quotient(lhs, rhs),
                b'*' => SpaceExpr::product(lhs, rhs),
                _ => SpaceExpr::difference(lhs, rhs),
            };
        }
    }

    fn ident(&mut self) -> Option<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            // identifiers are a letter followed by letters; digits belong to arguments
            if self.src[self.pos].is_ascii_digit() {
                break;
            }
            self.pos += 1;
        }
        (self.pos > start).then(|| (start, String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()))
    }

    fn int(&mut self) -> Result<u32, SpaceError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.syntax(&["integer"]));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| SpaceError::InvalidParameter { column: start + 1, message: "integer too large".into() })
    }

    fn term(&mut self) -> Result<SpaceExpr, SpaceError> {
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let e = self.expr()?;
            self.expect(b')', &["')'", "'/'", "'*'", "'-'"])?;
            return Ok(e);
        }
        let Some((start, name)) = self.ident() else {
            return Err(self.syntax(&["atom name", "'('"]));
        };
        let column = start + 1;
        if name == "Gm" {
            return Ok(SpaceExpr::Atom(Atom::Gm));
        }
        if name == "Proj" {
            self.expect(b'(', &["'('"])?;
            let inner = self.expr()?;
            self.expect(b')', &["')'", "'/'", "'*'", "'-'"])?;
            return Ok(SpaceExpr::Projectivize(Box::new(inner)));
        }
        if !ATOM_NAMES.contains(&name.as_str()) {
            self.pos = start;
            return Err(SpaceError::Syntax {
                column,
                expected: vec!["atom name".into()],
                found: format!("'{name}'"),
            });
        }
        self.expect(b'(', &["'('"])?;
        let atom = match name.as_str() {
            "SLrep" => {
                let n = self.int()?;
                self.expect(b';', &["';'"])?;
                let mut weights = vec![self.int()?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    weights.push(self.int()?);
                }
                self.expect(b')', &["','", "')'"])?;
                Atom::SLrep { n, weights }
            }
            "GLmodO" => {
                let n = self.int()?;
                let sign = if self.peek() == Some(b',') {
                    self.pos += 1;
                    match self.peek() {
                        Some(b'+') => Some(OrthSign::Plus),
                        Some(b'-') => Some(OrthSign::Minus),
                        _ => return Err(self.syntax(&["'+'", "'-'"])),
                    }
                } else {
                    None
                };
                if sign.is_some() {
                    self.pos += 1;
                }
                self.expect(b')', &["')'"])?;
                Atom::GLmodO { n, sign }
            }
            _ => {
                let arity = match name.as_str() {
                    "MatRank" | "AltRank" | "XSp" | "Sbar" => 2,
                    _ => 1,
                };
                let mut args = vec![self.int()?];
                for _ in 1..arity {
                    self.expect(b',', &["','"])?;
                    args.push(self.int()?);
                }
                self.expect(b')', &["')'"])?;
                build_atom(&name, &args)
            }
        };
        atom.validate().map_err(|message| SpaceError::InvalidParameter { column, message })?;
        Ok(SpaceExpr::Atom(atom))
    }
}

fn build_atom(name: &str, a: &[u32]) -> Atom {
    match name {
        "GL" => Atom::GL(a[0]),
        "SL" => Atom::SL(a[0]),
        "Sp" => Atom::Sp(a[0]),
        "GSp" => Atom::GSp(a[0]),
        "A" => Atom::Affine(a[0]),
        "P" => Atom::Proj(a[0]),
        "MatRank" => Atom::MatRank { n: a[0], r: a[1] },
        "Det" => Atom::Det(a[0]),
        "AltRank" => Atom::AltRank { two_n: a[0], k: a[1] },
        "Pf" => Atom::Pf(a[0]),
        "XSp" => Atom::XSp { p: a[0], n: a[1] },
        "LSp" => Atom::LSp(a[0]),
        "B" => Atom::B(a[0]),
        "PAlt" => Atom::PAlt(a[0]),
        "Inc" => Atom::Inc(a[0]),
        "Y" => Atom::Y(a[0]),
        "Sbar" => Atom::Sbar { n: a[0], r: a[1] },
        "Sphere" => Atom::Sphere(a[0]),
        other => unreachable!("unhandled atom {other}"),
    }
}
