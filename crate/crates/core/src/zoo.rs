//! Named lattices and a small expression language for orthogonal sums.
//!
//! ```text
//! expr   := term ('+' term)*
//! term   := [INT ['*']] ATOM ['(' SCALAR ')']
//! ATOM   := L1 .. L14 | H | Ht
//! SCALAR := INT | '-' INT | 't' | '-t'
//! ```

use std::fmt;

use crate::eisenstein::Eis;
use crate::error::{Error, Result};
use crate::lattice::HermitianLattice;
use crate::matrix::EisMatrix;

/// The chain lattice `L_k`: diagonal 3, `theta` just above the diagonal.
pub fn l(k: usize) -> HermitianLattice {
    let mut g = EisMatrix::zeros(k, k);
    for i in 0..k {
        g[(i, i)] = Eis::from(3);
        if i + 1 < k {
            g[(i, i + 1)] = Eis::THETA;
            g[(i + 1, i)] = -Eis::THETA;
        }
    }
    HermitianLattice::new(g).expect("chain Gram matrix is valid")
}

/// The hyperbolic plane: isotropic `e, f` with `<e, f> = theta`.
pub fn h() -> HermitianLattice {
    HermitianLattice::from_rows(&[vec![Eis::ZERO, Eis::THETA], vec![-Eis::THETA, Eis::ZERO]]).unwrap()
}

/// `H(theta)`, with `<e, f> = -3`.
pub fn ht() -> HermitianLattice {
    h().rescale(Eis::THETA).unwrap()
}

/// `3 L4 + H`, rank 14, signature (13, 1).
pub fn l_a() -> HermitianLattice {
    make("3*L4 + H").unwrap()
}

/// `L1 + 2 L4 + H`, rank 11.
pub fn l_ct() -> HermitianLattice {
    make("L1 + 2*L4 + H").unwrap()
}

/// `L1 + L3 + L4 + H`.
pub fn l_k() -> HermitianLattice {
    make("L1 + L3 + L4 + H").unwrap()
}

/// `2 L4 + H`.
pub fn l_dm() -> HermitianLattice {
    make("2*L4 + H").unwrap()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    L(usize),
    H,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub mult: usize,
    pub atom: Atom,
    pub scalar: Eis,
}

impl Term {
    pub fn lattice(&self) -> Result<HermitianLattice> {
        let base = match self.atom {
            Atom::L(k) => l(k),
            Atom::H => h(),
        };
        if self.scalar == Eis::ONE {
            Ok(base)
        } else {
            base.rescale(self.scalar)
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mult != 1 {
            write!(f, "{}*", self.mult)?;
        }
        match self.atom {
            Atom::L(k) => write!(f, "L{k}")?,
            Atom::H => write!(f, "H")?,
        }
        if self.scalar == Eis::THETA {
            write!(f, "(t)")?;
        } else if self.scalar == -Eis::THETA {
            write!(f, "(-t)")?;
        } else if self.scalar != Eis::ONE {
            write!(f, "({})", self.scalar)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeExpr {
    pub terms: Vec<Term>,
}

impl fmt::Display for LatticeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl LatticeExpr {
    pub fn lattice(&self) -> Result<HermitianLattice> {
        let mut parts = Vec::new();
        for t in &self.terms {
            let l = t.lattice()?;
            for _ in 0..t.mult {
                parts.push(l.clone());
            }
        }
        let refs: Vec<&HermitianLattice> = parts.iter().collect();
        Ok(HermitianLattice::orthogonal_sum(&refs))
    }

    /// One entry per orthogonal summand, multiplicities expanded.
    pub fn summands(&self) -> Vec<Term> {
        self.terms.iter().flat_map(|t| std::iter::repeat_n(Term { mult: 1, ..*t }, t.mult)).collect()
    }
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: &str) -> Error {
        Error::Parse { input: self.src.to_string(), position: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn int(&mut self) -> Option<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        self.chars[start..self.pos].iter().collect::<String>().parse().ok()
    }

    fn term(&mut self) -> Result<Term> {
        let mult = match self.int() {
            Some(m) => {
                if self.peek() == Some('*') {
                    self.pos += 1;
                }
                m
            }
            None => 1,
        };
        if mult == 0 {
            return Err(self.err("multiplicity must be positive"));
        }
        let mut scalar = Eis::ONE;
        let atom = match self.peek() {
            Some('L') => {
                self.pos += 1;
                let at = self.pos;
                match self.int() {
                    Some(k) if (1..=14).contains(&k) => Atom::L(k),
                    _ => {
                        self.pos = at;
                        return Err(self.err("expected an index 1..14 after L"));
                    }
                }
            }
            Some('H') => {
                self.pos += 1;
                if self.chars.get(self.pos) == Some(&'t') {
                    self.pos += 1;
                    scalar = Eis::THETA;
                }
                Atom::H
            }
            _ => return Err(self.err("expected L1..L14, H or Ht")),
        };
        if self.peek() == Some('(') {
            self.pos += 1;
            let neg = if self.peek() == Some('-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let s = if self.peek() == Some('t') {
                self.pos += 1;
                Eis::THETA
            } else {
                match self.int() {
                    Some(k) => Eis::from(k as i64),
                    None => return Err(self.err("expected an integer or t")),
                }
            };
            if self.peek() != Some(')') {
                return Err(self.err("expected ')'"));
            }
            self.pos += 1;
            scalar = scalar * if neg { -s } else { s };
            if scalar.is_zero() {
                return Err(self.err("scalar must be nonzero"));
            }
        }
        Ok(Term { mult, atom, scalar })
    }

    fn expr(&mut self) -> Result<LatticeExpr> {
        let mut terms = vec![self.term()?];
        while let Some(c) = self.peek() {
            if c != '+' {
                return Err(self.err("expected '+'"));
            }
            self.pos += 1;
            terms.push(self.term()?);
        }
        Ok(LatticeExpr { terms })
    }
}

pub fn parse(src: &str) -> Result<LatticeExpr> {
    let mut p = Parser { src, chars: src.chars().collect(), pos: 0 };
    p.expr()
}

/// Builds the lattice described by an expression such as `L1 + 2*L4 + H`.
pub fn make(src: &str) -> Result<HermitianLattice> {
    parse(src)?.lattice()
}

/// Renders a parse error with a caret under the offending position.
pub fn caret(input: &str, position: usize) -> String {
    format!("{input}\n{}^", " ".repeat(position))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Signature;

    #[test]
    fn parse_roundtrip() {
        for s in ["L1", "3*L4 + H", "L1(2) + H", "L2 + L1(-1)", "2*L4 + H(t)"] {
            let e = parse(s).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e);
        }
        assert_eq!(parse("Ht").unwrap(), parse("H(t)").unwrap());
        assert_eq!(parse("2L4").unwrap(), parse("2*L4").unwrap());
    }

    #[test]
    fn parse_errors_have_positions() {
        match parse("L1 + X3") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 5),
            other => panic!("unexpected {other:?}"),
        }
        match parse("L15") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 1),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse("L1 +").is_err());
        assert!(parse("L1(0)").is_err());
    }

    #[test]
    fn chain_signatures() {
        assert_eq!(l(4).signature(), Signature::new(4, 0, 0));
        assert_eq!(l(5).signature(), Signature::new(4, 0, 1));
        assert_eq!(l_a().signature(), Signature::new(13, 1, 0));
        assert_eq!(l_a().rank(), 14);
        assert_eq!(h().signature(), Signature::new(1, 1, 0));
    }
}
