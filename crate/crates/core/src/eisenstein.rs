//! The ring E = Z[w] with w^2 + w + 1 = 0, written in the basis {1, w}.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::Error;

#[inline]
fn ck(v: Option<i64>) -> i64 {
    v.expect("Eisenstein coefficient overflowed i64")
}

/// An element `a + b*w` of the Eisenstein integers.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct Eis {
    pub a: i64,
    pub b: i64,
}

impl From<[i64; 2]> for Eis {
    fn from(v: [i64; 2]) -> Self {
        Eis::new(v[0], v[1])
    }
}

impl From<Eis> for [i64; 2] {
    fn from(x: Eis) -> Self {
        [x.a, x.b]
    }
}

impl From<i64> for Eis {
    fn from(a: i64) -> Self {
        Eis::new(a, 0)
    }
}

impl Eis {
    pub const ZERO: Eis = Eis { a: 0, b: 0 };
    pub const ONE: Eis = Eis { a: 1, b: 0 };
    pub const W: Eis = Eis { a: 0, b: 1 };
    /// `w^2 = -1 - w`, the conjugate of `w`.
    pub const WBAR: Eis = Eis { a: -1, b: -1 };
    /// `1 + 2w`, a square root of -3.
    pub const THETA: Eis = Eis { a: 1, b: 2 };

    pub const fn new(a: i64, b: i64) -> Self {
        Eis { a, b }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn conj(&self) -> Eis {
        Eis::new(ck(self.a.checked_sub(self.b)), ck(self.b.checked_neg()))
    }

    /// `a^2 - ab + b^2`, the field norm.
    pub fn norm(&self) -> i64 {
        let a = self.a as i128;
        let b = self.b as i128;
        i64::try_from(a * a - a * b + b * b).expect("Eisenstein norm overflowed i64")
    }

    /// Returns `Some(r)` when `self` is a rational integer.
    pub fn as_int(&self) -> Option<i64> {
        (self.b == 0).then_some(self.a)
    }

    pub fn is_unit(&self) -> bool {
        self.norm() == 1
    }

    /// The six units `w^k` and `-w^k`, in a fixed order.
    pub fn units() -> [Eis; 6] {
        [Eis::new(1, 0), Eis::new(0, 1), Eis::new(-1, -1), Eis::new(-1, 0), Eis::new(0, -1), Eis::new(1, 1)]
    }

    pub fn scale(&self, k: i64) -> Eis {
        Eis::new(ck(self.a.checked_mul(k)), ck(self.b.checked_mul(k)))
    }

    pub fn pow(&self, mut e: u32) -> Eis {
        let mut base = *self;
        let mut acc = Eis::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder with the quotient rounded to the nearest lattice point,
    /// so that `norm(r) < norm(y)`.
    pub fn div_rem(&self, y: &Eis) -> Result<(Eis, Eis), Error> {
        if y.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = y.norm() as i128;
        let p = *self * y.conj();
        let qa = round_div(p.a as i128, n);
        let qb = round_div(p.b as i128, n);
        let q = Eis::new(qa, qb);
        let r = *self - q * *y;
        debug_assert!(r.norm() < y.norm());
        Ok((q, r))
    }

    /// Exact division; `None` when `y` does not divide `self`.
    pub fn div_exact(&self, y: &Eis) -> Option<Eis> {
        if y.is_zero() {
            return None;
        }
        let n = y.norm();
        let p = *self * y.conj();
        (p.a % n == 0 && p.b % n == 0).then(|| Eis::new(p.a / n, p.b / n))
    }

    pub fn divides(&self, x: &Eis) -> bool {
        if self.is_zero() {
            return x.is_zero();
        }
        x.div_exact(self).is_some()
    }

    /// Divisibility by `theta`: holds exactly when `a + b` is a multiple of 3.
    pub fn is_theta_divisible(&self) -> bool {
        (self.a as i128 + self.b as i128).rem_euclid(3) == 0
    }

    /// Largest `k` with `theta^k | self`; `None` for zero.
    pub fn theta_valuation(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let mut x = *self;
        let mut k = 0;
        while x.is_theta_divisible() {
            x = x.div_exact(&Eis::THETA).unwrap();
            k += 1;
        }
        Some(k)
    }

    /// Euclidean gcd, normalized to its canonical associate.
    pub fn gcd(&self, other: &Eis) -> Eis {
        let mut x = *self;
        let mut y = *other;
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y).unwrap();
            x = y;
            y = r;
        }
        x.canonical_associate().0
    }

    /// The associate with `a > 0, b >= 0` (or zero), with the unit `u` such that `u * self` is it.
    pub fn canonical_associate(&self) -> (Eis, Eis) {
        if self.is_zero() {
            return (*self, Eis::ONE);
        }
        for u in Eis::units() {
            let c = u * *self;
            if c.a > 0 && c.b >= 0 {
                return (c, u);
            }
        }
        unreachable!("every nonzero element has an associate in the first sextant")
    }

    /// Residue modulo `theta` as an element of F3 (`w` maps to 1).
    pub fn mod_theta(&self) -> u8 {
        (self.a as i128 + self.b as i128).rem_euclid(3) as u8
    }

    /// Lexicographic order by norm first, used for pivot choices.
    pub fn size_key(&self) -> (i64, i64, i64) {
        (self.norm(), -self.a, -self.b)
    }
}

fn round_div(p: i128, n: i128) -> i64 {
    // nearest integer to p/n, ties rounded up
    let q = Integer::div_floor(&(2 * p + n), &(2 * n));
    i64::try_from(q).expect("quotient overflowed i64")
}

impl Add for Eis {
    type Output = Eis;
    fn add(self, o: Eis) -> Eis {
        Eis::new(ck(self.a.checked_add(o.a)), ck(self.b.checked_add(o.b)))
    }
}

impl Sub for Eis {
    type Output = Eis;
    fn sub(self, o: Eis) -> Eis {
        Eis::new(ck(self.a.checked_sub(o.a)), ck(self.b.checked_sub(o.b)))
    }
}

impl Neg for Eis {
    type Output = Eis;
    fn neg(self) -> Eis {
        Eis::new(ck(self.a.checked_neg()), ck(self.b.checked_neg()))
    }
}

impl Mul for Eis {
    type Output = Eis;
    fn mul(self, o: Eis) -> Eis {
        // (a + bw)(c + dw) = ac - bd + (ad + bc - bd) w
        let (a, b, c, d) = (self.a as i128, self.b as i128, o.a as i128, o.b as i128);
        let re = a * c - b * d;
        let im = a * d + b * c - b * d;
        Eis::new(
            i64::try_from(re).expect("Eisenstein product overflowed i64"),
            i64::try_from(im).expect("Eisenstein product overflowed i64"),
        )
    }
}

impl AddAssign for Eis {
    fn add_assign(&mut self, o: Eis) {
        *self = *self + o;
    }
}

impl SubAssign for Eis {
    fn sub_assign(&mut self, o: Eis) {
        *self = *self - o;
    }
}

impl std::iter::Sum for Eis {
    fn sum<I: Iterator<Item = Eis>>(iter: I) -> Eis {
        iter.fold(Eis::ZERO, |s, x| s + x)
    }
}

impl fmt::Display for Eis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = match self.b {
            1 => "w".to_string(),
            -1 => "-w".to_string(),
            b => format!("{b}*w"),
        };
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, _) => write!(f, "{w}"),
            (a, b) if b < 0 => write!(f, "{a}{w}"),
            (a, _) => write!(f, "{a}+{w}"),
        }
    }
}

impl fmt::Debug for Eis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Eis {
    type Err = Error;

    /// Accepts `a`, `b*w`, `w`, `a+b*w`, `a-w` and `t` (for `1+2w`).
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse { input: s.to_string(), position: 0, message: "expected a+b*w".into() };
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad());
        }
        if t == "t" {
            return Ok(Eis::THETA);
        }
        if t == "-t" {
            return Ok(-Eis::THETA);
        }
        // split into signed terms
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, c) in t.chars().enumerate() {
            if (c == '+' || c == '-') && i > 0 {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(c);
        }
        terms.push(cur);
        let mut out = Eis::ZERO;
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(r) => (-1, r),
                None => (1, term.strip_prefix('+').unwrap_or(&term)),
            };
            if let Some(coef) = body.strip_suffix('w') {
                let coef = coef.strip_suffix('*').unwrap_or(coef);
                let k: i64 = if coef.is_empty() { 1 } else { coef.parse().map_err(|_| bad())? };
                out += Eis::new(0, sign * k);
            } else {
                let k: i64 = body.parse().map_err(|_| bad())?;
                out += Eis::new(sign * k, 0);
            }
        }
        Ok(out)
    }
}

/// An element of Q(w), stored as `num / den` with `den > 0` and no common factor.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct QEis {
    pub num: Eis,
    pub den: i64,
}

impl QEis {
    pub fn new(num: Eis, den: i64) -> QEis {
        assert!(den != 0, "zero denominator");
        let g = num.a.gcd(&num.b).gcd(&den);
        let s = if den < 0 { -1 } else { 1 };
        QEis { num: Eis::new(num.a / g * s, num.b / g * s), den: den / g * s }
    }

    pub fn int(x: Eis) -> QEis {
        QEis { num: x, den: 1 }
    }

    pub fn zero() -> QEis {
        QEis::int(Eis::ZERO)
    }

    /// `x / y` for Eisenstein integers.
    pub fn ratio(x: Eis, y: Eis) -> QEis {
        QEis::new(x * y.conj(), y.norm())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_eis(&self) -> Option<Eis> {
        (self.den == 1).then_some(self.num)
    }

    pub fn conj(&self) -> QEis {
        QEis { num: self.num.conj(), den: self.den }
    }

    pub fn mul_eis(&self, x: Eis) -> QEis {
        QEis::new(self.num * x, self.den)
    }

    /// Canonical representative modulo `theta*E`, returned as fractional coordinates
    /// `(s, t)` with `self = theta (s + t w)` mod `theta*E`, `0 <= s, t < 1`.
    pub fn mod_theta_lattice(&self) -> (Frac, Frac) {
        // self / theta = -self * theta / 3
        let w = -(self.num * Eis::THETA);
        let d = self.den.checked_mul(3).expect("overflow");
        (Frac::new(w.a, d).fract(), Frac::new(w.b, d).fract())
    }

    /// The canonical representative of `self + theta*E`.
    pub fn reduce_mod_theta(&self) -> QEis {
        let (s, t) = self.mod_theta_lattice();
        let d = s.den.lcm(&t.den);
        let st = Eis::new(s.num * (d / s.den), t.num * (d / t.den));
        QEis::new(st * Eis::THETA, d)
    }

    /// True when `self` lies in `theta*E`.
    pub fn in_theta_lattice(&self) -> bool {
        let (s, t) = self.mod_theta_lattice();
        s.num == 0 && t.num == 0
    }
}

impl Add for QEis {
    type Output = QEis;
    fn add(self, o: QEis) -> QEis {
        QEis::new(self.num.scale(o.den) + o.num.scale(self.den), ck(self.den.checked_mul(o.den)))
    }
}

impl Sub for QEis {
    type Output = QEis;
    fn sub(self, o: QEis) -> QEis {
        self + (-o)
    }
}

impl Neg for QEis {
    type Output = QEis;
    fn neg(self) -> QEis {
        QEis { num: -self.num, den: self.den }
    }
}

impl Mul for QEis {
    type Output = QEis;
    fn mul(self, o: QEis) -> QEis {
        QEis::new(self.num * o.num, ck(self.den.checked_mul(o.den)))
    }
}

impl fmt::Display for QEis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}

/// A reduced rational number, only used for small canonical keys.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Frac {
    pub num: i64,
    pub den: i64,
}

impl Frac {
    pub fn new(num: i64, den: i64) -> Frac {
        let g = num.gcd(&den).max(1);
        let s = if den < 0 { -1 } else { 1 };
        Frac { num: num / g * s, den: den / g * s }
    }

    pub fn fract(&self) -> Frac {
        Frac::new(self.num.rem_euclid(self.den), self.den)
    }
}

impl PartialOrd for Frac {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Frac {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn omega_relations() {
        assert_eq!(Eis::W * Eis::W, Eis::new(-1, -1));
        assert_eq!(Eis::W * Eis::W * Eis::W, Eis::ONE);
        assert_eq!(Eis::W.conj(), Eis::WBAR);
        assert_eq!(Eis::THETA * Eis::THETA, Eis::from(-3));
        assert_eq!(Eis::THETA.conj(), -Eis::THETA);
        assert_eq!(Eis::new(2, 1).norm(), 3);
    }

    #[test]
    fn valuations() {
        assert_eq!(Eis::from(3).theta_valuation(), Some(2));
        assert_eq!(Eis::from(9).theta_valuation(), Some(4));
        assert_eq!(Eis::THETA.theta_valuation(), Some(1));
        assert_eq!(Eis::from(2).theta_valuation(), Some(0));
        assert_eq!(Eis::ZERO.theta_valuation(), None);
        assert_eq!(Eis::W.mod_theta(), 1);
    }

    #[test]
    fn div_by_zero() {
        assert!(matches!(Eis::ONE.div_rem(&Eis::ZERO), Err(Error::DivisionByZero)));
    }

    #[test]
    fn parse_and_print() {
        for s in ["3", "2*w", "1+2*w", "-1-w", "w", "-w", "2-3*w", "0"] {
            let x: Eis = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert_eq!("t".parse::<Eis>().unwrap(), Eis::THETA);
        assert_eq!("-w".parse::<Eis>().unwrap(), Eis::new(0, -1));
        assert_eq!("1 - w".parse::<Eis>().unwrap(), Eis::new(1, -1));
        assert!("1+x".parse::<Eis>().is_err());
    }

    #[test]
    fn theta_lattice_membership() {
        assert!(QEis::int(Eis::from(3)).in_theta_lattice());
        assert!(!QEis::int(Eis::ONE).in_theta_lattice());
        assert!(!QEis::new(Eis::from(3), 2).in_theta_lattice());
        assert!(QEis::new(Eis::from(6), 2).in_theta_lattice());
    }

    fn small() -> impl Strategy<Value = Eis> {
        (-1000i64..1000, -1000i64..1000).prop_map(|(a, b)| Eis::new(a, b))
    }

    // brute-force oracle: integer pair arithmetic in the basis {1, w}
    fn mul_oracle(x: Eis, y: Eis) -> Eis {
        // w^2 = -1 - w
        let c0 = x.a * y.a;
        let c1 = x.a * y.b + x.b * y.a;
        let c2 = x.b * y.b;
        Eis::new(c0 - c2, c1 - c2)
    }

    proptest! {
        #[test]
        fn ring_axioms(x in small(), y in small(), z in small()) {
            prop_assert_eq!(x * y, y * x);
            prop_assert_eq!((x * y) * z, x * (y * z));
            prop_assert_eq!(x * (y + z), x * y + x * z);
            prop_assert_eq!(x * y, mul_oracle(x, y));
        }

        #[test]
        fn norm_multiplicative(x in small(), y in small()) {
            prop_assert_eq!((x * y).norm(), x.norm() * y.norm());
            prop_assert_eq!(x * x.conj(), Eis::from(x.norm()));
            prop_assert_eq!((x * y).conj(), x.conj() * y.conj());
        }

        #[test]
        fn euclidean(x in small(), y in small()) {
            prop_assume!(!y.is_zero());
            let (q, r) = x.div_rem(&y).unwrap();
            prop_assert_eq!(q * y + r, x);
            prop_assert!(r.norm() < y.norm());
        }

        #[test]
        fn theta_divisibility_matches_division(x in small()) {
            prop_assert_eq!(x.is_theta_divisible(), x.div_exact(&Eis::THETA).is_some());
        }

        #[test]
        fn gcd_divides(x in small(), y in small()) {
            prop_assume!(!x.is_zero() || !y.is_zero());
            let g = x.gcd(&y);
            prop_assert!(g.divides(&x));
            prop_assert!(g.divides(&y));
        }
    }
}
