//! Discriminant modules `theta L* / L` and their normalized forms.

use serde::Serialize;

use crate::eisenstein::{Eis, QEis};
use crate::error::{Error, Result};
use crate::lattice::{HermitianLattice, RationalVector};
use crate::matrix::smith_normal_form;

/// The finite E-module `theta L* / L` with its pairing into `Q(w) / theta E`.
#[derive(Clone, Debug)]
pub struct DiscriminantModule {
    /// Non-unit elementary divisors, canonical associates.
    pub divisors: Vec<Eis>,
    /// Generator `i` has annihilator `divisors[i]`.
    pub generators: Vec<RationalVector>,
    pub order: u64,
    /// Pairing values, reduced to canonical representatives mod `theta E`.
    pub pairing: Vec<Vec<QEis>>,
}

impl DiscriminantModule {
    pub fn compute(l: &HermitianLattice) -> Result<Self> {
        let n = l.rank();
        let a = l.gram().map(|x| x.div_exact(&Eis::THETA).expect("Gram entries lie in theta E"));
        let s = smith_normal_form(&a);
        if s.rank() < n {
            return Err(Error::InvalidGram("degenerate form has no discriminant module".into()));
        }
        let mut divisors = Vec::new();
        let mut generators = Vec::new();
        let mut order = 1u64;
        for (i, d) in s.diag.iter().enumerate() {
            if d.is_unit() {
                continue;
            }
            order *= d.norm() as u64;
            let g: RationalVector = s.p.row(i).into_iter().map(|x| QEis::ratio(x, *d)).collect();
            divisors.push(*d);
            generators.push(g);
        }
        let pairing = generators
            .iter()
            .map(|x| generators.iter().map(|y| l.inner_q(x, y).reduce_mod_theta()).collect())
            .collect();
        Ok(DiscriminantModule { divisors, generators, order, pairing })
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }
}

/// F4 = E / 2E, stored as bits `a + 2b` for `a + b w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct F4(pub u8);

impl F4 {
    pub const ZERO: F4 = F4(0);
    pub const ONE: F4 = F4(1);

    pub fn all() -> [F4; 4] {
        [F4(0), F4(1), F4(2), F4(3)]
    }

    pub fn from_eis(x: Eis) -> F4 {
        F4((x.a.rem_euclid(2) + 2 * x.b.rem_euclid(2)) as u8)
    }

    pub fn lift(self) -> Eis {
        Eis::new((self.0 & 1) as i64, (self.0 >> 1) as i64)
    }

    pub fn add(self, o: F4) -> F4 {
        F4(self.0 ^ o.0)
    }

    pub fn mul(self, o: F4) -> F4 {
        F4::from_eis(self.lift() * o.lift())
    }

    pub fn conj(self) -> F4 {
        F4::from_eis(self.lift().conj())
    }

    pub fn inv(self) -> F4 {
        assert!(self.0 != 0);
        *F4::all().iter().find(|y| self.mul(**y) == F4::ONE).unwrap()
    }
}

/// A discriminant form of shape `F3^a (+) F4^b`, with a diagonal F3 form and the standard
/// Hermitian form `sum x_i conj(x_i)` on F4^b.
#[derive(Clone, Debug)]
pub struct DiscForm {
    /// Diagonal values `+1` or `-1` of the F3 part.
    pub f3_signs: Vec<i8>,
    pub f3_basis: Vec<RationalVector>,
    pub f4_basis: Vec<RationalVector>,
}

impl DiscForm {
    pub fn f4_rank(&self) -> usize {
        self.f4_basis.len()
    }

    pub fn order(&self) -> u64 {
        3u64.pow(self.f3_signs.len() as u32) * 4u64.pow(self.f4_rank() as u32)
    }

    /// Readable form such as `x1^2 - x2^2 + N(y1)`.
    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (i, s) in self.f3_signs.iter().enumerate() {
            let sign = if *s > 0 { "+" } else { "-" };
            parts.push(format!("{sign} x{}^2", i + 1));
        }
        for i in 0..self.f4_rank() {
            parts.push(format!("+ N(y{})", i + 1));
        }
        if parts.is_empty() {
            return "0".into();
        }
        let s = parts.join(" ");
        s.strip_prefix("+ ").map(str::to_string).unwrap_or(s)
    }
}

fn combine(gens: &[RationalVector], coeffs: &[Eis]) -> RationalVector {
    let n = gens[0].len();
    let mut out = vec![QEis::zero(); n];
    for (g, c) in gens.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for k in 0..n {
            out[k] = out[k] + g[k].mul_eis(*c);
        }
    }
    out
}

/// Normalizes the discriminant form of `l` into the shape `F3^a (+) F4^b`.
pub fn disc_form(l: &HermitianLattice) -> Result<DiscForm> {
    let dm = l.discriminant_module()?;
    let mut g3: Vec<RationalVector> = Vec::new();
    let mut g4: Vec<RationalVector> = Vec::new();
    for (d, g) in dm.divisors.iter().zip(&dm.generators) {
        let v = d.theta_valuation().unwrap();
        let two_part = d.div_exact(&Eis::THETA.pow(v)).unwrap();
        let w = if two_part.is_unit() {
            0
        } else if two_part.div_exact(&Eis::from(2)).is_some_and(|r| r.is_unit()) {
            1
        } else {
            return Err(Error::UnsupportedDiscriminant(format!("elementary divisor {d}")));
        };
        if v > 1 {
            return Err(Error::UnsupportedDiscriminant(format!("elementary divisor {d}")));
        }
        match (v, w) {
            (1, 0) => g3.push(g.clone()),
            (0, 1) => g4.push(g.clone()),
            (1, 1) => {
                g3.push(g.iter().map(|x| x.mul_eis(Eis::from(2))).collect());
                g4.push(g.iter().map(|x| x.mul_eis(Eis::THETA)).collect());
            }
            _ => unreachable!(),
        }
    }

    // F3 part: the pairing of theta-torsion elements lies in E, reduce mod theta
    let h3 = |x: &RationalVector, y: &RationalVector| -> Result<u8> {
        let v = l.inner_q(x, y);
        let e = v.as_eis().ok_or_else(|| Error::UnsupportedDiscriminant("non-integral F3 pairing".into()))?;
        Ok(e.mod_theta())
    };
    let mut f3_signs = Vec::new();
    let mut f3_basis = Vec::new();
    let mut rest = g3;
    while !rest.is_empty() {
        // pick a vector with nonzero square, trying pairwise sums if needed
        let mut pick = None;
        for (i, x) in rest.iter().enumerate() {
            if h3(x, x)? != 0 {
                pick = Some((i, x.clone()));
                break;
            }
        }
        if pick.is_none() {
            'outer: for i in 0..rest.len() {
                for j in i + 1..rest.len() {
                    let s = combine(&[rest[i].clone(), rest[j].clone()], &[Eis::ONE, Eis::ONE]);
                    if h3(&s, &s)? != 0 {
                        rest[i] = s.clone();
                        pick = Some((i, s));
                        break 'outer;
                    }
                }
            }
        }
        let Some((i, v)) = pick else {
            return Err(Error::UnsupportedDiscriminant("degenerate F3 part".into()));
        };
        rest.remove(i);
        let vv = h3(&v, &v)?;
        // vv^-1 = vv in F3
        for x in rest.iter_mut() {
            let c = (h3(x, &v)? as u32 * vv as u32 % 3) as i64;
            if c != 0 {
                *x = combine(&[x.clone(), v.clone()], &[Eis::ONE, Eis::from(-c)]);
            }
        }
        f3_signs.push(if vv == 1 { 1 } else { -1 });
        f3_basis.push(v);
    }

    // F4 part: (2 / theta) <x, y> lies in E, reduce mod 2
    let h4 = |x: &RationalVector, y: &RationalVector| -> Result<F4> {
        let v = l.inner_q(x, y);
        let s = QEis::new(v.num * (-Eis::THETA).scale(2), v.den * 3);
        let e = s.as_eis().ok_or_else(|| Error::UnsupportedDiscriminant("non-integral F4 pairing".into()))?;
        Ok(F4::from_eis(e))
    };
    let mut f4_basis = Vec::new();
    let mut rest = g4;
    while !rest.is_empty() {
        let mut pick = None;
        for (i, x) in rest.iter().enumerate() {
            if h4(x, x)? != F4::ZERO {
                pick = Some((i, x.clone()));
                break;
            }
        }
        if pick.is_none() {
            'outer4: for i in 0..rest.len() {
                for j in i + 1..rest.len() {
                    for c in F4::all().into_iter().skip(1) {
                        let s = combine(&[rest[i].clone(), rest[j].clone()], &[Eis::ONE, c.lift()]);
                        if h4(&s, &s)? != F4::ZERO {
                            rest[i] = s.clone();
                            pick = Some((i, s));
                            break 'outer4;
                        }
                    }
                }
            }
        }
        let Some((i, v)) = pick else {
            return Err(Error::UnsupportedDiscriminant("degenerate F4 part".into()));
        };
        rest.remove(i);
        for x in rest.iter_mut() {
            let c = h4(x, &v)?;
            if c != F4::ZERO {
                *x = combine(&[x.clone(), v.clone()], &[Eis::ONE, -c.lift()]);
            }
        }
        f4_basis.push(v);
    }
    Ok(DiscForm { f3_signs, f3_basis, f4_basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn f4_field() {
        for x in F4::all() {
            for y in F4::all() {
                assert_eq!(x.mul(y), y.mul(x));
                assert_eq!(x.add(y).conj(), x.conj().add(y.conj()));
            }
            if x != F4::ZERO {
                assert_eq!(x.mul(x.inv()), F4::ONE);
                assert_eq!(x.mul(x.conj()), F4::ONE);
            }
        }
    }

    #[test]
    fn small_chain_forms() {
        let f1 = disc_form(&zoo::l(1)).unwrap();
        assert_eq!((f1.f3_signs.clone(), f1.f4_rank()), (vec![1], 0));
        let f2 = disc_form(&zoo::l(2)).unwrap();
        assert_eq!((f2.f3_signs.len(), f2.f4_rank()), (0, 1));
        let f3 = disc_form(&zoo::l(3)).unwrap();
        assert_eq!((f3.f3_signs.clone(), f3.f4_rank()), (vec![-1], 0));
        let f4 = disc_form(&zoo::l(4)).unwrap();
        assert_eq!(f4.order(), 1);
    }

    #[test]
    fn l2_generator_is_half_sum() {
        let l2 = zoo::l(2);
        let dm = l2.discriminant_module().unwrap();
        assert_eq!(dm.order, 4);
        // (r1 + r2) / 2 pairs to 3/2 with itself
        let g = vec![QEis::new(Eis::ONE, 2), QEis::new(Eis::ONE, 2)];
        assert_eq!(l2.inner_q(&g, &g), QEis::new(Eis::from(3), 2));
    }

    #[test]
    fn degenerate_rejected() {
        assert!(disc_form(&zoo::l(5)).is_err());
    }
}
