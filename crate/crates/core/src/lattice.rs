//! Hermitian E-lattices given by Gram matrices.
//!
//! The form is linear in the first argument: `<x, y> = sum x_i conj(y_j) gram[i][j]`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::disc::DiscriminantModule;
use crate::eisenstein::{Eis, QEis};
use crate::error::{Error, Result};
use crate::matrix::EisMatrix;
use crate::zlinalg;

/// Coordinates of a lattice vector in the lattice basis.
pub type LatticeVector = Vec<Eis>;

/// Coordinates in the rational span `L (x) Q(w)`.
pub type RationalVector = Vec<QEis>;

/// Signature of the Hermitian form: `(positive, negative, null)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub pos: usize,
    pub neg: usize,
    pub null: usize,
}

impl Signature {
    pub fn new(pos: usize, neg: usize, null: usize) -> Self {
        Signature { pos, neg, null }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianLattice {
    gram: EisMatrix,
}

impl HermitianLattice {
    /// Validates Hermitian symmetry, entries in `theta*E` and a diagonal in `3Z`.
    pub fn new(gram: EisMatrix) -> Result<Self> {
        if gram.rows != gram.cols {
            return Err(Error::InvalidGram("not square".into()));
        }
        for i in 0..gram.rows {
            for j in 0..gram.cols {
                let g = gram[(i, j)];
                if gram[(j, i)] != g.conj() {
                    return Err(Error::InvalidGram(format!("entry ({i},{j}) breaks Hermitian symmetry")));
                }
                if !g.is_theta_divisible() {
                    return Err(Error::InvalidGram(format!("entry ({i},{j}) = {g} is not in theta*E")));
                }
            }
            match gram[(i, i)].as_int() {
                Some(d) if d % 3 == 0 => {}
                _ => return Err(Error::InvalidGram(format!("diagonal entry {i} is not in 3Z"))),
            }
        }
        Ok(HermitianLattice { gram })
    }

    pub fn from_rows(rows: &[Vec<Eis>]) -> Result<Self> {
        Self::new(EisMatrix::from_rows(rows))
    }

    pub fn gram(&self) -> &EisMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows
    }

    pub fn inner(&self, x: &[Eis], y: &[Eis]) -> Eis {
        let n = self.rank();
        assert!(x.len() == n && y.len() == n, "vector length does not match the rank");
        let mut s = Eis::ZERO;
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            let mut row = Eis::ZERO;
            for j in 0..n {
                if !y[j].is_zero() {
                    row += self.gram[(i, j)] * y[j].conj();
                }
            }
            s += x[i] * row;
        }
        s
    }

    pub fn norm(&self, x: &[Eis]) -> i64 {
        self.inner(x, x).as_int().expect("norm of a lattice vector is real")
    }

    pub fn inner_q(&self, x: &[QEis], y: &[QEis]) -> QEis {
        let n = self.rank();
        let mut s = QEis::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() || self.gram[(i, j)].is_zero() {
                    continue;
                }
                s = s + x[i] * y[j].conj() * QEis::int(self.gram[(i, j)]);
            }
        }
        s
    }

    pub fn basis_vector(&self, i: usize) -> LatticeVector {
        let mut v = vec![Eis::ZERO; self.rank()];
        v[i] = Eis::ONE;
        v
    }

    /// `(<e_i, v>)_i` for the basis vectors `e_i`.
    pub fn pairings_with_basis(&self, v: &[Eis]) -> Vec<Eis> {
        (0..self.rank()).map(|i| self.inner(&self.basis_vector(i), v)).collect()
    }

    /// Gram matrix of the vectors given as the columns of `m`.
    pub fn gram_of(&self, m: &EisMatrix) -> EisMatrix {
        m.transpose().mul(&self.gram).unwrap().mul(&m.conj()).unwrap()
    }

    /// Gram matrix of a list of vectors.
    pub fn gram_of_vectors(&self, vs: &[LatticeVector]) -> EisMatrix {
        self.gram_of(&EisMatrix::from_cols(vs))
    }

    pub fn orthogonal_sum(parts: &[&HermitianLattice]) -> HermitianLattice {
        let grams: Vec<&EisMatrix> = parts.iter().map(|l| &l.gram).collect();
        HermitianLattice { gram: EisMatrix::block_diag(&grams) }
    }

    pub fn direct_sum(&self, other: &HermitianLattice) -> HermitianLattice {
        Self::orthogonal_sum(&[self, other])
    }

    /// Multiplies the form by `lambda`. For non-real `lambda` the entries above the diagonal
    /// are multiplied by `lambda` and the rest is filled in by Hermitian symmetry; this needs
    /// a zero diagonal.
    pub fn rescale(&self, lambda: Eis) -> Result<HermitianLattice> {
        let n = self.rank();
        let mut g = EisMatrix::zeros(n, n);
        for i in 0..n {
            let d = self.gram[(i, i)] * lambda;
            if d.as_int().is_none() {
                return Err(Error::InvalidGram(format!("rescaling by {lambda} makes the diagonal non-real")));
            }
            g[(i, i)] = d;
            for j in i + 1..n {
                g[(i, j)] = self.gram[(i, j)] * lambda;
                g[(j, i)] = g[(i, j)].conj();
            }
        }
        Self::new(g)
    }

    /// Gram matrix of the underlying Z-lattice, basis `(e_1, w e_1, ..., e_n, w e_n)`,
    /// with `x . y = (<x,y> + <y,x>) / 3`.
    pub fn z_gram(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let wp = [Eis::ONE, Eis::W];
        let mut z = vec![vec![0i64; 2 * n]; 2 * n];
        for i in 0..n {
            for j in 0..n {
                for s in 0..2 {
                    for t in 0..2 {
                        let v = wp[s] * wp[t].conj() * self.gram[(i, j)];
                        let tr = 2 * v.a - v.b;
                        debug_assert!(tr % 3 == 0);
                        z[2 * i + s][2 * j + t] = tr / 3;
                    }
                }
            }
        }
        z
    }

    pub fn z_det(&self) -> BigInt {
        zlinalg::det(&self.z_gram())
    }

    pub fn signature(&self) -> Signature {
        let (p, n, z) = zlinalg::inertia(&self.z_gram());
        debug_assert!(p % 2 == 0 && n % 2 == 0 && z % 2 == 0);
        Signature::new(p / 2, n / 2, z / 2)
    }

    pub fn is_positive_definite(&self) -> bool {
        let s = self.signature();
        s.neg == 0 && s.null == 0
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.gram.det().unwrap().is_zero()
    }

    pub fn discriminant_module(&self) -> Result<DiscriminantModule> {
        DiscriminantModule::compute(self)
    }

    /// Order of the discriminant module: `|det(gram / theta)|` as a norm.
    pub fn disc_order(&self) -> Result<u64> {
        let a = self.gram.map(|x| x.div_exact(&Eis::THETA).unwrap());
        let d = a.det()?;
        if d.is_zero() {
            return Err(Error::InvalidGram("degenerate form".into()));
        }
        Ok(d.norm() as u64)
    }

    /// Checks that `v` is primitive, i.e. the gcd of its coordinates is a unit.
    pub fn is_primitive(&self, v: &[Eis]) -> bool {
        v.iter().fold(Eis::ZERO, |g, x| g.gcd(x)).is_unit()
    }
}

/// An isometry given by the images of the source basis, as columns in target coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsometryWitness {
    pub source: String,
    pub target: String,
    #[serde(with = "crate::matrix::rows_serde")]
    pub matrix: EisMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessCheck {
    pub gram_preserved: bool,
    pub bijective: bool,
}

impl WitnessCheck {
    pub fn ok(&self) -> bool {
        self.gram_preserved && self.bijective
    }
}

/// True iff the images of the source basis have the source Gram matrix in the target.
pub fn verify_isometry(source: &HermitianLattice, target: &HermitianLattice, m: &EisMatrix) -> WitnessCheck {
    if m.rows != target.rank() || m.cols != source.rank() {
        return WitnessCheck { gram_preserved: false, bijective: false };
    }
    let gram_preserved = target.gram_of(m) == *source.gram();
    let bijective = m.rows == m.cols && m.det().map(|d| d.is_unit()).unwrap_or(false);
    WitnessCheck { gram_preserved, bijective }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;
    use proptest::prelude::*;

    fn vec_of(n: usize) -> impl Strategy<Value = Vec<Eis>> {
        proptest::collection::vec((-6i64..7, -6i64..7).prop_map(|(a, b)| Eis::new(a, b)), n)
    }

    #[test]
    fn rejects_bad_grams() {
        let bad = EisMatrix::from_rows(&[vec![Eis::from(3), Eis::ONE], vec![Eis::ONE, Eis::from(3)]]);
        assert!(HermitianLattice::new(bad).is_err());
        let bad = EisMatrix::from_rows(&[vec![Eis::from(2)]]);
        assert!(HermitianLattice::new(bad).is_err());
        let bad = EisMatrix::from_rows(&[vec![Eis::from(3), Eis::THETA], vec![Eis::THETA, Eis::from(3)]]);
        assert!(HermitianLattice::new(bad).is_err());
    }

    #[test]
    fn underlying_root_lattices() {
        let a2 = zoo::l(1).z_gram();
        assert_eq!(a2, vec![vec![2, -1], vec![-1, 2]]);
        let dets: Vec<BigInt> = (1..=4).map(|k| zoo::l(k).z_det()).collect();
        // A2, D4, E6, E8
        assert_eq!(dets, [3, 4, 3, 1].map(BigInt::from).to_vec());
        for k in 1..=4 {
            let z = zoo::l(k).z_gram();
            assert!(z.iter().enumerate().all(|(i, r)| r[i] % 2 == 0));
        }
        assert_eq!(zoo::h().z_det(), BigInt::from(1));
    }

    #[test]
    fn rescale_h_by_theta() {
        let ht = zoo::h().rescale(Eis::THETA).unwrap();
        assert_eq!(ht.gram()[(0, 1)], Eis::from(-3));
        assert_eq!(ht.gram()[(1, 0)], Eis::from(-3));
        assert_eq!(zoo::l(1).rescale(Eis::from(2)).unwrap().gram()[(0, 0)], Eis::from(6));
        assert!(zoo::l(1).rescale(Eis::THETA).is_err());
    }

    proptest! {
        #[test]
        fn form_axioms(x in vec_of(4), y in vec_of(4), z in vec_of(4), a in (-5i64..6, -5i64..6)) {
            let l = zoo::l(4);
            let a = Eis::new(a.0, a.1);
            prop_assert_eq!(l.inner(&y, &x), l.inner(&x, &y).conj());
            let ax: Vec<Eis> = x.iter().map(|&c| a * c).collect();
            prop_assert_eq!(l.inner(&ax, &y), a * l.inner(&x, &y));
            let xz: Vec<Eis> = x.iter().zip(&z).map(|(&p, &q)| p + q).collect();
            prop_assert_eq!(l.inner(&xz, &y), l.inner(&x, &y) + l.inner(&z, &y));
            prop_assert!(l.inner(&x, &y).is_theta_divisible());
            let n = l.norm(&x);
            prop_assert_eq!(n % 3, 0);
            prop_assert!(n >= 0);
        }
    }
}
