//! Dense matrices over E, with Smith normal form and exact determinants.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::eisenstein::Eis;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EisMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Eis>,
}

impl fmt::Debug for EisMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for EisMatrix {
    type Output = Eis;
    fn index(&self, (i, j): (usize, usize)) -> &Eis {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for EisMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Eis {
        &mut self.data[i * self.cols + j]
    }
}

impl EisMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        EisMatrix { rows, cols, data: vec![Eis::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Eis::ONE;
        }
        m
    }

    pub fn scalar(n: usize, x: Eis) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = x;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Eis>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        EisMatrix { rows: r, cols: c, data: rows.iter().flatten().copied().collect() }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<Eis>]) -> Self {
        Self::from_rows(cols).transpose()
    }

    pub fn row(&self, i: usize) -> Vec<Eis> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Eis> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Eis>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn conj(&self) -> Self {
        EisMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.conj()).collect() }
    }

    pub fn conj_transpose(&self) -> Self {
        self.transpose().conj()
    }

    pub fn map(&self, f: impl Fn(Eis) -> Eis) -> Self {
        EisMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| f(x)).collect() }
    }

    pub fn scale(&self, x: Eis) -> Self {
        self.map(|y| y * x)
    }

    pub fn mul(&self, o: &EisMatrix) -> Result<EisMatrix> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!("{}x{} times {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o[(k, j)];
                    if !b.is_zero() {
                        out.data[i * o.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Eis]) -> Vec<Eis> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum()).collect()
    }

    pub fn add(&self, o: &EisMatrix) -> EisMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        EisMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(&a, &b)| a + b).collect(),
        }
    }

    pub fn block_diag(blocks: &[&EisMatrix]) -> EisMatrix {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(r, c);
        let (mut oi, mut oj) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(oi + i, oj + j)] = b[(i, j)];
                }
            }
            oi += b.rows;
            oj += b.cols;
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    /// Sub-matrix of the given columns.
    pub fn select_cols(&self, cols: &[usize]) -> EisMatrix {
        Self::from_cols(&cols.iter().map(|&j| self.col(j)).collect::<Vec<_>>())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += c * row[src]
    pub fn add_row(&mut self, dst: usize, src: usize, c: Eis) {
        for j in 0..self.cols {
            let v = self[(src, j)];
            if !v.is_zero() {
                self[(dst, j)] += c * v;
            }
        }
    }

    /// col[dst] += c * col[src]
    pub fn add_col(&mut self, dst: usize, src: usize, c: Eis) {
        for i in 0..self.rows {
            let v = self[(i, src)];
            if !v.is_zero() {
                self[(i, dst)] += c * v;
            }
        }
    }

    pub fn scale_row(&mut self, i: usize, c: Eis) {
        for j in 0..self.cols {
            self[(i, j)] = self[(i, j)] * c;
        }
    }

    pub fn scale_col(&mut self, j: usize, c: Eis) {
        for i in 0..self.rows {
            self[(i, j)] = self[(i, j)] * c;
        }
    }

    /// Exact determinant by Euclidean row reduction.
    pub fn det(&self) -> Result<Eis> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Eis::ONE;
        for k in 0..n {
            loop {
                let piv = (k..n).filter(|&i| !a[(i, k)].is_zero()).min_by_key(|&i| a[(i, k)].size_key());
                let Some(p) = piv else { return Ok(Eis::ZERO) };
                if p != k {
                    a.swap_rows(p, k);
                    det = -det;
                }
                let mut clean = true;
                for i in k + 1..n {
                    if a[(i, k)].is_zero() {
                        continue;
                    }
                    let (q, r) = a[(i, k)].div_rem(&a[(k, k)])?;
                    a.add_row(i, k, -q);
                    if !r.is_zero() {
                        clean = false;
                    }
                }
                if clean {
                    break;
                }
            }
            det = det * a[(k, k)];
        }
        Ok(det)
    }

    /// Inverse over E; fails unless the determinant is a unit.
    pub fn inverse(&self) -> Result<EisMatrix> {
        let s = smith_normal_form(self);
        if self.rows != self.cols || s.diag.len() != self.rows || !s.diag.iter().all(|d| d.is_unit()) {
            return Err(Error::DimensionMismatch("matrix is not invertible over E".into()));
        }
        let mut dinv = EisMatrix::identity(self.rows);
        for (i, d) in s.diag.iter().enumerate() {
            dinv[(i, i)] = d.conj();
        }
        s.q.mul(&dinv)?.mul(&s.p)
    }
}

/// Serializes a matrix as an array of rows of `[a, b]` pairs.
pub mod rows_serde {
    use super::EisMatrix;
    use crate::eisenstein::Eis;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &EisMatrix, s: S) -> Result<S::Ok, S::Error> {
        m.to_rows().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<EisMatrix, D::Error> {
        let rows: Vec<Vec<Eis>> = Vec::deserialize(d)?;
        if rows.iter().any(|r| r.len() != rows[0].len()) {
            return Err(serde::de::Error::custom("ragged matrix"));
        }
        Ok(EisMatrix::from_rows(&rows))
    }
}

/// Smith normal form `P A Q = D` over E.
///
/// `diag` holds the nonzero diagonal entries (canonical associates, each dividing the next);
/// `p_inv` is the inverse of `P`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub d: EisMatrix,
    pub p: EisMatrix,
    pub p_inv: EisMatrix,
    pub q: EisMatrix,
    pub diag: Vec<Eis>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }
}

pub fn smith_normal_form(a: &EisMatrix) -> Smith {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut p = EisMatrix::identity(m);
    let mut p_inv = EisMatrix::identity(m);
    let mut q = EisMatrix::identity(n);
    let mut diag = Vec::new();

    // row op helpers keep P and P^-1 in sync
    let row_add = |d: &mut EisMatrix, p: &mut EisMatrix, pi: &mut EisMatrix, dst: usize, src: usize, c: Eis| {
        d.add_row(dst, src, c);
        p.add_row(dst, src, c);
        pi.add_col(src, dst, -c);
    };
    let row_swap = |d: &mut EisMatrix, p: &mut EisMatrix, pi: &mut EisMatrix, x: usize, y: usize| {
        d.swap_rows(x, y);
        p.swap_rows(x, y);
        pi.swap_cols(x, y);
    };

    for k in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in k..m {
                for j in k..n {
                    let v = d[(i, j)];
                    if v.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| v.size_key() < d[(bi, bj)].size_key()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi_, pj)) = best else {
                return Smith { d, p, p_inv, q, diag };
            };
            row_swap(&mut d, &mut p, &mut p_inv, k, pi_);
            d.swap_cols(k, pj);
            q.swap_cols(k, pj);

            let piv = d[(k, k)];
            let mut clean = true;
            for i in k + 1..m {
                if d[(i, k)].is_zero() {
                    continue;
                }
                let (qq, r) = d[(i, k)].div_rem(&piv).unwrap();
                row_add(&mut d, &mut p, &mut p_inv, i, k, -qq);
                if !r.is_zero() {
                    clean = false;
                }
            }
            for j in k + 1..n {
                if d[(k, j)].is_zero() {
                    continue;
                }
                let (qq, r) = d[(k, j)].div_rem(&piv).unwrap();
                d.add_col(j, k, -qq);
                q.add_col(j, k, -qq);
                if !r.is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility condition on the remaining block
            let bad = (k + 1..m).find(|&i| (k + 1..n).any(|j| !piv.divides(&d[(i, j)])));
            if let Some(i) = bad {
                row_add(&mut d, &mut p, &mut p_inv, k, i, Eis::ONE);
                continue;
            }
            break;
        }
        let (c, u) = d[(k, k)].canonical_associate();
        d.scale_row(k, u);
        p.scale_row(k, u);
        p_inv.scale_col(k, u.conj());
        debug_assert_eq!(d[(k, k)], c);
        diag.push(c);
    }
    Smith { d, p, p_inv, q, diag }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(a: i64, b: i64) -> Eis {
        Eis::new(a, b)
    }

    #[test]
    fn det_small() {
        let m = EisMatrix::from_rows(&[vec![e(3, 0), Eis::THETA], vec![-Eis::THETA, e(3, 0)]]);
        // 9 - theta * (-theta) = 9 + theta^2 = 6
        assert_eq!(m.det().unwrap(), e(6, 0));
    }

    fn mat(n: usize, m: usize) -> impl Strategy<Value = EisMatrix> {
        proptest::collection::vec((-4i64..5, -4i64..5), n * m).prop_map(move |v| EisMatrix {
            rows: n,
            cols: m,
            data: v.into_iter().map(|(a, b)| e(a, b)).collect(),
        })
    }

    // cofactor expansion as an independent oracle
    fn det_oracle(m: &EisMatrix) -> Eis {
        let n = m.rows;
        if n == 1 {
            return m[(0, 0)];
        }
        let mut s = Eis::ZERO;
        for j in 0..n {
            let minor_rows: Vec<Vec<Eis>> =
                (1..n).map(|i| (0..n).filter(|&c| c != j).map(|c| m[(i, c)]).collect()).collect();
            let t = m[(0, j)] * det_oracle(&EisMatrix::from_rows(&minor_rows));
            s = if j % 2 == 0 { s + t } else { s - t };
        }
        s
    }

    proptest! {
        #[test]
        fn det_matches_cofactors(m in mat(4, 4)) {
            prop_assert_eq!(m.det().unwrap(), det_oracle(&m));
        }

        #[test]
        fn smith_is_consistent(m in mat(3, 4)) {
            let s = smith_normal_form(&m);
            prop_assert_eq!(s.p.mul(&m).unwrap().mul(&s.q).unwrap(), s.d.clone());
            prop_assert!(s.p.mul(&s.p_inv).unwrap().is_identity());
            prop_assert!(s.p.det().unwrap().is_unit());
            prop_assert!(s.q.det().unwrap().is_unit());
            for w in s.diag.windows(2) {
                prop_assert!(w[0].divides(&w[1]));
            }
            for i in 0..s.d.rows {
                for j in 0..s.d.cols {
                    if i != j || i >= s.diag.len() {
                        prop_assert!(s.d[(i, j)].is_zero());
                    }
                }
            }
        }

        #[test]
        fn inverse_roundtrip(m in mat(3, 3)) {
            if m.det().unwrap().is_unit() {
                prop_assert!(m.mul(&m.inverse().unwrap()).unwrap().is_identity());
            } else {
                prop_assert!(m.inverse().is_err());
            }
        }
    }
}
