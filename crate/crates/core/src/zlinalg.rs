//! Exact integer linear algebra on symmetric integer matrices.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Determinant by Bareiss fraction-free elimination.
pub fn det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Coefficients of `det(xI - A)`, highest degree first (Berkowitz, division free).
pub fn char_poly(m: &[Vec<i64>]) -> Vec<BigInt> {
    let n = m.len();
    let a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut v = vec![BigInt::from(1)];
    for r in 0..n {
        // leading block A_r, column c = a[0..r][r], row s = a[r][0..r]
        let mut t = Vec::with_capacity(r + 2);
        t.push(BigInt::from(1));
        t.push(-a[r][r].clone());
        let mut w: Vec<BigInt> = (0..r).map(|i| a[i][r].clone()).collect();
        for _ in 0..r {
            let dot: BigInt = (0..r).map(|j| &a[r][j] * &w[j]).sum();
            t.push(-dot);
            w = (0..r).map(|i| (0..r).map(|j| &a[i][j] * &w[j]).sum()).collect();
        }
        let mut nv = vec![BigInt::zero(); r + 2];
        for (i, ti) in t.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                if i + j < r + 2 {
                    nv[i + j] += ti * vj;
                }
            }
        }
        v = nv;
    }
    v
}

/// Inertia `(positive, negative, zero)` of a real symmetric matrix, read off the
/// characteristic polynomial with Descartes' rule (exact when all roots are real).
pub fn inertia(m: &[Vec<i64>]) -> (usize, usize, usize) {
    let p = char_poly(m);
    // p is highest degree first; strip trailing zeros (powers of x)
    let mut coeffs = p.clone();
    let mut zeros = 0;
    while coeffs.len() > 1 && coeffs.last().unwrap().is_zero() {
        coeffs.pop();
        zeros += 1;
    }
    let changes = |c: &[BigInt]| {
        let signs: Vec<bool> = c.iter().filter(|x| !x.is_zero()).map(|x| x.is_positive()).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let deg = coeffs.len() - 1;
    let neg: Vec<BigInt> =
        coeffs.iter().enumerate().map(|(i, c)| if (deg - i) % 2 == 1 { -c.clone() } else { c.clone() }).collect();
    (changes(&coeffs), changes(&neg), zeros)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Jacobi eigenvalue iteration as a floating-point oracle
    fn eigenvalues(m: &[Vec<i64>]) -> Vec<f64> {
        let n = m.len();
        let mut a: Vec<Vec<f64>> = m.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
        for _ in 0..200 {
            for p in 0..n {
                for q in p + 1..n {
                    if a[p][q].abs() < 1e-14 {
                        continue;
                    }
                    let th = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                    let t = th.signum() / (th.abs() + (th * th + 1.0).sqrt());
                    let t = if th == 0.0 { 1.0 } else { t };
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let (akp, akq) = (a[k][p], a[k][q]);
                        a[k][p] = c * akp - s * akq;
                        a[k][q] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let (apk, aqk) = (a[p][k], a[q][k]);
                        a[p][k] = c * apk - s * aqk;
                        a[q][k] = s * apk + c * aqk;
                    }
                }
            }
        }
        (0..n).map(|i| a[i][i]).collect()
    }

    fn sym(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        proptest::collection::vec(-3i64..4, n * n).prop_map(move |v| {
            let mut m = vec![vec![0; n]; n];
            for i in 0..n {
                for j in i..n {
                    m[i][j] = v[i * n + j];
                    m[j][i] = v[i * n + j];
                }
            }
            m
        })
    }

    #[test]
    fn known_determinants() {
        let a2 = vec![vec![2, -1], vec![-1, 2]];
        assert_eq!(det(&a2), BigInt::from(3));
        assert_eq!(char_poly(&a2), vec![BigInt::from(1), BigInt::from(-4), BigInt::from(3)]);
        assert_eq!(inertia(&a2), (2, 0, 0));
        let h = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(inertia(&h), (1, 1, 0));
        assert_eq!(inertia(&[vec![0]]), (0, 0, 1));
    }

    proptest! {
        #[test]
        fn det_is_constant_term(m in sym(5)) {
            let p = char_poly(&m);
            // det(-A) = (-1)^n det(A) is the constant term
            prop_assert_eq!(p[5].clone(), -det(&m));
        }

        #[test]
        fn inertia_matches_eigenvalues(m in sym(5)) {
            let ev = eigenvalues(&m);
            let (p, n, z) = inertia(&m);
            prop_assert_eq!(p + n + z, 5);
            let fp = ev.iter().filter(|&&x| x > 1e-6).count();
            let fneg = ev.iter().filter(|&&x| x < -1e-6).count();
            prop_assert_eq!((p, n), (fp, fneg));
        }
    }
}
