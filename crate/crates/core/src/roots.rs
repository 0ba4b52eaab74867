//! Short vectors, pseudo-reflections and the finite groups they generate.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::eisenstein::Eis;
use crate::error::{Error, Result};
use crate::lattice::{HermitianLattice, LatticeVector};
use crate::matrix::EisMatrix;

/// Default cap on closure sizes, overridable with `EISENTOOL_MAX_CLOSURE`.
pub fn closure_cap() -> usize {
    std::env::var("EISENTOOL_MAX_CLOSURE").ok().and_then(|s| s.parse().ok()).unwrap_or(10_000_000)
}

/// All vectors with `<v, v> <= max_norm`, excluding zero, by Fincke-Pohst enumeration on
/// the underlying Z-lattice. Sorted lexicographically by coordinates.
pub fn vectors_up_to(l: &HermitianLattice, max_norm: i64) -> Result<Vec<LatticeVector>> {
    let z = l.z_gram();
    let m = z.len();
    // Z-norm is 2/3 of the Hermitian norm
    let bound = (2 * max_norm) / 3;
    let mut q: Vec<Vec<f64>> = z.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
    for i in 0..m {
        if q[i][i] <= 1e-9 {
            return Err(Error::NotPositiveDefinite);
        }
        for j in i + 1..m {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for k in i + 1..m {
            for j in k..m {
                q[k][j] -= q[k][i] * q[i][j];
            }
        }
    }
    let mut out = Vec::new();
    let mut x = vec![0i64; m];
    fn rec(i: usize, rem: f64, q: &[Vec<f64>], z: &[Vec<i64>], x: &mut Vec<i64>, bound: i64, out: &mut Vec<Vec<i64>>) {
        let m = q.len();
        let c: f64 = -(i + 1..m).map(|j| q[i][j] * x[j] as f64).sum::<f64>();
        let r = (rem.max(0.0) / q[i][i]).sqrt() + 1e-7;
        let lo = (c - r).ceil() as i64;
        let hi = (c + r).floor() as i64;
        for v in lo..=hi {
            x[i] = v;
            let t = v as f64 - c;
            let nrem = rem - q[i][i] * t * t;
            if nrem < -1e-7 {
                continue;
            }
            if i == 0 {
                let exact: i64 = (0..m).map(|a| (0..m).map(|b| z[a][b] * x[a] * x[b]).sum::<i64>()).sum();
                if exact > 0 && exact <= bound {
                    out.push(x.clone());
                }
            } else {
                rec(i - 1, nrem, q, z, x, bound, out);
            }
        }
        x[i] = 0;
    }
    let mut raw = Vec::new();
    if m > 0 {
        rec(m - 1, bound as f64 + 1e-7, &q, &z, &mut x, bound, &mut raw);
    }
    for v in raw {
        out.push((0..m / 2).map(|i| Eis::new(v[2 * i], v[2 * i + 1])).collect::<Vec<_>>());
    }
    out.sort();
    Ok(out)
}

/// All vectors of norm exactly `n` in a positive definite lattice.
pub fn short_vectors(l: &HermitianLattice, n: i64) -> Result<Vec<LatticeVector>> {
    Ok(vectors_up_to(l, n)?.into_iter().filter(|v| l.norm(v) == n).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VectorKind {
    ThreeVector,
    SpecialThreeVector,
    LongRoot,
    SpecialIsotropic,
    Other,
}

/// A vector is special when it is primitive and all its pairings with the lattice lie in 3E.
pub fn is_special(l: &HermitianLattice, v: &[Eis]) -> bool {
    l.is_primitive(v) && l.pairings_with_basis(v).iter().all(|p| Eis::from(3).divides(p))
}

pub fn classify_vector(l: &HermitianLattice, v: &[Eis]) -> VectorKind {
    let special = is_special(l, v);
    match (l.norm(v), special) {
        (3, true) => VectorKind::SpecialThreeVector,
        (3, false) => VectorKind::ThreeVector,
        (6, true) => VectorKind::LongRoot,
        (0, true) => VectorKind::SpecialIsotropic,
        _ => VectorKind::Other,
    }
}

/// The map `x -> x - c <x, r> / <r, r> r` as a matrix acting on coordinate columns.
pub fn pseudo_reflection(l: &HermitianLattice, r: &[Eis], c: Eis) -> Result<EisMatrix> {
    let n = l.rank();
    let rr = l.norm(r);
    if rr == 0 {
        return Err(Error::NonIntegralReflection(format!("{r:?} (isotropic)")));
    }
    let mut m = EisMatrix::identity(n);
    for j in 0..n {
        let num = c * l.inner(&l.basis_vector(j), r);
        let k = num.div_exact(&Eis::from(rr)).ok_or_else(|| Error::NonIntegralReflection(format!("{r:?}")))?;
        for i in 0..n {
            m[(i, j)] -= k * r[i];
        }
    }
    Ok(m)
}

/// Order 3: `x -> x - wbar theta <x, r> / <r, r> r`, fixing `r^perp` and sending `r` to `w r`.
pub fn triflection(l: &HermitianLattice, r: &[Eis]) -> Result<EisMatrix> {
    pseudo_reflection(l, r, Eis::WBAR * Eis::THETA)
}

/// Order 2: `x -> x - 2 <x, a> / <a, a> a`.
pub fn biflection(l: &HermitianLattice, a: &[Eis]) -> Result<EisMatrix> {
    pseudo_reflection(l, a, Eis::from(2))
}

/// Order 6: `x -> x + w <x, r> / <r, r> r`, defined over E for special 3-vectors.
pub fn hexaflection(l: &HermitianLattice, r: &[Eis]) -> Result<EisMatrix> {
    pseudo_reflection(l, r, -Eis::W)
}

/// Matrix order, if finite and at most `limit`.
pub fn matrix_order(m: &EisMatrix, limit: usize) -> Option<usize> {
    let id = EisMatrix::identity(m.rows);
    let mut p = m.clone();
    for k in 1..=limit {
        if p == id {
            return Some(k);
        }
        p = p.mul(m).unwrap();
    }
    None
}

/// Breadth-first closure of the group generated by `gens`.
pub fn group_closure(gens: &[EisMatrix], cap: usize) -> Result<Vec<EisMatrix>> {
    let n = gens.first().map_or(0, |g| g.rows);
    let id = EisMatrix::identity(n);
    let mut seen: HashSet<EisMatrix> = HashSet::new();
    let mut order = vec![id.clone()];
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul(g)?;
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(Error::CapExceeded { cap });
                }
                order.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(order)
}

/// Closure of the group generated by `gens`, grown one generator at a time: a generator
/// already in the current closure is skipped.
pub fn incremental_closure(gens: &[EisMatrix], cap: usize) -> Result<Vec<EisMatrix>> {
    let Some(first) = gens.first() else { return Ok(Vec::new()) };
    let mut used: Vec<EisMatrix> = Vec::new();
    let mut elems = vec![EisMatrix::identity(first.rows)];
    let mut set: HashSet<EisMatrix> = elems.iter().cloned().collect();
    for g in gens {
        if set.contains(g) {
            continue;
        }
        used.push(g.clone());
        elems = group_closure(&used, cap)?;
        set = elems.iter().cloned().collect();
    }
    Ok(elems)
}

/// Distinct triflections in the 3-vectors of a positive definite lattice, those in basis
/// vectors first.
pub fn triflection_generators(l: &HermitianLattice) -> Result<Vec<EisMatrix>> {
    let mut gens: Vec<EisMatrix> = Vec::new();
    let mut seen = HashSet::new();
    let basis: Vec<LatticeVector> = (0..l.rank()).map(|i| l.basis_vector(i)).filter(|v| l.norm(v) == 3).collect();
    for r in basis.into_iter().chain(short_vectors(l, 3)?) {
        let t = triflection(l, &r)?;
        if seen.insert(t.clone()) {
            gens.push(t);
        }
    }
    Ok(gens)
}

/// The group generated by all triflections of a positive definite lattice.
pub fn triflection_group(l: &HermitianLattice, cap: usize) -> Result<Vec<EisMatrix>> {
    incremental_closure(&triflection_generators(l)?, cap)
}

/// Images of the source basis in `target` realizing `source_gram`, by backtracking over
/// vectors of the right norms. Stops after the first hit unless `all` is set.
pub fn embeddings(
    source_gram: &EisMatrix,
    target: &HermitianLattice,
    all: bool,
    require_invertible: bool,
    cap: usize,
) -> Result<Vec<EisMatrix>> {
    let k = source_gram.rows;
    let mut norms: Vec<i64> = (0..k).map(|i| source_gram[(i, i)].as_int().unwrap()).collect();
    norms.sort();
    norms.dedup();
    let maxn = *norms.last().unwrap_or(&0);
    let pool = vectors_up_to(target, maxn)?;
    let mut by_norm: HashMap<i64, Vec<LatticeVector>> = HashMap::new();
    for v in pool {
        by_norm.entry(target.norm(&v)).or_default().push(v);
    }
    let empty = Vec::new();
    let cands: Vec<&Vec<LatticeVector>> =
        (0..k).map(|i| by_norm.get(&source_gram[(i, i)].as_int().unwrap()).unwrap_or(&empty)).collect();
    // row i of duals: G conj(v_i), so <x, v_i> = sum x_j duals[i][j]
    let dual =
        |v: &LatticeVector| -> Vec<Eis> { target.gram().mul_vec(&v.iter().map(|x| x.conj()).collect::<Vec<_>>()) };
    let mut out = Vec::new();
    let mut chosen: Vec<LatticeVector> = Vec::new();
    let mut duals: Vec<Vec<Eis>> = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        k: usize,
        g: &EisMatrix,
        cands: &[&Vec<LatticeVector>],
        chosen: &mut Vec<LatticeVector>,
        duals: &mut Vec<Vec<Eis>>,
        dual: &dyn Fn(&LatticeVector) -> Vec<Eis>,
        out: &mut Vec<EisMatrix>,
        all: bool,
        inv: bool,
        cap: usize,
    ) -> Result<bool> {
        if i == k {
            let m = EisMatrix::from_cols(chosen);
            if inv && !(m.rows == m.cols && m.det()?.is_unit()) {
                return Ok(false);
            }
            out.push(m);
            if out.len() > cap {
                return Err(Error::CapExceeded { cap });
            }
            return Ok(!all);
        }
        for v in cands[i] {
            let ok = (0..i).all(|j| {
                let p: Eis = v.iter().zip(&duals[j]).map(|(&a, &b)| a * b).sum();
                p == g[(i, j)]
            });
            if !ok {
                continue;
            }
            chosen.push(v.clone());
            duals.push(dual(v));
            let stop = rec(i + 1, k, g, cands, chosen, duals, dual, out, all, inv, cap)?;
            chosen.pop();
            duals.pop();
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
    rec(0, k, source_gram, &cands, &mut chosen, &mut duals, &dual, &mut out, all, require_invertible, cap)?;
    Ok(out)
}

/// An isometry `source -> target` of positive definite lattices, if one exists.
pub fn find_isometry(source: &HermitianLattice, target: &HermitianLattice) -> Result<Option<EisMatrix>> {
    if source.rank() != target.rank() {
        return Ok(None);
    }
    Ok(embeddings(source.gram(), target, false, true, 1)?.into_iter().next())
}

/// All isometries of a positive definite lattice.
pub fn unitary_group(l: &HermitianLattice, cap: usize) -> Result<Vec<EisMatrix>> {
    embeddings(l.gram(), l, true, true, cap)
}

/// Number of roots of the underlying Z-lattice reached from its basis by Z-reflections.
/// Independent of the Fincke-Pohst enumeration; meaningful when the basis vectors are roots
/// generating the root system.
pub fn z_root_closure_count(l: &HermitianLattice) -> usize {
    let z = l.z_gram();
    let m = z.len();
    let dot =
        |x: &[i64], y: &[i64]| -> i64 { (0..m).map(|i| (0..m).map(|j| x[i] * z[i][j] * y[j]).sum::<i64>()).sum() };
    let mut roots: Vec<Vec<i64>> = (0..m)
        .map(|i| {
            let mut v = vec![0; m];
            v[i] = 1;
            v
        })
        .collect();
    let mut set: HashSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut i = 0;
    while i < roots.len() {
        let a = roots[i].clone();
        for j in 0..roots.len() {
            let b = roots[j].clone();
            let k = dot(&a, &b);
            let c: Vec<i64> = (0..m).map(|t| b[t] - k * a[t]).collect();
            if set.insert(c.clone()) {
                roots.push(c);
            }
        }
        i += 1;
    }
    roots.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn root_counts_match_reflection_closure() {
        for (k, n) in [(1, 6), (2, 24), (3, 72), (4, 240)] {
            let l = zoo::l(k);
            let sv = short_vectors(&l, 3).unwrap();
            assert_eq!(sv.len(), n);
            assert_eq!(z_root_closure_count(&l), n);
        }
    }

    #[test]
    fn triflection_on_its_root() {
        let l = zoo::l(3);
        for r in short_vectors(&l, 3).unwrap() {
            let t = triflection(&l, &r).unwrap();
            let wr: Vec<Eis> = r.iter().map(|&x| Eis::W * x).collect();
            assert_eq!(t.mul_vec(&r), wr);
            assert_eq!(matrix_order(&t, 10), Some(3));
            // agrees with x + wbar (<x, r> / theta) r
            for j in 0..3 {
                let x = l.basis_vector(j);
                let c = (Eis::WBAR * l.inner(&x, &r)).div_exact(&Eis::THETA).unwrap();
                let y: Vec<Eis> = (0..3).map(|i| x[i] + c * r[i]).collect();
                assert_eq!(t.col(j), y);
            }
        }
    }

    #[test]
    fn vector_kinds() {
        let l1 = zoo::l(1);
        assert_eq!(classify_vector(&l1, &[Eis::ONE]), VectorKind::SpecialThreeVector);
        let l2 = zoo::l(2);
        assert_eq!(classify_vector(&l2, &[Eis::ONE, Eis::ZERO]), VectorKind::ThreeVector);
        let ht = zoo::ht();
        assert_eq!(classify_vector(&ht, &[Eis::ONE, Eis::ZERO]), VectorKind::SpecialIsotropic);
        let h = zoo::h();
        assert_eq!(classify_vector(&h, &[Eis::ONE, Eis::ZERO]), VectorKind::Other);
    }

    #[test]
    fn indefinite_rejected() {
        assert!(matches!(vectors_up_to(&zoo::h(), 3), Err(Error::NotPositiveDefinite)));
    }

    #[test]
    fn small_unitary_groups() {
        assert_eq!(unitary_group(&zoo::l(1), 100).unwrap().len(), 6);
        assert_eq!(triflection_group(&zoo::l(1), 100).unwrap().len(), 3);
        assert_eq!(triflection_group(&zoo::l(2), 1000).unwrap().len(), 24);
        assert_eq!(unitary_group(&zoo::l(2), 1000).unwrap().len(), 72);
    }
}
