//! Sublattices, primitive hulls, overlattices from isotropic glue, and the standard
//! embeddings of sums of chain lattices into copies of `L4`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::disc::{disc_form, DiscForm, F4};
use crate::eisenstein::{Eis, QEis};
use crate::error::{Error, Result};
use crate::lattice::{HermitianLattice, RationalVector};
use crate::matrix::{smith_normal_form, EisMatrix};
use crate::zoo::{self, LatticeExpr};

/// The saturation of a sublattice, with the index of the sublattice in it.
#[derive(Clone, Debug)]
pub struct Hull {
    /// Basis of the saturation, as columns in host coordinates.
    pub basis: EisMatrix,
    pub degree: u64,
}

/// `(Q(w) sub) cap host`, for `sub` given by columns in host coordinates.
pub fn primitive_hull(sub: &EisMatrix) -> Result<Hull> {
    let s = smith_normal_form(sub);
    if s.rank() < sub.cols {
        return Err(Error::DimensionMismatch("sublattice generators are linearly dependent".into()));
    }
    let degree = s.diag.iter().map(|d| d.norm() as u64).product();
    let idx: Vec<usize> = (0..sub.cols).collect();
    Ok(Hull { basis: s.p_inv.select_cols(&idx), degree })
}

pub fn is_primitive(sub: &EisMatrix) -> Result<bool> {
    Ok(primitive_hull(sub)?.degree == 1)
}

/// Basis (as columns) of `{x : <x, s> = 0 for all columns s of sub}`.
pub fn orthogonal_complement(host: &HermitianLattice, sub: &EisMatrix) -> EisMatrix {
    // <x, s> = x^T G conj(s): kernel of (G conj(S))^T acting on columns x
    let a = host.gram().mul(&sub.conj()).unwrap().transpose();
    let s = smith_normal_form(&a);
    let r = s.rank();
    let idx: Vec<usize> = (r..host.rank()).collect();
    s.q.select_cols(&idx)
}

pub fn sublattice(host: &HermitianLattice, cols: &EisMatrix) -> Result<HermitianLattice> {
    HermitianLattice::new(host.gram_of(cols))
}

#[derive(Clone, Debug)]
pub struct Overlattice {
    pub lattice: HermitianLattice,
    /// Basis of the overlattice, in rational coordinates of the original lattice.
    pub basis: Vec<RationalVector>,
    pub degree: u64,
}

/// The lattice generated by `l` and the glue vectors, which must be isotropic in the
/// discriminant form of `l`.
pub fn overlattice(l: &HermitianLattice, glue: &[RationalVector]) -> Result<Overlattice> {
    let n = l.rank();
    for (i, x) in glue.iter().enumerate() {
        for y in &glue[i..] {
            if !l.inner_q(x, y).in_theta_lattice() {
                return Err(Error::NotIsotropic);
            }
        }
        for j in 0..n {
            let e: RationalVector = l.basis_vector(j).into_iter().map(QEis::int).collect();
            if !l.inner_q(x, &e).in_theta_lattice() {
                return Err(Error::NotIsotropic);
            }
        }
    }
    let den = glue.iter().flatten().fold(1i64, |d, x| num_integer::lcm(d, x.den));
    let mut cols: Vec<Vec<Eis>> = (0..n)
        .map(|j| {
            let mut v = vec![Eis::ZERO; n];
            v[j] = Eis::from(den);
            v
        })
        .collect();
    for g in glue {
        cols.push(g.iter().map(|x| x.num.scale(den / x.den)).collect());
    }
    let m = EisMatrix::from_cols(&cols);
    let s = smith_normal_form(&m);
    let mut bint = s.p_inv.select_cols(&(0..n).collect::<Vec<_>>());
    for (j, d) in s.diag.iter().enumerate() {
        bint.scale_col(j, *d);
    }
    let g = l.gram_of(&bint);
    let d2 = Eis::from(den * den);
    let gram = g.map(|x| x.div_exact(&d2).expect("isotropic glue gives an integral Gram matrix"));
    let lattice = HermitianLattice::new(gram)?;
    let basis = (0..n).map(|j| bint.col(j).into_iter().map(|x| QEis::new(x, den)).collect()).collect();
    // every elementary divisor divides den
    let degree = s.diag.iter().map(|d| (den * den / d.norm()) as u64).product();
    Ok(Overlattice { lattice, basis, degree })
}

/// A normalized discriminant form with a label on each coordinate; coordinates with equal
/// labels may be permuted by the symmetry group.
#[derive(Clone, Debug)]
pub struct GlueSpace {
    pub lattice: HermitianLattice,
    pub form: DiscForm,
    pub f3_labels: Vec<String>,
    pub f4_labels: Vec<String>,
}

impl GlueSpace {
    /// Builds the glue space summand by summand, so that coordinates follow the summands.
    pub fn from_expr(expr: &LatticeExpr) -> Result<GlueSpace> {
        let lattice = expr.lattice()?;
        let n = lattice.rank();
        let mut offset = 0;
        let mut form = DiscForm { f3_signs: vec![], f3_basis: vec![], f4_basis: vec![] };
        let (mut f3_labels, mut f4_labels) = (vec![], vec![]);
        for t in expr.summands() {
            let part = t.lattice()?;
            let k = part.rank();
            let f = disc_form(&part)?;
            let pad = |v: &RationalVector| -> RationalVector {
                let mut out = vec![QEis::zero(); n];
                out[offset..offset + k].copy_from_slice(v);
                out
            };
            for (s, v) in f.f3_signs.iter().zip(&f.f3_basis) {
                form.f3_signs.push(*s);
                form.f3_basis.push(pad(v));
                f3_labels.push(t.to_string());
            }
            for v in &f.f4_basis {
                form.f4_basis.push(pad(v));
                f4_labels.push(t.to_string());
            }
            offset += k;
        }
        Ok(GlueSpace { lattice, form, f3_labels, f4_labels })
    }

    /// Treats the lattice as a single summand, with no symmetries beyond the identity.
    pub fn from_lattice(l: &HermitianLattice) -> Result<GlueSpace> {
        let form = disc_form(l)?;
        let f3_labels = (0..form.f3_signs.len()).map(|i| format!("#{i}")).collect();
        let f4_labels = (0..form.f4_rank()).map(|i| format!("#{i}")).collect();
        Ok(GlueSpace { lattice: l.clone(), form, f3_labels, f4_labels })
    }

    fn q3(&self, x: &[u8]) -> u8 {
        self.b3(x, x)
    }

    fn b3(&self, x: &[u8], y: &[u8]) -> u8 {
        let s: i64 =
            x.iter().zip(y).zip(&self.form.f3_signs).map(|((&a, &b), &s)| a as i64 * b as i64 * s as i64).sum();
        s.rem_euclid(3) as u8
    }

    fn h4(&self, x: &[F4], y: &[F4]) -> F4 {
        x.iter().zip(y).fold(F4::ZERO, |acc, (a, b)| acc.add(a.mul(b.conj())))
    }

    /// Lift of a submodule to glue vectors in rational coordinates.
    pub fn lift(&self, sub: &IsotropicSubmodule) -> Vec<RationalVector> {
        let n = self.lattice.rank();
        let mut out = Vec::new();
        for v in &sub.f3 {
            let mut acc = vec![QEis::zero(); n];
            for (c, b) in v.iter().zip(&self.form.f3_basis) {
                for k in 0..n {
                    acc[k] = acc[k] + b[k].mul_eis(Eis::from(*c as i64));
                }
            }
            out.push(acc);
        }
        for v in &sub.f4 {
            let mut acc = vec![QEis::zero(); n];
            for (c, b) in v.iter().zip(&self.form.f4_basis) {
                for k in 0..n {
                    acc[k] = acc[k] + b[k].mul_eis(c.lift());
                }
            }
            out.push(acc);
        }
        out
    }
}

/// A submodule of `F3^a (+) F4^b`, each part given by a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IsotropicSubmodule {
    pub f3: Vec<Vec<u8>>,
    pub f4: Vec<Vec<F4>>,
}

impl IsotropicSubmodule {
    pub fn order(&self) -> u64 {
        3u64.pow(self.f3.len() as u32) * 4u64.pow(self.f4.len() as u32)
    }

    /// Every coordinate is used by some element.
    pub fn full_support(&self, a: usize, b: usize) -> bool {
        (0..a).all(|i| self.f3.iter().any(|v| v[i] != 0)) && (0..b).all(|i| self.f4.iter().any(|v| v[i] != F4::ZERO))
    }
}

fn rref3(mut rows: Vec<Vec<u8>>) -> Vec<Vec<u8>> {
    let n = rows.first().map_or(0, |r| r.len());
    let mut out: Vec<Vec<u8>> = Vec::new();
    let mut col = 0;
    while col < n && !rows.is_empty() {
        if let Some(p) = rows.iter().position(|r| r[col] != 0) {
            let mut piv = rows.remove(p);
            let inv = piv[col]; // 1 and 2 are self-inverse mod 3
            for x in piv.iter_mut() {
                *x = (*x * inv) % 3;
            }
            for r in rows.iter_mut().chain(out.iter_mut()) {
                let c = r[col];
                if c != 0 {
                    for k in 0..n {
                        r[k] = ((r[k] as u32 + 3 - (c as u32 * piv[k] as u32) % 3) % 3) as u8;
                    }
                }
            }
            rows.retain(|r| r.iter().any(|&x| x != 0));
            out.push(piv);
        }
        col += 1;
    }
    out.sort_by_key(|r| r.iter().position(|&x| x != 0));
    out
}

fn rref4(mut rows: Vec<Vec<F4>>) -> Vec<Vec<F4>> {
    let n = rows.first().map_or(0, |r| r.len());
    let mut out: Vec<Vec<F4>> = Vec::new();
    let mut col = 0;
    while col < n && !rows.is_empty() {
        if let Some(p) = rows.iter().position(|r| r[col] != F4::ZERO) {
            let mut piv = rows.remove(p);
            let inv = piv[col].inv();
            for x in piv.iter_mut() {
                *x = x.mul(inv);
            }
            for r in rows.iter_mut().chain(out.iter_mut()) {
                let c = r[col];
                if c != F4::ZERO {
                    for k in 0..n {
                        r[k] = r[k].add(c.mul(piv[k]));
                    }
                }
            }
            rows.retain(|r| r.iter().any(|&x| x != F4::ZERO));
            out.push(piv);
        }
        col += 1;
    }
    out.sort_by_key(|r| r.iter().position(|&x| x != F4::ZERO));
    out
}

fn all_vectors3(a: usize) -> Vec<Vec<u8>> {
    (0..3usize.pow(a as u32))
        .map(|mut k| {
            (0..a)
                .map(|_| {
                    let d = (k % 3) as u8;
                    k /= 3;
                    d
                })
                .collect()
        })
        .collect()
}

fn all_vectors4(b: usize) -> Vec<Vec<F4>> {
    (0..4usize.pow(b as u32))
        .map(|mut k| {
            (0..b)
                .map(|_| {
                    let d = F4((k % 4) as u8);
                    k /= 4;
                    d
                })
                .collect()
        })
        .collect()
}

fn isotropic_f3(space: &GlueSpace) -> Vec<Vec<Vec<u8>>> {
    let a = space.form.f3_signs.len();
    let iso: Vec<Vec<u8>> =
        all_vectors3(a).into_iter().filter(|v| v.iter().any(|&x| x != 0) && space.q3(v) == 0).collect();
    let mut found: BTreeSet<Vec<Vec<u8>>> = BTreeSet::new();
    let mut frontier = vec![Vec::<Vec<u8>>::new()];
    found.insert(Vec::new());
    while let Some(basis) = frontier.pop() {
        for v in &iso {
            if basis.iter().any(|b| space.b3(v, b) != 0) {
                continue;
            }
            let mut rows = basis.clone();
            rows.push(v.clone());
            let r = rref3(rows);
            if r.len() == basis.len() + 1 && found.insert(r.clone()) {
                frontier.push(r);
            }
        }
    }
    found.into_iter().collect()
}

fn isotropic_f4(space: &GlueSpace) -> Vec<Vec<Vec<F4>>> {
    let b = space.form.f4_rank();
    let iso: Vec<Vec<F4>> = all_vectors4(b)
        .into_iter()
        .filter(|v| v.iter().any(|&x| x != F4::ZERO) && space.h4(v, v) == F4::ZERO)
        .collect();
    let mut found: BTreeSet<Vec<Vec<F4>>> = BTreeSet::new();
    let mut frontier = vec![Vec::<Vec<F4>>::new()];
    found.insert(Vec::new());
    while let Some(basis) = frontier.pop() {
        for v in &iso {
            if basis.iter().any(|w| space.h4(v, w) != F4::ZERO) {
                continue;
            }
            let mut rows = basis.clone();
            rows.push(v.clone());
            let r = rref4(rows);
            if r.len() == basis.len() + 1 && found.insert(r.clone()) {
                frontier.push(r);
            }
        }
    }
    found.into_iter().collect()
}

/// All isotropic submodules, including zero.
pub fn isotropic_submodules(space: &GlueSpace) -> Vec<IsotropicSubmodule> {
    let i3 = isotropic_f3(space);
    let i4 = isotropic_f4(space);
    let mut out = Vec::new();
    for x in &i3 {
        for y in &i4 {
            out.push(IsotropicSubmodule { f3: x.clone(), f4: y.clone() });
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Permutations of `0..labels.len()` preserving labels.
fn label_permutations(labels: &[String]) -> Vec<Vec<usize>> {
    permutations(labels.len())
        .into_iter()
        .filter(|p| p.iter().enumerate().all(|(i, &j)| labels[i] == labels[j]))
        .collect()
}

fn canonical3(space: &GlueSpace, sub: &[Vec<u8>], perms: &[Vec<usize>]) -> Vec<Vec<u8>> {
    let a = space.form.f3_signs.len();
    let mut best: Option<Vec<Vec<u8>>> = None;
    for p in perms {
        for signs in 0..(1u32 << a) {
            let rows: Vec<Vec<u8>> = sub
                .iter()
                .map(|v| {
                    let mut w = vec![0u8; a];
                    for i in 0..a {
                        let x = v[i];
                        w[p[i]] = if signs >> i & 1 == 1 { (3 - x) % 3 } else { x };
                    }
                    w
                })
                .collect();
            let r = rref3(rows);
            if best.as_ref().is_none_or(|b| r < *b) {
                best = Some(r);
            }
        }
    }
    best.unwrap_or_default()
}

fn canonical4(space: &GlueSpace, sub: &[Vec<F4>], perms: &[Vec<usize>]) -> Vec<Vec<F4>> {
    let b = space.form.f4_rank();
    let units = [F4(1), F4(2), F4(3)];
    let mut best: Option<Vec<Vec<F4>>> = None;
    for p in perms {
        for mut k in 0..3usize.pow(b as u32) {
            let scal: Vec<F4> = (0..b)
                .map(|_| {
                    let u = units[k % 3];
                    k /= 3;
                    u
                })
                .collect();
            let rows: Vec<Vec<F4>> = sub
                .iter()
                .map(|v| {
                    let mut w = vec![F4::ZERO; b];
                    for i in 0..b {
                        w[p[i]] = v[i].mul(scal[i]);
                    }
                    w
                })
                .collect();
            let r = rref4(rows);
            if best.as_ref().is_none_or(|x| r < *x) {
                best = Some(r);
            }
        }
    }
    best.unwrap_or_default()
}

#[derive(Clone, Debug)]
pub struct OverlatticeClass {
    pub representative: IsotropicSubmodule,
    pub orbit_size: usize,
    pub degree: u64,
    pub full_support: bool,
    pub overlattice: Overlattice,
}

/// Orbits of nonzero isotropic submodules under sign changes, unit scalings and
/// permutations of equally labelled coordinates, with the overlattice of each.
pub fn classify_overlattices(space: &GlueSpace) -> Result<Vec<OverlatticeClass>> {
    let p3 = label_permutations(&space.f3_labels);
    let p4 = label_permutations(&space.f4_labels);
    let mut orbits: BTreeMap<IsotropicSubmodule, (IsotropicSubmodule, usize)> = BTreeMap::new();
    for sub in isotropic_submodules(space) {
        if sub.order() == 1 {
            continue;
        }
        let key = IsotropicSubmodule { f3: canonical3(space, &sub.f3, &p3), f4: canonical4(space, &sub.f4, &p4) };
        let e = orbits.entry(key).or_insert((sub.clone(), 0));
        e.1 += 1;
    }
    let (a, b) = (space.form.f3_signs.len(), space.form.f4_rank());
    let mut out = Vec::new();
    for (key, (_, size)) in orbits {
        let ov = overlattice(&space.lattice, &space.lift(&key))?;
        out.push(OverlatticeClass {
            full_support: key.full_support(a, b),
            degree: ov.degree,
            representative: key,
            orbit_size: size,
            overlattice: ov,
        });
    }
    Ok(out)
}

/// Number of isotropic lines (one-dimensional submodules) in the discriminant form.
pub fn isotropic_line_count(space: &GlueSpace) -> usize {
    isotropic_submodules(space).iter().filter(|s| s.f3.len() + s.f4.len() == 1).count()
}

/// `psi(k) = ceil((k1 - k2)_+ / 2) + k2 + k3 + k4`.
pub fn psi(k: [usize; 4]) -> usize {
    let d = k[0].saturating_sub(k[1]);
    d.div_ceil(2) + k[1] + k[2] + k[3]
}

/// Rank of `k1 L1 + k2 L2 + k3 L3 + k4 L4`.
pub fn chain_rank(k: [usize; 4]) -> usize {
    k[0] + 2 * k[1] + 3 * k[2] + 4 * k[3]
}

/// The corank `4 psi - rank` by cases.
pub fn corank_by_cases(k: [usize; 4]) -> i64 {
    let (k1, k2, k3) = (k[0] as i64, k[1] as i64, k[2] as i64);
    if k1 <= k2 {
        -k1 + 2 * k2 + k3
    } else if (k1 - k2) % 2 == 0 {
        k1 + k3
    } else {
        k1 + k3 + 2
    }
}

/// `r1 - theta r2 - 2 r3 + theta r4`, the 3-vector of `L4` orthogonal to `r1, r2, r3`.
pub fn l4_complement_root() -> Vec<Eis> {
    vec![Eis::ONE, -Eis::THETA, Eis::from(-2), Eis::THETA]
}

/// One piece placed inside its own copy of `L4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Piece {
    L1,
    TwoL1,
    L2,
    L1L2,
    L3,
    L4,
}

impl Piece {
    /// Columns in the coordinates of one `L4`, listing the L1 part before the L2 part.
    fn columns(self) -> Vec<Vec<Eis>> {
        let e = |i: usize| {
            let mut v = vec![Eis::ZERO; 4];
            v[i] = Eis::ONE;
            v
        };
        match self {
            Piece::L1 => vec![e(0)],
            Piece::TwoL1 => vec![e(0), e(2)],
            Piece::L2 => vec![e(0), e(1)],
            Piece::L1L2 => vec![l4_complement_root(), e(0), e(1)],
            Piece::L3 => vec![e(0), e(1), e(2)],
            Piece::L4 => (0..4).map(e).collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct StandardEmbedding {
    pub k: [usize; 4],
    pub host: HermitianLattice,
    pub sub: HermitianLattice,
    /// Columns in host coordinates, ordered as `k1 L1 + k2 L2 + k3 L3 + k4 L4`.
    pub matrix: EisMatrix,
}

/// Embeds `k1 L1 + k2 L2 + k3 L3 + k4 L4` into `psi(k) L4`, one piece per copy of `L4`.
pub fn standard_embedding(k: [usize; 4]) -> Result<StandardEmbedding> {
    let (k1, k2, k3, k4) = (k[0], k[1], k[2], k[3]);
    let mut pieces = Vec::new();
    if k1 <= k2 {
        pieces.extend(std::iter::repeat_n(Piece::L1L2, k1));
        pieces.extend(std::iter::repeat_n(Piece::L2, k2 - k1));
    } else {
        pieces.extend(std::iter::repeat_n(Piece::L1L2, k2));
        let d = k1 - k2;
        pieces.extend(std::iter::repeat_n(Piece::TwoL1, d / 2));
        if d % 2 == 1 {
            pieces.push(Piece::L1);
        }
    }
    pieces.extend(std::iter::repeat_n(Piece::L3, k3));
    pieces.extend(std::iter::repeat_n(Piece::L4, k4));
    let m = pieces.len();
    debug_assert_eq!(m, psi(k));
    let n = 4 * m;
    // collect columns per summand type to get the order L1s, L2s, L3s, L4s
    let mut by_type: [Vec<Vec<Eis>>; 4] = Default::default();
    for (b, p) in pieces.iter().enumerate() {
        let place = |v: Vec<Eis>| {
            let mut out = vec![Eis::ZERO; n];
            out[4 * b..4 * b + 4].copy_from_slice(&v);
            out
        };
        let cols = p.columns();
        match p {
            Piece::L1 => by_type[0].push(place(cols[0].clone())),
            Piece::TwoL1 => cols.into_iter().for_each(|c| by_type[0].push(place(c))),
            Piece::L2 => cols.into_iter().for_each(|c| by_type[1].push(place(c))),
            Piece::L1L2 => {
                by_type[0].push(place(cols[0].clone()));
                by_type[1].push(place(cols[1].clone()));
                by_type[1].push(place(cols[2].clone()));
            }
            Piece::L3 => cols.into_iter().for_each(|c| by_type[2].push(place(c))),
            Piece::L4 => cols.into_iter().for_each(|c| by_type[3].push(place(c))),
        }
    }
    let cols: Vec<Vec<Eis>> = by_type.into_iter().flatten().collect();
    let host_parts = vec![zoo::l(4); m];
    let host = HermitianLattice::orthogonal_sum(&host_parts.iter().collect::<Vec<_>>());
    let matrix = if cols.is_empty() { EisMatrix::zeros(n, 0) } else { EisMatrix::from_cols(&cols) };
    let mut sub_parts = Vec::new();
    for (i, &c) in k.iter().enumerate() {
        for _ in 0..c {
            sub_parts.push(zoo::l(i + 1));
        }
    }
    let sub = HermitianLattice::orthogonal_sum(&sub_parts.iter().collect::<Vec<_>>());
    Ok(StandardEmbedding { k, host, sub, matrix })
}

/// Invariants used to compare lattices that are not positive definite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Invariants {
    pub rank: usize,
    pub signature: (usize, usize),
    pub disc_order: u64,
    pub f3_plus: usize,
    pub f3_minus: usize,
    pub f4_rank: usize,
}

pub fn invariants(l: &HermitianLattice) -> Result<Invariants> {
    let s = l.signature();
    let f = disc_form(l)?;
    Ok(Invariants {
        rank: l.rank(),
        signature: (s.pos, s.neg),
        disc_order: f.order(),
        f3_plus: f.f3_signs.iter().filter(|&&x| x > 0).count(),
        f3_minus: f.f3_signs.iter().filter(|&&x| x < 0).count(),
        f4_rank: f.f4_rank(),
    })
}

/// Counts of each isotropic-submodule order, for reports.
pub fn submodule_profile(space: &GlueSpace) -> HashMap<u64, usize> {
    let mut out = HashMap::new();
    for s in isotropic_submodules(space) {
        *out.entry(s.order()).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::find_isometry;

    fn space(s: &str) -> GlueSpace {
        GlueSpace::from_expr(&zoo::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn l1_l1_has_no_glue() {
        assert!(classify_overlattices(&space("2*L1")).unwrap().is_empty());
    }

    #[test]
    fn l1_l3_glues_to_l4() {
        let c = classify_overlattices(&space("L1 + L3")).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].degree, 3);
        assert!(find_isometry(&zoo::l(4), &c[0].overlattice.lattice).unwrap().is_some());
    }

    #[test]
    fn hull_and_complement() {
        let l4 = zoo::l(4);
        let sub = EisMatrix::from_cols(&[vec![Eis::ONE, Eis::ZERO, Eis::ZERO, Eis::ZERO]]);
        assert!(is_primitive(&sub).unwrap());
        let c = orthogonal_complement(&l4, &sub);
        assert_eq!(c.cols, 3);
        let comp = sublattice(&l4, &c).unwrap();
        assert!(find_isometry(&zoo::l(3), &comp).unwrap().is_some());
        let three = EisMatrix::from_cols(&[vec![Eis::from(3), Eis::ZERO, Eis::ZERO, Eis::ZERO]]);
        assert_eq!(primitive_hull(&three).unwrap().degree, 9);
    }

    #[test]
    fn psi_cases() {
        assert_eq!(psi([1, 0, 0, 0]), 1);
        assert_eq!(psi([2, 0, 0, 0]), 1);
        assert_eq!(psi([3, 0, 0, 0]), 2);
        assert_eq!(psi([1, 1, 0, 0]), 1);
        assert_eq!(psi([0, 0, 0, 3]), 3);
    }
}
