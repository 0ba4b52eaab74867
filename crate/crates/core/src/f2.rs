//! Quadratic and symplectic vector spaces over F2, the even-subset models `H_E` and
//! `H'_E = H_E / <chi_E>`, Arf invariants, reflections and group orders.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{Perm, PermGroup};

/// A vector of F2^dim as a bit mask (bit `i` is coordinate `i`).
pub type F2Vector = u32;

pub const MAX_DIM: usize = 20;

#[inline]
fn parity(x: u32) -> u8 {
    (x.count_ones() & 1) as u8
}

/// Kernel of the matrix whose rows are the given masks (as functionals on F2^ncols).
pub fn kernel(rows: &[u32], ncols: usize) -> Vec<F2Vector> {
    // reduced row echelon form, then read off the free columns
    let mut r: Vec<u32> = rows.to_vec();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..r.len()).find(|&i| r[i] >> col & 1 == 1) else { continue };
        r.swap(row, p);
        for i in 0..r.len() {
            if i != row && r[i] >> col & 1 == 1 {
                r[i] ^= r[row];
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = 1u32 << free;
        for &(pr, pc) in &pivots {
            if r[pr] >> free & 1 == 1 {
                v |= 1 << pc;
            }
        }
        out.push(v);
    }
    out
}

/// Dimension of the span of `vs`.
pub fn rank(vs: &[F2Vector]) -> usize {
    let mut basis: Vec<u32> = Vec::new();
    for &v in vs {
        let mut x = v;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// All vectors of the span of `basis`.
pub fn span(basis: &[F2Vector]) -> Vec<F2Vector> {
    let mut out = vec![0u32];
    for &b in basis {
        let n = out.len();
        for i in 0..n {
            let v = out[i] ^ b;
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    out
}

/// A vector space with an alternating bilinear form.
#[derive(Clone, Debug)]
pub struct SymplecticSpace {
    pub dim: usize,
    /// `rows[i]` has bit `j` set iff `b(e_i, e_j) = 1`.
    rows: Vec<u32>,
}

impl SymplecticSpace {
    pub fn new(dim: usize, rows: Vec<u32>) -> Result<SymplecticSpace> {
        if dim > MAX_DIM || rows.len() != dim {
            return Err(Error::DimensionMismatch(format!("F2 space of dimension {dim}")));
        }
        for i in 0..dim {
            if rows[i] >> i & 1 == 1 {
                return Err(Error::InvalidConfig("bilinear form is not alternating".into()));
            }
            for j in 0..dim {
                if (rows[i] >> j & 1) != (rows[j] >> i & 1) {
                    return Err(Error::InvalidConfig("bilinear form is not symmetric".into()));
                }
            }
        }
        Ok(SymplecticSpace { dim, rows })
    }

    /// The standard form `sum x_{2i} y_{2i+1} + x_{2i+1} y_{2i}` on F2^(2k).
    pub fn standard(k: usize) -> SymplecticSpace {
        let mut rows = vec![0u32; 2 * k];
        for i in 0..k {
            rows[2 * i] = 1 << (2 * i + 1);
            rows[2 * i + 1] = 1 << (2 * i);
        }
        SymplecticSpace { dim: 2 * k, rows }
    }

    pub fn size(&self) -> usize {
        1 << self.dim
    }

    /// The functional `b(x, .)` as a mask.
    #[inline]
    pub fn functional(&self, x: F2Vector) -> u32 {
        let mut acc = 0u32;
        let mut m = x;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            acc ^= self.rows[i];
            m &= m - 1;
        }
        acc
    }

    #[inline]
    pub fn b(&self, x: F2Vector, y: F2Vector) -> u8 {
        parity(self.functional(x) & y)
    }

    pub fn radical(&self) -> Vec<F2Vector> {
        kernel(&self.rows, self.dim)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.radical().is_empty()
    }

    /// Basis of `{x : b(x, v) = 0 for all v in vs}`.
    pub fn perp(&self, vs: &[F2Vector]) -> Vec<F2Vector> {
        let f: Vec<u32> = vs.iter().map(|&v| self.functional(v)).collect();
        kernel(&f, self.dim)
    }

    /// The transvection `x -> x + b(x, a) a`.
    pub fn transvection(&self, a: F2Vector) -> F2Matrix {
        F2Matrix::from_fn(self.dim, |x| if self.b(x, a) == 1 { x ^ a } else { x })
    }

    pub fn preserves(&self, g: &F2Matrix) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.b(g.cols[i], g.cols[j]) == self.b(1 << i, 1 << j)))
    }
}

/// Records how coordinates correspond to even subsets of `E = {0..n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SubsetModel {
    pub n: usize,
    /// True for `H'_E`, whose vectors are represented by subsets avoiding `n - 1`.
    pub prime: bool,
}

impl SubsetModel {
    pub fn full(&self) -> u32 {
        ((1u64 << self.n) - 1) as u32
    }

    /// Subset of E for a coordinate vector: basis vector `i` is `{i, i+1}`.
    pub fn to_subset(&self, x: F2Vector) -> u32 {
        let mut s = 0u32;
        let mut m = x;
        while m != 0 {
            let i = m.trailing_zeros();
            s ^= 0b11 << i;
            m &= m - 1;
        }
        s
    }

    pub fn from_subset(&self, mut s: u32) -> Result<F2Vector> {
        if s & !self.full() != 0 || s.count_ones() % 2 == 1 {
            return Err(Error::InvalidConfig(format!("{s:#b} is not an even subset of E")));
        }
        if self.prime && s >> (self.n - 1) & 1 == 1 {
            s ^= self.full();
        }
        let dim = if self.prime { self.n - 2 } else { self.n - 1 };
        let mut x = 0u32;
        for j in 1..=dim {
            if (s >> j).count_ones() % 2 == 1 {
                x |= 1 << (j - 1);
            }
        }
        debug_assert_eq!(self.to_subset(x), s);
        Ok(x)
    }

    /// Canonical subset for a vector: in `H'_E` the smaller of the two complements, ties broken
    /// by avoiding the last element.
    pub fn display_subset(&self, x: F2Vector) -> u32 {
        let s = self.to_subset(x);
        if self.prime && (self.n as u32 - s.count_ones()) < s.count_ones() {
            s ^ self.full()
        } else {
            s
        }
    }

    pub fn subset_string(&self, x: F2Vector) -> String {
        let s = self.display_subset(x);
        let el: Vec<String> = (0..self.n).filter(|i| s >> i & 1 == 1).map(|i| i.to_string()).collect();
        format!("{{{}}}", el.join(","))
    }
}

/// Bit mask of a subset of E.
pub fn subset(elems: &[usize]) -> u32 {
    elems.iter().fold(0, |m, &e| m | 1 << e)
}

/// A nonsingular-or-not quadratic form, stored as a value table over all vectors.
#[derive(Clone, Debug)]
pub struct QuadSpace {
    pub sym: SymplecticSpace,
    q: Vec<u8>,
    pub model: Option<SubsetModel>,
}

impl QuadSpace {
    /// `q(x) = sum x_i q_i + sum_{i<j} x_i x_j b_ij`.
    pub fn from_polynomial(sym: SymplecticSpace, diag: F2Vector) -> QuadSpace {
        let n = sym.size();
        let mut q = vec![0u8; n];
        // q(x + e_i) = q(x) + q(e_i) + b(x, e_i), filled in by the lowest set bit
        for x in 1..n as u32 {
            let i = x.trailing_zeros();
            let y = x & (x - 1);
            q[x as usize] = q[y as usize] ^ ((diag >> i) as u8 & 1) ^ sym.b(y, 1 << i);
        }
        QuadSpace { sym, q, model: None }
    }

    /// Orthogonal sum of `k` planes; the first has Arf invariant `arf`, the rest are hyperbolic.
    pub fn standard(k: usize, arf: u8) -> QuadSpace {
        let diag = if arf == 1 && k > 0 { 0b11 } else { 0 };
        QuadSpace::from_polynomial(SymplecticSpace::standard(k), diag)
    }

    pub fn dim(&self) -> usize {
        self.sym.dim
    }

    pub fn size(&self) -> usize {
        self.sym.size()
    }

    #[inline]
    pub fn q(&self, x: F2Vector) -> u8 {
        self.q[x as usize]
    }

    #[inline]
    pub fn b(&self, x: F2Vector, y: F2Vector) -> u8 {
        self.sym.b(x, y)
    }

    pub fn q_table(&self) -> &[u8] {
        &self.q
    }

    pub fn is_nonsingular(&self) -> bool {
        self.sym.is_nondegenerate()
    }

    /// 1 iff `q` takes the value 1 more often than 0.
    pub fn arf(&self) -> Result<u8> {
        if !self.is_nonsingular() {
            return Err(Error::InvalidConfig("Arf invariant of a singular form".into()));
        }
        let (zeros, ones) = self.value_counts();
        Ok(u8::from(ones > zeros))
    }

    /// `(|q^-1(0)|, |q^-1(1)|)`.
    pub fn value_counts(&self) -> (usize, usize) {
        let ones = self.q.iter().filter(|&&v| v == 1).count();
        (self.q.len() - ones, ones)
    }

    pub fn roots(&self) -> Vec<F2Vector> {
        (0..self.size() as u32).filter(|&x| self.q(x) == 1).collect()
    }

    /// `sigma_a(x) = x + b(x, a) a`.
    pub fn reflection(&self, a: F2Vector) -> Result<F2Matrix> {
        if self.q(a) != 1 {
            return Err(Error::InvalidConfig(format!("{a:#b} is not a root")));
        }
        Ok(self.sym.transvection(a))
    }

    pub fn preserves(&self, g: &F2Matrix) -> bool {
        g.dim() == self.dim() && (0..self.dim()).all(|i| self.q(g.cols[i]) == self.q(1 << i)) && self.sym.preserves(g)
    }

    pub fn direct_sum(&self, other: &QuadSpace) -> QuadSpace {
        let d = self.dim();
        let mut rows = self.sym.rows.clone();
        rows.extend(other.sym.rows.iter().map(|r| r << d));
        let sym = SymplecticSpace { dim: d + other.dim(), rows };
        let diag = (0..d).fold(0, |m, i| m | (self.q(1 << i) as u32) << i)
            | (0..other.dim()).fold(0, |m, i| m | (other.q(1 << i) as u32) << (i + d));
        QuadSpace::from_polynomial(sym, diag)
    }

    /// The form restricted to the span of an independent list, in the coordinates of that list.
    pub fn restrict(&self, basis: &[F2Vector]) -> QuadSpace {
        let k = basis.len();
        let rows = (0..k).map(|i| (0..k).fold(0u32, |m, j| m | (self.b(basis[i], basis[j]) as u32) << j)).collect();
        let diag = (0..k).fold(0, |m, i| m | (self.q(basis[i]) as u32) << i);
        QuadSpace::from_polynomial(SymplecticSpace { dim: k, rows }, diag)
    }

    /// Coordinates of `x` in the even-subset model, if there is one.
    pub fn from_subset(&self, s: u32) -> Result<F2Vector> {
        self.model.ok_or_else(|| Error::InvalidConfig("space has no subset model".into()))?.from_subset(s)
    }
}

fn chain_rows(dim: usize) -> Vec<u32> {
    (0..dim)
        .map(|i| {
            let mut r = 0u32;
            if i > 0 {
                r |= 1 << (i - 1);
            }
            if i + 1 < dim {
                r |= 1 << (i + 1);
            }
            r
        })
        .collect()
}

/// `H_E` for `|E| = n`: even subsets, `q(A) = |A|/2 mod 2`, `b(A, B) = |A cap B| mod 2`.
pub fn h_e(n: usize) -> Result<QuadSpace> {
    if !(2..=MAX_DIM + 1).contains(&n) {
        return Err(Error::DimensionMismatch(format!("|E| = {n}")));
    }
    let sym = SymplecticSpace::new(n - 1, chain_rows(n - 1))?;
    let mut s = QuadSpace::from_polynomial(sym, ((1u64 << (n - 1)) - 1) as u32);
    s.model = Some(SubsetModel { n, prime: false });
    Ok(s)
}

/// `H'_E = H_E / <chi_E>` as a symplectic space; defined for even `n`.
pub fn h_e_prime_symplectic(n: usize) -> Result<SymplecticSpace> {
    if n < 2 || n % 2 == 1 || n > MAX_DIM + 2 {
        return Err(Error::DimensionMismatch(format!("H'_E needs |E| even, got {n}")));
    }
    SymplecticSpace::new(n - 2, chain_rows(n - 2))
}

/// `H'_E` with its quadratic form, which exists only when `4 | n`.
pub fn h_e_prime(n: usize) -> Result<QuadSpace> {
    let sym = h_e_prime_symplectic(n)?;
    if !n.is_multiple_of(4) {
        return Err(Error::NoQuadraticForm(format!("q(chi_E) = 1 for |E| = {n}")));
    }
    let mut s = QuadSpace::from_polynomial(sym, ((1u64 << (n - 2)) - 1) as u32);
    s.model = Some(SubsetModel { n, prime: true });
    Ok(s)
}

/// A linear map of F2^dim given by the images of the basis vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Matrix {
    pub cols: Vec<u32>,
}

impl F2Matrix {
    pub fn identity(dim: usize) -> F2Matrix {
        F2Matrix { cols: (0..dim).map(|i| 1 << i).collect() }
    }

    pub fn from_fn(dim: usize, f: impl Fn(F2Vector) -> F2Vector) -> F2Matrix {
        F2Matrix { cols: (0..dim).map(|i| f(1 << i)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    #[inline]
    pub fn apply(&self, x: F2Vector) -> F2Vector {
        let mut acc = 0u32;
        let mut m = x;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            acc ^= self.cols[i];
            m &= m - 1;
        }
        acc
    }

    /// `self` then `other`.
    pub fn then(&self, other: &F2Matrix) -> F2Matrix {
        F2Matrix { cols: self.cols.iter().map(|&c| other.apply(c)).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.cols.iter().enumerate().all(|(i, &c)| c == 1 << i)
    }

    pub fn is_invertible(&self) -> bool {
        rank(&self.cols) == self.dim()
    }

    /// The permutation of all `2^dim` vectors.
    pub fn to_perm(&self) -> Perm {
        Perm((0..1u32 << self.dim()).map(|x| self.apply(x)).collect())
    }

    pub fn from_perm(dim: usize, p: &Perm) -> F2Matrix {
        F2Matrix { cols: (0..dim).map(|i| p.apply(1 << i)).collect() }
    }
}

/// Stabilizer chain for a group of linear maps, acting on all vectors.
pub fn matrix_group(dim: usize, gens: &[F2Matrix], base_prefix: &[F2Vector]) -> Result<PermGroup> {
    let perms: Vec<Perm> = gens.iter().map(|g| g.to_perm()).collect();
    let mut prefix = base_prefix.to_vec();
    // then the coordinate vectors, which determine a linear map
    for i in 0..dim {
        prefix.push(1 << i);
    }
    PermGroup::with_base(1 << dim, &perms, &prefix)
}

/// Classical order of `Sp_{2k}(F2)`.
pub fn sp_order_formula(dim: usize) -> u128 {
    let k = dim as u32 / 2;
    (1..=k).fold(1u128 << (k * k), |acc, i| acc * ((1u128 << (2 * i)) - 1))
}

/// Classical order of the orthogonal group of a nonsingular form of dimension `2k`
/// with Arf invariant `arf`: `2 * 2^(k(k-1)) * (2^k - e) * prod_{i<k} (2^(2i) - 1)`,
/// `e = +1` for Arf 0 and `-1` for Arf 1.
pub fn orth_order_formula(dim: usize, arf: u8) -> u128 {
    let k = dim as u32 / 2;
    let top = if arf == 0 { (1u128 << k) - 1 } else { (1u128 << k) + 1 };
    (1..k).fold(2 * (1u128 << (k * (k - 1))) * top, |acc, i| acc * ((1u128 << (2 * i)) - 1))
}

/// Calls `f` with the images of `basis` under every isometry that maps `basis[i]` to
/// `fixed[i]` for `i < fixed.len()`. Candidates are checked against `q` when given and
/// against `b` always; returns the number of isometries.
pub fn for_each_isometry(
    sym: &SymplecticSpace,
    q: Option<&[u8]>,
    basis: &[F2Vector],
    fixed: &[F2Vector],
    mut f: impl FnMut(&[F2Vector]),
) -> u64 {
    let d = basis.len();
    let gram: Vec<Vec<u8>> = (0..d).map(|i| (0..d).map(|j| sym.b(basis[i], basis[j])).collect()).collect();
    let qs: Vec<u8> = basis.iter().map(|&v| q.map_or(0, |t| t[v as usize])).collect();
    let mut imgs = Vec::with_capacity(d);
    let mut count = 0u64;
    #[allow(clippy::too_many_arguments)]
    fn rec(
        sym: &SymplecticSpace,
        q: Option<&[u8]>,
        gram: &[Vec<u8>],
        qs: &[u8],
        fixed: &[F2Vector],
        imgs: &mut Vec<F2Vector>,
        count: &mut u64,
        f: &mut dyn FnMut(&[F2Vector]),
    ) {
        let i = imgs.len();
        if i == gram.len() {
            *count += 1;
            f(imgs);
            return;
        }
        let fun: Vec<u32> = imgs.iter().map(|&w| sym.functional(w)).collect();
        let check = |w: F2Vector| {
            q.is_none_or(|t| t[w as usize] == qs[i])
                && fun.iter().enumerate().all(|(j, &fj)| parity(fj & w) == gram[j][i])
        };
        if i < fixed.len() {
            if check(fixed[i]) {
                imgs.push(fixed[i]);
                rec(sym, q, gram, qs, fixed, imgs, count, f);
                imgs.pop();
            }
            return;
        }
        for w in 1..sym.size() as u32 {
            if check(w) {
                imgs.push(w);
                rec(sym, q, gram, qs, fixed, imgs, count, f);
                imgs.pop();
            }
        }
    }
    rec(sym, q, &gram, &qs, fixed, &mut imgs, &mut count, &mut f);
    count
}

/// Extends the independent list `start` to a basis of the span of `start` and `more`.
pub fn extend_basis(start: &[F2Vector], more: &[F2Vector]) -> Vec<F2Vector> {
    let mut out = start.to_vec();
    for &v in more {
        let mut cand = out.clone();
        cand.push(v);
        if rank(&cand) == cand.len() {
            out = cand;
        }
    }
    out
}

/// Enumeration-based check of `1 -> <sigma_a> -> Orth(q)_a -> Sp(a^perp / a) -> 1`.
#[derive(Clone, Debug, Serialize)]
pub struct ReflectionCentralizer {
    pub dim: usize,
    pub arf: u8,
    pub root_orbit: usize,
    pub stabilizer_order: u128,
    pub kernel_order: u128,
    pub image_order: u128,
    pub sp_order: u128,
    pub orth_order: u128,
    pub orth_formula: u128,
    pub sp_formula: u128,
    pub method: &'static str,
}

impl ReflectionCentralizer {
    pub fn ok(&self) -> bool {
        self.kernel_order == 2
            && self.image_order == self.sp_order
            && self.stabilizer_order == 2 * self.sp_order
            && self.stabilizer_order * self.root_orbit as u128 == self.orth_order
            && self.orth_order == self.orth_formula
            && self.sp_order == self.sp_formula
    }
}

/// Basis `(a, u_1, .., u_{d-2}, c)` with `u_i` spanning `a^perp` modulo `a` and `b(a, c) = 1`.
fn adapted_basis(sym: &SymplecticSpace, a: F2Vector) -> Vec<F2Vector> {
    let perp = sym.perp(&[a]);
    let mut basis = extend_basis(&[a], &perp);
    let c = (1..sym.size() as u32).find(|&c| sym.b(a, c) == 1).expect("a is not in the radical");
    basis.push(c);
    basis
}

/// Full enumeration of `Orth(q)_a` and `Sp_{d-2}`, for `dim <= 8`.
pub fn reflection_centralizer_enumerated(s: &QuadSpace) -> Result<ReflectionCentralizer> {
    let d = s.dim();
    if d > 8 {
        return Err(Error::CapExceeded { cap: 8 });
    }
    let arf = s.arf()?;
    let a = *s.roots().first().ok_or_else(|| Error::InvalidConfig("no roots".into()))?;
    let basis = adapted_basis(&s.sym, a);
    // quotient coordinates of a^perp: index the span of u_1..u_{d-2} (a added or not)
    let u = &basis[1..d - 1];
    let mut quot: HashMap<F2Vector, u32> = HashMap::new();
    for c in 0..1u32 << (d - 2) {
        let v = (0..d - 2).filter(|&i| c >> i & 1 == 1).fold(0, |m, i| m ^ u[i]);
        quot.insert(v, c);
        quot.insert(v ^ a, c);
    }
    let mut images: HashMap<u64, u32> = HashMap::new();
    let stab = for_each_isometry(&s.sym, Some(s.q_table()), &basis, &[a], |img| {
        let key = img[1..d - 1].iter().fold(0u64, |k, w| (k << 8) | quot[w] as u64);
        *images.entry(key).or_insert(0) += 1;
    });
    let id_key = (0..d - 2).fold(0u64, |k, i| (k << 8) | 1 << i);
    let kernel = images.get(&id_key).copied().unwrap_or(0) as u128;
    let sp = SymplecticSpace::standard((d - 2) / 2);
    let sp_basis: Vec<u32> = (0..d - 2).map(|i| 1 << i).collect();
    let sp_order = for_each_isometry(&sp, None, &sp_basis, &[], |_| {}) as u128;
    // reflections do not generate Orth(q) in dimension 4 with Arf 0, so small groups are
    // enumerated outright
    let (orbit, orth) = if d <= 6 {
        let std_basis: Vec<u32> = (0..d).map(|i| 1 << i).collect();
        let mut orbit = std::collections::BTreeSet::new();
        let n = for_each_isometry(&s.sym, Some(s.q_table()), &std_basis, &[], |img| {
            orbit.insert((0..d).filter(|&i| a >> i & 1 == 1).fold(0, |m, i| m ^ img[i]));
        });
        (orbit.len(), n as u128)
    } else {
        let refl: Vec<F2Matrix> = s.roots().iter().map(|&r| s.reflection(r).unwrap()).collect();
        let g = matrix_group(d, &refl, &[])?;
        (g.orbit(a).len(), g.order())
    };
    Ok(ReflectionCentralizer {
        dim: d,
        arf,
        root_orbit: orbit,
        stabilizer_order: stab as u128,
        kernel_order: kernel,
        image_order: images.len() as u128,
        sp_order,
        orth_order: orth,
        orth_formula: orth_order_formula(d, arf),
        sp_formula: sp_order_formula(d - 2),
        method: "enumeration",
    })
}

/// The same sequence via stabilizer chains, for the `n = 12` model.
pub fn reflection_centralizer_chain(s: &QuadSpace) -> Result<ReflectionCentralizer> {
    let d = s.dim();
    let arf = s.arf()?;
    let a = *s.roots().first().ok_or_else(|| Error::InvalidConfig("no roots".into()))?;
    let gens = orthogonal_generators(s)?;
    let g = matrix_group(d, &gens, &[a])?;
    let orbit = g.orbit_lengths()[0];
    let stab = g.stabilizer_order(1);
    // kernel: elements fixing a and sending each u_i to u_i or u_i + a; each admissible
    // image of the prefix (a, u_1, .., u_{d-2}) contributes a coset of its stabilizer
    let basis = adapted_basis(&s.sym, a);
    let kernel_chain = matrix_group(d, &gens, &basis[..d - 1])?;
    let mut kernel = 0u128;
    for c in 0..1u32 << (d - 2) {
        let target: Vec<F2Vector> = std::iter::once(a)
            .chain((0..d - 2).map(|i| if c >> i & 1 == 1 { basis[i + 1] ^ a } else { basis[i + 1] }))
            .collect();
        if kernel_chain.element_mapping_base(&target).is_some() {
            kernel += kernel_chain.stabilizer_order(d - 1);
        }
    }
    let sp = SymplecticSpace::standard((d - 2) / 2);
    let transvections: Vec<F2Matrix> = (1..sp.size() as u32).map(|v| sp.transvection(v)).collect();
    let sp_order = matrix_group(d - 2, &transvections, &[])?.order();
    Ok(ReflectionCentralizer {
        dim: d,
        arf,
        root_orbit: orbit,
        stabilizer_order: stab,
        kernel_order: kernel,
        image_order: stab / kernel.max(1),
        sp_order,
        orth_order: g.order(),
        orth_formula: orth_order_formula(d, arf),
        sp_formula: sp_order_formula(d - 2),
        method: "stabilizer chain",
    })
}

/// Generators of `Orth(q)`: for the subset models the reflections in the chain roots
/// `{i, i+1}` together with one root of a different shape, otherwise all reflections.
pub fn orthogonal_generators(s: &QuadSpace) -> Result<Vec<F2Matrix>> {
    match s.model {
        Some(m) if m.prime && m.n >= 8 => {
            let mut gens: Vec<F2Matrix> =
                (0..m.n - 1).map(|i| s.reflection(s.from_subset(subset(&[i, i + 1]))?)).collect::<Result<_>>()?;
            let half: Vec<usize> = (0..m.n / 2).collect();
            gens.push(s.reflection(s.from_subset(subset(&half))?)?);
            Ok(gens)
        }
        _ => s.roots().iter().map(|&r| s.reflection(r)).collect(),
    }
}

/// Order of `Orth(q)` from a stabilizer chain, with every reflection checked to lie in the
/// group generated by [`orthogonal_generators`].
#[derive(Clone, Debug, Serialize)]
pub struct OrthOrder {
    pub dim: usize,
    pub arf: u8,
    pub chain_order: u128,
    pub formula: u128,
    pub generators: usize,
    pub reflections_sifted: usize,
    pub all_reflections_member: bool,
}

impl OrthOrder {
    pub fn ok(&self) -> bool {
        self.chain_order == self.formula && self.all_reflections_member
    }
}

pub fn orth_order(s: &QuadSpace) -> Result<OrthOrder> {
    if s.dim() > 12 {
        return Err(Error::CapExceeded { cap: 12 });
    }
    let arf = s.arf()?;
    let gens = orthogonal_generators(s)?;
    let g = matrix_group(s.dim(), &gens, &[])?;
    let roots = s.roots();
    let all = roots.iter().all(|&r| g.contains(&s.reflection(r).unwrap().to_perm()));
    Ok(OrthOrder {
        dim: s.dim(),
        arf,
        chain_order: g.order(),
        formula: orth_order_formula(s.dim(), arf),
        generators: gens.len(),
        reflections_sifted: roots.len(),
        all_reflections_member: all,
    })
}

/// One row of the classification of `H_E` by `|E|`.
#[derive(Clone, Debug, Serialize)]
pub struct ArfRow {
    pub n: usize,
    pub dim: usize,
    pub radical_dim: usize,
    /// `q(chi_E)` when `chi_E` spans the radical.
    pub q_chi: Option<u8>,
    /// Arf of `H_E` (odd n), of `H'_E` (n = 4m), or of the complement `H_{E - e}` (n = 4m+2).
    pub arf: u8,
    pub expected_arf: u8,
    pub shape: String,
    pub ok: bool,
}

pub fn arf_row(n: usize) -> Result<ArfRow> {
    let h = h_e(n)?;
    let model = h.model.unwrap();
    let rad = h.sym.radical();
    let chi = model.from_subset(model.full()).ok();
    let m = (n + 1) / 4;
    let expected_arf = (m % 2) as u8;
    let row = match n % 4 {
        1 | 3 => {
            let arf = h.arf()?;
            ArfRow {
                n,
                dim: h.dim(),
                radical_dim: rad.len(),
                q_chi: None,
                arf,
                expected_arf,
                shape: format!("A{} nonsingular", n - 1),
                ok: rad.is_empty() && arf == expected_arf,
            }
        }
        0 => {
            let hp = h_e_prime(n)?;
            let arf = hp.arf()?;
            let c = chi.unwrap();
            ArfRow {
                n,
                dim: h.dim(),
                radical_dim: rad.len(),
                q_chi: Some(h.q(c)),
                arf,
                expected_arf,
                shape: format!("H' of type A{}", n - 2),
                ok: rad == vec![c] && h.q(c) == 0 && arf == expected_arf && hp.dim() == n - 2,
            }
        }
        _ => {
            let c = chi.unwrap();
            // complement: the subsets avoiding the last element, a copy of A_{n-2}
            let w: Vec<F2Vector> = (0..n - 2).map(|i| 1 << i).collect();
            let sub = h.restrict(&w);
            let arf = sub.arf()?;
            let split = rank(&[w.clone(), vec![c]].concat()) == h.dim();
            ArfRow {
                n,
                dim: h.dim(),
                radical_dim: rad.len(),
                q_chi: Some(h.q(c)),
                arf,
                expected_arf,
                shape: format!("A1 + A{}", n - 2),
                ok: rad == vec![c]
                    && h.q(c) == 1
                    && split
                    && arf == expected_arf
                    && matches!(h_e_prime(n), Err(Error::NoQuadraticForm(_))),
            }
        }
    };
    Ok(row)
}

pub fn arf_table(range: std::ops::RangeInclusive<usize>) -> Result<Vec<ArfRow>> {
    range.map(arf_row).collect()
}

/// Root count of `H'_E` for `|E| = 12`, split into 2-subsets and 6+6 partitions.
#[derive(Clone, Debug, Serialize)]
pub struct RootCount {
    pub total: usize,
    pub two_subsets: usize,
    pub partitions: usize,
    pub zeros: usize,
    pub ones: usize,
    pub arf: u8,
}

pub fn root_count_12() -> Result<RootCount> {
    let s = h_e_prime(12)?;
    let m = s.model.unwrap();
    let roots = s.roots();
    let two = roots.iter().filter(|&&r| m.display_subset(r).count_ones() == 2).count();
    let six = roots.iter().filter(|&&r| m.to_subset(r).count_ones() == 6).count();
    let (zeros, ones) = s.value_counts();
    Ok(RootCount { total: roots.len(), two_subsets: two, partitions: six, zeros, ones, arf: s.arf()? })
}

/// `beta_1 = chi_C + f_1, beta_i = f_i + f_{i-1}` is an A-type root basis of `H_C^perp` when
/// `|C| = 1 mod 4`, `C` a proper subset of E.
pub fn splitting_holds(n: usize, c: usize) -> Result<bool> {
    let h = h_e(n)?;
    let m = h.model.unwrap();
    let cset: Vec<usize> = (0..c).collect();
    let f: Vec<usize> = (c..n).collect();
    let mut beta = vec![h.from_subset(subset(&cset) | 1 << f[0])?];
    for i in 1..f.len() {
        beta.push(h.from_subset(subset(&[f[i - 1], f[i]]))?);
    }
    let hc: Vec<F2Vector> = (1..c).map(|i| m.from_subset(subset(&[i - 1, i]))).collect::<Result<_>>()?;
    let chain = (0..beta.len()).all(|i| {
        h.q(beta[i]) == 1
            && (0..beta.len()).all(|j| h.b(beta[i], beta[j]) == u8::from(i.abs_diff(j) == 1))
            && hc.iter().all(|&x| h.b(x, beta[i]) == 0)
    });
    let perp_dim = h.sym.perp(&hc).len();
    Ok(chain && rank(&beta) == beta.len() && perp_dim == beta.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn small_models() {
        let a2 = h_e(3).unwrap();
        assert!(a2.is_nonsingular());
        assert_eq!(a2.arf().unwrap(), 1);
        assert!(a2.roots().len() == 3);
        let a4 = h_e(5).unwrap();
        assert_eq!(a4.arf().unwrap(), 1);
        assert_eq!(QuadSpace::standard(1, 0).arf().unwrap(), 0);
        assert_eq!(QuadSpace::standard(1, 0).value_counts(), (3, 1));
        assert!(matches!(h_e_prime(10), Err(Error::NoQuadraticForm(_))));
        assert!(h_e_prime_symplectic(10).unwrap().is_nondegenerate());
        assert!(h_e(4).unwrap().arf().is_err());
    }

    #[test]
    fn subset_round_trip() {
        let m = SubsetModel { n: 12, prime: true };
        for x in 0..1024u32 {
            assert_eq!(m.from_subset(m.to_subset(x)).unwrap(), x);
            assert_eq!(m.from_subset(m.to_subset(x) ^ m.full()).unwrap(), x);
        }
        let s = h_e_prime(12).unwrap();
        // q is half the size mod 2, b the intersection parity
        for x in 0..1024u32 {
            assert_eq!(s.q(x) as u32, m.to_subset(x).count_ones() / 2 % 2);
            for y in [1u32, 5, 77, 1000] {
                assert_eq!(s.b(x, y) as u32, (m.to_subset(x) & m.to_subset(y)).count_ones() % 2);
            }
        }
    }

    #[test]
    fn dim10_counts() {
        let r = root_count_12().unwrap();
        assert_eq!((r.total, r.two_subsets, r.partitions), (528, 66, 462));
        assert_eq!((r.zeros, r.ones, r.arf), (496, 528, 1));
    }

    #[test]
    fn arf_additivity() {
        let spaces: Vec<QuadSpace> =
            (1..=3).flat_map(|k| [QuadSpace::standard(k, 0), QuadSpace::standard(k, 1)]).collect();
        for x in &spaces {
            for y in &spaces {
                if x.dim() + y.dim() <= 6 {
                    let s = x.direct_sum(y);
                    assert_eq!(s.arf().unwrap(), x.arf().unwrap() ^ y.arf().unwrap());
                }
            }
        }
    }

    #[test]
    fn bilinear_form_is_alternating() {
        for n in 2..=13 {
            let h = h_e(n).unwrap();
            for x in 0..h.size() as u32 {
                assert_eq!(h.b(x, x), 0);
            }
            assert_eq!(h.sym.radical().is_empty(), n % 2 == 1);
        }
    }

    #[test]
    fn reflections_are_involutions() {
        let s = h_e_prime(12).unwrap();
        let roots = s.roots();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        for _ in 0..100 {
            let a = roots[rng.gen_range(0..roots.len())];
            let g = s.reflection(a).unwrap();
            assert!(g.then(&g).is_identity());
            assert!(s.preserves(&g));
            assert_eq!(g.apply(a), a);
            for x in s.sym.perp(&[a]) {
                assert_eq!(g.apply(x), x);
            }
        }
        assert!(s.reflection(0).is_err());
    }

    #[test]
    fn dim4_orthogonal_group_by_brute_force() {
        // every 4x4 matrix, kept if it preserves q
        let s = QuadSpace::standard(2, 1);
        let mut count = 0u128;
        for m in 0..1u32 << 16 {
            let g = F2Matrix { cols: (0..4).map(|i| m >> (4 * i) & 0xf).collect() };
            if g.is_invertible() && (0..16).all(|x| s.q(g.apply(x)) == s.q(x)) {
                count += 1;
            }
        }
        assert_eq!(count, orth_order(&s).unwrap().chain_order);
        assert_eq!(count, orth_order_formula(4, 1));
    }

    #[test]
    fn symmetric_group_image_in_dim10() {
        let s = h_e_prime(12).unwrap();
        let gens: Vec<F2Matrix> =
            (0..11).map(|i| s.reflection(s.from_subset(subset(&[i, i + 1])).unwrap()).unwrap()).collect();
        assert_eq!(matrix_group(10, &gens, &[]).unwrap().order(), crate::perm::factorial(12));
    }

    #[test]
    fn splitting_off_a_subset() {
        for n in 2..=13 {
            for c in [1usize, 5, 9] {
                if c < n {
                    assert!(splitting_holds(n, c).unwrap(), "n={n} c={c}");
                }
            }
        }
    }

    #[test]
    fn kernel_and_rank() {
        let rows = [0b011u32, 0b110];
        let k = kernel(&rows, 3);
        assert_eq!(k, vec![0b111]);
        assert_eq!(rank(&[0b1, 0b10, 0b11]), 2);
        assert_eq!(span(&[0b1, 0b10]).len(), 4);
    }
}
