//! The thirteen orbit types of sublattices `p L3 + q L4` (with their non-primitive variants)
//! inside `L^A = 3 L4 + H`, each with an explicit representative.

use serde::Serialize;

use crate::eisenstein::Eis;
use crate::error::Result;
use crate::glue::{invariants, l4_complement_root, orthogonal_complement, primitive_hull, sublattice, Invariants};
use crate::lattice::HermitianLattice;
use crate::matrix::EisMatrix;
use crate::witnesses::{named_witness, three_l3};
use crate::zoo;

const N: usize = 14;

fn block(b: usize, v: &[Eis]) -> Vec<Eis> {
    let mut out = vec![Eis::ZERO; N];
    out[4 * b..4 * b + v.len()].copy_from_slice(v);
    out
}

fn unit4(i: usize) -> Vec<Eis> {
    let mut v = vec![Eis::ZERO; 4];
    v[i] = Eis::ONE;
    v
}

fn l3_in(b: usize) -> Vec<Vec<Eis>> {
    (0..3).map(|i| block(b, &unit4(i))).collect()
}

fn l4_in(b: usize) -> Vec<Vec<Eis>> {
    (0..4).map(|i| block(b, &unit4(i))).collect()
}

/// The `(3L3)'` construction moved into blocks 1, 2 and `H`, with its complement vector `s`.
fn three_l3_in_la() -> (Vec<Vec<Eis>>, Vec<Eis>) {
    let t = three_l3();
    let shift = |v: Vec<Eis>| {
        let mut out = vec![Eis::ZERO; N];
        out[4..].copy_from_slice(&v);
        out
    };
    let cols = (0..t.sub.cols).map(|j| shift(t.sub.col(j))).collect();
    let comp = orthogonal_complement(&t.host, &t.sub);
    (cols, shift(comp.col(0)))
}

/// A fourth `L3` orthogonal to `(3L3)'`, inside block 0 plus the line through `s`, taken
/// from the isometry `L3 + H -> L4 + L1(-1)`.
fn fourth_l3(s: &[Eis]) -> Result<Vec<Vec<Eis>>> {
    let inv = named_witness("peculiar_2")?.matrix.inverse()?;
    Ok((0..3)
        .map(|j| {
            let mut v = vec![Eis::ZERO; N];
            for i in 0..4 {
                v[i] = inv[(i, j)];
            }
            for (x, &y) in v.iter_mut().zip(s) {
                *x += inv[(4, j)] * y;
            }
            v
        })
        .collect())
}

#[derive(Clone, Debug)]
pub struct SimplexRep {
    pub label: &'static str,
    /// Summand type, as an expression, in column order.
    pub summands: String,
    /// Columns in the coordinates of `L^A`.
    pub sub: EisMatrix,
    pub expected_hull_degree: u64,
    /// The lattice whose invariants the complement should share.
    pub expected_complement: String,
}

fn chain_expr(p: usize, q: usize) -> String {
    let mut parts = Vec::new();
    if p > 0 {
        parts.push(format!("{p}*L3"));
    }
    if q > 0 {
        parts.push(format!("{q}*L4"));
    }
    parts.join(" + ")
}

pub const LABELS: [&str; 13] =
    ["L3", "2L3", "3L3", "(3L3)'", "(3L3)'+L3", "(4L3)'", "L4", "L3+L4", "2L3+L4", "(3L3)'+L4", "2L4", "L3+2L4", "3L4"];

pub fn representatives() -> Result<Vec<SimplexRep>> {
    let mut out = Vec::new();
    let plain = |label: &'static str, p: usize, q: usize| {
        let mut cols = Vec::new();
        for b in 0..p {
            cols.extend(l3_in(b));
        }
        for b in p..p + q {
            cols.extend(l4_in(b));
        }
        let mut comp = Vec::new();
        if p > 0 {
            comp.push(format!("{p}*L1"));
        }
        if p + q < 3 {
            comp.push(format!("{}*L4", 3 - p - q));
        }
        comp.push("H".to_string());
        SimplexRep {
            label,
            summands: chain_expr(p, q),
            sub: EisMatrix::from_cols(&cols),
            expected_hull_degree: 1,
            expected_complement: comp.join(" + "),
        }
    };
    let (t3, s) = three_l3_in_la();
    let primed = |label: &'static str, extra: Vec<Vec<Eis>>, summands: &str, degree: u64, comp: &str| {
        let mut cols = t3.clone();
        cols.extend(extra);
        SimplexRep {
            label,
            summands: summands.to_string(),
            sub: EisMatrix::from_cols(&cols),
            expected_hull_degree: degree,
            expected_complement: comp.to_string(),
        }
    };
    for label in LABELS {
        let rep = match label {
            "L3" => plain(label, 1, 0),
            "2L3" => plain(label, 2, 0),
            "3L3" => plain(label, 3, 0),
            "L4" => plain(label, 0, 1),
            "L3+L4" => plain(label, 1, 1),
            "2L3+L4" => plain(label, 2, 1),
            "2L4" => plain(label, 0, 2),
            "L3+2L4" => plain(label, 1, 2),
            "3L4" => plain(label, 0, 3),
            "(3L3)'" => primed(label, vec![], "3*L3", 3, "L4 + L1(-1)"),
            "(3L3)'+L3" => primed(label, l3_in(0), "4*L3", 3, "L1 + L1(-1)"),
            "(3L3)'+L4" => primed(label, l4_in(0), "3*L3 + L4", 3, "L1(-1)"),
            "(4L3)'" => primed(label, fourth_l3(&s)?, "4*L3", 9, "H"),
            _ => unreachable!(),
        };
        out.push(rep);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct SimplexCheck {
    pub label: String,
    pub gram_ok: bool,
    pub hull_degree: u64,
    pub expected_hull_degree: u64,
    pub complement: Invariants,
    pub expected_complement: Invariants,
    /// Set for the degree-9 type: rank, determinant and evenness of the underlying Z-lattice
    /// of the primitive hull.
    pub hull_z: Option<(usize, i64, bool)>,
}

impl SimplexCheck {
    pub fn ok(&self) -> bool {
        self.gram_ok
            && self.hull_degree == self.expected_hull_degree
            && self.complement == self.expected_complement
            && self.hull_z.is_none_or(|z| z == (24, 1, true))
    }
}

pub fn check(rep: &SimplexRep) -> Result<SimplexCheck> {
    let la = zoo::l_a();
    let gram_ok = la.gram_of(&rep.sub) == *zoo::make(&rep.summands)?.gram();
    let hull = primitive_hull(&rep.sub)?;
    let comp = sublattice(&la, &orthogonal_complement(&la, &rep.sub))?;
    let hull_z = if rep.expected_hull_degree == 9 {
        let h = sublattice(&la, &hull.basis)?;
        let z = h.z_gram();
        let det = i64::try_from(h.z_det()).unwrap_or(0);
        Some((z.len(), det, z.iter().enumerate().all(|(i, r)| r[i] % 2 == 0)))
    } else {
        None
    };
    Ok(SimplexCheck {
        label: rep.label.to_string(),
        gram_ok,
        hull_degree: hull.degree,
        expected_hull_degree: rep.expected_hull_degree,
        complement: invariants(&comp)?,
        expected_complement: invariants(&zoo::make(&rep.expected_complement)?)?,
        hull_z,
    })
}

pub fn check_all() -> Result<Vec<SimplexCheck>> {
    representatives()?.iter().map(check).collect()
}

/// The `L1` complement of `L3` in one `L4` block, used by callers that need it explicitly.
pub fn block_root(b: usize) -> Vec<Eis> {
    block(b, &l4_complement_root())
}

pub fn host() -> HermitianLattice {
    zoo::l_a()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thirteen_distinct_labels() {
        let reps = representatives().unwrap();
        assert_eq!(reps.len(), 13);
        let mut l: Vec<_> = reps.iter().map(|r| r.label).collect();
        l.sort();
        l.dedup();
        assert_eq!(l.len(), 13);
    }

    #[test]
    fn block_root_is_orthogonal_to_block_l3() {
        let la = host();
        let r = block_root(1);
        assert_eq!(la.norm(&r), 3);
        for v in l3_in(1) {
            assert!(la.inner(&r, &v).is_zero());
        }
    }
}
