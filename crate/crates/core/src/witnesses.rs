//! Explicit isometries and embeddings, either written down directly or found by a bounded
//! search and stored as fixtures.

use serde::{Deserialize, Serialize};

use crate::eisenstein::Eis;
use crate::error::{Error, Result};
use crate::glue::{l4_complement_root, orthogonal_complement, primitive_hull, sublattice};
use crate::lattice::{verify_isometry, HermitianLattice, IsometryWitness, LatticeVector, WitnessCheck};
use crate::matrix::{smith_normal_form, EisMatrix};
use crate::zoo;

const FIXTURES: &str = include_str!("../fixtures/witnesses.json");

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchParams {
    /// Largest coordinate norm tried, in increasing stages.
    pub bounds: Vec<i64>,
    pub node_limit: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FixtureFile {
    pub search: SearchParams,
    pub witnesses: Vec<FixtureEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FixtureEntry {
    pub name: String,
    pub bound: i64,
    #[serde(flatten)]
    pub witness: IsometryWitness,
}

pub fn fixtures() -> Result<FixtureFile> {
    serde_json::from_str(FIXTURES).map_err(|e| Error::Fixture(e.to_string()))
}

fn e(a: i64, b: i64) -> Eis {
    Eis::new(a, b)
}

fn add(x: &[Eis], y: &[Eis]) -> Vec<Eis> {
    x.iter().zip(y).map(|(&a, &b)| a + b).collect()
}

fn smul(c: Eis, x: &[Eis]) -> Vec<Eis> {
    x.iter().map(|&a| c * a).collect()
}

fn unit(n: usize, i: usize) -> Vec<Eis> {
    let mut v = vec![Eis::ZERO; n];
    v[i] = Eis::ONE;
    v
}

/// `L4 + H -> L6`: the kernel vector of `L5` and its partner.
pub fn four_period() -> IsometryWitness {
    let kernel = l5_kernel();
    let mut ev = kernel.clone();
    ev.push(Eis::ZERO);
    // f = -wbar e + r6
    let f = add(&smul(-Eis::WBAR, &ev), &unit(6, 5));
    let mut cols: Vec<Vec<Eis>> = (0..4).map(|i| unit(6, i)).collect();
    cols.push(ev);
    cols.push(f);
    IsometryWitness { source: "L4 + H".into(), target: "L6".into(), matrix: EisMatrix::from_cols(&cols) }
}

/// `r1 - theta r2 - 2 r3 + theta r4 + r5`, spanning the kernel of `L5`.
pub fn l5_kernel() -> LatticeVector {
    vec![Eis::ONE, -Eis::THETA, e(-2, 0), Eis::THETA, Eis::ONE]
}

/// `L4 + H(theta) -> L1 + L3 + H`.
pub fn interesting_iso() -> IsometryWitness {
    // target coordinates: r; r1, r2, r3; e, f
    let n = 6;
    let (r, r1, r2, r3, ev, fv) = (unit(n, 0), unit(n, 1), unit(n, 2), unit(n, 3), unit(n, 4), unit(n, 5));
    let r3p = add(&r3, &ev);
    let r4p = add(&fv, &r);
    let u = add(&r, &smul(Eis::THETA, &ev));
    let v = add(&add(&add(&r1, &smul(-Eis::THETA, &r2)), &smul(e(-2, 0), &r3)), &smul(Eis::THETA, &fv));
    let et = add(&u, &smul(Eis::WBAR, &v));
    let ft = add(&smul(Eis::W.scale(-2), &u), &smul(-Eis::ONE, &v));
    IsometryWitness {
        source: "L4 + Ht".into(),
        target: "L1 + L3 + H".into(),
        matrix: EisMatrix::from_cols(&[r1, r2, r3p, r4p, et, ft]),
    }
}

/// `2 L4 + H(theta) -> L1 + L3 + L4 + H`, assembled from the previous isometry.
pub fn ldm_decomposition() -> IsometryWitness {
    let w = interesting_iso().matrix;
    // target coordinates: r; r1..r3; s1..s4 (the L4); e, f
    let n = 10;
    let lift = |col: Vec<Eis>| -> Vec<Eis> {
        let mut out = vec![Eis::ZERO; n];
        out[..4].copy_from_slice(&col[..4]);
        out[8] = col[4];
        out[9] = col[5];
        out
    };
    let mut cols: Vec<Vec<Eis>> = (0..4).map(|j| lift(w.col(j))).collect();
    cols.extend((4..8).map(|i| unit(n, i)));
    cols.push(lift(w.col(4)));
    cols.push(lift(w.col(5)));
    IsometryWitness {
        source: "2*L4 + Ht".into(),
        target: "L1 + L3 + L4 + H".into(),
        matrix: EisMatrix::from_cols(&cols),
    }
}

/// Short vectors named in the corank-one embeddings: host, sublattice columns, and the
/// vector claimed to span the complement.
#[derive(Clone, Debug)]
pub struct CorankOne {
    pub name: &'static str,
    pub host: HermitianLattice,
    pub sub: EisMatrix,
    pub vector: LatticeVector,
    pub norm: i64,
}

pub fn corank_one_vectors() -> Vec<CorankOne> {
    let th = Eis::THETA;
    let r0 = l4_complement_root();
    let cols = |n: usize, vs: &[Vec<Eis>]| -> EisMatrix {
        let _ = n;
        EisMatrix::from_cols(vs)
    };
    let u = |n: usize, i: usize| unit(n, i);
    vec![
        CorankOne {
            name: "2L1 in L3",
            host: zoo::l(3),
            sub: cols(3, &[u(3, 0), u(3, 2)]),
            vector: vec![Eis::ONE, -th, e(-1, 0)],
            norm: 3,
        },
        CorankOne {
            name: "L3 in L4",
            host: zoo::l(4),
            sub: cols(4, &[u(4, 0), u(4, 1), u(4, 2)]),
            vector: r0.clone(),
            norm: 3,
        },
        CorankOne {
            name: "3L1 in L4",
            host: zoo::l(4),
            sub: cols(4, &[u(4, 0), u(4, 2), r0.clone()]),
            vector: vec![Eis::ONE, -th, e(-1, 0), Eis::ZERO],
            norm: 3,
        },
        CorankOne { name: "L1 in L2", host: zoo::l(2), sub: cols(2, &[u(2, 0)]), vector: vec![Eis::ONE, -th], norm: 6 },
        CorankOne {
            name: "L2 in L3",
            host: zoo::l(3),
            sub: cols(3, &[u(3, 0), u(3, 1)]),
            vector: vec![Eis::ONE, -th, e(-2, 0)],
            norm: 6,
        },
        CorankOne {
            name: "L2 + L1 in L4",
            host: zoo::l(4),
            sub: cols(4, &[u(4, 0), u(4, 1), r0]),
            vector: vec![Eis::ONE, -th, e(-2, 0), Eis::ZERO],
            norm: 6,
        },
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct CorankOneCheck {
    pub name: String,
    pub norm_ok: bool,
    pub orthogonal: bool,
    pub spans_complement: bool,
}

impl CorankOneCheck {
    pub fn ok(&self) -> bool {
        self.norm_ok && self.orthogonal && self.spans_complement
    }
}

pub fn check_corank_one(c: &CorankOne) -> CorankOneCheck {
    let h = &c.host;
    let norm_ok = h.norm(&c.vector) == c.norm;
    let orthogonal = (0..c.sub.cols).all(|j| h.inner(&c.vector, &c.sub.col(j)).is_zero());
    let comp = orthogonal_complement(h, &c.sub);
    // the complement has rank one and its generator is an associate of the vector
    let spans_complement = comp.cols == 1 && {
        let g = comp.col(0);
        Eis::units().iter().any(|u| smul(*u, &g) == c.vector)
    };
    CorankOneCheck { name: c.name.to_string(), norm_ok, orthogonal, spans_complement }
}

/// Three copies of `L3` inside `2 L4 + H` whose primitive hull has degree 3.
#[derive(Clone, Debug)]
pub struct ThreeL3 {
    pub host: HermitianLattice,
    /// Columns `r1, r2, r3, r1', r2', r3', r1'', r2'', r3''`.
    pub sub: EisMatrix,
    pub glue: LatticeVector,
}

pub fn three_l3() -> ThreeL3 {
    let n = 10;
    let mut r0 = vec![Eis::ZERO; n];
    r0[..4].copy_from_slice(&l4_complement_root());
    let mut r0p = vec![Eis::ZERO; n];
    r0p[4..8].copy_from_slice(&l4_complement_root());
    let (ev, fv) = (unit(n, 8), unit(n, 9));
    let mut cols: Vec<Vec<Eis>> = Vec::new();
    for i in [0, 1, 2, 4, 5, 6] {
        cols.push(unit(n, i));
    }
    cols.push(add(&r0, &ev));
    cols.push(add(&smul(-Eis::W, &ev), &fv));
    cols.push(add(&r0p, &smul(-Eis::ONE, &ev)));
    let glue = add(&unit(n, 3), &unit(n, 7));
    ThreeL3 { host: zoo::l_dm(), sub: EisMatrix::from_cols(&cols), glue }
}

#[derive(Clone, Debug, Serialize)]
pub struct ThreeL3Check {
    pub gram_is_3l3: bool,
    pub hull_degree: u64,
    pub glue_in_hull: bool,
    pub complement_rank: usize,
    pub complement_norm: Option<i64>,
    pub complement_vector: Vec<Eis>,
}

impl ThreeL3Check {
    pub fn ok(&self) -> bool {
        self.gram_is_3l3
            && self.hull_degree == 3
            && self.glue_in_hull
            && self.complement_rank == 1
            && self.complement_norm == Some(-3)
    }
}

pub fn check_three_l3(t: &ThreeL3) -> Result<ThreeL3Check> {
    let gram_is_3l3 = t.host.gram_of(&t.sub) == *zoo::make("3*L3")?.gram();
    let hull = primitive_hull(&t.sub)?;
    // glue lies in the rational span: adding it does not raise the rank
    let mut cols: Vec<Vec<Eis>> = (0..t.sub.cols).map(|j| t.sub.col(j)).collect();
    cols.push(t.glue.clone());
    let glue_in_hull = smith_normal_form(&EisMatrix::from_cols(&cols)).rank() == t.sub.cols;
    let comp = orthogonal_complement(&t.host, &t.sub);
    let complement_vector = if comp.cols == 1 { comp.col(0) } else { Vec::new() };
    let complement_norm = (comp.cols == 1).then(|| t.host.norm(&complement_vector));
    Ok(ThreeL3Check {
        gram_is_3l3,
        hull_degree: hull.degree,
        glue_in_hull,
        complement_rank: comp.cols,
        complement_norm,
        complement_vector,
    })
}

/// Checks a witness against the lattices named by its expressions.
pub fn verify_witness(w: &IsometryWitness) -> Result<WitnessCheck> {
    let s = zoo::make(&w.source)?;
    let t = zoo::make(&w.target)?;
    Ok(verify_isometry(&s, &t, &w.matrix))
}

/// All Eisenstein integers of norm at most `bound`, smallest first.
pub fn small_elements(bound: i64) -> Vec<Eis> {
    let r = (2.0 * (bound as f64).sqrt()) as i64 + 1;
    let mut out: Vec<Eis> = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            let x = e(a, b);
            if x.norm() <= bound {
                out.push(x);
            }
        }
    }
    out.sort_by_key(|x| (x.norm(), *x));
    out
}

/// Bounded search for an isometry `source -> target`: every coordinate of every image has
/// norm at most `bound`. Candidates are tried in order of total coordinate norm.
pub fn search_isometry(
    source: &HermitianLattice,
    target: &HermitianLattice,
    bound: i64,
    node_limit: u64,
) -> Result<Option<EisMatrix>> {
    let n = target.rank();
    let k = source.rank();
    if n != k {
        return Ok(None);
    }
    let elems = small_elements(bound);
    let mut norms: Vec<i64> = (0..k).map(|i| source.gram()[(i, i)].as_int().unwrap()).collect();
    norms.sort();
    norms.dedup();
    // enumerate all coefficient vectors, keeping those with a needed norm
    let mut pool: Vec<(i64, Vec<Eis>)> = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let v: Vec<Eis> = idx.iter().map(|&i| elems[i]).collect();
        if v.iter().any(|x| !x.is_zero()) {
            let nv = target.norm(&v);
            if norms.contains(&nv) {
                let size: i64 = v.iter().map(|x| x.norm()).sum();
                pool.push((size, v));
            }
        }
        let mut p = 0;
        while p < n {
            idx[p] += 1;
            if idx[p] < elems.len() {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
        if p == n {
            break;
        }
    }
    pool.sort();
    let pool: Vec<Vec<Eis>> = pool.into_iter().map(|(_, v)| v).collect();
    let duals: Vec<Vec<Eis>> =
        pool.iter().map(|v| target.gram().mul_vec(&v.iter().map(|x| x.conj()).collect::<Vec<_>>())).collect();
    let g = source.gram();
    // forward checking: one candidate list per unassigned source vector
    let lists: Vec<Vec<usize>> = (0..k)
        .map(|i| {
            let want = g[(i, i)].as_int().unwrap();
            (0..pool.len()).filter(|&c| target.norm(&pool[c]) == want).collect()
        })
        .collect();
    let mut ctx = Search { g, pool: &pool, duals: &duals, assigned: vec![None; k], nodes: 0, limit: node_limit };
    ctx.rec(lists)
}

struct Search<'a> {
    g: &'a EisMatrix,
    pool: &'a [Vec<Eis>],
    duals: &'a [Vec<Eis>],
    assigned: Vec<Option<usize>>,
    nodes: u64,
    limit: u64,
}

impl Search<'_> {
    fn pair(&self, c: usize, d: usize) -> Eis {
        self.pool[c].iter().zip(&self.duals[d]).map(|(&a, &b)| a * b).sum()
    }

    fn rec(&mut self, lists: Vec<Vec<usize>>) -> Result<Option<EisMatrix>> {
        let next = (0..lists.len()).filter(|&i| self.assigned[i].is_none()).min_by_key(|&i| lists[i].len());
        let Some(i) = next else {
            let cols: Vec<Vec<Eis>> = self.assigned.iter().map(|c| self.pool[c.unwrap()].clone()).collect();
            let m = EisMatrix::from_cols(&cols);
            return Ok(m.det()?.is_unit().then_some(m));
        };
        for &c in &lists[i] {
            self.nodes += 1;
            if self.nodes > self.limit {
                return Err(Error::WitnessSearchExhausted(format!("node limit {} reached", self.limit)));
            }
            let mut narrowed = lists.clone();
            let mut dead = false;
            for m in 0..lists.len() {
                if self.assigned[m].is_some() || m == i {
                    continue;
                }
                let want = self.g[(m, i)];
                narrowed[m].retain(|&d| d != c && self.pair(d, c) == want);
                if narrowed[m].is_empty() {
                    dead = true;
                    break;
                }
            }
            if dead {
                continue;
            }
            self.assigned[i] = Some(c);
            let r = self.rec(narrowed)?;
            self.assigned[i] = None;
            if r.is_some() {
                return Ok(r);
            }
        }
        Ok(None)
    }
}

/// The statements behind the searched fixtures, as `(name, source, target)`.
pub const SEARCHED: [(&str, &str, &str); 2] =
    [("peculiar_1", "L1(2) + H", "L2 + L1(-1)"), ("peculiar_2", "L4 + L1(-1)", "L3 + H")];

/// Runs the staged bounded search for one named statement.
pub fn run_search(name: &str, params: &SearchParams) -> Result<FixtureEntry> {
    let (_, src, tgt) =
        SEARCHED.iter().find(|(n, _, _)| *n == name).ok_or_else(|| Error::UnknownName(name.to_string()))?;
    let s = zoo::make(src)?;
    let t = zoo::make(tgt)?;
    for &b in &params.bounds {
        if let Some(m) = search_isometry(&s, &t, b, params.node_limit)? {
            return Ok(FixtureEntry {
                name: name.to_string(),
                bound: b,
                witness: IsometryWitness { source: src.to_string(), target: tgt.to_string(), matrix: m },
            });
        }
    }
    Err(Error::WitnessSearchExhausted(format!("{name} up to norm {:?}", params.bounds.last())))
}

/// Looks up a witness by name: the direct constructions or the stored fixtures.
pub fn named_witness(name: &str) -> Result<IsometryWitness> {
    match name {
        "four_period" => Ok(four_period()),
        "interesting_iso" => Ok(interesting_iso()),
        "ldm_decomposition" => Ok(ldm_decomposition()),
        _ => fixtures()?
            .witnesses
            .into_iter()
            .find(|w| w.name == name)
            .map(|w| w.witness)
            .ok_or_else(|| Error::UnknownName(name.to_string())),
    }
}

pub fn witness_names() -> Vec<&'static str> {
    vec!["four_period", "interesting_iso", "ldm_decomposition", "peculiar_1", "peculiar_2"]
}

/// The third copy of `L3` in the construction above has complement spanned by `s`;
/// returns the sublattice `M^perp` as a lattice.
pub fn three_l3_complement() -> Result<HermitianLattice> {
    let t = three_l3();
    sublattice(&t.host, &orthogonal_complement(&t.host, &t.sub))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn l5_kernel_is_radical() {
        let l5 = zoo::l(5);
        let k = l5_kernel();
        for i in 0..5 {
            assert!(l5.inner(&l5.basis_vector(i), &k).is_zero());
        }
    }

    #[test]
    fn direct_witnesses_verify() {
        for w in [four_period(), interesting_iso(), ldm_decomposition()] {
            let c = verify_witness(&w).unwrap();
            assert!(c.ok(), "{} -> {}: {c:?}", w.source, w.target);
        }
    }

    #[test]
    fn witness_json_shape() {
        let w = interesting_iso();
        let j = serde_json::to_value(&w).unwrap();
        assert!(j["matrix"][0][0].is_array());
        let back: IsometryWitness = serde_json::from_value(j).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn small_elements_counts() {
        // 1 + 6 units
        assert_eq!(small_elements(1).len(), 7);
        assert_eq!(small_elements(4).len(), 19);
    }
}
