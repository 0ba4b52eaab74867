//! Products of natural `S4`/`S5` factors in `S_n`: centralizers, conjugacy classes, and the
//! centralizer table of reflection subgroups in the Bimonster, checked against `S12` and the
//! `F2` orthogonal group.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::f2config::{self, config_type, model, model_orth_generators};
use crate::perm::{all_perms, factorial, Perm, PermGroup};

/// Disjoint supports of natural `S4`/`S5` factors in `S_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Descriptor {
    pub n: usize,
    pub blocks: Vec<Vec<u32>>,
}

impl Descriptor {
    pub fn new(n: usize, blocks: Vec<Vec<u32>>) -> Result<Descriptor> {
        let mut seen = vec![false; n];
        for b in &blocks {
            if b.len() != 4 && b.len() != 5 {
                return Err(Error::InvalidConfig(format!("block of size {}", b.len())));
            }
            for &p in b {
                let slot = seen
                    .get_mut(p as usize)
                    .ok_or_else(|| Error::InvalidConfig(format!("point {p} outside 0..{n}")))?;
                if *slot {
                    return Err(Error::InvalidConfig(format!("point {p} in two blocks")));
                }
                *slot = true;
            }
        }
        Ok(Descriptor { n, blocks })
    }

    /// Blocks of the given sizes laid out consecutively from 0.
    pub fn consecutive(n: usize, sizes: &[usize]) -> Result<Descriptor> {
        let mut start = 0u32;
        let blocks = sizes
            .iter()
            .map(|&k| {
                let b = (start..start + k as u32).collect();
                start += k as u32;
                b
            })
            .collect();
        Descriptor::new(n, blocks)
    }

    /// Blocks of the given sizes laid out from the top, in reverse point order.
    pub fn from_top(n: usize, sizes: &[usize]) -> Result<Descriptor> {
        let mut end = n as u32;
        let blocks = sizes
            .iter()
            .map(|&k| {
                let b = (end - k as u32..end).rev().collect();
                end -= k as u32;
                b
            })
            .collect();
        Descriptor::new(n, blocks)
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.blocks.iter().map(Vec::len).collect();
        s.sort_unstable();
        s
    }

    pub fn complement(&self) -> Vec<u32> {
        (0..self.n as u32).filter(|p| !self.blocks.iter().any(|b| b.contains(p))).collect()
    }

    /// A transposition and a full cycle on each block.
    pub fn generators(&self) -> Vec<Perm> {
        self.blocks.iter().flat_map(|b| sym_generators(self.n, b)).collect()
    }

    pub fn group(&self) -> Result<PermGroup> {
        PermGroup::new(self.n, &self.generators())
    }

    pub fn label(&self) -> String {
        let s = self.sizes();
        if s.is_empty() {
            return "{}".to_string();
        }
        format!("{{{}}}", s.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(","))
    }
}

fn sym_generators(n: usize, pts: &[u32]) -> Vec<Perm> {
    if pts.len() < 2 {
        return vec![];
    }
    vec![Perm::from_cycles(n, &[&pts[..2]]), Perm::from_cycles(n, &[pts])]
}

fn commute(a: &Perm, b: &Perm) -> bool {
    a.then(b) == b.then(a)
}

/// Number of elements of `Sym(k)` commuting with all of `Sym(k)`, by exhaustion.
pub fn center_of_sym(k: usize) -> usize {
    let all = all_perms(k);
    let pts: Vec<u32> = (0..k as u32).collect();
    let gens = sym_generators(k, &pts);
    all.iter().filter(|g| gens.iter().all(|h| commute(g, h))).count()
}

#[derive(Clone, Debug, Serialize)]
pub struct Centralizer {
    pub descriptor: String,
    pub order: u128,
    /// `(n - sum of block sizes)!`
    pub formula: u128,
    /// Generators of the complement's symmetric group commute with the block generators.
    pub commutes: bool,
    /// Each block size has trivial centralizer in its own symmetric group.
    pub blocks_self_centralizing: bool,
}

impl Centralizer {
    pub fn ok(&self) -> bool {
        self.order == self.formula && self.commutes && self.blocks_self_centralizing
    }
}

/// The centralizer of a product of natural factors on disjoint blocks is the symmetric group
/// of the complement: an element commuting with `Sym(B)` maps `B` to itself and restricts to
/// a central element of `Sym(B)`, which is trivial for `|B| >= 3`.
pub fn centralizer(desc: &Descriptor) -> Result<Centralizer> {
    let comp = desc.complement();
    let cgens = sym_generators(desc.n, &comp);
    let bgens = desc.generators();
    let commutes = cgens.iter().all(|c| bgens.iter().all(|b| commute(c, b)));
    let order = PermGroup::new(desc.n, &cgens)?.order();
    let blocks_self_centralizing = desc.blocks.iter().all(|b| center_of_sym(b.len()) == 1);
    Ok(Centralizer {
        descriptor: desc.label(),
        order,
        formula: factorial(comp.len() as u64),
        commutes,
        blocks_self_centralizing,
    })
}

/// Centralizer order by exhaustion over all of `S_n`, for small `n`.
pub fn centralizer_brute_force(desc: &Descriptor) -> usize {
    let gens = desc.generators();
    all_perms(desc.n).iter().filter(|g| gens.iter().all(|h| commute(g, h))).count()
}

/// A permutation carrying each block of `a` onto the block of `b` in the same position,
/// point by point, and the complement in order.
pub fn conjugator(a: &Descriptor, b: &Descriptor) -> Result<Perm> {
    if a.n != b.n || a.blocks.iter().map(Vec::len).ne(b.blocks.iter().map(Vec::len)) {
        return Err(Error::InvalidConfig("descriptors of different shape".into()));
    }
    let mut img = vec![0u32; a.n];
    for (x, y) in a.blocks.iter().zip(&b.blocks) {
        for (&p, &q) in x.iter().zip(y) {
            img[p as usize] = q;
        }
    }
    for (p, q) in a.complement().into_iter().zip(b.complement()) {
        img[p as usize] = q;
    }
    Perm::from_images(img)
}

/// Checks `g^-1 H_a g = H_b` through generators and orders.
pub fn conjugates(g: &Perm, a: &Descriptor, b: &Descriptor) -> Result<bool> {
    let hb = b.group()?;
    let inv = g.inverse();
    let inside = a.generators().iter().all(|h| hb.contains(&inv.then(h).then(g)));
    Ok(inside && a.group()?.order() == hb.order())
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassEntry {
    pub sizes: Vec<usize>,
    pub label: String,
    pub centralizer_order: u128,
    /// Cycle notation of a conjugator between two different layouts.
    pub conjugator: String,
    pub conjugator_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub n: usize,
    pub entries: Vec<ClassEntry>,
    pub nonempty_count: usize,
    pub count_with_trivial: usize,
    pub expected: usize,
    /// Which count equals the expected one.
    pub reading: String,
}

impl Classification {
    pub fn ok(&self) -> bool {
        self.entries.iter().all(|e| e.conjugator_ok)
            && (self.nonempty_count == self.expected || self.count_with_trivial == self.expected)
    }
}

/// Multisets of block sizes from `{4, 5}` fitting in `n` points, the empty one first.
pub fn size_multisets(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for q in 0..=n / 5 {
        for p in 0..=(n - 5 * q) / 4 {
            let mut v = vec![4; p];
            v.extend(vec![5; q]);
            out.push(v);
        }
    }
    out.sort_by_key(|v| (v.len(), v.clone()));
    out
}

pub fn classify(n: usize) -> Result<Classification> {
    let mut entries = Vec::new();
    for sizes in size_multisets(n) {
        let a = Descriptor::consecutive(n, &sizes)?;
        let b = Descriptor::from_top(n, &sizes)?;
        let g = conjugator(&a, &b)?;
        entries.push(ClassEntry {
            label: a.label(),
            centralizer_order: centralizer(&a)?.order,
            conjugator: g.cycles_string(),
            conjugator_ok: conjugates(&g, &a, &b)?,
            sizes,
        });
    }
    let count_with_trivial = entries.len();
    let nonempty_count = entries.iter().filter(|e| !e.sizes.is_empty()).count();
    let expected = 7;
    let reading = match (nonempty_count == expected, count_with_trivial == expected) {
        (true, _) => "nonempty descriptors",
        (false, true) => "descriptors including the trivial subgroup",
        _ => "neither",
    };
    Ok(Classification { n, entries, nonempty_count, count_with_trivial, expected, reading: reading.to_string() })
}

/// Where a table entry is computed.
#[derive(Clone, Debug, Serialize)]
pub enum Source {
    /// Centralizer in `S12` of the natural subgroup with these block sizes.
    S12(Vec<usize>),
    /// Pointwise stabilizer in the orthogonal group of `H'_E`, `|E| = 12`, of a configuration.
    Orth(&'static str),
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub entry: &'static str,
    pub group: &'static str,
    pub expected_order: u128,
    pub source: String,
    pub computed_order: u128,
    /// The same order from the other side, where both exist.
    pub second_source: Option<(String, u128)>,
    pub matches: bool,
}

struct Entry {
    entry: &'static str,
    group: &'static str,
    order: u128,
    source: Source,
    second: Option<Source>,
}

fn table() -> Vec<Entry> {
    use Source::*;
    let e = |entry, group, order, source, second| Entry { entry, group, order, source, second };
    vec![
        e("(2,0)", "F2^6 x| S8", 64 * 40_320, Orth("A3"), None),
        e("(1,1)", "S8", 40_320, S12(vec![4]), Some(Orth("A4"))),
        e("(0,2)", "S7", 5_040, S12(vec![5]), None),
        e("(3,0)", "F2^3 x| S4", 8 * 24, Orth("2A3"), None),
        e("(2,1)", "S4", 24, S12(vec![4, 4]), Some(Orth("A3+A4"))),
        e("(1,2)", "S3", 6, S12(vec![4, 5]), Some(Orth("2A4"))),
        e("(0,3)", "S2", 2, S12(vec![5, 5]), None),
        e("(4,0)'", "F2 x| S2", 4, Orth("(3A3)'"), None),
        e("(3,0)'", "F2^4 x| S5", 16 * 120, Orth("(2A3)'"), None),
        e("(3,0)'+(1,0)", "F2", 2, Orth("(2A3)'+A3"), None),
        e("(3,1)'", "1", 1, Orth("(2A3)'+A4"), Some(S12(vec![4, 4, 4]))),
    ]
}

fn evaluate(src: &Source, orth: &[crate::f2::F2Matrix]) -> Result<(String, u128)> {
    match src {
        Source::S12(sizes) => {
            let d = Descriptor::consecutive(12, sizes)?;
            Ok((format!("C_S12({})", d.label()), centralizer(&d)?.order))
        }
        Source::Orth(name) => {
            let s = model();
            let t = config_type(name)?;
            Ok((format!("Orth_B, B of type {name}"), f2config::stabilizer(&s, orth, &t)?.chain_order))
        }
    }
}

/// Compares the centralizer orders of the table with computed stabilizers and centralizers.
pub fn cross_check() -> Result<Vec<TableRow>> {
    let orth = model_orth_generators(&model())?;
    table()
        .into_iter()
        .map(|e| {
            let (source, computed) = evaluate(&e.source, &orth)?;
            let second = e.second.as_ref().map(|s| evaluate(s, &orth)).transpose()?;
            let matches = computed == e.order && second.as_ref().is_none_or(|(_, o)| *o == e.order);
            Ok(TableRow {
                entry: e.entry,
                group: e.group,
                expected_order: e.order,
                source,
                computed_order: computed,
                second_source: second,
                matches,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_groups_have_trivial_center() {
        assert_eq!(center_of_sym(4), 1);
        assert_eq!(center_of_sym(5), 1);
        assert_eq!(center_of_sym(2), 2);
    }

    #[test]
    fn centralizers_in_s12() {
        let cases: [(&[usize], u128); 4] = [(&[4], 40_320), (&[4, 5], 6), (&[5, 5], 2), (&[4, 4, 4], 1)];
        for (sizes, order) in cases {
            let c = centralizer(&Descriptor::consecutive(12, sizes).unwrap()).unwrap();
            assert!(c.ok());
            assert_eq!(c.order, order);
        }
    }

    #[test]
    fn structural_centralizer_agrees_with_exhaustion() {
        for (n, sizes) in [(6, vec![4]), (7, vec![5]), (8, vec![4, 4]), (8, vec![4])] {
            let d = Descriptor::consecutive(n, &sizes).unwrap();
            assert_eq!(centralizer_brute_force(&d) as u128, centralizer(&d).unwrap().order);
        }
    }

    #[test]
    fn invalid_descriptors() {
        assert!(Descriptor::new(12, vec![vec![0, 1, 2]]).is_err());
        assert!(Descriptor::new(12, vec![vec![0, 1, 2, 3], vec![3, 4, 5, 6]]).is_err());
        assert!(Descriptor::new(8, vec![vec![5, 6, 7, 8]]).is_err());
    }

    #[test]
    fn classification_of_s12() {
        let c = classify(12).unwrap();
        assert!(c.ok());
        assert_eq!(c.nonempty_count, 6);
        assert_eq!(c.count_with_trivial, 7);
    }

    #[test]
    fn block_of_four_conjugator() {
        let a = Descriptor::new(12, vec![vec![0, 1, 2, 3]]).unwrap();
        let b = Descriptor::new(12, vec![vec![7, 2, 11, 5]]).unwrap();
        let g = conjugator(&a, &b).unwrap();
        assert!(conjugates(&g, &a, &b).unwrap());
    }
}
