//! Permutations of `{0..n}` and base-and-strong-generating-set data via Schreier-Sims.
//!
//! Permutations act on the right: `p^(gh) = (p^g)^h`.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Perm(pub Vec<u32>);

impl std::fmt::Debug for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.cycles_string())
    }
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n as u32).collect())
    }

    /// Checks that `images` is a bijection of `{0..n}`.
    pub fn from_images(images: Vec<u32>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i as usize >= n || seen[i as usize] {
                return Err(Error::InvalidConfig("image list is not a permutation".into()));
            }
            seen[i as usize] = true;
        }
        Ok(Perm(images))
    }

    /// The permutation with the given cycles on `{0..n}`.
    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Perm {
        let mut img: Vec<u32> = (0..n as u32).collect();
        for c in cycles {
            for (k, &p) in c.iter().enumerate() {
                img[p as usize] = c[(k + 1) % c.len()];
            }
        }
        Perm(img)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, p: u32) -> u32 {
        self.0[p as usize]
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&p| other.0[p as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i as u32 == p)
    }

    pub fn support(&self) -> Vec<u32> {
        (0..self.0.len() as u32).filter(|&i| self.0[i as usize] != i).collect()
    }

    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.0.len()];
        let mut l = 1u64;
        for s in 0..self.0.len() {
            if seen[s] {
                continue;
            }
            let mut len = 0u64;
            let mut p = s;
            while !seen[p] {
                seen[p] = true;
                p = self.0[p] as usize;
                len += 1;
            }
            l = num_integer::lcm(l, len);
        }
        l
    }

    pub fn cycles_string(&self) -> String {
        let mut seen = vec![false; self.0.len()];
        let mut out = String::new();
        for s in 0..self.0.len() {
            if seen[s] || self.0[s] as usize == s {
                continue;
            }
            let mut c = Vec::new();
            let mut p = s;
            while !seen[p] {
                seen[p] = true;
                c.push(p.to_string());
                p = self.0[p] as usize;
            }
            out.push_str(&format!("({})", c.join(",")));
        }
        if out.is_empty() {
            "()".into()
        } else {
            out
        }
    }
}

struct Level {
    point: u32,
    /// Strong generators fixing all earlier base points.
    gens: Vec<Perm>,
    /// `transversal[p]` maps the base point to `p`.
    transversal: HashMap<u32, Perm>,
    orbit: Vec<u32>,
}

impl Level {
    fn new(point: u32, n: usize) -> Level {
        let mut transversal = HashMap::new();
        transversal.insert(point, Perm::identity(n));
        Level { point, gens: Vec::new(), transversal, orbit: vec![point] }
    }

    fn rebuild_orbit(&mut self, n: usize) {
        self.transversal.clear();
        self.transversal.insert(self.point, Perm::identity(n));
        self.orbit = vec![self.point];
        let mut i = 0;
        while i < self.orbit.len() {
            let p = self.orbit[i];
            let u = self.transversal[&p].clone();
            for g in &self.gens {
                let q = g.apply(p);
                if let Entry::Vacant(e) = self.transversal.entry(q) {
                    e.insert(u.then(g));
                    self.orbit.push(q);
                }
            }
            i += 1;
        }
    }
}

/// A permutation group with a base and strong generating set.
pub struct PermGroup {
    n: usize,
    levels: Vec<Level>,
    generators: Vec<Perm>,
}

impl PermGroup {
    pub fn new(n: usize, gens: &[Perm]) -> Result<PermGroup> {
        Self::with_base(n, gens, &[])
    }

    /// Schreier-Sims with the base starting with `prefix`.
    pub fn with_base(n: usize, gens: &[Perm], prefix: &[u32]) -> Result<PermGroup> {
        for g in gens {
            if g.degree() != n {
                return Err(Error::DimensionMismatch(format!("generator of degree {} in S_{n}", g.degree())));
            }
        }
        let generators: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut grp = PermGroup { n, levels: prefix.iter().map(|&p| Level::new(p, n)).collect(), generators };
        for g in grp.generators.clone() {
            grp.add_strong(g, 0);
        }
        grp.complete();
        Ok(grp)
    }

    fn first_moved(&self, g: &Perm) -> u32 {
        (0..self.n as u32).find(|&p| g.apply(p) != p).expect("non-identity")
    }

    /// Adds `g` as a strong generator at levels `from..=j` where `j` is the first level whose
    /// base point `g` moves, extending the base if needed.
    fn add_strong(&mut self, g: Perm, from: usize) -> usize {
        let mut j = from;
        while j < self.levels.len() && g.apply(self.levels[j].point) == self.levels[j].point {
            j += 1;
        }
        if j == self.levels.len() {
            let p = self.first_moved(&g);
            self.levels.push(Level::new(p, self.n));
        }
        for l in from..=j {
            self.levels[l].gens.push(g.clone());
            self.levels[l].rebuild_orbit(self.n);
        }
        j
    }

    /// Returns the residue and the level where sifting stopped.
    fn sift(&self, mut g: Perm, from: usize) -> (Perm, usize) {
        for l in from..self.levels.len() {
            let b = g.apply(self.levels[l].point);
            match self.levels[l].transversal.get(&b) {
                Some(u) => g = g.then(&u.inverse()),
                None => return (g, l),
            }
        }
        (g, self.levels.len())
    }

    fn complete(&mut self) {
        let mut i = self.levels.len();
        while i > 0 {
            i -= 1;
            let mut restart = None;
            'scan: for k in 0..self.levels[i].orbit.len() {
                let p = self.levels[i].orbit[k];
                let up = self.levels[i].transversal[&p].clone();
                for s in self.levels[i].gens.clone() {
                    let q = s.apply(p);
                    let h = up.then(&s).then(&self.levels[i].transversal[&q].inverse());
                    if h.is_identity() {
                        continue;
                    }
                    let (res, _) = self.sift(h, i + 1);
                    if !res.is_identity() {
                        let j = self.add_strong(res, i + 1);
                        restart = Some(j);
                        break 'scan;
                    }
                }
            }
            if let Some(j) = restart {
                i = j + 1;
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Order of the pointwise stabilizer of the first `k` base points.
    pub fn stabilizer_order(&self, k: usize) -> u128 {
        self.levels.iter().skip(k).map(|l| l.orbit.len() as u128).product()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.n && self.sift(g.clone(), 0).0.is_identity()
    }

    /// Orbit of `p` under the whole group.
    pub fn orbit(&self, p: u32) -> Vec<u32> {
        let mut seen = vec![false; self.n];
        seen[p as usize] = true;
        let mut out = vec![p];
        let mut i = 0;
        while i < out.len() {
            for g in &self.generators {
                let q = g.apply(out[i]);
                if !seen[q as usize] {
                    seen[q as usize] = true;
                    out.push(q);
                }
            }
            i += 1;
        }
        out
    }

    /// An element mapping the base image `images` (one point per leading base point), if any.
    pub fn element_mapping_base(&self, images: &[u32]) -> Option<Perm> {
        // build g with base[l]^g = images[l] level by level from the bottom of the transversals
        let mut g = Perm::identity(self.n);
        for (l, &target) in images.iter().enumerate() {
            if l >= self.levels.len() {
                return None;
            }
            // want base[l]^{u g} = target, so base[l]^u = target^{g^-1}
            let pre = g.inverse().apply(target);
            let u = self.levels[l].transversal.get(&pre)?;
            g = u.then(&g);
        }
        Some(g)
    }
}

/// Order of the group generated by `gens` on `{0..n}`.
pub fn group_order(n: usize, gens: &[Perm]) -> Result<u128> {
    Ok(PermGroup::new(n, gens)?.order())
}

pub fn factorial(n: u64) -> u128 {
    (1..=n as u128).product()
}

/// Every permutation of `{0..n}`, in lexicographic order of image lists.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = (0..n as u32).collect();
    loop {
        out.push(Perm(cur.clone()));
        // next permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sym_gens(n: usize) -> Vec<Perm> {
        let all: Vec<u32> = (0..n as u32).collect();
        vec![Perm::from_cycles(n, &[&[0, 1]]), Perm::from_cycles(n, &[&all])]
    }

    #[test]
    fn symmetric_and_alternating_orders() {
        for n in 2..=9 {
            assert_eq!(group_order(n, &sym_gens(n)).unwrap(), factorial(n as u64));
        }
        // A5 from 3-cycles
        let g = [Perm::from_cycles(5, &[&[0, 1, 2]]), Perm::from_cycles(5, &[&[2, 3, 4]])];
        assert_eq!(group_order(5, &g).unwrap(), 60);
        assert_eq!(group_order(12, &sym_gens(12)).unwrap(), 479_001_600);
    }

    #[test]
    fn brute_force_agrees_on_small_groups() {
        // dihedral group of the square and a direct product
        let d4 = [Perm::from_cycles(4, &[&[0, 1, 2, 3]]), Perm::from_cycles(4, &[&[0, 2]])];
        let mut closure = vec![Perm::identity(4)];
        let mut i = 0;
        while i < closure.len() {
            for g in &d4 {
                let h = closure[i].then(g);
                if !closure.contains(&h) {
                    closure.push(h);
                }
            }
            i += 1;
        }
        assert_eq!(group_order(4, &d4).unwrap(), closure.len() as u128);
        let grp = PermGroup::new(4, &d4).unwrap();
        for p in all_perms(4) {
            assert_eq!(grp.contains(&p), closure.contains(&p));
        }
    }

    #[test]
    fn base_prefix_gives_point_stabilizers() {
        let g = PermGroup::with_base(7, &sym_gens(7), &[3, 5]).unwrap();
        assert_eq!(g.base()[..2], [3, 5]);
        assert_eq!(g.stabilizer_order(2), factorial(5));
        let h = g.element_mapping_base(&[0, 1]).unwrap();
        assert_eq!((h.apply(3), h.apply(5)), (0, 1));
    }

    #[test]
    fn all_perms_count() {
        assert_eq!(all_perms(5).len(), 120);
        assert_eq!(all_perms(0).len(), 1);
    }

    proptest! {
        #[test]
        fn inverse_and_order(v in Just((0u32..8).collect::<Vec<_>>()).prop_shuffle()) {
            let p = Perm::from_images(v).unwrap();
            prop_assert!(p.then(&p.inverse()).is_identity());
            let mut q = Perm::identity(8);
            for _ in 0..p.order() {
                q = q.then(&p);
            }
            prop_assert!(q.is_identity());
        }
    }
}
