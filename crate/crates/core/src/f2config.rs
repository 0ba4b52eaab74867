//! Type-A root configurations in `H'_E`, `|E| = 12`: standard representatives, stabilizers
//! from explicit generators, and reduction of arbitrary configurations to the standard one
//! by words in reflections.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::f2::{
    extend_basis, for_each_isometry, h_e_prime, matrix_group, orthogonal_generators, rank, subset, F2Matrix, F2Vector,
    QuadSpace,
};
use crate::perm::{Perm, PermGroup};

/// One chain of roots, optionally sharing its kernel with an earlier `A3` block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub len: usize,
    pub kernel_of: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigType {
    pub name: &'static str,
    pub blocks: Vec<Block>,
}

impl ConfigType {
    pub fn size(&self) -> usize {
        self.blocks.iter().map(|b| b.len).sum()
    }

    /// Rank of the span: one relation per shared kernel, and one for a chain of 11 roots.
    pub fn expected_rank(&self) -> usize {
        let shared = self.blocks.iter().filter(|b| b.kernel_of.is_some()).count();
        let long = self.blocks.iter().filter(|b| b.len == 11).count();
        self.size() - shared - long
    }

    /// `(block, position)` for each root, in order.
    fn positions(&self) -> Vec<(usize, usize)> {
        self.blocks.iter().enumerate().flat_map(|(bi, b)| (0..b.len).map(move |p| (bi, p))).collect()
    }

    /// Required value of `b(x_i, x_j)`.
    fn adjacency(&self, i: usize, j: usize) -> u8 {
        let pos = self.positions();
        let (bi, pi) = pos[i];
        let (bj, pj) = pos[j];
        u8::from(bi == bj && pi.abs_diff(pj) == 1)
    }
}

fn block(len: usize) -> Block {
    Block { len, kernel_of: None }
}

fn shared(len: usize, with: usize) -> Block {
    Block { len, kernel_of: Some(with) }
}

pub fn config_types() -> Vec<ConfigType> {
    vec![
        ConfigType { name: "A3", blocks: vec![block(3)] },
        ConfigType { name: "A4", blocks: vec![block(4)] },
        ConfigType { name: "2A3", blocks: vec![block(3), block(3)] },
        ConfigType { name: "A3+A4", blocks: vec![block(3), block(4)] },
        ConfigType { name: "2A4", blocks: vec![block(4), block(4)] },
        ConfigType { name: "(2A3)'", blocks: vec![block(3), shared(3, 0)] },
        ConfigType { name: "(2A3)'+A3", blocks: vec![block(3), shared(3, 0), block(3)] },
        ConfigType { name: "(3A3)'", blocks: vec![block(3), shared(3, 0), shared(3, 0)] },
        ConfigType { name: "(2A3)'+A4", blocks: vec![block(3), shared(3, 0), block(4)] },
        ConfigType { name: "A11", blocks: vec![block(11)] },
    ]
}

pub fn config_type(name: &str) -> Result<ConfigType> {
    config_types().into_iter().find(|t| t.name == name).ok_or_else(|| Error::UnknownName(name.to_string()))
}

/// The model space `H'_E`, `|E| = 12`.
pub fn model() -> QuadSpace {
    h_e_prime(12).expect("12 is divisible by 4")
}

fn sub(s: &QuadSpace, elems: &[usize]) -> F2Vector {
    s.from_subset(subset(elems)).expect("even subset")
}

fn chain(s: &QuadSpace, elems: &[usize]) -> Vec<F2Vector> {
    elems.windows(2).map(|w| sub(s, w)).collect()
}

fn range(a: usize, b: usize) -> Vec<usize> {
    (a..b).collect()
}

/// `(C0 + Q1, Q2, Q1)` with `Q1 = {x, y}`, `Q2 = {y, z}`: an `A3` with kernel `chi_{C0}`.
fn primed_block(s: &QuadSpace, c0: &[usize], x: usize, y: usize, z: usize) -> Vec<F2Vector> {
    let mut big = c0.to_vec();
    big.extend([x, y]);
    vec![sub(s, &big), sub(s, &[y, z]), sub(s, &[x, y])]
}

/// The standard representative of a type, block by block.
pub fn standard(s: &QuadSpace, t: &ConfigType) -> Vec<F2Vector> {
    let c0 = range(0, 4);
    let c5 = range(0, 5);
    let mut v = Vec::new();
    match t.name {
        "A3" => v.extend(chain(s, &c0)),
        "A4" => v.extend(chain(s, &c5)),
        "2A3" => {
            v.extend(chain(s, &c0));
            v.extend(chain(s, &range(4, 8)));
        }
        "A3+A4" => {
            // the A3 runs through the point {C} = C1 of the 8-element set {C1} + C1'
            v.extend([sub(s, &range(0, 6)), sub(s, &[5, 6]), sub(s, &[6, 7])]);
            v.extend(chain(s, &c5));
        }
        "2A4" => {
            v.extend(chain(s, &c5));
            v.extend([sub(s, &range(0, 6)), sub(s, &[5, 6]), sub(s, &[6, 7]), sub(s, &[7, 8])]);
        }
        "(2A3)'" | "(2A3)'+A3" | "(3A3)'" | "(2A3)'+A4" => {
            v.extend(chain(s, &c0));
            v.extend(primed_block(s, &c0, 4, 5, 6));
            match t.name {
                "(2A3)'+A3" => v.extend(chain(s, &range(7, 11))),
                "(3A3)'" => v.extend(primed_block(s, &c0, 7, 8, 9)),
                "(2A3)'+A4" => v.extend(chain(s, &range(7, 12))),
                _ => {}
            }
        }
        "A11" => v.extend(chain(s, &range(0, 12))),
        _ => unreachable!("unknown type"),
    }
    v
}

/// Checks adjacency, roots, kernel sharing and rank.
pub fn is_of_type(s: &QuadSpace, t: &ConfigType, v: &[F2Vector]) -> bool {
    if v.len() != t.size() || v.iter().any(|&x| s.q(x) != 1) {
        return false;
    }
    for i in 0..v.len() {
        for j in 0..i {
            if s.b(v[i], v[j]) != t.adjacency(i, j) {
                return false;
            }
        }
    }
    let starts: Vec<usize> = t
        .blocks
        .iter()
        .scan(0, |acc, b| {
            let st = *acc;
            *acc += b.len;
            Some(st)
        })
        .collect();
    for (bi, b) in t.blocks.iter().enumerate() {
        if let Some(k) = b.kernel_of {
            let ker = |i: usize| v[starts[i]] ^ v[starts[i] + 2];
            if ker(bi) != ker(k) {
                return false;
            }
        }
    }
    rank(v) == t.expected_rank()
}

/// `u_a(x) = x + (x.a) chi_C + (x.chi_C) a + q(a) (x.chi_C) chi_C`.
pub fn u_map(s: &QuadSpace, chi_c: F2Vector, a: F2Vector) -> F2Matrix {
    F2Matrix::from_fn(s.dim(), |x| {
        let mut y = x;
        if s.b(x, a) == 1 {
            y ^= chi_c;
        }
        if s.b(x, chi_c) == 1 {
            y ^= a;
            if s.q(a) == 1 {
                y ^= chi_c;
            }
        }
        y
    })
}

fn refl(s: &QuadSpace, elems: &[usize]) -> F2Matrix {
    s.reflection(sub(s, elems)).expect("root")
}

/// Adjacent transpositions of `c`, as reflections.
fn sym_gens(s: &QuadSpace, c: &[usize]) -> Vec<F2Matrix> {
    c.windows(2).map(|w| refl(s, w)).collect()
}

/// `u_a` for `a` running over the chain basis of `H_{C'}`.
fn u_gens(s: &QuadSpace, c: &[usize], cprime: &[usize]) -> Vec<F2Matrix> {
    let chi = sub(s, c);
    cprime.windows(2).map(|w| u_map(s, chi, sub(s, w))).collect()
}

/// The generators used in the constructive description of each stabilizer; the second
/// component are the generators of the normal vector subgroup, if there is one.
pub fn proof_generators(s: &QuadSpace, t: &ConfigType) -> (Vec<F2Matrix>, Vec<F2Matrix>) {
    let c0 = range(0, 4);
    match t.name {
        "A3" => {
            let cp = range(4, 12);
            let u = u_gens(s, &c0, &cp);
            ([sym_gens(s, &cp), u.clone()].concat(), u)
        }
        "A4" => {
            let cp = range(5, 12);
            let mut g = sym_gens(s, &cp);
            g.push(refl(s, &range(0, 6)));
            (g, vec![])
        }
        "2A3" => {
            let cp = range(8, 12);
            let u = u_gens(s, &c0, &cp);
            ([sym_gens(s, &cp), u.clone()].concat(), u)
        }
        "A3+A4" => (sym_gens(s, &range(8, 12)), vec![]),
        "2A4" => (sym_gens(s, &range(9, 12)), vec![]),
        "(2A3)'" => {
            let cp = range(7, 12);
            let u = u_gens(s, &c0, &cp);
            ([sym_gens(s, &cp), u.clone()].concat(), u)
        }
        "(2A3)'+A3" => {
            let (k0, k2) = (sub(s, &c0), sub(s, &range(7, 11)));
            let g = F2Matrix::from_fn(s.dim(), |x| {
                let mut y = x;
                if s.b(x, k0) == 1 {
                    y ^= k2;
                }
                if s.b(x, k2) == 1 {
                    y ^= k0;
                }
                y
            });
            (vec![g.clone()], vec![g])
        }
        "(3A3)'" => {
            let u = vec![u_map(s, sub(s, &c0), sub(s, &[10, 11]))];
            ([vec![refl(s, &[10, 11])], u.clone()].concat(), u)
        }
        "(2A3)'+A4" => (vec![], vec![]),
        "A11" => (vec![], vec![]),
        _ => unreachable!(),
    }
}

pub fn expected_stabilizer_order(name: &str) -> Option<u128> {
    Some(match name {
        "A3" => 2_580_480,
        "A4" => 40_320,
        "2A3" => 192,
        "A3+A4" => 24,
        "2A4" => 6,
        "(2A3)'" => 1_920,
        "(2A3)'+A3" => 2,
        "(3A3)'" => 4,
        "(2A3)'+A4" => 1,
        _ => return None,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilizerReport {
    pub name: String,
    pub generators: usize,
    pub generators_fix_config: bool,
    pub generators_preserve_q: bool,
    /// Order of the group generated by the explicit generators.
    pub generated_order: u128,
    /// Order of the full pointwise stabilizer, from a chain of `Orth(q)` with the
    /// configuration as base prefix.
    pub chain_order: u128,
    pub expected_order: u128,
    /// Order of the normal vector subgroup and of the quotient, when present.
    pub vector_subgroup_order: Option<u128>,
    pub quotient_order: Option<u128>,
}

impl StabilizerReport {
    /// The explicit generators fix the configuration and generate a group of the expected order.
    pub fn ok(&self) -> bool {
        self.generators_fix_config && self.generators_preserve_q && self.generated_order == self.expected_order
    }

    /// The explicit generators produce the whole pointwise stabilizer.
    pub fn complete(&self) -> bool {
        self.generated_order == self.chain_order
    }
}

pub fn stabilizer(s: &QuadSpace, orth: &[F2Matrix], t: &ConfigType) -> Result<StabilizerReport> {
    let cfg = standard(s, t);
    let (gens, normal) = proof_generators(s, t);
    let fix = gens.iter().all(|g| cfg.iter().all(|&x| g.apply(x) == x));
    let preserve = gens.iter().all(|g| s.preserves(g));
    let generated = matrix_group(s.dim(), &gens, &[])?.order();
    let chain = matrix_group(s.dim(), orth, &cfg)?.stabilizer_order(cfg.len());
    let vector = if normal.is_empty() { None } else { Some(matrix_group(s.dim(), &normal, &[])?.order()) };
    Ok(StabilizerReport {
        name: t.name.to_string(),
        generators: gens.len(),
        generators_fix_config: fix,
        generators_preserve_q: preserve,
        generated_order: generated,
        chain_order: chain,
        expected_order: expected_stabilizer_order(t.name).unwrap_or(0),
        vector_subgroup_order: vector,
        quotient_order: vector.map(|v| generated / v),
    })
}

/// The `A4` stabilizer acting on the 8-element set `{C} + C'` through the 28 roots
/// perpendicular to the configuration.
#[derive(Clone, Debug, Serialize)]
pub struct A4Action {
    pub group_order: u128,
    pub image_order: u128,
    pub faithful: bool,
    pub perp_dim: usize,
    pub perp_arf: u8,
    pub perp_orth_order: u128,
}

pub fn a4_action(s: &QuadSpace) -> Result<A4Action> {
    let t = config_type("A4")?;
    let (gens, _) = proof_generators(s, &t);
    let group_order = matrix_group(s.dim(), &gens, &[])?.order();
    // points: 0 stands for C = {0..4}, 1..7 for the elements 5..11
    let point_set = |p: usize| -> Vec<usize> {
        if p == 0 {
            range(0, 5)
        } else {
            vec![p + 4]
        }
    };
    let pair_root = |i: usize, j: usize| -> F2Vector {
        let mut e = point_set(i);
        e.extend(point_set(j));
        sub(s, &e)
    };
    let mut pairs = std::collections::HashMap::new();
    for i in 0..8 {
        for j in i + 1..8 {
            pairs.insert(pair_root(i, j), (i, j));
        }
    }
    let mut perms = Vec::new();
    for g in &gens {
        // image of point i: the common point of the images of {i, j} and {i, k}
        let mut img = vec![0u32; 8];
        for i in 0..8 {
            let (j, k) = if i < 2 { (6, 7) } else { (0, 1) };
            let a = pairs[&g.apply(pair_root(i.min(j), i.max(j)))];
            let b = pairs[&g.apply(pair_root(i.min(k), i.max(k)))];
            let common = [a.0, a.1].into_iter().find(|p| *p == b.0 || *p == b.1).expect("pairs meet");
            img[i] = common as u32;
        }
        perms.push(Perm::from_images(img)?);
    }
    let image_order = PermGroup::new(8, &perms)?.order();
    let cfg = standard(s, &t);
    let perp = s.sym.perp(&cfg);
    let w = s.restrict(&perp);
    let basis: Vec<u32> = (0..w.dim()).map(|i| 1 << i).collect();
    let perp_orth_order = for_each_isometry(&w.sym, Some(w.q_table()), &basis, &[], |_| {}) as u128;
    Ok(A4Action {
        group_order,
        image_order,
        faithful: group_order == image_order,
        perp_dim: w.dim(),
        perp_arf: w.arf()?,
        perp_orth_order,
    })
}

/// Draws a configuration of the given type uniformly root by root: each new root is chosen
/// among all roots with the required pairings, and the last root of a block with a shared
/// kernel is forced. Returns `None` when a dead end or a wrong rank is hit.
pub fn sample(s: &QuadSpace, roots: &[F2Vector], t: &ConfigType, rng: &mut ChaCha8Rng) -> Option<Vec<F2Vector>> {
    let mut v: Vec<F2Vector> = Vec::with_capacity(t.size());
    let positions = t.positions();
    let starts: Vec<usize> = t
        .blocks
        .iter()
        .scan(0, |acc, b| {
            let st = *acc;
            *acc += b.len;
            Some(st)
        })
        .collect();
    for (i, &(bi, pi)) in positions.iter().enumerate() {
        let ok = |x: F2Vector, v: &[F2Vector]| (0..i).all(|j| s.b(x, v[j]) == t.adjacency(i, j)) && !v.contains(&x);
        let x = match t.blocks[bi].kernel_of {
            Some(k) if pi == 2 => {
                let x = v[starts[bi]] ^ v[starts[k]] ^ v[starts[k] + 2];
                if s.q(x) != 1 || !ok(x, &v) {
                    return None;
                }
                x
            }
            _ => {
                let cands: Vec<F2Vector> = roots.iter().copied().filter(|&x| ok(x, &v)).collect();
                *cands.choose(rng)?
            }
        };
        v.push(x);
    }
    is_of_type(s, t, &v).then_some(v)
}

/// A sequence of reflections, as indices into the sorted root list.
#[derive(Clone, Debug, Serialize)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn apply(&self, s: &QuadSpace, roots: &[F2Vector], mut x: F2Vector) -> F2Vector {
        for &i in &self.0 {
            let r = roots[i];
            if s.b(x, r) == 1 {
                x ^= r;
            }
        }
        x
    }
}

/// Moves `config` onto `target` one root at a time, each step a reflection in a root
/// perpendicular to the roots already placed. The stabilizer of a partial configuration need
/// not be generated by such reflections, so a few placement orders are tried. Returns the
/// word, verified by replay.
pub fn canonicalize(s: &QuadSpace, roots: &[F2Vector], config: &[F2Vector], target: &[F2Vector]) -> Option<Word> {
    let n = config.len();
    let forward: Vec<usize> = (0..n).collect();
    let backward: Vec<usize> = (0..n).rev().collect();
    let orders = [forward.clone(), backward, forward[n / 2..].iter().chain(&forward[..n / 2]).copied().collect()];
    orders.iter().find_map(|order| {
        let c: Vec<F2Vector> = order.iter().map(|&i| config[i]).collect();
        let t: Vec<F2Vector> = order.iter().map(|&i| target[i]).collect();
        let w = place_in_order(s, roots, &c, &t)?;
        let replay: Vec<F2Vector> = config.iter().map(|&x| w.apply(s, roots, x)).collect();
        (replay == target).then_some(w)
    })
}

fn place_in_order(s: &QuadSpace, roots: &[F2Vector], config: &[F2Vector], target: &[F2Vector]) -> Option<Word> {
    let index = |r: F2Vector| roots.binary_search(&r).expect("root");
    let mut cur = config.to_vec();
    let mut word = Vec::new();
    let apply = |cur: &mut Vec<F2Vector>, r: F2Vector| {
        for x in cur.iter_mut() {
            if s.b(*x, r) == 1 {
                *x ^= r;
            }
        }
    };
    for i in 0..cur.len() {
        let (x, y) = (cur[i], target[i]);
        if x == y {
            continue;
        }
        let placed = &target[..i];
        let usable = |r: F2Vector| placed.iter().all(|&p| s.b(p, r) == 0);
        if s.b(x, y) == 1 && usable(x ^ y) {
            word.push(index(x ^ y));
            apply(&mut cur, x ^ y);
            continue;
        }
        // two steps through an intermediate root z
        let z = roots.iter().copied().find(|&z| {
            s.b(x, z) == 1 && s.b(z, y) == 1 && usable(x ^ z) && usable(z ^ y) && s.q(x ^ z) == 1 && s.q(z ^ y) == 1
        });
        if let Some(z) = z {
            word.push(index(x ^ z));
            apply(&mut cur, x ^ z);
            word.push(index(z ^ y));
            apply(&mut cur, z ^ y);
            continue;
        }
        // breadth-first search over reflections in usable roots
        let gens: Vec<F2Vector> = roots.iter().copied().filter(|&r| usable(r)).collect();
        let mut prev: std::collections::HashMap<F2Vector, (F2Vector, F2Vector)> = Default::default();
        prev.insert(x, (x, 0));
        let mut queue = std::collections::VecDeque::from([x]);
        while let Some(p) = queue.pop_front() {
            if p == y {
                break;
            }
            for &r in &gens {
                let q = if s.b(p, r) == 1 { p ^ r } else { p };
                if let std::collections::hash_map::Entry::Vacant(e) = prev.entry(q) {
                    e.insert((p, r));
                    queue.push_back(q);
                }
            }
        }
        if !prev.contains_key(&y) {
            return None;
        }
        let mut path = Vec::new();
        let mut p = y;
        while p != x {
            let (q, r) = prev[&p];
            path.push(r);
            p = q;
        }
        for r in path.into_iter().rev() {
            word.push(index(r));
            apply(&mut cur, r);
        }
    }
    let w = Word(word);
    let replay: Vec<F2Vector> = config.iter().map(|&x| w.apply(s, roots, x)).collect();
    (replay == target).then_some(w)
}

#[derive(Clone, Debug, Serialize)]
pub struct TransitivityReport {
    pub name: String,
    pub seed: u64,
    pub trials: usize,
    pub sampled: usize,
    pub rejected_samples: usize,
    pub failures: usize,
    pub max_word_length: usize,
    /// First failing configuration, as subsets of E.
    pub counterexample: Option<Vec<String>>,
}

impl TransitivityReport {
    pub fn ok(&self) -> bool {
        self.failures == 0 && self.sampled == self.trials
    }
}

/// Per-trial seed, independent of scheduling.
pub fn trial_seed(seed: u64, type_index: usize, trial: usize) -> u64 {
    seed ^ (type_index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (trial as u64).wrapping_mul(0xBF58_476D_1CE4_E5B9)
}

pub fn random_transitivity(
    s: &QuadSpace,
    t: &ConfigType,
    type_index: usize,
    trials: usize,
    seed: u64,
) -> TransitivityReport {
    let roots = s.roots();
    let target = standard(s, t);
    let model = s.model.expect("subset model");
    let results: Vec<(usize, Option<usize>, Vec<F2Vector>)> = (0..trials)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, type_index, k));
            let mut rejected = 0;
            loop {
                if let Some(c) = sample(s, &roots, t, &mut rng) {
                    let w = canonicalize(s, &roots, &c, &target);
                    return (rejected, w.map(|w| w.0.len()), c);
                }
                rejected += 1;
                if rejected > 10_000 {
                    return (rejected, None, vec![]);
                }
            }
        })
        .collect();
    let failures: Vec<&(usize, Option<usize>, Vec<F2Vector>)> = results.iter().filter(|r| r.1.is_none()).collect();
    TransitivityReport {
        name: t.name.to_string(),
        seed,
        trials,
        sampled: results.iter().filter(|r| !r.2.is_empty()).count(),
        rejected_samples: results.iter().map(|r| r.0).sum(),
        failures: failures.len(),
        max_word_length: results.iter().filter_map(|r| r.1).max().unwrap_or(0),
        counterexample: failures.first().map(|r| r.2.iter().map(|&x| model.subset_string(x)).collect()),
    }
}

/// Configurations of the `A11` type coming from a random total order on E.
pub fn total_order_config(s: &QuadSpace, rng: &mut ChaCha8Rng) -> Vec<F2Vector> {
    let mut order = range(0, 12);
    order.shuffle(rng);
    chain(s, &order)
}

/// Exhaustive transitivity in a small space: every configuration of the given block shape
/// lies in the orbit of one of them under the full orthogonal group.
#[derive(Clone, Debug, Serialize)]
pub struct ExhaustiveReport {
    pub dim: usize,
    pub arf: u8,
    pub blocks: Vec<usize>,
    pub configurations: usize,
    pub orbit_size: usize,
    pub group_order: u64,
}

impl ExhaustiveReport {
    pub fn ok(&self) -> bool {
        self.configurations == self.orbit_size
    }
}

pub fn exhaustive_transitivity(s: &QuadSpace, blocks: &[usize]) -> Result<ExhaustiveReport> {
    let t = ConfigType { name: "small", blocks: blocks.iter().map(|&l| block(l)).collect() };
    let roots = s.roots();
    // all configurations by backtracking
    let mut all = Vec::new();
    fn rec(s: &QuadSpace, t: &ConfigType, roots: &[F2Vector], cur: &mut Vec<F2Vector>, all: &mut Vec<Vec<F2Vector>>) {
        if cur.len() == t.size() {
            if rank(cur) == t.size() {
                all.push(cur.clone());
            }
            return;
        }
        let i = cur.len();
        for &r in roots {
            if !cur.contains(&r) && (0..i).all(|j| s.b(r, cur[j]) == t.adjacency(i, j)) {
                cur.push(r);
                rec(s, t, roots, cur, all);
                cur.pop();
            }
        }
    }
    rec(s, &t, &roots, &mut Vec::new(), &mut all);
    let first = all.first().cloned().ok_or_else(|| Error::InvalidConfig("no configuration of this shape".into()))?;
    let basis: Vec<u32> = (0..s.dim()).map(|i| 1 << i).collect();
    let mut orbit = std::collections::BTreeSet::new();
    let order = for_each_isometry(&s.sym, Some(s.q_table()), &basis, &[], |img| {
        let g = F2Matrix { cols: img.to_vec() };
        orbit.insert(first.iter().map(|&x| g.apply(x)).collect::<Vec<_>>());
    });
    Ok(ExhaustiveReport {
        dim: s.dim(),
        arf: s.arf()?,
        blocks: blocks.to_vec(),
        configurations: all.len(),
        orbit_size: orbit.len(),
        group_order: order,
    })
}

/// Order of the pointwise stabilizer by direct enumeration of isometries fixing an
/// independent subset of the configuration, independent of any stabilizer chain.
pub fn stabilizer_order_enumerated(s: &QuadSpace, config: &[F2Vector]) -> u64 {
    let indep = extend_basis(&[], config);
    let basis = extend_basis(&indep, &(0..s.dim()).map(|i| 1u32 << i).collect::<Vec<_>>());
    for_each_isometry(&s.sym, Some(s.q_table()), &basis, &indep, |_| {})
}

/// An element of `Orth(q)` mapping the standard representative onto `config`, found by
/// sifting through a chain whose base starts with the standard representative.
pub fn orbit_element(group: &PermGroup, config: &[F2Vector]) -> Option<Perm> {
    group.element_mapping_base(config)
}

/// A random element of `Orth(q)` as a product of reflections, for sanity tests.
pub fn random_orthogonal(s: &QuadSpace, rng: &mut ChaCha8Rng, len: usize) -> F2Matrix {
    let roots = s.roots();
    let mut g = F2Matrix::identity(s.dim());
    for _ in 0..len {
        let r = roots[rng.gen_range(0..roots.len())];
        g = g.then(&s.reflection(r).unwrap());
    }
    g
}

/// Generators of `Orth(q)` for the model, shared by the stabilizer computations.
pub fn model_orth_generators(s: &QuadSpace) -> Result<Vec<F2Matrix>> {
    orthogonal_generators(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_representatives_have_their_type() {
        let s = model();
        for t in config_types() {
            let v = standard(&s, &t);
            assert!(is_of_type(&s, &t, &v), "{}", t.name);
        }
    }

    #[test]
    fn random_image_reduces_back() {
        let s = model();
        let roots = s.roots();
        let t = config_type("A3").unwrap();
        let target = standard(&s, &t);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let g = random_orthogonal(&s, &mut rng, 30);
            let c: Vec<F2Vector> = target.iter().map(|&x| g.apply(x)).collect();
            assert!(canonicalize(&s, &roots, &c, &target).is_some());
        }
    }

    #[test]
    fn total_orders_reduce_to_the_standard_chain() {
        let s = model();
        let roots = s.roots();
        let t = config_type("A11").unwrap();
        let target = standard(&s, &t);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let c = total_order_config(&s, &mut rng);
            assert!(is_of_type(&s, &t, &c));
            assert!(canonicalize(&s, &roots, &c, &target).is_some());
        }
    }

    #[test]
    fn small_stabilizers() {
        let s = model();
        let orth = model_orth_generators(&s).unwrap();
        for name in ["2A3", "A3+A4", "2A4", "(2A3)'+A3", "(3A3)'", "(2A3)'+A4"] {
            let t = config_type(name).unwrap();
            let r = stabilizer(&s, &orth, &t).unwrap();
            assert!(r.ok(), "{r:?}");
            let direct = stabilizer_order_enumerated(&s, &standard(&s, &t));
            assert_eq!(r.chain_order, direct as u128, "{name}");
        }
    }

    #[test]
    fn three_shared_kernels_have_a_larger_stabilizer() {
        // the perp of (3A3)' is 3-dimensional, so a second Eichler transformation appears
        let s = model();
        let t = config_type("(3A3)'").unwrap();
        let cfg = standard(&s, &t);
        assert_eq!(s.sym.perp(&cfg).len(), 3);
        assert_eq!(stabilizer_order_enumerated(&s, &cfg), 8);
        let extra = u_map(&s, sub(&s, &range(0, 4)), sub(&s, &[4, 5, 6, 10]));
        assert!(s.preserves(&extra) && cfg.iter().all(|&x| extra.apply(x) == x));
        let (gens, _) = proof_generators(&s, &t);
        let with_extra = [gens.clone(), vec![extra]].concat();
        assert_eq!(matrix_group(s.dim(), &gens, &[]).unwrap().order(), 4);
        assert_eq!(matrix_group(s.dim(), &with_extra, &[]).unwrap().order(), 8);
    }

    #[test]
    fn exhaustive_small_spaces() {
        for arf in [0, 1] {
            let s = QuadSpace::standard(3, arf);
            for blocks in [vec![1], vec![2], vec![1, 1]] {
                let r = exhaustive_transitivity(&s, &blocks).unwrap();
                assert!(r.ok(), "{r:?}");
            }
        }
    }
}
