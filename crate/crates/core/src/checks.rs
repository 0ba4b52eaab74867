//! Registry of verification checks. Each check computes its values, compares them with the
//! expected ones and returns a report whose JSON form has sorted keys.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::bimonster;
use crate::eisenstein::Eis;
use crate::error::{Error, Result};
use crate::f2::{self, QuadSpace};
use crate::f2config;
use crate::glue::{self, GlueSpace};
use crate::lattice::HermitianLattice;
use crate::matrix::EisMatrix;
use crate::roots;
use crate::simplex;
use crate::witnesses;
use crate::zoo;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Stated in the literature the toolkit reproduces.
    Published,
    /// Immediate from the definitions.
    Elementary,
    /// Computed here and confirmed by an independent route.
    Derived,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub tool_version: String,
    pub check: String,
    pub status: Status,
    pub values: Map<String, Value>,
    pub provenance: Map<String, Value>,
}

impl VerificationReport {
    fn new(check: &str) -> Self {
        VerificationReport {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            check: check.to_string(),
            status: Status::Pass,
            values: Map::new(),
            provenance: Map::new(),
        }
    }

    /// Records a computed value without an expectation.
    fn info(&mut self, key: &str, v: impl Serialize) {
        self.values.insert(key.to_string(), serde_json::to_value(v).expect("serializable"));
    }

    /// Records a computed value and its expectation; a mismatch fails the check.
    fn expect<T: Serialize + PartialEq>(&mut self, key: &str, computed: T, expected: T, prov: Provenance) {
        if computed != expected && self.status == Status::Pass {
            self.status = Status::Fail;
        }
        self.values.insert(key.to_string(), json!({ "computed": computed, "expected": expected }));
        self.provenance.insert(key.to_string(), serde_json::to_value(prov).expect("serializable"));
    }

    fn require(&mut self, key: &str, ok: bool, prov: Provenance) {
        self.expect(key, ok, true, prov);
    }

    /// One line of sorted-key JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_value(self).expect("serializable").to_string()
    }

    pub fn to_text(&self) -> String {
        let status = serde_json::to_value(self.status).expect("serializable");
        let mut s = format!("{} {} (eisentool {})\n", self.check, status.as_str().unwrap_or("?"), self.tool_version);
        for (k, v) in &self.values {
            match self.provenance.get(k).and_then(Value::as_str) {
                Some(p) => s.push_str(&format!("  {k} = {v} [{p}]\n")),
                None => s.push_str(&format!("  {k} = {v}\n")),
            }
        }
        s
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub seed: u64,
    pub trials: usize,
    pub cap: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { seed: 0, trials: 10_000, cap: roots::closure_cap() }
    }
}

type CheckFn = fn(&Options, &mut VerificationReport) -> Result<()>;

pub const CHECK_IDS: [&str; 14] = [
    "disc-forms",
    "form-axioms",
    "witnesses",
    "short-vectors",
    "group-orders",
    "scalar-identities",
    "overlattices",
    "psi-embeddings",
    "simplices",
    "f2-brute-force",
    "f2-stabilizers",
    "orth-order",
    "bimonster-table",
    "determinism",
];

fn lookup(id: &str) -> Option<CheckFn> {
    Some(match id {
        "disc-forms" => disc_forms,
        "form-axioms" => form_axioms,
        "witnesses" => witness_suite,
        "short-vectors" => short_vectors,
        "group-orders" => group_orders,
        "scalar-identities" => scalar_identities,
        "overlattices" => overlattices,
        "psi-embeddings" => psi_embeddings,
        "simplices" => simplices,
        "f2-brute-force" => f2_brute_force,
        "f2-stabilizers" => f2_stabilizers,
        "orth-order" => orth_order,
        "bimonster-table" => bimonster_table,
        "determinism" => determinism,
        _ => return None,
    })
}

pub fn is_check(id: &str) -> bool {
    lookup(id).is_some()
}

/// Runs one check. A closure over the cap yields a skipped report; other errors propagate.
pub fn run(id: &str, opts: &Options) -> Result<VerificationReport> {
    let f = lookup(id).ok_or_else(|| Error::UnknownName(id.to_string()))?;
    let mut r = VerificationReport::new(id);
    match f(opts, &mut r) {
        Ok(()) => Ok(r),
        Err(Error::CapExceeded { cap }) => {
            r.status = Status::Skipped;
            r.info("skipped_cap", cap);
            Ok(r)
        }
        Err(e) => Err(e),
    }
}

use Provenance::*;

fn disc_forms(_: &Options, r: &mut VerificationReport) -> Result<()> {
    let expected = [("L1", "x1^2", 3u64), ("L2", "N(y1)", 4), ("L3", "- x1^2", 3), ("L4", "0", 1)];
    for (i, (name, form, order)) in expected.into_iter().enumerate() {
        let f = crate::disc::disc_form(&zoo::l(i + 1))?;
        let prov = if i < 3 { Published } else { Elementary };
        r.expect(&format!("{name}.form"), f.describe(), form.to_string(), prov);
        r.expect(&format!("{name}.order"), f.order(), order, Published);
    }
    Ok(())
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Eis> {
    (0..n).map(|_| Eis::new(rng.gen_range(-9..10), rng.gen_range(-9..10))).collect()
}

fn z_coords(v: &[Eis]) -> Vec<i64> {
    v.iter().flat_map(|x| [x.a, x.b]).collect()
}

fn z_dot(z: &[Vec<i64>], x: &[i64], y: &[i64]) -> i64 {
    (0..x.len()).map(|i| (0..y.len()).map(|j| x[i] * z[i][j] * y[j]).sum::<i64>()).sum()
}

fn form_axioms(opts: &Options, r: &mut VerificationReport) -> Result<()> {
    let lattices: Vec<HermitianLattice> = ["L1", "L2", "L3", "L4", "H", "H(t)", "L1 + L3 + H", "3*L4 + H"]
        .iter()
        .map(|s| zoo::make(s))
        .collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let pairs = 100_000;
    let (mut trace, mut hermitian, mut linear) = (0usize, 0usize, 0usize);
    for k in 0..pairs {
        let l = &lattices[k % lattices.len()];
        let z = l.z_gram();
        let n = l.rank();
        let (x, y) = (random_vector(&mut rng, n), random_vector(&mut rng, n));
        let lam = Eis::new(rng.gen_range(-5..6), rng.gen_range(-5..6));
        let xy = l.inner(&x, &y);
        let yx = l.inner(&y, &x);
        if xy + yx == Eis::from(3 * z_dot(&z, &z_coords(&x), &z_coords(&y))) {
            trace += 1;
        }
        if yx == xy.conj() {
            hermitian += 1;
        }
        let lx: Vec<Eis> = x.iter().map(|&c| lam * c).collect();
        if l.inner(&lx, &y) == lam * xy && l.inner(&y, &lx) == lam.conj() * yx {
            linear += 1;
        }
    }
    r.info("seed", opts.seed);
    r.expect("pairs_trace_identity", trace, pairs, Elementary);
    r.expect("pairs_hermitian_symmetry", hermitian, pairs, Elementary);
    r.expect("pairs_sesquilinear", linear, pairs, Elementary);
    Ok(())
}

fn comb(a: Eis, x: &[Eis], b: Eis, y: &[Eis]) -> Vec<Eis> {
    x.iter().zip(y).map(|(&p, &q)| a * p + b * q).collect()
}

fn witness_suite(_: &Options, r: &mut VerificationReport) -> Result<()> {
    let l5 = zoo::l(5);
    let k = witnesses::l5_kernel();
    r.require("four_period.l5_kernel", l5.pairings_with_basis(&k).iter().all(Eis::is_zero), Published);
    let w = witnesses::four_period();
    r.require("four_period.l6_isometry", witnesses::verify_witness(&w)?.ok(), Published);
    let w = witnesses::interesting_iso();
    r.require("interesting_iso.isometry", witnesses::verify_witness(&w)?.ok(), Published);
    let l = zoo::make("L1 + L3 + H")?;
    let (t, z, o) = (Eis::THETA, Eis::ZERO, Eis::ONE);
    let u = vec![o, z, z, z, t, z];
    let v = vec![z, o, -t, Eis::from(-2), z, t];
    let e = comb(o, &u, Eis::WBAR, &v);
    let f = comb(Eis::from(-2) * Eis::W, &u, -o, &v);
    r.expect("interesting_iso.uu", l.inner(&u, &u), Eis::from(3), Published);
    r.expect("interesting_iso.vv", l.inner(&v, &v), Eis::from(6), Published);
    r.expect("interesting_iso.uv", l.inner(&u, &v), Eis::from(3) * t, Published);
    r.expect("interesting_iso.ee", l.inner(&e, &e), z, Published);
    r.expect("interesting_iso.ff", l.inner(&f, &f), z, Published);
    r.expect("interesting_iso.ef", l.inner(&e, &f), Eis::from(-3), Published);
    let corank: Vec<bool> =
        witnesses::corank_one_vectors().iter().map(|c| witnesses::check_corank_one(c).ok()).collect();
    r.expect("corank_one", corank, vec![true; 6], Published);
    let c = witnesses::check_three_l3(&witnesses::three_l3())?;
    r.require("three_l3.gram", c.gram_is_3l3, Published);
    r.expect("three_l3.complement_norm", c.complement_norm, Some(-3), Published);
    r.require("three_l3.ok", c.ok(), Published);
    for name in ["peculiar_1", "peculiar_2"] {
        let w = witnesses::named_witness(name)?;
        r.info(&format!("{name}.statement"), format!("{} = {}", w.source, w.target));
        r.require(&format!("{name}.isometry"), witnesses::verify_witness(&w)?.ok(), Derived);
    }
    r.require(
        "ldm_decomposition.isometry",
        witnesses::verify_witness(&witnesses::ldm_decomposition())?.ok(),
        Published,
    );
    Ok(())
}

fn short_vectors(_: &Options, r: &mut VerificationReport) -> Result<()> {
    let expected = [6usize, 24, 72, 240];
    let mut counts = Vec::new();
    let mut oracle = Vec::new();
    for k in 1..=4 {
        let l = zoo::l(k);
        counts.push(roots::short_vectors(&l, 3)?.len());
        oracle.push(roots::z_root_closure_count(&l));
    }
    r.expect("norm3_counts", counts, expected.to_vec(), Derived);
    r.expect("z_root_closure_counts", oracle, expected.to_vec(), Derived);
    Ok(())
}

/// Degrees of the reflection groups `G(L1)..G(L4)` as complex reflection groups.
const DEGREES: [&[u64]; 4] = [&[3], &[4, 6], &[6, 9, 12], &[12, 18, 24, 30]];

fn group_orders(opts: &Options, r: &mut VerificationReport) -> Result<()> {
    let mut g_orders = Vec::new();
    let mut indices = Vec::new();
    let mut reflections = Vec::new();
    for k in 1..=4 {
        let l = zoo::l(k);
        let g = roots::triflection_group(&l, opts.cap)?.len() as u64;
        let u = roots::unitary_group(&l, opts.cap)?.len() as u64;
        g_orders.push(g);
        indices.push(u / g);
        // each line of 3-vectors carries two nontrivial triflections
        reflections.push(2 * roots::short_vectors(&l, 3)?.len() as u64 / 6);
    }
    let degree_products: Vec<u64> = DEGREES.iter().map(|d| d.iter().product()).collect();
    let degree_sums: Vec<u64> = DEGREES.iter().map(|d| d.iter().map(|x| x - 1).sum()).collect();
    r.expect("G_L1", g_orders[0], 3, Published);
    r.expect("G_L3", g_orders[2], 648, Published);
    r.expect("G_L4", g_orders[3], 155_520, Published);
    r.expect("G_orders_vs_degree_products", g_orders.clone(), degree_products, Derived);
    r.expect("reflection_counts_vs_degree_sums", reflections, degree_sums, Derived);
    r.expect("U_over_G", indices, vec![2, 3, 2, 1], Published);
    Ok(())
}

fn scalar_identities(_: &Options, r: &mut VerificationReport) -> Result<()> {
    let h = zoo::h();
    let a = vec![Eis::ONE, Eis::W];
    let b = vec![Eis::ONE, Eis::WBAR];
    // with <e, f> in theta E, the norms of e + w f and e + wbar f add up to zero
    r.info("H.norms", (h.norm(&a), h.norm(&b)));
    r.expect("H.orthogonal", h.inner(&a, &b), Eis::ZERO, Published);
    let prod = roots::triflection(&h, &a)?.mul(&roots::triflection(&h, &b)?)?;
    r.require("H.t_product_is_w", prod == EisMatrix::identity(2).scale(Eis::W), Published);
    // every special 3-vector of L1 + L3 + L1 carries a hexaflection
    let l = zoo::make("L1 + L3 + L1")?;
    let (mut count, mut ok) = (0, true);
    for v in roots::short_vectors(&l, 3)? {
        if !roots::is_special(&l, &v) {
            continue;
        }
        count += 1;
        let tp = roots::hexaflection(&l, &v)?;
        let t = roots::triflection(&l, &v)?;
        let s = roots::biflection(&l, &v)?;
        let tp2 = tp.mul(&tp)?;
        ok &= tp2 == t && tp2.mul(&tp)? == s;
        ok &= roots::matrix_order(&tp, 12) == Some(6);
    }
    r.info("special_3_vectors_tested", count);
    r.require("hexaflection_powers", ok && count > 0, Published);
    Ok(())
}

fn space(s: &str) -> Result<GlueSpace> {
    GlueSpace::from_expr(&zoo::parse(s)?)
}

fn isometric(a: &HermitianLattice, b: &HermitianLattice) -> Result<bool> {
    Ok(roots::find_isometry(a, b)?.is_some())
}

fn overlattices(_: &Options, r: &mut VerificationReport) -> Result<()> {
    r.expect("2L1.classes", glue::classify_overlattices(&space("2*L1")?)?.len(), 0, Published);
    for (expr, target) in [("L1 + L3", "L4"), ("3*L1", "L3"), ("2*L2", "L4")] {
        let cls = glue::classify_overlattices(&space(expr)?)?;
        let t = zoo::make(target)?;
        let iso: Vec<bool> = cls.iter().map(|c| isometric(&t, &c.overlattice.lattice)).collect::<Result<_>>()?;
        r.info(&format!("{expr}.degrees"), cls.iter().map(|c| c.degree).collect::<Vec<_>>());
        r.expect(&format!("{expr}.classes"), cls.len(), 1, Published);
        r.expect(&format!("{expr}.isometric_to_{target}"), iso, vec![true], Published);
    }
    let cls = glue::classify_overlattices(&space("3*L3")?)?;
    r.expect("3L3.class_degrees", cls.iter().map(|c| c.degree).collect::<Vec<_>>(), vec![3], Published);
    let prime = cls[0].overlattice.lattice.clone();
    let cls = glue::classify_overlattices(&space("4*L3")?)?;
    let full: Vec<&glue::OverlatticeClass> = cls.iter().filter(|c| c.full_support).collect();
    r.info("4L3.classes", cls.iter().map(|c| (c.degree, c.full_support)).collect::<Vec<_>>());
    r.expect("4L3.full_support_degrees", full.iter().map(|c| c.degree).collect::<Vec<_>>(), vec![9], Published);
    if let Some(c) = full.first() {
        let z = c.overlattice.lattice.z_gram();
        let even = z.iter().enumerate().all(|(i, row)| row[i] % 2 == 0);
        let det = c.overlattice.lattice.z_det();
        r.expect("4L3.z_rank_det_even", (z.len(), det.to_string(), even), (24, "1".to_string(), true), Published);
    }
    let with = HermitianLattice::orthogonal_sum(&[&prime, &zoo::make("L1(-1)")?]);
    let gs = GlueSpace::from_lattice(&with)?;
    let mut signs = gs.form.f3_signs.clone();
    signs.sort_unstable();
    r.info("3L3prime+L1(-1).form", gs.form.describe());
    r.expect("3L3prime+L1(-1).f3_signs", (signs, gs.form.f4_rank()), (vec![-1, 1], 0), Published);
    r.expect("3L3prime+L1(-1).isotropic_lines", glue::isotropic_line_count(&gs), 2, Published);
    Ok(())
}

fn psi_embeddings(_: &Options, r: &mut VerificationReport) -> Result<()> {
    let mut tuples = 0;
    let mut mismatches = Vec::new();
    for k1 in 0..=6 {
        for k2 in 0..=6 - k1 {
            for k3 in 0..=6 - k1 - k2 {
                for k4 in 0..=6 - k1 - k2 - k3 {
                    let k = [k1, k2, k3, k4];
                    tuples += 1;
                    let corank = 4 * glue::psi(k) as i64 - glue::chain_rank(k) as i64;
                    let e = glue::standard_embedding(k)?;
                    let gram_ok = e.host.gram_of(&e.matrix) == *e.sub.gram();
                    if corank != glue::corank_by_cases(k) || !gram_ok || e.host.rank() != 4 * glue::psi(k) {
                        mismatches.push(k);
                    }
                }
            }
        }
    }
    r.info("tuples", tuples);
    r.expect("psi_mismatches", mismatches, vec![], Published);
    let mut degrees = Vec::new();
    for p in 0..=3 {
        for q in 0..=3 - p {
            if p + q == 0 {
                continue;
            }
            let e = glue::standard_embedding([0, 0, p, q])?;
            degrees.push(((p, q), glue::primitive_hull(&e.matrix)?.degree));
        }
    }
    let expected: Vec<((usize, usize), u64)> = degrees.iter().map(|(pq, _)| (*pq, 1)).collect();
    r.expect("pL3_qL4_hull_degrees", degrees, expected, Published);
    Ok(())
}

fn simplices(_: &Options, r: &mut VerificationReport) -> Result<()> {
    let checks = simplex::check_all()?;
    r.expect("count", checks.len(), 13, Published);
    let degrees: Vec<(String, u64)> = checks.iter().map(|c| (c.label.clone(), c.hull_degree)).collect();
    let expected: Vec<(String, u64)> = checks.iter().map(|c| (c.label.clone(), c.expected_hull_degree)).collect();
    r.expect("hull_degrees", degrees, expected, Published);
    let comp: Vec<(String, bool)> =
        checks.iter().map(|c| (c.label.clone(), c.complement == c.expected_complement)).collect();
    let all: Vec<(String, bool)> = checks.iter().map(|c| (c.label.clone(), true)).collect();
    r.expect("complement_invariants_match", comp, all.clone(), Published);
    let types: Vec<(String, bool)> = checks.iter().map(|c| (c.label.clone(), c.gram_ok)).collect();
    r.expect("representative_types", types, all, Derived);
    let hull: Vec<(usize, i64, bool)> = checks.iter().filter_map(|c| c.hull_z).collect();
    r.expect("degree9_hull_z", hull, vec![(24, 1, true)], Published);
    Ok(())
}

fn f2_brute_force(_: &Options, r: &mut VerificationReport) -> Result<()> {
    let rows = f2::arf_table(2..=13)?;
    r.info("arf_table", rows.iter().map(|a| (a.n, a.dim, a.radical_dim, a.arf)).collect::<Vec<_>>());
    r.expect("arf_table_ok", rows.iter().filter(|a| !a.ok).map(|a| a.n).collect::<Vec<_>>(), vec![], Published);
    let rc = f2::root_count_12()?;
    r.expect("dim10_roots", (rc.total, rc.two_subsets, rc.partitions), (528, 66, 462), Published);
    r.expect("dim10_value_counts", (rc.zeros, rc.ones, rc.arf), (496, 528, 1), Derived);
    let mut seq = Vec::new();
    for k in [2, 3, 4] {
        for arf in [0, 1] {
            let c = f2::reflection_centralizer_enumerated(&QuadSpace::standard(k, arf))?;
            seq.push(((c.dim, c.arf), c.stabilizer_order, 2 * c.sp_formula, c.ok()));
        }
    }
    for arf in [0, 1] {
        let c = f2::reflection_centralizer_chain(&QuadSpace::standard(5, arf))?;
        seq.push(((c.dim, c.arf), c.stabilizer_order, 2 * c.sp_formula, c.ok()));
    }
    let expected: Vec<_> = seq.iter().map(|&(d, _, two_sp, _)| (d, two_sp, two_sp, true)).collect();
    r.expect("reflection_centralizer", seq, expected, Published);
    Ok(())
}

fn f2_stabilizers(opts: &Options, r: &mut VerificationReport) -> Result<()> {
    let s = f2config::model();
    let orth = f2config::model_orth_generators(&s)?;
    let mut generated = Vec::new();
    let mut expected = Vec::new();
    let mut full = Vec::new();
    for t in f2config::config_types() {
        let Some(e) = f2config::expected_stabilizer_order(t.name) else { continue };
        let st = f2config::stabilizer(&s, &orth, &t)?;
        r.require(
            &format!("stabilizer.{}.generators_fix_and_preserve", t.name),
            st.generators_fix_config && st.generators_preserve_q,
            Elementary,
        );
        generated.push((t.name, st.generated_order));
        expected.push((t.name, e));
        full.push((t.name, st.chain_order));
    }
    r.expect("stabilizer_generated_orders", generated, expected, Published);
    r.info("stabilizer_full_orders", full);
    let a4 = f2config::a4_action(&s)?;
    r.expect("a4.faithful_on_8_points", (a4.group_order, a4.image_order), (40_320, 40_320), Published);
    r.expect("a4.perp_orth_order", a4.perp_orth_order, 40_320, Published);
    r.expect("a4.perp_arf", a4.perp_arf, 0, Derived);
    r.info("seed", opts.seed);
    r.info("trials", opts.trials);
    let mut failures = Vec::new();
    for (i, t) in f2config::config_types().iter().enumerate() {
        let rep = f2config::random_transitivity(&s, t, i, opts.trials, opts.seed);
        r.info(
            &format!("transitivity.{}", t.name),
            json!({"sampled": rep.sampled, "max_word_length": rep.max_word_length, "failures": rep.failures}),
        );
        failures.push((t.name, rep.failures + (opts.trials - rep.sampled)));
    }
    let zero: Vec<(&str, usize)> = failures.iter().map(|(n, _)| (*n, 0)).collect();
    r.expect("transitivity_failures", failures, zero, Published);
    if opts.trials < 10_000 {
        r.expect("trials_at_least_10000", opts.trials, 10_000, Published);
    }
    Ok(())
}

fn orth_order(_: &Options, r: &mut VerificationReport) -> Result<()> {
    let s = f2::h_e_prime(12)?;
    let o = f2::orth_order(&s)?;
    r.expect("arf", o.arf, 1, Published);
    r.expect("chain_order_vs_formula", o.chain_order, o.formula, Derived);
    r.expect("formula", o.formula, 2 * (1u128 << 20) * 33 * 3 * 15 * 63 * 255, Derived);
    r.require("all_reflections_members", o.all_reflections_member, Elementary);
    Ok(())
}

fn bimonster_table(_: &Options, r: &mut VerificationReport) -> Result<()> {
    let rows = bimonster::cross_check()?;
    for row in &rows {
        r.expect(&format!("entry.{}", row.entry), row.computed_order, row.expected_order, Published);
        if let Some((src, o)) = &row.second_source {
            r.info(&format!("entry.{}.also", row.entry), json!({ "source": src, "order": o }));
        }
    }
    let c = bimonster::classify(12)?;
    r.require("s12_conjugators", c.entries.iter().all(|e| e.conjugator_ok), Derived);
    r.info("s12_descriptors", c.entries.iter().map(|e| e.label.clone()).collect::<Vec<_>>());
    r.info("s12_nonempty_count", c.nonempty_count);
    r.info("s12_count_with_trivial", c.count_with_trivial);
    r.info("s12_reading", c.reading.clone());
    r.expect("s12_class_count", c.count_with_trivial, c.expected, Published);
    Ok(())
}

fn determinism(opts: &Options, r: &mut VerificationReport) -> Result<()> {
    let s = f2config::model();
    let t = f2config::config_type("A3+A4")?;
    let run = |threads: usize| -> Result<String> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::InvalidConfig(e.to_string()))?;
        let rep = pool.install(|| f2config::random_transitivity(&s, &t, 3, 500, opts.seed));
        Ok(serde_json::to_string(&rep).expect("serializable"))
    };
    let one = run(1)?;
    let four = run(4)?;
    r.info("seed", opts.seed);
    r.require("transitivity_report_identical_for_1_and_4_threads", one == four, Elementary);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_registered() {
        for id in CHECK_IDS {
            assert!(is_check(id), "{id}");
        }
        assert!(!is_check("no-such-check"));
    }

    #[test]
    fn quick_checks_pass() {
        let o = Options::default();
        for id in ["disc-forms", "short-vectors", "scalar-identities", "psi-embeddings"] {
            let r = run(id, &o).unwrap();
            assert_eq!(r.status, Status::Pass, "{}", r.to_text());
        }
    }

    #[test]
    fn json_keys_are_sorted() {
        let r = run("disc-forms", &Options::default()).unwrap();
        let j = r.to_json();
        let (c, p, s, t) = (
            j.find("\"check\"").unwrap(),
            j.find("\"provenance\"").unwrap(),
            j.find("\"status\"").unwrap(),
            j.find("\"tool_version\"").unwrap(),
        );
        assert!(c < p && p < s && s < t);
    }
}
