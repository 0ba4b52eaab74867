//! Runs `eisentool verify all --json` twice and checks every criterion against exact
//! values written out here, independently of the expectations the tool carries.

use std::collections::BTreeMap;
use std::process::Command;

use serde_json::{json, Value};

fn verify_all(threads: &str) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_eisentool"))
        .args(["verify", "all", "--json"])
        .env("RAYON_NUM_THREADS", threads)
        .env_remove("EISENTOOL_SEED")
        .env_remove("EISENTOOL_MAX_CLOSURE")
        .output()
        .expect("eisentool runs");
    (String::from_utf8(out.stdout).expect("utf8"), out.status.code().unwrap_or(-1))
}

struct Reports(BTreeMap<String, Value>);

impl Reports {
    fn parse(text: &str) -> Reports {
        let mut m = BTreeMap::new();
        for line in text.lines() {
            let v: Value = serde_json::from_str(line).expect("one JSON object per line");
            m.insert(v["check"].as_str().expect("check id").to_string(), v);
        }
        Reports(m)
    }

    fn passed(&self, id: &str) -> bool {
        self.0.get(id).is_some_and(|r| r["status"] == "pass")
    }

    fn computed(&self, id: &str, key: &str) -> Value {
        let v = &self.0[id]["values"][key];
        match v.get("computed") {
            Some(c) => c.clone(),
            None => v.clone(),
        }
    }
}

/// One row per criterion: the check must pass and the listed values must equal the
/// literals exactly.
fn criteria(r: &Reports) -> Vec<(usize, &'static str, bool, String)> {
    let mut rows = Vec::new();
    let mut row = |n: usize, id: &'static str, checks: Vec<(&str, Value)>| {
        let mut bad = Vec::new();
        if !r.passed(id) {
            bad.push(format!("status {}", r.0.get(id).map_or(json!("missing"), |x| x["status"].clone())));
        }
        for (key, want) in checks {
            let got = if r.0.contains_key(id) { r.computed(id, key) } else { Value::Null };
            if got != want {
                bad.push(format!("{key}: got {got}, want {want}"));
            }
        }
        rows.push((n, id, bad.is_empty(), bad.join("; ")));
    };

    row(
        1,
        "disc-forms",
        vec![
            ("L1.form", json!("x1^2")),
            ("L2.form", json!("N(y1)")),
            ("L3.form", json!("- x1^2")),
            ("L1.order", json!(3)),
            ("L2.order", json!(4)),
            ("L3.order", json!(3)),
            ("L4.order", json!(1)),
        ],
    );
    row(
        2,
        "form-axioms",
        vec![
            ("pairs_trace_identity", json!(100_000)),
            ("pairs_hermitian_symmetry", json!(100_000)),
            ("pairs_sesquilinear", json!(100_000)),
        ],
    );
    row(
        3,
        "witnesses",
        vec![
            ("four_period.l5_kernel", json!(true)),
            ("four_period.l6_isometry", json!(true)),
            ("interesting_iso.uu", json!([3, 0])),
            ("interesting_iso.vv", json!([6, 0])),
            ("interesting_iso.uv", json!([3, 6])),
            ("interesting_iso.ee", json!([0, 0])),
            ("interesting_iso.ff", json!([0, 0])),
            ("interesting_iso.ef", json!([-3, 0])),
            ("corank_one", json!([true, true, true, true, true, true])),
            ("three_l3.complement_norm", json!(-3)),
            ("three_l3.ok", json!(true)),
            ("peculiar_1.isometry", json!(true)),
            ("peculiar_2.isometry", json!(true)),
        ],
    );
    row(
        4,
        "short-vectors",
        vec![("norm3_counts", json!([6, 24, 72, 240])), ("z_root_closure_counts", json!([6, 24, 72, 240]))],
    );
    row(
        5,
        "group-orders",
        vec![
            ("G_L1", json!(3)),
            ("U_over_G", json!([2, 3, 2, 1])),
            ("G_L3", json!(648)),
            ("G_L4", json!(155_520)),
            ("G_orders_vs_degree_products", json!([3, 24, 648, 155_520])),
        ],
    );
    row(6, "scalar-identities", vec![("H.t_product_is_w", json!(true)), ("hexaflection_powers", json!(true))]);
    row(
        7,
        "overlattices",
        vec![
            ("2L1.classes", json!(0)),
            ("L1 + L3.classes", json!(1)),
            ("L1 + L3.isometric_to_L4", json!([true])),
            ("3*L1.isometric_to_L3", json!([true])),
            ("2*L2.isometric_to_L4", json!([true])),
            ("3L3.class_degrees", json!([3])),
            ("4L3.full_support_degrees", json!([9])),
            ("4L3.z_rank_det_even", json!([24, "1", true])),
            ("3L3prime+L1(-1).isotropic_lines", json!(2)),
        ],
    );
    row(8, "psi-embeddings", vec![("psi_mismatches", json!([]))]);
    row(
        9,
        "simplices",
        vec![
            ("count", json!(13)),
            (
                "hull_degrees",
                json!([
                    ["L3", 1],
                    ["2L3", 1],
                    ["3L3", 1],
                    ["(3L3)'", 3],
                    ["(3L3)'+L3", 3],
                    ["(4L3)'", 9],
                    ["L4", 1],
                    ["L3+L4", 1],
                    ["2L3+L4", 1],
                    ["(3L3)'+L4", 3],
                    ["2L4", 1],
                    ["L3+2L4", 1],
                    ["3L4", 1]
                ]),
            ),
        ],
    );
    row(10, "f2-brute-force", vec![("arf_table_ok", json!([])), ("dim10_roots", json!([528, 66, 462]))]);
    row(
        11,
        "f2-stabilizers",
        vec![
            (
                "stabilizer_generated_orders",
                json!([
                    ["A3", 2_580_480],
                    ["A4", 40_320],
                    ["2A3", 192],
                    ["A3+A4", 24],
                    ["2A4", 6],
                    ["(2A3)'", 1920],
                    ["(2A3)'+A3", 2],
                    ["(3A3)'", 4],
                    ["(2A3)'+A4", 1]
                ]),
            ),
            ("a4.faithful_on_8_points", json!([40_320, 40_320])),
            ("seed", json!(0)),
        ],
    );
    // 2 * 2^20 * (2^5 + 1) * 3 * 15 * 63 * 255
    row(12, "orth-order", vec![("chain_order_vs_formula", json!(50_030_759_116_800u64)), ("arf", json!(1))]);
    row(
        13,
        "bimonster-table",
        vec![
            ("entry.(2,0)", json!(2_580_480)),
            ("entry.(1,1)", json!(40_320)),
            ("entry.(0,2)", json!(5040)),
            ("entry.(3,0)", json!(192)),
            ("entry.(2,1)", json!(24)),
            ("entry.(1,2)", json!(6)),
            ("entry.(0,3)", json!(2)),
            ("entry.(4,0)'", json!(4)),
            ("entry.(3,0)'", json!(1920)),
            ("entry.(3,0)'+(1,0)", json!(2)),
            ("entry.(3,1)'", json!(1)),
            ("s12_class_count", json!(7)),
        ],
    );
    rows
}

#[test]
fn acceptance_criteria() {
    let (a, code_a) = verify_all("1");
    let (b, _) = verify_all("4");
    let r = Reports::parse(&a);
    assert_eq!(r.0.len(), 14, "one report per check");

    let mut rows = criteria(&r);
    let ok14 = a == b && r.passed("determinism");
    rows.push((
        14,
        "determinism",
        ok14,
        if ok14 { String::new() } else { "outputs differ between 1 and 4 threads".into() },
    ));

    for (n, id, ok, why) in &rows {
        let verdict = if *ok { "PASS" } else { "FAIL" };
        if why.is_empty() {
            println!("criterion {n:>2} {id:<18} {verdict}");
        } else {
            println!("criterion {n:>2} {id:<18} {verdict}  ({why})");
        }
    }
    let all = rows.iter().all(|r| r.2);
    assert_eq!(code_a, if all { 0 } else { 1 }, "exit code agrees with the reports");
    let failed: Vec<usize> = rows.iter().filter(|r| !r.2).map(|r| r.0).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
