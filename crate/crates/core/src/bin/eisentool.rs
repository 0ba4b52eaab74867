use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use eisentool::checks::{self, Options, Status};
use eisentool::f2::{self, QuadSpace};
use eisentool::glue::{self, GlueSpace};
use eisentool::lattice::HermitianLattice;
use eisentool::{bimonster, f2config, roots, simplex, witnesses, zoo, Eis, Error};

#[derive(Parser)]
#[command(name = "eisentool", version, about = "Eisenstein lattices, discriminant forms and F2 quadratic forms")]
struct Cli {
    /// Emit one line of sorted-key JSON per record.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a verification check, or `all`.
    Verify {
        check: String,
        /// Exit with 3 when a check was skipped because of the closure cap.
        #[arg(long)]
        strict: bool,
        /// Largest closure size before a check is skipped.
        #[arg(long)]
        cap: Option<usize>,
        /// Seed for randomized trials (default: EISENTOOL_SEED or 0).
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
    },
    /// Print the Gram matrix of a lattice expression.
    Gram { expr: String },
    /// Discriminant module and form of a lattice expression.
    Disc { expr: String },
    /// Vectors of a given norm in a positive definite lattice.
    Short {
        expr: String,
        norm: i64,
        /// Print only the count.
        #[arg(long)]
        count: bool,
    },
    /// Order of the triflection group or the full unitary group.
    Group {
        #[arg(long = "lattice")]
        expr: String,
        #[arg(long, value_enum, default_value_t = GroupKind::Triflections)]
        gens: GroupKind,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Overlattice classes of an orthogonal sum.
    Overlattices {
        #[arg(long = "lattice")]
        expr: String,
    },
    /// Reproduce a table.
    Report {
        #[arg(value_enum)]
        table: Table,
    },
    /// Checks in the F2 model spaces.
    F2 {
        /// `HE:n`: even subsets of an n-set, modulo the whole set when n is even.
        #[arg(long, default_value = "HE:12")]
        model: String,
        #[arg(long, value_enum)]
        check: F2Check,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
    },
    /// Centralizer table of S4/S5 reflection subgroups against S12 and the orthogonal group.
    BimonsterTable,
    /// Isometry witnesses.
    Witness {
        #[command(subcommand)]
        cmd: WitnessCmd,
    },
}

#[derive(Subcommand)]
enum WitnessCmd {
    /// Re-run the bounded search for a stored witness.
    Search {
        name: String,
        /// Norm bounds tried in order (default: the ones recorded with the fixtures).
        #[arg(long, value_delimiter = ',')]
        bounds: Option<Vec<i64>>,
        #[arg(long)]
        node_limit: Option<u64>,
    },
    /// Verify a stored or constructed witness.
    Check { name: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupKind {
    /// The group generated by triflections in the norm 3 vectors.
    Triflections,
    /// All isometries.
    Unitary,
}

#[derive(Clone, Copy, ValueEnum)]
enum Table {
    Oq,
    Oqprime,
    BcCrosscheck,
    Simplices,
    Overlattices,
}

#[derive(Clone, Copy, ValueEnum)]
enum F2Check {
    Oq,
    Oqprime,
    A11,
    ArfTable,
    ReflCentralizer,
}

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_SKIPPED: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            match &e {
                Error::Parse { input, position, message } => {
                    eprintln!("error: {message}\n{}", zoo::caret(input, *position));
                }
                _ => eprintln!("error: {e}"),
            }
            let code = match e {
                Error::Parse { .. } | Error::UnknownName(_) | Error::InvalidConfig(_) | Error::NotPositiveDefinite => {
                    EXIT_USAGE
                }
                Error::CapExceeded { .. } => EXIT_SKIPPED,
                _ => EXIT_FAIL,
            };
            ExitCode::from(code)
        }
    }
}

fn default_seed(seed: Option<u64>) -> u64 {
    seed.or_else(|| std::env::var("EISENTOOL_SEED").ok().and_then(|s| s.parse().ok())).unwrap_or(0)
}

/// Prints records either as JSON lines or as indented text with the same content.
fn emit(json_mode: bool, title: &str, rows: &[Value]) {
    if json_mode {
        for r in rows {
            println!("{r}");
        }
        return;
    }
    println!("{title}");
    for r in rows {
        match r {
            Value::Object(m) => {
                let cells: Vec<String> = m.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect();
                println!("  {}", cells.join("  "));
            }
            other => println!("  {}", plain(other)),
        }
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn run(cli: &Cli) -> eisentool::Result<u8> {
    match &cli.cmd {
        Cmd::Verify { check, strict, cap, seed, trials } => {
            verify(cli.json, check, *strict, *cap, default_seed(*seed), *trials)
        }
        Cmd::Gram { expr } => {
            let l = zoo::make(expr)?;
            let g = l.gram();
            let rows: Vec<Vec<String>> =
                (0..g.rows).map(|i| (0..g.cols).map(|j| render(g[(i, j)])).collect()).collect();
            if cli.json {
                println!("{}", json!({ "expr": expr, "gram": rows }));
            } else {
                let w = rows.iter().flatten().map(String::len).max().unwrap_or(1);
                for r in rows {
                    println!("{}", r.iter().map(|c| format!("{c:>w$}")).collect::<Vec<_>>().join(" "));
                }
            }
            Ok(0)
        }
        Cmd::Disc { expr } => {
            let l = zoo::make(expr)?;
            let f = eisentool::disc::disc_form(&l)?;
            let s = l.signature();
            let v = json!({
                "expr": expr,
                "order": f.order(),
                "form": f.describe(),
                "f3_rank": f.f3_signs.len(),
                "f4_rank": f.f4_rank(),
                "signature": [s.pos, s.neg],
            });
            emit(cli.json, "discriminant", &[v]);
            Ok(0)
        }
        Cmd::Short { expr, norm, count } => {
            let l = zoo::make(expr)?;
            let vs = roots::short_vectors(&l, *norm)?;
            let mut v = json!({ "expr": expr, "norm": norm, "count": vs.len() });
            if !count {
                v["vectors"] =
                    json!(vs.iter().map(|x| x.iter().map(|e| e.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>());
            }
            if cli.json {
                println!("{v}");
            } else if *count {
                println!("{}", vs.len());
            } else {
                for x in &vs {
                    println!("{}", x.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" "));
                }
                println!("{} vectors", vs.len());
            }
            Ok(0)
        }
        Cmd::Group { expr, gens, cap } => {
            let l = zoo::make(expr)?;
            let cap = cap.unwrap_or_else(roots::closure_cap);
            let (kind, order, generator_count) = match gens {
                GroupKind::Triflections => (
                    "triflections",
                    roots::triflection_group(&l, cap)?.len(),
                    Some(roots::triflection_generators(&l)?.len()),
                ),
                GroupKind::Unitary => ("unitary", roots::unitary_group(&l, cap)?.len(), None),
            };
            emit(
                cli.json,
                "group",
                &[json!({ "expr": expr, "gens": kind, "order": order, "generator_count": generator_count })],
            );
            Ok(0)
        }
        Cmd::Overlattices { expr } => {
            emit(cli.json, &format!("overlattices of {expr}"), &overlattice_rows(expr)?);
            Ok(0)
        }
        Cmd::Report { table } => report(cli.json, *table),
        Cmd::F2 { model, check, seed, trials } => f2_command(cli.json, model, *check, default_seed(*seed), *trials),
        Cmd::BimonsterTable => report(cli.json, Table::BcCrosscheck),
        Cmd::Witness { cmd } => match cmd {
            WitnessCmd::Search { name, bounds, node_limit } => {
                let mut p = witnesses::fixtures()?.search;
                if let Some(b) = bounds {
                    p.bounds = b.clone();
                }
                if let Some(n) = node_limit {
                    p.node_limit = *n;
                }
                let e = witnesses::run_search(name, &p)?;
                println!("{}", serde_json::to_value(&e).expect("serializable"));
                Ok(0)
            }
            WitnessCmd::Check { name } => {
                let w = witnesses::named_witness(name)?;
                let c = witnesses::verify_witness(&w)?;
                let v = json!({ "name": name, "source": w.source, "target": w.target, "gram_preserved": c.gram_preserved, "bijective": c.bijective });
                emit(cli.json, "witness", &[v]);
                Ok(if c.ok() { 0 } else { EXIT_FAIL })
            }
        },
    }
}

/// Renders multiples of theta as `t`, other entries as `a+b*w`.
fn render(x: Eis) -> String {
    if let Some(k) = x.div_exact(&Eis::THETA).and_then(|k| k.as_int()) {
        return match k {
            0 => "0".into(),
            1 => "t".into(),
            -1 => "-t".into(),
            k => format!("{k}t"),
        };
    }
    x.to_string()
}

fn verify(
    json_mode: bool,
    check: &str,
    strict: bool,
    cap: Option<usize>,
    seed: u64,
    trials: usize,
) -> eisentool::Result<u8> {
    let ids: Vec<&str> = if check == "all" {
        checks::CHECK_IDS.to_vec()
    } else if checks::is_check(check) {
        vec![check]
    } else {
        eprintln!("error: unknown check {check:?}; known: all, {}", checks::CHECK_IDS.join(", "));
        return Ok(EXIT_USAGE);
    };
    let opts = Options { seed, trials, cap: cap.unwrap_or_else(roots::closure_cap) };
    let (mut failed, mut skipped) = (false, false);
    for id in ids {
        let r = checks::run(id, &opts)?;
        failed |= r.status == Status::Fail;
        skipped |= r.status == Status::Skipped;
        if json_mode {
            println!("{}", r.to_json());
        } else {
            print!("{}", r.to_text());
        }
    }
    Ok(if failed {
        EXIT_FAIL
    } else if skipped && strict {
        EXIT_SKIPPED
    } else {
        0
    })
}

fn overlattice_rows(expr: &str) -> eisentool::Result<Vec<Value>> {
    let space = GlueSpace::from_expr(&zoo::parse(expr)?)?;
    glue::classify_overlattices(&space)?
        .iter()
        .map(|c| {
            let inv = glue::invariants(&c.overlattice.lattice)?;
            Ok(json!({
                "expr": expr,
                "glue_gens": c.representative,
                "degree": c.degree,
                "orbit_size": c.orbit_size,
                "full_support": c.full_support,
                "result_type_guess": type_guess(&c.overlattice.lattice, &inv)?,
                "invariants": inv,
            }))
        })
        .collect()
}

/// A named lattice isometric to `l`: tested by isometry search when definite, by
/// invariants otherwise (suffix `?`).
fn type_guess(l: &HermitianLattice, inv: &glue::Invariants) -> eisentool::Result<Option<String>> {
    for k in 1..=14 {
        let c = zoo::l(k);
        if c.rank() != inv.rank || glue::invariants(&c).ok().as_ref() != Some(inv) {
            continue;
        }
        if inv.signature.1 > 0 {
            return Ok(Some(format!("L{k}?")));
        }
        if roots::find_isometry(l, &c)?.is_some() {
            return Ok(Some(format!("L{k}")));
        }
    }
    Ok(None)
}

fn stabilizer_rows(names: &[&str]) -> eisentool::Result<Vec<Value>> {
    let s = f2config::model();
    let orth = f2config::model_orth_generators(&s)?;
    names
        .iter()
        .map(|name| {
            let t = f2config::config_type(name)?;
            let st = f2config::stabilizer(&s, &orth, &t)?;
            let mut row = Map::new();
            row.insert("type".into(), json!(name));
            row.insert("expected_order".into(), json!(st.expected_order));
            row.insert("generated_order".into(), json!(st.generated_order));
            row.insert("full_stabilizer_order".into(), json!(st.chain_order));
            row.insert("vector_subgroup_order".into(), json!(st.vector_subgroup_order));
            row.insert("quotient_order".into(), json!(st.quotient_order));
            row.insert("verdict".into(), verdict(st.ok()));
            row.insert("full_stabilizer_verdict".into(), verdict(st.chain_order == st.expected_order));
            Ok(Value::Object(row))
        })
        .collect()
}

fn verdict(ok: bool) -> Value {
    json!(if ok { "match" } else { "mismatch" })
}

fn has_mismatch(rows: &[Value]) -> bool {
    rows.iter().any(|r| {
        r.as_object().is_some_and(|m| {
            m.iter().any(|(k, v)| k.ends_with("verdict") && v == "mismatch")
                || m.get("ok").and_then(Value::as_bool) == Some(false)
                || m.get("failures").and_then(Value::as_u64).is_some_and(|f| f > 0)
        })
    })
}

fn report(json_mode: bool, table: Table) -> eisentool::Result<u8> {
    let (title, rows) = match table {
        Table::Oq => ("elementwise stabilizers", stabilizer_rows(&["A3", "A4", "2A3", "A3+A4", "2A4"])?),
        Table::Oqprime => (
            "elementwise stabilizers, shared kernels",
            stabilizer_rows(&["(2A3)'", "(2A3)'+A3", "(3A3)'", "(2A3)'+A4"])?,
        ),
        Table::BcCrosscheck => {
            let mut rows: Vec<Value> = bimonster::cross_check()?
                .iter()
                .map(|r| {
                    json!({
                        "entry": r.entry,
                        "group": r.group,
                        "expected_order": r.expected_order,
                        "source": r.source,
                        "computed_order": r.computed_order,
                        "second_source": r.second_source,
                        "verdict": verdict(r.matches),
                    })
                })
                .collect();
            let c = bimonster::classify(12)?;
            rows.push(json!({
                "s12_descriptors": c.entries.iter().map(|e| &e.label).collect::<Vec<_>>(),
                "s12_nonempty_count": c.nonempty_count,
                "s12_count_with_trivial": c.count_with_trivial,
                "expected_count": c.expected,
                "reading": c.reading,
            }));
            ("centralizers of reflection subgroups", rows)
        }
        Table::Simplices => {
            let rows = simplex::check_all()?
                .iter()
                .map(|c| {
                    json!({
                        "label": c.label,
                        "hull_degree": c.hull_degree,
                        "complement": c.complement,
                        "expected_complement": c.expected_complement,
                        "verdict": verdict(c.ok()),
                    })
                })
                .collect();
            ("simplex types", rows)
        }
        Table::Overlattices => {
            let mut rows = Vec::new();
            for e in ["2*L1", "L1 + L3", "3*L1", "2*L2", "3*L3", "4*L3"] {
                let r = overlattice_rows(e)?;
                if r.is_empty() {
                    rows.push(json!({ "expr": e, "classes": 0 }));
                }
                rows.extend(r);
            }
            ("overlattice classes", rows)
        }
    };
    let failed = has_mismatch(&rows);
    emit(json_mode, title, &rows);
    Ok(if failed { EXIT_FAIL } else { 0 })
}

fn model_space(model: &str) -> eisentool::Result<QuadSpace> {
    let n: usize = model
        .strip_prefix("HE:")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::InvalidConfig(format!("model {model:?}, expected HE:<n>")))?;
    if n % 2 == 1 {
        f2::h_e(n)
    } else {
        f2::h_e_prime(n)
    }
}

fn f2_command(json_mode: bool, model: &str, check: F2Check, seed: u64, trials: usize) -> eisentool::Result<u8> {
    let needs_12 = matches!(check, F2Check::Oq | F2Check::Oqprime | F2Check::A11);
    if needs_12 && model != "HE:12" {
        return Err(Error::InvalidConfig(format!("configuration checks need HE:12, got {model}")));
    }
    let rows: Vec<Value> = match check {
        F2Check::Oq | F2Check::Oqprime | F2Check::A11 => {
            let names: &[&str] = match check {
                F2Check::Oq => &["A3", "A4", "2A3", "A3+A4", "2A4"],
                F2Check::Oqprime => &["(2A3)'", "(2A3)'+A3", "(3A3)'", "(2A3)'+A4"],
                _ => &["A11"],
            };
            let s = f2config::model();
            let mut rows = if matches!(check, F2Check::A11) { vec![] } else { stabilizer_rows(names)? };
            for (i, t) in f2config::config_types().iter().enumerate() {
                if names.contains(&t.name) {
                    rows.push(
                        serde_json::to_value(f2config::random_transitivity(&s, t, i, trials, seed))
                            .expect("serializable"),
                    );
                }
            }
            if matches!(check, F2Check::Oq) {
                rows.push(serde_json::to_value(f2config::a4_action(&s)?).expect("serializable"));
            }
            rows
        }
        F2Check::ArfTable => {
            f2::arf_table(2..=13)?.iter().map(|r| serde_json::to_value(r).expect("serializable")).collect()
        }
        F2Check::ReflCentralizer => {
            let s = model_space(model)?;
            let c = if s.dim() <= 8 {
                f2::reflection_centralizer_enumerated(&s)?
            } else {
                f2::reflection_centralizer_chain(&s)?
            };
            vec![serde_json::to_value(c).expect("serializable")]
        }
    };
    let failed = has_mismatch(&rows);
    emit(json_mode, "f2", &rows);
    Ok(if failed { EXIT_FAIL } else { 0 })
}
