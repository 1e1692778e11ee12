use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use mutcalc::bbw::bbw_product;
use mutcalc::kmut::{gram, mutate_left, mutate_right, Collection, Entry};
use mutcalc::notation::split_entries;
use mutcalc::replay::verify::{verify_all, VerifyConfig};
use mutcalc::replay::{bundled, run_scenario, RunOptions, Scenario};
use mutcalc::varieties::homvar::HomVariety;
use mutcalc::varieties::{build_variety, ext_labels, instantiate, Catalog, DEFAULT_NODES};
use mutcalc::{Error, Result};

#[derive(Parser)]
#[command(name = "mutcalc", version, about = "Cohomology, Euler pairings and mutation replay")]
struct Cli {
    /// JSON file overriding catalog settings (`nodes`, `seed`).
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Treat CHI-ONLY evidence as failure.
    #[arg(long, global = true)]
    strict: bool,
    /// Number of blown-up points, nodes and planes.
    #[arg(long, global = true)]
    nodes: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Left,
    Right,
}

#[derive(Subcommand)]
enum Cmd {
    /// Cohomology of a homogeneous bundle, e.g. `bbw Gr24 "S2U(-g)"`.
    Bbw { space: String, bundle: String },
    /// Graded Ext on a catalog variety through its Koszul complexes.
    Hyper {
        from: String,
        to: String,
        #[arg(long, default_value = "M")]
        variety: String,
    },
    /// Euler pairing chi(A, B); chi(O, A) when B is omitted.
    Chi { variety: String, a: String, b: Option<String> },
    /// Graded Ext and Euler pairing in both directions.
    Pair { variety: String, a: String, b: String },
    /// Class of L_E F or R_E F.
    Mutate { variety: String, side: Side, e: String, f: String },
    /// Gram matrix of `A ; B ; ...` with the exceptionality verdict.
    Gram { variety: String, collection: String },
    /// List the catalog varieties and imported results.
    Catalog,
    /// Replay a scenario file, or a bundled scenario by name (A, B, B-fail, C, D).
    Replay { scenario: String },
    /// Run every bundled scenario, the certificate and the property suites.
    VerifyAll {
        /// Multiply the property suite sizes.
        #[arg(long, default_value_t = 1)]
        scale: usize,
    },
}

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogFile {
    nodes: Option<usize>,
    seed: Option<u64>,
}

fn load_catalog(path: &Option<PathBuf>) -> Result<CatalogFile> {
    match path {
        None => Ok(CatalogFile::default()),
        Some(p) => Ok(serde_json::from_str(&std::fs::read_to_string(p)?)?),
    }
}

fn print(json: bool, value: serde_json::Value, text: String) {
    if json {
        println!("{}", serde_json::to_string_pretty(&value).expect("json value"));
    } else {
        print!("{text}");
        if !text.ends_with('\n') {
            println!();
        }
    }
}

fn home_space(name: &str) -> Result<HomVariety> {
    match name.to_lowercase().replace(['(', ')', ',', ' '], "").as_str() {
        "p3" => HomVariety::p3(),
        "gr24" => HomVariety::gr24(),
        "gr23" | "sigma" => HomVariety::gr23(),
        "gr24xp3" => HomVariety::ambient_m(),
        _ => Err(Error::UnknownVariety(name.into())),
    }
}

/// Returns whether the command's verdict is PASS.
fn run(cli: &Cli) -> Result<bool> {
    let cat = load_catalog(&cli.catalog)?;
    let nodes = cli.nodes.or(cat.nodes).unwrap_or(DEFAULT_NODES);
    match &cli.cmd {
        Cmd::Bbw { space, bundle } => {
            let var = home_space(space)?;
            let b = var.bundle(bundle)?;
            let h = bbw_product(&var.spaces, &b)?;
            print(cli.json, json!({ "space": space, "bundle": b.to_string(), "degrees": h.dims() }), h.to_string());
            Ok(true)
        }
        Cmd::Hyper { from, to, variety } | Cmd::Pair { variety, a: from, b: to } => {
            let var = build_variety(variety, nodes)?;
            let ans = ext_labels(var.as_ref(), from, to)?;
            if matches!(cli.cmd, Cmd::Pair { .. }) {
                let back = ext_labels(var.as_ref(), to, from)?;
                let text = format!("Ext({from}, {to}) = {ans}\nExt({to}, {from}) = {back}");
                print(cli.json, json!({ "forward": ans, "backward": back }), text);
            } else {
                print(cli.json, json!(ans), format!("Ext({from}, {to}) = {ans}"));
            }
            Ok(true)
        }
        Cmd::Chi { variety, a, b } => {
            let var = build_variety(variety, nodes)?;
            let (x, y) = match b {
                Some(b) => (var.resolve(a)?, var.resolve(b)?),
                None => (var.resolve("O")?, var.resolve(a)?),
            };
            let chi = var.lattice().chi(&x.class, &y.class)?;
            print(cli.json, json!({ "from": x.label, "to": y.label, "chi": chi }), format!("chi({}, {}) = {chi}", x.label, y.label));
            Ok(true)
        }
        Cmd::Mutate { variety, side, e, f } => {
            let var = build_variety(variety, nodes)?;
            let (re, rf) = (var.resolve(e)?, var.resolve(f)?);
            let lat = var.lattice();
            let (name, c) = match side {
                Side::Left => ("L", mutate_left(lat, &re.class, &rf.class)?),
                Side::Right => ("R", mutate_right(lat, &re.class, &rf.class)?),
            };
            let text = format!("{name}_{e}({f}) = {c}\ncoordinates {:?}", c.coords);
            print(cli.json, json!({ "mutation": name, "e": e, "f": f, "class": c }), text);
            Ok(true)
        }
        Cmd::Gram { variety, collection } => {
            let var = build_variety(variety, nodes)?;
            let mut entries = Vec::new();
            for item in split_entries(collection) {
                let entry = match item.strip_prefix('{').and_then(|s| s.strip_suffix('}')) {
                    Some(p) => Entry::family((1..=nodes).map(|i| var.resolve(&instantiate(p, i)).map(|r| r.class)).collect::<Result<_>>()?),
                    None => Entry::object(var.resolve(&item)?.class),
                };
                entries.push(entry);
            }
            let g = gram(var.lattice(), &Collection::new(entries));
            let mut text = String::new();
            for (l, row) in g.labels.iter().zip(&g.matrix) {
                let cells: Vec<String> = row.iter().map(|v| v.map_or("?".into(), |x| x.to_string())).collect();
                text += &format!("{l:>16}  {}\n", cells.join(" "));
            }
            text += &format!("exceptional: {}{}", g.exceptional, if g.qualified { " (qualified)" } else { "" });
            print(cli.json, json!(g), text);
            Ok(g.exceptional)
        }
        Cmd::Catalog => {
            let c = Catalog::new(nodes)?;
            let l = c.listing();
            let mut text = format!("catalog (N = {nodes})\n");
            for v in &l.varieties {
                text += &format!("{} dim {} rank {} K = {} [{:?}]\n  objects: {}\n", v.name, v.dimension, v.rank, v.canonical, v.backend, v.objects.join("; "));
            }
            text += "axioms:\n";
            for a in &l.axioms {
                text += &format!("  {} ({}): {} [{}]\n", a.name, a.variety, a.payload, a.source);
            }
            print(cli.json, json!(l), text);
            Ok(true)
        }
        Cmd::Replay { scenario } => {
            let text = match bundled(scenario) {
                Some(b) if !std::path::Path::new(scenario).exists() => b.text.to_string(),
                _ => std::fs::read_to_string(scenario)?,
            };
            let sc = Scenario::load(&text)?;
            let nodes = cli.nodes.or(cat.nodes);
            let t = run_scenario(&sc, &RunOptions { strict: cli.strict, nodes })?;
            print(cli.json, serde_json::to_value(&t)?, t.to_text());
            Ok(t.passed())
        }
        Cmd::VerifyAll { scale } => {
            let mut cfg = VerifyConfig { nodes, strict: cli.strict, scale: *scale, ..VerifyConfig::default() };
            if let Some(s) = cat.seed {
                cfg.seed = s;
            }
            let r = verify_all(&cfg)?;
            print(cli.json, serde_json::to_value(&r)?, r.to_text());
            Ok(r.passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
