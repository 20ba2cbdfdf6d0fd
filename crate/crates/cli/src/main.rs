use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use nuclei_core::assembly::{
    add_tetra, bound_series, canonical_label, collapse_conditions, collapse_edge, cone_ball, count_trees,
    enumerate_balls, glue_tree, identify_faces, parse_rational, NucleusCatalog, TreeCode,
};
use nuclei_core::complex::{edge, face, flower, validate_ball, Edge, Face, FlowerTarget, Node};
use nuclei_core::io::corpus;
use nuclei_core::io::report::{NucleusReport, Report};
use nuclei_core::io::{format_triangulation, parse_triangulation};
use nuclei_core::moves::split_node;
use nuclei_core::reducer::{
    decompose, eliminate_internal_nodes, split_into_nuclei, NucleusSplit, ReduceConfig, DEFAULT_GROWTH_CONSTANT,
};
use nuclei_core::Triangulation;

#[derive(Parser)]
#[command(name = "nuclei", version, about = "Decompose triangulated 3-balls into trees of nuclei")]
struct Cli {
    /// Indented JSON instead of one line.
    #[arg(long, global = true)]
    pretty: bool,
    /// Worker threads for the parallel enumerations.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, default_value_t = DEFAULT_GROWTH_CONSTANT)]
    growth_constant: u64,
    /// Seed for the random generators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Where corpus names such as `corpus/table1.tet` are looked up.
    #[arg(long, global = true, env = "NF_CORPUS_DIR")]
    corpus_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a file is a simplicial 3-ball.
    Validate { file: String },
    Fvector { file: String },
    /// External flower and hemisphere of a node.
    Flowers {
        file: String,
        #[arg(long)]
        node: Node,
    },
    /// Eliminate internal nodes only.
    Reduce { file: String },
    /// Split a ball without internal nodes into nuclei.
    Nuclei { file: String },
    /// Elimination followed by the nucleus split.
    Decompose { file: String },
    /// Canonical relabeling from a root face.
    Canon {
        file: String,
        #[arg(long, value_delimiter = ',')]
        root: Vec<Node>,
    },
    /// Assemble a tree code from catalog nuclei.
    Glue {
        code: String,
        /// Catalog JSON; defaults to the tetrahedron alone.
        #[arg(long)]
        catalog: Option<String>,
    },
    Collapse {
        file: String,
        #[arg(long, value_delimiter = ',')]
        edge: Vec<Node>,
    },
    Identify {
        file: String,
        #[arg(long, value_delimiter = ',')]
        edge: Vec<Node>,
        #[arg(long, value_delimiter = ',')]
        nodes: Vec<Node>,
    },
    AddTetra {
        file: String,
        #[arg(long)]
        node: Node,
    },
    /// Split an external node along a path through its hemisphere.
    Split {
        file: String,
        #[arg(long)]
        node: Node,
        #[arg(long, value_delimiter = ',')]
        path: Vec<Node>,
    },
    /// Cone every external face except one from a new apex.
    Cone {
        file: String,
        #[arg(long, value_delimiter = ',')]
        keep: Vec<Node>,
    },
    /// Rooted trees of v tetrahedra, by brute force and by recurrence.
    CountTrees { v: u64 },
    BoundSeries {
        #[arg(long)]
        catalog: Option<String>,
        #[arg(short = 'M')]
        m: usize,
        /// Exact evaluation point such as 1/10; defaults to s*.
        #[arg(short = 's')]
        s: Option<String>,
    },
    /// Enumerate small balls and count nuclei.
    Enumerate {
        #[arg(long)]
        tmax: usize,
    },
    /// Emit a generated ball.
    Generate {
        kind: Generator,
        /// Tetrahedra in a chain.
        #[arg(long, default_value_t = 3)]
        v: u32,
        /// Tree code for `tree`.
        #[arg(long)]
        code: Option<String>,
        /// Internal nodes for `random`.
        #[arg(long, default_value_t = 3)]
        internal: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Generator {
    Tetra,
    Table1,
    Chain,
    Tree,
    Starred,
    DoublyStarred,
    Random,
}

/// Bad arguments or unreadable input; exits with 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

struct Ctx {
    corpus_dir: Option<PathBuf>,
    config: ReduceConfig,
    seed: u64,
}

impl Ctx {
    fn read_text(&self, name: &str) -> Result<String> {
        if name == "-" {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| usage(format!("stdin: {e}")))?;
            return Ok(s);
        }
        if Path::new(name).exists() {
            return std::fs::read_to_string(name).map_err(|e| usage(format!("{name}: {e}")));
        }
        let base = Path::new(name).file_name().and_then(|s| s.to_str()).unwrap_or(name);
        if let Some(dir) = &self.corpus_dir {
            let p = dir.join(base);
            if p.exists() {
                return std::fs::read_to_string(&p).map_err(|e| usage(format!("{}: {e}", p.display())));
            }
        }
        corpus::builtin(base)
            .map(str::to_owned)
            .ok_or_else(|| usage(format!("{name}: no such file or corpus entry")))
    }

    fn load(&self, name: &str) -> Result<Triangulation> {
        let text = self.read_text(name)?;
        parse_triangulation(&text).map_err(|e| usage(format!("{name}: {e}")))
    }

    fn catalog(&self, name: Option<&str>) -> Result<NucleusCatalog> {
        match name {
            None => Ok(NucleusCatalog::tetrahedron()),
            Some(n) => NucleusCatalog::from_json(&self.read_text(n)?).map_err(|e| usage(format!("{n}: {e}"))),
        }
    }
}

fn pair(v: &[Node], what: &str) -> Result<Edge> {
    match v {
        &[a, b] if a != b => Ok(edge(a, b)),
        _ => Err(usage(format!("--{what} takes two distinct nodes a,b"))),
    }
}

fn triple(v: &[Node], what: &str) -> Result<Face> {
    match v {
        &[a, b, c] if a != b && b != c && a != c => Ok(face(a, b, c)),
        _ => Err(usage(format!("--{what} takes three distinct nodes a,b,c"))),
    }
}

fn tet_result(t: &Triangulation) -> serde_json::Value {
    json!({ "tet": format_triangulation(t) })
}

fn nucleus_reports(split: &NucleusSplit) -> Vec<NucleusReport> {
    split
        .nuclei
        .iter()
        .enumerate()
        .map(|(i, n)| {
            let g = split.gluings.iter().find(|g| g.child == i);
            NucleusReport {
                tet: format_triangulation(&n.triangulation),
                f_vector: n.f_vector,
                parent: g.map(|g| g.parent),
                face: g.map(|g| g.face),
            }
        })
        .collect()
}

/// Runs one subcommand. The flag is false when the answer is a failed check.
fn run(cmd: Command, ctx: &Ctx) -> Result<(Report, bool)> {
    Ok(match cmd {
        Command::Validate { file } => {
            let t = ctx.load(&file)?;
            let v = validate_ball(&t);
            let ok = v.is_ball();
            let mut r = Report::new("validate").with_input(&t);
            r.result = serde_json::to_value(&v)?;
            (r, ok)
        }
        Command::Fvector { file } => {
            let t = ctx.load(&file)?;
            let fv = t.f_vector()?;
            let mut r = Report::new("fvector").with_input(&t);
            r.result = json!({ "f_vector": fv, "within_nucleus_bound": fv.f_s <= fv.t + 3 });
            (r, true)
        }
        Command::Flowers { file, node } => {
            let t = ctx.load(&file)?;
            let mut r = Report::new("flowers").with_input(&t);
            r.result = serde_json::to_value(flower(&t, FlowerTarget::Node(node))?)?;
            (r, true)
        }
        Command::Reduce { file } => {
            let t = ctx.load(&file)?;
            let e = eliminate_internal_nodes(&t, ctx.config)?;
            let mut r = Report::new("reduce").with_input(&t).with_output(&e.triangulation);
            r.result = tet_result(&e.triangulation);
            r.moves = e.log;
            r.ledger = Some(e.ledger);
            (r, true)
        }
        Command::Nuclei { file } => {
            let t = ctx.load(&file)?;
            let s = split_into_nuclei(&t)?;
            let pieces: Vec<_> = s.nuclei.iter().map(|n| n.triangulation.clone()).collect();
            let mut r = Report::new("nuclei").with_input(&t).with_pieces(&pieces);
            r.nuclei = nucleus_reports(&s);
            r.result = json!({ "count": s.nuclei.len(), "root": s.root });
            r.moves = s.log;
            (r, true)
        }
        Command::Decompose { file } => {
            let t = ctx.load(&file)?;
            let d = decompose(&t, ctx.config)?;
            let pieces: Vec<_> = d.split.nuclei.iter().map(|n| n.triangulation.clone()).collect();
            let mut r = Report::new("decompose").with_input(&t).with_pieces(&pieces);
            r.nuclei = nucleus_reports(&d.split);
            r.result = json!({
                "count": d.split.nuclei.len(),
                "root": d.split.root,
                "delta": d.ledger().delta,
                "growth_ratio": d.ledger().growth_ratio,
            });
            r.ledger = Some(d.elimination.ledger);
            r.moves = d.log;
            (r, true)
        }
        Command::Canon { file, root } => {
            let t = ctx.load(&file)?;
            let root = triple(&root, "root")?;
            let c = canonical_label(&t.clone().with_root(root)?)?;
            let mut r = Report::new("canon").with_input(&t).with_output(&c.triangulation);
            r.result = json!({ "tet": format_triangulation(&c.triangulation), "labels": c.labels });
            (r, true)
        }
        Command::Glue { code, catalog } => {
            let cat = ctx.catalog(catalog.as_deref())?;
            let code: TreeCode = code.parse().map_err(|e| usage(format!("{e}")))?;
            let g = glue_tree(&cat.nuclei()?, &code)?;
            let mut r = Report::new("glue").with_output(&g);
            r.result = tet_result(&g);
            (r, true)
        }
        Command::Collapse { file, edge } => {
            let t = ctx.load(&file)?;
            let e = pair(&edge, "edge")?;
            let failed = collapse_conditions(&t, e)?;
            let r = Report::new("collapse").with_input(&t);
            if failed.is_empty() {
                let g = collapse_edge(&t, e)?;
                let mut r = r.with_output(&g);
                r.result = tet_result(&g);
                (r, true)
            } else {
                let mut r = r;
                r.result = json!({ "failed_conditions": failed });
                (r, false)
            }
        }
        Command::Identify { file, edge, nodes } => {
            let t = ctx.load(&file)?;
            let e = pair(&edge, "edge")?;
            let [x, y] = pair(&nodes, "nodes")?;
            let g = identify_faces(&t, e, x, y)?;
            let mut r = Report::new("identify").with_input(&t).with_output(&g);
            r.result = tet_result(&g);
            (r, true)
        }
        Command::AddTetra { file, node } => {
            let t = ctx.load(&file)?;
            let g = add_tetra(&t, node)?;
            let mut r = Report::new("add-tetra").with_input(&t).with_output(&g);
            r.result = tet_result(&g);
            (r, true)
        }
        Command::Split { file, node, path } => {
            let t = ctx.load(&file)?;
            let m = split_node(&t, node, &path)?;
            let mut r = Report::new("split").with_input(&t).with_output(&m.triangulation);
            r.result = tet_result(&m.triangulation);
            r.moves = vec![m.record];
            (r, true)
        }
        Command::Cone { file, keep } => {
            let t = ctx.load(&file)?;
            let g = cone_ball(&t, triple(&keep, "keep")?)?;
            let mut r = Report::new("cone").with_input(&t).with_output(&g);
            r.result = tet_result(&g);
            (r, true)
        }
        Command::CountTrees { v } => {
            let c = count_trees(v)?;
            let ok = c.brute_force == c.recurrence;
            let mut r = Report::new("count-trees");
            r.result = serde_json::to_value(c)?;
            (r, ok)
        }
        Command::BoundSeries { catalog, m, s } => {
            let cat = ctx.catalog(catalog.as_deref())?;
            let s = match s {
                Some(s) => parse_rational(&s).map_err(|e| usage(e.to_string()))?,
                None => cat.s_star()?,
            };
            let b = bound_series(&cat, m, &s)?;
            let mut r = Report::new("bound-series");
            r.result = serde_json::to_value(&b)?;
            (r, true)
        }
        Command::Enumerate { tmax } => {
            let e = enumerate_balls(tmax)?;
            let mut r = Report::new("enumerate");
            r.result = json!({ "enumeration": e, "catalog": e.catalog() });
            (r, true)
        }
        Command::Generate { kind, v, code, internal } => {
            let t = match kind {
                Generator::Tetra => corpus::tetrahedron(),
                Generator::Table1 => corpus::table1(),
                Generator::Chain => {
                    if v == 0 {
                        return Err(usage("--v must be positive"));
                    }
                    corpus::chain(v)
                }
                Generator::Tree => {
                    let code = code.ok_or_else(|| usage("`generate tree` needs --code"))?;
                    let code: TreeCode = code.parse().map_err(|e| usage(format!("{e}")))?;
                    glue_tree(&NucleusCatalog::tetrahedron().nuclei()?, &code)?
                }
                Generator::Starred => corpus::starred(),
                Generator::DoublyStarred => corpus::doubly_starred(),
                Generator::Random => corpus::random_ball(ctx.seed, internal),
            };
            let mut r = Report::new("generate").with_output(&t);
            r.result = tet_result(&t);
            (r, true)
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: --jobs: {e}");
            return ExitCode::from(2);
        }
    }
    let ctx = Ctx {
        corpus_dir: cli.corpus_dir,
        config: ReduceConfig {
            growth_constant: cli.growth_constant,
            size_constant: cli.growth_constant,
        },
        seed: cli.seed,
    };
    let start = Instant::now();
    match run(cli.command, &ctx) {
        Ok((mut report, ok)) => {
            report.timings_ms.insert("total".into(), start.elapsed().as_secs_f64() * 1e3);
            // A closed pipe is not an error worth a panic.
            let _ = writeln!(std::io::stdout(), "{}", report.to_json(cli.pretty));
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let code = if e.downcast_ref::<Usage>().is_some() { 2 } else { 1 };
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}
