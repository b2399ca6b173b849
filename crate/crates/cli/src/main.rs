//! Command-line front end for the sl2share library.
//!
//! Exit status: 0 success, 1 a check failed, 2 bad input, 3 budget exceeded.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sl2share::acceptance;
use sl2share::config::{Config, OutputFormat};
use sl2share::diagrams::{enumerate_diagrams, enumerate_shares, ChordDiagram, Share, SimpleGraph};
use sl2share::genfun::{cb_series, gen_series, k_complete, reconstruct_selem, split_series, RSeries};
use sl2share::graphs::{bouchet_scan, graph_rseries, realize_circle, realize_permutation, verify_duality};
use sl2share::rewrite::{self, read_cache, write_cache, MemoStore};
use sl2share::share_space::{basis_convert, operator_matrix, Basis, Op, SElem};
use sl2share::sl2rep::{oracle_check_nf, oracle_wsl2_diagram, separating_reps};
use sl2share::Error;

#[derive(Parser)]
#[command(name = "sl2share", version, about = "Exact sl2 weight system on chord diagrams and shares")]
struct Cli {
    /// JSON configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides the output format from the configuration.
    #[arg(long, global = true)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Value of the weight system on a chord diagram, e.g. "1 2 1 2".
    EvalCd { diagram: String },
    /// A share as an element of S in powers of x, e.g. "1 2 | 2 1".
    EvalShare { share: String },
    /// Normal form of a share in c1, c2, x.
    NormalForm { share: String },
    /// Rewrites an element of S in another basis.
    BasisConvert {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        element: String,
    },
    /// Matrix of U, X or Y in a basis, truncated to the first SIZE elements.
    OpMatrix { op: String, basis: String, size: usize },
    /// Residues of the join series of a share.
    Rseries { share: String },
    /// The element of S with the given residues (JSON text or a file path).
    Reconstruct { series: String },
    /// Residues for the complete bipartite graphs K_(m,n).
    Kbipartite { m: usize },
    /// Residues for the complete split graphs (K_m, n).
    Ksplit { m: usize },
    /// Value on the complete graph K_m from the residue formula.
    Kcomplete { m: usize },
    /// Residues of the join series of a graph, e.g. "3: 1-2,1-3".
    GraphR { graph: String },
    /// Checks the duality between a graph and its complement.
    VerifyDuality { graph: String },
    /// Finds a share and a chord diagram drawing a graph.
    Realize { graph: String },
    /// Searches the local-equivalence class of a graph for circle-graph obstructions.
    Bouchet {
        graph: String,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
    },
    /// Lists chord diagrams (or shares) with N chords.
    Enumerate {
        n: usize,
        #[arg(long)]
        shares: bool,
    },
    /// Compares the rewrite engine with the representation oracle.
    OracleCheck { input: String },
    /// Runs the acceptance suite.
    Sweep,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Budget(_) => 3,
            Error::NotDivisible(_) | Error::NonScalar(_) => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

/// A command's result: the JSON value, its text rendering, and whether a
/// check it performed failed.
struct Output {
    json: Value,
    text: String,
    failed: bool,
}

impl Output {
    fn ok(json: Value, text: impl ToString) -> Self {
        Output { json, text: text.to_string(), failed: false }
    }
}

fn parse_basis(s: &str) -> Result<Basis, Failure> {
    Ok(s.parse()?)
}

fn graph(s: &str) -> Result<SimpleGraph, Failure> {
    Ok(SimpleGraph::parse_any(s)?)
}

fn series_output(r: RSeries) -> Output {
    Output::ok(r.to_json(), r)
}

fn run(cmd: Command, cfg: &Config) -> Result<Output, Failure> {
    let max_v = cfg.max_vertices;
    Ok(match cmd {
        Command::EvalCd { diagram } => {
            let d: ChordDiagram = diagram.parse()?;
            let v = rewrite::wsl2_diagram(&d);
            Output::ok(v.to_json(), v)
        }
        Command::EvalShare { share } => {
            let s: Share = share.parse()?;
            let v = rewrite::wsl2_share_x(&s);
            Output::ok(v.to_json("x"), v.display_with("x"))
        }
        Command::NormalForm { share } => {
            let s: Share = share.parse()?;
            let v = rewrite::normal_form(&s);
            Output::ok(v.to_json(), v)
        }
        Command::BasisConvert { from, to, element } => {
            let v = SElem::parse(&element, parse_basis(&from)?)?;
            let w = basis_convert(&v, parse_basis(&to)?);
            Output::ok(w.to_json(), w)
        }
        Command::OpMatrix { op, basis, size } => {
            if size == 0 {
                return Err(Error::InvalidInput("size must be at least 1".into()).into());
            }
            let op: Op = op.parse()?;
            let m = operator_matrix(op, parse_basis(&basis)?, size);
            Output::ok(m.to_json(), m.matrix.to_string().trim_end())
        }
        Command::Rseries { share } => {
            let s: Share = share.parse()?;
            series_output(gen_series(&SElem::from_poly(Basis::X, rewrite::wsl2_share_x(&s))))
        }
        Command::Reconstruct { series } => {
            let text = if series.trim_start().starts_with('{') {
                series
            } else {
                std::fs::read_to_string(&series)
                    .map_err(|e| Error::InvalidInput(format!("cannot read {series}: {e}")))?
            };
            let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            let w = reconstruct_selem(&RSeries::from_json(&v)?)?;
            Output::ok(w.to_json(), w)
        }
        Command::Kbipartite { m } => series_output(cb_series(m)),
        Command::Ksplit { m } => series_output(split_series(m)),
        Command::Kcomplete { m } => {
            let v = k_complete(m);
            Output::ok(v.to_json(), v)
        }
        Command::GraphR { graph: g } => series_output(graph_rseries(&graph(&g)?, max_v)?),
        Command::VerifyDuality { graph: g } => {
            let report = verify_duality(&graph(&g)?, max_v)?;
            let mut text = format!("{}: {}\n", report.graph, if report.pass { "pass" } else { "FAIL" });
            for row in &report.rows {
                text.push_str(&format!(
                    "k = {}: {} | complement {} {}\n",
                    row.k,
                    row.r,
                    row.r_complement,
                    if row.pass { "ok" } else { "MISMATCH" }
                ));
            }
            Output { json: report.to_json(), text: text.trim_end().to_string(), failed: !report.pass }
        }
        Command::Realize { graph: g } => {
            let g = graph(&g)?;
            let share = realize_permutation(&g, max_v)?;
            let circle = realize_circle(&g, max_v)?;
            let show = |x: Option<String>| x.unwrap_or_else(|| "none".into());
            let text = format!(
                "share: {}\ndiagram: {}",
                show(share.as_ref().map(ToString::to_string)),
                show(circle.as_ref().map(ToString::to_string))
            );
            let json = json!({
                "share": share.map(|s| s.to_string()),
                "diagram": circle.map(|d| d.to_string()),
            });
            Output::ok(json, text)
        }
        Command::Bouchet { graph: g, budget } => {
            let report = bouchet_scan(&graph(&g)?, budget);
            let text = format!(
                "induced: {:?}\nsubgraph: {:?}\nexplored: {}",
                report.induced, report.subgraph, report.explored
            );
            Output::ok(report.to_json(), text)
        }
        Command::Enumerate { n, shares } => {
            let words: Vec<String> = if shares {
                enumerate_shares(n, 8)?.iter().map(ToString::to_string).collect()
            } else {
                enumerate_diagrams(n, 8)?.iter().map(ToString::to_string).collect()
            };
            Output::ok(json!(words), words.join("\n"))
        }
        Command::OracleCheck { input } => oracle_check(&input, cfg)?,
        Command::Sweep => {
            let outcomes = acceptance::run_all(cfg);
            let failed = outcomes.iter().any(|o| !o.pass);
            let text = outcomes.iter().map(|o| o.line()).collect::<Vec<_>>().join("\n");
            let json: Vec<Value> = outcomes.iter().map(|o| o.to_json()).collect();
            Output { json: json!(json), text, failed }
        }
    })
}

fn oracle_check(input: &str, cfg: &Config) -> Result<Output, Failure> {
    let budget = cfg.max_chords_oracle;
    if input.contains('|') {
        let s: Share = input.parse()?;
        if s.n_chords() > budget {
            return Err(Error::Budget(format!("{} chords, oracle limit is {budget}", s.n_chords())).into());
        }
        let nf = rewrite::normal_form(&s);
        let reps = separating_reps(s.n_chords() as u32);
        let agree = oracle_check_nf(&s, &nf, &reps, budget + 1)?;
        let json = json!({"share": s.to_string(), "normal_form": nf.to_json(), "agree": agree});
        let text = format!("{s}: {nf} ({})", if agree { "agrees" } else { "DISAGREES" });
        Ok(Output { json, text, failed: !agree })
    } else {
        let d: ChordDiagram = input.parse()?;
        if d.n_chords() > budget {
            return Err(Error::Budget(format!("{} chords, oracle limit is {budget}", d.n_chords())).into());
        }
        let engine = rewrite::wsl2_diagram(&d);
        let oracle = oracle_wsl2_diagram(&d, budget + 1)?;
        let agree = engine == oracle;
        let json = json!({"diagram": d.to_string(), "engine": engine.to_json(), "oracle": oracle.to_json(), "agree": agree});
        let text = format!("engine {engine}, oracle {oracle} ({})", if agree { "agree" } else { "DISAGREE" });
        Ok(Output { json, text, failed: !agree })
    }
}

fn load_cache(path: &PathBuf) -> Result<(), Failure> {
    if !path.exists() {
        return Ok(());
    }
    let file = File::open(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    let entries = read_cache(BufReader::new(file))?;
    rewrite::with_engine(|e| e.preload(entries));
    Ok(())
}

fn save_cache(path: &PathBuf) -> Result<(), Failure> {
    let entries = rewrite::with_engine(|e| e.memo().entries());
    let io = |e: std::io::Error| Error::InvalidInput(format!("{}: {e}", path.display()));
    let mut out = BufWriter::new(File::create(path).map_err(io)?);
    write_cache(&entries, &mut out).map_err(io)?;
    out.flush().map_err(io)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = (|| {
        let mut cfg = match &cli.config {
            Some(p) => Config::load(p)?,
            None => Config::default(),
        };
        match cli.format {
            Some(Format::Json) => cfg.output = OutputFormat::Json,
            Some(Format::Text) => cfg.output = OutputFormat::Text,
            None => {}
        }
        if let Some(p) = &cfg.cache_path {
            load_cache(p)?;
        }
        let out = run(cli.command, &cfg)?;
        if let Some(p) = &cfg.cache_path {
            save_cache(p)?;
        }
        Ok::<_, Failure>((out, cfg.output))
    })();
    match result {
        Ok((out, format)) => {
            match format {
                OutputFormat::Json => println!("{}", out.json),
                OutputFormat::Text => println!("{}", out.text),
            }
            ExitCode::from(if out.failed { 1 } else { 0 })
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
