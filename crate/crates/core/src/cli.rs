//! The `treegmf` command line.
//!
//! Every flag can also come from a TOML config file (`--config`), with the
//! same key names (`max_brute` for `--max-brute`). Flags win over the file.
//! `verify` writes report files into `--out`, the config's `out`, or
//! `$TREEGMF_OUT_DIR`, in that order; without any of them it only prints
//! the summary.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gmf::{gmf_poly_bruteforce_with_limit, gmf_poly_matching, AirTable, Gamma, DEFAULT_BRUTE_LIMIT};
use crate::gts::ShiftDigraph;
use crate::io::{self, Format};
use crate::partition::Partition;
use crate::symfunc::{AlphaTable, Basis, SymFunctions};
use crate::sweep::{run_sweep, ModeChoice, SweepConfig};
use crate::tree::{enumerate_free_trees, CanonicalTree, LabeledTree};

pub const OUT_DIR_ENV: &str = "TREEGMF_OUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "treegmf", version, about = "Generalized matrix functions of tree q-Laplacians")]
pub struct Cli {
    /// TOML file supplying defaults for any flag.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output file (a directory for `verify`); `-` is stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads; defaults to all cores.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List every free tree on n vertices.
    Trees {
        #[arg(long)]
        n: Option<usize>,
    },
    /// Export the proper-shift digraph.
    Poset {
        #[arg(long)]
        n: Option<usize>,
        /// Shorthand for `--format dot`.
        #[arg(long)]
        dot: bool,
    },
    /// `α_i` of every basis element of one basis.
    AlphaTable {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        basis: Option<Basis>,
    },
    /// The polynomial `d_γ(xI − L_q(T))` of one tree.
    Gmf {
        /// Edge-list or JSON file, `-` for stdin, or `path:N` / `star:N`.
        tree: String,
        #[arg(long)]
        basis: Option<Basis>,
        #[arg(long)]
        lambda: Option<String>,
        /// Also evaluate the permutation sum and require agreement.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        max_brute: Option<usize>,
    },
    /// Check coefficient monotonicity over every proper shift pair.
    Verify {
        #[arg(long)]
        n: Option<usize>,
        /// Comma-separated subset of `m,e,h,p,s,f`.
        #[arg(long)]
        basis: Option<String>,
        /// Shape filter, e.g. `2^k,1^*`.
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        mode: Option<ModeChoice>,
    },
    /// The `a_{i,r}(T, q)` table of one tree, or of every tree with `--n`.
    AirTable {
        tree: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Deserialize, Debug, Default)]
#[serde(untagged)]
enum OneOrMany {
    #[default]
    None,
    One(String),
    Many(Vec<String>),
}

/// Contents of a `--config` file.
#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    n: Option<usize>,
    #[serde(default)]
    basis: OneOrMany,
    lambda: Option<String>,
    mode: Option<ModeChoice>,
    out: Option<PathBuf>,
    format: Option<Format>,
    jobs: Option<usize>,
    oracle: Option<bool>,
    max_brute: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    fn basis_text(&self) -> Option<String> {
        match &self.basis {
            OneOrMany::None => None,
            OneOrMany::One(s) => Some(s.clone()),
            OneOrMany::Many(v) => Some(v.join(",")),
        }
    }
}

fn parse_bases(s: &str) -> Result<Vec<Basis>> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("all") {
        return Ok(Basis::ALL.to_vec());
    }
    let mut out: Vec<Basis> = Vec::new();
    for b in s.split(',').map(str::trim).filter(|b| !b.is_empty()) {
        let b: Basis = b.parse()?;
        if !out.contains(&b) {
            out.push(b);
        }
    }
    Ok(out)
}

fn require_n(flag: Option<usize>, cfg: &FileConfig, min: usize) -> Result<usize> {
    let n = flag
        .or(cfg.n)
        .ok_or_else(|| Error::Config("--n is required".into()))?;
    if n < min {
        return Err(Error::Config(format!("n must be at least {min}, got {n}")));
    }
    Ok(n)
}

fn load_tree(arg: &str) -> Result<LabeledTree> {
    let named = |prefix: &str| arg.strip_prefix(prefix).map(|k| k.parse::<usize>());
    if let Some(k) = named("path:") {
        let k = k.map_err(|_| Error::Parse(format!("bad tree {arg:?}")))?;
        return if k == 0 { Err(Error::InvalidTree("empty".into())) } else { Ok(LabeledTree::path(k)) };
    }
    if let Some(k) = named("star:") {
        let k = k.map_err(|_| Error::Parse(format!("bad tree {arg:?}")))?;
        return if k == 0 { Err(Error::InvalidTree("empty".into())) } else { Ok(LabeledTree::star(k)) };
    }
    let text = if arg == "-" {
        std::io::read_to_string(std::io::stdin())?
    } else {
        std::fs::read_to_string(arg)?
    };
    LabeledTree::parse(&text)
}

/// What a successful run reports back to `main`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    ChecksFailed,
}

struct Ctx {
    cfg: FileConfig,
    out: Option<PathBuf>,
    format: Option<Format>,
    jobs: Option<usize>,
}

impl Ctx {
    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn emit(&self, content: &str) -> Result<()> {
        io::emit(self.out.as_deref(), content)
    }
}

pub fn run(cli: Cli) -> Result<Outcome> {
    let cfg = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let ctx = Ctx {
        out: cli.out.clone().or_else(|| cfg.out.clone()),
        format: cli.format.or(cfg.format),
        jobs: cli.jobs.or(cfg.jobs),
        cfg,
    };
    match cli.command {
        Command::Trees { n } => cmd_trees(&ctx, require_n(n, &ctx.cfg, 1)?),
        Command::Poset { n, dot } => cmd_poset(&ctx, require_n(n, &ctx.cfg, 2)?, dot),
        Command::AlphaTable { n, basis } => {
            cmd_alpha_table(&ctx, require_n(n, &ctx.cfg, 2)?, basis.unwrap_or(Basis::M))
        }
        Command::Gmf {
            tree,
            basis,
            lambda,
            oracle,
            max_brute,
        } => {
            let basis = match basis {
                Some(b) => b,
                None => match ctx.cfg.basis_text() {
                    Some(s) => single_basis(&s)?,
                    None => return Err(Error::Config("--basis is required".into())),
                },
            };
            let lambda = lambda
                .or_else(|| ctx.cfg.lambda.clone())
                .ok_or_else(|| Error::Config("--lambda is required".into()))?;
            let oracle = oracle || ctx.cfg.oracle.unwrap_or(false);
            let limit = max_brute.or(ctx.cfg.max_brute).unwrap_or(DEFAULT_BRUTE_LIMIT);
            cmd_gmf(&ctx, &load_tree(&tree)?, basis, &lambda.parse()?, oracle.then_some(limit))
        }
        Command::Verify { n, basis, lambda, mode } => {
            let mut config = SweepConfig::new(require_n(n, &ctx.cfg, 2)?);
            if let Some(b) = basis.or_else(|| ctx.cfg.basis_text()) {
                config.bases = parse_bases(&b)?;
            }
            if let Some(l) = lambda.or_else(|| ctx.cfg.lambda.clone()) {
                config.lambda = l.parse()?;
            }
            config.mode = mode.or(ctx.cfg.mode).unwrap_or_default();
            config.jobs = ctx.jobs;
            cmd_verify(&ctx, &config)
        }
        Command::AirTable { tree, n } => {
            let trees = match (tree, n.or(ctx.cfg.n)) {
                (Some(t), _) => vec![load_tree(&t)?],
                (None, Some(n)) => enumerate_free_trees(n).iter().map(CanonicalTree::representative).collect(),
                (None, None) => return Err(Error::Config("give a tree or --n".into())),
            };
            cmd_air_table(&ctx, &trees)
        }
    }
}

fn single_basis(s: &str) -> Result<Basis> {
    match parse_bases(s)?.as_slice() {
        [b] => Ok(*b),
        _ => Err(Error::Config(format!("expected one basis, got {s:?}"))),
    }
}

#[derive(Serialize)]
struct TreeRow<'a> {
    code: &'a str,
    n: usize,
    #[serde(rename = "degreeSequence")]
    degree_sequence: Vec<usize>,
    edges: Vec<[usize; 2]>,
}

fn cmd_trees(ctx: &Ctx, n: usize) -> Result<Outcome> {
    let trees = enumerate_free_trees(n);
    let reps: Vec<LabeledTree> = trees.iter().map(CanonicalTree::representative).collect();
    let rows: Vec<TreeRow> = trees
        .iter()
        .zip(&reps)
        .map(|(c, t)| TreeRow {
            code: c.code(),
            n,
            degree_sequence: t.degree_sequence(),
            edges: t.edges().iter().map(|&(u, v)| [u + 1, v + 1]).collect(),
        })
        .collect();
    let edge_text = |r: &TreeRow| {
        r.edges
            .iter()
            .map(|[u, v]| format!("{u}-{v}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let degrees = |r: &TreeRow| {
        r.degree_sequence
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(",")
    };
    let content = match ctx.format_or(Format::Text) {
        Format::Json => io::to_json(&rows)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["code", "degrees", "edges"])?;
            for r in &rows {
                w.write_record([r.code.to_string(), degrees(r), edge_text(r)])?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.into_error()))?)
                .map_err(|e| Error::Parse(e.to_string()))?
        }
        Format::Text | Format::Dot => {
            let mut s = format!("{} free trees on {n} vertices\n", rows.len());
            for (k, r) in rows.iter().enumerate() {
                s.push_str(&format!(
                    "{:>4}  {}  degrees {}  edges {}\n",
                    k + 1,
                    r.code,
                    degrees(r),
                    edge_text(r)
                ));
            }
            s
        }
    };
    ctx.emit(&content)?;
    Ok(Outcome::Ok)
}

fn cmd_poset(ctx: &Ctx, n: usize, dot: bool) -> Result<Outcome> {
    let g = ShiftDigraph::build(n);
    let format = if dot { Format::Dot } else { ctx.format_or(Format::Json) };
    let content = match format {
        Format::Dot => g.to_dot(),
        Format::Json => io::to_json(&g)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["lower", "upper", "witness_path"])?;
            for p in &g.pairs {
                let path: Vec<String> = p.path.iter().map(|v| (v + 1).to_string()).collect();
                w.write_record([p.lower.code(), p.upper.code(), &path.join(" ")])?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.into_error()))?)
                .map_err(|e| Error::Parse(e.to_string()))?
        }
        Format::Text => {
            let mut s = format!("{} trees, {} proper shift pairs\n", g.nodes.len(), g.edges.len());
            for p in &g.pairs {
                s.push_str(&format!("{} -> {}\n", p.lower, p.upper));
            }
            s
        }
    };
    ctx.emit(&content)?;
    Ok(Outcome::Ok)
}

fn cmd_alpha_table(ctx: &Ctx, n: usize, basis: Basis) -> Result<Outcome> {
    let table = AlphaTable::new(&SymFunctions::new(n), basis)?;
    let content = match ctx.format_or(Format::Text) {
        Format::Json => io::to_json(&table)?,
        Format::Csv => io::alpha_csv(&table)?,
        Format::Text | Format::Dot => io::alpha_text(&table),
    };
    ctx.emit(&content)?;
    Ok(Outcome::Ok)
}

fn cmd_gmf(
    ctx: &Ctx,
    t: &LabeledTree,
    basis: Basis,
    lambda: &Partition,
    oracle_limit: Option<usize>,
) -> Result<Outcome> {
    let gamma = Gamma::basis(&SymFunctions::new(lambda.n()), basis, lambda)?;
    let z = gmf_poly_matching(t, &gamma)?;
    if let Some(limit) = oracle_limit {
        let brute = gmf_poly_bruteforce_with_limit(t, &gamma, limit)?;
        if brute.poly != z.poly {
            return Err(Error::OracleMismatch(format!(
                "matching expansion {} but permutation sum {}",
                z.poly, brute.poly
            )));
        }
    }
    let content = match ctx.format_or(Format::Text) {
        Format::Json => io::to_json(&z)?,
        Format::Csv => io::gmf_csv(std::slice::from_ref(&z))?,
        Format::Text | Format::Dot => {
            let mut s = format!("tree   {}\ngamma  {}\nzeta   {}\n", z.tree, gamma.label(), z.poly);
            for (r, c) in z.poly.coeff_by_r().iter().enumerate() {
                s.push_str(&format!("c_{r} = {c}\n"));
            }
            if oracle_limit.is_some() {
                s.push_str("oracle: permutation sum agrees\n");
            }
            s
        }
    };
    ctx.emit(&content)?;
    Ok(Outcome::Ok)
}

fn cmd_verify(ctx: &Ctx, config: &SweepConfig) -> Result<Outcome> {
    let report = run_sweep(config)?;
    let s = &report.summary;
    let mut text = format!(
        "n={} pairs={} gammas={} monotone {}/{} air {}/{} q=1 {}/{}\n",
        s.n,
        s.pairs,
        s.gammas,
        s.monotone.checked - s.monotone.failed,
        s.monotone.checked,
        s.air.checked - s.air.failed,
        s.air.checked,
        s.q_one.checked - s.q_one.failed,
        s.q_one.checked,
    );
    for f in report.failures() {
        let rs: Vec<String> = f.per_r.iter().filter(|c| !c.pass).map(|c| c.r.to_string()).collect();
        text.push_str(&format!(
            "FAIL {} -> {} {}_{} ({:?}) at r = {}\n",
            f.pair.lower,
            f.pair.upper,
            f.basis.map(|b| b.to_string()).unwrap_or_default(),
            f.lambda.as_ref().map(|l| l.to_string()).unwrap_or_default(),
            f.mode,
            rs.join(",")
        ));
    }
    for a in report.air.iter().filter(|a| !a.pass) {
        text.push_str(&format!("FAIL a_(i,r) {} -> {}\n", a.pair.lower, a.pair.upper));
    }
    for q in report.q_one.iter().filter(|q| !q.pass) {
        text.push_str(&format!("FAIL q=1 {} -> {}\n", q.pair.lower, q.pair.upper));
    }
    text.push_str(if report.pass() { "PASS\n" } else { "FAIL\n" });

    let dir = ctx
        .out
        .clone()
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from));
    match dir {
        Some(dir) if dir != Path::new("-") => {
            match ctx.format_or(Format::Json) {
                Format::Csv => {
                    io::write_file(&dir.join(format!("verify-n{}.csv", s.n)), &io::monotone_csv(&report.monotone)?)?;
                    io::write_file(&dir.join(format!("summary-n{}.json", s.n)), &io::to_json(s)?)?;
                }
                _ => io::write_file(&dir.join(format!("verify-n{}.json", s.n)), &io::to_json(&report)?)?,
            }
            io::emit(None, &text)?;
        }
        Some(_) if ctx.format == Some(Format::Json) => io::emit(None, &io::to_json(&report)?)?,
        _ => io::emit(None, &text)?,
    }
    Ok(if report.pass() { Outcome::Ok } else { Outcome::ChecksFailed })
}

fn cmd_air_table(ctx: &Ctx, trees: &[LabeledTree]) -> Result<Outcome> {
    let tables: Vec<AirTable> = trees
        .iter()
        .map(|t| AirTable::new(t, &SymFunctions::new(t.n())))
        .collect::<Result<_>>()?;
    let content = match ctx.format_or(Format::Text) {
        Format::Json => io::to_json(&tables)?,
        Format::Csv => io::air_csv(&tables)?,
        Format::Text | Format::Dot => {
            let mut s = String::new();
            for t in &tables {
                s.push_str(&format!("tree {}\n", t.tree));
                for (i, r, a) in t.entries().filter(|(i, r, _)| 2 * i <= *r) {
                    s.push_str(&format!("a_{{{i},{r}}} = {a}\n"));
                }
            }
            s
        }
    };
    ctx.emit(&content)?;
    Ok(Outcome::Ok)
}

/// Entry point for the binary: 0 on success, 1 when a check fails, 2 on
/// usage or input errors.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::ChecksFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
