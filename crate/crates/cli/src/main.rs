//! `ffdist`: family-free DCJ-indel distances, matrices and trees.
//!
//! Exit status is 0 on success, 2 on usage errors and 1 when reading input
//! or computing a result fails.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use ffdist::diagram::{build_capped, EdgeKind};
use ffdist::engine::{compute_distance, Engine};
use ffdist::exact::Limits;
use ffdist::genome::{parse_genomes, render_genome, Genome};
use ffdist::ilp::{build_ilp, emit_lp, Mode, SolverConfig, SolverLimits};
use ffdist::numeric::{format_decimal, parse_decimal, Rational};
use ffdist::phylo::{neighbor_joining, pairwise_matrix, parse_phylip, write_newick, write_phylip};
use ffdist::similarity::{parse_similarities, SimilarityGraph};
use ffdist::simgen::{simulate_pair, SimParams};

#[derive(Parser)]
#[command(name = "ffdist", version, about = "Family-free DCJ-indel distances between genomes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distance between two genomes, with the matching that attains it.
    Distance(DistanceArgs),
    /// Writes the ILP for a genome pair in LP format.
    EmitLp(EmitArgs),
    /// PHYLIP distance matrix over every pair of a genome collection.
    Matrix(MatrixArgs),
    /// Neighbor-Joining tree from a PHYLIP matrix, in Newick.
    Tree(TreeArgs),
    /// Generates a related genome pair and its similarity table.
    Simulate(SimulateArgs),
    /// Vertex, edge and component counts of the capped diagram.
    DiagramStats(StatsArgs),
}

#[derive(Args)]
struct PairArgs {
    /// File holding genome A (exactly one genome).
    #[arg(short = 'a', long = "genome-a")]
    a: PathBuf,
    /// File holding genome B (exactly one genome).
    #[arg(short = 'b', long = "genome-b")]
    b: PathBuf,
    /// Similarity table: `idA idB sigma` per line.
    #[arg(short = 's', long = "similarities")]
    s: PathBuf,
    /// Similarity threshold; 0 keeps every edge with positive similarity.
    #[arg(short = 'x', long = "threshold", default_value = "0", value_parser = parse_threshold)]
    x: Rational,
    /// Unweighted variant (matchings restricted to maximal ones).
    #[arg(long)]
    unweighted: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineKind {
    Oracle,
    Exhaustive,
    External,
}

#[derive(Args)]
struct EngineArgs {
    #[arg(long, value_enum, default_value = "exhaustive")]
    engine: EngineKind,
    /// Solver command with `{input}` and `{output}` placeholders.
    #[arg(long, env = "FFDIST_SOLVER_CMD")]
    solver_cmd: Option<String>,
    /// Seconds before the external solver is killed.
    #[arg(long)]
    timeout: Option<f64>,
    /// Free decision variables allowed for the exhaustive engine.
    #[arg(long, default_value_t = SolverLimits::default().max_free)]
    max_free: usize,
}

#[derive(Args)]
struct DistanceArgs {
    #[command(flatten)]
    pair: PairArgs,
    #[command(flatten)]
    engine: EngineArgs,
}

#[derive(Args)]
struct EmitArgs {
    #[command(flatten)]
    pair: PairArgs,
    /// Output file; standard output when absent.
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct MatrixArgs {
    /// File holding every genome, one `>name` block each.
    #[arg(short = 'g', long = "genomes")]
    genomes: PathBuf,
    /// Directory with one `<A>__<B>.tsv` table per pair.
    #[arg(short = 's', long = "simdir")]
    simdir: PathBuf,
    #[arg(short = 'x', long = "threshold", default_value = "0", value_parser = parse_threshold)]
    x: Rational,
    #[arg(long)]
    unweighted: bool,
    #[command(flatten)]
    engine: EngineArgs,
    /// Pairs computed at the same time.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct TreeArgs {
    /// PHYLIP square matrix.
    #[arg(short = 'm', long = "matrix")]
    matrix: PathBuf,
    /// Root the tree on this taxon's pendant edge.
    #[arg(long, alias = "og")]
    outgroup: Option<String>,
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = SimParams::default().markers)]
    markers: usize,
    #[arg(long, default_value_t = SimParams::default().chromosomes)]
    chromosomes: usize,
    #[arg(long, default_value_t = SimParams::default().circular_fraction)]
    circular_fraction: f64,
    #[arg(long, default_value_t = SimParams::default().dcj)]
    dcj: usize,
    #[arg(long, default_value_t = SimParams::default().indel)]
    indel: usize,
    #[arg(long, default_value_t = SimParams::default().dup)]
    dup: usize,
    #[arg(long, default_value_t = SimParams::default().noise)]
    noise: f64,
    /// Directory receiving `A.gen`, `B.gen`, `genomes.gen` and `A__B.tsv`.
    #[arg(short = 'o', long = "out-dir")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct StatsArgs {
    #[command(flatten)]
    pair: PairArgs,
    /// Also list every vertex and edge.
    #[arg(long)]
    dump: bool,
}

/// Inconsistent flags that clap cannot catch; reported with exit status 2.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn parse_threshold(s: &str) -> Result<Rational, String> {
    let x = parse_decimal(s).map_err(|e| e.to_string())?;
    if x < Rational::from_integer(0) || x > Rational::from_integer(1) {
        return Err(format!("threshold {s} outside [0, 1]"));
    }
    Ok(x)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn single_genome(path: &Path) -> Result<Genome> {
    let mut gs = parse_genomes(&read(path)?).with_context(|| format!("in {}", path.display()))?;
    if gs.len() != 1 {
        bail!("{} holds {} genomes, expected exactly one", path.display(), gs.len());
    }
    Ok(gs.pop().unwrap())
}

fn load_pair(p: &PairArgs) -> Result<(Genome, Genome, SimilarityGraph)> {
    let a = single_genome(&p.a)?;
    let b = single_genome(&p.b)?;
    let g = parse_similarities(&read(&p.s)?, &a, &b).with_context(|| format!("in {}", p.s.display()))?;
    Ok((a, b, g))
}

fn mode(unweighted: bool) -> Mode {
    if unweighted {
        Mode::Unweighted
    } else {
        Mode::Weighted
    }
}

fn engine(e: &EngineArgs) -> Result<Engine> {
    Ok(match e.engine {
        EngineKind::Oracle => Engine::Oracle(Limits::default()),
        EngineKind::Exhaustive => Engine::Exhaustive(SolverLimits { max_free: e.max_free }),
        EngineKind::External => {
            let Some(cmd) = &e.solver_cmd else {
                bail!(UsageError("the external engine needs --solver-cmd or FFDIST_SOLVER_CMD".into()));
            };
            let mut config = SolverConfig::new(cmd.clone());
            if let Some(t) = e.timeout {
                let t = Duration::try_from_secs_f64(t).map_err(|_| UsageError(format!("bad --timeout {t}")))?;
                config.timeout = Some(t);
            }
            Engine::External(config)
        }
    })
}

fn distance(args: &DistanceArgs) -> Result<String> {
    let (a, b, g) = load_pair(&args.pair)?;
    let report = compute_distance(&a, &b, &g, args.pair.x, mode(args.pair.unweighted), &engine(&args.engine)?)?;
    let mut out = format!("{}\nmatching {}\n", format_decimal(&report.distance), report.matching.len());
    for (ida, idb, sigma) in &report.matching {
        let _ = writeln!(out, "{ida}\t{idb}\t{}", format_decimal(sigma));
    }
    Ok(out)
}

fn emit(args: &EmitArgs) -> Result<()> {
    let (a, b, g) = load_pair(&args.pair)?;
    let d = build_capped(&a, &b, &g.apply_threshold(args.pair.x));
    let m = build_ilp(&d, mode(args.pair.unweighted))?;
    write_out(args.output.as_deref(), &emit_lp(&m))
}

/// Loads the table for a pair from `A__B.tsv`, or from `B__A.tsv` read with
/// the genomes swapped.
fn pair_table(dir: &Path, a: &Genome, b: &Genome) -> Result<Option<SimilarityGraph>> {
    let forward = dir.join(format!("{}__{}.tsv", a.name(), b.name()));
    if forward.exists() {
        let g = parse_similarities(&read(&forward)?, a, b).with_context(|| format!("in {}", forward.display()))?;
        return Ok(Some(g));
    }
    let reverse = dir.join(format!("{}__{}.tsv", b.name(), a.name()));
    if reverse.exists() {
        let g = parse_similarities(&read(&reverse)?, b, a).with_context(|| format!("in {}", reverse.display()))?;
        return Ok(Some(g.transposed()));
    }
    Ok(None)
}

fn matrix(args: &MatrixArgs) -> Result<()> {
    let mut genomes = parse_genomes(&read(&args.genomes)?).with_context(|| format!("in {}", args.genomes.display()))?;
    genomes.sort_by(|x, y| x.name().cmp(y.name()));
    if let Some(w) = genomes.windows(2).find(|w| w[0].name() == w[1].name()) {
        bail!("genome name `{}` appears twice", w[0].name());
    }
    let mut tables = BTreeMap::new();
    for i in 0..genomes.len() {
        for j in i + 1..genomes.len() {
            if let Some(g) = pair_table(&args.simdir, &genomes[i], &genomes[j])? {
                tables.insert((i, j), g);
            }
        }
    }
    let m = pairwise_matrix(
        &genomes,
        &tables,
        args.x,
        mode(args.unweighted),
        &engine(&args.engine)?,
        args.jobs,
    )?;
    write_out(args.output.as_deref(), &write_phylip(&m)?)
}

fn tree(args: &TreeArgs) -> Result<()> {
    let m = parse_phylip(&read(&args.matrix)?).with_context(|| format!("in {}", args.matrix.display()))?;
    let mut t = neighbor_joining(&m)?;
    if let Some(og) = &args.outgroup {
        t = t.rooted_at_outgroup(og)?;
    }
    write_out(args.output.as_deref(), &format!("{}\n", write_newick(&t)))
}

fn simulate(args: &SimulateArgs) -> Result<String> {
    let params = SimParams {
        markers: args.markers,
        chromosomes: args.chromosomes,
        circular_fraction: args.circular_fraction,
        dcj: args.dcj,
        indel: args.indel,
        dup: args.dup,
        noise: args.noise,
    };
    let pair = simulate_pair(&params, args.seed)?;
    fs::create_dir_all(&args.out_dir).with_context(|| format!("cannot create {}", args.out_dir.display()))?;
    let files = [
        ("A.gen", render_genome(&pair.a)),
        ("B.gen", render_genome(&pair.b)),
        ("genomes.gen", pair.genome_text()),
        ("A__B.tsv", pair.similarity_tsv()),
    ];
    let mut out = String::new();
    for (name, text) in files {
        let path = args.out_dir.join(name);
        write_out(Some(&path), &text)?;
        let _ = writeln!(out, "{}", path.display());
    }
    Ok(out)
}

fn find(parent: &mut [usize], v: usize) -> usize {
    let mut r = v;
    while parent[r] != r {
        r = parent[r];
    }
    let mut v = v;
    while parent[v] != r {
        let next = parent[v];
        parent[v] = r;
        v = next;
    }
    r
}

fn diagram_stats(args: &StatsArgs) -> Result<String> {
    let (a, b, g) = load_pair(&args.pair)?;
    let g = g.apply_threshold(args.pair.x);
    let d = build_capped(&a, &b, &g);
    let mut parent: Vec<usize> = (0..d.vertices().len()).collect();
    for e in d.edges() {
        let (ru, rv) = (find(&mut parent, e.u), find(&mut parent, e.v));
        parent[ru] = rv;
    }
    let connected = (0..parent.len()).filter(|&v| find(&mut parent, v) == v).count();
    let count = |f: fn(&EdgeKind) -> bool| d.count_edges(f);
    let mut out = String::new();
    let _ = writeln!(out, "similarity_edges {}", g.len());
    let _ = writeln!(out, "p_star {}", d.p_star());
    let _ = writeln!(out, "vertices {}", d.vertices().len());
    let _ = writeln!(out, "caps {}", d.vertices().iter().filter(|v| v.is_cap()).count());
    let _ = writeln!(out, "edges {}", d.edges().len());
    let _ = writeln!(out, "adjacency_edges {}", count(|k| matches!(k, EdgeKind::Adjacency { .. })));
    let _ = writeln!(out, "extremity_edges {}", count(|k| matches!(k, EdgeKind::Extremity { .. })));
    let _ = writeln!(out, "cap_edges {}", count(|k| matches!(k, EdgeKind::Cap)));
    let _ = writeln!(out, "indel_edges {}", count(|k| matches!(k, EdgeKind::Indel { .. })));
    let _ = writeln!(out, "connected_components {connected}");
    if args.dump {
        out.push_str(&d.dump());
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Distance(a) => print!("{}", distance(&a)?),
        Command::EmitLp(a) => emit(&a)?,
        Command::Matrix(a) => matrix(&a)?,
        Command::Tree(a) => tree(&a)?,
        Command::Simulate(a) => print!("{}", simulate(&a)?),
        Command::DiagramStats(a) => print!("{}", diagram_stats(&a)?),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
