use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use fna::counting::{count, weighted_sum, MemoMode, MemoStore, Property, WeightVector};
use fna::graph::{edge_rank, Edge, EdgeSet};
use fna::measures::{
    dual_complement_check, effective_resistance, parse_rational, rayleigh_check, rc_exact, rc_limit_distance,
    rc_na_check, tree_na_check, DualSpec, LimitTarget, Multigraph, RCParams, Rational,
};
use fna::verify::{run_verification, RunConfig};
use fna::{counting::CountingProblem, Error, Result};

#[derive(Parser)]
#[command(name = "fna", version, about = "Exact checks of edge negative association for forests and connected subgraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every conjecture instance on n vertices, level by level.
    Verify(VerifyArgs),
    /// Count constrained forests or connected subgraphs, optionally weighted.
    Count(CountArgs),
    /// Spanning-tree negative association and Rayleigh monotonicity for edge pairs.
    TreeNa(TreeNaArgs),
    /// Effective resistance between two vertices with unit resistors.
    Resistance(ResistanceArgs),
    /// Exact random-cluster marginals, pair checks and limit distances.
    Rc(RcArgs),
    /// Compare constrained forests with connected subgraphs of a planar dual.
    DualCheck(DualArgs),
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    n: usize,
    /// Last level to generate; defaults to all edges of K_n.
    #[arg(long)]
    max_edges: Option<usize>,
    #[arg(long, default_value = "forest")]
    property: Property,
    #[arg(long)]
    no_prune: bool,
    #[arg(long, default_value = "exact")]
    memo: MemoMode,
    /// Memo entries kept before eviction; 0 means unbounded.
    #[arg(long)]
    memo_capacity: Option<usize>,
    #[arg(long)]
    db: Option<PathBuf>,
    #[arg(long)]
    report: Option<PathBuf>,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Only one seed category: 1 (adjacent pair) or 2 (disjoint pair).
    #[arg(long)]
    category: Option<u8>,
    /// Continue from the progress marker next to --db.
    #[arg(long)]
    resume: bool,
}

#[derive(Args)]
struct GraphArgs {
    #[arg(long)]
    n: usize,
    /// Edge list such as `1-2,1-3,2-3`.
    #[arg(long)]
    edges: String,
}

impl GraphArgs {
    fn edge_set(&self) -> Result<EdgeSet> {
        EdgeSet::parse(self.n, &self.edges)
    }
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, default_value = "")]
    contain: String,
    #[arg(long, default_value = "")]
    avoid: String,
    #[arg(long, default_value = "forest")]
    property: Property,
    /// Uniform edge weight.
    #[arg(long, conflicts_with = "weights")]
    alpha: Option<String>,
    /// File of `x-y weight` lines; unlisted edges weigh 1.
    #[arg(long)]
    weights: Option<PathBuf>,
}

#[derive(Args)]
struct TreeNaArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Two edges `x-y,u-v`; all pairs when omitted.
    #[arg(long)]
    pair: Option<String>,
}

#[derive(Args)]
struct ResistanceArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long)]
    source: usize,
    #[arg(long)]
    sink: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Limit {
    Connected,
    Forest,
    Ust,
}

#[derive(Args)]
struct RcArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long)]
    p: String,
    #[arg(long)]
    q: String,
    /// Report the total-variation distance to this limit measure.
    #[arg(long)]
    limit: Option<Limit>,
    /// Two edges `x-y,u-v`; all pairs when omitted.
    #[arg(long)]
    pair: Option<String>,
}

#[derive(Args)]
struct DualArgs {
    /// Primal simple graph in the `m=<int> edges=<int>` format.
    #[arg(long)]
    graph: PathBuf,
    /// Dual multigraph, edge i crossing the i-th primal edge in rank order.
    #[arg(long)]
    dual: PathBuf,
    #[arg(long)]
    contain: Option<String>,
    #[arg(long)]
    avoid: Option<String>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Count(a) => count_cmd(a),
        Command::TreeNa(a) => tree_na(a),
        Command::Resistance(a) => resistance(a),
        Command::Rc(a) => rc(a),
        Command::DualCheck(a) => dual_check(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn verify(a: VerifyArgs) -> Result<bool> {
    let mut config = RunConfig::new(a.n, a.property);
    if let Some(s) = a.max_edges {
        config.max_edges = s;
    }
    config.prune = !a.no_prune;
    config.memo_mode = a.memo;
    if let Some(c) = a.memo_capacity {
        config.memo_capacity = (c > 0).then_some(c);
    }
    config.db_path = a.db;
    config.report_path = a.report.clone();
    config.parallel_width = a.jobs;
    config.resume = a.resume;
    config.category = match a.category {
        None => None,
        Some(1) => Some(fna::instances::Category::Adjacent),
        Some(2) => Some(fna::instances::Category::Disjoint),
        Some(c) => return Err(Error::InvalidParams(format!("unknown category {c}"))),
    };
    let report = run_verification(&config)?;
    if a.report.is_none() {
        println!("{}", report.to_json()?);
    }
    eprintln!(
        "n = {}: {} instances checked, {} skipped, {} violations, {:.2}s",
        a.n, report.totals.checked, report.totals.skipped, report.totals.violations, report.wall_time
    );
    Ok(report.violations.is_empty())
}

fn edge_list(n: usize, text: Option<&str>) -> Result<EdgeSet> {
    EdgeSet::parse(n, text.unwrap_or(""))
}

fn count_cmd(a: CountArgs) -> Result<bool> {
    let n = a.graph.n;
    let problem = CountingProblem::new(
        a.graph.edge_set()?,
        edge_list(n, Some(&a.contain))?,
        edge_list(n, Some(&a.avoid))?,
    )?;
    let weights = match (&a.alpha, &a.weights) {
        (Some(alpha), _) => Some(WeightVector::uniform(parse_rational(alpha)?)?),
        (None, Some(path)) => Some(read_weights(n, path)?),
        (None, None) => None,
    };
    match weights {
        Some(w) => println!("{}", weighted_sum(&problem, a.property, &w)?),
        None => println!("{}", count(&problem, a.property, MemoMode::Exact, &MemoStore::unbounded())?),
    }
    Ok(true)
}

fn read_weights(n: usize, path: &PathBuf) -> Result<WeightVector> {
    let mut weights = vec![Rational::from_integer(1.into()); fna::graph::edge_count(n)];
    for line in std::fs::read_to_string(path)?.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (edge, value) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| Error::Parse(format!("bad weight line {line:?}")))?;
        let e = EdgeSet::parse(n, edge)?;
        if e.len() != 1 {
            return Err(Error::Parse(format!("bad weight line {line:?}")));
        }
        let rank = e.ranks().next().expect("one edge");
        weights[rank] = parse_rational(value)?;
    }
    WeightVector::per_edge(n, weights)
}

/// Position of each requested edge in the rank-ordered edge list of `g`.
fn edge_positions(g: EdgeSet, pair: Option<&str>) -> Result<Vec<(usize, usize)>> {
    let ranks: Vec<usize> = g.ranks().collect();
    let position = |e: Edge| -> Result<usize> {
        let r = edge_rank(g.n(), e.x(), e.y())?;
        ranks
            .iter()
            .position(|&x| x == r)
            .ok_or_else(|| Error::InvalidProblem(format!("edge {e} is not in the graph")))
    };
    match pair {
        Some(text) => {
            let edges = parse_pair(g.n(), text)?;
            Ok(vec![(position(edges.0)?, position(edges.1)?)])
        }
        None => Ok((0..ranks.len())
            .flat_map(|i| (i + 1..ranks.len()).map(move |j| (i, j)))
            .collect()),
    }
}

fn parse_pair(n: usize, text: &str) -> Result<(Edge, Edge)> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::Parse(format!("expected two edges, got {text:?}")));
    }
    let one = |t: &str| -> Result<Edge> {
        EdgeSet::parse(n, t)?
            .edges()
            .next()
            .ok_or_else(|| Error::Parse(format!("bad edge {t:?}")))
    };
    Ok((one(parts[0])?, one(parts[1])?))
}

fn tree_na(a: TreeNaArgs) -> Result<bool> {
    let g = a.graph.edge_set()?;
    let multi = Multigraph::from_edge_set(g);
    let edges: Vec<Edge> = g.edges().collect();
    let mut all = true;
    for (i, j) in edge_positions(g, a.pair.as_deref())? {
        let t = tree_na_check(&multi, i, j)?;
        let r = rayleigh_check(&multi, i, j)?;
        println!(
            "e={} f={}: t={} t^e={} t^f={} t^ef={} na={} R={} R_after={} rayleigh={}",
            edges[i], edges[j], t.t, t.t_e, t.t_f, t.t_ef, t.holds, r.before, r.after, r.holds
        );
        all &= t.holds && r.holds;
    }
    Ok(all)
}

fn resistance(a: ResistanceArgs) -> Result<bool> {
    let g = Multigraph::from_edge_set(a.graph.edge_set()?);
    println!("{}", effective_resistance(&g, a.source, a.sink)?);
    Ok(true)
}

fn rc(a: RcArgs) -> Result<bool> {
    let g = a.graph.edge_set()?;
    let (p, q) = (parse_rational(&a.p)?, parse_rational(&a.q)?);
    let params = RCParams::new(p.clone(), q.clone())?;
    let multi = Multigraph::from_edge_set(g);
    let edges: Vec<Edge> = g.edges().collect();
    let exact = rc_exact(&multi, &params)?;
    println!("Z = {}", exact.z);
    for (e, m) in edges.iter().zip(&exact.marginals) {
        println!("P({e} open) = {m}");
    }
    let mut all = true;
    for (i, j) in edge_positions(g, a.pair.as_deref())? {
        let r = rc_na_check(&multi, &params, i, j)?;
        println!("e={} f={}: joint={} product={} holds={}", edges[i], edges[j], r.joint, r.product, r.holds);
        all &= r.holds;
    }
    if let Some(limit) = a.limit {
        let target = match limit {
            Limit::Connected => {
                if p == Rational::from_integer(1.into()) {
                    return Err(Error::InvalidParams("the connected limit needs p < 1".into()));
                }
                LimitTarget::Connected {
                    beta: &p / (Rational::from_integer(1.into()) - &p),
                }
            }
            Limit::Forest => LimitTarget::Forest { alpha: &p / &q },
            Limit::Ust => LimitTarget::Ust,
        };
        let d = rc_limit_distance(g, &params, &target)?;
        println!("total variation distance = {d} (~{:.3e})", approx(&d));
    }
    Ok(all)
}

fn approx(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

fn dual_check(a: DualArgs) -> Result<bool> {
    let primal = Multigraph::parse(&std::fs::read_to_string(&a.graph)?)?.to_edge_set()?;
    let spec = DualSpec::from_file(&a.dual)?;
    let n = primal.n();
    let check = dual_complement_check(
        primal,
        &spec,
        edge_list(n, a.contain.as_deref())?,
        edge_list(n, a.avoid.as_deref())?,
    )?;
    println!("forests = {}, dual connected subgraphs = {}, equal = {}", check.lhs, check.rhs, check.equal);
    Ok(check.equal)
}
