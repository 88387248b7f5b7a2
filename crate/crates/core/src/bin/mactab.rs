use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use mactab::char_lattice::enumerate_params;
use mactab::char_table::{central_character, default_cache_dir, macdonald, CharacterTable, GlFamily};
use mactab::factors::{eps_pair, eps_zeta_with, shahidi_gamma, TraceProfile};
use mactab::ff_tower::FieldTower;
use mactab::gl_group::{gl_order, GroupContext, DEFAULT_GROUP_CAP};
use mactab::harness::{run_suite, Grid, Registry, Suite};
use mactab::wd_side::eps0_class;
use mactab::Error;

#[derive(Parser)]
#[command(name = "mactab", version, about = "Characters of GL_n(F_q), tame Weil-Deligne classes and their epsilon factors")]
struct Cli {
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Character table cache (default `$MACTAB_CACHE` or `./.mactab-cache`).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parameter functions.
    Params {
        #[command(subcommand)]
        action: ParamsCmd,
    },
    /// Conjugacy classes of GL_n(F_q).
    Classes(Size),
    /// Computes (or loads) the character table and writes it to the cache.
    Chartable(Size),
    /// Labels, Weil-Deligne classes and the central character check.
    Correspond(Size),
    /// Epsilon factors of every irreducible.
    Epsilon {
        #[command(flatten)]
        size: Size,
        #[arg(long, value_enum, default_value_t = Side::Both)]
        side: Side,
    },
    /// Gamma and epsilon factors of every cuspidal pair.
    Gamma {
        #[arg(long)]
        n1: usize,
        #[arg(long)]
        n2: usize,
        #[arg(long)]
        q: u64,
        /// Write the factor table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Runs a verification suite.
    Verify {
        suite: String,
        #[arg(long, default_value = "standard")]
        grid: String,
        /// Also write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ParamsCmd {
    Enumerate(Size),
}

#[derive(clap::Args)]
struct Size {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    q: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Side {
    Group,
    Galois,
    Both,
}

enum Failure {
    Usage(String),
    Error(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Error(e @ Error::CapExceeded { order, cap })) => {
            eprintln!("{}", json!({ "error": "CapExceeded", "order": order, "cap": cap, "message": e.to_string() }));
            ExitCode::from(3)
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn emit(cli: &Cli, value: serde_json::Value, text: impl FnOnce() -> String) {
    let s = if cli.json { serde_json::to_string_pretty(&value).expect("serializes") + "\n" } else { text() };
    std::io::stdout().write_all(s.as_bytes()).expect("stdout");
}

fn cache_dir(cli: &Cli) -> PathBuf {
    cli.cache.clone().unwrap_or_else(default_cache_dir)
}

fn check_cap(n: usize, q: u64) -> Result<(), Failure> {
    let order = gl_order(n, q);
    if order > DEFAULT_GROUP_CAP {
        return Err(Error::CapExceeded { order, cap: DEFAULT_GROUP_CAP }.into());
    }
    Ok(())
}

fn family(cli: &Cli, q: u64, n: usize) -> Result<Arc<GlFamily>, Failure> {
    check_cap(n, q)?;
    let dir = cache_dir(cli);
    Ok(Arc::new(GlFamily::new(q, n, Some(&dir))?))
}

fn context(n: usize, q: u64) -> Result<GroupContext, Failure> {
    check_cap(n, q)?;
    let tower = Arc::new(FieldTower::for_rank(q, n as u32)?);
    Ok(GroupContext::new(tower, n)?)
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    match &cli.cmd {
        Cmd::Params { action: ParamsCmd::Enumerate(Size { n, q }) } => {
            let tower = FieldTower::for_rank(*q, *n as u32)?;
            let params: Vec<String> = enumerate_params(&tower, *n as u32)?.iter().map(|p| p.to_string()).collect();
            emit(cli, json!(params), || params.iter().map(|p| format!("{p}\n")).collect());
        }
        Cmd::Classes(Size { n, q }) => {
            let ctx = context(*n, *q)?;
            let f = ctx.field();
            emit(cli, serde_json::to_value(ctx.classes()).expect("serializes"), || {
                ctx.classes().iter().map(|c| format!("{}\tsize {}\n", c.label.display(f), c.size)).collect()
            });
        }
        Cmd::Chartable(Size { n, q }) => {
            let ctx = context(*n, *q)?;
            let dir = cache_dir(cli);
            let table = CharacterTable::load_or_compute(&ctx, &dir)?;
            let path = CharacterTable::cache_file(&dir, *n, *q);
            if cli.json {
                print!("{}", table.to_cache_json(&ctx)?);
            } else {
                println!("GL_{n}(F_{q}): {} irreducibles, degrees {:?}", table.len(), table.degrees());
                println!("cache {}", path.display());
            }
        }
        Cmd::Correspond(Size { n, q }) => {
            let fam = family(cli, *q, *n)?;
            let (ctx, table) = (fam.context(*n), fam.table(*n));
            let mut rows = Vec::new();
            let mut all = true;
            for i in 0..table.len() {
                let class = macdonald(&table.label(i));
                let omega = central_character(table.character(i), ctx)?.exponent();
                let ok = omega == class.determinant_exponent();
                all &= ok;
                rows.push(json!({
                    "param": table.param(i).to_string(),
                    "degree": table.character(i).degree().map(|d| d.to_string()),
                    "cuspidal": table.is_cuspidal(i),
                    "wd_class": class.to_string(),
                    "central_character": omega,
                    "det": class.determinant_exponent(),
                    "central_matches_det": ok,
                }));
            }
            emit(cli, json!(rows), || rows.iter().map(|r| format!("{r}\n")).collect());
            return Ok(all);
        }
        Cmd::Epsilon { size: Size { n, q }, side } => {
            let grid = Grid { spec: format!("n={n},q={q}"), tables: vec![(*n, *q)], pairs: vec![] };
            let reg = Registry::new(&grid, Some(cache_dir(cli)), cli.seed);
            let fam = reg.family(*q, *n)?;
            let conv = reg.pinning()?.convention;
            let (ctx, table) = (fam.context(*n), fam.table(*n));
            let profile = TraceProfile::new(ctx);
            let mut rows = Vec::new();
            let mut all = true;
            for i in 0..table.len() {
                let mut row = json!({ "param": table.param(i).to_string() });
                let group = (*side != Side::Galois).then(|| eps_zeta_with(ctx, &profile, table.character(i))).transpose()?;
                let galois = (*side != Side::Group)
                    .then(|| eps0_class(fam.tower(), &macdonald(&table.label(i)), Some(&conv)))
                    .transpose()?;
                if let Some(g) = &group {
                    row["group"] = json!(g.to_string());
                }
                if let Some(g) = &galois {
                    row["galois"] = json!(g.to_string());
                }
                if let (Some(a), Some(b)) = (&group, &galois) {
                    row["equal"] = json!(a == b);
                    all &= a == b;
                }
                rows.push(row);
            }
            emit(cli, json!(rows), || rows.iter().map(|r| format!("{r}\n")).collect());
            return Ok(all);
        }
        Cmd::Gamma { n1, n2, q, csv } => {
            if n2 > n1 || *n2 == 0 {
                return Err(Failure::Usage("gamma needs n1 >= n2 >= 1".into()));
            }
            let grid = Grid { spec: format!("n<={n1},q={q}"), tables: vec![], pairs: vec![(*n1, *n2, *q)] };
            let reg = Registry::new(&grid, Some(cache_dir(cli)), cli.seed);
            let fam = reg.family(*q, *n1)?;
            let (t1, t2) = (fam.table(*n1), fam.table(*n2));
            let mut rows = Vec::new();
            for i in t1.cuspidal_rows() {
                for j in t2.cuspidal_rows() {
                    let (a, b) = ((*n1, t1.character(i)), (*n2, t2.character(j)));
                    let sh = shahidi_gamma(&fam, a, b, &reg.eval)?;
                    let eps = eps_pair(&fam, a, b, &reg.eval)?;
                    rows.push(json!({
                        "sigma1": t1.param(i).to_string(),
                        "sigma2": t2.param(j).to_string(),
                        "gamma": sh.gamma.to_string(),
                        "epsilon": eps.to_string(),
                        "points_checked": sh.points_checked,
                        "exhaustive": sh.exhaustive,
                    }));
                }
            }
            if let Some(path) = csv {
                let mut s = String::from("sigma1,sigma2,gamma,epsilon\n");
                for r in &rows {
                    let cell = |k: &str| format!("\"{}\"", r[k].as_str().unwrap_or_default().replace('"', "\"\""));
                    s.push_str(&format!("{},{},{},{}\n", cell("sigma1"), cell("sigma2"), cell("gamma"), cell("epsilon")));
                }
                std::fs::write(path, s).map_err(Error::from)?;
            }
            emit(cli, json!(rows), || rows.iter().map(|r| format!("{r}\n")).collect());
        }
        Cmd::Verify { suite, grid, out } => {
            let suite = Suite::parse(suite).map_err(|e| Failure::Usage(e.to_string()))?;
            let grid = Grid::parse(grid).map_err(|e| Failure::Usage(e.to_string()))?;
            let reg = Registry::new(&grid, Some(cache_dir(cli)), cli.seed);
            let report = run_suite(suite, &grid, &reg, cli.seed)?;
            if let Some(path) = out {
                std::fs::write(path, serde_json::to_string_pretty(&report).expect("serializes")).map_err(Error::from)?;
            }
            emit(cli, serde_json::to_value(&report).expect("serializes"), || report.to_lines());
            return Ok(report.pass);
        }
    }
    Ok(true)
}
