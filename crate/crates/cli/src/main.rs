use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use claspweb::clasp::{has_bad_config, has_returning_trip, is_nonconvex, ClaspSequence};
use claspweb::growth::{grow_budgeted, RuleTable, DEFAULT_BUDGET};
use claspweb::hpg::HourglassGraph;
use claspweb::rep::{clasped_rank, evaluate_web, in_kernel_cached, is_invariant, rank_of, IrrepCache};
use claspweb::swap::{sort_boundary, swap_adjacent};
use claspweb::tableaux::{clasp_weight, clasp_weights, dim_invariant_space, Partition};
use claspweb::words::{all_types, enumerate_balanced_lattice, enumerate_bl, Rank, Word};
use claspweb::Error;

#[derive(Parser)]
#[command(name = "claspweb", version, about = "Clasped web bases for SL_2, SL_3 and SL_4")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct WebInput {
    /// Rank 2, 3 or 4.
    #[arg(short, default_value = "4")]
    r: u8,
    /// Balanced lattice word, letters separated by spaces.
    #[arg(long, conflicts_with = "graph", allow_hyphen_values = true)]
    word: Option<String>,
    /// Graph file.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Growth rule table replacing the bundled one.
    #[arg(long)]
    rules: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// List balanced lattice words of a type, or the descent-free ones for
    /// a clasp sequence.
    Enumerate {
        #[arg(short, default_value = "4")]
        r: u8,
        /// Type such as `1x8` or `1,2,1`.
        #[arg(long = "type")]
        ty: String,
        /// Clasp sizes such as `2,1,1`.
        #[arg(long)]
        clasps: Option<String>,
    },
    /// Grow the web of a word.
    Grow {
        #[command(flatten)]
        input: WebInput,
        /// Write the graph here instead of printing it.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Emit graphviz instead of the graph format.
        #[arg(long)]
        dot: bool,
    },
    /// Separation labels of every edge.
    Label {
        #[command(flatten)]
        input: WebInput,
    },
    /// Trip permutations.
    Trips {
        #[command(flatten)]
        input: WebInput,
    },
    /// Kernel, non-convexity, returning trip, descents and bad
    /// configurations for one clasp sequence; disagreement is an error.
    CheckClasp {
        #[command(flatten)]
        input: WebInput,
        #[arg(long)]
        clasps: String,
    },
    /// Swap two adjacent boundary vertices, or sort every clasp.
    Swap {
        #[command(flatten)]
        input: WebInput,
        /// Swap positions `i` and `i+1` (1-based).
        #[arg(long, conflicts_with = "clasps")]
        at: Option<usize>,
        #[arg(long)]
        clasps: Option<String>,
    },
    /// Dimension of the invariant space of a tensor product.
    Dims {
        #[arg(short, default_value = "4")]
        r: u8,
        /// Comma separated factors; each is a fundamental index or a sum
        /// such as `1+1` for a clasp.
        #[arg(long)]
        weights: String,
    },
    /// Check the basis theorems on every type up to a length.
    Verify {
        #[arg(short, default_value = "4")]
        r: u8,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
}

/// Failures sorted by exit code.
enum Fail {
    Invariant(String),
    Usage(String),
    Budget(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        match e {
            Error::Budget(_) => Fail::Budget(e.to_string()),
            Error::Rank(_)
            | Error::Letter { .. }
            | Error::Parse { .. }
            | Error::Rule { .. }
            | Error::ClaspMismatch(_)
            | Error::Position { .. } => Fail::Usage(e.to_string()),
            _ => Fail::Invariant(e.to_string()),
        }
    }
}

type Report = Map<String, Value>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(report) => {
            print(&report, cli.format);
            ExitCode::SUCCESS
        }
        Err(f) => {
            let (code, msg) = match f {
                Fail::Invariant(m) => (1, m),
                Fail::Usage(m) => (2, m),
                Fail::Budget(m) => (3, m),
            };
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn print(report: &Report, format: Format) {
    let mut out = String::new();
    match format {
        Format::Json => out = format!("{}\n", Value::Object(report.clone())),
        Format::Text => {
            for (k, v) in report {
                match v {
                    Value::String(s) if s.contains('\n') => out.push_str(s),
                    Value::String(s) => out.push_str(&format!("{k}: {s}\n")),
                    Value::Array(items) if items.iter().all(Value::is_string) => {
                        for x in items {
                            out.push_str(&format!("{k}: {}\n", x.as_str().unwrap_or_default()));
                        }
                    }
                    Value::Array(items) => {
                        let parts: Vec<String> = items.iter().map(Value::to_string).collect();
                        out.push_str(&format!("{k}: {}\n", parts.join(" ")));
                    }
                    other => out.push_str(&format!("{k}: {other}\n")),
                }
            }
        }
    }
    // A closed pipe downstream is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
}

fn rank(r: u8) -> Result<Rank, Fail> {
    Ok(Rank::new(r)?)
}

/// `1x8`, `1,2,1` or a mix such as `1x2,3`.
fn parse_type(s: &str) -> Result<Vec<u8>, Fail> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim) {
        let (a, k) = match part.split_once('x') {
            Some((a, k)) => (a, k.parse::<usize>().map_err(|_| Fail::Usage(format!("bad repeat in {part:?}")))?),
            None => (part, 1),
        };
        let a: u8 = a.parse().map_err(|_| Fail::Usage(format!("bad type entry {part:?}")))?;
        out.extend(std::iter::repeat_n(a, k));
    }
    Ok(out)
}

fn parse_sizes(s: &str) -> Result<Vec<usize>, Fail> {
    s.split(',').map(|x| x.trim().parse().map_err(|_| Fail::Usage(format!("bad clasp size {x:?}")))).collect()
}

fn load(input: &WebInput) -> Result<(HourglassGraph, Option<Word>), Fail> {
    let r = rank(input.r)?;
    match (&input.word, &input.graph) {
        (Some(w), _) => {
            let w = Word::parse(w, r)?;
            if !w.is_lattice() || !w.is_balanced() {
                return Err(Fail::Usage(format!("{w} is not a balanced lattice word")));
            }
            let table = match &input.rules {
                Some(p) => Some(RuleTable::parse(r, &read(p)?)?),
                None => None,
            };
            let g = grow_budgeted(&w, table.as_ref(), input.budget)?.web;
            Ok((g, Some(w)))
        }
        (None, Some(p)) => {
            let g: HourglassGraph = read(p)?.parse()?;
            Ok((g, None))
        }
        (None, None) => Err(Fail::Usage("give --word or --graph".into())),
    }
}

fn read(p: &PathBuf) -> Result<String, Fail> {
    std::fs::read_to_string(p).map_err(|e| Fail::Usage(format!("{}: {e}", p.display())))
}

fn words(ws: &[Word]) -> Value {
    Value::Array(ws.iter().map(|w| Value::String(w.to_string())).collect())
}

fn run(cmd: Cmd) -> Result<Report, Fail> {
    let mut out = Report::new();
    match cmd {
        Cmd::Enumerate { r, ty, clasps } => {
            let r = rank(r)?;
            let ty = parse_type(&ty)?;
            let ws = match clasps {
                Some(s) => enumerate_bl(r, &ClaspSequence::new(ty.clone(), parse_sizes(&s)?)?)?,
                None => enumerate_balanced_lattice(r, &ty),
            };
            out.insert("word".into(), words(&ws));
            out.insert("count".into(), json!(ws.len()));
        }
        Cmd::Grow { input, output, dot } => {
            let (g, _) = load(&input)?;
            let text = if dot { g.to_dot() } else { g.to_string() };
            match output {
                Some(p) => {
                    std::fs::write(&p, &text).map_err(|e| Fail::Usage(format!("{}: {e}", p.display())))?;
                    out.insert("written".into(), json!(p.display().to_string()));
                }
                None => {
                    out.insert("graph".into(), json!(text));
                }
            }
            out.insert("type".into(), json!(g.type_of()));
        }
        Cmd::Label { input } => {
            let (g, _) = load(&input)?;
            let lab = g.separation_labeling()?;
            let rows: Vec<Value> = g
                .edges()
                .iter()
                .enumerate()
                .map(|(e, ed)| json!(format!("{e} {} {} {} {}", ed.black, ed.white, ed.m, lab.get(e))))
                .collect();
            out.insert("edge".into(), Value::Array(rows));
            out.insert("boundary_word".into(), json!(g.boundary_word()?.to_string()));
        }
        Cmd::Trips { input } => {
            let (g, _) = load(&input)?;
            let t = g.trips()?;
            for k in 1..g.rank().get() {
                // Images of b_1..b_n, 1-based; a boundary hourglass has two.
                let row: Vec<String> = (0..g.n())
                    .map(|i| t.get(k, i).iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join("/"))
                    .collect();
                out.insert(format!("trip_{k}"), json!(row.join(" ")));
            }
        }
        Cmd::CheckClasp { input, clasps } => {
            let (g, word) = load(&input)?;
            let c = ClaspSequence::new(g.type_of(), parse_sizes(&clasps)?)?;
            let kernel = in_kernel_cached(&evaluate_web(&g), &c, &mut IrrepCache::default())?;
            let convex = !is_nonconvex(&g, &c)?;
            let returning = has_returning_trip(&g, &c)?;
            let mut verdicts = vec![("kernel", kernel), ("nonconvex", convex), ("returning_trip", returning)];
            if c.is_sorted() {
                let w = match word {
                    Some(w) => w,
                    None => g.boundary_word()?,
                };
                verdicts.push(("descent", w.has_c_descents(&c)?));
                verdicts.push(("bad_config", has_bad_config(&g, &c)?));
            }
            for (k, v) in &verdicts {
                out.insert((*k).into(), json!(if *v { "kernel" } else { "survives" }));
            }
            if verdicts.iter().any(|x| x.1 != verdicts[0].1) {
                print(&out, Format::Text);
                return Err(Fail::Invariant("predicates disagree".into()));
            }
        }
        Cmd::Swap { input, at, clasps } => {
            let (g, _) = load(&input)?;
            let class = match (at, clasps) {
                (Some(i), _) => {
                    if i == 0 || i > g.n() {
                        return Err(Fail::Usage(format!("--at must lie in 1..={}", g.n())));
                    }
                    let s = swap_adjacent(&g, i - 1, input.budget)?;
                    let steps: Vec<Value> = s.steps.iter().map(|x| json!(x.to_string())).collect();
                    out.insert("step".into(), Value::Array(steps));
                    s.class
                }
                (None, Some(sizes)) => {
                    let c = ClaspSequence::new(g.type_of(), parse_sizes(&sizes)?)?;
                    let (class, sorted, log) = sort_boundary(&g, &c, input.budget)?;
                    out.insert("swaps".into(), json!(log.iter().map(|i| i + 1).collect::<Vec<_>>()));
                    out.insert("sorted_type".into(), json!(sorted.type_of()));
                    class
                }
                (None, None) => return Err(Fail::Usage("give --at or --clasps".into())),
            };
            out.insert("type".into(), json!(class.type_of()));
            out.insert("graph".into(), json!(class.graph().to_string()));
        }
        Cmd::Dims { r, weights } => {
            let r = rank(r)?;
            let mut ws = Vec::new();
            for part in weights.split(',') {
                let ks: Vec<u8> = part
                    .split('+')
                    .map(|k| match k.trim().parse::<u8>() {
                        Ok(k) if k >= 1 && k < r.get() => Ok(k),
                        _ => Err(Fail::Usage(format!("bad weight {part:?}"))),
                    })
                    .collect::<Result<_, _>>()?;
                ws.push(clasp_weight(&ks));
            }
            out.insert("dim".into(), json!(dim_invariant_space(&ws, r.usize())));
        }
        Cmd::Verify { r, max_n } => verify(rank(r)?, max_n, &mut out)?,
    }
    Ok(out)
}

/// Round trip, invariance, independence and the clasped basis theorem.
fn verify(r: Rank, max_n: usize, out: &mut Report) -> Result<(), Fail> {
    let mut cache = IrrepCache::default();
    let (mut webs, mut clasps) = (0usize, 0usize);
    for n in 1..=max_n {
        for ty in all_types(r, n) {
            let mut gs = Vec::new();
            for w in enumerate_balanced_lattice(r, &ty) {
                let g = grow_budgeted(&w, None, DEFAULT_BUDGET)?.web;
                if g.boundary_word()? != w {
                    return Err(Fail::Invariant(format!("{w} does not round trip")));
                }
                let f = evaluate_web(&g);
                if !is_invariant(&f) {
                    return Err(Fail::Invariant(format!("web of {w} is not invariant")));
                }
                gs.push((w, g, f));
            }
            webs += gs.len();
            let fs: Vec<_> = gs.iter().map(|x| x.2.clone()).collect();
            let ws: Vec<Partition> = ty.iter().map(|&a| Partition::fundamental(a)).collect();
            if rank_of(&fs)? as u64 != dim_invariant_space(&ws, r.usize()) {
                return Err(Fail::Invariant(format!("type {ty:?}: rank differs from dimension")));
            }
            if gs.is_empty() {
                continue;
            }
            for c in ClaspSequence::all_on(&ty) {
                let mut alive = Vec::new();
                for (w, g, f) in &gs {
                    let k = in_kernel_cached(f, &c, &mut cache)?;
                    let mut agree = k != is_nonconvex(g, &c)? && k == has_returning_trip(g, &c)?;
                    if c.is_sorted() {
                        agree &= k == w.has_c_descents(&c)? && k == has_bad_config(g, &c)?;
                    }
                    if !agree {
                        return Err(Fail::Invariant(format!("{w} clasps {:?}: predicates disagree", c.sizes())));
                    }
                    if !k {
                        alive.push(f.clone());
                    }
                }
                let d = dim_invariant_space(&clasp_weights(&c), r.usize());
                if alive.len() as u64 != d || clasped_rank(&alive, &c, &mut cache)? as u64 != d {
                    return Err(Fail::Invariant(format!("type {ty:?} clasps {:?}: not a basis", c.sizes())));
                }
                clasps += 1;
            }
        }
    }
    out.insert("webs".into(), json!(webs));
    out.insert("clasp_sequences".into(), json!(clasps));
    out.insert("status".into(), json!("ok"));
    Ok(())
}
