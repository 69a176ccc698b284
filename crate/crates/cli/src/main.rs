mod report;

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use broomdist::oracle::{brute_min_f, FlipGraph, OracleError, DEFAULT_BROOM_CAP, DEFAULT_BRUTE_BITS};
use broomdist::random::{random_instance, rng};
use broomdist::{
    bfs_distance, rotation_distance, Exec, GeodesicPlan, Instance, InstanceError, ModelSets, Solution,
    SplitGraphSpec,
};

use report::*;

#[derive(Debug, Parser)]
#[command(name = "broomdist", version, about = "Rotation distance between brooms on complete split graphs")]
struct Cli {
    /// Largest flip graph the oracle may enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_BROOM_CAP)]
    cap: u64,
    /// Seed for `random` and `bench`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact distance and a minimizing assignment.
    Distance {
        /// Instance JSON, or `-` for standard input.
        file: PathBuf,
        /// Include the sets and coefficients behind the distance.
        #[arg(long)]
        explain: bool,
        /// Include the cut graph, with every weight doubled.
        #[arg(long)]
        dump_cut_graph: bool,
        /// Include the rotations of a shortest path.
        #[arg(long)]
        geodesic: bool,
        /// Include every broom along a shortest path.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        no_timings: bool,
    },
    /// A shortest rotation sequence from t1 to t2.
    Geodesic {
        file: PathBuf,
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        no_timings: bool,
    },
    /// Every broom one rotation away.
    Neighbors {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Tree::T1)]
        tree: Tree,
    },
    /// Canonicalize an instance and list its tubings.
    Validate { file: PathBuf },
    /// Cross-check the distance against BFS and exhaustive minimization.
    Oracle {
        file: Option<PathBuf>,
        /// Check every ordered pair of brooms on the graph given by --p and --q.
        #[arg(long, requires_all = ["p", "q"], conflicts_with = "file")]
        all_pairs: bool,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        q: Option<u32>,
    },
    /// A uniformly random instance.
    Random {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
    },
    /// Wall time of the distance pipeline against n, with p = n/2.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "250,500,1000,2000")]
        sizes: Vec<u32>,
        #[arg(long, default_value_t = 3)]
        reps: u32,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Tree {
    T1,
    T2,
}

#[derive(Debug)]
enum Failure {
    Io(PathBuf, std::io::Error),
    Input(InstanceError),
    Cap(OracleError),
    Usage(String),
    /// The oracle disagreed; the report has already been printed.
    Disagreement,
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Disagreement => 1,
            Failure::Io(..) | Failure::Input(_) | Failure::Usage(_) => 2,
            Failure::Cap(_) => 3,
        }
    }

    fn to_json(&self) -> serde_json::Value {
        let (kind, message) = match self {
            Failure::Io(path, e) => ("io", format!("{}: {e}", path.display())),
            Failure::Input(InstanceError::Json(e)) => ("parse", e.to_string()),
            Failure::Input(e) => ("validation", e.to_string()),
            Failure::Cap(e) => ("cap_exceeded", e.to_string()),
            Failure::Usage(m) => ("usage", m.clone()),
            Failure::Disagreement => ("disagreement", "oracle verdict does not hold".to_owned()),
        };
        json!({ "error": { "kind": kind, "message": message } })
    }
}

impl From<InstanceError> for Failure {
    fn from(e: InstanceError) -> Self {
        Failure::Input(e)
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Failure::Cap(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            if !matches!(failure, Failure::Disagreement) {
                eprintln!("{}", failure.to_json());
            }
            ExitCode::from(failure.exit_code())
        }
    }
}

fn emit<T: Serialize>(value: &T) {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    // A closed pipe downstream (`| head`) is not an error worth a panic.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

fn load(path: &Path) -> Result<Instance, Failure> {
    let mut text = String::new();
    let read = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(drop)
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|e| Failure::Io(path.to_owned(), e))?;
    Ok(Instance::from_json(&text)?)
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Distance {
            file,
            explain,
            dump_cut_graph,
            geodesic,
            trace,
            no_timings,
        } => {
            let opts = DistanceOpts {
                explain: *explain,
                dump_cut_graph: *dump_cut_graph,
                geodesic: *geodesic || *trace,
                trace: *trace,
                timings: !no_timings,
            };
            emit(&distance_report(file, opts)?);
        }
        Command::Geodesic {
            file,
            trace,
            no_timings,
        } => {
            let opts = DistanceOpts {
                geodesic: true,
                trace: *trace,
                timings: !no_timings,
                ..DistanceOpts::default()
            };
            emit(&distance_report(file, opts)?);
        }
        Command::Neighbors { file, tree } => {
            let inst = load(file)?;
            let b = match tree {
                Tree::T1 => &inst.t1,
                Tree::T2 => &inst.t2,
            };
            emit(&NeighborsReport::new(b));
        }
        Command::Validate { file } => {
            let inst = load(file)?;
            emit(&ValidateReport {
                valid: true,
                instance: inst.to_doc(),
                tubings: TubingPair {
                    t1: tubes(&inst.t1),
                    t2: tubes(&inst.t2),
                },
            });
        }
        Command::Oracle {
            file,
            all_pairs,
            p,
            q,
        } => {
            let holds = match (file, all_pairs) {
                (Some(file), false) => {
                    let r = oracle_instance(&load(file)?, cli.cap)?;
                    emit(&r);
                    r.holds
                }
                (None, true) => {
                    let spec = SplitGraphSpec::new(p.unwrap(), q.unwrap())
                        .map_err(|e| Failure::Input(e.into()))?;
                    let r = oracle_all_pairs(spec, cli.cap)?;
                    emit(&r);
                    r.holds
                }
                _ => return Err(Failure::Usage("give an instance file or --all-pairs --p P --q Q".into())),
            };
            if !holds {
                return Err(Failure::Disagreement);
            }
        }
        Command::Random { p, q } => {
            let spec = SplitGraphSpec::new(*p, *q).map_err(|e| Failure::Input(e.into()))?;
            emit(&random_instance(spec, &mut rng(cli.seed)).to_doc());
        }
        Command::Bench { sizes, reps } => emit(&bench(sizes, (*reps).max(1), cli.seed)?),
    }
    Ok(())
}

#[derive(Debug, Default, Clone, Copy)]
struct DistanceOpts {
    explain: bool,
    dump_cut_graph: bool,
    geodesic: bool,
    trace: bool,
    timings: bool,
}

fn distance_report(file: &Path, opts: DistanceOpts) -> Result<RunReport, Failure> {
    let start = Instant::now();
    let inst = load(file)?;
    let mut timings = Timings {
        parse_ms: ms(start),
        ..Timings::default()
    };

    let start = Instant::now();
    let sol = Solution::solve(&inst.t1, &inst.t2).expect("instances share a spec");
    timings.solve_ms = ms(start);

    let plan = opts.geodesic.then(|| {
        let start = Instant::now();
        let plan = GeodesicPlan::construct(&inst.t1, &inst.t2, sol.xstar()).expect("x* lives on Y");
        timings.geodesic_ms = Some(ms(start));
        plan
    });

    Ok(RunReport {
        instance: inst.to_doc(),
        distance: sol.distance,
        xstar: sol.xstar().ones_vertices().iter().map(|v| v.index).collect(),
        geodesic: plan.as_ref().map(GeodesicReport::from),
        trace: plan.as_ref().filter(|_| opts.trace).map(trace),
        explain: opts.explain.then(|| Explain::new(&sol)),
        cut_graph: opts.dump_cut_graph.then(|| sol.graph.dump()),
        timings: opts.timings.then_some(timings),
    })
}

fn oracle_instance(inst: &Instance, cap: u64) -> Result<OracleReport, Failure> {
    let (mincut, _) = rotation_distance(&inst.t1, &inst.t2).expect("instances share a spec");
    let bfs = bfs_distance(&inst.t1, &inst.t2, cap)?;
    let sets = ModelSets::derive(&inst.t1, &inst.t2).expect("instances share a spec");
    let brute = brute_min_f(&sets, DEFAULT_BRUTE_BITS, Exec::default())?;
    Ok(OracleReport {
        instance: inst.to_doc(),
        mincut,
        bfs,
        brute: brute.min,
        monotone_witness: brute.monotone_witness,
        verdict: VERDICT,
        holds: mincut == bfs && bfs == brute.min && brute.monotone_witness,
    })
}

fn oracle_all_pairs(spec: SplitGraphSpec, cap: u64) -> Result<AllPairsReport, Failure> {
    let exec = Exec::default();
    let g = FlipGraph::enumerate(spec, cap, exec)?;
    let bfs = g.all_pairs(exec);
    let rows = exec.map_range(0..g.len(), |i| {
        let mut mismatches = 0u64;
        let mut monotone = true;
        let mut first = None;
        for (t2, &d) in g.brooms.iter().zip(&bfs[i]) {
            let t1 = &g.brooms[i];
            let (mincut, _) = rotation_distance(t1, t2).expect("same graph");
            let sets = ModelSets::derive(t1, t2).expect("same graph");
            let brute = brute_min_f(&sets, DEFAULT_BRUTE_BITS, Exec::Sequential)?;
            monotone &= brute.monotone_witness;
            let b = u64::from(d);
            if mincut != b || brute.min != b {
                mismatches += 1;
                first.get_or_insert(Mismatch {
                    t1: t1.to_raw(),
                    t2: t2.to_raw(),
                    mincut,
                    bfs: b,
                    brute: brute.min,
                });
            }
        }
        Ok::<_, OracleError>((mismatches, monotone, first))
    });
    let mut mismatches = 0;
    let mut monotone = true;
    let mut first_mismatch = None;
    for row in rows {
        let (m, mono, first) = row?;
        mismatches += m;
        monotone &= mono;
        if first_mismatch.is_none() {
            first_mismatch = first;
        }
    }
    let diameter = bfs.iter().flatten().copied().max().unwrap_or(0);
    Ok(AllPairsReport {
        p: spec.p(),
        q: spec.q(),
        brooms: g.len(),
        pairs: (g.len() as u64).pow(2),
        diameter,
        mismatches,
        monotone_witness_everywhere: monotone,
        first_mismatch,
        verdict: VERDICT,
        holds: mismatches == 0 && monotone,
    })
}

fn bench(sizes: &[u32], reps: u32, seed: u64) -> Result<BenchReport, Failure> {
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        if n < 2 {
            return Err(Failure::Usage(format!("bench size {n} is below 2")));
        }
        let spec = SplitGraphSpec::new(n / 2, n - n / 2).expect("p >= 1");
        let mut best = f64::INFINITY;
        let mut last = (0, 0);
        for rep in 0..reps {
            let inst = random_instance(spec, &mut rng(seed.wrapping_add(rep.into())));
            let start = Instant::now();
            let (d, x) = rotation_distance(&inst.t1, &inst.t2).expect("same graph");
            best = best.min(ms(start));
            last = (d, x.bits().len());
        }
        rows.push(BenchRow {
            n,
            p: spec.p(),
            q: spec.q(),
            y: last.1,
            distance: last.0,
            best_ms: best,
        });
    }
    Ok(BenchReport {
        seed,
        reps,
        loglog_slope: loglog_slope(&rows),
        rows,
    })
}

fn loglog_slope(rows: &[BenchRow]) -> Option<f64> {
    if rows.len() < 2 {
        return None;
    }
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| (f64::from(r.n).ln(), r.best_ms.max(1e-6).ln()))
        .collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}
