//! Command-line front end: parse, embed, analyze, cut, verify, oracle,
//! generate, benchmark.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::cut::{min_disc_cut, verify_cut, PipelineOptions};
use crate::dcel::{list_large_faces, Dcel};
use crate::embed::{embed, RotationSystem};
use crate::graph::{Graph, Vertex};
use crate::io::{parse_graph, write_graph, ParsedGraph};
use crate::{generate, oracle};

/// Exit codes: 0 success / positive answer, 1 negative decision, 2 errors.
pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser)]
#[command(
    name = "plancut",
    about = "Minimal disconnected cuts of 4-connected planar graphs",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a planar embedding; print the graph with rot blocks
    Embed { file: PathBuf },
    /// List every face of the embedding, one line per face
    Faces { file: PathBuf },
    /// Decide whether a minimal disconnected cut exists (yes/no)
    Decide {
        file: PathBuf,
        /// Check 4-connectivity and planarity up front
        #[arg(long)]
        validate: bool,
    },
    /// Find a minimal disconnected cut or certify none exists
    Cut {
        file: PathBuf,
        /// Check 4-connectivity and planarity up front
        #[arg(long)]
        validate: bool,
        /// Verify the witness before printing it
        #[arg(long)]
        verify: bool,
    },
    /// Verify a comma-separated vertex set as a cut of the graph
    Verify {
        file: PathBuf,
        /// The candidate cut, e.g. 1,5,3,7
        #[arg(long = "cut", value_delimiter = ',')]
        cut: Vec<Vertex>,
    },
    /// Maximum internally disjoint paths between two vertices
    Menger {
        file: PathBuf,
        s: Vertex,
        t: Vertex,
        /// Stop after this many paths
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Exhaustive small-instance checks against the brute-force oracle
    Oracle {
        file: PathBuf,
        /// shapes | bound | stable | cleavable | all
        #[arg(long, default_value = "all")]
        check: String,
        /// Vertex-count bound for the subset scan
        #[arg(long, default_value_t = oracle::DEFAULT_ORACLE_BOUND)]
        bound: usize,
    },
    /// Generate a test instance in the shared graph format
    Gen(GenArgs),
    /// Time the cut pipeline across instance sizes; CSV n,ms,ratio
    Bench(BenchArgs),
}

#[derive(Args)]
struct GenArgs {
    /// octahedron | icosahedron | antiprism | capped-antiprism |
    /// paper-fig-3conn-counter | triangulation | four-connected | carved |
    /// tower | carved-tower | touching-carved-tower
    #[arg(long)]
    family: String,
    /// Target size (vertices; ring size for antiprism families)
    #[arg(long)]
    n: Option<usize>,
    /// Number of large faces to carve
    #[arg(long, default_value_t = 2)]
    faces: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Let carved faces share vertices
    #[arg(long)]
    allow_touching: bool,
    /// Output path (stdout when omitted)
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated sizes; suffixes k (x1024) and m (x1048576) allowed
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<String>,
    /// Repetitions per size (median is reported)
    #[arg(long, default_value_t = 5)]
    reps: usize,
    /// carved-tower is the only family with linear-time generation
    #[arg(long, default_value = "carved-tower")]
    family: String,
    /// Large faces per instance
    #[arg(long, default_value_t = 2)]
    faces: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

pub fn run(cli: Cli) -> i32 {
    match dispatch(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_ERROR
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::Embed { file } => {
            let parsed = load(&file)?;
            let rot = embedding_of(&parsed)?;
            print!("{}", write_graph(&parsed.graph, Some(&rot)));
            Ok(EXIT_OK)
        }
        Command::Faces { file } => {
            let parsed = load(&file)?;
            let rot = embedding_of(&parsed)?;
            let dcel = Dcel::build(&parsed.graph, &rot).map_err(|e| e.to_string())?;
            for f in 0..dcel.face_count() {
                let verts: Vec<String> = dcel.face_boundary(f).map(|v| v.to_string()).collect();
                println!("face {}: {}", dcel.face_len(f), verts.join(" "));
            }
            Ok(EXIT_OK)
        }
        Command::Decide { file, validate } => {
            let parsed = load(&file)?;
            if validate {
                validate_input(&parsed.graph)?;
            }
            let rot = embedding_of(&parsed)?;
            let catalog =
                crate::dcel::large_face_catalog(&parsed.graph, &rot).map_err(|e| e.to_string())?;
            if catalog.len() >= 2 {
                println!("yes");
                Ok(EXIT_OK)
            } else {
                println!("no");
                Ok(EXIT_NEGATIVE)
            }
        }
        Command::Cut {
            file,
            validate,
            verify,
        } => {
            let parsed = load(&file)?;
            let opts = PipelineOptions {
                validate,
                self_verify: false,
            };
            let search = min_disc_cut(&parsed.graph, parsed.rotation.as_ref(), opts)
                .map_err(|e| e.to_string())?;
            match search.cut {
                None => {
                    println!("NULL near-triangulation");
                    Ok(EXIT_NEGATIVE)
                }
                Some(cut) => {
                    let list: Vec<String> =
                        cut.vertices().iter().map(|v| v.to_string()).collect();
                    println!("CUT {}", list.join(" "));
                    if verify {
                        let report =
                            verify_cut(&parsed.graph, cut.vertices()).map_err(|e| e.to_string())?;
                        if report.minimal && report.disconnected {
                            println!("VERIFIED minimal disconnected");
                        } else {
                            println!("CONTRACT-VIOLATION");
                            return Ok(EXIT_ERROR);
                        }
                    }
                    Ok(EXIT_OK)
                }
            }
        }
        Command::Verify { file, cut } => {
            let parsed = load(&file)?;
            let report = verify_cut(&parsed.graph, &cut).map_err(|e| e.to_string())?;
            println!(
                "cut: {}  minimal: {}  disconnected: {}",
                report.is_cut, report.minimal, report.disconnected
            );
            println!(
                "side components: {}  cut components: {}",
                fmt_components(&report.side_components),
                fmt_components(&report.cut_components)
            );
            for (v, per_comp) in &report.witnesses {
                if per_comp.iter().any(|w| w.is_none()) {
                    println!("vertex {v} misses a side component");
                }
            }
            if report.minimal && report.disconnected {
                Ok(EXIT_OK)
            } else {
                Ok(EXIT_NEGATIVE)
            }
        }
        Command::Menger { file, s, t, cap } => {
            let parsed = load(&file)?;
            let bundle =
                crate::connectivity::menger_paths(&parsed.graph, s, t, cap).map_err(|e| e.to_string())?;
            for p in &bundle.paths {
                let line: Vec<String> = p.iter().map(|v| v.to_string()).collect();
                println!("{}", line.join(" "));
            }
            Ok(EXIT_OK)
        }
        Command::Oracle { file, check, bound } => run_oracle(&file, &check, bound),
        Command::Gen(args) => run_gen(args),
        Command::Bench(args) => run_bench(args),
    }
}

fn load(file: &PathBuf) -> Result<ParsedGraph, String> {
    let text = fs::read_to_string(file)
        .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
    parse_graph(&text).map_err(|e| e.to_string())
}

fn embedding_of(parsed: &ParsedGraph) -> Result<RotationSystem, String> {
    match &parsed.rotation {
        Some(r) => Ok(r.clone()),
        None => embed(&parsed.graph).map_err(|e| e.to_string()),
    }
}

fn validate_input(g: &Graph) -> Result<(), String> {
    if !g.is_connected() {
        return Err("input graph is not connected".into());
    }
    if !crate::connectivity::is_k_connected(g, 4) {
        return Err("input graph is not 4-connected".into());
    }
    Ok(())
}

fn fmt_components(comps: &[Vec<Vertex>]) -> String {
    let mut out = String::new();
    for (i, c) in comps.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let items: Vec<String> = c.iter().map(|v| v.to_string()).collect();
        let _ = write!(out, "[{}]", items.join(","));
    }
    out
}

fn run_oracle(file: &PathBuf, check: &str, bound: usize) -> Result<i32, String> {
    let parsed = load(file)?;
    let g = &parsed.graph;
    let rot = embedding_of(&parsed)?;
    let dcel = Dcel::build(g, &rot).map_err(|e| e.to_string())?;
    let catalog = list_large_faces(&dcel).map_err(|e| e.to_string())?;
    let mut all_pass = true;
    let mut ran_any = false;

    let wants = |name: &str| check == "all" || check == name;
    if wants("cleavable") {
        ran_any = true;
        let inv = oracle::enumerate_minimal_cuts_bounded(g, bound).map_err(|e| e.to_string())?;
        let cleavable = !inv.any_disconnected();
        println!(
            "oracle cleavable: {} ({} minimal cuts, {})",
            if cleavable { "yes" } else { "no" },
            inv.len(),
            if cleavable {
                "all connected"
            } else {
                "disconnected cut present"
            }
        );
    }
    if wants("shapes") {
        ran_any = true;
        if catalog.len() <= 1 {
            let report = oracle::check_near_triangulation_cut_shapes_bounded(g, &catalog, bound)
                .map_err(|e| e.to_string())?;
            let ok = report.ok();
            all_pass &= ok;
            println!(
                "oracle shapes: {} ({} cuts checked{})",
                if ok { "PASS" } else { "FAIL" },
                report.cuts_checked,
                if ok {
                    String::new()
                } else {
                    format!(", {} violations", report.violations.len())
                }
            );
        } else {
            println!("oracle shapes: SKIP (graph has {} large faces)", catalog.len());
        }
    }
    if wants("bound") {
        ran_any = true;
        let report =
            oracle::check_component_bound_bounded(g, &catalog, bound).map_err(|e| e.to_string())?;
        let ok = report.ok();
        all_pass &= ok;
        println!(
            "oracle bound: {} (max components {}, large faces {})",
            if ok { "PASS" } else { "FAIL" },
            report.max_components,
            report.large_faces
        );
    }
    if wants("stable") {
        ran_any = true;
        let report =
            oracle::check_no_stable_cut_bounded(g, &catalog, bound).map_err(|e| e.to_string())?;
        match &report {
            oracle::StableReport::Checked { cuts_checked, stable_cuts } => {
                let ok = stable_cuts.is_empty();
                all_pass &= ok;
                println!(
                    "oracle stable: {} ({} cuts checked)",
                    if ok { "PASS" } else { "FAIL" },
                    cuts_checked
                );
            }
            oracle::StableReport::SkippedPrecondition(reason) => {
                println!("oracle stable: SKIP ({reason})");
            }
        }
    }
    if !ran_any {
        return Err(format!("unknown check `{check}`"));
    }
    Ok(if all_pass { EXIT_OK } else { EXIT_NEGATIVE })
}

fn run_gen(args: GenArgs) -> Result<i32, String> {
    let n = args.n;
    let result = match args.family.as_str() {
        "triangulation" => generate::random_triangulation(n.unwrap_or(16), args.seed),
        "four-connected" => generate::four_connected_triangulation(n.unwrap_or(16), args.seed),
        "carved" => {
            let size = n.unwrap_or(16);
            if args.allow_touching {
                generate::four_connected_triangulation(size, args.seed).and_then(|(g, rot)| {
                    let (cg, crot, _) =
                        generate::carve_large_faces(&g, &rot, args.faces, args.seed, true)?;
                    Ok((cg, crot))
                })
            } else {
                generate::carved_four_connected(size, args.faces, args.seed)
            }
        }
        "tower" => {
            let size = n.unwrap_or(1024);
            generate::tower(8, rows_for(size, 8))
        }
        "carved-tower" => {
            let size = n.unwrap_or(1024);
            generate::carved_tower(8, rows_for(size, 8), args.faces, args.seed)
        }
        "touching-carved-tower" => {
            let size = n.unwrap_or(1024);
            generate::touching_carved_tower(8, rows_for(size, 8), args.seed)
        }
        name => generate::named(name, n),
    }
    .map_err(|e| e.to_string())?;

    let text = write_graph(&result.0, Some(&result.1));
    match args.output {
        Some(path) => fs::write(&path, text)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(EXIT_OK)
}

fn rows_for(n: usize, c: usize) -> usize {
    ((n.saturating_sub(2)) / c).max(2)
}

fn parse_size(token: &str) -> Result<usize, String> {
    let t = token.trim().to_lowercase();
    let (num, mult) = if let Some(stripped) = t.strip_suffix('k') {
        (stripped, 1024usize)
    } else if let Some(stripped) = t.strip_suffix('m') {
        (stripped, 1024 * 1024)
    } else {
        (t.as_str(), 1)
    };
    num.parse::<usize>()
        .map(|v| v * mult)
        .map_err(|_| format!("bad size `{token}`"))
}

/// Keeps large freed buffers in the heap instead of returning them to the
/// kernel, so repeated timed runs touch warm pages. Only affects this
/// process; a no-op off glibc.
pub fn retain_large_allocations() {
    #[cfg(all(target_os = "linux", target_env = "gnu"))]
    unsafe {
        libc::mallopt(libc::M_MMAP_THRESHOLD, 1 << 30);
    }
}

fn run_bench(args: BenchArgs) -> Result<i32, String> {
    if args.family != "carved-tower" {
        return Err("bench supports --family carved-tower".into());
    }
    retain_large_allocations();
    if args.sizes.is_empty() {
        return Err("bench needs --sizes".into());
    }
    let reps = args.reps.max(5);
    let mut sizes = Vec::new();
    for s in &args.sizes {
        sizes.push(parse_size(s)?);
    }

    if sizes.len() > 1 {
        println!("n,ms,ratio");
    } else {
        println!("n,ms");
    }
    let mut prev: Option<f64> = None;
    for &size in &sizes {
        let c = 8;
        let (g, rot) = generate::carved_tower(c, rows_for(size, c), args.faces, args.seed)
            .map_err(|e| e.to_string())?;
        let opts = PipelineOptions {
            validate: false,
            self_verify: false,
        };
        // two warmup runs, then time single runs: batching would amortize
        // allocator costs unevenly across sizes and skew the ratios
        for _ in 0..2 {
            std::hint::black_box(min_disc_cut(&g, Some(&rot), opts).map_err(|e| e.to_string())?);
        }
        let mut samples = Vec::with_capacity(reps);
        for _ in 0..reps {
            let t = Instant::now();
            let out = min_disc_cut(&g, Some(&rot), opts).map_err(|e| e.to_string())?;
            std::hint::black_box(&out);
            samples.push(t.elapsed().as_secs_f64());
        }
        samples.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let median = samples[samples.len() / 2];
        let ms = median * 1e3;
        match prev {
            Some(p) if p > 0.0 => println!("{},{:.3},{:.2}", g.n(), ms, median / p),
            _ if sizes.len() > 1 => println!("{},{:.3},", g.n(), ms),
            _ => println!("{},{:.3}", g.n(), ms),
        }
        prev = Some(median);
    }
    Ok(EXIT_OK)
}
