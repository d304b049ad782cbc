//! Command-line entry point: build cusped spaces, estimate hyperbolicity
//! constants, validate and develop complexes of groups, and compute the
//! glued boundary skeleton, end to end from JSON inputs or bundled examples.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use relhyp::boundary::{self, ParabolicPoint, PeripheralAssignment};
use relhyp::cog::{self, ComplexOfGroups};
use relhyp::delta::{self, DeltaMethod};
use relhyp::development::{build_development, verify_action, Development};
use relhyp::error::{Error, Result};
use relhyp::graph::LabeledGraph;
use relhyp::io;
use relhyp::{cusped, examples};

#[derive(Parser)]
#[command(
    name = "relhyp",
    version,
    about = "Finite-truncation toolkit for cusped spaces, complexes of groups, \
             developments, and glued boundary skeletons"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
    Graphml,
}

#[derive(Subcommand)]
enum Command {
    /// Build a truncated cusped space from a spec file or bundled example
    BuildCusped {
        /// cusped-space spec JSON (group, peripherals, radius, depth)
        #[arg(long, conflicts_with = "example")]
        spec: Option<PathBuf>,
        /// bundled example name (e.g. zz-horoball)
        #[arg(long)]
        example: Option<String>,
        /// override the Cayley-ball radius
        #[arg(long)]
        radius: Option<usize>,
        /// override the horoball depth
        #[arg(long)]
        depth: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Four-point hyperbolicity estimate on a graph or cusped space
    EstimateDelta {
        /// graph JSON (vertices/edges) to measure directly
        #[arg(long, conflicts_with_all = ["spec", "example"])]
        graph: Option<PathBuf>,
        /// cusped-space spec JSON; the space is built first
        #[arg(long, conflicts_with = "example")]
        spec: Option<PathBuf>,
        /// bundled example name (e.g. zz-horoball)
        #[arg(long)]
        example: Option<String>,
        /// sample this many quadruples instead of exhausting them
        #[arg(long)]
        sample: Option<usize>,
        /// RNG seed, required with --sample
        #[arg(long, requires = "sample")]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the cocycle identities of a complex of groups
    ValidateCog {
        #[arg(long, conflicts_with = "example")]
        cog: Option<PathBuf>,
        #[arg(long)]
        example: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fundamental-group presentation of a complex of groups
    Present {
        #[arg(long, conflicts_with = "example")]
        cog: Option<PathBuf>,
        #[arg(long)]
        example: Option<String>,
        /// apply Tietze simplification before printing
        #[arg(long)]
        tietze: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the development (universal cover) up to a truncation bound
    Develop {
        #[arg(long, conflicts_with = "example")]
        cog: Option<PathBuf>,
        #[arg(long)]
        example: Option<String>,
        /// truncation: maximum coset-representative length
        #[arg(long, default_value_t = 4)]
        bound: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Verify the fundamental-group action on a development
    VerifyAction {
        #[arg(long, conflicts_with = "example")]
        cog: Option<PathBuf>,
        #[arg(long)]
        example: Option<String>,
        #[arg(long, default_value_t = 4)]
        bound: usize,
        /// group-ball depth used when scanning for stabilizer elements
        #[arg(long, default_value_t = 4)]
        scan_depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Domain (fixed subcomplex) of a parabolic point
    Domains {
        /// development file written by `develop --format json`
        #[arg(long)]
        dev: PathBuf,
        /// peripheral assignment JSON
        #[arg(long)]
        assign: PathBuf,
        /// parabolic point as object:peripheralIdx:cosetWord
        /// (cosetWord is comma-separated signed letters, empty for identity)
        #[arg(long)]
        point: String,
        /// declared diameter bound
        #[arg(long, default_value_t = 2)]
        a: usize,
        /// declared simplex-count bound
        #[arg(long, default_value_t = 12)]
        dmax: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gluing classes of parabolic labels across the development
    Glue {
        #[arg(long)]
        dev: PathBuf,
        #[arg(long)]
        assign: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that local boundaries inject into the glued boundary
    EmbedCheck {
        #[arg(long)]
        dev: PathBuf,
        #[arg(long)]
        assign: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Plot-ready radial layout of a tree development
    TreeOfCircles {
        #[arg(long)]
        dev: PathBuf,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full pipeline on a bundled example, writing all artifacts
    Example {
        /// one of: genus2, amalgam-4-2-6, theta-free, zz-horoball
        name: String,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        /// truncation bound for the development
        #[arg(long, default_value_t = 4)]
        bound: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// directory for dev.json / classes.json / toc.json
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

fn main() -> ExitCode {
    // usage errors exit 1; exit 2 is reserved for validation failures
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn load_cog(path: &Option<PathBuf>, example: &Option<String>) -> Result<(io::CogJson, ComplexOfGroups)> {
    let text = match (path, example) {
        (Some(p), _) => std::fs::read_to_string(p)?,
        (None, Some(name)) => match name.as_str() {
            "genus2" => examples::GENUS2_COG.to_string(),
            "amalgam-4-2-6" => examples::AMALGAM_4_2_6_COG.to_string(),
            "theta-free" => examples::THETA_FREE_COG.to_string(),
            other => {
                return Err(Error::Invalid(format!(
                    "no bundled complex of groups named `{other}`"
                )))
            }
        },
        (None, None) => {
            return Err(Error::Invalid(
                "pass --cog FILE or --example NAME".into(),
            ))
        }
    };
    let j: io::CogJson = serde_json::from_str(&text)?;
    let cog = j.to_cog()?;
    Ok((j, cog))
}

/// dev.json records its inputs; consumers rebuild the development
/// deterministically instead of trusting serialized state.
fn dev_file(cog_json: &io::CogJson, dev: &Development) -> serde_json::Value {
    serde_json::json!({
        "schema_version": 1,
        "input": cog_json,
        "truncation": dev.truncation,
        "development": dev.to_json(),
    })
}

fn load_dev(path: &PathBuf) -> Result<(io::CogJson, Development)> {
    let text = std::fs::read_to_string(path)?;
    let v: serde_json::Value = serde_json::from_str(&text)?;
    let input = v
        .get("input")
        .ok_or_else(|| Error::Invalid("dev file missing `input`".into()))?;
    let truncation = v
        .get("truncation")
        .and_then(|t| t.as_u64())
        .ok_or_else(|| Error::Invalid("dev file missing `truncation`".into()))?
        as usize;
    let j: io::CogJson = serde_json::from_value(input.clone())?;
    let cog = j.to_cog()?;
    let dev = build_development(&cog, truncation)?;
    Ok((j, dev))
}

fn parse_point(s: &str) -> Result<ParabolicPoint> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 2 && parts.len() != 3 {
        return Err(Error::Invalid(
            "point must be object:peripheralIdx[:cosetWord]".into(),
        ));
    }
    let object = parts[0]
        .parse()
        .map_err(|_| Error::Invalid("bad object index in --point".into()))?;
    let peripheral = parts[1]
        .parse()
        .map_err(|_| Error::Invalid("bad peripheral index in --point".into()))?;
    let coset = if parts.len() == 3 && !parts[2].is_empty() {
        parts[2]
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i32>()
                    .map_err(|_| Error::Invalid("bad coset letter in --point".into()))
            })
            .collect::<Result<Vec<i32>>>()?
    } else {
        Vec::new()
    };
    Ok(ParabolicPoint {
        object,
        peripheral,
        coset,
    })
}

fn load_assignment(path: &PathBuf) -> Result<PeripheralAssignment> {
    let text = std::fs::read_to_string(path)?;
    io::assignment_from_json_str(&text)
}

fn graph_output(g: &LabeledGraph, format: Format) -> String {
    match format {
        Format::Json => io::to_canonical_string(&g.to_json()),
        Format::Dot => g.to_dot(),
        Format::Graphml => g.to_graphml(),
    }
}

const PASS: ExitCode = ExitCode::SUCCESS;

fn fail() -> ExitCode {
    ExitCode::from(2)
}

fn run(cmd: Command) -> Result<ExitCode> {
    match cmd {
        Command::BuildCusped {
            spec,
            example,
            radius,
            depth,
            out,
            format,
        } => {
            let spec_json = match (&spec, &example) {
                (Some(p), _) => io::cusped_from_json_str(&std::fs::read_to_string(p)?)?,
                (None, Some(name)) => examples::cusped(name)?,
                (None, None) => {
                    return Err(Error::Invalid("pass --spec FILE or --example NAME".into()))
                }
            };
            let g = spec_json.group.to_spec();
            let space = cusped::build_cusped(
                &g,
                &spec_json.peripheral_specs(),
                radius.unwrap_or(spec_json.radius),
                depth.unwrap_or(spec_json.depth),
            )?;
            emit(&out, &graph_output(&space.graph, format))?;
            eprintln!(
                "cusped space: {} vertices, {} edges, {} horoballs",
                space.graph.num_vertices(),
                space.graph.num_edges(),
                space.coset_index.len()
            );
            Ok(PASS)
        }
        Command::EstimateDelta {
            graph,
            spec,
            example,
            sample,
            seed,
            out,
        } => {
            let g = if let Some(p) = graph {
                LabeledGraph::from_json(&serde_json::from_str(&std::fs::read_to_string(p)?)?)?
            } else {
                let spec_json = match (&spec, &example) {
                    (Some(p), _) => io::cusped_from_json_str(&std::fs::read_to_string(p)?)?,
                    (None, Some(name)) => examples::cusped(name)?,
                    (None, None) => {
                        return Err(Error::Invalid(
                            "pass --graph FILE, --spec FILE, or --example NAME".into(),
                        ))
                    }
                };
                let gs = spec_json.group.to_spec();
                cusped::build_cusped(
                    &gs,
                    &spec_json.peripheral_specs(),
                    spec_json.radius,
                    spec_json.depth,
                )?
                .graph
            };
            let method = match sample {
                Some(count) => DeltaMethod::Sampled {
                    seed: seed.expect("clap enforces --seed with --sample"),
                    count,
                },
                None => DeltaMethod::Exhaustive,
            };
            let report = delta::estimate_delta_four_point(&g, method, usize::MAX)?;
            let j = serde_json::json!({
                "schema_version": 1,
                "delta": report.delta(),
                "delta_doubled": report.delta_doubled,
                "witness": report.witness,
            });
            emit(&out, &io::to_canonical_string(&j))?;
            println!("delta {}", report.delta());
            Ok(PASS)
        }
        Command::ValidateCog { cog, example, out } => {
            let (_, c) = load_cog(&cog, &example)?;
            let report = cog::validate_cocycles(&c)?;
            emit(&out, &io::to_canonical_string(&report.to_json()))?;
            if report.valid() {
                println!("PASS");
                Ok(PASS)
            } else {
                println!("FAIL");
                Ok(fail())
            }
        }
        Command::Present {
            cog,
            example,
            tietze,
            out,
        } => {
            let (_, c) = load_cog(&cog, &example)?;
            let mut pres = cog::fundamental_group_presentation(&c)?;
            if tietze {
                pres = pres.tietze_reduce();
            }
            emit(&out, &io::to_canonical_string(&pres.to_json()))?;
            Ok(PASS)
        }
        Command::Develop {
            cog,
            example,
            bound,
            out,
            format,
        } => {
            let (j, c) = load_cog(&cog, &example)?;
            let dev = build_development(&c, bound)?;
            match format {
                Format::Json => emit(&out, &io::to_canonical_string(&dev_file(&j, &dev)))?,
                Format::Dot => emit(&out, &dev.to_dot())?,
                Format::Graphml => {
                    return Err(Error::Invalid(
                        "graphml export is for cusped spaces; use json or dot here".into(),
                    ))
                }
            }
            eprintln!(
                "development: {} objects, {} arrows, truncation {}",
                dev.objects.len(),
                dev.arrows.len(),
                dev.truncation
            );
            Ok(PASS)
        }
        Command::VerifyAction {
            cog,
            example,
            bound,
            scan_depth,
            out,
        } => {
            let (_, c) = load_cog(&cog, &example)?;
            let dev = build_development(&c, bound)?;
            let report = verify_action(&dev, scan_depth)?;
            emit(&out, &io::to_canonical_string(&report.to_json()))?;
            if report.passed() {
                println!("PASS");
                Ok(PASS)
            } else {
                println!("FAIL");
                Ok(fail())
            }
        }
        Command::Domains {
            dev,
            assign,
            point,
            a,
            dmax,
            out,
        } => {
            let (_, d) = load_dev(&dev)?;
            let pa = load_assignment(&assign)?;
            let pt = parse_point(&point)?;
            let dom = boundary::compute_domain(&d, &pa, &pt, a, dmax)?;
            emit(&out, &io::to_canonical_string(&dom.to_json()))?;
            let ok = dom.within_bound && dom.count_ok && dom.connected && dom.convex;
            println!("{}", if ok { "PASS" } else { "FAIL" });
            Ok(if ok { PASS } else { fail() })
        }
        Command::Glue { dev, assign, out } => {
            let (_, d) = load_dev(&dev)?;
            let pa = load_assignment(&assign)?;
            let classes = boundary::glue_boundary_classes(&d, &pa)?;
            let j = serde_json::json!({
                "schema_version": 1,
                "classes": classes,
            });
            emit(&out, &io::to_canonical_string(&j))?;
            eprintln!("{} gluing classes", classes.len());
            Ok(PASS)
        }
        Command::EmbedCheck { dev, assign, out } => {
            let (_, d) = load_dev(&dev)?;
            let pa = load_assignment(&assign)?;
            let classes = boundary::glue_boundary_classes(&d, &pa)?;
            let report = boundary::boundaries_embed_check(&classes);
            let j = serde_json::json!({
                "schema_version": 1,
                "pass": report.pass,
                "violations": report.violations,
            });
            emit(&out, &io::to_canonical_string(&j))?;
            println!("{}", if report.pass { "PASS" } else { "FAIL" });
            Ok(if report.pass { PASS } else { fail() })
        }
        Command::TreeOfCircles {
            dev,
            depth,
            seed,
            out,
        } => {
            let (_, d) = load_dev(&dev)?;
            let toc = boundary::tree_of_circles(&d, depth, seed)?;
            emit(&out, &io::to_canonical_string(&toc.to_json()))?;
            Ok(PASS)
        }
        Command::Example {
            name,
            depth,
            bound,
            seed,
            out_dir,
        } => run_example(&name, depth, bound, seed, &out_dir),
    }
}

fn run_example(
    name: &str,
    depth: usize,
    bound: usize,
    seed: u64,
    out_dir: &PathBuf,
) -> Result<ExitCode> {
    std::fs::create_dir_all(out_dir)?;
    if name == "zz-horoball" {
        let spec_json = examples::cusped(name)?;
        let g = spec_json.group.to_spec();
        let space = cusped::build_cusped(
            &g,
            &spec_json.peripheral_specs(),
            spec_json.radius,
            spec_json.depth,
        )?;
        std::fs::write(
            out_dir.join("cusped.json"),
            io::to_canonical_string(&space.graph.to_json()),
        )?;
        let report = delta::estimate_delta_four_point(&space.graph, DeltaMethod::Exhaustive, usize::MAX)?;
        println!("cusped space written; delta {}", report.delta());
        return Ok(PASS);
    }
    let text = match name {
        "genus2" => examples::GENUS2_COG,
        "amalgam-4-2-6" => examples::AMALGAM_4_2_6_COG,
        "theta-free" => examples::THETA_FREE_COG,
        other => return Err(Error::Invalid(format!("no bundled example named `{other}`"))),
    };
    let j: io::CogJson = serde_json::from_str(text)?;
    let c = j.to_cog()?;
    let report = cog::validate_cocycles(&c)?;
    if !report.valid() {
        println!("FAIL (cocycles)");
        return Ok(fail());
    }
    let dev = build_development(&c, bound)?;
    std::fs::write(
        out_dir.join("dev.json"),
        io::to_canonical_string(&dev_file(&j, &dev)),
    )?;
    if let Ok(pa) = examples::assignment(name) {
        let classes = boundary::glue_boundary_classes(&dev, &pa)?;
        std::fs::write(
            out_dir.join("classes.json"),
            io::to_canonical_string(&serde_json::json!({
                "schema_version": 1,
                "classes": classes,
            })),
        )?;
        let embed = boundary::boundaries_embed_check(&classes);
        if dev.is_tree() {
            let toc = boundary::tree_of_circles(&dev, depth, seed)?;
            std::fs::write(out_dir.join("toc.json"), io::to_canonical_string(&toc.to_json()))?;
        }
        println!("{}", if embed.pass { "embed-check PASS" } else { "embed-check FAIL" });
        return Ok(if embed.pass { PASS } else { fail() });
    }
    if dev.is_tree() {
        let toc = boundary::tree_of_circles(&dev, depth, seed)?;
        std::fs::write(out_dir.join("toc.json"), io::to_canonical_string(&toc.to_json()))?;
    }
    println!("PASS");
    Ok(PASS)
}
