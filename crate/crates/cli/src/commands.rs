use std::fmt::Display;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use clusterforge::cluster::{enumerate_clusters_to_depth, EnumerationStatus, Seed};
use clusterforge::gfan::{
    build_gfan_to_depth, contains_point, density_estimate, is_complete, Completeness, FanStatus, Membership,
};
use clusterforge::qp::{jacobian_dim_truncated, qp_mutate, DimVerdict};
use clusterforge::quiver::{classify, mutation_class, ClassStatus, Classification, DEFAULT_MAX_WEIGHT};
use clusterforge::surface::{
    laminate_of_vector, verify_arc_gvector_correspondence, Lamination, MarkedSurface, TaggedTriangulation,
};
use clusterforge::{Quiver, Rational, RationalQp, Scalar};
use serde_json::json;

pub const EXIT_OK: u8 = 0;
pub const EXIT_DOMAIN: u8 = 1;
pub const EXIT_UNDECIDED: u8 = 2;
pub const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "clusterforge",
    version,
    about = "Exact quiver mutation, cluster algebras, g-vector fans and surfaces"
)]
pub struct Cli {
    /// Print machine-readable JSON on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Mutate a quiver at a sequence of vertices (1-based).
    Mutate {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        at: Vec<usize>,
    },
    /// Enumerate the mutation class up to isomorphism.
    Class {
        file: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        max: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_WEIGHT)]
        max_weight: u32,
    },
    /// Name the mutation type of a quiver.
    Classify {
        file: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
    },
    /// Mutate a quiver with potential (`.qp` JSON) at a sequence of vertices.
    QpMutate {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        at: Vec<usize>,
    },
    /// Dimensions of the truncated Jacobian algebra.
    JacobianDim {
        file: PathBuf,
        #[arg(long, default_value_t = 12)]
        bound: usize,
    },
    /// Cluster variables with their g-vectors.
    ClusterVars {
        file: PathBuf,
        #[arg(long, default_value_t = 10)]
        depth: usize,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
    },
    /// The g-vector fan as `.fan` JSON.
    Gfan {
        file: PathBuf,
        #[arg(long, default_value_t = 10)]
        depth: usize,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
    },
    /// Decide whether the g-vector fan is complete.
    CheckComplete {
        file: PathBuf,
        #[arg(long, default_value_t = 10)]
        depth: usize,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
    },
    /// Estimate the fraction of integer points covered by the fan.
    CheckDense {
        file: PathBuf,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 30)]
        depth: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0.999)]
        threshold: f64,
    },
    /// Search for a cone of the fan containing a rational point.
    Contains {
        file: PathBuf,
        /// Comma-separated coordinates such as `1,-2/3`.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = 50)]
        depth: usize,
    },
    /// Arcs, triangulations and laminations on marked surfaces.
    Surface {
        #[command(subcommand)]
        command: SurfaceCommand,
    },
    /// Check that arcs and cluster variables match along flips.
    Verify {
        /// A triangulation in `.surf` JSON.
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Serve the JSON API.
    Serve {
        #[arg(long, default_value = "127.0.0.1:8080")]
        addr: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum SurfaceCommand {
    /// List the tagged arcs of `disc:M`, `punctured-disc:M` or `annulus:P,Q`.
    Arcs {
        #[arg(long)]
        surface: String,
        #[arg(long, default_value_t = 6)]
        winding: i64,
    },
    /// A standard triangulation, or the zigzag one of a disc.
    Triangulate {
        #[arg(long)]
        surface: String,
        #[arg(long)]
        snake: bool,
    },
    Flip {
        file: PathBuf,
        #[arg(long)]
        at: usize,
    },
    Quiver {
        file: PathBuf,
    },
    /// Shear coordinates of a lamination, or a lamination with given coordinates.
    Shear {
        file: PathBuf,
        #[arg(long, conflicts_with = "vector", required_unless_present = "vector")]
        lamination: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        vector: Option<String>,
    },
}

/// Text for stdout and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub message: String,
    pub code: u8,
}

impl Failure {
    fn domain(e: impl Display) -> Failure {
        Failure { message: e.to_string(), code: EXIT_DOMAIN }
    }

    fn usage(e: impl Display) -> Failure {
        Failure { message: e.to_string(), code: EXIT_USAGE }
    }
}

fn ok(stdout: String) -> Result<Outcome, Failure> {
    Ok(Outcome { stdout, code: EXIT_OK })
}

fn with_code(stdout: String, code: u8) -> Result<Outcome, Failure> {
    Ok(Outcome { stdout, code })
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::domain(format!("{}: {e}", path.display())))
}

fn load_quiver(path: &Path) -> Result<Quiver, Failure> {
    Quiver::parse_any(&read(path)?).map_err(Failure::domain)
}

fn load_triangulation(path: &Path) -> Result<TaggedTriangulation, Failure> {
    serde_json::from_str(&read(path)?).map_err(Failure::domain)
}

fn zero_based(at: &[usize], n: usize) -> Result<Vec<usize>, Failure> {
    at.iter()
        .map(|&k| {
            if (1..=n).contains(&k) {
                Ok(k - 1)
            } else {
                Err(Failure::usage(format!("vertex {k} is not in 1..={n}")))
            }
        })
        .collect()
}

fn pretty(v: &serde_json::Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(v).expect("json"))
}

fn tuple<T: Display>(v: &[T]) -> String {
    format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

pub fn parse_surface(s: &str) -> Result<MarkedSurface, Failure> {
    let (family, args) = s.split_once(':').ok_or_else(|| Failure::usage(format!("expected FAMILY:ARGS, got {s:?}")))?;
    let nums: Vec<usize> = args
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| Failure::usage(format!("bad number in {s:?}"))))
        .collect::<Result<_, _>>()?;
    let surface = match (family, nums.as_slice()) {
        ("disc", [m]) => MarkedSurface::disc(*m),
        ("punctured-disc", [m]) => MarkedSurface::punctured_disc(*m),
        ("annulus", [p, q]) => MarkedSurface::annulus(*p, *q),
        _ => return Err(Failure::usage(format!("unknown surface {s:?}"))),
    };
    surface.map_err(Failure::domain)
}

fn parse_ints(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',').map(|t| t.trim().parse().map_err(|_| Failure::usage(format!("bad integer {t:?}")))).collect()
}

pub fn parse_point(s: &str) -> Result<Vec<Rational>, Failure> {
    s.split(',').map(|t| Rational::parse(t).ok_or_else(|| Failure::usage(format!("bad rational {t:?}")))).collect()
}

/// Runs every subcommand except `serve`.
pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let json = cli.json;
    match &cli.command {
        Command::Mutate { file, at } => {
            let q = load_quiver(file)?;
            let path = zero_based(at, q.n())?;
            let r = q.mutate_path(&path).map_err(Failure::domain)?;
            ok(if json { format!("{}\n", r.to_json()) } else { r.to_text() })
        }
        Command::Class { file, max, max_weight } => {
            let q = load_quiver(file)?;
            let r = mutation_class(&q, *max, *max_weight);
            let code = if r.status == ClassStatus::BudgetExceeded { EXIT_UNDECIDED } else { EXIT_OK };
            let out = if json {
                pretty(&json!({
                    "size": r.len(),
                    "status": r.status,
                    "representatives": r.representatives.iter().map(|q| q.to_json_value()).collect::<Vec<_>>(),
                }))
            } else {
                format!("size: {}\nstatus: {:?}\n", r.len(), r.status)
            };
            with_code(out, code)
        }
        Command::Classify { file, budget } => {
            let c = classify(&load_quiver(file)?, *budget).map_err(Failure::domain)?;
            let code = if c == Classification::Unknown { EXIT_UNDECIDED } else { EXIT_OK };
            with_code(if json { pretty(&json!({ "verdict": c.to_string() })) } else { format!("{c}\n") }, code)
        }
        Command::QpMutate { file, at } => {
            let mut qp = RationalQp::from_json(&read(file)?).map_err(Failure::domain)?;
            for k in zero_based(at, qp.quiver().n())? {
                qp = qp_mutate(&qp, k).map_err(Failure::domain)?;
            }
            ok(format!("{}\n", qp.to_json()))
        }
        Command::JacobianDim { file, bound } => {
            let qp = RationalQp::from_json(&read(file)?).map_err(Failure::domain)?;
            let p = jacobian_dim_truncated(&qp, *bound);
            let code = if p.verdict == DimVerdict::GrowingAtBound { EXIT_UNDECIDED } else { EXIT_OK };
            let out = if json {
                pretty(&json!(p))
            } else {
                format!(
                    "dims: {}\nverdict: {:?}\n",
                    p.dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" "),
                    p.verdict
                )
            };
            with_code(out, code)
        }
        Command::ClusterVars { file, depth, budget } => cluster_vars(&load_quiver(file)?, *depth, *budget, json),
        Command::Gfan { file, depth, budget } => {
            let f = build_gfan_to_depth(&load_quiver(file)?, *budget, *depth);
            let code = if f.status() == FanStatus::Exhausted { EXIT_OK } else { EXIT_UNDECIDED };
            let out = if json {
                format!("{}\n", f.to_json())
            } else {
                format!("rays: {}\ncones: {}\nstatus: {:?}\n", f.rays().len(), f.cone_indices().len(), f.status())
            };
            with_code(out, code)
        }
        Command::CheckComplete { file, depth, budget } => {
            let f = build_gfan_to_depth(&load_quiver(file)?, *budget, *depth);
            let c = is_complete(&f);
            let code = match c {
                Completeness::Complete => EXIT_OK,
                Completeness::Unknown => EXIT_UNDECIDED,
                Completeness::Incomplete { .. } | Completeness::Invalid(_) => EXIT_DOMAIN,
            };
            let out = if json {
                pretty(&json!({ "verdict": c }))
            } else {
                match &c {
                    Completeness::Complete => "complete\n".to_string(),
                    Completeness::Incomplete { witness } => format!("incomplete: {} lies in no cone\n", tuple(witness)),
                    Completeness::Unknown => format!("unknown: fan truncated ({:?})\n", f.status()),
                    Completeness::Invalid(e) => format!("invalid fan: {e}\n"),
                }
            };
            with_code(out, code)
        }
        Command::CheckDense { file, samples, depth, seed, threshold } => {
            let d = density_estimate(&load_quiver(file)?, *samples, *depth, *seed).map_err(Failure::domain)?;
            let code = if d >= *threshold { EXIT_OK } else { EXIT_UNDECIDED };
            let out = if json {
                pretty(
                    &json!({ "fraction": d, "samples": samples, "depth": depth, "seed": seed, "threshold": threshold }),
                )
            } else {
                format!("fraction: {d:.4}\n")
            };
            with_code(out, code)
        }
        Command::Contains { file, point, depth } => {
            let q = load_quiver(file)?;
            let v = parse_point(point)?;
            match contains_point(&q, &v, *depth).map_err(Failure::domain)? {
                Membership::InCone { history, coordinates } => {
                    let h: Vec<usize> = history.iter().map(|k| k + 1).collect();
                    let c: Vec<String> = coordinates.iter().map(|c| c.to_string()).collect();
                    let out = if json {
                        pretty(&json!({ "verdict": "InCone", "history": h, "coordinates": c }))
                    } else {
                        format!("in cone after mutations {}\ncoordinates: {}\n", tuple(&h), tuple(&c))
                    };
                    ok(out)
                }
                Membership::NotFoundWithin(d) => {
                    let out = if json {
                        pretty(&json!({ "verdict": "NotFoundWithin", "depth": d }))
                    } else {
                        format!("not found within {d} mutations\n")
                    };
                    with_code(out, EXIT_UNDECIDED)
                }
            }
        }
        Command::Surface { command } => surface(command, json),
        Command::Verify { file, depth } => {
            let t = load_triangulation(file)?;
            let r = verify_arc_gvector_correspondence(&t, *depth).map_err(Failure::domain)?;
            let code = if r.ok() { EXIT_OK } else { EXIT_DOMAIN };
            let out = if json {
                pretty(&json!(r))
            } else {
                format!(
                    "triangulations: {}\narcs: {}\nquiver mismatches: {}\ng-vector mismatches: {}\ninconsistencies: {}\nexhausted: {}\n",
                    r.triangulations, r.arcs, r.quiver_mismatches, r.gvector_mismatches, r.inconsistencies, r.exhausted
                )
            };
            with_code(out, code)
        }
        Command::Serve { .. } => Err(Failure::usage("serve runs from the binary")),
    }
}

fn cluster_vars(q: &Quiver, depth: usize, budget: usize, json: bool) -> Result<Outcome, Failure> {
    let e = enumerate_clusters_to_depth(q, budget, depth);
    let mut seen = std::collections::BTreeMap::new();
    for c in &e.clusters {
        for (i, g) in c.gmatrix.iter().enumerate() {
            seen.entry(g.clone()).or_insert((c.history.clone(), i));
        }
    }
    let mut vars = Vec::new();
    for (g, (history, i)) in &seen {
        let seed = Seed::<Rational>::initial(q).mutate_path(history).map_err(Failure::domain)?;
        vars.push((g.clone(), seed.cluster()[*i].clone()));
    }
    let code = if e.status == EnumerationStatus::Exhausted { EXIT_OK } else { EXIT_UNDECIDED };
    let out = if json {
        pretty(&json!({
            "status": e.status,
            "variables": vars.iter().map(|(g, p)| json!({ "g": g, "laurent": p.to_json_value() })).collect::<Vec<_>>(),
        }))
    } else {
        let mut s: String = vars.iter().map(|(g, p)| format!("{}  {}\n", tuple(g), p)).collect();
        s.push_str(&format!("status: {:?}\n", e.status));
        s
    };
    with_code(out, code)
}

fn surface(command: &SurfaceCommand, json: bool) -> Result<Outcome, Failure> {
    match command {
        SurfaceCommand::Arcs { surface, winding } => {
            let s = parse_surface(surface)?;
            ok(pretty(&json!(s.enumerate_tagged_arcs(*winding))))
        }
        SurfaceCommand::Triangulate { surface, snake } => {
            let s = parse_surface(surface)?;
            let t = match (snake, s) {
                (false, _) => TaggedTriangulation::standard(s),
                (true, MarkedSurface::Disc { marks }) => TaggedTriangulation::snake(marks),
                (true, _) => return Err(Failure::usage("--snake needs a disc")),
            };
            ok(pretty(&json!(t.map_err(Failure::domain)?)))
        }
        SurfaceCommand::Flip { file, at } => {
            let t = load_triangulation(file)?;
            let k = zero_based(&[*at], t.arcs().len())?[0];
            ok(pretty(&json!(t.flip_at(k).map_err(Failure::domain)?)))
        }
        SurfaceCommand::Quiver { file } => {
            let q = load_triangulation(file)?.quiver();
            ok(if json { format!("{}\n", q.to_json()) } else { q.to_text() })
        }
        SurfaceCommand::Shear { file, lamination, vector } => {
            let t = load_triangulation(file)?;
            if let Some(v) = vector {
                let l = laminate_of_vector(&t, &parse_ints(v)?).map_err(Failure::domain)?;
                return ok(pretty(&json!(l)));
            }
            let path = lamination.as_ref().expect("clap requires one of the two");
            let l: Lamination = serde_json::from_str(&read(path)?).map_err(Failure::domain)?;
            if !l.is_compatible(&t.surface()).map_err(Failure::domain)? {
                return Err(Failure::domain("laminates are not pairwise compatible"));
            }
            let v = l.shear_coordinates(&t).map_err(Failure::domain)?;
            ok(if json { format!("{}\n", json!(v)) } else { format!("{}\n", tuple(&v)) })
        }
    }
}
