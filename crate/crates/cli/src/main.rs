//! `foldcx` command-line front end.
//!
//! Exit status: 0 on success, 1 when a check or verification comes out
//! negative, 2 on malformed input, unusable arguments or an exhausted budget.

use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use foldcx::budget::Budgets;
use foldcx::io::{from_json, to_dot, to_json};
use foldcx::topology::{certify_contractible, homology};
use foldcx::verify::{
    check_lemma_coupling, check_lemma_edge_identification, check_lemma_vertex_identification,
    enumerate_immersions, verify_main_theorem, EnumerationFilter, VerificationReport,
};
use foldcx::{
    classify, couple, fold, identify_edges, identify_vertices, immersion_witness, isomorphic,
    parse_presentation, presentation_complex, FamilyTag, Morphism,
};

const DEFAULT_SEED: u64 = 0x5eed;
const BUDGET_ENV: &str = "FOLDCX_BUDGET";

#[derive(Parser)]
#[command(
    name = "foldcx",
    version,
    about = "Folding, families and verification for 2-complexes over presentation complexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Write the primary output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Emit reports and summaries as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for enumeration and verification.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed recorded in reports; no current command draws random numbers.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Presentation complex of a presentation such as `a,b|b,baBAA`.
    Build { presentation: String },
    /// Family member such as `D:3`, `Dt:2`, `C:5` or `Ct:7`.
    Family { spec: String },
    /// Euler characteristic.
    Chi { file: PathBuf },
    /// Average curvature χ / #faces as an exact fraction.
    Kappa { file: PathBuf },
    /// Exit 1 with a witness unless the map is an immersion.
    CheckImmersion { file: PathBuf },
    /// Edges occurring exactly once among the face boundaries.
    FreeFaces { file: PathBuf },
    /// Remove a free edge together with its face.
    Collapse {
        file: PathBuf,
        #[arg(long)]
        edge: String,
    },
    /// Fold to an immersion.
    Fold {
        file: PathBuf,
        /// Write the merge trace as JSON lines.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Glue one face along an edge and fold.
    Couple {
        file: PathBuf,
        /// Relator index, as in the `type` field of faces.
        #[arg(long = "type")]
        face_type: usize,
        /// Position in the relator matched to the edge.
        #[arg(long)]
        pos: usize,
        #[arg(long)]
        edge: String,
    },
    IdentifyVertices {
        file: PathBuf,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    IdentifyEdges {
        file: PathBuf,
        #[arg(long)]
        e1: String,
        #[arg(long)]
        e2: String,
    },
    /// Exit 1 unless the two maps are isomorphic over their target.
    Iso { first: PathBuf, second: PathBuf },
    /// Name the complex if it is a `D`/`C` family member.
    Classify { file: PathBuf },
    /// Integral homology.
    Homology { file: PathBuf },
    /// Contractibility certificate; exit 1 unless contractible.
    Certify { file: PathBuf },
    /// Immersions into `⟨a,b | b, baBAA⟩` up to isomorphism.
    Enumerate(EnumerateArgs),
    /// Run one of the family lemma checkers.
    VerifyLemma {
        lemma: Lemma,
        #[arg(long)]
        max_i: usize,
    },
    /// Exhaustive check that closed immersions have χ ≤ 0 or are contractible.
    VerifyTheorem {
        #[arg(long)]
        max_vertices: usize,
    },
    /// Graphviz rendering of the 1-skeleton.
    ExportDot { file: PathBuf },
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    max_vertices: usize,
    /// Keep only connected complexes.
    #[arg(long)]
    connected: bool,
    /// Keep only complexes without free faces.
    #[arg(long)]
    closed: bool,
    /// Exact set of face types present, as relator indices (`0,1`).
    #[arg(long, value_delimiter = ',')]
    types: Option<Vec<usize>>,
    /// Write every class as a complex file into this directory.
    #[arg(long)]
    dir: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Lemma {
    #[value(name = "2.2", alias = "vertex")]
    Vertex,
    #[value(name = "2.4", alias = "edge")]
    Edge,
    #[value(name = "2.5", alias = "coupling")]
    Coupling,
}

/// A command either succeeds or reports a negative answer.
enum Status {
    Ok,
    Negative,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Negative) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<Status> {
    let g = &cli.global;
    if let Some(n) = g.jobs {
        if n == 0 {
            bail!("--jobs must be positive");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()?;
    }
    let budgets = budgets()?;
    match &cli.command {
        Command::Build { presentation } => {
            let p = parse_presentation(presentation)?;
            emit(g, &to_json(&presentation_complex(&p))?)?;
        }
        Command::Family { spec } => {
            let tag: FamilyTag = spec.parse()?;
            emit(g, &to_json(&tag.build()?)?)?;
        }
        Command::Chi { file } => emit(g, &format!("{}\n", load(file)?.euler_characteristic()))?,
        Command::Kappa { file } => emit(g, &format!("{}\n", load(file)?.average_curvature()?))?,
        Command::CheckImmersion { file } => {
            let m = load(file)?;
            return Ok(match immersion_witness(&m)? {
                None => {
                    emit(g, "immersion\n")?;
                    Status::Ok
                }
                Some(w) => {
                    emit(g, &format!("not an immersion: {w}\n"))?;
                    Status::Negative
                }
            });
        }
        Command::FreeFaces { file } => {
            let m = load(file)?;
            let names: Vec<&str> = m
                .free_faces()
                .into_iter()
                .map(|e| m.domain.edges[e].name.as_str())
                .collect();
            let text = if g.json {
                serde_json::to_string(&names)?
            } else {
                names.join("\n")
            };
            emit(g, &line(text))?;
        }
        Command::Collapse { file, edge } => {
            let m = load(file)?;
            emit(g, &to_json(&m.collapse_free_face(edge_id(&m, edge)?)?)?)?;
        }
        Command::Fold { file, trace } => {
            let (out, t) = fold(&load(file)?)?;
            if let Some(path) = trace {
                fs::write(path, t.to_json_lines())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            emit(g, &to_json(&out)?)?;
        }
        Command::Couple {
            file,
            face_type,
            pos,
            edge,
        } => {
            let m = load(file)?;
            emit(
                g,
                &to_json(&couple(&m, *face_type, *pos, edge_id(&m, edge)?)?)?,
            )?;
        }
        Command::IdentifyVertices { file, u, v } => {
            let m = load(file)?;
            emit(
                g,
                &to_json(&identify_vertices(
                    &m,
                    vertex_id(&m, u)?,
                    vertex_id(&m, v)?,
                )?)?,
            )?;
        }
        Command::IdentifyEdges { file, e1, e2 } => {
            let m = load(file)?;
            emit(
                g,
                &to_json(&identify_edges(&m, edge_id(&m, e1)?, edge_id(&m, e2)?)?)?,
            )?;
        }
        Command::Iso { first, second } => {
            let iso = isomorphic(&load(first)?, &load(second)?)?;
            emit(
                g,
                if iso.is_some() {
                    "isomorphic\n"
                } else {
                    "not isomorphic\n"
                },
            )?;
            if iso.is_none() {
                return Ok(Status::Negative);
            }
        }
        Command::Classify { file } => emit(g, &format!("{}\n", classify(&load(file)?)?))?,
        Command::Homology { file } => {
            let h = homology(&load(file)?.domain);
            let text = if g.json {
                serde_json::to_string_pretty(&h)?
            } else {
                let torsion: Vec<String> = h.torsion_1.iter().map(|t| t.to_string()).collect();
                format!(
                    "b0 = {}\nb1 = {}\nb2 = {}\ntorsion = [{}]",
                    h.betti_0,
                    h.betti_1,
                    h.betti_2,
                    torsion.join(", ")
                )
            };
            emit(g, &line(text))?;
        }
        Command::Certify { file } => {
            let c = certify_contractible(&load(file)?.domain, &budgets)?;
            let text = if g.json {
                serde_json::to_string_pretty(&c)?
            } else {
                c.kind().to_string()
            };
            emit(g, &line(text))?;
            if !c.is_contractible() {
                return Ok(Status::Negative);
            }
        }
        Command::Enumerate(a) => enumerate(g, a, &budgets)?,
        Command::VerifyLemma { lemma, max_i } => {
            let mut r = match lemma {
                Lemma::Vertex => check_lemma_vertex_identification(*max_i)?,
                Lemma::Edge => check_lemma_edge_identification(*max_i)?,
                Lemma::Coupling => check_lemma_coupling(*max_i)?,
            };
            return report(g, &mut r, &budgets);
        }
        Command::VerifyTheorem { max_vertices } => {
            let mut r = verify_main_theorem(*max_vertices, &budgets)?;
            return report(g, &mut r, &budgets);
        }
        Command::ExportDot { file } => emit(g, &to_dot(&load(file)?))?,
    }
    Ok(Status::Ok)
}

fn enumerate(g: &Global, a: &EnumerateArgs, budgets: &Budgets) -> Result<()> {
    let filter = EnumerationFilter {
        max_vertices: a.max_vertices,
        require_connected: a.connected,
        require_no_free_faces: a.closed,
        required_types: a
            .types
            .as_ref()
            .map(|t| t.iter().copied().collect::<BTreeSet<_>>()),
    };
    let found = enumerate_immersions(&filter, budgets)?;
    if let Some(dir) = &a.dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (i, m) in found.classes.iter().enumerate() {
            let path = dir.join(format!("class_{i:04}.json"));
            fs::write(&path, to_json(m)?).with_context(|| format!("writing {}", path.display()))?;
        }
    }
    let rows: Vec<serde_json::Value> = found
        .classes
        .iter()
        .map(|m| {
            serde_json::json!({
                "class": classify(m).map(|c| c.to_string()).unwrap_or_else(|_| "unclassified".into()),
                "vertices": m.domain.num_vertices(),
                "edges": m.domain.num_edges(),
                "faces": m.domain.num_faces(),
                "chi": m.euler_characteristic(),
            })
        })
        .collect();
    let text = if g.json {
        serde_json::to_string_pretty(&serde_json::json!({
            "max_vertices": a.max_vertices,
            "nodes": found.nodes,
            "classes": rows,
        }))?
    } else {
        let mut s = format!("{} classes, {} search nodes\n", rows.len(), found.nodes);
        for (i, r) in rows.iter().enumerate() {
            s += &format!(
                "{i:4}  {:<14}  V={} E={} F={}  chi={}\n",
                r["class"].as_str().unwrap_or_default(),
                r["vertices"],
                r["edges"],
                r["faces"],
                r["chi"]
            );
        }
        s
    };
    emit(g, &line(text))
}

fn report(g: &Global, r: &mut VerificationReport, budgets: &Budgets) -> Result<Status> {
    r.param("seed", g.seed);
    r.param("budgets", serde_json::to_value(budgets)?);
    if let Some(j) = g.jobs {
        r.param("jobs", j);
    }
    emit(g, &if g.json { r.to_json() } else { r.to_table() })?;
    Ok(if r.passed() {
        Status::Ok
    } else {
        Status::Negative
    })
}

fn budgets() -> Result<Budgets> {
    match std::env::var(BUDGET_ENV) {
        Ok(spec) => Budgets::default()
            .with_overrides(&spec)
            .with_context(|| format!("parsing {BUDGET_ENV}")),
        Err(std::env::VarError::NotPresent) => Ok(Budgets::default()),
        Err(e) => Err(anyhow!("{BUDGET_ENV}: {e}")),
    }
}

/// Reads a complex file; `-` is stdin.
fn load(path: &Path) -> Result<Morphism> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(g: &Global, text: &str) -> Result<()> {
    match &g.output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => Ok(io::stdout().lock().write_all(text.as_bytes())?),
    }
}

fn line(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

/// Edge by name, falling back to a numeric index.
fn edge_id(m: &Morphism, id: &str) -> Result<usize> {
    let d = &m.domain;
    d.edge_index(id)
        .or_else(|| id.parse().ok().filter(|&i| i < d.num_edges()))
        .ok_or_else(|| anyhow!("unknown edge `{id}`"))
}

fn vertex_id(m: &Morphism, id: &str) -> Result<usize> {
    let d = &m.domain;
    d.vertex_index(id)
        .or_else(|| id.parse().ok().filter(|&i| i < d.num_vertices()))
        .ok_or_else(|| anyhow!("unknown vertex `{id}`"))
}
