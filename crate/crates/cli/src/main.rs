//! `edgefem` command-line front end.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |---|---|
//! | 0 | success, or every benchmark criterion passed |
//! | 2 | bad command-line usage |
//! | 3 | file I/O failure |
//! | 4 | mesh file syntax, duplicate id, dangling reference or unknown kind |
//! | 5 | topology: non-manifold edge, self loop, incidence overflow, mixed orders |
//! | 6 | singular element Jacobian |
//! | 7 | no free degrees of freedom |
//! | 8 | eigensolver: mass not positive definite or system too large |
//! | 9 | invalid parameter |
//! | 10 | benchmark ran but a criterion failed |

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use edgefem::assembly::{assemble, AssembledSystem, MaterialParams};
use edgefem::bench::{run_bench, BenchConfig};
use edgefem::convert::{node_to_edge, EdgeMesh};
use edgefem::eigen::{solve_gevp, DEFAULT_CLUSTER_GAP, DEFAULT_ZERO_TOL};
use edgefem::error::Error;
use edgefem::mesh::{detect_boundary, parse_mesh, write_mesh, NodalMesh};
use edgefem::meshgen::{generate, preset, Diagonal, DiskParams, Domain, ElementFamily, Resolution};
use edgefem::sparse::SparseSym;

const EXIT_BENCH_FAILED: u8 = 10;

#[derive(Parser)]
#[command(name = "edgefem", version, about = "Edge finite elements for 2-D cavity eigenproblems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a benchmark mesh in the mesh2d format.
    Gen(GenArgs),
    /// Convert a nodal mesh and print the edge data structure.
    Convert(ConvertArgs),
    /// Assemble and solve the cavity eigenproblem for a mesh file.
    Eigen(EigenArgs),
    /// Run a benchmark against the embedded reference values.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum DomainArg {
    Square,
    CurvedL,
    Disk,
    CrackedDisk,
}

impl From<DomainArg> for Domain {
    fn from(d: DomainArg) -> Self {
        match d {
            DomainArg::Square => Domain::Square,
            DomainArg::CurvedL => Domain::CurvedL,
            DomainArg::Disk => Domain::Disk,
            DomainArg::CrackedDisk => Domain::CrackedDisk,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ElementArg {
    T3,
    Q4,
    T8,
    Q12,
    Mixed1,
    Mixed2,
}

impl From<ElementArg> for ElementFamily {
    fn from(e: ElementArg) -> Self {
        match e {
            ElementArg::T3 => ElementFamily::T3,
            ElementArg::Q4 => ElementFamily::Q4,
            ElementArg::T8 => ElementFamily::T8,
            ElementArg::Q12 => ElementFamily::Q12,
            ElementArg::Mixed1 => ElementFamily::Mixed1,
            ElementArg::Mixed2 => ElementFamily::Mixed2,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DiagonalArg {
    Uniform,
    Alternating,
}

impl From<DiagonalArg> for Diagonal {
    fn from(d: DiagonalArg) -> Self {
        match d {
            DiagonalArg::Uniform => Diagonal::Uniform,
            DiagonalArg::Alternating => Diagonal::Alternating,
        }
    }
}

#[derive(Args)]
struct MeshSpec {
    domain: DomainArg,
    /// Subdivisions: cells per side (square), divisions per unit radius and
    /// per pi/8 (curved-l), quadrilateral rings (disks).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum)]
    element: Option<ElementArg>,
    /// paper-square, paper-curved-l, paper-disk, paper-cracked-disk, ci-disk, ci-cracked-disk.
    #[arg(long)]
    preset: Option<String>,
    /// Triangles in the disk hub fan (preset value by default).
    #[arg(long)]
    core: Option<usize>,
    /// Triangle cut pattern for square meshes.
    #[arg(long, value_enum)]
    diagonal: Option<DiagonalArg>,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    mesh: MeshSpec,
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ConvertArgs {
    mesh: PathBuf,
    /// Directory for one file per table; tables go to stdout otherwise.
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EigenArgs {
    mesh: PathBuf,
    /// Number of nonzero eigenvalues to report.
    #[arg(long, default_value_t = 16)]
    num: usize,
    /// Relative zero threshold: values below tol * lambda_max count as zero.
    #[arg(long, default_value_t = DEFAULT_ZERO_TOL)]
    zero_tol: f64,
    #[arg(long)]
    csv: bool,
    /// Write K.mtx and M.mtx (MatrixMarket) into this directory.
    #[arg(long)]
    dump_matrices: Option<PathBuf>,
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    mesh: MeshSpec,
    #[arg(long, default_value_t = DEFAULT_ZERO_TOL)]
    zero_tol: f64,
    #[arg(long)]
    csv: bool,
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Core(Error::Io(e))
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            Self::Usage(_) => 2,
            Self::Core(e) => match e {
                Error::Io(_) => 3,
                Error::Syntax { .. }
                | Error::DuplicateId { .. }
                | Error::DanglingNodeRef { .. }
                | Error::UnsupportedKind(_) => 4,
                Error::NonManifold(_)
                | Error::SelfLoop(_)
                | Error::EdgeOverflow(_)
                | Error::MixedOrderMismatch(..)
                | Error::IndexOutOfRange { .. } => 5,
                Error::SingularJacobian { .. } => 6,
                Error::EmptySystem => 7,
                Error::MassNotPd | Error::TooLarge(_) => 8,
                Error::InvalidParameter(_) | Error::LengthMismatch { .. } | Error::WrongOrder => 9,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Core(e) => write!(f, "{e}"),
            Self::Usage(m) => f.write_str(m),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(&a),
        Command::Convert(a) => cmd_convert(&a),
        Command::Eigen(a) => cmd_eigen(&a),
        Command::Bench(a) => cmd_bench(&a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn emit(output: Option<&Path>, text: &str) -> CliResult<()> {
    match output {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn read_mesh(path: &Path) -> CliResult<NodalMesh> {
    let text = fs::read_to_string(path)?;
    Ok(parse_mesh(&text)?)
}

/// Resolves a mesh request to a domain, family and resolution. Explicit
/// `--n` overrides the preset resolution.
fn resolve(spec: &MeshSpec) -> CliResult<(Domain, ElementFamily, Resolution, bool)> {
    let domain: Domain = spec.domain.into();
    let family = match (spec.element, domain) {
        (Some(e), _) => e.into(),
        (None, Domain::Square | Domain::CurvedL) => ElementFamily::Q4,
        (None, _) => ElementFamily::Mixed1,
    };
    let name = spec.preset.clone().unwrap_or_else(|| format!("paper-{}", domain.tag()));
    let (pd, base) = preset(&name, family)?;
    if pd != domain {
        return Err(CliError::Usage(format!("preset {name} is for domain {pd}, not {domain}")));
    }
    let res = match (base, spec.n) {
        (Resolution::Square { n, diagonal }, given) => Resolution::Square {
            n: given.unwrap_or(n),
            diagonal: spec.diagonal.map_or(diagonal, Into::into),
        },
        (Resolution::CurvedL { .. }, Some(n)) => Resolution::CurvedL { nr: n, na: n },
        (Resolution::Disk(p), given) => {
            let mut q = DiskParams::new(spec.core.unwrap_or(p.core), given.unwrap_or(p.rings));
            q.max_aspect = p.max_aspect;
            Resolution::Disk(q)
        }
        (r, None) => r,
    };
    if spec.diagonal.is_some() && domain != Domain::Square {
        return Err(CliError::Usage("--diagonal applies to square meshes only".into()));
    }
    Ok((domain, family, res, name.starts_with("ci-")))
}

fn cmd_gen(a: &GenArgs) -> CliResult<u8> {
    let (domain, family, res, _) = resolve(&a.mesh)?;
    let mesh = generate(domain, res, family)?;
    emit(a.output.as_deref(), &write_mesh(&mesh))?;
    Ok(0)
}

fn join<T: ToString>(row: impl IntoIterator<Item = T>) -> String {
    row.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

/// Conversion tables as text, keyed by file name. Nodes are printed as
/// 1-based positions in the mesh file.
fn conversion_tables(em: &EdgeMesh<'_>) -> Vec<(&'static str, String)> {
    let reg = em.registry();
    let mut edgecon = String::new();
    for row in em.edgecon() {
        let _ = writeln!(edgecon, "{}", join(row));
    }
    let mut edgenode = String::new();
    for &(a, b) in reg.edgenodes() {
        let _ = writeln!(edgenode, "{} {}", a + 1, b + 1);
    }
    let mut nodeedge = String::new();
    for n in 0..reg.num_nodes() {
        let _ = writeln!(nodeedge, "{}", join(reg.paper_nodeedge_row(n)));
    }
    let nodeedgenum = reg.nodeedgenum().iter().map(|c| format!("{c}\n")).collect();
    let ndexn = reg.ndexn().iter().map(|n| format!("{}\n", n + 1)).collect();
    let mut exn = String::new();
    for j in 0..reg.nndexn() {
        let _ = writeln!(exn, "{}", join(reg.paper_nodeedgeexn_row(j)));
    }
    vec![
        ("edgecon", edgecon),
        ("edgenode", edgenode),
        ("nodeedgenum", nodeedgenum),
        ("nodeedge", nodeedge),
        ("ndexn", ndexn),
        ("nodeedgeexn", exn),
    ]
}

fn cmd_convert(a: &ConvertArgs) -> CliResult<u8> {
    let mesh = read_mesh(&a.mesh)?;
    let em = node_to_edge(&mesh)?;
    let tables = conversion_tables(&em);
    match &a.output {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            for (name, text) in &tables {
                fs::write(dir.join(format!("{name}.txt")), text)?;
            }
        }
        None => {
            let mut out = String::new();
            for (name, text) in &tables {
                let _ = write!(out, "# {name}\n{text}");
            }
            emit(None, &out)?;
        }
    }
    Ok(0)
}

fn matrix_market(a: &SparseSym) -> String {
    let lower: Vec<(usize, usize, f64)> = (0..a.dim())
        .flat_map(|i| a.row(i).filter(move |&(j, _)| j <= i).map(move |(j, v)| (i, j, v)))
        .collect();
    let mut s = String::from("%%MatrixMarket matrix coordinate real symmetric\n");
    let _ = writeln!(s, "{} {} {}", a.dim(), a.dim(), lower.len());
    for (i, j, v) in lower {
        let _ = writeln!(s, "{} {} {:.16e}", i + 1, j + 1, v);
    }
    s
}

fn dump_matrices(dir: &Path, system: &AssembledSystem) -> CliResult<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join("K.mtx"), matrix_market(&system.k))?;
    fs::write(dir.join("M.mtx"), matrix_market(&system.m))?;
    Ok(())
}

fn cmd_eigen(a: &EigenArgs) -> CliResult<u8> {
    if !(a.zero_tol > 0.0) {
        return Err(CliError::Usage("--zero-tol must be positive".into()));
    }
    let mesh = read_mesh(&a.mesh)?;
    let em = node_to_edge(&mesh)?;
    let boundary = detect_boundary(&em)?;
    let system = assemble(&em, &MaterialParams::default(), &boundary)?;
    if let Some(dir) = &a.dump_matrices {
        dump_matrices(dir, &system)?;
    }
    let spectrum = solve_gevp(&system, a.zero_tol, DEFAULT_CLUSTER_GAP)?;
    let mut mult = Vec::new();
    for c in &spectrum.clusters {
        mult.extend(std::iter::repeat_n(c.multiplicity, c.multiplicity));
    }
    let shown = spectrum.nonzero().iter().zip(&mult).take(a.num).enumerate();
    let mut out = String::new();
    if a.csv {
        out.push_str("rank,k0_squared,multiplicity\n");
        for (k, (v, m)) in shown {
            let _ = writeln!(out, "{},{:.10},{}", k + 1, v, m);
        }
    } else {
        let _ = writeln!(
            out,
            "nodes {} elements {} edges {} free {}",
            mesh.num_nodes(),
            mesh.num_elements(),
            em.num_edges(),
            system.n_free()
        );
        let _ = writeln!(
            out,
            "zeros {} (below {:e} * lambda_max), interior nodes {}",
            spectrum.zero_count,
            a.zero_tol,
            boundary.interior_nodes().len()
        );
        let _ = writeln!(out, "{:>4} {:>16} {:>4}", "rank", "k0^2", "mult");
        for (k, (v, m)) in shown {
            let _ = writeln!(out, "{:>4} {:>16.8} {:>4}", k + 1, v, m);
        }
    }
    emit(a.output.as_deref(), &out)?;
    Ok(0)
}

fn cmd_bench(a: &BenchArgs) -> CliResult<u8> {
    let (domain, family, resolution, reduced) = resolve(&a.mesh)?;
    let cfg = BenchConfig {
        domain,
        family,
        resolution,
        tol_scale: if reduced { 2.0 } else { 1.0 },
        zero_tol: a.zero_tol,
    };
    let report = run_bench(&cfg)?;
    let text = if a.csv { report.render_csv() } else { report.render_text() };
    emit(a.output.as_deref(), &text)?;
    eprintln!("elapsed {:.3} s", report.elapsed.as_secs_f64());
    Ok(if report.passed() { 0 } else { EXIT_BENCH_FAILED })
}
