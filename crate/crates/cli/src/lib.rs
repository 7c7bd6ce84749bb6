//! Command-line frontend: file parsers and command dispatch. `main.rs` only
//! forwards to [`run`].

use std::collections::HashSet;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cotorlab::checks::{self, CheckReport};
use cotorlab::coalgebra::{
    bin_coalgebra, binq_coalgebra, dir_coalgebra, dirichlet_coextension, div_coalgebra, full_incidence_coalgebra,
    polynomial_coalgebra, Coextension, FDAlgebra, GradedCoalgebra,
};
use cotorlab::combinat::poset::ISOMORPHISM_CAP;
use cotorlab::combinat::{poset_isomorphic, Poset, Quiver, SimplicialComplex};
use cotorlab::homology::{
    ext_dims, hochschild_complex, hochschild_reduced, simplicial_cohomology, Bimodule, CobarComplex, Comodule,
    Reduction, Side,
};
use cotorlab::report::{Report, Tool};
use cotorlab::series::{IncidenceFunction, ReducedIncidenceTable, SeriesKind, TruncatedSeries};
use cotorlab::{parse_rational, Budget, Error, Rational};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(#[from] Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

/// Exact homological invariants of incidence algebras and coalgebras.
#[derive(Debug, Parser)]
#[command(name = "cotorlab", version)]
pub struct Cli {
    /// Tab-separated output instead of JSON.
    #[arg(long, global = true)]
    pub tsv: bool,
    /// Emit an empty timings list so output is byte-stable.
    #[arg(long, global = true)]
    pub no_timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Arithmetic on truncated series.
    Series {
        #[arg(value_enum)]
        op: SeriesOp,
        #[command(flatten)]
        kind: KindArgs,
        /// Coefficient files: a literal `kind=… bound=… coeffs=…` or a
        /// comma/whitespace separated list.
        files: Vec<PathBuf>,
    },
    /// Facts about a poset file.
    Poset {
        #[arg(value_enum)]
        op: PosetOp,
        file: PathBuf,
        /// Second poset for `iso`.
        other: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
    },
    /// Facts about a quiver file.
    Quiver {
        #[arg(value_enum)]
        op: QuiverOp,
        file: PathBuf,
    },
    /// Print a coalgebra in dump format.
    Coalgebra {
        #[command(flatten)]
        source: CoalgebraArgs,
    },
    /// Cotor through the cobar complex.
    Cotor {
        #[command(flatten)]
        source: CoalgebraArgs,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        #[arg(long, default_value_t = 12)]
        degree_cap: u32,
        /// Vertex comodules k_x and _yk for incidence coalgebras.
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
    },
    /// Hochschild cohomology HH(A, A) of an incidence algebra, or with
    /// coefficients in a vertex bimodule.
    Hh {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        /// Use the full bar-type complex instead of the chain complex.
        #[arg(long)]
        full: bool,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
    },
    /// Ext between simple modules at two vertices.
    Ext {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
    },
    /// Run a theorem check; prints one report per line.
    Verify {
        #[arg(value_enum)]
        check: CheckName,
        #[arg(long)]
        poset: Option<PathBuf>,
        #[arg(long)]
        quiver: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        #[arg(long, default_value_t = 8)]
        trunc: u32,
        #[arg(long, default_value_t = 2)]
        m: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SeriesOp {
    Mul,
    Add,
    Inv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PosetOp {
    Info,
    Mobius,
    Types,
    Nerve,
    Iso,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum QuiverOp {
    Info,
    Suspend,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CoalgebraName {
    Div,
    Bin,
    Binq,
    Dir,
    Poly,
    Incidence,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CheckName {
    ThmExp,
    Fundamental3,
    ZLemma,
    Duality,
    Gs,
    Suspension,
    Eta,
    All,
}

#[derive(Debug, Args)]
pub struct KindArgs {
    #[arg(long)]
    kind: Option<String>,
    #[arg(long)]
    bound: Option<usize>,
    #[arg(long)]
    q: Option<String>,
}

#[derive(Debug, Args)]
pub struct CoalgebraArgs {
    #[arg(long, value_enum)]
    coalgebra: CoalgebraName,
    /// Truncation degree.
    #[arg(long, default_value_t = 8)]
    trunc: u32,
    #[arg(long)]
    q: Option<String>,
    /// Number of primes or variables.
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Poset file for `incidence`.
    #[arg(long)]
    poset: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// `x < y` per line, `#` comments; a line holding a single label declares
/// an element with no relations.
pub fn parse_poset(text: &str) -> Result<Poset, Error> {
    let mut labels: Vec<String> = Vec::new();
    let mut pairs = Vec::new();
    let add = |l: &str, labels: &mut Vec<String>| {
        if !labels.iter().any(|x| x == l) {
            labels.push(l.to_string());
        }
    };
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match line.split_once('<') {
            Some((lo, hi)) => {
                let (lo, hi) = (lo.trim(), hi.trim());
                if lo.is_empty() || hi.is_empty() || hi.contains('<') {
                    return Err(parse_error(i + 1, format!("expected `x < y`, got {line:?}")));
                }
                add(lo, &mut labels);
                add(hi, &mut labels);
                pairs.push((lo.to_string(), hi.to_string()));
            }
            None if !line.contains(char::is_whitespace) => add(line, &mut labels),
            None => return Err(parse_error(i + 1, format!("expected `x < y`, got {line:?}"))),
        }
    }
    Poset::new(&labels, &pairs)
}

pub fn parse_poset_file(path: &Path) -> Result<Poset, CliError> {
    Ok(parse_poset(&read(path)?)?)
}

/// `vertex v` lines and `arrow name: x -> y` lines, `#` comments.
pub fn parse_quiver(text: &str) -> Result<Quiver, Error> {
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    let mut names = HashSet::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(v) = line.strip_prefix("vertex ") {
            let v = v.trim();
            if vertices.iter().any(|x| x == v) {
                return Err(parse_error(i + 1, format!("vertex {v:?} declared twice")));
            }
            vertices.push(v.to_string());
        } else if let Some(rest) = line.strip_prefix("arrow ") {
            let bad = || parse_error(i + 1, format!("expected `arrow name: x -> y`, got {line:?}"));
            let (name, ends) = rest.split_once(':').ok_or_else(bad)?;
            let (s, t) = ends.split_once("->").ok_or_else(bad)?;
            let (name, s, t) = (name.trim(), s.trim(), t.trim());
            if name.is_empty() || s.is_empty() || t.is_empty() {
                return Err(bad());
            }
            if !names.insert(name.to_string()) {
                return Err(parse_error(i + 1, format!("arrow name {name:?} used twice")));
            }
            arrows.push((name.into(), s.into(), t.into()));
        } else {
            return Err(parse_error(i + 1, format!("unrecognized line {line:?}")));
        }
    }
    Quiver::new(&vertices, &arrows)
}

pub fn parse_quiver_file(path: &Path) -> Result<Quiver, CliError> {
    Ok(parse_quiver(&read(path)?)?)
}

fn parse_series(text: &str, kind: &KindArgs) -> Result<TruncatedSeries, CliError> {
    if text.contains("kind=") {
        return Ok(TruncatedSeries::parse_literal(text)?);
    }
    let q = kind.q.as_deref().map(parse_rational).transpose()?;
    let name = kind
        .kind
        .as_deref()
        .ok_or_else(|| CliError::Usage("--kind is required for plain coefficient files".into()))?;
    let coeffs = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(parse_rational)
        .collect::<Result<Vec<Rational>, Error>>()?;
    let bound = kind.bound.unwrap_or(coeffs.len());
    Ok(TruncatedSeries::new(SeriesKind::parse(name, q)?, bound, coeffs)?)
}

fn coalgebra(args: &CoalgebraArgs) -> Result<(String, GradedCoalgebra), CliError> {
    let d = args.trunc;
    let q = || -> Result<Rational, CliError> {
        Ok(parse_rational(
            args.q
                .as_deref()
                .ok_or_else(|| CliError::Usage("--q is required for binq".into()))?,
        )?)
    };
    Ok(match args.coalgebra {
        CoalgebraName::Div => (format!("div({d})"), div_coalgebra(d as usize)),
        CoalgebraName::Bin => (format!("bin({d})"), bin_coalgebra(d as usize)),
        CoalgebraName::Binq => {
            let q = q()?;
            (format!("binq({d},{q})"), binq_coalgebra(d as usize, &q)?)
        }
        CoalgebraName::Dir => (format!("dir({},{d})", args.m), dir_coalgebra(args.m, d)?),
        CoalgebraName::Poly => {
            let vars: Vec<String> = if args.m == 1 {
                vec!["X".into()]
            } else {
                (1..=args.m).map(|i| format!("X{i}")).collect()
            };
            (format!("k[{}]({d})", vars.join(",")), polynomial_coalgebra(&vars, d))
        }
        CoalgebraName::Incidence => {
            let path = args
                .poset
                .as_ref()
                .ok_or_else(|| CliError::Usage("--poset is required for incidence".into()))?;
            let p = parse_poset_file(path)?;
            (format!("C({})", path.display()), full_incidence_coalgebra(&p).as_finite())
        }
    })
}

fn vertex(p: &Poset, label: &str) -> Result<usize, Error> {
    p.index_of(label).ok_or_else(|| Error::UnknownVertex(label.to_string()))
}

/// Output and exit code of one invocation.
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Cli {
    fn report(&self, object: String, tool: Tool, dims: Vec<usize>, cap: Option<u32>, n_max: usize, start: Instant) -> String {
        let r = Report {
            object,
            tool,
            dims,
            degree_cap: cap,
            n_max,
            timings_ms: if self.no_timings {
                Vec::new()
            } else {
                vec![start.elapsed().as_millis() as u64]
            },
        };
        if self.tsv {
            r.to_tsv()
        } else {
            r.to_json() + "\n"
        }
    }

    fn check_lines(&self, reports: Vec<CheckReport>) -> Outcome {
        let code = if reports.iter().all(|r| r.passed()) { 0 } else { 1 };
        let mut stdout = String::new();
        for mut r in reports {
            if self.no_timings {
                r.elapsed_ms = 0;
            }
            if self.tsv {
                for c in &r.cases {
                    stdout.push_str(&format!(
                        "{}\t{}\t{:?}\t{:?}\t{}\n",
                        r.check,
                        c.label,
                        c.left,
                        c.right,
                        if c.left == c.right { "pass" } else { "fail" }
                    ));
                }
                for c in &r.conditions {
                    stdout.push_str(&format!(
                        "{}\t{}\t\t\t{}\n",
                        r.check,
                        c.name,
                        if c.holds { "pass" } else { "fail" }
                    ));
                }
            } else {
                stdout.push_str(&r.to_json());
                stdout.push('\n');
            }
        }
        Outcome { stdout, code }
    }

    pub fn execute(&self) -> Result<Outcome, CliError> {
        let start = Instant::now();
        let ok = |stdout: String| Ok(Outcome { stdout, code: 0 });
        match &self.command {
            Command::Series { op, kind, files } => {
                let want = match op {
                    SeriesOp::Inv => 1,
                    _ => 2,
                };
                if files.len() != want {
                    return Err(CliError::Usage(format!("expected {want} series file(s)")));
                }
                let s: Vec<TruncatedSeries> = files
                    .iter()
                    .map(|f| parse_series(&read(f)?, kind))
                    .collect::<Result<_, _>>()?;
                let out = match op {
                    SeriesOp::Mul => s[0].convolve(&s[1])?,
                    SeriesOp::Add => s[0].add(&s[1])?,
                    SeriesOp::Inv => s[0].invert()?,
                };
                if self.tsv {
                    let first = usize::from(matches!(out.kind(), SeriesKind::Dirichlet));
                    let rows: String = out
                        .coeffs()
                        .iter()
                        .enumerate()
                        .map(|(i, c)| format!("{}\t{c}\n", i + first))
                        .collect();
                    ok(format!("n\tcoeff\n{rows}"))
                } else {
                    let coeffs: Vec<String> = out.coeffs().iter().map(|c| c.to_string()).collect();
                    let v = serde_json::json!({
                        "kind": out.kind().name(),
                        "bound": out.bound(),
                        "coeffs": coeffs,
                        "literal": out.to_literal(),
                    });
                    ok(v.to_string() + "\n")
                }
            }
            Command::Poset { op, file, other, nmax } => {
                let p = parse_poset_file(file)?;
                match op {
                    PosetOp::Info => {
                        let intervals = p.enumerate_intervals().len();
                        let v = serde_json::json!({
                            "elements": p.labels(),
                            "covers": p.covers().iter().map(|&(a, b)| [p.label(a), p.label(b)]).collect::<Vec<_>>(),
                            "components": p.components(),
                            "intervals": intervals,
                        });
                        ok(v.to_string() + "\n")
                    }
                    PosetOp::Mobius => {
                        let mu = IncidenceFunction::mobius(Arc::new(p.clone()));
                        let mut rows = String::new();
                        for x in 0..p.len() {
                            for y in 0..p.len() {
                                if p.leq(x, y) {
                                    rows.push_str(&format!("{}\t{}\t{}\n", p.label(x), p.label(y), mu.get(x, y)));
                                }
                            }
                        }
                        ok(rows)
                    }
                    PosetOp::Types => {
                        let t = ReducedIncidenceTable::interval_types(Arc::new(p))?;
                        let v = serde_json::json!({
                            "types": t.type_count(),
                            "order_compatible": t.is_order_compatible(),
                        });
                        ok(v.to_string() + "\n")
                    }
                    PosetOp::Nerve => {
                        let dims = simplicial_cohomology(&SimplicialComplex::order_complex(&p), *nmax)?;
                        ok(self.report(format!("Δ({})", file.display()), Tool::Simplicial, dims, None, *nmax, start))
                    }
                    PosetOp::Iso => {
                        let other = other
                            .as_ref()
                            .ok_or_else(|| CliError::Usage("iso needs a second poset file".into()))?;
                        let q = parse_poset_file(other)?;
                        let map = poset_isomorphic(&p, &q, ISOMORPHISM_CAP)?;
                        let v = serde_json::json!({
                            "isomorphic": map.is_some(),
                            "map": map.map(|m| m.iter().enumerate().map(|(i, &j)| [p.label(i).to_string(), q.label(j).to_string()]).collect::<Vec<_>>()),
                        });
                        ok(v.to_string() + "\n")
                    }
                }
            }
            Command::Quiver { op, file } => {
                let q = parse_quiver_file(file)?;
                match op {
                    QuiverOp::Info => {
                        let names = |v: Vec<usize>| v.into_iter().map(|i| q.vertices()[i].clone()).collect::<Vec<_>>();
                        let v = serde_json::json!({
                            "vertices": q.vertices(),
                            "arrows": q.arrows().len(),
                            "ordered": q.is_ordered(),
                            "sources": names(q.sources()),
                            "sinks": names(q.sinks()),
                        });
                        ok(v.to_string() + "\n")
                    }
                    QuiverOp::Suspend => {
                        let s = q.suspend()?;
                        let mut out = String::new();
                        for v in s.vertices() {
                            out.push_str(&format!("vertex {v}\n"));
                        }
                        for a in s.arrows() {
                            out.push_str(&format!(
                                "arrow {}: {} -> {}\n",
                                a.name,
                                s.vertices()[a.source],
                                s.vertices()[a.target]
                            ));
                        }
                        ok(out)
                    }
                }
            }
            Command::Coalgebra { source } => ok(coalgebra(source)?.1.dump()),
            Command::Cotor {
                source,
                nmax,
                degree_cap,
                from,
                to,
            } => {
                let (name, c) = coalgebra(source)?;
                let (v, w, object) = match (from, to) {
                    (Some(x), Some(y)) => {
                        let form = c
                            .incidence()
                            .ok_or_else(|| CliError::Usage("--from/--to need an incidence coalgebra".into()))?;
                        let (ix, iy) = (vertex(&form.poset, x)?, vertex(&form.poset, y)?);
                        (
                            Comodule::vertex(&c, Side::Right, ix)?,
                            Comodule::vertex(&c, Side::Left, iy)?,
                            format!("{name}; k_{x}, {y}_k"),
                        )
                    }
                    (None, None) => (
                        Comodule::trivial(&c, Side::Right)?,
                        Comodule::trivial(&c, Side::Left)?,
                        name,
                    ),
                    _ => return Err(CliError::Usage("--from and --to go together".into())),
                };
                let cx = CobarComplex::new(&c, &v, &w, *nmax, Some(*degree_cap), Reduction::Auto, Budget::from_env())?;
                let dims = cx.cohomology_dims()?;
                ok(self.report(object, Tool::Cotor, dims, cx.effective_cap(), *nmax, start))
            }
            Command::Hh {
                poset,
                nmax,
                full,
                from,
                to,
            } => {
                let p = parse_poset_file(poset)?;
                let a = Arc::new(FDAlgebra::incidence(&p)?);
                let (m, coeff) = match (from, to) {
                    (Some(x), Some(y)) => (
                        Bimodule::vertex(a.clone(), vertex(&p, x)?, vertex(&p, y)?)?,
                        format!("k[{x}|{y}]"),
                    ),
                    (None, None) => (Bimodule::regular(a)?, "A".to_string()),
                    _ => return Err(CliError::Usage("--from and --to go together".into())),
                };
                let dims = if *full {
                    hochschild_complex(&m, *nmax, Budget::from_env())?.cohomology_dims(*nmax)?
                } else {
                    hochschild_reduced(&m, *nmax)?.cohomology_dims(*nmax)?
                };
                let object = format!("HH(I({}), {coeff})", poset.display());
                ok(self.report(object, Tool::Hh, dims, None, *nmax, start))
            }
            Command::Ext { poset, from, to, nmax } => {
                let p = parse_poset_file(poset)?;
                let a = Arc::new(FDAlgebra::incidence(&p)?);
                let dims = ext_dims(&a, from, to, *nmax)?;
                let object = format!("Ext(k_{from}, {to}_k) over I({})", poset.display());
                ok(self.report(object, Tool::Ext, dims, None, *nmax, start))
            }
            Command::Verify {
                check,
                poset,
                quiver,
                nmax,
                trunc,
                m,
            } => {
                let need_poset = || -> Result<Poset, CliError> {
                    parse_poset_file(poset.as_ref().ok_or_else(|| CliError::Usage("--poset is required".into()))?)
                };
                let need_quiver = || -> Result<Quiver, CliError> {
                    parse_quiver_file(quiver.as_ref().ok_or_else(|| CliError::Usage("--quiver is required".into()))?)
                };
                let reports = match check {
                    CheckName::ThmExp => vec![checks::check_thm_exp(*trunc as usize, *nmax)?],
                    CheckName::Fundamental3 => vec![checks::check_fundamental3(*m, *trunc, *nmax)?],
                    CheckName::ZLemma => {
                        let e = match poset {
                            Some(_) => Coextension::to_point(Arc::new(full_incidence_coalgebra(&need_poset()?).as_finite()))?,
                            None => dirichlet_coextension(*m, *trunc)?,
                        };
                        vec![checks::check_z_lemma(&e, *nmax, None)?]
                    }
                    CheckName::Duality => vec![checks::check_duality(&need_poset()?, *nmax)?],
                    CheckName::Gs => vec![checks::check_gs(&need_poset()?, *nmax)?],
                    CheckName::Suspension => vec![checks::check_suspension(&need_quiver()?, *nmax)?],
                    CheckName::Eta => vec![checks::check_eta_sequence(&need_quiver()?, *nmax)?],
                    CheckName::All => checks::run_corpus()?,
                };
                Ok(self.check_lines(reports))
            }
        }
    }
}

/// Parses `args` (program name first), runs, and maps errors to exit code
/// 2 with a message on standard error.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return Outcome {
                stdout: String::new(),
                code,
            };
        }
    };
    match cli.execute() {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            Outcome {
                stdout: String::new(),
                code: 2,
            }
        }
    }
}
