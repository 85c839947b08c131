//! The `hullforge` command-line tool.
//!
//! Exit codes: 0 success, 2 precondition failure, 3 certification failure,
//! 4 I/O or parse error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::artifact::{
    matrix_to_text, parse_json_matrix, parse_text_matrix, row_space, text_field_header, Artifact,
};
use crate::atlas::{atlas, sort_rows, to_csv, AtlasRow, CSV_HEADER};
use crate::code::{inspect, DistanceRecord, DEFAULT_BUDGET};
use crate::error::{Error, ErrorKind, Result};
use crate::gf::{prime_power, FieldRef, GaloisField};
use crate::hull::{construct_with_dual, Construction, Params, ATLAS_FAMILIES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_CERTIFICATION: i32 = 3;
pub const EXIT_INPUT: i32 = 4;

/// Environment variable overriding the certification work budget.
pub const BUDGET_VAR: &str = "HULLFORGE_BUDGET";

#[derive(Debug, Parser)]
#[command(
    name = "hullforge",
    version,
    about = "Construct and certify MDS codes with one-dimensional Euclidean hull"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a code from a named family and certify it.
    Construct(ConstructArgs),
    /// Certify a generator matrix (JSON artifact or text matrix).
    Verify(VerifyArgs),
    /// Tabulate every admissible construction over one or more fields.
    Atlas(AtlasArgs),
    /// Convert an artifact to another format.
    Export(ExportArgs),
}

#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    /// Field order (a prime power).
    #[arg(long)]
    pub q: Option<u64>,
    /// Characteristic; use with --m instead of --q.
    #[arg(long)]
    pub p: Option<u32>,
    /// Extension degree; use with --p.
    #[arg(long)]
    pub m: Option<u32>,
    /// Modulus coefficients, constant term first, e.g. `2,0,0,2,1`.
    #[arg(long, value_delimiter = ',')]
    pub modulus: Option<Vec<u32>>,
}

impl FieldArgs {
    fn given(&self) -> bool {
        self.q.is_some() || self.p.is_some() || self.m.is_some() || self.modulus.is_some()
    }

    pub fn field(&self) -> Result<FieldRef> {
        let (p, m) = match (self.q, self.p, self.m) {
            (Some(q), p, m) => {
                let (pp, mm) = prime_power(q).ok_or_else(|| {
                    Error::precondition("q a prime power", format!("q = {q}"))
                })?;
                let pp = u32::try_from(pp).map_err(|_| {
                    Error::precondition("q within bounds", format!("q = {q}"))
                })?;
                if p.is_some_and(|p| p != pp) || m.is_some_and(|m| m != mm) {
                    return Err(Error::precondition(
                        "q = p^m",
                        format!("q = {q} disagrees with --p/--m"),
                    ));
                }
                (pp, mm)
            }
            (None, Some(p), m) => (p, m.unwrap_or(1)),
            (None, None, _) => {
                return Err(Error::Parse("field required: give --q or --p/--m".into()))
            }
        };
        GaloisField::new(p, m, self.modulus.as_deref())
    }
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    /// Construction family: even-q, square (with --variant 1..12, 3a, 3b),
    /// square-<id>, xn-minus-x, subfield, roots-of-unity, additive-cosets,
    /// mult-cosets.
    #[arg(long)]
    pub family: String,
    /// Length, or the subgroup order for mult-cosets.
    #[arg(long)]
    pub n: Option<usize>,
    /// Code length for families that derive it from other parameters.
    #[arg(long = "N")]
    pub big_n: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub s: usize,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub r: Option<u32>,
    /// Subfield power for square families 9–12.
    #[arg(long)]
    pub ell: Option<u32>,
    /// Family variant: 1..8 for mult-cosets, odd-k/even-k for
    /// roots-of-unity, the family id for square.
    #[arg(long)]
    pub variant: Option<String>,
    /// Drop the length bound (mult-cosets), requiring only a free point.
    #[arg(long)]
    pub extend: bool,
    /// Emit the dual code instead.
    #[arg(long)]
    pub dual: bool,
}

impl FamilyArgs {
    pub fn construction(&self, q: u32) -> Result<Construction> {
        let params = Params {
            q,
            n: self.n,
            big_n: self.big_n,
            s: self.s,
            t: self.t,
            r: self.r,
            ell: self.ell,
            variant: self.variant.clone(),
            extend: self.extend,
            dual: self.dual,
        };
        Construction::from_params(&self.family, &params)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ArtifactFormat {
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Output file (standard output if omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: ArtifactFormat,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// JSON artifact or text matrix.
    pub file: PathBuf,
    /// Field for text matrices without a `# field:` header.
    #[command(flatten)]
    pub field: FieldArgs,
    /// Input format; guessed from the content if omitted.
    #[arg(long, value_enum)]
    pub format: Option<ArtifactFormat>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Markdown,
}

#[derive(Debug, Args)]
pub struct AtlasArgs {
    /// Field orders, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub q: Vec<u64>,
    /// Largest code length.
    #[arg(long = "max-n", alias = "max-N", default_value_t = 24)]
    pub max_n: usize,
    /// Restrict to these families (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub family: Option<Vec<String>>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: TableFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Json,
    Text,
    ParityCheck,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    /// JSON artifact written by `construct`.
    pub artifact: PathBuf,
    #[arg(long, value_enum)]
    pub format: ExportFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Budget from [`BUDGET_VAR`], accepting integers or floats such as `1e8`.
pub fn budget_from_env() -> Result<u64> {
    match std::env::var(BUDGET_VAR) {
        Err(_) => Ok(DEFAULT_BUDGET),
        Ok(s) => {
            let s = s.trim();
            s.parse::<u64>()
                .ok()
                .or_else(|| {
                    s.parse::<f64>()
                        .ok()
                        .filter(|x| x.is_finite() && *x >= 0.0)
                        .map(|x| x as u64)
                })
                .ok_or_else(|| Error::Parse(format!("{BUDGET_VAR} = `{s}` is not a number")))
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e.kind() {
        ErrorKind::Precondition => EXIT_PRECONDITION,
        ErrorKind::Certification => EXIT_CERTIFICATION,
        ErrorKind::Input => EXIT_INPUT,
    }
}

/// Machine-readable error record written to standard error.
pub fn error_record(e: &Error) -> String {
    let kind = match e.kind() {
        ErrorKind::Precondition => "precondition",
        ErrorKind::Certification => "certification",
        ErrorKind::Input => "input",
    };
    serde_json::json!({ "error": kind, "message": e.to_string() }).to_string()
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
        }
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Error::Io(e.to_string())),
    }
}

fn cmd_construct(a: &ConstructArgs, budget: u64, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let field = a.field.field()?;
    let c = a.family.construction(field.order())?;
    let hc = construct_with_dual(&field, &c, a.family.dual, budget)?;
    let cert = hc.cert.as_ref().expect("constructed codes are certified");
    let _ = writeln!(
        stderr,
        "{} over GF({}): [{}, {}, {}], hull dimension {}",
        hc.family_name(),
        field.order(),
        cert.n,
        cert.k,
        cert.d,
        cert.hull_dim
    );
    let text = match a.format {
        ArtifactFormat::Json => Artifact::from_hull(&hc).to_json() + "\n",
        ArtifactFormat::Text => matrix_to_text(&hc.spec.generator()),
    };
    emit(&a.out, &text, stdout)?;
    Ok(EXIT_OK)
}

fn load_artifact(path: &Path, field: &FieldArgs, format: Option<ArtifactFormat>) -> Result<Artifact> {
    let text = read(path)?;
    let json = match format {
        Some(f) => f == ArtifactFormat::Json,
        None => text.trim_start().starts_with('{'),
    };
    if json {
        let a = parse_json_matrix(&text)?;
        if field.given() && field.field()?.descriptor() != a.field {
            return Err(Error::Parse(
                "field flags disagree with the field stored in the file".into(),
            ));
        }
        return Ok(a);
    }
    let f = if field.given() {
        field.field()?
    } else {
        text_field_header(&text)?
            .ok_or_else(|| {
                Error::Parse("text matrix has no `# field:` header; give --q or --p/--m".into())
            })?
            .build()?
    };
    Ok(Artifact::from_matrix(&parse_text_matrix(&f, &text)?))
}

fn cmd_verify(a: &VerifyArgs, budget: u64, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let art = load_artifact(&a.file, &a.field, a.format)?;
    let g = art.generator()?;
    let code = row_space(&g);
    if code.dim() < g.rows() {
        let _ = writeln!(
            stderr,
            "note: generator has rank {} < {} rows; verifying its row space",
            code.dim(),
            g.rows()
        );
    }
    let cert = match art.hull_code()? {
        Some(mut hc) => {
            // A construction record promises hull dimension 1 and MDS; hold
            // the file to that and to its hull witness.
            match hc.certify(budget) {
                Ok(c) => c.clone(),
                Err(e) => {
                    let cert = inspect(&code, budget, None)?;
                    let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&cert).unwrap());
                    return Err(e);
                }
            }
        }
        None => inspect(&code, budget, None)?,
    };
    let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&cert).unwrap());
    if cert.is_hull_one_mds() {
        Ok(EXIT_OK)
    } else {
        let _ = writeln!(
            stderr,
            "{}",
            error_record(&Error::Certification(format!(
                "not a 1-d-hull MDS code: hull dimension {}, d = {}, MDS = {}",
                cert.hull_dim, cert.d, cert.is_mds
            )))
        );
        Ok(EXIT_CERTIFICATION)
    }
}

fn markdown(rows: &[AtlasRow]) -> String {
    let mut out = String::from("| q | family | params | N | K | d | certified | reason |\n");
    out.push_str("|---|---|---|---|---|---|---|---|\n");
    for r in rows {
        let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        let d = match r.d {
            DistanceRecord::Unverified => String::new(),
            d => d.to_string(),
        };
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} | {} | {} |\n",
            r.q,
            r.family,
            r.params,
            opt(r.n),
            opt(r.k),
            d,
            r.certified,
            r.reason.replace('|', "\\|")
        ));
    }
    out
}

/// Validates a family filter against [`ATLAS_FAMILIES`] and square ids.
fn check_families(list: &[String]) -> Result<()> {
    for f in list {
        let ok = ATLAS_FAMILIES.contains(&f.as_str())
            || f.strip_prefix("square-")
                .is_some_and(|id| crate::hull::SquareFamily::parse(id).is_some());
        if !ok {
            return Err(Error::Parse(format!(
                "unknown family `{f}` (expected one of {})",
                ATLAS_FAMILIES.join(", ")
            )));
        }
    }
    Ok(())
}

/// The atlas table for several fields, as text.
pub fn atlas_table(qs: &[u64], max_n: usize, families: Option<&[String]>, budget: u64, format: TableFormat) -> Result<String> {
    if let Some(list) = families {
        check_families(list)?;
    }
    let mut rows = Vec::new();
    let mut qs = qs.to_vec();
    qs.sort_unstable();
    qs.dedup();
    for q in qs {
        let f = GaloisField::of_order(q)?;
        rows.extend(atlas(&f, max_n, families, budget));
    }
    sort_rows(&mut rows);
    Ok(match format {
        TableFormat::Csv => to_csv(&rows),
        TableFormat::Markdown => markdown(&rows),
    })
}

fn cmd_atlas(a: &AtlasArgs, budget: u64, stdout: &mut dyn Write) -> Result<i32> {
    let table = atlas_table(&a.q, a.max_n, a.family.as_deref(), budget, a.format)?;
    debug_assert!(a.format != TableFormat::Csv || table.starts_with(CSV_HEADER));
    emit(&a.out, &table, stdout)?;
    Ok(EXIT_OK)
}

fn cmd_export(a: &ExportArgs, stdout: &mut dyn Write) -> Result<i32> {
    let art = parse_json_matrix(&read(&a.artifact)?)?;
    // Reject artifacts whose recorded construction is inconsistent.
    art.hull_code()?;
    let g = art.generator()?;
    let text = match a.format {
        ExportFormat::Json => art.to_json() + "\n",
        ExportFormat::Text => matrix_to_text(&g),
        ExportFormat::ParityCheck => matrix_to_text(row_space(&g).dual().generator()),
    };
    emit(&a.out, &text, stdout)?;
    Ok(EXIT_OK)
}

/// Runs the tool on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                EXIT_INPUT
            } else {
                let _ = write!(stdout, "{}", e.render());
                EXIT_OK
            };
        }
    };
    let result = budget_from_env().and_then(|budget| match &cli.command {
        Command::Construct(a) => cmd_construct(a, budget, stdout, stderr),
        Command::Verify(a) => cmd_verify(a, budget, stdout, stderr),
        Command::Atlas(a) => cmd_atlas(a, budget, stdout),
        Command::Export(a) => cmd_export(a, stdout),
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "{}", error_record(&e));
            exit_code(&e)
        }
    }
}
