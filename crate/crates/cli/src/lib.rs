//! Command-line front end for `gk-core`.
//!
//! Exit statuses: 0 success, 1 usage error, 2 input-format error, 3 degree
//! cap exceeded. Results go to the output stream, diagnostics to the error
//! stream.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use gk_core::constants::{constants_report, l_polynomial, ConstantsError};
use gk_core::jgd::{parse_jgd, to_inline_jgd, JgdObject};
use gk_core::linalg::{fraction_string, rank_exact, rank_modular_with, ModularOptions};
use gk_core::pairing::{contract, contract_full, zeta_evaluate, PairingError, SurgeryGraph};
use gk_core::relations::{
    a_space_basis_with, enumerate_with, poly_ring_dims, reduce, BasisOptions, EnumOptions,
    RelationError, DEFAULT_DEGREE_CAP,
};
use gk_core::{automorphisms, canonicalize, ASpaceBasis, CanonicalClass, Diagram, DiagramVector};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

/// Degrees from which enumeration takes noticeable time.
const SLOW_DEGREE: usize = 12;

#[derive(Parser, Debug)]
#[command(name = "gk", version, about = "Computations with trivalent diagrams modulo IHX and AS")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Largest degree accepted by enumeration.
    #[arg(long, default_value_t = DEFAULT_DEGREE_CAP, global = true)]
    cap: usize,
    /// Skip exact re-verification of modular ranks.
    #[arg(long, global = true)]
    no_verify: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List diagram classes of a degree.
    Enum {
        #[arg(short = 'n')]
        degree: usize,
        /// Include diagrams with loops.
        #[arg(long)]
        tadpoles: bool,
    },
    /// Dimension of the quotient space in a degree.
    Dim {
        #[arg(short = 'n')]
        degree: usize,
        /// Use the modular rank (verified exactly unless --no-verify).
        #[arg(long)]
        modular: bool,
    },
    /// Basis of the quotient space and coordinates of every generator.
    Basis {
        #[arg(short = 'n')]
        degree: usize,
    },
    /// Coordinates of a diagram in the basis of its degree.
    Reduce { file: PathBuf },
    /// Pair surgery data against a test diagram.
    Pair {
        surgery: PathBuf,
        test: PathBuf,
        /// Only the identity placement of vertices.
        #[arg(long)]
        identity: bool,
    },
    /// Evaluate surgery data in the quotient space.
    Zeta {
        surgery: PathBuf,
        /// Per-vertex weights; overrides the file.
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<u64>>,
    },
    /// Framing constants for fiber dimension 2k-1.
    Const {
        #[arg(long)]
        k: usize,
    },
    /// Hirzebruch L-polynomial L_k.
    Lpoly {
        #[arg(long)]
        k: usize,
    },
    /// Graded dimensions of the free polynomial algebra on the given dims.
    Polydim {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        dims: Vec<i64>,
        #[arg(long)]
        max: usize,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Cap(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Cap(_) => 3,
        }
    }
}

impl From<RelationError> for CliError {
    fn from(e: RelationError) -> Self {
        match e {
            RelationError::DegreeTooLarge { .. } => CliError::Cap(format!("{e}; raise it with --cap")),
            RelationError::DegreeMismatch { .. } => CliError::Input(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<ConstantsError> for CliError {
    fn from(e: ConstantsError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<PairingError> for CliError {
    fn from(e: PairingError) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Parse `argv` (program name first), run, and return the exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                1
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    if let Err(e) = configure_threads() {
        let _ = writeln!(err, "error: {e}");
        return e.code();
    }
    match dispatch(&cli, err) {
        Ok(text) => match out.write_all(text.as_bytes()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                1
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("GK_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("GK_THREADS must be a positive integer, found `{value}`")))?;
    // a pool installed by an earlier call in the same process stays in place
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

fn dispatch(cli: &Cli, err: &mut dyn Write) -> Result<String, CliError> {
    let structured = cli.format == Format::Structured;
    match &cli.command {
        Command::Enum { degree, tadpoles } => {
            warn_if_slow(*degree, cli.cap, err);
            let classes = enumerate_with(
                *degree,
                &EnumOptions {
                    allow_tadpoles: *tadpoles,
                    cap: cli.cap,
                },
            )?;
            Ok(render_enum(*degree, &classes, structured))
        }
        Command::Dim { degree, modular } => {
            warn_if_slow(*degree, cli.cap, err);
            let b = basis(*degree, cli.cap)?;
            let dim = if *modular {
                let opts = ModularOptions {
                    verify: !cli.no_verify,
                    ..ModularOptions::default()
                };
                let rank = rank_modular_with(b.relation_matrix(), &opts)
                    .map_err(|e| CliError::Input(e.to_string()))?;
                b.generators().len() - rank
            } else {
                b.generators().len() - rank_exact(b.relation_matrix())
            };
            debug_assert_eq!(dim, b.dimension());
            Ok(if structured {
                toml_doc(&DimDoc { degree: *degree, dimension: dim })
            } else {
                format!("{dim}\n")
            })
        }
        Command::Basis { degree } => {
            warn_if_slow(*degree, cli.cap, err);
            let b = basis(*degree, cli.cap)?;
            Ok(render_basis(&b, structured))
        }
        Command::Reduce { file } => {
            let obj = read_jgd(file)?;
            let d = obj.diagram();
            warn_if_slow(d.vertex_count(), cli.cap, err);
            let b = basis(d.vertex_count(), cli.cap)?;
            let coords = reduce(&DiagramVector::from_diagram(d), &b)?;
            Ok(render_coordinates(&b, &coords, structured))
        }
        Command::Pair {
            surgery,
            test,
            identity,
        } => {
            let s = surgery_graph(&read_jgd(surgery)?, None)?;
            let t = read_jgd(test)?;
            let value = if *identity {
                contract(&s, t.diagram())?
            } else {
                contract_full(&s, t.diagram())?
            };
            Ok(if structured {
                toml_doc(&PairDoc {
                    placement: if *identity { "identity" } else { "all" },
                    value: fraction_string(&value),
                })
            } else {
                format!("{}\n", fraction_string(&value))
            })
        }
        Command::Zeta { surgery, weights } => {
            let s = surgery_graph(&read_jgd(surgery)?, weights.clone())?;
            warn_if_slow(s.shape().vertex_count(), cli.cap, err);
            let b = basis(s.shape().vertex_count(), cli.cap)?;
            let coords = zeta_evaluate(&s, &b)?;
            Ok(render_coordinates(&b, &coords, structured))
        }
        Command::Const { k } => {
            let report = constants_report(*k)?;
            let fields = report.fields();
            Ok(if structured {
                let mut doc = toml::Table::new();
                let mut values = toml::Table::new();
                for (name, value) in fields {
                    values.insert(name.to_string(), toml::Value::String(value));
                }
                doc.insert("k".into(), toml::Value::Integer(*k as i64));
                doc.insert("constants".into(), toml::Value::Table(values));
                toml::to_string(&doc).expect("string tables serialize")
            } else {
                fields.iter().map(|(n, v)| format!("{n} = {v}\n")).collect()
            })
        }
        Command::Lpoly { k } => {
            let l = l_polynomial(*k)?;
            Ok(if structured {
                let terms = l
                    .terms()
                    .into_iter()
                    .map(|(exps, c)| TermDoc {
                        exponents: exps,
                        coefficient: fraction_string(&c),
                    })
                    .collect();
                toml_doc(&LpolyDoc { k: *k, term: terms })
            } else {
                format!("{l}\n")
            })
        }
        Command::Polydim { dims, max } => {
            let row = poly_ring_dims(dims, *max)?;
            let row: Vec<String> = row.iter().map(ToString::to_string).collect();
            Ok(if structured {
                toml_doc(&PolyDoc {
                    max_degree: *max,
                    dims: row,
                })
            } else {
                format!("{}\n", row.join(" "))
            })
        }
    }
}

fn warn_if_slow(degree: usize, cap: usize, err: &mut dyn Write) {
    if degree >= SLOW_DEGREE && degree <= cap {
        let _ = writeln!(
            err,
            "warning: degree {degree} enumeration grows super-exponentially and may take minutes"
        );
    }
}

fn basis(degree: usize, cap: usize) -> Result<ASpaceBasis, CliError> {
    Ok(a_space_basis_with(degree, &BasisOptions { cap })?)
}

fn read_jgd(path: &Path) -> Result<JgdObject, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_jgd(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Weights from the command line, else from the file, else 2 everywhere.
fn surgery_graph(obj: &JgdObject, weights: Option<Vec<u64>>) -> Result<SurgeryGraph, CliError> {
    let d = obj.diagram().clone();
    let weights = weights
        .or_else(|| obj.weights().map(<[u64]>::to_vec))
        .unwrap_or_else(|| vec![2; d.vertex_count()]);
    SurgeryGraph::new(d, weights).map_err(|e| CliError::Usage(e.to_string()))
}

/// Display name of a class: a familiar name when there is one.
fn class_name(class: &CanonicalClass, index: usize) -> String {
    let named = [
        (Diagram::theta(), "Theta"),
        (Diagram::k4(), "K4"),
        (Diagram::doubled_cycle(), "DoubledCycle"),
    ];
    named
        .iter()
        .find(|(d, _)| canonicalize(d).0 == *class)
        .map(|(_, n)| n.to_string())
        .unwrap_or_else(|| format!("G{index}"))
}

fn expression(b: &ASpaceBasis, coords: &[BigRational]) -> String {
    let mut out = String::new();
    for (&j, c) in b.basis_columns().iter().zip(coords) {
        if c.is_zero() {
            continue;
        }
        let name = class_name(&b.generators()[j], j);
        let mag = fraction_string(&c.abs());
        if out.is_empty() {
            let sign = if c.is_negative() { "-" } else { "" };
            out.push_str(&format!("{sign}{mag} * [{name}]"));
        } else {
            let sign = if c.is_negative() { "-" } else { "+" };
            out.push_str(&format!(" {sign} {mag} * [{name}]"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn fractions(v: &[BigRational]) -> Vec<String> {
    v.iter().map(fraction_string).collect()
}

fn toml_doc<T: Serialize>(doc: &T) -> String {
    toml::to_string(doc).expect("documents serialize")
}

#[derive(Serialize)]
struct DimDoc {
    degree: usize,
    dimension: usize,
}

#[derive(Serialize)]
struct PairDoc {
    placement: &'static str,
    value: String,
}

#[derive(Serialize)]
struct TermDoc {
    exponents: Vec<u32>,
    coefficient: String,
}

#[derive(Serialize)]
struct LpolyDoc {
    k: usize,
    term: Vec<TermDoc>,
}

#[derive(Serialize)]
struct PolyDoc {
    max_degree: usize,
    dims: Vec<String>,
}

#[derive(Serialize)]
struct ClassDoc {
    name: String,
    aut_order: u64,
    as_zero: bool,
    tadpole: bool,
    jgd: String,
}

#[derive(Serialize)]
struct EnumDoc {
    degree: usize,
    count: usize,
    class: Vec<ClassDoc>,
}

#[derive(Serialize)]
struct GeneratorDoc {
    name: String,
    jgd: String,
    coordinates: Vec<String>,
}

#[derive(Serialize)]
struct BasisDoc {
    degree: usize,
    dimension: usize,
    basis: Vec<String>,
    generator: Vec<GeneratorDoc>,
}

#[derive(Serialize)]
struct CoordinatesDoc {
    degree: usize,
    basis: Vec<String>,
    coordinates: Vec<String>,
    expression: String,
}

fn render_enum(degree: usize, classes: &[CanonicalClass], structured: bool) -> String {
    let docs: Vec<ClassDoc> = classes
        .iter()
        .enumerate()
        .map(|(i, c)| ClassDoc {
            name: class_name(c, i),
            aut_order: automorphisms(c.form()).aut_order,
            as_zero: c.as_zero(),
            tadpole: c.has_tadpole(),
            jgd: to_inline_jgd(c.form()),
        })
        .collect();
    if structured {
        return toml_doc(&EnumDoc {
            degree,
            count: docs.len(),
            class: docs,
        });
    }
    let mut out = format!("{} classes of degree {degree}\n", docs.len());
    for c in docs {
        let mut flags = Vec::new();
        if c.as_zero {
            flags.push("as_zero");
        }
        if c.tadpole {
            flags.push("tadpole");
        }
        let flags = if flags.is_empty() {
            String::new()
        } else {
            format!(" [{}]", flags.join(", "))
        };
        out.push_str(&format!("{}: aut {}{flags}: {}\n", c.name, c.aut_order, c.jgd));
    }
    out
}

fn render_basis(b: &ASpaceBasis, structured: bool) -> String {
    let names: Vec<String> = b
        .basis_columns()
        .iter()
        .map(|&j| class_name(&b.generators()[j], j))
        .collect();
    let coords = b.generator_coordinates();
    let generators: Vec<GeneratorDoc> = b
        .generators()
        .iter()
        .zip(&coords)
        .enumerate()
        .map(|(i, (c, x))| GeneratorDoc {
            name: class_name(c, i),
            jgd: to_inline_jgd(c.form()),
            coordinates: fractions(x),
        })
        .collect();
    if structured {
        return toml_doc(&BasisDoc {
            degree: b.degree(),
            dimension: b.dimension(),
            basis: names,
            generator: generators,
        });
    }
    let mut out = format!(
        "degree {}\ndimension {}\nbasis {}\n",
        b.degree(),
        b.dimension(),
        names.join(" ")
    );
    for g in generators {
        out.push_str(&format!("{} = ({}): {}\n", g.name, g.coordinates.join(", "), g.jgd));
    }
    out
}

fn render_coordinates(b: &ASpaceBasis, coords: &[BigRational], structured: bool) -> String {
    let expr = expression(b, coords);
    if structured {
        let basis = b
            .basis_columns()
            .iter()
            .map(|&j| class_name(&b.generators()[j], j))
            .collect();
        toml_doc(&CoordinatesDoc {
            degree: b.degree(),
            basis,
            coordinates: fractions(coords),
            expression: expr,
        })
    } else {
        format!("{expr}\n")
    }
}
