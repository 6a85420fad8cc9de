use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use scheme_pair::construct::{assemble_from, Rank3Blocks};
use scheme_pair::dihedral;
use scheme_pair::format::{read_had, read_scm, read_scheme, write_scm};
use scheme_pair::rank3::{paley_tournament, skew_hadamard_to_rank3, validate_rank3_colors, Rank3Error};
use scheme_pair::report::{run_report, ReportInput};
use scheme_pair::scheme::{SchemeMeta, Variant};

const EXIT_IO: u8 = 1;
const EXIT_PARAMETER: u8 = 2;
const EXIT_INPUT: u8 = 3;
const EXIT_AXIOM: u8 = 4;
const EXIT_CERTIFICATE: u8 = 5;

/// Build and certify the D/Q pair of rank-8 association schemes.
#[derive(Parser)]
#[command(name = "scheme-pair", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a non-symmetric rank-3 scheme (doubly regular tournament).
    GenRank3 {
        #[command(flatten)]
        source: Rank3Source,
        /// Output file, or `-` for standard output.
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Build D and/or Q from a rank-3 scheme file.
    Build {
        #[arg(long, value_enum, default_value = "both")]
        variant: VariantArg,
        #[command(flatten)]
        input: BuildInput,
        /// Output stem; files are written to `<stem>.D.scm` and `<stem>.Q.scm`.
        /// `-` writes to standard output.
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Check the scheme axioms of a `.scm` file and print its basic data.
    Verify { file: String },
    /// Build both schemes and certify tables, indicators and algebra structure.
    Report {
        #[command(flatten)]
        input: ReportSource,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Rank3Source {
    /// Paley tournament on GF(q), q prime and 3 mod 4.
    #[arg(long)]
    paley: Option<u64>,
    /// Skew-Hadamard matrix in `.had` format.
    #[arg(long)]
    hadamard: Option<String>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct BuildInput {
    #[arg(long)]
    input: Option<String>,
    /// Use A_1 = A_2 = O (n = 2), which yields D8 and Q8.
    #[arg(long)]
    degenerate: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ReportSource {
    #[arg(long)]
    paley: Option<u64>,
    #[arg(long)]
    input: Option<String>,
    #[arg(long)]
    degenerate: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    #[value(name = "D")]
    D,
    #[value(name = "Q")]
    Q,
    Both,
}

impl VariantArg {
    fn variants(self) -> Vec<Variant> {
        match self {
            VariantArg::D => vec![Variant::D],
            VariantArg::Q => vec![Variant::Q],
            VariantArg::Both => vec![Variant::D, Variant::Q],
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl ToString) -> Failure {
    Failure {
        code,
        message: message.to_string(),
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| fail(EXIT_IO, format!("stdin: {e}")))?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| fail(EXIT_IO, format!("{path}: {e}")))
}

fn write_output(path: &str, text: &str) -> Result<(), Failure> {
    if path == "-" {
        io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| fail(EXIT_IO, format!("stdout: {e}")))
    } else {
        fs::write(Path::new(path), text).map_err(|e| fail(EXIT_IO, format!("{path}: {e}")))
    }
}

fn gen_rank3(source: &Rank3Source, output: &str) -> Result<(), Failure> {
    let r = match (&source.paley, &source.hadamard) {
        (Some(q), _) => paley_tournament(*q).map_err(|e| fail(EXIT_PARAMETER, e))?,
        (_, Some(path)) => {
            let h = read_had(&read_input(path)?).map_err(|e| fail(EXIT_INPUT, e))?;
            skew_hadamard_to_rank3(&h).map_err(|e| fail(EXIT_INPUT, e))?
        }
        _ => unreachable!("clap requires one source"),
    };
    let labels = vec!["A_0".to_string(), "A_1".to_string(), "A_2".to_string()];
    let meta = SchemeMeta::new(Variant::Rank3, r.n() as i64, r.a() as i64, r.b() as i64, labels);
    write_output(output, &write_scm(r.scheme(), Some(&meta)))
}

fn build(variant: VariantArg, input: &BuildInput, output: &str) -> Result<(), Failure> {
    let blocks = match &input.input {
        Some(path) => {
            let file = read_scm(&read_input(path)?).map_err(|e| fail(EXIT_INPUT, e))?;
            let r = validate_rank3_colors(file.order, &file.colors).map_err(|e| {
                let message = match &e {
                    Rank3Error::Identity(failures) => failures
                        .iter()
                        .map(|f| format!("input fails {f}"))
                        .collect::<Vec<_>>()
                        .join("\n"),
                    other => format!("input rejected: {other}"),
                };
                fail(EXIT_INPUT, message)
            })?;
            Rank3Blocks::from(&r)
        }
        None => Rank3Blocks::degenerate(),
    };
    for v in variant.variants() {
        let (scheme, meta) = assemble_from(v, &blocks).map_err(|e| fail(EXIT_AXIOM, e))?;
        let text = write_scm(&scheme, Some(&meta));
        if output == "-" {
            write_output("-", &text)?;
        } else {
            write_output(&format!("{output}.{v}.scm"), &text)?;
        }
    }
    Ok(())
}

fn verify(path: &str) -> Result<(), Failure> {
    let (scheme, meta) = read_scheme(&read_input(path)?).map_err(|e| fail(EXIT_AXIOM, e))?;
    let valencies: Vec<String> = scheme.valencies().iter().map(u64::to_string).collect();
    let mut out = String::new();
    out.push_str("valid association scheme\n");
    if let Some(meta) = &meta {
        out.push_str(&format!("variant: {}\n", meta.variant));
    }
    out.push_str(&format!("order: {}\n", scheme.order()));
    out.push_str(&format!("rank: {}\n", scheme.rank()));
    out.push_str(&format!("valencies: {}\n", valencies.join(",")));
    out.push_str(&format!("symmetric relations: {}\n", scheme.symmetric_relation_count()));
    out.push_str(&format!(
        "commutative: {}\n",
        if scheme.is_commutative() { "yes" } else { "no" }
    ));
    write_output("-", &out)
}

fn report(source: &ReportSource) -> Result<(), Failure> {
    let input = match (&source.paley, &source.input) {
        (Some(q), _) => ReportInput::Paley(*q),
        (_, Some(path)) => {
            let file = read_scm(&read_input(path)?).map_err(|e| fail(EXIT_INPUT, e))?;
            ReportInput::Colors {
                order: file.order,
                colors: file.colors,
                description: path.clone(),
            }
        }
        _ => ReportInput::Degenerate,
    };
    let report = run_report(&input).map_err(|e| fail(e.exit_code() as u8, e))?;
    write_output("-", &report.render())?;
    if report.passed() {
        Ok(())
    } else {
        Err(fail(EXIT_CERTIFICATE, "report: one or more checks failed"))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(EXIT_PARAMETER);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    if let Err(what) = dihedral::self_test() {
        eprintln!("group self-test failed: {what}");
        return ExitCode::from(EXIT_CERTIFICATE);
    }
    let result = match &cli.command {
        Command::GenRank3 { source, output } => gen_rank3(source, output),
        Command::Build {
            variant,
            input,
            output,
        } => build(*variant, input, output),
        Command::Verify { file } => verify(file),
        Command::Report { input } => report(input),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
