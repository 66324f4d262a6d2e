//! The `lexkit` command line.
//!
//! Exit codes are the same for every subcommand: 0 when the input conforms,
//! 1 on violations, 2 on unreadable or malformed input. Findings go to
//! standard output as `PATH<TAB>KIND<TAB>MESSAGE` lines; summaries and
//! warnings go to standard error.

mod commands;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::report::{Finding, Report};

pub const REGISTRY_ENV: &str = "LEXKIT_REGISTRY";

#[derive(Debug, Parser)]
#[command(name = "lexkit", version, about = "Model, validate and convert lexical resources")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a lexicon instance against a model, or a dictionary entry
    /// against a schema.
    Validate(ValidateArgs),
    /// Convert between flat lexica, dictionary entries and lexicon instances.
    Convert(ConvertArgs),
    /// Query a data category registry.
    Registry(RegistryArgs),
    /// Compile a customized entry schema, print its summary or
    /// documentation, or validate an entry with it.
    Schema(SchemaArgs),
    /// Well-formedness, formatting and structural comparison of XML files.
    Xml(XmlArgs),
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Also write an XML report to this file.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Record the current time in the XML report.
    #[arg(long)]
    pub stamp: bool,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Lexicon instance to validate.
    #[arg(long, conflicts_with = "tei", required_unless_present = "tei")]
    pub lmf: Option<PathBuf>,
    /// Dictionary entry to validate.
    #[arg(long)]
    pub tei: Option<PathBuf>,
    /// Lexical model file; defaults to the bundled full-form model.
    #[arg(long, requires = "lmf")]
    pub model: Option<PathBuf>,
    /// Data category registry; defaults to the bundled one.
    #[arg(long, env = REGISTRY_ENV)]
    pub registry: Option<PathBuf>,
    /// Language of the instance, overriding any it declares.
    #[arg(long, requires = "lmf")]
    pub lang: Option<String>,
    /// Entry schema; only the built-in `base` is available.
    #[arg(long, default_value = "base", requires = "tei")]
    pub schema: String,
    /// Customization applied to the schema first.
    #[arg(long, requires = "tei")]
    pub customization: Option<PathBuf>,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SourceFormat {
    /// One surface form per line with codes, lemma and part of speech.
    Flat,
    /// A dictionary `<entry>`.
    Tei,
    /// A lexicon instance.
    Lmf,
    /// Tab-separated gloss/form pairs of a pronoun table.
    Pronouns,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetFormat {
    Lmf,
    Tei,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    #[arg(long, value_enum)]
    pub from: SourceFormat,
    #[arg(long, value_enum)]
    pub to: TargetFormat,
    pub input: PathBuf,
    /// Output file; standard output when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Lexical model file for the lexicon side.
    #[arg(long)]
    pub model: Option<PathBuf>,
    #[arg(long, env = REGISTRY_ENV)]
    pub registry: Option<PathBuf>,
    /// Code table for flat lexica; defaults to the bundled French table.
    #[arg(long)]
    pub codes: Option<PathBuf>,
    /// Entry mapping; defaults to the bundled one.
    #[arg(long)]
    pub mapping: Option<PathBuf>,
    /// Object language recorded on converted pronoun tables.
    #[arg(long)]
    pub lang: Option<String>,
    /// Start the output with an XML declaration.
    #[arg(long)]
    pub xml_decl: bool,
}

#[derive(Debug, Args)]
pub struct RegistryArgs {
    #[arg(long, env = REGISTRY_ENV, global = true)]
    pub registry: Option<PathBuf>,
    #[command(subcommand)]
    pub action: RegistryAction,
}

#[derive(Debug, Subcommand)]
pub enum RegistryAction {
    /// Print every field of a category.
    Get { id: String },
    /// Print the values of a category, restricted to a language if given.
    Domain {
        id: String,
        #[arg(long)]
        lang: Option<String>,
    },
    /// Print the ids of categories named NAME in a language.
    Find {
        name: String,
        #[arg(long)]
        lang: String,
    },
}

#[derive(Debug, Args)]
pub struct SchemaArgs {
    #[arg(long)]
    pub customization: Option<PathBuf>,
    /// Emit the generated documentation instead of the summary.
    #[arg(long)]
    pub doc: bool,
    /// Output file; standard output when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Validate this entry with the compiled schema instead.
    #[arg(long, conflicts_with_all = ["doc", "output"])]
    pub validate: Option<PathBuf>,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Args)]
pub struct XmlArgs {
    #[command(subcommand)]
    pub action: XmlAction,
}

#[derive(Debug, Subcommand)]
pub enum XmlAction {
    /// Check well-formedness.
    Check { file: PathBuf },
    /// Reprint a file, indented unless --compact.
    Format {
        file: PathBuf,
        #[arg(long)]
        compact: bool,
        #[arg(long)]
        xml_decl: bool,
    },
    /// Find the element renaming that maps A onto B.
    Iso { a: PathBuf, b: PathBuf },
}

/// Runs the command line with explicit output streams and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut io = commands::Io { out, err };
    let result = match cli.command {
        Command::Validate(a) => commands::validate(&a, &mut io),
        Command::Convert(a) => commands::convert(&a, &mut io),
        Command::Registry(a) => commands::registry(&a, &mut io),
        Command::Schema(a) => commands::schema(&a, &mut io),
        Command::Xml(a) => commands::xml(&a, &mut io),
    };
    match result {
        Ok(code) => code,
        Err(report) => {
            let _ = io.out.write_all(report.to_tsv().as_bytes());
            let _ = writeln!(io.err, "{}", report.summary());
            report.exit_code()
        }
    }
}

/// Entry point of the `lexkit` binary.
pub fn main() -> std::process::ExitCode {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock());
    std::process::ExitCode::from(code as u8)
}

pub(crate) fn io_error(path: &std::path::Path, e: std::io::Error) -> Report {
    Report::error(Finding::new(path.display().to_string(), "Io", e.to_string()))
}
