use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use macaulay::gradlin::ComplementPolicy;
use macaulay::reduce::Mode;
use macaulay::FieldSpec;
use macaulay_cli::problem::{parse_grading, parse_group_file};
use macaulay_cli::{exit_code, format_result, parse_degree_range, run_text, Command, Format, Options};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CommandArg {
    Basis,
    Reduce,
    Syzygy,
    Eliminate,
    Hilbert,
    Homogenize,
    Dehomogenize,
    CheckInvariant,
    Verify,
}

impl From<CommandArg> for Command {
    fn from(c: CommandArg) -> Command {
        match c {
            CommandArg::Basis => Command::Basis,
            CommandArg::Reduce => Command::Reduce,
            CommandArg::Syzygy => Command::Syzygy,
            CommandArg::Eliminate => Command::Eliminate,
            CommandArg::Hilbert => Command::Hilbert,
            CommandArg::Homogenize => Command::Homogenize,
            CommandArg::Dehomogenize => Command::Dehomogenize,
            CommandArg::CheckInvariant => Command::CheckInvariant,
            CommandArg::Verify => Command::Verify,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RemainderArg {
    /// Subtract components lying in W (->).
    Span,
    /// Project onto the complement of W (=>), giving normal forms.
    Complement,
}

/// Macaulay bases of graded submodules of free modules over polynomial rings.
#[derive(Parser, Debug)]
#[command(name = "macaulay", version)]
struct Cli {
    command: CommandArg,
    /// Problem file, or `-` for standard input.
    file: PathBuf,
    /// Coefficient field: `q` or `fp:<p>`.
    #[arg(long)]
    coeff: Option<FieldSpec>,
    /// Overrides the file's grading, e.g. `degrevlex`, `order lex`, `elim 1`.
    #[arg(long)]
    grading: Option<String>,
    /// Interreduce the computed basis.
    #[arg(long)]
    reduced: bool,
    /// Re-run the Buchberger criterion on the output.
    #[arg(long)]
    certify: bool,
    /// Print reduction steps.
    #[arg(long)]
    trace: bool,
    #[arg(long, default_value = "text")]
    format: Format,
    #[arg(long, default_value_t = 64)]
    max_iterations: usize,
    /// Largest total degree allowed for new basis elements.
    #[arg(long)]
    degree_cap: Option<u64>,
    /// Variables kept by `eliminate`, comma separated.
    #[arg(long, value_delimiter = ',')]
    keep: Vec<String>,
    /// Homogenizing variable.
    #[arg(long)]
    var: Option<String>,
    /// Group file for `check-invariant`.
    #[arg(long)]
    group: Option<PathBuf>,
    /// Degree range `a..b` for `hilbert`.
    #[arg(long, default_value = "0..8")]
    degrees: String,
    /// Element to reduce.
    #[arg(long)]
    element: Option<String>,
    /// Complement policy: `pivot` or `orthogonal` (the default in characteristic 0).
    #[arg(long)]
    complement: Option<ComplementPolicy>,
    /// Reduction used for remainders.
    #[arg(long, value_enum, default_value = "complement")]
    remainder: RemainderArg,
    /// Random samples for the equivariance check.
    #[arg(long, default_value_t = 50)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Include wall-clock time (makes output nondeterministic).
    #[arg(long)]
    timing: bool,
}

fn read(path: &PathBuf) -> Result<String, String> {
    if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| format!("stdin: {e}"))
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let text = match read(&cli.file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let usage = |m: String| {
        eprintln!("error: {m}");
        ExitCode::from(2)
    };
    let grading = match cli.grading.as_deref().map(parse_grading).transpose() {
        Ok(g) => g,
        Err(m) => return usage(m),
    };
    let degrees = match parse_degree_range(&cli.degrees) {
        Ok(d) => d,
        Err(m) => return usage(m),
    };
    let group = match &cli.group {
        None => None,
        Some(p) => match read(p).map(|t| parse_group_file(&t)) {
            Ok(Ok(g)) => Some(g),
            Ok(Err(e)) => {
                eprintln!("error: {}: {e}", p.display());
                return ExitCode::from(exit_code(&e) as u8);
            }
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
        },
    };
    let opts = Options {
        coeff: cli.coeff,
        grading,
        reduced: cli.reduced,
        certify: cli.certify,
        trace: cli.trace,
        max_iterations: cli.max_iterations,
        degree_cap: cli.degree_cap,
        keep: cli.keep,
        var: cli.var,
        group,
        degrees,
        element: cli.element,
        complement: cli.complement,
        remainder: match cli.remainder {
            RemainderArg::Span => Mode::Span,
            RemainderArg::Complement => Mode::Complement,
        },
        samples: cli.samples,
        seed: cli.seed,
        timing: cli.timing,
    };
    match run_text(cli.command.into(), &text, &opts) {
        Ok(doc) => {
            print!("{}", format_result(&doc, cli.format));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
