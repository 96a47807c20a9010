use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qlk::{
    cmd_char, cmd_classify, cmd_deligne, cmd_mlde, cmd_report_deligne_a1, cmd_variety, render_json, render_text,
    SeriesSource, DEFAULT_MAX_ORDER, DEFAULT_N,
};
use qlk_core::Error;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "qlk", version, about = "Levels, vacuum characters, associated varieties and MLDEs for affine vertex algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads (overrides QLK_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Admissibility, integrability and predicted variety of a level.
    Classify {
        #[arg(long)]
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
    },
    /// The Deligne series at its distinguished negative levels.
    Deligne,
    /// Associated variety of the simple vacuum module (sl2).
    Variety {
        #[arg(long, default_value = "A1")]
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[arg(long = "N", default_value_t = DEFAULT_N)]
        n: usize,
    },
    /// Vacuum character of the simple quotient (sl2).
    Char {
        #[arg(long, default_value = "A1")]
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[arg(long = "N", default_value_t = DEFAULT_N)]
        n: usize,
    },
    /// Minimal MLDE of a q-series read from FILE, stdin (`-` or no
    /// argument) or computed from `--level`.
    Mlde {
        file: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "file")]
        level: Option<String>,
        #[arg(long = "N", default_value_t = DEFAULT_N)]
        n: usize,
        #[arg(long = "max-order", default_value_t = DEFAULT_MAX_ORDER)]
        max_order: usize,
    },
    /// End-to-end consistency report for sl2 at k = -4/3.
    ReportDeligneA1 {
        #[arg(long = "N", default_value_t = DEFAULT_N)]
        n: usize,
        #[arg(long = "max-order", default_value_t = DEFAULT_MAX_ORDER)]
        max_order: usize,
    },
}

fn threads(flag: Option<usize>) -> Result<Option<usize>, Error> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var("QLK_THREADS") {
        Ok(s) => s.trim().parse().map(Some).map_err(|_| Error::Parse(format!("QLK_THREADS={s} is not a thread count"))),
        Err(_) => Ok(None),
    }
}

fn read_source(file: Option<PathBuf>) -> Result<String, Error> {
    let mut text = String::new();
    match file {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(&p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin().read_to_string(&mut text).map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

fn run(cli: Cli) -> Result<String, Error> {
    if let Some(n) = threads(cli.threads)? {
        // a second initialization only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let value = match cli.command {
        Command::Classify { g, k } => cmd_classify(&g, &k)?,
        Command::Deligne => cmd_deligne()?,
        Command::Variety { g, k, n } => cmd_variety(&g, &k, n)?,
        Command::Char { g, k, n } => cmd_char(&g, &k, n)?,
        Command::Mlde { file, level, n, max_order } => {
            let source = match level {
                Some(k) => SeriesSource::Level { k, n },
                None => SeriesSource::Text(read_source(file)?),
            };
            cmd_mlde(source, max_order)?
        }
        Command::ReportDeligneA1 { n, max_order } => cmd_report_deligne_a1(n, max_order)?,
    };
    Ok(match cli.format {
        Format::Json => render_json(&value),
        Format::Text => render_text(&value),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    match run(cli) {
        Ok(s) => match out {
            Some(p) => match std::fs::write(&p, s) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("qlk: cannot write {}: {e}", p.display());
                    ExitCode::from(4)
                }
            },
            None => {
                print!("{s}");
                ExitCode::SUCCESS
            }
        },
        Err(e) => {
            eprintln!("qlk: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
