use std::fs::File;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};

use horizon_core::techniques::{ColorMapFamily, SliceOrdering};
use horizon_core::{Technique, ValueDomain};
use horizon_study::render_cmd::{render_file, ImageFormat, RenderOptions};
use horizon_study::{build_bundle, load_keys, score_logs, ResultLog, StudyConfig};

#[derive(Parser)]
#[command(name = "horizon", version, about = "Compact time-series stimuli and study bundles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Ordering {
    FrontFirst,
    FrontLast,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    SeqSeq,
    SeqQual,
    SeqDiv,
    DivDiv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Svg,
    Png,
}

#[derive(Subcommand)]
enum Command {
    /// Render one series (first row of a CSV file) as a single graph.
    Render {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// cbp, hg, chg or bhg.
        #[arg(long, default_value = "chg")]
        technique: Technique,
        #[arg(long, default_value_t = 3)]
        bands: usize,
        #[arg(long, default_value_t = 3)]
        slices: usize,
        /// Steps per boxplot interval.
        #[arg(long, default_value_t = 3)]
        interval: usize,
        #[arg(long, value_enum, default_value = "front-first")]
        ordering: Ordering,
        #[arg(long, value_enum, default_value = "seq-qual")]
        family: Family,
        /// Graph side in pixels.
        #[arg(long, default_value_t = 24)]
        size: u32,
        #[arg(long, default_value_t = 1)]
        scale: u32,
        #[arg(long, value_enum, default_value = "svg")]
        format: Format,
        #[arg(long, default_value_t = 0.0)]
        min: f64,
        #[arg(long, default_value_t = 100.0)]
        max: f64,
    },
    /// Build a study bundle directory.
    Bundle {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        participants: usize,
        /// JSON study configuration; defaults apply when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Score result logs against a bundle and write a CSV report.
    Score {
        #[arg(long)]
        bundle: PathBuf,
        /// One result log per participant.
        #[arg(long = "log", required = true)]
        logs: Vec<PathBuf>,
        /// Report path; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Render {
            input,
            out,
            technique,
            bands,
            slices,
            interval,
            ordering,
            family,
            size,
            scale,
            format,
            min,
            max,
        } => {
            let opts = RenderOptions {
                technique,
                bands,
                slices,
                interval_len: interval,
                ordering: match ordering {
                    Ordering::FrontFirst => SliceOrdering::FrontFirstSlice,
                    Ordering::FrontLast => SliceOrdering::FrontLastSlice,
                },
                family: match family {
                    Family::SeqSeq => ColorMapFamily::SeqSeq,
                    Family::SeqQual => ColorMapFamily::SeqQual,
                    Family::SeqDiv => ColorMapFamily::SeqDiv,
                    Family::DivDiv => ColorMapFamily::DivDiv,
                },
                domain: ValueDomain::new(min, max)?,
                size,
                scale,
                format: match format {
                    Format::Svg => ImageFormat::Svg,
                    Format::Png => ImageFormat::Png,
                },
            };
            render_file(&input, &out, &opts)?;
        }
        Command::Bundle {
            out,
            seed,
            participants,
            config,
        } => {
            let cfg = match config {
                Some(p) => StudyConfig::load(&p)?,
                None => StudyConfig::default(),
            };
            let bundle = build_bundle(&cfg, seed, participants, &out)?;
            eprintln!(
                "wrote {} participants, {} trials, {} files to {}",
                participants,
                bundle.keys.trials.len(),
                bundle.files.len() + 2,
                out.display()
            );
        }
        Command::Score { bundle, logs, out } => {
            let keys = load_keys(&bundle)?;
            let logs = logs
                .iter()
                .map(|p| ResultLog::load(p))
                .collect::<Result<Vec<_>, _>>()?;
            let csv = score_logs(&keys, &logs)?.to_csv()?;
            match out {
                Some(p) => {
                    let mut f = File::create(&p).with_context(|| p.display().to_string())?;
                    f.write_all(csv.as_bytes())?;
                }
                None => print!("{csv}"),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => {
            eprint!("{e}");
            eprintln!("\n{}", Cli::command().render_usage());
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
