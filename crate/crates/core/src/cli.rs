//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for usage errors, 2 for data or format
//! errors. Every run echoes its effective configuration on the diagnostic
//! stream; payloads on stdout or in `--out` files never carry timestamps.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bridge::{export_candidates, load_scores, write_candidates, ExportManifest};
use crate::config::Config;
use crate::corpus::{align_gold, read_conllu, read_gold, AlignedCorpus, Segmentation, Sentence};
use crate::error::{Error, Result};
use crate::eval::{evaluate_corpus, length_stats};
use crate::evo::evolve;
use crate::pipeline::Method;
use crate::render::{render, Format, RenderOptions};
use crate::tree::ScoringWeights;

#[derive(Parser, Debug)]
#[command(name = "rhesis", version, about = "Segment parsed sentences into units of meaning")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// TOML configuration; defaults to $RHESIS_CONFIG.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Cascade,
    Tree,
    Scores,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Txt,
    Records,
    Html,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Segment a CoNLL-U file.
    Segment {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "cascade")]
        method: MethodArg,
        /// Weight file for the tree method.
        #[arg(long)]
        weights: Option<PathBuf>,
        /// Score table for the scores method.
        #[arg(long)]
        scores: Option<PathBuf>,
        /// Overrides span.max_chars.
        #[arg(long)]
        span: Option<usize>,
        #[arg(long, value_enum, default_value = "txt")]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Tune tree weights against a gold corpus.
    Tune {
        #[arg(long)]
        conllu: PathBuf,
        #[arg(long)]
        gold: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        generations: Option<usize>,
        /// Weight file to write; the run manifest goes next to it.
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Compare an automatic segmentation with a gold one.
    Eval {
        #[arg(long)]
        auto: PathBuf,
        #[arg(long)]
        gold: PathBuf,
        #[arg(long)]
        conllu: PathBuf,
        /// JSON report path.
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Export labelled candidates for classifier fine-tuning.
    ExportDataset {
        #[arg(long)]
        conllu: PathBuf,
        #[arg(long)]
        gold: PathBuf,
        #[arg(long, default_value_t = 2)]
        negatives: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// TSV path; the manifest goes next to it.
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Length statistics of a segmentation.
    Stats {
        #[arg(long)]
        rhz: PathBuf,
        #[arg(long)]
        conllu: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

enum Failure {
    Usage(String),
    Data(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e)
    }
}

type CliResult = std::result::Result<(), Failure>;

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{rendered}");
            } else {
                let _ = write!(stderr, "{rendered}");
            }
            return code;
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}\n");
            let _ = writeln!(
                stderr,
                "Usage: rhesis <segment|tune|eval|export-dataset|stats> [OPTIONS]\n\nFor more information, try '--help'."
            );
            1
        }
        Err(Failure::Data(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path).map(BufReader::new).map_err(|e| {
        Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
    })
}

fn load_sentences(path: &Path) -> Result<Vec<Sentence>> {
    read_conllu(open(path)?)
}

fn load_aligned(conllu: &Path, gold: &Path) -> Result<AlignedCorpus> {
    let sentences = load_sentences(conllu)?;
    let gold = read_gold(open(gold)?)?;
    align_gold(&sentences, &gold)
}

fn header(stderr: &mut dyn Write, command: &str, extra: &[(&str, String)], cfg: &Config) -> Result<()> {
    writeln!(stderr, "# rhesis {} {command}", env!("CARGO_PKG_VERSION"))?;
    for (k, v) in extra {
        writeln!(stderr, "# {k} = {v}")?;
    }
    for line in cfg.to_toml()?.lines() {
        writeln!(stderr, "#   {line}")?;
    }
    Ok(())
}

fn emit(out: Option<&Path>, payload: &str, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, payload)?,
        None => stdout.write_all(payload.as_bytes())?,
    }
    Ok(())
}

fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().map(OsString::from).unwrap_or_default();
    name.push(".manifest.json");
    out.with_file_name(name)
}

fn dispatch(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult {
    match command {
        Command::Segment {
            input,
            method,
            weights,
            scores,
            span,
            format,
            out,
            common,
        } => {
            let mut cfg = Config::resolve(common.config.as_deref())?;
            if let Some(max) = span {
                if max == 0 {
                    return Err(Failure::Usage("--span must be positive".into()));
                }
                cfg.span.max_chars = max;
                cfg.span.target_chars = cfg.span.target_chars.min(max);
            }
            let method = match method {
                MethodArg::Cascade => Method::Cascade(cfg.cascade_config()),
                MethodArg::Tree => {
                    let path = weights
                        .as_deref()
                        .ok_or_else(|| Failure::Usage("--method tree requires --weights".into()))?;
                    Method::Tree {
                        weights: ScoringWeights::load(path)?,
                        span: cfg.span,
                    }
                }
                MethodArg::Scores => {
                    let path = scores
                        .as_deref()
                        .ok_or_else(|| Failure::Usage("--method scores requires --scores".into()))?;
                    Method::Scores {
                        table: load_scores(open(path)?)?,
                        span: cfg.span,
                        epsilon: cfg.tree.epsilon,
                    }
                }
            };
            let format = match format {
                FormatArg::Txt => Format::Txt,
                FormatArg::Records => Format::Records,
                FormatArg::Html => Format::Html,
            };
            header(
                stderr,
                "segment",
                &[
                    ("input", input.display().to_string()),
                    ("method", method.name().to_string()),
                    ("format", format!("{format:?}").to_lowercase()),
                ],
                &cfg,
            )?;
            let sentences = load_sentences(&input)?;
            let segmented = method.segment_all(&sentences)?;
            for w in segmented.iter().flat_map(|s| &s.warnings) {
                writeln!(stderr, "warning: {w}").map_err(Error::from)?;
            }
            let segs: Vec<Segmentation> = segmented.into_iter().map(|s| s.segmentation).collect();
            let opts = RenderOptions {
                format,
                ..RenderOptions::default()
            };
            emit(out.as_deref(), &render(&segs, &sentences, &opts), stdout)?;
            Ok(())
        }

        Command::Tune {
            conllu,
            gold,
            seed,
            generations,
            out,
            common,
        } => {
            let mut cfg = Config::resolve(common.config.as_deref())?;
            if let Some(seed) = seed {
                cfg.evo.seed = seed;
            }
            if let Some(g) = generations {
                cfg.evo.generations = g;
            }
            header(
                stderr,
                "tune",
                &[
                    ("conllu", conllu.display().to_string()),
                    ("gold", gold.display().to_string()),
                ],
                &cfg,
            )?;
            let corpus = load_aligned(&conllu, &gold)?;
            let run = evolve(&corpus, &cfg.evo, &cfg.span)?;
            run.weights().save(&out)?;
            std::fs::write(manifest_path(&out), run.manifest_json()?).map_err(Error::from)?;
            writeln!(
                stdout,
                "best fitness {:.4} after {} generations (initial {:.4})",
                run.best_fitness,
                run.trace.len() - 1,
                run.trace[0]
            )
            .map_err(Error::from)?;
            Ok(())
        }

        Command::Eval {
            auto,
            gold,
            conllu,
            report,
            common,
        } => {
            let cfg = Config::resolve(common.config.as_deref())?;
            header(
                stderr,
                "eval",
                &[
                    ("auto", auto.display().to_string()),
                    ("gold", gold.display().to_string()),
                    ("conllu", conllu.display().to_string()),
                ],
                &cfg,
            )?;
            let corpus = load_aligned(&conllu, &gold)?;
            let auto = load_aligned(&conllu, &auto)?.gold();
            let result = evaluate_corpus(&corpus, &auto)?;
            stdout.write_all(result.to_table().as_bytes()).map_err(Error::from)?;
            if let Some(path) = report {
                std::fs::write(path, result.to_json()?).map_err(Error::from)?;
            }
            Ok(())
        }

        Command::ExportDataset {
            conllu,
            gold,
            negatives,
            seed,
            out,
            common,
        } => {
            let cfg = Config::resolve(common.config.as_deref())?;
            header(
                stderr,
                "export-dataset",
                &[
                    ("negatives", negatives.to_string()),
                    ("seed", seed.to_string()),
                ],
                &cfg,
            )?;
            let corpus = load_aligned(&conllu, &gold)?;
            let examples = export_candidates(&corpus, negatives, seed, &cfg.span)?;
            let mut buf = Vec::new();
            write_candidates(&mut buf, &examples)?;
            std::fs::write(&out, buf).map_err(Error::from)?;
            let manifest = ExportManifest::new(&corpus, &examples, negatives, seed, &cfg.span);
            std::fs::write(manifest_path(&out), manifest.to_json()?).map_err(Error::from)?;
            writeln!(
                stdout,
                "{} positives, {} negatives",
                manifest.positives, manifest.negatives
            )
            .map_err(Error::from)?;
            Ok(())
        }

        Command::Stats { rhz, conllu, common } => {
            let cfg = Config::resolve(common.config.as_deref())?;
            header(stderr, "stats", &[("rhz", rhz.display().to_string())], &cfg)?;
            let segs = load_aligned(&conllu, &rhz)?.gold();
            let stats = length_stats(&segs)?;
            stdout.write_all(stats.to_table().as_bytes()).map_err(Error::from)?;
            Ok(())
        }
    }
}
