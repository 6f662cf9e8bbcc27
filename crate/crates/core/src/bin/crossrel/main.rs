mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crossrel::cca::DEFAULT_RIDGE;
use crossrel::textfeat::DEFAULT_HASH_DIM;

#[derive(Parser)]
#[command(name = "crossrel", version, about = "Cross-modal query-item relevance with CCA")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic corpus from a JSON spec.
    Synth {
        #[command(subcommand)]
        kind: SynthKind,
    },
    /// Hash query and title text and align image vectors to pairs.
    Featurize(FeaturizeArgs),
    /// Fit CCA between Q and I = [U | V].
    Fit(FitArgs),
    /// Score every pair by cosine similarity.
    Score(ScoreArgs),
    /// Compute AUROC, AUPRC and curve points for a scores file.
    Eval(EvalArgs),
    /// Compare a baseline scores file against a proposed one.
    Compare(CompareArgs),
}

#[derive(Subcommand)]
enum SynthKind {
    /// Two Gaussian views with known canonical correlations: X.cmxf, Y.cmxf.
    TwoView(SynthArgs),
    /// Latent-topic retrieval corpus: pairs.jsonl, Q.cmxf, V.cmxf, U.cmxf.
    Retrieval(SynthArgs),
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long)]
    spec: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Overrides the seed in the spec file.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct FeaturizeArgs {
    #[arg(long)]
    pairs: PathBuf,
    /// Image feature matrix with one row id per image.
    #[arg(long)]
    images: PathBuf,
    #[arg(long, default_value_t = DEFAULT_HASH_DIM)]
    dim: usize,
    #[arg(long)]
    out: PathBuf,
    /// Fail on the first malformed pair instead of skipping it.
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct FitArgs {
    #[arg(long)]
    q: PathBuf,
    #[arg(long)]
    u: PathBuf,
    #[arg(long)]
    v: PathBuf,
    /// Canonical pairs to keep; defaults to the query width.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_RIDGE)]
    ridge: f64,
    #[arg(long, default_value_t = 0.0)]
    min_correlation: f64,
    /// Hash width the text views were built with, recorded in the model.
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    model: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Baseline,
    Cca,
}

#[derive(Args)]
struct ScoreArgs {
    #[arg(long, value_enum)]
    mode: Mode,
    /// Pairs file supplying the labels, row-aligned with the matrices.
    #[arg(long)]
    pairs: PathBuf,
    #[arg(long)]
    q: PathBuf,
    #[arg(long)]
    v: PathBuf,
    #[arg(long, required_if_eq("mode", "cca"))]
    u: Option<PathBuf>,
    #[arg(long, required_if_eq("mode", "cca"))]
    model: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    scores: PathBuf,
    /// Directory for metrics.json, roc.csv and pr.csv.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long)]
    baseline: PathBuf,
    #[arg(long)]
    proposed: PathBuf,
    /// Comparison JSON path.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let head = text.split("\n\nUsage").next().unwrap_or(&text);
            eprintln!("{}", head.split_whitespace().collect::<Vec<_>>().join(" "));
            return ExitCode::from(2);
        }
    };
    let result = match cli.command {
        Command::Synth { kind: SynthKind::TwoView(a) } => commands::synth_two_view(&a.spec, &a.out, a.seed),
        Command::Synth { kind: SynthKind::Retrieval(a) } => commands::synth_retrieval(&a.spec, &a.out, a.seed),
        Command::Featurize(a) => commands::featurize(&a.pairs, &a.images, a.dim, &a.out, a.strict),
        Command::Fit(a) => commands::fit(&commands::FitInputs {
            q: &a.q,
            u: &a.u,
            v: &a.v,
            k: a.k,
            ridge: a.ridge,
            min_correlation: a.min_correlation,
            dim: a.dim,
            model: &a.model,
        }),
        Command::Score(a) => match a.mode {
            Mode::Baseline => commands::score_baseline(&a.pairs, &a.q, &a.v, &a.out),
            Mode::Cca => commands::score_cca(
                &a.pairs,
                &a.q,
                a.u.as_deref().expect("required by clap"),
                &a.v,
                a.model.as_deref().expect("required by clap"),
                &a.out,
            ),
        },
        Command::Eval(a) => commands::eval(&a.scores, &a.out),
        Command::Compare(a) => commands::compare(&a.baseline, &a.proposed, a.out.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", one_line(&e));
            ExitCode::FAILURE
        }
    }
}

/// Context chain joined by ": ", skipping causes the previous message
/// already quotes.
fn one_line(e: &anyhow::Error) -> String {
    let mut parts: Vec<String> = Vec::new();
    for cause in e.chain() {
        let text = cause.to_string();
        if parts.last().is_some_and(|p| p.contains(&text)) {
            continue;
        }
        parts.push(text);
    }
    parts.join(": ").replace('\n', " ")
}
