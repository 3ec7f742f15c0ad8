mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{
    ArrowArgs, AuxArgs, BlowupArgs, BudgetArgs, ConstantsArgs, EmbedBaseArgs, GenArgs, LllArgs, LongPathArgs,
    PartitionArgs, PowerArgs, ReportArgs, SegmentsArgs, StepArgs, Verdict, VerifyArgs,
};

/// Size-Ramsey experiments on powers of paths.
#[derive(Parser, Debug)]
#[command(name = "pathramsey", version)]
struct Cli {
    /// Seed for every random choice; overrides any seed in the config.
    #[arg(long, global = true, value_name = "INT")]
    seed: Option<u64>,

    /// JSON config for the command; flags override its fields.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Output file; stdout when absent.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a member of the pseudorandom class as an edge list.
    Gen(GenArgs),
    /// Check the four class conditions on an edge list.
    VerifyP(VerifyArgs),
    /// The k-th power of a graph.
    Power(PowerArgs),
    /// Complete or sheared blow-up of a graph.
    Blowup(BlowupArgs),
    /// Cover a 2-coloured complete graph by blue paths and red classes.
    Partition(PartitionArgs),
    /// A long path visiting given parts cyclically.
    Longpath(LongPathArgs),
    /// Cut a path into segments and build the segment graph.
    Segments(SegmentsArgs),
    /// Blue/grey colouring of J for a step config.
    AuxColour(AuxArgs),
    /// Decide whether a host arrows a pattern.
    Arrow(ArrowArgs),
    /// Embed a path power into G^k{k+1}.
    EmbedBase(EmbedBaseArgs),
    /// Resampling embedding of a template into candidate sets.
    LllEmbed(LllArgs),
    /// The constants chain of one induction step.
    Constants(ConstantsArgs),
    /// Exact edge count of G^r{t}, or its growth over a sweep of n.
    EdgeBudget(BudgetArgs),
    /// Run one induction step end to end.
    Step(StepArgs),
    /// Summarise a step report, optionally replaying it.
    Report(ReportArgs),
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let ctx = commands::Context { seed: cli.seed, config: cli.config, out: cli.out };
    let result = match cli.command {
        Command::Gen(a) => commands::gen(&ctx, a),
        Command::VerifyP(a) => commands::verify_p(&ctx, a),
        Command::Power(a) => commands::power(&ctx, a),
        Command::Blowup(a) => commands::blowup(&ctx, a),
        Command::Partition(a) => commands::partition(&ctx, a),
        Command::Longpath(a) => commands::longpath(&ctx, a),
        Command::Segments(a) => commands::segments(&ctx, a),
        Command::AuxColour(a) => commands::aux_colour(&ctx, a),
        Command::Arrow(a) => commands::arrow(&ctx, a),
        Command::EmbedBase(a) => commands::embed_base(&ctx, a),
        Command::LllEmbed(a) => commands::lll_embed(&ctx, a),
        Command::Constants(a) => commands::constants(&ctx, a),
        Command::EdgeBudget(a) => commands::edge_budget(&ctx, a),
        Command::Step(a) => commands::step(&ctx, a),
        Command::Report(a) => commands::report(&ctx, a),
    };
    match result {
        Ok(Verdict::Positive) => ExitCode::SUCCESS,
        Ok(Verdict::Negative) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", describe(&e));
            ExitCode::from(2)
        }
    }
}

/// The error chain joined by `: `, skipping causes already quoted by the
/// message above them.
fn describe(e: &anyhow::Error) -> String {
    let mut text = String::new();
    for cause in e.chain() {
        let msg = cause.to_string();
        if !text.contains(&msg) {
            if !text.is_empty() {
                text.push_str(": ");
            }
            text.push_str(&msg);
        }
    }
    text
}
