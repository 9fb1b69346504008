//! `presence` — simulate the gaze-presence model and generate avatar gaze
//! trajectories.
//!
//! Exit codes: 0 on success, 1 on runtime or domain errors, 2 on usage
//! errors (clap's default).

mod args;
mod render;

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use gaze_controller::{
    decode_pcm_s16le, detect_events, drive, frames_to_csv, parse_event_script, render_behavior,
    BehaviorState, ControlBlinkPattern, DetectorConfig, EasingSpec, SessionOutput, SpeechEvent,
    SpeechEventKind,
};
use presence_model::{
    calibrate, linspace, run_model, sweep, CalibrationSettings, Observation, SweepParameter,
};

use args::{parse_observation, ModelArgs};
use render::{calibration_summary, condition_report, presence_report, sweep_csv, OutputFormat};

#[derive(Parser)]
#[command(
    name = "presence",
    version,
    about = "Presence-model simulations and avatar gaze trajectory generation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one simulation condition and report the full pipeline output
    Simulate(SimulateArgs),
    /// Sweep a parameter and emit a param,value,p_express CSV curve
    Sweep(SweepArgs),
    /// Report the presence metric (log model evidence) for one observation
    Presence(PresenceArgs),
    /// Generate gaze trajectories
    #[command(subcommand)]
    Gaze(GazeCommand),
    /// Grid-search the free parameters against the published probabilities
    Calibrate(CalibrateArgs),
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Gaze observation: direct or averted
    #[arg(long, default_value = "direct", value_parser = parse_observation)]
    observation: Observation,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Write the report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Parameter to sweep: zeta11 or prior-a
    #[arg(long, value_parser = parse_sweep_parameter)]
    param: SweepParameter,
    #[arg(long)]
    from: f64,
    #[arg(long)]
    to: f64,
    #[arg(long)]
    steps: usize,
    /// Gaze observation: direct or averted
    #[arg(long, default_value = "direct", value_parser = parse_observation)]
    observation: Observation,
    /// Write the CSV here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct PresenceArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Gaze observation: direct or averted
    #[arg(long, default_value = "direct", value_parser = parse_observation)]
    observation: Observation,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GazeCommand {
    /// Emit the frames of a single behavior (or the control blink pattern)
    Generate(GazeGenerateArgs),
    /// Drive a whole session from an event script or raw PCM audio
    Run(GazeRunArgs),
}

#[derive(Args)]
struct GazeGenerateArgs {
    /// Behavior id 1-8
    #[arg(long, conflicts_with = "control")]
    behavior: Option<u8>,
    /// Emit the control-group blink pattern instead of a behavior
    #[arg(long, default_value_t = false)]
    control: bool,
    /// Frame rate in Hz
    #[arg(long, default_value_t = 100.0)]
    rate: f64,
    /// Rendering length for holds and the control pattern, seconds
    #[arg(long)]
    duration: Option<f64>,
    /// Slow-in/slow-out emphasis of the head swing
    #[arg(long = "zeta-ease")]
    zeta_ease: Option<f64>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GazeRunArgs {
    /// Event script: one `<kind> <timestamp>` per line
    #[arg(long, conflicts_with = "audio")]
    events: Option<PathBuf>,
    /// Raw headerless signed 16-bit little-endian mono PCM file
    #[arg(long, requires = "sample_rate")]
    audio: Option<PathBuf>,
    /// Audio sample rate in Hz
    #[arg(long = "sample-rate")]
    sample_rate: Option<u32>,
    /// Windowed amplitude that starts a speech
    #[arg(long = "start-threshold", default_value_t = 5000)]
    start_threshold: i32,
    /// Windowed amplitude the audio must stay below to count as a breath
    #[arg(long = "breath-threshold", default_value_t = 500)]
    breath_threshold: i32,
    /// How long the amplitude must stay low to count as a breath, seconds
    #[arg(long = "breath-hold", default_value_t = 0.2)]
    breath_hold: f64,
    /// Inject the end-of-speech button press at this time, seconds
    #[arg(long = "end-at")]
    end_at: Option<f64>,
    /// Frame rate in Hz
    #[arg(long, default_value_t = 100.0)]
    rate: f64,
    /// Slow-in/slow-out emphasis of the head swing
    #[arg(long = "zeta-ease")]
    zeta_ease: Option<f64>,
    /// Write frames here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// Also write the behavior trace (start,end,behavior CSV) here
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args)]
struct CalibrateArgs {
    /// Residual each published value must be matched within
    #[arg(long, default_value_t = 0.02)]
    tolerance: f64,
    /// Write the JSON report here (a text summary then goes to stdout)
    #[arg(long)]
    output: Option<PathBuf>,
}

fn parse_sweep_parameter(s: &str) -> std::result::Result<SweepParameter, String> {
    s.parse::<SweepParameter>().map_err(|e| e.to_string())
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn easing_with(zeta_ease: Option<f64>, hold_duration: Option<f64>) -> EasingSpec {
    let mut spec = EasingSpec::default();
    if let Some(z) = zeta_ease {
        spec.zeta_ease = z;
    }
    if let Some(d) = hold_duration {
        spec.hold_duration = d;
    }
    spec
}

fn trace_csv(session: &SessionOutput) -> String {
    let mut out = String::from("start,end,behavior\n");
    for segment in &session.trace {
        out.push_str(&format!(
            "{:.6},{:.6},{}\n",
            segment.start,
            segment.end,
            segment.behavior.id()
        ));
    }
    out
}

fn cmd_simulate(args: &SimulateArgs) -> Result<()> {
    let model = args.model.build()?;
    let result = run_model(&model, args.observation)?;
    emit(
        &condition_report(&result, args.format)?,
        args.output.as_deref(),
    )
}

fn cmd_sweep(args: &SweepArgs) -> Result<()> {
    let model = args.model.build()?;
    let base = presence_model::SimulationCondition {
        variant: model.variant(),
        observation: args.observation,
        zeta_1_1: model.zeta_1_1(),
        zeta_2: model.zeta_2(),
        prior_weight_a: model.prior_1_1().prob(0),
        gamma: model.gamma(),
    };
    let grid = linspace(args.from, args.to, args.steps)?;
    let points = sweep(args.param, &grid, &base)?;
    emit(&sweep_csv(args.param, &points), args.output.as_deref())
}

fn cmd_presence(args: &PresenceArgs) -> Result<()> {
    let model = args.model.build()?;
    let result = run_model(&model, args.observation)?;
    emit(
        &presence_report(&result, args.format)?,
        args.output.as_deref(),
    )
}

fn cmd_gaze_generate(args: &GazeGenerateArgs) -> Result<()> {
    let spec = easing_with(args.zeta_ease, args.duration);
    spec.validate()?;
    let frames = if args.control {
        ControlBlinkPattern::default().render(args.duration.unwrap_or(12.0), args.rate)?
    } else {
        let id = args
            .behavior
            .context("give either --behavior <1-8> or --control")?;
        render_behavior(BehaviorState::from_id(id)?, args.rate, &spec)?
    };
    emit(&frames_to_csv(&frames), args.output.as_deref())
}

fn cmd_gaze_run(args: &GazeRunArgs) -> Result<()> {
    let spec = easing_with(args.zeta_ease, None);
    let mut events: Vec<SpeechEvent> = match (&args.events, &args.audio) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading events {}", path.display()))?;
            parse_event_script(&text)?
        }
        (None, Some(path)) => {
            let bytes = std::fs::read(path)
                .with_context(|| format!("reading audio {}", path.display()))?;
            let samples = decode_pcm_s16le(&bytes)?;
            let sample_rate = args.sample_rate.context("--audio requires --sample-rate")?;
            let mut config =
                DetectorConfig::new(sample_rate, args.start_threshold, args.breath_threshold);
            config.breath_hold = args.breath_hold;
            detect_events(&samples, &config, BehaviorState::Center)?
        }
        (None, None) => bail!("give either --events <file> or --audio <file>"),
        (Some(_), Some(_)) => unreachable!("clap forbids both"),
    };
    if let Some(t) = args.end_at {
        events.push(SpeechEvent::new(SpeechEventKind::SpeechEnd, t));
    }
    let session = drive(&events, &spec, args.rate)?;
    if let Some(path) = &args.trace {
        std::fs::write(path, trace_csv(&session))
            .with_context(|| format!("writing trace {}", path.display()))?;
    }
    emit(&frames_to_csv(&session.frames), args.output.as_deref())
}

fn cmd_calibrate(args: &CalibrateArgs) -> Result<()> {
    if !args.tolerance.is_finite() || args.tolerance <= 0.0 {
        bail!("tolerance {} must be positive", args.tolerance);
    }
    let settings = CalibrationSettings {
        tolerance: args.tolerance,
        ..CalibrationSettings::default()
    };
    let report = calibrate(&settings)?;
    let json = format!("{}\n", serde_json::to_string_pretty(&report)?);
    match &args.output {
        Some(path) => {
            std::fs::write(path, &json)
                .with_context(|| format!("writing report {}", path.display()))?;
            print!("{}", calibration_summary(&report));
        }
        None => print!("{json}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match &cli.command {
        Command::Simulate(args) => cmd_simulate(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Presence(args) => cmd_presence(args),
        Command::Gaze(GazeCommand::Generate(args)) => cmd_gaze_generate(args),
        Command::Gaze(GazeCommand::Run(args)) => cmd_gaze_run(args),
        Command::Calibrate(args) => cmd_calibrate(args),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}
