use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gridmodal::cli::{
    cmd_modal, cmd_op, cmd_rocof, cmd_sim, cmd_sweep, load_scenario, OutputOptions, SimArgs,
    SweepArgs,
};

/// Small-signal electromechanical analysis of microgrids mixing
/// governor-controlled synchronous generators and droop-based grid-forming
/// converters.
#[derive(Parser)]
#[command(name = "gridmodal", version, about)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the nonlinear operating point and report the equilibrium
    Op {
        /// Scenario file path or bundled scenario name (e.g. case1a)
        scenario: String,
        /// Output directory (default: $GRIDMODAL_OUT or .)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Eigenvalues, frequencies, damping ratios and mode labels
    Modal {
        scenario: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Trace the modes while one parameter sweeps over a grid
    Sweep {
        scenario: String,
        /// Parameter to vary: H1 H2 D1 D2 R1 R2 Tg1 Tg2 SCR k
        #[arg(long)]
        param: Option<String>,
        #[arg(long)]
        from: Option<f64>,
        #[arg(long)]
        to: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
        /// Logarithmic grid spacing
        #[arg(long)]
        log: bool,
        /// Also write a root-locus SVG
        #[arg(long)]
        svg: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Linear time-domain step response
    Sim {
        scenario: String,
        /// Sample step, s
        #[arg(long)]
        dt: Option<f64>,
        /// Horizon, s
        #[arg(long)]
        tend: Option<f64>,
        /// Also write a multi-channel SVG
        #[arg(long)]
        svg: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Windowed RoCoF and frequency nadir of a single-bus aggregate
    Rocof {
        scenario: String,
        /// Comma-separated measurement windows, s (e.g. 0.05,0.5)
        #[arg(long)]
        windows: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_windows(spec: &str) -> Result<Vec<f64>, String> {
    spec.split(',')
        .map(|w| w.trim().parse::<f64>().map_err(|_| format!("bad window '{w}'")))
        .collect()
}

fn run() -> Result<gridmodal::cli::CommandOutput, String> {
    let args = Args::parse();
    let result = match args.command {
        Command::Op { scenario, out } => {
            let sc = load_scenario(&scenario).map_err(|e| e.to_string())?;
            cmd_op(&sc, &OutputOptions::resolve(out, false))
        }
        Command::Modal { scenario, out } => {
            let sc = load_scenario(&scenario).map_err(|e| e.to_string())?;
            cmd_modal(&sc, &OutputOptions::resolve(out, false))
        }
        Command::Sweep { scenario, param, from, to, points, log, svg, out } => {
            let sc = load_scenario(&scenario).map_err(|e| e.to_string())?;
            let sweep_args = SweepArgs { param, from, to, points, log };
            cmd_sweep(&sc, &sweep_args, &OutputOptions::resolve(out, svg))
        }
        Command::Sim { scenario, dt, tend, svg, out } => {
            let sc = load_scenario(&scenario).map_err(|e| e.to_string())?;
            cmd_sim(&sc, &SimArgs { dt, t_end: tend }, &OutputOptions::resolve(out, svg))
        }
        Command::Rocof { scenario, windows, out } => {
            let sc = load_scenario(&scenario).map_err(|e| e.to_string())?;
            let windows = windows.as_deref().map(parse_windows).transpose()?;
            cmd_rocof(&sc, windows.as_deref(), &OutputOptions::resolve(out, false))
        }
    };
    result.map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    match run() {
        Ok(output) => {
            print!("{}", output.stdout);
            for file in &output.files {
                eprintln!("wrote {}", file.display());
            }
            ExitCode::SUCCESS
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}
