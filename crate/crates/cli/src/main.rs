mod commands;
mod output;

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "akl", version, about = "Killing algebras of locally homogeneous affine connections on surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the Killing algebra of a connection at a point (JSON).
    Classify {
        /// JSON file with string fields A..V and optional base_point.
        #[arg(long)]
        connection: PathBuf,
        /// Base point `x0,y0` (rationals); overrides base_point in the file.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Torsion, curvature, flatness and Killing basis of a family member (JSON).
    Family {
        /// `a,b,g,u[,d]`
        #[arg(long, allow_hyphen_values = true)]
        params: String,
    },
    /// Holonomy verdict for a pair of group elements (JSON).
    Holonomy {
        #[arg(long, allow_hyphen_values = true)]
        params: String,
        /// `s,t,u,v`
        #[arg(long, allow_hyphen_values = true)]
        g1: String,
        #[arg(long, allow_hyphen_values = true)]
        g2: String,
    },
    /// Group operations in the isometry group of a family member (JSON).
    Group {
        #[arg(long, allow_hyphen_values = true)]
        params: String,
        #[arg(long, allow_hyphen_values = true)]
        g1: String,
        #[arg(long, allow_hyphen_values = true)]
        g2: Option<String>,
        /// Point `x,y` to act on.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Homogeneous model spaces.
    Models {
        #[command(subcommand)]
        action: ModelsAction,
    },
    /// Geodesic trajectory as CSV `t,x,y,vx,vy`.
    Geodesic {
        #[arg(long)]
        connection: PathBuf,
        /// Start point `x,y`.
        #[arg(long, allow_hyphen_values = true)]
        p0: String,
        /// Initial velocity `vx,vy`.
        #[arg(long, allow_hyphen_values = true)]
        v0: String,
        /// Final time.
        #[arg(long, short = 't', allow_hyphen_values = true)]
        time: f64,
        /// Number of integration steps.
        #[arg(long, short = 'n')]
        steps: usize,
    },
    /// Run the certificate suite.
    Verify {
        /// Run a single certificate.
        #[arg(value_enum)]
        only: Option<VerifyTarget>,
        /// Disable data parallelism.
        #[arg(long)]
        sequential: bool,
        #[arg(long, hide = true, value_enum)]
        inject_fault: Vec<Fault>,
    },
}

#[derive(Subcommand)]
enum ModelsAction {
    /// Run all invariance checks and print a pass/fail table.
    Verify {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyTarget {
    Case6,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Fault {
    PsiSign,
    Case6Target,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let digits = match output::precision_from_env() {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let result = match cli.command {
        Command::Classify { connection, point } => commands::classify(&connection, point.as_deref(), digits),
        Command::Family { params } => commands::family(&params, digits),
        Command::Holonomy { params, g1, g2 } => commands::holonomy(&params, &g1, &g2, digits),
        Command::Group { params, g1, g2, point } => {
            commands::group(&params, &g1, g2.as_deref(), point.as_deref(), digits)
        }
        Command::Models { action: ModelsAction::Verify { json } } => commands::models_verify(json, digits),
        Command::Geodesic { connection, p0, v0, time, steps } => {
            commands::geodesic(&connection, &p0, &v0, time, steps, digits)
        }
        Command::Verify { only, sequential, inject_fault } => {
            let faults = akl_core::certify::Faults {
                flip_psi_sign: inject_fault.contains(&Fault::PsiSign),
                case6_target: inject_fault
                    .contains(&Fault::Case6Target)
                    .then(|| akl_core::algebra::PolyS::from_i64(&[9, 0, 1])),
            };
            commands::verify(only.is_some(), sequential, &faults)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
