//! Command-line front end: run scenario files, emit gallery scenarios,
//! export structure constants.

use clap::{Parser, Subcommand};
use hopfkit::scenario::{
    self, classify_error, export_object, gallery, run_scenario, Scenario, GALLERY_NAMES,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "hopfkit",
    about = "Exact-arithmetic constructions and checks for Hopf-algebraic objects on finite bases",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the pipelines requested by a scenario file and write reports.
    Run {
        /// scenario JSON file
        file: PathBuf,
        /// output directory for reports and exports
        #[arg(long)]
        out: Option<PathBuf>,
        /// override the Nichols truncation cap
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Write one of the canonical gallery scenarios.
    Gallery {
        /// one of: trivial, sweedler, taft3_f7, qplane, double_sweedler, reduced_rank
        name: String,
        /// output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the structure constants of one object of a scenario as JSON.
    Export {
        /// scenario JSON file
        file: PathBuf,
        /// object id: klambda, kgamma, bw, bv, U, A, twist
        id: String,
        /// output file
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Run { file, out, cap } => cmd_run(&file, out.as_deref(), cap),
        Command::Gallery { name, out } => cmd_gallery(&name, out.as_deref()),
        Command::Export { file, id, out } => cmd_export(&file, &id, &out),
    };
    ExitCode::from(code as u8)
}

fn cmd_run(file: &std::path::Path, out: Option<&std::path::Path>, cap: Option<usize>) -> i32 {
    let sc = match Scenario::from_file(file) {
        Ok(sc) => sc,
        Err(e) => {
            eprintln!("error: {e}");
            return classify_error(&e);
        }
    };
    let (outcome, code) = run_scenario(&sc, cap);
    print!("{}", outcome.text_report());
    if let Some(dir) = out {
        if let Err(e) = scenario::write_outputs(&outcome, dir) {
            eprintln!("error writing outputs: {e}");
            return classify_error(&e);
        }
        println!("reports written to {}", dir.display());
    }
    code
}

fn cmd_gallery(name: &str, out: Option<&std::path::Path>) -> i32 {
    match gallery(name) {
        Ok(text) => {
            if let Some(path) = out {
                if let Err(e) = std::fs::write(path, text) {
                    eprintln!("error: {e}");
                    return 2;
                }
            } else {
                print!("{text}");
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            eprintln!("known scenarios: {}", GALLERY_NAMES.join(", "));
            classify_error(&e)
        }
    }
}

fn cmd_export(file: &std::path::Path, id: &str, out: &std::path::Path) -> i32 {
    let sc = match Scenario::from_file(file) {
        Ok(sc) => sc,
        Err(e) => {
            eprintln!("error: {e}");
            return classify_error(&e);
        }
    };
    match export_object(&sc, id) {
        Ok(json) => {
            if let Err(e) = std::fs::write(out, json) {
                eprintln!("error: {e}");
                return 2;
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            classify_error(&e)
        }
    }
}
