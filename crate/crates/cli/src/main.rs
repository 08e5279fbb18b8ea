//! `mmm-calc`: pushforwards of characteristic classes from the command line.
//!
//! Exit status is 0 when every computed claim holds, 1 when a check fails
//! and 2 for usage, file or expression errors.

mod commands;
mod render;
mod spec;
mod suite;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mmm_core::verify::SuiteOptions;

use render::Format;

#[derive(Parser, Debug)]
#[command(
    name = "mmm-calc",
    version,
    about = "Exact pushforwards of characteristic classes along fibre bundles"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Intersection of the Whitney restriction kernels on Pont^degree(n).
    Kernel {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        degree: u32,
        /// Print the closed form instead of the brute-force intersection.
        #[arg(long)]
        closed_form: bool,
    },
    /// kappa of one class for the projectivization of a bundle file.
    Kappa {
        #[arg(long)]
        bundle: PathBuf,
        /// Polynomial in p_4, p_8, ... (chi with --full), L_<deg>, ph_<deg>.
        #[arg(long)]
        class: String,
        #[arg(long)]
        full: bool,
    },
    /// Kernel of kappa in one degree.
    KappaKernel {
        #[arg(long)]
        bundle: PathBuf,
        #[arg(long)]
        degree: u32,
        /// Use all of H*(BSO(n)), not just the Pontrjagin classes.
        #[arg(long)]
        full: bool,
    },
    /// Coefficients a_p of the Chern character pushforward over BSU(2).
    ChPushforward {
        #[arg(long)]
        m: u32,
        #[arg(long, env = "MMM_TRUNC", default_value_t = 5)]
        trunc: usize,
    },
    /// The holomorphic composite over CP^1 x CP^r.
    Holo {
        #[arg(long, default_value_t = 20)]
        r: u32,
        #[arg(long, default_value_t = 2)]
        m: u32,
        #[arg(long, env = "MMM_TRUNC", default_value_t = 5)]
        trunc: usize,
    },
    /// Transgression in the loop model of a free algebra.
    Trg {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        expr: String,
        #[arg(long, default_value_t = 1)]
        iterate: usize,
    },
    /// Kernel on H^{4d+4}(BSO(4)) through Weyl averaging.
    WeylKernel {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        compare_gysin: bool,
    },
    /// Run a named verification suite, or `all`.
    Verify {
        suite: String,
        #[arg(long, env = "MMM_TRUNC", default_value_t = 5)]
        trunc: usize,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn run(command: Command) -> Result<render::Output, commands::CliError> {
    match command {
        Command::Kernel {
            n,
            degree,
            closed_form,
        } => commands::kernel(n, degree, closed_form),
        Command::Kappa {
            bundle,
            class,
            full,
        } => commands::kappa(&bundle, &class, full),
        Command::KappaKernel {
            bundle,
            degree,
            full,
        } => commands::kappa_kernel(&bundle, degree, full),
        Command::ChPushforward { m, trunc } => commands::ch_pushforward_cmd(m, trunc),
        Command::Holo { r, m, trunc } => commands::holo(r, m, trunc),
        Command::Trg {
            algebra,
            expr,
            iterate,
        } => commands::trg(&algebra, &expr, iterate),
        Command::WeylKernel { d, compare_gysin } => commands::weyl_kernel(d, compare_gysin),
        Command::Verify {
            suite,
            trunc,
            cases,
            seed,
        } => {
            let defaults = SuiteOptions::default();
            let options = SuiteOptions {
                truncation: trunc,
                cases,
                seed: seed.unwrap_or(defaults.seed),
            };
            commands::verify(&suite, &options)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{}", out.render(cli.format));
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
