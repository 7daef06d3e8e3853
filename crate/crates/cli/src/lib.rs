//! Command-line front end: catalog listing, gap sweeps, band structures and
//! counting functions as CSV tables or SVG plots.

pub mod config;
pub mod error;
pub mod monomers;
pub mod run;
pub mod svg;
pub mod table;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use config::{parse_m_list, Cli, CommandKind, Format, ModelChoice, RunConfig};
pub use error::CliError;
pub use monomers::CATALOG_ENV;
pub use run::run;
pub use svg::{render_svg, render_svg_with_ticks, PlotKind};
pub use table::Table;

/// Parses `args`, runs the command and returns the process exit status.
pub fn main_with<I, A>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = A>,
    A: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match cli.into_config(monomers::env_catalog_dir()).and_then(|cfg| run(&cfg, stdout)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("polyband: {e}");
            e.exit_code()
        }
    }
}
