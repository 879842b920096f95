//! Command-line front end for `opcalc-core`: an operator expression syntax
//! ([`dsl`]), the command definitions ([`args`]) and dispatch ([`run`]).

pub mod args;
pub mod dsl;
pub mod run;

pub use args::{Cli, Format, Verb};
pub use dsl::{parse_operator, render_operator, ParseError};
pub use run::{run, CliError, Outcome};
