//! One handler per subcommand. Handlers fill defaults into their arguments so
//! that the echoed configuration is the effective one.

mod fraisse;
mod graphs;
mod rado;
mod rigid;
mod sumfree;

use std::path::Path;
use std::str::FromStr;

use anyhow::{anyhow, Context, Result};
use homlab::graph::FiniteGraph;
use homlab::io::{parse_graph, parse_structure_json};
use homlab::{Execution, RelationalStructure};

use crate::args::Command;
use crate::report::Outcome;

pub fn dispatch(command: &mut Command, exec: Execution) -> Result<Outcome> {
    match command {
        Command::Homog(a) => graphs::homog(a, exec),
        Command::Gardiner(a) => graphs::gardiner(a),
        Command::Schlafli(a) => graphs::schlafli(a),
        Command::Spectrum(a) => graphs::spectrum(a, exec),
        Command::Reducts(a) => graphs::reducts(a),
        Command::Switch(a) => graphs::switch(a),
        Command::Fraisse(a) => fraisse::run(a, exec),
        Command::Rado(a) => rado::run(a, exec),
        Command::Sumfree(a) => sumfree::run(a, exec),
        Command::Rigid(a) => rigid::run(a, exec),
    }
}

pub(crate) fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub(crate) fn read_graph(path: &Path) -> Result<FiniteGraph> {
    let text = read_text(path)?;
    let parsed = if text.trim_start().starts_with('{') {
        parse_structure_json(&text).and_then(|s| FiniteGraph::from_structure(&s))
    } else {
        parse_graph(&text)
    };
    parsed.with_context(|| format!("{}", path.display()))
}

pub(crate) fn read_structure(path: &Path) -> Result<RelationalStructure> {
    parse_structure_json(&read_text(path)?).with_context(|| format!("{}", path.display()))
}

pub(crate) fn parse_list<T: FromStr>(text: &str, what: &str) -> Result<Vec<T>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .enumerate()
        .map(|(i, s)| {
            s.parse()
                .map_err(|_| anyhow!("{what}: entry {} ({s:?}) is not a valid number", i + 1))
        })
        .collect()
}

pub(crate) fn require<'a, T>(value: &'a Option<T>, flag: &str) -> Result<&'a T> {
    value.as_ref().ok_or_else(|| anyhow!("missing required option --{flag}"))
}
