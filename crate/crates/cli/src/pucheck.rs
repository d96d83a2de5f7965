use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::Result;
use qamgolay::pu::{build_pu_matrix, check_recipe};

use crate::io::{read_specs, sorted_json, write_output};
use crate::Outcome;

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Spec JSON: one spec or a list
    #[arg(long)]
    spec: PathBuf,
    /// Write the check results as JSON
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the nonzero terms of every product matrix
    #[arg(long)]
    dump: Option<PathBuf>,
}

pub fn run(args: &Args) -> Result<Outcome> {
    let specs = read_specs(&args.spec)?;
    let mut checks = Vec::with_capacity(specs.len());
    let mut dump = String::new();
    for (i, spec) in specs.iter().enumerate() {
        let check = check_recipe(&spec.recipe)?;
        let constant = check.constant.map_or_else(|| "-".to_string(), |c| c.to_string());
        println!(
            "recipe {i}: q={} m={} paraunitary {} c={constant} decomposition {} closed-form {} row {} column {}",
            spec.q(),
            spec.m(),
            check.paraunitary,
            check.decomposition_exact,
            check.closed_form_matches_extraction,
            check.row_matches_construction,
            check.column_matches_construction,
        );
        if args.dump.is_some() {
            writeln!(dump, "# recipe {i}")?;
            dump += &build_pu_matrix(&spec.recipe)?.dump();
            if !dump.ends_with('\n') {
                dump.push('\n');
            }
        }
        checks.push(check);
    }
    if let Some(path) = &args.out {
        write_output(Some(path), sorted_json(&checks)?.as_bytes())?;
    }
    if let Some(path) = &args.dump {
        write_output(Some(path), dump.as_bytes())?;
    }
    Ok(if checks.iter().all(|c| c.passed()) {
        Outcome::Passed
    } else {
        Outcome::Failed
    })
}
