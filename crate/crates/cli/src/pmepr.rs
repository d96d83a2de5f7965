use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use qamgolay::pmepr::{envelope_power, relative_power_complementarity, write_profile_csv};

use crate::io::{read_pairs, write_output};
use crate::Outcome;

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Pair JSON: one document or a list
    #[arg(long = "in")]
    input: PathBuf,
    /// Grid points per sequence element
    #[arg(long, default_value_t = 8)]
    oversample: usize,
    /// Which document of a list to evaluate
    #[arg(long, default_value_t = 0)]
    index: usize,
    /// Profile CSV (theta, powerF, powerG, sum); stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: &Args) -> Result<Outcome> {
    let docs = read_pairs(&args.input)?;
    let Some(doc) = docs.get(args.index) else {
        bail!(
            "invalid --index: {} but the file holds {} pairs",
            args.index,
            docs.len()
        );
    };
    doc.validate().with_context(|| format!("pair {}", args.index))?;
    let (f, g) = doc.sequences();
    let mut buf = Vec::new();
    write_profile_csv(&f, &g, args.oversample, &mut buf)?;
    write_output(args.out.as_deref(), &buf)?;
    let pf = envelope_power(&f, args.oversample)?;
    let pg = envelope_power(&g, args.oversample)?;
    let deviation = relative_power_complementarity(&f, &g, args.oversample)?;
    eprintln!(
        "pmepr F {:.6} G {:.6}; relative complementarity deviation {deviation:.3e}",
        pf.pmepr, pg.pmepr
    );
    Ok(Outcome::Passed)
}
