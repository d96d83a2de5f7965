use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::ValueEnum;
use qamgolay::enumeration::{count_report, CountReport, Family};

use crate::io::{sorted_json, write_output};
use crate::Outcome;

#[derive(clap::Args, Debug)]
pub struct Args {
    #[arg(long)]
    q: usize,
    /// One value or a comma-separated list
    #[arg(long, value_delimiter = ',', required = true)]
    m: Vec<usize>,
    /// I-III, IV-V, new-thm1 or new-thm2-cases
    #[arg(long)]
    family: String,
    /// Factors of q for new-thm1 (default 2,2 for q=4 and 3,2 for q=6)
    #[arg(long, value_delimiter = ',')]
    factorization: Option<Vec<usize>>,
    /// Report output; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Format {
    Csv,
    Json,
}

fn failed(report: &CountReport) -> bool {
    match report.generated {
        Some(g) if report.lower_bound => g < report.formula,
        Some(g) => g != report.formula,
        None => false,
    }
}

fn to_csv(reports: &[CountReport]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CountReport::csv_header())?;
    for r in reports {
        w.write_record(r.csv_record())?;
    }
    w.into_inner().context("flushing CSV")
}

pub fn run(args: &Args) -> Result<Outcome> {
    let family = Family::parse(&args.family)?;
    let reports = args
        .m
        .iter()
        .map(|&m| count_report(family, args.q, m, args.factorization.as_deref()))
        .collect::<qamgolay::Result<Vec<_>>>()?;
    let bytes = match args.format {
        Format::Csv => to_csv(&reports)?,
        Format::Json => sorted_json(&reports)?.into_bytes(),
    };
    write_output(args.out.as_deref(), &bytes)?;
    Ok(if reports.iter().any(failed) {
        Outcome::Failed
    } else {
        Outcome::Passed
    })
}
