use std::path::PathBuf;

use anyhow::Result;
use qamgolay::io::PairDocument;
use qamgolay::pu::check_recipe;

use crate::io::read_pairs;
use crate::Outcome;

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Pair JSON: one document or a list
    #[arg(long = "in")]
    input: PathBuf,
}

fn ok(flag: bool) -> &'static str {
    if flag {
        "ok"
    } else {
        "FAIL"
    }
}

/// One report line and whether every check passed.
fn check_document(doc: &PairDocument) -> Result<(String, bool)> {
    if let Err(e) = doc.validate() {
        return Ok((format!("inconsistent document: {e}"), false));
    }
    let gcp = doc.is_gcp()?;
    let gap = doc.is_gap()?;
    let mut line = format!("q={} m={} gcp {} gap {}", doc.q, doc.m, ok(gcp), ok(gap));
    let mut passed = gcp && gap;
    if let Some(spec) = &doc.spec {
        let check = check_recipe(&spec.recipe)?;
        let constant = check.constant.map_or_else(|| "-".to_string(), |c| c.to_string());
        line += &format!(
            " pu {} (c={constant}) closed-form {}",
            ok(check.paraunitary && check.decomposition_exact),
            ok(check.closed_form_matches_extraction
                && check.row_matches_construction
                && check.column_matches_construction),
        );
        passed &= check.passed();
    }
    Ok((line, passed))
}

pub fn run(args: &Args) -> Result<Outcome> {
    let docs = read_pairs(&args.input)?;
    let mut failures = 0;
    for (i, doc) in docs.iter().enumerate() {
        let (line, passed) = check_document(doc)?;
        println!("pair {i}: {line}");
        if !passed {
            failures += 1;
        }
    }
    println!("{} of {} pairs passed", docs.len() - failures, docs.len());
    Ok(if failures == 0 {
        Outcome::Passed
    } else {
        Outcome::Failed
    })
}
