use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use qamgolay::constructions::{ConstructionSpec, Side};
use qamgolay::io::PairDocument;
use qamgolay::offsets::write_matrices_csv;
use qamgolay::sampling::{rng_from_seed, sample_spec, Boundary, CaseKind, Template};

use crate::io::{read_specs, sorted_json, write_output};
use crate::{checked_factorization, Outcome};

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Recipe family: 1 = triple factors only, 2 = leading pair factor
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2), required_unless_present = "spec")]
    theorem: Option<u8>,
    #[arg(long, required_unless_present = "spec")]
    q: Option<usize>,
    /// Comma-separated factors of q; the first is the pair factor for family 2
    #[arg(long, value_delimiter = ',')]
    factorization: Option<Vec<usize>>,
    #[arg(long, required_unless_present = "spec")]
    m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Pair placement for family 2
    #[arg(long, value_enum, default_value_t = CaseArg::A)]
    case: CaseArg,
    #[arg(long, value_enum, default_value_t = SideArg::First)]
    mu_side: SideArg,
    /// Pin one triple position to the start or end of the path
    #[arg(long, value_enum, default_value_t = BoundaryArg::Any)]
    boundary: BoundaryArg,
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Build from spec JSON (one spec or a list) instead of sampling
    #[arg(long, conflicts_with_all = ["theorem", "q", "factorization", "m", "seed", "case", "count", "boundary", "mu_side"])]
    spec: Option<PathBuf>,
    /// Pair JSON output; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
    /// Coefficient matrices of the offsets as CSV
    #[arg(long)]
    matrix_csv: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum CaseArg {
    A,
    B,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum SideArg {
    First,
    Last,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum BoundaryArg {
    Any,
    Start,
    End,
}

fn sampled_specs(args: &Args) -> Result<Vec<ConstructionSpec>> {
    let (Some(theorem), Some(q), Some(m)) = (args.theorem, args.q, args.m) else {
        bail!("--theorem, --q and --m are required without --spec");
    };
    if args.count == 0 {
        bail!("invalid --count: must be at least 1");
    }
    let factorization = checked_factorization(q, args.factorization.as_deref())?;
    let template = if theorem == 1 {
        Template::Triple { factorization }
    } else {
        let case = match args.case {
            CaseArg::A => CaseKind::OnePosition,
            CaseArg::B => CaseKind::TwoPositions,
        };
        Template::Pair { factorization, case }
    };
    let side = match args.mu_side {
        SideArg::First => Side::First,
        SideArg::Last => Side::Last,
    };
    let boundary = match args.boundary {
        BoundaryArg::Any => Boundary::Any,
        BoundaryArg::Start => Boundary::Start,
        BoundaryArg::End => Boundary::End,
    };
    let mut rng = rng_from_seed(args.seed);
    (0..args.count)
        .map(|_| sample_spec(&mut rng, &template, m, side, boundary).context("cannot sample a recipe"))
        .collect()
}

pub fn run(args: &Args) -> Result<Outcome> {
    let specs = match &args.spec {
        Some(path) => read_specs(path)?,
        None => sampled_specs(args)?,
    };
    let docs = specs
        .iter()
        .enumerate()
        .map(|(i, s)| PairDocument::from_spec(s).with_context(|| format!("spec {i}")))
        .collect::<Result<Vec<_>>>()?;
    let json = match docs.as_slice() {
        [single] => sorted_json(single)?,
        many => sorted_json(&many)?,
    };
    write_output(args.out.as_deref(), json.as_bytes())?;
    if let Some(path) = &args.matrix_csv {
        let matrices = specs
            .iter()
            .map(ConstructionSpec::coefficient_matrix)
            .collect::<qamgolay::Result<Vec<_>>>()?;
        let mut buf = Vec::new();
        write_matrices_csv(&matrices, &mut buf)
            .context("coefficient matrices differ in shape; write one shape per file")?;
        write_output(Some(path), &buf)?;
    }
    Ok(Outcome::Passed)
}
