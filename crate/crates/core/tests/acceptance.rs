//! One PASS/FAIL line per acceptance criterion; exits non-zero on any failure.

use std::collections::BTreeSet;
use std::time::Instant;

use qamgolay::algebra::{Gbf, Permutation, Z4};
use qamgolay::constructions::{
    generalized_case, standard_gcp, ConstructionSpec, GeneralizedCase, PairCase, PairSpec, Recipe, Side,
    StandardGcsSpec, TripleLayout, TripleSpec,
};
use qamgolay::enumeration::*;
use qamgolay::golay::{is_gcp, QamSequence};
use qamgolay::offsets::{enumerate_nsgip, set_c, CTriple, CoefficientMatrix};
use qamgolay::pmepr::relative_power_complementarity;
use qamgolay::pu::*;
use qamgolay::sampling::suite;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: qamgolay::Error) -> String {
    e.to_string()
}

type Criterion = (&'static str, fn() -> Outcome);

const SUITE_SEED: u64 = 20240601;

fn gcp_soundness() -> Outcome {
    let specs = suite(SUITE_SEED, 220, 2, 6).map_err(err)?;
    let mut fams = BTreeSet::new();
    for spec in &specs {
        let pair = spec.build().map_err(err)?;
        let ok = is_gcp(&QamSequence::from_vgbf(&pair.f), &QamSequence::from_vgbf(&pair.g)).map_err(err)?;
        check(ok, format!("not a GCP: {}", serde_json::to_string(spec).unwrap()))?;
        fams.insert((spec.family(), spec.q()));
    }
    Ok(format!("{} specs, (family, q) = {fams:?}", specs.len()))
}

fn all_choice_vectors(q: usize) -> Vec<Vec<CTriple>> {
    let c = set_c();
    let mut out = vec![Vec::new()];
    for _ in 1..q {
        out = out
            .into_iter()
            .flat_map(|v: Vec<CTriple>| {
                c.iter().map(move |&t| {
                    let mut n = v.clone();
                    n.push(t);
                    n
                })
            })
            .collect();
    }
    out
}

fn reduction_equivalence() -> Outcome {
    let mut compared = 0usize;
    for m in 2..=4usize {
        let perms = [
            Permutation::identity(m),
            Permutation::new((1..=m).rev().collect()).unwrap(),
        ];
        for q in 2..=4usize {
            for triples in all_choice_vectors(q) {
                for omega in 0..=m {
                    for pi in &perms {
                        for side in [Side::First, Side::Last] {
                            let recipe = Recipe::Triple(TripleSpec {
                                m,
                                factorization: vec![q],
                                layout: TripleLayout {
                                    d_choices: vec![triples.clone()],
                                    omegas: vec![omega],
                                },
                                mu_side: side,
                            });
                            let (s, mu) = recipe.offset(pi).map_err(err)?;
                            let case = GeneralizedCase::SingleTriple {
                                triples: triples.clone(),
                                omega,
                            };
                            let blocked =
                                matches!((side, omega), (Side::First, 0)) || (side == Side::Last && omega == m);
                            match generalized_case(&case, pi, side) {
                                Ok((s2, mu2)) => {
                                    let a = CoefficientMatrix::from_offset(&s, pi).map_err(err)?;
                                    let b = CoefficientMatrix::from_offset(&s2, pi).map_err(err)?;
                                    check(
                                        a == b && mu == mu2,
                                        format!("triple mismatch q={q} m={m} omega={omega}"),
                                    )?;
                                }
                                Err(_) => check(blocked, "generalized case refused an admissible input")?,
                            }
                            compared += 1;
                        }
                    }
                }
            }
        }
        for q0 in 3..=4usize {
            for nsgip in enumerate_nsgip(q0).map_err(err)? {
                let mut cases: Vec<PairCase> = (2..m).map(|upsilon| PairCase::A { upsilon }).collect();
                for upsilon1 in 1..=m.saturating_sub(2) {
                    for upsilon2 in upsilon1 + 2..=m {
                        cases.push(PairCase::B { upsilon1, upsilon2 });
                    }
                }
                for case in cases {
                    for pi in &perms {
                        for side in [Side::First, Side::Last] {
                            let recipe = Recipe::Pair(PairSpec {
                                m,
                                factorization: vec![q0],
                                layout: TripleLayout {
                                    d_choices: vec![],
                                    omegas: vec![],
                                },
                                nsgip: nsgip.clone(),
                                case,
                                mu_side: side,
                            });
                            let (s, mu) = recipe.offset(pi).map_err(err)?;
                            let general = match case {
                                PairCase::A { upsilon } => GeneralizedCase::OnePairPosition {
                                    nsgip: nsgip.clone(),
                                    upsilon,
                                },
                                PairCase::B { upsilon1, upsilon2 } => GeneralizedCase::TwoPairPositions {
                                    nsgip: nsgip.clone(),
                                    upsilon1,
                                    upsilon2,
                                },
                            };
                            let (s2, mu2) = generalized_case(&general, pi, side).map_err(err)?;
                            let a = CoefficientMatrix::from_offset(&s, pi).map_err(err)?;
                            let b = CoefficientMatrix::from_offset(&s2, pi).map_err(err)?;
                            check(a == b && mu == mu2, format!("pair mismatch q0={q0} m={m} {case:?}"))?;
                            compared += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{compared} parameter sets equal"))
}

fn q4_enumeration() -> Outcome {
    let mut counts = Vec::new();
    for m in 3..=5usize {
        let got = enumerate_new_offsets_q4(m).map_err(err)?;
        let want = 100 * (m + 1) * (m - 2);
        check(got.len() == want, format!("m={m}: {} != {want}", got.len()))?;
        check(
            got.iter().all(|c| c.nonzero_linear_columns().len() >= 3),
            format!("m={m}: a matrix has fewer than 3 nonzero columns"),
        )?;
        counts.push(got.len());
    }
    Ok(format!("counts {counts:?}"))
}

fn q6_enumeration() -> Outcome {
    let mut counts = Vec::new();
    for m in 3..=4usize {
        let cases = enumerate_q6_case_recipes(m).map_err(err)?;
        let sets: Vec<BTreeSet<CoefficientMatrix>> = cases
            .iter()
            .map(|c| c.iter().map(|(x, _)| x.clone()).collect())
            .collect();
        for i in 0..4 {
            for j in i + 1..4 {
                check(
                    sets[i].is_disjoint(&sets[j]),
                    format!("m={m}: cases {} and {} overlap", i + 1, j + 1),
                )?;
            }
        }
        let union = enumerate_new_offsets_q6(m).map_err(err)?;
        let want = (3700 + 20 * m) * (m + 1) * (m - 2);
        check(union.len() == want, format!("m={m}: {} != {want}", union.len()))?;
        counts.push(union.len());
    }
    Ok(format!("counts {counts:?}, cases pairwise disjoint"))
}

fn lower_bound_agreement() -> Outcome {
    let mut rows = Vec::new();
    for fact in [vec![2, 2], vec![3, 2]] {
        for m in 3..=5usize {
            let got = enumerate_triple_family(m, &fact).map_err(err)?.len() as u128;
            let want = lower_bound_new_offsets(m, &fact).map_err(err)?;
            check(got == want, format!("{fact:?} m={m}: {got} != {want}"))?;
            rows.push(got);
        }
    }
    Ok(format!("2x2 and 3x2 at m=3..5: {rows:?}"))
}

fn pu_suite() -> Result<Vec<Recipe>, String> {
    Ok(suite(SUITE_SEED + 1, 220, 2, 5)
        .map_err(err)?
        .into_iter()
        .map(|s| s.recipe)
        .collect())
}

fn pu_verification() -> Outcome {
    let recipes = pu_suite()?;
    for r in &recipes {
        let mat = build_pu_matrix(r).map_err(err)?;
        check(is_paraunitary(&mat).paraunitary, format!("not para-unitary: {r:?}"))?;
        let comps = component_matrices(r).map_err(err)?;
        check(
            recombine(&comps).map_err(err)? == mat,
            format!("decomposition differs: {r:?}"),
        )?;
    }
    Ok(format!("{} products para-unitary, decompositions exact", recipes.len()))
}

fn extraction_consistency() -> Outcome {
    let recipes = pu_suite()?;
    for r in &recipes {
        let closed = closed_form_matrix(r).map_err(err)?;
        check(
            closed == extracted_matrix(r).map_err(err)?,
            format!("closed form differs: {r:?}"),
        )?;
        let m = r.m();
        for (side, pair) in [(Side::Last, closed.row(0)), (Side::First, closed.column(0))] {
            let spec = ConstructionSpec {
                recipe: r.with_side(side),
                pi: Permutation::identity(m),
                base_c: vec![Z4::ZERO; m + 1],
                c_prime: Z4::ZERO,
            };
            let built = spec.build().map_err(err)?;
            check((built.f, built.g) == pair, format!("{side:?} pair differs: {r:?}"))?;
        }
    }
    Ok(format!("{} recipes", recipes.len()))
}

fn plain_chain_oracle() -> Outcome {
    for m in 2..=4usize {
        let seeds = vec![GbfMatrix::constant(m, BhMatrix::plain().phases()); m + 1];
        let extracted = extract_gbf_matrix(&seeds).map_err(err)?;
        let laurent = chain_product(m, &vec![BhMatrix::plain().entries(); m + 1]).map_err(err)?;
        let inverted = GbfMatrix::from_generating_matrix(&laurent).map_err(err)?;
        check(
            extracted == inverted,
            format!("m={m}: extraction differs from the Laurent product"),
        )?;
        let mut f = Gbf::zero(m);
        for j in 1..m {
            f = &f + &Gbf::monomial(m, 0b11 << (j - 1), Z4::TWO);
        }
        let x1 = Gbf::var(m, 1, Z4::TWO).unwrap();
        let xm = Gbf::var(m, m, Z4::TWO).unwrap();
        let closed = GbfMatrix::new([[f.clone(), &f + &xm], [&f + &x1, &(&f + &x1) + &xm]]).unwrap();
        check(extracted == closed, format!("m={m}: not f J + 2x1 A + 2xm B"))?;
    }
    Ok("m = 2, 3, 4".into())
}

fn standard_count() -> Outcome {
    let brute = brute_force_standard_gcs(2).map_err(err)?;
    let formula = count_standard_gcs(2).map_err(err)?;
    check(brute as u128 == formula && brute == 64, format!("{brute} vs {formula}"))?;
    for pi in Permutation::all(2) {
        for code in 0..64usize {
            let c: Vec<Z4> = (0..3).map(|i| Z4::new(((code >> (2 * i)) & 3) as i64)).collect();
            let (f, g) = standard_gcp(&StandardGcsSpec {
                pi: pi.clone(),
                c,
                c_prime: Z4::new((code % 4) as i64),
                side: if code % 2 == 0 { Side::First } else { Side::Last },
            })
            .map_err(err)?;
            let fs = QamSequence::from_vgbf(&qamgolay::algebra::Vgbf::replicate(&f, 1));
            let gs = QamSequence::from_vgbf(&qamgolay::algebra::Vgbf::replicate(&g, 1));
            check(is_gcp(&fs, &gs).map_err(err)?, "standard pair is not a GCP")?;
        }
    }
    Ok(format!("brute force {brute} = formula {formula}"))
}

fn numeric_complementarity() -> Outcome {
    let specs = suite(SUITE_SEED + 2, 50, 2, 6).map_err(err)?;
    let mut worst = 0f64;
    for spec in &specs {
        let pair = spec.build().map_err(err)?;
        let dev = relative_power_complementarity(&QamSequence::from_vgbf(&pair.f), &QamSequence::from_vgbf(&pair.g), 8)
            .map_err(err)?;
        worst = worst.max(dev);
    }
    check(worst < 1e-9, format!("worst relative deviation {worst:e}"))?;
    for m in 3..=6u128 {
        let quad = m * m - m - 2;
        let expected = [
            (Family::CasesOneToThree, 4, 4032 * m + 4040),
            (Family::CasesFourFive, 4, 14 * quad),
            (Family::NewTriple, 4, 100 * quad),
            (Family::CasesOneToThree, 6, 1047552 * m + 1047584),
            (Family::CasesFourFive, 6, 584 * quad),
            (Family::NewQ6Cases, 6, (3700 + 20 * m) * quad),
        ];
        for (fam, q, want) in expected {
            let got = family_formula(fam, q, m as usize).map_err(err)?;
            check(got == want, format!("{} q={q} m={m}: {got} != {want}", fam.label()))?;
        }
    }
    Ok(format!(
        "{} pairs, worst relative deviation {worst:.2e}; table polynomials match",
        specs.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("exact GCP soundness sweep", gcp_soundness),
        ("reduction to the generalized cases", reduction_equivalence),
        ("q=4 enumeration", q4_enumeration),
        ("q=6 enumeration", q6_enumeration),
        ("lower-bound formula vs generation", lower_bound_agreement),
        ("para-unitary verification", pu_verification),
        ("closed form vs extraction", extraction_consistency),
        ("plain chain oracle", plain_chain_oracle),
        ("standard GCS count", standard_count),
        ("numeric complementarity", numeric_complementarity),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
