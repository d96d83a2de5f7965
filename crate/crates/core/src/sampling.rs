//! Seeded pseudorandom recipes for reproducible test suites.
//!
//! Every sampler draws from `ChaCha8Rng::seed_from_u64(seed)` (rand_chacha
//! 0.3) in a fixed order; [`GENERATOR`] names that convention.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Permutation, Z4};
use crate::constructions::{ConstructionSpec, PairCase, PairSpec, Recipe, Side, TripleLayout, TripleSpec};
use crate::error::{Error, Result};
use crate::offsets::{enumerate_nsgip, set_c, CTriple};

pub const GENERATOR: &str = "chacha8rng-v1";

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape of the pair part of a pair recipe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseKind {
    OnePosition,
    TwoPositions,
}

/// Which recipe family to sample and with what factorization.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Template {
    Triple {
        factorization: Vec<usize>,
    },
    /// `factorization[0]` is the pair factor `q0`
    Pair {
        factorization: Vec<usize>,
        case: CaseKind,
    },
}

impl Template {
    pub fn min_m(&self) -> usize {
        match self {
            Template::Triple { factorization } => factorization.len().saturating_sub(1).max(1),
            Template::Pair { .. } => 3,
        }
    }

    fn triple_count(&self) -> usize {
        match self {
            Template::Triple { factorization } => factorization.len(),
            Template::Pair { factorization, .. } => factorization.len() - 1,
        }
    }
}

/// Where to pin one triple position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    Any,
    Start,
    End,
}

fn random_choices(rng: &mut ChaCha8Rng, radices: &[usize]) -> Vec<Vec<CTriple>> {
    let c = set_c();
    radices
        .iter()
        .map(|&qk| (1..qk).map(|_| *c.choose(rng).expect("nonempty")).collect())
        .collect()
}

fn random_omegas(rng: &mut ChaCha8Rng, t: usize, m: usize, boundary: Boundary) -> Vec<usize> {
    let mut positions: Vec<usize> = (0..=m).collect();
    positions.shuffle(rng);
    let mut omegas: Vec<usize> = positions.into_iter().take(t).collect();
    let pin = match boundary {
        Boundary::Any => None,
        Boundary::Start => Some(0),
        Boundary::End => Some(m),
    };
    if let (Some(p), false) = (pin, omegas.is_empty()) {
        if !omegas.contains(&p) {
            let k = rng.gen_range(0..omegas.len());
            omegas[k] = p;
        }
    }
    omegas
}

/// One random recipe of the template's shape.
pub fn sample_recipe(
    rng: &mut ChaCha8Rng,
    template: &Template,
    m: usize,
    side: Side,
    boundary: Boundary,
) -> Result<Recipe> {
    if m < template.min_m() {
        return Err(Error::range("m", m as i64, format!(">= {}", template.min_m())));
    }
    let t = template.triple_count();
    if t > m + 1 {
        return Err(Error::range("m", m as i64, format!(">= {}", t - 1)));
    }
    let recipe = match template {
        Template::Triple { factorization } => {
            let d_choices = random_choices(rng, factorization);
            let omegas = random_omegas(rng, t, m, boundary);
            Recipe::Triple(TripleSpec {
                m,
                factorization: factorization.clone(),
                layout: TripleLayout { d_choices, omegas },
                mu_side: side,
            })
        }
        Template::Pair { factorization, case } => {
            let d_choices = random_choices(rng, &factorization[1..]);
            let omegas = random_omegas(rng, t, m, boundary);
            let nsgip = enumerate_nsgip(factorization[0])?
                .choose(rng)
                .cloned()
                .ok_or_else(|| Error::invalid("factorization", "no pair over the leading factor"))?;
            let case = match case {
                CaseKind::OnePosition => PairCase::A {
                    upsilon: rng.gen_range(2..m),
                },
                CaseKind::TwoPositions => {
                    let upsilon1 = rng.gen_range(1..=m - 2);
                    PairCase::B {
                        upsilon1,
                        upsilon2: rng.gen_range(upsilon1 + 2..=m),
                    }
                }
            };
            Recipe::Pair(PairSpec {
                m,
                factorization: factorization.clone(),
                layout: TripleLayout { d_choices, omegas },
                nsgip,
                case,
                mu_side: side,
            })
        }
    };
    recipe.validate()?;
    Ok(recipe)
}

/// A full spec: random recipe, permutation, base coefficients and `c'`.
pub fn sample_spec(
    rng: &mut ChaCha8Rng,
    template: &Template,
    m: usize,
    side: Side,
    boundary: Boundary,
) -> Result<ConstructionSpec> {
    let recipe = sample_recipe(rng, template, m, side, boundary)?;
    let mut images: Vec<usize> = (1..=m).collect();
    images.shuffle(rng);
    let pi = Permutation::new(images)?;
    let base_c = (0..=m).map(|_| Z4::new(rng.gen_range(0..4))).collect();
    let c_prime = Z4::new(rng.gen_range(0..4));
    let spec = ConstructionSpec {
        recipe,
        pi,
        base_c,
        c_prime,
    };
    spec.validate()?;
    Ok(spec)
}

/// The templates cycled through by [`suite`]: triple recipes with
/// `q` in {2, 4, 6, 8} and pair recipes with `q` in {3, 6, 12}.
pub fn standard_templates() -> Vec<Template> {
    let triple = |f: &[usize]| Template::Triple {
        factorization: f.to_vec(),
    };
    let pair = |f: &[usize], case| Template::Pair {
        factorization: f.to_vec(),
        case,
    };
    vec![
        triple(&[2]),
        triple(&[2, 2]),
        triple(&[3, 2]),
        triple(&[2, 3]),
        triple(&[2, 2, 2]),
        pair(&[3], CaseKind::OnePosition),
        pair(&[3], CaseKind::TwoPositions),
        pair(&[3, 2], CaseKind::OnePosition),
        pair(&[3, 2], CaseKind::TwoPositions),
        pair(&[3, 2, 2], CaseKind::OnePosition),
        pair(&[3, 2, 2], CaseKind::TwoPositions),
    ]
}

/// `count` specs cycling through templates, sides and boundary placements,
/// with `m` drawn from `min_m..=max_m` (raised to each template's minimum).
pub fn suite(seed: u64, count: usize, min_m: usize, max_m: usize) -> Result<Vec<ConstructionSpec>> {
    let templates = standard_templates();
    let mut rng = rng_from_seed(seed);
    let sides = [Side::First, Side::Last];
    let boundaries = [Boundary::Start, Boundary::End, Boundary::Any];
    (0..count)
        .map(|i| {
            let template = &templates[i % templates.len()];
            let round = i / templates.len();
            let side = sides[round % 2];
            let boundary = boundaries[(round / 2) % 3];
            let lo = min_m.max(template.min_m());
            if lo > max_m {
                return Err(Error::range("max_m", max_m as i64, format!(">= {lo}")));
            }
            let m = rng.gen_range(lo..=max_m);
            sample_spec(&mut rng, template, m, side, boundary)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_is_reproducible_and_covers_shapes() {
        let a = suite(7, 66, 2, 6).unwrap();
        assert_eq!(a, suite(7, 66, 2, 6).unwrap());
        assert_ne!(a, suite(8, 66, 2, 6).unwrap());
        let qs: std::collections::BTreeSet<usize> = a.iter().map(|s| s.q()).collect();
        assert_eq!(qs.into_iter().collect::<Vec<_>>(), vec![2, 3, 4, 6, 8, 12]);
        let start = a.iter().filter(|s| match &s.recipe {
            Recipe::Triple(t) => t.layout.omegas.contains(&0),
            Recipe::Pair(p) => p.layout.omegas.contains(&0),
        });
        assert!(start.count() > 5);
    }

    #[test]
    fn small_m_rejected() {
        let mut rng = rng_from_seed(1);
        let t = Template::Pair {
            factorization: vec![3],
            case: CaseKind::OnePosition,
        };
        assert!(sample_recipe(&mut rng, &t, 2, Side::First, Boundary::Any).is_err());
    }
}
