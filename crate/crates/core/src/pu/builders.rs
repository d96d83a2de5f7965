use crate::algebra::{GaussianInt, Z4};
use crate::constructions::{PairCase, PairSpec, Recipe, TripleSpec};
use crate::error::{Error, Result};

use super::bh::{weighted_bh_sum, BhMatrix, WeightLayout};
use super::laurent::LaurentMatrix;

/// Extra factor of the pair-based products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Insert<T> {
    None,
    /// right-multiply `diag(values)` after factor `after`
    Diag {
        after: usize,
        values: [T; 2],
    },
    /// entry-wise product with the sub-chain of factors `first..=last`
    Hadamard {
        first: usize,
        last: usize,
        values: [[T; 2]; 2],
    },
}

/// `U^0 D(z_1) U^1 ... D(z_m) U^m` with an optional inserted factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Chain<T> {
    pub factors: Vec<[[T; 2]; 2]>,
    pub insert: Insert<T>,
}

impl<T: Copy> Chain<T> {
    pub fn map<U>(&self, op: impl Fn(T) -> U + Copy) -> Chain<U> {
        let mat = |x: [[T; 2]; 2]| x.map(|r| r.map(op));
        Chain {
            factors: self.factors.iter().map(|&x| mat(x)).collect(),
            insert: match self.insert {
                Insert::None => Insert::None,
                Insert::Diag { after, values } => Insert::Diag {
                    after,
                    values: values.map(op),
                },
                Insert::Hadamard { first, last, values } => Insert::Hadamard {
                    first,
                    last,
                    values: mat(values),
                },
            },
        }
    }

    pub fn m(&self) -> usize {
        self.factors.len() - 1
    }

    /// Maximal runs of factors joined directly by delays, with the inserted
    /// factor attached: `(first, last, attachment)`.
    pub fn blocks(&self) -> Vec<(usize, usize, Option<&Insert<T>>)> {
        let m = self.m();
        match &self.insert {
            Insert::None => vec![(0, m, None)],
            Insert::Diag { after, .. } => vec![(0, *after, Some(&self.insert)), (after + 1, m, None)],
            Insert::Hadamard { first, last, .. } => {
                let mut out = Vec::new();
                if *first > 0 {
                    out.push((0, first - 1, None));
                }
                out.push((*first, *last, Some(&self.insert)));
                if *last < m {
                    out.push((last + 1, m, None));
                }
                out
            }
        }
    }
}

/// `factors[0] D(z_1) factors[1] ... D(z_m) factors[m]`.
pub fn chain_product(m: usize, factors: &[[[GaussianInt; 2]; 2]]) -> Result<LaurentMatrix> {
    if factors.len() != m + 1 {
        return Err(Error::dim("chain factors", m + 1, factors.len()));
    }
    Ok(sub_chain(m, factors, 0, m))
}

fn sub_chain(m: usize, factors: &[[[GaussianInt; 2]; 2]], first: usize, last: usize) -> LaurentMatrix {
    let mut acc = LaurentMatrix::constant(m, factors[first]);
    for (j, f) in factors.iter().enumerate().take(last + 1).skip(first + 1) {
        acc = acc
            .mul(&LaurentMatrix::delay(m, j))
            .mul(&LaurentMatrix::constant(m, *f));
    }
    acc
}

pub(crate) fn evaluate_chain(chain: &Chain<GaussianInt>) -> LaurentMatrix {
    let m = chain.m();
    let mut out: Option<LaurentMatrix> = None;
    for (first, last, attach) in chain.blocks() {
        let mut block = sub_chain(m, &chain.factors, first, last);
        match attach {
            Some(Insert::Diag { values, .. }) => {
                let z = GaussianInt::ZERO;
                block = block.mul(&LaurentMatrix::constant(m, [[values[0], z], [z, values[1]]]));
            }
            Some(Insert::Hadamard { values, .. }) => block = block.hadamard(*values),
            _ => {}
        }
        out = Some(match out {
            None => block,
            Some(acc) => acc.mul(&LaurentMatrix::delay(m, first)).mul(&block),
        });
    }
    out.expect("a chain has at least one block")
}

fn triple_spec_of(recipe: &Recipe) -> (&crate::constructions::TripleLayout, WeightLayout, usize) {
    match recipe {
        Recipe::Triple(s) => (&s.layout, WeightLayout::FirstConstruction, s.m),
        Recipe::Pair(s) => (&s.layout, WeightLayout::SecondConstruction, s.m),
    }
}

fn factorization_of(recipe: &Recipe) -> &[usize] {
    match recipe {
        Recipe::Triple(s) => &s.factorization,
        Recipe::Pair(s) => &s.factorization,
    }
}

fn pair_insert<T>(case: PairCase, diag: [T; 2], hadamard: [[T; 2]; 2]) -> Insert<T> {
    match case {
        PairCase::A { upsilon } => Insert::Diag {
            after: upsilon - 1,
            values: diag,
        },
        PairCase::B { upsilon1, upsilon2 } => Insert::Hadamard {
            first: upsilon1,
            last: upsilon2 - 1,
            values: hadamard,
        },
    }
}

/// The weighted chain: factor `omega_k` is the weighted sum for factor `k`.
pub(crate) fn weighted_chain(recipe: &Recipe) -> Result<Chain<GaussianInt>> {
    recipe.validate()?;
    let (layout, weights, m) = triple_spec_of(recipe);
    let mut factors = vec![BhMatrix::plain().entries(); m + 1];
    for (k, (choices, &w)) in layout.d_choices.iter().zip(&layout.omegas).enumerate() {
        factors[w] = weighted_bh_sum(factorization_of(recipe), k + 1, choices, weights)?;
    }
    let insert = match recipe {
        Recipe::Triple(_) => Insert::None,
        Recipe::Pair(s) => {
            let (q0, q1) = (s.nsgip.image0(), s.nsgip.image1());
            // Conjugates sit in the top-right/bottom-left order so the
            // block's GBF carries b'-b on the first delay and -b'-b on the second.
            pair_insert(s.case, [q0, q1], [[q0, q1.conj()], [q1, q0.conj()]])
        }
    };
    Ok(Chain { factors, insert })
}

/// Phase chain of component `p`: every factor has unit entries.
pub(crate) fn component_chain(recipe: &Recipe, p: usize) -> Result<Chain<Z4>> {
    recipe.validate()?;
    let q = recipe.q();
    if p >= q {
        return Err(Error::range("component", p as i64, format!("0..{q}")));
    }
    let (layout, _, m) = triple_spec_of(recipe);
    let dvs = match recipe {
        Recipe::Triple(s) => s.d_vectors()?,
        Recipe::Pair(s) => s.d_vectors()?,
    };
    let mut factors = vec![BhMatrix::plain().phases(); m + 1];
    for (dv, &w) in dvs.iter().zip(&layout.omegas) {
        factors[w] = BhMatrix::new(dv.d0[p], dv.d1[p], dv.d2[p]).phases();
    }
    let insert = match recipe {
        Recipe::Triple(_) => Insert::None,
        Recipe::Pair(s) => {
            let (b, b_prime) = s.b_vectors()?;
            let (b, bp) = (b[p], b_prime[p]);
            pair_insert(s.case, [b, bp], [[b, -bp], [bp, -b]])
        }
    };
    Ok(Chain { factors, insert })
}

/// Weighted product for a triple-only recipe.
pub fn build_triple_matrix(spec: &TripleSpec) -> Result<LaurentMatrix> {
    build_pu_matrix(&Recipe::Triple(spec.clone()))
}

/// Weighted product for a pair recipe with one pair position.
pub fn build_diag_pair_matrix(spec: &PairSpec) -> Result<LaurentMatrix> {
    if !matches!(spec.case, PairCase::A { .. }) {
        return Err(Error::invalid("case", "expected the one-position case"));
    }
    build_pu_matrix(&Recipe::Pair(spec.clone()))
}

/// Weighted product for a pair recipe with two pair positions.
pub fn build_hadamard_pair_matrix(spec: &PairSpec) -> Result<LaurentMatrix> {
    if !matches!(spec.case, PairCase::B { .. }) {
        return Err(Error::invalid("case", "expected the two-position case"));
    }
    build_pu_matrix(&Recipe::Pair(spec.clone()))
}

pub fn build_pu_matrix(recipe: &Recipe) -> Result<LaurentMatrix> {
    Ok(evaluate_chain(&weighted_chain(recipe)?))
}

/// The `q` unit-entry products whose weighted sum is the full product.
pub fn component_matrices(recipe: &Recipe) -> Result<Vec<LaurentMatrix>> {
    (0..recipe.q())
        .map(|p| Ok(evaluate_chain(&component_chain(recipe, p)?.map(GaussianInt::unit))))
        .collect()
}

/// `sum_p 2^(q-1-p) M^(p)`.
pub fn recombine(components: &[LaurentMatrix]) -> Result<LaurentMatrix> {
    let q = components.len();
    if q == 0 || q > 62 {
        return Err(Error::range("component count", q as i64, "1..=62"));
    }
    let m = components[0].m();
    let mut acc = LaurentMatrix::constant(m, [[GaussianInt::ZERO; 2]; 2]);
    for (p, c) in components.iter().enumerate() {
        if c.m() != m {
            return Err(Error::dim("component variables", m, c.m()));
        }
        acc = acc.add(&c.scale(GaussianInt::real(1 << (q - 1 - p))));
    }
    Ok(acc)
}
