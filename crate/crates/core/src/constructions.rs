//! Golay pair builders over QAM: the standard quaternary pairs, the
//! single-position offsets (cases I-V) and the factorization-driven offsets.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::algebra::{Gbf, MixedRadix, Permutation, Vgbf, Z4};
use crate::error::{Error, Result};
use crate::offsets::{build_b_vectors, build_d_vectors, CTriple, CoefficientMatrix, DVectors, Nsgip};

/// Which end of the path carries the `2x` pairing term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `2 x_{pi(1)}`
    First,
    /// `2 x_{pi(m)}`
    Last,
}

impl Side {
    /// Path position of the pairing variable.
    pub fn position(self, m: usize) -> usize {
        match self {
            Side::First => 1,
            Side::Last => m,
        }
    }
}

/// `2 sum_{j<m} x_{pi(j)} x_{pi(j+1)} + sum_j c_j x_j + c_0`.
pub fn standard_gbf(pi: &Permutation, c: &[Z4]) -> Result<Gbf> {
    let m = pi.len();
    if c.len() != m + 1 {
        return Err(Error::dim("base_c", m + 1, c.len()));
    }
    let mut f = Gbf::affine(m, &c[1..], c[0])?;
    for j in 1..m {
        let mask = (1u32 << (pi.apply(j) - 1)) | (1u32 << (pi.apply(j + 1) - 1));
        f.add_term(mask, Z4::TWO);
    }
    Ok(f)
}

/// Parameters of a standard quaternary Golay pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StandardGcsSpec {
    pub pi: Permutation,
    /// `c_0, c_1, ..., c_m`
    pub c: Vec<Z4>,
    pub c_prime: Z4,
    pub side: Side,
}

impl StandardGcsSpec {
    pub fn m(&self) -> usize {
        self.pi.len()
    }

    pub fn base(&self) -> Result<Gbf> {
        standard_gbf(&self.pi, &self.c)
    }
}

/// `(f, f + 2 x_{pi(1 or m)} + c')`.
pub fn standard_gcp(spec: &StandardGcsSpec) -> Result<(Gbf, Gbf)> {
    let m = spec.m();
    if m == 0 {
        return Err(Error::range("m", 0, ">= 1"));
    }
    let f = spec.base()?;
    let pair_var = Gbf::var(m, spec.pi.apply(spec.side.position(m)), Z4::TWO)?;
    let g = &(&f + &pair_var) + &Gbf::constant(m, spec.c_prime);
    Ok((f, g))
}

/// `(f . 1 + s, f . 1 + s + mu + c' . 1)`.
pub fn build_pair(base: &Gbf, offset: &Vgbf, mu: &Vgbf, c_prime: Z4) -> Result<(Vgbf, Vgbf)> {
    if offset.q() != mu.q() {
        return Err(Error::dim("pairing difference components", offset.q(), mu.q()));
    }
    if base.m() != offset.m() || base.m() != mu.m() {
        return Err(Error::dim("variable count", base.m(), offset.m()));
    }
    let q = offset.q();
    let f = Vgbf::replicate(base, q).try_add(offset)?;
    let shift = mu.try_add(&Vgbf::replicate(&Gbf::constant(base.m(), c_prime), q))?;
    let g = f.try_add(&shift)?;
    Ok((f, g))
}

/// Offset columns over path positions `0..=m+1`; the two boundary positions
/// stand for variables that are identically zero and are dropped.
struct PathOffset {
    matrix: CoefficientMatrix,
}

impl PathOffset {
    fn new(q: usize, m: usize) -> Self {
        PathOffset {
            matrix: CoefficientMatrix::zero(q, m),
        }
    }

    fn constant(&mut self, v: &[Z4]) {
        self.matrix.add_column(0, v);
    }

    fn at(&mut self, position: usize, v: &[Z4]) {
        if (1..=self.matrix.m()).contains(&position) {
            self.matrix.add_column(position, v);
        }
    }

    fn add_triple_vectors(&mut self, omega: usize, dv: &DVectors) {
        self.at(omega, &dv.d1);
        self.at(omega + 1, &dv.d2);
        self.constant(&dv.d0);
    }
}

/// `2 x_{pi(side)} . 1 + correction`.
fn pairing_difference(pi: &Permutation, side: Side, q: usize, correction: Option<&[Z4]>) -> Result<Vgbf> {
    let m = pi.len();
    let two = vec![Z4::TWO; q];
    let mu = Vgbf::linear_vector(m, &two, pi.apply(side.position(m)))?;
    match correction {
        Some(v) => mu.try_add(&Vgbf::constant_vector(m, v)),
        None => Ok(mu),
    }
}

fn negate(v: &[Z4]) -> Vec<Z4> {
    v.iter().map(|&x| -x).collect()
}

fn sub(a: &[Z4], b: &[Z4]) -> Vec<Z4> {
    a.iter().zip(b).map(|(&x, &y)| x - y).collect()
}

/// Position parameters of the pair-based part of the second construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairCase {
    /// one position, `2 <= upsilon <= m - 1`
    A { upsilon: usize },
    /// two positions, `1 <= upsilon1 <= m - 2`, `upsilon1 + 2 <= upsilon2 <= m`
    B { upsilon1: usize, upsilon2: usize },
}

impl PairCase {
    pub fn validate(self, m: usize) -> Result<()> {
        match self {
            PairCase::A { upsilon } => {
                if m < 3 || !(2..m).contains(&upsilon) {
                    return Err(Error::range("upsilon", upsilon as i64, format!("2..={}", m as i64 - 1)));
                }
            }
            PairCase::B { upsilon1, upsilon2 } => {
                if m < 3 || !(1..=m - 2).contains(&upsilon1) {
                    return Err(Error::range(
                        "upsilon1",
                        upsilon1 as i64,
                        format!("1..={}", m as i64 - 2),
                    ));
                }
                if !(upsilon1 + 2..=m).contains(&upsilon2) {
                    return Err(Error::range(
                        "upsilon2",
                        upsilon2 as i64,
                        format!("{}..={m}", upsilon1 + 2),
                    ));
                }
            }
        }
        Ok(())
    }

    fn add_to(self, path: &mut PathOffset, b: &[Z4], b_prime: &[Z4]) {
        path.constant(b);
        match self {
            PairCase::A { upsilon } => path.at(upsilon, &sub(b_prime, b)),
            PairCase::B { upsilon1, upsilon2 } => {
                path.at(upsilon1, &sub(b_prime, b));
                path.at(upsilon2, &sub(&negate(b_prime), b));
            }
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            PairCase::A { .. } => "a",
            PairCase::B { .. } => "b",
        }
    }

    pub fn upsilons(self) -> Vec<usize> {
        match self {
            PairCase::A { upsilon } => vec![upsilon],
            PairCase::B { upsilon1, upsilon2 } => vec![upsilon1, upsilon2],
        }
    }
}

/// The triple-driven part shared by both constructions: one factor per
/// position `omega_k`, each with triples for digit values `1..q_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TripleLayout {
    pub d_choices: Vec<Vec<CTriple>>,
    pub omegas: Vec<usize>,
}

impl TripleLayout {
    fn validate(&self, m: usize) -> Result<()> {
        if self.omegas.len() != self.d_choices.len() {
            return Err(Error::dim("omegas", self.d_choices.len(), self.omegas.len()));
        }
        let mut seen = BTreeSet::new();
        for &w in &self.omegas {
            if w > m {
                return Err(Error::range("omega", w as i64, format!("0..={m}")));
            }
            if !seen.insert(w) {
                return Err(Error::invalid("omegas", format!("position {w} repeated")));
            }
        }
        Ok(())
    }

    /// Offset columns plus the boundary correction for `side`.
    fn apply(&self, dvs: &[DVectors], side: Side, m: usize, path: &mut PathOffset) -> Option<Vec<Z4>> {
        let mut correction = None;
        for (dv, &w) in dvs.iter().zip(&self.omegas) {
            path.add_triple_vectors(w, dv);
            match side {
                Side::First if w == 0 => correction = Some(dv.d1.clone()),
                Side::Last if w == m => correction = Some(dv.d2.clone()),
                _ => {}
            }
        }
        correction
    }
}

/// First construction: `q = q_1 ... q_t`, one position per factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TripleSpec {
    pub m: usize,
    pub factorization: Vec<usize>,
    pub layout: TripleLayout,
    pub mu_side: Side,
}

impl TripleSpec {
    pub fn q(&self) -> usize {
        self.factorization.iter().product()
    }

    pub fn radix(&self) -> Result<MixedRadix> {
        if self.factorization.is_empty() {
            return Err(Error::invalid("factorization", "needs at least one factor"));
        }
        MixedRadix::new(self.factorization.clone())
    }

    pub fn d_vectors(&self) -> Result<Vec<DVectors>> {
        build_d_vectors(&self.radix()?, 0, &self.layout.d_choices)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::range("m", 0, ">= 1"));
        }
        self.d_vectors()?;
        self.layout.validate(self.m)
    }
}

/// Offset and pairing difference of the first construction.
pub fn triple_offset(spec: &TripleSpec, pi: &Permutation) -> Result<(Vgbf, Vgbf)> {
    spec.validate()?;
    check_pi(pi, spec.m)?;
    let dvs = spec.d_vectors()?;
    let mut path = PathOffset::new(spec.q(), spec.m);
    let correction = spec.layout.apply(&dvs, spec.mu_side, spec.m, &mut path);
    let s = path.matrix.to_offset(pi)?;
    let mu = pairing_difference(pi, spec.mu_side, spec.q(), correction.as_deref())?;
    Ok((s, mu))
}

/// Second construction: `q = q_0 q_1 ... q_t` with a pair over `Q_{q_0}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairSpec {
    pub m: usize,
    /// `q_0, q_1, ..., q_t`
    pub factorization: Vec<usize>,
    pub layout: TripleLayout,
    pub nsgip: Nsgip,
    pub case: PairCase,
    pub mu_side: Side,
}

impl PairSpec {
    pub fn q(&self) -> usize {
        self.factorization.iter().product()
    }

    pub fn radix(&self) -> Result<MixedRadix> {
        if self.factorization.is_empty() {
            return Err(Error::invalid("factorization", "needs the leading factor q0"));
        }
        MixedRadix::new(self.factorization.clone())
    }

    pub fn d_vectors(&self) -> Result<Vec<DVectors>> {
        build_d_vectors(&self.radix()?, 1, &self.layout.d_choices)
    }

    pub fn b_vectors(&self) -> Result<(Vec<Z4>, Vec<Z4>)> {
        build_b_vectors(&self.radix()?, &self.nsgip)
    }

    pub fn validate(&self) -> Result<()> {
        if self.factorization.first().is_some_and(|&q0| q0 < 3) {
            return Err(Error::range("q0", self.factorization[0] as i64, ">= 3"));
        }
        self.d_vectors()?;
        self.b_vectors()?;
        self.layout.validate(self.m)?;
        self.case.validate(self.m)
    }
}

/// Offset and pairing difference of the second construction.
pub fn pair_offset(spec: &PairSpec, pi: &Permutation) -> Result<(Vgbf, Vgbf)> {
    spec.validate()?;
    check_pi(pi, spec.m)?;
    let dvs = spec.d_vectors()?;
    let (b, b_prime) = spec.b_vectors()?;
    let mut path = PathOffset::new(spec.q(), spec.m);
    let correction = spec.layout.apply(&dvs, spec.mu_side, spec.m, &mut path);
    spec.case.add_to(&mut path, &b, &b_prime);
    let s = path.matrix.to_offset(pi)?;
    let mu = pairing_difference(pi, spec.mu_side, spec.q(), correction.as_deref())?;
    Ok((s, mu))
}

fn check_pi(pi: &Permutation, m: usize) -> Result<()> {
    if pi.len() != m {
        return Err(Error::dim("pi", m, pi.len()));
    }
    Ok(())
}

/// The single-position offsets that predate the factorized constructions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GeneralizedCase {
    /// `d0 + d1 x_{pi(omega)} + d2 x_{pi(omega+1)}`; `triples[p-1]` is row `p`.
    SingleTriple { triples: Vec<CTriple>, omega: usize },
    /// `b + (b' - b) x_{pi(upsilon)}`
    OnePairPosition { nsgip: Nsgip, upsilon: usize },
    /// `b + (b' - b) x_{pi(upsilon1)} + (-b' - b) x_{pi(upsilon2)}`
    TwoPairPositions {
        nsgip: Nsgip,
        upsilon1: usize,
        upsilon2: usize,
    },
}

/// Offset and pairing difference written out row by row, without digit machinery.
///
/// The single-triple case only admits the plain pairing term away from the
/// matching boundary: `2x_{pi(1)}` needs `omega != 0` and `2x_{pi(m)}` needs
/// `omega != m`.
pub fn generalized_case(case: &GeneralizedCase, pi: &Permutation, side: Side) -> Result<(Vgbf, Vgbf)> {
    let m = pi.len();
    if m == 0 {
        return Err(Error::range("m", 0, ">= 1"));
    }
    let lin = |coeffs: &[Z4], pos: usize| -> Result<Vgbf> {
        if (1..=m).contains(&pos) {
            Vgbf::linear_vector(m, coeffs, pi.apply(pos))
        } else {
            Ok(Vgbf::zero(coeffs.len(), m))
        }
    };
    let s = match case {
        GeneralizedCase::SingleTriple { triples, omega } => {
            let omega = *omega;
            if omega > m {
                return Err(Error::range("omega", omega as i64, format!("0..={m}")));
            }
            let blocked = match side {
                Side::First => omega == 0,
                Side::Last => omega == m,
            };
            if blocked {
                return Err(Error::invalid(
                    "mu_side",
                    format!("the plain pairing term on the {side:?} side does not pair with omega = {omega}"),
                ));
            }
            let column = |i: usize| -> Vec<Z4> {
                std::iter::once(Z4::ZERO)
                    .chain(triples.iter().map(|t| t.as_array()[i]))
                    .collect()
            };
            let (d0, d1, d2) = (column(0), column(1), column(2));
            Vgbf::constant_vector(m, &d0)
                .try_add(&lin(&d1, omega)?)?
                .try_add(&lin(&d2, omega + 1)?)?
        }
        GeneralizedCase::OnePairPosition { nsgip, upsilon } => {
            PairCase::A { upsilon: *upsilon }.validate(m)?;
            let (b, bp) = plain_b_vectors(nsgip);
            Vgbf::constant_vector(m, &b).try_add(&lin(&sub(&bp, &b), *upsilon)?)?
        }
        GeneralizedCase::TwoPairPositions {
            nsgip,
            upsilon1,
            upsilon2,
        } => {
            PairCase::B {
                upsilon1: *upsilon1,
                upsilon2: *upsilon2,
            }
            .validate(m)?;
            let (b, bp) = plain_b_vectors(nsgip);
            Vgbf::constant_vector(m, &b)
                .try_add(&lin(&sub(&bp, &b), *upsilon1)?)?
                .try_add(&lin(&sub(&negate(&bp), &b), *upsilon2)?)?
        }
    };
    let mu = pairing_difference(pi, side, s.q(), None)?;
    Ok((s, mu))
}

fn plain_b_vectors(nsgip: &Nsgip) -> (Vec<Z4>, Vec<Z4>) {
    let lead = |v: &[Z4]| std::iter::once(Z4::ZERO).chain(v.iter().copied()).collect();
    (lead(nsgip.b()), lead(nsgip.b_prime()))
}

/// Which construction a recipe uses.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Recipe {
    Triple(TripleSpec),
    Pair(PairSpec),
}

/// A complete, serializable recipe for one QAM Golay pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SpecRepr", into = "SpecRepr")]
pub struct ConstructionSpec {
    pub recipe: Recipe,
    pub pi: Permutation,
    /// `c_0, ..., c_m` of the quadratic base function
    pub base_c: Vec<Z4>,
    pub c_prime: Z4,
}

/// A built pair together with its ingredients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructedPair {
    pub base: Gbf,
    pub offset: Vgbf,
    pub mu: Vgbf,
    pub f: Vgbf,
    pub g: Vgbf,
}

impl Recipe {
    pub fn m(&self) -> usize {
        match self {
            Recipe::Triple(s) => s.m,
            Recipe::Pair(s) => s.m,
        }
    }

    pub fn q(&self) -> usize {
        match self {
            Recipe::Triple(s) => s.q(),
            Recipe::Pair(s) => s.q(),
        }
    }

    pub fn family(&self) -> u8 {
        match self {
            Recipe::Triple(_) => 1,
            Recipe::Pair(_) => 2,
        }
    }

    pub fn mu_side(&self) -> Side {
        match self {
            Recipe::Triple(s) => s.mu_side,
            Recipe::Pair(s) => s.mu_side,
        }
    }

    /// The same recipe with the pairing difference taken on `side`.
    pub fn with_side(&self, side: Side) -> Recipe {
        let mut out = self.clone();
        match &mut out {
            Recipe::Triple(s) => s.mu_side = side,
            Recipe::Pair(s) => s.mu_side = side,
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Recipe::Triple(s) => s.validate(),
            Recipe::Pair(s) => s.validate(),
        }
    }

    pub fn offset(&self, pi: &Permutation) -> Result<(Vgbf, Vgbf)> {
        match self {
            Recipe::Triple(s) => triple_offset(s, pi),
            Recipe::Pair(s) => pair_offset(s, pi),
        }
    }
}

impl ConstructionSpec {
    pub fn m(&self) -> usize {
        self.recipe.m()
    }

    pub fn q(&self) -> usize {
        self.recipe.q()
    }

    pub fn family(&self) -> u8 {
        self.recipe.family()
    }

    pub fn mu_side(&self) -> Side {
        self.recipe.mu_side()
    }

    pub fn validate(&self) -> Result<()> {
        self.recipe.validate()?;
        check_pi(&self.pi, self.m())?;
        if self.base_c.len() != self.m() + 1 {
            return Err(Error::dim("base_c", self.m() + 1, self.base_c.len()));
        }
        Ok(())
    }

    pub fn offset(&self) -> Result<(Vgbf, Vgbf)> {
        self.recipe.offset(&self.pi)
    }

    pub fn coefficient_matrix(&self) -> Result<CoefficientMatrix> {
        CoefficientMatrix::from_offset(&self.offset()?.0, &self.pi)
    }

    pub fn build(&self) -> Result<ConstructedPair> {
        self.validate()?;
        let base = standard_gbf(&self.pi, &self.base_c)?;
        let (offset, mu) = self.offset()?;
        let (f, g) = build_pair(&base, &offset, &mu, self.c_prime)?;
        Ok(ConstructedPair { base, offset, mu, f, g })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecRepr {
    theorem: u8,
    q: usize,
    m: usize,
    factorization: Vec<usize>,
    d_choices: BTreeMap<usize, Vec<CTriple>>,
    omegas: Vec<usize>,
    nsgip: Option<Nsgip>,
    case: Option<String>,
    #[serde(default)]
    upsilons: Vec<usize>,
    pi: Permutation,
    base_c: Vec<Z4>,
    #[serde(default)]
    c_prime: Z4,
    mu_side: Side,
}

impl TryFrom<SpecRepr> for ConstructionSpec {
    type Error = Error;
    fn try_from(r: SpecRepr) -> Result<Self> {
        let first_factor = match r.theorem {
            1 => 0,
            2 => 1,
            t => return Err(Error::range("theorem", t as i64, "1 or 2")),
        };
        let t = r.factorization.len().saturating_sub(first_factor);
        let keys: Vec<usize> = r.d_choices.keys().copied().collect();
        if keys != (1..=t).collect::<Vec<_>>() {
            return Err(Error::invalid(
                "d_choices",
                format!("expected keys 1..={t} (one per factor after the leading one), found {keys:?}"),
            ));
        }
        let layout = TripleLayout {
            d_choices: r.d_choices.into_values().collect(),
            omegas: r.omegas,
        };
        let recipe = if r.theorem == 1 {
            if r.nsgip.is_some() || r.case.is_some() || !r.upsilons.is_empty() {
                return Err(Error::invalid(
                    "nsgip",
                    "pair-based fields are only used by the pair family",
                ));
            }
            Recipe::Triple(TripleSpec {
                m: r.m,
                factorization: r.factorization,
                layout,
                mu_side: r.mu_side,
            })
        } else {
            let nsgip = r
                .nsgip
                .ok_or_else(|| Error::invalid("nsgip", "required by the pair family"))?;
            let case = match (r.case.as_deref(), r.upsilons.as_slice()) {
                (Some("a"), &[upsilon]) => PairCase::A { upsilon },
                (Some("b"), &[upsilon1, upsilon2]) => PairCase::B { upsilon1, upsilon2 },
                (Some("a"), u) | (Some("b"), u) => {
                    return Err(Error::invalid(
                        "upsilons",
                        format!("case a takes one position and case b two, found {}", u.len()),
                    ))
                }
                (other, _) => {
                    return Err(Error::invalid(
                        "case",
                        format!("expected \"a\" or \"b\", found {other:?}"),
                    ))
                }
            };
            Recipe::Pair(PairSpec {
                m: r.m,
                factorization: r.factorization,
                layout,
                nsgip,
                case,
                mu_side: r.mu_side,
            })
        };
        let spec = ConstructionSpec {
            recipe,
            pi: r.pi,
            base_c: r.base_c,
            c_prime: r.c_prime,
        };
        if spec.q() != r.q {
            return Err(Error::invalid(
                "q",
                format!("{} does not equal the factorization product {}", r.q, spec.q()),
            ));
        }
        spec.validate()?;
        Ok(spec)
    }
}

impl From<ConstructionSpec> for SpecRepr {
    fn from(s: ConstructionSpec) -> Self {
        let q = s.q();
        let m = s.m();
        let (theorem, factorization, layout, nsgip, case, mu_side) = match s.recipe {
            Recipe::Triple(t) => (1, t.factorization, t.layout, None, None, t.mu_side),
            Recipe::Pair(t) => (2, t.factorization, t.layout, Some(t.nsgip), Some(t.case), t.mu_side),
        };
        SpecRepr {
            theorem,
            q,
            m,
            factorization,
            d_choices: layout
                .d_choices
                .into_iter()
                .enumerate()
                .map(|(k, v)| (k + 1, v))
                .collect(),
            omegas: layout.omegas,
            nsgip,
            case: case.map(|c| c.label().to_string()),
            upsilons: case.map(PairCase::upsilons).unwrap_or_default(),
            pi: s.pi,
            base_c: s.base_c,
            c_prime: s.c_prime,
            mu_side,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golay::{is_gcp, QamSequence};

    fn zv(v: &[i64]) -> Vec<Z4> {
        v.iter().map(|&x| Z4::new(x)).collect()
    }

    fn t(a: i64, b: i64, c: i64) -> CTriple {
        CTriple::from_ints(a, b, c).unwrap()
    }

    fn gcp(f: &Vgbf, g: &Vgbf) -> bool {
        is_gcp(&QamSequence::from_vgbf(f), &QamSequence::from_vgbf(g)).unwrap()
    }

    #[test]
    fn standard_pairs() {
        let spec = StandardGcsSpec {
            pi: Permutation::identity(1),
            c: zv(&[0, 0]),
            c_prime: Z4::ZERO,
            side: Side::First,
        };
        let (f, g) = standard_gcp(&spec).unwrap();
        let fs = QamSequence::from_vgbf(&Vgbf::new(vec![f]).unwrap());
        let gs = QamSequence::from_vgbf(&Vgbf::new(vec![g]).unwrap());
        assert_eq!(fs.values(), &[crate::algebra::GaussianInt::ONE; 2]);
        assert_eq!(gs.values()[1], -crate::algebra::GaussianInt::ONE);

        let spec2 = StandardGcsSpec {
            pi: Permutation::identity(2),
            c: zv(&[0, 0, 0]),
            c_prime: Z4::ZERO,
            side: Side::First,
        };
        let (f, g) = standard_gcp(&spec2).unwrap();
        assert_eq!(f, Gbf::from_terms(2, [(vec![1, 2], Z4::TWO)]).unwrap());
        assert_eq!(f.eval(&[true, true]).unwrap(), Z4::TWO);
        assert!(gcp(&Vgbf::new(vec![f]).unwrap(), &Vgbf::new(vec![g]).unwrap()));

        let spec3 = StandardGcsSpec {
            pi: Permutation::new(vec![2, 1, 3]).unwrap(),
            c: zv(&[1, 2, 3, 0]),
            c_prime: Z4::TWO,
            side: Side::Last,
        };
        let (f, g) = standard_gcp(&spec3).unwrap();
        assert!(gcp(&Vgbf::new(vec![f]).unwrap(), &Vgbf::new(vec![g]).unwrap()));
    }

    fn thm1(m: usize, fact: Vec<usize>, choices: Vec<Vec<CTriple>>, omegas: Vec<usize>, side: Side) -> TripleSpec {
        TripleSpec {
            m,
            factorization: fact,
            layout: TripleLayout {
                d_choices: choices,
                omegas,
            },
            mu_side: side,
        }
    }

    #[test]
    fn zero_choices_collapse_to_replicated_standard_pair() {
        let spec = thm1(
            3,
            vec![2, 2],
            vec![vec![CTriple::ZERO], vec![CTriple::ZERO]],
            vec![0, 2],
            Side::First,
        );
        let pi = Permutation::identity(3);
        let (s, mu) = triple_offset(&spec, &pi).unwrap();
        assert_eq!(s, Vgbf::zero(4, 3));
        assert_eq!(mu, Vgbf::linear_vector(3, &[Z4::TWO; 4], 1).unwrap());
    }

    #[test]
    fn boundary_correction_on_first_side() {
        let d = t(1, 1, 1);
        let spec = thm1(3, vec![2, 2], vec![vec![d], vec![d]], vec![0, 2], Side::First);
        let pi = Permutation::identity(3);
        let (s, mu) = triple_offset(&spec, &pi).unwrap();
        let d1 = spec.d_vectors().unwrap()[0].d1.clone();
        let expected = Vgbf::linear_vector(3, &[Z4::TWO; 4], 1)
            .unwrap()
            .try_add(&Vgbf::constant_vector(3, &d1))
            .unwrap();
        assert_eq!(mu, expected);
        let base = standard_gbf(&pi, &zv(&[0, 0, 0, 0])).unwrap();
        let (f, g) = build_pair(&base, &s, &mu, Z4::ZERO).unwrap();
        assert!(gcp(&f, &g));
    }

    #[test]
    fn validation_errors() {
        let d = t(1, 1, 1);
        let pi = Permutation::identity(3);
        let dup = thm1(3, vec![2, 2], vec![vec![d], vec![d]], vec![1, 1], Side::First);
        assert!(triple_offset(&dup, &pi).is_err());
        let far = thm1(3, vec![2], vec![vec![d]], vec![4], Side::First);
        assert!(triple_offset(&far, &pi).is_err());
        let short = thm1(3, vec![3], vec![vec![d]], vec![1], Side::First);
        assert!(triple_offset(&short, &pi).is_err());
        assert!(PairCase::A { upsilon: 1 }.validate(4).is_err());
        assert!(PairCase::A { upsilon: 4 }.validate(4).is_err());
        assert!(PairCase::B {
            upsilon1: 2,
            upsilon2: 3
        }
        .validate(4)
        .is_err());
        assert!(PairCase::B {
            upsilon1: 1,
            upsilon2: 3
        }
        .validate(4)
        .is_ok());
    }

    fn example_nsgip() -> Nsgip {
        Nsgip::new(zv(&[0, 2]), zv(&[1, 1])).unwrap()
    }

    /// Row-by-row assembly with raw triples, used for the worked tables whose
    /// triples sit outside the admissible set.
    fn raw_matrix(q: usize, m: usize, columns: &[(usize, Vec<Z4>)]) -> CoefficientMatrix {
        let mut mtx = CoefficientMatrix::zero(q, m);
        for (j, v) in columns {
            if *j <= m {
                mtx.add_column(*j, v);
            }
        }
        mtx
    }

    #[test]
    fn worked_matrix_first_construction() {
        // q = 6 = 3 x 2, omega_1 = m, omega_2 = omega; raw digit tables as printed
        let radix = MixedRadix::new(vec![3, 2]).unwrap();
        let z = Z4::new;
        let f1 =
            DVectors::from_table(&radix, 0, &[[z(0), z(0), z(0)], [z(0), z(1), z(3)], [z(1), z(0), z(2)]]).unwrap();
        let f2 = DVectors::from_table(&radix, 1, &[[z(0), z(0), z(0)], [z(3), z(1), z(2)]]).unwrap();
        let (m, omega) = (5, 2);
        let mtx = raw_matrix(
            6,
            m,
            &[
                (m, f1.d1.clone()),
                (m + 1, f1.d2.clone()),
                (0, f1.d0.clone()),
                (omega, f2.d1.clone()),
                (omega + 1, f2.d2.clone()),
                (0, f2.d0.clone()),
            ],
        );
        assert_eq!(mtx.column(0), zv(&[0, 0, 1, 3, 3, 0]));
        assert_eq!(mtx.column(omega), zv(&[0, 0, 0, 1, 1, 1]));
        assert_eq!(mtx.column(omega + 1), zv(&[0, 0, 0, 2, 2, 2]));
        assert_eq!(mtx.column(m), zv(&[0, 1, 0, 0, 1, 0]));
        assert_eq!(mtx.nonzero_linear_columns(), vec![omega, omega + 1, m]);
    }

    #[test]
    fn worked_matrix_second_construction() {
        // row p of the worked table is
        // d1 x_omega + d2 x_{omega+1} + (b'_p - b_p) x_{u1} + (-b'_p - b_p) x_{u2} + d0 + b_p
        // with u1 = omega; the constant and u2 columns agree with the printed matrix,
        // the omega and omega+1 columns follow the row formulas
        let radix = MixedRadix::new(vec![3, 2]).unwrap();
        let z = Z4::new;
        let f1 = DVectors::from_table(&radix, 1, &[[z(0), z(0), z(0)], [z(3), z(1), z(2)]]).unwrap();
        let (b, bp) = build_b_vectors(&radix, &example_nsgip()).unwrap();
        let (m, omega, upsilon2) = (5, 1, 4);
        let mtx = raw_matrix(
            6,
            m,
            &[
                (omega, f1.d1.clone()),
                (omega + 1, f1.d2.clone()),
                (0, f1.d0.clone()),
                (0, b.clone()),
                (omega, sub(&bp, &b)),
                (upsilon2, sub(&negate(&bp), &b)),
            ],
        );
        assert_eq!(mtx.column(0), zv(&[0, 0, 2, 3, 3, 1]));
        assert_eq!(mtx.column(upsilon2), zv(&[0, 3, 1, 0, 3, 1]));
        assert_eq!(mtx.column(omega), zv(&[0, 1, 3, 1, 2, 0]));
        assert_eq!(mtx.column(omega + 1), zv(&[0, 0, 0, 2, 2, 2]));
        assert_eq!(mtx.nonzero_linear_columns(), vec![omega, omega + 1, upsilon2]);
    }

    #[test]
    fn worked_rows_with_admissible_triples() {
        // same shape as the worked table, with (3,1,1) so the builder accepts it
        let spec = PairSpec {
            m: 5,
            factorization: vec![3, 2],
            layout: TripleLayout {
                d_choices: vec![vec![t(3, 1, 1)]],
                omegas: vec![1],
            },
            nsgip: example_nsgip(),
            case: PairCase::B {
                upsilon1: 1,
                upsilon2: 4,
            },
            mu_side: Side::Last,
        };
        let pi = Permutation::identity(5);
        let (s, mu) = pair_offset(&spec, &pi).unwrap();
        let mtx = CoefficientMatrix::from_offset(&s, &pi).unwrap();
        assert_eq!(mtx.column(0), zv(&[0, 0, 2, 3, 3, 1]));
        assert_eq!(mtx.column(1), zv(&[0, 1, 3, 1, 2, 0]));
        assert_eq!(mtx.column(2), zv(&[0, 0, 0, 1, 1, 1]));
        assert_eq!(mtx.column(4), zv(&[0, 3, 1, 0, 3, 1]));
        let base = standard_gbf(&pi, &[Z4::ZERO; 6]).unwrap();
        let (f, g) = build_pair(&base, &s, &mu, Z4::ZERO).unwrap();
        assert!(gcp(&f, &g));
    }

    #[test]
    fn single_factor_matches_single_triple_case() {
        let pi = Permutation::new(vec![3, 1, 4, 2]).unwrap();
        let triples = vec![t(1, 1, 1), t(2, 3, 1), t(0, 2, 2)];
        for omega in 1..4 {
            for side in [Side::First, Side::Last] {
                let spec = thm1(4, vec![4], vec![triples.clone()], vec![omega], side);
                let a = triple_offset(&spec, &pi).unwrap();
                let b = generalized_case(
                    &GeneralizedCase::SingleTriple {
                        triples: triples.clone(),
                        omega,
                    },
                    &pi,
                    side,
                )
                .unwrap();
                assert_eq!(a, b);
            }
        }
        let err = generalized_case(
            &GeneralizedCase::SingleTriple {
                triples: triples.clone(),
                omega: 0,
            },
            &pi,
            Side::First,
        );
        assert!(err.is_err());
    }

    #[test]
    fn one_pair_position_form() {
        let pi = Permutation::identity(4);
        let (s, _) = generalized_case(
            &GeneralizedCase::OnePairPosition {
                nsgip: example_nsgip(),
                upsilon: 2,
            },
            &pi,
            Side::First,
        )
        .unwrap();
        let b = zv(&[0, 0, 2]);
        let bp = zv(&[0, 1, 1]);
        let expected = Vgbf::constant_vector(4, &b)
            .try_add(&Vgbf::linear_vector(4, &sub(&bp, &b), 2).unwrap())
            .unwrap();
        assert_eq!(s, expected);
    }

    #[test]
    fn spec_json_round_trip() {
        let spec = ConstructionSpec {
            recipe: Recipe::Pair(PairSpec {
                m: 4,
                factorization: vec![3, 2],
                layout: TripleLayout {
                    d_choices: vec![vec![t(1, 1, 1)]],
                    omegas: vec![0],
                },
                nsgip: example_nsgip(),
                case: PairCase::A { upsilon: 2 },
                mu_side: Side::First,
            }),
            pi: Permutation::new(vec![2, 1, 4, 3]).unwrap(),
            base_c: zv(&[1, 0, 2, 3, 1]),
            c_prime: Z4::THREE,
        };
        let text = serde_json::to_string(&spec).unwrap();
        let back: ConstructionSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
        let pair = spec.build().unwrap();
        assert!(gcp(&pair.f, &pair.g));
        let broken = text.replace("\"q\":6", "\"q\":7");
        let err = serde_json::from_str::<ConstructionSpec>(&broken).unwrap_err();
        assert!(err.to_string().contains("q"));
    }
}
