//! Offset counts: closed-form polynomials and exhaustive generation.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Permutation, Z4};
use crate::constructions::{standard_gbf, PairCase, PairSpec, Recipe, Side, TripleLayout, TripleSpec};
use crate::error::{Error, Result};
use crate::offsets::{class_members, enumerate_nsgip, set_c, CClass, CTriple, CoefficientMatrix};

/// `(m!/2) 4^(m+1)`, the number of distinct standard quadratic GBFs.
pub fn count_standard_gcs(m: usize) -> Result<u128> {
    if !(2..=25).contains(&m) {
        return Err(Error::range("m", m as i64, "2..=25"));
    }
    let fact: u128 = (1..=m as u128).product();
    Ok(fact / 2 * 4u128.pow(m as u32 + 1))
}

/// Distinct standard GBFs over all permutations and coefficient vectors.
pub fn brute_force_standard_gcs(m: usize) -> Result<usize> {
    if !(2..=4).contains(&m) {
        return Err(Error::range("m", m as i64, "2..=4"));
    }
    let mut seen = std::collections::BTreeSet::new();
    for pi in Permutation::all(m) {
        for code in 0..4usize.pow(m as u32 + 1) {
            let c: Vec<Z4> = (0..=m).map(|i| Z4::new(((code >> (2 * i)) & 3) as i64)).collect();
            let f = standard_gbf(&pi, &c)?;
            seen.insert(f.terms().iter().map(|(&k, &v)| (k, v.value())).collect::<Vec<_>>());
        }
    }
    Ok(seen.len())
}

fn falling(n: u128, k: u128) -> u128 {
    (0..k).map(|i| n - i).product()
}

/// `(m+1) (m-t)!/(m-2t+1)! prod_k (14^(q_k-1) - 2 * 2^(q_k-1))`.
pub fn lower_bound_new_offsets(m: usize, factorization: &[usize]) -> Result<u128> {
    let t = factorization.len();
    if t == 0 {
        return Err(Error::invalid("factorization", "needs at least one factor"));
    }
    if let Some(&bad) = factorization.iter().find(|&&qk| qk < 2) {
        return Err(Error::range("factor", bad as i64, ">= 2"));
    }
    if m + 1 < 2 * t {
        return Err(Error::range("m", m as i64, format!(">= {}", 2 * t - 1)));
    }
    let mut total = (m as u128 + 1) * falling((m - t) as u128, (t - 1) as u128);
    for &qk in factorization {
        let e = qk as u32 - 1;
        let per = 14u128
            .checked_pow(e)
            .ok_or_else(|| Error::invalid("factorization", "count overflows"))?
            - 2 * 2u128.pow(e);
        total = total
            .checked_mul(per)
            .ok_or_else(|| Error::invalid("factorization", "count overflows"))?;
    }
    Ok(total)
}

/// Offset families compared in the counting table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// prior cases I-III (published polynomial only)
    CasesOneToThree,
    /// prior cases IV-V (published polynomial only)
    CasesFourFive,
    /// triple-only offsets, generated
    NewTriple,
    /// the four `q = 6` cases, generated
    NewQ6Cases,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::CasesOneToThree,
        Family::CasesFourFive,
        Family::NewTriple,
        Family::NewQ6Cases,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Family::CasesOneToThree => "I-III",
            Family::CasesFourFive => "IV-V",
            Family::NewTriple => "new-thm1",
            Family::NewQ6Cases => "new-thm2-cases",
        }
    }

    pub fn parse(label: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.label() == label)
            .ok_or_else(|| Error::invalid("family", format!("unknown family {label:?}")))
    }
}

/// One counted row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub family: &'static str,
    pub q: usize,
    pub m: usize,
    pub formula: u128,
    /// `None` when the family is only evaluated as a formula
    pub generated: Option<u128>,
    /// whether the formula is a lower bound
    pub lower_bound: bool,
}

impl CountReport {
    pub fn matches(&self) -> Option<bool> {
        self.generated.map(|g| g == self.formula)
    }

    pub fn csv_header() -> [&'static str; 6] {
        ["family", "q", "m", "formula", "generated", "match"]
    }

    pub fn csv_record(&self) -> [String; 6] {
        let opt = |v: Option<String>| v.unwrap_or_default();
        [
            self.family.to_string(),
            self.q.to_string(),
            self.m.to_string(),
            self.formula.to_string(),
            opt(self.generated.map(|g| g.to_string())),
            opt(self.matches().map(|b| b.to_string())),
        ]
    }
}

fn quadratic(m: usize) -> u128 {
    // m^2 - m - 2 = (m + 1)(m - 2)
    (m as u128 + 1) * (m as u128).saturating_sub(2)
}

/// Published count polynomial of `family` at `(q, m)`.
pub fn family_formula(family: Family, q: usize, m: usize) -> Result<u128> {
    let m128 = m as u128;
    if m < 2 {
        return Err(Error::range("m", m as i64, ">= 2"));
    }
    let value = match (family, q) {
        (Family::CasesOneToThree, 4) => 4032 * m128 + 4040,
        (Family::CasesOneToThree, 6) => 1047552 * m128 + 1047584,
        (Family::CasesFourFive, 4) => 14 * quadratic(m),
        (Family::CasesFourFive, 6) => 584 * quadratic(m),
        (Family::NewTriple, 4) => 100 * quadratic(m),
        (Family::NewTriple | Family::NewQ6Cases, 6) => (3700 + 20 * m128) * quadratic(m),
        _ => return Err(Error::range("q", q as i64, "4 or 6")),
    };
    Ok(value)
}

/// The three rows of the comparison table at `(q, m)`.
pub fn table1_row(q: usize, m: usize) -> Result<[CountReport; 3]> {
    let new_family = if q == 4 { Family::NewTriple } else { Family::NewQ6Cases };
    let row = |family: Family, lower_bound: bool| -> Result<CountReport> {
        Ok(CountReport {
            family: family.label(),
            q,
            m,
            formula: family_formula(family, q, m)?,
            generated: None,
            lower_bound,
        })
    };
    Ok([
        row(Family::CasesOneToThree, false)?,
        row(Family::CasesFourFive, false)?,
        row(new_family, true)?,
    ])
}

/// Choice vectors for one factor: `q_k = 2` takes one class-1 triple;
/// larger factors take triples outside class 4, not all in class 2 and not
/// all in class 3.
pub fn factor_choices(qk: usize) -> Result<Vec<Vec<CTriple>>> {
    if qk < 2 {
        return Err(Error::range("factor", qk as i64, ">= 2"));
    }
    if qk == 2 {
        return Ok(class_members(CClass::C1).into_iter().map(|t| vec![t]).collect());
    }
    if qk > 5 {
        return Err(Error::range("factor", qk as i64, "2..=5 for generation"));
    }
    let pool: Vec<CTriple> = set_c().into_iter().filter(|t| t.class() != CClass::C4).collect();
    let mut out = Vec::new();
    let len = qk - 1;
    for code in 0..pool.len().pow(len as u32) {
        let v: Vec<CTriple> = (0..len)
            .map(|i| pool[(code / pool.len().pow(i as u32)) % pool.len()])
            .collect();
        let all = |c: CClass| v.iter().all(|t| t.class() == c);
        if !all(CClass::C2) && !all(CClass::C3) {
            out.push(v);
        }
    }
    Ok(out)
}

/// Ordered position tuples with pairwise distance at least 2 and never
/// both boundary positions.
pub fn admissible_positions(m: usize, t: usize) -> Vec<Vec<usize>> {
    fn go(m: usize, t: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for w in 0..=m {
            let ok = cur
                .iter()
                .all(|&u| u.abs_diff(w) >= 2 && !(u.min(w) == 0 && u.max(w) == m));
            if ok {
                cur.push(w);
                go(m, t, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(m, t, &mut Vec::new(), &mut out);
    out
}

fn matrix_of(recipe: &Recipe) -> Result<CoefficientMatrix> {
    let pi = Permutation::identity(recipe.m());
    CoefficientMatrix::from_offset(&recipe.offset(&pi)?.0, &pi)
}

fn sorted_unique(mut entries: Vec<(CoefficientMatrix, Recipe)>) -> Vec<(CoefficientMatrix, Recipe)> {
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    entries.dedup_by(|a, b| a.0 == b.0);
    entries
}

fn product_of(lists: &[Vec<Vec<CTriple>>]) -> Vec<Vec<Vec<CTriple>>> {
    let mut out = vec![Vec::new()];
    for list in lists {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Vec<CTriple>>| {
                list.iter().map(move |c| {
                    let mut next = prefix.clone();
                    next.push(c.clone());
                    next
                })
            })
            .collect();
    }
    out
}

/// The triple-only family counted by the lower bound, one recipe per
/// distinct coefficient matrix (identity permutation), sorted by matrix.
pub fn enumerate_triple_family_recipes(m: usize, factorization: &[usize]) -> Result<Vec<(CoefficientMatrix, Recipe)>> {
    lower_bound_new_offsets(m, factorization)?;
    let lists = factorization
        .iter()
        .map(|&qk| factor_choices(qk))
        .collect::<Result<Vec<_>>>()?;
    let choices = product_of(&lists);
    let positions = admissible_positions(m, factorization.len());
    let entries = positions
        .par_iter()
        .map(|omegas| {
            choices
                .iter()
                .map(|d_choices| {
                    let recipe = Recipe::Triple(TripleSpec {
                        m,
                        factorization: factorization.to_vec(),
                        layout: TripleLayout {
                            d_choices: d_choices.clone(),
                            omegas: omegas.clone(),
                        },
                        mu_side: Side::First,
                    });
                    Ok((matrix_of(&recipe)?, recipe))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(sorted_unique(entries.into_iter().flatten().collect()))
}

pub fn enumerate_triple_family(m: usize, factorization: &[usize]) -> Result<Vec<CoefficientMatrix>> {
    Ok(strip(enumerate_triple_family_recipes(m, factorization)?))
}

fn strip(entries: Vec<(CoefficientMatrix, Recipe)>) -> Vec<CoefficientMatrix> {
    entries.into_iter().map(|(c, _)| c).collect()
}

/// New offsets for `q = 4 = 2 x 2`: both triples in class 1, admissible positions.
pub fn enumerate_new_offsets_q4(m: usize) -> Result<Vec<CoefficientMatrix>> {
    if m < 3 {
        return Err(Error::range("m", m as i64, ">= 3"));
    }
    enumerate_triple_family(m, &[2, 2])
}

/// The pair-based cases for `q = 6 = 3 x 2`: one class-1 triple at `omega`
/// away from the pair positions.
fn q6_pair_case(m: usize, one_position: bool) -> Result<Vec<(CoefficientMatrix, Recipe)>> {
    let nsgips = enumerate_nsgip(3)?;
    let mut layouts = Vec::new();
    if one_position {
        for upsilon in 2..m {
            for omega in (1..m).filter(|&w| w != upsilon && w + 1 != upsilon) {
                layouts.push((PairCase::A { upsilon }, omega));
            }
        }
    } else {
        for upsilon1 in 1..=m.saturating_sub(2) {
            for upsilon2 in upsilon1 + 2..=m {
                let banned = [upsilon1, upsilon1 - 1, upsilon2, upsilon2 - 1];
                for omega in (0..=m).filter(|w| !banned.contains(w)) {
                    layouts.push((PairCase::B { upsilon1, upsilon2 }, omega));
                }
            }
        }
    }
    let class1 = class_members(CClass::C1);
    let entries = layouts
        .par_iter()
        .map(|&(case, omega)| {
            let mut out = Vec::new();
            for nsgip in &nsgips {
                for &d in &class1 {
                    let recipe = Recipe::Pair(PairSpec {
                        m,
                        factorization: vec![3, 2],
                        layout: TripleLayout {
                            d_choices: vec![vec![d]],
                            omegas: vec![omega],
                        },
                        nsgip: nsgip.clone(),
                        case,
                        mu_side: Side::First,
                    });
                    out.push((matrix_of(&recipe)?, recipe));
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(sorted_unique(entries.into_iter().flatten().collect()))
}

/// The four `q = 6` case families, each sorted and deduplicated.
pub fn enumerate_q6_case_recipes(m: usize) -> Result<[Vec<(CoefficientMatrix, Recipe)>; 4]> {
    if m < 3 {
        return Err(Error::range("m", m as i64, ">= 3"));
    }
    Ok([
        enumerate_triple_family_recipes(m, &[2, 3])?,
        enumerate_triple_family_recipes(m, &[3, 2])?,
        q6_pair_case(m, true)?,
        q6_pair_case(m, false)?,
    ])
}

/// Union of the four `q = 6` cases.
pub fn enumerate_new_offsets_q6(m: usize) -> Result<Vec<CoefficientMatrix>> {
    let [a, b, c, d] = enumerate_q6_case_recipes(m)?;
    let mut all: Vec<CoefficientMatrix> = [a, b, c, d].into_iter().flat_map(strip).collect();
    all.sort();
    all.dedup();
    Ok(all)
}

/// Formula and generated count for one family; `factorization` applies to
/// the triple-only family (default `2 x 2` for `q = 4`, `3 x 2` for `q = 6`).
pub fn count_report(family: Family, q: usize, m: usize, factorization: Option<&[usize]>) -> Result<CountReport> {
    let (formula, generated, lower_bound) = match family {
        Family::CasesOneToThree | Family::CasesFourFive => (family_formula(family, q, m)?, None, false),
        Family::NewTriple => {
            let fact = match factorization {
                Some(f) => f.to_vec(),
                None if q == 4 => vec![2, 2],
                None if q == 6 => vec![3, 2],
                None => return Err(Error::invalid("factorization", format!("required for q = {q}"))),
            };
            if fact.iter().product::<usize>() != q {
                return Err(Error::invalid("factorization", format!("product is not q = {q}")));
            }
            let generated = enumerate_triple_family(m, &fact)?.len() as u128;
            (lower_bound_new_offsets(m, &fact)?, Some(generated), true)
        }
        Family::NewQ6Cases => {
            if q != 6 {
                return Err(Error::range("q", q as i64, "6"));
            }
            let generated = enumerate_new_offsets_q6(m)?.len() as u128;
            (family_formula(family, q, m)?, Some(generated), true)
        }
    };
    Ok(CountReport {
        family: family.label(),
        q,
        m,
        formula,
        generated,
        lower_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_counts() {
        assert_eq!(count_standard_gcs(2).unwrap(), 64);
        assert_eq!(count_standard_gcs(3).unwrap(), 768);
        assert_eq!(brute_force_standard_gcs(2).unwrap(), 64);
        assert_eq!(brute_force_standard_gcs(3).unwrap(), 768);
        assert!(count_standard_gcs(1).is_err());
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(lower_bound_new_offsets(3, &[2, 2]).unwrap(), 400);
        assert_eq!(lower_bound_new_offsets(4, &[2, 2]).unwrap(), 1000);
        assert_eq!(lower_bound_new_offsets(2, &[2]).unwrap(), 30);
        assert_eq!(lower_bound_new_offsets(3, &[3]).unwrap(), 752);
        assert_eq!(lower_bound_new_offsets(5, &[3, 2]).unwrap(), 33840);
        assert!(lower_bound_new_offsets(2, &[2, 2]).is_err());
    }

    #[test]
    fn table_rows() {
        let r = table1_row(4, 3).unwrap();
        assert_eq!([r[0].formula, r[1].formula, r[2].formula], [16136, 56, 400]);
        let r = table1_row(6, 3).unwrap();
        assert_eq!(r[2].formula, 15040);
        assert_eq!(r[0].formula, 1047552 * 3 + 1047584);
        assert_eq!(r[1].formula, 584 * 4);
        assert!(table1_row(5, 3).is_err());
    }

    #[test]
    fn position_tuples() {
        for m in 3..=7 {
            assert_eq!(admissible_positions(m, 2).len(), (m + 1) * (m - 2));
            assert_eq!(admissible_positions(m, 1).len(), m + 1);
        }
        // (m+1) (m-t)!/(m-2t+1)! for t = 3
        assert_eq!(admissible_positions(6, 3).len(), 7 * 3 * 2);
    }

    #[test]
    fn choice_counts() {
        assert_eq!(factor_choices(2).unwrap().len(), 10);
        assert_eq!(factor_choices(3).unwrap().len(), 188);
        assert_eq!(factor_choices(4).unwrap().len(), 14 * 14 * 14 - 16);
    }

    #[test]
    fn q4_family_matches_formula() {
        for m in 3..=4 {
            let got = enumerate_new_offsets_q4(m).unwrap();
            assert_eq!(got.len() as u128, 100 * quadratic(m));
            assert!(got.iter().all(|c| c.nonzero_linear_columns().len() >= 3));
        }
        assert!(enumerate_new_offsets_q4(2).is_err());
    }

    #[test]
    fn single_factor_family() {
        assert_eq!(enumerate_triple_family(2, &[2]).unwrap().len(), 30);
        assert_eq!(enumerate_triple_family(3, &[3]).unwrap().len(), 752);
    }

    #[test]
    fn family_labels_round_trip() {
        for f in Family::ALL {
            assert_eq!(Family::parse(f.label()).unwrap(), f);
        }
        assert!(Family::parse("nope").is_err());
    }

    #[test]
    fn report_csv() {
        let r = count_report(Family::NewTriple, 4, 3, None).unwrap();
        assert_eq!(
            r.csv_record(),
            ["new-thm1", "4", "3", "400", "400", "true"].map(String::from)
        );
        let r = count_report(Family::CasesFourFive, 4, 3, None).unwrap();
        assert_eq!(r.csv_record(), ["IV-V", "4", "3", "56", "", ""].map(String::from));
    }
}
