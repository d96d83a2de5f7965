use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{GaussianInt, Gbf, Permutation, Vgbf, Z4};
use crate::constructions::{standard_gbf, Recipe, Side};
use crate::error::{Error, Result};
use crate::golay::{is_gap, qam_symbol, QamArray};

use super::builders::{component_chain, Chain, Insert};
use super::laurent::{LaurentMatrix, LaurentPoly};

/// A `2 x 2` matrix over the ring of GBFs in `m` variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GbfMatrix {
    entries: [[Gbf; 2]; 2],
}

impl GbfMatrix {
    pub fn new(entries: [[Gbf; 2]; 2]) -> Result<Self> {
        let m = entries[0][0].m();
        for e in entries.iter().flatten() {
            if e.m() != m {
                return Err(Error::dim("GBF matrix entry variables", m, e.m()));
            }
        }
        Ok(GbfMatrix { entries })
    }

    pub fn constant(m: usize, values: [[Z4; 2]; 2]) -> Self {
        GbfMatrix {
            entries: values.map(|r| r.map(|v| Gbf::constant(m, v))),
        }
    }

    pub fn zero(m: usize) -> Self {
        Self::constant(m, [[Z4::ZERO; 2]; 2])
    }

    /// `[[1, 1], [1, 1]]`
    pub fn all_ones(m: usize) -> Self {
        Self::constant(m, [[Z4::ONE; 2]; 2])
    }

    /// `[[0, 0], [1, 1]]`
    pub fn lower_row(m: usize) -> Self {
        Self::constant(m, [[Z4::ZERO, Z4::ZERO], [Z4::ONE, Z4::ONE]])
    }

    /// `[[0, 1], [0, 1]]`
    pub fn right_column(m: usize) -> Self {
        Self::constant(m, [[Z4::ZERO, Z4::ONE], [Z4::ZERO, Z4::ONE]])
    }

    /// `diag(1 - x_j, x_j)`
    pub fn selector(m: usize, j: usize) -> Result<Self> {
        let x = Gbf::var(m, j, Z4::ONE)?;
        let zero = Gbf::zero(m);
        Ok(GbfMatrix {
            entries: [[&Gbf::constant(m, Z4::ONE) - &x, zero.clone()], [zero, x]],
        })
    }

    /// `diag(a, b)` with constant entries.
    pub fn diag(m: usize, values: [Z4; 2]) -> Self {
        Self::constant(m, [[values[0], Z4::ZERO], [Z4::ZERO, values[1]]])
    }

    pub fn m(&self) -> usize {
        self.entries[0][0].m()
    }

    pub fn entry(&self, u: usize, v: usize) -> &Gbf {
        &self.entries[u][v]
    }

    pub fn entries(&self) -> &[[Gbf; 2]; 2] {
        &self.entries
    }

    fn check(&self, other: &GbfMatrix) -> Result<()> {
        if self.m() != other.m() {
            return Err(Error::dim("GBF matrix variables", self.m(), other.m()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &GbfMatrix) -> Result<GbfMatrix> {
        self.check(other)?;
        let cell = |u: usize, v: usize| &self.entries[u][v] + &other.entries[u][v];
        Ok(GbfMatrix {
            entries: [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]],
        })
    }

    pub fn try_mul(&self, other: &GbfMatrix) -> Result<GbfMatrix> {
        self.check(other)?;
        let cell = |u: usize, v: usize| {
            &(&self.entries[u][0] * &other.entries[0][v]) + &(&self.entries[u][1] * &other.entries[1][v])
        };
        Ok(GbfMatrix {
            entries: [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]],
        })
    }

    pub fn scale(&self, f: &Gbf) -> Result<GbfMatrix> {
        if f.m() != self.m() {
            return Err(Error::dim("GBF scalar variables", self.m(), f.m()));
        }
        Ok(GbfMatrix {
            entries: self.entries.clone().map(|r| r.map(|e| &e * f)),
        })
    }

    /// Entry `(u, v)` becomes `sum_x xi^(f_uv(x)) z^x`.
    pub fn generating_matrix(&self) -> LaurentMatrix {
        let m = self.m();
        let poly = |f: &Gbf| {
            let mut p = LaurentPoly::zero(m);
            for (y, v) in f.truth_table().into_iter().enumerate() {
                p.add_term(exponents_of(m, y), GaussianInt::unit(v));
            }
            p
        };
        let e = &self.entries;
        LaurentMatrix::new([[poly(&e[0][0]), poly(&e[0][1])], [poly(&e[1][0]), poly(&e[1][1])]])
            .expect("entries share m")
    }

    /// Inverse of [`GbfMatrix::generating_matrix`]; every coefficient must be a unit.
    pub fn from_generating_matrix(matrix: &LaurentMatrix) -> Result<GbfMatrix> {
        let vgbf = VgbfMatrix::from_generating_matrix(matrix, 1)?;
        Ok(vgbf.component(0))
    }
}

fn exponents_of(m: usize, y: usize) -> Vec<i8> {
    (0..m).map(|j| ((y >> j) & 1) as i8).collect()
}

/// Phases `a_0..a_{q-1}` with `v = sum_p 2^(q-1-p) xi^(a_p)`, if any.
pub fn qam_phases(v: GaussianInt, q: usize) -> Option<Vec<Z4>> {
    fn go(v: GaussianInt, q: usize, out: &mut Vec<Z4>) -> bool {
        if q == 0 {
            return v.is_zero();
        }
        let bound = (1i64 << q) - 1;
        if v.re.abs() > bound || v.im.abs() > bound {
            return false;
        }
        for a in Z4::all() {
            let r = v - GaussianInt::unit(a);
            if r.re.rem_euclid(2) == 0 && r.im.rem_euclid(2) == 0 {
                let half = GaussianInt::new(r.re / 2, r.im / 2);
                out.push(a);
                if go(half, q - 1, out) {
                    return true;
                }
                out.pop();
            }
        }
        false
    }
    if q > 62 {
        return None;
    }
    let mut out = Vec::with_capacity(q);
    // collected from the least significant phase upwards
    go(v, q, &mut out).then(|| {
        out.reverse();
        out
    })
}

/// A `2 x 2` matrix of V-GBFs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VgbfMatrix {
    entries: [[Vgbf; 2]; 2],
}

impl VgbfMatrix {
    pub fn new(entries: [[Vgbf; 2]; 2]) -> Result<Self> {
        let (q, m) = (entries[0][0].q(), entries[0][0].m());
        for e in entries.iter().flatten() {
            if e.q() != q {
                return Err(Error::dim("V-GBF matrix entry components", q, e.q()));
            }
            if e.m() != m {
                return Err(Error::dim("V-GBF matrix entry variables", m, e.m()));
            }
        }
        Ok(VgbfMatrix { entries })
    }

    pub fn from_components(components: &[GbfMatrix]) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::invalid("components", "need at least one"));
        }
        let cell = |u: usize, v: usize| Vgbf::new(components.iter().map(|c| c.entries[u][v].clone()).collect());
        VgbfMatrix::new([[cell(0, 0)?, cell(0, 1)?], [cell(1, 0)?, cell(1, 1)?]])
    }

    pub fn q(&self) -> usize {
        self.entries[0][0].q()
    }

    pub fn m(&self) -> usize {
        self.entries[0][0].m()
    }

    pub fn entry(&self, u: usize, v: usize) -> &Vgbf {
        &self.entries[u][v]
    }

    pub fn component(&self, p: usize) -> GbfMatrix {
        GbfMatrix {
            entries: self.entries.clone().map(|r| r.map(|e| e.component(p).clone())),
        }
    }

    pub fn row(&self, u: usize) -> (Vgbf, Vgbf) {
        (self.entries[u][0].clone(), self.entries[u][1].clone())
    }

    pub fn column(&self, v: usize) -> (Vgbf, Vgbf) {
        (self.entries[0][v].clone(), self.entries[1][v].clone())
    }

    /// Entry `(u, v)` becomes the generating function of the QAM array of `f_uv`.
    pub fn generating_matrix(&self) -> LaurentMatrix {
        let (q, m) = (self.q(), self.m());
        let poly = |f: &Vgbf| {
            let tables: Vec<Vec<Z4>> = f.components().iter().map(Gbf::truth_table).collect();
            let mut p = LaurentPoly::zero(m);
            for y in 0..1usize << m {
                p.add_term(exponents_of(m, y), qam_symbol(tables.iter().map(|t| t[y]), q));
            }
            p
        };
        let e = &self.entries;
        LaurentMatrix::new([[poly(&e[0][0]), poly(&e[0][1])], [poly(&e[1][0]), poly(&e[1][1])]])
            .expect("entries share m")
    }

    /// Reads every coefficient back as a `4^q`-QAM symbol.
    pub fn from_generating_matrix(matrix: &LaurentMatrix, q: usize) -> Result<VgbfMatrix> {
        let m = matrix.m();
        let read = |poly: &LaurentPoly| -> Result<Vgbf> {
            let mut tables = vec![vec![Z4::ZERO; 1 << m]; q];
            if poly.terms().len() != 1 << m {
                return Err(Error::invalid(
                    "generating matrix",
                    "entry does not cover every 0/1 exponent",
                ));
            }
            for (e, &c) in poly.terms() {
                if e.iter().any(|&x| x != 0 && x != 1) {
                    return Err(Error::invalid("generating matrix", "exponent outside {0, 1}"));
                }
                let y = e.iter().enumerate().map(|(j, &x)| (x as usize) << j).sum::<usize>();
                let phases = qam_phases(c, q)
                    .ok_or_else(|| Error::invalid("generating matrix", format!("{c} is not a QAM symbol")))?;
                for (t, a) in tables.iter_mut().zip(phases) {
                    t[y] = a;
                }
            }
            Vgbf::new(
                tables
                    .iter()
                    .map(|t| Gbf::from_truth_table(m, t))
                    .collect::<Result<_>>()?,
            )
        };
        let e = matrix.entries();
        VgbfMatrix::new([[read(&e[0][0])?, read(&e[0][1])?], [read(&e[1][0])?, read(&e[1][1])?]])
    }

    /// Whether both rows and both columns form complementary array pairs.
    pub fn rows_and_columns_are_gaps(&self) -> Result<bool> {
        for (f, g) in [self.row(0), self.row(1), self.column(0), self.column(1)] {
            if !is_gap(&QamArray::from_vgbf(&f), &QamArray::from_vgbf(&g))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// GBF matrix of `seeds[0] D(z_1) seeds[1] ... D(z_m) seeds[m]`, the delay
/// between `seeds[j-1]` and `seeds[j]` acting on variable `vars[j-1]`.
pub fn extract_chain(seeds: &[GbfMatrix], vars: &[usize]) -> Result<GbfMatrix> {
    if seeds.len() != vars.len() + 1 {
        return Err(Error::dim("chain seeds", vars.len() + 1, seeds.len()));
    }
    let m = seeds[0].m();
    let ones = GbfMatrix::all_ones(m);
    let sel = vars
        .iter()
        .map(|&v| GbfMatrix::selector(m, v))
        .collect::<Result<Vec<_>>>()?;
    let n = vars.len();
    if n == 0 {
        return Ok(seeds[0].clone());
    }
    let mut acc = seeds[0].try_mul(&sel[0])?.try_mul(&ones)?;
    for j in 1..n {
        let term = ones
            .try_mul(&sel[j - 1])?
            .try_mul(&seeds[j])?
            .try_mul(&sel[j])?
            .try_mul(&ones)?;
        acc = acc.try_add(&term)?;
    }
    acc.try_add(&ones.try_mul(&sel[n - 1])?.try_mul(&seeds[n])?)
}

/// [`extract_chain`] with delays on `x_1..x_m` in order.
pub fn extract_gbf_matrix(seeds: &[GbfMatrix]) -> Result<GbfMatrix> {
    let vars: Vec<usize> = (1..seeds.len()).collect();
    extract_chain(seeds, &vars)
}

pub(crate) fn extract_phase_chain(chain: &Chain<Z4>) -> Result<GbfMatrix> {
    let m = chain.m();
    let mut blocks = Vec::new();
    let mut joins = Vec::new();
    for (first, last, attach) in chain.blocks() {
        let seeds: Vec<GbfMatrix> = chain.factors[first..=last]
            .iter()
            .map(|&f| GbfMatrix::constant(m, f))
            .collect();
        let vars: Vec<usize> = (first + 1..=last).collect();
        let mut block = extract_chain(&seeds, &vars)?;
        match attach {
            Some(Insert::Diag { values, .. }) => {
                block = block.try_add(&GbfMatrix::all_ones(m).try_mul(&GbfMatrix::diag(m, *values))?)?
            }
            Some(Insert::Hadamard { values, .. }) => block = block.try_add(&GbfMatrix::constant(m, *values))?,
            _ => {}
        }
        if !blocks.is_empty() {
            joins.push(first);
        }
        blocks.push(block);
    }
    extract_chain(&blocks, &joins)
}

/// V-GBF matrix of the product built from `recipe`, obtained factor by factor.
pub fn extracted_matrix(recipe: &Recipe) -> Result<VgbfMatrix> {
    let components = (0..recipe.q())
        .map(|p| extract_phase_chain(&component_chain(recipe, p)?))
        .collect::<Result<Vec<_>>>()?;
    VgbfMatrix::from_components(&components)
}

/// `(f 1 + s) J + mu_first A + mu_last B` with the identity permutation,
/// `f = 2 sum x_j x_{j+1}` and offsets from the construction module.
pub fn closed_form_matrix(recipe: &Recipe) -> Result<VgbfMatrix> {
    recipe.validate()?;
    let (q, m) = (recipe.q(), recipe.m());
    let pi = Permutation::identity(m);
    let base = standard_gbf(&pi, &vec![Z4::ZERO; m + 1])?;
    let (s, mu_first) = recipe.with_side(Side::First).offset(&pi)?;
    let (_, mu_last) = recipe.with_side(Side::Last).offset(&pi)?;
    let top_left = Vgbf::replicate(&base, q).try_add(&s)?;
    let bottom_left = top_left.try_add(&mu_first)?;
    VgbfMatrix::new([
        [top_left.clone(), top_left.try_add(&mu_last)?],
        [bottom_left.clone(), bottom_left.try_add(&mu_last)?],
    ])
}

/// Identity checks of the matrix algebra; returns a description per failure.
pub fn identity_failures(seed: u64) -> Vec<String> {
    let mut failures = Vec::new();
    let mut expect = |name: &str, lhs: Result<GbfMatrix>, rhs: GbfMatrix| {
        if lhs.as_ref().ok() != Some(&rhs) {
            failures.push(name.to_string());
        }
    };
    let m = 1;
    let ones = GbfMatrix::all_ones(m);
    let lower = GbfMatrix::lower_row(m);
    let right = GbfMatrix::right_column(m);
    let sel = GbfMatrix::selector(m, 1).expect("m >= 1");
    let x = Gbf::var(m, 1, Z4::ONE).expect("m >= 1");
    let x_ones = ones.scale(&x).expect("same m");
    let selectors = [
        ("x=0", GbfMatrix::diag(m, [Z4::ONE, Z4::ZERO]), GbfMatrix::zero(m)),
        ("x=1", GbfMatrix::diag(m, [Z4::ZERO, Z4::ONE]), ones.clone()),
        ("symbolic", sel, x_ones),
    ];
    for (label, d, xj) in selectors {
        let triple = |a: &GbfMatrix, b: &GbfMatrix| a.try_mul(&d).and_then(|t| t.try_mul(b));
        expect(&format!("J D J = J ({label})"), triple(&ones, &ones), ones.clone());
        expect(&format!("A D J = A ({label})"), triple(&lower, &ones), lower.clone());
        expect(&format!("B D J = xJ ({label})"), triple(&right, &ones), xj.clone());
        expect(&format!("J D A = xJ ({label})"), triple(&ones, &lower), xj.clone());
        expect(&format!("J D B = B ({label})"), triple(&ones, &right), right.clone());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = 3;
    for trial in 0..20 {
        let mut random_gbf = || {
            let table: Vec<Z4> = (0..1 << m).map(|_| Z4::new(rng.gen_range(0..4))).collect();
            Gbf::from_truth_table(m, &table).expect("table length 2^m")
        };
        let mat = GbfMatrix {
            entries: [[random_gbf(), random_gbf()], [random_gbf(), random_gbf()]],
        };
        let mut z4 = || Z4::new(rng.gen_range(0..4));
        let (alpha, beta) = (z4(), z4());
        let shifted = mat
            .try_add(
                &GbfMatrix::all_ones(m)
                    .try_mul(&GbfMatrix::diag(m, [alpha, beta]))
                    .expect("same m"),
            )
            .expect("same m");
        let z = GaussianInt::ZERO;
        let diag = LaurentMatrix::constant(m, [[GaussianInt::unit(alpha), z], [z, GaussianInt::unit(beta)]]);
        if shifted.generating_matrix() != mat.generating_matrix().mul(&diag) {
            failures.push(format!("diagonal transport (trial {trial})"));
        }
        let c = [[z4(), z4()], [z4(), z4()]];
        let added = mat.try_add(&GbfMatrix::constant(m, c)).expect("same m");
        if added.generating_matrix() != mat.generating_matrix().hadamard(c.map(|r| r.map(GaussianInt::unit))) {
            failures.push(format!("entry-wise transport (trial {trial})"));
        }
    }
    failures
}

pub fn matrix_identities_check() -> bool {
    identity_failures(0x5eed).is_empty()
}
