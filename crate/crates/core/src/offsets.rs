//! Offset ingredients: the set of admissible triples, Gaussian-integer pairs
//! of equal magnitude, digit-indexed vectors and coefficient matrices.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::algebra::{GaussianInt, Gbf, MixedRadix, Permutation, Vgbf, Z4};
use crate::error::{Error, Result};

/// A triple `(d0, d1, d2)` over `Z_4` with `2 d0 + d1 + d2 = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[Z4; 3]", into = "[Z4; 3]")]
pub struct CTriple {
    d0: Z4,
    d1: Z4,
    d2: Z4,
}

/// The four classes of admissible triples, split by which of `d1`, `d2` vanish.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CClass {
    /// `d1 != 0` and `d2 != 0`
    C1,
    /// `d1 = 0`, `d2 != 0`
    C2,
    /// `d1 != 0`, `d2 = 0`
    C3,
    /// `d1 = d2 = 0`
    C4,
}

impl CTriple {
    pub const ZERO: CTriple = CTriple {
        d0: Z4::ZERO,
        d1: Z4::ZERO,
        d2: Z4::ZERO,
    };

    pub fn new(d0: Z4, d1: Z4, d2: Z4) -> Result<Self> {
        if !(d0 + d0 + d1 + d2).is_zero() {
            return Err(Error::invalid(
                "d_choices",
                format!("({d0},{d1},{d2}) violates 2*d0 + d1 + d2 = 0 mod 4"),
            ));
        }
        Ok(CTriple { d0, d1, d2 })
    }

    pub fn from_ints(d0: i64, d1: i64, d2: i64) -> Result<Self> {
        Self::new(Z4::new(d0), Z4::new(d1), Z4::new(d2))
    }

    pub fn d0(self) -> Z4 {
        self.d0
    }

    pub fn d1(self) -> Z4 {
        self.d1
    }

    pub fn d2(self) -> Z4 {
        self.d2
    }

    pub fn as_array(self) -> [Z4; 3] {
        [self.d0, self.d1, self.d2]
    }

    pub fn class(self) -> CClass {
        match (self.d1.is_zero(), self.d2.is_zero()) {
            (false, false) => CClass::C1,
            (true, false) => CClass::C2,
            (false, true) => CClass::C3,
            (true, true) => CClass::C4,
        }
    }
}

impl TryFrom<[Z4; 3]> for CTriple {
    type Error = Error;
    fn try_from(v: [Z4; 3]) -> Result<Self> {
        CTriple::new(v[0], v[1], v[2])
    }
}

impl From<CTriple> for [Z4; 3] {
    fn from(t: CTriple) -> Self {
        t.as_array()
    }
}

impl fmt::Display for CTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.d0, self.d1, self.d2)
    }
}

/// All 16 admissible triples, ordered lexicographically.
pub fn set_c() -> Vec<CTriple> {
    let mut out = Vec::with_capacity(16);
    for d0 in Z4::all() {
        for d1 in Z4::all() {
            let d2 = -(d0 + d0 + d1);
            out.push(CTriple { d0, d1, d2 });
        }
    }
    out
}

/// Class of an arbitrary triple, rejecting triples outside the set.
pub fn classify(d0: Z4, d1: Z4, d2: Z4) -> Result<CClass> {
    Ok(CTriple::new(d0, d1, d2)?.class())
}

/// The members of one class.
pub fn class_members(class: CClass) -> Vec<CTriple> {
    set_c().into_iter().filter(|t| t.class() == class).collect()
}

/// `Q(b_1..b_{n-1}) = 2^(n-1) + sum_p 2^(n-1-p) xi^(b_p)` with `n = b.len() + 1`.
pub fn gaussian_image(b: &[Z4]) -> GaussianInt {
    let n = b.len() + 1;
    let lead = GaussianInt::real(1 << (n - 1));
    lead + b
        .iter()
        .enumerate()
        .map(|(i, &bp)| GaussianInt::unit(bp).scale(1 << (n - 2 - i)))
        .sum::<GaussianInt>()
}

/// An ordered pair of distinct, non-conjugate Gaussian images of equal magnitude.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "NsgipRepr", into = "NsgipRepr")]
pub struct Nsgip {
    b: Vec<Z4>,
    b_prime: Vec<Z4>,
    image0: GaussianInt,
    image1: GaussianInt,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NsgipRepr {
    b: Vec<Z4>,
    b_prime: Vec<Z4>,
}

impl TryFrom<NsgipRepr> for Nsgip {
    type Error = Error;
    fn try_from(r: NsgipRepr) -> Result<Self> {
        Nsgip::new(r.b, r.b_prime)
    }
}

impl From<Nsgip> for NsgipRepr {
    fn from(n: Nsgip) -> Self {
        NsgipRepr {
            b: n.b,
            b_prime: n.b_prime,
        }
    }
}

fn is_nsgip(q0: GaussianInt, q1: GaussianInt) -> bool {
    q0.norm() == q1.norm() && q0 != q1 && q0 != q1.conj()
}

impl Nsgip {
    pub fn new(b: Vec<Z4>, b_prime: Vec<Z4>) -> Result<Self> {
        if b.len() != b_prime.len() {
            return Err(Error::dim("nsgip b_prime", b.len(), b_prime.len()));
        }
        if b.is_empty() {
            return Err(Error::invalid("nsgip", "needs q0 >= 2 (non-empty b)"));
        }
        let image0 = gaussian_image(&b);
        let image1 = gaussian_image(&b_prime);
        if !is_nsgip(image0, image1) {
            return Err(Error::invalid(
                "nsgip",
                format!("images {image0} and {image1} are not an equal-magnitude, distinct, non-conjugate pair"),
            ));
        }
        Ok(Nsgip {
            b,
            b_prime,
            image0,
            image1,
        })
    }

    /// The constellation order `q0` this pair lives in.
    pub fn q0(&self) -> usize {
        self.b.len() + 1
    }

    pub fn b(&self) -> &[Z4] {
        &self.b
    }

    pub fn b_prime(&self) -> &[Z4] {
        &self.b_prime
    }

    pub fn image0(&self) -> GaussianInt {
        self.image0
    }

    pub fn image1(&self) -> GaussianInt {
        self.image1
    }
}

fn all_z4_vectors(len: usize) -> Vec<Vec<Z4>> {
    (0..4usize.pow(len as u32))
        .map(|mut code| {
            let mut v = vec![Z4::ZERO; len];
            for slot in v.iter_mut().rev() {
                *slot = Z4::new((code % 4) as i64);
                code /= 4;
            }
            v
        })
        .collect()
}

/// Every ordered pair over `Q_{q0}`, sorted by `(b, b')`.
pub fn enumerate_nsgip(q0: usize) -> Result<Vec<Nsgip>> {
    if !(2..=8).contains(&q0) {
        return Err(Error::range("q0", q0 as i64, "2..=8"));
    }
    let vectors = all_z4_vectors(q0 - 1);
    let mut by_norm: BTreeMap<i64, Vec<(Vec<Z4>, GaussianInt)>> = BTreeMap::new();
    for v in vectors {
        let img = gaussian_image(&v);
        by_norm.entry(img.norm()).or_default().push((v, img));
    }
    let mut out = Vec::new();
    for group in by_norm.values() {
        for (b, i0) in group {
            for (bp, i1) in group {
                if is_nsgip(*i0, *i1) {
                    out.push(Nsgip {
                        b: b.clone(),
                        b_prime: bp.clone(),
                        image0: *i0,
                        image1: *i1,
                    });
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Reads `table[rho_digit(p)]` for every `p` in `0..product`.
///
/// This is the column read-out used by every digit-indexed vector: `table`
/// holds one entry per value of the chosen digit.
pub fn spread_by_digit<T: Clone>(radix: &MixedRadix, digit: usize, table: &[T]) -> Result<Vec<T>> {
    let r = radix.radices()[digit];
    if table.len() != r {
        return Err(Error::dim("digit table", r, table.len()));
    }
    Ok((0..radix.product())
        .map(|p| table[radix.digit(p, digit)].clone())
        .collect())
}

/// The three `Z_4^q` vectors derived from one factor's triples.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DVectors {
    pub d0: Vec<Z4>,
    pub d1: Vec<Z4>,
    pub d2: Vec<Z4>,
}

impl DVectors {
    /// Spreads a raw triple table (entry `p_k` for each digit value) along `digit`.
    pub fn from_table(radix: &MixedRadix, digit: usize, table: &[[Z4; 3]]) -> Result<Self> {
        let spread = spread_by_digit(radix, digit, table)?;
        Ok(DVectors {
            d0: spread.iter().map(|t| t[0]).collect(),
            d1: spread.iter().map(|t| t[1]).collect(),
            d2: spread.iter().map(|t| t[2]).collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.d0.iter().chain(&self.d1).chain(&self.d2).all(|v| v.is_zero())
    }
}

/// One [`DVectors`] per factor.
///
/// `choices[k]` lists the triples for digit values `1..q_k` of factor `k`
/// (value 0 is pinned to the zero triple). Factor `k` reads digit
/// `first_digit + k` of `radix`, so a radix that leads with an extra base
/// (whose digit is reserved for other data) uses `first_digit = 1`.
pub fn build_d_vectors(radix: &MixedRadix, first_digit: usize, choices: &[Vec<CTriple>]) -> Result<Vec<DVectors>> {
    if first_digit + choices.len() != radix.len() {
        return Err(Error::dim(
            "d_choices factors",
            radix.len() - first_digit.min(radix.len()),
            choices.len(),
        ));
    }
    choices
        .iter()
        .enumerate()
        .map(|(k, row)| {
            let digit = first_digit + k;
            let r = radix.radices()[digit];
            if row.len() + 1 != r {
                return Err(Error::dim("d_choices entries for a factor", r - 1, row.len()));
            }
            let table: Vec<[Z4; 3]> = std::iter::once(CTriple::ZERO)
                .chain(row.iter().copied())
                .map(CTriple::as_array)
                .collect();
            DVectors::from_table(radix, digit, &table)
        })
        .collect()
}

/// `(b, b')` with entry `p` equal to `b_{rho_0(p)}` (and `b_0 = 0`).
pub fn build_b_vectors(radix: &MixedRadix, nsgip: &Nsgip) -> Result<(Vec<Z4>, Vec<Z4>)> {
    if radix.is_empty() || radix.radices()[0] != nsgip.q0() {
        return Err(Error::invalid(
            "factorization",
            format!(
                "leading factor must equal the pair's constellation order {}",
                nsgip.q0()
            ),
        ));
    }
    let with_zero = |v: &[Z4]| -> Vec<Z4> { std::iter::once(Z4::ZERO).chain(v.iter().copied()).collect() };
    Ok((
        spread_by_digit(radix, 0, &with_zero(nsgip.b()))?,
        spread_by_digit(radix, 0, &with_zero(nsgip.b_prime()))?,
    ))
}

/// The `q x (m+1)` matrix of an affine offset: column 0 is the constant
/// vector, column `j` the coefficient vector of `x_{pi(j)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoefficientMatrix {
    q: usize,
    m: usize,
    rows: Vec<Vec<Z4>>,
}

impl CoefficientMatrix {
    pub fn zero(q: usize, m: usize) -> Self {
        CoefficientMatrix {
            q,
            m,
            rows: vec![vec![Z4::ZERO; m + 1]; q],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Z4>>) -> Result<Self> {
        let q = rows.len();
        if q == 0 {
            return Err(Error::invalid("coefficient matrix", "no rows"));
        }
        let width = rows[0].len();
        if width == 0 {
            return Err(Error::invalid("coefficient matrix", "no columns"));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != width) {
            return Err(Error::dim("coefficient matrix row", width, r.len()));
        }
        Ok(CoefficientMatrix { q, m: width - 1, rows })
    }

    pub fn from_offset(s: &Vgbf, pi: &Permutation) -> Result<Self> {
        let m = s.m();
        if pi.len() != m {
            return Err(Error::dim("permutation", m, pi.len()));
        }
        let mut rows = Vec::with_capacity(s.q());
        for comp in s.components() {
            if !comp.is_affine() {
                return Err(Error::invalid(
                    "offset",
                    format!("component {comp} has degree {}", comp.degree()),
                ));
            }
            let mut row = Vec::with_capacity(m + 1);
            row.push(comp.constant_term());
            row.extend((1..=m).map(|j| comp.linear_coeff(pi.apply(j))));
            rows.push(row);
        }
        Ok(CoefficientMatrix { q: s.q(), m, rows })
    }

    pub fn to_offset(&self, pi: &Permutation) -> Result<Vgbf> {
        if pi.len() != self.m {
            return Err(Error::dim("permutation", self.m, pi.len()));
        }
        let comps = self
            .rows
            .iter()
            .map(|row| {
                let mut coeffs = vec![Z4::ZERO; self.m];
                for j in 1..=self.m {
                    coeffs[pi.apply(j) - 1] = row[j];
                }
                Gbf::affine(self.m, &coeffs, row[0])
            })
            .collect::<Result<Vec<_>>>()?;
        Vgbf::new(comps)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rows(&self) -> &[Vec<Z4>] {
        &self.rows
    }

    pub fn get(&self, p: usize, j: usize) -> Z4 {
        self.rows[p][j]
    }

    /// Column `j` (0 is the constant column).
    pub fn column(&self, j: usize) -> Vec<Z4> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    /// Positions `j` in `1..=m` whose column is nonzero.
    pub fn nonzero_linear_columns(&self) -> Vec<usize> {
        (1..=self.m)
            .filter(|&j| self.rows.iter().any(|r| !r[j].is_zero()))
            .collect()
    }

    /// Adds `v` to column `j` (0 is the constant column).
    pub fn add_column(&mut self, j: usize, v: &[Z4]) {
        for (row, &c) in self.rows.iter_mut().zip(v) {
            row[j] += c;
        }
    }

    pub fn csv_header(&self) -> Vec<String> {
        let mut h = vec!["q".to_string(), "m".to_string()];
        h.extend((0..self.q * (self.m + 1)).map(|i| format!("c{i}")));
        h
    }

    pub fn csv_record(&self) -> Vec<String> {
        let mut r = vec![self.q.to_string(), self.m.to_string()];
        r.extend(self.rows.iter().flatten().map(|v| v.to_string()));
        r
    }
}

/// Writes matrices of one shape as CSV, flattened row-major after `q,m`.
pub fn write_matrices_csv<W: Write>(matrices: &[CoefficientMatrix], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io_err = |e: csv::Error| Error::invalid("csv output", e.to_string());
    if let Some(first) = matrices.first() {
        w.write_record(first.csv_header()).map_err(io_err)?;
        for mtx in matrices {
            if (mtx.q, mtx.m) != (first.q, first.m) {
                return Err(Error::invalid("csv output", "matrices of different shapes"));
            }
            w.write_record(mtx.csv_record()).map_err(io_err)?;
        }
    }
    w.flush().map_err(|e| Error::invalid("csv output", e.to_string()))
}
