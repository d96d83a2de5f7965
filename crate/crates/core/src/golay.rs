//! QAM sequences and `2 x ... x 2` arrays with exact aperiodic correlation.

use serde::{Deserialize, Serialize};

use crate::algebra::{GaussianInt, Gbf, Permutation, Vgbf, Z4};
use crate::error::{Error, Result};

/// Index order tag used in array JSON: `x_1` is the least significant bit.
pub const INDEX_ORDER: &str = "x1_lsb";

/// A length-`2^m` sequence over `4^q`-QAM with `y = sum_j x_j 2^(j-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SequenceRepr", into = "SequenceRepr")]
pub struct QamSequence {
    q: usize,
    values: Vec<GaussianInt>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SequenceRepr {
    q: usize,
    m: usize,
    values: Vec<GaussianInt>,
}

impl TryFrom<SequenceRepr> for QamSequence {
    type Error = Error;
    fn try_from(r: SequenceRepr) -> Result<Self> {
        let s = QamSequence::new(r.q, r.values)?;
        if s.m() != r.m {
            return Err(Error::dim("sequence length exponent m", r.m, s.m()));
        }
        Ok(s)
    }
}

impl From<QamSequence> for SequenceRepr {
    fn from(s: QamSequence) -> Self {
        SequenceRepr {
            q: s.q,
            m: s.m(),
            values: s.values,
        }
    }
}

/// `sum_p 2^(q-1-p) xi^(a_p)`.
pub fn qam_symbol(phases: impl IntoIterator<Item = Z4>, q: usize) -> GaussianInt {
    phases
        .into_iter()
        .enumerate()
        .map(|(p, a)| GaussianInt::unit(a).scale(1 << (q - 1 - p)))
        .sum()
}

fn check_power_of_two(len: usize) -> Result<()> {
    if len == 0 || !len.is_power_of_two() {
        return Err(Error::invalid("values", format!("length {len} is not a power of two")));
    }
    Ok(())
}

impl QamSequence {
    pub fn new(q: usize, values: Vec<GaussianInt>) -> Result<Self> {
        check_power_of_two(values.len())?;
        if q == 0 || q > 62 {
            return Err(Error::range("q", q as i64, "1..=62"));
        }
        Ok(QamSequence { q, values })
    }

    pub fn from_vgbf(f: &Vgbf) -> Self {
        let q = f.q();
        let tables: Vec<Vec<Z4>> = f.components().iter().map(Gbf::truth_table).collect();
        let values = (0..1usize << f.m())
            .map(|y| qam_symbol(tables.iter().map(|t| t[y]), q))
            .collect();
        QamSequence { q, values }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn m(&self) -> usize {
        self.values.len().trailing_zeros() as usize
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[GaussianInt] {
        &self.values
    }

    /// `C_F(tau) = sum_y F(y + tau) conj(F(y))`.
    pub fn autocorrelation(&self, tau: i64) -> Result<GaussianInt> {
        let len = self.values.len() as i64;
        if tau.abs() >= len {
            return Err(Error::range("shift", tau, format!("{}..={}", 1 - len, len - 1)));
        }
        Ok(correlate(&self.values, tau))
    }

    /// Total energy `C_F(0)`.
    pub fn energy(&self) -> i64 {
        self.values.iter().map(|v| v.norm()).sum()
    }
}

fn correlate(values: &[GaussianInt], tau: i64) -> GaussianInt {
    let len = values.len();
    let t = tau.unsigned_abs() as usize;
    let sum: GaussianInt = (0..len - t).map(|y| values[y + t] * values[y].conj()).sum();
    if tau >= 0 {
        sum
    } else {
        sum.conj()
    }
}

/// `true` iff `C_F(tau) + C_G(tau) = 0` for every nonzero shift.
pub fn is_gcp(f: &QamSequence, g: &QamSequence) -> Result<bool> {
    if f.len() != g.len() {
        return Err(Error::invalid(
            "pair",
            format!("sequence lengths differ: {} and {}", f.len(), g.len()),
        ));
    }
    Ok((1..f.len() as i64).all(|tau| (correlate(&f.values, tau) + correlate(&g.values, tau)).is_zero()))
}

/// A complex array of size `2 x ... x 2`, stored in `x_1`-least-significant order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ArrayRepr", into = "ArrayRepr")]
pub struct QamArray {
    q: usize,
    m: usize,
    values: Vec<GaussianInt>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrayRepr {
    q: usize,
    m: usize,
    index_order: String,
    values: Vec<GaussianInt>,
}

impl TryFrom<ArrayRepr> for QamArray {
    type Error = Error;
    fn try_from(r: ArrayRepr) -> Result<Self> {
        if r.index_order != INDEX_ORDER {
            return Err(Error::invalid(
                "index_order",
                format!("expected \"{INDEX_ORDER}\", found \"{}\"", r.index_order),
            ));
        }
        let a = QamArray::new(r.q, r.values)?;
        if a.m != r.m {
            return Err(Error::dim("array dimension m", r.m, a.m));
        }
        Ok(a)
    }
}

impl From<QamArray> for ArrayRepr {
    fn from(a: QamArray) -> Self {
        ArrayRepr {
            q: a.q,
            m: a.m,
            index_order: INDEX_ORDER.to_string(),
            values: a.values,
        }
    }
}

impl QamArray {
    pub fn new(q: usize, values: Vec<GaussianInt>) -> Result<Self> {
        let s = QamSequence::new(q, values)?;
        Ok(QamArray::from_sequence(s))
    }

    /// The inverse of [`QamArray::project_to_sequence`].
    pub fn from_sequence(s: QamSequence) -> Self {
        let QamSequence { q, values } = s;
        QamArray {
            q,
            m: values.len().trailing_zeros() as usize,
            values,
        }
    }

    pub fn from_vgbf(f: &Vgbf) -> Self {
        QamArray::from_sequence(QamSequence::from_vgbf(f))
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn values(&self) -> &[GaussianInt] {
        &self.values
    }

    pub fn get(&self, x: &[bool]) -> Result<GaussianInt> {
        if x.len() != self.m {
            return Err(Error::dim("array index", self.m, x.len()));
        }
        let y = x
            .iter()
            .enumerate()
            .fold(0usize, |acc, (j, &b)| acc | ((b as usize) << j));
        Ok(self.values[y])
    }

    /// `C_F(tau) = sum_x F(x + tau) conj(F(x))` over points where `x + tau` stays in `{0,1}^m`.
    pub fn autocorrelation(&self, tau: &[i8]) -> Result<GaussianInt> {
        if tau.len() != self.m {
            return Err(Error::dim("array shift", self.m, tau.len()));
        }
        if let Some(&t) = tau.iter().find(|t| !(-1..=1).contains(*t)) {
            return Err(Error::range("array shift component", t as i64, "-1..=1"));
        }
        Ok(array_correlate(&self.values, tau))
    }

    /// The identity on storage: entry `x` goes to `y = sum_j x_j 2^(j-1)`.
    pub fn project_to_sequence(&self) -> QamSequence {
        QamSequence {
            q: self.q,
            values: self.values.clone(),
        }
    }
}

fn array_correlate(values: &[GaussianInt], tau: &[i8]) -> GaussianInt {
    // points with x_j = 1 where tau_j = 1 or x_j = 0 where tau_j = -1 fall off
    let mut must_zero = 0usize;
    let mut must_one = 0usize;
    let mut offset = 0i64;
    for (j, &t) in tau.iter().enumerate() {
        match t {
            1 => must_zero |= 1 << j,
            -1 => must_one |= 1 << j,
            _ => {}
        }
        offset += t as i64 * (1 << j);
    }
    (0..values.len())
        .filter(|&y| y & must_zero == 0 && y & must_one == must_one)
        .map(|y| values[(y as i64 + offset) as usize] * values[y].conj())
        .sum()
}

/// All shifts in `{-1,0,1}^m`, in lexicographic order with `-1 < 0 < 1`.
pub fn all_array_shifts(m: usize) -> impl Iterator<Item = Vec<i8>> {
    (0..3usize.pow(m as u32)).map(move |mut code| {
        (0..m)
            .map(|_| {
                let t = (code % 3) as i8 - 1;
                code /= 3;
                t
            })
            .collect()
    })
}

/// `true` iff `C_F(tau) + C_G(tau) = 0` for all `3^m - 1` nonzero array shifts.
pub fn is_gap(f: &QamArray, g: &QamArray) -> Result<bool> {
    if f.m != g.m {
        return Err(Error::invalid(
            "pair",
            format!("array dimensions differ: {} and {}", f.m, g.m),
        ));
    }
    Ok(all_array_shifts(f.m)
        .filter(|t| t.iter().any(|&c| c != 0))
        .all(|t| (array_correlate(&f.values, &t) + array_correlate(&g.values, &t)).is_zero()))
}

/// The array shifts `tau_vec` with `sum_j tau_j 2^(j-1) = tau`.
pub fn shift_decomposition(m: usize, tau: i64) -> Vec<Vec<i8>> {
    all_array_shifts(m)
        .filter(|t| t.iter().enumerate().map(|(j, &c)| c as i64 * (1 << j)).sum::<i64>() == tau)
        .collect()
}

/// `(pi . f + f' . 1, pi . g + f' . 1)` for an affine `f'`.
pub fn gap_closure(f: &Vgbf, g: &Vgbf, pi: &Permutation, affine: &Gbf) -> Result<(Vgbf, Vgbf)> {
    if !affine.is_affine() {
        return Err(Error::invalid(
            "affine",
            format!("degree {} exceeds 1", affine.degree()),
        ));
    }
    let shift = |h: &Vgbf| -> Result<Vgbf> {
        let permuted = h.permute_vars(pi)?;
        permuted.try_add(&Vgbf::replicate(affine, h.q()))
    };
    Ok((shift(f)?, shift(g)?))
}
