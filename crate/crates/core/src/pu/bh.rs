use crate::algebra::{GaussianInt, MixedRadix, Z4};
use crate::error::{Error, Result};
use crate::offsets::CTriple;

/// `[[xi^d0, xi^(d0+d2)], [xi^(d0+d1), -xi^(d0+d1+d2)]]` for any triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BhMatrix {
    pub d0: Z4,
    pub d1: Z4,
    pub d2: Z4,
}

impl BhMatrix {
    pub fn new(d0: Z4, d1: Z4, d2: Z4) -> Self {
        BhMatrix { d0, d1, d2 }
    }

    pub fn from_triple(t: CTriple) -> Self {
        BhMatrix::new(t.d0(), t.d1(), t.d2())
    }

    /// `[[1, 1], [1, -1]]`
    pub fn plain() -> Self {
        BhMatrix::new(Z4::ZERO, Z4::ZERO, Z4::ZERO)
    }

    /// Whether the parameters satisfy `2 d0 + d1 + d2 = 0`.
    pub fn is_balanced(&self) -> bool {
        (self.d0 + self.d0 + self.d1 + self.d2).is_zero()
    }

    /// Exponents of `xi` per entry.
    pub fn phases(&self) -> [[Z4; 2]; 2] {
        let (a, b, c) = (self.d0, self.d1, self.d2);
        [[a, a + c], [a + b, a + b + c + Z4::TWO]]
    }

    pub fn entries(&self) -> [[GaussianInt; 2]; 2] {
        self.phases().map(|row| row.map(GaussianInt::unit))
    }
}

/// Which place values weight a factor's sum: the first construction's radix
/// is `q_1..q_t`, the second's is `q_0, q_1..q_t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightLayout {
    FirstConstruction,
    SecondConstruction,
}

impl WeightLayout {
    pub(crate) fn digit_of_factor(self, k: usize) -> usize {
        match self {
            WeightLayout::FirstConstruction => k - 1,
            WeightLayout::SecondConstruction => k,
        }
    }
}

/// `sum_{p_k} 2^((q_k - 1 - p_k) * placevalue_k) H_{k, p_k}` for factor `k` (1-based).
///
/// `choices` lists the triples for digit values `1..q_k`; value 0 uses the
/// plain matrix.
pub fn weighted_bh_sum(
    factorization: &[usize],
    k: usize,
    choices: &[CTriple],
    layout: WeightLayout,
) -> Result<[[GaussianInt; 2]; 2]> {
    let radix = MixedRadix::new(factorization.to_vec())?;
    let digit = layout.digit_of_factor(k);
    if k == 0 || digit >= radix.len() {
        let factors = radix.len() + 1 - layout.digit_of_factor(1);
        return Err(Error::range("factor index", k as i64, format!("1..={factors}")));
    }
    let qk = radix.radices()[digit];
    if choices.len() + 1 != qk {
        return Err(Error::dim("factor choices", qk - 1, choices.len()));
    }
    let pv = radix.place_value(digit) as u32;
    let mut sum = [[GaussianInt::ZERO; 2]; 2];
    let mats = std::iter::once(BhMatrix::plain()).chain(choices.iter().map(|&t| BhMatrix::from_triple(t)));
    for (pk, mat) in mats.enumerate() {
        let shift = (qk - 1 - pk) as u32 * pv;
        if shift >= 62 {
            return Err(Error::invalid("factorization", "weights exceed 62 bits"));
        }
        let w = 1i64 << shift;
        let e = mat.entries();
        for u in 0..2 {
            for v in 0..2 {
                sum[u][v] += e[u][v].scale(w);
            }
        }
    }
    Ok(sum)
}

/// `c` with `X X^dagger = c I` for a constant matrix, if it exists.
pub fn unitary_constant(x: [[GaussianInt; 2]; 2]) -> Option<i64> {
    let dot = |r: usize, s: usize| x[r][0] * x[s][0].conj() + x[r][1] * x[s][1].conj();
    let (a, b, off) = (dot(0, 0), dot(1, 1), dot(0, 1));
    (a == b && off.is_zero() && a.im == 0).then_some(a.re)
}
