use crate::error::{Error, Result};

/// A mixed-radix numeral system with radices listed least significant first.
///
/// Digit `k` of `p` has place value `radix_0 · … · radix_{k-1}`, so digits
/// come back in the same order as the radices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MixedRadix {
    radices: Vec<usize>,
}

impl MixedRadix {
    pub fn new(radices: Vec<usize>) -> Result<Self> {
        if let Some(&r) = radices.iter().find(|&&r| r < 2) {
            return Err(Error::invalid(
                "factorization",
                format!("every radix must be at least 2, found {r}"),
            ));
        }
        if radices.iter().try_fold(1usize, |acc, &r| acc.checked_mul(r)).is_none() {
            return Err(Error::invalid("factorization", "product overflows"));
        }
        Ok(MixedRadix { radices })
    }

    pub fn radices(&self) -> &[usize] {
        &self.radices
    }

    pub fn len(&self) -> usize {
        self.radices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radices.is_empty()
    }

    /// Product of all radices; an empty system represents only `0`.
    pub fn product(&self) -> usize {
        self.radices.iter().product()
    }

    /// Place value of digit `k`.
    pub fn place_value(&self, k: usize) -> usize {
        self.radices[..k].iter().product()
    }

    /// Digits of `p`, least significant first.
    pub fn digits(&self, p: usize) -> Result<Vec<usize>> {
        let q = self.product();
        if p >= q {
            return Err(Error::range("p", p as i64, format!("0..{q}")));
        }
        let mut rest = p;
        Ok(self
            .radices
            .iter()
            .map(|&r| {
                let d = rest % r;
                rest /= r;
                d
            })
            .collect())
    }

    /// Single digit `k` of `p`.
    pub fn digit(&self, p: usize, k: usize) -> usize {
        (p / self.place_value(k)) % self.radices[k]
    }

    pub fn compose(&self, digits: &[usize]) -> Result<usize> {
        if digits.len() != self.radices.len() {
            return Err(Error::dim("digits", self.radices.len(), digits.len()));
        }
        let mut p = 0;
        for (k, (&d, &r)) in digits.iter().zip(&self.radices).enumerate() {
            if d >= r {
                return Err(Error::range("digit", d as i64, format!("0..{r}")));
            }
            p += d * self.place_value(k);
        }
        Ok(p)
    }
}
