use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::algebra::GaussianInt;
use crate::error::{Error, Result};

/// A sparse Laurent polynomial in `z_1..z_m` with Gaussian-integer coefficients.
///
/// Keys are exponent vectors; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    m: usize,
    terms: BTreeMap<Vec<i8>, GaussianInt>,
}

impl LaurentPoly {
    pub fn zero(m: usize) -> Self {
        LaurentPoly {
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(m: usize, c: GaussianInt) -> Self {
        Self::monomial(vec![0; m], c)
    }

    pub fn monomial(exponents: Vec<i8>, c: GaussianInt) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, c);
        p
    }

    /// `z_j` (1-based).
    pub fn variable(m: usize, j: usize) -> Self {
        let mut e = vec![0; m];
        e[j - 1] = 1;
        Self::monomial(e, GaussianInt::ONE)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i8>, GaussianInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exponents: &[i8]) -> GaussianInt {
        self.terms.get(exponents).copied().unwrap_or(GaussianInt::ZERO)
    }

    /// The value if the polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<GaussianInt> {
        match self.terms.len() {
            0 => Some(GaussianInt::ZERO),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(e, _)| e.iter().all(|&x| x == 0))
                .map(|(_, &c)| c),
            _ => None,
        }
    }

    pub(crate) fn add_term(&mut self, exponents: Vec<i8>, c: GaussianInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exponents) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.m);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: GaussianInt) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.m);
        for (e, &v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    /// `conj(P(1/conj z))`: conjugated coefficients, negated exponents.
    pub fn para_conjugate(&self) -> LaurentPoly {
        LaurentPoly {
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| -x).collect(), c.conj()))
                .collect(),
        }
    }
}

/// A `2 x 2` matrix of Laurent polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentMatrix {
    m: usize,
    entries: [[LaurentPoly; 2]; 2],
}

impl LaurentMatrix {
    pub fn new(entries: [[LaurentPoly; 2]; 2]) -> Result<Self> {
        let m = entries[0][0].m;
        for row in &entries {
            for e in row {
                if e.m != m {
                    return Err(Error::dim("Laurent entry variables", m, e.m));
                }
            }
        }
        Ok(LaurentMatrix { m, entries })
    }

    pub fn constant(m: usize, values: [[GaussianInt; 2]; 2]) -> Self {
        LaurentMatrix {
            m,
            entries: values.map(|row| row.map(|v| LaurentPoly::constant(m, v))),
        }
    }

    pub fn identity(m: usize) -> Self {
        Self::constant(
            m,
            [
                [GaussianInt::ONE, GaussianInt::ZERO],
                [GaussianInt::ZERO, GaussianInt::ONE],
            ],
        )
    }

    /// `diag(1, z_j)`.
    pub fn delay(m: usize, j: usize) -> Self {
        LaurentMatrix {
            m,
            entries: [
                [LaurentPoly::constant(m, GaussianInt::ONE), LaurentPoly::zero(m)],
                [LaurentPoly::zero(m), LaurentPoly::variable(m, j)],
            ],
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn entry(&self, u: usize, v: usize) -> &LaurentPoly {
        &self.entries[u][v]
    }

    pub fn entries(&self) -> &[[LaurentPoly; 2]; 2] {
        &self.entries
    }

    pub fn mul(&self, other: &LaurentMatrix) -> LaurentMatrix {
        let cell = |u: usize, v: usize| {
            self.entries[u][0]
                .mul(&other.entries[0][v])
                .add(&self.entries[u][1].mul(&other.entries[1][v]))
        };
        LaurentMatrix {
            m: self.m,
            entries: [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]],
        }
    }

    pub fn add(&self, other: &LaurentMatrix) -> LaurentMatrix {
        let cell = |u: usize, v: usize| self.entries[u][v].add(&other.entries[u][v]);
        LaurentMatrix {
            m: self.m,
            entries: [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]],
        }
    }

    pub fn scale(&self, c: GaussianInt) -> LaurentMatrix {
        LaurentMatrix {
            m: self.m,
            entries: self.entries.clone().map(|row| row.map(|e| e.scale(c))),
        }
    }

    /// Entry-wise product with a constant matrix.
    pub fn hadamard(&self, c: [[GaussianInt; 2]; 2]) -> LaurentMatrix {
        let cell = |u: usize, v: usize| self.entries[u][v].scale(c[u][v]);
        LaurentMatrix {
            m: self.m,
            entries: [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]],
        }
    }

    /// `M^dagger(z^-1)`.
    pub fn para_adjoint(&self) -> LaurentMatrix {
        let cell = |u: usize, v: usize| self.entries[v][u].para_conjugate();
        LaurentMatrix {
            m: self.m,
            entries: [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]],
        }
    }

    /// Text dump, one line per stored coefficient, sorted.
    pub fn dump(&self) -> String {
        let mut lines = Vec::new();
        for u in 0..2 {
            for v in 0..2 {
                for (e, c) in &self.entries[u][v].terms {
                    let mut line = format!("entry({u},{v}): coeff {},{} @ exponents", c.re, c.im);
                    for x in e {
                        let _ = write!(line, " {x}");
                    }
                    lines.push(line);
                }
            }
        }
        lines.sort();
        let mut out = lines.join("\n");
        out.push('\n');
        out
    }
}

/// Outcome of the exact check `M(z) M^dagger(z^-1) = c I`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParaunitaryCheck {
    pub paraunitary: bool,
    /// The scalar `c` when the check passes.
    pub constant: Option<i64>,
}

pub fn is_paraunitary(matrix: &LaurentMatrix) -> ParaunitaryCheck {
    let product = matrix.mul(&matrix.para_adjoint());
    let fail = ParaunitaryCheck {
        paraunitary: false,
        constant: None,
    };
    if !product.entries[0][1].is_zero() || !product.entries[1][0].is_zero() {
        return fail;
    }
    match (product.entries[0][0].as_constant(), product.entries[1][1].as_constant()) {
        (Some(a), Some(b)) if a == b && a.im == 0 && a.re > 0 => ParaunitaryCheck {
            paraunitary: true,
            constant: Some(a.re),
        },
        _ => fail,
    }
}
