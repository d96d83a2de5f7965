use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Permutation, Z4};
use crate::error::{Error, Result};

/// Largest variable count a [`Gbf`] supports (monomials are `u32` bitmasks).
pub const MAX_VARS: usize = 32;

/// A generalized Boolean function `F_2^m -> Z_4` in algebraic normal form.
///
/// Monomials are bitmasks where bit `j - 1` stands for `x_j`; the empty mask
/// is the constant term. Zero coefficients are never stored, so two functions
/// are equal exactly when their term maps are equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gbf {
    m: usize,
    terms: BTreeMap<u32, Z4>,
}

impl Gbf {
    pub fn zero(m: usize) -> Self {
        assert!(m <= MAX_VARS, "at most {MAX_VARS} variables supported");
        Gbf {
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(m: usize, c: Z4) -> Self {
        Self::monomial(m, 0, c)
    }

    /// The monomial `coeff * prod_{j in mask} x_j`.
    pub fn monomial(m: usize, mask: u32, coeff: Z4) -> Self {
        let mut f = Self::zero(m);
        debug_assert!(m == MAX_VARS || mask >> m == 0);
        if !coeff.is_zero() {
            f.terms.insert(mask, coeff);
        }
        f
    }

    /// `coeff * x_j` for `1 <= j <= m`.
    pub fn var(m: usize, j: usize, coeff: Z4) -> Result<Self> {
        if j == 0 || j > m {
            return Err(Error::range("variable index", j as i64, format!("1..={m}")));
        }
        Ok(Self::monomial(m, 1 << (j - 1), coeff))
    }

    /// `sum_j coeffs[j-1] x_j + c0`.
    pub fn affine(m: usize, coeffs: &[Z4], c0: Z4) -> Result<Self> {
        if coeffs.len() != m {
            return Err(Error::dim("affine coefficients", m, coeffs.len()));
        }
        let mut f = Self::constant(m, c0);
        for (j, &c) in coeffs.iter().enumerate() {
            f.add_term(1 << j, c);
        }
        Ok(f)
    }

    /// Builds from `(variables, coeff)` pairs with 1-based variable indices.
    pub fn from_terms<I, V>(m: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (V, Z4)>,
        V: AsRef<[usize]>,
    {
        if m > MAX_VARS {
            return Err(Error::range("m", m as i64, format!("0..={MAX_VARS}")));
        }
        let mut f = Self::zero(m);
        for (vars, c) in terms {
            let mut mask = 0u32;
            for &j in vars.as_ref() {
                if j == 0 || j > m {
                    return Err(Error::range("variable index", j as i64, format!("1..={m}")));
                }
                mask |= 1 << (j - 1);
            }
            f.add_term(mask, c);
        }
        Ok(f)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &BTreeMap<u32, Z4> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mask: u32) -> Z4 {
        self.terms.get(&mask).copied().unwrap_or(Z4::ZERO)
    }

    pub fn constant_term(&self) -> Z4 {
        self.coeff(0)
    }

    /// Coefficient of `x_j` (1-based).
    pub fn linear_coeff(&self, j: usize) -> Z4 {
        self.coeff(1 << (j - 1))
    }

    /// Algebraic degree; the zero function has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|k| k.count_ones()).max().unwrap_or(0)
    }

    pub fn is_affine(&self) -> bool {
        self.degree() <= 1
    }

    pub(crate) fn add_term(&mut self, mask: u32, c: Z4) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mask).or_insert(Z4::ZERO);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&mask);
        }
    }

    fn check_same_m(&self, other: &Gbf) -> Result<()> {
        if self.m != other.m {
            return Err(Error::dim("GBF variable count", self.m, other.m));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Gbf) -> Result<Gbf> {
        self.check_same_m(other)?;
        let mut out = self.clone();
        for (&k, &c) in &other.terms {
            out.add_term(k, c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Gbf) -> Result<Gbf> {
        self.check_same_m(other)?;
        let mut out = Gbf::zero(self.m);
        for (&a, &ca) in &self.terms {
            for (&b, &cb) in &other.terms {
                out.add_term(a | b, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: Z4) -> Gbf {
        let mut out = Gbf::zero(self.m);
        for (&k, &v) in &self.terms {
            out.add_term(k, v * c);
        }
        out
    }

    /// Evaluation at a point of `F_2^m`, `x[j-1]` being `x_j`.
    pub fn eval(&self, x: &[bool]) -> Result<Z4> {
        if x.len() != self.m {
            return Err(Error::dim("evaluation point", self.m, x.len()));
        }
        let y = x.iter().enumerate().fold(0u64, |acc, (j, &b)| acc | ((b as u64) << j));
        Ok(self.eval_index(y))
    }

    /// Evaluation at the point whose bit `j - 1` is `x_j`.
    pub fn eval_index(&self, y: u64) -> Z4 {
        let y = y as u32;
        self.terms.iter().filter(|(&k, _)| k & y == k).map(|(_, &c)| c).sum()
    }

    /// Values on all `2^m` points, indexed by `y = sum_j x_j 2^(j-1)`.
    pub fn truth_table(&self) -> Vec<Z4> {
        let n = 1usize << self.m;
        let mut table = vec![Z4::ZERO; n];
        for (&k, &c) in &self.terms {
            table[k as usize] += c;
        }
        // zeta transform over the subset lattice
        for j in 0..self.m {
            let bit = 1usize << j;
            for y in 0..n {
                if y & bit != 0 {
                    let lower = table[y ^ bit];
                    table[y] += lower;
                }
            }
        }
        table
    }

    /// Inverse of [`Gbf::truth_table`] (Moebius transform over `Z_4`).
    pub fn from_truth_table(m: usize, values: &[Z4]) -> Result<Gbf> {
        if m > MAX_VARS || values.len() != 1usize << m {
            return Err(Error::dim("truth table", 1usize << m.min(MAX_VARS), values.len()));
        }
        let mut coeffs = values.to_vec();
        for j in 0..m {
            let bit = 1usize << j;
            for y in 0..coeffs.len() {
                if y & bit != 0 {
                    let lower = coeffs[y ^ bit];
                    coeffs[y] -= lower;
                }
            }
        }
        let mut f = Gbf::zero(m);
        for (k, c) in coeffs.into_iter().enumerate() {
            f.add_term(k as u32, c);
        }
        Ok(f)
    }

    /// `(pi . f)(x) = f(x_{pi(1)}, ..., x_{pi(m)})`.
    pub fn permute_vars(&self, pi: &Permutation) -> Result<Gbf> {
        if pi.len() != self.m {
            return Err(Error::dim("permutation", self.m, pi.len()));
        }
        let mut out = Gbf::zero(self.m);
        for (&k, &c) in &self.terms {
            let mut mask = 0u32;
            for i in 0..self.m {
                if k >> i & 1 == 1 {
                    mask |= 1 << (pi.apply(i + 1) - 1);
                }
            }
            out.add_term(mask, c);
        }
        Ok(out)
    }
}

impl fmt::Debug for Gbf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gbf[m={}]({self})", self.m)
    }
}

impl fmt::Display for Gbf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&k, &c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{c}")?;
                continue;
            }
            if c != Z4::ONE {
                write!(f, "{c}")?;
            }
            for j in 0..32 {
                if k >> j & 1 == 1 {
                    write!(f, "x{}", j + 1)?;
                }
            }
        }
        Ok(())
    }
}

macro_rules! gbf_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&Gbf> for &Gbf {
            type Output = Gbf;
            /// Panics when the variable counts differ.
            fn $method(self, rhs: &Gbf) -> Gbf {
                let op: fn(&Gbf, &Gbf) -> Result<Gbf> = $body;
                op(self, rhs).expect("GBF operands must share the variable count")
            }
        }
        impl $trait for Gbf {
            type Output = Gbf;
            fn $method(self, rhs: Gbf) -> Gbf {
                (&self).$method(&rhs)
            }
        }
    };
}

gbf_binop!(Add, add, |a, b| a.try_add(b));
gbf_binop!(Sub, sub, |a, b| a.try_add(&-b));
gbf_binop!(Mul, mul, |a, b| a.try_mul(b));

impl Neg for &Gbf {
    type Output = Gbf;
    fn neg(self) -> Gbf {
        self.scale(Z4::THREE)
    }
}

impl Neg for Gbf {
    type Output = Gbf;
    fn neg(self) -> Gbf {
        -&self
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermRepr {
    vars: Vec<usize>,
    coeff: Z4,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GbfRepr {
    m: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for Gbf {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(&k, &coeff)| TermRepr {
                vars: (0..32).filter(|j| k >> j & 1 == 1).map(|j| j + 1).collect(),
                coeff,
            })
            .collect();
        GbfRepr { m: self.m, terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Gbf {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = GbfRepr::deserialize(d)?;
        Gbf::from_terms(repr.m, repr.terms.into_iter().map(|t| (t.vars, t.coeff))).map_err(serde::de::Error::custom)
    }
}

/// A vectorial GBF: `q` component functions over the same `m` variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Gbf>", into = "Vec<Gbf>")]
pub struct Vgbf {
    components: Vec<Gbf>,
}

impl Vgbf {
    pub fn new(components: Vec<Gbf>) -> Result<Self> {
        let first = components
            .first()
            .ok_or_else(|| Error::invalid("vgbf", "needs at least one component"))?;
        let m = first.m;
        for c in &components {
            if c.m != m {
                return Err(Error::dim("V-GBF component variables", m, c.m));
            }
        }
        Ok(Vgbf { components })
    }

    pub fn zero(q: usize, m: usize) -> Self {
        Vgbf {
            components: vec![Gbf::zero(m); q],
        }
    }

    /// `f . 1`: the same function in every component.
    pub fn replicate(f: &Gbf, q: usize) -> Self {
        Vgbf {
            components: vec![f.clone(); q],
        }
    }

    /// The vector `v` as a constant V-GBF.
    pub fn constant_vector(m: usize, v: &[Z4]) -> Self {
        Vgbf {
            components: v.iter().map(|&c| Gbf::constant(m, c)).collect(),
        }
    }

    /// `v * x_j`, component-wise.
    pub fn linear_vector(m: usize, v: &[Z4], j: usize) -> Result<Self> {
        let comps = v.iter().map(|&c| Gbf::var(m, j, c)).collect::<Result<Vec<_>>>()?;
        Ok(Vgbf { components: comps })
    }

    pub fn q(&self) -> usize {
        self.components.len()
    }

    pub fn m(&self) -> usize {
        self.components[0].m
    }

    pub fn components(&self) -> &[Gbf] {
        &self.components
    }

    pub fn component(&self, p: usize) -> &Gbf {
        &self.components[p]
    }

    pub fn is_affine(&self) -> bool {
        self.components.iter().all(Gbf::is_affine)
    }

    fn zip_with(&self, other: &Vgbf, op: impl Fn(&Gbf, &Gbf) -> Result<Gbf>) -> Result<Vgbf> {
        if self.q() != other.q() {
            return Err(Error::dim("V-GBF components", self.q(), other.q()));
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| op(a, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Vgbf { components })
    }

    pub fn try_add(&self, other: &Vgbf) -> Result<Vgbf> {
        self.zip_with(other, Gbf::try_add)
    }

    pub fn try_sub(&self, other: &Vgbf) -> Result<Vgbf> {
        self.zip_with(other, |a, b| a.try_add(&-b))
    }

    pub fn map(&self, op: impl Fn(&Gbf) -> Gbf) -> Vgbf {
        Vgbf {
            components: self.components.iter().map(op).collect(),
        }
    }

    pub fn permute_vars(&self, pi: &Permutation) -> Result<Vgbf> {
        let components = self
            .components
            .iter()
            .map(|c| c.permute_vars(pi))
            .collect::<Result<Vec<_>>>()?;
        Ok(Vgbf { components })
    }
}

impl TryFrom<Vec<Gbf>> for Vgbf {
    type Error = Error;
    fn try_from(v: Vec<Gbf>) -> Result<Self> {
        Vgbf::new(v)
    }
}

impl From<Vgbf> for Vec<Gbf> {
    fn from(v: Vgbf) -> Self {
        v.components
    }
}

impl fmt::Display for Vgbf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (p, c) in self.components.iter().enumerate() {
            if p > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(v: i64) -> Z4 {
        Z4::new(v)
    }

    #[test]
    fn eval_examples() {
        let f = Gbf::from_terms(2, [(vec![1, 2], z(2))]).unwrap();
        assert_eq!(f.eval(&[true, true]).unwrap(), z(2));
        let g = Gbf::from_terms(2, [(vec![1, 2], z(2)), (vec![1], z(3)), (vec![], z(1))]).unwrap();
        assert_eq!(g.eval(&[true, false]).unwrap(), z(0));
        assert!(g.eval(&[true]).is_err());
    }

    #[test]
    fn algebra_examples() {
        let x1 = Gbf::var(2, 1, z(2)).unwrap();
        assert!((&x1 + &x1).is_zero());
        let f = Gbf::from_terms(2, [(vec![1, 2], z(2))]).unwrap();
        let swap = Permutation::new(vec![2, 1]).unwrap();
        assert_eq!(f.permute_vars(&swap).unwrap(), f);
        let a = Gbf::affine(2, &[z(1), z(0)], z(3)).unwrap();
        assert_eq!(a.terms().len(), 2);
        assert_eq!(a.coeff(0b01), z(1));
        assert_eq!(a.constant_term(), z(3));
    }

    #[test]
    fn idempotent_variables() {
        let x1 = Gbf::var(1, 1, z(1)).unwrap();
        assert_eq!(&x1 * &x1, x1);
    }

    #[test]
    fn canonical_form_exhaustive() {
        // distinct term maps give distinct truth tables: round trip on every table
        for m in 0..=3 {
            let n = 1usize << m;
            for code in 0..4usize.pow(n as u32) {
                let table: Vec<Z4> = (0..n).map(|y| z((code >> (2 * y)) as i64 & 3)).collect();
                let f = Gbf::from_truth_table(m, &table).unwrap();
                assert_eq!(f.truth_table(), table);
            }
        }
    }

    #[test]
    fn canonical_form_random_large_m() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for m in 4..=10 {
            for _ in 0..20 {
                let table: Vec<Z4> = (0..1usize << m).map(|_| z(rng.gen_range(0..4))).collect();
                let f = Gbf::from_truth_table(m, &table).unwrap();
                assert_eq!(f.truth_table(), table);
                let back = Gbf::from_truth_table(m, &f.truth_table()).unwrap();
                assert_eq!(back, f);
            }
        }
    }

    #[test]
    fn json_layout() {
        let f = Gbf::from_terms(3, [(vec![2, 3], z(2)), (vec![1], z(1)), (vec![], z(3))]).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(
            s,
            r#"{"m":3,"terms":[{"vars":[],"coeff":3},{"vars":[1],"coeff":1},{"vars":[2,3],"coeff":2}]}"#
        );
        let back: Gbf = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<Gbf>(r#"{"m":2,"terms":[{"vars":[3],"coeff":1}]}"#).is_err());
    }

    fn arb_gbf(m: usize) -> impl Strategy<Value = Gbf> {
        proptest::collection::vec((0u32..(1 << m), 0u8..4), 0..8).prop_map(move |ts| {
            let mut f = Gbf::zero(m);
            for (k, c) in ts {
                f.add_term(k, Z4::from(c));
            }
            f
        })
    }

    proptest! {
        #[test]
        fn permute_then_eval(f in arb_gbf(4), perm in proptest::sample::select(Permutation::all(4)), y in 0u64..16) {
            let x: Vec<bool> = (0..4).map(|j| y >> j & 1 == 1).collect();
            let px: Vec<bool> = (1..=4).map(|i| x[perm.apply(i) - 1]).collect();
            prop_assert_eq!(f.permute_vars(&perm).unwrap().eval(&x).unwrap(), f.eval(&px).unwrap());
        }

        #[test]
        fn ring_ops_pointwise(f in arb_gbf(4), g in arb_gbf(4), y in 0u64..16) {
            prop_assert_eq!((&f + &g).eval_index(y), f.eval_index(y) + g.eval_index(y));
            prop_assert_eq!((&f * &g).eval_index(y), f.eval_index(y) * g.eval_index(y));
            prop_assert_eq!((&f - &g).eval_index(y), f.eval_index(y) - g.eval_index(y));
        }
    }
}
