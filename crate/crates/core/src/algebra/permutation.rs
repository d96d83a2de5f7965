use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation `π` of `{1, …, m}` stored as its image list `(π(1), …, π(m))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m + 1];
        for &v in &images {
            if v == 0 || v > m {
                return Err(Error::invalid("pi", format!("image {v} outside 1..={m}")));
            }
            if seen[v] {
                return Err(Error::invalid("pi", format!("image {v} repeated")));
            }
            seen[v] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(m: usize) -> Self {
        Permutation((1..=m).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `π(i)` for `1 ≤ i ≤ m`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    /// Position `i` of the boundary-extended chain mapped to a variable index,
    /// or `None` for the fake positions `0` and `m + 1`.
    pub fn position(&self, i: usize) -> Option<usize> {
        if i == 0 || i > self.0.len() {
            None
        } else {
            Some(self.0[i - 1])
        }
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// All permutations of `{1, …, m}` in lexicographic order.
    pub fn all(m: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(m);
        let mut used = vec![false; m + 1];
        fn rec(m: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if cur.len() == m {
                out.push(Permutation(cur.clone()));
                return;
            }
            for v in 1..=m {
                if !used[v] {
                    used[v] = true;
                    cur.push(v);
                    rec(m, cur, used, out);
                    cur.pop();
                    used[v] = false;
                }
            }
        }
        rec(m, &mut cur, &mut used, &mut out);
        out
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}
