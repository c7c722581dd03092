use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Nonnegative integer vector indexed by node position.
///
/// The derived order is lexicographic, which is the enumeration order used
/// throughout.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct DimVector(Vec<i64>);

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DimVectorError {
    #[error("negative entry {value} at position {index}")]
    Negative { index: usize, value: i64 },
    #[error("cannot parse dimension vector {0:?}")]
    Parse(String),
}

impl DimVector {
    pub fn new(entries: Vec<i64>) -> Result<Self, DimVectorError> {
        if let Some((index, &value)) = entries.iter().enumerate().find(|(_, &x)| x < 0) {
            return Err(DimVectorError::Negative { index, value });
        }
        Ok(Self(entries))
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Self(v)
    }

    /// One-component vector, the degree type of singly graded series.
    pub fn scalar(n: i64) -> Self {
        Self::new(vec![n]).expect("nonnegative degree")
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "dimension vector length mismatch");
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other`, if it stays nonnegative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        assert_eq!(self.len(), other.len(), "dimension vector length mismatch");
        let out: Vec<i64> = self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect();
        out.iter().all(|&x| x >= 0).then_some(Self(out))
    }

    /// Componentwise `<=`.
    pub fn le(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn scale(&self, k: i64) -> Self {
        assert!(k >= 0);
        Self(self.0.iter().map(|x| x * k).collect())
    }

    /// Largest `g` with `self = g * w` for an integral `w`.
    pub fn gcd(&self) -> i64 {
        self.0.iter().fold(0, |g, &x| num_integer::gcd(g, x))
    }

    pub fn divide(&self, k: i64) -> Option<Self> {
        (k > 0 && self.0.iter().all(|x| x % k == 0)).then(|| Self(self.0.iter().map(|x| x / k).collect()))
    }

    /// All vectors `0 <= w <= self`, lexicographic.
    pub fn sub_vectors(&self) -> Vec<Self> {
        let mut out = vec![Vec::with_capacity(self.len())];
        for &bound in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=bound).map(move |x| {
                        let mut p = prefix.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(Self).collect()
    }

    /// All vectors of length `n` with total at most `max_total`, ordered by
    /// total and then lexicographically.
    pub fn all_up_to(n: usize, max_total: i64) -> Vec<Self> {
        let mut out = Vec::new();
        for t in 0..=max_total.max(-1) {
            let mut level = Vec::new();
            compositions(n, t, &mut Vec::new(), &mut level);
            out.extend(level.into_iter().map(Self));
        }
        out
    }
}

fn compositions(n: usize, t: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if prefix.len() + 1 == n {
        prefix.push(t);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    if n == 0 {
        if t == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for x in 0..=t {
        prefix.push(x);
        compositions(n, t - x, prefix, out);
        prefix.pop();
    }
}

impl TryFrom<Vec<i64>> for DimVector {
    type Error = DimVectorError;
    fn try_from(v: Vec<i64>) -> Result<Self, Self::Error> {
        Self::new(v)
    }
}

impl From<DimVector> for Vec<i64> {
    fn from(d: DimVector) -> Self {
        d.0
    }
}

impl FromStr for DimVector {
    type Err = DimVectorError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let entries = trimmed
            .split(',')
            .map(|x| x.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| DimVectorError::Parse(s.to_string()))?;
        Self::new(entries)
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
