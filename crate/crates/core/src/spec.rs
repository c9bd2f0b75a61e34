//! The allowed intersection sizes `L` paired with the uniformity `r`.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// `L = {ℓ₁ < … < ℓ_s} ⊆ [0, r−1]` together with the uniformity `r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntersectSpec {
    r: usize,
    l: Vec<usize>,
}

impl IntersectSpec {
    /// Validates strict increase, `L ⊆ [0, r−1]` and `|L| ≥ 1`.
    pub fn new(r: usize, l: Vec<usize>) -> Result<Self> {
        Self::check(r, &l)?;
        if l.is_empty() {
            return Err(Error::InvalidSpec("L must be nonempty".into()));
        }
        Ok(IntersectSpec { r, l })
    }

    /// Like [`IntersectSpec::new`] but accepts an empty `L`, which bound
    /// evaluators and the recursive combinator need for sub-instances.
    pub fn new_allow_empty(r: usize, l: Vec<usize>) -> Result<Self> {
        Self::check(r, &l)?;
        Ok(IntersectSpec { r, l })
    }

    fn check(r: usize, l: &[usize]) -> Result<()> {
        if l.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSpec(format!(
                "L = {l:?} is not strictly increasing"
            )));
        }
        if let Some(&last) = l.last() {
            if last >= r {
                return Err(Error::InvalidSpec(format!(
                    "L = {l:?} is not contained in [0, {}]",
                    r as isize - 1
                )));
            }
        }
        Ok(())
    }

    /// `L = [t, r−1]`, the t-intersecting condition.
    pub fn t_intersecting(r: usize, t: usize) -> Result<Self> {
        Self::new(r, (t..r).collect())
    }

    /// `L = [0, r−1]`, no restriction at all.
    pub fn unrestricted(r: usize) -> Result<Self> {
        Self::new(r, (0..r).collect())
    }

    /// Parses a comma list such as `0,2`.
    pub fn parse(r: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        let l = if text.is_empty() {
            Vec::new()
        } else {
            text.split(',')
                .map(|p| {
                    p.trim()
                        .parse::<usize>()
                        .map_err(|e| Error::InvalidSpec(format!("bad entry {p:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Self::new(r, l)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn l(&self) -> &[usize] {
        &self.l
    }

    pub fn s(&self) -> usize {
        self.l.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.l.binary_search(&x).is_ok()
    }

    /// The smallest element `ℓ₁`.
    pub fn min(&self) -> Option<usize> {
        self.l.first().copied()
    }

    /// Common difference `d` when `ℓ₁, …, ℓ_s, r` is an arithmetic
    /// progression, `None` otherwise.
    pub fn ap_difference(&self) -> Option<usize> {
        let first = *self.l.first()?;
        let span = self.r - first;
        if span % self.s() != 0 {
            return None;
        }
        let d = span / self.s();
        let mut seq = self.l.clone();
        seq.push(self.r);
        seq.windows(2).all(|w| w[1] - w[0] == d).then_some(d)
    }
}

impl std::fmt::Display for IntersectSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.l.iter().map(|x| x.to_string()).collect();
        write!(f, "r={} L={{{}}}", self.r, parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_sets() {
        assert!(IntersectSpec::new(4, vec![2, 0]).is_err());
        assert!(IntersectSpec::new(4, vec![0, 4]).is_err());
        assert!(IntersectSpec::new(4, vec![1, 1]).is_err());
        assert!(IntersectSpec::new(4, vec![]).is_err());
        assert!(IntersectSpec::new_allow_empty(4, vec![]).is_ok());
        assert!(IntersectSpec::parse(3, "1,x").is_err());
    }

    #[test]
    fn ap_detection() {
        let s = IntersectSpec::parse(4, "0,2").unwrap();
        assert_eq!(s.ap_difference(), Some(2));
        assert_eq!(IntersectSpec::parse(3, "0,1").unwrap().ap_difference(), None);
        assert_eq!(IntersectSpec::parse(5, "1,3").unwrap().ap_difference(), Some(2));
        assert_eq!(IntersectSpec::t_intersecting(6, 2).unwrap().ap_difference(), Some(1));
        assert_eq!(IntersectSpec::parse(4, "1").unwrap().ap_difference(), Some(3));
    }
}
