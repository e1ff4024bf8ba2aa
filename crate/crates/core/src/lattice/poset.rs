use std::collections::HashMap;

use crate::error::{Error, Result};

/// A finite partial order over labelled elements.
///
/// Elements are addressed by their position in the input order, which is
/// also the canonical iteration order for every search in the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    leq: Vec<bool>,
}

impl FinitePoset {
    /// Builds a poset from a relation. Reflexive pairs are implied; the
    /// relation must already be transitive and antisymmetric.
    pub fn from_relation<S, I>(labels: I, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self>
    where
        S: Into<String>,
        I: IntoIterator<Item = S>,
    {
        let mut poset = Self::reflexive(labels)?;
        poset.add_pairs(pairs)?;
        poset.check_transitive()?;
        poset.check_antisymmetric()?;
        Ok(poset)
    }

    /// Builds a poset as the reflexive-transitive closure of cover pairs.
    pub fn from_covers<S, I>(labels: I, covers: impl IntoIterator<Item = (usize, usize)>) -> Result<Self>
    where
        S: Into<String>,
        I: IntoIterator<Item = S>,
    {
        let mut poset = Self::reflexive(labels)?;
        poset.add_pairs(covers)?;
        let n = poset.len();
        for k in 0..n {
            for i in 0..n {
                if poset.leq[i * n + k] {
                    for j in 0..n {
                        if poset.leq[k * n + j] {
                            poset.leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        poset.check_antisymmetric()?;
        Ok(poset)
    }

    /// Builds a poset from an order predicate, validating it.
    pub fn from_fn<S, I>(labels: I, leq: impl Fn(usize, usize) -> bool) -> Result<Self>
    where
        S: Into<String>,
        I: IntoIterator<Item = S>,
    {
        let mut poset = Self::reflexive(labels)?;
        let n = poset.len();
        for a in 0..n {
            for b in 0..n {
                if a != b && leq(a, b) {
                    poset.leq[a * n + b] = true;
                }
            }
        }
        poset.check_transitive()?;
        poset.check_antisymmetric()?;
        Ok(poset)
    }

    pub fn chain(n: usize) -> Self {
        Self::from_fn((0..n).map(|i| i.to_string()), |a, b| a <= b).expect("chain is a poset")
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_fn((0..n).map(|i| i.to_string()), |a, b| a == b).expect("antichain is a poset")
    }

    fn reflexive<S, I>(labels: I) -> Result<Self>
    where
        S: Into<String>,
        I: IntoIterator<Item = S>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut seen = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if seen.insert(l.as_str(), i).is_some() {
                return Err(Error::DuplicateElement(l.clone()));
            }
        }
        let n = labels.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        Ok(FinitePoset { labels, leq })
    }

    fn add_pairs(&mut self, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<()> {
        let n = self.len();
        for (a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::UnknownElement(format!("#{}", a.max(b))));
            }
            self.leq[a * n + b] = true;
        }
        Ok(())
    }

    fn check_transitive(&self) -> Result<()> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                if !self.leq(a, b) {
                    continue;
                }
                for c in 0..n {
                    if self.leq(b, c) && !self.leq(a, c) {
                        return Err(Error::InvalidPoset(format!(
                            "not transitive: {} <= {} <= {} but not {} <= {}",
                            self.labels[a], self.labels[b], self.labels[c], self.labels[a], self.labels[c]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_antisymmetric(&self) -> Result<()> {
        let n = self.len();
        for a in 0..n {
            for b in a + 1..n {
                if self.leq(a, b) && self.leq(b, a) {
                    return Err(Error::InvalidPoset(format!(
                        "not antisymmetric: {} and {}",
                        self.labels[a], self.labels[b]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.labels.len() + b]
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// `a ≺ b`: `a < b` with nothing strictly between.
    pub fn covers(&self, a: usize, b: usize) -> bool {
        self.lt(a, b) && !(0..self.len()).any(|c| self.lt(a, c) && self.lt(c, b))
    }

    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.covers(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// All pairs `(a, b)` with `a <= b`, reflexive pairs included.
    pub fn relation(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.leq(a, b))
            .collect()
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| !(0..self.len()).any(|y| self.lt(y, x)))
            .collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| !(0..self.len()).any(|y| self.lt(x, y)))
            .collect()
    }

    /// Length of the longest chain ending in each element.
    pub fn heights(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| (0..n).filter(|&y| self.leq(y, x)).count());
        let mut h = vec![0; n];
        for &x in &order {
            h[x] = (0..n).filter(|&y| self.lt(y, x)).map(|y| h[y] + 1).max().unwrap_or(0);
        }
        h
    }

    /// The same carrier with the order restricted to the given pairs test.
    pub(crate) fn filtered(&self, keep: impl Fn(usize, usize) -> bool) -> Result<Self> {
        Self::from_fn(self.labels.clone(), |a, b| self.leq(a, b) && keep(a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn covers_close_to_order() {
        let p = FinitePoset::from_covers(["0", "m", "1"], [(0, 1), (1, 2)]).unwrap();
        assert!(p.leq(0, 2));
        assert!(p.covers(0, 1));
        assert!(!p.covers(0, 2));
        assert_eq!(p.minimal(), vec![0]);
        assert_eq!(p.maximal(), vec![2]);
        assert_eq!(p.heights(), vec![0, 1, 2]);
    }

    #[test]
    fn rejects_bad_relations() {
        assert!(matches!(
            FinitePoset::from_relation(["a", "b", "c"], [(0, 1), (1, 2)]),
            Err(Error::InvalidPoset(_))
        ));
        assert!(matches!(
            FinitePoset::from_covers(["a", "b"], [(0, 1), (1, 0)]),
            Err(Error::InvalidPoset(_))
        ));
        assert!(matches!(
            FinitePoset::from_relation(["a", "a"], []),
            Err(Error::DuplicateElement(_))
        ));
    }
}
