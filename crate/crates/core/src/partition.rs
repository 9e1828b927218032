//! Integer partitions and Young diagram combinatorics.
//!
//! A [`Partition`] is stored canonically: parts strictly positive and weakly
//! decreasing, trailing zeros stripped. The derived ordering is lexicographic
//! on the parts, so sorting in descending order yields reverse-lexicographic
//! order, which is the order used for every enumeration in this crate.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Limits, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Builds a partition, stripping trailing zeros.
    pub fn new(parts: impl Into<Vec<usize>>) -> Result<Self> {
        let mut parts = parts.into();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) {
            return Err(Error::arg(format!(
                "partition {parts:?} has an interior zero part"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::arg(format!(
                "partition {parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition(parts))
    }

    pub(crate) fn from_sorted(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(!parts.contains(&0));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The one-row partition `(n)`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition(vec![n])
        }
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition(vec![1; n])
    }

    /// `rows` rows of length `cols`. Degenerate sizes give the empty partition.
    pub fn rectangle(rows: usize, cols: usize) -> Self {
        if rows == 0 || cols == 0 {
            Self::empty()
        } else {
            Partition(vec![cols; rows])
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of nonzero rows.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Row `i` (0-based), zero past the last row.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn transpose(&self) -> Partition {
        let cols = self.part(0);
        let parts = (0..cols)
            .map(|j| self.0.iter().take_while(|&&r| r > j).count())
            .collect();
        Partition(parts)
    }

    /// True iff the diagram of `other` fits inside the diagram of `self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(m, l)| m <= l)
    }

    /// Hook length of box `(row, col)`; the box must lie in the diagram.
    pub fn hook(&self, row: usize, col: usize) -> usize {
        let arm = self.0[row] - col - 1;
        let leg = self.0[row + 1..].iter().take_while(|&&r| r > col).count();
        arm + leg + 1
    }

    /// Multiplicity of each part size, indexed by part size (index 0 unused).
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.part(0) + 1];
        for &p in &self.0 {
            m[p] += 1;
        }
        m
    }

    /// Partitions obtained by adding a single box.
    pub fn add_box_shapes(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for i in 0..=self.len() {
            if i == 0 || self.part(i) < self.part(i - 1) {
                let mut parts = self.0.clone();
                if i == parts.len() {
                    parts.push(1);
                } else {
                    parts[i] += 1;
                }
                out.push(Partition(parts));
            }
        }
        out
    }

    /// Partitions obtained by deleting a single removable box.
    pub fn remove_box_shapes(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            if self.part(i) > self.part(i + 1) {
                let mut parts = self.0.clone();
                parts[i] -= 1;
                if parts[i] == 0 {
                    parts.pop();
                }
                out.push(Partition(parts));
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `3,2,1`, `[3,2,1]` and `(3,2,1)`; whitespace is ignored.
    /// The empty string, `[]` and `()` denote the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = match (t.chars().next(), t.chars().last()) {
            (Some('['), Some(']')) | (Some('('), Some(')')) if t.len() >= 2 => &t[1..t.len() - 1],
            _ => t,
        };
        let inner = inner.trim();
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::arg(format!("invalid partition literal {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// All partitions of `n` in reverse-lexicographic order, subject to the
/// configured weight cap.
pub fn partitions_of(n: usize, limits: &Limits) -> Result<Vec<Partition>> {
    Limits::check("partition weight", n, limits.max_partition_weight)?;
    Ok(all_partitions(n))
}

/// Uncapped enumeration for internal consumers that already bound `n`.
pub(crate) fn all_partitions(n: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every partition contained in `lambda` (including the empty one and
/// `lambda` itself), grouped by nothing in particular.
pub(crate) fn sub_diagrams(lambda: &Partition) -> Vec<Partition> {
    fn rec(lambda: &[usize], i: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i == lambda.len() {
            let mut parts = cur.clone();
            while parts.last() == Some(&0) {
                parts.pop();
            }
            out.push(Partition(parts));
            return;
        }
        for p in (0..=max.min(lambda[i])).rev() {
            cur.push(p);
            rec(lambda, i + 1, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(&lambda.0, 0, lambda.part(0), &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(p(&[3, 1]).transpose(), p(&[2, 1, 1]));
        assert_eq!(Partition::empty().transpose(), Partition::empty());
        assert_eq!(p(&[2, 2]).transpose(), p(&[2, 2]));
    }

    #[test]
    fn contains_examples() {
        assert!(p(&[2, 2]).contains(&p(&[2, 1])));
        assert!(!p(&[3]).contains(&p(&[1, 1])));
        assert!(p(&[1, 1, 1]).contains(&p(&[1, 1, 1])));
    }

    #[test]
    fn enumeration_small() {
        assert_eq!(all_partitions(0), vec![Partition::empty()]);
        let four = all_partitions(4);
        assert_eq!(
            four,
            vec![
                p(&[4]),
                p(&[3, 1]),
                p(&[2, 2]),
                p(&[2, 1, 1]),
                p(&[1, 1, 1, 1])
            ]
        );
        assert_eq!(all_partitions(6).len(), 11);
    }

    #[test]
    fn weight_cap() {
        let limits = Limits::default();
        assert!(partitions_of(20, &limits).is_ok());
        assert!(matches!(
            partitions_of(21, &limits),
            Err(Error::SizeLimit { limit: 20, .. })
        ));
    }

    #[test]
    fn canonical_storage_and_parse() {
        assert_eq!(p(&[3, 2, 0, 0]), p(&[3, 2]));
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0, 1]).is_err());
        assert_eq!("3,2,1".parse::<Partition>().unwrap(), p(&[3, 2, 1]));
        assert_eq!("[3, 2,1]".parse::<Partition>().unwrap(), p(&[3, 2, 1]));
        assert_eq!("(3,2,1)".parse::<Partition>().unwrap(), p(&[3, 2, 1]));
        assert_eq!("[]".parse::<Partition>().unwrap(), Partition::empty());
        assert!("3,,1".parse::<Partition>().is_err());
        assert!("1,2".parse::<Partition>().is_err());
        assert_eq!(p(&[3, 2, 1]).to_string(), "(3,2,1)");
        assert_eq!(Partition::empty().to_string(), "()");
    }

    #[test]
    fn json_is_an_integer_array() {
        let s = serde_json::to_string(&p(&[2, 1])).unwrap();
        assert_eq!(s, "[2,1]");
        let back: Partition = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p(&[2, 1]));
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
    }

    #[test]
    fn rectangles() {
        assert_eq!(Partition::rectangle(2, 3), p(&[3, 3]));
        assert_eq!(
            Partition::rectangle(3, 2).transpose(),
            Partition::rectangle(2, 3)
        );
        assert_eq!(Partition::rectangle(0, 4), Partition::empty());
    }

    #[test]
    fn hooks_and_boxes() {
        let l = p(&[3, 1]);
        assert_eq!(l.hook(0, 0), 4);
        assert_eq!(l.hook(0, 1), 2);
        assert_eq!(l.hook(1, 0), 1);
        assert_eq!(
            l.add_box_shapes(),
            vec![p(&[4, 1]), p(&[3, 2]), p(&[3, 1, 1])]
        );
        assert_eq!(l.remove_box_shapes(), vec![p(&[2, 1]), p(&[3])]);
        assert_eq!(sub_diagrams(&p(&[2, 1])).len(), 5);
    }
}
