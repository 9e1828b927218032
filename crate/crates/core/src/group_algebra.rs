//! Exact arithmetic in Q[Σn] and Young symmetrizers.
//!
//! Composition convention: `(σ∘τ)(i) = σ(τ(i))`; the algebra product extends
//! it bilinearly. Every action in the crate is a left action under this
//! convention.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Limits, Result};
use crate::partition::Partition;
use crate::symgroup::{factorial, irrep_dimension};

/// A permutation of `{0, …, n-1}` in one-line notation; displayed 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// From 1-based one-line notation.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::arg(format!(
                    "{images:?} is not a permutation of 1..{n}"
                )));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation(images.iter().map(|v| v - 1).collect()))
    }

    /// The transposition of the 1-based points `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 || a > n || b > n || a == b {
            return Err(Error::arg(format!(
                "({a} {b}) is not a transposition in Σ{n}"
            )));
        }
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(a - 1, b - 1);
        Ok(Permutation(v))
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// Image of the 0-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n());
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// +1 or -1.
    pub fn sign(&self) -> i32 {
        let even_cycles = self.cycles().iter().filter(|c| c.len() % 2 == 0).count();
        if even_cycles % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Cycles (0-based) including fixed points, each starting at its least
    /// element, ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut j = self.0[start];
            while j != start {
                seen[j] = true;
                cyc.push(j);
                j = self.0[j];
            }
            out.push(cyc);
        }
        out
    }

    pub fn cycle_type(&self) -> Partition {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lens.sort_unstable_by(|a, b| b.cmp(a));
        Partition::from_sorted(lens)
    }

    /// All of Σn in lexicographic one-line order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, 1-based, fixed points omitted; the identity is `e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("e");
        }
        for cyc in self.cycles().into_iter().filter(|c| c.len() > 1) {
            let body: Vec<String> = cyc.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// One-line notation such as `2,1,3` or `[2,1,3]`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        let images = t
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::arg(format!("invalid permutation {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_one_line(&images)
    }
}

/// A finitely supported rational combination of permutations of one Σn.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    n: usize,
    terms: BTreeMap<Permutation, BigRational>,
}

impl GroupAlgebraElement {
    pub fn zero(n: usize) -> Self {
        GroupAlgebraElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_permutation(Permutation::identity(n))
    }

    pub fn from_permutation(p: Permutation) -> Self {
        let n = p.n();
        let mut terms = BTreeMap::new();
        terms.insert(p, BigRational::one());
        GroupAlgebraElement { n, terms }
    }

    pub fn from_terms(
        n: usize,
        terms: impl IntoIterator<Item = (Permutation, BigRational)>,
    ) -> Result<Self> {
        let mut e = Self::zero(n);
        for (p, c) in terms {
            if p.n() != n {
                return Err(Error::arg(
                    "permutation degree differs from the algebra's n",
                ));
            }
            e.add_term(p, c);
        }
        Ok(e)
    }

    fn add_term(&mut self, p: Permutation, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
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

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &BigRational)> {
        self.terms.iter()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, p: &Permutation) -> BigRational {
        self.terms.get(p).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.n);
        for (p, v) in &self.terms {
            out.add_term(p.clone(), v * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_n(other)?;
        let mut out = self.clone();
        for (p, v) in &other.terms {
            out.add_term(p.clone(), v.clone());
        }
        Ok(out)
    }

    /// Convolution product: `(Σ a_σ σ)(Σ b_τ τ) = Σ a_σ b_τ (σ∘τ)`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_n(other)?;
        let mut out = Self::zero(self.n);
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                out.add_term(s.compose(t), a * b);
            }
        }
        Ok(out)
    }

    fn check_n(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::arg(format!(
                "group algebra elements of Σ{} and Σ{} cannot be combined",
                self.n, other.n
            )));
        }
        Ok(())
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write!(f, "{}*{}", c.abs(), p)?;
        }
        Ok(())
    }
}

/// The canonical tableau of shape λ: 0..n filled row by row. Returns the
/// rows and the columns as sets of points.
fn canonical_rows_cols(lambda: &Partition) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let mut rows = Vec::new();
    let mut next = 0;
    for &len in lambda.parts() {
        rows.push((next..next + len).collect::<Vec<_>>());
        next += len;
    }
    let cols = (0..lambda.part(0))
        .map(|j| rows.iter().filter(|r| r.len() > j).map(|r| r[j]).collect())
        .collect();
    (rows, cols)
}

/// All permutations of `n` points that preserve each block setwise.
fn block_group(n: usize, blocks: &[Vec<usize>]) -> Vec<Permutation> {
    let mut out = vec![Permutation::identity(n)];
    for block in blocks.iter().filter(|b| b.len() > 1) {
        let local = Permutation::all(block.len());
        let mut next = Vec::with_capacity(out.len() * local.len());
        for g in &out {
            for l in &local {
                let mut images = g.0.clone();
                for (i, &pt) in block.iter().enumerate() {
                    images[pt] = block[l.apply(i)];
                }
                next.push(Permutation(images));
            }
        }
        out = next;
    }
    out
}

/// Row group R_λ and column group C_λ of the canonical tableau.
pub fn row_and_column_groups(lambda: &Partition) -> (Vec<Permutation>, Vec<Permutation>) {
    let (rows, cols) = canonical_rows_cols(lambda);
    let n = lambda.weight();
    (block_group(n, &rows), block_group(n, &cols))
}

/// c_λ = (dim V_λ / n!) · a_λ · b_λ for the canonical row-filled tableau,
/// where a_λ sums the row group and b_λ is the signed sum over the column
/// group.
pub fn young_symmetrizer(lambda: &Partition, limits: &Limits) -> Result<GroupAlgebraElement> {
    let n = lambda.weight();
    if n == 0 {
        return Err(Error::arg("Young symmetrizer of the empty partition"));
    }
    Limits::check("symmetrizer degree n", n, limits.max_symmetrizer_n)?;
    let (rows, cols) = row_and_column_groups(lambda);
    let scale = BigRational::new(
        BigInt::from(irrep_dimension(lambda)?),
        BigInt::from(factorial(n)),
    );
    let neg = -scale.clone();
    // R_λ ∩ C_λ = {e}, so every r∘c is distinct
    let mut terms = BTreeMap::new();
    for r in &rows {
        for c in &cols {
            let coeff = if c.sign() > 0 {
                scale.clone()
            } else {
                neg.clone()
            };
            terms.insert(r.compose(c), coeff);
        }
    }
    Ok(GroupAlgebraElement { n, terms })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn composition_convention() {
        // σ = (1 2), τ = (2 3): σ∘τ sends 3 -> 2 -> 1
        let s = Permutation::transposition(3, 1, 2).unwrap();
        let t = Permutation::transposition(3, 2, 3).unwrap();
        let st = s.compose(&t);
        assert_eq!(st.apply(2), 0);
        assert_eq!(st.to_string(), "(1 2 3)");
        assert_eq!(st.sign(), 1);
        assert_eq!(st.compose(&st.inverse()), Permutation::identity(3));
    }

    #[test]
    fn multiply_examples() {
        let a = GroupAlgebraElement::from_terms(
            3,
            [
                (Permutation::identity(3), q(1, 2)),
                (Permutation::transposition(3, 1, 3).unwrap(), q(-2, 3)),
            ],
        )
        .unwrap();
        assert_eq!(GroupAlgebraElement::identity(3).multiply(&a).unwrap(), a);

        let t = GroupAlgebraElement::from_permutation(Permutation::transposition(2, 1, 2).unwrap());
        assert_eq!(t.multiply(&t).unwrap(), GroupAlgebraElement::identity(2));

        let sym = GroupAlgebraElement::identity(2)
            .add(&t)
            .unwrap()
            .scale(&q(1, 2));
        assert_eq!(sym.multiply(&sym).unwrap(), sym);

        assert!(t.multiply(&GroupAlgebraElement::identity(3)).is_err());
    }

    #[test]
    fn symmetrizer_examples() {
        let limits = Limits::default();
        let full = young_symmetrizer(&p(&[3]), &limits).unwrap();
        assert_eq!(full.support_len(), 6);
        assert!(full.terms().all(|(_, c)| *c == q(1, 6)));

        let anti = young_symmetrizer(&p(&[1, 1, 1]), &limits).unwrap();
        assert!(anti.terms().all(|(s, c)| *c == q(s.sign() as i64, 6)));

        let hook = young_symmetrizer(&p(&[2, 1]), &limits).unwrap();
        assert_eq!(hook.coefficient(&Permutation::identity(3)), q(1, 3));
        assert_eq!(hook.support_len(), 4);
    }

    #[test]
    fn symmetrizer_caps() {
        let limits = Limits::default();
        assert!(matches!(
            young_symmetrizer(&p(&[8]), &limits),
            Err(Error::SizeLimit { limit: 7, .. })
        ));
        assert!(young_symmetrizer(&Partition::empty(), &limits).is_err());
    }

    #[test]
    fn enumerate_all() {
        assert_eq!(Permutation::all(4).len(), 24);
        assert_eq!(Permutation::all(0).len(), 1);
        let odd = Permutation::all(4).iter().filter(|s| s.sign() < 0).count();
        assert_eq!(odd, 12);
    }

    #[test]
    fn parse_one_line() {
        assert_eq!(
            "2,1,3".parse::<Permutation>().unwrap(),
            Permutation::transposition(3, 1, 2).unwrap()
        );
        assert!("1,1".parse::<Permutation>().is_err());
        assert!("0,1".parse::<Permutation>().is_err());
    }
}
