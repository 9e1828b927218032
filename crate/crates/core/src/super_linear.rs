//! Brute-force Schur functors on super vector spaces.
//!
//! Σn acts on `V^{⊗n}` by moving the factor in position `i` to position
//! `σ(i)`, with the Koszul sign `(-1)^k` where `k` counts the inverted pairs
//! of positions that both carry odd basis vectors. Basis tensors are ordered
//! lexicographically by factor index; the first `p` basis vectors of `V` are
//! even, the remaining `q` odd.
//!
//! The action preserves the multiset of basis indices ("content") of a basis
//! tensor, so `c_λ` is block diagonal with one block per content. Ranks are
//! computed block by block with fraction-free elimination.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Limits, Result};
use crate::group_algebra::{young_symmetrizer, GroupAlgebraElement, Permutation};
use crate::linalg::{rational_rank, RationalMatrix};
use crate::partition::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SuperVectorSpace {
    pub even: usize,
    pub odd: usize,
}

impl SuperVectorSpace {
    pub fn new(even: usize, odd: usize) -> Self {
        SuperVectorSpace { even, odd }
    }

    pub fn dim(&self) -> usize {
        self.even + self.odd
    }

    pub fn is_odd_basis(&self, b: usize) -> bool {
        b >= self.even
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        SuperVectorSpace::new(self.even + other.even, self.odd + other.odd)
    }

    pub fn tensor(&self, other: &Self) -> Self {
        SuperVectorSpace::new(
            self.even * other.even + self.odd * other.odd,
            self.even * other.odd + self.odd * other.even,
        )
    }

    fn tensor_dim(&self, n: usize, limits: &Limits) -> Result<usize> {
        let d = self
            .dim()
            .checked_pow(n as u32)
            .filter(|&d| d <= limits.max_tensor_dim)
            .ok_or(Error::SizeLimit {
                what: "tensor power dimension",
                requested: self.dim().saturating_pow(n as u32),
                limit: limits.max_tensor_dim,
            })?;
        Ok(d)
    }
}

impl fmt::Display for SuperVectorSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.even, self.odd)
    }
}

impl FromStr for SuperVectorSpace {
    type Err = Error;

    /// `p|q`, optionally parenthesized.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (a, b) = t
            .split_once('|')
            .ok_or_else(|| Error::arg(format!("super space {s:?} is not of the form p|q")))?;
        let parse = |x: &str| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| Error::arg(format!("invalid dimension in {s:?}")))
        };
        Ok(SuperVectorSpace::new(parse(a)?, parse(b)?))
    }
}

/// Even and odd ranks of a graded space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct GradedDim {
    pub even: usize,
    pub odd: usize,
}

impl GradedDim {
    pub fn total(&self) -> usize {
        self.even + self.odd
    }

    pub fn is_zero(&self) -> bool {
        self.total() == 0
    }

    pub fn swapped(&self) -> Self {
        GradedDim {
            even: self.odd,
            odd: self.even,
        }
    }
}

fn tensor_index(dim: usize, word: &[usize]) -> usize {
    word.iter().fold(0, |acc, &b| acc * dim + b)
}

/// σ applied to a basis tensor: the new word and the Koszul sign.
pub(crate) fn act_on_word(
    sigma: &Permutation,
    word: &[usize],
    odd: impl Fn(usize) -> bool,
) -> (Vec<usize>, i32) {
    let n = word.len();
    let mut out = vec![0; n];
    for (i, &b) in word.iter().enumerate() {
        out[sigma.apply(i)] = b;
    }
    let mut sign = 1;
    for (i, &a) in word.iter().enumerate() {
        if !odd(a) {
            continue;
        }
        for (j, &b) in word.iter().enumerate().skip(i + 1) {
            if odd(b) && sigma.apply(i) > sigma.apply(j) {
                sign = -sign;
            }
        }
    }
    (out, sign)
}

fn all_words(dim: usize, n: usize) -> Vec<Vec<usize>> {
    let mut words = vec![Vec::new()];
    for _ in 0..n {
        words = words
            .into_iter()
            .flat_map(|w| {
                (0..dim).map(move |b| {
                    let mut w = w.clone();
                    w.push(b);
                    w
                })
            })
            .collect();
    }
    words
}

/// The signed permutation matrix of σ on `V^{⊗n}`.
pub fn permutation_action(
    space: &SuperVectorSpace,
    n: usize,
    sigma: &Permutation,
    limits: &Limits,
) -> Result<RationalMatrix> {
    apply_element(
        space,
        n,
        &GroupAlgebraElement::from_permutation(sigma.clone()),
        limits,
    )
}

/// The endomorphism of `V^{⊗n}` induced by an element of Q[Σn].
pub fn apply_element(
    space: &SuperVectorSpace,
    n: usize,
    element: &GroupAlgebraElement,
    limits: &Limits,
) -> Result<RationalMatrix> {
    if n == 0 {
        return Err(Error::arg("tensor power degree must be at least 1"));
    }
    if element.n() != n {
        return Err(Error::arg(format!(
            "element of Q[Σ{}] applied to a degree-{n} tensor power",
            element.n()
        )));
    }
    let size = space.tensor_dim(n, limits)?;
    let dim = space.dim();
    let mut m = RationalMatrix::zeros(size, size);
    for word in all_words(dim, n) {
        let col = tensor_index(dim, &word);
        for (sigma, c) in element.terms() {
            let (image, sign) = act_on_word(sigma, &word, |b| space.is_odd_basis(b));
            let row = tensor_index(dim, &image);
            let v = if sign > 0 { c.clone() } else { -c.clone() };
            m[(row, col)] = &m[(row, col)] + v;
        }
    }
    Ok(m)
}

/// One weight block of `S_λ(V)`: the basis-vector multiplicities shared by
/// the block's tensors, their parity, and the rank of `c_λ` there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContentBlock {
    pub content: Vec<usize>,
    pub odd: bool,
    pub rank: usize,
}

/// Multisets of size `n` over `dim` letters, as multiplicity vectors.
fn contents(dim: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(dim: usize, i: usize, rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i + 1 == dim {
            cur.push(rest);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in (0..=rest).rev() {
            cur.push(k);
            rec(dim, i + 1, rest - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if dim > 0 {
        rec(dim, 0, n, &mut Vec::new(), &mut out);
    }
    out
}

/// Distinct arrangements of a content, in lexicographic order.
fn arrangements(content: &[usize]) -> Vec<Vec<usize>> {
    fn rec(counts: &mut [usize], left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for b in 0..counts.len() {
            if counts[b] > 0 {
                counts[b] -= 1;
                cur.push(b);
                rec(counts, left - 1, cur, out);
                cur.pop();
                counts[b] += 1;
            }
        }
    }
    let mut counts = content.to_vec();
    let n = counts.iter().sum();
    let mut out = Vec::new();
    rec(&mut counts, n, &mut Vec::new(), &mut out);
    out
}

/// Ranks of `c_λ` on every content block of `V^{⊗n}`, `n = |λ|`.
pub fn schur_blocks(
    space: &SuperVectorSpace,
    lambda: &Partition,
    limits: &Limits,
) -> Result<Vec<ContentBlock>> {
    let n = lambda.weight();
    if n == 0 {
        return Err(Error::arg("Schur functor of the empty partition"));
    }
    space.tensor_dim(n, limits)?;
    let c = young_symmetrizer(lambda, limits)?;
    let terms: Vec<(&Permutation, &BigRational)> = c.terms().collect();
    let odd = |b: usize| space.is_odd_basis(b);

    let mut blocks = Vec::new();
    for content in contents(space.dim(), n) {
        let words = arrangements(&content);
        let index: HashMap<&[usize], usize> = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.as_slice(), i))
            .collect();
        let mut m = RationalMatrix::zeros(words.len(), words.len());
        for (col, word) in words.iter().enumerate() {
            for (sigma, coeff) in &terms {
                let (image, sign) = act_on_word(sigma, word, odd);
                let row = index[image.as_slice()];
                let v = if sign > 0 {
                    (*coeff).clone()
                } else {
                    -(*coeff).clone()
                };
                m[(row, col)] = &m[(row, col)] + v;
            }
        }
        let odd_count: usize = content[space.even..].iter().sum();
        blocks.push(ContentBlock {
            odd: odd_count % 2 == 1,
            rank: rational_rank(&m),
            content,
        });
    }
    Ok(blocks)
}

/// Graded dimension of `S_λ(V) = c_λ(V^{⊗n})`.
pub fn schur_dimension(
    space: &SuperVectorSpace,
    lambda: &Partition,
    limits: &Limits,
) -> Result<GradedDim> {
    let mut dim = GradedDim::default();
    for block in schur_blocks(space, lambda, limits)? {
        if block.odd {
            dim.odd += block.rank;
        } else {
            dim.even += block.rank;
        }
    }
    Ok(dim)
}

/// `S_λ(p|q) = 0` iff λ contains the rectangle with `p+1` rows and `q+1`
/// columns.
pub fn vanishes_by_rectangle(space: &SuperVectorSpace, lambda: &Partition) -> bool {
    lambda.contains(&Partition::rectangle(space.even + 1, space.odd + 1))
}
