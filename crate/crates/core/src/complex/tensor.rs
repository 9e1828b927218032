//! Tensor powers of complexes, the Σn action and idempotent images.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::Zero;

use super::ChainComplex;
use crate::error::{Error, Limits, Result};
use crate::group_algebra::{young_symmetrizer, GroupAlgebraElement};
use crate::linalg::{rational_left_inverse, rational_pivot_columns, Matrix, RationalMatrix, Ring};
use crate::partition::Partition;
use crate::poly::Poly;
use crate::super_linear::act_on_word;

/// `C^{⊗n}` with basis the words in the basis letters of `C`, listed in
/// lexicographic order within each total degree.
#[derive(Debug, Clone)]
pub struct TensorPower {
    factor: ChainComplex,
    n: usize,
    letters: Vec<(i64, usize)>,
    offsets: BTreeMap<i64, usize>,
    words: BTreeMap<i64, Vec<Vec<usize>>>,
    index: HashMap<Vec<usize>, usize>,
}

pub fn tensor_power(c: &ChainComplex, n: usize, limits: &Limits) -> Result<TensorPower> {
    TensorPower::new(c, n, limits)
}

impl TensorPower {
    pub fn new(c: &ChainComplex, n: usize, limits: &Limits) -> Result<Self> {
        if n == 0 {
            return Err(Error::arg("tensor power degree must be at least 1"));
        }
        let total = c.total_rank();
        let size = u32::try_from(n)
            .ok()
            .and_then(|e| total.checked_pow(e))
            .unwrap_or(usize::MAX);
        Limits::check("tensor power rank", size, limits.max_tensor_dim)?;

        let mut letters = Vec::new();
        let mut offsets = BTreeMap::new();
        for (&k, &r) in c.ranks() {
            offsets.insert(k, letters.len());
            letters.extend((0..r).map(|i| (k, i)));
        }
        let mut words: BTreeMap<i64, Vec<Vec<usize>>> = BTreeMap::new();
        let mut index = HashMap::new();
        let mut word = vec![0; n];
        if total > 0 {
            loop {
                let deg = word.iter().map(|&l| letters[l].0).sum();
                let list = words.entry(deg).or_default();
                index.insert(word.clone(), list.len());
                list.push(word.clone());
                // odometer increment, last position fastest
                let mut pos = n;
                while pos > 0 {
                    pos -= 1;
                    word[pos] += 1;
                    if word[pos] < total {
                        break;
                    }
                    word[pos] = 0;
                }
                if word.iter().all(|&l| l == 0) {
                    break;
                }
            }
        }
        Ok(TensorPower {
            factor: c.clone(),
            n,
            letters,
            offsets,
            words,
            index,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn factor(&self) -> &ChainComplex {
        &self.factor
    }

    pub fn rank(&self, k: i64) -> usize {
        self.words.get(&k).map_or(0, Vec::len)
    }

    pub fn ranks(&self) -> BTreeMap<i64, usize> {
        self.words.iter().map(|(&k, w)| (k, w.len())).collect()
    }

    /// Basis words of degree `k`; each letter is a basis index of the
    /// factor, numbered across degrees in increasing degree order.
    pub fn words(&self, k: i64) -> &[Vec<usize>] {
        self.words.get(&k).map_or(&[], Vec::as_slice)
    }

    /// `(degree, index within degree)` of a letter.
    pub fn letter(&self, l: usize) -> (i64, usize) {
        self.letters[l]
    }

    pub(crate) fn letter_index(&self, degree: i64, local: usize) -> usize {
        self.offsets[&degree] + local
    }

    pub(crate) fn position(&self, word: &[usize]) -> usize {
        self.index[word]
    }

    /// `d(a_1 ⊗ … ⊗ a_n) = Σ_i (−1)^{|a_1|+…+|a_{i−1}|} a_1 ⊗ … ⊗ d a_i ⊗ … ⊗ a_n`.
    fn d_word(&self, word: &[usize]) -> Vec<(Vec<usize>, Poly)> {
        let mut out = Vec::new();
        let mut before = 0i64;
        for (i, &l) in word.iter().enumerate() {
            let (deg, local) = self.letters[l];
            if self.factor.rank(deg - 1) > 0 {
                let d = self.factor.differential(deg);
                for row in 0..d.nrows() {
                    let c = &d[(row, local)];
                    if c.is_zero() {
                        continue;
                    }
                    let mut w = word.to_vec();
                    w[i] = self.letter_index(deg - 1, row);
                    let c = if before.rem_euclid(2) == 1 {
                        c.neg_ref()
                    } else {
                        c.clone()
                    };
                    out.push((w, c));
                }
            }
            before += deg;
        }
        out
    }

    pub fn differential(&self, k: i64) -> Matrix<Poly> {
        let mut m = Matrix::zeros(self.rank(k - 1), self.rank(k));
        if m.nrows() == 0 {
            return m;
        }
        for (j, w) in self.words(k).iter().enumerate() {
            for (w2, c) in self.d_word(w) {
                let i = self.index[&w2];
                m[(i, j)] = m[(i, j)].add_ref(&c);
            }
        }
        m
    }

    /// The tensor power as an explicit complex.
    pub fn complex(&self) -> Result<ChainComplex> {
        let diffs = self
            .words
            .keys()
            .map(|&k| (k, self.differential(k)))
            .collect();
        ChainComplex::new(self.factor.base(), self.ranks(), diffs)
    }

    fn is_odd_letter(&self, l: usize) -> bool {
        self.letters[l].0.rem_euclid(2) == 1
    }

    fn check_element(&self, elem: &GroupAlgebraElement) -> Result<()> {
        if elem.n() != self.n {
            return Err(Error::arg(format!(
                "element of Q[Σ{}] acting on a {}-fold tensor power",
                elem.n(),
                self.n
            )));
        }
        Ok(())
    }

    fn act_word(&self, elem: &GroupAlgebraElement, word: &[usize]) -> Vec<(usize, BigRational)> {
        elem.terms()
            .map(|(sigma, c)| {
                let (w, sign) = act_on_word(sigma, word, |l| self.is_odd_letter(l));
                (
                    self.index[&w],
                    if sign > 0 { c.clone() } else { -c.clone() },
                )
            })
            .collect()
    }

    /// The action of `elem` in each degree: σ permutes factors with the
    /// Koszul sign of the degrees it moves past each other.
    pub fn action(&self, elem: &GroupAlgebraElement) -> Result<BTreeMap<i64, RationalMatrix>> {
        self.check_element(elem)?;
        let mut out = BTreeMap::new();
        for (&k, words) in &self.words {
            let mut m = RationalMatrix::zeros(words.len(), words.len());
            for (j, w) in words.iter().enumerate() {
                for (i, c) in self.act_word(elem, w) {
                    m[(i, j)] = &m[(i, j)] + c;
                }
            }
            out.insert(k, m);
        }
        Ok(out)
    }

    /// Words of degree `k` grouped by their multiset of letters; the Σn
    /// action preserves each group.
    fn content_blocks(&self, k: i64) -> Vec<Vec<usize>> {
        let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (pos, w) in self.words(k).iter().enumerate() {
            let mut content = w.clone();
            content.sort_unstable();
            groups.entry(content).or_default().push(pos);
        }
        groups.into_values().collect()
    }

    fn image_blocks(&self, k: i64, elem: &GroupAlgebraElement) -> DegreeImage {
        let words = self.words(k);
        let mut blocks = Vec::new();
        let mut locate = vec![(0, 0); words.len()];
        let mut offset = 0;
        for (b, positions) in self.content_blocks(k).into_iter().enumerate() {
            let local: HashMap<usize, usize> =
                positions.iter().enumerate().map(|(i, &p)| (p, i)).collect();
            let size = positions.len();
            let mut e = RationalMatrix::zeros(size, size);
            for (j, &p) in positions.iter().enumerate() {
                locate[p] = (b, j);
                for (q, c) in self.act_word(elem, &words[p]) {
                    let i = local[&q];
                    e[(i, j)] = &e[(i, j)] + c;
                }
            }
            let pivots = rational_pivot_columns(&e);
            let basis = e.select_columns(&pivots);
            let left = if pivots.is_empty() {
                RationalMatrix::zeros(0, size)
            } else {
                let left = rational_left_inverse(&basis).expect("pivot columns are independent");
                assert!(
                    basis.mul(&left.mul(&e)) == e,
                    "pivot columns fail to span the image"
                );
                left
            };
            blocks.push(ImageBlock {
                positions,
                basis,
                left,
                offset,
            });
            offset += pivots.len();
        }
        DegreeImage {
            blocks,
            locate,
            rank: offset,
        }
    }

    /// The image subcomplex of `elem` (which commutes with `d`), with a free
    /// basis chosen among the columns of the action matrix in each degree.
    pub fn image(&self, elem: &GroupAlgebraElement) -> Result<ChainComplex> {
        self.check_element(elem)?;
        let images: BTreeMap<i64, DegreeImage> = self
            .words
            .keys()
            .map(|&k| (k, self.image_blocks(k, elem)))
            .collect();
        let mut ranks = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for (&k, img) in &images {
            ranks.insert(k, img.rank);
            let Some(target) = images.get(&(k - 1)) else {
                continue;
            };
            let mut d = Matrix::<Poly>::zeros(target.rank, img.rank);
            let source_words = self.words(k);
            for block in &img.blocks {
                for c in 0..block.basis.ncols() {
                    let mut image: BTreeMap<usize, Poly> = BTreeMap::new();
                    for (i, &p) in block.positions.iter().enumerate() {
                        let coeff = &block.basis[(i, c)];
                        if coeff.is_zero() {
                            continue;
                        }
                        for (w2, v) in self.d_word(&source_words[p]) {
                            let e = image.entry(self.index[&w2]).or_insert_with(Poly::zero);
                            *e = e.add_ref(&v.scale(coeff));
                        }
                    }
                    let mut by_block: BTreeMap<usize, Vec<Poly>> = BTreeMap::new();
                    for (pos, v) in image {
                        let (tb, local) = target.locate[pos];
                        let size = target.blocks[tb].positions.len();
                        by_block
                            .entry(tb)
                            .or_insert_with(|| vec![Poly::zero(); size])[local] = v;
                    }
                    for (tb, y) in by_block {
                        let t = &target.blocks[tb];
                        let coords: Vec<Poly> = (0..t.left.nrows())
                            .map(|r| {
                                y.iter().enumerate().fold(Poly::zero(), |acc, (i, v)| {
                                    acc.add_ref(&v.scale(&t.left[(r, i)]))
                                })
                            })
                            .collect();
                        for (i, yi) in y.iter().enumerate() {
                            let back =
                                coords.iter().enumerate().fold(Poly::zero(), |acc, (r, v)| {
                                    acc.add_ref(&v.scale(&t.basis[(i, r)]))
                                });
                            assert!(back == *yi, "differential leaves the image");
                        }
                        for (r, v) in coords.into_iter().enumerate() {
                            d[(t.offset + r, block.offset + c)] = v;
                        }
                    }
                }
            }
            diffs.insert(k, d);
        }
        ChainComplex::new(self.factor.base(), ranks, diffs)
    }
}

#[derive(Debug)]
struct ImageBlock {
    positions: Vec<usize>,
    basis: RationalMatrix,
    left: RationalMatrix,
    offset: usize,
}

#[derive(Debug)]
struct DegreeImage {
    blocks: Vec<ImageBlock>,
    locate: Vec<(usize, usize)>,
    rank: usize,
}

/// `S_λ(C) = c_λ(C^{⊗|λ|})` as a complex with a free basis in each degree.
pub fn apply_symmetrizer(
    c: &ChainComplex,
    lambda: &Partition,
    limits: &Limits,
) -> Result<ChainComplex> {
    if lambda.is_empty() {
        return Err(Error::arg(
            "Schur functor of the empty partition on a complex",
        ));
    }
    let elem = young_symmetrizer(lambda, limits)?;
    TensorPower::new(c, lambda.weight(), limits)?.image(&elem)
}
