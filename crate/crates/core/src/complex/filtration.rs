//! The filtration of `X^{⊗n}` induced by a short exact sequence
//! `0 → P → X → Q → 0`.

use std::collections::BTreeMap;

use num_integer::binomial;
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::Value;

use super::tensor::TensorPower;
use super::{invariant_factors, ChainComplex, ChainMap};
use crate::error::{Error, Limits, Result};
use crate::group_algebra::{GroupAlgebraElement, Permutation};
use crate::linalg::{bareiss, Matrix, Ring};
use crate::poly::Poly;

/// A degreewise-split short exact sequence of complexes.
#[derive(Debug, Clone)]
pub struct ShortExactSequence {
    inclusion: ChainMap,
    projection: ChainMap,
}

impl ShortExactSequence {
    /// Checks `π ∘ ι = 0` and that in every degree `ι` is a split
    /// injection, `π` a split surjection and the ranks add up.
    pub fn new(inclusion: ChainMap, projection: ChainMap) -> Result<Self> {
        if inclusion.target() != projection.source() {
            return Err(Error::arg("inclusion target and projection source differ"));
        }
        if !projection.compose(&inclusion)?.is_zero() {
            return Err(Error::arg("projection ∘ inclusion is not zero"));
        }
        let (p, x, q) = (inclusion.source(), inclusion.target(), projection.target());
        for (&k, &r) in x.ranks() {
            if p.rank(k) + q.rank(k) != r {
                return Err(Error::arg(format!("ranks do not add up in degree {k}")));
            }
            let split = |m: &Matrix<Poly>, want: usize| {
                let f = invariant_factors(m);
                f.len() == want && f.iter().all(Poly::is_unit)
            };
            if !split(&inclusion.component(k), p.rank(k)) {
                return Err(Error::arg(format!(
                    "inclusion is not a split injection in degree {k}"
                )));
            }
            if !split(&projection.component(k), q.rank(k)) {
                return Err(Error::arg(format!(
                    "projection is not a split surjection in degree {k}"
                )));
            }
        }
        for k in p.ranks().keys().chain(q.ranks().keys()) {
            if x.rank(*k) == 0 {
                return Err(Error::arg(format!("ranks do not add up in degree {k}")));
            }
        }
        Ok(ShortExactSequence {
            inclusion,
            projection,
        })
    }

    /// Reads `{"sub", "total", "quotient"}` complexes and `{"inclusion",
    /// "projection"}` maps, each map given as `{k: matrix}`.
    pub fn from_json(text: &str, limits: &Limits) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Format("extension must be a JSON object".into()))?;
        let field = |name: &str| {
            obj.get(name)
                .ok_or_else(|| Error::Format(format!("missing field {name:?}")))
        };
        let p = ChainComplex::from_value(field("sub")?, limits)?;
        let x = ChainComplex::from_value(field("total")?, limits)?;
        let q = ChainComplex::from_value(field("quotient")?, limits)?;
        let incl = ChainMap::from_value(p, x.clone(), field("inclusion")?)?;
        let proj = ChainMap::from_value(x, q, field("projection")?)?;
        Self::new(incl, proj)
    }

    /// `0 → P → P ⊕ Q → Q → 0` with the canonical maps.
    pub fn split(p: &ChainComplex, q: &ChainComplex) -> Result<Self> {
        let x = p.direct_sum(q)?;
        let mut incl = BTreeMap::new();
        let mut proj = BTreeMap::new();
        for &k in x.ranks().keys() {
            let (pr, qr) = (p.rank(k), q.rank(k));
            let mut i_k = Matrix::zeros(pr + qr, pr);
            let mut p_k = Matrix::zeros(qr, pr + qr);
            for i in 0..pr {
                i_k[(i, i)] = Poly::one();
            }
            for i in 0..qr {
                p_k[(i, pr + i)] = Poly::one();
            }
            incl.insert(k, i_k);
            proj.insert(k, p_k);
        }
        Self::new(
            ChainMap::new(p.clone(), x.clone(), incl)?,
            ChainMap::new(x, q.clone(), proj)?,
        )
    }

    pub fn sub(&self) -> &ChainComplex {
        self.inclusion.source()
    }

    pub fn total(&self) -> &ChainComplex {
        self.inclusion.target()
    }

    pub fn quotient(&self) -> &ChainComplex {
        self.projection.target()
    }

    pub fn inclusion(&self) -> &ChainMap {
        &self.inclusion
    }

    pub fn projection(&self) -> &ChainMap {
        &self.projection
    }
}

/// `F_0 ⊆ … ⊆ F_n = X^{⊗n}` where `F_i` is spanned by the tensors with at
/// least `n − i` factors in `P`. Each level is kept as a basis over the
/// fraction field, degree by degree, in the coordinates of `X^{⊗n}`.
#[derive(Debug, Clone)]
pub struct Filtration {
    power: TensorPower,
    levels: Vec<BTreeMap<i64, Matrix<Poly>>>,
    sub_ranks: BTreeMap<i64, usize>,
    quotient_ranks: BTreeMap<i64, usize>,
}

/// Ranks of `c(F_i)` and of `c` on `F_i / F_{i−1}` for a group-algebra
/// element `c`, per degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetrizerRanks {
    pub level: BTreeMap<i64, usize>,
    pub graded: BTreeMap<i64, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiltrationLevel {
    pub i: usize,
    pub ranks: BTreeMap<i64, usize>,
    pub graded_ranks: BTreeMap<i64, usize>,
    /// Ranks of `T_{n−i,i}(P, Q)`: `C(n,i)` copies of `P^{⊗(n−i)} ⊗ Q^{⊗i}`.
    pub expected_graded_ranks: BTreeMap<i64, usize>,
}

pub fn extension_filtration(
    ses: &ShortExactSequence,
    n: usize,
    limits: &Limits,
) -> Result<Filtration> {
    let power = TensorPower::new(ses.total(), n, limits)?;
    let incl = ses.inclusion();
    let mut levels = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut columns: BTreeMap<i64, Vec<Vec<Poly>>> = BTreeMap::new();
        for subset in subsets(n, n - i) {
            // options per position: sparse vectors over the letters of X
            let options: Vec<Vec<SparseLetter>> = (0..n)
                .map(|pos| {
                    if subset.contains(&pos) {
                        sub_letters(ses.sub(), incl, &power)
                    } else {
                        (0..ses.total().total_rank())
                            .map(|l| (power.letter(l).0, vec![(l, Poly::one())]))
                            .collect()
                    }
                })
                .collect();
            for choice in product(&options) {
                let deg: i64 = choice.iter().map(|o| o.0).sum();
                let mut terms: Vec<(Vec<usize>, Poly)> = vec![(Vec::new(), Poly::one())];
                for (_, vec) in &choice {
                    terms = terms
                        .into_iter()
                        .flat_map(|(w, c)| {
                            vec.iter().map(move |(l, v)| {
                                let mut w = w.clone();
                                w.push(*l);
                                (w, c.mul_ref(v))
                            })
                        })
                        .collect();
                }
                let mut col = vec![Poly::zero(); power.rank(deg)];
                for (w, c) in terms {
                    let p = power.position(&w);
                    col[p] = col[p].add_ref(&c);
                }
                columns.entry(deg).or_default().push(col);
            }
        }
        let level: BTreeMap<i64, Matrix<Poly>> = power
            .ranks()
            .keys()
            .map(|&k| {
                let cols = columns.remove(&k).unwrap_or_default();
                let m = Matrix::from_columns(power.rank(k), &cols);
                let pivots = bareiss(&m).1;
                (k, m.select_columns(&pivots))
            })
            .collect();
        levels.push(level);
    }
    let f = Filtration {
        power,
        levels,
        sub_ranks: ses.sub().ranks().clone(),
        quotient_ranks: ses.quotient().ranks().clone(),
    };
    f.verify()?;
    Ok(f)
}

/// A degree together with a sparse combination of letters of X.
type SparseLetter = (i64, Vec<(usize, Poly)>);

fn sub_letters(p: &ChainComplex, incl: &ChainMap, power: &TensorPower) -> Vec<SparseLetter> {
    let mut out = Vec::new();
    for (&k, &r) in p.ranks() {
        let m = incl.component(k);
        for j in 0..r {
            let v: Vec<(usize, Poly)> = (0..m.nrows())
                .filter(|&i| !m[(i, j)].is_zero())
                .map(|i| (power.letter_index(k, i), m[(i, j)].clone()))
                .collect();
            out.push((k, v));
        }
    }
    out
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == size)
        .map(|m| (0..n).filter(|&i| m & (1 << i) != 0).collect())
        .collect()
}

fn product<T: Clone>(options: &[Vec<T>]) -> Vec<Vec<T>> {
    options.iter().fold(vec![Vec::new()], |acc, opts| {
        acc.into_iter()
            .flat_map(|prefix| {
                opts.iter().map(move |o| {
                    let mut p = prefix.clone();
                    p.push(o.clone());
                    p
                })
            })
            .collect()
    })
}

fn rank_of(m: &Matrix<Poly>) -> usize {
    bareiss(m).0
}

fn convolve(a: &BTreeMap<i64, usize>, b: &BTreeMap<i64, usize>) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for (&i, &x) in a {
        for (&j, &y) in b {
            *out.entry(i + j).or_insert(0) += x * y;
        }
    }
    out
}

fn power_ranks(r: &BTreeMap<i64, usize>, e: usize) -> BTreeMap<i64, usize> {
    (0..e).fold(BTreeMap::from([(0, 1)]), |acc, _| convolve(&acc, r))
}

impl Filtration {
    pub fn n(&self) -> usize {
        self.power.n()
    }

    pub fn tensor_power(&self) -> &TensorPower {
        &self.power
    }

    /// Basis of `F_i` in degree `k`, as columns in the word basis of `X^{⊗n}`.
    pub fn level(&self, i: usize, k: i64) -> Matrix<Poly> {
        self.levels[i]
            .get(&k)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.power.rank(k), 0))
    }

    pub fn level_ranks(&self, i: usize) -> BTreeMap<i64, usize> {
        self.levels[i]
            .iter()
            .map(|(&k, m)| (k, m.ncols()))
            .filter(|&(_, r)| r > 0)
            .collect()
    }

    pub fn graded_ranks(&self, i: usize) -> BTreeMap<i64, usize> {
        let mut out = self.level_ranks(i);
        if i > 0 {
            for (k, r) in self.level_ranks(i - 1) {
                *out.get_mut(&k).expect("levels are nested") -= r;
            }
        }
        out.retain(|_, r| *r > 0);
        out
    }

    pub fn expected_graded_ranks(&self, i: usize) -> BTreeMap<i64, usize> {
        let n = self.n();
        let c = binomial(n, i);
        let mut t = convolve(
            &power_ranks(&self.sub_ranks, n - i),
            &power_ranks(&self.quotient_ranks, i),
        );
        t.values_mut().for_each(|r| *r *= c);
        t.retain(|_, r| *r > 0);
        t
    }

    pub fn summary(&self) -> Vec<FiltrationLevel> {
        (0..=self.n())
            .map(|i| FiltrationLevel {
                i,
                ranks: self.level_ranks(i),
                graded_ranks: self.graded_ranks(i),
                expected_graded_ranks: self.expected_graded_ranks(i),
            })
            .collect()
    }

    fn verify(&self) -> Result<()> {
        let n = self.n();
        let mut actions = Vec::new();
        for j in 0..n.saturating_sub(1) {
            let t =
                GroupAlgebraElement::from_permutation(Permutation::transposition(n, j + 1, j + 2)?);
            actions.push(self.power.action(&t)?);
        }
        for i in 0..=n {
            for (&k, f) in &self.levels[i] {
                let r = f.ncols();
                if i > 0 && self.levels[i - 1][&k].ncols() > r {
                    return Err(Error::arg("filtration levels are not nested"));
                }
                for act in &actions {
                    let moved = act[&k].map(|q| Poly::constant(q.clone())).mul(f);
                    if rank_of(&f.hstack(&moved)) != r {
                        return Err(Error::arg(format!(
                            "F_{i} is not Σ{n}-stable in degree {k}"
                        )));
                    }
                }
                if let Some(below) = self.levels[i].get(&(k - 1)) {
                    let df = self.power.differential(k).mul(f);
                    if rank_of(&below.hstack(&df)) != below.ncols() {
                        return Err(Error::arg(format!(
                            "F_{i} is not a subcomplex in degree {k}"
                        )));
                    }
                }
            }
        }
        if self.level_ranks(n) != self.power.ranks() {
            return Err(Error::arg(
                "top filtration level is not the whole tensor power",
            ));
        }
        Ok(())
    }

    /// For `c ∈ Q[Σn]`: `rank c(F_i)` and `rank c(F_i/F_{i−1}) =
    /// rank(c F_i + F_{i−1}) − rank F_{i−1}`, per degree.
    pub fn symmetrizer_ranks(&self, c: &GroupAlgebraElement) -> Result<Vec<SymmetrizerRanks>> {
        let action = self.power.action(c)?;
        let mut out = Vec::new();
        for i in 0..=self.n() {
            let mut level = BTreeMap::new();
            let mut graded = BTreeMap::new();
            for &k in self.power.ranks().keys() {
                let e = action[&k].map(|q| Poly::constant(q.clone()));
                let image = e.mul(&self.level(i, k));
                let r = rank_of(&image);
                let g = if i == 0 {
                    r
                } else {
                    let prev = self.level(i - 1, k);
                    rank_of(&prev.hstack(&image)) - prev.ncols()
                };
                if r > 0 {
                    level.insert(k, r);
                }
                if g > 0 {
                    graded.insert(k, g);
                }
            }
            out.push(SymmetrizerRanks { level, graded });
        }
        Ok(out)
    }
}
