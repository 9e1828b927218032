//! Bounded chain complexes of finite free modules over Q or Q[x].
//!
//! Indexing is homological: `d_k` maps degree `k` to degree `k − 1` and is
//! stored as a `rank(k−1) × rank(k)` matrix acting on column vectors.

mod filtration;
mod snf;
mod tensor;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Limits, Result};
use crate::linalg::Matrix;
use crate::poly::Poly;

pub use filtration::{
    extension_filtration, Filtration, FiltrationLevel, ShortExactSequence, SymmetrizerRanks,
};
pub use snf::invariant_factors;
pub use tensor::{apply_symmetrizer, tensor_power, TensorPower};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BaseRing {
    #[serde(rename = "Q")]
    Rationals,
    #[serde(rename = "Q[x]")]
    Polynomials,
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BaseRing::Rationals => "Q",
            BaseRing::Polynomials => "Q[x]",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    base: BaseRing,
    ranks: BTreeMap<i64, usize>,
    diffs: BTreeMap<i64, Matrix<Poly>>,
}

impl ChainComplex {
    /// Validates shapes, base-ring membership of entries and `d∘d = 0`.
    /// Missing differentials are zero.
    pub fn new(
        base: BaseRing,
        ranks: BTreeMap<i64, usize>,
        diffs: BTreeMap<i64, Matrix<Poly>>,
    ) -> Result<Self> {
        let ranks: BTreeMap<i64, usize> = ranks.into_iter().filter(|&(_, r)| r > 0).collect();
        let rank = |k: i64| ranks.get(&k).copied().unwrap_or(0);
        let mut kept = BTreeMap::new();
        for (k, d) in diffs {
            if (d.nrows(), d.ncols()) != (rank(k - 1), rank(k)) {
                return Err(Error::arg(format!(
                    "d_{k} is {}x{} but must be {}x{}",
                    d.nrows(),
                    d.ncols(),
                    rank(k - 1),
                    rank(k)
                )));
            }
            if base == BaseRing::Rationals && !entries(&d).all(Poly::is_constant) {
                return Err(Error::arg(format!("d_{k} has non-constant entries over Q")));
            }
            if !d.is_zero() {
                kept.insert(k, d);
            }
        }
        let c = ChainComplex {
            base,
            ranks,
            diffs: kept,
        };
        for &k in c.diffs.keys() {
            if !c.differential(k - 1).mul(&c.differential(k)).is_zero() {
                return Err(Error::arg(format!("d_{} ∘ d_{k} is not zero", k - 1)));
            }
        }
        Ok(c)
    }

    pub fn zero(base: BaseRing) -> Self {
        ChainComplex {
            base,
            ranks: BTreeMap::new(),
            diffs: BTreeMap::new(),
        }
    }

    /// `R^rank` placed in a single degree.
    pub fn concentrated(base: BaseRing, degree: i64, rank: usize) -> Self {
        let mut c = Self::zero(base);
        if rank > 0 {
            c.ranks.insert(degree, rank);
        }
        c
    }

    /// `Q[x] --x--> Q[x]` in degrees 1 and 0; its homology is `Q[x]/(x)`.
    pub fn kahn() -> Self {
        let ranks = BTreeMap::from([(0, 1), (1, 1)]);
        let diffs = BTreeMap::from([(1, Matrix::from_rows(vec![vec![Poly::x()]]))]);
        Self::new(BaseRing::Polynomials, ranks, diffs).expect("valid complex")
    }

    pub fn base(&self) -> BaseRing {
        self.base
    }

    pub fn rank(&self, k: i64) -> usize {
        self.ranks.get(&k).copied().unwrap_or(0)
    }

    /// Nonzero ranks by degree.
    pub fn ranks(&self) -> &BTreeMap<i64, usize> {
        &self.ranks
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }

    /// `d_k` as a `rank(k−1) × rank(k)` matrix (possibly empty or zero).
    pub fn differential(&self, k: i64) -> Matrix<Poly> {
        self.diffs
            .get(&k)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.rank(k - 1), self.rank(k)))
    }

    /// `C[s]` with `C[s]_m = C_{m−s}` and differential `(−1)^s d`.
    pub fn shift(&self, s: i64) -> Self {
        let sign = if s.rem_euclid(2) == 0 {
            Poly::one()
        } else {
            Poly::integer(-1)
        };
        ChainComplex {
            base: self.base,
            ranks: self.ranks.iter().map(|(&k, &r)| (k + s, r)).collect(),
            diffs: self
                .diffs
                .iter()
                .map(|(&k, d)| (k + s, d.scale(&sign)))
                .collect(),
        }
    }

    /// `C ⊕ D` with the basis of `C` first in each degree.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        check_same_base(self.base, other.base)?;
        let mut ranks = self.ranks.clone();
        for (&k, &r) in &other.ranks {
            *ranks.entry(k).or_insert(0) += r;
        }
        let mut diffs = BTreeMap::new();
        for &k in ranks.keys() {
            diffs.insert(k, block_diag(&self.differential(k), &other.differential(k)));
        }
        ChainComplex::new(self.base, ranks, diffs)
    }

    pub fn homology(&self) -> HomologyDescription {
        let mut groups = BTreeMap::new();
        for (&k, &r) in &self.ranks {
            let out = invariant_factors(&self.differential(k)).len();
            let incoming = invariant_factors(&self.differential(k + 1));
            let torsion: Vec<Poly> = incoming.iter().filter(|p| !p.is_unit()).cloned().collect();
            let free_rank = r - out - incoming.len();
            if free_rank > 0 || !torsion.is_empty() {
                groups.insert(k, HomologyGroup { free_rank, torsion });
            }
        }
        HomologyDescription {
            base: self.base,
            degrees: groups,
        }
    }

    /// Reads the JSON exchange format
    /// `{"base": "Q"|"Q[x]", "degrees": {k: rank}, "differentials": {k: [[entry]]}}`
    /// where entries are polynomial strings such as `"1+2*x^3"` (integers are
    /// also accepted). The total rank is capped by `limits.max_tensor_dim`.
    pub fn from_json(text: &str, limits: &Limits) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        Self::from_value(&v, limits)
    }

    pub fn from_value(v: &Value, limits: &Limits) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| fmt_err("complex must be a JSON object"))?;
        for key in obj.keys() {
            if !matches!(key.as_str(), "base" | "degrees" | "differentials") {
                return Err(fmt_err(format!("unknown field {key:?}")));
            }
        }
        let base: BaseRing =
            serde_json::from_value(obj.get("base").cloned().unwrap_or(Value::Null))
                .map_err(|_| fmt_err("\"base\" must be \"Q\" or \"Q[x]\""))?;
        let degrees = obj
            .get("degrees")
            .and_then(Value::as_object)
            .ok_or_else(|| fmt_err("\"degrees\" must be an object"))?;
        let mut ranks = BTreeMap::new();
        let mut total = 0usize;
        for (k, r) in degrees {
            let k = parse_degree(k)?;
            let r = r
                .as_u64()
                .and_then(|r| usize::try_from(r).ok())
                .ok_or_else(|| {
                    fmt_err(format!("rank in degree {k} must be a non-negative integer"))
                })?;
            total = total.saturating_add(r);
            Limits::check("total rank of complex", total, limits.max_tensor_dim)?;
            ranks.insert(k, r);
        }
        let rank = |k: i64| ranks.get(&k).copied().unwrap_or(0);
        let mut diffs = BTreeMap::new();
        if let Some(ds) = obj.get("differentials") {
            let ds = ds
                .as_object()
                .ok_or_else(|| fmt_err("\"differentials\" must be an object"))?;
            for (k, m) in ds {
                let k = parse_degree(k)?;
                diffs.insert(k, parse_matrix(k, m, rank(k - 1), rank(k))?);
            }
        }
        ChainComplex::new(base, ranks, diffs)
    }

    pub fn to_value(&self) -> Value {
        let degrees: Map<String, Value> = self
            .ranks
            .iter()
            .map(|(k, r)| (k.to_string(), Value::from(*r)))
            .collect();
        let differentials: Map<String, Value> = self
            .diffs
            .iter()
            .filter(|(_, d)| !d.is_zero())
            .map(|(k, d)| (k.to_string(), matrix_value(d)))
            .collect();
        serde_json::json!({
            "base": self.base,
            "degrees": degrees,
            "differentials": differentials,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("JSON values serialize")
    }
}

impl fmt::Display for ChainComplex {
    /// One line per degree, highest first: `C_1 = R^1 --[[x]]-->`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 over {}", self.base);
        }
        for (i, (&k, &r)) in self.ranks.iter().rev().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "C_{k} = {}^{r}", self.base)?;
            let d = self.differential(k);
            if d.nrows() > 0 && !d.is_zero() {
                write!(f, "  d_{k} = {}", matrix_value(&d))?;
            }
        }
        Ok(())
    }
}

fn entries(m: &Matrix<Poly>) -> impl Iterator<Item = &Poly> {
    (0..m.nrows()).flat_map(move |i| m.row(i).iter())
}

const MAX_DEGREE: i64 = 1 << 20;

fn fmt_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

fn parse_degree(k: &str) -> Result<i64> {
    k.parse::<i64>()
        .ok()
        .filter(|k| k.abs() <= MAX_DEGREE)
        .ok_or_else(|| {
            fmt_err(format!(
                "degree key {k:?} is not an integer in ±{MAX_DEGREE}"
            ))
        })
}

fn parse_entry(v: &Value) -> Option<Poly> {
    match v {
        Value::String(s) => s.parse().ok(),
        Value::Number(n) => n.as_i64().map(Poly::integer),
        _ => None,
    }
}

pub(crate) fn parse_matrix(k: i64, m: &Value, rows: usize, cols: usize) -> Result<Matrix<Poly>> {
    let arr = m
        .as_array()
        .ok_or_else(|| fmt_err(format!("matrix in degree {k} must be an array of rows")))?;
    if arr.len() != rows {
        return Err(fmt_err(format!(
            "matrix in degree {k} needs {rows} rows, got {}",
            arr.len()
        )));
    }
    let mut out = Matrix::zeros(rows, cols);
    for (i, row) in arr.iter().enumerate() {
        let row = row.as_array().filter(|r| r.len() == cols).ok_or_else(|| {
            fmt_err(format!(
                "row {i} of matrix in degree {k} needs {cols} entries"
            ))
        })?;
        for (j, e) in row.iter().enumerate() {
            out[(i, j)] = parse_entry(e).ok_or_else(|| {
                fmt_err(format!(
                    "entry ({i},{j}) of matrix in degree {k} is not a polynomial"
                ))
            })?;
        }
    }
    Ok(out)
}

pub(crate) fn matrix_value(m: &Matrix<Poly>) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| {
                Value::Array(
                    m.row(i)
                        .iter()
                        .map(|p| Value::String(p.to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn check_same_base(a: BaseRing, b: BaseRing) -> Result<()> {
    if a != b {
        return Err(Error::arg(format!(
            "complexes over different bases {a} and {b}"
        )));
    }
    Ok(())
}

fn block_diag(a: &Matrix<Poly>, b: &Matrix<Poly>) -> Matrix<Poly> {
    let mut m = Matrix::zeros(a.nrows() + b.nrows(), a.ncols() + b.ncols());
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            m[(i, j)] = a[(i, j)].clone();
        }
    }
    for i in 0..b.nrows() {
        for j in 0..b.ncols() {
            m[(a.nrows() + i, a.ncols() + j)] = b[(i, j)].clone();
        }
    }
    m
}

/// A degree-0 chain map `f: source → target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    maps: BTreeMap<i64, Matrix<Poly>>,
}

impl ChainMap {
    /// Checks shapes and `d f = f d` in every degree.
    pub fn new(
        source: ChainComplex,
        target: ChainComplex,
        maps: BTreeMap<i64, Matrix<Poly>>,
    ) -> Result<Self> {
        check_same_base(source.base, target.base)?;
        for (&k, m) in &maps {
            if (m.nrows(), m.ncols()) != (target.rank(k), source.rank(k)) {
                return Err(Error::arg(format!(
                    "f_{k} is {}x{} but must be {}x{}",
                    m.nrows(),
                    m.ncols(),
                    target.rank(k),
                    source.rank(k)
                )));
            }
            if source.base == BaseRing::Rationals && !entries(m).all(Poly::is_constant) {
                return Err(Error::arg(format!("f_{k} has non-constant entries over Q")));
            }
        }
        let f = ChainMap {
            source,
            target,
            maps,
        };
        let degrees: Vec<i64> = f
            .source
            .ranks
            .keys()
            .chain(f.target.ranks.keys())
            .copied()
            .collect();
        for k in degrees {
            let lhs = f.target.differential(k).mul(&f.component(k));
            let rhs = f.component(k - 1).mul(&f.source.differential(k));
            if lhs != rhs {
                return Err(Error::arg(format!(
                    "not a chain map: d f ≠ f d in degree {k}"
                )));
            }
        }
        Ok(f)
    }

    /// Reads components `{k: matrix}` in the complex file's matrix format.
    pub fn from_value(source: ChainComplex, target: ChainComplex, v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| fmt_err("chain map must be an object of matrices"))?;
        let mut maps = BTreeMap::new();
        for (k, m) in obj {
            let k = parse_degree(k)?;
            maps.insert(k, parse_matrix(k, m, target.rank(k), source.rank(k))?);
        }
        ChainMap::new(source, target, maps)
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let maps = c
            .ranks
            .iter()
            .map(|(&k, &r)| (k, Matrix::identity(r)))
            .collect();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            maps,
        }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Result<Self> {
        ChainMap::new(source.clone(), target.clone(), BTreeMap::new())
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn component(&self, k: i64) -> Matrix<Poly> {
        self.maps
            .get(&k)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.target.rank(k), self.source.rank(k)))
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &ChainMap) -> Result<Self> {
        if g.target != self.source {
            return Err(Error::arg(
                "composition of chain maps with mismatched (co)domains",
            ));
        }
        let maps = g
            .source
            .ranks
            .keys()
            .map(|&k| (k, self.component(k).mul(&g.component(k))))
            .collect();
        ChainMap::new(g.source.clone(), self.target.clone(), maps)
    }

    pub fn is_zero(&self) -> bool {
        self.maps.values().all(Matrix::is_zero)
    }
}

/// `cone(f)` with its degreewise-split sequence `Q → cone(f) → P[1]`.
#[derive(Debug, Clone)]
pub struct Cone {
    pub complex: ChainComplex,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
}

/// For `f: P → Q`, `cone_k = Q_k ⊕ P_{k−1}` with `d(q, p) = (d q + f p, −d p)`.
pub fn cone(f: &ChainMap) -> Result<Cone> {
    let p = &f.source;
    let q = &f.target;
    let p1 = p.shift(1);
    let mut ranks = q.ranks.clone();
    for (&k, &r) in &p1.ranks {
        *ranks.entry(k).or_insert(0) += r;
    }
    let mut diffs = BTreeMap::new();
    for &k in ranks.keys() {
        let dq = q.differential(k);
        let fk = f.component(k - 1);
        let dp = p1.differential(k);
        let (qa, qb) = (q.rank(k - 1), q.rank(k));
        let mut m = Matrix::zeros(qa + p1.rank(k - 1), qb + p1.rank(k));
        for i in 0..qa {
            for j in 0..qb {
                m[(i, j)] = dq[(i, j)].clone();
            }
            for j in 0..fk.ncols() {
                m[(i, qb + j)] = fk[(i, j)].clone();
            }
        }
        for i in 0..dp.nrows() {
            for j in 0..dp.ncols() {
                m[(qa + i, qb + j)] = dp[(i, j)].clone();
            }
        }
        diffs.insert(k, m);
    }
    let complex = ChainComplex::new(q.base, ranks, diffs)?;
    let mut incl = BTreeMap::new();
    let mut proj = BTreeMap::new();
    for &k in complex.ranks.keys() {
        let (qr, pr) = (q.rank(k), p1.rank(k));
        let mut i_k = Matrix::zeros(qr + pr, qr);
        let mut p_k = Matrix::zeros(pr, qr + pr);
        for i in 0..qr {
            i_k[(i, i)] = Poly::one();
        }
        for i in 0..pr {
            p_k[(i, qr + i)] = Poly::one();
        }
        incl.insert(k, i_k);
        proj.insert(k, p_k);
    }
    Ok(Cone {
        inclusion: ChainMap::new(q.clone(), complex.clone(), incl)?,
        projection: ChainMap::new(complex.clone(), p1, proj)?,
        complex,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub free_rank: usize,
    /// Monic non-unit invariant factors `d_1 | d_2 | …`.
    pub torsion: Vec<Poly>,
}

/// Nonzero homology groups by degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyDescription {
    pub base: BaseRing,
    pub degrees: BTreeMap<i64, HomologyGroup>,
}

impl HomologyDescription {
    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }
}

impl fmt::Display for HomologyDescription {
    /// e.g. `H_0 = Q[x]/(x)`, one line per nonzero degree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("acyclic");
        }
        for (i, (k, g)) in self.degrees.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let mut parts = Vec::new();
            if g.free_rank > 0 {
                parts.push(if g.free_rank == 1 {
                    self.base.to_string()
                } else {
                    format!("{}^{}", self.base, g.free_rank)
                });
            }
            parts.extend(g.torsion.iter().map(|t| format!("{}/({t})", self.base)));
            write!(f, "H_{k} = {}", parts.join(" ⊕ "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q_matrix(rows: &[&[i64]]) -> Matrix<Poly> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Poly::integer(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn kahn_homology() {
        let h = ChainComplex::kahn().homology();
        assert_eq!(h.to_string(), "H_0 = Q[x]/(x)");
        assert_eq!(h.degrees[&0].free_rank, 0);
    }

    #[test]
    fn identity_complex_is_exact() {
        let ranks = BTreeMap::from([(0, 1), (1, 1)]);
        let c = ChainComplex::new(
            BaseRing::Rationals,
            ranks,
            BTreeMap::from([(1, q_matrix(&[&[1]]))]),
        )
        .unwrap();
        assert!(c.homology().is_zero());
        let free = ChainComplex::concentrated(BaseRing::Rationals, 2, 3).homology();
        assert_eq!(free.to_string(), "H_2 = Q^3");
    }

    #[test]
    fn rejects_bad_complexes() {
        let ranks = BTreeMap::from([(0, 1), (1, 1), (2, 1)]);
        let diffs = BTreeMap::from([(1, q_matrix(&[&[1]])), (2, q_matrix(&[&[1]]))]);
        assert!(ChainComplex::new(BaseRing::Rationals, ranks.clone(), diffs).is_err());
        let diffs = BTreeMap::from([(1, Matrix::from_rows(vec![vec![Poly::x()]]))]);
        assert!(ChainComplex::new(BaseRing::Rationals, ranks.clone(), diffs).is_err());
        let diffs = BTreeMap::from([(1, q_matrix(&[&[1, 2]]))]);
        assert!(ChainComplex::new(BaseRing::Rationals, ranks, diffs).is_err());
    }

    #[test]
    fn cones() {
        let c = ChainComplex::kahn();
        assert!(cone(&ChainMap::identity(&c))
            .unwrap()
            .complex
            .homology()
            .is_zero());

        let r = ChainComplex::concentrated(BaseRing::Polynomials, 0, 1);
        let x = ChainMap::new(
            r.clone(),
            r.clone(),
            BTreeMap::from([(0, Matrix::from_rows(vec![vec![Poly::x()]]))]),
        )
        .unwrap();
        assert_eq!(cone(&x).unwrap().complex, ChainComplex::kahn());

        let z = cone(&ChainMap::zero(&c, &c).unwrap()).unwrap().complex;
        assert_eq!(z, c.direct_sum(&c.shift(1)).unwrap());
    }

    #[test]
    fn chain_map_check() {
        let c = ChainComplex::kahn();
        let bad = BTreeMap::from([(0, Matrix::from_rows(vec![vec![Poly::one()]]))]);
        assert!(ChainMap::new(c.clone(), c, bad).is_err());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"base":"Q[x]","degrees":{"1":1,"0":1},"differentials":{"1":[["x"]]}}"#;
        let c = ChainComplex::from_json(text, &Limits::default()).unwrap();
        assert_eq!(c, ChainComplex::kahn());
        assert_eq!(
            ChainComplex::from_json(&c.to_json(), &Limits::default()).unwrap(),
            c
        );
        for bad in [
            r#"{"base":"Z","degrees":{}}"#,
            r#"{"base":"Q","degrees":{"a":1}}"#,
            r#"{"base":"Q","degrees":{"0":1},"differentials":{"0":[["1"]]}}"#,
            r#"{"base":"Q","degrees":{"0":9999999}}"#,
            r#"{"base":"Q","degrees":{},"extra":1}"#,
        ] {
            assert!(
                ChainComplex::from_json(bad, &Limits::default()).is_err(),
                "{bad}"
            );
        }
    }
}
