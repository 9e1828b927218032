//! Characters of the symmetric group.
//!
//! Irreducible characters are computed with the Murnaghan–Nakayama rule on
//! beta-sets (abacus form): removing a rim hook of length `k` is moving one
//! bead down `k` positions onto a free slot, with sign given by the parity of
//! the beads jumped over.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{all_partitions, Partition};

/// A conjugacy class of Σn, named by its cycle lengths.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CycleType(Partition);

impl CycleType {
    pub fn new(cycles: Partition) -> Self {
        CycleType(cycles)
    }

    /// The class of the identity in Σn.
    pub fn identity(n: usize) -> Self {
        CycleType(Partition::column(n))
    }

    pub fn partition(&self) -> &Partition {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.weight()
    }
}

impl From<Partition> for CycleType {
    fn from(p: Partition) -> Self {
        CycleType(p)
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub(crate) fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Size of the conjugacy class `n! / Π k^{m_k} m_k!`.
pub fn class_size(rho: &CycleType) -> u128 {
    let mult = rho.0.multiplicities();
    let centralizer: u128 = mult
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &m)| (k as u128).pow(m as u32) * factorial(m))
        .product();
    factorial(rho.n()) / centralizer
}

type McKey = (Vec<usize>, Vec<usize>);

fn mn_cache() -> &'static Mutex<HashMap<McKey, i64>> {
    static CACHE: OnceLock<Mutex<HashMap<McKey, i64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn murnaghan_nakayama(lambda: &[usize], rho: &[usize]) -> i64 {
    let Some((&k, rest)) = rho.split_first() else {
        return if lambda.is_empty() { 1 } else { 0 };
    };
    let key = (lambda.to_vec(), rho.to_vec());
    if let Some(&v) = mn_cache().lock().unwrap().get(&key) {
        return v;
    }

    let len = lambda.len();
    // beads in decreasing order
    let beads: Vec<usize> = lambda
        .iter()
        .enumerate()
        .map(|(i, &p)| p + len - 1 - i)
        .collect();
    let mut total = 0i64;
    for (idx, &b) in beads.iter().enumerate() {
        if b < k {
            continue;
        }
        let target = b - k;
        if beads.contains(&target) {
            continue;
        }
        let jumped = beads.iter().filter(|&&c| c > target && c < b).count();
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        let mut moved = beads.clone();
        moved[idx] = target;
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<usize> = moved
            .iter()
            .enumerate()
            .map(|(i, &c)| c - (len - 1 - i))
            .filter(|&p| p > 0)
            .collect();
        total += sign * murnaghan_nakayama(&parts, rest);
    }

    mn_cache().lock().unwrap().insert(key, total);
    total
}

/// χ^λ(ρ) as an exact integer.
pub fn character_value(lambda: &Partition, rho: &CycleType) -> Result<i64> {
    if lambda.weight() != rho.n() {
        return Err(Error::arg(format!(
            "character of {lambda} evaluated on class {rho} of a different symmetric group"
        )));
    }
    Ok(murnaghan_nakayama(lambda.parts(), rho.0.parts()))
}

/// dim V_λ by the hook-length formula.
pub fn irrep_dimension(lambda: &Partition) -> Result<u128> {
    if lambda.is_empty() {
        return Err(Error::arg("irreducible dimension of the empty partition"));
    }
    let mut hooks: u128 = 1;
    for (r, &len) in lambda.parts().iter().enumerate() {
        for c in 0..len {
            hooks *= lambda.hook(r, c) as u128;
        }
    }
    let nfact = factorial(lambda.weight());
    assert_eq!(
        nfact % hooks,
        0,
        "hook product of {lambda} does not divide n!"
    );
    Ok(nfact / hooks)
}

/// Full character table of Σn. Rows are irreducibles, columns conjugacy
/// classes, both in reverse-lexicographic order.
#[derive(Debug, Clone, Serialize)]
pub struct CharacterTable {
    pub n: usize,
    pub irreps: Vec<Partition>,
    pub classes: Vec<CycleType>,
    pub values: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn new(n: usize) -> Self {
        let irreps = all_partitions(n);
        let classes: Vec<CycleType> = all_partitions(n).into_iter().map(CycleType).collect();
        let values = irreps
            .iter()
            .map(|l| {
                classes
                    .iter()
                    .map(|c| murnaghan_nakayama(l.parts(), c.0.parts()))
                    .collect()
            })
            .collect();
        CharacterTable {
            n,
            irreps,
            classes,
            values,
        }
    }

    pub fn character(&self, lambda: &Partition) -> Option<ClassFunction> {
        let row = self.irreps.iter().position(|l| l == lambda)?;
        Some(ClassFunction {
            n: self.n,
            values: self
                .classes
                .iter()
                .zip(&self.values[row])
                .map(|(c, &v)| (c.clone(), BigRational::from_integer(v.into())))
                .collect(),
        })
    }
}

/// A rational-valued function on the conjugacy classes of Σn.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFunction {
    pub n: usize,
    pub values: BTreeMap<CycleType, BigRational>,
}

impl ClassFunction {
    pub fn character(lambda: &Partition) -> Self {
        let n = lambda.weight();
        ClassFunction {
            n,
            values: all_partitions(n)
                .into_iter()
                .map(|c| {
                    let v = murnaghan_nakayama(lambda.parts(), c.parts());
                    (CycleType(c), BigRational::from_integer(v.into()))
                })
                .collect(),
        }
    }

    pub fn constant(n: usize, value: BigRational) -> Self {
        ClassFunction {
            n,
            values: all_partitions(n)
                .into_iter()
                .map(|c| (CycleType(c), value.clone()))
                .collect(),
        }
    }

    /// Pointwise product.
    pub fn product(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.check_domain(other)?;
        Ok(ClassFunction {
            n: self.n,
            values: self
                .values
                .iter()
                .map(|(c, v)| (c.clone(), v * &other.values[c]))
                .collect(),
        })
    }

    fn check_domain(&self, other: &ClassFunction) -> Result<()> {
        let complete = |f: &ClassFunction| {
            let classes = all_partitions(f.n);
            f.values.len() == classes.len()
                && classes
                    .iter()
                    .all(|c| f.values.contains_key(&CycleType(c.clone())))
        };
        if self.n != other.n || !complete(self) || !complete(other) {
            return Err(Error::arg(
                "class functions must both be defined on every class of the same Σn",
            ));
        }
        Ok(())
    }
}

/// ⟨f, g⟩ = (1/n!) Σ_ρ |ρ| f(ρ) g(ρ).
pub fn inner_product(f: &ClassFunction, g: &ClassFunction) -> Result<BigRational> {
    f.check_domain(g)?;
    let mut acc = BigRational::zero();
    for (c, fv) in &f.values {
        let size = BigRational::from_integer(BigInt::from(class_size(c)));
        acc += size * fv * &g.values[c];
    }
    Ok(acc / BigRational::from_integer(BigInt::from(factorial(f.n))))
}

/// Whether a rational is an integer, returned as i64 when it is.
pub(crate) fn as_integer(q: &BigRational) -> Option<i64> {
    if q.denom().is_one() {
        i64::try_from(q.numer()).ok()
    } else {
        None
    }
}
