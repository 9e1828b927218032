//! Littlewood–Richardson and Kronecker coefficients, and the three
//! multiplicity decompositions of Schur functors built from them.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partition::{all_partitions, sub_diagrams, Partition};
use crate::symgroup::{as_integer, inner_product, ClassFunction};

type LrKey = (Partition, Partition, Partition);

fn lr_cache() -> &'static Mutex<HashMap<LrKey, u64>> {
    static CACHE: OnceLock<Mutex<HashMap<LrKey, u64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// [λ : μ, ν], the multiplicity of V_λ in Ind(V_μ ⊗ V_ν).
///
/// Counted as the number of LR tableaux of skew shape λ/μ and content ν:
/// semistandard fillings whose reverse reading word is a lattice word.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<u64> {
    if mu.weight() + nu.weight() != lambda.weight() {
        return Err(Error::arg(format!(
            "LR coefficient [{lambda}:{mu},{nu}] needs |μ|+|ν| = |λ|"
        )));
    }
    Ok(lr_unchecked(lambda, mu, nu))
}

pub(crate) fn lr_unchecked(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if !lambda.contains(mu) || !lambda.contains(nu) {
        return 0;
    }
    if nu.is_empty() || mu.is_empty() {
        return 1;
    }
    let key = (lambda.clone(), mu.clone(), nu.clone());
    if let Some(&v) = lr_cache().lock().unwrap().get(&key) {
        return v;
    }
    let v = count_lr_tableaux(lambda, mu, nu);
    lr_cache().lock().unwrap().insert(key, v);
    v
}

fn count_lr_tableaux(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    // cells in reading order: rows top to bottom, each row right to left
    let mut cells = Vec::with_capacity(lambda.weight() - mu.weight());
    for r in 0..lambda.len() {
        for c in (mu.part(r)..lambda.part(r)).rev() {
            cells.push((r, c));
        }
    }
    let mut fill = vec![vec![0usize; lambda.part(0)]; lambda.len()];
    let mut used = vec![0usize; nu.len() + 1];

    fn rec(
        idx: usize,
        cells: &[(usize, usize)],
        lambda: &Partition,
        mu: &Partition,
        nu: &Partition,
        fill: &mut [Vec<usize>],
        used: &mut [usize],
    ) -> u64 {
        let Some(&(r, c)) = cells.get(idx) else {
            return 1;
        };
        let mut hi = nu.len();
        if c + 1 < lambda.part(r) {
            hi = hi.min(fill[r][c + 1]);
        }
        let lo = if r > 0 && c >= mu.part(r - 1) {
            fill[r - 1][c] + 1
        } else {
            1
        };
        let mut total = 0;
        for v in lo..=hi {
            if used[v] >= nu.part(v - 1) {
                continue;
            }
            if v > 1 && used[v - 1] <= used[v] {
                continue;
            }
            fill[r][c] = v;
            used[v] += 1;
            total += rec(idx + 1, cells, lambda, mu, nu, fill, used);
            used[v] -= 1;
        }
        fill[r][c] = 0;
        total
    }

    rec(0, &cells, lambda, mu, nu, &mut fill, &mut used)
}

/// [λ : μ_1, …, μ_r], by iterated two-factor expansion.
pub fn lr_multi(lambda: &Partition, factors: &[Partition]) -> Result<u64> {
    let total: usize = factors.iter().map(Partition::weight).sum();
    if total != lambda.weight() {
        return Err(Error::arg(
            "multi-factor LR coefficient with mismatched weights",
        ));
    }
    Ok(lr_multi_unchecked(lambda, factors))
}

fn lr_multi_unchecked(lambda: &Partition, factors: &[Partition]) -> u64 {
    match factors {
        [] => u64::from(lambda.is_empty()),
        [only] => u64::from(only == lambda),
        [init @ .., last] => {
            let w = lambda.weight() - last.weight();
            all_partitions(w)
                .iter()
                .filter(|kappa| lambda.contains(kappa))
                .map(|kappa| {
                    let outer = lr_unchecked(lambda, kappa, last);
                    if outer == 0 {
                        0
                    } else {
                        outer * lr_multi_unchecked(kappa, init)
                    }
                })
                .sum()
        }
    }
}

/// [V_μ ⊗ V_ν : V_λ] = ⟨χ^μ χ^ν, χ^λ⟩.
pub fn kronecker_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<u64> {
    let n = lambda.weight();
    if mu.weight() != n || nu.weight() != n {
        return Err(Error::arg(format!(
            "Kronecker coefficient of {lambda}, {mu}, {nu} needs equal weights"
        )));
    }
    Ok(kron_unchecked(lambda, mu, nu))
}

pub(crate) fn kron_unchecked(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lambda.is_empty() {
        return 1;
    }
    let prod = ClassFunction::character(mu)
        .product(&ClassFunction::character(nu))
        .expect("same-weight characters share a domain");
    let ip = inner_product(&prod, &ClassFunction::character(lambda)).expect("same domain");
    let v = as_integer(&ip).unwrap_or_else(|| panic!("non-integral Kronecker coefficient {ip}"));
    u64::try_from(v).unwrap_or_else(|_| panic!("negative Kronecker coefficient {v}"))
}

/// Which multiplicity rule produced a [`Decomposition`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// S_μ(X) ⊗ S_ν(X) = ⊕ [λ:μ,ν] S_λ(X)
    PairProduct,
    /// S_λ(X ⊕ Y) = ⊕ [λ:μ,ν] S_μ(X) ⊗ S_ν(Y)
    SchurOfSum,
    /// S_λ(X ⊗ Y) = ⊕ [V_μ⊗V_ν:V_λ] S_μ(X) ⊗ S_ν(Y)
    SchurOfTensor,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Key {
    Single(Partition),
    Pair(Partition, Partition),
}

impl Serialize for Key {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Key::Single(p) => p.serialize(s),
            Key::Pair(a, b) => (a, b).serialize(s),
        }
    }
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Key::Single(p) => write!(f, "{p}"),
            Key::Pair(a, b) => write!(f, "({a},{b})"),
        }
    }
}

/// Nonzero multiplicities of a Schur-functor decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub rule: Rule,
    pub terms: Vec<(Key, u64)>,
}

impl Decomposition {
    pub fn multiplicity(&self, key: &Key) -> u64 {
        self.terms
            .iter()
            .find(|(k, _)| k == key)
            .map_or(0, |(_, m)| *m)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

#[derive(Serialize)]
struct Term<'a> {
    key: &'a Key,
    multiplicity: u64,
}

impl Serialize for Decomposition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<Term<'_>> = self
            .terms
            .iter()
            .map(|(key, multiplicity)| Term {
                key,
                multiplicity: *multiplicity,
            })
            .collect();
        let mut st = s.serialize_struct("Decomposition", 2)?;
        st.serialize_field("rule", &self.rule)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

impl Decomposition {
    /// The `[{key, multiplicity}]` list alone.
    pub fn terms_json(&self) -> serde_json::Value {
        let terms: Vec<Term<'_>> = self
            .terms
            .iter()
            .map(|(key, multiplicity)| Term {
                key,
                multiplicity: *multiplicity,
            })
            .collect();
        serde_json::to_value(terms).expect("serializable")
    }
}

/// Heavier partitions first, then reverse-lexicographic.
pub(crate) fn graded_revlex(a: &Partition, b: &Partition) -> Ordering {
    b.weight().cmp(&a.weight()).then_with(|| b.cmp(a))
}

pub fn decompose_schur_of_sum(lambda: &Partition) -> Decomposition {
    let mut mus = sub_diagrams(lambda);
    mus.sort_by(graded_revlex);
    let mut terms = Vec::new();
    for mu in mus {
        for nu in all_partitions(lambda.weight() - mu.weight()) {
            let m = lr_unchecked(lambda, &mu, &nu);
            if m > 0 {
                terms.push((Key::Pair(mu.clone(), nu), m));
            }
        }
    }
    Decomposition {
        rule: Rule::SchurOfSum,
        terms,
    }
}

pub fn decompose_schur_of_tensor(lambda: &Partition) -> Decomposition {
    let parts = all_partitions(lambda.weight());
    let mut terms = Vec::new();
    for mu in &parts {
        for nu in &parts {
            let m = kron_unchecked(lambda, mu, nu);
            if m > 0 {
                terms.push((Key::Pair(mu.clone(), nu.clone()), m));
            }
        }
    }
    Decomposition {
        rule: Rule::SchurOfTensor,
        terms,
    }
}

pub fn decompose_schur_pair(mu: &Partition, nu: &Partition) -> Decomposition {
    let terms = all_partitions(mu.weight() + nu.weight())
        .into_iter()
        .filter_map(|lambda| {
            let m = lr_unchecked(&lambda, mu, nu);
            (m > 0).then_some((Key::Single(lambda), m))
        })
        .collect();
    Decomposition {
        rule: Rule::PairProduct,
        terms,
    }
}
