//! Symbolic calculus of motive-like objects.
//!
//! A [`FormalObject`] is a multiset of [`Atom`]s. Each atom carries a parity,
//! a Tate twist, a shift and an antichain of *certificates*: partitions μ for
//! which `S_μ(atom) = 0` is known. Vanishing of `S_λ` on a direct sum is
//! derived from the atoms' certificates with the Littlewood–Richardson
//! expansion of `S_λ(X ⊕ Y)`; certificates of opaque tensor products come
//! from the Kronecker expansion of `S_λ(X ⊗ Y)`.
//!
//! A `false` from [`FormalObject::vanishes`] means "not derivable", never
//! "nonzero", except for objects built purely from lines, where the
//! certificates are complete and the verdict is exact.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use serde::Serialize;

use crate::coefficients::{kron_unchecked, lr_unchecked};
use crate::error::{Error, Limits, Result};
use crate::partition::{all_partitions, sub_diagrams, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn xor(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    fn of_shift(k: i64) -> Parity {
        if k.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Keeps only the minimal elements under diagram containment, sorted.
fn antichain(mut certs: Vec<Partition>) -> Vec<Partition> {
    certs.sort();
    certs.dedup();
    let minimal: Vec<Partition> = certs
        .iter()
        .filter(|c| !certs.iter().any(|d| d != *c && c.contains(d)))
        .cloned()
        .collect();
    minimal
}

fn line_certificate(parity: Parity) -> Partition {
    match parity {
        Parity::Even => Partition::column(2),
        Parity::Odd => Partition::row(2),
    }
}

const UNIT_NAME: &str = "1";

fn combine_names(a: &str, b: &str) -> String {
    let mut parts: Vec<&str> = a
        .split('⊗')
        .chain(b.split('⊗'))
        .filter(|s| *s != UNIT_NAME)
        .collect();
    if parts.is_empty() {
        return UNIT_NAME.to_string();
    }
    parts.sort_unstable();
    parts.join("⊗")
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Atom {
    name: String,
    parity: Parity,
    twist: i64,
    shift: i64,
    line: bool,
    certificates: Vec<Partition>,
}

impl Atom {
    /// A one-dimensional atom; it always carries the rectangle certificate
    /// of its parity (`Λ²` for even, `Sym²` for odd).
    pub fn line(name: impl Into<String>, parity: Parity, twist: i64, shift: i64) -> Atom {
        Atom {
            name: name.into(),
            parity,
            twist,
            shift,
            line: true,
            certificates: vec![line_certificate(parity)],
        }
    }

    /// The unit object `1`.
    pub fn unit() -> Atom {
        Atom::line(UNIT_NAME, Parity::Even, 0, 0)
    }

    /// `L^k`, the k-th power of the Lefschetz object.
    pub fn lefschetz(k: i64) -> Atom {
        Atom::line(UNIT_NAME, Parity::Even, k, 0)
    }

    /// An atom known only through its certificates.
    pub fn opaque(
        name: impl Into<String>,
        parity: Parity,
        certificates: Vec<Partition>,
    ) -> Result<Atom> {
        if certificates.iter().any(Partition::is_empty) {
            return Err(Error::arg(
                "the empty partition cannot be a vanishing certificate",
            ));
        }
        Ok(Atom {
            name: name.into(),
            parity,
            twist: 0,
            shift: 0,
            line: false,
            certificates: antichain(certificates),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    pub fn shift_amount(&self) -> i64 {
        self.shift
    }

    pub fn is_line(&self) -> bool {
        self.line
    }

    pub fn certificates(&self) -> &[Partition] {
        &self.certificates
    }

    pub fn is_unit(&self) -> bool {
        *self == Atom::unit()
    }

    /// Whether `S_λ(atom) = 0` follows from a certificate.
    pub fn vanishes(&self, lambda: &Partition) -> bool {
        certs_vanish(&self.certificates, lambda)
    }

    fn shifted(&self, k: i64) -> Atom {
        let mut a = self.clone();
        a.shift += k;
        if Parity::of_shift(k) == Parity::Odd {
            a.parity = a.parity.flip();
            a.certificates = antichain(a.certificates.iter().map(Partition::transpose).collect());
        }
        a
    }

    fn tensor(&self, other: &Atom, limits: &Limits) -> Atom {
        let name = combine_names(&self.name, &other.name);
        let parity = self.parity.xor(other.parity);
        let twist = self.twist + other.twist;
        let shift = self.shift + other.shift;
        match (self.line, other.line) {
            (true, true) => Atom::line(name, parity, twist, shift),
            (true, false) | (false, true) => {
                let (l, x) = if self.line {
                    (self, other)
                } else {
                    (other, self)
                };
                // S_λ(X ⊗ ℓ) = S_λ(X) ⊗ ℓ^n for an even line, S_λ'(X) ⊗ ℓ^n for an odd one
                let certificates = match l.parity {
                    Parity::Even => x.certificates.clone(),
                    Parity::Odd => {
                        antichain(x.certificates.iter().map(Partition::transpose).collect())
                    }
                };
                Atom {
                    name,
                    parity,
                    twist,
                    shift,
                    line: false,
                    certificates,
                }
            }
            (false, false) => Atom {
                name,
                parity,
                twist,
                shift,
                line: false,
                certificates: product_certificates(
                    &self.certificates,
                    &other.certificates,
                    limits.certificate_weight,
                ),
            },
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.name.as_str(), self.twist) {
            (UNIT_NAME, 0) => f.write_str("1")?,
            (UNIT_NAME, 1) => f.write_str("L")?,
            (UNIT_NAME, t) => write!(f, "L^{t}")?,
            (name, 0) => f.write_str(name)?,
            (name, t) => write!(f, "{name}({t})")?,
        }
        if self.shift != 0 {
            write!(f, "[{}]", self.shift)?;
        }
        Ok(())
    }
}

pub(crate) fn certs_vanish(certs: &[Partition], lambda: &Partition) -> bool {
    !lambda.is_empty() && certs.iter().any(|c| lambda.contains(c))
}

type ProductKey = (Vec<Partition>, Vec<Partition>, usize);

fn product_cache() -> &'static Mutex<HashMap<ProductKey, Vec<Partition>>> {
    static CACHE: OnceLock<Mutex<HashMap<ProductKey, Vec<Partition>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Minimal λ (up to `weight`) with `S_λ(X ⊗ Y) = 0` derivable from
/// `S_λ(X⊗Y) = ⊕ [V_μ⊗V_ν:V_λ] S_μ(X) ⊗ S_ν(Y)`.
pub fn product_certificates(x: &[Partition], y: &[Partition], weight: usize) -> Vec<Partition> {
    let (a, b) = if x <= y { (x, y) } else { (y, x) };
    let key = (a.to_vec(), b.to_vec(), weight);
    if let Some(v) = product_cache().lock().unwrap().get(&key) {
        return v.clone();
    }
    let mut found: Vec<Partition> = Vec::new();
    for w in 1..=weight {
        let shapes = all_partitions(w);
        for lambda in &shapes {
            if found.iter().any(|c| lambda.contains(c)) {
                continue;
            }
            let provable = shapes.iter().all(|mu| {
                certs_vanish(a, mu)
                    || shapes
                        .iter()
                        .all(|nu| certs_vanish(b, nu) || kron_unchecked(lambda, mu, nu) == 0)
            });
            if provable {
                found.push(lambda.clone());
            }
        }
    }
    let found = antichain(found);
    product_cache().lock().unwrap().insert(key, found.clone());
    found
}

/// A finite direct sum of atoms with multiplicities.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FormalObject {
    atoms: BTreeMap<Atom, usize>,
}

impl FormalObject {
    pub fn zero() -> Self {
        FormalObject::default()
    }

    pub fn atom(atom: Atom) -> Self {
        Self::atoms_with_multiplicity(atom, 1)
    }

    pub fn atoms_with_multiplicity(atom: Atom, mult: usize) -> Self {
        let mut atoms = BTreeMap::new();
        if mult > 0 {
            atoms.insert(atom, mult);
        }
        FormalObject { atoms }
    }

    pub fn unit() -> Self {
        Self::atom(Atom::unit())
    }

    /// `L^k`.
    pub fn lefschetz(k: i64) -> Self {
        Self::atom(Atom::lefschetz(k))
    }

    /// `k` even lines.
    pub fn even_lines(k: usize) -> Self {
        Self::atoms_with_multiplicity(Atom::line("e", Parity::Even, 0, 0), k)
    }

    /// `k` odd lines.
    pub fn odd_lines(k: usize) -> Self {
        Self::atoms_with_multiplicity(Atom::line("o", Parity::Odd, 0, 0), k)
    }

    /// `1 ⊕ L ⊕ … ⊕ L^n`.
    pub fn projective_space(n: usize) -> Self {
        (0..=n as i64).fold(Self::zero(), |acc, k| acc.direct_sum(&Self::lefschetz(k)))
    }

    /// Motive of a smooth projective curve of genus `g`: `1 ⊕ h1 ⊕ L` with
    /// `h1` odd of dimension `2g`, realized as `2g` odd lines.
    pub fn curve(g: usize) -> Self {
        Self::unit()
            .direct_sum(&Self::atoms_with_multiplicity(
                Atom::line("h1", Parity::Odd, 0, 0),
                2 * g,
            ))
            .direct_sum(&Self::lefschetz(1))
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> impl Iterator<Item = (&Atom, usize)> {
        self.atoms.iter().map(|(a, &m)| (a, m))
    }

    pub fn multiplicity(&self, atom: &Atom) -> usize {
        self.atoms.get(atom).copied().unwrap_or(0)
    }

    /// Total number of atoms counted with multiplicity.
    pub fn atom_count(&self) -> usize {
        self.atoms.values().sum()
    }

    pub fn is_line_object(&self) -> bool {
        self.atoms.keys().all(Atom::is_line)
    }

    /// `(#even lines, #odd lines)` for objects built purely of lines.
    pub fn line_dims(&self) -> Option<(usize, usize)> {
        if !self.is_line_object() {
            return None;
        }
        let mut dims = (0, 0);
        for (a, m) in self.atoms() {
            match a.parity {
                Parity::Even => dims.0 += m,
                Parity::Odd => dims.1 += m,
            }
        }
        Some(dims)
    }

    pub fn direct_sum(&self, other: &FormalObject) -> FormalObject {
        let mut atoms = self.atoms.clone();
        for (a, m) in &other.atoms {
            *atoms.entry(a.clone()).or_insert(0) += m;
        }
        FormalObject { atoms }
    }

    /// Distributes over ⊕; see [`Atom`] for how tags and certificates combine.
    pub fn tensor(&self, other: &FormalObject, limits: &Limits) -> FormalObject {
        let mut atoms = BTreeMap::new();
        for (a, m) in &self.atoms {
            for (b, k) in &other.atoms {
                *atoms.entry(a.tensor(b, limits)).or_insert(0) += m * k;
            }
        }
        FormalObject { atoms }
    }

    /// `A[k]`: shifts every atom, flipping parity (and transposing
    /// certificates) when `k` is odd.
    pub fn shift(&self, k: i64) -> FormalObject {
        let mut atoms = BTreeMap::new();
        for (a, m) in &self.atoms {
            *atoms.entry(a.shifted(k)).or_insert(0) += m;
        }
        FormalObject { atoms }
    }

    /// The sub-object of atoms with the given parity.
    pub fn parity_part(&self, parity: Parity) -> FormalObject {
        FormalObject {
            atoms: self
                .atoms
                .iter()
                .filter(|(a, _)| a.parity == parity)
                .map(|(a, &m)| (a.clone(), m))
                .collect(),
        }
    }

    /// Removes one copy of the unit (the reduced motive).
    pub fn split_point(&self) -> Result<FormalObject> {
        let unit = Atom::unit();
        let mut atoms = self.atoms.clone();
        match atoms.get_mut(&unit) {
            None => Err(Error::arg(format!(
                "{self} has no unit summand to split off"
            ))),
            Some(m) => {
                *m -= 1;
                if *m == 0 {
                    atoms.remove(&unit);
                }
                Ok(FormalObject { atoms })
            }
        }
    }

    /// Re-adds the unit removed by [`split_point`](Self::split_point).
    pub fn add_point(&self) -> FormalObject {
        self.direct_sum(&FormalObject::unit())
    }

    /// Whether `S_λ(self) = 0` is derivable from the certificates.
    pub fn vanishes(&self, lambda: &Partition) -> bool {
        VanishingSolver::new(self).vanishes(lambda)
    }

    pub fn finiteness_report(&self, limits: &Limits) -> FinitenessReport {
        let mut solver = VanishingSolver::new(self);
        let line_dims = self.line_dims();
        let search_bound = match line_dims {
            Some((p, q)) => (p + 1) * (q + 1) + 4,
            None => limits.witness_weight,
        };
        let capped = search_bound.min(limits.max_partition_weight);

        let mut witnesses: Vec<Partition> = Vec::new();
        for w in 1..=capped {
            for lambda in all_partitions(w) {
                if witnesses.iter().any(|c| lambda.contains(c)) {
                    continue;
                }
                if solver.vanishes(&lambda) {
                    witnesses.push(lambda);
                }
            }
        }

        let kimura = kimura_split(self, search_bound.max(1), limits);

        if witnesses.is_empty() {
            // the rectangle of a Kimura split can lie beyond the enumeration cap
            if let Some((p, q)) = kimura {
                let rect = Partition::rectangle(p + 1, q + 1);
                if solver.vanishes(&rect) {
                    witnesses.push(rect);
                }
            }
        }
        witnesses.sort_by(crate::coefficients::graded_revlex);

        let schur_finite = !witnesses.is_empty();
        let status = match (kimura.is_some(), schur_finite) {
            (true, _) => Status::KimuraFinite,
            (false, true) => Status::SchurFinite,
            (false, false) => Status::Inconclusive,
        };
        FinitenessReport {
            schur_finite,
            kimura_certified: kimura.is_some(),
            p: kimura.map(|k| k.0),
            q: kimura.map(|k| k.1),
            witnesses,
            status,
            search_bound: capped,
        }
    }
}

/// `(p, q)` with `Λ^{p+1}(X_+) = 0` and `Sym^{q+1}(X_-) = 0` provable, where
/// `X_±` collect the even and odd atoms.
fn kimura_split(obj: &FormalObject, bound: usize, limits: &Limits) -> Option<(usize, usize)> {
    let bound = bound.max(limits.witness_weight);
    let even = obj.parity_part(Parity::Even);
    let odd = obj.parity_part(Parity::Odd);
    let mut even_solver = VanishingSolver::new(&even);
    let mut odd_solver = VanishingSolver::new(&odd);
    let p = (1..=bound).find(|&k| even_solver.vanishes(&Partition::column(k)))?;
    let q = (1..=bound).find(|&k| odd_solver.vanishes(&Partition::row(k)))?;
    Some((p - 1, q - 1))
}

/// Memoized derivation of vanishing over the atoms of one object. Atoms with
/// identical certificate sets are interchangeable, so the state is a vector
/// of counts per certificate class.
struct VanishingSolver {
    classes: Vec<Vec<Partition>>,
    counts: Vec<usize>,
    memo: HashMap<(Vec<usize>, Partition), bool>,
}

impl VanishingSolver {
    fn new(obj: &FormalObject) -> Self {
        let mut by_class: BTreeMap<Vec<Partition>, usize> = BTreeMap::new();
        for (a, m) in obj.atoms() {
            *by_class.entry(a.certificates.clone()).or_insert(0) += m;
        }
        let (classes, counts) = by_class.into_iter().unzip();
        VanishingSolver {
            classes,
            counts,
            memo: HashMap::new(),
        }
    }

    fn vanishes(&mut self, lambda: &Partition) -> bool {
        let counts = self.counts.clone();
        self.rec(counts, lambda)
    }

    fn rec(&mut self, counts: Vec<usize>, lambda: &Partition) -> bool {
        if lambda.is_empty() {
            return false;
        }
        let Some(first) = counts.iter().position(|&c| c > 0) else {
            return true;
        };
        let key = (counts.clone(), lambda.clone());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let mut rest = counts.clone();
        rest[first] -= 1;
        let result = if rest.iter().all(|&c| c == 0) {
            certs_vanish(&self.classes[first], lambda)
        } else {
            // S_λ(X ⊕ Y) = ⊕ [λ:μ,ν] S_μ(X) ⊗ S_ν(Y) with X one atom
            let mut all = true;
            'outer: for mu in sub_diagrams(lambda) {
                if certs_vanish(&self.classes[first], &mu) {
                    continue;
                }
                for nu in all_partitions(lambda.weight() - mu.weight()) {
                    if lr_unchecked(lambda, &mu, &nu) > 0 && !self.rec(rest.clone(), &nu) {
                        all = false;
                        break 'outer;
                    }
                }
            }
            all
        };
        self.memo.insert(key, result);
        result
    }
}

impl fmt::Display for FormalObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return f.write_str("0");
        }
        for (i, (a, m)) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(" (+) ")?;
            }
            if *m > 1 {
                write!(f, "{m}*")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct AtomEntry<'a> {
    #[serde(flatten)]
    atom: &'a Atom,
    display: String,
    multiplicity: usize,
}

impl Serialize for FormalObject {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<AtomEntry<'_>> = self
            .atoms
            .iter()
            .map(|(atom, &multiplicity)| AtomEntry {
                atom,
                display: atom.to_string(),
                multiplicity,
            })
            .collect();
        entries.serialize(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    KimuraFinite,
    SchurFinite,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FinitenessReport {
    pub schur_finite: bool,
    pub kimura_certified: bool,
    pub p: Option<usize>,
    pub q: Option<usize>,
    /// Minimal provably vanishing partitions found within the search bound.
    pub witnesses: Vec<Partition>,
    pub status: Status,
    pub search_bound: usize,
}

/// `M(X_Y) = M(X) ⊕ ⊕_{i=1}^{r-1} M(Y) ⊗ L^i` for a blowup along a smooth
/// centre of codimension `r`.
pub fn blowup(
    x: &FormalObject,
    y: &FormalObject,
    r: usize,
    limits: &Limits,
) -> Result<FormalObject> {
    if r < 2 {
        return Err(Error::arg(format!(
            "blowup codimension must be at least 2, got {r}"
        )));
    }
    Ok((1..r as i64).fold(x.clone(), |acc, i| {
        acc.direct_sum(&y.tensor(&FormalObject::lefschetz(i), limits))
    }))
}
