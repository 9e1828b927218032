//! Oracles shared by the integration tests. Everything here is computed
//! from first principles and does not call into the code under test beyond
//! basic data types.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use schurfin::dsl::{Expr, Preset};
use schurfin::error::Limits;
use schurfin::group_algebra::{young_symmetrizer, Permutation};
use schurfin::motive::Parity;
use schurfin::partition::Partition;
use schurfin::super_linear::{GradedDim, SuperVectorSpace};

pub fn part(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).expect("valid partition")
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// All partitions of n, largest first, by plain recursion.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(part(prefix));
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            go(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Euler's pentagonal recurrence for the partition function.
pub fn partition_count(n: usize) -> u64 {
    let mut p = vec![0i64; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut total = 0i64;
        for k in 1.. {
            let k = k as i64;
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let g1 = (k * (3 * k - 1) / 2) as usize;
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g1 > m {
                break;
            }
            total += sign * p[m - g1];
            if g2 <= m {
                total += sign * p[m - g2];
            }
        }
        p[m] = total;
    }
    p[n] as u64
}

/// Number of semistandard tableaux of shape λ and content μ, by filling
/// the diagram row by row.
pub fn kostka(lambda: &Partition, mu: &Partition) -> u64 {
    let shape = lambda.parts().to_vec();
    let mut grid: Vec<Vec<usize>> = shape.iter().map(|&r| vec![0; r]).collect();
    let mut left = mu.parts().to_vec();
    fn fill(
        shape: &[usize],
        grid: &mut Vec<Vec<usize>>,
        left: &mut Vec<usize>,
        r: usize,
        c: usize,
    ) -> u64 {
        if r == shape.len() {
            return 1;
        }
        if c == shape[r] {
            return fill(shape, grid, left, r + 1, 0);
        }
        let mut total = 0;
        for v in 1..=left.len() {
            if left[v - 1] == 0 {
                continue;
            }
            if c > 0 && grid[r][c - 1] > v {
                continue;
            }
            if r > 0 && grid[r - 1][c] >= v {
                continue;
            }
            grid[r][c] = v;
            left[v - 1] -= 1;
            total += fill(shape, grid, left, r, c + 1);
            left[v - 1] += 1;
            grid[r][c] = 0;
        }
        total
    }
    if lambda.weight() != mu.weight() {
        return 0;
    }
    fill(&shape, &mut grid, &mut left, 0, 0)
}

/// Character of the permutation module on tabloids of shape μ at cycle
/// type ρ: the number of ways to place each cycle inside a single row.
pub fn permutation_module_character(mu: &Partition, rho: &Partition) -> u64 {
    fn go(cycles: &[usize], rows: &mut Vec<usize>) -> u64 {
        let Some((&c, rest)) = cycles.split_first() else {
            return rows.iter().all(|&r| r == 0) as u64;
        };
        let mut total = 0;
        for i in 0..rows.len() {
            if rows[i] >= c {
                rows[i] -= c;
                total += go(rest, rows);
                rows[i] += c;
            }
        }
        total
    }
    go(rho.parts(), &mut mu.parts().to_vec())
}

/// The action of σ on the standard representation of Σ3, in the basis
/// e1 - e2, e2 - e3 of the sum-zero plane.
pub fn standard_rep_s3(sigma: &Permutation) -> [[i64; 2]; 2] {
    let basis = [[1i64, -1, 0], [0, 1, -1]];
    let mut m = [[0i64; 2]; 2];
    for (j, v) in basis.iter().enumerate() {
        let mut w = [0i64; 3];
        for i in 0..3 {
            w[sigma.apply(i)] += v[i];
        }
        m[0][j] = w[0];
        m[1][j] = -w[2];
    }
    m
}

/// Graded rank of `c_λ` on `(p|q)^{⊗n}` as its trace. A cycle of length
/// ℓ fixes the words constant along it; an odd letter contributes the
/// Koszul sign of the cycle, (-1)^{ℓ-1}, and ℓ odd letters.
pub fn trace_schur_dimension(p: usize, q: usize, lambda: &Partition) -> GradedDim {
    let c = young_symmetrizer(lambda, &Limits::default()).expect("symmetrizer");
    let mut even = BigRational::zero();
    let mut odd = BigRational::zero();
    for (sigma, coeff) in c.terms() {
        let (mut e, mut o) = (BigRational::one(), BigRational::zero());
        for cycle in sigma.cycles() {
            let l = cycle.len();
            let sign = if l % 2 == 1 { 1 } else { -1 };
            let (fe, fo) = if l % 2 == 0 {
                (rat(p as i64 + sign * q as i64), rat(0))
            } else {
                (rat(p as i64), rat(sign * q as i64))
            };
            let ne = &e * &fe + &o * &fo;
            let no = &e * &fo + &o * &fe;
            e = ne;
            o = no;
        }
        even += coeff * e;
        odd += coeff * o;
    }
    let to_usize = |r: BigRational| -> usize {
        assert!(r.is_integer(), "trace is not an integer");
        r.to_integer().try_into().expect("trace fits")
    };
    GradedDim {
        even: to_usize(even),
        odd: to_usize(odd),
    }
}

/// Graded dimension of `S_λ(V)` including the empty partition.
pub fn graded(space: &SuperVectorSpace, lambda: &Partition) -> GradedDim {
    if lambda.is_empty() {
        return GradedDim { even: 1, odd: 0 };
    }
    schurfin::super_linear::schur_dimension(space, lambda, &Limits::default()).expect("dimension")
}

pub fn graded_product(a: GradedDim, b: GradedDim) -> GradedDim {
    GradedDim {
        even: a.even * b.even + a.odd * b.odd,
        odd: a.even * b.odd + a.odd * b.even,
    }
}

pub fn rectangle_contains(p: usize, q: usize, lambda: &Partition) -> bool {
    lambda.contains(&Partition::rectangle(p + 1, q + 1))
}

const NAMES: &[&str] = &["X", "Y", "h1", "M_2", "t'", "_a", "xy", "Sx", "Lq", "odd_1"];

fn random_partition<R: Rng>(rng: &mut R, max_weight: usize) -> Partition {
    let n = rng.gen_range(1..=max_weight);
    let all = partitions(n);
    all[rng.gen_range(0..all.len())].clone()
}

/// A random expression tree of depth at most `depth`.
pub fn random_expr<R: Rng>(rng: &mut R, depth: usize) -> Expr {
    let leaf = depth <= 1 || rng.gen_bool(0.25);
    if leaf {
        return match rng.gen_range(0..6) {
            0 => Expr::Unit,
            1 => Expr::Lefschetz,
            2 => Expr::EvenLines(rng.gen_range(0..5)),
            3 => Expr::OddLines(rng.gen_range(0..5)),
            4 => {
                if rng.gen_bool(0.5) {
                    Expr::Preset(Preset::ProjectiveSpace(rng.gen_range(0..4)))
                } else {
                    Expr::Preset(Preset::Curve(rng.gen_range(0..4)))
                }
            }
            _ => {
                let ncert = rng.gen_range(0..3);
                Expr::Named {
                    name: NAMES[rng.gen_range(0..NAMES.len())].to_string(),
                    parity: if rng.gen_bool(0.5) {
                        Parity::Even
                    } else {
                        Parity::Odd
                    },
                    certificates: (0..ncert).map(|_| random_partition(rng, 5)).collect(),
                }
            }
        };
    }
    let sub = |rng: &mut R| Box::new(random_expr(rng, depth - 1));
    match rng.gen_range(0..6) {
        0 => Expr::DirectSum(sub(rng), sub(rng)),
        1 => Expr::Tensor(sub(rng), sub(rng)),
        2 => Expr::Shift(rng.gen_range(-5..=5), sub(rng)),
        3 => Expr::SchurApply(random_partition(rng, 4), sub(rng)),
        4 => Expr::SymPower(rng.gen_range(1..4), sub(rng)),
        _ => Expr::WedgePower(rng.gen_range(1..4), sub(rng)),
    }
}

pub mod complexes {
    use std::collections::BTreeMap;

    use schurfin::complex::{BaseRing, ChainComplex, ChainMap};
    use schurfin::linalg::Matrix;
    use schurfin::poly::Poly;

    pub fn int_matrix(rows: usize, cols: usize, entries: &[i64]) -> Matrix<Poly> {
        assert_eq!(entries.len(), rows * cols);
        let mut m = Matrix::zeros(rows, cols);
        for (i, &e) in entries.iter().enumerate() {
            m[(i / cols, i % cols)] = Poly::integer(e);
        }
        m
    }

    /// A Q-complex from `(degree, rank)` pairs and integer differentials
    /// `(degree k, entries of d_k)` in row-major order.
    pub fn q_complex(ranks: &[(i64, usize)], diffs: &[(i64, Vec<i64>)]) -> ChainComplex {
        let rank_map: BTreeMap<i64, usize> = ranks.iter().copied().collect();
        let r = |k: i64| rank_map.get(&k).copied().unwrap_or(0);
        let d = diffs
            .iter()
            .map(|(k, e)| (*k, int_matrix(r(k - 1), r(*k), e)))
            .collect();
        ChainComplex::new(BaseRing::Rationals, rank_map, d).expect("valid complex")
    }

    pub fn q_line(degree: i64) -> ChainComplex {
        q_complex(&[(degree, 1)], &[])
    }

    /// Q-complexes of total rank at most two, up to the choices made here.
    pub fn small_q_complexes() -> Vec<ChainComplex> {
        vec![
            q_line(0),
            q_line(1),
            q_complex(&[(0, 2)], &[]),
            q_complex(&[(1, 2)], &[]),
            q_complex(&[(0, 1), (1, 1)], &[]),
            q_complex(&[(0, 1), (1, 1)], &[(1, vec![1])]),
        ]
    }

    /// Every chain map `P → Q` whose matrix entries lie in {-1, 0, 1}.
    pub fn small_chain_maps(p: &ChainComplex, q: &ChainComplex) -> Vec<ChainMap> {
        let degrees: Vec<i64> = p
            .ranks()
            .keys()
            .copied()
            .filter(|&k| q.rank(k) > 0)
            .collect();
        let slots: Vec<(i64, usize, usize)> =
            degrees.iter().map(|&k| (k, q.rank(k), p.rank(k))).collect();
        let total: usize = slots.iter().map(|&(_, r, c)| r * c).sum();
        let mut out = Vec::new();
        for code in 0..3usize.pow(total as u32) {
            let mut c = code;
            let mut maps = BTreeMap::new();
            for &(k, rows, cols) in &slots {
                let entries: Vec<i64> = (0..rows * cols)
                    .map(|_| {
                        let v = (c % 3) as i64 - 1;
                        c /= 3;
                        v
                    })
                    .collect();
                maps.insert(k, int_matrix(rows, cols, &entries));
            }
            if let Ok(f) = ChainMap::new(p.clone(), q.clone(), maps) {
                out.push(f);
            }
        }
        out
    }
}

/// A random expression built only from lines, sums, tensors and shifts.
pub fn random_line_expr<R: Rng>(rng: &mut R, depth: usize) -> Expr {
    if depth <= 1 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..6) {
            0 => Expr::Unit,
            1 => Expr::Lefschetz,
            2 => Expr::EvenLines(rng.gen_range(0..3)),
            3 => Expr::OddLines(rng.gen_range(0..3)),
            4 => Expr::Preset(Preset::ProjectiveSpace(rng.gen_range(0..3))),
            _ => Expr::Preset(Preset::Curve(rng.gen_range(0..2))),
        };
    }
    let sub = |rng: &mut R| Box::new(random_line_expr(rng, depth - 1));
    match rng.gen_range(0..3) {
        0 => Expr::DirectSum(sub(rng), sub(rng)),
        1 => Expr::Tensor(sub(rng), sub(rng)),
        _ => Expr::Shift(rng.gen_range(-3..=3), sub(rng)),
    }
}
