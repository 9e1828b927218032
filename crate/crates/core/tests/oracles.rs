//! Library results compared with independent first-principles computations.

mod common;

use common::*;
use num_traits::Zero;
use schurfin::coefficients::{kronecker_coefficient, lr_coefficient};
use schurfin::error::Limits;
use schurfin::group_algebra::{young_symmetrizer, GroupAlgebraElement, Permutation};
use schurfin::partition::partitions_of;
use schurfin::super_linear::{schur_dimension, SuperVectorSpace};
use schurfin::symgroup::{character_value, class_size, irrep_dimension, CycleType};

#[test]
fn partition_counts_follow_the_pentagonal_recurrence() {
    let limits = Limits::default();
    for n in 0..=20 {
        assert_eq!(
            partitions_of(n, &limits).unwrap().len() as u64,
            partition_count(n),
            "n = {n}"
        );
    }
    assert_eq!(partition_count(20), 627);
}

#[test]
fn enumeration_matches_the_plain_recursion() {
    let limits = Limits::default();
    for n in 0..=10 {
        let mut a = partitions_of(n, &limits).unwrap();
        let mut b = partitions(n);
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }
}

#[test]
fn characters_decompose_permutation_modules_by_kostka_numbers() {
    for n in 1..=7 {
        let parts = partitions(n);
        for mu in &parts {
            for rho in &parts {
                let ct = CycleType::new(rho.clone());
                let via_kostka: i64 = parts
                    .iter()
                    .map(|lambda| kostka(lambda, mu) as i64 * character_value(lambda, &ct).unwrap())
                    .sum();
                assert_eq!(
                    via_kostka as u64,
                    permutation_module_character(mu, rho),
                    "mu = {mu}, rho = {rho}"
                );
            }
        }
    }
}

#[test]
fn hook_lengths_agree_with_character_degree() {
    for n in 1..=9 {
        for lambda in partitions(n) {
            let chi = character_value(&lambda, &CycleType::identity(n)).unwrap();
            assert_eq!(irrep_dimension(&lambda).unwrap(), chi as u128);
            assert_eq!(
                kostka(&lambda, &part(&vec![1; n])) as u128,
                chi as u128,
                "standard tableaux of {lambda}"
            );
        }
    }
}

#[test]
fn standard_representation_of_s3_matches_explicit_matrices() {
    let lambda = part(&[2, 1]);
    for sigma in Permutation::all(3) {
        let m = standard_rep_s3(&sigma);
        let ct = CycleType::new(sigma.cycle_type());
        assert_eq!(
            character_value(&lambda, &ct).unwrap(),
            m[0][0] + m[1][1],
            "at {sigma}"
        );
    }
}

#[test]
fn standard_representation_matrices_are_a_homomorphism() {
    let mul = |a: [[i64; 2]; 2], b: [[i64; 2]; 2]| {
        let mut c = [[0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        c
    };
    for s in Permutation::all(3) {
        for t in Permutation::all(3) {
            assert_eq!(
                standard_rep_s3(&s.compose(&t)),
                mul(standard_rep_s3(&s), standard_rep_s3(&t))
            );
        }
    }
}

#[test]
fn littlewood_richardson_agrees_with_induced_characters() {
    // c^λ_{μν} = Σ_{ρ1, ρ2} χ^μ(ρ1) χ^ν(ρ2) χ^λ(ρ1 ∪ ρ2) / (z_ρ1 z_ρ2).
    let z = |rho: &CycleType| factorial(rho.n()) / class_size(rho);
    for n in 2..=6 {
        for m in 1..n {
            for mu in partitions(m) {
                for nu in partitions(n - m) {
                    for lambda in partitions(n) {
                        let mut num: i128 = 0;
                        let mut den: i128 = 1;
                        for r1 in partitions(m) {
                            for r2 in partitions(n - m) {
                                let mut joined = r1.parts().to_vec();
                                joined.extend_from_slice(r2.parts());
                                joined.sort_unstable_by(|a, b| b.cmp(a));
                                let (c1, c2) =
                                    (CycleType::new(r1.clone()), CycleType::new(r2.clone()));
                                let v = character_value(&mu, &c1).unwrap() as i128
                                    * character_value(&nu, &c2).unwrap() as i128
                                    * character_value(&lambda, &CycleType::new(part(&joined)))
                                        .unwrap() as i128;
                                let d = (z(&c1) * z(&c2)) as i128;
                                num = num * d + v * den;
                                den *= d;
                                let g = gcd(num.abs(), den);
                                num /= g;
                                den /= g;
                            }
                        }
                        assert_eq!(den, 1);
                        assert_eq!(
                            lr_coefficient(&lambda, &mu, &nu).unwrap() as i128,
                            num,
                            "lambda = {lambda}, mu = {mu}, nu = {nu}"
                        );
                    }
                }
            }
        }
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn kronecker_coefficients_account_for_dimensions() {
    for n in 1..=6 {
        let parts = partitions(n);
        for mu in &parts {
            for nu in &parts {
                let total: u128 = parts
                    .iter()
                    .map(|l| {
                        kronecker_coefficient(l, mu, nu).unwrap() as u128
                            * irrep_dimension(l).unwrap()
                    })
                    .sum();
                assert_eq!(
                    total,
                    irrep_dimension(mu).unwrap() * irrep_dimension(nu).unwrap()
                );
            }
        }
    }
}

#[test]
fn known_kronecker_values() {
    let k = |a: &[usize], b: &[usize], c: &[usize]| {
        kronecker_coefficient(&part(a), &part(b), &part(c)).unwrap()
    };
    assert_eq!(k(&[2, 1], &[2, 1], &[2, 1]), 1);
    assert_eq!(k(&[3], &[2, 1], &[2, 1]), 1);
    assert_eq!(k(&[1, 1, 1], &[2, 1], &[2, 1]), 1);
    assert_eq!(k(&[2, 2], &[2, 2], &[2, 2]), 1);
    assert_eq!(k(&[3, 1], &[3, 1], &[2, 1, 1]), 1);
    assert_eq!(k(&[2, 1, 1], &[2, 1, 1], &[2, 1, 1]), 1);
}

#[test]
fn regular_trace_of_symmetrizer_is_the_dimension() {
    let limits = Limits::default();
    for n in 1..=6 {
        for lambda in partitions(n) {
            let c = young_symmetrizer(&lambda, &limits).unwrap();
            let e = c.coefficient(&Permutation::identity(n));
            let trace = e * rat(factorial(n) as i64);
            assert_eq!(
                trace,
                rat(irrep_dimension(&lambda).unwrap() as i64),
                "lambda = {lambda}"
            );
        }
    }
}

#[test]
fn schur_dimension_agrees_with_the_trace_formula() {
    let limits = Limits::default();
    for p in 0..=3 {
        for q in 0..=3 {
            let space = SuperVectorSpace::new(p, q);
            for n in 1..=5 {
                if (p + q).pow(n as u32) > limits.max_tensor_dim {
                    continue;
                }
                for lambda in partitions(n) {
                    let got = schur_dimension(&space, &lambda, &limits).unwrap();
                    assert_eq!(
                        got,
                        trace_schur_dimension(p, q, &lambda),
                        "({p}|{q}) lambda = {lambda}"
                    );
                }
            }
        }
    }
}

#[test]
fn classical_dimensions_of_symmetric_and_exterior_powers() {
    let limits = Limits::default();
    for d in 1..=4usize {
        for n in 1..=4usize {
            let even = SuperVectorSpace::new(d, 0);
            let sym =
                schur_dimension(&even, &schurfin::partition::Partition::row(n), &limits).unwrap();
            let wedge = schur_dimension(&even, &schurfin::partition::Partition::column(n), &limits)
                .unwrap();
            assert_eq!(sym.total(), binomial(d + n - 1, n));
            assert_eq!(wedge.total(), binomial(d, n));
            let odd = SuperVectorSpace::new(0, d);
            let sym_odd =
                schur_dimension(&odd, &schurfin::partition::Partition::row(n), &limits).unwrap();
            assert_eq!(sym_odd.total(), binomial(d, n));
            assert!(n % 2 == 1 || sym_odd.odd.is_zero());
        }
    }
}

#[test]
fn symmetrizer_trace_on_explicit_regular_representation() {
    let limits = Limits::default();
    for n in 1..=4 {
        let basis = Permutation::all(n);
        for lambda in partitions(n) {
            let c = young_symmetrizer(&lambda, &limits).unwrap();
            // diagonal entries of left multiplication by c in the permutation basis
            let mut trace = rat(0);
            for g in &basis {
                let image = c
                    .multiply(&GroupAlgebraElement::from_permutation(g.clone()))
                    .unwrap();
                trace += image.coefficient(g);
            }
            let dim = irrep_dimension(&lambda).unwrap() as i64;
            assert_eq!(trace, rat(dim), "lambda = {lambda}");
        }
    }
}
