use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sclab::family::*;
use sclab::sampling::random_rational;
use sclab::schubert::{OscPoint, Param};
use sclab_exact::field::{binomial, Gaussian};
use sclab_exact::sturm_count;

/// Subsets of the factors of `f'` (ρ linear, c quadratic) of total degree
/// `n - k - 1`, enumerated one by one.
fn allocations(k: usize, n: usize, rho: usize) -> BigUint {
    let c = (n - 2 - rho) / 2;
    let degrees: Vec<usize> = std::iter::repeat_n(1, rho).chain(std::iter::repeat_n(2, c)).collect();
    let target = n - k - 1;
    let hits = (0u32..1 << degrees.len())
        .filter(|mask| (0..degrees.len()).filter(|i| mask >> i & 1 == 1).map(|i| degrees[i]).sum::<usize>() == target)
        .count();
    BigUint::from(hits)
}

#[test]
fn nu_counts_factor_allocations() {
    for n in 4..=14 {
        for k in 2..=n - 2 {
            for rho in admissible_rho(n) {
                assert_eq!(nu(k, n, rho).unwrap(), allocations(k, n, rho), "nu({k},{n},{rho})");
            }
        }
    }
}

#[test]
fn nu_symmetry_and_monotonicity() {
    for n in 4..=14 {
        for k in 2..=n - 2 {
            let rhos = admissible_rho(n);
            for &rho in &rhos {
                assert_eq!(nu(k, n, rho).unwrap(), nu(n - k, n, rho).unwrap());
                if rho + 2 <= n - 2 {
                    assert!(nu(k, n, rho).unwrap() <= nu(k, n, rho + 2).unwrap(), "nu({k},{n},{rho})");
                }
            }
            assert_eq!(nu(k, n, n - 2).unwrap(), binomial((n - 2) as u64, (k - 1) as u64));
        }
    }
}

#[test]
fn family_example_values() {
    let values: Vec<BigUint> = admissible_rho(13).into_iter().map(|r| nu(5, 13, r).unwrap()).collect();
    let expect: Vec<BigUint> = [10u32, 18, 38, 78, 162, 330].map(BigUint::from).to_vec();
    assert_eq!(values, expect);
    assert_eq!(family_bounds(5, 13, 2).unwrap().lower, BigUint::from(10u32));
    assert!(family_bounds(5, 13, 1).is_err());
}

fn draw_points(rng: &mut ChaCha8Rng, m: usize, real: usize) -> Vec<OscPoint> {
    let mut pts: Vec<OscPoint> = Vec::new();
    let mut seen = Vec::new();
    let mut fresh = |rng: &mut ChaCha8Rng| loop {
        let q = random_rational(rng);
        if !seen.contains(&q) {
            seen.push(q.clone());
            break q;
        }
    };
    for _ in 0..real {
        pts.push(OscPoint::Real(Param::Finite(fresh(rng))));
    }
    while pts.len() < m {
        let i = pts.len();
        let z = Gaussian::new(fresh(rng), fresh(rng));
        pts.push(OscPoint::Pair { value: z.clone(), partner: i + 1 });
        pts.push(OscPoint::Pair { value: z.conj(), partner: i });
    }
    pts
}

#[test]
fn factorization_counts_follow_the_derivative() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (k, n) in [(2, 5), (2, 6), (2, 8), (3, 6), (3, 7)] {
        let m = n - 1;
        for _ in 0..200 {
            let real = m - 2 * rng.random_range(0..=m / 2);
            let inst = FactorizationInstance::new(k, n, draw_points(&mut rng, m, real)).unwrap();
            let Some(rho) = inst.rho else { continue };
            assert_eq!(sturm_count(&inst.fprime).unwrap(), rho);
            // Rolle: a root of f' between consecutive real roots of f
            assert!(rho + 1 >= real);
            assert!(admissible_rho(n).contains(&rho));
            let c = factorization_solve(&inst).unwrap();
            assert_eq!(BigUint::from(c.real_count), nu(k, n, rho).unwrap());
            assert!(c.real_count <= c.complex_count);
            assert_eq!(c.real_count % 2, c.complex_count % 2);
            if rho == n - 2 {
                assert_eq!(c.real_count, c.complex_count);
            }
            let bounds = family_bounds(k, n, real).unwrap();
            assert!(bounds.attainable.contains(&BigUint::from(c.real_count)));
        }
    }
}
