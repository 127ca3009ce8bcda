//! Primality testing and prime selection.

use rand::Rng;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &SMALL {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A uniformly random prime in `[lo, hi)`, found by rejection sampling.
pub fn random_prime<R: Rng + ?Sized>(rng: &mut R, lo: u64, hi: u64) -> u64 {
    assert!(lo < hi && hi > 3, "empty prime range");
    loop {
        let c = rng.random_range(lo..hi);
        if c > 2 && is_prime(c) {
            return c;
        }
    }
}

/// Largest prime strictly below `n`.
pub fn prev_prime(n: u64) -> Option<u64> {
    let mut c = n.checked_sub(1)?;
    while c > 2 {
        if is_prime(c) {
            return Some(c);
        }
        c -= 1;
    }
    None
}

/// Descending sequence of primes below `2^62`, used for multi-modular runs.
pub fn large_primes() -> impl Iterator<Item = u64> {
    let mut cur = 1u64 << 62;
    std::iter::from_fn(move || {
        let p = prev_prime(cur)?;
        cur = p;
        Some(p)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small_range_matches_trial_division() {
        for n in 0..5000u64 {
            let trial = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime(n), trial, "n = {n}");
        }
    }

    #[test]
    fn known_primes() {
        assert!(is_prime(11311));
        assert!(is_prime(10007));
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime(3215031751)); // strong pseudoprime to bases 2,3,5,7
        assert_eq!(prev_prime(14), Some(13));
        let first: Vec<u64> = large_primes().take(3).collect();
        assert!(first.windows(2).all(|w| w[0] > w[1]));
    }
}
