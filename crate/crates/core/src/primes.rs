//! Prime sets and integer factorization helpers.
//!
//! Orders of permutation groups on `n` points divide `n!`, so every prime
//! factor is at most the degree; plain trial division is exact here.

use serde::{Deserialize, Serialize};

/// A finite set of primes, kept sorted and deduplicated.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeSet(Vec<u64>);

impl PrimeSet {
    pub fn empty() -> Self {
        PrimeSet(Vec::new())
    }

    pub fn from_primes(mut primes: Vec<u64>) -> Self {
        primes.sort_unstable();
        primes.dedup();
        PrimeSet(primes)
    }

    /// The set of primes dividing `n`. `π(1)` is the empty set.
    pub fn of_order(n: u128) -> Self {
        PrimeSet(factorize(n).into_iter().map(|(p, _)| p).collect())
    }

    pub fn contains(&self, p: u64) -> bool {
        self.0.binary_search(&p).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    /// Whether `n` is a π-number: every prime divisor of `n` lies in the set.
    /// `1` is a π-number for every π, including the empty set.
    pub fn is_pi_number(&self, n: u128) -> bool {
        factorize(n).into_iter().all(|(p, _)| self.contains(p))
    }
}

impl std::fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// Prime factorization by trial division, smallest prime first.
pub fn factorize(mut n: u128) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n <= 1 {
        return out;
    }
    let mut p: u128 = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p as u64, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        debug_assert!(n <= u64::MAX as u128, "cofactor exceeds u64");
        out.push((n as u64, 1));
    }
    out
}

/// Largest power of `p` dividing `n` (the `p`-part). `p_part(1, p) = 1`.
pub fn p_part(n: u128, p: u64) -> u128 {
    let p = p as u128;
    let mut part = 1u128;
    let mut m = n;
    while m % p == 0 {
        part *= p;
        m /= p;
    }
    part
}

/// Greatest common divisor by the Euclidean algorithm.
pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Primality by trial division; fast for the word-size inputs used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Multiplicity of `p` in `n`.
pub fn p_valuation(n: u128, p: u64) -> u32 {
    let p = p as u128;
    let mut v = 0;
    let mut m = n;
    while m > 0 && m % p == 0 {
        v += 1;
        m /= p;
    }
    v
}
