//! Deterministic 64-bit modular arithmetic: primality, powers, inverses,
//! multiplicative orders, Legendre symbols and prime scans.
//!
//! All residues are canonical, i.e. reduced into `0..m`. Intermediate
//! products go through `u128` so nothing overflows for any 64-bit modulus.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumTheoryError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {0} is outside the supported range (need p > 3)")]
    InvalidPrime(u64),
    #[error("{0} has no inverse modulo {1}")]
    ZeroDivisor(u64, u64),
    #[error("{0} is not coprime to {1}")]
    NotCoprime(u64, u64),
}

/// A modulus known to be prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self, NumTheoryError> {
        if is_prime(p) {
            Ok(Self(p))
        } else {
            Err(NumTheoryError::NotPrime(p))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    if (a | b) >> 32 == 0 {
        return a * b % m;
    }
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

/// `a^e mod m` by square-and-multiply. `m` must be at least 1; the result
/// for `m == 1` is 0.
pub fn mod_pow(a: u64, mut e: u64, m: u64) -> u64 {
    assert!(m >= 1, "modulus must be positive");
    if m == 1 {
        return 0;
    }
    let mut base = a % m;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

// Witnesses sufficient for every n < 3.3 * 10^24, so the test is exact on u64.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic primality test valid on the full `u64` range.
pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    for &w in &MR_WITNESSES {
        if m == w {
            return true;
        }
        if m.is_multiple_of(w) {
            return false;
        }
    }
    let tz = (m - 1).trailing_zeros();
    let odd = (m - 1) >> tz;
    'witness: for &a in &MR_WITNESSES {
        let mut x = mod_pow(a, odd, m);
        if x == 1 || x == m - 1 {
            continue;
        }
        for _ in 1..tz {
            x = mul_mod(x, x, m);
            if x == m - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Inverse of `a` modulo the prime `p`.
pub fn mod_inverse(a: u64, p: PrimeModulus) -> Result<u64, NumTheoryError> {
    let m = p.get();
    let a = a % m;
    if a == 0 {
        return Err(NumTheoryError::ZeroDivisor(a, m));
    }
    // extended Euclid on signed 128-bit to avoid sign juggling
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    Ok(old_s.rem_euclid(m as i128) as u64)
}

fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| add_mod(mul_mod(x, x, n), c, n);
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(n: u64) -> Vec<u64> {
    fn split(n: u64, out: &mut Vec<u64>) {
        if n == 1 {
            return;
        }
        if is_prime(n) {
            out.push(n);
            return;
        }
        let d = pollard_rho(n);
        split(d, out);
        split(n / d, out);
    }
    let mut out = Vec::new();
    let mut n = n;
    for p in [2u64, 3, 5, 7, 11, 13] {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
    }
    split(n, &mut out);
    out.sort_unstable();
    out.dedup();
    out
}

/// Smallest `k >= 1` with `a^k == 1 (mod p)`.
pub fn multiplicative_order(a: u64, p: PrimeModulus) -> Result<u64, NumTheoryError> {
    let m = p.get();
    let a = a % m;
    if a == 0 {
        return Err(NumTheoryError::NotCoprime(a, m));
    }
    let mut order = m - 1;
    for q in prime_factors(m - 1) {
        while order.is_multiple_of(q) && mod_pow(a, order / q, m) == 1 {
            order /= q;
        }
    }
    Ok(order)
}

/// Legendre symbol `(a/p)` for an odd prime `p`, via Euler's criterion.
pub fn legendre_symbol(a: i64, p: PrimeModulus) -> i8 {
    let m = p.get();
    assert!(m > 2, "Legendre symbol needs an odd prime");
    let a = (a as i128).rem_euclid(m as i128) as u64;
    if a == 0 {
        return 0;
    }
    match mod_pow(a, (m - 1) / 2, m) {
        1 => 1,
        x if x == m - 1 => -1,
        x => unreachable!("Euler criterion produced {x} modulo prime {m}"),
    }
}

/// Whether `-1` lies outside the cyclic subgroup generated by 2 modulo `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub p: u64,
    pub order_of_two: u64,
    pub condition_holds: bool,
    pub witness_r: Option<u64>,
}

/// Checks that no power of two is congruent to `-1` modulo `p`.
///
/// `-1` is a power of two exactly when the order `d` of 2 is even and
/// `2^(d/2) == -1`; in that case `d/2` is the smallest such exponent.
pub fn check_t1_condition(p: u64) -> Result<ConditionReport, NumTheoryError> {
    if p <= 3 {
        return Err(NumTheoryError::InvalidPrime(p));
    }
    let pm = PrimeModulus::new(p)?;
    let d = multiplicative_order(2, pm)?;
    let witness_r = (d % 2 == 0 && mod_pow(2, d / 2, p) == p - 1).then_some(d / 2);
    Ok(ConditionReport {
        p,
        order_of_two: d,
        condition_holds: witness_r.is_none(),
        witness_r,
    })
}

/// Sieve of Eratosthenes up to and including `limit`.
pub fn sieve(limit: u64) -> Vec<bool> {
    let n = limit as usize;
    let mut is_p = vec![true; n + 1];
    is_p[0] = false;
    if n >= 1 {
        is_p[1] = false;
    }
    let mut i = 2usize;
    while i * i <= n {
        if is_p[i] {
            for j in (i * i..=n).step_by(i) {
                is_p[j] = false;
            }
        }
        i += 1;
    }
    is_p
}

/// Primes `p <= limit` with `p == residue (mod modulus)`, ascending.
pub fn primes_in_class(limit: u64, residue: u64, modulus: u64) -> Vec<u64> {
    assert!(modulus >= 1 && residue < modulus);
    if limit < 2 {
        return Vec::new();
    }
    sieve(limit)
        .iter()
        .enumerate()
        .filter(|&(k, &pr)| pr && k as u64 % modulus == residue)
        .map(|(k, _)| k as u64)
        .collect()
}

/// Smallest prime `>= m`.
pub fn next_prime(m: u64) -> u64 {
    let mut k = m.max(2);
    while !is_prime(k) {
        k += 1;
    }
    k
}

/// Binomial coefficient, `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// `C(n, k) mod p` for prime `p`, by Lucas' theorem.
pub fn binomial_mod_prime(mut n: u64, mut k: u64, p: PrimeModulus) -> u64 {
    let m = p.get();
    let mut acc = 1u64;
    while k > 0 {
        let (nd, kd) = (n % m, k % m);
        if kd > nd {
            return 0;
        }
        // digits are < p, so the small binomial is computed directly mod p
        let mut num = 1u64;
        let mut den = 1u64;
        for i in 0..kd {
            num = mul_mod(num, nd - i, m);
            den = mul_mod(den, i + 1, m);
        }
        let inv = mod_inverse(den, p).expect("factorial digits are units mod p");
        acc = mul_mod(acc, mul_mod(num, inv, m), m);
        n /= m;
        k /= m;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn trial_division(m: u64) -> bool {
        m >= 2
            && (2..)
                .take_while(|d| d * d <= m)
                .all(|d| !m.is_multiple_of(d))
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(2));
        assert!(is_prime(73));
        assert!(!is_prime(91));
        assert!(!is_prime(0));
        assert!(!is_prime(1));
        assert!(is_prime(18_446_744_073_709_551_557)); // largest 64-bit prime
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2,3,5,7
        assert!(!is_prime(u64::MAX));
    }

    #[test]
    fn primality_matches_trial_division() {
        for m in 0..20_000 {
            assert_eq!(is_prime(m), trial_division(m), "m = {m}");
        }
    }

    #[test]
    fn mod_pow_examples() {
        assert_eq!(mod_pow(2, 3, 7), 1);
        assert_eq!(mod_pow(12345, 0, 97), 1);
        // 2 has order 9 modulo 73, so 2^36 = (2^9)^4 = 1, never -1
        assert_eq!(mod_pow(2, 36, 73), 1);
        assert_ne!(mod_pow(2, 36, 73), 72);
        assert_eq!(mod_pow(u64::MAX - 1, 2, u64::MAX), 1);
    }

    #[test]
    fn mod_pow_matches_naive() {
        for m in 2..=50u64 {
            for a in 0..=50u64 {
                let mut naive = 1 % m;
                for e in 0..=50u64 {
                    assert_eq!(mod_pow(a, e, m), naive, "{a}^{e} mod {m}");
                    naive = naive * a % m;
                }
            }
        }
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(mod_inverse(2, pm(7)), Ok(4));
        assert_eq!(mod_inverse(1, pm(101)), Ok(1));
        assert_eq!(
            mod_inverse(0, pm(5)),
            Err(NumTheoryError::ZeroDivisor(0, 5))
        );
        let big = pm(18_446_744_073_709_551_557);
        let inv = mod_inverse(123_456_789, big).unwrap();
        assert_eq!(mul_mod(inv, 123_456_789, big.get()), 1);
    }

    #[test]
    fn order_examples() {
        assert_eq!(multiplicative_order(2, pm(7)), Ok(3));
        assert_eq!(multiplicative_order(2, pm(73)), Ok(9));
        assert_eq!(multiplicative_order(1, pm(13)), Ok(1));
        assert_eq!(
            multiplicative_order(0, pm(13)),
            Err(NumTheoryError::NotCoprime(0, 13))
        );
    }

    #[test]
    fn order_divides_group_order() {
        for p in primes_in_class(200, 0, 1) {
            for a in 1..p {
                let k = multiplicative_order(a, pm(p)).unwrap();
                assert_eq!((p - 1) % k, 0);
                // minimality by enumeration
                let brute = (1..=p).find(|&e| mod_pow(a, e, p) == 1).unwrap();
                assert_eq!(k, brute, "order of {a} mod {p}");
            }
        }
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_symbol(2, pm(7)), 1);
        assert_eq!(legendre_symbol(2, pm(5)), -1);
        assert_eq!(legendre_symbol(0, pm(11)), 0);
        assert_eq!(legendre_symbol(-1, pm(5)), 1);
        assert_eq!(legendre_symbol(-1, pm(7)), -1);
    }

    #[test]
    fn legendre_of_two_matches_closed_form() {
        for p in primes_in_class(1000, 0, 1).into_iter().filter(|&p| p > 2) {
            let expected = if ((p * p - 1) / 8) % 2 == 0 { 1 } else { -1 };
            assert_eq!(legendre_symbol(2, pm(p)), expected, "p = {p}");
            if expected == 1 {
                let d = multiplicative_order(2, pm(p)).unwrap();
                assert_eq!(((p - 1) / 2) % d, 0, "p = {p}");
            }
        }
    }

    #[test]
    fn condition_examples() {
        let r73 = check_t1_condition(73).unwrap();
        assert!(r73.condition_holds);
        assert_eq!(r73.order_of_two, 9);
        assert!(check_t1_condition(7).unwrap().condition_holds);
        let r5 = check_t1_condition(5).unwrap();
        assert!(!r5.condition_holds);
        assert_eq!(r5.witness_r, Some(2));
        assert_eq!(check_t1_condition(3), Err(NumTheoryError::InvalidPrime(3)));
        assert_eq!(check_t1_condition(9), Err(NumTheoryError::NotPrime(9)));
    }

    #[test]
    fn condition_matches_exhaustive_scan() {
        for p in primes_in_class(2000, 0, 1).into_iter().filter(|&p| p > 3) {
            let brute = (1..p).find(|&r| mod_pow(2, r, p) == p - 1);
            let rep = check_t1_condition(p).unwrap();
            assert_eq!(rep.witness_r, brute, "p = {p}");
            assert_eq!(rep.condition_holds, brute.is_none());
        }
    }

    #[test]
    fn primes_in_class_examples() {
        assert_eq!(primes_in_class(100, 7, 8), vec![7, 23, 31, 47, 71, 79]);
        assert_eq!(primes_in_class(10, 1, 2), vec![3, 5, 7]);
        assert!(primes_in_class(1, 0, 8).is_empty());
    }

    #[test]
    fn next_prime_examples() {
        assert_eq!(next_prime(10), 11);
        assert_eq!(next_prime(7), 7);
        assert_eq!(next_prime(0), 2);
        assert_eq!(next_prime(1), 2);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(9, 3), Some(84));
        assert_eq!(binomial(5, 6), Some(0));
        assert_eq!(binomial(200, 100), None);
        for n in 0..40u64 {
            for k in 0..=n {
                for p in [2u64, 3, 5, 7, 13] {
                    let exact = binomial(n, k).unwrap();
                    assert_eq!(
                        binomial_mod_prime(n, k, pm(p)),
                        exact % p,
                        "C({n},{k}) mod {p}"
                    );
                }
            }
        }
    }

    #[test]
    fn factorization() {
        assert_eq!(prime_factors(72), vec![2, 3]);
        assert_eq!(prime_factors(1), Vec::<u64>::new());
        assert_eq!(
            prime_factors(18_446_744_073_709_551_556),
            vec![2, 11, 137, 547, 5_594_472_617_641]
        );
    }
}
