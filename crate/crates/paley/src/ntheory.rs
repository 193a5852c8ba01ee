//! Exact integer kernel: factorization, multiplicative functions, and the
//! symbol/sum primitives the rest of the crate is built on.
//!
//! Everything here is plain `u64`/`i64` arithmetic. Factorization is
//! deterministic trial division, which covers the desk-scale conductors this
//! crate targets; there is no probabilistic primality anywhere.

use crate::error::{Error, Result};
use num_integer::Integer;

/// Signed prime factorization: `sign * prod p_i^{e_i}` with strictly
/// increasing primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub sign: i8,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Reconstructs the factored integer. Panics on overflow, which cannot
    /// happen for values obtained from [`factorize`].
    pub fn value(&self) -> i64 {
        let mut v: i128 = self.sign as i128;
        for &(p, e) in &self.factors {
            for _ in 0..e {
                v *= p as i128;
            }
        }
        i64::try_from(v).expect("factorization reconstructs within i64")
    }

    /// True when every exponent is 1.
    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// All positive divisors of `|n|`, sorted ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.factors {
            let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
            for &d in &divs {
                let mut pe = 1u64;
                for _ in 0..=e {
                    next.push(d * pe);
                    pe = pe.saturating_mul(p);
                }
            }
            divs = next;
        }
        divs.sort_unstable();
        divs
    }
}

/// Deterministic primality by trial division (2, 3, then 6k±1).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    if n % 3 == 0 {
        return n == 3;
    }
    let mut d = 5u64;
    while d * d <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

fn factor_u64(mut m: u64) -> Vec<(u64, u32)> {
    let mut factors = Vec::new();
    for p in [2u64, 3] {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    }
    let mut d = 5u64;
    while d * d <= m {
        for p in [d, d + 2] {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            if e > 0 {
                factors.push((p, e));
            }
        }
        d += 6;
    }
    if m > 1 {
        factors.push((m, 1));
    }
    factors
}

/// Factors a nonzero integer by trial division.
pub fn factorize(n: i64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::domain("factorize: n must be nonzero"));
    }
    Ok(Factorization {
        sign: if n > 0 { 1 } else { -1 },
        factors: factor_u64(n.unsigned_abs()),
    })
}

/// Mobius function: 0 on non-squarefree n, otherwise (-1)^(number of primes).
pub fn mobius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::domain("mobius: n must be positive"));
    }
    let factors = factor_u64(n);
    if factors.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if factors.len() % 2 == 0 { 1 } else { -1 })
}

/// Euler totient, computed from the factorization.
pub fn euler_phi(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::domain("euler_phi: n must be positive"));
    }
    let mut phi = n;
    for (p, _) in factor_u64(n) {
        phi = phi / p * (p - 1);
    }
    Ok(phi)
}

/// True iff no squared prime divides `|n|`.
pub fn is_squarefree(n: i64) -> Result<bool> {
    Ok(factorize(n)?.is_squarefree())
}

fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = (base as u128) % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Legendre symbol (a/p) for an odd prime p, by Euler's criterion.
pub fn legendre_symbol(a: i64, p: u64) -> Result<i8> {
    if p < 3 || !is_prime(p) {
        return Err(Error::domain(format!(
            "legendre_symbol: {p} is not an odd prime"
        )));
    }
    let a = a.rem_euclid(p as i64) as u64;
    let r = mod_pow(a, (p - 1) / 2, p);
    Ok(if r == 0 {
        0
    } else if r == 1 {
        1
    } else {
        -1
    })
}

/// Kronecker symbol (a/n), total on all integer pairs.
///
/// Extends the Legendre symbol multiplicatively over the factorization of n,
/// with the special branches (a/-1), (a/2), (a/0), and (a/1) = 1. Evaluated
/// by the usual quadratic-reciprocity loop rather than by factoring n.
pub fn kronecker_symbol(a: i64, n: i64) -> i8 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    if a % 2 == 0 && n % 2 == 0 {
        return 0;
    }
    let mut a = a;
    let mut n = n;
    let mut k: i8 = 1;
    // Pull the factors of 2 out of n; (a/2) depends on a mod 8.
    let mut twos = 0u32;
    while n % 2 == 0 {
        n /= 2;
        twos += 1;
    }
    if twos % 2 == 1 {
        k = match a.rem_euclid(8) {
            1 | 7 => 1,
            _ => -1, // a is odd here, so 3 or 5 (mod 8)
        };
    }
    if n < 0 {
        // (a/-1) = -1 exactly when a < 0.
        if a < 0 {
            k = -k;
        }
        n = -n;
    }
    if n == 1 {
        return k;
    }
    // n is now odd, positive, > 1; the Jacobi symbol (a/n) only depends on
    // a mod n, so reduce and run the reciprocity loop.
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                k = -k;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            k = -k;
        }
        a %= n;
    }
    if n == 1 {
        k
    } else {
        0
    }
}

/// Ramanujan sum c_n(m) = sum of exp(2 pi i m a / n) over a coprime to n,
/// via the closed form mu(N) phi(n) / phi(N) with N = n / gcd(n, m).
pub fn ramanujan_sum(n: u64, m: u64) -> Result<i64> {
    if n == 0 || m == 0 {
        return Err(Error::domain("ramanujan_sum: n and m must be positive"));
    }
    let g = n.gcd(&m);
    let big_n = n / g;
    let mu = mobius(big_n)? as i64;
    if mu == 0 {
        return Ok(0);
    }
    let quotient = euler_phi(n)? / euler_phi(big_n)?;
    Ok(mu * quotient as i64)
}

/// psi(D) = prod over primes p | D of (1 - p).
fn psi(d: u64) -> i64 {
    factor_u64(d)
        .iter()
        .map(|&(p, _)| 1 - p as i64)
        .product()
}

/// Sum of a over 1 <= a <= floor(D/2) with gcd(a, D) = 1, by direct
/// summation.
///
/// Self-checks against the closed form (D phi(D) - eps psi(D)) / 8 where
/// eps is 1 for odd D, 0 for D divisible by 4, and 2 for D = 2 (mod 4);
/// the last branch keeps the identity valid on conductors and
/// non-conductors alike.
pub fn coprime_half_sum(d: u64) -> Result<u64> {
    if d < 3 {
        return Err(Error::domain("coprime_half_sum: D must be at least 3"));
    }
    let mut sum: u64 = 0;
    for a in 1..=d / 2 {
        if a.gcd(&d) == 1 {
            sum += a;
        }
    }
    let eps: i64 = match d % 4 {
        0 => 0,
        2 => 2,
        _ => 1,
    };
    let closed = (d as i128 * euler_phi(d)? as i128 - (eps * psi(d)) as i128) / 8;
    assert_eq!(
        sum as i128, closed,
        "coprime half-sum identity failed for D = {d}"
    );
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use proptest::prelude::*;

    /// Definitional Kronecker symbol: factor n and multiply the branch
    /// values. Independent of the reciprocity loop in the implementation.
    fn kronecker_by_definition(a: i64, n: i64) -> i8 {
        if n == 0 {
            return if a == 1 || a == -1 { 1 } else { 0 };
        }
        let mut k: i32 = if n < 0 && a < 0 { -1 } else { 1 };
        for (p, e) in factor_u64(n.unsigned_abs()) {
            let s: i32 = if p == 2 {
                if a % 2 == 0 {
                    0
                } else {
                    match a.rem_euclid(8) {
                        1 | 7 => 1,
                        _ => -1,
                    }
                }
            } else {
                legendre_symbol(a, p).unwrap() as i32
            };
            for _ in 0..e {
                k *= s;
            }
        }
        k as i8
    }

    #[test]
    fn factorize_examples() {
        let f = factorize(12).unwrap();
        assert_eq!(f.sign, 1);
        assert_eq!(f.factors, vec![(2, 2), (3, 1)]);
        let f = factorize(-21).unwrap();
        assert_eq!(f.sign, -1);
        assert_eq!(f.factors, vec![(3, 1), (7, 1)]);
        let f = factorize(1).unwrap();
        assert_eq!(f.sign, 1);
        assert!(f.factors.is_empty());
        assert!(factorize(0).is_err());
    }

    #[test]
    fn factorization_primes_are_prime_and_increasing() {
        for n in [-9699690i64, -64, 2, 720, 104729, 600851475143] {
            let f = factorize(n).unwrap();
            assert_eq!(f.value(), n);
            for w in f.factors.windows(2) {
                assert!(w[0].0 < w[1].0);
            }
            for &(p, _) in &f.factors {
                assert!(is_prime(p), "{p} listed as prime factor of {n}");
            }
        }
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(4).unwrap(), 0);
        assert_eq!(mobius(6).unwrap(), 1);
        assert_eq!(mobius(30).unwrap(), -1);
        assert!(mobius(0).is_err());
    }

    #[test]
    fn euler_phi_examples() {
        assert_eq!(euler_phi(12).unwrap(), 4);
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(euler_phi(21).unwrap(), 12);
        assert!(euler_phi(0).is_err());
    }

    #[test]
    fn phi_divisor_sum_is_identity() {
        // sum over d | n of phi(d) = n
        for n in 1u64..=10_000 {
            let total: u64 = factorize(n as i64)
                .unwrap()
                .divisors()
                .iter()
                .map(|&d| euler_phi(d).unwrap())
                .sum();
            assert_eq!(total, n);
        }
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_symbol(2, 5).unwrap(), -1);
        assert_eq!(legendre_symbol(4, 5).unwrap(), 1);
        assert_eq!(legendre_symbol(10, 5).unwrap(), 0);
        assert!(legendre_symbol(1, 2).is_err());
        assert!(legendre_symbol(1, 9).is_err());
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker_symbol(5, 2), -1);
        assert_eq!(kronecker_symbol(-3, -1), -1);
        assert_eq!(kronecker_symbol(1, 0), 1);
        assert_eq!(kronecker_symbol(-1, 0), 1);
        assert_eq!(kronecker_symbol(2, 0), 0);
        assert_eq!(kronecker_symbol(21, 5), legendre_symbol(21, 5).unwrap());
        assert_eq!(kronecker_symbol(21, 5), 1);
        // (a/1) = 1 for every a, including 0
        assert_eq!(kronecker_symbol(0, 1), 1);
        assert_eq!(kronecker_symbol(0, -1), 1);
    }

    #[test]
    fn kronecker_matches_definition_exhaustively() {
        for a in -60i64..=60 {
            for n in -60i64..=60 {
                if n == 0 {
                    continue;
                }
                assert_eq!(
                    kronecker_symbol(a, n),
                    kronecker_by_definition(a, n),
                    "({a}/{n})"
                );
            }
        }
    }

    #[test]
    fn kronecker_agrees_with_legendre_on_odd_primes() {
        for p in (3u64..=100).filter(|&p| is_prime(p)) {
            for a in -200i64..=200 {
                assert_eq!(
                    kronecker_symbol(a, p as i64),
                    legendre_symbol(a, p).unwrap(),
                    "({a}/{p})"
                );
            }
        }
    }

    #[test]
    fn kronecker_extreme_inputs_do_not_overflow() {
        for &a in &[i64::MIN, i64::MIN + 1, i64::MAX, 0, 1, -1] {
            for &n in &[i64::MIN, i64::MIN + 1, i64::MAX, 0, 1, -1, 2, -2] {
                let k = kronecker_symbol(a, n);
                assert!((-1..=1).contains(&k));
            }
        }
    }

    #[test]
    fn ramanujan_sum_examples() {
        assert_eq!(ramanujan_sum(1, 7).unwrap(), 1);
        // c_6(4): gcd = 2, N = 3, mu(3) phi(6) / phi(3) = -1 * 2 / 2 = -1
        assert_eq!(ramanujan_sum(6, 4).unwrap(), -1);
        for n in 1..=100 {
            assert_eq!(ramanujan_sum(n, 1).unwrap(), mobius(n).unwrap() as i64);
        }
        assert!(ramanujan_sum(0, 1).is_err());
    }

    #[test]
    fn ramanujan_sum_matches_exponential_sum() {
        // Direct oracle: sum of exp(2 pi i m a / n) over a coprime to n.
        for n in 1u64..=100 {
            for m in 1u64..=100 {
                let mut re = 0.0f64;
                for a in 1..=n {
                    if a.gcd(&n) == 1 {
                        re += (std::f64::consts::TAU * (m * a % n) as f64 / n as f64).cos();
                    }
                }
                let exact = ramanujan_sum(n, m).unwrap() as f64;
                assert!(
                    (re - exact).abs() < 1e-9,
                    "c_{n}({m}): sum {re} vs closed form {exact}"
                );
            }
        }
    }

    #[test]
    fn coprime_half_sum_examples() {
        assert_eq!(coprime_half_sum(12).unwrap(), 6);
        assert_eq!(coprime_half_sum(5).unwrap(), 3);
        assert_eq!(coprime_half_sum(8).unwrap(), 4);
        assert_eq!(coprime_half_sum(21).unwrap(), 30);
        assert!(coprime_half_sum(2).is_err());
    }

    #[test]
    fn coprime_half_sum_identity_holds_to_ten_thousand() {
        // The assert inside the function is the check.
        for d in 3u64..=10_000 {
            coprime_half_sum(d).unwrap();
        }
    }

    #[test]
    fn squarefree_examples() {
        assert!(is_squarefree(21).unwrap());
        assert!(!is_squarefree(12).unwrap());
        assert!(is_squarefree(-15).unwrap());
        assert!(is_squarefree(0).is_err());
    }

    proptest! {
        #[test]
        fn factorize_roundtrips(n in -1_000_000_000_000i64..=1_000_000_000_000) {
            // Range keeps trial division fast even when n is prime.
            prop_assume!(n != 0);
            let f = factorize(n)?;
            prop_assert_eq!(f.value(), n);
        }

        #[test]
        fn kronecker_multiplicative_in_denominator(
            a in -200i64..=200,
            n1 in -200i64..=200,
            n2 in -200i64..=200,
        ) {
            prop_assume!(n1 != 0 && n2 != 0);
            prop_assert_eq!(
                kronecker_symbol(a, n1 * n2),
                kronecker_symbol(a, n1) * kronecker_symbol(a, n2)
            );
        }

        #[test]
        fn kronecker_multiplicative_in_numerator(
            a1 in -200i64..=200,
            a2 in -200i64..=200,
            n in 1i64..=200,
        ) {
            // Top multiplicativity holds for positive n.
            prop_assert_eq!(
                kronecker_symbol(a1 * a2, n),
                kronecker_symbol(a1, n) * kronecker_symbol(a2, n)
            );
        }
    }
}
