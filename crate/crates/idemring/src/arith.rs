//! Exact integer kernel: factorization, extended gcd, and overflow-safe
//! modular arithmetic. Everything here is a pure function on plain values.

use crate::error::{Error, Result};

/// `a * b mod n` with a double-width intermediate, exact for all `n <= u64::MAX`.
#[inline]
pub fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    if (a | b) < (1 << 32) {
        // product fits in 64 bits
        (a * b) % n
    } else {
        ((a as u128 * b as u128) % n as u128) as u64
    }
}

/// `a + b mod n`, safe near the top of the u64 range.
#[inline]
pub fn addmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 + b as u128) % n as u128) as u64
}

/// `a - b mod n` for `a, b < n`.
#[inline]
pub fn submod(a: u64, b: u64, n: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        n - (b - a)
    }
}

/// `base^exp mod n` by square-and-multiply.
pub fn powmod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, n);
        }
        base = mulmod(base, base, n);
        exp >>= 1;
    }
    acc
}

/// Greatest common divisor.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended Euclidean algorithm: returns `(g, x, y)` with `a*x + b*y = g`
/// and `g = gcd(a, b)`. Coefficients are signed and exact.
pub fn ext_gcd(a: u64, b: u64) -> Result<(u64, i128, i128)> {
    if a == 0 && b == 0 {
        return Err(Error::GcdOfZeros);
    }
    let (mut old_r, mut r) = (a as i128, b as i128);
    let (mut old_x, mut x) = (1i128, 0i128);
    let (mut old_y, mut y) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_x, x) = (x, old_x - q * x);
        (old_y, y) = (y, old_y - q * y);
    }
    Ok((old_r as u64, old_x, old_y))
}

/// Inverse of `a` modulo `n`, requiring `gcd(a, n) = 1`.
pub fn invmod(a: u64, n: u64) -> Result<u64> {
    let (g, x, _) = ext_gcd(a % n, n)?;
    if g != 1 {
        return Err(Error::NotCoprime { p: a, m: n, g });
    }
    Ok(x.rem_euclid(n as i128) as u64)
}

/// Deterministic Miller-Rabin primality test, valid for every u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    // This witness set is deterministic for all n < 3.3 * 10^24.
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent-variant Pollard rho. `n` must be odd, composite, and free of
/// factors below 2^16 when called from `factorize`; returns a nontrivial
/// divisor. Deterministic: the polynomial offset starts at 1 and is bumped
/// on the rare cycle that collapses to n.
fn pollard_rho(n: u64) -> u64 {
    debug_assert!(n & 1 == 1 && !is_prime(n));
    for c in 1..64u64 {
        let f = |x: u64| addmod(mulmod(x, x, n), c, n);
        let (mut x, mut ys) = (2u64, 2u64);
        let mut y = 2u64;
        let (mut r, mut q, mut g) = (1u64, 1u64, 1u64);
        let m = 128u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0u64;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mulmod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += m;
            }
            r <<= 1;
        }
        if g == n {
            // backtrack one step at a time
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("pollard rho exhausted its offsets on {n}");
}

/// Prime factorization of `n`, factors sorted by prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// The factored value.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// `(prime, exponent)` pairs, primes strictly increasing.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Number of distinct prime factors.
    pub fn k(&self) -> u32 {
        self.factors.len() as u32
    }

    /// The i-th prime power `p_i^a_i`.
    pub fn prime_power(&self, i: usize) -> u64 {
        let (p, a) = self.factors[i];
        p.pow(a)
    }

    /// Product of the prime powers selected by `mask` (bit i = factor i).
    pub fn subset_product(&self, mask: u32) -> u64 {
        let mut acc = 1u64;
        for i in 0..self.factors.len() {
            if mask >> i & 1 == 1 {
                acc *= self.prime_power(i);
            }
        }
        acc
    }
}

/// Factor `n >= 2`: trial division by 2, 3, then 6k±1 up to 2^16, with
/// deterministic Miller-Rabin plus Pollard rho on whatever survives.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n < 2 {
        return Err(Error::NTooSmall(n));
    }
    let mut rest = n;
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut push = |p: u64, rest: &mut u64| {
        let mut a = 0u32;
        while (*rest).is_multiple_of(p) {
            *rest /= p;
            a += 1;
        }
        if a > 0 {
            factors.push((p, a));
        }
    };
    push(2, &mut rest);
    push(3, &mut rest);
    let mut d = 5u64;
    while d <= 65_535 && d * d <= rest {
        push(d, &mut rest);
        push(d + 2, &mut rest);
        d += 6;
    }
    if rest > 1 {
        // rest now has no factor below 2^16, so it is 1, a prime, or a
        // product of at most three primes above 2^16
        let mut stack = vec![rest];
        let mut large: Vec<u64> = Vec::new();
        while let Some(v) = stack.pop() {
            if is_prime(v) {
                large.push(v);
            } else {
                let d = pollard_rho(v);
                stack.push(d);
                stack.push(v / d);
            }
        }
        large.sort_unstable();
        for p in large {
            match factors.last_mut() {
                Some((q, a)) if *q == p => *a += 1,
                _ => factors.push((p, 1)),
            }
        }
    }
    factors.sort_unstable_by_key(|&(p, _)| p);
    Ok(Factorization { n, factors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Reference mulmod by shift-and-add doubling; never forms a product
    /// wider than the modulus, independent of the u128 fast path.
    fn mulmod_reference(mut a: u64, mut b: u64, n: u64) -> u64 {
        a %= n;
        let mut acc = 0u64;
        while b > 0 {
            if b & 1 == 1 {
                acc = addmod(acc, a, n);
            }
            a = addmod(a, a, n);
            b >>= 1;
        }
        acc
    }

    #[test]
    fn mulmod_examples() {
        assert_eq!(mulmod(901, 901, 1020), 901);
        assert_eq!(mulmod(0, 999, 1000), 0);
        assert_eq!(mulmod(1, 999, 1000), 999);
        assert_eq!(mulmod(u64::MAX - 1, u64::MAX - 1, u64::MAX), 1);
    }

    #[test]
    fn mulmod_matches_reference_on_random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x1d3);
        for _ in 0..20_000 {
            let n = rng.gen_range(1..=u64::MAX);
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            assert_eq!(mulmod(a, b, n), mulmod_reference(a, b, n));
        }
    }

    #[test]
    fn addmod_submod_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let n = rng.gen_range(2..=u64::MAX);
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            assert_eq!(submod(addmod(a, b, n), b, n), a);
        }
    }

    #[test]
    fn ext_gcd_examples() {
        let (g, x, y) = ext_gcd(17, 40).unwrap();
        assert_eq!(g, 1);
        assert_eq!(17 * x + 40 * y, 1);

        let (g, _, _) = ext_gcd(12, 18).unwrap();
        assert_eq!(g, 6);

        let (g, x, y) = ext_gcd(25, 81).unwrap();
        assert_eq!(g, 1);
        assert_eq!(25 * x + 81 * y, 1);

        assert_eq!(ext_gcd(0, 0), Err(Error::GcdOfZeros));
        assert_eq!(ext_gcd(0, 5).unwrap().0, 5);
        assert_eq!(ext_gcd(5, 0).unwrap().0, 5);
    }

    #[test]
    fn ext_gcd_identity_holds_on_100k_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xbe2);
        for _ in 0..100_000 {
            let a: u64 = rng.gen();
            let b: u64 = rng.gen();
            if a == 0 && b == 0 {
                continue;
            }
            let (g, x, y) = ext_gcd(a, b).unwrap();
            assert_eq!(g, gcd(a, b));
            assert_eq!(a as i128 * x + b as i128 * y, g as i128);
        }
    }

    #[test]
    fn invmod_agrees_with_bezout() {
        assert_eq!(invmod(6, 17).unwrap(), 3);
        assert_eq!(invmod(40, 17).unwrap(), invmod(6, 17).unwrap());
        assert!(invmod(6, 9).is_err());
    }

    #[test]
    fn primality_known_values() {
        for p in [2u64, 3, 5, 7, 11, 13, 61, 65_537, 999_983, 4_294_967_291] {
            assert!(is_prime(p), "{p} is prime");
        }
        // largest u64 prime
        assert!(is_prime(18_446_744_073_709_551_557));
        // strong pseudoprimes to small bases and a Carmichael number
        for c in [1u64, 561, 3_215_031_751, 3_474_749_660_383, 4_294_967_297] {
            assert!(!is_prime(c), "{c} is composite");
        }
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(30).unwrap().factors(), &[(2, 1), (3, 1), (5, 1)]);
        assert_eq!(
            factorize(13_860).unwrap().factors(),
            &[(2, 2), (3, 2), (5, 1), (7, 1), (11, 1)]
        );
        assert_eq!(factorize(338).unwrap().factors(), &[(2, 1), (13, 2)]);
        assert_eq!(factorize(2).unwrap().factors(), &[(2, 1)]);
        assert_eq!(factorize(1), Err(Error::NTooSmall(1)));
        assert_eq!(factorize(0), Err(Error::NTooSmall(0)));
    }

    #[test]
    fn factorize_large_composites() {
        // product of two ~2^31 primes exercises the rho path
        let p = 2_147_483_647u64;
        let q = 2_147_483_629u64;
        assert_eq!(factorize(p * q).unwrap().factors(), &[(q, 1), (p, 1)]);
        // square of a large prime
        let r = 1_000_000_007u64;
        assert_eq!(factorize(r * r).unwrap().factors(), &[(r, 2)]);
        // 2^64 - 1 and 2^64 - 2 have well-known factorizations
        assert_eq!(
            factorize(u64::MAX).unwrap().factors(),
            &[(3, 1), (5, 1), (17, 1), (257, 1), (641, 1), (65_537, 1), (6_700_417, 1)]
        );
        assert_eq!(
            factorize(u64::MAX - 1).unwrap().factors(),
            &[(2, 1), (7, 2), (73, 1), (127, 1), (337, 1), (92_737, 1), (649_657, 1)]
        );
    }

    #[test]
    fn factorize_roundtrips_below_a_million() {
        for n in 2..=1_000_000u64 {
            let fac = factorize(n).unwrap();
            let mut prod = 1u64;
            let mut prev = 0u64;
            for &(p, a) in fac.factors() {
                assert!(p > prev, "primes strictly increasing for {n}");
                assert!(a >= 1);
                assert!(is_prime(p), "listed factor {p} of {n} is prime");
                prod *= p.pow(a);
                prev = p;
            }
            assert_eq!(prod, n);
        }
    }

    #[test]
    fn subset_product_covers_masks() {
        let fac = factorize(13_860).unwrap();
        assert_eq!(fac.k(), 5);
        assert_eq!(fac.subset_product(0), 1);
        assert_eq!(fac.subset_product(0b00001), 4);
        assert_eq!(fac.subset_product(0b00011), 36);
        assert_eq!(fac.subset_product(0b11111), 13_860);
    }
}
