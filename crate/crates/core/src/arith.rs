//! Small integer number theory: primality, factorization, prime powers.

/// Trial-division primality test. Adequate for the desk-scale orders used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization in ascending order, with multiplicity.
///
/// `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        while n.is_multiple_of(d) {
            out.push(d);
            n /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Distinct prime divisors in ascending order.
pub fn distinct_prime_factors(n: u64) -> Vec<u64> {
    let mut f = factorize(n);
    f.dedup();
    f
}

/// Returns `(p, k)` with `n = p^k` and `p` prime, if `n` is a prime power.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    let f = factorize(n);
    let p = *f.first()?;
    if f.iter().all(|&x| x == p) {
        Some((p, f.len() as u32))
    } else {
        None
    }
}

/// Odd prime powers `q` with `lo <= q <= hi`, ascending.
pub fn odd_prime_powers(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(3)..=hi)
        .filter(|&q| q % 2 == 1 && prime_power(q).is_some())
        .collect()
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_below_50() {
        let primes: Vec<u64> = (0..50).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]);
    }

    #[test]
    fn factorization_multiplies_back() {
        for n in 1..2000u64 {
            let f = factorize(n);
            assert_eq!(f.iter().product::<u64>(), n);
            assert!(f.iter().all(|&p| is_prime(p)));
            assert!(f.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(17), Some((17, 1)));
        assert_eq!(prime_power(45), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(
            odd_prime_powers(1, 30),
            vec![3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29]
        );
    }
}
