//! Prime factorization of `u128` values (used only to certify
//! multiplicative orders in GF(3^m)^*).

fn mul_mod(a: u128, b: u128, n: u128) -> u128 {
    if a < (1 << 64) && b < (1 << 64) {
        return (a * b) % n;
    }
    let (mut a, mut b) = (a % n, b % n);
    let mut acc = 0u128;
    while b > 0 {
        if b & 1 == 1 {
            acc = add_mod(acc, a, n);
        }
        a = add_mod(a, a, n);
        b >>= 1;
    }
    acc
}

fn add_mod(a: u128, b: u128, n: u128) -> u128 {
    if a >= n - b {
        a - (n - b)
    } else {
        a + b
    }
}

fn pow_mod(mut base: u128, mut e: u128, n: u128) -> u128 {
    let mut acc = 1 % n;
    base %= n;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        e >>= 1;
    }
    acc
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Miller-Rabin with the first 20 prime bases.
pub fn is_prime(n: u128) -> bool {
    const BASES: [u128; 20] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    ];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Pollard-Brent; `n` must be odd composite.
fn pollard_brent(n: u128) -> u128 {
    let mut c = 1u128;
    loop {
        let f = |x: u128| add_mod(mul_mod(x, x, n), c, n);
        let (mut x, mut y, mut g) = (2u128, 2u128, 1u128);
        let mut r = 1u64;
        let mut q = 1u128;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                let lim = 128.min(r - k);
                for _ in 0..lim {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += lim;
            }
            r *= 2;
        }
        if g == n {
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
        c += 1;
    }
}

/// Distinct prime factors of `n`, ascending.
pub fn distinct_prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut p = 2u128;
    while p < 10_000 && p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            out.push(m);
            continue;
        }
        let d = pollard_brent(m);
        stack.push(d);
        stack.push(m / d);
    }
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(distinct_prime_factors(1), Vec::<u128>::new());
        assert_eq!(distinct_prime_factors(2), vec![2]);
        assert_eq!(distinct_prime_factors(728), vec![2, 7, 13]);
        assert_eq!(distinct_prime_factors(80), vec![2, 5]);
    }

    #[test]
    fn large_mersenne_like() {
        // 3^52 - 1 and 3^80 - 1 factor completely and the product of the
        // prime powers reconstructs the value
        for m in [23u32, 52, 64, 80] {
            let n = 3u128.pow(m) - 1;
            let ps = distinct_prime_factors(n);
            let mut rest = n;
            for &p in &ps {
                assert!(is_prime(p));
                while rest % p == 0 {
                    rest /= p;
                }
            }
            assert_eq!(rest, 1, "m = {m}");
        }
    }

    #[test]
    fn primality() {
        let primes = [2u128, 3, 5, 97, 7919, 1_000_000_007, 18446744073709551557];
        for p in primes {
            assert!(is_prime(p), "{p}");
        }
        for c in [1u128, 4, 561, 1_000_000_007 * 3, 18446744073709551557 * 5] {
            assert!(!is_prime(c), "{c}");
        }
    }
}
