//! Small integer helpers shared by the ring and module code.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `lcm(a, 0) = 0`, matching the ideal convention `kZ ∩ 0 = 0`.
pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Divisibility with the ideal convention: `0 | x` iff `x == 0`.
pub fn divides(d: u64, x: u64) -> bool {
    if d == 0 {
        x == 0
    } else {
        x.is_multiple_of(d)
    }
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Product of the distinct prime factors; `radical(0) = 0`, `radical(1) = 1`.
pub fn radical(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    prime_factors(n).into_iter().product()
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u128;
    let mut b = (base % m) as u128;
    let m = m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radical_values() {
        assert_eq!(radical(12), 6);
        assert_eq!(radical(0), 0);
        assert_eq!(radical(1), 1);
        assert_eq!(radical(36), 6);
        assert_eq!(radical(17), 17);
    }

    #[test]
    fn lcm_gcd_conventions() {
        assert_eq!(gcd(4, 6), 2);
        assert_eq!(gcd(0, 6), 6);
        assert_eq!(lcm(4, 6), 12);
        assert_eq!(lcm(0, 6), 0);
        assert!(divides(0, 0));
        assert!(!divides(0, 3));
        assert!(divides(3, 0));
    }

    #[test]
    fn pow_mod_small() {
        assert_eq!(pow_mod(2, 10, 1000), 24);
        assert_eq!(pow_mod(5, 0, 7), 1);
        assert_eq!(pow_mod(5, 3, 1), 0);
    }
}
