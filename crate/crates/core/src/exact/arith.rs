use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::poly::IntPoly;

/// Deterministic primality for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    num_prime::nt_funcs::is_prime64(n)
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime_after(n: u64) -> u64 {
    let mut k = n + 1;
    while !is_prime(k) {
        k += 1;
    }
    k
}

pub fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc: u128 = 1 % m as u128;
    let m128 = m as u128;
    let mut base = (b % m) as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m128;
        }
        base = base * base % m128;
        e >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: &BigInt, m: u64) -> Option<u64> {
    let mb = BigInt::from(m);
    let e = a.mod_floor(&mb).extended_gcd(&mb);
    e.gcd.is_one().then(|| e.x.mod_floor(&mb).to_u64().unwrap())
}

/// Residues `x in [0, p)` with `f(x) = 0 mod p`, by exhaustive evaluation.
pub fn roots_mod_p(f: &IntPoly, p: u64) -> Vec<u64> {
    (0..p).filter(|&x| f.eval_mod(x, p) == 0).collect()
}

/// `C_i = binom(2i, i) / (i + 1)`.
pub fn catalan(i: u64) -> BigInt {
    num_integer::binomial(BigInt::from(2 * i), BigInt::from(i)) / BigInt::from(i + 1)
}

/// Squarefreeness of a nonzero integer below `2^128` in absolute value; `None` when too large.
pub fn is_squarefree(x: &BigInt) -> Option<bool> {
    let m = x.magnitude().to_u128()?;
    if m == 0 {
        return Some(false);
    }
    Some(num_prime::nt_funcs::factorize128(m).values().all(|&e| e == 1))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_values() {
        let v: Vec<BigInt> = (0..8).map(catalan).collect();
        let want = [1, 1, 2, 5, 14, 42, 132, 429];
        assert!(v.iter().zip(want).all(|(a, b)| *a == BigInt::from(b)));
    }

    #[test]
    fn primes_and_inverses() {
        assert!(is_prime(89) && !is_prime(91));
        assert_eq!(next_prime_after(89), 97);
        assert_eq!(inv_mod(&BigInt::from(5), 11), Some(9));
        assert_eq!(inv_mod(&BigInt::from(-5), 11), Some(2));
        assert_eq!(pow_mod(2, 10, 1000), 24);
    }

    #[test]
    fn roots() {
        let f = IntPoly::from_i64(&[-1, 0, 1]);
        assert_eq!(roots_mod_p(&f, 7), vec![1, 6]);
    }
}
