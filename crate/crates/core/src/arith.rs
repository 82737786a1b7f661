//! Integer and modular helpers shared by the rest of the crate.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    let (a, b) = (a % m, b % m);
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

/// Canonical representative of a signed integer mod `m`.
#[inline]
pub fn reduce_signed(a: i128, m: u64) -> u64 {
    a.rem_euclid(m as i128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m` (any modulus), if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = ((a % m) as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(reduce_signed(old_s, m))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    // Miller-Rabin with a base set that is deterministic for 64-bit inputs.
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
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

/// Prime factorisation by trial division, as `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `Some((p, k))` when `n = p^k` with `p` prime and `k ≥ 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    let f = factorize(n);
    match f.as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

/// ℓ-adic valuation of a nonzero integer.
pub fn valuation(mut n: u64, ell: u64) -> u32 {
    assert!(n != 0 && ell > 1);
    let mut v = 0;
    while n.is_multiple_of(ell) {
        n /= ell;
        v += 1;
    }
    v
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc = 1u64;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Multiplicative order of `a` modulo `m`, or `None` if `a` is not a unit.
pub fn mult_order(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    if gcd(a % m, m) != 1 {
        return None;
    }
    let group = euler_phi(m);
    let mut ord = group;
    for (p, _) in factorize(group) {
        while ord.is_multiple_of(p) && pow_mod(a, ord / p, m) == 1 {
            ord /= p;
        }
    }
    Some(ord)
}

/// Smallest primitive root modulo a prime.
pub fn primitive_root(p: u64) -> u64 {
    assert!(is_prime(p));
    if p == 2 {
        return 1;
    }
    (2..p).find(|&g| mult_order(g, p) == Some(p - 1)).expect("prime field has a generator")
}

/// Legendre symbol style test: is `a` a nonzero square mod the odd prime `p`?
pub fn is_square_mod(a: u64, p: u64) -> bool {
    let a = a % p;
    if a == 0 {
        return true;
    }
    if p == 2 {
        return true;
    }
    pow_mod(a, (p - 1) / 2, p) == 1
}

/// Both square roots of `a` mod the prime `p`, smaller first.
pub fn sqrt_mod(a: u64, p: u64) -> Option<(u64, u64)> {
    let a = a % p;
    if a == 0 {
        return Some((0, 0));
    }
    if !is_square_mod(a, p) {
        return None;
    }
    // Tonelli-Shanks.
    if p == 2 {
        return Some((a, a));
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| !is_square_mod(z, p)).expect("non-residue exists");
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    let other = p - r;
    Some((r.min(other), r.max(other)))
}

/// Binomial coefficient as i128 (small arguments only).
pub fn binomial(n: u64, k: u64) -> i128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_orders() {
        assert!(is_prime(7) && is_prime(19) && !is_prime(21) && !is_prime(1));
        assert_eq!(mult_order(2, 7), Some(3));
        assert_eq!(mult_order(8, 19), Some(6));
        assert_eq!(mult_order(7, 49), None);
        assert_eq!(primitive_root(7), 3);
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(12), None);
    }

    #[test]
    fn square_roots() {
        assert_eq!(sqrt_mod(2, 7), Some((3, 4)));
        assert_eq!(sqrt_mod(8, 19), None);
        assert_eq!(sqrt_mod(3, 13), Some((4, 9)));
        for p in [5u64, 13, 17, 41] {
            for a in 1..p {
                if let Some((r, s)) = sqrt_mod(a, p) {
                    assert_eq!(mul_mod(r, r, p), a);
                    assert_eq!(mul_mod(s, s, p), a);
                }
            }
        }
    }

    #[test]
    fn inverses() {
        assert_eq!(inv_mod(3, 49), Some(33));
        assert_eq!(inv_mod(7, 49), None);
        assert_eq!(euler_phi(147), 84);
    }
}
