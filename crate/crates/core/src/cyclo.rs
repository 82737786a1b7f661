//! Exact arithmetic in cyclotomic integer rings `Z[ζ_L]`.
//!
//! Elements are kept in a redundant sparse form `Σ c_k ζ_L^k` with
//! `k ∈ [0, L)`; equality and integrality tests reduce to the canonical
//! power-basis coordinates modulo `Φ_L`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::arith::{euler_phi, gcd, lcm};

/// A rational angle `a/b`, standing for `exp(2πi·a/b)`, reduced mod 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Angle {
    num: u64,
    den: u64,
}

impl Angle {
    pub const ZERO: Angle = Angle { num: 0, den: 1 };

    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0, "angle denominator must be positive");
        let n = num.rem_euclid(den as i64) as u64;
        let g = gcd(n, den).max(1);
        Angle { num: n / g, den: den / g }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// Multiplicative order of the root of unity.
    pub fn order(&self) -> u64 {
        self.den
    }

    pub fn scale(&self, k: i64) -> Angle {
        Angle::new((self.num as i64) * k, self.den)
    }
}

impl Add for Angle {
    type Output = Angle;
    fn add(self, rhs: Angle) -> Angle {
        let den = lcm(self.den, rhs.den);
        let num = self.num * (den / self.den) + rhs.num * (den / rhs.den);
        Angle::new(num as i64, den)
    }
}

impl Neg for Angle {
    type Output = Angle;
    fn neg(self) -> Angle {
        Angle::new(-(self.num as i64), self.den)
    }
}

impl Sub for Angle {
    type Output = Angle;
    fn sub(self, rhs: Angle) -> Angle {
        self + (-rhs)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// `Φ_n` as integer coefficients, lowest degree first.
pub fn cyclotomic_poly(n: u64) -> Vec<i128> {
    assert!(n >= 1);
    // x^n - 1
    let mut num = vec![0i128; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = poly_div_exact(&num, &cyclotomic_poly(d));
        }
    }
    num
}

fn poly_div_exact(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    assert_eq!(den[dd], 1, "monic divisor");
    let qlen = rem.len() - dd;
    let mut quot = vec![0i128; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

/// An element of `Z[ζ_L]`.
#[derive(Debug, Clone)]
pub struct Cyclo {
    order: u64,
    terms: BTreeMap<u64, i128>,
}

impl Cyclo {
    pub fn zero(order: u64) -> Self {
        assert!(order >= 1);
        Cyclo { order, terms: BTreeMap::new() }
    }

    pub fn from_int(order: u64, c: i128) -> Self {
        let mut z = Cyclo::zero(order);
        z.add_term(0, c);
        z
    }

    pub fn one(order: u64) -> Self {
        Cyclo::from_int(order, 1)
    }

    /// `ζ_L^k`.
    pub fn root(order: u64, k: i64) -> Self {
        let mut z = Cyclo::zero(order);
        z.add_term(k.rem_euclid(order as i64) as u64, 1);
        z
    }

    /// `exp(2πi·angle)`, which must lie in `Q(ζ_L)`.
    pub fn from_angle(order: u64, angle: Angle) -> Self {
        assert!(order.is_multiple_of(angle.den()), "angle {angle} not in Q(zeta_{order})");
        Cyclo::root(order, (angle.num() * (order / angle.den())) as i64)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    fn add_term(&mut self, k: u64, c: i128) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(k % self.order).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&(k % self.order));
        }
    }

    pub fn scale(&self, c: i128) -> Self {
        let mut out = Cyclo::zero(self.order);
        for (&k, &v) in &self.terms {
            out.add_term(k, v * c);
        }
        out
    }

    /// Add `c·self·other` into a dense coefficient buffer of length `order`,
    /// indexed by powers of `ζ_L` (no reduction).
    pub fn add_product_into(&self, other: &Cyclo, c: i128, acc: &mut [i128]) {
        assert!(self.order == other.order && acc.len() as u64 == self.order);
        let l = self.order;
        for (&i, &x) in &self.terms {
            for (&j, &y) in &other.terms {
                acc[((i + j) % l) as usize] += c * x * y;
            }
        }
    }

    pub fn from_dense(order: u64, coeffs: &[i128]) -> Self {
        let mut z = Cyclo::zero(order);
        for (k, &c) in coeffs.iter().enumerate() {
            z.add_term(k as u64, c);
        }
        z
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let mut out = Cyclo::zero(self.order);
        for (&k, &v) in &self.terms {
            out.add_term((self.order - k) % self.order, v);
        }
        out
    }

    /// Re-express in `Z[ζ_M]` for a multiple `M` of the current order.
    pub fn lift(&self, order: u64) -> Self {
        assert!(order.is_multiple_of(self.order));
        let f = order / self.order;
        let mut out = Cyclo::zero(order);
        for (&k, &v) in &self.terms {
            out.add_term(k * f, v);
        }
        out
    }

    /// Coordinates on the power basis `1, ζ, …, ζ^{φ(L)-1}`.
    pub fn canonical(&self) -> Vec<i128> {
        let l = self.order as usize;
        let phi = euler_phi(self.order) as usize;
        let mut v = vec![0i128; l.max(1)];
        for (&k, &c) in &self.terms {
            v[k as usize] += c;
        }
        if phi < l {
            let cp = cyclotomic_poly(self.order);
            for k in (phi..l).rev() {
                let c = v[k];
                if c != 0 {
                    for (i, &p) in cp.iter().enumerate() {
                        v[k - phi + i] -= c * p;
                    }
                }
            }
        }
        v.truncate(phi);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() || self.canonical().iter().all(|&c| c == 0)
    }

    /// The rational integer this element equals, if any.
    pub fn as_integer(&self) -> Option<i128> {
        let v = self.canonical();
        if v.iter().skip(1).all(|&c| c == 0) {
            Some(v.first().copied().unwrap_or(0))
        } else {
            None
        }
    }

    /// `√p` for `p ∈ {2, 3}` inside `Z[ζ_L]`, when it lives there.
    pub fn sqrt_prime(order: u64, p: u64) -> Option<Cyclo> {
        let base = match p {
            2 => 8,
            3 => 12,
            _ => return None,
        };
        if !order.is_multiple_of(base) {
            return None;
        }
        let r = Cyclo::root(base, 1);
        Some((r.clone() + r.conj()).lift(order))
    }

    /// Write `self = a + b√p`, if possible with integers `a, b`.
    pub fn as_zsqrt(&self, p: Option<u64>) -> Option<(i128, i128)> {
        if let Some(a) = self.as_integer() {
            return Some((a, 0));
        }
        let p = p?;
        let s = Cyclo::sqrt_prime(self.order, p)?.canonical();
        let z = self.canonical();
        let i = (1..s.len()).find(|&i| s[i] != 0)?;
        if z[i] % s[i] != 0 {
            return None;
        }
        let b = z[i] / s[i];
        let a = z[0] - b * s[0];
        let ok = z.iter().enumerate().all(|(k, &zk)| {
            let expect = if k == 0 { a + b * s[0] } else { b * s[k] };
            zk == expect
        });
        ok.then_some((a, b))
    }

    fn align(&self, other: &Cyclo) -> (Cyclo, Cyclo) {
        if self.order == other.order {
            return (self.clone(), other.clone());
        }
        let l = lcm(self.order, other.order);
        (self.lift(l), other.lift(l))
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.align(other);
        (a - b).is_zero()
    }
}

impl Add for Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: Cyclo) -> Cyclo {
        let (mut a, b) = self.align(&rhs);
        for (&k, &v) in &b.terms {
            a.add_term(k, v);
        }
        a
    }
}

impl Sub for Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: Cyclo) -> Cyclo {
        self + rhs.scale(-1)
    }
}

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        self.scale(-1)
    }
}

impl Mul for &Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &Cyclo) -> Cyclo {
        let (a, b) = self.align(rhs);
        let mut out = Cyclo::zero(a.order);
        for (&i, &x) in &a.terms {
            for (&j, &y) in &b.terms {
                out.add_term(i + j, x * y);
            }
        }
        out
    }
}

impl Mul for Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: Cyclo) -> Cyclo {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_sum_to_zero() {
        let s = (0..5).fold(Cyclo::zero(5), |acc, k| acc + Cyclo::root(5, k));
        assert!(s.is_zero());
        // 1 + ζ3 + ζ3² = 0, seen inside Q(ζ12)
        let t = Cyclo::one(12) + Cyclo::root(12, 4) + Cyclo::root(12, 8);
        assert!(t.is_zero());
    }

    #[test]
    fn sqrt_extraction() {
        let s2 = Cyclo::sqrt_prime(8, 2).unwrap();
        assert_eq!((&s2 * &s2).as_integer(), Some(2));
        assert_eq!(s2.as_zsqrt(Some(2)), Some((0, 1)));
        let s3 = Cyclo::sqrt_prime(24, 3).unwrap();
        assert_eq!((&s3 * &s3).as_integer(), Some(3));
        let z = Cyclo::from_int(24, 5) + s3.scale(-2);
        assert_eq!(z.as_zsqrt(Some(3)), Some((5, -2)));
        assert_eq!(Cyclo::root(3, 1).as_zsqrt(None), None);
    }

    #[test]
    fn angles() {
        let a = Angle::new(-1, 6);
        assert_eq!(a, Angle::new(5, 6));
        assert_eq!(Angle::new(1, 2) + Angle::new(1, 2), Angle::ZERO);
        assert_eq!(Angle::new(2, 4).order(), 2);
    }
}
