//! Degrees, twist factors and Coxeter numbers of twisted Cartan types, with
//! the order polynomials of the finite group and of its Coxeter torus.
//!
//! The `(d_j, ε_j)` tables are classical data; the Coxeter number `h` is not
//! stored but recomputed from them as the largest `d` with `a(d) ≠ 0`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::lcm;
use crate::cyclo::{Angle, Cyclo};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
    #[serde(rename = "2A")]
    TwoA,
    #[serde(rename = "2B2")]
    TwoB2,
    #[serde(rename = "2D")]
    TwoD,
    #[serde(rename = "3D4")]
    ThreeD4,
    #[serde(rename = "2E6")]
    TwoE6,
    #[serde(rename = "2F4")]
    TwoF4,
    #[serde(rename = "2G2")]
    TwoG2,
}

impl Family {
    pub const ALL: [Family; 16] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E6,
        Family::E7,
        Family::E8,
        Family::F4,
        Family::G2,
        Family::TwoA,
        Family::TwoB2,
        Family::TwoD,
        Family::ThreeD4,
        Family::TwoE6,
        Family::TwoF4,
        Family::TwoG2,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E6 => "E6",
            Family::E7 => "E7",
            Family::E8 => "E8",
            Family::F4 => "F4",
            Family::G2 => "G2",
            Family::TwoA => "2A",
            Family::TwoB2 => "2B2",
            Family::TwoD => "2D",
            Family::ThreeD4 => "3D4",
            Family::TwoE6 => "2E6",
            Family::TwoF4 => "2F4",
            Family::TwoG2 => "2G2",
        }
    }

    /// The rank forced by the family name, for exceptional families.
    pub fn fixed_rank(&self) -> Option<u32> {
        match self {
            Family::E6 | Family::TwoE6 => Some(6),
            Family::E7 => Some(7),
            Family::E8 => Some(8),
            Family::F4 | Family::TwoF4 | Family::ThreeD4 => Some(4),
            Family::G2 | Family::TwoB2 | Family::TwoG2 => Some(2),
            _ => None,
        }
    }

    fn min_rank(&self) -> u32 {
        match self {
            Family::A => 1,
            Family::B | Family::C | Family::TwoA => 2,
            Family::D | Family::TwoD => 4,
            _ => self.fixed_rank().unwrap_or(1),
        }
    }

    /// Suzuki and Ree families, where `q` is an odd power of `√p`.
    pub fn is_suzuki_ree(&self) -> bool {
        matches!(self, Family::TwoB2 | Family::TwoF4 | Family::TwoG2)
    }

    /// The prime `p` with `q² = p^{2m+1}` for Suzuki/Ree families.
    pub fn sqrt_prime(&self) -> Option<u64> {
        match self {
            Family::TwoB2 | Family::TwoF4 => Some(2),
            Family::TwoG2 => Some(3),
            _ => None,
        }
    }

    /// Order of the twist σ.
    pub fn delta(&self) -> u64 {
        match self {
            Family::A
            | Family::B
            | Family::C
            | Family::D
            | Family::E6
            | Family::E7
            | Family::E8
            | Family::F4
            | Family::G2 => 1,
            Family::ThreeD4 => 3,
            _ => 2,
        }
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let up = s.trim().to_ascii_uppercase();
        Family::ALL.iter().copied().find(|f| f.name() == up).ok_or_else(|| Error::UnsupportedType(s.to_string()))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwistedType {
    pub family: Family,
    pub rank: u32,
}

impl TwistedType {
    pub fn new(family: Family, rank: u32) -> Result<Self> {
        let ok = match family.fixed_rank() {
            Some(r) => rank == r,
            None => rank >= family.min_rank(),
        };
        if !ok {
            return Err(Error::UnsupportedType(format!("{family} with rank {rank}")));
        }
        Ok(TwistedType { family, rank })
    }

    /// Parse names such as `E8`, `2G2`, `A2` or `2A` (the latter needing `rank`).
    pub fn parse(name: &str, rank: Option<u32>) -> Result<Self> {
        let name = name.trim();
        if let Ok(family) = name.parse::<Family>() {
            let rank = match (family.fixed_rank(), rank) {
                (Some(r), None) => r,
                (_, Some(r)) => r,
                (None, None) => {
                    return Err(Error::UnsupportedType(format!("{name} needs a rank")));
                }
            };
            return TwistedType::new(family, rank);
        }
        // Classical names with the rank attached: A2, 2A3, B4, 2D5 ...
        let split = name.find(|c: char| c.is_ascii_digit() && !name.starts_with(c)).or_else(|| {
            let skip = name.chars().take_while(|c| c.is_ascii_digit()).count();
            name[skip..].find(|c: char| c.is_ascii_digit()).map(|i| i + skip)
        });
        if let Some(i) = split {
            let (fam, r) = name.split_at(i);
            if let (Ok(family), Ok(r)) = (fam.parse::<Family>(), r.parse::<u32>()) {
                if family.fixed_rank().is_none() {
                    if let Some(given) = rank {
                        if given != r {
                            return Err(Error::UnsupportedType(format!("{name} conflicts with rank {given}")));
                        }
                    }
                    return TwistedType::new(family, r);
                }
            }
        }
        Err(Error::UnsupportedType(name.to_string()))
    }
}

impl fmt::Display for TwistedType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family.fixed_rank() {
            Some(_) => write!(f, "{}", self.family),
            None => write!(f, "{}{}", self.family, self.rank),
        }
    }
}

/// Degrees `d_j` and twist angles `ε_j` (classical data).
fn degree_table(ty: TwistedType) -> Vec<(u64, Angle)> {
    let n = ty.rank as u64;
    let one = Angle::ZERO;
    let minus = Angle::new(1, 2);
    let untwisted = |ds: &[u64]| ds.iter().map(|&d| (d, one)).collect::<Vec<_>>();
    let parity = |d: u64| if d % 2 == 1 { minus } else { one };
    match ty.family {
        Family::A => (2..=n + 1).map(|d| (d, one)).collect(),
        Family::B | Family::C => (1..=n).map(|i| (2 * i, one)).collect(),
        Family::D => {
            let mut v: Vec<_> = (1..n).map(|i| (2 * i, one)).collect();
            v.push((n, one));
            v
        }
        Family::E6 => untwisted(&[2, 5, 6, 8, 9, 12]),
        Family::E7 => untwisted(&[2, 6, 8, 10, 12, 14, 18]),
        Family::E8 => untwisted(&[2, 8, 12, 14, 18, 20, 24, 30]),
        Family::F4 => untwisted(&[2, 6, 8, 12]),
        Family::G2 => untwisted(&[2, 6]),
        Family::TwoA => (2..=n + 1).map(|d| (d, parity(d))).collect(),
        Family::TwoD => {
            let mut v: Vec<_> = (1..n).map(|i| (2 * i, one)).collect();
            v.push((n, minus));
            v
        }
        Family::ThreeD4 => vec![(2, one), (4, Angle::new(1, 3)), (6, one), (4, Angle::new(2, 3))],
        Family::TwoE6 => [2, 5, 6, 8, 9, 12].iter().map(|&d| (d, parity(d))).collect(),
        Family::TwoB2 => vec![(2, one), (4, minus)],
        Family::TwoG2 => vec![(2, one), (6, minus)],
        Family::TwoF4 => vec![(2, one), (6, minus), (8, one), (12, minus)],
    }
}

/// Number of φ-orbits on the simple roots, i.e. the length of a Coxeter element.
fn coxeter_length(ty: TwistedType) -> u64 {
    let n = ty.rank as u64;
    match ty.family {
        Family::TwoA => n.div_ceil(2),
        Family::TwoD => n - 1,
        Family::ThreeD4 => 2,
        Family::TwoE6 => 4,
        Family::TwoB2 | Family::TwoG2 => 1,
        Family::TwoF4 => 2,
        _ => n,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoxeterDatum {
    pub ty: TwistedType,
    /// Dimension of the reflection representation.
    pub m: usize,
    pub degrees: Vec<u64>,
    pub epsilons: Vec<Angle>,
    pub h: u64,
    pub delta: u64,
    pub h0: u64,
    pub r: u64,
    /// Number of positive roots.
    pub n_pos: u64,
}

/// `#{j : ε_j = exp(2πi d_j / d)}`.
fn a_count(degrees: &[u64], epsilons: &[Angle], d: u64) -> usize {
    degrees.iter().zip(epsilons).filter(|(&dj, &e)| Angle::new(dj as i64, d) == e).count()
}

pub fn coxeter_datum(ty: TwistedType) -> Result<CoxeterDatum> {
    let ty = TwistedType::new(ty.family, ty.rank)?;
    let table = degree_table(ty);
    let degrees: Vec<u64> = table.iter().map(|&(d, _)| d).collect();
    let epsilons: Vec<Angle> = table.iter().map(|&(_, e)| e).collect();
    let bound = table.iter().map(|&(d, e)| d * e.den()).max().unwrap_or(1);
    let h = (1..=bound)
        .rev()
        .find(|&d| a_count(&degrees, &epsilons, d) > 0)
        .ok_or_else(|| Error::UnsupportedType(format!("{ty}: no Coxeter number")))?;
    let delta = ty.family.delta();
    if h % delta != 0 {
        return Err(Error::IntegralityFailure(format!("{ty}: delta {delta} does not divide h {h}")));
    }
    let datum = CoxeterDatum {
        ty,
        m: degrees.len(),
        n_pos: degrees.iter().map(|d| d - 1).sum(),
        degrees,
        epsilons,
        h,
        delta,
        h0: h / delta,
        r: coxeter_length(ty),
    };
    debug_assert_eq!(a_function(&datum, datum.h), 1);
    Ok(datum)
}

pub fn a_function(datum: &CoxeterDatum, d: u64) -> usize {
    assert!(d >= 1, "a(d) needs d >= 1");
    a_count(&datum.degrees, &datum.epsilons, d)
}

/// Eigenvalues `ε_j^{-1} exp(2πi (d_j - 1)/h)` of `cσ`, as angles.
pub fn csigma_eigenvalues(datum: &CoxeterDatum) -> Vec<Angle> {
    datum.degrees.iter().zip(&datum.epsilons).map(|(&d, &e)| Angle::new(d as i64 - 1, datum.h) - e).collect()
}

impl CoxeterDatum {
    /// `|W^F|`, the product of the degrees whose twist is trivial.
    pub fn weyl_fixed_order(&self) -> u64 {
        self.degrees.iter().zip(&self.epsilons).filter(|(_, e)| **e == Angle::ZERO).map(|(d, _)| *d).product()
    }

    /// Conductor used for the cyclotomic expansions of this type.
    fn conductor(&self) -> u64 {
        let mut l = self.h;
        for e in &self.epsilons {
            l = lcm(l, e.den());
        }
        match self.ty.family.sqrt_prime() {
            Some(2) => lcm(l, 8),
            Some(3) => lcm(l, 12),
            _ => l,
        }
    }
}

/// `a + b√p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ZSqrt {
    pub a: i128,
    pub b: i128,
    pub p: u64,
}

impl ZSqrt {
    pub fn int(a: i128, p: u64) -> Self {
        ZSqrt { a, b: 0, p }
    }

    pub fn conj(self) -> ZSqrt {
        ZSqrt { b: -self.b, ..self }
    }

    pub fn norm(self) -> i128 {
        self.a * self.a - self.p as i128 * self.b * self.b
    }

    /// Exact quotient in `Z[√p]`, if it exists.
    pub fn div_exact(self, o: ZSqrt) -> Option<ZSqrt> {
        let n = o.norm();
        if n == 0 {
            return None;
        }
        let t = self * o.conj();
        (t.a % n == 0 && t.b % n == 0).then_some(ZSqrt { a: t.a / n, b: t.b / n, p: self.p })
    }

    pub fn as_integer(self) -> Option<i128> {
        (self.b == 0).then_some(self.a)
    }
}

impl std::ops::Add for ZSqrt {
    type Output = ZSqrt;

    fn add(self, o: ZSqrt) -> ZSqrt {
        ZSqrt { a: self.a + o.a, b: self.b + o.b, p: self.p }
    }
}

impl std::ops::Mul for ZSqrt {
    type Output = ZSqrt;

    fn mul(self, o: ZSqrt) -> ZSqrt {
        let p = self.p as i128;
        ZSqrt { a: self.a * o.a + p * self.b * o.b, b: self.a * o.b + self.b * o.a, p: self.p }
    }
}

impl fmt::Display for ZSqrt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.b {
            0 => write!(f, "{}", self.a),
            b => write!(f, "{} + {}*sqrt({})", self.a, b, self.p),
        }
    }
}

/// A polynomial in `q` with coefficients `a + b√p`, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycloPoly {
    pub coeffs: Vec<(i128, i128)>,
    /// `Some(p)` for Suzuki/Ree types; all `b` parts vanish otherwise.
    pub sqrt_p: Option<u64>,
}

impl CycloPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|&(a, b)| a != 0 || b != 0).unwrap_or(0)
    }

    /// Integer coefficients, when every `√p` part vanishes.
    pub fn integer_coeffs(&self) -> Option<Vec<i128>> {
        self.coeffs.iter().map(|&(a, b)| (b == 0).then_some(a)).collect()
    }

    pub fn evaluate(&self, q: ZSqrt) -> ZSqrt {
        let p = q.p;
        self.coeffs.iter().rev().fold(ZSqrt::int(0, p), |acc, &(a, b)| acc * q + ZSqrt { a, b, p })
    }
}

impl fmt::Display for CycloPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let root = self.sqrt_p.map(|p| format!("sqrt({p})")).unwrap_or_default();
        for (k, &(a, b)) in self.coeffs.iter().enumerate() {
            for (c, unit) in [(a, ""), (b, root.as_str())] {
                if c == 0 {
                    continue;
                }
                let sign = if c < 0 { "-" } else { "+" };
                if first {
                    if c < 0 {
                        f.write_str("-")?;
                    }
                } else {
                    write!(f, " {sign} ")?;
                }
                first = false;
                let mag = c.unsigned_abs();
                let mut parts: Vec<String> = Vec::new();
                if mag != 1 || (unit.is_empty() && k == 0) {
                    parts.push(mag.to_string());
                }
                if !unit.is_empty() {
                    parts.push(unit.to_string());
                }
                match k {
                    0 => {}
                    1 => parts.push("q".into()),
                    _ => parts.push(format!("q^{k}")),
                }
                f.write_str(&parts.join("*"))?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

type CPoly = Vec<Cyclo>;

fn cpoly_mul(a: &CPoly, b: &CPoly, order: u64) -> CPoly {
    let mut out = vec![Cyclo::zero(order); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x * y;
        }
    }
    out
}

fn into_cyclo_poly(poly: CPoly, sqrt_p: Option<u64>, what: &str) -> Result<CycloPoly> {
    let coeffs = poly
        .iter()
        .enumerate()
        .map(|(k, c)| {
            c.as_zsqrt(sqrt_p)
                .ok_or_else(|| Error::IntegralityFailure(format!("{what}: coefficient of q^{k} is not in Z[sqrt p]")))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = CycloPoly { coeffs, sqrt_p };
    let deg = out.degree();
    out.coeffs.truncate(deg + 1);
    Ok(out)
}

/// `|G| = q^N ∏ (q^{d_j} − ε_j^{-1})`.
pub fn group_order_poly(datum: &CoxeterDatum) -> Result<CycloPoly> {
    let l = datum.conductor();
    let mut acc: CPoly = vec![Cyclo::zero(l); datum.n_pos as usize];
    acc.push(Cyclo::one(l));
    for (&d, &e) in datum.degrees.iter().zip(&datum.epsilons) {
        let mut factor = vec![Cyclo::zero(l); d as usize + 1];
        factor[0] = -Cyclo::from_angle(l, -e);
        factor[d as usize] = Cyclo::one(l);
        acc = cpoly_mul(&acc, &factor, l);
    }
    into_cyclo_poly(acc, datum.ty.family.sqrt_prime(), "group order")
}

/// `|T_c| = det(1 − q·cσ) = ∏ (1 − q μ_j)`.
pub fn torus_order_poly(datum: &CoxeterDatum) -> Result<CycloPoly> {
    let l = datum.conductor();
    let mut acc: CPoly = vec![Cyclo::one(l)];
    for mu in csigma_eigenvalues(datum) {
        let factor = vec![Cyclo::one(l), -Cyclo::from_angle(l, mu)];
        acc = cpoly_mul(&acc, &factor, l);
    }
    into_cyclo_poly(acc, datum.ty.family.sqrt_prime(), "torus order")
}

/// The value of `q` in `Z[√p]` for the user-facing parameter: `q` itself for
/// ordinary types, `q²` for Suzuki/Ree types.
pub fn q_value(datum: &CoxeterDatum, qparam: u64) -> Result<ZSqrt> {
    let bad = |msg: String| Error::BadRegime { reason: crate::error::RegimeReason::BadQ, detail: msg };
    match datum.ty.family.sqrt_prime() {
        None => {
            if crate::arith::prime_power(qparam).is_none() {
                return Err(bad(format!("q = {qparam} is not a prime power")));
            }
            Ok(ZSqrt::int(qparam as i128, 1))
        }
        Some(p) => match crate::arith::prime_power(qparam) {
            Some((pp, k)) if pp == p && k % 2 == 1 => {
                let m = (k - 1) / 2;
                Ok(ZSqrt { a: 0, b: (p as i128).pow(m), p })
            }
            _ => Err(bad(format!("q^2 = {qparam} is not an odd power of {p}"))),
        },
    }
}

/// One row of the embedded degree tables, as used by the table checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub ty: TwistedType,
    pub degrees: Vec<u64>,
    pub epsilons: Vec<Angle>,
    pub delta: u64,
}

/// Every table row covered by the checksum: classical ranks up to 8.
pub fn table_rows() -> Vec<TableRow> {
    let mut rows = Vec::new();
    for family in Family::ALL {
        let ranks: Vec<u32> = match family.fixed_rank() {
            Some(r) => vec![r],
            None => (family.min_rank()..=8).collect(),
        };
        for rank in ranks {
            let ty = TwistedType { family, rank };
            let t = degree_table(ty);
            rows.push(TableRow {
                ty,
                degrees: t.iter().map(|x| x.0).collect(),
                epsilons: t.iter().map(|x| x.1).collect(),
                delta: family.delta(),
            });
        }
    }
    rows
}

/// FNV-1a over a canonical rendering of the rows.
pub fn table_checksum(rows: &[TableRow]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for row in rows {
        let line = format!(
            "{}|{:?}|{}|{}\n",
            row.ty,
            row.degrees,
            row.epsilons.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","),
            row.delta
        );
        for byte in line.bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    h
}

pub const TABLE_CHECKSUM: u64 = 0x1c6f_65e0_feac_431e;

/// Reference Coxeter numbers `(h, h0)` by closed formula in the rank.
pub fn reference_coxeter_numbers(ty: TwistedType) -> (u64, u64) {
    let n = ty.rank as u64;
    match ty.family {
        Family::A => (n + 1, n + 1),
        Family::B | Family::C => (2 * n, 2 * n),
        Family::D => (2 * n - 2, 2 * n - 2),
        Family::E6 => (12, 12),
        Family::E7 => (18, 18),
        Family::E8 => (30, 30),
        Family::F4 => (12, 12),
        Family::G2 => (6, 6),
        Family::TwoA if n.is_multiple_of(2) => (2 * n + 2, n + 1),
        Family::TwoA => (2 * n, n),
        Family::TwoD => (2 * n, n),
        Family::ThreeD4 => (12, 4),
        Family::TwoE6 => (18, 9),
        Family::TwoB2 => (8, 4),
        Family::TwoF4 => (24, 12),
        Family::TwoG2 => (12, 6),
    }
}

/// Checksum plus a recomputation of `h`, `h0` and `a(h) = 1` for every row.
pub fn verify_table_rows(rows: &[TableRow]) -> std::result::Result<(), String> {
    let sum = table_checksum(rows);
    if sum != TABLE_CHECKSUM {
        return Err(format!("table checksum {sum:#018x} != {TABLE_CHECKSUM:#018x}"));
    }
    for row in rows {
        let bound = row.degrees.iter().zip(&row.epsilons).map(|(d, e)| d * e.den()).max().unwrap_or(1);
        let h = (1..=bound).rev().find(|&d| a_count(&row.degrees, &row.epsilons, d) > 0).unwrap_or(0);
        let (h_ref, h0_ref) = reference_coxeter_numbers(row.ty);
        if h != h_ref || row.delta == 0 || h / row.delta != h0_ref || h % row.delta != 0 {
            return Err(format!("{}: h = {h} (expected {h_ref}), h0 expected {h0_ref}", row.ty));
        }
        if a_count(&row.degrees, &row.epsilons, h) != 1 {
            return Err(format!("{}: a(h) != 1", row.ty));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(name: &str, rank: Option<u32>) -> CoxeterDatum {
        coxeter_datum(TwistedType::parse(name, rank).unwrap()).unwrap()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(ty("E8", None).h, 30);
        assert_eq!(ty("3D4", None).h0, 4);
        assert_eq!(ty("2G2", None).h, 12);
    }

    #[test]
    fn parse_names() {
        assert_eq!(TwistedType::parse("A2", None).unwrap(), TwistedType { family: Family::A, rank: 2 });
        assert_eq!(TwistedType::parse("2A3", None).unwrap(), TwistedType { family: Family::TwoA, rank: 3 });
        assert_eq!(TwistedType::parse("2a", Some(4)).unwrap().rank, 4);
        assert_eq!(TwistedType::parse("3D4", None).unwrap().family, Family::ThreeD4);
        assert!(TwistedType::parse("E9", None).is_err());
        assert!(TwistedType::parse("D", Some(2)).is_err());
        assert!(matches!(TwistedType::parse("H3", None), Err(Error::UnsupportedType(_))));
    }

    #[test]
    fn eigenvalues_small() {
        let a2 = ty("A", Some(2));
        assert_eq!(csigma_eigenvalues(&a2), vec![Angle::new(1, 3), Angle::new(2, 3)]);
        let a1 = ty("A", Some(1));
        assert_eq!(csigma_eigenvalues(&a1), vec![Angle::new(1, 2)]);
    }

    #[test]
    fn a_function_examples() {
        assert_eq!(a_function(&ty("E8", None), 30), 1);
        let a2 = ty("A", Some(2));
        assert_eq!(a_function(&a2, 3), 1);
        assert_eq!(a_function(&a2, 1), 2);
    }

    #[test]
    fn order_polys_small() {
        let a1 = ty("A", Some(1));
        assert_eq!(group_order_poly(&a1).unwrap().integer_coeffs().unwrap(), vec![0, -1, 0, 1]);
        let a2 = ty("A", Some(2));
        let g = group_order_poly(&a2).unwrap();
        assert_eq!(g.evaluate(ZSqrt::int(2, 1)).as_integer(), Some(168));
        assert_eq!(torus_order_poly(&a2).unwrap().integer_coeffs().unwrap(), vec![1, 1, 1]);
        let g2 = ty("2G2", None);
        let t = torus_order_poly(&g2).unwrap();
        assert_eq!(t.coeffs, vec![(1, 0), (0, -1), (1, 0)]);
        assert_eq!(t.to_string(), "1 - sqrt(3)*q + q^2");
    }

    #[test]
    fn suzuki_ree_q_values() {
        let g2 = ty("2G2", None);
        let q = q_value(&g2, 27).unwrap();
        assert_eq!(q, ZSqrt { a: 0, b: 3, p: 3 });
        assert_eq!(torus_order_poly(&g2).unwrap().evaluate(q).as_integer(), Some(19));
        assert!(q_value(&g2, 9).is_err());
        assert!(q_value(&ty("A", Some(2)), 6).is_err());
    }

    #[test]
    fn weyl_orders() {
        assert_eq!(ty("A", Some(2)).weyl_fixed_order(), 6);
        assert_eq!(ty("2E6", None).weyl_fixed_order(), 1152);
        assert_eq!(ty("3D4", None).weyl_fixed_order(), 12);
        assert_eq!(ty("2F4", None).weyl_fixed_order(), 16);
    }

    #[test]
    fn corrupted_table_is_rejected() {
        let mut rows = table_rows();
        assert!(verify_table_rows(&rows).is_ok());
        let e8 = rows.iter_mut().find(|r| r.ty.family == Family::E8).unwrap();
        e8.degrees[7] = 28;
        assert!(verify_table_rows(&rows).is_err());
    }
}
