//! Arithmetic attached to a modular regime `(type, q, ℓ)`: the coefficient
//! field `F_ℓ` or `F_ℓ²`, the eigenvalue congruence table, Hensel lifting mod
//! `ℓ^N`, and generalized eigenspaces of matrices over `Z/ℓ^N`.

use serde::Serialize;

use crate::arith::{
    checked_pow, factorize, gcd, inv_mod, is_prime, is_square_mod, mul_mod, pow_mod, sqrt_mod, sub_mod,
};
use crate::error::{Error, RegimeReason, Result};
use crate::linalg::{self, Mat};
use crate::root_data::{q_value, torus_order_poly, CoxeterDatum, ZSqrt};

/// An element `a + b·t` of `F_ℓ[t]/(t² − s)`, `s` the least non-residue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Fq2 {
    pub a: u64,
    pub b: u64,
    #[serde(skip)]
    pub ell: u64,
    #[serde(skip)]
    pub s: u64,
}

/// Smallest quadratic non-residue mod an odd prime.
pub fn least_nonresidue(ell: u64) -> u64 {
    (2..ell).find(|&x| !is_square_mod(x, ell)).expect("odd prime has a non-residue")
}

impl Fq2 {
    pub fn base(a: u64, ell: u64) -> Self {
        Fq2 { a: a % ell, b: 0, ell, s: least_nonresidue(ell) }
    }

    pub fn new(a: u64, b: u64, ell: u64) -> Self {
        Fq2 { a: a % ell, b: b % ell, ell, s: least_nonresidue(ell) }
    }

    pub fn one(ell: u64) -> Self {
        Fq2::base(1, ell)
    }

    pub fn in_base_field(&self) -> bool {
        self.b == 0
    }

    pub fn pow(self, mut e: u64) -> Fq2 {
        let mut acc = Fq2::one(self.ell);
        let mut base = self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Multiplicative order; `None` for zero.
    pub fn order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let group = self.ell * self.ell - 1;
        let mut ord = group;
        for (p, _) in factorize(group) {
            while ord.is_multiple_of(p) && self.pow(ord / p) == Fq2::one(self.ell) {
                ord /= p;
            }
        }
        Some(ord)
    }

    /// Both square roots of a base-field element inside `F_ℓ²`, smaller first.
    pub fn sqrt_of_base(c: u64, ell: u64) -> (Fq2, Fq2) {
        let s = least_nonresidue(ell);
        if let Some((r0, r1)) = sqrt_mod(c, ell) {
            return (Fq2::base(r0, ell), Fq2::base(r1, ell));
        }
        // c = y²·s with y² = c/s a residue, so √c = ±y·t.
        let cs = mul_mod(c, inv_mod(s, ell).expect("s is a unit"), ell);
        let (y0, y1) = sqrt_mod(cs, ell).expect("c/s is a residue");
        (Fq2::new(0, y0, ell), Fq2::new(0, y1, ell))
    }
}

impl std::ops::Mul for Fq2 {
    type Output = Fq2;

    fn mul(self, o: Fq2) -> Fq2 {
        let l = self.ell;
        let a = (mul_mod(self.a, o.a, l) + mul_mod(mul_mod(self.b, o.b, l), self.s, l)) % l;
        let b = (mul_mod(self.a, o.b, l) + mul_mod(self.b, o.a, l)) % l;
        Fq2 { a, b, ..self }
    }
}

impl std::ops::Neg for Fq2 {
    type Output = Fq2;

    fn neg(self) -> Fq2 {
        Fq2 { a: sub_mod(0, self.a, self.ell), b: sub_mod(0, self.b, self.ell), ..self }
    }
}

impl std::fmt::Display for Fq2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.b {
            0 => write!(f, "{}", self.a),
            b => write!(f, "{}+{}t", self.a, b),
        }
    }
}

/// A validated Coxeter-case regime.
#[derive(Debug, Clone, Serialize)]
pub struct EllContext {
    pub datum: CoxeterDatum,
    pub ell: u64,
    /// `q²` for Suzuki/Ree types, `q` otherwise.
    pub qsq: u64,
    pub q: ZSqrt,
    /// `|T_c|` evaluated at `q`.
    pub torus_order: u128,
    pub q_mod: Fq2,
    pub qdelta_mod: u64,
    pub sqrt_qdelta: Fq2,
    pub precision: u32,
}

fn regime(reason: RegimeReason, detail: String) -> Error {
    Error::BadRegime { reason, detail }
}

pub fn default_precision(torus_order: u128, ell: u64) -> u32 {
    let mut v = 0;
    let mut t = torus_order;
    while t != 0 && t.is_multiple_of(ell as u128) {
        t /= ell as u128;
        v += 1;
    }
    2 * v + 1
}

pub fn validate_ell(datum: &CoxeterDatum, qsq: u64, ell: u64) -> Result<EllContext> {
    validate_ell_with_precision(datum, qsq, ell, None)
}

pub fn validate_ell_with_precision(
    datum: &CoxeterDatum,
    qsq: u64,
    ell: u64,
    precision: Option<u32>,
) -> Result<EllContext> {
    if !is_prime(ell) {
        return Err(regime(RegimeReason::BadPrime, format!("{ell} is not prime")));
    }
    let q = q_value(datum, qsq)?;
    if qsq.is_multiple_of(ell) {
        return Err(regime(RegimeReason::BadPrime, format!("ell = {ell} divides q")));
    }
    let w = datum.weyl_fixed_order();
    if w.is_multiple_of(ell) {
        return Err(regime(RegimeReason::DividesWeylOrder, format!("{ell} divides |W^F| = {w}")));
    }
    let torus = torus_order_poly(datum)?.evaluate(q);
    let torus_order = match torus.as_integer() {
        Some(t) => t.unsigned_abs(),
        None => torus.norm().unsigned_abs(),
    };
    if torus_order % ell as u128 != 0 {
        return Err(regime(RegimeReason::NotDividing, format!("{ell} does not divide |T_c| = {torus_order}")));
    }

    let candidates: Vec<Fq2> = match datum.ty.family.is_suzuki_ree() {
        false => vec![Fq2::base(qsq % ell, ell)],
        true => {
            let (r0, r1) = Fq2::sqrt_of_base(qsq % ell, ell);
            vec![r0, r1]
        }
    };
    let q_mod = candidates.iter().copied().find(|x| x.order() == Some(datum.h)).ok_or_else(|| {
        regime(RegimeReason::WrongOrder, format!("no admissible q mod {ell} has order h = {}", datum.h))
    })?;
    let qd = q_mod.pow(datum.delta);
    if !qd.in_base_field() {
        return Err(regime(RegimeReason::WrongOrder, format!("q^delta = {qd} is not in F_{ell}")));
    }
    let qdelta_mod = qd.a;
    if crate::arith::mult_order(qdelta_mod, ell) != Some(datum.h0) {
        return Err(regime(RegimeReason::WrongOrder, format!("q^delta = {qdelta_mod} does not have order h0")));
    }
    let sqrt_qdelta = choose_sqrt(q_mod, qdelta_mod, datum.h, ell);

    let precision = precision.unwrap_or_else(|| default_precision(torus_order, ell));
    if precision == 0 || checked_pow(ell, precision).is_none_or(|m| m >= 1 << 62) {
        return Err(Error::invalid(format!("precision {precision} too large for ell = {ell}")));
    }
    Ok(EllContext { datum: datum.clone(), ell, qsq, q, torus_order, q_mod, qdelta_mod, sqrt_qdelta, precision })
}

/// A square root of `q^δ`: a power of `q` when one squares to it, else the
/// smaller root.
fn choose_sqrt(q_mod: Fq2, qdelta: u64, h: u64, ell: u64) -> Fq2 {
    let target = Fq2::base(qdelta, ell);
    if let Some(k) = (0..h).find(|&k| q_mod.pow(2 * k) == target) {
        return q_mod.pow(k);
    }
    Fq2::sqrt_of_base(qdelta, ell).0
}

impl EllContext {
    /// `ℓ^{v_ℓ(|T_c|)}`.
    pub fn torus_ell_part(&self) -> u128 {
        let mut t = self.torus_order;
        let mut part = 1u128;
        while t.is_multiple_of(self.ell as u128) {
            t /= self.ell as u128;
            part *= self.ell as u128;
        }
        part
    }

    pub fn modulus(&self) -> u64 {
        checked_pow(self.ell, self.precision).expect("precision checked at validation")
    }
}

/// `j ↦ (q^δ)^j mod ℓ` for `j = 0..h0`.
pub fn eigenvalue_table(ctx: &EllContext) -> Vec<u64> {
    let table: Vec<u64> = (0..ctx.datum.h0).map(|j| pow_mod(ctx.qdelta_mod, j, ctx.ell)).collect();
    let mut sorted = table.clone();
    sorted.sort_unstable();
    sorted.dedup();
    assert_eq!(sorted.len() as u64, ctx.datum.h0, "eigenvalue table is not injective");
    table
}

/// An element of `Z/ℓ^N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TruncatedPadic {
    pub value: u64,
    pub ell: u64,
    pub n: u32,
}

impl TruncatedPadic {
    pub fn new(value: i128, ell: u64, n: u32) -> Result<Self> {
        let m = checked_pow(ell, n)
            .filter(|&m| m < 1 << 62)
            .ok_or_else(|| Error::invalid(format!("{ell}^{n} is too large")))?;
        Ok(TruncatedPadic { value: value.rem_euclid(m as i128) as u64, ell, n })
    }

    pub fn modulus(&self) -> u64 {
        self.ell.pow(self.n)
    }

    pub fn residue(&self) -> u64 {
        self.value % self.ell
    }

    /// Reduce to a lower precision.
    pub fn truncate(&self, n: u32) -> TruncatedPadic {
        assert!(n <= self.n);
        TruncatedPadic { value: self.value % self.ell.pow(n), n, ..*self }
    }

    pub fn pow(&self, e: u64) -> TruncatedPadic {
        TruncatedPadic { value: pow_mod(self.value, e, self.modulus()), ..*self }
    }
}

/// The unique `x ≡ seed (mod ℓ)` with `x^e = a` in `Z/ℓ^N`.
pub fn hensel_root(a: TruncatedPadic, e: u64, seed: u64) -> Result<TruncatedPadic> {
    let ell = a.ell;
    if e == 0 || gcd(e, ell) != 1 {
        return Err(Error::invalid(format!("exponent {e} is not prime to {ell}")));
    }
    if seed.is_multiple_of(ell) || pow_mod(seed, e, ell) != a.residue() {
        return Err(Error::NoRoot(format!("{seed}^{e} != {} mod {ell}", a.value)));
    }
    let m = a.modulus();
    let mut x = seed % ell;
    // Newton's iteration doubles the number of correct digits each step.
    for _ in 0..=(32 - a.n.leading_zeros()) {
        let fx = sub_mod(pow_mod(x, e, m), a.value, m);
        if fx == 0 {
            break;
        }
        let dfx = mul_mod(e % m, pow_mod(x, e - 1, m), m);
        let inv = inv_mod(dfx, m).expect("derivative is a unit");
        x = sub_mod(x, mul_mod(fx, inv, m), m);
    }
    debug_assert_eq!(pow_mod(x, e, m), a.value);
    Ok(TruncatedPadic { value: x, ..a })
}

/// A generalized eigenspace `e_λ·(Z/ℓ^N)^n`.
#[derive(Debug, Clone)]
pub struct LambdaSpace {
    pub lambda: u64,
    /// Columns form a basis of the summand.
    pub basis: Mat,
    /// Matrix of `M` on `basis`.
    pub restricted: Mat,
    /// Characteristic polynomial of the restriction, the `P_λ` factor.
    pub factor: Vec<u64>,
    pub idempotent: Mat,
}

impl LambdaSpace {
    pub fn rank(&self) -> usize {
        self.basis.cols()
    }
}

/// Roots of a polynomial over `F_ℓ` with multiplicities, by exhaustion.
fn roots_mod(poly: &[u64], ell: u64) -> Result<Vec<(u64, usize)>> {
    if ell > 1 << 22 {
        return Err(Error::invalid(format!("root search over F_{ell} is out of range")));
    }
    let mut p: Vec<u64> = poly.iter().map(|c| c % ell).collect();
    let mut roots = Vec::new();
    for x in 0..ell {
        let mut mult = 0;
        loop {
            if p.len() <= 1 {
                break;
            }
            // synthetic division by (T − x)
            let deg = p.len() - 1;
            let mut q = vec![0u64; deg];
            let mut carry = 0u64;
            for k in (0..=deg).rev() {
                let v = (p[k] + carry) % ell;
                if k == 0 {
                    carry = v;
                } else {
                    q[k - 1] = v;
                    carry = mul_mod(v, x, ell);
                }
            }
            if carry != 0 {
                break;
            }
            p = q;
            mult += 1;
        }
        if mult > 0 {
            roots.push((x, mult));
        }
    }
    Ok(roots)
}

fn poly_mulmod(a: &[u64], b: &[u64], chi: &[u64], m: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, m)) % m;
        }
    }
    poly_rem(out, chi, m)
}

/// Remainder modulo a monic polynomial.
fn poly_rem(mut a: Vec<u64>, chi: &[u64], m: u64) -> Vec<u64> {
    let d = chi.len() - 1;
    while a.len() > d {
        let c = a.pop().unwrap();
        if c != 0 {
            let off = a.len() - d;
            for (i, &x) in chi.iter().take(d).enumerate() {
                a[off + i] = sub_mod(a[off + i], mul_mod(c, x, m), m);
            }
        }
    }
    a.resize(d.max(1), 0);
    a
}

fn poly_powmod(base: &[u64], mut e: u64, chi: &[u64], m: u64) -> Vec<u64> {
    let mut acc = poly_rem(vec![1 % m], chi, m);
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, chi, m);
        }
        b = poly_mulmod(&b, &b, chi, m);
        e >>= 1;
    }
    acc
}

struct Split {
    chi: Vec<u64>,
    roots: Vec<(u64, usize)>,
}

fn split(m: &Mat, ell: u64, n: u32) -> Result<Split> {
    if m.rows() != m.cols() {
        return Err(Error::invalid("generalized eigenspaces need a square matrix"));
    }
    let modulus = checked_pow(ell, n).ok_or_else(|| Error::invalid("precision overflow"))?;
    let chi = linalg::charpoly(m, modulus);
    let roots = roots_mod(&chi, ell)?;
    if roots.iter().map(|r| r.1).sum::<usize>() != m.rows() {
        return Err(Error::NotSplit { ell });
    }
    Ok(Split { chi, roots })
}

fn eigenspace_from_split(m: &Mat, lam: u64, sp: &Split, ell: u64, n: u32) -> Result<LambdaSpace> {
    let modulus = ell.pow(n);
    let dim = m.rows();
    let lam = lam % ell;
    let Some(&(_, k)) = sp.roots.iter().find(|r| r.0 == lam) else {
        return Ok(LambdaSpace {
            lambda: lam,
            basis: Mat::zeros(dim, 0),
            restricted: Mat::zeros(0, 0),
            factor: vec![1],
            idempotent: Mat::zeros(dim, dim),
        });
    };
    let e = if sp.roots.len() == 1 {
        let mut one = vec![0u64; dim.max(1)];
        one[0] = 1 % modulus;
        one
    } else {
        // f = ∏_{μ̄ ≠ λ̄} (T − μ)^dim vanishes mod ℓ on the other components,
        // so f^N kills them mod ℓ^N and is a unit on the λ-component.
        let mut f = poly_rem(vec![1 % modulus], &sp.chi, modulus);
        for &(mu, _) in sp.roots.iter().filter(|r| r.0 != lam) {
            let lin = poly_rem(vec![sub_mod(0, mu, modulus), 1 % modulus], &sp.chi, modulus);
            f = poly_mulmod(&f, &poly_powmod(&lin, dim as u64, &sp.chi, modulus), &sp.chi, modulus);
        }
        let b = poly_powmod(&f, n as u64, &sp.chi, modulus);
        // The unit group of the λ-component has order (ℓ−1)·ℓ^{Nk−1}.
        let mut e = poly_powmod(&b, ell - 1, &sp.chi, modulus);
        for _ in 0..(n as usize * k - 1) {
            e = poly_powmod(&e, ell, &sp.chi, modulus);
        }
        e
    };
    let em = linalg::poly_eval_mat(&e, m, modulus);
    debug_assert_eq!(em.mul(&em, modulus), em, "e_lambda is not idempotent");
    let pivots = linalg::column_basis(&em, ell);
    let basis = em.select_cols(&pivots);
    let restricted = restrict(m, &basis, ell, modulus)?;
    let factor = linalg::charpoly(&restricted, modulus);
    Ok(LambdaSpace { lambda: lam, basis, restricted, factor, idempotent: em })
}

/// The matrix `R` with `M·B = B·R`, for `B` with columns independent mod `ℓ`.
fn restrict(m: &Mat, basis: &Mat, ell: u64, modulus: u64) -> Result<Mat> {
    let k = basis.cols();
    if k == 0 {
        return Ok(Mat::zeros(0, 0));
    }
    let rows = linalg::column_basis(&basis.transpose(), ell);
    let sub = basis.select_rows(&rows);
    let inv = linalg::inverse_mod(&sub, ell, modulus).ok_or_else(|| Error::invalid("eigenspace basis is not free"))?;
    let mb = m.mul(basis, modulus);
    let r = inv.mul(&mb.select_rows(&rows), modulus);
    if basis.mul(&r, modulus) != mb {
        return Err(Error::invalid("eigenspace is not invariant"));
    }
    Ok(r)
}

pub fn lambda_eigenspace(m: &Mat, lam: u64, ell: u64, n: u32) -> Result<LambdaSpace> {
    let sp = split(m, ell, n)?;
    eigenspace_from_split(m, lam, &sp, ell, n)
}

/// All generalized eigenspaces, in increasing order of `λ mod ℓ`.
pub fn lambda_decompose(m: &Mat, ell: u64, n: u32) -> Result<Vec<LambdaSpace>> {
    let sp = split(m, ell, n)?;
    let spaces =
        sp.roots.iter().map(|&(lam, _)| eigenspace_from_split(m, lam, &sp, ell, n)).collect::<Result<Vec<_>>>()?;
    let all = spaces.iter().fold(Mat::zeros(m.rows(), 0), |acc, s| acc.hcat(&s.basis));
    if all.cols() != m.rows() || linalg::rank(&all, ell) != m.rows() {
        return Err(Error::invalid("eigenspaces do not form a direct sum"));
    }
    Ok(spaces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::{coxeter_datum, TwistedType};
    use proptest::prelude::*;

    fn datum(name: &str) -> CoxeterDatum {
        coxeter_datum(TwistedType::parse(name, None).unwrap()).unwrap()
    }

    #[test]
    fn a2_regime() {
        let ctx = validate_ell(&datum("A2"), 2, 7).unwrap();
        assert_eq!(eigenvalue_table(&ctx), vec![1, 2, 4]);
        assert_eq!(ctx.torus_order, 7);
        assert_eq!(ctx.precision, 3);
    }

    #[test]
    fn ree_regime() {
        let ctx = validate_ell(&datum("2G2"), 27, 19).unwrap();
        assert!(!ctx.q_mod.in_base_field());
        assert_eq!(ctx.q_mod.order(), Some(12));
        assert_eq!(ctx.qdelta_mod, 8);
        assert_eq!(eigenvalue_table(&ctx), vec![1, 8, 7, 18, 11, 12]);
        assert_eq!(ctx.sqrt_qdelta, ctx.q_mod);
    }

    #[test]
    fn rejected_regimes() {
        let reason = |r: Result<EllContext>| match r {
            Err(Error::BadRegime { reason, .. }) => reason,
            other => panic!("expected BadRegime, got {other:?}"),
        };
        assert_eq!(reason(validate_ell(&datum("A2"), 2, 3)), RegimeReason::DividesWeylOrder);
        assert_eq!(reason(validate_ell(&datum("A2"), 4, 3)), RegimeReason::DividesWeylOrder);
        assert_eq!(reason(validate_ell(&datum("A2"), 2, 5)), RegimeReason::NotDividing);
        assert_eq!(reason(validate_ell(&datum("A2"), 6, 7)), RegimeReason::BadQ);
        assert_eq!(reason(validate_ell(&datum("A2"), 2, 9)), RegimeReason::BadPrime);
    }

    #[test]
    fn hensel_examples() {
        let one = TruncatedPadic::new(1, 7, 2).unwrap();
        assert_eq!(hensel_root(one, 3, 2).unwrap().value, 30);
        assert_eq!(hensel_root(one, 3, 1).unwrap().value, 1);
        assert!(matches!(hensel_root(one, 3, 3), Err(Error::NoRoot(_))));
        assert!(hensel_root(one, 7, 1).is_err());
    }

    #[test]
    fn eigenspace_examples() {
        let m = Mat::diag(&[1, 8]);
        assert_eq!(lambda_eigenspace(&m, 1, 7, 2).unwrap().rank(), 2);
        let m = Mat::diag(&[1, 2]);
        let s = lambda_eigenspace(&m, 1, 7, 2).unwrap();
        assert_eq!(s.basis.col(0), vec![1, 0]);
        let parts = lambda_decompose(&Mat::diag(&[1, 2, 4]), 7, 1).unwrap();
        assert_eq!(parts.iter().map(|p| p.rank()).collect::<Vec<_>>(), vec![1, 1, 1]);
        let nil = Mat::from_rows(&[vec![0, 1], vec![0, 0]], 49);
        let parts = lambda_decompose(&nil, 7, 2).unwrap();
        assert_eq!((parts.len(), parts[0].lambda, parts[0].rank()), (1, 0, 2));
    }

    #[test]
    fn companion_matrix() {
        // (T − 1)(T − 8) = T² − 9T + 8
        let m = Mat::from_rows(&[vec![0, -8], vec![1, 9]], 361);
        let parts = lambda_decompose(&m, 19, 2).unwrap();
        assert_eq!(parts.iter().map(|p| (p.lambda, p.rank())).collect::<Vec<_>>(), vec![(1, 1), (8, 1)]);
        for p in &parts {
            assert_eq!(p.restricted.rows(), 1);
            assert_eq!(p.restricted[(0, 0)] % 19, p.lambda);
        }
    }

    #[test]
    fn not_split() {
        // T² + 1 is irreducible mod 7
        let m = Mat::from_rows(&[vec![0, -1], vec![1, 0]], 7);
        assert_eq!(lambda_decompose(&m, 7, 1).unwrap_err(), Error::NotSplit { ell: 7 });
    }

    fn small_prime() -> impl Strategy<Value = u64> {
        prop::sample::select(vec![5u64, 7, 11, 13])
    }

    proptest! {
        #[test]
        fn decomposition_is_direct_and_invariant(
            ell in small_prime(),
            diag in proptest::collection::vec(0u64..4, 4),
            upper in proptest::collection::vec(0u64..1000, 6),
        ) {
            let n = 2;
            let modulus = ell * ell;
            let mut m = Mat::zeros(4, 4);
            let mut it = upper.iter();
            for i in 0..4 {
                m[(i, i)] = diag[i] % modulus;
                for j in i + 1..4 {
                    m[(i, j)] = it.next().unwrap() % modulus;
                }
            }
            let parts = lambda_decompose(&m, ell, n).unwrap();
            prop_assert_eq!(parts.iter().map(|p| p.rank()).sum::<usize>(), 4);
            for p in &parts {
                let killed = linalg::poly_eval_mat(&p.factor, &m, modulus).mul(&p.basis, modulus);
                prop_assert!(killed.is_zero());
                let count = diag.iter().filter(|&&d| d % ell == p.lambda).count();
                prop_assert_eq!(p.rank(), count);
            }
        }
    }
}
