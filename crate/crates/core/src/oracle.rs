//! Brute-force character theory of metacyclic groups `D⋊E`, used as an
//! independent check on star trees and their algebras.

use serde::Serialize;

use crate::arith::{gcd, inv_mod, is_prime, mult_order, pow_mod, prime_power, primitive_root, sub_mod};
use crate::brauer_tree::{decomposition_matrix, PlanarBrauerTree};
use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::tree_algebra::TreeAlgebra;

/// `⟨y⟩ ⋊ ⟨x⟩` with `|y| = ℓ^α`, `|x| = m` and `x y x⁻¹ = y^n`. The element
/// `y^a x^b` is stored as `a·m + b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MetacyclicGroup {
    pub d_order: u64,
    pub e_order: u64,
    pub n: u64,
    pub ell: u64,
}

impl MetacyclicGroup {
    pub fn new(d_order: u64, e_order: u64, n: u64) -> Result<Self> {
        let (ell, _) = prime_power(d_order)
            .filter(|&(p, _)| is_prime(p))
            .ok_or_else(|| Error::invalid(format!("|D| = {d_order} is not a prime power")))?;
        if e_order == 0 || gcd(e_order, ell) != 1 {
            return Err(Error::BadAction(format!("|E| = {e_order} is not prime to {ell}")));
        }
        if mult_order(n % ell, ell) != Some(e_order) || pow_mod(n, e_order, d_order) != 1 % d_order {
            return Err(Error::BadAction(format!("{n} does not act with order {e_order} on Z/{d_order}")));
        }
        Ok(MetacyclicGroup { d_order, e_order, n: n % d_order, ell })
    }

    pub fn order(&self) -> usize {
        (self.d_order * self.e_order) as usize
    }

    fn split(&self, g: usize) -> (u64, u64) {
        let g = g as u64;
        (g / self.e_order, g % self.e_order)
    }

    fn elem(&self, a: u64, b: u64) -> usize {
        ((a % self.d_order) * self.e_order + b % self.e_order) as usize
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        let (a, b) = self.split(g);
        let (c, d) = self.split(h);
        self.elem(a + pow_mod(self.n, b, self.d_order) * c % self.d_order, b + d)
    }

    pub fn inv(&self, g: usize) -> usize {
        let (a, b) = self.split(g);
        let b2 = (self.e_order - b) % self.e_order;
        // (y^a x^b)⁻¹ = x^{-b} y^{-a} = y^{-a n^{-b}} x^{-b}
        let c = (self.d_order - a) % self.d_order * pow_mod(self.n, b2, self.d_order) % self.d_order;
        self.elem(c, b2)
    }

    pub fn conjugate(&self, g: usize, h: usize) -> bool {
        (0..self.order()).any(|k| self.mul(self.mul(k, g), self.inv(k)) == h)
    }

    /// Conjugacy classes, each sorted, ordered by least element.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for g in 0..n {
            if seen[g] {
                continue;
            }
            let mut class: Vec<usize> = (0..n).map(|h| self.mul(self.mul(h, g), self.inv(h))).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                seen[c] = true;
            }
            out.push(class);
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    /// Values live in `Z[ζ_L]` with `L = m·ℓ^α`.
    pub conductor: u64,
    pub class_reps: Vec<usize>,
    pub class_sizes: Vec<usize>,
    pub labels: Vec<String>,
    /// `values[χ][class]`.
    pub values: Vec<Vec<Cyclo>>,
    pub n_linear: usize,
}

/// The exponent `s` with `ω̄^s = ζ̄`, where `ω = exp(2πi/m)` reduces to
/// `ω̄ = g^{(ℓ−1)/m}` for the least primitive root `g`.
fn bridge_exponent(ell: u64, m: u64, zeta_bar: u64) -> Result<u64> {
    let omega_bar = pow_mod(primitive_root(ell), (ell - 1) / m, ell);
    (0..m)
        .find(|&s| pow_mod(omega_bar, s, ell) == zeta_bar % ell)
        .ok_or_else(|| Error::NoRoot(format!("{zeta_bar} is not an {m}-th root of unity mod {ell}")))
}

/// Linear characters `η_j(x) = ω^{s·j}` inflated from `E`, followed by the
/// induced characters `Ind_D^H θ_k` over orbit representatives `k`.
pub fn character_table(g: &MetacyclicGroup, zeta_bar: u64) -> Result<CharacterTable> {
    let (nd, m) = (g.d_order, g.e_order);
    let conductor = nd * m;
    let s = bridge_exponent(g.ell, m, zeta_bar)?;
    let classes = g.classes();
    let class_reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let class_sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
    let mut labels = Vec::new();
    let mut values = Vec::new();
    for j in 0..m {
        labels.push(format!("eta_{j}"));
        values.push(
            class_reps.iter().map(|&c| Cyclo::root(m, (s * j % m * g.split(c).1 % m) as i64).lift(conductor)).collect(),
        );
    }
    let mut seen = vec![false; nd as usize];
    seen[0] = true;
    for k in 1..nd {
        if seen[k as usize] {
            continue;
        }
        let orbit: Vec<u64> = (0..m).map(|b| k * pow_mod(g.n, b, nd) % nd).collect();
        for &o in &orbit {
            seen[o as usize] = true;
        }
        labels.push(format!("ind_{k}"));
        values.push(
            class_reps
                .iter()
                .map(|&c| {
                    let (a, b) = g.split(c);
                    if b != 0 {
                        return Cyclo::zero(conductor);
                    }
                    orbit.iter().fold(Cyclo::zero(conductor), |acc, &o| {
                        acc + Cyclo::root(nd, (o * a % nd) as i64).lift(conductor)
                    })
                })
                .collect(),
        );
    }
    Ok(CharacterTable { conductor, class_reps, class_sizes, labels, values, n_linear: m as usize })
}

impl CharacterTable {
    pub fn degrees(&self) -> Vec<i128> {
        self.values.iter().map(|row| row[0].as_integer().expect("degrees are integers")).collect()
    }

    /// Row and column orthogonality, checked exactly.
    pub fn check_orthogonality(&self) -> bool {
        let order: usize = self.class_sizes.iter().sum();
        let n = self.values.len();
        if n != self.class_reps.len() {
            return false;
        }
        let l = self.conductor;
        let conj: Vec<Vec<Cyclo>> = self.values.iter().map(|r| r.iter().map(Cyclo::conj).collect()).collect();
        let sum = |terms: &mut dyn Iterator<Item = (&Cyclo, &Cyclo, i128)>| {
            let mut acc = vec![0i128; l as usize];
            for (a, b, c) in terms {
                a.add_product_into(b, c, &mut acc);
            }
            Cyclo::from_dense(l, &acc).as_integer()
        };
        let rows_ok = (0..n).all(|i| {
            (0..n).all(|j| {
                let mut it = (0..n).map(|c| (&self.values[i][c], &conj[j][c], self.class_sizes[c] as i128));
                sum(&mut it) == Some(if i == j { order as i128 } else { 0 })
            })
        });
        let cols_ok = (0..n).all(|c| {
            (0..n).all(|d| {
                let mut it = (0..n).map(|i| (&self.values[i][c], &conj[i][d], 1));
                let expect = if c == d { (order / self.class_sizes[c]) as i128 } else { 0 };
                sum(&mut it) == Some(expect)
            })
        });
        rows_ok && cols_ok
    }
}

/// Multiplicities of the Brauer characters `φ_j = η_j|_{ℓ'}` in each ordinary
/// character, from the values on `E = ⟨x⟩`.
pub fn brute_decomposition_matrix(g: &MetacyclicGroup, table: &CharacterTable) -> Result<Vec<Vec<u64>>> {
    let m = g.e_order as usize;
    let reg: Vec<usize> = (0..m as u64)
        .map(|b| {
            let e = g.elem(0, b);
            table.class_reps.iter().position(|&r| g.conjugate(r, e)).expect("every element lies in a class")
        })
        .collect();
    let brauer: Vec<Vec<Cyclo>> = (0..m).map(|j| reg.iter().map(|&c| table.values[j][c].clone()).collect()).collect();
    let mut out = Vec::new();
    for (i, chi) in table.values.iter().enumerate() {
        let mut row = Vec::with_capacity(m);
        for phi in &brauer {
            let sum = (0..m).fold(Cyclo::zero(table.conductor), |acc, b| acc + &chi[reg[b]] * &phi[b].conj());
            let v = sum.as_integer().filter(|v| v % m as i128 == 0 && *v >= 0).ok_or_else(|| {
                Error::SingularSystem(format!("{} has no nonnegative integral decomposition", table.labels[i]))
            })?;
            row.push((v / m as i128) as u64);
        }
        for b in 0..m {
            let rebuilt = (0..m).fold(Cyclo::zero(table.conductor), |acc, j| acc + brauer[j][b].scale(row[j] as i128));
            if rebuilt != chi[reg[b]] {
                return Err(Error::SingularSystem(format!(
                    "{} is not a combination of Brauer characters",
                    table.labels[i]
                )));
            }
        }
        out.push(row);
    }
    Ok(out)
}

/// Pairs `(i, j)` with `Ext¹(S_i, S_j) ≠ 0` for right `kH`-modules, read off
/// from `e_i J / e_i J²` with `J = (y − 1)·kH`.
pub fn group_ext_pairs(g: &MetacyclicGroup, zeta_bar: u64) -> Result<Vec<(usize, usize)>> {
    let ell = g.ell;
    let m = g.e_order;
    let n = g.order();
    let zeta_bar = zeta_bar % ell;
    let minv = inv_mod(m % ell, ell).expect("m is prime to ell");
    let right = |v: &[u64], h: usize| {
        let mut out = vec![0u64; n];
        for (x, &c) in v.iter().enumerate() {
            if c != 0 {
                let t = g.mul(x, h);
                out[t] = (out[t] + c) % ell;
            }
        }
        out
    };
    let y = g.elem(1, 0);
    let times_y_minus_1 = |v: &[u64]| {
        let vy = right(v, y);
        vy.iter().zip(v).map(|(&a, &b)| sub_mod(a, b, ell)).collect::<Vec<_>>()
    };
    let span = |v: &[u64]| {
        let cols: Vec<Vec<u64>> = (0..n).map(|h| right(v, h)).collect();
        let mut mat = Mat::zeros(n, n);
        for (c, col) in cols.iter().enumerate() {
            for (r, &x) in col.iter().enumerate() {
                mat[(r, c)] = x;
            }
        }
        let basis = linalg::column_basis(&mat, ell);
        mat.select_cols(&basis)
    };
    let mut pairs = Vec::new();
    for i in 0..m {
        // e_i = (1/m) Σ_b ζ̄^{-ib} x^b, so that e_i·x = ζ̄^i e_i.
        let mut e = vec![0u64; n];
        for b in 0..m {
            let inv_pow = pow_mod(inv_mod(zeta_bar, ell).unwrap(), i * b % m, ell);
            e[g.elem(0, b)] = inv_pow * minv % ell;
        }
        let u = times_y_minus_1(&e);
        let w = times_y_minus_1(&u);
        let rad2 = span(&w);
        if span(&u).cols() != rad2.cols() + 1 {
            return Err(Error::SingularSystem(format!("e_{i}J/e_iJ^2 is not one-dimensional")));
        }
        let ux = right(&u, g.elem(0, 1));
        let sys = rad2.hcat(&Mat::from_rows(&u.iter().map(|&c| vec![c as i64]).collect::<Vec<_>>(), ell));
        let coeffs = linalg::solve(&sys, &ux, ell)
            .ok_or_else(|| Error::SingularSystem(format!("x does not preserve e_{i}J/e_iJ^2")))?;
        let c = *coeffs.last().unwrap();
        let j = (0..m)
            .find(|&j| pow_mod(zeta_bar, j, ell) == c)
            .ok_or_else(|| Error::SingularSystem(format!("eigenvalue {c} is not a power of {zeta_bar}")))?;
        pairs.push((i as usize, j as usize));
    }
    pairs.sort_unstable();
    Ok(pairs)
}

#[derive(Debug, Clone, Serialize)]
pub struct StarVerification {
    pub labels: Vec<String>,
    pub decomposition: Vec<Vec<u64>>,
    pub ext_pairs: Vec<(usize, usize)>,
    pub degrees: Vec<i128>,
}

/// Compare a star tree with the brute-force data of `G`, row for row and
/// column for column, and its Ext quiver with the group algebra's.
pub fn verify_star(tree: &PlanarBrauerTree, g: &MetacyclicGroup) -> Result<StarVerification> {
    let zeta = tree.zeta_lift.as_ref().ok_or_else(|| Error::invalid("tree carries no root of unity lift"))?;
    if tree.ell != Some(g.ell) || zeta.modulus != g.d_order {
        return Err(Error::invalid("tree and group are over different primes"));
    }
    let zeta_bar = zeta.value % g.ell;
    let table = character_table(g, zeta_bar)?;
    if !table.check_orthogonality() {
        return Err(Error::SingularSystem("character table fails orthogonality".into()));
    }
    let oracle = brute_decomposition_matrix(g, &table)?;
    let d = decomposition_matrix(tree);
    if d.rows.len() != oracle.len() || d.n_cols() != g.e_order as usize {
        return Err(Error::Mismatch {
            table: "shape".into(),
            row: d.rows.len(),
            col: d.n_cols(),
            tree: d.rows.len() as i64,
            oracle: oracle.len() as i64,
        });
    }
    for (r, (a, b)) in d.rows.iter().zip(&oracle).enumerate() {
        for (c, (&x, &y)) in a.iter().zip(b).enumerate() {
            if x != y {
                return Err(Error::Mismatch {
                    table: "decomposition".into(),
                    row: r,
                    col: c,
                    tree: x as i64,
                    oracle: y as i64,
                });
            }
        }
    }
    let ext_pairs = group_ext_pairs(g, zeta_bar)?;
    let alg = TreeAlgebra::from_tree(tree, g.ell)?;
    let m = g.e_order as usize;
    for i in 0..m {
        for j in 0..m {
            let t = alg.ext1(i, j) as i64;
            let o = i64::from(ext_pairs.contains(&(i, j)));
            if t != o {
                return Err(Error::Mismatch { table: "ext1".into(), row: i, col: j, tree: t, oracle: o });
            }
        }
    }
    Ok(StarVerification { labels: table.labels.clone(), decomposition: oracle, ext_pairs, degrees: table.degrees() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brauer_tree::build_star_tree;

    #[test]
    fn table_7_3_2() {
        let g = MetacyclicGroup::new(7, 3, 2).unwrap();
        assert_eq!(g.classes().len(), 5);
        let t = character_table(&g, 2).unwrap();
        assert_eq!(t.degrees(), vec![1, 1, 1, 3, 3]);
        assert_eq!(t.degrees().iter().map(|d| d * d).sum::<i128>(), 21);
        assert!(t.check_orthogonality());
        let d = brute_decomposition_matrix(&g, &t).unwrap();
        assert_eq!(d, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn cyclic_group() {
        let g = MetacyclicGroup::new(5, 1, 1).unwrap();
        let t = character_table(&g, 1).unwrap();
        assert_eq!(t.values.len(), 5);
        assert!(t.check_orthogonality());
        assert!(brute_decomposition_matrix(&g, &t).unwrap().iter().all(|r| r == &vec![1]));
    }

    #[test]
    fn group_law() {
        let g = MetacyclicGroup::new(9, 2, 8).unwrap();
        for a in 0..g.order() {
            assert_eq!(g.mul(a, g.inv(a)), 0);
            for b in 0..g.order() {
                for c in [1, 5, 11] {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
        assert!(MetacyclicGroup::new(7, 3, 3).is_err());
        assert!(MetacyclicGroup::new(12, 2, 5).is_err());
    }

    #[test]
    fn stars_verify() {
        for (d, e, n) in [(7, 3, 2), (7, 3, 4), (49, 3, 18), (5, 4, 2), (9, 2, 8)] {
            let tree = build_star_tree(d, e, n).unwrap();
            let g = MetacyclicGroup::new(d, e, n).unwrap();
            verify_star(&tree, &g).unwrap();
        }
    }

    #[test]
    fn wrong_action_is_caught() {
        let tree = build_star_tree(7, 3, 2).unwrap();
        let g = MetacyclicGroup::new(7, 3, 4).unwrap();
        assert!(matches!(verify_star(&tree, &g), Err(Error::Mismatch { .. })));
    }
}
