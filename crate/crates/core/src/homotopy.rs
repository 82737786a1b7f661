//! Bounded complexes of projective modules over a Brauer tree algebra, and
//! the verification that the Rickard complexes form a tilting complex.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{inv_mod, mul_mod, sub_mod};
use crate::brauer_tree::{height, perversity, PlanarBrauerTree};
use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::tree_algebra::{Elem, PathKind, TreeAlgebra};

/// A bounded complex `⊕ P_a` with boundary matrices over the algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjComplex {
    pub lo: i64,
    /// `terms[k]` lists the summands `P_a` in degree `lo + k`.
    pub terms: Vec<Vec<usize>>,
    /// `diffs[k][t][s]` is the component `P_s → P_t` from degree `lo + k`,
    /// an element of `ε_t A ε_s`.
    pub diffs: Vec<Vec<Vec<Elem>>>,
}

fn zero_block(rows: usize, cols: usize) -> Vec<Vec<Elem>> {
    vec![vec![Vec::new(); cols]; rows]
}

fn elem_sub(a: &Elem, b: &Elem, ell: u64) -> Elem {
    let mut acc: BTreeMap<usize, u64> = a.iter().copied().collect();
    for &(i, c) in b {
        let e = acc.entry(i).or_insert(0);
        *e = sub_mod(*e, c, ell);
    }
    acc.into_iter().filter(|&(_, c)| c != 0).collect()
}

fn elem_scale(a: &Elem, c: u64, ell: u64) -> Elem {
    a.iter().map(|&(i, x)| (i, mul_mod(x, c, ell))).filter(|&(_, x)| x != 0).collect()
}

impl ProjComplex {
    pub fn zero() -> Self {
        ProjComplex { lo: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    /// A single projective in one degree.
    pub fn stalk(a: usize, degree: i64) -> Self {
        ProjComplex { lo: degree, terms: vec![vec![a]], diffs: Vec::new() }
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn term(&self, degree: i64) -> &[usize] {
        let k = degree - self.lo;
        if k < 0 || k >= self.terms.len() as i64 {
            return &[];
        }
        &self.terms[k as usize]
    }

    /// Boundary out of `degree`, or an empty block outside the range.
    pub fn diff(&self, degree: i64) -> Vec<Vec<Elem>> {
        let k = degree - self.lo;
        if k < 0 || k >= self.diffs.len() as i64 {
            return zero_block(self.term(degree + 1).len(), self.term(degree).len());
        }
        self.diffs[k as usize].clone()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.is_empty())
    }

    /// Drop empty terms at both ends.
    pub fn normalize(mut self) -> Self {
        while self.terms.first().is_some_and(|t| t.is_empty()) {
            self.terms.remove(0);
            if !self.diffs.is_empty() {
                self.diffs.remove(0);
            }
            self.lo += 1;
        }
        while self.terms.last().is_some_and(|t| t.is_empty()) {
            self.terms.pop();
            self.diffs.pop();
        }
        if self.terms.is_empty() {
            return ProjComplex::zero();
        }
        self.diffs.truncate(self.terms.len() - 1);
        self
    }

    /// Extend the stored range to cover `[lo, hi]`.
    fn widen(&mut self, lo: i64, hi: i64) {
        if self.terms.is_empty() {
            self.lo = lo;
        }
        while self.lo > lo {
            let n = self.terms.first().map_or(0, |t| t.len());
            self.terms.insert(0, Vec::new());
            self.diffs.insert(0, zero_block(n, 0));
            self.lo -= 1;
        }
        while self.hi() < hi {
            let n = self.terms.last().map_or(0, |t| t.len());
            if !self.terms.is_empty() {
                self.diffs.push(zero_block(0, n));
            }
            self.terms.push(Vec::new());
        }
    }

    /// Direct sum with `P_a --1--> P_a` in degrees `degree, degree + 1`.
    pub fn add_contractible(&mut self, alg: &TreeAlgebra, a: usize, degree: i64) {
        self.widen(degree.min(self.lo), (degree + 1).max(self.hi()));
        let k = (degree - self.lo) as usize;
        self.terms[k].push(a);
        self.terms[k + 1].push(a);
        // Degree k: new column, and a new row in degree k+1's target.
        if k > 0 {
            self.diffs[k - 1].push(vec![Vec::new(); self.terms[k - 1].len()]);
        }
        for row in self.diffs[k].iter_mut() {
            row.push(Vec::new());
        }
        let mut new_row = vec![Vec::new(); self.terms[k].len()];
        *new_row.last_mut().unwrap() = vec![(alg.idempotent(a), 1)];
        self.diffs[k].push(new_row);
        if k + 1 < self.diffs.len() {
            for row in self.diffs[k + 1].iter_mut() {
                row.push(Vec::new());
            }
        }
    }

    /// Apply the automorphism `1 + y·E_{t,s}` of the term in `degree`, where
    /// `y ∈ Hom(P_s, P_t)` and `s ≠ t`.
    pub fn change_basis(&mut self, alg: &TreeAlgebra, degree: i64, s: usize, t: usize, y: &Elem) {
        assert_ne!(s, t, "elementary automorphisms need distinct summands");
        let k = (degree - self.lo) as usize;
        let ell = alg.ell;
        // Incoming boundary: row t += y · row s.
        if k > 0 {
            let d = &mut self.diffs[k - 1];
            for u in 0..d[s].len() {
                let add = alg.mul(y, &d[s][u]);
                d[t][u] = elem_sub(&d[t][u], &elem_scale(&add, ell - 1, ell), ell);
            }
        }
        // Outgoing boundary: column s −= column t · y.
        if k < self.diffs.len() {
            let d = &mut self.diffs[k];
            for row in d.iter_mut() {
                let sub = alg.mul(&row[t], y);
                row[s] = elem_sub(&row[s], &sub, ell);
            }
        }
    }

    pub fn check_d2(&self, alg: &TreeAlgebra) -> bool {
        (0..self.diffs.len().saturating_sub(1)).all(|k| {
            let (d1, d2) = (&self.diffs[k], &self.diffs[k + 1]);
            (0..d2.len()).all(|t| {
                (0..d1.first().map_or(0, |r| r.len())).all(|s| {
                    let mut acc: Elem = Vec::new();
                    for (u, row) in d1.iter().enumerate() {
                        acc = elem_sub(&acc, &alg.mul(&d2[t][u], &row[s]), alg.ell);
                    }
                    acc.is_empty()
                })
            })
        })
    }
}

/// Branch walk `m_ζ, …, j` and the starting degree `r`.
pub fn rickard_terms(tree: &PlanarBrauerTree, j: usize) -> (i64, Vec<usize>) {
    let n = tree.n_edges();
    let m = tree.branch(j).m as usize;
    let len = tree.offset(j) as usize + 1;
    (tree.r as i64, (0..len).map(|k| (m + k) % n).collect())
}

/// `P_{m_ζ} → P_{m_ζ+1} → … → P_j` in degrees `r, …, r + j − m_ζ`.
pub fn rickard_complex(alg: &TreeAlgebra, j: usize) -> Result<ProjComplex> {
    let tree = &alg.tree;
    if j >= tree.n_edges() {
        return Err(Error::invalid(format!("vertex {j} out of range 0..{}", tree.n_edges())));
    }
    let (lo, walk) = rickard_terms(tree, j);
    let mut diffs = Vec::new();
    for w in walk.windows(2) {
        let (i, next) = (w[0], w[1]);
        // The arrow next → i around the node χ_i factors through S_i/S_{i+1}.
        let arrow = alg
            .arrows()
            .iter()
            .copied()
            .find(|&a| {
                let p = alg.basis[a];
                p.source == next && p.target == i && matches!(p.kind, PathKind::Walk { node, .. } if node == i)
            })
            .expect("consecutive branch edges are joined by an arrow");
        diffs.push(vec![vec![vec![(arrow, 1)]]]);
    }
    let cx = ProjComplex { lo, terms: walk.into_iter().map(|a| vec![a]).collect(), diffs };
    assert!(cx.check_d2(alg), "Rickard complex fails d^2 = 0");
    Ok(cx)
}

/// The underlying `F_ℓ`-linear boundary out of `degree`, restricted to the
/// basis paths ending at vertex `v` (boundaries preserve this grading).
fn linear_block(alg: &TreeAlgebra, cx: &ProjComplex, degree: i64, v: usize) -> (Mat, usize) {
    let src = module_basis(alg, cx.term(degree), v);
    let tgt = module_basis(alg, cx.term(degree + 1), v);
    let pos: HashMap<(usize, usize), usize> = tgt.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let d = cx.diff(degree);
    let mut m = Mat::zeros(tgt.len(), src.len());
    for (col, &(s, y)) in src.iter().enumerate() {
        for (t, row) in d.iter().enumerate() {
            for (z, c) in alg.mul(&row[s], &vec![(y, 1)]) {
                let i = pos[&(t, z)];
                m[(i, col)] = (m[(i, col)] + c) % alg.ell;
            }
        }
    }
    (m, src.len())
}

/// `(summand, path)` pairs spanning `⊕ P_a` in degree, restricted to paths
/// ending at `v`.
fn module_basis(alg: &TreeAlgebra, term: &[usize], v: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (s, &a) in term.iter().enumerate() {
        for x in 0..alg.dim() {
            let p = alg.basis[x];
            if p.source == a && p.target == v {
                out.push((s, x));
            }
        }
    }
    out
}

/// Cohomology in every degree of the range, as dimension vectors.
pub fn cohomology(alg: &TreeAlgebra, cx: &ProjComplex) -> Vec<(i64, Vec<usize>)> {
    if cx.terms.is_empty() {
        return Vec::new();
    }
    let n = alg.n_vertices();
    (cx.lo..=cx.hi())
        .map(|deg| {
            let dims = (0..n)
                .map(|v| {
                    let (out, dim) = linear_block(alg, cx, deg, v);
                    let (inc, _) = linear_block(alg, cx, deg - 1, v);
                    dim - linalg::rank(&out, alg.ell) - linalg::rank(&inc, alg.ell)
                })
                .collect();
            (deg, dims)
        })
        .collect()
}

/// Integer coefficients on `χ_0, …, χ_{h0−1}, χ_exc`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterVector(pub Vec<i64>);

impl CharacterVector {
    pub fn chi(tree: &PlanarBrauerTree, v: usize, c: i64) -> Self {
        let mut x = vec![0; tree.n_vertices()];
        x[v] = c;
        CharacterVector(x)
    }

    pub fn add(&self, o: &CharacterVector) -> CharacterVector {
        CharacterVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

/// Alternating sum of the characters `[P_a] = χ + χ′` of the terms, with the
/// sign of degree `r` taken positive.
pub fn euler_character(tree: &PlanarBrauerTree, cx: &ProjComplex) -> CharacterVector {
    let mut acc = vec![0i64; tree.n_vertices()];
    for (k, term) in cx.terms.iter().enumerate() {
        let deg = cx.lo + k as i64;
        let sign = if (deg - tree.r as i64).rem_euclid(2) == 0 { 1 } else { -1 };
        for &a in term {
            let (inner, outer) = tree.edge_ends(a);
            acc[inner] += sign;
            acc[outer] += sign;
        }
    }
    CharacterVector(acc)
}

/// Inverse in `End(P_a)` of `c·ε_a + n` with `c ≠ 0` and `n` nilpotent.
fn invert_endo(alg: &TreeAlgebra, a: usize, x: &Elem) -> Elem {
    let ell = alg.ell;
    let idem = alg.idempotent(a);
    let c = x.iter().find(|t| t.0 == idem).map_or(0, |t| t.1);
    let cinv = inv_mod(c, ell).expect("unit coefficient");
    // x = c(1 + u) with u = c⁻¹·n nilpotent; x⁻¹ = c⁻¹ Σ (−u)^k.
    let minus_u: Elem = elem_scale(&x.iter().copied().filter(|t| t.0 != idem).collect(), ell - cinv, ell);
    let mut term: Elem = vec![(idem, 1)];
    let mut sum: Elem = Vec::new();
    while !term.is_empty() {
        sum = elem_sub(&sum, &elem_scale(&term, ell - 1, ell), ell);
        term = alg.mul(&term, &minus_u);
    }
    elem_scale(&sum, cinv, ell)
}

fn find_invertible(alg: &TreeAlgebra, cx: &ProjComplex) -> Option<(usize, usize, usize)> {
    for (k, d) in cx.diffs.iter().enumerate() {
        for (t, row) in d.iter().enumerate() {
            for (s, x) in row.iter().enumerate() {
                let (a, b) = (cx.terms[k][s], cx.terms[k + 1][t]);
                if a == b && x.iter().any(|&(i, c)| i == alg.idempotent(a) && c != 0) {
                    return Some((k, t, s));
                }
            }
        }
    }
    None
}

/// Remove contractible summands by Gaussian elimination until the complex is
/// minimal, then require it to live in degrees `[m, big_m]`.
pub fn trim(alg: &TreeAlgebra, cx: &ProjComplex, m: i64, big_m: i64) -> Result<ProjComplex> {
    let ell = alg.ell;
    let mut cx = cx.clone();
    while let Some((k, t, s)) = find_invertible(alg, &cx) {
        let alpha_inv = invert_endo(alg, cx.terms[k][s], &cx.diffs[k][t][s]);
        let d = &cx.diffs[k];
        let mut next = zero_block(d.len() - 1, d[0].len() - 1);
        for (ti, row) in d.iter().enumerate().filter(|&(ti, _)| ti != t) {
            let gamma = alg.mul(&row[s], &alpha_inv);
            for (si, x) in row.iter().enumerate().filter(|&(si, _)| si != s) {
                let corr = alg.mul(&gamma, &d[t][si]);
                let r = ti - usize::from(ti > t);
                let c = si - usize::from(si > s);
                next[r][c] = elem_sub(x, &corr, ell);
            }
        }
        cx.diffs[k] = next;
        if k > 0 {
            cx.diffs[k - 1].remove(s);
        }
        if k + 1 < cx.diffs.len() {
            for row in cx.diffs[k + 1].iter_mut() {
                row.remove(t);
            }
        }
        cx.terms[k].remove(s);
        cx.terms[k + 1].remove(t);
    }
    let cx = cx.normalize();
    if !cx.is_zero() {
        for (k, term) in cx.terms.iter().enumerate() {
            let deg = cx.lo + k as i64;
            if !term.is_empty() && (deg < m || deg > big_m) {
                return Err(Error::CohomologyOutsideRange { degree: deg, lo: m, hi: big_m });
            }
        }
    }
    Ok(cx)
}

/// The total complex `Hom•(C, D)` over `F_ℓ`.
#[derive(Debug, Clone)]
pub struct HomComplex {
    pub lo: i64,
    pub dims: Vec<usize>,
    /// `diffs[k]` maps degree `lo + k` to `lo + k + 1`.
    pub diffs: Vec<Mat>,
}

type HomKey = (i64, usize, usize, usize);

fn hom_basis_in_degree(alg: &TreeAlgebra, c: &ProjComplex, d: &ProjComplex, n: i64) -> Vec<HomKey> {
    let mut out = Vec::new();
    if c.terms.is_empty() {
        return out;
    }
    for p in c.lo..=c.hi() {
        for (s, &a) in c.term(p).iter().enumerate() {
            for (t, &b) in d.term(p + n).iter().enumerate() {
                for x in alg.hom_basis(a, b) {
                    out.push((p, s, t, x));
                }
            }
        }
    }
    out
}

pub fn hom_complex(alg: &TreeAlgebra, c: &ProjComplex, d: &ProjComplex) -> HomComplex {
    let ell = alg.ell;
    if c.is_zero() || d.is_zero() {
        return HomComplex { lo: 0, dims: vec![0], diffs: Vec::new() };
    }
    let lo = d.lo - c.hi();
    let hi = d.hi() - c.lo;
    let bases: Vec<Vec<HomKey>> = (lo..=hi + 1).map(|n| hom_basis_in_degree(alg, c, d, n)).collect();
    let mut diffs = Vec::new();
    for (k, n) in (lo..=hi).enumerate() {
        let src = &bases[k];
        let tgt = &bases[k + 1];
        let pos: HashMap<HomKey, usize> = tgt.iter().enumerate().map(|(i, &key)| (key, i)).collect();
        let mut m = Mat::zeros(tgt.len(), src.len());
        let sign = if n.rem_euclid(2) == 0 { ell - 1 } else { 1 };
        for (col, &(p, s, t, x)) in src.iter().enumerate() {
            let f: Elem = vec![(x, 1)];
            // d_D ∘ f lands in Hom(C^p, D^{p+n+1}).
            let dd = d.diff(p + n);
            for (t2, row) in dd.iter().enumerate() {
                for (z, coeff) in alg.mul(&row[t], &f) {
                    let i = pos[&(p, s, t2, z)];
                    m[(i, col)] = (m[(i, col)] + coeff) % ell;
                }
            }
            // −(−1)^n f ∘ d_C lands in Hom(C^{p−1}, D^{p+n}).
            let dc = c.diff(p - 1);
            if let Some(row) = dc.get(s) {
                for (s2, w) in row.iter().enumerate() {
                    for (z, coeff) in alg.mul(&f, w) {
                        let i = pos[&(p - 1, s2, t, z)];
                        m[(i, col)] = (m[(i, col)] + mul_mod(coeff, sign, ell)) % ell;
                    }
                }
            }
        }
        diffs.push(m);
    }
    HomComplex { lo, dims: bases[..bases.len() - 1].iter().map(|b| b.len()).collect(), diffs }
}

impl HomComplex {
    /// `dim H^n` for every degree in range.
    pub fn cohomology_dims(&self, ell: u64) -> BTreeMap<i64, usize> {
        let ranks: Vec<usize> = self.diffs.iter().map(|m| linalg::rank(m, ell)).collect();
        (0..self.dims.len())
            .map(|k| {
                let out = ranks.get(k).copied().unwrap_or(0);
                let inc = if k > 0 { ranks[k - 1] } else { 0 };
                (self.lo + k as i64, self.dims[k] - out - inc)
            })
            .collect()
    }
}

/// `dim Hom_{K^b}(C, D[i])` for every `i` where the Hom complex is nonzero.
pub fn homotopy_hom_all(alg: &TreeAlgebra, c: &ProjComplex, d: &ProjComplex) -> BTreeMap<i64, usize> {
    hom_complex(alg, c, d).cohomology_dims(alg.ell)
}

pub fn homotopy_hom(alg: &TreeAlgebra, c: &ProjComplex, d: &ProjComplex, i: i64) -> usize {
    homotopy_hom_all(alg, c, d).get(&i).copied().unwrap_or(0)
}

#[derive(Debug, Clone, Serialize)]
pub struct HomEntry {
    pub j: usize,
    pub j2: usize,
    /// Nonzero `(shift, dim)` pairs.
    pub dims: Vec<(i64, usize)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TiltingReport {
    pub hom: Vec<HomEntry>,
    pub end_dim: usize,
    pub star_dim: usize,
    pub generates: bool,
}

/// Dimension of the star algebra with `h0` edges and multiplicity `μ`.
pub fn star_dim(h0: u64, mu: u64) -> usize {
    (h0 * (h0 * mu + 1)) as usize
}

pub fn check_tilting(alg: &TreeAlgebra) -> Result<TiltingReport> {
    let complexes = (0..alg.n_vertices()).map(|j| rickard_complex(alg, j)).collect::<Result<Vec<_>>>()?;
    check_tilting_complexes(alg, &complexes, star_dim(alg.tree.h0, alg.tree.multiplicity))
}

/// Tilting check for an explicit family of complexes.
pub fn check_tilting_complexes(
    alg: &TreeAlgebra,
    complexes: &[ProjComplex],
    expected_end_dim: usize,
) -> Result<TiltingReport> {
    let n = complexes.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..n).map(move |k| (j, k))).collect();
    let hom: Vec<HomEntry> = pairs
        .par_iter()
        .map(|&(j, j2)| {
            let dims =
                homotopy_hom_all(alg, &complexes[j], &complexes[j2]).into_iter().filter(|&(_, d)| d != 0).collect();
            HomEntry { j, j2, dims }
        })
        .collect();
    for e in &hom {
        if let Some(&(shift, dim)) = e.dims.iter().find(|&&(i, _)| i != 0) {
            return Err(Error::TiltingFailure { j: e.j, j2: e.j2, shift, dim });
        }
    }
    let mut present = vec![false; alg.n_vertices()];
    for cx in complexes {
        for term in &cx.terms {
            for &a in term {
                present[a] = true;
            }
        }
    }
    let generates = present.iter().all(|&p| p);
    if !generates {
        let missing = present.iter().position(|p| !p).unwrap();
        return Err(Error::TiltingProperty(format!("P_{missing} is not a summand of any term")));
    }
    let end_dim: usize = hom.iter().map(|e| e.dims.iter().map(|d| d.1).sum::<usize>()).sum();
    if end_dim != expected_end_dim {
        return Err(Error::TiltingProperty(format!(
            "endomorphism ring has dimension {end_dim}, expected {expected_end_dim}"
        )));
    }
    Ok(TiltingReport { hom, end_dim, star_dim: expected_end_dim, generates })
}

#[derive(Debug, Clone, Serialize)]
pub struct PerversityRow {
    pub j: usize,
    pub height: u64,
    /// Top degree of the Rickard complex of `j`.
    pub degree: i64,
    /// Filtration index `i = r − hg`.
    pub index: i64,
    pub perversity: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PerversityReport {
    pub rows: Vec<PerversityRow>,
    /// `(i, {j : r − hg(S_j) ≤ i})`, increasing in `i`.
    pub filtration: Vec<(i64, Vec<usize>)>,
    pub degrees_match: bool,
    pub filtration_ok: bool,
}

pub fn perversity_report(tree: &PlanarBrauerTree) -> PerversityReport {
    let r = tree.r as i64;
    let rows: Vec<PerversityRow> = (0..tree.n_edges())
        .map(|j| {
            let (lo, walk) = rickard_terms(tree, j);
            let hg = height(tree, j);
            let index = r - hg as i64;
            PerversityRow {
                j,
                height: hg,
                degree: lo + walk.len() as i64 - 1,
                index,
                perversity: perversity(tree, index),
            }
        })
        .collect();
    let degrees_match = rows.iter().all(|row| row.degree == -row.perversity && row.degree == r + row.height as i64);
    let lo = rows.iter().map(|x| x.index).min().unwrap_or(r);
    let filtration: Vec<(i64, Vec<usize>)> =
        (lo..=r).map(|i| (i, rows.iter().filter(|x| x.index <= i).map(|x| x.j).collect())).collect();
    let monotone = filtration.windows(2).all(|w| w[0].1.iter().all(|j| w[1].1.contains(j)));
    let exhaustive = filtration.last().is_some_and(|f| f.1.len() == tree.n_edges());
    PerversityReport { rows, filtration, degrees_match, filtration_ok: monotone && exhaustive }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brauer_tree::{build_hlm_tree_with, build_star_tree, SeriesDatum};

    fn line(h0: u64, mu: u64) -> TreeAlgebra {
        let t = build_hlm_tree_with(&SeriesDatum::line(h0), 1, mu).unwrap();
        TreeAlgebra::from_tree(&t, 7).unwrap()
    }

    #[test]
    fn rickard_shapes() {
        let a = line(3, 1);
        let c = rickard_complex(&a, 2).unwrap();
        assert_eq!((c.lo, c.hi()), (1, 3));
        assert_eq!(c.terms, vec![vec![0], vec![1], vec![2]]);
        let star = build_star_tree(7, 3, 2).unwrap();
        let s = TreeAlgebra::from_tree(&star, 7).unwrap();
        assert_eq!(rickard_complex(&s, 1).unwrap(), ProjComplex::stalk(1, 0));
        assert!(rickard_complex(&a, 5).is_err());
    }

    #[test]
    fn line_cohomology() {
        let a = line(3, 1);
        let c = rickard_complex(&a, 2).unwrap();
        let h = cohomology(&a, &c);
        assert_eq!(h, vec![(1, vec![1, 0, 0]), (2, vec![0, 0, 0]), (3, vec![0, 0, 1])]);
    }

    #[test]
    fn euler_characters() {
        let a = line(3, 2);
        let t = &a.tree;
        let exc = t.exceptional();
        let e0 = euler_character(t, &rickard_complex(&a, 0).unwrap());
        assert_eq!(e0, CharacterVector::chi(t, exc, 1).add(&CharacterVector::chi(t, 0, 1)));
        let e1 = euler_character(t, &rickard_complex(&a, 1).unwrap());
        assert_eq!(e1, CharacterVector::chi(t, exc, 1).add(&CharacterVector::chi(t, 1, -1)));
        let e2 = euler_character(t, &rickard_complex(&a, 2).unwrap());
        assert_eq!(e2, CharacterVector::chi(t, exc, 1).add(&CharacterVector::chi(t, 2, 1)));
    }

    #[test]
    fn trim_identity() {
        let a = line(2, 1);
        let mut c = ProjComplex::zero();
        c.add_contractible(&a, 0, 0);
        assert!(cohomology(&a, &c).iter().all(|(_, d)| d.iter().all(|&x| x == 0)));
        assert!(trim(&a, &c, 0, 0).unwrap().is_zero());
    }

    #[test]
    fn trim_round_trip() {
        let a = line(3, 2);
        let c = rickard_complex(&a, 2).unwrap();
        let mut padded = c.clone();
        padded.add_contractible(&a, 1, 2);
        padded.add_contractible(&a, 0, 0);
        assert!(padded.check_d2(&a));
        let arrow = a.hom_basis(1, 0)[0];
        padded.change_basis(&a, 2, 0, 1, &vec![(a.hom_basis(1, 1)[0], 3)]);
        padded.change_basis(&a, 3, 1, 0, &vec![(arrow, 2)]);
        assert!(padded.check_d2(&a));
        let trimmed = trim(&a, &padded, 1, 3).unwrap();
        assert_eq!(trimmed.terms, c.terms);
        assert_eq!(homotopy_hom_all(&a, &trimmed, &c), homotopy_hom_all(&a, &c, &c));
        assert_eq!(trim(&a, &c, 1, 3).unwrap(), c);
        assert!(matches!(trim(&a, &c, 1, 2), Err(Error::CohomologyOutsideRange { degree: 3, .. })));
    }

    #[test]
    fn hom_complex_basics() {
        let a = line(2, 1);
        let p = ProjComplex::stalk(0, 1);
        let h = homotopy_hom_all(&a, &p, &p);
        assert_eq!(h.get(&0), Some(&2));
        let shifted = ProjComplex::stalk(0, 2);
        assert_eq!(homotopy_hom(&a, &p, &shifted, 1), 2);
        let c = rickard_complex(&a, 1).unwrap();
        assert!(homotopy_hom(&a, &c, &c, 0) >= 1);
    }

    #[test]
    fn tilting_line_and_star() {
        let a = line(3, 2);
        let rep = check_tilting(&a).unwrap();
        assert_eq!(rep.end_dim, 21);
        let star = build_star_tree(7, 3, 2).unwrap();
        let s = TreeAlgebra::from_tree(&star, 7).unwrap();
        assert_eq!(check_tilting(&s).unwrap().end_dim, s.dim());
    }

    #[test]
    fn sabotage_is_caught() {
        let a = line(3, 1);
        let mut cs: Vec<ProjComplex> = (0..3).map(|j| rickard_complex(&a, j).unwrap()).collect();
        cs[1].diffs[0][0][0] = Vec::new();
        assert!(matches!(check_tilting_complexes(&a, &cs, star_dim(3, 1)), Err(Error::TiltingFailure { .. })));
    }

    #[test]
    fn perversity_line() {
        let t = build_hlm_tree_with(&SeriesDatum::line(3), 1, 1).unwrap();
        let rep = perversity_report(&t);
        assert_eq!(rep.rows.iter().map(|r| r.degree).collect::<Vec<_>>(), vec![1, 2, 3]);
        assert!(rep.degrees_match && rep.filtration_ok);
    }
}
