//! The Brauer tree algebra of a planar tree, as a quiver with relations over
//! `F_ℓ` with an explicit monomial basis.
//!
//! Quiver vertices are the tree edges. At a node `v` with `L_v = s_v·μ_v > 1`
//! there is an arrow `e → pred_v(e)` for each incident edge. Basis paths are
//! the idempotents, the socle elements, and the walks `(e, v, k)` of length
//! `0 < k < L_v` around a single node. Structure constants are all 0 or 1.
//!
//! Multiplication is concatenation: `x·y` is `x` followed by `y`. The
//! projective `P_e = ε_e·A` is a right module, and `Hom(P_i, P_j) = ε_j A ε_i`
//! acts by left multiplication, so `g∘f` corresponds to `x_g·x_f`.

use std::collections::HashMap;

use serde::Serialize;

use crate::arith::{add_mod, is_prime, mul_mod};
use crate::brauer_tree::PlanarBrauerTree;
use crate::error::{Error, Result};
use crate::linalg::{self, Mat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PathKind {
    Idempotent,
    /// A walk of length `k` around `node`.
    Walk {
        node: usize,
        k: u64,
    },
    Socle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BasisPath {
    pub source: usize,
    pub target: usize,
    pub kind: PathKind,
}

/// A sparse element: `(basis index, coefficient)` pairs sorted by index.
pub type Elem = Vec<(usize, u64)>;

#[derive(Debug, Clone)]
pub struct TreeAlgebra {
    pub tree: PlanarBrauerTree,
    pub ell: u64,
    pub basis: Vec<BasisPath>,
    index: HashMap<(usize, PathKind), usize>,
    /// Length of the cycle around each tree node.
    cycle_len: Vec<u64>,
    arrows: Vec<usize>,
}

impl TreeAlgebra {
    pub fn from_tree(tree: &PlanarBrauerTree, ell: u64) -> Result<Self> {
        if !is_prime(ell) {
            return Err(Error::invalid(format!("{ell} is not prime")));
        }
        if tree.zeta_lift.is_some() && tree.ell != Some(ell) && !(ell - 1).is_multiple_of(tree.h0) {
            return Err(Error::FieldTooSmall(format!("F_{ell} has no primitive {}-th root of unity", tree.h0)));
        }
        let cycle_len: Vec<u64> =
            (0..tree.n_vertices()).map(|v| tree.cyclic_order(v).len() as u64 * tree.node_multiplicity(v)).collect();
        let mut basis = Vec::new();
        for e in 0..tree.n_edges() {
            basis.push(BasisPath { source: e, target: e, kind: PathKind::Idempotent });
            let (a, b) = tree.edge_ends(e);
            for v in [a, b] {
                let mut t = e;
                for k in 1..cycle_len[v] {
                    t = tree.pred_at(v, t);
                    basis.push(BasisPath { source: e, target: t, kind: PathKind::Walk { node: v, k } });
                }
            }
            basis.push(BasisPath { source: e, target: e, kind: PathKind::Socle });
        }
        let index = basis.iter().enumerate().map(|(i, p)| ((p.source, p.kind), i)).collect();
        let mut alg = TreeAlgebra { tree: tree.clone(), ell, basis, index, cycle_len, arrows: Vec::new() };
        alg.arrows = alg.compute_arrows();
        debug_assert!(alg.dim() > 64 || alg.is_associative(), "multiplication table is not associative");
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn n_vertices(&self) -> usize {
        self.tree.n_edges()
    }

    /// `Σ_e (2 + Σ_{v ∋ e} (s_v μ_v − 1))`.
    pub fn dim_formula(tree: &PlanarBrauerTree) -> usize {
        (0..tree.n_edges())
            .map(|e| {
                let (a, b) = tree.edge_ends(e);
                2 + [a, b]
                    .iter()
                    .map(|&v| tree.cyclic_order(v).len() as u64 * tree.node_multiplicity(v) - 1)
                    .sum::<u64>() as usize
            })
            .sum()
    }

    pub fn idempotent(&self, e: usize) -> usize {
        self.index[&(e, PathKind::Idempotent)]
    }

    pub fn socle(&self, e: usize) -> usize {
        self.index[&(e, PathKind::Socle)]
    }

    /// Path length, with the socle counted at the longer of its two cycles.
    pub fn length(&self, i: usize) -> u64 {
        let p = &self.basis[i];
        match p.kind {
            PathKind::Idempotent => 0,
            PathKind::Walk { k, .. } => k,
            PathKind::Socle => {
                let (a, b) = self.tree.edge_ends(p.source);
                self.cycle_len[a].max(self.cycle_len[b])
            }
        }
    }

    /// Product of two basis paths; `None` means zero.
    pub fn mul_basis(&self, x: usize, y: usize) -> Option<usize> {
        let (p, q) = (&self.basis[x], &self.basis[y]);
        if p.target != q.source {
            return None;
        }
        match (p.kind, q.kind) {
            (PathKind::Idempotent, _) => Some(y),
            (_, PathKind::Idempotent) => Some(x),
            (PathKind::Socle, _) | (_, PathKind::Socle) => None,
            (PathKind::Walk { node: v, k }, PathKind::Walk { node: w, k: k2 }) => {
                if v != w {
                    return None;
                }
                let total = k + k2;
                let len = self.cycle_len[v];
                if total < len {
                    Some(self.index[&(p.source, PathKind::Walk { node: v, k: total })])
                } else if total == len {
                    Some(self.socle(p.source))
                } else {
                    None
                }
            }
        }
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        let mut acc: HashMap<usize, u64> = HashMap::new();
        for &(i, a) in x {
            for &(j, b) in y {
                if let Some(k) = self.mul_basis(i, j) {
                    let e = acc.entry(k).or_insert(0);
                    *e = add_mod(*e, mul_mod(a, b, self.ell), self.ell);
                }
            }
        }
        let mut out: Elem = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        out.sort_unstable();
        out
    }

    /// Exhaustive check over all triples of basis paths.
    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul_basis(x, y);
                for z in 0..n {
                    let left = xy.and_then(|t| self.mul_basis(t, z));
                    let right = self.mul_basis(y, z).and_then(|t| self.mul_basis(x, t));
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn radical_basis(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].kind != PathKind::Idempotent).collect()
    }

    /// Basis elements of `rad A` not in `rad² A`.
    fn compute_arrows(&self) -> Vec<usize> {
        let rad = self.radical_basis();
        let mut in_rad2 = vec![false; self.dim()];
        for &x in &rad {
            for &y in &rad {
                if let Some(z) = self.mul_basis(x, y) {
                    in_rad2[z] = true;
                }
            }
        }
        rad.into_iter().filter(|&i| !in_rad2[i]).collect()
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    /// Number of arrows `i → j`.
    pub fn ext1(&self, i: usize, j: usize) -> usize {
        self.arrows.iter().filter(|&&a| self.basis[a].source == i && self.basis[a].target == j).count()
    }

    pub fn ext1_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.n_vertices();
        (0..n).map(|i| (0..n).map(|j| self.ext1(i, j)).collect()).collect()
    }

    /// Basis of `Hom(P_i, P_j) = ε_j A ε_i`: paths from `j` to `i`.
    pub fn hom_basis(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&x| self.basis[x].source == j && self.basis[x].target == i).collect()
    }

    pub fn hom_dim(&self, i: usize, j: usize) -> usize {
        self.hom_basis(i, j).len()
    }

    pub fn hom_matrix(&self) -> Vec<Vec<u64>> {
        let n = self.n_vertices();
        (0..n).map(|i| (0..n).map(|j| self.hom_dim(i, j) as u64).collect()).collect()
    }

    /// `P_e = ε_e·A` with right multiplication.
    pub fn projective(&self, e: usize) -> AlgModule {
        let rows: Vec<usize> = (0..self.dim()).filter(|&x| self.basis[x].source == e).collect();
        let pos: HashMap<usize, usize> = rows.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let actions = (0..self.dim())
            .map(|a| {
                let mut m = Mat::zeros(rows.len(), rows.len());
                for (col, &y) in rows.iter().enumerate() {
                    if let Some(z) = self.mul_basis(y, a) {
                        m[(pos[&z], col)] = 1;
                    }
                }
                m
            })
            .collect();
        AlgModule {
            vertex_of: rows.iter().map(|&x| self.basis[x].target).collect(),
            actions,
            n_vertices: self.n_vertices(),
            ell: self.ell,
        }
    }

    /// The uniserial module `k_M / k_{M−1} / … / k_m` over a star algebra.
    pub fn uniserial_n(&self, m: u64, big_m: u64) -> Result<AlgModule> {
        if self.tree.branches.iter().any(|b| b.len() != 1) {
            return Err(Error::NotStar);
        }
        let h0 = self.tree.h0;
        if m >= h0 || big_m < m || big_m - m >= h0 {
            return Err(Error::invalid(format!("[{m}, {big_m}] is not a branch mod {h0}")));
        }
        let len = big_m - m + 1;
        let top = (big_m % h0) as usize;
        let p = self.projective(top);
        let keep: Vec<usize> =
            (0..self.dim()).filter(|&x| self.basis[x].source == top && self.length(x) < len).collect();
        let all: Vec<usize> = (0..self.dim()).filter(|&x| self.basis[x].source == top).collect();
        let cols: Vec<usize> = keep.iter().map(|k| all.iter().position(|a| a == k).unwrap()).collect();
        // Quotient by the span of longer paths: keep only the short coordinates.
        let actions = p.actions.iter().map(|a| a.select_cols(&cols).select_rows(&cols)).collect();
        Ok(AlgModule {
            vertex_of: keep.iter().map(|&x| self.basis[x].target).collect(),
            actions,
            n_vertices: self.n_vertices(),
            ell: self.ell,
        })
    }
}

/// A right module given by the action of every basis path, on a basis graded
/// by quiver vertex.
#[derive(Debug, Clone)]
pub struct AlgModule {
    pub vertex_of: Vec<usize>,
    /// `actions[x]` sends `v` to `v·x`.
    pub actions: Vec<Mat>,
    pub n_vertices: usize,
    pub ell: u64,
}

impl AlgModule {
    pub fn dim(&self) -> usize {
        self.vertex_of.len()
    }

    pub fn dimension_vector(&self) -> Vec<usize> {
        let mut d = vec![0; self.n_vertices];
        for &v in &self.vertex_of {
            d[v] += 1;
        }
        d
    }

    /// Dimension vector of a graded subspace spanned by the columns of `s`.
    fn graded_dims(&self, s: &Mat) -> Vec<usize> {
        (0..self.n_vertices)
            .map(|v| {
                let rows: Vec<usize> = (0..self.dim()).filter(|&i| self.vertex_of[i] == v).collect();
                linalg::rank(&s.select_rows(&rows), self.ell)
            })
            .collect()
    }

    fn span(&self, s: &Mat) -> Mat {
        let piv = linalg::column_basis(s, self.ell);
        s.select_cols(&piv)
    }

    /// Radical layers, top first, as dimension vectors.
    pub fn radical_layers(&self, alg: &TreeAlgebra) -> Vec<Vec<usize>> {
        let mut layers = Vec::new();
        let mut cur = Mat::identity(self.dim());
        while cur.cols() > 0 {
            let mut next = Mat::zeros(self.dim(), 0);
            for &a in alg.arrows() {
                next = next.hcat(&self.actions[a].mul(&cur, self.ell));
            }
            let next = self.span(&next);
            let top = self.graded_dims(&cur);
            let below = self.graded_dims(&next);
            layers.push(top.iter().zip(&below).map(|(a, b)| a - b).collect());
            if next.cols() == cur.cols() {
                break;
            }
            cur = next;
        }
        layers
    }

    /// Dimension vector of the socle, the common kernel of all arrows.
    pub fn socle_vector(&self, alg: &TreeAlgebra) -> Vec<usize> {
        let mut stacked = Mat::zeros(0, self.dim());
        for &a in alg.arrows() {
            let t = self.actions[a].transpose();
            stacked = stacked.transpose().hcat(&t).transpose();
        }
        let ker = linalg::nullspace(&stacked, self.ell);
        self.graded_dims(&ker)
    }

    /// `act(x·y) = act(y)·act(x)` for every pair of basis paths.
    pub fn satisfies_relations(&self, alg: &TreeAlgebra) -> bool {
        let n = alg.dim();
        (0..n).all(|x| {
            (0..n).all(|y| {
                let lhs = self.actions[y].mul(&self.actions[x], self.ell);
                match alg.mul_basis(x, y) {
                    Some(z) => lhs == self.actions[z],
                    None => lhs.is_zero(),
                }
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brauer_tree::{build_hlm_tree_with, build_star_tree, cartan_matrix, decomposition_matrix, SeriesDatum};

    #[test]
    fn associative_on_random_trees() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let t = crate::selftest::random_hlm_tree(&mut rng);
            assert!(TreeAlgebra::from_tree(&t, 7).unwrap().is_associative());
        }
        let star = build_star_tree(49, 3, 18).unwrap();
        assert!(TreeAlgebra::from_tree(&star, 7).unwrap().is_associative());
    }

    fn unit(n: usize, i: usize) -> Vec<usize> {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    }

    #[test]
    fn star_dimensions() {
        let t = build_star_tree(7, 3, 2).unwrap();
        let a = TreeAlgebra::from_tree(&t, 7).unwrap();
        assert_eq!(a.dim(), 21);
        assert_eq!(a.hom_matrix(), cartan_matrix(&decomposition_matrix(&t)));
        assert_eq!(a.hom_dim(0, 0), 3);
        let p = a.projective(0);
        assert_eq!(p.dimension_vector(), vec![3, 2, 2]);
        assert_eq!(p.radical_layers(&a).len(), 7);
        assert!(p.satisfies_relations(&a));
    }

    #[test]
    fn small_dimensions() {
        let single = build_hlm_tree_with(&SeriesDatum::line(1), 1, 2).unwrap();
        assert_eq!(TreeAlgebra::from_tree(&single, 7).unwrap().dim(), 3);
        let line = build_hlm_tree_with(&SeriesDatum::line(2), 1, 1).unwrap();
        let a = TreeAlgebra::from_tree(&line, 7).unwrap();
        assert_eq!(a.dim(), 6);
        assert_eq!(a.hom_dim(0, 1), 1);
    }

    #[test]
    fn star_ext() {
        let t = build_star_tree(7, 3, 2).unwrap();
        let a = TreeAlgebra::from_tree(&t, 7).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(a.ext1(i, j) != 0, i == (j + 1) % 3, "ext1({i},{j})");
            }
        }
    }

    #[test]
    fn single_edge_loops() {
        let t = build_hlm_tree_with(&SeriesDatum::line(1), 1, 2).unwrap();
        assert_eq!(TreeAlgebra::from_tree(&t, 5).unwrap().ext1(0, 0), 1);
        let t = build_hlm_tree_with(&SeriesDatum::line(1), 1, 1).unwrap();
        let a = TreeAlgebra::from_tree(&t, 5).unwrap();
        assert_eq!((a.dim(), a.ext1(0, 0)), (2, 1));
    }

    #[test]
    fn line_projective_layers() {
        let t = build_hlm_tree_with(&SeriesDatum::line(3), 1, 1).unwrap();
        let a = TreeAlgebra::from_tree(&t, 7).unwrap();
        let n = 3;
        // interior edge
        let l = a.projective(1).radical_layers(&a);
        assert_eq!(l, vec![unit(n, 1), vec![1, 0, 1], unit(n, 1)]);
        // end of the branch
        let l = a.projective(2).radical_layers(&a);
        assert_eq!(l, vec![unit(n, 2), unit(n, 1), unit(n, 2)]);
        for e in 0..n {
            let p = a.projective(e);
            assert_eq!(p.socle_vector(&a), unit(n, e));
            assert!(p.satisfies_relations(&a));
        }
    }

    #[test]
    fn uniserial_modules() {
        let t = build_star_tree(7, 3, 2).unwrap();
        let a = TreeAlgebra::from_tree(&t, 7).unwrap();
        let n = a.uniserial_n(0, 2).unwrap();
        assert_eq!(n.radical_layers(&a), vec![unit(3, 2), unit(3, 1), unit(3, 0)]);
        assert_eq!(n.dimension_vector(), vec![1, 1, 1]);
        assert!(n.satisfies_relations(&a));
        let s = a.uniserial_n(1, 1).unwrap();
        assert_eq!(s.radical_layers(&a), vec![unit(3, 1)]);
        let line = build_hlm_tree_with(&SeriesDatum::line(3), 1, 1).unwrap();
        let b = TreeAlgebra::from_tree(&line, 7).unwrap();
        assert_eq!(b.uniserial_n(0, 2).unwrap_err(), Error::NotStar);
    }
}
