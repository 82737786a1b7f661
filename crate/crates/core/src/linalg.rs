//! Dense matrices over `Z/n`, with elimination when `n` is prime or a prime
//! power.

use std::fmt;

use crate::arith::{add_mod, gcd, inv_mod, mul_mod, sub_mod};

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Build from signed rows, reducing every entry mod `modulus`.
    pub fn from_rows(rows: &[Vec<i64>], modulus: u64) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Mat::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = (x as i128).rem_euclid(modulus as i128) as u64;
            }
        }
        m
    }

    pub fn diag(entries: &[u64]) -> Self {
        let mut m = Mat::zeros(entries.len(), entries.len());
        for (i, &x) in entries.iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn reduce(&self, modulus: u64) -> Mat {
        Mat { data: self.data.iter().map(|x| x % modulus).collect(), ..self.clone() }
    }

    pub fn mul(&self, other: &Mat, modulus: u64) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other[(k, j)];
                    if b != 0 {
                        out[(i, j)] = add_mod(out[(i, j)], mul_mod(a, b, modulus), modulus);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64], modulus: u64) -> Vec<u64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(0, |acc, (&a, &b)| add_mod(acc, mul_mod(a, b, modulus), modulus)))
            .collect()
    }

    pub fn add(&self, other: &Mat, modulus: u64) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| add_mod(a, b, modulus)).collect();
        Mat { data, ..self.clone() }
    }

    pub fn sub(&self, other: &Mat, modulus: u64) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| sub_mod(a, b, modulus)).collect();
        Mat { data, ..self.clone() }
    }

    pub fn scale(&self, c: u64, modulus: u64) -> Mat {
        Mat { data: self.data.iter().map(|&a| mul_mod(a, c, modulus)).collect(), ..self.clone() }
    }

    /// Columns `cols` of `self`, in the given order.
    pub fn select_cols(&self, cols: &[usize]) -> Mat {
        let mut out = Mat::zeros(self.rows, cols.len());
        for (k, &j) in cols.iter().enumerate() {
            for i in 0..self.rows {
                out[(i, k)] = self[(i, j)];
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Mat {
        let mut out = Mat::zeros(rows.len(), self.cols);
        for (k, &i) in rows.iter().enumerate() {
            out.data[k * self.cols..(k + 1) * self.cols].copy_from_slice(self.row(i));
        }
        out
    }

    /// `[self | other]`.
    pub fn hcat(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut out = Mat::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)];
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)];
            }
        }
        out
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = u64;
    fn index(&self, (i, j): (usize, usize)) -> &u64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut u64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Reduced row echelon form over the prime field `F_p`, with pivot columns.
pub fn rref(a: &Mat, p: u64) -> (Mat, Vec<usize>) {
    let mut m = a.reduce(p);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(piv) = (row..m.rows).find(|&i| m[(i, col)] != 0) else {
            continue;
        };
        swap_rows(&mut m, row, piv);
        let inv = inv_mod(m[(row, col)], p).expect("nonzero element of a field");
        for j in col..m.cols {
            m[(row, j)] = mul_mod(m[(row, j)], inv, p);
        }
        for i in 0..m.rows {
            let f = m[(i, col)];
            if i != row && f != 0 {
                for j in col..m.cols {
                    let v = mul_mod(f, m[(row, j)], p);
                    m[(i, j)] = sub_mod(m[(i, j)], v, p);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (m, pivots)
}

fn swap_rows(m: &mut Mat, a: usize, b: usize) {
    if a != b {
        for j in 0..m.cols {
            m.data.swap(a * m.cols + j, b * m.cols + j);
        }
    }
}

pub fn rank(a: &Mat, p: u64) -> usize {
    rref(a, p).1.len()
}

/// Basis of `{x : a·x = 0}` over `F_p`, as columns of the returned matrix.
pub fn nullspace(a: &Mat, p: u64) -> Mat {
    let (r, pivots) = rref(a, p);
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
    let mut out = Mat::zeros(a.cols, free.len());
    for (k, &f) in free.iter().enumerate() {
        out[(f, k)] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            out[(pc, k)] = sub_mod(0, r[(i, f)], p);
        }
    }
    out
}

/// Indices of a maximal set of columns independent mod `p`.
pub fn column_basis(a: &Mat, p: u64) -> Vec<usize> {
    rref(a, p).1
}

/// Solve `a·x = b` over `F_p` for one right-hand side, if solvable.
pub fn solve(a: &Mat, b: &[u64], p: u64) -> Option<Vec<u64>> {
    let aug = a.hcat(&Mat { rows: b.len(), cols: 1, data: b.to_vec() });
    let (r, pivots) = rref(&aug, p);
    if pivots.last() == Some(&a.cols) {
        return None;
    }
    let mut x = vec![0; a.cols];
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = r[(i, a.cols)];
    }
    Some(x)
}

/// Inverse over `Z/modulus` where `modulus` is a power of the prime `ell`.
/// Pivots only need to be units, i.e. nonzero mod `ell`.
pub fn inverse_mod(a: &Mat, ell: u64, modulus: u64) -> Option<Mat> {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let mut m = a.reduce(modulus).hcat(&Mat::identity(n));
    for col in 0..n {
        let piv = (col..n).find(|&i| !m[(i, col)].is_multiple_of(ell))?;
        swap_rows(&mut m, col, piv);
        let inv = inv_mod(m[(col, col)], modulus)?;
        debug_assert_eq!(gcd(m[(col, col)], modulus), 1);
        for j in 0..2 * n {
            m[(col, j)] = mul_mod(m[(col, j)], inv, modulus);
        }
        for i in 0..n {
            let f = m[(i, col)];
            if i != col && f != 0 {
                for j in 0..2 * n {
                    let v = mul_mod(f, m[(col, j)], modulus);
                    m[(i, j)] = sub_mod(m[(i, j)], v, modulus);
                }
            }
        }
    }
    Some(m.select_cols(&(n..2 * n).collect::<Vec<_>>()))
}

/// `det(T·I − a)` over `Z/modulus` by Berkowitz's division-free algorithm.
/// Coefficients are returned lowest degree first; the polynomial is monic.
pub fn charpoly(a: &Mat, modulus: u64) -> Vec<u64> {
    assert_eq!(a.rows, a.cols, "characteristic polynomial of a non-square matrix");
    let n = a.rows;
    let a = a.reduce(modulus);
    // Highest degree first while building.
    let mut vect: Vec<u64> = vec![1 % modulus];
    for r in 0..n {
        let mut t = vec![0u64; r + 2];
        t[0] = 1 % modulus;
        t[1] = sub_mod(0, a[(r, r)], modulus);
        let mut v: Vec<u64> = (0..r).map(|i| a[(i, r)]).collect();
        for slot in t.iter_mut().skip(2) {
            let rv = (0..r).fold(0, |acc, k| add_mod(acc, mul_mod(a[(r, k)], v[k], modulus), modulus));
            *slot = sub_mod(0, rv, modulus);
            v = (0..r)
                .map(|i| (0..r).fold(0, |acc, k| add_mod(acc, mul_mod(a[(i, k)], v[k], modulus), modulus)))
                .collect();
        }
        let mut next = vec![0u64; r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, &vj) in vect.iter().enumerate().take(i + 1) {
                *slot = add_mod(*slot, mul_mod(t[i - j], vj, modulus), modulus);
            }
        }
        vect = next;
    }
    vect.reverse();
    vect
}

/// `Σ c_k a^k` over `Z/modulus`, coefficients lowest degree first.
pub fn poly_eval_mat(coeffs: &[u64], a: &Mat, modulus: u64) -> Mat {
    let n = a.rows;
    let mut acc = Mat::zeros(n, n);
    for &c in coeffs.iter().rev() {
        acc = acc.mul(a, modulus).add(&Mat::identity(n).scale(c, modulus), modulus);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rref_and_nullspace() {
        let a = Mat::from_rows(&[vec![1, 2, 3], vec![2, 4, 6]], 7);
        assert_eq!(rank(&a, 7), 1);
        let ns = nullspace(&a, 7);
        assert_eq!(ns.cols(), 2);
        assert!(a.mul(&ns, 7).is_zero());
    }

    #[test]
    fn charpoly_small() {
        let a = Mat::from_rows(&[vec![1, 2], vec![3, 4]], 49);
        // T^2 - 5T - 2
        assert_eq!(charpoly(&a, 49), vec![47, 44, 1]);
        assert_eq!(charpoly(&Mat::zeros(0, 0), 7), vec![1]);
    }

    #[test]
    fn inverse_over_prime_power() {
        let a = Mat::from_rows(&[vec![1, 7], vec![7, 8]], 49);
        let inv = inverse_mod(&a, 7, 49).unwrap();
        assert_eq!(a.mul(&inv, 49), Mat::identity(2));
        let sing = Mat::from_rows(&[vec![7, 0], vec![0, 1]], 49);
        assert!(inverse_mod(&sing, 7, 49).is_none());
    }

    proptest! {
        #[test]
        fn cayley_hamilton(entries in proptest::collection::vec(0u64..343, 16)) {
            let modulus = 343;
            let rows: Vec<Vec<i64>> = entries.chunks(4).map(|c| c.iter().map(|&x| x as i64).collect()).collect();
            let a = Mat::from_rows(&rows, modulus);
            let chi = charpoly(&a, modulus);
            prop_assert!(poly_eval_mat(&chi, &a, modulus).is_zero());
        }

        #[test]
        fn solve_roundtrip(entries in proptest::collection::vec(0u64..11, 12), x in proptest::collection::vec(0u64..11, 4)) {
            let rows: Vec<Vec<i64>> = entries.chunks(4).map(|c| c.iter().map(|&v| v as i64).collect()).collect();
            let a = Mat::from_rows(&rows, 11);
            let b = a.mul_vec(&x, 11);
            let y = solve(&a, &b, 11).unwrap();
            prop_assert_eq!(a.mul_vec(&y, 11), b);
        }
    }
}
