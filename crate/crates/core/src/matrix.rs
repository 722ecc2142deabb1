//! Exact integer matrices and quasi-Cartan matrices.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::bigraph::{Bigraph, Edge, LineStyle};

/// Dense square integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> IntMatrix {
        IntMatrix { n, data: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows; panics if the rows are not square.
    pub fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "matrix rows must be square");
            data.extend_from_slice(row);
        }
        IntMatrix { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        self.data[i * self.n + j] = value;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Matrix product; `None` on overflow.
    pub fn checked_mul(&self, other: &IntMatrix) -> Option<IntMatrix> {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b == 0 {
                        continue;
                    }
                    let term = a.checked_mul(b)?;
                    let acc = out.get(i, j).checked_add(term)?;
                    out.set(i, j, acc);
                }
            }
        }
        Some(out)
    }

    /// `selfᵀ · a · self`; `None` on overflow.
    pub fn congruence(&self, a: &IntMatrix) -> Option<IntMatrix> {
        self.transpose().checked_mul(a)?.checked_mul(self)
    }

    /// Exact determinant.
    pub fn determinant(&self) -> BigInt {
        if self.n == 0 {
            return BigInt::one();
        }
        // Bareiss with row pivoting.
        let n = self.n;
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from(self.get(i, j))).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(p) => {
                        m.swap(k, p);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                    m[i][j] = v;
                }
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
    }

    /// All leading principal minors `det(M[..k, ..k])` for `k = 1..=n`,
    /// computed by fraction-free elimination without pivoting. Once a minor
    /// vanishes the elimination cannot continue, so the returned vector stops
    /// at the first zero minor (inclusive).
    pub fn leading_minors(&self) -> Vec<BigInt> {
        let n = self.n;
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from(self.get(i, j))).collect())
            .collect();
        let mut minors = Vec::with_capacity(n);
        let mut prev = BigInt::one();
        for k in 0..n {
            // After eliminating columns < k, m[k][k] is the (k+1)-th leading minor.
            let pivot = m[k][k].clone();
            minors.push(pivot.clone());
            if pivot.is_zero() {
                break;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[i][j] * &pivot - &m[i][k] * &m[k][j]) / &prev;
                    m[i][j] = v;
                }
            }
            prev = pivot;
        }
        minors
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix has no rows")]
    Empty,
    #[error("diagonal entry ({0},{0}) is not 2")]
    DiagonalNotTwo(usize),
    #[error("entries ({i},{j}) and ({j},{i}) differ")]
    NotSymmetric { i: usize, j: usize },
}

/// Symmetric integer matrix with every diagonal entry equal to 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuasiCartanMatrix(IntMatrix);

impl QuasiCartanMatrix {
    pub fn new(m: IntMatrix) -> Result<QuasiCartanMatrix, MatrixError> {
        let n = m.size();
        if n == 0 {
            return Err(MatrixError::Empty);
        }
        for i in 0..n {
            if m.get(i, i) != 2 {
                return Err(MatrixError::DiagonalNotTwo(i));
            }
            for j in i + 1..n {
                if m.get(i, j) != m.get(j, i) {
                    return Err(MatrixError::NotSymmetric { i, j });
                }
            }
        }
        Ok(QuasiCartanMatrix(m))
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<QuasiCartanMatrix, MatrixError> {
        QuasiCartanMatrix::new(IntMatrix::from_rows(rows))
    }

    /// `2·I`, the matrix of the edgeless bigraph.
    pub fn identity2(n: usize) -> QuasiCartanMatrix {
        let mut m = IntMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, 2);
        }
        QuasiCartanMatrix(m)
    }

    /// Wraps a matrix the caller knows to be symmetric with diagonal 2.
    pub fn size(&self) -> usize {
        self.0.size()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.0.get(i, j)
    }

    pub fn as_int(&self) -> &IntMatrix {
        &self.0
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.0.rows()
    }

    /// Sets the symmetric pair `(i,j)`, `(j,i)`; `i != j`.
    pub(crate) fn set_sym(&mut self, i: usize, j: usize, value: i64) {
        debug_assert_ne!(i, j);
        self.0.set(i, j, value);
        self.0.set(j, i, value);
    }

    /// Largest off-diagonal entry magnitude, with its position.
    pub fn max_off_diagonal(&self) -> Option<(usize, usize, i64)> {
        let n = self.size();
        let mut best: Option<(usize, usize, i64)> = None;
        for i in 0..n {
            for j in i + 1..n {
                let a = self.get(i, j).abs();
                if best.map_or(true, |(_, _, b)| a > b) {
                    best = Some((i, j, a));
                }
            }
        }
        best
    }

    /// `PᵀAP` for the permutation sending position `k` to vertex `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> QuasiCartanMatrix {
        let n = self.size();
        assert_eq!(perm.len(), n);
        let mut m = IntMatrix::zeros(n);
        for k in 0..n {
            for l in 0..n {
                m.set(k, l, self.get(perm[k], perm[l]));
            }
        }
        QuasiCartanMatrix(m)
    }

    /// Block-diagonal sum.
    pub fn direct_sum(blocks: &[QuasiCartanMatrix]) -> QuasiCartanMatrix {
        let n: usize = blocks.iter().map(|b| b.size()).sum();
        let mut m = IntMatrix::zeros(n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.size() {
                for j in 0..b.size() {
                    m.set(off + i, off + j, b.get(i, j));
                }
            }
            off += b.size();
        }
        QuasiCartanMatrix(m)
    }

    /// Sylvester's criterion in exact arithmetic.
    pub fn is_positive_definite(&self) -> bool {
        let minors = self.0.leading_minors();
        minors.len() == self.size() && minors.iter().all(|m| m.is_positive())
    }

    /// The bigraph with `|A[i][j]|` parallel edges per pair, dotted iff positive.
    pub fn to_bigraph(&self) -> Bigraph {
        let n = self.size();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let a = self.get(i, j);
                let style = if a > 0 { LineStyle::Dotted } else { LineStyle::Solid };
                for _ in 0..a.unsigned_abs() {
                    edges.push(Edge::new(i, j, style));
                }
            }
        }
        Bigraph::new(n, edges).expect("matrix bigraph is well formed")
    }

    /// Matrix of a bigraph: each entry is the net multiplicity, dotted minus solid.
    pub fn from_bigraph(g: &Bigraph) -> QuasiCartanMatrix {
        let mut m = QuasiCartanMatrix::identity2(g.vertex_count());
        for e in g.edges() {
            let value = m.get(e.u, e.v) + e.style.sign();
            m.set_sym(e.u, e.v, value);
        }
        m
    }
}

impl fmt::Display for QuasiCartanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Free-function form of [`QuasiCartanMatrix::to_bigraph`].
pub fn matrix_to_bigraph(a: &QuasiCartanMatrix) -> Bigraph {
    a.to_bigraph()
}

/// Free-function form of [`QuasiCartanMatrix::from_bigraph`].
pub fn bigraph_to_matrix(g: &Bigraph) -> QuasiCartanMatrix {
    QuasiCartanMatrix::from_bigraph(g)
}

pub fn is_positive_definite(a: &QuasiCartanMatrix) -> bool {
    a.is_positive_definite()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraph::LineStyle::*;

    fn qc(rows: &[&[i64]]) -> QuasiCartanMatrix {
        QuasiCartanMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn validation() {
        assert_eq!(
            QuasiCartanMatrix::from_rows(&[vec![2, -1], vec![-1, 3]]),
            Err(MatrixError::DiagonalNotTwo(1))
        );
        assert_eq!(
            QuasiCartanMatrix::from_rows(&[vec![2, -1], vec![1, 2]]),
            Err(MatrixError::NotSymmetric { i: 0, j: 1 })
        );
        assert_eq!(QuasiCartanMatrix::from_rows(&[]), Err(MatrixError::Empty));
    }

    #[test]
    fn matrix_to_bigraph_examples() {
        assert_eq!(
            qc(&[&[2, -1], &[-1, 2]]).to_bigraph(),
            Bigraph::from_triples(2, &[(0, 1, Solid)])
        );
        assert_eq!(
            qc(&[&[2, 1], &[1, 2]]).to_bigraph(),
            Bigraph::from_triples(2, &[(0, 1, Dotted)])
        );
        assert_eq!(QuasiCartanMatrix::identity2(3).to_bigraph(), Bigraph::empty(3));
        // |A_ij| parallel edges
        let g = qc(&[&[2, -2], &[-2, 2]]).to_bigraph();
        assert_eq!(g.edge_count(), 2);
        assert!(!g.is_simple());
    }

    #[test]
    fn bigraph_to_matrix_examples() {
        assert_eq!(
            QuasiCartanMatrix::from_bigraph(&Bigraph::from_triples(2, &[(0, 1, Solid)])),
            qc(&[&[2, -1], &[-1, 2]])
        );
        assert_eq!(QuasiCartanMatrix::from_bigraph(&Bigraph::empty(4)), QuasiCartanMatrix::identity2(4));
        // net multiplicity on a multigraph
        let g = Bigraph::from_triples(2, &[(0, 1, Solid), (0, 1, Dotted), (0, 1, Dotted)]);
        assert_eq!(QuasiCartanMatrix::from_bigraph(&g), qc(&[&[2, 1], &[1, 2]]));
    }

    #[test]
    fn positive_definiteness_examples() {
        let a2 = qc(&[&[2, -1], &[-1, 2]]);
        assert_eq!(a2.as_int().leading_minors(), vec![BigInt::from(2), BigInt::from(3)]);
        assert!(a2.is_positive_definite());

        let triangle = qc(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]]);
        assert_eq!(triangle.as_int().determinant(), BigInt::zero());
        assert!(!triangle.is_positive_definite());

        for n in 1..6 {
            assert!(QuasiCartanMatrix::identity2(n).is_positive_definite());
        }
        // negative leading minor
        assert!(!qc(&[&[2, 3], &[3, 2]]).is_positive_definite());
    }

    #[test]
    fn determinant_with_zero_pivot() {
        let m = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(m.determinant(), BigInt::from(-1));
        let m = IntMatrix::from_rows(&[vec![0, 2, 1], vec![1, 0, 3], vec![4, 1, 0]]);
        // 0*(0-3) - 2*(0-12) + 1*(1-0) = 25
        assert_eq!(m.determinant(), BigInt::from(25));
    }

    #[test]
    fn large_entries_force_non_positive_definite_in_size_two_minors() {
        for c in [-5i64, -3, -2, 2, 3, 5] {
            let m = qc(&[&[2, c], &[c, 2]]);
            assert!(m.as_int().determinant() <= BigInt::zero());
            assert!(!m.is_positive_definite());
        }
    }
}
