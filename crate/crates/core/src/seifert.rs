//! Twist knots, their Seifert matrices in the two conventions used by the
//! signature and subgroup pipelines, and exact evaluation of the bilinear
//! form.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Errors from matrix construction and form evaluation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeifertError {
    #[error("vector length {got} does not match matrix size {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix rows are not square ({rows} rows, row {row} has {cols} entries)")]
    NotSquare { rows: usize, row: usize, cols: usize },
    #[error("matrix size {size} is odd, genus must be integral")]
    OddSize { size: usize },
    #[error("A - A^T has determinant {det}, not a unimodular Seifert pairing")]
    NotUnimodular { det: BigInt },
    #[error("twist parameter {n} overflows the supported range")]
    KnotTooLarge { n: u64 },
}

/// The twist knot with `n` full twists; its double branched cover has first
/// homology of order `m = 4n + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwistKnot {
    n: u64,
}

impl TwistKnot {
    /// Largest supported twist parameter, chosen so `4n + 1` fits in `u64`.
    pub const MAX_N: u64 = (u64::MAX - 1) / 4;

    pub fn new(n: u64) -> Result<Self, SeifertError> {
        if n > Self::MAX_N {
            return Err(SeifertError::KnotTooLarge { n });
        }
        Ok(TwistKnot { n })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Order of the first homology of the double branched cover.
    pub fn m(&self) -> u64 {
        4 * self.n + 1
    }

    /// Genus-one Seifert matrix `[[-1, 1], [0, n]]`, the convention used by
    /// the tau-signature pipeline.
    pub fn seifert_matrix_tau(&self) -> SeifertMatrix {
        SeifertMatrix::from_rows(vec![vec![-1, 1], vec![0, self.n as i64]])
            .expect("twist matrix is a valid Seifert pairing")
    }

    /// Genus-one Seifert matrix `[[1, 1], [0, -n]]`, the convention used by
    /// the subgroup-search pipeline. Kept separate from the tau convention
    /// rather than reconciled by a basis change.
    pub fn seifert_matrix_pell(&self) -> SeifertMatrix {
        SeifertMatrix::from_rows(vec![vec![1, 1], vec![0, -(self.n as i64)]])
            .expect("twist matrix is a valid Seifert pairing")
    }
}

/// Integer vector paired against a Seifert form.
pub type IntVector = Vec<BigInt>;

/// Convenience constructor for small test vectors.
pub fn int_vec(coords: &[i64]) -> IntVector {
    coords.iter().map(|&c| BigInt::from(c)).collect()
}

/// Square integer matrix of even size `2g` whose antisymmetrization is
/// unimodular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertMatrix {
    size: usize,
    entries: Vec<i64>,
}

impl SeifertMatrix {
    /// Validates squareness, even size, and `det(A - A^T) = ±1`.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self, SeifertError> {
        let size = rows.len();
        for (row, r) in rows.iter().enumerate() {
            if r.len() != size {
                return Err(SeifertError::NotSquare { rows: size, row, cols: r.len() });
            }
        }
        if size % 2 != 0 {
            return Err(SeifertError::OddSize { size });
        }
        let entries: Vec<i64> = rows.into_iter().flatten().collect();
        let matrix = SeifertMatrix { size, entries };
        let det = matrix.antisymmetrization_det();
        if !(&det * &det).is_one() {
            return Err(SeifertError::NotUnimodular { det });
        }
        Ok(matrix)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn genus(&self) -> usize {
        self.size / 2
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.size + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.size).map(|i| (0..self.size).map(|j| self.entry(i, j)).collect()).collect()
    }

    pub fn transpose(&self) -> SeifertMatrix {
        let mut entries = vec![0i64; self.size * self.size];
        for i in 0..self.size {
            for j in 0..self.size {
                entries[j * self.size + i] = self.entry(i, j);
            }
        }
        SeifertMatrix { size: self.size, entries }
    }

    /// Block-diagonal sum; sizes add, so the empty matrix is the identity.
    pub fn block_sum(&self, other: &SeifertMatrix) -> SeifertMatrix {
        let size = self.size + other.size;
        let mut entries = vec![0i64; size * size];
        for i in 0..self.size {
            for j in 0..self.size {
                entries[i * size + j] = self.entry(i, j);
            }
        }
        for i in 0..other.size {
            for j in 0..other.size {
                entries[(self.size + i) * size + (self.size + j)] = other.entry(i, j);
            }
        }
        SeifertMatrix { size, entries }
    }

    /// Exact `v^T A w` over arbitrary-precision integers.
    pub fn evaluate_form(&self, v: &IntVector, w: &IntVector) -> Result<BigInt, SeifertError> {
        if v.len() != self.size {
            return Err(SeifertError::DimensionMismatch { expected: self.size, got: v.len() });
        }
        if w.len() != self.size {
            return Err(SeifertError::DimensionMismatch { expected: self.size, got: w.len() });
        }
        let mut acc = BigInt::zero();
        for i in 0..self.size {
            let mut row = BigInt::zero();
            for j in 0..self.size {
                row += &w[j] * self.entry(i, j);
            }
            acc += &v[i] * row;
        }
        Ok(acc)
    }

    /// `det(A - A^T)` by fraction-free elimination.
    pub fn antisymmetrization_det(&self) -> BigInt {
        let n = self.size;
        let m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from(self.entry(i, j) - self.entry(j, i))).collect())
            .collect();
        det_bareiss(m)
    }

    /// `det(A + A^T)` by fraction-free elimination.
    pub fn symmetrization_det(&self) -> BigInt {
        let n = self.size;
        let m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from(self.entry(i, j) + self.entry(j, i))).collect())
            .collect();
        det_bareiss(m)
    }
}

impl Serialize for SeifertMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SeifertMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<i64>>::deserialize(deserializer)?;
        SeifertMatrix::from_rows(rows).map_err(de::Error::custom)
    }
}

/// Standard Seifert matrix of the `(2, q)` torus knot for odd `q = 2n+1`:
/// the `2n x 2n` band matrix with `-1` on the diagonal and `1` just above it.
pub fn torus_2q_matrix(q_odd: u64) -> SeifertMatrix {
    assert!(q_odd % 2 == 1, "torus parameter must be odd, got {q_odd}");
    let half = ((q_odd - 1) / 2) as usize;
    let size = 2 * half;
    let mut rows = vec![vec![0i64; size]; size];
    for i in 0..size {
        rows[i][i] = -1;
        if i + 1 < size {
            rows[i][i + 1] = 1;
        }
    }
    SeifertMatrix::from_rows(rows).expect("band matrix is a valid Seifert pairing")
}

/// Exact determinant via the Bareiss fraction-free algorithm. The empty
/// matrix has determinant 1.
fn det_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = t / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = std::mem::take(&mut m[n - 1][n - 1]);
    if sign < 0 {
        -det
    } else {
        det
    }
}
