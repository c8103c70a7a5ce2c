//! Dense matrices over arbitrary-precision rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// `"num/den"`, or `"num"` for integers.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Row-major `rows × cols` matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    /// Rows must share a length; `cols` fixes the width when `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<Q>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect(), cols)
    }

    /// Columns given as vectors of length `rows`.
    pub fn from_columns(columns: &[Vec<Q>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn random<R: Rng>(rows: usize, cols: usize, range: i64, rng: &mut R) -> Self {
        let mut m = Self::zeros(rows, cols);
        for x in m.data.iter_mut() {
            *x = q(rng.random_range(-range..=range));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Product computed on integer rows of `self` and integer columns of
    /// `other`, one reduction per entry.
    pub fn mul(&self, other: &Matrix) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let left: Vec<(Vec<BigInt>, BigInt)> = (0..self.rows).map(|i| integer_vector(self.row(i))).collect();
        let right: Vec<(Vec<BigInt>, BigInt)> = (0..other.cols).map(|j| integer_vector(&other.column(j))).collect();
        let mut m = Self::zeros(self.rows, other.cols);
        for (i, (a, da)) in left.iter().enumerate() {
            for (j, (b, db)) in right.iter().enumerate() {
                let dot = integer_dot(a, b);
                if !dot.is_zero() {
                    m.data[i * other.cols + j] = Q::new(dot, da * db);
                }
            }
        }
        m
    }

    pub fn add(&self, other: &Matrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols);
        let (b, db) = integer_vector(v);
        (0..self.rows)
            .map(|i| {
                let (a, da) = integer_vector(self.row(i));
                Q::new(integer_dot(&a, &b), da * &db)
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Reduced row echelon form; returns the pivot columns.
    ///
    /// Fraction-free Gauss-Jordan on the rows scaled to integers: every
    /// intermediate entry is a minor, so each division by the previous pivot
    /// is exact, and all pivots equal the last one when the sweep ends.
    pub fn rref(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut a: Vec<Vec<BigInt>> = (0..rows).map(|i| primitive(integer_vector(self.row(i)).0)).collect();
        let mut pivots = Vec::new();
        let mut previous = BigInt::one();
        let mut row = 0;
        for col in 0..cols {
            if row == rows {
                break;
            }
            // the smallest candidate pivot keeps the minors short
            let Some(p) = (row..rows)
                .filter(|&i| !a[i][col].is_zero())
                .min_by_key(|&i| a[i].iter().map(BigInt::bits).sum::<u64>())
            else {
                continue;
            };
            a.swap(row, p);
            let pivot_row = std::mem::take(&mut a[row]);
            let pivot = pivot_row[col].clone();
            for (i, r) in a.iter_mut().enumerate() {
                if i == row {
                    continue;
                }
                let factor = r[col].clone();
                for (j, x) in r.iter_mut().enumerate() {
                    // columns of earlier pivots are zero here except on their own rows
                    let updated = &pivot * &*x - &factor * &pivot_row[j];
                    *x = if previous.is_one() { updated } else { updated / &previous };
                }
            }
            a[row] = pivot_row;
            previous = pivot;
            pivots.push(col);
            row += 1;
        }
        for (i, r) in a.into_iter().enumerate() {
            for (j, x) in r.into_iter().enumerate() {
                self.data[i * cols + j] = if i < row && !x.is_zero() { Q::new(x, previous.clone()) } else { Q::zero() };
            }
        }
        pivots
    }

    #[cfg(test)]
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Nonzero rows of the reduced row echelon form.
    pub fn row_basis(&self) -> Vec<Vec<Q>> {
        let mut m = self.clone();
        let r = m.rref().len();
        (0..r).map(|i| m.row(i).to_vec()).collect()
    }

    /// Basis of `{x : M x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Q::zero(); self.cols];
                v[f] = Q::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -m[(i, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Q::one();
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    /// Largest absolute numerator or denominator bit length, for diagnostics.
    pub fn max_bits(&self) -> u64 {
        self.data
            .iter()
            .map(|x| x.numer().abs().bits().max(x.denom().bits()))
            .max()
            .unwrap_or(0)
    }
}

/// `(v · d, d)` with `d` the least common denominator of `v`.
fn integer_vector(v: &[Q]) -> (Vec<BigInt>, BigInt) {
    let d = v.iter().fold(BigInt::one(), |acc, x| if x.denom().is_one() { acc } else { acc.lcm(x.denom()) });
    let scaled = v
        .iter()
        .map(|x| if d.is_one() { x.numer().clone() } else { x.numer() * (&d / x.denom()) })
        .collect();
    (scaled, d)
}

/// `v` divided by the gcd of its entries.
fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    v
}

fn integer_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_and_nullspace() {
        let m = Matrix::from_i64(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.apply(&ns[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_i64(&[vec![2, 1], vec![7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert!(Matrix::from_i64(&[vec![1, 2], vec![2, 4]]).inverse().is_none());
    }

    /// Plain Gauss-Jordan over the rationals.
    fn rref_oracle(m: &Matrix) -> (Matrix, Vec<usize>) {
        let mut m = m.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m[(i, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].recip();
            for j in 0..m.cols {
                m[(row, j)] = &m[(row, j)] * &inv;
            }
            for i in 0..m.rows {
                if i != row {
                    let factor = m[(i, col)].clone();
                    for j in 0..m.cols {
                        m[(i, j)] = &m[(i, j)] - &factor * &m[(row, j)];
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    #[test]
    fn fraction_free_kernels_match_the_rational_ones() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for trial in 0..300 {
            let (r, c) = (rng.random_range(1..8), rng.random_range(1..8));
            let k = rng.random_range(1..=r.min(c));
            // low rank and fractional entries
            let mut m = Matrix::random(r, k, 3, &mut rng).mul(&Matrix::random(k, c, 3, &mut rng));
            for x in m.data.iter_mut() {
                *x = &*x / q(rng.random_range(1..=4));
            }
            if trial % 5 == 0 {
                m.data[0] = Q::zero();
            }
            let (expected, expected_pivots) = rref_oracle(&m);
            let mut got = m.clone();
            assert_eq!(got.rref(), expected_pivots);
            assert_eq!(got, expected);

            let other = Matrix::random(c, 3, 4, &mut rng);
            let mut naive = Matrix::zeros(r, 3);
            for i in 0..r {
                for j in 0..3 {
                    naive[(i, j)] = (0..c).fold(Q::zero(), |acc, l| acc + &m[(i, l)] * &other[(l, j)]);
                }
            }
            assert_eq!(m.mul(&other), naive);
            assert_eq!(m.apply(&other.column(0)), naive.column(0));
        }
    }

    #[test]
    fn fractions_format() {
        assert_eq!(fmt_q(&frac(6, 4)), "3/2");
        assert_eq!(fmt_q(&frac(-4, 2)), "-2");
    }
}
