use std::fmt;
use std::ops::{Index, IndexMut};

use super::poly::Poly;
use super::ring::{EuclideanRing, Ring};
use super::scalar::ExactScalar;

/// Dense row-major matrix over a ring.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "{:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
            if r + 1 < self.rows {
                write!(f, "; ")?;
            }
        }
        write!(f, "]")
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn map<U: Clone>(&self, mut f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(&mut f).collect() }
    }

    pub fn try_map<U: Clone, E>(&self, mut f: impl FnMut(&T) -> Result<U, E>) -> Result<Matrix<U>, E> {
        let data = self.data.iter().map(&mut f).collect::<Result<Vec<_>, E>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |r, c| self[(rows[r], cols[c])].clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape());
        Matrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)].add(&other[(r, c)]))
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape());
        Matrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)].sub(&other[(r, c)]))
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.neg())
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.mul(s))
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc.add(&self[(i, i)]))
    }

    pub fn pow(&self, e: u32) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut acc = Matrix::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Places `blocks[i][j]` (each `k×k`) into a `(k·n)×(k·m)` matrix.
    pub fn from_blocks(blocks: &[Vec<Matrix<T>>], k: usize) -> Self {
        let n = blocks.len();
        let m = blocks.first().map_or(0, |r| r.len());
        let mut out = Matrix::zeros(k * n, k * m);
        for (bi, row) in blocks.iter().enumerate() {
            for (bj, b) in row.iter().enumerate() {
                for r in 0..k {
                    for c in 0..k {
                        out[(bi * k + r, bj * k + c)] = b[(r, c)].clone();
                    }
                }
            }
        }
        out
    }

    /// Stacks matrices with equal column counts vertically.
    pub fn vstack(parts: &[Matrix<T>], cols: usize) -> Self {
        let rows: usize = parts.iter().map(|p| p.rows).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.cols, cols);
            for r in 0..p.rows {
                for c in 0..cols {
                    out[(off + r, c)] = p[(r, c)].clone();
                }
            }
            off += p.rows;
        }
        out
    }
}

impl<T: EuclideanRing> Matrix<T> {
    /// Fraction-free (Bareiss) determinant; requires exact division in `T`.
    pub fn det(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut a = self.clone();
        let mut sign_flip = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&r| !a[(r, k)].is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign_flip = !sign_flip;
                    }
                    None => return T::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[(i, j)].mul(&a[(k, k)]).sub(&a[(i, k)].mul(&a[(k, j)]));
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division not exact");
                    a[(i, j)] = q;
                }
                a[(i, k)] = T::zero();
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if sign_flip {
            d.neg()
        } else {
            d
        }
    }
}

impl Matrix<ExactScalar> {
    /// Gauss–Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::<ExactScalar>::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| !a[(r, c)].is_zero())?;
            a.swap_rows(c, p);
            inv.swap_rows(c, p);
            let s = a[(c, c)].inv().ok()?;
            for j in 0..n {
                a[(c, j)] = &a[(c, j)] * &s;
                inv[(c, j)] = &inv[(c, j)] * &s;
            }
            for r in 0..n {
                if r == c || a[(r, c)].is_zero() {
                    continue;
                }
                let f = a[(r, c)].clone();
                for j in 0..n {
                    a[(r, j)] = &a[(r, j)] - &(&f * &a[(c, j)]);
                    inv[(r, j)] = &inv[(r, j)] - &(&f * &inv[(c, j)]);
                }
            }
        }
        Some(inv)
    }

    /// Characteristic polynomial `det(x·I − A)` via reduction to upper
    /// Hessenberg form followed by the standard recurrence.
    pub fn charpoly(&self) -> Poly {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut h = self.clone();
        // Hessenberg reduction by similarity transforms.
        for k in 0..n.saturating_sub(2) {
            let piv = (k + 1..n).find(|&r| !h[(r, k)].is_zero());
            let Some(p) = piv else { continue };
            if p != k + 1 {
                h.swap_rows(p, k + 1);
                h.swap_cols(p, k + 1);
            }
            let inv = h[(k + 1, k)].inv().expect("nonzero pivot");
            for i in k + 2..n {
                if h[(i, k)].is_zero() {
                    continue;
                }
                let f = &h[(i, k)] * &inv;
                for j in 0..n {
                    let v = &h[(i, j)] - &(&f * &h[(k + 1, j)]);
                    h[(i, j)] = v;
                }
                for j in 0..n {
                    let v = &h[(j, k + 1)] + &(&f * &h[(j, i)]);
                    h[(j, k + 1)] = v;
                }
            }
        }
        // p_0 = 1, p_m(x) = (x − h_mm) p_{m−1} − Σ_{i<m} h_{i,m} (Π_{j=i+1}^{m} h_{j,j−1}) p_{i−1}
        let x = Poly::monomial(ExactScalar::one(), 1);
        let mut ps: Vec<Poly> = vec![Poly::one()];
        for m in 0..n {
            let mut pm = x.sub(&Poly::constant(h[(m, m)].clone())).mul(&ps[m]);
            let mut prod = ExactScalar::one();
            for i in (0..m).rev() {
                prod = &prod * &h[(i + 1, i)];
                if prod.is_zero() {
                    break;
                }
                let coef = &h[(i, m)] * &prod;
                pm = pm.sub(&ps[i].scale(&coef));
            }
            ps.push(pm);
        }
        ps.pop().unwrap()
    }
}

pub fn int_matrix(rows: &[&[i64]]) -> Matrix<ExactScalar> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| ExactScalar::from_i64(x)).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_matches_bareiss_det() {
        let a = int_matrix(&[&[2, 1, 0], &[1, 1, 3], &[-4, 0, 5]]);
        let cp = a.charpoly();
        // det(xI - A) evaluated at a few integers against Bareiss on scalars
        for x in -3..4 {
            let xi = Matrix::<ExactScalar>::identity(3).scale(&ExactScalar::from_i64(x)).sub(&a);
            assert_eq!(cp.eval(&ExactScalar::from_i64(x)), xi.det());
        }
    }

    #[test]
    fn det_of_empty_is_one() {
        assert_eq!(Matrix::<ExactScalar>::zeros(0, 0).det(), ExactScalar::one());
    }
}
