use super::Field;

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Result of row reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref<T> {
    pub rank: usize,
    /// Reduced row-echelon form, zero rows dropped.
    pub reduced: Matrix<T>,
    /// Pivot column of each nonzero row.
    pub pivots: Vec<usize>,
    /// One vector per free column, in increasing column order.
    pub kernel: Vec<Vec<T>>,
}

impl<T: Copy> Matrix<T> {
    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    /// Panics on ragged input.
    pub fn from_rows(cols: usize, rows: &[Vec<T>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend_from_slice(r);
        }
        Matrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c));
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }
}

impl<T: Copy + Eq + std::fmt::Debug> Matrix<T> {
    pub fn zeros<F: Field<Elem = T>>(field: &F, rows: usize, cols: usize) -> Self {
        Matrix::filled(rows, cols, field.zero())
    }

    pub fn identity<F: Field<Elem = T>>(field: &F, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn is_zero<F: Field<Elem = T>>(&self, field: &F) -> bool {
        self.data.iter().all(|&x| field.is_zero(x))
    }

    pub fn mul<F: Field<Elem = T>>(&self, field: &F, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if field.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, field.add(cur, field.mul(a, other.get(k, j))));
                }
            }
        }
        out
    }

    pub fn add<F: Field<Elem = T>>(&self, field: &F, other: &Matrix<T>) -> Matrix<T> {
        self.zip(other, |a, b| field.add(a, b))
    }

    pub fn sub<F: Field<Elem = T>>(&self, field: &F, other: &Matrix<T>) -> Matrix<T> {
        self.zip(other, |a, b| field.sub(a, b))
    }

    pub fn scale<F: Field<Elem = T>>(&self, field: &F, c: T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| field.mul(c, x)).collect(),
        }
    }

    /// `AB − BA`.
    pub fn commutator<F: Field<Elem = T>>(&self, field: &F, other: &Matrix<T>) -> Matrix<T> {
        self.mul(field, other).sub(field, &other.mul(field, self))
    }

    /// Row vector times matrix.
    pub fn apply_row<F: Field<Elem = T>>(&self, field: &F, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![field.zero(); self.cols];
        for (r, &a) in v.iter().enumerate() {
            if field.is_zero(a) {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                *o = field.add(*o, field.mul(a, self.get(r, c)));
            }
        }
        out
    }

    fn zip(&self, other: &Matrix<T>, f: impl Fn(T, T) -> T) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// Gauss–Jordan elimination. Pivots are the first nonzero entry in column
    /// order and are scaled to 1, so the output is canonical.
    pub fn rref<F: Field<Elem = T>>(&self, field: &F) -> Rref<T> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| !field.is_zero(m.get(r, col))) else {
                continue;
            };
            if pr != row {
                for c in 0..m.cols {
                    let tmp = m.get(pr, c);
                    m.set(pr, c, m.get(row, c));
                    m.set(row, c, tmp);
                }
            }
            let inv = field.inv(m.get(row, col)).expect("nonzero pivot");
            for c in col..m.cols {
                m.set(row, c, field.mul(inv, m.get(row, c)));
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col);
                if field.is_zero(factor) {
                    continue;
                }
                for c in col..m.cols {
                    let v = field.sub(m.get(r, c), field.mul(factor, m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        let rank = row;
        let reduced = Matrix {
            rows: rank,
            cols: m.cols,
            data: m.data[..rank * m.cols].to_vec(),
        };
        let mut kernel = Vec::new();
        let mut pivot_iter = pivots.iter().peekable();
        for free in 0..m.cols {
            if pivot_iter.peek() == Some(&&free) {
                pivot_iter.next();
                continue;
            }
            let mut v = vec![field.zero(); m.cols];
            v[free] = field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                if pc < free {
                    v[pc] = field.neg(reduced.get(r, free));
                }
            }
            kernel.push(v);
        }
        Rref {
            rank,
            reduced,
            pivots,
            kernel,
        }
    }

    pub fn rank<F: Field<Elem = T>>(&self, field: &F) -> usize {
        self.rref(field).rank
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse<F: Field<Elem = T>>(&self, field: &F) -> Option<Matrix<T>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, field.one());
        }
        let red = aug.rref(field);
        if red.rank < n || red.pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.reduced.get(r, n + c));
            }
        }
        Some(inv)
    }

    pub fn determinant<F: Field<Elem = T>>(&self, field: &F) -> T {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = field.one();
        for col in 0..n {
            let Some(pr) = (col..n).find(|&r| !field.is_zero(m.get(r, col))) else {
                return field.zero();
            };
            if pr != col {
                for c in 0..n {
                    let tmp = m.get(pr, c);
                    m.set(pr, c, m.get(col, c));
                    m.set(col, c, tmp);
                }
                det = field.neg(det);
            }
            let piv = m.get(col, col);
            det = field.mul(det, piv);
            let inv = field.inv(piv).expect("nonzero pivot");
            for r in col + 1..n {
                let factor = field.mul(m.get(r, col), inv);
                if field.is_zero(factor) {
                    continue;
                }
                for c in col..n {
                    let v = field.sub(m.get(r, c), field.mul(factor, m.get(col, c)));
                    m.set(r, c, v);
                }
            }
        }
        det
    }
}

/// Coefficients expressing `v` in terms of the rows of `basis`, if `v` lies in
/// their span. The rows must be linearly independent.
pub fn express<F: Field>(field: &F, basis: &[Vec<F::Elem>], v: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let k = basis.len();
    let n = v.len();
    if k == 0 {
        return v.iter().all(|&x| field.is_zero(x)).then(Vec::new);
    }
    // columns: basis vectors, augmented by v; solve sum c_i b_i = v
    let mut m = Matrix::zeros(field, n, k + 1);
    for (i, b) in basis.iter().enumerate() {
        for (r, &x) in b.iter().enumerate() {
            m.set(r, i, x);
        }
    }
    for (r, &x) in v.iter().enumerate() {
        m.set(r, k, x);
    }
    let red = m.rref(field);
    if red.pivots.contains(&k) {
        return None;
    }
    debug_assert_eq!(red.rank, k, "basis rows must be independent");
    let mut coeffs = vec![field.zero(); k];
    for (r, &pc) in red.pivots.iter().enumerate() {
        coeffs[pc] = red.reduced.get(r, k);
    }
    Some(coeffs)
}

/// Canonical basis (rref rows) of the span of `vectors` in a space of dimension `dim`.
pub fn span_basis<F: Field>(field: &F, dim: usize, vectors: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    Matrix::from_rows(dim, vectors).rref(field).reduced.to_rows()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{BaseField, ExtElem, ExtField};

    #[test]
    fn rref_examples() {
        let f3 = BaseField::new(3).unwrap();
        let id = Matrix::identity(&f3, 2);
        let r = id.rref(&f3);
        assert_eq!(r.rank, 2);
        assert!(r.kernel.is_empty());

        let z = Matrix::zeros(&f3, 2, 2);
        let r = z.rref(&f3);
        assert_eq!(r.rank, 0);
        assert_eq!(r.kernel, vec![vec![1, 0], vec![0, 1]]);

        let e = ExtField::new(3, 0, 2).unwrap();
        let m = Matrix::from_rows(2, &[vec![ExtElem::ONE, ExtElem::MU]]);
        let r = m.rref(&e);
        assert_eq!(r.rank, 1);
        assert_eq!(r.kernel, vec![vec![ExtElem::new(0, 2), ExtElem::ONE]]);
    }

    #[test]
    fn inverse_and_determinant() {
        let f5 = BaseField::new(5).unwrap();
        let m = Matrix::from_rows(2, &[vec![1, 2], vec![3, 4]]);
        assert_eq!(m.determinant(&f5), f5.reduce(-2));
        let inv = m.inverse(&f5).unwrap();
        assert_eq!(m.mul(&f5, &inv), Matrix::identity(&f5, 2));
        let sing = Matrix::from_rows(2, &[vec![1, 2], vec![2, 4]]);
        assert!(sing.inverse(&f5).is_none());
        assert_eq!(sing.determinant(&f5), 0);
    }

    #[test]
    fn express_in_basis() {
        let f3 = BaseField::new(3).unwrap();
        let basis = vec![vec![1, 0, 1], vec![0, 1, 1]];
        assert_eq!(express(&f3, &basis, &[2, 1, 0]), Some(vec![2, 1]));
        assert_eq!(express(&f3, &basis, &[1, 0, 0]), None);
    }
}
