use std::fmt;

use super::local::{LocalElt, LocalRing};
use super::poly::Poly;
use super::poly_ring::PolyRing;
use super::scalar::{Field, Scalar};
use super::Ring;
use crate::error::{Error, Result};
use crate::util::combinations;

/// Dense row-major matrix over a [`Ring`].
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R: Ring> {
    ring: R,
    rows: usize,
    cols: usize,
    data: Vec<R::Elem>,
}

impl<R: Ring> Matrix<R> {
    pub fn new(ring: R, rows: usize, cols: usize, data: Vec<R::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { ring, rows, cols, data })
    }

    pub fn zeros(ring: R, rows: usize, cols: usize) -> Self {
        let z = ring.zero();
        Matrix {
            data: vec![z; rows * cols],
            ring,
            rows,
            cols,
        }
    }

    pub fn identity(ring: R, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = m.ring.one();
        }
        m
    }

    pub fn from_fn(ring: R, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { ring, rows, cols, data }
    }

    pub fn from_rows(ring: R, rows: Vec<Vec<R::Elem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            ring,
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn column(ring: R, entries: Vec<R::Elem>) -> Self {
        let n = entries.len();
        Matrix { ring, rows: n, cols: 1, data: entries }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[R::Elem] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<R::Elem> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<R::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<R::Elem>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.ring.clone(), self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let r = &self.ring;
        Ok(Self::from_fn(r.clone(), self.rows, other.cols, |i, j| {
            let mut acc = r.zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                let b = other.get(k, j);
                if r.is_zero(a) || r.is_zero(b) {
                    continue;
                }
                acc = r.add(&acc, &r.mul(a, b));
            }
            acc
        }))
    }

    /// Panics on a shape mismatch; see [`Matrix::checked_mul`].
    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("matrix product shape")
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&R::Elem, &R::Elem) -> R::Elem) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shape");
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| self.ring.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| self.ring.sub(a, b))
    }

    pub fn neg(&self) -> Self {
        self.map(|a| self.ring.neg(a))
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        self.map(|a| self.ring.mul(a, c))
    }

    pub fn map(&self, f: impl Fn(&R::Elem) -> R::Elem) -> Self {
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn map_ring<S: Ring>(&self, ring: S, f: impl Fn(&R::Elem) -> S::Elem) -> Matrix<S> {
        Matrix {
            ring,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(self.ring.clone(), rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self::from_fn(self.ring.clone(), r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack rows");
        Self::from_fn(self.ring.clone(), self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack cols");
        Self::from_fn(self.ring.clone(), self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.get(i, j).clone()
            } else {
                other.get(i - self.rows, j).clone()
            }
        })
    }

    pub fn block_diag(&self, other: &Self) -> Self {
        let r = &self.ring;
        Self::from_fn(r.clone(), self.rows + other.rows, self.cols + other.cols, |i, j| {
            match (i < self.rows, j < self.cols) {
                (true, true) => self.get(i, j).clone(),
                (false, false) => other.get(i - self.rows, j - self.cols).clone(),
                _ => r.zero(),
            }
        })
    }

    /// `[[a, b], [c, d]]`.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        a.hstack(b).vstack(&c.hstack(d))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| self.ring.is_zero(a))
    }

    pub fn equals(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| self.ring.equal(a, b))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && self.equals(&Self::identity(self.ring.clone(), self.rows))
    }

    /// Zero diagonal and `A^T = -A`.
    pub fn is_alternating(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let r = &self.ring;
        (0..self.rows).all(|i| {
            r.is_zero(self.get(i, i))
                && (i + 1..self.cols).all(|j| r.is_zero(&r.add(self.get(i, j), self.get(j, i))))
        })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (i + 1..self.cols).all(|j| self.ring.equal(self.get(i, j), self.get(j, i))))
    }

    pub fn det(&self) -> Result<R::Elem> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.ring.det(self))
    }

    /// All `k x k` minors, rows and columns in lexicographic order.
    pub fn minors(&self, k: usize) -> Vec<R::Elem> {
        if k == 0 {
            return vec![self.ring.one()];
        }
        if k > self.rows || k > self.cols {
            return Vec::new();
        }
        let rs = combinations(self.rows, k);
        let cs = combinations(self.cols, k);
        let mut out = Vec::with_capacity(rs.len() * cs.len());
        for r in &rs {
            for c in &cs {
                out.push(self.ring.det(&self.submatrix(r, c)));
            }
        }
        out
    }

    pub fn adjugate(&self) -> Self {
        assert!(self.is_square(), "adjugate of a non-square matrix");
        let n = self.rows;
        let r = &self.ring;
        if n == 1 {
            return Self::identity(r.clone(), 1);
        }
        Self::from_fn(r.clone(), n, n, |i, j| {
            let rows: Vec<usize> = (0..n).filter(|&k| k != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&k| k != i).collect();
            let d = r.det(&self.submatrix(&rows, &cols));
            if (i + j) % 2 == 0 {
                d
            } else {
                r.neg(&d)
            }
        })
    }

    /// Two-sided inverse when the determinant is a unit.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        self.ring
            .inverse(self)
            .ok_or_else(|| Error::NotAUnit("determinant".into()))
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|a| self.ring.render(a)).collect();
            s.push_str("[ ");
            s.push_str(&row.join(", "));
            s.push_str(" ]\n");
        }
        s
    }
}

impl<R: Ring> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

pub(crate) fn bareiss_det<R: Ring>(m: &Matrix<R>) -> R::Elem {
    let n = m.rows;
    let r = &m.ring;
    if n == 0 {
        return r.one();
    }
    let mut a = m.data.clone();
    let mut negate = false;
    let mut prev = r.one();
    for k in 0..n - 1 {
        if r.is_zero(&a[k * n + k]) {
            let Some(p) = (k + 1..n).find(|&i| !r.is_zero(&a[i * n + k])) else {
                return r.zero();
            };
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            negate = !negate;
        }
        let pivot = a[k * n + k].clone();
        for i in k + 1..n {
            let aik = a[i * n + k].clone();
            for j in k + 1..n {
                let t = r.sub(&r.mul(&a[i * n + j], &pivot), &r.mul(&aik, &a[k * n + j]));
                a[i * n + j] = r.exact_div(&t, &prev).expect("Bareiss division is exact");
            }
        }
        prev = pivot;
    }
    let d = a[n * n - 1].clone();
    if negate {
        r.neg(&d)
    } else {
        d
    }
}

pub(crate) fn gauss_det(m: &Matrix<Field>) -> Scalar {
    let n = m.rows;
    let mut a = m.data.clone();
    let mut det = m.ring.one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i * n + k].is_zero()) else {
            return m.ring.zero();
        };
        if p != k {
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            det = det.neg();
        }
        let pivot = a[k * n + k].clone();
        det = det.mul(&pivot);
        let inv = pivot.inv().unwrap();
        for i in k + 1..n {
            if a[i * n + k].is_zero() {
                continue;
            }
            let f = a[i * n + k].mul(&inv);
            for j in k..n {
                let t = a[i * n + j].sub(&f.mul(&a[k * n + j]));
                a[i * n + j] = t;
            }
        }
    }
    det
}

pub(crate) fn local_gauss(m: &Matrix<LocalRing>) -> Option<Matrix<LocalRing>> {
    let n = m.rows;
    let r = &m.ring;
    let mut a = m.clone();
    let mut inv = Matrix::identity(r.clone(), n);
    for k in 0..n {
        let p = (k..n).find(|&i| a.get(i, k).is_unit())?;
        if p != k {
            for j in 0..n {
                a.data.swap(k * n + j, p * n + j);
                inv.data.swap(k * n + j, p * n + j);
            }
        }
        let pivot = a.get(k, k).clone();
        let pinv = r.unit_inverse(&pivot)?;
        for j in 0..n {
            a.data[k * n + j] = r.mul(&pinv, &a.data[k * n + j]);
            inv.data[k * n + j] = r.mul(&pinv, &inv.data[k * n + j]);
        }
        for i in 0..n {
            if i == k || a.get(i, k).is_zero() {
                continue;
            }
            let f = a.get(i, k).clone();
            for j in 0..n {
                let t = r.sub(&a.data[i * n + j], &r.mul(&f, &a.data[k * n + j]));
                a.data[i * n + j] = t;
                let t = r.sub(&inv.data[i * n + j], &r.mul(&f, &inv.data[k * n + j]));
                inv.data[i * n + j] = t;
            }
        }
    }
    Some(inv)
}

pub(crate) fn gauss_inverse(m: &Matrix<Field>) -> Option<Matrix<Field>> {
    let n = m.rows;
    let aug = m.hstack(&Matrix::identity(m.ring, n));
    let (r, pivots) = aug.rref();
    if pivots.len() < n || (n > 0 && pivots[n - 1] >= n) {
        return None;
    }
    Some(r.block(0, n, n, 2 * n))
}

impl Matrix<Field> {
    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix<Field>, Vec<usize>) {
        let mut a = self.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    a.data.swap(r * cols + j, p * cols + j);
                }
            }
            let inv = a.get(r, c).inv().unwrap();
            for j in c..cols {
                let v = a.get(r, j).mul(&inv);
                a.set(r, j, v);
            }
            for i in 0..rows {
                if i == r || a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c).clone();
                for j in c..cols {
                    let v = a.get(i, j).sub(&f.mul(a.get(r, j)));
                    a.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, as columns.
    pub fn kernel(&self) -> Matrix<Field> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.ring, self.cols, free.len());
        for (t, &f) in free.iter().enumerate() {
            k.set(f, t, self.ring.one());
            for (i, &p) in pivots.iter().enumerate() {
                k.set(p, t, r.get(i, f).neg());
            }
        }
        k
    }

    /// A solution of `self * x = b` (free variables set to zero).
    pub fn solve(&self, b: &Matrix<Field>) -> Option<Matrix<Field>> {
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.ring, self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, r.get(i, self.cols + j).clone());
            }
        }
        Some(x)
    }

    /// Lifts to constant polynomials.
    pub fn to_poly(&self, ring: &PolyRing) -> Matrix<PolyRing> {
        self.map_ring(ring.clone(), |a| ring.constant(a.clone()))
    }
}

impl Matrix<PolyRing> {
    pub fn eval(&self, point: &[Scalar]) -> Matrix<Field> {
        let f = self.ring.field();
        self.map_ring(f, |p| p.eval_over(f, point))
    }

    pub fn at_origin(&self) -> Matrix<Field> {
        self.eval(&self.ring.origin())
    }

    pub fn to_local(&self) -> Matrix<LocalRing> {
        let l = LocalRing::new(self.ring.clone());
        self.map_ring(l, |p| LocalElt::from_poly(p.clone()))
    }

    pub fn is_constant(&self) -> bool {
        self.data.iter().all(Poly::is_constant)
    }

    pub fn max_degree(&self) -> u32 {
        self.data.iter().filter_map(Poly::total_degree).max().unwrap_or(0)
    }
}

impl Matrix<LocalRing> {
    /// Writes the matrix as `N / d` with `N` polynomial; returns `(N, d)`.
    pub fn clear_denominators(&self) -> (Matrix<PolyRing>, Poly) {
        let base = self.ring.base().clone();
        let common = LocalElt::common_denominator(self.data.iter());
        let d = LocalElt::product(&base, &common);
        let n = self.map_ring(base.clone(), |e| e.numerator_over(&common));
        (n, d)
    }

    pub fn eval(&self, point: &[Scalar]) -> Option<Matrix<Field>> {
        let f = self.ring.base().field();
        let data: Option<Vec<Scalar>> = self.data.iter().map(|e| e.eval_over(f, point)).collect();
        Some(Matrix {
            ring: f,
            rows: self.rows,
            cols: self.cols,
            data: data?,
        })
    }

    pub fn at_origin(&self) -> Matrix<Field> {
        self.eval(&self.ring.base().origin()).expect("local entries are defined at the origin")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::permutations_with_sign;

    fn q(rows: &[&[i64]]) -> Matrix<Field> {
        Matrix::from_rows(
            Field::Rational,
            rows.iter().map(|r| r.iter().map(|&v| Field::Rational.from_i64(v)).collect()).collect(),
        )
        .unwrap()
    }

    fn leibniz<R: Ring>(m: &Matrix<R>) -> R::Elem {
        let r = m.ring();
        let mut acc = r.zero();
        for (p, s) in permutations_with_sign(m.rows()) {
            let mut t = r.one();
            for (i, &j) in p.iter().enumerate() {
                t = r.mul(&t, m.get(i, j));
            }
            acc = if s { r.add(&acc, &t) } else { r.sub(&acc, &t) };
        }
        acc
    }

    #[test]
    fn determinants_agree_with_leibniz() {
        let m = q(&[&[2, -1, 0, 3], &[1, 4, 2, 0], &[0, 0, 0, 1], &[5, 1, -2, 2]]);
        assert_eq!(m.det().unwrap(), leibniz(&m));
        assert_eq!(bareiss_det(&m), leibniz(&m));
        let ring = PolyRing::standard(Field::Rational, 2);
        let (x, y) = (ring.var(0), ring.var(1));
        let one = ring.one();
        let pm = Matrix::from_rows(
            ring.clone(),
            vec![
                vec![x.clone(), y.clone(), one.clone()],
                vec![one.clone(), x.mul(&y), y.clone()],
                vec![ring.zero(), x.clone(), x.add(&one)],
            ],
        )
        .unwrap();
        assert_eq!(pm.det().unwrap(), leibniz(&pm));
    }

    #[test]
    fn inverse_and_kernel() {
        let m = q(&[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(m.adjugate().mul(&m).equals(&Matrix::identity(Field::Rational, 2).scale(&m.det().unwrap())));
        let s = q(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(s.rank(), 1);
        let k = s.kernel();
        assert_eq!(k.cols(), 2);
        assert!(s.mul(&k).is_zero());
        assert!(q(&[&[1, 1], &[1, 1]]).inverse().is_err());
    }

    #[test]
    fn shape_errors() {
        let a = q(&[&[1, 2, 3]]);
        assert!(a.det().is_err());
        assert!(a.checked_mul(&a).is_err());
    }

    #[test]
    fn local_inverse_and_det() {
        let r = PolyRing::standard(Field::Rational, 2);
        let (x, y) = (r.var(0), r.var(1));
        let one = r.one();
        // zero in the corner, so a row swap is needed
        let m = Matrix::from_rows(
            r.clone(),
            vec![
                vec![x.clone(), one.add(&y), y.clone()],
                vec![one.sub(&x), x.mul(&y), r.from_i64(2)],
                vec![y.clone(), x.clone(), one.add(&x.mul(&x))],
            ],
        )
        .unwrap()
        .to_local();
        let l = m.ring().clone();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(l.equal(&m.det().unwrap(), &leibniz(&m)));
        let singular = Matrix::from_rows(r.clone(), vec![vec![x.clone(), y.clone()], vec![y, x]]).unwrap().to_local();
        assert!(singular.inverse().is_err());
        assert!(l.equal(&singular.det().unwrap(), &leibniz(&singular)));
    }
}
