//! Pfaffians of alternating matrices over any [`Ring`].

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ring::{Matrix, Ring};
use crate::util::combinations;

/// A square matrix with zero diagonal and `A^T = -A`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlternatingMatrix<R: Ring>(Matrix<R>);

impl<R: Ring> AlternatingMatrix<R> {
    pub fn new(m: Matrix<R>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NonSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        if !m.is_alternating() {
            return Err(Error::NotAlternating);
        }
        Ok(AlternatingMatrix(m))
    }

    /// Builds `A` from its strictly upper entries.
    pub fn from_upper(ring: R, n: usize, mut upper: impl FnMut(usize, usize) -> R::Elem) -> Self {
        let mut m = Matrix::zeros(ring.clone(), n, n);
        for i in 0..n {
            for j in i + 1..n {
                let a = upper(i, j);
                m.set(j, i, ring.neg(&a));
                m.set(i, j, a);
            }
        }
        AlternatingMatrix(m)
    }

    pub fn size(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &Matrix<R> {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix<R> {
        self.0
    }

    pub fn ring(&self) -> &R {
        self.0.ring()
    }

    /// Principal submatrix on `idx`.
    pub fn principal(&self, idx: &[usize]) -> Self {
        AlternatingMatrix(self.0.submatrix(idx, idx))
    }

    /// `P^T A P`, again alternating.
    pub fn congruence(&self, p: &Matrix<R>) -> Result<Self> {
        let m = p.transpose().checked_mul(&self.0)?.checked_mul(p)?;
        Ok(AlternatingMatrix(m))
    }
}

/// Memoized first-row expansion over index subsets.
struct PfaffianTable<'a, R: Ring> {
    a: &'a Matrix<R>,
    memo: HashMap<u64, R::Elem>,
}

impl<'a, R: Ring> PfaffianTable<'a, R> {
    fn new(a: &'a Matrix<R>) -> Self {
        assert!(a.rows() <= 64, "Pfaffians are limited to 64x64 matrices");
        PfaffianTable { a, memo: HashMap::new() }
    }

    fn pf(&mut self, mask: u64) -> R::Elem {
        let r = self.a.ring();
        if mask == 0 {
            return r.one();
        }
        if mask.count_ones() % 2 == 1 {
            return r.zero();
        }
        if let Some(v) = self.memo.get(&mask) {
            return v.clone();
        }
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1u64 << i);
        let mut acc = r.zero();
        let mut bits = rest;
        let mut pos = 1;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let aij = self.a.get(i, j);
            if !r.is_zero(aij) {
                let sub = self.pf(rest & !(1u64 << j));
                let t = r.mul(aij, &sub);
                acc = if pos % 2 == 1 { r.add(&acc, &t) } else { r.sub(&acc, &t) };
            }
            pos += 1;
        }
        self.memo.insert(mask, acc.clone());
        acc
    }
}

fn mask_of(idx: &[usize]) -> u64 {
    idx.iter().fold(0u64, |m, &i| m | (1u64 << i))
}

/// `Pf(A)`, one for the empty matrix.
pub fn pfaffian<R: Ring>(a: &AlternatingMatrix<R>) -> Result<R::Elem> {
    let n = a.size();
    if n % 2 == 1 {
        return Err(Error::OddSizePfaffian(n));
    }
    Ok(PfaffianTable::new(&a.0).pf(if n == 64 { u64::MAX } else { (1u64 << n) - 1 }))
}

/// Pfaffian of the principal submatrix on `idx`.
pub fn principal_pfaffian<R: Ring>(a: &AlternatingMatrix<R>, idx: &[usize]) -> R::Elem {
    PfaffianTable::new(&a.0).pf(mask_of(idx))
}

/// All Pfaffians of principal `order x order` submatrices, index sets in lexicographic order.
///
/// Order zero gives `[1]`; an order beyond the size gives no generators (the zero ideal).
pub fn sub_pfaffians<R: Ring>(a: &AlternatingMatrix<R>, order: usize) -> Result<Vec<R::Elem>> {
    if order % 2 == 1 {
        return Err(Error::OddOrder(order));
    }
    let mut t = PfaffianTable::new(&a.0);
    Ok(combinations(a.size(), order)
        .iter()
        .map(|idx| t.pf(mask_of(idx)))
        .collect())
}

/// For odd `n`, the vector `v_i = (-1)^(i+1) Pf(A with row and column i removed)`
/// (indices from one), which satisfies `A v = 0`.
pub fn submaximal_pfaffian_vector<R: Ring>(a: &AlternatingMatrix<R>) -> Result<Vec<R::Elem>> {
    let n = a.size();
    if n.is_multiple_of(2) {
        return Err(Error::EvenSize(n));
    }
    let r = a.ring().clone();
    let mut t = PfaffianTable::new(&a.0);
    let full = mask_of(&(0..n).collect::<Vec<_>>());
    Ok((0..n)
        .map(|i| {
            let p = t.pf(full & !(1u64 << i));
            if i % 2 == 0 {
                p
            } else {
                r.neg(&p)
            }
        })
        .collect())
}
