//! Coefficient rings: fields, polynomial rings and their localization at the origin.

mod local;
mod matrix;
mod poly;
mod poly_ring;
mod scalar;

use std::fmt::Debug;

pub use local::{LocalElt, LocalRing};
pub use matrix::Matrix;
pub use poly::{Monomial, MonomialOrder, Poly, PolyDisplay};
pub use poly_ring::PolyRing;
pub use scalar::{Field, Scalar};

/// Commutative ring with exact arithmetic.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.is_zero(&self.sub(a, b))
    }
    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// `a / b` when `b` divides `a`.
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
    fn is_field(&self) -> bool {
        false
    }
    /// Human readable rendering of an element.
    fn render(&self, a: &Self::Elem) -> String;

    /// Determinant by fraction-free elimination.
    fn det(&self, m: &Matrix<Self>) -> Self::Elem {
        matrix::bareiss_det(m)
    }

    /// Inverse through the adjugate, when the determinant is a unit.
    fn inverse(&self, m: &Matrix<Self>) -> Option<Matrix<Self>> {
        let d = self.det(m);
        let inv = self.unit_inverse(&d)?;
        Some(m.adjugate().scale(&inv))
    }
}

impl Ring for Field {
    type Elem = Scalar;

    fn zero(&self) -> Scalar {
        Field::zero(self)
    }
    fn one(&self) -> Scalar {
        Field::one(self)
    }
    fn from_i64(&self, n: i64) -> Scalar {
        Field::from_i64(self, n)
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a.add(b)
    }
    fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a.sub(b)
    }
    fn neg(&self, a: &Scalar) -> Scalar {
        a.neg()
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a.mul(b)
    }
    fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }
    fn equal(&self, a: &Scalar, b: &Scalar) -> bool {
        a == b
    }
    fn unit_inverse(&self, a: &Scalar) -> Option<Scalar> {
        a.inv()
    }
    fn exact_div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        a.div(b)
    }
    fn is_field(&self) -> bool {
        true
    }
    fn render(&self, a: &Scalar) -> String {
        a.to_string()
    }
    fn det(&self, m: &Matrix<Self>) -> Scalar {
        matrix::gauss_det(m)
    }
    fn inverse(&self, m: &Matrix<Self>) -> Option<Matrix<Self>> {
        matrix::gauss_inverse(m)
    }
}
