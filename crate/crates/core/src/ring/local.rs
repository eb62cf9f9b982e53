use std::fmt;

use super::matrix::Matrix;
use super::poly::Poly;
use super::poly_ring::PolyRing;
use super::scalar::{Field, Scalar};
use super::Ring;
use crate::error::{Error, Result};

/// The localization of a polynomial ring at the origin.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalRing {
    base: PolyRing,
}

/// A fraction `num / (d_1 * ... * d_k)` where every factor `d_i` has constant term one.
///
/// Denominators are kept factored so that repeated factors cancel by trial division.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalElt {
    num: Poly,
    den: Vec<Poly>,
}

impl LocalElt {
    pub fn from_poly(p: Poly) -> LocalElt {
        LocalElt { num: p, den: Vec::new() }
    }

    /// `num / den`; fails when `den` vanishes at the origin.
    pub fn new(num: Poly, den: Poly) -> Result<LocalElt> {
        let c = den
            .constant_coeff()
            .cloned()
            .ok_or_else(|| Error::NotAUnit(format!("denominator {den} vanishes at the origin")))?;
        let inv = c.inv().unwrap();
        let num = num.scale(&inv);
        let d = den.scale(&inv);
        let mut e = LocalElt { num, den: Vec::new() };
        if !d.is_constant() {
            e.den.push(d);
            e.reduce();
        }
        Ok(e)
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator_factors(&self) -> &[Poly] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the element is invertible in the local ring.
    pub fn is_unit(&self) -> bool {
        self.num.constant_coeff().is_some()
    }

    /// Value at the origin.
    pub fn at_origin(&self) -> Option<&Scalar> {
        self.num.constant_coeff()
    }

    /// Value at a point where the denominator does not vanish.
    pub fn eval(&self, point: &[Scalar]) -> Option<Scalar> {
        let field = point.first().map(|s| s.field()).or(self.num.field());
        match field {
            Some(f) => self.eval_over(f, point),
            None => Some(self.num.eval(point)),
        }
    }

    pub fn eval_over(&self, field: Field, point: &[Scalar]) -> Option<Scalar> {
        let mut v = self.num.eval_over(field, point);
        for d in &self.den {
            v = v.div(&d.eval_over(field, point))?;
        }
        Some(v)
    }

    /// The element as a polynomial, when it has no denominator.
    pub fn as_poly(&self) -> Option<&Poly> {
        self.den.is_empty().then_some(&self.num)
    }

    pub fn denominator(&self, ring: &PolyRing) -> Poly {
        Self::product(ring, &self.den)
    }

    pub(crate) fn product(ring: &PolyRing, factors: &[Poly]) -> Poly {
        factors.iter().fold(ring.one(), |acc, f| acc.mul(f))
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let mut i = 0;
        while i < self.den.len() {
            if let Some(q) = self.num.div_exact(&self.den[i]) {
                self.num = q;
                self.den.swap_remove(i);
            } else {
                i += 1;
            }
        }
    }

    /// Multiset union of denominators, each factor kept with its maximal multiplicity.
    pub(crate) fn common_denominator<'a>(elts: impl Iterator<Item = &'a LocalElt>) -> Vec<Poly> {
        let mut common: Vec<Poly> = Vec::new();
        for e in elts {
            let mut pool = common.clone();
            for d in &e.den {
                if let Some(k) = pool.iter().position(|c| c == d) {
                    pool.swap_remove(k);
                } else {
                    common.push(d.clone());
                }
            }
        }
        common
    }

    /// Numerator after rewriting over `common`, which must contain this denominator.
    pub(crate) fn numerator_over(&self, common: &[Poly]) -> Poly {
        let mut rest: Vec<&Poly> = common.iter().collect();
        for d in &self.den {
            let k = rest.iter().position(|c| *c == d).expect("denominator not in common multiple");
            rest.swap_remove(k);
        }
        rest.into_iter().fold(self.num.clone(), |acc, f| acc.mul(f))
    }
}

impl fmt::Display for LocalElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        let den: Vec<String> = self.den.iter().map(|d| format!("({d})")).collect();
        write!(f, "({}) / {}", self.num, den.join("*"))
    }
}

impl LocalRing {
    pub fn new(base: PolyRing) -> LocalRing {
        LocalRing { base }
    }

    pub fn base(&self) -> &PolyRing {
        &self.base
    }

    pub fn elt(&self, p: Poly) -> LocalElt {
        LocalElt::from_poly(p)
    }

    pub fn frac(&self, num: Poly, den: Poly) -> Result<LocalElt> {
        LocalElt::new(num, den)
    }
}

impl Ring for LocalRing {
    type Elem = LocalElt;

    fn zero(&self) -> LocalElt {
        LocalElt::from_poly(self.base.zero())
    }
    fn one(&self) -> LocalElt {
        LocalElt::from_poly(self.base.one())
    }
    fn from_i64(&self, n: i64) -> LocalElt {
        LocalElt::from_poly(self.base.from_i64(n))
    }
    fn add(&self, a: &LocalElt, b: &LocalElt) -> LocalElt {
        if a.den == b.den {
            let mut e = LocalElt {
                num: a.num.add(&b.num),
                den: a.den.clone(),
            };
            e.reduce();
            return e;
        }
        let common = LocalElt::common_denominator([a, b].into_iter());
        let mut e = LocalElt {
            num: a.numerator_over(&common).add(&b.numerator_over(&common)),
            den: common,
        };
        e.reduce();
        e
    }
    fn sub(&self, a: &LocalElt, b: &LocalElt) -> LocalElt {
        self.add(a, &self.neg(b))
    }
    fn neg(&self, a: &LocalElt) -> LocalElt {
        LocalElt {
            num: a.num.neg(),
            den: a.den.clone(),
        }
    }
    fn mul(&self, a: &LocalElt, b: &LocalElt) -> LocalElt {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut den = a.den.clone();
        den.extend(b.den.iter().cloned());
        let mut e = LocalElt {
            num: a.num.mul(&b.num),
            den,
        };
        e.reduce();
        e
    }
    fn is_zero(&self, a: &LocalElt) -> bool {
        a.is_zero()
    }
    fn equal(&self, a: &LocalElt, b: &LocalElt) -> bool {
        if a.den == b.den {
            return a.num == b.num;
        }
        let common = LocalElt::common_denominator([a, b].into_iter());
        a.numerator_over(&common) == b.numerator_over(&common)
    }
    fn unit_inverse(&self, a: &LocalElt) -> Option<LocalElt> {
        if !a.is_unit() {
            return None;
        }
        LocalElt::new(a.denominator(&self.base), a.num.clone()).ok()
    }
    fn exact_div(&self, a: &LocalElt, b: &LocalElt) -> Option<LocalElt> {
        if let Some(inv) = self.unit_inverse(b) {
            return Some(self.mul(a, &inv));
        }
        if b.is_zero() {
            return None;
        }
        let t = a.num.mul(&b.denominator(&self.base));
        let q = t.div_exact(&b.num)?;
        let mut e = LocalElt { num: q, den: a.den.clone() };
        e.reduce();
        Some(e)
    }
    fn render(&self, a: &LocalElt) -> String {
        if a.den.is_empty() {
            return self.base.render(&a.num);
        }
        let den: Vec<String> = a.den.iter().map(|d| format!("({})", self.base.render(d))).collect();
        format!("({}) / {}", self.base.render(&a.num), den.join("*"))
    }

    fn det(&self, m: &Matrix<Self>) -> LocalElt {
        let (n, _) = m.clear_denominators();
        let dfac = LocalElt::common_denominator(m.entries().iter());
        let mut e = LocalElt {
            num: n.det().expect("square"),
            den: Vec::new(),
        };
        for _ in 0..m.rows() {
            e.den.extend(dfac.iter().cloned());
        }
        e.reduce();
        e
    }

    /// Gauss-Jordan with unit pivots; such pivots exist exactly when the matrix is
    /// invertible at the origin.
    fn inverse(&self, m: &Matrix<Self>) -> Option<Matrix<Self>> {
        super::matrix::local_gauss(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Field;

    #[test]
    fn fractions_cancel_and_compare() {
        let base = PolyRing::standard(Field::Rational, 2);
        let l = LocalRing::new(base.clone());
        let (x, y) = (base.var(0), base.var(1));
        let u = base.one().add(&x);
        let a = l.frac(x.mul(&u), u.clone()).unwrap();
        assert_eq!(a.as_poly(), Some(&x));
        let b = l.frac(y.clone(), u.clone()).unwrap();
        let c = l.frac(y.mul(&base.one().sub(&y)), u.mul(&base.one().sub(&y))).unwrap();
        assert!(l.equal(&b, &c));
        let s = l.add(&b, &l.neg(&c));
        assert!(s.is_zero());
        assert!(l.frac(base.one(), x.clone()).is_err());
        let inv = l.unit_inverse(&l.elt(u.clone())).unwrap();
        assert!(l.equal(&l.mul(&inv, &l.elt(u)), &l.one()));
        assert!(l.unit_inverse(&l.elt(x)).is_none());
    }

    #[test]
    fn local_matrix_inverse() {
        let base = PolyRing::standard(Field::Rational, 2);
        let l = LocalRing::new(base.clone());
        let (x, y) = (base.var(0), base.var(1));
        let one = base.one();
        let m = Matrix::from_rows(
            base.clone(),
            vec![vec![one.add(&x), y.clone()], vec![x.mul(&y), one.sub(&y)]],
        )
        .unwrap()
        .to_local();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
        let d = m.det().unwrap();
        assert!(l.equal(&l.mul(&d, &inv.det().unwrap()), &l.one()));
        let sing = Matrix::from_rows(base.clone(), vec![vec![x.clone(), y.clone()], vec![y, x]])
            .unwrap()
            .to_local();
        assert!(sing.inverse().is_err());
    }
}
