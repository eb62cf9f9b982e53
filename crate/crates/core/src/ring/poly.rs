use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use super::scalar::{Field, Scalar};

/// Exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub(crate) SmallVec<[u32; 6]>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn from_exponents(e: &[u32]) -> Monomial {
        Monomial(SmallVec::from_slice(e))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when divisible.
    pub fn quotient(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Prepends `k` zero exponents.
    pub(crate) fn shift(&self, k: usize) -> Monomial {
        let mut v: SmallVec<[u32; 6]> = SmallVec::from_elem(0, k);
        v.extend_from_slice(&self.0);
        Monomial(v)
    }
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

/// Term orders used by the Gröbner engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    DegRevLex,
    /// The first `block` variables are eliminated: compare them by degrevlex
    /// first, break ties by degrevlex on the rest.
    Elimination { block: usize },
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::DegRevLex => degrevlex(&a.0, &b.0),
            MonomialOrder::Elimination { block } => degrevlex(&a.0[..block], &b.0[..block])
                .then_with(|| degrevlex(&a.0[block..], &b.0[block..])),
        }
    }
}

/// Sparse polynomial: terms sorted strictly decreasing in degrevlex, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: Vec<(Monomial, Scalar)>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(nvars);
        }
        Poly {
            nvars,
            terms: vec![(Monomial::one(nvars), c)],
        }
    }

    pub fn var(field: Field, nvars: usize, i: usize) -> Poly {
        Poly {
            nvars,
            terms: vec![(Monomial::var(nvars, i), field.one())],
        }
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Poly {
        let nvars = m.nvars();
        if c.is_zero() {
            return Poly::zero(nvars);
        }
        Poly { nvars, terms: vec![(m, c)] }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(nvars: usize, mut terms: Vec<(Monomial, Scalar)>) -> Poly {
        terms.sort_by(|a, b| degrevlex(&b.0 .0, &a.0 .0));
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(terms.len());
        let mut iter = terms.into_iter().peekable();
        while let Some((m, mut c)) = iter.next() {
            assert_eq!(m.nvars(), nvars, "monomial arity");
            while let Some((_, d)) = iter.next_if(|t| t.0 == m) {
                c = c.add(&d);
            }
            if !c.is_zero() {
                out.push((m, c));
            }
        }
        Poly { nvars, terms: out }
    }

    pub(crate) fn from_sorted_terms(nvars: usize, terms: Vec<(Monomial, Scalar)>) -> Poly {
        debug_assert!(terms.windows(2).all(|w| degrevlex(&w[0].0 .0, &w[1].0 .0) == Ordering::Greater));
        Poly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn field(&self) -> Option<Field> {
        self.terms.first().map(|t| t.1.field())
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Coefficient of the constant monomial, `None` when it is zero.
    pub fn constant_coeff(&self) -> Option<&Scalar> {
        self.terms.last().filter(|(m, _)| m.is_one()).map(|t| &t.1)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|t| t.0.degree())
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).min()
    }

    /// Degree when homogeneous; `None` for zero or inhomogeneous polynomials.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.total_degree()?;
        self.terms.iter().all(|t| t.0.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        assert_eq!(self.nvars, other.nvars, "polynomial arity");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match degrevlex(&a[i].0 .0, &b[j].0 .0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { b[j].1.neg() } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { a[i].1.sub(&b[j].1) } else { a[i].1.add(&b[j].1) };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { t.1.neg() } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Poly { nvars: self.nvars, terms: out }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.merge(other, true)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a.mul(c))).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars, "polynomial arity");
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.nvars);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        let mut prods = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                prods.push((m.mul(n), a.mul(b)));
            }
        }
        Poly::from_terms(self.nvars, prods)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let field = self.field().unwrap_or(Field::Rational);
        let mut acc = Poly::constant(self.nvars, field.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Makes the leading coefficient one.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().unwrap()),
        }
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        let field = point
            .first()
            .map(|s| s.field())
            .or(self.field())
            .unwrap_or(Field::Rational);
        self.eval_over(field, point)
    }

    /// As [`Poly::eval`], with the field given (needed for the zero polynomial in no variables).
    pub fn eval_over(&self, field: Field, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars, "evaluation point arity");
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t = t.mul(&x.pow(e as u64));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitutes a polynomial for every variable (all in a common ring).
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let nv = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut acc = Poly::zero(nv);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(nv, c.clone());
            for (img, &e) in images.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t = t.mul(img);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Exact division; `None` when `other` does not divide `self`.
    pub fn div_exact(&self, other: &Poly) -> Option<Poly> {
        assert!(!other.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero(self.nvars));
        }
        let (lm, lc) = other.terms[0].clone();
        let lc_inv = lc.inv().unwrap();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first() {
            let q_m = lm.quotient(m)?;
            let q_c = c.mul(&lc_inv);
            rem = rem.sub(&other.mul_term(&q_m, &q_c));
            quot.push((q_m, q_c));
        }
        Some(Poly::from_sorted_terms(self.nvars, quot))
    }

    /// A square root up to a constant factor, if one exists in characteristic not two:
    /// returns `(r, c)` with `self = c * r^2`.
    pub fn sqrt_up_to_constant(&self) -> Option<(Poly, Scalar)> {
        let field = self.field()?;
        if field.characteristic() == 2 {
            return None;
        }
        let c = self.terms[0].1.clone();
        let target = self.scale(&c.inv().unwrap());
        let lead = &target.terms[0].0;
        if lead.exponents().iter().any(|e| e % 2 == 1) {
            return None;
        }
        let half = Monomial(lead.0.iter().map(|e| e / 2).collect());
        let two_inv = field.from_i64(2).inv().unwrap();
        let mut root = Poly::monomial(half.clone(), field.one());
        // Newton-style term-by-term extraction from the leading term downwards.
        loop {
            let diff = target.sub(&root.mul(&root));
            let Some((dm, dc)) = diff.terms.first() else {
                return Some((root, c));
            };
            let m = half.quotient(dm)?;
            if root.terms.iter().any(|(rm, _)| degrevlex(&m.0, &rm.0) != Ordering::Less) {
                return None;
            }
            root = root.add(&Poly::monomial(m, dc.mul(&two_inv)));
        }
    }

    /// Renders with the given variable names.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }

    pub(crate) fn lift(&self, k: usize) -> Poly {
        Poly::from_terms(
            self.nvars + k,
            self.terms.iter().map(|(m, c)| (m.shift(k), c.clone())).collect(),
        )
    }

    /// Drops the first `k` variables, which must not occur.
    pub(crate) fn drop_leading(&self, k: usize) -> Option<Poly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            if m.0[..k].iter().any(|&e| e > 0) {
                return None;
            }
            terms.push((Monomial(SmallVec::from_slice(&m.0[k..])), c.clone()));
        }
        Some(Poly::from_terms(self.nvars - k, terms))
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut factors = Vec::new();
            for (i, &e) in m.exponents().iter().enumerate() {
                let name = self.names.get(i).cloned().unwrap_or_else(|| format!("x{}", i + 1));
                match e {
                    0 => {}
                    1 => factors.push(name),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Poly {
        Poly::var(Field::Rational, 3, i)
    }

    fn c(v: i64) -> Poly {
        Poly::constant(3, Field::Rational.from_i64(v))
    }

    #[test]
    fn degrevlex_order() {
        let o = MonomialOrder::DegRevLex;
        let m = |e: &[u32]| Monomial::from_exponents(e);
        // x1 > x2 > x3, x1x3 < x2^2 in degrevlex
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[0, 0, 2]), &m(&[1, 0, 0])), Ordering::Greater);
        let e = MonomialOrder::Elimination { block: 1 };
        assert_eq!(e.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 0])), Ordering::Greater);
    }

    #[test]
    fn ring_identities() {
        let p = x(0).add(&x(1)).add(&c(1));
        let q = x(0).sub(&x(2));
        assert_eq!(p.mul(&q), q.mul(&p));
        assert_eq!(p.mul(&q).div_exact(&q).unwrap(), p);
        assert!(p.mul(&q).add(&c(1)).div_exact(&q).is_none());
        assert_eq!(p.sub(&p), Poly::zero(3));
        assert_eq!(p.constant_coeff(), Some(&Field::Rational.one()));
        assert_eq!(q.constant_coeff(), None);
    }

    #[test]
    fn sqrt_recovers_square() {
        let r = x(0).add(&x(1).scale(&Field::Rational.from_i64(3))).sub(&c(2));
        let sq = r.mul(&r).scale(&Field::Rational.from_i64(-5));
        let (root, k) = sq.sqrt_up_to_constant().unwrap();
        assert_eq!(root.mul(&root).scale(&k), sq);
        assert!(x(0).sqrt_up_to_constant().is_none());
        assert!(x(0).mul(&x(0)).add(&x(1)).sqrt_up_to_constant().is_none());
    }

    #[test]
    fn display() {
        let p = x(0).mul(&x(0)).sub(&x(1).scale(&Field::Rational.from_i64(2))).add(&c(1));
        assert_eq!(p.to_string(), "x1^2 - 2*x2 + 1");
    }
}
