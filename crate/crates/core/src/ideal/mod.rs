//! Ideals of polynomial rings: Gröbner bases, membership, colon, saturation,
//! codimension and equality after localizing at the origin.

mod groebner;

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::ring::{MonomialOrder, Poly, PolyRing, Ring};
use crate::util::combinations;

pub(crate) use groebner::groebner_basis;

/// Codimension of an ideal. The unit ideal has no finite codimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Codim {
    Finite(usize),
    Unit,
}

impl Codim {
    /// True when the codimension is at least `k` (always for the unit ideal).
    pub fn at_least(&self, k: usize) -> bool {
        match self {
            Codim::Finite(c) => *c >= k,
            Codim::Unit => true,
        }
    }
}

#[derive(Debug)]
pub struct Ideal {
    ring: PolyRing,
    gens: Vec<Poly>,
    gb: OnceLock<Vec<Poly>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(g.clone());
        }
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            gb,
        }
    }
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(ring: &PolyRing, gens: Vec<Poly>) -> Result<Ideal> {
        for g in &gens {
            ring.check(g)?;
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            gb: OnceLock::new(),
        })
    }

    pub fn zero(ring: &PolyRing) -> Ideal {
        Ideal::new(ring, Vec::new()).unwrap()
    }

    pub fn unit(ring: &PolyRing) -> Ideal {
        Ideal::new(ring, vec![ring.one()]).unwrap()
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    /// Reduced degrevlex Gröbner basis.
    pub fn groebner(&self) -> &[Poly] {
        self.gb.get_or_init(|| groebner_basis(&self.gens, MonomialOrder::DegRevLex))
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().first().is_some_and(|g| g.is_constant())
    }

    /// Remainder modulo the Gröbner basis.
    pub fn reduce(&self, f: &Poly) -> Poly {
        groebner::reduce(f, self.groebner(), MonomialOrder::DegRevLex)
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        self.ring.check(f)?;
        Ok(self.reduce(f).is_zero())
    }

    fn check_same(&self, other: &Ideal) -> Result<()> {
        if self.ring.field() != other.ring.field() || self.ring.nvars() != other.ring.nvars() {
            return Err(Error::RingMismatch("ideals live in different rings".into()));
        }
        Ok(())
    }

    pub fn is_subset(&self, other: &Ideal) -> Result<bool> {
        self.check_same(other)?;
        for g in &self.gens {
            if !other.reduce(g).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals (compares reduced Gröbner bases).
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.groebner() == other.groebner())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same(other)?;
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same(other)?;
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(a.mul(b));
            }
        }
        Ideal::new(&self.ring, g)
    }

    pub fn square(&self) -> Ideal {
        self.product(self).unwrap()
    }

    /// Intersection with the ideal of polynomials free of the first `k` variables
    /// of an extended ring, computed by an elimination order.
    fn eliminate(ring: &PolyRing, gens: Vec<Poly>, k: usize) -> Vec<Poly> {
        groebner_basis(&gens, MonomialOrder::Elimination { block: k })
            .into_iter()
            .filter_map(|g| g.drop_leading(k))
            .filter(|g| !g.is_zero())
            .inspect(|g| {
                debug_assert_eq!(g.nvars(), ring.nvars());
            })
            .collect()
    }

    /// `(I : f)`.
    pub fn colon(&self, f: &Poly) -> Result<Ideal> {
        self.ring.check(f)?;
        if f.is_zero() {
            return Err(Error::ColonByZero);
        }
        if f.is_constant() || self.is_zero() {
            return Ok(self.clone());
        }
        // I ∩ (f) = elim_t (t I + (1 - t) f); then divide by f
        let n = self.ring.nvars();
        let t = Poly::var(self.ring.field(), n + 1, 0);
        let one = Poly::constant(n + 1, self.ring.field().one());
        let mut gens: Vec<Poly> = self.gens.iter().map(|g| t.mul(&g.lift(1))).collect();
        gens.push(one.sub(&t).mul(&f.lift(1)));
        let inter = Self::eliminate(&self.ring, gens, 1);
        let quot = inter
            .iter()
            .map(|g| g.div_exact(f).expect("intersection with (f) is divisible by f"))
            .collect();
        Ideal::new(&self.ring, quot)
    }

    /// `(I : s^∞)`.
    pub fn saturate(&self, s: &Poly) -> Result<Ideal> {
        self.ring.check(s)?;
        if s.is_zero() {
            return Ok(Ideal::unit(&self.ring));
        }
        if s.is_constant() || self.is_zero() {
            return Ok(self.clone());
        }
        let n = self.ring.nvars();
        let t = Poly::var(self.ring.field(), n + 1, 0);
        let one = Poly::constant(n + 1, self.ring.field().one());
        let mut gens: Vec<Poly> = self.gens.iter().map(|g| g.lift(1)).collect();
        gens.push(one.sub(&t.mul(&s.lift(1))));
        let g = Self::eliminate(&self.ring, gens, 1);
        Ideal::new(&self.ring, g)
    }

    /// Codimension via the leading-term ideal.
    pub fn codim(&self) -> Codim {
        if self.is_unit() {
            return Codim::Unit;
        }
        let n = self.ring.nvars();
        let gb = self.groebner();
        if gb.is_empty() {
            return Codim::Finite(0);
        }
        let supports: Vec<Vec<usize>> = groebner::leading_monomials(gb, MonomialOrder::DegRevLex)
            .iter()
            .map(|m| (0..n).filter(|&i| m.exponents()[i] > 0).collect())
            .collect();
        // the dimension is the largest set of variables containing no leading-monomial support
        for dim in (0..=n).rev() {
            for s in combinations(n, dim) {
                let independent = supports.iter().all(|sup| sup.iter().any(|v| !s.contains(v)));
                if independent {
                    return Codim::Finite(n - dim);
                }
            }
        }
        Codim::Finite(n)
    }

    /// `f` lies in the extension of this ideal to the local ring at the origin.
    pub fn local_contains(&self, f: &Poly) -> Result<bool> {
        if self.contains(f)? {
            return Ok(true);
        }
        // f ∈ I_m iff (I : f) is not inside the maximal ideal of the origin
        let c = self.colon(f)?;
        Ok(c.gens.iter().any(|g| g.constant_coeff().is_some()))
    }

    pub fn local_subset(&self, other: &Ideal) -> Result<bool> {
        self.check_same(other)?;
        for g in &self.gens {
            if !other.local_contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of extensions to the local ring at the origin.
    pub fn local_equals(&self, other: &Ideal) -> Result<bool> {
        Ok(self.local_subset(other)? && other.local_subset(self)?)
    }

    /// Equality after inverting `s`: both saturations by `s` agree.
    pub fn equal_away_from(&self, other: &Ideal, s: &Poly) -> Result<bool> {
        self.check_same(other)?;
        let a = self.saturate(s)?;
        let b = other.saturate(s)?;
        a.equals(&b)
    }

    /// Ideal of `k x k` minors of a polynomial matrix.
    pub fn of_minors(m: &crate::ring::Matrix<PolyRing>, k: usize) -> Ideal {
        Ideal::new(m.ring(), m.minors(k)).unwrap()
    }

    pub fn render(&self) -> String {
        let g: Vec<String> = self.gens.iter().map(|p| self.ring.render(p)).collect();
        format!("({})", g.join(", "))
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Ideal) -> bool {
        self.equals(other).unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Field;

    fn ring3() -> PolyRing {
        PolyRing::new(Field::Rational, &["x", "y", "z"])
    }

    #[test]
    fn twisted_cubic_basis() {
        let r = ring3();
        let (x, y, z) = (r.var(0), r.var(1), r.var(2));
        // affine twisted cubic: y - x^2, z - x^3
        let i = Ideal::new(&r, vec![y.sub(&x.mul(&x)), z.sub(&x.mul(&x).mul(&x))]).unwrap();
        assert!(i.contains(&x.mul(&z).sub(&y.mul(&y))).unwrap());
        assert!(!i.contains(&x).unwrap());
        assert_eq!(i.codim(), Codim::Finite(2));
    }

    #[test]
    fn colon_and_saturation() {
        let r = ring3();
        let (x, y) = (r.var(0), r.var(1));
        let i = Ideal::new(&r, vec![x.mul(&y), x.mul(&x)]).unwrap();
        let c = i.colon(&x).unwrap();
        assert!(c.equals(&Ideal::new(&r, vec![x.clone(), y.clone()]).unwrap()).unwrap());
        let s = i.saturate(&x).unwrap();
        assert!(s.is_unit());
        assert_eq!(i.colon(&r.zero()).unwrap_err(), Error::ColonByZero);
    }

    #[test]
    fn local_membership() {
        let r = ring3();
        let (x, y) = (r.var(0), r.var(1));
        let one = r.one();
        // (x(1+y)) and (x) agree locally but not globally
        let a = Ideal::new(&r, vec![x.mul(&one.add(&y))]).unwrap();
        let b = Ideal::new(&r, vec![x.clone()]).unwrap();
        assert!(!a.equals(&b).unwrap());
        assert!(a.local_equals(&b).unwrap());
        assert!(a.equal_away_from(&b, &one.add(&y)).unwrap());
        let c = Ideal::new(&r, vec![y.clone()]).unwrap();
        assert!(!a.local_equals(&c).unwrap());
    }

    #[test]
    fn codim_edge_cases() {
        let r = ring3();
        assert_eq!(Ideal::zero(&r).codim(), Codim::Finite(0));
        assert_eq!(Ideal::unit(&r).codim(), Codim::Unit);
        let m = Ideal::new(&r, r.vars()).unwrap();
        assert_eq!(m.codim(), Codim::Finite(3));
    }

    #[test]
    fn ring_mismatch() {
        let r = ring3();
        let other = PolyRing::standard(Field::Rational, 2);
        let i = Ideal::new(&r, vec![r.var(0)]).unwrap();
        assert!(matches!(i.contains(&other.var(0)), Err(Error::RingMismatch(_))));
        let f2 = PolyRing::standard(Field::Prime(2), 3);
        assert!(matches!(i.contains(&f2.var(0)), Err(Error::RingMismatch(_))));
    }
}
