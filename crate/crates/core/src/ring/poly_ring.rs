use std::sync::Arc;

use super::poly::Poly;
use super::scalar::{Field, Scalar};
use super::Ring;
use crate::error::{Error, Result};

/// Polynomial ring `k[x_1..x_n]`; zero variables gives the field itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: Field,
    vars: Arc<[String]>,
}

impl PolyRing {
    pub fn new(field: Field, vars: &[&str]) -> PolyRing {
        PolyRing {
            field,
            vars: vars.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn from_names(field: Field, vars: Vec<String>) -> PolyRing {
        PolyRing { field, vars: vars.into() }
    }

    /// Variables `x1..xn`.
    pub fn standard(field: Field, n: usize) -> PolyRing {
        PolyRing {
            field,
            vars: (1..=n).map(|i| format!("x{i}")).collect(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::var(self.field, self.nvars(), i)
    }

    pub fn vars(&self) -> Vec<Poly> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub fn constant(&self, c: Scalar) -> Poly {
        Poly::constant(self.nvars(), c)
    }

    pub fn origin(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.nvars()]
    }

    /// Checks that `p` lives in this ring.
    pub fn check(&self, p: &Poly) -> Result<()> {
        if p.nvars() != self.nvars() {
            return Err(Error::RingMismatch(format!(
                "polynomial in {} variables, ring has {}",
                p.nvars(),
                self.nvars()
            )));
        }
        if let Some(f) = p.field() {
            if f != self.field {
                return Err(Error::RingMismatch(format!("coefficients in {f}, ring over {}", self.field)));
            }
        }
        Ok(())
    }
}

impl Ring for PolyRing {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Poly::zero(self.nvars())
    }
    fn one(&self) -> Poly {
        Poly::constant(self.nvars(), self.field.one())
    }
    fn from_i64(&self, n: i64) -> Poly {
        Poly::constant(self.nvars(), self.field.from_i64(n))
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b)
    }
    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a.sub(b)
    }
    fn neg(&self, a: &Poly) -> Poly {
        a.neg()
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul(b)
    }
    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
    fn equal(&self, a: &Poly, b: &Poly) -> bool {
        a == b
    }
    fn unit_inverse(&self, a: &Poly) -> Option<Poly> {
        if a.is_zero() || !a.is_constant() {
            return None;
        }
        Some(self.constant(a.constant_coeff()?.inv()?))
    }
    fn exact_div(&self, a: &Poly, b: &Poly) -> Option<Poly> {
        if b.is_zero() {
            return None;
        }
        a.div_exact(b)
    }
    fn is_field(&self) -> bool {
        self.nvars() == 0
    }
    fn render(&self, a: &Poly) -> String {
        a.display_with(&self.vars).to_string()
    }
}
