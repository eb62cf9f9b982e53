//! Degeneracy ideals `D_m = {dim(E ∩ F) >= m}` of Lagrangian pairs.

use crate::error::{Error, Result};
use crate::ideal::{Codim, Ideal};
use crate::pairs::{
    localize_alternating, localize_alternating_with, pad_even, LocalAlternation, PairData,
};
use crate::pfaffian::{sub_pfaffians, submaximal_pfaffian_vector};
use crate::quadform::LagSub;
use crate::ring::{LocalElt, LocalRing, Matrix, PolyRing, Scalar};

pub use crate::pairs::lambda_of_pair;

#[derive(Clone, Debug)]
pub struct DegeneracyResult {
    pub m: usize,
    /// Order of the Pfaffians generating the ideal, `n - m + 2` for the padded rank `n`.
    pub order: i64,
    pub ideal: Ideal,
    /// The pair after padding (unchanged when no padding was needed).
    pub pair: PairData,
    pub padded: bool,
    pub local: LocalAlternation,
    /// Kernel of `λ` inside `E`, from the submaximal Pfaffians, when `m = 3` and
    /// the ideal has codimension three.
    pub kernel_line: Option<Vec<LocalElt>>,
}

impl DegeneracyResult {
    pub fn zeta(&self) -> &crate::pfaffian::AlternatingMatrix<LocalRing> {
        &self.local.zeta
    }

    pub fn iota(&self) -> &Matrix<LocalRing> {
        &self.local.iota
    }

    /// Compares the vanishing of the ideal with `dim(E ∩ F) >= m` at `point`.
    /// `None` when the local chart does not cover the point.
    pub fn agrees_at(&self, point: &[Scalar]) -> Option<bool> {
        if self.local.chart.eval(point).is_zero() {
            return None;
        }
        let vanishes = self.ideal.gens().iter().all(|g| g.eval(point).is_zero());
        let big = self.pair.intersection_dim_at(point) >= self.m;
        Some(vanishes == big)
    }
}

fn prepare(p: &PairData, m: usize) -> Result<(PairData, bool)> {
    let origin = p.ring().origin();
    let d0 = p.intersection_dim_at(&origin);
    if (m + d0) % 2 == 1 {
        return Err(Error::ParityViolation(format!(
            "m = {m} but dim(E ∩ F) = {d0} at the origin; only m of the same parity are defined"
        )));
    }
    if p.is_even_at(&origin) {
        Ok((p.clone(), false))
    } else {
        Ok((pad_even(p), true))
    }
}

pub fn degeneracy_ideal(p: &PairData, m: usize) -> Result<DegeneracyResult> {
    let (pair, padded) = prepare(p, m)?;
    let local = localize_alternating(&pair)?;
    finish(pair, padded, local, m)
}

/// Uses a given common complement of an even pair.
pub fn degeneracy_ideal_with(p: &PairData, m: usize, complement: &LagSub) -> Result<DegeneracyResult> {
    let (pair, padded) = prepare(p, m)?;
    if padded {
        return Err(Error::ParityViolation("pair must already be even to use a given complement".into()));
    }
    let local = localize_alternating_with(&pair, complement)?;
    finish(pair, padded, local, m)
}

fn finish(pair: PairData, padded: bool, local: LocalAlternation, m: usize) -> Result<DegeneracyResult> {
    let ring = pair.ring().clone();
    let n = pair.n() as i64;
    let order = n - m as i64 + 2;
    let ideal = if order <= 0 {
        Ideal::unit(&ring)
    } else if order > n {
        Ideal::zero(&ring)
    } else {
        Ideal::new(&ring, sub_pfaffians(&local.numerator, order as usize)?)?
    };
    let kernel_line = if m == 3 && n % 2 == 1 && ideal.codim() == Codim::Finite(3) {
        let v = submaximal_pfaffian_vector(&local.zeta)?;
        let col = Matrix::column(local.zeta.ring().clone(), v);
        Some(local.iota.mul(&col).col(0))
    } else {
        None
    };
    Ok(DegeneracyResult {
        m,
        order,
        ideal,
        pair,
        padded,
        local,
        kernel_line,
    })
}

/// The ideals built from two common complements agree wherever both charts are valid.
pub fn check_complement_independence(p: &PairData, m: usize, m1: &LagSub, m2: &LagSub) -> Result<bool> {
    let a = degeneracy_ideal_with(p, m, m1)?;
    let b = degeneracy_ideal_with(p, m, m2)?;
    let s = a.local.chart.mul(&b.local.chart);
    a.ideal.equal_away_from(&b.ideal, &s)
}

/// Two Lagrangians of a symplectic form `ω` (alternating, perfect).
#[derive(Clone, Debug)]
pub struct SymplecticPair {
    omega: Matrix<PolyRing>,
    e: Matrix<PolyRing>,
    f: Matrix<PolyRing>,
}

impl SymplecticPair {
    pub fn new(omega: Matrix<PolyRing>, e: Matrix<PolyRing>, f: Matrix<PolyRing>) -> Result<SymplecticPair> {
        if !omega.is_alternating() {
            return Err(Error::NotAlternating);
        }
        let d = omega.det()?;
        if d.is_zero() || !d.is_constant() {
            return Err(Error::DegenerateForm("symplectic form is not perfect".into()));
        }
        let dim = omega.rows();
        for (name, l) in [("E", &e), ("F", &f)] {
            if l.rows() != dim || 2 * l.cols() != dim {
                return Err(Error::DimensionMismatch(format!("{name} must be {dim}x{}", dim / 2)));
            }
            if !l.transpose().mul(&omega).mul(l).is_zero() {
                return Err(Error::NotLagrangian(format!("{name} is not isotropic")));
            }
            if l.at_origin().rank() != dim / 2 {
                return Err(Error::NotSubbundle(format!("{name} drops rank at the origin")));
            }
        }
        Ok(SymplecticPair { omega, e, f })
    }

    /// `[[0, I], [-I, 0]]`.
    pub fn standard_form(ring: &PolyRing, n: usize) -> Matrix<PolyRing> {
        let z = Matrix::zeros(ring.clone(), n, n);
        let i = Matrix::identity(ring.clone(), n);
        Matrix::from_blocks(&z, &i, &i.neg(), &z)
    }

    pub fn ring(&self) -> &PolyRing {
        self.omega.ring()
    }

    pub fn n(&self) -> usize {
        self.e.cols()
    }

    pub fn omega(&self) -> &Matrix<PolyRing> {
        &self.omega
    }

    pub fn e(&self) -> &Matrix<PolyRing> {
        &self.e
    }

    pub fn f(&self) -> &Matrix<PolyRing> {
        &self.f
    }

    /// `λ = f^T ω e`, symmetric up to the invertible change of basis of a local chart.
    pub fn lambda(&self) -> Matrix<PolyRing> {
        self.f.transpose().mul(&self.omega).mul(&self.e)
    }

    pub fn intersection_dim_at(&self, point: &[Scalar]) -> usize {
        2 * self.n() - self.e.eval(point).hstack(&self.f.eval(point)).rank()
    }
}

/// `D_m` of a symplectic pair: the `(n - m + 1)`-minors of `λ`.
pub fn symmetric_degeneracy_ideal(p: &SymplecticPair, m: usize) -> Result<Ideal> {
    let n = p.n() as i64;
    let order = n - m as i64 + 1;
    let ring = p.ring();
    if order <= 0 {
        return Ok(Ideal::unit(ring));
    }
    if order > n {
        return Ok(Ideal::zero(ring));
    }
    Ideal::new(ring, p.lambda().minors(order as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadform::{graph_subspace, GraphDirection, QuadSpace};
    use crate::ring::{Field, Ring};

    fn koszul_pair() -> (PolyRing, PairData) {
        let r = PolyRing::standard(Field::Rational, 3);
        let x = r.vars();
        let z = r.zero();
        let k = Matrix::from_rows(
            r.clone(),
            vec![
                vec![z.clone(), x[2].clone(), x[1].clone()],
                vec![x[2].neg(), z.clone(), x[0].clone()],
                vec![x[1].neg(), x[0].neg(), z],
            ],
        )
        .unwrap();
        let e = graph_subspace(&k, GraphDirection::FromF).unwrap();
        let p = PairData::from_parts(QuadSpace::hyperbolic(&r, 3), e, LagSub::first_summand(&r, 3)).unwrap();
        (r, p)
    }

    #[test]
    fn koszul_point() {
        let (r, p) = koszul_pair();
        let d = degeneracy_ideal(&p, 3).unwrap();
        let maximal = Ideal::new(&r, r.vars()).unwrap();
        assert!(d.ideal.equals(&maximal).unwrap());
        assert_eq!(d.ideal.codim(), Codim::Finite(3));
        let kl = d.kernel_line.clone().unwrap();
        assert_eq!(kl.len(), 3);
        let z1 = degeneracy_ideal(&p, 1).unwrap();
        assert!(z1.ideal.is_zero());
        assert!(matches!(degeneracy_ideal(&p, 2), Err(Error::ParityViolation(_))));
        let pt: Vec<Scalar> = [1, 2, 3].iter().map(|&a| Field::Rational.from_i64(a)).collect();
        assert_eq!(d.agrees_at(&pt), Some(true));
        assert_eq!(d.agrees_at(&r.origin()), Some(true));
    }

    #[test]
    fn symmetric_graph() {
        let r = PolyRing::standard(Field::Rational, 3);
        let x = r.vars();
        let s = Matrix::from_rows(r.clone(), vec![vec![x[0].clone(), x[1].clone()], vec![x[1].clone(), x[2].clone()]])
            .unwrap();
        let i = Matrix::identity(r.clone(), 2);
        let z = Matrix::zeros(r.clone(), 2, 2);
        let p = SymplecticPair::new(SymplecticPair::standard_form(&r, 2), i.vstack(&s), i.vstack(&z)).unwrap();
        let d1 = symmetric_degeneracy_ideal(&p, 1).unwrap();
        assert_eq!(d1.gens().len(), 1);
        assert_eq!(d1.codim(), Codim::Finite(1));
        let d2 = symmetric_degeneracy_ideal(&p, 2).unwrap();
        assert_eq!(d2.codim(), Codim::Finite(3));
    }
}
