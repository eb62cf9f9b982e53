//! Quadratic spaces, Lagrangian subspaces, graphs and hyperbolic doubling.

use crate::error::{Error, Result};
use crate::ring::{Field, Matrix, Poly, PolyRing, Ring, Scalar};

/// A free module of rank `2n` with a nonsingular quadratic form `q(v) = v^T U v`,
/// `U` upper triangular. Twists record the grading (`q` takes values in `O(twist)`).
#[derive(Clone, Debug, PartialEq)]
pub struct QuadSpace {
    upper: Matrix<PolyRing>,
    twist: i64,
    basis_twists: Option<Vec<i64>>,
}

/// Upper-triangular representative of the form `v^T Q v`.
pub fn upper_representative(q: &Matrix<PolyRing>) -> Matrix<PolyRing> {
    let r = q.ring().clone();
    Matrix::from_fn(r.clone(), q.rows(), q.cols(), |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => q.get(i, j).add(q.get(j, i)),
        std::cmp::Ordering::Equal => q.get(i, i).clone(),
        std::cmp::Ordering::Greater => r.zero(),
    })
}

/// `B = Q + Q^T`, the polar bilinear form.
pub fn bilinear_of_quadratic(q: &Matrix<PolyRing>) -> Matrix<PolyRing> {
    q.add(&q.transpose())
}

impl QuadSpace {
    /// Any square matrix `Q` with `q(v) = v^T Q v`; it is normalized to upper triangular form.
    pub fn new(gram: Matrix<PolyRing>) -> Result<QuadSpace> {
        if !gram.is_square() {
            return Err(Error::NonSquare {
                rows: gram.rows(),
                cols: gram.cols(),
            });
        }
        if gram.rows() % 2 == 1 {
            return Err(Error::DegenerateForm(format!("odd rank {}", gram.rows())));
        }
        let upper = upper_representative(&gram);
        let d = bilinear_of_quadratic(&upper).det()?;
        if d.is_zero() || !d.is_constant() {
            return Err(Error::DegenerateForm("polar form is not a perfect pairing".into()));
        }
        Ok(QuadSpace {
            upper,
            twist: 0,
            basis_twists: None,
        })
    }

    pub fn from_field(upper: &Matrix<Field>, ring: &PolyRing) -> Result<QuadSpace> {
        QuadSpace::new(upper.to_poly(ring))
    }

    /// Records the degree of the value line bundle only.
    pub fn with_twist(mut self, twist: i64) -> QuadSpace {
        self.twist = twist;
        self
    }

    /// Records the grading; entries must be homogeneous of degree
    /// `twist - d_i - d_j` wherever they are nonzero.
    pub fn with_twists(mut self, twist: i64, basis_twists: Vec<i64>) -> Result<QuadSpace> {
        if basis_twists.len() != self.rank() {
            return Err(Error::DimensionMismatch("one twist per basis vector".into()));
        }
        for i in 0..self.rank() {
            for j in i..self.rank() {
                let p = self.upper.get(i, j);
                if p.is_zero() {
                    continue;
                }
                let want = twist - basis_twists[i] - basis_twists[j];
                if p.homogeneous_degree().map(i64::from) != Some(want) {
                    return Err(Error::NotHomogeneous(format!("form entry ({i},{j}) should have degree {want}")));
                }
            }
        }
        self.twist = twist;
        self.basis_twists = Some(basis_twists);
        Ok(self)
    }

    /// `F + F^*` with `q(x, y) = <x, y>`.
    pub fn hyperbolic(ring: &PolyRing, n: usize) -> QuadSpace {
        let z = Matrix::zeros(ring.clone(), n, n);
        let i = Matrix::identity(ring.clone(), n);
        QuadSpace {
            upper: Matrix::from_blocks(&z, &i, &z, &z),
            twist: 0,
            basis_twists: None,
        }
    }

    /// Hyperbolic space on `F + F^*(L)` for a split `F = sum O(f_i)`.
    pub fn hyperbolic_twisted(ring: &PolyRing, f_twists: &[i64], twist: i64) -> QuadSpace {
        let mut h = QuadSpace::hyperbolic(ring, f_twists.len());
        let mut t = f_twists.to_vec();
        t.extend(f_twists.iter().map(|f| twist - f));
        h.twist = twist;
        h.basis_twists = Some(t);
        h
    }

    pub fn ring(&self) -> &PolyRing {
        self.upper.ring()
    }

    pub fn rank(&self) -> usize {
        self.upper.rows()
    }

    pub fn half_rank(&self) -> usize {
        self.upper.rows() / 2
    }

    pub fn gram_upper(&self) -> &Matrix<PolyRing> {
        &self.upper
    }

    pub fn bilinear(&self) -> Matrix<PolyRing> {
        bilinear_of_quadratic(&self.upper)
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    pub fn basis_twists(&self) -> Option<&[i64]> {
        self.basis_twists.as_deref()
    }

    pub fn is_constant(&self) -> bool {
        self.upper.is_constant()
    }

    pub fn q(&self, v: &Matrix<PolyRing>) -> Poly {
        v.transpose().mul(&self.upper).mul(v).get(0, 0).clone()
    }

    pub fn b(&self, u: &Matrix<PolyRing>, v: &Matrix<PolyRing>) -> Poly {
        u.transpose().mul(&self.bilinear()).mul(v).get(0, 0).clone()
    }

    /// Orthogonal sum.
    pub fn direct_sum(&self, other: &QuadSpace) -> QuadSpace {
        let basis_twists = match (&self.basis_twists, &other.basis_twists) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).copied().collect()),
            _ => None,
        };
        QuadSpace {
            upper: self.upper.block_diag(&other.upper),
            twist: self.twist,
            basis_twists,
        }
    }

    pub fn form_at(&self, point: &[Scalar]) -> Matrix<Field> {
        self.upper.eval(point)
    }
}

/// Checks the isotropy condition `M^T U M` alternating and rank `n` at `point`.
pub fn is_lagrangian_at(v: &QuadSpace, m: &Matrix<PolyRing>, point: &[Scalar]) -> Result<bool> {
    if m.rows() != v.rank() || m.cols() != v.half_rank() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} generators in a rank {} space",
            m.rows(),
            m.cols(),
            v.rank()
        )));
    }
    if v.ring() != m.ring() {
        return Err(Error::RingMismatch("generators and form live in different rings".into()));
    }
    let iso = m.transpose().mul(v.gram_upper()).mul(m);
    Ok(iso.is_alternating() && m.eval(point).rank() == v.half_rank())
}

pub fn is_lagrangian(v: &QuadSpace, m: &Matrix<PolyRing>) -> Result<bool> {
    is_lagrangian_at(v, m, &v.ring().origin())
}

/// A Lagrangian subbundle, given by a `2n x n` matrix of generators.
#[derive(Clone, Debug, PartialEq)]
pub struct LagSub {
    gens: Matrix<PolyRing>,
}

impl LagSub {
    pub fn new(v: &QuadSpace, gens: Matrix<PolyRing>) -> Result<LagSub> {
        if !is_lagrangian(v, &gens)? {
            return Err(Error::NotLagrangian("generators are not a Lagrangian subbundle".into()));
        }
        Ok(LagSub { gens })
    }

    pub fn gens(&self) -> &Matrix<PolyRing> {
        &self.gens
    }

    pub fn at(&self, point: &[Scalar]) -> Matrix<Field> {
        self.gens.eval(point)
    }

    /// The first summand `F = span(e_1..e_n)` of a hyperbolic space.
    pub fn first_summand(ring: &PolyRing, n: usize) -> LagSub {
        LagSub {
            gens: Matrix::identity(ring.clone(), n).vstack(&Matrix::zeros(ring.clone(), n, n)),
        }
    }

    /// The second summand `F^*`.
    pub fn second_summand(ring: &PolyRing, n: usize) -> LagSub {
        LagSub {
            gens: Matrix::zeros(ring.clone(), n, n).vstack(&Matrix::identity(ring.clone(), n)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphDirection {
    /// Graph of `F -> F^*`: columns of `[I; map]`.
    FromF,
    /// Graph of `F^* -> F`: columns of `[map; I]`.
    FromFDual,
}

/// Graph of an alternating map in the hyperbolic space `F + F^*`.
pub fn graph_subspace(map: &Matrix<PolyRing>, direction: GraphDirection) -> Result<LagSub> {
    if !map.is_square() {
        return Err(Error::NonSquare {
            rows: map.rows(),
            cols: map.cols(),
        });
    }
    if !map.is_alternating() {
        return Err(Error::NonAlternatingGraph("graph map must be alternating".into()));
    }
    let i = Matrix::identity(map.ring().clone(), map.rows());
    let gens = match direction {
        GraphDirection::FromF => i.vstack(map),
        GraphDirection::FromFDual => map.vstack(&i),
    };
    Ok(LagSub { gens })
}

/// An isometry `T` of `V` onto the hyperbolic space with `T(F)` the first summand
/// and `T(M)` the second, for complementary Lagrangians `F` and `M`.
pub fn isometry_to_hyperbolic(v: &QuadSpace, f: &LagSub, m: &LagSub) -> Result<Matrix<PolyRing>> {
    let g = f.gens();
    let mm = m.gens();
    let s = g.hstack(mm);
    let s_inv = s
        .inverse()
        .map_err(|_| Error::NotComplementary("F and M do not span V".into()))?;
    let pairing = g.transpose().mul(&v.bilinear()).mul(mm);
    let ring = v.ring().clone();
    let n = v.half_rank();
    let t = Matrix::identity(ring.clone(), n).block_diag(&pairing).mul(&s_inv);
    let h = QuadSpace::hyperbolic(&ring, n);
    let pulled = t.transpose().mul(h.gram_upper()).mul(&t).sub(v.gram_upper());
    if !pulled.is_alternating() {
        return Err(Error::NotLagrangian("F or M is not Lagrangian".into()));
    }
    Ok(t)
}

/// Result of embedding a pair `(E, F)` into the hyperbolic space on `V + V^*`.
#[derive(Clone, Debug)]
pub struct Doubling {
    pub space: QuadSpace,
    pub lagrangian: LagSub,
    /// Isometry `V + V(-q) -> V + V^*`.
    pub forward: Matrix<PolyRing>,
    pub backward: Matrix<PolyRing>,
}

/// `E + F` is Lagrangian in `V + V(-q)`; its image under `(v, w) -> (v + w, U v - U^T w)`
/// is a Lagrangian of the hyperbolic space whose intersection with `V^*` is `E ∩ F`.
pub fn hyperbolic_doubling(v: &QuadSpace, e: &LagSub, f: &LagSub) -> Result<Doubling> {
    let ring = v.ring().clone();
    let n2 = v.rank();
    let u = v.gram_upper();
    let b_inv = v.bilinear().inverse()?;
    let id = Matrix::identity(ring.clone(), n2);
    let forward = Matrix::from_blocks(&id, &id, u, &u.transpose().neg());
    let backward = Matrix::from_blocks(
        &b_inv.mul(&u.transpose()),
        &b_inv,
        &b_inv.mul(u),
        &b_inv.neg(),
    );
    debug_assert!(forward.mul(&backward).is_identity());
    let gens = forward.mul(&e.gens().block_diag(f.gens()));
    let mut space = QuadSpace::hyperbolic(&ring, n2);
    if let Some(t) = v.basis_twists() {
        let mut bt = t.to_vec();
        bt.extend(t.iter().map(|d| v.twist() - d));
        space.twist = v.twist();
        space.basis_twists = Some(bt);
    }
    let lagrangian = LagSub::new(&space, gens)?;
    Ok(Doubling {
        space,
        lagrangian,
        forward,
        backward,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> PolyRing {
        PolyRing::standard(Field::Rational, 3)
    }

    fn koszul(r: &PolyRing) -> Matrix<PolyRing> {
        let x = r.vars();
        let z = r.zero();
        Matrix::from_rows(
            r.clone(),
            vec![
                vec![z.clone(), x[2].clone(), x[1].clone()],
                vec![x[2].neg(), z.clone(), x[0].clone()],
                vec![x[1].neg(), x[0].neg(), z],
            ],
        )
        .unwrap()
    }

    #[test]
    fn graphs_are_lagrangian() {
        let r = ring();
        let h = QuadSpace::hyperbolic(&r, 3);
        let g = graph_subspace(&koszul(&r), GraphDirection::FromF).unwrap();
        assert!(is_lagrangian(&h, g.gens()).unwrap());
        let g2 = graph_subspace(&koszul(&r), GraphDirection::FromFDual).unwrap();
        assert!(is_lagrangian(&h, g2.gens()).unwrap());
        let sym = Matrix::identity(r.clone(), 3);
        assert!(matches!(
            graph_subspace(&sym, GraphDirection::FromF),
            Err(Error::NonAlternatingGraph(_))
        ));
    }

    #[test]
    fn wrong_shape_is_reported() {
        let r = ring();
        let h = QuadSpace::hyperbolic(&r, 2);
        let m = Matrix::zeros(r.clone(), 4, 3);
        assert!(matches!(is_lagrangian(&h, &m), Err(Error::DimensionMismatch(_))));
        let odd = Matrix::identity(r.clone(), 3);
        assert!(matches!(QuadSpace::new(odd), Err(Error::DegenerateForm(_))));
    }

    #[test]
    fn isometry_moves_pair_to_summands() {
        let r = PolyRing::standard(Field::Rational, 0);
        let c = |v: i64| r.from_i64(v);
        // q = x1 x3 + x2 x4 + x1^2 + 2 x1 x2
        let q = Matrix::from_rows(
            r.clone(),
            vec![
                vec![c(1), c(2), c(1), c(0)],
                vec![c(0), c(0), c(0), c(1)],
                vec![c(0), c(0), c(0), c(0)],
                vec![c(0), c(0), c(0), c(0)],
            ],
        )
        .unwrap();
        let v = QuadSpace::new(q).unwrap();
        // F = span(e3, e4) is isotropic; M = span(e1 - e3, e2 - 2 e3)
        let f = LagSub::new(&v, Matrix::from_rows(r.clone(), vec![
            vec![c(0), c(0)], vec![c(0), c(0)], vec![c(1), c(0)], vec![c(0), c(1)],
        ]).unwrap()).unwrap();
        let m = LagSub::new(&v, Matrix::from_rows(r.clone(), vec![
            vec![c(1), c(0)], vec![c(0), c(1)], vec![c(-1), c(-2)], vec![c(0), c(0)],
        ]).unwrap()).unwrap();
        let t = isometry_to_hyperbolic(&v, &f, &m).unwrap();
        let tf = t.mul(f.gens());
        assert!(tf.equals(&LagSub::first_summand(&r, 2).gens().clone()));
        let tm = t.mul(m.gens());
        assert!(tm.block(0, 2, 0, 2).is_zero());
    }

    #[test]
    fn doubling_preserves_intersection() {
        let r = ring();
        let v = QuadSpace::hyperbolic(&r, 3);
        let e = graph_subspace(&koszul(&r), GraphDirection::FromF).unwrap();
        let f = LagSub::first_summand(&r, 3);
        let d = hyperbolic_doubling(&v, &e, &f).unwrap();
        assert!(d.forward.mul(&d.backward).is_identity());
        let dual = LagSub::second_summand(&r, 6);
        for p in [vec![0, 0, 0], vec![1, 0, 0], vec![2, -1, 3]] {
            let pt: Vec<Scalar> = p.iter().map(|&a| Field::Rational.from_i64(a)).collect();
            let ef = e.at(&pt).hstack(&f.at(&pt)).rank();
            let ld = d.lagrangian.at(&pt).hstack(&dual.at(&pt)).rank();
            assert_eq!(6 - ef, 12 - ld);
        }
    }
}
