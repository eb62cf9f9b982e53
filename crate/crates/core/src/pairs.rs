//! Pairs of Lagrangians: intersections, common complements, padding and the
//! local alternating description of a pair.

use crate::error::{Error, Result};
use crate::pfaffian::AlternatingMatrix;
use crate::quadform::{is_lagrangian, LagSub, QuadSpace};
use crate::ring::{Field, LocalElt, LocalRing, Matrix, Poly, PolyRing, Ring, Scalar};
use crate::util::combinations;

/// Two Lagrangian subbundles of a quadratic space.
#[derive(Clone, Debug)]
pub struct PairData {
    ambient: QuadSpace,
    e: LagSub,
    f: LagSub,
}

impl PairData {
    pub fn new(ambient: QuadSpace, e: Matrix<PolyRing>, f: Matrix<PolyRing>) -> Result<PairData> {
        let e = LagSub::new(&ambient, e)?;
        let f = LagSub::new(&ambient, f)?;
        Ok(PairData { ambient, e, f })
    }

    pub fn from_parts(ambient: QuadSpace, e: LagSub, f: LagSub) -> Result<PairData> {
        PairData::new(ambient, e.gens().clone(), f.gens().clone())
    }

    pub fn ambient(&self) -> &QuadSpace {
        &self.ambient
    }

    pub fn e(&self) -> &LagSub {
        &self.e
    }

    pub fn f(&self) -> &LagSub {
        &self.f
    }

    pub fn ring(&self) -> &PolyRing {
        self.ambient.ring()
    }

    /// Rank of `E` and `F`.
    pub fn n(&self) -> usize {
        self.ambient.half_rank()
    }

    /// Basis of `E ∩ F` at a point, as columns.
    pub fn intersection_at(&self, point: &[Scalar]) -> Matrix<Field> {
        intersect_field(&self.e.at(point), &self.f.at(point))
    }

    pub fn intersection_dim_at(&self, point: &[Scalar]) -> usize {
        2 * self.n() - self.e.at(point).hstack(&self.f.at(point)).rank()
    }

    /// The pair is even at `point` when `dim(E ∩ F) ≡ n (mod 2)`.
    pub fn is_even_at(&self, point: &[Scalar]) -> bool {
        (self.intersection_dim_at(point) + self.n()).is_multiple_of(2)
    }
}

/// Column basis of the intersection of two column spans.
pub fn intersect_field(u: &Matrix<Field>, w: &Matrix<Field>) -> Matrix<Field> {
    let k = u.hstack(&w.neg()).kernel();
    let a = k.block(0, u.cols(), 0, k.cols());
    let vecs = u.mul(&a);
    let keep = independent_columns(&Matrix::zeros(*u.ring(), u.rows(), 0), &vecs);
    vecs.submatrix(&(0..vecs.rows()).collect::<Vec<_>>(), &keep)
}

/// Indices of columns of `cand` that extend the span of `base`, chosen greedily.
fn independent_columns(base: &Matrix<Field>, cand: &Matrix<Field>) -> Vec<usize> {
    let mut cur = base.clone();
    let mut rank = cur.rank();
    let mut keep = Vec::new();
    for j in 0..cand.cols() {
        let next = cur.hstack(&cand.block(0, cand.rows(), j, j + 1));
        let r = next.rank();
        if r > rank {
            keep.push(j);
            cur = next;
            rank = r;
        }
    }
    keep
}

fn column(m: &Matrix<Field>, j: usize) -> Matrix<Field> {
    m.block(0, m.rows(), j, j + 1)
}

fn quad_value(upper: &Matrix<Field>, v: &Matrix<Field>) -> Scalar {
    v.transpose().mul(upper).mul(v).get(0, 0).clone()
}

fn is_lagrangian_field(upper: &Matrix<Field>, m: &Matrix<Field>) -> bool {
    m.rank() == upper.rows() / 2 && m.transpose().mul(upper).mul(m).is_alternating()
}

fn complementary(a: &Matrix<Field>, b: &Matrix<Field>) -> bool {
    a.hstack(b).rank() == a.rows()
}

/// A Lagrangian complementary to both `u1` and `u2` over a field, for a pair with
/// `dim(u1 ∩ u2) ≡ n (mod 2)`.
pub fn common_complement_field(
    upper: &Matrix<Field>,
    u1: &Matrix<Field>,
    u2: &Matrix<Field>,
) -> Result<Matrix<Field>> {
    let field = *upper.ring();
    let n = upper.rows() / 2;
    let b = upper.add(&upper.transpose());
    let k = intersect_field(u1, u2);
    let kd = k.cols();
    if (n - kd) % 2 == 1 {
        return Err(Error::ParityViolation(format!(
            "dim(E ∩ F) = {kd} has the wrong parity for rank {n}"
        )));
    }
    // f_i complete K to a basis of u1; h_j complete K in u2; pair them dually
    let fi = independent_columns(&k, u1);
    let hi = independent_columns(&k, u2);
    let rows: Vec<usize> = (0..2 * n).collect();
    let f = u1.submatrix(&rows, &fi);
    let h = u2.submatrix(&rows, &hi);
    let pairing = f.transpose().mul(&b).mul(&h);
    let g = h.mul(
        &pairing
            .inverse()
            .map_err(|_| Error::NotComplementary("pairing between the two sides is degenerate".into()))?,
    );
    // complement of K inside the orthogonal of span(f, g)
    let n_basis = f.hstack(&g);
    let constraints = n_basis.transpose().mul(&b).vstack(&k.transpose().mul(&b));
    let mut rhs = Matrix::zeros(field, n_basis.cols() + kd, kd);
    for j in 0..kd {
        rhs.set(n_basis.cols() + j, j, field.one());
    }
    let w = constraints
        .solve(&rhs)
        .ok_or_else(|| Error::NotComplementary("no dual basis for the intersection".into()))?;
    let mut p = w.clone();
    for j in 0..kd {
        let wj = column(&w, j);
        let mut pj = wj.clone();
        pj = pj.add(&column(&k, j).scale(&quad_value(upper, &wj).neg()));
        for i in 0..j {
            let wi = column(&w, i);
            let bij = wi.transpose().mul(&b).mul(&wj).get(0, 0).clone();
            pj = pj.add(&column(&k, i).scale(&bij.neg()));
        }
        for r in 0..2 * n {
            p.set(r, j, pj.get(r, 0).clone());
        }
    }
    let mut cols: Vec<Matrix<Field>> = Vec::new();
    for t in 0..f.cols() / 2 {
        let (a, c) = (2 * t, 2 * t + 1);
        cols.push(column(&f, a).add(&column(&g, c)));
        cols.push(column(&f, c).sub(&column(&g, a)));
    }
    let mut m = Matrix::zeros(field, 2 * n, 0);
    for c in cols {
        m = m.hstack(&c);
    }
    m = m.hstack(&p);
    if !is_lagrangian_field(upper, &m) || !complementary(&m, u1) || !complementary(&m, u2) {
        return Err(Error::NotComplementary("constructed complement failed verification".into()));
    }
    Ok(m)
}

/// A complement together with the ranks certifying it.
#[derive(Clone, Debug)]
pub struct ComplementWitness {
    pub m: LagSub,
    pub point: Vec<Scalar>,
    /// Rank of `[E | M]` and `[F | M]` at the point; both equal `2n`.
    pub rank_with_e: usize,
    pub rank_with_f: usize,
}

/// Common Lagrangian complement of an even pair at the origin. The form must be constant.
pub fn common_complement(p: &PairData) -> Result<ComplementWitness> {
    common_complement_at(p, &p.ring().origin())
}

pub fn common_complement_at(p: &PairData, point: &[Scalar]) -> Result<ComplementWitness> {
    if !p.ambient.is_constant() {
        return Err(Error::Unsupported("common complements need a constant quadratic form".into()));
    }
    let upper = p.ambient.form_at(point);
    let e = p.e.at(point);
    let f = p.f.at(point);
    let m = common_complement_field(&upper, &e, &f)?;
    let rank_with_e = e.hstack(&m).rank();
    let rank_with_f = f.hstack(&m).rank();
    let gens = m.to_poly(p.ring());
    Ok(ComplementWitness {
        m: LagSub::new(&p.ambient, gens)?,
        point: point.to_vec(),
        rank_with_e,
        rank_with_f,
    })
}

/// All Lagrangians of a quadratic form over a prime field, as column bases in
/// reduced echelon form.
pub fn enumerate_lagrangians(upper: &Matrix<Field>) -> Result<Vec<Matrix<Field>>> {
    let field = *upper.ring();
    let elems = match field {
        Field::Prime(_) => field.elements(),
        Field::Rational => return Err(Error::Unsupported("enumeration needs a finite field".into())),
    };
    let dim = upper.rows();
    let n = dim / 2;
    let mut out = Vec::new();
    for pivots in combinations(dim, n) {
        // free slots: row i, column c > pivot_i that is not a pivot column
        let slots: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| {
                let pv = pivots.clone();
                (pivots[i] + 1..dim).filter(move |c| !pv.contains(c)).map(move |c| (i, c))
            })
            .collect();
        let total = (elems.len() as u64).pow(slots.len() as u32);
        for code in 0..total {
            let mut rows = Matrix::zeros(field, n, dim);
            for (i, &pc) in pivots.iter().enumerate() {
                rows.set(i, pc, field.one());
            }
            let mut c = code;
            for &(i, col) in &slots {
                rows.set(i, col, elems[(c % elems.len() as u64) as usize].clone());
                c /= elems.len() as u64;
            }
            let m = rows.transpose();
            if is_lagrangian_field(upper, &m) {
                out.push(m);
            }
        }
    }
    Ok(out)
}

/// A triple of Lagrangians, pairwise even, with no Lagrangian complementary to all three.
pub fn find_triple_without_complement(
    upper: &Matrix<Field>,
) -> Result<Option<[Matrix<Field>; 3]>> {
    let lags = enumerate_lagrangians(upper)?;
    let n = upper.rows() / 2;
    let even = |a: &Matrix<Field>, b: &Matrix<Field>| (intersect_field(a, b).cols() + n).is_multiple_of(2);
    for t in combinations(lags.len(), 3) {
        let (a, b, c) = (&lags[t[0]], &lags[t[1]], &lags[t[2]]);
        if !(even(a, b) && even(a, c) && even(b, c)) {
            continue;
        }
        let has = lags
            .iter()
            .any(|m| complementary(m, a) && complementary(m, b) && complementary(m, c));
        if !has {
            return Ok(Some([a.clone(), b.clone(), c.clone()]));
        }
    }
    Ok(None)
}

/// Adds a hyperbolic plane so that the pair becomes even: `E + O`, `F + O^*`.
pub fn pad_even(p: &PairData) -> PairData {
    let ring = p.ring().clone();
    let n = p.n();
    let plane = QuadSpace::hyperbolic(&ring, 1);
    let ambient = p.ambient.direct_sum(&plane);
    let one = Matrix::identity(ring.clone(), 1);
    let zero1 = Matrix::zeros(ring.clone(), 1, 1);
    let e = p
        .e
        .gens()
        .block_diag(&one)
        .vstack(&Matrix::zeros(ring.clone(), 1, n).hstack(&zero1));
    let f0 = p.f.gens().hstack(&Matrix::zeros(ring.clone(), 2 * n, 1));
    let f = f0
        .vstack(&Matrix::zeros(ring.clone(), 1, n + 1))
        .vstack(&Matrix::zeros(ring.clone(), 1, n).hstack(&one));
    PairData::new(ambient, e, f).expect("padding keeps both subbundles Lagrangian")
}

/// `λ = g^T B f : E -> F^*`.
pub fn lambda_of_pair(p: &PairData) -> Matrix<PolyRing> {
    p.f.gens().transpose().mul(&p.ambient.bilinear()).mul(p.e.gens())
}

/// Local description `λ = ζ ι⁻¹` of an even pair with respect to a common complement.
#[derive(Clone, Debug)]
pub struct LocalAlternation {
    /// `ι : F -> E`, invertible near the origin.
    pub iota: Matrix<LocalRing>,
    /// `ζ = λ ι`, alternating.
    pub zeta: AlternatingMatrix<LocalRing>,
    /// Polynomial alternating matrix with `ζ = scale * numerator`.
    pub numerator: AlternatingMatrix<PolyRing>,
    pub scale: LocalElt,
    /// The construction is valid wherever `chart` does not vanish.
    pub chart: Poly,
    pub complement: LagSub,
    pub lambda: Matrix<PolyRing>,
}

pub fn localize_alternating(p: &PairData) -> Result<LocalAlternation> {
    let origin = p.ring().origin();
    if !p.is_even_at(&origin) {
        return Err(Error::ParityViolation(format!(
            "dim(E ∩ F) = {} at the origin, rank {}; pad the pair first",
            p.intersection_dim_at(&origin),
            p.n()
        )));
    }
    let w = common_complement(p)?;
    localize_alternating_with(p, &w.m)
}

/// As [`localize_alternating`] with a given Lagrangian `m` complementary to `E` and `F` at the origin.
pub fn localize_alternating_with(p: &PairData, m: &LagSub) -> Result<LocalAlternation> {
    let ring = p.ring().clone();
    let n = p.n();
    if !is_lagrangian(&p.ambient, m.gens())? {
        return Err(Error::NotLagrangian("complement".into()));
    }
    let g = p.f.gens();
    let s = g.hstack(m.gens());
    let d1 = s.det()?;
    if d1.constant_coeff().is_none() {
        return Err(Error::NotComplementary("M does not complement F at the origin".into()));
    }
    let coords = s.adjugate().mul(p.e.gens());
    let a_num = coords.block(0, n, 0, n);
    let det_a = a_num.det()?;
    if det_a.constant_coeff().is_none() {
        return Err(Error::NotComplementary("M does not complement E at the origin".into()));
    }
    let lambda = lambda_of_pair(p);
    let adj_a = a_num.adjugate();
    let num = lambda.mul(&adj_a);
    let numerator = AlternatingMatrix::new(num)
        .map_err(|_| Error::NonAlternatingGraph("λ ι is not alternating".into()))?;
    let local = LocalRing::new(ring.clone());
    let scale = LocalElt::new(d1.clone(), det_a.clone())?;
    let iota = adj_a.map_ring(local.clone(), |x| local.mul(&LocalElt::from_poly(x.clone()), &scale));
    let zeta = AlternatingMatrix::new(numerator.matrix().map_ring(local.clone(), |x| {
        local.mul(&LocalElt::from_poly(x.clone()), &scale)
    }))?;
    Ok(LocalAlternation {
        iota,
        zeta,
        numerator,
        scale,
        chart: d1.mul(&det_a),
        complement: m.clone(),
        lambda,
    })
}

fn check_square_pair(zeta: &AlternatingMatrix<LocalRing>, h: &AlternatingMatrix<LocalRing>) -> Result<()> {
    if zeta.size() != h.size() {
        return Err(Error::DimensionMismatch(format!("{} vs {}", zeta.size(), h.size())));
    }
    Ok(())
}

fn one_minus_h_zeta(zeta: &AlternatingMatrix<LocalRing>, h: &AlternatingMatrix<LocalRing>) -> Matrix<LocalRing> {
    let id = Matrix::identity(zeta.ring().clone(), zeta.size());
    id.sub(&h.matrix().mul(zeta.matrix()))
}

/// Change of complement: `ζ' = ζ u⁻¹` with `u = 1 - h ζ`.
pub fn complement_transform(
    zeta: &AlternatingMatrix<LocalRing>,
    h: &AlternatingMatrix<LocalRing>,
) -> Result<AlternatingMatrix<LocalRing>> {
    check_square_pair(zeta, h)?;
    let u = one_minus_h_zeta(zeta, h);
    let u_inv = u
        .inverse()
        .map_err(|_| Error::NotAUnit("det(1 - hζ) vanishes at the origin".into()))?;
    AlternatingMatrix::new(zeta.matrix().mul(&u_inv))
}

/// `(ζ, h) -> (ζ u, -u⁻¹ h u⁻ᵀ)`, an involution.
pub fn homotopy_involution(
    zeta: &AlternatingMatrix<LocalRing>,
    h: &AlternatingMatrix<LocalRing>,
) -> Result<(AlternatingMatrix<LocalRing>, AlternatingMatrix<LocalRing>)> {
    check_square_pair(zeta, h)?;
    let u = one_minus_h_zeta(zeta, h);
    let u_inv = u
        .inverse()
        .map_err(|_| Error::NotAUnit("det(1 - hζ) vanishes at the origin".into()))?;
    let z2 = AlternatingMatrix::new(zeta.matrix().mul(&u))?;
    let h2 = AlternatingMatrix::new(u_inv.mul(h.matrix()).mul(&u_inv.transpose()).neg())?;
    Ok((z2, h2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadform::{graph_subspace, GraphDirection};

    fn f2_space() -> Matrix<Field> {
        // q = x1 x3 + x2 x4
        let f = Field::Prime(2);
        let mut u = Matrix::zeros(f, 4, 4);
        u.set(0, 2, f.one());
        u.set(1, 3, f.one());
        u
    }

    #[test]
    fn f2_lagrangians() {
        let u = f2_space();
        let lags = enumerate_lagrangians(&u).unwrap();
        assert_eq!(lags.len(), 6);
        // every even pair has a common complement
        for a in &lags {
            for b in &lags {
                let inter = intersect_field(a, b).cols();
                let r = common_complement_field(&u, a, b);
                if inter.is_multiple_of(2) {
                    assert!(r.is_ok());
                } else {
                    assert!(matches!(r, Err(Error::ParityViolation(_))));
                }
            }
        }
        let t = find_triple_without_complement(&u).unwrap();
        assert!(t.is_some());
    }

    #[test]
    fn koszul_pair_localizes_to_itself() {
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
        let v = QuadSpace::hyperbolic(&r, 3);
        let e = graph_subspace(&k, GraphDirection::FromF).unwrap();
        let f = LagSub::first_summand(&r, 3);
        let p = PairData::from_parts(v, e, f).unwrap();
        assert_eq!(p.intersection_dim_at(&r.origin()), 3);
        let loc = localize_alternating(&p).unwrap();
        assert!(loc.numerator.matrix().equals(&k));
        assert!(loc.iota.is_identity());
    }

    #[test]
    fn odd_pair_rejected_then_padded() {
        let r = PolyRing::standard(Field::Rational, 1);
        let v = QuadSpace::hyperbolic(&r, 1);
        let p = PairData::from_parts(v, LagSub::first_summand(&r, 1), LagSub::second_summand(&r, 1)).unwrap();
        assert!(matches!(localize_alternating(&p), Err(Error::ParityViolation(_))));
        let padded = pad_even(&p);
        assert_eq!(padded.n(), 2);
        assert!(padded.is_even_at(&r.origin()));
        let lam = lambda_of_pair(&padded);
        assert_eq!(lam.get(1, 1), &r.one());
        assert!(localize_alternating(&padded).is_ok());
    }

    #[test]
    fn involution_blocked_when_not_unit() {
        let r = PolyRing::standard(Field::Rational, 0);
        let l = LocalRing::new(r.clone());
        let one = LocalElt::from_poly(r.one());
        let zeta = AlternatingMatrix::from_upper(l.clone(), 2, |_, _| one.clone());
        let h = AlternatingMatrix::from_upper(l.clone(), 2, |_, _| l.neg(&one));
        assert!(matches!(homotopy_involution(&zeta, &h), Err(Error::NotAUnit(_))));
        assert!(matches!(complement_transform(&zeta, &h), Err(Error::NotAUnit(_))));
    }
}
