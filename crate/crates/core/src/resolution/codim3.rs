//! Codimension three: Buchsbaum–Eisenbud complexes, split Lagrangian diagrams and
//! the two ways of writing local equations of the degeneracy locus.

use super::complex::{check_degrees, check_exactness, ChainComplex, DiagramTwists, SymResolution};
use crate::error::{Error, Result};
use crate::ideal::{Codim, Ideal};
use crate::pairs::PairData;
use crate::pfaffian::{pfaffian, sub_pfaffians, submaximal_pfaffian_vector, AlternatingMatrix};
use crate::quadform::{LagSub, QuadSpace};
use crate::ring::{LocalElt, LocalRing, Matrix, Poly, PolyRing, Ring};

/// `0 -> R(-t) -> F* -> F -> R` with middle map `A` and outer maps the
/// submaximal Pfaffians of `A`. Twists are read off the degrees of the entries.
pub fn be_complex(a: &AlternatingMatrix<PolyRing>) -> Result<ChainComplex> {
    let n = a.size();
    if n.is_multiple_of(2) {
        return Err(Error::EvenSize(n));
    }
    let ring = a.ring().clone();
    let p = submaximal_pfaffian_vector(a)?;
    let ideal = Ideal::new(&ring, p.clone())?;
    match ideal.codim() {
        Codim::Finite(3) => {}
        c => {
            return Err(Error::GradeViolation(format!(
                "submaximal Pfaffians have codimension {c:?}, expected 3"
            )))
        }
    }
    let m = a.matrix();
    let deg = |q: &Poly| q.homogeneous_degree().map(i64::from);
    let mut t1: Vec<Option<i64>> = p.iter().map(|q| deg(q).map(|d| -d)).collect();
    let mut t2: Vec<Option<i64>> = vec![None; n];
    // propagate through the nonzero entries of A until nothing changes
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                let Some(d) = deg(m.get(i, j)) else { continue };
                match (t1[i], t2[j]) {
                    (Some(x), None) => {
                        t2[j] = Some(x - d);
                        changed = true;
                    }
                    (None, Some(y)) => {
                        t1[i] = Some(y + d);
                        changed = true;
                    }
                    _ => {}
                }
            }
        }
        if !changed {
            break;
        }
    }
    let t3 = (0..n)
        .find_map(|j| Some(t2[j]? - deg(&p[j])?))
        .ok_or_else(|| Error::NotHomogeneous("cannot determine the last twist".into()))?;
    let collect = |v: Vec<Option<i64>>| -> Result<Vec<i64>> {
        v.into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::NotHomogeneous("entries do not determine all twists".into()))
    };
    let twists = vec![vec![0], collect(t1)?, collect(t2)?, vec![t3]];
    let row = Matrix::from_rows(ring.clone(), vec![p.clone()])?;
    let col = Matrix::column(ring.clone(), p);
    ChainComplex::graded(&ring, twists, vec![row, m.clone(), col])
}

/// Twists of a split pair `E ⊂ F ⊕ F*(L)`: the summands of `E` and `F` and the degree of `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitTwists {
    pub e: Vec<i64>,
    pub f: Vec<i64>,
    pub l: i64,
}

impl SplitTwists {
    /// `L_{E,F} = det E ⊗ det F*(L) ⊗ det(V)⁻¹` and the square root `M` of `L_{E,F} ⊗ L⁻¹`.
    pub fn diagram(&self) -> Result<DiagramTwists> {
        let l_ef = self.e.iter().sum::<i64>() - self.f.iter().sum::<i64>();
        let diff = l_ef - self.l;
        if diff % 2 != 0 {
            return Err(Error::TwistParityError(format!(
                "deg L_EF - deg L = {diff} has no square root"
            )));
        }
        Ok(DiagramTwists { l: self.l, m: diff / 2, l_ef })
    }
}

fn check_split(psi: &Matrix<PolyRing>, phi: &Matrix<PolyRing>) -> Result<()> {
    if !psi.is_square() {
        return Err(Error::NonSquare {
            rows: psi.rows(),
            cols: psi.cols(),
        });
    }
    if phi.rows() != psi.rows() || phi.cols() != psi.cols() {
        return Err(Error::DimensionMismatch("ψ and φ must have the same shape".into()));
    }
    if psi.ring() != phi.ring() {
        return Err(Error::RingMismatch("ψ and φ".into()));
    }
    if !phi.transpose().mul(psi).is_alternating() {
        return Err(Error::NotAlternating);
    }
    if psi.at_origin().vstack(&phi.at_origin()).rank() != psi.cols() {
        return Err(Error::NotSubbundle("columns of (ψ; φ) are dependent at the origin".into()));
    }
    Ok(())
}

/// The pair `(E, F*(L))` in the hyperbolic space `F ⊕ F*(L)`, with `E` the image of `(ψ; φ)`.
pub fn split_pair(psi: &Matrix<PolyRing>, phi: &Matrix<PolyRing>) -> Result<PairData> {
    check_split(psi, phi)?;
    let ring = psi.ring();
    let n = psi.cols();
    PairData::from_parts(
        QuadSpace::hyperbolic(ring, n),
        LagSub::new(&QuadSpace::hyperbolic(ring, n), psi.vstack(phi))?,
        LagSub::second_summand(ring, n),
    )
}

/// Generator of `ker ψ`: the submaximal Pfaffians of `φ^T ψ` divided by a square root of `det φ`.
fn kernel_generator(psi: &Matrix<PolyRing>, phi: &Matrix<PolyRing>) -> Result<Vec<Poly>> {
    let mu = AlternatingMatrix::new(phi.transpose().mul(psi))?;
    let v = submaximal_pfaffian_vector(&mu)?;
    let d = phi.det()?;
    if d.is_zero() {
        return Err(Error::ZeroDivisorDet);
    }
    if d.is_constant() {
        return Ok(v);
    }
    let (f, _) = d
        .sqrt_up_to_constant()
        .ok_or_else(|| Error::Unsupported("det φ is not a constant times a square; pass the kernel map".into()))?;
    v.iter()
        .map(|x| {
            x.div_exact(&f)
                .ok_or_else(|| Error::Unsupported("Pfaffians of φ^T ψ are not divisible by f".into()))
        })
        .collect()
}

/// The diagram
///
/// ```text
/// 0 -> L_EF --c--> E(M) --ψ--> F(M) --(φc)^T--> O
///       |=          |φ          |φ^T             |=
/// 0 -> L_EF --φc--> F*(L⊗M) --(-ψ^T)--> E*(L⊗M) --c^T--> O
/// ```
///
/// for `E ⊂ F ⊕ F*(L)` given by `(ψ; φ)` with `φ^T ψ` alternating. The kernel map `c`
/// is computed when `det φ` is a constant times a square, or may be passed in.
pub fn dual_diagram(
    psi: &Matrix<PolyRing>,
    phi: &Matrix<PolyRing>,
    twists: Option<&SplitTwists>,
    kernel: Option<Vec<Poly>>,
) -> Result<SymResolution> {
    check_split(psi, phi)?;
    let ring = psi.ring().clone();
    let n = psi.cols();
    if n.is_multiple_of(2) {
        return Err(Error::EvenSize(n));
    }
    LagSub::new(&QuadSpace::hyperbolic(&ring, n), psi.vstack(phi))?;
    let c = match kernel {
        Some(c) => c,
        None => kernel_generator(psi, phi)?,
    };
    let c = Matrix::column(ring.clone(), c);
    if c.rows() != n || c.is_zero() || !psi.mul(&c).is_zero() {
        return Err(Error::NotAComplex("kernel map is not a nonzero element of ker ψ".into()));
    }
    let phic = phi.mul(&c);
    let top_maps = vec![phic.transpose(), psi.clone(), c.clone()];
    let bottom_maps = vec![c.transpose(), psi.transpose().neg(), phic];
    let one = Matrix::identity(ring.clone(), 1);
    let chain_map = vec![one.clone(), phi.transpose(), phi.clone(), one];
    let (top, bottom, tw) = match twists {
        None => (
            ChainComplex::new(&ring, vec![1, n, n, 1], top_maps)?,
            ChainComplex::new(&ring, vec![1, n, n, 1], bottom_maps)?,
            None,
        ),
        Some(s) => {
            if s.e.len() != n || s.f.len() != n {
                return Err(Error::DimensionMismatch(format!("expected {n} twists for E and F")));
            }
            let d = s.diagram()?;
            let shift = |v: &[i64], base: i64, sign: i64| -> Vec<i64> { v.iter().map(|x| base + sign * x + d.m).collect() };
            let top_t = vec![vec![0], shift(&s.f, 0, 1), shift(&s.e, 0, 1), vec![d.l_ef]];
            let bottom_t = vec![vec![0], shift(&s.e, d.l, -1), shift(&s.f, d.l, -1), vec![d.l_ef]];
            (
                ChainComplex::graded(&ring, top_t, top_maps)?,
                ChainComplex::graded(&ring, bottom_t, bottom_maps)?,
                Some(d),
            )
        }
    };
    let res = SymResolution {
        top,
        bottom,
        chain_map,
        twists: tw,
    };
    if !res.commutes() {
        return Err(Error::NotAComplex("ladder does not commute".into()));
    }
    if tw.is_some() {
        let (tt, bt) = (res.top.twists().unwrap(), res.bottom.twists().unwrap());
        for i in 0..4 {
            check_degrees(&res.chain_map[i], &bt[i], &tt[i])
                .map_err(|e| Error::NotHomogeneous(format!("vertical map {i}: {e}")))?;
        }
    }
    if !check_exactness(&res.top) {
        return Err(Error::GradeViolation("top row is not exact".into()));
    }
    Ok(res)
}

/// The alternating homotopy `h : F -> F*(L)` whose graph is the complement `(M1; M2)`,
/// `h = M2 M1⁻¹`.
pub fn homotopy_of_complement(m: &Matrix<PolyRing>) -> Result<AlternatingMatrix<PolyRing>> {
    let n = m.cols();
    if m.rows() != 2 * n {
        return Err(Error::DimensionMismatch(format!("complement must be {}x{n}", 2 * n)));
    }
    let m1 = m.block(0, n, 0, n);
    let m2 = m.block(n, 2 * n, 0, n);
    let inv = m1
        .inverse()
        .map_err(|_| Error::NotComplementary("complement is not a graph over F".into()))?;
    AlternatingMatrix::new(m2.mul(&inv)).map_err(|_| Error::NonAlternatingGraph("M2 M1⁻¹".into()))
}

/// `μ = φ^T ψ + ψ^T h ψ = (φ - hψ)^T ψ`, alternating; requires `φ - hψ` invertible near the origin.
pub fn homotopy_symmetrize(
    psi: &Matrix<PolyRing>,
    phi: &Matrix<PolyRing>,
    h: &AlternatingMatrix<PolyRing>,
) -> Result<AlternatingMatrix<PolyRing>> {
    if !phi.transpose().checked_mul(psi)?.is_alternating() {
        return Err(Error::NotAlternating);
    }
    let u = phi.sub(&h.matrix().checked_mul(psi)?);
    if u.det()?.constant_coeff().is_none() {
        return Err(Error::NotAUnit("φ - hψ is singular at the origin".into()));
    }
    AlternatingMatrix::new(u.transpose().mul(psi))
}

/// Bases in which `Q⁻¹ ψ P = diag(β, I)` and `Q^T φ P = diag(I, γ)`.
#[derive(Clone, Debug)]
pub struct StandardForm {
    pub p: Matrix<LocalRing>,
    pub q: Matrix<LocalRing>,
    pub q_inv: Matrix<LocalRing>,
    pub beta: AlternatingMatrix<LocalRing>,
    pub gamma: AlternatingMatrix<LocalRing>,
    /// Determinants of `P` and `Q`, tracked through the elimination.
    pub det_p: LocalElt,
    pub det_q: LocalElt,
}

impl StandardForm {
    pub fn psi_form(&self) -> Matrix<LocalRing> {
        let ring = self.beta.ring().clone();
        self.beta.matrix().block_diag(&Matrix::identity(ring, self.gamma.size()))
    }

    pub fn phi_form(&self) -> Matrix<LocalRing> {
        let ring = self.beta.ring().clone();
        Matrix::identity(ring, self.beta.size()).block_diag(self.gamma.matrix())
    }

    /// Multiplies back and compares with the inputs exactly.
    pub fn verify(&self, psi: &Matrix<LocalRing>, phi: &Matrix<LocalRing>) -> bool {
        let n = psi.rows();
        let id = Matrix::identity(psi.ring().clone(), n);
        self.q.mul(&self.q_inv).equals(&id)
            && self.det_p.is_unit()
            && self.q_inv.mul(psi).mul(&self.p).equals(&self.psi_form())
            && self.q.transpose().mul(phi).mul(&self.p).equals(&self.phi_form())
    }
}

/// Running state of the elimination: `ψ_c = Q⁻¹ ψ P` and `φ_c = Q^T φ P`.
struct Reduction {
    ring: LocalRing,
    psi: Matrix<LocalRing>,
    phi: Matrix<LocalRing>,
    p: Matrix<LocalRing>,
    q: Matrix<LocalRing>,
    q_inv: Matrix<LocalRing>,
    det_p: LocalElt,
    det_q: LocalElt,
}

fn swap_rows<R: Ring>(m: &mut Matrix<R>, i: usize, j: usize) {
    for c in 0..m.cols() {
        let a = m.get(i, c).clone();
        let b = m.get(j, c).clone();
        m.set(i, c, b);
        m.set(j, c, a);
    }
}

fn swap_cols<R: Ring>(m: &mut Matrix<R>, i: usize, j: usize) {
    for r in 0..m.rows() {
        let a = m.get(r, i).clone();
        let b = m.get(r, j).clone();
        m.set(r, i, b);
        m.set(r, j, a);
    }
}

/// `row_i += c row_j`.
fn add_row<R: Ring>(m: &mut Matrix<R>, i: usize, j: usize, c: &R::Elem) {
    let ring = m.ring().clone();
    for k in 0..m.cols() {
        let v = ring.add(m.get(i, k), &ring.mul(c, m.get(j, k)));
        m.set(i, k, v);
    }
}

/// `col_i += c col_j`.
fn add_col<R: Ring>(m: &mut Matrix<R>, i: usize, j: usize, c: &R::Elem) {
    let ring = m.ring().clone();
    for k in 0..m.rows() {
        let v = ring.add(m.get(k, i), &ring.mul(c, m.get(k, j)));
        m.set(k, i, v);
    }
}

fn scale_row<R: Ring>(m: &mut Matrix<R>, i: usize, c: &R::Elem) {
    let ring = m.ring().clone();
    for k in 0..m.cols() {
        let v = ring.mul(c, m.get(i, k));
        m.set(i, k, v);
    }
}

fn scale_col<R: Ring>(m: &mut Matrix<R>, i: usize, c: &R::Elem) {
    let ring = m.ring().clone();
    for k in 0..m.rows() {
        let v = ring.mul(c, m.get(k, i));
        m.set(k, i, v);
    }
}

impl Reduction {
    // A row operation R on φ_c acts on ψ_c by R^{-T}, on Q by Q R^T and on Q⁻¹ by R^{-T} Q⁻¹.

    fn row_swap(&mut self, i: usize, j: usize) {
        swap_rows(&mut self.phi, i, j);
        swap_rows(&mut self.psi, i, j);
        swap_cols(&mut self.q, i, j);
        swap_rows(&mut self.q_inv, i, j);
        self.det_q = self.ring.neg(&self.det_q);
    }

    fn row_scale(&mut self, i: usize, c: &LocalElt) {
        let inv = self.ring.unit_inverse(c).expect("pivot is a unit");
        scale_row(&mut self.phi, i, c);
        scale_row(&mut self.psi, i, &inv);
        scale_col(&mut self.q, i, c);
        scale_row(&mut self.q_inv, i, &inv);
        self.det_q = self.ring.mul(&self.det_q, c);
    }

    /// `row_i(φ_c) += c row_j(φ_c)`.
    fn row_add(&mut self, i: usize, j: usize, c: &LocalElt) {
        let minus = self.ring.neg(c);
        add_row(&mut self.phi, i, j, c);
        add_row(&mut self.psi, j, i, &minus);
        add_col(&mut self.q, i, j, c);
        add_row(&mut self.q_inv, j, i, &minus);
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        swap_cols(&mut self.phi, i, j);
        swap_cols(&mut self.psi, i, j);
        swap_cols(&mut self.p, i, j);
        self.det_p = self.ring.neg(&self.det_p);
    }

    fn col_add(&mut self, i: usize, j: usize, c: &LocalElt) {
        add_col(&mut self.phi, i, j, c);
        add_col(&mut self.psi, i, j, c);
        add_col(&mut self.p, i, j, c);
    }

    fn col_mul(&mut self, c: &Matrix<LocalRing>, det_c: &LocalElt) {
        self.det_p = self.ring.mul(&self.det_p, det_c);
        self.phi = self.phi.mul(c);
        self.psi = self.psi.mul(c);
        self.p = self.p.mul(c);
    }

    /// Brings a maximal invertible minor of `φ_c` to an identity block in the upper left
    /// with zeros beside it; returns its size.
    fn pivot_phi(&mut self) -> usize {
        let n = self.phi.rows();
        let mut k = 0;
        while k < n {
            let unit_at = |m: &Matrix<LocalRing>, i: usize, j: usize| m.get(i, j).is_unit();
            let pivot = if unit_at(&self.phi, k, k) {
                Some((k, k))
            } else {
                (k..n).flat_map(|i| (k..n).map(move |j| (i, j))).find(|&(i, j)| unit_at(&self.phi, i, j))
            };
            let Some((i, j)) = pivot else { break };
            if i != k {
                self.row_swap(i, k);
            }
            if j != k {
                self.col_swap(j, k);
            }
            let a = self.phi.get(k, k).clone();
            if !self.ring.equal(&a, &self.ring.one()) {
                let inv = self.ring.unit_inverse(&a).expect("pivot is a unit");
                self.row_scale(k, &inv);
            }
            for r in 0..n {
                if r != k && !self.phi.get(r, k).is_zero() {
                    let c = self.ring.neg(self.phi.get(r, k));
                    self.row_add(r, k, &c);
                }
            }
            for c in 0..n {
                if c != k && !self.phi.get(k, c).is_zero() {
                    let x = self.ring.neg(self.phi.get(k, c));
                    self.col_add(c, k, &x);
                }
            }
            k += 1;
        }
        k
    }
}

/// Standard local form of a Lagrangian `E ⊂ F ⊕ F*` given by `(ψ; φ)` over the local ring.
pub fn standard_local_form(psi: &Matrix<LocalRing>, phi: &Matrix<LocalRing>) -> Result<StandardForm> {
    let n = psi.rows();
    if !psi.is_square() || phi.rows() != n || phi.cols() != n {
        return Err(Error::DimensionMismatch("ψ and φ must be square of the same size".into()));
    }
    if !phi.transpose().mul(psi).is_alternating() {
        return Err(Error::NotAlternating);
    }
    if psi.at_origin().vstack(&phi.at_origin()).rank() != n {
        return Err(Error::NotSubbundle("columns of (ψ; φ) are dependent modulo the maximal ideal".into()));
    }
    let ring = psi.ring().clone();
    let id = Matrix::identity(ring.clone(), n);
    let mut w = Reduction {
        ring: ring.clone(),
        psi: psi.clone(),
        phi: phi.clone(),
        p: id.clone(),
        q: id.clone(),
        q_inv: id,
        det_p: ring.one(),
        det_q: ring.one(),
    };
    let k = w.pivot_phi();
    let s = n - k;
    // ψ_22 is invertible because the last columns of (ψ; φ) are independent mod m
    let psi22 = w.psi.block(k, n, k, n);
    let inv22 = psi22.inverse().map_err(|_| Error::NotAUnit("ψ_22 is not invertible".into()))?;
    if s > 0 {
        let c = Matrix::identity(ring.clone(), k).block_diag(&inv22);
        let det_c = ring
            .unit_inverse(&psi22.det()?)
            .ok_or_else(|| Error::NotAUnit("ψ_22 is not invertible".into()))?;
        w.col_mul(&c, &det_c);
    }
    let psi21 = w.psi.block(k, n, 0, k);
    let gamma = w.phi.block(k, n, k, n);
    let t = psi21.transpose().mul(&gamma);
    let ik = Matrix::identity(ring.clone(), k);
    let is = Matrix::identity(ring.clone(), s);
    let zks = Matrix::zeros(ring.clone(), s, k);
    let pf = Matrix::from_blocks(&ik, &Matrix::zeros(ring.clone(), k, s), &psi21.neg(), &is);
    let qf_inv = Matrix::from_blocks(&ik, &t, &zks, &is);
    let qf = Matrix::from_blocks(&ik, &t.neg(), &zks, &is);
    w.psi = qf_inv.mul(&w.psi).mul(&pf);
    w.phi = qf.transpose().mul(&w.phi).mul(&pf);
    w.p = w.p.mul(&pf);
    w.q = w.q.mul(&qf);
    w.q_inv = qf_inv.mul(&w.q_inv);
    let beta = AlternatingMatrix::new(w.psi.block(0, k, 0, k))?;
    let gamma = AlternatingMatrix::new(w.phi.block(k, n, k, n))?;
    let form = StandardForm {
        p: w.p,
        q: w.q,
        q_inv: w.q_inv,
        beta,
        gamma,
        det_p: w.det_p,
        det_q: w.det_q,
    };
    Ok(form)
}

/// Local equations `(Pf(φ^T ψ) : f)` with `f = Pf(γ)` and `det φ = a f²`.
#[derive(Clone, Debug)]
pub struct ColonEquations {
    pub ideal: Ideal,
    pub f: LocalElt,
    /// The unit `a` in `det φ = a f²`.
    pub unit: LocalElt,
    pub form: StandardForm,
}

pub fn colon_equations(psi: &Matrix<PolyRing>, phi: &Matrix<PolyRing>) -> Result<ColonEquations> {
    let ring = psi.ring().clone();
    let n = psi.rows();
    if n.is_multiple_of(2) {
        return Err(Error::EvenSize(n));
    }
    let det_phi = phi.det()?;
    if det_phi.is_zero() {
        return Err(Error::ZeroDivisorDet);
    }
    let (lpsi, lphi) = (psi.to_local(), phi.to_local());
    let form = standard_local_form(&lpsi, &lphi)?;
    if form.gamma.size() % 2 == 1 {
        return Err(Error::ZeroDivisorDet);
    }
    let local = lpsi.ring().clone();
    let f = pfaffian(&form.gamma)?;
    // Q^T φ P = diag(I, γ), so det φ = f² / (det Q det P)
    let dq_dp = local.mul(&form.det_q, &form.det_p);
    let unit = local
        .unit_inverse(&dq_dp)
        .ok_or_else(|| Error::NotAUnit("change of basis is not invertible".into()))?;
    if !local.equal(&LocalElt::from_poly(det_phi), &local.mul(&unit, &local.mul(&f, &f))) {
        return Err(Error::NotAComplex("det φ is not a unit times f²".into()));
    }
    let mu = AlternatingMatrix::new(phi.transpose().mul(psi))?;
    let pf = Ideal::new(&ring, sub_pfaffians(&mu, n - 1)?)?;
    let ideal = pf.colon(f.numerator())?;
    Ok(ColonEquations { ideal, f, unit, form })
}
