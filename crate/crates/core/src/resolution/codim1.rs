//! Symmetric sheaves of codimension one.

use super::complex::{check_degrees, check_exactness, ChainComplex, DiagramTwists, SymResolution};
use crate::error::{Error, Result};
use crate::ring::{Matrix, PolyRing};

/// Twists of `G`, `H` and `L` in `0 -> G -> H -> F -> 0`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Codim1Twists {
    pub g: Vec<i64>,
    pub h: Vec<i64>,
    pub l: i64,
}

/// The diagram
///
/// ```text
/// 0 -> G     --ψ-->   H      -> F
///      |φ             |φ^T
/// 0 -> H*(L) --ψ^T--> G*(L)  -> F^v(L)
/// ```
///
/// with `φ^T ψ` symmetric, so that `(ψ; φ)` is a Lagrangian of the symplectic
/// space `H ⊕ H*(L)`. In the returned twists `l_ef = l` and `m = 0`.
pub fn symmetric_codim1_resolution(
    psi: &Matrix<PolyRing>,
    phi: &Matrix<PolyRing>,
    twists: Option<&Codim1Twists>,
) -> Result<SymResolution> {
    let (h, g) = (psi.rows(), psi.cols());
    if h != g {
        return Err(Error::DimensionMismatch(format!("rank G = {g} but rank H = {h}")));
    }
    if phi.rows() != h || phi.cols() != g {
        return Err(Error::DimensionMismatch("φ must have the shape of ψ".into()));
    }
    if psi.ring() != phi.ring() {
        return Err(Error::RingMismatch("ψ and φ".into()));
    }
    let ring = psi.ring().clone();
    let mu = phi.transpose().mul(psi);
    if !mu.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let stacked = psi.vstack(phi);
    let omega = {
        let z = Matrix::zeros(ring.clone(), h, h);
        let i = Matrix::identity(ring.clone(), h);
        Matrix::from_blocks(&z, &i, &i.neg(), &z)
    };
    if !stacked.transpose().mul(&omega).mul(&stacked).is_zero() {
        return Err(Error::NotLagrangian("(ψ; φ) is not isotropic".into()));
    }
    if stacked.at_origin().rank() != g {
        return Err(Error::NotSubbundle("columns of (ψ; φ) are dependent at the origin".into()));
    }
    let chain_map = vec![phi.transpose(), phi.clone()];
    let (top, bottom, tw) = match twists {
        None => (
            ChainComplex::new(&ring, vec![h, g], vec![psi.clone()])?,
            ChainComplex::new(&ring, vec![g, h], vec![psi.transpose()])?,
            None,
        ),
        Some(t) => {
            if t.g.len() != g || t.h.len() != h {
                return Err(Error::DimensionMismatch("twist lists do not match the ranks".into()));
            }
            let dual = |v: &[i64]| v.iter().map(|x| t.l - x).collect::<Vec<_>>();
            let top = ChainComplex::graded(&ring, vec![t.h.clone(), t.g.clone()], vec![psi.clone()])?;
            let bottom = ChainComplex::graded(&ring, vec![dual(&t.g), dual(&t.h)], vec![psi.transpose()])?;
            check_degrees(phi, &dual(&t.h), &t.g).map_err(|e| Error::NotHomogeneous(format!("φ: {e}")))?;
            (top, bottom, Some(DiagramTwists { l: t.l, m: 0, l_ef: t.l }))
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
    if !check_exactness(&res.top) {
        return Err(Error::GradeViolation("ψ is not injective".into()));
    }
    Ok(res)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    Symmetric,
    Skew,
}

/// Whether a (skew-)symmetric codimension one sheaf on `P^n` with twist `ℓ` fails the
/// parity condition for a genuinely (skew-)symmetric resolution: `n ≡ 1 (mod 4)`
/// (resp. `n ≡ 3`), `ℓ` even and `χ(F(-ℓ/2))` odd.
pub fn parity_obstruction_codim1(n: u32, l: i64, chi_at_half: i64, kind: Symmetry) -> bool {
    let residue = match kind {
        Symmetry::Symmetric => 1,
        Symmetry::Skew => 3,
    };
    n % 4 == residue && l % 2 == 0 && chi_at_half % 2 != 0
}
