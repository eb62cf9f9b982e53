//! Seeded random instances.

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json::{
    lagrangian_from_json, lagrangian_to_json, matrix_from_json, matrix_to_json, quadspace_from_json, quadspace_to_json,
    ring_from_json, ring_to_json, LagrangianJson, MatrixJson, QuadSpaceJson, RingJson,
};
use crate::pairs::PairData;
use crate::pfaffian::AlternatingMatrix;
use crate::quadform::{LagSub, QuadSpace};
use crate::resolution::Codim1Twists;
use crate::ring::{Field, Matrix, Monomial, Poly, PolyRing, Ring, Scalar};

pub type Rand = ChaCha8Rng;

pub fn rng(seed: u64) -> Rand {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Alternating,
    LagrangianPair,
    SplitPair,
    Symmetric,
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Kind> {
        match s {
            "alternating" => Ok(Kind::Alternating),
            "lagrangian-pair" => Ok(Kind::LagrangianPair),
            "split-pair" => Ok(Kind::SplitPair),
            "symmetric" => Ok(Kind::Symmetric),
            _ => Err(Error::Unsupported(format!("unknown instance kind `{s}`"))),
        }
    }
}

/// Integers in `[-3, 3]` over the rationals, uniform residues over a prime field.
pub fn random_scalar(field: Field, rng: &mut Rand) -> Scalar {
    match field {
        Field::Rational => field.from_i64(rng.gen_range(-3..=3)),
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p) as i64),
    }
}

pub fn random_nonzero_scalar(field: Field, rng: &mut Rand) -> Scalar {
    loop {
        let c = random_scalar(field, rng);
        if !c.is_zero() {
            return c;
        }
    }
}

fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == nvars {
            cur.push(left);
            out.push(Monomial::from_exponents(cur));
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(nvars, i + 1, left - e, cur, out);
            cur.pop();
        }
    }
    if nvars == 0 {
        return if d == 0 { vec![Monomial::one(0)] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(nvars, 0, d, &mut Vec::new(), &mut out);
    out
}

/// Random form of degree `d` with every monomial present with a random coefficient.
pub fn random_form(ring: &PolyRing, d: u32, rng: &mut Rand) -> Poly {
    let terms = monomials_of_degree(ring.nvars(), d)
        .into_iter()
        .map(|m| (m, random_scalar(ring.field(), rng)))
        .collect();
    Poly::from_terms(ring.nvars(), terms)
}

/// Random polynomial of degree at most `d`.
pub fn random_poly(ring: &PolyRing, d: u32, rng: &mut Rand) -> Poly {
    (0..=d).fold(ring.zero(), |acc, k| acc.add(&random_form(ring, k, rng)))
}

pub fn random_alternating(
    ring: &PolyRing,
    n: usize,
    rng: &mut Rand,
    mut entry: impl FnMut(&mut Rand) -> Poly,
) -> AlternatingMatrix<PolyRing> {
    let mut vals = Vec::new();
    for _ in 0..n * n.saturating_sub(1) / 2 {
        vals.push(entry(rng));
    }
    let mut it = vals.into_iter();
    AlternatingMatrix::from_upper(ring.clone(), n, |_, _| it.next().unwrap())
}

pub fn random_alternating_field(field: Field, n: usize, rng: &mut Rand) -> AlternatingMatrix<Field> {
    let mut vals = Vec::new();
    for _ in 0..n * n.saturating_sub(1) / 2 {
        vals.push(random_scalar(field, rng));
    }
    let mut it = vals.into_iter();
    AlternatingMatrix::from_upper(field, n, |_, _| it.next().unwrap())
}

pub fn random_matrix_field(field: Field, rows: usize, cols: usize, rng: &mut Rand) -> Matrix<Field> {
    let mut m = Matrix::zeros(field, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, random_scalar(field, rng));
        }
    }
    m
}

pub fn random_invertible(field: Field, n: usize, rng: &mut Rand) -> Matrix<Field> {
    loop {
        let m = random_matrix_field(field, n, n, rng);
        if m.rank() == n {
            return m;
        }
    }
}

/// Swaps the coordinates `i` and `n + i` for `i` in `swap`; an isometry of the hyperbolic form.
fn swap_rows_field(m: &Matrix<Field>, swap: &[bool]) -> Matrix<Field> {
    let n = swap.len();
    let perm: Vec<usize> = (0..2 * n)
        .map(|r| match (r < n, swap[r % n]) {
            (true, true) => r + n,
            (false, true) => r - n,
            _ => r,
        })
        .collect();
    m.submatrix(&perm, &(0..m.cols()).collect::<Vec<_>>())
}

fn swap_rows_poly(m: &Matrix<PolyRing>, swap: &[bool]) -> Matrix<PolyRing> {
    let n = swap.len();
    let perm: Vec<usize> = (0..2 * n)
        .map(|r| match (r < n, swap[r % n]) {
            (true, true) => r + n,
            (false, true) => r - n,
            _ => r,
        })
        .collect();
    m.submatrix(&perm, &(0..m.cols()).collect::<Vec<_>>())
}

/// A random Lagrangian of the hyperbolic form on `field^{2n}`: a sparse graph over a
/// coordinate Lagrangian chosen by random swaps.
pub fn random_lagrangian_field(field: Field, n: usize, rng: &mut Rand) -> Matrix<Field> {
    let swap: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    let mut z = random_alternating_field(field, n, rng).into_matrix();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.5) {
                z.set(i, j, field.zero());
                z.set(j, i, field.zero());
            }
        }
    }
    swap_rows_field(&Matrix::identity(field, n).vstack(&z), &swap)
}

/// Hyperbolic upper Gram matrix `[[0, I], [0, 0]]` over a field.
pub fn hyperbolic_upper(field: Field, n: usize) -> Matrix<Field> {
    let z = Matrix::zeros(field, n, n);
    Matrix::from_blocks(&z, &Matrix::identity(field, n), &z, &z)
}

/// Two random Lagrangians with `dim(E ∩ F) ≡ n (mod 2)`.
pub fn random_even_pair_field(field: Field, n: usize, rng: &mut Rand) -> (Matrix<Field>, Matrix<Field>) {
    loop {
        let e = random_lagrangian_field(field, n, rng);
        let f = random_lagrangian_field(field, n, rng);
        let d = 2 * n - e.hstack(&f).rank();
        if (d + n).is_multiple_of(2) {
            return (e, f);
        }
    }
}

/// A generated instance.
#[derive(Clone, Debug)]
pub enum Instance {
    Alternating {
        matrix: AlternatingMatrix<PolyRing>,
    },
    LagrangianPair {
        pair: PairData,
    },
    SplitPair {
        psi: Matrix<PolyRing>,
        phi: Matrix<PolyRing>,
    },
    Symmetric {
        psi: Matrix<PolyRing>,
        phi: Matrix<PolyRing>,
        twists: Codim1Twists,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InstanceJson {
    Alternating {
        ring: RingJson,
        matrix: MatrixJson,
    },
    LagrangianPair {
        ring: RingJson,
        ambient: QuadSpaceJson,
        e: LagrangianJson,
        f: LagrangianJson,
    },
    SplitPair {
        ring: RingJson,
        psi: MatrixJson,
        phi: MatrixJson,
    },
    Symmetric {
        ring: RingJson,
        psi: MatrixJson,
        phi: MatrixJson,
        twists: Codim1Twists,
    },
}

impl Instance {
    pub fn to_json(&self) -> InstanceJson {
        match self {
            Instance::Alternating { matrix } => InstanceJson::Alternating {
                ring: ring_to_json(matrix.ring(), false),
                matrix: matrix_to_json(matrix.matrix()),
            },
            Instance::LagrangianPair { pair } => InstanceJson::LagrangianPair {
                ring: ring_to_json(pair.ring(), false),
                ambient: quadspace_to_json(pair.ambient()),
                e: lagrangian_to_json(pair.e()),
                f: lagrangian_to_json(pair.f()),
            },
            Instance::SplitPair { psi, phi } => InstanceJson::SplitPair {
                ring: ring_to_json(psi.ring(), false),
                psi: matrix_to_json(psi),
                phi: matrix_to_json(phi),
            },
            Instance::Symmetric { psi, phi, twists } => InstanceJson::Symmetric {
                ring: ring_to_json(psi.ring(), false),
                psi: matrix_to_json(psi),
                phi: matrix_to_json(phi),
                twists: twists.clone(),
            },
        }
    }

    pub fn from_json(j: &InstanceJson) -> Result<Instance> {
        Ok(match j {
            InstanceJson::Alternating { ring, matrix } => {
                let r = ring_from_json(ring)?;
                Instance::Alternating {
                    matrix: AlternatingMatrix::new(matrix_from_json(&r, matrix)?)?,
                }
            }
            InstanceJson::LagrangianPair { ring, ambient, e, f } => {
                let r = ring_from_json(ring)?;
                let v = quadspace_from_json(&r, ambient)?;
                let e = lagrangian_from_json(&v, e)?;
                let f = lagrangian_from_json(&v, f)?;
                Instance::LagrangianPair {
                    pair: PairData::from_parts(v, e, f)?,
                }
            }
            InstanceJson::SplitPair { ring, psi, phi } => {
                let r = ring_from_json(ring)?;
                Instance::SplitPair {
                    psi: matrix_from_json(&r, psi)?,
                    phi: matrix_from_json(&r, phi)?,
                }
            }
            InstanceJson::Symmetric { ring, psi, phi, twists } => {
                let r = ring_from_json(ring)?;
                Instance::Symmetric {
                    psi: matrix_from_json(&r, psi)?,
                    phi: matrix_from_json(&r, phi)?,
                    twists: twists.clone(),
                }
            }
        })
    }
}

/// Parameters of [`generate_instance`].
#[derive(Clone, Debug)]
pub struct GenSpec {
    pub kind: Kind,
    pub size: usize,
    pub degree: u32,
    pub field: Field,
    pub nvars: usize,
    pub seed: u64,
}

pub fn generate_instance(spec: &GenSpec) -> Result<Instance> {
    let ring = PolyRing::standard(spec.field, spec.nvars);
    let mut rng = rng(spec.seed);
    let n = spec.size;
    let d = spec.degree;
    match spec.kind {
        Kind::Alternating => Ok(Instance::Alternating {
            matrix: random_alternating(&ring, n, &mut rng, |g| random_form(&ring, d, g)),
        }),
        Kind::LagrangianPair => {
            let zeta = random_alternating(&ring, n, &mut rng, |g| random_form(&ring, d, g));
            let swap: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
            let e = swap_rows_poly(&Matrix::identity(ring.clone(), n).vstack(zeta.matrix()), &swap);
            let f = random_lagrangian_field(spec.field, n, &mut rng).to_poly(&ring);
            let v = QuadSpace::hyperbolic(&ring, n);
            let pair = PairData::from_parts(v.clone(), LagSub::new(&v, e)?, LagSub::new(&v, f)?)?;
            Ok(Instance::LagrangianPair { pair })
        }
        Kind::SplitPair => {
            let (psi, phi) = random_split_pair(&ring, n, d.max(1), &mut rng)?;
            Ok(Instance::SplitPair { psi, phi })
        }
        Kind::Symmetric => {
            let (psi, phi) = random_symmetric_pair(&ring, n, d.max(1), &mut rng);
            let twists = Codim1Twists {
                g: vec![-(d.max(1) as i64); n],
                h: vec![0; n],
                l: -(d.max(1) as i64),
            };
            Ok(Instance::Symmetric { psi, phi, twists })
        }
    }
}

/// `ψ = Q diag(β, I) P⁻¹` and `φ = Q^{-T} diag(I, γ) P⁻¹` with constant `Q`, `P`, an odd
/// alternating `β` of size at least three and an even alternating `γ`, both with entries
/// forms of degree `d`; `det φ` is nonzero.
pub fn random_split_pair(
    ring: &PolyRing,
    n: usize,
    d: u32,
    rng: &mut Rand,
) -> Result<(Matrix<PolyRing>, Matrix<PolyRing>)> {
    if n.is_multiple_of(2) || n < 3 {
        return Err(Error::Unsupported(format!("split pairs need odd size at least 3, got {n}")));
    }
    let field = ring.field();
    loop {
        let s = 2 * rng.gen_range(0..=(n - 3) / 2);
        let k = n - s;
        let beta = random_alternating(ring, k, rng, |g| random_form(ring, d, g));
        let gamma = random_alternating(ring, s, rng, |g| random_form(ring, d, g));
        let q = random_invertible(field, n, rng);
        let p = random_invertible(field, n, rng);
        let q_inv_t = q.inverse()?.transpose().to_poly(ring);
        let p_inv = p.inverse()?.to_poly(ring);
        let psi0 = beta.matrix().block_diag(&Matrix::identity(ring.clone(), s));
        let phi0 = Matrix::identity(ring.clone(), k).block_diag(gamma.matrix());
        let psi = q.to_poly(ring).mul(&psi0).mul(&p_inv);
        let phi = q_inv_t.mul(&phi0).mul(&p_inv);
        if !phi.det()?.is_zero() {
            return Ok((psi, phi));
        }
    }
}

/// `ψ = A S` and `φ = A^{-T}` with `S` symmetric of degree `d` and nonzero determinant.
pub fn random_symmetric_pair(ring: &PolyRing, n: usize, d: u32, rng: &mut Rand) -> (Matrix<PolyRing>, Matrix<PolyRing>) {
    let field = ring.field();
    loop {
        let mut s = Matrix::zeros(ring.clone(), n, n);
        for i in 0..n {
            for j in i..n {
                let p = random_form(ring, d, rng);
                s.set(j, i, p.clone());
                s.set(i, j, p);
            }
        }
        let a = random_invertible(field, n, rng);
        let a_inv_t = a.inverse().expect("invertible").transpose().to_poly(ring);
        let psi = a.to_poly(ring).mul(&s);
        if !psi.det().map(|x| x.is_zero()).unwrap_or(true) {
            return (psi, a_inv_t);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(kind: Kind, size: usize, field: Field, seed: u64) -> GenSpec {
        GenSpec {
            kind,
            size,
            degree: 1,
            field,
            nvars: 3,
            seed,
        }
    }

    #[test]
    fn deterministic() {
        let s = spec(Kind::Alternating, 5, Field::Rational, 42);
        let a = serde_json::to_string(&generate_instance(&s).unwrap().to_json()).unwrap();
        let b = serde_json::to_string(&generate_instance(&s).unwrap().to_json()).unwrap();
        assert_eq!(a, b);
        let c = serde_json::to_string(&generate_instance(&GenSpec { seed: 43, ..s }).unwrap().to_json()).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn kinds_round_trip() {
        for (kind, field) in [
            (Kind::Alternating, Field::Rational),
            (Kind::LagrangianPair, Field::Prime(2)),
            (Kind::SplitPair, Field::Rational),
            (Kind::Symmetric, Field::Prime(7)),
        ] {
            let inst = generate_instance(&spec(kind, 3, field, 7)).unwrap();
            let j = inst.to_json();
            let text = serde_json::to_string(&j).unwrap();
            let back: InstanceJson = serde_json::from_str(&text).unwrap();
            let again = Instance::from_json(&back).unwrap();
            assert_eq!(serde_json::to_string(&again.to_json()).unwrap(), text);
        }
        assert!(matches!("widget".parse::<Kind>(), Err(Error::Unsupported(_))));
    }

    #[test]
    fn split_pair_is_isotropic() {
        let inst = generate_instance(&spec(Kind::SplitPair, 3, Field::Rational, 1)).unwrap();
        let Instance::SplitPair { psi, phi } = inst else { unreachable!() };
        assert!(phi.transpose().mul(&psi).is_alternating());
    }

    #[test]
    fn even_pairs() {
        let mut g = rng(3);
        for field in [Field::Rational, Field::Prime(2), Field::Prime(3)] {
            for n in 1..=4 {
                let (e, f) = random_even_pair_field(field, n, &mut g);
                let u = hyperbolic_upper(field, n);
                for m in [&e, &f] {
                    assert!(m.transpose().mul(&u).mul(m).is_alternating());
                }
                assert_eq!((2 * n - e.hstack(&f).rank() + n) % 2, 0);
            }
        }
    }
}
