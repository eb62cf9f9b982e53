//! JSON encodings of rings, polynomials, matrices, ideals and quadratic spaces.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::quadform::{LagSub, QuadSpace};
use crate::resolution::{ChainComplex, DiagramTwists, SymResolution};
use crate::ring::{Field, LocalRing, Matrix, Monomial, Poly, PolyRing, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldJson {
    Name(String),
    Prime {
        #[serde(rename = "Fp")]
        fp: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingJson {
    pub field: FieldJson,
    pub vars: Vec<String>,
    #[serde(default)]
    pub local: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffJson {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub c: CoeffJson,
    pub e: Vec<u32>,
}

pub type PolyJson = Vec<TermJson>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<PolyJson>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub gens: Vec<PolyJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadSpaceJson {
    pub rank: usize,
    #[serde(default)]
    pub twist: i64,
    pub gram_upper: MatrixJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LagrangianJson {
    pub gens: MatrixJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub ranks: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twists: Option<Vec<Vec<i64>>>,
    /// `maps[i - 1]` is `d_i`.
    pub maps: Vec<MatrixJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramTwistsJson {
    pub l: i64,
    pub m: i64,
    pub l_ef: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymResolutionJson {
    pub top: ComplexJson,
    pub bottom: ComplexJson,
    pub chain_map: Vec<MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twists: Option<DiagramTwistsJson>,
}

/// A matrix over the local ring as `numerator / denominator`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalMatrixJson {
    pub numerator: MatrixJson,
    pub denominator: PolyJson,
}

pub fn field_to_json(f: Field) -> FieldJson {
    match f {
        Field::Rational => FieldJson::Name("Q".into()),
        Field::Prime(p) => FieldJson::Prime { fp: p },
    }
}

pub fn field_from_json(f: &FieldJson) -> Result<Field> {
    match f {
        FieldJson::Name(s) if s == "Q" => Ok(Field::Rational),
        FieldJson::Name(s) => parse_field(s),
        FieldJson::Prime { fp } => Field::prime(*fp),
    }
}

/// `Q`, `Fp:<p>` or `F<p>`.
pub fn parse_field(s: &str) -> Result<Field> {
    let s = s.trim();
    if s == "Q" || s == "QQ" {
        return Ok(Field::Rational);
    }
    let digits = s
        .strip_prefix("Fp:")
        .or_else(|| s.strip_prefix("F"))
        .ok_or_else(|| Error::Parse(format!("unknown field `{s}`")))?;
    let p: u64 = digits.parse().map_err(|_| Error::Parse(format!("unknown field `{s}`")))?;
    Field::prime(p)
}

pub fn ring_to_json(r: &PolyRing, local: bool) -> RingJson {
    RingJson {
        field: field_to_json(r.field()),
        vars: r.var_names().to_vec(),
        local,
    }
}

pub fn ring_from_json(r: &RingJson) -> Result<PolyRing> {
    Ok(PolyRing::from_names(field_from_json(&r.field)?, r.vars.clone()))
}

fn coeff_to_json(c: &Scalar) -> CoeffJson {
    match c.to_i64() {
        Some(v) => CoeffJson::Int(v),
        None => CoeffJson::Text(c.to_string()),
    }
}

pub fn poly_to_json(p: &Poly) -> PolyJson {
    p.terms()
        .iter()
        .map(|(m, c)| TermJson {
            c: coeff_to_json(c),
            e: m.exponents().to_vec(),
        })
        .collect()
}

pub fn poly_from_json(r: &PolyRing, p: &PolyJson) -> Result<Poly> {
    let f = r.field();
    let terms = p
        .iter()
        .map(|t| {
            if t.e.len() != r.nvars() {
                return Err(Error::Parse(format!(
                    "exponent vector {:?} does not match {} variables",
                    t.e,
                    r.nvars()
                )));
            }
            let c = match &t.c {
                CoeffJson::Int(v) => f.from_i64(*v),
                CoeffJson::Text(s) => f.parse(s)?,
            };
            Ok((Monomial::from_exponents(&t.e), c))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::from_terms(r.nvars(), terms))
}

pub fn matrix_to_json(m: &Matrix<PolyRing>) -> MatrixJson {
    MatrixJson {
        rows: m.rows(),
        cols: m.cols(),
        entries: m.to_rows().iter().map(|row| row.iter().map(poly_to_json).collect()).collect(),
    }
}

pub fn matrix_from_json(r: &PolyRing, m: &MatrixJson) -> Result<Matrix<PolyRing>> {
    if m.entries.len() != m.rows || m.entries.iter().any(|row| row.len() != m.cols) {
        return Err(Error::Parse(format!("entries do not form a {}x{} matrix", m.rows, m.cols)));
    }
    let rows = m
        .entries
        .iter()
        .map(|row| row.iter().map(|p| poly_from_json(r, p)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    if m.rows == 0 {
        return Ok(Matrix::zeros(r.clone(), 0, m.cols));
    }
    Matrix::from_rows(r.clone(), rows)
}

pub fn ideal_to_json(i: &Ideal) -> IdealJson {
    IdealJson {
        gens: i.gens().iter().map(poly_to_json).collect(),
    }
}

pub fn ideal_from_json(r: &PolyRing, i: &IdealJson) -> Result<Ideal> {
    let gens = i.gens.iter().map(|p| poly_from_json(r, p)).collect::<Result<Vec<_>>>()?;
    Ideal::new(r, gens)
}

pub fn quadspace_to_json(v: &QuadSpace) -> QuadSpaceJson {
    QuadSpaceJson {
        rank: v.rank(),
        twist: v.twist(),
        gram_upper: matrix_to_json(v.gram_upper()),
    }
}

pub fn quadspace_from_json(r: &PolyRing, v: &QuadSpaceJson) -> Result<QuadSpace> {
    let g = matrix_from_json(r, &v.gram_upper)?;
    if g.rows() != v.rank {
        return Err(Error::Parse(format!("rank {} but Gram matrix is {}x{}", v.rank, g.rows(), g.cols())));
    }
    Ok(QuadSpace::new(g)?.with_twist(v.twist))
}

pub fn lagrangian_to_json(l: &LagSub) -> LagrangianJson {
    LagrangianJson {
        gens: matrix_to_json(l.gens()),
    }
}

pub fn lagrangian_from_json(v: &QuadSpace, l: &LagrangianJson) -> Result<LagSub> {
    LagSub::new(v, matrix_from_json(v.ring(), &l.gens)?)
}

pub fn complex_to_json(c: &ChainComplex) -> ComplexJson {
    ComplexJson {
        ranks: c.ranks().to_vec(),
        twists: c.twists().map(<[_]>::to_vec),
        maps: c.maps().iter().map(matrix_to_json).collect(),
    }
}

pub fn complex_from_json(r: &PolyRing, c: &ComplexJson) -> Result<ChainComplex> {
    let maps = c.maps.iter().map(|m| matrix_from_json(r, m)).collect::<Result<Vec<_>>>()?;
    match &c.twists {
        Some(t) => {
            let ranks: Vec<usize> = t.iter().map(Vec::len).collect();
            if ranks != c.ranks {
                return Err(Error::Parse("twists do not match ranks".into()));
            }
            ChainComplex::graded(r, t.clone(), maps)
        }
        None => ChainComplex::new(r, c.ranks.clone(), maps),
    }
}

pub fn sym_resolution_to_json(s: &SymResolution) -> SymResolutionJson {
    SymResolutionJson {
        top: complex_to_json(&s.top),
        bottom: complex_to_json(&s.bottom),
        chain_map: s.chain_map.iter().map(matrix_to_json).collect(),
        twists: s.twists.map(|t| DiagramTwistsJson { l: t.l, m: t.m, l_ef: t.l_ef }),
    }
}

pub fn sym_resolution_from_json(r: &PolyRing, s: &SymResolutionJson) -> Result<SymResolution> {
    Ok(SymResolution {
        top: complex_from_json(r, &s.top)?,
        bottom: complex_from_json(r, &s.bottom)?,
        chain_map: s.chain_map.iter().map(|m| matrix_from_json(r, m)).collect::<Result<_>>()?,
        twists: s.twists.as_ref().map(|t| DiagramTwists { l: t.l, m: t.m, l_ef: t.l_ef }),
    })
}

pub fn local_matrix_to_json(m: &Matrix<LocalRing>) -> LocalMatrixJson {
    let (num, den) = m.clear_denominators();
    LocalMatrixJson {
        numerator: matrix_to_json(&num),
        denominator: poly_to_json(&den),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    #[test]
    fn round_trips() {
        let r = PolyRing::new(Field::Rational, &["x", "y"]);
        let x = r.var(0);
        let half = r.constant(Field::Rational.from_ratio(1, 2).unwrap());
        let p = x.mul(&x).sub(&r.var(1).scale(&Field::Rational.from_i64(3))).add(&half);
        let j = poly_to_json(&p);
        assert_eq!(j[2].c, CoeffJson::Text("1/2".into()));
        assert_eq!(poly_from_json(&r, &j).unwrap(), p);
        let s = serde_json::to_string(&ring_to_json(&r, false)).unwrap();
        assert_eq!(s, r#"{"field":"Q","vars":["x","y"],"local":false}"#);
        let f2: RingJson = serde_json::from_str(r#"{"field":{"Fp":2},"vars":["a"]}"#).unwrap();
        assert_eq!(ring_from_json(&f2).unwrap().field(), Field::Prime(2));
        let m = Matrix::from_rows(r.clone(), vec![vec![x.clone(), r.zero()], vec![half, r.one()]]).unwrap();
        assert!(matrix_from_json(&r, &matrix_to_json(&m)).unwrap().equals(&m));
        let v = QuadSpace::hyperbolic(&r, 2);
        let back = quadspace_from_json(&r, &quadspace_to_json(&v)).unwrap();
        assert!(back.gram_upper().equals(v.gram_upper()));
        assert!(matches!(parse_field("Fp:4"), Err(Error::NotAField(_))));
        assert_eq!(parse_field("Fp:101").unwrap(), Field::Prime(101));
    }
}
