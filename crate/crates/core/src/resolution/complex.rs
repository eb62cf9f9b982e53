use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::ring::{Matrix, PolyRing};

/// A bounded free complex `F_k -> ... -> F_1 -> F_0` over a polynomial ring.
///
/// `maps[i - 1]` is the differential `d_i : F_i -> F_{i-1}`. When twists are
/// present, `F_i` is the sum of the `R(twists[i][j])`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    ring: PolyRing,
    ranks: Vec<usize>,
    twists: Option<Vec<Vec<i64>>>,
    maps: Vec<Matrix<PolyRing>>,
}

impl ChainComplex {
    /// Checks shapes and `d ∘ d = 0`.
    pub fn new(ring: &PolyRing, ranks: Vec<usize>, maps: Vec<Matrix<PolyRing>>) -> Result<ChainComplex> {
        if ranks.len() != maps.len() + 1 {
            return Err(Error::DimensionMismatch(format!(
                "{} modules need {} differentials, got {}",
                ranks.len(),
                ranks.len().saturating_sub(1),
                maps.len()
            )));
        }
        for (i, d) in maps.iter().enumerate() {
            if d.rows() != ranks[i] || d.cols() != ranks[i + 1] {
                return Err(Error::DimensionMismatch(format!(
                    "d_{} is {}x{}, expected {}x{}",
                    i + 1,
                    d.rows(),
                    d.cols(),
                    ranks[i],
                    ranks[i + 1]
                )));
            }
            if d.ring() != ring {
                return Err(Error::RingMismatch(format!("d_{}", i + 1)));
            }
        }
        for i in 1..maps.len() {
            if !maps[i - 1].mul(&maps[i]).is_zero() {
                return Err(Error::NotAComplex(format!("d_{} d_{} != 0", i, i + 1)));
            }
        }
        Ok(ChainComplex {
            ring: ring.clone(),
            ranks,
            twists: None,
            maps,
        })
    }

    /// A graded complex: every nonzero entry of `d_i` in position `(r, c)` must be
    /// homogeneous of degree `twists[i-1][r] - twists[i][c]`.
    pub fn graded(ring: &PolyRing, twists: Vec<Vec<i64>>, maps: Vec<Matrix<PolyRing>>) -> Result<ChainComplex> {
        let ranks = twists.iter().map(Vec::len).collect();
        let mut c = ChainComplex::new(ring, ranks, maps)?;
        for (i, d) in c.maps.iter().enumerate() {
            check_degrees(d, &twists[i], &twists[i + 1]).map_err(|e| Error::NotHomogeneous(format!("d_{}: {e}", i + 1)))?;
        }
        c.twists = Some(twists);
        Ok(c)
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    /// Index of the leftmost term.
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn twists(&self) -> Option<&[Vec<i64>]> {
        self.twists.as_deref()
    }

    pub fn maps(&self) -> &[Matrix<PolyRing>] {
        &self.maps
    }

    /// `d_i`, for `1 <= i <= length`.
    pub fn d(&self, i: usize) -> &Matrix<PolyRing> {
        &self.maps[i - 1]
    }
}

/// A map from `⊕ R(source[c])` to `⊕ R(target[r])` has homogeneous entries of degree
/// `target[r] - source[c]`.
pub(crate) fn check_degrees(
    m: &Matrix<PolyRing>,
    target: &[i64],
    source: &[i64],
) -> std::result::Result<(), String> {
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let p = m.get(r, c);
            if p.is_zero() {
                continue;
            }
            let want = target[r] - source[c];
            if want < 0 || p.homogeneous_degree() != Some(want as u32) {
                return Err(format!("entry ({r}, {c}) should have degree {want}"));
            }
        }
    }
    Ok(())
}

/// Buchsbaum–Eisenbud acyclicity criterion: with `r_k = rank F_k` and
/// `r_i = rank F_i - r_{i+1}`, the complex is exact iff every `r_i >= 0`,
/// `rank d_i = r_i` and the ideal of `r_i`-minors of `d_i` has codimension at least `i`.
pub fn check_exactness(c: &ChainComplex) -> bool {
    let k = c.length();
    let mut expected = vec![0i64; k + 2];
    for i in (1..=k).rev() {
        expected[i] = c.ranks[i] as i64 - expected[i + 1];
        if expected[i] < 0 {
            return false;
        }
    }
    if (c.ranks[0] as i64) < expected[1] {
        return false;
    }
    for i in 1..=k {
        let r = expected[i] as usize;
        let d = c.d(i);
        if d.minors(r + 1).iter().any(|m| !m.is_zero()) {
            return false;
        }
        if r == 0 {
            continue;
        }
        if !Ideal::of_minors(d, r).codim().at_least(i) {
            return false;
        }
    }
    true
}

/// The ideal of submaximal minors of the square matrix `lambda` equals `z²`.
pub fn verify_square(lambda: &Matrix<PolyRing>, z: &Ideal) -> Result<bool> {
    if !lambda.is_square() || lambda.rows() == 0 {
        return Err(Error::NonSquare {
            rows: lambda.rows(),
            cols: lambda.cols(),
        });
    }
    Ideal::of_minors(lambda, lambda.rows() - 1).equals(&z.square())
}

/// Twist integers of a symmetric diagram: `L`, the square root `M` and `L_{E,F}`,
/// with `2 deg M = deg L_{E,F} - deg L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiagramTwists {
    pub l: i64,
    pub m: i64,
    pub l_ef: i64,
}

/// A resolution, its twisted dual and the vertical chain map between them.
///
/// `chain_map[i]` maps `top` term `i` to `bottom` term `i`.
#[derive(Clone, Debug)]
pub struct SymResolution {
    pub top: ChainComplex,
    pub bottom: ChainComplex,
    pub chain_map: Vec<Matrix<PolyRing>>,
    pub twists: Option<DiagramTwists>,
}

impl SymResolution {
    /// Every square of the ladder commutes exactly.
    pub fn commutes(&self) -> bool {
        let k = self.top.length();
        if self.bottom.length() != k || self.chain_map.len() != k + 1 {
            return false;
        }
        (1..=k).all(|i| {
            let down_right = self.bottom.d(i).mul(&self.chain_map[i]);
            let right_down = self.chain_map[i - 1].mul(self.top.d(i));
            down_right.equals(&right_down)
        })
    }

    /// The bottom twists are those of the top, dualized and shifted by `L_{E,F}`.
    pub fn twists_are_dual(&self) -> bool {
        match (self.top.twists(), self.bottom.twists(), self.twists) {
            (Some(t), Some(b), Some(tw)) => {
                let k = t.len() - 1;
                (0..=k).all(|i| {
                    let mut dual: Vec<i64> = t[k - i].iter().map(|a| tw.l_ef - a).collect();
                    let mut have = b[i].clone();
                    dual.sort_unstable();
                    have.sort_unstable();
                    dual == have
                })
            }
            _ => true,
        }
    }
}
