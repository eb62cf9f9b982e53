//! Euler characteristics of virtual sums of line bundles on projective space.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `C(a, n)` extended to all integers `a` as the polynomial `a(a-1)...(a-n+1)/n!`.
pub fn binomial_poly(a: i64, n: u32) -> BigInt {
    let mut c = BigInt::one();
    for k in 0..n as i64 {
        c = c * BigInt::from(a - k) / BigInt::from(k + 1);
    }
    c
}

/// A formal sum `Σ c_i O(d_i)` on `P^n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct VirtualSheaf {
    pub terms: Vec<(i64, i64)>,
}

impl VirtualSheaf {
    pub fn line(twist: i64) -> VirtualSheaf {
        VirtualSheaf { terms: vec![(1, twist)] }
    }

    pub fn scale(&self, c: i64) -> VirtualSheaf {
        VirtualSheaf {
            terms: self.terms.iter().map(|&(a, d)| (a * c, d)).collect(),
        }
    }

    pub fn add(&self, other: &VirtualSheaf) -> VirtualSheaf {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        VirtualSheaf { terms }
    }

    pub fn sub(&self, other: &VirtualSheaf) -> VirtualSheaf {
        self.add(&other.scale(-1))
    }

    pub fn twist(&self, k: i64) -> VirtualSheaf {
        VirtualSheaf {
            terms: self.terms.iter().map(|&(a, d)| (a, d + k)).collect(),
        }
    }

    pub fn rank(&self) -> i64 {
        self.terms.iter().map(|t| t.0).sum()
    }
}

/// `χ(F(m))` on `P^n`, using `χ(O(d)) = C(n + d, n)`.
pub fn euler_characteristic(f: &VirtualSheaf, n: u32, m: i64) -> BigInt {
    f.terms.iter().fold(BigInt::zero(), |acc, &(c, d)| {
        acc + BigInt::from(c) * binomial_poly(n as i64 + m + d, n)
    })
}

/// `Ω^p` on `P^n` from the Koszul complex of the Euler sequence:
/// `Σ_{i=0..p} (-1)^i C(n+1, p-i) O(i-p)`.
pub fn cotangent_power(n: u32, p: u32) -> VirtualSheaf {
    let terms = (0..=p)
        .map(|i| {
            let c = binomial_poly(n as i64 + 1, p - i);
            let c = i64::try_from(c).expect("small binomial");
            let sign = if i % 2 == 0 { 1 } else { -1 };
            (sign * c, i as i64 - p as i64)
        })
        .collect();
    VirtualSheaf { terms }
}
