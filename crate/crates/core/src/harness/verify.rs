//! Randomized and exhaustive verification of the library's lemmas.

use std::time::{Duration, Instant};

use rand::{Rng, RngCore};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::generate::{
    hyperbolic_upper, random_alternating, random_alternating_field, random_even_pair_field, random_form,
    random_lagrangian_field, random_matrix_field, random_poly, random_split_pair, random_symmetric_pair, rng, Instance,
    Rand,
};
use crate::degeneracy::{check_complement_independence, degeneracy_ideal};
use crate::error::{Error, Result};
use crate::ideal::{Codim, Ideal};
use crate::json::matrix_to_json;
use crate::pairs::{
    common_complement, find_triple_without_complement, homotopy_involution, PairData,
};
use crate::pfaffian::{pfaffian, sub_pfaffians, submaximal_pfaffian_vector, AlternatingMatrix};
use crate::quadform::{graph_subspace, GraphDirection, LagSub, QuadSpace};
use crate::resolution::{
    be_complex, check_exactness, colon_equations, cotangent_power, dual_diagram, euler_characteristic,
    homotopy_of_complement, homotopy_symmetrize, parity_obstruction_codim1, split_pair, symmetric_codim1_resolution,
    verify_square, Codim1Twists, DiagramTwists, SplitTwists, Symmetry, VirtualSheaf,
};
use crate::ring::{Field, LocalRing, Matrix, PolyRing, Ring};

pub const LEMMAS: [&str; 14] = [
    "pf-square",
    "pf-congruence",
    "even-rank",
    "kernel-identity",
    "three-lagr",
    "transform-involution",
    "lambda-beta",
    "scheme-independence",
    "second-v-square",
    "strategy-equivalence",
    "quasisym",
    "parity-codim1",
    "koszul-fixture",
    "f2-counterexample",
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FailureDump {
    pub lemma: String,
    pub index: usize,
    pub case_seed: u64,
    pub message: String,
    pub instance: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub lemma: String,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<FailureDump>,
    /// Observations worth reporting that are not pass/fail conditions, deduplicated.
    pub notes: Vec<String>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Result of one case.
struct Case {
    ok: bool,
    message: String,
    instance: Value,
    notes: Vec<String>,
}

impl Case {
    fn new(instance: Value) -> Case {
        Case {
            ok: true,
            message: String::new(),
            instance,
            notes: Vec::new(),
        }
    }

    fn check(&mut self, cond: bool, what: impl Into<String>) {
        if !cond && self.ok {
            self.ok = false;
            self.message = what.into();
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

fn check_lemma(lemma: &str) -> Result<()> {
    if LEMMAS.contains(&lemma) {
        Ok(())
    } else {
        Err(Error::UnknownLemma(lemma.to_string()))
    }
}

/// Seeds of the individual cases, drawn from a generator seeded by `seed`.
pub fn case_seeds(seed: u64, count: usize) -> Vec<u64> {
    let mut g = rng(seed);
    (0..count).map(|_| g.next_u64()).collect()
}

pub fn run_verification(lemma: &str, count: usize, seed: u64) -> Result<VerificationReport> {
    check_lemma(lemma)?;
    let start = Instant::now();
    let seeds = case_seeds(seed, count);
    let mut results: Vec<(usize, u64, Case)> = seeds
        .par_iter()
        .enumerate()
        .map(|(i, &s)| (i, s, run_case(lemma, s)))
        .collect();
    results.sort_by_key(|r| r.0);
    let mut failures = Vec::new();
    // each note with the number of cases that raised it, in order of first appearance
    let mut counted: Vec<(String, usize)> = Vec::new();
    for (index, case_seed, mut case) in results {
        case.notes.sort();
        case.notes.dedup();
        for n in case.notes {
            match counted.iter_mut().find(|(m, _)| *m == n) {
                Some(entry) => entry.1 += 1,
                None => counted.push((n, 1)),
            }
        }
        if !case.ok {
            failures.push(FailureDump {
                lemma: lemma.to_string(),
                index,
                case_seed,
                message: case.message,
                instance: case.instance,
            });
        }
    }
    let notes = counted
        .into_iter()
        .map(|(n, k)| format!("{n} ({k} of {count} cases)"))
        .collect();
    Ok(VerificationReport {
        lemma: lemma.to_string(),
        total: count,
        passed: count - failures.len(),
        failed: failures.len(),
        failures,
        notes,
        wall_time: start.elapsed(),
    })
}

/// Reruns the case recorded in a failure dump.
pub fn replay(dump: &FailureDump) -> Result<VerificationReport> {
    check_lemma(&dump.lemma)?;
    let start = Instant::now();
    let case = run_case(&dump.lemma, dump.case_seed);
    let failures = if case.ok {
        Vec::new()
    } else {
        vec![FailureDump {
            lemma: dump.lemma.clone(),
            index: dump.index,
            case_seed: dump.case_seed,
            message: case.message,
            instance: case.instance,
        }]
    };
    Ok(VerificationReport {
        lemma: dump.lemma.clone(),
        total: 1,
        passed: 1 - failures.len(),
        failed: failures.len(),
        failures,
        notes: case.notes,
        wall_time: start.elapsed(),
    })
}

fn run_case(lemma: &str, seed: u64) -> Case {
    let mut g = rng(seed);
    let out = match lemma {
        "pf-square" => pf_square(&mut g),
        "pf-congruence" => pf_congruence(&mut g),
        "even-rank" => even_rank(&mut g),
        "kernel-identity" => kernel_identity(&mut g),
        "three-lagr" => three_lagr(&mut g),
        "transform-involution" => transform_involution(&mut g),
        "lambda-beta" => lambda_beta(&mut g),
        "scheme-independence" => scheme_independence(&mut g),
        "second-v-square" => second_v_square(&mut g),
        "strategy-equivalence" => strategy_equivalence(&mut g),
        "quasisym" => quasisym(&mut g),
        "parity-codim1" => parity_codim1(),
        "koszul-fixture" => koszul_fixture(),
        "f2-counterexample" => f2_counterexample(),
        _ => unreachable!("checked against the registry"),
    };
    out.unwrap_or_else(|e| Case {
        ok: false,
        message: format!("error: {e}"),
        instance: Value::Null,
        notes: Vec::new(),
    })
}

const SMALL_FIELDS: [Field; 4] = [Field::Rational, Field::Prime(2), Field::Prime(3), Field::Prime(101)];

fn pick<T: Copy>(g: &mut Rand, xs: &[T]) -> T {
    xs[g.gen_range(0..xs.len())]
}

fn constant_json(m: &Matrix<Field>) -> Value {
    let r = PolyRing::standard(*m.ring(), 0);
    json!({ "field": m.ring().to_string(), "matrix": matrix_to_json(&m.to_poly(&r)) })
}

fn pf_square(g: &mut Rand) -> Result<Case> {
    let field = pick(g, &SMALL_FIELDS);
    let n = 2 * g.gen_range(1..=5);
    let a = random_alternating_field(field, n, g);
    let mut c = Case::new(constant_json(a.matrix()));
    let pf = pfaffian(&a)?;
    c.check(pf.mul(&pf) == a.matrix().det()?, "Pf(A)^2 != det(A)");
    Ok(c)
}

fn pf_congruence(g: &mut Rand) -> Result<Case> {
    let field = pick(g, &SMALL_FIELDS);
    let n = 2 * g.gen_range(1..=4);
    let a = random_alternating_field(field, n, g);
    let p = random_matrix_field(field, n, n, g);
    let mut c = Case::new(json!({ "a": constant_json(a.matrix()), "p": constant_json(&p) }));
    let lhs = pfaffian(&a.congruence(&p)?)?;
    let rhs = p.det()?.mul(&pfaffian(&a)?);
    c.check(lhs == rhs, "Pf(P^T A P) != det(P) Pf(A)");
    Ok(c)
}

fn even_rank(g: &mut Rand) -> Result<Case> {
    let field = pick(g, &[Field::Prime(2), Field::Prime(3)]);
    let n = g.gen_range(1..=10);
    let a = random_alternating_field(field, n, g);
    let mut c = Case::new(constant_json(a.matrix()));
    c.check(a.matrix().rank().is_multiple_of(2), format!("odd rank {}", a.matrix().rank()));
    Ok(c)
}

fn kernel_identity(g: &mut Rand) -> Result<Case> {
    let field = pick(g, &SMALL_FIELDS);
    let ring = PolyRing::standard(field, 3);
    let n = pick(g, &[3, 5, 7]);
    let a = random_alternating(&ring, n, g, |g| random_form(&ring, 1, g));
    let mut c = Case::new(serde_json::to_value(Instance::Alternating { matrix: a.clone() }.to_json()).unwrap());
    let v = submaximal_pfaffian_vector(&a)?;
    let prod = a.matrix().mul(&Matrix::column(ring.clone(), v));
    c.check(prod.is_zero(), "A * Pf vector is nonzero");
    Ok(c)
}

/// `q(v) = 0` on every column and on every sum of two columns, directly from the upper Gram matrix.
fn isotropic_by_values(upper: &Matrix<Field>, m: &Matrix<Field>) -> bool {
    let q = |v: &Matrix<Field>| v.transpose().mul(upper).mul(v).get(0, 0).clone();
    let cols: Vec<Matrix<Field>> = (0..m.cols()).map(|j| Matrix::column(*m.ring(), m.col(j))).collect();
    cols.iter().all(|v| q(v).is_zero())
        && cols
            .iter()
            .enumerate()
            .all(|(i, u)| cols[i + 1..].iter().all(|v| q(&u.add(v)).is_zero()))
}

fn three_lagr(g: &mut Rand) -> Result<Case> {
    let field = pick(g, &[Field::Rational, Field::Prime(2), Field::Prime(3)]);
    let n = g.gen_range(1..=4);
    let (e, f) = random_even_pair_field(field, n, g);
    let ring = PolyRing::standard(field, 0);
    let v = QuadSpace::hyperbolic(&ring, n);
    let pair = PairData::new(v, e.to_poly(&ring), f.to_poly(&ring))?;
    let mut c = Case::new(json!({ "e": constant_json(&e), "f": constant_json(&f) }));
    let w = common_complement(&pair)?;
    let m = w.m.at(&[]);
    let upper = hyperbolic_upper(field, n);
    c.check(m.rank() == n && isotropic_by_values(&upper, &m), "complement is not Lagrangian");
    c.check(
        w.rank_with_e == 2 * n && w.rank_with_f == 2 * n,
        "witness ranks are not full",
    );
    c.check(
        e.hstack(&m).rank() == 2 * n && f.hstack(&m).rank() == 2 * n,
        "complement meets E or F",
    );
    Ok(c)
}

fn local_alternating(ring: &PolyRing, n: usize, g: &mut Rand) -> AlternatingMatrix<LocalRing> {
    let a = random_alternating(ring, n, g, |g| random_poly(ring, 1, g));
    AlternatingMatrix::new(a.matrix().to_local()).expect("alternating")
}

fn unit_at_origin(zeta: &AlternatingMatrix<LocalRing>, h: &AlternatingMatrix<LocalRing>) -> bool {
    let id = Matrix::identity(zeta.ring().clone(), zeta.size());
    let u = id.sub(&h.matrix().mul(zeta.matrix())).at_origin();
    u.rank() == zeta.size()
}

fn transform_involution(g: &mut Rand) -> Result<Case> {
    let field = pick(g, &[Field::Rational, Field::Prime(3), Field::Prime(101)]);
    let ring = PolyRing::standard(field, g.gen_range(1..=3));
    let n = g.gen_range(2..=4);
    let (zeta, h) = loop {
        let zeta = local_alternating(&ring, n, g);
        let h = local_alternating(&ring, n, g);
        if unit_at_origin(&zeta, &h) {
            break (zeta, h);
        }
    };
    let (zn, _) = zeta.matrix().clear_denominators();
    let (hn, _) = h.matrix().clear_denominators();
    let mut c = Case::new(json!({ "zeta": matrix_to_json(&zn), "h": matrix_to_json(&hn) }));
    let (z1, h1) = homotopy_involution(&zeta, &h)?;
    let (z2, h2) = homotopy_involution(&z1, &h1)?;
    c.check(z2.matrix().equals(zeta.matrix()), "f(f(ζ)) != ζ");
    c.check(h2.matrix().equals(h.matrix()), "f(f(h)) != h");
    Ok(c)
}

/// Exact equality, or equality of the extensions to the local ring at the origin.
fn ideals_agree(a: &Ideal, b: &Ideal, c: &mut Case) -> Result<bool> {
    if a.equals(b)? {
        return Ok(true);
    }
    if a.local_equals(b)? {
        c.note("some ideals agree only after localizing at the origin");
        return Ok(true);
    }
    Ok(false)
}

fn lambda_beta(g: &mut Rand) -> Result<Case> {
    let ring = PolyRing::standard(Field::Rational, g.gen_range(1..=3));
    let n = g.gen_range(2..=5);
    // ζ linear, so 1 - hζ is the identity at the origin
    let zeta = random_alternating(&ring, n, g, |g| random_form(&ring, 1, g));
    let h = random_alternating(&ring, n, g, |g| random_poly(&ring, 1, g));
    let mut c = Case::new(json!({ "zeta": matrix_to_json(zeta.matrix()), "h": matrix_to_json(h.matrix()) }));
    let z = zeta.matrix();
    let beta = AlternatingMatrix::new(z.sub(&z.mul(h.matrix()).mul(z)))?;
    for k in (2..=n).step_by(2) {
        let a = Ideal::new(&ring, sub_pfaffians(&zeta, k)?)?;
        let b = Ideal::new(&ring, sub_pfaffians(&beta, k)?)?;
        let ok = ideals_agree(&a, &b, &mut c)?;
        c.check(ok, format!("Pf_{k}(ζ) != Pf_{k}(ζ - ζhζ)"));
    }
    Ok(c)
}

fn scheme_independence(g: &mut Rand) -> Result<Case> {
    let ring = PolyRing::standard(Field::Rational, 3);
    let n = g.gen_range(3..=5);
    let zeta = random_alternating(&ring, n, g, |g| random_form(&ring, 1, g));
    let v = QuadSpace::hyperbolic(&ring, n);
    let e = graph_subspace(zeta.matrix(), GraphDirection::FromF)?;
    let f = LagSub::first_summand(&ring, n);
    let pair = PairData::from_parts(v.clone(), e, f)?;
    let pair_json = serde_json::to_value(Instance::LagrangianPair { pair: pair.clone() }.to_json()).unwrap();
    let mut c = Case::new(pair_json);
    let m1 = common_complement(&pair)?.m;
    let origin = ring.origin();
    let (e0, f0) = (pair.e().at(&origin), pair.f().at(&origin));
    let m2 = loop {
        let cand = random_lagrangian_field(Field::Rational, n, g);
        if e0.hstack(&cand).rank() == 2 * n && f0.hstack(&cand).rank() == 2 * n {
            break LagSub::new(&v, cand.to_poly(&ring))?;
        }
    };
    // ζ(0) = 0, so dim(E ∩ F) = n at the origin
    let m = if n >= 4 && g.gen_bool(0.5) { n - 2 } else { n };
    c.check(
        check_complement_independence(&pair, m, &m1, &m2)?,
        format!("Z_{m} depends on the complement"),
    );
    let direct = Ideal::new(&ring, sub_pfaffians(&zeta, n - m + 2)?)?;
    let d = degeneracy_ideal(&pair, m)?;
    c.check(d.ideal.equals(&direct)?, "degeneracy ideal of a graph differs from its Pfaffian ideal");
    Ok(c)
}

fn second_v_square(g: &mut Rand) -> Result<Case> {
    let (n, nvars) = if g.gen_bool(0.5) { (3, 3) } else { (5, 4) };
    let ring = PolyRing::standard(Field::Rational, nvars);
    let (a, z) = loop {
        let a = random_alternating(&ring, n, g, |g| random_form(&ring, 1, g));
        let z = Ideal::new(&ring, sub_pfaffians(&a, n - 1)?)?;
        if z.codim() == Codim::Finite(3) {
            break (a, z);
        }
    };
    let mut c = Case::new(serde_json::to_value(Instance::Alternating { matrix: a.clone() }.to_json()).unwrap());
    c.check(verify_square(a.matrix(), &z)?, "I_{n-1}(A) != Z^2");
    c.check(check_exactness(&be_complex(&a)?), "Buchsbaum-Eisenbud complex is not exact");
    let pair = PairData::from_parts(
        QuadSpace::hyperbolic(&ring, n),
        graph_subspace(a.matrix(), GraphDirection::FromF)?,
        LagSub::first_summand(&ring, n),
    )?;
    let d = degeneracy_ideal(&pair, 3)?;
    c.check(d.ideal.equals(&z)?, "Z_3 of the graph pair differs from the submaximal Pfaffians");
    Ok(c)
}

fn strategy_equivalence(g: &mut Rand) -> Result<Case> {
    let ring = PolyRing::standard(Field::Rational, 3);
    let n = pick(g, &[3, 5]);
    let (psi, phi) = random_split_pair(&ring, n, 1, g)?;
    let mut c = Case::new(serde_json::to_value(Instance::SplitPair { psi: psi.clone(), phi: phi.clone() }.to_json()).unwrap());
    let pair = split_pair(&psi, &phi)?;
    let degen = degeneracy_ideal(&pair, 3)?;
    let w = common_complement(&pair)?;
    let h = homotopy_of_complement(w.m.gens())?;
    let mu = homotopy_symmetrize(&psi, &phi, &h)?;
    let strat1 = Ideal::new(&ring, sub_pfaffians(&mu, n - 1)?)?;
    let col = colon_equations(&psi, &phi)?;
    let ok = ideals_agree(&degen.ideal, &strat1, &mut c)?;
    c.check(ok, "degeneracy ideal != Pf ideal of μ");
    let ok = ideals_agree(&degen.ideal, &col.ideal, &mut c)?;
    c.check(ok, "degeneracy ideal != colon ideal");
    let ok = ideals_agree(&strat1, &col.ideal, &mut c)?;
    c.check(ok, "Pf ideal of μ != colon ideal");
    // det φ = a f² with a a unit at the origin
    let f = col.f.numerator();
    let det = phi.det()?;
    let f2 = f.mul(f);
    let unit = det.div_exact(&f2);
    let a_ok = match &unit {
        Some(a) => a.constant_coeff().is_some(),
        None => {
            // f carries a unit denominator; compare through the local ring
            let l = LocalRing::new(ring.clone());
            let q = l.exact_div(&crate::ring::LocalElt::from_poly(det.clone()), &l.mul(&col.f, &col.f));
            q.map(|q| q.is_unit()).unwrap_or(false)
        }
    };
    c.check(a_ok, "det φ is not a unit times f²");
    Ok(c)
}

fn quasisym(g: &mut Rand) -> Result<Case> {
    let field = pick(g, &[Field::Rational, Field::Prime(7), Field::Prime(101)]);
    let ring = PolyRing::standard(field, 3);
    let n = g.gen_range(1..=4);
    let d = g.gen_range(1..=2u32);
    let (psi, phi) = random_symmetric_pair(&ring, n, d, g);
    let twists = Codim1Twists {
        g: vec![-(d as i64); n],
        h: vec![0; n],
        l: -(d as i64),
    };
    let inst = Instance::Symmetric {
        psi: psi.clone(),
        phi: phi.clone(),
        twists: twists.clone(),
    };
    let mut c = Case::new(serde_json::to_value(inst.to_json()).unwrap());
    let s = symmetric_codim1_resolution(&psi, &phi, Some(&twists))?;
    c.check(s.commutes(), "ladder does not commute");
    c.check(s.twists_are_dual(), "twists are not dual");
    c.check(phi.transpose().mul(&psi).is_symmetric(), "φᵀψ is not symmetric");
    c.check(s.bottom.d(1).equals(&psi.transpose()), "bottom map is not ψᵀ");
    Ok(c)
}

/// `h^{1,1}` of a smooth surface of degree `d` in `P^3`.
fn h11_surface(d: i64) -> i64 {
    d * (2 * d * d - 6 * d + 7) / 3
}

fn parity_codim1() -> Result<Case> {
    let mut c = Case::new(Value::Null);
    // rank-10 sheaf with χ(F(-3)) = 1 on P^5, ℓ = 6
    let f = VirtualSheaf::line(0).scale(10).sub(&cotangent_power(5, 3).twist(3));
    let chi = euler_characteristic(&f, 5, -3);
    c.check(chi == 1.into(), format!("χ(F(-3)) = {chi}, expected 1"));
    c.check(
        parity_obstruction_codim1(5, 6, 1, Symmetry::Symmetric),
        "obstruction does not fire for n = 5, ℓ = 6",
    );
    for d in 1..=7i64 {
        // Ω_S from the conormal and Euler sequences, twisted by ℓ/2 = 0
        let omega_s = VirtualSheaf::line(-1)
            .scale(4)
            .sub(&VirtualSheaf::line(0))
            .sub(&VirtualSheaf::line(-1 - d).scale(4))
            .add(&VirtualSheaf::line(-2 * d));
        let chi = euler_characteristic(&omega_s, 3, 0);
        c.check(chi == (-h11_surface(d)).into(), format!("χ(Ω_S) = {chi} for d = {d}"));
        let chi = i64::try_from(chi).map_err(|_| Error::Unsupported("χ out of range".into()))?;
        let fires = parity_obstruction_codim1(3, 0, chi, Symmetry::Skew);
        c.check(fires == (d % 2 == 1), format!("skew obstruction fired = {fires} for d = {d}"));
    }
    Ok(c)
}

fn koszul_fixture() -> Result<Case> {
    let ring = PolyRing::standard(Field::Rational, 3);
    let x = ring.vars();
    let a = AlternatingMatrix::from_upper(ring.clone(), 3, |i, j| match (i, j) {
        (0, 1) => x[2].clone(),
        (0, 2) => x[1].neg(),
        _ => x[0].clone(),
    });
    let mut c = Case::new(serde_json::to_value(Instance::Alternating { matrix: a.clone() }.to_json()).unwrap());
    let complex = be_complex(&a)?;
    let want = [vec![0], vec![-1; 3], vec![-2; 3], vec![-3]];
    c.check(complex.twists() == Some(&want[..]), "twists differ from (0; -1^3; -2^3; -3)");
    c.check(check_exactness(&complex), "complex is not exact");
    let m = Ideal::new(&ring, x.clone())?;
    c.check(verify_square(a.matrix(), &m)?, "minors ideal != (x1, x2, x3)^2");
    let tw = SplitTwists {
        e: vec![-2; 3],
        f: vec![-1; 3],
        l: -3,
    };
    let d = dual_diagram(a.matrix(), &Matrix::identity(ring.clone(), 3), Some(&tw), None)?;
    c.check(d.commutes() && d.twists_are_dual(), "symmetric diagram fails");
    c.check(d.twists == Some(DiagramTwists { l: -3, m: 0, l_ef: -3 }), "diagram twists");
    Ok(c)
}

fn f2_counterexample() -> Result<Case> {
    let field = Field::Prime(2);
    let upper = hyperbolic_upper(field, 2);
    let mut c = Case::new(constant_json(&upper));
    let Some(triple) = find_triple_without_complement(&upper)? else {
        c.check(false, "no triple without a common complement found");
        return Ok(c);
    };
    c.instance = json!({ "form": constant_json(&upper), "triple": triple.iter().map(constant_json).collect::<Vec<_>>() });
    // independent brute force: all 2-planes spanned by pairs of vectors of F_2^4
    let vecs: Vec<Matrix<Field>> = (1u32..16)
        .map(|b| Matrix::column(field, (0..4).map(|i| field.from_i64(((b >> i) & 1) as i64)).collect()))
        .collect();
    let mut planes: Vec<Matrix<Field>> = Vec::new();
    for i in 0..vecs.len() {
        for j in i + 1..vecs.len() {
            let m = vecs[i].hstack(&vecs[j]);
            if isotropic_by_values(&upper, &m) && !planes.iter().any(|p| p.hstack(&m).rank() == 2) {
                planes.push(m);
            }
        }
    }
    c.check(planes.len() == 6, format!("{} Lagrangians, expected 6", planes.len()));
    for (i, a) in triple.iter().enumerate() {
        c.check(isotropic_by_values(&upper, a), "triple member is not Lagrangian");
        for b in &triple[i + 1..] {
            let meet = 4 - a.hstack(b).rank();
            c.check(meet % 2 == 0, "triple is not pairwise even");
        }
    }
    let common = planes
        .iter()
        .any(|m| triple.iter().all(|u| u.hstack(m).rank() == 4));
    c.check(!common, "brute force found a common complement");
    // span{e1 + e3, e2 + e4} is not isotropic: q(1, 0, 1, 0) = 1
    let v = Matrix::column(field, [1, 0, 1, 0].iter().map(|&a| field.from_i64(a)).collect());
    let q = v.transpose().mul(&upper).mul(&v).get(0, 0).clone();
    c.note(format!("span(e1 + e3, e2 + e4) has q(1, 0, 1, 0) = {q}, so it is not Lagrangian"));
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_lemma() {
        assert_eq!(
            run_verification("nope", 1, 0).unwrap_err(),
            Error::UnknownLemma("nope".into())
        );
    }

    #[test]
    fn cheap_lemmas_pass() {
        for lemma in ["pf-square", "pf-congruence", "even-rank", "koszul-fixture", "f2-counterexample", "parity-codim1"] {
            let r = run_verification(lemma, 5, 1).unwrap();
            assert!(r.all_passed(), "{lemma}: {:?}", r.failures);
        }
    }

    #[test]
    fn reports_are_reproducible() {
        let a = serde_json::to_string(&run_verification("pf-square", 8, 9).unwrap()).unwrap();
        let b = serde_json::to_string(&run_verification("pf-square", 8, 9).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn replay_reruns_case() {
        let seeds = case_seeds(4, 3);
        let dump = FailureDump {
            lemma: "even-rank".into(),
            index: 2,
            case_seed: seeds[2],
            message: String::new(),
            instance: Value::Null,
        };
        assert!(replay(&dump).unwrap().all_passed());
    }
}
