use std::path::Path;

use anyhow::{bail, Context, Result};
use lagdegen::degeneracy::{check_complement_independence, degeneracy_ideal, symmetric_degeneracy_ideal};
use lagdegen::harness::generate::{random_alternating_field, random_lagrangian_field, rng};
use lagdegen::harness::{generate_instance, replay, run_verification, FailureDump, GenSpec, Kind, VerificationReport};
use lagdegen::ideal::{Codim, Ideal};
use lagdegen::json::{
    ideal_from_json, ideal_to_json, lagrangian_to_json, local_matrix_to_json, matrix_to_json, poly_from_json,
    poly_to_json, ring_from_json, sym_resolution_to_json, complex_to_json,
};
use lagdegen::pairs::{common_complement, homotopy_involution, localize_alternating, PairData};
use lagdegen::pfaffian::{pfaffian, sub_pfaffians, submaximal_pfaffian_vector, AlternatingMatrix};
use lagdegen::quadform::LagSub;
use lagdegen::resolution::{
    be_complex, check_exactness, colon_equations, dual_diagram, euler_characteristic, homotopy_of_complement,
    homotopy_symmetrize, parity_obstruction_codim1, split_pair, standard_local_form, symmetric_codim1_resolution,
    SymResolution,
};
use lagdegen::ring::{Field, LocalRing, Matrix, Poly, PolyRing, Ring};
use rand::Rng;
use serde_json::{json, Value};

use crate::io::{
    parse_point, read_alternating, read_instance, read_json, read_pair, read_split, IdealInput, Output,
    SymplecticInput, VirtualInput,
};
use lagdegen::harness::Instance;

fn polys_json(ps: &[Poly]) -> Value {
    json!(ps.iter().map(poly_to_json).collect::<Vec<_>>())
}

fn codim_json(c: Codim) -> Value {
    match c {
        Codim::Finite(k) => json!(k),
        Codim::Unit => json!("unit"),
    }
}

fn codim_text(c: Codim) -> String {
    match c {
        Codim::Finite(k) => k.to_string(),
        Codim::Unit => "unit ideal".into(),
    }
}

fn local(a: &AlternatingMatrix<PolyRing>) -> AlternatingMatrix<LocalRing> {
    AlternatingMatrix::new(a.matrix().to_local()).expect("alternating stays alternating")
}

// pfaffian

pub fn pf_compute(input: &Path) -> Result<Output> {
    let a = read_alternating(input)?;
    let pf = pfaffian(&a)?;
    let text = format!("Pf = {}", a.ring().render(&pf));
    Ok(Output::new(json!({ "pfaffian": poly_to_json(&pf) }), text))
}

pub fn pf_subs(input: &Path, order: usize) -> Result<Output> {
    let a = read_alternating(input)?;
    let subs = sub_pfaffians(&a, order)?;
    let ring = a.ring();
    let mut text = format!("{} Pfaffians of order {order}\n", subs.len());
    for p in &subs {
        text.push_str(&format!("  {}\n", ring.render(p)));
    }
    Ok(Output::new(json!({ "order": order, "pfaffians": polys_json(&subs) }), text))
}

pub fn pf_kernel(input: &Path) -> Result<Output> {
    let a = read_alternating(input)?;
    let v = submaximal_pfaffian_vector(&a)?;
    let ring = a.ring().clone();
    let ok = a.matrix().mul(&Matrix::column(ring.clone(), v.clone())).is_zero();
    let shown: Vec<String> = v.iter().map(|p| ring.render(p)).collect();
    let text = format!("v = ({})\nA v = 0: {ok}", shown.join(", "));
    Ok(Output::new(json!({ "vector": polys_json(&v), "kernel_identity": ok }), text).with_pass(ok))
}

// pair

pub fn pair_intersect(input: &Path, point: Option<&str>) -> Result<Output> {
    let p = read_pair(input)?;
    let ring = p.ring().clone();
    let pt = match point {
        Some(s) => parse_point(ring.field(), ring.nvars(), s)?,
        None => ring.origin(),
    };
    let dim = p.intersection_dim_at(&pt);
    let basis = p.intersection_at(&pt);
    let even = (dim + p.n()) % 2 == 0;
    let text = format!(
        "dim(E ∩ F) = {dim}, rank {}, {}\nbasis:\n{}",
        p.n(),
        if even { "even" } else { "odd" },
        basis.render()
    );
    let j = json!({
        "dim": dim,
        "rank": p.n(),
        "even": even,
        "basis": matrix_to_json(&basis.to_poly(&ring)),
    });
    Ok(Output::new(j, text))
}

pub fn pair_complement(input: &Path) -> Result<Output> {
    let p = read_pair(input)?;
    let w = common_complement(&p)?;
    let n = p.n();
    let ok = w.rank_with_e == 2 * n && w.rank_with_f == 2 * n;
    let text = format!(
        "common complement M:\n{}rank [E | M] = {}, rank [F | M] = {}",
        w.m.gens().render(),
        w.rank_with_e,
        w.rank_with_f
    );
    let j = json!({
        "complement": lagrangian_to_json(&w.m),
        "rank_with_e": w.rank_with_e,
        "rank_with_f": w.rank_with_f,
    });
    Ok(Output::new(j, text).with_pass(ok))
}

pub fn pair_alternate(input: &Path) -> Result<Output> {
    let p = read_pair(input)?;
    let la = localize_alternating(&p)?;
    let ring = p.ring();
    let text = format!(
        "ζ:\n{}ι:\n{}valid where {} != 0",
        la.zeta.matrix().render(),
        la.iota.render(),
        ring.render(&la.chart)
    );
    let j = json!({
        "zeta": local_matrix_to_json(la.zeta.matrix()),
        "iota": local_matrix_to_json(&la.iota),
        "lambda": matrix_to_json(&la.lambda),
        "chart": poly_to_json(&la.chart),
        "complement": lagrangian_to_json(&la.complement),
    });
    Ok(Output::new(j, text))
}

/// A random constant alternating `h` with `1 - hζ` invertible at the origin.
fn random_homotopy(zeta: &AlternatingMatrix<PolyRing>, seed: u64) -> Result<AlternatingMatrix<PolyRing>> {
    let ring = zeta.ring();
    let mut g = rng(seed);
    let z0 = zeta.matrix().at_origin();
    for _ in 0..256 {
        let h = random_alternating_field(ring.field(), zeta.size(), &mut g);
        let u0 = Matrix::identity(ring.field(), zeta.size()).sub(&h.matrix().mul(&z0));
        if u0.rank() == zeta.size() {
            return Ok(AlternatingMatrix::new(h.matrix().to_poly(ring))?);
        }
    }
    bail!("no homotopy with 1 - hζ invertible found")
}

pub fn pair_transform(input: &Path, h: Option<&Path>, seed: u64) -> Result<Output> {
    let zeta = read_alternating(input)?;
    let h = match h {
        Some(path) => read_alternating(path)?,
        None => random_homotopy(&zeta, seed)?,
    };
    let (zl, hl) = (local(&zeta), local(&h));
    let (z1, h1) = homotopy_involution(&zl, &hl)?;
    let (z2, h2) = homotopy_involution(&z1, &h1)?;
    let involutive = z2.matrix().equals(zl.matrix()) && h2.matrix().equals(hl.matrix());
    let text = format!(
        "h:\n{}ζ':\n{}h':\n{}involution: {involutive}",
        h.matrix().render(),
        z1.matrix().render(),
        h1.matrix().render()
    );
    let j = json!({
        "h": matrix_to_json(h.matrix()),
        "zeta_prime": local_matrix_to_json(z1.matrix()),
        "h_prime": local_matrix_to_json(h1.matrix()),
        "involution": involutive,
    });
    Ok(Output::new(j, text).with_pass(involutive))
}

// degeneracy

pub fn degen_ideal(input: &Path, m: usize, samples: usize, seed: u64) -> Result<Output> {
    let p = read_pair(input)?;
    let d = degeneracy_ideal(&p, m)?;
    let ring = p.ring().clone();
    let mut g = rng(seed);
    let (mut checked, mut agree) = (0usize, 0usize);
    for _ in 0..samples {
        let pt: Vec<_> = (0..ring.nvars()).map(|_| ring.field().from_i64(g.gen_range(-3..=3))).collect();
        if let Some(ok) = d.agrees_at(&pt) {
            checked += 1;
            agree += ok as usize;
        }
    }
    let codim = d.ideal.codim();
    let mut text = format!(
        "Z_{m}: {}\norder {}, codim {}{}\nsampled points agreeing with dim(E ∩ F) >= {m}: {agree}/{checked}",
        d.ideal.render(),
        d.order,
        codim_text(codim),
        if d.padded { ", after padding" } else { "" },
    );
    let mut j = json!({
        "m": m,
        "order": d.order,
        "padded": d.padded,
        "ideal": ideal_to_json(&d.ideal),
        "codim": codim_json(codim),
        "zeta": local_matrix_to_json(d.zeta().matrix()),
        "samples": { "checked": checked, "agree": agree },
    });
    if let Some(k) = &d.kernel_line {
        let col = Matrix::column(LocalRing::new(ring.clone()), k.clone());
        j["kernel_line"] = serde_json::to_value(local_matrix_to_json(&col))?;
        text.push_str(&format!("\nkernel line:\n{}", col.render()));
    }
    Ok(Output::new(j, text).with_pass(agree == checked))
}

/// A constant Lagrangian complementary to `E` and `F` at the origin.
fn random_complement(p: &PairData, seed: u64) -> Result<LagSub> {
    let ring = p.ring();
    if !p.ambient().is_constant() {
        bail!("random complements need a constant quadratic form");
    }
    let origin = ring.origin();
    let (e0, f0) = (p.e().at(&origin), p.f().at(&origin));
    let upper = p.ambient().form_at(&origin);
    let n = p.n();
    let hyperbolic = lagdegen::harness::generate::hyperbolic_upper(ring.field(), n);
    if !upper.equals(&hyperbolic) {
        bail!("random complements are drawn in the standard hyperbolic space");
    }
    let mut g = rng(seed);
    for _ in 0..1024 {
        let cand = random_lagrangian_field(ring.field(), n, &mut g);
        if e0.hstack(&cand).rank() == 2 * n && f0.hstack(&cand).rank() == 2 * n {
            return Ok(LagSub::new(p.ambient(), cand.to_poly(ring))?);
        }
    }
    bail!("no random common complement found")
}

pub fn degen_independence(input: &Path, m: usize, seed: u64) -> Result<Output> {
    let p = read_pair(input)?;
    let m1 = common_complement(&p)?.m;
    let m2 = random_complement(&p, seed)?;
    let same = check_complement_independence(&p, m, &m1, &m2)?;
    let text = format!("M1:\n{}M2:\n{}Z_{m} independent of the complement: {same}", m1.gens().render(), m2.gens().render());
    let j = json!({
        "m": m,
        "m1": lagrangian_to_json(&m1),
        "m2": lagrangian_to_json(&m2),
        "independent": same,
    });
    Ok(Output::new(j, text).with_pass(same))
}

pub fn degen_symmetric(input: &Path, m: usize) -> Result<Output> {
    let s: SymplecticInput = read_json(input)?;
    let pair = s.load()?;
    let i = symmetric_degeneracy_ideal(&pair, m)?;
    let codim = i.codim();
    let text = format!("D_{m}: {}\ncodim {}", i.render(), codim_text(codim));
    let j = json!({
        "m": m,
        "lambda": matrix_to_json(&pair.lambda()),
        "ideal": ideal_to_json(&i),
        "codim": codim_json(codim),
    });
    Ok(Output::new(j, text))
}

// resolve

fn diagram_output(d: &SymResolution) -> Result<Output> {
    let commutes = d.commutes();
    let dual = d.twists_are_dual();
    let mut text = String::new();
    for (name, c) in [("top", &d.top), ("bottom", &d.bottom)] {
        text.push_str(&format!("{name} ranks {:?}", c.ranks()));
        if let Some(t) = c.twists() {
            text.push_str(&format!(" twists {t:?}"));
        }
        text.push('\n');
    }
    if let Some(t) = d.twists {
        text.push_str(&format!("deg L = {}, deg M = {}, deg L_EF = {}\n", t.l, t.m, t.l_ef));
    }
    text.push_str(&format!("commutes: {commutes}\ntwists dual: {dual}"));
    let j = json!({
        "resolution": sym_resolution_to_json(d),
        "commutes": commutes,
        "twists_dual": dual,
    });
    Ok(Output::new(j, text).with_pass(commutes && dual))
}

pub fn resolve_be(input: &Path) -> Result<Output> {
    let a = read_alternating(input)?;
    let c = be_complex(&a)?;
    let exact = check_exactness(&c);
    let mut text = format!("ranks {:?}\n", c.ranks());
    if let Some(t) = c.twists() {
        text.push_str(&format!("twists {t:?}\n"));
    }
    text.push_str(&format!("exact: {exact}"));
    let j = json!({ "complex": complex_to_json(&c), "exact": exact });
    Ok(Output::new(j, text).with_pass(exact))
}

pub fn resolve_dual(input: &Path) -> Result<Output> {
    let d = match read_instance(input)? {
        Instance::SplitPair { psi, phi } => dual_diagram(&psi, &phi, None, None)?,
        Instance::Symmetric { psi, phi, twists } => symmetric_codim1_resolution(&psi, &phi, Some(&twists))?,
        Instance::Alternating { matrix } => {
            let id = Matrix::identity(matrix.ring().clone(), matrix.size());
            dual_diagram(matrix.matrix(), &id, None, None)?
        }
        Instance::LagrangianPair { .. } => bail!("{}: dual needs ψ and φ", input.display()),
    };
    diagram_output(&d)
}

pub fn resolve_symmetrize(input: &Path) -> Result<Output> {
    let (psi, phi) = read_split(input)?;
    let pair = split_pair(&psi, &phi)?;
    let w = common_complement(&pair)?;
    let h = homotopy_of_complement(w.m.gens())?;
    let mu = homotopy_symmetrize(&psi, &phi, &h)?;
    let text = format!("h:\n{}μ = φ^T ψ + ψ^T h ψ:\n{}", h.matrix().render(), mu.matrix().render());
    let j = json!({ "h": matrix_to_json(h.matrix()), "mu": matrix_to_json(mu.matrix()) });
    Ok(Output::new(j, text))
}

pub fn resolve_standard_form(input: &Path) -> Result<Output> {
    let (psi, phi) = read_split(input)?;
    let (psi_l, phi_l) = (psi.to_local(), phi.to_local());
    let form = standard_local_form(&psi_l, &phi_l)?;
    let ok = form.verify(&psi_l, &phi_l);
    let text = format!(
        "β:\n{}γ:\n{}P:\n{}Q:\n{}verified: {ok}",
        form.beta.matrix().render(),
        form.gamma.matrix().render(),
        form.p.render(),
        form.q.render()
    );
    let j = json!({
        "beta": local_matrix_to_json(form.beta.matrix()),
        "gamma": local_matrix_to_json(form.gamma.matrix()),
        "p": local_matrix_to_json(&form.p),
        "q": local_matrix_to_json(&form.q),
        "verified": ok,
    });
    Ok(Output::new(j, text).with_pass(ok))
}

pub fn resolve_colon(input: &Path) -> Result<Output> {
    let (psi, phi) = read_split(input)?;
    let col = colon_equations(&psi, &phi)?;
    let local_ring = col.form.p.ring().clone();
    let text = format!(
        "(Pf(φ^T ψ) : f) = {}\nf = {}\ndet φ = a f² with a = {}",
        col.ideal.render(),
        local_ring.render(&col.f),
        local_ring.render(&col.unit)
    );
    let scalar = |e: &lagdegen::ring::LocalElt| {
        let col = Matrix::column(local_ring.clone(), vec![e.clone()]);
        local_matrix_to_json(&col)
    };
    let j = json!({
        "ideal": ideal_to_json(&col.ideal),
        "codim": codim_json(col.ideal.codim()),
        "f": scalar(&col.f),
        "unit": scalar(&col.unit),
    });
    Ok(Output::new(j, text))
}

pub fn resolve_euler(v: &VirtualInput, m: i64) -> Result<Output> {
    let chi = euler_characteristic(&v.sheaf, v.n, m);
    let text = format!("χ(F({m})) on P^{} = {chi}", v.n);
    Ok(Output::new(json!({ "n": v.n, "m": m, "chi": chi.to_string() }), text))
}

pub fn resolve_parity(v: &VirtualInput) -> Result<Output> {
    if v.l % 2 != 0 {
        let text = format!("ℓ = {} is odd; the parity condition does not apply", v.l);
        return Ok(Output::new(json!({ "n": v.n, "l": v.l, "obstructed": false }), text));
    }
    let half = -v.l / 2;
    let chi = euler_characteristic(&v.sheaf, v.n, half);
    let chi_small = i64::try_from(&chi).context("χ does not fit in 64 bits")?;
    let fires = parity_obstruction_codim1(v.n, v.l, chi_small, v.kind);
    let text = format!(
        "χ(F({half})) = {chi} on P^{}, ℓ = {}\nparity obstruction: {}",
        v.n,
        v.l,
        if fires { "fires" } else { "does not fire" }
    );
    let j = json!({
        "n": v.n,
        "l": v.l,
        "kind": v.kind,
        "chi": chi.to_string(),
        "obstructed": fires,
    });
    Ok(Output::new(j, text))
}

// ideal

fn load_ideal_input(input: &Path) -> Result<(PolyRing, IdealInput, Ideal)> {
    let j: IdealInput = read_json(input)?;
    let ring = ring_from_json(&j.ring)?;
    let i = ideal_from_json(&ring, &j.ideal)?;
    Ok((ring, j, i))
}

fn input_poly(ring: &PolyRing, j: &IdealInput) -> Result<Poly> {
    let f = j.f.as_ref().context("input needs a polynomial `f`")?;
    Ok(poly_from_json(ring, f)?)
}

pub fn ideal_member(input: &Path) -> Result<Output> {
    let (ring, j, i) = load_ideal_input(input)?;
    let f = input_poly(&ring, &j)?;
    let yes = i.contains(&f)?;
    let rem = i.reduce(&f);
    let text = format!("{} ∈ I: {yes}\nnormal form {}", ring.render(&f), ring.render(&rem));
    Ok(Output::new(json!({ "member": yes, "normal_form": poly_to_json(&rem) }), text))
}

pub fn ideal_equal(input: &Path) -> Result<Output> {
    let (ring, j, i) = load_ideal_input(input)?;
    let other = j.other.as_ref().context("input needs a second ideal `other`")?;
    let o = ideal_from_json(&ring, other)?;
    let eq = i.equals(&o)?;
    let local = eq || i.local_equals(&o)?;
    let text = format!("equal: {eq}\nequal at the origin: {local}");
    Ok(Output::new(json!({ "equal": eq, "local_equal": local }), text))
}

pub fn ideal_colon(input: &Path) -> Result<Output> {
    let (ring, j, i) = load_ideal_input(input)?;
    let f = input_poly(&ring, &j)?;
    let c = i.colon(&f)?;
    let text = format!("(I : {}) = {}", ring.render(&f), c.render());
    Ok(Output::new(json!({ "colon": ideal_to_json(&c) }), text))
}

pub fn ideal_codim(input: &Path) -> Result<Output> {
    let (_, _, i) = load_ideal_input(input)?;
    let c = i.codim();
    let gb = i.groebner().to_vec();
    let text = format!("codim {}\nGröbner basis {}", codim_text(c), Ideal::new(i.ring(), gb.clone())?.render());
    Ok(Output::new(json!({ "codim": codim_json(c), "groebner": polys_json(&gb) }), text))
}

// generate / verify

pub fn generate(kind: &str, size: usize, degree: u32, field: Field, nvars: usize, seed: u64) -> Result<Output> {
    let kind: Kind = kind.parse()?;
    let inst = generate_instance(&GenSpec {
        kind,
        size,
        degree,
        field,
        nvars,
        seed,
    })?;
    let j = serde_json::to_value(inst.to_json())?;
    let text = serde_json::to_string_pretty(&j)?;
    Ok(Output::new(j, text))
}

fn report_output(r: &VerificationReport) -> Result<Output> {
    let mut text = format!(
        "{}: {}/{} passed ({} failed) in {:.2?}\n",
        r.lemma, r.passed, r.total, r.failed, r.wall_time
    );
    for n in &r.notes {
        text.push_str(&format!("note: {n}\n"));
    }
    for f in &r.failures {
        text.push_str(&format!("case {} (seed {}): {}\n", f.index, f.case_seed, f.message));
    }
    Ok(Output::new(serde_json::to_value(r)?, text).with_pass(r.all_passed()))
}

pub fn verify(lemma: &str, count: usize, seed: u64, dump_dir: Option<&Path>) -> Result<Output> {
    let r = run_verification(lemma, count, seed)?;
    if let Some(dir) = dump_dir {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for f in &r.failures {
            let path = dir.join(format!("{}-{}.json", f.lemma, f.index));
            std::fs::write(&path, serde_json::to_string_pretty(f)?)
                .with_context(|| format!("writing {}", path.display()))?;
        }
    }
    report_output(&r)
}

pub fn replay_dump(path: &Path) -> Result<Output> {
    let d: FailureDump = read_json(path)?;
    report_output(&replay(&d)?)
}
