use super::*;
use crate::degeneracy::degeneracy_ideal;
use crate::error::Error;
use crate::ideal::{Codim, Ideal};
use crate::pairs::common_complement;
use crate::pfaffian::{sub_pfaffians, AlternatingMatrix};
use crate::ring::{Field, Matrix, Poly, PolyRing, Ring};
use num_bigint::BigInt;

fn koszul(r: &PolyRing) -> AlternatingMatrix<PolyRing> {
    let x = r.vars();
    let upper = [[None, Some(2), Some(1)], [None, None, Some(0)]];
    AlternatingMatrix::from_upper(r.clone(), 3, |i, j| x[upper[i][j].unwrap()].clone())
}

fn int_matrix(r: &PolyRing, rows: &[&[i64]]) -> Matrix<PolyRing> {
    Matrix::from_rows(r.clone(), rows.iter().map(|row| row.iter().map(|&v| r.from_i64(v)).collect()).collect())
        .unwrap()
}

#[test]
fn koszul_be_complex() {
    let r = PolyRing::standard(Field::Rational, 3);
    let a = koszul(&r);
    let c = be_complex(&a).unwrap();
    let t = c.twists().unwrap();
    assert_eq!(t, &[vec![0], vec![-1; 3], vec![-2; 3], vec![-3]]);
    assert!(check_exactness(&c));
    let z = Ideal::new(&r, r.vars()).unwrap();
    assert!(verify_square(a.matrix(), &z).unwrap());
    assert!(!verify_square(a.matrix(), &Ideal::new(&r, vec![r.var(0)]).unwrap()).unwrap());
}

#[test]
fn exactness_fails_without_middle_map() {
    let r = PolyRing::standard(Field::Rational, 3);
    let a = koszul(&r);
    let good = be_complex(&a).unwrap();
    let bad = ChainComplex::new(
        &r,
        vec![1, 3, 3, 1],
        vec![good.d(1).clone(), Matrix::zeros(r.clone(), 3, 3), good.d(3).clone()],
    )
    .unwrap();
    assert!(!check_exactness(&bad));
}

#[test]
fn be_complex_rejects_low_grade() {
    let r = PolyRing::standard(Field::Rational, 3);
    let x = r.vars();
    let a = AlternatingMatrix::from_upper(r.clone(), 3, |i, j| match (i, j) {
        (0, 1) => x[0].clone(),
        (0, 2) => x[1].clone(),
        _ => r.zero(),
    });
    assert!(matches!(be_complex(&a), Err(Error::GradeViolation(_))));
    let even = AlternatingMatrix::from_upper(r.clone(), 2, |_, _| x[0].clone());
    assert_eq!(be_complex(&even).unwrap_err(), Error::EvenSize(2));
}

#[test]
fn pfaffian_subscheme_diagram() {
    let r = PolyRing::standard(Field::Rational, 3);
    let a = koszul(&r);
    let id = Matrix::identity(r.clone(), 3);
    let tw = SplitTwists {
        e: vec![-2; 3],
        f: vec![-1; 3],
        l: -3,
    };
    let d = dual_diagram(a.matrix(), &id, Some(&tw), None).unwrap();
    assert_eq!(d.top.twists().unwrap(), be_complex(&a).unwrap().twists().unwrap());
    assert_eq!(d.twists, Some(DiagramTwists { l: -3, m: 0, l_ef: -3 }));
    assert!(d.commutes());
    assert!(d.twists_are_dual());
    let odd = SplitTwists { l: -2, ..tw };
    assert!(matches!(dual_diagram(a.matrix(), &id, Some(&odd), None), Err(Error::TwistParityError(_))));
    let sym = int_matrix(&r, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
    assert_eq!(dual_diagram(&sym, &id, None, None).unwrap_err(), Error::NotAlternating);
}

/// `ψ = Q diag(β, I) P⁻¹`, `φ = Q^{-T} diag(I, γ) P⁻¹` with β the Koszul matrix
/// and γ = [[0, x1 + x2], [-(x1 + x2), 0]].
fn split_instance(r: &PolyRing) -> (Matrix<PolyRing>, Matrix<PolyRing>, Poly) {
    let x = r.vars();
    let g = x[0].add(&x[1]);
    let gamma = AlternatingMatrix::from_upper(r.clone(), 2, |_, _| g.clone());
    let psi0 = koszul(r).matrix().block_diag(&Matrix::identity(r.clone(), 2));
    let phi0 = Matrix::identity(r.clone(), 3).block_diag(gamma.matrix());
    let q = int_matrix(r, &[&[1, 1, 0, 0, 0], &[0, 1, 0, 2, 0], &[0, 0, 1, 0, 0], &[1, 0, 0, 1, 1], &[0, 0, 0, 0, 1]]);
    let p = int_matrix(r, &[&[1, 0, 0, 0, 1], &[0, 1, 0, 0, 0], &[0, 1, 1, 0, 0], &[0, 0, 0, 1, 0], &[0, 0, 1, 0, 1]]);
    let p_inv = p.inverse().unwrap();
    let q_inv_t = q.inverse().unwrap().transpose();
    (q.mul(&psi0).mul(&p_inv), q_inv_t.mul(&phi0).mul(&p_inv), g)
}

#[test]
fn standard_form_recovers_blocks() {
    let r = PolyRing::standard(Field::Rational, 3);
    let (psi, phi, _) = split_instance(&r);
    let form = standard_local_form(&psi.to_local(), &phi.to_local()).unwrap();
    assert_eq!(form.beta.size(), 3);
    assert_eq!(form.gamma.size(), 2);
    assert!(form.verify(&psi.to_local(), &phi.to_local()));
    let local = form.p.ring().clone();
    assert!(local.equal(&form.det_p, &form.p.det().unwrap()));
    assert!(local.equal(&form.det_q, &form.q.det().unwrap()));
}

#[test]
fn standard_form_small_cases() {
    let r = PolyRing::standard(Field::Rational, 3);
    let a = koszul(&r);
    let id = Matrix::identity(r.clone(), 3);
    let form = standard_local_form(&a.matrix().to_local(), &id.to_local()).unwrap();
    assert!(form.p.is_identity() && form.q.is_identity());
    assert!(form.beta.matrix().equals(&a.matrix().to_local()));
    assert_eq!(form.gamma.size(), 0);

    let psi = int_matrix(&r, &[&[0, 0], &[0, 1]]);
    let phi = int_matrix(&r, &[&[1, 0], &[0, 0]]);
    let form = standard_local_form(&psi.to_local(), &phi.to_local()).unwrap();
    assert_eq!((form.beta.size(), form.gamma.size()), (1, 1));
    assert!(form.beta.matrix().is_zero() && form.gamma.matrix().is_zero());

    let bad = int_matrix(&r, &[&[1, 0], &[0, 1]]);
    assert_eq!(
        standard_local_form(&bad.to_local(), &bad.to_local()).unwrap_err(),
        Error::NotAlternating
    );
}

#[test]
fn strategies_agree_on_split_instance() {
    let r = PolyRing::standard(Field::Rational, 3);
    let (psi, phi, g) = split_instance(&r);
    let pair = split_pair(&psi, &phi).unwrap();
    let degen = degeneracy_ideal(&pair, 3).unwrap();
    let maximal = Ideal::new(&r, r.vars()).unwrap();
    assert!(degen.ideal.local_equals(&maximal).unwrap());

    let w = common_complement(&pair).unwrap();
    let h = homotopy_of_complement(w.m.gens()).unwrap();
    let mu = homotopy_symmetrize(&psi, &phi, &h).unwrap();
    let strat1 = Ideal::new(&r, sub_pfaffians(&mu, 4).unwrap()).unwrap();
    assert!(strat1.local_equals(&degen.ideal).unwrap());

    let col = colon_equations(&psi, &phi).unwrap();
    assert!(col.ideal.local_equals(&degen.ideal).unwrap());
    // f agrees with x1 + x2 up to a unit
    let ratio = col.f.numerator().div_exact(&g).unwrap();
    assert!(ratio.is_constant());
    assert_eq!(col.ideal.codim(), Codim::Finite(3));

    let d = dual_diagram(&psi, &phi, None, None).unwrap();
    assert!(d.commutes());
}

#[test]
fn homotopy_symmetrize_errors() {
    let r = PolyRing::standard(Field::Rational, 3);
    let a = koszul(&r);
    let id = Matrix::identity(r.clone(), 3);
    let zero = AlternatingMatrix::from_upper(r.clone(), 3, |_, _| r.zero());
    assert!(homotopy_symmetrize(a.matrix(), &id, &zero).unwrap().matrix().equals(a.matrix()));
    // with φ = 0, φ - hψ = -hψ is invertible exactly when h is
    let psi = int_matrix(&r, &[&[0, 1], &[-1, 0]]);
    let phi = Matrix::zeros(r.clone(), 2, 2);
    let h0 = AlternatingMatrix::from_upper(r.clone(), 2, |_, _| r.zero());
    assert!(matches!(homotopy_symmetrize(&psi, &phi, &h0), Err(Error::NotAUnit(_))));
    let h1 = AlternatingMatrix::from_upper(r.clone(), 2, |_, _| r.one());
    assert!(homotopy_symmetrize(&psi, &phi, &h1).is_ok());
}

#[test]
fn codim1_examples() {
    let r = PolyRing::standard(Field::Rational, 3);
    let x = r.vars();
    let psi = Matrix::from_rows(r.clone(), vec![vec![x[0].clone()]]).unwrap();
    let phi = Matrix::identity(r.clone(), 1);
    let tw = Codim1Twists {
        g: vec![-1],
        h: vec![0],
        l: -1,
    };
    let s = symmetric_codim1_resolution(&psi, &phi, Some(&tw)).unwrap();
    assert!(s.commutes() && s.twists_are_dual());
    assert_eq!(s.top.twists().unwrap(), &[vec![0], vec![-1]]);

    let sym = Matrix::from_rows(r.clone(), vec![vec![x[0].clone(), x[1].clone()], vec![x[1].clone(), x[2].clone()]])
        .unwrap();
    let id = Matrix::identity(r.clone(), 2);
    assert!(symmetric_codim1_resolution(&sym, &id, None).unwrap().commutes());

    let alt = AlternatingMatrix::from_upper(r.clone(), 2, |_, _| x[0].clone());
    assert_eq!(symmetric_codim1_resolution(alt.matrix(), &id, None).unwrap_err(), Error::NotSymmetric);
}

#[test]
fn euler_characteristics() {
    let o = VirtualSheaf::line(0);
    assert_eq!(euler_characteristic(&o, 3, 0), BigInt::from(1));
    for m in -3..=3 {
        let want = binomial_poly(5 + m, 5);
        assert_eq!(euler_characteristic(&o, 5, m), want);
    }
    // Koszul resolution of a point in P^3
    let point = VirtualSheaf {
        terms: vec![(1, 0), (-3, -1), (3, -2), (-1, -3)],
    };
    for m in -2..=2 {
        assert_eq!(euler_characteristic(&point, 3, m), BigInt::from(1));
    }
    // χ(Ω^p) = (-1)^p
    for p in 0..=5 {
        let sign = if p % 2 == 0 { 1 } else { -1 };
        assert_eq!(euler_characteristic(&cotangent_power(5, p), 5, 0), BigInt::from(sign));
    }
    assert_eq!(cotangent_power(5, 3).rank(), 10);
    let f = o.scale(10).sub(&cotangent_power(5, 3).twist(3));
    assert_eq!(euler_characteristic(&f, 5, -3), BigInt::from(1));
    assert!(parity_obstruction_codim1(5, 6, 1, Symmetry::Symmetric));
    assert!(!parity_obstruction_codim1(3, 6, 1, Symmetry::Symmetric));
    assert!(parity_obstruction_codim1(3, 0, -7, Symmetry::Skew));
}
