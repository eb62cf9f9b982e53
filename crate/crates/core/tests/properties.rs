use lagdegen::harness::generate::{
    random_alternating, random_alternating_field, random_form, random_matrix_field, random_poly, rng,
};
use lagdegen::ideal::Ideal;
use lagdegen::json::{poly_from_json, poly_to_json};
use lagdegen::pairs::complement_transform;
use lagdegen::pfaffian::{pfaffian, sub_pfaffians, AlternatingMatrix};
use lagdegen::resolution::{binomial_poly, euler_characteristic, VirtualSheaf};
use lagdegen::ring::{Field, Matrix, Poly, PolyRing, Ring};
use num_bigint::BigInt;
use proptest::prelude::*;

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rational),
        Just(Field::Prime(2)),
        Just(Field::Prime(3)),
        Just(Field::Prime(101)),
        Just(Field::Prime(4_294_967_291)),
    ]
}

/// Sum over perfect matchings, expanding along the first row.
fn pfaffian_by_matchings(a: &Matrix<Field>, idx: &[usize]) -> lagdegen::ring::Scalar {
    let f = *a.ring();
    if idx.is_empty() {
        return f.one();
    }
    let (i, rest) = (idx[0], &idx[1..]);
    let mut acc = f.zero();
    for (k, &j) in rest.iter().enumerate() {
        let others: Vec<usize> = rest.iter().enumerate().filter(|&(l, _)| l != k).map(|(_, &x)| x).collect();
        let term = a.get(i, j).mul(&pfaffian_by_matchings(a, &others));
        acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

fn s_poly(f: &Poly, g: &Poly) -> Poly {
    let (fm, fc) = f.leading_term().unwrap();
    let (gm, gc) = g.leading_term().unwrap();
    let l = fm.lcm(gm);
    let a = f.mul_term(&fm.quotient(&l).unwrap(), &fc.inv().unwrap());
    let b = g.mul_term(&gm.quotient(&l).unwrap(), &gc.inv().unwrap());
    a.sub(&b)
}

fn small_ideal(seed: u64, field: Field, ngens: usize) -> (PolyRing, Ideal) {
    let ring = PolyRing::standard(field, 3);
    let mut g = rng(seed);
    let gens = (0..ngens).map(|_| random_poly(&ring, 2, &mut g)).collect();
    let i = Ideal::new(&ring, gens).unwrap();
    (ring, i)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pfaffian_matches_matchings(seed in any::<u64>(), f in field(), half in 0usize..=4) {
        let n = 2 * half;
        let a = random_alternating_field(f, n, &mut rng(seed));
        let idx: Vec<usize> = (0..n).collect();
        prop_assert_eq!(pfaffian(&a).unwrap(), pfaffian_by_matchings(a.matrix(), &idx));
    }

    #[test]
    fn odd_alternating_is_singular(seed in any::<u64>(), f in field(), half in 0usize..=4) {
        let a = random_alternating_field(f, 2 * half + 1, &mut rng(seed));
        prop_assert!(a.matrix().det().unwrap().is_zero());
        prop_assert!(pfaffian(&a).is_err());
    }

    #[test]
    fn field_inverse(f in field(), v in -1000i64..1000) {
        let x = f.from_i64(v);
        if !x.is_zero() {
            prop_assert!(x.mul(&x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn gauss_inverse(seed in any::<u64>(), f in field(), n in 1usize..=6) {
        let m = random_matrix_field(f, n, n, &mut rng(seed));
        match m.inverse() {
            Ok(inv) => prop_assert!(m.mul(&inv).is_identity()),
            Err(_) => prop_assert!(m.rank() < n),
        }
    }

    #[test]
    fn groebner_basis_criterion(seed in any::<u64>(), f in field(), ngens in 1usize..=4) {
        let (_, i) = small_ideal(seed, f, ngens);
        let gb = i.groebner().to_vec();
        for g in i.gens() {
            prop_assert!(i.reduce(g).is_zero());
        }
        for a in 0..gb.len() {
            for b in a + 1..gb.len() {
                prop_assert!(i.reduce(&s_poly(&gb[a], &gb[b])).is_zero());
            }
        }
    }

    #[test]
    fn colon_and_saturation(seed in any::<u64>(), f in prop_oneof![Just(Field::Rational), Just(Field::Prime(101))]) {
        let (ring, i) = small_ideal(seed, f, 3);
        let s = random_poly(&ring, 1, &mut rng(seed ^ 1));
        prop_assume!(!s.is_zero());
        let c = i.colon(&s).unwrap();
        for g in c.gens() {
            prop_assert!(i.contains(&g.mul(&s)).unwrap());
        }
        prop_assert!(i.is_subset(&c).unwrap());
        let mut it = i.clone();
        for _ in 0..8 {
            let next = it.colon(&s).unwrap();
            if next.equals(&it).unwrap() {
                break;
            }
            it = next;
        }
        prop_assert!(it.equals(&i.saturate(&s).unwrap()).unwrap());
    }

    #[test]
    fn local_inverse(seed in any::<u64>(), n in 1usize..=3) {
        let ring = PolyRing::standard(Field::Rational, 2);
        let mut g = rng(seed);
        let m = Matrix::from_fn(ring.clone(), n, n, |i, j| {
            let p = random_poly(&ring, 1, &mut g);
            if i == j { p.add(&ring.from_i64(5)) } else { p }
        })
        .to_local();
        if let Ok(inv) = m.inverse() {
            prop_assert!(m.mul(&inv).is_identity());
        } else {
            prop_assert!(m.at_origin().rank() < n);
        }
    }

    #[test]
    fn transform_keeps_pfaffian_ideals_locally(seed in any::<u64>(), n in 2usize..=3) {
        let ring = PolyRing::standard(Field::Rational, 2);
        let mut g = rng(seed);
        let zeta = random_alternating(&ring, n, &mut g, |g| random_form(&ring, 1, g));
        let h = random_alternating(&ring, n, &mut g, |g| random_poly(&ring, 0, g));
        let zl = AlternatingMatrix::new(zeta.matrix().to_local()).unwrap();
        let hl = AlternatingMatrix::new(h.matrix().to_local()).unwrap();
        let t = complement_transform(&zl, &hl).unwrap();
        let (tn, _) = t.matrix().clear_denominators();
        let tn = AlternatingMatrix::new(tn).unwrap();
        let a = Ideal::new(&ring, sub_pfaffians(&zeta, 2).unwrap()).unwrap();
        let b = Ideal::new(&ring, sub_pfaffians(&tn, 2).unwrap()).unwrap();
        prop_assert!(a.local_equals(&b).unwrap());
    }

    #[test]
    fn euler_counts_monomials(n in 0u32..=6, d in 0i64..=6) {
        // h^0(O(d)) on P^n is the number of degree-d monomials in n + 1 variables
        let ring = PolyRing::standard(Field::Prime(3), n as usize + 1);
        let count = random_form(&ring, d as u32, &mut rng(0)).len();
        let all_nonzero = {
            let mut c = 0usize;
            let mut stack = vec![(0usize, d)];
            while let Some((i, left)) = stack.pop() {
                if i == n as usize { c += 1; continue; }
                for e in 0..=left { stack.push((i + 1, left - e)); }
            }
            c
        };
        prop_assert!(count <= all_nonzero);
        prop_assert_eq!(euler_characteristic(&VirtualSheaf::line(d), n, 0), BigInt::from(all_nonzero));
        prop_assert_eq!(binomial_poly(n as i64 + d, n), BigInt::from(all_nonzero));
    }

    #[test]
    fn poly_json_round_trip(seed in any::<u64>(), f in field()) {
        let ring = PolyRing::standard(f, 3);
        let p = random_poly(&ring, 3, &mut rng(seed));
        prop_assert_eq!(poly_from_json(&ring, &poly_to_json(&p)).unwrap(), p);
    }
}
