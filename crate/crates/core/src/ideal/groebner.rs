//! Buchberger's algorithm with the normal selection strategy and the product
//! and chain criteria. Polynomials are held with terms ascending in the active
//! order so that the leading term sits at the end.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::ring::{Monomial, MonomialOrder, Poly, Scalar};

#[derive(Clone, Debug)]
struct OPoly {
    terms: Vec<(Monomial, Scalar)>,
}

impl OPoly {
    fn from_poly(p: &Poly, order: MonomialOrder) -> OPoly {
        let mut terms = p.terms().to_vec();
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        OPoly { terms }
    }

    fn to_poly(&self, nvars: usize) -> Poly {
        Poly::from_terms(nvars, self.terms.clone())
    }

    fn lead(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.last()
    }

    fn make_monic(&mut self) {
        if let Some((_, c)) = self.terms.last() {
            let inv = c.inv().unwrap();
            for t in &mut self.terms {
                t.1 = t.1.mul(&inv);
            }
        }
    }

    /// `self - c * m * g`.
    fn sub_mul(&self, c: &Scalar, m: &Monomial, g: &OPoly, order: MonomialOrder) -> OPoly {
        let a = &self.terms;
        let mut out = Vec::with_capacity(a.len() + g.terms.len());
        let mut i = 0;
        for (gm, gc) in &g.terms {
            let pm = gm.mul(m);
            let pc = gc.mul(c).neg();
            while i < a.len() && order.cmp(&a[i].0, &pm) == Ordering::Less {
                out.push(a[i].clone());
                i += 1;
            }
            if i < a.len() && a[i].0 == pm {
                let s = a[i].1.add(&pc);
                if !s.is_zero() {
                    out.push((pm, s));
                }
                i += 1;
            } else {
                out.push((pm, pc));
            }
        }
        out.extend(a[i..].iter().cloned());
        OPoly { terms: out }
    }
}

/// Full reduction of `f` by a monic basis.
fn normal_form(f: &OPoly, basis: &[OPoly], order: MonomialOrder) -> OPoly {
    let mut p = f.clone();
    let mut rem: Vec<(Monomial, Scalar)> = Vec::new();
    while let Some((m, c)) = p.lead().cloned() {
        match basis.iter().find(|g| g.lead().unwrap().0.divides(&m)) {
            Some(g) => {
                let q = g.lead().unwrap().0.quotient(&m).unwrap();
                p = p.sub_mul(&c, &q, g, order);
            }
            None => {
                p.terms.pop();
                rem.push((m, c));
            }
        }
    }
    rem.reverse();
    OPoly { terms: rem }
}

fn s_poly(f: &OPoly, g: &OPoly, order: MonomialOrder) -> OPoly {
    let (fm, _) = f.lead().unwrap();
    let (gm, _) = g.lead().unwrap();
    let l = fm.lcm(gm);
    let one = f.lead().unwrap().1.field().one();
    let a = OPoly { terms: Vec::new() }.sub_mul(&one.neg(), &fm.quotient(&l).unwrap(), f, order);
    a.sub_mul(&one, &gm.quotient(&l).unwrap(), g, order)
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub(crate) fn groebner_basis(gens: &[Poly], order: MonomialOrder) -> Vec<Poly> {
    let nvars = match gens.first() {
        Some(g) => g.nvars(),
        None => return Vec::new(),
    };
    let mut basis: Vec<OPoly> = Vec::new();
    let mut alive: Vec<bool> = Vec::new();
    let mut pairs: Vec<(usize, usize, Monomial)> = Vec::new();
    // pairs already reduced or discarded by a criterion; only these may be used by the
    // chain criterion (pairs never formed with a dropped element do not count)
    let mut treated: HashSet<(usize, usize)> = HashSet::new();

    let add = |h: OPoly,
               basis: &mut Vec<OPoly>,
               alive: &mut Vec<bool>,
               pairs: &mut Vec<(usize, usize, Monomial)>,
               treated: &mut HashSet<(usize, usize)>| {
        let t = basis.len();
        let hm = h.lead().unwrap().0.clone();
        for i in 0..t {
            if !alive[i] {
                continue;
            }
            let gm = &basis[i].lead().unwrap().0;
            if gm.coprime(&hm) {
                treated.insert((i, t));
                continue;
            }
            pairs.push((i, t, gm.lcm(&hm)));
        }
        // earlier elements whose leading monomial is a multiple of the new one
        // stay for pair bookkeeping but are dropped from the final basis
        for i in 0..t {
            if alive[i] && hm.divides(&basis[i].lead().unwrap().0) {
                alive[i] = false;
            }
        }
        basis.push(h);
        alive.push(true);
    };

    for g in gens {
        if g.is_zero() {
            continue;
        }
        let mut h = normal_form(&OPoly::from_poly(g, order), &basis, order);
        if h.terms.is_empty() {
            continue;
        }
        h.make_monic();
        add(h, &mut basis, &mut alive, &mut pairs, &mut treated);
    }

    while !pairs.is_empty() {
        let mut best = 0;
        for k in 1..pairs.len() {
            let o = order.cmp(&pairs[k].2, &pairs[best].2);
            if o == Ordering::Less || (o == Ordering::Equal && (pairs[k].0, pairs[k].1) < (pairs[best].0, pairs[best].1)) {
                best = k;
            }
        }
        let (i, j, lcm) = pairs.swap_remove(best);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lead().unwrap().0.divides(&lcm)
                && treated.contains(&(i.min(k), i.max(k)))
                && treated.contains(&(j.min(k), j.max(k)))
        });
        treated.insert((i, j));
        if chain {
            continue;
        }
        let s = s_poly(&basis[i], &basis[j], order);
        let mut h = normal_form(&s, &basis, order);
        if h.terms.is_empty() {
            continue;
        }
        h.make_monic();
        if h.lead().unwrap().0.is_one() {
            let one = h.lead().unwrap().1.clone();
            return vec![Poly::constant(nvars, one)];
        }
        add(h, &mut basis, &mut alive, &mut pairs, &mut treated);
    }

    let minimal: Vec<OPoly> = basis
        .into_iter()
        .zip(alive)
        .filter_map(|(g, a)| a.then_some(g))
        .collect();
    let mut reduced = Vec::with_capacity(minimal.len());
    for (k, g) in minimal.iter().enumerate() {
        let others: Vec<OPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != k)
            .map(|(_, o)| o.clone())
            .collect();
        let lead = g.lead().unwrap().clone();
        let mut tail = OPoly {
            terms: g.terms[..g.terms.len() - 1].to_vec(),
        };
        tail = normal_form(&tail, &others, order);
        tail.terms.push(lead);
        reduced.push(tail);
    }
    reduced.sort_by(|a, b| order.cmp(&a.lead().unwrap().0, &b.lead().unwrap().0));
    reduced.iter().map(|g| g.to_poly(nvars)).collect()
}

/// Remainder of `f` modulo a Gröbner basis computed with the same order.
pub(crate) fn reduce(f: &Poly, basis: &[Poly], order: MonomialOrder) -> Poly {
    let ob: Vec<OPoly> = basis.iter().map(|g| OPoly::from_poly(g, order)).collect();
    normal_form(&OPoly::from_poly(f, order), &ob, order).to_poly(f.nvars())
}

/// Leading monomials of a basis in the given order.
pub(crate) fn leading_monomials(basis: &[Poly], order: MonomialOrder) -> Vec<Monomial> {
    basis
        .iter()
        .map(|g| {
            g.terms()
                .iter()
                .map(|t| &t.0)
                .max_by(|a, b| order.cmp(a, b))
                .unwrap()
                .clone()
        })
        .collect()
}
