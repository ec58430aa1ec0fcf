#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use ritt_core::tropical::{OrderMatrix, Perm};
use ritt_core::{DiffPoly, ExtInt, Rational, RingRef};

pub fn ring(n: usize) -> RingRef {
    let names: Vec<String> = ["x", "y", "z", "v"].iter().take(n).map(|s| s.to_string()).collect();
    ritt_core::Ring::new(&names).unwrap()
}

pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    let mut num = rng.gen_range(-5i64..=5);
    if num == 0 {
        num = 1;
    }
    Rational::new(num.into(), rng.gen_range(1i64..=3).into())
}

pub fn derivative<R: Rng>(rng: &mut R, ring: &RingRef, max_order: u32) -> DiffPoly {
    DiffPoly::derivative(ring, rng.gen_range(0..ring.len()), rng.gen_range(0..=max_order)).unwrap()
}

/// A sum of at most `max_terms` random monomials of total degree at most
/// `max_deg`.
pub fn poly<R: Rng>(rng: &mut R, ring: &RingRef, max_order: u32, max_deg: u32, max_terms: usize) -> DiffPoly {
    let mut out = DiffPoly::zero(ring);
    for _ in 0..rng.gen_range(1..=max_terms) {
        let mut term = DiffPoly::constant(ring, small_rational(rng));
        for _ in 0..rng.gen_range(0..=max_deg) {
            term = &term * &derivative(rng, ring, max_order);
        }
        out = &out + &term;
    }
    out
}

pub fn nonconstant_poly<R: Rng>(rng: &mut R, ring: &RingRef, max_order: u32, max_deg: u32, max_terms: usize) -> DiffPoly {
    loop {
        let p = poly(rng, ring, max_order, max_deg.max(1), max_terms);
        if !p.is_constant() {
            return p;
        }
    }
}

/// Linear combination of derivatives of a random subset of variables,
/// without constant term; never zero.
pub fn linear_poly<R: Rng>(rng: &mut R, ring: &RingRef, max_order: u32) -> DiffPoly {
    loop {
        let mut out = DiffPoly::zero(ring);
        for var in 0..ring.len() {
            if !rng.gen_bool(0.6) {
                continue;
            }
            let top = rng.gen_range(0..=max_order);
            for k in 0..=top {
                if k == top || rng.gen_bool(0.3) {
                    let d = DiffPoly::derivative(ring, var, k).unwrap();
                    out = &out + &d.scale(&small_rational(rng));
                }
            }
        }
        if !out.is_zero() {
            return out;
        }
    }
}

/// Polynomial whose separant in every variable it involves is a nonzero
/// constant: each top derivative appears linearly with constant coefficient
/// and every other term uses strictly lower derivatives.
pub fn unit_separant_poly<R: Rng>(rng: &mut R, ring: &RingRef, max_order: u32) -> DiffPoly {
    loop {
        let tops: Vec<Option<u32>> = (0..ring.len())
            .map(|_| rng.gen_bool(0.65).then(|| rng.gen_range(0..=max_order)))
            .collect();
        if tops.iter().all(Option::is_none) {
            continue;
        }
        let mut out = DiffPoly::zero(ring);
        for (var, top) in tops.iter().enumerate() {
            if let Some(k) = top {
                out = &out + &DiffPoly::derivative(ring, var, *k).unwrap().scale(&small_rational(rng));
            }
        }
        let lower: Vec<(usize, u32)> = tops
            .iter()
            .enumerate()
            .filter_map(|(v, t)| t.filter(|&k| k > 0).map(|k| (v, k)))
            .collect();
        if !lower.is_empty() {
            for _ in 0..rng.gen_range(0..=2) {
                let mut term = DiffPoly::constant(ring, small_rational(rng));
                for _ in 0..rng.gen_range(1..=2) {
                    let &(v, k) = lower.choose(rng).unwrap();
                    term = &term * &DiffPoly::derivative(ring, v, rng.gen_range(0..k)).unwrap();
                }
                out = &out + &term;
            }
        }
        return out;
    }
}

/// Entries in `{−∞, 0..=max}`, each −∞ with probability `p_inf`.
pub fn ext_matrix<R: Rng>(rng: &mut R, n: usize, max: i64, p_inf: f64) -> OrderMatrix {
    let entries = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    if rng.gen_bool(p_inf) {
                        ExtInt::NegInf
                    } else {
                        ExtInt::Fin(rng.gen_range(0..=max))
                    }
                })
                .collect()
        })
        .collect();
    OrderMatrix::new(entries, ritt_core::Convention::Strong).unwrap()
}

pub fn random_perm<R: Rng>(rng: &mut R, n: usize) -> Perm {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Perm::from_images(images).unwrap()
}

/// Tropical determinant by enumerating permutations with Heap's algorithm,
/// independent of the library's search.
pub fn oracle_tdet(a: &[Vec<ExtInt>]) -> ExtInt {
    let n = a.len();
    let mut p: Vec<usize> = (0..n).collect();
    let value = |p: &[usize]| p.iter().enumerate().map(|(i, &j)| a[i][j]).sum::<ExtInt>();
    let mut best = value(&p);
    let mut c = vec![0; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            best = best.max(value(&p));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}

/// Strong order matrix computed from `order_in`.
pub fn oracle_orders(system: &[DiffPoly]) -> Vec<Vec<ExtInt>> {
    let n = system[0].ring().len();
    system
        .iter()
        .map(|p| {
            (0..n)
                .map(|j| p.order_in(j).map_or(ExtInt::NegInf, |k| ExtInt::Fin(k.into())))
                .collect()
        })
        .collect()
}

/// `Σ_k c_k · g^(k)` by repeated differentiation.
pub fn apply_operator(op: &ritt_core::LinearOperator, g: &DiffPoly) -> DiffPoly {
    let mut out = DiffPoly::zero(g.ring());
    let mut dk = g.clone();
    let top = op.order().unwrap_or(0);
    for k in 0..=top {
        out = &out + &(&op.coeff(k) * &dk);
        dk = dk.derive();
    }
    out
}
