#![allow(dead_code)]

use dunkl_coulomb::algebra::{NormalMonomial, Operator};
use dunkl_coulomb::coeff::{rat, GaussianRational, Param, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn params(dim: usize) -> Vec<Param> {
    let mut v: Vec<Param> = (1..=dim).map(Param::Mu).collect();
    v.push(Param::E);
    v.push(Param::Alpha);
    v
}

/// A few terms with small Gaussian-integer coefficients, degree <= 2.
pub fn random_scalar(rng: &mut ChaCha8Rng, dim: usize) -> Scalar {
    let ps = params(dim);
    let mut s = Scalar::zero(dim);
    for _ in 0..rng.gen_range(1..=3) {
        let im = if rng.gen_bool(0.3) { rng.gen_range(-2i64..=2) } else { 0 };
        let c = GaussianRational::new(rat(rng.gen_range(-3i64..=3), 1), rat(im, 1));
        let mut t = Scalar::constant(dim, c);
        for _ in 0..rng.gen_range(0..=2) {
            let p = ps[rng.gen_range(0..ps.len())];
            t = &t * &Scalar::param(dim, p).unwrap();
        }
        s += &t;
    }
    s
}

pub fn random_monomial(rng: &mut ChaCha8Rng, dim: usize) -> NormalMonomial {
    let x: Vec<u16> = (0..dim).map(|_| rng.gen_range(0..=2)).collect();
    let d: Vec<u16> = (0..dim).map(|_| rng.gen_range(0..=2)).collect();
    let s: Vec<bool> = (0..dim).map(|_| rng.gen_bool(0.4)).collect();
    NormalMonomial::new(&x, rng.gen_range(-2..=2), &d, &s).unwrap()
}

/// Sum of `1..=terms` random monomials with random coefficients.
pub fn random_operator(rng: &mut ChaCha8Rng, dim: usize, terms: usize) -> Operator {
    let mut op = Operator::zero(dim);
    for _ in 0..rng.gen_range(1..=terms) {
        let m = Operator::monomial(random_monomial(rng, dim));
        op = &op + &m.scalar_mul(&random_scalar(rng, dim)).unwrap();
    }
    op
}

/// At most one Dunkl factor (squared or not) per term; cheap for the oracle.
pub fn random_light_operator(rng: &mut ChaCha8Rng, dim: usize) -> Operator {
    let mut op = Operator::zero(dim);
    for _ in 0..rng.gen_range(1..=2) {
        let x: Vec<u16> = (0..dim).map(|_| rng.gen_range(0..=1)).collect();
        let mut d = vec![0u16; dim];
        if rng.gen_bool(0.7) {
            d[rng.gen_range(0..dim)] = rng.gen_range(1..=2);
        }
        let s: Vec<bool> = (0..dim).map(|_| rng.gen_bool(0.3)).collect();
        let m = NormalMonomial::new(&x, rng.gen_range(-1..=1), &d, &s).unwrap();
        op = &op + &Operator::monomial(m).scalar_mul(&random_scalar(rng, dim)).unwrap();
    }
    op
}

/// Exponents at most one and at most two terms; keeps nested brackets cheap.
pub fn small_operator(rng: &mut ChaCha8Rng, dim: usize) -> Operator {
    let mut op = Operator::zero(dim);
    for _ in 0..rng.gen_range(1..=2) {
        let x: Vec<u16> = (0..dim).map(|_| rng.gen_range(0..=1)).collect();
        let d: Vec<u16> = (0..dim).map(|_| rng.gen_range(0..=1)).collect();
        let s: Vec<bool> = (0..dim).map(|_| rng.gen_bool(0.4)).collect();
        let m = NormalMonomial::new(&x, rng.gen_range(-1..=1), &d, &s).unwrap();
        op = &op + &Operator::monomial(m).scalar_mul(&random_scalar(rng, dim)).unwrap();
    }
    op
}
