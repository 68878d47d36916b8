//! Exact action of operators on the function space `(A(x) + B(x) r) / r^(2M)`.
//!
//! This is a second, independent route to operator equality: instead of
//! normal ordering words, operators are applied to concrete test functions
//! using the defining formula `D_i = d/dx_i + (mu_i / x_i)(1 - R_i)`.
//! Nothing here depends on the rewrite rules of [`crate::algebra`].

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smallvec::SmallVec;

use crate::algebra::{NormalMonomial, Operator};
use crate::coeff::{Bindings, GaussianRational, Scalar};
use crate::error::{check_dim, Error, Result};

type XExp = SmallVec<[u16; 4]>;

/// A polynomial in `x_1..x_d` with [`Scalar`] coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XPoly {
    dim: usize,
    terms: BTreeMap<XExp, Scalar>,
}

impl XPoly {
    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: BTreeMap::new() }
    }

    pub fn constant(s: Scalar) -> Self {
        let mut p = Self::zero(s.dim());
        p.add_term(SmallVec::from_elem(0, s.dim()), s);
        p
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(Scalar::one(dim))
    }

    /// `c * x^exps`
    pub fn monomial(exps: &[u16], c: Scalar) -> Result<Self> {
        check_dim(exps.len(), c.dim())?;
        let mut p = Self::zero(c.dim());
        p.add_term(exps.into(), c);
        Ok(p)
    }

    /// The coordinate `x_i` (1-based).
    pub fn var(dim: usize, i: usize) -> Result<Self> {
        if !(1..=dim).contains(&i) {
            return Err(Error::Index(format!("x{i} out of range for d={dim}")));
        }
        let mut e: XExp = SmallVec::from_elem(0, dim);
        e[i - 1] = 1;
        Self::monomial(&e, Scalar::one(dim))
    }

    /// `x_1^2 + ... + x_d^2`
    pub fn radius_squared(dim: usize) -> Self {
        let mut p = Self::zero(dim);
        for i in 0..dim {
            let mut e: XExp = SmallVec::from_elem(0, dim);
            e[i] = 2;
            p.add_term(e, Scalar::one(dim));
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u16], &Scalar)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().map(|&k| k as u32).sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, e: XExp, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, rhs: &XPoly) -> XPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &XPoly) -> XPoly {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> XPoly {
        XPoly { dim: self.dim, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn mul(&self, rhs: &XPoly) -> XPoly {
        let mut out = XPoly::zero(self.dim);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: XExp = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> XPoly {
        let mut out = XPoly::zero(self.dim);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * s);
        }
        out
    }

    pub fn pow(&self, n: u32) -> XPoly {
        (0..n).fold(XPoly::one(self.dim), |acc, _| acc.mul(self))
    }

    /// Multiply by `x^exps`.
    fn shift(&self, exps: &[u16]) -> XPoly {
        XPoly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(exps).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// `p(.., -x_i, ..)` for a 0-based index.
    fn reflect(&self, i: usize) -> XPoly {
        XPoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), if e[i] % 2 == 1 { -c } else { c.clone() })).collect(),
        }
    }

    /// Ordinary partial derivative for a 0-based index.
    fn partial(&self, i: usize) -> XPoly {
        let mut out = XPoly::zero(self.dim);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut ne = e.clone();
                ne[i] -= 1;
                out.add_term(ne, c * &Scalar::from_int(self.dim, e[i] as i64));
            }
        }
        out
    }

    /// Exact division by `x_i` (0-based); fails if some term lacks `x_i`.
    fn div_var(&self, i: usize) -> Result<XPoly> {
        let mut out = XPoly::zero(self.dim);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                return Err(Error::Domain(format!("polynomial is not divisible by x{}", i + 1)));
            }
            let mut ne = e.clone();
            ne[i] -= 1;
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    fn eval_at(&self, point: &[BigRational], bindings: &Bindings) -> Result<GaussianRational> {
        let mut acc = GaussianRational::zero();
        for (e, c) in &self.terms {
            let c = c.eval(bindings);
            let value = c.as_constant().ok_or_else(|| {
                let p = c.params().first().map(|p| p.plain_name()).unwrap_or_default();
                Error::Unbound(p)
            })?;
            let mut monomial = BigRational::one();
            for (x, &k) in point.iter().zip(e.iter()) {
                monomial *= num_traits::pow(x.clone(), k as usize);
            }
            acc += &(&value * &GaussianRational::real(monomial));
        }
        Ok(acc)
    }
}

/// Dunkl derivative `d p / d x_i + mu_i (p - R_i p) / x_i` (1-based `i`).
pub fn dunkl_derivative(p: &XPoly, i: usize) -> Result<XPoly> {
    let dim = p.dim;
    if !(1..=dim).contains(&i) {
        return Err(Error::Index(format!("D{i} out of range for d={dim}")));
    }
    let k = i - 1;
    let difference = p.sub(&p.reflect(k));
    // the odd part of p in x_i is always divisible by x_i
    let quotient = difference.div_var(k).expect("odd part divisible by x_i");
    Ok(p.partial(k).add(&quotient.scale(&Scalar::mu(dim, i))))
}

/// `(A + B r) / r^(2M)` with polynomial `A`, `B`.
#[derive(Clone, Debug)]
pub struct RFunction {
    pub even: XPoly,
    pub odd: XPoly,
    pub denom_exp: u32,
}

impl RFunction {
    pub fn new(even: XPoly, odd: XPoly, denom_exp: u32) -> Result<Self> {
        check_dim(even.dim, odd.dim)?;
        Ok(Self { even, odd, denom_exp })
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_poly(XPoly::zero(dim))
    }

    pub fn from_poly(p: XPoly) -> Self {
        let dim = p.dim;
        Self { even: p, odd: XPoly::zero(dim), denom_exp: 0 }
    }

    /// The function `r^k`.
    pub fn r_pow(dim: usize, k: i32) -> Self {
        RFunction::from_poly(XPoly::one(dim)).times_r_pow(k)
    }

    pub fn dim(&self) -> usize {
        self.even.dim
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    /// Convert a pure-function operator (no `D`, no `R`) into a test function.
    pub fn from_operator(op: &Operator) -> Result<Self> {
        if !op.is_function() {
            return Err(Error::Usage("test functions may only contain x_i, r and parameters".into()));
        }
        let dim = op.dim();
        let mut acc = RFunction::zero(dim);
        for (m, c) in op.terms() {
            let p = XPoly::monomial(m.x_exp(), c.clone())?;
            acc = acc.add(&RFunction::from_poly(p).times_r_pow(m.r_pow()));
        }
        Ok(acc)
    }

    /// The same function as an operator `sum c x^a r^k`.
    pub fn to_operator(&self) -> Operator {
        let dim = self.dim();
        let mut out = Operator::zero(dim);
        let base = -2 * self.denom_exp as i32;
        for (poly, shift) in [(&self.even, 0), (&self.odd, 1)] {
            for (e, c) in poly.terms() {
                let m = NormalMonomial::new(e, base + shift, &vec![0; dim], &vec![false; dim])
                    .expect("consistent dimension");
                out = &out + &Operator::monomial(m).scalar_mul(c).expect("same dimension");
            }
        }
        out
    }

    /// Rewrite with denominator exponent `m >= self.denom_exp`.
    fn with_denom(&self, m: u32) -> RFunction {
        debug_assert!(m >= self.denom_exp);
        let lift = XPoly::radius_squared(self.dim()).pow(m - self.denom_exp);
        RFunction { even: self.even.mul(&lift), odd: self.odd.mul(&lift), denom_exp: m }
    }

    pub fn add(&self, rhs: &RFunction) -> RFunction {
        let m = self.denom_exp.max(rhs.denom_exp);
        let (a, b) = (self.with_denom(m), rhs.with_denom(m));
        RFunction { even: a.even.add(&b.even), odd: a.odd.add(&b.odd), denom_exp: m }
    }

    pub fn scale(&self, s: &Scalar) -> RFunction {
        RFunction { even: self.even.scale(s), odd: self.odd.scale(s), denom_exp: self.denom_exp }
    }

    fn times_x(&self, exps: &[u16]) -> RFunction {
        RFunction { even: self.even.shift(exps), odd: self.odd.shift(exps), denom_exp: self.denom_exp }
    }

    /// Multiply by `r^k`, using `r^2 = sum x_i^2` to stay in canonical slots.
    pub fn times_r_pow(&self, k: i32) -> RFunction {
        let dim = self.dim();
        let s = XPoly::radius_squared(dim);
        let mut f = self.clone();
        if k.rem_euclid(2) == 1 {
            // r (A + B r) = B r^2 + A r
            f = RFunction { even: f.odd.mul(&s), odd: f.even, denom_exp: f.denom_exp };
        }
        let half = k.div_euclid(2);
        if half >= 0 {
            let lift = s.pow(half as u32);
            RFunction { even: f.even.mul(&lift), odd: f.odd.mul(&lift), denom_exp: f.denom_exp }
        } else {
            RFunction { denom_exp: f.denom_exp + half.unsigned_abs(), ..f }
        }
    }

    /// `R_i f` for a 0-based index.
    fn reflect(&self, i: usize) -> RFunction {
        RFunction { even: self.even.reflect(i), odd: self.odd.reflect(i), denom_exp: self.denom_exp }
    }

    /// `D_i f` for a 0-based index, by the product rule with
    /// `d r^k / d x_i = k x_i r^(k-2)`.
    fn dunkl(&self, i: usize) -> RFunction {
        let dim = self.dim();
        let s = XPoly::radius_squared(dim);
        let mut xi: XExp = SmallVec::from_elem(0, dim);
        xi[i] = 1;
        let m = self.denom_exp as i64;
        let da = dunkl_derivative(&self.even, i + 1).expect("index in range");
        let db = dunkl_derivative(&self.odd, i + 1).expect("index in range");
        let even = da.mul(&s).add(&self.even.shift(&xi).scale(&Scalar::from_int(dim, -2 * m)));
        let odd = db.mul(&s).add(&self.odd.shift(&xi).scale(&Scalar::from_int(dim, 1 - 2 * m)));
        RFunction { even, odd, denom_exp: self.denom_exp + 1 }
    }

    /// Value at a point whose squared norm is a rational square.
    pub fn eval_at(&self, point: &[BigRational], bindings: &Bindings) -> Result<GaussianRational> {
        check_dim(self.dim(), point.len())?;
        let s: BigRational = point.iter().map(|x| x * x).sum();
        if s.is_zero() {
            return Err(Error::Domain("functions are not evaluated at the origin".into()));
        }
        let r =
            rational_sqrt(&s).ok_or_else(|| Error::Precondition(format!("|x|^2 = {s} is not a rational square")))?;
        let a = self.even.eval_at(point, bindings)?;
        let b = self.odd.eval_at(point, bindings)?;
        let denom = num_traits::pow(s, self.denom_exp as usize);
        let value = &a + &(&b * &GaussianRational::real(r));
        Ok(&value * &GaussianRational::real(denom.recip()))
    }
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let exact = |n: &BigInt| -> Option<BigInt> {
        let s = n.sqrt();
        (&s * &s == *n).then_some(s)
    };
    Some(BigRational::new(exact(q.numer())?, exact(q.denom())?))
}

/// Cross-multiplied equality `A_f S^(M_g) = A_g S^(M_f)` and likewise for `B`.
pub fn func_equal(f: &RFunction, g: &RFunction) -> Result<bool> {
    check_dim(f.dim(), g.dim())?;
    let m = f.denom_exp.max(g.denom_exp);
    let (f, g) = (f.with_denom(m), g.with_denom(m));
    Ok(f.even == g.even && f.odd == g.odd)
}

/// Exact image of `f` under `op`.
pub fn apply(op: &Operator, f: &RFunction) -> Result<RFunction> {
    check_dim(op.dim(), f.dim())?;
    let dim = op.dim();
    // D^b R^s f, filled from smaller derivative words
    let mut images: HashMap<(Vec<u16>, Vec<bool>), RFunction> = HashMap::new();
    let mut acc = RFunction::zero(dim);
    for (m, c) in op.terms() {
        let g = derivative_image(&mut images, f, m.d_exp(), m.refl_mask());
        let h = g.times_r_pow(m.r_pow()).times_x(m.x_exp()).scale(c);
        acc = acc.add(&h);
    }
    Ok(acc)
}

fn derivative_image(
    cache: &mut HashMap<(Vec<u16>, Vec<bool>), RFunction>,
    f: &RFunction,
    d_exp: &[u16],
    mask: &[bool],
) -> RFunction {
    let key = (d_exp.to_vec(), mask.to_vec());
    if let Some(g) = cache.get(&key) {
        return g.clone();
    }
    let g = match d_exp.iter().position(|&e| e > 0) {
        Some(j) => {
            let mut lower = d_exp.to_vec();
            lower[j] -= 1;
            derivative_image(cache, f, &lower, mask).dunkl(j)
        }
        None => mask.iter().enumerate().filter(|(_, &s)| s).fold(f.clone(), |g, (i, _)| g.reflect(i)),
    };
    cache.insert(key, g.clone());
    g
}

/// Deterministic pseudo-random test functions: degree at most 4, `M <= 2`,
/// small integer coefficients. Every fourth function (starting at the second)
/// is odd in `x_1`.
pub fn random_basis(dim: usize, count: usize, seed: u64) -> Vec<RFunction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((dim as u64) << 32));
    (0..count)
        .map(|k| {
            let odd_x1 = k % 4 == 1;
            loop {
                let f = RFunction {
                    even: random_poly(&mut rng, dim, odd_x1),
                    odd: random_poly(&mut rng, dim, odd_x1),
                    denom_exp: rng.gen_range(0..=2),
                };
                if !f.is_zero() {
                    break f;
                }
            }
        })
        .collect()
}

fn random_poly(rng: &mut ChaCha8Rng, dim: usize, odd_x1: bool) -> XPoly {
    let mut p = XPoly::zero(dim);
    let n_terms = rng.gen_range(0..=3);
    for _ in 0..n_terms {
        let mut e: XExp = SmallVec::from_elem(0, dim);
        let mut budget = rng.gen_range(0..=4u16);
        if odd_x1 {
            e[0] = 1;
            budget = budget.saturating_sub(1);
        }
        while budget > 0 {
            let i = rng.gen_range(0..dim);
            let step = if odd_x1 && i == 0 { 2 } else { 1 };
            if step > budget {
                break;
            }
            e[i] += step;
            budget -= step;
        }
        let mut c = 0;
        while c == 0 {
            c = rng.gen_range(-3..=3);
        }
        p.add_term(e, Scalar::from_int(dim, c));
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    fn x(dim: usize, i: usize) -> XPoly {
        XPoly::var(dim, i).unwrap()
    }

    #[test]
    fn dunkl_derivative_examples() {
        let d1x1 = dunkl_derivative(&x(1, 1), 1).unwrap();
        let expect = &Scalar::one(1) + &(&Scalar::from_int(1, 2) * &Scalar::mu(1, 1));
        assert_eq!(d1x1, XPoly::constant(expect));

        let p = x(2, 1).pow(2).mul(&x(2, 2));
        let expect = x(2, 1).mul(&x(2, 2)).scale(&Scalar::from_int(2, 2));
        assert_eq!(dunkl_derivative(&p, 1).unwrap(), expect);

        assert!(dunkl_derivative(&x(2, 2), 1).unwrap().is_zero());
        assert!(dunkl_derivative(&x(2, 2), 3).is_err());
    }

    #[test]
    fn apply_examples() {
        let d1 = Operator::dunkl(2, 1).unwrap();
        let img = apply(&d1, &RFunction::r_pow(2, -1)).unwrap();
        let expect = RFunction::from_poly(x(2, 1).neg()).times_r_pow(-3);
        assert!(func_equal(&img, &expect).unwrap());

        let r1 = Operator::reflection(1, 1).unwrap();
        let img = apply(&r1, &RFunction::from_poly(x(1, 1))).unwrap();
        assert!(func_equal(&img, &RFunction::from_poly(x(1, 1).neg())).unwrap());

        let img = apply(&Operator::dunkl(1, 1).unwrap(), &RFunction::from_poly(x(1, 1))).unwrap();
        let expect = &Scalar::one(1) + &(&Scalar::from_int(1, 2) * &Scalar::mu(1, 1));
        assert!(func_equal(&img, &RFunction::from_poly(XPoly::constant(expect))).unwrap());
    }

    #[test]
    fn equality_examples() {
        let s = XPoly::radius_squared(2);
        let f = RFunction::new(s.clone(), XPoly::zero(2), 1).unwrap();
        assert!(func_equal(&f, &RFunction::from_poly(XPoly::one(2))).unwrap());

        let r_rinv = RFunction::r_pow(2, 1).times_r_pow(-1);
        assert!(func_equal(&r_rinv, &RFunction::from_poly(XPoly::one(2))).unwrap());

        let g = RFunction::new(x(2, 1).mul(&s), XPoly::zero(2), 1).unwrap();
        assert!(func_equal(&g, &RFunction::from_poly(x(2, 1))).unwrap());

        assert!(!func_equal(&RFunction::r_pow(2, 1), &RFunction::from_poly(XPoly::one(2))).unwrap());
    }

    #[test]
    fn eval_examples() {
        let pt = [rat(3, 1), rat(4, 1)];
        let b = Bindings::new();
        let v = RFunction::r_pow(2, -1).eval_at(&pt, &b).unwrap();
        assert_eq!(v, GaussianRational::real(rat(1, 5)));
        let f = RFunction::from_poly(x(2, 1)).times_r_pow(-1);
        assert_eq!(f.eval_at(&pt, &b).unwrap(), GaussianRational::real(rat(3, 5)));
        let one = RFunction::from_poly(XPoly::one(2));
        assert_eq!(one.eval_at(&[rat(5, 13), rat(12, 13)], &b).unwrap(), GaussianRational::from_int(1));
    }

    #[test]
    fn eval_errors() {
        let b = Bindings::new();
        let f = RFunction::r_pow(2, -1);
        assert!(matches!(f.eval_at(&[rat(1, 1), rat(1, 1)], &b), Err(Error::Precondition(_))));
        assert!(matches!(f.eval_at(&[rat(0, 1), rat(0, 1)], &b), Err(Error::Domain(_))));
        let g = RFunction::from_poly(XPoly::constant(Scalar::mu(2, 1)));
        assert!(matches!(g.eval_at(&[rat(3, 1), rat(4, 1)], &b), Err(Error::Unbound(_))));
    }

    #[test]
    fn random_basis_is_deterministic_and_mixed() {
        let a = random_basis(1, 1, 1);
        let b = random_basis(1, 1, 1);
        assert_eq!(a[0].even, b[0].even);
        assert_eq!(a[0].odd, b[0].odd);
        assert_eq!(a[0].denom_exp, b[0].denom_exp);

        let basis = random_basis(3, 8, 7);
        let odd_in_x1 = |f: &RFunction| {
            let g = f.reflect(0).scale(&Scalar::from_int(3, -1));
            func_equal(f, &g).unwrap()
        };
        assert!(basis.iter().any(odd_in_x1));
        for f in &basis {
            assert!(f.denom_exp <= 2);
            assert!(f.even.degree() <= 4 && f.odd.degree() <= 4);
            assert!(!f.is_zero());
        }
    }

    #[test]
    fn reflection_is_involution() {
        for f in random_basis(2, 6, 3) {
            let once = apply(&Operator::reflection(2, 2).unwrap(), &f).unwrap();
            let twice = apply(&Operator::reflection(2, 2).unwrap(), &once).unwrap();
            assert!(func_equal(&twice, &f).unwrap());
        }
    }

    #[test]
    fn operator_round_trip() {
        for f in random_basis(2, 4, 11) {
            let back = RFunction::from_operator(&f.to_operator()).unwrap();
            assert!(func_equal(&back, &f).unwrap());
        }
        assert!(RFunction::from_operator(&Operator::dunkl(2, 1).unwrap()).is_err());
    }
}
