//! The operator algebra generated by `x_i`, `r^k`, `D_i` and `R_i`.
//!
//! Every operator is kept as a [`Scalar`]-linear combination of normal-ordered
//! words `x^a r^k D^b R^s`. Products are brought back to that form by the
//! rewrite rules of the Dunkl relations (see [`product`]).
//!
//! The function prefix `x^a r^k` lives in the ring of functions on
//! `R^d \ {0}`, where `r^2 = x_1^2 + ... + x_d^2`. Canonical forms use the
//! reduction `x_d^2 -> r^2 - x_1^2 - ... - x_{d-1}^2`, so the exponent of `x_d`
//! in a stored monomial is always 0 or 1. This makes the normal form unique in
//! the quotient algebra.

mod adjoint;
mod product;
mod render;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use smallvec::SmallVec;

use crate::coeff::{Bindings, GaussianRational, Scalar};
use crate::error::{check_dim, Error, Result};

pub use product::{mono_mul, mono_mul_counted, ProductStats};
pub use render::Format;

pub(crate) type Exps = SmallVec<[u16; 4]>;
pub(crate) type Mask = SmallVec<[bool; 4]>;

/// The word `x1^a1..xd^ad * r^k * D1^b1..Dd^bd * R1^s1..Rd^sd`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct NormalMonomial {
    pub(crate) x: Exps,
    pub(crate) r: i32,
    pub(crate) d: Exps,
    pub(crate) refl: Mask,
}

impl NormalMonomial {
    pub fn identity(dim: usize) -> Self {
        Self {
            x: SmallVec::from_elem(0, dim),
            r: 0,
            d: SmallVec::from_elem(0, dim),
            refl: SmallVec::from_elem(false, dim),
        }
    }

    pub fn new(x_exp: &[u16], r_pow: i32, d_exp: &[u16], refl: &[bool]) -> Result<Self> {
        let dim = x_exp.len();
        check_dim(dim, d_exp.len())?;
        check_dim(dim, refl.len())?;
        if dim == 0 {
            return Err(Error::Usage("dimension must be at least 1".into()));
        }
        Ok(Self { x: x_exp.into(), r: r_pow, d: d_exp.into(), refl: refl.into() })
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    pub fn x_exp(&self) -> &[u16] {
        &self.x
    }

    pub fn r_pow(&self) -> i32 {
        self.r
    }

    pub fn d_exp(&self) -> &[u16] {
        &self.d
    }

    pub fn refl_mask(&self) -> &[bool] {
        &self.refl
    }

    /// Scaling weight `|a| + k - |b|`.
    pub fn weight(&self) -> i64 {
        let a: i64 = self.x.iter().map(|&e| e as i64).sum();
        let b: i64 = self.d.iter().map(|&e| e as i64).sum();
        a + self.r as i64 - b
    }

    pub fn d_degree(&self) -> u32 {
        self.d.iter().map(|&e| e as u32).sum()
    }

    /// True if the word is a pure function `x^a r^k`.
    pub fn is_function(&self) -> bool {
        self.d.iter().all(|&e| e == 0) && self.refl.iter().all(|&s| !s)
    }

    fn is_identity(&self) -> bool {
        self.r == 0 && self.x.iter().all(|&e| e == 0) && self.is_function()
    }

    /// Whether the monomial is already reduced modulo `r^2 = sum x_i^2`.
    fn is_reduced(&self) -> bool {
        self.x.last().is_none_or(|&e| e <= 1)
    }
}

/// A finite [`Scalar`]-linear combination of normal monomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Operator {
    dim: usize,
    terms: BTreeMap<NormalMonomial, Scalar>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpKind {
    Add,
    Sub,
    Mul,
}

impl Operator {
    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize) -> Self {
        Self::scalar(Scalar::one(dim))
    }

    pub fn scalar(s: Scalar) -> Self {
        let dim = s.dim();
        let mut op = Self::zero(dim);
        op.add_term(NormalMonomial::identity(dim), s);
        op
    }

    pub fn constant(dim: usize, c: GaussianRational) -> Self {
        Self::scalar(Scalar::constant(dim, c))
    }

    pub fn from_int(dim: usize, n: i64) -> Self {
        Self::scalar(Scalar::from_int(dim, n))
    }

    /// A single monomial with unit coefficient, reduced to canonical form.
    pub fn monomial(m: NormalMonomial) -> Self {
        let dim = m.dim();
        let mut op = Self::zero(dim);
        op.add_reduced(m, Scalar::one(dim));
        op
    }

    fn check_index(dim: usize, i: usize) -> Result<usize> {
        if i >= 1 && i <= dim {
            Ok(i - 1)
        } else {
            Err(Error::Index(format!("index {i} out of range 1..={dim}")))
        }
    }

    /// The multiplication operator `x_i` (1-based).
    pub fn x(dim: usize, i: usize) -> Result<Self> {
        let k = Self::check_index(dim, i)?;
        let mut m = NormalMonomial::identity(dim);
        m.x[k] = 1;
        Ok(Self::monomial(m))
    }

    /// The Dunkl derivative `D_i` (1-based).
    pub fn dunkl(dim: usize, i: usize) -> Result<Self> {
        let k = Self::check_index(dim, i)?;
        let mut m = NormalMonomial::identity(dim);
        m.d[k] = 1;
        Ok(Self::monomial(m))
    }

    /// The reflection `R_i` (1-based).
    pub fn reflection(dim: usize, i: usize) -> Result<Self> {
        let k = Self::check_index(dim, i)?;
        let mut m = NormalMonomial::identity(dim);
        m.refl[k] = true;
        Ok(Self::monomial(m))
    }

    /// Multiplication by `r^k`.
    pub fn r_pow(dim: usize, k: i32) -> Self {
        let mut m = NormalMonomial::identity(dim);
        m.r = k;
        Self::monomial(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NormalMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &NormalMonomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    /// The scalar value if the operator is a multiple of the identity.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero(self.dim)),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_identity().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// True if no term contains a Dunkl derivative or a reflection.
    pub fn is_function(&self) -> bool {
        self.terms.keys().all(NormalMonomial::is_function)
    }

    /// Add `c * m` for an already reduced monomial.
    pub(crate) fn add_term(&mut self, m: NormalMonomial, c: Scalar) {
        debug_assert!(m.is_reduced());
        add_into(&mut self.terms, m, c);
    }

    /// Add `c * m`, reducing `m` modulo `r^2 = sum x_i^2` first.
    pub(crate) fn add_reduced(&mut self, m: NormalMonomial, c: Scalar) {
        if m.is_reduced() {
            add_into(&mut self.terms, m, c);
        } else {
            for (rm, k) in product::reduce_radial(m) {
                add_into(&mut self.terms, rm, &c * &Scalar::from_int(self.dim, k));
            }
        }
    }

    pub(crate) fn from_map(dim: usize, map: HashMap<NormalMonomial, Scalar>) -> Self {
        let terms = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Self { dim, terms }
    }

    pub fn try_arith(&self, rhs: &Operator, kind: OpKind) -> Result<Operator> {
        check_dim(self.dim, rhs.dim)?;
        Ok(match kind {
            OpKind::Add => self.add_impl(rhs, false),
            OpKind::Sub => self.add_impl(rhs, true),
            OpKind::Mul => product::mul(self, rhs),
        })
    }

    fn add_impl(&self, rhs: &Operator, negate: bool) -> Operator {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            let c = if negate { -c } else { c.clone() };
            add_into(&mut out.terms, m.clone(), c);
        }
        out
    }

    pub fn scalar_mul(&self, s: &Scalar) -> Result<Operator> {
        check_dim(self.dim, s.dim())?;
        let mut out = Operator::zero(self.dim);
        if s.is_zero() {
            return Ok(out);
        }
        for (m, c) in &self.terms {
            add_into(&mut out.terms, m.clone(), c * s);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &GaussianRational) -> Operator {
        self.scalar_mul(&Scalar::constant(self.dim, c.clone())).expect("same dimension")
    }

    pub fn try_commutator(&self, rhs: &Operator) -> Result<Operator> {
        check_dim(self.dim, rhs.dim)?;
        Ok(&(self * rhs) - &(rhs * self))
    }

    pub fn try_anticommutator(&self, rhs: &Operator) -> Result<Operator> {
        check_dim(self.dim, rhs.dim)?;
        Ok(&(self * rhs) + &(rhs * self))
    }

    /// `[self, rhs] = self*rhs - rhs*self`. Panics on a dimension mismatch.
    pub fn commutator(&self, rhs: &Operator) -> Operator {
        self.try_commutator(rhs).expect("operator dimension")
    }

    /// `{self, rhs} = self*rhs + rhs*self`. Panics on a dimension mismatch.
    pub fn anticommutator(&self, rhs: &Operator) -> Operator {
        self.try_anticommutator(rhs).expect("operator dimension")
    }

    pub fn pow(&self, n: u32) -> Operator {
        let mut acc = Operator::one(self.dim);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficient-wise parameter substitution.
    pub fn substitute(&self, bindings: &Bindings) -> Operator {
        let mut out = Operator::zero(self.dim);
        for (m, c) in &self.terms {
            add_into(&mut out.terms, m.clone(), c.eval(bindings));
        }
        out
    }

    /// Partition the terms by scaling weight.
    pub fn scaling_weight_split(&self) -> BTreeMap<i64, Operator> {
        let mut parts: BTreeMap<i64, Operator> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts.entry(m.weight()).or_insert_with(|| Operator::zero(self.dim)).terms.insert(m.clone(), c.clone());
        }
        parts
    }

    /// Maximum Dunkl-derivative degree over all terms.
    pub fn d_degree(&self) -> u32 {
        self.terms.keys().map(NormalMonomial::d_degree).max().unwrap_or(0)
    }
}

fn add_into(terms: &mut BTreeMap<NormalMonomial, Scalar>, m: NormalMonomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(m) {
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

impl<'a> std::ops::Add<&'a Operator> for &'a Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        self.try_arith(rhs, OpKind::Add).expect("operator dimension")
    }
}

impl<'a> std::ops::Sub<&'a Operator> for &'a Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        self.try_arith(rhs, OpKind::Sub).expect("operator dimension")
    }
}

impl<'a> std::ops::Mul<&'a Operator> for &'a Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        self.try_arith(rhs, OpKind::Mul).expect("operator dimension")
    }
}

impl std::ops::Neg for &Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        Operator { dim: self.dim, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl std::ops::Add for Operator {
    type Output = Operator;
    fn add(self, rhs: Operator) -> Operator {
        &self + &rhs
    }
}

impl std::ops::Sub for Operator {
    type Output = Operator;
    fn sub(self, rhs: Operator) -> Operator {
        &self - &rhs
    }
}

impl std::ops::Mul for Operator {
    type Output = Operator;
    fn mul(self, rhs: Operator) -> Operator {
        &self * &rhs
    }
}

impl std::iter::Sum for Operator {
    fn sum<I: Iterator<Item = Operator>>(iter: I) -> Operator {
        let mut iter = iter.peekable();
        let dim = iter.peek().map(|op| op.dim).expect("sum of an empty operator iterator");
        iter.fold(Operator::zero(dim), |acc, op| &acc + &op)
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Format::Plain))
    }
}

#[cfg(test)]
mod tests;
