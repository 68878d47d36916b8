//! Exact coefficient arithmetic.
//!
//! [`GaussianRational`] is the number field `Q(i)`. [`Scalar`] is a polynomial
//! over `Q(i)` in the formal parameters `mu1..mud, E, alpha`. Every
//! coefficient of an operator lives in [`Scalar`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{check_dim, Error, Result};

/// Parse a rational literal such as `3`, `-1/2` or `0`.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => text.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `re + im*i` with exact rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self { re, im: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(BigRational::from_integer(n.into()))
    }

    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        let norm = &self.re * &self.re + &self.im * &self.im;
        if norm.is_zero() {
            return None;
        }
        Some(Self::new(&self.re / &norm, -&self.im / &norm))
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::real(BigRational::one())
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::real(&self.re * &rhs.re);
        }
        GaussianRational::new(&self.re * &rhs.re - &self.im * &rhs.im, &self.re * &rhs.im + &self.im * &rhs.re)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => {
                if self.im.is_one() {
                    write!(f, "i")
                } else if (-&self.im).is_one() {
                    write!(f, "-i")
                } else {
                    write!(f, "{}*i", self.im)
                }
            }
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                let mag = self.im.abs();
                if mag.is_one() {
                    write!(f, "({} {} i)", self.re, sign)
                } else {
                    write!(f, "({} {} {}*i)", self.re, sign, mag)
                }
            }
        }
    }
}

/// A formal parameter of the model.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Param {
    /// `mu_k`, 1-based.
    Mu(usize),
    E,
    Alpha,
}

impl Param {
    /// Slot in an exponent vector of a dimension-`dim` scalar.
    pub fn slot(self, dim: usize) -> Result<usize> {
        match self {
            Param::Mu(k) if k >= 1 && k <= dim => Ok(k - 1),
            Param::Mu(k) => Err(Error::Index(format!("mu{k} out of range for d={dim}"))),
            Param::E => Ok(dim),
            Param::Alpha => Ok(dim + 1),
        }
    }

    fn from_slot(slot: usize, dim: usize) -> Self {
        if slot < dim {
            Param::Mu(slot + 1)
        } else if slot == dim {
            Param::E
        } else {
            Param::Alpha
        }
    }

    pub fn plain_name(self) -> String {
        match self {
            Param::Mu(k) => format!("mu{k}"),
            Param::E => "E".into(),
            Param::Alpha => "alpha".into(),
        }
    }

    pub fn latex_name(self) -> String {
        match self {
            Param::Mu(k) => format!("\\mu_{{{k}}}"),
            Param::E => "E".into(),
            Param::Alpha => "\\alpha".into(),
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.plain_name())
    }
}

/// Values for some (possibly all) formal parameters.
pub type Bindings = BTreeMap<Param, BigRational>;

pub(crate) type ParamExp = SmallVec<[u16; 6]>;

/// A polynomial in `mu1..mud, E, alpha` with Gaussian rational coefficients.
///
/// The exponent vector of every term has length `dim + 2`. Zero coefficients
/// are never stored, so the zero scalar has an empty term map.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    dim: usize,
    terms: BTreeMap<ParamExp, GaussianRational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
}

impl Scalar {
    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: GaussianRational) -> Self {
        let mut s = Self::zero(dim);
        if !c.is_zero() {
            s.terms.insert(SmallVec::from_elem(0, dim + 2), c);
        }
        s
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, GaussianRational::one())
    }

    pub fn from_int(dim: usize, n: i64) -> Self {
        Self::constant(dim, GaussianRational::from_int(n))
    }

    pub fn from_rational(dim: usize, q: BigRational) -> Self {
        Self::constant(dim, GaussianRational::real(q))
    }

    pub fn i(dim: usize) -> Self {
        Self::constant(dim, GaussianRational::i())
    }

    pub fn param(dim: usize, p: Param) -> Result<Self> {
        let slot = p.slot(dim)?;
        let mut exp: ParamExp = SmallVec::from_elem(0, dim + 2);
        exp[slot] = 1;
        let mut s = Self::zero(dim);
        s.terms.insert(exp, GaussianRational::one());
        Ok(s)
    }

    /// `mu_k` for a known-valid index.
    pub(crate) fn mu(dim: usize, k: usize) -> Self {
        Self::param(dim, Param::Mu(k)).expect("mu index in range")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if the scalar is parameter free.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => {
                let (exp, c) = self.terms.iter().next()?;
                exp.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Iterate over `(exponents, coefficient)` pairs in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u16], &GaussianRational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// Parameters with a nonzero exponent in some term.
    pub fn params(&self) -> Vec<Param> {
        let mut used = vec![false; self.dim + 2];
        for exp in self.terms.keys() {
            for (slot, &e) in exp.iter().enumerate() {
                used[slot] |= e > 0;
            }
        }
        used.iter().enumerate().filter(|(_, &u)| u).map(|(slot, _)| Param::from_slot(slot, self.dim)).collect()
    }

    fn insert_add(&mut self, exp: ParamExp, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
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

    pub fn try_arith(&self, rhs: &Scalar, kind: ArithKind) -> Result<Scalar> {
        check_dim(self.dim, rhs.dim)?;
        Ok(match kind {
            ArithKind::Add => self.add_impl(rhs, false),
            ArithKind::Sub => self.add_impl(rhs, true),
            ArithKind::Mul => self.mul_impl(rhs),
        })
    }

    fn add_impl(&self, rhs: &Scalar, negate: bool) -> Scalar {
        let mut out = self.clone();
        for (exp, c) in &rhs.terms {
            let c = if negate { -c.clone() } else { c.clone() };
            out.insert_add(exp.clone(), c);
        }
        out
    }

    fn mul_impl(&self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero(self.dim);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exp: ParamExp = ea.iter().zip(eb.iter()).map(|(a, b)| a + b).collect();
                out.insert_add(exp, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> Scalar {
        if c.is_zero() {
            return Scalar::zero(self.dim);
        }
        Scalar { dim: self.dim, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    /// Complex conjugation of every coefficient; parameters are real.
    pub fn conj(&self) -> Scalar {
        Scalar { dim: self.dim, terms: self.terms.iter().map(|(e, c)| (e.clone(), c.conj())).collect() }
    }

    /// Substitute rational values for the bound parameters.
    pub fn eval(&self, bindings: &Bindings) -> Scalar {
        let values: Vec<Option<&BigRational>> =
            (0..self.dim + 2).map(|slot| bindings.get(&Param::from_slot(slot, self.dim))).collect();
        if values.iter().all(Option::is_none) {
            return self.clone();
        }
        let mut out = Scalar::zero(self.dim);
        for (exp, c) in &self.terms {
            let mut factor = BigRational::one();
            let mut rest = exp.clone();
            for (slot, e) in rest.iter_mut().enumerate() {
                if let Some(v) = values[slot] {
                    if *e > 0 {
                        factor *= num_traits::pow(v.clone(), *e as usize);
                    }
                    *e = 0;
                }
            }
            let c = c * &GaussianRational::real(factor);
            out.insert_add(rest, c);
        }
        out
    }

    /// Total degree of the leading terms used for display ordering.
    fn display_order(&self) -> Vec<(&ParamExp, &GaussianRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().map(|&x| x as u32).sum();
            let db: u32 = b.iter().map(|&x| x as u32).sum();
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        v
    }

    /// Render as a plain-text sum, e.g. `1 + 2*mu1` or `-1/2*i*E`.
    pub fn render_plain(&self) -> String {
        self.render_with(false)
    }

    pub fn render_latex(&self) -> String {
        self.render_with(true)
    }

    fn symbols(&self, exp: &[u16], latex: bool) -> Vec<String> {
        exp.iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(slot, &e)| {
                let p = Param::from_slot(slot, self.dim);
                let name = if latex { p.latex_name() } else { p.plain_name() };
                match (e, latex) {
                    (1, _) => name,
                    (_, false) => format!("{name}^{e}"),
                    (_, true) => format!("{name}^{{{e}}}"),
                }
            })
            .collect()
    }

    /// Coefficient and parameter symbols of a single-term scalar.
    pub(crate) fn single_term(&self, latex: bool) -> Option<(&GaussianRational, Vec<String>)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (exp, c) = self.terms.iter().next()?;
        Some((c, self.symbols(exp, latex)))
    }

    fn render_with(&self, latex: bool) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (exp, c)) in self.display_order().into_iter().enumerate() {
            let names = self.symbols(exp, latex);
            let (negative, body) = coefficient_term(c, &names, latex);
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

/// Split a coefficient times a product of symbols into a sign and a body.
pub(crate) fn coefficient_term(c: &GaussianRational, symbols: &[String], latex: bool) -> (bool, String) {
    let sep = if latex { " " } else { "*" };
    let imag_unit = if latex { "\\mathrm{i}" } else { "i" };
    let fmt_rat = |q: &BigRational| -> String {
        if latex && !q.is_integer() {
            format!("\\frac{{{}}}{{{}}}", q.numer(), q.denom())
        } else {
            q.to_string()
        }
    };
    let (negative, mut factors): (bool, Vec<String>) = if c.im.is_zero() {
        let mag = c.re.abs();
        let f = if mag.is_one() && !symbols.is_empty() { vec![] } else { vec![fmt_rat(&mag)] };
        (c.re.is_negative(), f)
    } else if c.re.is_zero() {
        let mag = c.im.abs();
        let mut f = vec![];
        if !mag.is_one() {
            f.push(fmt_rat(&mag));
        }
        f.push(imag_unit.to_string());
        (c.im.is_negative(), f)
    } else {
        let sign = if c.im.is_negative() { "-" } else { "+" };
        let mag = c.im.abs();
        let im = if mag.is_one() { imag_unit.to_string() } else { format!("{}{sep}{imag_unit}", fmt_rat(&mag)) };
        let open = if latex { "\\left(" } else { "(" };
        let close = if latex { "\\right)" } else { ")" };
        (false, vec![format!("{open}{} {sign} {im}{close}", fmt_rat(&c.re))])
    };
    factors.extend(symbols.iter().cloned());
    (negative, factors.join(sep))
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_plain())
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim.cmp(&other.dim).then_with(|| self.terms.keys().cmp(other.terms.keys()))
    }
}

// The operator traits panic on an arity mismatch; `try_arith` is the checked
// entry point.
impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.try_arith(rhs, ArithKind::Add).expect("scalar arity")
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.try_arith(rhs, ArithKind::Sub).expect("scalar arity")
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.try_arith(rhs, ArithKind::Mul).expect("scalar arity")
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        assert_eq!(self.dim, rhs.dim, "scalar arity");
        for (exp, c) in &rhs.terms {
            self.insert_add(exp.clone(), c.clone());
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { dim: self.dim, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gi(re: i64, im: i64) -> Scalar {
        Scalar::constant(
            2,
            GaussianRational::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into())),
        )
    }

    fn half(dim: usize) -> Scalar {
        Scalar::from_rational(dim, rat(1, 2))
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = Scalar::i(1);
        assert_eq!(&i * &i, Scalar::from_int(1, -1));
    }

    #[test]
    fn gaussian_norm() {
        assert_eq!(&gi(1, 1) * &gi(1, -1), Scalar::from_int(2, 2));
    }

    #[test]
    fn affine_in_mu() {
        let two_mu1 = &Scalar::from_int(2, 2) * &Scalar::mu(2, 1);
        let lhs = &Scalar::one(2) + &two_mu1;
        assert_eq!(&lhs + &Scalar::from_int(2, -1), two_mu1);
    }

    #[test]
    fn sturm_coefficients_sum_to_one() {
        let e = Scalar::param(1, Param::E).unwrap();
        let two_e = &Scalar::from_int(1, 2) * &e;
        let a = &half(1) * &(&Scalar::one(1) - &two_e);
        let b = &half(1) * &(&Scalar::one(1) + &two_e);
        assert!((&a + &b).is_one());
    }

    #[test]
    fn arity_mismatch_is_dimension_error() {
        let err = Scalar::one(1).try_arith(&Scalar::one(2), ArithKind::Add).unwrap_err();
        assert_eq!(err, Error::Dimension { expected: 1, found: 2 });
    }

    #[test]
    fn conj_examples() {
        let i_mu = &Scalar::i(1) * &Scalar::mu(1, 1);
        assert_eq!(i_mu.conj(), -&i_mu);
        let three_halves = Scalar::from_rational(1, rat(3, 2));
        assert_eq!(three_halves.conj(), three_halves);
    }

    #[test]
    fn eval_examples() {
        let one_plus = &Scalar::one(1) + &(&Scalar::from_int(1, 2) * &Scalar::mu(1, 1));
        let mut b = Bindings::new();
        b.insert(Param::Mu(1), rat(0, 1));
        assert!(one_plus.eval(&b).is_one());
        b.insert(Param::Mu(1), rat(1, 2));
        assert_eq!(one_plus.eval(&b), Scalar::from_int(1, 2));

        let e_alpha = &Scalar::param(1, Param::E).unwrap() * &Scalar::param(1, Param::Alpha).unwrap();
        let mut b = Bindings::new();
        b.insert(Param::E, rat(-1, 2));
        let expect = &Scalar::from_rational(1, rat(-1, 2)) * &Scalar::param(1, Param::Alpha).unwrap();
        assert_eq!(e_alpha.eval(&b), expect);
    }

    #[test]
    fn is_zero_examples() {
        assert!((&gi(1, 1) - &gi(1, 1)).is_zero());
        assert!(!(&Scalar::mu(2, 1) - &Scalar::mu(2, 2)).is_zero());
        let mu = Scalar::mu(1, 1);
        let two_mu = &Scalar::from_int(1, 2) * &mu;
        assert!((&(&two_mu - &mu) - &mu).is_zero());
    }

    #[test]
    fn rendering() {
        let s = &Scalar::one(1) + &(&Scalar::from_int(1, 2) * &Scalar::param(1, Param::E).unwrap());
        assert_eq!(s.render_plain(), "1 + 2*E");
        let s = &Scalar::from_rational(1, rat(-1, 2)) * &Scalar::i(1);
        assert_eq!(s.render_plain(), "-1/2*i");
        assert_eq!(Scalar::zero(3).render_plain(), "0");
    }

    #[test]
    fn parse_rational_literals() {
        assert_eq!(parse_rational("-3/6"), Some(rat(-1, 2)));
        assert_eq!(parse_rational("7"), Some(rat(7, 1)));
        assert_eq!(parse_rational("1/0"), None);
    }
}
