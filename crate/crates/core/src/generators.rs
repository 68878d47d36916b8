//! Named operators of the Dunkl-Coulomb model.
//!
//! All constructors produce canonical [`Operator`]s with `mu_i`, `E` and
//! `alpha` formal unless the [`ModelConfig`] binds them.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::algebra::Operator;
use crate::coeff::{rat, Bindings, GaussianRational, Param, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelConfig {
    pub dim: usize,
    /// Parameters given a rational value; all others stay formal.
    pub bindings: Bindings,
}

impl ModelConfig {
    pub fn symbolic(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Usage("dimension must be at least 1".into()));
        }
        Ok(Self { dim, bindings: Bindings::new() })
    }

    pub fn with_bindings(dim: usize, bindings: Bindings) -> Result<Self> {
        let mut cfg = Self::symbolic(dim)?;
        for p in bindings.keys() {
            p.slot(dim)?;
        }
        cfg.bindings = bindings;
        Ok(cfg)
    }

    pub fn is_symbolic(&self) -> bool {
        self.bindings.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorId {
    Gamma0,
    GammaD1,
    T,
    J(usize, usize),
    A(usize),
    M(usize),
    Gamma(usize),
    K,
    H,
    B(usize),
    Atilde(usize),
    Jsq,
    Qsq,
    L(usize, usize),
    Metric(usize, usize),
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorId::Gamma0 => write!(f, "Gamma0"),
            GeneratorId::GammaD1 => write!(f, "GammaD1"),
            GeneratorId::T => write!(f, "T"),
            GeneratorId::J(i, j) => write!(f, "J({i},{j})"),
            GeneratorId::A(i) => write!(f, "A({i})"),
            GeneratorId::M(i) => write!(f, "M({i})"),
            GeneratorId::Gamma(i) => write!(f, "G({i})"),
            GeneratorId::K => write!(f, "K"),
            GeneratorId::H => write!(f, "H"),
            GeneratorId::B(i) => write!(f, "B({i})"),
            GeneratorId::Atilde(i) => write!(f, "At({i})"),
            GeneratorId::Jsq => write!(f, "Jsq"),
            GeneratorId::Qsq => write!(f, "Qsq"),
            GeneratorId::L(a, b) => write!(f, "L({a},{b})"),
            GeneratorId::Metric(a, b) => write!(f, "g({a},{b})"),
        }
    }
}

/// Which of the two printed orderings of `B_i` / `Ã_i` to transcribe.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DisplayedForm {
    /// `D_i (x.D + (d-3)/2 + sum mu_j R_j)`
    DerivativeFirst,
    /// `(x.D + (d-1)/2 + sum mu_j R_j) D_i`
    DerivativeLast,
}

/// The model in a fixed dimension, with a cache of built generators.
pub struct Model {
    cfg: ModelConfig,
    cache: RwLock<HashMap<GeneratorId, Arc<Operator>>>,
}

impl fmt::Debug for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Model").field("cfg", &self.cfg).finish_non_exhaustive()
    }
}

impl Model {
    pub fn new(cfg: ModelConfig) -> Self {
        Self { cfg, cache: RwLock::new(HashMap::new()) }
    }

    pub fn symbolic(dim: usize) -> Result<Self> {
        ModelConfig::symbolic(dim).map(Self::new)
    }

    pub fn config(&self) -> &ModelConfig {
        &self.cfg
    }

    pub fn dim(&self) -> usize {
        self.cfg.dim
    }

    // ---- building blocks -------------------------------------------------

    pub fn rational(&self, n: i64, d: i64) -> Operator {
        Operator::scalar(Scalar::from_rational(self.dim(), rat(n, d)))
    }

    pub fn imaginary(&self, n: i64) -> Operator {
        Operator::constant(self.dim(), GaussianRational::new(rat(0, 1), rat(n, 1)))
    }

    pub fn parameter(&self, p: Param) -> Operator {
        Operator::scalar(Scalar::param(self.dim(), p).expect("parameter in range"))
    }

    pub fn x(&self, i: usize) -> Result<Operator> {
        Operator::x(self.dim(), i)
    }

    pub fn dunkl(&self, i: usize) -> Result<Operator> {
        Operator::dunkl(self.dim(), i)
    }

    pub fn reflection(&self, i: usize) -> Result<Operator> {
        Operator::reflection(self.dim(), i)
    }

    pub fn r_pow(&self, k: i32) -> Operator {
        Operator::r_pow(self.dim(), k)
    }

    pub fn mu(&self, i: usize) -> Result<Operator> {
        Scalar::param(self.dim(), Param::Mu(i)).map(Operator::scalar)
    }

    fn indices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.dim()
    }

    /// `x . D = sum_i x_i D_i`
    pub fn x_dot_d(&self) -> Operator {
        self.indices().map(|i| &self.x(i).unwrap() * &self.dunkl(i).unwrap()).sum()
    }

    /// Dunkl Laplacian `D^2 = sum_i D_i^2`.
    pub fn laplacian(&self) -> Operator {
        self.indices().map(|i| self.dunkl(i).unwrap().pow(2)).sum()
    }

    /// `x^2 = r^2`.
    pub fn x_squared(&self) -> Operator {
        self.r_pow(2)
    }

    /// `sum_i mu_i R_i`
    pub fn mu_r_sum(&self) -> Operator {
        self.indices().map(|i| &self.mu(i).unwrap() * &self.reflection(i).unwrap()).sum()
    }

    /// `1 + 2 mu_i R_i`, the diagonal metric entry for a spatial index.
    pub fn reflection_factor(&self, i: usize) -> Result<Operator> {
        let two_mu_r = &(&self.rational(2, 1) * &self.mu(i)?) * &self.reflection(i)?;
        Ok(&Operator::one(self.dim()) + &two_mu_r)
    }

    /// `c/2 + sum_i mu_i R_i` for an integer `c` (typically `d-1` or `d-3`).
    pub fn shifted_mu_r(&self, numer: i64) -> Operator {
        &self.rational(numer, 2) + &self.mu_r_sum()
    }

    // ---- index checks ----------------------------------------------------

    fn check_spatial(&self, i: usize) -> Result<()> {
        if (1..=self.dim()).contains(&i) {
            Ok(())
        } else {
            Err(Error::Index(format!("index {i} out of range 1..={}", self.dim())))
        }
    }

    fn check_pair(&self, a: usize, b: usize, upper: usize) -> Result<()> {
        for k in [a, b] {
            if !(1..=upper).contains(&k) {
                return Err(Error::Index(format!("index {k} out of range 1..={upper}")));
            }
        }
        if a == b {
            return Err(Error::Index(format!("indices must differ, got ({a},{b})")));
        }
        Ok(())
    }

    // ---- generators --------------------------------------------------------

    /// Build (or fetch from cache) a named generator.
    pub fn get(&self, id: GeneratorId) -> Result<Arc<Operator>> {
        if let Some(op) = self.cache.read().expect("generator cache").get(&id) {
            return Ok(Arc::clone(op));
        }
        let op = self.build_uncached(id)?;
        let op = if self.cfg.is_symbolic() { op } else { op.substitute(&self.cfg.bindings) };
        let op = Arc::new(op);
        self.cache.write().expect("generator cache").entry(id).or_insert_with(|| Arc::clone(&op));
        Ok(op)
    }

    /// Owned copy of [`Model::get`].
    pub fn build(&self, id: GeneratorId) -> Result<Operator> {
        self.get(id).map(|op| (*op).clone())
    }

    fn build_uncached(&self, id: GeneratorId) -> Result<Operator> {
        let dim = self.dim() as i64;
        let half = self.rational(1, 2);
        Ok(match id {
            GeneratorId::Gamma0 | GeneratorId::GammaD1 => {
                let r = self.r_pow(1);
                let kinetic = &(&self.rational(-1, 2) * &r) * &self.laplacian();
                let linear = &half * &r;
                if id == GeneratorId::Gamma0 {
                    &kinetic + &linear
                } else {
                    &kinetic - &linear
                }
            }
            GeneratorId::T => &self.imaginary(-1) * &(&self.x_dot_d() + &self.shifted_mu_r(dim - 1)),
            GeneratorId::J(i, j) => {
                self.check_pair(i, j, self.dim())?;
                let xd = &self.x(i)? * &self.dunkl(j)?;
                let dx = &self.x(j)? * &self.dunkl(i)?;
                &self.imaginary(-1) * &(&xd - &dx)
            }
            GeneratorId::A(i) | GeneratorId::M(i) => {
                self.check_spatial(i)?;
                let common = self.am_common(i)?;
                let xi = &half * &self.x(i)?;
                if matches!(id, GeneratorId::A(_)) {
                    &common - &xi
                } else {
                    &common + &xi
                }
            }
            GeneratorId::Gamma(i) => {
                self.check_spatial(i)?;
                &(&self.imaginary(-1) * &self.r_pow(1)) * &self.dunkl(i)?
            }
            GeneratorId::K => {
                let r = self.r_pow(1);
                let kinetic = &(&self.rational(-1, 2) * &r) * &self.laplacian();
                &kinetic - &(&self.parameter(Param::E) * &r)
            }
            GeneratorId::H => {
                let kinetic = &self.rational(-1, 2) * &self.laplacian();
                &kinetic - &(&self.parameter(Param::Alpha) * &self.r_pow(-1))
            }
            GeneratorId::B(i) => {
                self.check_spatial(i)?;
                let e = self.parameter(Param::E);
                let two_e = &self.rational(2, 1) * &e;
                let one = Operator::one(self.dim());
                let a = &(&one - &two_e) * &*self.get(GeneratorId::A(i))?;
                let m = &(&one + &two_e) * &*self.get(GeneratorId::M(i))?;
                &half * &(&a + &m)
            }
            GeneratorId::Atilde(i) => {
                self.check_spatial(i)?;
                let h_minus_e = &*self.get(GeneratorId::H)? - &self.parameter(Param::E);
                &*self.get(GeneratorId::B(i))? + &(&self.x(i)? * &h_minus_e)
            }
            GeneratorId::Jsq => {
                let mut acc = Operator::zero(self.dim());
                for i in self.indices() {
                    for j in self.indices().filter(|&j| j > i) {
                        acc = &acc + &self.get(GeneratorId::J(i, j))?.pow(2);
                    }
                }
                acc
            }
            GeneratorId::Qsq => {
                let g0 = self.get(GeneratorId::Gamma0)?;
                let gd = self.get(GeneratorId::GammaD1)?;
                let t = self.get(GeneratorId::T)?;
                &(&g0.pow(2) - &gd.pow(2)) - &t.pow(2)
            }
            GeneratorId::L(a, b) => self.build_l(a, b)?,
            GeneratorId::Metric(a, b) => self.build_metric(a, b)?,
        })
    }

    /// `-1/2 x_i D^2 + D_i (x.D + (d-3)/2 + sum mu_j R_j)`
    fn am_common(&self, i: usize) -> Result<Operator> {
        let first = &(&self.rational(-1, 2) * &self.x(i)?) * &self.laplacian();
        let second = &self.dunkl(i)? * &(&self.x_dot_d() + &self.shifted_mu_r(self.dim() as i64 - 3));
        Ok(&first + &second)
    }

    /// `L_ab` of the `so(d+1,2)` identification, antisymmetric in `(a, b)`.
    pub fn build_l(&self, a: usize, b: usize) -> Result<Operator> {
        let d = self.dim();
        self.check_pair(a, b, d + 3)?;
        if a > b {
            return Ok(-&self.build_l(b, a)?);
        }
        let op = if b <= d {
            self.get(GeneratorId::J(a, b))?
        } else if a <= d {
            match b - d {
                1 => self.get(GeneratorId::A(a))?,
                2 => self.get(GeneratorId::M(a))?,
                _ => self.get(GeneratorId::Gamma(a))?,
            }
        } else {
            match (a - d, b - d) {
                (1, 2) => self.get(GeneratorId::T)?,
                (1, 3) => self.get(GeneratorId::GammaD1)?,
                _ => self.get(GeneratorId::Gamma0)?,
            }
        };
        Ok((*op).clone())
    }

    /// Operator-valued metric `diag(1 + 2 mu_i R_i, ..., 1, -1, -1)`.
    pub fn build_metric(&self, a: usize, b: usize) -> Result<Operator> {
        let d = self.dim();
        for k in [a, b] {
            if !(1..=d + 3).contains(&k) {
                return Err(Error::Index(format!("index {k} out of range 1..={}", d + 3)));
            }
        }
        if a != b {
            return Ok(Operator::zero(d));
        }
        Ok(if a <= d {
            self.reflection_factor(a)?
        } else if a == d + 1 {
            Operator::one(d)
        } else {
            Operator::from_int(d, -1)
        })
    }

    /// The printed expansion of `B_i` (with the `sum mu_j R_j` reading).
    pub fn b_displayed(&self, i: usize, form: DisplayedForm) -> Result<Operator> {
        self.b_printed(i, form, false)
    }

    /// The printed expansion of `B_i` taken literally, with `sum mu_j D_j`.
    pub fn b_misprinted(&self, i: usize, form: DisplayedForm) -> Result<Operator> {
        self.b_printed(i, form, true)
    }

    fn b_printed(&self, i: usize, form: DisplayedForm, derivative_sum: bool) -> Result<Operator> {
        self.check_spatial(i)?;
        let dim = self.dim() as i64;
        let sum = if derivative_sum {
            self.indices().map(|j| &self.mu(j).unwrap() * &self.dunkl(j).unwrap()).sum()
        } else {
            self.mu_r_sum()
        };
        let di = self.dunkl(i)?;
        let middle = match form {
            DisplayedForm::DerivativeFirst => &di * &(&(&self.x_dot_d() + &self.rational(dim - 3, 2)) + &sum),
            DisplayedForm::DerivativeLast => &(&(&self.x_dot_d() + &self.rational(dim - 1, 2)) + &sum) * &di,
        };
        let two_e_x = &(&self.rational(2, 1) * &self.parameter(Param::E)) * &self.x(i)?;
        let inner = &(&(&-&self.x(i)? * &self.laplacian()) + &(&self.rational(2, 1) * &middle)) + &two_e_x;
        let op = &self.rational(1, 2) * &inner;
        Ok(self.bind(op))
    }

    /// The printed explicit form of the deformed Laplace-Runge-Lenz component.
    pub fn atilde_displayed(&self, i: usize, form: DisplayedForm) -> Result<Operator> {
        self.check_spatial(i)?;
        let dim = self.dim() as i64;
        let di = self.dunkl(i)?;
        let middle = match form {
            DisplayedForm::DerivativeFirst => &di * &(&self.x_dot_d() + &self.shifted_mu_r(dim - 3)),
            DisplayedForm::DerivativeLast => &(&self.x_dot_d() + &self.shifted_mu_r(dim - 1)) * &di,
        };
        let coulomb = &(&self.parameter(Param::Alpha) * &self.x(i)?) * &self.r_pow(-1);
        let op = &(&(&-&self.x(i)? * &self.laplacian()) + &middle) - &coulomb;
        Ok(self.bind(op))
    }

    /// Alternate transcription of `B_i` or `Ã_i` used to cross-check [`Model::get`].
    pub fn build_alternate(&self, id: GeneratorId, form: DisplayedForm) -> Result<Operator> {
        match id {
            GeneratorId::B(i) => self.b_displayed(i, form),
            GeneratorId::Atilde(i) => self.atilde_displayed(i, form),
            other => Err(Error::Usage(format!("no alternate form for {other}"))),
        }
    }

    fn bind(&self, op: Operator) -> Operator {
        if self.cfg.is_symbolic() {
            op
        } else {
            op.substitute(&self.cfg.bindings)
        }
    }

    /// All `(a, b)` with `1 <= a < b <= d+3`.
    pub fn l_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.dim() + 3;
        (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Bindings;

    fn model(d: usize) -> Model {
        Model::symbolic(d).unwrap()
    }

    #[test]
    fn t_in_one_dimension() {
        let m = model(1);
        let xd = &m.x(1).unwrap() * &m.dunkl(1).unwrap();
        let expect = &m.imaginary(-1) * &(&xd + &m.mu_r_sum());
        assert_eq!(*m.get(GeneratorId::T).unwrap(), expect);
    }

    #[test]
    fn k_is_combination_of_gammas() {
        let m = model(2);
        let e = m.parameter(Param::E);
        let two_e = &m.rational(2, 1) * &e;
        let one = Operator::one(2);
        let g0 = m.get(GeneratorId::Gamma0).unwrap();
        let gd = m.get(GeneratorId::GammaD1).unwrap();
        let combo = &(&m.rational(1, 2) * &(&(&one - &two_e) * &g0)) + &(&m.rational(1, 2) * &(&(&one + &two_e) * &gd));
        assert_eq!(*m.get(GeneratorId::K).unwrap(), combo);
    }

    #[test]
    fn atilde_classical_limit() {
        let m = model(3);
        let mut b = Bindings::new();
        for k in 1..=3 {
            b.insert(Param::Mu(k), rat(0, 1));
        }
        let at = m.get(GeneratorId::Atilde(1)).unwrap().substitute(&b);
        let x1 = m.x(1).unwrap();
        let expect = &(&(&-&x1 * &m.laplacian()) + &(&(&m.x_dot_d() + &Operator::one(3)) * &m.dunkl(1).unwrap()))
            - &(&(&m.parameter(Param::Alpha) * &x1) * &m.r_pow(-1));
        assert_eq!(at, expect);
    }

    #[test]
    fn l_identification() {
        let m = model(3);
        assert_eq!(m.build_l(1, 2).unwrap(), *m.get(GeneratorId::J(1, 2)).unwrap());
        assert_eq!(m.build_l(4, 6).unwrap(), *m.get(GeneratorId::GammaD1).unwrap());
        assert_eq!(m.build_l(2, 1).unwrap(), -&*m.get(GeneratorId::J(1, 2)).unwrap());
        assert_eq!(m.build_l(5, 6).unwrap(), *m.get(GeneratorId::Gamma0).unwrap());
        assert_eq!(m.build_l(4, 5).unwrap(), *m.get(GeneratorId::T).unwrap());
        assert_eq!(m.build_l(3, 6).unwrap(), *m.get(GeneratorId::Gamma(3)).unwrap());
        assert!(matches!(m.build_l(2, 2), Err(Error::Index(_))));
        assert!(matches!(m.build_l(1, 7), Err(Error::Index(_))));
    }

    #[test]
    fn metric_entries() {
        let m = model(2);
        assert_eq!(m.build_metric(1, 1).unwrap(), m.reflection_factor(1).unwrap());
        assert_eq!(m.build_metric(4, 4).unwrap(), Operator::from_int(2, -1));
        assert_eq!(m.build_metric(3, 3).unwrap(), Operator::one(2));
        assert!(m.build_metric(1, 2).unwrap().is_zero());
        assert!(m.build_metric(0, 1).is_err());
    }

    #[test]
    fn invalid_indices() {
        let m = model(2);
        assert!(matches!(m.get(GeneratorId::A(3)), Err(Error::Index(_))));
        assert!(matches!(m.get(GeneratorId::J(1, 1)), Err(Error::Index(_))));
        assert!(matches!(m.get(GeneratorId::B(0)), Err(Error::Index(_))));
        assert!(matches!(m.build_alternate(GeneratorId::T, DisplayedForm::DerivativeFirst), Err(Error::Usage(_))));
    }

    #[test]
    fn alternates_match_definitions() {
        for d in 1..=3 {
            let m = model(d);
            for i in 1..=d {
                for form in [DisplayedForm::DerivativeFirst, DisplayedForm::DerivativeLast] {
                    let b = m.build_alternate(GeneratorId::B(i), form).unwrap();
                    assert_eq!(b, *m.get(GeneratorId::B(i)).unwrap(), "B({i}) d={d} {form:?}");
                    let a = m.build_alternate(GeneratorId::Atilde(i), form).unwrap();
                    assert_eq!(a, *m.get(GeneratorId::Atilde(i)).unwrap(), "At({i}) d={d} {form:?}");
                }
            }
        }
    }

    #[test]
    fn weight_structure() {
        let m = model(2);
        let keys = |id| m.get(id).unwrap().scaling_weight_split().keys().copied().collect::<Vec<_>>();
        assert_eq!(keys(GeneratorId::T), vec![0]);
        assert_eq!(keys(GeneratorId::J(1, 2)), vec![0]);
        assert_eq!(keys(GeneratorId::Gamma(1)), vec![0]);
        assert_eq!(keys(GeneratorId::Gamma0), vec![-1, 1]);
        assert_eq!(keys(GeneratorId::GammaD1), vec![-1, 1]);
        assert_eq!(keys(GeneratorId::A(2)), vec![-1, 1]);
        assert_eq!(keys(GeneratorId::M(1)), vec![-1, 1]);
        assert_eq!(keys(GeneratorId::Jsq), vec![0]);
        assert_eq!(keys(GeneratorId::Qsq), vec![0]);
    }

    #[test]
    fn bound_model_substitutes() {
        let mut b = Bindings::new();
        b.insert(Param::Mu(1), rat(0, 1));
        let m = Model::new(ModelConfig::with_bindings(1, b).unwrap());
        let t = m.get(GeneratorId::T).unwrap();
        let xd = &m.x(1).unwrap() * &m.dunkl(1).unwrap();
        assert_eq!(*t, &m.imaginary(-1) * &xd);
        assert!(ModelConfig::with_bindings(1, [(Param::Mu(2), rat(1, 1))].into()).is_err());
    }
}
