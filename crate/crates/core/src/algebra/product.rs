//! Normal ordering of products.
//!
//! Left multiplication of a normal word by a generator is one application of
//! the rewrite rules
//!
//! ```text
//! D_i x_i  -> x_i D_i + 1 + 2 mu_i R_i      D_i x_j -> x_j D_i   (i != j)
//! D_i r^k  -> r^k D_i + k x_i r^(k-2)
//! R_i x_i  -> -x_i R_i                       R_i D_i -> -D_i R_i
//! R_i R_i  -> 1                              R_i commutes with r, x_j, D_j (j != i)
//! ```
//!
//! applied to a whole function prefix `x^a r^k` at once. A product of two
//! monomials is obtained by pushing the reflections, then the derivatives,
//! then the function prefix of the left factor onto the right factor.

use std::collections::HashMap;

use super::{NormalMonomial, Operator};
use crate::coeff::Scalar;
use crate::error::{check_dim, Result};

/// Rewrite bookkeeping for one product.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ProductStats {
    /// Number of single-generator rewrite applications.
    pub steps: u64,
}

type TermMap = HashMap<NormalMonomial, Scalar>;

fn accumulate(map: &mut TermMap, m: NormalMonomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    use std::collections::hash_map::Entry;
    match map.entry(m) {
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

fn accumulate_reduced(map: &mut TermMap, m: NormalMonomial, c: Scalar) {
    if m.is_reduced() {
        accumulate(map, m, c);
        return;
    }
    for (rm, k) in reduce_radial(m) {
        let factor = Scalar::from_int(c.dim(), k);
        accumulate(map, rm, &c * &factor);
    }
}

/// Rewrite `x_d^2 -> r^2 - sum_{i<d} x_i^2` until the `x_d` exponent is at
/// most one. Returns the reduced monomials with integer multiplicities.
pub(crate) fn reduce_radial(m: NormalMonomial) -> Vec<(NormalMonomial, i64)> {
    let last = m.dim() - 1;
    let mut done: HashMap<NormalMonomial, i64> = HashMap::new();
    let mut work = vec![(m, 1i64)];
    while let Some((m, k)) = work.pop() {
        if m.x[last] <= 1 {
            *done.entry(m).or_insert(0) += k;
            continue;
        }
        let mut base = m;
        base.x[last] -= 2;
        for i in 0..last {
            let mut t = base.clone();
            t.x[i] += 2;
            work.push((t, -k));
        }
        base.r += 2;
        work.push((base, k));
    }
    let mut v: Vec<_> = done.into_iter().filter(|(_, k)| *k != 0).collect();
    v.sort();
    v
}

/// `R^mask * (terms)`.
fn left_reflect(mask: &[bool], terms: TermMap, stats: &mut ProductStats) -> TermMap {
    if mask.iter().all(|&s| !s) {
        return terms;
    }
    let mut out = TermMap::with_capacity(terms.len());
    for (mut m, c) in terms {
        let mut odd = false;
        for (i, &s) in mask.iter().enumerate() {
            if s {
                stats.steps += 1;
                odd ^= (m.x[i] + m.d[i]) % 2 == 1;
                m.refl[i] ^= true;
            }
        }
        let c = if odd { -&c } else { c };
        accumulate(&mut out, m, c);
    }
    out
}

/// `D_j * (terms)` for a 0-based index `j`.
fn left_dunkl(j: usize, terms: TermMap, stats: &mut ProductStats) -> TermMap {
    let dim = terms.values().next().map_or(0, Scalar::dim);
    let mut out = TermMap::with_capacity(terms.len() * 3);
    for (m, c) in terms {
        stats.steps += 1;
        let a = m.x[j];
        let l = m.r;

        if a > 0 {
            let mut t = m.clone();
            t.x[j] -= 1;
            accumulate(&mut out, t.clone(), &c * &Scalar::from_int(dim, a as i64));
            if a % 2 == 1 {
                // (mu_j / x_j)(f - R_j f R_j) R_j, then R_j past D^e
                let sign = if t.d[j] % 2 == 1 { -2 } else { 2 };
                t.refl[j] ^= true;
                let coeff = &Scalar::from_int(dim, sign) * &Scalar::mu(dim, j + 1);
                accumulate(&mut out, t, &c * &coeff);
            }
        }
        if l != 0 {
            let mut t = m.clone();
            t.x[j] += 1;
            t.r -= 2;
            accumulate_reduced(&mut out, t, &c * &Scalar::from_int(dim, l as i64));
        }
        let mut t = m;
        t.d[j] += 1;
        accumulate(&mut out, t, c);
    }
    out
}

/// `x^a r^k * (terms)`.
fn left_function(x: &[u16], r: i32, terms: TermMap) -> TermMap {
    if r == 0 && x.iter().all(|&e| e == 0) {
        return terms;
    }
    let mut out = TermMap::with_capacity(terms.len());
    for (mut m, c) in terms {
        for (e, &a) in m.x.iter_mut().zip(x) {
            *e += a;
        }
        m.r += r;
        accumulate_reduced(&mut out, m, c);
    }
    out
}

fn left_mul_monomial(lhs: &NormalMonomial, rhs: &Operator, stats: &mut ProductStats) -> TermMap {
    let mut terms: TermMap = rhs.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
    terms = left_reflect(&lhs.refl, terms, stats);
    for (j, &b) in lhs.d.iter().enumerate() {
        for _ in 0..b {
            terms = left_dunkl(j, terms, stats);
        }
    }
    left_function(&lhs.x, lhs.r, terms)
}

/// Normal-ordered expansion of the word `lhs * rhs`.
pub fn mono_mul(lhs: &NormalMonomial, rhs: &NormalMonomial) -> Result<Operator> {
    mono_mul_counted(lhs, rhs).map(|(op, _)| op)
}

/// [`mono_mul`] together with the number of rewrite applications it took.
pub fn mono_mul_counted(lhs: &NormalMonomial, rhs: &NormalMonomial) -> Result<(Operator, ProductStats)> {
    check_dim(lhs.dim(), rhs.dim())?;
    let mut stats = ProductStats::default();
    let rhs = Operator::monomial(rhs.clone());
    let lhs_op = Operator::monomial(lhs.clone());
    let mut acc = TermMap::new();
    for (lm, lc) in &lhs_op.terms {
        for (m, c) in left_mul_monomial(lm, &rhs, &mut stats) {
            accumulate(&mut acc, m, &c * lc);
        }
    }
    Ok((Operator::from_map(lhs.dim(), acc), stats))
}

pub(super) fn mul(lhs: &Operator, rhs: &Operator) -> Operator {
    lhs.mul_counted(rhs).expect("operator dimension").0
}

impl Operator {
    /// Product with rewrite statistics.
    pub fn mul_counted(&self, rhs: &Operator) -> Result<(Operator, ProductStats)> {
        check_dim(self.dim, rhs.dim)?;
        let mut stats = ProductStats::default();
        let mut acc = TermMap::new();
        for (lm, lc) in &self.terms {
            for (m, c) in left_mul_monomial(lm, rhs, &mut stats) {
                accumulate(&mut acc, m, &c * lc);
            }
        }
        Ok((Operator::from_map(self.dim, acc), stats))
    }
}
