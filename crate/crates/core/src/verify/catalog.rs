//! The identity catalog, one [`IdentitySpec`] per relation.
//!
//! Identifiers group by family: `DNK` (Dunkl relations), `SO21`, `JSQ`,
//! `CAS`, `MIX`, `SAME`, `DEF`, `REFL`, `SODP2`, `ADJ` (dynamical algebra),
//! `STURM`, `COMB`, `CYC.B`, `BSQ` (Sturm integrals), `SCH`, `HLP`, `COMA`,
//! `REFA`, `CYC.A`, `ASQ` (Schroedinger integrals), `RED` (the classical
//! three-dimensional limit) and `GEN` (cross-checks of printed forms).

use crate::algebra::Operator;
use crate::coeff::{GaussianRational, Param};
use crate::error::Result;
use crate::generators::{DisplayedForm, GeneratorId as G, Model, ModelConfig};

use super::{Check, IdentitySpec};

const ALL: &[usize] = &[1, 2, 3, 4];
const PAIRS: &[usize] = &[2, 3, 4];
const TRIPLES: &[usize] = &[3, 4];
const HEAVY: &[usize] = &[1, 2, 3];

fn comm(a: &Operator, b: &Operator) -> Operator {
    a.commutator(b)
}

fn acomm(a: &Operator, b: &Operator) -> Operator {
    a.anticommutator(b)
}

fn times_i(op: &Operator) -> Operator {
    op.scale(&GaussianRational::i())
}

fn delta(i: usize, j: usize) -> bool {
    i == j
}

/// Generator lookup with the index conventions of the relations.
struct Env<'a> {
    m: &'a Model,
}

impl<'a> Env<'a> {
    fn new(m: &'a Model) -> Self {
        Self { m }
    }

    fn d(&self) -> usize {
        self.m.dim()
    }

    fn idx(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.d()
    }

    /// Ordered pairs `i != j`.
    fn pairs(&self) -> Vec<(usize, usize)> {
        let d = self.d();
        (1..=d).flat_map(|i| (1..=d).filter(move |&j| j != i).map(move |j| (i, j))).collect()
    }

    /// Pairs `i < j`.
    fn upper_pairs(&self) -> Vec<(usize, usize)> {
        let d = self.d();
        (1..=d).flat_map(|i| (i + 1..=d).map(move |j| (i, j))).collect()
    }

    fn zero(&self) -> Operator {
        Operator::zero(self.d())
    }

    fn one(&self) -> Operator {
        Operator::one(self.d())
    }

    fn q(&self, n: i64, d: i64) -> Operator {
        self.m.rational(n, d)
    }

    fn e(&self) -> Operator {
        self.m.parameter(Param::E)
    }

    fn alpha(&self) -> Operator {
        self.m.parameter(Param::Alpha)
    }

    fn g(&self, id: G) -> Result<Operator> {
        self.m.build(id)
    }

    /// `J_ij` for any ordered pair, zero on the diagonal.
    fn j(&self, i: usize, k: usize) -> Result<Operator> {
        use std::cmp::Ordering::*;
        Ok(match i.cmp(&k) {
            Equal => self.zero(),
            Less => self.g(G::J(i, k))?,
            Greater => -&self.g(G::J(k, i))?,
        })
    }

    /// `L_ab` for any ordered pair, zero on the diagonal.
    fn l(&self, a: usize, b: usize) -> Result<Operator> {
        if a == b {
            Ok(self.zero())
        } else {
            self.m.build_l(a, b)
        }
    }

    fn f(&self, i: usize) -> Result<Operator> {
        self.m.reflection_factor(i)
    }

    fn x(&self, i: usize) -> Result<Operator> {
        self.m.x(i)
    }

    fn dk(&self, i: usize) -> Result<Operator> {
        self.m.dunkl(i)
    }

    fn refl(&self, i: usize) -> Result<Operator> {
        self.m.reflection(i)
    }

    fn r(&self, k: i32) -> Operator {
        self.m.r_pow(k)
    }

    fn xd(&self) -> Operator {
        self.m.x_dot_d()
    }

    fn lap(&self) -> Operator {
        self.m.laplacian()
    }

    fn x2(&self) -> Operator {
        self.m.x_squared()
    }

    fn mur(&self) -> Operator {
        self.m.mu_r_sum()
    }

    /// `c/2 + sum mu_j R_j`
    fn shifted(&self, numer: i64) -> Operator {
        self.m.shifted_mu_r(numer)
    }

    /// `H - E`
    fn h_minus_e(&self) -> Result<Operator> {
        Ok(&self.g(G::H)? - &self.e())
    }

    /// `x_i (H - E)`
    fn xhe(&self, i: usize) -> Result<Operator> {
        Ok(&self.x(i)? * &self.h_minus_e()?)
    }

    /// `J^2 + ((d-1)/2 + sum mu_i R_i)^2`
    fn jsq_shifted(&self) -> Result<Operator> {
        Ok(&self.g(G::Jsq)? + &self.shifted(self.d() as i64 - 1).pow(2))
    }

    /// `(2 x.D + d/2 + sum mu_i R_i)((d-1)/2 + sum mu_j R_j)`
    fn asq_block(&self) -> Operator {
        let d = self.d() as i64;
        let left = &(&(&self.q(2, 1) * &self.xd()) + &self.q(d, 2)) + &self.mur();
        &left * &self.shifted(d - 1)
    }
}

fn spec<F>(id: &str, dims: &[usize], f: F) -> IdentitySpec
where
    F: Fn(&Env) -> Result<Vec<Check>> + Send + Sync + 'static,
{
    IdentitySpec::new(id, dims, move |m: &Model| f(&Env::new(m)))
}

/// Every built-in identity.
pub fn catalog() -> Vec<IdentitySpec> {
    let mut out = Vec::new();
    out.extend(dunkl_relations());
    out.extend(so21());
    out.extend(dynamical());
    out.extend(sodp2());
    out.extend(sturm());
    out.extend(schroedinger());
    out.extend(reduction());
    out
}

fn dunkl_relations() -> Vec<IdentitySpec> {
    vec![
        spec("DNK.DX", ALL, |e| {
            let mut v = Vec::new();
            for i in e.idx() {
                for k in e.idx() {
                    let rhs = if delta(i, k) { e.f(i)? } else { e.zero() };
                    v.push(Check::new(format!("[D{i},x{k}]"), comm(&e.dk(i)?, &e.x(k)?), rhs));
                }
            }
            Ok(v)
        }),
        spec("DNK.RX", ALL, |e| {
            let mut v = Vec::new();
            for i in e.idx() {
                v.push(Check::vanishes(format!("{{R{i},x{i}}}"), acomm(&e.refl(i)?, &e.x(i)?)));
                v.push(Check::vanishes(format!("{{R{i},D{i}}}"), acomm(&e.refl(i)?, &e.dk(i)?)));
            }
            Ok(v)
        }),
        spec("DNK.RD", ALL, |e| {
            let mut v = Vec::new();
            for i in e.idx() {
                let rhs = &e.q(-1, 1) * &(&e.x(i)? * &e.r(-3));
                v.push(Check::new(format!("[D{i},r^-1]"), comm(&e.dk(i)?, &e.r(-1)), rhs));
            }
            Ok(v)
        }),
        spec("DNK.CROSS", PAIRS, |e| {
            let mut v = Vec::new();
            for (i, k) in e.pairs() {
                let ri = e.refl(i)?;
                v.push(Check::vanishes(format!("[R{i},x{k}]"), comm(&ri, &e.x(k)?)));
                v.push(Check::vanishes(format!("[R{i},D{k}]"), comm(&ri, &e.dk(k)?)));
                v.push(Check::vanishes(format!("[R{i},R{k}]"), comm(&ri, &e.refl(k)?)));
            }
            Ok(v)
        }),
        spec("DNK.DD", PAIRS, |e| {
            let mut v = Vec::new();
            for (i, k) in e.upper_pairs() {
                v.push(Check::vanishes(format!("[D{i},D{k}]"), comm(&e.dk(i)?, &e.dk(k)?)));
            }
            Ok(v)
        }),
        spec("DNK.RR", ALL, |e| {
            let mut v = Vec::new();
            for i in e.idx() {
                v.push(Check::new(format!("R{i}^2"), e.refl(i)?.pow(2), e.one()));
                let r2 = e.r(2);
                v.push(Check::vanishes(format!("[R{i},r^2]"), comm(&e.refl(i)?, &r2)));
            }
            Ok(v)
        }),
    ]
}

fn so21() -> Vec<IdentitySpec> {
    vec![
        spec("SO21.1", ALL, |e| {
            let lhs = comm(&e.g(G::Gamma0)?, &e.g(G::GammaD1)?);
            Ok(vec![Check::new("[Gamma0,GammaD1]", lhs, times_i(&e.g(G::T)?))])
        }),
        spec("SO21.2", ALL, |e| {
            let lhs = comm(&e.g(G::Gamma0)?, &e.g(G::T)?);
            Ok(vec![Check::new("[Gamma0,T]", lhs, -&times_i(&e.g(G::GammaD1)?))])
        }),
        spec("SO21.3", ALL, |e| {
            let lhs = comm(&e.g(G::GammaD1)?, &e.g(G::T)?);
            Ok(vec![Check::new("[GammaD1,T]", lhs, -&times_i(&e.g(G::Gamma0)?))])
        }),
        spec("JSQ", ALL, |e| {
            let d = e.d() as i64;
            let tail = &e.q(d - 2, 1) + &(&e.q(2, 1) * &e.mur());
            let rhs = &(&(-&(&e.x2() * &e.lap())) + &e.xd().pow(2)) + &(&e.xd() * &tail);
            let mut half_sum = e.zero();
            for (i, k) in e.pairs() {
                half_sum = &half_sum + &e.j(i, k)?.pow(2);
            }
            let half_sum = &e.q(1, 2) * &half_sum;
            Ok(vec![
                Check::new("Jsq closed form", e.g(G::Jsq)?, rhs),
                Check::new("Jsq as half sum", e.g(G::Jsq)?, half_sum),
            ])
        }),
        spec("CAS", ALL, |e| {
            let d = e.d() as i64;
            let q2 = &(&e.g(G::Gamma0)?.pow(2) - &e.g(G::GammaD1)?.pow(2)) - &e.g(G::T)?.pow(2);
            let rhs = &e.g(G::Jsq)? + &(&e.shifted(d - 3) * &e.shifted(d - 1));
            Ok(vec![Check::new("Qsq definition", e.g(G::Qsq)?, q2), Check::new("Qsq", e.g(G::Qsq)?, rhs)])
        }),
    ]
}

fn dynamical() -> Vec<IdentitySpec> {
    vec![
        spec("MIX.1", ALL, |e| {
            let mut v = Vec::new();
            for (i, k) in e.upper_pairs() {
                let j = e.j(i, k)?;
                for id in [G::Gamma0, G::GammaD1, G::T] {
                    v.push(Check::vanishes(format!("[{id},J({i},{k})]"), comm(&e.g(id)?, &j)));
                }
            }
            Ok(v)
        }),
        spec("MIX.2", ALL, |e| {
            let mut v = Vec::new();
            for i in e.idx() {
                v.push(Check::vanishes(format!("[Gamma0,A({i})]"), comm(&e.g(G::Gamma0)?, &e.g(G::A(i))?)));
                v.push(Check::vanishes(format!("[GammaD1,M({i})]"), comm(&e.g(G::GammaD1)?, &e.g(G::M(i))?)));
                v.push(Check::vanishes(format!("[T,G({i})]"), comm(&e.g(G::T)?, &e.g(G::Gamma(i))?)));
            }
            Ok(v)
        }),
        spec("MIX.3", ALL, |e| {
            let mut v = Vec::new();
            for i in e.idx() {
                let ig = times_i(&e.g(G::Gamma(i))?);
                v.push(Check::new(format!("[GammaD1,A({i})]"), comm(&e.g(G::GammaD1)?, &e.g(G::A(i))?), ig.clone()));
                v.push(Check::new(format!("[Gamma0,M({i})]"), comm(&e.g(G::Gamma0)?, &e.g(G::M(i))?), -&ig));
            }
            Ok(v)
        }),
        spec("MIX.4", ALL, |e| {
            let mut v = Vec::new();
            for i in e.idx() {
                let im = times_i(&e.g(G::M(i))?);
                v.push(Check::new(format!("[T,A({i})]"), comm(&e.g(G::T)?, &e.g(G::A(i))?), im.clone()));
                v.push(Check::new(format!("[Gamma0,G({i})]"), comm(&e.g(G::Gamma0)?, &e.g(G::Gamma(i))?), im));
            }
            Ok(v)
        }),
        spec("MIX.5", ALL, |e| {
            let mut v = Vec::new();
            for i in e.idx() {
                let ia = times_i(&e.g(G::A(i))?);
                v.push(Check::new(format!("[T,M({i})]"), comm(&e.g(G::T)?, &e.g(G::M(i))?), ia.clone()));
                v.push(Check::new(format!("[GammaD1,G({i})]"), comm(&e.g(G::GammaD1)?, &e.g(G::Gamma(i))?), ia));
            }
            Ok(v)
        }),
        same("SAME.A", G::A, 1),
        same("SAME.M", G::M, -1),
        same("SAME.G", G::Gamma, -1),
        spec("DEF.JJ", PAIRS, |e| {
            let mut v = Vec::new();
            for (i, j) in e.upper_pairs() {
                for (k, l) in e.upper_pairs() {
                    let mut rhs = e.zero();
                    if delta(i, k) {
                        rhs = &rhs + &(&e.j(j, l)? * &e.f(k)?);
                    }
                    if delta(i, l) {
                        rhs = &rhs + &(&e.j(k, j)? * &e.f(l)?);
                    }
                    if delta(j, k) {
                        rhs = &rhs + &(&e.j(l, i)? * &e.f(k)?);
                    }
                    if delta(j, l) {
                        rhs = &rhs + &(&e.j(i, k)? * &e.f(l)?);
                    }
                    let lhs = comm(&e.j(i, j)?, &e.j(k, l)?);
                    v.push(Check::new(format!("[J({i},{j}),J({k},{l})]"), lhs, times_i(&rhs)));
                }
            }
            Ok(v)
        }),
        j_vector("DEF.JA", G::A),
        j_vector("DEF.JM", G::M),
        j_vector("DEF.JG", G::Gamma),
        vector_pair("DEF.AM", G::A, G::M, G::T),
        vector_pair("DEF.AG", G::A, G::Gamma, G::GammaD1),
        vector_pair("DEF.MG", G::M, G::Gamma, G::Gamma0),
        spec("REFL.SO21", ALL, |e| {
            let mut v = Vec::new();
            for i in e.idx() {
                for id in [G::Gamma0, G::GammaD1, G::T] {
                    v.push(Check::vanishes(format!("[R{i},{id}]"), comm(&e.refl(i)?, &e.g(id)?)));
                }
            }
            Ok(v)
        }),
        spec("REFL.J", PAIRS, |e| {
            let mut v = Vec::new();
            for i in e.idx() {
                for (j, k) in e.upper_pairs() {
                    v.push(reflection_check(&e.refl(i)?, &e.j(j, k)?, i == j || i == k, format!("R{i},J({j},{k})")));
                }
            }
            Ok(v)
        }),
        spec("REFL.VEC", ALL, |e| {
            let mut v = Vec::new();
            for i in e.idx() {
                for j in e.idx() {
                    for id in [G::A(j), G::M(j), G::Gamma(j)] {
                        v.push(reflection_check(&e.refl(i)?, &e.g(id)?, i == j, format!("R{i},{id}")));
                    }
                }
            }
            Ok(v)
        }),
    ]
}

/// `{R, X} = 0` when `anti`, `[R, X] = 0` otherwise.
fn reflection_check(r: &Operator, x: &Operator, anti: bool, label: String) -> Check {
    if anti {
        Check::vanishes(format!("{{{label}}}"), acomm(r, x))
    } else {
        Check::vanishes(format!("[{label}]"), comm(r, x))
    }
}

/// `[V_i, V_j] = sign * i J_ij`
fn same(id: &'static str, vector: fn(usize) -> G, sign: i64) -> IdentitySpec {
    spec(id, PAIRS, move |e| {
        let mut v = Vec::new();
        for (i, j) in e.pairs() {
            let lhs = comm(&e.g(vector(i))?, &e.g(vector(j))?);
            let rhs = &e.q(sign, 1) * &times_i(&e.j(i, j)?);
            v.push(Check::new(format!("[{},{}]", vector(i), vector(j)), lhs, rhs));
        }
        Ok(v)
    })
}

/// `[J_ij, V_k] = i (delta_ik V_j - delta_jk V_i)(1 + 2 mu_k R_k)`
fn j_vector(id: &'static str, vector: fn(usize) -> G) -> IdentitySpec {
    spec(id, PAIRS, move |e| j_vector_checks(e, &|k| e.g(vector(k))))
}

fn j_vector_checks(e: &Env, vector: &dyn Fn(usize) -> Result<Operator>) -> Result<Vec<Check>> {
    let mut v = Vec::new();
    for (i, j) in e.pairs() {
        for k in e.idx() {
            let mut rhs = e.zero();
            if delta(i, k) {
                rhs = &rhs + &vector(j)?;
            }
            if delta(j, k) {
                rhs = &rhs - &vector(i)?;
            }
            let rhs = times_i(&(&rhs * &e.f(k)?));
            let lhs = comm(&e.j(i, j)?, &vector(k)?);
            v.push(Check::new(format!("[J({i},{j}),V({k})]"), lhs, rhs));
        }
    }
    Ok(v)
}

/// `[U_i, V_j] = i delta_ij S (1 + 2 mu_i R_i)`
fn vector_pair(id: &'static str, u: fn(usize) -> G, w: fn(usize) -> G, s: G) -> IdentitySpec {
    spec(id, ALL, move |e| {
        let mut v = Vec::new();
        for i in e.idx() {
            for j in e.idx() {
                let rhs = if delta(i, j) { times_i(&(&e.g(s)? * &e.f(i)?)) } else { e.zero() };
                v.push(Check::new(format!("[{},{}]", u(i), w(j)), comm(&e.g(u(i))?, &e.g(w(j))?), rhs));
            }
        }
        Ok(v)
    })
}

fn sodp2() -> Vec<IdentitySpec> {
    vec![
        spec("SODP2", HEAVY, |e| {
            let pairs = e.m.l_pairs();
            let n = e.d() + 3;
            let metric = |a: usize, b: usize| e.m.build_metric(a, b);
            let mut v = Vec::with_capacity(pairs.len() * pairs.len());
            for &(a, b) in &pairs {
                for &(c, dd) in &pairs {
                    let mut rhs = e.zero();
                    for (l, g) in [((b, dd), (a, c)), ((c, b), (a, dd)), ((dd, a), (b, c)), ((a, c), (b, dd))] {
                        if g.0 == g.1 && l.0 != l.1 {
                            rhs = &rhs + &(&e.l(l.0, l.1)? * &metric(g.0, g.1)?);
                        }
                    }
                    let lhs = comm(&e.l(a, b)?, &e.l(c, dd)?);
                    v.push(Check::new(format!("[L({a},{b}),L({c},{dd})]"), lhs, times_i(&rhs)));
                }
            }
            debug_assert!(pairs.iter().all(|&(a, b)| a < b && b <= n));
            Ok(v)
        }),
        spec("SODP2.R", HEAVY, |e| {
            let mut v = Vec::new();
            for i in e.idx() {
                for (a, b) in e.m.l_pairs() {
                    v.push(reflection_check(&e.refl(i)?, &e.l(a, b)?, a == i || b == i, format!("R{i},L({a},{b})")));
                }
            }
            Ok(v)
        }),
        spec("ADJ", HEAVY, |e| {
            let mut v = Vec::new();
            for (a, b) in e.m.l_pairs() {
                let l = e.l(a, b)?;
                v.push(Check::new(format!("adj L({a},{b})"), l.adjoint(), l));
            }
            Ok(v)
        }),
        spec("ADJ.T.UNWEIGHTED", HEAVY, |e| {
            let d = e.d() as i64;
            let rhs = -&times_i(&(&e.xd() + &e.shifted(d + 1)));
            Ok(vec![Check::new("unweighted adj T", e.g(G::T)?.adjoint_unweighted(), rhs)])
        }),
        spec("ADJ.T.UNWEIGHTED.NEQ", HEAVY, |e| {
            let t = e.g(G::T)?;
            Ok(vec![Check::new("unweighted adj T against T", t.adjoint_unweighted(), t)])
        })
        .expecting_nonzero(),
    ]
}

fn sturm() -> Vec<IdentitySpec> {
    vec![
        spec("STURM.K", ALL, |e| {
            let k = e.g(G::K)?;
            let one_minus = &e.one() - &(&e.q(2, 1) * &e.e());
            let one_plus = &e.one() + &(&e.q(2, 1) * &e.e());
            let combo = &e.q(1, 2) * &(&(&one_minus * &e.g(G::Gamma0)?) + &(&one_plus * &e.g(G::GammaD1)?));
            let direct = &(&e.q(-1, 2) * &(&e.r(1) * &e.lap())) - &(&e.e() * &e.r(1));
            Ok(vec![Check::new("K as combination", k.clone(), combo), Check::new("K definition", k, direct)])
        }),
        spec("STURM.IOM", ALL, |e| {
            let k = e.g(G::K)?;
            let mut v = Vec::new();
            for (i, j) in e.upper_pairs() {
                v.push(Check::vanishes(format!("[J({i},{j}),K]"), comm(&e.j(i, j)?, &k)));
            }
            for i in e.idx() {
                v.push(Check::vanishes(format!("[B({i}),K]"), comm(&e.g(G::B(i))?, &k)));
            }
            Ok(v)
        }),
        spec("STURM.B", ALL, |e| {
            let mut v = Vec::new();
            for i in e.idx() {
                let b = e.g(G::B(i))?;
                for form in [DisplayedForm::DerivativeFirst, DisplayedForm::DerivativeLast] {
                    v.push(Check::new(format!("B({i}) {form:?}"), e.m.b_displayed(i, form)?, b.clone()));
                }
            }
            Ok(v)
        }),
        spec("STURM.B.DSUM", ALL, |e| {
            let mut v = Vec::new();
            for i in e.idx() {
                let b = e.g(G::B(i))?;
                for form in [DisplayedForm::DerivativeFirst, DisplayedForm::DerivativeLast] {
                    v.push(Check::new(format!("B({i}) {form:?} with mu.D"), e.m.b_misprinted(i, form)?, b.clone()));
                }
            }
            Ok(v)
        })
        .expecting_nonzero(),
        spec("COMB.JJ", PAIRS, |e| {
            let mut v = Vec::new();
            for (i, j) in e.upper_pairs() {
                for (k, l) in e.upper_pairs() {
                    let mut rhs = e.zero();
                    for (hit, a, b, f) in
                        [(delta(i, k), j, l, k), (delta(i, l), k, j, l), (delta(j, k), l, i, k), (delta(j, l), i, k, l)]
                    {
                        if hit {
                            rhs = &rhs + &(&e.j(a, b)? * &e.f(f)?);
                        }
                    }
                    v.push(Check::new(
                        format!("[J({i},{j}),J({k},{l})]"),
                        comm(&e.j(i, j)?, &e.j(k, l)?),
                        times_i(&rhs),
                    ));
                }
            }
            Ok(v)
        }),
        spec("COMB.JB", PAIRS, |e| j_vector_checks(e, &|k| e.g(G::B(k)))),
        spec("COMB.BB", PAIRS, |e| {
            let mut v = Vec::new();
            for (i, j) in e.pairs() {
                let rhs = &(&e.q(-2, 1) * &e.e()) * &times_i(&e.j(i, j)?);
                v.push(Check::new(format!("[B({i}),B({j})]"), comm(&e.g(G::B(i))?, &e.g(G::B(j))?), rhs));
            }
            Ok(v)
        }),
        spec("COMB.REFL", ALL, |e| {
            let mut v = Vec::new();
            for i in e.idx() {
                for (j, k) in e.upper_pairs() {
                    v.push(reflection_check(&e.refl(i)?, &e.j(j, k)?, i == j || i == k, format!("R{i},J({j},{k})")));
                }
                for j in e.idx() {
                    v.push(reflection_check(&e.refl(i)?, &e.g(G::B(j))?, i == j, format!("R{i},B({j})")));
                }
            }
            Ok(v)
        }),
        spec("CYC.B", TRIPLES, |e| cyclic(e, G::B)),
        spec("BSQ", ALL, |e| {
            let lhs = b_squared(e)?;
            let rhs = &e.g(G::K)?.pow(2) + &(&(&e.q(2, 1) * &e.e()) * &e.jsq_shifted()?);
            Ok(vec![Check::new("B^2", lhs, rhs)])
        }),
        spec("BSQ.B1", ALL, |e| {
            let lhs = e.g(G::B(1))?.pow(2);
            Ok(vec![Check::new("B(1)^2 expansion", lhs, b1_squared_expansion(e)?)])
        }),
        spec("BSQ.SUM", ALL, |e| Ok(vec![Check::new("summed B^2", b_squared(e)?, b_squared_expansion(e))])),
        spec("BSQ.K2", ALL, |e| {
            let d = e.d() as i64;
            let two_e = &e.q(2, 1) * &e.e();
            let inner = &(&(&e.xd() + &e.shifted(d - 1)) + &(&two_e * &e.x2())) * &e.lap();
            let body = &(&(&e.x2() * &e.lap().pow(2)) + &(&e.q(2, 1) * &inner))
                + &(&(&(&e.q(4, 1) * &e.e()) * &(&e.xd() + &e.shifted(d - 1)))
                    + &(&(&e.q(4, 1) * &e.e().pow(2)) * &e.x2()));
            Ok(vec![Check::new("K^2 expansion", e.g(G::K)?.pow(2), &e.q(1, 4) * &body)])
        }),
    ]
}

fn cyclic(e: &Env, vector: fn(usize) -> G) -> Result<Vec<Check>> {
    let d = e.d();
    let mut v = Vec::new();
    for i in 1..=d {
        for j in i + 1..=d {
            for k in j + 1..=d {
                let sum = &(&(&e.j(i, j)? * &e.g(vector(k))?) + &(&e.j(j, k)? * &e.g(vector(i))?))
                    + &(&e.j(k, i)? * &e.g(vector(j))?);
                v.push(Check::vanishes(format!("cyclic ({i},{j},{k})"), sum));
            }
        }
    }
    Ok(v)
}

fn b_squared(e: &Env) -> Result<Operator> {
    let mut s = e.zero();
    for i in e.idx() {
        s = &s + &e.g(G::B(i))?.pow(2);
    }
    Ok(s)
}

fn b1_squared_expansion(e: &Env) -> Result<Operator> {
    let d = e.d() as i64;
    let (x1, d1, lap, xd, en) = (e.x(1)?, e.dk(1)?, e.lap(), e.xd(), e.e());
    let mu1_r1 = &e.m.mu(1)? * &e.refl(1)?;
    let others = &e.mur() - &(&e.q(2, 1) * &mu1_r1);
    let xd_sh = |numer: i64| &xd + &e.q(numer, 2);
    let d1sq = d1.pow(2);

    let bracket = &(&(&(&x1 * &xd_sh(d + 1)) * &d1) + &(&e.q(1, 2) * &xd_sh(d - 1))) + &(&en * &x1.pow(2));
    let mut s = &(&e.q(1, 4) * &(&x1.pow(2) * &lap.pow(2))) - &(&bracket * &lap);
    s = &s - &(&(&(&x1 * &d1) * &lap) * &others);
    s = &s - &(&(&xd_sh(d - 1) * &lap) * &mu1_r1);
    s = &s - &(&(&e.q(1, 2) * &(&lap * &e.mur())) * &e.f(1)?);
    s = &s + &(&(&xd_sh(d - 1) * &xd_sh(d + 1)) * &d1sq);
    s = &s + &(&(&(&(&e.q(2, 1) * &xd) + &e.q(d, 1)) * &d1sq) * &e.mur());
    s = &s + &(&d1sq * &e.mur().pow(2));
    s = &s + &(&(&(&e.q(2, 1) * &en) * &x1) * &(&xd_sh(d - 1) * &d1));
    s = &s + &(&(&(&e.q(2, 1) * &en) * &x1) * &(&d1 * &others));
    s = &s + &(&en * &(&(&xd + &e.shifted(d - 1)) * &e.f(1)?));
    s = &s + &(&en.pow(2) * &x1.pow(2));
    Ok(s)
}

fn b_squared_expansion(e: &Env) -> Operator {
    let d = e.d() as i64;
    let (lap, xd, en, x2, mur) = (e.lap(), e.xd(), e.e(), e.x2(), e.mur());
    let four_e = &e.q(4, 1) * &en;
    let mut s = &x2 * &lap.pow(2);
    let coeff = &(&(&(&e.q(2, 1) * &xd) + &e.q(d - 1, 1)) - &(&four_e * &x2)) * &lap;
    s = &s + &coeff;
    s = &s + &(&(&e.q(2, 1) * &lap) * &mur);
    let quad = &(&(&e.q(2, 1) * &xd.pow(2)) + &(&e.q(2 * d - 3, 1) * &xd)) + &e.q(d * (d - 1), 2);
    s = &s + &(&four_e * &quad);
    s = &s + &(&(&four_e * &(&(&e.q(4, 1) * &xd) + &e.q(2 * d - 1, 1))) * &mur);
    s = &s + &(&(&e.q(8, 1) * &en) * &mur.pow(2));
    s = &s + &(&(&e.q(4, 1) * &en.pow(2)) * &x2);
    &e.q(1, 4) * &s
}

fn schroedinger() -> Vec<IdentitySpec> {
    vec![
        spec("SCH.IOM", ALL, |e| {
            let h = e.g(G::H)?;
            let mut v = Vec::new();
            for (i, j) in e.upper_pairs() {
                v.push(Check::vanishes(format!("[J({i},{j}),H]"), comm(&e.j(i, j)?, &h)));
            }
            for i in e.idx() {
                v.push(Check::vanishes(format!("[At({i}),H]"), comm(&e.g(G::Atilde(i))?, &h)));
            }
            Ok(v)
        }),
        spec("SCH.BR", ALL, |e| {
            let mut v = Vec::new();
            for i in e.idx() {
                let lhs = &comm(&e.g(G::B(i))?, &e.r(-1)) * &e.r(1);
                v.push(Check::new(format!("[B({i}),r^-1]*r"), lhs, -&e.dk(i)?));
            }
            Ok(v)
        }),
        spec("SCH.XH", ALL, |e| {
            let mut v = Vec::new();
            for i in e.idx() {
                v.push(Check::new(format!("[x{i},H]"), comm(&e.x(i)?, &e.g(G::H)?), e.dk(i)?));
            }
            Ok(v)
        }),
        spec("SCH.HK", ALL, |e| {
            let rhs = &(&e.r(-1) * &(&e.g(G::K)? - &e.alpha())) + &e.e();
            Ok(vec![Check::new("H from K", e.g(G::H)?, rhs)])
        }),
        spec("HLP.1", ALL, |e| {
            let mut v = Vec::new();
            for i in e.idx() {
                let rhs = -&(&e.x(i)? * &e.r(-3));
                v.push(Check::new(format!("[D{i},r^-1]"), comm(&e.dk(i)?, &e.r(-1)), rhs));
            }
            Ok(v)
        }),
        spec("HLP.2", ALL, |e| {
            let d = e.d() as i64;
            let rhs = &(&e.q(-2, 1) * &e.r(-3)) * &(&e.xd() + &e.shifted(d - 3));
            Ok(vec![Check::new("[D^2,r^-1]", comm(&e.lap(), &e.r(-1)), rhs)])
        }),
        spec("HLP.3", ALL, |e| Ok(vec![Check::new("[x.D,r^-1]", comm(&e.xd(), &e.r(-1)), -&e.r(-1))])),
        spec("COMA.JA", PAIRS, |e| j_vector_checks(e, &|k| e.g(G::Atilde(k)))),
        spec("COMA.AA", PAIRS, |e| {
            let mut v = Vec::new();
            for (i, j) in e.pairs() {
                let rhs = &(&e.q(-2, 1) * &e.g(G::H)?) * &times_i(&e.j(i, j)?);
                v.push(Check::new(format!("[At({i}),At({j})]"), comm(&e.g(G::Atilde(i))?, &e.g(G::Atilde(j))?), rhs));
            }
            Ok(v)
        }),
        spec("COMA.XX", PAIRS, |e| {
            let mut v = Vec::new();
            for (i, j) in e.pairs() {
                let rhs = -&times_i(&(&e.j(i, j)? * &e.h_minus_e()?));
                v.push(Check::new(format!("[x{i}(H-E),x{j}(H-E)]"), comm(&e.xhe(i)?, &e.xhe(j)?), rhs));
            }
            Ok(v)
        }),
        spec("COMA.MIXED", PAIRS, |e| {
            let mut v = Vec::new();
            for (i, j) in e.pairs() {
                let lhs = &comm(&e.g(G::B(i))?, &e.xhe(j)?) + &comm(&e.xhe(i)?, &e.g(G::B(j))?);
                let rhs = -&times_i(&(&e.j(i, j)? * &e.h_minus_e()?));
                v.push(Check::new(format!("mixed ({i},{j})"), lhs, rhs));
            }
            Ok(v)
        }),
        spec("COMA.BX", ALL, |e| {
            let mut v = Vec::new();
            let two_e = &e.q(2, 1) * &e.e();
            for i in e.idx() {
                for j in e.idx() {
                    let lhs = comm(&e.g(G::B(i))?, &e.x(j)?);
                    let combo = &(&(&e.one() - &two_e) * &e.g(G::A(i))?) + &(&(&e.one() + &two_e) * &e.g(G::M(i))?);
                    let via_am = &e.q(1, 2) * &comm(&combo, &(&e.g(G::M(j))? - &e.g(G::A(j))?));
                    let mut closed = -&times_i(&e.j(i, j)?);
                    if delta(i, j) {
                        closed = &closed + &times_i(&(&e.g(G::T)? * &e.f(i)?));
                    }
                    v.push(Check::new(format!("[B({i}),x{j}] via A, M"), lhs.clone(), via_am));
                    v.push(Check::new(format!("[B({i}),x{j}]"), lhs, closed));
                }
            }
            Ok(v)
        }),
        spec("REFA", ALL, |e| {
            let mut v = Vec::new();
            for i in e.idx() {
                for (j, k) in e.upper_pairs() {
                    v.push(reflection_check(&e.refl(i)?, &e.j(j, k)?, i == j || i == k, format!("R{i},J({j},{k})")));
                }
                for j in e.idx() {
                    v.push(reflection_check(&e.refl(i)?, &e.g(G::Atilde(j))?, i == j, format!("R{i},At({j})")));
                }
            }
            Ok(v)
        }),
        spec("CYC.A", TRIPLES, |e| cyclic(e, G::Atilde)),
        spec("ASQ", HEAVY, |e| {
            let rhs = &(&(&e.q(2, 1) * &e.g(G::H)?) * &e.jsq_shifted()?) + &e.alpha().pow(2);
            Ok(vec![Check::new("At^2", a_squared(e)?, rhs)])
        }),
        spec("ASQ.XX", HEAVY, |e| {
            let mut lhs = e.zero();
            for i in e.idx() {
                lhs = &lhs + &(&e.xhe(i)? * &e.xhe(i)?);
            }
            Ok(vec![Check::new("x(H-E).x(H-E)", lhs, asq_xx_expansion(e))])
        }),
        spec("ASQ.BX", HEAVY, |e| {
            let mut lhs = e.zero();
            for i in e.idx() {
                lhs = &lhs + &acomm_ordered(&e.g(G::B(i))?, &e.xhe(i)?);
            }
            Ok(vec![Check::new("B.x(H-E) + x(H-E).B", lhs, asq_bx_expansion(e))])
        }),
        spec("ASQ.SUM", HEAVY, |e| {
            let d = e.d() as i64;
            let tail = &e.q(d - 2, 1) + &(&e.q(2, 1) * &e.mur());
            let bracket =
                &(&(&(-&(&e.x2() * &e.lap())) + &e.xd().pow(2)) + &(&e.xd() * &tail)) + &e.shifted(d - 1).pow(2);
            let factor = &(-&e.lap()) - &(&(&e.q(2, 1) * &e.alpha()) * &e.r(-1));
            let rhs = &(&bracket * &factor) + &e.alpha().pow(2);
            Ok(vec![Check::new("At^2 factorized", a_squared(e)?, rhs)])
        }),
        spec("GEN.AT", ALL, |e| {
            let mut v = Vec::new();
            for i in e.idx() {
                let a = e.g(G::Atilde(i))?;
                let sum = &e.g(G::B(i))? + &e.xhe(i)?;
                v.push(Check::new(format!("At({i}) from B"), a.clone(), sum));
                for form in [DisplayedForm::DerivativeFirst, DisplayedForm::DerivativeLast] {
                    v.push(Check::new(format!("At({i}) {form:?}"), e.m.atilde_displayed(i, form)?, a.clone()));
                }
            }
            Ok(v)
        }),
    ]
}

/// `a b + b a` written out, to mirror the printed sum.
fn acomm_ordered(a: &Operator, b: &Operator) -> Operator {
    &(a * b) + &(b * a)
}

fn a_squared(e: &Env) -> Result<Operator> {
    let mut s = e.zero();
    for i in e.idx() {
        s = &s + &e.g(G::Atilde(i))?.pow(2);
    }
    Ok(s)
}

fn asq_xx_expansion(e: &Env) -> Operator {
    let d = e.d() as i64;
    let (lap, xd, en, x2, al) = (e.lap(), e.xd(), e.e(), e.x2(), e.alpha());
    let x2lap = &x2 * &lap;
    let mut s = &e.q(1, 4) * &(&x2 * &lap.pow(2));
    s = &s + &(&e.q(1, 2) * &(&xd * &lap));
    let paren = &(&x2lap + &(&e.q(2, 1) * &xd)) + &e.shifted(d - 1);
    s = &s + &(&paren * &(&al * &e.r(-1)));
    s = &s + &al.pow(2);
    let e_paren = &(&x2lap + &xd) + &(&(&e.q(2, 1) * &al) * &e.r(1));
    s = &s + &(&en * &e_paren);
    &s + &(&en.pow(2) * &x2)
}

fn asq_bx_expansion(e: &Env) -> Operator {
    let (lap, xd, en, x2, al) = (e.lap(), e.xd(), e.e(), e.x2(), e.alpha());
    let block = e.asq_block();
    let xd2 = xd.pow(2);
    let two = e.q(2, 1);
    let mut s = &e.q(1, 2) * &(&x2 * &lap.pow(2));
    s = &s - &(&(&xd2 + &block) * &lap);
    let coulomb = &(&(&x2 * &lap) - &(&two * &xd2)) - &(&two * &block);
    s = &s + &(&coulomb * &(&al * &e.r(-1)));
    let energy = &(&(&(-&two) * &xd2) - &(&two * &block)) - &(&(&two * &al) * &e.r(1));
    s = &s + &(&en * &energy);
    &s - &(&(&two * &en.pow(2)) * &x2)
}

fn reduction() -> Vec<IdentitySpec> {
    vec![spec("RED", &[3], |e| {
        let mut bindings = e.m.config().bindings.clone();
        for i in e.idx() {
            bindings.insert(Param::Mu(i), crate::coeff::rat(0, 1));
        }
        let m = Model::new(ModelConfig::with_bindings(e.d(), bindings)?);
        let c = Env::new(&m);
        let mut v = Vec::new();
        for i in c.idx() {
            v.push(Check::new(format!("1+2mu{i}R{i} at mu=0"), c.f(i)?, c.one()));
        }
        for (i, j) in c.pairs() {
            let rhs = &(&c.q(-2, 1) * &c.g(G::H)?) * &times_i(&c.j(i, j)?);
            v.push(Check::new(format!("[At({i}),At({j})]"), comm(&c.g(G::Atilde(i))?, &c.g(G::Atilde(j))?), rhs));
        }
        v.extend(cyclic(&c, G::Atilde)?);
        let rhs = &(&(&c.q(2, 1) * &c.g(G::H)?) * &(&c.g(G::Jsq)? + &c.one())) + &c.alpha().pow(2);
        v.push(Check::new("At^2", a_squared(&c)?, rhs));
        v.extend(classical_lrl(&c)?);
        // products reintroduce formal mu through the Dunkl relations
        let b = &m.config().bindings;
        Ok(v.into_iter().map(|k| Check::new(k.label, k.lhs.substitute(b), k.rhs.substitute(b))).collect())
    })]
}

/// `At_i = x_i p^2 - p_i (x.p) - alpha x_i / r = ((p x J) - (J x p))_i / 2 - alpha x_i / r`
/// with `p = -i D` and `J = x x p`.
fn classical_lrl(c: &Env) -> Result<Vec<Check>> {
    let minus_i = -GaussianRational::i();
    let p = |k: usize| -> Result<Operator> { Ok(c.dk(k)?.scale(&minus_i)) };
    let mut v = Vec::new();
    let xp: Operator = (1..=3).map(|k| Ok(&c.x(k)? * &p(k)?)).sum::<Result<Operator>>()?;
    let p2: Operator = (1..=3).map(|k| Ok(p(k)?.pow(2))).sum::<Result<Operator>>()?;
    // J_1 = J_23, J_2 = J_31, J_3 = J_12
    let jvec = |k: usize| -> Result<Operator> {
        match k {
            1 => c.j(2, 3),
            2 => c.j(3, 1),
            _ => c.j(1, 2),
        }
    };
    let cross =
        |a: &dyn Fn(usize) -> Result<Operator>, b: &dyn Fn(usize) -> Result<Operator>, i: usize| -> Result<Operator> {
            let (j, k) = (i % 3 + 1, (i + 1) % 3 + 1);
            Ok(&(&a(j)? * &b(k)?) - &(&a(k)? * &b(j)?))
        };
    for i in 1..=3 {
        let coulomb = &(&c.alpha() * &c.x(i)?) * &c.r(-1);
        let a = c.g(G::Atilde(i))?;
        let textbook = &(&(&c.x(i)? * &p2) - &(&p(i)? * &xp)) - &coulomb;
        let pj = cross(&p, &jvec, i)?;
        let jp = cross(&jvec, &p, i)?;
        let vector_form = &(&c.q(1, 2) * &(&pj - &jp)) - &coulomb;
        v.push(Check::new(format!("At({i}) classical"), a.clone(), textbook));
        v.push(Check::new(format!("At({i}) cross products"), a, vector_form));
    }
    Ok(v)
}
