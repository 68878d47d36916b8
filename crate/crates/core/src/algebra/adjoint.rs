//! Formal adjoints.
//!
//! With respect to the measure `prod |x_i|^(2 mu_i) dx` the generators satisfy
//! `x_i^+ = x_i`, `r^+ = r`, `R_i^+ = R_i` and `D_i^+ = -D_i`. The Sturmian
//! weight `1/r` on top of that measure conjugates the result by `r`.

use super::{NormalMonomial, Operator};

impl Operator {
    /// Adjoint for the measure `prod |x_i|^(2 mu_i) dx`.
    pub fn adjoint_unweighted(&self) -> Operator {
        let dim = self.dim;
        let mut out = Operator::zero(dim);
        for (m, c) in &self.terms {
            let mut refl = NormalMonomial::identity(dim);
            refl.refl = m.refl.clone();
            let mut derivs = NormalMonomial::identity(dim);
            derivs.d = m.d.clone();
            let mut func = NormalMonomial::identity(dim);
            func.x = m.x.clone();
            func.r = m.r;

            // (x^a r^k D^b R^s)^+ = R^s (-D)^b r^k x^a
            let word = &Operator::monomial(refl) * &(&Operator::monomial(derivs) * &Operator::monomial(func));
            let mut coeff = c.conj();
            if m.d_degree() % 2 == 1 {
                coeff = -&coeff;
            }
            out = &out + &word.scalar_mul(&coeff).expect("same dimension");
        }
        out
    }

    /// Adjoint for the measure `r^-1 prod |x_i|^(2 mu_i) dx`, i.e.
    /// `X -> r X^+ r^-1` with `X^+` the unweighted adjoint.
    pub fn adjoint(&self) -> Operator {
        let dim = self.dim;
        let r = Operator::r_pow(dim, 1);
        let r_inv = Operator::r_pow(dim, -1);
        &(&r * &self.adjoint_unweighted()) * &r_inv
    }
}
