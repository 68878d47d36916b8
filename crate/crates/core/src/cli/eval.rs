use crate::algebra::{OpKind, Operator};
use crate::coeff::{GaussianRational, Scalar};
use crate::error::{Error, Result};
use crate::generators::{GeneratorId, Model};

use super::parse::Expression;

/// Evaluate to canonical normal form, applying the model's bindings.
pub fn evaluate(e: &Expression, model: &Model) -> Result<Operator> {
    let op = eval(e, model)?;
    let bindings = &model.config().bindings;
    Ok(if bindings.is_empty() { op } else { op.substitute(bindings) })
}

fn eval(e: &Expression, m: &Model) -> Result<Operator> {
    use Expression as X;
    let d = m.dim();
    Ok(match e {
        X::Number(q) => Operator::scalar(Scalar::from_rational(d, q.clone())),
        X::Imaginary => Operator::constant(d, GaussianRational::i()),
        X::Param(p) => Operator::scalar(Scalar::param(d, *p)?),
        X::X(i) => m.x(*i)?,
        X::Dunkl(i) => m.dunkl(*i)?,
        X::Reflection(i) => m.reflection(*i)?,
        X::Radial(k) => m.r_pow(*k),
        X::Generator(g) => generator(*g, m)?,
        X::Add(a, b) => eval(a, m)?.try_arith(&eval(b, m)?, OpKind::Add)?,
        X::Sub(a, b) => eval(a, m)?.try_arith(&eval(b, m)?, OpKind::Sub)?,
        X::Mul(a, b) => eval(a, m)?.try_arith(&eval(b, m)?, OpKind::Mul)?,
        X::Div(a, b, pos) => {
            let divisor = eval(b, m)?;
            let inverse = divisor.as_scalar().and_then(|s| s.as_constant()).and_then(|c| c.inv()).ok_or_else(|| {
                Error::Parse {
                    line: pos.line,
                    column: pos.column,
                    message: format!("can only divide by a nonzero constant, not `{divisor}`"),
                }
            })?;
            eval(a, m)?.scale(&inverse)
        }
        X::Neg(a) => -&eval(a, m)?,
        X::Pow(a, n) => eval(a, m)?.pow(*n),
        X::Comm(a, b) => eval(a, m)?.try_commutator(&eval(b, m)?)?,
        X::Acomm(a, b) => eval(a, m)?.try_anticommutator(&eval(b, m)?)?,
        X::Adj(a) => eval(a, m)?.adjoint(),
    })
}

fn generator(g: GeneratorId, m: &Model) -> Result<Operator> {
    match g {
        GeneratorId::J(a, b) if a > b => Ok(-&m.build(GeneratorId::J(b, a))?),
        GeneratorId::L(a, b) => m.build_l(a, b),
        GeneratorId::Metric(a, b) => m.build_metric(a, b),
        other => m.build(other),
    }
}
