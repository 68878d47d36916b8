use super::*;
use crate::coeff::{rat, Bindings, GaussianRational, Param, Scalar};
use crate::generators::{GeneratorId, Model};

fn x(d: usize, i: usize) -> Operator {
    Operator::x(d, i).unwrap()
}

fn dk(d: usize, i: usize) -> Operator {
    Operator::dunkl(d, i).unwrap()
}

fn refl(d: usize, i: usize) -> Operator {
    Operator::reflection(d, i).unwrap()
}

fn mu(d: usize, i: usize) -> Operator {
    Operator::scalar(Scalar::param(d, Param::Mu(i)).unwrap())
}

fn one_plus_two_mu_r(d: usize, i: usize) -> Operator {
    &Operator::one(d) + &(&(&Operator::from_int(d, 2) * &mu(d, i)) * &refl(d, i))
}

fn mono(op: &Operator) -> NormalMonomial {
    assert_eq!(op.len(), 1);
    op.terms().next().unwrap().0.clone()
}

#[test]
fn dunkl_past_coordinate() {
    for d in 1..=3 {
        let got = mono_mul(&mono(&dk(d, 1)), &mono(&x(d, 1))).unwrap();
        let want = &(&x(d, 1) * &dk(d, 1)) + &one_plus_two_mu_r(d, 1);
        assert_eq!(got, want, "d={d}");
    }
}

#[test]
fn reflection_past_coordinate() {
    let got = mono_mul(&mono(&refl(2, 1)), &mono(&x(2, 1))).unwrap();
    assert_eq!(got, -&(&x(2, 1) * &refl(2, 1)));
    // different index commutes
    let got = mono_mul(&mono(&refl(2, 1)), &mono(&x(2, 2))).unwrap();
    assert_eq!(got.len(), 1);
    assert_eq!(got, &x(2, 2) * &refl(2, 1));
}

#[test]
fn dunkl_past_inverse_radius() {
    for d in 1..=3 {
        let r1 = Operator::r_pow(d, -1);
        let got = &dk(d, 1) * &r1;
        let want = &(&r1 * &dk(d, 1)) - &(&x(d, 1) * &Operator::r_pow(d, -3));
        assert_eq!(got, want, "d={d}");
    }
}

#[test]
fn product_counts_steps() {
    let (_, stats) = mono_mul_counted(&mono(&dk(1, 1)), &mono(&x(1, 1))).unwrap();
    assert!(stats.steps >= 1);
    let (_, stats) = mono_mul_counted(&NormalMonomial::identity(1), &mono(&x(1, 1))).unwrap();
    assert_eq!(stats.steps, 0);
}

#[test]
fn arithmetic_examples() {
    let d = 1;
    assert_eq!(&(&dk(d, 1) * &x(d, 1)) - &(&x(d, 1) * &dk(d, 1)), one_plus_two_mu_r(d, 1));
    let t = Model::symbolic(2).unwrap().build(GeneratorId::T).unwrap();
    assert!((&t + &(&Operator::from_int(2, -1) * &t)).is_zero());
    let xr = &x(2, 1) * &Operator::r_pow(2, 1);
    assert_eq!(&xr * &Operator::r_pow(2, -1), x(2, 1));
}

#[test]
fn dimension_mismatch_is_an_error() {
    assert!(x(1, 1).try_arith(&x(2, 1), OpKind::Add).is_err());
    assert!(x(1, 1).try_commutator(&x(2, 1)).is_err());
    assert!(Operator::x(2, 3).is_err());
    assert!(Operator::dunkl(2, 0).is_err());
}

#[test]
fn radial_reduction_is_canonical() {
    // x1^2 + x2^2 is r^2 in two dimensions
    let sum = &x(2, 1).pow(2) + &x(2, 2).pow(2);
    assert_eq!(sum, Operator::r_pow(2, 2));
    assert!(x(2, 2).pow(3).terms().all(|(m, _)| m.x_exp()[1] <= 1));
    assert_eq!(&x(1, 1).pow(2) * &Operator::r_pow(1, -2), Operator::one(1));
}

#[test]
fn commutator_examples() {
    let m = Model::symbolic(2).unwrap();
    let g = |id| m.build(id).unwrap();
    let i_t = g(GeneratorId::T).scale(&GaussianRational::i());
    assert_eq!(g(GeneratorId::Gamma0).commutator(&g(GeneratorId::GammaD1)), i_t);
    assert!(refl(2, 1).commutator(&g(GeneratorId::Gamma0)).is_zero());
    let lhs = g(GeneratorId::A(1)).commutator(&g(GeneratorId::Gamma(1)));
    let rhs = (&g(GeneratorId::GammaD1) * &one_plus_two_mu_r(2, 1)).scale(&GaussianRational::i());
    assert_eq!(lhs, rhs);
}

#[test]
fn adjoint_examples() {
    assert_eq!(x(2, 1).adjoint(), x(2, 1));
    let m = Model::symbolic(3).unwrap();
    let t = m.build(GeneratorId::T).unwrap();
    assert_eq!(t.adjoint(), t);
    // unweighted: (x.D)^dagger = -x.D - d - 2 sum mu R
    let xd = m.x_dot_d();
    let want = &(&(-&xd) - &Operator::from_int(3, 3)) - &(&Operator::from_int(3, 2) * &m.mu_r_sum());
    assert_eq!(xd.adjoint_unweighted(), want);
    let k = m.build(GeneratorId::K).unwrap();
    assert_eq!(k.adjoint().adjoint(), k);
    assert_eq!(k.adjoint_unweighted().adjoint_unweighted(), k);
}

#[test]
fn substitute_examples() {
    let mut b = Bindings::new();
    b.insert(Param::Mu(1), rat(0, 1));
    assert_eq!(one_plus_two_mu_r(2, 1).substitute(&b), Operator::one(2));

    let m = Model::symbolic(2).unwrap();
    let mut e0 = Bindings::new();
    e0.insert(Param::E, rat(0, 1));
    let k0 = m.build(GeneratorId::K).unwrap().substitute(&e0);
    let half = Operator::scalar(Scalar::from_rational(2, rat(1, 2)));
    let combo = &half * &(&m.build(GeneratorId::Gamma0).unwrap() + &m.build(GeneratorId::GammaD1).unwrap());
    assert_eq!(k0, combo);
    let direct = &Operator::scalar(Scalar::from_rational(2, rat(-1, 2))) * &(&Operator::r_pow(2, 1) * &m.laplacian());
    assert_eq!(k0, direct);
}

#[test]
fn weight_split_examples() {
    let m = Model::symbolic(2).unwrap();
    let g0 = m.build(GeneratorId::Gamma0).unwrap();
    let parts = g0.scaling_weight_split();
    assert_eq!(parts.keys().copied().collect::<Vec<_>>(), vec![-1, 1]);
    assert_eq!(parts[&1], &Operator::scalar(Scalar::from_rational(2, rat(1, 2))) * &Operator::r_pow(2, 1));
    assert_eq!(&parts[&-1] + &parts[&1], g0);

    let t = m.build(GeneratorId::T).unwrap();
    assert_eq!(t.scaling_weight_split().keys().copied().collect::<Vec<_>>(), vec![0]);
    let xd = &x(2, 1) * &dk(2, 1);
    assert_eq!(xd.scaling_weight_split()[&0], xd);
}

#[test]
fn rendering_examples() {
    assert_eq!(one_plus_two_mu_r(1, 1).render(Format::Plain), "1 + 2*mu1*R1");
    let op = (&x(2, 1) * &dk(2, 2)).scale(&GaussianRational::i());
    assert_eq!(op.render(Format::Plain), "i*x1*D2");
    assert_eq!(op.render(Format::Latex), "\\mathrm{i} x_{1} D_{2}");
    assert_eq!(Operator::r_pow(2, -1).render(Format::Plain), "r^-1");
    assert_eq!(Operator::zero(2).render(Format::Plain), "0");
}
