//! The function-space action as an independent check of the rewrite engine.

mod common;

use common::{random_light_operator, rng};
use dunkl_coulomb::algebra::Operator;
use dunkl_coulomb::coeff::{rat, GaussianRational, Param, Scalar};
use dunkl_coulomb::funcspace::{apply, func_equal, random_basis, RFunction, XPoly};
use dunkl_coulomb::generators::{GeneratorId, Model};
use dunkl_coulomb::verify::catalog;

#[test]
fn products_act_as_compositions() {
    let mut cases = 0;
    for dim in 1..=3 {
        let basis = random_basis(dim, 6, 100 + dim as u64);
        let mut r = rng(dim as u64);
        for k in 0..40 {
            let x = random_light_operator(&mut r, dim);
            let y = random_light_operator(&mut r, dim);
            let f = &basis[k % basis.len()];
            let composed = apply(&x, &apply(&y, f).unwrap()).unwrap();
            let direct = apply(&(&x * &y), f).unwrap();
            assert!(func_equal(&composed, &direct).unwrap(), "d={dim} case {k}: X={x} Y={y}");
            cases += 1;
        }
    }
    assert!(cases >= 100);
}

#[test]
fn hand_computed_actions() {
    let d = 2;
    let x1 = RFunction::from_poly(XPoly::var(d, 1).unwrap());
    let d1 = Operator::dunkl(d, 1).unwrap();
    // D1 x1 = 1 + 2 mu1
    let one_plus = &Scalar::from_int(d, 1) + &(&Scalar::from_int(d, 2) * &Scalar::param(d, Param::Mu(1)).unwrap());
    let want = RFunction::from_poly(XPoly::constant(one_plus));
    assert!(func_equal(&apply(&d1, &x1).unwrap(), &want).unwrap());
    // D1 r^-1 = -x1 r^-3, r^-1 being even in x1
    let got = apply(&d1, &RFunction::r_pow(d, -1)).unwrap();
    let want = RFunction::from_poly(XPoly::var(d, 1).unwrap()).times_r_pow(-3).scale(&Scalar::from_int(d, -1));
    assert!(func_equal(&got, &want).unwrap());
    // T r^k = -i (k + (d-1)/2 + mu1 + mu2) r^k
    let m = Model::symbolic(d).unwrap();
    let t = m.build(GeneratorId::T).unwrap();
    for k in [-2, -1, 1, 3] {
        let f = RFunction::r_pow(d, k);
        let mut c = Scalar::from_rational(d, rat(2 * k as i64 + 1, 2));
        c = &c + &Scalar::param(d, Param::Mu(1)).unwrap();
        c = &c + &Scalar::param(d, Param::Mu(2)).unwrap();
        let want = f.scale(&c.scale(&-GaussianRational::i()));
        assert!(func_equal(&apply(&t, &f).unwrap(), &want).unwrap(), "k={k}");
    }
}

/// Each catalog relation, applied side by side to test functions. This does
/// not rely on the engine's canonical form at all.
#[test]
fn catalog_sides_agree_on_functions() {
    let mut checked = 0;
    for spec in catalog() {
        for &dim in spec.dims.iter().filter(|&&d| d <= 3) {
            let model = Model::symbolic(dim).unwrap();
            let basis = random_basis(dim, 3, 7);
            for check in (spec.builder)(&model).unwrap() {
                for f in &basis {
                    let same = func_equal(&apply(&check.lhs, f).unwrap(), &apply(&check.rhs, f).unwrap()).unwrap();
                    let expected = spec.expect == dunkl_coulomb::verify::Expect::Zero;
                    if expected {
                        assert!(same, "{} d={dim} {}", spec.id, check.label);
                    }
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 1000, "{checked}");
}
