use super::*;
use crate::generators::GeneratorId;

fn entry(id: &str, d: usize) -> ReportEntry {
    let spec = catalog().into_iter().find(|s| s.id == id).unwrap();
    run_identity(&spec, &Model::symbolic(d).unwrap(), 0).unwrap()
}

#[test]
fn ids_are_unique() {
    let cat = catalog();
    let mut ids: Vec<&str> = cat.iter().map(|s| s.id.as_str()).collect();
    ids.sort_unstable();
    let n = ids.len();
    ids.dedup();
    assert_eq!(ids.len(), n);
}

#[test]
fn documented_entries() {
    let e = entry("SO21.1", 3);
    assert_eq!((e.status, e.residual_terms), (EntryStatus::PassSyntactic, 0));
    assert!(entry("BSQ", 2).status.is_pass());
    assert!(entry("SODP2", 1).status.is_pass());
}

#[test]
fn filtered_suite() {
    let report = run_suite(&[3], 0, Some("HLP")).unwrap();
    assert_eq!(report.entries.len(), 3);
    assert!(report.all_pass());
    assert!(matches!(run_suite(&[3], 0, Some("ZZZ")), Err(Error::Usage(_))));
    assert!(matches!(run_suite(&[], 0, None), Err(Error::Usage(_))));
}

#[test]
fn suite_order_is_canonical() {
    let report = run_suite(&[2, 1], 0, Some("SO21")).unwrap();
    let keys: Vec<(String, usize)> = report.entries.iter().map(|e| (e.id.clone(), e.d)).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(keys.len(), 6);
}

#[test]
fn oracle_examples() {
    let m = Model::symbolic(2).unwrap();
    let g = |id| m.build(id).unwrap();
    let x = &g(GeneratorId::Gamma0).commutator(&g(GeneratorId::GammaD1))
        - &g(GeneratorId::T).scale(&crate::coeff::GaussianRational::i());
    assert!(oracle_check(&x, 20, 0));
    assert!(!oracle_check(&Operator::dunkl(2, 1).unwrap(), 5, 0));
    assert!(oracle_check(&Operator::zero(2), 5, 0));
}

#[test]
fn associativity_examples() {
    assert_eq!(associativity_fuzz(2, 500, 7).status, EntryStatus::PassSyntactic);
    assert_eq!(associativity_fuzz(1, 100, 7).status, EntryStatus::PassSyntactic);
    let (a, b, c) = (Operator::dunkl(1, 1).unwrap(), Operator::x(1, 1).unwrap(), Operator::r_pow(1, -1));
    assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
}

#[test]
fn reduction_examples() {
    assert_eq!(reduction_check(3).unwrap().status, EntryStatus::PassSyntactic);
    assert!(matches!(reduction_check(2), Err(Error::Precondition(_))));
}

#[test]
fn nonzero_expectations_need_a_witness() {
    let e = entry("STURM.B.DSUM", 2);
    assert_eq!(e.status, EntryStatus::PassOracle);
    assert!(e.residual_terms > 0);
    let vacuous = IdentitySpec::new("X", &[1], |m| Ok(vec![Check::vanishes("zero", Operator::zero(m.dim()))]))
        .expecting_nonzero();
    assert_eq!(run_identity(&vacuous, &Model::symbolic(1).unwrap(), 0).unwrap().status, EntryStatus::Fail);
}

#[test]
fn failures_carry_the_residual() {
    let wrong = IdentitySpec::new("WRONG", &[1], |m| {
        Ok(vec![Check::new("D x = x D", &m.dunkl(1)? * &m.x(1)?, &m.x(1)? * &m.dunkl(1)?)])
    });
    let e = run_identity(&wrong, &Model::symbolic(1).unwrap(), 0).unwrap();
    assert_eq!(e.status, EntryStatus::Fail);
    assert_eq!(e.residual_terms, 2);
    assert_eq!(e.residual.as_deref(), Some("D x = x D: 1 + 2*mu1*R1"));
}

#[test]
fn builder_errors_propagate() {
    let bad = IdentitySpec::new("BAD", &[2], |m| Ok(vec![Check::vanishes("x3", m.x(3)?)]));
    assert!(matches!(run_identity(&bad, &Model::symbolic(2).unwrap(), 0), Err(Error::Index(_))));
    let mut opts = SuiteOptions::new(&[2], 0);
    opts.extra.push(bad);
    opts.filter = Some("BAD".into());
    assert!(run_suite_with(&opts).is_err());
    // outside its dimension list
    let spec = catalog().into_iter().find(|s| s.id == "CYC.B").unwrap();
    assert!(run_identity(&spec, &Model::symbolic(2).unwrap(), 0).is_err());
}

#[test]
fn reports_are_deterministic_up_to_timing() {
    let strip = |mut r: VerificationReport| {
        r.entries.iter_mut().for_each(|e| e.millis = 0);
        r
    };
    let a = strip(run_suite(&[1, 2], 5, Some("STURM")).unwrap());
    let b = strip(run_suite(&[1, 2], 5, Some("STURM")).unwrap());
    assert_eq!(a, b);
    assert_eq!(a.to_json(), b.to_json());
}

#[test]
fn bound_parameters() {
    let mut opts = SuiteOptions::new(&[2], 0);
    opts.filter = Some("COMA".into());
    opts.bindings.insert(crate::coeff::Param::Mu(1), crate::coeff::rat(1, 3));
    opts.bindings.insert(crate::coeff::Param::E, crate::coeff::rat(-1, 2));
    assert!(run_suite_with(&opts).unwrap().all_pass());
}
