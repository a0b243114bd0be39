use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::*;
use crate::classify::classify;
use crate::gallery::{
    ad_certificate, ad_inclusion, build_ad_family, pair_leq as gallery_pair_leq, pair_leq_generating,
    two_step_certificate, two_step_inclusion, TwoStepCodomain, COLUMN, ROW,
};
use crate::oracle::Corpus;

/// Wraps a cpo and declares `a <= c` false for one triple `a <= b <= c`.
struct CorruptedOrder<C> {
    inner: C,
    a: Term,
    c: Term,
}

impl<C: SymbolicCpo> SymbolicCpo for CorruptedOrder<C> {
    fn name(&self) -> &str {
        "corrupted"
    }
    fn well_formed(&self, t: &Term) -> bool {
        self.inner.well_formed(t)
    }
    fn bottom(&self) -> Term {
        self.inner.bottom()
    }
    fn leq_unchecked(&self, x: &Term, y: &Term) -> bool {
        !(*x == self.a && *y == self.c) && self.inner.leq_unchecked(x, y)
    }
    fn enumerate(&self, fuel: usize) -> Vec<Term> {
        self.inner.enumerate(fuel)
    }
    fn families(&self) -> Vec<&dyn ChainFamily> {
        self.inner.families()
    }
    fn adequacy(&self) -> &str {
        self.inner.adequacy()
    }
}

fn pair(m: u64, n: u64) -> Term {
    Term::Pair(Ext::Finite(m), n)
}

fn inf(n: u64) -> Term {
    Term::Pair(Ext::Infinity, n)
}

#[test]
fn two_step_order() {
    let c = TwoStepCodomain::default();
    assert!(term_leq(&c, &pair(3, 5), &inf(5)).unwrap());
    assert!(term_leq(&c, &inf(2), &inf(7)).unwrap());
    assert!(!term_leq(&c, &pair(3, 5), &pair(4, 6)).unwrap());
    assert!(!term_leq(&c, &pair(4, 6), &pair(3, 5)).unwrap());
    assert!(term_leq(&c, &pair(3, 5), &inf(6)).unwrap());
    assert!(!term_leq(&c, &pair(3, 5), &inf(4)).unwrap());
    assert!(!term_leq(&c, &inf(5), &pair(9, 5)).unwrap());
    assert!(c.enumerate(64).iter().all(|t| term_leq(&c, t, &Term::Top).unwrap()));
    assert!(matches!(term_leq(&c, &Term::Point(0), &Term::Top), Err(crate::Error::IllFormedTerm(_))));
}

#[test]
fn shipped_examples_validate_at_default_and_quadruple_fuel() {
    let iota = two_step_inclusion();
    let family = Arc::new(build_ad_family(16).unwrap());
    let f01 = ad_inclusion(&family);
    for fuel in [DEFAULT_FUEL, 4 * DEFAULT_FUEL] {
        for c in [iota.source(), iota.target(), f01.source(), f01.target()] {
            let r = validate_symbolic(c, fuel);
            assert!(r.passed(), "{}", r);
        }
        assert!(validate_map(&iota, fuel).passed());
        assert!(validate_map(&f01, fuel).passed());
    }
}

#[test]
fn planted_transitivity_fault_is_caught() {
    let bad = CorruptedOrder { inner: TwoStepCodomain::default(), a: Term::Bottom, c: Term::Top };
    let r = validate_symbolic(&bad, DEFAULT_FUEL);
    assert_eq!(r.get("order.transitive"), Some(false));
    assert!(!r.passed());
    assert!(r.to_string().contains("check.order.transitive=fail"));
}

/// The two-step codomain ordered by its generating relation only.
struct GeneratingOrderOnly(TwoStepCodomain);

impl SymbolicCpo for GeneratingOrderOnly {
    fn name(&self) -> &str {
        "generating-only"
    }
    fn well_formed(&self, t: &Term) -> bool {
        self.0.well_formed(t)
    }
    fn bottom(&self) -> Term {
        Term::Bottom
    }
    fn leq_unchecked(&self, x: &Term, y: &Term) -> bool {
        match (x, y) {
            (Term::Pair(m, n), Term::Pair(m2, n2)) => pair_leq_generating((*m, *n), (*m2, *n2)),
            _ => self.0.leq_unchecked(x, y),
        }
    }
    fn enumerate(&self, fuel: usize) -> Vec<Term> {
        self.0.enumerate(fuel)
    }
    fn families(&self) -> Vec<&dyn ChainFamily> {
        self.0.families()
    }
    fn adequacy(&self) -> &str {
        self.0.adequacy()
    }
}

#[test]
fn generating_relation_is_not_transitive() {
    let r = validate_symbolic(&GeneratingOrderOnly(TwoStepCodomain::default()), DEFAULT_FUEL);
    assert_eq!(r.get("order.transitive"), Some(false));
    assert_eq!(r.get("order.reflexive"), Some(true));
    assert!(pair_leq_generating((Ext::Finite(0), 0), (Ext::Infinity, 0)));
    assert!(pair_leq_generating((Ext::Infinity, 0), (Ext::Infinity, 1)));
    assert!(!pair_leq_generating((Ext::Finite(0), 0), (Ext::Infinity, 1)));
    assert!(gallery_pair_leq((Ext::Finite(0), 0), (Ext::Infinity, 1)));
}

#[test]
fn reports_are_deterministic() {
    let c = TwoStepCodomain::default();
    assert_eq!(validate_symbolic(&c, 64).to_string(), validate_symbolic(&c, 64).to_string());
}

#[test]
fn two_step_closure_needs_two_stages() {
    let iota = two_step_inclusion();
    let v = symbolic_is_epi(&iota, &two_step_certificate(), DEFAULT_FUEL).unwrap();
    assert!(v.epi && v.mono && !v.surjective && !v.iso);
    assert_eq!(v.closure.closure_stage, 2);
    assert_eq!(v.closure.refuted, alloc::vec![(Term::Top, 1)]);
    assert!(v.to_string().contains("caveat=sound relative"));

    let w = symbolic_is_epi(&iota, &two_step_certificate(), 4 * DEFAULT_FUEL).unwrap();
    assert_eq!(w.epi, v.epi);
    assert_eq!(w.closure.closure_stage, v.closure.closure_stage);
}

#[test]
fn full_carrier_start_closes_at_stage_zero() {
    let c = TwoStepCodomain::default();
    let all = Stage::new("all", [TermClass::Bottom, TermClass::Top, TermClass::FinitePair, TermClass::InfinitePair]);
    let cert = StageCertificate { stages: alloc::vec![all.clone()], witnesses: Vec::new(), refutations: Vec::new() };
    let v = symbolic_closure_verify(&c, &all, &cert, DEFAULT_FUEL).unwrap();
    assert_eq!(v.closure_stage, 0);
    assert!(v.full_carrier);

    let id = Inclusion::identity(Arc::new(TwoStepCodomain::default()));
    let v = symbolic_is_epi(&id, &cert, DEFAULT_FUEL).unwrap();
    assert!(v.epi && v.iso);
    assert_eq!(v.closure.closure_stage, 0);
}

#[test]
fn certificate_faults_are_reported() {
    let iota = two_step_inclusion();

    let mut gap = two_step_certificate();
    gap.refutations[0].cases.retain(|(id, _)| *id == ROW);
    assert!(matches!(symbolic_is_epi(&iota, &gap, 64), Err(crate::Error::CertificateGap { .. })));

    let mut wrong_case = two_step_certificate();
    wrong_case.refutations[0].cases =
        alloc::vec![(ROW, RefutationCase::NotContained), (COLUMN, RefutationCase::NotContained)];
    assert!(matches!(symbolic_is_epi(&iota, &wrong_case, 64), Err(crate::Error::WitnessInvalid(_))));

    // Skipping the middle stage leaves the top without a chain inside the image.
    let mut short = two_step_certificate();
    short.stages.remove(1);
    short.witnesses.remove(0);
    short.refutations.clear();
    assert!(symbolic_is_epi(&iota, &short, 64).is_err());

    // A one-stage certificate whose only stage is the image is not closed.
    let mut one = two_step_certificate();
    one.stages.truncate(1);
    one.witnesses.clear();
    one.refutations.clear();
    assert!(matches!(symbolic_is_epi(&iota, &one, 64), Err(crate::Error::StageMismatch(_))));

    // Refuting a member.
    let mut member = two_step_certificate();
    member.refutations[0].term = inf(3);
    assert!(matches!(symbolic_is_epi(&iota, &member, 64), Err(crate::Error::WitnessInvalid(_))));
}

#[test]
fn ad_step_closes_at_stage_one() {
    let family = Arc::new(build_ad_family(16).unwrap());
    let f01 = ad_inclusion(&family);
    let v = symbolic_is_epi(&f01, &ad_certificate(), DEFAULT_FUEL).unwrap();
    assert!(v.epi && v.mono && v.injective && !v.order_reflecting && !v.iso);
    assert_eq!(v.closure.closure_stage, 1);
}

#[test]
fn finite_lift_agrees_with_classification() {
    let corpus = Corpus::up_to(4).unwrap();
    for f in corpus.all_maps().unwrap() {
        let epi = classify(&f).epi;
        let lift = FiniteLiftMap::new(f.clone());
        let v = symbolic_is_epi(&lift, &finite_certificate(&lift), DEFAULT_FUEL).unwrap();
        assert_eq!(v.epi, epi, "{:?}", f.table());
        assert_eq!(v.mono, f.is_injective());
        assert_eq!(v.iso, classify(&f).iso);
        assert_eq!(v.closure.closure_stage, 0);
    }
}
