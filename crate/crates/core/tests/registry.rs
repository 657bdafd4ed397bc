use binomat::verify::{Identity, IdentityRegistry, Status, SweepParams, VerificationReport};
use std::collections::HashSet;

#[test]
fn ids_are_unique_and_listed() {
    let reg = IdentityRegistry::builtin();
    let ids = reg.ids();
    assert_eq!(ids.len(), 20);
    assert_eq!(ids.iter().collect::<HashSet<_>>().len(), ids.len());
    for id in &ids {
        assert_eq!(reg.get(id).unwrap().id(), *id);
    }
    assert!(reg.get("no-such-identity").is_none());
}

#[test]
fn every_identity_passes_on_small_grids() {
    let reg = IdentityRegistry::builtin();
    let params = SweepParams {
        n_max: Some(6),
        a_range: Some((-2, 2)),
        k_max: Some(5),
    };
    for report in reg.run_all(&params) {
        assert!(report.passed(), "{report}");
        assert!(report.checked > 0, "{}", report.identity_id);
    }
}

#[test]
fn report_json_is_deterministic() {
    let reg = IdentityRegistry::builtin();
    let params = SweepParams {
        n_max: Some(8),
        ..SweepParams::default()
    };
    let a = reg.get("det-m2-leading").unwrap().run(&params);
    let b = reg.get("det-m2-leading").unwrap().run(&params);
    let ja = serde_json::to_string(&a).unwrap();
    assert_eq!(ja, serde_json::to_string(&b).unwrap());
    let v: serde_json::Value = serde_json::from_str(&ja).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["identity_id"], "det-m2-leading");
    assert!(v.get("elapsed").is_none());
}

struct AlwaysWrong;

impl Identity for AlwaysWrong {
    fn id(&self) -> &'static str {
        "always-wrong"
    }
    fn description(&self) -> &'static str {
        "a failing stand-in"
    }
    fn run(&self, _params: &SweepParams) -> VerificationReport {
        let mut r = IdentityRegistry::builtin()
            .get("gram")
            .unwrap()
            .run(&SweepParams {
                n_max: Some(2),
                ..SweepParams::default()
            });
        r.identity_id = "always-wrong".into();
        r.status = Status::Fail;
        r
    }
}

#[test]
fn custom_identities_can_be_registered() {
    let mut reg = IdentityRegistry::new();
    reg.register(AlwaysWrong);
    let reports = reg.run_all(&SweepParams::default());
    assert_eq!(reports.len(), 1);
    assert!(!reports[0].passed());
}

#[test]
#[should_panic(expected = "registered twice")]
fn duplicate_registration_panics() {
    let mut reg = IdentityRegistry::new();
    reg.register(AlwaysWrong);
    reg.register(AlwaysWrong);
}
