use hyperaut_core::bounds::{
    check_inequality, scan_parameters, scan_threshold, Branch, ExternalConstants,
};

fn verdict(name: &str, p: u64) -> Option<bool> {
    check_inequality(name, p, &ExternalConstants::new()).unwrap().holds
}

#[test]
fn thresholds_are_tight_below() {
    assert_eq!(verdict("HA-prime", 137), Some(false));
    assert_eq!(verdict("HA-prime", 139), Some(true));
    assert_eq!(verdict("HA-general", 102 * 102), Some(false));
    assert_eq!(verdict("HA-general", 103 * 103), Some(true));
    assert_eq!(verdict("PA-decomposable", 102 * 102), Some(false));
    assert_eq!(verdict("PA-decomposable", 103 * 103), Some(true));
    assert_eq!(verdict("PA", 35 * 35), Some(false));
    assert_eq!(verdict("PA", 36 * 36), Some(true));
    assert_eq!(verdict("PA-PSL2(7)", 2), Some(false));
}

#[test]
fn tw_holds_well_below_its_threshold() {
    assert_eq!(verdict("TW", 50 * 50), Some(true));
    assert_eq!(verdict("TW", 10 * 10), Some(false));
}

#[test]
fn odd_powers_of_eight_use_three_factor_branch() {
    let c = ExternalConstants::new();
    for l in 4..=8u64 {
        let v = check_inequality("PA-PSL2(7)", l, &c).unwrap();
        let want = if l % 2 == 0 { Branch::Square } else { Branch::ThreeOrMore };
        assert_eq!(v.branch, Some(want), "l = {l}");
        assert_eq!(v.holds, Some(true));
    }
}

#[test]
fn scan_is_pointwise() {
    let c = ExternalConstants::new();
    let ps = scan_parameters("HA-prime", 100, 160).unwrap();
    let r = scan_threshold("HA-prime", ps, &c).unwrap();
    assert_eq!(r.failures(), [101, 103, 107, 109, 113, 127, 131, 137]);
    assert!(r.undecided().is_empty());
}
