//! Model files: resolution, diagnostics and the checks run over a whole file.

use proeuler::format::{check, parse, resolve};
use proeuler::ViolationKind;

fn report_of(src: &str) -> proeuler::Report {
    check(&parse(src).unwrap()).1
}

#[test]
fn every_demo_resolves_and_round_trips() {
    for (name, src) in proeuler::cli::DEMOS {
        let file = parse(src).unwrap();
        assert!(resolve(&file).is_ok(), "{name}");
        assert_eq!(parse(&file.to_string()).unwrap(), file, "{name}");
    }
}

#[test]
fn violations_are_collected_not_short_circuited() {
    let report = report_of(
        "variety X { stratum a class=0 ; stratum a class=1 }\n\
         variety Y { stratum b class=Z }\n\
         morphism f : Y -> W { b -> c fiber=1 }\n",
    );
    for kind in [
        ViolationKind::ZeroClass,
        ViolationKind::DuplicateStratum,
        ViolationKind::UnassignedAtom,
        ViolationKind::Reference,
    ] {
        assert!(report.has(kind), "{kind:?} missing from\n{report}");
    }
}

#[test]
fn uncertifiable_multipliers_are_reported() {
    let report = report_of(
        "variety P1 { stratum p class=1 ; stratum c class=L }\n\
         tower T kind=power base=P1\n\
         multipliers wrong tower=T steps=[3] tail=2 certified\n",
    );
    assert!(report.has(ViolationKind::Certification), "{report}");
}

#[test]
fn zero_multipliers_are_reported() {
    let report = report_of(
        "variety P1 { stratum p class=1 ; stratum c class=L }\n\
         tower T kind=power base=P1\n\
         multipliers z tower=T steps=[0] tail=2\n",
    );
    assert!(report.has(ViolationKind::ZeroMultiplier), "{report}");
}

#[test]
fn functions_resolve_on_tower_levels() {
    let ws = resolve(&parse(proeuler::cli::demo("p1_power").unwrap()).unwrap()).unwrap();
    let entry = ws.function("one3").unwrap();
    assert_eq!(entry.level, Some(("P1N".to_string(), 3)));
    assert!(ws.function("missing").is_err());
    assert!(ws
        .multipliers_for("P1N", proeuler::prolim::Characteristic::Gamma)
        .is_some());
}
