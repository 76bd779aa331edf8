mod common;

use pseudoeq::proofs::{check_script, parse_script, RejectReason};

#[test]
fn mutated_corpus_steps_are_rejected_where_they_were_broken() {
    let controls = common::negative_controls();
    assert!(controls.len() >= 10);
    for (file, id, what, text) in controls {
        let script = parse_script(&text).unwrap_or_else(|e| panic!("{file} ({what}): {e}"));
        match check_script(&script) {
            Ok(_) => panic!("{file}: {what} was accepted"),
            Err(r) => assert_eq!(r.step, id, "{file}: {what}: {r}"),
        }
    }
}

#[test]
fn refl_of_distinct_sides_is_rejected() {
    let script = parse_script("sig monoid\nstep s1 = refl x : x = y\ngoal: x = y\n").unwrap();
    let r = check_script(&script).unwrap_err();
    assert_eq!(r.step, "s1");
    assert!(
        matches!(r.reason, RejectReason::AnnotationMismatch { .. }),
        "{r}"
    );
}

#[test]
fn missing_goal_step_is_reported() {
    let text = common::corpus_file("tA_basis.psf").replace("goal: x x^w = x^w", "goal: x x^w = x");
    let r = check_script(&parse_script(&text).unwrap()).unwrap_err();
    assert_eq!(r.step, "goal");
}

#[test]
fn limit_of_a_closed_step_is_rejected() {
    let text = common::corpus_file("tR_xy_omega_x_omega.psf")
        .replace("goal:", "step bad = limit s4\ngoal:");
    let r = check_script(&parse_script(&text).unwrap()).unwrap_err();
    assert_eq!(r.step, "bad");
    assert_eq!(r.reason, RejectReason::NotSchematic);
}

#[test]
fn hypothesis_with_parameter_is_rejected() {
    let script = parse_script("sig monoid\nhyp h: x^k = x\nstep s = hyp h\ngoal: x = x\n").unwrap();
    let r = check_script(&script).unwrap_err();
    assert_eq!(r.reason, RejectReason::SchematicHypothesis("h".into()));
}
