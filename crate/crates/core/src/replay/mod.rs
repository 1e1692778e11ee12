//! Scenario replay: parse a scenario, execute its steps with evidence, and
//! emit a transcript.

pub mod engine;
pub mod evidence;
pub mod fs;
pub mod scenario;
pub mod transcript;
pub mod verify;

pub use engine::{run_scenario, RunOptions};
pub use evidence::{Evidence, Status};
pub use scenario::{Action, Requirement, Scenario, Step};
pub use transcript::Transcript;

/// A scenario shipped with the crate and the verdict it must reach.
#[derive(Clone, Copy, Debug)]
pub struct Bundled {
    pub name: &'static str,
    pub text: &'static str,
    pub expect_pass: bool,
}

pub const BUNDLED: [Bundled; 5] = [
    Bundled { name: "A", text: include_str!("../../scenarios/a_blowup.scn"), expect_pass: true },
    Bundled { name: "B", text: include_str!("../../scenarios/b_steps.scn"), expect_pass: true },
    Bundled { name: "B-fail", text: include_str!("../../scenarios/b_fail.scn"), expect_pass: false },
    Bundled { name: "C", text: include_str!("../../scenarios/c_fibers.scn"), expect_pass: true },
    Bundled { name: "D", text: include_str!("../../scenarios/d_xprime.scn"), expect_pass: true },
];

pub fn bundled(name: &str) -> Option<Bundled> {
    BUNDLED.iter().copied().find(|b| b.name.eq_ignore_ascii_case(name))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_scenarios_parse() {
        for b in BUNDLED {
            assert_eq!(Scenario::parse(b.text).unwrap().name, b.name);
        }
    }

    fn replay(name: &str) -> Transcript {
        let text = bundled(name).unwrap().text;
        run_scenario(&Scenario::parse(text).unwrap(), &RunOptions::default()).unwrap()
    }

    #[test]
    fn scenario_a() {
        assert!(replay("A").passed());
    }

    #[test]
    fn scenario_b_records_step_four() {
        let t = replay("B");
        assert!(t.passed());
        let b4 = t.steps.iter().find(|s| s.id == "b4").unwrap();
        assert!(b4.evidence.iter().any(|e| e.claim == "Ext(O(-h), O(-g)) = C[-1]" && e.status == Status::Proved));
    }

    #[test]
    fn scenario_c() {
        assert!(replay("C").passed());
    }

    #[test]
    fn scenario_d() {
        assert!(replay("D").passed());
    }

    #[test]
    fn forced_swap_fails() {
        let t = replay("B-fail");
        assert!(!t.passed());
        assert_eq!(t.steps.last().unwrap().id, "b3");
        assert_eq!(t.steps.last().unwrap().verdict, "FAIL");
    }
}
