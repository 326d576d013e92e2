//! Named machines used throughout the crate and its examples.

use crate::mealy::MealyAutomaton;
use std::sync::Arc;

/// The 3-state bireversible self-dual machine over `{1,2,3}` whose states
/// generate the lamplighter group `Z3 wr Z`:
///
/// ```text
/// a = (a, b, c) (2,3)
/// b = (c, a, b) (1,3)
/// c = (b, c, a) (1,2)
/// ```
pub fn lamplighter_automaton() -> Arc<MealyAutomaton> {
    MealyAutomaton::build(
        &["a", "b", "c"],
        &["1", "2", "3"],
        &[
            (&["a", "b", "c"], &[&["2", "3"]]),
            (&["c", "a", "b"], &[&["1", "3"]]),
            (&["b", "c", "a"], &[&["1", "2"]]),
        ],
    )
    .expect("the built-in machine is well formed")
    .shared()
}

/// The one-state identity machine over an alphabet of `d` letters.
pub fn identity_automaton(d: usize) -> Arc<MealyAutomaton> {
    let alphabet: Vec<String> = (1..=d).map(|i| i.to_string()).collect();
    let alphabet_refs: Vec<&str> = alphabet.iter().map(|s| s.as_str()).collect();
    let sections = vec!["e"; d];
    MealyAutomaton::build(&["e"], &alphabet_refs, &[(&sections, &[])])
        .expect("the identity machine is well formed")
        .shared()
}

/// A two-state reset machine with bijective output rows: every transition
/// leads to `t`, so the machine is invertible but not bireversible.
pub fn reset_automaton() -> MealyAutomaton {
    MealyAutomaton::build(
        &["s", "t"],
        &["1", "2"],
        &[(&["t", "t"], &[&["1", "2"]]), (&["t", "t"], &[])],
    )
    .expect("the reset machine is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_machines_are_well_formed() {
        let a = lamplighter_automaton();
        assert_eq!(a.states(), &["a", "b", "c"]);
        assert_eq!(a.alphabet(), &["1", "2", "3"]);
        let e = identity_automaton(3);
        assert_eq!(e.state_count(), 1);
        assert_eq!(e.alphabet_len(), 3);
        assert_eq!(reset_automaton().state_count(), 2);
    }
}
