//! Cayley ball enumeration with canonical deduplication, and stabilizer
//! probes on boundary points.

use crate::boundary::BoundaryPoint;
use crate::element::CanonicalKey;
use crate::word::{GroupWord, WordError};
use std::collections::HashMap;

/// How ball elements are recognized as already seen.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DedupMode {
    /// Canonical keys of minimized section closures; the fast default.
    CanonicalKey,
    /// Pairwise `equal` against every known representative; quadratic,
    /// kept as an independent cross-check.
    PairwiseEqual,
}

/// Growth of the ball of a generating set.
#[derive(Clone, Debug)]
pub struct BallReport {
    pub radius: u32,
    /// Display names of the declared generators.
    pub generators: Vec<String>,
    /// Cumulative number of distinct elements of word length at most `r`,
    /// indexed by `r`; entry 0 is always 1.
    pub counts: Vec<u64>,
    /// One shortest representative word per element, sorted by key.
    pub representatives: Vec<(CanonicalKey, GroupWord)>,
}

/// Enumerates all group elements of word length at most `radius` over the
/// generators and their inverses, deduplicated by canonical key.
pub fn ball_enumerate(generators: &[GroupWord], radius: u32) -> Result<BallReport, WordError> {
    ball_enumerate_with(generators, radius, DedupMode::CanonicalKey)
}

/// Ball enumeration with an explicit deduplication mode.
///
/// The search is breadth first from the identity; every frontier word is
/// extended by each declared generator and its inverse, interleaved
/// `g, g^-1`, in declaration order, so representatives are reproducible.
pub fn ball_enumerate_with(
    generators: &[GroupWord],
    radius: u32,
    mode: DedupMode,
) -> Result<BallReport, WordError> {
    let Some(first) = generators.first() else {
        return Err(WordError::UnknownState("<no generators>".to_string()));
    };
    let automaton = first.automaton().clone();
    let mut steps = Vec::with_capacity(generators.len() * 2);
    for g in generators {
        if g.automaton() != &automaton {
            return Err(WordError::AutomatonMismatch);
        }
        steps.push(g.clone());
        steps.push(g.inverse());
    }

    fn is_dup(
        mode: DedupMode,
        word: &GroupWord,
        key: &CanonicalKey,
        seen: &HashMap<CanonicalKey, usize>,
        reps: &[(CanonicalKey, GroupWord)],
    ) -> bool {
        match mode {
            DedupMode::CanonicalKey => seen.contains_key(key),
            DedupMode::PairwiseEqual => reps
                .iter()
                .any(|(_, rep)| rep.equal(word).expect("same automaton")),
        }
    }

    let identity = GroupWord::identity(&automaton)?;
    let mut seen_keys: HashMap<CanonicalKey, usize> = HashMap::new();
    let mut reps: Vec<(CanonicalKey, GroupWord)> = Vec::new();
    let mut counts: Vec<u64> = Vec::with_capacity(radius as usize + 1);

    let key = identity.canonical_key();
    seen_keys.insert(key.clone(), 0);
    reps.push((key, identity.clone()));
    counts.push(1);

    let mut frontier = vec![identity];
    for _ in 1..=radius {
        let mut next = Vec::new();
        for word in &frontier {
            for step in &steps {
                let candidate = word.multiply(step)?;
                let key = candidate.canonical_key();
                if !is_dup(mode, &candidate, &key, &seen_keys, &reps) {
                    seen_keys.insert(key.clone(), reps.len());
                    reps.push((key, candidate.clone()));
                    next.push(candidate);
                }
            }
        }
        counts.push(reps.len() as u64);
        frontier = next;
    }

    reps.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(BallReport {
        radius,
        generators: generators.iter().map(|g| g.to_string()).collect(),
        counts,
        representatives: reps,
    })
}

/// All elements of the ball that fix the boundary point `u p p p ..`,
/// as `(canonical key, shortest representative)` sorted by key.
///
/// `depth` drives a cheap prefix pre-filter; every survivor is then
/// checked on the exact boundary action, so the result does not depend
/// on `depth`.
pub fn stabilizer_in_ball(
    generators: &[GroupWord],
    radius: u32,
    prefix: &str,
    period: &str,
    depth: usize,
) -> Result<Vec<(CanonicalKey, GroupWord)>, WordError> {
    let Some(first) = generators.first() else {
        return Err(WordError::UnknownState("<no generators>".to_string()));
    };
    let automaton = first.automaton().clone();
    let point = BoundaryPoint::new(
        automaton.parse_letters(prefix)?,
        automaton.parse_letters(period)?,
    )?;
    let probe = point.expand(depth);
    let ball = ball_enumerate(generators, radius)?;
    let mut fixers = Vec::new();
    for (key, word) in ball.representatives {
        if word.apply_idx(&probe) != probe {
            continue;
        }
        if word.act_on_point(&point)? == point {
            fixers.push((key, word));
        }
    }
    Ok(fixers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machines::lamplighter_automaton;
    use crate::mealy::MealyAutomaton;

    fn gens(texts: &[&str]) -> Vec<GroupWord> {
        let aut = lamplighter_automaton();
        texts
            .iter()
            .map(|t| GroupWord::parse(&aut, t).unwrap())
            .collect()
    }

    #[test]
    fn radius_zero_is_the_identity() {
        let report = ball_enumerate(&gens(&["a", "b", "c"]), 0).unwrap();
        assert_eq!(report.counts, vec![1]);
        assert_eq!(report.representatives.len(), 1);
        assert!(report.representatives[0].1.is_empty());
    }

    #[test]
    fn radius_one_over_a_and_alpha() {
        // e, a, a^-1, alpha, alpha^-1 are pairwise distinct.
        let report = ball_enumerate(&gens(&["a", "ab^-1"]), 1).unwrap();
        assert_eq!(report.counts, vec![1, 5]);
    }

    #[test]
    fn counts_are_cumulative_and_non_decreasing() {
        let report = ball_enumerate(&gens(&["a", "b", "c"]), 3).unwrap();
        assert_eq!(report.counts.len(), 4);
        assert_eq!(report.counts[0], 1);
        assert!(report.counts.windows(2).all(|w| w[0] <= w[1]));
        // Each radius-1 step over three generators adds at most six words.
        assert_eq!(report.counts[1], 7);
    }

    #[test]
    fn pairwise_mode_agrees_with_canonical_keys() {
        let generators = gens(&["a", "b", "c"]);
        let fast = ball_enumerate_with(&generators, 2, DedupMode::CanonicalKey).unwrap();
        let slow = ball_enumerate_with(&generators, 2, DedupMode::PairwiseEqual).unwrap();
        assert_eq!(fast.counts, slow.counts);
        let fast_keys: Vec<_> = fast.representatives.iter().map(|(k, _)| k.clone()).collect();
        let slow_keys: Vec<_> = slow.representatives.iter().map(|(k, _)| k.clone()).collect();
        assert_eq!(fast_keys, slow_keys);
    }

    #[test]
    fn ball_counts_are_isomorphism_invariants() {
        let relabeled = MealyAutomaton::build(
            &["x", "y", "z"],
            &["p", "q", "r"],
            &[
                (&["x", "y", "z"], &[&["q", "r"]]),
                (&["z", "x", "y"], &[&["p", "r"]]),
                (&["y", "z", "x"], &[&["p", "q"]]),
            ],
        )
        .unwrap()
        .shared();
        let original = ball_enumerate(&gens(&["a", "b", "c"]), 3).unwrap();
        let renamed_gens: Vec<GroupWord> = ["x", "y", "z"]
            .iter()
            .map(|s| GroupWord::generator(&relabeled, s).unwrap())
            .collect();
        let renamed = ball_enumerate(&renamed_gens, 3).unwrap();
        assert_eq!(original.counts, renamed.counts);
    }

    #[test]
    fn representatives_are_shortest_words() {
        let report = ball_enumerate(&gens(&["a", "b", "c"]), 2).unwrap();
        for (key, word) in &report.representatives {
            assert_eq!(*key, word.canonical_key());
            // No strictly shorter word in the ball denotes the same element.
            for (other_key, other) in &report.representatives {
                if other_key == key {
                    assert!(other.len() >= word.len() || other == word);
                }
            }
        }
    }

    #[test]
    fn stabilizer_contains_the_identity_and_respects_inverses() {
        let fixers = stabilizer_in_ball(&gens(&["a", "b", "c"]), 2, "", "1", 8).unwrap();
        assert!(fixers.iter().any(|(_, w)| w.is_empty()));
        // Closed under inverse inside the ball.
        for (_, word) in &fixers {
            let inv_key = word.inverse().canonical_key();
            assert!(fixers.iter().any(|(k, _)| *k == inv_key));
        }
        // a and a^-1, a^2, a^-2 fix the all-ones ray.
        let aut = lamplighter_automaton();
        for t in ["a", "a^-1", "aa", "a^-1a^-1"] {
            let key = GroupWord::parse(&aut, t).unwrap().canonical_key();
            assert!(fixers.iter().any(|(k, _)| *k == key), "{t}");
        }
        assert_eq!(fixers.len(), 5);
    }

    #[test]
    fn mismatched_generators_are_rejected() {
        let aut = lamplighter_automaton();
        let other = crate::machines::identity_automaton(3);
        let mixed = vec![
            GroupWord::generator(&aut, "a").unwrap(),
            GroupWord::identity(&other).unwrap(),
        ];
        assert_eq!(
            ball_enumerate(&mixed, 1).unwrap_err(),
            WordError::AutomatonMismatch
        );
    }
}
