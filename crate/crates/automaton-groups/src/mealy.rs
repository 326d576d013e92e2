//! Complete deterministic Mealy automata and the dual/inverse algebra.
//!
//! An automaton here is a finite letter-to-letter transducer: a total
//! transition map and a total output map over `states x alphabet`. Every
//! value is immutable after construction, so automata can be shared
//! freely.

use crate::perm::{all_bijections, Permutation};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Errors raised by automaton construction and the dual/inverse algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("state set is empty")]
    EmptyStates,
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("duplicate letter `{0}`")]
    DuplicateLetter(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("row for `{state}` lists {got} sections, alphabet has {expected}")]
    ArityMismatch {
        state: String,
        expected: usize,
        got: usize,
    },
    #[error("output row of `{state}` is not a bijection of the alphabet")]
    NonBijectivePermutation { state: String },
    #[error("state `{state}` outputs `{letter}` on two inputs; inverse is not deterministic")]
    NonInvertible { state: String, letter: String },
}

/// A complete deterministic Mealy automaton with equal input and output
/// alphabets.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MealyAutomaton {
    states: Vec<String>,
    alphabet: Vec<String>,
    /// Flattened `state * |alphabet| + letter` -> state.
    transition: Vec<usize>,
    /// Flattened `state * |alphabet| + letter` -> letter.
    output: Vec<usize>,
    /// Per-state inverse of the output row, when every row is a bijection.
    inv_output: Option<Vec<usize>>,
}

impl MealyAutomaton {
    /// Builds an automaton from one wreath-recursion row per state.
    ///
    /// Row `i` holds the section tuple of state `i` in alphabet order and
    /// the root permutation as cycles of letter tokens, so the transition
    /// is `rows[i].0[j]` and the output is the permutation image of `j`.
    pub fn build(
        states: &[&str],
        alphabet: &[&str],
        rows: &[(&[&str], &[&[&str]])],
    ) -> Result<MealyAutomaton, AutomatonError> {
        let states: Vec<String> = states.iter().map(|s| s.to_string()).collect();
        let alphabet: Vec<String> = alphabet.iter().map(|s| s.to_string()).collect();
        let mut parsed = Vec::with_capacity(rows.len());
        for (i, (sections, cycles)) in rows.iter().enumerate() {
            let state = states
                .get(i)
                .cloned()
                .unwrap_or_else(|| format!("row {i}"));
            let mut cycle_idx = Vec::with_capacity(cycles.len());
            for cycle in cycles.iter() {
                let mut c = Vec::with_capacity(cycle.len());
                for tok in cycle.iter() {
                    let j = alphabet
                        .iter()
                        .position(|l| l == tok)
                        .ok_or_else(|| AutomatonError::UnknownState(tok.to_string()))?;
                    c.push(j);
                }
                cycle_idx.push(c);
            }
            let perm = Permutation::from_cycles(alphabet.len(), &cycle_idx)
                .map_err(|_| AutomatonError::NonBijectivePermutation { state })?;
            parsed.push((
                sections.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                perm,
            ));
        }
        Self::from_rows(states, alphabet, parsed)
    }

    /// Builds an automaton from pre-parsed rows: section tuples of state
    /// tokens plus a root [`Permutation`] per state.
    pub fn from_rows(
        states: Vec<String>,
        alphabet: Vec<String>,
        rows: Vec<(Vec<String>, Permutation)>,
    ) -> Result<MealyAutomaton, AutomatonError> {
        if states.is_empty() {
            return Err(AutomatonError::EmptyStates);
        }
        if alphabet.is_empty() {
            return Err(AutomatonError::EmptyAlphabet);
        }
        for (i, s) in states.iter().enumerate() {
            if states[..i].contains(s) {
                return Err(AutomatonError::DuplicateState(s.clone()));
            }
        }
        for (i, l) in alphabet.iter().enumerate() {
            if alphabet[..i].contains(l) {
                return Err(AutomatonError::DuplicateLetter(l.clone()));
            }
        }
        if rows.len() != states.len() {
            return Err(AutomatonError::ArityMismatch {
                state: "<row count>".to_string(),
                expected: states.len(),
                got: rows.len(),
            });
        }
        let d = alphabet.len();
        let mut transition = Vec::with_capacity(states.len() * d);
        let mut output = Vec::with_capacity(states.len() * d);
        for (i, (sections, perm)) in rows.iter().enumerate() {
            if sections.len() != d {
                return Err(AutomatonError::ArityMismatch {
                    state: states[i].clone(),
                    expected: d,
                    got: sections.len(),
                });
            }
            if perm.degree() != d {
                return Err(AutomatonError::NonBijectivePermutation {
                    state: states[i].clone(),
                });
            }
            for target in sections {
                let t = states
                    .iter()
                    .position(|s| s == target)
                    .ok_or_else(|| AutomatonError::UnknownState(target.clone()))?;
                transition.push(t);
            }
            for x in 0..d {
                output.push(perm.apply(x));
            }
        }
        let mut automaton = MealyAutomaton {
            states,
            alphabet,
            transition,
            output,
            inv_output: None,
        };
        automaton.inv_output = automaton.compute_inverse_outputs();
        Ok(automaton)
    }

    fn compute_inverse_outputs(&self) -> Option<Vec<usize>> {
        let d = self.alphabet.len();
        let mut inv = vec![usize::MAX; self.states.len() * d];
        for s in 0..self.states.len() {
            for x in 0..d {
                let y = self.output[s * d + x];
                if inv[s * d + y] != usize::MAX {
                    return None;
                }
                inv[s * d + y] = x;
            }
        }
        Some(inv)
    }

    /// Ordered state tokens.
    pub fn states(&self) -> &[String] {
        &self.states
    }

    /// Ordered alphabet tokens.
    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    /// Number of states.
    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    /// Alphabet size.
    pub fn alphabet_len(&self) -> usize {
        self.alphabet.len()
    }

    /// Index of a state token.
    pub fn state_index(&self, token: &str) -> Option<usize> {
        self.states.iter().position(|s| s == token)
    }

    /// Index of a letter token.
    pub fn letter_index(&self, token: &str) -> Option<usize> {
        self.alphabet.iter().position(|l| l == token)
    }

    /// Transition map: next state of `state` on input `letter`.
    pub fn transition(&self, state: usize, letter: usize) -> usize {
        self.transition[state * self.alphabet.len() + letter]
    }

    /// Output map: letter produced by `state` on input `letter`.
    pub fn output(&self, state: usize, letter: usize) -> usize {
        self.output[state * self.alphabet.len() + letter]
    }

    /// The input letter that makes `state` output `letter`. Only defined
    /// for invertible automata.
    pub(crate) fn inverse_output(&self, state: usize, letter: usize) -> Option<usize> {
        self.inv_output
            .as_ref()
            .map(|inv| inv[state * self.alphabet.len() + letter])
    }

    /// Root permutation of a state, i.e. its output row.
    pub fn root_permutation(&self, state: usize) -> Permutation {
        let d = self.alphabet.len();
        Permutation::from_images(self.output[state * d..(state + 1) * d].to_vec())
            .expect("invertible state rows are bijections")
    }

    /// True if every state's output row is a bijection of the alphabet.
    pub fn is_invertible(&self) -> bool {
        self.inv_output.is_some()
    }

    /// The dual automaton: states and alphabet swap roles, with
    /// `x --s|t--> y` in the dual exactly when `s --x|y--> t` here.
    /// Always defined.
    pub fn dual(&self) -> MealyAutomaton {
        let d = self.alphabet.len();
        let m = self.states.len();
        let mut transition = Vec::with_capacity(d * m);
        let mut output = Vec::with_capacity(d * m);
        for x in 0..d {
            for s in 0..m {
                transition.push(self.output[s * d + x]);
                output.push(self.transition[s * d + x]);
            }
        }
        let mut dual = MealyAutomaton {
            states: self.alphabet.clone(),
            alphabet: self.states.clone(),
            transition,
            output,
            inv_output: None,
        };
        dual.inv_output = dual.compute_inverse_outputs();
        dual
    }

    /// The inverse automaton: input and output labels swap, states pick up
    /// an inversion marker, so `s^-1 --y|x--> t^-1` exactly when
    /// `s --x|y--> t` here. Fails with [`AutomatonError::NonInvertible`]
    /// when some state outputs the same letter on two inputs.
    pub fn invert(&self) -> Result<MealyAutomaton, AutomatonError> {
        let d = self.alphabet.len();
        let Some(inv_out) = self.inv_output.as_ref() else {
            // Report the first colliding state and letter.
            for s in 0..self.states.len() {
                let mut seen = vec![false; d];
                for x in 0..d {
                    let y = self.output[s * d + x];
                    if seen[y] {
                        return Err(AutomatonError::NonInvertible {
                            state: self.states[s].clone(),
                            letter: self.alphabet[y].clone(),
                        });
                    }
                    seen[y] = true;
                }
            }
            unreachable!("missing inverse tables imply an output collision");
        };
        let mut transition = Vec::with_capacity(self.transition.len());
        let mut output = Vec::with_capacity(self.output.len());
        for s in 0..self.states.len() {
            for y in 0..d {
                let x = inv_out[s * d + y];
                transition.push(self.transition[s * d + x]);
                output.push(x);
            }
        }
        let mut inverse = MealyAutomaton {
            states: self.states.iter().map(|s| invert_token(s)).collect(),
            alphabet: self.alphabet.clone(),
            transition,
            output,
            inv_output: None,
        };
        inverse.inv_output = inverse.compute_inverse_outputs();
        Ok(inverse)
    }

    /// True if the automaton, its dual and the dual of its inverse are all
    /// invertible; when the automaton itself is not invertible this returns
    /// false without attempting the inverse.
    pub fn is_bireversible(&self) -> bool {
        if !self.is_invertible() {
            return false;
        }
        if !self.dual().is_invertible() {
            return false;
        }
        self.invert()
            .map(|inv| inv.dual().is_invertible())
            .unwrap_or(false)
    }

    /// The eight automata reachable by alternating dual and inverse, in
    /// the order `A, dA, iA, idA, diA, didA, idiA, ididA`. The closing
    /// identity `ididA = didiA` is checked on the way.
    pub fn eight_automata(&self) -> Result<Vec<MealyAutomaton>, AutomatonError> {
        let a = self.clone();
        let da = a.dual();
        let ia = a.invert()?;
        let ida = da.invert()?;
        let dia = ia.dual();
        let dida = ida.dual();
        let idia = dia.invert()?;
        let idida = dida.invert()?;
        let didia = idia.dual();
        debug_assert_eq!(
            idida, didia,
            "the two expressions for the eighth automaton must agree"
        );
        Ok(vec![a, da, ia, ida, dia, dida, idia, idida])
    }

    /// Exhaustive isomorphism search over all pairs of state and letter
    /// bijections; feasible for the small machines this crate works with.
    /// Returns `None` when the automata are not isomorphic.
    pub fn find_isomorphism(&self, other: &MealyAutomaton) -> Option<AutomatonIsomorphism> {
        if self.states.len() != other.states.len() || self.alphabet.len() != other.alphabet.len() {
            return None;
        }
        let d = self.alphabet.len();
        let state_maps = all_bijections(self.states.len());
        let letter_maps = all_bijections(d);
        // Letter maps vary in the outer loop so isomorphisms fixing the
        // alphabet pointwise are preferred when several exist.
        for lm in &letter_maps {
            for sm in &state_maps {
                let ok = (0..self.states.len()).all(|s| {
                    (0..d).all(|x| {
                        sm[self.transition(s, x)] == other.transition(sm[s], lm[x])
                            && lm[self.output(s, x)] == other.output(sm[s], lm[x])
                    })
                });
                if ok {
                    return Some(AutomatonIsomorphism {
                        state_map: sm.clone(),
                        letter_map: lm.clone(),
                    });
                }
            }
        }
        None
    }

    /// Renders one wreath-recursion row, e.g. `a = (a, b, c) (2,3)`.
    pub fn render_row(&self, state: usize) -> String {
        let d = self.alphabet.len();
        let sections: Vec<&str> = (0..d)
            .map(|x| self.states[self.transition(state, x)].as_str())
            .collect();
        format!(
            "{} = ({}) {}",
            self.states[state],
            sections.join(", "),
            self.root_permutation(state).render(&self.alphabet)
        )
    }

    /// Convenience wrapper for sharing the automaton between words.
    pub fn shared(self) -> Arc<MealyAutomaton> {
        Arc::new(self)
    }
}

/// A pair of bijections witnessing that two automata are the same machine
/// up to renaming states and letters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AutomatonIsomorphism {
    /// Image of each state index of the source in the target.
    pub state_map: Vec<usize>,
    /// Image of each letter index of the source in the target.
    pub letter_map: Vec<usize>,
}

impl AutomatonIsomorphism {
    /// Re-checks the commuting conditions on every `(state, letter)` pair.
    pub fn verify(&self, a: &MealyAutomaton, b: &MealyAutomaton) -> bool {
        if self.state_map.len() != a.state_count()
            || self.letter_map.len() != a.alphabet_len()
            || a.state_count() != b.state_count()
            || a.alphabet_len() != b.alphabet_len()
        {
            return false;
        }
        (0..a.state_count()).all(|s| {
            (0..a.alphabet_len()).all(|x| {
                self.state_map[a.transition(s, x)] == b.transition(self.state_map[s], self.letter_map[x])
                    && self.letter_map[a.output(s, x)] == b.output(self.state_map[s], self.letter_map[x])
            })
        })
    }

    /// The state map as token pairs.
    pub fn state_pairs<'a>(
        &'a self,
        a: &'a MealyAutomaton,
        b: &'a MealyAutomaton,
    ) -> Vec<(&'a str, &'a str)> {
        self.state_map
            .iter()
            .enumerate()
            .map(|(s, &t)| (a.states()[s].as_str(), b.states()[t].as_str()))
            .collect()
    }
}

impl fmt::Display for MealyAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in 0..self.states.len() {
            writeln!(f, "{}", self.render_row(s))?;
        }
        Ok(())
    }
}

/// Appends an inversion marker to a state token, cancelling a marker that
/// is already present so double inversion restores the original token.
pub(crate) fn invert_token(token: &str) -> String {
    match token.strip_suffix("^-1") {
        Some(base) => base.to_string(),
        None => format!("{token}^-1"),
    }
}
