//! Group words over the states of an invertible automaton and their
//! action on the rooted tree of finite letter words.
//!
//! A word `s1 s2 .. sn` acts first letter first: `s1` transforms the
//! input, `s2` transforms the result, and so on. Root permutations
//! compose in the same left-to-right order. Sections follow the rule
//! `(s1 .. sn)|_v = s1' .. sn'` with `si' = si|_{(s1 .. s_{i-1})(v)}`.
//! Stored words are always freely reduced; no group relation is applied.

use crate::mealy::MealyAutomaton;
use crate::perm::Permutation;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Errors raised by word construction and tree actions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("words are bound to different automata")]
    AutomatonMismatch,
    #[error("group words require an invertible automaton")]
    NonInvertibleAutomaton,
    #[error("period of an eventually periodic point must be non-empty")]
    EmptyPeriod,
}

/// One signed generator inside a word: a state index plus an inversion flag.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Gen {
    pub state: u16,
    pub inverse: bool,
}

impl Gen {
    pub(crate) fn flip(self) -> Gen {
        Gen {
            state: self.state,
            inverse: !self.inverse,
        }
    }
}

/// One transducer step: the letter output by `g` on input `x` together
/// with the section of `g` at `x`.
#[inline]
pub(crate) fn step(aut: &MealyAutomaton, g: Gen, x: usize) -> (usize, Gen) {
    let s = g.state as usize;
    if !g.inverse {
        (
            aut.output(s, x),
            Gen {
                state: aut.transition(s, x) as u16,
                inverse: false,
            },
        )
    } else {
        let xin = aut
            .inverse_output(s, x)
            .expect("inverse letters only exist over invertible automata");
        (
            xin,
            Gen {
                state: aut.transition(s, xin) as u16,
                inverse: true,
            },
        )
    }
}

/// Cancels adjacent `s s^-1` and `s^-1 s` pairs.
pub(crate) fn reduce(gens: impl IntoIterator<Item = Gen>) -> Vec<Gen> {
    let mut out: Vec<Gen> = Vec::new();
    for g in gens {
        match out.last() {
            Some(&last) if last.state == g.state && last.inverse != g.inverse => {
                out.pop();
            }
            _ => out.push(g),
        }
    }
    out
}

/// A freely reduced word in the states of an invertible automaton and
/// their inverses, denoting an element of the generated group.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupWord {
    automaton: Arc<MealyAutomaton>,
    letters: Vec<Gen>,
}

impl GroupWord {
    /// The empty word.
    pub fn identity(automaton: &Arc<MealyAutomaton>) -> Result<GroupWord, WordError> {
        Self::from_gens(automaton, Vec::new())
    }

    /// The one-letter word for a state.
    pub fn generator(automaton: &Arc<MealyAutomaton>, state: &str) -> Result<GroupWord, WordError> {
        Self::from_pairs(automaton, &[(state, 1)])
    }

    /// The one-letter word for the inverse of a state.
    pub fn generator_inv(
        automaton: &Arc<MealyAutomaton>,
        state: &str,
    ) -> Result<GroupWord, WordError> {
        Self::from_pairs(automaton, &[(state, -1)])
    }

    /// Builds a word from `(state token, sign)` pairs and reduces it.
    pub fn from_pairs(
        automaton: &Arc<MealyAutomaton>,
        pairs: &[(&str, i8)],
    ) -> Result<GroupWord, WordError> {
        let mut gens = Vec::with_capacity(pairs.len());
        for &(token, sign) in pairs {
            let state = automaton
                .state_index(token)
                .ok_or_else(|| WordError::UnknownState(token.to_string()))?;
            gens.push(Gen {
                state: state as u16,
                inverse: sign < 0,
            });
        }
        Self::from_gens(automaton, gens)
    }

    /// Parses a word like `ab^-1c` by longest token match; whitespace,
    /// commas and `.` may separate letters, `ε` or an empty string is the
    /// identity.
    pub fn parse(automaton: &Arc<MealyAutomaton>, text: &str) -> Result<GroupWord, WordError> {
        let text = text.trim();
        if text.is_empty() || text == "ε" || text == "e" && automaton.state_index("e").is_none() {
            return Self::identity(automaton);
        }
        let mut gens = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            if let Some(stripped) = rest
                .strip_prefix(|c: char| c.is_whitespace() || c == ',' || c == '.')
            {
                rest = stripped;
                continue;
            }
            let mut best: Option<usize> = None;
            for (i, tok) in automaton.states().iter().enumerate() {
                if rest.starts_with(tok.as_str())
                    && best.map(|b| automaton.states()[b].len() < tok.len()).unwrap_or(true)
                {
                    best = Some(i);
                }
            }
            let Some(state) = best else {
                return Err(WordError::UnknownState(
                    rest.chars().take(8).collect::<String>(),
                ));
            };
            rest = &rest[automaton.states()[state].len()..];
            let inverse = if let Some(stripped) = rest.strip_prefix("^-1") {
                rest = stripped;
                true
            } else {
                false
            };
            gens.push(Gen {
                state: state as u16,
                inverse,
            });
        }
        Self::from_gens(automaton, gens)
    }

    pub(crate) fn from_gens(
        automaton: &Arc<MealyAutomaton>,
        gens: Vec<Gen>,
    ) -> Result<GroupWord, WordError> {
        if !automaton.is_invertible() {
            return Err(WordError::NonInvertibleAutomaton);
        }
        Ok(GroupWord {
            automaton: automaton.clone(),
            letters: reduce(gens),
        })
    }

    /// The automaton this word is bound to.
    pub fn automaton(&self) -> &Arc<MealyAutomaton> {
        &self.automaton
    }

    /// The reduced letters as `(state token, sign)` pairs.
    pub fn letters(&self) -> Vec<(&str, i8)> {
        self.letters
            .iter()
            .map(|g| {
                (
                    self.automaton.states()[g.state as usize].as_str(),
                    if g.inverse { -1 } else { 1 },
                )
            })
            .collect()
    }

    pub(crate) fn gens(&self) -> &[Gen] {
        &self.letters
    }

    /// Reduced length.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// True for the empty word.
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Sum of the exponents of the letters.
    pub fn exponent_sum(&self) -> i64 {
        self.letters
            .iter()
            .map(|g| if g.inverse { -1 } else { 1 })
            .sum()
    }

    /// Applies the word to a letter word given by indices.
    pub(crate) fn apply_idx(&self, input: &[usize]) -> Vec<usize> {
        let mut gens = self.letters.clone();
        let mut out = Vec::with_capacity(input.len());
        for &x in input {
            out.push(advance(&self.automaton, &mut gens, x));
        }
        out
    }

    /// Applies the word to a letter word; the image has the same length.
    pub fn apply(&self, input: &str) -> Result<String, WordError> {
        let idx = self.automaton.parse_letters(input)?;
        Ok(self.automaton.render_letters(&self.apply_idx(&idx)))
    }

    /// Section at a letter word given by indices.
    pub(crate) fn section_idx(&self, at: &[usize]) -> GroupWord {
        let mut gens = self.letters.clone();
        for &x in at {
            advance(&self.automaton, &mut gens, x);
        }
        GroupWord {
            automaton: self.automaton.clone(),
            letters: reduce(gens),
        }
    }

    /// The section of the word at a vertex, freely reduced. Satisfies the
    /// splice law `g(uv) = g(u) · (g|_u)(v)`.
    pub fn section(&self, at: &str) -> Result<GroupWord, WordError> {
        let idx = self.automaton.parse_letters(at)?;
        Ok(self.section_idx(&idx))
    }

    /// The permutation the word induces on single letters.
    pub fn root_perm(&self) -> Permutation {
        let d = self.automaton.alphabet_len();
        let mut image = Vec::with_capacity(d);
        for x in 0..d {
            let mut y = x;
            for &g in &self.letters {
                let (yy, _) = step(&self.automaton, g, y);
                y = yy;
            }
            image.push(y);
        }
        Permutation::from_images(image).expect("actions of invertible automata are bijections")
    }

    /// Root permutation together with the section at every letter.
    pub fn wreath_decompose(&self) -> WreathDecomposition {
        let d = self.automaton.alphabet_len();
        WreathDecomposition {
            root: self.root_perm(),
            sections: (0..d).map(|x| self.section_idx(&[x])).collect(),
        }
    }

    /// Concatenation followed by free reduction. The product acts by
    /// composition: `multiply(g, h)` applies `g` first, then `h`.
    pub fn multiply(&self, other: &GroupWord) -> Result<GroupWord, WordError> {
        if !same_automaton(self, other) {
            return Err(WordError::AutomatonMismatch);
        }
        let mut gens = self.letters.clone();
        gens.extend_from_slice(&other.letters);
        Ok(GroupWord {
            automaton: self.automaton.clone(),
            letters: reduce(gens),
        })
    }

    /// The sign-flipped reversal, so `g · g^-1` reduces to the empty word.
    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            automaton: self.automaton.clone(),
            letters: self.letters.iter().rev().map(|g| g.flip()).collect(),
        }
    }

    /// Integer power, with negative exponents through the inverse.
    pub fn pow(&self, exponent: i64) -> GroupWord {
        let base = if exponent < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.letters.len() * exponent.unsigned_abs() as usize);
        for _ in 0..exponent.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        GroupWord {
            automaton: self.automaton.clone(),
            letters: reduce(letters),
        }
    }

    /// The conjugate `h^-1 · self · h`.
    pub fn conjugate_by(&self, h: &GroupWord) -> Result<GroupWord, WordError> {
        h.inverse().multiply(self)?.multiply(h)
    }
}

/// Feeds one input letter through the whole word in place, leaving the
/// per-position sections behind, and returns the output letter.
#[inline]
fn advance(aut: &MealyAutomaton, gens: &mut [Gen], x: usize) -> usize {
    let mut y = x;
    for g in gens.iter_mut() {
        let (yy, ng) = step(aut, *g, y);
        y = yy;
        *g = ng;
    }
    y
}

pub(crate) fn same_automaton(a: &GroupWord, b: &GroupWord) -> bool {
    Arc::ptr_eq(&a.automaton, &b.automaton) || a.automaton == b.automaton
}

/// Root permutation plus one section per letter.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WreathDecomposition {
    pub root: Permutation,
    pub sections: Vec<GroupWord>,
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "ε");
        }
        for g in &self.letters {
            write!(f, "{}", self.automaton.states()[g.state as usize])?;
            if g.inverse {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

impl MealyAutomaton {
    /// Parses a letter word like `123` by longest token match; whitespace
    /// and commas may separate letters.
    pub fn parse_letters(&self, text: &str) -> Result<Vec<usize>, WordError> {
        let mut out = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            if let Some(stripped) = rest.strip_prefix(|c: char| c.is_whitespace() || c == ',') {
                rest = stripped;
                continue;
            }
            let mut best: Option<usize> = None;
            for (i, tok) in self.alphabet().iter().enumerate() {
                if rest.starts_with(tok.as_str())
                    && best
                        .map(|b| self.alphabet()[b].len() < tok.len())
                        .unwrap_or(true)
                {
                    best = Some(i);
                }
            }
            let Some(letter) = best else {
                return Err(WordError::UnknownLetter(
                    rest.chars().take(8).collect::<String>(),
                ));
            };
            rest = &rest[self.alphabet()[letter].len()..];
            out.push(letter);
        }
        Ok(out)
    }

    /// Joins letter indices back into a string.
    pub fn render_letters(&self, letters: &[usize]) -> String {
        letters
            .iter()
            .map(|&x| self.alphabet()[x].as_str())
            .collect()
    }
}
