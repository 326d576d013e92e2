//! The section closure of a group word and the exact word problem.
//!
//! The sections of a word `g` at all vertices form a finite set of freely
//! reduced words, since a section is never longer than the word itself.
//! Closing `g` under sections yields a finite transducer whose states are
//! those section words; `g` acts trivially exactly when every state of
//! that transducer induces the identity on single letters. Refining the
//! state set into behavioural classes gives a canonical minimal machine,
//! which serves as a total invariant for element equality.

use crate::mealy::MealyAutomaton;
use crate::word::{reduce, same_automaton, step, Gen, GroupWord, WordError};
use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

/// The section closure of a seed word: nodes are the freely reduced
/// sections reachable from the seed, with transitions given by taking
/// sections and outputs by the induced letter maps, plus the coarsest
/// behavioural partition of the nodes.
#[derive(Clone, Debug)]
pub struct ElementAutomaton {
    automaton: Arc<MealyAutomaton>,
    words: Vec<Box<[Gen]>>,
    transitions: Vec<u32>,
    outputs: Vec<u32>,
    classes: Vec<u32>,
    class_count: usize,
    quo_transitions: Vec<u32>,
    quo_outputs: Vec<u32>,
}

/// Opaque comparable key: two words receive equal keys exactly when they
/// denote the same group element.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalKey(Vec<u32>);

/// Output letter and section of a reduced word on one input letter.
fn section_step(aut: &MealyAutomaton, gens: &[Gen], x: usize) -> (usize, Vec<Gen>) {
    let mut y = x;
    let mut out = Vec::with_capacity(gens.len());
    for &g in gens {
        let (yy, ng) = step(aut, g, y);
        y = yy;
        out.push(ng);
    }
    (y, reduce(out))
}

impl ElementAutomaton {
    /// Builds the full closure and refines it.
    pub fn build(seed: &GroupWord) -> ElementAutomaton {
        let aut = seed.automaton().clone();
        let d = aut.alphabet_len();
        let mut index: HashMap<Box<[Gen]>, u32> = HashMap::new();
        let mut words: Vec<Box<[Gen]>> = Vec::new();
        let mut transitions: Vec<u32> = Vec::new();
        let mut outputs: Vec<u32> = Vec::new();

        let seed_word: Box<[Gen]> = seed.gens().into();
        index.insert(seed_word.clone(), 0);
        words.push(seed_word);

        let mut next = 0usize;
        while next < words.len() {
            let gens = words[next].clone();
            for x in 0..d {
                let (y, sec) = section_step(&aut, &gens, x);
                let sec: Box<[Gen]> = sec.into();
                let id = match index.get(&sec) {
                    Some(&id) => id,
                    None => {
                        let id = words.len() as u32;
                        index.insert(sec.clone(), id);
                        words.push(sec);
                        id
                    }
                };
                transitions.push(id);
                outputs.push(y as u32);
            }
            next += 1;
        }

        let (classes, class_count) = refine(&words, &transitions, &outputs, d);
        let (classes, quo_transitions, quo_outputs, class_count) =
            canonicalize(&classes, class_count, &transitions, &outputs, d);

        ElementAutomaton {
            automaton: aut,
            words,
            transitions,
            outputs,
            classes,
            class_count,
            quo_transitions,
            quo_outputs,
        }
    }

    /// The automaton the seed word is bound to.
    pub fn automaton(&self) -> &Arc<MealyAutomaton> {
        &self.automaton
    }

    /// Number of distinct section words, the seed included.
    pub fn node_count(&self) -> usize {
        self.words.len()
    }

    /// Number of behavioural classes reachable from the seed.
    pub fn class_count(&self) -> usize {
        self.class_count
    }

    /// The section words, seed first, in breadth-first discovery order.
    pub fn node_words(&self) -> Vec<GroupWord> {
        self.words
            .iter()
            .map(|gens| {
                GroupWord::from_gens(&self.automaton, gens.to_vec())
                    .expect("closure nodes stay on the seed automaton")
            })
            .collect()
    }

    /// Node reached from `node` on `letter`.
    pub fn transition(&self, node: usize, letter: usize) -> usize {
        self.transitions[node * self.automaton.alphabet_len() + letter] as usize
    }

    /// Letter produced at `node` on `letter`.
    pub fn output(&self, node: usize, letter: usize) -> usize {
        self.outputs[node * self.automaton.alphabet_len() + letter] as usize
    }

    /// Behavioural class of a node; the seed's class is `0`.
    pub fn class_of(&self, node: usize) -> usize {
        self.classes[node] as usize
    }

    /// True when the seed's class induces the identity on letters and all
    /// of its transitions stay inside the class, i.e. the seed word acts
    /// trivially on the whole tree.
    pub fn is_identity(&self) -> bool {
        let d = self.automaton.alphabet_len();
        (0..d).all(|x| self.quo_outputs[x] as usize == x && self.quo_transitions[x] == 0)
    }

    /// Serializes the minimized machine, classes in breadth-first order
    /// from the seed class with letters in alphabet order.
    pub fn canonical_key(&self) -> CanonicalKey {
        let d = self.automaton.alphabet_len();
        let mut data = Vec::with_capacity(2 + 2 * d * self.class_count);
        data.push(d as u32);
        data.push(self.class_count as u32);
        data.extend_from_slice(&self.quo_outputs);
        data.extend_from_slice(&self.quo_transitions);
        CanonicalKey(data)
    }

    /// A shortest vertex moved by the seed word, if any; its length is at
    /// most the node count.
    pub fn moved_vertex(&self) -> Option<String> {
        let d = self.automaton.alphabet_len();
        let mut seen = vec![false; self.words.len()];
        let mut queue = VecDeque::new();
        seen[0] = true;
        queue.push_back((0usize, Vec::<usize>::new()));
        while let Some((node, path)) = queue.pop_front() {
            for x in 0..d {
                if self.output(node, x) != x {
                    let mut v = path.clone();
                    v.push(x);
                    return Some(self.automaton.render_letters(&v));
                }
            }
            for x in 0..d {
                let t = self.transition(node, x);
                if !seen[t] {
                    seen[t] = true;
                    let mut v = path.clone();
                    v.push(x);
                    queue.push_back((t, v));
                }
            }
        }
        None
    }
}

/// Coarsest partition in which equivalent nodes share output rows and
/// have transitions into equivalent classes.
fn refine(
    words: &[Box<[Gen]>],
    transitions: &[u32],
    outputs: &[u32],
    d: usize,
) -> (Vec<u32>, usize) {
    let n = words.len();
    let mut classes = vec![0u32; n];
    let mut count = {
        let mut ids: HashMap<&[u32], u32> = HashMap::new();
        for node in 0..n {
            let row = &outputs[node * d..(node + 1) * d];
            let next = ids.len() as u32;
            let id = *ids.entry(row).or_insert(next);
            classes[node] = id;
        }
        ids.len()
    };
    loop {
        let mut ids: HashMap<(u32, Vec<u32>), u32> = HashMap::new();
        let mut next_classes = vec![0u32; n];
        for node in 0..n {
            let sig = (
                classes[node],
                (0..d)
                    .map(|x| classes[transitions[node * d + x] as usize])
                    .collect::<Vec<_>>(),
            );
            let next = ids.len() as u32;
            let id = *ids.entry(sig).or_insert(next);
            next_classes[node] = id;
        }
        let next_count = ids.len();
        if next_count == count {
            return (next_classes, next_count);
        }
        classes = next_classes;
        count = next_count;
    }
}

/// Renumbers classes by breadth-first discovery from the seed's class and
/// extracts the quotient transition and output rows.
fn canonicalize(
    classes: &[u32],
    class_count: usize,
    transitions: &[u32],
    outputs: &[u32],
    d: usize,
) -> (Vec<u32>, Vec<u32>, Vec<u32>, usize) {
    // One representative node per class.
    let mut rep = vec![usize::MAX; class_count];
    for (node, &c) in classes.iter().enumerate() {
        if rep[c as usize] == usize::MAX {
            rep[c as usize] = node;
        }
    }
    let mut renumber = vec![u32::MAX; class_count];
    let mut order = Vec::with_capacity(class_count);
    let seed_class = classes[0] as usize;
    renumber[seed_class] = 0;
    order.push(seed_class);
    let mut head = 0;
    while head < order.len() {
        let c = order[head];
        head += 1;
        let node = rep[c];
        for x in 0..d {
            let t = classes[transitions[node * d + x] as usize] as usize;
            if renumber[t] == u32::MAX {
                renumber[t] = order.len() as u32;
                order.push(t);
            }
        }
    }
    debug_assert_eq!(order.len(), class_count, "every class is reachable");
    let mut quo_transitions = vec![0u32; class_count * d];
    let mut quo_outputs = vec![0u32; class_count * d];
    for (new_id, &old_id) in order.iter().enumerate() {
        let node = rep[old_id];
        for x in 0..d {
            quo_transitions[new_id * d + x] = renumber[classes[transitions[node * d + x] as usize] as usize];
            quo_outputs[new_id * d + x] = outputs[node * d + x];
        }
    }
    let new_classes = classes.iter().map(|&c| renumber[c as usize]).collect();
    (new_classes, quo_transitions, quo_outputs, class_count)
}

impl GroupWord {
    /// The section closure of this word.
    pub fn element_automaton(&self) -> ElementAutomaton {
        ElementAutomaton::build(self)
    }

    /// Exact triviality test: closes the word under sections and checks
    /// that every section fixes all single letters, stopping at the first
    /// counterexample.
    pub fn is_identity(&self) -> bool {
        let aut = self.automaton().clone();
        let d = aut.alphabet_len();
        let mut index: HashSet<Box<[Gen]>> = HashSet::new();
        let mut queue: VecDeque<Box<[Gen]>> = VecDeque::new();
        let seed: Box<[Gen]> = self.gens().into();
        index.insert(seed.clone());
        queue.push_back(seed);
        while let Some(gens) = queue.pop_front() {
            for x in 0..d {
                let (y, sec) = section_step(&aut, &gens, x);
                if y != x {
                    return false;
                }
                let sec: Box<[Gen]> = sec.into();
                if !index.contains(&sec) {
                    index.insert(sec.clone());
                    queue.push_back(sec);
                }
            }
        }
        true
    }

    /// Element equality, decided through `g · h^-1`.
    pub fn equal(&self, other: &GroupWord) -> Result<bool, WordError> {
        Ok(self.multiply(&other.inverse())?.is_identity())
    }

    /// Least `k <= bound` with `g^k` trivial, or `None` when the order
    /// exceeds the bound.
    pub fn order_bounded(&self, bound: u32) -> Option<u32> {
        let mut power = GroupWord::identity(self.automaton()).expect("bound automaton is invertible");
        for k in 1..=bound {
            power = power.multiply(self).expect("same automaton");
            if power.is_identity() {
                return Some(k);
            }
        }
        None
    }

    /// Canonical key of the element this word denotes.
    pub fn canonical_key(&self) -> CanonicalKey {
        self.element_automaton().canonical_key()
    }
}

/// Bounded equality of tree actions: true when `g` and `h` agree on every
/// letter word of length at most `depth`. Decided by a breadth-first walk
/// over section pairs with output comparison level by level.
pub fn equal_to_depth(g: &GroupWord, h: &GroupWord, depth: usize) -> Result<bool, WordError> {
    if !same_automaton(g, h) {
        return Err(WordError::AutomatonMismatch);
    }
    let aut = g.automaton().clone();
    let d = aut.alphabet_len();
    let mut seen: HashSet<(Box<[Gen]>, Box<[Gen]>)> = HashSet::new();
    let mut frontier: Vec<(Box<[Gen]>, Box<[Gen]>)> = vec![(g.gens().into(), h.gens().into())];
    seen.insert(frontier[0].clone());
    for level in 0..depth {
        let mut next = Vec::new();
        for (u, v) in &frontier {
            for x in 0..d {
                let (yu, su) = section_step(&aut, u, x);
                let (yv, sv) = section_step(&aut, v, x);
                if yu != yv {
                    return Ok(false);
                }
                if level + 1 < depth {
                    let pair = (su.into(), sv.into());
                    if !seen.contains(&pair) {
                        seen.insert(pair.clone());
                        next.push(pair);
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machines::lamplighter_automaton;

    fn w(text: &str) -> GroupWord {
        GroupWord::parse(&lamplighter_automaton(), text).unwrap()
    }

    #[test]
    fn closure_of_the_empty_word() {
        let ea = w("").element_automaton();
        assert_eq!(ea.node_count(), 1);
        assert_eq!(ea.class_count(), 1);
        assert!(ea.is_identity());
        assert_eq!(ea.moved_vertex(), None);
    }

    #[test]
    fn closure_of_alpha_is_one_class() {
        // The literal section words of ab^-1 are its three conjugate
        // spellings; behaviourally they collapse to a single element.
        let ea = w("ab^-1").element_automaton();
        assert_eq!(ea.node_count(), 3);
        assert_eq!(ea.class_count(), 1);
        let words = ea.node_words();
        assert_eq!(words[0], w("ab^-1"));
        assert!(words.contains(&w("bc^-1")));
        assert!(words.contains(&w("ca^-1")));
        assert!(!ea.is_identity());
    }

    #[test]
    fn closure_of_a_inv_b() {
        let ea = w("a^-1b").element_automaton();
        assert_eq!(ea.node_count(), 6);
        assert_eq!(ea.class_count(), 2);
    }

    #[test]
    fn triviality_pins() {
        assert!(w("").is_identity());
        assert!(w("ab^-1").pow(3).is_identity());
        assert!(!w("ab^-1").is_identity());
        for k in 1..=10 {
            assert!(!w("a").pow(k).is_identity());
        }
    }

    #[test]
    fn class_based_and_search_based_triviality_agree() {
        for text in ["", "a", "ab^-1", "ba^-1ab^-1", "a^-1b", "cc", "abc"] {
            let g = w(text);
            let cubed = g.pow(3);
            assert_eq!(g.is_identity(), g.element_automaton().is_identity());
            assert_eq!(cubed.is_identity(), cubed.element_automaton().is_identity());
        }
    }

    #[test]
    fn equality_pins() {
        assert!(w("ab^-1").equal(&w("bc^-1")).unwrap());
        assert!(w("bc^-1").equal(&w("ca^-1")).unwrap());
        assert!(w("ac^-1").equal(&w("ba^-1")).unwrap());
        assert!(w("ba^-1").equal(&w("cb^-1")).unwrap());
        assert!(w("a^-1b").equal(&w("b^-1c")).unwrap());
        assert!(w("a^-1c").equal(&w("b^-1a")).unwrap());
        assert!(w("abc").equal(&w("abc")).unwrap());
        assert!(!w("a").equal(&w("b")).unwrap());
    }

    #[test]
    fn order_pins() {
        assert_eq!(w("ab^-1").order_bounded(10), Some(3));
        assert_eq!(w("").order_bounded(1), Some(1));
        assert_eq!(w("a^-1b").order_bounded(10), Some(3));
        assert_eq!(w("a").order_bounded(10), None);
    }

    #[test]
    fn canonical_key_pins() {
        assert_eq!(w("ab^-1").canonical_key(), w("bc^-1").canonical_key());
        assert_eq!(w("").canonical_key(), w("ab^-1").pow(3).canonical_key());
        let k1 = w("a").canonical_key();
        let k2 = w("a").pow(2).canonical_key();
        let k3 = w("a").pow(3).canonical_key();
        assert_ne!(k1, k2);
        assert_ne!(k1, k3);
        assert_ne!(k2, k3);
    }

    #[test]
    fn moved_vertices_are_witnesses() {
        let g = w("ab^-1");
        let v = g.element_automaton().moved_vertex().unwrap();
        assert_ne!(g.apply(&v).unwrap(), v);
        assert!(v.len() <= g.element_automaton().node_count());
    }

    #[test]
    fn bounded_equality_agrees_with_exact_equality_on_small_words() {
        let pairs = [
            ("ab^-1", "bc^-1", true),
            ("a", "b", false),
            ("a^-1b", "b^-1c", true),
            ("ab", "ba", false),
        ];
        for (u, v, expect) in pairs {
            assert_eq!(equal_to_depth(&w(u), &w(v), 8).unwrap(), expect);
            assert_eq!(w(u).equal(&w(v)).unwrap(), expect);
        }
        // Depth zero compares nothing.
        assert!(equal_to_depth(&w("a"), &w("b"), 0).unwrap());
    }
}
