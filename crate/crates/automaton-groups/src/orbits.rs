//! Orbits on tree levels, Schreier graphs, and section transitivity.

use crate::mealy::MealyAutomaton;
use crate::word::{GroupWord, WordError};
use std::collections::VecDeque;
use std::sync::Arc;

/// Orbit structure of a generating set on one level of the tree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LevelOrbitReport {
    pub level: usize,
    pub orbit_count: usize,
    /// Orbit sizes in decreasing order; they sum to `|X|^level`.
    pub orbit_sizes: Vec<usize>,
    pub transitive: bool,
}

/// The labeled action graph on one level: one edge `v -> g(v)` per vertex
/// and declared generator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SchreierGraph {
    pub level: usize,
    /// Vertex words in lexicographic order of their letter indices.
    pub vertices: Vec<String>,
    /// Display names of the declared generators, in declaration order.
    pub generator_labels: Vec<String>,
    /// Edges `(from, generator index, to)` over vertex indices.
    pub edges: Vec<(usize, usize, usize)>,
}

/// Letter words of length `n` as indices `0..d^n`, first letter most
/// significant.
fn decode(mut code: usize, n: usize, d: usize) -> Vec<usize> {
    let mut word = vec![0; n];
    for slot in word.iter_mut().rev() {
        *slot = code % d;
        code /= d;
    }
    word
}

fn encode(word: &[usize], d: usize) -> usize {
    word.iter().fold(0, |acc, &x| acc * d + x)
}

fn level_size(d: usize, n: usize) -> usize {
    d.checked_pow(n as u32).expect("level fits in memory")
}

/// Partitions level `n` into orbits under the generators and their
/// inverses, by breadth-first search.
pub fn level_orbits(
    automaton: &Arc<MealyAutomaton>,
    generators: &[GroupWord],
    n: usize,
) -> Result<LevelOrbitReport, WordError> {
    let d = automaton.alphabet_len();
    let mut gens = Vec::with_capacity(generators.len() * 2);
    for g in generators {
        if g.automaton() != automaton {
            return Err(WordError::AutomatonMismatch);
        }
        gens.push(g.clone());
        gens.push(g.inverse());
    }
    let total = level_size(d, n);
    let mut orbit = vec![usize::MAX; total];
    let mut orbit_sizes = Vec::new();
    for start in 0..total {
        if orbit[start] != usize::MAX {
            continue;
        }
        let id = orbit_sizes.len();
        let mut size = 0usize;
        let mut queue = VecDeque::new();
        orbit[start] = id;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            size += 1;
            let word = decode(v, n, d);
            for g in &gens {
                let image = encode(&g.apply_idx(&word), d);
                if orbit[image] == usize::MAX {
                    orbit[image] = id;
                    queue.push_back(image);
                }
            }
        }
        orbit_sizes.push(size);
    }
    orbit_sizes.sort_unstable_by(|a, b| b.cmp(a));
    Ok(LevelOrbitReport {
        level: n,
        orbit_count: orbit_sizes.len(),
        transitive: orbit_sizes.len() == 1,
        orbit_sizes,
    })
}

/// Builds the Schreier graph of the generators on level `n`.
pub fn schreier_graph(
    automaton: &Arc<MealyAutomaton>,
    generators: &[GroupWord],
    n: usize,
) -> Result<SchreierGraph, WordError> {
    let d = automaton.alphabet_len();
    for g in generators {
        if g.automaton() != automaton {
            return Err(WordError::AutomatonMismatch);
        }
    }
    let total = level_size(d, n);
    let mut vertices = Vec::with_capacity(total);
    let mut edges = Vec::with_capacity(total * generators.len());
    for v in 0..total {
        let word = decode(v, n, d);
        vertices.push(automaton.render_letters(&word));
        for (gi, g) in generators.iter().enumerate() {
            edges.push((v, gi, encode(&g.apply_idx(&word), d)));
        }
    }
    Ok(SchreierGraph {
        level: n,
        vertices,
        generator_labels: generators.iter().map(|g| g.to_string()).collect(),
        edges,
    })
}

impl SchreierGraph {
    /// Connectivity of the underlying undirected graph.
    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut adjacency = vec![Vec::new(); self.vertices.len()];
        for &(from, _, to) in &self.edges {
            adjacency[from].push(to);
            adjacency[to].push(from);
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 0;
        while let Some(v) = queue.pop_front() {
            count += 1;
            for &w in &adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        count == self.vertices.len()
    }
}

/// True when every positive state word of length `n` can be carried to
/// every other by taking sections, i.e. the semigroup generated by the
/// letters acts transitively on state words of length `n` through the
/// dual action. Directed reachability is required in both directions.
pub fn dual_section_transitive(automaton: &Arc<MealyAutomaton>, n: usize) -> bool {
    if n == 0 {
        return true;
    }
    let d = automaton.alphabet_len();
    let m = automaton.state_count();
    let total = m.checked_pow(n as u32).expect("level fits in memory");

    // Section of a positive state word at one letter.
    let section_at = |code: usize, x: usize| -> usize {
        let word = decode(code, n, m);
        let mut y = x;
        let mut out = 0usize;
        for &s in &word {
            out = out * m + automaton.transition(s, y);
            y = automaton.output(s, y);
        }
        out
    };

    let mut forward = vec![Vec::new(); total];
    let mut backward = vec![Vec::new(); total];
    for w in 0..total {
        for x in 0..d {
            let t = section_at(w, x);
            forward[w].push(t);
            backward[t].push(w);
        }
    }
    let reaches_all = |adjacency: &[Vec<usize>]| {
        let mut seen = vec![false; total];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 0;
        while let Some(v) = queue.pop_front() {
            count += 1;
            for &w in &adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        count == total
    };
    reaches_all(&forward) && reaches_all(&backward)
}
