//! Computation with groups generated by invertible Mealy automata.

pub mod ball;
pub mod boundary;
pub mod element;
pub mod machines;
pub mod mealy;
pub mod orbits;
pub mod perm;
pub mod word;

pub use ball::{ball_enumerate, stabilizer_in_ball, BallReport, DedupMode};
pub use boundary::BoundaryPoint;
pub use element::{equal_to_depth, CanonicalKey, ElementAutomaton};
pub use orbits::{dual_section_transitive, level_orbits, schreier_graph, LevelOrbitReport, SchreierGraph};
pub use machines::{identity_automaton, lamplighter_automaton};
pub use mealy::{AutomatonError, AutomatonIsomorphism, MealyAutomaton};
pub use perm::Permutation;
pub use word::{GroupWord, WordError, WreathDecomposition};
