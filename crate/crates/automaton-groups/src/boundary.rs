//! Actions on eventually periodic boundary points of the tree.
//!
//! A point of the boundary is an infinite letter sequence `u p p p ..`
//! held as a prefix `u` and a non-empty period `p`. The image of such a
//! point under a group word is again eventually periodic: iterating
//! sections along the periodic tail must revisit a (section word, phase)
//! pair, because the sections of a word form a finite set.

use crate::word::{Gen, GroupWord, WordError};
use std::collections::HashMap;

/// An eventually periodic boundary point in normal form.
///
/// The normal form collapses the period to its primitive root, rolls it
/// to its lexicographically least rotation (folding the skipped letters
/// into the prefix), and strips trailing copies of the period from the
/// prefix. Two representations describe the same point exactly when
/// their normal forms are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BoundaryPoint {
    prefix: Vec<usize>,
    period: Vec<usize>,
}

impl BoundaryPoint {
    /// Normalizes a `(prefix, period)` representation.
    pub fn new(prefix: Vec<usize>, period: Vec<usize>) -> Result<BoundaryPoint, WordError> {
        if period.is_empty() {
            return Err(WordError::EmptyPeriod);
        }
        let mut period = primitive_root(&period);
        let mut prefix = prefix;
        // Roll to the least rotation, pushing skipped letters onto the prefix.
        let shift = least_rotation(&period);
        prefix.extend_from_slice(&period[..shift]);
        period.rotate_left(shift);
        // Strip trailing whole copies of the period.
        while prefix.len() >= period.len() && prefix.ends_with(&period) {
            prefix.truncate(prefix.len() - period.len());
        }
        Ok(BoundaryPoint { prefix, period })
    }

    /// Normalized prefix.
    pub fn prefix(&self) -> &[usize] {
        &self.prefix
    }

    /// Normalized primitive period.
    pub fn period(&self) -> &[usize] {
        &self.period
    }

    /// First `n` letters of the infinite sequence.
    pub fn expand(&self, n: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(n);
        out.extend(self.prefix.iter().copied().take(n));
        let mut i = 0;
        while out.len() < n {
            out.push(self.period[i % self.period.len()]);
            i += 1;
        }
        out
    }
}

/// Shortest word `q` with `p = q^k`.
fn primitive_root(p: &[usize]) -> Vec<usize> {
    let n = p.len();
    for len in 1..=n {
        if n % len == 0 && p.iter().enumerate().all(|(i, &x)| x == p[i % len]) {
            return p[..len].to_vec();
        }
    }
    unreachable!("len == n always matches")
}

/// Rotation offset producing the lexicographically least rotation. All
/// rotations of a primitive word are distinct, so the offset is unique.
fn least_rotation(p: &[usize]) -> usize {
    let mut best = 0;
    for s in 1..p.len() {
        let better = (0..p.len())
            .map(|i| (p[(s + i) % p.len()], p[(best + i) % p.len()]))
            .find(|(a, b)| a != b)
            .map(|(a, b)| a < b)
            .unwrap_or(false);
        if better {
            best = s;
        }
    }
    best
}

impl GroupWord {
    /// Image of the point `u p p p ..` in normalized prefix/period form.
    ///
    /// The prefix image is direct application; along the tail the walk
    /// tracks the current section word and the phase inside `p` until the
    /// pair repeats, which closes the output period.
    pub fn act_on_eventually_periodic(
        &self,
        prefix: &str,
        period: &str,
    ) -> Result<(String, String), WordError> {
        let aut = self.automaton().clone();
        let u = aut.parse_letters(prefix)?;
        let p = aut.parse_letters(period)?;
        let point = BoundaryPoint::new(u, p)?;
        let image = self.act_on_point(&point)?;
        Ok((
            aut.render_letters(image.prefix()),
            aut.render_letters(image.period()),
        ))
    }

    /// Image of a normalized boundary point.
    pub fn act_on_point(&self, point: &BoundaryPoint) -> Result<BoundaryPoint, WordError> {
        let aut = self.automaton().clone();
        let u = point.prefix();
        let p = point.period();
        let mut out_prefix = self.apply_idx(u);
        let mut section = self.section_idx(u);

        let mut seen: HashMap<(Box<[Gen]>, usize), usize> = HashMap::new();
        let mut outputs: Vec<usize> = Vec::new();
        let mut phase = 0usize;
        loop {
            let state: (Box<[Gen]>, usize) = (section.gens().into(), phase);
            if let Some(&start) = seen.get(&state) {
                out_prefix.extend_from_slice(&outputs[..start]);
                let out_period = outputs[start..].to_vec();
                return BoundaryPoint::new(out_prefix, out_period);
            }
            seen.insert(state, outputs.len());
            let x = p[phase];
            let image = section.apply_idx(&[x]);
            outputs.push(image[0]);
            section = section.section_idx(&[x]);
            phase = (phase + 1) % p.len();
        }
    }

    /// True when the word fixes the point `u p p p ..`, decided on the
    /// exact boundary action with both sides in normal form.
    pub fn fixes_boundary_point(&self, prefix: &str, period: &str) -> Result<bool, WordError> {
        let aut = self.automaton().clone();
        let point = BoundaryPoint::new(aut.parse_letters(prefix)?, aut.parse_letters(period)?)?;
        Ok(self.act_on_point(&point)? == point)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machines::lamplighter_automaton;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn w(text: &str) -> GroupWord {
        GroupWord::parse(&lamplighter_automaton(), text).unwrap()
    }

    #[test]
    fn normal_forms() {
        let pt = |u: &[usize], p: &[usize]| BoundaryPoint::new(u.to_vec(), p.to_vec()).unwrap();
        // Period collapses to its primitive root.
        assert_eq!(pt(&[], &[0, 0]), pt(&[], &[0]));
        // Trailing copies of the period fold into the tail.
        assert_eq!(pt(&[0, 0], &[0]), pt(&[], &[0]));
        // Rolling to the least rotation keeps the point fixed.
        assert_eq!(pt(&[], &[1, 0]), pt(&[1], &[0, 1]));
        assert_eq!(pt(&[1], &[0, 1]).prefix(), &[1]);
        assert_eq!(pt(&[1], &[0, 1]).period(), &[0, 1]);
        // Distinct points stay distinct.
        assert_ne!(pt(&[], &[0, 1]), pt(&[], &[1, 0]));
        assert!(BoundaryPoint::new(vec![0], vec![]).is_err());
    }

    #[test]
    fn expansion_matches_the_sequence() {
        let pt = BoundaryPoint::new(vec![2], vec![0, 1]).unwrap();
        assert_eq!(pt.expand(6), vec![2, 0, 1, 0, 1, 0]);
    }

    #[test]
    fn generator_a_fixes_the_all_ones_ray() {
        assert_eq!(
            w("a").act_on_eventually_periodic("", "1").unwrap(),
            ("".to_string(), "1".to_string())
        );
        assert!(w("a").fixes_boundary_point("", "1").unwrap());
        for k in 2..=4 {
            assert!(w("a").pow(k).fixes_boundary_point("", "1").unwrap());
        }
    }

    #[test]
    fn identity_fixes_every_point() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let e = w("");
        for _ in 0..20 {
            let u: Vec<usize> = (0..rng.gen_range(0..4)).map(|_| rng.gen_range(0..3)).collect();
            let p: Vec<usize> = (0..rng.gen_range(1..4)).map(|_| rng.gen_range(0..3)).collect();
            let aut = lamplighter_automaton();
            let us = aut.render_letters(&u);
            let ps = aut.render_letters(&p);
            assert!(e.fixes_boundary_point(&us, &ps).unwrap());
        }
    }

    #[test]
    fn alpha_moves_the_all_ones_ray() {
        let alpha = w("ab^-1");
        let (prefix, period) = alpha.act_on_eventually_periodic("", "1").unwrap();
        let image = format!("{prefix}{period}");
        // The root permutation sends 1 to 3.
        assert_eq!(image.chars().next(), Some('3'));
        assert!(!alpha.fixes_boundary_point("", "1").unwrap());
    }

    #[test]
    fn boundary_action_matches_prefix_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let aut = lamplighter_automaton();
        let words = ["a", "ab^-1", "ba^-1ac", "c^-1b", "abc"];
        for text in words {
            let g = w(text);
            for _ in 0..10 {
                let u: Vec<usize> = (0..rng.gen_range(0..3)).map(|_| rng.gen_range(0..3)).collect();
                let p: Vec<usize> = (0..rng.gen_range(1..4)).map(|_| rng.gen_range(0..3)).collect();
                let point = BoundaryPoint::new(u, p).unwrap();
                let image = g.act_on_point(&point).unwrap();
                // The image expands to the letterwise image of the input.
                let n = 24;
                assert_eq!(image.expand(n), g.apply(&aut.render_letters(&point.expand(n))).map(|s| aut.parse_letters(&s).unwrap()).unwrap());
            }
        }
    }
}
