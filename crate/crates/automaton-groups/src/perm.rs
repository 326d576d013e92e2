//! Permutations of a finite, ordered alphabet.
//!
//! A [`Permutation`] is stored as its image array over `0..degree`. Cycle
//! notation is used for input and output only; composition is written
//! left to right throughout the crate: `p.then(q)` first applies `p`,
//! then `q`.

use thiserror::Error;

/// A bijection of `{0, 1, .., degree-1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    image: Vec<usize>,
}

/// Error raised when an image array or cycle list does not describe a bijection.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not a bijection: {reason}")]
pub struct NotABijection {
    pub reason: String,
}

impl Permutation {
    /// The identity permutation on `degree` points.
    pub fn identity(degree: usize) -> Self {
        Permutation {
            image: (0..degree).collect(),
        }
    }

    /// Builds a permutation from its image array.
    pub fn from_images(image: Vec<usize>) -> Result<Self, NotABijection> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &y in &image {
            if y >= n {
                return Err(NotABijection {
                    reason: format!("image {y} out of range for degree {n}"),
                });
            }
            if seen[y] {
                return Err(NotABijection {
                    reason: format!("image {y} repeated"),
                });
            }
            seen[y] = true;
        }
        Ok(Permutation { image })
    }

    /// Builds a permutation on `degree` points from a list of cycles.
    ///
    /// Cycles are applied left to right, so overlapping cycles compose in
    /// the order written. A cycle `[x1, x2, .., xk]` maps `x1 -> x2 -> ..
    /// -> xk -> x1`; empty and singleton cycles are allowed and act as the
    /// identity.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, NotABijection> {
        let mut perm = Permutation::identity(degree);
        for cycle in cycles {
            let mut image: Vec<usize> = (0..degree).collect();
            for (i, &x) in cycle.iter().enumerate() {
                let y = cycle[(i + 1) % cycle.len()];
                if x >= degree || y >= degree {
                    return Err(NotABijection {
                        reason: format!("cycle point out of range for degree {degree}"),
                    });
                }
                image[x] = y;
            }
            let step = Permutation::from_images(image)?;
            perm = perm.then(&step);
        }
        Ok(perm)
    }

    /// Degree of the underlying set.
    pub fn degree(&self) -> usize {
        self.image.len()
    }

    /// Image of a point.
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    /// The composite that first applies `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            image: self.image.iter().map(|&y| other.image[y]).collect(),
        }
    }

    /// The inverse permutation.
    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.image.len()];
        for (x, &y) in self.image.iter().enumerate() {
            image[y] = x;
        }
        Permutation { image }
    }

    /// True if every point is fixed.
    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// The image array.
    pub fn images(&self) -> &[usize] {
        &self.image
    }

    /// Disjoint cycle decomposition. Each cycle starts at its smallest
    /// point, cycles are sorted by smallest point, fixed points are omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.image.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] || self.image[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image[x];
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Renders the permutation in cycle notation over the given tokens;
    /// the identity renders as `()`.
    pub fn render(&self, tokens: &[String]) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut out = String::new();
        for cycle in cycles {
            out.push('(');
            for (i, &x) in cycle.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&tokens[x]);
            }
            out.push(')');
        }
        out
    }
}

/// All bijections `{0..n-1} -> {0..n-1}` in lexicographic order of their
/// image arrays, so the identity comes first. Intended for exhaustive
/// searches over small degrees.
pub(crate) fn all_bijections(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, current: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for y in 0..n {
            if !used[y] {
                used[y] = true;
                current.push(y);
                rec(n, current, used, out);
                current.pop();
                used[y] = false;
            }
        }
    }
    rec(n, &mut current, &mut used, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tokens() -> Vec<String> {
        vec!["1".into(), "2".into(), "3".into()]
    }

    #[test]
    fn cycle_round_trip() {
        let p = Permutation::from_cycles(3, &[vec![1, 2]]).unwrap();
        assert_eq!(p.images(), &[0, 2, 1]);
        assert_eq!(p.render(&tokens()), "(2,3)");
        assert_eq!(Permutation::identity(3).render(&tokens()), "()");
    }

    #[test]
    fn left_to_right_composition() {
        // (2,3) then (1,3) is the 3-cycle 1 -> 3 -> 2 -> 1.
        let p = Permutation::from_cycles(3, &[vec![1, 2]]).unwrap();
        let q = Permutation::from_cycles(3, &[vec![0, 2]]).unwrap();
        let r = p.then(&q);
        assert_eq!(r, Permutation::from_cycles(3, &[vec![0, 2, 1]]).unwrap());
        assert_eq!(r.render(&tokens()), "(1,3,2)");
    }

    #[test]
    fn inverse_cancels() {
        let p = Permutation::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap();
        assert!(p.then(&p.inverse()).is_identity());
        assert!(p.inverse().then(&p).is_identity());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
        assert!(Permutation::from_cycles(3, &[vec![0, 5]]).is_err());
    }

    #[test]
    fn singleton_and_empty_cycles_are_identity() {
        assert!(Permutation::from_cycles(3, &[vec![]]).unwrap().is_identity());
        assert!(Permutation::from_cycles(3, &[vec![2]]).unwrap().is_identity());
    }

    #[test]
    fn bijection_enumeration_starts_at_identity() {
        let all = all_bijections(3);
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 1, 2]);
        assert_eq!(all[1], vec![0, 2, 1]);
    }
}
