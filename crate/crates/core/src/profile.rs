use serde::{Deserialize, Serialize};

/// One strategy index per player.
///
/// The derived ordering is lexicographic with player 1 most significant, which is the same
/// order as the mixed-radix linear index of the owning game.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Profile(Vec<usize>);

impl Profile {
    pub fn new(indices: Vec<usize>) -> Self {
        Profile(indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, player: usize) -> usize {
        self.0[player]
    }

    /// The same profile with `player`'s component replaced.
    pub fn with(&self, player: usize, strategy: usize) -> Profile {
        let mut indices = self.0.clone();
        indices[player] = strategy;
        Profile(indices)
    }

    /// Mixed-radix encoding: `((i1 * |S2| + i2) * |S3| + ...)`.
    pub fn linear_index(&self, shape: &[usize]) -> usize {
        self.0
            .iter()
            .zip(shape)
            .fold(0, |acc, (&idx, &radix)| acc * radix + idx)
    }

    pub fn from_linear(mut linear: usize, shape: &[usize]) -> Profile {
        let mut indices = vec![0; shape.len()];
        for (slot, &radix) in indices.iter_mut().zip(shape).rev() {
            *slot = linear % radix;
            linear /= radix;
        }
        Profile(indices)
    }
}

impl From<Vec<usize>> for Profile {
    fn from(indices: Vec<usize>) -> Self {
        Profile(indices)
    }
}

/// Odometer over the Cartesian product of per-player index lists, last player fastest.
///
/// Yields the chosen *values* of each list, so iterating over sub-lists of strategy
/// indices produces parent-game profiles in linear-index order.
#[derive(Debug, Clone)]
pub struct ProductIter<'a> {
    axes: &'a [Vec<usize>],
    cursor: Vec<usize>,
    done: bool,
}

impl<'a> ProductIter<'a> {
    pub fn new(axes: &'a [Vec<usize>]) -> Self {
        let done = axes.iter().any(Vec::is_empty);
        ProductIter {
            axes,
            cursor: vec![0; axes.len()],
            done,
        }
    }
}

impl Iterator for ProductIter<'_> {
    type Item = Profile;

    fn next(&mut self) -> Option<Profile> {
        if self.done {
            return None;
        }
        let item = Profile(
            self.cursor
                .iter()
                .zip(self.axes)
                .map(|(&c, axis)| axis[c])
                .collect(),
        );
        let mut player = self.axes.len();
        loop {
            if player == 0 {
                self.done = true;
                break;
            }
            player -= 1;
            self.cursor[player] += 1;
            if self.cursor[player] < self.axes[player].len() {
                break;
            }
            self.cursor[player] = 0;
        }
        Some(item)
    }
}
