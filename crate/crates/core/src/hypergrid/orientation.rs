use std::fmt;

use super::DimSet;

/// Direction assigned to a dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Up,
    Down,
}

impl Direction {
    pub fn flipped(self) -> Self {
        match self {
            Direction::Up => Direction::Down,
            Direction::Down => Direction::Up,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Up => "up",
            Direction::Down => "down",
        })
    }
}

/// Directions for the members of a dimension set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orientation {
    dims: DimSet,
    dirs: Vec<Direction>,
}

impl Orientation {
    /// `dirs[k]` belongs to the `k`-th smallest member of `dims`.
    pub fn new(dims: DimSet, dirs: Vec<Direction>) -> Option<Self> {
        (dims.len() == dirs.len()).then_some(Orientation { dims, dirs })
    }

    /// Orientation on `{0..dirs.len()}`.
    pub fn from_directions(dirs: Vec<Direction>) -> Self {
        Orientation { dims: DimSet::full(dirs.len()), dirs }
    }

    pub fn all_up(d: usize) -> Self {
        Orientation::from_directions(vec![Direction::Up; d])
    }

    /// Orientation on `{0..d}` with bit `i` of `mask` set meaning `Down`.
    pub fn from_mask(d: usize, mask: u64) -> Self {
        Orientation::from_directions(
            (0..d)
                .map(|i| if mask >> i & 1 == 1 { Direction::Down } else { Direction::Up })
                .collect(),
        )
    }

    pub fn dims(&self) -> &DimSet {
        &self.dims
    }

    pub fn directions(&self) -> &[Direction] {
        &self.dirs
    }

    pub fn get(&self, dim: usize) -> Option<Direction> {
        self.dims.as_slice().binary_search(&dim).ok().map(|k| self.dirs[k])
    }

    /// True if the orientation is defined on exactly `{0..d}`.
    pub fn covers(&self, d: usize) -> bool {
        self.dims == DimSet::full(d)
    }

    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (i, dir)) in self.dims.iter().zip(&self.dirs).enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}:{}", i + 1, dir)?;
        }
        Ok(())
    }
}
